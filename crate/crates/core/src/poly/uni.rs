//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficient vectors are kept trimmed (no trailing zeros), so the zero
//! polynomial is the empty vector and `degree()` returns `None` for it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fields::{Embedding, Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn zero(field: &Field) -> UniPoly {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn x(field: &Field) -> UniPoly {
        UniPoly {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn constant(c: FieldElement) -> UniPoly {
        let field = c.field().clone();
        UniPoly {
            field,
            coeffs: if c.is_zero() { Vec::new() } else { vec![c] },
        }
    }

    /// `c * x^k`.
    pub fn monomial(c: FieldElement, k: usize) -> UniPoly {
        let field = c.field().clone();
        if c.is_zero() {
            return UniPoly::zero(&field);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        UniPoly { field, coeffs }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> UniPoly {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// Convenience constructor from integer coefficients, constant first.
    pub fn from_ints(field: &Field, ints: &[i64]) -> UniPoly {
        let coeffs = ints.iter().map(|&n| field.from_i64(n)).collect();
        UniPoly::from_coeffs(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero when `i` exceeds the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scalar_mul(i as u64 % self.field.p()))
            .collect();
        UniPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let ilc = lc.inv().expect("nonzero leading coefficient");
                self.mul_elem(&ilc)
            }
        }
    }

    pub fn mul_elem(&self, c: &FieldElement) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(&self.field);
        }
        UniPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(dn) = self.degree() else {
            return Ok((UniPoly::zero(&self.field), UniPoly::zero(&self.field)));
        };
        if dn < dd {
            return Ok((UniPoly::zero(&self.field), self.clone()));
        }
        let ilc = d.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let c = &rem[dd + i] * &ilc;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                if !d.coeffs[j].is_zero() {
                    let t = &c * &d.coeffs[j];
                    rem[i + j] = &rem[i + j] - &t;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((
            UniPoly::from_coeffs(&self.field, quot),
            UniPoly::from_coeffs(&self.field, rem),
        ))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(d).expect("division by zero");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns monic `g` and `(s, t)` with `s*self + t*other = g`.
    pub fn extended_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one(&self.field);
        let mut s1 = UniPoly::zero(&self.field);
        let mut t0 = UniPoly::zero(&self.field);
        let mut t1 = UniPoly::one(&self.field);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if let Some(lc) = r0.leading() {
            if !lc.is_one() {
                let ilc = lc.inv().unwrap();
                return (r0.mul_elem(&ilc), s0.mul_elem(&ilc), t0.mul_elem(&ilc));
            }
        }
        (r0, s0, t0)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one(&self.field);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    pub fn powmod(&self, e: u64, modulus: &UniPoly) -> UniPoly {
        self.powmod_big(&BigUint::from(e), modulus)
    }

    pub fn powmod_big(&self, e: &BigUint, modulus: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(&self.field).rem(modulus).unwrap();
        let mut b = self.rem(modulus).unwrap();
        let mut e = e.clone();
        while e > BigUint::ZERO {
            if e.bit(0) {
                acc = (&acc * &b).rem(modulus).unwrap();
            }
            b = (&b * &b).rem(modulus).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Maps coefficients through a field embedding.
    pub fn embed(&self, emb: &Embedding) -> UniPoly {
        UniPoly {
            field: emb.sup().clone(),
            coeffs: self.coeffs.iter().map(|c| emb.apply(c)).collect(),
        }
    }

    /// Lagrange interpolation through distinct sample points.
    pub fn interpolate(points: &[(FieldElement, FieldElement)], field: &Field) -> Result<UniPoly> {
        // master polynomial M = prod (x - xj); every Lagrange basis
        // element is then M/(x - xi) scaled by 1/M'(xi), which keeps the
        // whole interpolation quadratic instead of cubic
        let mut master = UniPoly::one(field);
        for (xj, _) in points {
            master = &master * &UniPoly::from_coeffs(field, vec![-xj, field.one()]);
        }
        let dm = master.derivative();
        let mut acc = UniPoly::zero(field);
        for (xi, yi) in points {
            if yi.is_zero() {
                continue;
            }
            let den = dm.eval(xi);
            if den.is_zero() {
                return Err(Error::Degenerate(
                    "interpolation through repeated x values".into(),
                ));
            }
            let num = master.div_exact(&UniPoly::from_coeffs(field, vec![-xi, field.one()]));
            acc = &acc + &num.mul_elem(&(yi.div(&den)?));
        }
        Ok(acc)
    }

    /// Canonical ordering for factor lists: degree, then coefficients from
    /// the top down in element order.
    pub fn cmp_canonical(&self, other: &UniPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl std::ops::Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::from_coeffs(&self.field, coeffs)
    }
}

impl std::ops::Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = a * b;
                    coeffs[i + j] = &coeffs[i + j] + &t;
                }
            }
        }
        UniPoly::from_coeffs(&self.field, coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prime = self.field.degree() == 1;
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if prime {
                c.to_string()
            } else {
                format!("[{c}]")
            };
            match i {
                0 => write!(f, "{cs}")?,
                _ => {
                    if c.is_one() {
                        // omit unit coefficients
                    } else {
                        write!(f, "{cs}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::new(7, 1).unwrap()
    }

    #[test]
    fn construction_and_degree() {
        let f = f7();
        assert_eq!(UniPoly::zero(&f).degree(), None);
        assert_eq!(UniPoly::one(&f).degree(), Some(0));
        assert_eq!(UniPoly::x(&f).degree(), Some(1));
        // trailing zeros are trimmed
        let p = UniPoly::from_ints(&f, &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UniPoly::from_ints(&f, &[7, 14]).degree(), None);
    }

    #[test]
    fn ring_arithmetic() {
        let f = f7();
        let a = UniPoly::from_ints(&f, &[1, 2, 3]); // 3x^2+2x+1
        let b = UniPoly::from_ints(&f, &[5, 1]); // x+5
        let c = &a * &b;
        // (3x^2+2x+1)(x+5) = 3x^3 + 17x^2 + 11x + 5 = 3x^3 + 3x^2 + 4x + 5
        assert_eq!(c, UniPoly::from_ints(&f, &[5, 4, 3, 3]));
        assert_eq!(&(&a + &b) - &b, a);
        assert!((&a - &a).is_zero());
        // eval is a ring homomorphism at every point
        for x in f.elements() {
            assert_eq!(c.eval(&x), &a.eval(&x) * &b.eval(&x));
            assert_eq!((&a + &b).eval(&x), &a.eval(&x) + &b.eval(&x));
        }
    }

    #[test]
    fn divrem_roundtrip() {
        let f = f7();
        let a = UniPoly::from_ints(&f, &[3, 1, 4, 1, 5]);
        let b = UniPoly::from_ints(&f, &[2, 6, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
        assert_eq!(a.divrem(&UniPoly::zero(&f)), Err(Error::DivisionByZero));
        // division by a non-monic divisor
        let b2 = UniPoly::from_ints(&f, &[1, 3]);
        let (q2, r2) = a.divrem(&b2).unwrap();
        assert_eq!(&(&q2 * &b2) + &r2, a);
    }

    #[test]
    fn gcd_examples() {
        let f = f7();
        let x = UniPoly::x(&f);
        let a = &(&x - &UniPoly::from_ints(&f, &[1])) * &(&x - &UniPoly::from_ints(&f, &[2]));
        let b = &(&x - &UniPoly::from_ints(&f, &[1])) * &(&x - &UniPoly::from_ints(&f, &[3]));
        let g = a.gcd(&b);
        assert_eq!(g, UniPoly::from_ints(&f, &[-1, 1])); // x - 1
        // coprime
        let c = &x - &UniPoly::from_ints(&f, &[4]);
        let d = &x - &UniPoly::from_ints(&f, &[5]);
        assert!(c.gcd(&d).is_one());
        // extended gcd identity
        let (g2, s, t) = a.extended_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g2);
        assert_eq!(g2, g);
    }

    #[test]
    fn derivative_rules() {
        let f = f7();
        let a = UniPoly::from_ints(&f, &[1, 0, 0, 2, 1]); // x^4+2x^3+1
        let b = UniPoly::from_ints(&f, &[3, 1]);
        // product rule
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        assert_eq!(lhs, rhs);
        // x^7 has zero derivative over F_7
        let x7 = UniPoly::monomial(f.one(), 7);
        assert!(x7.derivative().is_zero());
    }

    #[test]
    fn powmod_matches_pow() {
        let f = f7();
        let m = UniPoly::from_ints(&f, &[1, 1, 1]); // x^2+x+1
        let a = UniPoly::from_ints(&f, &[2, 3]);
        for e in 0..10u32 {
            assert_eq!(a.powmod(e as u64, &m), a.pow(e).rem(&m).unwrap());
        }
        let big = BigUint::from(3u32).pow(40);
        // a^(3^40) mod m computed two ways: bigint exponent vs repeated cubing
        let mut slow = a.rem(&m).unwrap();
        for _ in 0..40 {
            slow = slow.powmod(3, &m);
        }
        assert_eq!(a.powmod_big(&big, &m), slow);
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = f7();
        let p = UniPoly::from_ints(&f, &[4, 0, 2, 1]);
        let pts: Vec<_> = f.elements().take(5).map(|x| {
            let y = p.eval(&x);
            (x, y)
        }).collect();
        let q = UniPoly::interpolate(&pts, &f).unwrap();
        assert_eq!(q, p);
        // repeated x values are rejected
        let bad = vec![
            (f.from_u64(1), f.from_u64(2)),
            (f.from_u64(1), f.from_u64(3)),
        ];
        assert!(UniPoly::interpolate(&bad, &f).is_err());
    }

    #[test]
    fn works_over_extension_fields() {
        let f9 = Field::new(3, 2).unwrap();
        let t = f9.t();
        let a = UniPoly::from_coeffs(&f9, vec![t.clone(), f9.one()]); // x + t
        let b = UniPoly::from_coeffs(&f9, vec![-&t, f9.one()]); // x - t
        let prod = &a * &b; // x^2 - t^2 = x^2 + 1 (t^2 = -1)
        assert_eq!(prod, UniPoly::from_ints(&f9, &[1, 0, 1]));
        assert_eq!(prod.eval(&t), f9.zero());
        assert_eq!(prod.eval(&-&t), f9.zero());
    }

    #[test]
    fn display_format() {
        let f = f7();
        let p = UniPoly::from_ints(&f, &[6, 0, 0, 2, 0, 0, 0, 1]);
        assert_eq!(p.to_string(), "x^7 + 2*x^3 + 6");
        assert_eq!(UniPoly::zero(&f).to_string(), "0");
        assert_eq!(UniPoly::from_ints(&f, &[0, 1]).to_string(), "x");
    }

    #[test]
    fn canonical_ordering() {
        let f = f7();
        let a = UniPoly::from_ints(&f, &[1, 1]); // x+1
        let b = UniPoly::from_ints(&f, &[2, 1]); // x+2
        let c = UniPoly::from_ints(&f, &[0, 0, 1]); // x^2
        assert_eq!(a.cmp_canonical(&b), Ordering::Less);
        assert_eq!(b.cmp_canonical(&c), Ordering::Less);
        assert_eq!(a.cmp_canonical(&a), Ordering::Equal);
    }
}
