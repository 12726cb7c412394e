//! Arithmetic in `F_q[x]/(phi)` for an irreducible `phi`, kept as residue
//! polynomials rather than materialized as a canonical field.
//!
//! The singular-locus solver uses this ring to decide, per candidate
//! factor of an eliminant, whether the original system really has a
//! solution with that x-coordinate: specialize the system at the residue
//! class of x, take a gcd in y over the quotient, and look at its degree.
//! That test needs nothing but ring arithmetic and inverses, so it stays
//! cheap even when the factor's degree would make a flat field large.

use crate::poly::multi::BiPoly;
use crate::poly::uni::UniPoly;

pub(crate) struct QuotientRing {
    phi: UniPoly,
}

/// Residue class modulo `phi`, represented by the reduced polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QElem {
    rep: UniPoly,
}

impl QElem {
    pub(crate) fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// The reduced representative polynomial.
    pub(crate) fn rep(&self) -> &UniPoly {
        &self.rep
    }
}

impl QuotientRing {
    pub(crate) fn new(phi: UniPoly) -> Self {
        assert!(phi.is_monic(), "quotient modulus must be monic");
        assert!(phi.degree().unwrap() >= 1);
        QuotientRing { phi }
    }

    pub(crate) fn reduce(&self, f: &UniPoly) -> QElem {
        QElem {
            rep: f.rem(&self.phi).unwrap(),
        }
    }

    fn zero(&self) -> QElem {
        QElem {
            rep: UniPoly::zero(self.phi.field()),
        }
    }

    fn mul(&self, a: &QElem, b: &QElem) -> QElem {
        self.reduce(&(&a.rep * &b.rep))
    }

    fn sub(&self, a: &QElem, b: &QElem) -> QElem {
        QElem {
            rep: &a.rep - &b.rep,
        }
    }

    /// Multiplicative inverse; `None` for zero (phi being irreducible,
    /// every nonzero residue is a unit).
    fn inv(&self, a: &QElem) -> Option<QElem> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.rep.extended_gcd(&self.phi);
        assert!(g.is_one(), "quotient modulus is not irreducible");
        Some(self.reduce(&s))
    }
}

/// Polynomials in y over the quotient ring, as coefficient vectors
/// (index = power of y), always trimmed.
pub(crate) type QPoly = Vec<QElem>;

fn qp_trim(mut f: QPoly) -> QPoly {
    while f.last().is_some_and(QElem::is_zero) {
        f.pop();
    }
    f
}

pub(crate) fn qp_deg(f: &QPoly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

/// Divide the leading coefficient out, making `f` monic.
fn qp_monic(ring: &QuotientRing, f: &QPoly) -> QPoly {
    match f.last() {
        None => Vec::new(),
        Some(lead) => {
            let ilead = ring.inv(lead).unwrap();
            f.iter().map(|c| ring.mul(c, &ilead)).collect()
        }
    }
}

fn qp_divrem(ring: &QuotientRing, a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = qp_deg(b).expect("division by zero in quotient ring");
    let ilead = ring.inv(b.last().unwrap()).unwrap();
    let mut r = a.clone();
    let mut q = match qp_deg(a) {
        Some(da) if da >= db => vec![ring.zero(); da - db + 1],
        _ => Vec::new(),
    };
    while let Some(dr) = qp_deg(&r) {
        if dr < db {
            break;
        }
        let factor = ring.mul(r.last().unwrap(), &ilead);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = ring.mul(&factor, bc);
            r[shift + i] = ring.sub(&r[shift + i], &t);
        }
        q[shift] = factor;
        r = qp_trim(r);
    }
    (qp_trim(q), r)
}

fn qp_rem(ring: &QuotientRing, a: &QPoly, b: &QPoly) -> QPoly {
    qp_divrem(ring, a, b).1
}

fn qp_div_exact(ring: &QuotientRing, a: &QPoly, b: &QPoly) -> QPoly {
    let (q, r) = qp_divrem(ring, a, b);
    assert!(r.is_empty(), "inexact division in quotient ring");
    q
}

/// Monic gcd over the quotient ring (a field, since phi is irreducible).
pub(crate) fn qp_gcd(ring: &QuotientRing, a: &QPoly, b: &QPoly) -> QPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = qp_rem(ring, &a, &b);
        a = b;
        b = r;
    }
    qp_monic(ring, &a)
}

/// Formal derivative with respect to y.
pub(crate) fn qp_derivative(ring: &QuotientRing, f: &QPoly) -> QPoly {
    let field = ring.phi.field().clone();
    let d: QPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| QElem {
            rep: c.rep.mul_elem(&field.from_u64(i as u64)),
        })
        .collect();
    qp_trim(d)
}

/// Number of distinct roots of `f` over an algebraic closure of the
/// quotient field, i.e. the degree of its radical.
///
/// Multiplicities divisible by the characteristic make the naive
/// `deg f - deg gcd(f, f')` undercount, so this recurses properly:
/// a vanishing derivative means `f(y) = g(y^p)`, which shares its root
/// set with `g` (Frobenius is bijective on the closure).
pub(crate) fn qp_distinct_root_count(ring: &QuotientRing, f: &QPoly) -> usize {
    let deg = qp_deg(f).expect("zero polynomial has no root count");
    if deg == 0 {
        return 0;
    }
    let df = qp_derivative(ring, f);
    if df.is_empty() {
        let p = ring.phi.field().p() as usize;
        let g: QPoly = f.iter().step_by(p).cloned().collect();
        return qp_distinct_root_count(ring, &qp_trim(g));
    }
    let g0 = qp_gcd(ring, f, &df);
    if qp_deg(&g0) == Some(0) {
        return deg;
    }
    // Distinct roots split between the squarefree part f/g0 (multiplicity
    // prime to p) and the repeated part g0; roots of f/g0 that reappear
    // inside g0 would be double-counted, so remove the overlap.
    let w = qp_div_exact(ring, f, &g0);
    let overlap = qp_deg(&qp_gcd(ring, &w, &g0)).unwrap();
    qp_deg(&w).unwrap() - overlap + qp_distinct_root_count(ring, &g0)
}

/// View `f(x, y)` as a polynomial in y with coefficients in the quotient
/// ring: each y-coefficient (a polynomial in x) reduced modulo phi.
pub(crate) fn specialize_mod_phi(f: &BiPoly, ring: &QuotientRing) -> QPoly {
    let coeffs = f
        .coeffs_in_y()
        .iter()
        .map(|c| ring.reduce(c))
        .collect();
    qp_trim(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;

    #[test]
    fn inverse_and_gcd_in_quotient() {
        let f3 = Field::new(3, 1).unwrap();
        // phi = x^2 + 1, irreducible over F_3
        let phi = UniPoly::from_ints(&f3, &[1, 0, 1]);
        let ring = QuotientRing::new(phi);
        // xbar * xbar = -1
        let x = ring.reduce(&UniPoly::x(&f3));
        let xx = ring.mul(&x, &x);
        assert_eq!(xx.rep, UniPoly::from_ints(&f3, &[-1]));
        // inverse of xbar is -xbar
        let ix = ring.inv(&x).unwrap();
        assert_eq!(ix.rep, UniPoly::from_ints(&f3, &[0, -1]));
        assert!(ring.inv(&ring.zero()).is_none());

        // gcd over the quotient: (y - xbar)(y - 1) and (y - xbar)(y - 2)
        // share exactly (y - xbar)
        let mk = |root: &QElem| -> QPoly {
            vec![
                QElem {
                    rep: -&root.rep,
                },
                ring.reduce(&UniPoly::one(&f3)),
            ]
        };
        let one = ring.reduce(&UniPoly::one(&f3));
        let two = ring.reduce(&UniPoly::constant(f3.from_u64(2)));
        let lin_x = mk(&x);
        let lin_1 = mk(&one);
        let lin_2 = mk(&two);
        let qp_mul = |a: &QPoly, b: &QPoly| -> QPoly {
            let mut out = vec![ring.zero(); a.len() + b.len() - 1];
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    let t = ring.mul(ai, bj);
                    out[i + j] = QElem {
                        rep: &out[i + j].rep + &t.rep,
                    };
                }
            }
            qp_trim(out)
        };
        let a = qp_mul(&lin_x, &lin_1);
        let b = qp_mul(&lin_x, &lin_2);
        let g = qp_gcd(&ring, &a, &b);
        assert_eq!(g, lin_x);
        // coprime pair has gcd 1
        let g2 = qp_gcd(&ring, &lin_1, &lin_2);
        assert_eq!(qp_deg(&g2), Some(0));
        assert!(g2[0].rep.is_one());
    }

    #[test]
    fn distinct_root_counts() {
        let f3 = Field::new(3, 1).unwrap();
        let phi = UniPoly::from_ints(&f3, &[1, 0, 1]);
        let ring = QuotientRing::new(phi);
        let lin = |c: &UniPoly| -> QPoly {
            vec![
                QElem { rep: -c },
                ring.reduce(&UniPoly::one(&f3)),
            ]
        };
        let qp_mul = |a: &QPoly, b: &QPoly| -> QPoly {
            let mut out = vec![ring.zero(); a.len() + b.len() - 1];
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    let t = ring.mul(ai, bj);
                    out[i + j] = QElem {
                        rep: &out[i + j].rep + &t.rep,
                    };
                }
            }
            qp_trim(out)
        };
        let y1 = lin(&UniPoly::one(&f3));
        let y2 = lin(&UniPoly::constant(f3.from_u64(2)));
        let yx = lin(&UniPoly::x(&f3));

        // two simple roots
        assert_eq!(qp_distinct_root_count(&ring, &qp_mul(&y1, &y2)), 2);
        // repeated root counted once
        assert_eq!(qp_distinct_root_count(&ring, &qp_mul(&yx, &yx)), 1);
        // multiplicity equal to the characteristic: (y-1)^3 (y-xbar)
        let cube = qp_mul(&qp_mul(&y1, &y1), &y1);
        assert_eq!(qp_distinct_root_count(&ring, &cube), 1);
        assert_eq!(qp_distinct_root_count(&ring, &qp_mul(&cube, &yx)), 2);
        // constant has no roots
        assert_eq!(qp_distinct_root_count(&ring, &vec![ring.reduce(&UniPoly::one(&f3))]), 0);
    }

    #[test]
    fn specialization_reduces_coefficients() {
        let f5 = Field::new(5, 1).unwrap();
        // phi = x^2 + 2, irreducible over F_5 (roots would need -2 square; squares are 0,1,4)
        let phi = UniPoly::from_ints(&f5, &[2, 0, 1]);
        let ring = QuotientRing::new(phi);
        // f = (x^2)*y + x^3  ==> mod phi: (-2)y + (-2x)
        let f = BiPoly::from_terms(
            &f5,
            [([2u32, 1u32], f5.one()), ([3, 0], f5.one())],
        );
        let qp = specialize_mod_phi(&f, &ring);
        assert_eq!(qp_deg(&qp), Some(1));
        assert_eq!(qp[1].rep, UniPoly::from_ints(&f5, &[-2]));
        assert_eq!(qp[0].rep, UniPoly::from_ints(&f5, &[0, -2]));
    }
}
