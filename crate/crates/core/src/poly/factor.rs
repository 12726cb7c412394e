//! Univariate factorization over finite fields.
//!
//! The pipeline is classical: radical extraction (with p-th-root descent
//! for inseparable parts), distinct-degree splitting by Frobenius powers,
//! then Cantor–Zassenhaus equal-degree splitting.  The randomized stage
//! draws from a fixed-seed ChaCha stream and the factor list is sorted
//! canonically, so results are identical run to run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::poly::uni::UniPoly;

const EDF_SEED: u64 = 0x1d5c_2f3a_9b60_417e;

/// A monic-irreducible factorization `unit * prod(factor^multiplicity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

/// p-th root of an element: the inverse of `x -> x^p`.
fn pth_root_elem(c: &FieldElement) -> FieldElement {
    let p = c.field().p() as u128;
    let m = c.field().degree();
    let mut out = c.clone();
    for _ in 1..m {
        out = out.pow(p);
    }
    out
}

/// Inverse of the Frobenius on polynomials: `f` must have the shape
/// `h(x^p)`; returns `h`.
fn pth_root_poly(f: &UniPoly) -> UniPoly {
    let field = f.field();
    let p = field.p() as usize;
    let deg = f.degree().expect("p-th root of zero polynomial");
    debug_assert!(
        (0..=deg).all(|j| j % p == 0 || f.coeff(j).is_zero()),
        "polynomial is not a p-th power"
    );
    let coeffs = (0..=deg / p).map(|j| pth_root_elem(&f.coeff(j * p))).collect();
    UniPoly::from_coeffs(field, coeffs)
}

/// Product of the distinct monic irreducible factors of `f`.
pub fn radical(f: &UniPoly) -> UniPoly {
    let g = f.monic();
    if g.is_constant() {
        return UniPoly::one(f.field());
    }
    let gp = g.derivative();
    if gp.is_zero() {
        // every factor multiplicity is divisible by p
        return radical(&pth_root_poly(&g));
    }
    let c = g.gcd(&gp);
    // factors whose multiplicity is not divisible by p, each once
    let v = g.div_exact(&c);
    // strip those factors from c entirely; what survives collects the
    // factors with multiplicity divisible by p, at full multiplicity
    let mut w = c;
    loop {
        let h = w.gcd(&v);
        if h.is_constant() {
            break;
        }
        w = w.div_exact(&h);
    }
    if w.is_constant() {
        v
    } else {
        &v * &radical(&pth_root_poly(&w))
    }
}

/// Distinct-degree splitting of a squarefree monic polynomial: returns
/// pairs `(product of irreducible factors of degree d, d)` with `d`
/// increasing.
pub fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let field = f.field();
    let q = field.cardinality_big();
    let x = UniPoly::x(field);
    let mut out = Vec::new();
    let mut rem = f.monic();
    let mut u = x.rem(&rem).unwrap();
    let mut d = 0u32;
    while let Some(n) = rem.degree() {
        if n == 0 {
            break;
        }
        d += 1;
        if 2 * d as usize > n {
            // too few coefficients left for two factors: rem is irreducible
            out.push((rem.clone(), n as u32));
            break;
        }
        u = u.powmod_big(&q, &rem);
        let g = (&u - &x).gcd(&rem);
        if let Some(dg) = g.degree() {
            if dg > 0 {
                rem = rem.div_exact(&g);
                u = u.rem(&rem).unwrap();
                out.push((g, d));
            }
        }
    }
    out
}

/// Cantor–Zassenhaus split of a monic product of distinct irreducibles of
/// equal degree `d`.
fn equal_degree_split(g: UniPoly, d: u32, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let field = g.field().clone();
    let p = field.p();
    let mut out = Vec::new();
    let mut stack = vec![g];
    while let Some(h) = stack.pop() {
        let n = h.degree().unwrap();
        if n == d as usize {
            out.push(h.monic());
            continue;
        }
        let split = loop {
            let alpha = UniPoly::from_coeffs(
                &field,
                (0..n).map(|_| field.sample(rng)).collect(),
            );
            if alpha.is_zero() {
                continue;
            }
            let c = alpha.gcd(&h);
            if let Some(dc) = c.degree() {
                if dc > 0 && dc < n {
                    break c;
                }
            }
            let w = if p == 2 {
                // trace to F_2 of a random element of the quotient ring
                let rounds = field.degree() * d;
                let mut u = alpha.rem(&h).unwrap();
                let mut acc = u.clone();
                for _ in 1..rounds {
                    u = (&u * &u).rem(&h).unwrap();
                    acc = &acc + &u;
                }
                acc.gcd(&h)
            } else {
                let e = (field.cardinality_big().pow(d) - 1u32) >> 1;
                let beta = alpha.powmod_big(&e, &h);
                (&beta - &UniPoly::one(&field)).gcd(&h)
            };
            if let Some(dw) = w.degree() {
                if dw > 0 && dw < n {
                    break w;
                }
            }
        };
        let rest = h.div_exact(&split);
        stack.push(split);
        stack.push(rest);
    }
    out
}

/// Full factorization into monic irreducibles with multiplicities,
/// sorted canonically, with the default splitting seed.  Errors on the
/// zero polynomial.
pub fn factor(f: &UniPoly) -> Result<Factorization> {
    factor_seeded(f, 0)
}

/// Factorization with a caller-chosen seed for the equal-degree
/// splitting stage.  Any seed gives the same multiset of factors; the
/// seed only affects how fast the splitting search converges.
pub fn factor_seeded(f: &UniPoly, seed: u64) -> Result<Factorization> {
    let lc = f
        .leading()
        .cloned()
        .ok_or_else(|| Error::Degenerate("factorization of the zero polynomial".into()))?;
    let g = f.monic();
    if g.is_constant() {
        return Ok(Factorization {
            unit: lc,
            factors: Vec::new(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ seed);
    let rad = radical(&g);
    let mut irreducibles = Vec::new();
    for (prod, d) in distinct_degree(&rad) {
        irreducibles.extend(equal_degree_split(prod, d, &mut rng));
    }
    let mut factors = Vec::with_capacity(irreducibles.len());
    for phi in irreducibles {
        let mut mult = 0u32;
        let mut h = g.clone();
        loop {
            let (q, r) = h.divrem(&phi).unwrap();
            if !r.is_zero() {
                break;
            }
            mult += 1;
            h = q;
        }
        debug_assert!(mult >= 1);
        factors.push((phi, mult));
    }
    factors.sort_by(|(a, _), (b, _)| a.cmp_canonical(b));
    Ok(Factorization { unit: lc, factors })
}

/// Squarefree decomposition: pairwise-coprime squarefree parts with their
/// multiplicities, `monic(f) = prod(part_i ^ mult_i)`.
pub fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    let fac = factor(f)?;
    let mut by_mult: std::collections::BTreeMap<u32, UniPoly> = std::collections::BTreeMap::new();
    for (phi, m) in fac.factors {
        by_mult
            .entry(m)
            .and_modify(|p| *p = &*p * &phi)
            .or_insert(phi);
    }
    Ok(by_mult.into_iter().map(|(m, p)| (p, m)).collect())
}

/// Rabin irreducibility test.
pub fn is_irreducible(f: &UniPoly) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f.coeff(0).is_zero() {
        return false;
    }
    let field = f.field();
    let q = field.cardinality_big();
    let x = UniPoly::x(field);
    let mut u = x.clone();
    let mut chain = Vec::with_capacity(n);
    for _ in 0..n {
        u = u.powmod_big(&q, f);
        chain.push(u.clone());
    }
    if chain[n - 1] != x.rem(f).unwrap() {
        return false;
    }
    let mut primes = Vec::new();
    let mut nn = n;
    let mut d = 2;
    while d * d <= nn {
        if nn % d == 0 {
            primes.push(d);
            while nn % d == 0 {
                nn /= d;
            }
        }
        d += 1;
    }
    if nn > 1 {
        primes.push(nn);
    }
    for ell in primes {
        let g = (&chain[n / ell - 1] - &x).gcd(f);
        if !g.is_constant() {
            return false;
        }
    }
    true
}

/// All roots of `f` in its coefficient field, in element order.
pub fn roots_in_field(f: &UniPoly) -> Vec<FieldElement> {
    let Some(n) = f.degree() else {
        // the zero polynomial vanishes everywhere; callers never want that
        panic!("roots of the zero polynomial");
    };
    if n == 0 {
        return Vec::new();
    }
    let field = f.field();
    if n == 1 {
        let root = -&f.coeff(0).div(&f.coeff(1)).unwrap();
        return vec![root];
    }
    let q = field.cardinality_big();
    let x = UniPoly::x(field);
    let u = x.powmod_big(&q, f);
    let lin = (&u - &x).gcd(f);
    let Some(dl) = lin.degree() else {
        return Vec::new();
    };
    if dl == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut roots: Vec<FieldElement> = equal_degree_split(lin, 1, &mut rng)
        .into_iter()
        .map(|phi| -&phi.coeff(0))
        .collect();
    roots.sort();
    roots
}

/// Roots of `f` in the degree-`s` extension of its coefficient field,
/// returned together with that extension (subject to the cardinality cap).
pub fn roots_in_extension(f: &UniPoly, s: u32, cap: u64) -> Result<(Field, Vec<FieldElement>)> {
    let base = f.field();
    let ext = Field::with_cap(base.p(), base.degree() * s, cap)?;
    let emb = crate::fields::Embedding::new(base, &ext)?;
    let fe = f.embed(&emb);
    let roots = roots_in_field(&fe);
    Ok((ext, roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn radical_strips_multiplicities() {
        let f = f3();
        let a = UniPoly::from_ints(&f, &[1, 1]); // x+1
        let b = UniPoly::from_ints(&f, &[2, 1]); // x+2
        // mixed multiplicities, one divisible by p=3 and one not
        let prod = &a.pow(3) * &b.pow(2);
        assert_eq!(radical(&prod), &a * &b);
        // fully inseparable: derivative vanishes
        let cube = (&a * &b).pow(3);
        assert!(cube.derivative().is_zero());
        assert_eq!(radical(&cube), &a * &b);
        assert_eq!(radical(&a.pow(9)), a);
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = f3();
        let g = UniPoly::from_ints(&f, &[2, 1, 0, 2]);
        let gp = g.pow(3);
        assert_eq!(pth_root_poly(&gp), g);
        // over an extension the coefficients need genuine p-th roots
        let f9 = Field::new(3, 2).unwrap();
        let t = f9.t();
        let h = UniPoly::from_coeffs(&f9, vec![t.clone(), f9.one()]);
        assert_eq!(pth_root_poly(&h.pow(3)), h);
    }

    #[test]
    fn factor_reconstructs_input() {
        let f7 = Field::new(7, 1).unwrap();
        let p1 = UniPoly::from_ints(&f7, &[1, 0, 1]); // x^2+1, irreducible mod 7? 7 = 3 mod 4, yes
        let p2 = UniPoly::from_ints(&f7, &[3, 1]); // x+3
        let input = &(&p1.pow(2) * &p2.pow(3)).mul_elem(&f7.from_u64(4)) * &UniPoly::one(&f7);
        let fac = factor(&input).unwrap();
        assert_eq!(fac.expand(), input);
        assert_eq!(fac.unit, f7.from_u64(4));
        assert_eq!(fac.factors.len(), 2);
        for (phi, _) in &fac.factors {
            assert!(is_irreducible(phi));
            assert!(phi.is_monic());
        }
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults.iter().sum::<u32>(), 5);
    }

    #[test]
    fn factor_is_deterministic() {
        let f9 = Field::new(3, 2).unwrap();
        // x^9 - x splits into all nine linear factors
        let mut poly = UniPoly::monomial(f9.one(), 9);
        poly = &poly - &UniPoly::x(&f9);
        let fac1 = factor(&poly).unwrap();
        let fac2 = factor(&poly).unwrap();
        assert_eq!(fac1, fac2);
        assert_eq!(fac1.factors.len(), 9);
        assert!(fac1.factors.iter().all(|(p, m)| p.degree() == Some(1) && *m == 1));
        // the splitting seed changes the search path, never the answer
        for seed in [1u64, 7, 0xdead_beef] {
            assert_eq!(factor_seeded(&poly, seed).unwrap(), fac1);
        }
    }

    #[test]
    fn distinct_degree_structure() {
        let f2 = Field::new(2, 1).unwrap();
        // x^8 - x = product of irreducibles of degree dividing 3 over F_2:
        // x, x+1, and the two irreducible cubics
        let poly = &UniPoly::monomial(f2.one(), 8) - &UniPoly::x(&f2);
        let dd = distinct_degree(&poly);
        let degs: Vec<(usize, u32)> = dd.iter().map(|(p, d)| (p.degree().unwrap(), *d)).collect();
        assert_eq!(degs, vec![(2, 1), (6, 3)]);
    }

    #[test]
    fn irreducibility_depends_on_the_field() {
        let f3 = f3();
        let f9 = Field::new(3, 2).unwrap();
        let over_f3 = UniPoly::from_ints(&f3, &[1, 0, 1]);
        let over_f9 = UniPoly::from_ints(&f9, &[1, 0, 1]);
        assert!(is_irreducible(&over_f3));
        // x^2+1 = (x-t)(x+t) over F_9 where t^2 = -1
        assert!(!is_irreducible(&over_f9));
        let fac = factor(&over_f9).unwrap();
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn roots_small_cases() {
        let f9 = Field::new(3, 2).unwrap();
        let all = &UniPoly::monomial(f9.one(), 9) - &UniPoly::x(&f9);
        let roots = roots_in_field(&all);
        assert_eq!(roots.len(), 9);
        let every: Vec<_> = f9.elements().collect();
        assert_eq!(roots, every);
        // a polynomial with no roots
        let f3 = f3();
        assert!(roots_in_field(&UniPoly::from_ints(&f3, &[1, 0, 1])).is_empty());
        // linear
        let lin = UniPoly::from_ints(&f3, &[1, 2]); // 2x+1 -> root 1
        assert_eq!(roots_in_field(&lin), vec![f3.from_u64(1)]);
    }

    #[test]
    fn roots_in_extension_field() {
        let f3 = f3();
        let p = UniPoly::from_ints(&f3, &[1, 0, 1]); // x^2+1
        let (f9, roots) = roots_in_extension(&p, 2, 1 << 20).unwrap();
        assert_eq!(f9.spec_string(), "3^2");
        assert_eq!(roots.len(), 2);
        // the roots are t and -t = 2t: encodings 3 and 6
        assert_eq!(roots[0].encoding(), 3);
        assert_eq!(roots[1].encoding(), 6);
        // no new roots in an odd extension
        let (_, roots3) = roots_in_extension(&p, 3, 1 << 20).unwrap();
        assert!(roots3.is_empty());
    }

    #[test]
    fn squarefree_decomposition_properties() {
        let f3 = f3();
        let a = UniPoly::from_ints(&f3, &[1, 1]);
        let b = UniPoly::from_ints(&f3, &[2, 1]);
        let c = UniPoly::from_ints(&f3, &[1, 0, 1]);
        let input = &(&a.pow(3) * &b.pow(3)) * &c; // parts: (x^2+1)^1, (ab)^3
        let dec = squarefree_decomposition(&input).unwrap();
        let mut rebuilt = UniPoly::one(&f3);
        for (part, m) in &dec {
            rebuilt = &rebuilt * &part.pow(*m);
            // each part is squarefree: coprime to its derivative
            assert!(part.gcd(&part.derivative()).is_constant());
        }
        assert_eq!(rebuilt, input.monic());
        // pairwise coprime
        for i in 0..dec.len() {
            for j in i + 1..dec.len() {
                assert!(dec[i].0.gcd(&dec[j].0).is_constant());
            }
        }
        assert_eq!(dec.len(), 2);
    }

    #[test]
    fn factor_over_f4_splits_cubic_roots_of_unity() {
        let f4 = Field::new(2, 2).unwrap();
        let poly = &UniPoly::monomial(f4.one(), 3) - &UniPoly::one(&f4); // x^3 - 1
        let fac = factor(&poly).unwrap();
        assert_eq!(fac.factors.len(), 3);
        let roots = roots_in_field(&poly);
        assert_eq!(roots.len(), 3);
        // 1, t, t+1 are exactly the cube roots of unity in F_4
        assert!(roots.contains(&f4.one()));
        assert!(roots.contains(&f4.t()));
    }

    #[test]
    fn factor_rejects_zero() {
        let f3 = f3();
        assert!(factor(&UniPoly::zero(&f3)).is_err());
        let konst = UniPoly::from_ints(&f3, &[2]);
        let fac = factor(&konst).unwrap();
        assert!(fac.factors.is_empty());
        assert_eq!(fac.unit, f3.from_u64(2));
    }
}
