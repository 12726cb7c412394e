//! Resultants of polynomials over finite fields.
//!
//! Univariate resultants come from a remainder sequence.  Bivariate
//! resultants with respect to the second variable are offered two ways:
//! [`resultant_y`] does fraction-free elimination on the Sylvester matrix
//! with polynomial entries (exact and simple, fine for modest sizes), and
//! [`resultant_y_interp`] evaluates at enough points of an extension
//! field and interpolates, which is what the singular-locus solver uses.

use std::collections::HashMap;

use crate::fields::{Embedding, Field, FieldElement};
use crate::poly::multi::BiPoly;
use crate::poly::uni::UniPoly;

/// Resultant of two univariate polynomials.
///
/// Conventions: the resultant is 0 when either input is the zero
/// polynomial, and 1 when both are (nonzero) constants.
pub fn uni_resultant(a: &UniPoly, b: &UniPoly) -> FieldElement {
    let field = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return field.zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut res = field.one();
    let char2 = field.p() == 2;
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            // res(a, c) = c^(deg a)
            res = &res * &b.coeff(0).pow(da as u128);
            return res;
        }
        if da < db {
            // res(a, b) = (-1)^(da*db) res(b, a)
            if !char2 && (da * db) % 2 == 1 {
                res = -&res;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = a.rem(&b).unwrap();
        let Some(dr) = r.degree() else {
            return field.zero(); // common factor
        };
        // res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
        if !char2 && (da * db) % 2 == 1 {
            res = -&res;
        }
        res = &res * &b.leading().unwrap().pow((da - dr) as u128);
        a = b;
        b = r;
    }
}

fn degenerate_cases(a: &BiPoly, b: &BiPoly) -> Option<UniPoly> {
    let field = a.field();
    if a.is_zero() || b.is_zero() {
        return Some(UniPoly::zero(field));
    }
    let na = a.deg_y().unwrap() as usize;
    let nb = b.deg_y().unwrap() as usize;
    match (na, nb) {
        (0, 0) => Some(UniPoly::one(field)),
        (0, _) => {
            let au = a.to_unipoly_in_x().unwrap();
            Some(au.pow(nb as u32))
        }
        (_, 0) => {
            let bu = b.to_unipoly_in_x().unwrap();
            Some(bu.pow(na as u32))
        }
        _ => None,
    }
}

/// Resultant of two bivariate polynomials with respect to the second
/// variable, by fraction-free (Bareiss) elimination of the Sylvester
/// matrix over `F[x]`.  Returns a polynomial in the first variable.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> UniPoly {
    if let Some(direct) = degenerate_cases(a, b) {
        return direct;
    }
    let field = a.field().clone();
    let ac = a.coeffs_in_y();
    let bc = b.coeffs_in_y();
    let na = ac.len() - 1;
    let nb = bc.len() - 1;
    let n = na + nb;
    let mut m: Vec<Vec<UniPoly>> = vec![vec![UniPoly::zero(&field); n]; n];
    for i in 0..nb {
        for k in 0..=na {
            m[i][i + k] = ac[na - k].clone();
        }
    }
    for j in 0..na {
        for k in 0..=nb {
            m[nb + j][j + k] = bc[nb - k].clone();
        }
    }
    let mut negate = false;
    let mut prev = UniPoly::one(&field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UniPoly::zero(&field);
            };
            m.swap(k, swap);
            negate = !negate;
        }
        let pivot_row = m[k].clone();
        let pivot = pivot_row[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let lead = std::mem::replace(&mut row[k], UniPoly::zero(&field));
            for j in k + 1..n {
                let num = &(&pivot * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = num.div_exact(&prev);
            }
        }
        prev = pivot;
    }
    let mut det = m[n - 1][n - 1].clone();
    if negate && field.p() != 2 {
        det = -&det;
    }
    det
}

/// Resultant with respect to the second variable by evaluation and
/// interpolation, mathematically equal to [`resultant_y`].
///
/// Sample points are drawn from the smallest extension with enough of
/// them; points where either leading coefficient vanishes are skipped so
/// every evaluation commutes with specialization.
pub fn resultant_y_interp(a: &BiPoly, b: &BiPoly) -> UniPoly {
    if let Some(direct) = degenerate_cases(a, b) {
        return direct;
    }
    let base = a.field().clone();
    let na = a.deg_y().unwrap() as usize;
    let nb = b.deg_y().unwrap() as usize;
    let dxa = a.deg_x().unwrap_or(0) as usize;
    let dxb = b.deg_x().unwrap_or(0) as usize;
    // the resultant has degree at most dxa*nb + dxb*na
    let n_points = dxa * nb + dxb * na + 1;
    let lead_a = a.coeffs_in_y().pop().unwrap();
    let lead_b = b.coeffs_in_y().pop().unwrap();
    let skippable = lead_a.degree().unwrap_or(0) + lead_b.degree().unwrap_or(0);
    let needed = (n_points + skippable) as u64;
    let q = base.cardinality().expect("bivariate resultant over an oversized field");
    let mut t = 1u32;
    let mut card = q;
    while card < needed {
        t += 1;
        card = card.saturating_mul(q);
    }
    let (ext, a_e, b_e, lead_a_e, lead_b_e);
    let emb;
    if t == 1 {
        ext = base.clone();
        a_e = a.clone();
        b_e = b.clone();
        lead_a_e = lead_a;
        lead_b_e = lead_b;
        emb = None;
    } else {
        ext = Field::internal(base.p(), base.degree() * t);
        let e = Embedding::new(&base, &ext).expect("extension embedding");
        a_e = a.embed(&e);
        b_e = b.embed(&e);
        lead_a_e = lead_a.embed(&e);
        lead_b_e = lead_b.embed(&e);
        emb = Some(e);
    }
    let mut samples = Vec::with_capacity(n_points);
    for xi in ext.elements() {
        if samples.len() == n_points {
            break;
        }
        if !lead_a_e.eval(&xi).is_zero() && !lead_b_e.eval(&xi).is_zero() {
            let ra = a_e.specialize_x(&xi);
            let rb = b_e.specialize_x(&xi);
            let val = uni_resultant(&ra, &rb);
            samples.push((xi, val));
        }
    }
    assert_eq!(
        samples.len(),
        n_points,
        "not enough good sample points in the extension"
    );
    let interp = UniPoly::interpolate(&samples, &ext).expect("distinct sample points");
    match emb {
        None => interp,
        Some(e) => {
            // pull the coefficients back down to the base field
            let lookup: HashMap<FieldElement, FieldElement> = base
                .elements()
                .map(|c| (e.apply(&c), c))
                .collect();
            let coeffs = interp
                .coeffs()
                .iter()
                .map(|c| {
                    lookup
                        .get(c)
                        .cloned()
                        .expect("resultant coefficient escaped the base field")
                })
                .collect();
            UniPoly::from_coeffs(&base, coeffs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f7() -> Field {
        Field::new(7, 1).unwrap()
    }

    /// Direct Sylvester determinant over the field by Gaussian elimination
    /// — an independent check for the univariate resultant.
    fn sylvester_det(a: &UniPoly, b: &UniPoly) -> FieldElement {
        let field = a.field().clone();
        let na = a.degree().unwrap();
        let nb = b.degree().unwrap();
        if na == 0 && nb == 0 {
            return field.one();
        }
        let n = na + nb;
        let mut m = vec![vec![field.zero(); n]; n];
        for i in 0..nb {
            for k in 0..=na {
                m[i][i + k] = a.coeff(na - k);
            }
        }
        for j in 0..na {
            for k in 0..=nb {
                m[nb + j][j + k] = b.coeff(nb - k);
            }
        }
        // LU-style elimination, tracking the determinant
        let mut det = field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return field.zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = -&det;
            }
            let pval = m[col][col].clone();
            det = &det * &pval;
            let ipiv = pval.inv().unwrap();
            for r in col + 1..n {
                let factor = &m[r][col] * &ipiv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let t = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        det
    }

    #[test]
    fn uni_resultant_matches_sylvester_determinant() {
        let f = f7();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let da = rng.gen_range(1..5);
            let db = rng.gen_range(1..5);
            let a = UniPoly::from_coeffs(
                &f,
                (0..=da).map(|_| f.sample(&mut rng)).collect(),
            );
            let b = UniPoly::from_coeffs(
                &f,
                (0..=db).map(|_| f.sample(&mut rng)).collect(),
            );
            if a.is_zero() || b.is_zero() {
                continue;
            }
            assert_eq!(uni_resultant(&a, &b), sylvester_det(&a, &b));
        }
    }

    #[test]
    fn uni_resultant_vanishes_iff_common_root() {
        let f = f7();
        for a0 in f.elements() {
            for b0 in f.elements() {
                let a = UniPoly::from_coeffs(&f, vec![-&a0, f.one()]);
                let b = UniPoly::from_coeffs(&f, vec![-&b0, f.one()]);
                let r = uni_resultant(&a, &b);
                assert_eq!(r.is_zero(), a0 == b0);
                // product of b(alpha) over the roots of a: here b(a0)
                assert_eq!(r, &a0 - &b0);
            }
        }
    }

    fn bipoly_y_minus(field: &Field, xpows: &[(u32, i64)]) -> BiPoly {
        // y - sum c*x^e
        let mut terms = vec![([0u32, 1u32], field.one())];
        for &(e, c) in xpows {
            terms.push(([e, 0], field.from_i64(-c)));
        }
        BiPoly::from_terms(field, terms)
    }

    #[test]
    fn pinned_bivariate_examples() {
        let f = f7();
        // res_y(y - x, y + x) = 2x
        let a = bipoly_y_minus(&f, &[(1, 1)]);
        let b = bipoly_y_minus(&f, &[(1, -1)]);
        let r = resultant_y(&a, &b);
        assert_eq!(r, UniPoly::from_ints(&f, &[0, 2]));
        // res_y((y - x)(y - 1), y - x^2) = (x^2 - x)(x^2 - 1)
        let ym_x = bipoly_y_minus(&f, &[(1, 1)]);
        let ym_1 = bipoly_y_minus(&f, &[(0, 1)]);
        let prod = &ym_x * &ym_1;
        let c = bipoly_y_minus(&f, &[(2, 1)]);
        let r2 = resultant_y(&prod, &c);
        let x2mx = UniPoly::from_ints(&f, &[0, -1, 1]);
        let x2m1 = UniPoly::from_ints(&f, &[-1, 0, 1]);
        assert_eq!(r2, &x2mx * &x2m1);
    }

    fn random_bipoly(field: &Field, dx: u32, dy: u32, rng: &mut ChaCha8Rng) -> BiPoly {
        let mut terms = Vec::new();
        for i in 0..=dx {
            for j in 0..=dy {
                terms.push(([i, j], field.sample(rng)));
            }
        }
        BiPoly::from_terms(field, terms)
    }

    #[test]
    fn interp_agrees_with_bareiss() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(7u64, 1u32), (3, 1), (2, 2), (3, 2)] {
            let f = Field::new(p, m).unwrap();
            for _ in 0..8 {
                let a = random_bipoly(&f, 2, 2, &mut rng);
                let b = random_bipoly(&f, 2, 2, &mut rng);
                if a.deg_y().unwrap_or(0) == 0 || b.deg_y().unwrap_or(0) == 0 {
                    continue;
                }
                assert_eq!(resultant_y(&a, &b), resultant_y_interp(&a, &b));
            }
        }
    }

    #[test]
    fn resultant_specializes_correctly() {
        // where neither leading y-coefficient vanishes, evaluating the
        // resultant equals the resultant of the evaluations
        let f = f7();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let a = random_bipoly(&f, 3, 2, &mut rng);
        let b = random_bipoly(&f, 2, 3, &mut rng);
        let r = resultant_y(&a, &b);
        let la = a.coeffs_in_y().pop().unwrap();
        let lb = b.coeffs_in_y().pop().unwrap();
        for x0 in f.elements() {
            if la.eval(&x0).is_zero() || lb.eval(&x0).is_zero() {
                continue;
            }
            let ra = a.specialize_x(&x0);
            let rb = b.specialize_x(&x0);
            assert_eq!(r.eval(&x0), uni_resultant(&ra, &rb));
        }
    }

    #[test]
    fn resultant_detects_common_factor() {
        let f = f7();
        // both divisible by (y - x): resultant must vanish identically
        let common = bipoly_y_minus(&f, &[(1, 1)]);
        let a = &common * &bipoly_y_minus(&f, &[(0, 3)]);
        let b = &common * &bipoly_y_minus(&f, &[(2, 1)]);
        assert!(resultant_y(&a, &b).is_zero());
        assert!(resultant_y_interp(&a, &b).is_zero());
    }

    #[test]
    fn degenerate_conventions() {
        let f = f7();
        let zero = BiPoly::zero(&f);
        let a = bipoly_y_minus(&f, &[(1, 1)]);
        assert!(resultant_y(&zero, &a).is_zero());
        assert!(resultant_y(&a, &zero).is_zero());
        // constant in y: res = const^(deg_y other)
        let c = BiPoly::from_terms(&f, [([2, 0], f.from_u64(3))]); // 3x^2
        let two_in_y = &a * &a; // deg_y = 2
        let r = resultant_y(&two_in_y, &c);
        let cu = UniPoly::from_ints(&f, &[0, 0, 3]);
        assert_eq!(r, &cu * &cu);
        let both_const = resultant_y(&c, &c);
        assert!(both_const.is_one());
    }
}
