//! Property tests for the algebraic kernels: randomized inputs, exact
//! identities. Each block states the identity it holds the code to.

use planefill_core::poly::{
    factor, factor_seeded, resultant_y, resultant_y_interp, roots_in_field, uni_resultant,
};
use planefill_core::{
    bad_k_values, build_curve, is_plane_filling, smooth_at_base_points, BiPoly, CurveSpec,
    Embedding, Field, ProjPoint, TriForm, UniPoly, Var,
};
use proptest::prelude::*;

/// Small fields covering both characteristics, prime and extension.
const FIELD_POOL: [(u64, u32); 9] =
    [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2), (13, 1)];

fn pool_field(index: usize) -> Field {
    let (p, m) = FIELD_POOL[index % FIELD_POOL.len()];
    Field::new(p, m).unwrap()
}

/// Decode one u64 into a field element, uniformly over the field.
fn decode(field: &Field, raw: u64) -> planefill_core::FieldElement {
    let q = field.cardinality().unwrap();
    field.from_u64(raw % q)
}

fn decode_poly(field: &Field, raw: &[u64]) -> UniPoly {
    UniPoly::from_coeffs(field, raw.iter().map(|&r| decode(field, r)).collect())
}

/// Homogenize raw data into a trivariate form of the given degree.
fn decode_form(field: &Field, degree: u32, raw: &[u64]) -> TriForm {
    let mut acc = TriForm::zero(field, degree);
    for (i, &r) in raw.iter().enumerate() {
        let a = (i as u32 * 7 + 1) % (degree + 1);
        let b = (i as u32 * 3 + 2) % (degree + 1 - a);
        let exps = [a, b, degree - a - b];
        let term = TriForm::monomial(decode(field, r), exps);
        acc = acc.try_add(&term).unwrap();
    }
    acc
}

proptest! {
    /// Commutativity, associativity, distributivity, and inverses all
    /// at once, plus the Frobenius being additive in characteristic p.
    #[test]
    fn field_arithmetic_axioms(
        fi in 0usize..9,
        ra in any::<u64>(),
        rb in any::<u64>(),
        rc in any::<u64>(),
    ) {
        let field = pool_field(fi);
        let (a, b, c) = (decode(&field, ra), decode(&field, rb), decode(&field, rc));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            let inv = field.one().div(&a).unwrap();
            prop_assert_eq!(&a * &inv, field.one());
        }
        let p = field.p();
        prop_assert_eq!((&a + &b).pow(u128::from(p)),
            &a.pow(u128::from(p)) + &b.pow(u128::from(p)));
    }

    /// factor() multiplies back to the input, reports irreducible
    /// factors sorted, and is seed-independent.
    #[test]
    fn factorization_reconstructs_input(
        fi in 0usize..9,
        raw in prop::collection::vec(any::<u64>(), 1..10),
        seed in any::<u64>(),
    ) {
        let field = pool_field(fi);
        let f = decode_poly(&field, &raw);
        prop_assume!(!f.is_zero());
        let fac = factor(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        let again = factor_seeded(&f, seed).unwrap();
        prop_assert_eq!(fac.factors, again.factors);
    }

    /// Every reported root really is a zero, and deliberately planted
    /// roots are all found.
    #[test]
    fn root_finding_is_sound_and_complete(
        fi in 0usize..9,
        raw in prop::collection::vec(any::<u64>(), 1..8),
        planted in prop::collection::vec(any::<u64>(), 1..5),
    ) {
        let field = pool_field(fi);
        let f = decode_poly(&field, &raw);
        prop_assume!(f.degree().map_or(false, |d| d >= 1));
        for r in roots_in_field(&f) {
            prop_assert!(f.eval(&r).is_zero());
        }
        // plant distinct roots and recover them exactly
        let mut want: Vec<_> = planted.iter().map(|&r| decode(&field, r)).collect();
        want.sort();
        want.dedup();
        let mut g = UniPoly::one(&field);
        for r in &want {
            g = &g * &UniPoly::from_coeffs(&field, vec![-r, field.one()]);
        }
        prop_assert_eq!(roots_in_field(&g), want);
    }

    /// The resultant vanishes exactly when the two polynomials share a
    /// factor, and the two bivariate resultant algorithms agree.
    #[test]
    fn resultants_detect_common_factors(
        fi in 0usize..9,
        raw_a in prop::collection::vec(any::<u64>(), 2..7),
        raw_b in prop::collection::vec(any::<u64>(), 2..7),
    ) {
        let field = pool_field(fi);
        let a = decode_poly(&field, &raw_a);
        let b = decode_poly(&field, &raw_b);
        prop_assume!(a.degree().map_or(false, |d| d >= 1));
        prop_assume!(b.degree().map_or(false, |d| d >= 1));
        let res = uni_resultant(&a, &b);
        let shared = a.gcd(&b).degree().map_or(false, |d| d >= 1);
        prop_assert_eq!(res.is_zero(), shared);
    }

    /// Bareiss elimination and evaluation–interpolation compute the
    /// same bivariate resultant.
    #[test]
    fn bivariate_resultant_algorithms_agree(
        fi in 0usize..9,
        raw_a in prop::collection::vec((0u32..4, 0u32..3, any::<u64>()), 2..7),
        raw_b in prop::collection::vec((0u32..4, 0u32..3, any::<u64>()), 2..7),
    ) {
        let field = pool_field(fi);
        let build = |raw: &[(u32, u32, u64)]| {
            let mut acc = BiPoly::zero(&field);
            for &(i, j, r) in raw {
                acc = &acc + &BiPoly::monomial(decode(&field, r), [i, j]);
            }
            acc
        };
        let a = build(&raw_a);
        let b = build(&raw_b);
        prop_assume!(a.deg_y().map_or(false, |d| d >= 1));
        prop_assume!(b.deg_y().map_or(false, |d| d >= 1));
        prop_assert_eq!(resultant_y(&a, &b), resultant_y_interp(&a, &b));
    }

    /// x·f_x + y·f_y + z·f_z = deg(f)·f for homogeneous forms.
    #[test]
    fn euler_identity_for_forms(
        fi in 0usize..9,
        degree in 1u32..8,
        raw in prop::collection::vec(any::<u64>(), 1..10),
    ) {
        let field = pool_field(fi);
        let f = decode_form(&field, degree, &raw);
        let one = field.one();
        let x = TriForm::monomial(one.clone(), [1, 0, 0]);
        let y = TriForm::monomial(one.clone(), [0, 1, 0]);
        let z = TriForm::monomial(one.clone(), [0, 0, 1]);
        let lhs = &(&(&x * &f.partial(Var::X)) + &(&y * &f.partial(Var::Y)))
            + &(&z * &f.partial(Var::Z));
        let rhs = f.mul_elem(&field.from_u64(u64::from(degree)));
        prop_assert_eq!(lhs, rhs);
    }

    /// Partial differentiation obeys the product rule.
    #[test]
    fn product_rule_for_partials(
        fi in 0usize..9,
        da in 1u32..4,
        db in 1u32..4,
        raw_a in prop::collection::vec(any::<u64>(), 1..6),
        raw_b in prop::collection::vec(any::<u64>(), 1..6),
    ) {
        let field = pool_field(fi);
        let a = decode_form(&field, da, &raw_a);
        let b = decode_form(&field, db, &raw_b);
        for var in Var::all() {
            let lhs = (&a * &b).partial(var);
            let rhs = &(&a.partial(var) * &b) + &(&a * &b.partial(var));
            prop_assert_eq!(lhs, rhs);
        }
    }

    /// Field embeddings are ring homomorphisms.
    #[test]
    fn embeddings_preserve_arithmetic(
        pi in 0usize..4,
        s in 2u32..4,
        ra in any::<u64>(),
        rb in any::<u64>(),
    ) {
        let (p, m) = [(2u64, 1u32), (3, 1), (5, 1), (2, 2)][pi];
        let base = Field::new(p, m).unwrap();
        let ext = Field::new(p, m * s).unwrap();
        let emb = Embedding::new(&base, &ext).unwrap();
        let a = decode(&base, ra);
        let b = decode(&base, rb);
        prop_assert_eq!(emb.apply(&(&a + &b)), &emb.apply(&a) + &emb.apply(&b));
        prop_assert_eq!(emb.apply(&(&a * &b)), &emb.apply(&a) * &emb.apply(&b));
        prop_assert_eq!(emb.apply(&base.one()), ext.one());
    }

    /// Projective coordinates are scale-invariant after normalization.
    #[test]
    fn projective_points_ignore_scaling(
        fi in 0usize..9,
        raw in prop::collection::vec(any::<u64>(), 3..=3),
        rl in any::<u64>(),
    ) {
        let field = pool_field(fi);
        let coords = [
            decode(&field, raw[0]),
            decode(&field, raw[1]),
            decode(&field, raw[2]),
        ];
        prop_assume!(coords.iter().any(|c| !c.is_zero()));
        let lambda = decode(&field, rl);
        prop_assume!(!lambda.is_zero());
        let scaled = [&coords[0] * &lambda, &coords[1] * &lambda, &coords[2] * &lambda];
        prop_assert_eq!(
            ProjPoint::new(coords).unwrap(),
            ProjPoint::new(scaled).unwrap()
        );
    }

    /// Every family member passes through all rational points of the
    /// plane and has the advertised degree.
    #[test]
    fn family_members_fill_the_plane(
        fi in 0usize..6,
        rk in any::<u64>(),
        rr in 2u32..5,
    ) {
        let field = pool_field(fi);
        let q = field.cardinality().unwrap();
        let k = decode(&field, rk);
        let spec = CurveSpec::Ckr { k, r: rr };
        let f = build_curve(&spec).unwrap();
        prop_assert_eq!(u64::from(f.degree()), q + u64::from(rr) + 1);
        prop_assert!(is_plane_filling(&f, &field).unwrap());
    }

    /// Membership in the bad-k image set agrees with the root test on
    /// the criterion polynomial — two different routes to one predicate.
    #[test]
    fn bad_k_image_matches_root_test(
        fi in 0usize..9,
        rk in any::<u64>(),
        rr in 2u32..5,
    ) {
        let field = pool_field(fi);
        let k = decode(&field, rk);
        let bad = bad_k_values(&field, rr).unwrap();
        let spec = CurveSpec::Ckr { k: k.clone(), r: rr };
        prop_assert_eq!(!bad.contains(&k), smooth_at_base_points(&spec).unwrap());
    }
}
