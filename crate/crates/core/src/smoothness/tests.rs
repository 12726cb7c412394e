use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::curves::{build_curve, CurveSpec};
use crate::fields::Field;
use crate::poly::TriForm;

fn form(field: &Field, degree: u32, terms: &[([u32; 3], i64)]) -> TriForm {
    TriForm::from_terms(
        field,
        degree,
        terms.iter().map(|&(e, c)| (e, field.from_i64(c))),
    )
    .unwrap()
}

#[test]
fn smooth_conic_has_empty_locus() {
    let f7 = Field::new(7, 1).unwrap();
    let conic = form(&f7, 2, &[([2, 0, 0], 1), ([0, 1, 1], 1)]);
    let exact = exact_singular_locus(&conic).unwrap();
    assert!(exact.smooth());
    assert_eq!(exact.method, Method::Exact);
    assert!(is_smooth(&conic).unwrap());
    assert!(singular_points_up_to(&conic, 2).unwrap().smooth());
    assert_eq!(exact.to_string(), format!("curve: {}\nmethod: exact\nstatus: smooth", form_label(&conic)));
}

#[test]
fn nodal_cubic_is_singular_at_one_rational_point() {
    let f7 = Field::new(7, 1).unwrap();
    // y^2 z = x^3 + x^2 z, nodal at [0:0:1]
    let cubic = form(
        &f7,
        3,
        &[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)],
    );
    let exact = exact_singular_locus(&cubic).unwrap();
    assert_eq!(exact.points.len(), 1);
    let p = &exact.points[0];
    assert_eq!(p.residue_degree, 1);
    assert_eq!(p.orbit, 0);
    assert_eq!(p.conjugate_index, 0);
    assert_eq!(
        p.point.coords().clone(),
        [f7.zero(), f7.zero(), f7.one()]
    );
    assert!(!is_smooth(&cubic).unwrap());

    let scan = singular_points_up_to(&cubic, 3).unwrap();
    assert_eq!(scan.points, exact.points);
}

#[test]
fn conjugate_pair_on_the_far_line() {
    let f3 = Field::new(3, 1).unwrap();
    // (x^2 + y^2)^2 z + z^5: singular exactly at [1 : ±t : 0] in F_9,
    // one Galois orbit of residue degree 2
    let quintic = form(
        &f3,
        5,
        &[
            ([4, 0, 1], 1),
            ([2, 2, 1], 2),
            ([0, 4, 1], 1),
            ([0, 0, 5], 1),
        ],
    );
    let exact = exact_singular_locus(&quintic).unwrap();
    assert_eq!(exact.orbit_count(), 1);
    assert_eq!(exact.points.len(), 2);
    let f9 = Field::new(3, 2).unwrap();
    let rep = &exact.points[0];
    assert_eq!(rep.residue_degree, 2);
    assert_eq!(
        rep.point.coords().clone(),
        [f9.one(), f9.t(), f9.zero()]
    );
    assert_eq!(exact.points[1].conjugate_index, 1);
    // conjugate is the Frobenius image of the representative
    assert_eq!(exact.points[1].point, rep.point.frobenius(3));

    let scan = singular_points_up_to(&quintic, 2).unwrap();
    assert_eq!(scan.points, exact.points);
}

#[test]
fn singular_only_at_the_corner_point() {
    let f7 = Field::new(7, 1).unwrap();
    // y^3 + z^3 + xyz vanishes with all partials exactly at [1:0:0]
    let cubic = form(&f7, 3, &[([0, 3, 0], 1), ([0, 0, 3], 1), ([1, 1, 1], 1)]);
    let exact = exact_singular_locus(&cubic).unwrap();
    assert_eq!(exact.points.len(), 1);
    assert_eq!(
        exact.points[0].point.coords().clone(),
        [f7.one(), f7.zero(), f7.zero()]
    );
    assert_eq!(
        singular_points_up_to(&cubic, 2).unwrap().points,
        exact.points
    );
}

#[test]
fn positive_dimensional_loci_are_errors() {
    let f5 = Field::new(5, 1).unwrap();
    // a double line: singular along x = 0
    let double_line = form(&f5, 2, &[([2, 0, 0], 1)]);
    assert!(matches!(
        exact_singular_locus(&double_line),
        Err(Error::PositiveDimensional(_))
    ));
    // but it still counts as "not smooth"
    assert!(!is_smooth(&double_line).unwrap());

    // x z^2 is singular along the whole line z = 0
    let xzz = form(&f5, 3, &[([1, 0, 2], 1)]);
    assert!(matches!(
        exact_singular_locus(&xzz),
        Err(Error::PositiveDimensional(_))
    ));
    assert!(!is_smooth(&xzz).unwrap());
}

#[test]
fn criterion_root_pins_a_singular_rational_point() {
    // over F_7 with r = 2, k = 6 the criterion polynomial x^7 + 6x^3 - 1
    // has the single root x = 2, which must appear as the singular point
    // [2 : 1 : 2^3] = [1 : 4 : 4]
    let f7 = Field::new(7, 1).unwrap();
    let spec = CurveSpec::Ckr {
        k: f7.from_u64(6),
        r: 2,
    };
    assert!(!smooth_at_base_points(&spec).unwrap());
    let f = build_curve(&spec).unwrap();
    let exact = exact_singular_locus(&f).unwrap();
    let base_points = exact.points_of_degree(1);
    assert_eq!(base_points.len(), 1);
    assert_eq!(
        base_points[0].point.coords().clone(),
        [f7.one(), f7.from_u64(4), f7.from_u64(4)]
    );
    let scan = singular_points_up_to(&f, 1).unwrap();
    assert_eq!(scan.points.len(), 1);
    assert_eq!(scan.points[0].point, base_points[0].point);
}

#[test]
fn galois_conjugate_pair_example_over_f11() {
    let f11 = Field::new(11, 1).unwrap();
    let spec = CurveSpec::Ckr {
        k: f11.from_u64(9),
        r: 5,
    };
    // smooth at every rational point, singular at exactly one pair of
    // conjugate quadratic points
    assert!(smooth_at_base_points(&spec).unwrap());
    let f = build_curve(&spec).unwrap();
    let exact = exact_singular_locus(&f).unwrap();
    assert!(!exact.smooth());
    assert_eq!(exact.orbit_count(), 1);
    assert_eq!(exact.points.len(), 2);
    assert!(exact.points.iter().all(|p| p.residue_degree == 2));
    assert!(!is_smooth(&f).unwrap());

    let scan = singular_points_up_to(&f, 2).unwrap();
    assert_eq!(scan.points, exact.points);
    assert!(singular_points_up_to(&f, 1).unwrap().smooth());
}

#[test]
fn two_conjugate_pairs_example_over_f5() {
    let f5 = Field::new(5, 1).unwrap();
    let spec = CurveSpec::Ckr {
        k: f5.one(),
        r: 7,
    };
    assert!(smooth_at_base_points(&spec).unwrap());
    let f = build_curve(&spec).unwrap();
    let scan = singular_points_up_to(&f, 2).unwrap();
    assert_eq!(scan.points.len(), 4);
    assert_eq!(scan.orbit_count(), 2);
    assert!(scan.points.iter().all(|p| p.residue_degree == 2));
}

#[test]
fn truncation_and_residue_cap() {
    let f11 = Field::new(11, 1).unwrap();
    let spec = CurveSpec::Ckr {
        k: f11.from_u64(9),
        r: 5,
    };
    let f = build_curve(&spec).unwrap();
    let truncated = exact_singular_locus_with(
        &f,
        &SolveOptions {
            truncate_at: Some(1),
            ..SolveOptions::default()
        },
    )
    .unwrap();
    assert!(truncated.smooth());

    let capped = exact_singular_locus_with(
        &f,
        &SolveOptions {
            residue_cap: 1,
            ..SolveOptions::default()
        },
    );
    assert!(matches!(
        capped,
        Err(Error::ResidueDegreeCap { found: 2, cap: 1 })
    ));
}

#[test]
fn reports_do_not_depend_on_the_seed() {
    let f7 = Field::new(7, 1).unwrap();
    let spec = CurveSpec::Ckr {
        k: f7.from_u64(6),
        r: 2,
    };
    let f = build_curve(&spec).unwrap();
    let baseline = exact_singular_locus(&f).unwrap();
    for seed in [1u64, 7, 0xdead_beef] {
        let report = exact_singular_locus_with(
            &f,
            &SolveOptions {
                seed,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        assert_eq!(report.points, baseline.points);
    }
}

#[test]
fn family_criterion_examples() {
    let f11 = Field::new(11, 1).unwrap();
    let f5 = Field::new(5, 1).unwrap();
    let f3 = Field::new(3, 1).unwrap();
    assert!(smooth_at_base_points(&CurveSpec::Ckr { k: f11.from_u64(9), r: 5 }).unwrap());
    assert!(!smooth_at_base_points(&CurveSpec::Ckr { k: f5.zero(), r: 7 }).unwrap());
    assert!(!smooth_at_base_points(&CurveSpec::Ckr { k: f3.zero(), r: 2 }).unwrap());
    // no closed-form criterion: odd-q mixed family and custom combinations
    assert!(matches!(
        smooth_at_base_points(&CurveSpec::Dk { k: f3.one() }),
        Err(Error::NoCriterion(_))
    ));
}

#[test]
fn tallini_smoothness_matches_cubic_criterion() {
    let f5 = Field::new(5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..5 {
        let spec = CurveSpec::Tallini {
            a: f5.sample(&mut rng),
            b: f5.sample(&mut rng),
            c: f5.sample(&mut rng),
        };
        let f = build_curve(&spec).unwrap();
        assert_eq!(
            is_smooth(&f).unwrap(),
            smooth_at_base_points(&spec).unwrap(),
            "full smoothness must match the cubic root criterion for {spec}"
        );
    }
}

#[test]
fn even_q_family_is_always_singular() {
    for q in [2u64, 4] {
        let field = if q == 2 {
            Field::new(2, 1).unwrap()
        } else {
            Field::new(2, 2).unwrap()
        };
        for k in field.elements() {
            let f = build_curve(&CurveSpec::Ck { k: k.clone() }).unwrap();
            assert!(
                !is_smooth(&f).unwrap(),
                "Ck must be singular over q={q} at k={k}"
            );
        }
    }
}

#[test]
fn linear_component_detection() {
    let f5 = Field::new(5, 1).unwrap();
    // x * (x^2 + yz) contains the line x = 0
    let f = form(&f5, 3, &[([3, 0, 0], 1), ([1, 1, 1], 1)]);
    let line = has_linear_component(&f).unwrap().unwrap();
    assert_eq!(line, [f5.one(), f5.zero(), f5.zero()]);

    let f3 = Field::new(3, 1).unwrap();
    let ck = build_curve(&CurveSpec::Ck { k: f3.one() }).unwrap();
    assert!(has_linear_component(&ck).unwrap().is_none());
    // in particular the restriction to z = 0 is nonzero
    assert!(!ck
        .restrict_to_line(&[f3.zero(), f3.zero(), f3.one()])
        .unwrap()
        .is_zero());
}

#[test]
fn quadratic_point_implication_verdicts() {
    let f3 = Field::new(3, 1).unwrap();
    // smooth member: hypotheses and conclusion all hold
    let good = build_curve(&CurveSpec::Ck { k: f3.from_u64(2) }).unwrap();
    let verdict = check_fq2_implication(&good).unwrap();
    assert!(verdict.in_range);
    assert!(verdict.smooth_at_base);
    assert!(verdict.no_linear_component);
    assert!(verdict.smooth_at_quadratic);
    assert!(verdict.consistent);

    // base-singular member: hypothesis (i) fails, vacuously consistent
    let f2 = Field::new(2, 1).unwrap();
    let bad = build_curve(&CurveSpec::Ck { k: f2.zero() }).unwrap();
    let verdict = check_fq2_implication(&bad).unwrap();
    assert!(verdict.in_range);
    assert!(!verdict.smooth_at_base);
    assert!(verdict.consistent);

    // not plane-filling: rejected
    let f7 = Field::new(7, 1).unwrap();
    let conic = form(&f7, 2, &[([2, 0, 0], 1), ([0, 1, 1], 1)]);
    assert!(matches!(
        check_fq2_implication(&conic),
        Err(Error::Degenerate(_))
    ));
}

#[test]
fn engines_agree_on_random_forms() {
    let fields = [
        Field::new(2, 1).unwrap(),
        Field::new(3, 1).unwrap(),
        Field::new(2, 2).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut compared = 0;
    for trial in 0..24 {
        let field = &fields[trial % fields.len()];
        let degree = 3 + (trial % 2) as u32;
        let f = loop {
            let exps = monomial_exponents(degree);
            let candidate = TriForm::from_terms(
                field,
                degree,
                exps.iter().map(|&e| (e, field.sample(&mut rng))),
            )
            .unwrap();
            if !candidate.is_zero() {
                break candidate;
            }
        };
        match exact_singular_locus_with(
            &f,
            &SolveOptions {
                truncate_at: Some(2),
                ..SolveOptions::default()
            },
        ) {
            Ok(exact) => {
                let scan = singular_points_up_to(&f, 2).unwrap();
                assert_eq!(
                    exact.points, scan.points,
                    "engines disagree on {f} over {}",
                    field.spec_string()
                );
                compared += 1;
            }
            Err(Error::PositiveDimensional(_)) => continue,
            Err(e) => panic!("unexpected solver error: {e}"),
        }
    }
    assert!(compared >= 12, "too few comparable trials: {compared}");
}

fn monomial_exponents(degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=degree {
        for b in 0..=(degree - a) {
            out.push([a, b, degree - a - b]);
        }
    }
    out
}

#[test]
fn report_text_is_structured() {
    let f3 = Field::new(3, 1).unwrap();
    let quintic = form(
        &f3,
        5,
        &[
            ([4, 0, 1], 1),
            ([2, 2, 1], 2),
            ([0, 4, 1], 1),
            ([0, 0, 5], 1),
        ],
    );
    let text = exact_singular_locus(&quintic).unwrap().to_string();
    assert!(text.starts_with("curve: "));
    assert!(text.contains("method: exact"));
    assert!(text.contains("status: singular points=2 orbits=1"));
    assert!(text.contains("extension: 3^2 modulus=t^2 + 1"));
    assert!(text.contains("point: orbit=0 degree=2 conjugate=0 coords=[1 : 0:1 : 0] field=3^2"));
}
