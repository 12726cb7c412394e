//! Chart-by-chart exact computation of the singular locus.
//!
//! The locus of `f` is the common zero set of `f` and its three partials.
//! It is covered by three pieces of P²: the affine chart z = 1, the line
//! z = 0 with y = 1, and the single point [1 : 0 : 0]. Normalization
//! keeps the pieces disjoint, so each is solved independently.
//!
//! In the affine chart the system is bivariate. Every pure-x member and
//! every pairwise y-resultant of the others vanishes at the x-coordinate
//! of any common zero, so their running gcd is an eliminant whose roots
//! contain all candidate x-coordinates. Resultants can acquire spurious
//! roots where leading coefficients drop, and the gcd can only add more
//! sources of truth, never lose a zero — candidates are therefore
//! *certified* before anything is lifted: for an irreducible factor φ of
//! the eliminant, the system is specialized into F_q[x]/(φ) and the gcd
//! of the members over that quotient field is taken. A constant gcd means
//! the factor was spurious; a zero gcd means a whole vertical line is
//! singular; positive degree means genuine singular points, one Galois
//! orbit per distinct root of the gcd. Only then is a flat extension
//! built, one per residue degree that actually occurs.
//!
//! If every eliminant source vanishes identically, random linear
//! combinations of the system members are tried; if those resultants
//! also vanish, the members all share a common factor and the locus
//! really contains a curve, which is reported as an error.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curves::ProjPoint;
use crate::error::{Error, Result};
use crate::fields::{Embedding, Field, FieldElement};
use crate::poly::factor::{factor_seeded, roots_in_field};
use crate::poly::multi::{BiPoly, TriForm, Var};
use crate::poly::quotient::{
    qp_deg, qp_distinct_root_count, qp_gcd, specialize_mod_phi, QPoly, QuotientRing,
};
use crate::poly::resultant::resultant_y_interp;
use crate::poly::uni::UniPoly;

use super::{expand_orbit, singular_system, Orbit, SolveOptions};

/// Mixed with the caller's seed for the fallback combination stage.
const COMBO_SEED: u64 = 0x7a21_90ce_44d8_3bb1;

pub(crate) enum SolveOutcome {
    /// The orbit list (complete unless truncation was requested).
    Complete(Vec<Orbit>),
    /// Early-exit mode only: a singular point certainly exists.
    Singular,
}

enum ChartScan {
    Orbits(Vec<Orbit>),
    Singular,
}

pub(crate) fn solve(f: &TriForm, opts: &SolveOptions, early_exit: bool) -> Result<SolveOutcome> {
    let base = f.field().clone();
    let q = base
        .cardinality()
        .ok_or_else(|| Error::Degenerate("base field too large to solve over".into()))?;
    let system = singular_system(f);
    let mut orbits: Vec<Orbit> = Vec::new();

    match chart_affine(&base, q, &system, opts, early_exit)? {
        ChartScan::Singular => return Ok(SolveOutcome::Singular),
        ChartScan::Orbits(mut found) => orbits.append(&mut found),
    }
    match chart_far_line(&base, q, &system, opts, early_exit)? {
        ChartScan::Singular => return Ok(SolveOutcome::Singular),
        ChartScan::Orbits(mut found) => orbits.append(&mut found),
    }
    // the one point no chart covers
    let origin = [base.one(), base.zero(), base.zero()];
    if system.iter().all(|g| g.eval(&origin).is_zero()) {
        if early_exit {
            return Ok(SolveOutcome::Singular);
        }
        orbits.push(Orbit {
            residue_degree: 1,
            members: vec![ProjPoint::new(origin)?],
        });
    }
    Ok(SolveOutcome::Complete(orbits))
}

/// Re-evaluate the full system at a lifted point; the pipeline's
/// arithmetic is never trusted to imply this.
fn verify_singular(system: &[TriForm; 4], emb: &Embedding, pt: &[FieldElement; 3]) {
    for g in system {
        assert!(
            g.embed(emb).eval(pt).is_zero(),
            "lifted point does not satisfy the singular system"
        );
    }
}

fn absorb(elim: &mut Option<UniPoly>, h: UniPoly) {
    if h.is_zero() {
        return;
    }
    *elim = Some(match elim.take() {
        None => h.monic(),
        Some(g) => g.gcd(&h),
    });
}

fn elim_is_constant(elim: &Option<UniPoly>) -> bool {
    elim.as_ref().is_some_and(UniPoly::is_constant)
}

/// The affine chart z = 1.
fn chart_affine(
    base: &Field,
    q: u64,
    system: &[TriForm; 4],
    opts: &SolveOptions,
    early_exit: bool,
) -> Result<ChartScan> {
    let mut pure_x: Vec<UniPoly> = Vec::new();
    let mut with_y: Vec<BiPoly> = Vec::new();
    for g in system {
        let b = g.to_bipoly(Var::Z);
        if b.is_zero() {
            continue;
        }
        match b.to_unipoly_in_x() {
            Some(u) => pure_x.push(u),
            None => with_y.push(b),
        }
    }

    let mut elim: Option<UniPoly> = None;
    for u in &pure_x {
        absorb(&mut elim, u.clone());
    }
    'pairs: for i in 0..with_y.len() {
        for j in i + 1..with_y.len() {
            if elim_is_constant(&elim) {
                break 'pairs;
            }
            absorb(&mut elim, resultant_y_interp(&with_y[i], &with_y[j]));
        }
    }
    if elim.is_none() && with_y.len() >= 2 {
        // every source vanished identically; mix the members and retry
        let mut rng = ChaCha8Rng::seed_from_u64(COMBO_SEED ^ opts.seed);
        let combos: Vec<BiPoly> = (0..8).map(|_| random_combo(&with_y, base, &mut rng)).collect();
        'combo_pairs: for i in 0..combos.len() {
            for j in i + 1..combos.len() {
                if elim_is_constant(&elim) {
                    break 'combo_pairs;
                }
                absorb(&mut elim, resultant_y_interp(&combos[i], &combos[j]));
            }
        }
    }
    let Some(elim) = elim else {
        return Err(Error::PositiveDimensional(
            "the singular locus contains a curve through the affine chart".into(),
        ));
    };
    if elim.is_constant() {
        return Ok(ChartScan::Orbits(Vec::new()));
    }

    let mut orbits = Vec::new();
    for (phi, _) in factor_seeded(&elim, opts.seed)?.factors {
        let ring = QuotientRing::new(phi.clone());
        let mut h: QPoly = Vec::new();
        for b in &with_y {
            h = qp_gcd(&ring, &h, &specialize_mod_phi(b, &ring));
            if qp_deg(&h) == Some(0) {
                break;
            }
        }
        match qp_deg(&h) {
            // every member vanishes on the whole vertical line over φ
            None => {
                return Err(Error::PositiveDimensional(
                    "the singular locus contains a vertical line in the affine chart".into(),
                ))
            }
            // spurious eliminant factor: no y completes this x
            Some(0) => continue,
            Some(_) => {
                if early_exit {
                    return Ok(ChartScan::Singular);
                }
                lift_affine(base, q, system, &phi, &ring, &h, opts, &mut orbits)?;
            }
        }
    }
    Ok(ChartScan::Orbits(orbits))
}

fn random_combo(polys: &[BiPoly], base: &Field, rng: &mut ChaCha8Rng) -> BiPoly {
    loop {
        let mut acc = BiPoly::zero(base);
        for p in polys {
            let c = BiPoly::monomial(base.sample(rng), [0, 0]);
            acc = &acc + &(&c * p);
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

/// Materialize the orbits above one certified eliminant factor φ.
///
/// Every orbit here has residue degree d·e where d = deg φ and e is the
/// degree over F_{q^d} of a corresponding root of `h`. Levels are tried
/// in ascending e; at each level the distinct roots of `h` in F_{q^{de}}
/// over a fixed root x0 of φ are found, those whose residue degree is
/// exactly d·e seed new orbits, and the loop stops once the number of
/// distinct roots of `h` over the closure is accounted for. All
/// coordinates are produced by a single canonical embedding per level,
/// so reports agree element-for-element with the enumeration engine.
#[allow(clippy::too_many_arguments)]
fn lift_affine(
    base: &Field,
    q: u64,
    system: &[TriForm; 4],
    phi: &UniPoly,
    ring: &QuotientRing,
    h: &QPoly,
    opts: &SolveOptions,
    out: &mut Vec<Orbit>,
) -> Result<()> {
    let d = phi.degree().unwrap() as u32;
    let target = qp_distinct_root_count(ring, h);
    let mut found = 0usize;
    for e in 1..=target as u32 {
        if found == target {
            break;
        }
        let s = d * e;
        if let Some(limit) = opts.truncate_at {
            if s > limit {
                break; // levels only grow; the rest is truncated away
            }
        } else if s > opts.residue_cap {
            return Err(Error::ResidueDegreeCap { found: s, cap: opts.residue_cap });
        }
        let ls = Field::internal(base.p(), base.degree() * s);
        let emb = Embedding::new(base, &ls)?;
        let x0 = roots_in_field(&phi.embed(&emb))
            .into_iter()
            .next()
            .expect("an irreducible factor splits in the field of its degree");
        let hy = UniPoly::from_coeffs(
            &ls,
            h.iter().map(|c| c.rep().embed(&emb).eval(&x0)).collect(),
        );
        for y0 in roots_in_field(&hy) {
            let s0 = super::lcm32(d, y0.degree_over_base(q));
            if s0 != s {
                continue; // lives at a lower level, already counted there
            }
            let pt = [x0.clone(), y0, ls.one()];
            verify_singular(system, &emb, &pt);
            let orbit = expand_orbit(ProjPoint::new(pt)?, q, s);
            found += 1;
            // several roots over x0 can fall into one orbit
            if !out
                .iter()
                .any(|o| o.residue_degree == s && o.members[0] == orbit.members[0])
            {
                out.push(orbit);
            }
        }
    }
    Ok(())
}

/// The line z = 0 in its chart y = 1: a univariate system in x.
fn chart_far_line(
    base: &Field,
    q: u64,
    system: &[TriForm; 4],
    opts: &SolveOptions,
    early_exit: bool,
) -> Result<ChartScan> {
    let restrict = |g: &TriForm| -> UniPoly {
        let mut acc = UniPoly::zero(base);
        for (exps, c) in g.terms() {
            if exps[2] == 0 {
                acc = &acc + &UniPoly::monomial(c.clone(), exps[0] as usize);
            }
        }
        acc
    };
    let mut g: Option<UniPoly> = None;
    for member in system {
        absorb(&mut g, restrict(member));
    }
    let Some(g) = g else {
        return Err(Error::PositiveDimensional(
            "every point of the line z = 0 is singular".into(),
        ));
    };
    if g.is_constant() {
        return Ok(ChartScan::Orbits(Vec::new()));
    }
    if early_exit {
        // any root of any factor of g genuinely solves the system here
        return Ok(ChartScan::Singular);
    }
    let mut orbits = Vec::new();
    for (phi, _) in factor_seeded(&g, opts.seed)?.factors {
        let d = phi.degree().unwrap() as u32;
        if let Some(limit) = opts.truncate_at {
            if d > limit {
                continue;
            }
        } else if d > opts.residue_cap {
            return Err(Error::ResidueDegreeCap { found: d, cap: opts.residue_cap });
        }
        let ls = Field::internal(base.p(), base.degree() * d);
        let emb = Embedding::new(base, &ls)?;
        let x0 = roots_in_field(&phi.embed(&emb))
            .into_iter()
            .next()
            .expect("an irreducible factor splits in the field of its degree");
        let pt = [x0, ls.one(), ls.zero()];
        verify_singular(system, &emb, &pt);
        orbits.push(expand_orbit(ProjPoint::new(pt)?, q, d));
    }
    Ok(ChartScan::Orbits(orbits))
}
