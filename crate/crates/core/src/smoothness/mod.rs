//! Deciding smoothness of plane curves and locating their singular points.
//!
//! Two engines produce the same report type. The enumeration engine scans
//! every point of P²(F_{q^s}) for s up to a bound and keeps those at which
//! the curve and all three partials vanish — transparent, and the oracle
//! the exact engine is tested against. The exact engine works chart by
//! chart: it eliminates one variable with resultants, certifies every
//! candidate factor in a quotient ring before any splitting field is
//! built, and only then materializes coordinates, so it sees singular
//! points of every residue degree at once and proves completeness.
//!
//! Alongside the two engines live the cheap per-family root criterion,
//! the linear-component test, and the degree-bounded implication
//! "smooth at rational points and no rational line ⟹ smooth at
//! quadratic points".

mod solver;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::curves::{enumerate_proj_points, is_plane_filling, CurveSpec, ProjPoint};
use crate::error::{Error, Result};
use crate::fields::{Embedding, Field, FieldElement, DEFAULT_CARDINALITY_CAP};
use crate::poly::roots_in_field;
use crate::poly::{TriForm, Var};

/// Default bound on the residue degree of any singular point the exact
/// engine will materialize coordinates for.
pub const DEFAULT_RESIDUE_CAP: u32 = 64;

/// Tuning for the exact singular-locus engine.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Hard bound on residue degrees when no truncation is requested:
    /// a certified singular point beyond this aborts the solve with
    /// [`Error::ResidueDegreeCap`] instead of building an enormous field.
    pub residue_cap: u32,
    /// Report only orbits of residue degree at most this bound and
    /// silently drop the rest. `None` reports everything (subject to
    /// the cap above).
    pub truncate_at: Option<u32>,
    /// Seed mixed into the randomized factoring and fallback stages.
    /// Every seed yields the same report.
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            residue_cap: DEFAULT_RESIDUE_CAP,
            truncate_at: None,
            seed: 0,
        }
    }
}

/// How a [`SingularReport`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Point-by-point scan of P²(F_{q^s}) for every s up to the bound.
    EnumerationToBound(u32),
    /// Chart-by-chart elimination; the report is complete.
    Exact,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::EnumerationToBound(s) => write!(f, "enumeration(max_degree={s})"),
            Method::Exact => write!(f, "exact"),
        }
    }
}

/// One singular point together with its Galois-orbit bookkeeping.
///
/// Coordinates are normalized (leftmost nonzero coordinate is 1) and live
/// in the canonical field of order q^s where s is the residue degree —
/// the smallest field containing the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub residue_degree: u32,
    /// Index of this point's Frobenius orbit within the report.
    pub orbit: usize,
    /// Position within the orbit: the canonical representative is 0 and
    /// index j is the representative's q^j-power image.
    pub conjugate_index: u32,
}

/// The singular locus of a curve, as found by one of the two engines.
///
/// Points are grouped into Frobenius orbits, each orbit listed
/// representative first, orbits sorted by residue degree and then by
/// representative. An exact-method report with an empty list is a proof
/// of smoothness; an enumeration report only covers degrees up to its
/// bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularReport {
    /// Identifier of the curve the report describes.
    pub curve: String,
    pub method: Method,
    pub points: Vec<SingularPoint>,
}

/// A full Frobenius orbit, representative first. Internal currency
/// between the engines and the report.
#[derive(Clone, Debug)]
pub(crate) struct Orbit {
    pub(crate) residue_degree: u32,
    pub(crate) members: Vec<ProjPoint>,
}

impl SingularReport {
    pub(crate) fn from_orbits(curve: String, method: Method, mut orbits: Vec<Orbit>) -> SingularReport {
        orbits.sort_by(|a, b| {
            (a.residue_degree, &a.members[0]).cmp(&(b.residue_degree, &b.members[0]))
        });
        if cfg!(debug_assertions) {
            let reps: BTreeSet<_> = orbits.iter().map(|o| o.members[0].clone()).collect();
            assert_eq!(reps.len(), orbits.len(), "duplicate orbit representatives");
        }
        let mut points = Vec::new();
        for (i, orb) in orbits.iter().enumerate() {
            for (j, pt) in orb.members.iter().enumerate() {
                points.push(SingularPoint {
                    point: pt.clone(),
                    residue_degree: orb.residue_degree,
                    orbit: i,
                    conjugate_index: j as u32,
                });
            }
        }
        SingularReport { curve, method, points }
    }

    pub fn smooth(&self) -> bool {
        self.points.is_empty()
    }

    pub fn orbit_count(&self) -> usize {
        self.points.iter().map(|p| p.orbit + 1).max().unwrap_or(0)
    }

    /// Orbits per residue degree.
    pub fn orbit_degree_histogram(&self) -> BTreeMap<u32, usize> {
        let mut hist = BTreeMap::new();
        for p in &self.points {
            if p.conjugate_index == 0 {
                *hist.entry(p.residue_degree).or_insert(0) += 1;
            }
        }
        hist
    }

    /// Points of residue degree exactly `s`.
    pub fn points_of_degree(&self, s: u32) -> Vec<&SingularPoint> {
        self.points.iter().filter(|p| p.residue_degree == s).collect()
    }
}

impl fmt::Display for SingularReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "curve: {}", self.curve)?;
        writeln!(f, "method: {}", self.method)?;
        if self.smooth() {
            return write!(f, "status: smooth");
        }
        writeln!(
            f,
            "status: singular points={} orbits={}",
            self.points.len(),
            self.orbit_count()
        )?;
        // one line per residue field so the coordinate encoding is unambiguous
        let mut fields_seen = BTreeSet::new();
        for p in &self.points {
            let fld = p.point.field();
            if fields_seen.insert(fld.spec_string()) {
                match fld.modulus_string() {
                    Some(m) => writeln!(f, "extension: {} modulus={}", fld.spec_string(), m)?,
                    None => writeln!(f, "extension: {}", fld.spec_string())?,
                }
            }
        }
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "point: orbit={} degree={} conjugate={} coords={} field={}",
                p.orbit,
                p.residue_degree,
                p.conjugate_index,
                p.point,
                p.point.field().spec_string()
            )?;
        }
        Ok(())
    }
}

/// Label used for reports produced directly from a form (callers that
/// built the form from a [`CurveSpec`] can overwrite `report.curve`).
pub(crate) fn form_label(f: &TriForm) -> String {
    format!(
        "form of degree {} ({} terms) over {}",
        f.degree(),
        f.num_terms(),
        f.field().spec_string()
    )
}

fn lcm32(a: u32, b: u32) -> u32 {
    fn gcd(mut a: u32, mut b: u32) -> u32 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    a / gcd(a, b) * b
}

/// Residue degree of a normalized point: the degree over F_q of the field
/// its coordinates generate.
pub(crate) fn point_residue_degree(pt: &ProjPoint, q: u64) -> u32 {
    pt.coords()
        .iter()
        .map(|c| c.degree_over_base(q))
        .fold(1, lcm32)
}

/// Expand one singular point into its full Frobenius orbit and put the
/// canonical (smallest) representative first, followed by its successive
/// q-power images.
pub(crate) fn expand_orbit(seed: ProjPoint, q: u64, expected: u32) -> Orbit {
    let mut members = vec![seed.clone()];
    let mut cur = seed.frobenius(q);
    while cur != seed {
        members.push(cur.clone());
        assert!(
            members.len() <= expected as usize,
            "Frobenius orbit exceeds the residue degree"
        );
        cur = cur.frobenius(q);
    }
    assert_eq!(
        members.len(),
        expected as usize,
        "Frobenius orbit size must equal the residue degree"
    );
    let k = members
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(k, _)| k)
        .unwrap();
    members.rotate_left(k);
    Orbit { residue_degree: expected, members }
}

/// The vanishing system defining the singular locus: the form itself and
/// its three partials. The form is always included explicitly — Euler's
/// identity cannot recover it when the characteristic divides the degree.
pub(crate) fn singular_system(f: &TriForm) -> [TriForm; 4] {
    [
        f.clone(),
        f.partial(Var::X),
        f.partial(Var::Y),
        f.partial(Var::Z),
    ]
}

/// Evaluate every system member at `coords` using shared power tables;
/// true iff all of them vanish. The partials are checked first — on a
/// plane-filling curve the form itself vanishes at every rational point,
/// so it rejects nothing there.
fn system_vanishes(system: &[TriForm], coords: &[FieldElement; 3], max_deg: u32) -> bool {
    let field = coords[0].field();
    let mut tables: [Vec<FieldElement>; 3] =
        [Vec::new(), Vec::new(), Vec::new()];
    for (t, c) in tables.iter_mut().zip(coords.iter()) {
        t.reserve(max_deg as usize + 1);
        t.push(field.one());
        for _ in 0..max_deg {
            t.push(&t[t.len() - 1] * c);
        }
    }
    for g in system.iter().rev() {
        let mut acc = field.zero();
        for (exps, c) in g.terms() {
            let m = &(&tables[0][exps[0] as usize] * &tables[1][exps[1] as usize])
                * &tables[2][exps[2] as usize];
            acc = &acc + &(c * &m);
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

/// Scan P²(F_{q^s}) for every s ≤ `bound` and record each point at which
/// the curve and all three partials vanish, grouped into Frobenius
/// orbits. A point is recorded at its residue degree only, never again at
/// the larger levels it also lives in.
pub fn singular_points_up_to(f: &TriForm, bound: u32) -> Result<SingularReport> {
    singular_points_up_to_capped(f, bound, DEFAULT_CARDINALITY_CAP)
}

/// [`singular_points_up_to`] with an explicit field-cardinality cap for
/// the scanned extensions.
pub fn singular_points_up_to_capped(f: &TriForm, bound: u32, card_cap: u64) -> Result<SingularReport> {
    let base = f.field().clone();
    let q = base
        .cardinality()
        .ok_or_else(|| Error::Degenerate("base field too large to scan".into()))?;
    let system = singular_system(f);
    let max_deg = f.degree();
    let mut orbits = Vec::new();
    for s in 1..=bound {
        let ext = Field::with_cap(base.p(), base.degree() * s, card_cap)?;
        let emb = Embedding::new(&base, &ext)?;
        let system_e: Vec<TriForm> = system.iter().map(|g| g.embed(&emb)).collect();
        let mut level: BTreeSet<ProjPoint> = BTreeSet::new();
        for pt in enumerate_proj_points(&ext)? {
            if point_residue_degree(&pt, q) == s
                && system_vanishes(&system_e, pt.coords(), max_deg)
            {
                level.insert(pt);
            }
        }
        while let Some(rep) = level.iter().next().cloned() {
            let orbit = expand_orbit(rep, q, s);
            for m in &orbit.members {
                assert!(level.remove(m), "Frobenius orbit left the singular set");
            }
            orbits.push(orbit);
        }
    }
    Ok(SingularReport::from_orbits(
        form_label(f),
        Method::EnumerationToBound(bound),
        orbits,
    ))
}

/// Compute the complete singular locus by chart-by-chart elimination.
///
/// The empty report is a proof of smoothness. A positive-dimensional
/// singular locus (non-reduced or otherwise degenerate input) is
/// reported as an error rather than a point list.
pub fn exact_singular_locus(f: &TriForm) -> Result<SingularReport> {
    exact_singular_locus_with(f, &SolveOptions::default())
}

/// [`exact_singular_locus`] with explicit options.
pub fn exact_singular_locus_with(f: &TriForm, opts: &SolveOptions) -> Result<SingularReport> {
    if f.is_zero() {
        return Err(Error::Degenerate("the zero form has no singular locus".into()));
    }
    match solver::solve(f, opts, false)? {
        solver::SolveOutcome::Complete(orbits) => Ok(SingularReport::from_orbits(
            form_label(f),
            Method::Exact,
            orbits,
        )),
        solver::SolveOutcome::Singular => unreachable!("early exit disabled"),
    }
}

/// True iff the curve is smooth over the algebraic closure.
///
/// Runs the exact engine in early-exit mode: candidates are certified in
/// quotient rings but no splitting field is ever built, so the residue
/// cap cannot trigger. A positive-dimensional singular locus counts as
/// singular.
pub fn is_smooth(f: &TriForm) -> Result<bool> {
    is_smooth_with(f, &SolveOptions::default())
}

/// [`is_smooth`] with explicit options (only the seed matters here).
pub fn is_smooth_with(f: &TriForm, opts: &SolveOptions) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Degenerate("the zero form has no singular locus".into()));
    }
    match solver::solve(f, opts, true) {
        Ok(solver::SolveOutcome::Complete(orbits)) => Ok(orbits.is_empty()),
        Ok(solver::SolveOutcome::Singular) => Ok(false),
        Err(Error::PositiveDimensional(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Decide smoothness at the rational points of a family member by its
/// root criterion: smooth there iff the family's criterion polynomial
/// has no root in the base field.
///
/// Propagates [`Error::NoCriterion`] for curves without one (custom
/// combinations, or the odd-q variant of the mixed family) — use the
/// enumeration engine for those.
pub fn smooth_at_base_points(spec: &CurveSpec) -> Result<bool> {
    let criterion = spec.criterion_poly()?;
    Ok(roots_in_field(&criterion).is_empty())
}

/// Find an F_q-line contained in the curve: the first line (in the fixed
/// enumeration order of their coefficient triples) whose restriction to
/// the curve is the zero form, if any.
pub fn has_linear_component(f: &TriForm) -> Result<Option<[FieldElement; 3]>> {
    let field = f.field();
    for line in enumerate_proj_points(field)? {
        if f.restrict_to_line(line.coords())?.is_zero() {
            return Ok(Some(line.coords().clone()));
        }
    }
    Ok(None)
}

/// Verdict of the degree-bounded implication: a plane-filling curve of
/// degree at most q+4 that is smooth at every F_q-point and contains no
/// F_q-line is smooth at every F_{q²}-point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq2Implication {
    pub degree: u32,
    /// q + 4, the largest degree the implication is proved for.
    pub degree_bound: u64,
    /// Whether the curve's degree is within the proved range.
    pub in_range: bool,
    /// Hypothesis (i): no singular F_q-point.
    pub smooth_at_base: bool,
    /// Hypothesis (ii): no F_q-linear component.
    pub no_linear_component: bool,
    /// Conclusion: no singular F_{q²}-point.
    pub smooth_at_quadratic: bool,
    /// False exactly when the hypotheses hold in range but the
    /// conclusion fails — which the theorem rules out.
    pub consistent: bool,
}

impl Fq2Implication {
    pub fn hypotheses_hold(&self) -> bool {
        self.smooth_at_base && self.no_linear_component
    }
}

impl fmt::Display for Fq2Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree={} bound={} in_range={} smooth_at_base={} no_linear_component={} smooth_at_quadratic={} consistent={}",
            self.degree,
            self.degree_bound,
            self.in_range,
            self.smooth_at_base,
            self.no_linear_component,
            self.smooth_at_quadratic,
            self.consistent
        )
    }
}

/// Evaluate the hypotheses and conclusion of the quadratic-point
/// implication on a plane-filling curve. Out-of-range degrees are still
/// computed and merely flagged, since an out-of-range curve is exactly
/// how one sees the degree bound is close to sharp.
pub fn check_fq2_implication(f: &TriForm) -> Result<Fq2Implication> {
    let field = f.field();
    if !is_plane_filling(f, field)? {
        return Err(Error::Degenerate(
            "the quadratic-point implication applies to plane-filling curves only".into(),
        ));
    }
    let q = field
        .cardinality()
        .ok_or_else(|| Error::Degenerate("base field too large to scan".into()))?;
    let report = singular_points_up_to(f, 2)?;
    let smooth_at_base = report.points_of_degree(1).is_empty();
    let smooth_at_quadratic = report.smooth();
    let no_linear_component = has_linear_component(f)?.is_none();
    let degree = f.degree();
    let degree_bound = q + 4;
    let in_range = u64::from(degree) <= degree_bound;
    let consistent =
        !(in_range && smooth_at_base && no_linear_component && !smooth_at_quadratic);
    Ok(Fq2Implication {
        degree,
        degree_bound,
        in_range,
        smooth_at_base,
        no_linear_component,
        smooth_at_quadratic,
        consistent,
    })
}

#[cfg(test)]
mod tests;
