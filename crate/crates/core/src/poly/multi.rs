//! Sparse bivariate polynomials, homogeneous ternary forms, and the
//! binary forms that arise from restricting a ternary form to a line.
//!
//! Ternary forms enforce homogeneity at construction; the curve families
//! this crate builds live in `P^2`, so everything curve-shaped passes
//! through [`TriForm`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{Embedding, Field, FieldElement};
use crate::poly::uni::UniPoly;

/// One of the three homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn all() -> [Var; 3] {
        [Var::X, Var::Y, Var::Z]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::Y => write!(f, "y"),
            Var::Z => write!(f, "z"),
        }
    }
}

fn coeff_string(c: &FieldElement) -> String {
    if c.field().degree() == 1 {
        c.to_string()
    } else {
        format!("[{c}]")
    }
}

fn push_power(out: &mut Vec<String>, var: &str, e: u32) {
    match e {
        0 => {}
        1 => out.push(var.to_string()),
        _ => out.push(format!("{var}^{e}")),
    }
}

// ===== TriForm ==========================================================

/// A homogeneous polynomial in `x, y, z` of a fixed degree.
#[derive(Clone, PartialEq, Eq)]
pub struct TriForm {
    field: Field,
    degree: u32,
    terms: BTreeMap<[u32; 3], FieldElement>,
}

impl TriForm {
    pub fn zero(field: &Field, degree: u32) -> TriForm {
        TriForm {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: FieldElement, exps: [u32; 3]) -> TriForm {
        let field = c.field().clone();
        let degree = exps.iter().sum();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        TriForm {
            field,
            degree,
            terms,
        }
    }

    pub fn from_terms(
        field: &Field,
        degree: u32,
        terms: impl IntoIterator<Item = ([u32; 3], FieldElement)>,
    ) -> Result<TriForm> {
        let mut map: BTreeMap<[u32; 3], FieldElement> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.iter().sum::<u32>() != degree {
                return Err(Error::Degenerate(format!(
                    "monomial x^{}y^{}z^{} in a form of degree {degree}",
                    exps[0], exps[1], exps[2]
                )));
            }
            c.same_field(&field.zero())?;
            let entry = map.entry(exps).or_insert_with(|| field.zero());
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(TriForm {
            field: field.clone(),
            degree,
            terms: map,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: [u32; 3]) -> FieldElement {
        self.terms
            .get(&exps)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Addition with an explicit degree check (the `+` operator panics).
    pub fn try_add(&self, rhs: &TriForm) -> Result<TriForm> {
        if self.degree != rhs.degree {
            return Err(Error::Degenerate(format!(
                "adding forms of degrees {} and {}",
                self.degree, rhs.degree
            )));
        }
        self.field.zero().same_field(&rhs.field.zero())?;
        let mut terms = self.terms.clone();
        for (exps, c) in &rhs.terms {
            let entry = terms.entry(*exps).or_insert_with(|| self.field.zero());
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(TriForm {
            field: self.field.clone(),
            degree: self.degree,
            terms,
        })
    }

    pub fn mul_elem(&self, c: &FieldElement) -> TriForm {
        if c.is_zero() {
            return TriForm::zero(&self.field, self.degree);
        }
        TriForm {
            field: self.field.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Formal partial derivative; exponents act through the prime field,
    /// so terms with exponent divisible by p vanish.
    pub fn partial(&self, var: Var) -> TriForm {
        let vi = var.index();
        let p = self.field.p();
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let e = exps[vi];
            if e == 0 || e as u64 % p == 0 {
                continue;
            }
            let mut ne = *exps;
            ne[vi] -= 1;
            let nc = c.scalar_mul(e as u64 % p);
            if !nc.is_zero() {
                terms.insert(ne, nc);
            }
        }
        TriForm {
            field: self.field.clone(),
            degree: self.degree.saturating_sub(1),
            terms,
        }
    }

    /// Evaluates at a point whose coordinates lie in the coefficient field.
    pub fn eval(&self, coords: &[FieldElement; 3]) -> FieldElement {
        for c in coords {
            assert!(
                c.field() == &self.field,
                "evaluation point lives in {}, form over {}",
                c.field(),
                self.field
            );
        }
        let mut acc = self.field.zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = &term * &coords[v].pow(e as u128);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Maps coefficients into an extension field.
    pub fn embed(&self, emb: &Embedding) -> TriForm {
        TriForm {
            field: emb.sup().clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (*e, emb.apply(c))).collect(),
        }
    }

    /// Sets `var := 1`, producing a bivariate polynomial in the remaining
    /// two variables (kept in `x < y < z` order).
    pub fn to_bipoly(&self, one_var: Var) -> BiPoly {
        let oi = one_var.index();
        let keep: Vec<usize> = (0..3).filter(|&i| i != oi).collect();
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let key = [exps[keep[0]], exps[keep[1]]];
            let entry = terms.entry(key).or_insert_with(|| self.field.zero());
            *entry = &*entry + c;
        }
        terms.retain(|_, c: &mut FieldElement| !c.is_zero());
        BiPoly {
            field: self.field.clone(),
            terms,
        }
    }

    /// Sets `var := 0`, dropping every monomial that contains it.
    pub fn zero_section(&self, var: Var) -> TriForm {
        let vi = var.index();
        TriForm {
            field: self.field.clone(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[vi] == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `var := r0*x + r1*y + r2*z` and expands.
    pub fn substitute_linear(&self, var: Var, repl: &[FieldElement; 3]) -> TriForm {
        let vi = var.index();
        let lin = TriForm::from_terms(
            &self.field,
            1,
            [
                ([1, 0, 0], repl[0].clone()),
                ([0, 1, 0], repl[1].clone()),
                ([0, 0, 1], repl[2].clone()),
            ],
        )
        .expect("linear form");
        let mut acc = TriForm::zero(&self.field, self.degree);
        // cache powers of the linear form
        let mut lin_pows: Vec<TriForm> = vec![TriForm::monomial(self.field.one(), [0, 0, 0])];
        for (exps, c) in &self.terms {
            let e = exps[vi] as usize;
            while lin_pows.len() <= e {
                let next = &lin_pows[lin_pows.len() - 1] * &lin;
                lin_pows.push(next);
            }
            let mut rest_exps = *exps;
            rest_exps[vi] = 0;
            let rest = TriForm::monomial(c.clone(), rest_exps);
            acc = acc.try_add(&(&rest * &lin_pows[e])).expect("degree match");
        }
        acc
    }

    /// Restriction to the projective line `l0*x + l1*y + l2*z = 0`,
    /// expressed as a binary form on a canonical parametrization of the
    /// line.  A zero restriction means the line is a component.
    pub fn restrict_to_line(&self, line: &[FieldElement; 3]) -> Result<BinaryForm> {
        let pivot = line
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroLine)?;
        let f = &self.field;
        let ipiv = line[pivot].inv()?;
        // two spanning points of the line, depending on the pivot
        let (p0, p1): ([FieldElement; 3], [FieldElement; 3]) = match pivot {
            0 => (
                [-&(&line[1] * &ipiv), f.one(), f.zero()],
                [-&(&line[2] * &ipiv), f.zero(), f.one()],
            ),
            1 => (
                [f.one(), f.zero(), f.zero()],
                [f.zero(), -&(&line[2] * &ipiv), f.one()],
            ),
            _ => ([f.one(), f.zero(), f.zero()], [f.zero(), f.one(), f.zero()]),
        };
        let d = self.degree as usize;
        let mut out = vec![f.zero(); d + 1];
        for (exps, c) in &self.terms {
            // product over coordinates of (p0[w]*u + p1[w]*v)^exps[w]
            let mut prod = vec![c.clone()];
            for w in 0..3 {
                for _ in 0..exps[w] {
                    prod = conv_linear(&prod, &p0[w], &p1[w], f);
                }
            }
            debug_assert_eq!(prod.len(), d + 1);
            for (i, t) in prod.into_iter().enumerate() {
                out[i] = &out[i] + &t;
            }
        }
        Ok(BinaryForm {
            field: f.clone(),
            coeffs: out,
        })
    }

    /// Serialization lines `coef,i,j,l`, one monomial per line.
    pub fn to_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(e, c)| format!("{c},{},{},{}", e[0], e[1], e[2]))
            .collect()
    }

    /// Parses one `coef,i,j,l` monomial line.
    pub fn parse_monomial_line(field: &Field, line: &str) -> Result<([u32; 3], FieldElement)> {
        let bad = || Error::Parse(format!("invalid monomial line {line:?}"));
        let parts: Vec<&str> = line.trim().split(',').collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        let c = FieldElement::parse(field, parts[0])?;
        let i: u32 = parts[1].trim().parse().map_err(|_| bad())?;
        let j: u32 = parts[2].trim().parse().map_err(|_| bad())?;
        let l: u32 = parts[3].trim().parse().map_err(|_| bad())?;
        Ok(([i, j, l], c))
    }
}

/// Multiplies a dense homogeneous (u, v) coefficient vector by `a*u + b*v`.
fn conv_linear(
    prod: &[FieldElement],
    a: &FieldElement,
    b: &FieldElement,
    field: &Field,
) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); prod.len() + 1];
    for (i, c) in prod.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !a.is_zero() {
            let t = c * a;
            out[i] = &out[i] + &t;
        }
        if !b.is_zero() {
            let t = c * b;
            out[i + 1] = &out[i + 1] + &t;
        }
    }
    out
}

impl std::ops::Add<&TriForm> for &TriForm {
    type Output = TriForm;
    fn add(self, rhs: &TriForm) -> TriForm {
        self.try_add(rhs).expect("form addition")
    }
}

impl std::ops::Sub<&TriForm> for &TriForm {
    type Output = TriForm;
    fn sub(self, rhs: &TriForm) -> TriForm {
        self.try_add(&-rhs).expect("form subtraction")
    }
}

impl std::ops::Neg for &TriForm {
    type Output = TriForm;
    fn neg(self) -> TriForm {
        TriForm {
            field: self.field.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl std::ops::Mul<&TriForm> for &TriForm {
    type Output = TriForm;
    fn mul(self, rhs: &TriForm) -> TriForm {
        let mut terms: BTreeMap<[u32; 3], FieldElement> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let key = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                let prod = c1 * c2;
                let entry = terms.entry(key).or_insert_with(|| self.field.zero());
                *entry = &*entry + &prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TriForm {
            field: self.field.clone(),
            degree: self.degree + rhs.degree,
            terms,
        }
    }
}

impl fmt::Display for TriForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !c.is_one() || *exps == [0, 0, 0] {
                parts.push(coeff_string(c));
            }
            push_power(&mut parts, "x", exps[0]);
            push_power(&mut parts, "y", exps[1]);
            push_power(&mut parts, "z", exps[2]);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TriForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ===== BiPoly ===========================================================

/// A sparse polynomial in two variables.  The variable names depend on
/// context (a dehomogenized chart names them after the surviving
/// coordinates); internally they are "first" and "second".
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<[u32; 2], FieldElement>,
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: FieldElement, exps: [u32; 2]) -> BiPoly {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        BiPoly { field, terms }
    }

    pub fn from_terms(
        field: &Field,
        terms: impl IntoIterator<Item = ([u32; 2], FieldElement)>,
    ) -> BiPoly {
        let mut map: BTreeMap<[u32; 2], FieldElement> = BTreeMap::new();
        for (exps, c) in terms {
            let entry = map.entry(exps).or_insert_with(|| field.zero());
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        BiPoly {
            field: field.clone(),
            terms: map,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 2], &FieldElement)> {
        self.terms.iter()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0]).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[1]).max()
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            if exps[0] > 0 {
                t = &t * &x.pow(exps[0] as u128);
            }
            if exps[1] > 0 {
                t = &t * &y.pow(exps[1] as u128);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Coefficients as polynomials in the first variable, indexed by the
    /// power of the second: entry `j` is the coefficient of `y^j`.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly> {
        let Some(dy) = self.deg_y() else {
            return Vec::new();
        };
        let mut rows: Vec<Vec<FieldElement>> = vec![Vec::new(); dy as usize + 1];
        for (exps, c) in &self.terms {
            let row = &mut rows[exps[1] as usize];
            if row.len() <= exps[0] as usize {
                row.resize(exps[0] as usize + 1, self.field.zero());
            }
            row[exps[0] as usize] = c.clone();
        }
        rows.into_iter()
            .map(|r| UniPoly::from_coeffs(&self.field, r))
            .collect()
    }

    /// Substitutes a value for the first variable, leaving a polynomial in
    /// the second.
    pub fn specialize_x(&self, x: &FieldElement) -> UniPoly {
        let dy = self.deg_y().map_or(0, |d| d as usize);
        let mut out = vec![self.field.zero(); dy + 1];
        let dx = self.deg_x().map_or(0, |d| d as usize);
        let mut pows = Vec::with_capacity(dx + 1);
        let mut pw = self.field.one();
        for _ in 0..=dx {
            pows.push(pw.clone());
            pw = &pw * x;
        }
        for (exps, c) in &self.terms {
            let t = c * &pows[exps[0] as usize];
            out[exps[1] as usize] = &out[exps[1] as usize] + &t;
        }
        UniPoly::from_coeffs(&self.field, out)
    }

    /// Substitutes a value for the second variable, leaving a polynomial
    /// in the first.
    pub fn specialize_y(&self, y: &FieldElement) -> UniPoly {
        let dx = self.deg_x().map_or(0, |d| d as usize);
        let mut out = vec![self.field.zero(); dx + 1];
        let dy = self.deg_y().map_or(0, |d| d as usize);
        let mut pows = Vec::with_capacity(dy + 1);
        let mut pw = self.field.one();
        for _ in 0..=dy {
            pows.push(pw.clone());
            pw = &pw * y;
        }
        for (exps, c) in &self.terms {
            let t = c * &pows[exps[1] as usize];
            out[exps[0] as usize] = &out[exps[0] as usize] + &t;
        }
        UniPoly::from_coeffs(&self.field, out)
    }

    /// Collapses to a univariate polynomial in the first variable when the
    /// second does not occur.
    pub fn to_unipoly_in_x(&self) -> Option<UniPoly> {
        if self.deg_y().unwrap_or(0) > 0 {
            return None;
        }
        let dx = self.deg_x().map_or(0, |d| d as usize);
        let mut coeffs = vec![self.field.zero(); dx + 1];
        for (exps, c) in &self.terms {
            coeffs[exps[0] as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(&self.field, coeffs))
    }

    pub fn embed(&self, emb: &Embedding) -> BiPoly {
        BiPoly {
            field: emb.sup().clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, emb.apply(c))).collect(),
        }
    }
}

impl std::ops::Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut terms = self.terms.clone();
        for (exps, c) in &rhs.terms {
            let entry = terms.entry(*exps).or_insert_with(|| self.field.zero());
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly {
            field: self.field.clone(),
            terms,
        }
    }
}

impl std::ops::Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl std::ops::Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut terms: BTreeMap<[u32; 2], FieldElement> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let key = [e1[0] + e2[0], e1[1] + e2[1]];
                let prod = c1 * c2;
                let entry = terms.entry(key).or_insert_with(|| self.field.zero());
                *entry = &*entry + &prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BiPoly {
            field: self.field.clone(),
            terms,
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !c.is_one() || *exps == [0, 0] {
                parts.push(coeff_string(c));
            }
            push_power(&mut parts, "x", exps[0]);
            push_power(&mut parts, "y", exps[1]);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ===== BinaryForm =======================================================

/// A homogeneous binary form `sum coeffs[i] * u^(d-i) * v^i`, produced by
/// restricting a ternary form to a line.  Unlike `UniPoly` the length is
/// fixed by the degree, so the zero form remembers its degree.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, u: &FieldElement, v: &FieldElement) -> FieldElement {
        let d = self.coeffs.len() - 1;
        let mut acc = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = &(c * &u.pow((d - i) as u128)) * &v.pow(i as u128);
            acc = &acc + &t;
        }
        acc
    }

    /// Multiplicity of the parameter point `[1 : 0]` as a root.
    pub fn infinity_multiplicity(&self) -> u32 {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(self.degree(), |i| i as u32)
    }

    /// The dehomogenization `B(t, 1)` as a univariate polynomial.
    pub fn to_unipoly(&self) -> UniPoly {
        let d = self.coeffs.len() - 1;
        let coeffs = (0..=d).map(|k| self.coeffs[d - k].clone()).collect();
        UniPoly::from_coeffs(&self.field, coeffs)
    }

    /// Roots `([u, v], multiplicity)` over the coefficient field, with
    /// `[1, 0]` last when present.  Roots in extensions are not listed.
    pub fn projective_roots(&self) -> Result<Vec<([FieldElement; 2], u32)>> {
        if self.is_zero() {
            return Err(Error::Degenerate(
                "every parameter is a root of the zero form".into(),
            ));
        }
        let g = self.to_unipoly();
        let mut out = Vec::new();
        let fac = crate::poly::factor::factor(&g)?;
        for (phi, m) in &fac.factors {
            if phi.degree() == Some(1) {
                let root = -&phi.coeff(0);
                out.push(([root, self.field.one()], *m));
            }
        }
        let inf = self.infinity_multiplicity();
        if inf > 0 {
            out.push(([self.field.one(), self.field.zero()], inf));
        }
        Ok(out)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.coeffs.len() - 1;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !c.is_one() {
                parts.push(coeff_string(c));
            }
            push_power(&mut parts, "u", (d - i) as u32);
            push_power(&mut parts, "v", i as u32);
            if parts.is_empty() {
                parts.push(coeff_string(c));
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
