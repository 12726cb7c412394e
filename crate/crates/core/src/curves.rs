//! The plane-filling curve families.
//!
//! Every polynomial vanishing on all of `P^2(F_q)` is a combination of
//! the three binomials `x^q y - x y^q`, `y^q z - y z^q`, `z^q x - z x^q`.
//! The families built here pick specific coefficient forms: the classical
//! degree-(q+2) family with linear coefficients, the degree-(q+3) `C_k`
//! and `D_k` families with quadratic coefficients, and the degree-(q+r+1)
//! generalization `C_{k,r}`.  Arbitrary combinations are accepted through
//! the `Custom` variant.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldElement};
use crate::poly::multi::TriForm;
use crate::poly::uni::UniPoly;

/// Point of `P^2` over a finite field, stored with the leftmost nonzero
/// coordinate normalized to 1, so equal points compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<ProjPoint> {
        let [x, y, z] = coords;
        x.same_field(&y)?;
        x.same_field(&z)?;
        let coords = [x, y, z];
        let Some(pivot) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::Degenerate(
                "projective point needs a nonzero coordinate".into(),
            ));
        };
        let scale = coords[pivot].inv()?;
        let normalized = [
            &coords[0] * &scale,
            &coords[1] * &scale,
            &coords[2] * &scale,
        ];
        Ok(ProjPoint { coords: normalized })
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    /// Coordinate-wise q-power Frobenius.  Normalization is preserved
    /// because the leading 1 is fixed.
    pub fn frobenius(&self, q: u64) -> ProjPoint {
        let coords = [
            self.coords[0].frobenius(q, 1),
            self.coords[1].frobenius(q, 1),
            self.coords[2].frobenius(q, 1),
        ];
        ProjPoint::new(coords).expect("frobenius preserves nonzero points")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

/// All `q^2 + q + 1` points of `P^2(F_q)` in a fixed order: `[1:a:b]`
/// for a, b in field order, then `[0:1:c]`, then `[0:0:1]`.
pub fn enumerate_proj_points(field: &Field) -> Result<Vec<ProjPoint>> {
    let Some(q) = field.cardinality() else {
        return Err(Error::CardinalityCap {
            p: field.p(),
            m: field.degree(),
            cap: crate::fields::DEFAULT_CARDINALITY_CAP,
        });
    };
    let one = field.one();
    let zero = field.zero();
    let mut points = Vec::with_capacity((q * q + q + 1) as usize);
    for a in field.elements() {
        for b in field.elements() {
            points.push(ProjPoint {
                coords: [one.clone(), a.clone(), b],
            });
        }
    }
    for c in field.elements() {
        points.push(ProjPoint {
            coords: [zero.clone(), one.clone(), c],
        });
    }
    points.push(ProjPoint {
        coords: [zero.clone(), zero, one],
    });
    Ok(points)
}

/// The three degree-(q+1) binomials that cut out exactly the F_q-points
/// of the plane: `x^q y - x y^q`, `y^q z - y z^q`, `z^q x - z x^q`.
pub fn filling_generators(field: &Field) -> Result<[TriForm; 3]> {
    let Some(q) = field.cardinality() else {
        return Err(Error::CardinalityCap {
            p: field.p(),
            m: field.degree(),
            cap: crate::fields::DEFAULT_CARDINALITY_CAP,
        });
    };
    let q = u32::try_from(q).expect("cardinality cap keeps q within u32");
    let one = field.one();
    let minus = -&one;
    let gen = |hi: usize, lo: usize| -> TriForm {
        let mut e1 = [0u32; 3];
        e1[hi] = q;
        e1[lo] = 1;
        let mut e2 = [0u32; 3];
        e2[hi] = 1;
        e2[lo] = q;
        TriForm::from_terms(field, q + 1, [(e1, one.clone()), (e2, minus.clone())])
            .expect("generator terms are homogeneous")
    };
    Ok([gen(0, 1), gen(1, 2), gen(2, 0)])
}

/// A member of one of the plane-filling families, or a custom
/// combination of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    /// `(ax+by+cz) g1 + y g2 + z g3`, degree q+2.
    Tallini {
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
    },
    /// `x^2 g1 + y^2 g2 + (z^2 + k x^2) g3`, degree q+3.
    Ck { k: FieldElement },
    /// `x^2 g1 + y^2 g2 + (z^2 + k xy) g3`, degree q+3.
    Dk { k: FieldElement },
    /// `x^r g1 + y^r g2 + (z^r + k x^r) g3`, degree q+r+1; r >= 2.
    Ckr { k: FieldElement, r: u32 },
    /// `Q1 g1 + Q2 g2 + Q3 g3` for caller-supplied coefficient forms of
    /// one common degree.
    Custom {
        q1: TriForm,
        q2: TriForm,
        q3: TriForm,
    },
}

impl CurveSpec {
    pub fn field(&self) -> &Field {
        match self {
            CurveSpec::Tallini { a, .. } => a.field(),
            CurveSpec::Ck { k } | CurveSpec::Dk { k } | CurveSpec::Ckr { k, .. } => k.field(),
            CurveSpec::Custom { q1, .. } => q1.field(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            CurveSpec::Tallini { a, b, c } => {
                a.same_field(b)?;
                a.same_field(c)?;
            }
            CurveSpec::Ck { .. } | CurveSpec::Dk { .. } => {}
            CurveSpec::Ckr { r, .. } => {
                if *r < 2 {
                    return Err(Error::Degenerate(format!(
                        "coefficient exponent r must be at least 2, got {r}"
                    )));
                }
            }
            CurveSpec::Custom { q1, q2, q3 } => {
                if q1.field() != q2.field() || q1.field() != q3.field() {
                    return Err(Error::Degenerate(
                        "custom coefficient forms live in different fields".into(),
                    ));
                }
                if q1.degree() != q2.degree() || q1.degree() != q3.degree() {
                    return Err(Error::Degenerate(format!(
                        "custom coefficient forms have mixed degrees {}, {}, {}",
                        q1.degree(),
                        q2.degree(),
                        q3.degree()
                    )));
                }
                if q1.is_zero() && q2.is_zero() && q3.is_zero() {
                    return Err(Error::Degenerate(
                        "custom coefficient forms are all zero".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The three coefficient forms (Q1, Q2, Q3) multiplying the
    /// generators.
    pub fn coefficient_forms(&self) -> Result<[TriForm; 3]> {
        self.validate()?;
        let field = self.field();
        let mono = |c: &FieldElement, e: [u32; 3], d: u32| -> TriForm {
            TriForm::from_terms(field, d, [(e, c.clone())]).expect("single monomial")
        };
        let one = field.one();
        Ok(match self {
            CurveSpec::Tallini { a, b, c } => [
                TriForm::from_terms(
                    field,
                    1,
                    [
                        ([1, 0, 0], a.clone()),
                        ([0, 1, 0], b.clone()),
                        ([0, 0, 1], c.clone()),
                    ],
                )?,
                mono(&one, [0, 1, 0], 1),
                mono(&one, [0, 0, 1], 1),
            ],
            CurveSpec::Ck { k } => [
                mono(&one, [2, 0, 0], 2),
                mono(&one, [0, 2, 0], 2),
                TriForm::from_terms(field, 2, [([0, 0, 2], one.clone()), ([2, 0, 0], k.clone())])?,
            ],
            CurveSpec::Dk { k } => [
                mono(&one, [2, 0, 0], 2),
                mono(&one, [0, 2, 0], 2),
                TriForm::from_terms(field, 2, [([0, 0, 2], one.clone()), ([1, 1, 0], k.clone())])?,
            ],
            CurveSpec::Ckr { k, r } => [
                mono(&one, [*r, 0, 0], *r),
                mono(&one, [0, *r, 0], *r),
                TriForm::from_terms(
                    field,
                    *r,
                    [([0, 0, *r], one.clone()), ([*r, 0, 0], k.clone())],
                )?,
            ],
            CurveSpec::Custom { q1, q2, q3 } => [q1.clone(), q2.clone(), q3.clone()],
        })
    }

    /// Total degree of the built curve.
    pub fn degree(&self) -> Result<u32> {
        self.validate()?;
        let q = self.field().cardinality().ok_or(Error::CardinalityCap {
            p: self.field().p(),
            m: self.field().degree(),
            cap: crate::fields::DEFAULT_CARDINALITY_CAP,
        })? as u32;
        Ok(match self {
            CurveSpec::Tallini { .. } => q + 2,
            CurveSpec::Ck { .. } | CurveSpec::Dk { .. } => q + 3,
            CurveSpec::Ckr { r, .. } => q + r + 1,
            CurveSpec::Custom { q1, .. } => q + 1 + q1.degree(),
        })
    }

    /// The univariate polynomial whose F_q-roots detect singular
    /// F_q-points (for the classical family, singularity anywhere).
    ///
    /// No criterion is on record for `D_k` in odd characteristic or for
    /// custom combinations; those return an error and the caller must
    /// fall back to point enumeration or the exact solver.
    pub fn criterion_poly(&self) -> Result<UniPoly> {
        self.validate()?;
        let field = self.field();
        let one = field.one();
        match self {
            CurveSpec::Tallini { a, b, c } => {
                // t^3 - c t^2 - b t - a
                Ok(UniPoly::from_coeffs(
                    field,
                    vec![-a, -b, -c, one.clone()],
                ))
            }
            CurveSpec::Ck { k } => {
                let mut p = UniPoly::monomial(one.clone(), 7);
                p = &p + &UniPoly::monomial(k.clone(), 3);
                Ok(&p - &UniPoly::one(field))
            }
            CurveSpec::Dk { k } => {
                if field.p() != 2 {
                    return Err(Error::NoCriterion(
                        "the x^7 + k x^5 + 1 test applies only in characteristic 2".into(),
                    ));
                }
                let mut p = UniPoly::monomial(one.clone(), 7);
                p = &p + &UniPoly::monomial(k.clone(), 5);
                Ok(&p + &UniPoly::one(field))
            }
            CurveSpec::Ckr { k, r } => {
                let mut p = UniPoly::monomial(one.clone(), (r * r + r + 1) as usize);
                p = &p + &UniPoly::monomial(k.clone(), (r + 1) as usize);
                Ok(&p - &UniPoly::one(field))
            }
            CurveSpec::Custom { .. } => Err(Error::NoCriterion(
                "custom combinations have no closed-form root test".into(),
            )),
        }
    }

    /// Compact text form, parseable by [`CurveSpec::parse`].
    pub fn spec_string(&self) -> String {
        match self {
            CurveSpec::Tallini { a, b, c } => format!("tallini:{a},{b},{c}"),
            CurveSpec::Ck { k } => format!("ck:{k}"),
            CurveSpec::Dk { k } => format!("dk:{k}"),
            CurveSpec::Ckr { k, r } => format!("ckr:{k},{r}"),
            CurveSpec::Custom { q1, .. } => format!("custom(deg {})", q1.degree()),
        }
    }

    /// Parse "tallini:a,b,c", "ck:k", "dk:k", or "ckr:k,r" over the given
    /// field.  Custom curves are file-based and handled by the caller.
    pub fn parse(field: &Field, s: &str) -> Result<CurveSpec> {
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("curve spec '{s}' lacks a ':'")))?;
        let parts: Vec<&str> = rest.split(',').collect();
        let elem = |t: &str| FieldElement::parse(field, t);
        let spec = match (tag, parts.as_slice()) {
            ("tallini", [a, b, c]) => CurveSpec::Tallini {
                a: elem(a)?,
                b: elem(b)?,
                c: elem(c)?,
            },
            ("ck", [k]) => CurveSpec::Ck { k: elem(k)? },
            ("dk", [k]) => CurveSpec::Dk { k: elem(k)? },
            ("ckr", [k, r]) => {
                let r: u32 = r
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent '{r}' in curve spec")))?;
                CurveSpec::Ckr { k: elem(k)?, r }
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unrecognized curve spec '{s}' (expected tallini:a,b,c | ck:k | dk:k | ckr:k,r)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.spec_string(), self.field())
    }
}

/// Expand a curve spec into its defining form `Q1 g1 + Q2 g2 + Q3 g3`.
pub fn build_curve(spec: &CurveSpec) -> Result<TriForm> {
    let [q1, q2, q3] = spec.coefficient_forms()?;
    let [g1, g2, g3] = filling_generators(spec.field())?;
    let f = (&q1 * &g1).try_add(&(&q2 * &g2))?.try_add(&(&q3 * &g3))?;
    if f.is_zero() {
        // the generators satisfy z g1 + x g2 + y g3 = 0, so nonzero
        // coefficient forms can still cancel completely
        return Err(Error::Degenerate(
            "coefficient forms combine to the zero polynomial".into(),
        ));
    }
    Ok(f)
}

/// Does `f` vanish at every point of `P^2(F_q)`?
pub fn is_plane_filling(f: &TriForm, field: &Field) -> Result<bool> {
    if f.field() != field {
        return Err(Error::FieldMismatch {
            p1: f.field().p(),
            m1: f.field().degree(),
            p2: field.p(),
            m2: field.degree(),
        });
    }
    for point in enumerate_proj_points(field)? {
        if !f.eval(point.coords()).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
