//! `check`: decide smoothness of a single curve and report its singular
//! points at the requested depth.

use crate::common::{load_curve, CommonOpts, Format, Mode};
use crate::report::{render_json, PointRecord, SCHEMA_VERSION};
use anyhow::{bail, Result};
use clap::Args;
use planefill_core::poly::roots_in_field;
use planefill_core::{
    build_curve, exact_singular_locus_with, has_linear_component, is_plane_filling,
    singular_points_up_to_capped, Error,
};
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Base field, e.g. "11", "9", or "3^2" (unneeded for custom:FILE curves).
    #[arg(long)]
    pub field: Option<String>,

    /// Curve spec: tallini:a,b,c | ck:k | dk:k | ckr:k,r | custom:FILE.
    #[arg(long)]
    pub curve: String,

    /// How hard to look for singular points.
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    pub mode: Mode,

    /// Residue-degree bound for --mode ext.
    #[arg(long, default_value_t = 2)]
    pub ext_bound: u32,

    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Serialize)]
struct CriterionInfo {
    polynomial: String,
    has_rational_root: bool,
    roots: Vec<String>,
}

#[derive(Serialize)]
struct CheckReport {
    schema_version: u32,
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<String>,
    curve: String,
    degree: u32,
    plane_filling: bool,
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ext_bound: Option<u32>,
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    criterion: Option<CriterionInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    linear_component: Option<[String; 3]>,
    smooth: bool,
    positive_dimensional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    positive_dimensional_detail: Option<String>,
    orbit_count: usize,
    singular_points: Vec<PointRecord>,
}

fn render_text(r: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field: {}", r.field);
    if let Some(m) = &r.modulus {
        let _ = writeln!(s, "modulus: {m}");
    }
    let _ = writeln!(s, "curve: {}", r.curve);
    let _ = writeln!(s, "degree: {}", r.degree);
    let _ = writeln!(s, "plane_filling: {}", r.plane_filling);
    match r.ext_bound {
        Some(b) => {
            let _ = writeln!(s, "mode: {} (degree <= {b})", r.mode);
        }
        None => {
            let _ = writeln!(s, "mode: {}", r.mode);
        }
    }
    let _ = writeln!(s, "method: {}", r.method);
    if let Some(c) = &r.criterion {
        let _ = writeln!(
            s,
            "criterion: {} rational_roots=[{}]",
            c.polynomial,
            c.roots.join(", ")
        );
    }
    if let Some(l) = &r.linear_component {
        let _ = writeln!(s, "linear_component: {},{},{}", l[0], l[1], l[2]);
    }
    if r.positive_dimensional {
        let _ = writeln!(
            s,
            "status: singular ({})",
            r.positive_dimensional_detail.as_deref().unwrap_or("positive-dimensional locus")
        );
    } else if r.smooth {
        let _ = writeln!(s, "status: smooth");
    } else {
        let _ = writeln!(
            s,
            "status: singular points={} orbits={}",
            r.singular_points.len(),
            r.orbit_count
        );
    }
    for p in &r.singular_points {
        let _ = writeln!(
            s,
            "point: orbit={} degree={} conjugate={} coords={} field={}",
            p.orbit, p.residue_degree, p.conjugate_index, p.coords, p.field
        );
    }
    s
}

pub fn run(args: &CheckArgs) -> Result<u8> {
    if args.common.format == Format::Csv {
        bail!("--format csv is only available for the goodk command");
    }
    if args.mode == Mode::Ext && args.ext_bound < 1 {
        bail!("--ext-bound must be at least 1");
    }
    let card_cap = args.common.card_cap()?;
    let opts = args.common.solve_options()?;

    let (field, spec) = load_curve(args.field.as_deref(), &args.curve, card_cap)?;
    let f = build_curve(&spec)?;
    let degree = f.degree();
    let plane_filling = is_plane_filling(&f, &field)?;

    let criterion = match spec.criterion_poly() {
        Ok(p) => {
            let mut roots = roots_in_field(&p);
            roots.sort();
            Some(CriterionInfo {
                polynomial: p.to_string(),
                has_rational_root: !roots.is_empty(),
                roots: roots.iter().map(|r| r.to_string()).collect(),
            })
        }
        Err(Error::NoCriterion(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let linear_component = has_linear_component(&f)?
        .map(|l| [l[0].to_string(), l[1].to_string(), l[2].to_string()]);

    let mut positive_dimensional = false;
    let mut pd_detail = None;
    let (points, method, ext_bound) = match args.mode {
        Mode::Fq => {
            let rep = singular_points_up_to_capped(&f, 1, card_cap)?;
            (rep.points, "enumeration(max_degree=1)".to_string(), None)
        }
        Mode::Ext => {
            let rep = singular_points_up_to_capped(&f, args.ext_bound, card_cap)?;
            (
                rep.points,
                format!("enumeration(max_degree={})", args.ext_bound),
                Some(args.ext_bound),
            )
        }
        Mode::Full => match exact_singular_locus_with(&f, &opts) {
            Ok(rep) => (rep.points, "exact".to_string(), None),
            Err(Error::PositiveDimensional(msg)) => {
                positive_dimensional = true;
                pd_detail = Some(msg);
                (Vec::new(), "exact".to_string(), None)
            }
            Err(e) => return Err(e.into()),
        },
    };
    let smooth = points.is_empty() && !positive_dimensional;
    let orbit_count = points.iter().map(|p| p.orbit + 1).max().unwrap_or(0);

    let report = CheckReport {
        schema_version: SCHEMA_VERSION,
        field: field.spec_string(),
        modulus: field.modulus_string(),
        curve: spec.spec_string(),
        degree,
        plane_filling,
        mode: args.mode.as_str().to_string(),
        ext_bound,
        method,
        criterion,
        linear_component,
        smooth,
        positive_dimensional,
        positive_dimensional_detail: pd_detail,
        orbit_count,
        singular_points: points.iter().map(PointRecord::from_point).collect(),
    };
    let body = match args.common.format {
        Format::Json => render_json(&report)?,
        Format::Text => render_text(&report),
        Format::Csv => unreachable!("rejected above"),
    };
    args.common.emit(&body)?;
    Ok(if smooth { 0 } else { 1 })
}
