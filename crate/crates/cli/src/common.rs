//! Option plumbing shared by every subcommand: output format and
//! destination, cap resolution (flag, then environment, then default),
//! field/curve loading, and the custom-curve file format.

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use planefill_core::{
    CurveSpec, Field, SolveOptions, TriForm, DEFAULT_CARDINALITY_CAP, DEFAULT_RESIDUE_CAP,
};
use serde::Deserialize;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

/// Environment override for the field-cardinality cap.
pub const CARD_CAP_ENV: &str = "PLANEFILL_CARD_CAP";
/// Environment override for the solver's residue-degree cap.
pub const RESIDUE_CAP_ENV: &str = "PLANEFILL_RESIDUE_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// How hard a smoothness check looks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Scan the F_q-points only.
    Fq,
    /// Scan all points of residue degree up to the extension bound.
    Ext,
    /// Exact singular locus over the algebraic closure.
    Full,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Fq => "fq",
            Mode::Ext => "ext",
            Mode::Full => "full",
        }
    }
}

#[derive(Args, Debug)]
pub struct CommonOpts {
    /// Report format (csv is available for the goodk tables only).
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Largest field cardinality the tools will materialize
    /// (overrides PLANEFILL_CARD_CAP).
    #[arg(long)]
    pub card_cap: Option<u64>,

    /// Largest residue degree the exact solver will certify
    /// (overrides PLANEFILL_RESIDUE_CAP).
    #[arg(long)]
    pub residue_cap: Option<u32>,

    /// Seed for the randomized (but reproducible) solver stages.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn env_number<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
    match std::env::var(name) {
        Ok(s) => {
            let v = s
                .trim()
                .parse()
                .ok()
                .with_context(|| format!("{name} must be a non-negative integer, got {s:?}"))?;
            Ok(Some(v))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => bail!("cannot read {name}: {e}"),
    }
}

impl CommonOpts {
    pub fn card_cap(&self) -> Result<u64> {
        if let Some(v) = self.card_cap {
            return Ok(v);
        }
        Ok(env_number(CARD_CAP_ENV)?.unwrap_or(DEFAULT_CARDINALITY_CAP))
    }

    pub fn residue_cap(&self) -> Result<u32> {
        if let Some(v) = self.residue_cap {
            return Ok(v);
        }
        Ok(env_number(RESIDUE_CAP_ENV)?.unwrap_or(DEFAULT_RESIDUE_CAP))
    }

    pub fn solve_options(&self) -> Result<SolveOptions> {
        Ok(SolveOptions {
            residue_cap: self.residue_cap()?,
            truncate_at: None,
            seed: self.seed,
        })
    }

    /// Write the rendered report to the requested destination.
    pub fn emit(&self, body: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, body)
                .with_context(|| format!("cannot write report to {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(body.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }
}

pub fn load_field(spec: &str, cap: u64) -> Result<Field> {
    Field::from_spec(spec, cap).with_context(|| format!("cannot construct field {spec:?}"))
}

/// On-disk shape of a custom curve: a base field and the three
/// coefficient forms, one `coef,i,j,l` monomial per line.
#[derive(Deserialize)]
struct CustomCurveFile {
    field: String,
    q1: Vec<String>,
    q2: Vec<String>,
    q3: Vec<String>,
}

fn parse_form(field: &Field, name: &str, lines: &[String]) -> Result<TriForm> {
    let mut terms = Vec::with_capacity(lines.len());
    for line in lines {
        terms.push(
            TriForm::parse_monomial_line(field, line)
                .with_context(|| format!("in coefficient form {name}"))?,
        );
    }
    let degree = terms
        .first()
        .map(|(e, _)| e.iter().sum())
        .with_context(|| format!("coefficient form {name} has no monomials"))?;
    TriForm::from_terms(field, degree, terms).with_context(|| format!("in coefficient form {name}"))
}

/// Resolve `--field`/`--curve` into a concrete curve spec.
///
/// `custom:FILE` curves carry their own field; a `--field` flag, if also
/// given, must agree with it.
pub fn load_curve(field_spec: Option<&str>, curve: &str, cap: u64) -> Result<(Field, CurveSpec)> {
    if let Some(path) = curve.strip_prefix("custom:") {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read curve file {path}"))?;
        let file: CustomCurveFile = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse curve file {path}"))?;
        let field = load_field(&file.field, cap)?;
        if let Some(fs) = field_spec {
            let flagged = load_field(fs, cap)?;
            if flagged != field {
                bail!(
                    "--field {} contradicts the curve file's field {}",
                    flagged.spec_string(),
                    field.spec_string()
                );
            }
        }
        let q1 = parse_form(&field, "q1", &file.q1)?;
        let q2 = parse_form(&field, "q2", &file.q2)?;
        let q3 = parse_form(&field, "q3", &file.q3)?;
        return Ok((field, CurveSpec::Custom { q1, q2, q3 }));
    }
    let Some(fs) = field_spec else {
        bail!("--field is required unless the curve is custom:FILE");
    };
    let field = load_field(fs, cap)?;
    let spec = CurveSpec::parse(&field, curve)
        .with_context(|| format!("cannot parse curve spec {curve:?}"))?;
    Ok((field, spec))
}

/// Prime powers `2..=bound`, ascending.
pub fn prime_powers_up_to(bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&n| planefill_core::prime_power(n).is_ok())
        .collect()
}
