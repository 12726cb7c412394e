//! `scan-k`: sweep whole families over ranges of q (and r), recording a
//! per-k smoothness verdict and flagging (q, r) pairs with no smooth
//! member. Long scans checkpoint per pair so interrupted runs resume.

use crate::common::{load_field, CommonOpts, Format, Mode};
use crate::report::{render_json, SCHEMA_VERSION};
use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use planefill_core::{
    build_curve, is_smooth_with, singular_points_up_to_capped, CurveSpec, Error, FieldElement,
    SolveOptions,
};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Ck,
    Dk,
    Ckr,
}

impl FamilyArg {
    fn as_str(self) -> &'static str {
        match self {
            FamilyArg::Ck => "ck",
            FamilyArg::Dk => "dk",
            FamilyArg::Ckr => "ckr",
        }
    }
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Base-field cardinalities to scan, comma separated (e.g. 3,5,9).
    #[arg(long, required = true, value_delimiter = ',')]
    pub q: Vec<u64>,

    /// Family to sweep.
    #[arg(long, value_enum, default_value_t = FamilyArg::Ckr)]
    pub family: FamilyArg,

    /// Smallest coefficient exponent r (ckr only; default 2).
    #[arg(long)]
    pub r_min: Option<u32>,

    /// Largest coefficient exponent r (ckr only; default r-min).
    #[arg(long)]
    pub r_max: Option<u32>,

    /// Restrict the sweep to these k values, comma separated; an empty
    /// string scans nothing. Default: every k in F_q.
    #[arg(long)]
    pub k: Option<String>,

    /// Skip (q, r) pairs with gcd(r, q) > 1.
    #[arg(long)]
    pub coprime_only: bool,

    /// How hard to look for singular points.
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    pub mode: Mode,

    /// Residue-degree bound for --mode ext.
    #[arg(long, default_value_t = 2)]
    pub ext_bound: u32,

    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,

    /// Directory for per-(q, r) resume files.
    #[arg(long)]
    pub checkpoint_dir: Option<PathBuf>,

    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct KVerdict {
    pub k: String,
    pub smooth: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairRecord {
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    /// Reason this pair was skipped (a cap was exceeded), if it was.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skipped: Option<String>,
    pub verdicts: Vec<KVerdict>,
    pub exists_smooth: bool,
}

#[derive(Serialize)]
struct PairKey {
    q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<u32>,
}

#[derive(Serialize)]
struct ScanReport {
    schema_version: u32,
    family: String,
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ext_bound: Option<u32>,
    seed: u64,
    coprime_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_range: Option<Vec<String>>,
    records: Vec<PairRecord>,
    no_smooth_member: Vec<PairKey>,
    skipped_pairs: Vec<PairKey>,
}

/// Checkpoint file: the computed record plus the configuration it was
/// computed under. Any mismatch invalidates the file.
#[derive(Serialize, Deserialize)]
struct Checkpoint {
    schema_version: u32,
    family: String,
    mode: String,
    ext_bound: u32,
    seed: u64,
    card_cap: u64,
    residue_cap: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k_range: Option<Vec<String>>,
    record: PairRecord,
}

struct ScanConfig {
    family: FamilyArg,
    mode: Mode,
    ext_bound: u32,
    card_cap: u64,
    opts: SolveOptions,
    k_range: Option<Vec<String>>,
    checkpoint_dir: Option<PathBuf>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn checkpoint_path(dir: &Path, family: FamilyArg, q: u64, r: Option<u32>) -> PathBuf {
    let name = match r {
        Some(r) => format!("{}-q{}-r{}.json", family.as_str(), q, r),
        None => format!("{}-q{}.json", family.as_str(), q),
    };
    dir.join(name)
}

impl ScanConfig {
    fn envelope_matches(&self, cp: &Checkpoint) -> bool {
        cp.schema_version == SCHEMA_VERSION
            && cp.family == self.family.as_str()
            && cp.mode == self.mode.as_str()
            && cp.ext_bound == self.ext_bound
            && cp.seed == self.opts.seed
            && cp.card_cap == self.card_cap
            && cp.residue_cap == self.opts.residue_cap
            && cp.k_range == self.k_range
    }

    fn load_checkpoint(&self, q: u64, r: Option<u32>) -> Option<PairRecord> {
        let dir = self.checkpoint_dir.as_deref()?;
        let text = fs::read_to_string(checkpoint_path(dir, self.family, q, r)).ok()?;
        // unreadable or stale files are recomputed, never fatal
        let cp: Checkpoint = serde_json::from_str(&text).ok()?;
        self.envelope_matches(&cp).then_some(cp.record)
    }

    fn store_checkpoint(&self, record: &PairRecord) -> Result<()> {
        let Some(dir) = self.checkpoint_dir.as_deref() else {
            return Ok(());
        };
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create checkpoint dir {}", dir.display()))?;
        let cp = Checkpoint {
            schema_version: SCHEMA_VERSION,
            family: self.family.as_str().to_string(),
            mode: self.mode.as_str().to_string(),
            ext_bound: self.ext_bound,
            seed: self.opts.seed,
            card_cap: self.card_cap,
            residue_cap: self.opts.residue_cap,
            k_range: self.k_range.clone(),
            record: record.clone(),
        };
        let path = checkpoint_path(dir, self.family, record.q, record.r);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&cp)?)
            .with_context(|| format!("cannot write checkpoint {}", tmp.display()))?;
        fs::rename(&tmp, &path)
            .with_context(|| format!("cannot finalize checkpoint {}", path.display()))?;
        Ok(())
    }

    fn curve_spec(&self, k: &FieldElement, r: Option<u32>) -> CurveSpec {
        match self.family {
            FamilyArg::Ck => CurveSpec::Ck { k: k.clone() },
            FamilyArg::Dk => CurveSpec::Dk { k: k.clone() },
            FamilyArg::Ckr => CurveSpec::Ckr {
                k: k.clone(),
                r: r.expect("ckr pairs carry r"),
            },
        }
    }

    /// One (q, r) work item: a verdict per k, or a skip if a cap bites.
    fn compute_pair(&self, q: u64, r: Option<u32>) -> Result<PairRecord> {
        let skip = |reason: String| PairRecord {
            q,
            r,
            skipped: Some(reason),
            verdicts: Vec::new(),
            exists_smooth: false,
        };
        let field = match load_field(&q.to_string(), self.card_cap) {
            Ok(f) => f,
            Err(e) => {
                return match e.downcast_ref::<Error>() {
                    Some(Error::CardinalityCap { .. }) => Ok(skip(format!("{e:#}"))),
                    _ => Err(e),
                }
            }
        };
        let ks: Vec<FieldElement> = match &self.k_range {
            None => field.elements().collect(),
            Some(tokens) => tokens
                .iter()
                .map(|t| {
                    FieldElement::parse(&field, t)
                        .with_context(|| format!("bad k value {t:?} over F_{q}"))
                })
                .collect::<Result<_>>()?,
        };
        let mut verdicts = Vec::with_capacity(ks.len());
        for k in &ks {
            let spec = self.curve_spec(k, r);
            let smooth = match self.verdict(&spec) {
                Ok(s) => s,
                Err(e @ (Error::CardinalityCap { .. } | Error::ResidueDegreeCap { .. })) => {
                    return Ok(skip(format!("k={k}: {e}")));
                }
                Err(e) => return Err(e.into()),
            };
            verdicts.push(KVerdict {
                k: k.to_string(),
                smooth,
            });
        }
        let exists_smooth = verdicts.iter().any(|v| v.smooth);
        Ok(PairRecord {
            q,
            r,
            skipped: None,
            verdicts,
            exists_smooth,
        })
    }

    fn verdict(&self, spec: &CurveSpec) -> std::result::Result<bool, Error> {
        let f = build_curve(spec)?;
        match self.mode {
            Mode::Fq => Ok(singular_points_up_to_capped(&f, 1, self.card_cap)?.smooth()),
            Mode::Ext => {
                Ok(singular_points_up_to_capped(&f, self.ext_bound, self.card_cap)?.smooth())
            }
            Mode::Full => {
                // a rational singular point settles it without the solver
                if !singular_points_up_to_capped(&f, 1, self.card_cap)?.smooth() {
                    return Ok(false);
                }
                is_smooth_with(&f, &self.opts)
            }
        }
    }
}

fn render_text(r: &ScanReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family: {}  mode: {}  seed: {}", r.family, r.mode, r.seed);
    for rec in &r.records {
        let label = match rec.r {
            Some(rr) => format!("q={} r={}", rec.q, rr),
            None => format!("q={}", rec.q),
        };
        if let Some(reason) = &rec.skipped {
            let _ = writeln!(s, "{label}: skipped ({reason})");
            continue;
        }
        let smooth: Vec<&str> = rec
            .verdicts
            .iter()
            .filter(|v| v.smooth)
            .map(|v| v.k.as_str())
            .collect();
        let _ = writeln!(
            s,
            "{label}: k_tested={} smooth_k=[{}] exists_smooth={}",
            rec.verdicts.len(),
            smooth.join(", "),
            rec.exists_smooth
        );
    }
    let missing: Vec<String> = r
        .no_smooth_member
        .iter()
        .map(|p| match p.r {
            Some(rr) => format!("({}, {})", rr, p.q),
            None => format!("q={}", p.q),
        })
        .collect();
    let _ = writeln!(s, "no_smooth_member: [{}]", missing.join(", "));
    s
}

pub fn run(args: &ScanArgs) -> Result<u8> {
    if args.common.format == Format::Csv {
        bail!("--format csv is only available for the goodk command");
    }
    if args.mode == Mode::Ext && args.ext_bound < 1 {
        bail!("--ext-bound must be at least 1");
    }
    if args.family != FamilyArg::Ckr && (args.r_min.is_some() || args.r_max.is_some()) {
        bail!("--r-min/--r-max apply only to --family ckr");
    }

    let k_range: Option<Vec<String>> = args.k.as_ref().map(|s| {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect()
    });
    let config = ScanConfig {
        family: args.family,
        mode: args.mode,
        ext_bound: args.ext_bound,
        card_cap: args.common.card_cap()?,
        opts: args.common.solve_options()?,
        k_range,
        checkpoint_dir: args.checkpoint_dir.clone(),
    };

    // materialize the (q, r) work list up front, sorted by (q, r)
    let mut pairs: Vec<(u64, Option<u32>)> = Vec::new();
    let mut qs = args.q.clone();
    qs.sort_unstable();
    qs.dedup();
    match args.family {
        FamilyArg::Ckr => {
            let r_min = args.r_min.unwrap_or(2);
            let r_max = args.r_max.unwrap_or(r_min);
            if r_min < 2 {
                bail!("--r-min must be at least 2");
            }
            if r_max < r_min {
                bail!("--r-max must be at least --r-min");
            }
            for &q in &qs {
                for r in r_min..=r_max {
                    if args.coprime_only && gcd(u64::from(r), q) != 1 {
                        continue;
                    }
                    pairs.push((q, Some(r)));
                }
            }
        }
        FamilyArg::Ck | FamilyArg::Dk => {
            for &q in &qs {
                pairs.push((q, None));
            }
        }
    }

    let compute_all = || -> Result<Vec<PairRecord>> {
        use rayon::prelude::*;
        let mut records: Vec<PairRecord> = pairs
            .par_iter()
            .map(|&(q, r)| match config.load_checkpoint(q, r) {
                Some(rec) => Ok(rec),
                None => {
                    let rec = config.compute_pair(q, r)?;
                    config.store_checkpoint(&rec)?;
                    Ok(rec)
                }
            })
            .collect::<Result<_>>()?;
        records.sort_by_key(|rec| (rec.q, rec.r));
        Ok(records)
    };
    let records = match args.jobs {
        Some(n) => {
            if n == 0 {
                bail!("--jobs must be at least 1");
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("cannot build worker pool")?
                .install(compute_all)?
        }
        None => compute_all()?,
    };

    for rec in records.iter().filter(|rec| rec.skipped.is_some()) {
        let label = match rec.r {
            Some(r) => format!("q={} r={}", rec.q, r),
            None => format!("q={}", rec.q),
        };
        eprintln!(
            "scan-k: skipping {label}: {}",
            rec.skipped.as_deref().unwrap_or("cap exceeded")
        );
    }

    let no_smooth_member = records
        .iter()
        .filter(|rec| rec.skipped.is_none() && !rec.exists_smooth && !rec.verdicts.is_empty())
        .map(|rec| PairKey { q: rec.q, r: rec.r })
        .collect();
    let skipped_pairs = records
        .iter()
        .filter(|rec| rec.skipped.is_some())
        .map(|rec| PairKey { q: rec.q, r: rec.r })
        .collect();
    let report = ScanReport {
        schema_version: SCHEMA_VERSION,
        family: args.family.as_str().to_string(),
        mode: args.mode.as_str().to_string(),
        ext_bound: (args.mode == Mode::Ext).then_some(args.ext_bound),
        seed: args.common.seed,
        coprime_only: args.coprime_only,
        k_range: config.k_range.clone(),
        records,
        no_smooth_member,
        skipped_pairs,
    };
    let body = match args.common.format {
        Format::Json => render_json(&report)?,
        Format::Text => render_text(&report),
        Format::Csv => unreachable!("rejected above"),
    };
    args.common.emit(&body)?;
    Ok(0)
}
