//! Front end of the `lie-sbe` binary: argument grammar, input loading and report rendering.

mod output;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use liesbe::algebra::catalog;
use liesbe::buildings::{self, BuildingParams};
use liesbe::cohomology::{cohomology_basis, Module};
use liesbe::curvature::{pansu_consistency, pinching_estimate, BlockLayout, MetricFrame};
use liesbe::deformation::{
    apply_family, contraction_limit, cornulier_reduction, h2c_certificate, lauret_certificate, modification, semicontinuity_obstruction,
    spectral_obstruction, torus_check, ScalingFamily,
};
use liesbe::heintze::{classify_hyperbolic, table2_report, Target};
use liesbe::{JacobiReport, LieLaw, Matrix, Subspace};

pub use output::to_json_string;

/// Environment variable naming an extra directory of `NAME.json` laws.
pub const CATALOG_ENV: &str = "LIE_SBE_CATALOG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lie-sbe", version, about = "Exact Lie algebra cohomology, contractions and Heintze group verdicts")]
pub struct Cli {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    /// Skip the Jacobi check when loading laws.
    #[arg(long, global = true)]
    pub skip_validate: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModuleArg {
    Trivial,
    Adjoint,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi check and structural fingerprint.
    Check { law: String },
    /// Cohomology dimensions and representatives at one degree.
    Cohomology {
        law: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "trivial")]
        module: ModuleArg,
    },
    /// Laurent expansion of a scaling family and its limit.
    Contract {
        law: String,
        /// Family JSON `{"P": [[..]], "w": [..]}`, inline or a file path.
        #[arg(long, conflicts_with = "weights")]
        family: Option<String>,
        /// Diagonal weights, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// Semicontinuity and spectral obstructions to a degeneration.
    Obstruct {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Verified contraction onto a hyperbolic model.
    Certify(CertifyArgs),
    /// Reductions `g1`, `g_inf` for a Cartan subalgebra.
    Reduce {
        law: String,
        /// 1-based basis indices (`4` or `1,3`) or a JSON list of vectors.
        #[arg(long)]
        cartan: String,
    },
    /// Modification of a law by a compactly embedded torus.
    Modify {
        law: String,
        /// JSON list of derivation matrices, inline or a file path.
        #[arg(long)]
        torus: String,
        /// JSON matrix `τ` (torus rank × dim), inline or a file path.
        #[arg(long)]
        tau: String,
    },
    /// Real or complex hyperbolic verdict.
    Classify { law: String },
    /// The grouped dimension 3 and 4 Heintze table.
    Table2,
    /// Sectional-curvature pinching of the ε-scaled frame metric.
    Pinch(PinchArgs),
    /// Chebyshev identities for Fuchsian buildings.
    Buildings(BuildingsArgs),
    /// List or dump catalog laws.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("model").required(true).args(["lauret", "h2c"])))]
pub struct CertifyArgs {
    #[arg(long)]
    pub lauret: bool,
    #[arg(long)]
    pub h2c: bool,
    pub law: String,
}

#[derive(Debug, Args)]
pub struct PinchArgs {
    /// JSON matrix, or a block layout such as `J3` or `C1:1,J1,J1`.
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Golden-section sweeps around the sampled extremes.
    #[arg(long, default_value_t = 3)]
    pub refine: usize,
    /// Also compare the trace with the pinching bound.
    #[arg(long)]
    pub pansu: bool,
}

#[derive(Debug, Args)]
pub struct BuildingsArgs {
    #[arg(long, required_unless_present = "search")]
    pub p: Option<u32>,
    #[arg(long, required_unless_present = "search")]
    pub q: Option<u32>,
    #[arg(long, required_unless_present = "search")]
    pub p2: Option<u32>,
    #[arg(long, required_unless_present = "search")]
    pub q2: Option<u32>,
    #[arg(long, default_value_t = 10)]
    pub bound: usize,
    /// Report every witness instead of the primitive ones.
    #[arg(long)]
    pub all: bool,
    /// Search all pairs up to `--p-max`, `--q-max`.
    #[arg(long)]
    pub search: bool,
    #[arg(long, default_value_t = 20)]
    pub p_max: u32,
    #[arg(long, default_value_t = 6)]
    pub q_max: u32,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Dump { name: String },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: i32,
    /// Whether `--text` was requested.
    pub as_text: bool,
}

impl Report {
    fn new<T: Serialize>(body: &T, text: String, status: i32) -> anyhow::Result<Self> {
        Ok(Report { json: serde_json::to_value(body)?, text, status, as_text: false })
    }

    pub fn render(&self) -> String {
        if self.as_text {
            self.text.clone()
        } else {
            to_json_string(&self.json)
        }
    }
}

/// Inline JSON when the argument looks like JSON, otherwise the contents of a file.
fn json_arg(s: &str) -> anyhow::Result<String> {
    let t = s.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(s.to_string())
    } else {
        fs::read_to_string(s).with_context(|| format!("reading {s}"))
    }
}

fn user_catalog_path(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CATALOG_ENV)?;
    let p = Path::new(&dir).join(format!("{name}.json"));
    p.exists().then_some(p)
}

/// Loads `catalog:NAME` (built-in, then `$LIE_SBE_CATALOG/NAME.json`) or a JSON file.
pub fn load_law(reference: &str, validate: bool) -> anyhow::Result<LieLaw> {
    let law = if let Some(name) = reference.strip_prefix("catalog:") {
        match catalog(name) {
            Ok(l) => l,
            Err(e @ liesbe::Error::UnknownCatalog(_)) => {
                let path = user_catalog_path(name).ok_or(e)?;
                parse_law_file(&path)?
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        parse_law_file(Path::new(reference))?
    };
    if validate {
        if let JacobiReport::Violation { triple, .. } = law.check_jacobi() {
            bail!(liesbe::Error::Jacobi(triple.0, triple.1, triple.2));
        }
    }
    Ok(law)
}

fn parse_law_file(path: &Path) -> anyhow::Result<LieLaw> {
    let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    LieLaw::from_json_str(&s).with_context(|| format!("parsing {}", path.display()))
}

fn parse_weights(s: &str) -> anyhow::Result<Vec<liesbe::Scalar>> {
    s.split(',').map(|x| liesbe::scalar::parse(x).map_err(Into::into)).collect()
}

fn parse_cartan(s: &str, n: usize) -> anyhow::Result<Subspace> {
    if s.trim_start().starts_with('[') {
        let m: Matrix = serde_json::from_str(s)?;
        return Ok(Subspace::span(n, &m.to_rows())?);
    }
    let mut idx = Vec::new();
    for t in s.split(',') {
        let i: usize = t.trim().parse().map_err(|_| anyhow!("bad basis index {t:?}"))?;
        if i == 0 || i > n {
            bail!("basis index {i} out of range 1..={n}");
        }
        idx.push(i - 1);
    }
    Ok(Subspace::coordinate(n, &idx))
}

fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = catalog::names().into_iter().map(String::from).collect();
    if let Some(dir) = std::env::var_os(CATALOG_ENV) {
        if let Ok(rd) = fs::read_dir(dir) {
            let mut extra: Vec<String> = rd
                .filter_map(|e| e.ok())
                .filter_map(|e| e.path().file_stem().zip(e.path().extension().map(|x| x == "json")).and_then(|(s, j)| j.then(|| s.to_string_lossy().into_owned())))
                .collect();
            extra.sort();
            names.extend(extra);
        }
    }
    names
}

/// Parses argv and runs; clap usage errors come back as `Err` with their exit code.
pub fn run<I, T>(argv: I) -> Result<Report, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let mut report = dispatch(&cli).unwrap_or_else(|e| Report {
        json: json!({ "error": format!("{e:#}") }),
        text: format!("error: {e:#}"),
        status: EXIT_ERROR,
        as_text: false,
    });
    report.as_text = cli.text;
    Ok(report)
}

pub fn dispatch(cli: &Cli) -> anyhow::Result<Report> {
    let validate = !cli.skip_validate;
    let load = |r: &str| load_law(r, validate);
    match &cli.command {
        Command::Check { law } => {
            let l = load(law)?;
            let jacobi = l.check_jacobi();
            let ok = jacobi.is_ok();
            let fp = ok.then(|| l.fingerprint());
            let text = match &fp {
                Some(f) => format!(
                    "jacobi: ok\ndim: {}\nlower central: {:?}\nderived: {:?}\ncenter: {}\nbetti: {:?}\nder/inner/outer: {}/{}/{}",
                    f.dim, f.lower_central_dims, f.derived_dims, f.center_dim, f.betti, f.der_dim, f.inner_dim, f.outer_dim
                ),
                None => format!("jacobi: {}", serde_json::to_string(&jacobi)?),
            };
            Report::new(&json!({ "jacobi": jacobi, "fingerprint": fp }), text, if ok { EXIT_OK } else { EXIT_NO })
        }
        Command::Cohomology { law, degree, module } => {
            let l = load(law)?;
            if *degree > l.dim() {
                bail!("degree {degree} exceeds dimension {}", l.dim());
            }
            let m = match module {
                ModuleArg::Trivial => Module::Trivial,
                ModuleArg::Adjoint => Module::Adjoint,
            };
            let r = cohomology_basis(&l, *degree, m);
            let text = format!("H^{}({:?}): dim Z = {}, dim B = {}, dim H = {}", r.degree, r.module, r.dim_z, r.dim_b, r.dim_h);
            Report::new(&r, text, EXIT_OK)
        }
        Command::Contract { law, family, weights } => {
            let l = load(law)?;
            let f: ScalingFamily = match (family, weights) {
                (Some(s), _) => serde_json::from_str(&json_arg(s)?)?,
                (None, Some(w)) => ScalingFamily::diagonal(parse_weights(w)?),
                (None, None) => bail!("give --family or --weights"),
            };
            let laurent = apply_family(&l, &f)?;
            let limit = contraction_limit(&laurent);
            let (limit_json, text, status) = match &limit {
                Ok(lim) => (serde_json::to_value(lim)?, format!("family:\n{laurent}\nlimit: {lim}"), EXIT_OK),
                Err(e) => (Value::Null, format!("family:\n{laurent}\n{e}"), EXIT_NO),
            };
            let err = limit.as_ref().err().map(ToString::to_string);
            Report::new(&json!({ "family": f, "laurent": laurent, "limit": limit_json, "error": err }), text, status)
        }
        Command::Obstruct { source, target } => {
            let (g, h) = (load(source)?, load(target)?);
            let semi = semicontinuity_obstruction(&g, &h)?;
            let spec = spectral_obstruction(&g, &h);
            let mut text = String::new();
            for r in &semi.rows {
                text.push_str(&format!("{}: {} → {}{}\n", r.invariant, r.source, r.target, if r.violated { "  (violated)" } else { "" }));
            }
            text.push_str(&format!("semicontinuity: {:?}\nspectral: {}", semi.verdict, serde_json::to_string(&spec)?));
            Report::new(&json!({ "semicontinuity": semi, "spectral": spec }), text, EXIT_OK)
        }
        Command::Certify(args) => {
            let l = load(&args.law)?;
            let cert = if args.lauret { lauret_certificate(&l)? } else { h2c_certificate(&l)? };
            let text = match &cert {
                liesbe::deformation::Certificate::Yes { n, limit, quotient_diagonalizable, .. } => {
                    let mut t = format!("yes\nlimit: {limit}");
                    if let Some(n) = n {
                        t.push_str(&format!("\nn: {n}"));
                    }
                    if let Some(d) = quotient_diagonalizable {
                        t.push_str(&format!("\nquotient diagonalizable: {d}"));
                    }
                    t
                }
                liesbe::deformation::Certificate::No { reason } => format!("no: {reason}"),
            };
            let status = if cert.is_yes() { EXIT_OK } else { EXIT_NO };
            Report::new(&cert, text, status)
        }
        Command::Reduce { law, cartan } => {
            let l = load(law)?;
            let h = parse_cartan(cartan, l.dim())?;
            let r = cornulier_reduction(&l, &h)?;
            let text = format!("g1: {}\ng_inf: {}\nfamily: {}\nnote: {}", r.g1, r.g_inf, if r.family.is_some() { "yes" } else { "no" }, r.note);
            Report::new(&r, text, EXIT_OK)
        }
        Command::Modify { law, torus, tau } => {
            let l = load(law)?;
            let ds: Vec<Matrix> = serde_json::from_str(&json_arg(torus)?)?;
            let tau: Matrix = serde_json::from_str(&json_arg(tau)?)?;
            let t = torus_check(&l, &ds)?;
            let m = modification(&l, &t, &tau)?;
            let text = format!("law: {}\ntwisting: {}", m.law, m.is_twisting);
            Report::new(&m, text, EXIT_OK)
        }
        Command::Classify { law } => {
            let v = classify_hyperbolic(&load(law)?)?;
            let text = format!("{}\n{}", v.target.label(), v.evidence.iter().map(|e| format!("  - {e}")).collect::<Vec<_>>().join("\n"));
            let status = if v.target == Target::None { EXIT_NO } else { EXIT_OK };
            Report::new(&v, text, status)
        }
        Command::Table2 => {
            let t = table2_report()?;
            let mut text = String::new();
            for g in &t.groups {
                let rows: Vec<String> = g.rows.iter().map(|&i| format!("{} {}", t.rows[i].nilradical, t.rows[i].jordan)).collect();
                text.push_str(&format!("{}: {}\n", g.verdict, rows.join("; ")));
            }
            text.push_str(&format!(
                "dashed pair {} {} vs {} {}: {}",
                t.dashed.left.nilradical, t.dashed.left.jordan, t.dashed.right.nilradical, t.dashed.right.jordan, t.dashed.status
            ));
            Report::new(&t, text, EXIT_OK)
        }
        Command::Pinch(a) => {
            let frame = if a.alpha.trim_start().starts_with('[') {
                MetricFrame::from_matrix(&serde_json::from_str::<Matrix>(&a.alpha)?, a.eps)?
            } else {
                MetricFrame::new(a.alpha.parse::<BlockLayout>()?, a.eps)?
            };
            if a.pansu {
                let p = pansu_consistency(&frame, a.samples, a.refine, a.seed);
                let text = format!("trace {} ≤ {} · {} = {}: {}", p.trace, p.dim, p.b_est, p.bound, p.holds);
                Report::new(&p, text, if p.holds { EXIT_OK } else { EXIT_NO })
            } else {
                let r = pinching_estimate(&frame, a.samples, a.refine, a.seed);
                let text = format!("layout {} ε = {}: sec ∈ [{}, {}], ratio {}", r.layout, r.eps, r.min, r.max, r.ratio);
                Report::new(&r, text, EXIT_OK)
            }
        }
        Command::Buildings(a) => {
            if a.search {
                let hits = buildings::equal_cdim_search(a.p_max, a.q_max, a.bound)?;
                let text = hits
                    .iter()
                    .map(|h| format!("({},{}) ~ ({},{}): {:?}", h.first.p, h.first.q, h.second.p, h.second.q, h.witnesses.iter().map(|w| (w.m, w.n)).collect::<Vec<_>>()))
                    .collect::<Vec<_>>()
                    .join("\n");
                return Report::new(&hits, text, EXIT_OK);
            }
            let get = |x: Option<u32>, name: &str| x.ok_or_else(|| anyhow!("--{name} is required"));
            let b1 = BuildingParams::new(get(a.p, "p")?, get(a.q, "q")?)?;
            let b2 = BuildingParams::new(get(a.p2, "p2")?, get(a.q2, "q2")?)?;
            let w = if a.all { buildings::tyson_identities_all(b1, b2, a.bound)? } else { buildings::tyson_identities(b1, b2, a.bound)? };
            let (c1, c2) = (buildings::building_cdim(b1), buildings::building_cdim(b2));
            let pairs: Vec<(usize, usize)> = w.iter().map(|w| (w.m, w.n)).collect();
            let text = if pairs.is_empty() {
                format!("no witness up to bound {}\ncdim {} vs {}", a.bound, c1.cdim, c2.cdim)
            } else {
                format!("witnesses (M,N): {pairs:?}\ncdim {} vs {}", c1.cdim, c2.cdim)
            };
            Report::new(&json!({ "first": c1, "second": c2, "bound": a.bound, "witnesses": w }), text, EXIT_OK)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let names = catalog_names();
                Report::new(&names, names.join("\n"), EXIT_OK)
            }
            CatalogAction::Dump { name } => {
                let l = load(&format!("catalog:{name}"))?;
                Report::new(&l, l.to_json_string(), EXIT_OK)
            }
        },
    }
}
