//! `conic`: exact face and intersection lattices, Monte Carlo intrinsic
//! volumes, and identity checks from the command line.
//!
//! Exit codes: 0 success or every check passed, 1 a verification failed,
//! 2 bad input or usage.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use conic_core::arrangement::{
    expected_statdim_family, family_level_char, intersection_lattice, regions_j, Arrangement, Family, FamilySpec,
};
use conic_core::exactlin::rational::format_rational;
use conic_core::identities::{self as id, VerificationReport};
use conic_core::volumes::{estimate_iv, exact_iv, SampleConfig};
use conic_core::{Cone, ConicError};

const FAMILY_HELP: &str = "\
Family specs (--family):
  braid:D                 x_i = x_j in R^D
  bc:D                    x_i = +-x_j and x_i = 0 in R^D
  d:D                     x_i = +-x_j in R^D
  generic:n=N,d=D[,seed=S] N random hyperplanes in general position

Cone files hold {\"d\", \"inequalities\", \"equalities\"} (the cone
{x : <a, x> <= 0, <e, x> = 0}) or {\"d\", \"generators\", \"lineality\"}.
Arrangement files hold {\"d\", \"normals\"}. Entries are integers or \"p/q\".";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "conic", version, about = "Polyhedral cones, hyperplane arrangements and their conic identities")]
#[command(after_help = FAMILY_HELP)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Args)]
struct Options {
    /// Monte Carlo samples per estimate
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker substreams; results depend on this, not on the machine
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, default_value_t = 4.0)]
    tolerance_sigmas: f64,
    /// Random rotations for the kinematic and Crofton checks
    #[arg(long, global = true, default_value_t = id::DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Named arrangement family instead of a file, e.g. braid:4
    #[arg(long, global = true)]
    family: Option<String>,
    /// Write the output here instead of standard output
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Both representations, f-vector and face lattice of a cone
    ConeInfo { file: PathBuf },
    /// Intrinsic volumes: Monte Carlo estimate, plus the exact vector when recognized
    ConeIv { file: PathBuf },
    /// The polar cone
    ConePolar { file: PathBuf },
    /// Characteristic polynomial and every level polynomial
    ArrChi { file: Option<PathBuf> },
    /// Region counts by dimension, optionally listing the regions of one level
    ArrRegions {
        file: Option<PathBuf>,
        #[arg(long)]
        level: Option<usize>,
    },
    /// A named family: its hyperplanes and closed-form level polynomials
    ArrFamily,
    /// Run one identity check
    Verify(VerifyArgs),
    /// Every identity over the bundled library, Bonferroni-graded
    Suite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Identity {
    Euler,
    Sommerville,
    GeneralizedSommerville,
    FaceAlternation,
    GaussBonnet,
    StatdimAlternation,
    GenfunAlternation,
    SteinerMgf,
    McmullenInverse,
    Kinematic,
    PolarKinematic,
    Crofton,
    Zaslavsky,
    FamilyLevelChar,
    GenericLevelChar,
    KlivansSwartz,
    HugSchneider,
    FamilyStatdim,
    FiniteDoubleCount,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    identity: Identity,
    /// Cone or arrangement file
    target: Option<PathBuf>,
    /// Second cone for kinematic, polar-kinematic and crofton
    #[arg(long)]
    with: Option<PathBuf>,
    /// Intrinsic-volume index for face-alternation and the kinematic checks
    #[arg(short, long, default_value_t = 0)]
    k: usize,
    /// Region level for klivans-swartz and family-statdim
    #[arg(short, long)]
    j: Option<usize>,
    /// Generating-function or Steiner parameters, comma separated
    #[arg(short, long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    /// Lattice index of the face G for generalized-sommerville
    #[arg(long, default_value_t = 0)]
    face: usize,
    /// Hyperplanes for hug-schneider
    #[arg(short, long, default_value_t = 4)]
    n: usize,
    /// Dimension for hug-schneider
    #[arg(short, long, default_value_t = 3)]
    d: usize,
    /// Ground-set size for finite-double-count (cyclic group)
    #[arg(long, default_value_t = 4)]
    omega: usize,
    #[arg(long, value_delimiter = ',')]
    set_m: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    set_n: Vec<usize>,
}

/// Parses `args` (program name first), runs the verb and writes the result
/// to `out` or to `-o`. Diagnostics go to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, pass)) => {
            let written = match &cli.opts.output {
                Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io { path: path.clone(), source }),
                None => out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
            };
            match written {
                Ok(()) => i32::from(!pass),
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_cone(path: &Path) -> Result<Cone> {
    Ok(Cone::from_json_str(&read(path)?)?)
}

fn family_spec(opts: &Options) -> Result<FamilySpec> {
    let s = opts.family.as_deref().ok_or_else(|| CliError::Usage("--family is required".into()))?;
    Ok(s.parse()?)
}

fn load_arrangement(file: Option<&Path>, opts: &Options) -> Result<(Arrangement, String)> {
    match (file, &opts.family) {
        (Some(_), Some(_)) => Err(CliError::Usage("give an arrangement file or --family, not both".into())),
        (Some(p), None) => Ok((Arrangement::from_json_str(&read(p)?)?, p.display().to_string())),
        (None, Some(_)) => {
            let spec = family_spec(opts)?;
            Ok((spec.materialize()?, spec.to_string()))
        }
        (None, None) => Err(CliError::Usage("an arrangement file or --family is required".into())),
    }
}

fn sample_config(opts: &Options) -> Result<SampleConfig> {
    let cfg = SampleConfig {
        n_samples: opts.samples,
        seed: opts.seed,
        workers: opts.workers,
        tolerance_sigmas: opts.tolerance_sigmas,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("valid JSON") + "\n",
        Format::Table => {
            let mut s = String::new();
            if let Value::Object(map) = value {
                let width = map.keys().map(String::len).max().unwrap_or(0);
                for (k, v) in map {
                    s.push_str(&format!("{k:<width$}  {v}\n"));
                }
            } else {
                s.push_str(&format!("{value}\n"));
            }
            s
        }
    }
}

fn render_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => render(&r.to_json(), format),
        Format::Table => r.to_table(),
    }
}

fn dispatch(cli: &Cli) -> Result<(String, bool)> {
    let opts = &cli.opts;
    let f = opts.format;
    let value = match &cli.verb {
        Verb::ConeInfo { file } => cone_info(&load_cone(file)?),
        Verb::ConeIv { file } => {
            let c = load_cone(file)?;
            let est = estimate_iv(&c, &sample_config(opts)?)?;
            let mut v = est.to_json();
            v["exact"] = serde_json::to_value(exact_iv(&c)).map_err(ConicError::from)?;
            v
        }
        Verb::ConePolar { file } => load_cone(file)?.polar().to_json(),
        Verb::ArrChi { file } => arr_chi(file.as_deref(), opts)?,
        Verb::ArrRegions { file, level } => arr_regions(file.as_deref(), *level, opts)?,
        Verb::ArrFamily => arr_family(opts)?,
        Verb::Verify(args) => {
            let r = verify(args, opts)?;
            return Ok((render_report(&r, f), r.passed()));
        }
        Verb::Suite => {
            let s = id::run_suite(&sample_config(opts)?, opts.trials)?;
            let text = match f {
                Format::Json => render(&serde_json::to_value(&s).map_err(ConicError::from)?, f),
                Format::Table => format!(
                    "{}{} statistical checks graded at {:.4} sigmas, family-wise error bound {:.4}\n",
                    id::reports_to_table(&s.reports),
                    s.statistical_checks,
                    s.tolerance_sigmas,
                    s.family_wise_bound
                ),
            };
            return Ok((text, s.passed()));
        }
    };
    Ok((render(&value, f), true))
}

fn cone_info(c: &Cone) -> Value {
    let lat = c.face_lattice();
    let faces: Vec<Value> = lat
        .faces
        .iter()
        .map(|face| json!({ "dim": face.dim, "rays": face.rays, "facets": face.active }))
        .collect();
    json!({
        "cone": c.to_json(),
        "pointed": c.is_pointed(),
        "subspace": c.is_subspace(),
        "f_vector": lat.f_vector,
        "euler_sum": lat.euler_sum(),
        "faces": faces,
    })
}

fn arr_chi(file: Option<&Path>, opts: &Options) -> Result<Value> {
    let (a, name) = load_arrangement(file, opts)?;
    let lat = intersection_lattice(&a);
    let levels = (0..=a.d())
        .map(|j| Ok(json!({ "j": j, "coefficients": lat.level_char_poly(j)?.to_json(), "flats": lat.ell(j) })))
        .collect::<std::result::Result<Vec<Value>, ConicError>>()?;
    Ok(json!({
        "arrangement": name,
        "d": a.d(),
        "n": a.len(),
        "coefficients": lat.char_poly().to_json(),
        "levels": levels,
    }))
}

fn arr_regions(file: Option<&Path>, level: Option<usize>, opts: &Options) -> Result<Value> {
    let (a, name) = load_arrangement(file, opts)?;
    let mut v = json!({ "arrangement": name, "d": a.d(), "n": a.len() });
    match level {
        Some(j) => {
            let regions = regions_j(&a, j)?;
            v["level"] = json!(j);
            v["count"] = json!(regions.len());
            v["regions"] = regions
                .iter()
                .map(|r| json!({ "sign_vector": r.sign_vector, "cone": r.cone.to_v_json() }))
                .collect();
        }
        None => {
            let counts = (0..=a.d()).map(|j| regions_j(&a, j).map(|r| r.len())).collect::<conic_core::Result<Vec<_>>>()?;
            v["counts"] = json!(counts);
        }
    }
    Ok(v)
}

fn arr_family(opts: &Options) -> Result<Value> {
    let spec = family_spec(opts)?;
    let a = spec.materialize()?;
    let mut v = json!({ "family": spec.to_string(), "arrangement": a.to_json() });
    if !matches!(spec.family, Family::Generic { .. }) {
        let closed = (0..=spec.d)
            .map(|j| family_level_char(&spec.family, spec.d, j).map(|p| p.to_json()))
            .collect::<conic_core::Result<Vec<_>>>()?;
        v["level_polynomials"] = json!(closed);
    }
    if matches!(spec.family, Family::Braid | Family::BC) && spec.d >= 2 {
        let j = spec.d - 1;
        v["mean_statdim_level"] = json!(j);
        v["mean_statdim"] = json!(format_rational(&expected_statdim_family(&spec.family, j)?));
    }
    Ok(v)
}

fn need_target(args: &VerifyArgs) -> Result<&Path> {
    args.target.as_deref().ok_or_else(|| CliError::Usage("this identity needs a target file".into()))
}

fn verify(args: &VerifyArgs, opts: &Options) -> Result<VerificationReport> {
    use Identity::*;
    let cfg = sample_config(opts)?;
    let cone = || load_cone(need_target(args)?);
    let other = || -> Result<Cone> {
        let p = args.with.as_deref().ok_or_else(|| CliError::Usage("--with <FILE> is required".into()))?;
        load_cone(p)
    };
    let arrangement = || load_arrangement(args.target.as_deref(), opts).map(|(a, _)| a);
    let inner = cfg.with_samples(cfg.n_samples.min(id::DEFAULT_INNER_SAMPLES));
    let r = match args.identity {
        Euler => id::verify_euler(&cone()?),
        Sommerville => id::verify_sommerville(&cone()?, &cfg)?,
        GeneralizedSommerville => {
            let c = cone()?;
            let lat = c.face_lattice();
            let g = lat
                .faces
                .get(args.face)
                .ok_or_else(|| CliError::Usage(format!("face {} out of range ({} faces)", args.face, lat.faces.len())))?;
            id::verify_generalized_sommerville(&c, g, &cfg)?
        }
        FaceAlternation => id::verify_face_alternation(&cone()?, args.k, &cfg)?,
        GaussBonnet => id::verify_gauss_bonnet(&cone()?, &cfg)?,
        StatdimAlternation => id::verify_statdim_alternation(&cone()?, &cfg)?,
        GenfunAlternation => {
            let t = args.t.first().copied().unwrap_or(id::DEFAULT_GENFUN_GRID[0]);
            id::verify_genfun_alternation(&cone()?, t, &cfg)?
        }
        SteinerMgf => {
            let grid = if args.t.is_empty() { id::STEINER_GRID.to_vec() } else { args.t.clone() };
            id::verify_steiner_mgf(&cone()?, &grid, &cfg)?
        }
        McmullenInverse => id::verify_mcmullen_inverse(&cone()?, &cfg)?,
        Kinematic => id::verify_kinematic(&cone()?, &other()?, args.k, opts.trials, &inner)?,
        PolarKinematic => id::verify_polar_kinematic(&cone()?, &other()?, args.k, opts.trials, &inner)?,
        Crofton => id::verify_crofton_probability(&cone()?, &other()?, opts.trials, &cfg)?,
        Zaslavsky => id::verify_zaslavsky(&arrangement()?)?,
        FamilyLevelChar => id::verify_family_level_char(&family_spec(opts)?)?,
        GenericLevelChar => id::verify_generic_level_char(&arrangement()?)?,
        KlivansSwartz => {
            let a = arrangement()?;
            id::verify_klivans_swartz(&a, args.j.unwrap_or(a.d()), &cfg)?
        }
        HugSchneider => id::verify_hug_schneider(args.n, args.d, &cfg)?,
        FamilyStatdim => {
            let spec = family_spec(opts)?;
            let j = args.j.unwrap_or(spec.d.saturating_sub(1));
            id::verify_family_statdim(&spec.family, j, &cfg)?
        }
        FiniteDoubleCount => {
            id::verify_finite_double_count(args.omega, &args.set_m, &args.set_n, &id::cyclic_group(args.omega))?
        }
    };
    Ok(r)
}
