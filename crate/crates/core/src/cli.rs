//! The `wreath` command line.
//!
//! Every command renders into an [`Outcome`] so it can be driven in-process.
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.
//! Input paths that do not exist but name a bundled fixture
//! (`heisenberg.alg`, `affine-line.ext`, ...) load the bundled copy.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::actions::{bernoulli_t, fundamental_action, verify_formal_action, FormalAction};
use crate::algebra::LieAlgebra;
use crate::display::{linear_combination, series_lines};
use crate::error::Error;
use crate::extensions::{verify_kk, Extension, KkEmbedding, Section};
use crate::format::{
    fixtures, load_algebra, load_extension, parse_element, parse_series, vector_record,
    AlgebraFile, InputError, LoadError, RationalText, SeriesRecord,
};
use crate::linalg::Vector;
use crate::poly::FormalSeries;
use crate::rational::format_rational;
use crate::wreath::{WreathElement, WreathProduct};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "wreath",
    version,
    about = "Exact wreath products and Kaloujnine-Krasner embeddings of Lie algebras"
)]
pub struct Cli {
    /// Output format; `structured` emits versioned JSON.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra file (antisymmetry and Jacobi).
    Check { path: PathBuf },
    /// Print t_0..t_n of T e^T / (e^T - 1).
    Bernoulli { n: usize },
    /// Print the fundamental action d_b of an element b.
    FundamentalAction {
        algebra: PathBuf,
        /// Coordinates of b, as "c1,c2,...".
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(short = 'N', long, default_value_t = 3)]
        degree: usize,
    },
    /// Bracket two elements (a, b), (a', b') of W(A, B).
    WreathBracket {
        a: PathBuf,
        b: PathBuf,
        /// B-coordinates of the two elements; give the flag twice.
        #[arg(long, allow_hyphen_values = true, num_args = 1)]
        element: Vec<String>,
        /// Series literals for the A[[Y]] parts; give the flag twice or omit for zero.
        #[arg(long, allow_hyphen_values = true, num_args = 1)]
        series: Vec<String>,
        #[arg(short = 'N', long, default_value_t = 3)]
        degree: usize,
    },
    /// Print D_a + d_b on A x B for an element (a, b), with D and d fundamental.
    TriangularAction {
        a: PathBuf,
        b: PathBuf,
        /// B-coordinates of the element.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Series literal for the A[[Y]] part; zero when omitted.
        #[arg(long, allow_hyphen_values = true)]
        series: Option<String>,
        #[arg(short = 'N', long, default_value_t = 3)]
        degree: usize,
    },
    /// Print the Kaloujnine-Krasner image (h_c, p(c)) of c.
    KkEmbed {
        extension: PathBuf,
        /// C-coordinates of c.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(short = 'N', long, default_value_t = 3)]
        degree: usize,
    },
    /// Check that the fundamental action is a homomorphism through degree N.
    VerifyFundamental {
        /// Algebra files; the bundled ones when omitted.
        paths: Vec<PathBuf>,
        #[arg(short = 'N', long, default_value_t = 4)]
        degree: usize,
    },
    /// Check the Kaloujnine-Krasner embedding at order N.
    VerifyKk {
        /// Extension files; the bundled ones when omitted.
        paths: Vec<PathBuf>,
        #[arg(short = 'N', long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every verification on the given files (.alg and .ext), or on the bundled ones.
    VerifyAll {
        paths: Vec<PathBuf>,
        #[arg(short = 'N', long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Rendered result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome {
            code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure(e.0)
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text, true)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    let result = match &cli.command {
        Command::Check { path } => cmd_check(path, fmt),
        Command::Bernoulli { n } => Ok(cmd_bernoulli(*n, fmt)),
        Command::FundamentalAction {
            algebra,
            element,
            degree,
        } => cmd_fundamental_action(algebra, element, *degree, fmt),
        Command::WreathBracket {
            a,
            b,
            element,
            series,
            degree,
        } => cmd_wreath_bracket(a, b, element, series, *degree, fmt),
        Command::TriangularAction {
            a,
            b,
            element,
            series,
            degree,
        } => cmd_triangular_action(a, b, element, series.as_deref(), *degree, fmt),
        Command::KkEmbed {
            extension,
            element,
            degree,
        } => cmd_kk_embed(extension, element, *degree, fmt),
        Command::VerifyFundamental { paths, degree } => cmd_verify_fundamental(paths, *degree, fmt),
        Command::VerifyKk {
            paths,
            degree,
            trials,
            seed,
        } => cmd_verify_kk(paths, *degree, *trials, *seed, fmt),
        Command::VerifyAll {
            paths,
            degree,
            trials,
            seed,
        } => cmd_verify_all(paths, *degree, *trials, *seed, fmt),
    };
    result.unwrap_or_else(|Failure(msg)| Outcome::usage(msg))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn lines(ls: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for l in ls {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

/// Reads a file, falling back to the bundled fixture of the same name.
fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) => {
            let name = path
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or_default();
            fixtures::ALGEBRAS
                .iter()
                .chain(fixtures::EXTENSIONS.iter())
                .find(|(n, _)| *n == name && path.parent().is_none_or(|p| p.as_os_str().is_empty()))
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| Failure(format!("cannot read {}: {e}", path.display())))
        }
    }
}

fn with_path<E: std::fmt::Display>(path: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure(format!("{}: {e}", path.display()))
}

fn read_algebra(path: &Path) -> std::result::Result<LieAlgebra, Failure> {
    load_algebra(&read_input(path)?).map_err(with_path(path))
}

fn read_extension(path: &Path) -> std::result::Result<(Extension, Section), Failure> {
    load_extension(&read_input(path)?).map_err(with_path(path))
}

fn texts(v: &Vector) -> Vec<RationalText> {
    vector_record(v)
}

fn cmd_check(path: &Path, fmt: OutputFormat) -> CmdResult {
    let text = read_input(path)?;
    let alg = AlgebraFile::parse(&text)
        .and_then(|f| f.to_unchecked())
        .map_err(with_path(path))?;
    let report = alg.check();
    let violations = report.describe(&alg);
    let out = match fmt {
        OutputFormat::Text => {
            let mut ls = vec![if violations.is_empty() {
                format!(
                    "{}: valid Lie algebra of dimension {}",
                    alg.name(),
                    alg.dim()
                )
            } else {
                let n = violations.len();
                format!(
                    "{}: not a Lie algebra ({n} violation{})",
                    alg.name(),
                    if n == 1 { "" } else { "s" }
                )
            }];
            ls.extend(violations.iter().map(|v| format!("  {v}")));
            lines(ls)
        }
        OutputFormat::Structured => json(&CheckRecord {
            schema_version: SCHEMA_VERSION,
            command: "check".into(),
            algebra: alg.name().to_string(),
            dim: alg.dim(),
            valid: violations.is_empty(),
            violations: violations.clone(),
        }),
    };
    Ok(Outcome::ok(out, violations.is_empty()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub schema_version: u32,
    pub command: String,
    pub algebra: String,
    pub dim: usize,
    pub valid: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BernoulliRecord {
    pub schema_version: u32,
    pub command: String,
    pub n: usize,
    pub coefficients: Vec<RationalText>,
}

fn cmd_bernoulli(n: usize, fmt: OutputFormat) -> Outcome {
    let t = bernoulli_t(n);
    let out = match fmt {
        OutputFormat::Text => lines(
            t.as_slice()
                .iter()
                .enumerate()
                .map(|(i, c)| format!("t_{i} = {}", format_rational(c))),
        ),
        OutputFormat::Structured => json(&BernoulliRecord {
            schema_version: SCHEMA_VERSION,
            command: "bernoulli".into(),
            n,
            coefficients: t.as_slice().iter().cloned().map(RationalText).collect(),
        }),
    };
    Outcome::ok(out, true)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FundamentalActionRecord {
    pub schema_version: u32,
    pub command: String,
    pub algebra: String,
    pub element: Vec<RationalText>,
    pub degree: usize,
    pub series: SeriesRecord,
}

fn cmd_fundamental_action(path: &Path, element: &str, n: usize, fmt: OutputFormat) -> CmdResult {
    let alg = read_algebra(path)?;
    let b = parse_element(element, alg.dim())?;
    let d = fundamental_action(&alg, &b, n)?;
    let out = match fmt {
        OutputFormat::Text => lines(series_lines(&d, "d", "y", alg.labels())),
        OutputFormat::Structured => json(&FundamentalActionRecord {
            schema_version: SCHEMA_VERSION,
            command: "fundamental-action".into(),
            algebra: alg.name().to_string(),
            element: texts(&b),
            degree: n,
            series: SeriesRecord::from_series(&d),
        }),
    };
    Ok(Outcome::ok(out, true))
}

/// An element `(a, b)` of a wreath product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub series: SeriesRecord,
    pub point: Vec<RationalText>,
}

impl ElementRecord {
    pub fn from_element(w: &WreathElement) -> Self {
        ElementRecord {
            series: SeriesRecord::from_series(&w.series),
            point: texts(&w.point),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WreathBracketRecord {
    pub schema_version: u32,
    pub command: String,
    pub a: String,
    pub b: String,
    pub degree: usize,
    pub left: ElementRecord,
    pub right: ElementRecord,
    pub bracket: ElementRecord,
}

fn wreath_element(
    w: &WreathProduct,
    series: Option<&str>,
    point: &str,
    n: usize,
) -> std::result::Result<WreathElement, Failure> {
    let s = match series {
        Some(lit) => parse_series(lit, w.y_dim(), w.a().dim(), n)?,
        None => FormalSeries::zero(w.y_dim(), w.a().dim(), n),
    };
    Ok(w.element(s, parse_element(point, w.b().dim())?)?)
}

fn element_lines(w: &WreathElement, a: &LieAlgebra) -> Vec<String> {
    let mut ls = series_lines(&w.series, "a", "y", a.labels());
    ls.push(format!("point = {}", w.point));
    ls
}

fn cmd_wreath_bracket(
    a_path: &Path,
    b_path: &Path,
    elements: &[String],
    series: &[String],
    n: usize,
    fmt: OutputFormat,
) -> CmdResult {
    if elements.len() != 2 {
        return Err(Failure(format!(
            "wreath-bracket needs --element twice, got {}",
            elements.len()
        )));
    }
    if !series.is_empty() && series.len() != 2 {
        return Err(Failure(format!(
            "wreath-bracket needs --series twice or not at all, got {}",
            series.len()
        )));
    }
    let (a, b) = (read_algebra(a_path)?, read_algebra(b_path)?);
    let w = WreathProduct::fundamental(a, b, n)?;
    let lit = |i: usize| series.get(i).map(String::as_str);
    let x = wreath_element(&w, lit(0), &elements[0], n)?;
    let y = wreath_element(&w, lit(1), &elements[1], n)?;
    let br = w.bracket(&x, &y)?;
    let out = match fmt {
        OutputFormat::Text => lines(element_lines(&br, w.a())),
        OutputFormat::Structured => json(&WreathBracketRecord {
            schema_version: SCHEMA_VERSION,
            command: "wreath-bracket".into(),
            a: w.a().name().to_string(),
            b: w.b().name().to_string(),
            degree: n,
            left: ElementRecord::from_element(&x),
            right: ElementRecord::from_element(&y),
            bracket: ElementRecord::from_element(&br),
        }),
    };
    Ok(Outcome::ok(out, true))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TriangularActionRecord {
    pub schema_version: u32,
    pub command: String,
    pub a: String,
    pub b: String,
    pub degree: usize,
    pub element: ElementRecord,
    pub series: SeriesRecord,
}

/// `∂/∂z_i` direction labels for the `Z = A × B` coordinates.
fn z_directions(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("d/dz{i}")).collect()
}

fn cmd_triangular_action(
    a_path: &Path,
    b_path: &Path,
    element: &str,
    series: Option<&str>,
    n: usize,
    fmt: OutputFormat,
) -> CmdResult {
    let (a, b) = (read_algebra(a_path)?, read_algebra(b_path)?);
    let d_a = FormalAction::fundamental(&a, n)?;
    let w = WreathProduct::fundamental(a, b, n)?;
    let el = wreath_element(&w, series, element, n)?;
    let delta = w.triangular_action(&d_a, &el)?;
    let out = match fmt {
        OutputFormat::Text => lines(series_lines(
            &delta,
            "Delta",
            "z",
            &z_directions(delta.tgt_dim()),
        )),
        OutputFormat::Structured => json(&TriangularActionRecord {
            schema_version: SCHEMA_VERSION,
            command: "triangular-action".into(),
            a: w.a().name().to_string(),
            b: w.b().name().to_string(),
            degree: n,
            element: ElementRecord::from_element(&el),
            series: SeriesRecord::from_series(&delta),
        }),
    };
    Ok(Outcome::ok(out, true))
}

/// Structured output of `kk-embed`; parsing and re-serializing it is byte-identical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KkEmbedRecord {
    pub schema_version: u32,
    pub command: String,
    pub extension: String,
    pub element: Vec<RationalText>,
    pub degree: usize,
    pub image: ElementRecord,
}

impl KkEmbedRecord {
    pub fn to_json(&self) -> String {
        json(self)
    }
}

fn cmd_kk_embed(path: &Path, element: &str, n: usize, fmt: OutputFormat) -> CmdResult {
    let (ext, s) = read_extension(path)?;
    let c = parse_element(element, ext.c().dim())?;
    let image = KkEmbedding::new(&ext, &s, n)?.embed(&c, n)?;
    let out = match fmt {
        OutputFormat::Text => {
            let mut ls = series_lines(&image.series, "h", "y", ext.a().labels());
            ls.push(format!("point = {}", image.point));
            lines(ls)
        }
        OutputFormat::Structured => KkEmbedRecord {
            schema_version: SCHEMA_VERSION,
            command: "kk-embed".into(),
            extension: ext.c().name().to_string(),
            element: texts(&c),
            degree: n,
            image: ElementRecord::from_element(&image),
        }
        .to_json(),
    };
    Ok(Outcome::ok(out, true))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PairRecord {
    pub left: String,
    pub right: String,
    pub mismatched_degrees: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FundamentalVerification {
    pub algebra: String,
    pub check_degree: usize,
    pub passed: bool,
    pub first_failing_degree: Option<usize>,
    pub pairs: Vec<PairRecord>,
}

fn verify_fundamental_one(
    alg: &LieAlgebra,
    n: usize,
) -> std::result::Result<FundamentalVerification, Failure> {
    let action = FormalAction::fundamental(alg, n + 1)?;
    let report = verify_formal_action(&action, n)?;
    Ok(FundamentalVerification {
        algebra: alg.name().to_string(),
        check_degree: n,
        passed: report.passed(),
        first_failing_degree: report.first_failing_degree(),
        pairs: report
            .pairs
            .iter()
            .map(|p| PairRecord {
                left: alg.labels()[p.i].clone(),
                right: alg.labels()[p.j].clone(),
                mismatched_degrees: p.mismatched_degrees.clone(),
            })
            .collect(),
    })
}

fn fundamental_text(v: &FundamentalVerification) -> Vec<String> {
    let mut ls = vec![format!(
        "{}: fundamental action homomorphism through degree {}: {}",
        v.algebra,
        v.check_degree,
        pass(v.passed)
    )];
    for p in v.pairs.iter().filter(|p| !p.mismatched_degrees.is_empty()) {
        let ds: Vec<String> = p.mismatched_degrees.iter().map(usize::to_string).collect();
        ls.push(format!(
            "  [{}, {}] differs at degrees {}",
            p.left,
            p.right,
            ds.join(", ")
        ));
    }
    ls
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct KkPairRecord {
    pub left: Vec<RationalText>,
    pub right: Vec<RationalText>,
    pub mismatched_degrees: Vec<usize>,
    pub point_matches: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct KkVerification {
    pub extension: String,
    pub ideal_dim: usize,
    pub order: usize,
    pub checked_through: usize,
    pub pairs_checked: usize,
    pub homomorphism_passed: bool,
    pub failing_pairs: Vec<KkPairRecord>,
    pub injectivity_rank: usize,
    pub dim_c: usize,
    pub injectivity_passed: bool,
}

fn verify_kk_one(
    ext: &Extension,
    s: &Section,
    n: usize,
    trials: usize,
    seed: u64,
) -> std::result::Result<KkVerification, Failure> {
    let r = verify_kk(ext, s, n, trials, seed)?;
    Ok(KkVerification {
        extension: ext.c().name().to_string(),
        ideal_dim: ext.a().dim(),
        order: r.order,
        checked_through: r.checked_through,
        pairs_checked: r.pairs.len(),
        homomorphism_passed: r.homomorphism_passed(),
        failing_pairs: r
            .pairs
            .iter()
            .filter(|p| !p.passed())
            .map(|p| KkPairRecord {
                left: texts(&p.left),
                right: texts(&p.right),
                mismatched_degrees: p.mismatched_degrees.clone(),
                point_matches: p.point_matches,
            })
            .collect(),
        injectivity_rank: r.injectivity_rank,
        dim_c: r.dim_c,
        injectivity_passed: r.injectivity_passed(),
    })
}

fn kk_text(v: &KkVerification, c_labels: Option<&[String]>) -> Vec<String> {
    let mut ls = vec![format!(
        "{} (ideal of dimension {}): order {}, {} pairs checked through degree {}, injectivity rank {} of {}",
        v.extension, v.ideal_dim, v.order, v.pairs_checked, v.checked_through, v.injectivity_rank, v.dim_c
    )];
    ls.push(format!("KK homomorphism: {}", pass(v.homomorphism_passed)));
    for p in &v.failing_pairs {
        let show = |xs: &[RationalText]| {
            let vec = Vector(xs.iter().map(|r| r.0.clone()).collect());
            match c_labels {
                Some(l) => linear_combination(&vec, l),
                None => vec.to_string(),
            }
        };
        let ds: Vec<String> = p.mismatched_degrees.iter().map(usize::to_string).collect();
        ls.push(format!(
            "  [{}, {}] differs at degrees [{}]{}",
            show(&p.left),
            show(&p.right),
            ds.join(", "),
            if p.point_matches { "" } else { " and in B" }
        ));
    }
    ls.push(format!("KK injectivity: {}", pass(v.injectivity_passed)));
    ls
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyFundamentalRecord {
    pub schema_version: u32,
    pub command: String,
    pub degree: usize,
    pub results: Vec<FundamentalVerification>,
    pub passed: bool,
}

fn algebra_inputs(paths: &[PathBuf]) -> std::result::Result<Vec<LieAlgebra>, Failure> {
    if paths.is_empty() {
        return fixtures::ALGEBRAS
            .iter()
            .map(|(name, text)| load_algebra(text).map_err(with_path(Path::new(name))))
            .collect();
    }
    paths.iter().map(|p| read_algebra(p)).collect()
}

fn extension_inputs(paths: &[PathBuf]) -> std::result::Result<Vec<(Extension, Section)>, Failure> {
    if paths.is_empty() {
        return fixtures::EXTENSIONS
            .iter()
            .map(|(name, text)| load_extension(text).map_err(with_path(Path::new(name))))
            .collect();
    }
    paths.iter().map(|p| read_extension(p)).collect()
}

fn cmd_verify_fundamental(paths: &[PathBuf], n: usize, fmt: OutputFormat) -> CmdResult {
    let results = algebra_inputs(paths)?
        .iter()
        .map(|g| verify_fundamental_one(g, n))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let passed = results.iter().all(|r| r.passed);
    let out = match fmt {
        OutputFormat::Text => lines(results.iter().flat_map(fundamental_text)),
        OutputFormat::Structured => json(&VerifyFundamentalRecord {
            schema_version: SCHEMA_VERSION,
            command: "verify-fundamental".into(),
            degree: n,
            results,
            passed,
        }),
    };
    Ok(Outcome::ok(out, passed))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyKkRecord {
    pub schema_version: u32,
    pub command: String,
    pub degree: usize,
    pub trials: usize,
    pub seed: u64,
    pub results: Vec<KkVerification>,
    pub passed: bool,
}

fn require_bracket_order(n: usize) -> std::result::Result<(), Failure> {
    if n < 2 {
        return Err(Error::Precondition("N must be ≥ 2 for bracket verification".into()).into());
    }
    Ok(())
}

fn run_kk(
    exts: &[(Extension, Section)],
    n: usize,
    trials: usize,
    seed: u64,
) -> std::result::Result<Vec<KkVerification>, Failure> {
    exts.iter()
        .map(|(e, s)| verify_kk_one(e, s, n, trials, seed))
        .collect()
}

fn kk_lines(exts: &[(Extension, Section)], results: &[KkVerification]) -> Vec<String> {
    exts.iter()
        .zip(results)
        .flat_map(|((e, _), r)| kk_text(r, Some(e.c().labels())))
        .collect()
}

fn cmd_verify_kk(
    paths: &[PathBuf],
    n: usize,
    trials: usize,
    seed: u64,
    fmt: OutputFormat,
) -> CmdResult {
    require_bracket_order(n)?;
    let exts = extension_inputs(paths)?;
    let results = run_kk(&exts, n, trials, seed)?;
    let passed = results
        .iter()
        .all(|r| r.homomorphism_passed && r.injectivity_passed);
    let out = match fmt {
        OutputFormat::Text => lines(kk_lines(&exts, &results)),
        OutputFormat::Structured => json(&VerifyKkRecord {
            schema_version: SCHEMA_VERSION,
            command: "verify-kk".into(),
            degree: n,
            trials,
            seed,
            results,
            passed,
        }),
    };
    Ok(Outcome::ok(out, passed))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BernoulliVerification {
    pub n: usize,
    pub generating_identity: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyAllRecord {
    pub schema_version: u32,
    pub command: String,
    pub degree: usize,
    pub trials: usize,
    pub seed: u64,
    pub bernoulli: BernoulliVerification,
    pub fundamental: Vec<FundamentalVerification>,
    pub kk: Vec<KkVerification>,
    pub passed: bool,
}

const VERIFY_ALL_BERNOULLI: usize = 12;

fn cmd_verify_all(
    paths: &[PathBuf],
    n: usize,
    trials: usize,
    seed: u64,
    fmt: OutputFormat,
) -> CmdResult {
    require_bracket_order(n)?;
    let (alg_paths, ext_paths): (Vec<PathBuf>, Vec<PathBuf>) = paths
        .iter()
        .cloned()
        .partition(|p| p.extension().is_none_or(|e| e != "ext"));
    let algebras = if paths.is_empty() || !alg_paths.is_empty() {
        algebra_inputs(&alg_paths)?
    } else {
        Vec::new()
    };
    let exts = if paths.is_empty() || !ext_paths.is_empty() {
        extension_inputs(&ext_paths)?
    } else {
        Vec::new()
    };
    let bernoulli = BernoulliVerification {
        n: VERIFY_ALL_BERNOULLI,
        generating_identity: bernoulli_t(VERIFY_ALL_BERNOULLI).satisfies_generating_identity(),
    };
    let fundamental = algebras
        .iter()
        .map(|g| verify_fundamental_one(g, n))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let kk = run_kk(&exts, n, trials, seed)?;
    let passed = bernoulli.generating_identity
        && fundamental.iter().all(|r| r.passed)
        && kk
            .iter()
            .all(|r| r.homomorphism_passed && r.injectivity_passed);
    let out = match fmt {
        OutputFormat::Text => {
            let mut ls = vec![format!(
                "Bernoulli generating identity through t_{}: {}",
                bernoulli.n,
                pass(bernoulli.generating_identity)
            )];
            ls.extend(fundamental.iter().flat_map(fundamental_text));
            ls.extend(kk_lines(&exts, &kk));
            ls.push(format!("overall: {}", pass(passed)));
            lines(ls)
        }
        OutputFormat::Structured => json(&VerifyAllRecord {
            schema_version: SCHEMA_VERSION,
            command: "verify-all".into(),
            degree: n,
            trials,
            seed,
            bernoulli,
            fundamental,
            kk,
            passed,
        }),
    };
    Ok(Outcome::ok(out, passed))
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure(e.to_string())
    }
}
