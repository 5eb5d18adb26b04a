//! Argument parsing and subcommand dispatch for the `simplab` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use simplicial_core::cheeger::{
    cheeger_estimate_check, cheeger_h1, cheeger_h2, cheeger_h3, cheeger_h4, cheeger_hj_and_top_spectrum,
    derived_eigenvalue_maps, derived_identity_violations, is_disorientable, CheegerOptions, CheegerValue,
};
use simplicial_core::flows::{cancel_pair, floer_boundary, franks_replacement, FloerComplex};
use simplicial_core::morse::{
    forman_boundary, forman_witten_violations, morse_inequalities, validate_morse, MorseData,
};
use simplicial_core::plmorse::{compare_discrete_pl, pl_critical_points};
use simplicial_core::sampling::{convergence_report, Manifold, Rule, Weighting};
use simplicial_core::signed::{
    dual_cheeger, dual_cheeger_inequality, higher_order_check, signed_cheeger, signed_cheeger_inequality,
    SandwichCheck, SubBipartition,
};
use simplicial_core::spectral::{
    laplacian_spectrum, normalized_up_spectrum, witten_diagnostic, zero_tolerance, InnerProduct, Variant,
    WITTEN_T_GRID,
};
use simplicial_core::variational::{lovasz_extension, p_laplacian_eigen, submodularity_and_convexity, DescentOptions};
use simplicial_core::{Error, Rational, Simplex, SimplicialComplex};

use crate::formats::{self, CellFunction, ParseError};
use crate::plot::{plot_csv, PlotRow};

/// Exit code for inputs or results that fail validation.
pub const EXIT_INVALID: i32 = 2;
/// Exit code when an exhaustive search would exceed its budget.
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "simplab", version, about = "Spectra, Cheeger constants and Morse complexes of simplicial complexes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_i64(s: &str) -> Result<i64, String> {
    match s.parse::<i64>() {
        Ok(n) if n > 0 => Ok(n),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit CSV instead of JSON where a table form exists.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write long-format plot data `(series, x, y)`.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    /// Slack for floating-point agreement checks.
    #[arg(long, global = true, default_value_t = 1e-6, value_parser = positive_f64)]
    pub tolerance: f64,
    /// Vertex cap for exhaustive graph searches.
    #[arg(long = "budget-vertices", global = true, default_value_t = 12, value_parser = positive_usize)]
    pub budget_vertices: usize,
    /// Simplex cap `|Σ_k|` for the multiset Cheeger searches.
    #[arg(long = "budget-simplices", global = true, default_value_t = 8, value_parser = positive_usize)]
    pub budget_simplices: usize,
    /// Multiplicity bound `M` for the multiset Cheeger searches.
    #[arg(long = "budget-M", global = true, default_value_t = 2, value_parser = positive_i64)]
    pub budget_m: i64,
    /// Random restarts for iterative solvers.
    #[arg(long, global = true, default_value_t = 64, value_parser = positive_usize)]
    pub restarts: usize,
    /// Worker cap; all computations currently run on one thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = positive_usize)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Laplacian spectrum on one level or all levels.
    Spectra {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, value_enum, default_value_t = VariantArg::Up)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = WeightsArg::Stored)]
        weights: WeightsArg,
        /// Include eigenvectors in the JSON report.
        #[arg(long)]
        eigenvectors: bool,
    },
    /// Betti numbers by exact ranks.
    Betti {
        #[arg(long)]
        input: PathBuf,
    },
    /// Low-lying spectrum of the Witten-deformed Laplacian for a cell function.
    Witten {
        /// Morse-function file giving values on every simplex.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
    },
    /// Higher-dimensional Cheeger constants.
    Cheeger {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum, default_value_t = WhichArg::All)]
        which: WhichArg,
    },
    /// Whether the complex is disorientable, combinatorially and spectrally.
    Disorient {
        #[arg(long)]
        input: PathBuf,
    },
    /// `h_j` on the derived signed graph against the top of the normalized up-spectrum.
    Topspec {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1, value_parser = positive_usize)]
        j: usize,
    },
    /// Derived signed graph identity and eigenvalue maps.
    Derived {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Signed Cheeger constants and their inequalities for a signed graph file.
    Signed {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = positive_usize)]
        j: usize,
    },
    /// Eigenvalue of the up p-Laplacian.
    Plap {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        d: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Submodularity, convexity and Lovász extension values of a set function table.
    Lovasz {
        #[arg(long)]
        input: PathBuf,
        /// Point at which to evaluate the extension.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Discrete Morse function checks.
    Morse {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        boundary: bool,
        #[arg(long)]
        inequalities: bool,
    },
    /// Mod-2 Floer complexes with orbits.
    Floer {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        homology: bool,
        /// Replace this orbit by two rest points.
        #[arg(long)]
        franks: Option<String>,
        /// Names of the replacing points (default `<orbit>+`, `<orbit>-`).
        #[arg(long, requires = "franks")]
        upper: Option<String>,
        #[arg(long, requires = "franks")]
        lower: Option<String>,
        #[arg(long, num_args = 2, value_names = ["UPPER", "LOWER"])]
        cancel: Option<Vec<String>>,
    },
    /// PL critical points of the extension to the order complex.
    Plmorse {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        check: bool,
    },
    /// Spectral convergence report for a sampled manifold.
    SampleSpec {
        #[arg(long, value_enum)]
        manifold: ManifoldArg,
        #[arg(long, value_parser = positive_usize)]
        n: usize,
        /// Ball radius (default depends on the manifold).
        #[arg(long, value_parser = positive_f64, conflicts_with = "knn")]
        eps: Option<f64>,
        #[arg(long, value_parser = positive_usize)]
        knn: Option<usize>,
        /// Gaussian weights of this width; `--gaussian` alone uses ε/2.
        #[arg(long, num_args = 0..=1, default_missing_value = "0")]
        gaussian: Option<f64>,
        /// Skip the density-cancelling reweighting.
        #[arg(long)]
        no_density_correction: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Up,
    Down,
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightsArg {
    /// Default weights (degrees below the top, 1 on top) or those given in the file.
    Stored,
    Unit,
    /// Normalized up-Laplacian; only with `--variant up`.
    Normalized,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichArg {
    H1,
    H2,
    H3,
    H4,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldArg {
    Circle,
    Sphere,
    Torus,
}

/// A failed run: exit code plus a structured diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::BudgetExceeded { .. } => (EXIT_BUDGET, "budget"),
            Error::MorseViolation { .. } | Error::GradientCycle(_) => (EXIT_INVALID, "morse"),
            Error::SameIndexConnection { .. }
            | Error::UnsupportedConnection { .. }
            | Error::BoundaryNotNilpotent { .. }
            | Error::NotUniquelyConnected { .. }
            | Error::UnknownObject(_) => (EXIT_INVALID, "floer"),
            _ => (EXIT_INVALID, "validation"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure { code: EXIT_INVALID, kind: "parse", message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, kind: "validation", message: message.into() }
}

/// What a subcommand produced.
pub struct Output {
    pub json: Value,
    pub csv: Option<String>,
    pub plot: Vec<PlotRow>,
}

impl Output {
    fn json(json: Value) -> Self {
        Self { json, csv: None, plot: Vec::new() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_INVALID, kind: "io", message: format!("{}: {e}", path.display()) })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure { code: EXIT_INVALID, kind: "io", message: format!("{}: {e}", path.display()) })
}

pub fn rational_json(r: &Rational) -> Value {
    let exact = if r.is_integer() { r.numer().to_string() } else { format!("{}/{}", r.numer(), r.denom()) };
    json!({ "exact": exact, "value": *r.numer() as f64 / *r.denom() as f64 })
}

fn simplex_json(s: &Simplex) -> Value {
    json!(s.vertices())
}

fn sandwich_json(s: &SandwichCheck) -> Value {
    json!({ "lower": s.lower, "value": s.value, "upper": s.upper, "holds": s.holds })
}

fn bipartition_json(b: &SubBipartition) -> Value {
    json!({ "v1": b.v1, "v2": b.v2 })
}

fn cheeger_json(v: &CheegerValue) -> Value {
    json!({ "value": rational_json(&v.value), "witness": v.witness, "warning": v.warning })
}

/// Entry point shared by the binary and the tests; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(f) => {
            let diag = json!({ "error": f.kind, "message": f.message, "exit_code": f.code });
            let _ = writeln!(stderr, "{diag}");
            f.code
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let out = dispatch(&cli.command, &cli.global)?;
    let text = if cli.global.csv {
        out.csv.clone().ok_or_else(|| invalid("this subcommand has no CSV form"))?
    } else {
        let mut s = serde_json::to_string_pretty(&out.json).expect("reports serialize");
        s.push('\n');
        s
    };
    if let Some(path) = &cli.global.plot {
        if out.plot.is_empty() {
            return Err(invalid("this subcommand has no plot data"));
        }
        write_file(path, &plot_csv(&out.plot))?;
    }
    match &cli.global.out {
        Some(path) => write_file(path, &text)?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure { code: EXIT_INVALID, kind: "io", message: e.to_string() })?,
    }
    Ok(())
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    Ok(formats::parse_complex(&read(path)?)?)
}

fn load_cells(path: &Path) -> Result<CellFunction, Failure> {
    Ok(formats::parse_morse(&read(path)?)?)
}

fn load_floer(path: &Path) -> Result<FloerComplex, Failure> {
    Ok(formats::parse_floer(&read(path)?)?)
}

fn dispatch(cmd: &Command, g: &Global) -> Result<Output, Failure> {
    match cmd {
        Command::Spectra { input, level, variant, weights, eigenvectors } => {
            spectra(&load_complex(input)?, *level, *variant, *weights, *eigenvectors)
        }
        Command::Betti { input } => {
            let c = load_complex(input)?;
            let betti = c.betti_numbers();
            let csv = std::iter::once("k,betti".to_string())
                .chain(betti.iter().enumerate().map(|(k, b)| format!("{k},{b}")))
                .collect::<Vec<_>>()
                .join("\n")
                + "\n";
            Ok(Output {
                json: json!({ "counts": c.counts(), "betti": betti, "euler_characteristic": c.euler_characteristic() }),
                csv: Some(csv),
                plot: Vec::new(),
            })
        }
        Command::Witten { input, level, t } => witten(&load_cells(input)?, *level, t.as_deref()),
        Command::Cheeger { input, level, which } => cheeger(&load_complex(input)?, *level, *which, g),
        Command::Disorient { input } => {
            let d = is_disorientable(&load_complex(input)?)?;
            Ok(Output::json(json!({
                "disorientable": d.disorientable,
                "orientation": d.orientation,
                "obstruction": d.obstruction,
                "pure": d.pure,
                "lambda_max": d.lambda_max,
                "top_multiplicity": d.top_multiplicity,
                "edge_components": d.edge_components,
                "spectral_verdict": d.spectral_verdict,
                "verdicts_agree": d.disorientable == d.spectral_verdict,
            })))
        }
        Command::Topspec { input, level, j } => {
            let r = cheeger_hj_and_top_spectrum(&load_complex(input)?, *level, *j, g.budget_vertices)?;
            Ok(Output::json(json!({
                "level": level,
                "j": r.j,
                "h": rational_json(&r.h),
                "witness": r.witness.iter().map(bipartition_json).collect::<Vec<_>>(),
                "lambda": r.lambda,
                "upper_holds": r.upper_holds,
                "lower_holds": r.lower_holds,
                "empirical_ratio": r.empirical_ratio,
                "balanced_components": r.balanced_components,
            })))
        }
        Command::Derived { input, level } => {
            let c = load_complex(input)?;
            let violations = derived_identity_violations(&c, *level)?;
            let maps = derived_eigenvalue_maps(&c, *level).ok();
            Ok(Output::json(json!({
                "level": level,
                "identity_holds": violations.is_empty(),
                "violating_rows": violations,
                "eigenvalue_maps": maps.map(|m| json!({
                    "up": m.up,
                    "from_smallest": m.from_smallest,
                    "from_largest": m.from_largest,
                    "max_deviation": m.max_deviation,
                })),
            })))
        }
        Command::Signed { input, j } => signed(&formats::parse_signed_graph(&read(input)?)?, *j, g),
        Command::Plap { input, d, p, k, seed } => {
            let c = load_complex(input)?;
            let opts = DescentOptions { restarts: g.restarts, seed: *seed, ..DescentOptions::default() };
            let e = p_laplacian_eigen(&c, *d, *p, *k, &opts)?;
            Ok(Output::json(json!({
                "p": e.p,
                "d": d,
                "k": e.k,
                "eigenvalue": e.eigenvalue,
                "eigenfunction": e.eigenfunction,
                "residual": if e.residual.is_finite() { json!(e.residual) } else { Value::Null },
                "certified": e.certified,
                "method": format!("{:?}", e.method),
            })))
        }
        Command::Lovasz { input, x, samples, seed } => {
            let f = formats::parse_set_function(&read(input)?)?;
            let v = submodularity_and_convexity(&f, *samples, *seed)?;
            let at = match x {
                Some(x) => Some(lovasz_extension(&f, x)?),
                None => None,
            };
            Ok(Output::json(json!({
                "ground_size": f.ground_size(),
                "submodular": v.submodular,
                "violation": v.violation,
                "convex_on_samples": v.convex_on_samples,
                "subset_minimum": rational_json(&v.subset_minimum),
                "subset_minimizer": v.subset_minimizer,
                "sampled_relaxation_minimum": v.sampled_relaxation_minimum,
                "extension_at_x": at,
            })))
        }
        Command::Morse { input, check, boundary, inequalities } => {
            let cells = load_cells(input)?;
            let data = validate_morse(&cells.complex, cells.values.clone())?;
            let all = !(*check || *boundary || *inequalities);
            Ok(Output::json(morse_report(&data, *check || all, *boundary || all, *inequalities || all)))
        }
        Command::Floer { input, check, homology, franks, upper, lower, cancel } => {
            floer(&load_floer(input)?, *check, *homology, franks.as_deref(), upper.as_deref(), lower.as_deref(), cancel.as_deref())
        }
        Command::Plmorse { input, check } => {
            let cells = load_cells(input)?;
            let critical = pl_critical_points(&cells.complex, &cells.values)?;
            let mut report = json!({
                "critical": critical.iter().filter(|c| c.is_critical()).map(|c| json!({
                    "simplex": simplex_json(&c.simplex),
                    "multiplicities": c.multiplicities,
                    "nondegenerate": c.is_nondegenerate(),
                })).collect::<Vec<_>>(),
            });
            if *check {
                let data = validate_morse(&cells.complex, cells.values.clone())?;
                let cmp = compare_discrete_pl(&data)?;
                report["comparison"] = json!({
                    "discrete": cmp.discrete,
                    "pl": cmp.pl,
                    "mismatches": cmp.mismatches.iter().map(simplex_json).collect::<Vec<_>>(),
                    "degenerate": cmp.degenerate.iter().map(simplex_json).collect::<Vec<_>>(),
                    "agree": cmp.agree(),
                });
                if !cmp.agree() {
                    return Err(invalid(format!("discrete and PL Morse vectors differ: {:?} vs {:?}", cmp.discrete, cmp.pl)));
                }
            }
            Ok(Output::json(report))
        }
        Command::SampleSpec { manifold, n, eps, knn, gaussian, no_density_correction, seed } => {
            let m = match manifold {
                ManifoldArg::Circle => Manifold::Circle,
                ManifoldArg::Sphere => Manifold::Sphere,
                ManifoldArg::Torus => Manifold::Torus,
            };
            let eps = eps.unwrap_or_else(|| m.default_epsilon());
            let rule = match knn {
                Some(k) => Rule::Knn(*k),
                None => Rule::Epsilon(eps),
            };
            let weighting = match gaussian {
                None => Weighting::Unit,
                Some(s) if *s > 0.0 => Weighting::Gaussian(*s),
                Some(_) => Weighting::Gaussian(eps / 2.0),
            };
            sample_spec(m, *n, rule, weighting, !no_density_correction, *seed)
        }
    }
}

fn spectra(
    c: &SimplicialComplex,
    level: Option<usize>,
    variant: VariantArg,
    weights: WeightsArg,
    eigenvectors: bool,
) -> Result<Output, Failure> {
    let levels: Vec<usize> = match level {
        Some(k) => vec![k],
        None => (0..=c.dim()).collect(),
    };
    let v = match variant {
        VariantArg::Up => Variant::Up,
        VariantArg::Down => Variant::Down,
        VariantArg::Full => Variant::Full,
    };
    if weights == WeightsArg::Normalized && v != Variant::Up {
        return Err(invalid("normalized weights are only defined for the up-Laplacian"));
    }
    let ips = match weights {
        WeightsArg::Unit => InnerProduct::unit_all(c),
        _ => InnerProduct::stored_all(c),
    };
    let variant_name = format!("{variant:?}").to_lowercase();
    let mut reports = Vec::new();
    let mut csv = String::from("k,variant,index,eigenvalue\n");
    let mut plot = Vec::new();
    let betti = c.betti_numbers();
    for k in levels {
        let spec = match weights {
            WeightsArg::Normalized => normalized_up_spectrum(c, k)?,
            _ => laplacian_spectrum(c, k, v, &ips)?,
        };
        // round-off below the zero tolerance is reported as an exact zero
        let tol = zero_tolerance(&spec.eigenvalues);
        let eigenvalues: Vec<f64> = spec.eigenvalues.iter().map(|x| if x.abs() <= tol { 0.0 } else { *x }).collect();
        for (i, x) in eigenvalues.iter().enumerate() {
            csv.push_str(&format!("{k},{variant_name},{i},{x}\n"));
            plot.push(PlotRow::new(format!("k={k}"), i as f64, *x));
        }
        let mut r = json!({
            "level": k,
            "variant": variant_name,
            "eigenvalues": eigenvalues,
            "zero_multiplicity": spec.zero_multiplicity,
            "betti": betti.get(k).copied().unwrap_or(0),
            "max_residual": spec.max_residual,
        });
        if eigenvectors {
            r["eigenvectors"] = json!((0..spec.eigenvalues.len()).map(|i| spec.eigenvector(i)).collect::<Vec<_>>());
        }
        reports.push(r);
    }
    Ok(Output { json: json!({ "weights": format!("{weights:?}").to_lowercase(), "spectra": reports }), csv: Some(csv), plot })
}

fn witten(cells: &CellFunction, level: usize, t: Option<&[f64]>) -> Result<Output, Failure> {
    let c = &cells.complex;
    let f: Vec<Vec<f64>> =
        cells.values.iter().map(|v| v.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect()).collect();
    let ts = t.unwrap_or(&WITTEN_T_GRID);
    let rows = witten_diagnostic(c, level, &f, ts, &InnerProduct::stored_all(c))?;
    let condition = validate_morse(c, cells.values.clone())
        .ok()
        .map(|data| forman_witten_violations(&data).iter().map(|(a, b)| json!([simplex_json(a), simplex_json(b)])).collect::<Vec<_>>());
    let mut csv = String::from("t,small,kernel,threshold\n");
    let mut plot = Vec::new();
    for r in &rows {
        csv.push_str(&format!("{},{},{},{}\n", r.t, r.small, r.kernel, r.threshold));
        plot.push(PlotRow::new(format!("k={level}"), r.t, r.small as f64));
    }
    let warning = match &condition {
        Some(v) if !v.is_empty() => Some("the cell function violates the extra condition for the Witten approach"),
        None => Some("the cell function is not a discrete Morse function"),
        _ => None,
    };
    Ok(Output {
        json: json!({
            "level": level,
            "betti": c.betti_numbers().get(level).copied().unwrap_or(0),
            "rows": rows.iter().map(|r| json!({
                "t": r.t,
                "eigenvalues": r.eigenvalues,
                "threshold": if r.threshold.is_finite() { json!(r.threshold) } else { Value::Null },
                "small": r.small,
                "kernel": r.kernel,
            })).collect::<Vec<_>>(),
            "condition_violations": condition,
            "warning": warning,
        }),
        csv: Some(csv),
        plot,
    })
}

fn cheeger(c: &SimplicialComplex, level: usize, which: WhichArg, g: &Global) -> Result<Output, Failure> {
    let opts = CheegerOptions { budget: g.budget_simplices, m: g.budget_m };
    let mut r = json!({ "level": level, "M": g.budget_m, "reduced_betti": c.reduced_betti(level) });
    let want = |w: WhichArg| which == w || which == WhichArg::All;
    let mut exact = Vec::new();
    if want(WhichArg::H1) {
        let v = cheeger_h1(c, level, &opts)?;
        r["h1"] = cheeger_json(&v);
        exact.push(v.value);
    }
    if want(WhichArg::H2) {
        let v = cheeger_h2(c, level, &opts)?;
        r["h2"] = cheeger_json(&v);
        exact.push(v.value);
    }
    if want(WhichArg::H4) {
        let v = cheeger_h4(c, level, &opts)?;
        r["h4"] = cheeger_json(&v);
        exact.push(v.value);
    }
    let mut h3 = None;
    if want(WhichArg::H3) {
        let v = cheeger_h3(c, level)?;
        r["h3"] = json!({ "value": v.value, "witness": v.witness, "warning": v.warning });
        h3 = Some(v.value);
    }
    if which == WhichArg::All {
        let h1 = r["h1"]["value"]["value"].as_f64().unwrap_or(0.0);
        let exact_equal = exact.windows(2).all(|w| w[0] == w[1]);
        r["agree"] = json!(exact_equal && h3.is_some_and(|h| (h - h1).abs() <= g.tolerance));
        if c.degrees(level).iter().all(|d| *d > 0) && level < c.dim() {
            let e = cheeger_estimate_check(c, level, &opts)?;
            r["estimate"] = json!({
                "h": rational_json(&e.h),
                "lambda_min_positive": e.lambda,
                "lower": e.lower,
                "upper": e.upper,
                "holds": e.holds,
            });
        }
    }
    Ok(Output::json(r))
}

fn signed(graph: &simplicial_core::signed::SignedGraph, j: usize, g: &Global) -> Result<Output, Failure> {
    let mut constants = Vec::new();
    for jj in 1..=j.min(graph.vertex_count()) {
        let h = signed_cheeger(graph, jj, g.budget_vertices)?;
        constants.push(json!({
            "j": jj,
            "value": rational_json(&h.value),
            "witness": h.witness.iter().map(bipartition_json).collect::<Vec<_>>(),
        }));
    }
    let sandwich = signed_cheeger_inequality(graph, g.budget_vertices)?;
    let higher = higher_order_check(graph, j, g.budget_vertices)?;
    let all_positive = graph.edges().iter().all(|e| e.sign > 0);
    let dual = if all_positive && graph.components() == 1 {
        let d = dual_cheeger(graph, g.budget_vertices)?;
        let s = dual_cheeger_inequality(graph, g.budget_vertices)?;
        json!({
            "h_bar": rational_json(&d.h_bar),
            "beta": rational_json(&d.beta),
            "witness": bipartition_json(&d.witness),
            "inequality": sandwich_json(&s),
        })
    } else {
        Value::Null
    };
    Ok(Output::json(json!({
        "vertices": graph.vertex_count(),
        "balanced": graph.is_balanced(),
        "antibalanced": graph.is_antibalanced(),
        "constants": constants,
        "inequality": sandwich_json(&sandwich),
        "higher_order": {
            "lambda": higher.lambda,
            "upper_holds": higher.upper_holds,
            "monotone": higher.monotone,
            "empirical_ratio": higher.empirical_ratio,
        },
        "dual": dual,
    })))
}

fn morse_report(data: &MorseData, check: bool, boundary: bool, inequalities: bool) -> Value {
    let c = data.complex();
    let mut r = json!({ "critical_counts": data.critical_counts() });
    if check {
        r["valid"] = json!(true);
        r["critical"] = json!((0..=c.dim()).map(|k| data.critical_simplices(k).iter().map(simplex_json).collect::<Vec<_>>()).collect::<Vec<_>>());
        r["arrows"] = json!(data.arrows().iter().map(|(a, b)| json!([simplex_json(a), simplex_json(b)])).collect::<Vec<_>>());
        r["witten_condition_violations"] =
            json!(forman_witten_violations(data).iter().map(|(a, b)| json!([simplex_json(a), simplex_json(b)])).collect::<Vec<_>>());
    }
    if boundary {
        let mc = forman_boundary(data);
        let (z, z2) = mc.squares_to_zero();
        r["boundary"] = json!(mc
            .boundary
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, m)| json!({
                "dim": k,
                "rows": mc.critical[k - 1].iter().map(simplex_json).collect::<Vec<_>>(),
                "cols": mc.critical[k].iter().map(simplex_json).collect::<Vec<_>>(),
                "matrix": (0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>());
        r["squares_to_zero"] = json!({ "integers": z, "mod2": z2 });
        r["homology"] = json!(mc.homology());
        r["homology_mod2"] = json!(mc.homology_mod2());
    }
    if inequalities {
        let m = morse_inequalities(data);
        r["inequalities"] = json!({
            "m": m.m,
            "b": m.b,
            "weak": m.weak,
            "strong": m.strong,
            "euler_equal": m.euler_equal,
            "q": m.q,
            "holds": m.holds(),
        });
    }
    r
}

fn floer_json(c: &FloerComplex) -> Result<Value, Failure> {
    let d = floer_boundary(c)?;
    Ok(json!({
        "generators": d.names,
        "boundary": d.names.iter().map(|n| json!({ "generator": n, "image": d.boundary_of(n) })).collect::<Vec<_>>(),
        "homology": d.homology(),
    }))
}

fn floer(
    c: &FloerComplex,
    check: bool,
    homology: bool,
    franks: Option<&str>,
    upper: Option<&str>,
    lower: Option<&str>,
    cancel: Option<&[String]>,
) -> Result<Output, Failure> {
    let mut r = json!({});
    let before = floer_json(c)?;
    if check || !(homology || franks.is_some() || cancel.is_some()) {
        r["valid"] = json!(true);
        r["boundary"] = before["boundary"].clone();
    }
    if homology {
        r["homology"] = before["homology"].clone();
    }
    if let Some(orbit) = franks {
        let up = upper.map_or(format!("{orbit}+"), str::to_string);
        let low = lower.map_or(format!("{orbit}-"), str::to_string);
        let replaced = franks_replacement(c, orbit, &up, &low)?;
        let after = floer_json(&replaced)?;
        r["franks"] = json!({
            "orbit": orbit,
            "complex": formats::write_floer(&replaced),
            "homology_before": before["homology"],
            "homology_after": after["homology"],
            "invariant": trimmed(&before["homology"]) == trimmed(&after["homology"]),
        });
    }
    if let Some(pair) = cancel {
        let reduced = cancel_pair(c, &pair[0], &pair[1])?;
        let after = floer_json(&reduced)?;
        r["cancel"] = json!({
            "pair": pair,
            "complex": formats::write_floer(&reduced),
            "homology_before": before["homology"],
            "homology_after": after["homology"],
            "invariant": trimmed(&before["homology"]) == trimmed(&after["homology"]),
        });
    }
    Ok(Output::json(r))
}

/// Homology ranks without trailing zeros, so complexes of different top degree compare.
fn trimmed(v: &Value) -> Vec<u64> {
    let mut out: Vec<u64> = v.as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn sample_spec(m: Manifold, n: usize, rule: Rule, weighting: Weighting, density: bool, seed: u64) -> Result<Output, Failure> {
    let r = convergence_report(m, n, rule, weighting, density, seed)?;
    let (rule_name, parameter) = match rule {
        Rule::Epsilon(e) => ("epsilon", e),
        Rule::Knn(k) => ("knn", k as f64),
    };
    let weights = match weighting {
        Weighting::Unit => json!("unit"),
        Weighting::Gaussian(s) => json!({ "gaussian": s }),
    };
    let mut clusters = Vec::new();
    let mut start = 1;
    let mut plot = Vec::new();
    let mut csv = String::from("cluster,size,mean\n");
    for (i, size) in r.cluster_sizes.iter().enumerate() {
        let vals = &r.eigenvalues[start..start + size];
        let mean = vals.iter().sum::<f64>() / *size as f64;
        clusters.push(json!({ "size": size, "mean": mean }));
        plot.push(PlotRow::new(format!("n={n}"), (i + 1) as f64, mean));
        csv.push_str(&format!("{},{size},{mean}\n", i + 1));
        start += size;
    }
    let name = format!("{m:?}").to_lowercase();
    Ok(Output {
        json: json!({
            "manifold": name,
            "n": r.n,
            "seed": r.seed,
            "graph": { "rule": rule_name, "parameter": parameter, "weights": weights, "density_correction": density, "edges": r.edges },
            "eigenvalues": r.eigenvalues,
            "rescaled": r.rescaled,
            "target": r.target,
            "clusters": clusters,
            "cluster_sizes": r.cluster_sizes,
            "target_sizes": r.target_sizes,
            "cluster_ratio": r.cluster_ratio,
            "index_ratio": r.index_ratio,
            "target_ratio": r.target_ratio,
            "max_residual": r.max_residual,
            "sweep_expansion": r.sweep_expansion,
            "cheeger_estimate": r.cheeger_estimate,
            "cheeger_target": r.cheeger_target,
        }),
        csv: Some(csv),
        plot,
    })
}
