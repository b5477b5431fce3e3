//! Command-line surface.
//!
//! Binds the library end to end: parse series files, operator
//! documents, polynomial term lists, and envelope terms; run the
//! solvers and classifiers; emit reports as plain text, a structured
//! JSON document, or plot-ready CSV. Outputs are canonical and
//! byte-identical across runs on identical inputs. Exit codes: 0
//! success, 2 input error, 3 contract violation, 4 inconclusive by
//! design.

use crate::error::{Error, Result};
use crate::format::{
    parse_envelope, parse_operator, parse_poly, parse_rational, parse_series, rational_decimal,
    rational_str, serialize_envelope, serialize_series, series_to_json,
};
use crate::growth::{classify_growth_with, GrowthModel, DEFAULT_MIN_SHELLS};
use crate::hypo::{
    self, empirical_exponent, HomogeneousPoly, HypoCertificate, HypoReport, HypoVerdict,
    RootCertificate, ShellScan, SobolevGain, DEFAULT_DEGREE_CAP,
};
use crate::lattice::LatticeBox;
use crate::mizohata::{solve_odd, reconstruct_general, TraceData};
use crate::operator::TorusOperator;
use crate::sections::{
    operator_image, section_inf, section_sup, solution_section, Section, SolutionMode,
};
use crate::series::{NormValue, TrigSeries};
use clap::{Parser, Subcommand, ValueEnum};
use num::{BigRational, One};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "torus-spectral",
    version,
    about = "Exact Fourier-side calculus for differential operators on the 2-torus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Fractional digits for decimal renderings in CSV exports.
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: u32,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve i u_x1 - sin(x1) u_x2 = f for even f, exactly.
    #[command(name = "solve-mizohata")]
    SolveMizohata {
        /// Right-hand side, series text format.
        #[arg(long)]
        f: PathBuf,
        /// Half-widths r1 r2 of the symmetric solve box.
        #[arg(long = "box", num_args = 2, value_names = ["R1", "R2"])]
        bounds: Vec<i64>,
        /// Write the solution series to this path.
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Rebuild a series on a box from an operator, boundary traces, and
    /// a right-hand side.
    Reconstruct {
        /// Operator document (JSON alpha form).
        #[arg(long)]
        op: PathBuf,
        /// Row trace files, in order q = 0..=s2 (series in x1).
        #[arg(long = "row")]
        rows: Vec<PathBuf>,
        /// Column trace files, in order p = 0..=s1 (series in x2).
        #[arg(long = "col")]
        cols: Vec<PathBuf>,
        /// Right-hand side series; zero when omitted.
        #[arg(long)]
        rhs: Option<PathBuf>,
        /// Half-widths r1 r2 of the symmetric solve box.
        #[arg(long = "box", num_args = 2, value_names = ["R1", "R2"])]
        bounds: Vec<i64>,
    },
    /// Apply an operator to a series.
    #[command(name = "apply-op")]
    ApplyOp {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        series: PathBuf,
    },
    /// Hypoellipticity of a homogeneous symbol.
    Hypo {
        #[command(subcommand)]
        cmd: HypoCmd,
    },
    /// Growth classification of a series against the space chain.
    Growth {
        #[command(subcommand)]
        cmd: GrowthCmd,
    },
    /// Lattice operations on growth-envelope sections.
    Section {
        #[command(subcommand)]
        cmd: SectionCmd,
    },
    /// Squared Sobolev norm of a series.
    Norm {
        #[arg(long)]
        series: PathBuf,
        /// Sobolev order, integer or rational p/q.
        #[arg(long)]
        m: String,
        /// Enclosure precision for fractional orders.
        #[arg(long, default_value_t = 64)]
        bits: u32,
    },
}

#[derive(Subcommand)]
pub enum HypoCmd {
    /// Exact verdict with number-theoretic certificates.
    Classify {
        /// Term list "c a1 a2, c a1 a2, ...".
        #[arg(long)]
        poly: String,
        /// Factorization degree cap.
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        cap: usize,
    },
    /// Exhaustive shell scan of min |P(n)| with a log-log fit.
    Scan {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 256)]
        radius: i64,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
pub enum GrowthCmd {
    Classify {
        #[arg(long)]
        series: PathBuf,
        /// Complete shells required before fitting.
        #[arg(long, default_value_t = DEFAULT_MIN_SHELLS)]
        min_shells: usize,
    },
}

#[derive(Subcommand)]
pub enum SectionCmd {
    /// Least upper bound of the given sections.
    Sup {
        /// Envelope terms "atom(...)/max(...)/min(...)".
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
    },
    /// Greatest lower bound of the given sections.
    Inf {
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
    },
    /// Image of a section under an operator.
    Image {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Solution section of L u = G for a target section G.
    Solve {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        term: String,
    },
}

/// Process entry point used by the thin binary: parse arguments,
/// honor `TORUS_SPEC_THREADS`, dispatch, and map errors to exit codes.
pub fn entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = configure_threads().and_then(|()| {
        let stdout = std::io::stdout();
        run(cli, &mut stdout.lock())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> Result<()> {
    match std::env::var("TORUS_SPEC_THREADS") {
        Ok(v) => {
            let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                Error::Document(format!(
                    "TORUS_SPEC_THREADS must be a positive integer, found '{v}'"
                ))
            })?;
            // A second build_global is a no-op error; the cap still
            // applies on first use, which is all the contract asks.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(())
        }
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(Error::Document(format!("TORUS_SPEC_THREADS: {e}"))),
    }
}

/// One report in all three views. CSV is absent where no tabular view
/// exists; requesting it there is an input error.
struct Rendered {
    json: Value,
    text: String,
    csv: Option<String>,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let rendered = dispatch(&cli)?;
    match cli.output {
        OutputFormat::Json => {
            let s = serde_json::to_string_pretty(&rendered.json).expect("finite document");
            writeln!(out, "{s}")?;
        }
        OutputFormat::Text => {
            write!(out, "{}", rendered.text)?;
        }
        OutputFormat::Csv => {
            let csv = rendered.csv.ok_or_else(|| {
                Error::Document("this command has no CSV view; use --output json or text".into())
            })?;
            write!(out, "{csv}")?;
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Rendered> {
    let digits = cli.precision;
    match &cli.command {
        Command::SolveMizohata { f, bounds, solution } => {
            cmd_solve_mizohata(f, bounds, solution.as_deref(), digits)
        }
        Command::Reconstruct { op, rows, cols, rhs, bounds } => {
            cmd_reconstruct(op, rows, cols, rhs.as_deref(), bounds, digits)
        }
        Command::ApplyOp { op, series } => cmd_apply_op(op, series, digits),
        Command::Hypo { cmd } => match cmd {
            HypoCmd::Classify { poly, cap } => cmd_hypo_classify(poly, *cap),
            HypoCmd::Scan { poly, radius, cap } => cmd_hypo_scan(poly, *radius, *cap, digits),
        },
        Command::Growth { cmd } => match cmd {
            GrowthCmd::Classify { series, min_shells } => {
                cmd_growth_classify(series, *min_shells)
            }
        },
        Command::Section { cmd } => match cmd {
            SectionCmd::Sup { terms } => cmd_section_fold(terms, true),
            SectionCmd::Inf { terms } => cmd_section_fold(terms, false),
            SectionCmd::Image { op, term } => cmd_section_image(op, term),
            SectionCmd::Solve { op, term } => cmd_section_solve(op, term),
        },
        Command::Norm { series, m, bits } => cmd_norm(series, m, *bits, digits),
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))
}

fn load_series(path: &Path) -> Result<TrigSeries> {
    parse_series(&read_file(path)?)
}

fn load_operator(path: &Path) -> Result<TorusOperator> {
    parse_operator(&read_file(path)?)
}

fn symmetric_box(bounds: &[i64]) -> Result<LatticeBox> {
    LatticeBox::new(-bounds[0], bounds[0], -bounds[1], bounds[1])
}

fn box_json(b: &LatticeBox) -> Value {
    json!([b.n1_min, b.n1_max, b.n2_min, b.n2_max])
}

fn series_csv(u: &TrigSeries, digits: u32) -> String {
    let mut s = format!("# decimals={digits}\nk1,k2,abs_sq\n");
    for (k, v) in u.iter() {
        let _ = writeln!(
            s,
            "{},{},{}",
            k.0,
            k.1,
            rational_decimal(&v.abs_sq(), digits)
        );
    }
    s
}

fn cmd_solve_mizohata(
    f_path: &Path,
    bounds: &[i64],
    solution_path: Option<&Path>,
    digits: u32,
) -> Result<Rendered> {
    let f = load_series(f_path)?;
    let b = symmetric_box(bounds)?;
    let sol = solve_odd(&f, b)?;
    if let Some(p) = solution_path {
        std::fs::write(p, serialize_series(&sol.u))
            .map_err(|e| Error::Document(format!("cannot write {}: {e}", p.display())))?;
    }
    let rb = sol.residual_box;
    let mut text = String::new();
    let _ = writeln!(text, "residual_box {} {} {} {}", rb.n1_min, rb.n1_max, rb.n2_min, rb.n2_max);
    let _ = writeln!(text, "growth_constant {}", rational_str(&sol.growth_constant));
    let _ = writeln!(text, "growth_constant_sq {}", rational_str(&sol.growth_constant_sq));
    let _ = writeln!(text, "terms {}", sol.u.term_count());
    if let Some(p) = solution_path {
        let _ = writeln!(text, "solution_file {}", p.display());
    }
    Ok(Rendered {
        json: json!({
            "command": "solve-mizohata",
            "residual_box": box_json(&rb),
            "growth_constant": rational_str(&sol.growth_constant),
            "growth_constant_sq": rational_str(&sol.growth_constant_sq),
            "terms": sol.u.term_count(),
            "solution": series_to_json(&sol.u),
        }),
        text,
        csv: Some(series_csv(&sol.u, digits)),
    })
}

fn cmd_reconstruct(
    op: &Path,
    rows: &[PathBuf],
    cols: &[PathBuf],
    rhs: Option<&Path>,
    bounds: &[i64],
    digits: u32,
) -> Result<Rendered> {
    let l = load_operator(op)?;
    let traces = TraceData {
        row_traces: rows.iter().map(|p| load_series(p)).collect::<Result<_>>()?,
        col_traces: cols.iter().map(|p| load_series(p)).collect::<Result<_>>()?,
    };
    let rhs = match rhs {
        Some(p) => load_series(p)?,
        None => TrigSeries::zero(),
    };
    let b = symmetric_box(bounds)?;
    let (u, unique) = reconstruct_general(&l, &traces, &rhs, b)?;
    Ok(Rendered {
        json: json!({
            "command": "reconstruct",
            "unique": unique,
            "series": series_to_json(&u),
        }),
        text: format!("# unique: {unique}\n{}", serialize_series(&u)),
        csv: Some(series_csv(&u, digits)),
    })
}

fn cmd_apply_op(op: &Path, series: &Path, digits: u32) -> Result<Rendered> {
    let l = load_operator(op)?;
    let u = load_series(series)?;
    let v = l.apply(&u)?;
    Ok(Rendered {
        json: json!({ "command": "apply-op", "series": series_to_json(&v) }),
        text: serialize_series(&v),
        csv: Some(series_csv(&v, digits)),
    })
}

fn root_json(r: &RootCertificate) -> Value {
    json!({
        "interval": [rational_str(&r.interval.0), rational_str(&r.interval.1)],
        "approx": r.approx,
        "multiplicity": r.multiplicity,
        "min_poly": r.min_poly.coeffs().iter().map(rational_str).collect::<Vec<_>>(),
        "min_poly_degree": r.min_poly_degree,
        "liouville_exponent": r.liouville_exponent,
        "roth_applies": r.roth_applies,
    })
}

fn hypo_report_json(report: &HypoReport) -> Value {
    let line_poly: Vec<String> = report.line_poly.coeffs().iter().map(rational_str).collect();
    let mut doc = json!({
        "degree": report.degree,
        "line_poly": line_poly,
        "max_real_multiplicity": report.max_real_multiplicity,
    });
    let obj = doc.as_object_mut().expect("object");
    match &report.verdict {
        HypoVerdict::NotHypoelliptic { witnesses } => {
            obj.insert("verdict".into(), json!("NOT_HYPOELLIPTIC"));
            obj.insert(
                "witnesses".into(),
                json!(witnesses.iter().map(|w| json!([w.0, w.1])).collect::<Vec<_>>()),
            );
            obj.insert(
                "kernel_witnesses".into(),
                json!(witnesses
                    .iter()
                    .map(|&w| series_to_json(&hypo::kernel_witness(w, 8)))
                    .collect::<Vec<_>>()),
            );
        }
        HypoVerdict::Hypoelliptic { certificate } => {
            obj.insert("verdict".into(), json!("HYPOELLIPTIC_CERTIFIED"));
            let cert = match certificate {
                HypoCertificate::Elliptic => json!({ "kind": "elliptic" }),
                HypoCertificate::IrreducibleSymbol { degree, roots } => json!({
                    "kind": "irreducible",
                    "degree": degree,
                    "roots": roots.iter().map(root_json).collect::<Vec<_>>(),
                }),
                HypoCertificate::FactoredSymbol { roots } => json!({
                    "kind": "factored",
                    "roots": roots.iter().map(root_json).collect::<Vec<_>>(),
                }),
            };
            obj.insert("certificate".into(), cert);
        }
        HypoVerdict::Inconclusive { degree, cap } => {
            obj.insert("verdict".into(), json!("INCONCLUSIVE"));
            obj.insert("reason".into(), json!(format!("degree {degree} exceeds cap {cap}")));
        }
    }
    doc
}

fn hypo_report_text(report: &HypoReport) -> String {
    let mut t = String::new();
    match &report.verdict {
        HypoVerdict::NotHypoelliptic { witnesses } => {
            let _ = writeln!(t, "verdict NOT_HYPOELLIPTIC");
            for w in witnesses {
                let _ = writeln!(t, "witness ({}, {})", w.0, w.1);
                let _ = writeln!(
                    t,
                    "kernel_witness sum of e^(i j ({}, {}).x), j = 1..8",
                    w.0, w.1
                );
            }
        }
        HypoVerdict::Hypoelliptic { certificate } => {
            let _ = writeln!(t, "verdict HYPOELLIPTIC_CERTIFIED");
            match certificate {
                HypoCertificate::Elliptic => {
                    let _ = writeln!(t, "certificate elliptic");
                }
                HypoCertificate::IrreducibleSymbol { degree, roots } => {
                    let _ = writeln!(t, "certificate irreducible degree {degree}");
                    for r in roots {
                        let _ = writeln!(
                            t,
                            "root approx {} multiplicity {} algebraic_degree {} liouville_exponent {}",
                            r.approx, r.multiplicity, r.min_poly_degree, r.liouville_exponent
                        );
                    }
                }
                HypoCertificate::FactoredSymbol { roots } => {
                    let _ = writeln!(t, "certificate factored");
                    for r in roots {
                        let _ = writeln!(
                            t,
                            "root approx {} multiplicity {} algebraic_degree {} liouville_exponent {}",
                            r.approx, r.multiplicity, r.min_poly_degree, r.liouville_exponent
                        );
                    }
                }
            }
        }
        HypoVerdict::Inconclusive { degree, cap } => {
            let _ = writeln!(t, "verdict INCONCLUSIVE");
            let _ = writeln!(t, "reason degree {degree} exceeds cap {cap}");
        }
    }
    let _ = writeln!(t, "degree {}", report.degree);
    if let Some(r) = report.max_real_multiplicity {
        let _ = writeln!(t, "max_real_multiplicity {r}");
    }
    t
}

fn cmd_hypo_classify(poly: &str, cap: usize) -> Result<Rendered> {
    let sym = parse_poly(poly)?;
    let report = hypo::classify_symbol(&sym, cap)?;
    if let HypoVerdict::Inconclusive { degree, cap } = report.verdict {
        return Err(Error::Inconclusive(format!(
            "factorization refused: degree {degree} exceeds cap {cap}"
        )));
    }
    let mut doc = hypo_report_json(&report);
    doc.as_object_mut()
        .expect("object")
        .insert("command".into(), json!("hypo-classify"));
    Ok(Rendered {
        json: doc,
        text: hypo_report_text(&report),
        csv: None,
    })
}

fn gain_json(g: &SobolevGain) -> Value {
    json!({
        "degree": g.degree,
        "max_real_multiplicity": g.max_real_multiplicity,
        "theoretical_gain": rational_str(&g.theoretical_gain),
        "index_formula": g.index_formula,
        "epsilon_zero_allowed": g.epsilon_zero_allowed,
        "empirical_gain": g.empirical_gain,
        "empirical_slope": g.empirical_slope,
        "discrepancy_flagged": g.discrepancy_flagged,
    })
}

fn scan_csv(scan: &ShellScan, digits: u32) -> String {
    let mut s = format!("# decimals={digits}\nshell,nsq,min_abs_sq\n");
    for rec in &scan.shells {
        let sq = BigRational::from_integer(&rec.min_value * &rec.min_value);
        let _ = writeln!(s, "{},{},{}", rec.shell, rec.nsq, rational_decimal(&sq, digits));
    }
    s
}

fn cmd_hypo_scan(poly: &str, radius: i64, cap: usize, digits: u32) -> Result<Rendered> {
    let sym = parse_poly(poly)?;
    let hp = HomogeneousPoly::from_symbol(&sym)?;
    let scan = empirical_exponent(&hp, radius);
    let report = hypo::classify(&hp, cap);
    let gain = report.sobolev_gain(&scan);
    let shells: Vec<Value> = scan
        .shells
        .iter()
        .map(|r| {
            json!({
                "shell": r.shell,
                "min": r.min_value.to_string(),
                "nsq": r.nsq,
                "witness": [r.witness.0, r.witness.1],
            })
        })
        .collect();
    let fit = scan.fit.as_ref().map(|f| {
        json!({
            "slope": f.slope,
            "intercept": f.intercept,
            "relative_residual": f.rel_residual,
            "points": f.points,
        })
    });
    let mut text = String::new();
    for r in &scan.shells {
        let _ = writeln!(
            text,
            "shell {} min {} at ({}, {}) nsq {}",
            r.shell, r.min_value, r.witness.0, r.witness.1, r.nsq
        );
    }
    if let Some(f) = &scan.fit {
        let _ = writeln!(text, "fit slope {} points {}", f.slope, f.points);
    }
    if let Some(g) = &gain {
        let _ = writeln!(text, "index_formula {}", g.index_formula);
        let _ = writeln!(
            text,
            "theoretical_gain {}",
            rational_str(&g.theoretical_gain)
        );
        if let Some(e) = g.empirical_gain {
            let _ = writeln!(text, "empirical_gain {e}");
        }
        let _ = writeln!(text, "discrepancy_flagged {}", g.discrepancy_flagged);
    }
    Ok(Rendered {
        json: json!({
            "command": "hypo-scan",
            "radius": scan.radius,
            "shells": shells,
            "fit": fit,
            "gain": gain.as_ref().map(gain_json),
        }),
        text,
        csv: Some(scan_csv(&scan, digits)),
    })
}

fn model_name(m: &GrowthModel) -> String {
    match m {
        GrowthModel::Polynomial => "polynomial".into(),
        GrowthModel::Exponential => "exponential".into(),
        GrowthModel::Factorial { axis } => format!("factorial(x{axis})"),
    }
}

fn cmd_growth_classify(series: &Path, min_shells: usize) -> Result<Rendered> {
    let u = load_series(series)?;
    let rep = classify_growth_with(&u, min_shells)?;
    let fits: Vec<Value> = rep
        .fits
        .iter()
        .map(|f| {
            json!({
                "model": model_name(&f.model),
                "rate": f.rate,
                "intercept": f.intercept,
                "relative_residual": f.relative_residual,
                "points": f.points,
            })
        })
        .collect();
    let maxima: Vec<Value> = rep
        .shell_maxima
        .iter()
        .map(|(s, v)| json!([s, v]))
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "space {}", rep.tag);
    let _ = writeln!(text, "note {}", rep.note);
    if let Some(m) = &rep.chosen {
        let _ = writeln!(text, "model {}", model_name(m));
    }
    for f in &rep.fits {
        let _ = writeln!(
            text,
            "fit {} rate {} residual {} points {}",
            model_name(&f.model),
            f.rate,
            f.relative_residual,
            f.points
        );
    }
    let mut csv = String::from("shell,max_abs\n");
    for (s, v) in &rep.shell_maxima {
        let _ = writeln!(csv, "{s},{v}");
    }
    Ok(Rendered {
        json: json!({
            "command": "growth-classify",
            "space": rep.tag.to_string(),
            "model": rep.chosen.as_ref().map(model_name),
            "note": rep.note,
            "fits": fits,
            "shell_maxima": maxima,
        }),
        text,
        csv: Some(csv),
    })
}

fn term_rendered(command: &str, section: &Section, extra: Vec<(&str, Value)>) -> Rendered {
    let term = serialize_envelope(&section.generator);
    let mut doc = json!({ "command": command, "term": term });
    let obj = doc.as_object_mut().expect("object");
    let mut text = format!("{term}\n");
    for (k, v) in extra {
        match &v {
            Value::String(s) => {
                let _ = writeln!(text, "{k} {s}");
            }
            other => {
                let _ = writeln!(text, "{k} {other}");
            }
        }
        obj.insert(k.into(), v);
    }
    Rendered {
        json: doc,
        text,
        csv: None,
    }
}

fn cmd_section_fold(terms: &[String], is_sup: bool) -> Result<Rendered> {
    let mut sections = Vec::new();
    for t in terms {
        sections.push(Section::new(parse_envelope(t)?));
    }
    let mut acc = sections[0].clone();
    for s in &sections[1..] {
        acc = if is_sup {
            section_sup(&acc, s)
        } else {
            section_inf(&acc, s)
        };
    }
    Ok(term_rendered(
        if is_sup { "section-sup" } else { "section-inf" },
        &acc,
        Vec::new(),
    ))
}

fn cmd_section_image(op: &Path, term: &str) -> Result<Rendered> {
    let l = load_operator(op)?;
    let s = Section::new(parse_envelope(term)?);
    let img = operator_image(&l, &s);
    Ok(term_rendered("section-image", &img, Vec::new()))
}

fn cmd_section_solve(op: &Path, term: &str) -> Result<Rendered> {
    let l = load_operator(op)?;
    let g = Section::new(parse_envelope(term)?);
    let rep = solution_section(&l, &g)?;
    let mode = match rep.mode {
        SolutionMode::ConstCoeff => "const-coeff",
        SolutionMode::MizohataFactorial => "mizohata-factorial",
        SolutionMode::Empirical => "empirical",
    };
    let containment = rep
        .containment
        .as_ref()
        .map_or_else(|| "none".to_string(), |t| t.to_string());
    Ok(term_rendered(
        "section-solve",
        &rep.section,
        vec![
            ("mode", json!(mode)),
            ("containment", json!(containment)),
            ("certified_atoms", json!(rep.certified_atoms)),
            ("note", json!(rep.note)),
        ],
    ))
}

fn cmd_norm(series: &Path, m: &str, bits: u32, digits: u32) -> Result<Rendered> {
    let u = load_series(series)?;
    let m = parse_rational(m)
        .ok_or_else(|| Error::Document(format!("--m expects an integer or rational, found '{m}'")))?;
    let nv = u.sobolev_norm_sq(&m, bits)?;
    let friendly = |v: &BigRational| {
        if v.denom().is_one() {
            v.numer().to_string()
        } else {
            rational_str(v)
        }
    };
    let (json, text, csv) = match &nv {
        NormValue::Exact(v) => (
            json!({ "command": "norm", "m": rational_str(&m), "norm_sq": rational_str(v) }),
            format!("norm_sq {}\n", friendly(v)),
            format!(
                "# decimals={digits}\nm,norm_sq\n{},{}\n",
                rational_str(&m),
                rational_decimal(v, digits)
            ),
        ),
        NormValue::Enclosure { lo, hi } => (
            json!({
                "command": "norm",
                "m": rational_str(&m),
                "norm_sq_lo": rational_str(lo),
                "norm_sq_hi": rational_str(hi),
            }),
            format!("norm_sq_lo {}\nnorm_sq_hi {}\n", friendly(lo), friendly(hi)),
            format!(
                "# decimals={digits}\nm,norm_sq_lo,norm_sq_hi\n{},{},{}\n",
                rational_str(&m),
                rational_decimal(lo, digits),
                rational_decimal(hi, digits)
            ),
        ),
    };
    Ok(Rendered {
        json,
        text,
        csv: Some(csv),
    })
}
