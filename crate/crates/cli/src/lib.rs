//! The `qinv` command line.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use qinv_core::axioms::{run_axiom_suite, MAX_SUITE_COLOR};
use qinv_core::fusion::{frobenius_data, fusion_ring, surface_invariant};
use qinv_core::hopfcheck::{check_all, check_antipode, check_axiom, Axiom, FiniteBialgebra};
use qinv_core::links::{
    analyze, braid_closure, colored_sum, evaluate_with_cap, framing_normalize, parse_diagram,
    SlicedDiagram, Weighting,
};
use qinv_core::qcoords::{check_bialgebra, check_overlaps, counit_antipode_check, parse_nc};
use qinv_core::ribbon::BraidWord;
use qinv_core::ring::{Cyclotomic, Generic};
use qinv_core::uqsl2::DEFAULT_DIM_CAP;
use qinv_core::{Scalar, ScalarRing};
use serde_json::json;

pub const DIM_CAP_VAR: &str = "QINV_DIM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "qinv",
    version,
    about = "Exact quantum invariants of links and surfaces"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the structural axiom suite over Z[v, v^-1].
    Axioms {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=MAX_SUITE_COLOR as i64))]
        max_color: u32,
    },
    /// Evaluate the closure of a braid.
    Braid {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        normalize_framing: bool,
    },
    /// Evaluate a sliced diagram.
    Link {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, requires = "m", conflicts_with = "normalize_framing")]
        sum_colorings: Option<Weighting>,
        #[arg(long)]
        normalize_framing: bool,
    },
    /// Fusion rules at a primitive m-th root of unity.
    Fusion {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        table: bool,
    },
    /// The surface invariant of a closed genus-g surface.
    Surface {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        m: u32,
    },
    /// Check Hopf algebra axioms for structure constants in a JSON file.
    Hopf {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Normal form in the quantum coordinate algebra.
    Qnormal {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        check_bialgebra: bool,
    },
}

/// Why a run stopped; maps to the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

fn domain<E: Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn dim_cap(env: Option<String>) -> Result<usize, Failure> {
    match env {
        None => Ok(DEFAULT_DIM_CAP),
        Some(s) => s.parse::<usize>().ok().filter(|c| *c > 0).ok_or_else(|| {
            Failure::Usage(format!(
                "{DIM_CAP_VAR} must be a positive integer, found {s:?}"
            ))
        }),
    }
}

fn scalar_output<S: Scalar>(json: bool, ring: &impl ScalarRing<Elem = S>, x: &S) -> String {
    if json {
        json!({ "ring": ring.tag(), "value": x.to_json(), "text": x.to_string() }).to_string()
    } else {
        x.to_string()
    }
}

fn evaluate_in<R: ScalarRing>(
    ring: &R,
    d: &SlicedDiagram,
    cap: usize,
    normalize: bool,
    json: bool,
) -> Result<String, Failure> {
    let value = evaluate_with_cap(ring, d, cap).map_err(domain)?;
    let value = if normalize {
        let a = analyze(d).map_err(domain)?;
        let writhes: Vec<i64> = a.components.iter().map(|c| c.writhe).collect();
        let colors: Vec<u32> = a.components.iter().map(|c| c.color).collect();
        framing_normalize(ring, &value, &writhes, &colors)
    } else {
        value
    };
    Ok(scalar_output(json, ring, &value))
}

fn evaluate_diagram(
    d: &SlicedDiagram,
    m: Option<u32>,
    cap: usize,
    normalize: bool,
    json: bool,
) -> Result<String, Failure> {
    match m {
        None => evaluate_in(&Generic, d, cap, normalize, json),
        Some(m) => evaluate_in(
            &Cyclotomic::new(m).map_err(domain)?,
            d,
            cap,
            normalize,
            json,
        ),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))
}

fn checks_json(results: &[(String, Result<(), impl Display>)]) -> serde_json::Value {
    let items: Vec<_> = results
        .iter()
        .map(|(name, r)| json!({ "check": name, "passed": r.is_ok(), "witness": r.as_ref().err().map(|e| e.to_string()) }))
        .collect();
    json!({ "passed": results.iter().all(|(_, r)| r.is_ok()), "checks": items })
}

fn check_lines(results: &[(String, Result<(), impl Display>)], json: bool) -> (String, bool) {
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let text = if json {
        checks_json(results).to_string()
    } else {
        results
            .iter()
            .map(|(name, r)| match r {
                Ok(()) => format!("PASS {name}"),
                Err(e) => format!("FAIL {name}: {e}"),
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    (text, ok)
}

/// Runs one parsed command. `Ok((stdout, passed))`: a failed check still
/// prints its report but exits 1.
pub fn execute(cli: &Cli, cap_env: Option<String>) -> Result<(String, bool), Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Axioms { max_color } => {
            let report = run_axiom_suite(*max_color).map_err(domain)?;
            let text = if json {
                serde_json::to_string(&report).map_err(domain)?
            } else {
                report.to_string().trim_end().to_string()
            };
            Ok((text, report.all_passed()))
        }
        Command::Braid {
            word,
            colors,
            m,
            normalize_framing,
        } => {
            let cap = dim_cap(cap_env)?;
            let word: BraidWord = word.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
            if word.max_index() >= colors.len() {
                return Err(Failure::Usage(format!(
                    "word uses s{} but --colors gives only {} strands",
                    word.max_index(),
                    colors.len()
                )));
            }
            let d = braid_closure(&word, colors).map_err(domain)?;
            Ok((
                evaluate_diagram(&d, *m, cap, *normalize_framing, json)?,
                true,
            ))
        }
        Command::Link {
            file,
            m,
            sum_colorings,
            normalize_framing,
        } => {
            let cap = dim_cap(cap_env)?;
            let d = parse_diagram(&read(file)?).map_err(domain)?;
            match (sum_colorings, m) {
                (Some(w), Some(m)) => {
                    let ring = Cyclotomic::new(*m).map_err(domain)?;
                    let x = colored_sum(&d, *m, *w).map_err(domain)?;
                    Ok((scalar_output(json, &ring, &x), true))
                }
                _ => Ok((
                    evaluate_diagram(&d, *m, cap, *normalize_framing, json)?,
                    true,
                )),
            }
        }
        Command::Fusion { m, table } => {
            let ring = fusion_ring(*m).map_err(domain)?;
            let text = if *table && !json {
                ring.to_string().trim_end().to_string()
            } else {
                json!({ "m": m, "level": ring.level, "table": ring.n }).to_string()
            };
            Ok((text, true))
        }
        Command::Surface { genus, m } => {
            let f = frobenius_data(&fusion_ring(*m).map_err(domain)?).map_err(domain)?;
            let w = surface_invariant(*genus, &f);
            let text = if json {
                json!({ "genus": genus, "m": m, "value": w.to_string() }).to_string()
            } else {
                w.to_string()
            };
            Ok((text, true))
        }
        Command::Hopf { file, check } => {
            let b = FiniteBialgebra::from_json(&read(file)?).map_err(domain)?;
            b.validate_shape().map_err(domain)?;
            let results = match check.as_str() {
                "all" => check_all(&b)
                    .into_iter()
                    .map(|(n, r)| (n, r.map_err(|e| e.to_string())))
                    .collect(),
                "antipode" => vec![(
                    "antipode".to_string(),
                    check_antipode(&b)
                        .map_err(domain)?
                        .map_err(|e| e.to_string()),
                )],
                other => {
                    let axiom: Axiom = other.parse().map_err(|_| {
                        Failure::Usage(format!(
                            "--check expects all, antipode or H1.1..H3.3, found {other:?}"
                        ))
                    })?;
                    vec![(
                        axiom.to_string(),
                        check_axiom(&b, axiom).map_err(|e| e.to_string()),
                    )]
                }
            };
            Ok(check_lines(&results, json))
        }
        Command::Qnormal {
            expr,
            check_bialgebra: check,
        } => {
            let p = parse_nc(expr).map_err(domain)?;
            let n = qinv_core::qcoords::normal_form(&p);
            let mut value =
                json!({ "input": expr, "normal_form": n.to_json(), "text": n.to_string() });
            let mut text = n.to_string();
            let mut ok = true;
            if *check {
                let results: Vec<(String, Result<(), String>)> = vec![
                    (
                        "local confluence".into(),
                        check_overlaps().map(|_| ()).map_err(|f| format!("{f:?}")),
                    ),
                    (
                        "coproduct respects relations".into(),
                        check_bialgebra().map_err(|f| format!("{f:?}")),
                    ),
                    (
                        "counit and antipode".into(),
                        counit_antipode_check().map_err(|f| format!("{f:?}")),
                    ),
                ];
                let (lines, passed) = check_lines(&results, false);
                text = format!("{text}\n{lines}");
                value["checks"] = checks_json(&results)["checks"].clone();
                ok = passed;
            }
            if json {
                text = value.to_string();
            }
            Ok((text, ok))
        }
    }
}

/// Parses `argv` (including the program name), runs, and writes to the given streams.
pub fn run<I, T>(
    argv: I,
    cap_env: Option<String>,
    out: &mut impl Write,
    err: &mut impl Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli, cap_env) {
        Ok((text, passed)) => {
            let _ = writeln!(out, "{text}");
            if passed {
                0
            } else {
                1
            }
        }
        Err(f) => {
            match &f {
                Failure::Usage(m) => {
                    let _ = writeln!(
                        err,
                        "error: {m}\n\n{}",
                        <Cli as clap::CommandFactory>::command().render_usage()
                    );
                }
                Failure::Domain(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
            }
            f.exit_code()
        }
    }
}
