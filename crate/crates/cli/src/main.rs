//! `malcev`: batch front end. Every command prints one canonical JSON report
//! on stdout. Exit status 0 on success, 1 when the mathematics says no
//! (validation failure, non-morphism, ...), 2 on unusable input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use malcev_core::cohomology::betti;
use malcev_core::duality::{compare, reconstruct_hom};
use malcev_core::io::{self, IoError};
use malcev_core::lie::{free_nilpotent, graded, is_strictly_graded, lower_central_series, validate, HallBasis};
use malcev_core::polymap::{basis_exponents, pull_inv, pull_m, pull_mtilde};
use malcev_core::{Group, LieAlgebraSpec};

const DEFAULT_MAX_DEGREE: u32 = 12;

#[derive(Parser)]
#[command(name = "malcev", version, about = "Exact computations in torsion-free nilpotent groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure-constant file.
    Check { spec: PathBuf },
    /// Associated graded algebra.
    Graded { spec: PathBuf },
    /// Lower central series dimensions.
    Lcs { spec: PathBuf },
    /// Betti numbers of the Chevalley-Eilenberg complex.
    Betti {
        spec: PathBuf,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Monomial basis of polynomial maps of degree at most d.
    Polbasis {
        spec: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    /// Group product of two elements (files or inline JSON `{"coords": [..]}`).
    Mul { spec: PathBuf, left: String, right: String },
    /// Pull a polynomial map back along the group operations.
    Pullback {
        spec: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        polymap: String,
    },
    /// Recover the group homomorphism behind an algebra morphism file.
    Reconstruct { morphism: PathBuf },
    /// Compare two algebras by isomorphism invariants.
    Compare { left: PathBuf, right: PathBuf },
    /// Free nilpotent algebra on a Hall basis; prints a spec file.
    Free {
        #[arg(long)]
        gens: usize,
        #[arg(long)]
        class: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    M,
    Mtilde,
    Inv,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

struct Report {
    command: &'static str,
    inputs: Value,
    results: Value,
    ok: bool,
}

impl Report {
    fn render(&self) -> String {
        io::canonical(&json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "status": if self.ok { "ok" } else { "failed" },
            "exit_status": if self.ok { 0 } else { 1 },
        }))
    }
}

fn read_value(arg: &str) -> Result<Value, CliError> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    };
    Ok(io::parse_json(&text)?)
}

fn read_spec(path: &Path) -> Result<LieAlgebraSpec, CliError> {
    let v = read_value(&path.to_string_lossy())?;
    Ok(io::spec_from_json(&v)?)
}

fn group(spec: LieAlgebraSpec) -> Result<Group, CliError> {
    Group::new(spec).map_err(|e| CliError::Domain(e.to_string()))
}

fn max_degree() -> Result<u32, CliError> {
    match std::env::var("MALCEV_MAX_DEGREE") {
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
        Ok(s) => s.trim().parse().map_err(|_| CliError::Input(format!("MALCEV_MAX_DEGREE={s} is not a number"))),
    }
}

fn spec_inputs(spec: &LieAlgebraSpec) -> Value {
    json!({"spec": io::spec_hash(spec)})
}

fn run(cmd: Command) -> Result<Report, CliError> {
    Ok(match cmd {
        Command::Check { spec } => {
            let s = read_spec(&spec)?;
            let r = validate(&s);
            Report {
                command: "check",
                inputs: spec_inputs(&s),
                results: json!({"validation": r, "all_passed": r.all_passed(), "dimension": s.dim()}),
                ok: r.all_passed(),
            }
        }
        Command::Graded { spec } => {
            let s = read_spec(&spec)?;
            let g = group(s.clone())?;
            let gr = graded(g.spec());
            Report {
                command: "graded",
                inputs: spec_inputs(&s),
                results: json!({
                    "input_strictly_graded": is_strictly_graded(&s),
                    "graded": io::spec_to_json(gr.spec()),
                    "graded_hash": io::spec_hash(gr.spec()),
                }),
                ok: true,
            }
        }
        Command::Lcs { spec } => {
            let s = read_spec(&spec)?;
            let series = lower_central_series(&s).map_err(|e| CliError::Domain(e.to_string()))?;
            let dims: Vec<usize> = series.iter().map(|t| t.dim()).collect();
            let quotients: Vec<usize> = dims.windows(2).map(|w| w[0] - w[1]).collect();
            let adapted = validate(&s).lcs_adapted;
            Report {
                command: "lcs",
                inputs: spec_inputs(&s),
                results: json!({
                    "dims": dims,
                    "quotient_dims": quotients,
                    "class": quotients.len(),
                    "basis_adapted": adapted,
                }),
                ok: adapted.passed,
            }
        }
        Command::Betti { spec, max_n } => {
            let s = read_spec(&spec)?;
            let g = group(s.clone())?;
            let top = max_n.unwrap_or(g.dim()).min(g.dim());
            let numbers: Vec<usize> =
                (0..=top).map(|n| betti(g.spec(), n).map_err(|e| CliError::Domain(e.to_string()))).collect::<Result<_, _>>()?;
            Report {
                command: "betti",
                inputs: json!({"spec": io::spec_hash(&s), "max_n": top}),
                results: json!({"betti": numbers}),
                ok: true,
            }
        }
        Command::Polbasis { spec, degree } => {
            let cap = max_degree()?;
            if degree > cap {
                return Err(CliError::Input(format!("degree {degree} exceeds MALCEV_MAX_DEGREE={cap}")));
            }
            let s = read_spec(&spec)?;
            let g = group(s.clone())?;
            let w = g.spec().weights();
            let names = g.coord_vars();
            let monomials: Vec<Value> = basis_exponents(&w, degree)
                .into_iter()
                .map(|e| {
                    let wd: u32 = e.iter().zip(&w).map(|(x, y)| x * y).sum();
                    let display: Vec<String> = e
                        .iter()
                        .zip(names.iter())
                        .filter(|(x, _)| **x > 0)
                        .map(|(x, n)| if *x == 1 { n.clone() } else { format!("{n}^{x}") })
                        .collect();
                    let display = if display.is_empty() { "1".to_string() } else { display.join("*") };
                    json!({"exps": e, "weighted_degree": wd, "display": display})
                })
                .collect();
            Report {
                command: "polbasis",
                inputs: json!({"spec": io::spec_hash(&s), "degree": degree}),
                results: json!({"count": monomials.len(), "monomials": monomials}),
                ok: true,
            }
        }
        Command::Mul { spec, left, right } => {
            let s = read_spec(&spec)?;
            let g = group(s.clone())?;
            let a = io::element_from_json(&g, &read_value(&left)?)?;
            let b = io::element_from_json(&g, &read_value(&right)?)?;
            let p = a.mul(&b).map_err(|e| CliError::Domain(e.to_string()))?;
            Report {
                command: "mul",
                inputs: json!({"spec": io::spec_hash(&s), "left": io::element_to_json(&a), "right": io::element_to_json(&b)}),
                results: json!({"product": io::element_to_json(&p)}),
                ok: true,
            }
        }
        Command::Pullback { spec, op, polymap } => {
            let s = read_spec(&spec)?;
            let g = group(s.clone())?;
            let xi = io::polymap_from_json(&g, &read_value(&polymap)?)?;
            let (name, result) = match op {
                Op::M => ("m", io::tensor_to_json(&pull_m(&xi))),
                Op::Mtilde => ("mtilde", io::tensor_to_json(&pull_mtilde(&xi))),
                Op::Inv => ("inv", io::polymap_to_json(&pull_inv(&xi))),
            };
            Report {
                command: "pullback",
                inputs: json!({"spec": io::spec_hash(&s), "op": name, "polymap": io::polymap_to_json(&xi)}),
                results: json!({"pullback": result}),
                ok: true,
            }
        }
        Command::Reconstruct { morphism } => {
            let psi = io::morphism_from_json(&read_value(&morphism.to_string_lossy())?)?;
            let flags = psi.flags();
            let inputs = json!({
                "source": io::spec_hash(psi.source().spec()),
                "target": io::spec_hash(psi.target().spec()),
                "degree": psi.degree(),
            });
            match reconstruct_hom(&psi) {
                Ok(phi) => Report {
                    command: "reconstruct",
                    inputs,
                    results: json!({"flags": flags, "homomorphism": io::hom_to_json(&phi)}),
                    ok: true,
                },
                Err(e) => Report {
                    command: "reconstruct",
                    inputs,
                    results: json!({"flags": flags, "error": e.to_string()}),
                    ok: false,
                },
            }
        }
        Command::Compare { left, right } => {
            let a = group(read_spec(&left)?)?;
            let b = group(read_spec(&right)?)?;
            let c = compare(a.spec(), b.spec()).map_err(|e| CliError::Domain(e.to_string()))?;
            Report {
                command: "compare",
                inputs: json!({"left": io::spec_hash(a.spec()), "right": io::spec_hash(b.spec())}),
                results: serde_json::to_value(&c).expect("comparison serializes"),
                ok: true,
            }
        }
        Command::Free { gens, class } => {
            if gens == 0 || class == 0 {
                return Err(CliError::Input("--gens and --class must be positive".into()));
            }
            let h = HallBasis::new(gens, class);
            let mut v = io::spec_to_json(&free_nilpotent(gens, class));
            v["hall_basis"] = json!((0..h.len()).map(|a| h.display(a)).collect::<Vec<_>>());
            v["dimension"] = json!(h.len());
            // printed as a spec file so it can be fed straight back in
            print!("{}", io::canonical(&v));
            return Ok(Report { command: "free", inputs: Value::Null, results: Value::Null, ok: true });
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let is_free = matches!(cli.command, Command::Free { .. });
    match run(cli.command) {
        Ok(r) => {
            if !is_free {
                print!("{}", r.render());
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
