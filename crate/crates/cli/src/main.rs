use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zxw::diagram::{deserialize, serialize};
use zxw::rules::{descriptor, replay, ReplayError, RewriteScript};
use zxw::semantics::{apply_basis, interpret, tensor_equal, tensor_to_json, EqualityMode, Tensor};
use zxw::translate::{to_zw, to_zx};
use zxw::verify::{
    run_axiom_suite, run_fixture_suite, run_translation_suite, AxiomSuiteConfig, FixtureSuite, RandomDiagramSpec,
    TranslationMode, TranslationSuiteConfig, VerificationReport,
};
use zxw::{Calculus, Diagram, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "zxw", version, about = "Evaluate, compare, translate and rewrite ZX and ZW diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the tensor of a diagram, or its value on a basis input.
    Eval {
        file: PathBuf,
        /// Comma-separated basis labels fed into the inputs.
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Compare the tensors of two diagrams; exit 1 when they differ.
    Equal {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        up_to_scalar: bool,
    },
    /// Translate a diagram into the other calculus.
    Translate {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the node provenance map to this file.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Run a verification suite; exit 1 when any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
        dims: Vec<usize>,
        /// Instances per rule, or diagrams for the translation suites.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Check an axiom suite with this rule's right-hand side perturbed.
        #[arg(long)]
        mutate: Option<String>,
        /// Check translations against the identity object map.
        #[arg(long)]
        wrong_object_map: bool,
        #[arg(long)]
        allow_untranscribed: bool,
        #[arg(long)]
        json: bool,
    },
    /// Replay a rewrite script on a diagram.
    Apply {
        file: PathBuf,
        #[arg(long)]
        script: PathBuf,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the per-step log here as JSON; stderr gets a summary otherwise.
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Zw,
    Zx,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    ZxAxioms,
    ZwAxioms,
    A1,
    A2,
    A3,
    TranslateXw,
    TranslateWx,
}

enum Failure {
    /// A semantic check came out false.
    Check,
    /// Bad input or usage, with a message.
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { file, basis, json } => eval(&file, basis.as_deref(), json),
        Command::Equal { left, right, tol, up_to_scalar } => equal(&left, &right, tol, up_to_scalar),
        Command::Translate { file, to, output, provenance } => {
            translate(&file, to, output.as_deref(), provenance.as_deref())
        }
        Command::Verify { suite, dims, trials, seed, tol, mutate, wrong_object_map, allow_untranscribed, json } => {
            let opts = VerifyOpts { dims, trials, seed, tol, mutate, wrong_object_map };
            verify(suite, &opts, allow_untranscribed, json)
        }
        Command::Apply { file, script, output, log } => apply(&file, &script, output.as_deref(), log.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_diagram(path: &Path) -> Result<Diagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let d = deserialize(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    d.validate().map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(d)
}

fn write_out(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn print_tensor(t: &Tensor) {
    println!("shape {:?}", t.shape());
    let mut index = vec![0; t.shape().len()];
    for v in t.data() {
        println!("{index:?} {} {}", num(v.re), num(v.im));
        for k in (0..index.len()).rev() {
            index[k] += 1;
            if index[k] < t.shape()[k] {
                break;
            }
            index[k] = 0;
        }
    }
}

fn eval(file: &Path, basis: Option<&[usize]>, as_json: bool) -> Outcome {
    let d = read_diagram(file)?;
    let t = match basis {
        Some(k) => apply_basis(&d, k)?,
        None => interpret(&d)?,
    };
    if as_json {
        println!("{}", tensor_to_json(&t));
    } else {
        print_tensor(&t);
    }
    Ok(())
}

fn equal(left: &Path, right: &Path, tol: f64, up_to_scalar: bool) -> Outcome {
    let (a, b) = (read_diagram(left)?, read_diagram(right)?);
    if a.signature() != b.signature() {
        return Err(Failure::Input(format!("boundary mismatch: {} vs {}", a.signature(), b.signature())));
    }
    let mode = if up_to_scalar { EqualityMode::UpToScalar } else { EqualityMode::Exact };
    let v = tensor_equal(&interpret(&a)?, &interpret(&b)?, tol, mode)?;
    println!("{}", if v.equal { "equal" } else { "not equal" });
    println!("deviation {}", num(v.max_abs_deviation));
    if let Some(c) = v.fitted_scalar {
        println!("scalar {} {}", num(c.re), num(c.im));
    }
    if v.equal {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn translate(file: &Path, to: Target, output: Option<&Path>, provenance: Option<&Path>) -> Outcome {
    let d = read_diagram(file)?;
    let trace = match to {
        Target::Zw => to_zw(&d)?,
        Target::Zx => to_zx(&d)?,
    };
    write_out(output, &serialize(&trace.target))?;
    if let Some(p) = provenance {
        write_out(Some(p), &trace.provenance_json())?;
    }
    Ok(())
}

struct VerifyOpts {
    dims: Vec<usize>,
    trials: Option<usize>,
    seed: u64,
    tol: f64,
    mutate: Option<String>,
    wrong_object_map: bool,
}

fn verify(suite: Suite, o: &VerifyOpts, allow_untranscribed: bool, as_json: bool) -> Outcome {
    let report = run_suite(suite, o)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print_report(&report);
    }
    if !report.untranscribed.is_empty() && !allow_untranscribed {
        eprintln!("untranscribed: {}", report.untranscribed.join(", "));
        return Err(Failure::Check);
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run_suite(suite: Suite, o: &VerifyOpts) -> Result<VerificationReport, Failure> {
    if let Some(rule) = &o.mutate {
        let calculus = match suite {
            Suite::ZxAxioms => Calculus::Zx,
            Suite::ZwAxioms => Calculus::Zw,
            _ => return Err(Failure::Input("--mutate applies to the axiom suites only".into())),
        };
        if descriptor(rule)?.calculus != calculus {
            return Err(Failure::Input(format!("rule {rule} is not a {calculus} rule")));
        }
    }
    let axioms = |calculus| {
        let cfg = AxiomSuiteConfig {
            dims: o.dims.clone(),
            trials: o.trials.unwrap_or(100),
            seed: o.seed,
            tol: o.tol,
            mutate: o.mutate.clone(),
            only: None,
        };
        run_axiom_suite(calculus, &cfg)
    };
    let translation = |calculus| {
        let spec = RandomDiagramSpec {
            calculus,
            max_generators: 8,
            dims: o.dims.clone(),
            max_width: 4,
            seed: o.seed,
            allow_closed: false,
        };
        let mode = if o.wrong_object_map { TranslationMode::WrongObjectMap } else { TranslationMode::Faithful };
        run_translation_suite(&TranslationSuiteConfig { spec, count: o.trials.unwrap_or(200), tol: o.tol, mode })
    };
    Ok(match suite {
        Suite::ZxAxioms => axioms(Calculus::Zx),
        Suite::ZwAxioms => axioms(Calculus::Zw),
        Suite::A1 => run_fixture_suite(FixtureSuite::A1, &o.dims, o.tol),
        Suite::A2 => run_fixture_suite(FixtureSuite::A2, &o.dims, o.tol),
        Suite::A3 => run_fixture_suite(FixtureSuite::A3, &o.dims, o.tol),
        Suite::TranslateXw => translation(Calculus::Zx)?,
        Suite::TranslateWx => translation(Calculus::Zw)?,
    })
}

fn print_report(r: &VerificationReport) {
    println!("{}: {} passed, {} failed of {}", r.suite, r.passed, r.failed, r.total);
    for f in &r.failures {
        let detail = f.detail.as_deref().unwrap_or("");
        println!("  FAIL {} deviation {} {detail}", f.key, num(f.deviation));
    }
}

fn apply(file: &Path, script: &Path, output: Option<&Path>, log: Option<&Path>) -> Outcome {
    let d = read_diagram(file)?;
    let text = fs::read_to_string(script).map_err(|e| Failure::Input(format!("{}: {e}", script.display())))?;
    let script: RewriteScript =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed script: {e}")))?;
    let outcome = match replay(&d, &script) {
        Ok(o) => o,
        Err(e @ ReplayError::Semantic { .. }) => {
            eprintln!("{e}");
            return Err(Failure::Check);
        }
        Err(e) => return Err(Failure::Input(e.to_string())),
    };
    write_out(output, &serialize(&outcome.diagram))?;
    match log {
        Some(p) => write_out(Some(p), &serde_json::to_string_pretty(&outcome.log)?)?,
        None => {
            for s in &outcome.log {
                eprintln!(
                    "step {} {}: {} -> {} nodes, deviation {}",
                    s.step,
                    s.rule,
                    s.nodes_before,
                    s.nodes_after,
                    num(s.deviation)
                );
            }
        }
    }
    Ok(())
}
