//! `linlog`: batch front end for the proof kernel, translations, machine
//! encoder, phase semantics and proof search.
//!
//! Exit codes: 0 positive answer, 1 definite negative, 2 unknown or budget
//! exhausted, 3 usage or input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linlog::encoder::{certify_acceptance, encode_theta, goal, Certification};
use linlog::kernel::{check_proof, proof_from_json, proof_to_json, Proof, SystemConfig};
use linlog::machine::{normalize, parse_machine, run, CounterMachine, MachineId, RunOutcome};
use linlog::phase::{find_countermodel_with, generate_models, print_model, CountermodelOptions, PhaseModel};
use linlog::search::{prove, SearchBudget, SearchResult};
use linlog::syntax::{parse_formula, parse_sequent, LanguageId};
use linlog::translations::{
    reduce_back_to_cll, reduce_back_to_ill, transform_cll_to_cllr, transform_ill_to_illr, translate,
    translate_multiset, ti, tl, tr, TranslationId,
};
use linlog::Sequent;

const POSITIVE: u8 = 0;
const NEGATIVE: u8 = 1;
const UNKNOWN: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "linlog", version, about = "Linear logic without weakening: proofs, translations, machines, models")]
struct Cli {
    /// Output style for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "LINLOG_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for model search; the answer does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Classical {
    Cll,
    Ill,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduced {
    Cllr,
    Illr,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof file against a system.
    Check {
        proof: PathBuf,
        #[arg(long, default_value = "cll")]
        system: String,
    },
    /// Apply t_l, t_r or the intuitionistic translation to a formula, or to
    /// a sequent (`t_l` on the left and `t_r` on the right).
    Translate {
        text: String,
        #[arg(long, default_value = "tl")]
        to: String,
    },
    /// Turn a cut-free proof with weakening into a weakening-free one.
    Transform {
        proof: PathBuf,
        #[arg(long, value_enum, default_value_t = Classical::Cll)]
        from: Classical,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a weakening-free proof of a translated sequent back into a proof
    /// of the original.
    Reduce {
        proof: PathBuf,
        #[arg(long, value_enum, default_value_t = Reduced::Cllr)]
        from: Reduced,
        /// The untranslated sequent.
        #[arg(long)]
        sequent: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a counter machine.
    Simulate {
        #[arg(long)]
        machine: PathBuf,
        /// `state,p,q`
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Print the machine that accepts whenever the input halts.
    Normalize {
        #[arg(long)]
        machine: PathBuf,
    },
    /// Print theta for a machine, and the goal sequent for an ID.
    Encode {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        id: Option<String>,
    },
    /// Run a machine and compile an accepting run into a proof.
    Certify {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded cut-free proof search.
    Search {
        #[arg(long)]
        sequent: String,
        #[arg(long, default_value = "cll")]
        system: String,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        contractions: Option<usize>,
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for a finite phase model falsifying a sequent.
    Refute {
        #[arg(long)]
        sequent: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print generated phase models.
    Models {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Comma-separated atom names to value.
        #[arg(long, default_value = "p")]
        atoms: String,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
}

type Outcome = Result<u8, String>;

/// Writes to stdout, newline-terminated. A closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            emit(text);
            Ok(())
        }
    }
}

fn load_proof(path: &Path) -> Result<Proof, String> {
    proof_from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_machine(path: &Path) -> Result<CounterMachine, String> {
    parse_machine(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn system(name: &str) -> Result<SystemConfig, String> {
    SystemConfig::by_name(name).ok_or_else(|| {
        let names: Vec<&str> = SystemConfig::ALL.iter().map(|(n, _)| *n).collect();
        format!("unknown system `{name}` (one of {})", names.join(", "))
    })
}

fn sequent(text: &str) -> Result<Sequent, String> {
    parse_sequent(text, LanguageId::L).map_err(|e| format!("`{text}`: {e}"))
}

/// `s1,3,0` or `(s1, 3, 0)`
fn machine_id(text: &str) -> Result<MachineId, String> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let bad = || format!("bad ID `{text}`, expected `state,p,q`");
    let [s, p, q] = parts[..] else { return Err(bad()) };
    let p = p.parse().map_err(|_| bad())?;
    let q = q.parse().map_err(|_| bad())?;
    Ok(MachineId::new(s, p, q))
}

fn model_json(m: &PhaseModel) -> Value {
    let s = &m.space;
    let list = |x: linlog::phase::ElemSet| x.iter().collect::<Vec<_>>();
    json!({
        "elements": s.size(),
        "unit": s.unit(),
        "table": s.table(),
        "bottom": list(s.bottom()),
        "valuation": m.valuation.iter().map(|(p, v)| (p.clone(), json!(list(*v)))).collect::<serde_json::Map<_, _>>(),
    })
}

fn report(format: Format, text: &str, value: Value) {
    match format {
        Format::Text => emit(text),
        Format::Json => emit(&value.to_string()),
    }
}

fn exec(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Check { proof, system: name } => {
            let cfg = system(&name)?;
            let p = load_proof(&proof)?;
            let r = check_proof(&p, &cfg);
            match &r.failure {
                None => report(format, "ok", json!({"ok": true})),
                Some(f) => report(
                    format,
                    &format!("rejected at {:?}: {}", f.path, f.error),
                    json!({"ok": false, "path": f.path, "error": f.error.to_string()}),
                ),
            }
            Ok(if r.ok { POSITIVE } else { NEGATIVE })
        }
        Command::Translate { text, to } => {
            let which = TranslationId::from_name(&to).ok_or_else(|| format!("unknown translation `{to}`"))?;
            let out = if text.contains("|-") {
                let s = sequent(&text)?;
                let t = match which {
                    TranslationId::TI => {
                        for f in s.formulas() {
                            LanguageId::LI.check(f).map_err(|e| e.to_string())?;
                        }
                        Sequent::new(translate_multiset(&s.ante, ti), translate_multiset(&s.succ, ti))
                    }
                    _ => Sequent::new(translate_multiset(&s.ante, tl), translate_multiset(&s.succ, tr)),
                };
                t.to_string()
            } else {
                let f = parse_formula(&text, LanguageId::L).map_err(|e| format!("`{text}`: {e}"))?;
                translate(&f, which).map_err(|e| e.to_string())?.to_string()
            };
            report(format, &out, json!({"result": out}));
            Ok(POSITIVE)
        }
        Command::Transform { proof, from, out } => {
            let p = load_proof(&proof)?;
            let res = match from {
                Classical::Cll => transform_cll_to_cllr(&p),
                Classical::Ill => transform_ill_to_illr(&p),
            };
            match res {
                Ok(q) => {
                    write_or_print(&out, &proof_to_json(&q))?;
                    Ok(POSITIVE)
                }
                Err(e) => {
                    report(format, &format!("cannot transform: {e}"), json!({"error": e.to_string()}));
                    Ok(NEGATIVE)
                }
            }
        }
        Command::Reduce {
            proof,
            from,
            sequent: text,
            out,
        } => {
            let p = load_proof(&proof)?;
            let s = sequent(&text)?;
            let res = match from {
                Reduced::Cllr => reduce_back_to_cll(&p, &s.ante, &s.succ),
                Reduced::Illr => {
                    let [c] = s.succ.as_slice() else {
                        return Err("an intuitionistic sequent has one succedent formula".into());
                    };
                    reduce_back_to_ill(&p, &s.ante, c)
                }
            };
            match res {
                Ok(q) => {
                    write_or_print(&out, &proof_to_json(&q))?;
                    Ok(POSITIVE)
                }
                Err(e) => {
                    report(format, &format!("cannot reduce: {e}"), json!({"error": e.to_string()}));
                    Ok(NEGATIVE)
                }
            }
        }
        Command::Simulate { machine, id, budget } => {
            let m = load_machine(&machine)?;
            let start = machine_id(&id)?;
            let outcome = run(&m, &start, budget).map_err(|e| e.to_string())?;
            let verdict = match outcome.accepted() {
                Some(true) => "accepted",
                Some(false) => "rejected",
                None => "budget exhausted",
            };
            let lines: Vec<String> = outcome.ids().iter().map(ToString::to_string).collect();
            report(
                format,
                &format!("{}\n{verdict}", lines.join("\n")),
                json!({"result": verdict, "ids": outcome.ids()}),
            );
            Ok(match outcome {
                RunOutcome::Halted(r) if r.accepted => POSITIVE,
                RunOutcome::Halted(_) => NEGATIVE,
                RunOutcome::BudgetExhausted { .. } => UNKNOWN,
            })
        }
        Command::Normalize { machine } => {
            let m = load_machine(&machine)?;
            emit(&normalize(&m).to_string());
            Ok(POSITIVE)
        }
        Command::Encode { machine, id } => {
            let m = load_machine(&machine)?;
            let enc = encode_theta(&m);
            let g = match id {
                Some(id) => Some(goal(&enc, &machine_id(&id)?).map_err(|e| e.to_string())?),
                None => None,
            };
            let mut text: Vec<String> = enc.components.iter().map(|(l, f)| format!("{l}: {f}")).collect();
            text.push(format!("theta: {}", enc.theta));
            if let Some(g) = &g {
                text.push(format!("goal: {g}"));
            }
            let comps: Vec<Value> = enc
                .components
                .iter()
                .map(|(l, f)| json!({"label": l, "formula": f.to_string()}))
                .collect();
            report(
                format,
                &text.join("\n"),
                json!({"components": comps, "theta": enc.theta.to_string(), "goal": g.map(|g| g.to_string())}),
            );
            Ok(POSITIVE)
        }
        Command::Certify {
            machine,
            id,
            budget,
            out,
        } => {
            let m = load_machine(&machine)?;
            let start = machine_id(&id)?;
            match certify_acceptance(&m, &start, budget).map_err(|e| e.to_string())? {
                Certification::Proved(p) => {
                    write_or_print(&out, &proof_to_json(&p))?;
                    if out.is_some() {
                        report(
                            format,
                            &format!("proved {}", p.conclusion),
                            json!({"result": "proved", "conclusion": p.conclusion.to_string(), "size": p.size()}),
                        );
                    }
                    Ok(POSITIVE)
                }
                Certification::Rejected(r) => {
                    let last = r.last().to_string();
                    report(
                        format,
                        &format!("rejected: halts at {last}"),
                        json!({"result": "rejected", "last": last}),
                    );
                    Ok(NEGATIVE)
                }
                Certification::BudgetExhausted => {
                    report(format, "budget exhausted", json!({"result": "budget exhausted"}));
                    Ok(UNKNOWN)
                }
            }
        }
        Command::Search {
            sequent: text,
            system: name,
            max_depth,
            contractions,
            max_nodes,
            out,
        } => {
            let cfg = system(&name)?;
            let s = sequent(&text)?;
            cfg.admits_sequent(&s).map_err(|e| format!("`{text}` is not a {name} sequent: {e}"))?;
            let d = SearchBudget::default();
            let budget = SearchBudget {
                max_depth: max_depth.unwrap_or(d.max_depth),
                max_contractions_per_branch: contractions.unwrap_or(d.max_contractions_per_branch),
                max_nodes: max_nodes.unwrap_or(d.max_nodes),
            };
            match prove(&s, &cfg, &budget) {
                SearchResult::Proved(p) => {
                    write_or_print(&out, &proof_to_json(&p))?;
                    if out.is_some() {
                        report(format, "proved", json!({"result": "proved", "size": p.size()}));
                    }
                    Ok(POSITIVE)
                }
                SearchResult::Refuted => {
                    report(format, "refuted", json!({"result": "refuted"}));
                    Ok(NEGATIVE)
                }
                SearchResult::Exhausted => {
                    report(format, "exhausted", json!({"result": "exhausted"}));
                    Ok(UNKNOWN)
                }
            }
        }
        Command::Refute { sequent: text, max_size, out } => {
            let s = sequent(&text)?;
            let opts = CountermodelOptions {
                max_size,
                seed: cli.seed,
                jobs: cli.jobs,
                ..CountermodelOptions::default()
            };
            match find_countermodel_with(&s, &opts) {
                Some(m) => {
                    match format {
                        Format::Text => write_or_print(&out, &print_model(&m))?,
                        Format::Json => {
                            if let Some(p) = &out {
                                fs::write(p, print_model(&m)).map_err(|e| format!("{}: {e}", p.display()))?;
                            }
                            emit(&json!({"result": "countermodel", "model": model_json(&m)}).to_string());
                        }
                    }
                    Ok(POSITIVE)
                }
                None => {
                    report(format, "not found", json!({"result": "not found"}));
                    Ok(UNKNOWN)
                }
            }
        }
        Command::Models { max_size, atoms, limit } => {
            let atoms: Vec<String> = atoms
                .split(',')
                .map(|a| a.trim().to_string())
                .filter(|a| !a.is_empty())
                .collect();
            let models: Vec<PhaseModel> = generate_models(cli.seed, max_size, &atoms).take(limit).collect();
            match format {
                Format::Text => {
                    let texts: Vec<String> = models.iter().map(print_model).collect();
                    emit(&texts.join("\n"));
                }
                Format::Json => emit(&Value::Array(models.iter().map(model_json).collect()).to_string()),
            }
            Ok(POSITIVE)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { POSITIVE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match exec(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
