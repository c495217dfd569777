use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hcseq::commutator::{
    largest_from_equalities, largest_with_hc1_hc2, reduced_equalities, to_equalities,
    to_extended_equalities, Example,
};
use hcseq::format::{self, AnyEquality, EqualitySet, FormatError};
use hcseq::hc::{self, Outcome};
use hcseq::learn::{learn, oracle_from_ext_rep, oracle_from_rep, LearnOptions};
use hcseq::{Elem, ExtRep, Lattice, Rep};
use serde_json::{json, Value};

/// Finite representations of antitone functions into finite lattices and
/// the higher commutator sequences they encode.
#[derive(Parser)]
#[command(name = "hcseq", version)]
struct Cli {
    /// Lattice used when a document does not name one: a built-in name
    /// (div52, chainN) or a JSON file.
    #[arg(long, global = true)]
    lattice: Option<String>,

    /// Representation file; standard input when absent.
    #[arg(long, global = true)]
    rep: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Value of F_G at a finite point.
    Eval {
        #[arg(long)]
        point: String,
    },
    /// Value of the extension at a point that may contain `inf`.
    EvalExt {
        #[arg(long)]
        point: String,
    },
    /// Canonical representation.
    Canonical,
    /// A complete representation of the extension.
    Complete,
    /// Whether a finite subset of the extended graph is a complete
    /// representation of F_G.
    CheckComplete {
        #[arg(long)]
        extrep: Option<PathBuf>,
    },
    /// Minimal generators and complement maxima of {x : F_G(x) <= alpha}.
    Sublevel {
        #[arg(long)]
        alpha: String,
    },
    /// HC property report with counterexamples.
    Props,
    /// Whether HC1, HC2, HC3, HC4, HC7 and HC8 all hold.
    Admissible,
    /// Learn a representation from a hidden one by queries.
    Learn {
        /// Representation the oracle answers from.
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_rounds: usize,
    },
    /// Commutator equalities from the canonical representation.
    ToEqualities {
        /// Drop equalities that follow from the others together with HC1 and HC2.
        #[arg(long)]
        reduced: bool,
    },
    /// Extended commutator equalities from a complete representation.
    ToExtendedEqualities,
    /// The sequence described by a set of equalities.
    FromEqualities {
        /// Equality file; standard input when absent.
        #[arg(long)]
        equalities: Option<PathBuf>,
        /// Largest sequence that also satisfies HC1 and HC2.
        #[arg(long)]
        hc: bool,
    },
    /// A built-in representation: div52, B or B7.
    Example { name: String },
}

enum CliError {
    Io(String),
    Parse(FormatError),
    Domain(hcseq::Error),
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Parse(e)
    }
}

impl From<hcseq::Error> for CliError {
    fn from(e: hcseq::Error) -> Self {
        CliError::Domain(e)
    }
}

enum Output {
    Doc(Value, String),
    Bool(bool),
}

fn read_source(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load_lattice(name: &str) -> Result<Arc<Lattice>, CliError> {
    if let Some(l) = Lattice::builtin(name) {
        return Ok(Arc::new(l));
    }
    let text = read_source(Some(Path::new(name)))?;
    Ok(Arc::new(format::lattice_from_json(&text)?))
}

struct Inputs {
    lattice: Option<Arc<Lattice>>,
    rep_path: Option<PathBuf>,
}

impl Inputs {
    fn rep(&self) -> Result<Rep, CliError> {
        let text = read_source(self.rep_path.as_deref())?;
        Ok(format::rep_from_json(&text, self.lattice.as_ref())?)
    }

    fn rep_from(&self, path: &Path) -> Result<Rep, CliError> {
        let text = read_source(Some(path))?;
        Ok(format::rep_from_json(&text, self.lattice.as_ref())?)
    }

    fn ext_rep(&self, path: Option<&Path>, lattice: &Arc<Lattice>) -> Result<ExtRep, CliError> {
        let text = read_source(path)?;
        let lattice = self.lattice.as_ref().unwrap_or(lattice);
        Ok(format::ext_rep_from_json(&text, Some(lattice))?)
    }
}

fn element(l: &Lattice, name: &str) -> Result<Elem, CliError> {
    l.find(name)
        .ok_or_else(|| CliError::Domain(hcseq::Error::UnknownElement(name.to_string())))
}

fn rep_table(g: &Rep) -> String {
    g.points()
        .map(|(v, e)| format!("{v}\t{}\n", g.lattice().name(e)))
        .collect()
}

fn ext_rep_table(h: &ExtRep) -> String {
    h.points()
        .map(|(v, e)| format!("{v}\t{}\n", h.lattice().name(e)))
        .collect()
}

fn equality_table(set: &EqualitySet) -> String {
    set.equalities
        .iter()
        .map(|e| format!("{}\n", e.display(&set.lattice)))
        .collect()
}

fn with_report(mut doc: Value, report: Value) -> Value {
    doc["report"] = report;
    doc
}

fn execute(cli: Cli) -> Result<Output, CliError> {
    let lattice = cli.lattice.as_deref().map(load_lattice).transpose()?;
    let inputs = Inputs {
        lattice,
        rep_path: cli.rep,
    };
    let out = match cli.command {
        Command::Eval { point } => {
            let g = inputs.rep()?;
            let x = format::parse_point(&point)?;
            let x = x.to_finite().ok_or_else(|| {
                CliError::Parse(FormatError::Invalid(format!(
                    "{point} is not finite; use eval-ext"
                )))
            })?;
            let v = g.lattice().name(g.eval(&x)?).to_string();
            Output::Doc(
                json!({ "point": format::nat_vec_to_json(&x), "value": v }),
                format!("{v}\n"),
            )
        }
        Command::EvalExt { point } => {
            let g = inputs.rep()?;
            let x = format::parse_point(&point)?;
            let v = g.lattice().name(g.eval_ext(&x)?).to_string();
            let witness = g.witness(&x)?;
            Output::Doc(
                json!({
                    "point": format::ext_vec_to_json(&x),
                    "value": v,
                    "witness": format::nat_vec_to_json(&witness),
                }),
                format!("{v}\n"),
            )
        }
        Command::Canonical => {
            let c = inputs.rep()?.canonical();
            Output::Doc(format::rep_to_json(&c), rep_table(&c))
        }
        Command::Complete => {
            let h = inputs.rep()?.complete()?;
            Output::Doc(format::ext_rep_to_json(&h), ext_rep_table(&h))
        }
        Command::CheckComplete { extrep } => {
            if inputs.rep_path.is_none() && extrep.is_none() {
                return Err(CliError::Io(
                    "check-complete needs --rep or --extrep".into(),
                ));
            }
            let g = inputs.rep()?;
            let h = inputs.ext_rep(extrep.as_deref(), g.lattice())?;
            Output::Bool(g.check_complete(&h)?)
        }
        Command::Sublevel { alpha } => {
            let g = inputs.rep()?;
            let a = element(g.lattice(), &alpha)?;
            let u = g.sublevel(a)?;
            let maxima = u.complement_maxima()?;
            let table = u
                .gens()
                .iter()
                .map(|v| format!("min\t{v}\n"))
                .chain(maxima.iter().map(|v| format!("max\t{v}\n")));
            Output::Doc(
                format::upset_to_json(&u, g.lattice(), a, &maxima),
                table.collect(),
            )
        }
        Command::Props => {
            let g = inputs.rep()?;
            let report = hc::report(&g)?;
            let l = g.lattice();
            let mut rows = Vec::new();
            let mut table = String::new();
            for (p, o) in &report.outcomes {
                let (holds, detail) = match o {
                    Outcome::Holds => (Value::Bool(true), Value::Null),
                    Outcome::Fails(w) => (Value::Bool(false), Value::String(w.describe(l))),
                    Outcome::Skipped(q) => {
                        (Value::Null, Value::String(format!("undecided: {q} fails")))
                    }
                };
                table.push_str(&format!(
                    "{p}\t{}\t{}\n",
                    match holds {
                        Value::Bool(b) => b.to_string(),
                        _ => "-".into(),
                    },
                    detail.as_str().unwrap_or("")
                ));
                rows.push(
                    json!({ "property": p.label(), "holds": holds, "counterexample": detail }),
                );
            }
            let admissible = report.admissible();
            table.push_str(&format!("admissible\t{admissible}\n"));
            Output::Doc(
                json!({ "properties": rows, "admissible": admissible }),
                table,
            )
        }
        Command::Admissible => Output::Bool(hc::is_admissible(&inputs.rep()?)?),
        Command::Learn { oracle, max_rounds } => {
            let hidden = inputs.rep_from(&oracle)?;
            let opts = LearnOptions {
                max_rounds,
                ..LearnOptions::default()
            };
            let learned = learn(&oracle_from_rep(hidden), opts)?;
            let report = json!({ "rounds": learned.rounds(), "queries": learned.queries });
            let table = format!(
                "{}# rounds {}, queries {}\n",
                rep_table(&learned.rep),
                learned.rounds(),
                learned.queries
            );
            Output::Doc(
                with_report(format::rep_to_json(&learned.rep), report),
                table,
            )
        }
        Command::ToEqualities { reduced } => {
            let g = inputs.rep()?;
            let eqs = if reduced {
                reduced_equalities(&g)?
            } else {
                to_equalities(&g)?
            };
            let set = EqualitySet {
                lattice: g.lattice().clone(),
                equalities: eqs.into_iter().map(AnyEquality::Plain).collect(),
            };
            Output::Doc(format::equalities_to_json(&set), equality_table(&set))
        }
        Command::ToExtendedEqualities => {
            let g = inputs.rep()?;
            let set = EqualitySet {
                lattice: g.lattice().clone(),
                equalities: to_extended_equalities(&g)?
                    .into_iter()
                    .map(AnyEquality::Extended)
                    .collect(),
            };
            Output::Doc(format::equalities_to_json(&set), equality_table(&set))
        }
        Command::FromEqualities { equalities, hc } => {
            let text = read_source(equalities.as_deref())?;
            let set = format::equalities_from_json(&text, inputs.lattice.as_ref())?;
            let l = set.lattice.clone();
            let (rep, attained) = match set.plain() {
                Some(plain) if hc => largest_with_hc1_hc2(l.clone(), &plain)?,
                Some(plain) => largest_from_equalities(l.clone(), &plain)?,
                None => {
                    // the unique antitone function through the described points
                    let points = hcseq::commutator::extended_points(l.clone(), &set.extended())?;
                    let rep = learn(&oracle_from_ext_rep(points), LearnOptions::default())?.rep;
                    let attained = set
                        .equalities
                        .iter()
                        .map(|e| hcseq::commutator::satisfies(&rep, e))
                        .collect::<Result<_, _>>()?;
                    (rep, attained)
                }
            };
            let rep = rep.canonical();
            let report: Vec<Value> = set
                .equalities
                .iter()
                .zip(&attained)
                .map(|(e, ok)| json!({ "equality": e.display(&l), "attained": ok }))
                .collect();
            let mut table = rep_table(&rep);
            for (e, ok) in set.equalities.iter().zip(&attained) {
                if !ok {
                    table.push_str(&format!("# not attained: {}\n", e.display(&l)));
                }
            }
            Output::Doc(
                with_report(format::rep_to_json(&rep), Value::Array(report)),
                table,
            )
        }
        Command::Example { name } => {
            let g = name.parse::<Example>()?.rep();
            Output::Doc(format::rep_to_json(&g), rep_table(&g))
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.format;
    match execute(cli) {
        Ok(Output::Doc(doc, table)) => {
            match fmt {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("json values print")
                ),
                Format::Table => print!("{table}"),
            }
            ExitCode::SUCCESS
        }
        Ok(Output::Bool(b)) => {
            match fmt {
                Format::Json => println!("{}", json!({ "result": b })),
                Format::Table => println!("{b}"),
            }
            if b {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
