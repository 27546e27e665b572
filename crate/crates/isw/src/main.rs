use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use isw_core::corpus::{corpus, CorpusMember};
use isw_core::report::{analyze, AnalysisOptions, AnalysisReport, Field};
use isw_core::series::{conjecture_check, ConjectureVerdict};
use isw_core::{Error, InverseSemigroup, Limits, SemigroupFile};

const EXIT_INVALID: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "isw",
    version,
    about = "Congruences, centrality and nilpotence of finite inverse semigroups"
)]
struct Cli {
    /// Iteration budget for a single exhaustive scan
    #[arg(long, global = true, env = "ISW_BUDGET")]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a table file is an inverse semigroup
    Validate { path: PathBuf },
    /// Report centers, series and nilpotence data for a table file
    Analyze {
        path: PathBuf,
        /// Highest level for the Mal'cev search and the ζ_n = H ∩ μ_n rows
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Write the standard corpus as table files
    Corpus { outdir: PathBuf },
    /// Compare ζ_n with H ∩ μ_n
    Conjecture(ConjectureArgs),
}

#[derive(Args)]
struct ConjectureArgs {
    /// Table file to check
    #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
    path: Option<PathBuf>,
    /// Check every corpus member instead of a file
    #[arg(long)]
    corpus: bool,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Where counterexample files are written
    #[arg(long, default_value = ".")]
    witness_dir: PathBuf,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Io(String),
    Invalid(Error),
}

fn load(path: &Path, limits: &Limits) -> Result<(Option<String>, InverseSemigroup), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let file = SemigroupFile::from_slice(&bytes)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let s = file.to_semigroup(limits).map_err(|e| match e {
        Error::Parse(msg) => Failure::Io(format!("{}: {msg}", path.display())),
        other => Failure::Invalid(other),
    })?;
    Ok((file.name, s))
}

fn witness_json(e: &Error) -> Value {
    let (kind, witness) = match *e {
        Error::NotAssociative(a, b, c) => ("not_associative", json!([a, b, c])),
        Error::NotRegular(x) => ("not_regular", json!([x])),
        Error::IdempotentsDoNotCommute(e, f) => ("idempotents_do_not_commute", json!([e, f])),
        Error::InverseNotUnique {
            element,
            first,
            second,
        } => ("inverse_not_unique", json!([element, first, second])),
        Error::EntryOutOfRange { a, b, value, .. } => ("entry_out_of_range", json!([a, b, value])),
        Error::RaggedTable { row, .. } => ("ragged_table", json!([row])),
        Error::EmptyTable => ("empty_table", Value::Null),
        Error::OrderTooLarge { order, .. } => ("order_too_large", json!([order])),
        _ => ("other", Value::Null),
    };
    json!({ "valid": false, "kind": kind, "witness": witness, "message": e.to_string() })
}

fn report_failure(f: Failure) -> ExitCode {
    match f {
        Failure::Io(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Failure::Invalid(e) => {
            eprintln!("{}", witness_json(&e));
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn show<T>(field: &Field<T>, render: impl Fn(&T) -> String) -> String {
    match field {
        Field::Computed { value } => render(value),
        Field::Skipped { reason } => format!("skipped ({reason})"),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_text(r: &AnalysisReport) -> String {
    let degree = |v: &isw_core::report::Verdict| match v.degree {
        Some(d) => format!("yes ({d})"),
        None => "no".into(),
    };
    let mut lines = vec![
        format!("name: {}", r.name.as_deref().unwrap_or("-")),
        format!("order: {}, idempotents: {}", r.order, r.idempotents),
        format!(
            "green classes: L {}, R {}, H {}",
            r.green_classes.l, r.green_classes.r, r.green_classes.h
        ),
        format!(
            "group: {}, clifford: {}",
            yes_no(r.is_group),
            yes_no(r.is_clifford)
        ),
        format!("metacenter: {:?}", r.metacenter),
        format!("classical center: {:?}", r.classical_center),
        format!(
            "congruences: {}",
            show(&r.congruence_count, |c| c.to_string())
        ),
        format!(
            "center congruence: {}",
            show(&r.center_congruence, |c| {
                let tag = if c.is_identity {
                    "identity"
                } else if c.is_universal {
                    "universal"
                } else {
                    "proper"
                };
                format!("{tag} {:?}", c.blocks)
            })
        ),
        format!("nilpotent: {}", show(&r.nilpotent, degree)),
        format!("solvable: {}", show(&r.solvable, degree)),
        format!(
            "KMM class: {}",
            show(&r.kmm, |k| k.class.map_or("none".into(), |c| c.to_string()))
        ),
        format!(
            "Mal'cev class: {}",
            show(&r.malcev, |m| match m.class {
                Some(c) => c.to_string(),
                None => format!("none up to {}", m.searched_up_to),
            })
        ),
    ];
    for row in &r.conjecture {
        lines.push(format!(
            "zeta_{} = H ∩ mu_{}: {}",
            row.n,
            row.n,
            show(&row.result, |c| match c.witness {
                None => "holds".into(),
                Some([a, b]) => format!("fails at ({a}, {b})"),
            })
        ));
    }
    lines.join("\n")
}

fn cmd_validate(path: &Path, limits: &Limits) -> ExitCode {
    match load(path, limits) {
        Ok((_, s)) => {
            println!(
                "valid inverse semigroup of order {} with {} idempotents",
                s.order(),
                s.idempotents().len()
            );
            ExitCode::SUCCESS
        }
        Err(f) => report_failure(f),
    }
}

fn cmd_analyze(path: &Path, max_n: usize, as_json: bool, limits: &Limits) -> ExitCode {
    let (name, s) = match load(path, limits) {
        Ok(x) => x,
        Err(f) => return report_failure(f),
    };
    match analyze(
        name.as_deref(),
        &s,
        &AnalysisOptions {
            max_n,
            limits: *limits,
        },
    ) {
        Ok(report) if as_json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            ExitCode::SUCCESS
        }
        Ok(report) => {
            println!("{}", render_text(&report));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_COUNTEREXAMPLE)
        }
    }
}

fn cmd_corpus(outdir: &Path) -> ExitCode {
    let members = corpus().expect("corpus constructors are valid");
    let written = fs::create_dir_all(outdir).and_then(|_| {
        for m in &members {
            let file = SemigroupFile::new(Some(m.name), &m.semigroup);
            fs::write(outdir.join(format!("{}.json", m.name)), file.to_bytes())?;
        }
        Ok(())
    });
    match written {
        Ok(()) => {
            println!("wrote {} files to {}", members.len(), outdir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", outdir.display());
            ExitCode::from(EXIT_IO)
        }
    }
}

/// Everything needed to reproduce a counterexample.
fn witness_document(name: &str, s: &InverseSemigroup, v: &ConjectureVerdict) -> Value {
    json!({
        "name": name,
        "n": v.n,
        "semigroup": SemigroupFile::new(Some(name), s),
        "zeta_n": v.lhs,
        "h_meet_mu_n": v.rhs,
        "witness": v.witness.map(|(a, b)| [a, b]),
    })
}

fn write_witness(
    dir: &Path,
    name: &str,
    s: &InverseSemigroup,
    v: &ConjectureVerdict,
) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("counterexample_{name}_n{}.json", v.n));
    let mut bytes =
        serde_json::to_vec_pretty(&witness_document(name, s, v)).expect("plain data serializes");
    bytes.push(b'\n');
    fs::write(&path, bytes)?;
    Ok(path)
}

fn cmd_conjecture(args: &ConjectureArgs, limits: &Limits) -> ExitCode {
    let members: Vec<(String, InverseSemigroup)> = if args.corpus {
        corpus()
            .expect("corpus constructors are valid")
            .into_iter()
            .map(|CorpusMember { name, semigroup }| (name.to_string(), semigroup))
            .collect()
    } else {
        let path = args
            .path
            .as_ref()
            .expect("clap requires a path without --corpus");
        match load(path, limits) {
            Ok((name, s)) => {
                let fallback = path
                    .file_stem()
                    .map_or("input".into(), |x| x.to_string_lossy().into_owned());
                vec![(name.unwrap_or(fallback), s)]
            }
            Err(f) => return report_failure(f),
        }
    };

    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    for (name, s) in &members {
        let row = match conjecture_check(s, args.n, limits) {
            Ok(v) if v.holds => json!({ "name": name, "n": args.n, "status": "holds" }),
            Ok(v) => {
                let file = match write_witness(&args.witness_dir, name, s, &v) {
                    Ok(p) => p,
                    Err(e) => {
                        eprintln!("error: writing witness: {e}");
                        return ExitCode::from(EXIT_IO);
                    }
                };
                counterexamples.push(file.clone());
                json!({ "name": name, "n": args.n, "status": "fails", "witness": v.witness.map(|(a, b)| [a, b]), "file": file })
            }
            Err(
                e @ (Error::BudgetExceeded { .. }
                | Error::OrderTooLarge { .. }
                | Error::LevelTooLarge { .. }),
            ) => {
                json!({ "name": name, "n": args.n, "status": "skipped", "reason": e.to_string() })
            }
            Err(e) => {
                eprintln!("error: {name}: {e}");
                return ExitCode::from(EXIT_COUNTEREXAMPLE);
            }
        };
        rows.push(row);
    }

    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "n": args.n, "rows": rows }))
                .expect("rows serialize")
        );
    } else {
        for row in &rows {
            let detail = match row["status"].as_str() {
                Some("fails") => format!(
                    "fails at {} -> {}",
                    row["witness"],
                    row["file"].as_str().unwrap_or("")
                ),
                Some("skipped") => format!("skipped ({})", row["reason"].as_str().unwrap_or("")),
                _ => "holds".into(),
            };
            println!(
                "{:<20} n={}  {detail}",
                row["name"].as_str().unwrap_or(""),
                args.n
            );
        }
    }
    if counterexamples.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_COUNTEREXAMPLE)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match cli.budget {
        Some(b) => Limits::default().with_budget(b),
        None => Limits::default(),
    };
    match &cli.command {
        Command::Validate { path } => cmd_validate(path, &limits),
        Command::Analyze { path, max_n, json } => cmd_analyze(path, *max_n, *json, &limits),
        Command::Corpus { outdir } => cmd_corpus(outdir),
        Command::Conjecture(args) => cmd_conjecture(args, &limits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use isw_core::construct::chain;
    use isw_core::{Congruence, Tolerance};

    #[test]
    fn witness_file_reproduces_the_failure() {
        let s = chain(2).unwrap();
        let verdict = ConjectureVerdict {
            n: 1,
            holds: false,
            lhs: Congruence::identity(&s),
            rhs: Tolerance::from_fn(2, |_, _| true),
            witness: Some((0, 1)),
        };
        let dir = std::env::temp_dir().join(format!("isw-witness-{}", std::process::id()));
        let path = write_witness(&dir, "chain2", &s, &verdict).unwrap();
        let doc: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        assert_eq!(doc["witness"], json!([0, 1]));
        assert_eq!(doc["semigroup"]["table"], json!([[0, 1], [1, 1]]));
        assert_eq!(doc["h_meet_mu_n"]["pairs"], json!([[0, 0], [0, 1], [1, 1]]));
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn validation_witnesses() {
        let v = witness_json(&Error::IdempotentsDoNotCommute(0, 1));
        assert_eq!(v["kind"], "idempotents_do_not_commute");
        assert_eq!(v["witness"], json!([0, 1]));
    }
}
