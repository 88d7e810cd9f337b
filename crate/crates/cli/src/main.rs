use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ordlen::io;
use ordlen::verify::{self, FailureRecord, Suite};
use ordlen::{Error, FgModule, Ordinal};

#[derive(Parser)]
#[command(name = "ordlen", version, about = "Ordinal length of posets and modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate `A + B` (ordinal sum), `A # B` (shuffle sum) or `A * B`
    /// (`A` copies of `B`).
    Ord {
        /// The expression, either as one argument or split around the operator.
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Length of a module, poset or expression given as a JSON file.
    Len {
        kind: Kind,
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Largest poset built when an expression must be flattened.
        #[arg(long, default_value_t = 4096)]
        bound: usize,
    },
    /// Run a verification suite, or replay recorded failures.
    Verify {
        #[arg(required_unless_present = "replay")]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Oracle or enumeration bound; each suite has its own default.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        json: bool,
        /// A report or a single failure record to re-run.
        #[arg(long, conflicts_with = "suite")]
        replay: Option<PathBuf>,
    },
    /// Lengths, homology and the acyclicity criterion for a complex.
    Complex {
        file: PathBuf,
        /// The level `e ≥ -1` of the criterion.
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        level: i64,
        #[arg(long)]
        json: bool,
    },
    /// Kernel, image and cokernel of a module map.
    Map {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Module,
    Poset,
    Pwoexpr,
}

/// Either a finished run with its exit code or a usage/input error.
type Outcome = Result<ExitCode, Error>;

const FOUND: u8 = 1;
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Ord { expr } => ord(&expr),
        Command::Len { kind, file, json, bound } => len(kind, &file, json, bound),
        Command::Verify { replay: Some(file), json, .. } => replay(&file, json),
        Command::Verify { suite, seed, trials, bound, json, .. } => {
            run(suite.as_deref().unwrap_or_default(), seed, trials, bound, json)
        }
        Command::Complex { file, level, json } => complex(&file, level, json),
        Command::Map { file, json } => map(&file, json),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(USAGE)
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

/// Splits the words of the expression at the single standalone operator.
fn split_expr(words: &[String]) -> Result<(String, char, String), Error> {
    let joined = words.join(" ");
    let tokens: Vec<&str> = joined.split_whitespace().collect();
    let ops: Vec<usize> = (0..tokens.len()).filter(|&i| matches!(tokens[i], "+" | "#" | "*")).collect();
    match ops.as_slice() {
        [i] if *i > 0 && *i + 1 < tokens.len() => {
            Ok((tokens[..*i].join(" "), tokens[*i].chars().next().expect("operator"), tokens[*i + 1..].join(" ")))
        }
        _ => Err(Error::Invalid(format!("expected `A op B` with op one of + # * set off by spaces, got `{joined}`"))),
    }
}

fn ord(words: &[String]) -> Outcome {
    let (l, op, r) = split_expr(words)?;
    let (a, b): (Ordinal, Ordinal) = (l.parse()?, r.parse()?);
    let result = match op {
        '+' => a.ord_sum(&b),
        '#' => a.shuffle_sum(&b),
        _ => a.paper_product(&b),
    };
    println!("{result}");
    Ok(ExitCode::SUCCESS)
}

fn module_summary(m: &FgModule) -> Value {
    json!({
        "length": m.length().to_string(),
        "dimension": m.dimension(),
        "generic_length": m.generic_length().to_string(),
        "unmixed": m.is_unmixed(),
        "canonical": m.canonical_form().to_string(),
    })
}

fn len(kind: Kind, file: &Path, as_json: bool, bound: usize) -> Outcome {
    let (length, details) = match kind {
        Kind::Module => {
            let m = io::read_module(file)?;
            (m.length(), module_summary(&m))
        }
        Kind::Poset => {
            let p = io::read_poset(file)?;
            let table = p.rank_all();
            let details = json!({"length": table.length.to_string(), "ranks": table.rank});
            (table.length, details)
        }
        Kind::Pwoexpr => {
            let e = io::read_pwo_expr(file)?;
            let length = match e.symbolic_length() {
                Err(Error::SumWithoutMaximum) => e.flatten(bound)?.rank_all().length,
                other => other?,
            };
            (length.clone(), json!({"length": length.to_string()}))
        }
    };
    if as_json {
        print_json(&details);
    } else {
        println!("{length}");
    }
    Ok(ExitCode::SUCCESS)
}

fn run(name: &str, seed: u64, trials: u64, bound: Option<usize>, as_json: bool) -> Outcome {
    let suite = Suite::from_name(name)?;
    let report = verify::run_suite(suite, seed, trials, bound);
    if as_json {
        print_json(&serde_json::to_value(&report).expect("report serializes"));
    } else {
        println!(
            "{}: seed {} bound {}, {} trials, {} checked, {} vacuous, {} failures ({} ms)",
            report.suite,
            report.seed,
            report.bound,
            report.trials,
            report.checked,
            report.vacuous,
            report.failures.len(),
            report.elapsed_ms
        );
        for f in &report.failures {
            println!("{}", serde_json::to_string(f).expect("record serializes"));
        }
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(FOUND) })
}

fn replay(file: &Path, as_json: bool) -> Outcome {
    let v = io::read_json(file)?;
    let records: Vec<FailureRecord> = match v.get("failures") {
        Some(list) => serde_json::from_value(list.clone()),
        None => serde_json::from_value(v).map(|r| vec![r]),
    }
    .map_err(|e| Error::Invalid(format!("not a report or failure record: {e}")))?;
    let mut reproduced = Vec::new();
    for r in &records {
        if let Some(again) = verify::replay(r)? {
            reproduced.push(again);
        }
    }
    if as_json {
        print_json(&json!({"replayed": records.len(), "reproduced": reproduced}));
    } else {
        println!("{} of {} failures reproduce", reproduced.len(), records.len());
        for f in &reproduced {
            println!("{}", serde_json::to_string(f).expect("record serializes"));
        }
    }
    Ok(if reproduced.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(FOUND) })
}

fn complex(file: &Path, level: i64, as_json: bool) -> Outcome {
    let c = io::read_complex(file)?;
    let report = c.acyclicity_check(level)?;
    let homology = (0..=c.top())
        .rev()
        .map(|i| c.homology_at(i).map(|h| h.canonical_form().to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if as_json {
        let mut v = report.to_json();
        v["homology"] = json!(homology);
        v["generic_euler_char"] = json!(c.generic_euler_char().to_string());
        print_json(&v);
    } else {
        println!("lowlen {}", report.lowlen);
        println!("hilen  {}", report.hilen);
        for (k, h) in homology.iter().enumerate() {
            println!("H_{} = {h}", c.top() - k);
        }
        println!("level {}: {}", report.level, report.verdict);
    }
    Ok(if report.consistent { ExitCode::SUCCESS } else { ExitCode::from(FOUND) })
}

fn map(file: &Path, as_json: bool) -> Outcome {
    let f = io::read_map(file)?;
    let parts = f.parts();
    let named = [("kernel", &parts.kernel), ("image", &parts.image), ("cokernel", &parts.cokernel)];
    if as_json {
        let v: serde_json::Map<String, Value> = named.iter().map(|(k, m)| (k.to_string(), module_summary(m))).collect();
        print_json(&Value::Object(v));
    } else {
        for (k, m) in named {
            println!("{k:8} {} (length {})", m.canonical_form(), m.length());
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<String> {
        s.split(' ').map(String::from).collect()
    }

    #[test]
    fn operator_splitting() {
        assert_eq!(split_expr(&words("w+1 # w+1")).unwrap(), ("w+1".into(), '#', "w+1".into()));
        assert_eq!(split_expr(&["2 * w".to_string()]).unwrap(), ("2".into(), '*', "w".into()));
        assert!(split_expr(&words("1 + w + 1")).is_err());
        assert!(split_expr(&words("+ w")).is_err());
    }
}
