//! `lcanet`: decide and realize LCA constraints from the command line.
//!
//! Exit status is 0 on success, 1 when the input is not realizable (or a check
//! fails) and 2 on malformed input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use lcanet_core::format::{self, ConstraintFile, ParseError};
use lcanet_core::{
    algorithm_real, extract_leq, extract_strict, plus_closure, realize_pair, verify_realizes,
    verify_strictly_realizes, ClassPartition, Dag, LcaFailure, LcaOrder, LeafSet, Pair,
    PairCondition, RealizabilityVerdict, RealizationReport, Relation,
};

mod error;

use error::CliError;

#[derive(Parser)]
#[command(
    name = "lcanet",
    version,
    about = "Realizability of LCA constraints by DAGs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closure R+ of a constraint file.
    Closure { file: PathBuf },
    /// Decide whether the constraints are realizable.
    Check {
        file: PathBuf,
        /// Decide strict realizability instead.
        #[arg(long)]
        strict: bool,
    },
    /// Build a DAG realizing the constraints.
    Realize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Output::Network)]
        output: Output,
        /// Also write the graph in Graphviz DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Realize order constraints together with incomparability constraints.
    RealizePair {
        file: PathBuf,
        #[arg(long, value_name = "SFILE")]
        incomparable: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Print the relation a DAG displays.
    Extract {
        dag: PathBuf,
        /// Print the strict relation instead.
        #[arg(long)]
        strict: bool,
    },
    /// Check that a DAG realizes a constraint file.
    Verify {
        dag: PathBuf,
        file: PathBuf,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    /// The canonical DAG, shortcuts included.
    Dag,
    /// The canonical DAG without shortcuts.
    Reduced,
    /// The canonical network.
    Network,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lcanet: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(path: &Path) -> impl Fn(ParseError) -> CliError + '_ {
    move |source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    }
}

fn load_relation(path: &Path) -> Result<Relation, CliError> {
    format::parse_relation(&read(path)?).map_err(parse_err(path))
}

fn load_dag(path: &Path) -> Result<Dag, CliError> {
    format::parse_dag(&read(path)?).map_err(parse_err(path))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs one subcommand, appending its report to `out`. `Ok(false)` means a
/// well-formed input that is not realizable or fails the check.
fn run(command: Command, out: &mut String) -> Result<bool, CliError> {
    match command {
        Command::Closure { file } => {
            let r = load_relation(&file)?;
            out.push_str(&format::write_relation(plus_closure(&r).closure()));
            Ok(true)
        }
        Command::Check { file, strict } => {
            let r = load_relation(&file)?;
            let verdict = algorithm_real(&r).verdict;
            write_verdict(out, r.leaf_set(), &verdict, strict);
            Ok(if strict {
                verdict.strict
            } else {
                verdict.realizable
            })
        }
        Command::Realize { file, output, dot } => {
            let r = load_relation(&file)?;
            let result = algorithm_real(&r);
            let Some(graphs) = result.graphs else {
                write_verdict(out, r.leaf_set(), &result.verdict, false);
                return Ok(false);
            };
            let dag = match output {
                Output::Dag => &graphs.dag,
                Output::Reduced => &graphs.reduced,
                Output::Network => &graphs.network,
            };
            out.push_str(&format::write_dag(dag));
            if let Some(path) = dot {
                write_file(&path, &dot_with_classes(dag, &graphs.partition))?;
            }
            Ok(true)
        }
        Command::RealizePair {
            file,
            incomparable,
            dot,
        } => {
            let r_file = ConstraintFile::parse(&read(&file)?).map_err(parse_err(&file))?;
            let s_file =
                ConstraintFile::parse(&read(&incomparable)?).map_err(parse_err(&incomparable))?;
            let names = r_file.names().into_iter().chain(s_file.names());
            let leaves =
                Arc::new(
                    LeafSet::from_names_dedup(names).map_err(|e| CliError::Parse {
                        path: file.clone(),
                        source: e.into(),
                    })?,
                );
            let r = r_file
                .to_relation(leaves.clone())
                .map_err(parse_err(&file))?;
            let s = s_file
                .to_relation(leaves)
                .map_err(parse_err(&incomparable))?;
            let verdict = realize_pair(&r, &s).map_err(|e| CliError::Parse {
                path: incomparable.clone(),
                source: e.into(),
            })?;
            match (verdict.failed, &verdict.network) {
                (None, Some(network)) => {
                    out.push_str(&format::write_dag(network));
                    if let Some(path) = dot {
                        let partition =
                            lcanet_core::equivalence_classes(&plus_closure(&verdict.augmented));
                        write_file(&path, &dot_with_classes(network, &partition))?;
                    }
                    Ok(true)
                }
                (Some(PairCondition::Augmented), _) => {
                    out.push_str("realizable: no\n");
                    out.push_str("augmented constraints are not realizable\n");
                    write_violations(out, r.leaf_set(), &verdict.augmented_verdict);
                    Ok(false)
                }
                _ => {
                    out.push_str("realizable: no\n");
                    let leaves = r.leaf_set();
                    for &(p, q) in &verdict.comparable {
                        out.push_str(&format!(
                            "comparable incomparability constraint: {}\n",
                            fact(leaves, (p, q))
                        ));
                    }
                    Ok(false)
                }
            }
        }
        Command::Extract { dag, strict } => {
            let g = load_dag(&dag)?;
            let r = if strict {
                extract_strict(&g)
            } else {
                extract_leq(&g)
            };
            out.push_str(&format::write_relation(&r));
            Ok(true)
        }
        Command::Verify { dag, file, strict } => {
            let g = load_dag(&dag)?;
            let parsed = ConstraintFile::parse(&read(&file)?).map_err(parse_err(&file))?;
            let r = parsed
                .to_relation(g.leaf_set().clone())
                .map_err(parse_err(&file))?;
            let report = if strict {
                verify_strictly_realizes(&g, &r)
            } else {
                verify_realizes(&g, &r)
            }
            .map_err(|e| CliError::Parse {
                path: file.clone(),
                source: e.into(),
            })?;
            write_report(out, g.leaf_set(), &report, strict);
            Ok(report.ok)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fact(leaves: &LeafSet, (p, q): (Pair, Pair)) -> String {
    format!("({}, {})", leaves.display_pair(p), leaves.display_pair(q))
}

fn write_violations(out: &mut String, leaves: &LeafSet, verdict: &RealizabilityVerdict) {
    for &(p, q) in &verdict.x1_violations {
        out.push_str(&format!("X1 violation: {} in R+\n", fact(leaves, (p, q))));
    }
    for &(p, q) in &verdict.x2_violations {
        out.push_str(&format!(
            "X2 violation: {} in R+ but only {} in tc(R)\n",
            fact(leaves, (q, p)),
            fact(leaves, (p, q))
        ));
    }
}

fn write_verdict(out: &mut String, leaves: &LeafSet, verdict: &RealizabilityVerdict, strict: bool) {
    out.push_str(&format!("realizable: {}\n", yes_no(verdict.realizable)));
    if strict {
        out.push_str(&format!("strict: {}\n", yes_no(verdict.strict)));
    }
    write_violations(out, leaves, verdict);
    if strict {
        if let Some((p, q)) = verdict.asymmetry_witness {
            out.push_str(&format!(
                "asymmetry violation: {} and {} in tc(R)\n",
                fact(leaves, (p, q)),
                fact(leaves, (q, p))
            ));
        }
    }
}

fn order_text(order: LcaOrder) -> &'static str {
    match order {
        LcaOrder::Equal => "equal",
        LcaOrder::Below => "below",
        LcaOrder::Above => "above",
        LcaOrder::Incomparable => "incomparable",
    }
}

fn write_failures(out: &mut String, leaves: &LeafSet, tag: &str, failures: &[LcaFailure]) {
    for f in failures {
        out.push_str(&format!(
            "{tag} violation: {}: first lca is {} the second\n",
            fact(leaves, f.fact),
            order_text(f.observed)
        ));
    }
}

fn write_report(out: &mut String, leaves: &LeafSet, report: &RealizationReport, strict: bool) {
    let what = if strict {
        "strictly realizes"
    } else {
        "realizes"
    };
    out.push_str(&format!("{what}: {}\n", yes_no(report.ok)));
    for &p in &report.undefined_lcas {
        out.push_str(&format!("undefined lca: {}\n", leaves.display_pair(p)));
    }
    write_failures(out, leaves, "I0", &report.i0_failures);
    write_failures(out, leaves, "I1", &report.i1_failures);
    write_failures(out, leaves, "I2", &report.i2_failures);
}

/// DOT output with the members of each class vertex as its tooltip.
fn dot_with_classes(dag: &Dag, partition: &ClassPartition) -> String {
    format::write_dot(dag, |v| {
        let label = dag.label(v);
        partition
            .classes()
            .find(|&c| partition.label(c) == label && !partition.representative(c).is_singleton())
            .map(|c| partition.members_text(c))
    })
}
