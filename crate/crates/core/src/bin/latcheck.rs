use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use latcheck::embed;
use latcheck::enumerate;
use latcheck::freeterm::{self, FreeEmbeddingSearch, FreeSearchLimits, FreeTerm};
use latcheck::io;
use latcheck::report::{self, Report, Timing};
use latcheck::theorems::{self, HarnessConfig, TheoremId};
use latcheck::{catalog, laws, variety, Error, FiniteLattice, Result};

#[derive(Parser)]
#[command(name = "latcheck", version, about = "Law, decomposition and variety checks for finite lattices")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Law profile of a lattice file (or `catalog:NAME`).
    Check { file: String },
    /// Minimum distributive partition size with a witness.
    Dec {
        file: String,
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Membership in the variety generated by the pentagon.
    Variety {
        file: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Sublattices isomorphic to a profile's forbidden lattices.
    FindForbidden {
        file: String,
        #[arg(long)]
        profile: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Runs structural statements over all lattices up to a size.
    VerifyTheorems {
        #[arg(long, default_value_t = 7)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long = "theorem")]
        theorems: Vec<String>,
        #[arg(long)]
        profile: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lists all lattices of a size up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Built-in lattices with their expected and computed properties.
    Catalog {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Words in free lattices.
    Freelat {
        #[command(subcommand)]
        op: FreeOp,
    },
    /// Graphviz text of the cover diagram.
    Dot { file: String },
}

#[derive(Subcommand)]
enum FreeOp {
    Leq { s: String, t: String },
    Canon { term: String },
    Embed {
        file: String,
        #[arg(long, default_value_t = 3)]
        gens: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

enum Status {
    Pass,
    Violation,
    Budget,
}

fn budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("LATCHECK_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::BadParameter(format!("LATCHECK_BUDGET=`{v}` is not a number"))),
        Err(_) => Ok(embed::DEFAULT_BUDGET),
    }
}

fn load(input: &str) -> Result<FiniteLattice> {
    match input.strip_prefix("catalog:") {
        Some(name) => catalog::get(name),
        None => io::read_lattice_file(Path::new(input)),
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect()
}

fn run(cmd: Command) -> Result<(Report, Status)> {
    Ok(match cmd {
        Command::Check { file } => {
            let l = load(&file)?;
            (Report::new("check", Some(file), report::law_profile_json(&l), vec![]), Status::Pass)
        }
        Command::Dec { file, all_witnesses } => {
            let l = load(&file)?;
            (Report::new("dec", Some(file), report::dec_json(&l, all_witnesses)?, vec![]), Status::Pass)
        }
        Command::Variety { file, budget: b } => {
            let l = load(&file)?;
            let (v, consistent) = report::variety_json(&l, budget(b)?)?;
            let violations = if consistent {
                vec![]
            } else {
                vec![json!({ "detail": "member of the variety but contains a forbidden sublattice" })]
            };
            let status = if consistent && v["member"] == json!(true) { Status::Pass } else { Status::Violation };
            (Report::new("variety", Some(file), v, violations), status)
        }
        Command::FindForbidden { file, profile, budget: b } => {
            let l = load(&file)?;
            let p = embed::profile(&profile)?;
            let hits = embed::contains_forbidden(&l, &p, budget(b)?)?;
            let found: Vec<Value> = hits
                .iter()
                .map(|(n, w)| json!({ "pattern": n, "map": report::witness_json(w) }))
                .collect();
            let results = json!({
                "lattice": report::lattice_json(&l),
                "profile": p.name,
                "patterns": p.patterns,
                "hits": found.len(),
            });
            let status = if found.is_empty() { Status::Pass } else { Status::Violation };
            (Report::new("find-forbidden", Some(file), results, found), status)
        }
        Command::VerifyTheorems { size, min_size, theorems: ids, profile, budget: b, sample, seed } => {
            if let Some(p) = &profile {
                theorems::profile_theorems(p)?;
            }
            let cfg = HarnessConfig {
                min_size,
                max_size: size,
                theorems: ids.iter().map(|s| s.parse()).collect::<Result<Vec<TheoremId>>>()?,
                profile,
                budget: budget(b)?,
                sample,
                seed,
            };
            let r = theorems::run_harness(&cfg)?;
            let violations: Vec<Value> = r
                .theorems
                .iter()
                .flat_map(|s| s.violations.iter().map(move |v| json!({ "theorem": s.theorem, "violation": v })))
                .collect();
            let status = if r.violation_count() == 0 { Status::Pass } else { Status::Violation };
            (Report::new("verify-theorems", None, serde_json::to_value(&r).expect("serializes"), violations), status)
        }
        Command::Enumerate { size, filter, emit } => {
            let filters = enumerate::parse_filters(filter.as_deref().unwrap_or(""))?;
            let all = enumerate::all_lattices(size)?;
            let total = all.len();
            let kept = enumerate::filter_lattices(all, &filters, budget(None)?)?;
            if let Some(dir) = &emit {
                ensure_dir(dir)?;
                for l in &kept {
                    io::write_lattice_file(&dir.join(format!("{}.json", file_stem(&l.display_name()))), l)?;
                }
            }
            let results = json!({
                "size": size,
                "filters": filters.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "total": total,
                "count": kept.len(),
                "lattices": kept.iter().map(report::lattice_json).collect::<Vec<_>>(),
            });
            (Report::new("enumerate", None, results, vec![]), Status::Pass)
        }
        Command::Catalog { name, emit } => {
            let names: Vec<String> = match &name {
                Some(n) => vec![n.clone()],
                None => catalog::FIXED.iter().map(|s| s.to_string()).collect(),
            };
            let mut rows = Vec::new();
            let mut mismatches = Vec::new();
            for n in &names {
                let l = catalog::get(n)?;
                let expected = catalog::entry(n).map(|e| e.expected).unwrap_or_default();
                let sd = laws::is_semidistributive(&l);
                let si = variety::is_subdirectly_irreducible(&l);
                let n5 = variety::is_in_n5_variety(&l)?;
                for (what, exp, got) in [
                    ("semidistributive", expected.semidistributive, sd),
                    ("subdirectly_irreducible", expected.subdirectly_irreducible, si),
                    ("in_n5_variety", expected.in_n5_variety, n5),
                ] {
                    if exp.is_some_and(|e| e != got) {
                        mismatches.push(json!({ "entry": n, "property": what, "expected": exp, "computed": got }));
                    }
                }
                if let Some(dir) = &emit {
                    ensure_dir(dir)?;
                    io::write_lattice_file(&dir.join(format!("{}.json", file_stem(n))), &l)?;
                }
                rows.push(json!({
                    "name": n,
                    "size": l.len(),
                    "hash": l.canonical_form().hash_hex(),
                    "dual": catalog::dual_name(n),
                    "semidistributive": sd,
                    "subdirectly_irreducible": si,
                    "in_n5_variety": n5,
                }));
            }
            let status = if mismatches.is_empty() { Status::Pass } else { Status::Violation };
            (Report::new("catalog", name, json!({ "entries": rows }), mismatches), status)
        }
        Command::Freelat { op } => match op {
            FreeOp::Leq { s, t } => {
                let (a, b) = (FreeTerm::parse(&s)?, FreeTerm::parse(&t)?);
                let results = json!({
                    "s": freeterm::canonicalize(&a).to_string(),
                    "t": freeterm::canonicalize(&b).to_string(),
                    "leq": freeterm::leq(&a, &b),
                    "geq": freeterm::leq(&b, &a),
                });
                (Report::new("freelat leq", Some(format!("{s} <= {t}")), results, vec![]), Status::Pass)
            }
            FreeOp::Canon { term } => {
                let t = FreeTerm::parse(&term)?;
                let c = freeterm::canonicalize(&t);
                let results = json!({ "canonical": c.to_string(), "depth": c.depth(), "already_canonical": c == t });
                (Report::new("freelat canon", Some(term), results, vec![]), Status::Pass)
            }
            FreeOp::Embed { file, gens, depth, budget: b } => {
                let l = load(&file)?;
                let limits = FreeSearchLimits {
                    generators: gens,
                    depth,
                    budget: match b {
                        Some(v) => v,
                        None => match std::env::var("LATCHECK_BUDGET") {
                            Ok(_) => budget(None)?,
                            Err(_) => FreeSearchLimits::default().budget,
                        },
                    },
                    ..FreeSearchLimits::default()
                };
                let (results, status) = match freeterm::find_free_embedding(&l, limits)? {
                    FreeEmbeddingSearch::Found(terms) => {
                        let map: serde_json::Map<String, Value> = l
                            .labels()
                            .iter()
                            .zip(&terms)
                            .map(|(a, t)| (a.clone(), Value::String(t.to_string())))
                            .collect();
                        let verified = freeterm::verify_free_embedding(&l, &terms);
                        (json!({ "status": "found", "terms": map, "verified": verified }), Status::Pass)
                    }
                    FreeEmbeddingSearch::Impossible(why) => {
                        (json!({ "status": "impossible", "reason": why }), Status::Violation)
                    }
                    FreeEmbeddingSearch::Inconclusive => (json!({ "status": "inconclusive" }), Status::Budget),
                };
                (Report::new("freelat embed", Some(file), results, vec![]), status)
            }
        },
        Command::Dot { file } => {
            let l = load(&file)?;
            (Report::new("dot", Some(file), json!({ "dot": io::to_dot(&l) }), vec![]), Status::Pass)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli.command) {
        Ok((mut r, status)) => {
            if cli.timing {
                r.timing = Some(Timing {
                    elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
                });
            }
            let text = if cli.pretty { r.to_pretty() } else { format!("{}\n", r.to_json()) };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(match status {
                Status::Pass => 0,
                Status::Violation => 1,
                Status::Budget => 3,
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SearchBudgetExceeded(_) => 3,
                _ => 2,
            })
        }
    }
}
