//! Command-line front end: corpus census runs, fixture verification, oracle
//! cross-checks and relabeling robustness checks.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::cdc::CdcError;
use crate::construct::{self, CensusRecord, Config, ConstructError};
use crate::graph::{parse_corpus, CubicGraph};
use crate::perm::PermError;
use crate::surface::{load_surface, SurfaceDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CEILING: i32 = 3;

#[derive(Parser)]
#[command(
    name = "etcensus",
    version,
    about = "Census of edge-transitive triangulated surfaces over edge-transitive cubic graphs"
)]
struct Cli {
    /// Refuse graphs whose automorphism group is larger than this.
    #[arg(long, global = true, default_value_t = 100_000, env = "ETCENSUS_MAX_AUT_ORDER")]
    max_aut_order: u64,
    /// Largest vertex count the brute-force cover oracle accepts.
    #[arg(long, global = true, default_value_t = 20, env = "ETCENSUS_ORACLE_BOUND")]
    oracle_bound: usize,
    /// Face-edge types to keep, as semicolon-separated pairs.
    #[arg(long, global = true, default_value = "1,2;1,4;2,1;2,2", env = "ETCENSUS_TYPES")]
    types: String,
    /// Worker threads for the parallel search (default: all cores).
    #[arg(long, global = true, env = "ETCENSUS_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the census over a graph6 corpus file and emit JSON Lines records.
    Census {
        corpus: PathBuf,
        /// Write records here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Validate a surface JSON fixture and report its invariants.
    VerifyFixture { surface: PathBuf },
    /// Compare the construction pipeline against the brute-force oracle.
    OracleCheck { graph6: String },
    /// Census a graph and a seeded random relabeling; they must agree.
    RelabelCheck {
        graph6: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_types(s: &str) -> Option<BTreeSet<(usize, u64)>> {
    let mut out = BTreeSet::new();
    for part in s.split(';') {
        let (a, b) = part.split_once(',')?;
        out.insert((a.trim().parse().ok()?, b.trim().parse().ok()?));
    }
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}

fn exit_code_for(err: &ConstructError) -> i32 {
    match err {
        ConstructError::CeilingExceeded { .. }
        | ConstructError::Perm(PermError::OrderCeiling { .. })
        | ConstructError::Cdc(CdcError::BoundExceeded { .. }) => EXIT_CEILING,
        _ => EXIT_INPUT,
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    run_cli(cli)
}

fn run_cli(cli: Cli) -> i32 {
    let Some(types) = parse_types(&cli.types) else {
        eprintln!("error: cannot parse --types {:?}", cli.types);
        return EXIT_INPUT;
    };
    let cfg = Config {
        max_aut_order: cli.max_aut_order,
        oracle_bound: cli.oracle_bound,
        types,
    };
    #[cfg(feature = "parallel")]
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.jobs;

    match cli.command {
        Command::Census { corpus, output } => cmd_census(&corpus, output.as_deref(), &cfg),
        Command::VerifyFixture { surface } => cmd_verify_fixture(&surface, &cfg),
        Command::OracleCheck { graph6 } => cmd_oracle_check(&graph6, &cfg),
        Command::RelabelCheck { graph6, seed } => cmd_relabel_check(&graph6, seed, &cfg),
    }
}

fn cmd_census(corpus_path: &std::path::Path, output: Option<&std::path::Path>, cfg: &Config) -> i32 {
    let text = match std::fs::read_to_string(corpus_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", corpus_path.display());
            return EXIT_INPUT;
        }
    };
    let graphs = match parse_corpus(&text) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };

    let mut records: Vec<CensusRecord> = Vec::new();
    let mut failures: Vec<(String, ConstructError)> = Vec::new();
    for (name, g) in &graphs {
        match construct::census_graph(name, g, cfg) {
            Ok(mut rs) => records.append(&mut rs),
            Err(e) => {
                eprintln!("{name}: {e}");
                failures.push((name.clone(), e));
            }
        }
    }
    records.sort_by_key(|r| r.sort_key());

    let header = serde_json::json!({
        "tool": "etcensus",
        "version": env!("CARGO_PKG_VERSION"),
        "max_aut_order": cfg.max_aut_order,
        "oracle_bound": cfg.oracle_bound,
        "types": cfg.types.iter().map(|&(a, b)| format!("{a},{b}")).collect::<Vec<_>>(),
        "corpus_sha256": hex(&Sha256::digest(text.as_bytes())),
    });
    let mut lines = Vec::new();
    lines.push(serde_json::to_string(&header).expect("header serializes"));
    for r in &records {
        lines.push(serde_json::to_string(r).expect("record serializes"));
    }
    let body = lines.join("\n") + "\n";
    if let Some(path) = output {
        if let Err(e) = std::fs::write(path, &body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    } else {
        print!("{body}");
    }

    print_summary(&graphs, &records, &failures);
    if failures.iter().any(|(_, e)| exit_code_for(e) == EXIT_CEILING) {
        EXIT_CEILING
    } else if !failures.is_empty() {
        EXIT_INPUT
    } else {
        EXIT_OK
    }
}

fn print_summary(
    graphs: &[(String, CubicGraph)],
    records: &[CensusRecord],
    failures: &[(String, ConstructError)],
) {
    let mut out = std::io::stderr().lock();
    let _ = writeln!(
        out,
        "{:<16} {:>8} {:>7} {:>7} {:>7} {:>7}",
        "graph", "surfaces", "(1,2)", "(1,4)", "(2,1)", "(2,2)"
    );
    for (name, _) in graphs {
        if failures.iter().any(|(f, _)| f == name) {
            let _ = writeln!(out, "{name:<16}   failed");
            continue;
        }
        let mine: Vec<_> = records.iter().filter(|r| &r.graph == name).collect();
        let count = |fo: usize, es: u64| {
            mine.iter()
                .filter(|r| (r.fe.face_orbits, r.fe.edge_stab_order) == (fo, es))
                .count()
        };
        let _ = writeln!(
            out,
            "{:<16} {:>8} {:>7} {:>7} {:>7} {:>7}",
            name,
            mine.len(),
            count(1, 2),
            count(1, 4),
            count(2, 1),
            count(2, 2)
        );
    }
    let _ = writeln!(out, "total surfaces: {}", records.len());
}

fn cmd_verify_fixture(path: &std::path::Path, _cfg: &Config) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return EXIT_INPUT;
        }
    };
    let doc: SurfaceDocument = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: invalid surface JSON: {e}");
            return EXIT_INPUT;
        }
    };
    let s = match load_surface(&doc) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("surface invalid: {e}");
            return EXIT_MISMATCH;
        }
    };
    let (v, e, f) = s.counts();
    println!("counts: ({v}, {e}, {f})");
    println!("euler_characteristic: {}", s.euler_characteristic());
    println!("orientable: {}", s.is_orientable());
    let degrees: BTreeSet<usize> = (0..v).map(|x| s.vertex_degree(x)).collect();
    println!(
        "vertex_degrees: {}",
        degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    );
    println!("aut_order: {}", s.automorphism_group().order());
    match s.face_edge_type() {
        Ok(fe) => {
            println!("fe: {fe}");
            let vf = s.vertex_face_type();
            println!("vf: ({},{})", vf.vertex_orbits, vf.face_stab_order);
        }
        Err(_) => println!("fe: undefined (not edge-transitive)"),
    }
    EXIT_OK
}

fn parse_single_graph(line: &str) -> Result<CubicGraph, i32> {
    CubicGraph::parse_graph6(line).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_INPUT
    })
}

fn cmd_oracle_check(graph6: &str, cfg: &Config) -> i32 {
    let g = match parse_single_graph(graph6) {
        Ok(g) => g,
        Err(c) => return c,
    };
    match construct::oracle_check(graph6, &g, cfg) {
        Ok(report) => {
            println!(
                "pipeline: {}, oracle: {}, matched: {}",
                report.pipeline_surfaces, report.oracle_surfaces, report.matched
            );
            if report.matched {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_relabel_check(graph6: &str, seed: u64, cfg: &Config) -> i32 {
    let g = match parse_single_graph(graph6) {
        Ok(g) => g,
        Err(c) => return c,
    };
    match construct::relabel_check(graph6, &g, seed, cfg) {
        Ok(report) => {
            println!(
                "seed: {}, original: {}, relabeled: {}, matched: {}",
                report.seed, report.original, report.relabeled, report.matched
            );
            if report.matched {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
