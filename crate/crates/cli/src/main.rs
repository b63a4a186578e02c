//! Command-line front end: graph generation, properties, connectivity,
//! tree construction and certification.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on
//! usage errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cayley_steiner::flows::{vertex_connectivity, vertex_connectivity_all_pairs};
use cayley_steiner::par::{self, Execution};
use cayley_steiner::topology::{cluster_decomposition, part_decomposition};
use cayley_steiner::trees::{
    generic_stree_packing, BpContext, CaseLabel, EaContext, PackingOutcome, STreeSet,
};
use cayley_steiner::verify::{
    adjacent_min_degree_bound, certify_family, check, connectivity_lower_bound,
    ea_structure_checks, expected_connectivity, CertifyConfig, Coverage,
};
use cayley_steiner::{Error, Family};

const BUDGET_VAR: &str = "CAYLEY_STEINER_BUDGET_MS";

#[derive(Parser)]
#[command(
    name = "cayley-steiner",
    version,
    about = "Steiner tree packings in BP_n, AN_n and EA_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the graph as DOT, JSON or an edge list.
    Gen {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print order, size, degree and structural checks.
    Props {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Compute the vertex connectivity by maximum flow.
    Kappa {
        #[command(flatten)]
        target: Target,
        /// Check every vertex pair instead of the reduced pair set.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Build internally edge-disjoint trees on three vertices.
    Trees {
        #[command(flatten)]
        target: Target,
        /// First vertex label, such as "1,-2,3".
        #[arg(allow_hyphen_values = true)]
        s1: String,
        #[arg(allow_hyphen_values = true)]
        s2: String,
        #[arg(allow_hyphen_values = true)]
        s3: String,
        #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
        format: TreeFormat,
    },
    /// Certify the tree count over all or a sample of the 3-sets.
    Certify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses all available, 1 runs sequentially.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Target {
    /// BP, AN or EA.
    family: Family,
    n: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Mode {
    #[arg(long)]
    exhaustive: bool,
    /// Number of 3-sets to draw, stratified by case.
    #[arg(long, value_name = "COUNT")]
    sample: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Json,
    Text,
}

/// What went wrong, sorted by exit status.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Parse { .. } | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            target,
            format,
            output,
        } => gen(target, format, output),
        Command::Props { target, json } => props(target, json),
        Command::Kappa { target, all_pairs } => kappa(target, all_pairs),
        Command::Trees {
            target,
            s1,
            s2,
            s3,
            format,
        } => trees(target, &[s1, s2, s3], format),
        Command::Certify {
            target,
            mode,
            seed,
            workers,
            output,
        } => certify(target, mode, seed, workers, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn budget() -> Result<Option<Duration>, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(|ms| Some(Duration::from_millis(ms)))
            .map_err(|_| Failure::Usage(format!("{BUDGET_VAR} must be a number of milliseconds"))),
        Err(_) => Ok(None),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Outcome {
    match output {
        Some(path) => std::fs::write(path, text).map_err(Failure::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summary_line(g: &cayley_steiner::Graph) -> String {
    let regular = match g.regular_degree() {
        Some(d) => format!("{d}-regular"),
        None => format!("degree {}..{}", g.min_degree(), g.max_degree()),
    };
    format!(
        "{}: order {}, size {}, {regular}",
        g.name(),
        g.order(),
        g.size()
    )
}

fn gen(target: Target, format: Format, output: Option<PathBuf>) -> Outcome {
    target.family.check_n(target.n)?;
    let g = target.family.build(target.n)?;
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&g.to_dump())
                .map_err(|e| Failure::Usage(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Dot => {
            let clusters = match target.family {
                Family::BurntPancake => Some(cluster_decomposition(&g, target.n)?),
                Family::Godan => Some(part_decomposition(&g)?),
                Family::AlternatingNetwork => None,
            };
            g.to_dot(clusters.as_ref())
        }
        Format::Text => g
            .edges()
            .into_iter()
            .map(|(a, b)| format!("{} {}\n", g.label(a), g.label(b)))
            .collect(),
    };
    emit(&text, output.as_ref())?;
    if output.is_some() {
        println!("{}", summary_line(&g));
    } else {
        eprintln!("{}", summary_line(&g));
    }
    Ok(())
}

fn props(target: Target, json: bool) -> Outcome {
    let (family, n) = (target.family, target.n);
    family.check_n(n)?;
    let g = family.build(n)?;
    let mut checks: Vec<(String, bool)> = vec![
        ("order".into(), g.order() == family.expected_order(n)),
        ("size".into(), g.size() == family.expected_size(n)),
        (
            "regular".into(),
            g.regular_degree() == Some(family.expected_degree(n)),
        ),
        ("connected".into(), g.is_connected()),
    ];
    let mut clusters = None;
    match family {
        Family::BurntPancake => {
            let dec = cluster_decomposition(&g, n)?;
            let spread = cayley_steiner::verify::out_neighbour_spread_violations(&g, &dec);
            checks.push(("out-neighbour-spread".into(), spread.is_empty()));
            clusters = Some(dec.len());
        }
        Family::Godan => {
            for c in ea_structure_checks(&g, n)? {
                checks.push((c.name, c.passed));
            }
            clusters = Some(2);
        }
        Family::AlternatingNetwork => {}
    }
    let upper = adjacent_min_degree_bound(&g);
    let passed = checks.iter().all(|c| c.1);
    if json {
        let value = serde_json::json!({
            "family": family,
            "n": n,
            "order": g.order(),
            "size": g.size(),
            "degree": g.regular_degree(),
            "clusters": clusters,
            "adjacent_min_degree_bound": upper,
            "checks": checks.iter().cloned().collect::<std::collections::BTreeMap<_, _>>(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).map_err(|e| Failure::Usage(e.to_string()))?
        );
    } else {
        println!("{}", summary_line(&g));
        if let Some(c) = clusters {
            println!("clusters: {c}");
        }
        match upper {
            Some(u) => println!("adjacent min-degree bound: {u}"),
            None => println!("adjacent min-degree bound: none"),
        }
        for (name, ok) in &checks {
            println!("{name}: {}", if *ok { "ok" } else { "FAILED" });
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification("structural check failed".into()))
    }
}

fn kappa(target: Target, all_pairs: bool) -> Outcome {
    let (family, n) = (target.family, target.n);
    family.check_n(n)?;
    let g = family.build(n)?;
    let k = if all_pairs {
        vertex_connectivity_all_pairs(&g)
    } else {
        vertex_connectivity(&g)
    };
    let expected = expected_connectivity(family, n);
    println!("kappa({}) = {k} (expected {expected})", g.name());
    if k >= 1 {
        println!(
            "lower bound on trees per 3-set: {}",
            connectivity_lower_bound(k)?
        );
    }
    if k == expected {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "kappa is {k}, expected {expected}"
        )))
    }
}

fn trees(target: Target, labels: &[String], format: TreeFormat) -> Outcome {
    let (family, n) = (target.family, target.n);
    family.check_n(n)?;
    let parsed = labels
        .iter()
        .map(|l| family.parse_label(n, l))
        .collect::<Result<Vec<_>, _>>()?;
    if parsed[0] == parsed[1] || parsed[0] == parsed[2] || parsed[1] == parsed[2] {
        return Err(Failure::Usage("the three labels must be distinct".into()));
    }
    let (set, graph) = match family {
        Family::BurntPancake => {
            let ctx = BpContext::new(n)?;
            let s = [
                ctx.index_of(&parsed[0])?,
                ctx.index_of(&parsed[1])?,
                ctx.index_of(&parsed[2])?,
            ];
            (ctx.trees(s)?, ctx.graph().clone())
        }
        Family::Godan => {
            let ctx = EaContext::new(n)?.with_budget(budget()?);
            let s = [
                ctx.index_of(&parsed[0])?,
                ctx.index_of(&parsed[1])?,
                ctx.index_of(&parsed[2])?,
            ];
            (ctx.ea_trees(s)?, ctx.graph().clone())
        }
        Family::AlternatingNetwork => an_trees(n, &parsed)?,
    };
    check(&graph, &set).map_err(|e| Failure::Verification(e.to_string()))?;
    match format {
        TreeFormat::Json => {
            let text = serde_json::to_string_pretty(&set.to_json(&graph))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{text}");
        }
        TreeFormat::Text => {
            println!("case: {}", set.case);
            println!("trace: {}", set.trace_string());
            for note in &set.notes {
                println!("note: {note}");
            }
            for (i, tree) in set.trees.iter().enumerate() {
                let edges: Vec<String> = tree
                    .iter()
                    .map(|&(a, b)| format!("{} ~ {}", graph.label(a), graph.label(b)))
                    .collect();
                println!("T{}: {}", i + 1, edges.join("; "));
            }
        }
    }
    Ok(())
}

/// `AN_n` has no constructive builder here; `n - 2` trees come from the
/// exact packing search.
fn an_trees(
    n: usize,
    parsed: &[cayley_steiner::VertexLabel],
) -> Result<(STreeSet, cayley_steiner::Graph), Failure> {
    let g = Family::AlternatingNetwork.build(n)?;
    let mut s = [0usize; 3];
    for (slot, label) in s.iter_mut().zip(parsed) {
        *slot = g
            .index_of(label)
            .ok_or_else(|| Failure::Usage(format!("{label} is not a vertex of AN_{n}")))?;
    }
    let trees = match generic_stree_packing(g.view(), s, n - 2, budget()?) {
        PackingOutcome::Found(trees) => trees,
        PackingOutcome::Infeasible => {
            return Err(Failure::Verification(format!("no {} trees exist", n - 2)))
        }
        PackingOutcome::Indeterminate => {
            return Err(Failure::Verification(format!("{BUDGET_VAR} exhausted")))
        }
    };
    let set = STreeSet {
        family: Family::AlternatingNetwork,
        n,
        terminals: s,
        case: CaseLabel::GenericPacking,
        trace: vec![CaseLabel::GenericPacking],
        notes: Vec::new(),
        trees,
    };
    Ok((set, g))
}

fn certify(
    target: Target,
    mode: Mode,
    seed: u64,
    workers: usize,
    output: Option<PathBuf>,
) -> Outcome {
    let (family, n) = (target.family, target.n);
    family.check_n(n)?;
    if family == Family::AlternatingNetwork {
        return Err(Failure::Usage("certify supports BP and EA".into()));
    }
    let coverage = match mode.sample {
        Some(0) => return Err(Failure::Usage("--sample needs a positive count".into())),
        Some(count) => Coverage::Sample { count, seed },
        None => Coverage::Exhaustive,
    };
    let execution = if workers == 1 {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let config = CertifyConfig::new(coverage)
        .execution(execution)
        .packing_budget(budget()?);
    let cert = par::with_workers(workers, || certify_family(family, n, &config))?;
    let mut text = cert.to_json();
    text.push('\n');
    emit(&text, output.as_ref())?;
    let line = format!(
        "{family}{n}: {} triples, {} failures, kappa {}, claimed kappa3 {}",
        cert.triples,
        cert.failure_count,
        cert.connectivity.kappa,
        cert.claimed_kappa3
            .map_or_else(|| "none".to_string(), |k| k.to_string()),
    );
    if output.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    if cert.passed {
        Ok(())
    } else {
        Err(Failure::Verification("certificate did not pass".into()))
    }
}
