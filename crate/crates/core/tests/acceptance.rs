//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cayley_steiner::flows::vertex_connectivity;
use cayley_steiner::par::Execution;
use cayley_steiner::topology::{cluster_decomposition, cross_edge_set, punctured_bp, ClusterId};
use cayley_steiner::trees::{
    generic_stree_packing, BpContext, CaseLabel, EaContext, PackingOutcome,
};
use cayley_steiner::verify::{
    certify_family, check, ea_structure_checks, expected_cross_edges,
    out_neighbour_spread_violations, Certificate, CertifyConfig, Coverage,
};
use cayley_steiner::Family;

type Outcome = Result<String, String>;

struct Report {
    failed: usize,
}

impl Report {
    fn run(&mut self, id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.1?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            self.failed += 1;
        }
        println!(
            "[{}] {id:>2}. {name} ({elapsed:.2?}): {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn structural_formulas() -> Outcome {
    for n in 2..=5 {
        let f = Family::BurntPancake;
        let g = f.build(n).map_err(|e| e.to_string())?;
        let order = (1..=n).product::<usize>() << n;
        let size = (n * (1..=n).product::<usize>()) << (n - 1);
        ensure(
            g.order() == order && g.size() == size && g.regular_degree() == Some(n),
            || {
                format!(
                    "BP{n}: order {} size {} degree {:?}",
                    g.order(),
                    g.size(),
                    g.regular_degree()
                )
            },
        )?;
    }
    Ok("BP2..BP5 order 2^n n!, size n n! 2^(n-1), n-regular".into())
}

fn cross_edge_counts() -> Outcome {
    let mut pairs = 0;
    for n in 3..=4 {
        let g = Family::BurntPancake.build(n).map_err(|e| e.to_string())?;
        let dec = cluster_decomposition(&g, n).map_err(|e| e.to_string())?;
        let ids = ClusterId::all_bp(n);
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                let found = cross_edge_set(&g, &dec, i, j)
                    .map_err(|e| e.to_string())?
                    .len();
                let want = expected_cross_edges(n, i, j);
                ensure(found == want, || {
                    format!("BP{n} {i}~{j}: {found} != {want}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} cluster pairs match (n-2)! 2^(n-2), opposite pairs 0"
    ))
}

fn connectivity() -> Outcome {
    let cases = [
        (Family::BurntPancake, 2, 2),
        (Family::BurntPancake, 3, 3),
        (Family::BurntPancake, 4, 4),
        (Family::AlternatingNetwork, 3, 2),
        (Family::AlternatingNetwork, 4, 3),
        (Family::AlternatingNetwork, 5, 4),
        (Family::Godan, 3, 3),
        (Family::Godan, 4, 4),
        (Family::Godan, 5, 5),
    ];
    let mut seen = Vec::new();
    for (family, n, want) in cases {
        let g = family.build(n).map_err(|e| e.to_string())?;
        let k = vertex_connectivity(&g);
        ensure(k == want, || {
            format!("kappa({family}{n}) = {k}, expected {want}")
        })?;
        seen.push(format!("{family}{n}={k}"));
    }
    Ok(seen.join(" "))
}

fn punctured_connectivity() -> Outcome {
    let mut count = 0;
    for n in 3..=4 {
        for c in ClusterId::all_bp(n) {
            let h = punctured_bp(n, c).map_err(|e| e.to_string())?;
            let k = vertex_connectivity(&h);
            ensure(k == n - 1, || format!("BP{n} minus cluster {c}: kappa {k}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} punctured graphs have kappa n-1"))
}

fn out_neighbour_spread() -> Outcome {
    let mut vertices = 0;
    for n in 2..=4 {
        let g = Family::BurntPancake.build(n).map_err(|e| e.to_string())?;
        let dec = cluster_decomposition(&g, n).map_err(|e| e.to_string())?;
        let bad = out_neighbour_spread_violations(&g, &dec);
        ensure(bad.is_empty(), || {
            format!("BP{n}: {} violations", bad.len())
        })?;
        vertices += g.order();
    }
    Ok(format!("{vertices} vertices, zero violations"))
}

fn matching_and_parts() -> Outcome {
    for n in 3..=5 {
        let g = Family::Godan.build(n).map_err(|e| e.to_string())?;
        for c in ea_structure_checks(&g, n).map_err(|e| e.to_string())? {
            ensure(c.passed, || format!("EA{n}: {} failed", c.name))?;
        }
    }
    Ok("EA3..EA5 perfect matching u~u(12), both parts equal AN_n".into())
}

fn certify(family: Family, n: usize, coverage: Coverage) -> Result<Certificate, String> {
    let cert =
        certify_family(family, n, &CertifyConfig::new(coverage)).map_err(|e| e.to_string())?;
    ensure(cert.passed, || {
        format!(
            "{family}{n}: {} failures, first {:?}",
            cert.failure_count,
            cert.failures.first()
        )
    })?;
    Ok(cert)
}

fn expect_triples(cert: &Certificate, triples: usize, trees: usize) -> Result<(), String> {
    ensure(
        cert.triples == triples && cert.bounds.constructed == Some(trees),
        || {
            format!(
                "{}{}: {} triples with {:?} trees, expected {triples} with {trees}",
                cert.family, cert.n, cert.triples, cert.bounds.constructed
            )
        },
    )
}

fn bp_packings(certs: &mut Vec<Certificate>) -> Outcome {
    let bp2 = certify(Family::BurntPancake, 2, Coverage::Exhaustive)?;
    expect_triples(&bp2, 56, 1)?;
    let start = Instant::now();
    let bp3 = certify(Family::BurntPancake, 3, Coverage::Exhaustive)?;
    expect_triples(&bp3, 17_296, 2)?;
    let bp3_time = start.elapsed();
    ensure(bp3_time <= Duration::from_secs(120), || {
        format!("BP3 took {bp3_time:?}")
    })?;
    let bp4 = certify(
        Family::BurntPancake,
        4,
        Coverage::Sample {
            count: 10_000,
            seed: 7,
        },
    )?;
    expect_triples(&bp4, 10_000, 3)?;
    for label in CaseLabel::bp_labels(4) {
        ensure(bp4.case_tallies.get(&label).is_some_and(|&c| c > 0), || {
            format!("BP4 sample never hit {label}")
        })?;
    }
    let spot = bp5_spot_run(40)?;
    let detail = format!(
        "BP2 56x1, BP3 17296x2 in {bp3_time:.1?}, BP4 10000x3 over {} cases, BP5 {spot} spot triples x4",
        bp4.case_tallies.len()
    );
    certs.extend([bp2, bp3, bp4]);
    Ok(detail)
}

fn bp5_spot_run(count: usize) -> Result<usize, String> {
    let ctx = BpContext::new(5).map_err(|e| e.to_string())?;
    let order = ctx.graph().order();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < count {
        let s = [
            rng.gen_range(0..order),
            rng.gen_range(0..order),
            rng.gen_range(0..order),
        ];
        if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
            continue;
        }
        let set = ctx.trees(s).map_err(|e| format!("BP5 {s:?}: {e}"))?;
        check(ctx.graph(), &set).map_err(|e| format!("BP5 {s:?}: {e}"))?;
        ensure(set.len() == 4, || format!("BP5 {s:?}: {} trees", set.len()))?;
        done += 1;
    }
    Ok(done)
}

fn ea_packings(certs: &mut Vec<Certificate>) -> Outcome {
    let ea3 = certify(Family::Godan, 3, Coverage::Exhaustive)?;
    expect_triples(&ea3, 20, 2)?;
    let ea4 = certify(Family::Godan, 4, Coverage::Exhaustive)?;
    expect_triples(&ea4, 2_024, 3)?;
    let ea5 = certify(
        Family::Godan,
        5,
        Coverage::Sample {
            count: 200,
            seed: 5,
        },
    )?;
    expect_triples(&ea5, 200, 4)?;
    certs.extend([ea3, ea4, ea5]);
    Ok("EA3 20x2, EA4 2024x3, EA5 200 sampled x4".into())
}

fn bound_consistency(certs: &[Certificate]) -> Outcome {
    ensure(!certs.is_empty(), || "no certificates to inspect".into())?;
    for c in certs {
        let b = &c.bounds;
        ensure(b.upper.is_some() && b.upper == b.constructed, || {
            format!(
                "{}{}: upper {:?} vs constructed {:?}",
                c.family, c.n, b.upper, b.constructed
            )
        })?;
        ensure(Some(b.from_connectivity) <= b.constructed, || {
            format!(
                "{}{}: connectivity bound {} above {:?}",
                c.family, c.n, b.from_connectivity, b.constructed
            )
        })?;
        ensure(c.claimed_kappa3 == b.constructed, || {
            format!("{}{}: claim {:?}", c.family, c.n, c.claimed_kappa3)
        })?;
    }
    Ok(format!(
        "{} certificates: upper = constructed >= connectivity bound",
        certs.len()
    ))
}

fn packing_oracle() -> Outcome {
    let bp = BpContext::new(3).map_err(|e| e.to_string())?;
    let ea = EaContext::new(3).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut draw = |order: usize| loop {
        let s = [
            rng.gen_range(0..order),
            rng.gen_range(0..order),
            rng.gen_range(0..order),
        ];
        if s[0] != s[1] && s[0] != s[2] && s[1] != s[2] {
            return s;
        }
    };
    for _ in 0..100 {
        let s = draw(48);
        let k = bp.trees(s).map_err(|e| e.to_string())?.len();
        ensure(
            generic_stree_packing(bp.graph().view(), s, k, None).is_found(),
            || format!("search found fewer than {k} trees in BP3 for {s:?}"),
        )?;
    }
    for _ in 0..100 {
        let s = draw(6);
        let k = ea.ea_trees(s).map_err(|e| e.to_string())?.len();
        ensure(
            generic_stree_packing(ea.graph().view(), s, k, None).is_found(),
            || format!("search found fewer than {k} trees in EA3 for {s:?}"),
        )?;
    }
    let cycle = Family::BurntPancake.build(2).map_err(|e| e.to_string())?;
    let mut proofs = 0;
    for i in 0..8 {
        for j in i + 1..8 {
            for k in j + 1..8 {
                let s = [i, j, k];
                ensure(
                    generic_stree_packing(cycle.view(), s, 1, None).is_found(),
                    || format!("8-cycle {s:?}: no tree"),
                )?;
                let two = generic_stree_packing(cycle.view(), s, 2, None);
                ensure(two == PackingOutcome::Infeasible, || {
                    format!("8-cycle {s:?}: {two:?}")
                })?;
                proofs += 1;
            }
        }
    }
    Ok(format!(
        "100 BP3 + 100 EA3 triples agree; k=2 infeasible on all {proofs} cycle triples"
    ))
}

fn determinism() -> Outcome {
    let run = |exec| {
        certify_family(
            Family::BurntPancake,
            3,
            &CertifyConfig::new(Coverage::Exhaustive).execution(exec),
        )
        .map(|c| c.to_json())
        .map_err(|e| e.to_string())
    };
    let a = run(Execution::Parallel)?;
    let b = run(Execution::Parallel)?;
    let c = run(Execution::Sequential)?;
    ensure(a == b, || "two parallel runs differ".into())?;
    ensure(a == c, || "parallel and sequential runs differ".into())?;
    Ok(format!("{} bytes, identical across 3 runs", a.len()))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut report = Report { failed: 0 };
    let mut certs = Vec::new();
    report.run(1, "structural formulas", secs(10), structural_formulas);
    report.run(2, "cross-edge counts", secs(10), cross_edge_counts);
    report.run(3, "vertex connectivity", secs(300), connectivity);
    report.run(
        4,
        "punctured connectivity",
        secs(300),
        punctured_connectivity,
    );
    report.run(5, "out-neighbour spread", secs(30), out_neighbour_spread);
    report.run(
        6,
        "matching and part structure",
        secs(60),
        matching_and_parts,
    );
    report.run(7, "BP tree packings", secs(15 * 60), || {
        bp_packings(&mut certs)
    });
    report.run(8, "EA tree packings", secs(300), || ea_packings(&mut certs));
    report.run(9, "bound consistency", secs(10), || {
        bound_consistency(&certs)
    });
    report.run(10, "packing search oracle", secs(300), packing_oracle);
    report.run(11, "determinism", secs(300), determinism);
    if report.failed == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", report.failed);
        ExitCode::FAILURE
    }
}
