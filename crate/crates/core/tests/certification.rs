use cayley_steiner::par::Execution;
use cayley_steiner::trees::{BpContext, CaseLabel, Note};
use cayley_steiner::verify::{certify_family, check, CertifyConfig, Coverage};
use cayley_steiner::{Family, SignedPermutation, VertexLabel};

fn vertex(ctx: &BpContext, s: &str) -> usize {
    ctx.index_of(&VertexLabel::Signed(
        s.parse::<SignedPermutation>().unwrap(),
    ))
    .unwrap()
}

/// Triples of `BP_3` where `x, y` share a cluster and `z` is the
/// out-neighbour of an in-cluster neighbour of `x`.
#[test]
fn fan_target_coinciding_with_z() {
    let ctx = BpContext::new(3).unwrap();
    let g = ctx.graph();
    let clusters = ctx.clusters();
    let out = |v: usize| ctx.level(3).out(v);
    let mut hits = 0;
    for x in 0..g.order() {
        let home = clusters.cluster_of(x);
        for &u in g
            .neighbors(x)
            .iter()
            .filter(|&&u| clusters.cluster_of(u) == home)
        {
            let z = out(u);
            for &y in clusters.members(home) {
                if y == x {
                    continue;
                }
                let set = ctx.trees([x, y, z]).unwrap();
                assert_eq!(set.case, CaseLabel::BpTwoClusters);
                assert_eq!(check(g, &set), Ok(()));
                assert_eq!(set.len(), 2);
                if set.notes.contains(&Note::DegenerateFanPath) {
                    hits += 1;
                }
            }
        }
    }
    assert!(hits > 0);
}

#[test]
fn same_cluster_recursion_is_traced() {
    let ctx = BpContext::new(4).unwrap();
    let s = ["1,2,3,4", "2,1,3,4", "-1,2,3,4"].map(|l| vertex(&ctx, l));
    let set = ctx.trees(s).unwrap();
    assert_eq!(set.trace[0], CaseLabel::BpSameCluster);
    assert_eq!(set.trace[1], CaseLabel::BpSameCluster);
    assert_eq!(set.trace.last(), Some(&CaseLabel::BpBaseCycle));
    assert_eq!(set.len(), 3);
    assert_eq!(check(ctx.graph(), &set), Ok(()));
}

#[test]
fn bp4_opposite_home_clusters() {
    let ctx = BpContext::new(4).unwrap();
    let s = ["2,3,4,1", "2,3,4,-1", "1,3,4,2"].map(|l| vertex(&ctx, l));
    let set = ctx.trees(s).unwrap();
    assert_eq!(set.case, CaseLabel::BpThreeClustersOppositePair);
    assert_eq!(check(ctx.graph(), &set), Ok(()));
}

#[test]
fn bp5_three_clusters_use_transit_clusters() {
    let ctx = BpContext::new(5).unwrap();
    let s = ["1,2,3,4,5", "1,2,3,5,4", "1,2,4,5,3"].map(|l| vertex(&ctx, l));
    let set = ctx.trees(s).unwrap();
    assert_eq!(set.case, CaseLabel::BpThreeClustersTransit);
    assert_eq!(set.len(), 4);
    assert_eq!(check(ctx.graph(), &set), Ok(()));
}

#[test]
fn schedules_agree_on_ea4() {
    let run = |exec| {
        certify_family(
            Family::Godan,
            4,
            &CertifyConfig::new(Coverage::Exhaustive).execution(exec),
        )
        .unwrap()
    };
    let a = run(Execution::Parallel);
    let b = run(Execution::Sequential);
    assert!(a.passed);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.case_tallies.values().sum::<usize>(), 2024);
}

#[test]
fn certificate_json_round_trips() {
    let cert = certify_family(
        Family::BurntPancake,
        3,
        &CertifyConfig::new(Coverage::Sample { count: 50, seed: 3 }),
    )
    .unwrap();
    let back: cayley_steiner::verify::Certificate = serde_json::from_str(&cert.to_json()).unwrap();
    assert_eq!(back, cert);
    assert_eq!(cert.triples, 50);
}
