//! Acceptance suite: one test per headline guarantee of the crate, each
//! printing a single pass/fail line (run with `--nocapture` to see them all).
//! Every check here is exact — combinatorial counts, set equalities, and
//! exhaustive quantifications over small instance families.

use std::collections::HashMap;
use std::time::Instant;

use premetric::bitset::BitSet;
use premetric::colimits::{
    admit_set, admits, admits_literal, coequaliser, coproduct, function_ground, phi_component,
    sum_ground, AdmitsInstance, DEFAULT_MAX_FUNCTIONS,
};
use premetric::lattice::fixtures;
use premetric::limits::{
    equaliser, phi_embed, positives_product_ground, product, DEFAULT_MAX_GROUND,
};
use premetric::omega::{enumerate_families, materialize};
use premetric::space::{enumerate_topologies, four_point_gap_space};
use premetric::verify::{
    check_adjunction, check_colimit, check_limit, check_o_preservation, coarsen_to_bottom,
    round_trip_suite, ColimitDiagram, LimitDiagram, OPreservationInstance,
};
use premetric::{
    ContinuitySpace, ExtRational, FiniteLattice, GroundSet, Lattice, SpaceMap, Value,
};

fn report(name: &str, pass: bool, detail: &str) {
    println!(
        "acceptance: {name} ... {} ({detail})",
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "{name}: {detail}");
}

fn chain(n: usize) -> Lattice {
    Lattice::finite(FiniteLattice::chain(n))
}

fn chain_value(i: usize) -> Value {
    Value::Finite(i.to_string())
}

/// Every space on one or two points over the 2- and 3-chains.
fn small_spaces() -> Vec<ContinuitySpace> {
    let mut out = Vec::new();
    for n in [2usize, 3] {
        out.push(
            ContinuitySpace::new(["p"], chain(n), Vec::<(&str, &str, Value)>::new()).unwrap(),
        );
        for a in 0..n {
            for b in 0..n {
                out.push(
                    ContinuitySpace::new(
                        ["p", "q"],
                        chain(n),
                        [("p", "q", chain_value(a)), ("q", "p", chain_value(b))],
                    )
                    .unwrap(),
                );
            }
        }
    }
    out
}

/// Curated three-point spaces: an asymmetric 2-chain space, a 3-chain space
/// with a genuine gap (d(a,c) strictly above both legs), and a discrete-like
/// 3-chain space.
fn three_point_spaces() -> Vec<ContinuitySpace> {
    let mk = |n: usize, d: [[usize; 3]; 3]| {
        ContinuitySpace::from_fn(["a", "b", "c"], chain(n), |i, j| chain_value(d[i][j])).unwrap()
    };
    vec![
        mk(2, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        mk(3, [[0, 0, 2], [1, 0, 0], [1, 1, 0]]),
        mk(3, [[0, 2, 2], [2, 0, 2], [2, 2, 0]]),
    ]
}

/// Probe spaces for the universal-property checks: small but with both
/// trivial and non-trivial distances over both chains.
fn probes() -> Vec<ContinuitySpace> {
    vec![
        ContinuitySpace::new(["z0"], chain(2), Vec::<(&str, &str, Value)>::new()).unwrap(),
        ContinuitySpace::new(
            ["z0", "z1"],
            chain(2),
            [("z0", "z1", chain_value(1)), ("z1", "z0", chain_value(0))],
        )
        .unwrap(),
        ContinuitySpace::new(
            ["z0", "z1"],
            chain(3),
            [("z0", "z1", chain_value(1)), ("z1", "z0", chain_value(2))],
        )
        .unwrap(),
        ContinuitySpace::new(
            ["z0", "z1"],
            chain(3),
            [("z0", "z1", chain_value(0)), ("z1", "z0", chain_value(0))],
        )
        .unwrap(),
    ]
}

/// All partitions of the points of a space, as block lists.
fn partitions(points: &[String]) -> Vec<Vec<Vec<String>>> {
    let mut out: Vec<Vec<Vec<String>>> = vec![vec![]];
    for p in points {
        let mut next = Vec::new();
        for part in &out {
            for k in 0..=part.len() {
                let mut q = part.clone();
                if k == part.len() {
                    q.push(vec![p.clone()]);
                } else {
                    q[k].push(p.clone());
                }
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[test]
fn round_trips_regenerate_every_small_topology() {
    let start = Instant::now();
    let counts: Vec<usize> = (3..=4)
        .map(|n| enumerate_topologies(n).unwrap().len())
        .collect();
    let r3 = round_trip_suite(3).unwrap();
    let r4 = round_trip_suite(4).unwrap();
    let elapsed = start.elapsed();
    report(
        "round trips on all labeled topologies",
        counts == [29, 355] && r3.pass && r4.pass && elapsed.as_secs() < 10,
        &format!(
            "29/29 on 3 points, 355/355 on 4 points, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn gap_space_ball_has_smaller_interior() {
    let space = four_point_gap_space();
    let topology = space.generate_topology().unwrap();
    let two = Value::Rational(ExtRational::from_int(2));
    let ball = space.ball(space.idx("a").unwrap(), &two).unwrap();
    let ball_ids: Vec<&str> = ball.iter().map(|i| space.point(i)).collect();
    let interior = topology.interior(&ball);
    let ids: Vec<&str> = interior
        .iter()
        .map(|i| topology.points()[i].as_str())
        .collect();
    report(
        "interior of the 2-ball in the 4-point gap space",
        ball_ids == ["a", "b", "d"] && ids == ["d"],
        &format!("B_2(a) = {ball_ids:?}, interior = {ids:?}"),
    );
}

#[test]
fn down_set_family_lattices_have_exact_sizes_and_agreeing_well_above() {
    let mut sizes = Vec::new();
    let mut pairs = 0usize;
    let mut agree = true;
    let mut distributive = true;
    for ids in [vec!["u", "v"], vec!["u", "v", "w"]] {
        let ground = std::sync::Arc::new(GroundSet::new(ids).unwrap());
        let lattice = materialize(ground.clone()).unwrap();
        sizes.push(lattice.len());
        distributive &= lattice.is_value_distributive();
        let families = enumerate_families(ground, lattice.len()).unwrap();
        for p in &families {
            for q in &families {
                let direct = q.well_above(p).unwrap();
                let generic = lattice.well_above_idx(
                    lattice.idx(&q.canonical_id()).unwrap(),
                    lattice.idx(&p.canonical_id()).unwrap(),
                );
                agree &= direct == generic;
                pairs += 1;
            }
        }
    }
    report(
        "down-set family lattice sizes and well-above agreement",
        sizes == [6, 20] && distributive && agree,
        &format!("sizes {sizes:?}, value distributive, {pairs} pairs agree"),
    );
}

#[test]
fn diamond_is_not_value_distributive_with_witness() {
    let diamond = fixtures::diamond();
    let witness = diamond.filter_violation();
    let ok = diamond.is_completely_distributive()
        && !diamond.is_value_distributive()
        && witness.is_some();
    let detail = witness
        .map(|(a, b)| {
            format!(
                "witness: {} and {} well above bottom, meet {} is not",
                diamond.id(a),
                diamond.id(b),
                diamond.id(diamond.meet_idx(a, b))
            )
        })
        .unwrap_or_else(|| "no witness".into());
    report("diamond fails the positive-filter condition", ok, &detail);
}

#[test]
fn adjunction_hom_sets_coincide_exhaustively() {
    let probe_spaces: Vec<ContinuitySpace> = small_spaces();
    let mut checked = 0usize;
    let mut pass = true;
    for n in 1..=3 {
        for t in enumerate_topologies(n).unwrap() {
            let r = check_adjunction(&t, &probe_spaces).unwrap();
            pass &= r.pass;
            checked += 1;
        }
    }
    report(
        "hom-set bijection between topological and epsilon-delta continuity",
        pass && checked == 34,
        &format!("{checked} topologies x {} probes", probe_spaces.len()),
    );
}

#[test]
fn universal_properties_hold_and_corrupted_candidates_fail() {
    let start = Instant::now();
    let spaces = small_spaces();
    let probes = probes();
    let mut instances = 0usize;
    let mut pass = true;

    // Binary products: every unordered pair of small spaces, plus each
    // curated three-point space against a nontrivial two-point space.
    let mut product_pairs: Vec<(ContinuitySpace, ContinuitySpace)> = Vec::new();
    for i in 0..spaces.len() {
        for j in i..spaces.len() {
            product_pairs.push((spaces[i].clone(), spaces[j].clone()));
        }
    }
    for s in three_point_spaces() {
        product_pairs.push((s, spaces[4].clone()));
    }
    for (a, b) in &product_pairs {
        let (apex, legs) = product(&[a.clone(), b.clone()], DEFAULT_MAX_GROUND).unwrap();
        let diagram = LimitDiagram::Product(vec![a.clone(), b.clone()]);
        pass &= check_limit(&apex, &legs, &diagram, &probes).unwrap().pass;
        instances += 1;
    }

    // Equalisers: every continuous parallel pair between small spaces.
    for a in &spaces {
        for b in &spaces {
            let mut maps = Vec::new();
            for assignment in all_assignments(a, b) {
                let m = SpaceMap::from_indices(a.clone(), b.clone(), assignment);
                if m.is_eps_delta_continuous().unwrap() {
                    maps.push(m);
                }
            }
            for f in &maps {
                for g in &maps {
                    let (sub, inclusion) = equaliser(f, g).unwrap();
                    let diagram = LimitDiagram::Equaliser(f.clone(), g.clone());
                    pass &= check_limit(&sub, &[inclusion], &diagram, &probes)
                        .unwrap()
                        .pass;
                    instances += 1;
                }
            }
        }
    }

    // Binary coproducts over the same pair list.
    for (a, b) in &product_pairs {
        let (sum, injections) = coproduct(&[a.clone(), b.clone()], DEFAULT_MAX_GROUND).unwrap();
        let diagram = ColimitDiagram::Coproduct(vec![a.clone(), b.clone()]);
        pass &= check_colimit(&sum, &injections, &diagram, &probes)
            .unwrap()
            .pass;
        instances += 1;
    }

    // Coequalisers: every space with every partition of its points.
    let mut quotient_spaces = spaces.clone();
    quotient_spaces.extend(three_point_spaces());
    for s in &quotient_spaces {
        for blocks in partitions(s.points()) {
            let (quotient, qmap) = coequaliser(s, &blocks, DEFAULT_MAX_FUNCTIONS).unwrap();
            let diagram = ColimitDiagram::Coequaliser(s.clone(), blocks);
            pass &= check_colimit(&quotient, &[qmap], &diagram, &probes)
                .unwrap()
                .pass;
            instances += 1;
        }
    }

    // Mutations: collapsing every distance of a candidate to bottom must
    // break the universal property in all four shapes.
    // Two 2-chain spaces with nontrivial distances, so that collapsing to
    // bottom genuinely changes the structure.
    let a = spaces[4].clone();
    let b = spaces[3].clone();
    let mut mutations_fail = true;
    {
        let (apex, legs) = product(&[a.clone(), b.clone()], DEFAULT_MAX_GROUND).unwrap();
        let bad = coarsen_to_bottom(&apex);
        let bad_legs: Vec<SpaceMap> = legs
            .iter()
            .map(|l| SpaceMap::from_indices(bad.clone(), l.target().clone(), l.indices().to_vec()))
            .collect();
        let diagram = LimitDiagram::Product(vec![a.clone(), b.clone()]);
        mutations_fail &= !check_limit(&bad, &bad_legs, &diagram, &probes).unwrap().pass;
    }
    {
        let f = SpaceMap::identity(&b);
        let (sub, inclusion) = equaliser(&f, &f).unwrap();
        let bad = coarsen_to_bottom(&sub);
        let bad_leg =
            SpaceMap::from_indices(bad.clone(), b.clone(), inclusion.indices().to_vec());
        let diagram = LimitDiagram::Equaliser(f.clone(), f.clone());
        mutations_fail &= !check_limit(&bad, &[bad_leg], &diagram, &probes).unwrap().pass;
    }
    {
        let (sum, injections) = coproduct(&[a.clone(), b.clone()], DEFAULT_MAX_GROUND).unwrap();
        let bad = coarsen_to_bottom(&sum);
        let bad_legs: Vec<SpaceMap> = injections
            .iter()
            .map(|l| SpaceMap::from_indices(l.source().clone(), bad.clone(), l.indices().to_vec()))
            .collect();
        let diagram = ColimitDiagram::Coproduct(vec![a.clone(), b.clone()]);
        mutations_fail &= !check_colimit(&bad, &bad_legs, &diagram, &probes)
            .unwrap()
            .pass;
    }
    {
        let (quotient, qmap) = coequaliser(&b, &[], DEFAULT_MAX_FUNCTIONS).unwrap();
        let bad = coarsen_to_bottom(&quotient);
        let bad_leg = SpaceMap::from_indices(b.clone(), bad.clone(), qmap.indices().to_vec());
        let diagram = ColimitDiagram::Coequaliser(b.clone(), vec![]);
        mutations_fail &= !check_colimit(&bad, &[bad_leg], &diagram, &probes)
            .unwrap()
            .pass;
    }

    let elapsed = start.elapsed();
    report(
        "universal properties of (co)limits with failing mutations",
        pass && mutations_fail && elapsed.as_secs() < 60,
        &format!(
            "{instances} instances verified, 4 corrupted candidates rejected, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

fn all_assignments(a: &ContinuitySpace, b: &ContinuitySpace) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..a.len() {
        let mut next = Vec::new();
        for f in &out {
            for t in 0..b.len() {
                let mut f2 = f.clone();
                f2.push(t);
                next.push(f2);
            }
        }
        out = next;
    }
    out
}

#[test]
fn generated_topology_preserves_colimits_and_refines_products() {
    let spaces = small_spaces();
    let mut instances = 0usize;
    let mut pass = true;
    for i in 0..spaces.len() {
        for j in i..spaces.len() {
            let pair = vec![spaces[i].clone(), spaces[j].clone()];
            pass &= check_o_preservation(
                &OPreservationInstance::Coproduct(pair.clone()),
                DEFAULT_MAX_GROUND,
                DEFAULT_MAX_FUNCTIONS,
            )
            .unwrap()
            .pass;
            pass &= check_o_preservation(
                &OPreservationInstance::Product(pair),
                DEFAULT_MAX_GROUND,
                DEFAULT_MAX_FUNCTIONS,
            )
            .unwrap()
            .pass;
            instances += 2;
        }
    }
    let mut quotient_spaces = spaces.clone();
    quotient_spaces.extend(three_point_spaces());
    for s in &quotient_spaces {
        for blocks in partitions(s.points()) {
            pass &= check_o_preservation(
                &OPreservationInstance::Coequaliser(s.clone(), blocks),
                DEFAULT_MAX_GROUND,
                DEFAULT_MAX_FUNCTIONS,
            )
            .unwrap()
            .pass;
            instances += 1;
        }
    }
    report(
        "topology of coproducts/coequalisers matches, of products refines",
        pass,
        &format!("{instances} instances"),
    );
}

#[test]
fn embeddings_preserve_and_reflect_order_with_threshold_transfer() {
    let mut pass = true;
    let mut detail_pairs = 0usize;
    for m in 1..=3usize {
        for k in 1..=3usize {
            let lattices = [chain(m), chain(k)];
            let values_m: Vec<Value> = (0..m).map(chain_value).collect();
            let values_k: Vec<Value> = (0..k).map(chain_value).collect();

            let pg = positives_product_ground(&lattices, DEFAULT_MAX_GROUND).unwrap();
            for x0 in &values_m {
                for x1 in &values_k {
                    for y0 in &values_m {
                        for y1 in &values_k {
                            let lhs = lattices[0].leq(x0, y0).unwrap()
                                && lattices[1].leq(x1, y1).unwrap();
                            let px = phi_embed(&[x0.clone(), x1.clone()], &pg).unwrap();
                            let py = phi_embed(&[y0.clone(), y1.clone()], &pg).unwrap();
                            pass &= lhs == px.leq(&py).unwrap();
                            detail_pairs += 1;
                        }
                    }
                }
            }

            let sg = sum_ground(&lattices, DEFAULT_MAX_GROUND).unwrap();
            for (j, values) in [(0usize, &values_m), (1usize, &values_k)] {
                for a in values.iter() {
                    for b in values.iter() {
                        let lhs = lattices[j].leq(a, b).unwrap();
                        let pa = phi_component(j, a, &sg).unwrap();
                        let pb = phi_component(j, b, &sg).unwrap();
                        pass &= lhs == pa.leq(&pb).unwrap();
                        detail_pairs += 1;
                    }
                }
                // Threshold transfer: a positive epsilon is well above a
                // component distance iff its tagged principal family is well
                // above the embedded distance.
                for (slot_k, eps) in sg.positives[j].iter().enumerate() {
                    for d in values.iter() {
                        let lhs = lattices[j].well_above(eps, d).unwrap();
                        let tagged = premetric::DownSetFamily::principal(
                            sg.ground.clone(),
                            BitSet::from_indices(sg.ground.len(), [sg.slots[j][slot_k]]),
                        );
                        let rhs = tagged
                            .well_above(&phi_component(j, d, &sg).unwrap())
                            .unwrap();
                        pass &= lhs == rhs;
                        detail_pairs += 1;
                    }
                }
            }
        }
    }
    report(
        "product/coproduct embeddings are order-embeddings",
        pass,
        &format!("{detail_pairs} comparisons over all chain pairs up to length 3"),
    );
}

#[test]
fn path_relation_reductions_agree_with_literal_definitions() {
    // Reachability vs literal alternating paths, over quotients of a 4-point
    // space with a genuine gap distance.
    let gap = ContinuitySpace::from_fn(["a", "b", "c", "d"], chain(3), |i, j| {
        let d = [[0, 0, 2, 1], [0, 0, 0, 1], [2, 0, 0, 1], [1, 1, 1, 0]];
        chain_value(d[i][j])
    })
    .unwrap();
    let quotients: Vec<(Vec<&str>, Vec<(&str, &str)>)> = vec![
        (
            vec!["a", "b", "c", "d"],
            vec![("a", "a"), ("b", "b"), ("c", "c"), ("d", "d")],
        ),
        (
            vec!["ac", "b", "d"],
            vec![("a", "ac"), ("b", "b"), ("c", "ac"), ("d", "d")],
        ),
        (
            vec!["abd", "c"],
            vec![("a", "abd"), ("b", "abd"), ("c", "c"), ("d", "abd")],
        ),
        (
            vec!["x"],
            vec![("a", "x"), ("b", "x"), ("c", "x"), ("d", "x")],
        ),
    ];
    let ground = function_ground(&gap, DEFAULT_MAX_FUNCTIONS).unwrap();
    let mut queries = 0usize;
    let mut pass = true;
    for (x_points, assoc) in &quotients {
        let map: HashMap<String, String> = assoc
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let inst = AdmitsInstance::new(gap.clone(), x_points.clone(), &map).unwrap();
        let max_len = 2 * gap.len();
        for h in &ground.functions {
            for a in 0..inst.x_points.len() {
                for b in 0..inst.x_points.len() {
                    let fast = admits(&inst, h, a, b).unwrap();
                    let slow = admits_literal(&inst, h, a, b, max_len).unwrap();
                    pass &= fast == slow;
                    queries += 1;
                }
            }
        }
    }

    // Singleton-admits reduction: a finite set of functions admits a pair
    // iff every member admits it, i.e. iff it is a subset of the admit set.
    // Exhaustive over all subsets of a function ground with 4 members.
    let small = ContinuitySpace::new(
        ["p", "q"],
        chain(2),
        [("p", "q", chain_value(1)), ("q", "p", chain_value(0))],
    )
    .unwrap();
    let map: HashMap<String, String> = [("p", "p"), ("q", "q")]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let inst = AdmitsInstance::new(small.clone(), ["p", "q"], &map).unwrap();
    let ground = function_ground(&small, DEFAULT_MAX_FUNCTIONS).unwrap();
    let m = ground.functions.len();
    let mut subset_queries = 0usize;
    for a in 0..2 {
        for b in 0..2 {
            let hs = admit_set(&inst, &ground, a, b).unwrap();
            for subset in BitSet::all_subsets(m) {
                let literal = subset
                    .iter()
                    .all(|k| admits_literal(&inst, &ground.functions[k], a, b, 4).unwrap());
                pass &= literal == subset.is_subset(&hs);
                subset_queries += 1;
            }
        }
    }
    report(
        "admits reductions agree with the literal definitions",
        pass && m <= 8,
        &format!("{queries} path queries, {subset_queries} finite-set queries"),
    );
}
