//! Limits of continuity spaces: the binary product as the initial lift of
//! the projection cone (distances land in the omega lattice over tuples of
//! positive values), and the equaliser of a parallel pair as a subspace.
//! Both candidates are then verified against their universal property by
//! exhaustive mediator enumeration, and a corrupted product (all distances
//! collapsed to bottom) is shown to fail.

use premetric::limits::{equaliser, product, DEFAULT_MAX_GROUND};
use premetric::verify::{check_limit, coarsen_to_bottom, LimitDiagram};
use premetric::{ContinuitySpace, FiniteLattice, Lattice, SpaceMap, Value};

fn two_point_space(chain: usize, dpq: &str, dqp: &str) -> ContinuitySpace {
    ContinuitySpace::new(
        ["p", "q"],
        Lattice::finite(FiniteLattice::chain(chain)),
        [
            ("p", "q", Value::Finite(dpq.to_string())),
            ("q", "p", Value::Finite(dqp.to_string())),
        ],
    )
    .unwrap()
}

fn main() -> premetric::Result<()> {
    let a = two_point_space(2, "1", "0");
    let b = two_point_space(3, "2", "1");
    let probes = vec![two_point_space(2, "0", "0"), two_point_space(3, "1", "2")];

    let (prod, legs) = product(&[a.clone(), b.clone()], DEFAULT_MAX_GROUND)?;
    println!("product points: {:?}", prod.points());
    println!("value lattice: {:?}", prod.lattice());
    println!(
        "d((p,p),(q,q)) = {:?}",
        prod.dist_by_id("(p,p)", "(q,q)")?
    );

    let diagram = LimitDiagram::Product(vec![a.clone(), b.clone()]);
    let report = check_limit(&prod, &legs, &diagram, &probes)?;
    println!(
        "\nuniversal property ({}): pass = {}",
        report.instance, report.pass
    );
    assert!(report.pass);

    // Corrupt the apex: with every distance at bottom, some compatible cone
    // has no continuous mediator (or the legs themselves break).
    let bad = coarsen_to_bottom(&prod);
    let bad_legs: Vec<SpaceMap> = legs
        .iter()
        .map(|l| SpaceMap::from_indices(bad.clone(), l.target().clone(), l.indices().to_vec()))
        .collect();
    let bad_report = check_limit(&bad, &bad_legs, &diagram, &probes)?;
    println!(
        "corrupted apex: pass = {} (counterexample: {})",
        bad_report.pass,
        serde_json::to_string(&bad_report.counterexample).unwrap()
    );
    assert!(!bad_report.pass);

    // Equaliser of a parallel pair: the subspace where the maps agree.
    let f = SpaceMap::new(a.clone(), b.clone(), |p| Some(p.to_string()))?;
    let g = SpaceMap::new(a.clone(), b.clone(), |_| Some("p".to_string()))?;
    let (sub, inclusion) = equaliser(&f, &g)?;
    println!("\nequaliser points of (id, const p): {:?}", sub.points());
    let report = check_limit(
        &sub,
        &[inclusion],
        &LimitDiagram::Equaliser(f, g),
        &probes,
    )?;
    println!(
        "universal property ({}): pass = {}",
        report.instance, report.pass
    );
    assert!(report.pass);
    Ok(())
}
