//! Colimits of continuity spaces: the coproduct as a tagged disjoint union
//! over the omega lattice on the sum of the components' positive values, and
//! the coequaliser via the admits path relation over the function ground.
//! Both candidates are verified against their universal property, and the
//! generated topologies are compared with the topological disjoint union and
//! quotient.

use premetric::colimits::{coequaliser, coproduct, DEFAULT_MAX_FUNCTIONS};
use premetric::limits::DEFAULT_MAX_GROUND;
use premetric::verify::{
    check_colimit, check_o_preservation, ColimitDiagram, OPreservationInstance,
};
use premetric::{ContinuitySpace, FiniteLattice, Lattice, Value};

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
    let probes = vec![two_point_space(2, "0", "1"), two_point_space(3, "1", "2")];

    let (sum, injections) = coproduct(&[a.clone(), b.clone()], DEFAULT_MAX_GROUND)?;
    println!("coproduct points: {:?}", sum.points());
    println!(
        "same-component distance d(0:p,0:q) = {:?}",
        sum.dist_by_id("0:p", "0:q")?
    );
    println!(
        "cross-component distance d(0:p,1:q) = {:?}",
        sum.dist_by_id("0:p", "1:q")?
    );

    let diagram = ColimitDiagram::Coproduct(vec![a.clone(), b.clone()]);
    let report = check_colimit(&sum, &injections, &diagram, &probes)?;
    println!(
        "universal property ({}): pass = {}",
        report.instance, report.pass
    );
    assert!(report.pass);

    let report = check_o_preservation(
        &OPreservationInstance::Coproduct(vec![a.clone(), b.clone()]),
        DEFAULT_MAX_GROUND,
        DEFAULT_MAX_FUNCTIONS,
    )?;
    println!("topology comparison: {} -> pass = {}", report.instance, report.pass);
    assert!(report.pass);

    // Coequalise: glue the two points of the first space together.
    let blocks = vec![vec!["p".to_string(), "q".to_string()]];
    let (quotient, qmap) = coequaliser(&a, &blocks, DEFAULT_MAX_FUNCTIONS)?;
    println!("\ncoequaliser points after gluing p ~ q: {:?}", quotient.points());
    let report = check_colimit(
        &quotient,
        &[qmap],
        &ColimitDiagram::Coequaliser(a.clone(), blocks.clone()),
        &probes,
    )?;
    println!(
        "universal property ({}): pass = {}",
        report.instance, report.pass
    );
    assert!(report.pass);

    let report = check_o_preservation(
        &OPreservationInstance::Coequaliser(a, blocks),
        DEFAULT_MAX_GROUND,
        DEFAULT_MAX_FUNCTIONS,
    )?;
    println!("topology comparison: {} -> pass = {}", report.instance, report.pass);
    assert!(report.pass);
    Ok(())
}
