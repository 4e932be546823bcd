//! The generated-topology functor is a left adjoint: for every finite
//! topology T and every continuity space Z, the functions Z -> T that are
//! topologically continuous (for Z's generated topology) are exactly the
//! functions that are epsilon-delta continuous into the inverse-construction
//! space of T. This example checks the hom-set bijection exhaustively for
//! every topology on up to 3 points against the default probe family.

use premetric::space::enumerate_topologies;
use premetric::verify::{check_adjunction, default_probes};

fn main() -> premetric::Result<()> {
    let probes = default_probes();
    println!("probe spaces: {}", probes.len());
    for n in 1..=3 {
        let topologies = enumerate_topologies(n)?;
        let mut pass = 0usize;
        for t in &topologies {
            let report = check_adjunction(t, &probes)?;
            if report.pass {
                pass += 1;
            } else {
                println!(
                    "MISMATCH: {}",
                    serde_json::to_string(&report.counterexample).unwrap()
                );
            }
        }
        println!(
            "{n} points: hom-set bijection holds for {pass}/{} topologies",
            topologies.len()
        );
        assert_eq!(pass, topologies.len());
    }
    Ok(())
}
