//! The lattice of down-set families over a finite ground set, materialized
//! as an explicit finite lattice: 6 elements over a 2-element ground, 20
//! over a 3-element ground. Both are value distributive, and the direct
//! well-above test on families agrees with the generic subset-quantified
//! well-above on the materialization at every element pair.

use std::sync::Arc;

use premetric::omega::{enumerate_families, materialize};
use premetric::GroundSet;

fn main() -> premetric::Result<()> {
    for ids in [vec!["u", "v"], vec!["u", "v", "w"]] {
        let ground = Arc::new(GroundSet::new(ids.clone())?);
        let lattice = materialize(ground.clone())?;
        println!(
            "ground {ids:?}: {} families, value distributive: {}",
            lattice.len(),
            lattice.is_value_distributive()
        );

        // The direct criterion (some generator of q is a member of p) against
        // the generic all-subsets quantification on the materialization.
        let families = enumerate_families(ground, lattice.len())?;
        let mut agree = 0usize;
        for (i, p) in families.iter().enumerate() {
            for (j, q) in families.iter().enumerate() {
                let direct = q.well_above(p)?;
                let generic = lattice.well_above_idx(
                    lattice.idx(&q.canonical_id())?,
                    lattice.idx(&p.canonical_id())?,
                );
                assert_eq!(direct, generic, "disagreement at pair ({i},{j})");
                agree += 1;
            }
        }
        println!("  well-above agreement on all {agree} pairs");
    }
    Ok(())
}
