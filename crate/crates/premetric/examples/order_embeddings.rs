//! The coordinatewise embeddings behind products and coproducts land in the
//! omega lattice and preserve and reflect order. This example verifies both
//! exhaustively over a pair of 3-chains, plus the threshold transfer for the
//! coproduct: a component distance is well above by a positive epsilon
//! exactly when the embedded distance is well above by the tagged epsilon.

use premetric::limits::{phi_embed, positives_product_ground, value_id, DEFAULT_MAX_GROUND};
use premetric::colimits::{phi_component, sum_ground};
use premetric::omega::DownSetFamily;
use premetric::bitset::BitSet;
use premetric::{FiniteLattice, Lattice, Value};

fn main() -> premetric::Result<()> {
    let chain3 = Lattice::finite(FiniteLattice::chain(3));
    let lattices = [chain3.clone(), chain3.clone()];

    // Product embedding over the ground of positive tuples.
    let ground = positives_product_ground(&lattices, DEFAULT_MAX_GROUND)?;
    println!("product ground tuples: {:?}", ground.ground.ids());
    let values: Vec<Value> = (0..3).map(|i| Value::Finite(i.to_string())).collect();
    let mut pairs = 0usize;
    for x0 in &values {
        for x1 in &values {
            for y0 in &values {
                for y1 in &values {
                    let x = [x0.clone(), x1.clone()];
                    let y = [y0.clone(), y1.clone()];
                    let lhs = chain3.leq(x0, y0)? && chain3.leq(x1, y1)?;
                    let rhs = phi_embed(&x, &ground)?.leq(&phi_embed(&y, &ground)?)?;
                    assert_eq!(lhs, rhs);
                    pairs += 1;
                }
            }
        }
    }
    println!("product embedding is an order-embedding on all {pairs} tuple pairs");

    // Coproduct embedding over the tagged sum ground.
    let g = sum_ground(&lattices, DEFAULT_MAX_GROUND)?;
    println!("\nsum ground ids: {:?}", g.ground.ids());
    for j in 0..2 {
        for a in &values {
            for b in &values {
                let lhs = chain3.leq(a, b)?;
                let rhs = phi_component(j, a, &g)?.leq(&phi_component(j, b, &g)?)?;
                assert_eq!(lhs, rhs);
            }
        }
    }
    println!("component embeddings are order-embeddings on both components");

    // Threshold transfer: eps well above d in the component iff the tagged
    // principal family of eps is well above the embedded d in the sum.
    for j in 0..2 {
        for (k, eps) in g.positives[j].iter().enumerate() {
            for d in &values {
                let lhs = chain3.well_above(eps, d)?;
                let tagged = DownSetFamily::principal(
                    g.ground.clone(),
                    BitSet::from_indices(g.ground.len(), [g.slots[j][k]]),
                );
                let rhs = tagged.well_above(&phi_component(j, d, &g)?)?;
                assert_eq!(
                    lhs, rhs,
                    "threshold transfer at component {j}, eps {}, d {}",
                    value_id(eps),
                    value_id(d)
                );
            }
        }
    }
    println!("threshold transfer holds for every positive epsilon and every distance");
    Ok(())
}
