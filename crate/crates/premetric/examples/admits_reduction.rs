//! The admits relation behind final spaces: a function h admits a target
//! pair (a, b) when an alternating path of epsilon-ball steps and
//! equal-image glue steps connects a preimage of a to a preimage of b.
//! Because both step kinds allow trivial self-steps, the relation reduces to
//! plain graph reachability; this example runs both forms side by side on a
//! quotient of the 4-point gap space and prints the resulting admit sets.

use std::collections::HashMap;

use premetric::colimits::{
    admit_set, admits, admits_literal, function_ground, AdmitsInstance, DEFAULT_MAX_FUNCTIONS,
};
use premetric::{ContinuitySpace, FiniteLattice, Lattice, Value};

fn gap_chain_space() -> ContinuitySpace {
    let dist = |x: &str, y: &str| {
        let pair = if x < y { (x, y) } else { (y, x) };
        match pair {
            ("a", "b") | ("b", "c") => 0,
            ("a", "c") => 2,
            _ => 1,
        }
    };
    let points = ["a", "b", "c", "d"];
    ContinuitySpace::from_fn(points, Lattice::finite(FiniteLattice::chain(3)), |i, j| {
        let ids = ["a", "b", "c", "d"];
        if i == j {
            Value::Finite("0".into())
        } else {
            Value::Finite(dist(ids[i], ids[j]).to_string())
        }
    })
    .unwrap()
}

fn main() -> premetric::Result<()> {
    let source = gap_chain_space();
    // Glue a and c; keep b and d separate.
    let map: HashMap<String, String> = [("a", "ac"), ("b", "b"), ("c", "ac"), ("d", "d")]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let inst = AdmitsInstance::new(source.clone(), ["ac", "b", "d"], &map)?;
    let ground = function_ground(&source, DEFAULT_MAX_FUNCTIONS)?;
    println!(
        "function ground |M| = {} (positives^points)",
        ground.functions.len()
    );

    // Reachability form against the literal alternating-path form, for every
    // function and every ordered image pair.
    let max_len = 2 * source.len();
    let mut checked = 0usize;
    for h in &ground.functions {
        for a in 0..inst.x_points.len() {
            for b in 0..inst.x_points.len() {
                let fast = admits(&inst, h, a, b)?;
                let slow = admits_literal(&inst, h, a, b, max_len)?;
                assert_eq!(fast, slow);
                checked += 1;
            }
        }
    }
    println!("reachability agrees with path enumeration on {checked} queries");

    for a in 0..inst.x_points.len() {
        for b in 0..inst.x_points.len() {
            if a == b {
                continue;
            }
            let hs = admit_set(&inst, &ground, a, b)?;
            println!(
                "H({},{}) admits {}/{} functions",
                inst.x_points[a],
                inst.x_points[b],
                hs.count(),
                ground.functions.len()
            );
        }
    }
    Ok(())
}
