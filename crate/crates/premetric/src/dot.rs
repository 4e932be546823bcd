//! DOT emitters: Hasse diagrams of finite lattices and specialization
//! orders of finite topologies. Output is deterministic (nodes and edges in
//! canonical order) so diagrams can be diffed.

use crate::lattice::FiniteLattice;
use crate::space::FiniteTopology;

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram: one edge per cover pair, drawn bottom-up.
pub fn lattice_hasse_dot(lattice: &FiniteLattice) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for id in lattice.elements() {
        out.push_str(&format!("  {};\n", quote(id)));
    }
    for (lo, hi) in lattice.cover_pairs() {
        out.push_str(&format!(
            "  {} -> {};\n",
            quote(lattice.id(lo)),
            quote(lattice.id(hi))
        ));
    }
    out.push_str("}\n");
    out
}

/// Specialization order of a finite topology: an edge x -> y when every open
/// set containing x also contains y (y lies in the core of x).
pub fn topology_specialization_dot(topology: &FiniteTopology) -> String {
    let mut out =
        String::from("digraph specialization {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for p in topology.points() {
        out.push_str(&format!("  {};\n", quote(p)));
    }
    for (x, y) in topology.specialization_pairs() {
        out.push_str(&format!(
            "  {} -> {};\n",
            quote(&topology.points()[x]),
            quote(&topology.points()[y])
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::four_point_gap_space;

    #[test]
    fn hasse_of_a_chain_lists_its_covers() {
        let dot = lattice_hasse_dot(&FiniteLattice::chain(3));
        assert!(dot.contains("\"0\" -> \"1\""));
        assert!(dot.contains("\"1\" -> \"2\""));
        assert!(!dot.contains("\"0\" -> \"2\""));
    }

    #[test]
    fn specialization_order_of_the_gap_space() {
        let t = four_point_gap_space().generate_topology().unwrap();
        let dot = topology_specialization_dot(&t);
        assert!(dot.starts_with("digraph specialization {"));
        assert!(dot.ends_with("}\n"));
        // Deterministic output.
        assert_eq!(dot, topology_specialization_dot(&t));
    }
}
