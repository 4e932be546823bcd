//! DOT output: the Hasse diagram of a lattice and the specialization order
//! of a generated topology, ready for `dot -Tsvg`.

use premetric::dot::{lattice_hasse_dot, topology_specialization_dot};
use premetric::lattice::fixtures;
use premetric::space::four_point_gap_space;

fn main() -> premetric::Result<()> {
    println!("{}", lattice_hasse_dot(&fixtures::m3()));
    let topology = four_point_gap_space().generate_topology()?;
    println!("{}", topology_specialization_dot(&topology));
    Ok(())
}
