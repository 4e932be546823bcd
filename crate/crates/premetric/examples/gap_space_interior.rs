//! The four-point space whose 2-ball is not open: the ball B_2(a) contains
//! a, b and d, but its interior in the generated topology is just {d}.
//! This is the standard witness that epsilon balls in an asymmetric distance
//! need not be open, even though they still form a neighbourhood base.

use premetric::bitset::BitSet;
use premetric::space::four_point_gap_space;
use premetric::{ExtRational, Value};

fn main() -> premetric::Result<()> {
    let space = four_point_gap_space();
    println!("points: {:?}", space.points());
    for x in space.points() {
        for y in space.points() {
            print!("d({x},{y}) = {:?}  ", space.dist_by_id(x, y)?);
        }
        println!();
    }

    let two = Value::Rational(ExtRational::from_int(2));
    let ball = space.ball_by_id("a", &two)?;
    println!("\nB_2(a) = {ball:?}");

    let topology = space.generate_topology()?;
    println!("opens of the generated topology:");
    for open in topology.opens() {
        let ids: Vec<&str> = open.iter().map(|i| topology.points()[i].as_str()).collect();
        println!("  {ids:?}");
    }

    let ball_set = BitSet::from_indices(
        space.len(),
        ball.iter().map(|p| space.idx(p)).collect::<premetric::Result<Vec<_>>>()?,
    );
    let interior = topology.interior(&ball_set);
    let ids: Vec<&str> = interior
        .iter()
        .map(|i| topology.points()[i].as_str())
        .collect();
    println!("\ninterior of B_2(a) = {ids:?}");
    assert_eq!(ids, ["d"]);
    Ok(())
}
