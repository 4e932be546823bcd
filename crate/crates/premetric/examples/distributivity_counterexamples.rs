//! Value distributivity asks for complete distributivity plus a filter
//! condition on the well-above-bottom elements. The diamond (the product of
//! two 2-chains) is distributive but fails the filter condition: its two
//! atoms are each well above bottom, yet their meet is bottom, which is not
//! well above itself there. M3 and N5 already fail distributivity.

use premetric::lattice::fixtures;
use premetric::FiniteLattice;

fn report(name: &str, l: &FiniteLattice) {
    println!(
        "{name}: completely distributive = {}, value distributive = {}",
        l.is_completely_distributive(),
        l.is_value_distributive()
    );
    if let Some((a, b)) = l.filter_violation() {
        println!(
            "  filter violation: {} and {} are both well above bottom, their meet {} is not",
            l.id(a),
            l.id(b),
            l.id(l.meet_idx(a, b))
        );
    }
}

fn main() {
    report("2-chain", &FiniteLattice::chain(2));
    report("diamond (2-chain x 2-chain)", &fixtures::diamond());
    report("M3", &fixtures::m3());
    report("N5", &fixtures::n5());

    assert!(!fixtures::diamond().is_value_distributive());
    assert!(fixtures::diamond().filter_violation().is_some());
}
