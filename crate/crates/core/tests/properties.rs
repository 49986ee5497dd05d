mod common;

#[test]
fn pasch_swaps_are_trades() {
    common::pasch_swaps(1000).unwrap();
}

#[test]
fn tripartite_trades_survive_relabeling() {
    common::tripartite_relabelings(100).unwrap();
}

#[test]
fn union_is_linear_in_balance() {
    common::union_linearity(300).unwrap();
}

#[test]
fn product_balance_factorizes() {
    common::product_balance(300).unwrap();
}

#[test]
fn text_format_round_trips() {
    common::round_trip(200).unwrap();
}

#[test]
fn generation_is_deterministic() {
    common::deterministic_generation(40).unwrap();
}
