//! The counting identity `m² = |P′/P″|·|Q₁∨/(Q₁∨ ∩ 2Q∨)|` and the degree of `U_ζ` over its center.

use qcenter::frob::{counting_identities, standard_types};

fn main() {
    let rows = counting_identities(&standard_types(), 2..=12).unwrap();
    println!("{:<4} {:>3} {:>3} {:>4} {:>9} {:>6} degree", "type", "ell", "m", "eps", "identity", "|G|");
    for r in rows.iter().filter(|r| r.skipped.is_none()) {
        println!("{:<4} {:>3} {:>3} {:>+4} {:>9} {:>6} {}", r.type_label, r.ell, r.m, r.epsilon, r.identity, r.gamma_order, r.degree);
    }
}
