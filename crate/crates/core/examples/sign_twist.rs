//! The sign group, the twisted algebra over it and the untwisting map on invariants.

use qcenter::rootlat::RootSystem;
use qcenter::uzeta::{valid_twist_sets, verify_theta};

fn main() {
    let rs = RootSystem::parse("B2").unwrap();
    for j in valid_twist_sets(&rs) {
        let rep = verify_theta(&rs, 6, Some(j.clone()), None, 8, 1).unwrap();
        let (p, f, s) = rep.counts();
        let one_based: Vec<usize> = j.iter().map(|i| i + 1).collect();
        println!("J = {one_based:?}: {p} passed, {f} failed, {s} skipped");
        if let Some(signs) = rep.conventions.get("root_vector_signs") {
            println!("  root vector signs {signs}");
        }
    }
}
