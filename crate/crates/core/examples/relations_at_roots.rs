//! Commutation of `r_β`-th powers at a root of unity, in `U_ζ` and in `U_ε` of the rescaled system.

use qcenter::rootlat::RootSystem;
use qcenter::uzeta::{verify_epsilon_relations, verify_zeta_relations, RootData};

fn main() {
    for (label, ell) in [("A1", 6), ("A2", 4), ("B2", 6), ("B2", 8)] {
        let data = RootData::new(&RootSystem::parse(label).unwrap(), ell).unwrap();
        let z = verify_zeta_relations(&data, 3, None).unwrap();
        let e = verify_epsilon_relations(&data, None).unwrap();
        let (zp, zf, _) = z.counts();
        let (ep, ef, _) = e.counts();
        println!(
            "{label} ell={ell}: rescaled type {}, epsilon {:+}; zeta relations {zp} ok / {zf} failed; epsilon relations {ep} ok / {ef} failed",
            data.prime.system.label, data.ctx.epsilon
        );
    }
}
