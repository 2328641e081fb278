//! Irreducible highest-weight modules as explicit matrices over `Q(q)`.

use qcenter::modrep::{module_checks, weyl_dimension, Irrep};
use qcenter::qscalar::Generic;
use qcenter::rootlat::RootSystem;
use qcenter::uqpbw::{Engine, Pbw};
use std::rc::Rc;

fn main() {
    let rs = RootSystem::parse("A2").unwrap();
    let e = Rc::new(Engine::new(Generic, Rc::new(Pbw::new(rs.clone()).unwrap())).unwrap());
    for l in [vec![1, 0], vec![1, 1], vec![2, 0]] {
        let m = Irrep::build(e.clone(), &l, None).unwrap();
        println!("L{l:?}: dim {} (Weyl formula {})", m.basis_weights().len(), weyl_dimension(&rs, &l));
        for (w, k) in m.character() {
            println!("  weight {w:?} x{k}");
        }
        let bad = module_checks(&m).unwrap().into_iter().filter(|c| c.failed()).count();
        println!("  module checks failed: {bad}");
    }
}
