//! Central elements built from quantum traces of modules, and their Harish-Chandra images.

use qcenter::center::{hc_iota, resolve_orientation, t_element};
use qcenter::modrep::Irrep;
use qcenter::qscalar::{AtRoot, Generic, Ring};
use qcenter::rootlat::RootSystem;
use qcenter::uqpbw::{Engine, Pbw};
use std::rc::Rc;

fn main() {
    let pbw = Rc::new(Pbw::new(RootSystem::parse("A2").unwrap()).unwrap());
    let e = Rc::new(Engine::new(Generic, pbw.clone()).unwrap());
    let z = Engine::new(AtRoot::new(5), pbw).unwrap();
    let m = Irrep::build(e.clone(), &[1, 0], None).unwrap();

    let t = t_element(&[&m]).unwrap();
    println!("t = {}", e.format(&t.element));
    println!("{} terms, integral: {}", t.element.len(), t.element.is_integral());

    let iota = hc_iota(&e, &t.element).unwrap();
    for (l, c) in &iota {
        println!("  e(2*{l:?}) * {}", e.ring.format(c));
    }
    println!("matches the character sum under {:?}", resolve_orientation(&[&m], &[iota]));

    let at = z.from_generic(&t.element).unwrap();
    println!("central at zeta_5: {}", z.is_central(&at));
}
