//! Products, antipode and braid operators in the triangular PBW basis `b^N k_λ a^M`.

use qcenter::qscalar::Generic;
use qcenter::rootlat::RootSystem;
use qcenter::uqpbw::{BraidDir, Engine, Pbw};
use std::rc::Rc;

fn main() {
    let e = Engine::new(Generic, Rc::new(Pbw::new(RootSystem::parse("A2").unwrap()).unwrap())).unwrap();
    let (a1, a2) = (e.a_simple(0), e.a_simple(1));
    let (b1, b2) = (e.b_simple(0), e.b_simple(1));

    println!("a2 a1        = {}", e.format(&e.mul(&a2, &a1)));
    println!("a1 b1        = {}", e.format(&e.mul(&a1, &b1)));
    println!("[a1, b2]     = {}", e.format(&e.commutator(&a1, &b2)));
    println!("S(a1 b2)     = {}", e.format(&e.antipode(&e.mul(&a1, &b2))));
    let t = e.braid(0, &a2, BraidDir::Forward);
    println!("T_1(a2)      = {}", e.format(&t));
    println!("T_1^-1 T_1   = {}", e.format(&e.braid(0, &t, BraidDir::Inverse)));
}
