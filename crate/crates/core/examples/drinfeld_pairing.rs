//! The Drinfeld pairing on PBW monomials: diagonal, with `(-1)^m q^{m(m-1)/2}` per root.

use qcenter::qscalar::RatFn;
use qcenter::rootlat::RootSystem;
use qcenter::uqpbw::suites::verify_drinfeld;
use qcenter::uqpbw::Pbw;

fn main() {
    let pbw = Pbw::new(RootSystem::parse("B2").unwrap()).unwrap();
    for m in pbw.monomials(&[1, 2]).iter() {
        let row: Vec<String> = pbw
            .monomials(&[1, 2])
            .iter()
            .map(|n| {
                let v = pbw.alg.pair(&pbw.e_divided(m), &pbw.b_mono(n));
                if v == RatFn::zero() { "0".into() } else { v.to_string() }
            })
            .collect();
        println!("{m:?}: {}", row.join("  "));
    }
    let rep = verify_drinfeld(&pbw, 3);
    for c in &rep.cases {
        println!("{} {}", if c.passed() { "ok  " } else { "FAIL" }, c.name);
    }
}
