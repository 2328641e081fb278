//! Root data for the supported types: positive roots, the default reduced word
//! and the PBW root sequence it induces.
//!
//! `cargo run -p qcenter --example root_systems -- G2`

use qcenter::rootlat::{longest_word, RootSystem};
use qcenter::uqpbw::Pbw;

fn main() {
    let label = std::env::args().nth(1).unwrap_or_else(|| "B2".into());
    let rs = RootSystem::parse(&label).expect("a type such as A2, B3, G2");
    println!("{rs}: rank {}, {} positive roots, d = {}", rs.rank, rs.num_positive(), rs.d);
    println!("Cartan matrix {:?}", rs.cartan);
    println!("rho = {:?}, 2rho in root coordinates = {:?}", rs.rho(), rs.two_rho_roots());
    let w = longest_word(&rs);
    println!("longest word {}", w.display());
    let pbw = Pbw::new(rs.clone()).unwrap();
    for (k, (b, d)) in pbw.betas.iter().zip(&pbw.dbeta).enumerate() {
        let kind = if rs.is_short(b) { "short" } else { "long" };
        println!("  beta_{} = {b:?} ({kind}, d = {d}, coroot {:?})", k + 1, rs.coroot_coords(b));
    }
}
