//! The transpose Frobenius map into `U_ζ` and membership in the Frobenius center.
//!
//! At ℓ = 4 for A1 the central monomials on this grid are `a^4` and `k_4`; `a^2` and `k_2` are not.

use qcenter::frob::{coset_representatives, frob_xi, zfr_membership, FrobMonomial, FrobPair};
use qcenter::rootlat::RootSystem;

fn main() {
    let fp = FrobPair::new(&RootSystem::parse("A1").unwrap(), 4).unwrap();
    let z = &fp.zeta;
    let d = &fp.data;
    println!("rescaled type {}, m = {}, |Gamma| = {}", d.prime.system.label, d.m, d.gamma1.order * d.gamma2.order);
    println!("image of a' = {}", z.format(&fp.txi(&fp.eps.a(0))));
    println!("xi on a^4 with weight 0: {:?}", frob_xi(&fp, &[4], &[0]));
    println!("coset representatives of P'/P'': {:?}", coset_representatives(d));

    for (m, mu) in [(1, 0), (2, 0), (0, 2), (0, 4), (1, 2)] {
        let x = FrobMonomial { m: vec![m], m_prime: vec![0], mu: vec![mu] };
        let central = z.is_central(&fp.realize_monomial(&x));
        println!("a^{} k_{mu}: member {}, central {central}", 2 * m, zfr_membership(&x, d));
    }
}
