//! The `drinfeld` and `pbw` suites: pairing values on PBW bases, Serre relations
//! in the radical of the pairing, and the Hopf and braid laws of the engine.

use super::braid::BraidDir;
use super::engine::{Engine, Tri};
use super::pbw::{Exps, Pbw};
use super::words::{words_of_weight, WordPoly};
use crate::qscalar::{Generic, RatFn, Ring};
use crate::report::{Case, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::rc::Rc;

fn weight_of(p: &Pbw, m: &Exps) -> Vec<i64> {
    p.weight(m)
}

/// `τ(e^{(M)}, b^N) = τ(a^M, f^{(N)}) = δ_{MN} Π (-1)^{m} q_β^{m(m-1)/2}` for total exponent `≤ bound`.
pub fn drinfeld_cases(p: &Pbw, bound: u16) -> Vec<Case> {
    let monos = p.monomials_up_to(bound);
    let (mut checked, mut bad) = (0usize, Vec::new());
    for m in &monos {
        for n in &monos {
            if weight_of(p, m) != weight_of(p, n) {
                continue;
            }
            let expected = if m == n { RatFn::from_laurent(p.g_factor(m)) } else { RatFn::zero() };
            let lhs = p.alg.pair(&p.e_divided(m), &p.b_mono(n));
            let rhs = p.alg.pair(&p.a_mono(m), &p.f_divided(n));
            checked += 1;
            if lhs != expected || rhs != expected {
                bad.push(format!("{m:?}/{n:?}"));
            }
        }
    }
    vec![Case::new(format!("divided powers against b and a against divided powers: {checked} pairs"), bad.is_empty()).with_detail(bad.iter().take(5).cloned().collect::<Vec<_>>().join(" "))]
}

/// Serre elements pair to zero with every opposite word of their weight, on both sides,
/// and so do their products with one extra letter.
pub fn serre_cases(p: &Pbw) -> Vec<Case> {
    let alg = &p.alg;
    let n = alg.rank();
    let mut cases = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let s = alg.serre(i, j);
            let mut elems = vec![s.clone()];
            for k in 0..n {
                elems.push(WordPoly::letter(k).mul(&s));
                elems.push(s.mul(&WordPoly::letter(k)));
            }
            let mut ok = true;
            let mut count = 0;
            for x in &elems {
                let wt = x.weight(n).expect("homogeneous");
                for w in words_of_weight(&wt) {
                    let u = WordPoly::from_word(w, RatFn::one());
                    ok &= alg.pair(x, &u).is_zero() && alg.pair(&u, x).is_zero();
                    count += 1;
                }
            }
            cases.push(Case::new(format!("Serre ({i},{j}) in the radical: {count} words"), ok));
        }
    }
    cases
}

pub fn verify_drinfeld(p: &Pbw, bound: u16) -> Report {
    let mut rep = Report::new("drinfeld").param("type", p.rs().label.clone()).param("bound", bound);
    rep.extend(drinfeld_cases(p, bound));
    rep.extend(serre_cases(p));
    rep
}

/// A random bounded element: a sum of up to two generator products with small integer coefficients.
pub fn random_element<R: Ring>(e: &Engine<R>, rng: &mut ChaCha8Rng) -> Tri<R::E> {
    let n = e.rank();
    let mut x = e.zero();
    for _ in 0..rng.gen_range(1..=2) {
        let mut t = e.scalar(e.ring.from_int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(0..n);
            let g = match rng.gen_range(0..3) {
                0 => e.a_simple(i),
                1 => e.b_simple(i),
                _ => {
                    let mut l = vec![0; n];
                    l[i] = if rng.gen_bool(0.5) { 1 } else { -1 };
                    e.k(l)
                }
            };
            t = e.mul(&t, &g);
        }
        x = e.add(&x, &t);
    }
    x
}

/// Associativity, unit, antipode anti-homomorphism and braid automorphism on seeded samples.
pub fn engine_law_cases(e: &Engine<Generic>, samples: usize, seed: u64) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = e.one();
    let (mut assoc, mut unit, mut anti, mut braid_hom, mut braid_inv) = (0, 0, 0, 0, 0);
    for _ in 0..samples {
        let x = random_element(e, &mut rng);
        let y = random_element(e, &mut rng);
        let z = random_element(e, &mut rng);
        let xy = e.mul(&x, &y);
        if e.mul(&xy, &z) != e.mul(&x, &e.mul(&y, &z)) {
            assoc += 1;
        }
        if e.mul(&one, &x) != x || e.mul(&x, &one) != x {
            unit += 1;
        }
        if e.antipode(&xy) != e.mul(&e.antipode(&y), &e.antipode(&x)) {
            anti += 1;
        }
        let i = rng.gen_range(0..e.rank());
        let t = |u: &Tri<RatFn>| e.braid(i, u, BraidDir::Forward);
        if t(&xy) != e.mul(&t(&x), &t(&y)) {
            braid_hom += 1;
        }
        if e.braid(i, &t(&x), BraidDir::Inverse) != x {
            braid_inv += 1;
        }
    }
    let case = |name: &str, bad: usize| Case::new(format!("{name} on {samples} samples"), bad == 0).with_detail(format!("{bad} failures"));
    vec![
        case("associativity", assoc),
        case("unit", unit),
        case("antipode reverses products", anti),
        case("braid operator is multiplicative", braid_hom),
        case("inverse braid undoes braid", braid_inv),
    ]
}

pub fn verify_pbw(p: Rc<Pbw>, samples: usize, seed: u64) -> Result<Report, crate::qscalar::PoleError> {
    let label = p.rs().label.clone();
    let e = Engine::new(Generic, p)?;
    let mut rep = Report::new("pbw").param("type", label).param("samples", samples).param("seed", seed);
    rep.extend(engine_law_cases(&e, samples, seed));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlat::RootSystem;

    fn pbw(t: char, n: usize) -> Rc<Pbw> {
        Rc::new(Pbw::new(RootSystem::new(t, n).unwrap()).unwrap())
    }

    #[test]
    fn a2_drinfeld() {
        let r = verify_drinfeld(&pbw('A', 2), 3);
        assert_eq!(r.failures(), 0, "{:?}", r.cases);
    }

    #[test]
    fn a1_engine_laws() {
        let r = verify_pbw(pbw('A', 1), 30, 1).unwrap();
        assert_eq!(r.failures(), 0, "{:?}", r.cases);
    }

    #[test]
    fn broken_serre_is_detected() {
        let p = pbw('A', 2);
        let s = p.alg.serre(0, 1).add(&WordPoly::letter(0).mul(&WordPoly::letter(0)).mul(&WordPoly::letter(1)));
        let wt = s.weight(2).unwrap();
        assert!(words_of_weight(&wt).into_iter().any(|w| !p.alg.pair(&s, &WordPoly::from_word(w, RatFn::one())).is_zero()));
    }
}
