use proptest::prelude::*;
use qcenter::frob::{counting_row, zfr_membership, FrobMonomial, PrimeRootData};
use qcenter::qscalar::{CycField, Generic, Laurent, RatFn, Q};
use qcenter::rootlat::{RootSystem, ReducedWord};
use qcenter::uqpbw::suites::random_element;
use qcenter::uqpbw::{BraidDir, Engine, Pbw};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::rc::Rc;

fn laurent() -> impl Strategy<Value = Laurent> {
    (prop::collection::vec(-3i64..=3, 1..4), -2i64..=2).prop_map(|(cs, shift)| {
        cs.iter().enumerate().fold(Laurent::zero(), |acc, (k, &c)| acc.add(&Laurent::monomial(Q::int(c), shift + k as i64)))
    })
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| (!d.is_zero()).then(|| RatFn::new(n, d)))
}

const TYPES: [&str; 6] = ["A1", "A2", "A3", "B2", "C3", "G2"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_functions_form_a_field(a in ratfn(), b in ratfn(), c in ratfn()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&RatFn::one().div(&a)), RatFn::one());
        }
    }

    #[test]
    fn evaluation_at_zeta_is_multiplicative(a in laurent(), b in laurent(), ell in 3u32..13) {
        let f = CycField::new(ell);
        let (x, y) = (RatFn::from_laurent(a), RatFn::from_laurent(b));
        let lhs = f.eval_ratfn(&x.mul(&y)).unwrap();
        let rhs = f.mul(&f.eval_ratfn(&x).unwrap(), &f.eval_ratfn(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn zeta_has_exact_order(ell in 1u32..30) {
        let f = CycField::new(ell);
        prop_assert_eq!(f.order(&f.zeta_pow(1), 2 * ell as u64), Some(ell as u64));
    }

    #[test]
    fn weyl_action_preserves_the_form(t in 0usize..TYPES.len(), word in prop::collection::vec(0usize..3, 0..8), l in prop::collection::vec(-3i64..=3, 3), m in prop::collection::vec(-3i64..=3, 3)) {
        let rs = RootSystem::parse(TYPES[t]).unwrap();
        let n = rs.rank;
        let w: Vec<usize> = word.into_iter().filter(|&i| i < n).collect();
        let (l, m) = (&l[..n], &m[..n]);
        prop_assert_eq!(rs.inner_weights(&rs.act_weight(&w, l), &rs.act_weight(&w, m)), rs.inner_weights(l, m));
    }

    #[test]
    fn counting_identity_holds(t in 0usize..TYPES.len(), ell in 2u32..40) {
        let rs = RootSystem::parse(TYPES[t]).unwrap();
        let row = counting_row(&rs, ell).unwrap();
        prop_assert!(row.skipped.is_some() || (row.identity && row.p_double_matches_table));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engine_is_associative_and_braided(seed in any::<u64>(), t in 0usize..3) {
        let rs = RootSystem::parse(["A1", "A2", "B2"][t]).unwrap();
        let e = Engine::new(Generic, Rc::new(Pbw::new(rs).unwrap())).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random_element(&e, &mut rng), random_element(&e, &mut rng), random_element(&e, &mut rng));
        prop_assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
        prop_assert_eq!(e.antipode(&e.mul(&x, &y)), e.mul(&e.antipode(&y), &e.antipode(&x)));
        let i = (seed % e.rank() as u64) as usize;
        prop_assert_eq!(e.braid(i, &e.braid(i, &x, BraidDir::Forward), BraidDir::Inverse), x);
    }

    #[test]
    fn frobenius_members_are_closed(t in 0usize..3, ell in prop::sample::select(vec![4u32, 6, 8, 10, 12]), m in prop::collection::vec(0u16..3, 8), n in prop::collection::vec(0u16..3, 8), mu in prop::collection::vec(-2i64..=2, 2)) {
        let rs = RootSystem::parse(["A1", "A2", "B2"][t]).unwrap();
        let Ok(data) = PrimeRootData::new(&rs, ell) else { return Ok(()) };
        let np = rs.num_positive();
        let mu: Vec<i64> = mu[..rs.rank].iter().zip(&data.prime.r_simple).map(|(c, r)| c * *r as i64).collect();
        let x = FrobMonomial { m: m[..np].to_vec(), m_prime: n[..np].to_vec(), mu };
        prop_assert!(zfr_membership(&x.doubled(), &data));
        if zfr_membership(&x, &data) {
            prop_assert!(zfr_membership(&x.doubled().product(&x), &data));
        }
    }
}

#[test]
fn user_words_give_the_same_algebra() {
    let rs = RootSystem::parse("A2").unwrap();
    let w = ReducedWord::parse(&rs, "2,1,2").unwrap();
    let p = Pbw::with_word(rs.clone(), w).unwrap();
    assert_eq!(p.betas.len(), 3);
    assert_ne!(p.betas, Pbw::new(rs).unwrap().betas);
}
