//! `Ũ = U ⊗ F[P/P₀]`, the embedding of the `q ↦ -q` twist of `U` into it,
//! and the untwisting map on sign-invariant elements.

use super::signs::{root_sign, sign_act, sign_mask, SignGroup};
use super::{root_label, Specialized, UzetaError};
use crate::qscalar::{gauss_factorial, Generic, RatFn, Ring};
use crate::report::{Case, Report};
use crate::rootlat::{ReducedWord, RootSystem};
use crate::uqpbw::{Engine, Pbw, Tri, WordPoly, WordTri};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::rc::Rc;

/// `Σ_δ u_δ δ` with the group factor on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct Twisted<E> {
    pub parts: BTreeMap<u32, Tri<E>>,
}

impl<E> Default for Twisted<E> {
    fn default() -> Self {
        Twisted { parts: BTreeMap::new() }
    }
}

impl<E: Clone> Twisted<E> {
    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Arithmetic in `Ũ` on top of an engine for `U`.
pub struct TwistedAlgebra<'a, R: Ring> {
    pub e: &'a Engine<R>,
    pub group: SignGroup,
}

impl<'a, R: Ring> TwistedAlgebra<'a, R> {
    pub fn new(e: &'a Engine<R>) -> Self {
        TwistedAlgebra { e, group: SignGroup::new(e.pbw.rs()) }
    }
    fn rs(&self) -> &RootSystem {
        self.e.pbw.rs()
    }

    /// `u δ`.
    pub fn single(&self, u: Tri<R::E>, mask: u32) -> Twisted<R::E> {
        let mut t = Twisted::default();
        if !u.is_empty() {
            t.parts.insert(mask, u);
        }
        t
    }
    pub fn lift(&self, u: Tri<R::E>) -> Twisted<R::E> {
        self.single(u, 0)
    }
    pub fn delta(&self, mask: u32) -> Twisted<R::E> {
        self.single(self.e.one(), mask)
    }
    pub fn one(&self) -> Twisted<R::E> {
        self.delta(0)
    }

    pub fn add(&self, x: &Twisted<R::E>, y: &Twisted<R::E>) -> Twisted<R::E> {
        let mut out = x.clone();
        for (s, v) in &y.parts {
            let w = match out.parts.get(s) {
                Some(u) => self.e.add(u, v),
                None => v.clone(),
            };
            if w.is_empty() {
                out.parts.remove(s);
            } else {
                out.parts.insert(*s, w);
            }
        }
        out
    }
    pub fn scale(&self, x: &Twisted<R::E>, c: &R::E) -> Twisted<R::E> {
        let mut out = Twisted::default();
        for (s, u) in &x.parts {
            let v = self.e.scale(u, c);
            if !v.is_empty() {
                out.parts.insert(*s, v);
            }
        }
        out
    }
    pub fn sub(&self, x: &Twisted<R::E>, y: &Twisted<R::E>) -> Twisted<R::E> {
        self.add(x, &self.scale(y, &self.e.ring.from_int(-1)))
    }

    /// `(uδ)(vδ′) = u δ(v) δδ′`.
    pub fn mul(&self, x: &Twisted<R::E>, y: &Twisted<R::E>) -> Twisted<R::E> {
        let mut out = Twisted::default();
        for (s, u) in &x.parts {
            for (t, v) in &y.parts {
                let p = self.e.mul(u, &sign_act(self.e, *s, v));
                out = self.add(&out, &self.single(p, s ^ t));
            }
        }
        out
    }
    pub fn mul_all<'b>(&self, xs: impl IntoIterator<Item = &'b Twisted<R::E>>) -> Twisted<R::E>
    where
        R::E: 'b,
    {
        xs.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
    pub fn pow(&self, x: &Twisted<R::E>, n: u32) -> Twisted<R::E> {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// `δ x δ⁻¹`.
    pub fn conj(&self, mask: u32, x: &Twisted<R::E>) -> Twisted<R::E> {
        let mut out = Twisted::default();
        for (s, u) in &x.parts {
            out.parts.insert(*s, sign_act(self.e, mask, u));
        }
        out
    }
    pub fn is_invariant(&self, x: &Twisted<R::E>) -> bool {
        self.group.generators().into_iter().all(|s| self.conj(s, x) == *x)
    }

    /// Bitmask of `δ_{α_i}`.
    pub fn alpha_mask(&self, i: usize) -> u32 {
        let rs = self.rs();
        sign_mask(rs, &rs.root_to_weight(&rs.simple_root(i)))
    }

    /// Images of `a_i`, `b_i` of the twisted algebra: `(-1)^{d_i} a_i φ_i` and `b_i φ_i δ_{α_i}`.
    pub fn embed_generators(&self, jset: &[usize]) -> Result<(Vec<Twisted<R::E>>, Vec<Twisted<R::E>>), UzetaError> {
        let rs = self.rs();
        twist_set_check(rs, jset)?;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 0..rs.rank {
            let phi = if jset.contains(&i) { self.alpha_mask(i) } else { 0 };
            let s = self.e.ring.from_int(if rs.sym[i] % 2 == 0 { 1 } else { -1 });
            a.push(self.single(self.e.scale(&self.e.a_simple(i), &s), phi));
            b.push(self.single(self.e.b_simple(i), phi ^ self.alpha_mask(i)));
        }
        Ok((a, b))
    }
    /// Image `k_λ δ_λ` of `k_λ`.
    pub fn embed_k(&self, l: &[i64]) -> Twisted<R::E> {
        self.single(self.e.k(l.to_vec()), sign_mask(self.rs(), l))
    }
}

/// `Ξ(Σ u_δ δ) = Σ u_δ` on sign-invariant elements.
pub fn untwist<R: Ring>(ta: &TwistedAlgebra<R>, x: &Twisted<R::E>) -> Result<Tri<R::E>, UzetaError> {
    if !ta.is_invariant(x) {
        return Err(UzetaError::NotInvariant);
    }
    Ok(x.parts.values().fold(ta.e.zero(), |acc, u| ta.e.add(&acc, u)))
}

fn twist_set_check(rs: &RootSystem, jset: &[usize]) -> Result<(), UzetaError> {
    if let Some(&i) = jset.iter().find(|&&i| i >= rs.rank) {
        return Err(UzetaError::InvalidTwistSet(jset.to_vec(), format!("index {} out of range", i + 1)));
    }
    for i in 0..rs.rank {
        for j in 0..rs.rank {
            if i != j && (rs.sym[i] * rs.cartan[i][j]).rem_euclid(2) == 1 && jset.contains(&i) == jset.contains(&j) {
                return Err(UzetaError::InvalidTwistSet(jset.to_vec(), format!("exactly one of {} and {} must be included", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Whether `J` separates every pair `i ≠ j` with `d_i a_ij` odd.
pub fn twist_set_is_valid(rs: &RootSystem, jset: &[usize]) -> bool {
    twist_set_check(rs, jset).is_ok()
}

/// All valid `J`, ordered by size and then lexicographically.
pub fn valid_twist_sets(rs: &RootSystem) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..1 << rs.rank).map(|m| (0..rs.rank).filter(|i| m >> i & 1 == 1).collect()).collect();
    all.sort_by(|x: &Vec<usize>, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    all.into_iter().filter(|j| twist_set_is_valid(rs, j)).collect()
}

/// The first valid `J` in the order of [`valid_twist_sets`].
pub fn canonical_twist_set(rs: &RootSystem) -> Vec<usize> {
    valid_twist_sets(rs).into_iter().next().expect("a valid subset exists for every Cartan matrix")
}

/// `[m choose n]` at `q_i = (-q)^{d_i}`.
fn twisted_binomial(m: u32, n: u32, d: i64) -> RatFn {
    let num = gauss_factorial(m, d);
    let den = gauss_factorial(n, d).mul(&gauss_factorial(m - n, d));
    RatFn::from_laurent(num.div_exact(&den).expect("Gaussian binomials are Laurent")).subs_neg()
}

/// The defining relations of `U` at `-q`, evaluated on the images of the embedding.
pub fn embedding_relations(e: &Engine<Generic>, jset: &[usize]) -> Result<Vec<Case>, UzetaError> {
    let ta = TwistedAlgebra::new(e);
    let rs = e.pbw.rs().clone();
    let n = rs.rank;
    let (a, b) = ta.embed_generators(jset)?;
    let tq = |p: i64| RatFn::q_pow(p).subs_neg();
    let fund = |i: usize| {
        let mut w = vec![0; n];
        w[i] = 1;
        w
    };
    let tag = format!("J={:?}", jset.iter().map(|i| i + 1).collect::<Vec<_>>());
    let mut cases = Vec::new();
    let alpha_w: Vec<Vec<i64>> = (0..n).map(|i| rs.root_to_weight(&rs.simple_root(i))).collect();
    for i in 0..n {
        let k = ta.embed_k(&fund(i));
        let kinv = ta.embed_k(&fund(i).iter().map(|x| -x).collect::<Vec<_>>());
        cases.push(Case::new(format!("{tag} k(w{0}) k(-w{0}) = 1", i + 1), ta.mul(&k, &kinv) == ta.one()));
        for j in 0..n {
            let p = rs.pair_weight_root(&fund(i), &rs.simple_root(j));
            let lhs = ta.mul_all([&k, &a[j], &kinv]);
            cases.push(Case::new(format!("{tag} k(w{}) a{} k^-1", i + 1, j + 1), ta.sub(&lhs, &ta.scale(&a[j], &tq(p))).is_zero()));
            let lhs = ta.mul_all([&k, &b[j], &kinv]);
            cases.push(Case::new(format!("{tag} k(w{}) b{} k^-1", i + 1, j + 1), ta.sub(&lhs, &ta.scale(&b[j], &tq(-p))).is_zero()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = ta.sub(&ta.mul(&a[i], &b[j]), &ta.mul(&b[j], &a[i]));
            let rhs = if i == j {
                let d = rs.sym[i];
                let c = tq(d).sub(&tq(-d));
                let kk = ta.sub(&ta.embed_k(&alpha_w[i]), &ta.embed_k(&alpha_w[i].iter().map(|x| -x).collect::<Vec<_>>()));
                ta.scale(&kk, &c)
            } else {
                Twisted::default()
            };
            cases.push(Case::new(format!("{tag} [a{}, b{}]", i + 1, j + 1), ta.sub(&lhs, &rhs).is_zero()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let m = (1 - rs.cartan[i][j]) as u32;
            for (side, g) in [("a", &a), ("b", &b)] {
                let mut acc = Twisted::default();
                for t in 0..=m {
                    let term = ta.mul_all([&ta.pow(&g[i], m - t), &g[j], &ta.pow(&g[i], t)]);
                    let c = twisted_binomial(m, t, rs.sym[i]);
                    let c = if t % 2 == 0 { c } else { c.neg() };
                    acc = ta.add(&acc, &ta.scale(&term, &c));
                }
                cases.push(Case::new(format!("{tag} serre {side}{} {side}{}", i + 1, j + 1), acc.is_zero()));
            }
        }
    }
    Ok(cases)
}

/// Signs `s`, `t` in `θ(e_β) = s e_β φ_β` and `θ(S f_β) = t (S f_β) φ_β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootVectorSign {
    pub root: Vec<i64>,
    pub e_sign: Option<i64>,
    pub sf_sign: Option<i64>,
}

/// Computes the root-vector signs word by word; `None` marks a failure of `±` proportionality.
pub fn root_vector_signs(pbw: &Pbw, jset: &[usize]) -> Result<Vec<RootVectorSign>, UzetaError> {
    let rs = pbw.rs();
    twist_set_check(rs, jset)?;
    let n = rs.rank;
    let phi: Vec<u32> = (0..n).map(|i| if jset.contains(&i) { sign_mask(rs, &rs.root_to_weight(&rs.simple_root(i))) } else { 0 }).collect();
    let unit = |j: usize| -> Vec<i64> { (0..n).map(|i| (i == j) as i64).collect() };
    // Sign from moving each φ past the later letters.
    let pass_sign = |letters: &[u8]| -> i64 {
        let mut s = 1;
        for p in 0..letters.len() {
            for q in p + 1..letters.len() {
                s *= root_sign(phi[letters[p] as usize], &unit(letters[q] as usize));
            }
        }
        s
    };
    let mut out = Vec::new();
    for k in 0..pbw.n_roots() {
        let beta = &pbw.betas[k];
        let d = rs.d_of(beta);
        let par = if d % 2 == 0 { 1 } else { -1 };
        let a = pbw.a_root(k);
        let mut y = WordPoly::zero();
        for (w, c) in &a.terms {
            let s = pass_sign(w);
            let c = c.subs_neg();
            y.add_term(w.clone(), if s == 1 { c } else { c.neg() });
        }
        let e_sign = [1i64, -1].into_iter().find(|&s| pbw.alg.plus_vanishes(&y.sub(&a.scale(&RatFn::int(s))))).map(|s| s * par);
        let b = pbw.b_root(k);
        let mut y = WordPoly::zero();
        for (w, c) in &b.terms {
            let rev: Vec<u8> = w.iter().rev().copied().collect();
            let dsum: i64 = w.iter().map(|&i| rs.sym[i as usize]).sum();
            let s = pass_sign(&rev) * if dsum % 2 == 0 { 1 } else { -1 };
            let c = c.subs_neg();
            y.add_term(w.clone(), if s == 1 { c } else { c.neg() });
        }
        let sf_sign = [1i64, -1]
            .into_iter()
            .find(|&s| pbw.alg.vanishes(&WordTri::from_f(&y.sub(&b.scale(&RatFn::int(s))), n)))
            .map(|s| s * par);
        out.push(RootVectorSign { root: beta.clone(), e_sign, sf_sign });
    }
    Ok(out)
}

/// Random products of embedded generators whose weight is sign-invariant.
fn invariant_samples<R: Ring>(ta: &TwistedAlgebra<R>, jset: &[usize], count: usize, seed: u64) -> Result<Vec<Twisted<R::E>>, UzetaError> {
    let rs = ta.e.pbw.rs().clone();
    let n = rs.rank;
    let (a, b) = ta.embed_generators(jset)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let len = rng.gen_range(1..=4);
        let mut wt = vec![0i64; n];
        let mut x = ta.one();
        for _ in 0..len {
            let i = rng.gen_range(0..n);
            let g = match rng.gen_range(0..3) {
                0 => {
                    wt[i] += 1;
                    a[i].clone()
                }
                1 => {
                    wt[i] -= 1;
                    b[i].clone()
                }
                _ => {
                    let mut l = vec![0; n];
                    l[i] = if rng.gen_bool(0.5) { 1 } else { -1 };
                    ta.embed_k(&l)
                }
            };
            x = ta.mul(&x, &g);
        }
        if ta.group.weight_is_invariant(&wt) && !x.is_zero() {
            out.push(x);
        }
    }
    Ok(out)
}

/// Multiplicativity of `Ξ` on sampled invariant pairs, over any coefficient ring.
pub fn untwist_cases<R: Ring>(e: &Engine<R>, jset: &[usize], count: usize, seed: u64) -> Result<Vec<Case>, UzetaError> {
    let ta = TwistedAlgebra::new(e);
    let xs = invariant_samples(&ta, jset, count, seed)?;
    let mut cases = Vec::new();
    let mut inv_ok = true;
    for x in &xs {
        inv_ok &= ta.is_invariant(x) && ta.group.is_invariant(e, &untwist(&ta, x)?);
    }
    cases.push(Case::new(format!("{} samples invariant", xs.len()), inv_ok));
    let mut mult_ok = true;
    let mut pairs = 0;
    for (p, x) in xs.iter().enumerate() {
        for y in xs.iter().skip(p).take(3) {
            let lhs = untwist(&ta, &ta.mul(x, y))?;
            let rhs = e.mul(&untwist(&ta, x)?, &untwist(&ta, y)?);
            mult_ok &= lhs == rhs;
            pairs += 1;
        }
    }
    cases.push(Case::new(format!("untwist multiplicative on {pairs} pairs"), mult_ok));
    let rejects = match ta.group.odd.first() {
        Some(&i) => untwist(&ta, &ta.lift(e.a_simple(i))).is_err(),
        None => true,
    };
    cases.push(Case::new("untwist rejects non-invariant input", rejects));
    Ok(cases)
}

/// The `theta` suite: sign-group automorphisms, embedding relations for every valid `J`,
/// root-vector signs, and the untwisting map at `ζ`.
pub fn verify_theta(rs: &RootSystem, ell: u32, jset: Option<Vec<usize>>, word: Option<ReducedWord>, samples: usize, seed: u64) -> Result<Report, UzetaError> {
    let jc = jset.unwrap_or_else(|| canonical_twist_set(rs));
    twist_set_check(rs, &jc)?;
    let mut rep = Report::new("theta").param("type", rs.label.clone()).param("ell", ell).param("seed", seed);
    rep.convention("J", jc.iter().map(|i| i + 1).collect::<Vec<_>>());
    rep.convention("J_canonical", canonical_twist_set(rs).iter().map(|i| i + 1).collect::<Vec<_>>());
    let pbw = Rc::new(match word {
        Some(w) => Pbw::with_word(rs.clone(), w)?,
        None => Pbw::new(rs.clone())?,
    });
    let generic = Engine::new(Generic, pbw.clone())?;
    let ta = TwistedAlgebra::new(&generic);
    let xs: Vec<Tri<RatFn>> = (0..generic.n_roots()).map(|k| generic.add(&generic.a(k), &generic.mul(&generic.k_fundamental(0), &generic.b(k)))).collect();
    let mut auto_ok = true;
    for s in ta.group.elements() {
        for x in &xs {
            auto_ok &= sign_act(&generic, s, &sign_act(&generic, s, x)) == *x;
            for y in &xs {
                auto_ok &= sign_act(&generic, s, &generic.mul(x, y)) == generic.mul(&sign_act(&generic, s, x), &sign_act(&generic, s, y));
            }
        }
    }
    rep.push(Case::new(format!("sign group of order {} acts by involutive automorphisms", ta.group.order()), auto_ok));
    for j in valid_twist_sets(rs) {
        rep.extend(embedding_relations(&generic, &j)?);
    }
    let signs = root_vector_signs(&pbw, &jc)?;
    for s in &signs {
        let ok = s.e_sign.is_some() && s.sf_sign.is_some();
        let fmt = |v: Option<i64>| v.map_or("none".to_string(), |x| if x > 0 { "+".into() } else { "-".into() });
        rep.push(Case::new(format!("root vector signs {}", root_label(&s.root)), ok).with_detail(format!("e: {}, Sf: {}", fmt(s.e_sign), fmt(s.sf_sign))));
    }
    rep.convention("root_vector_signs", serde_json::to_value(&signs).expect("serializes"));
    let spec = Specialized::from_pbw(pbw, ell)?;
    rep.extend(untwist_cases(&spec.engine, &jc, samples, seed)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: char, n: usize) -> RootSystem {
        RootSystem::new(t, n).unwrap()
    }

    #[test]
    fn valid_sets() {
        assert_eq!(valid_twist_sets(&rs('A', 1)), vec![vec![], vec![0]]);
        assert_eq!(valid_twist_sets(&rs('A', 2)), vec![vec![0], vec![1]]);
        assert_eq!(valid_twist_sets(&rs('B', 2)).len(), 4);
        assert_eq!(canonical_twist_set(&rs('A', 3)), vec![1]);
        assert!(!twist_set_is_valid(&rs('A', 2), &[0, 1]));
    }

    #[test]
    fn embedding_relations_hold_for_every_set() {
        for (t, n) in [('A', 1), ('A', 2), ('B', 2)] {
            let e = Engine::new(Generic, Rc::new(Pbw::new(rs(t, n)).unwrap())).unwrap();
            for j in valid_twist_sets(&rs(t, n)) {
                let bad: Vec<_> = embedding_relations(&e, &j).unwrap().into_iter().filter(|c| !c.passed()).map(|c| c.name).collect();
                assert!(bad.is_empty(), "{t}{n}: {bad:?}");
            }
        }
    }

    #[test]
    fn invalid_set_rejected() {
        let e = Engine::new(Generic, Rc::new(Pbw::new(rs('A', 2)).unwrap())).unwrap();
        assert!(matches!(embedding_relations(&e, &[]), Err(UzetaError::InvalidTwistSet(..))));
    }

    #[test]
    fn root_vectors_are_signed_multiples() {
        for (t, n) in [('A', 2), ('B', 2), ('A', 3)] {
            let p = Pbw::new(rs(t, n)).unwrap();
            for j in valid_twist_sets(&rs(t, n)) {
                for s in root_vector_signs(&p, &j).unwrap() {
                    assert!(s.e_sign.is_some() && s.sf_sign.is_some(), "{t}{n} J={j:?} {s:?}");
                }
            }
        }
    }

    #[test]
    fn untwist_is_multiplicative_a1_six() {
        let s = Specialized::new(&rs('A', 1), 6, None).unwrap();
        let cases = untwist_cases(&s.engine, &[0], 12, 7).unwrap();
        assert!(cases.iter().all(|c| c.passed()), "{cases:?}");
    }

    #[test]
    fn untwist_of_simple_products() {
        let s = Specialized::new(&rs('A', 1), 6, None).unwrap();
        let ta = TwistedAlgebra::new(&s.engine);
        let u = s.engine.pow(&s.engine.a(0), 2);
        assert_eq!(untwist(&ta, &ta.lift(u.clone())).unwrap(), u);
        let x = ta.single(s.engine.a(0), 1);
        let y = ta.single(s.engine.b(0), 1);
        assert_eq!(untwist(&ta, &ta.mul(&x, &y)).unwrap(), s.engine.neg(&s.engine.mul(&s.engine.a(0), &s.engine.b(0))));
    }

    #[test]
    fn theta_suite_a2() {
        let r = verify_theta(&rs('A', 2), 6, None, None, 8, 1).unwrap();
        assert!(r.passed(), "{:?}", r.cases.iter().filter(|c| c.failed()).collect::<Vec<_>>());
    }
}
