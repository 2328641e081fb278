//! Membership in the Frobenius center, the brute-force crosscheck against
//! centrality in `U_ζ`, invariance under `Γ`, and `Ξ` on `Γ`-invariants.

use super::txi::{asb_element, txi_cases, FrobPair};
use super::{FrobError, Gamma2Kind, PrimeRootData};
use crate::modrep::linalg;
use crate::qscalar::{AtRoot, Cyc};
use crate::report::{Case, Report};
use crate::uqpbw::{Engine, Exps, PbwKey, Tri, Wt};
use crate::uzeta::{canonical_twist_set, coroot_sign_act, sign_act, untwist, SignGroup, TwistedAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

/// Which group plays `Γ₁` on the root-vector part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gamma1Model {
    /// `𝒢(Δ′)`: signs on the simple roots of `Δ′` with odd `d′`.
    SignGroup,
    /// Every sign character of `Q′`, except in the short case where it is `𝒢(Δ′)`.
    /// Differs from `𝒢(Δ′)` only when `Δ′` has simple roots with even `d′` outside the short case.
    AllCharacters,
}

/// `a^{r m} k_μ S(b^{r m′})` data: exponents indexed by positive roots of `Δ`, `μ` in
/// fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FrobMonomial {
    pub m: Vec<u16>,
    pub m_prime: Vec<u16>,
    pub mu: Wt,
}

impl FrobMonomial {
    pub fn product(&self, o: &FrobMonomial) -> FrobMonomial {
        let add = |a: &[u16], b: &[u16]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        FrobMonomial { m: add(&self.m, &o.m), m_prime: add(&self.m_prime, &o.m_prime), mu: self.mu.iter().zip(&o.mu).map(|(x, y)| x + y).collect() }
    }
    pub fn doubled(&self) -> FrobMonomial {
        self.product(self)
    }
}

/// `Σ_{α∈Δ₁⁺}(m_α + m′_α) α∨ ∈ 2Q∨` and `μ ∈ P″`; for odd `ℓ`, only `μ ∈ P′`.
pub fn zfr_membership(mono: &FrobMonomial, data: &PrimeRootData) -> bool {
    if !data.in_p_prime(&mono.mu) {
        return false;
    }
    if data.ell() % 2 == 1 {
        return true;
    }
    let rs = &data.rs;
    let mut c = vec![0i64; rs.rank];
    for &k in &data.lattices.delta1 {
        let v = rs.coroot_coords(&rs.positive_roots[k]);
        let s = (mono.m[k] + mono.m_prime[k]) as i64;
        for i in 0..rs.rank {
            c[i] += s * v[i];
        }
    }
    c.iter().all(|x| x % 2 == 0) && data.in_p_double(&mono.mu)
}

/// One representative of each class of `P′/P″`, from `Σ ε_i r_i ϖ_i`, `ε_i ∈ {0, 1}`.
pub fn coset_representatives(data: &PrimeRootData) -> Vec<Wt> {
    let n = data.rs.rank;
    let mut reps: Vec<Wt> = Vec::new();
    for mask in 0u32..1 << n {
        let mu: Wt = (0..n).map(|i| if mask >> i & 1 == 1 { data.prime.r_simple[i] as i64 } else { 0 }).collect();
        let fresh = reps.iter().all(|r| {
            let d: Vec<i64> = mu.iter().zip(r).map(|(a, b)| a - b).collect();
            !data.in_p_double(&d)
        });
        if fresh {
            reps.push(mu);
        }
    }
    reps
}

impl FrobPair {
    /// PBW-position exponents from root-indexed ones.
    fn positions(&self, by_root: &[u16]) -> Exps {
        let rs = self.rs();
        self.zeta.pbw.betas.iter().map(|b| by_root[rs.root_index(b).expect("positive root")]).collect()
    }

    /// The monomial realized in `U_ζ`.
    pub fn realize_monomial(&self, mono: &FrobMonomial) -> Tri<Cyc> {
        self.realize(&self.positions(&mono.m), &mono.mu, &self.positions(&mono.m_prime))
    }

    /// Its preimage `a′^m k_{μ′} S(b′^{m′})` in `U_ε(Δ′)`.
    pub fn preimage(&self, mono: &FrobMonomial) -> Result<Tri<Cyc>, FrobError> {
        let mu = self.data.prime.to_prime_weight(&mono.mu).ok_or_else(|| FrobError::NotInPPrime(mono.mu.clone()))?;
        Ok(asb_element(&self.eps, &self.positions(&mono.m), &mu, &self.positions(&mono.m_prime)))
    }

    /// Sign masks generating `Γ₁` under the chosen model.
    pub fn gamma1_generators(&self, model: Gamma1Model) -> Vec<u32> {
        if self.data.ell() % 2 == 1 {
            return Vec::new();
        }
        match model {
            Gamma1Model::AllCharacters if self.data.gamma2_kind != Gamma2Kind::ShortCoroots => (0..self.data.rs.rank).map(|i| 1 << i).collect(),
            _ => SignGroup::new(&self.data.prime.system).generators(),
        }
    }

    /// Fixed by `Γ₁` (signs on root vectors) and `Γ₂` (coroot signs on the Cartan part).
    pub fn gamma_invariant(&self, e: &Engine<AtRoot>, u: &Tri<Cyc>, model: Gamma1Model) -> bool {
        if self.data.ell() % 2 == 1 {
            return true;
        }
        self.gamma1_generators(model).into_iter().all(|s| sign_act(e, s, u) == *u) && self.data.gamma2_generators.iter().all(|nu| coroot_sign_act(e, nu, u) == *u)
    }
}

fn grid(n_roots: usize, bound: u16, reps: &[Wt]) -> Vec<FrobMonomial> {
    let mut exps: Vec<Vec<u16>> = vec![Vec::new()];
    for _ in 0..2 * n_roots {
        exps = exps.into_iter().flat_map(|v| (0..=bound).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    let mut out = Vec::new();
    for v in &exps {
        for mu in reps {
            out.push(FrobMonomial { m: v[..n_roots].to_vec(), m_prime: v[n_roots..].to_vec(), mu: mu.clone() });
        }
    }
    out
}

/// Brute force over exponents `≤ bound` per root and `μ` over `P′/P″`:
/// membership, centrality in `U_ζ` and `Γ`-invariance of the preimage must agree.
pub fn zfr_crosscheck(fp: &FrobPair, bound: u16) -> Result<Vec<Case>, FrobError> {
    let data = &fp.data;
    let reps = coset_representatives(data);
    let monos = grid(data.rs.num_positive(), bound, &reps);
    let mut central_dis = Vec::new();
    let mut gamma_dis = Vec::new();
    let mut chars_dis = Vec::new();
    let mut members = Vec::new();
    let mut all_central = true;
    for mono in &monos {
        let mem = zfr_membership(mono, data);
        let central = fp.zeta.is_central(&fp.realize_monomial(mono));
        let pre = fp.preimage(mono)?;
        let inv = fp.gamma_invariant(&fp.eps, &pre, Gamma1Model::SignGroup);
        if mem != fp.gamma_invariant(&fp.eps, &pre, Gamma1Model::AllCharacters) {
            chars_dis.push(mono.clone());
        }
        all_central &= central;
        if mem != central {
            central_dis.push(mono.clone());
        }
        if mem != inv {
            gamma_dis.push(mono.clone());
        }
        if mem {
            members.push(mono.clone());
        }
    }
    let n = monos.len();
    let fmt = |v: &[FrobMonomial]| v.iter().take(3).map(|m| format!("{m:?}")).collect::<Vec<_>>().join("; ");
    let mut cases = vec![
        Case::new(format!("membership <=> central on {n} monomials ({} members)", members.len()), central_dis.is_empty()).with_detail(fmt(&central_dis)),
        Case::new(format!("membership <=> Gamma-invariant preimage on {n} monomials"), gamma_dis.is_empty()).with_detail(fmt(&gamma_dis)),
        Case::new(format!("membership <=> invariance under all sign characters on {n} monomials"), chars_dis.is_empty()).with_detail(fmt(&chars_dis)),
    ];
    if data.ell() % 2 == 1 {
        cases.push(Case::new("odd ell: every grid monomial is central", all_central));
    }
    let mut closed = true;
    for (i, x) in members.iter().enumerate() {
        for y in members.iter().skip(i).take(4) {
            closed &= zfr_membership(&x.product(y), data);
        }
    }
    cases.push(Case::new("members closed under products", closed));
    let doubling = monos.iter().filter(|m| !zfr_membership(m, data)).all(|m| zfr_membership(&m.doubled(), data));
    cases.push(Case::new("doubling a non-member gives a member", doubling));
    Ok(cases)
}

fn rank_of(ring: &AtRoot, xs: &[Tri<Cyc>]) -> usize {
    let keys: BTreeSet<&PbwKey> = xs.iter().flat_map(|x| x.terms.keys()).collect();
    let keys: Vec<&PbwKey> = keys.into_iter().collect();
    let mut m = linalg::zeros(ring, xs.len(), keys.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, k) in keys.iter().enumerate() {
            if let Some(c) = x.terms.get(*k) {
                m.set(i, j, c.clone());
            }
        }
    }
    linalg::rank(ring, &m)
}

/// For `ε = -1`: `Ξ` carries sampled `Γ`-invariant words of `U_{-1}(Δ′)` to `Γ`-invariants
/// of `U_1(Δ′)`, multiplicatively and without dropping rank.
pub fn xi_cases(fp: &FrobPair, samples: usize, seed: u64) -> Result<Vec<Case>, FrobError> {
    if fp.data.ctx.epsilon == 1 {
        return Ok(vec![Case::skipped("Xi on Gamma-invariants", "epsilon = +1")]);
    }
    let sys = fp.data.prime.system.clone();
    let minus = &fp.eps;
    let plus = Engine::new(AtRoot::new(1), minus.pbw.clone()).map_err(crate::uzeta::UzetaError::from)?;
    let ta = TwistedAlgebra::new(&plus);
    let jset = canonical_twist_set(&sys);
    let (ta_a, ta_b) = ta.embed_generators(&jset)?;
    let n = sys.rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::new();
    let mut us = Vec::new();
    let mut attempts = 0;
    while xs.len() < samples && attempts < 200 * samples {
        attempts += 1;
        let mut x = ta.one();
        let mut u = minus.one();
        for _ in 0..rng.gen_range(1..=4) {
            let i = rng.gen_range(0..n);
            let (tx, tu) = match rng.gen_range(0..3) {
                0 => (ta_a[i].clone(), minus.a_simple(i)),
                1 => (ta_b[i].clone(), minus.b_simple(i)),
                _ => {
                    let mut l = vec![0; n];
                    l[i] = if rng.gen_bool(0.5) { 1 } else { -1 };
                    (ta.embed_k(&l), minus.k(l))
                }
            };
            x = ta.mul(&x, &tx);
            u = minus.mul(&u, &tu);
        }
        if !u.is_empty() && fp.gamma_invariant(minus, &u, Gamma1Model::SignGroup) {
            xs.push(x);
            us.push(u);
        }
    }
    let mut images = Vec::new();
    for x in &xs {
        images.push(untwist(&ta, x)?);
    }
    let mut cases = Vec::new();
    let inv = images.iter().all(|y| fp.gamma_invariant(&plus, y, Gamma1Model::SignGroup));
    cases.push(Case::new(format!("Xi of {} Gamma-invariant samples is Gamma-invariant", xs.len()), inv && xs.len() == samples));
    let mut mult = true;
    let mut pairs = 0;
    for i in 0..xs.len() {
        for j in i..xs.len().min(i + 3) {
            mult &= untwist(&ta, &ta.mul(&xs[i], &xs[j]))? == plus.mul(&images[i], &images[j]);
            pairs += 1;
        }
    }
    cases.push(Case::new(format!("Xi multiplicative on {pairs} invariant pairs"), mult));
    let (ru, rx) = (rank_of(&minus.ring, &us), rank_of(&plus.ring, &images));
    cases.push(Case::new("Xi preserves the rank of the sample", ru == rx).with_detail(format!("{ru} vs {rx}")));
    Ok(cases)
}

/// The `frob` suite.
pub fn verify_frob(fp: &FrobPair, bound: u16, pairs: usize, seed: u64) -> Result<Report, FrobError> {
    let d = &fp.data;
    let mut rep = Report::new("frob").param("type", d.rs.label.clone()).param("ell", d.ell()).param("bound", bound).param("seed", seed);
    rep.convention("prime_type", d.prime.system.label.clone());
    rep.convention("prime_iso", serde_json::to_value(d.prime.iso).expect("serializes"));
    rep.convention("gamma2_kind", serde_json::to_value(d.gamma2_kind).expect("serializes"));
    let even = d.ell() % 2 == 0;
    let g1_expected = if even { SignGroup::new(&d.prime.system).order() as i128 } else { 1 };
    let g2_expected = match d.gamma2_kind {
        Gamma2Kind::Trivial => 1,
        _ => 1i128 << d.rs.rank,
    };
    rep.push(Case::new("Gamma1 order", d.gamma1.order == g1_expected).with_detail(format!("{}", d.gamma1.order)));
    rep.push(Case::new("Gamma2 order", d.gamma2.order == g2_expected).with_detail(format!("{}", d.gamma2.order)));
    let p_sub = d.lattices.p.contains_lattice(&d.lattices.p_prime) && d.prime.weight_lattice() == d.lattices.p_prime;
    rep.push(Case::new("P' = weight lattice of the rescaled system, inside P", p_sub));
    rep.push(Case::new("P'' matches the case table", d.p_double_from_table() == d.lattices.p_double));
    rep.extend(txi_cases(fp, pairs, seed));
    rep.extend(zfr_crosscheck(fp, bound)?);
    rep.extend(xi_cases(fp, 12, seed)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlat::RootSystem;

    fn pair(t: char, n: usize, ell: u32) -> FrobPair {
        FrobPair::new(&RootSystem::new(t, n).unwrap(), ell).unwrap()
    }

    #[test]
    fn a1_four_membership() {
        let fp = pair('A', 1, 4);
        let d = &fp.data;
        assert!(zfr_membership(&FrobMonomial { m: vec![0], m_prime: vec![0], mu: vec![0] }, d));
        let odd = FrobMonomial { m: vec![1], m_prime: vec![0], mu: vec![0] };
        assert!(!zfr_membership(&odd, d));
        assert!(zfr_membership(&odd.doubled(), d));
        assert!(!zfr_membership(&FrobMonomial { m: vec![0], m_prime: vec![0], mu: vec![2] }, d));
        assert!(zfr_membership(&FrobMonomial { m: vec![0], m_prime: vec![0], mu: vec![4] }, d));
        assert_eq!(coset_representatives(d), vec![vec![0], vec![2]]);
    }

    #[test]
    fn crosschecks_agree() {
        for (t, n, ell, b) in [('A', 1, 3, 2), ('A', 1, 4, 2), ('A', 1, 6, 2)] {
            let fp = pair(t, n, ell);
            let bad: Vec<_> = zfr_crosscheck(&fp, b).unwrap().into_iter().filter(|c| c.failed()).collect();
            assert!(bad.is_empty(), "{t}{n} {ell}: {bad:?}");
        }
    }

    #[test]
    fn b2_eight_needs_every_sign_character() {
        let fp = pair('B', 2, 8);
        assert_eq!(fp.gamma1_generators(Gamma1Model::SignGroup), vec![1]);
        let cases = zfr_crosscheck(&fp, 1).unwrap();
        let by = |p: &str| cases.iter().find(|c| c.name.starts_with(p)).unwrap().passed();
        assert!(by("membership <=> central"));
        assert!(!by("membership <=> Gamma-invariant"));
        assert!(by("membership <=> invariance under all sign characters"));
    }

    #[test]
    fn xi_on_invariants() {
        for (t, n, ell) in [('A', 1, 6), ('A', 2, 6)] {
            let fp = pair(t, n, ell);
            assert_eq!(fp.data.ctx.epsilon, -1);
            let bad: Vec<_> = xi_cases(&fp, 8, 5).unwrap().into_iter().filter(|c| c.failed()).collect();
            assert!(bad.is_empty(), "{t}{n} {ell}: {bad:?}");
        }
    }
}
