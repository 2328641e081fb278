//! Commutation laws of `r_α`-th powers in `U_ζ(Δ)` and of root vectors in `U_ε(Δ′)`.

use super::{root_label, sign_pow, RootData, Specialized, UzetaError};
use crate::qscalar::{AtRoot, Cyc, Ring};
use crate::report::{Case, Report};
use crate::rootlat::ReducedWord;
use crate::uqpbw::{Engine, Tri};

/// `x·y == s·y·x`.
fn skew_commute(e: &Engine<AtRoot>, x: &Tri<Cyc>, y: &Tri<Cyc>, s: i64) -> bool {
    let lhs = e.mul(x, y);
    let rhs = e.scale(&e.mul(y, x), &e.ring.from_int(s));
    e.sub(&lhs, &rhs).is_empty()
}

/// Checks every displayed law for `a_α^{m r_α}`, `(Sb_α)^{m r_α}` with `1 ≤ m ≤ bound`,
/// all `β`, the fundamental weights and a basis of `P′`.
pub fn verify_zeta_relations(data: &RootData, bound: u32, word: Option<ReducedWord>) -> Result<Report, UzetaError> {
    let rs = &data.rs;
    let ctx = &data.ctx;
    let alg = Specialized::new(rs, ctx.ell, word)?;
    let e = &alg.engine;
    let n = e.n_roots();
    let mut rep = Report::new("rel-zeta").param("type", rs.label.clone()).param("ell", ctx.ell).param("bound", bound);
    rep.convention("eta", serde_json::json!(ctx.roots.iter().map(|o| (root_label(&o.root), serde_json::Value::from(o.eta))).collect::<serde_json::Map<_, _>>()));
    let betas = &e.pbw.betas;
    let idx: Vec<usize> = betas.iter().map(|b| rs.root_index(b).expect("beta is a positive root")).collect();
    let a: Vec<Tri<Cyc>> = (0..n).map(|k| e.a(k)).collect();
    let sb: Vec<Tri<Cyc>> = (0..n).map(|k| alg.sb(k)).collect();
    let p_prime: Vec<Vec<i64>> = (0..rs.rank).map(|i| (0..rs.rank).map(|j| if i == j { data.prime.r_simple[i] as i64 } else { 0 }).collect()).collect();
    for ka in 0..n {
        let alpha = &betas[ka];
        let r = ctx.r_alpha(idx[ka]);
        let eta = ctx.eta(idx[ka]);
        let da = rs.d_of(alpha);
        let la = root_label(alpha);
        for m in 1..=bound {
            let pa = e.pow(&a[ka], m * r);
            let ps = e.pow(&sb[ka], m * r);
            let tag = if m == 1 { format!("{la}^r") } else { format!("{la}^{m}r") };
            for kb in 0..n {
                let beta = &betas[kb];
                let s = sign_pow(eta, m as i64 * rs.inner_roots(alpha, beta) / da);
                let lb = root_label(beta);
                rep.push(Case::new(format!("a{tag} a{lb}"), skew_commute(e, &pa, &a[kb], s)));
                rep.push(Case::new(format!("Sb{tag} Sb{lb}"), skew_commute(e, &ps, &sb[kb], s)));
                rep.push(Case::new(format!("a{tag} Sb{lb}"), skew_commute(e, &pa, &sb[kb], s)));
                rep.push(Case::new(format!("Sb{tag} a{lb}"), skew_commute(e, &ps, &a[kb], s)));
            }
            for i in 0..rs.rank {
                let mut w = vec![0; rs.rank];
                w[i] = 1;
                let s = sign_pow(eta, m as i64 * rs.pair_weight_coroot(&w, alpha));
                let k = e.k(w);
                rep.push(Case::new(format!("k(w{}) a{tag}", i + 1), skew_commute(e, &k, &pa, s)));
                rep.push(Case::new(format!("k(w{}) Sb{tag}", i + 1), skew_commute(e, &k, &ps, s)));
            }
        }
        for mu in &p_prime {
            let c = rs.pair_weight_coroot(mu, alpha);
            let ok_div = c % r as i64 == 0;
            let s = sign_pow(eta, c / r as i64);
            let k = e.k(mu.clone());
            let name = format!("k{} ", root_label(mu));
            rep.push(Case::new(format!("{name}a{la}"), ok_div && skew_commute(e, &k, &a[ka], s)));
            rep.push(Case::new(format!("{name}Sb{la}"), ok_div && skew_commute(e, &k, &sb[ka], s)));
        }
    }
    Ok(rep)
}

/// Checks the five families in `U_ε(Δ′)` and, for `ε = 1`, commutativity of the generators.
pub fn verify_epsilon_relations(data: &RootData, word: Option<ReducedWord>) -> Result<Report, UzetaError> {
    let sys = &data.prime.system;
    let eps = data.ctx.epsilon;
    let alg = Specialized::new(sys, if eps == 1 { 1 } else { 2 }, word)?;
    let e = &alg.engine;
    let n = e.n_roots();
    let mut rep = Report::new("rel-epsilon").param("type", data.rs.label.clone()).param("ell", data.ctx.ell).param("prime_type", sys.label.clone()).param("epsilon", eps);
    rep.convention("prime_iso", serde_json::to_value(data.prime.iso).expect("serializes"));
    let betas = &e.pbw.betas;
    let a: Vec<Tri<Cyc>> = (0..n).map(|k| e.a(k)).collect();
    let sb: Vec<Tri<Cyc>> = (0..n).map(|k| alg.sb(k)).collect();
    for ka in 0..n {
        let alpha = &betas[ka];
        let ea = sign_pow(eps, sys.d_of(alpha));
        let la = root_label(alpha);
        for kb in 0..n {
            let beta = &betas[kb];
            let s = sign_pow(ea, sys.inner_roots(alpha, beta) / sys.d_of(alpha));
            let lb = root_label(beta);
            rep.push(Case::new(format!("a{la} a{lb}"), skew_commute(e, &a[ka], &a[kb], s)));
            rep.push(Case::new(format!("Sb{la} Sb{lb}"), skew_commute(e, &sb[ka], &sb[kb], s)));
            rep.push(Case::new(format!("a{la} Sb{lb}"), skew_commute(e, &a[ka], &sb[kb], s)));
            rep.push(Case::new(format!("Sb{la} a{lb}"), skew_commute(e, &sb[ka], &a[kb], s)));
        }
        for i in 0..sys.rank {
            let mut w = vec![0; sys.rank];
            w[i] = 1;
            let s = sign_pow(ea, sys.pair_weight_coroot(&w, alpha));
            let k = e.k(w);
            rep.push(Case::new(format!("k(w'{}) a{la}", i + 1), skew_commute(e, &k, &a[ka], s)));
            rep.push(Case::new(format!("k(w'{}) Sb{la}", i + 1), skew_commute(e, &k, &sb[ka], s)));
        }
    }
    if eps == 1 {
        let mut gens: Vec<(String, Tri<Cyc>)> = e.generators();
        gens.push(("a*Sb".into(), e.mul(&a[n - 1], &sb[0])));
        let mut ok = true;
        for (i, (_, x)) in gens.iter().enumerate() {
            for (_, y) in &gens[i + 1..] {
                ok &= e.commutator(x, y).is_empty();
            }
        }
        rep.push(Case::new("commutative", ok));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlat::RootSystem;

    fn data(t: char, n: usize, ell: u32) -> RootData {
        RootData::new(&RootSystem::new(t, n).unwrap(), ell).unwrap()
    }

    fn assert_pass(r: &Report) {
        let bad: Vec<_> = r.cases.iter().filter(|c| c.failed()).map(|c| c.name.clone()).collect();
        assert!(bad.is_empty(), "{}: {bad:?}", r.suite);
    }

    #[test]
    fn zeta_laws_small() {
        for (t, n, ell) in [('A', 1, 4), ('A', 1, 3), ('A', 2, 6), ('A', 2, 4), ('B', 2, 6), ('B', 2, 8)] {
            let r = verify_zeta_relations(&data(t, n, ell), 1, None).unwrap();
            assert_pass(&r);
        }
    }

    #[test]
    fn zeta_laws_a1_higher_powers() {
        let r = verify_zeta_relations(&data('A', 1, 4), 3, None).unwrap();
        assert_pass(&r);
    }

    #[test]
    fn epsilon_laws() {
        for (t, n, ell) in [('A', 1, 6), ('A', 1, 3), ('A', 2, 4), ('B', 2, 6), ('B', 2, 8), ('B', 2, 5)] {
            let d = data(t, n, ell);
            let r = verify_epsilon_relations(&d, None).unwrap();
            assert_pass(&r);
            assert_eq!(r.cases.iter().any(|c| c.name == "commutative"), d.ctx.epsilon == 1);
        }
    }

    #[test]
    fn a1_six_anticommutes() {
        let d = data('A', 1, 6);
        assert_eq!(d.ctx.epsilon, -1);
        let alg = Specialized::new(&d.prime.system, 2, None).unwrap();
        let e = &alg.engine;
        // (α′∨, α′) = 2, so a and Sb commute; (ϖ′, α′∨) = 1, so k(ϖ′) and a anticommute.
        assert!(skew_commute(e, &e.a(0), &alg.sb(0), 1));
        assert!(skew_commute(e, &e.k_fundamental(0), &e.a(0), -1));
        assert!(!skew_commute(e, &e.k_fundamental(0), &e.a(0), 1));
    }
}
