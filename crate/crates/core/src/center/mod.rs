//! Central elements from traces on irreducible modules, their Harish-Chandra
//! images in the group algebra of `2P`, and the twisted Weyl action.

use crate::modrep::{linalg, specialize_matrix, Irrep, Mat, ModrepError};
use crate::qscalar::{AtRoot, Cyc, Generic, RatFn, Ring};
use crate::report::{Case, Report};
use crate::rootlat::RootSystem;
use crate::uqpbw::{Engine, Exps, Tri, Wt};
use crate::uzeta::{sign_act, SignGroup};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CenterError {
    #[error(transparent)]
    Module(#[from] ModrepError),
    #[error("Cartan part has support {0:?} outside 2P")]
    OutsideTwoP(Wt),
    #[error("element is not central: fails against {0:?}")]
    NotCentral(Vec<String>),
}

/// `Σ c_λ e(2λ)`, keyed by `λ ∈ P`.
pub type TwoP<E> = BTreeMap<Wt, E>;

/// Sign pattern of the character sum `Σ dim(1_μ M) q^{s(μ,2ρ̃)} e(2tμ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `q^{(μ,2ρ̃)} e(-2μ)`.
    Displayed,
    /// `q^{(μ,2ρ̃)} e(2μ)`.
    FlipLattice,
    /// `q^{-(μ,2ρ̃)} e(-2μ)`.
    FlipExponent,
}

impl Orientation {
    pub const ALL: [Orientation; 3] = [Orientation::Displayed, Orientation::FlipExponent, Orientation::FlipLattice];

    /// `(s, t)`.
    pub fn signs(self) -> (i64, i64) {
        match self {
            Orientation::Displayed => (1, -1),
            Orientation::FlipLattice => (1, 1),
            Orientation::FlipExponent => (-1, -1),
        }
    }
}

/// A certified central element together with the module it came from.
#[derive(Clone, Debug)]
pub struct CentralElement<E> {
    pub element: Tri<E>,
    pub source: String,
}

/// Matrices of `f^{(M)}` and `S(e^{(M′)})` on a direct sum of modules, over one ring.
struct TraceData<E> {
    f: BTreeMap<Exps, Mat<E>>,
    se: BTreeMap<Exps, Mat<E>>,
    k2rho: Mat<E>,
    /// Weight of every basis vector.
    weights: Vec<Wt>,
}

/// `(M, λ, M′)` with `λ = -2μ` for `μ` a weight and `wt M = wt M′` keeping `μ - wt M` a weight.
type TermKey = (Exps, Wt, Exps);

fn block_diag<E: Clone>(zero: E, blocks: &[Mat<E>]) -> Mat<E> {
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let mut m = Mat::filled(n, n, zero);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.rows;
    }
    m
}

/// Exponent pairs needed for a module with the given weights.
fn term_shapes(rs: &RootSystem, engine: &Engine<Generic>, weights: &BTreeSet<Wt>) -> Vec<(Wt, Vec<i64>)> {
    let mut out = Vec::new();
    for mu in weights {
        for nu in weights {
            let diff: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a - b).collect();
            if let Some(g) = rs.weight_in_root_lattice(&diff) {
                if g.iter().all(|&x| x >= 0) && !engine.pbw.monomials(&g).is_empty() || g.iter().all(|&x| x == 0) {
                    out.push((mu.clone(), g));
                }
            }
        }
    }
    out
}

fn generic_trace_data(mods: &[&Irrep], shapes: &[(Wt, Vec<i64>)]) -> Result<TraceData<RatFn>, CenterError> {
    let e = &mods[0].engine;
    let rs = e.pbw.rs();
    let exps: BTreeSet<Exps> = shapes.iter().flat_map(|(_, g)| e.pbw.monomials(g).to_vec()).collect();
    let mut f = BTreeMap::new();
    let mut se = BTreeMap::new();
    for m in &exps {
        let blocks: Vec<Mat<RatFn>> = mods.iter().map(|x| x.matrix_of(&x.f_divided(m))).collect::<Result<_, _>>()?;
        f.insert(m.clone(), block_diag(RatFn::zero(), &blocks));
        let blocks: Vec<Mat<RatFn>> = mods.iter().map(|x| x.matrix_of(&e.antipode(&x.e_divided(m)))).collect::<Result<_, _>>()?;
        se.insert(m.clone(), block_diag(RatFn::zero(), &blocks));
    }
    let two_rho: Wt = rs.rho().iter().map(|x| 2 * x).collect();
    let blocks: Vec<Mat<RatFn>> = mods.iter().map(|x| x.k_matrix(&two_rho)).collect::<Result<_, _>>()?;
    let weights = mods.iter().flat_map(|x| x.basis_weights()).collect();
    Ok(TraceData { f, se, k2rho: block_diag(RatFn::zero(), &blocks), weights })
}

fn specialize_data(d: &TraceData<RatFn>, ring: &AtRoot) -> Result<TraceData<Cyc>, CenterError> {
    let sp = |m: &BTreeMap<Exps, Mat<RatFn>>, op: &str| -> Result<BTreeMap<Exps, Mat<Cyc>>, CenterError> {
        m.iter().map(|(k, v)| Ok((k.clone(), specialize_matrix(v, ring, &format!("{op}{k:?}"))?))).collect()
    };
    Ok(TraceData { f: sp(&d.f, "f")?, se: sp(&d.se, "Se")?, k2rho: specialize_matrix(&d.k2rho, ring, "k2rho")?, weights: d.weights.clone() })
}

/// `c = Tr(f^{(M)} 1_μ S(e^{(M′)}) k_{2ρ}) / (g_M g_{M′})` for every shape.
fn coefficients<R: Ring>(ring: &R, engine: &Engine<Generic>, d: &TraceData<R::E>, shapes: &[(Wt, Vec<i64>)]) -> BTreeMap<TermKey, R::E> {
    let pbw = &engine.pbw;
    let mut out = BTreeMap::new();
    let g_inv = |m: &Exps| ring.inv(&ring.from_laurent(&pbw.g_factor(m))).expect("±q^k is invertible");
    for (mu, g) in shapes {
        let rows: Vec<usize> = (0..d.weights.len()).filter(|&i| d.weights[i] == *mu).collect();
        let lam: Wt = mu.iter().map(|x| -2 * x).collect();
        for m in pbw.monomials(g).iter() {
            let fm = &d.f[m];
            for mp in pbw.monomials(g).iter() {
                let sek = linalg::mul(ring, &d.se[mp], &d.k2rho);
                // Tr(F P_μ X) = Σ_{j ∈ μ} Σ_i F[i][j] X[j][i].
                let mut tr = ring.zero();
                for &j in &rows {
                    for i in 0..d.weights.len() {
                        let a = fm.get(i, j);
                        if ring.is_zero(a) {
                            continue;
                        }
                        tr = ring.add(&tr, &ring.mul(a, sek.get(j, i)));
                    }
                }
                if ring.is_zero(&tr) {
                    continue;
                }
                let c = ring.mul(&tr, &ring.mul(&g_inv(m), &g_inv(mp)));
                out.insert((m.clone(), lam.clone(), mp.clone()), c);
            }
        }
    }
    out
}

/// `Σ c · a^M k_λ S(b^{M′})`.
fn assemble<R: Ring>(e: &Engine<R>, coeffs: &BTreeMap<TermKey, R::E>) -> Tri<R::E> {
    let mut t = e.zero();
    for ((m, lam, mp), c) in coeffs {
        let x = e.mul_all([&e.a_mono(m.clone()), &e.k(lam.clone()), &e.antipode(&e.b_mono(mp.clone()))]);
        t = e.add(&t, &e.scale(&x, c));
    }
    t
}

fn label(mods: &[&Irrep]) -> String {
    mods.iter().map(|m| format!("L{:?}", m.highest)).collect::<Vec<_>>().join("+")
}

/// `t_M` over `Q(q)` for `M` the direct sum of `mods`; certified central.
pub fn t_element(mods: &[&Irrep]) -> Result<CentralElement<RatFn>, CenterError> {
    let e = &mods[0].engine;
    let weights: BTreeSet<Wt> = mods.iter().flat_map(|m| m.character().into_keys()).collect();
    let shapes = term_shapes(e.pbw.rs(), e, &weights);
    let d = generic_trace_data(mods, &shapes)?;
    let t = assemble(e, &coefficients(&Generic, e, &d, &shapes));
    let bad = e.central_failures(&t);
    if !bad.is_empty() {
        return Err(CenterError::NotCentral(bad));
    }
    Ok(CentralElement { element: t, source: label(mods) })
}

/// `t_M` in `U_ζ` computed from the specialized module matrices; certified central.
pub fn t_element_at(mods: &[&Irrep], z: &Engine<AtRoot>) -> Result<CentralElement<Cyc>, CenterError> {
    let e = &mods[0].engine;
    let weights: BTreeSet<Wt> = mods.iter().flat_map(|m| m.character().into_keys()).collect();
    let shapes = term_shapes(e.pbw.rs(), e, &weights);
    let d = specialize_data(&generic_trace_data(mods, &shapes)?, &z.ring)?;
    let t = assemble(z, &coefficients(&z.ring, e, &d, &shapes));
    let bad = z.central_failures(&t);
    if !bad.is_empty() {
        return Err(CenterError::NotCentral(bad));
    }
    Ok(CentralElement { element: t, source: label(mods) })
}

/// Keeps the `k_λ` terms with empty PBW parts; `λ` must lie in `2P`.
pub fn hc_iota<R: Ring>(e: &Engine<R>, z: &Tri<R::E>) -> Result<TwoP<R::E>, CenterError> {
    let mut out = BTreeMap::new();
    for (l, c) in e.cartan_part(z) {
        if l.iter().any(|x| x % 2 != 0) {
            return Err(CenterError::OutsideTwoP(l));
        }
        out.insert(l.iter().map(|x| x / 2).collect(), c);
    }
    Ok(out)
}

/// `Σ dim(1_μ M) q^{s(μ,2ρ̃)} e(2tμ)`.
pub fn character_image(m: &Irrep, o: Orientation) -> TwoP<RatFn> {
    let rs = m.rs();
    let two_rho = rs.two_rho_tilde_roots();
    let (s, t) = o.signs();
    m.character()
        .into_iter()
        .map(|(mu, d)| {
            let p = s * rs.pair_weight_root(&mu, &two_rho);
            let key: Wt = mu.iter().map(|x| t * x).collect();
            (key, RatFn::q_pow(p).mul(&RatFn::int(d as i64)))
        })
        .collect()
}

/// `(wλ - λ, 2ρ)`.
fn shift_exponent(rs: &RootSystem, w: &[usize], l: &[i64]) -> (Wt, i64) {
    let wl = rs.act_weight(w, l);
    let diff: Vec<i64> = wl.iter().zip(l).map(|(a, b)| a - b).collect();
    let g = rs.weight_in_root_lattice(&diff).expect("wλ - λ ∈ Q");
    let two_rho: Wt = rs.rho().iter().map(|x| 2 * x).collect();
    (wl, rs.pair_weight_root(&two_rho, &g))
}

/// `w ∘_z e(2λ) = z^{(wλ-λ, 2ρ)} e(2wλ)`, with `z` the image of `q` in `ring`.
pub fn twisted_action<R: Ring>(ring: &R, rs: &RootSystem, w: &[usize], x: &TwoP<R::E>) -> TwoP<R::E> {
    let mut out: TwoP<R::E> = BTreeMap::new();
    for (l, c) in x {
        let (wl, p) = shift_exponent(rs, w, l);
        let v = ring.mul(c, &ring.q_pow(p));
        let e = out.entry(wl).or_insert_with(|| ring.zero());
        *e = ring.add(e, &v);
    }
    out.retain(|_, c| !ring.is_zero(c));
    out
}

/// Invariance under every simple reflection, hence under `W`.
pub fn is_twisted_invariant<R: Ring>(ring: &R, rs: &RootSystem, x: &TwoP<R::E>) -> bool {
    let mut y = x.clone();
    y.retain(|_, c| !ring.is_zero(c));
    (0..rs.rank).all(|i| twisted_action(ring, rs, &[i], &y) == y)
}

pub fn two_p_mul<R: Ring>(ring: &R, x: &TwoP<R::E>, y: &TwoP<R::E>) -> TwoP<R::E> {
    let mut out: TwoP<R::E> = BTreeMap::new();
    for (a, c) in x {
        for (b, d) in y {
            let k: Wt = a.iter().zip(b).map(|(p, q)| p + q).collect();
            let e = out.entry(k).or_insert_with(|| ring.zero());
            *e = ring.add(e, &ring.mul(c, d));
        }
    }
    out.retain(|_, c| !ring.is_zero(c));
    out
}

/// Rank of a family of group-algebra elements.
pub fn two_p_rank<R: Ring>(ring: &R, xs: &[TwoP<R::E>]) -> usize {
    let keys: BTreeSet<&Wt> = xs.iter().flat_map(|x| x.keys()).collect();
    let keys: Vec<&Wt> = keys.into_iter().collect();
    let mut m = linalg::zeros(ring, xs.len(), keys.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, k) in keys.iter().enumerate() {
            if let Some(c) = x.get(*k) {
                m.set(i, j, c.clone());
            }
        }
    }
    linalg::rank(ring, &m)
}

/// Fixed by every element of the sign group.
pub fn sign_invariant<R: Ring>(e: &Engine<R>, x: &Tri<R::E>) -> bool {
    SignGroup::new(e.pbw.rs()).elements().into_iter().all(|s| sign_act(e, s, x) == *x)
}

/// Orientations whose character images are `∘`-invariant for every module, at generic `q`.
pub fn invariant_orientations(mods: &[&Irrep]) -> Vec<Orientation> {
    Orientation::ALL
        .into_iter()
        .filter(|&o| mods.iter().all(|m| is_twisted_invariant(&Generic, m.rs(), &character_image(m, o))))
        .collect()
}

/// The first invariant orientation matching every computed image.
pub fn resolve_orientation(mods: &[&Irrep], images: &[TwoP<RatFn>]) -> Option<Orientation> {
    invariant_orientations(mods).into_iter().find(|&o| mods.iter().zip(images).all(|(m, x)| character_image(m, o) == *x))
}

/// Specializes a group-algebra element.
pub fn two_p_at(ring: &AtRoot, x: &TwoP<RatFn>) -> Option<TwoP<Cyc>> {
    let mut out = BTreeMap::new();
    for (k, c) in x {
        let v = ring.from_ratfn(c).ok()?;
        if !v.is_zero() {
            out.insert(k.clone(), v);
        }
    }
    Some(out)
}

/// The `center` suite for highest weights `lambdas` at `ζ` of order `ell`.
pub fn verify_center(engine: Rc<Engine<Generic>>, z: &Engine<AtRoot>, lambdas: &[Wt]) -> Result<Report, CenterError> {
    let rs = engine.pbw.rs().clone();
    let ring = &z.ring;
    let mut rep = Report::new("center").param("type", rs.label.clone()).param("ell", ring.ell()).param("lambda", format!("{lambdas:?}"));
    let mut gen_elems: Vec<(String, Tri<RatFn>)> = Vec::new();
    let mut spec_elems: Vec<(String, Tri<Cyc>)> = Vec::new();
    let mut images: Vec<TwoP<RatFn>> = Vec::new();
    let mut mods: Vec<Irrep> = Vec::new();
    for l in lambdas {
        let m = Irrep::build(engine.clone(), l, None)?;
        let tag = format!("L{l:?}");
        let t = match t_element(&[&m]) {
            Ok(t) => t,
            Err(CenterError::NotCentral(bad)) => {
                rep.push(Case::new(format!("{tag} t_M central (generic)"), false).with_detail(format!("fails against {bad:?}")));
                continue;
            }
            Err(e) => return Err(e),
        };
        rep.push(Case::new(format!("{tag} t_M central (generic)"), true).with_detail(format!("{} terms", t.element.len())));
        rep.push(Case::new(format!("{tag} t_M integral"), t.element.is_integral()));
        let spec = z.from_generic(&t.element).ok();
        let spec_central = spec.as_ref().is_some_and(|s| z.is_central(s));
        rep.push(Case::new(format!("{tag} t_M central at zeta"), spec_central));
        let direct = t_element_at(&[&m], z);
        let direct_ok = matches!((&direct, &spec), (Ok(d), Some(s)) if d.element == *s);
        rep.push(Case::new(format!("{tag} t_M from specialized module = specialized t_M"), direct_ok));
        let iota = hc_iota(&engine, &t.element)?;
        rep.push(Case::new(format!("{tag} iota(t_M) invariant (generic)"), is_twisted_invariant(&Generic, &rs, &iota)));
        let at = two_p_at(ring, &iota);
        rep.push(Case::new(format!("{tag} iota(t_M) invariant at zeta"), at.as_ref().is_some_and(|x| is_twisted_invariant(ring, &rs, x))));
        if let Some(s) = spec {
            let hz = hc_iota(z, &s)?;
            rep.push(Case::new(format!("{tag} iota commutes with specialization"), Some(&hz) == at.as_ref()));
            spec_elems.push((tag.clone(), s));
        }
        images.push(iota);
        gen_elems.push((tag, t.element));
        mods.push(m);
    }
    let refs: Vec<&Irrep> = mods.iter().collect();
    let invariant = invariant_orientations(&refs);
    let orientation = resolve_orientation(&refs, &images);
    rep.convention("iota_invariant_orientations", serde_json::to_value(&invariant).expect("serializes"));
    rep.convention("iota_orientation", serde_json::to_value(orientation).expect("serializes"));
    for (m, x) in refs.iter().zip(&images) {
        let ok = orientation.is_some_and(|o| character_image(m, o) == *x);
        rep.push(Case::new(format!("L{:?} iota(t_M) = character sum", m.highest), ok).with_detail(format!("{orientation:?}")));
    }
    let r = two_p_rank(&Generic, &images);
    rep.push(Case::new("iota images linearly independent", r == images.len()).with_detail(format!("rank {r} of {}", images.len())));
    for i in 0..gen_elems.len() {
        for j in i..gen_elems.len() {
            let p = engine.mul(&gen_elems[i].1, &gen_elems[j].1);
            let lhs = hc_iota(&engine, &p)?;
            let rhs = two_p_mul(&Generic, &images[i], &images[j]);
            rep.push(Case::new(format!("iota multiplicative {}*{}", gen_elems[i].0, gen_elems[j].0), lhs == rhs));
        }
    }
    let mut fixed = true;
    let mut count = 0;
    for (_, x) in &gen_elems {
        fixed &= sign_invariant(&engine, x);
        count += 1;
    }
    for (_, x) in &spec_elems {
        fixed &= sign_invariant(z, x);
        count += 1;
    }
    for i in 0..spec_elems.len() {
        for j in i..spec_elems.len() {
            let p = z.mul(&spec_elems[i].1, &spec_elems[j].1);
            fixed &= z.is_central(&p) && sign_invariant(z, &p);
            count += 1;
        }
    }
    rep.push(Case::new("sign group fixes every certified central element", fixed).with_detail(format!("{count} elements")));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlat::weyl_elements;
    use crate::uqpbw::Pbw;

    fn engines(t: char, n: usize, ell: u32) -> (Rc<Engine<Generic>>, Engine<AtRoot>) {
        let p = Rc::new(Pbw::new(RootSystem::new(t, n).unwrap()).unwrap());
        (Rc::new(Engine::new(Generic, p.clone()).unwrap()), Engine::new(AtRoot::new(ell), p).unwrap())
    }

    #[test]
    fn a1_fundamental() {
        let (g, z) = engines('A', 1, 4);
        let m = Irrep::build(g.clone(), &[1], None).unwrap();
        let t = t_element(&[&m]).unwrap();
        let iota = hc_iota(&g, &t.element).unwrap();
        assert_eq!(iota.len(), 2);
        assert!(t_element_at(&[&m], &z).is_ok());
    }

    #[test]
    fn twisted_action_a1() {
        let rs = RootSystem::new('A', 1).unwrap();
        let x: TwoP<RatFn> = BTreeMap::from([(vec![1], RatFn::one())]);
        assert_eq!(twisted_action(&Generic, &rs, &[0], &x), BTreeMap::from([(vec![-1], RatFn::q_pow(-2))]));
    }

    #[test]
    fn twisted_action_is_an_action() {
        for (t, n) in [('A', 2), ('B', 2)] {
            let rs = RootSystem::new(t, n).unwrap();
            let x: TwoP<RatFn> = BTreeMap::from([(vec![1, 0], RatFn::one()), (vec![0, 2], RatFn::int(3))]);
            let ws = weyl_elements(&rs);
            for w in &ws {
                for v in &ws {
                    let wv: Vec<usize> = w.iter().chain(v.iter()).copied().collect();
                    let lhs = twisted_action(&Generic, &rs, &wv, &x);
                    let rhs = twisted_action(&Generic, &rs, w, &twisted_action(&Generic, &rs, v, &x));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn centrality_basics() {
        let (g, _) = engines('A', 1, 4);
        assert!(g.is_central(&g.one()));
        assert!(!g.is_central(&g.a(0)));
        let (_, z3) = engines('A', 1, 3);
        assert!(z3.is_central(&z3.pow(&z3.a(0), 3)));
        let (_, z4) = engines('A', 1, 4);
        let a2 = z4.pow(&z4.a(0), 2);
        assert_eq!(z4.central_failures(&a2), vec!["k(w1)".to_string()]);
    }

    #[test]
    fn direct_sum_is_additive() {
        let (g, _) = engines('A', 1, 4);
        let m1 = Irrep::build(g.clone(), &[1], None).unwrap();
        let m2 = Irrep::build(g.clone(), &[2], None).unwrap();
        let s = t_element(&[&m1, &m2]).unwrap().element;
        let sum = g.add(&t_element(&[&m1]).unwrap().element, &t_element(&[&m2]).unwrap().element);
        assert_eq!(s, sum);
    }

    #[test]
    fn center_suite_a1() {
        let (g, z) = engines('A', 1, 4);
        let r = verify_center(g, &z, &[vec![0], vec![1], vec![2]]).unwrap();
        let bad: Vec<_> = r.cases.iter().filter(|c| c.failed()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn a2_orientation_is_exponent_flip() {
        let (g, _) = engines('A', 2, 5);
        let ms: Vec<Irrep> = [[1, 0], [0, 1]].iter().map(|l| Irrep::build(g.clone(), l, None).unwrap()).collect();
        let refs: Vec<&Irrep> = ms.iter().collect();
        let images: Vec<_> = refs.iter().map(|m| hc_iota(&g, &t_element(&[m]).unwrap().element).unwrap()).collect();
        assert_eq!(invariant_orientations(&refs), vec![Orientation::FlipExponent, Orientation::FlipLattice]);
        assert_eq!(resolve_orientation(&refs, &images), Some(Orientation::FlipExponent));
        // The dual module realizes the other invariant pattern.
        assert_eq!(images[0], character_image(&ms[1], Orientation::FlipLattice));
    }
}
