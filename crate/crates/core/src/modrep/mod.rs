//! Finite-dimensional irreducible modules `L(λ)` as explicit matrices.
//!
//! `L(λ)` is the Verma module modulo the radical of the contravariant form
//! `⟨y v, y′ v⟩ = ⟨σ(y) y′⟩_λ`, where `⟨·⟩_λ` keeps the `U⁰` part and evaluates
//! `k_ν ↦ q^{(ν, λ)}`. Each weight space gets a basis of divided-power vectors
//! `f^{(N)} v` chosen so that every other `f^{(N′)} v` has Laurent coordinates;
//! this basis spans `L_𝔸(λ)` and the matrices can be specialized at any root of unity.

pub mod linalg;

pub use linalg::Mat;

use crate::qscalar::{gauss_factorial, AtRoot, Cyc, Generic, RatFn, Ring};
use crate::report::Case;
use crate::rootlat::{dominant_of, longest_word, RootSystem};
use crate::uqpbw::{Engine, Exps, Tri, Wt};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ModrepError {
    #[error("highest weight {0:?} is not dominant")]
    NotDominant(Wt),
    #[error("depth {given:?} does not cover λ - w₀λ = {needed:?}")]
    InsufficientDepth { given: Vec<i64>, needed: Vec<i64> },
    #[error("no basis with Laurent coordinates in weight space {0:?}")]
    NoIntegralBasis(Wt),
    #[error("(ν, μ) = {0} is not an integer")]
    NonIntegralPairing(String),
    #[error("{op}: entry ({row}, {col}) = {value} is not Laurent")]
    NonIntegral { op: String, row: usize, col: usize, value: String },
}

/// One weight space `1_μ L(λ)`.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    /// `μ` in fundamental-weight coordinates.
    pub weight: Wt,
    /// `λ - μ` in simple-root coordinates.
    pub depth: Vec<i64>,
    /// Basis vectors `f^{(N)} v`.
    pub basis: Vec<Exps>,
    pub offset: usize,
    gram_inv: Mat<RatFn>,
}

/// `L(λ)` over `Q(q)` with its `𝔸`-basis.
pub struct Irrep {
    pub engine: Rc<Engine<Generic>>,
    pub highest: Wt,
    pub spaces: Vec<WeightSpace>,
    pub dim: usize,
    by_depth: HashMap<Vec<i64>, usize>,
    /// `⟨f^{(B)} v, b^N v⟩`.
    form: RefCell<HashMap<(Exps, Exps), RatFn>>,
}

/// `(λ, μ)` for weights, which must be an integer.
pub fn integral_pairing(rs: &RootSystem, l: &[i64], m: &[i64]) -> Result<i64, ModrepError> {
    let v = rs.inner_weights(l, m);
    v.to_i64().ok_or_else(|| ModrepError::NonIntegralPairing(format!("{v}")))
}

/// `λ - w₀λ` in simple-root coordinates.
pub fn full_depth(rs: &RootSystem, l: &[i64]) -> Vec<i64> {
    let w0 = rs.act_weight(longest_word(rs).letters(), l);
    let diff: Vec<i64> = l.iter().zip(&w0).map(|(a, b)| a - b).collect();
    rs.weight_in_root_lattice(&diff).expect("λ - w₀λ lies in Q")
}

/// `Π_{α>0} (λ+ρ, α∨) / (ρ, α∨)`.
pub fn weyl_dimension(rs: &RootSystem, l: &[i64]) -> u128 {
    let rho = rs.rho();
    let lr: Vec<i64> = l.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for b in &rs.positive_roots {
        num *= rs.pair_weight_coroot(&lr, b) as u128;
        den *= rs.pair_weight_coroot(&rho, b) as u128;
    }
    num / den
}

impl Irrep {
    /// Builds `L(λ)`; `depth`, when given, must cover `λ - w₀λ`.
    pub fn build(engine: Rc<Engine<Generic>>, highest: &[i64], depth: Option<&[i64]>) -> Result<Irrep, ModrepError> {
        let rs = engine.pbw.rs().clone();
        if highest.iter().any(|&x| x < 0) {
            return Err(ModrepError::NotDominant(highest.to_vec()));
        }
        let needed = full_depth(&rs, highest);
        if let Some(d) = depth {
            if d.iter().zip(&needed).any(|(g, n)| g < n) {
                return Err(ModrepError::InsufficientDepth { given: d.to_vec(), needed });
            }
        }
        let mut depths: Vec<Vec<i64>> = vec![vec![]];
        for &n in &needed {
            depths = depths.into_iter().flat_map(|p| (0..=n).map(move |c| [p.clone(), vec![c]].concat())).collect();
        }
        depths.sort_by_key(|g| (g.iter().sum::<i64>(), g.clone()));
        let mut m = Irrep { engine, highest: highest.to_vec(), spaces: Vec::new(), dim: 0, by_depth: HashMap::new(), form: RefCell::default() };
        for g in depths {
            let mu: Wt = highest.iter().zip(rs.root_to_weight(&g)).map(|(a, b)| a - b).collect();
            let (dom, _) = dominant_of(&rs, &mu);
            let gap: Vec<i64> = highest.iter().zip(&dom).map(|(a, b)| a - b).collect();
            if !rs.weight_in_root_lattice(&gap).is_some_and(|c| c.iter().all(|&x| x >= 0)) {
                continue;
            }
            if let Some(ws) = m.weight_space(&g, mu)? {
                m.by_depth.insert(g, m.spaces.len());
                m.dim += ws.basis.len();
                m.spaces.push(ws);
            }
        }
        Ok(m)
    }

    pub fn rs(&self) -> &RootSystem {
        self.engine.pbw.rs()
    }

    fn ring(&self) -> &Generic {
        &self.engine.ring
    }

    /// `⟨z⟩_λ`: the `U⁰` part of `z` evaluated at `λ`.
    fn evaluate(&self, z: &Tri<RatFn>) -> Result<RatFn, ModrepError> {
        let mut s = RatFn::zero();
        for (l, c) in self.engine.cartan_part(z) {
            s = s.add(&c.mul(&RatFn::q_pow(integral_pairing(self.rs(), &l, &self.highest)?)));
        }
        Ok(s)
    }

    /// `⟨f^{(B)} v, b^N v⟩`.
    fn form_value(&self, b: &Exps, n: &Exps) -> Result<RatFn, ModrepError> {
        if let Some(v) = self.form.borrow().get(&(b.clone(), n.clone())) {
            return Ok(v.clone());
        }
        let e = &self.engine;
        let z = e.mul(&e.sigma(&e.b_mono(b.clone())), &e.b_mono(n.clone()));
        let v = self.evaluate(&z)?.div(&RatFn::from_laurent(e.pbw.n_factor(b)));
        self.form.borrow_mut().insert((b.clone(), n.clone()), v.clone());
        Ok(v)
    }

    fn weight_space(&self, g: &[i64], mu: Wt) -> Result<Option<WeightSpace>, ModrepError> {
        let r = self.ring();
        let span: Vec<Exps> = self.engine.pbw.monomials(g).to_vec();
        let k = span.len();
        let mut gram = linalg::zeros(r, k, k);
        for (i, s) in span.iter().enumerate() {
            for (j, t) in span.iter().enumerate() {
                let v = self.form_value(s, t)?.div(&RatFn::from_laurent(self.engine.pbw.n_factor(t)));
                gram.set(i, j, v);
            }
        }
        let rank = linalg::rank(r, &gram);
        if rank == 0 {
            return Ok(None);
        }
        let all: Vec<usize> = (0..k).collect();
        for pick in combinations(k, rank) {
            let sub = gram.select(&pick, &pick);
            let Some(inv) = linalg::inverse(r, &sub) else { continue };
            let coords = linalg::mul(r, &inv, &gram.select(&pick, &all));
            if coords.data.iter().all(|c| c.is_laurent()) {
                let basis = pick.iter().map(|&i| span[i].clone()).collect();
                return Ok(Some(WeightSpace { weight: mu, depth: g.to_vec(), basis, offset: self.dim, gram_inv: inv }));
            }
        }
        Err(ModrepError::NoIntegralBasis(mu))
    }

    /// `y v` as a combination of `b^N v`.
    fn apply_to_highest(&self, y: &Tri<RatFn>) -> Result<BTreeMap<Exps, RatFn>, ModrepError> {
        let mut out: BTreeMap<Exps, RatFn> = BTreeMap::new();
        for ((n, l, m), c) in &y.terms {
            if m.iter().any(|&x| x > 0) {
                continue;
            }
            let v = c.mul(&RatFn::q_pow(integral_pairing(self.rs(), l, &self.highest)?));
            let e = out.entry(n.clone()).or_insert_with(RatFn::zero);
            *e = e.add(&v);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Coordinates of `Σ c_N b^N v` in the module basis.
    fn coordinates(&self, v: &BTreeMap<Exps, RatFn>) -> Result<Vec<RatFn>, ModrepError> {
        let mut out = vec![RatFn::zero(); self.dim];
        let mut by_space: BTreeMap<usize, Vec<(&Exps, &RatFn)>> = BTreeMap::new();
        for (n, c) in v {
            if let Some(&s) = self.by_depth.get(&self.engine.pbw.weight(n)) {
                by_space.entry(s).or_default().push((n, c));
            }
        }
        for (s, terms) in by_space {
            let ws = &self.spaces[s];
            let mut rhs = Vec::with_capacity(ws.basis.len());
            for b in &ws.basis {
                let mut acc = RatFn::zero();
                for (n, c) in &terms {
                    acc = acc.add(&c.mul(&self.form_value(b, n)?));
                }
                rhs.push(acc);
            }
            for (i, row) in (0..ws.basis.len()).map(|i| (i, ws.gram_inv.data[i * ws.basis.len()..(i + 1) * ws.basis.len()].to_vec())) {
                let x = row.iter().zip(&rhs).fold(RatFn::zero(), |a, (p, q)| a.add(&p.mul(q)));
                out[ws.offset + i] = x;
            }
        }
        Ok(out)
    }

    /// The matrix of an element of `U` in the module basis.
    pub fn matrix_of(&self, x: &Tri<RatFn>) -> Result<Mat<RatFn>, ModrepError> {
        let e = &self.engine;
        let mut m = linalg::zeros(self.ring(), self.dim, self.dim);
        for ws in &self.spaces {
            for (i, n) in ws.basis.iter().enumerate() {
                let u = e.scale(&e.b_mono(n.clone()), &RatFn::one().div(&RatFn::from_laurent(e.pbw.n_factor(n))));
                let col = self.coordinates(&self.apply_to_highest(&e.mul(x, &u))?)?;
                for (r, c) in col.into_iter().enumerate() {
                    m.set(r, ws.offset + i, c);
                }
            }
        }
        Ok(m)
    }

    /// `e^{(M)} = a^M / n_M`.
    pub fn e_divided(&self, m: &[u16]) -> Tri<RatFn> {
        let e = &self.engine;
        e.scale(&e.a_mono(m.to_vec()), &RatFn::one().div(&RatFn::from_laurent(e.pbw.n_factor(m))))
    }
    /// `f^{(N)} = b^N / n_N`.
    pub fn f_divided(&self, n: &[u16]) -> Tri<RatFn> {
        let e = &self.engine;
        e.scale(&e.b_mono(n.to_vec()), &RatFn::one().div(&RatFn::from_laurent(e.pbw.n_factor(n))))
    }
    pub fn e_simple(&self, i: usize) -> Tri<RatFn> {
        self.e_divided(&self.engine.pbw.unit(self.engine.simple_index(i)))
    }
    pub fn f_simple(&self, i: usize) -> Tri<RatFn> {
        self.f_divided(&self.engine.pbw.unit(self.engine.simple_index(i)))
    }

    /// Diagonal matrix of `k_ν`: `q^{(μ, ν)}` on `1_μ`.
    pub fn k_matrix(&self, nu: &[i64]) -> Result<Mat<RatFn>, ModrepError> {
        let mut m = linalg::zeros(self.ring(), self.dim, self.dim);
        for ws in &self.spaces {
            let p = integral_pairing(self.rs(), &ws.weight, nu)?;
            for i in 0..ws.basis.len() {
                m.set(ws.offset + i, ws.offset + i, RatFn::q_pow(p));
            }
        }
        Ok(m)
    }

    /// `μ ↦ dim 1_μ`.
    pub fn character(&self) -> BTreeMap<Wt, usize> {
        self.spaces.iter().map(|ws| (ws.weight.clone(), ws.basis.len())).collect()
    }

    /// The weight of each basis vector, in basis order.
    pub fn basis_weights(&self) -> Vec<Wt> {
        self.spaces.iter().flat_map(|ws| std::iter::repeat(ws.weight.clone()).take(ws.basis.len())).collect()
    }

    /// The matrix of `x` with entries specialized at a root of unity; entries must be Laurent.
    pub fn matrix_at(&self, x: &Tri<RatFn>, ring: &AtRoot, op: &str) -> Result<Mat<Cyc>, ModrepError> {
        specialize_matrix(&self.matrix_of(x)?, ring, op)
    }

    /// True when every weight multiplicity is W-invariant.
    pub fn character_is_invariant(&self) -> bool {
        let ch = self.character();
        let rs = self.rs();
        ch.iter().all(|(mu, d)| (0..rs.rank).all(|i| ch.get(&rs.reflect_weight(i, mu)) == Some(d)))
    }
}

/// Entrywise specialization of a matrix of Laurent polynomials.
pub fn specialize_matrix(m: &Mat<RatFn>, ring: &AtRoot, op: &str) -> Result<Mat<Cyc>, ModrepError> {
    m.try_map(|row, col, c| {
        if !c.is_laurent() {
            return Err(ModrepError::NonIntegral { op: op.to_string(), row, col, value: c.to_string() });
        }
        Ok(ring.from_ratfn(c).expect("Laurent polynomials have no poles"))
    })
}

pub fn trace<R: Ring>(r: &R, m: &Mat<R::E>) -> R::E {
    (0..m.rows).fold(r.zero(), |s, i| r.add(&s, m.get(i, i)))
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Relation fidelity, Serre relations, divided powers, Weyl dimension and W-invariance.
pub fn module_checks(m: &Irrep) -> Result<Vec<Case>, ModrepError> {
    let rs = m.rs().clone();
    let g = Generic;
    let n = rs.rank;
    let tag = format!("L{:?}", m.highest);
    let mut cases = Vec::new();
    cases.push(Case::new(format!("{tag} dimension = Weyl formula"), m.dim as u128 == weyl_dimension(&rs, &m.highest)).with_detail(format!("dim {}", m.dim)));
    cases.push(Case::new(format!("{tag} character W-invariant"), m.character_is_invariant()));
    let top = m.character().get(&m.highest).copied();
    cases.push(Case::new(format!("{tag} highest weight space is a line"), top == Some(1)));
    let e: Vec<Mat<RatFn>> = (0..n).map(|i| m.matrix_of(&m.e_simple(i))).collect::<Result<_, _>>()?;
    let f: Vec<Mat<RatFn>> = (0..n).map(|i| m.matrix_of(&m.f_simple(i))).collect::<Result<_, _>>()?;
    let alpha: Vec<Wt> = (0..n).map(|i| rs.root_to_weight(&rs.simple_root(i))).collect();
    let kk: Vec<Mat<RatFn>> = (0..n).map(|i| m.k_matrix(&alpha[i])).collect::<Result<_, _>>()?;
    let kinv: Vec<Mat<RatFn>> = (0..n).map(|i| m.k_matrix(&alpha[i].iter().map(|x| -x).collect::<Vec<_>>())).collect::<Result<_, _>>()?;
    let hv = m.highest.clone();
    let kills = (0..n).all(|i| {
        let col: Vec<RatFn> = (0..m.dim).map(|r| e[i].get(r, 0).clone()).collect();
        m.spaces[0].weight == hv && col.iter().all(|c| c.is_zero())
    });
    cases.push(Case::new(format!("{tag} e_i kill the highest vector"), kills));
    let mut comm = true;
    let mut kconj = true;
    for i in 0..n {
        let qi = RatFn::q_pow(rs.sym[i]).sub(&RatFn::q_pow(-rs.sym[i]));
        for j in 0..n {
            let lhs = linalg::sub(&g, &linalg::mul(&g, &e[i], &f[j]), &linalg::mul(&g, &f[j], &e[i]));
            let rhs = if i == j { linalg::scale(&g, &linalg::sub(&g, &kk[i], &kinv[i]), &RatFn::one().div(&qi)) } else { linalg::zeros(&g, m.dim, m.dim) };
            comm &= lhs == rhs;
            let p = RatFn::q_pow(rs.pair_weight_root(&alpha[i], &rs.simple_root(j)));
            let conj = linalg::mul(&g, &linalg::mul(&g, &kk[i], &e[j]), &kinv[i]);
            kconj &= conj == linalg::scale(&g, &e[j], &p);
        }
    }
    cases.push(Case::new(format!("{tag} [e_i, f_j] relation"), comm));
    cases.push(Case::new(format!("{tag} k e k^-1 relation"), kconj));
    let mut serre = true;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let top = (1 - rs.cartan[i][j]) as u32;
            for x in [&e, &f] {
                let mut acc = linalg::zeros(&g, m.dim, m.dim);
                for t in 0..=top {
                    let c = RatFn::one().div(&RatFn::from_laurent(gauss_factorial(top - t, rs.sym[i]).mul(&gauss_factorial(t, rs.sym[i]))));
                    let c = if t % 2 == 0 { c } else { c.neg() };
                    let term = linalg::mul(&g, &linalg::mul(&g, &linalg::pow(&g, &x[i], top - t), &x[j]), &linalg::pow(&g, &x[i], t));
                    acc = linalg::add(&g, &acc, &linalg::scale(&g, &term, &c));
                }
                serre &= linalg::is_zero(&g, &acc);
            }
        }
    }
    cases.push(Case::new(format!("{tag} Serre relations"), serre));
    let mut divided = true;
    for i in 0..n {
        let k = m.engine.simple_index(i);
        for p in 2..=3u16 {
            let mut ex = vec![0u16; m.engine.n_roots()];
            ex[k] = p;
            let fd = m.matrix_of(&m.f_divided(&ex))?;
            let lhs = linalg::pow(&g, &f[i], p as u32);
            divided &= lhs == linalg::scale(&g, &fd, &RatFn::from_laurent(gauss_factorial(p as u32, rs.sym[i])));
        }
    }
    cases.push(Case::new(format!("{tag} f_i^n = [n]! f_i^(n)"), divided));
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqpbw::Pbw;

    fn irrep(t: char, n: usize, l: &[i64]) -> Irrep {
        let e = Rc::new(Engine::new(Generic, Rc::new(Pbw::new(RootSystem::new(t, n).unwrap()).unwrap())).unwrap());
        Irrep::build(e, l, None).unwrap()
    }

    #[test]
    fn small_dimensions() {
        let m = irrep('A', 1, &[1]);
        assert_eq!(m.dim, 2);
        assert_eq!(m.character(), BTreeMap::from([(vec![1], 1), (vec![-1], 1)]));
        assert_eq!(irrep('A', 2, &[1, 0]).dim, 3);
        let b = irrep('B', 2, &[0, 1]);
        assert_eq!(b.dim, 4);
        assert!(b.character().values().all(|&d| d == 1));
        let adj = irrep('A', 2, &[1, 1]);
        assert_eq!(adj.dim, 8);
        assert_eq!(adj.character()[&vec![0, 0]], 2);
    }

    #[test]
    fn weyl_formula_values() {
        let g2 = RootSystem::new('G', 2).unwrap();
        assert_eq!(weyl_dimension(&g2, &[1, 0]), 7);
        assert_eq!(weyl_dimension(&g2, &[0, 1]), 14);
        assert_eq!(weyl_dimension(&RootSystem::new('A', 2).unwrap(), &[2, 1]), 15);
    }

    #[test]
    fn relations_hold() {
        for (t, n, l) in [('A', 1, vec![3]), ('A', 2, vec![1, 1]), ('B', 2, vec![1, 0]), ('B', 2, vec![0, 1])] {
            let m = irrep(t, n, &l);
            let bad: Vec<_> = module_checks(&m).unwrap().into_iter().filter(|c| !c.passed()).map(|c| c.name).collect();
            assert!(bad.is_empty(), "{bad:?}");
        }
    }

    #[test]
    fn insufficient_depth() {
        let e = Rc::new(Engine::new(Generic, Rc::new(Pbw::new(RootSystem::new('A', 1).unwrap()).unwrap())).unwrap());
        assert!(matches!(Irrep::build(e, &[2], Some(&[1])), Err(ModrepError::InsufficientDepth { .. })));
    }

    #[test]
    fn divided_powers_specialize() {
        let m = irrep('A', 2, &[1, 0]);
        let z = AtRoot::new(5);
        for k in 0..3 {
            let mut ex = vec![0u16; 3];
            ex[k] = 1;
            m.matrix_at(&m.e_divided(&ex), &z, "e").unwrap();
        }
        let a1 = irrep('A', 1, &[1]);
        let f = a1.matrix_at(&a1.f_simple(0), &AtRoot::new(4), "f").unwrap();
        assert_eq!(f.data.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn k_matrix_rejects_half_integers() {
        let m = irrep('A', 1, &[1]);
        assert!(m.k_matrix(&[1]).is_err());
        assert!(m.k_matrix(&[2]).is_ok());
    }
}
