//! Root vectors, PBW monomials, and PBW expansion by pairing against the dual basis.

use super::braid::BraidDir;
use super::words::{words_of_weight, Word, WordAlgebra, WordPoly, WordTri, Wt};
use crate::qscalar::{gauss_factorial, q_minus_qinv, Laurent, RatFn};
use crate::rootlat::{beta_sequence, longest_word, ReducedWord, RootSystem, WordError};
use super::tables::Tables;
use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;
use std::rc::Rc;
use thiserror::Error;

/// Exponent vector `(m_1, …, m_N)` against the β-sequence; the monomial is
/// ordered with the largest index on the left.
pub type Exps = Vec<u16>;

/// A canonical triangular monomial `b^N k_λ a^M`.
pub type PbwKey = (Exps, Wt, Exps);

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PbwError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("root vector {0} left its Borel half; the word is not reduced or the braid images are wrong")]
    Escape(usize),
    #[error("PBW expansion residual is nonzero at weight {0:?}")]
    Residual(Vec<i64>),
}

/// Generic-parameter PBW data for a root system and a reduced word.
pub struct Pbw {
    pub alg: WordAlgebra,
    pub word: ReducedWord,
    pub betas: Vec<Vec<i64>>,
    pub dbeta: Vec<i64>,
    pub e_root: Vec<WordPoly>,
    pub f_root: Vec<WordPoly>,
    a_cache: RefCell<HashMap<Exps, Rc<WordPoly>>>,
    b_cache: RefCell<HashMap<Exps, Rc<WordPoly>>>,
    mono_cache: RefCell<HashMap<Vec<i64>, Rc<Vec<Exps>>>>,
    tables: OnceCell<Rc<Tables>>,
}

impl Pbw {
    pub fn new(rs: RootSystem) -> Result<Pbw, PbwError> {
        let w = longest_word(&rs);
        Pbw::with_word(rs, w)
    }

    pub fn with_word(rs: RootSystem, word: ReducedWord) -> Result<Pbw, PbwError> {
        let betas = beta_sequence(&rs, &word)?;
        let dbeta = betas.iter().map(|b| rs.d_of(b)).collect();
        let alg = WordAlgebra::new(rs);
        let n = betas.len();
        let mut e_root = Vec::with_capacity(n);
        let mut f_root = Vec::with_capacity(n);
        for j in 0..n {
            let ij = word.0[j];
            let mut x = WordPoly::letter(ij);
            let mut y = WordPoly::letter(ij);
            for m in (0..j).rev() {
                let (xp, rx) = alg.braid_plus(word.0[m], &x, BraidDir::Forward);
                let (ym, ry) = alg.braid_minus(word.0[m], &y, BraidDir::Forward);
                if !alg.vanishes(&rx) || !alg.vanishes(&ry) {
                    return Err(PbwError::Escape(j));
                }
                x = xp;
                y = ym;
            }
            e_root.push(x);
            f_root.push(y);
        }
        Ok(Pbw {
            alg,
            word,
            betas,
            dbeta,
            e_root,
            f_root,
            a_cache: RefCell::new(HashMap::new()),
            b_cache: RefCell::new(HashMap::new()),
            mono_cache: RefCell::new(HashMap::new()),
            tables: OnceCell::new(),
        })
    }

    pub(crate) fn tables_cell(&self) -> &OnceCell<Rc<Tables>> {
        &self.tables
    }
    pub fn rs(&self) -> &RootSystem {
        &self.alg.rs
    }
    pub fn rank(&self) -> usize {
        self.alg.rs.rank
    }
    pub fn n_roots(&self) -> usize {
        self.betas.len()
    }
    /// `q_β - q_β⁻¹` for the k-th root.
    pub fn qb(&self, k: usize) -> Laurent {
        q_minus_qinv(self.dbeta[k])
    }
    pub fn a_root(&self, k: usize) -> WordPoly {
        self.e_root[k].scale(&RatFn::from_laurent(self.qb(k)))
    }
    pub fn b_root(&self, k: usize) -> WordPoly {
        self.f_root[k].scale(&RatFn::from_laurent(self.qb(k)))
    }
    pub fn unit(&self, k: usize) -> Exps {
        let mut e = vec![0; self.n_roots()];
        e[k] = 1;
        e
    }
    /// `Σ m_j β_j` in simple-root coordinates.
    pub fn weight(&self, m: &[u16]) -> Vec<i64> {
        let mut w = vec![0; self.rank()];
        for (j, &mj) in m.iter().enumerate() {
            for i in 0..self.rank() {
                w[i] += mj as i64 * self.betas[j][i];
            }
        }
        w
    }

    fn mono(&self, m: &[u16], plus: bool) -> Rc<WordPoly> {
        let cache = if plus { &self.a_cache } else { &self.b_cache };
        if let Some(p) = cache.borrow().get(m) {
            return p.clone();
        }
        let mut p = WordPoly::one();
        for j in (0..m.len()).rev() {
            if m[j] > 0 {
                let r = if plus { self.a_root(j) } else { self.b_root(j) };
                p = p.mul(&r.pow(m[j] as u32));
            }
        }
        let p = Rc::new(p);
        cache.borrow_mut().insert(m.to_vec(), p.clone());
        p
    }
    /// Words of `a_{β_N}^{m_N} ⋯ a_{β_1}^{m_1}`.
    pub fn a_mono(&self, m: &[u16]) -> Rc<WordPoly> {
        self.mono(m, true)
    }
    /// Words of `b_{β_N}^{m_N} ⋯ b_{β_1}^{m_1}`.
    pub fn b_mono(&self, m: &[u16]) -> Rc<WordPoly> {
        self.mono(m, false)
    }
    /// Words of the divided-power monomial `e_{β_N}^{(m_N)} ⋯ e_{β_1}^{(m_1)}`.
    pub fn e_divided(&self, m: &[u16]) -> WordPoly {
        self.a_mono(m).scale(&RatFn::one().div(&RatFn::from_laurent(self.n_factor(m))))
    }
    /// Words of `f_{β_N}^{(m_N)} ⋯ f_{β_1}^{(m_1)}`.
    pub fn f_divided(&self, m: &[u16]) -> WordPoly {
        self.b_mono(m).scale(&RatFn::one().div(&RatFn::from_laurent(self.n_factor(m))))
    }

    /// `Π (-1)^{m} q_β^{m(m-1)/2}`: the diagonal pairing value.
    pub fn g_factor(&self, m: &[u16]) -> Laurent {
        let mut sign = 1i64;
        let mut e = 0i64;
        for (j, &mj) in m.iter().enumerate() {
            let mj = mj as i64;
            if mj % 2 == 1 {
                sign = -sign;
            }
            e += self.dbeta[j] * mj * (mj - 1) / 2;
        }
        Laurent::monomial(crate::qscalar::Q::int(sign), e)
    }
    /// `Π (q_β - q_β⁻¹)^m [m]_{q_β}!`, so that `a^M = n_M e^{(M)}`.
    pub fn n_factor(&self, m: &[u16]) -> Laurent {
        let mut r = Laurent::one();
        for (j, &mj) in m.iter().enumerate() {
            if mj > 0 {
                r = r.mul(&self.qb(j).pow(mj as u32)).mul(&gauss_factorial(mj as u32, self.dbeta[j]));
            }
        }
        r
    }

    /// All exponent vectors of the given weight (simple-root coordinates), sorted.
    pub fn monomials(&self, wt: &[i64]) -> Rc<Vec<Exps>> {
        if let Some(v) = self.mono_cache.borrow().get(wt) {
            return v.clone();
        }
        let n = self.n_roots();
        let mut out = Vec::new();
        let mut cur = vec![0u16; n];
        fn go(p: &Pbw, j: usize, left: &mut Vec<i64>, cur: &mut Exps, out: &mut Vec<Exps>) {
            if j == cur.len() {
                if left.iter().all(|&x| x == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let b = &p.betas[j];
            let mut k = 0u16;
            loop {
                go(p, j + 1, left, cur, out);
                if (0..left.len()).any(|i| left[i] < b[i]) {
                    break;
                }
                for i in 0..left.len() {
                    left[i] -= b[i];
                }
                k += 1;
                cur[j] = k;
            }
            for i in 0..left.len() {
                left[i] += k as i64 * b[i];
            }
            cur[j] = 0;
        }
        if wt.iter().all(|&x| x >= 0) {
            let mut left = wt.to_vec();
            go(self, 0, &mut left, &mut cur, &mut out);
        }
        out.sort();
        let v = Rc::new(out);
        self.mono_cache.borrow_mut().insert(wt.to_vec(), v.clone());
        v
    }

    /// Exponent vectors with total degree at most `bound`.
    pub fn monomials_up_to(&self, bound: u16) -> Vec<Exps> {
        let n = self.n_roots();
        let mut out = Vec::new();
        fn go(j: usize, left: u16, cur: &mut Exps, out: &mut Vec<Exps>) {
            if j == cur.len() {
                out.push(cur.clone());
                return;
            }
            for k in 0..=left {
                cur[j] = k;
                go(j + 1, left - k, cur, out);
            }
            cur[j] = 0;
        }
        go(0, bound, &mut vec![0; n], &mut out);
        out
    }

    fn split_by_weight(&self, x: &WordPoly) -> HashMap<Vec<i64>, WordPoly> {
        let mut m: HashMap<Vec<i64>, WordPoly> = HashMap::new();
        for (w, c) in &x.terms {
            m.entry(super::words::word_weight(w, self.rank())).or_default().add_term(w.clone(), c.clone());
        }
        m
    }

    /// Coefficients of `x ∈ U⁺` in the basis `a^M`.
    pub fn expand_plus(&self, x: &WordPoly) -> HashMap<Exps, RatFn> {
        let mut out = HashMap::new();
        for (wt, part) in self.split_by_weight(x) {
            for m in self.monomials(&wt).iter() {
                let t = self.alg.pair(&part, &self.b_mono(m));
                if !t.is_zero() {
                    let d = self.g_factor(m).mul(&self.n_factor(m));
                    out.insert(m.clone(), t.div(&RatFn::from_laurent(d)));
                }
            }
        }
        out
    }

    /// Coefficients of `y ∈ U⁻` in the basis `b^N`.
    pub fn expand_minus(&self, y: &WordPoly) -> HashMap<Exps, RatFn> {
        let mut out = HashMap::new();
        for (wt, part) in self.split_by_weight(y) {
            for m in self.monomials(&wt).iter() {
                let t = self.alg.pair(&self.a_mono(m), &part);
                if !t.is_zero() {
                    let d = self.g_factor(m).mul(&self.n_factor(m));
                    out.insert(m.clone(), t.div(&RatFn::from_laurent(d)));
                }
            }
        }
        out
    }

    /// Reassembles `Σ c_M a^M` as words.
    pub fn assemble_plus(&self, c: &HashMap<Exps, RatFn>) -> WordPoly {
        c.iter().fold(WordPoly::zero(), |acc, (m, v)| acc.add(&self.a_mono(m).scale(v)))
    }
    pub fn assemble_minus(&self, c: &HashMap<Exps, RatFn>) -> WordPoly {
        c.iter().fold(WordPoly::zero(), |acc, (m, v)| acc.add(&self.b_mono(m).scale(v)))
    }

    /// Checks `x = Σ c_M a^M` against every opposite word of each weight.
    pub fn residual_plus_vanishes(&self, x: &WordPoly, c: &HashMap<Exps, RatFn>) -> bool {
        let r = x.sub(&self.assemble_plus(c));
        self.alg.plus_vanishes(&r)
    }

    /// Canonical `b^N k_λ a^M` form of a normally ordered word element.
    pub fn tri_from_words(&self, t: &WordTri) -> HashMap<PbwKey, RatFn> {
        // λ ↦ f-word ↦ e-part.
        let mut by_k: HashMap<Wt, HashMap<Word, WordPoly>> = HashMap::new();
        for ((w, l, u), c) in &t.terms {
            by_k.entry(l.clone()).or_default().entry(w.clone()).or_default().add_term(u.clone(), c.clone());
        }
        let mut out: HashMap<PbwKey, RatFn> = HashMap::new();
        for (l, fmap) in by_k {
            let mut by_a: HashMap<Exps, WordPoly> = HashMap::new();
            for (w, epart) in fmap {
                for (m, c) in self.expand_plus(&epart) {
                    by_a.entry(m).or_default().add_term(w.clone(), c);
                }
            }
            for (m, fpart) in by_a {
                for (nn, c) in self.expand_minus(&fpart) {
                    let e = out.entry((nn, l.clone(), m.clone())).or_insert_with(RatFn::zero);
                    *e = e.add(&c);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

impl WordAlgebra {
    /// True when a positive-half element pairs to zero with every f-word of each weight.
    pub fn plus_vanishes(&self, x: &WordPoly) -> bool {
        let mut groups: HashMap<Vec<i64>, WordPoly> = HashMap::new();
        for (w, c) in &x.terms {
            groups.entry(super::words::word_weight(w, self.rank())).or_default().add_term(w.clone(), c.clone());
        }
        groups.iter().all(|(wt, p)| words_of_weight(wt).into_iter().all(|w| self.pair(p, &WordPoly::from_word(w, RatFn::one())).is_zero()))
    }

    /// True when a normally ordered element is zero in `U`.
    ///
    /// Uses the triangular decomposition: each `k_λ` component of
    /// `Σ f_w ⊗ e_u` must vanish in `U⁻ ⊗ U⁺`, tested by pairing.
    pub fn vanishes(&self, t: &WordTri) -> bool {
        let n = self.rank();
        let mut by_k: HashMap<(Wt, Vec<i64>), HashMap<Word, WordPoly>> = HashMap::new();
        for ((w, l, u), c) in &t.terms {
            by_k.entry((l.clone(), super::words::word_weight(w, n))).or_default().entry(w.clone()).or_default().add_term(u.clone(), c.clone());
        }
        for ((_, fwt), fmap) in by_k {
            for test in words_of_weight(&fwt) {
                let tp = WordPoly::from_word(test, RatFn::one());
                let mut acc = WordPoly::zero();
                for (w, epart) in &fmap {
                    let v = self.pair(&tp, &WordPoly::from_word(w.clone(), RatFn::one()));
                    if !v.is_zero() {
                        acc = acc.add(&epart.scale(&v));
                    }
                }
                if !self.plus_vanishes(&acc) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_root_vectors() {
        let p = Pbw::new(RootSystem::new('A', 2).unwrap()).unwrap();
        assert_eq!(p.e_root[0], WordPoly::letter(0));
        assert_eq!(p.e_root[2], WordPoly::letter(1));
        let mut expect = WordPoly::from_word(vec![0, 1], RatFn::int(-1));
        expect.add_term(vec![1, 0], RatFn::q_pow(-1));
        assert_eq!(p.e_root[1], expect);
    }

    #[test]
    fn a2_expand_e1e2() {
        let p = Pbw::new(RootSystem::new('A', 2).unwrap()).unwrap();
        let x = WordPoly::from_word(vec![0, 1], RatFn::one());
        // e1 e2 = q⁻¹ e_{β3} e_{β1} - e_{β2}, rescaled to the a-basis.
        let c = p.expand_plus(&x);
        let qq = RatFn::from_laurent(q_minus_qinv(1));
        assert_eq!(c.len(), 2);
        assert_eq!(c[&vec![1, 0, 1]], RatFn::q_pow(-1).div(&qq.mul(&qq)));
        assert_eq!(c[&vec![0, 1, 0]], RatFn::int(-1).div(&qq));
        assert!(p.residual_plus_vanishes(&x, &c));
    }

    #[test]
    fn b2_weights() {
        let p = Pbw::new(RootSystem::new('B', 2).unwrap()).unwrap();
        for k in 0..4 {
            assert_eq!(p.e_root[k].weight(2).unwrap(), p.betas[k]);
            assert_eq!(p.f_root[k].weight(2).unwrap(), p.betas[k]);
        }
    }
}
