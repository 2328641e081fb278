//! Word-level arithmetic: linear combinations of generator words in normal
//! order `f_w k_λ e_u`, straightening, coproduct, antipode and σ.

use crate::qscalar::{gauss_factorial, q_minus_qinv, Laurent, RatFn};
use crate::rootlat::RootSystem;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// A word in the simple-root letters `0..rank`.
pub type Word = Vec<u8>;
/// A weight in fundamental-weight coordinates.
pub type Wt = Vec<i64>;

/// Linear combination of words in a single family of letters (all `e` or all `f`).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WordPoly {
    pub terms: HashMap<Word, RatFn>,
}

impl WordPoly {
    pub fn zero() -> WordPoly {
        WordPoly::default()
    }
    pub fn one() -> WordPoly {
        WordPoly::from_word(Vec::new(), RatFn::one())
    }
    pub fn letter(i: usize) -> WordPoly {
        WordPoly::from_word(vec![i as u8], RatFn::one())
    }
    pub fn from_word(w: Word, c: RatFn) -> WordPoly {
        let mut p = WordPoly::zero();
        p.add_term(w, c);
        p
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn add_term(&mut self, w: Word, c: RatFn) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                let v = o.get().add(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }
    pub fn add(&self, o: &WordPoly) -> WordPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &WordPoly) -> WordPoly {
        self.add(&o.scale(&RatFn::int(-1)))
    }
    pub fn scale(&self, c: &RatFn) -> WordPoly {
        if c.is_zero() {
            return WordPoly::zero();
        }
        WordPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect() }
    }
    /// Concatenation product.
    pub fn mul(&self, o: &WordPoly) -> WordPoly {
        let mut r = WordPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                r.add_term(w, a.mul(b));
            }
        }
        r
    }
    pub fn pow(&self, n: u32) -> WordPoly {
        (0..n).fold(WordPoly::one(), |acc, _| acc.mul(self))
    }
    /// Letter reversal, the linear map `w ↦ reverse(w)`.
    pub fn reversed(&self) -> WordPoly {
        WordPoly { terms: self.terms.iter().map(|(w, c)| (w.iter().rev().copied().collect(), c.clone())).collect() }
    }
    /// Weight (simple-root coordinates) of any word; `None` for the zero element.
    pub fn weight(&self, rank: usize) -> Option<Vec<i64>> {
        self.terms.keys().next().map(|w| word_weight(w, rank))
    }
    pub fn sorted_terms(&self) -> Vec<(&Word, &RatFn)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

pub fn word_weight(w: &[u8], rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for &i in w {
        v[i as usize] += 1;
    }
    v
}

/// All words with the given letter multiplicities.
pub fn words_of_weight(wt: &[i64]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut left = wt.to_vec();
    fn go(left: &mut Vec<i64>, cur: &mut Word, out: &mut Vec<Word>) {
        if left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i as u8);
                go(left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    go(&mut left, &mut cur, &mut out);
    out
}

/// Key `(f-word, k-weight, e-word)` of a normally ordered word monomial.
pub type TriKey = (Word, Wt, Word);

/// Linear combination of normally ordered monomials `f_w k_λ e_u`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WordTri {
    pub terms: HashMap<TriKey, RatFn>,
}

impl WordTri {
    pub fn zero() -> WordTri {
        WordTri::default()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_term(&mut self, k: TriKey, c: RatFn) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(k) {
            Entry::Occupied(mut o) => {
                let v = o.get().add(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }
    pub fn add(&self, o: &WordTri) -> WordTri {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &WordTri) -> WordTri {
        self.add(&o.scale(&RatFn::int(-1)))
    }
    pub fn scale(&self, c: &RatFn) -> WordTri {
        if c.is_zero() {
            return WordTri::zero();
        }
        WordTri { terms: self.terms.iter().map(|(k, x)| (k.clone(), x.mul(c))).collect() }
    }
    pub fn scalar(c: RatFn, rank: usize) -> WordTri {
        let mut t = WordTri::zero();
        t.add_term((Vec::new(), vec![0; rank], Vec::new()), c);
        t
    }
    pub fn k(l: Wt) -> WordTri {
        let mut t = WordTri::zero();
        t.add_term((Vec::new(), l, Vec::new()), RatFn::one());
        t
    }
    /// `Σ c_u e_u`.
    pub fn from_e(p: &WordPoly, rank: usize) -> WordTri {
        WordTri { terms: p.terms.iter().map(|(u, c)| ((Vec::new(), vec![0; rank], u.clone()), c.clone())).collect() }
    }
    /// `Σ c_w f_w`.
    pub fn from_f(p: &WordPoly, rank: usize) -> WordTri {
        WordTri { terms: p.terms.iter().map(|(w, c)| ((w.clone(), vec![0; rank], Vec::new()), c.clone())).collect() }
    }
    /// The `U⁺` part: terms with empty f-word and trivial k.
    pub fn plus_part(&self) -> WordPoly {
        let mut p = WordPoly::zero();
        for ((w, l, u), c) in &self.terms {
            if w.is_empty() && l.iter().all(|&x| x == 0) {
                p.add_term(u.clone(), c.clone());
            }
        }
        p
    }
    /// The `U⁻` part: terms with empty e-word and trivial k.
    pub fn minus_part(&self) -> WordPoly {
        let mut p = WordPoly::zero();
        for ((w, l, u), c) in &self.terms {
            if u.is_empty() && l.iter().all(|&x| x == 0) {
                p.add_term(w.clone(), c.clone());
            }
        }
        p
    }
    /// Terms with both words empty, as `λ ↦ coefficient`.
    pub fn cartan_part(&self) -> HashMap<Wt, RatFn> {
        self.terms.iter().filter(|((w, _, u), _)| w.is_empty() && u.is_empty()).map(|((_, l, _), c)| (l.clone(), c.clone())).collect()
    }
    /// Applies `q ↦ -q` to every coefficient.
    pub fn subs_neg(&self) -> WordTri {
        WordTri { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.subs_neg())).collect() }
    }
}

type Straight = Rc<Vec<(TriKey, RatFn)>>;

/// Word-level algebra over a root system, with a straightening cache.
pub struct WordAlgebra {
    pub rs: RootSystem,
    straight: RefCell<HashMap<(Word, Word), Straight>>,
}

impl WordAlgebra {
    pub fn new(rs: RootSystem) -> WordAlgebra {
        WordAlgebra { rs, straight: RefCell::new(HashMap::new()) }
    }
    pub fn rank(&self) -> usize {
        self.rs.rank
    }
    pub fn zero_wt(&self) -> Wt {
        vec![0; self.rs.rank]
    }
    /// `α_i` in fundamental-weight coordinates.
    pub fn alpha(&self, i: usize) -> Wt {
        self.rs.root_to_weight(&self.rs.simple_root(i))
    }
    /// `(λ, wt(w))` for a word `w`.
    pub fn pair_word(&self, l: &[i64], w: &[u8]) -> i64 {
        w.iter().map(|&i| self.rs.sym[i as usize] * l[i as usize]).sum()
    }
    /// `d_i`.
    pub fn di(&self, i: usize) -> i64 {
        self.rs.sym[i]
    }

    pub fn e(&self, i: usize) -> WordTri {
        WordTri::from_e(&WordPoly::letter(i), self.rank())
    }
    pub fn f(&self, i: usize) -> WordTri {
        WordTri::from_f(&WordPoly::letter(i), self.rank())
    }
    pub fn k(&self, l: Wt) -> WordTri {
        WordTri::k(l)
    }
    pub fn one(&self) -> WordTri {
        WordTri::scalar(RatFn::one(), self.rank())
    }

    /// `e_u f_w` rewritten as `Σ c f_x k_ν e_y`.
    pub fn straighten(&self, u: &[u8], w: &[u8]) -> Straight {
        if let Some(r) = self.straight.borrow().get(&(u.to_vec(), w.to_vec())) {
            return r.clone();
        }
        let n = self.rank();
        let mut out: HashMap<TriKey, RatFn> = HashMap::new();
        let mut push = |k: TriKey, c: RatFn| {
            if c.is_zero() {
                return;
            }
            let e = out.entry(k).or_insert_with(RatFn::zero);
            *e = e.add(&c);
        };
        if u.is_empty() || w.is_empty() {
            push((w.to_vec(), vec![0; n], u.to_vec()), RatFn::one());
        } else {
            let a = *u.last().unwrap() as usize;
            let u1 = &u[..u.len() - 1];
            // e_a f_w = f_w e_a + Σ_{w_p = a} f_{w∖p} (q^{-s} k_a - q^{s} k_a⁻¹)/(q_a - q_a⁻¹).
            for (key, c) in self.straighten(u1, w).iter() {
                let mut y = key.2.clone();
                y.push(a as u8);
                push((key.0.clone(), key.1.clone(), y), c.clone());
            }
            let alpha = self.alpha(a);
            let denom = RatFn::from_laurent(q_minus_qinv(self.di(a)));
            for p in 0..w.len() {
                if w[p] as usize != a {
                    continue;
                }
                let s = self.pair_word(&alpha, &w[p + 1..]);
                let mut rest = w[..p].to_vec();
                rest.extend_from_slice(&w[p + 1..]);
                for (sign, kw, qe) in [(1i64, alpha.clone(), -s), (-1, alpha.iter().map(|x| -x).collect::<Wt>(), s)] {
                    let base = RatFn::q_pow(qe).scale_q(&crate::qscalar::Q::int(sign)).div(&denom);
                    for (key, c) in self.straighten(u1, &rest).iter() {
                        // e_y k = q^{-(k, wt y)} k e_y.
                        let shift = -self.pair_word(&kw, &key.2);
                        let nu: Wt = key.1.iter().zip(&kw).map(|(a, b)| a + b).collect();
                        push((key.0.clone(), nu, key.2.clone()), c.mul(&base).mul(&RatFn::q_pow(shift)));
                    }
                }
            }
        }
        let v: Straight = Rc::new(out.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.straight.borrow_mut().insert((u.to_vec(), w.to_vec()), v.clone());
        v
    }

    /// Product of normally ordered elements.
    pub fn mul(&self, x: &WordTri, y: &WordTri) -> WordTri {
        let mut r = WordTri::zero();
        for ((w, l, u), a) in &x.terms {
            for ((w2, m, u2), b) in &y.terms {
                let ab = a.mul(b);
                for ((fx, nu, ey), c) in self.straighten(u, w2).iter() {
                    // f_w k_λ f_x k_ν e_y k_μ e_u2.
                    let e = -self.pair_word(l, fx) - self.pair_word(m, ey);
                    let mut fw = w.clone();
                    fw.extend_from_slice(fx);
                    let mut eu = ey.clone();
                    eu.extend_from_slice(u2);
                    let lam: Wt = (0..l.len()).map(|i| l[i] + nu[i] + m[i]).collect();
                    r.add_term((fw, lam, eu), ab.mul(c).mul(&RatFn::q_pow(e)));
                }
            }
        }
        r
    }

    pub fn pow(&self, x: &WordTri, n: u32) -> WordTri {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// `x_i^{(n)}` style divided power of a one-letter generator, as a word polynomial.
    pub fn divided_letter(&self, i: usize, n: u32) -> WordPoly {
        let fact = RatFn::from_laurent(gauss_factorial(n, self.di(i)));
        WordPoly::from_word(vec![i as u8; n as usize], RatFn::one().div(&fact))
    }

    /// Antipode: `S(e_i) = -k_i⁻¹e_i`, `S(f_i) = -f_ik_i`, `S(k_λ) = k_{-λ}`, anti-multiplicative.
    pub fn antipode(&self, x: &WordTri) -> WordTri {
        let mut r = WordTri::zero();
        for ((w, l, u), c) in &x.terms {
            let mut acc = self.one();
            for &i in u.iter().rev() {
                let i = i as usize;
                let s = self.mul(&self.k(self.alpha(i).iter().map(|v| -v).collect()), &self.e(i)).scale(&RatFn::int(-1));
                acc = self.mul(&acc, &s);
            }
            acc = self.mul(&acc, &self.k(l.iter().map(|v| -v).collect()));
            for &i in w.iter().rev() {
                let i = i as usize;
                let s = self.mul(&self.f(i), &self.k(self.alpha(i))).scale(&RatFn::int(-1));
                acc = self.mul(&acc, &s);
            }
            r = r.add(&acc.scale(c));
        }
        r
    }

    /// The anti-automorphism swapping `e_i ↔ f_i` and fixing `k_λ`.
    pub fn sigma(&self, x: &WordTri) -> WordTri {
        let mut r = WordTri::zero();
        for ((w, l, u), c) in &x.terms {
            let fw: Word = u.iter().rev().copied().collect();
            let eu: Word = w.iter().rev().copied().collect();
            r.add_term((fw, l.clone(), eu), c.clone());
        }
        r
    }

    /// Counit: kills every term with a nonempty word, sends `k_λ` to 1.
    pub fn counit(&self, x: &WordTri) -> RatFn {
        x.terms.iter().filter(|((w, _, u), _)| w.is_empty() && u.is_empty()).fold(RatFn::zero(), |s, (_, c)| s.add(c))
    }

    /// `Δ(k_λ e_u) = Σ c (k_μ e_x) ⊗ (k_ν e_y)` using `Δ(e_i) = e_i⊗1 + k_i⊗e_i`.
    pub fn coproduct_plus(&self, l: &Wt, u: &[u8]) -> Vec<((Wt, Word), (Wt, Word), RatFn)> {
        let n = u.len();
        let mut out: HashMap<((Wt, Word), (Wt, Word)), RatFn> = HashMap::new();
        for mask in 0u32..(1 << n) {
            // Positions in the mask go to the right factor as e, leaving k on the left.
            let mut left_k: Wt = l.clone();
            let mut left_e: Word = Vec::new();
            let mut right_e: Word = Vec::new();
            let mut qe = 0i64;
            for (p, &i) in u.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    // e_x k_i = q^{-(α_i, wt x)} k_i e_x.
                    let a = self.alpha(i as usize);
                    qe -= self.pair_word(&a, &left_e);
                    left_k = left_k.iter().zip(&a).map(|(x, y)| x + y).collect();
                    right_e.push(i);
                } else {
                    left_e.push(i);
                }
            }
            let e = out.entry(((left_k, left_e), (l.clone(), right_e))).or_insert_with(RatFn::zero);
            *e = e.add(&RatFn::q_pow(qe));
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect()
    }

    /// `Δ(f_w k_λ) = Σ c (f_x k_μ) ⊗ (f_y k_ν)` using `Δ(f_i) = f_i⊗k_i⁻¹ + 1⊗f_i`.
    pub fn coproduct_minus(&self, w: &[u8], l: &Wt) -> Vec<((Word, Wt), (Word, Wt), RatFn)> {
        let n = w.len();
        let mut out: HashMap<((Word, Wt), (Word, Wt)), RatFn> = HashMap::new();
        for mask in 0u32..(1 << n) {
            // Positions in the mask put f on the right; the others leave k⁻¹ on the right.
            let mut left_f: Word = Vec::new();
            let mut right_f: Word = Vec::new();
            let mut right_k: Wt = vec![0; self.rank()];
            let mut qe = 0i64;
            for (p, &i) in w.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    // k_μ f_i = q^{-(μ, α_i)} f_i k_μ: move accumulated right k past the new f.
                    qe -= self.pair_word(&right_k, &[i]);
                    right_f.push(i);
                } else {
                    left_f.push(i);
                    let a = self.alpha(i as usize);
                    right_k = right_k.iter().zip(&a).map(|(x, y)| x - y).collect();
                }
            }
            let rk: Wt = right_k.iter().zip(l).map(|(x, y)| x + y).collect();
            let e = out.entry(((left_f, l.clone()), (right_f, rk))).or_insert_with(RatFn::zero);
            *e = e.add(&RatFn::q_pow(qe));
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect()
    }

    /// Serre element `Σ_n (-1)^n x_i^{(1-a_ij-n)} x_j x_i^{(n)}` as a word polynomial.
    pub fn serre(&self, i: usize, j: usize) -> WordPoly {
        let m = (1 - self.rs.cartan[i][j]) as u32;
        let mut r = WordPoly::zero();
        for n in 0..=m {
            let t = self.divided_letter(i, m - n).mul(&WordPoly::letter(j)).mul(&self.divided_letter(i, n));
            r = r.add(&t.scale(&RatFn::int(if n % 2 == 0 { 1 } else { -1 })));
        }
        r
    }

    /// `(k_i - k_i⁻¹)/(q_i - q_i⁻¹)`.
    pub fn k_bracket(&self, i: usize) -> WordTri {
        let a = self.alpha(i);
        let denom = RatFn::from_laurent(q_minus_qinv(self.di(i)));
        let inv = RatFn::one().div(&denom);
        self.k(a.clone()).scale(&inv).sub(&self.k(a.iter().map(|x| -x).collect()).scale(&inv))
    }

    pub fn q_beta(&self, d: i64) -> Laurent {
        q_minus_qinv(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(t: char, n: usize) -> WordAlgebra {
        WordAlgebra::new(RootSystem::new(t, n).unwrap())
    }

    #[test]
    fn ef_relation() {
        let a = alg('A', 2);
        let ef = a.mul(&a.e(0), &a.f(0));
        let fe = a.mul(&a.f(0), &a.e(0));
        assert_eq!(ef.sub(&fe), a.k_bracket(0));
        let ef = a.mul(&a.e(0), &a.f(1));
        let fe = a.mul(&a.f(1), &a.e(0));
        assert!(ef.sub(&fe).is_zero());
    }

    #[test]
    fn associativity_on_words() {
        let a = alg('B', 2);
        let x = a.mul(&a.e(0), &a.e(1)).add(&a.f(1));
        let y = a.mul(&a.f(0), &a.k(vec![1, 0])).add(&a.e(1));
        let z = a.mul(&a.f(1), &a.f(0)).add(&a.e(0));
        assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
    }

    #[test]
    fn antipode_generators() {
        let a = alg('A', 1);
        let s = a.antipode(&a.f(0));
        assert_eq!(s, a.mul(&a.f(0), &a.k(a.alpha(0))).scale(&RatFn::int(-1)));
        // S(S(e)) = k⁻¹ e k.
        let ss = a.antipode(&a.antipode(&a.e(0)));
        let expect = a.mul(&a.mul(&a.k(vec![-2]), &a.e(0)), &a.k(vec![2]));
        assert_eq!(ss, expect);
    }

    #[test]
    fn words_enumeration() {
        assert_eq!(words_of_weight(&[2, 1]).len(), 3);
        assert_eq!(words_of_weight(&[0, 0]), vec![Vec::<u8>::new()]);
    }
}
