//! The Drinfeld pairing between the positive and negative Borel halves.

use super::words::{Word, WordAlgebra, WordPoly, Wt};
use crate::qscalar::{q_minus_qinv, RatFn};
use std::collections::HashMap;

impl WordAlgebra {
    /// `Π (q_{w_k} - q_{w_k}⁻¹)` over the letters of a weight.
    fn letter_denominator(&self, wt: &[i64]) -> RatFn {
        let mut d = RatFn::one();
        for (i, &c) in wt.iter().enumerate() {
            if c > 0 {
                d = d.mul(&RatFn::from_laurent(q_minus_qinv(self.di(i)).pow(c as u32)));
            }
        }
        d
    }

    /// `∂_j(Σ c_u e_u) = Σ c_u Σ_{u_p = j} q^{(α_j, wt(u_{>p}))} e_{u∖p}`.
    pub fn derive_right(&self, x: &WordPoly, j: usize) -> WordPoly {
        let aj = self.alpha(j);
        let mut r = WordPoly::zero();
        for (u, c) in &x.terms {
            for p in 0..u.len() {
                if u[p] as usize == j {
                    let s = self.pair_word(&aj, &u[p + 1..]);
                    let mut w = u[..p].to_vec();
                    w.extend_from_slice(&u[p + 1..]);
                    r.add_term(w, c.mul(&RatFn::q_pow(s)));
                }
            }
        }
        r
    }

    /// `τ(x, y)` for `x ∈ U⁺` and `y ∈ U⁻`, peeling the last letter of each f-word.
    pub fn pair(&self, x: &WordPoly, y: &WordPoly) -> RatFn {
        let Some(wt) = y.weight(self.rank()) else { return RatFn::zero() };
        if x.weight(self.rank()).as_ref() != Some(&wt) {
            // Inhomogeneous inputs fall back to term-by-term pairing.
            if x.terms.keys().chain(y.terms.keys()).any(|w| super::words::word_weight(w, self.rank()) != wt) {
                return self.pair_split(x, y);
            }
            return RatFn::zero();
        }
        let t = self.pair_raw(x, y);
        // Each peeled letter contributes τ(e_j, f_j) = -1/(q_j - q_j⁻¹); the signs are in pair_raw.
        t.div(&self.letter_denominator(&wt))
    }

    fn pair_split(&self, x: &WordPoly, y: &WordPoly) -> RatFn {
        let group = |p: &WordPoly| {
            let mut m: HashMap<Vec<i64>, WordPoly> = HashMap::new();
            for (w, c) in &p.terms {
                m.entry(super::words::word_weight(w, self.rank())).or_default().add_term(w.clone(), c.clone());
            }
            m
        };
        let gx = group(x);
        let gy = group(y);
        let mut s = RatFn::zero();
        for (wt, px) in &gx {
            if let Some(py) = gy.get(wt) {
                s = s.add(&self.pair(px, py));
            }
        }
        s
    }

    /// Numerator of the pairing: the recursion without the letter denominators.
    fn pair_raw(&self, x: &WordPoly, y: &WordPoly) -> RatFn {
        if x.is_zero() || y.is_zero() {
            return RatFn::zero();
        }
        let mut groups: HashMap<u8, WordPoly> = HashMap::new();
        let mut constant = RatFn::zero();
        for (w, c) in &y.terms {
            match w.split_last() {
                None => constant = constant.add(c),
                Some((&j, rest)) => groups.entry(j).or_default().add_term(rest.to_vec(), c.clone()),
            }
        }
        let mut s = RatFn::zero();
        if !constant.is_zero() {
            if let Some(c0) = x.terms.get(&Vec::new()) {
                s = s.add(&c0.mul(&constant));
            }
        }
        let mut keys: Vec<u8> = groups.keys().copied().collect();
        keys.sort();
        for j in keys {
            let dx = self.derive_right(x, j as usize);
            s = s.sub(&self.pair_raw(&dx, &groups[&j]));
        }
        s
    }

    /// `τ(e_u, f_w)` computed by the other axiom: peel the first e-letter through `Δ(f_w)`.
    pub fn pair_words_left(&self, u: &[u8], w: &[u8]) -> RatFn {
        if u.len() != w.len() {
            return RatFn::zero();
        }
        if u.is_empty() {
            return RatFn::one();
        }
        let j = u[0] as usize;
        let aj = self.alpha(j);
        let tj = RatFn::int(-1).div(&RatFn::from_laurent(q_minus_qinv(self.di(j))));
        let mut s = RatFn::zero();
        for p in 0..w.len() {
            if w[p] as usize == j {
                let e = self.pair_word(&aj, &w[..p]);
                let mut rest = w[..p].to_vec();
                rest.extend_from_slice(&w[p + 1..]);
                let v = self.pair_words_left(&u[1..], &rest);
                if !v.is_zero() {
                    s = s.add(&v.mul(&RatFn::q_pow(e)).mul(&tj));
                }
            }
        }
        s
    }

    /// Pairing of two word polynomials via [`WordAlgebra::pair_words_left`].
    pub fn pair_left(&self, x: &WordPoly, y: &WordPoly) -> RatFn {
        let mut s = RatFn::zero();
        for (u, a) in &x.terms {
            for (w, b) in &y.terms {
                let v = self.pair_words_left(u, w);
                if !v.is_zero() {
                    s = s.add(&v.mul(a).mul(b));
                }
            }
        }
        s
    }

    /// `τ(k_λ, k_μ) = q^{-(λ, μ)}` for `λ, μ ∈ Q` (fundamental-weight coordinates).
    pub fn pair_cartan(&self, l: &Wt, m: &Wt) -> Option<RatFn> {
        let lr = self.rs.weight_in_root_lattice(l)?;
        self.rs.weight_in_root_lattice(m)?;
        Some(RatFn::q_pow(-self.rs.pair_weight_root(m, &lr)))
    }

    /// `τ(e_u k_λ, f_w k_μ) = τ(e_u, f_w) τ(k_λ, k_μ)` on the adjoint Borel halves.
    pub fn pair_borel(&self, x: &[(Word, Wt, RatFn)], y: &[(Word, Wt, RatFn)]) -> Option<RatFn> {
        let mut s = RatFn::zero();
        for (u, l, a) in x {
            for (w, m, b) in y {
                let kk = self.pair_cartan(l, m)?;
                let e = self.pair(&WordPoly::from_word(u.clone(), a.clone()), &WordPoly::from_word(w.clone(), b.clone()));
                s = s.add(&e.mul(&kk));
            }
        }
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlat::RootSystem;

    #[test]
    fn generator_values() {
        let a = WordAlgebra::new(RootSystem::new('B', 2).unwrap());
        let one = WordPoly::one();
        assert!(a.pair(&one, &one).is_one());
        for i in 0..2 {
            for j in 0..2 {
                let v = a.pair(&WordPoly::letter(i), &WordPoly::letter(j));
                if i == j {
                    let qi = a.di(i);
                    let expect = RatFn::one().div(&RatFn::q_pow(-qi).sub(&RatFn::q_pow(qi)));
                    assert_eq!(v, expect);
                } else {
                    assert!(v.is_zero());
                }
                let kk = a.pair_cartan(&a.alpha(i), &a.alpha(j)).unwrap();
                assert_eq!(kk, RatFn::q_pow(-a.rs.gram(i, j)));
            }
        }
    }

    #[test]
    fn two_recursions_agree() {
        let a = WordAlgebra::new(RootSystem::new('A', 2).unwrap());
        for u in super::super::words::words_of_weight(&[2, 1]) {
            for w in super::super::words::words_of_weight(&[2, 1]) {
                let x = WordPoly::from_word(u.clone(), RatFn::one());
                let y = WordPoly::from_word(w.clone(), RatFn::one());
                assert_eq!(a.pair(&x, &y), a.pair_left(&x, &y), "{u:?} {w:?}");
            }
        }
    }
}
