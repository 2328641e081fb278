//! Reduced words, the convex order on positive roots, and Weyl orbits.

use super::system::RootSystem;
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum WordError {
    #[error("letter {0} out of range")]
    BadLetter(usize),
    #[error("word of length {len} is not a reduced expression of the longest element (need {need} distinct positive roots)")]
    NotLongest { len: usize, need: usize },
}

/// Reduced expression `(i_1, …, i_N)` of the longest Weyl element, 0-based letters.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// 1-based rendering, e.g. `1,2,1`.
    pub fn display(&self) -> String {
        self.0.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    }
    /// Parses a 1-based comma-separated word and validates it against `rs`.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<ReducedWord, WordError> {
        let mut v = Vec::new();
        for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = t.parse().map_err(|_| WordError::BadLetter(0))?;
            if i == 0 || i > rs.rank {
                return Err(WordError::BadLetter(i));
            }
            v.push(i - 1);
        }
        let w = ReducedWord(v);
        beta_sequence(rs, &w)?;
        Ok(w)
    }
}

/// Greedy construction: repeatedly append the smallest `i` with `w(α_i) > 0`.
pub fn longest_word(rs: &RootSystem) -> ReducedWord {
    let mut word: Vec<usize> = Vec::new();
    while word.len() < rs.num_positive() {
        let i = (0..rs.rank)
            .find(|&i| rs.act_root(&word, &rs.simple_root(i)).iter().all(|&x| x >= 0))
            .expect("some simple root stays positive below the longest element");
        word.push(i);
    }
    ReducedWord(word)
}

/// `β_j = s_{i_1} ⋯ s_{i_{j-1}}(α_{i_j})`; errors unless this enumerates Δ⁺ exactly once.
pub fn beta_sequence(rs: &RootSystem, w: &ReducedWord) -> Result<Vec<Vec<i64>>, WordError> {
    let n = rs.num_positive();
    let bad = || WordError::NotLongest { len: w.len(), need: n };
    if w.len() != n {
        return Err(bad());
    }
    if let Some(&i) = w.0.iter().find(|&&i| i >= rs.rank) {
        return Err(WordError::BadLetter(i + 1));
    }
    let mut out = Vec::with_capacity(n);
    let mut seen = BTreeSet::new();
    for j in 0..n {
        let b = rs.act_root(&w.0[..j], &rs.simple_root(w.0[j]));
        if rs.root_index(&b).is_none() || !seen.insert(b.clone()) {
            return Err(bad());
        }
        out.push(b);
    }
    Ok(out)
}

/// `(ρ, 2ρ̃)` data: ρ in fundamental-weight coordinates and `2ρ̃` in simple-root coordinates.
pub fn rho_vectors(rs: &RootSystem) -> (Vec<i64>, Vec<i64>) {
    (rs.rho(), rs.two_rho_tilde_roots())
}

/// The W-orbit of a weight (fundamental-weight coordinates), sorted.
pub fn weight_orbit(rs: &RootSystem, l: &[i64]) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    seen.insert(l.to_vec());
    let mut q = VecDeque::from([l.to_vec()]);
    while let Some(x) = q.pop_front() {
        for i in 0..rs.rank {
            let y = rs.reflect_weight(i, &x);
            if seen.insert(y.clone()) {
                q.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Dominant representative of the orbit of `l`, with a word `w` such that `w(dominant) = l`.
pub fn dominant_of(rs: &RootSystem, l: &[i64]) -> (Vec<i64>, Vec<usize>) {
    let mut x = l.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..rs.rank).find(|&i| x[i] < 0) {
        x = rs.reflect_weight(i, &x);
        word.push(i);
    }
    (x, word)
}

/// Every element of W as a reduced word, by breadth-first search on `w(ρ)`.
pub fn weyl_elements(rs: &RootSystem) -> Vec<Vec<usize>> {
    let rho = rs.rho();
    let mut seen = BTreeSet::new();
    seen.insert(rho.clone());
    let mut out = vec![Vec::new()];
    let mut q = VecDeque::from([(rho, Vec::<usize>::new())]);
    while let Some((x, w)) = q.pop_front() {
        for i in 0..rs.rank {
            let y = rs.reflect_weight(i, &x);
            if seen.insert(y.clone()) {
                let mut w2 = vec![i];
                w2.extend(&w);
                out.push(w2.clone());
                q.push_back((y, w2));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_betas() {
        let rs = RootSystem::new('A', 2).unwrap();
        let w = longest_word(&rs);
        assert_eq!(w.0, vec![0, 1, 0]);
        assert_eq!(beta_sequence(&rs, &w).unwrap(), vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn b2_word() {
        let rs = RootSystem::new('B', 2).unwrap();
        let w = longest_word(&rs);
        assert_eq!(w.display(), "1,2,1,2");
        let b = beta_sequence(&rs, &w).unwrap();
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn bad_words() {
        let rs = RootSystem::new('A', 2).unwrap();
        assert!(ReducedWord::parse(&rs, "1,1,2").is_err());
        assert!(ReducedWord::parse(&rs, "2,1,2").is_ok());
        assert!(ReducedWord::parse(&rs, "1,3,1").is_err());
    }

    #[test]
    fn weyl_orders() {
        for (t, n, o) in [('A', 1, 2), ('A', 2, 6), ('B', 2, 8), ('G', 2, 12), ('A', 3, 24)] {
            assert_eq!(weyl_elements(&RootSystem::new(t, n).unwrap()).len(), o);
        }
    }
}
