//! Cartan data, positive roots and the invariant form.

use crate::qscalar::rational::Q;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RootSystemError {
    #[error("invalid Cartan type {0}{1}")]
    InvalidType(char, usize),
    #[error("cannot parse root system label {0:?}")]
    BadLabel(String),
    #[error("rank {rank} exceeds the configured cap {cap} (G2 and F4 are always allowed)")]
    RankCap { rank: usize, cap: usize },
    #[error("matrix is not a finite-type Cartan matrix: {0}")]
    NotFinite(String),
}

/// Default rank cap for algebra computations; lattice-only tables ignore it.
pub const DEFAULT_RANK_CAP: usize = 4;

/// A finite irreducible reduced root system.
///
/// Roots are vectors in simple-root coordinates. The invariant form is
/// normalized so that short roots have squared length 2, which makes
/// `(α_i, α_j) = d_i a_ij` with `a_ij = (α_i∨, α_j)`.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub label: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub sym: Vec<i64>,
    pub d: i64,
    pub positive_roots: Vec<Vec<i64>>,
    pub root_d: Vec<i64>,
    #[serde(skip)]
    gram: Vec<Vec<i64>>,
    #[serde(skip)]
    cartan_inv: Vec<Vec<Q>>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, o: &RootSystem) -> bool {
        self.cartan == o.cartan
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// Symmetric Gram matrix `(α_i, α_j)` of the simple roots, short roots of length² 2.
fn type_gram(t: char, n: usize) -> Result<Vec<Vec<i64>>, RootSystemError> {
    let bad = || RootSystemError::InvalidType(t, n);
    let mut g = vec![vec![0i64; n]; n];
    let chain = |g: &mut Vec<Vec<i64>>, len: &[i64]| {
        for i in 0..len.len() {
            g[i][i] = len[i];
        }
    };
    match t {
        'A' => {
            if n < 1 {
                return Err(bad());
            }
            chain(&mut g, &vec![2; n]);
            for i in 0..n.saturating_sub(1) {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
        }
        'B' | 'C' => {
            if n < 2 {
                return Err(bad());
            }
            // B_n: α_n short; C_n: α_n long.
            let mut len = vec![if t == 'B' { 4 } else { 2 }; n];
            len[n - 1] = if t == 'B' { 2 } else { 4 };
            chain(&mut g, &len);
            for i in 0..n - 1 {
                let v = if i + 1 == n - 1 { -2 } else if t == 'B' { -2 } else { -1 };
                g[i][i + 1] = v;
                g[i + 1][i] = v;
            }
        }
        'D' => {
            if n < 4 {
                return Err(bad());
            }
            chain(&mut g, &vec![2; n]);
            for i in 0..n - 2 {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
            g[n - 3][n - 1] = -1;
            g[n - 1][n - 3] = -1;
        }
        'E' => {
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            chain(&mut g, &vec![2; n]);
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
            let mut edges = vec![(0, 2), (2, 3), (3, 4), (1, 3)];
            for k in 4..n - 1 {
                edges.push((k, k + 1));
            }
            for (a, b) in edges {
                g[a][b] = -1;
                g[b][a] = -1;
            }
        }
        'F' => {
            if n != 4 {
                return Err(bad());
            }
            g = vec![vec![4, -2, 0, 0], vec![-2, 4, -2, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]];
        }
        'G' => {
            if n != 2 {
                return Err(bad());
            }
            g = vec![vec![2, -3], vec![-3, 6]];
        }
        _ => return Err(bad()),
    }
    Ok(g)
}

impl RootSystem {
    /// Builds the root system of type `t` and rank `n` (Bourbaki numbering).
    pub fn new(t: char, n: usize) -> Result<RootSystem, RootSystemError> {
        let t = t.to_ascii_uppercase();
        let g = type_gram(t, n)?;
        let cartan: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| 2 * g[i][j] / g[i][i]).collect()).collect();
        let mut rs = RootSystem::from_cartan(&cartan)?;
        rs.label = format!("{t}{n}");
        Ok(rs)
    }

    /// Like [`RootSystem::new`] but enforces a rank cap; G2 and F4 always pass.
    pub fn new_capped(t: char, n: usize, cap: usize) -> Result<RootSystem, RootSystemError> {
        let t = t.to_ascii_uppercase();
        if n > cap && !matches!((t, n), ('G', 2) | ('F', 4)) {
            return Err(RootSystemError::RankCap { rank: n, cap });
        }
        RootSystem::new(t, n)
    }

    /// Parses labels such as `A2`, `b2`, `G2`.
    pub fn parse(label: &str) -> Result<RootSystem, RootSystemError> {
        let (t, n) = parse_label(label)?;
        RootSystem::new(t, n)
    }

    /// Builds a root system from a Cartan matrix `a_ij = (α_i∨, α_j)` of finite type.
    pub fn from_cartan(a: &[Vec<i64>]) -> Result<RootSystem, RootSystemError> {
        let n = a.len();
        let nf = |m: &str| RootSystemError::NotFinite(m.to_string());
        if n == 0 || a.iter().any(|r| r.len() != n) {
            return Err(nf("not square"));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(nf("diagonal entries must be 2"));
            }
            for j in 0..n {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return Err(nf("off-diagonal sign pattern"));
                }
            }
        }
        // Symmetrizer by propagation along the Dynkin graph: d_i a_ij = d_j a_ji.
        let mut ds: Vec<Option<Q>> = vec![None; n];
        ds[0] = Some(Q::one());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i != j && a[i][j] != 0 {
                    let dj = &(&ds[i].clone().unwrap() * &Q::int(a[i][j])) / &Q::int(a[j][i]);
                    match &ds[j] {
                        None => {
                            ds[j] = Some(dj);
                            queue.push_back(j);
                        }
                        Some(x) if *x != dj => return Err(nf("not symmetrizable")),
                        _ => {}
                    }
                }
            }
        }
        if ds.iter().any(|d| d.is_none()) {
            return Err(nf("Dynkin diagram is disconnected"));
        }
        let ds: Vec<Q> = ds.into_iter().map(|d| d.unwrap()).collect();
        let min = ds.iter().min().unwrap().clone();
        let sym: Vec<i64> = ds
            .iter()
            .map(|d| (d / &min).to_i64().ok_or_else(|| nf("non-integral symmetrizer")))
            .collect::<Result<_, _>>()?;
        let gram: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| sym[i] * a[i][j]).collect()).collect();
        let cartan: Vec<Vec<i64>> = a.to_vec();
        let mut rs = RootSystem {
            label: String::new(),
            rank: n,
            cartan,
            sym: sym.clone(),
            d: *sym.iter().max().unwrap(),
            positive_roots: Vec::new(),
            root_d: Vec::new(),
            gram,
            cartan_inv: Vec::new(),
            index: HashMap::new(),
        };
        rs.positive_roots = rs.close_roots(200)?;
        rs.root_d = rs.positive_roots.iter().map(|r| rs.root_norm2(r) / 2).collect();
        rs.index = rs.positive_roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        rs.cartan_inv = invert(&rs.cartan).ok_or_else(|| nf("singular"))?;
        rs.label = rs.identify();
        Ok(rs)
    }

    fn identify(&self) -> String {
        let n = self.rank;
        for t in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
            if let Ok(g) = type_gram(t, n) {
                let c: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| 2 * g[i][j] / g[i][i]).collect()).collect();
                if c == self.cartan {
                    return format!("{t}{n}");
                }
            }
        }
        format!("X{n}")
    }

    /// Positive roots by closure of the simple roots under simple reflections.
    fn close_roots(&self, limit: usize) -> Result<Vec<Vec<i64>>, RootSystemError> {
        let n = self.rank;
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let s = self.reflect_root(i, &b);
                if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && !seen.contains(&s) {
                    if seen.len() >= limit {
                        return Err(RootSystemError::NotFinite("root closure did not terminate".into()));
                    }
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        let mut v: Vec<Vec<i64>> = seen.into_iter().collect();
        v.sort_by_key(|r| (r.iter().sum::<i64>(), r.iter().map(|x| -x).collect::<Vec<_>>()));
        Ok(v)
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        e
    }
    /// Index of a positive root in `positive_roots`.
    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }
    pub fn is_root(&self, r: &[i64]) -> bool {
        self.root_index(r).is_some() || self.root_index(&r.iter().map(|x| -x).collect::<Vec<_>>()).is_some()
    }

    /// `(β, γ)` for roots (or any elements of Q) in simple-root coordinates.
    pub fn inner_roots(&self, b: &[i64], c: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if b[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += b[i] * self.gram[i][j] * c[j];
            }
        }
        s
    }
    pub fn root_norm2(&self, b: &[i64]) -> i64 {
        self.inner_roots(b, b)
    }
    /// `d_β = (β, β)/2` for a root β.
    pub fn d_of(&self, b: &[i64]) -> i64 {
        self.root_norm2(b) / 2
    }
    /// `(α_i, α_j)`.
    pub fn gram(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    /// `(β, α_i∨)` for β in simple-root coordinates.
    pub fn root_pair_coroot(&self, b: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| b[j] * self.cartan[i][j]).sum()
    }

    /// `s_i(β)` in simple-root coordinates.
    pub fn reflect_root(&self, i: usize, b: &[i64]) -> Vec<i64> {
        let c = self.root_pair_coroot(b, i);
        let mut r = b.to_vec();
        r[i] -= c;
        r
    }

    /// Simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, b: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.root_pair_coroot(b, i)).collect()
    }

    /// Fundamental-weight coordinates to (rational) simple-root coordinates.
    pub fn weight_to_root(&self, l: &[i64]) -> Vec<Q> {
        (0..self.rank)
            .map(|i| (0..self.rank).fold(Q::zero(), |s, j| &s + &(&self.cartan_inv[i][j] * &Q::int(l[j]))))
            .collect()
    }

    /// Integral simple-root coordinates when the weight lies in Q.
    pub fn weight_in_root_lattice(&self, l: &[i64]) -> Option<Vec<i64>> {
        self.weight_to_root(l).iter().map(|x| x.to_i64()).collect()
    }

    /// `(λ, β)` for λ in fundamental-weight and β in simple-root coordinates.
    pub fn pair_weight_root(&self, l: &[i64], b: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.sym[j] * b[j] * l[j]).sum()
    }

    /// `(λ, β∨)` for a root β.
    pub fn pair_weight_coroot(&self, l: &[i64], b: &[i64]) -> i64 {
        let v = self.pair_weight_root(l, b);
        let d = self.d_of(b);
        debug_assert_eq!(v % d, 0);
        v / d
    }

    /// `(λ, μ)` for weights; rational in general.
    pub fn inner_weights(&self, l: &[i64], m: &[i64]) -> Q {
        let c = self.weight_to_root(m);
        (0..self.rank).fold(Q::zero(), |s, j| &s + &(&c[j] * &Q::int(self.sym[j] * l[j])))
    }

    /// `s_i(λ)` in fundamental-weight coordinates.
    pub fn reflect_weight(&self, i: usize, l: &[i64]) -> Vec<i64> {
        let li = l[i];
        (0..self.rank).map(|k| l[k] - li * self.cartan[k][i]).collect()
    }

    /// Applies `s_{w[0]} ⋯ s_{w[k-1]}` to a weight (rightmost letter first).
    pub fn act_weight(&self, word: &[usize], l: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(l.to_vec(), |acc, &i| self.reflect_weight(i, &acc))
    }

    /// Applies `s_{w[0]} ⋯ s_{w[k-1]}` to a root (rightmost letter first).
    pub fn act_root(&self, word: &[usize], b: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(b.to_vec(), |acc, &i| self.reflect_root(i, &acc))
    }

    /// ρ in fundamental-weight coordinates: `(ρ, α_i∨) = 1`.
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// `2ρ̃ = Σ_{α>0} d_α α∨` in simple-root coordinates (equal to `2ρ` under the short-root normalization).
    pub fn two_rho_tilde_roots(&self) -> Vec<i64> {
        let mut s = vec![0i64; self.rank];
        for (r, d) in self.positive_roots.iter().zip(&self.root_d) {
            // d_α α∨ = d_α · 2α/(α,α) = α.
            let _ = d;
            for i in 0..self.rank {
                s[i] += r[i];
            }
        }
        s
    }

    /// `2ρ` in simple-root coordinates, from the defining property `(ρ, α_i∨) = 1`.
    pub fn two_rho_roots(&self) -> Vec<i64> {
        let two_rho: Vec<i64> = self.rho().iter().map(|x| 2 * x).collect();
        self.weight_in_root_lattice(&two_rho).expect("2ρ lies in the root lattice")
    }

    /// Simple coroot coordinates of `β∨` for a root β.
    pub fn coroot_coords(&self, b: &[i64]) -> Vec<i64> {
        let d = self.d_of(b);
        (0..self.rank)
            .map(|j| {
                debug_assert_eq!((b[j] * self.sym[j]) % d, 0);
                b[j] * self.sym[j] / d
            })
            .collect()
    }

    pub fn is_short(&self, b: &[i64]) -> bool {
        self.d_of(b) == 1
    }

    /// Index of the highest root.
    pub fn highest_root(&self) -> Vec<i64> {
        self.positive_roots.last().unwrap().clone()
    }

    pub fn height(b: &[i64]) -> i64 {
        b.iter().sum()
    }
}

pub fn parse_label(label: &str) -> Result<(char, usize), RootSystemError> {
    let s = label.trim();
    let mut chars = s.chars();
    let t = chars.next().ok_or_else(|| RootSystemError::BadLabel(label.into()))?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| RootSystemError::BadLabel(label.into()))?;
    Ok((t, n))
}

/// Inverse of an integer matrix over Q.
pub(crate) fn invert(a: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Q> = r.iter().map(|&x| Q::int(x)).collect();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].inv();
        m[c] = m[c].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(pivot.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (t, n, np) in [('A', 1, 1), ('A', 2, 3), ('A', 3, 6), ('B', 2, 4), ('B', 3, 9), ('C', 3, 9), ('D', 4, 12), ('G', 2, 6), ('F', 4, 24), ('E', 6, 36)] {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.num_positive(), np, "{t}{n}");
        }
    }

    #[test]
    fn symmetrizable() {
        for (t, n) in [('B', 2), ('C', 3), ('G', 2), ('F', 4)] {
            let rs = RootSystem::new(t, n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(rs.sym[i] * rs.cartan[i][j], rs.sym[j] * rs.cartan[j][i]);
                }
            }
        }
    }

    #[test]
    fn rho_tilde_equals_rho() {
        for (t, n) in [('A', 2), ('B', 2), ('G', 2), ('C', 3)] {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.two_rho_tilde_roots(), rs.two_rho_roots());
        }
    }

    #[test]
    fn labels() {
        assert_eq!(RootSystem::parse("b2").unwrap().label, "B2");
        assert!(RootSystem::parse("Z9").is_err());
        assert!(RootSystem::new('D', 3).is_err());
    }
}
