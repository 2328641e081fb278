//! Integer lattices, Hermite and Smith normal forms, finite quotients.

use super::system::{invert, RootSystem};
use crate::qscalar::context::RootOfUnityContext;
use crate::qscalar::rational::Q;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LatticeError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    Dimension(usize, usize),
    #[error("ranks differ ({0} vs {1}); quotient is infinite")]
    Rank(usize, usize),
    #[error("sublattice is not contained in the ambient lattice")]
    NotContained,
}

/// A lattice in `Z^n` given by a row basis in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub dim: usize,
    pub basis: Vec<Vec<i128>>,
}

/// Elementary divisors (those > 1) and the order of a finite abelian quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteQuotient {
    pub divisors: Vec<i128>,
    pub order: i128,
}

impl FiniteQuotient {
    /// True when every elementary divisor divides 2.
    pub fn is_two_elementary(&self) -> bool {
        self.divisors.iter().all(|&d| d == 2)
    }
}

impl Lattice {
    pub fn full(dim: usize) -> Lattice {
        Lattice::scaled(dim, 1)
    }
    /// `k Z^n`.
    pub fn scaled(dim: usize, k: i128) -> Lattice {
        Lattice { dim, basis: (0..dim).map(|i| (0..dim).map(|j| if i == j { k } else { 0 }).collect()).collect() }
    }
    /// The diagonal lattice `⊕ k_i Z`.
    pub fn diagonal(ks: &[i128]) -> Lattice {
        let n = ks.len();
        Lattice { dim: n, basis: (0..n).map(|i| (0..n).map(|j| if i == j { ks[i] } else { 0 }).collect()).collect() }
    }
    /// The lattice generated by arbitrary integer vectors.
    pub fn from_generators(dim: usize, gens: &[Vec<i128>]) -> Lattice {
        Lattice { dim, basis: hnf(gens.to_vec(), dim) }
    }
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
    pub fn scale(&self, k: i128) -> Lattice {
        Lattice::from_generators(self.dim, &self.basis.iter().map(|r| r.iter().map(|x| x * k).collect()).collect::<Vec<_>>())
    }

    /// `{x ∈ L : c·x ≡ 0 (mod m)}`.
    pub fn with_congruence(&self, c: &[i128], m: i128) -> Lattice {
        assert!(m > 0);
        let mut rows = self.basis.clone();
        let val = |r: &Vec<i128>| r.iter().zip(c).map(|(a, b)| a * b).sum::<i128>();
        // Unimodular row operations until only row 0 has a nonzero value.
        loop {
            let vals: Vec<i128> = rows.iter().map(val).collect();
            let nz: Vec<usize> = (0..rows.len()).filter(|&k| vals[k] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&k) = nz.first() {
                    rows.swap(0, k);
                    let g = val(&rows[0]).abs();
                    let f = m / g.gcd(&m);
                    rows[0] = rows[0].iter().map(|x| x * f).collect();
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&k| vals[k].abs()).unwrap();
            for &k in &nz {
                if k != p {
                    let t = vals[k].div_euclid(vals[p]);
                    let rp = rows[p].clone();
                    for (x, y) in rows[k].iter_mut().zip(&rp) {
                        *x -= t * y;
                    }
                }
            }
        }
        Lattice::from_generators(self.dim, &rows)
    }

    /// Integer solution `y` of `y·B = v`, if any.
    pub fn coordinates(&self, v: &[i128]) -> Option<Vec<i128>> {
        if self.rank() == 0 {
            return if v.iter().all(|&x| x == 0) { Some(Vec::new()) } else { None };
        }
        // HNF pivots give a triangular solve.
        let mut rem = v.to_vec();
        let mut y = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let p = row.iter().position(|&x| x != 0).unwrap();
            if rem[p] % row[p] != 0 {
                return None;
            }
            let t = rem[p] / row[p];
            for (a, b) in rem.iter_mut().zip(row) {
                *a -= t * b;
            }
            y.push(t);
        }
        if rem.iter().all(|&x| x == 0) {
            Some(y)
        } else {
            None
        }
    }
    pub fn contains(&self, v: &[i128]) -> bool {
        self.coordinates(v).is_some()
    }
    pub fn contains_lattice(&self, o: &Lattice) -> bool {
        o.basis.iter().all(|r| self.contains(r))
    }
}

/// Row-style Hermite normal form; zero rows dropped.
pub fn hnf(mut rows: Vec<Vec<i128>>, dim: usize) -> Vec<Vec<i128>> {
    let mut out: Vec<Vec<i128>> = Vec::new();
    let mut col = 0;
    while col < dim && !rows.is_empty() {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&k| rows[k][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&k| rows[k][col].abs()).unwrap();
            for &k in &nz {
                if k != p {
                    let t = rows[k][col].div_euclid(rows[p][col]);
                    let rp = rows[p].clone();
                    for (x, y) in rows[k].iter_mut().zip(&rp) {
                        *x -= t * y;
                    }
                }
            }
        }
        if let Some(k) = rows.iter().position(|r| r[col] != 0) {
            let mut r = rows.remove(k);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            // Reduce earlier pivot rows above this pivot.
            for prev in out.iter_mut() {
                let t = prev[col].div_euclid(r[col]);
                if t != 0 {
                    for (x, y) in prev.iter_mut().zip(&r) {
                        *x -= t * y;
                    }
                }
            }
            out.push(r);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
        col += 1;
    }
    out
}

/// Smith normal form diagonal of an integer matrix (absolute values, including 1s and 0s).
pub fn smith_diagonal(m: &[Vec<i128>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero entry in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let mut done = false;
        while !done {
            done = true;
            for i in t + 1..rows {
                let f = a[i][t].div_euclid(a[t][t]);
                if f != 0 {
                    let rt = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&rt) {
                        *x -= f * y;
                    }
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                let f = a[t][j].div_euclid(a[t][t]);
                if f != 0 {
                    for r in a.iter_mut() {
                        let v = r[t];
                        r[j] -= f * v;
                    }
                }
                if a[t][j] != 0 {
                    for r in a.iter_mut() {
                        r.swap(t, j);
                    }
                    done = false;
                }
            }
            if done {
                // Divisibility: fold any entry not divisible by the pivot into row t.
                let p = a[t][t];
                if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
                    let ri = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&ri) {
                        *x += y;
                    }
                    done = false;
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// `big / small` for lattices of equal rank in the same ambient space.
pub fn quotient(big: &Lattice, small: &Lattice) -> Result<FiniteQuotient, LatticeError> {
    if big.dim != small.dim {
        return Err(LatticeError::Dimension(big.dim, small.dim));
    }
    if big.rank() != small.rank() {
        return Err(LatticeError::Rank(big.rank(), small.rank()));
    }
    if big.rank() == 0 {
        return Ok(FiniteQuotient { divisors: Vec::new(), order: 1 });
    }
    let x: Vec<Vec<i128>> = small.basis.iter().map(|r| big.coordinates(r).ok_or(LatticeError::NotContained)).collect::<Result<_, _>>()?;
    let d = smith_diagonal(&x);
    if d.len() < big.rank() || d.contains(&0) {
        return Err(LatticeError::Rank(big.rank(), d.iter().filter(|&&v| v != 0).count()));
    }
    let order = d.iter().product();
    Ok(FiniteQuotient { divisors: d.into_iter().filter(|&v| v > 1).collect(), order })
}

/// The lattices attached to a root system and a root of unity.
///
/// Weight-type lattices are in fundamental-weight coordinates; coroot-type
/// lattices are in simple-coroot coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialLattices {
    pub p: Lattice,
    pub p0: Lattice,
    pub p_prime: Lattice,
    /// `2P′₀` (only meaningful in the `ℓ = 2r`, r odd, d = 2 case).
    pub two_p_prime0: Lattice,
    pub p_double: Lattice,
    pub q_vee: Lattice,
    pub q1_vee: Lattice,
    pub two_q_vee: Lattice,
    pub g_group: FiniteQuotient,
    pub h_group: FiniteQuotient,
    /// Indices (into the positive roots) of Δ₁⁺.
    pub delta1: Vec<usize>,
}

fn coroot128(rs: &RootSystem, b: &[i64]) -> Vec<i128> {
    rs.coroot_coords(b).into_iter().map(i128::from).collect()
}

/// `P₀`, `P′`, `2P′₀`, `P″`, `Q∨`, `Q₁∨`, `2Q∨`, `𝒢 = P/P₀`, `ℋ = Q∨/2Q∨`.
pub fn special_lattices(rs: &RootSystem, ctx: &RootOfUnityContext) -> SpecialLattices {
    let n = rs.rank;
    let p = Lattice::full(n);
    let mut p0 = p.clone();
    for i in 0..n {
        let mut c = vec![0i128; n];
        c[i] = rs.sym[i] as i128;
        p0 = p0.with_congruence(&c, 2);
    }
    let mut p_prime = p.clone();
    for (k, b) in rs.positive_roots.iter().enumerate() {
        p_prime = p_prime.with_congruence(&coroot128(rs, b), ctx.r_alpha(k) as i128);
    }
    let r = ctx.r as i128;
    let mut two_p_prime0 = p.clone();
    for b in &rs.positive_roots {
        let d = rs.d_of(b) as i128;
        let c: Vec<i128> = coroot128(rs, b).into_iter().map(|x| x * d).collect();
        two_p_prime0 = two_p_prime0.with_congruence(&c, 2 * r);
    }
    let delta1 = if ctx.ell % 2 == 1 { Vec::new() } else { ctx.delta1() };
    // P″ from the membership condition (μ, γ∨)/r_γ ∈ 2Z on Δ₁⁺; equals P′ when ℓ is odd.
    let mut p_double = p_prime.clone();
    for &k in &delta1 {
        p_double = p_double.with_congruence(&coroot128(rs, &rs.positive_roots[k]), 2 * ctx.r_alpha(k) as i128);
    }
    let q_vee = Lattice::full(n);
    let q1_vee = Lattice::from_generators(n, &delta1.iter().map(|&k| coroot128(rs, &rs.positive_roots[k])).collect::<Vec<_>>());
    let two_q_vee = Lattice::scaled(n, 2);
    let g_group = quotient(&p, &p0).expect("P0 has full rank");
    let h_group = quotient(&q_vee, &two_q_vee).expect("2Q∨ has full rank");
    SpecialLattices { p, p0, p_prime, two_p_prime0, p_double, q_vee, q1_vee, two_q_vee, g_group, h_group, delta1 }
}

impl SpecialLattices {
    /// `Q₁∨ ∩ 2Q∨`.
    pub fn q1_cap_two_q(&self) -> Lattice {
        let n = self.q1_vee.dim;
        let mut l = self.q1_vee.clone();
        for i in 0..n {
            let mut c = vec![0i128; n];
            c[i] = 1;
            l = l.with_congruence(&c, 2);
        }
        l
    }
}

/// Inverse of an integer matrix over Q, re-exported for lattice callers.
pub fn rational_inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    invert(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::context::build_context;

    #[test]
    fn snf_basic() {
        assert_eq!(smith_diagonal(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn trivial_quotient() {
        let p = Lattice::full(3);
        assert_eq!(quotient(&p, &p).unwrap().order, 1);
        assert!(quotient(&Lattice::scaled(2, 2), &Lattice::full(2)).is_err());
        assert!(quotient(&Lattice::full(2), &Lattice::from_generators(2, &[vec![1, 0]])).is_err());
    }

    #[test]
    fn congruence() {
        let l = Lattice::full(2).with_congruence(&[1, 1], 4);
        assert_eq!(quotient(&Lattice::full(2), &l).unwrap().order, 4);
        assert!(l.contains(&[1, 3]));
        assert!(!l.contains(&[1, 2]));
    }

    #[test]
    fn a1_five_and_a2_four() {
        let rs = RootSystem::new('A', 1).unwrap();
        let sl = special_lattices(&rs, &build_context(&rs, 5).unwrap());
        assert_eq!(quotient(&sl.p, &sl.p_prime).unwrap().order, 5);
        let rs = RootSystem::new('A', 2).unwrap();
        let sl = special_lattices(&rs, &build_context(&rs, 4).unwrap());
        assert_eq!(quotient(&sl.p, &sl.p_prime).unwrap().order, 4);
        assert_eq!(sl.p_double, sl.p_prime.scale(2));
        assert_eq!(sl.delta1.len(), 3);
    }

    #[test]
    fn b2_six() {
        let rs = RootSystem::new('B', 2).unwrap();
        let ctx = build_context(&rs, 6).unwrap();
        let sl = special_lattices(&rs, &ctx);
        assert_eq!(sl.p_double, sl.two_p_prime0);
        assert!(sl.delta1.iter().all(|&k| rs.root_d[k] == 1));
        assert!(sl.g_group.is_two_elementary());
    }
}
