//! Structure constants of the rescaled PBW basis, computed once per root system.

use super::braid::BraidDir;
use super::pbw::{Exps, Pbw, PbwKey};
use super::words::WordTri;
use crate::qscalar::RatFn;
use std::collections::HashMap;

/// A one-sided PBW expansion, sorted by exponent vector.
pub type Expansion = Vec<(Exps, RatFn)>;
/// A triangular `b^N k_λ a^M` expansion, sorted by key.
pub type TriExpansion = Vec<(PbwKey, RatFn)>;

/// Generic (`Q(q)`) straightening data for the rescaled root vectors `a_β`, `b_β`.
#[derive(Clone, Debug)]
pub struct Tables {
    /// `a_{β_k} a_{β_j}` for `k < j`.
    pub e_pair: HashMap<(usize, usize), Expansion>,
    /// `b_{β_k} b_{β_j}` for `k < j`.
    pub f_pair: HashMap<(usize, usize), Expansion>,
    /// `a_{β_k} b_{β_l}` for all `k, l`.
    pub cross: HashMap<(usize, usize), TriExpansion>,
    pub antipode_a: Vec<TriExpansion>,
    pub antipode_b: Vec<TriExpansion>,
    pub sigma_a: Vec<TriExpansion>,
    pub sigma_b: Vec<TriExpansion>,
    /// `[dir][i][k]`: `T_i^{±1}(a_{β_k})`.
    pub braid_a: [Vec<Vec<TriExpansion>>; 2],
    pub braid_b: [Vec<Vec<TriExpansion>>; 2],
}

fn sorted_exp(m: HashMap<Exps, RatFn>) -> Expansion {
    let mut v: Expansion = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

fn sorted_tri(m: HashMap<PbwKey, RatFn>) -> TriExpansion {
    let mut v: TriExpansion = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

impl Tables {
    pub fn build(p: &Pbw) -> Tables {
        let n = p.n_roots();
        let rank = p.rank();
        let a: Vec<WordTri> = (0..n).map(|k| WordTri::from_e(&p.a_root(k), rank)).collect();
        let b: Vec<WordTri> = (0..n).map(|k| WordTri::from_f(&p.b_root(k), rank)).collect();
        let mut e_pair = HashMap::new();
        let mut f_pair = HashMap::new();
        let mut cross = HashMap::new();
        for k in 0..n {
            for j in k + 1..n {
                e_pair.insert((k, j), sorted_exp(p.expand_plus(&p.a_root(k).mul(&p.a_root(j)))));
                f_pair.insert((k, j), sorted_exp(p.expand_minus(&p.b_root(k).mul(&p.b_root(j)))));
            }
            for l in 0..n {
                cross.insert((k, l), sorted_tri(p.tri_from_words(&p.alg.mul(&a[k], &b[l]))));
            }
        }
        let conv = |t: &WordTri| sorted_tri(p.tri_from_words(t));
        let antipode_a = a.iter().map(|x| conv(&p.alg.antipode(x))).collect();
        let antipode_b = b.iter().map(|x| conv(&p.alg.antipode(x))).collect();
        let sigma_a = a.iter().map(|x| conv(&p.alg.sigma(x))).collect();
        let sigma_b = b.iter().map(|x| conv(&p.alg.sigma(x))).collect();
        let braid_side = |src: &[WordTri], dir: BraidDir| -> Vec<Vec<TriExpansion>> {
            (0..rank).map(|i| src.iter().map(|x| conv(&p.alg.braid(i, x, dir))).collect()).collect()
        };
        let braid_a = [braid_side(&a, BraidDir::Forward), braid_side(&a, BraidDir::Inverse)];
        let braid_b = [braid_side(&b, BraidDir::Forward), braid_side(&b, BraidDir::Inverse)];
        Tables { e_pair, f_pair, cross, antipode_a, antipode_b, sigma_a, sigma_b, braid_a, braid_b }
    }

    /// Every coefficient with the name of its table, for integrality inspection.
    pub fn all_coefficients(&self) -> Vec<(&'static str, &RatFn)> {
        let mut all: Vec<(&'static str, &RatFn)> = Vec::new();
        for v in self.e_pair.values() {
            all.extend(v.iter().map(|(_, c)| ("e-pair", c)));
        }
        for v in self.f_pair.values() {
            all.extend(v.iter().map(|(_, c)| ("f-pair", c)));
        }
        for v in self.cross.values() {
            all.extend(v.iter().map(|(_, c)| ("cross", c)));
        }
        let lists: [(&'static str, &Vec<TriExpansion>); 4] = [("antipode", &self.antipode_a), ("antipode", &self.antipode_b), ("sigma", &self.sigma_a), ("sigma", &self.sigma_b)];
        for (name, l) in lists {
            for v in l {
                all.extend(v.iter().map(|(_, c)| (name, c)));
            }
        }
        for d in 0..2 {
            for per_i in self.braid_a[d].iter().chain(&self.braid_b[d]) {
                for v in per_i {
                    all.extend(v.iter().map(|(_, c)| ("braid", c)));
                }
            }
        }
        all
    }
}
