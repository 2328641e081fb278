//! The rescaled root system `{r_α α}` attached to a root of unity.

use super::lattice::{Lattice, LatticeError};
use super::system::{RootSystem, RootSystemError};
use super::weyl::{beta_sequence, ReducedWord, WordError};
use crate::qscalar::RootOfUnityContext;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PrimeError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("rescaled root r_α α of {0:?} is not a root of the rescaled system")]
    RootMismatch(Vec<i64>),
}

/// Whether the rescaled system has the same Cartan matrix as the original or its transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoClass {
    Same,
    Dual,
}

/// `Δ′ = {r_α α}` realized as its own root system with simple roots `r_i α_i`.
///
/// Roots of `Δ′` are stored in their own simple-root coordinates, so `β′ = Σ c′_i α′_i`
/// corresponds to `r_β β = Σ c′_i r_i α_i`. Weights of `Δ′` are `P′`, read in `Δ′`
/// fundamental-weight coordinates via `μ′_i = μ_i / r_i`.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeSystem {
    pub system: RootSystem,
    /// `r_i` for simple roots.
    pub r_simple: Vec<u32>,
    /// `r_β` per positive root of the original system.
    pub r_root: Vec<u32>,
    pub iso: IsoClass,
    /// `prime_of[k]`: index in `system.positive_roots` of `(r_β β)′` for original root `k`.
    pub prime_of: Vec<usize>,
}

impl PrimeSystem {
    pub fn new(rs: &RootSystem, ctx: &RootOfUnityContext) -> Result<PrimeSystem, PrimeError> {
        let n = rs.rank;
        let r_simple = ctx.r_simple(rs);
        let a: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| rs.cartan[i][j] * r_simple[j] as i64 / r_simple[i] as i64).collect())
            .collect();
        // r_j a_ij / r_i must be integral for a Cartan matrix; from_cartan rejects otherwise.
        for i in 0..n {
            for j in 0..n {
                if (rs.cartan[i][j] * r_simple[j] as i64) % r_simple[i] as i64 != 0 {
                    return Err(RootSystemError::NotFinite(format!("rescaled entry ({i},{j}) not integral")).into());
                }
            }
        }
        let system = RootSystem::from_cartan(&a)?;
        let transpose: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| rs.cartan[j][i]).collect()).collect();
        let iso = if system.cartan == rs.cartan { IsoClass::Same } else if system.cartan == transpose { IsoClass::Dual } else { unreachable!("rescaling preserves the type up to duality") };
        let r_root: Vec<u32> = (0..rs.num_positive()).map(|k| ctx.r_alpha(k)).collect();
        let mut prime_of = Vec::new();
        for (k, b) in rs.positive_roots.iter().enumerate() {
            let c = Self::rescale_coords(&r_simple, r_root[k], b).ok_or_else(|| PrimeError::RootMismatch(b.clone()))?;
            prime_of.push(system.root_index(&c).ok_or_else(|| PrimeError::RootMismatch(b.clone()))?);
        }
        Ok(PrimeSystem { system, r_simple, r_root, iso, prime_of })
    }

    /// `Δ′` coordinates of `r_β β`: `c′_i = r_β c_i / r_i`.
    fn rescale_coords(r_simple: &[u32], r_beta: u32, b: &[i64]) -> Option<Vec<i64>> {
        b.iter()
            .zip(r_simple)
            .map(|(&c, &ri)| {
                let v = c * r_beta as i64;
                (v % ri as i64 == 0).then_some(v / ri as i64)
            })
            .collect()
    }

    /// `r_β` for the original root `k`.
    pub fn r_of(&self, k: usize) -> u32 {
        self.r_root[k]
    }

    /// A weight of `P′` (original coordinates) in `Δ′` fundamental-weight coordinates.
    pub fn to_prime_weight(&self, mu: &[i64]) -> Option<Vec<i64>> {
        mu.iter().zip(&self.r_simple).map(|(&m, &r)| (m % r as i64 == 0).then_some(m / r as i64)).collect()
    }
    pub fn from_prime_weight(&self, mu: &[i64]) -> Vec<i64> {
        mu.iter().zip(&self.r_simple).map(|(&m, &r)| m * r as i64).collect()
    }

    /// `P′` as the lattice `⊕ r_i Z ϖ_i` in original coordinates.
    pub fn weight_lattice(&self) -> Lattice {
        let n = self.r_simple.len();
        let gens: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| if i == j { self.r_simple[i] as i128 } else { 0 }).collect()).collect();
        Lattice::from_generators(n, &gens)
    }

    /// Checks that the β-sequence of `word` in `Δ′` is the image of the original one.
    pub fn check_word(&self, rs: &RootSystem, word: &ReducedWord) -> Result<bool, PrimeError> {
        let b = beta_sequence(rs, word)?;
        let bp = beta_sequence(&self.system, word)?;
        Ok(b.iter().zip(&bp).all(|(x, y)| self.prime_of[rs.root_index(x).unwrap()] == self.system.root_index(y).unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::build_context;
    use crate::rootlat::{longest_word, special_lattices};

    fn prime(t: char, n: usize, ell: u32) -> (RootSystem, PrimeSystem, RootOfUnityContext) {
        let rs = RootSystem::new(t, n).unwrap();
        let ctx = build_context(&rs, ell).unwrap();
        let p = PrimeSystem::new(&rs, &ctx).unwrap();
        (rs, p, ctx)
    }

    #[test]
    fn b2_eight_is_dual() {
        let (rs, p, _) = prime('B', 2, 8);
        assert_eq!(p.iso, IsoClass::Dual);
        assert_eq!(p.system.label, "C2");
        assert!(p.check_word(&rs, &longest_word(&rs)).unwrap());
    }

    #[test]
    fn b2_six_is_same() {
        let (_, p, _) = prime('B', 2, 6);
        assert_eq!(p.iso, IsoClass::Same);
    }

    #[test]
    fn weight_lattice_matches_congruences() {
        for (t, n, ell) in [('A', 2, 4), ('B', 2, 6), ('B', 2, 8), ('G', 2, 9), ('C', 3, 12)] {
            let (rs, p, ctx) = prime(t, n, ell);
            let sl = special_lattices(&rs, &ctx);
            assert_eq!(p.weight_lattice(), sl.p_prime, "{t}{n} ell={ell}");
        }
    }
}
