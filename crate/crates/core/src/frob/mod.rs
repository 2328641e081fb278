//! The Frobenius layer: the rescaled system `Δ′`, the maps `ξ` and `ᵗξ`,
//! membership in the Frobenius center, the groups `Γ₁`, `Γ₂`, and the
//! lattice counting behind the degree of `U_ζ`.

pub mod txi;
pub mod zfr;

pub use txi::{asb_expand, frob_xi, txi_constant, txi_cases, FrobPair};
pub use zfr::{coset_representatives, verify_frob, xi_cases, zfr_crosscheck, zfr_membership, FrobMonomial, Gamma1Model};

use crate::qscalar::{build_context, ContextError, RootOfUnityContext};
use crate::report::{Case, Report};
use crate::rootlat::{quotient, special_lattices, FiniteQuotient, Lattice, LatticeError, PrimeError, PrimeSystem, RootSystem, SpecialLattices};
use crate::uzeta::UzetaError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FrobError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Uzeta(#[from] UzetaError),
    #[error("weight {0:?} is not in P′")]
    NotInPPrime(Vec<i64>),
    #[error("reduced word does not induce matching root orders on the rescaled system")]
    WordMismatch,
}

/// Which row of the `Γ₂` table applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gamma2Kind {
    /// `ℓ` odd.
    Trivial,
    /// `ℓ` even, `r` odd, `d = 2`: short coroots of `Δ′` modulo twice themselves.
    ShortCoroots,
    /// `ℋ(Δ′)`.
    Full,
}

/// `Δ′` with its lattices and the finite groups acting on `U_ε(Δ′)`.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeRootData {
    pub rs: RootSystem,
    pub ctx: RootOfUnityContext,
    pub prime: PrimeSystem,
    pub lattices: SpecialLattices,
    /// `|P/P′|`.
    pub p_index: i128,
    pub gamma1: FiniteQuotient,
    pub gamma2: FiniteQuotient,
    pub gamma2_kind: Gamma2Kind,
    /// Coroots of `Δ′` (its simple-coroot coordinates) generating `Γ₂`.
    pub gamma2_generators: Vec<Vec<i64>>,
    pub m: u64,
}

fn unit(n: usize, i: usize, k: i128) -> Vec<i128> {
    (0..n).map(|j| if i == j { k } else { 0 }).collect()
}

/// `|Π ∩ Δ_short|` when `d = 2`, else `|Π|`, per the case table.
pub fn m_from_table(rs: &RootSystem, ell: u32) -> u64 {
    let r = if ell % 2 == 1 { ell } else { ell / 2 };
    if ell % 2 == 1 {
        1
    } else if r % 2 == 1 && rs.d == 2 {
        1 << (0..rs.rank).filter(|&i| rs.sym[i] == 1).count()
    } else {
        1 << rs.rank
    }
}

impl PrimeRootData {
    pub fn new(rs: &RootSystem, ell: u32) -> Result<PrimeRootData, FrobError> {
        let ctx = build_context(rs, ell)?;
        let prime = PrimeSystem::new(rs, &ctx)?;
        let lattices = special_lattices(rs, &ctx);
        let p_index = quotient(&lattices.p, &lattices.p_prime)?.order;
        let sys = &prime.system;
        let n = rs.rank;
        let trivial = FiniteQuotient { divisors: Vec::new(), order: 1 };
        let gamma1 = if ell % 2 == 1 {
            trivial.clone()
        } else {
            let mut p0 = Lattice::full(n);
            for i in 0..n {
                p0 = p0.with_congruence(&unit(n, i, sys.sym[i] as i128), 2);
            }
            quotient(&Lattice::full(n), &p0)?
        };
        let short_case = ell % 2 == 0 && ctx.r % 2 == 1 && rs.d == 2;
        let (gamma2_kind, gamma2_generators) = if ell % 2 == 1 {
            (Gamma2Kind::Trivial, Vec::new())
        } else if short_case {
            let gens: Vec<Vec<i64>> = sys.positive_roots.iter().filter(|b| sys.is_short(b)).map(|b| sys.coroot_coords(b)).collect();
            (Gamma2Kind::ShortCoroots, gens)
        } else {
            (Gamma2Kind::Full, (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
        };
        let gamma2 = match gamma2_kind {
            Gamma2Kind::Trivial => trivial,
            _ => {
                let g: Vec<Vec<i128>> = gamma2_generators.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
                let l = Lattice::from_generators(n, &g);
                quotient(&l, &l.scale(2))?
            }
        };
        let m = m_from_table(rs, ell);
        Ok(PrimeRootData { rs: rs.clone(), ctx, prime, lattices, p_index, gamma1, gamma2, gamma2_kind, gamma2_generators, m })
    }

    pub fn ell(&self) -> u32 {
        self.ctx.ell
    }

    /// `μ ∈ P′` (original fundamental-weight coordinates).
    pub fn in_p_prime(&self, mu: &[i64]) -> bool {
        self.lattices.p_prime.contains(&mu.iter().map(|&x| x as i128).collect::<Vec<_>>())
    }

    /// `μ ∈ P″`.
    pub fn in_p_double(&self, mu: &[i64]) -> bool {
        self.lattices.p_double.contains(&mu.iter().map(|&x| x as i128).collect::<Vec<_>>())
    }

    /// `P″` as displayed in the case table: `2P′₀` in the short case, `2P′` otherwise.
    pub fn p_double_from_table(&self) -> Lattice {
        let l = &self.lattices;
        if self.ell() % 2 == 1 {
            l.p_prime.clone()
        } else if self.gamma2_kind == Gamma2Kind::ShortCoroots {
            l.two_p_prime0.clone()
        } else {
            l.p_prime.scale(2)
        }
    }

    /// `Π r_α` over positive roots.
    pub fn r_product(&self) -> u128 {
        self.prime.r_root.iter().map(|&r| r as u128).product()
    }
}

/// One row of the counting table.
#[derive(Clone, Debug, Serialize)]
pub struct CountingRow {
    #[serde(rename = "type")]
    pub type_label: String,
    pub ell: u32,
    pub r: u32,
    pub epsilon: i64,
    pub m: u64,
    pub p_over_p_prime: i128,
    pub p_prime_over_p_double: i128,
    pub q1_over_q1_cap_2q: i128,
    pub m_squared: u128,
    pub identity: bool,
    pub gamma_order: i128,
    pub degree: u128,
    /// Rank of `U_ζ` over `Z_Fr`: `(m Π r_α)² |P/P′|`.
    /// Decimal; overflows machine integers for large `ℓ`.
    pub rank_over_zfr: String,
    pub p_double_matches_table: bool,
    pub skipped: Option<String>,
}

/// The counting row for one `(type, ℓ)`; rows with `r ≤ d` are marked skipped.
pub fn counting_row(rs: &RootSystem, ell: u32) -> Result<CountingRow, FrobError> {
    let data = match PrimeRootData::new(rs, ell) {
        Ok(d) => d,
        Err(FrobError::Context(e @ ContextError::SmallOrder { .. })) => {
            let r = if ell % 2 == 1 { ell } else { ell / 2 };
            return Ok(CountingRow {
                type_label: rs.label.clone(),
                ell,
                r,
                epsilon: 0,
                m: 0,
                p_over_p_prime: 0,
                p_prime_over_p_double: 0,
                q1_over_q1_cap_2q: 0,
                m_squared: 0,
                identity: false,
                gamma_order: 0,
                degree: 0,
                rank_over_zfr: String::new(),
                p_double_matches_table: false,
                skipped: Some(e.to_string()),
            });
        }
        Err(e) => return Err(e),
    };
    let l = &data.lattices;
    let pp = quotient(&l.p_prime, &l.p_double)?.order;
    let q1 = if l.delta1.is_empty() { 1 } else { quotient(&l.q1_vee, &l.q1_cap_two_q())?.order };
    let m = data.m;
    let m2 = (m as u128) * (m as u128);
    let degree = m as u128 * data.r_product();
    Ok(CountingRow {
        type_label: rs.label.clone(),
        ell,
        r: data.ctx.r,
        epsilon: data.ctx.epsilon,
        m,
        p_over_p_prime: data.p_index,
        p_prime_over_p_double: pp,
        q1_over_q1_cap_2q: q1,
        m_squared: m2,
        identity: m2 == (pp * q1) as u128,
        gamma_order: data.gamma1.order * data.gamma2.order,
        degree,
        rank_over_zfr: (num_bigint::BigUint::from(degree).pow(2) * data.p_index as u128).to_string(),
        p_double_matches_table: data.p_double_from_table() == l.p_double,
        skipped: None,
    })
}

/// Every `(type, ℓ)` row.
pub fn counting_identities(types: &[RootSystem], ells: impl IntoIterator<Item = u32> + Clone) -> Result<Vec<CountingRow>, FrobError> {
    let mut rows = Vec::new();
    for rs in types {
        for ell in ells.clone() {
            rows.push(counting_row(rs, ell)?);
        }
    }
    Ok(rows)
}

/// The `counting` suite: one case per non-skipped row.
pub fn verify_counting(types: &[RootSystem], ells: impl IntoIterator<Item = u32> + Clone) -> Result<Report, FrobError> {
    let rows = counting_identities(types, ells)?;
    let labels: Vec<String> = types.iter().map(|t| t.label.clone()).collect();
    let mut rep = Report::new("counting").param("types", labels.join(","));
    for row in &rows {
        let name = format!("{} ell={}", row.type_label, row.ell);
        match &row.skipped {
            Some(why) => rep.push(Case::skipped(name, why.clone())),
            None => {
                let ok = row.identity && row.p_double_matches_table;
                let detail = format!("m={} |P'/P''|={} |Q1/(Q1∩2Q)|={} degree={}", row.m, row.p_prime_over_p_double, row.q1_over_q1_cap_2q, row.degree);
                rep.push(Case::new(name, ok).with_detail(detail));
            }
        }
    }
    Ok(rep)
}

/// The types of the standard counting table.
pub fn standard_types() -> Vec<RootSystem> {
    [('A', 1), ('A', 2), ('A', 3), ('B', 2), ('B', 3), ('C', 3), ('D', 4), ('G', 2), ('F', 4)]
        .into_iter()
        .map(|(t, n)| RootSystem::new(t, n).expect("standard type"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(t: char, n: usize, ell: u32) -> PrimeRootData {
        PrimeRootData::new(&RootSystem::new(t, n).unwrap(), ell).unwrap()
    }

    #[test]
    fn odd_ell_is_trivial() {
        let d = data('A', 2, 5);
        assert_eq!((d.gamma1.order, d.gamma2.order, d.m), (1, 1, 1));
        assert_eq!(d.gamma2_kind, Gamma2Kind::Trivial);
    }

    #[test]
    fn a2_four() {
        let d = data('A', 2, 4);
        assert_eq!(d.m, 4);
        assert_eq!(d.gamma2_kind, Gamma2Kind::Full);
        assert_eq!(d.gamma2.order, 4);
        // Every d′_i is odd, so 𝒢(Δ′) = P(Δ′)/2P(Δ′).
        assert_eq!(d.gamma1.order, 4);
    }

    #[test]
    fn b2_six() {
        let d = data('B', 2, 6);
        assert_eq!(d.gamma2_kind, Gamma2Kind::ShortCoroots);
        assert_eq!(d.m, 2);
        let row = counting_row(&d.rs, 6).unwrap();
        assert!(row.identity);
        assert_eq!(row.m_squared, 4);
    }

    #[test]
    fn a1_rows() {
        let a1 = RootSystem::new('A', 1).unwrap();
        let five = counting_row(&a1, 5).unwrap();
        assert_eq!((five.m, five.degree, five.p_over_p_prime), (1, 5, 5));
        let four = counting_row(&a1, 4).unwrap();
        assert_eq!((four.m, four.degree), (2, 4));
        assert!(counting_row(&a1, 2).unwrap().skipped.is_some());
    }

    #[test]
    fn standard_table_holds() {
        let rows = counting_identities(&standard_types(), 2..=24).unwrap();
        assert_eq!(rows.len(), 9 * 23);
        for r in rows.iter().filter(|r| r.skipped.is_none()) {
            assert!(r.identity && r.p_double_matches_table, "{r:?}");
        }
    }
}
