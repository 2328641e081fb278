//! Root-of-unity data attached to a root system: orders, signs and the case table.

use super::cyclo::{Cyc, CycField, PoleError};
use super::ratfn::RatFn;
use crate::rootlat::RootSystem;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ContextError {
    #[error("ell must be positive")]
    ZeroEll,
    #[error("r = {r} must exceed d = {d} (ell = {ell})")]
    SmallOrder { ell: u32, r: u32, d: i64 },
    #[error("{0}")]
    Pole(#[from] PoleError),
}

/// Which branch of the ε case table applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// ℓ odd.
    Odd,
    /// r odd and ℓ = 2r.
    EvenA,
    /// d = 2, r even with r/2 odd.
    EvenB,
    /// Every other even ℓ.
    EvenOther,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Odd => "odd",
            CaseTag::EvenA => "even-a",
            CaseTag::EvenB => "even-b",
            CaseTag::EvenOther => "even-other",
        }
    }
}

/// Per-root data for a positive root α.
#[derive(Clone, Debug, Serialize)]
pub struct RootOrders {
    pub root: Vec<i64>,
    pub d: i64,
    /// Order of `ζ_α`.
    pub ell: u32,
    /// Order of `ζ_α²`.
    pub r: u32,
    /// `η_α = ζ_α^{r_α}`, always ±1.
    pub eta: i64,
    /// `ζ_α^{r_α²}`, always ±1.
    pub eps: i64,
}

/// `ζ` with its derived orders and signs, for a fixed root system.
#[derive(Clone, Debug, Serialize)]
pub struct RootOfUnityContext {
    pub ell: u32,
    pub r: u32,
    pub d: i64,
    pub roots: Vec<RootOrders>,
    pub epsilon: i64,
    pub case: CaseTag,
    #[serde(skip)]
    pub field: Arc<CycField>,
}

fn sign_of(f: &CycField, x: &Cyc) -> i64 {
    if *x == f.one() {
        1
    } else if *x == f.neg(&f.one()) {
        -1
    } else {
        panic!("expected ±1, got {}", f.format(x))
    }
}

impl RootOfUnityContext {
    pub fn positive_order(ell: u32) -> Result<u32, ContextError> {
        if ell == 0 {
            return Err(ContextError::ZeroEll);
        }
        Ok(if ell % 2 == 1 { ell } else { ell / 2 })
    }

    /// `r_α` for the positive root with the given index.
    pub fn r_alpha(&self, k: usize) -> u32 {
        self.roots[k].r
    }
    pub fn eta(&self, k: usize) -> i64 {
        self.roots[k].eta
    }
    /// Indices of positive roots with `η_α = -1`.
    pub fn delta1(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&k| self.roots[k].eta == -1).collect()
    }
    /// `r_i` for simple roots.
    pub fn r_simple(&self, rs: &RootSystem) -> Vec<u32> {
        (0..rs.rank).map(|i| self.roots[rs.root_index(&rs.simple_root(i)).unwrap()].r).collect()
    }
    /// The case predicted by the closed-form table, independent of direct computation.
    pub fn predicted_case(ell: u32, d: i64) -> CaseTag {
        let r = if ell % 2 == 1 { ell } else { ell / 2 };
        if ell % 2 == 1 {
            CaseTag::Odd
        } else if r % 2 == 1 {
            CaseTag::EvenA
        } else if d == 2 && (r / 2) % 2 == 1 {
            CaseTag::EvenB
        } else {
            CaseTag::EvenOther
        }
    }
}

/// Builds the context for `rs` at a primitive ℓ-th root of unity.
///
/// Every order and sign is computed by exponentiation in `Q(ζ)`.
pub fn build_context(rs: &RootSystem, ell: u32) -> Result<RootOfUnityContext, ContextError> {
    let r = RootOfUnityContext::positive_order(ell)?;
    if (r as i64) <= rs.d {
        return Err(ContextError::SmallOrder { ell, r, d: rs.d });
    }
    let field = CycField::new(ell);
    let bound = 2 * ell as u64;
    let mut roots = Vec::new();
    for (root, &d) in rs.positive_roots.iter().zip(&rs.root_d) {
        let z = field.zeta_pow(d);
        let la = field.order(&z, bound).unwrap() as u32;
        let z2 = field.mul(&z, &z);
        let ra = field.order(&z2, bound).unwrap() as u32;
        let eta = sign_of(&field, &field.pow(&z, ra as u64));
        let eps = sign_of(&field, &field.pow(&z, (ra as u64) * (ra as u64)));
        roots.push(RootOrders { root: root.clone(), d, ell: la, r: ra, eta, eps });
    }
    // ε is read off any α whose rescaled root r_α α is short in Δ′.
    let len2 = |o: &RootOrders| (o.r as i64) * (o.r as i64) * o.d;
    let min = roots.iter().map(len2).min().unwrap();
    let epsilon = roots.iter().find(|o| len2(o) == min).unwrap().eps;
    let case = RootOfUnityContext::predicted_case(ell, rs.d);
    Ok(RootOfUnityContext { ell, r, d: rs.d, roots, epsilon, case, field })
}

/// The `epsilon` suite: for each `(type, ℓ)`, the directly exponentiated `ζ_α^{r_α²}` must
/// agree across the roots short in `Δ′` and match the closed-form case table.
pub fn verify_epsilon(grid: &[(RootSystem, u32)]) -> crate::report::Report {
    use crate::report::{Case, Report};
    let mut rep = Report::new("epsilon").param("contexts", grid.len());
    for (rs, ell) in grid {
        let name = format!("{} ell={ell}", rs.label);
        let ctx = match build_context(rs, *ell) {
            Ok(c) => c,
            Err(e @ ContextError::SmallOrder { .. }) => {
                rep.push(Case::skipped(name, e.to_string()));
                continue;
            }
            Err(e) => {
                rep.push(Case::new(name, false).with_detail(e.to_string()));
                continue;
            }
        };
        let len2 = |o: &RootOrders| (o.r as i64) * (o.r as i64) * o.d;
        let min = ctx.roots.iter().map(len2).min().unwrap();
        let uniform = ctx.roots.iter().filter(|o| len2(o) == min).all(|o| o.eps == ctx.epsilon);
        let predicted = match ctx.case {
            CaseTag::EvenA | CaseTag::EvenB => -1,
            _ => 1,
        };
        let eta_ok = ctx.roots.iter().all(|o| (o.eta == -1) == (o.ell % 2 == 0));
        let detail = format!("epsilon={} case={}", ctx.epsilon, ctx.case.name());
        rep.push(Case::new(name, uniform && eta_ok && predicted == ctx.epsilon).with_detail(detail));
    }
    rep
}

/// Exact value `f(ζ)`.
pub fn specialize_scalar(f: &RatFn, ctx: &RootOfUnityContext) -> Result<Cyc, PoleError> {
    ctx.field.eval_ratfn(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::laurent::{gauss_int, q_minus_qinv, Laurent};

    fn ctx(t: char, n: usize, ell: u32) -> RootOfUnityContext {
        build_context(&RootSystem::new(t, n).unwrap(), ell).unwrap()
    }

    #[test]
    fn a1_six_is_case_a() {
        let c = ctx('A', 1, 6);
        assert_eq!(c.r, 3);
        assert_eq!(c.epsilon, -1);
        assert_eq!(c.case, CaseTag::EvenA);
        // ζ⁹ = ζ³ = -1.
        assert_eq!(c.field.zeta_pow(9), c.field.neg(&c.field.one()));
    }

    #[test]
    fn a1_four_and_b2_eight() {
        let c = ctx('A', 1, 4);
        assert_eq!((c.r, c.epsilon), (2, 1));
        let c = ctx('B', 2, 8);
        assert_eq!((c.r, c.epsilon), (4, 1));
        for o in &c.roots {
            assert_eq!(o.eps, 1);
            assert_eq!(o.r, if o.d == 2 { 2 } else { 4 });
        }
    }

    #[test]
    fn small_r_rejected() {
        let rs = RootSystem::new('B', 2).unwrap();
        assert!(matches!(build_context(&rs, 4), Err(ContextError::SmallOrder { .. })));
        assert!(build_context(&RootSystem::new('A', 1).unwrap(), 1).is_err());
    }

    #[test]
    fn epsilon_suite() {
        let grid: Vec<_> = ['A', 'B', 'G'].iter().flat_map(|&t| (2..=12).map(move |l| (RootSystem::new(t, 2).unwrap(), l))).collect();
        let r = verify_epsilon(&grid);
        assert_eq!(r.failures(), 0);
        // B2 ℓ=4 and G2 ℓ ≤ 6 violate r > d.
        assert!(r.cases.iter().any(|c| matches!(c.status, crate::report::Status::Skipped(_))));
    }

    #[test]
    fn specialization() {
        let c = ctx('A', 1, 4);
        assert!(specialize_scalar(&RatFn::from_laurent(gauss_int(2, 1)), &c).unwrap().is_zero());
        let inv = RatFn::new(Laurent::one(), q_minus_qinv(1));
        let v = specialize_scalar(&inv, &c).unwrap();
        // 1/(i - i⁻¹) = 1/(2i).
        let two_i = c.field.from_q(crate::qscalar::rational::Q::int(2));
        let two_i = c.field.mul(&two_i, &c.field.zeta_pow(1));
        assert_eq!(c.field.mul(&v, &two_i), c.field.one());
        let f1 = CycField::new(1);
        assert!(f1.eval_ratfn(&inv).is_err());
    }
}
