//! The algebra at a root of unity: specialization of integral elements,
//! the commutation laws of `ℓ`-th powers, and the sign-group twist.

pub mod relations;
pub mod signs;
pub mod twist;

pub use relations::{verify_epsilon_relations, verify_zeta_relations};
pub use signs::{coroot_sign_act, root_sign, sign_act, sign_mask, SignGroup};
pub use twist::{canonical_twist_set, embedding_relations, root_vector_signs, twist_set_is_valid, untwist, untwist_cases, valid_twist_sets, verify_theta, RootVectorSign, Twisted, TwistedAlgebra};

use crate::qscalar::{build_context, AtRoot, ContextError, Cyc, Generic, PoleError, RatFn, RootOfUnityContext};
use crate::rootlat::{PrimeError, PrimeSystem, ReducedWord, RootSystem};
use crate::uqpbw::{Engine, Pbw, PbwError, PbwKey, Tri};
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum UzetaError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Pole(#[from] PoleError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error("element is not integral: {0} term(s) with denominators, first {1:?}")]
    NotIntegral(usize, PbwKey),
    #[error("invalid twist set {0:?}: {1}")]
    InvalidTwistSet(Vec<usize>, String),
    #[error("element is not fixed by the sign group")]
    NotInvariant,
}

/// `U_z` for one root system: a generic engine and its specialization sharing one PBW basis.
pub struct Specialized {
    pub ell: u32,
    pub generic: Engine<Generic>,
    pub engine: Engine<AtRoot>,
}

impl Specialized {
    /// `q ↦ ζ`, ζ a primitive ℓ-th root of unity; ℓ = 1, 2 give `q ↦ ±1`.
    pub fn new(rs: &RootSystem, ell: u32, word: Option<ReducedWord>) -> Result<Specialized, UzetaError> {
        let pbw = Rc::new(match word {
            Some(w) => Pbw::with_word(rs.clone(), w)?,
            None => Pbw::new(rs.clone())?,
        });
        Self::from_pbw(pbw, ell)
    }

    pub fn from_pbw(pbw: Rc<Pbw>, ell: u32) -> Result<Specialized, UzetaError> {
        let generic = Engine::new(Generic, pbw.clone())?;
        let engine = Engine::new(AtRoot::new(ell), pbw)?;
        Ok(Specialized { ell, generic, engine })
    }

    pub fn rs(&self) -> &RootSystem {
        self.engine.pbw.rs()
    }

    /// Label such as `U_zeta(B2), ell=6`.
    pub fn tag(&self) -> String {
        format!("U_zeta({}), ell={}", self.rs().label, self.ell)
    }

    /// Coefficientwise evaluation at ζ of an element of the integral form.
    pub fn specialize(&self, x: &Tri<RatFn>) -> Result<Tri<Cyc>, UzetaError> {
        let bad = x.non_integral_terms();
        if let Some((k, _)) = bad.first() {
            return Err(UzetaError::NotIntegral(bad.len(), k.clone()));
        }
        Ok(self.engine.from_generic(x)?)
    }

    /// `S(b_β)`.
    pub fn sb(&self, k: usize) -> Tri<Cyc> {
        self.engine.antipode(&self.engine.b(k))
    }
}

/// The data needed by the relation suites: `Δ`, `ζ` and the rescaled system `Δ′`.
pub struct RootData {
    pub rs: RootSystem,
    pub ctx: RootOfUnityContext,
    pub prime: PrimeSystem,
}

impl RootData {
    pub fn new(rs: &RootSystem, ell: u32) -> Result<RootData, UzetaError> {
        let ctx = build_context(rs, ell)?;
        let prime = PrimeSystem::new(rs, &ctx)?;
        Ok(RootData { rs: rs.clone(), ctx, prime })
    }
}

/// `±1` as a power `s^e` of a sign `s`.
pub(crate) fn sign_pow(s: i64, e: i64) -> i64 {
    if s == 1 || e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Compact root label, e.g. `[1,1,0]`.
pub(crate) fn root_label(b: &[i64]) -> String {
    let s: Vec<String> = b.iter().map(|c| c.to_string()).collect();
    format!("[{}]", s.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::{gauss_int, Ring};

    #[test]
    fn specialize_kills_quantum_two_at_four() {
        let rs = RootSystem::new('A', 1).unwrap();
        let s = Specialized::new(&rs, 4, None).unwrap();
        let a = s.generic.a(0);
        assert_eq!(s.specialize(&a).unwrap(), s.engine.a(0));
        let two = RatFn::from_laurent(gauss_int(2, 1));
        let x = s.generic.scale(&a, &two);
        assert!(s.specialize(&x).unwrap().is_empty());
    }

    #[test]
    fn specialize_rejects_denominators() {
        let rs = RootSystem::new('A', 1).unwrap();
        let s = Specialized::new(&rs, 4, None).unwrap();
        let x = s.generic.scale(&s.generic.a(0), &RatFn::one().div(&RatFn::from_laurent(gauss_int(2, 1))));
        assert!(matches!(s.specialize(&x), Err(UzetaError::NotIntegral(1, _))));
    }

    #[test]
    fn specialization_is_multiplicative_a2() {
        let rs = RootSystem::new('A', 2).unwrap();
        let s = Specialized::new(&rs, 4, None).unwrap();
        let g = &s.generic;
        for k in 0..3 {
            for j in 0..3 {
                let x = g.mul(&g.a(k), &g.b(j));
                let y = g.mul(&g.a(j), &g.a(k));
                let lhs = s.specialize(&g.mul(&x, &y)).unwrap();
                let rhs = s.engine.mul(&s.specialize(&x).unwrap(), &s.specialize(&y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        assert!(s.engine.ring.is_one(&s.engine.ring.q_pow(4)));
    }
}
