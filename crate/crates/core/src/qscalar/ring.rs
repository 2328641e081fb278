//! Coefficient rings the algebra engines are generic over.

use super::cyclo::{Cyc, CycField, PoleError};
use super::laurent::Laurent;
use super::rational::Q;
use super::ratfn::RatFn;
use std::fmt::Debug;
use std::sync::Arc;

/// A commutative coefficient field equipped with the image of `q`.
pub trait Ring: Clone + Debug {
    type E: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    /// Image of `q^n`.
    fn q_pow(&self, n: i64) -> Self::E;
    fn from_q(&self, a: &Q) -> Self::E;
    /// Image of a generic rational function; fails at poles.
    fn from_ratfn(&self, f: &RatFn) -> Result<Self::E, PoleError>;
    fn format(&self, a: &Self::E) -> String;
    /// Short label: `generic` or `zeta_<ℓ>`.
    fn label(&self) -> String;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
    fn from_int(&self, n: i64) -> Self::E {
        self.from_q(&Q::int(n))
    }
    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }
    fn pow(&self, a: &Self::E, n: u64) -> Self::E {
        let mut r = self.one();
        for _ in 0..n {
            r = self.mul(&r, a);
        }
        r
    }
    fn from_laurent(&self, p: &Laurent) -> Self::E {
        self.from_ratfn(&RatFn::from_laurent(p.clone())).expect("Laurent polynomials have no poles")
    }
}

/// The field `Q(q)` with `q` transcendental.
#[derive(Clone, Debug, Default)]
pub struct Generic;

impl Ring for Generic {
    type E = RatFn;
    fn zero(&self) -> RatFn {
        RatFn::zero()
    }
    fn one(&self) -> RatFn {
        RatFn::one()
    }
    fn is_zero(&self, a: &RatFn) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.add(b)
    }
    fn neg(&self, a: &RatFn) -> RatFn {
        a.neg()
    }
    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.mul(b)
    }
    fn inv(&self, a: &RatFn) -> Option<RatFn> {
        a.inv()
    }
    fn q_pow(&self, n: i64) -> RatFn {
        RatFn::q_pow(n)
    }
    fn from_q(&self, a: &Q) -> RatFn {
        RatFn::constant(a.clone())
    }
    fn from_ratfn(&self, f: &RatFn) -> Result<RatFn, PoleError> {
        Ok(f.clone())
    }
    fn format(&self, a: &RatFn) -> String {
        a.to_string()
    }
    fn label(&self) -> String {
        "generic".into()
    }
}

/// The field `Q(ζ)` with `q ↦ ζ`, a primitive ℓ-th root of unity.
#[derive(Clone, Debug)]
pub struct AtRoot(pub Arc<CycField>);

impl AtRoot {
    pub fn new(ell: u32) -> AtRoot {
        AtRoot(CycField::new(ell))
    }
    pub fn ell(&self) -> u32 {
        self.0.ell()
    }
    pub fn field(&self) -> &CycField {
        &self.0
    }
}

impl Ring for AtRoot {
    type E = Cyc;
    fn zero(&self) -> Cyc {
        self.0.zero()
    }
    fn one(&self) -> Cyc {
        self.0.one()
    }
    fn is_zero(&self, a: &Cyc) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.0.add(a, b)
    }
    fn neg(&self, a: &Cyc) -> Cyc {
        self.0.neg(a)
    }
    fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.0.mul(a, b)
    }
    fn inv(&self, a: &Cyc) -> Option<Cyc> {
        self.0.inv(a)
    }
    fn q_pow(&self, n: i64) -> Cyc {
        self.0.zeta_pow(n)
    }
    fn from_q(&self, a: &Q) -> Cyc {
        self.0.from_q(a.clone())
    }
    fn from_ratfn(&self, f: &RatFn) -> Result<Cyc, PoleError> {
        self.0.eval_ratfn(f)
    }
    fn from_laurent(&self, p: &Laurent) -> Cyc {
        self.0.eval_laurent(p)
    }
    fn format(&self, a: &Cyc) -> String {
        self.0.format(a)
    }
    fn label(&self) -> String {
        format!("zeta_{}", self.0.ell())
    }
}
