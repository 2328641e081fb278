//! Exact arithmetic in the cyclotomic field `Q(ζ)`, `ζ` a primitive ℓ-th root of unity.

use super::laurent::{poly_divrem, Laurent};
use super::rational::Q;
use super::ratfn::RatFn;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Integer coefficients of the ℓ-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(ell: u32) -> Vec<i64> {
    assert!(ell >= 1);
    // x^ℓ - 1 divided by Φ_d for every proper divisor d.
    let mut p: Vec<i64> = vec![0; ell as usize + 1];
    p[0] = -1;
    p[ell as usize] = 1;
    for d in 1..ell {
        if ell % d == 0 {
            let phi = cyclotomic_poly(d);
            p = int_div_exact(&p, &phi);
        }
    }
    p
}

fn int_div_exact(n: &[i64], d: &[i64]) -> Vec<i64> {
    let dl = d.len();
    let mut r = n.to_vec();
    let mut q = vec![0i64; n.len() - dl + 1];
    for k in (0..q.len()).rev() {
        let f = r[k + dl - 1] / d[dl - 1];
        for (j, dj) in d.iter().enumerate() {
            r[k + j] -= f * dj;
        }
        q[k] = f;
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u32
}

/// Specialization failure: the denominator vanishes at ζ.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("pole at the primitive {ell}-th root of unity: denominator {factor} vanishes")]
pub struct PoleError {
    pub ell: u32,
    pub factor: String,
}

/// The field `Q(ζ) = Q[x]/Φ_ℓ`.
#[derive(Debug)]
pub struct CycField {
    ell: u32,
    modulus: Vec<Q>,
    powers: Vec<Cyc>,
}

/// Element of `Q(ζ)`, stored as a residue of degree below `φ(ℓ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc {
    c: Vec<Q>,
}

impl CycField {
    pub fn new(ell: u32) -> Arc<CycField> {
        let modulus: Vec<Q> = cyclotomic_poly(ell).into_iter().map(Q::int).collect();
        let deg = modulus.len() - 1;
        let mut f = CycField { ell, modulus, powers: Vec::new() };
        let mut powers = Vec::with_capacity(ell as usize);
        for k in 0..ell as usize {
            let mut v = vec![Q::zero(); k + 1];
            v[k] = Q::one();
            powers.push(f.reduce(v));
        }
        debug_assert!(powers.iter().all(|p| p.c.len() <= deg));
        f.powers = powers;
        Arc::new(f)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, v: Vec<Q>) -> Cyc {
        let v = if v.len() >= self.modulus.len() { poly_divrem(&v, &self.modulus).1 } else { v };
        Cyc::trimmed(v)
    }

    pub fn zero(&self) -> Cyc {
        Cyc { c: Vec::new() }
    }
    pub fn one(&self) -> Cyc {
        Cyc::trimmed(vec![Q::one()])
    }
    pub fn from_q(&self, a: Q) -> Cyc {
        Cyc::trimmed(vec![a])
    }
    /// `ζ^e`.
    pub fn zeta_pow(&self, e: i64) -> Cyc {
        self.powers[e.rem_euclid(self.ell as i64) as usize].clone()
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let n = a.c.len().max(b.c.len());
        let v = (0..n).map(|k| &a.get(k) + &b.get(k)).collect();
        Cyc::trimmed(v)
    }
    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc { c: a.c.iter().map(|x| -x).collect() }
    }
    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.add(a, &self.neg(b))
    }
    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        if a.c.is_empty() || b.c.is_empty() {
            return self.zero();
        }
        let mut v = vec![Q::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] = &v[i + j] + &(x * y);
                }
            }
        }
        self.reduce(v)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo `Φ_ℓ`.
    pub fn inv(&self, a: &Cyc) -> Option<Cyc> {
        if a.is_zero() {
            return None;
        }
        // Invariant: s·a ≡ r0, t·a ≡ r1 (mod Φ).
        let mut r0 = self.modulus.clone();
        let mut r1 = a.c.clone();
        let mut s0: Vec<Q> = Vec::new();
        let mut s1: Vec<Q> = vec![Q::one()];
        while !(r1.len() == 1) {
            let (quo, rem) = poly_divrem(&r0, &r1);
            let rem = trim(rem);
            let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return None;
            }
        }
        let c = r1[0].inv();
        let v: Vec<Q> = s1.iter().map(|x| x * &c).collect();
        Some(self.reduce(v))
    }

    pub fn pow(&self, a: &Cyc, n: u64) -> Cyc {
        let mut r = self.one();
        for _ in 0..n {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn eval_laurent(&self, p: &Laurent) -> Cyc {
        let mut v = vec![Q::zero(); self.ell as usize];
        for (e, a) in p.terms() {
            let k = e.rem_euclid(self.ell as i64) as usize;
            v[k] = &v[k] + a;
        }
        self.reduce(v)
    }

    /// Specialization `q ↦ ζ`.
    pub fn eval_ratfn(&self, f: &RatFn) -> Result<Cyc, PoleError> {
        let n = self.eval_laurent(f.num());
        if f.is_laurent() {
            return Ok(n);
        }
        let d = self.eval_laurent(f.den());
        match self.inv(&d) {
            Some(di) => Ok(self.mul(&n, &di)),
            None => Err(PoleError { ell: self.ell, factor: f.den().to_string() }),
        }
    }

    /// Smallest `k ≥ 1` with `a^k = 1`, searched up to `bound`.
    pub fn order(&self, a: &Cyc, bound: u64) -> Option<u64> {
        let one = self.one();
        let mut p = a.clone();
        for k in 1..=bound {
            if p == one {
                return Some(k);
            }
            p = self.mul(&p, a);
        }
        None
    }

    pub fn format(&self, a: &Cyc) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let t = match k {
                0 => format!("{x}"),
                1 if x.is_one() => "z".to_string(),
                1 => format!("{x}*z"),
                _ if x.is_one() => format!("z^{k}"),
                _ => format!("{x}*z^{k}"),
            };
            parts.push(t);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] = &v[i + j] + &(x * y);
        }
    }
    trim(v)
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let g = |v: &[Q], k: usize| v.get(k).cloned().unwrap_or_default();
    trim((0..n).map(|k| &g(a, k) - &g(b, k)).collect())
}

impl Cyc {
    fn trimmed(v: Vec<Q>) -> Cyc {
        Cyc { c: trim(v) }
    }
    fn get(&self, k: usize) -> Q {
        self.c.get(k).cloned().unwrap_or_default()
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Coefficients in the power basis `1, ζ, …, ζ^{φ(ℓ)-1}`.
    pub fn coefficients(&self) -> &[Q] {
        &self.c
    }
    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Q> {
        match self.c.len() {
            0 => Some(Q::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{:?}", self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::laurent::gauss_int;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        for n in 1..30 {
            assert_eq!(cyclotomic_poly(n).len() as u32 - 1, totient(n));
        }
    }

    #[test]
    fn zeta_has_exact_order() {
        for ell in 1..25 {
            let f = CycField::new(ell);
            let z = f.zeta_pow(1);
            assert_eq!(f.order(&z, 100), Some(ell as u64));
        }
    }

    #[test]
    fn quantum_two_vanishes_at_i() {
        let f = CycField::new(4);
        assert!(f.eval_laurent(&gauss_int(2, 1)).is_zero());
    }

    #[test]
    fn inverse() {
        let f = CycField::new(7);
        let a = f.add(&f.zeta_pow(1), &f.from_q(Q::int(3)));
        let b = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &b), f.one());
    }
}
