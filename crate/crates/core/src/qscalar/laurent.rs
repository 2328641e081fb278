//! Laurent polynomials in `q` with rational coefficients.

use super::rational::Q;
use std::fmt;

/// Dense Laurent polynomial `Σ c[k] q^(lo+k)`.
///
/// Invariant: `c` is empty for zero; otherwise `c[0]` and `c[last]` are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    lo: i64,
    c: Vec<Q>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { lo: 0, c: Vec::new() }
    }
    pub fn one() -> Laurent {
        Laurent::constant(Q::one())
    }
    pub fn constant(a: Q) -> Laurent {
        Laurent::monomial(a, 0)
    }
    pub fn int(n: i64) -> Laurent {
        Laurent::constant(Q::int(n))
    }
    /// `a q^e`.
    pub fn monomial(a: Q, e: i64) -> Laurent {
        if a.is_zero() {
            Laurent::zero()
        } else {
            Laurent { lo: e, c: vec![a] }
        }
    }
    /// `q^e`.
    pub fn q_pow(e: i64) -> Laurent {
        Laurent::monomial(Q::one(), e)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, Q)>>(terms: I) -> Laurent {
        let terms: Vec<(i64, Q)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Laurent::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Q::zero(); (hi - lo + 1) as usize];
        for (e, a) in terms {
            let k = (e - lo) as usize;
            c[k] = &c[k] + &a;
        }
        Laurent::trimmed(lo, c)
    }

    fn trimmed(mut lo: i64, mut c: Vec<Q>) -> Laurent {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let lead = c.iter().take_while(|x| x.is_zero()).count();
        if lead == c.len() {
            return Laurent::zero();
        }
        if lead > 0 {
            c.drain(..lead);
            lo += lead as i64;
        }
        Laurent { lo, c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }
    /// True when the polynomial is `a q^e` for a single term.
    pub fn is_monomial(&self) -> bool {
        self.c.len() == 1
    }
    /// Lowest exponent (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.lo
    }
    /// Highest exponent (`low - 1` for zero).
    pub fn high(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }
    pub fn coeff(&self, e: i64) -> Q {
        if e < self.lo || e > self.high() {
            Q::zero()
        } else {
            self.c[(e - self.lo) as usize].clone()
        }
    }
    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_default()
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> + '_ {
        self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(move |(k, a)| (self.lo + k as i64, a))
    }
    pub fn coefficients(&self) -> &[Q] {
        &self.c
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.high().max(o.high());
        let mut c = vec![Q::zero(); (hi - lo + 1) as usize];
        for (k, a) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + k] = a.clone();
        }
        for (k, a) in o.c.iter().enumerate() {
            let i = (o.lo - lo) as usize + k;
            c[i] = &c[i] + a;
        }
        Laurent::trimmed(lo, c)
    }

    pub fn add_assign(&mut self, o: &Laurent) {
        if o.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = o.clone();
            return;
        }
        if o.lo >= self.lo && o.high() <= self.high() {
            let off = (o.lo - self.lo) as usize;
            for (k, a) in o.c.iter().enumerate() {
                self.c[off + k] = &self.c[off + k] + a;
            }
            let c = std::mem::take(&mut self.c);
            *self = Laurent::trimmed(self.lo, c);
        } else {
            *self = self.add(o);
        }
    }

    pub fn neg(&self) -> Laurent {
        Laurent { lo: self.lo, c: self.c.iter().map(|a| -a).collect() }
    }
    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]).shift(o.lo);
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]).shift(self.lo);
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        Laurent::trimmed(self.lo + o.lo, c)
    }

    pub fn scale(&self, a: &Q) -> Laurent {
        if a.is_zero() {
            return Laurent::zero();
        }
        if a.is_one() {
            return self.clone();
        }
        Laurent { lo: self.lo, c: self.c.iter().map(|x| x * a).collect() }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { lo: self.lo + k, c: self.c.clone() }
    }

    pub fn pow(&self, n: u32) -> Laurent {
        let mut r = Laurent::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Substitution `q ↦ q^k` for `k ≠ 0`.
    pub fn subs_power(&self, k: i64) -> Laurent {
        assert!(k != 0);
        Laurent::from_terms(self.terms().map(|(e, a)| (e * k, a.clone())))
    }

    /// Substitution `q ↦ -q`.
    pub fn subs_neg(&self) -> Laurent {
        Laurent::from_terms(self.terms().map(|(e, a)| (e, if e.rem_euclid(2) == 1 { -a } else { a.clone() })))
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Q {
        self.c.iter().fold(Q::zero(), |s, a| &s + a)
    }

    /// Value at an integer point `q = x`, `x ≠ 0`.
    pub fn eval_q(&self, x: &Q) -> Q {
        let mut s = Q::zero();
        for (e, a) in self.terms() {
            let mut p = Q::one();
            let base = if e >= 0 { x.clone() } else { x.inv() };
            for _ in 0..e.unsigned_abs() {
                p = &p * &base;
            }
            s = &s + &(a * &p);
        }
        s
    }

    /// Polynomial part with the lowest power removed: `self = q^low · poly`.
    pub(crate) fn strip(&self) -> (i64, Vec<Q>) {
        (self.lo, self.c.clone())
    }

    pub(crate) fn from_poly(lo: i64, c: Vec<Q>) -> Laurent {
        Laurent::trimmed(lo, c)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in `Q[q, q⁻¹]`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if d.c.len() == 1 {
            let inv = d.c[0].inv();
            return Some(self.scale(&inv).shift(-d.lo));
        }
        let (qv, r) = poly_divrem(&self.c, &d.c);
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Laurent::trimmed(self.lo - d.lo, qv))
    }

    /// True when `q^k - q^{-k}`-type symmetry holds: coefficient of `q^e` equals that of `q^{-e}`.
    pub fn is_bar_invariant(&self) -> bool {
        self.terms().all(|(e, a)| self.coeff(-e) == *a)
    }
}

/// Quotient and remainder of dense polynomials (lowest degree first).
pub(crate) fn poly_divrem(n: &[Q], d: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let dl = d.len();
    if n.len() < dl {
        return (Vec::new(), n.to_vec());
    }
    let lead_inv = d[dl - 1].inv();
    let mut r = n.to_vec();
    let mut qv = vec![Q::zero(); n.len() - dl + 1];
    for k in (0..qv.len()).rev() {
        let top = &r[k + dl - 1];
        if top.is_zero() {
            continue;
        }
        let f = top * &lead_inv;
        for (j, dj) in d.iter().enumerate() {
            if !dj.is_zero() {
                r[k + j] = &r[k + j] - &(&f * dj);
            }
        }
        qv[k] = f;
    }
    r.truncate(dl - 1);
    (qv, r)
}

/// Monic gcd of dense polynomials; empty for `gcd(0, 0)`.
pub(crate) fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let trim = |mut v: Vec<Q>| {
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
        v
    };
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = poly_divrem(&a, &b);
        a = b;
        b = trim(r);
        if !b.is_empty() {
            let li = b[b.len() - 1].inv();
            b = b.iter().map(|x| x * &li).collect();
        }
    }
    if let Some(l) = a.last().cloned() {
        let li = l.inv();
        a = a.iter().map(|x| x * &li).collect();
    }
    a
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, a) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = a.signum() < 0;
            let mag = if neg { -a } else { a.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Quantum integer `[n]_{q^t}`.
pub fn gauss_int(n: u32, t: i64) -> Laurent {
    if n == 0 {
        return Laurent::zero();
    }
    let n = n as i64;
    Laurent::from_terms((0..n).map(|k| ((n - 1 - 2 * k) * t, Q::one())))
}

/// Quantum factorial `[n]_{q^t}!`.
pub fn gauss_factorial(n: u32, t: i64) -> Laurent {
    (1..=n).fold(Laurent::one(), |acc, k| acc.mul(&gauss_int(k, t)))
}

/// `q^t - q^{-t}`.
pub fn q_minus_qinv(t: i64) -> Laurent {
    Laurent::from_terms([(t, Q::one()), (-t, Q::int(-1))])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_two() {
        assert_eq!(gauss_int(2, 1), Laurent::from_terms([(1, Q::one()), (-1, Q::one())]));
        assert_eq!(gauss_factorial(0, 1), Laurent::one());
    }

    #[test]
    fn exact_division() {
        let a = gauss_factorial(3, 1);
        let b = gauss_int(2, 1);
        let c = a.div_exact(&b).unwrap();
        assert_eq!(c, gauss_int(3, 1));
        assert!(gauss_int(3, 1).div_exact(&b).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(format!("{}", gauss_int(2, 1)), "q + q^-1");
    }
}
