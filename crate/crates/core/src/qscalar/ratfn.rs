//! Rational functions in `q` over the rationals, kept in reduced canonical form.

use super::laurent::{poly_divrem, poly_gcd, Laurent};
use super::rational::Q;
use std::fmt;

/// Reduced fraction `num / den`.
///
/// Invariant: `den` is a monic polynomial with nonzero constant term and
/// `gcd(num, den) = 1`. Equality of values is equality of representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Laurent,
    den: Laurent,
}

impl RatFn {
    pub fn zero() -> RatFn {
        RatFn { num: Laurent::zero(), den: Laurent::one() }
    }
    pub fn one() -> RatFn {
        RatFn::from_laurent(Laurent::one())
    }
    pub fn int(n: i64) -> RatFn {
        RatFn::from_laurent(Laurent::int(n))
    }
    pub fn q_pow(e: i64) -> RatFn {
        RatFn::from_laurent(Laurent::q_pow(e))
    }
    pub fn constant(a: Q) -> RatFn {
        RatFn::from_laurent(Laurent::constant(a))
    }
    pub fn from_laurent(num: Laurent) -> RatFn {
        RatFn { num, den: Laurent::one() }
    }

    /// `n / d`, reduced; panics when `d = 0`.
    pub fn new(n: Laurent, d: Laurent) -> RatFn {
        assert!(!d.is_zero(), "rational function with zero denominator");
        if n.is_zero() {
            return RatFn::zero();
        }
        if d.is_monomial() {
            let inv = d.lead().inv();
            return RatFn::from_laurent(n.scale(&inv).shift(-d.low()));
        }
        let (dlo, dc) = d.strip();
        let (nlo, nc) = n.strip();
        let g = poly_gcd(&nc, &dc);
        let (nc, dc) = if g.len() > 1 {
            (poly_divrem(&nc, &g).0, poly_divrem(&dc, &g).0)
        } else {
            (nc, dc)
        };
        let lead_inv = dc[dc.len() - 1].inv();
        let dc: Vec<Q> = dc.iter().map(|x| x * &lead_inv).collect();
        let nc: Vec<Q> = nc.iter().map(|x| x * &lead_inv).collect();
        let den = Laurent::from_poly(0, dc);
        let num = Laurent::from_poly(nlo - dlo, nc);
        if den.is_one() {
            return RatFn::from_laurent(num);
        }
        RatFn { num, den }
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }
    pub fn den(&self) -> &Laurent {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    /// True when the value lies in `Q[q, q⁻¹]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }
    pub fn as_laurent(&self) -> Option<&Laurent> {
        if self.is_laurent() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFn::from_laurent(self.num.add(&o.num));
            }
            return RatFn::new(self.num.add(&o.num), self.den.clone());
        }
        if o.den.is_one() {
            return RatFn::new(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return RatFn::new(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        RatFn::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn::from_laurent(self.num.mul(&o.num));
        }
        if o.num.is_monomial() && o.den.is_one() {
            return RatFn { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        if self.num.is_monomial() && self.den.is_one() {
            return RatFn { num: o.num.mul(&self.num), den: o.den.clone() };
        }
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<RatFn> {
        if self.is_zero() {
            None
        } else {
            Some(RatFn::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &RatFn) -> RatFn {
        self.mul(&o.inv().expect("rational function division by zero"))
    }

    pub fn pow(&self, n: i64) -> RatFn {
        let base = if n < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let mut r = RatFn::one();
        for _ in 0..n.unsigned_abs() {
            r = r.mul(&base);
        }
        r
    }

    pub fn scale_q(&self, a: &Q) -> RatFn {
        RatFn { num: self.num.scale(a), den: self.den.clone() }
    }

    /// Substitution `q ↦ -q`.
    pub fn subs_neg(&self) -> RatFn {
        RatFn::new(self.num.subs_neg(), self.den.subs_neg())
    }

    /// Value at `q = x`; `None` when the denominator vanishes there.
    pub fn eval_q(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval_q(x);
        if d.is_zero() {
            None
        } else {
            Some(&self.num.eval_q(x) / &d)
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Laurent> for RatFn {
    fn from(l: Laurent) -> RatFn {
        RatFn::from_laurent(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::laurent::{gauss_int, q_minus_qinv};

    #[test]
    fn canonical_form() {
        let a = RatFn::new(gauss_int(2, 1).mul(&gauss_int(3, 1)), gauss_int(2, 1));
        assert_eq!(a, RatFn::from_laurent(gauss_int(3, 1)));
        let b = RatFn::new(Laurent::one(), q_minus_qinv(1));
        let c = RatFn::new(Laurent::q_pow(1).scale(&Q::int(3)), q_minus_qinv(1).scale(&Q::int(3)).shift(2));
        assert_eq!(b.mul(&RatFn::q_pow(-1)), c);
    }

    #[test]
    fn field_ops() {
        let x = RatFn::new(Laurent::one(), gauss_int(2, 1));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(x.sub(&x).is_zero());
    }
}
