//! Lusztig's braid automorphisms on normally ordered words.

use super::words::{WordAlgebra, WordPoly, WordTri};
use crate::qscalar::{Q, RatFn};

/// Direction of a braid automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidDir {
    Forward,
    Inverse,
}

impl WordAlgebra {
    /// `T_i^{±1}(e_j)` as an element.
    pub fn braid_e(&self, i: usize, j: usize, dir: BraidDir) -> WordTri {
        let n = self.rank();
        if i == j {
            let ki = self.k(self.alpha(i));
            let kinv = self.k(self.alpha(i).iter().map(|x| -x).collect());
            return match dir {
                BraidDir::Forward => self.mul(&self.f(i), &ki).scale(&RatFn::int(-1)),
                BraidDir::Inverse => self.mul(&kinv, &self.f(i)).scale(&RatFn::int(-1)),
            };
        }
        let m = -self.rs.cartan[i][j];
        let mut p = WordPoly::zero();
        for r in 0..=m {
            let s = m - r;
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let c = RatFn::q_pow(-self.di(i) * r).scale_q(&Q::int(sign));
            let (left, right) = match dir {
                BraidDir::Forward => (s, r),
                BraidDir::Inverse => (r, s),
            };
            let t = self.divided_letter(i, left as u32).mul(&WordPoly::letter(j)).mul(&self.divided_letter(i, right as u32));
            p = p.add(&t.scale(&c));
        }
        WordTri::from_e(&p, n)
    }

    /// `T_i^{±1}(f_j)` as an element.
    pub fn braid_f(&self, i: usize, j: usize, dir: BraidDir) -> WordTri {
        let n = self.rank();
        if i == j {
            let ki = self.k(self.alpha(i));
            let kinv = self.k(self.alpha(i).iter().map(|x| -x).collect());
            return match dir {
                BraidDir::Forward => self.mul(&kinv, &self.e(i)).scale(&RatFn::int(-1)),
                BraidDir::Inverse => self.mul(&self.e(i), &ki).scale(&RatFn::int(-1)),
            };
        }
        let m = -self.rs.cartan[i][j];
        let mut p = WordPoly::zero();
        for r in 0..=m {
            let s = m - r;
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let c = RatFn::q_pow(self.di(i) * s).scale_q(&Q::int(sign));
            let (left, right) = match dir {
                BraidDir::Forward => (s, r),
                BraidDir::Inverse => (r, s),
            };
            let t = self.divided_letter(i, left as u32).mul(&WordPoly::letter(j)).mul(&self.divided_letter(i, right as u32));
            p = p.add(&t.scale(&c));
        }
        WordTri::from_f(&p, n)
    }

    /// `T_i^{±1}(x)` by substituting generator images.
    pub fn braid(&self, i: usize, x: &WordTri, dir: BraidDir) -> WordTri {
        let n = self.rank();
        let e_img: Vec<WordTri> = (0..n).map(|j| self.braid_e(i, j, dir)).collect();
        let f_img: Vec<WordTri> = (0..n).map(|j| self.braid_f(i, j, dir)).collect();
        let mut out = WordTri::zero();
        for ((w, l, u), c) in &x.terms {
            let mut acc = self.one();
            for &j in w {
                acc = self.mul(&acc, &f_img[j as usize]);
            }
            acc = self.mul(&acc, &self.k(self.rs.reflect_weight(i, l)));
            for &j in u {
                acc = self.mul(&acc, &e_img[j as usize]);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// `T_i` applied to a positive-half element, staying in `U⁺`.
    ///
    /// Returns the `U⁺` part and the remainder, which must vanish in `U`.
    pub fn braid_plus(&self, i: usize, x: &WordPoly, dir: BraidDir) -> (WordPoly, WordTri) {
        let t = self.braid(i, &WordTri::from_e(x, self.rank()), dir);
        let plus = t.plus_part();
        let rest = t.sub(&WordTri::from_e(&plus, self.rank()));
        (plus, rest)
    }

    /// `T_i` applied to a negative-half element, staying in `U⁻`.
    pub fn braid_minus(&self, i: usize, y: &WordPoly, dir: BraidDir) -> (WordPoly, WordTri) {
        let t = self.braid(i, &WordTri::from_f(y, self.rank()), dir);
        let minus = t.minus_part();
        let rest = t.sub(&WordTri::from_f(&minus, self.rank()));
        (minus, rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlat::RootSystem;

    #[test]
    fn a2_t1_e2() {
        let a = WordAlgebra::new(RootSystem::new('A', 2).unwrap());
        let t = a.braid_e(0, 1, BraidDir::Forward);
        let mut expect = WordPoly::from_word(vec![0, 1], RatFn::int(-1));
        expect.add_term(vec![1, 0], RatFn::q_pow(-1));
        assert_eq!(t, WordTri::from_e(&expect, 2));
    }

    #[test]
    fn ti_of_ei() {
        let a = WordAlgebra::new(RootSystem::new('A', 1).unwrap());
        let t = a.braid(0, &a.e(0), BraidDir::Forward);
        assert_eq!(t, a.mul(&a.f(0), &a.k(vec![2])).scale(&RatFn::int(-1)));
        assert_eq!(a.braid(0, &a.k(vec![1]), BraidDir::Forward), a.k(vec![-1]));
    }

    fn generators(a: &WordAlgebra) -> Vec<WordTri> {
        let n = a.rank();
        let mut g = Vec::new();
        for j in 0..n {
            g.push(a.e(j));
            g.push(a.f(j));
            g.push(a.k(a.alpha(j)));
        }
        g
    }

    #[test]
    fn inverse_undoes_forward() {
        for (t, n) in [('A', 2), ('B', 2), ('G', 2)] {
            let a = WordAlgebra::new(RootSystem::new(t, n).unwrap());
            for i in 0..n {
                for g in generators(&a) {
                    let there = a.braid(i, &g, BraidDir::Forward);
                    let back = a.braid(i, &there, BraidDir::Inverse);
                    assert!(a.vanishes(&back.sub(&g)), "{t}{n} i={i}");
                    let back = a.braid(i, &a.braid(i, &g, BraidDir::Inverse), BraidDir::Forward);
                    assert!(a.vanishes(&back.sub(&g)), "{t}{n} i={i}");
                }
            }
        }
    }

    #[test]
    fn images_satisfy_relations() {
        for (t, n) in [('A', 2), ('B', 2), ('G', 2)] {
            let a = WordAlgebra::new(RootSystem::new(t, n).unwrap());
            for i in 0..n {
                let e: Vec<WordTri> = (0..n).map(|j| a.braid_e(i, j, BraidDir::Forward)).collect();
                let f: Vec<WordTri> = (0..n).map(|j| a.braid_f(i, j, BraidDir::Forward)).collect();
                for x in 0..n {
                    for y in 0..n {
                        let lhs = a.mul(&e[x], &f[y]).sub(&a.mul(&f[y], &e[x]));
                        let rhs = if x == y { a.braid(i, &a.k_bracket(x), BraidDir::Forward) } else { WordTri::zero() };
                        assert!(a.vanishes(&lhs.sub(&rhs)), "{t}{n} i={i} [e{x}, f{y}]");
                    }
                }
            }
        }
    }
}
