//! Sign automorphisms: the group `P/P₀` acting through `δ_λ(e_i) = (-1)^{d_i λ_i} e_i`,
//! and coroot signs acting on the Cartan part.

use crate::qscalar::Ring;
use crate::rootlat::RootSystem;
use crate::uqpbw::{Engine, Tri};

/// Bit `i` of `δ_λ` is `d_i λ_i mod 2`; only indices with `d_i` odd can be set.
pub fn sign_mask(rs: &RootSystem, l: &[i64]) -> u32 {
    (0..rs.rank).filter(|&i| (rs.sym[i] * l[i]).rem_euclid(2) == 1).fold(0, |m, i| m | (1 << i))
}

/// `δ(x) = root_sign(δ, γ) x` for `x` of weight `γ ∈ Q` (simple-root coordinates).
pub fn root_sign(mask: u32, g: &[i64]) -> i64 {
    let s: i64 = g.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| *c).sum();
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn map_signs<R: Ring>(e: &Engine<R>, x: &Tri<R::E>, sign: impl Fn(&[u16], &[i64], &[u16]) -> i64) -> Tri<R::E> {
    let mut out = Tri::default();
    for ((n, l, m), c) in &x.terms {
        let c = if sign(n, l, m) == 1 { c.clone() } else { e.ring.neg(c) };
        out.terms.insert((n.clone(), l.clone(), m.clone()), c);
    }
    out
}

/// `δ(x)` for the element of `P/P₀` with bitmask `mask`.
pub fn sign_act<R: Ring>(e: &Engine<R>, mask: u32, x: &Tri<R::E>) -> Tri<R::E> {
    let p = &e.pbw;
    map_signs(e, x, |n, _, m| {
        let g: Vec<i64> = p.weight(m).iter().zip(p.weight(n)).map(|(a, b)| a - b).collect();
        root_sign(mask, &g)
    })
}

/// The automorphism `k_λ ↦ (-1)^{(ν,λ)} k_λ`, `e_i ↦ e_i`, `f_i ↦ (-1)^{(ν,α_i)} f_i`
/// for `ν = Σ c_i α_i∨` given by `c`.
///
/// It fixes every `S(f_i)`, so on `U⁺ ⊗ U⁰ ⊗ S(U⁻)` it only touches the Cartan factor.
pub fn coroot_sign_act<R: Ring>(e: &Engine<R>, c: &[i64], x: &Tri<R::E>) -> Tri<R::E> {
    let p = &e.pbw;
    let rs = p.rs();
    map_signs(e, x, |n, l, _| {
        let g = p.weight(n);
        let on_f: i64 = (0..rs.rank).map(|i| c[i] * (0..rs.rank).map(|j| rs.cartan[i][j] * g[j]).sum::<i64>()).sum();
        let on_k: i64 = c.iter().zip(l).map(|(a, b)| a * b).sum();
        if (on_f + on_k).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    })
}

/// `P/P₀ ≅ (Z/2)^{#{i : d_i odd}}` as bitmasks.
#[derive(Clone, Debug)]
pub struct SignGroup {
    pub rank: usize,
    /// Indices `i` with `d_i` odd.
    pub odd: Vec<usize>,
}

impl SignGroup {
    pub fn new(rs: &RootSystem) -> SignGroup {
        SignGroup { rank: rs.rank, odd: (0..rs.rank).filter(|&i| rs.sym[i] % 2 == 1).collect() }
    }
    pub fn order(&self) -> usize {
        1 << self.odd.len()
    }
    pub fn elements(&self) -> Vec<u32> {
        (0..self.order() as u32).map(|s| self.odd.iter().enumerate().filter(|(b, _)| s >> b & 1 == 1).fold(0, |m, (_, &i)| m | (1 << i))).collect()
    }
    /// `δ_{ϖ_i}` for each `i` with `d_i` odd: a generating set.
    pub fn generators(&self) -> Vec<u32> {
        self.odd.iter().map(|&i| 1 << i).collect()
    }
    pub fn is_invariant<R: Ring>(&self, e: &Engine<R>, x: &Tri<R::E>) -> bool {
        self.generators().into_iter().all(|s| sign_act(e, s, x) == *x)
    }
    /// A weight `γ ∈ Q` is fixed by every `δ` iff `c_i` is even whenever `d_i` is odd.
    pub fn weight_is_invariant(&self, g: &[i64]) -> bool {
        self.odd.iter().all(|&i| g[i] % 2 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::AtRoot;
    use crate::uqpbw::Pbw;
    use std::rc::Rc;

    fn engine(t: char, n: usize) -> Engine<AtRoot> {
        Engine::new(AtRoot::new(8), Rc::new(Pbw::new(RootSystem::new(t, n).unwrap()).unwrap())).unwrap()
    }

    #[test]
    fn fixes_cartan_and_flips_simple() {
        let e = engine('A', 2);
        let g = SignGroup::new(e.pbw.rs());
        assert_eq!(g.order(), 4);
        for s in g.elements() {
            assert_eq!(sign_act(&e, s, &e.k(vec![1, -1])), e.k(vec![1, -1]));
        }
        let d1 = sign_mask(e.pbw.rs(), &[1, 0]);
        assert_eq!(sign_act(&e, d1, &e.a_simple(0)), e.neg(&e.a_simple(0)));
        assert_eq!(sign_act(&e, d1, &e.a_simple(1)), e.a_simple(1));
    }

    #[test]
    fn b2_long_root_is_inert() {
        let e = engine('B', 2);
        let g = SignGroup::new(e.pbw.rs());
        assert_eq!(g.odd, vec![1]);
        assert_eq!(sign_mask(e.pbw.rs(), &[1, 0]), 0);
    }

    #[test]
    fn sign_actions_are_involutive_automorphisms() {
        for (t, n) in [('A', 2), ('B', 2)] {
            let e = engine(t, n);
            let g = SignGroup::new(e.pbw.rs());
            let xs: Vec<_> = (0..e.n_roots()).map(|k| e.add(&e.a(k), &e.mul(&e.b(k), &e.k_fundamental(0)))).collect();
            let cs: [&[i64]; 3] = [&[1, 0], &[0, 1], &[1, 1]];
            for x in &xs {
                for y in &xs {
                    let xy = e.mul(x, y);
                    for s in g.elements() {
                        assert_eq!(sign_act(&e, s, &xy), e.mul(&sign_act(&e, s, x), &sign_act(&e, s, y)));
                        assert_eq!(sign_act(&e, s, &sign_act(&e, s, x)), *x);
                    }
                    for c in cs {
                        assert_eq!(coroot_sign_act(&e, c, &xy), e.mul(&coroot_sign_act(&e, c, x), &coroot_sign_act(&e, c, y)));
                    }
                }
            }
        }
    }
}
