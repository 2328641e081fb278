//! Triangular multiplication in the rescaled PBW basis over any coefficient ring.
//!
//! Elements are combinations of `b^N k_λ a^M` with `a_β = (q_β - q_β⁻¹) e_β`,
//! `b_β = (q_β - q_β⁻¹) f_β`. Products are computed by peeling one root vector
//! at a time against the generic structure constants in [`Tables`].

use super::braid::BraidDir;
use super::pbw::{Exps, Pbw, PbwKey};
use super::tables::{Tables, TriExpansion};
use super::words::Wt;
use crate::qscalar::{PoleError, RatFn, Ring};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::rc::Rc;

/// A combination of canonical monomials `b^N k_λ a^M`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tri<E> {
    pub terms: BTreeMap<PbwKey, E>,
}

impl<E> Default for Tri<E> {
    fn default() -> Self {
        Tri { terms: BTreeMap::new() }
    }
}

impl<E: Clone> Tri<E> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn iter(&self) -> impl Iterator<Item = (&PbwKey, &E)> {
        self.terms.iter()
    }
}

impl Tri<RatFn> {
    /// True when every coefficient is a Laurent polynomial.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_laurent())
    }
    /// The monomials whose coefficients carry a nontrivial denominator.
    pub fn non_integral_terms(&self) -> Vec<(PbwKey, RatFn)> {
        self.terms.iter().filter(|(_, c)| !c.is_laurent()).map(|(k, c)| (k.clone(), c.clone())).collect()
    }
}

type Side = Vec<(Exps, usize)>;
type OneSided<E> = Rc<Vec<(Exps, E)>>;
type TriList<E> = Rc<Vec<(PbwKey, E)>>;

struct Loaded<E> {
    e_pair: HashMap<(usize, usize), Vec<(Exps, E)>>,
    f_pair: HashMap<(usize, usize), Vec<(Exps, E)>>,
    cross: HashMap<(usize, usize), Vec<(PbwKey, E)>>,
    antipode_a: Vec<Vec<(PbwKey, E)>>,
    antipode_b: Vec<Vec<(PbwKey, E)>>,
    sigma_a: Vec<Vec<(PbwKey, E)>>,
    sigma_b: Vec<Vec<(PbwKey, E)>>,
    braid_a: [Vec<Vec<Vec<(PbwKey, E)>>>; 2],
    braid_b: [Vec<Vec<Vec<(PbwKey, E)>>>; 2],
}

/// Multiplication engine over a coefficient ring.
pub struct Engine<R: Ring> {
    pub ring: R,
    pub pbw: Rc<Pbw>,
    t: Loaded<R::E>,
    plus_letter: RefCell<HashMap<(Exps, usize), OneSided<R::E>>>,
    minus_letter: RefCell<HashMap<(Exps, usize), OneSided<R::E>>>,
    plus_mul: RefCell<HashMap<(Exps, Exps), OneSided<R::E>>>,
    minus_mul: RefCell<HashMap<(Exps, Exps), OneSided<R::E>>>,
    ef: RefCell<HashMap<(Exps, Exps), TriList<R::E>>>,
    _side: std::marker::PhantomData<Side>,
}

fn dir_index(d: BraidDir) -> usize {
    match d {
        BraidDir::Forward => 0,
        BraidDir::Inverse => 1,
    }
}

impl<R: Ring> Engine<R> {
    /// Loads the generic tables of `pbw` into `ring`; a pole means the rescaled
    /// basis is not integral at this specialization.
    pub fn new(ring: R, pbw: Rc<Pbw>) -> Result<Engine<R>, PoleError> {
        let tables = pbw.tables();
        let t = Self::load(&ring, &tables)?;
        Ok(Engine {
            ring,
            pbw,
            t,
            plus_letter: RefCell::default(),
            minus_letter: RefCell::default(),
            plus_mul: RefCell::default(),
            minus_mul: RefCell::default(),
            ef: RefCell::default(),
            _side: Default::default(),
        })
    }

    fn load(ring: &R, t: &Tables) -> Result<Loaded<R::E>, PoleError> {
        let one = |v: &Vec<(Exps, RatFn)>| -> Result<Vec<(Exps, R::E)>, PoleError> {
            let mut out = Vec::new();
            for (m, c) in v {
                let x = ring.from_ratfn(c)?;
                if !ring.is_zero(&x) {
                    out.push((m.clone(), x));
                }
            }
            Ok(out)
        };
        let tri = |v: &TriExpansion| -> Result<Vec<(PbwKey, R::E)>, PoleError> {
            let mut out = Vec::new();
            for (m, c) in v {
                let x = ring.from_ratfn(c)?;
                if !ring.is_zero(&x) {
                    out.push((m.clone(), x));
                }
            }
            Ok(out)
        };
        let map1 = |m: &HashMap<(usize, usize), Vec<(Exps, RatFn)>>| -> Result<HashMap<_, _>, PoleError> { m.iter().map(|(k, v)| Ok((*k, one(v)?))).collect() };
        let list = |v: &[TriExpansion]| -> Result<Vec<_>, PoleError> { v.iter().map(&tri).collect() };
        let nested = |v: &[Vec<TriExpansion>]| -> Result<Vec<_>, PoleError> { v.iter().map(|x| list(x)).collect() };
        Ok(Loaded {
            e_pair: map1(&t.e_pair)?,
            f_pair: map1(&t.f_pair)?,
            cross: t.cross.iter().map(|(k, v)| Ok((*k, tri(v)?))).collect::<Result<_, PoleError>>()?,
            antipode_a: list(&t.antipode_a)?,
            antipode_b: list(&t.antipode_b)?,
            sigma_a: list(&t.sigma_a)?,
            sigma_b: list(&t.sigma_b)?,
            braid_a: [nested(&t.braid_a[0])?, nested(&t.braid_a[1])?],
            braid_b: [nested(&t.braid_b[0])?, nested(&t.braid_b[1])?],
        })
    }

    pub fn rank(&self) -> usize {
        self.pbw.rank()
    }
    pub fn n_roots(&self) -> usize {
        self.pbw.n_roots()
    }
    fn zero_exps(&self) -> Exps {
        vec![0; self.n_roots()]
    }
    fn zero_wt(&self) -> Wt {
        vec![0; self.rank()]
    }

    // ---- construction ----

    pub fn zero(&self) -> Tri<R::E> {
        Tri::default()
    }
    pub fn scalar(&self, c: R::E) -> Tri<R::E> {
        self.monomial(self.zero_exps(), self.zero_wt(), self.zero_exps(), c)
    }
    pub fn one(&self) -> Tri<R::E> {
        self.scalar(self.ring.one())
    }
    pub fn monomial(&self, n: Exps, l: Wt, m: Exps, c: R::E) -> Tri<R::E> {
        let mut t = Tri::default();
        if !self.ring.is_zero(&c) {
            t.terms.insert((n, l, m), c);
        }
        t
    }
    pub fn k(&self, l: Wt) -> Tri<R::E> {
        self.monomial(self.zero_exps(), l, self.zero_exps(), self.ring.one())
    }
    /// `a^M`.
    pub fn a_mono(&self, m: Exps) -> Tri<R::E> {
        self.monomial(self.zero_exps(), self.zero_wt(), m, self.ring.one())
    }
    /// `b^N`.
    pub fn b_mono(&self, n: Exps) -> Tri<R::E> {
        self.monomial(n, self.zero_wt(), self.zero_exps(), self.ring.one())
    }
    /// `a_{β_k}`.
    pub fn a(&self, k: usize) -> Tri<R::E> {
        self.a_mono(self.pbw.unit(k))
    }
    /// `b_{β_k}`.
    pub fn b(&self, k: usize) -> Tri<R::E> {
        self.b_mono(self.pbw.unit(k))
    }
    /// Index of the simple root `α_i` in the β-sequence.
    pub fn simple_index(&self, i: usize) -> usize {
        let s = self.pbw.rs().simple_root(i);
        self.pbw.betas.iter().position(|b| *b == s).expect("simple roots occur in the β-sequence")
    }
    /// Rescaled simple generator `a_i = (q_i - q_i⁻¹) e_i`.
    pub fn a_simple(&self, i: usize) -> Tri<R::E> {
        self.a(self.simple_index(i))
    }
    pub fn b_simple(&self, i: usize) -> Tri<R::E> {
        self.b(self.simple_index(i))
    }
    /// `k_{ϖ_i}`.
    pub fn k_fundamental(&self, i: usize) -> Tri<R::E> {
        let mut l = self.zero_wt();
        l[i] = 1;
        self.k(l)
    }
    /// Algebra generators used for centrality tests: `a_i`, `b_i`, `k_{ϖ_i}`.
    pub fn generators(&self) -> Vec<(String, Tri<R::E>)> {
        let mut g = Vec::new();
        for i in 0..self.rank() {
            g.push((format!("e{}", i + 1), self.a_simple(i)));
            g.push((format!("f{}", i + 1), self.b_simple(i)));
            g.push((format!("k(w{})", i + 1), self.k_fundamental(i)));
        }
        g
    }

    /// Maps a generic element into this ring.
    pub fn from_generic(&self, x: &Tri<RatFn>) -> Result<Tri<R::E>, PoleError> {
        let mut t = Tri::default();
        for (k, c) in &x.terms {
            let v = self.ring.from_ratfn(c)?;
            if !self.ring.is_zero(&v) {
                t.terms.insert(k.clone(), v);
            }
        }
        Ok(t)
    }

    // ---- linear structure ----

    fn acc(&self, t: &mut BTreeMap<PbwKey, R::E>, k: PbwKey, c: R::E) {
        if self.ring.is_zero(&c) {
            return;
        }
        match t.get_mut(&k) {
            Some(e) => {
                let s = self.ring.add(e, &c);
                if self.ring.is_zero(&s) {
                    t.remove(&k);
                } else {
                    *e = s;
                }
            }
            None => {
                t.insert(k, c);
            }
        }
    }
    pub fn add(&self, x: &Tri<R::E>, y: &Tri<R::E>) -> Tri<R::E> {
        let mut t = x.terms.clone();
        for (k, c) in &y.terms {
            self.acc(&mut t, k.clone(), c.clone());
        }
        Tri { terms: t }
    }
    pub fn scale(&self, x: &Tri<R::E>, c: &R::E) -> Tri<R::E> {
        let mut t = BTreeMap::new();
        for (k, v) in &x.terms {
            let p = self.ring.mul(v, c);
            if !self.ring.is_zero(&p) {
                t.insert(k.clone(), p);
            }
        }
        Tri { terms: t }
    }
    pub fn neg(&self, x: &Tri<R::E>) -> Tri<R::E> {
        self.scale(x, &self.ring.from_int(-1))
    }
    pub fn sub(&self, x: &Tri<R::E>, y: &Tri<R::E>) -> Tri<R::E> {
        self.add(x, &self.neg(y))
    }

    // ---- one-sided products ----

    /// `x^M · x_{β_j}` on one side (`plus`: a-side, otherwise b-side).
    fn letter(&self, m: &Exps, j: usize, plus: bool) -> OneSided<R::E> {
        let cache = if plus { &self.plus_letter } else { &self.minus_letter };
        if let Some(v) = cache.borrow().get(&(m.clone(), j)) {
            return v.clone();
        }
        let k = m.iter().position(|&x| x > 0);
        let out: Vec<(Exps, R::E)> = match k {
            Some(k) if k < j => {
                let mut rest = m.clone();
                rest[k] -= 1;
                let table = if plus { &self.t.e_pair[&(k, j)] } else { &self.t.f_pair[&(k, j)] };
                let mut acc: HashMap<Exps, R::E> = HashMap::new();
                for (t, c) in table {
                    for (r, d) in self.one_sided(&rest, t, plus).iter() {
                        let v = self.ring.mul(c, d);
                        let e = acc.entry(r.clone()).or_insert_with(|| self.ring.zero());
                        *e = self.ring.add(e, &v);
                    }
                }
                let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !self.ring.is_zero(c)).collect();
                v.sort_by(|a, b| a.0.cmp(&b.0));
                v
            }
            _ => {
                let mut r = m.clone();
                r[j] += 1;
                vec![(r, self.ring.one())]
            }
        };
        let out = Rc::new(out);
        cache.borrow_mut().insert((m.clone(), j), out.clone());
        out
    }

    /// `x^M · x^R` expanded on one side.
    pub(crate) fn one_sided(&self, m: &Exps, r: &Exps, plus: bool) -> OneSided<R::E> {
        let Some(j) = r.iter().rposition(|&x| x > 0) else {
            return Rc::new(vec![(m.clone(), self.ring.one())]);
        };
        if m.iter().all(|&x| x == 0) {
            return Rc::new(vec![(r.clone(), self.ring.one())]);
        }
        let cache = if plus { &self.plus_mul } else { &self.minus_mul };
        if let Some(v) = cache.borrow().get(&(m.clone(), r.clone())) {
            return v.clone();
        }
        let mut r1 = r.clone();
        r1[j] -= 1;
        let mut acc: HashMap<Exps, R::E> = HashMap::new();
        for (t, c) in self.letter(m, j, plus).iter() {
            for (s, d) in self.one_sided(t, &r1, plus).iter() {
                let v = self.ring.mul(c, d);
                let e = acc.entry(s.clone()).or_insert_with(|| self.ring.zero());
                *e = self.ring.add(e, &v);
            }
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !self.ring.is_zero(c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let v = Rc::new(v);
        cache.borrow_mut().insert((m.clone(), r.clone()), v.clone());
        v
    }

    /// `a^M b^P` in canonical form.
    fn ef_mono(&self, m: &Exps, p: &Exps) -> TriList<R::E> {
        let zw = self.zero_wt();
        let (Some(k), Some(l)) = (m.iter().position(|&x| x > 0), p.iter().rposition(|&x| x > 0)) else {
            return Rc::new(vec![((p.clone(), zw, m.clone()), self.ring.one())]);
        };
        if let Some(v) = self.ef.borrow().get(&(m.clone(), p.clone())) {
            return v.clone();
        }
        let mut m1 = m.clone();
        m1[k] -= 1;
        let mut p1 = p.clone();
        p1[l] -= 1;
        // a^{M'} (a_k b_l) b^{P'} with a_k b_l = Σ c b^X k_π a^Y.
        let mut total = BTreeMap::new();
        for ((x, pi, y), c) in &self.t.cross[&(k, l)] {
            let left = Tri { terms: self.ef_mono(&m1, x).iter().cloned().collect() };
            let mut right = Tri::default();
            for ((x2, nu, y2), d) in self.ef_mono(y, &p1).iter() {
                let lam: Wt = pi.iter().zip(nu).map(|(a, b)| a + b).collect();
                // k_π b^{X2} = q^{-(π, wt X2)} b^{X2} k_π.
                let e = -self.pbw.rs().pair_weight_root(pi, &self.pbw.weight(x2));
                self.acc(&mut right.terms, (x2.clone(), lam, y2.clone()), self.ring.mul(d, &self.ring.q_pow(e)));
            }
            let prod = self.mul(&left, &right);
            for (key, v) in prod.terms {
                self.acc(&mut total, key, self.ring.mul(&v, c));
            }
        }
        let v: TriList<R::E> = Rc::new(total.into_iter().collect());
        self.ef.borrow_mut().insert((m.clone(), p.clone()), v.clone());
        v
    }

    /// Product in canonical triangular form.
    pub fn mul(&self, x: &Tri<R::E>, y: &Tri<R::E>) -> Tri<R::E> {
        let rs = self.pbw.rs();
        let mut out = BTreeMap::new();
        for ((n, l, m), c1) in &x.terms {
            for ((p, mu, r), c2) in &y.terms {
                let c12 = self.ring.mul(c1, c2);
                for ((xx, pi, yy), c) in self.ef_mono(m, p).iter() {
                    // b^N k_λ b^X k_π a^Y k_μ a^R.
                    let e = -rs.pair_weight_root(l, &self.pbw.weight(xx)) - rs.pair_weight_root(mu, &self.pbw.weight(yy));
                    let coef = self.ring.mul(&self.ring.mul(&c12, c), &self.ring.q_pow(e));
                    let lam: Wt = (0..l.len()).map(|i| l[i] + pi[i] + mu[i]).collect();
                    let minus = self.one_sided(n, xx, false);
                    let plus = self.one_sided(yy, r, true);
                    for (nn, d1) in minus.iter() {
                        let cd = self.ring.mul(&coef, d1);
                        for (mm, d2) in plus.iter() {
                            self.acc(&mut out, (nn.clone(), lam.clone(), mm.clone()), self.ring.mul(&cd, d2));
                        }
                    }
                }
            }
        }
        Tri { terms: out }
    }

    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a Tri<R::E>>) -> Tri<R::E>
    where
        R::E: 'a,
    {
        xs.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &Tri<R::E>, n: u32) -> Tri<R::E> {
        let mut r = self.one();
        for _ in 0..n {
            r = self.mul(&r, x);
        }
        r
    }

    /// `xy - yx`.
    pub fn commutator(&self, x: &Tri<R::E>, y: &Tri<R::E>) -> Tri<R::E> {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    // ---- (anti)automorphisms ----

    fn from_list(&self, v: &[(PbwKey, R::E)]) -> Tri<R::E> {
        Tri { terms: v.iter().cloned().collect() }
    }

    /// Applies an (anti-)multiplicative map given on root vectors.
    fn apply_map(&self, x: &Tri<R::E>, on_a: &dyn Fn(usize) -> Tri<R::E>, on_b: &dyn Fn(usize) -> Tri<R::E>, on_k: &dyn Fn(&Wt) -> Wt, anti: bool) -> Tri<R::E> {
        let mut out = self.zero();
        let mut a_cache: HashMap<usize, Tri<R::E>> = HashMap::new();
        let mut b_cache: HashMap<usize, Tri<R::E>> = HashMap::new();
        for ((n, l, m), c) in &x.terms {
            // Factors of b^N k_λ a^M from left to right.
            let mut factors: Vec<Tri<R::E>> = Vec::new();
            for j in (0..n.len()).rev() {
                for _ in 0..n[j] {
                    factors.push(b_cache.entry(j).or_insert_with(|| on_b(j)).clone());
                }
            }
            factors.push(self.k(on_k(l)));
            for j in (0..m.len()).rev() {
                for _ in 0..m[j] {
                    factors.push(a_cache.entry(j).or_insert_with(|| on_a(j)).clone());
                }
            }
            if anti {
                factors.reverse();
            }
            let p = self.mul_all(factors.iter());
            out = self.add(&out, &self.scale(&p, c));
        }
        out
    }

    /// Antipode.
    pub fn antipode(&self, x: &Tri<R::E>) -> Tri<R::E> {
        self.apply_map(x, &|j| self.from_list(&self.t.antipode_a[j]), &|j| self.from_list(&self.t.antipode_b[j]), &|l| l.iter().map(|v| -v).collect(), true)
    }

    /// The anti-automorphism swapping `e_i ↔ f_i` and fixing every `k_λ`.
    pub fn sigma(&self, x: &Tri<R::E>) -> Tri<R::E> {
        self.apply_map(x, &|j| self.from_list(&self.t.sigma_a[j]), &|j| self.from_list(&self.t.sigma_b[j]), &|l| l.clone(), true)
    }

    /// `T_i^{±1}`.
    pub fn braid(&self, i: usize, x: &Tri<R::E>, dir: BraidDir) -> Tri<R::E> {
        let d = dir_index(dir);
        let rs = self.pbw.rs();
        let on_k = |l: &Wt| -> Wt { rs.reflect_weight(i, l) };
        self.apply_map(x, &|j| self.from_list(&self.t.braid_a[d][i][j]), &|j| self.from_list(&self.t.braid_b[d][i][j]), &on_k, false)
    }

    /// Counit: the sum of the coefficients of the pure `k_λ` terms.
    pub fn counit(&self, x: &Tri<R::E>) -> R::E {
        let mut s = self.ring.zero();
        for ((n, _, m), c) in &x.terms {
            if n.iter().all(|&v| v == 0) && m.iter().all(|&v| v == 0) {
                s = self.ring.add(&s, c);
            }
        }
        s
    }

    /// The `U⁰` component: `k_λ` terms with empty PBW parts.
    pub fn cartan_part(&self, x: &Tri<R::E>) -> BTreeMap<Wt, R::E> {
        let mut out = BTreeMap::new();
        for ((n, l, m), c) in &x.terms {
            if n.iter().all(|&v| v == 0) && m.iter().all(|&v| v == 0) {
                out.insert(l.clone(), c.clone());
            }
        }
        out
    }

    /// True when `z` commutes with `a_i`, `b_i` and `k_{ϖ_i}` for every `i`.
    pub fn is_central(&self, z: &Tri<R::E>) -> bool {
        self.central_failures(z).is_empty()
    }

    /// Names of the generators that fail to commute with `z`.
    pub fn central_failures(&self, z: &Tri<R::E>) -> Vec<String> {
        self.generators().into_iter().filter(|(_, g)| !self.commutator(z, g).is_empty()).map(|(n, _)| n).collect()
    }

    /// Human-readable form, e.g. `(q^-1) b[0,1,0] k[1,0] a[1,0,0]`.
    pub fn format(&self, x: &Tri<R::E>) -> String {
        if x.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, ((n, l, m), c)) in x.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "({})", self.ring.format(c));
            if n.iter().any(|&v| v > 0) {
                let _ = write!(s, " b{n:?}");
            }
            if l.iter().any(|&v| v != 0) {
                let _ = write!(s, " k{l:?}");
            }
            if m.iter().any(|&v| v > 0) {
                let _ = write!(s, " a{m:?}");
            }
        }
        s
    }
}

impl Pbw {
    /// Generic structure constants, computed on first use.
    pub fn tables(&self) -> Rc<Tables> {
        self.tables_cell().get_or_init(|| Rc::new(Tables::build(self))).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::{q_minus_qinv, Generic};
    use crate::rootlat::RootSystem;

    fn engine(t: char, n: usize) -> Engine<Generic> {
        Engine::new(Generic, Rc::new(Pbw::new(RootSystem::new(t, n).unwrap()).unwrap())).unwrap()
    }

    #[test]
    fn ef_commutation_a1() {
        let e = engine('A', 1);
        let ab = e.mul(&e.a(0), &e.b(0));
        let ba = e.mul(&e.b(0), &e.a(0));
        // a b - b a = (q - q⁻¹)(k_α - k_{-α}).
        let qq = RatFn::from_laurent(q_minus_qinv(1));
        let expect = e.sub(&e.scale(&e.k(vec![2]), &qq), &e.scale(&e.k(vec![-2]), &qq));
        assert_eq!(e.sub(&ab, &ba), expect);
    }

    #[test]
    fn different_simple_generators_commute() {
        let e = engine('A', 2);
        let x = e.mul(&e.a_simple(0), &e.b_simple(1));
        let y = e.mul(&e.b_simple(1), &e.a_simple(0));
        assert_eq!(x, y);
    }

    #[test]
    fn associativity_b2() {
        let e = engine('B', 2);
        let x = e.add(&e.a(1), &e.b(2));
        let y = e.add(&e.mul(&e.b(0), &e.k(vec![1, 0])), &e.a(3));
        let z = e.add(&e.a(0), &e.b(3));
        assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
    }

    #[test]
    fn antipode_is_anti() {
        let e = engine('A', 2);
        let x = e.a(1);
        let y = e.b(0);
        assert_eq!(e.antipode(&e.mul(&x, &y)), e.mul(&e.antipode(&y), &e.antipode(&x)));
    }
}
