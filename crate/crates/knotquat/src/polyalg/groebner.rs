//! Reduced Gröbner bases over ℚ.
//!
//! Buchberger's algorithm with the Gebauer–Möller pair update. Coefficients
//! stay integral: every reduction step cross-multiplies instead of dividing,
//! which changes intermediate results only by nonzero rational factors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Exp, Ideal, Poly};

/// Monomial order; both rank `s ≻ y ≻ x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    #[default]
    GradedLex,
    Lex,
}

type Key = [u32; 4];

impl MonomialOrder {
    fn key(self, e: &Exp) -> Key {
        match self {
            MonomialOrder::GradedLex => [e[0] + e[1] + e[2], e[2], e[1], e[0]],
            MonomialOrder::Lex => [e[2], e[1], e[0], 0],
        }
    }

    fn exp(self, k: &Key) -> Exp {
        match self {
            MonomialOrder::GradedLex => [k[3], k[2], k[1]],
            MonomialOrder::Lex => [k[2], k[1], k[0]],
        }
    }
}

/// Polynomial keyed by order position; the last entry is the leading term.
#[derive(Clone, Debug)]
struct GPoly {
    terms: BTreeMap<Key, BigInt>,
}

impl GPoly {
    fn from_poly(p: &Poly, ord: MonomialOrder) -> GPoly {
        GPoly { terms: p.terms().map(|(e, c)| (ord.key(e), c.clone())).collect() }
    }

    fn to_poly(&self, ord: MonomialOrder) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(k, c)| (ord.exp(k), c.clone())))
    }

    fn lead(&self) -> (&Key, &BigInt) {
        self.terms.last_key_value().expect("nonzero polynomial")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if let Some((_, lc)) = self.terms.last_key_value() {
            if lc.is_negative() {
                g = -g;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for c in self.terms.values_mut() {
                *c /= &g;
            }
        }
    }

    fn scale(&mut self, k: &BigInt) {
        if k.is_one() {
            return;
        }
        for c in self.terms.values_mut() {
            *c *= k;
        }
    }

    /// `self -= c · m · g` where `m` is the monomial with exponent `shift`.
    fn sub_shifted(&mut self, g: &GPoly, shift: &Exp, c: &BigInt, ord: MonomialOrder) {
        for (k, d) in &g.terms {
            let e = ord.exp(k);
            let key = ord.key(&[e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]]);
            let entry = self.terms.entry(key).or_default();
            *entry -= c * d;
            if entry.is_zero() {
                self.terms.remove(&key);
            }
        }
    }
}

fn divides(a: &Exp, b: &Exp) -> bool {
    (0..3).all(|i| a[i] <= b[i])
}

fn lcm(a: &Exp, b: &Exp) -> Exp {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

fn coprime(a: &Exp, b: &Exp) -> bool {
    (0..3).all(|i| a[i] == 0 || b[i] == 0)
}

fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Full normal form of `f` modulo `basis`, up to a nonzero scalar.
fn normal_form(f: &GPoly, basis: &[&GPoly], ord: MonomialOrder) -> GPoly {
    let mut p = f.clone();
    let mut r = GPoly { terms: BTreeMap::new() };
    while let Some((&k, c)) = p.terms.last_key_value() {
        let e = ord.exp(&k);
        let c = c.clone();
        let divisor = basis.iter().find(|g| divides(&ord.exp(g.lead().0), &e));
        match divisor {
            Some(g) => {
                let (gk, gc) = g.lead();
                let shift = sub_exp(&e, &ord.exp(gk));
                let d = gc.gcd(&c);
                let a = gc / &d;
                let b = &c / &d;
                if a.is_negative() {
                    p.scale(&-&a);
                    r.scale(&-&a);
                    p.sub_shifted(g, &shift, &-b, ord);
                } else {
                    p.scale(&a);
                    r.scale(&a);
                    p.sub_shifted(g, &shift, &b, ord);
                }
                shrink_common(&mut p, &mut r);
            }
            None => {
                p.terms.remove(&k);
                r.terms.insert(k, c);
            }
        }
    }
    r.make_primitive();
    r
}

fn shrink_common(p: &mut GPoly, r: &mut GPoly) {
    let mut g = BigInt::zero();
    for c in p.terms.values().chain(r.terms.values()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in p.terms.values_mut().chain(r.terms.values_mut()) {
        *c /= &g;
    }
}

fn s_poly(f: &GPoly, g: &GPoly, ord: MonomialOrder) -> GPoly {
    let (fk, fc) = f.lead();
    let (gk, gc) = g.lead();
    let (fe, ge) = (ord.exp(fk), ord.exp(gk));
    let l = lcm(&fe, &ge);
    let d = fc.gcd(gc);
    let mut out = GPoly { terms: BTreeMap::new() };
    out.sub_shifted(f, &sub_exp(&l, &fe), &-(gc / &d), ord);
    out.sub_shifted(g, &sub_exp(&l, &ge), &(fc / &d), ord);
    out
}

struct Buchberger {
    ord: MonomialOrder,
    store: Vec<GPoly>,
    active: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl Buchberger {
    fn lm(&self, i: usize) -> Exp {
        self.ord.exp(self.store[i].lead().0)
    }

    fn pair_lcm(&self, p: &(usize, usize)) -> Exp {
        lcm(&self.lm(p.0), &self.lm(p.1))
    }

    /// Gebauer–Möller update for a new basis element.
    fn update(&mut self, h: GPoly) {
        self.store.push(h);
        let hi = self.store.len() - 1;
        let lh = self.lm(hi);

        let mut c: Vec<usize> = self.active.clone();
        let mut d: Vec<usize> = Vec::new();
        while let Some(g1) = c.pop() {
            let l1 = lcm(&self.lm(g1), &lh);
            let keep = coprime(&self.lm(g1), &lh)
                || !c.iter().chain(d.iter()).any(|&g2| divides(&lcm(&self.lm(g2), &lh), &l1));
            if keep {
                d.push(g1);
            }
        }
        let e: Vec<(usize, usize)> =
            d.into_iter().filter(|&g| !coprime(&self.lm(g), &lh)).map(|g| (g, hi)).collect();

        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let l = self.pair_lcm(&p);
            let drop = divides(&lh, &l)
                && lcm(&self.lm(p.0), &lh) != l
                && lcm(&self.lm(p.1), &lh) != l;
            if !drop {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(e);

        self.active.retain(|&g| !divides(&lh, &self.ord.exp(self.store[g].lead().0)));
        self.active.push(hi);
    }

    fn run(&mut self) {
        while !self.pairs.is_empty() {
            let ord = self.ord;
            let best = (0..self.pairs.len())
                .min_by_key(|&k| ord.key(&self.pair_lcm(&self.pairs[k])))
                .expect("nonempty");
            let (i, j) = self.pairs.swap_remove(best);
            let s = s_poly(&self.store[i], &self.store[j], ord);
            let basis: Vec<&GPoly> = self.active.iter().map(|&k| &self.store[k]).collect();
            let h = normal_form(&s, &basis, ord);
            if !h.is_zero() {
                self.update(h);
            }
        }
    }

    fn reduced(self) -> Vec<GPoly> {
        let ord = self.ord;
        let mut g: Vec<GPoly> = self.active.iter().map(|&k| self.store[k].clone()).collect();
        g.sort_by(|a, b| a.lead().0.cmp(b.lead().0));
        let mut minimal: Vec<GPoly> = Vec::new();
        for p in g {
            let e = ord.exp(p.lead().0);
            if !minimal.iter().any(|q| divides(&ord.exp(q.lead().0), &e)) {
                minimal.push(p);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<&GPoly> =
                minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
            out.push(normal_form(&minimal[k], &others, ord));
        }
        out
    }
}

/// Reduced Gröbner basis of `ideal` over ℚ.
///
/// Generators are returned primitive with positive graded-lex leading
/// coefficient, sorted by increasing leading monomial in `ord`.
pub fn groebner(ideal: &Ideal, ord: MonomialOrder) -> Ideal {
    let mut bb = Buchberger { ord, store: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in ideal.gens() {
        let mut p = GPoly::from_poly(g, ord);
        if p.is_zero() {
            continue;
        }
        if p.terms.len() == 1 && p.lead().0 == &[0, 0, 0, 0] {
            return Ideal::new([Poly::one()]);
        }
        p.make_primitive();
        bb.update(p);
    }
    bb.run();
    let basis = bb.reduced();
    Ideal::new(basis.iter().map(|p| p.to_poly(ord)))
}

/// Normal form of `p` modulo a Gröbner basis, primitive; zero iff `p` lies in
/// the ideal.
pub fn reduce(p: &Poly, basis: &Ideal, ord: MonomialOrder) -> Poly {
    let gs: Vec<GPoly> = basis.gens().iter().map(|g| GPoly::from_poly(g, ord)).collect();
    let refs: Vec<&GPoly> = gs.iter().collect();
    normal_form(&GPoly::from_poly(p, ord), &refs, ord).to_poly(ord).normalized()
}

/// Equality of ideals over ℚ, decided by comparing reduced bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> bool {
    groebner(a, MonomialOrder::GradedLex) == groebner(b, MonomialOrder::GradedLex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> Poly {
        Poly::x()
    }
    fn y() -> Poly {
        Poly::y()
    }
    fn s() -> Poly {
        Poly::s()
    }
    fn c(k: i64) -> Poly {
        Poly::constant(k)
    }

    #[test]
    fn opposite_generators_collapse() {
        let p = c(2) * x() * x() - c(2) * y() - c(1);
        let i = Ideal::new([p.clone(), -p.clone()]);
        let g = groebner(&i, MonomialOrder::GradedLex);
        assert_eq!(g.gens(), &[p]);
    }

    #[test]
    fn small_cases() {
        let g = groebner(&Ideal::new([x(), y()]), MonomialOrder::GradedLex);
        assert_eq!(g.gens(), &[x(), y()]);
        let g = groebner(&Ideal::new([x().pow(2), x().pow(3)]), MonomialOrder::Lex);
        assert_eq!(g.gens(), &[x().pow(2)]);
        let g = groebner(&Ideal::new([x() - c(1), x() - c(2)]), MonomialOrder::Lex);
        assert_eq!(g.gens(), &[Poly::one()]);
        assert!(groebner(&Ideal::default(), MonomialOrder::Lex).is_empty());
    }

    #[test]
    fn lex_elimination() {
        // ⟨x² + y² − 1, x − y⟩ under lex s ≻ y ≻ x eliminates y.
        let i = Ideal::new([x() * x() + y() * y() - c(1), x() - y()]);
        let g = groebner(&i, MonomialOrder::Lex);
        assert_eq!(g.gens(), &[c(2) * x() * x() - c(1), y() - x()]);
    }

    #[test]
    fn trefoil_affine_lex_basis() {
        // s ≻ y ≻ x lex basis of the trefoil affine ideal.
        let p = c(2) * x() * x() - c(2) * y() - c(1);
        let q = c(4) * x() * x() + c(4) * s() * x() - c(3);
        let g = groebner(&Ideal::new([p.clone(), q.clone()]), MonomialOrder::Lex);
        assert_eq!(g.gens(), &[p.clone(), q.clone()]);
        assert!(reduce(&(&p * &s() + &q * &y()), &g, MonomialOrder::Lex).is_zero());
        assert!(!reduce(&s(), &g, MonomialOrder::Lex).is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 1..4)
            .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|((a, b, c), k)| ([a, b, c], k))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn idempotent_and_contains_inputs(f in arb_poly(), g in arb_poly()) {
            let i = Ideal::new([f.clone(), g.clone()]);
            let gb = groebner(&i, MonomialOrder::GradedLex);
            prop_assert_eq!(groebner(&gb, MonomialOrder::GradedLex), gb.clone());
            for h in [&f, &g, &(&f * &g + &f)] {
                prop_assert!(reduce(h, &gb, MonomialOrder::GradedLex).is_zero());
            }
            prop_assert!(ideal_equal(&i, &Ideal::new([f.clone() + &g * &x(), g.clone()])));
        }
    }
}
