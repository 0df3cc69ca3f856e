//! Sparse polynomials in `x`, `y`, `s` with big-integer coefficients.
//!
//! Terms live in a `BTreeMap` keyed by the exponent triple `[ex, ey, es]`, so
//! structural equality is polynomial equality. Rationals only show up when a
//! polynomial is evaluated or when univariate slices are handed to the root
//! finder.

mod groebner;
mod roots;

pub use groebner::{groebner, ideal_equal, reduce, MonomialOrder};
pub use roots::{real_roots, sturm_count, univariate_real_roots, RootInterval, UniPoly};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial variable. `X` and `Y` double as `x'` and `z` after a change to
/// trace coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    S = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::S];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(DEFAULT_NAMES[self.index()])
    }
}

/// Exponents of `x`, `y`, `s`.
pub type Exp = [u32; 3];

pub const DEFAULT_NAMES: [&str; 3] = ["x", "y", "s"];
pub const TRACE_NAMES: [&str; 3] = ["x'", "z", "s"];

fn total(e: &Exp) -> u32 {
    e[0] + e[1] + e[2]
}

/// Graded lexicographic comparison with `s ≻ y ≻ x`.
pub fn grlex_cmp(a: &Exp, b: &Exp) -> Ordering {
    total(a)
        .cmp(&total(b))
        .then(a[2].cmp(&b[2]))
        .then(a[1].cmp(&b[1]))
        .then(a[0].cmp(&b[0]))
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Exp, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::monomial(c, [0, 0, 0])
    }

    pub fn var(v: Var) -> Poly {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Poly::monomial(1, e)
    }

    pub fn x() -> Poly {
        Poly::var(Var::X)
    }

    pub fn y() -> Poly {
        Poly::var(Var::Y)
    }

    pub fn s() -> Poly {
        Poly::var(Var::S)
    }

    pub fn monomial(c: impl Into<BigInt>, e: Exp) -> Poly {
        let mut p = Poly::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Poly
    where
        I: IntoIterator<Item = (Exp, C)>,
        C: Into<BigInt>,
    {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exp) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(total).max().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree(v) > 0
    }

    /// Terms sorted by decreasing graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(Exp, BigInt)> {
        let mut t: Vec<(Exp, BigInt)> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        t.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        t
    }

    /// Leading exponent and coefficient under graded-lex order.
    pub fn leading(&self) -> Option<(Exp, &BigInt)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_cmp(a.0, b.0))
            .map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// Multiplies by a rational; fails unless every coefficient stays integral.
    pub fn scale_rational(&self, r: &BigRational) -> Result<Poly> {
        let num = self.scale(r.numer());
        num.div_exact(r.denom()).ok_or(Error::NonIntegral)
    }

    /// Divides every coefficient by `k` if all are divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Poly> {
        if k.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.insert(*e, q);
        }
        Some(Poly { terms })
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_monomial(&self, e: &Exp, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(f, d)| ([f[0] + e[0], f[1] + e[1], f[2] + e[2]], d * c))
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let i = v.index();
        let mut p = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                p.add_term(f, c * BigInt::from(e[i]));
            }
        }
        p
    }

    /// Content with the sign of the leading coefficient, and the primitive
    /// part with positive leading coefficient.
    pub fn content_primitive(&self) -> Result<(BigInt, Poly)> {
        let (_, lc) = self.leading().ok_or(Error::ZeroPolynomial)?;
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        if lc.is_negative() {
            g = -g;
        }
        let prim = self.div_exact(&g).expect("content divides every coefficient");
        Ok((g, prim))
    }

    /// Primitive part with positive leading coefficient; zero stays zero.
    pub fn normalized(&self) -> Poly {
        match self.content_primitive() {
            Ok((_, p)) => p,
            Err(_) => Poly::zero(),
        }
    }

    /// Substitutes `q` for the variable `v`.
    pub fn substitute(&self, v: Var, q: &Poly) -> Poly {
        let i = v.index();
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            while powers.len() <= e[i] as usize {
                let next = powers.last().expect("nonempty") * q;
                powers.push(next);
            }
            let mut rest = *e;
            rest[i] = 0;
            out += &powers[e[i] as usize].mul_monomial(&rest, c);
        }
        out
    }

    pub fn eval_rational(&self, pt: &Point<BigRational>) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for v in Var::ALL {
                let k = e[v.index()];
                if k > 0 {
                    let val = pt.get(v).ok_or(Error::MissingVariable(v))?;
                    t *= num_traits::pow(val.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Float evaluation by nested Horner in `s`, then `y`, then `x`.
    pub fn eval_f64(&self, pt: &Point<f64>) -> Result<f64> {
        for v in Var::ALL {
            if self.involves(v) && pt.get(v).is_none() {
                return Err(Error::MissingVariable(v));
            }
        }
        let val = |v: Var| pt.get(v).copied().unwrap_or(0.0);
        Ok(horner3(&self.terms, [val(Var::X), val(Var::Y), val(Var::S)]))
    }

    /// Dense coefficients in `v` after fixing the remaining variables.
    pub fn univariate_in(&self, v: Var, fixed: &Point<BigRational>) -> Result<UniPoly> {
        let n = self.degree(v) as usize;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for w in Var::ALL {
                if w == v || e[w.index()] == 0 {
                    continue;
                }
                let val = fixed.get(w).ok_or(Error::MissingVariable(w))?;
                t *= num_traits::pow(val.clone(), e[w.index()] as usize);
            }
            coeffs[e[v.index()] as usize] += t;
        }
        Ok(UniPoly::new(coeffs))
    }

    /// The single variable this polynomial depends on, if any.
    pub fn sole_var(&self) -> Result<Option<Var>> {
        let used: Vec<Var> = Var::ALL.into_iter().filter(|v| self.involves(*v)).collect();
        match used.len() {
            0 => Ok(None),
            1 => Ok(Some(used[0])),
            _ => Err(Error::NotUnivariate),
        }
    }

    pub fn display_with<'a>(&'a self, names: [&'a str; 3]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

fn horner3(terms: &BTreeMap<Exp, BigInt>, at: [f64; 3]) -> f64 {
    // Group by x exponent, then y, then s, and evaluate innermost-first.
    let mut by_x: BTreeMap<u32, BTreeMap<u32, BTreeMap<u32, f64>>> = BTreeMap::new();
    for (e, c) in terms {
        let c = c.to_f64().unwrap_or(f64::NAN);
        *by_x.entry(e[0]).or_default().entry(e[1]).or_default().entry(e[2]).or_default() += c;
    }
    let horner = |coeffs: Vec<(u32, f64)>, t: f64| -> f64 {
        let mut acc = 0.0;
        let mut deg = coeffs.last().map(|c| c.0).unwrap_or(0);
        for (k, c) in coeffs.into_iter().rev() {
            while deg > k {
                acc *= t;
                deg -= 1;
            }
            acc += c;
        }
        acc * t.powi(deg as i32)
    };
    let xs: Vec<(u32, f64)> = by_x
        .into_iter()
        .map(|(ex, ys)| {
            let ys: Vec<(u32, f64)> = ys
                .into_iter()
                .map(|(ey, ss)| (ey, horner(ss.into_iter().collect(), at[2])))
                .collect();
            (ex, horner(ys, at[1]))
        })
        .collect();
    horner(xs, at[0])
}

/// Assignment of values to some of `x`, `y`, `s`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Point<T> {
    coords: [Option<T>; 3],
}

impl<T> Point<T> {
    pub fn new() -> Point<T> {
        Point { coords: [None, None, None] }
    }

    pub fn xy(x: T, y: T) -> Point<T> {
        Point::new().with(Var::X, x).with(Var::Y, y)
    }

    pub fn with(mut self, v: Var, val: T) -> Point<T> {
        self.coords[v.index()] = Some(val);
        self
    }

    pub fn get(&self, v: Var) -> Option<&T> {
        self.coords[v.index()].as_ref()
    }
}

pub type RationalPoint = Point<BigRational>;

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(DEFAULT_NAMES).fmt(f)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: [&'a str; 3],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || *e == [0, 0, 0] {
                factors.push(a.to_string());
            }
            for i in [2usize, 0, 1] {
                match e[i] {
                    0 => {}
                    1 => factors.push(self.names[i].to_string()),
                    n => factors.push(format!("{}^{}", self.names[i], n)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    e: Exp,
    c: String,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| TermRepr { e, c: c.to_string() })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut p = Poly::zero();
        for t in terms {
            let c: BigInt = t.c.parse().map_err(D::Error::custom)?;
            p.add_term(t.e, c);
        }
        Ok(p)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Poly {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p += rhs;
        p
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p -= rhs;
        p
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                p.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c * d);
            }
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Polynomial ideal given by primitive, sign-normalized, distinct generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<Poly>,
}

impl Ideal {
    /// Drops zeros, normalizes signs and contents, and removes duplicates.
    pub fn new<I: IntoIterator<Item = Poly>>(gens: I) -> Ideal {
        let mut out: Vec<Poly> = Vec::new();
        for g in gens {
            let g = g.normalized();
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal { gens: out }
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.gens.iter().any(|g| g.involves(v))
    }

    pub fn display_with<'a>(&'a self, names: [&'a str; 3]) -> IdealDisplay<'a> {
        IdealDisplay { ideal: self, names }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(DEFAULT_NAMES).fmt(f)
    }
}

pub struct IdealDisplay<'a> {
    ideal: &'a Ideal,
    names: [&'a str; 3],
}

impl fmt::Display for IdealDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ideal.gens.is_empty() {
            return write!(f, "< >");
        }
        let parts: Vec<String> =
            self.ideal.gens.iter().map(|g| g.display_with(self.names).to_string()).collect();
        write!(f, "< {} >", parts.join(", "))
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.gens.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ideal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Ideal::new(Vec::<Poly>::deserialize(d)?))
    }
}

/// Parses a decimal or plain rational literal (`0.25`, `-3/4`, `1e-3`) exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(digits);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// The shortest decimal that round-trips `v`, as an exact rational.
pub fn rational_from_f64(v: f64) -> Option<BigRational> {
    if !v.is_finite() {
        return None;
    }
    parse_rational(&format!("{v:e}"))
}
