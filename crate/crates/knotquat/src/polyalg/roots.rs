//! Real root isolation for univariate rational polynomials.
//!
//! Isolation uses the Sturm sequence of the square-free part, then plain
//! bisection on sign changes until each interval is narrower than `eps`.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{rational_from_f64, Poly};
use crate::error::{Error, Result};

/// Dense univariate polynomial, `coeffs[k]` multiplying `t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// Quotient and remainder of division by a nonzero `d`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let f = r.last().expect("nonempty") / d.lead();
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) && r.len() > dd {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free(&self) -> UniPoly {
        let d = self.derivative();
        if d.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&d);
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Upper bound on the absolute value of every root.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.lead().abs();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = c.abs() / &lead;
            if r > m {
                m = r;
            }
        }
        m + BigRational::from_integer(1.into())
    }
}

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(UniPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
    seq
}

fn variations(seq: &[UniPoly], t: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let v = p.eval(t);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_count(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> usize {
    if p.is_zero() || lo >= hi {
        return 0;
    }
    let seq = sturm_sequence(&p.square_free());
    variations(&seq, lo).saturating_sub(variations(&seq, hi))
}

/// A closed interval containing exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Isolates every real root of `p` in `[lo, hi]` to width below `eps`,
/// in increasing order.
pub fn real_roots(p: &UniPoly, lo: &BigRational, hi: &BigRational, eps: f64) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let eps = rational_from_f64(eps)
        .filter(|e| e.is_positive())
        .ok_or_else(|| Error::Argument("precision must be positive".into()))?;
    let sf = p.square_free();
    let mut out = Vec::new();
    if lo > hi || sf.degree() == Some(0) {
        return Ok(out);
    }
    if sf.degree() == Some(1) {
        let c = sf.coeffs();
        let t = -&c[0] / &c[1];
        if &t >= lo && &t <= hi {
            out.push(RootInterval { lo: t.clone(), hi: t });
        }
        return Ok(out);
    }
    let seq = sturm_sequence(&sf);
    if sf.eval(lo).is_zero() {
        out.push(RootInterval { lo: lo.clone(), hi: lo.clone() });
    }
    let two = BigRational::from_integer(2.into());
    let mut stack = vec![(lo.clone(), hi.clone())];
    let mut isolated = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let n = variations(&seq, &a).saturating_sub(variations(&seq, &b));
        match n {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let mut m = (&a + &b) / &two;
                let mut k = 3;
                while sf.eval(&m).is_zero() {
                    m = &a + (&b - &a) * BigRational::new(1.into(), k.into());
                    k += 1;
                }
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    for (a, b) in isolated {
        out.push(refine(&sf, a, b, &eps));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Bisects `(a, b]`, which holds one simple root, down to width `eps`.
fn refine(p: &UniPoly, mut a: BigRational, mut b: BigRational, eps: &BigRational) -> RootInterval {
    let two = BigRational::from_integer(2.into());
    let fb = p.eval(&b);
    if fb.is_zero() {
        return RootInterval { lo: b.clone(), hi: b };
    }
    let sb = fb.is_positive();
    while &b - &a >= *eps {
        let m = (&a + &b) / &two;
        let fm = p.eval(&m);
        if fm.is_zero() {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if fm.is_positive() == sb {
            b = m;
        } else {
            a = m;
        }
    }
    RootInterval { lo: a, hi: b }
}

/// Real roots of a polynomial in a single variable over `[lo, hi]`.
pub fn univariate_real_roots(p: &Poly, lo: &BigRational, hi: &BigRational, eps: f64) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let var = match p.sole_var()? {
        Some(v) => v,
        None => return Ok(Vec::new()),
    };
    let u = p.univariate_in(var, &super::Point::new())?;
    real_roots(&u, lo, hi, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Var;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn uni(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| r(c, 1)).collect())
    }

    #[test]
    fn golden_quadratic() {
        // 1 − 2y − 4y²
        let p = uni(&[1, -2, -4]);
        let roots = real_roots(&p, &r(-10, 1), &r(10, 1), 1e-12).unwrap();
        let expected = [(-1.0 - 5f64.sqrt()) / 4.0, (-1.0 + 5f64.sqrt()) / 4.0];
        assert_eq!(roots.len(), 2);
        for (root, e) in roots.iter().zip(expected) {
            assert!(root.width() < r(1, 1_000_000_000_000));
            assert!((root.to_f64() - e).abs() < 1e-12);
        }
    }

    #[test]
    fn simple_cases() {
        let x = Poly::var(Var::X);
        let p = &x * &x - Poly::one();
        let roots = univariate_real_roots(&p, &r(0, 1), &r(2, 1), 1e-12).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].lo, r(1, 1));
        let q = &x * &x + Poly::one();
        assert!(univariate_real_roots(&q, &r(-10, 1), &r(10, 1), 1e-12).unwrap().is_empty());
        assert!(matches!(
            univariate_real_roots(&Poly::zero(), &r(0, 1), &r(1, 1), 1e-3),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn repeated_roots_reported_once() {
        // (t − 1)²(t + 2)
        let p = uni(&[2, -3, 0, 1]);
        let roots = real_roots(&p, &r(-5, 1), &r(5, 1), 1e-9).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].to_f64() + 2.0).abs() < 1e-9);
        assert!((roots[1].to_f64() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn left_endpoint_included() {
        let p = uni(&[0, 1]);
        let roots = real_roots(&p, &r(0, 1), &r(1, 1), 1e-6).unwrap();
        assert_eq!(roots.len(), 1);
    }

    proptest! {
        #[test]
        fn count_matches_sturm(rts in proptest::collection::vec(-20i64..20, 1..5), extra in 0i64..3) {
            // ∏(4t − rᵢ) · (t² + extra)
            let mut p = uni(&[1]);
            for &k in &rts {
                p = mul(&p, &uni(&[-k, 4]));
            }
            if extra > 0 {
                p = mul(&p, &uni(&[extra, 0, 1]));
            }
            let (lo, hi) = (r(-6, 1), r(6, 1));
            let roots = real_roots(&p, &lo, &hi, 1e-10).unwrap();
            let mut distinct: Vec<i64> = rts.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(roots.len(), distinct.len());
            prop_assert_eq!(roots.len(), sturm_count(&p, &r(-7, 1), &hi));
            for (root, k) in roots.iter().zip(distinct) {
                prop_assert!((root.to_f64() - k as f64 / 4.0).abs() < 1e-10);
            }
        }
    }

    fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut out = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UniPoly::new(out)
    }
}
