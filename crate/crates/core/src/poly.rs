//! Exact rational polynomials and Sturm root counting.
//!
//! The constraint coefficients on a pole line, multiplied by a positive
//! normalisation, are polynomials in a squared coupling variable. Counting their
//! real roots exactly guards the floating-point scans against missing close
//! root pairs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial, `coeffs[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly { coeffs: vec![c] }.trimmed()
    }

    /// `c0 + c1·x`
    pub fn linear(c0: BigRational, c1: BigRational) -> Self {
        Poly { coeffs: vec![c0, c1] }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        Poly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
            let b = other.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        Poly { coeffs: out }.trimmed()
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }.trimmed()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly { coeffs: out }.trimmed()
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        Poly { coeffs }.trimmed()
    }

    /// Remainder of polynomial division.
    pub fn rem(&self, divisor: &Poly) -> Poly {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.coeffs[dd].clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = &r[top] / &lead;
            if !factor.is_zero() {
                for (k, c) in divisor.coeffs.iter().enumerate() {
                    let idx = top - dd + k;
                    r[idx] -= &factor * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly { coeffs: r }.trimmed()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if self.is_zero() || self.degree() == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        let v_lo = sign_changes(&chain, lo);
        let v_hi = sign_changes(&chain, hi);
        v_lo.saturating_sub(v_hi)
    }

    /// Every distinct real root in `(lo, hi]`, ascending, each located to a
    /// relative width of `2⁻⁶⁰` by bisecting on Sturm counts.
    pub fn real_roots(&self, lo: &BigRational, hi: &BigRational) -> Vec<f64> {
        if self.is_zero() || self.degree() == 0 || lo >= hi {
            return Vec::new();
        }
        let chain = self.sturm_chain();
        let two = ratio(2, 1);
        let mut out = Vec::new();
        // (a, b, V(a), V(b)); roots in (a, b] number V(a) − V(b)
        let mut stack = vec![(lo.clone(), hi.clone(), sign_changes(&chain, lo), sign_changes(&chain, hi))];
        while let Some((a, b, va, vb)) = stack.pop() {
            let count = va.saturating_sub(vb);
            if count == 0 {
                continue;
            }
            let width = to_f64(&(&b - &a));
            let scale = to_f64(&a).abs().max(to_f64(&b).abs()).max(f64::MIN_POSITIVE);
            if width <= scale * 2f64.powi(-60) {
                out.push(to_f64(&b));
                continue;
            }
            let mid = (&a + &b) / &two;
            let vm = sign_changes(&chain, &mid);
            // upper half first so the lower half is popped first
            stack.push((mid.clone(), b, vm, vb));
            stack.push((a, mid, va, vm));
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Positive multiple with coprime integer coefficients.
    fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        Poly::from_coeffs(ints.into_iter().map(|c| BigRational::from_integer(c / &gcd)).collect())
    }

    // members are kept primitive: only their signs matter, and it stops coefficient growth
    fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.primitive(), self.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&-BigRational::one()).primitive());
        }
        chain
    }
}

fn sign_changes(chain: &[Poly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let v = p.eval(x);
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

/// Exact rational value of a finite `f64`.
pub fn exact(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::domain(format!("{x} has no exact rational value")))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
