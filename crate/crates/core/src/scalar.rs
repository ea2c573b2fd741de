//! Coefficient domains for exact and high-precision evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

pub trait Scalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(c: &BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(c: &BigRational) -> Self {
        c.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// `a + b*sqrt(d)` for a fixed non-square rational `d`; `d = -1` gives Q(i).
#[derive(Clone, Debug)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
    pub d: Option<BigRational>,
}

pub type Gaussian = QuadExt;

impl PartialEq for QuadExt {
    fn eq(&self, o: &QuadExt) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl QuadExt {
    pub fn rational(a: BigRational) -> Self {
        QuadExt {
            a,
            b: <BigRational as Zero>::zero(),
            d: None,
        }
    }

    /// `sqrt(d)`.
    pub fn sqrt(d: BigRational) -> Self {
        QuadExt {
            a: <BigRational as Zero>::zero(),
            b: <BigRational as One>::one(),
            d: Some(d),
        }
    }

    pub fn i() -> Self {
        QuadExt::sqrt(-<BigRational as One>::one())
    }

    pub fn new(a: BigRational, b: BigRational, d: BigRational) -> Self {
        QuadExt { a, b, d: Some(d) }
    }

    fn join(&self, o: &Self) -> Option<BigRational> {
        match (&self.d, &o.d) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixed quadratic extensions");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn norm(&self) -> BigRational {
        let d = self.d.clone().unwrap_or_else(<BigRational as Zero>::zero);
        &self.a * &self.a - &self.b * &self.b * d
    }

    /// Absolute value as f64, for reporting only.
    pub fn abs_f64(&self) -> f64 {
        let f = |x: &BigRational| x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let d = self.d.as_ref().map(f).unwrap_or(0.0);
        if d < 0.0 {
            (f(&self.a).powi(2) + f(&self.b).powi(2) * (-d)).sqrt()
        } else {
            (f(&self.a) + f(&self.b) * d.sqrt()).abs()
        }
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(<BigRational as Zero>::zero())
    }
    fn one() -> Self {
        QuadExt::rational(<BigRational as One>::one())
    }
    fn from_rational(c: &BigRational) -> Self {
        QuadExt::rational(c.clone())
    }
    fn add(&self, o: &Self) -> Self {
        QuadExt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            d: self.join(o),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        QuadExt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            d: self.join(o),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.join(o);
        let dd = d.clone().unwrap_or_else(<BigRational as Zero>::zero);
        QuadExt {
            a: &self.a * &o.a + &self.b * &o.b * dd,
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        }
    }
    fn div(&self, o: &Self) -> Self {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in quadratic extension");
        let t = self.mul(&o.conj());
        QuadExt {
            a: t.a / &n,
            b: t.b / &n,
            d: t.d,
        }
    }
    fn is_zero_value(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Fixed-point complex number `(re + i*im) / 2^bits`.
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

pub const DEFAULT_BITS: u32 = 128;
const GUARD: u32 = 64;

impl HpComplex {
    fn work_bits() -> u32 {
        DEFAULT_BITS + GUARD
    }

    fn scale_one(bits: u32) -> BigInt {
        BigInt::one() << bits
    }

    pub fn from_f64_parts(re: BigInt, im: BigInt) -> Self {
        HpComplex {
            re,
            im,
            bits: Self::work_bits(),
        }
    }

    /// `exp(2 pi i t)` for rational `t`.
    pub fn root_of_unity(t: &BigRational) -> Self {
        let bits = Self::work_bits();
        let pi = pi_fixed(bits);
        // theta = 2 pi t reduced to [0, 2 pi)
        let t = t - t.floor();
        let theta: BigInt = (&pi * BigInt::from(2) * t.numer()) / t.denom();
        // exp(i theta) = (exp(i theta / 2^m))^(2^m)
        let m = 10u32;
        let x: BigInt = theta >> m;
        let one = Self::scale_one(bits);
        let (mut re, mut im) = (one.clone(), BigInt::zero());
        let (mut tre, mut tim) = (one.clone(), BigInt::zero());
        let mut n = 1i64;
        loop {
            // term *= i x / n
            let nre: BigInt = -((&tim * &x) >> bits) / n;
            let nim: BigInt = ((&tre * &x) >> bits) / n;
            tre = nre;
            tim = nim;
            if tre.is_zero() && tim.is_zero() {
                break;
            }
            re += &tre;
            im += &tim;
            n += 1;
        }
        let mut z = HpComplex { re, im, bits };
        for _ in 0..m {
            z = z.mul(&z);
        }
        z
    }

    pub fn abs_f64(&self) -> f64 {
        let f = |x: &BigInt| x.to_string().parse::<f64>().unwrap() / 2f64.powi(self.bits as i32);
        f(&self.re).hypot(f(&self.im))
    }

    /// Magnitude bound below which a value is treated as zero.
    pub fn epsilon() -> f64 {
        2f64.powi(-(DEFAULT_BITS as i32))
    }

    /// Estimated absolute error of values produced by `root_of_unity` and a few ring operations.
    pub fn error_bound() -> f64 {
        2f64.powi(-(DEFAULT_BITS as i32) - 8)
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_string().parse::<f64>().unwrap() / 2f64.powi(self.bits as i32)
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_string().parse::<f64>().unwrap() / 2f64.powi(self.bits as i32)
    }
}

fn atan_inv(n: i64, bits: u32) -> BigInt {
    // atan(1/n) = sum (-1)^k / ((2k+1) n^(2k+1))
    let one = BigInt::one() << bits;
    let n2 = BigInt::from(n * n);
    let mut pow = &one / n;
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    while !pow.is_zero() {
        let term = &pow / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow = &pow / &n2;
        k += 1;
    }
    sum
}

pub fn pi_fixed(bits: u32) -> BigInt {
    let b = bits + 16;
    let v = atan_inv(5, b) * 16 - atan_inv(239, b) * 4;
    v >> 16
}

impl Scalar for HpComplex {
    fn zero() -> Self {
        HpComplex {
            re: BigInt::zero(),
            im: BigInt::zero(),
            bits: Self::work_bits(),
        }
    }
    fn one() -> Self {
        HpComplex {
            re: Self::scale_one(Self::work_bits()),
            im: BigInt::zero(),
            bits: Self::work_bits(),
        }
    }
    fn from_rational(c: &BigRational) -> Self {
        let bits = Self::work_bits();
        HpComplex {
            re: (c.numer() << bits) / c.denom(),
            im: BigInt::zero(),
            bits,
        }
    }
    fn add(&self, o: &Self) -> Self {
        HpComplex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            bits: self.bits,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        HpComplex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
            bits: self.bits,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let b = self.bits;
        HpComplex {
            re: (&self.re * &o.re - &self.im * &o.im) >> b,
            im: (&self.re * &o.im + &self.im * &o.re) >> b,
            bits: b,
        }
    }
    fn div(&self, o: &Self) -> Self {
        let b = self.bits;
        let den = (&o.re * &o.re + &o.im * &o.im) >> b;
        let re = (&self.re * &o.re + &self.im * &o.im) / &den;
        let im = (&self.im * &o.re - &self.re * &o.im) / &den;
        HpComplex { re, im, bits: b }
    }
    fn is_zero_value(&self) -> bool {
        self.abs_f64() < Self::epsilon()
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        Scalar::add(&self, &o)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        Scalar::sub(&self, &o)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        Scalar::mul(&self, &o)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        Scalar::neg(&self)
    }
}

pub fn is_negative(c: &BigRational) -> bool {
    c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn pi_digits() {
        let p = pi_fixed(200);
        let f = p.to_string().parse::<f64>().unwrap() / 2f64.powi(200);
        assert!((f - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn roots_of_unity() {
        let z = HpComplex::root_of_unity(&rat(1, 4));
        assert!(z.re_f64().abs() < 1e-30);
        assert!((z.im_f64() - 1.0).abs() < 1e-30);
        // z^4 = 1 to working precision
        let w = z.mul(&z).mul(&z).mul(&z).sub(&HpComplex::one());
        assert!(w.abs_f64() < 1e-35);
        let z = HpComplex::root_of_unity(&rat(3, 7));
        let mut p = HpComplex::one();
        for _ in 0..7 {
            p = p.mul(&z);
        }
        assert!(p.sub(&HpComplex::one()).abs_f64() < 1e-35);
    }

    #[test]
    fn gaussian_inverse() {
        let z = QuadExt::new(rat(1, 1), rat(2, 1), rat(-1, 1));
        let w = Scalar::div(&QuadExt::one(), &z);
        assert_eq!(Scalar::mul(&z, &w), QuadExt::one());
    }
}
