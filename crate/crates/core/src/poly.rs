//! Sparse multivariate polynomials and rational functions over Q.

use crate::error::{Result, WzwError};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub type Monomial = Vec<u32>;

/// Named variables shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl VarSet {
    pub fn new(names: &[&str]) -> Self {
        VarSet {
            names: Arc::new(names.iter().map(|s| s.to_string()).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, name: &str) -> Poly {
        let i = self
            .index(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Poly::var(self.len(), i)
    }

    pub fn rvar(&self, name: &str) -> RatFun {
        RatFun::from_poly(self.var(name))
    }

    pub fn constant(&self, c: i64) -> RatFun {
        RatFun::from_poly(Poly::constant(self.len(), rat(c, 1)))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, <BigRational as One>::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(m, <BigRational as One>::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(<BigRational as Zero>::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut p = Poly::zero(self.nvars);
        if c.is_zero() {
            return p;
        }
        for (m, v) in &self.terms {
            p.terms.insert(m.clone(), v * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval<S: Scalar>(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars);
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::from_rational(c);
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replaces every variable by the matching rational function.
    pub fn substitute(&self, vals: &[RatFun]) -> RatFun {
        assert_eq!(vals.len(), self.nvars);
        let n = vals[0].nvars();
        let mut acc = RatFun::constant(n, <BigRational as Zero>::zero());
        for (m, c) in &self.terms {
            let mut t = RatFun::constant(n, c.clone());
            for (v, &e) in vals.iter().zip(m) {
                if e > 0 {
                    t = &t * &v.pow(e as i32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Remainder modulo `v^2 + 1` for variable index `v`.
    pub fn rem_square_plus_one(&self, v: usize) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m[v];
            let mut m2 = m.clone();
            m2[v] = e % 2;
            let sign = if (e / 2) % 2 == 0 { c.clone() } else { -c.clone() };
            p.add_term(m2, sign);
        }
        p
    }

    pub fn fmt_with(&self, vars: &VarSet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        vars.names()[i].clone()
                    } else {
                        format!("{}^{}", vars.names()[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push(format!("{c}"));
            } else if c.is_one() {
                out.push(mono.join("*"));
            } else {
                out.push(format!("{}*{}", c, mono.join("*")));
            }
        }
        out.join(" + ")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(<BigRational as Zero>::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-<BigRational as One>::one())
    }
}

/// `num / den` with `den != 0`; equality by cross-multiplication, no gcd reduction.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars, den.nvars);
        let mut f = RatFun { num, den };
        f.normalize();
        f
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars;
        RatFun::new(p, Poly::one(n))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        RatFun::from_poly(Poly::constant(nvars, c))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.nvars);
            return;
        }
        // keep a monic-ish denominator when it is a constant
        if self.den.terms.len() == 1 {
            let (m, c) = self.den.terms.iter().next().unwrap();
            if m.iter().all(|&e| e == 0) {
                let inv = c.recip();
                self.num = self.num.scale(&inv);
                self.den = Poly::one(self.num.nvars);
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> RatFun {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFun) -> RatFun {
        self * &o.inv()
    }

    pub fn pow(&self, e: i32) -> RatFun {
        let base = if e < 0 { self.inv() } else { self.clone() };
        RatFun::new(
            base.num.pow(e.unsigned_abs()),
            base.den.pow(e.unsigned_abs()),
        )
    }

    pub fn eval<S: Scalar>(&self, point: &[S]) -> Result<S> {
        let d = self.den.eval(point);
        if d.is_zero_value() {
            return Err(WzwError::Pole);
        }
        Ok(self.num.eval(point).div(&d))
    }

    pub fn fmt_with(&self, vars: &VarSet) -> String {
        format!("({}) / ({})", self.num.fmt_with(vars), self.den.fmt_with(vars))
    }
}

impl PartialEq for RatFun {
    fn eq(&self, o: &RatFun) -> bool {
        (&self.num * &o.den) == (&o.num * &self.den)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        RatFun::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun::new(-&self.num, self.den.clone())
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
owned_ops!(Poly);
owned_ops!(RatFun);

/// Evaluates `f` at a point given by variable name.
pub fn ratfun_eval<S: Scalar>(f: &RatFun, vars: &VarSet, point: &HashMap<String, S>) -> Result<S> {
    let pt: Vec<S> = vars
        .names()
        .iter()
        .map(|n| point.get(n).cloned().unwrap_or_else(S::zero))
        .collect();
    f.eval(&pt)
}

pub fn is_nonneg_int(c: &BigRational) -> bool {
    c.is_integer() && !c.is_negative()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.fmt_with(&VarSet::new(&refs)))
    }
}
