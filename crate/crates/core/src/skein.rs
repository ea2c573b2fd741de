//! Automorphism equation systems of the P^H, BMW and G2 planar algebras, their stated solution
//! families, and the parameter values attached to each category.

use crate::error::{Result, WzwError};
use crate::lie::{AlgebraSpec, Family};
use crate::poly::{rat, Poly, RatFun, VarSet};
use crate::scalar::{HpComplex, QuadExt, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const SAMPLE_POINTS: usize = 20;
pub const SAMPLE_HEIGHT: i64 = 10_000;
pub const SAMPLE_SEED: u64 = 0x5eed;
pub const RESIDUAL_TOL: f64 = 1e-25;
const MAX_RESAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SystemName {
    /// Relations (iii)-(vii) of P^H.
    Ph,
    /// Relations (iii)-(ix) of P^H.
    PhFull,
    /// Relation (iii) and Reidemeister 2 of BMW.
    Bmw,
    /// `Bmw` plus the twist relation (i).
    BmwTwist,
    G2,
}

/// `poly = 0`, valid where `denominator != 0`.
#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub poly: Poly,
    pub denominator: Poly,
}

impl Equation {
    fn identity(label: &str, lhs: &RatFun, rhs: &RatFun) -> Self {
        let d = lhs - rhs;
        Equation {
            label: label.into(),
            poly: d.num().clone(),
            denominator: d.den().clone(),
        }
    }

    pub fn as_ratfun(&self) -> RatFun {
        RatFun::new(self.poly.clone(), self.denominator.clone())
    }
}

#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub name: SystemName,
    pub vars: VarSet,
    pub params: Vec<String>,
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
}

const T: usize = 0;
const S: usize = 1;

impl EquationSystem {
    pub fn new(name: SystemName) -> Self {
        match name {
            SystemName::Ph => ph_system(false),
            SystemName::PhFull => ph_system(true),
            SystemName::Bmw => bmw_system(false),
            SystemName::BmwTwist => bmw_system(true),
            SystemName::G2 => g2_system(),
        }
    }

    pub fn all() -> Vec<EquationSystem> {
        [
            SystemName::Ph,
            SystemName::PhFull,
            SystemName::Bmw,
            SystemName::BmwTwist,
            SystemName::G2,
        ]
        .into_iter()
        .map(EquationSystem::new)
        .collect()
    }
}

fn ph_system(full: bool) -> EquationSystem {
    let v = VarSet::new(&["delta", "gamma", "c1", "c2", "c3", "c4"]);
    let d = v.rvar("delta");
    let g = v.rvar("gamma");
    let c = |n: i64| v.constant(n);
    let d2m1 = &(&d * &d) - &c(1);
    let gm1 = &g - &c(1);
    // 2-box pairings of the generators: (iii), (iv), (v)
    let pair = [
        [(&(&d * &d) - &c(2)).div(&d), c(0)],
        [c(0), (&g * &(&(&d * &d * d.clone()) - &(&c(2) * &d))).div(&d2m1)],
    ];
    // triangle contraction indexed by the number of S among its three inputs: (vi)-(ix)
    let big = &(&(&(&(&d * &d) * &(&d * &d)) * &g) + &(&(&d * &d) * &(&(&c(-2) * &(&g * &g)) + &(&g - &c(2)))))
        + &(&c(2) * &(&gm1 * &gm1));
    let tri = [
        [(&(&d * &d) - &c(3)).div(&d), c(0)],
        [c(0), (-&c(1)).div(&d)],
        [(-&(&g * &d)).div(&d2m1), gm1.clone()],
        [
            (&(&(&g * &gm1) * &d) * &d).div(&d2m1),
            big.div(&(&d * &d2m1)),
        ],
    ];
    let phi = [
        [v.rvar("c1"), v.rvar("c2")],
        [v.rvar("c3"), v.rvar("c4")],
    ];
    let mut eqs = vec![];
    for (label, x, y) in [("(iv)", T, T), ("(iii)", T, S), ("(v)", S, S)] {
        let mut lhs = c(0);
        for a in 0..2 {
            for b in 0..2 {
                lhs = &lhs + &(&(&phi[x][a] * &phi[y][b]) * &pair[a][b]);
            }
        }
        eqs.push(Equation::identity(label, &lhs, &pair[x][y]));
    }
    let mut rels = vec![("(vi)", [T, T, T]), ("(vii)", [S, T, T])];
    if full {
        rels.extend([("(viii)", [T, S, S]), ("(ix)", [S, S, S])]);
    }
    for (label, [x, y, z]) in rels {
        let mut lhs = [c(0), c(0)];
        for a in 0..2 {
            for b in 0..2 {
                for e in 0..2 {
                    let w = &(&phi[x][a] * &phi[y][b]) * &phi[z][e];
                    for j in 0..2 {
                        lhs[j] = &lhs[j] + &(&w * &tri[a + b + e][j]);
                    }
                }
            }
        }
        let m = &tri[x + y + z];
        for (j, name) in [(T, "T"), (S, "S")] {
            let rhs = &(&m[T] * &phi[T][j]) + &(&m[S] * &phi[S][j]);
            eqs.push(Equation::identity(&format!("{label}.{name}"), &lhs[j], &rhs));
        }
    }
    EquationSystem {
        name: if full { SystemName::PhFull } else { SystemName::Ph },
        vars: v,
        params: vec!["delta".into(), "gamma".into()],
        unknowns: ["c1", "c2", "c3", "c4"].map(String::from).to_vec(),
        equations: eqs,
    }
}

fn bmw_system(twist: bool) -> EquationSystem {
    let v = VarSet::new(&["q", "r", "alpha", "beta", "gamma"]);
    let (q, r) = (v.rvar("q"), v.rvar("r"));
    let (a, b, g) = (v.rvar("alpha"), v.rvar("beta"), v.rvar("gamma"));
    let one = v.constant(1);
    let zero = v.constant(0);
    let s = &q - &q.inv();
    let delta = &(&r - &r.inv()).div(&s) + &one;
    let mut eqs = vec![
        Equation::identity("(iii)", &(&b - &a), &(&(&g - &one) * &s)),
        Equation::identity(
            "R2.1",
            &(&(&(&a * &b) + &(&g * &g)) - &(&(&a * &g) * &s)),
            &one,
        ),
        Equation::identity(
            "R2.2",
            &(&(&(&(&(&(&a * &a) + &(&b * &b)) + &(&(&a * &b) * &delta)) + &(&a * &g).div(&r))
                + &(&(&g * &b) * &r))
                + &(&(&g * &a) * &s)),
            &zero,
        ),
        Equation::identity("R2.3", &(&g * &(&a + &b)), &zero),
    ];
    if twist {
        // closing one strand: the vertical pair gives the loop value, the cup-cap a strand
        eqs.push(Equation::identity(
            "(i)",
            &(&(&(&a * &delta) + &b) + &(&g * &r)),
            &r,
        ));
    }
    EquationSystem {
        name: if twist { SystemName::BmwTwist } else { SystemName::Bmw },
        vars: v,
        params: vec!["q".into(), "r".into()],
        unknowns: ["alpha", "beta", "gamma"].map(String::from).to_vec(),
        equations: eqs,
    }
}

fn g2_system() -> EquationSystem {
    let v = VarSet::new(&["q", "alpha"]);
    let q = v.rvar("q");
    let a = v.rvar("alpha");
    let sym = |es: &[i32]| {
        es.iter()
            .fold(v.constant(0), |acc, &e| &acc + &(&q.pow(e) + &q.pow(-e)))
    };
    let one = v.constant(1);
    let c_iii = -&sym(&[6, 4, 2]);
    let c_iv = &sym(&[4]) + &one;
    let c_v1 = -&sym(&[2]);
    let c_v2 = &sym(&[2]) + &one;
    // phi scales a diagram by alpha^(number of trivalent vertices)
    let term = |label: &str, coef: &RatFun, lhs_vertices: i32, rhs_vertices: i32| {
        Equation::identity(label, &(coef * &a.pow(lhs_vertices)), &(coef * &a.pow(rhs_vertices)))
    };
    EquationSystem {
        name: SystemName::G2,
        vars: v.clone(),
        params: vec!["q".into()],
        unknowns: vec!["alpha".into()],
        equations: vec![
            term("(iii)", &c_iii, 2, 0),
            term("(iv)", &c_iv, 3, 1),
            term("(v).IH", &c_v1, 4, 2),
            term("(v).cups", &c_v2, 4, 0),
            term("(vi).trees", &one, 5, 3),
            term("(vi).arcs", &one, 5, 1),
        ],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolutionFamily {
    PhiOne(i8, i8),
    PhiTwo(i8, i8),
    PhiThree(i8, i8),
    BmwIdentity,
    BmwNontrivial,
    G2Alpha(i64),
}

impl SolutionFamily {
    pub fn name(&self) -> String {
        let sg = |e: i8| if e > 0 { '+' } else { '-' };
        match self {
            SolutionFamily::PhiOne(a, b) => format!("phi1{}{}", sg(*a), sg(*b)),
            SolutionFamily::PhiTwo(a, b) => format!("phi2{}{}", sg(*a), sg(*b)),
            SolutionFamily::PhiThree(a, b) => format!("phi3{}{}", sg(*a), sg(*b)),
            SolutionFamily::BmwIdentity => "bmw-identity".into(),
            SolutionFamily::BmwNontrivial => "bmw-nontrivial".into(),
            SolutionFamily::G2Alpha(a) => format!("g2-alpha={a}"),
        }
    }

    pub fn applies_to(&self, system: SystemName) -> bool {
        use SystemName::*;
        match self {
            SolutionFamily::PhiOne(..) | SolutionFamily::PhiTwo(..) | SolutionFamily::PhiThree(..) => {
                matches!(system, Ph | PhFull)
            }
            SolutionFamily::BmwIdentity | SolutionFamily::BmwNontrivial => matches!(system, Bmw | BmwTwist),
            SolutionFamily::G2Alpha(_) => system == G2,
        }
    }

    /// Every sign choice of every stated family.
    pub fn stated() -> Vec<SolutionFamily> {
        let mut out = vec![];
        for a in [1, -1] {
            for b in [1, -1] {
                out.extend([
                    SolutionFamily::PhiOne(a, b),
                    SolutionFamily::PhiTwo(a, b),
                    SolutionFamily::PhiThree(a, b),
                ]);
            }
        }
        out.extend([
            SolutionFamily::BmwIdentity,
            SolutionFamily::BmwNontrivial,
            SolutionFamily::G2Alpha(1),
            SolutionFamily::G2Alpha(-1),
        ]);
        out
    }

    /// Values of the unknowns as rational functions of the parameters, when no radical is needed.
    fn symbolic(&self, sys: &EquationSystem) -> Option<Vec<RatFun>> {
        let v = &sys.vars;
        let k = |n: i64| v.constant(n);
        let vals = match self {
            SolutionFamily::PhiOne(a, b) => vec![k(*a as i64), k(0), k(0), k(*b as i64)],
            SolutionFamily::BmwIdentity => vec![k(0), k(0), k(1)],
            SolutionFamily::BmwNontrivial => {
                let s = &v.rvar("q") - &v.rvar("q").inv();
                vec![s.clone(), -&s, k(-1)]
            }
            SolutionFamily::G2Alpha(a) => vec![k(*a)],
            _ => return None,
        };
        let mut full: Vec<RatFun> = v.names().iter().map(|n| v.rvar(n)).collect();
        for (name, val) in sys.unknowns.iter().zip(vals) {
            full[v.index(name).unwrap()] = val;
        }
        Some(full)
    }

    /// Values of the unknowns at a rational parameter point, or `None` at a degenerate point.
    fn sampled(&self, params: &[BigRational]) -> Option<Vec<QuadExt>> {
        let r = |x: BigRational| QuadExt::rational(x);
        let sign = |e: i8| rat(e as i64, 1);
        let one = rat(1, 1);
        match self {
            SolutionFamily::PhiTwo(e1, e2) => {
                let (d, g) = (&params[0], &params[1]);
                let d2 = d * d;
                let den = &d2 * &d2 * g + &d2 * g * g - rat(2, 1) * &d2 * g + &d2 - g * g
                    + rat(2, 1) * g
                    - &one;
                let gm1 = g - &one;
                if den.is_zero() || gm1.is_zero() {
                    return None;
                }
                // c1 = e1 (gamma - 1) sqrt((delta^2 - 1) den) / den
                let rad = (&d2 - &one) * &den;
                if rad.is_zero() || is_rational_square(&rad) {
                    return None;
                }
                let c1 = QuadExt::new(rat(0, 1), sign(*e1) * &gm1 / &den, rad);
                let c2 = Scalar::div(&Scalar::mul(&c1, &r(d.clone())), &r(gm1));
                let c1sq = Scalar::mul(&c1, &c1);
                let c1sq_m1 = Scalar::sub(&c1sq, &QuadExt::one());
                if c1sq_m1.is_zero_value() {
                    return None;
                }
                let c3 = Scalar::div(
                    &Scalar::mul(&r(sign(*e2)), &Scalar::sub(&QuadExt::one(), &c1sq)),
                    &c2,
                );
                let c4 = Scalar::div(&Scalar::mul(&Scalar::mul(&c1, &c2), &c3), &c1sq_m1);
                Some(vec![c1, c2, c3, c4])
            }
            SolutionFamily::PhiThree(e1, e2) => {
                let d = &params[0];
                let rad = d * d - &one;
                if rad.is_zero() || is_rational_square(&rad) {
                    return None;
                }
                let c2 = QuadExt::new(rat(0, 1), sign(*e1) / d, rad);
                let c3 = Scalar::div(&r(sign(*e2)), &c2);
                Some(vec![QuadExt::zero(), c2, c3, QuadExt::zero()])
            }
            _ => None,
        }
    }
}

fn is_rational_square(x: &BigRational) -> bool {
    let sq = |n: &BigInt| !n.is_negative() && &(n.sqrt() * n.sqrt()) == n;
    sq(x.numer()) && sq(x.denom())
}

/// A polynomial constraint on the parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Locus {
    Free,
    /// `v^2 + 1 = 0`.
    SquarePlusOne(String),
    /// `v - 1 = 0`.
    EqualsOne(String),
}

impl Locus {
    /// `""` for the free locus, else the defining equation.
    pub fn describe(&self) -> String {
        match self {
            Locus::Free => String::new(),
            Locus::SquarePlusOne(v) => format!("{v}^2 = -1"),
            Locus::EqualsOne(v) => format!("{v} = 1"),
        }
    }

    pub fn poly(&self, vars: &VarSet) -> Poly {
        let one = Poly::one(vars.len());
        match self {
            Locus::Free => one,
            Locus::SquarePlusOne(v) => &(&vars.var(v) * &vars.var(v)) + &one,
            Locus::EqualsOne(v) => &vars.var(v) - &one,
        }
    }

    /// Whether `p` vanishes identically on the locus.
    pub fn contains_zero_set(&self, vars: &VarSet, p: &Poly) -> bool {
        match self {
            Locus::Free => p.is_zero(),
            Locus::SquarePlusOne(v) => p.rem_square_plus_one(vars.index(v).unwrap()).is_zero(),
            Locus::EqualsOne(v) => {
                let vals: Vec<RatFun> = vars
                    .names()
                    .iter()
                    .map(|n| if n == v { vars.constant(1) } else { vars.rvar(n) })
                    .collect();
                p.substitute(&vals).is_zero()
            }
        }
    }
}

/// The parameter constraint under which a family is a solution.
pub fn locus_condition(family: SolutionFamily) -> Locus {
    match family {
        SolutionFamily::BmwNontrivial => Locus::SquarePlusOne("r".into()),
        SolutionFamily::PhiThree(..) => Locus::EqualsOne("gamma".into()),
        _ => Locus::Free,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Symbolic,
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationResidual {
    pub label: String,
    pub identically_zero: bool,
    pub zero_on_locus: bool,
    /// Largest residual magnitude over the sample points.
    pub max_abs: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub system: SystemName,
    pub family: String,
    pub locus: Locus,
    pub method: Method,
    pub points: usize,
    pub residuals: Vec<EquationResidual>,
}

impl ResidualReport {
    /// Every equation holds on the family's locus.
    pub fn pass(&self) -> bool {
        self.residuals.iter().all(|r| r.zero_on_locus)
    }

    pub fn identically_zero(&self) -> bool {
        self.residuals.iter().all(|r| r.identically_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.residuals.iter().map(|r| r.max_abs).fold(0.0, f64::max)
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-SAMPLE_HEIGHT..=SAMPLE_HEIGHT);
    }
    rat(n, rng.gen_range(1..=SAMPLE_HEIGHT))
}

/// Full variable assignments at random parameter points, avoiding every recorded denominator.
fn sample_points(sys: &EquationSystem, family: SolutionFamily) -> Result<Vec<Vec<QuadExt>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let fixed = match locus_condition(family) {
        Locus::EqualsOne(v) => Some(v),
        _ => None,
    };
    let mut points = vec![];
    let mut attempts = 0;
    while points.len() < SAMPLE_POINTS {
        attempts += 1;
        if attempts > MAX_RESAMPLES {
            return Err(WzwError::Pole);
        }
        let params: Vec<BigRational> = sys
            .params
            .iter()
            .map(|p| {
                if Some(p) == fixed.as_ref() {
                    rat(1, 1)
                } else {
                    random_rational(&mut rng)
                }
            })
            .collect();
        let unknowns = match family.symbolic(sys) {
            Some(vals) => {
                let pt: Vec<BigRational> = sys
                    .vars
                    .names()
                    .iter()
                    .map(|n| {
                        sys.params
                            .iter()
                            .position(|p| p == n)
                            .map(|i| params[i].clone())
                            .unwrap_or_else(|| rat(0, 1))
                    })
                    .collect();
                let us: Option<Vec<QuadExt>> = sys
                    .unknowns
                    .iter()
                    .map(|u| vals[sys.vars.index(u).unwrap()].eval(&pt).ok().map(QuadExt::rational))
                    .collect();
                us
            }
            None => family.sampled(&params),
        };
        let Some(unknowns) = unknowns else { continue };
        let mut full = vec![QuadExt::zero(); sys.vars.len()];
        for (p, x) in sys.params.iter().zip(&params) {
            full[sys.vars.index(p).unwrap()] = QuadExt::rational(x.clone());
        }
        for (u, x) in sys.unknowns.iter().zip(unknowns) {
            full[sys.vars.index(u).unwrap()] = x;
        }
        if sys
            .equations
            .iter()
            .any(|e| e.denominator.eval(&full).is_zero_value())
        {
            continue;
        }
        points.push(full);
    }
    Ok(points)
}

/// Residual of every equation of `sys` under `family`.
pub fn verify_solution(sys: &EquationSystem, family: SolutionFamily) -> Result<ResidualReport> {
    if !family.applies_to(sys.name) {
        return Err(WzwError::InvalidSpec(format!(
            "{} does not belong to {:?}",
            family.name(),
            sys.name
        )));
    }
    let locus = locus_condition(family);
    let points = sample_points(sys, family)?;
    let sampled: Vec<Vec<(bool, f64)>> = sys
        .equations
        .par_iter()
        .map(|e| {
            points
                .iter()
                .map(|pt| {
                    let v = e.poly.eval(pt);
                    (v.is_zero_value(), v.abs_f64())
                })
                .collect()
        })
        .collect();
    let symbolic = family.symbolic(sys);
    let residuals = sys
        .equations
        .iter()
        .zip(&sampled)
        .map(|(e, s)| {
            let max_abs = s.iter().map(|x| x.1).fold(0.0, f64::max);
            let all_zero = s.iter().all(|x| x.0);
            match &symbolic {
                Some(vals) => {
                    let num = e.poly.substitute(vals).num().clone();
                    EquationResidual {
                        label: e.label.clone(),
                        identically_zero: num.is_zero(),
                        zero_on_locus: locus.contains_zero_set(&sys.vars, &num),
                        max_abs,
                    }
                }
                // the locus is imposed on the sample points
                None => EquationResidual {
                    label: e.label.clone(),
                    identically_zero: all_zero && locus == Locus::Free,
                    zero_on_locus: all_zero,
                    max_abs,
                },
            }
        })
        .collect();
    Ok(ResidualReport {
        system: sys.name,
        family: family.name(),
        locus,
        method: if symbolic.is_some() { Method::Symbolic } else { Method::Sampled },
        points: points.len(),
        residuals,
    })
}

/// Parameter values of the planar algebra attached to a category.
#[derive(Clone, Debug)]
pub enum Specialization {
    Hecke { delta: HpComplex, gamma: HpComplex },
    Bmw { q: HpComplex, r: HpComplex },
    G2 { q: HpComplex },
}

fn root(n: i64, d: i64) -> HpComplex {
    HpComplex::root_of_unity(&rat(n, d))
}

pub fn specialize_to_category(spec: &AlgebraSpec) -> Specialization {
    let (r, k) = (spec.rank as i64, spec.level);
    match spec.family {
        Family::A => {
            let n = r + 1 + k;
            // e(x) = exp(x i pi / (2n))
            let e = |x: i64| root(x, 4 * n);
            let delta = Scalar::div(
                &Scalar::sub(&e(2 * (r + 1)), &e(-2 * (r + 1))),
                &Scalar::sub(&e(2), &e(-2)),
            );
            let num = e(4)
                .sub(&e(12 + 4 * (r + 1)))
                .add(&e(8 + 8 * (r + 1)))
                .sub(&e(4 * (r + 1)));
            let den = e(8)
                .sub(&e(12 + 4 * (r + 1)))
                .add(&e(4 + 8 * (r + 1)))
                .sub(&e(4 * (r + 1)));
            Specialization::Hecke {
                delta,
                gamma: num.div(&den),
            }
        }
        Family::B => {
            let n = 4 * (2 * r - 1 + k);
            Specialization::Bmw {
                q: root(2, n),
                r: root(4 * r, n),
            }
        }
        Family::C => {
            let n = 4 * (r + k + 1);
            Specialization::Bmw {
                q: root(1, n),
                r: root(2 * (2 * r + 1) + n, 2 * n),
            }
        }
        Family::G2 => Specialization::G2 {
            q: root(1, 6 * (4 + k)),
        },
    }
}

/// `|r^2 + 1|` at the BMW parameters of a type B or C category.
pub fn bmw_locus_residual(spec: &AlgebraSpec) -> Option<f64> {
    match specialize_to_category(spec) {
        Specialization::Bmw { q, r } => {
            let sys = EquationSystem::new(SystemName::BmwTwist);
            let locus = locus_condition(SolutionFamily::BmwNontrivial).poly(&sys.vars);
            let pt = [q, r, HpComplex::zero(), HpComplex::zero(), HpComplex::zero()];
            Some(locus.eval(&pt).abs_f64())
        }
        _ => None,
    }
}

/// Whether the BMW planar algebra of `spec` admits its non-trivial automorphism.
pub fn bmw_exceptional(spec: &AlgebraSpec) -> bool {
    bmw_locus_residual(spec).is_some_and(|x| x < RESIDUAL_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The seven displayed P^H equations, transcribed term by term.
    fn displayed_ph() -> Vec<RatFun> {
        let v = VarSet::new(&["delta", "gamma", "c1", "c2", "c3", "c4"]);
        let d = v.rvar("delta");
        let g = v.rvar("gamma");
        let [c1, c2, c3, c4] = ["c1", "c2", "c3", "c4"].map(|n| v.rvar(n));
        let k = |n: i64| v.constant(n);
        let dd = &d * &d;
        let d2m1 = &dd - &k(1);
        let gm1 = &g - &k(1);
        let a = &d - &k(2).div(&d);
        let bb = (&(&d * &(&dd - &k(2))) * &g).div(&d2m1);
        let p = &(&(&(&dd * &dd) * &g) + &(&dd * &(&(&k(-2) * &(&g * &g)) + &(&g - &k(2)))))
            + &(&k(2) * &(&gm1 * &gm1));
        let pp = p.div(&(&d * &d2m1));
        let cube = |x: &RatFun| x.clone() * x.clone() * x.clone();
        let sq = |x: &RatFun| x.clone() * x.clone();
        let (c1, c2, c3, c4, d, g, dd, gm1, d2m1) = (
            c1.clone(), c2.clone(), c3.clone(), c4.clone(), d.clone(), g.clone(), dd.clone(), gm1.clone(), d2m1.clone(),
        );
        vec![
            a.clone() - (sq(&c1) * a.clone() + sq(&c2) * bb.clone()),
            -(c1.clone() * c3.clone() * a.clone() + c2.clone() * c4.clone() * bb.clone()),
            bb.clone() - (sq(&c3) * a.clone() + sq(&c4) * bb.clone()),
            (c1.clone() * (dd.clone() - k(3))).div(&d)
                - ((cube(&c1) * (dd.clone() - k(3))).div(&d)
                    - (k(3) * c1.clone() * sq(&c2) * d.clone() * g.clone()).div(&d2m1)
                    + (cube(&c2) * dd.clone() * gm1.clone() * g.clone()).div(&d2m1)),
            (c2.clone() * (dd.clone() - k(3))).div(&d)
                - ((-(k(3) * sq(&c1) * c2.clone())).div(&d)
                    + k(3) * c1.clone() * sq(&c2) * gm1.clone()
                    + cube(&c2) * pp.clone()),
            (-c3.clone()).div(&d)
                - ((sq(&c1) * c3.clone() * (dd.clone() - k(3))).div(&d)
                    - (d.clone() * g.clone() * (k(2) * c1.clone() * c2.clone() * c4.clone() + sq(&c2) * c3.clone()))
                        .div(&d2m1)
                    + (sq(&c2) * c4.clone() * dd.clone() * gm1.clone() * g.clone()).div(&d2m1)),
            (-c4.clone()).div(&d)
                - ((-(sq(&c1) * c4.clone() + k(2) * c1.clone() * c2.clone() * c3.clone())).div(&d)
                    + gm1.clone() * (k(2) * c1.clone() * c2.clone() * c4.clone() + sq(&c2) * c3.clone())
                    + sq(&c2) * c4.clone() * pp.clone()),
        ]
    }

    #[test]
    fn ph_system_matches_displayed_equations() {
        let sys = EquationSystem::new(SystemName::Ph);
        assert_eq!(sys.equations.len(), 7);
        for (e, shown) in sys.equations.iter().zip(displayed_ph()) {
            assert_eq!(e.as_ratfun(), -shown, "{}", e.label);
        }
        assert_eq!(EquationSystem::new(SystemName::PhFull).equations.len(), 11);
    }

    #[test]
    fn ph_families() {
        let ph = EquationSystem::new(SystemName::Ph);
        let full = EquationSystem::new(SystemName::PhFull);
        for a in [1, -1] {
            for b in [1, -1] {
                let r = verify_solution(&ph, SolutionFamily::PhiOne(a, b)).unwrap();
                assert!(r.identically_zero() && r.method == Method::Symbolic);
                let r = verify_solution(&ph, SolutionFamily::PhiTwo(a, b)).unwrap();
                assert!(r.pass() && r.method == Method::Sampled && r.points == SAMPLE_POINTS);
                assert!(verify_solution(&ph, SolutionFamily::PhiThree(a, b)).unwrap().pass());
                // the remaining relations keep only matching signs when gamma != 1
                let r = verify_solution(&full, SolutionFamily::PhiOne(a, b)).unwrap();
                assert_eq!(r.pass(), a == b);
                // c2 and c3 both carry e1, so e1 -> -e1 negates phi outright; e2 decides
                let r = verify_solution(&full, SolutionFamily::PhiTwo(a, b)).unwrap();
                assert_eq!(r.pass(), b == 1);
                if b != 1 {
                    assert!(r.max_abs() > 1e-3);
                }
                assert!(verify_solution(&full, SolutionFamily::PhiThree(a, b)).unwrap().pass());
            }
        }
    }

    #[test]
    fn phi_three_needs_gamma_one() {
        let v = VarSet::new(&["delta", "gamma", "c1", "c2", "c3", "c4"]);
        assert_eq!(
            locus_condition(SolutionFamily::PhiThree(1, 1)).poly(&v),
            &v.var("gamma") - &Poly::one(6)
        );
        assert_eq!(locus_condition(SolutionFamily::PhiOne(1, 1)).poly(&v), Poly::one(6));
        // away from gamma = 1 the first equation fails: c2^2 = (delta^2-1)/delta^2 is not forced
        let sys = EquationSystem::new(SystemName::Ph);
        let d = rat(7, 3);
        let g = rat(5, 2);
        let vals = SolutionFamily::PhiThree(1, 1).sampled(&[d.clone(), g.clone()]).unwrap();
        let mut pt = vec![QuadExt::rational(d), QuadExt::rational(g)];
        pt.extend(vals);
        assert!(sys.equations.iter().any(|e| !e.poly.eval(&pt).is_zero_value()));
    }

    #[test]
    fn bmw_families() {
        let bmw = EquationSystem::new(SystemName::Bmw);
        let tw = EquationSystem::new(SystemName::BmwTwist);
        for sys in [&bmw, &tw] {
            let r = verify_solution(sys, SolutionFamily::BmwIdentity).unwrap();
            assert!(r.identically_zero());
        }
        assert!(verify_solution(&bmw, SolutionFamily::BmwNontrivial).unwrap().identically_zero());
        let r = verify_solution(&tw, SolutionFamily::BmwNontrivial).unwrap();
        assert!(!r.identically_zero());
        assert!(r.pass());
        let twist = r.residuals.iter().find(|x| x.label == "(i)").unwrap();
        assert!(!twist.identically_zero && twist.zero_on_locus);
        // the swapped closure convention is not divisible by r^2 + 1
        let v = &tw.vars;
        let s = &v.rvar("q") - &v.rvar("q").inv();
        let delta = &(&v.rvar("r") - &v.rvar("r").inv()).div(&s) + &v.constant(1);
        let swapped = &(&(&(-&s) * &delta) + &s) - &(&v.constant(2) * &v.rvar("r"));
        assert!(!Locus::SquarePlusOne("r".into()).contains_zero_set(v, swapped.num()));
    }

    #[test]
    fn g2_alpha() {
        let sys = EquationSystem::new(SystemName::G2);
        for a in [1, -1] {
            assert!(verify_solution(&sys, SolutionFamily::G2Alpha(a)).unwrap().identically_zero());
        }
        for a in [0, 2, -2] {
            let r = verify_solution(&sys, SolutionFamily::G2Alpha(a)).unwrap();
            assert!(!r.pass());
            assert!(!r.residuals[0].zero_on_locus);
        }
    }

    #[test]
    fn wrong_system_is_rejected() {
        let sys = EquationSystem::new(SystemName::G2);
        assert!(verify_solution(&sys, SolutionFamily::BmwIdentity).is_err());
    }

    #[test]
    fn bmw_locus_at_exceptional_levels() {
        for r in 1..=8usize {
            for k in 1..=8i64 {
                let c = AlgebraSpec::c(r, k);
                let x = bmw_locus_residual(&c).unwrap();
                if k == r as i64 {
                    assert!(x < RESIDUAL_TOL, "C r={r} k={k} {x}");
                } else {
                    assert!(x > 1e-3, "C r={r} k={k} {x}");
                }
                if r >= 2 {
                    let b = AlgebraSpec::b(r, k);
                    assert_eq!(bmw_exceptional(&b), k == 2 * r as i64 + 1, "B r={r} k={k}");
                }
            }
        }
        assert!(bmw_locus_residual(&AlgebraSpec::g2(3)).is_none());
    }

    #[test]
    fn specialized_parameters() {
        // sl2-like check: delta is the quantum integer [r+1]
        if let Specialization::Hecke { delta, gamma } = specialize_to_category(&AlgebraSpec::a(2, 3)) {
            let t = std::f64::consts::PI / 6.0;
            let expect = (3.0 * t).sin() / t.sin();
            assert!((delta.re_f64() - expect).abs() < 1e-12 && delta.im_f64().abs() < 1e-25);
            assert!(gamma.abs_f64().is_finite());
        } else {
            panic!("type A gives Hecke parameters");
        }
        if let Specialization::G2 { q } = specialize_to_category(&AlgebraSpec::g2(4)) {
            let mut p = HpComplex::one();
            for _ in 0..48 {
                p = p.mul(&q);
            }
            assert!(p.sub(&HpComplex::one()).abs_f64() < RESIDUAL_TOL);
        }
    }
}
