//! Exact twists, quantum dimensions and a floating S-matrix oracle.

use crate::error::{Result, WzwError};
use crate::fusion::FusionRing;
use crate::lie::{alcove, max_weyl_bound, weyl_order, AlgebraSpec, LieData, SignRule, Weight};
use crate::phase::RationalPhase;
use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest ring for which `verlinde_check` evaluates the full triple sum.
pub const VERLINDE_DIRECT_LIMIT: usize = 120;
pub const VERLINDE_TOL: f64 = 1e-6;
pub const S_TOL: f64 = 1e-9;

pub fn twist(spec: &AlgebraSpec, lambda: &Weight) -> RationalPhase {
    let lie = LieData::new(*spec);
    twist_with_rule(&lie, lambda, lie.sign_rule)
}

/// `lambda K (lambda+2)^T / D(k)`, plus 1/2 when the sign prefactor is negative.
pub fn twist_with_rule(lie: &LieData, lambda: &Weight, rule: SignRule) -> RationalPhase {
    let l = &lambda.0;
    let mut acc = Ratio::<i64>::from_integer(0);
    for (i, li) in l.iter().enumerate() {
        for (j, lj) in l.iter().enumerate() {
            acc += lie.killing[i][j] * (li * (lj + 2));
        }
    }
    let e = acc / lie.twist_den;
    let t = RationalPhase::new(*e.numer(), *e.denom());
    let weighted: i64 = l.iter().enumerate().map(|(j, x)| (j as i64 + 1) * x).sum();
    let odd = match rule {
        SignRule::None => false,
        SignRule::TypeA => (lie.rank() as i64 * weighted) % 2 != 0,
        SignRule::TypeALiteral => weighted % 2 != 0,
        SignRule::TypeC => l.iter().step_by(2).sum::<i64>() % 2 != 0,
    };
    if odd {
        t + RationalPhase::half()
    } else {
        t
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistTable {
    pub spec: AlgebraSpec,
    pub twists: Vec<RationalPhase>,
}

impl TwistTable {
    pub fn new(ring: &FusionRing) -> Self {
        let lie = LieData::new(ring.spec);
        let twists = ring
            .basis
            .iter()
            .map(|w| twist_with_rule(&lie, w, lie.sign_rule))
            .collect();
        TwistTable {
            spec: ring.spec,
            twists,
        }
    }

    pub fn get(&self, i: usize) -> RationalPhase {
        self.twists[i]
    }
}

/// Quantum Weyl dimension `prod sin(pi (lambda+rho, a)/kappa) / sin(pi (rho, a)/kappa)`.
pub fn qdim(spec: &AlgebraSpec, lambda: &Weight) -> f64 {
    qdim_with(&LieData::new(*spec), lambda)
}

pub fn qdim_with(lie: &LieData, lambda: &Weight) -> f64 {
    let kappa = (lie.spec.level + lie.dual_coxeter) as f64 * lie.form_scale as f64;
    let lr: Vec<i64> = lambda.0.iter().map(|x| x + 1).collect();
    lie.positive_roots
        .iter()
        .map(|a| {
            (PI * lie.inner(&lr, a) as f64 / kappa).sin()
                / (PI * lie.inner(&lie.rho, a) as f64 / kappa).sin()
        })
        .product()
}

#[derive(Clone, Debug)]
pub struct SMatrixOracle {
    pub spec: AlgebraSpec,
    pub n: usize,
    /// Row-major, normalized unitary with `S_00 > 0`.
    pub s: Vec<Complex64>,
    pub symmetry_error: f64,
    pub unitarity_error: f64,
}

impl SMatrixOracle {
    pub fn at(&self, a: usize, b: usize) -> Complex64 {
        self.s[a * self.n + b]
    }
}

/// Kac-Peterson Weyl sum `sum_w eps(w) exp(-2 pi i (w(lambda+rho), mu+rho)/kappa)`.
pub fn smatrix_oracle(spec: &AlgebraSpec) -> Result<SMatrixOracle> {
    let order = weyl_order(spec.family, spec.rank);
    let bound = max_weyl_bound();
    if order > bound {
        return Err(WzwError::WeylBoundExceeded { order, bound });
    }
    let lie = LieData::new(*spec);
    let basis = alcove(spec);
    let n = basis.len();
    let r = spec.rank;
    let modulus = lie.form_scale * (spec.level + lie.dual_coxeter);
    let table: Vec<Complex64> = (0..modulus)
        .map(|e| Complex64::from_polar(1.0, -2.0 * PI * e as f64 / modulus as f64))
        .collect();
    let shifted: Vec<Vec<i64>> = basis
        .iter()
        .map(|w| w.0.iter().map(|x| x + 1).collect())
        .collect();
    // (x, mu+rho) = x . F(mu+rho) with F the integer form
    let dual: Vec<Vec<i64>> = shifted
        .iter()
        .map(|m| {
            (0..r)
                .map(|i| (0..r).map(|j| lie.form_int[i][j] * m[j]).sum())
                .collect()
        })
        .collect();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let orbit = lie.orbit_with_signs(&shifted[a]);
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            for (b, fb) in dual.iter().enumerate().skip(a) {
                let mut sum = Complex64::new(0.0, 0.0);
                for (v, odd) in &orbit {
                    let e: i64 = v.iter().zip(fb).map(|(x, y)| x * y).sum();
                    let z = table[e.rem_euclid(modulus) as usize];
                    if *odd {
                        sum -= z;
                    } else {
                        sum += z;
                    }
                }
                row[b] = sum;
            }
            row
        })
        .collect();
    let mut s = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for b in a..n {
            s[a * n + b] = rows[a][b];
            s[b * n + a] = rows[a][b];
        }
    }
    let norm: f64 = (0..n).map(|b| s[b].norm_sqr()).sum::<f64>().sqrt();
    let phase = s[0] / s[0].norm();
    let fix = phase.conj() / norm;
    for z in s.iter_mut() {
        *z *= fix;
    }
    let mut oracle = SMatrixOracle {
        spec: *spec,
        n,
        s,
        symmetry_error: 0.0,
        unitarity_error: 0.0,
    };
    oracle.unitarity_error = unitarity_error(&oracle);
    oracle.symmetry_error = 0.0;
    Ok(oracle)
}

fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            for k in 0..n {
                let x = a[i * n + k];
                for j in 0..n {
                    row[j] += x * b[k * n + j];
                }
            }
            row
        })
        .collect();
    rows.concat()
}

/// `max |S S^dagger - I|`.
pub fn unitarity_error(s: &SMatrixOracle) -> f64 {
    let n = s.n;
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut worst: f64 = 0.0;
            for b in 0..n {
                let mut z = Complex64::new(0.0, 0.0);
                for x in 0..n {
                    z += s.at(a, x) * s.at(b, x).conj();
                }
                if a == b {
                    z -= 1.0;
                }
                worst = worst.max(z.norm());
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

/// `max |(ST)^3 - c S^2|` for the least-squares constant `c`.
pub fn st_relation_error(s: &SMatrixOracle, twists: &TwistTable) -> f64 {
    let n = s.n;
    let mut st = s.s.clone();
    for a in 0..n {
        let (c, si) = twists.twists[a].to_complex();
        let t = Complex64::new(c, si);
        for b in 0..n {
            st[b * n + a] *= t;
        }
    }
    let st2 = matmul(&st, &st, n);
    let st3 = matmul(&st2, &st, n);
    let s2 = matmul(&s.s, &s.s, n);
    let num: Complex64 = s2.iter().zip(&st3).map(|(b, a)| b.conj() * a).sum();
    let den: f64 = s2.iter().map(|b| b.norm_sqr()).sum();
    let c = num / den;
    st3.iter()
        .zip(&s2)
        .map(|(a, b)| (a - c * b).norm())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerlindeMethod {
    /// `max |N - sum_x S_ax S_bx conj(S_cx) / S_0x|` over all triples.
    TripleSum,
    /// `max_{a,x} ||(N_a S - S D_a)_x||_2`, an upper bound on the triple-sum deviation.
    CertifiedBound,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VerlindeReport {
    pub method: VerlindeMethod,
    pub max_deviation: f64,
    pub pass: bool,
}

pub fn verlinde_check(ring: &FusionRing, s: &SMatrixOracle) -> VerlindeReport {
    assert_eq!(ring.n(), s.n, "ring and S-matrix disagree in size");
    let (method, dev) = if ring.n() <= VERLINDE_DIRECT_LIMIT {
        (VerlindeMethod::TripleSum, verlinde_triple_sum(ring, s))
    } else {
        (VerlindeMethod::CertifiedBound, verlinde_bound(ring, s))
    };
    VerlindeReport {
        method,
        max_deviation: dev,
        pass: dev < VERLINDE_TOL,
    }
}

fn verlinde_triple_sum(ring: &FusionRing, s: &SMatrixOracle) -> f64 {
    let n = ring.n();
    let u = ring.unit;
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut worst: f64 = 0.0;
            let mut w = vec![Complex64::new(0.0, 0.0); n];
            for b in a..n {
                for x in 0..n {
                    w[x] = s.at(a, x) * s.at(b, x) / s.at(u, x);
                }
                for c in 0..n {
                    let v: Complex64 = (0..n).map(|x| w[x] * s.at(c, x).conj()).sum();
                    let d = (v - ring.mult(a, b, c) as f64).norm();
                    worst = worst.max(d);
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

fn verlinde_bound(ring: &FusionRing, s: &SMatrixOracle) -> f64 {
    let n = ring.n();
    let u = ring.unit;
    (0..n)
        .into_par_iter()
        .map(|a| {
            let d: Vec<Complex64> = (0..n).map(|y| s.at(a, y) / s.at(u, y)).collect();
            let mut worst: f64 = 0.0;
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            for x in 0..n {
                for y in 0..n {
                    row[y] = -s.at(x, y) * d[y];
                }
                for &(c, m) in ring.product(a, x) {
                    let base = c as usize * n;
                    for y in 0..n {
                        row[y] += s.s[base + y] * m as f64;
                    }
                }
                let e: f64 = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                worst = worst.max(e);
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

/// Order of an invertible object under fusion.
pub fn current_order(ring: &FusionRing, g: usize) -> usize {
    let mut x = g;
    let mut m = 1;
    while x != ring.unit {
        x = ring.product(g, x)[0].0 as usize;
        m += 1;
    }
    m
}

/// The `n mod M` with double braiding `exp(2 pi i n/M)`, from `t(gX) - t(g) - t(X)`.
pub fn monodromy_exponent(
    ring: &FusionRing,
    twists: &TwistTable,
    g: usize,
    x: usize,
) -> Result<i64> {
    let m = current_order(ring, g) as i64;
    let gx = ring.product(g, x);
    if gx.len() != 1 || gx[0].1 != 1 {
        return Err(WzwError::InvariantViolation(format!(
            "{} is not invertible",
            ring.names[g]
        )));
    }
    let d = twists.get(gx[0].0 as usize) - twists.get(g) - twists.get(x);
    let scaled = d.scale(m);
    if !scaled.is_zero() {
        return Err(WzwError::NonQuantizedMonodromy {
            g: ring.names[g].clone(),
            x: ring.names[x].clone(),
            value: d.to_string(),
        });
    }
    Ok(d.num() * (m / d.den()) % m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{build_ring, invertibles};

    fn w(l: &[i64]) -> Weight {
        Weight(l.to_vec())
    }

    #[test]
    fn g2_spot_values() {
        assert_eq!(twist(&AlgebraSpec::g2(4), &w(&[0, 2])), RationalPhase::new(1, 4));
        assert_eq!(twist(&AlgebraSpec::g2(3), &w(&[0, 1])), RationalPhase::new(4, 7));
    }

    #[test]
    fn unit_twist_and_qdim() {
        for spec in [AlgebraSpec::a(3, 2), AlgebraSpec::b(2, 3), AlgebraSpec::c(3, 1), AlgebraSpec::g2(2)] {
            assert!(twist(&spec, &Weight::zero(spec.rank)).is_zero());
            assert!((qdim(&spec, &Weight::zero(spec.rank)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sl2_twists_match_conformal_weights() {
        // h = j(j+2)/(4(k+2)) for sl2
        for k in 1..=6 {
            let spec = AlgebraSpec::a(1, k);
            for j in 0..=k {
                let expect = RationalPhase::new(j * (j + 2), 4 * (k + 2))
                    + if j % 2 == 1 { RationalPhase::half() } else { RationalPhase::ZERO };
                assert_eq!(twist(&spec, &w(&[j])), expect);
            }
        }
    }

    #[test]
    fn literal_type_a_sign_breaks_duality() {
        let lie = LieData::new(AlgebraSpec::a(2, 1));
        let t1 = twist_with_rule(&lie, &w(&[1, 0]), SignRule::TypeALiteral);
        let t2 = twist_with_rule(&lie, &w(&[0, 1]), SignRule::TypeALiteral);
        assert_eq!((t1, t2), (RationalPhase::new(5, 6), RationalPhase::new(1, 3)));
        let ring = build_ring(&AlgebraSpec::a(2, 1)).unwrap();
        let mut table = TwistTable::new(&ring);
        table.twists = ring
            .basis
            .iter()
            .map(|b| twist_with_rule(&lie, b, SignRule::TypeALiteral))
            .collect();
        let g = ring.index_of(&w(&[1, 0])).unwrap();
        let x = ring.index_of(&w(&[0, 1])).unwrap();
        assert!(matches!(
            monodromy_exponent(&ring, &table, g, x),
            Err(WzwError::NonQuantizedMonodromy { .. })
        ));
    }

    #[test]
    fn sl2_smatrix() {
        let s = smatrix_oracle(&AlgebraSpec::a(1, 1)).unwrap();
        let h = 1.0 / 2f64.sqrt();
        for (i, e) in [h, h, h, -h].iter().enumerate() {
            assert!((s.s[i] - e).norm() < 1e-12);
        }
    }

    #[test]
    fn so5_level2() {
        let spec = AlgebraSpec::b(2, 2);
        let s = smatrix_oracle(&spec).unwrap();
        let ring = build_ring(&spec).unwrap();
        let x1 = ring.index_of(&w(&[0, 1])).unwrap();
        assert!((s.at(0, x1).norm() / s.at(0, 0).norm() - 5f64.sqrt()).abs() < 1e-9);
        assert!((qdim(&spec, &w(&[0, 1])) - 5f64.sqrt()).abs() < 1e-9);
        assert!((qdim(&spec, &w(&[1, 0])) - 2.0).abs() < 1e-9);
        assert!(verlinde_check(&ring, &s).pass);
    }

    #[test]
    fn dimension_row_and_relations() {
        for spec in [AlgebraSpec::a(2, 3), AlgebraSpec::b(3, 2), AlgebraSpec::c(2, 3), AlgebraSpec::g2(4)] {
            let ring = build_ring(&spec).unwrap();
            let s = smatrix_oracle(&spec).unwrap();
            assert!(s.unitarity_error < S_TOL, "{spec}");
            for (i, b) in ring.basis.iter().enumerate() {
                let ratio = s.at(0, i) / s.at(0, 0);
                assert!((ratio - qdim(&spec, b)).norm() < 1e-9);
                for j in 0..ring.n() {
                    assert!((s.at(i, j) - s.at(j, i)).norm() < S_TOL);
                }
            }
            let t = TwistTable::new(&ring);
            assert!(st_relation_error(&s, &t) < S_TOL, "{spec}");
            let rep = verlinde_check(&ring, &s);
            assert!(rep.pass, "{spec} {}", rep.max_deviation);
        }
    }

    #[test]
    fn certified_bound_is_small() {
        let spec = AlgebraSpec::a(3, 3);
        let ring = build_ring(&spec).unwrap();
        let s = smatrix_oracle(&spec).unwrap();
        assert!(verlinde_bound(&ring, &s) < VERLINDE_TOL);
        assert!(verlinde_triple_sum(&ring, &s) < VERLINDE_TOL);
    }

    #[test]
    fn type_a_monodromy() {
        for r in 1..=5 {
            for k in 1..=4 {
                let ring = build_ring(&AlgebraSpec::a(r, k)).unwrap();
                let t = TwistTable::new(&ring);
                let g = ring.index_of(&Weight::fundamental(r, 1, k as i64)).unwrap();
                let x = ring.index_of(&Weight::fundamental(r, 1, 1)).unwrap();
                assert_eq!(monodromy_exponent(&ring, &t, g, x).unwrap(), r as i64);
                assert_eq!(monodromy_exponent(&ring, &t, g, ring.unit).unwrap(), 0);
                for g in invertibles(&ring) {
                    for x in 0..ring.n() {
                        monodromy_exponent(&ring, &t, g, x).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn duals_share_twists() {
        for spec in [AlgebraSpec::a(4, 3), AlgebraSpec::a(2, 5), AlgebraSpec::c(3, 2)] {
            let ring = build_ring(&spec).unwrap();
            let t = TwistTable::new(&ring);
            for i in 0..ring.n() {
                assert_eq!(t.get(i), t.get(ring.dual[i]));
            }
        }
    }
}
