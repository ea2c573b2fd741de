//! Simple-current auto-equivalences `F_{g,a}(X) = g^{-a n(X)} (x) X` as permutations.

use crate::autos::{compose, Perm, RingAutomorphism};
use crate::error::{Result, WzwError};
use crate::fusion::FusionRing;
use crate::lie::{AlgebraSpec, Family, Weight};
use crate::modular::{current_order, monodromy_exponent, TwistTable};
use crate::phase::RationalPhase;
use num_integer::Integer;
use serde::Serialize;

/// The family current: `k L_1` for A and B, `k L_r` for C; none for G2.
pub fn designated_current(spec: &AlgebraSpec) -> Option<Weight> {
    let (r, k) = (spec.rank, spec.level);
    match spec.family {
        Family::A | Family::B => Some(Weight::fundamental(r, 1, k)),
        Family::C => Some(Weight::fundamental(r, r, k)),
        Family::G2 => None,
    }
}

/// Closed-form self-braiding `sigma_{g,g}` of the designated current, as a phase.
pub fn self_braiding_exponent(spec: &AlgebraSpec, g: &Weight) -> Result<RationalPhase> {
    let unsupported = || Err(WzwError::UnsupportedCurrent(g.to_string()));
    if designated_current(spec).as_ref() != Some(g) {
        return unsupported();
    }
    let (r, k) = (spec.rank as i64, spec.level);
    match spec.family {
        Family::A => Ok(RationalPhase::new(r * k, 4 * (r + 1))),
        Family::B => Ok(if k % 2 == 1 {
            RationalPhase::half()
        } else {
            RationalPhase::ZERO
        }),
        Family::C => match (r * k).rem_euclid(4) {
            0 => Ok(RationalPhase::ZERO),
            2 => Ok(RationalPhase::half()),
            _ => unsupported(),
        },
        Family::G2 => unsupported(),
    }
}

/// Order of the designated current.
pub fn current_order_of(spec: &AlgebraSpec) -> i64 {
    match spec.family {
        Family::A => spec.rank as i64 + 1,
        _ => 2,
    }
}

/// `q mod 2M` with `sigma_{g,g} = exp(2 pi i q/(2M))`, when that is an integer.
pub fn lemma_q(spec: &AlgebraSpec) -> Option<i64> {
    let g = designated_current(spec)?;
    let t = self_braiding_exponent(spec, &g).ok()?;
    let m2 = 2 * current_order_of(spec);
    (m2 % t.den() == 0).then(|| t.num() * (m2 / t.den()))
}

/// Admissible `a`: `gcd(1+ka, r+1) = 1` for A; `{0,1}` filtered by `gcd(1+aq, 2) = 1` otherwise.
pub fn valid_a_set(spec: &AlgebraSpec) -> Vec<i64> {
    let k = spec.level;
    match spec.family {
        Family::A => {
            let n = spec.rank as i64 + 1;
            (0..n).filter(|a| (1 + k * a).gcd(&n) == 1).collect()
        }
        Family::G2 => vec![0],
        _ => lemma_valid_a_set(spec),
    }
}

/// The Lemma's condition `gcd(1+aq, M) = 1`, with `q` from [`lemma_q`].
pub fn lemma_valid_a_set(spec: &AlgebraSpec) -> Vec<i64> {
    let m = current_order_of(spec);
    match lemma_q(spec) {
        Some(q) => (0..m).filter(|a| (1 + a * q).gcd(&m) == 1).collect(),
        None => vec![0],
    }
}

/// `g^j` for an invertible `g`.
pub fn current_power(ring: &FusionRing, g: usize, j: usize) -> usize {
    let mut x = ring.unit;
    for _ in 0..j {
        x = ring.product(g, x)[0].0 as usize;
    }
    x
}

pub fn simple_current_perm(
    ring: &FusionRing,
    twists: &TwistTable,
    g: usize,
    a: i64,
) -> Result<RingAutomorphism> {
    let m = current_order(ring, g) as i64;
    let powers: Vec<usize> = (0..m as usize).map(|j| current_power(ring, g, j)).collect();
    let mut perm = vec![0; ring.n()];
    for (x, p) in perm.iter_mut().enumerate() {
        let n = monodromy_exponent(ring, twists, g, x)?;
        let e = (-a * n).rem_euclid(m) as usize;
        *p = ring.product(powers[e], x)[0].0 as usize;
    }
    RingAutomorphism::new(ring, perm)
}

/// The family braidedness criterion for `F_{g,a}`.
pub fn braided_test(spec: &AlgebraSpec, a: i64) -> bool {
    let (r, k) = (spec.rank as i64, spec.level);
    match spec.family {
        // a^2 - rka/2 = 0 mod r+1, doubled to stay integral
        Family::A => (2 * a * a - r * k * a).rem_euclid(2 * (r + 1)) == 0,
        Family::B => a.rem_euclid(2) == 0 || k % 2 == 1,
        Family::C => a.rem_euclid(2) == 0 || (r * k).rem_euclid(4) == 2,
        Family::G2 => a == 0,
    }
}

/// Criterion derived from the twists: `F_a` fixes every twist iff `a - a^2 rk/2 = 0 mod r+1` in type A.
pub fn derived_braided_test(spec: &AlgebraSpec, a: i64) -> bool {
    let (r, k) = (spec.rank as i64, spec.level);
    match spec.family {
        Family::A => (r * k * a * a - 2 * a).rem_euclid(2 * (r + 1)) == 0,
        _ => braided_test(spec, a),
    }
}

/// The Lemma's criterion `a + a^2 q/2 = 0 mod M`; `None` when `q` is not an integer.
pub fn lemma_braided_test(spec: &AlgebraSpec, a: i64) -> Option<bool> {
    let m = current_order_of(spec);
    lemma_q(spec).map(|q| (2 * a + a * a * q).rem_euclid(2 * m) == 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub pairs_checked: usize,
    pub first_failure: Option<(i64, i64)>,
}

impl CompositionReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `F_a o F_b = F_{a+b+kab}` for every admissible pair of a type-A ring.
pub fn composition_law_check(ring: &FusionRing, twists: &TwistTable, k: i64) -> Result<CompositionReport> {
    let spec = ring.spec;
    let g = designated_current(&spec)
        .and_then(|w| ring.index_of(&w))
        .ok_or_else(|| WzwError::UnsupportedCurrent("no designated current".into()))?;
    let m = spec.rank as i64 + 1;
    let valid = valid_a_set(&spec);
    let perms: Vec<(i64, Perm)> = valid
        .iter()
        .map(|&a| simple_current_perm(ring, twists, g, a).map(|f| (a, f.perm)))
        .collect::<Result<_>>()?;
    let lookup = |c: i64| perms.iter().find(|(a, _)| *a == c).map(|(_, p)| p);
    let mut report = CompositionReport {
        pairs_checked: 0,
        first_failure: None,
    };
    for (a, pa) in &perms {
        for (b, pb) in &perms {
            report.pairs_checked += 1;
            let c = (a + b + k * a * b).rem_euclid(m);
            if lookup(c) != Some(&compose(pa, pb)) && report.first_failure.is_none() {
                report.first_failure = Some((*a, *b));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurrentRow {
    pub a: i64,
    pub image_of_l1: String,
    /// `F_a` fixes every twist.
    pub braided: bool,
    /// The family's displayed arithmetic criterion.
    pub stated_criterion: bool,
}

/// One row per admissible `a` for the designated current.
pub fn current_table(ring: &FusionRing, twists: &TwistTable) -> Result<Vec<CurrentRow>> {
    let spec = ring.spec;
    let g = designated_current(&spec)
        .and_then(|w| ring.index_of(&w))
        .ok_or_else(|| WzwError::UnsupportedCurrent(format!("{spec}")))?;
    let l1 = ring
        .index_of(&Weight::fundamental(spec.rank, 1, 1))
        .unwrap_or(ring.unit);
    valid_a_set(&spec)
        .into_iter()
        .map(|a| {
            let f = simple_current_perm(ring, twists, g, a)?;
            Ok(CurrentRow {
                a,
                image_of_l1: ring.names[f.perm[l1]].clone(),
                braided: f.perm.iter().enumerate().all(|(i, &j)| twists.get(i) == twists.get(j)),
                stated_criterion: braided_test(&spec, a),
            })
        })
        .collect()
}
