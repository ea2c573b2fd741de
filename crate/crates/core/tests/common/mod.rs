//! Per-spec invariant suites shared by the acceptance and property tests.

#![allow(dead_code)]

use std::collections::BTreeSet;
use wzw::autos::{enumerate_fusion_autos, twist_preserving_subgroup};
use wzw::fusion::{build_ring, invertibles, FULL_ASSOCIATIVITY_LIMIT};
use wzw::group_structure::theorem_order;
use wzw::modular::{monodromy_exponent, qdim, smatrix_oracle, verlinde_check, TwistTable};
use wzw::simple_current::{braided_test, derived_braided_test, designated_current, simple_current_perm, valid_a_set};
use wzw::special::{charge_conjugation, preserves_twists, sp_levelrank_transpose_on};
use wzw::{phase_combine, AlgebraSpec, Family, RationalPhase};

pub const QDIM_TOL: f64 = 1e-9;
pub const VERLINDE_TOL: f64 = 1e-6;

/// The acceptance grid: A r <= 5, B and C 2 <= r <= 5, k <= 6; G2 k <= 8.
pub fn grid() -> Vec<AlgebraSpec> {
    wzw::theorem::GridBounds::default().specs()
}

/// Strategy-friendly index into the grid.
pub fn grid_spec(i: usize) -> AlgebraSpec {
    let g = grid();
    g[i % g.len()]
}

/// Every violated invariant of the ring, twist, automorphism and simple-current suites.
pub fn violations(spec: &AlgebraSpec) -> Vec<String> {
    let mut out = vec![];
    let mut check = |ok: bool, what: String| {
        if !ok {
            out.push(format!("{spec}: {what}"));
        }
    };
    let ring = match build_ring(spec) {
        Ok(r) => r,
        Err(e) => return vec![format!("{spec}: build failed: {e}")],
    };
    let n = ring.n();
    check(
        ring.check_invariants(n <= FULL_ASSOCIATIVITY_LIMIT).is_ok(),
        "ring invariants".into(),
    );

    // invertibles are exactly the objects of quantum dimension 1
    let dims: Vec<f64> = ring.basis.iter().map(|w| qdim(spec, w)).collect();
    let inv: BTreeSet<usize> = invertibles(&ring).into_iter().collect();
    let unit_dim: BTreeSet<usize> = (0..n).filter(|&i| (dims[i] - 1.0).abs() < QDIM_TOL).collect();
    check(inv == unit_dim, format!("invertibles {inv:?} vs qdim-1 objects {unit_dim:?}"));

    // twists: unit, duality, monodromy quantization, phase arithmetic
    let twists = TwistTable::new(&ring);
    check(twists.get(ring.unit).is_zero(), "unit twist".into());
    for x in 0..n {
        check(twists.get(x) == twists.get(ring.dual[x]), format!("twist of {} differs from its dual", ring.names[x]));
    }
    for &g in &inv {
        for x in 0..n {
            if let Err(e) = monodromy_exponent(&ring, &twists, g, x) {
                check(false, e.to_string());
            }
        }
    }
    for x in 0..n.min(12) {
        for y in 0..n.min(12) {
            let (a, b) = (twists.get(x), twists.get(y));
            check((a + b) - b == a, "phase subtraction".into());
            check(
                phase_combine(&[(a, 1), (b, 1)]) == phase_combine(&[(b, 1), (a, 1)]),
                "phase_combine commutes".into(),
            );
        }
    }

    // automorphisms: re-verified, dimension preserving, twist filter closed
    let fuseq = match enumerate_fusion_autos(&ring) {
        Ok(g) => g,
        Err(e) => {
            check(false, format!("automorphism search: {e}"));
            return out;
        }
    };
    for p in &fuseq.elements {
        check(ring.is_automorphism(p), "enumerated permutation is not an automorphism".into());
        check(
            (0..n).all(|i| (dims[i] - dims[p[i]]).abs() < QDIM_TOL),
            "automorphism moves quantum dimension".into(),
        );
    }
    check(fuseq.is_closed(), "FusEq not closed".into());
    let braided = twist_preserving_subgroup(&fuseq, &twists);
    check(braided.is_closed(), "twist-preserving subgroup not closed".into());

    // simple currents: automorphisms, braidedness criterion against the twist filter
    if let Some(gw) = designated_current(spec) {
        let g = ring.index_of(&gw).expect("current in alcove");
        let mut braided_count = 0u32;
        for a in valid_a_set(spec) {
            match simple_current_perm(&ring, &twists, g, a) {
                Ok(f) => {
                    let tp = preserves_twists(&f.perm, &twists.twists);
                    check(
                        derived_braided_test(spec, a) == tp,
                        format!("derived criterion {} but twist filter {} at a={a}", derived_braided_test(spec, a), tp),
                    );
                    check(fuseq.contains(&f.perm), format!("F[{a}] not in FusEq"));
                    braided_count += u32::from(tp);
                }
                Err(e) => check(false, format!("F[{a}]: {e}")),
            }
        }
        if spec.family == Family::A && !(spec.rank == 1 && spec.level == 2) {
            let pred = theorem_order(spec);
            let expected = 1u32 << (pred.p.unwrap() + pred.t.unwrap());
            check(
                braided_count == expected,
                format!("{braided_count} braided currents, expected 2^(p+t) = {expected}"),
            );
        }
    }
    if spec.family == Family::A && spec.rank >= 2 {
        match charge_conjugation(&ring) {
            Ok(c) => check(preserves_twists(&c.perm, &twists.twists), "charge conjugation moves twists".into()),
            Err(e) => check(false, e.to_string()),
        }
    }
    if spec.family == Family::C && spec.level == spec.rank as i64 {
        match sp_levelrank_transpose_on(&ring) {
            Ok(t) => check(
                !preserves_twists(&t.automorphism.perm, &twists.twists),
                "level-rank transpose preserves twists".into(),
            ),
            Err(e) => check(false, e.to_string()),
        }
    }
    out
}

/// Admissible `a` where the stated braidedness criterion disagrees with the twist filter.
pub fn stated_criterion_mismatches(spec: &AlgebraSpec) -> Vec<i64> {
    let Some(gw) = designated_current(spec) else { return vec![] };
    let ring = build_ring(spec).expect("grid ring");
    let twists = TwistTable::new(&ring);
    let g = ring.index_of(&gw).expect("current in alcove");
    valid_a_set(spec)
        .into_iter()
        .filter(|&a| {
            let f = simple_current_perm(&ring, &twists, g, a).expect("current permutation");
            braided_test(spec, a) != preserves_twists(&f.perm, &twists.twists)
        })
        .collect()
}

/// Largest Verlinde deviation before rounding, or the error message.
pub fn verlinde_deviation(spec: &AlgebraSpec) -> Result<f64, String> {
    let ring = build_ring(spec).map_err(|e| e.to_string())?;
    let s = smatrix_oracle(spec).map_err(|e| e.to_string())?;
    Ok(verlinde_check(&ring, &s).max_deviation)
}

/// `t_X1` from the r mod 8 twist table, written out as data.
pub fn table_x1(r: usize) -> RationalPhase {
    let (num, den) = [(0, 1), (1, 8), (1, 4), (3, 8), (1, 2), (5, 8), (3, 4), (7, 8)][r % 8];
    RationalPhase::new(num, den)
}

pub fn table_x2(r: usize) -> RationalPhase {
    let (num, den) = [(1, 2), (5, 8), (3, 4), (7, 8), (0, 1), (1, 8), (1, 4), (3, 8)][r % 8];
    RationalPhase::new(num, den)
}
