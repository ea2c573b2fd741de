//! Spec invariants as properties over random inputs.

mod common;

use num_integer::Integer;
use proptest::prelude::*;
use wzw::group_structure::{iso_check, local_prediction, predicted_appendix_invariants};
use wzw::lie::alcove;
use wzw::special::{ty_autgroup, TyCategory};
use wzw::{AlgebraSpec, Family};

/// Grid specs cheap enough for repeated sampling.
fn small_grid() -> Vec<AlgebraSpec> {
    common::grid().into_iter().filter(|s| alcove(s).len() <= 40).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn grid_specs_have_no_violations(i in 0usize..1000) {
        let g = small_grid();
        let spec = g[i % g.len()];
        let v = common::violations(&spec);
        prop_assert!(v.is_empty(), "{v:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn appendix_map_is_isomorphism(n in 1u64..=60, k in 1u64..=12) {
        let rep = iso_check(n, k);
        prop_assert!(rep.pass(), "{rep:?}");
        prop_assert_eq!(rep.invariants, predicted_appendix_invariants(n, k));
    }

    #[test]
    fn local_factor_matches_group(p in prop::sample::select(vec![2u64, 3, 5, 7]), nu in 2u32..=5, eta_seed in 0u32..8) {
        let eta = 1 + eta_seed % (nu - 1);
        let n = p.pow(nu);
        prop_assume!(n <= 4096);
        prop_assert_eq!(iso_check(n, p.pow(eta)).invariants, local_prediction(p, nu, eta));
    }

    #[test]
    fn ty_autgroup_is_square_roots_of_one(r in 1usize..=20) {
        let m = 2 * r as u64 + 1;
        let roots: Vec<u64> = (1..m).filter(|x| x * x % m == 1).collect();
        prop_assert_eq!(ty_autgroup(&TyCategory::so_level2(r, 1)), roots);
    }

    #[test]
    fn ty_autgroup_preserves_bicharacter(m in 1usize..=25, c_seed in 1i64..100) {
        let c = (1..=m as i64).cycle().skip(c_seed as usize % m).find(|c| c.gcd(&(m as i64)) == 1).unwrap();
        let ty = TyCategory::cyclic(m, c, 1);
        for s in ty_autgroup(&ty) {
            let s = s as usize;
            for i in 0..m {
                for j in 0..m {
                    prop_assert_eq!(ty.chi[i * s % m][j * s % m], ty.chi[i][j]);
                }
            }
        }
    }

    #[test]
    fn alcove_grows_with_level(fam in 0usize..4, r in 1usize..=4, k in 1i64..=6) {
        let spec = |k| match fam {
            0 => AlgebraSpec::a(r, k),
            1 => AlgebraSpec::b(r + 1, k),
            2 => AlgebraSpec::c(r + 1, k),
            _ => AlgebraSpec::g2(k),
        };
        let lo = alcove(&spec(k));
        let hi = alcove(&spec(k + 1));
        prop_assert!(lo.len() < hi.len());
        prop_assert!(lo.iter().all(|w| hi.contains(w)));
    }
}

#[test]
fn stated_criterion_disagreement_is_pinned() {
    // symmetric difference of the twist-filter set and the stated-criterion set
    let expected: Vec<(usize, i64, Vec<i64>)> = vec![
        (3, 1, vec![2]),
        (3, 3, vec![2]),
        (3, 4, vec![2]),
        (3, 5, vec![2]),
        (4, 1, vec![2, 3]),
        (4, 4, vec![2, 3]),
        (4, 6, vec![2, 3]),
        (5, 5, vec![2]),
    ];
    let found: Vec<(usize, i64, Vec<i64>)> = common::grid()
        .into_iter()
        .filter(|s| s.family == Family::A)
        .filter_map(|s| {
            let m = common::stated_criterion_mismatches(&s);
            (!m.is_empty()).then_some((s.rank, s.level, m))
        })
        .collect();
    assert_eq!(found, expected);
}
