//! Acceptance criteria 1-10, one PASS/FAIL line each.

mod common;

use num_integer::Integer;
use rayon::prelude::*;
use std::io::Write;
use std::time::{Duration, Instant};
use wzw::fusion::build_ring;
use wzw::group_structure::{gnd_subgroup, iso_check, local_prediction, predicted_appendix_invariants};
use wzw::modular::{twist, TwistTable};
use wzw::simple_current::composition_law_check;
use wzw::skein::{bmw_exceptional, verify_solution, EquationSystem, Method, SolutionFamily, SystemName};
use wzw::special::{
    g2_decompose, g2_exceptional, g2_full_algebra, so2_y, so_level2_presentation, ty_autgroup, ty_pentagon_check,
    TyCategory, G2_TARGET, SO2_X1, SO2_X2,
};
use wzw::theorem::{expected_gap_class, verify_grid, GridBounds, GridReport, Verdict};
use wzw::{AlgebraSpec, Family, RationalPhase, Weight};

const GRID_TIME_LIMIT: Duration = Duration::from_secs(300);
const G2_SEARCH_TIME_LIMIT: Duration = Duration::from_secs(1);
const VERLINDE_TOL: f64 = common::VERLINDE_TOL;
const SAMPLED_RESIDUAL_TOL: f64 = 1e-25;
const PENTAGON_TOL: f64 = 1e-9;

struct Line {
    id: u32,
    pass: bool,
    detail: String,
}

fn emit(line: &Line) {
    // written past the test harness capture so the lines land in the log
    let mut out = std::io::stdout().lock();
    let _ = writeln!(
        out,
        "criterion {:>2}: {} {}",
        line.id,
        if line.pass { "PASS" } else { "FAIL" },
        line.detail
    );
}

fn criterion_1(report: &GridReport, elapsed: Duration) -> Line {
    let bad: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.constructed_order != r.prediction.tenaut || r.constructed_twist_preserving != r.prediction.braut)
        .map(|r| r.spec.to_string())
        .collect();
    Line {
        id: 1,
        pass: bad.is_empty() && elapsed < GRID_TIME_LIMIT,
        detail: format!(
            "TenAut/BrAut exact on {} specs, mismatches {:?}, {:.1}s (limit {}s)",
            report.rows.len(),
            bad,
            elapsed.as_secs_f64(),
            GRID_TIME_LIMIT.as_secs()
        ),
    }
}

fn expected_fuseq(spec: &AlgebraSpec, closed_form: u64) -> u64 {
    let phi = |m: u64| (1..=m).filter(|a| a.gcd(&m) == 1).count() as u64;
    match (spec.family, spec.level) {
        // 2 |Z_{2r+1}^x / +-1|
        (Family::B, 2) => phi(2 * spec.rank as u64 + 1),
        (Family::B, k) if k >= 3 => 2,
        (Family::G2, 3) => 3,
        (Family::G2, 4) => 2,
        (Family::G2, _) => 1,
        _ => closed_form,
    }
}

fn criterion_2(report: &GridReport) -> Line {
    let mut bad = vec![];
    for r in &report.rows {
        if r.fuseq_enumerated != expected_fuseq(&r.spec, r.fuseq_closed_form) || r.verdict == Verdict::Fail {
            bad.push(r.spec.to_string());
        }
    }
    let gaps = &report.expected_gaps;
    let outside = gaps.iter().filter(|s| !expected_gap_class(s)).count();
    let has_b = gaps.iter().any(|s| s.family == Family::B && s.level == 2);
    let has_g2 = gaps.contains(&AlgebraSpec::g2(3));
    Line {
        id: 2,
        pass: bad.is_empty() && outside == 0 && has_b && has_g2,
        detail: format!(
            "FusEq counts, mismatches {:?}; gaps {:?} (outside classes: {})",
            bad,
            gaps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            outside
        ),
    }
}

fn criterion_3() -> Line {
    let devs: Vec<(AlgebraSpec, Result<f64, String>)> =
        common::grid().into_par_iter().map(|s| (s, common::verlinde_deviation(&s))).collect();
    let worst = devs.iter().filter_map(|(_, d)| d.as_ref().ok()).fold(0.0f64, |a, &b| a.max(b));
    let bad: Vec<String> = devs
        .iter()
        .filter(|(_, d)| !matches!(d, Ok(x) if *x < VERLINDE_TOL))
        .map(|(s, d)| format!("{s}: {d:?}"))
        .collect();
    let mut so_bad = vec![];
    for r in 2..=7usize {
        let ok = match so_level2_presentation(r) {
            Ok(p) => {
                let kw = TwistTable::new(&p.kw);
                let m = 2 * r as i64 + 1;
                let transported = p.label_map.iter().enumerate().all(|(a, &b)| kw.get(b) == p.twists[a]);
                let table = p.twists[SO2_X1] == common::table_x1(r) && p.twists[SO2_X2] == common::table_x2(r);
                let ys = (1..=r).all(|j| p.twists[so2_y(j)] == RationalPhase::new((j * j * r) as i64, m));
                p.isomorphisms > 0 && transported && table && ys
            }
            Err(_) => false,
        };
        if !ok {
            so_bad.push(r);
        }
    }
    Line {
        id: 3,
        pass: bad.is_empty() && so_bad.is_empty(),
        detail: format!(
            "Verlinde on {} specs, max deviation {:.2e} (tol {:e}), failures {:?}; so(2r+1) level 2 r=2..7 failures {:?}",
            devs.len(),
            worst,
            VERLINDE_TOL,
            bad,
            so_bad
        ),
    }
}

fn criterion_4() -> Line {
    let a = twist(&AlgebraSpec::g2(4), &Weight(vec![0, 2]));
    let b = twist(&AlgebraSpec::g2(3), &Weight(vec![0, 1]));
    // i = e^{2 pi i/4}, e^{8 i pi/7} = e^{2 pi i 4/7}
    let (ea, eb) = (RationalPhase::new(1, 4), RationalPhase::new(4, 7));
    Line {
        id: 4,
        pass: a == ea && b == eb,
        detail: format!("theta(2L2) at G2 k=4 = {a} (want {ea}), theta(L2) at G2 k=3 = {b} (want {eb}), exact"),
    }
}

fn criterion_5() -> Line {
    let ring = build_ring(&AlgebraSpec::g2(4)).expect("G2 level 4");
    let a_f = g2_exceptional(&ring).map(|f| g2_full_algebra(&ring, &f));
    let t = Instant::now();
    let dec = g2_decompose(&G2_TARGET);
    let elapsed = t.elapsed();
    let a_ok = a_f.as_deref() == Ok(&G2_TARGET[..]);
    let pass = a_ok && dec.search_space == 1287 && dec.solutions == vec![[3, 4, 4, 5, 5]] && elapsed < G2_SEARCH_TIME_LIMIT;
    Line {
        id: 5,
        pass,
        detail: format!(
            "A_F matches display: {}, search space {}, solutions {:?}, {:.3}s (limit {}s)",
            a_ok,
            dec.search_space,
            dec.solutions,
            elapsed.as_secs_f64(),
            G2_SEARCH_TIME_LIMIT.as_secs()
        ),
    }
}

fn criterion_6() -> Line {
    let mut bad = vec![];
    let mut rows = 0;
    for n in 1..=60u64 {
        for k in 1..=12u64 {
            rows += 1;
            let r = iso_check(n, k);
            if !r.pass() || r.invariants != predicted_appendix_invariants(n, k) {
                bad.push((n, k));
            }
        }
    }
    let mut local_bad = vec![];
    let mut locals = 0;
    for p in [2u64, 3, 5, 7] {
        for nu in 2..=6u32 {
            if p.pow(nu) > 64 {
                continue;
            }
            for eta in 1..nu {
                locals += 1;
                let lemma = if p == 2 && eta == 1 { vec![2, 2u64.pow(nu - 1)] } else { vec![p.pow(nu)] };
                let got = gnd_subgroup(p.pow(nu), p.pow(eta)).invariants();
                let lemma_sorted = {
                    let mut v: Vec<u64> = lemma.into_iter().filter(|&x| x > 1).collect();
                    v.sort_unstable();
                    v
                };
                if got != lemma_sorted || local_prediction(p, nu, eta) != lemma_sorted {
                    local_bad.push((p, nu, eta));
                }
            }
        }
    }
    Line {
        id: 6,
        pass: bad.is_empty() && local_bad.is_empty(),
        detail: format!(
            "{rows} (n, k) pairs via l-map and invariants, failures {bad:?}; {locals} local factors, failures {local_bad:?}"
        ),
    }
}

fn criterion_7() -> Line {
    let mut bad = vec![];
    let mut pairs = 0;
    for r in 1..=5usize {
        for k in 1..=6i64 {
            let spec = AlgebraSpec::a(r, k);
            let ok = build_ring(&spec).ok().and_then(|ring| {
                let t = TwistTable::new(&ring);
                composition_law_check(&ring, &t, k).ok()
            });
            match ok {
                Some(rep) => {
                    pairs += rep.pairs_checked;
                    if !rep.pass() {
                        bad.push(spec.to_string());
                    }
                }
                None => bad.push(spec.to_string()),
            }
        }
    }
    Line {
        id: 7,
        pass: bad.is_empty(),
        detail: format!("F_a F_b = F_(a+b+kab) on {pairs} pairs over type A r<=5 k<=6, failures {bad:?}"),
    }
}

fn criterion_8() -> Line {
    let mut bad = vec![];
    let mut checked = 0;
    for name in [SystemName::Ph, SystemName::Bmw, SystemName::BmwTwist, SystemName::G2] {
        let sys = EquationSystem::new(name);
        for fam in SolutionFamily::stated().into_iter().filter(|f| f.applies_to(name)) {
            checked += 1;
            let ok = match verify_solution(&sys, fam) {
                Ok(r) => match r.method {
                    // zero as a rational function, modulo the family's locus
                    Method::Symbolic => r.pass(),
                    Method::Sampled => r.pass() && r.max_abs() < SAMPLED_RESIDUAL_TOL,
                },
                Err(_) => false,
            };
            if !ok {
                bad.push(format!("{name:?}/{}", fam.name()));
            }
        }
    }
    let mut locus_bad = vec![];
    for r in 1..=8usize {
        for k in 1..=8i64 {
            if bmw_exceptional(&AlgebraSpec::c(r, k)) != (k == r as i64) {
                locus_bad.push(format!("C{r},{k}"));
            }
            if r >= 2 && bmw_exceptional(&AlgebraSpec::b(r, k)) != (k == 2 * r as i64 + 1) {
                locus_bad.push(format!("B{r},{k}"));
            }
        }
    }
    Line {
        id: 8,
        pass: bad.is_empty() && locus_bad.is_empty(),
        detail: format!(
            "{checked} family/system checks (sampled tol {SAMPLED_RESIDUAL_TOL:e}), failures {bad:?}; BMW locus scan r,k<=8 mismatches {locus_bad:?}"
        ),
    }
}

fn criterion_9() -> Line {
    let mut bad = vec![];
    for r in 1..=10usize {
        let m = 2 * r + 1;
        let roots: Vec<u64> = (1..m as u64).filter(|n| n * n % m as u64 == 1).collect();
        if ty_autgroup(&TyCategory::so_level2(r, 1)) != roots {
            bad.push(m);
        }
    }
    let mut pent_bad = vec![];
    let mut worst = 0.0f64;
    let mut cats = 0;
    for m in 1..=7usize {
        for c in (1..=m as i64).filter(|c| c.gcd(&(m as i64)) == 1) {
            for tau in [1i8, -1] {
                cats += 1;
                match ty_pentagon_check(&TyCategory::cyclic(m, c, tau)) {
                    Ok(rep) => {
                        worst = worst.max(rep.max_residual);
                        if rep.max_residual >= PENTAGON_TOL {
                            pent_bad.push((m, c, tau));
                        }
                    }
                    Err(_) => pent_bad.push((m, c, tau)),
                }
            }
        }
    }
    Line {
        id: 9,
        pass: bad.is_empty() && pent_bad.is_empty(),
        detail: format!(
            "Aut(Z_m, chi) = square roots of 1 for m <= 21, failures {bad:?}; pentagon on {cats} cyclic TY categories |G| <= 7, max residual {worst:.2e} (tol {PENTAGON_TOL:e}), failures {pent_bad:?}"
        ),
    }
}

fn criterion_10() -> Line {
    let grid = common::grid();
    let v: Vec<String> = grid.par_iter().flat_map(common::violations).collect();
    Line {
        id: 10,
        pass: v.is_empty(),
        detail: format!("ring, automorphism and phase suites on {} specs, {} violations {:?}", grid.len(), v.len(), v),
    }
}

/// Not a criterion: where the stated type-A braidedness criterion disagrees with the twist filter.
fn finding_stated_criterion() -> String {
    let grid = common::grid();
    let hits: Vec<String> = grid
        .par_iter()
        .filter(|s| s.family == Family::A)
        .filter_map(|s| {
            let m = common::stated_criterion_mismatches(s);
            (!m.is_empty()).then(|| format!("{s} a={m:?}"))
        })
        .collect();
    format!("finding: stated type-A braided criterion differs from the twist filter at {hits:?}")
}

#[test]
fn acceptance() {
    let t = Instant::now();
    let report = verify_grid(&GridBounds::default());
    let elapsed = t.elapsed();
    let lines = vec![
        criterion_1(&report, elapsed),
        criterion_2(&report),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    for l in &lines {
        emit(l);
    }
    let _ = writeln!(std::io::stdout().lock(), "{}", finding_stated_criterion());
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
