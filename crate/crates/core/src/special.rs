//! Named auto-equivalences and special structures: charge conjugation, the sp(2r) level-rank
//! transpose, the so(2r+1) level-2 presentation, Tambara-Yamagami data and the G2 level-4 algebra.

use crate::autos::{
    compose, enumerate_fusion_autos, find_isomorphisms, identity, invariant_domains, inverse, Perm,
    RingAutomorphism,
};
use crate::error::{Result, WzwError};
use crate::fusion::{build_ring, FusionRing};
use crate::lie::{AlgebraSpec, Family, Weight};
use crate::modular::TwistTable;
use crate::phase::RationalPhase;
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeMap;

pub fn preserves_twists(perm: &[usize], twists: &[RationalPhase]) -> bool {
    perm.iter().enumerate().all(|(i, &j)| twists[i] == twists[j])
}

/// `sum l_i L_i -> sum l_{r+1-i} L_i` on a type-A ring.
pub fn charge_conjugation(ring: &FusionRing) -> Result<RingAutomorphism> {
    if ring.spec.family != Family::A {
        return Err(WzwError::InvalidSpec("charge conjugation needs type A".into()));
    }
    let perm = ring
        .basis
        .iter()
        .map(|w| {
            let rev: Vec<i64> = w.0.iter().rev().copied().collect();
            ring.index_of(&Weight(rev)).expect("alcove is closed under reversal")
        })
        .collect();
    RingAutomorphism::new(ring, perm)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransposePath {
    RowFormula,
    Search,
}

#[derive(Clone, Debug, Serialize)]
pub struct Transpose {
    pub automorphism: RingAutomorphism,
    pub path: TransposePath,
}

/// Young diagram rows `r - sum_{i=k-j}^{k} l_i` for `j = 1..r`, with `l_0 = 0`.
pub fn transpose_rows(w: &Weight, r: usize) -> Vec<i64> {
    let k = r;
    (1..=r)
        .map(|j| {
            let lo = k.saturating_sub(j).max(1);
            r as i64 - (lo..=k).map(|i| w.0[i - 1]).sum::<i64>()
        })
        .collect()
}

fn transpose_partition(rows: &[i64], width: usize) -> Vec<i64> {
    (1..=width as i64)
        .map(|c| rows.iter().filter(|&&x| x >= c).count() as i64)
        .collect()
}

fn row_formula_perm(ring: &FusionRing, r: usize) -> Option<Perm> {
    let rows: Vec<Vec<i64>> = ring.basis.iter().map(|w| transpose_rows(w, r)).collect();
    let lookup: BTreeMap<&Vec<i64>, usize> = rows.iter().enumerate().map(|(i, v)| (v, i)).collect();
    if lookup.len() != rows.len() {
        return None;
    }
    let mut perm = vec![];
    for v in &rows {
        if v.windows(2).any(|p| p[0] < p[1]) || v.iter().any(|&x| x < 0) {
            return None;
        }
        let t = transpose_partition(v, r);
        perm.push(*lookup.get(&t)?);
    }
    Some(perm)
}

/// The non-identity automorphism of `C(sp_2r, r)` fixing `L_1`.
pub fn sp_levelrank_transpose(r: usize) -> Result<Transpose> {
    let ring = build_ring(&AlgebraSpec::c(r, r as i64))?;
    sp_levelrank_transpose_on(&ring)
}

pub fn sp_levelrank_transpose_on(ring: &FusionRing) -> Result<Transpose> {
    let r = ring.spec.rank;
    if ring.spec.family != Family::C || ring.spec.level != r as i64 || r < 2 {
        return Err(WzwError::InvalidSpec(format!("{} is not sp(2r) at level r >= 2", ring.spec)));
    }
    let l1 = ring.index_of(&Weight::fundamental(r, 1, 1)).unwrap();
    let good = |p: &Perm| p[l1] == l1 && *p != identity(ring.n()) && ring.is_automorphism(p);
    if let Some(p) = row_formula_perm(ring, r) {
        if good(&p) {
            return Ok(Transpose {
                automorphism: RingAutomorphism { perm: p },
                path: TransposePath::RowFormula,
            });
        }
    }
    let group = enumerate_fusion_autos(ring)?;
    let fixing: Vec<&Perm> = group.elements.iter().filter(|p| good(p)).collect();
    match fixing.as_slice() {
        [p] => Ok(Transpose {
            automorphism: RingAutomorphism { perm: (*p).clone() },
            path: TransposePath::Search,
        }),
        _ => Err(WzwError::NotFound(format!(
            "{} automorphisms of {} fix L1 non-trivially",
            fixing.len(),
            ring.spec
        ))),
    }
}

/// Index folding `j -> min(j mod m, -j mod m)`.
pub fn fold(j: i64, m: i64) -> i64 {
    let a = j.rem_euclid(m);
    a.min(m - a)
}

/// `t_X1 = r/8` (the tabulated values by `r mod 8`) and `t_X2 = t_X1 + 1/2`.
pub fn x_twists(r: usize) -> (RationalPhase, RationalPhase) {
    let t1 = RationalPhase::new(r as i64, 8);
    (t1, t1 + RationalPhase::half())
}

pub fn y_twist(r: usize, j: usize) -> RationalPhase {
    let (r, j) = (r as i64, j as i64);
    RationalPhase::new(j * j * r, 2 * r + 1)
}

/// The labels `1, Z, X1, X2, Y1..Yr` with the stated fusion rules, matched to Kac-Walton weights.
#[derive(Clone, Debug)]
pub struct SoLevel2 {
    pub r: usize,
    pub presentation: FusionRing,
    pub twists: Vec<RationalPhase>,
    pub kw: FusionRing,
    /// `label_map[label] = Kac-Walton index`.
    pub label_map: Vec<usize>,
    pub isomorphisms: usize,
}

pub const SO2_UNIT: usize = 0;
pub const SO2_Z: usize = 1;
pub const SO2_X1: usize = 2;
pub const SO2_X2: usize = 3;

pub fn so2_y(i: usize) -> usize {
    3 + i
}

pub fn so_level2_ring(r: usize) -> Result<FusionRing> {
    if r < 2 {
        return Err(WzwError::InvalidSpec("so(2r+1) level 2 needs r >= 2".into()));
    }
    let n = r + 4;
    let m = 2 * r as i64 + 1;
    let ys: Vec<usize> = (1..=r).map(so2_y).collect();
    let mut names = vec!["1".to_string(), "Z".into(), "X1".into(), "X2".into()];
    names.extend((1..=r).map(|i| format!("Y{i}")));
    let y_or_unit = |j: i64| -> Vec<usize> {
        if j == 0 {
            vec![SO2_UNIT, SO2_Z]
        } else {
            vec![so2_y(j as usize)]
        }
    };
    let rule = |a: usize, b: usize| -> Vec<usize> {
        let (a, b) = (a.min(b), a.max(b));
        match (a, b) {
            (SO2_UNIT, _) => vec![b],
            (SO2_Z, SO2_Z) => vec![SO2_UNIT],
            (SO2_Z, SO2_X1) => vec![SO2_X2],
            (SO2_Z, SO2_X2) => vec![SO2_X1],
            (SO2_Z, _) => vec![b],
            (SO2_X1, SO2_X1) | (SO2_X2, SO2_X2) => [vec![SO2_UNIT], ys.clone()].concat(),
            (SO2_X1, SO2_X2) => [vec![SO2_Z], ys.clone()].concat(),
            // not displayed; forced by Frobenius reciprocity N_{X,Y}^{X'} = N_{X,X'}^{Y}
            (SO2_X1 | SO2_X2, _) => vec![SO2_X1, SO2_X2],
            _ => {
                let (i, j) = ((a - 3) as i64, (b - 3) as i64);
                if i == j {
                    [vec![SO2_UNIT, SO2_Z], y_or_unit(fold(2 * i, m))].concat()
                } else {
                    [y_or_unit(fold(i + j, m)), y_or_unit((i - j).abs())].concat()
                }
            }
        }
    };
    let mut prod = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
            for c in rule(a, b) {
                *acc.entry(c as u32).or_insert(0) += 1;
            }
            prod.push(acc.into_iter().collect());
        }
    }
    FusionRing::from_products(AlgebraSpec::b(r, 2), vec![], names, prod, true)
}

pub fn so_level2_twists(r: usize) -> Vec<RationalPhase> {
    let (t1, t2) = x_twists(r);
    let mut t = vec![RationalPhase::ZERO, RationalPhase::ZERO, t1, t2];
    t.extend((1..=r).map(|j| y_twist(r, j)));
    t
}

pub fn so_level2_presentation(r: usize) -> Result<SoLevel2> {
    let presentation = so_level2_ring(r)?;
    let kw = build_ring(&AlgebraSpec::b(r, 2))?;
    let kw_twists = TwistTable::new(&kw).twists;
    let twists = so_level2_twists(r);
    let allowed = invariant_domains(&presentation, &kw);
    let isos = find_isomorphisms(&presentation, &kw, &allowed, usize::MAX)?;
    let label_map = isos
        .iter()
        .find(|p| p.iter().enumerate().all(|(a, &b)| kw_twists[b] == twists[a]))
        .cloned()
        .ok_or_else(|| {
            WzwError::NoConsistentLabeling(format!(
                "{} ring isomorphisms, none matches the twists",
                isos.len()
            ))
        })?;
    Ok(SoLevel2 {
        r,
        presentation,
        twists,
        kw,
        label_map,
        isomorphisms: isos.len(),
    })
}

impl SoLevel2 {
    /// Transports a permutation of labels to the Kac-Walton basis.
    pub fn to_kw(&self, perm: &[usize]) -> Perm {
        compose(&compose(&self.label_map, perm), &inverse(&self.label_map))
    }
}

/// `Y_i -> Y_{fold(n i)}`, fixing `1, Z, X1, X2`.
pub fn so_level2_galois(r: usize, n: i64) -> Result<Perm> {
    let m = 2 * r as i64 + 1;
    if n.gcd(&m) != 1 {
        return Err(WzwError::NonUnit { n, m });
    }
    let mut p = identity(r + 4);
    for i in 1..=r {
        p[so2_y(i)] = so2_y(fold(n * i as i64, m) as usize);
    }
    Ok(p)
}

pub fn so_level2_swap(r: usize) -> Perm {
    let mut p = identity(r + 4);
    p.swap(SO2_X1, SO2_X2);
    p
}

/// Tambara-Yamagami data over a cyclic group `Z_m`.
#[derive(Clone, Debug, Serialize)]
pub struct TyCategory {
    pub m: usize,
    pub chi: Vec<Vec<RationalPhase>>,
    pub tau: i8,
}

impl TyCategory {
    /// `chi(i, j) = exp(2 pi i c ij/m)`.
    pub fn cyclic(m: usize, c: i64, tau: i8) -> Self {
        let chi = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| RationalPhase::new(c * (i * j) as i64, m as i64))
                    .collect()
            })
            .collect();
        TyCategory { m, chi, tau }
    }

    /// The bicharacter `exp(2 pi i ijr/(2r+1))` on `Z_{2r+1}`.
    pub fn so_level2(r: usize, tau: i8) -> Self {
        TyCategory::cyclic(2 * r + 1, r as i64, tau)
    }

    pub fn is_bicharacter(&self) -> bool {
        let m = self.m;
        (0..m).all(|i| {
            (0..m).all(|j| {
                self.chi[i][j] == self.chi[j][i]
                    && (0..m).all(|i2| self.chi[(i + i2) % m][j] == self.chi[i][j] + self.chi[i2][j])
            })
        })
    }
}

/// `{n in Z_m^x : chi(ni, nj) = chi(i, j)}`.
pub fn ty_autgroup(ty: &TyCategory) -> Vec<u64> {
    let m = ty.m;
    if m == 1 {
        return vec![0];
    }
    (1..m)
        .filter(|n| n.gcd(&m) == 1)
        .filter(|n| {
            (0..m).all(|i| (0..m).all(|j| ty.chi[n * i % m][n * j % m] == ty.chi[i][j]))
        })
        .map(|n| n as u64)
        .collect()
}

/// Whether `i -> ni` carries `chi` to `chi^{-1}`.
pub fn ty_chi_inverse_map(ty: &TyCategory, n: i64) -> Result<bool> {
    let m = ty.m as i64;
    if n.gcd(&m) != 1 {
        return Err(WzwError::NonUnit { n, m });
    }
    let nu = n.rem_euclid(m) as usize;
    let mu = ty.m;
    Ok((0..mu).all(|i| (0..mu).all(|j| ty.chi[nu * i % mu][nu * j % mu] == -ty.chi[i][j])))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PentagonReport {
    pub equations: usize,
    pub max_residual: f64,
}

impl PentagonReport {
    pub fn pass(&self) -> bool {
        self.max_residual < 1e-9
    }
}

pub const TY_PENTAGON_BOUND: usize = 9;

/// Evaluates every pentagon equation of the TY associator in floating point.
pub fn ty_pentagon_check(ty: &TyCategory) -> Result<PentagonReport> {
    if ty.m > TY_PENTAGON_BOUND {
        return Err(WzwError::InvalidSpec(format!("group order {} above {}", ty.m, TY_PENTAGON_BOUND)));
    }
    let g = ty.m;
    let mm = g; // index of the non-invertible object
    let objs = g + 1;
    let fuse = |a: usize, b: usize| -> Vec<usize> {
        match (a == mm, b == mm) {
            (false, false) => vec![(a + b) % g],
            (true, true) => (0..g).collect(),
            _ => vec![mm],
        }
    };
    let chi = |i: usize, j: usize| -> Complex64 {
        let (c, s) = ty.chi[i][j].to_complex();
        Complex64::new(c, s)
    };
    let scale = ty.tau as f64 / (g as f64).sqrt();
    // F^{abc}_d with x in a(x)b and y in b(x)c
    let f = |a: usize, b: usize, c: usize, _d: usize, x: usize, y: usize| -> Complex64 {
        match (a == mm, b == mm, c == mm) {
            (false, true, false) => chi(a, c),
            (true, false, true) => chi(b, _d),
            (true, true, true) => chi(x, y).conj() * scale,
            _ => Complex64::new(1.0, 0.0),
        }
    };
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for a in 0..objs {
        for b in 0..objs {
            for c in 0..objs {
                for d in 0..objs {
                    for &fx in &fuse(a, b) {
                        for &gx in &fuse(fx, c) {
                            for &e in &fuse(gx, d) {
                                for &l in &fuse(c, d) {
                                    for &k in &fuse(b, l) {
                                        if !fuse(a, k).contains(&e) {
                                            continue;
                                        }
                                        let lhs = if fuse(fx, l).contains(&e) {
                                            f(fx, c, d, e, gx, l) * f(a, b, l, e, fx, k)
                                        } else {
                                            Complex64::new(0.0, 0.0)
                                        };
                                        let mut rhs = Complex64::new(0.0, 0.0);
                                        for &h in &fuse(b, c) {
                                            if fuse(a, h).contains(&gx) && fuse(h, d).contains(&k) {
                                                rhs += f(a, b, c, gx, fx, h)
                                                    * f(a, h, d, e, gx, k)
                                                    * f(b, c, d, k, h, l);
                                            }
                                        }
                                        worst = worst.max((lhs - rhs).norm());
                                        count += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(PentagonReport {
        equations: count,
        max_residual: worst,
    })
}

/// Basis order used for G2 level-4 multiplicity vectors.
pub const G2_LABELS: [[i64; 2]; 9] = [[0, 0], [1, 0], [2, 0], [3, 0], [4, 0], [0, 1], [1, 1], [2, 1], [0, 2]];

/// Candidate simple algebras `A_1..A_9` as multiplicities over [`G2_LABELS`].
pub const G2_CANDIDATES: [[u32; 9]; 9] = [
    [1, 0, 0, 1, 1, 1, 0, 0, 0],
    [1, 0, 1, 1, 1, 1, 2, 1, 0],
    [1, 0, 2, 1, 1, 1, 2, 2, 0],
    [1, 1, 1, 1, 1, 1, 2, 2, 1],
    [1, 1, 2, 3, 1, 1, 3, 2, 1],
    [1, 1, 3, 3, 2, 2, 4, 3, 1],
    [1, 2, 4, 5, 3, 3, 4, 4, 2],
    [1, 2, 4, 5, 3, 3, 5, 4, 2],
    [1, 2, 5, 5, 3, 3, 6, 5, 2],
];

/// The displayed decomposition of `A_F` for the exceptional automorphism.
pub const G2_TARGET: [u32; 9] = [5, 4, 8, 9, 5, 5, 12, 10, 4];

pub fn g2_label_index(ring: &FusionRing) -> Vec<usize> {
    G2_LABELS
        .iter()
        .map(|w| ring.index_of(&Weight(w.to_vec())).expect("G2 level-4 weight"))
        .collect()
}

/// `L1 <-> 2 L2`, `L2 <-> 4 L1`, fixing the rest.
pub fn g2_exceptional(ring: &FusionRing) -> Result<RingAutomorphism> {
    if ring.spec != AlgebraSpec::g2(4) {
        return Err(WzwError::InvalidSpec("needs G2 level 4".into()));
    }
    let idx = g2_label_index(ring);
    let mut p = identity(ring.n());
    p.swap(idx[1], idx[8]);
    p.swap(idx[5], idx[4]);
    RingAutomorphism::new(ring, p)
}

/// Multiplicities of `A_F = sum_X X (x) F^{-1}(X*)` in label order.
pub fn g2_full_algebra(ring: &FusionRing, f: &RingAutomorphism) -> Vec<u32> {
    let inv = inverse(&f.perm);
    let mut mult = vec![0u32; ring.n()];
    for x in 0..ring.n() {
        for &(c, m) in ring.product(x, inv[ring.dual[x]]) {
            mult[c as usize] += m;
        }
    }
    g2_label_index(ring).iter().map(|&i| mult[i]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct G2Decomposition {
    pub search_space: usize,
    /// Sorted 1-based candidate indices of each matching multiset.
    pub solutions: Vec<[usize; 5]>,
}

/// All size-5 multisets of candidates summing to `target`.
pub fn g2_decompose(target: &[u32; 9]) -> G2Decomposition {
    let mut out = G2Decomposition {
        search_space: 0,
        solutions: vec![],
    };
    let mut pick = [0usize; 5];
    fn rec(pos: usize, start: usize, pick: &mut [usize; 5], target: &[u32; 9], out: &mut G2Decomposition) {
        if pos == 5 {
            out.search_space += 1;
            let sum: Vec<u32> = (0..9)
                .map(|j| pick.iter().map(|&i| G2_CANDIDATES[i][j]).sum())
                .collect();
            if sum == target {
                out.solutions.push(pick.map(|i| i + 1));
            }
            return;
        }
        for i in start..9 {
            pick[pos] = i;
            rec(pos + 1, i, pick, target, out);
        }
    }
    rec(0, 0, &mut pick, target, &mut out);
    out
}
