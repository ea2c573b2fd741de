//! Lie data for types A, B, C, G2 and the level-k alcove.

use crate::error::{Result, WzwError};
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

pub type Q = Ratio<i64>;

pub const DEFAULT_MAX_WEYL: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    G2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::G2 => "G2",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = WzwError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" | "SL" => Ok(Family::A),
            "B" | "SO" => Ok(Family::B),
            "C" | "SP" => Ok(Family::C),
            "G2" | "G" => Ok(Family::G2),
            _ => Err(WzwError::InvalidSpec(format!("unknown family {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    pub rank: usize,
    pub level: i64,
}

impl AlgebraSpec {
    pub fn new(family: Family, rank: usize, level: i64) -> Result<Self> {
        if rank == 0 {
            return Err(WzwError::InvalidSpec("rank must be positive".into()));
        }
        if level < 1 {
            return Err(WzwError::InvalidSpec("level must be positive".into()));
        }
        if family == Family::B && rank < 2 {
            return Err(WzwError::InvalidSpec(
                "type B needs rank >= 2 (B1 has no long root)".into(),
            ));
        }
        if family == Family::G2 && rank != 2 {
            return Err(WzwError::InvalidSpec("G2 has rank 2".into()));
        }
        Ok(AlgebraSpec {
            family,
            rank,
            level,
        })
    }

    pub fn a(r: usize, k: i64) -> Self {
        AlgebraSpec::new(Family::A, r, k).unwrap()
    }

    pub fn b(r: usize, k: i64) -> Self {
        AlgebraSpec::new(Family::B, r, k).unwrap()
    }

    pub fn c(r: usize, k: i64) -> Self {
        AlgebraSpec::new(Family::C, r, k).unwrap()
    }

    pub fn g2(k: i64) -> Self {
        AlgebraSpec::new(Family::G2, 2, k).unwrap()
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.family, self.rank, self.level)
    }
}

/// Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(r: usize) -> Self {
        Weight(vec![0; r])
    }

    /// `m * Lambda_i`, 1-based.
    pub fn fundamental(r: usize, i: usize, m: i64) -> Self {
        let mut w = vec![0; r];
        w[i - 1] = m;
        Weight(w)
    }

    pub fn from_labels(l: &[i64]) -> Self {
        Weight(l.to_vec())
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        if t.trim().is_empty() {
            return None;
        }
        t.split(',')
            .map(|x| x.trim().parse::<i64>().ok())
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    None,
    /// `(-1)^{r * sum j lambda_j}`: a grading character for every r.
    TypeA,
    /// `(-1)^{sum j lambda_j}` as printed; not a character when r is even.
    TypeALiteral,
    /// `(-1)^{sum_{j odd} lambda_j}`.
    TypeC,
}

#[derive(Clone, Debug)]
pub struct LieData {
    pub spec: AlgebraSpec,
    pub cartan: Vec<Vec<i64>>,
    pub colabels: Vec<i64>,
    pub killing: Vec<Vec<Q>>,
    pub dual_coxeter: i64,
    pub twist_den: i64,
    pub sign_rule: SignRule,
    /// Normalized form (long roots of length 2) scaled to integers: `form_int = form_scale * (.,.)`.
    pub form_int: Vec<Vec<i64>>,
    pub form_scale: i64,
    /// Positive roots in Dynkin labels.
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    pub rho: Vec<i64>,
}

pub fn killing_matrix(family: Family, r: usize) -> Vec<Vec<Q>> {
    let mut k = vec![vec![Q::from_integer(0); r]; r];
    for i in 1..=r {
        for j in 1..=r {
            let m = i.min(j) as i64;
            k[i - 1][j - 1] = match family {
                Family::A => Q::new((r as i64 + 1) * m - (i * j) as i64, r as i64 + 1),
                Family::B => {
                    let e = (i == r) as u32 + (j == r) as u32;
                    Q::new(2 * m, 2i64.pow(e))
                }
                Family::C => Q::from_integer(m),
                Family::G2 => Q::from_integer([[2, 3], [3, 6]][i - 1][j - 1]),
            };
        }
    }
    k
}

pub fn colabels(family: Family, r: usize) -> Vec<i64> {
    (1..=r)
        .map(|j| match family {
            Family::A | Family::C => 1,
            Family::B => {
                if j == 1 || j == r {
                    1
                } else {
                    2
                }
            }
            Family::G2 => [1, 2][j - 1],
        })
        .collect()
}

pub fn cartan_matrix(family: Family, r: usize) -> Vec<Vec<i64>> {
    if family == Family::G2 {
        return vec![vec![2, -1], vec![-3, 2]];
    }
    let mut a = vec![vec![0; r]; r];
    for i in 0..r {
        a[i][i] = 2;
        if i + 1 < r {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    if r >= 2 {
        match family {
            Family::B => a[r - 2][r - 1] = -2,
            Family::C => a[r - 1][r - 2] = -2,
            _ => {}
        }
    }
    a
}

pub fn dual_coxeter(family: Family, r: usize) -> i64 {
    let r = r as i64;
    match family {
        Family::A => r + 1,
        Family::B => 2 * r - 1,
        Family::C => r + 1,
        Family::G2 => 4,
    }
}

pub fn weyl_order(family: Family, r: usize) -> u64 {
    let fact = |n: u64| (1..=n).product::<u64>();
    match family {
        Family::A => fact(r as u64 + 1),
        Family::B | Family::C => 2u64.pow(r as u32) * fact(r as u64),
        Family::G2 => 12,
    }
}

pub fn max_weyl_bound() -> u64 {
    std::env::var("WZW_MAX_WEYL")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_WEYL)
}

impl LieData {
    pub fn new(spec: AlgebraSpec) -> Self {
        let (fam, r, k) = (spec.family, spec.rank, spec.level);
        let killing = killing_matrix(fam, r);
        let h = dual_coxeter(fam, r);
        let rr = r as i64;
        let twist_den = match fam {
            Family::A => 2 * (1 + k + rr),
            Family::B => 4 * (2 * rr - 1 + k),
            Family::C => 4 * (rr + k + 1),
            Family::G2 => 6 * (4 + k),
        };
        // normalized form = K * 2(k+h)/D, independent of k
        let factor = Q::new(2 * (k + h), twist_den);
        let form: Vec<Vec<Q>> = killing
            .iter()
            .map(|row| row.iter().map(|x| x * factor).collect())
            .collect();
        let form_scale = form
            .iter()
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let form_int = form
            .iter()
            .map(|row| row.iter().map(|x| (x * form_scale).to_integer()).collect())
            .collect();
        let sign_rule = match fam {
            Family::A => SignRule::TypeA,
            Family::C => SignRule::TypeC,
            _ => SignRule::None,
        };
        let mut data = LieData {
            spec,
            cartan: cartan_matrix(fam, r),
            colabels: colabels(fam, r),
            killing,
            dual_coxeter: h,
            twist_den,
            sign_rule,
            form_int,
            form_scale,
            positive_roots: vec![],
            highest_root: vec![],
            rho: vec![1; r],
        };
        data.positive_roots = data.compute_positive_roots();
        data.highest_root = data
            .positive_roots
            .iter()
            .max_by_key(|b| data.inner(b, &data.rho))
            .cloned()
            .unwrap();
        data
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// `form_scale * (x, y)`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            let row = &self.form_int[i];
            for (j, yj) in y.iter().enumerate() {
                s += xi * row[j] * yj;
            }
        }
        s
    }

    pub fn inner_q(&self, x: &[i64], y: &[i64]) -> Q {
        Q::new(self.inner(x, y), self.form_scale)
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.cartan[i]
    }

    /// `(x, theta)` for long `theta`, which equals the co-label sum.
    pub fn level_of(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.colabels).map(|(a, b)| a * b).sum()
    }

    pub fn reflect(&self, i: usize, x: &mut [i64]) {
        let c = x[i];
        if c == 0 {
            return;
        }
        for (xj, aj) in x.iter_mut().zip(&self.cartan[i]) {
            *xj -= c * aj;
        }
    }

    /// Dominant Weyl conjugate and parity of the number of reflections used.
    pub fn dominant_conjugate(&self, x: &[i64]) -> (Vec<i64>, bool) {
        let mut v = x.to_vec();
        let mut odd = false;
        loop {
            match v.iter().position(|&c| c < 0) {
                Some(i) => {
                    self.reflect(i, &mut v);
                    odd = !odd;
                }
                None => return (v, odd),
            }
        }
    }

    fn compute_positive_roots(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let a = self.cartan[i].clone();
            if seen.insert(a.clone()) {
                queue.push_back(a);
            }
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..r {
                let mut c = b.clone();
                self.reflect(i, &mut c);
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|b| self.inner(b, &self.rho) > 0)
            .collect();
        pos.sort();
        pos
    }

    /// Weyl orbit of `x` with the parity of each element's BFS depth.
    /// For regular `x` the parity is the sign of the unique Weyl element.
    pub fn orbit_with_signs(&self, x: &[i64]) -> Vec<(Vec<i64>, bool)> {
        let mut seen: HashMap<Vec<i64>, bool> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(x.to_vec(), false);
        queue.push_back(x.to_vec());
        let mut out = vec![];
        while let Some(v) = queue.pop_front() {
            let s = seen[&v];
            for i in 0..self.rank() {
                if v[i] == 0 {
                    continue;
                }
                let mut w = v.clone();
                self.reflect(i, &mut w);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), !s);
                    queue.push_back(w);
                }
            }
            out.push((v, s));
        }
        out
    }

    pub fn orbit(&self, x: &[i64]) -> Vec<Vec<i64>> {
        self.orbit_with_signs(x).into_iter().map(|(v, _)| v).collect()
    }
}

/// All dominant weights with `sum a_j lambda_j <= k`, in lexicographic order.
pub fn alcove(spec: &AlgebraSpec) -> Vec<Weight> {
    let a = colabels(spec.family, spec.rank);
    let mut out = vec![];
    let mut cur = vec![0i64; spec.rank];
    fn rec(i: usize, budget: i64, a: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == a.len() {
            out.push(Weight(cur.clone()));
            return;
        }
        let mut v = 0;
        while v * a[i] <= budget {
            cur[i] = v;
            rec(i + 1, budget - v * a[i], a, cur, out);
            v += 1;
        }
        cur[i] = 0;
    }
    rec(0, spec.level, &a, &mut cur, &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Acts on Dynkin-label column vectors.
    pub matrix: Vec<Vec<i64>>,
    pub det: i64,
}

impl WeylElement {
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

pub fn weyl_group(spec: &AlgebraSpec) -> Result<Vec<WeylElement>> {
    weyl_group_bounded(spec, max_weyl_bound())
}

pub fn weyl_group_bounded(spec: &AlgebraSpec, bound: u64) -> Result<Vec<WeylElement>> {
    let order = weyl_order(spec.family, spec.rank);
    if order > bound {
        return Err(WzwError::WeylBoundExceeded { order, bound });
    }
    let lie = LieData::new(*spec);
    let r = spec.rank;
    let gens: Vec<Vec<Vec<i64>>> = (0..r)
        .map(|i| {
            let mut m = vec![vec![0; r]; r];
            for (j, row) in m.iter_mut().enumerate() {
                row[j] = 1;
                row[i] -= lie.cartan[i][j];
            }
            m
        })
        .collect();
    let id: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| (i == j) as i64).collect())
        .collect();
    let mut seen: HashMap<Vec<Vec<i64>>, i64> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), 1);
    queue.push_back(id);
    let mut out = vec![];
    while let Some(m) = queue.pop_front() {
        let det = seen[&m];
        for g in &gens {
            let p = matmul(g, &m);
            if !seen.contains_key(&p) {
                seen.insert(p.clone(), -det);
                queue.push_back(p);
            }
        }
        out.push(WeylElement { matrix: m, det });
        if out.len() as u64 > bound {
            return Err(WzwError::WeylBoundExceeded {
                order: out.len() as u64,
                bound,
            });
        }
    }
    Ok(out)
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}
