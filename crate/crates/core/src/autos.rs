//! Fusion-ring automorphisms by constraint-propagating backtracking.

use crate::error::{Result, WzwError};
use crate::fusion::FusionRing;
use crate::groups::invariants_from_orders;
use crate::lie::LieData;
use crate::modular::{qdim_with, TwistTable};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;
pub const QDIM_TOL: f64 = 1e-9;

pub type Perm = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingAutomorphism {
    pub perm: Perm,
}

impl RingAutomorphism {
    /// Verifies the automorphism invariants against `ring`.
    pub fn new(ring: &FusionRing, perm: Perm) -> Result<Self> {
        if ring.is_automorphism(&perm) {
            Ok(RingAutomorphism { perm })
        } else {
            Err(WzwError::InvariantViolation(format!(
                "not a fusion automorphism: {}",
                cycle_notation(&perm, &ring.names)
            )))
        }
    }
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `(p o q)(x) = p(q(x))`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&x| p[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn perm_order(p: &[usize]) -> u64 {
    let id = identity(p.len());
    let mut q = p.to_vec();
    let mut k = 1;
    while q != id {
        q = compose(p, &q);
        k += 1;
    }
    k
}

/// Cycle notation over labels, fixed points omitted; `()` for the identity.
pub fn cycle_notation(p: &[usize], names: &[String]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] == i {
            continue;
        }
        let mut cyc = vec![];
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cyc.push(names[j].as_str());
            j = p[j];
        }
        out.push('(');
        out.push_str(&cyc.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermGroup {
    pub degree: usize,
    /// Sorted; the identity comes first.
    pub elements: Vec<Perm>,
    pub generators: Vec<Perm>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        PermGroup {
            degree: n,
            elements: vec![identity(n)],
            generators: vec![],
        }
    }

    /// Closure of `gens` under composition.
    pub fn generated_by(n: usize, gens: &[Perm]) -> Self {
        let mut seen: HashSet<Perm> = HashSet::from([identity(n)]);
        let mut queue = VecDeque::from([identity(n)]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        let mut g = PermGroup {
            degree: n,
            elements,
            generators: vec![],
        };
        g.generators = g.minimal_generators_from(gens);
        g
    }

    /// Builds a group from a list claimed to be closed; returns `None` if it is not.
    pub fn from_elements(n: usize, mut elements: Vec<Perm>) -> Option<Self> {
        elements.sort();
        elements.dedup();
        let g = PermGroup {
            degree: n,
            generators: vec![],
            elements,
        };
        if !g.is_closed() {
            return None;
        }
        let gens = g.minimal_generators_from(&g.elements);
        Some(PermGroup {
            generators: gens,
            ..g
        })
    }

    fn minimal_generators_from(&self, pool: &[Perm]) -> Vec<Perm> {
        let mut gens: Vec<Perm> = vec![];
        let mut span: HashSet<Perm> = HashSet::from([identity(self.degree)]);
        for p in pool {
            if span.contains(p) {
                continue;
            }
            gens.push(p.clone());
            let sub = PermGroup::closure_set(self.degree, &gens);
            span = sub;
            if span.len() == self.elements.len() {
                break;
            }
        }
        gens
    }

    fn closure_set(n: usize, gens: &[Perm]) -> HashSet<Perm> {
        let mut seen: HashSet<Perm> = HashSet::from([identity(n)]);
        let mut queue = VecDeque::from([identity(n)]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(p)).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        if !self.contains(&identity(self.degree)) {
            return false;
        }
        let set: HashSet<&Perm> = self.elements.iter().collect();
        self.elements.iter().all(|a| {
            set.contains(&inverse(a)) && self.elements.iter().all(|b| set.contains(&compose(a, b)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = if self.generators.is_empty() && self.order() > 1 {
            &self.elements
        } else {
            &self.generators
        };
        gens.iter()
            .all(|a| gens.iter().all(|b| compose(a, b) == compose(b, a)))
    }

    pub fn subgroup_where(&self, keep: impl Fn(&Perm) -> bool) -> PermGroup {
        let elements: Vec<Perm> = self.elements.iter().filter(|p| keep(p)).cloned().collect();
        PermGroup::from_elements(self.degree, elements).expect("filter is not a subgroup")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GroupStructure {
    Abelian { invariants: Vec<u64> },
    Nonabelian { order: usize, center: usize },
}

pub fn abelian_invariants(g: &PermGroup) -> GroupStructure {
    if g.is_abelian() {
        let orders: Vec<u64> = g.elements.iter().map(|p| perm_order(p)).collect();
        GroupStructure::Abelian {
            invariants: invariants_from_orders(&orders),
        }
    } else {
        let center = g
            .elements
            .iter()
            .filter(|z| g.generators.iter().all(|a| compose(a, z) == compose(z, a)))
            .count();
        GroupStructure::Nonabelian {
            order: g.order(),
            center,
        }
    }
}

/// Frobenius-Perron dimensions: quantum Weyl dimensions for weight bases,
/// power iteration otherwise.
pub fn fp_dims(ring: &FusionRing) -> Vec<f64> {
    let n = ring.n();
    if ring.basis.len() == n && ring.basis.iter().all(|w| w.0.len() == ring.spec.rank) {
        let lie = LieData::new(ring.spec);
        return ring.basis.iter().map(|w| qdim_with(&lie, w)).collect();
    }
    let gens = ring.generators();
    let mut v = vec![1.0; n];
    for _ in 0..10_000 {
        let mut w = v.clone();
        for &g in &gens {
            for x in 0..n {
                for &(c, m) in ring.product(g, x) {
                    w[c as usize] += m as f64 * v[x];
                }
            }
        }
        let s = w[ring.unit];
        for z in w.iter_mut() {
            *z /= s;
        }
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < 1e-14 {
            break;
        }
    }
    v
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
    fn and_assign(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= b;
        }
    }
}

#[derive(Clone)]
struct State {
    dom: Vec<Bits>,
    img: Vec<Option<usize>>,
    used: Bits,
    assigned: Vec<usize>,
}

struct Search<'a> {
    ring: &'a FusionRing,
    dst: &'a FusionRing,
    order_key: Vec<i64>,
    nodes: u64,
    bound: u64,
    limit: usize,
    found: Vec<Perm>,
}

impl Search<'_> {
    fn assign(&self, st: &mut State, x: usize, v: usize) -> bool {
        let n = self.dst.n();
        let mut queue = VecDeque::from([(x, v)]);
        while let Some((x, v)) = queue.pop_front() {
            if let Some(w) = st.img[x] {
                if w != v {
                    return false;
                }
                continue;
            }
            if !st.dom[x].has(v) || st.used.has(v) {
                return false;
            }
            st.img[x] = Some(v);
            st.used.set(v);
            st.dom[x] = Bits::empty(n);
            st.dom[x].set(v);
            st.assigned.push(x);
            queue.push_back((self.ring.dual[x], self.dst.dual[v]));
            for z in 0..n {
                if st.img[z].is_none() && st.dom[z].has(v) {
                    st.dom[z].clear(v);
                    match st.dom[z].count() {
                        0 => return false,
                        1 => queue.push_back((z, st.dom[z].first().unwrap())),
                        _ => {}
                    }
                }
            }
            for &y in &st.assigned.clone() {
                let w = st.img[y].unwrap();
                let target = self.dst.product(v, w);
                for &(c, m) in self.ring.product(x, y) {
                    let c = c as usize;
                    let mut allowed = Bits::empty(n);
                    for &(d, k) in target {
                        if k == m {
                            allowed.set(d as usize);
                        }
                    }
                    if let Some(pc) = st.img[c] {
                        if !allowed.has(pc) {
                            return false;
                        }
                        continue;
                    }
                    st.dom[c].and_assign(&allowed);
                    match st.dom[c].count() {
                        0 => return false,
                        1 => queue.push_back((c, st.dom[c].first().unwrap())),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, st: State) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.bound {
            return Err(WzwError::SearchBoundExceeded(self.bound));
        }
        let n = self.ring.n();
        let next = (0..n)
            .filter(|&x| st.img[x].is_none())
            .min_by_key(|&x| (st.dom[x].count(), x));
        let Some(x) = next else {
            let perm: Perm = st.img.iter().map(|v| v.unwrap()).collect();
            if is_isomorphism(self.ring, self.dst, &perm) {
                self.found.push(perm);
                if self.found.len() >= self.limit {
                    return Ok(());
                }
            }
            return Ok(());
        };
        let mut cands: Vec<usize> = st.dom[x].iter().collect();
        cands.sort_by_key(|&v| (self.order_key[v] != self.order_key[x], v));
        for v in cands {
            if self.found.len() >= self.limit {
                break;
            }
            let mut s2 = st.clone();
            if self.assign(&mut s2, x, v) {
                self.run(s2)?;
            }
        }
        Ok(())
    }
}

pub fn enumerate_fusion_autos(ring: &FusionRing) -> Result<PermGroup> {
    enumerate_fusion_autos_with(ring, None, DEFAULT_SEARCH_BOUND)
}

/// Complete search; `twists` only orders candidates.
pub fn enumerate_fusion_autos_with(
    ring: &FusionRing,
    twists: Option<&TwistTable>,
    bound: u64,
) -> Result<PermGroup> {
    let n = ring.n();
    let allowed = invariant_domains(ring, ring);
    let order_key: Vec<i64> = match twists {
        Some(t) => {
            let mut key_ids: HashMap<crate::phase::RationalPhase, i64> = HashMap::new();
            t.twists
                .iter()
                .map(|p| {
                    let l = key_ids.len() as i64;
                    *key_ids.entry(*p).or_insert(l)
                })
                .collect()
        }
        None => vec![0; n],
    };
    let found = search_isomorphisms(ring, ring, &allowed, order_key, bound, usize::MAX)?;
    let elements: BTreeSet<Perm> = found.into_iter().collect();
    PermGroup::from_elements(n, elements.into_iter().collect())
        .ok_or_else(|| WzwError::InvariantViolation("automorphisms do not form a group".into()))
}

/// Candidate images: equal Frobenius-Perron dimension, duality type and row statistics.
pub fn invariant_domains(src: &FusionRing, dst: &FusionRing) -> Vec<Vec<usize>> {
    let sig = |ring: &FusionRing| -> Vec<(bool, usize, usize)> {
        let n = ring.n();
        (0..n)
            .map(|a| {
                let row: usize = (0..n).map(|x| ring.product(a, x).len()).sum();
                (ring.dual[a] == a, ring.product(a, a).len(), row)
            })
            .collect()
    };
    let (s1, s2) = (sig(src), sig(dst));
    let (d1, d2) = (fp_dims(src), fp_dims(dst));
    (0..src.n())
        .map(|a| {
            (0..dst.n())
                .filter(|&b| s1[a] == s2[b] && (d1[a] - d2[b]).abs() < QDIM_TOL * d1[a].max(1.0))
                .collect()
        })
        .collect()
}

/// `N_{pa,pb}^{pc} = N_{a,b}^c` for a bijection `p` from `src` to `dst`.
pub fn is_isomorphism(src: &FusionRing, dst: &FusionRing, perm: &[usize]) -> bool {
    let n = src.n();
    if dst.n() != n || perm.len() != n || perm[src.unit] != dst.unit {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    (0..n).all(|a| {
        perm[src.dual[a]] == dst.dual[perm[a]]
            && (0..n).all(|b| {
                let mut mapped: Vec<(u32, u32)> = src
                    .product(a, b)
                    .iter()
                    .map(|&(c, m)| (perm[c as usize] as u32, m))
                    .collect();
                mapped.sort_unstable();
                mapped == dst.product(perm[a], perm[b])
            })
    })
}

/// Based-ring isomorphisms `src -> dst` with images restricted to `allowed`, up to `limit`.
pub fn find_isomorphisms(
    src: &FusionRing,
    dst: &FusionRing,
    allowed: &[Vec<usize>],
    limit: usize,
) -> Result<Vec<Perm>> {
    if src.n() != dst.n() {
        return Ok(vec![]);
    }
    search_isomorphisms(src, dst, allowed, vec![0; src.n()], DEFAULT_SEARCH_BOUND, limit)
}

fn search_isomorphisms(
    src: &FusionRing,
    dst: &FusionRing,
    allowed: &[Vec<usize>],
    order_key: Vec<i64>,
    bound: u64,
    limit: usize,
) -> Result<Vec<Perm>> {
    let n = src.n();
    let mut dom = vec![Bits::empty(n); n];
    for (a, list) in allowed.iter().enumerate() {
        for &b in list {
            dom[a].set(b);
        }
    }
    let mut search = Search {
        ring: src,
        dst,
        order_key,
        nodes: 0,
        bound,
        limit,
        found: vec![],
    };
    let mut st = State {
        dom,
        img: vec![None; n],
        used: Bits::empty(n),
        assigned: vec![],
    };
    if !search.assign(&mut st, src.unit, dst.unit) {
        return Ok(vec![]);
    }
    let singles: Vec<(usize, usize)> = (0..n)
        .filter(|&x| st.img[x].is_none() && st.dom[x].count() == 1)
        .map(|x| (x, st.dom[x].first().unwrap()))
        .collect();
    for (x, v) in singles {
        if !search.assign(&mut st, x, v) {
            return Ok(vec![]);
        }
    }
    search.run(st)?;
    Ok(search.found)
}

pub fn twist_preserving_subgroup(group: &PermGroup, twists: &TwistTable) -> PermGroup {
    group.subgroup_where(|p| p.iter().enumerate().all(|(i, &j)| twists.twists[i] == twists.twists[j]))
}
