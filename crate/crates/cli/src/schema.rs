//! JSON output schema. Weights are "[l1,...,lr]" strings, phases "num/den" strings,
//! permutations cycle notation over weight labels.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecOut {
    pub family: String,
    pub rank: usize,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisRow {
    pub index: usize,
    pub weight: String,
    pub dual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub n: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionOut {
    pub spec: SpecOut,
    pub basis: Vec<BasisRow>,
    pub table: Vec<FusionEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularRow {
    pub weight: String,
    pub twist: String,
    pub qdim: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerlindeOut {
    pub method: String,
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularOut {
    pub spec: SpecOut,
    pub rows: Vec<ModularRow>,
    /// Row-major `[re, im]` pairs.
    pub s_matrix: Vec<Vec<[f64; 2]>>,
    pub unitarity_error: f64,
    pub verlinde: VerlindeOut,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupOut {
    pub spec: SpecOut,
    pub braided: bool,
    pub order: usize,
    /// Invariant factors; `None` for a non-abelian group.
    pub invariants: Option<Vec<u64>>,
    pub generators: Vec<String>,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurrentRow {
    pub a: i64,
    pub image_of_l1: String,
    /// `F_a` fixes every twist.
    pub braided: bool,
    /// The displayed arithmetic criterion; differs from `braided` at some type-A points.
    pub stated_criterion: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurrentsOut {
    pub spec: SpecOut,
    pub current: String,
    pub rows: Vec<CurrentRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppendixRow {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub order: usize,
    pub invariants: Vec<u64>,
    pub predicted: Vec<u64>,
    pub ell: u64,
    pub map_is_isomorphism: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppendixOut {
    pub rows: Vec<AppendixRow>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PentagonOut {
    pub tau: i8,
    pub equations: usize,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TyOut {
    pub order: usize,
    pub c: i64,
    pub bicharacter: bool,
    pub aut: Vec<u64>,
    pub square_roots_of_one: Vec<u64>,
    /// Empty when the group is above the pentagon bound.
    pub pentagon: Vec<PentagonOut>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct G2AlgebrasOut {
    pub labels: Vec<String>,
    pub a_f: Vec<u32>,
    pub displayed: Vec<u32>,
    pub candidates: Vec<Vec<u32>>,
    pub search_space: usize,
    pub solutions: Vec<Vec<usize>>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeinRow {
    pub system: String,
    pub family: String,
    /// Parameter constraint the family needs; empty when none.
    pub locus: String,
    pub method: String,
    pub points: usize,
    pub identically_zero: bool,
    /// Largest residual over the sample points; off-locus points count for symbolic checks.
    pub max_residual: f64,
    pub pass: bool,
    /// Informational rows do not affect the exit code.
    pub gating: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusRow {
    pub family: String,
    pub rank: usize,
    pub level: i64,
    pub residual: f64,
    pub on_locus: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkeinOut {
    pub rows: Vec<SkeinRow>,
    /// Scan points lying on `r^2 = -1`.
    pub bmw_locus: Vec<LocusRow>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremRow {
    pub spec: SpecOut,
    pub tenaut: u64,
    pub braut: u64,
    pub predicted_tenaut: u64,
    pub predicted_braut: u64,
    pub invariants: Option<Vec<u64>>,
    pub predicted_invariants: Vec<u64>,
    pub fuseq: u64,
    pub fuseq_closed_form: u64,
    pub generators: Vec<String>,
    pub verdict: String,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremOut {
    pub rows: Vec<TheoremRow>,
    pub passed: usize,
    pub expected_gaps: usize,
    pub failed: usize,
    pub verdict: String,
}
