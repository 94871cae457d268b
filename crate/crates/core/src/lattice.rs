//! Finite-dimensional X-stable subspaces of ℂ[z] ⊗ ℂⁿ.
//!
//! Everything lives in the truncation spanned by z^k eᵢ with k < D. The
//! coordinates are ordered eᵢ-major with descending powers of z:
//! (z^{D-1}e₁, …, z⁰e₁, z^{D-1}e₂, …, z⁰eₙ), so z^k eᵢ sits at
//! i·D + (D-1-k). X sends z^k eᵢ to z^{k-1} eᵢ and kills z⁰eᵢ.
//!
//! MV-cycle counts are not computed from the geometry: [`mv_cycle_count`]
//! returns the character value, which equals the number of MV cycles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::character;
use crate::error::{arg, Error, Result};
use crate::linalg::{format_rational, int, parse_rational, EchelonBasis, SparseMatrix, SparseVec};
use crate::weights::{conjugate, partition_dominance_leq, Partition, WeightVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSubspace {
    n: usize,
    d: usize,
    /// Reduced echelon basis.
    basis: Vec<SparseVec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    InStratum,
    InClosureOnly,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub basis: Vec<Vec<String>>,
}

/// Coordinate index of z^k eᵢ.
pub fn coord(i: usize, k: usize, d: usize) -> usize {
    i * d + (d - 1 - k)
}

impl LatticeSubspace {
    /// The span of the given vectors, reduced to echelon form.
    pub fn span(n: usize, d: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Result<Self> {
        let ambient = n * d;
        let mut ech = EchelonBasis::new();
        for v in vectors {
            if v.keys().any(|&c| c >= ambient) {
                return arg(format!("coordinate out of range for n = {n}, D = {d}"));
            }
            ech.insert(v);
        }
        let basis = ech.into_basis().vectors;
        Ok(LatticeSubspace { n, d, basis })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Applies X to a vector of the ambient truncation.
    pub fn shift(&self, v: &SparseVec) -> SparseVec {
        let d = self.d;
        v.iter()
            .filter(|(&c, _)| c % d != d - 1)
            .map(|(&c, x)| (c + 1, x.clone()))
            .collect()
    }

    fn as_echelon(&self) -> EchelonBasis {
        let mut ech = EchelonBasis::new();
        for v in &self.basis {
            ech.insert(v.clone());
        }
        ech
    }

    pub fn is_x_stable(&self) -> bool {
        let ech = self.as_echelon();
        self.basis.iter().all(|v| ech.contains(&self.shift(v)))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.as_echelon().contains(v)
    }

    /// dim X^k L for k = 0, 1, ... until it reaches 0.
    pub fn rank_sequence(&self) -> Vec<usize> {
        let mut ranks = vec![self.dim()];
        let mut current = self.basis.clone();
        while *ranks.last().unwrap() > 0 {
            current = current.iter().map(|v| self.shift(v)).collect();
            ranks.push(SparseMatrix::from_columns(self.n * self.d, current.clone()).rank());
        }
        ranks
    }

    pub fn to_json(&self) -> LatticeJson {
        let dense = |v: &SparseVec| {
            (0..self.n * self.d)
                .map(|c| format_rational(&v.get(&c).cloned().unwrap_or_else(|| int(0))))
                .collect()
        };
        LatticeJson {
            n: self.n,
            d: self.d,
            basis: self.basis.iter().map(dense).collect(),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        let width = j.n * j.d;
        let mut vectors = Vec::new();
        for row in &j.basis {
            if row.len() != width {
                return Err(Error::Parse(format!(
                    "basis row has {} entries, expected n·D = {width}",
                    row.len()
                )));
            }
            let mut v = SparseVec::new();
            for (c, s) in row.iter().enumerate() {
                let x = parse_rational(s)?;
                if x != int(0) {
                    v.insert(c, x);
                }
            }
            vectors.push(v);
        }
        Self::span(j.n, j.d, vectors)
    }
}

/// L_μ = span{z^j eᵢ : j < μᵢ}, in the truncation D = max μᵢ + 1.
pub fn fixed_point(mu: &WeightVec, n: usize) -> Result<LatticeSubspace> {
    if mu.len() != n {
        return arg(format!("{mu} does not have {n} entries"));
    }
    if !mu.is_nonnegative() {
        return arg(format!("{mu} has a negative entry"));
    }
    let d = *mu.entries().iter().max().unwrap() as usize + 1;
    fixed_point_in(mu, n, d)
}

/// L_μ in a given truncation D ≥ max μᵢ.
pub fn fixed_point_in(mu: &WeightVec, n: usize, d: usize) -> Result<LatticeSubspace> {
    if mu.len() != n || !mu.is_nonnegative() {
        return arg(format!("{mu} is not a nonnegative weight with {n} entries"));
    }
    if mu.entries().iter().any(|&m| m as usize > d) {
        return arg(format!("{mu} does not fit in degree bound {d}"));
    }
    let vectors = mu
        .entries()
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| (0..m as usize).map(move |k| crate::linalg::unit_vec(coord(i, k, d))));
    LatticeSubspace::span(n, d, vectors)
}

/// Jordan type of X restricted to L, from the ranks of its powers.
pub fn jordan_type(l: &LatticeSubspace) -> Result<Partition> {
    if !l.is_x_stable() {
        return arg("subspace is not X-stable");
    }
    let r = l.rank_sequence();
    let blocks_at_least: Vec<usize> = r.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(conjugate(&Partition::from_unsorted(blocks_at_least)))
}

/// Position of L relative to the stratum of type λ and its closure.
/// Subspaces that are not X-stable lie outside every stratum.
pub fn stratum_membership(l: &LatticeSubspace, lam: &Partition) -> Membership {
    let Ok(jt) = jordan_type(l) else {
        return Membership::Outside;
    };
    if jt.size() != lam.size() {
        Membership::Outside
    } else if &jt == lam {
        Membership::InStratum
    } else if partition_dominance_leq(&jt, lam) {
        Membership::InClosureOnly
    } else {
        Membership::Outside
    }
}

/// Number of MV cycles of weight μ in the closure of Gr^λ, taken to be
/// dim V(λ)_μ. Derived from the character, not from the geometry.
pub fn mv_cycle_count(lam: &Partition, mu: &WeightVec, n: usize) -> Result<u64> {
    if mu.len() != n || !mu.is_nonnegative() {
        return arg(format!("{mu} is not a nonnegative weight with {n} entries"));
    }
    character(&lam.to_dominant(n)?, mu)
}

/// The X-closure of `generators` random vectors with entries in [-3, 3].
pub fn random_stable_subspace(n: usize, d: usize, generators: usize, seed: u64) -> Result<LatticeSubspace> {
    if n == 0 || d == 0 {
        return arg("n and D must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = Vec::new();
    for _ in 0..generators {
        let mut v: SparseVec = (0..n * d)
            .filter_map(|c| {
                let x: i64 = rng.gen_range(-3..=3);
                (x != 0).then(|| (c, int(x)))
            })
            .collect();
        while !v.is_empty() {
            let next: SparseVec = v
                .iter()
                .filter(|(&c, _)| c % d != d - 1)
                .map(|(&c, x)| (c + 1, x.clone()))
                .collect();
            vectors.push(std::mem::replace(&mut v, next));
        }
    }
    LatticeSubspace::span(n, d, vectors)
}
