//! Integer weights of GL_n, dominant weights and partitions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};

/// A weight μ ∈ ℤⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVec(Vec<i64>);

impl WeightVec {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return arg("weight vector must have length >= 1");
        }
        Ok(WeightVec(entries))
    }

    pub fn zero(n: usize) -> Self {
        WeightVec(vec![0; n])
    }

    /// The i-th unit vector e_i (0-indexed).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        WeightVec(v)
    }

    /// The simple root α_i = e_i − e_{i+1} (0-indexed).
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        v[i + 1] = -1;
        WeightVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        assert_eq!(self.len(), other.len());
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        assert_eq!(self.len(), other.len());
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn shift(&self, c: i64) -> WeightVec {
        WeightVec(self.0.iter().map(|x| x + c).collect())
    }

    /// ⟨μ, α_i⟩ = μ_i − μ_{i+1}.
    pub fn pair_with_root(&self, i: usize) -> i64 {
        self.0[i] - self.0[i + 1]
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A weakly decreasing λ ∈ ℤⁿ₊, possibly with negative entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DominantWeight(WeightVec);

impl DominantWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let w = WeightVec::new(entries)?;
        if !w.is_dominant() {
            return arg(format!("{w} is not weakly decreasing"));
        }
        Ok(DominantWeight(w))
    }

    pub fn weight(&self) -> &WeightVec {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        self.0.entries()
    }

    /// The twist c = max(0, −λ_n) making λ + c·(1,…,1) polynomial, and that partition.
    pub fn polynomial_shift(&self) -> (i64, Partition) {
        let last = *self.entries().last().unwrap();
        let c = (-last).max(0);
        let parts = self.entries().iter().map(|&x| (x + c) as usize).collect();
        (c, Partition::from_parts_unchecked(parts))
    }
}

impl TryFrom<Vec<i64>> for DominantWeight {
    type Error = crate::error::Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DominantWeight::new(v)
    }
}

impl From<DominantWeight> for Vec<i64> {
    fn from(d: DominantWeight) -> Self {
        d.0.into_vec()
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A partition: weakly decreasing positive parts, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Accepts trailing zeros and strips them.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return arg(format!("{parts:?} is not weakly decreasing"));
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    pub(crate) fn from_parts_unchecked(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    /// Sorts arbitrary block sizes into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_parts_unchecked(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Part i (0-indexed), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The single column (1,…,1,0,…,0) with k ones, ω_k.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    /// Pads to a length-n weight vector.
    pub fn to_weight(&self, n: usize) -> Result<WeightVec> {
        if self.length() > n {
            return arg(format!("partition {self} has more than {n} parts"));
        }
        let mut v: Vec<i64> = self.0.iter().map(|&x| x as i64).collect();
        v.resize(n, 0);
        WeightVec::new(v)
    }

    pub fn to_dominant(&self, n: usize) -> Result<DominantWeight> {
        Ok(DominantWeight(self.to_weight(n)?))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = crate::error::Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A permutation of {0..n} in one-line notation: `w[i]` is the image of i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return arg(format!("{images:?} is not a permutation"));
            }
        }
        Ok(Permutation(images))
    }

    /// From 1-indexed one-line notation, as used on the command line.
    pub fn from_one_indexed(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return arg("1-indexed permutation contains 0");
        }
        Permutation::new(images.iter().map(|x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// All permutations of {0..n} in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// μ ≤ λ in dominance order: every partial sum of λ − μ is ≥ 0 and the total is 0.
pub fn dominance_leq(mu: &WeightVec, lam: &WeightVec) -> Result<bool> {
    if mu.len() != lam.len() {
        return arg(format!(
            "dominance comparison of lengths {} and {}",
            mu.len(),
            lam.len()
        ));
    }
    let mut partial = 0i64;
    for (l, m) in lam.entries().iter().zip(mu.entries()) {
        partial += l - m;
        if partial < 0 {
            return Ok(false);
        }
    }
    Ok(partial == 0)
}

/// Dominance between partitions of possibly different lengths (padded with zeros).
pub fn partition_dominance_leq(mu: &Partition, lam: &Partition) -> bool {
    let n = mu.length().max(lam.length()).max(1);
    dominance_leq(&mu.to_weight(n).unwrap(), &lam.to_weight(n).unwrap()).unwrap()
}

/// ht(diff) = k₁ + … + k_{n−1} where diff = Σ k_i α_i with k_i ≥ 0.
pub fn height(diff: &WeightVec) -> Result<u64> {
    if !dominance_leq(&WeightVec::zero(diff.len()), diff)? {
        return arg(format!("{diff} is not a nonnegative combination of simple roots"));
    }
    // k_j is the j-th partial sum
    let mut partial = 0i64;
    let mut total = 0u64;
    for &x in &diff.entries()[..diff.len() - 1] {
        partial += x;
        total += partial as u64;
    }
    Ok(total)
}

/// Transpose of the Young diagram: λ_i = #{j : ν_j ≥ i}.
pub fn conjugate(nu: &Partition) -> Partition {
    let parts = (1..=nu.largest())
        .map(|i| nu.parts().iter().filter(|&&p| p >= i).count())
        .collect();
    Partition(parts)
}

/// (wμ)_i = μ_{w(i)}.
pub fn weyl_permute(w: &Permutation, mu: &WeightVec) -> Result<WeightVec> {
    if w.len() != mu.len() {
        return arg(format!(
            "permutation of {} letters applied to weight of length {}",
            w.len(),
            mu.len()
        ));
    }
    WeightVec::new(w.images().iter().map(|&j| mu.entries()[j]).collect())
}

/// All partitions of `total`, in reverse lexicographic order ((total) first).
pub fn partitions_of(total: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            current.push(part);
            go(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// All μ ∈ ℕⁿ with |μ| = total, in reverse lexicographic order.
pub fn compositions(total: usize, n: usize) -> Vec<WeightVec> {
    fn go(remaining: usize, slots: usize, current: &mut Vec<i64>, out: &mut Vec<WeightVec>) {
        if slots == 1 {
            current.push(remaining as i64);
            out.push(WeightVec(current.clone()));
            current.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            current.push(first as i64);
            go(remaining - first, slots - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(total, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Total order used for emitting weights below a highest weight `top`:
/// ascending height of `top − μ`, then lexicographically descending.
pub fn emission_order(top: &WeightVec, a: &WeightVec, b: &WeightVec) -> Ordering {
    let ha = height(&top.sub(a)).unwrap_or(u64::MAX);
    let hb = height(&top.sub(b)).unwrap_or(u64::MAX);
    ha.cmp(&hb).then_with(|| b.cmp(a))
}
