//! 𝔽_q point counts of n-step Springer fibres.
//!
//! For X nilpotent of Jordan type ν on 𝔽_q^N, count chains
//! 0 = V₀ ⊆ V₁ ⊆ ⋯ ⊆ Vₙ = 𝔽_q^N with X Vᵢ ⊆ Vᵢ₋₁ and dim Vᵢ/Vᵢ₋₁ = μᵢ.
//! V₁ is a μ₁-dimensional subspace of ker X and the rest of the chain is a
//! chain for the operator induced on 𝔽_q^N / V₁, so the count recurses on
//! the Jordan type of that operator.
//!
//! The induced type is determined by the numbers dim(V₁ ∩ Kₖ), where
//! Kₖ = ker X ∩ im X^k is spanned by the bottoms of the blocks longer
//! than k. A [`FlagCounter`] classifies the μ₁-subspaces of ker X by these
//! numbers; everything else is shared.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::characters::kostka;
use crate::error::{arg, Error, Result};
use crate::finite_field::{first_primes, gaussian_binomial, is_prime, PrimeField};
use crate::limits;
use crate::linalg::{format_rational, is_nonneg_integer, Rational};
use crate::registry::Registry;
use crate::wedge::{binomial, subsets};
use crate::weights::{conjugate, partitions_of, Partition, WeightVec};

/// A nilpotent operator in Jordan form over 𝔽_p.
#[derive(Debug, Clone)]
pub struct NilpotentOperator {
    pub nu: Partition,
    pub field: PrimeField,
    /// Dense matrix, rows then columns. Block b occupies consecutive
    /// coordinates, X sends the j-th basis vector of a block to the (j-1)-th.
    pub matrix: Vec<Vec<u64>>,
}

impl NilpotentOperator {
    pub fn jordan(nu: &Partition, q: u64) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let n = nu.size();
        let mut matrix = vec![vec![0u64; n]; n];
        let mut start = 0;
        for &s in nu.parts() {
            for j in 1..s {
                matrix[start + j - 1][start + j] = 1;
            }
            start += s;
        }
        Ok(NilpotentOperator {
            nu: nu.clone(),
            field,
            matrix,
        })
    }

    pub fn size(&self) -> usize {
        self.nu.size()
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
            })
            .collect()
    }

    /// dim X^k 𝔽_q^N for k = 0, 1, ..., ν₁.
    pub fn rank_sequence(&self) -> Vec<usize> {
        let n = self.size();
        let mut images: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut ranks = vec![self.field.rank(&images)];
        for _ in 0..self.nu.largest() {
            images = images.iter().map(|v| self.apply(v)).collect();
            ranks.push(self.field.rank(&images));
        }
        ranks
    }

    /// X^{ν₁} = 0 and the ranks of the powers are those of type ν.
    pub fn check(&self) -> Result<()> {
        let ranks = self.rank_sequence();
        let expected = expected_ranks(&self.nu);
        if ranks != expected || ranks.last().copied().unwrap_or(0) != 0 {
            return Err(Error::InvariantViolation(format!(
                "operator of type {} has rank sequence {ranks:?}",
                self.nu
            )));
        }
        Ok(())
    }
}

/// dim X^k V for k = 0..=ν₁.
fn expected_ranks(nu: &Partition) -> Vec<usize> {
    (0..=nu.largest())
        .map(|k| nu.parts().iter().map(|&s| s.saturating_sub(k)).sum())
        .collect()
}

/// Block sizes in ascending order: coordinates of ker X, largest blocks last,
/// so that each Kₖ is a suffix.
fn kernel_block_sizes(nu: &Partition) -> Vec<usize> {
    let mut sizes = nu.parts().to_vec();
    sizes.reverse();
    sizes
}

/// Jordan type of X on V/V₁ given d[k-1] = dim(V₁ ∩ Kₖ) for k ≥ 1.
fn quotient_type(nu: &Partition, dim_v1: usize, d: &[usize]) -> Partition {
    let ranks = expected_ranks(nu);
    let r = |k: usize| -> usize {
        if k == 0 {
            ranks[0] - dim_v1
        } else if k < ranks.len() {
            ranks[k] - d[k - 1]
        } else {
            0
        }
    };
    let blocks_at_least: Vec<usize> = (1..=nu.largest()).map(|k| r(k - 1) - r(k)).collect();
    conjugate(&Partition::from_unsorted(blocks_at_least))
}

/// Classifies the k-dimensional subspaces of ker X by the Jordan type of the
/// induced operator on the quotient.
pub trait FlagCounter: Send + Sync {
    fn name(&self) -> &'static str;

    /// Map from quotient type to the number of k-subspaces of ker X giving it.
    fn kernel_strata(&self, field: PrimeField, nu: &Partition, k: usize) -> BTreeMap<Partition, BigUint>;

    /// Estimated number of echelon forms visited for one full count.
    fn estimate(&self, q: u64, nu: &Partition, mu: &[usize]) -> u128;
}

/// Groups subspaces by Schubert cell: with kernel coordinates ordered so each
/// Kₖ is a suffix, dim(V₁ ∩ Kₖ) is the number of pivots in that suffix, and
/// a cell with f free entries holds q^f subspaces.
pub struct CellCounter;

/// Enumerates every subspace of ker X and computes the intersections by
/// rank over 𝔽_q.
pub struct ExhaustiveCounter;

impl FlagCounter for CellCounter {
    fn name(&self) -> &'static str {
        "cells"
    }

    fn kernel_strata(&self, field: PrimeField, nu: &Partition, k: usize) -> BTreeMap<Partition, BigUint> {
        let sizes = kernel_block_sizes(nu);
        let l = sizes.len();
        let q = BigUint::from(field.order());
        let mut out = BTreeMap::new();
        for pivots in subsets(l, k) {
            let free: usize = pivots
                .iter()
                .map(|&p| (p + 1..l).filter(|c| !pivots.contains(c)).count())
                .sum();
            let d: Vec<usize> = (1..=nu.largest())
                .map(|t| pivots.iter().filter(|&&p| sizes[p] > t).count())
                .collect();
            let tau = quotient_type(nu, k, &d);
            *out.entry(tau).or_insert_with(BigUint::zero) += q.pow(free as u32);
        }
        out
    }

    fn estimate(&self, _q: u64, nu: &Partition, mu: &[usize]) -> u128 {
        visited_estimate(nu, mu, binomial)
    }
}

impl FlagCounter for ExhaustiveCounter {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn kernel_strata(&self, field: PrimeField, nu: &Partition, k: usize) -> BTreeMap<Partition, BigUint> {
        let sizes = kernel_block_sizes(nu);
        let l = sizes.len();
        let suffix_bases: Vec<Vec<Vec<u64>>> = (1..=nu.largest())
            .map(|t| {
                (0..l)
                    .filter(|&c| sizes[c] > t)
                    .map(|c| (0..l).map(|j| u64::from(j == c)).collect())
                    .collect()
            })
            .collect();
        let mut out = BTreeMap::new();
        field.for_each_echelon_form(l, k, &mut |rows| {
            let d: Vec<usize> = suffix_bases
                .iter()
                .map(|kt| {
                    let mut stacked = rows.to_vec();
                    stacked.extend(kt.iter().cloned());
                    k + kt.len() - field.rank(&stacked)
                })
                .collect();
            let tau = quotient_type(nu, k, &d);
            *out.entry(tau).or_insert_with(BigUint::zero) += 1u32;
        });
        out
    }

    fn estimate(&self, q: u64, nu: &Partition, mu: &[usize]) -> u128 {
        visited_estimate(nu, mu, |l, k| gaussian_binomial(l, k, q))
    }
}

/// Per step: (possible quotient types) × (forms visited in a kernel of
/// dimension ≤ ℓ(ν)). Quotients never have more blocks than ν.
fn visited_estimate(nu: &Partition, mu: &[usize], forms: impl Fn(usize, usize) -> u128) -> u128 {
    let l = nu.length();
    let mut remaining = nu.size();
    let mut total = 0u128;
    for &k in mu {
        let types = partitions_of(remaining).len() as u128;
        total = total.saturating_add(types.saturating_mul(forms(l, k.min(l))));
        remaining = remaining.saturating_sub(k);
    }
    total
}

pub fn flag_counters() -> Registry<dyn FlagCounter> {
    let mut r: Registry<dyn FlagCounter> = Registry::new("flag counter");
    r.register("cells", Box::new(CellCounter));
    r.register("exhaustive", Box::new(ExhaustiveCounter));
    r
}

fn validate(nu: &Partition, mu: &WeightVec, n: usize) -> Result<Vec<usize>> {
    if mu.len() != n || !mu.is_nonnegative() {
        return arg(format!("{mu} is not a nonnegative weight with {n} entries"));
    }
    if mu.sum() as usize != nu.size() {
        return arg(format!("|ν| = {} but |μ| = {}", nu.size(), mu.sum()));
    }
    if nu.largest() > n {
        return arg(format!("ν₁ = {} exceeds n = {n}", nu.largest()));
    }
    Ok(mu.entries().iter().map(|&x| x as usize).collect())
}

/// Exact number of 𝔽_q points of Fl_μ(𝔽_q^N)^X for X of Jordan type ν.
pub fn count_fiber_points(q: u64, nu: &Partition, mu: &WeightVec, n: usize) -> Result<BigUint> {
    count_with(&CellCounter, q, nu, mu, n)
}

pub fn count_with(
    counter: &dyn FlagCounter,
    q: u64,
    nu: &Partition,
    mu: &WeightVec,
    n: usize,
) -> Result<BigUint> {
    if !is_prime(q) {
        return arg(format!("q = {q} is not prime"));
    }
    let parts = validate(nu, mu, n)?;
    let estimate = counter.estimate(q, nu, &parts);
    let limit = limits::current().max_echelon_forms;
    if estimate > limit {
        return Err(Error::Resource {
            what: "flag enumeration (echelon forms)",
            estimate,
            limit,
        });
    }
    let field = PrimeField::new(q)?;
    let mut memo = HashMap::new();
    Ok(count_rec(counter, field, nu, &parts, &mut memo))
}

type Memo = HashMap<(Partition, usize), BigUint>;

fn count_rec(
    counter: &dyn FlagCounter,
    field: PrimeField,
    nu: &Partition,
    mu: &[usize],
    memo: &mut Memo,
) -> BigUint {
    let Some((&first, rest)) = mu.split_first() else {
        return if nu.size() == 0 { BigUint::one() } else { BigUint::zero() };
    };
    if first > nu.length() {
        return BigUint::zero();
    }
    let key = (nu.clone(), mu.len());
    if let Some(c) = memo.get(&key) {
        return c.clone();
    }
    let mut total = BigUint::zero();
    for (tau, mult) in counter.kernel_strata(field, nu, first) {
        let sub = count_rec(counter, field, &tau, rest, memo);
        total += mult * sub;
    }
    memo.insert(key, total.clone());
    total
}

/// Polynomial in q with rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<Rational>);

impl Polynomial {
    fn trimmed(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Polynomial(c)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}q", format_rational(c)),
                _ => format!("{}q^{i}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Newton interpolation through all points, expanded to monomial form.
fn newton(points: &[(Rational, Rational)]) -> Polynomial {
    let n = points.len();
    let mut coef: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&points[i].0 - &points[i - j].0);
        }
    }
    let mut poly = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (x - x_i) + coef[i]
        let mut next = vec![Rational::zero(); n];
        for (k, c) in poly.iter().enumerate() {
            if k + 1 < n {
                next[k + 1] += c;
            }
            next[k] -= c * &points[i].0;
        }
        next[0] += &coef[i];
        poly = next;
    }
    Polynomial::trimmed(poly)
}

/// The polynomial of degree ≤ `degree_bound` through the first
/// `degree_bound + 1` points; every further point must lie on it.
pub fn interpolate(counts: &BTreeMap<u64, BigUint>, degree_bound: usize) -> Result<Polynomial> {
    if counts.len() < degree_bound + 2 {
        return arg(format!(
            "degree bound {degree_bound} needs at least {} points, got {}",
            degree_bound + 2,
            counts.len()
        ));
    }
    let points: Vec<(Rational, Rational)> = counts
        .iter()
        .map(|(&q, c)| {
            (
                Rational::from_integer(BigInt::from(q)),
                Rational::from_integer(BigInt::from(c.clone())),
            )
        })
        .collect();
    let poly = newton(&points[..degree_bound + 1]);
    if points[degree_bound + 1..].iter().any(|(x, y)| &poly.eval(x) != y) {
        return Err(Error::NonPolynomialCount {
            degree_bound,
            points: points.len(),
        });
    }
    Ok(poly)
}

#[derive(Debug, Clone)]
pub struct PointCountTable {
    pub lam: Partition,
    pub mu: WeightVec,
    pub counts: BTreeMap<u64, BigUint>,
    pub poly: Polynomial,
    pub degree: usize,
}

impl PointCountTable {
    /// The leading coefficient as an integer.
    pub fn leading(&self) -> Result<u64> {
        let lead = self.poly.leading();
        lead.to_integer()
            .to_u64()
            .filter(|_| is_nonneg_integer(&lead))
            .ok_or_else(|| Error::InvariantViolation(format!("leading coefficient {lead}")))
    }
}

/// Largest possible fibre dimension: dim Fl_μ = Σ_{i<j} μᵢμⱼ.
pub fn degree_cap(mu: &WeightVec) -> usize {
    let e = mu.entries();
    let mut cap = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            cap += (e[i].max(0) * e[j].max(0)) as usize;
        }
    }
    cap
}

/// Counts over primes and fits the point-count polynomial.
///
/// With explicit primes, the smallest degree explained by all of them is
/// taken. Otherwise primes are added until a fit of degree d on d+2 primes
/// agrees with the fit of degree d+1 on d+3 primes, up to the cap
/// Σ_{i<j} μᵢμⱼ.
pub fn point_count_table(
    counter: &dyn FlagCounter,
    nu: &Partition,
    mu: &WeightVec,
    n: usize,
    primes: Option<&[u64]>,
) -> Result<PointCountTable> {
    validate(nu, mu, n)?;
    let cap = degree_cap(mu);
    let count_all = |ps: &[u64]| -> Result<Vec<(u64, BigUint)>> {
        ps.par_iter()
            .map(|&q| count_with(counter, q, nu, mu, n).map(|c| (q, c)))
            .collect()
    };
    let (counts, poly) = match primes {
        Some(ps) => {
            if let Some(&bad) = ps.iter().find(|&&q| !is_prime(q)) {
                return arg(format!("q = {bad} is not prime"));
            }
            let counts: BTreeMap<u64, BigUint> = count_all(ps)?.into_iter().collect();
            if counts.len() < 2 {
                return arg("at least two distinct primes are needed");
            }
            let mut found = None;
            for d in 0..=cap.min(counts.len() - 2) {
                if let Ok(p) = interpolate(&counts, d) {
                    found = Some(p);
                    break;
                }
            }
            let poly = found.ok_or(Error::NonPolynomialCount {
                degree_bound: cap.min(counts.len() - 2),
                points: counts.len(),
            })?;
            (counts, poly)
        }
        None => {
            let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
            let mut found = None;
            for d in 0..=cap {
                let need = first_primes(d + 3);
                let missing: Vec<u64> = need.iter().copied().filter(|q| !counts.contains_key(q)).collect();
                counts.extend(count_all(&missing)?);
                let head = |k: usize| -> BTreeMap<u64, BigUint> {
                    need[..k].iter().map(|q| (*q, counts[q].clone())).collect()
                };
                let (Ok(low), Ok(high)) = (interpolate(&head(d + 2), d), interpolate(&head(d + 3), d + 1))
                else {
                    continue;
                };
                if low == high {
                    found = Some(low);
                    break;
                }
            }
            let poly = found.ok_or(Error::NonPolynomialCount {
                degree_bound: cap,
                points: counts.len(),
            })?;
            (counts, poly)
        }
    };
    if let Some(c) = poly.0.iter().find(|c| !is_nonneg_integer(c)) {
        return Err(Error::InvariantViolation(format!(
            "point-count polynomial {poly} has coefficient {c}, not a nonnegative integer"
        )));
    }
    Ok(PointCountTable {
        lam: conjugate(nu),
        mu: mu.clone(),
        counts,
        degree: poly.degree(),
        poly,
    })
}

/// Number of top-dimensional components of the fibre: the leading
/// coefficient of its point count. Checked against K_{ν^∨, μ}.
pub fn component_count(nu: &Partition, mu: &WeightVec, n: usize) -> Result<u64> {
    let table = point_count_table(&CellCounter, nu, mu, n, None)?;
    let leading = table.leading()?;
    let expected = kostka(&table.lam, mu)?;
    if leading != expected {
        return Err(Error::Mismatch(format!(
            "ν = {nu}, μ = {mu}: leading coefficient {leading} but Kostka number {expected}"
        )));
    }
    Ok(leading)
}
