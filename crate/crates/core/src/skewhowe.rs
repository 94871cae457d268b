//! Λ^N(ℂⁿ ⊗ ℂᵐ) with its commuting gl_n and gl_m actions.
//!
//! Basis vectors are N-subsets of the pairs (i, a), pair (i, a) encoded as
//! i·m + a so that sorted subsets are lexicographic in (i, a). A gl_n
//! generator moves one pair along i, a gl_m generator along a; the wedge is
//! re-sorted with the shared sign convention of [`crate::wedge`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::characters::dim_irrep;
use crate::error::{arg, Error, Result};
use crate::glmodules::{Chevalley, ExplicitModule};
use crate::limits;
use crate::linalg::{axpy, int, kernel, AdaptedBasis, SparseMatrix, SparseVec};
use crate::wedge::{binomial, subsets, substitute};
use crate::weights::{compositions, conjugate, emission_order, partitions_of, Partition, WeightVec};

/// Which of the two general linear algebras acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    GlN,
    GlM,
}

type SliceKey = (WeightVec, WeightVec);

#[derive(Debug)]
pub struct BiModule {
    n: usize,
    m: usize,
    big_n: usize,
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    biweights: Vec<SliceKey>,
    slices: HashMap<SliceKey, Vec<usize>>,
    hom_cache: RwLock<HashMap<(Partition, WeightVec), Arc<HomSpace>>>,
}

/// gl_m highest-weight vectors of weight λ inside the gl_n weight-μ slice.
#[derive(Debug, Clone, Serialize)]
pub struct HomSpace {
    pub lam: Partition,
    pub mu: WeightVec,
    #[serde(skip)]
    pub basis: AdaptedBasis,
    pub dim: usize,
}

pub fn build_bimodule(n: usize, m: usize, big_n: usize) -> Result<BiModule> {
    if n == 0 || m == 0 {
        return arg("n and m must be >= 1");
    }
    if big_n > n * m {
        return arg(format!("Λ^{big_n} of a {}-dimensional space", n * m));
    }
    limits::current().check_dim("skew Howe bimodule", binomial(n * m, big_n))?;
    let basis = subsets(n * m, big_n);
    let index = basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let biweights: Vec<SliceKey> = basis
        .iter()
        .map(|s| {
            let mut wn = vec![0i64; n];
            let mut wm = vec![0i64; m];
            for &p in s {
                wn[p / m] += 1;
                wm[p % m] += 1;
            }
            (WeightVec::new(wn).unwrap(), WeightVec::new(wm).unwrap())
        })
        .collect();
    let mut slices: HashMap<SliceKey, Vec<usize>> = HashMap::new();
    for (i, key) in biweights.iter().enumerate() {
        slices.entry(key.clone()).or_default().push(i);
    }
    Ok(BiModule {
        n,
        m,
        big_n,
        basis,
        index,
        biweights,
        slices,
        hom_cache: RwLock::new(HashMap::new()),
    })
}

impl BiModule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.big_n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    /// (gl_n weight, gl_m weight) of each basis vector.
    pub fn biweights(&self) -> &[SliceKey] {
        &self.biweights
    }

    fn rank_of(&self, side: Side) -> usize {
        match side {
            Side::GlN => self.n,
            Side::GlM => self.m,
        }
    }

    /// Image of basis vector `b` under a generator, as signed basis indices.
    pub fn apply_basis(&self, side: Side, g: Chevalley, b: usize) -> Vec<(usize, i64)> {
        let s = &self.basis[b];
        let m = self.m;
        let mut out = Vec::new();
        for (pos, &p) in s.iter().enumerate() {
            let (i, a) = (p / m, p % m);
            let moved = match (side, g) {
                (Side::GlN, Chevalley::E(k)) if i == k + 1 => Some(k * m + a),
                (Side::GlN, Chevalley::F(k)) if i == k => Some((k + 1) * m + a),
                (Side::GlM, Chevalley::E(k)) if a == k + 1 => Some(i * m + k),
                (Side::GlM, Chevalley::F(k)) if a == k => Some(i * m + k + 1),
                _ => None,
            };
            if let Some(target) = moved {
                if let Some((sign, t)) = substitute(s, pos, target) {
                    out.push((self.index[&t], sign));
                }
            }
        }
        out
    }

    pub fn apply(&self, side: Side, g: Chevalley, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&b, x) in v {
            for (t, sign) in self.apply_basis(side, g, b) {
                let mut single = SparseVec::new();
                single.insert(t, int(sign));
                axpy(&mut out, x, &single);
            }
        }
        out
    }

    /// The full matrix of a generator. Built on demand.
    pub fn generator_matrix(&self, side: Side, g: Chevalley) -> SparseMatrix {
        let triplets = (0..self.dim()).flat_map(|b| {
            self.apply_basis(side, g, b)
                .into_iter()
                .map(move |(t, s)| (t, b, int(s)))
        });
        SparseMatrix::from_triplets(self.dim(), self.dim(), triplets)
    }

    pub fn generators(&self, side: Side) -> Vec<Chevalley> {
        let r = self.rank_of(side);
        (0..r.saturating_sub(1))
            .flat_map(|i| [Chevalley::E(i), Chevalley::F(i)])
            .collect()
    }

    /// One side of the bimodule as an explicit module (weights of that side).
    pub fn side_module(&self, side: Side) -> Result<ExplicitModule> {
        let r = self.rank_of(side);
        let weights = self
            .biweights
            .iter()
            .map(|(wn, wm)| match side {
                Side::GlN => wn.clone(),
                Side::GlM => wm.clone(),
            })
            .collect();
        let e = (0..r - 1)
            .map(|i| self.generator_matrix(side, Chevalley::E(i)))
            .collect();
        let f = (0..r - 1)
            .map(|i| self.generator_matrix(side, Chevalley::F(i)))
            .collect();
        ExplicitModule::from_parts(r, weights, e, f)
    }

    /// Every gl_n generator commutes with every gl_m generator.
    pub fn check_commutation(&self) -> Result<()> {
        let gm: Vec<_> = self
            .generators(Side::GlM)
            .into_iter()
            .map(|g| (g, self.generator_matrix(Side::GlM, g)))
            .collect();
        for g in self.generators(Side::GlN) {
            let a = self.generator_matrix(Side::GlN, g);
            for (h, b) in &gm {
                if !a.mul(b).sub(&b.mul(&a)).is_zero() {
                    return Err(Error::InvariantViolation(format!(
                        "gl_n {g:?} and gl_m {h:?} do not commute"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Joint kernel of the given raising operators on one bi-weight slice.
    fn slice_kernel(&self, key: &SliceKey, raising: &[(Side, Chevalley)]) -> AdaptedBasis {
        let Some(cols) = self.slices.get(key) else {
            return AdaptedBasis {
                vectors: Vec::new(),
                coord_cols: Vec::new(),
            };
        };
        let mut row_of: HashMap<usize, usize> = HashMap::new();
        let mut triplets = Vec::new();
        for (j, &c) in cols.iter().enumerate() {
            for &(side, g) in raising {
                for (t, sign) in self.apply_basis(side, g, c) {
                    let next = row_of.len();
                    let r = *row_of.entry(t).or_insert(next);
                    triplets.push((r, j, int(sign)));
                }
            }
        }
        let k = kernel(&SparseMatrix::from_triplets(row_of.len(), cols.len(), triplets));
        AdaptedBasis {
            vectors: k
                .vectors
                .iter()
                .map(|v| v.iter().map(|(&j, x)| (cols[j], x.clone())).collect())
                .collect(),
            coord_cols: k.coord_cols.iter().map(|&j| cols[j]).collect(),
        }
    }

    fn raising(&self, side: Side) -> Vec<(Side, Chevalley)> {
        (0..self.rank_of(side).saturating_sub(1))
            .map(|i| (side, Chevalley::E(i)))
            .collect()
    }

    /// Dimension of the joint highest-weight space of both actions, per
    /// bi-weight, omitting zeros.
    pub fn joint_highest_weight_dims(&self) -> BTreeMap<SliceKey, usize> {
        let mut raising = self.raising(Side::GlN);
        raising.extend(self.raising(Side::GlM));
        let mut keys: Vec<&SliceKey> = self.slices.keys().collect();
        keys.sort();
        keys.into_iter()
            .filter(|(wn, wm)| wn.is_dominant() && wm.is_dominant())
            .map(|k| (k.clone(), self.slice_kernel(k, &raising).dim()))
            .filter(|&(_, d)| d > 0)
            .collect()
    }
}

/// One summand V(λ^∨) ⊗ V(λ) of the skew Howe decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HowePair {
    pub gl_n: WeightVec,
    pub gl_m: WeightVec,
    pub dim_n: u64,
    pub dim_m: u64,
}

/// Summands of Λ^N(ℂⁿ ⊗ ℂᵐ): λ ⊢ N with at most m parts, each at most n,
/// paired with λ^∨. The total dimension is checked against C(nm, N).
pub fn decompose_howe(n: usize, m: usize, big_n: usize) -> Result<Vec<HowePair>> {
    if n == 0 || m == 0 {
        return arg("n and m must be >= 1");
    }
    let mut pairs = Vec::new();
    for lam in partitions_of(big_n) {
        if lam.length() > m || lam.largest() > n {
            continue;
        }
        let dual = conjugate(&lam);
        let gl_n = dual.to_dominant(n)?;
        let gl_m = lam.to_dominant(m)?;
        pairs.push(HowePair {
            dim_n: dim_irrep(&gl_n, n)?,
            dim_m: dim_irrep(&gl_m, m)?,
            gl_n: gl_n.weight().clone(),
            gl_m: gl_m.weight().clone(),
        });
    }
    let total: u128 = pairs.iter().map(|p| p.dim_n as u128 * p.dim_m as u128).sum();
    if total != binomial(n * m, big_n) {
        return Err(Error::InvariantViolation(format!(
            "summands have total dimension {total}, expected C({}, {big_n})",
            n * m
        )));
    }
    Ok(pairs)
}

/// The gl_m highest-weight vectors of weight λ in the gl_n weight-μ slice,
/// i.e. Hom_{gl_m}(V(λ), Λ^{μ_1}ℂᵐ ⊗ ⋯ ⊗ Λ^{μ_n}ℂᵐ). Cached per (λ, μ).
pub fn hom_space(b: &BiModule, lam: &Partition, mu: &WeightVec) -> Result<Arc<HomSpace>> {
    if mu.len() != b.n || !mu.is_nonnegative() {
        return arg(format!("{mu} is not a nonnegative gl_{} weight", b.n));
    }
    if lam.size() != b.big_n || mu.sum() as usize != b.big_n {
        return arg(format!(
            "|λ| = {} and |μ| = {} must both equal N = {}",
            lam.size(),
            mu.sum(),
            b.big_n
        ));
    }
    if lam.length() > b.m {
        return arg(format!("{lam} has more than m = {} parts", b.m));
    }
    let cache_key = (lam.clone(), mu.clone());
    if let Some(h) = b.hom_cache.read().unwrap().get(&cache_key) {
        return Ok(h.clone());
    }
    let key = (mu.clone(), lam.to_weight(b.m)?);
    let basis = b.slice_kernel(&key, &b.raising(Side::GlM));
    let h = Arc::new(HomSpace {
        lam: lam.clone(),
        mu: mu.clone(),
        dim: basis.dim(),
        basis,
    });
    // first write wins; a concurrent duplicate is identical
    let mut cache = b.hom_cache.write().unwrap();
    Ok(cache.entry(cache_key).or_insert(h).clone())
}

/// ⊕_μ hom_space(B, λ, μ) with the restricted gl_n action: a copy of V(λ^∨).
pub fn induced_gln_module(b: &BiModule, lam: &Partition) -> Result<ExplicitModule> {
    if lam.size() != b.big_n || lam.length() > b.m || lam.largest() > b.n {
        return arg(format!(
            "{lam} is not a partition of {} inside a {}x{} box",
            b.big_n, b.m, b.n
        ));
    }
    let top = conjugate(lam).to_weight(b.n)?;
    let mut pieces = Vec::new();
    for mu in compositions(b.big_n, b.n) {
        let h = hom_space(b, lam, &mu)?;
        if h.dim > 0 {
            pieces.push((mu, h.basis.clone()));
        }
    }
    pieces.sort_by(|x, y| emission_order(&top, &x.0, &y.0));
    ExplicitModule::from_weighted_pieces(b.n, pieces, |g, v| b.apply(Side::GlN, g, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character_table, kostka};

    fn w(v: &[i64]) -> WeightVec {
        WeightVec::new(v.to_vec()).unwrap()
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_bimodule(2, 3, 3).unwrap().dim(), 20);
        let triv = build_bimodule(2, 3, 0).unwrap();
        assert_eq!(triv.dim(), 1);
        assert_eq!(triv.biweights()[0], (w(&[0, 0]), w(&[0, 0, 0])));
        assert!(build_bimodule(2, 2, 5).is_err());
    }

    #[test]
    fn single_row_is_exterior_power() {
        for m in 1..=4 {
            for k in 0..=m {
                let b = build_bimodule(1, m, k).unwrap();
                let glm = b.side_module(Side::GlM).unwrap();
                let dec = glm.decompose().unwrap();
                assert_eq!(dec.components, vec![(Partition::column(k).to_dominant(m).unwrap(), 1)]);
            }
        }
    }

    #[test]
    fn howe_examples() {
        let pairs = decompose_howe(2, 3, 3).unwrap();
        let keys: Vec<_> = pairs.iter().map(|p| (p.gl_n.clone(), p.gl_m.clone())).collect();
        assert_eq!(
            keys,
            vec![(w(&[2, 1]), w(&[2, 1, 0])), (w(&[3, 0]), w(&[1, 1, 1]))]
        );
        assert_eq!(pairs.iter().map(|p| p.dim_n * p.dim_m).sum::<u64>(), 20);

        let pairs = decompose_howe(2, 3, 2).unwrap();
        let keys: Vec<_> = pairs.iter().map(|p| (p.gl_n.clone(), p.gl_m.clone())).collect();
        assert_eq!(
            keys,
            vec![(w(&[1, 1]), w(&[2, 0, 0])), (w(&[2, 0]), w(&[1, 1, 0]))]
        );

        let full = decompose_howe(2, 3, 6).unwrap();
        assert_eq!(full.len(), 1);
        assert_eq!((full[0].gl_n.clone(), full[0].gl_m.clone()), (w(&[3, 3]), w(&[2, 2, 2])));
    }

    #[test]
    fn joint_highest_weights_are_multiplicity_free() {
        for n in 1..=3 {
            for m in 1..=3 {
                for big_n in 0..=(n * m).min(4) {
                    let b = build_bimodule(n, m, big_n).unwrap();
                    let expected: BTreeMap<SliceKey, usize> = decompose_howe(n, m, big_n)
                        .unwrap()
                        .into_iter()
                        .map(|p| ((p.gl_n, p.gl_m), 1))
                        .collect();
                    assert_eq!(b.joint_highest_weight_dims(), expected, "n={n} m={m} N={big_n}");
                }
            }
        }
    }

    #[test]
    fn actions_commute_and_satisfy_relations() {
        for n in 1..=3 {
            for m in 1..=3 {
                for big_n in 0..=(n * m).min(4) {
                    let b = build_bimodule(n, m, big_n).unwrap();
                    b.check_commutation().unwrap();
                    b.side_module(Side::GlN).unwrap().check_relations().unwrap();
                    b.side_module(Side::GlM).unwrap().check_relations().unwrap();
                }
            }
        }
    }

    #[test]
    fn dimension_identity() {
        for n in 1..=4 {
            for m in 1..=4 {
                for big_n in 0..=(n * m).min(6) {
                    decompose_howe(n, m, big_n).unwrap();
                }
            }
        }
    }

    #[test]
    fn hom_space_examples() {
        let b = build_bimodule(3, 3, 3).unwrap();
        assert_eq!(hom_space(&b, &p(&[2, 1]), &w(&[1, 1, 1])).unwrap().dim, 2);
        assert_eq!(hom_space(&b, &p(&[1, 1, 1]), &w(&[1, 1, 1])).unwrap().dim, 1);
        assert_eq!(hom_space(&b, &p(&[2, 1]), &w(&[3, 0, 0])).unwrap().dim, 0);
        assert!(hom_space(&b, &p(&[2, 1]), &w(&[1, 1, 0])).is_err());
        assert!(hom_space(&b, &p(&[1, 1, 1, 1]), &w(&[2, 1, 1])).is_err());
    }

    #[test]
    fn hom_dims_are_kostka_numbers() {
        for (n, m) in [(2, 3), (3, 2), (3, 3), (2, 4)] {
            for big_n in 0..=6.min(n * m) {
                let b = build_bimodule(n, m, big_n).unwrap();
                for lam in partitions_of(big_n).into_iter().filter(|l| l.length() <= m) {
                    for mu in compositions(big_n, n) {
                        let h = hom_space(&b, &lam, &mu).unwrap();
                        assert_eq!(h.dim as u64, kostka(&conjugate(&lam), &mu).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn induced_module_examples() {
        let b = build_bimodule(3, 3, 3).unwrap();
        let v = induced_gln_module(&b, &p(&[2, 1])).unwrap();
        assert_eq!(v.dim(), 8);
        let plucker = crate::glmodules::irrep_plucker(&p(&[2, 1]), 3).unwrap();
        assert_eq!(v.character(), plucker.character());

        let b = build_bimodule(2, 3, 3).unwrap();
        let v = induced_gln_module(&b, &p(&[1, 1, 1])).unwrap();
        assert_eq!(v.dim(), 4);
        assert_eq!(v.character(), crate::glmodules::sym_power(3, 2).unwrap().character());

        let b = build_bimodule(2, 3, 6).unwrap();
        let v = induced_gln_module(&b, &p(&[2, 2, 2])).unwrap();
        assert_eq!(v.basis_weights(), &[w(&[3, 3])]);
        assert!(induced_gln_module(&b, &p(&[3, 3])).is_err());
    }

    #[test]
    fn induced_modules_are_irreducible() {
        for (n, m) in [(2, 2), (2, 3), (3, 3)] {
            for big_n in 0..=5.min(n * m) {
                let b = build_bimodule(n, m, big_n).unwrap();
                for lam in partitions_of(big_n)
                    .into_iter()
                    .filter(|l| l.length() <= m && l.largest() <= n)
                {
                    let v = induced_gln_module(&b, &lam).unwrap();
                    v.check_relations().unwrap();
                    let dual = conjugate(&lam).to_dominant(n).unwrap();
                    assert_eq!(v.decompose().unwrap().components, vec![(dual.clone(), 1)]);
                    assert_eq!(v.character(), character_table(&dual, n).unwrap().entries);
                }
            }
        }
    }

    #[test]
    fn hom_cache_returns_same_space() {
        let b = build_bimodule(2, 2, 2).unwrap();
        let a = hom_space(&b, &p(&[1, 1]), &w(&[1, 1])).unwrap();
        let c = hom_space(&b, &p(&[1, 1]), &w(&[1, 1])).unwrap();
        assert!(Arc::ptr_eq(&a, &c));
    }
}
