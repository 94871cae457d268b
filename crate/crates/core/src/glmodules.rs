//! Explicit finite-dimensional gl_n modules.
//!
//! A module is a basis of weight vectors together with exact matrices for the
//! Chevalley generators E_i (raising, weight + α_i) and F_i (lowering,
//! weight − α_i). The Cartan action is implicit in the basis weights.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use crate::characters::{character, dim_irrep};
use crate::error::{arg, Error, Result};
use crate::limits;
use crate::linalg::{int, kernel, AdaptedBasis, EchelonBasis, SparseMatrix, SparseVec};
use crate::wedge::{binomial, subsets, substitute};
use crate::weights::{
    compositions, conjugate, emission_order, DominantWeight, Partition, WeightVec,
};

/// A Chevalley generator, 0-indexed: `E(i)` is the elementary matrix at (i, i+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chevalley {
    E(usize),
    F(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitModule {
    n: usize,
    basis_weights: Vec<WeightVec>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
}

impl ExplicitModule {
    /// Assembles a module from parts. Shapes are checked; the gl_n relations are not
    /// (see [`ExplicitModule::check_relations`]).
    pub fn from_parts(
        n: usize,
        basis_weights: Vec<WeightVec>,
        e: Vec<SparseMatrix>,
        f: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let dim = basis_weights.len();
        if n == 0 {
            return arg("rank must be >= 1");
        }
        if basis_weights.iter().any(|w| w.len() != n) {
            return arg(format!("basis weight of wrong length for rank {n}"));
        }
        if e.len() != n - 1 || f.len() != n - 1 {
            return arg(format!("rank {n} needs {} generators of each kind", n - 1));
        }
        if e.iter()
            .chain(&f)
            .any(|m| m.rows() != dim || m.cols() != dim)
        {
            return arg(format!("generator matrices must be {dim}x{dim}"));
        }
        Ok(ExplicitModule {
            n,
            basis_weights,
            e,
            f,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis_weights.len()
    }

    pub fn basis_weights(&self) -> &[WeightVec] {
        &self.basis_weights
    }

    pub fn e(&self, i: usize) -> &SparseMatrix {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseMatrix {
        &self.f[i]
    }

    pub fn generator(&self, g: Chevalley) -> &SparseMatrix {
        match g {
            Chevalley::E(i) => &self.e[i],
            Chevalley::F(i) => &self.f[i],
        }
    }

    pub fn apply(&self, g: Chevalley, v: &SparseVec) -> SparseVec {
        self.generator(g).apply(v)
    }

    /// Matrix of a generator from the weight-`source` basis vectors to the
    /// basis vectors of the shifted weight.
    pub fn weight_block(&self, g: Chevalley, source: &WeightVec) -> SparseMatrix {
        let target = match g {
            Chevalley::E(i) => source.add(&WeightVec::simple_root(self.n, i)),
            Chevalley::F(i) => source.sub(&WeightVec::simple_root(self.n, i)),
        };
        let slices = self.weight_decompose();
        let empty = Vec::new();
        let cols = slices.get(source).unwrap_or(&empty);
        let rows = slices.get(&target).unwrap_or(&empty);
        let m = self.generator(g);
        let triplets = rows.iter().enumerate().flat_map(|(r, &ri)| {
            cols.iter()
                .enumerate()
                .map(move |(c, &ci)| (r, c, m.get(ri, ci)))
        });
        SparseMatrix::from_triplets(rows.len(), cols.len(), triplets)
    }

    /// Basis indices grouped by weight.
    pub fn weight_decompose(&self) -> BTreeMap<WeightVec, Vec<usize>> {
        let mut out: BTreeMap<WeightVec, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.basis_weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    pub fn character(&self) -> BTreeMap<WeightVec, u64> {
        self.weight_decompose()
            .into_iter()
            .map(|(w, idx)| (w, idx.len() as u64))
            .collect()
    }

    /// Verifies on every basis vector that E_i, F_i shift the weight by ±α_i and
    /// that (E_iF_i − F_iE_i)v = ⟨μ, α_i⟩v.
    pub fn check_relations(&self) -> Result<()> {
        for i in 0..self.n - 1 {
            let alpha = WeightVec::simple_root(self.n, i);
            let h = self.e[i].mul(&self.f[i]).sub(&self.f[i].mul(&self.e[i]));
            for (b, mu) in self.basis_weights.iter().enumerate() {
                let up = mu.add(&alpha);
                let down = mu.sub(&alpha);
                if let Some((&r, _)) = self.e[i]
                    .column(b)
                    .iter()
                    .find(|(&r, _)| self.basis_weights[r] != up)
                {
                    return Err(Error::InvariantViolation(format!(
                        "E_{} sends basis vector {b} of weight {mu} to vector {r} of weight {}",
                        i + 1,
                        self.basis_weights[r]
                    )));
                }
                if let Some((&r, _)) = self.f[i]
                    .column(b)
                    .iter()
                    .find(|(&r, _)| self.basis_weights[r] != down)
                {
                    return Err(Error::InvariantViolation(format!(
                        "F_{} sends basis vector {b} of weight {mu} to vector {r} of weight {}",
                        i + 1,
                        self.basis_weights[r]
                    )));
                }
                let mut expected = SparseVec::new();
                let pairing = mu.pair_with_root(i);
                if pairing != 0 {
                    expected.insert(b, int(pairing));
                }
                if h.column(b) != &expected {
                    return Err(Error::InvariantViolation(format!(
                        "[E_{0}, F_{0}] does not act by {pairing} on basis vector {b} of weight {mu}",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// For each weight μ with nonzero joint kernel, a basis of
    /// {v ∈ M_μ : E_i v = 0 for all i}, as vectors in the module's basis.
    pub fn highest_weight_vectors(&self) -> Vec<(WeightVec, AdaptedBasis)> {
        let slices = self.weight_decompose();
        let mut out = Vec::new();
        for (mu, cols) in &slices {
            // stack E_i restricted to M_μ → M_{μ+α_i}
            let mut row_of: HashMap<usize, usize> = HashMap::new();
            for i in 0..self.n - 1 {
                if let Some(targets) = slices.get(&mu.add(&WeightVec::simple_root(self.n, i))) {
                    for &t in targets {
                        let next = row_of.len();
                        row_of.entry(t).or_insert(next);
                    }
                }
            }
            let mut triplets = Vec::new();
            for (j, &c) in cols.iter().enumerate() {
                for i in 0..self.n - 1 {
                    for (r, v) in self.e[i].column(c) {
                        triplets.push((row_of[r], j, v.clone()));
                    }
                }
            }
            let m = SparseMatrix::from_triplets(row_of.len(), cols.len(), triplets);
            let k = kernel(&m);
            if k.dim() == 0 {
                continue;
            }
            let lift = |v: &SparseVec| -> SparseVec { v.iter().map(|(&j, x)| (cols[j], x.clone())).collect() };
            let vectors = k.vectors.iter().map(lift).collect();
            let coord_cols = k.coord_cols.iter().map(|&j| cols[j]).collect();
            out.push((
                mu.clone(),
                AdaptedBasis {
                    vectors,
                    coord_cols,
                },
            ));
        }
        out
    }

    /// Multiplicities of irreducible summands, read off from highest-weight
    /// vectors and cross-checked against the character.
    pub fn decompose(&self) -> Result<Decomposition> {
        let mut components: Vec<(DominantWeight, usize)> = Vec::new();
        for (mu, basis) in self.highest_weight_vectors() {
            let lam = DominantWeight::new(mu.into_vec()).map_err(|e| {
                Error::InvariantViolation(format!("highest weight vector of non-dominant weight: {e}"))
            })?;
            components.push((lam, basis.dim()));
        }
        // lexicographically descending extends dominance
        components.sort_by(|a, b| b.0.cmp(&a.0));

        let total: u64 = components
            .iter()
            .map(|(lam, m)| Ok(*m as u64 * dim_irrep(lam, self.n)?))
            .sum::<Result<u64>>()?;
        if total != self.dim() as u64 {
            return Err(Error::InvariantViolation(format!(
                "summand dimensions add to {total}, module has dimension {}",
                self.dim()
            )));
        }
        for (mu, mult) in self.character() {
            let predicted: u64 = components
                .iter()
                .map(|(lam, m)| Ok(*m as u64 * character(lam, &mu)?))
                .sum::<Result<u64>>()?;
            if predicted != mult {
                return Err(Error::InvariantViolation(format!(
                    "weight {mu}: decomposition predicts {predicted}, module has {mult}"
                )));
            }
        }
        Ok(Decomposition { components })
    }

    /// Submodule (or subquotient-free piece) spanned by weight-homogeneous
    /// bases, with generators restricted through `act`.
    ///
    /// Each piece must be adapted so coordinates can be read off; images of
    /// generators must land in the span of the target weight's piece.
    pub(crate) fn from_weighted_pieces<A>(
        n: usize,
        pieces: Vec<(WeightVec, AdaptedBasis)>,
        act: A,
    ) -> Result<Self>
    where
        A: Fn(Chevalley, &SparseVec) -> SparseVec,
    {
        let mut offset: HashMap<WeightVec, usize> = HashMap::new();
        let mut basis_weights = Vec::new();
        for (mu, b) in &pieces {
            offset.insert(mu.clone(), basis_weights.len());
            basis_weights.extend(std::iter::repeat_n(mu.clone(), b.dim()));
        }
        let by_weight: HashMap<&WeightVec, &AdaptedBasis> =
            pieces.iter().map(|(m, b)| (m, b)).collect();
        let dim = basis_weights.len();
        let mut e = Vec::new();
        let mut f = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let alpha = WeightVec::simple_root(n, i);
            for (g, out) in [(Chevalley::E(i), &mut e), (Chevalley::F(i), &mut f)] {
                let mut triplets = Vec::new();
                for (mu, b) in &pieces {
                    let target = match g {
                        Chevalley::E(_) => mu.add(&alpha),
                        Chevalley::F(_) => mu.sub(&alpha),
                    };
                    for (j, v) in b.vectors.iter().enumerate() {
                        let image = act(g, v);
                        if image.is_empty() {
                            continue;
                        }
                        let tb = by_weight.get(&target).ok_or_else(|| {
                            Error::InvariantViolation(format!(
                                "generator leaves the span: weight {target} has no basis"
                            ))
                        })?;
                        let coords = tb.coordinates(&image)?;
                        for (r, x) in coords.into_iter().enumerate() {
                            if !x.is_zero() {
                                triplets.push((offset[&target] + r, offset[mu] + j, x));
                            }
                        }
                    }
                }
                out.push(SparseMatrix::from_triplets(dim, dim, triplets));
            }
        }
        ExplicitModule::from_parts(n, basis_weights, e, f)
    }
}

/// Irreducible summands with multiplicities, highest weights in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub components: Vec<(DominantWeight, usize)>,
}

impl Decomposition {
    pub fn multiplicity(&self, lam: &DominantWeight) -> usize {
        self.components
            .iter()
            .find(|(l, _)| l == lam)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }
}

fn guard(what: &'static str, dim: u128) -> Result<()> {
    limits::current().check_dim(what, dim)
}

pub fn standard_module(n: usize) -> Result<ExplicitModule> {
    sym_power(1, n)
}

/// Sym^k ℂⁿ on monomials e^a; generators act as derivations.
pub fn sym_power(k: usize, n: usize) -> Result<ExplicitModule> {
    if n == 0 {
        return arg("rank must be >= 1");
    }
    guard("symmetric power", binomial(n + k - 1, k))?;
    let basis = compositions(k, n);
    let index: HashMap<&WeightVec, usize> = basis.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let dim = basis.len();
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..n - 1 {
        let alpha = WeightVec::simple_root(n, i);
        let mut et = Vec::new();
        let mut ft = Vec::new();
        for (c, a) in basis.iter().enumerate() {
            let ex = a.entries();
            if ex[i + 1] > 0 {
                et.push((index[&a.add(&alpha)], c, int(ex[i + 1])));
            }
            if ex[i] > 0 {
                ft.push((index[&a.sub(&alpha)], c, int(ex[i])));
            }
        }
        e.push(SparseMatrix::from_triplets(dim, dim, et));
        f.push(SparseMatrix::from_triplets(dim, dim, ft));
    }
    ExplicitModule::from_parts(n, basis, e, f)
}

/// Λ^k ℂⁿ on sorted k-subsets.
pub fn ext_power(k: usize, n: usize) -> Result<ExplicitModule> {
    if n == 0 {
        return arg("rank must be >= 1");
    }
    if k > n {
        return arg(format!("exterior power {k} of a rank {n} space"));
    }
    guard("exterior power", binomial(n, k))?;
    let basis = subsets(n, k);
    let index: HashMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let dim = basis.len();
    let weights = basis
        .iter()
        .map(|s| {
            let mut w = vec![0i64; n];
            for &x in s {
                w[x] = 1;
            }
            WeightVec::new(w).unwrap()
        })
        .collect();
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..n - 1 {
        let mut et = Vec::new();
        let mut ft = Vec::new();
        for (c, s) in basis.iter().enumerate() {
            for (pos, &x) in s.iter().enumerate() {
                let (target, out) = if x == i + 1 {
                    (i, &mut et)
                } else if x == i {
                    (i + 1, &mut ft)
                } else {
                    continue;
                };
                if let Some((sign, t)) = substitute(s, pos, target) {
                    out.push((index[&t], c, int(sign)));
                }
            }
        }
        e.push(SparseMatrix::from_triplets(dim, dim, et));
        f.push(SparseMatrix::from_triplets(dim, dim, ft));
    }
    ExplicitModule::from_parts(n, weights, e, f)
}

pub fn trivial_module(n: usize) -> Result<ExplicitModule> {
    sym_power(0, n)
}

pub fn determinant_module(n: usize) -> Result<ExplicitModule> {
    ext_power(n, n)
}

/// A ⊗ B with generators acting by g⊗1 + 1⊗g; basis pair (a, b) has index a·dim B + b.
pub fn tensor(a: &ExplicitModule, b: &ExplicitModule) -> Result<ExplicitModule> {
    if a.n != b.n {
        return arg(format!("tensor of rank {} and rank {} modules", a.n, b.n));
    }
    guard("tensor product", a.dim() as u128 * b.dim() as u128)?;
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let weights = (0..da)
        .flat_map(|i| (0..db).map(move |j| (i, j)))
        .map(|(i, j)| a.basis_weights[i].add(&b.basis_weights[j]))
        .collect();
    let lift = |ga: &SparseMatrix, gb: &SparseMatrix| {
        let mut t = Vec::new();
        for i in 0..da {
            for j in 0..db {
                let c = i * db + j;
                for (r, x) in ga.column(i) {
                    t.push((r * db + j, c, x.clone()));
                }
                for (r, x) in gb.column(j) {
                    t.push((i * db + r, c, x.clone()));
                }
            }
        }
        SparseMatrix::from_triplets(dim, dim, t)
    };
    let e = (0..a.n - 1).map(|i| lift(&a.e[i], &b.e[i])).collect();
    let f = (0..a.n - 1).map(|i| lift(&a.f[i], &b.f[i])).collect();
    ExplicitModule::from_parts(a.n, weights, e, f)
}

/// Trace-zero n×n matrices under the bracket action.
///
/// Basis: the off-diagonal E_jk in row-major order, then H_j = E_jj − E_{j+1,j+1}.
pub fn adjoint_module(n: usize) -> Result<ExplicitModule> {
    if n < 2 {
        return arg("adjoint module needs n >= 2");
    }
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .filter(|(j, k)| j != k)
        .collect();
    let h0 = off.len();
    let dim = h0 + n - 1;

    let mut weights: Vec<WeightVec> = off
        .iter()
        .map(|&(j, k)| WeightVec::unit(n, j).sub(&WeightVec::unit(n, k)))
        .collect();
    weights.extend(std::iter::repeat_n(WeightVec::zero(n), n - 1));

    // basis element as a dense matrix
    let as_matrix = |b: usize| -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; n]; n];
        if b < h0 {
            let (j, k) = off[b];
            m[j][k] = 1;
        } else {
            let j = b - h0;
            m[j][j] = 1;
            m[j + 1][j + 1] = -1;
        }
        m
    };
    // coordinates of a traceless matrix; diagonal d gives H-coordinates c_j = d_1 + … + d_j
    let coords = |m: &[Vec<i64>]| -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for (idx, &(j, k)) in off.iter().enumerate() {
            if m[j][k] != 0 {
                out.push((idx, m[j][k]));
            }
        }
        let mut partial = 0;
        for (j, row) in m.iter().enumerate().take(n - 1) {
            partial += row[j];
            if partial != 0 {
                out.push((h0 + j, partial));
            }
        }
        debug_assert_eq!(partial + m[n - 1][n - 1], 0);
        out
    };
    let bracket = |(gr, gc): (usize, usize), x: &[Vec<i64>]| -> Vec<Vec<i64>> {
        // [E_{gr,gc}, X] = E·X − X·E
        let mut out = vec![vec![0i64; n]; n];
        for c in 0..n {
            out[gr][c] += x[gc][c];
        }
        for r in 0..n {
            out[r][gc] -= x[r][gr];
        }
        out
    };
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..n - 1 {
        for (g, out) in [((i, i + 1), &mut e), ((i + 1, i), &mut f)] {
            let mut t = Vec::new();
            for b in 0..dim {
                for (r, x) in coords(&bracket(g, &as_matrix(b))) {
                    t.push((r, b, int(x)));
                }
            }
            out.push(SparseMatrix::from_triplets(dim, dim, t));
        }
    }
    ExplicitModule::from_parts(n, weights, e, f)
}

/// V(λ) as the cyclic submodule of ⊗_j Λ^{λ^∨_j} ℂⁿ generated by
/// v_λ = ⊗_j (e_1 ∧ … ∧ e_{λ^∨_j}) under the lowering operators.
///
/// The basis is the reduced echelon basis of each weight space of the
/// submodule, weights in descending dominance order.
pub fn irrep_plucker(lam: &Partition, n: usize) -> Result<ExplicitModule> {
    if n == 0 {
        return arg("rank must be >= 1");
    }
    if lam.length() > n {
        return arg(format!("{lam} has more than {n} parts"));
    }
    let columns = conjugate(lam);
    let ambient_dim = columns
        .parts()
        .iter()
        .fold(1u128, |acc, &c| acc.saturating_mul(binomial(n, c)));
    guard("Plücker ambient tensor", ambient_dim)?;
    let mut ambient = trivial_module(n)?;
    for &c in columns.parts() {
        ambient = tensor(&ambient, &ext_power(c, n)?)?;
    }
    // index 0 in every factor is e_1 ∧ … ∧ e_c, so v_λ is ambient basis vector 0
    let top = lam.to_weight(n)?;
    debug_assert_eq!(ambient.basis_weights[0], top);

    let mut spaces: HashMap<WeightVec, EchelonBasis> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = crate::linalg::unit_vec(0);
    spaces.entry(top.clone()).or_default().insert(start.clone());
    queue.push_back((top.clone(), start));
    while let Some((mu, v)) = queue.pop_front() {
        for i in 0..n - 1 {
            let w = ambient.apply(Chevalley::F(i), &v);
            if w.is_empty() {
                continue;
            }
            let nu = mu.sub(&WeightVec::simple_root(n, i));
            if let Some(rem) = spaces.entry(nu.clone()).or_default().insert(w) {
                queue.push_back((nu, rem));
            }
        }
    }
    let mut pieces: Vec<(WeightVec, AdaptedBasis)> = spaces
        .into_iter()
        .map(|(mu, e)| (mu, e.into_basis()))
        .collect();
    pieces.sort_by(|a, b| emission_order(&top, &a.0, &b.0));
    ExplicitModule::from_weighted_pieces(n, pieces, |g, v| ambient.apply(g, v))
}
