//! Exact sparse linear algebra over ℚ.
//!
//! Vectors are sorted maps from coordinate index to a nonzero rational;
//! matrices are stored column by column since every consumer applies them
//! to vectors. Zero entries are never stored.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Sparse vector: coordinate → nonzero value.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn unit_vec(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Rational::one());
    v
}

/// `target += coeff * source`, keeping `target` free of explicit zeros.
pub fn axpy(target: &mut SparseVec, coeff: &Rational, source: &SparseVec) {
    if coeff.is_zero() {
        return;
    }
    for (&i, x) in source {
        let delta = coeff * x;
        match target.get_mut(&i) {
            Some(t) => {
                *t += delta;
                if t.is_zero() {
                    target.remove(&i);
                }
            }
            None => {
                target.insert(i, delta);
            }
        }
    }
}

pub fn scale(v: &mut SparseVec, c: &Rational) {
    for x in v.values_mut() {
        *x *= c;
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = SparseMatrix::zeros(rows, cols);
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of {rows}x{cols}");
            let mut single = SparseVec::new();
            single.insert(r, v);
            axpy(&mut m.columns[c], &Rational::one(), &single);
        }
        m
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.keys().all(|&r| r < rows) && c.values().all(|v| !v.is_zero())));
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c].get(&r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&c, x) in v {
            axpy(&mut out, x, &self.columns[c]);
        }
        out
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let columns = rhs.columns.iter().map(|c| self.apply(c)).collect();
        SparseMatrix::from_columns(self.rows, columns)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let minus = -Rational::one();
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| {
                let mut c = a.clone();
                axpy(&mut c, &minus, b);
                c
            })
            .collect();
        SparseMatrix::from_columns(self.rows, columns)
    }

    /// Entries sorted row-major.
    pub fn triplets(&self) -> Vec<(usize, usize, Rational)> {
        let mut t: Vec<_> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v.clone())))
            .collect();
        t.sort_by_key(|&(r, c, _)| (r, c));
        t
    }

    /// Row `r` as a sparse vector over column indices.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                rows[r].insert(c, v.clone());
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        let mut e = EchelonBasis::new();
        for col in &self.columns {
            e.insert(col.clone());
        }
        e.len()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .triplets()
                .into_iter()
                .map(|(r, c, v)| (r, c, format_rational(&v)))
                .collect(),
        }
    }

    pub fn from_json(m: &MatrixJson) -> Result<Self> {
        let mut triplets = Vec::with_capacity(m.entries.len());
        for (r, c, v) in &m.entries {
            if *r >= m.rows || *c >= m.cols {
                return Err(Error::Parse(format!("entry ({r},{c}) out of bounds")));
            }
            triplets.push((*r, *c, parse_rational(v)?));
        }
        Ok(SparseMatrix::from_triplets(m.rows, m.cols, triplets))
    }
}

/// Wire form: `{"rows":…, "cols":…, "entries":[[r,c,"p/q"],…]}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

/// Incrementally maintained reduced row echelon basis.
///
/// Each stored row has a leading 1 at its pivot (its smallest coordinate)
/// and a zero at every other row's pivot.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row.get(c).map(|&r| (r, x.clone())))
            .collect();
        for (r, x) in hits {
            axpy(&mut v, &-x, &self.rows[r]);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span. Returns the (unnormalized) remainder if the
    /// span grew, `None` if `v` was already in it.
    pub fn insert(&mut self, v: SparseVec) -> Option<SparseVec> {
        let rem = self.reduce(v);
        let (&pivot, lead) = rem.iter().next()?;
        let mut row = rem.clone();
        scale(&mut row, &lead.recip());
        for other in &mut self.rows {
            if let Some(x) = other.get(&pivot).cloned() {
                axpy(other, &-x, &row);
            }
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        Some(rem)
    }

    /// Rows sorted by pivot, with their pivots as coordinate columns.
    pub fn into_basis(self) -> AdaptedBasis {
        let mut rows = self.rows;
        rows.sort_by_key(|r| *r.keys().next().unwrap());
        let coord_cols = rows.iter().map(|r| *r.keys().next().unwrap()).collect();
        AdaptedBasis {
            vectors: rows,
            coord_cols,
        }
    }
}

/// A basis together with coordinate columns on which it restricts to the
/// identity, so the coordinates of any vector in the span are read off
/// at those columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub vectors: Vec<SparseVec>,
    pub coord_cols: Vec<usize>,
}

impl AdaptedBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `w`; fails if `w` is not in the span.
    pub fn coordinates(&self, w: &SparseVec) -> Result<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .coord_cols
            .iter()
            .map(|c| w.get(c).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let mut residual = w.clone();
        for (x, b) in coords.iter().zip(&self.vectors) {
            axpy(&mut residual, &-x, b);
        }
        if !residual.is_empty() {
            return Err(Error::InvariantViolation(
                "vector is not in the span of the basis".into(),
            ));
        }
        Ok(coords)
    }
}

/// Basis of the null space of `m`, adapted to the free columns.
pub fn kernel(m: &SparseMatrix) -> AdaptedBasis {
    let mut e = EchelonBasis::new();
    for row in m.row_vectors() {
        e.insert(row);
    }
    let reduced = e.into_basis();
    let pivots: std::collections::HashSet<usize> = reduced.coord_cols.iter().copied().collect();
    let mut vectors = Vec::new();
    let mut coord_cols = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivots.contains(c)) {
        let mut v = unit_vec(free);
        for (row, &p) in reduced.vectors.iter().zip(&reduced.coord_cols) {
            if let Some(x) = row.get(&free) {
                v.insert(p, -x);
            }
        }
        vectors.push(v);
        coord_cols.push(free);
    }
    AdaptedBasis {
        vectors,
        coord_cols,
    }
}

pub fn is_integral(r: &Rational) -> bool {
    r.is_integer()
}

pub fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let r = rows.len();
        let c = rows[0].len();
        SparseMatrix::from_triplets(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(move |(j, &x)| (i, j, int(x)))
            }),
        )
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = kernel(&m);
        assert_eq!(k.dim(), 2);
        for v in &k.vectors {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn kernel_of_invertible_matrix_is_trivial() {
        let m = dense(&[&[2, 1], &[1, 1]]);
        assert_eq!(kernel(&m).dim(), 0);
    }

    #[test]
    fn echelon_rows_are_reduced() {
        let mut e = EchelonBasis::new();
        assert!(e.insert(dense(&[&[0, 2, 4]]).row_vectors().remove(0)).is_some());
        assert!(e.insert(dense(&[&[1, 1, 1]]).row_vectors().remove(0)).is_some());
        assert!(e.insert(dense(&[&[1, 2, 3]]).row_vectors().remove(0)).is_none());
        let b = e.into_basis();
        assert_eq!(b.coord_cols, vec![0, 1]);
        assert_eq!(b.vectors[0].get(&1), None);
        let w = dense(&[&[3, 5, 7]]).row_vectors().remove(0);
        assert_eq!(b.coordinates(&w).unwrap(), vec![int(3), int(5)]);
        let outside = dense(&[&[0, 0, 1]]).row_vectors().remove(0);
        assert!(b.coordinates(&outside).is_err());
    }

    #[test]
    fn commutator_of_elementary_matrices() {
        // [E12, E21] = E11 - E22
        let e = dense(&[&[0, 1], &[0, 0]]);
        let f = dense(&[&[0, 0], &[1, 0]]);
        let h = e.mul(&f).sub(&f.mul(&e));
        assert_eq!(h, dense(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
    }

    #[test]
    fn matrix_json_is_row_major() {
        let m = dense(&[&[0, 5], &[3, 0]]);
        let j = m.to_json();
        assert_eq!(
            j.entries,
            vec![(0, 1, "5".to_string()), (1, 0, "3".to_string())]
        );
        assert_eq!(SparseMatrix::from_json(&j).unwrap(), m);
    }
}
