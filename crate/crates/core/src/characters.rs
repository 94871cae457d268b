//! Characters of irreducible GL_n representations through Kostka numbers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::limits;
use crate::weights::{compositions, emission_order, DominantWeight, Partition, WeightVec};

/// Number of semistandard Young tableaux of shape `lam` and content `mu`.
///
/// Returns 0 when |μ| ≠ |λ|. Negative content is rejected.
pub fn kostka(lam: &Partition, mu: &WeightVec) -> Result<u64> {
    if !mu.is_nonnegative() {
        return arg(format!("content {mu} has a negative entry"));
    }
    if mu.sum() as usize != lam.size() {
        return Ok(0);
    }
    let limit = limits::current().max_tableau_size;
    if lam.size() > limit {
        return Err(Error::Resource {
            what: "semistandard tableau enumeration",
            estimate: lam.size() as u128,
            limit: limit as u128,
        });
    }
    let mut remaining: Vec<usize> = mu.entries().iter().map(|&x| x as usize).collect();
    let mut filling: Vec<Vec<usize>> = lam.parts().iter().map(|&len| vec![0; len]).collect();
    Ok(fill_cell(lam.parts(), 0, 0, &mut filling, &mut remaining))
}

// Row-reading backtracking: rows weakly increase, columns strictly increase.
fn fill_cell(
    shape: &[usize],
    row: usize,
    col: usize,
    filling: &mut [Vec<usize>],
    remaining: &mut [usize],
) -> u64 {
    if row == shape.len() {
        return 1;
    }
    let (next_row, next_col) = if col + 1 == shape[row] {
        (row + 1, 0)
    } else {
        (row, col + 1)
    };
    let mut low = if col > 0 { filling[row][col - 1] } else { 0 };
    if row > 0 {
        low = low.max(filling[row - 1][col] + 1);
    }
    let mut count = 0;
    for v in low..remaining.len() {
        if remaining[v] == 0 {
            continue;
        }
        // the rows below this cell in the same column need larger values
        let below = shape[row + 1..].iter().take_while(|&&len| len > col).count();
        if v + below >= remaining.len() {
            break;
        }
        remaining[v] -= 1;
        filling[row][col] = v;
        count += fill_cell(shape, next_row, next_col, filling, remaining);
        remaining[v] += 1;
    }
    count
}

/// Pads a dominant weight with zeros up to length n (only possible when it ends ≥ 0).
pub(crate) fn pad_dominant(lam: &DominantWeight, n: usize) -> Result<DominantWeight> {
    match lam.len().cmp(&n) {
        std::cmp::Ordering::Equal => Ok(lam.clone()),
        std::cmp::Ordering::Greater => arg(format!("{lam} has more than {n} entries")),
        std::cmp::Ordering::Less => {
            if *lam.entries().last().unwrap() < 0 {
                return arg(format!("{lam} cannot be padded to length {n}"));
            }
            let mut v = lam.entries().to_vec();
            v.resize(n, 0);
            DominantWeight::new(v)
        }
    }
}

/// χ_λ(μ) = K_{λ+c, μ+c} with c = max(0, −λ_n).
pub fn character(lam: &DominantWeight, mu: &WeightVec) -> Result<u64> {
    if lam.len() != mu.len() {
        return arg(format!("{lam} and {mu} have different lengths"));
    }
    let (c, shifted) = lam.polynomial_shift();
    let mu = mu.shift(c);
    if !mu.is_nonnegative() {
        return Ok(0);
    }
    kostka(&shifted, &mu)
}

/// The weight multiplicities of V(λ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub lambda: DominantWeight,
    pub entries: BTreeMap<WeightVec, u64>,
}

impl CharacterTable {
    pub fn get(&self, mu: &WeightVec) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Entries by descending dominance, ties lexicographically descending.
    pub fn sorted(&self) -> Vec<(WeightVec, u64)> {
        let top = self.lambda.weight();
        let mut v: Vec<_> = self.entries.iter().map(|(k, &m)| (k.clone(), m)).collect();
        v.sort_by(|a, b| emission_order(top, &a.0, &b.0));
        v
    }
}

pub fn character_table(lam: &DominantWeight, n: usize) -> Result<CharacterTable> {
    let lam = pad_dominant(lam, n)?;
    let (c, shifted) = lam.polynomial_shift();
    let entries = compositions(shifted.size(), n)
        .into_par_iter()
        .map(|mu| Ok((mu.shift(-c), kostka(&shifted, &mu)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&(_, m)| m > 0)
        .collect();
    Ok(CharacterTable {
        lambda: lam,
        entries,
    })
}

pub fn dim_irrep(lam: &DominantWeight, n: usize) -> Result<u64> {
    Ok(character_table(lam, n)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{partitions_of, weyl_permute, Permutation};

    fn w(v: &[i64]) -> WeightVec {
        WeightVec::new(v.to_vec()).unwrap()
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn d(v: &[i64]) -> DominantWeight {
        DominantWeight::new(v.to_vec()).unwrap()
    }

    /// Independent oracle: a tableau of content μ is a chain of partitions
    /// whose successive differences are horizontal strips of sizes μ_1, μ_2, ….
    fn kostka_by_strips(lam: &[usize], mu: &[usize]) -> u64 {
        fn go(inner: Vec<usize>, outer: &[usize], mu: &[usize]) -> u64 {
            let Some((&k, rest)) = mu.split_first() else {
                return u64::from(inner.iter().zip(outer).all(|(a, b)| a == b));
            };
            // choose new shape ν ⊇ inner inside outer with ν/inner a horizontal strip of size k
            fn strips(
                i: usize,
                inner: &[usize],
                outer: &[usize],
                left: usize,
                cur: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if i == outer.len() {
                    if left == 0 {
                        out.push(cur.clone());
                    }
                    return;
                }
                let cap = if i == 0 { outer[0] } else { outer[i].min(inner[i - 1]) };
                for len in inner[i]..=cap {
                    if len - inner[i] > left {
                        break;
                    }
                    cur.push(len);
                    strips(i + 1, inner, outer, left - (len - inner[i]), cur, out);
                    cur.pop();
                }
            }
            let mut next = Vec::new();
            strips(0, &inner, outer, k, &mut Vec::new(), &mut next);
            next.into_iter().map(|nu| go(nu, outer, rest)).sum()
        }
        go(vec![0; lam.len()], lam, mu)
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[3]), &w(&[2, 1])).unwrap(), 1);
        assert_eq!(kostka(&p(&[2, 1]), &w(&[1, 1, 1])).unwrap(), 2);
        for mu in compositions(4, 3) {
            assert_eq!(kostka(&p(&[4]), &mu).unwrap(), 1);
        }
        assert_eq!(kostka(&p(&[2, 1]), &w(&[1, 1])).unwrap(), 0);
        assert!(kostka(&p(&[1]), &w(&[2, -1])).is_err());
    }

    #[test]
    fn kostka_agrees_with_strip_oracle() {
        for total in 0..=7 {
            for lam in partitions_of(total) {
                for mu in compositions(total, 4) {
                    let content: Vec<usize> = mu.entries().iter().map(|&x| x as usize).collect();
                    assert_eq!(
                        kostka(&lam, &mu).unwrap(),
                        kostka_by_strips(lam.parts(), &content),
                        "K_{lam},{mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn kostka_respects_size_guard() {
        let big = p(&[13]);
        assert!(matches!(
            kostka(&big, &w(&[13])),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn character_examples() {
        assert_eq!(character(&d(&[1, 0, -1]), &w(&[0, 0, 0])).unwrap(), 2);
        assert_eq!(character(&d(&[1, 0, -1]), &w(&[1, 0, -1])).unwrap(), 1);
        let minus = d(&[-1, -1, -1]);
        assert_eq!(character(&minus, &w(&[-1, -1, -1])).unwrap(), 1);
        assert_eq!(character(&minus, &w(&[0, -1, -2])).unwrap(), 0);
        assert_eq!(character(&minus, &w(&[0, 0, 0])).unwrap(), 0);
        assert!(character(&d(&[1, 0]), &w(&[1, 0, 0])).is_err());
    }

    /// Weyl dimension formula Π_{i<j} (λ_i − λ_j + j − i)/(j − i).
    fn weyl_dimension(lam: &[i64]) -> u64 {
        let n = lam.len();
        let (mut num, mut den) = (1i128, 1i128);
        for i in 0..n {
            for j in i + 1..n {
                num *= (lam[i] - lam[j] + (j - i) as i64) as i128;
                den *= (j - i) as i128;
            }
        }
        (num / den) as u64
    }

    #[test]
    fn dim_irrep_examples() {
        for n in 1..=5 {
            for k in 0..=n {
                let omega = Partition::column(k).to_dominant(n).unwrap();
                let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
                assert_eq!(dim_irrep(&omega, n).unwrap(), binom);
            }
        }
        assert_eq!(dim_irrep(&d(&[2, 1, 0]), 3).unwrap(), 8);
        assert_eq!(dim_irrep(&d(&[3, 0]), 2).unwrap(), 4);
        assert_eq!(dim_irrep(&d(&[2, 1]), 3).unwrap(), 8);
        assert!(dim_irrep(&d(&[0, -1]), 3).is_err());
    }

    #[test]
    fn dim_irrep_matches_weyl_formula() {
        for n in 1..=4 {
            for total in 0..=6 {
                for lam in partitions_of(total).into_iter().filter(|l| l.length() <= n) {
                    let dom = lam.to_dominant(n).unwrap();
                    assert_eq!(
                        dim_irrep(&dom, n).unwrap(),
                        weyl_dimension(dom.entries()),
                        "{lam} n={n}"
                    );
                }
            }
        }
        assert_eq!(dim_irrep(&d(&[1, 0, -1]), 3).unwrap(), weyl_dimension(&[1, 0, -1]));
    }

    #[test]
    fn character_table_examples() {
        let t = character_table(&d(&[3, 0]), 2).unwrap();
        let rows: Vec<_> = t.sorted();
        assert_eq!(
            rows,
            vec![(w(&[3, 0]), 1), (w(&[2, 1]), 1), (w(&[1, 2]), 1), (w(&[0, 3]), 1)]
        );

        let adj = character_table(&d(&[1, 0, -1]), 3).unwrap();
        let expected: BTreeMap<WeightVec, u64> = [
            (w(&[1, 0, -1]), 1),
            (w(&[0, 1, -1]), 1),
            (w(&[1, -1, 0]), 1),
            (w(&[0, 0, 0]), 2),
            (w(&[0, -1, 1]), 1),
            (w(&[-1, 1, 0]), 1),
            (w(&[-1, 0, 1]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(adj.entries, expected);

        let det = character_table(&d(&[1, 1, 1, 1]), 4).unwrap();
        assert_eq!(det.entries.len(), 1);
        assert_eq!(det.get(&w(&[1, 1, 1, 1])), 1);
    }

    #[test]
    fn characters_are_weyl_symmetric_with_highest_weight() {
        for n in 1..=4 {
            for total in 0..=6 {
                for lam in partitions_of(total).into_iter().filter(|l| l.length() <= n) {
                    let dom = lam.to_dominant(n).unwrap();
                    let t = character_table(&dom, n).unwrap();
                    assert_eq!(t.get(dom.weight()), 1);
                    for (mu, &m) in &t.entries {
                        assert!(crate::weights::dominance_leq(mu, dom.weight()).unwrap());
                        for perm in Permutation::all(n) {
                            let wmu = weyl_permute(&perm, mu).unwrap();
                            assert_eq!(character(&dom, &wmu).unwrap(), m);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twist_invariance() {
        for total in 0..=3 {
            for lam in partitions_of(total).into_iter().filter(|l| l.length() <= 3) {
                let base = lam.to_weight(3).unwrap();
                for mu in compositions(total, 3) {
                    let k0 = kostka(&lam, &mu).unwrap();
                    for c in 1..=3 {
                        let shifted: Vec<usize> =
                            base.shift(c).entries().iter().map(|&x| x as usize).collect();
                        let shifted = Partition::new(shifted).unwrap();
                        assert_eq!(kostka(&shifted, &mu.shift(c)).unwrap(), k0);
                    }
                }
            }
        }
    }
}
