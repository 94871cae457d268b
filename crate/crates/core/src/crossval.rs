//! Runs several independent computations of dim V(λ^∨)_μ side by side.
//!
//! λ is a gl_m highest weight with |λ| = N, parts at most n and at most m
//! parts. For each composition μ of N into n parts the routes compute:
//!
//! * `kostka`: K_{λ^∨, μ} by tableau enumeration;
//! * `skewhowe`: dim of the gl_m highest-weight vectors of weight λ in the
//!   gl_n weight-μ slice of Λ^N(ℂⁿ ⊗ ℂᵐ);
//! * `springer`: leading coefficient of the point count of the n-step
//!   Springer fibre for X of Jordan type λ, whose conjugate is λ^∨;
//! * `lattice-mv`: MV-cycle count of weight μ for λ^∨, which is the
//!   character value.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::kostka;
use crate::error::{arg, Error, Result};
use crate::lattice::mv_cycle_count;
use crate::registry::Registry;
use crate::skewhowe::{build_bimodule, hom_space, BiModule};
use crate::springercount::{flag_counters, point_count_table};
use crate::weights::{compositions, conjugate, Partition, WeightVec};

pub struct CrossvalInput {
    pub lam: Partition,
    pub dual: Partition,
    pub n: usize,
    pub m: usize,
    pub counter: String,
    pub primes: Option<Vec<u64>>,
    bimodule: OnceLock<BiModule>,
}

impl CrossvalInput {
    pub fn new(lam: Partition, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return arg("n and m must be >= 1");
        }
        if lam.largest() > n || lam.length() > m {
            return arg(format!("{lam} does not fit in an {m}x{n} box (at most {m} parts, each at most {n})"));
        }
        Ok(CrossvalInput {
            dual: conjugate(&lam),
            lam,
            n,
            m,
            counter: "cells".into(),
            primes: None,
            bimodule: OnceLock::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.lam.size()
    }

    /// Λ^N(ℂⁿ ⊗ ℂᵐ), built on first use.
    pub fn bimodule(&self) -> Result<&BiModule> {
        if let Some(b) = self.bimodule.get() {
            return Ok(b);
        }
        let built = build_bimodule(self.n, self.m, self.size())?;
        // a concurrent builder may have won; both results are identical
        let _ = self.bimodule.set(built);
        Ok(self.bimodule.get().expect("just set"))
    }
}

/// One way of computing dim V(λ^∨)_μ.
pub trait MultiplicityRoute: Send + Sync {
    fn name(&self) -> &'static str;
    fn multiplicity(&self, input: &CrossvalInput, mu: &WeightVec) -> Result<u64>;
}

struct KostkaRoute;
struct SkewHoweRoute;
struct SpringerRoute;
struct LatticeMvRoute;

impl MultiplicityRoute for KostkaRoute {
    fn name(&self) -> &'static str {
        "kostka"
    }

    fn multiplicity(&self, input: &CrossvalInput, mu: &WeightVec) -> Result<u64> {
        kostka(&input.dual, mu)
    }
}

impl MultiplicityRoute for SkewHoweRoute {
    fn name(&self) -> &'static str {
        "skewhowe"
    }

    fn multiplicity(&self, input: &CrossvalInput, mu: &WeightVec) -> Result<u64> {
        Ok(hom_space(input.bimodule()?, &input.lam, mu)?.dim as u64)
    }
}

impl MultiplicityRoute for SpringerRoute {
    fn name(&self) -> &'static str {
        "springer"
    }

    fn multiplicity(&self, input: &CrossvalInput, mu: &WeightVec) -> Result<u64> {
        let counters = flag_counters();
        let counter = counters.get(&input.counter)?;
        point_count_table(counter, &input.lam, mu, input.n, input.primes.as_deref())?.leading()
    }
}

impl MultiplicityRoute for LatticeMvRoute {
    fn name(&self) -> &'static str {
        "lattice-mv"
    }

    fn multiplicity(&self, input: &CrossvalInput, mu: &WeightVec) -> Result<u64> {
        mv_cycle_count(&input.dual, mu, input.n)
    }
}

pub fn routes() -> Registry<dyn MultiplicityRoute> {
    let mut r: Registry<dyn MultiplicityRoute> = Registry::new("route");
    r.register("kostka", Box::new(KostkaRoute));
    r.register("skewhowe", Box::new(SkewHoweRoute));
    r.register("springer", Box::new(SpringerRoute));
    r.register("lattice-mv", Box::new(LatticeMvRoute));
    r
}

pub const DEFAULT_ROUTES: [&str; 4] = ["kostka", "skewhowe", "springer", "lattice-mv"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossvalRow {
    pub mu: WeightVec,
    pub counts: Vec<u64>,
    #[serde(rename = "match")]
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossvalReport {
    pub lam: Partition,
    pub dual: Partition,
    pub n: usize,
    pub m: usize,
    pub routes: Vec<String>,
    pub rows: Vec<CrossvalRow>,
    #[serde(rename = "match")]
    pub all_agree: bool,
}

/// Evaluates every route on every composition μ of N into n parts. Rows are
/// in the order of [`compositions`].
pub fn crossval(input: &CrossvalInput, route_names: &[&str]) -> Result<CrossvalReport> {
    if route_names.is_empty() {
        return arg("no routes selected");
    }
    let table = routes();
    let selected = route_names
        .iter()
        .map(|name| table.get(name))
        .collect::<Result<Vec<_>>>()?;
    if route_names.contains(&"skewhowe") {
        input.bimodule()?;
    }
    let rows = compositions(input.size(), input.n)
        .into_par_iter()
        .map(|mu| {
            let counts = selected
                .iter()
                .map(|r| r.multiplicity(input, &mu))
                .collect::<Result<Vec<u64>>>()
                .map_err(|e| Error::AtWeight {
                    mu: mu.to_string(),
                    source: Box::new(e),
                })?;
            let agree = counts.windows(2).all(|w| w[0] == w[1]);
            Ok(CrossvalRow { mu, counts, agree })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossvalReport {
        lam: input.lam.clone(),
        dual: input.dual.clone(),
        n: input.n,
        m: input.m,
        routes: route_names.iter().map(|s| s.to_string()).collect(),
        all_agree: rows.iter().all(|r| r.agree),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::partitions_of;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn headline_example() {
        let input = CrossvalInput::new(p(&[2, 1]), 3, 3).unwrap();
        let report = crossval(&input, &DEFAULT_ROUTES).unwrap();
        assert!(report.all_agree);
        let row = report
            .rows
            .iter()
            .find(|r| r.mu == WeightVec::new(vec![1, 1, 1]).unwrap())
            .unwrap();
        assert_eq!(row.counts, vec![2, 2, 2, 2]);
    }

    #[test]
    fn fundamental_weights_give_ones_on_01_vectors() {
        for k in 1..=3 {
            let input = CrossvalInput::new(Partition::column(k), 3, 3).unwrap();
            let report = crossval(&input, &DEFAULT_ROUTES).unwrap();
            assert!(report.all_agree);
            for row in &report.rows {
                if row.mu.entries().iter().all(|&x| x <= 1) {
                    assert_eq!(row.counts, vec![1, 1, 1, 1]);
                }
            }
        }
    }

    #[test]
    fn all_small_partitions_agree() {
        for total in 0..=3 {
            for lam in partitions_of(total).into_iter().filter(|l| l.length() <= 3 && l.largest() <= 3) {
                let input = CrossvalInput::new(lam.clone(), 3, 3).unwrap();
                assert!(crossval(&input, &DEFAULT_ROUTES).unwrap().all_agree, "λ = {lam}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(CrossvalInput::new(p(&[4]), 3, 3).is_err());
        assert!(CrossvalInput::new(p(&[1, 1, 1, 1]), 3, 3).is_err());
        let input = CrossvalInput::new(p(&[1]), 2, 2).unwrap();
        assert!(crossval(&input, &["kostka", "nope"]).is_err());
        assert!(crossval(&input, &[]).is_err());
    }
}
