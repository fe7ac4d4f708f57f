//! Seeded random tame automorphisms and a census of their multidegrees.
//!
//! Sample `k` for seed `s` draws from ChaCha8 seeded with `s` on stream `k`,
//! so every sample is reproducible on its own and independent of the others.
//! A sample is a random list of unimodular integer affine factors and integer
//! shears. If the realized map would exceed the degree cap the attempt is
//! discarded and redrawn from the same stream; after `max_retries` failed
//! attempts the sample is the identity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{Coefficient, Monomial, Polynomial};
use crate::polymap::{AffineMap, ElementaryFactor, FactorList, PolyMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub dimension: usize,
    pub factor_count_max: u32,
    pub shear_degree_max: u32,
    /// Nonzero integers used for shear coefficients and row operations.
    pub coefficient_pool: Vec<i64>,
    pub sample_count: u64,
    pub seed: u64,
    pub degree_cap: u32,
    pub max_retries: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("dimension must be at least 2")]
    Dimension,
    #[error("coefficient pool must contain a nonzero value")]
    EmptyPool,
    #[error("shear degree and degree cap must be positive")]
    Bounds,
}

impl SearchParams {
    pub fn new(seed: u64, sample_count: u64) -> Self {
        SearchParams {
            dimension: 3,
            factor_count_max: 5,
            shear_degree_max: 3,
            coefficient_pool: vec![-2, -1, 1, 2],
            sample_count,
            seed,
            degree_cap: 30,
            max_retries: 16,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.dimension < 2 {
            return Err(SearchError::Dimension);
        }
        if !self.coefficient_pool.iter().any(|&c| c != 0) {
            return Err(SearchError::EmptyPool);
        }
        if self.shear_degree_max == 0 || self.degree_cap == 0 {
            return Err(SearchError::Bounds);
        }
        Ok(())
    }

    fn pool(&self) -> Vec<i64> {
        self.coefficient_pool.iter().copied().filter(|&c| c != 0).collect()
    }
}

fn int(v: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(v))
}

fn random_affine(rng: &mut ChaCha8Rng, n: usize, pool: &[i64]) -> AffineMap {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..rng.gen_range(0..=4) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..4) {
            0 => m.swap(i, j),
            1 => m[i].iter_mut().for_each(|v| *v = -*v),
            _ => {
                let c = *pool.choose(rng).unwrap();
                let src = m[j].clone();
                for (v, s) in m[i].iter_mut().zip(src) {
                    *v += c * s;
                }
            }
        }
    }
    let shift: Vec<i64> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { 0 } else { *pool.choose(rng).unwrap() })
        .collect();
    AffineMap::from_integers(&m, &shift).expect("row operations keep the determinant at +-1")
}

fn random_shear(rng: &mut ChaCha8Rng, n: usize, max_degree: u32, pool: &[i64]) -> ElementaryFactor {
    let target = rng.gen_range(0..n);
    let free: Vec<usize> = (0..n).filter(|&v| v != target).collect();
    let terms = (0..rng.gen_range(1..=3)).map(|_| {
        let mut exps = vec![0u32; n];
        for _ in 0..rng.gen_range(1..=max_degree) {
            exps[*free.choose(rng).unwrap()] += 1;
        }
        let c = *pool.choose(rng).unwrap();
        (int(c), Monomial::new(exps).expect("small exponents"))
    });
    let addend = Polynomial::from_terms(n, terms.collect::<Vec<_>>()).expect("matching dimension");
    ElementaryFactor::shear(target, addend).expect("addend avoids the target")
}

/// Upper bound on the component degrees of `factor ∘ map`.
fn degree_bound(degrees: &[u32], factor: &ElementaryFactor) -> u32 {
    match factor {
        ElementaryFactor::Shear(s) => {
            let lifted = s
                .addend()
                .terms()
                .map(|(m, _)| {
                    m.exponents()
                        .iter()
                        .zip(degrees)
                        .map(|(&e, &d)| e as u64 * d as u64)
                        .sum::<u64>()
                })
                .max()
                .unwrap_or(0);
            lifted.max(degrees[s.target()] as u64).min(u32::MAX as u64) as u32
        }
        ElementaryFactor::Affine(a) => a
            .matrix()
            .iter()
            .flat_map(|row| {
                row.iter()
                    .zip(degrees)
                    .filter(|(v, _)| !v.is_zero())
                    .map(|(_, &d)| d)
            })
            .max()
            .unwrap_or(0),
    }
}

fn attempt(rng: &mut ChaCha8Rng, params: &SearchParams, pool: &[i64]) -> Option<(FactorList, PolyMap)> {
    let n = params.dimension;
    let mut list = FactorList::identity(n);
    let mut map = PolyMap::identity(n);
    let mut degrees = vec![1u32; n];
    for _ in 0..rng.gen_range(0..=params.factor_count_max) {
        let factor = if rng.gen_range(0..3) == 0 {
            ElementaryFactor::Affine(random_affine(rng, n, pool))
        } else {
            random_shear(rng, n, params.shear_degree_max, pool)
        };
        if degree_bound(&degrees, &factor) > params.degree_cap {
            return None;
        }
        map = map.then(&factor).expect("factor matches the map dimension");
        degrees = map.multidegree().expect("automorphisms have no zero component");
        list.push(factor).expect("matching dimension");
    }
    Some((list, map))
}

/// Sample `index` together with its realized map.
pub fn sample_with_map(params: &SearchParams, index: u64) -> (FactorList, PolyMap) {
    let pool = params.pool();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index);
    for _ in 0..=params.max_retries {
        if let Some(found) = attempt(&mut rng, params, &pool) {
            return found;
        }
    }
    (
        FactorList::identity(params.dimension),
        PolyMap::identity(params.dimension),
    )
}

pub fn sample_tame(params: &SearchParams, index: u64) -> FactorList {
    sample_with_map(params, index).0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    /// Sorted multidegree.
    pub multidegree: Vec<u32>,
    pub count: u64,
    /// Smallest sample index with this multidegree; rerun with the same
    /// params to recover its factorization.
    pub example_index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub params: SearchParams,
    pub entries: Vec<CensusEntry>,
}

impl Census {
    pub fn contains(&self, degrees: &[u32]) -> bool {
        let mut d = degrees.to_vec();
        d.sort_unstable();
        self.entries.iter().any(|e| e.multidegree == d)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }
}

fn sorted_multidegree(params: &SearchParams, index: u64) -> Vec<u32> {
    let (_, map) = sample_with_map(params, index);
    let mut d = map.multidegree().expect("automorphisms have no zero component");
    d.sort_unstable();
    d
}

pub fn census(params: &SearchParams) -> Result<Census, SearchError> {
    params.validate()?;
    #[cfg(feature = "parallel")]
    let degrees: Vec<Vec<u32>> = {
        use rayon::prelude::*;
        (0..params.sample_count)
            .into_par_iter()
            .map(|i| sorted_multidegree(params, i))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let degrees: Vec<Vec<u32>> = (0..params.sample_count)
        .map(|i| sorted_multidegree(params, i))
        .collect();

    let mut merged: BTreeMap<Vec<u32>, (u64, u64)> = BTreeMap::new();
    for (i, d) in degrees.into_iter().enumerate() {
        merged
            .entry(d)
            .and_modify(|e| e.0 += 1)
            .or_insert((1, i as u64));
    }
    Ok(Census {
        params: params.clone(),
        entries: merged
            .into_iter()
            .map(|(multidegree, (count, example_index))| CensusEntry {
                multidegree,
                count,
                example_index,
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymap::{realize_factors, verify_inverse};

    #[test]
    fn zero_factor_budget_gives_identity() {
        let mut params = SearchParams::new(7, 4);
        params.factor_count_max = 0;
        for i in 0..4 {
            assert!(sample_tame(&params, i).is_empty());
        }
    }

    #[test]
    fn samples_are_deterministic_and_invertible() {
        let params = SearchParams::new(42, 40);
        for i in 0..40 {
            let (list, map) = sample_with_map(&params, i);
            assert_eq!(sample_tame(&params, i), list);
            assert_eq!(realize_factors(&list).unwrap(), map);
            assert!(verify_inverse(&list).unwrap(), "sample {i}");
            assert!(map.multidegree().unwrap().iter().all(|&d| d <= 30));
        }
    }

    #[test]
    fn census_is_reproducible() {
        let params = SearchParams::new(3, 200);
        let a = census(&params).unwrap();
        let b = census(&params).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total(), 200);
        assert!(a.contains(&[1, 1, 1]));
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn params_validation() {
        let mut p = SearchParams::new(1, 1);
        p.dimension = 1;
        assert_eq!(census(&p), Err(SearchError::Dimension));
        let mut p = SearchParams::new(1, 1);
        p.coefficient_pool = vec![0];
        assert_eq!(p.validate(), Err(SearchError::EmptyPool));
    }
}
