//! Explicit tame automorphisms with prescribed multidegree.
//!
//! Three constructions are available:
//! - the planar pair of shears for `d1 | d2` (or `d2 | d1`),
//! - the semigroup construction: if some `d_i` is a nonnegative combination of
//!   the smaller degrees, shear every other coordinate by a power of `x_i` and
//!   then shear `x_i` by the matching monomial,
//! - lifting a realizable planar sub-tuple to the full dimension.
//!
//! Every returned [`FactorList`] realizes the sorted degree tuple exactly.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exactpoly::{Coefficient, Polynomial};
use crate::polymap::{AffineMap, ElementaryFactor, FactorList, MapError};

/// Degrees sorted ascending, remembering where each came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeTuple {
    sorted: Vec<u32>,
    /// `origin[k]` is the input position of `sorted[k]`.
    origin: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DegreeError {
    #[error("degree tuple is empty")]
    Empty,
    #[error("degrees must be positive")]
    NonPositive,
}

impl DegreeTuple {
    pub fn new(degrees: &[u32]) -> Result<Self, DegreeError> {
        if degrees.is_empty() {
            return Err(DegreeError::Empty);
        }
        if degrees.contains(&0) {
            return Err(DegreeError::NonPositive);
        }
        let mut origin: Vec<usize> = (0..degrees.len()).collect();
        // stable, so equal degrees keep their input order
        origin.sort_by_key(|&i| degrees[i]);
        let sorted = origin.iter().map(|&i| degrees[i]).collect();
        Ok(DegreeTuple { sorted, origin })
    }

    pub fn sorted(&self) -> &[u32] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Degrees in their original input order.
    pub fn original(&self) -> Vec<u32> {
        let mut out = vec![0; self.sorted.len()];
        for (k, &i) in self.origin.iter().enumerate() {
            out[i] = self.sorted[k];
        }
        out
    }

    /// Turns a factorization of the sorted tuple into one of the original
    /// order by appending a coordinate permutation when needed.
    pub fn restore_order(&self, list: &FactorList) -> Result<FactorList, MapError> {
        let n = self.sorted.len();
        let mut source = vec![0; n];
        for (k, &i) in self.origin.iter().enumerate() {
            source[i] = k;
        }
        if source.iter().enumerate().all(|(i, &s)| i == s) {
            return Ok(list.clone());
        }
        let mut out = list.clone();
        out.push(AffineMap::permutation(&source)?.into())?;
        Ok(out)
    }
}

/// Nonnegative coefficients expressing the degree at `target_index` in terms
/// of the degrees before it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub target_index: usize,
    pub coeffs: Vec<u64>,
}

/// Lexicographically smallest `k` with `sum k_j * gens_j == target`, if any.
pub fn semigroup_representation(target: u64, gens: &[u64]) -> Option<Representation> {
    if gens.is_empty() || gens.contains(&0) {
        return None;
    }
    let t = target as usize;
    // suffix[j][s]: s is a nonnegative combination of gens[j..]
    let mut suffix = vec![vec![false; t + 1]; gens.len() + 1];
    suffix[gens.len()][0] = true;
    for j in (0..gens.len()).rev() {
        let g = gens[j] as usize;
        for s in 0..=t {
            suffix[j][s] = suffix[j + 1][s] || (s >= g && suffix[j][s - g]);
        }
    }
    if !suffix[0][t] {
        return None;
    }
    let mut rest = t;
    let mut coeffs = Vec::with_capacity(gens.len());
    for (j, &g) in gens.iter().enumerate() {
        let g = g as usize;
        let k = (0..=rest / g)
            .find(|&k| suffix[j + 1][rest - k * g])
            .expect("suffix table guarantees a choice");
        coeffs.push(k as u64);
        rest -= k * g;
    }
    Some(Representation {
        target_index: gens.len(),
        coeffs,
    })
}

fn power_of_var(dim: usize, var: usize, exp: u32) -> Polynomial {
    let mut exps = vec![0; dim];
    exps[var] = exp;
    Polynomial::monomial(Coefficient::one(), exps).expect("small exponent")
}

fn shear(target: usize, addend: Polynomial) -> ElementaryFactor {
    ElementaryFactor::shear(target, addend).expect("addend avoids the target variable")
}

/// Two-shear planar automorphism with multidegree `(d1, d2)`, when one
/// degree divides the other. No automorphism exists otherwise.
pub fn jung_realize_dim2(d1: u32, d2: u32) -> Option<FactorList> {
    if d1 == 0 || d2 == 0 {
        return None;
    }
    if d1 == 1 && d2 == 1 {
        return Some(FactorList::identity(2));
    }
    let factors = if d2.is_multiple_of(d1) {
        // (x + y^d1, y), then (u, w + u^(d2/d1))
        vec![
            shear(0, power_of_var(2, 1, d1)),
            shear(1, power_of_var(2, 0, d2 / d1)),
        ]
    } else if d1.is_multiple_of(d2) {
        vec![
            shear(1, power_of_var(2, 0, d2)),
            shear(0, power_of_var(2, 1, d1 / d2)),
        ]
    } else {
        return None;
    };
    Some(FactorList::new(2, factors).expect("planar factors"))
}

/// Shear every coordinate other than `pivot` by `x_pivot^{d_k}`.
fn pivot_shears(degrees: &[u32], pivot: usize) -> Vec<ElementaryFactor> {
    let n = degrees.len();
    (0..n)
        .filter(|&k| k != pivot)
        .map(|k| shear(k, power_of_var(n, pivot, degrees[k])))
        .collect()
}

/// Semigroup construction for the first index whose degree is a nonnegative
/// combination of the preceding (smaller) degrees.
pub fn prop2_realize(d: &DegreeTuple) -> Option<FactorList> {
    let degrees = d.sorted();
    let n = degrees.len();
    let gens: Vec<u64> = degrees.iter().map(|&x| x as u64).collect();
    let (i, rep) = (1..n).find_map(|i| {
        semigroup_representation(gens[i], &gens[..i]).map(|rep| (i, rep))
    })?;
    let mut factors = pivot_shears(degrees, i);
    let mut exps = vec![0u32; n];
    for (j, &k) in rep.coeffs.iter().enumerate() {
        exps[j] = k as u32;
    }
    let addend = Polynomial::monomial(Coefficient::one(), exps).expect("small exponent");
    factors.push(shear(i, addend));
    Some(FactorList::new(n, factors).expect("consistent dimension"))
}

/// Lifts a planar automorphism on two of the coordinates to the whole tuple.
/// Only two-element sub-tuples are used as base cases.
pub fn embed_realize(d: &DegreeTuple) -> Option<FactorList> {
    let degrees = d.sorted();
    let n = degrees.len();
    if n < 3 {
        return None;
    }
    for a in 0..n {
        for b in a + 1..n {
            let Some(planar) = jung_realize_dim2(degrees[a], degrees[b]) else {
                continue;
            };
            let mut factors = pivot_shears(degrees, a);
            factors.retain(|f| match f {
                ElementaryFactor::Shear(s) => s.target() != b,
                ElementaryFactor::Affine(_) => true,
            });
            let lifted = planar.embed(n, &[a, b]).expect("indices in range");
            factors.extend(lifted.factors().iter().cloned());
            return Some(FactorList::new(n, factors).expect("consistent dimension"));
        }
    }
    None
}

/// Tries the semigroup construction, then planar lifting.
pub fn realize(d: &DegreeTuple) -> Option<FactorList> {
    if d.sorted().iter().all(|&x| x == 1) {
        return Some(FactorList::identity(d.len()));
    }
    if d.len() == 2 {
        return jung_realize_dim2(d.sorted()[0], d.sorted()[1]);
    }
    prop2_realize(d).or_else(|| embed_realize(d))
}
