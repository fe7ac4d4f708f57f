//! Polynomial endomorphisms of affine space and their tame factorizations.
//!
//! A [`FactorList`] is applied left to right: `[a, b]` realizes the map
//! `b ∘ a`. Inversion is only ever performed on factor lists, never on raw
//! maps.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{Coefficient, Degree, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("affine matrix is singular")]
    SingularMatrix,
    #[error("affine matrix must be {expected}x{expected}")]
    MatrixShape { expected: usize },
    #[error("shear addend involves its own target variable x{}", .target + 1)]
    AddendInvolvesTarget { target: usize },
    #[error("shear target x{} outside dimension {dimension}", .target + 1)]
    TargetOutOfRange { target: usize, dimension: usize },
    #[error("component {} is the zero polynomial", .0 + 1)]
    ZeroComponent(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("malformed coefficient '{0}'")]
    BadCoefficient(String),
}

/// A polynomial map `(F_1, ..., F_n)` of affine n-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    dimension: usize,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn identity(dimension: usize) -> Self {
        PolyMap {
            dimension,
            components: (0..dimension).map(|i| Polynomial::var(dimension, i)).collect(),
        }
    }

    pub fn new(components: Vec<Polynomial>) -> Result<Self, MapError> {
        let dimension = components.len();
        if dimension == 0 {
            return Err(PolyError::ZeroDimension.into());
        }
        if let Some(c) = components.iter().find(|c| c.dimension() != dimension) {
            return Err(MapError::DimensionMismatch {
                left: dimension,
                right: c.dimension(),
            });
        }
        Ok(PolyMap {
            dimension,
            components,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Polynomial {
        &self.components[index]
    }

    /// Component-wise total degrees. Fails on a zero component.
    pub fn multidegree(&self) -> Result<Vec<u32>, MapError> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| c.total_degree().finite().ok_or(MapError::ZeroComponent(i)))
            .collect()
    }

    /// True iff every component is exactly its coordinate variable.
    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| *c == Polynomial::var(self.dimension, i))
    }

    /// `factor ∘ self`, computed directly from the factor's definition.
    pub fn then(&self, factor: &ElementaryFactor) -> Result<PolyMap, MapError> {
        if factor.dimension() != self.dimension {
            return Err(MapError::DimensionMismatch {
                left: self.dimension,
                right: factor.dimension(),
            });
        }
        let mut components = self.components.clone();
        match factor {
            ElementaryFactor::Shear(s) => {
                let lifted = s.addend.compose(&self.components)?;
                components[s.target] = components[s.target].checked_add(&lifted)?;
            }
            ElementaryFactor::Affine(a) => {
                for (i, row) in a.matrix.iter().enumerate() {
                    let mut acc = Polynomial::constant(self.dimension, a.shift[i].clone());
                    for (j, entry) in row.iter().enumerate() {
                        if !entry.is_zero() {
                            acc = acc.checked_add(&self.components[j].scale(entry))?;
                        }
                    }
                    components[i] = acc;
                }
            }
        }
        Ok(PolyMap {
            dimension: self.dimension,
            components,
        })
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// `outer ∘ inner`: each outer component with the inner components substituted.
pub fn compose_maps(outer: &PolyMap, inner: &PolyMap) -> Result<PolyMap, MapError> {
    if outer.dimension != inner.dimension {
        return Err(MapError::DimensionMismatch {
            left: outer.dimension,
            right: inner.dimension,
        });
    }
    let components = outer
        .components
        .iter()
        .map(|c| c.compose(&inner.components))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMap {
        dimension: outer.dimension,
        components,
    })
}

/// `x -> A x + b` with `A` invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Vec<Vec<Coefficient>>,
    shift: Vec<Coefficient>,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Coefficient>>, shift: Vec<Coefficient>) -> Result<Self, MapError> {
        let n = matrix.len();
        if n == 0 || shift.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(MapError::MatrixShape { expected: n.max(1) });
        }
        if invert_matrix(&matrix).is_none() {
            return Err(MapError::SingularMatrix);
        }
        Ok(AffineMap { matrix, shift })
    }

    pub fn identity(dimension: usize) -> Self {
        let matrix = (0..dimension)
            .map(|i| {
                (0..dimension)
                    .map(|j| if i == j { Coefficient::one() } else { Coefficient::zero() })
                    .collect()
            })
            .collect();
        AffineMap {
            matrix,
            shift: vec![Coefficient::zero(); dimension],
        }
    }

    /// Coordinate permutation: output `i` is input `source[i]`.
    pub fn permutation(source: &[usize]) -> Result<Self, MapError> {
        let n = source.len();
        let mut matrix = vec![vec![Coefficient::zero(); n]; n];
        for (i, &s) in source.iter().enumerate() {
            if s >= n {
                return Err(MapError::MatrixShape { expected: n });
            }
            matrix[i][s] = Coefficient::one();
        }
        AffineMap::new(matrix, vec![Coefficient::zero(); n])
    }

    pub fn from_integers(matrix: &[Vec<i64>], shift: &[i64]) -> Result<Self, MapError> {
        let m = matrix
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        AffineMap::new(m, shift.iter().map(|&v| int(v)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Coefficient>] {
        &self.matrix
    }

    pub fn shift(&self) -> &[Coefficient] {
        &self.shift
    }

    pub fn inverse(&self) -> AffineMap {
        // invertibility is a constructor invariant
        let inv = invert_matrix(&self.matrix).expect("affine matrix is invertible");
        let shift = inv
            .iter()
            .map(|row| {
                -row.iter()
                    .zip(&self.shift)
                    .fold(Coefficient::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        AffineMap { matrix: inv, shift }
    }
}

/// `x_target -> x_target + addend`, where the addend does not involve `x_target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shear {
    target: usize,
    addend: Polynomial,
}

impl Shear {
    pub fn new(target: usize, addend: Polynomial) -> Result<Self, MapError> {
        if target >= addend.dimension() {
            return Err(MapError::TargetOutOfRange {
                target,
                dimension: addend.dimension(),
            });
        }
        if !addend.partial(target)?.is_zero() {
            return Err(MapError::AddendInvolvesTarget { target });
        }
        Ok(Shear { target, addend })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn addend(&self) -> &Polynomial {
        &self.addend
    }

    pub fn inverse(&self) -> Shear {
        Shear {
            target: self.target,
            addend: self.addend.neg(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryFactor {
    Affine(AffineMap),
    Shear(Shear),
}

/// `x2 += x1^3` for shears, `affine [1 0][0 1] + [0 0]` for affine maps.
impl fmt::Display for ElementaryFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryFactor::Shear(s) => write!(f, "x{} += {}", s.target() + 1, s.addend()),
            ElementaryFactor::Affine(a) => {
                f.write_str("affine ")?;
                for row in a.matrix() {
                    let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                    write!(f, "[{}]", cells.join(" "))?;
                }
                let shift: Vec<String> = a.shift().iter().map(|c| c.to_string()).collect();
                write!(f, " + [{}]", shift.join(" "))
            }
        }
    }
}

impl ElementaryFactor {
    pub fn shear(target: usize, addend: Polynomial) -> Result<Self, MapError> {
        Shear::new(target, addend).map(ElementaryFactor::Shear)
    }

    pub fn dimension(&self) -> usize {
        match self {
            ElementaryFactor::Affine(a) => a.dimension(),
            ElementaryFactor::Shear(s) => s.addend.dimension(),
        }
    }

    pub fn inverse(&self) -> ElementaryFactor {
        match self {
            ElementaryFactor::Affine(a) => ElementaryFactor::Affine(a.inverse()),
            ElementaryFactor::Shear(s) => ElementaryFactor::Shear(s.inverse()),
        }
    }

    /// Relabels the factor into `dimension` variables; variable `i` becomes
    /// `targets[i]` and untouched coordinates are fixed.
    pub fn embed(&self, dimension: usize, targets: &[usize]) -> Result<ElementaryFactor, MapError> {
        match self {
            ElementaryFactor::Shear(s) => ElementaryFactor::shear(
                targets[s.target],
                s.addend.embed(dimension, targets)?,
            ),
            ElementaryFactor::Affine(a) => {
                let mut big = AffineMap::identity(dimension);
                for (i, row) in a.matrix.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        big.matrix[targets[i]][targets[j]] = v.clone();
                    }
                    big.shift[targets[i]] = a.shift[i].clone();
                }
                AffineMap::new(big.matrix, big.shift).map(ElementaryFactor::Affine)
            }
        }
    }
}

impl From<Shear> for ElementaryFactor {
    fn from(s: Shear) -> Self {
        ElementaryFactor::Shear(s)
    }
}

impl From<AffineMap> for ElementaryFactor {
    fn from(a: AffineMap) -> Self {
        ElementaryFactor::Affine(a)
    }
}

/// The map of a single factor.
pub fn factor_to_map(factor: &ElementaryFactor) -> PolyMap {
    let n = factor.dimension();
    match factor {
        ElementaryFactor::Shear(s) => {
            let mut components: Vec<_> = (0..n).map(|i| Polynomial::var(n, i)).collect();
            components[s.target] = components[s.target]
                .checked_add(&s.addend)
                .expect("shear addend has the factor dimension");
            PolyMap {
                dimension: n,
                components,
            }
        }
        ElementaryFactor::Affine(_) => PolyMap::identity(n)
            .then(factor)
            .expect("affine factor has the map dimension"),
    }
}

/// An ordered tame factorization, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "wire::FactorListWire", into = "wire::FactorListWire")]
pub struct FactorList {
    dimension: usize,
    factors: Vec<ElementaryFactor>,
}

impl FactorList {
    pub fn identity(dimension: usize) -> Self {
        FactorList {
            dimension,
            factors: Vec::new(),
        }
    }

    pub fn new(dimension: usize, factors: Vec<ElementaryFactor>) -> Result<Self, MapError> {
        if let Some(f) = factors.iter().find(|f| f.dimension() != dimension) {
            return Err(MapError::DimensionMismatch {
                left: dimension,
                right: f.dimension(),
            });
        }
        Ok(FactorList { dimension, factors })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn factors(&self) -> &[ElementaryFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, factor: ElementaryFactor) -> Result<(), MapError> {
        if factor.dimension() != self.dimension {
            return Err(MapError::DimensionMismatch {
                left: self.dimension,
                right: factor.dimension(),
            });
        }
        self.factors.push(factor);
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &FactorList) -> Result<FactorList, MapError> {
        let mut out = self.clone();
        for f in &other.factors {
            out.push(f.clone())?;
        }
        Ok(out)
    }

    pub fn embed(&self, dimension: usize, targets: &[usize]) -> Result<FactorList, MapError> {
        let factors = self
            .factors
            .iter()
            .map(|f| f.embed(dimension, targets))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FactorList { dimension, factors })
    }
}

/// Left-to-right composition of all factors; the empty list is the identity.
pub fn realize_factors(list: &FactorList) -> Result<PolyMap, MapError> {
    list.factors
        .iter()
        .try_fold(PolyMap::identity(list.dimension), |map, f| map.then(f))
}

/// Reversed list of inverted factors.
pub fn invert_factors(list: &FactorList) -> FactorList {
    FactorList {
        dimension: list.dimension,
        factors: list.factors.iter().rev().map(|f| f.inverse()).collect(),
    }
}

pub fn verify_identity(map: &PolyMap) -> bool {
    map.is_identity()
}

/// Realizes `list` followed by its inverse and checks the result is the
/// identity. Equivalent to composing the two realized maps, but the
/// intermediate degrees stay bounded by those of `list`.
pub fn verify_inverse(list: &FactorList) -> Result<bool, MapError> {
    let round_trip = list.then(&invert_factors(list))?;
    Ok(verify_identity(&realize_factors(&round_trip)?))
}

/// Degree of the Poisson bracket `[f, g]`: two plus the largest degree of a
/// 2x2 Jacobian minor, or 0 when all minors vanish (algebraic dependence).
pub fn poisson_bracket_degree(f: &Polynomial, g: &Polynomial) -> Result<u32, PolyError> {
    if f.dimension() != g.dimension() {
        return Err(PolyError::DimensionMismatch {
            left: f.dimension(),
            right: g.dimension(),
        });
    }
    let n = f.dimension();
    let df = (0..n).map(|i| f.partial(i)).collect::<Result<Vec<_>, _>>()?;
    let dg = (0..n).map(|i| g.partial(i)).collect::<Result<Vec<_>, _>>()?;
    let mut best = Degree::NegInfinity;
    for i in 0..n {
        for j in i + 1..n {
            let minor = df[i]
                .checked_mul(&dg[j])?
                .checked_sub(&df[j].checked_mul(&dg[i])?)?;
            best = best.max(minor.total_degree());
        }
    }
    Ok(match best {
        Degree::NegInfinity => 0,
        Degree::Finite(d) => d + 2,
    })
}

fn int(v: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(v))
}

/// Gauss-Jordan inverse over the rationals; `None` if singular.
pub(crate) fn invert_matrix(matrix: &[Vec<Coefficient>]) -> Option<Vec<Vec<Coefficient>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Coefficient>> = matrix.to_vec();
    let mut inv: Vec<Vec<Coefficient>> = AffineMap::identity(n).matrix;
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        for v in inv[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let da = &factor * &a[col][c];
                a[r][c] -= da;
                let di = &factor * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some(inv)
}

pub(crate) fn parse_coefficient(s: &str) -> Result<Coefficient, MapError> {
    let bad = || MapError::BadCoefficient(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Coefficient::new(n, d))
        }
        None => Ok(Coefficient::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub(crate) fn format_coefficient(c: &Coefficient) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// JSON shapes. Shear targets are 1-based to match the `x1..xn` variable names.
mod wire {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "kind", rename_all = "snake_case")]
    pub enum FactorWire {
        Shear {
            target: usize,
            addend: String,
        },
        Affine {
            matrix: Vec<Vec<String>>,
            shift: Vec<String>,
        },
    }

    #[derive(Serialize, Deserialize)]
    pub struct FactorListWire {
        pub dimension: usize,
        pub factors: Vec<FactorWire>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct PolyMapWire {
        pub dimension: usize,
        pub components: Vec<String>,
    }

    impl From<FactorList> for FactorListWire {
        fn from(list: FactorList) -> Self {
            let factors = list
                .factors
                .iter()
                .map(|f| match f {
                    ElementaryFactor::Shear(s) => FactorWire::Shear {
                        target: s.target + 1,
                        addend: s.addend.to_string(),
                    },
                    ElementaryFactor::Affine(a) => FactorWire::Affine {
                        matrix: a
                            .matrix
                            .iter()
                            .map(|r| r.iter().map(format_coefficient).collect())
                            .collect(),
                        shift: a.shift.iter().map(format_coefficient).collect(),
                    },
                })
                .collect();
            FactorListWire {
                dimension: list.dimension,
                factors,
            }
        }
    }

    impl TryFrom<FactorListWire> for FactorList {
        type Error = MapError;

        fn try_from(w: FactorListWire) -> Result<Self, MapError> {
            let n = w.dimension;
            if n == 0 {
                return Err(PolyError::ZeroDimension.into());
            }
            let factors = w
                .factors
                .into_iter()
                .map(|f| match f {
                    FactorWire::Shear { target, addend } => {
                        if target == 0 || target > n {
                            return Err(MapError::TargetOutOfRange {
                                target: target.wrapping_sub(1),
                                dimension: n,
                            });
                        }
                        ElementaryFactor::shear(target - 1, Polynomial::parse(&addend, n)?)
                    }
                    FactorWire::Affine { matrix, shift } => {
                        let matrix = matrix
                            .iter()
                            .map(|r| r.iter().map(|s| parse_coefficient(s)).collect())
                            .collect::<Result<Vec<Vec<_>>, _>>()?;
                        let shift = shift
                            .iter()
                            .map(|s| parse_coefficient(s))
                            .collect::<Result<Vec<_>, _>>()?;
                        AffineMap::new(matrix, shift).map(ElementaryFactor::Affine)
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            FactorList::new(n, factors)
        }
    }

    impl From<PolyMap> for PolyMapWire {
        fn from(m: PolyMap) -> Self {
            PolyMapWire {
                dimension: m.dimension,
                components: m.components.iter().map(|c| c.to_string()).collect(),
            }
        }
    }

    impl TryFrom<PolyMapWire> for PolyMap {
        type Error = MapError;

        fn try_from(w: PolyMapWire) -> Result<Self, MapError> {
            if w.components.len() != w.dimension {
                return Err(MapError::DimensionMismatch {
                    left: w.dimension,
                    right: w.components.len(),
                });
            }
            let comps = w
                .components
                .iter()
                .map(|c| Polynomial::parse(c, w.dimension))
                .collect::<Result<Vec<_>, _>>()?;
            PolyMap::new(comps)
        }
    }
}

impl Serialize for PolyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        wire::PolyMapWire::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = wire::PolyMapWire::deserialize(d)?;
        PolyMap::try_from(w).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, dim: usize) -> Polynomial {
        Polynomial::parse(s, dim).unwrap()
    }

    fn shear(target: usize, addend: &str, dim: usize) -> ElementaryFactor {
        ElementaryFactor::shear(target, p(addend, dim)).unwrap()
    }

    fn jung_2_4() -> FactorList {
        FactorList::new(2, vec![shear(0, "x2^2", 2), shear(1, "x1^2", 2)]).unwrap()
    }

    #[test]
    fn shear_map_in_two_variables() {
        let m = factor_to_map(&shear(0, "x2^2", 2));
        assert_eq!(m.to_string(), "(x2^2 + x1, x2)");
        assert_eq!(m.multidegree().unwrap(), vec![2, 1]);
    }

    #[test]
    fn shear_map_in_three_variables() {
        let m = factor_to_map(&shear(1, "x1^3", 3));
        assert_eq!(
            m.components(),
            &[p("x1", 3), p("x2 + x1^3", 3), p("x3", 3)]
        );
    }

    #[test]
    fn identity_affine_is_identity() {
        let f = ElementaryFactor::Affine(AffineMap::identity(3));
        assert!(verify_identity(&factor_to_map(&f)));
        assert_eq!(PolyMap::identity(3).multidegree().unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn shear_rejects_own_variable() {
        assert_eq!(
            ElementaryFactor::shear(0, p("x1*x2", 2)),
            Err(MapError::AddendInvolvesTarget { target: 0 })
        );
    }

    #[test]
    fn singular_affine_rejected() {
        assert_eq!(
            AffineMap::from_integers(&[vec![1, 2], vec![2, 4]], &[0, 0]),
            Err(MapError::SingularMatrix)
        );
    }

    #[test]
    fn jung_pair_composes_to_expected_map() {
        let list = jung_2_4();
        let m = realize_factors(&list).unwrap();
        assert_eq!(m.multidegree().unwrap(), vec![2, 4]);
        // outer ∘ inner agrees with the fold
        let folded = compose_maps(
            &factor_to_map(&list.factors()[1]),
            &factor_to_map(&list.factors()[0]),
        )
        .unwrap();
        assert_eq!(m, folded);
        assert_eq!(
            m.component(1),
            &p("x2 + x1^2 + 2*x1*x2^2 + x2^4", 2)
        );
    }

    #[test]
    fn compose_with_identity() {
        let m = realize_factors(&jung_2_4()).unwrap();
        assert_eq!(compose_maps(&PolyMap::identity(2), &m).unwrap(), m);
        assert!(compose_maps(&PolyMap::identity(3), &m).is_err());
    }

    #[test]
    fn prop2_style_composition_for_3_4_7() {
        // h: x1 += x3^3, x2 += x3^4 ; g: x3 += x1*x2
        let list = FactorList::new(
            3,
            vec![shear(0, "x3^3", 3), shear(1, "x3^4", 3), shear(2, "x1*x2", 3)],
        )
        .unwrap();
        let m = realize_factors(&list).unwrap();
        assert_eq!(m.multidegree().unwrap(), vec![3, 4, 7]);
    }

    #[test]
    fn inversion() {
        let single = FactorList::new(2, vec![shear(0, "x2^2", 2)]).unwrap();
        assert_eq!(
            invert_factors(&single).factors(),
            &[shear(0, "-x2^2", 2)]
        );
        assert!(invert_factors(&FactorList::identity(2)).is_empty());
        assert!(verify_inverse(&jung_2_4()).unwrap());
        assert!(verify_identity(&PolyMap::identity(2)));
        assert!(!verify_identity(&factor_to_map(&shear(0, "x2^2", 2))));
    }

    #[test]
    fn affine_inverse_round_trip() {
        let a = AffineMap::from_integers(&[vec![2, 1], vec![1, 1]], &[3, -1]).unwrap();
        let list = FactorList::new(
            2,
            vec![ElementaryFactor::Affine(a), shear(1, "x1^2", 2)],
        )
        .unwrap();
        assert!(verify_inverse(&list).unwrap());
        let forward = realize_factors(&list).unwrap();
        let back = realize_factors(&invert_factors(&list)).unwrap();
        assert!(verify_identity(&compose_maps(&forward, &back).unwrap()));
        assert!(verify_identity(&compose_maps(&back, &forward).unwrap()));
    }

    #[test]
    fn bracket_degrees() {
        assert_eq!(poisson_bracket_degree(&p("x1", 2), &p("x2", 2)).unwrap(), 2);
        assert_eq!(poisson_bracket_degree(&p("x1", 2), &p("x1^2", 2)).unwrap(), 0);
        // minors: (1,2): 1, (1,3): 0, (2,3): 0
        assert_eq!(
            poisson_bracket_degree(&p("x1", 3), &p("x2 + x1^3", 3)).unwrap(),
            2
        );
        // f = x1^2 + x2, g = x1^3 + x3: minors -3x1^2, 2x1, 1
        assert_eq!(
            poisson_bracket_degree(&p("x1^2 + x2", 3), &p("x1^3 + x3", 3)).unwrap(),
            4
        );
    }

    #[test]
    fn embed_into_larger_dimension() {
        let lifted = jung_2_4().embed(3, &[0, 2]).unwrap();
        let m = realize_factors(&lifted).unwrap();
        assert_eq!(m.multidegree().unwrap(), vec![2, 1, 4]);
        let perm = FactorList::new(
            3,
            vec![ElementaryFactor::Affine(AffineMap::permutation(&[2, 0, 1]).unwrap())],
        )
        .unwrap();
        let pm = realize_factors(&perm).unwrap();
        assert_eq!(pm.components(), &[p("x3", 3), p("x1", 3), p("x2", 3)]);
    }

    #[test]
    fn json_round_trip() {
        let a = AffineMap::new(
            vec![
                vec![Coefficient::new(1.into(), 2.into()), Coefficient::zero()],
                vec![int(0), int(1)],
            ],
            vec![int(0), Coefficient::new((-3).into(), 4.into())],
        )
        .unwrap();
        let list = FactorList::new(
            2,
            vec![shear(0, "x2^2", 2), ElementaryFactor::Affine(a)],
        )
        .unwrap();
        let text = serde_json::to_string(&list).unwrap();
        assert!(text.contains(r#""kind":"shear","target":1,"addend":"x2^2""#));
        assert!(text.contains(r#""1/2""#));
        let back: FactorList = serde_json::from_str(&text).unwrap();
        assert_eq!(back, list);

        let m = realize_factors(&list).unwrap();
        let back: PolyMap = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_invalid_factors() {
        let bad = r#"{"dimension":2,"factors":[{"kind":"shear","target":1,"addend":"x1"}]}"#;
        assert!(serde_json::from_str::<FactorList>(bad).is_err());
        let bad = r#"{"dimension":2,"factors":[{"kind":"affine","matrix":[["1","1"],["1","1"]],"shift":["0","0"]}]}"#;
        assert!(serde_json::from_str::<FactorList>(bad).is_err());
        let bad = r#"{"dimension":2,"factors":[{"kind":"shear","target":3,"addend":"x1"}]}"#;
        assert!(serde_json::from_str::<FactorList>(bad).is_err());
    }
}
