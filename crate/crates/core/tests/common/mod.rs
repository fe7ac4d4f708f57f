#![allow(dead_code)]

use mdeg::exactpoly::{Coefficient, Monomial, Polynomial};
use mdeg::obstruction::pair_precondition;
use mdeg::polymap::{AffineMap, ElementaryFactor, FactorList};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn int(v: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(v))
}

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> Coefficient {
    let v = [-3, -2, -1, 1, 2, 3].choose(rng).copied().unwrap();
    if rng.gen_bool(0.2) {
        Coefficient::new(BigInt::from(v), BigInt::from(rng.gen_range(2..=4)))
    } else {
        int(v)
    }
}

/// Random monomial of exactly `degree` in the variables listed in `vars`.
pub fn random_monomial(rng: &mut ChaCha8Rng, dim: usize, vars: &[usize], degree: u32) -> Monomial {
    let mut exps = vec![0u32; dim];
    for _ in 0..degree {
        exps[*vars.choose(rng).unwrap()] += 1;
    }
    Monomial::new(exps).unwrap()
}

/// Random polynomial with up to `max_terms` terms of degree at most `max_degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, dim: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let vars: Vec<usize> = (0..dim).collect();
    let terms: Vec<_> = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            let d = rng.gen_range(0..=max_degree);
            (nonzero_coeff(rng), random_monomial(rng, dim, &vars, d))
        })
        .collect();
    Polynomial::from_terms(dim, terms).unwrap()
}

/// Random polynomial whose top-degree part is a single monomial of degree `degree`.
pub fn random_poly_of_degree(rng: &mut ChaCha8Rng, dim: usize, degree: u32, extra: usize) -> Polynomial {
    let vars: Vec<usize> = (0..dim).collect();
    let lead = Polynomial::from_terms(
        dim,
        [(nonzero_coeff(rng), random_monomial(rng, dim, &vars, degree))],
    )
    .unwrap();
    let rest = if degree == 0 {
        Polynomial::zero(dim)
    } else {
        random_poly(rng, dim, degree - 1, extra)
    };
    lead.checked_add(&rest).unwrap()
}

pub fn random_factor_list(rng: &mut ChaCha8Rng, dim: usize, max_len: usize) -> FactorList {
    let mut list = FactorList::identity(dim);
    for _ in 0..rng.gen_range(0..=max_len) {
        let f = if rng.gen_bool(0.35) {
            let matrix: Vec<Vec<Coefficient>> = loop {
                let m: Vec<Vec<Coefficient>> = (0..dim)
                    .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
                    .collect();
                if AffineMap::new(m.clone(), vec![int(0); dim]).is_ok() {
                    break m;
                }
            };
            let shift = (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect();
            ElementaryFactor::Affine(AffineMap::new(matrix, shift).unwrap())
        } else {
            let target = rng.gen_range(0..dim);
            let vars: Vec<usize> = (0..dim).filter(|&v| v != target).collect();
            let terms: Vec<_> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let d = rng.gen_range(0..=2);
                    (nonzero_coeff(rng), random_monomial(rng, dim, &vars, d))
                })
                .collect();
            ElementaryFactor::shear(target, Polynomial::from_terms(dim, terms).unwrap()).unwrap()
        };
        list.push(f).unwrap();
    }
    list
}

/// A pair (f, g) in three variables with `deg f < deg g <= 6` satisfying the
/// non-multiple precondition, and a bivariate `G` with `deg_y G <= 6`.
pub struct BoundCase {
    pub f: Polynomial,
    pub g: Polynomial,
    pub big_g: Polynomial,
    /// Leading forms of f and g are powers of a common form and `G` was
    /// chosen to cancel them.
    pub structured: bool,
}

const DEGREE_PAIRS: [(u32, u32); 9] = [
    (2, 3),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
    (4, 6),
    (5, 6),
    (2, 3),
    (3, 5),
];

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn random_bivariate(rng: &mut ChaCha8Rng, terms: usize) -> Polynomial {
    let t: Vec<_> = (0..terms)
        .map(|_| {
            let i = rng.gen_range(0..=3);
            let j = rng.gen_range(0..=6);
            (nonzero_coeff(rng), Monomial::new(vec![i, j]).unwrap())
        })
        .collect();
    Polynomial::from_terms(2, t).unwrap()
}

pub fn bound_case(rng: &mut ChaCha8Rng) -> BoundCase {
    let vars = [0usize, 1, 2];
    if rng.gen_bool(0.5) {
        // leading forms c1*h^a and c2*h^b; G cancels f^(b') against g^(a')
        let (a, b, k) = if rng.gen_bool(0.2) {
            (2, 3, 2)
        } else {
            let (a, b) = DEGREE_PAIRS[rng.gen_range(0..7)];
            (a, b, 1)
        };
        let h = loop {
            let terms: Vec<_> = (0..rng.gen_range(1..=3))
                .map(|_| (nonzero_coeff(rng), random_monomial(rng, 3, &vars, k)))
                .collect();
            let h = Polynomial::from_terms(3, terms).unwrap();
            if !h.is_zero() {
                break h;
            }
        };
        let f = h
            .pow(a)
            .unwrap()
            .checked_add(&random_poly(rng, 3, a * k - 1, 3))
            .unwrap();
        let g = h
            .pow(b)
            .unwrap()
            .checked_add(&random_poly(rng, 3, b * k - 1, 3))
            .unwrap();
        let d = gcd(a, b);
        let (ap, bp) = (a / d, b / d);
        let cancel = Polynomial::monomial(int(1), vec![0, ap])
            .unwrap()
            .checked_sub(&Polynomial::monomial(int(1), vec![bp, 0]).unwrap())
            .unwrap();
        let shift = Polynomial::monomial(int(1), vec![0, rng.gen_range(0..=6 - ap)]).unwrap();
        let mut big_g = cancel.checked_mul(&shift).unwrap();
        if rng.gen_bool(0.5) {
            big_g = big_g.checked_add(&random_bivariate(rng, 2)).unwrap();
        }
        if big_g.is_zero() {
            big_g = cancel;
        }
        BoundCase {
            f,
            g,
            big_g,
            structured: true,
        }
    } else {
        let (n, m) = loop {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(n + 1..=6);
            if pair_precondition(n, m) {
                break (n, m);
            }
        };
        let f = random_poly_of_degree(rng, 3, n, 3);
        let g = random_poly_of_degree(rng, 3, m, 3);
        let big_g = loop {
            let terms = rng.gen_range(1..=4);
            let p = random_bivariate(rng, terms);
            if !p.is_zero() {
                break p;
            }
        };
        BoundCase {
            f,
            g,
            big_g,
            structured: false,
        }
    }
}
