//! Three-valued classification of degree tuples.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::obstruction::check::{verify_certificate, CertificateError};
use crate::obstruction::{analyze, NotTameCertificate, UnknownReason};
use crate::polymap::{realize_factors, verify_inverse, FactorList, MapError};
use crate::realizer::{jung_realize_dim2, realize, DegreeError, DegreeTuple};

/// Planar case: neither degree divides the other, so no automorphism of the
/// plane (tame or not) has this multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarCertificate {
    pub degrees: [u32; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Planar(PlanarCertificate),
    Spatial(NotTameCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Realizable { factors: FactorList },
    NotTame { certificate: Certificate },
    Unknown { reason: UnknownReason },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Realizable { .. } => "realizable",
            Verdict::NotTame { .. } => "not_tame",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable { .. })
    }

    pub fn is_not_tame(&self) -> bool {
        matches!(self, Verdict::NotTame { .. })
    }

    /// Re-checks the evidence against `degrees` (in the order the factors
    /// realize them, i.e. sorted for verdicts from [`classify`]).
    pub fn verify(&self, degrees: &[u32]) -> Result<(), VerifyError> {
        match self {
            Verdict::Realizable { factors } => verify_factorization(factors, degrees),
            Verdict::NotTame { certificate } => verify_not_tame(certificate, degrees),
            Verdict::Unknown { .. } => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Degrees(#[from] DegreeError),
    #[error("classification supports dimensions 2 and 3, got {0}")]
    UnsupportedDimension(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("multidegree {got:?} does not match {expected:?}")]
    Multidegree { expected: Vec<u32>, got: Vec<u32> },
    #[error("factorization composed with its inverse is not the identity")]
    Inverse,
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error("planar certificate is invalid: {0:?} has a divisibility relation")]
    Planar([u32; 2]),
    #[error("certificate degrees {got:?} do not match {expected:?}")]
    Degrees { expected: Vec<u32>, got: Vec<u32> },
}

pub fn verify_factorization(factors: &FactorList, degrees: &[u32]) -> Result<(), VerifyError> {
    let got = realize_factors(factors)?.multidegree()?;
    if got != degrees {
        return Err(VerifyError::Multidegree {
            expected: degrees.to_vec(),
            got,
        });
    }
    if !verify_inverse(factors)? {
        return Err(VerifyError::Inverse);
    }
    Ok(())
}

pub fn verify_not_tame(certificate: &Certificate, degrees: &[u32]) -> Result<(), VerifyError> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    match certificate {
        Certificate::Planar(p) => {
            if sorted != p.degrees {
                return Err(VerifyError::Degrees {
                    expected: sorted,
                    got: p.degrees.to_vec(),
                });
            }
            let [a, b] = p.degrees;
            if a == 0 || b == 0 || a % b == 0 || b % a == 0 {
                return Err(VerifyError::Planar(p.degrees));
            }
            Ok(())
        }
        Certificate::Spatial(c) => {
            if sorted != c.degrees {
                return Err(VerifyError::Degrees {
                    expected: sorted,
                    got: c.degrees.to_vec(),
                });
            }
            Ok(verify_certificate(c)?)
        }
    }
}

/// Sorts `degrees` and classifies the result. Permutations of the same
/// tuple get identical verdicts.
pub fn classify(degrees: &[u32]) -> Result<Verdict, ClassifyError> {
    let tuple = DegreeTuple::new(degrees)?;
    let d = tuple.sorted();
    match d.len() {
        2 => Ok(match jung_realize_dim2(d[0], d[1]) {
            Some(factors) => Verdict::Realizable { factors },
            None => Verdict::NotTame {
                certificate: Certificate::Planar(PlanarCertificate {
                    degrees: [d[0], d[1]],
                }),
            },
        }),
        3 => {
            if let Some(factors) = realize(&tuple) {
                return Ok(Verdict::Realizable { factors });
            }
            Ok(match analyze(&[d[0], d[1], d[2]]) {
                Ok(cert) => Verdict::NotTame {
                    certificate: Certificate::Spatial(cert),
                },
                Err(reason) => Verdict::Unknown { reason },
            })
        }
        n => Err(ClassifyError::UnsupportedDimension(n)),
    }
}

fn classify_all(tuples: Vec<[u32; 3]>) -> Vec<([u32; 3], Verdict)> {
    let run = |d: [u32; 3]| (d, classify(&d).expect("positive triple"));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        tuples.into_par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        tuples.into_iter().map(run).collect()
    }
}

/// Families `(2,d2,d3)`, `(3,4,d3)`, `(3,5,d3)` and `(4,5,d3)` with
/// `d3 <= max_d3`, sorted by triple.
pub fn summary_table(max_d3: u32) -> Vec<([u32; 3], Verdict)> {
    let mut tuples = Vec::new();
    for d3 in 2..=max_d3 {
        for d2 in 2..=d3 {
            tuples.push([2, d2, d3]);
        }
    }
    for (d1, d2) in [(3, 4), (3, 5), (4, 5)] {
        for d3 in d2..=max_d3 {
            tuples.push([d1, d2, d3]);
        }
    }
    tuples.sort_unstable();
    classify_all(tuples)
}

/// Every sorted triple `1 <= d1 <= d2 <= d3 <= max`.
pub fn grid(max: u32) -> Vec<([u32; 3], Verdict)> {
    let mut tuples = Vec::new();
    for d1 in 1..=max {
        for d2 in d1..=max {
            for d3 in d2..=max {
                tuples.push([d1, d2, d3]);
            }
        }
    }
    classify_all(tuples)
}
