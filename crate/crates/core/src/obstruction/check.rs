//! Re-verification of [`NotTameCertificate`]s from the degrees alone.
//!
//! Everything here is recomputed by exhaustive enumeration with doubled
//! integers, sharing no code path with the certificate builder.

use thiserror::Error;

use super::{NotTameCertificate, PatternEvidence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("degrees {0:?} are not a sorted triple of positive integers")]
    BadDegrees([u32; 3]),
    #[error("pair facts do not match the degrees")]
    PairFacts,
    #[error("{a} and {b}: one is a multiple of the other")]
    PairMultiple { a: u32, b: u32 },
    #[error("type I/II pattern present: {0}")]
    TypeIII(String),
    #[error("type III/IV pattern present: {0}")]
    TypeIIIIV(String),
    #[error("pattern evidence does not list exactly the even entries")]
    Evidence,
    #[error("elementary report {index} is inconsistent: {msg}")]
    Elementary { index: usize, msg: String },
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn is_multiple(a: u32, b: u32) -> bool {
    (1..=b).any(|k| k * a == b)
}

fn brute_gcd(a: u32, b: u32) -> u32 {
    (1..=a.min(b)).rev().find(|k| a.is_multiple_of(*k) && b.is_multiple_of(*k)).unwrap_or(1)
}

fn check_evidence(d: &[u32; 3], ev: &PatternEvidence) -> Result<(), CertificateError> {
    let even: Vec<usize> = (0..3).filter(|&i| d[i].is_multiple_of(2)).collect();
    let listed: Vec<usize> = ev.checks.iter().map(|c| c.position).collect();
    if even != listed {
        return Err(CertificateError::Evidence);
    }
    for c in &ev.checks {
        let mut rest: Vec<u32> = (0..3).filter(|&j| j != c.position).map(|j| d[j]).collect();
        let mut got = c.others.to_vec();
        rest.sort_unstable();
        got.sort_unstable();
        if 2 * c.n != d[c.position] || rest != got {
            return Err(CertificateError::Evidence);
        }
    }
    Ok(())
}

/// Recomputes every field of `cert` and fails on the first disagreement.
pub fn verify_certificate(cert: &NotTameCertificate) -> Result<(), CertificateError> {
    let d = cert.degrees;
    if d.contains(&0) || d[0] > d[1] || d[1] > d[2] {
        return Err(CertificateError::BadDegrees(d));
    }
    let max = d[2];

    let pairs = [(d[0], d[1]), (d[0], d[2]), (d[1], d[2])];
    if cert.pair_preconditions.len() != 3 {
        return Err(CertificateError::PairFacts);
    }
    for (fact, &(a, b)) in cert.pair_preconditions.iter().zip(&pairs) {
        if fact.pair != [a, b] || !fact.holds {
            return Err(CertificateError::PairFacts);
        }
        if is_multiple(a, b) || is_multiple(b, a) {
            return Err(CertificateError::PairMultiple { a, b });
        }
    }

    for s in PERMUTATIONS {
        let (first, second, third) = (d[s[0]], d[s[1]], d[s[2]]);
        for n in 1..=max {
            if first != 2 * n {
                continue;
            }
            for odd in (3..=max).step_by(2) {
                if second == n * odd {
                    return Err(CertificateError::TypeIII(format!(
                        "{first} = 2*{n}, {second} = {n}*{odd}"
                    )));
                }
            }
            // doubled: 3n/2 -> 3n, 5n/2 -> 5n
            let row1 = second == 3 * n && n < third && 2 * third <= 3 * n;
            let row2 = 5 * n < 2 * second && second <= 3 * n && 2 * third == 3 * n;
            if row1 || row2 {
                return Err(CertificateError::TypeIIIIV(format!(
                    "{first} = 2*{n} with ({second}, {third})"
                )));
            }
        }
    }
    check_evidence(&d, &cert.type_i_ii_excluded)?;
    check_evidence(&d, &cert.type_iii_iv_excluded)?;

    if cert.elementary_excluded.len() != 3 {
        return Err(CertificateError::Elementary {
            index: 0,
            msg: "expected three reports".into(),
        });
    }
    for (i, report) in cert.elementary_excluded.iter().enumerate() {
        let fail = |msg: String| CertificateError::Elementary { index: i, msg };
        let mut rest: Vec<u32> = (0..3).filter(|&j| j != i).map(|j| d[j]).collect();
        rest.sort_unstable();
        let (n, m, t) = (rest[0], rest[1], d[i]);
        if (report.n, report.m, report.t) != (n, m, t) {
            return Err(fail("degrees do not match the triple".into()));
        }
        if report.reachable || !report.witnesses.is_empty() {
            return Err(fail("report claims reachability".into()));
        }
        let p = n / brute_gcd(n, m);
        let estimate = |deg_y: u32| -> i64 {
            let (q, r) = ((deg_y / p) as i64, (deg_y % p) as i64);
            let (n, m, p) = (n as i64, m as i64, p as i64);
            q * (p * m - m - n + 2) + r * m
        };
        for a in 0..=t {
            for b in 0..=t {
                if a * n + b * m == t && estimate(b) <= t as i64 {
                    return Err(fail(format!("{t} = {a}*{n} + {b}*{m}")));
                }
            }
        }
        for deg_y in p..=p + t {
            if estimate(deg_y) <= t as i64 {
                return Err(fail(format!(
                    "deg_y = {deg_y} admits degree {t} after cancellation"
                )));
            }
        }
    }
    Ok(())
}
