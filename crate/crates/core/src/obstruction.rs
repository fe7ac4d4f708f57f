//! Degree obstructions for tame automorphisms of 3-space.
//!
//! A tame automorphism of 3-space that is not linear admits an elementary
//! reduction or a reduction of one of types I–IV. Each of those leaves a
//! footprint on the multidegree:
//!
//! - types I/II: some `deg F_a = 2n` and `deg F_b = n*s` with `s >= 3` odd;
//! - types III/IV: some `deg F_a = 2n` and either `deg F_b = 3n` with
//!   `n < deg F_c <= 3n/2`, or `5n/2 < deg F_b <= 3n` with `deg F_c = 3n/2`;
//! - elementary: `deg g(F_b, F_c) = deg F_a` for some polynomial `g`.
//!
//! The last one is decided with the degree estimate
//! `deg G(f,g) >= q(p deg g - deg g - deg f + deg[f,g]) + r deg g` where
//! `deg_y G = pq + r`. When `q = 0` the monomials `f^i g^j` with `j < p` have
//! pairwise distinct degrees, so `deg G(f,g)` is exactly one of the
//! combinations `i deg f + j deg g`. When `q >= 1` the estimate is the only
//! available information. A [`NotTameCertificate`] records that every one of
//! these footprints is absent.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("degrees must be positive")]
    NonPositive,
    #[error("expected deg f <= deg g, got {n} > {m}")]
    Unordered { n: u32, m: u32 },
    #[error("bracket lower bound must be at least 2, got {0}")]
    BracketTooSmall(u32),
    #[error("{n} and {m} violate the non-multiple precondition")]
    Precondition { n: u32, m: u32 },
}

/// Inputs to the degree estimate for `G(f, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    /// `deg f`
    pub n: u32,
    /// `deg g`, at least `n`
    pub m: u32,
    /// `n / gcd(n, m)`
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub bracket_lb: u32,
}

impl BoundParams {
    /// Splits `deg_y = p*q + r` with `0 <= r < p`.
    pub fn new(n: u32, m: u32, deg_y: u32, bracket_lb: u32) -> Result<Self, ObstructionError> {
        if n == 0 || m == 0 {
            return Err(ObstructionError::NonPositive);
        }
        if n > m {
            return Err(ObstructionError::Unordered { n, m });
        }
        if bracket_lb < 2 {
            return Err(ObstructionError::BracketTooSmall(bracket_lb));
        }
        let p = n / num_integer::gcd(n, m);
        Ok(BoundParams {
            n,
            m,
            p,
            q: deg_y / p,
            r: deg_y % p,
            bracket_lb,
        })
    }
}

/// `q (p m - m - n + bracket_lb) + r m`. Can be negative when `p = 1`.
pub fn su_lower_bound(bp: &BoundParams) -> i64 {
    let (n, m, p) = (bp.n as i64, bp.m as i64, bp.p as i64);
    bp.q as i64 * (p * m - m - n + bp.bracket_lb as i64) + bp.r as i64 * m
}

/// Neither degree is a positive multiple of the other.
pub fn pair_precondition(da: u32, db: u32) -> bool {
    !da.is_multiple_of(db) && !db.is_multiple_of(da)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `t = a n + b m` and the estimate for `deg_y = b` does not exceed `t`.
    Combination { a: u32, b: u32 },
    /// Leading forms may cancel once `deg_y >= p`; the smallest estimate in
    /// that regime (`q = 1, r = 0`) does not exceed `t`.
    CancellationBound { q: u32, r: u32, bound: i64 },
}

/// Can some `g(F_j, F_k)` with degrees `n <= m` have degree exactly `t`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachabilityReport {
    pub n: u32,
    pub m: u32,
    pub t: u32,
    pub reachable: bool,
    pub witnesses: Vec<Witness>,
    pub exclusion_reason: Option<String>,
}

pub fn elementary_reachable(n: u32, m: u32, t: u32) -> Result<ReachabilityReport, ObstructionError> {
    if n == 0 || m == 0 || t == 0 {
        return Err(ObstructionError::NonPositive);
    }
    if n > m {
        return Err(ObstructionError::Unordered { n, m });
    }
    if !pair_precondition(n, m) {
        return Err(ObstructionError::Precondition { n, m });
    }
    let mut witnesses = Vec::new();
    for b in 0..=t / m {
        let rest = t - b * m;
        if !rest.is_multiple_of(n) {
            continue;
        }
        let bp = BoundParams::new(n, m, b, 2)?;
        if su_lower_bound(&bp) <= t as i64 {
            witnesses.push(Witness::Combination { a: rest / n, b });
        }
    }
    let floor = BoundParams::new(n, m, BoundParams::new(n, m, 0, 2)?.p, 2)?;
    let threshold = su_lower_bound(&floor);
    if threshold <= t as i64 {
        witnesses.push(Witness::CancellationBound {
            q: floor.q,
            r: floor.r,
            bound: threshold,
        });
    }
    let reachable = !witnesses.is_empty();
    let p = floor.p;
    let exclusion_reason = (!reachable).then(|| {
        format!(
            "{t} is not a*{n} + b*{m} with a >= 0, 0 <= b < {p}, and {t} < {threshold}, \
             the least lower bound for deg_y >= {p}"
        )
    });
    Ok(ReachabilityReport {
        n,
        m,
        t,
        reachable,
        witnesses,
        exclusion_reason,
    })
}

/// One even entry `2n` examined against the other two entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingCheck {
    /// Index into the sorted degree triple.
    pub position: usize,
    pub n: u32,
    pub others: [u32; 2],
    pub reason: String,
}

/// Evidence that a degree pattern is absent: every even entry checked.
/// An empty list means the triple has no even entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEvidence {
    pub checks: Vec<DoublingCheck>,
}

fn others(d: &[u32; 3], i: usize) -> [u32; 2] {
    let rest: Vec<u32> = (0..3).filter(|&j| j != i).map(|j| d[j]).collect();
    [rest[0], rest[1]]
}

fn is_odd_multiple(value: u32, n: u32) -> bool {
    value.is_multiple_of(n) && (value / n) % 2 == 1 && value / n >= 3
}

/// Evidence that no entry is `2n` while another is `n*s` with odd `s >= 3`.
pub fn type_i_ii_excluded(d: &[u32; 3]) -> Option<PatternEvidence> {
    let mut checks = Vec::new();
    for (i, &di) in d.iter().enumerate() {
        if di % 2 != 0 {
            continue;
        }
        let n = di / 2;
        let rest = others(d, i);
        if rest.iter().any(|&v| is_odd_multiple(v, n)) {
            return None;
        }
        checks.push(DoublingCheck {
            position: i,
            n,
            others: rest,
            reason: format!(
                "neither {} nor {} is {n}*s with s odd and s >= 3",
                rest[0], rest[1]
            ),
        });
    }
    Some(PatternEvidence { checks })
}

fn type_iii_iv_rows(n: u32, second: u32, third: u32) -> bool {
    let n = Ratio::from_integer(n as i64);
    let second = Ratio::from_integer(second as i64);
    let third = Ratio::from_integer(third as i64);
    let three_n = n * 3;
    let three_halves_n = n * Ratio::new(3, 2);
    let five_halves_n = n * Ratio::new(5, 2);
    let row1 = second == three_n && n < third && third <= three_halves_n;
    let row2 = five_halves_n < second && second <= three_n && third == three_halves_n;
    row1 || row2
}

/// Evidence that neither III/IV window is met for any even entry `2n`.
pub fn type_iii_iv_excluded(d: &[u32; 3]) -> Option<PatternEvidence> {
    let mut checks = Vec::new();
    for (i, &di) in d.iter().enumerate() {
        if di % 2 != 0 {
            continue;
        }
        let n = di / 2;
        let [a, b] = others(d, i);
        if type_iii_iv_rows(n, a, b) || type_iii_iv_rows(n, b, a) {
            return None;
        }
        checks.push(DoublingCheck {
            position: i,
            n,
            others: [a, b],
            reason: format!(
                "no ordering of ({a}, {b}) satisfies deg = {} with {n} < deg <= {}/2, \
                 or {}/2 < deg <= {} with deg = {}/2",
                3 * n,
                3 * n,
                5 * n,
                3 * n,
                3 * n
            ),
        });
    }
    Some(PatternEvidence { checks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFact {
    pub pair: [u32; 2],
    pub holds: bool,
}

/// Why the obstruction could not certify a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnknownReason {
    #[serde(rename = "precondition_failed")]
    PreconditionFailed,
    #[serde(rename = "pattern_match_I_II")]
    PatternMatchTypeIII,
    #[serde(rename = "pattern_match_III_IV")]
    PatternMatchTypeIIIIV,
    #[serde(rename = "reachable_coordinate")]
    ReachableCoordinate,
}

impl UnknownReason {
    pub fn as_str(self) -> &'static str {
        match self {
            UnknownReason::PreconditionFailed => "precondition_failed",
            UnknownReason::PatternMatchTypeIII => "pattern_match_I_II",
            UnknownReason::PatternMatchTypeIIIIV => "pattern_match_III_IV",
            UnknownReason::ReachableCoordinate => "reachable_coordinate",
        }
    }
}

/// Self-contained proof that no tame automorphism of 3-space has the given
/// multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotTameCertificate {
    pub degrees: [u32; 3],
    pub pair_preconditions: Vec<PairFact>,
    pub type_i_ii_excluded: PatternEvidence,
    pub type_iii_iv_excluded: PatternEvidence,
    /// One report per target coordinate, in the order of `degrees`.
    pub elementary_excluded: Vec<ReachabilityReport>,
}

impl NotTameCertificate {
    /// One human-readable line per recorded fact.
    pub fn explain(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .pair_preconditions
            .iter()
            .map(|f| format!("{} and {}: neither is a multiple of the other", f.pair[0], f.pair[1]))
            .collect();
        if self.type_i_ii_excluded.checks.is_empty() {
            lines.push("types I-IV: no even degree".into());
        }
        for c in &self.type_i_ii_excluded.checks {
            lines.push(format!("type I/II, {} = 2*{}: {}", 2 * c.n, c.n, c.reason));
        }
        for c in &self.type_iii_iv_excluded.checks {
            lines.push(format!("type III/IV, {} = 2*{}: {}", 2 * c.n, c.n, c.reason));
        }
        for r in &self.elementary_excluded {
            lines.push(format!(
                "elementary, target {} from ({}, {}): {}",
                r.t,
                r.n,
                r.m,
                r.exclusion_reason.as_deref().unwrap_or("")
            ));
        }
        lines
    }
}

fn sorted_triple(d: &[u32; 3]) -> [u32; 3] {
    let mut s = *d;
    s.sort_unstable();
    s
}

/// Runs every exclusion in order and reports the first one that fails.
pub fn analyze(d: &[u32; 3]) -> Result<NotTameCertificate, UnknownReason> {
    let d = sorted_triple(d);
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let pair_preconditions: Vec<PairFact> = pairs
        .iter()
        .map(|&(i, j)| PairFact {
            pair: [d[i], d[j]],
            holds: pair_precondition(d[i], d[j]),
        })
        .collect();
    if pair_preconditions.iter().any(|f| !f.holds) {
        return Err(UnknownReason::PreconditionFailed);
    }
    let type_i_ii = type_i_ii_excluded(&d).ok_or(UnknownReason::PatternMatchTypeIII)?;
    let type_iii_iv = type_iii_iv_excluded(&d).ok_or(UnknownReason::PatternMatchTypeIIIIV)?;
    let mut reports = Vec::with_capacity(3);
    for i in 0..3 {
        let [a, b] = others(&d, i);
        let report =
            elementary_reachable(a, b, d[i]).map_err(|_| UnknownReason::PreconditionFailed)?;
        if report.reachable {
            return Err(UnknownReason::ReachableCoordinate);
        }
        reports.push(report);
    }
    Ok(NotTameCertificate {
        degrees: d,
        pair_preconditions,
        type_i_ii_excluded: type_i_ii,
        type_iii_iv_excluded: type_iii_iv,
        elementary_excluded: reports,
    })
}

pub fn not_tame_check(d: &[u32; 3]) -> Option<NotTameCertificate> {
    analyze(d).ok()
}

pub mod check;
