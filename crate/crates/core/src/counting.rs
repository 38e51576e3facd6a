//! Closed-form counting of the studied languages and reconciliation of
//! those formulas against exhaustive enumeration.
//!
//! Two variants of the tangent and analytic complexity formulas are
//! provided: the formulas exactly as printed in the source they come
//! from, and a geometrically rederived candidate. Enumeration is the
//! arbiter between them; the reconciliation report records, per length,
//! which closed-form cells agree with the enumerated truth.
//!
//! All arithmetic is exact and 128-bit; overflow panics rather than
//! wrapping silently.

use serde::Serialize;
use thiserror::Error;

use crate::lang::{LabError, Language, LanguageLab};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountingError {
    #[error("totient undefined for n = 0")]
    Domain,
    #[error("halved triple sum is odd at n = {n}")]
    ParityViolation { n: u64 },
    #[error("need {needed} strong-bispecial counts, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

/// Which printing of the closed-form complexity formulas to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormVariant {
    /// The formulas exactly as printed in their source.
    PaperAsPrinted,
    /// The rederivation from counting lattice segments and slaloms.
    GeometricCandidate,
}

fn phi(n: u64) -> u64 {
    debug_assert!(n >= 1);
    let mut remaining = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= remaining {
        if remaining % p == 0 {
            while remaining % p == 0 {
                remaining /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if remaining > 1 {
        result -= result / remaining;
    }
    result
}

/// Euler's totient.
pub fn totient(n: u64) -> Result<u64, CountingError> {
    if n == 0 {
        return Err(CountingError::Domain);
    }
    Ok(phi(n))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn add(a: u128, b: u128) -> u128 {
    a.checked_add(b).expect("count overflows u128")
}

fn mul(a: u128, b: u128) -> u128 {
    a.checked_mul(b).expect("count overflows u128")
}

/// Number of balanced words of length `n`:
/// 1 + sum over i = 1..=n of (n - i + 1) * phi(i).
pub fn lipatov_balanced(n: u64) -> u128 {
    let mut total: u128 = 1;
    for i in 1..=n {
        total = add(total, mul((n - i + 1) as u128, phi(i) as u128));
    }
    total
}

/// Closed-form count of analytic tangent words of length `n`:
/// 1 + n + a double sum whose inner summand is 2j - phi(j) minus 1 as
/// printed or minus 2 in the candidate variant.
pub fn analytic_closed_form(n: u64, variant: ClosedFormVariant) -> u128 {
    let c: u64 = match variant {
        ClosedFormVariant::PaperAsPrinted => 1,
        ClosedFormVariant::GeometricCandidate => 2,
    };
    let mut total = add(1, n as u128);
    let mut inner: u128 = 0;
    for i in 1..=n {
        if i >= 2 {
            inner = add(inner, (2 * i - phi(i) - c) as u128);
        }
        total = add(total, inner);
    }
    total
}

/// Closed-form count of tangent words of length `n`: 1 + n plus half a
/// divisor-weighted power sum. As printed the weight is phi(j); the
/// candidate variant weighs by phi(d) for each divisor d of j.
pub fn tangent_closed_form(n: u64, variant: ClosedFormVariant) -> Result<u128, CountingError> {
    let mut triple: u128 = 0;
    let mut inner: u128 = 0;
    for i in 1..=n {
        if i >= 2 {
            let j = i;
            let mut term: u128 = 0;
            for d in divisors(j) {
                if d == 1 {
                    continue;
                }
                let weight = match variant {
                    ClosedFormVariant::PaperAsPrinted => phi(j),
                    ClosedFormVariant::GeometricCandidate => phi(d),
                };
                term = add(term, mul(weight as u128, 1u128 << (j / d)));
            }
            inner = add(inner, term);
        }
        triple = add(triple, inner);
    }
    if triple % 2 != 0 {
        return Err(CountingError::ParityViolation { n });
    }
    Ok(add(add(1, n as u128), triple / 2))
}

/// Candidate count of strong bispecial tangent words of length `n`: each
/// divisor d >= 2 of n + 2 contributes phi(d) segment directions with
/// 2^((n+2)/d - 1) slalom choices.
pub fn candidate_sb_tangent(n: u64) -> u128 {
    let m = n + 2;
    let mut total: u128 = 0;
    for d in divisors(m) {
        if d >= 2 {
            total = add(total, mul(phi(d) as u128, 1u128 << (m / d - 1)));
        }
    }
    total
}

/// Candidate count of strong bispecial analytic words of length `n`:
/// phi(n+2) primitive segment codings plus two bendings for every
/// non-coprime direction pair.
pub fn candidate_sb_analytic(n: u64) -> u128 {
    let m = n + 2;
    let mut non_coprime: u128 = 0;
    for p in 1..m {
        let q = m - p;
        if gcd(p, q) > 1 {
            non_coprime += 1;
        }
    }
    add(phi(m) as u128, mul(2, non_coprime))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rebuilds p_n from strong-bispecial counts, assuming no weak bispecials:
/// p_n = 1 + n + sum over i < n of the partial sums of `sb`.
pub fn complexity_from_sb(sb: &[u128], n: usize) -> Result<u128, CountingError> {
    let needed = n.saturating_sub(1);
    if sb.len() < needed {
        return Err(CountingError::InsufficientData { needed, got: sb.len() });
    }
    let mut total = add(1, n as u128);
    let mut inner: u128 = 0;
    for i in 1..n {
        inner = add(inner, sb[i - 1]);
        total = add(total, inner);
    }
    Ok(total)
}

/// Agreement flags for one reconciliation row; `true` means the cell
/// matches the enumerated value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowFlags {
    pub paper_analytic: bool,
    pub paper_tangent: bool,
    pub cand_analytic: bool,
    pub cand_tangent: bool,
    pub cand_sb_analytic: bool,
    pub cand_sb_tangent: bool,
}

/// One length of the enumeration-versus-formula comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconciliationRow {
    pub n: u64,
    pub enum_analytic: u64,
    pub enum_tangent: u64,
    pub paper_analytic: u64,
    pub paper_tangent: u64,
    pub cand_analytic: u64,
    pub cand_tangent: u64,
    pub enum_sb_analytic: u64,
    pub enum_sb_tangent: u64,
    pub cand_sb_analytic: u64,
    pub cand_sb_tangent: u64,
    pub flags: RowFlags,
}

/// Full table comparing enumerated complexity and strong-bispecial counts
/// with both closed-form variants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconciliationReport {
    pub rows: Vec<ReconciliationRow>,
}

const CSV_HEADER: &str = "n,enum_analytic,enum_tangent,paper_analytic,paper_tangent,\
cand_analytic,cand_tangent,enum_sb_analytic,enum_sb_tangent,cand_sb_analytic,\
cand_sb_tangent,flags";

impl ReconciliationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                row.n,
                row.enum_analytic,
                row.enum_tangent,
                row.paper_analytic,
                row.paper_tangent,
                row.cand_analytic,
                row.cand_tangent,
                row.enum_sb_analytic,
                row.enum_sb_tangent,
                row.cand_sb_analytic,
                row.cand_sb_tangent,
                row.mismatch_names().join(";"),
            ));
        }
        out
    }

    /// One line per mismatching closed-form cell.
    pub fn mismatch_summaries(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for row in &self.rows {
            for name in row.mismatch_names() {
                let (got, want) = match name {
                    "paper_analytic" => (row.paper_analytic, row.enum_analytic),
                    "paper_tangent" => (row.paper_tangent, row.enum_tangent),
                    "cand_analytic" => (row.cand_analytic, row.enum_analytic),
                    "cand_tangent" => (row.cand_tangent, row.enum_tangent),
                    "cand_sb_analytic" => (row.cand_sb_analytic, row.enum_sb_analytic),
                    "cand_sb_tangent" => (row.cand_sb_tangent, row.enum_sb_tangent),
                    _ => unreachable!(),
                };
                lines.push(format!("n={}: {} = {} but enumeration gives {}", row.n, name, got, want));
            }
        }
        lines
    }
}

impl ReconciliationRow {
    fn mismatch_names(&self) -> Vec<&'static str> {
        let f = &self.flags;
        [
            ("paper_analytic", f.paper_analytic),
            ("paper_tangent", f.paper_tangent),
            ("cand_analytic", f.cand_analytic),
            ("cand_tangent", f.cand_tangent),
            ("cand_sb_analytic", f.cand_sb_analytic),
            ("cand_sb_tangent", f.cand_sb_tangent),
        ]
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| *name)
        .collect()
    }
}

fn narrow(value: u128) -> u64 {
    u64::try_from(value).expect("report value fits in 64 bits")
}

/// Builds the reconciliation table for lengths 0..=n_max. Closed-form
/// mismatches are recorded in the flags, never raised as errors.
pub fn reconcile(lab: &LanguageLab, n_max: usize) -> Result<ReconciliationReport, LabError> {
    let analytic = lab.complexity_profile(Language::Analytic, n_max)?;
    let tangent = lab.complexity_profile(Language::Tangent, n_max)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let census_analytic = lab.bispecial_census(Language::Analytic, n)?;
        let census_tangent = lab.bispecial_census(Language::Tangent, n)?;
        let enum_analytic = analytic.p[n];
        let enum_tangent = tangent.p[n];
        let paper_analytic = narrow(analytic_closed_form(n as u64, ClosedFormVariant::PaperAsPrinted));
        let cand_analytic = narrow(analytic_closed_form(n as u64, ClosedFormVariant::GeometricCandidate));
        let paper_tangent = narrow(
            tangent_closed_form(n as u64, ClosedFormVariant::PaperAsPrinted)
                .expect("printed tangent form has even triple sum"),
        );
        let cand_tangent = narrow(
            tangent_closed_form(n as u64, ClosedFormVariant::GeometricCandidate)
                .expect("candidate tangent form has even triple sum"),
        );
        let enum_sb_analytic = census_analytic.sb() as u64;
        let enum_sb_tangent = census_tangent.sb() as u64;
        let cand_sb_analytic = narrow(candidate_sb_analytic(n as u64));
        let cand_sb_tangent = narrow(candidate_sb_tangent(n as u64));
        let flags = RowFlags {
            paper_analytic: paper_analytic == enum_analytic,
            paper_tangent: paper_tangent == enum_tangent,
            cand_analytic: cand_analytic == enum_analytic,
            cand_tangent: cand_tangent == enum_tangent,
            cand_sb_analytic: cand_sb_analytic == enum_sb_analytic,
            cand_sb_tangent: cand_sb_tangent == enum_sb_tangent,
        };
        rows.push(ReconciliationRow {
            n: n as u64,
            enum_analytic,
            enum_tangent,
            paper_analytic,
            paper_tangent,
            cand_analytic,
            cand_tangent,
            enum_sb_analytic,
            enum_sb_tangent,
            cand_sb_analytic,
            cand_sb_tangent,
            flags,
        });
    }
    Ok(ReconciliationReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_values() {
        assert_eq!(totient(0), Err(CountingError::Domain));
        let values: Vec<u64> = (1..=12).map(|n| totient(n).unwrap()).collect();
        assert_eq!(values, [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn totient_is_multiplicative_on_coprime_pairs() {
        for a in 1..=60u64 {
            for b in 1..=60u64 {
                if gcd(a, b) == 1 {
                    assert_eq!(phi(a * b), phi(a) * phi(b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn totients_of_divisors_sum_to_n() {
        for n in 1..=1000u64 {
            let sum: u64 = divisors(n).iter().map(|&d| phi(d)).sum();
            assert_eq!(sum, n, "{n}");
        }
    }

    #[test]
    fn divisors_are_sorted_and_complete() {
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), [1, 7, 49]);
    }

    #[test]
    fn lipatov_values() {
        assert_eq!(lipatov_balanced(0), 1);
        assert_eq!(lipatov_balanced(1), 2);
        assert_eq!(lipatov_balanced(4), 14);
        assert_eq!(lipatov_balanced(10), 136);
    }

    #[test]
    fn analytic_closed_form_values() {
        use ClosedFormVariant::*;
        assert_eq!(analytic_closed_form(0, PaperAsPrinted), 1);
        assert_eq!(analytic_closed_form(2, PaperAsPrinted), 5);
        assert_eq!(analytic_closed_form(2, GeometricCandidate), 4);
        assert_eq!(analytic_closed_form(4, GeometricCandidate), 16);
        assert_eq!(analytic_closed_form(4, PaperAsPrinted), 22);
        assert_eq!(analytic_closed_form(5, GeometricCandidate), 28);
    }

    #[test]
    fn tangent_closed_form_values() {
        use ClosedFormVariant::*;
        assert_eq!(tangent_closed_form(0, PaperAsPrinted), Ok(1));
        assert_eq!(tangent_closed_form(4, PaperAsPrinted), Ok(18));
        assert_eq!(tangent_closed_form(4, GeometricCandidate), Ok(16));
        assert_eq!(tangent_closed_form(5, GeometricCandidate), Ok(28));
        assert_eq!(tangent_closed_form(6, GeometricCandidate), Ok(50));
    }

    #[test]
    fn tangent_closed_form_never_hits_the_parity_guard() {
        for n in 0..=60 {
            assert!(tangent_closed_form(n, ClosedFormVariant::GeometricCandidate).is_ok());
            assert!(tangent_closed_form(n, ClosedFormVariant::PaperAsPrinted).is_ok());
        }
    }

    #[test]
    fn candidate_sb_values() {
        let tangent: Vec<u128> = (0..=10).map(candidate_sb_tangent).collect();
        assert_eq!(tangent, [1, 2, 4, 4, 10, 6, 16, 14, 28, 10, 64]);
        let analytic: Vec<u128> = (0..=10).map(candidate_sb_analytic).collect();
        assert_eq!(analytic, [1, 2, 4, 4, 8, 6, 10, 10, 14, 10, 18]);
    }

    #[test]
    fn complexity_from_sb_examples() {
        assert_eq!(complexity_from_sb(&[], 0), Ok(1));
        assert_eq!(complexity_from_sb(&[], 1), Ok(2));
        let sb: Vec<u128> = (0..=3).map(candidate_sb_tangent).collect();
        assert_eq!(complexity_from_sb(&sb, 4), Ok(16));
        assert_eq!(
            complexity_from_sb(&sb, 6),
            Err(CountingError::InsufficientData { needed: 5, got: 4 })
        );
    }

    #[test]
    fn candidate_forms_agree_with_rebuilt_complexity() {
        // The candidate double/triple sums are algebraically the same as
        // summing candidate strong-bispecial counts, for both languages.
        let sb_tangent: Vec<u128> = (0..=40).map(candidate_sb_tangent).collect();
        let sb_analytic: Vec<u128> = (0..=40).map(candidate_sb_analytic).collect();
        for n in 0..=40u64 {
            assert_eq!(
                tangent_closed_form(n, ClosedFormVariant::GeometricCandidate).unwrap(),
                complexity_from_sb(&sb_tangent, n as usize).unwrap(),
                "tangent n = {n}"
            );
            assert_eq!(
                analytic_closed_form(n, ClosedFormVariant::GeometricCandidate),
                complexity_from_sb(&sb_analytic, n as usize).unwrap(),
                "analytic n = {n}"
            );
        }
    }

    #[test]
    fn reconcile_flags_the_printed_formulas_only() {
        let lab = LanguageLab::new();
        let report = reconcile(&lab, 6).unwrap();
        assert_eq!(report.rows.len(), 7);
        for row in &report.rows {
            assert!(row.flags.cand_analytic, "n = {}", row.n);
            assert!(row.flags.cand_tangent, "n = {}", row.n);
            assert!(row.flags.cand_sb_analytic, "n = {}", row.n);
            assert!(row.flags.cand_sb_tangent, "n = {}", row.n);
        }
        let row2 = &report.rows[2];
        assert_eq!(row2.paper_analytic, 5);
        assert_eq!(row2.enum_analytic, 4);
        assert!(!row2.flags.paper_analytic);
        let row4 = &report.rows[4];
        assert_eq!(row4.paper_tangent, 18);
        assert_eq!(row4.enum_tangent, 16);
        assert!(!row4.flags.paper_tangent);
    }

    #[test]
    fn reconcile_respects_the_cap() {
        let lab = LanguageLab::with_cap(6);
        assert!(matches!(
            reconcile(&lab, 5),
            Err(LabError::CapExceeded { requested: 7, cap: 6 })
        ));
        assert!(reconcile(&lab, 4).is_ok());
    }

    #[test]
    fn csv_report_shape() {
        let lab = LanguageLab::new();
        let report = reconcile(&lab, 3).unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].starts_with("n,enum_analytic,"));
        assert!(lines[1].starts_with("0,1,1,"));
        for line in &lines[1..] {
            assert_eq!(line.matches(',').count(), 11);
        }
    }

    #[test]
    fn mismatch_summaries_name_the_cells() {
        let lab = LanguageLab::new();
        let report = reconcile(&lab, 4).unwrap();
        let lines = report.mismatch_summaries();
        assert!(lines.iter().any(|l| l.contains("paper_analytic")));
        assert!(lines.iter().any(|l| l.contains("paper_tangent")));
        assert!(lines.iter().all(|l| !l.contains("cand_")));
    }
}
