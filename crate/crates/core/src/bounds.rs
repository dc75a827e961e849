//! Closed-form size bounds and comparisons: the guaranteed-size lower
//! bound, its optimization over the free parameters, the Singleton cap,
//! Hasse-Weil and N_q(1), the three propagation rules, exact comparison
//! predicates, and the three shipped comparison tables.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::zeta::LPolynomial;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("no admissible m: domain [{lo}, {hi}] is empty")]
    EmptyDomain { lo: i64, hi: i64 },
    #[error("restriction needs r < s, got r = {r}, s = {s}")]
    BadAlphabets { r: u64, s: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("bad best-known dataset line: {0}")]
    BadDataset(String),
    #[error("no best-known entry for alphabet {alphabet}, n = {n}, d = {d}")]
    MissingEntry { alphabet: u64, n: u32, d: u32 },
}

/// 1 + sum_{i=0}^s (q-1)^i q^{m-g+1} A_i.
pub fn thm33_lower(q: u32, g: u32, a_counts: &[BigInt], m: i64, s: i64) -> BigInt {
    assert!(m >= g as i64 - 1, "need m >= g-1");
    assert!((s as usize) < a_counts.len(), "need A_0..A_s");
    let qb = BigInt::from(q);
    let mut total = BigInt::one();
    for i in 0..=s as usize {
        total += (&qb - BigInt::one()).pow(i as u32)
            * qb.pow((m - g as i64 + 1) as u32)
            * &a_counts[i];
    }
    total
}

/// Optimization domain for the free parameters (m, s).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// m >= max(0, 2g-1) as the size guarantee requires; s unbounded.
    Strict,
    /// m >= max(0, g-1) and s <= 2: the empirical rule reproducing
    /// every published table cell, including rows below the strict
    /// domain. Divergences from strict mode are flagged, never merged.
    Paper,
}

impl fmt::Display for Mode {
    fn fmt(&self, out: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Mode::Strict => write!(out, "strict"),
            Mode::Paper => write!(out, "paper"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "strict" => Ok(Mode::Strict),
            "paper" => Ok(Mode::Paper),
            other => Err(format!("unknown mode '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Optimum {
    pub m: i64,
    pub s: i64,
    pub size: BigInt,
}

/// Maximize the size lower bound over m in the mode's domain with the
/// maximal admissible s per m (terms are nonnegative, so larger s never
/// hurts; paper mode additionally caps s at 2). Ties break to the
/// smallest m.
pub fn optimize(lp: &LPolynomial, n: u32, d: u32, mode: Mode) -> Result<Optimum, BoundsError> {
    let g = lp.g as i64;
    let lo = match mode {
        Mode::Strict => (2 * g - 1).max(0),
        Mode::Paper => (g - 1).max(0),
    };
    let hi = n as i64 - d as i64;
    if lo > hi {
        return Err(BoundsError::EmptyDomain { lo, hi });
    }
    let s_max = ((hi - lo) / 2).max(0) as usize;
    let a_counts = lp.effective_counts(s_max);
    let mut best: Option<Optimum> = None;
    for m in lo..=hi {
        let mut s = (hi - m) / 2;
        if mode == Mode::Paper {
            s = s.min(2);
        }
        let size = thm33_lower(lp.q, lp.g, &a_counts, m, s);
        if best.as_ref().is_none_or(|b| size > b.size) {
            best = Some(Optimum { m, s, size });
        }
    }
    Ok(best.unwrap())
}

/// alphabet^{n-d+1}.
pub fn singleton_cap(alphabet: u64, n: u32, d: u32) -> BigInt {
    assert!(d >= 1 && d <= n);
    BigInt::from(alphabet).pow(n - d + 1)
}

/// Alphabet extension preserves both parameters.
pub fn rule_extension(m: BigInt, d: u32) -> (BigInt, u32) {
    (m, d)
}

/// Alphabet restriction: a code of size M over s symbols restricts to
/// at least ceil(M r^n / s^n) words over r symbols, same distance.
pub fn rule_restriction(m: &BigInt, r: u64, s: u64, n: u32) -> Result<BigInt, BoundsError> {
    if r >= s || r < 2 {
        return Err(BoundsError::BadAlphabets { r, s });
    }
    let num = m * BigInt::from(r).pow(n);
    let den = BigInt::from(s).pow(n);
    Ok(num.div_ceil(&den))
}

/// Alphabet multiplication: sizes multiply, distances take the minimum.
pub fn rule_multiplication(m1: &BigInt, m2: &BigInt, d1: u32, d2: u32) -> (BigInt, u32) {
    (m1 * m2, d1.min(d2))
}

/// (p, a) with x = p^a, if x is a prime power.
pub fn prime_power(x: u64) -> Option<(u64, u32)> {
    if x < 2 {
        return None;
    }
    let mut p = 0;
    let mut rem = x;
    for cand in 2.. {
        if cand * cand > rem {
            p = rem;
            break;
        }
        if rem % cand == 0 {
            p = cand;
            break;
        }
    }
    let mut a = 0;
    while rem % p == 0 {
        rem /= p;
        a += 1;
    }
    if rem == 1 { Some((p, a)) } else { None }
}

/// [q+1-floor(2g sqrt q), q+1+floor(2g sqrt q)].
pub fn hasse_weil(q: u64, g: u32) -> Result<(i64, i64), BoundsError> {
    prime_power(q).ok_or(BoundsError::NotPrimePower(q))?;
    let radius = (4 * (g as u64).pow(2) * q).isqrt() as i64;
    let center = q as i64 + 1;
    Ok((center - radius, center + radius))
}

/// Maximum number of rational places in genus 1: q+1+floor(2 sqrt q),
/// one less when q = p^a is exceptional (a >= 3 odd, p | floor(2 sqrt q)).
pub fn nq1(q: u64) -> Result<u64, BoundsError> {
    let (p, a) = prime_power(q).ok_or(BoundsError::NotPrimePower(q))?;
    let floor2rt = (4 * q).isqrt();
    let exceptional = a >= 3 && a % 2 == 1 && floor2rt % p == 0;
    Ok(if exceptional {
        q + floor2rt
    } else {
        q + 1 + floor2rt
    })
}

/// Least prime power >= x.
pub fn least_prime_power_at_least(x: u64) -> u64 {
    (x.max(2)..).find(|&c| prime_power(c).is_some()).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Applicability {
    Holds,
    Fails,
    /// The hypothesis is an exact equality: the published threshold is
    /// attained but not exceeded.
    Boundary,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct PredicateOutcome {
    pub hypothesis: Applicability,
    /// Conclusion verdict, checked whenever the hypothesis holds.
    pub conclusion: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    /// Elliptic vs alphabet extension: size > q^(n-d).
    pub extension_elliptic: PredicateOutcome,
    /// Elliptic vs alphabet restriction: size > (q+1)^n / (q+2)^d.
    pub restriction_elliptic: PredicateOutcome,
    /// Maximal genus g vs extension: size > q^(n-g+1-d).
    pub extension_maximal: PredicateOutcome,
    /// Maximal genus g vs restriction: size > (q+1)^n / (q+2)^(d+g-1).
    pub restriction_maximal: PredicateOutcome,
    /// Least prime power q+a with q+a >= n-1, for MDS restriction.
    pub suggested_restriction_alphabet: u64,
}

/// The restriction hypotheses are log-inequalities
/// d' >= n ln(1+1/q)/ln(1+2/q) with d' = d (elliptic) or d+g-1; both
/// are decided exactly as (q+2)^d' q^n vs (q+1)^n q^d'.
fn log_threshold(q: u32, n: u32, dprime: i64) -> Applicability {
    if dprime < 0 {
        return Applicability::Fails;
    }
    let q = BigInt::from(q);
    let lhs = (&q + BigInt::from(2)).pow(dprime as u32) * q.pow(n);
    let rhs = (&q + BigInt::one()).pow(n) * q.pow(dprime as u32);
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => Applicability::Holds,
        std::cmp::Ordering::Equal => Applicability::Boundary,
        std::cmp::Ordering::Less => Applicability::Fails,
    }
}

/// Evaluate the four published comparison predicates for the curve
/// behind `lp` at parameters (n, d), with exact integer arithmetic.
pub fn comparison_predicates(lp: &LPolynomial, n: u32, d: u32) -> ComparisonReport {
    let q = lp.q;
    let g = lp.g;
    let qb = BigInt::from(q);
    let n_places: BigInt = lp.point_count(1);
    let lower = optimize(lp, n, d, Mode::Strict).map(|o| o.size);

    let check = |hyp: Applicability, rhs: BigInt, what: &str| -> PredicateOutcome {
        let conclusion = match (&hyp, &lower) {
            (Applicability::Holds | Applicability::Boundary, Ok(size)) => Some(*size > rhs),
            _ => None,
        };
        PredicateOutcome {
            hypothesis: hyp,
            conclusion,
            detail: format!("{what}: threshold {rhs}"),
        }
    };

    // elliptic statements need g = 1 and q+3 <= n <= N
    let ext_ell = if g == 1
        && BigInt::from(q + 3) <= n_places.clone().min(BigInt::from(n))
        && BigInt::from(n) <= n_places
        && d >= 2
        && d <= n - 1
    {
        check(
            Applicability::Holds,
            qb.pow(n - d),
            "size vs extension of elliptic codes",
        )
    } else {
        PredicateOutcome {
            hypothesis: Applicability::NotApplicable,
            conclusion: None,
            detail: "needs genus 1 and q+3 <= n <= N".into(),
        }
    };
    let restr_ell = if g == 1 && BigInt::from(q + 1) <= n_places && n as u64 >= q as u64 + 1 {
        let rhs = (&qb + BigInt::one()).pow(n).div_ceil(&(&qb + BigInt::from(2)).pow(d));
        check(
            log_threshold(q, n, d as i64),
            rhs,
            "size vs restriction of elliptic codes",
        )
    } else {
        PredicateOutcome {
            hypothesis: Applicability::NotApplicable,
            conclusion: None,
            detail: "needs genus 1 and n >= q+1".into(),
        }
    };
    let in_maximal_range = n as u64 >= q as u64 + 1 && BigInt::from(n) <= n_places;
    let ext_max = if in_maximal_range && d >= 2 && d as i64 <= n as i64 - g as i64 {
        check(
            Applicability::Holds,
            qb.pow((n as i64 - g as i64 + 1 - d as i64) as u32),
            "size vs extension of maximal-curve codes",
        )
    } else {
        PredicateOutcome {
            hypothesis: Applicability::NotApplicable,
            conclusion: None,
            detail: "needs q+1 <= n <= N and 2 <= d <= n-g".into(),
        }
    };
    let restr_max = if in_maximal_range {
        let dprime = d as i64 + g as i64 - 1;
        let rhs = (&qb + BigInt::one())
            .pow(n)
            .div_ceil(&(&qb + BigInt::from(2)).pow(dprime as u32));
        check(
            log_threshold(q, n, dprime),
            rhs,
            "size vs restriction of maximal-curve codes",
        )
    } else {
        PredicateOutcome {
            hypothesis: Applicability::NotApplicable,
            conclusion: None,
            detail: "needs q+1 <= n <= N".into(),
        }
    };
    ComparisonReport {
        extension_elliptic: ext_ell,
        restriction_elliptic: restr_ell,
        extension_maximal: ext_max,
        restriction_maximal: restr_max,
        suggested_restriction_alphabet: least_prime_power_at_least(n as u64 - 1),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BestKnownEntry {
    pub alphabet: u64,
    pub n: u32,
    pub d: u32,
    pub size: BigInt,
    pub note: String,
}

/// Shipped component-code sizes used by the comparison tables.
pub fn best_known() -> Result<Vec<BestKnownEntry>, BoundsError> {
    let raw = include_str!("../resources/bestknown.tsv");
    let mut out = Vec::new();
    for line in raw.lines() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || BoundsError::BadDataset(line.into());
        let mut cols = line.split('\t');
        let mut next = || cols.next().ok_or_else(bad);
        let entry = BestKnownEntry {
            alphabet: next()?.parse().map_err(|_| bad())?,
            n: next()?.parse().map_err(|_| bad())?,
            d: next()?.parse().map_err(|_| bad())?,
            size: BigInt::from_str(next()?).map_err(|_| bad())?,
            note: next()?.into(),
        };
        if entry.size > singleton_cap(entry.alphabet, entry.n, entry.d) {
            return Err(BoundsError::BadDataset(format!(
                "entry violates the Singleton cap: {line}"
            )));
        }
        out.push(entry);
    }
    Ok(out)
}

fn best_known_size(
    entries: &[BestKnownEntry],
    alphabet: u64,
    n: u32,
    d: u32,
) -> Result<BigInt, BoundsError> {
    entries
        .iter()
        .find(|e| e.alphabet == alphabet && e.n == n && e.d == d)
        .map(|e| e.size.clone())
        .ok_or(BoundsError::MissingEntry { alphabet, n, d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableId {
    I,
    II,
    III,
}

impl FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<TableId, String> {
        match s {
            "I" | "1" | "i" => Ok(TableId::I),
            "II" | "2" | "ii" => Ok(TableId::II),
            "III" | "3" | "iii" => Ok(TableId::III),
            other => Err(format!("unknown table '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub d: u32,
    pub extension: BigInt,
    pub restriction: BigInt,
    /// Table I only.
    pub multiplication: Option<BigInt>,
    pub ours: BigInt,
    pub ours_m: i64,
    pub ours_s: i64,
    pub strict: BigInt,
    pub strict_m: i64,
    pub strict_s: i64,
    /// Paper-mode and strict-mode maxima differ for this row.
    pub divergent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableSpec {
    pub id: TableId,
    pub q: u32,
    pub g: u32,
    pub n: u32,
    /// Code alphabet q+1.
    pub alphabet: u64,
    pub d_range: (u32, u32),
}

pub fn table_spec(id: TableId) -> TableSpec {
    match id {
        TableId::I => TableSpec { id, q: 5, g: 1, n: 10, alphabet: 6, d_range: (4, 8) },
        TableId::II => TableSpec { id, q: 9, g: 1, n: 16, alphabet: 10, d_range: (7, 14) },
        TableId::III => TableSpec { id, q: 9, g: 3, n: 28, alphabet: 10, d_range: (6, 22) },
    }
}

fn table_lpoly(id: TableId) -> LPolynomial {
    match id {
        TableId::I => LPolynomial::elliptic(5, 10).unwrap(),
        TableId::II => LPolynomial::elliptic(9, 16).unwrap(),
        TableId::III => LPolynomial::maximal(9, 3).unwrap(),
    }
}

/// Reproduce a comparison table with exact integers: extension column
/// q^(n-g+1-d), restriction column from the shipped component codes,
/// multiplication column (Table I), our paper-mode optimum, and the
/// strict-mode optimum with divergences flagged.
pub fn table_preset(id: TableId) -> Result<Vec<TableRow>, BoundsError> {
    let spec = table_spec(id);
    let lp = table_lpoly(id);
    let entries = best_known()?;
    let mut rows = Vec::new();
    for d in spec.d_range.0..=spec.d_range.1 {
        let extension = BigInt::from(spec.q).pow(spec.n - spec.g + 1 - d);
        let component = best_known_size(&entries, spec.alphabet + 1, spec.n, d)?;
        let restriction =
            rule_restriction(&component, spec.alphabet, spec.alphabet + 1, spec.n)?;
        let multiplication = match id {
            TableId::I => Some(if d == 5 {
                best_known_size(&entries, 6, 10, 5)?
            } else {
                let c2 = best_known_size(&entries, 2, 10, d)?;
                let c3 = best_known_size(&entries, 3, 10, d)?;
                rule_multiplication(&c2, &c3, d, d).0
            }),
            _ => None,
        };
        let ours = optimize(&lp, spec.n, d, Mode::Paper)?;
        let strict = optimize(&lp, spec.n, d, Mode::Strict)?;
        rows.push(TableRow {
            d,
            extension,
            restriction,
            multiplication,
            divergent: ours.size != strict.size,
            ours: ours.size,
            ours_m: ours.m,
            ours_s: ours.s,
            strict: strict.size,
            strict_m: strict.m,
            strict_s: strict.s,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn big(s: &str) -> BigInt {
        BigInt::from_str(s).unwrap()
    }

    #[test]
    fn lower_bound_examples() {
        let e5 = LPolynomial::elliptic(5, 10).unwrap();
        assert_eq!(
            thm33_lower(5, 1, &e5.effective_counts(1), 4, 1),
            BigInt::from(25626)
        );
        let h9 = LPolynomial::maximal(9, 3).unwrap();
        assert_eq!(
            thm33_lower(9, 3, &h9.effective_counts(2), 2, 2),
            BigInt::from(26210)
        );
        // m = g, s = 0 collapses to 1 + q
        assert_eq!(
            thm33_lower(9, 3, &h9.effective_counts(0), 3, 0),
            BigInt::from(10)
        );
        assert_eq!(
            thm33_lower(5, 0, &LPolynomial::rational(5).effective_counts(0), 0, 0),
            BigInt::from(6)
        );
    }

    #[test]
    fn lower_bound_is_monotone() {
        let lp = LPolynomial::maximal(9, 3).unwrap();
        let a = lp.effective_counts(4);
        for m in 2..8 {
            for s in 0..4i64 {
                let here = thm33_lower(9, 3, &a, m, s);
                assert!(thm33_lower(9, 3, &a, m + 1, s) >= here);
                assert!(thm33_lower(9, 3, &a, m, s + 1) >= here);
            }
        }
    }

    #[test]
    fn optimize_matches_published_values() {
        let e5 = LPolynomial::elliptic(5, 10).unwrap();
        for mode in [Mode::Strict, Mode::Paper] {
            let o = optimize(&e5, 10, 7, mode).unwrap();
            assert_eq!((o.m, o.s, o.size), (1, 1, BigInt::from(206)));
        }
        let o = optimize(&e5, 10, 8, Mode::Paper).unwrap();
        assert_eq!((o.m, o.s, o.size), (0, 1, BigInt::from(42)));
        let o = optimize(&e5, 10, 8, Mode::Strict).unwrap();
        assert_eq!((o.m, o.s, o.size), (2, 0, BigInt::from(26)));

        let h9 = LPolynomial::maximal(9, 3).unwrap();
        let o = optimize(&h9, 28, 6, Mode::Paper).unwrap();
        assert_eq!(o.size, BigInt::from(9).pow(16) * 26209 + 1);
        let o = optimize(&h9, 28, 6, Mode::Strict).unwrap();
        assert_eq!(
            (o.m, o.s, o.size),
            (16, 3, BigInt::from(9).pow(14) * 2252385 + 1)
        );
        assert!(matches!(
            optimize(&h9, 28, 24, Mode::Strict),
            Err(BoundsError::EmptyDomain { lo: 5, hi: 4 })
        ));
    }

    #[test]
    fn strict_optimum_agrees_with_exhaustive_scan() {
        for (lp, n) in [
            (LPolynomial::elliptic(5, 10).unwrap(), 10u32),
            (LPolynomial::maximal(9, 3).unwrap(), 28),
        ] {
            let g = lp.g as i64;
            for d in 2..n - 2 * lp.g {
                let Ok(o) = optimize(&lp, n, d, Mode::Strict) else {
                    continue;
                };
                let a = lp.effective_counts(((n as i64 - d as i64) / 2).max(0) as usize);
                let mut best = BigInt::zero();
                for m in (2 * g - 1).max(0)..=(n as i64 - d as i64) {
                    for s in 0..=(n as i64 - d as i64 - m) / 2 {
                        best = best.max(thm33_lower(lp.q, lp.g, &a, m, s));
                    }
                }
                assert_eq!(o.size, best, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn singleton_and_propagation_rules() {
        assert_eq!(singleton_cap(6, 10, 6), BigInt::from(7776));
        assert_eq!(singleton_cap(10, 16, 12), BigInt::from(100000));
        assert_eq!(singleton_cap(7, 9, 9), BigInt::from(7));
        assert_eq!(
            rule_extension(BigInt::from(125), 4),
            (BigInt::from(125), 4)
        );
        assert_eq!(
            rule_restriction(&BigInt::from(7).pow(6), 6, 7, 10).unwrap(),
            BigInt::from(25184)
        );
        assert_eq!(
            rule_restriction(&BigInt::from(11).pow(9), 10, 11, 16).unwrap(),
            BigInt::from(513158119)
        );
        assert!(matches!(
            rule_restriction(&BigInt::one(), 7, 6, 10),
            Err(BoundsError::BadAlphabets { r: 7, s: 6 })
        ));
        assert_eq!(
            rule_multiplication(&BigInt::from(32), &BigInt::from(729), 4, 4),
            (BigInt::from(23328), 4)
        );
    }

    #[test]
    fn restriction_respects_singleton_up_to_rounding() {
        for d in 2..=9 {
            let restricted =
                rule_restriction(&singleton_cap(7, 10, d), 6, 7, 10).unwrap();
            assert!(restricted <= singleton_cap(6, 10, d) + 1u32);
        }
    }

    #[test]
    fn point_count_bounds() {
        assert_eq!(hasse_weil(5, 1).unwrap(), (2, 10));
        assert_eq!(hasse_weil(9, 3).unwrap(), (-8, 28));
        assert!(matches!(hasse_weil(6, 1), Err(BoundsError::NotPrimePower(6))));
        assert_eq!(nq1(5).unwrap(), 10);
        assert_eq!(nq1(9).unwrap(), 16);
        assert_eq!(nq1(128).unwrap(), 150); // 2^7 is exceptional
        for q in 2u64..=128 {
            if prime_power(q).is_none() {
                continue;
            }
            let (lo, hi) = hasse_weil(q, 1).unwrap();
            let n = nq1(q).unwrap() as i64;
            assert!(lo <= n && n <= hi, "q = {q}");
        }
        assert_eq!(least_prime_power_at_least(15), 16);
        assert_eq!(least_prime_power_at_least(9), 9);
    }

    #[test]
    fn comparison_predicates_on_published_cases() {
        let e5 = LPolynomial::elliptic(5, 10).unwrap();
        let report = comparison_predicates(&e5, 10, 6);
        assert_eq!(report.extension_elliptic.hypothesis, Applicability::Holds);
        assert_eq!(report.extension_elliptic.conclusion, Some(true));
        assert_eq!(report.extension_maximal.conclusion, Some(true));

        let e9 = LPolynomial::elliptic(9, 16).unwrap();
        let report = comparison_predicates(&e9, 16, 10);
        // 10 >= 16 ln(10/9)/ln(11/9) ~ 8.4
        assert_eq!(report.restriction_elliptic.hypothesis, Applicability::Holds);
        assert_eq!(report.restriction_elliptic.conclusion, Some(true));
        let report = comparison_predicates(&e9, 16, 8);
        assert_eq!(report.restriction_elliptic.hypothesis, Applicability::Fails);
        assert_eq!(report.suggested_restriction_alphabet, 16);

        // genus 0: the maximal-curve threshold reduces to q^(n+1-d)
        let r5 = LPolynomial::rational(5);
        let report = comparison_predicates(&r5, 6, 3);
        assert!(report.extension_maximal.detail.contains(&format!(
            "{}",
            BigInt::from(5).pow(4)
        )));
        assert_eq!(report.extension_maximal.conclusion, Some(true));
    }

    #[test]
    fn dataset_loads_and_respects_singleton() {
        let entries = best_known().unwrap();
        assert!(entries.len() > 30);
        assert_eq!(
            best_known_size(&entries, 7, 10, 4).unwrap(),
            BigInt::from(117649)
        );
        assert!(matches!(
            best_known_size(&entries, 13, 10, 4),
            Err(BoundsError::MissingEntry { alphabet: 13, .. })
        ));
    }

    #[test]
    fn table_one_cells() {
        let rows = table_preset(TableId::I).unwrap();
        let expected: Vec<(u32, i64, i64, i64, i64)> = vec![
            (4, 15625, 25184, 23328, 25626),
            (5, 3125, 3598, 1000, 5126),
            (6, 625, 514, 324, 1026),
            (7, 125, 74, 18, 206),
            (8, 25, 11, 6, 42),
        ];
        assert_eq!(rows.len(), expected.len());
        for (row, (d, ext, restr, mult, ours)) in rows.iter().zip(expected) {
            assert_eq!(row.d, d);
            assert_eq!(row.extension, BigInt::from(ext));
            assert_eq!(row.restriction, BigInt::from(restr));
            assert_eq!(row.multiplication, Some(BigInt::from(mult)));
            assert_eq!(row.ours, BigInt::from(ours));
        }
        // only the last row sits below the strict domain
        assert!(rows.iter().all(|r| r.divergent == (r.d == 8)));
    }

    #[test]
    fn table_two_cells() {
        let rows = table_preset(TableId::II).unwrap();
        let expected: Vec<(u32, i64, i64, i64)> = vec![
            (7, 387420489, 513158119, 617003002),
            (8, 43046721, 46650739, 68555890),
            (9, 4782969, 4240977, 7617322),
            (10, 531441, 385544, 846370),
            (11, 59049, 35050, 94042),
            (12, 6561, 3187, 10450),
            (13, 729, 290, 1162),
            (14, 81, 27, 130),
        ];
        assert_eq!(rows.len(), expected.len());
        for (row, (d, ext, restr, ours)) in rows.iter().zip(expected) {
            assert_eq!(row.d, d);
            assert_eq!(row.extension, BigInt::from(ext));
            assert_eq!(row.restriction, BigInt::from(restr));
            assert_eq!(row.multiplication, None);
            assert_eq!(row.ours, BigInt::from(ours));
            assert_eq!(row.divergent, d == 14);
        }
    }

    #[test]
    fn table_three_cells() {
        let rows = table_preset(TableId::III).unwrap();
        let expected = vec![
            (6, "12157665459056928801", "46650738020973341432", "48565806129617900770"),
            (7, "1350851717672992089", "4240976183724849222", "5396200681068655642"),
            (8, "150094635296999121", "385543289429531748", "599577853452072850"),
            (9, "16677181699666569", "35049389948139250", "66619761494674762"),
            (10, "1853020188851841", "3186308177103569", "7402195721630530"),
            (11, "205891132094649", "289664379736689", "822466191292282"),
            (12, "22876792454961", "26333125430609", "91385132365810"),
            (13, "2541865828329", "2393920493692", "10153903596202"),
            (14, "282429536481", "217629135791", "1128211510690"),
            (15, "31381059609", "19784466891", "125356834522"),
            (16, "3486784401", "1798587900", "13928537170"),
            (17, "387420489", "163507991", "1547615242"),
            (18, "43046721", "14864363", "171957250"),
            (19, "4782969", "1351306", "19106362"),
            (20, "531441", "122846", "2122930"),
            (21, "59049", "11168", "235882"),
            (22, "6561", "1016", "26210"),
        ];
        assert_eq!(rows.len(), expected.len());
        for (row, (d, ext, restr, ours)) in rows.iter().zip(expected) {
            assert_eq!(row.d, d);
            assert_eq!(row.extension, big(ext), "d = {d}");
            assert_eq!(row.restriction, big(restr), "d = {d}");
            assert_eq!(row.multiplication, None);
            assert_eq!(row.ours, big(ours), "d = {d}");
            // paper mode uses s = 2 throughout this table
            assert_eq!(row.ours_s, 2, "d = {d}");
            assert_eq!(row.divergent, d >= 20 || d <= 19 && row.strict != row.ours);
        }
        // strict mode with unbounded s beats the published d = 6 value
        assert!(rows[0].strict > rows[0].ours);
    }

    #[test]
    fn tables_beat_extension_whenever_claimed() {
        for id in [TableId::I, TableId::II, TableId::III] {
            for row in table_preset(id).unwrap() {
                assert!(row.ours > row.extension, "{id:?} d = {}", row.d);
            }
        }
    }
}
