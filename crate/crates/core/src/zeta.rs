//! L-polynomials of function fields and the counting data derived from
//! them: point counts over constant-field extensions and the number of
//! effective divisors of each degree.
//!
//! The numerator L(t) of the zeta function is stored by its integer
//! coefficients b_0..b_{2g} with b_0 = 1. Conventions: if
//! L(t) = prod (1 - alpha_i t) then N_r = q^r + 1 - sum alpha_i^r, and
//! the number A_i of effective divisors of degree i is the t^i
//! coefficient of L(t) / ((1-t)(1-qt)).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, CurveModel};

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error("coefficients violate the functional equation b_(2g-i) = q^(g-i) b_i")]
    BadFunctionalEquation,
    #[error("|N - q - 1| = {0} exceeds the Weil bound {1}")]
    HasseWeilViolation(BigInt, BigInt),
    #[error("a maximal L-polynomial requires q to be a perfect square, got {0}")]
    NotASquare(u32),
    #[error("expected {0} coefficients with leading 1, got {1}")]
    BadCoeffs(usize, usize),
    #[error("point counts do not come from an integral L-polynomial")]
    NonIntegral,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("bad serialized table: {0}")]
    BadSerialization(String),
}

/// Numerator of the zeta function of a genus-g function field over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    pub q: u32,
    pub g: u32,
    /// b_0..b_{2g}, b_0 = 1.
    pub coeffs: Vec<BigInt>,
}

/// floor(2g sqrt(q)) as an exact integer.
pub fn weil_radius(q: u32, g: u32) -> BigInt {
    let v: BigInt = BigInt::from(4u32) * BigInt::from(g) * BigInt::from(g) * BigInt::from(q);
    v.sqrt()
}

impl LPolynomial {
    /// Genus 0: L(t) = 1.
    pub fn rational(q: u32) -> LPolynomial {
        LPolynomial {
            q,
            g: 0,
            coeffs: vec![BigInt::one()],
        }
    }

    /// Genus 1 from the rational point count: L(t) = 1 + (N-q-1)t + qt^2.
    pub fn elliptic(q: u32, n1: u64) -> Result<LPolynomial, ZetaError> {
        let b1 = BigInt::from(n1) - BigInt::from(q) - BigInt::one();
        let radius = weil_radius(q, 1);
        if b1.abs() > radius {
            return Err(ZetaError::HasseWeilViolation(b1.abs(), radius));
        }
        Ok(LPolynomial {
            q,
            g: 1,
            coeffs: vec![BigInt::one(), b1, BigInt::from(q)],
        })
    }

    /// Maximal curve of genus g over a square q: L(t) = (1 + sqrt(q) t)^{2g}.
    pub fn maximal(q: u32, g: u32) -> Result<LPolynomial, ZetaError> {
        let s = (q as f64).sqrt().round() as u32;
        if s * s != q {
            return Err(ZetaError::NotASquare(q));
        }
        let mut coeffs = vec![BigInt::zero(); 2 * g as usize + 1];
        // binomial expansion
        let mut binom = BigInt::one();
        for i in 0..=2 * g as usize {
            coeffs[i] = &binom * BigInt::from(s).pow(i as u32);
            binom = binom * BigInt::from(2 * g as usize - i) / BigInt::from(i + 1);
        }
        Ok(LPolynomial { q, g, coeffs })
    }

    /// Arbitrary coefficients, validated against the functional equation
    /// and the Weil bound on b_1.
    pub fn custom(q: u32, g: u32, coeffs: Vec<BigInt>) -> Result<LPolynomial, ZetaError> {
        let want = 2 * g as usize + 1;
        if coeffs.len() != want || !coeffs[0].is_one() {
            return Err(ZetaError::BadCoeffs(want, coeffs.len()));
        }
        for i in 0..=g as usize {
            let rhs = BigInt::from(q).pow((g as usize - i) as u32) * &coeffs[i];
            if coeffs[2 * g as usize - i] != rhs {
                return Err(ZetaError::BadFunctionalEquation);
            }
        }
        if g > 0 {
            let radius = weil_radius(q, g);
            if coeffs[1].abs() > radius {
                return Err(ZetaError::HasseWeilViolation(coeffs[1].abs(), radius));
            }
        }
        Ok(LPolynomial { q, g, coeffs })
    }

    /// Reconstruct the L-polynomial of a curve model from its point
    /// counts over F_{q^r}, r = 1..g.
    pub fn from_curve(model: &CurveModel) -> Result<LPolynomial, ZetaError> {
        let q = model.field.q() as u32;
        let g = model.genus();
        // power sums s_r = q^r + 1 - N_r, then Newton's identities:
        // s_r + sum_{j<r} b_j s_{r-j} + r b_r = 0
        let mut s = vec![BigInt::zero()];
        for r in 1..=g {
            let n = model.point_count(r)?;
            s.push(BigInt::from(q).pow(r) + BigInt::one() - BigInt::from(n));
        }
        let mut coeffs = vec![BigInt::one()];
        for r in 1..=g as usize {
            let mut acc = s[r].clone();
            for j in 1..r {
                acc += &coeffs[j] * &s[r - j];
            }
            let (b, rem) = num_integer::Integer::div_rem(&-acc, &BigInt::from(r));
            if !rem.is_zero() {
                return Err(ZetaError::NonIntegral);
            }
            coeffs.push(b);
        }
        // b_{g+1}..b_{2g} via the functional equation b_{2g-i} = q^{g-i} b_i
        for i in (0..g as usize).rev() {
            let b = BigInt::from(q).pow(g - i as u32) * &coeffs[i];
            coeffs.push(b);
        }
        LPolynomial::custom(q, g, coeffs)
    }

    /// N_r: number of points rational over F_{q^r}.
    pub fn point_count(&self, r: u32) -> BigInt {
        assert!(r >= 1);
        // Newton's identities give the power sums of the inverse roots
        let mut s: Vec<BigInt> = vec![BigInt::zero()];
        for m in 1..=r as usize {
            let mut acc = BigInt::zero();
            for j in 1..=m.min(2 * self.g as usize) {
                if j < m {
                    acc += &self.coeffs[j] * &s[m - j];
                }
            }
            if m <= 2 * self.g as usize {
                acc += BigInt::from(m) * &self.coeffs[m];
            }
            s.push(-acc);
        }
        BigInt::from(self.q).pow(r) + BigInt::one() - &s[r as usize]
    }

    /// A_0..A_max: number of effective divisors of each degree, as the
    /// series coefficients of L(t) / ((1-t)(1-qt)).
    pub fn effective_counts(&self, max_degree: usize) -> Vec<BigInt> {
        let q = BigInt::from(self.q);
        // c_i = (q^{i+1} - 1)/(q - 1) = 1 + q + ... + q^i
        let mut c = Vec::with_capacity(max_degree + 1);
        let mut acc = BigInt::one();
        let mut qp = q.clone();
        c.push(acc.clone());
        for _ in 1..=max_degree {
            acc += &qp;
            qp *= &q;
            c.push(acc.clone());
        }
        (0..=max_degree)
            .map(|i| {
                let mut a = BigInt::zero();
                for j in 0..=i.min(2 * self.g as usize) {
                    a += &self.coeffs[j] * &c[i - j];
                }
                a
            })
            .collect()
    }
}

/// Serialized form of an L-polynomial with a prefix of its divisor counts.
#[derive(Debug, Serialize, Deserialize)]
pub struct ZetaTable {
    pub q: u32,
    pub g: u32,
    /// b_0..b_{2g} in decimal.
    pub coeffs: Vec<String>,
    /// A_0..A_k in decimal.
    pub counts: Vec<String>,
}

impl ZetaTable {
    pub fn emit(lp: &LPolynomial, max_degree: usize) -> ZetaTable {
        ZetaTable {
            q: lp.q,
            g: lp.g,
            coeffs: lp.coeffs.iter().map(|b| b.to_string()).collect(),
            counts: lp
                .effective_counts(max_degree)
                .iter()
                .map(|b| b.to_string())
                .collect(),
        }
    }

    /// Parse and re-validate: coefficients must satisfy the functional
    /// equation and the counts must match recomputation.
    pub fn ingest(&self) -> Result<LPolynomial, ZetaError> {
        let coeffs: Result<Vec<BigInt>, _> = self.coeffs.iter().map(|s| s.parse()).collect();
        let coeffs = coeffs.map_err(|e| ZetaError::BadSerialization(format!("{e}")))?;
        let lp = LPolynomial::custom(self.q, self.g, coeffs)?;
        if !self.counts.is_empty() {
            let want = lp.effective_counts(self.counts.len() - 1);
            for (i, c) in self.counts.iter().enumerate() {
                let got: BigInt = c
                    .parse()
                    .map_err(|e| ZetaError::BadSerialization(format!("{e}")))?;
                if got != want[i] {
                    return Err(ZetaError::BadSerialization(format!(
                        "count A_{i} = {got} does not match the L-polynomial ({})",
                        want[i]
                    )));
                }
            }
        }
        Ok(lp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::poly::Poly;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn elliptic_f5_n10() {
        let lp = LPolynomial::elliptic(5, 10).unwrap();
        assert_eq!(lp.coeffs, vec![big(1), big(4), big(5)]);
        assert_eq!(lp.point_count(1), big(10));
        assert_eq!(lp.point_count(2), big(20));
        assert_eq!(
            lp.effective_counts(3),
            vec![big(1), big(10), big(60), big(310)]
        );
    }

    #[test]
    fn elliptic_f9_n16() {
        let lp = LPolynomial::elliptic(9, 16).unwrap();
        assert_eq!(lp.coeffs, vec![big(1), big(6), big(9)]);
        assert_eq!(lp.point_count(2), big(64));
        assert_eq!(lp.effective_counts(2), vec![big(1), big(16), big(160)]);
    }

    #[test]
    fn maximal_f9_genus3() {
        let lp = LPolynomial::maximal(9, 3).unwrap();
        // (1+3t)^6
        assert_eq!(
            lp.coeffs,
            vec![
                big(1),
                big(18),
                big(135),
                big(540),
                big(1215),
                big(1458),
                big(729)
            ]
        );
        assert_eq!(lp.point_count(1), big(28));
        assert_eq!(lp.point_count(2), big(28));
        assert_eq!(
            lp.effective_counts(3),
            vec![big(1), big(28), big(406), big(4348)]
        );
    }

    #[test]
    fn rational_counts() {
        let lp = LPolynomial::rational(7);
        assert_eq!(lp.point_count(1), big(8));
        assert_eq!(lp.effective_counts(2), vec![big(1), big(8), big(57)]);
    }

    #[test]
    fn custom_validation() {
        assert!(LPolynomial::custom(5, 1, vec![big(1), big(4), big(5)]).is_ok());
        // wrong trailing coefficient breaks the functional equation
        assert!(matches!(
            LPolynomial::custom(5, 1, vec![big(1), big(4), big(4)]),
            Err(ZetaError::BadFunctionalEquation)
        ));
        // |b_1| beyond the Weil bound
        assert!(matches!(
            LPolynomial::elliptic(5, 20),
            Err(ZetaError::HasseWeilViolation(..))
        ));
        assert!(matches!(
            LPolynomial::maximal(5, 1),
            Err(ZetaError::NotASquare(5))
        ));
    }

    #[test]
    fn from_curve_matches_known_models() {
        let f5 = FieldSpec::make(5, 1).unwrap();
        let m = CurveModel::hyperelliptic(f5.clone(), Poly::from_coeffs(vec![1, 0, 0, 0, 3]))
            .unwrap();
        let lp = LPolynomial::from_curve(&m).unwrap();
        assert_eq!(lp, LPolynomial::elliptic(5, 10).unwrap());

        let f9 = FieldSpec::make(3, 2).unwrap();
        let m9 =
            CurveModel::hyperelliptic(f9.clone(), Poly::from_coeffs(vec![1, 0, 0, 0, 1])).unwrap();
        assert_eq!(
            LPolynomial::from_curve(&m9).unwrap(),
            LPolynomial::elliptic(9, 16).unwrap()
        );

        let herm = CurveModel::parse(&f9, "affine:y^3+y=x^4:inf=1:g=3").unwrap();
        assert_eq!(
            LPolynomial::from_curve(&herm).unwrap(),
            LPolynomial::maximal(9, 3).unwrap()
        );

        let rat = CurveModel::rational(f5);
        assert_eq!(LPolynomial::from_curve(&rat).unwrap(), LPolynomial::rational(5));
    }

    #[test]
    fn emit_ingest_roundtrip() {
        let lp = LPolynomial::maximal(9, 3).unwrap();
        let t = ZetaTable::emit(&lp, 5);
        assert_eq!(t.ingest().unwrap(), lp);
        let mut bad = ZetaTable::emit(&lp, 5);
        bad.counts[2] = "405".into();
        assert!(bad.ingest().is_err());
        let json = serde_json::to_string(&t).unwrap();
        let back: ZetaTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back.ingest().unwrap(), lp);
    }
}
