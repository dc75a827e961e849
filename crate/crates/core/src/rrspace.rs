//! Riemann-Roch spaces L(A) = { f : (f) + A >= 0 } and the exact-pole
//! subsets used by the code construction.
//!
//! On the rational model a basis is written down directly. On the
//! hyperelliptic model the space is cut out of an ansatz (a + b y)/c by
//! linear constraints: c is a universal denominator assembled from the
//! positive part of A, and for every constrained place the low-order
//! local expansion coefficients of the candidate must vanish. Rows over
//! a residue field F_{q^e} decompose into e rows over F_q; the kernel of
//! the system is the basis.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use crate::curve::{CurveError, CurveModel, Divisor, FunctionElt, ModelKind, Place};
use crate::linalg::Mat;
use crate::poly::Poly;

/// Cap on enumerated space sizes.
pub const MAX_ENUM: u128 = 1 << 26;

#[derive(Debug, Error)]
pub enum RrError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("space dimension {got} does not match Riemann-Roch ({expected})")]
    DimensionMismatch { expected: i64, got: usize },
    #[error("stratum size {got} does not match the closed form ({expected})")]
    StratumMismatch { expected: BigInt, got: usize },
    #[error("enumeration of {0} elements exceeds the supported maximum")]
    EnumerationTooLarge(u128),
    #[error("operation is not available for this curve model")]
    UnsupportedModel,
}

/// Basis of L(A), deterministic. Errors with DimensionMismatch when the
/// computed dimension contradicts the Riemann-Roch theorem.
pub fn rr_basis(model: &CurveModel, a: &Divisor) -> Result<Vec<FunctionElt>, RrError> {
    let basis = match &model.kind {
        ModelKind::Rational => rational_basis(model, a),
        ModelKind::Hyperelliptic { .. } => hyperelliptic_basis(model, a)?,
        ModelKind::PlaneAffine { .. } => return Err(RrError::UnsupportedModel),
    };
    let deg = a.degree();
    if deg >= 2 * model.genus() as i64 - 1 {
        let expected = (deg - model.genus() as i64 + 1).max(0);
        if basis.len() as i64 != expected {
            return Err(RrError::DimensionMismatch {
                expected,
                got: basis.len(),
            });
        }
    }
    Ok(basis)
}

fn rational_basis(model: &CurveModel, a: &Divisor) -> Vec<FunctionElt> {
    let f = &model.field;
    let mut c = Poly::one();
    let mut forced = Poly::one();
    let mut n_inf = 0i64;
    for (place, n) in a.iter() {
        match place {
            Place::RatInf => n_inf = n,
            Place::RatFinite(p) => {
                if n > 0 {
                    c = c.mul(f, &p.pow(f, n as u32));
                } else {
                    forced = forced.mul(f, &p.pow(f, (-n) as u32));
                }
            }
            _ => unreachable!("rational-model divisor with a foreign place"),
        }
    }
    let budget = c.degree() + n_inf - forced.degree();
    let mut out = Vec::new();
    for j in 0..=budget.max(-1) {
        let num = forced.mul(f, &Poly::x().pow(f, j as u32));
        out.push(FunctionElt::new(f, num, Poly::zero(), c.clone()));
    }
    out
}

fn hyperelliptic_basis(model: &CurveModel, a: &Divisor) -> Result<Vec<FunctionElt>, RrError> {
    let f = &model.field;
    let h_deg = model.h().unwrap().degree();

    // universal denominator from the positive affine part of A
    let mut c = Poly::one();
    let mut seen: Vec<(Poly, i64)> = Vec::new();
    for (place, n) in a.iter() {
        if place.is_infinite() || n <= 0 {
            continue;
        }
        let (xpoly, need) = match place {
            Place::HypSplit { xpoly, .. } => (xpoly.clone(), n),
            Place::HypInert(p) => (p.clone(), n),
            Place::HypRam(p) => (p.clone(), (n + 1) / 2),
            _ => unreachable!("hyperelliptic divisor with a foreign place"),
        };
        match seen.iter_mut().find(|(p, _)| *p == xpoly) {
            Some(entry) => entry.1 = entry.1.max(need),
            None => seen.push((xpoly, need)),
        }
    }
    for (p, e) in &seen {
        c = c.mul(f, &p.pow(f, *e as u32));
    }

    let infinite = model.infinite_places()?;
    let t = infinite
        .iter()
        .map(|p| a.coeff(p))
        .max()
        .unwrap()
        .max(0);
    let (da, db) = if h_deg == 4 {
        let da = c.degree() + t;
        (da, da - 2)
    } else {
        let da = c.degree() + (t + 1) / 2;
        (da, da - 1)
    };
    let na = (da + 1) as usize;
    let nb = (db + 1).max(0) as usize;

    // constrained places: everything above a factor of c, every affine
    // place of A with a negative coefficient, and every infinite place
    let mut constrained: BTreeSet<Place> = BTreeSet::new();
    for (p, _) in &seen {
        for place in model.places_over(p)? {
            constrained.insert(place);
        }
    }
    for (place, n) in a.iter() {
        if !place.is_infinite() && n < 0 {
            constrained.insert(place.clone());
        }
    }
    for place in infinite {
        constrained.insert(place);
    }

    let mut mat = Mat::new(0, na + nb);
    for place in &constrained {
        let bound = -a.coeff(place);
        let prec = bound + 2 * (da.max(db).max(0) + c.degree() + h_deg + 8);
        let frame = model.frame(place, prec)?;
        // expansions of the ansatz monomials x^j/c and x^j y/c
        let mut mons = Vec::with_capacity(na + nb);
        for j in 0..na {
            let g = FunctionElt {
                a: Poly::x().pow(f, j as u32),
                b: Poly::zero(),
                c: c.clone(),
            };
            mons.push(model.expand_in(&frame, &g).expect("frame precision"));
        }
        for j in 0..nb {
            let g = FunctionElt {
                a: Poly::zero(),
                b: Poly::x().pow(f, j as u32),
                c: c.clone(),
            };
            mons.push(model.expand_in(&frame, &g).expect("frame precision"));
        }
        let low = mons.iter().filter_map(|s| s.valuation()).min().unwrap_or(0);
        for e in low..bound {
            // residue-field row, decomposed into F_q rows
            let coords: Vec<Vec<u16>> = mons
                .iter()
                .map(|s| frame.ext.to_coords(s.coeff(e)))
                .collect();
            for r in 0..frame.ext.e as usize {
                let row: Vec<u16> = coords.iter().map(|co| co[r]).collect();
                if row.iter().any(|&v| v != 0) {
                    mat.push_row(row);
                }
            }
        }
    }

    let kernel = mat.kernel_basis(f);
    let mut out = Vec::new();
    for v in kernel {
        let apoly = Poly::from_coeffs(v[..na].to_vec());
        let bpoly = Poly::from_coeffs(v[na..].to_vec());
        out.push(FunctionElt::new(f, apoly, bpoly, c.clone()));
    }
    Ok(out)
}

/// All q^dim elements spanned by `basis`, zero first, in base-q index
/// order of the coefficient vector (basis[0] cycles fastest).
pub fn space_enumerate(
    model: &CurveModel,
    basis: &[FunctionElt],
) -> Result<Vec<FunctionElt>, RrError> {
    let q = model.field.q() as u128;
    let total = q
        .checked_pow(basis.len() as u32)
        .filter(|&t| t <= MAX_ENUM)
        .ok_or(RrError::EnumerationTooLarge(u128::MAX))?;
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut rem = idx;
        let mut f = FunctionElt::zero();
        for b in basis {
            let digit = (rem % q) as u16;
            rem /= q;
            if digit != 0 {
                f = model.fn_add(&f, &model.fn_scale(b, digit));
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// The exact-pole stratum: elements of `space` (assumed to enumerate
/// L(D+G)) whose valuation at every Q in supp(G) is exactly
/// -m_Q - v_Q(D). With deg(D) >= 2g-1 the size is checked against the
/// closed form q^(deg(D)+deg(G)-g+1) prod(1 - q^(-deg Q)).
pub fn exact_pole_subset(
    model: &CurveModel,
    d: &Divisor,
    g: &Divisor,
    space: &[FunctionElt],
) -> Result<Vec<FunctionElt>, RrError> {
    assert!(g.is_effective());
    let mut out = Vec::new();
    'f: for f in space {
        for (place, mult) in g.iter() {
            let want = -mult - d.coeff(place);
            if f.is_zero() || model.valuation(place, f)? != want {
                continue 'f;
            }
        }
        out.push(f.clone());
    }
    let genus = model.genus() as i64;
    if d.degree() >= 2 * genus - 1 && !g.is_zero() {
        let q = BigInt::from(model.field.q());
        let exp = d.degree() + g.degree() - genus + 1
            - g.iter().map(|(p, _)| p.degree() as i64).sum::<i64>();
        assert!(exp >= 0);
        let mut expected = q.pow(exp as u32);
        for (place, _) in g.iter() {
            expected *= q.pow(place.degree()) - 1;
        }
        if BigInt::from(out.len()) != expected {
            return Err(RrError::StratumMismatch {
                expected,
                got: out.len(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn f5() -> FieldSpec {
        FieldSpec::make(5, 1).unwrap()
    }

    fn f9() -> FieldSpec {
        FieldSpec::make(3, 2).unwrap()
    }

    fn quartic_f5() -> CurveModel {
        CurveModel::hyperelliptic(f5(), Poly::from_coeffs(vec![1, 0, 0, 0, 3])).unwrap()
    }

    fn quartic_f9() -> CurveModel {
        CurveModel::hyperelliptic(f9(), Poly::from_coeffs(vec![1, 0, 0, 0, 1])).unwrap()
    }

    /// Every basis element satisfies (f) + A >= 0 at the support of A
    /// and at infinity.
    fn check_membership(model: &CurveModel, a: &Divisor, basis: &[FunctionElt]) {
        let mut places = a.support();
        places.extend(model.infinite_places().unwrap());
        for f in basis {
            assert!(!f.is_zero());
            for p in &places {
                let v = model.valuation(p, f).unwrap();
                assert!(
                    v >= -a.coeff(p),
                    "valuation {v} at {p} violates bound {}",
                    -a.coeff(p)
                );
            }
        }
    }

    #[test]
    fn rational_model_spaces() {
        let m = CurveModel::rational(f5());
        let a = Divisor::from_place(Place::RatInf, 2);
        let basis = rr_basis(&m, &a).unwrap();
        assert_eq!(basis.len(), 3); // 1, x, x^2
        check_membership(&m, &a, &basis);

        // pole at 0 and at infinity
        let mut a2 = Divisor::from_place(Place::RatInf, 1);
        a2.add_place(Place::RatFinite(Poly::x()), 1);
        let basis2 = rr_basis(&m, &a2).unwrap();
        assert_eq!(basis2.len(), 3); // 1/x, 1, x
        check_membership(&m, &a2, &basis2);

        // forced zero: L(3 inf - P_0) = x * {1, x, x^2}
        let mut a3 = Divisor::from_place(Place::RatInf, 3);
        a3.add_place(Place::RatFinite(Poly::x()), -1);
        let basis3 = rr_basis(&m, &a3).unwrap();
        assert_eq!(basis3.len(), 3);
        check_membership(&m, &a3, &basis3);
        for f in &basis3 {
            assert!(f.a.eval(&m.field, 0) == 0);
        }

        assert!(rr_basis(&m, &Divisor::from_place(Place::RatInf, -1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn elliptic_split_infinity_spaces() {
        let m = quartic_f9();
        // single simple pole on an elliptic curve: constants only
        let a = Divisor::from_place(Place::HypInfSplit(0), 1);
        let basis = rr_basis(&m, &a).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_constant());

        let a2 = Divisor::from_place(Place::HypInfSplit(0), 2);
        let basis2 = rr_basis(&m, &a2).unwrap();
        assert_eq!(basis2.len(), 2);
        check_membership(&m, &a2, &basis2);

        // both infinite branches: contains x
        let mut a3 = Divisor::from_place(Place::HypInfSplit(0), 1);
        a3.add_place(Place::HypInfSplit(1), 1);
        let basis3 = rr_basis(&m, &a3).unwrap();
        assert_eq!(basis3.len(), 2);
        check_membership(&m, &a3, &basis3);
        assert!(basis3.iter().any(|f| f.b.is_zero() && f.a.degree() == 1));
    }

    #[test]
    fn elliptic_inert_infinity_spaces() {
        let m = quartic_f5();
        let q_inf = Place::HypInfInert;
        let basis = rr_basis(&m, &Divisor::from_place(q_inf.clone(), 1)).unwrap();
        assert_eq!(basis.len(), 2); // 1, x
        let basis2 = rr_basis(&m, &Divisor::from_place(q_inf.clone(), 2)).unwrap();
        assert_eq!(basis2.len(), 4); // 1, x, x^2, y
        check_membership(&m, &Divisor::from_place(q_inf, 2), &basis2);
        assert!(basis2.iter().any(|f| !f.b.is_zero()));
    }

    #[test]
    fn affine_pole_spaces() {
        let m = quartic_f9();
        let pl = m.rational_places().unwrap();
        // a split affine place with a double pole
        let split = pl
            .iter()
            .find(|p| matches!(p, Place::HypSplit { .. }))
            .unwrap();
        for mult in 1..=3 {
            let a = Divisor::from_place(split.clone(), mult);
            let basis = rr_basis(&m, &a).unwrap();
            assert_eq!(basis.len() as i64, mult);
            check_membership(&m, &a, &basis);
        }
        // a ramified place: L(P_ram) is constants, L(2 P_ram) has dim 2
        let ram = pl.iter().find(|p| matches!(p, Place::HypRam(_))).unwrap();
        let b1 = rr_basis(&m, &Divisor::from_place(ram.clone(), 1)).unwrap();
        assert_eq!(b1.len(), 1);
        let b2 = rr_basis(&m, &Divisor::from_place(ram.clone(), 2)).unwrap();
        assert_eq!(b2.len(), 2);
        check_membership(&m, &Divisor::from_place(ram.clone(), 2), &b2);
    }

    #[test]
    fn mixed_divisor_spaces() {
        let m = quartic_f9();
        let pl = m.rational_places().unwrap();
        let split = pl
            .iter()
            .find(|p| matches!(p, Place::HypSplit { .. }))
            .unwrap();
        // pole at a split place, forced zero at one infinite branch
        let mut a = Divisor::from_place(split.clone(), 3);
        a.add_place(Place::HypInfSplit(0), -1);
        let basis = rr_basis(&m, &a).unwrap();
        assert_eq!(basis.len(), 2);
        check_membership(&m, &a, &basis);
        for f in &basis {
            assert!(m.valuation(&Place::HypInfSplit(0), f).unwrap() >= 1);
        }
    }

    #[test]
    fn degree2_divisor_on_inert_place() {
        // the construction divisor for the F_5 example: D = m * Q_inf
        let m = quartic_f5();
        for mult in 1..=2 {
            let a = Divisor::from_place(Place::HypInfInert, mult);
            let basis = rr_basis(&m, &a).unwrap();
            assert_eq!(basis.len() as i64, 2 * mult);
            check_membership(&m, &a, &basis);
        }
    }

    #[test]
    fn space_enumeration_order() {
        let m = CurveModel::rational(f5());
        let basis = rr_basis(&m, &Divisor::from_place(Place::RatInf, 1)).unwrap();
        let all = space_enumerate(&m, &basis).unwrap();
        assert_eq!(all.len(), 25);
        assert!(all[0].is_zero());
        // distinct elements
        for i in 0..all.len() {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        let m = CurveModel::rational(f5());
        let a = Divisor::from_place(Place::RatInf, 40);
        let basis = rr_basis(&m, &a).unwrap();
        assert!(matches!(
            space_enumerate(&m, &basis),
            Err(RrError::EnumerationTooLarge(_))
        ));
    }

    #[test]
    fn exact_pole_stratum_closed_form() {
        let m = quartic_f5();
        let d = Divisor::from_place(Place::HypInfInert, 1); // deg 2
        let pl = m.rational_places().unwrap();
        let q1 = &pl[0];
        let g = Divisor::from_place(q1.clone(), 1);
        let dg = d.add(&g);
        let space = space_enumerate(&m, &rr_basis(&m, &dg).unwrap()).unwrap();
        assert_eq!(space.len(), 125);
        let stratum = exact_pole_subset(&m, &d, &g, &space).unwrap();
        // q^(m+s-g+1) (1 - 1/q) = 5^3 * 4/5 = 100
        assert_eq!(stratum.len(), 100);
        // the G = 0 stratum is all of L(D)
        let ld = space_enumerate(&m, &rr_basis(&m, &d).unwrap()).unwrap();
        let s0 = exact_pole_subset(&m, &d, &Divisor::new(), &ld).unwrap();
        assert_eq!(s0.len(), 25);
    }

    #[test]
    fn strata_are_disjoint() {
        let m = quartic_f5();
        let d = Divisor::from_place(Place::HypInfInert, 1);
        let pl = m.rational_places().unwrap();
        let g1 = Divisor::from_place(pl[0].clone(), 1);
        let g2 = Divisor::from_place(pl[1].clone(), 1);
        let s1 = exact_pole_subset(
            &m,
            &d,
            &g1,
            &space_enumerate(&m, &rr_basis(&m, &d.add(&g1)).unwrap()).unwrap(),
        )
        .unwrap();
        let s2 = exact_pole_subset(
            &m,
            &d,
            &g2,
            &space_enumerate(&m, &rr_basis(&m, &d.add(&g2)).unwrap()).unwrap(),
        )
        .unwrap();
        for f in &s1 {
            assert!(!s2.contains(f));
        }
    }
}
