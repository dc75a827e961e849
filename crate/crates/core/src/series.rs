//! Truncated Laurent series over a [`FieldSpec`], the engine behind
//! valuations, local expansions and Riemann-Roch constraint rows.
//!
//! A series carries an absolute validity bound `prec`: coefficients of
//! t^e are meaningful only for e < prec. Operations propagate the bound
//! conservatively, so a consumer asking for an order at or beyond the
//! bound is a programming error (callers size their precision up front).

use crate::gf::FieldSpec;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ser {
    /// Exponent of the first stored coefficient.
    pub ord: i64,
    /// co[i] = coefficient of t^{ord+i}.
    pub co: Vec<u16>,
    /// Coefficients are valid for exponents < prec.
    pub prec: i64,
}

impl Ser {
    pub fn zero(prec: i64) -> Ser {
        Ser {
            ord: prec,
            co: Vec::new(),
            prec,
        }
    }

    pub fn constant(c: u16, prec: i64) -> Ser {
        if c == 0 {
            return Ser::zero(prec);
        }
        Ser {
            ord: 0,
            co: vec![c],
            prec,
        }
    }

    /// c * t^e
    pub fn monomial(c: u16, e: i64, prec: i64) -> Ser {
        if c == 0 {
            return Ser::zero(prec);
        }
        Ser {
            ord: e,
            co: vec![c],
            prec,
        }
    }

    pub fn normalize(mut self) -> Ser {
        while let Some(&0) = self.co.first() {
            self.co.remove(0);
            self.ord += 1;
        }
        let keep = (self.prec - self.ord).max(0) as usize;
        self.co.truncate(keep);
        while self.co.last() == Some(&0) {
            self.co.pop();
        }
        if self.co.is_empty() {
            self.ord = self.prec;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.co.is_empty()
    }

    /// Leading exponent (valuation), when a nonzero coefficient is known.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.ord)
        }
    }

    pub fn coeff(&self, e: i64) -> u16 {
        assert!(e < self.prec, "coefficient requested beyond series precision");
        if e < self.ord {
            return 0;
        }
        self.co.get((e - self.ord) as usize).copied().unwrap_or(0)
    }

    pub fn add(&self, f: &FieldSpec, other: &Ser) -> Ser {
        let prec = self.prec.min(other.prec);
        let ord = self.ord.min(other.ord).min(prec);
        let len = (prec - ord).max(0) as usize;
        let mut co = vec![0u16; len];
        for (s, base) in [(self, ord), (other, ord)] {
            for (i, &c) in s.co.iter().enumerate() {
                let e = s.ord + i as i64;
                if e >= prec {
                    break;
                }
                let idx = (e - base) as usize;
                co[idx] = f.add(co[idx], c);
            }
        }
        Ser { ord, co, prec }.normalize()
    }

    pub fn neg(&self, f: &FieldSpec) -> Ser {
        Ser {
            ord: self.ord,
            co: self.co.iter().map(|&c| f.neg(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, f: &FieldSpec, other: &Ser) -> Ser {
        self.add(f, &other.neg(f))
    }

    pub fn mul(&self, f: &FieldSpec, other: &Ser) -> Ser {
        if self.is_zero() || other.is_zero() {
            // product valid wherever either factor's validity pushes it
            let prec = (self.prec + other.ord).min(other.prec + self.ord);
            return Ser::zero(prec);
        }
        let prec = (self.prec + other.ord).min(other.prec + self.ord);
        let ord = self.ord + other.ord;
        let len = (prec - ord).max(0) as usize;
        let mut co = vec![0u16; len];
        for (i, &a) in self.co.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.co.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                co[i + j] = f.add(co[i + j], f.mul(a, b));
            }
        }
        Ser { ord, co, prec }.normalize()
    }

    pub fn scale(&self, f: &FieldSpec, c: u16) -> Ser {
        if c == 0 {
            return Ser::zero(self.prec);
        }
        Ser {
            ord: self.ord,
            co: self.co.iter().map(|&a| f.mul(a, c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiply by t^e.
    pub fn shift(&self, e: i64) -> Ser {
        Ser {
            ord: self.ord + e,
            co: self.co.clone(),
            prec: self.prec + e,
        }
    }

    /// Multiplicative inverse; the series must have a known nonzero
    /// leading coefficient.
    pub fn inv(&self, f: &FieldSpec) -> Ser {
        assert!(!self.is_zero(), "inverse of a series with no known terms");
        let v = self.ord;
        // u = t^{-v} * self is a unit power series, known to relative
        // order prec - v; its inverse is known to the same relative order
        let n = ((self.prec - v).max(1)) as usize;
        let u0_inv = f.inv(self.co[0]).unwrap();
        let mut inv_co = vec![0u16; n];
        inv_co[0] = u0_inv;
        for i in 1..n {
            // coefficient i of u * inv must vanish
            let mut acc = 0u16;
            for j in 0..i {
                let a = self.co.get(i - j).copied().unwrap_or(0);
                acc = f.add(acc, f.mul(a, inv_co[j]));
            }
            inv_co[i] = f.neg(f.mul(acc, u0_inv));
        }
        // validity: self known on [v, prec) => unit part known to relative
        // order (prec - v) => inverse known to the same relative order.
        let rel = self.prec - v;
        Ser {
            ord: -v,
            co: inv_co,
            prec: -v + rel,
        }
        .normalize()
    }

    pub fn div(&self, f: &FieldSpec, other: &Ser) -> Ser {
        self.mul(f, &other.inv(f))
    }

    /// Square root of a series with even leading exponent and square
    /// leading coefficient, in odd characteristic. Picks the branch whose
    /// leading coefficient is `lead_root` (must square to the leading
    /// coefficient).
    pub fn sqrt(&self, f: &FieldSpec, lead_root: u16) -> Ser {
        assert!(f.p() != 2, "series sqrt requires odd characteristic");
        assert!(!self.is_zero());
        assert_eq!(self.ord % 2, 0);
        assert_eq!(f.mul(lead_root, lead_root), self.co[0]);
        let rel = (self.prec - self.ord) as usize;
        let inv2 = f.inv(f.from_int(2)).unwrap();
        // Newton: s <- (s + a/s)/2 on the unit part
        let unit = Ser {
            ord: 0,
            co: self.co.clone(),
            prec: self.prec - self.ord,
        };
        let mut s = Ser::constant(lead_root, 1);
        let mut cur_prec = 1i64;
        while (cur_prec as usize) < rel {
            cur_prec = (cur_prec * 2).min(rel as i64);
            let mut a = unit.clone();
            a.prec = a.prec.min(cur_prec);
            a = a.normalize();
            s.prec = cur_prec;
            s = s
                .add(f, &a.div(f, &s))
                .scale(f, inv2)
                .normalize();
            s.prec = cur_prec;
        }
        let mut out = s.shift(self.ord / 2);
        out.prec = self.prec - self.ord / 2;
        out.normalize()
    }

    /// Evaluate a polynomial at this series (Horner).
    pub fn compose_poly(&self, f: &FieldSpec, poly: &Poly) -> Ser {
        // validity of the result: dominated by self.prec when |self| has
        // nonnegative valuation; for negative valuation the caller's
        // precision budget must cover deg * |ord|.
        let prec = self.prec;
        let mut acc = Ser::zero(prec);
        for &c in poly.coeffs.iter().rev() {
            acc = acc.mul(f, self).add(f, &Ser::constant(c, prec));
        }
        acc
    }
}
