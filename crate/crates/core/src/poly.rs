//! Univariate polynomials over a [`FieldSpec`], used for curve models,
//! place descriptors and rational-function numerators/denominators.
//!
//! Coefficients are element indices; the field is passed explicitly to
//! every operation. The zero polynomial is the empty coefficient vector.

use crate::gf::{Embedding, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    /// coeffs[i] is the coefficient of x^i; no trailing zeros.
    pub coeffs: Vec<u16>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: u16) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<u16>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// x - alpha
    pub fn linear(f: &FieldSpec, alpha: u16) -> Poly {
        Poly::from_coeffs(vec![f.neg(alpha), 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> u16 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Deterministic total order key: (degree, coefficient indices low-to-high).
    pub fn index_key(&self) -> (usize, Vec<u16>) {
        (self.coeffs.len(), self.coeffs.clone())
    }

    pub fn add(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u16; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out[i] = f.add(a, b);
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, f: &FieldSpec) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, f: &FieldSpec, other: &Poly) -> Poly {
        self.add(f, &other.neg(f))
    }

    pub fn mul(&self, f: &FieldSpec, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u16; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, f: &FieldSpec, c: u16) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, f: &FieldSpec, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, f: &FieldSpec, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dlead_inv = f.inv(div.leading()).unwrap();
        let dd = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u16; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], dlead_inv);
            if c != 0 {
                quot[i - dd] = c;
                for (j, &m) in div.coeffs.iter().enumerate() {
                    rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, m));
                }
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn gcd(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(f, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(f)
        }
    }

    pub fn monic(&self, f: &FieldSpec) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.leading()).unwrap())
    }

    /// Formal derivative.
    pub fn derivative(&self, f: &FieldSpec) -> Poly {
        let mut out = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let mut acc = 0u16;
            for _ in 0..(i as u64 % f.p() as u64) {
                acc = f.add(acc, c);
            }
            out.push(acc);
        }
        Poly::from_coeffs(out)
    }

    pub fn is_squarefree(&self, f: &FieldSpec) -> bool {
        let d = self.derivative(f);
        if d.is_zero() {
            return self.degree() <= 0;
        }
        self.gcd(f, &d).degree() == 0
    }

    pub fn eval(&self, f: &FieldSpec, x: u16) -> u16 {
        let mut acc = 0u16;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Evaluate in an extension field: coefficients mapped through `emb`.
    pub fn eval_ext(&self, ext: &FieldSpec, emb: &Embedding, x: u16) -> u16 {
        let mut acc = 0u16;
        for &c in self.coeffs.iter().rev() {
            acc = ext.add(ext.mul(acc, x), emb.apply(c));
        }
        acc
    }

    /// Map coefficients into an extension field.
    pub fn lift(&self, emb: &Embedding) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        }
    }

    /// Multiplicity of `factor` in self.
    pub fn ord_at(&self, f: &FieldSpec, factor: &Poly) -> u32 {
        assert!(factor.degree() >= 1);
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(f, factor);
            if !r.is_zero() {
                return n;
            }
            n += 1;
            cur = q;
        }
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, c) => format!("{c}{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join("+")
    }
}

/// All monic irreducible polynomials of degree exactly `d` over `f`,
/// in increasing index order of the non-leading coefficient vector.
pub fn monic_irreducibles(f: &FieldSpec, d: u32) -> Vec<Poly> {
    assert!(d >= 1);
    let q = f.q() as u64;
    let count = q.pow(d);
    let mut out = Vec::new();
    'next: for idx in 0..count {
        let mut coeffs: Vec<u16> = (0..d)
            .map(|i| ((idx / q.pow(i)) % q) as u16)
            .collect();
        coeffs.push(1);
        let cand = Poly::from_coeffs(coeffs);
        if d == 1 {
            out.push(cand);
            continue;
        }
        // degree 2/3: irreducible iff no roots
        if d <= 3 {
            for x in 0..f.q() {
                if cand.eval(f, x) == 0 {
                    continue 'next;
                }
            }
            out.push(cand);
            continue;
        }
        // general trial division
        for e in 1..=d / 2 {
            for p in monic_irreducibles(f, e) {
                let (_, r) = cand.divrem(f, &p);
                if r.is_zero() {
                    continue 'next;
                }
            }
        }
        out.push(cand);
    }
    out
}

/// Smallest-index root of `poly` in the extension field, if any.
pub fn smallest_root_ext(poly: &Poly, ext: &FieldSpec, emb: &Embedding) -> Option<u16> {
    (0..ext.q()).find(|&x| poly.eval_ext(ext, emb, x) == 0)
}
