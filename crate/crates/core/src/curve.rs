//! Curve models over small finite fields: places, divisors, rational
//! functions in x and y, local expansions, valuations and evaluation.
//!
//! Three models are supported. The rational model is P^1 with function
//! field F_q(x). The hyperelliptic model is y^2 = h(x) with h squarefree
//! of degree 3 or 4 in odd characteristic, genus 1; its function field
//! is F_q(x, y) and elements are represented as (a + b y)/c with a, b, c
//! univariate in x. The plane affine model is counting-only: it carries
//! a bivariate equation plus a declared number of rational places at
//! infinity and a declared genus, and supports point counts but not
//! function arithmetic.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use thiserror::Error;

use crate::gf::{Embedding, FieldSpec, GfError};
use crate::linalg::Mat;
use crate::poly::{monic_irreducibles, smallest_root_ext, Poly};
use crate::series::Ser;

/// Hard cap on requested expansion precision.
pub const MAX_PREC: i64 = 64;

/// Valuation sentinel for the zero function.
pub const VAL_INF: i64 = i64::MAX;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("hyperelliptic models require odd characteristic")]
    EvenCharacteristic,
    #[error("hyperelliptic right-hand side must be squarefree")]
    NotSquarefree,
    #[error("hyperelliptic right-hand side must have degree 3 or 4")]
    UnsupportedDegree,
    #[error("place degree {0} is outside the supported range")]
    UnsupportedPlaceDegree(u32),
    #[error("operation is not available for this curve model")]
    UnsupportedModel,
    #[error("divisor support requires factoring out an irreducible of degree > 3")]
    UnsupportedFactor,
    #[error("precision {0} exceeds the supported maximum {MAX_PREC}")]
    PrecisionExceeded(i64),
    #[error("the zero function has no divisor")]
    ZeroFunction,
    #[error("curve description parse error: {0}")]
    Parse(String),
}

/// Codeword symbol: a field element or the formal infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Fin(u16),
    Inf,
}

impl std::fmt::Display for Sym {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sym::Fin(v) => write!(w, "{v}"),
            Sym::Inf => write!(w, "inf"),
        }
    }
}

/// Constant-field extension context: F_{q^e} together with the fixed
/// embedding of F_q and the coordinate map onto an F_q-basis.
pub struct ExtCtx {
    pub e: u32,
    pub base: FieldSpec,
    pub ext: FieldSpec,
    pub emb: Embedding,
    /// Basis generator: ext = base[zeta], basis {zeta^i}.
    pub zeta: u16,
    fp: FieldSpec,
    /// Inverse of the F_p change-of-basis matrix; None when e = 1.
    inv: Option<Mat>,
}

impl ExtCtx {
    pub fn new(base: &FieldSpec, e: u32) -> Result<ExtCtx, CurveError> {
        assert!(e >= 1);
        let ext = FieldSpec::make(base.p() as u64, base.k() as u32 * e)?;
        let emb = Embedding::new(base, &ext)?;
        let fp = FieldSpec::make(base.p() as u64, 1)?;
        if e == 1 {
            return Ok(ExtCtx {
                e,
                base: base.clone(),
                ext,
                emb,
                zeta: 1,
                fp,
                inv: None,
            });
        }
        let k = base.k() as usize;
        let kk = k * e as usize;
        // smallest element whose powers form a base-basis of ext
        for zeta in 2..ext.q() {
            let mut m = Mat::new(kk, kk);
            let mut zpow = 1u16;
            for i in 0..e as usize {
                for j in 0..k {
                    let basis_elt = ext.mul(zpow, emb.apply(base_power(base, j)));
                    for (row, d) in digits_base_p(basis_elt, base.p(), kk).into_iter().enumerate()
                    {
                        m.set(row, i * k + j, d);
                    }
                }
                zpow = ext.mul(zpow, zeta);
            }
            if let Some(inv) = m.inverse(&fp) {
                return Ok(ExtCtx {
                    e,
                    base: base.clone(),
                    ext,
                    emb,
                    zeta,
                    fp,
                    inv: Some(inv),
                });
            }
        }
        unreachable!("every proper extension has a primitive basis generator");
    }

    /// Coordinates of an extension element over the base field: returns
    /// (c_0, ..., c_{e-1}) with elt = sum_i emb(c_i) * zeta^i.
    pub fn to_coords(&self, elt: u16) -> Vec<u16> {
        let Some(inv) = &self.inv else {
            return vec![elt];
        };
        let k = self.base.k() as usize;
        let kk = k * self.e as usize;
        let d = digits_base_p(elt, self.base.p(), kk);
        let mut coords = Vec::with_capacity(self.e as usize);
        for i in 0..self.e as usize {
            let mut idx = 0u32;
            for j in (0..k).rev() {
                let row = i * k + j;
                let mut acc = 0u16;
                for c in 0..kk {
                    acc = self.fp.add(acc, self.fp.mul(inv.at(row, c), d[c]));
                }
                idx = idx * self.base.p() as u32 + acc as u32;
            }
            coords.push(idx as u16);
        }
        coords
    }

    /// Inverse of [`ExtCtx::to_coords`].
    pub fn from_coords(&self, coords: &[u16]) -> u16 {
        let mut acc = 0u16;
        let mut zpow = 1u16;
        for &c in coords {
            acc = self.ext.add(acc, self.ext.mul(self.emb.apply(c), zpow));
            zpow = self.ext.mul(zpow, self.zeta);
        }
        acc
    }
}

fn base_power(f: &FieldSpec, j: usize) -> u16 {
    (f.p() as u32).pow(j as u32) as u16
}

fn digits_base_p(mut e: u16, p: u16, len: usize) -> Vec<u16> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(e % p);
        e /= p;
    }
    out
}

/// Bivariate polynomial in x and y; ycoeffs[i] is the coefficient of y^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly2 {
    pub ycoeffs: Vec<Poly>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2 { ycoeffs: Vec::new() }
    }

    pub fn from_x(p: Poly) -> Poly2 {
        Poly2 { ycoeffs: vec![p] }.normalize()
    }

    pub fn y() -> Poly2 {
        Poly2 {
            ycoeffs: vec![Poly::zero(), Poly::one()],
        }
    }

    fn normalize(mut self) -> Poly2 {
        while self.ycoeffs.last().map(|p| p.is_zero()) == Some(true) {
            self.ycoeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn add(&self, f: &FieldSpec, other: &Poly2) -> Poly2 {
        let n = self.ycoeffs.len().max(other.ycoeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.ycoeffs.get(i).cloned().unwrap_or_else(Poly::zero);
            let b = other.ycoeffs.get(i).cloned().unwrap_or_else(Poly::zero);
            out.push(a.add(f, &b));
        }
        Poly2 { ycoeffs: out }.normalize()
    }

    pub fn neg(&self, f: &FieldSpec) -> Poly2 {
        Poly2 {
            ycoeffs: self.ycoeffs.iter().map(|p| p.neg(f)).collect(),
        }
    }

    pub fn sub(&self, f: &FieldSpec, other: &Poly2) -> Poly2 {
        self.add(f, &other.neg(f))
    }

    pub fn mul(&self, f: &FieldSpec, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero();
        }
        let mut out = vec![Poly::zero(); self.ycoeffs.len() + other.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            for (j, b) in other.ycoeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(f, &a.mul(f, b));
            }
        }
        Poly2 { ycoeffs: out }.normalize()
    }

    pub fn pow(&self, f: &FieldSpec, e: u32) -> Poly2 {
        let mut acc = Poly2::from_x(Poly::one());
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn eval_ext(&self, ext: &FieldSpec, emb: &Embedding, x: u16, y: u16) -> u16 {
        let mut acc = 0u16;
        for p in self.ycoeffs.iter().rev() {
            acc = ext.add(ext.mul(acc, y), p.eval_ext(ext, emb, x));
        }
        acc
    }
}

/// A closed point of the curve, keyed deterministically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// Pole of x on the rational model.
    RatInf,
    /// Finite place of the rational model: a monic irreducible in x.
    RatFinite(Poly),
    /// The single (ramified) infinite place when deg h = 3.
    HypInfRam,
    /// One of the two infinite places when deg h = 4 and lc(h) is a square.
    HypInfSplit(u8),
    /// The degree-2 infinite place when deg h = 4 and lc(h) is a non-square.
    HypInfInert,
    /// Affine place over a root of h: the fiber is a single ramified point.
    HypRam(Poly),
    /// Affine split place: `y0` names the branch over the canonical root
    /// of `xpoly` in the residue field.
    HypSplit { xpoly: Poly, y0: u16 },
    /// Affine place over `xpoly` where h is a non-square in the residue
    /// field of `xpoly`; its degree is twice deg(xpoly).
    HypInert(Poly),
    /// Declared rational place at infinity of a plane affine model.
    PlaneInf(u32),
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::RatInf | Place::HypInfRam | Place::HypInfSplit(_) | Place::PlaneInf(_) => 1,
            Place::HypInfInert => 2,
            Place::RatFinite(p) | Place::HypRam(p) => p.degree() as u32,
            Place::HypSplit { xpoly, .. } => xpoly.degree() as u32,
            Place::HypInert(p) => 2 * p.degree() as u32,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(
            self,
            Place::RatInf | Place::HypInfRam | Place::HypInfSplit(_) | Place::HypInfInert
                | Place::PlaneInf(_)
        )
    }

    /// Total order: by degree, infinite places first, then by the index
    /// key of the x-polynomial and the branch label.
    fn sort_key(&self) -> (u32, u8, (usize, Vec<u16>), u16) {
        let none = (0usize, Vec::new());
        match self {
            Place::RatInf | Place::HypInfRam => (self.degree(), 0, none, 0),
            Place::HypInfSplit(b) => (1, 0, none, *b as u16),
            Place::HypInfInert => (2, 0, none, 0),
            Place::PlaneInf(i) => (1, 0, none, *i as u16),
            Place::HypRam(p) => (self.degree(), 1, p.index_key(), 0),
            Place::RatFinite(p) => (self.degree(), 1, p.index_key(), 0),
            Place::HypSplit { xpoly, y0 } => (self.degree(), 2, xpoly.index_key(), *y0),
            Place::HypInert(p) => (self.degree(), 3, p.index_key(), 0),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::RatInf | Place::HypInfRam => write!(w, "inf"),
            Place::HypInfSplit(b) => write!(w, "inf.{b}"),
            Place::HypInfInert => write!(w, "inf2"),
            Place::PlaneInf(i) => write!(w, "inf.{i}"),
            Place::RatFinite(p) => write!(w, "({})", p.display("x")),
            Place::HypRam(p) => write!(w, "ram({})", p.display("x")),
            Place::HypSplit { xpoly, y0 } => write!(w, "({}, y={})", xpoly.display("x"), y0),
            Place::HypInert(p) => write!(w, "inert({})", p.display("x")),
        }
    }
}

/// Formal Z-linear combination of places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    map: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Divisor {
        Divisor::default()
    }

    pub fn from_place(place: Place, mult: i64) -> Divisor {
        let mut d = Divisor::new();
        d.add_place(place, mult);
        d
    }

    pub fn add_place(&mut self, place: Place, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.map.entry(place.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.map.remove(&place);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.map.get(place).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, &m) in &other.map {
            out.add_place(p.clone(), m);
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            map: self.map.iter().map(|(p, &m)| (p.clone(), -m)).collect(),
        }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    fn pointwise(&self, other: &Divisor, op: impl Fn(i64, i64) -> i64) -> Divisor {
        let mut out = Divisor::new();
        for p in self.map.keys().chain(other.map.keys()) {
            if out.map.contains_key(p) {
                continue;
            }
            let m = op(self.coeff(p), other.coeff(p));
            out.add_place(p.clone(), m);
        }
        out
    }

    /// Pointwise maximum of coefficients.
    pub fn join(&self, other: &Divisor) -> Divisor {
        self.pointwise(other, i64::max)
    }

    /// Pointwise minimum of coefficients.
    pub fn meet(&self, other: &Divisor) -> Divisor {
        self.pointwise(other, i64::min)
    }

    pub fn degree(&self) -> i64 {
        self.map
            .iter()
            .map(|(p, &m)| m * p.degree() as i64)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.map.values().all(|&m| m >= 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.map.iter().map(|(p, &m)| (p, m))
    }

    pub fn support(&self) -> Vec<Place> {
        self.map.keys().cloned().collect()
    }
}

impl std::fmt::Display for Divisor {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.map.is_empty() {
            return write!(w, "0");
        }
        let parts: Vec<String> = self
            .map
            .iter()
            .map(|(p, m)| {
                if *m == 1 {
                    format!("{p}")
                } else {
                    format!("{m}*{p}")
                }
            })
            .collect();
        write!(w, "{}", parts.join(" + "))
    }
}

/// Element of the function field: (a + b y) / c with a, b, c in F_q[x],
/// c monic and gcd(a, b, c) = 1. On the rational model b is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionElt {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl FunctionElt {
    pub fn zero() -> FunctionElt {
        FunctionElt {
            a: Poly::zero(),
            b: Poly::zero(),
            c: Poly::one(),
        }
    }

    pub fn one() -> FunctionElt {
        FunctionElt {
            a: Poly::one(),
            b: Poly::zero(),
            c: Poly::one(),
        }
    }

    pub fn from_x_poly(a: Poly) -> FunctionElt {
        FunctionElt {
            a,
            b: Poly::zero(),
            c: Poly::one(),
        }
    }

    pub fn y() -> FunctionElt {
        FunctionElt {
            a: Poly::zero(),
            b: Poly::one(),
            c: Poly::one(),
        }
    }

    pub fn new(f: &FieldSpec, a: Poly, b: Poly, c: Poly) -> FunctionElt {
        FunctionElt { a, b, c }.canonical(f)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.degree() <= 0 && self.c.degree() == 0
    }

    fn canonical(mut self, f: &FieldSpec) -> FunctionElt {
        assert!(!self.c.is_zero(), "zero denominator");
        if self.is_zero() {
            return FunctionElt::zero();
        }
        let g = self.a.gcd(f, &self.b).gcd(f, &self.c);
        if g.degree() > 0 {
            self.a = self.a.divrem(f, &g).0;
            self.b = self.b.divrem(f, &g).0;
            self.c = self.c.divrem(f, &g).0;
        }
        let lead_inv = f.inv(self.c.leading()).unwrap();
        FunctionElt {
            a: self.a.scale(f, lead_inv),
            b: self.b.scale(f, lead_inv),
            c: self.c.monic(f),
        }
    }

    pub fn display(&self) -> String {
        let num = if self.b.is_zero() {
            self.a.display("x")
        } else if self.a.is_zero() {
            format!("({})y", self.b.display("x"))
        } else {
            format!("{}+({})y", self.a.display("x"), self.b.display("x"))
        };
        if self.c.degree() == 0 {
            num
        } else {
            format!("({})/({})", num, self.c.display("x"))
        }
    }
}

#[derive(Debug, Clone)]
pub enum ModelKind {
    Rational,
    Hyperelliptic {
        h: Poly,
    },
    PlaneAffine {
        poly: Poly2,
        declared_inf: u32,
        declared_genus: u32,
    },
}

/// A curve model over its constant field, with cached extension contexts.
#[derive(Clone)]
pub struct CurveModel {
    pub field: FieldSpec,
    pub kind: ModelKind,
    ext_cache: RefCell<HashMap<u32, Rc<ExtCtx>>>,
}

/// Local coordinate frame at a place: truncated expansions of x and y
/// over the residue field, reusable across functions.
pub struct Frame {
    pub ext: Rc<ExtCtx>,
    pub x: Ser,
    pub y: Option<Ser>,
}

impl CurveModel {
    pub fn rational(field: FieldSpec) -> CurveModel {
        CurveModel {
            field,
            kind: ModelKind::Rational,
            ext_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn hyperelliptic(field: FieldSpec, h: Poly) -> Result<CurveModel, CurveError> {
        if field.p() == 2 {
            return Err(CurveError::EvenCharacteristic);
        }
        if !(h.degree() == 3 || h.degree() == 4) {
            return Err(CurveError::UnsupportedDegree);
        }
        if !h.is_squarefree(&field) {
            return Err(CurveError::NotSquarefree);
        }
        Ok(CurveModel {
            field,
            kind: ModelKind::Hyperelliptic { h },
            ext_cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn plane_affine(
        field: FieldSpec,
        poly: Poly2,
        declared_inf: u32,
        declared_genus: u32,
    ) -> Result<CurveModel, CurveError> {
        if poly.is_zero() {
            return Err(CurveError::Parse("plane model equation is zero".into()));
        }
        Ok(CurveModel {
            field,
            kind: ModelKind::PlaneAffine {
                poly,
                declared_inf,
                declared_genus,
            },
        ext_cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn genus(&self) -> u32 {
        match &self.kind {
            ModelKind::Rational => 0,
            ModelKind::Hyperelliptic { .. } => 1,
            ModelKind::PlaneAffine { declared_genus, .. } => *declared_genus,
        }
    }

    pub fn h(&self) -> Option<&Poly> {
        match &self.kind {
            ModelKind::Hyperelliptic { h } => Some(h),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            ModelKind::Rational => "rational".into(),
            ModelKind::Hyperelliptic { h } => format!("y^2 = {}", h.display("x")),
            ModelKind::PlaneAffine {
                poly,
                declared_inf,
                declared_genus,
            } => {
                let terms: Vec<String> = poly
                    .ycoeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(i, p)| match i {
                        0 => p.display("x"),
                        1 => format!("({})y", p.display("x")),
                        i => format!("({})y^{i}", p.display("x")),
                    })
                    .collect();
                format!(
                    "{} = 0 (inf places: {declared_inf}, genus: {declared_genus})",
                    terms.join(" + ")
                )
            }
        }
    }

    pub fn get_ext(&self, e: u32) -> Result<Rc<ExtCtx>, CurveError> {
        if let Some(ctx) = self.ext_cache.borrow().get(&e) {
            return Ok(ctx.clone());
        }
        let ctx = Rc::new(ExtCtx::new(&self.field, e)?);
        self.ext_cache.borrow_mut().insert(e, ctx.clone());
        Ok(ctx)
    }

    /// The places at infinity (poles of x), for models that support
    /// function arithmetic.
    pub fn infinite_places(&self) -> Result<Vec<Place>, CurveError> {
        match &self.kind {
            ModelKind::Rational => Ok(vec![Place::RatInf]),
            ModelKind::Hyperelliptic { .. } => Ok(self.hyp_infinite_places()),
            ModelKind::PlaneAffine { .. } => Err(CurveError::UnsupportedModel),
        }
    }

    /// Infinite places of the hyperelliptic model.
    fn hyp_infinite_places(&self) -> Vec<Place> {
        let h = self.h().unwrap();
        if h.degree() == 3 {
            vec![Place::HypInfRam]
        } else if self.field.is_square(h.leading()) {
            vec![Place::HypInfSplit(0), Place::HypInfSplit(1)]
        } else {
            vec![Place::HypInfInert]
        }
    }

    /// Places of the hyperelliptic model lying over a monic irreducible.
    pub fn places_over(&self, xpoly: &Poly) -> Result<Vec<Place>, CurveError> {
        let h = self.h().ok_or(CurveError::UnsupportedModel)?;
        let e = xpoly.degree() as u32;
        let ctx = self.get_ext(e)?;
        let x0 = smallest_root_ext(xpoly, &ctx.ext, &ctx.emb)
            .expect("irreducible splits in the extension of its degree");
        let v = h.eval_ext(&ctx.ext, &ctx.emb, x0);
        if v == 0 {
            Ok(vec![Place::HypRam(xpoly.clone())])
        } else if ctx.ext.is_square(v) {
            let r = ctx.ext.sqrt(v).unwrap();
            Ok(vec![
                Place::HypSplit {
                    xpoly: xpoly.clone(),
                    y0: r,
                },
                Place::HypSplit {
                    xpoly: xpoly.clone(),
                    y0: ctx.ext.neg(r),
                },
            ])
        } else {
            Ok(vec![Place::HypInert(xpoly.clone())])
        }
    }

    /// All places of degree exactly `r` (supported for r <= 3), sorted.
    pub fn places_of_degree(&self, r: u32) -> Result<Vec<Place>, CurveError> {
        if r == 0 || r > 3 {
            return Err(CurveError::UnsupportedPlaceDegree(r));
        }
        let f = &self.field;
        let mut out = Vec::new();
        match &self.kind {
            ModelKind::Rational => {
                if r == 1 {
                    out.push(Place::RatInf);
                }
                for p in monic_irreducibles(f, r) {
                    out.push(Place::RatFinite(p));
                }
            }
            ModelKind::Hyperelliptic { .. } => {
                for p in self.hyp_infinite_places() {
                    if p.degree() == r {
                        out.push(p);
                    }
                }
                // affine places of degree r over irreducibles of degree r
                for xpoly in monic_irreducibles(f, r) {
                    for p in self.places_over(&xpoly)? {
                        if p.degree() == r {
                            out.push(p);
                        }
                    }
                }
                // inert places of degree r over irreducibles of degree r/2
                if r % 2 == 0 {
                    for xpoly in monic_irreducibles(f, r / 2) {
                        for p in self.places_over(&xpoly)? {
                            if matches!(p, Place::HypInert(_)) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
            ModelKind::PlaneAffine { .. } => return Err(CurveError::UnsupportedModel),
        }
        out.sort();
        Ok(out)
    }

    pub fn rational_places(&self) -> Result<Vec<Place>, CurveError> {
        self.places_of_degree(1)
    }

    /// Number of points rational over F_{q^r}.
    pub fn point_count(&self, r: u32) -> Result<u64, CurveError> {
        assert!(r >= 1);
        match &self.kind {
            ModelKind::Rational => {
                let ctx = self.get_ext(r)?;
                Ok(ctx.ext.q() as u64 + 1)
            }
            ModelKind::Hyperelliptic { h } => {
                let ctx = self.get_ext(r)?;
                let ext = &ctx.ext;
                let mut n = 0u64;
                for x in ext.elements() {
                    let v = h.eval_ext(ext, &ctx.emb, x);
                    if v == 0 {
                        n += 1;
                    } else if ext.is_square(v) {
                        n += 2;
                    }
                }
                if h.degree() == 3 {
                    n += 1;
                } else if ext.is_square(ctx.emb.apply(h.leading())) {
                    n += 2;
                }
                Ok(n)
            }
            ModelKind::PlaneAffine {
                poly, declared_inf, ..
            } => {
                let ctx = self.get_ext(r)?;
                let ext = &ctx.ext;
                let mut n = 0u64;
                for x in ext.elements() {
                    for y in ext.elements() {
                        if poly.eval_ext(ext, &ctx.emb, x, y) == 0 {
                            n += 1;
                        }
                    }
                }
                // declared infinite places are rational over every extension
                Ok(n + *declared_inf as u64)
            }
        }
    }

    // ---- function arithmetic ----

    pub fn fn_add(&self, f1: &FunctionElt, f2: &FunctionElt) -> FunctionElt {
        let f = &self.field;
        let a = f1.a.mul(f, &f2.c).add(f, &f2.a.mul(f, &f1.c));
        let b = f1.b.mul(f, &f2.c).add(f, &f2.b.mul(f, &f1.c));
        FunctionElt {
            a,
            b,
            c: f1.c.mul(f, &f2.c),
        }
        .canonical(f)
    }

    pub fn fn_neg(&self, f1: &FunctionElt) -> FunctionElt {
        let f = &self.field;
        FunctionElt {
            a: f1.a.neg(f),
            b: f1.b.neg(f),
            c: f1.c.clone(),
        }
    }

    pub fn fn_sub(&self, f1: &FunctionElt, f2: &FunctionElt) -> FunctionElt {
        self.fn_add(f1, &self.fn_neg(f2))
    }

    pub fn fn_mul(&self, f1: &FunctionElt, f2: &FunctionElt) -> FunctionElt {
        let f = &self.field;
        let (a, b) = match self.h() {
            Some(h) => (
                f1.a.mul(f, &f2.a).add(f, &f1.b.mul(f, &f2.b).mul(f, h)),
                f1.a.mul(f, &f2.b).add(f, &f1.b.mul(f, &f2.a)),
            ),
            None => {
                debug_assert!(f1.b.is_zero() && f2.b.is_zero());
                (f1.a.mul(f, &f2.a), Poly::zero())
            }
        };
        FunctionElt {
            a,
            b,
            c: f1.c.mul(f, &f2.c),
        }
        .canonical(f)
    }

    pub fn fn_scale(&self, f1: &FunctionElt, s: u16) -> FunctionElt {
        let f = &self.field;
        FunctionElt {
            a: f1.a.scale(f, s),
            b: f1.b.scale(f, s),
            c: f1.c.clone(),
        }
        .canonical(f)
    }

    /// Multiplicative inverse; None for the zero function.
    pub fn fn_inv(&self, f1: &FunctionElt) -> Option<FunctionElt> {
        if f1.is_zero() {
            return None;
        }
        let f = &self.field;
        match self.h() {
            Some(h) => {
                // 1/((a+by)/c) = c (a - b y) / (a^2 - b^2 h)
                let norm = f1.a.mul(f, &f1.a).sub(f, &f1.b.mul(f, &f1.b).mul(f, h));
                assert!(!norm.is_zero(), "y is not rational in x");
                Some(
                    FunctionElt {
                        a: f1.c.mul(f, &f1.a),
                        b: f1.c.mul(f, &f1.b).neg(f),
                        c: norm,
                    }
                    .canonical(f),
                )
            }
            None => Some(
                FunctionElt {
                    a: f1.c.clone(),
                    b: Poly::zero(),
                    c: f1.a.clone(),
                }
                .canonical(f),
            ),
        }
    }

    /// Norm down to F_q(x): (a + by)(a - by) = a^2 - b^2 h.
    pub fn fn_norm_numer(&self, f1: &FunctionElt) -> Poly {
        let f = &self.field;
        match self.h() {
            Some(h) => f1.a.mul(f, &f1.a).sub(f, &f1.b.mul(f, &f1.b).mul(f, h)),
            None => f1.a.mul(f, &f1.a),
        }
    }

    // ---- local expansions ----

    /// Build a coordinate frame at `place` with internal precision `prec`.
    pub fn frame(&self, place: &Place, prec: i64) -> Result<Frame, CurveError> {
        let p = prec.max(4);
        match place {
            Place::RatInf => {
                let ext = self.get_ext(1)?;
                Ok(Frame {
                    ext,
                    x: Ser::monomial(1, -1, p),
                    y: None,
                })
            }
            Place::RatFinite(xpoly) => {
                let ext = self.get_ext(xpoly.degree() as u32)?;
                let x0 = smallest_root_ext(xpoly, &ext.ext, &ext.emb).unwrap();
                let x = finite_coordinate(&ext.ext, x0, p);
                Ok(Frame { ext, x, y: None })
            }
            Place::HypSplit { xpoly, y0 } => {
                let ext = self.get_ext(xpoly.degree() as u32)?;
                let x0 = smallest_root_ext(xpoly, &ext.ext, &ext.emb).unwrap();
                let x = finite_coordinate(&ext.ext, x0, p);
                let hx = x.compose_poly(&ext.ext, &self.h().unwrap().lift(&ext.emb));
                let y = hx.sqrt(&ext.ext, *y0);
                Ok(Frame { ext, x, y: Some(y) })
            }
            Place::HypInert(xpoly) => {
                let ext = self.get_ext(2 * xpoly.degree() as u32)?;
                let x0 = smallest_root_ext(xpoly, &ext.ext, &ext.emb).unwrap();
                let x = finite_coordinate(&ext.ext, x0, p);
                let hx = x.compose_poly(&ext.ext, &self.h().unwrap().lift(&ext.emb));
                let y0 = ext.ext.sqrt(hx.coeff(0)).unwrap();
                let y = hx.sqrt(&ext.ext, y0);
                Ok(Frame { ext, x, y: Some(y) })
            }
            Place::HypRam(xpoly) => {
                // uniformizer t = y; x(t) solves h(x) = t^2 with x(0) = x0
                let ext = self.get_ext(xpoly.degree() as u32)?;
                let x0 = smallest_root_ext(xpoly, &ext.ext, &ext.emb).unwrap();
                let x = self.newton_ramified_x(&ext, x0, p);
                Ok(Frame {
                    ext,
                    x,
                    y: Some(Ser::monomial(1, 1, p)),
                })
            }
            Place::HypInfSplit(branch) => {
                let ext = self.get_ext(1)?;
                let (x, y) = self.infinite_split_frame(&ext, Some(*branch), p);
                Ok(Frame { ext, x, y: Some(y) })
            }
            Place::HypInfInert => {
                let ext = self.get_ext(2)?;
                let (x, y) = self.infinite_split_frame(&ext, None, p);
                Ok(Frame { ext, x, y: Some(y) })
            }
            Place::HypInfRam => {
                let ext = self.get_ext(1)?;
                let (x, y) = self.infinite_ramified_frame(&ext, p);
                Ok(Frame { ext, x, y: Some(y) })
            }
            Place::PlaneInf(_) => Err(CurveError::UnsupportedModel),
        }
    }

    fn newton_ramified_x(&self, ctx: &ExtCtx, x0: u16, prec: i64) -> Ser {
        let ext = &ctx.ext;
        let h = self.h().unwrap().lift(&ctx.emb);
        let hp = self.h().unwrap().derivative(&self.field).lift(&ctx.emb);
        let t2 = Ser::monomial(1, 2, prec);
        let mut x = Ser::constant(x0, prec);
        for _ in 0..200 {
            let fx = x.compose_poly(ext, &h).sub(ext, &t2);
            if fx.is_zero() {
                return x;
            }
            let step = fx.div(ext, &x.compose_poly(ext, &hp));
            x = x.sub(ext, &step);
        }
        panic!("ramified frame iteration did not converge");
    }

    /// Frame at a non-ramified infinite place of a degree-4 model:
    /// t = 1/x, y = t^{-2} sqrt(h_4 + h_3 t + h_2 t^2 + h_1 t^3 + h_0 t^4).
    fn infinite_split_frame(&self, ctx: &ExtCtx, branch: Option<u8>, prec: i64) -> (Ser, Ser) {
        let ext = &ctx.ext;
        let h = self.h().unwrap();
        let rev: Vec<u16> = h.coeffs.iter().rev().map(|&c| ctx.emb.apply(c)).collect();
        let s = Ser {
            ord: 0,
            co: rev,
            prec,
        }
        .normalize();
        let lead = s.coeff(0);
        let root = ext.sqrt(lead).unwrap();
        let root = match branch {
            Some(0) | None => root,
            Some(_) => ext.neg(root),
        };
        let w = s.sqrt(ext, root);
        (Ser::monomial(1, -1, prec), w.shift(-2))
    }

    /// Frame at the infinite place of a degree-3 model: t = x/y,
    /// x = t^{-2} w, y = t^{-3} w with w solving
    /// w^2 = h_3 w^3 + h_2 t^2 w^2 + h_1 t^4 w + h_0 t^6, w(0) = 1/h_3.
    fn infinite_ramified_frame(&self, ctx: &ExtCtx, prec: i64) -> (Ser, Ser) {
        let ext = &ctx.ext;
        let hc: Vec<u16> = self
            .h()
            .unwrap()
            .coeffs
            .iter()
            .map(|&c| ctx.emb.apply(c))
            .collect();
        let (h0, h1, h2, h3) = (hc[0], hc[1], hc[2], hc[3]);
        let two = ext.from_int(2);
        let three = ext.from_int(3);
        let t2 = Ser::monomial(1, 2, prec);
        let t4 = Ser::monomial(1, 4, prec);
        let t6 = Ser::monomial(1, 6, prec);
        let mut w = Ser::constant(ext.inv(h3).unwrap(), prec);
        for _ in 0..200 {
            let w2 = w.mul(ext, &w);
            let w3 = w2.mul(ext, &w);
            let fw = w3
                .scale(ext, h3)
                .add(ext, &t2.mul(ext, &w2).scale(ext, h2))
                .add(ext, &t4.mul(ext, &w).scale(ext, h1))
                .add(ext, &t6.scale(ext, h0))
                .sub(ext, &w2);
            if fw.is_zero() {
                break;
            }
            let fpw = w2
                .scale(ext, ext.mul(three, h3))
                .add(ext, &t2.mul(ext, &w).scale(ext, ext.mul(two, h2)))
                .add(ext, &t4.scale(ext, h1))
                .sub(ext, &w.scale(ext, two));
            w = w.sub(ext, &fw.div(ext, &fpw));
        }
        (w.shift(-2), w.shift(-3))
    }

    /// Expand a function in a frame. None when the denominator expansion
    /// carries no known nonzero term (precision too small).
    pub fn expand_in(&self, frame: &Frame, f: &FunctionElt) -> Option<Ser> {
        let ext = &frame.ext.ext;
        let emb = &frame.ext.emb;
        let mut num = frame.x.compose_poly(ext, &f.a.lift(emb));
        if !f.b.is_zero() {
            let y = frame
                .y
                .as_ref()
                .expect("function uses y on a model without it");
            num = num.add(ext, &frame.x.compose_poly(ext, &f.b.lift(emb)).mul(ext, y));
        }
        let den = frame.x.compose_poly(ext, &f.c.lift(emb));
        if den.is_zero() {
            return None;
        }
        Some(num.div(ext, &den))
    }

    fn expand_slack(f: &FunctionElt) -> i64 {
        let d = f.a.degree().max(0) + f.b.degree().max(0) + f.c.degree().max(0);
        2 * (d + 6)
    }

    /// Expansion of `f` at `place` in the canonical uniformizer, valid
    /// for exponents < prec (prec <= MAX_PREC).
    pub fn local_expand(
        &self,
        place: &Place,
        f: &FunctionElt,
        prec: i64,
    ) -> Result<Ser, CurveError> {
        if prec > MAX_PREC {
            return Err(CurveError::PrecisionExceeded(prec));
        }
        let frame = self.frame(place, prec + Self::expand_slack(f))?;
        let mut s = self
            .expand_in(&frame, f)
            .ok_or(CurveError::PrecisionExceeded(prec))?;
        debug_assert!(s.prec >= prec, "internal precision slack too small");
        s.prec = s.prec.min(prec);
        Ok(s.normalize())
    }

    fn default_prec(f: &FunctionElt) -> i64 {
        let d = f.a.degree().max(0) + f.b.degree().max(0) + f.c.degree().max(0);
        (2 * d + 8).min(MAX_PREC)
    }

    /// Valuation without series work when no cancellation can occur;
    /// None when a local expansion is required.
    fn valuation_fast(&self, place: &Place, f: &FunctionElt) -> Result<Option<i64>, CurveError> {
        let fq = &self.field;
        match place {
            Place::RatFinite(p) => {
                Ok(Some(f.a.ord_at(fq, p) as i64 - f.c.ord_at(fq, p) as i64))
            }
            Place::RatInf => Ok(Some(f.c.degree() - f.a.degree())),
            Place::HypSplit { xpoly, .. } | Place::HypRam(xpoly) | Place::HypInert(xpoly) => {
                let ram = matches!(place, Place::HypRam(_));
                let mult = if ram { 2 } else { 1 };
                let c_ord = mult * f.c.ord_at(fq, xpoly) as i64;
                let e = match place {
                    Place::HypInert(_) => 2 * xpoly.degree() as u32,
                    _ => xpoly.degree() as u32,
                };
                let ctx = self.get_ext(e)?;
                let x0 = smallest_root_ext(xpoly, &ctx.ext, &ctx.emb).unwrap();
                let av = f.a.eval_ext(&ctx.ext, &ctx.emb, x0);
                if ram {
                    // y vanishes here; a nonzero unit part decides
                    return Ok(if av != 0 { Some(-c_ord) } else { None });
                }
                let yv = match place {
                    Place::HypSplit { y0, .. } => *y0,
                    _ => {
                        let hv = self.h().unwrap().eval_ext(&ctx.ext, &ctx.emb, x0);
                        ctx.ext.sqrt(hv).unwrap()
                    }
                };
                let bv = f.b.eval_ext(&ctx.ext, &ctx.emb, x0);
                let nv = ctx.ext.add(av, ctx.ext.mul(bv, yv));
                Ok(if nv != 0 { Some(-c_ord) } else { None })
            }
            Place::HypInfRam => {
                // v(x^j) = -2j, v(x^j y) = -2j - 3: parities never collide
                let va = if f.a.is_zero() {
                    i64::MAX
                } else {
                    -2 * f.a.degree()
                };
                let vb = if f.b.is_zero() {
                    i64::MAX
                } else {
                    -2 * f.b.degree() - 3
                };
                Ok(Some(va.min(vb) + 2 * f.c.degree()))
            }
            Place::HypInfSplit(_) | Place::HypInfInert => {
                let da = f.a.degree();
                let db2 = f.b.degree() + 2;
                let vnum = if f.b.is_zero() {
                    -da
                } else if f.a.is_zero() || da != db2 {
                    -da.max(db2)
                } else {
                    // matching leading orders: check for cancellation
                    let lc = self.h().unwrap().leading();
                    let lead = match place {
                        Place::HypInfSplit(br) => {
                            let r = fq.sqrt(lc).unwrap();
                            let r = if *br == 0 { r } else { fq.neg(r) };
                            fq.add(f.a.leading(), fq.mul(f.b.leading(), r))
                        }
                        _ => {
                            let ctx = self.get_ext(2)?;
                            let r = ctx.ext.sqrt(ctx.emb.apply(lc)).unwrap();
                            ctx.ext.add(
                                ctx.emb.apply(f.a.leading()),
                                ctx.ext.mul(ctx.emb.apply(f.b.leading()), r),
                            )
                        }
                    };
                    if lead == 0 {
                        return Ok(None);
                    }
                    -da
                };
                Ok(Some(vnum + f.c.degree()))
            }
            Place::PlaneInf(_) => Err(CurveError::UnsupportedModel),
        }
    }

    /// Valuation of `f` at `place`; VAL_INF for the zero function.
    pub fn valuation(&self, place: &Place, f: &FunctionElt) -> Result<i64, CurveError> {
        if f.is_zero() {
            return Ok(VAL_INF);
        }
        if let Some(v) = self.valuation_fast(place, f)? {
            return Ok(v);
        }
        let mut prec = Self::default_prec(f);
        loop {
            let s = self.local_expand(place, f, prec)?;
            if let Some(v) = s.valuation() {
                return Ok(v);
            }
            if prec >= MAX_PREC {
                return Err(CurveError::PrecisionExceeded(prec));
            }
            prec = (prec * 2).min(MAX_PREC);
        }
    }

    /// Evaluation at a degree-1 affine place with a unit denominator,
    /// without series work; None when an expansion is required.
    pub fn evaluate_fast(&self, place: &Place, f: &FunctionElt) -> Option<Sym> {
        let fq = &self.field;
        let (x0, y0) = match place {
            Place::RatFinite(p) if p.degree() == 1 => (fq.neg(p.coeffs[0]), 0),
            Place::HypSplit { xpoly, y0 } if xpoly.degree() == 1 => {
                (fq.neg(xpoly.coeffs[0]), *y0)
            }
            Place::HypRam(p) if p.degree() == 1 => (fq.neg(p.coeffs[0]), 0),
            _ => return None,
        };
        let cv = f.c.eval(fq, x0);
        if cv == 0 {
            return None;
        }
        let num = fq.add(f.a.eval(fq, x0), fq.mul(f.b.eval(fq, x0), y0));
        Some(Sym::Fin(fq.div(num, cv).unwrap()))
    }

    /// Value of `f` at a rational place, as a symbol of F_q ∪ {inf}.
    pub fn evaluate(&self, place: &Place, f: &FunctionElt) -> Result<Sym, CurveError> {
        if place.degree() != 1 {
            return Err(CurveError::UnsupportedPlaceDegree(place.degree()));
        }
        if let Some(v) = self.evaluate_fast(place, f) {
            return Ok(v);
        }
        if f.is_zero() {
            return Ok(Sym::Fin(0));
        }
        let s = self.local_expand(place, f, Self::default_prec(f))?;
        Ok(match s.valuation() {
            Some(v) if v < 0 => Sym::Inf,
            Some(0) => Sym::Fin(s.coeff(0)),
            // positive or unknown valuation: the value is 0
            _ => Sym::Fin(0),
        })
    }

    /// Principal divisor (f) = (zeros) - (poles); requires every factor
    /// of the numerator norm and denominator to have degree <= 3.
    pub fn principal_divisor(&self, f: &FunctionElt) -> Result<Divisor, CurveError> {
        if f.is_zero() {
            return Err(CurveError::ZeroFunction);
        }
        let fq = &self.field;
        let mut div = Divisor::new();
        match &self.kind {
            ModelKind::Rational => {
                for (p, m) in factor_all(fq, &f.a)? {
                    div.add_place(Place::RatFinite(p), m as i64);
                }
                for (p, m) in factor_all(fq, &f.c)? {
                    div.add_place(Place::RatFinite(p), -(m as i64));
                }
                div.add_place(Place::RatInf, f.c.degree() - f.a.degree());
            }
            ModelKind::Hyperelliptic { .. } => {
                let norm = self.fn_norm_numer(f);
                let mut supp: Vec<Poly> = factor_all(fq, &norm)?
                    .into_iter()
                    .map(|(p, _)| p)
                    .collect();
                for (p, _) in factor_all(fq, &f.c)? {
                    if !supp.contains(&p) {
                        supp.push(p);
                    }
                }
                for xpoly in supp {
                    for place in self.places_over(&xpoly)? {
                        let v = self.valuation(&place, f)?;
                        div.add_place(place, v);
                    }
                }
                for place in self.hyp_infinite_places() {
                    let v = self.valuation(&place, f)?;
                    div.add_place(place, v);
                }
            }
            ModelKind::PlaneAffine { .. } => return Err(CurveError::UnsupportedModel),
        }
        Ok(div)
    }

    /// Parse a curve description: "rational", "y2=RHS(x)", or
    /// "affine:EQUATION(x,y):inf=K[:g=G]".
    pub fn parse(field: &FieldSpec, desc: &str) -> Result<CurveModel, CurveError> {
        let desc = desc.trim();
        if desc == "rational" {
            return Ok(CurveModel::rational(field.clone()));
        }
        if let Some(rhs) = desc.strip_prefix("y2=") {
            let p2 = parse_poly2(field, rhs).map_err(CurveError::Parse)?;
            if p2.ycoeffs.len() > 1 {
                return Err(CurveError::Parse(
                    "right-hand side of y2= must not involve y".into(),
                ));
            }
            let h = p2.ycoeffs.into_iter().next().unwrap_or_else(Poly::zero);
            return CurveModel::hyperelliptic(field.clone(), h);
        }
        if let Some(rest) = desc.strip_prefix("affine:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.is_empty() {
                return Err(CurveError::Parse("missing plane equation".into()));
            }
            let eqn = parts[0];
            let poly = match eqn.split_once('=') {
                Some((lhs, rhs)) => {
                    let l = parse_poly2(field, lhs).map_err(CurveError::Parse)?;
                    let r = parse_poly2(field, rhs).map_err(CurveError::Parse)?;
                    l.sub(field, &r)
                }
                None => parse_poly2(field, eqn).map_err(CurveError::Parse)?,
            };
            let mut declared_inf = None;
            let mut declared_genus = 0u32;
            for part in &parts[1..] {
                if let Some(v) = part.strip_prefix("inf=") {
                    declared_inf =
                        Some(v.parse().map_err(|_| {
                            CurveError::Parse(format!("bad inf count: {v}"))
                        })?);
                } else if let Some(v) = part.strip_prefix("g=") {
                    declared_genus = v
                        .parse()
                        .map_err(|_| CurveError::Parse(format!("bad genus: {v}")))?;
                } else {
                    return Err(CurveError::Parse(format!("unknown option: {part}")));
                }
            }
            let declared_inf = declared_inf
                .ok_or_else(|| CurveError::Parse("affine model requires inf=K".into()))?;
            return CurveModel::plane_affine(field.clone(), poly, declared_inf, declared_genus);
        }
        Err(CurveError::Parse(format!("unrecognized curve: {desc}")))
    }
}

/// x as a series at a finite place centered at x0 (uniformizer t = x - x0).
fn finite_coordinate(ext: &FieldSpec, x0: u16, prec: i64) -> Ser {
    Ser::constant(x0, prec).add(ext, &Ser::monomial(1, 1, prec))
}

/// Full factorization into monic irreducibles of degree <= 3 with
/// multiplicities; constants factor to nothing.
pub fn factor_all(f: &FieldSpec, poly: &Poly) -> Result<Vec<(Poly, u32)>, CurveError> {
    if poly.is_zero() {
        return Ok(Vec::new());
    }
    let mut rem = poly.monic(f);
    let mut out = Vec::new();
    for d in 1..=3u32 {
        if rem.degree() < d as i64 {
            break;
        }
        for cand in monic_irreducibles(f, d) {
            if rem.degree() < d as i64 {
                break;
            }
            let m = rem.ord_at(f, &cand);
            if m > 0 {
                for _ in 0..m {
                    rem = rem.divrem(f, &cand).0;
                }
                out.push((cand, m));
            }
        }
    }
    if rem.degree() > 0 {
        return Err(CurveError::UnsupportedFactor);
    }
    Ok(out)
}

// ---- expression parser for bivariate polynomials ----

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    field: &'a FieldSpec,
}

pub fn parse_poly2(field: &FieldSpec, src: &str) -> Result<Poly2, String> {
    let mut p = Parser {
        bytes: src.as_bytes(),
        pos: 0,
        field,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(format!("trailing input at byte {}", p.pos));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly2, String> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.neg(self.field)
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(self.field, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(self.field, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.factor()?;
                    acc = acc.mul(self.field, &t);
                }
                // implicit product: "3x", "x(x+1)"
                Some(c) if c == b'(' || c == b'x' || c == b'y' || c.is_ascii_digit() => {
                    let t = self.factor()?;
                    acc = acc.mul(self.field, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly2, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            return Ok(base.pow(self.field, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly2, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("expected ')'".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly2::from_x(Poly::x()))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Poly2::y())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Poly2::from_x(Poly::constant(self.field.from_int(n as i64))))
            }
            other => Err(format!("unexpected input: {:?}", other.map(|c| c as char))),
        }
    }

    fn uint(&mut self) -> Result<u32, String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err("expected an integer".into());
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| "integer out of range".into())
    }
}
