//! Exact arithmetic in small finite fields F_{p^k}, p^k <= 2^14.
//!
//! Elements are plain `u16` indices: the coefficient vector of the
//! residue class encoded base p (c_0 + c_1*p + ...). Index 0 is the
//! additive identity and index 1 the multiplicative identity, and
//! enumeration order is strictly increasing index. Moduli are fixed by
//! a shipped table so every output of the library is byte-reproducible.

use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 14;

const MODULI_TABLE: &str = include_str!("gf_moduli.txt");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0}^{1} exceeds the supported range")]
    UnsupportedSize(u64, u32),
    #[error("shipped modulus for ({0},{1}) is reducible; modulus table is corrupted")]
    ReducibleModulus(u64, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no embedding: subfield degree does not divide extension degree")]
    NoEmbedding,
}

/// A concrete small finite field F_{p^k} with a fixed monic irreducible
/// modulus and fixed element enumeration order.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u16,
    k: u8,
    q: u16,
    /// Monic modulus, length k+1, coefficients in [0, p).
    modulus: Vec<u16>,
    /// exp[i] = g^i for a fixed generator g, length q-1.
    exp: Vec<u16>,
    /// log[e] for e in 1..q; log[0] is unused.
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Build F_{p^k} with the shipped modulus for (p, k).
    pub fn make(p: u64, k: u32) -> Result<FieldSpec, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if k < 1 || p.checked_pow(k).map_or(true, |q| q > MAX_FIELD_ORDER as u64) {
            return Err(GfError::UnsupportedSize(p, k));
        }
        let q = p.pow(k) as u16;
        let modulus: Vec<u16> = if k == 1 {
            vec![0, 1] // x: the prime field itself
        } else {
            lookup_modulus(p as u16, k as u8).ok_or(GfError::UnsupportedSize(p, k))?
        };
        let mut spec = FieldSpec {
            p: p as u16,
            k: k as u8,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if k > 1 && !spec.modulus_is_irreducible() {
            return Err(GfError::ReducibleModulus(p, k));
        }
        spec.build_log_tables();
        Ok(spec)
    }

    pub fn p(&self) -> u16 {
        self.p
    }
    pub fn k(&self) -> u8 {
        self.k
    }
    pub fn q(&self) -> u16 {
        self.q
    }
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q
    }

    fn digits(&self, e: u16) -> Vec<u16> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut e = e;
        for _ in 0..self.k {
            v.push(e % self.p);
            e /= self.p;
        }
        v
    }

    fn from_digits(&self, d: &[u16]) -> u16 {
        let mut e = 0u32;
        for &c in d.iter().rev() {
            e = e * self.p as u32 + c as u32;
        }
        e as u16
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u16> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    pub fn neg(&self, a: u16) -> u16 {
        if self.p == 2 {
            return a;
        }
        let da = self.digits(a);
        let nd: Vec<u16> = da.iter().map(|x| (self.p - x) % self.p).collect();
        self.from_digits(&nd)
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplication by raw coefficient-vector convolution mod the modulus.
    fn mul_raw(&self, a: u16, b: u16) -> u16 {
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] += x as u32 * y as u32;
            }
        }
        // reduce mod modulus (monic)
        for i in (k..2 * k - 1).rev() {
            let c = prod[i] % self.p as u32;
            if c != 0 {
                let c = (self.p as u32 - c) % self.p as u32; // subtract c * x^{i-k} * modulus
            for (j, &m) in self.modulus.iter().enumerate().take(k) {
                    prod[i - k + j] += c * m as u32;
                }
            }
            prod[i] = 0;
        }
        let out: Vec<u16> = prod[..k].iter().map(|&c| (c % self.p as u32) as u16).collect();
        self.from_digits(&out)
    }

    fn build_log_tables(&mut self) {
        let q = self.q as usize;
        // find a generator of the multiplicative group
        let order = (q - 1) as u32;
        'cand: for g in 1..self.q {
            let mut seen = 0u32;
            let mut x = 1u16;
            loop {
                x = self.mul_raw(x, g);
                seen += 1;
                if x == 1 {
                    break;
                }
                if seen > order {
                    break;
                }
            }
            if seen == order {
                let mut exp = Vec::with_capacity(q - 1);
                let mut log = vec![0u32; q];
                let mut x = 1u16;
                for i in 0..order {
                    exp.push(x);
                    log[x as usize] = i;
                    x = self.mul_raw(x, g);
                }
                self.exp = exp;
                self.log = log;
                return;
            }
            continue 'cand;
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = (self.q - 1) as u32;
        let l = (self.log[a as usize] + self.log[b as usize]) % order;
        self.exp[l as usize]
    }

    pub fn inv(&self, a: u16) -> Result<u16, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let order = (self.q - 1) as u32;
        let l = (order - self.log[a as usize]) % order;
        Ok(self.exp[l as usize])
    }

    pub fn div(&self, a: u16, b: u16) -> Result<u16, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; negative exponents invert first.
    pub fn pow(&self, a: u16, e: i64) -> Result<u16, GfError> {
        if e == 0 {
            return Ok(1);
        }
        let (mut base, mut e) = if e < 0 {
            (self.inv(a)?, (-e) as u64)
        } else {
            (a, e as u64)
        };
        if base == 0 {
            return Ok(0);
        }
        let mut acc = 1u16;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Lift a prime-field residue (integer) to an element.
    pub fn from_int(&self, n: i64) -> u16 {
        let r = n.rem_euclid(self.p as i64) as u16;
        r
    }

    pub fn is_square(&self, e: u16) -> bool {
        if e == 0 || self.p == 2 {
            return true;
        }
        self.log[e as usize] % 2 == 0
    }

    /// Square root, when one exists; returns the root with the smaller index.
    pub fn sqrt(&self, e: u16) -> Option<u16> {
        if e == 0 {
            return Some(0);
        }
        if self.p == 2 {
            // e -> e^{q/2} squares back to e
            return Some(self.pow(e, self.q as i64 / 2).unwrap());
        }
        let l = self.log[e as usize];
        if l % 2 != 0 {
            return None;
        }
        let order = (self.q - 1) as u32;
        let r = self.exp[(l / 2) as usize];
        let r2 = self.exp[((l / 2 + order / 2) % order) as usize];
        Some(r.min(r2))
    }

    /// e^{q_sub}, the Frobenius relative to the subfield of order q_sub.
    pub fn frobenius(&self, e: u16, q_sub: u16) -> u16 {
        self.pow(e, q_sub as i64).unwrap()
    }

    fn modulus_is_irreducible(&self) -> bool {
        // trial factorization: no monic factor of degree 1..k/2
        let k = self.k as usize;
        let p = self.p as u64;
        for d in 1..=k / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                // candidate monic poly of degree d
                let mut cand: Vec<u16> = (0..d)
                    .map(|i| ((idx / p.pow(i as u32)) % p) as u16)
                    .collect();
                cand.push(1);
                if poly_divides_mod_p(&cand, &self.modulus, self.p) {
                    return false;
                }
            }
        }
        true
    }
}

/// Does `a` (monic) divide `b` over F_p?
fn poly_divides_mod_p(a: &[u16], b: &[u16], p: u16) -> bool {
    let mut r: Vec<u16> = b.to_vec();
    let da = a.len() - 1;
    while r.len() > da {
        let c = *r.last().unwrap();
        if c != 0 {
            let off = r.len() - 1 - da;
            for (i, &ai) in a.iter().enumerate() {
                let t = (r[off + i] + p - (c * ai) % p) % p;
                r[off + i] = t;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn lookup_modulus(p: u16, k: u8) -> Option<Vec<u16>> {
    for line in MODULI_TABLE.lines() {
        let mut it = line.split_whitespace();
        let lp: u16 = it.next()?.parse().ok()?;
        let lk: u8 = it.next().and_then(|s| s.parse().ok())?;
        if lp == p && lk == k {
            let coeffs: Vec<u16> = it.map(|s| s.parse().unwrap()).collect();
            return Some(coeffs);
        }
    }
    None
}

/// A fixed ring-homomorphic injection of `sub` into `sup`.
///
/// The image of sub's generator is the root of sub's modulus in sup with
/// the smallest index, which makes the embedding deterministic.
#[derive(Debug, Clone)]
pub struct Embedding {
    /// table[e] = image of e, for every e of the subfield.
    table: Vec<u16>,
}

impl Embedding {
    pub fn new(sub: &FieldSpec, sup: &FieldSpec) -> Result<Embedding, GfError> {
        if sub.p != sup.p || sup.k % sub.k != 0 {
            return Err(GfError::NoEmbedding);
        }
        if sub.k == sup.k {
            // identical spec (moduli are fixed per (p,k)), identity map
            return Ok(Embedding {
                table: (0..sub.q).collect(),
            });
        }
        // smallest-index root of sub's modulus in sup
        let root = sup
            .elements()
            .find(|&r| {
                let mut acc = 0u16;
                // evaluate sub.modulus at r inside sup (coefficients are prime-field)
                for &c in sub.modulus.iter().rev() {
                    acc = sup.add(sup.mul(acc, r), c % sup.p);
                }
                acc == 0
            })
            .expect("modulus splits in every extension of matching degree");
        let mut table = Vec::with_capacity(sub.q as usize);
        for e in sub.elements() {
            let digits = sub.digits(e);
            let mut acc = 0u16;
            for &c in digits.iter().rev() {
                acc = sup.add(sup.mul(acc, root), c);
            }
            table.push(acc);
        }
        Ok(Embedding { table })
    }

    pub fn apply(&self, e: u16) -> u16 {
        self.table[e as usize]
    }
}
