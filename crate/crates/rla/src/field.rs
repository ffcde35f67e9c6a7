//! Exact arithmetic in GF(p^k) with p^k <= 2^16.
//!
//! A scalar is the vector of its k residues in [0, p), packed positionally
//! into one `u16` code (base-p digits, constant term least significant).
//! The field is F_p[x] / (m) for a monic irreducible modulus m of degree k;
//! by default m is the least such polynomial under the packed-code order.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Packed residue-vector code of a field element.
pub type Scalar = u16;

/// Largest q for which multiplication/inverse/Frobenius tables are built.
const TABLE_Q_MAX: u32 = 1024;

struct Repr {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, `modulus[i]` = coefficient of x^i, length k+1.
    modulus: Vec<u32>,
    mul_tab: Option<Vec<Scalar>>,
    inv_tab: Option<Vec<Scalar>>,
    frob_tab: Option<Vec<Scalar>>,
}

/// Handle to a finite field GF(p^k). Cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<Repr>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

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

fn reduce_mod(c: i64, p: u32) -> u32 {
    (c.rem_euclid(p as i64)) as u32
}

// Dense polynomials over GF(p), index = degree.

fn pdeg(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn ptrim(mut f: Vec<u32>) -> Vec<u32> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Remainder of a modulo the monic polynomial m.
fn prem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let md = pdeg(m).expect("modulus is nonzero");
    let mut r: Vec<u32> = a.to_vec();
    while let Some(d) = pdeg(&r) {
        if d < md {
            break;
        }
        let c = r[d];
        for i in 0..=md {
            let idx = d - md + i;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * m[i] as u64) % p as u64) as u32;
        }
    }
    ptrim(r)
}

fn pdivides(p: u32, g: &[u32], f: &[u32]) -> bool {
    prem(p, f, g).is_empty()
}

/// True when the monic polynomial f of degree >= 1 has no monic divisor of
/// degree 1..=deg(f)/2 over GF(p).
fn pirreducible(p: u32, f: &[u32]) -> bool {
    let d = match pdeg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if f[0] == 0 && d > 1 {
        return false;
    }
    for gd in 1..=d / 2 {
        let count = (p as u64).pow(gd as u32);
        for code in 0..count {
            let mut g = vec![0u32; gd + 1];
            let mut c = code;
            for gi in g.iter_mut().take(gd) {
                *gi = (c % p as u64) as u32;
                c /= p as u64;
            }
            g[gd] = 1;
            if pdivides(p, &g, f) {
                return false;
            }
        }
    }
    true
}

/// Least (by packed code of the k low-order coefficients) monic irreducible
/// polynomial of degree k over GF(p).
fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        // GF(p) itself; the modulus x is never used in arithmetic.
        return vec![0, 1];
    }
    let total = (p as u64).pow(k);
    for code in 0..total {
        let mut m = vec![0u32; k as usize + 1];
        let mut c = code;
        for mi in m.iter_mut().take(k as usize) {
            *mi = (c % p as u64) as u32;
            c /= p as u64;
        }
        m[k as usize] = 1;
        if pirreducible(p, &m) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

fn build_tables(r: &mut Repr) {
    let q = r.q as usize;
    let mut mul = vec![0 as Scalar; q * q];
    for a in 0..q {
        for b in a..q {
            let v = mul_slow(r, a as Scalar, b as Scalar);
            mul[a * q + b] = v;
            mul[b * q + a] = v;
        }
    }
    r.mul_tab = Some(mul);
    let mut inv = vec![0 as Scalar; q];
    for a in 1..q {
        inv[a] = pow_slow(r, a as Scalar, (r.q - 2) as u64);
    }
    r.inv_tab = Some(inv);
    let mut frob = vec![0 as Scalar; q];
    for a in 0..q {
        frob[a] = pow_slow(r, a as Scalar, r.p as u64);
    }
    r.frob_tab = Some(frob);
}

fn decode(r: &Repr, a: Scalar) -> Vec<u32> {
    let mut digits = vec![0u32; r.k as usize];
    let mut c = a as u32;
    for d in digits.iter_mut() {
        *d = c % r.p;
        c /= r.p;
    }
    digits
}

fn encode(r: &Repr, digits: &[u32]) -> Scalar {
    let mut c: u32 = 0;
    for &d in digits.iter().rev() {
        c = c * r.p + d % r.p;
    }
    c as Scalar
}

fn add_slow(r: &Repr, a: Scalar, b: Scalar) -> Scalar {
    if r.k == 1 {
        return (((a as u32) + (b as u32)) % r.p) as Scalar;
    }
    let (da, db) = (decode(r, a), decode(r, b));
    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % r.p).collect();
    encode(r, &sum)
}

fn mul_slow(r: &Repr, a: Scalar, b: Scalar) -> Scalar {
    if r.k == 1 {
        return (((a as u64) * (b as u64)) % r.p as u64) as Scalar;
    }
    let (da, db) = (decode(r, a), decode(r, b));
    let mut prod = vec![0u32; 2 * r.k as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % r.p as u64) as u32;
        }
    }
    let rem = prem(r.p, &prod, &r.modulus);
    let mut digits = vec![0u32; r.k as usize];
    digits[..rem.len()].copy_from_slice(&rem);
    encode(r, &digits)
}

fn pow_slow(r: &Repr, a: Scalar, mut e: u64) -> Scalar {
    let mut base = a;
    let mut acc: Scalar = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(r, acc, base);
        }
        base = mul_slow(r, base, base);
        e >>= 1;
    }
    acc
}

impl FiniteField {
    /// Builds GF(p^k). `modulus`, when given, lists the k+1 coefficients of a
    /// monic irreducible polynomial (constant term first); coefficients are
    /// reduced mod p. Without it the default modulus is used.
    pub fn new(p: u64, k: u32, modulus: Option<&[i64]>) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadField("extension degree k must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.saturating_mul(p);
            if q > 1 << 16 {
                return Err(Error::BadField(format!("p^k = {}^{} exceeds 2^16", p, k)));
            }
        }
        let p32 = p as u32;
        let m: Vec<u32> = match modulus {
            Some(coeffs) => {
                if coeffs.len() != k as usize + 1 {
                    return Err(Error::BadField(format!(
                        "modulus must have {} coefficients, got {}",
                        k + 1,
                        coeffs.len()
                    )));
                }
                let m: Vec<u32> = coeffs.iter().map(|&c| reduce_mod(c, p32)).collect();
                if m[k as usize] != 1 {
                    return Err(Error::BadField("modulus must be monic".into()));
                }
                if k > 1 && !pirreducible(p32, &m) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None => default_modulus(p32, k),
        };
        let mut repr = Repr {
            p: p32,
            k,
            q: q as u32,
            modulus: m,
            mul_tab: None,
            inv_tab: None,
            frob_tab: None,
        };
        if repr.q <= TABLE_Q_MAX {
            build_tables(&mut repr);
        }
        Ok(FiniteField(Arc::new(repr)))
    }

    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Self, Error> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Field order q = p^k.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, constant term first, length k+1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Scalar {
        0
    }

    pub fn one(&self) -> Scalar {
        1
    }

    /// All field elements in packed-code order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.0.q).map(|c| c as Scalar)
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        debug_assert!((a as u32) < self.0.q && (b as u32) < self.0.q);
        add_slow(&self.0, a, b)
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        let r = &self.0;
        if r.k == 1 {
            return ((r.p - a as u32) % r.p) as Scalar;
        }
        let digits: Vec<u32> = decode(r, a).iter().map(|&d| (r.p - d) % r.p).collect();
        encode(r, &digits)
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        let r = &self.0;
        debug_assert!((a as u32) < r.q && (b as u32) < r.q);
        match &r.mul_tab {
            Some(t) => t[a as usize * r.q as usize + b as usize],
            None => mul_slow(r, a, b),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert_ne!(a, 0, "zero has no inverse");
        let r = &self.0;
        match &r.inv_tab {
            Some(t) => t[a as usize],
            None => pow_slow(r, a, (r.q - 2) as u64),
        }
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Scalar {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Scalar, e: u64) -> Scalar {
        pow_slow(&self.0, a, e)
    }

    /// Frobenius automorphism a -> a^p.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        let r = &self.0;
        match &r.frob_tab {
            Some(t) => t[a as usize],
            None => pow_slow(r, a, r.p as u64),
        }
    }

    /// Inverse of the Frobenius automorphism, a -> a^(p^(k-1)).
    pub fn frobenius_inv(&self, a: Scalar) -> Scalar {
        if self.0.k == 1 {
            return a;
        }
        let e = (self.0.p as u64).pow(self.0.k - 1);
        pow_slow(&self.0, a, e)
    }

    /// Element of the prime subfield from an integer (reduced mod p).
    pub fn from_int(&self, v: i64) -> Scalar {
        reduce_mod(v, self.0.p) as Scalar
    }

    /// Packs residues (constant digit first) into a scalar; entries are
    /// reduced mod p. Fails when more than k residues are given.
    pub fn from_residues(&self, coeffs: &[i64]) -> Result<Scalar, Error> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::Parse(format!(
                "scalar has {} residues but the field has degree {}",
                coeffs.len(),
                self.0.k
            )));
        }
        let mut digits = vec![0u32; self.0.k as usize];
        for (d, &c) in digits.iter_mut().zip(coeffs) {
            *d = reduce_mod(c, self.0.p);
        }
        Ok(encode(&self.0, &digits))
    }

    /// Residue vector of a scalar, constant digit first, length k.
    pub fn residues(&self, a: Scalar) -> Vec<u32> {
        decode(&self.0, a)
    }

    /// Human-readable form: a residue for k = 1, a polynomial in `u` otherwise.
    pub fn render(&self, a: Scalar) -> String {
        let r = &self.0;
        if r.k == 1 {
            return a.to_string();
        }
        let digits = decode(r, a);
        let mut terms: Vec<String> = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let t = match (i, d) {
                (0, d) => d.to_string(),
                (1, 1) => "u".into(),
                (1, d) => format!("{}u", d),
                (_, 1) => format!("u^{}", i),
                (_, d) => format!("{}u^{}", d, i),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}
