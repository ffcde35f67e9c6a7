//! Skew polynomial arithmetic F[t;s] with t*a = a^p t, cyclic restricted
//! algebras built from monic skew polynomials, and the named generator
//! families used by tests, the corpus, and the `gen` subcommand.

use crate::algebra::RestrictedLieAlgebra;
use crate::error::Error;
use crate::field::{FiniteField, Scalar};
use crate::linalg::Mat;

/// Polynomial in F[t;s] where s is the Frobenius a -> a^p.  Coefficients are
/// stored low degree first; the leading coefficient is nonzero unless the
/// polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPolynomial {
    f: FiniteField,
    coeffs: Vec<Scalar>,
}

impl std::fmt::Debug for SkewPolynomial {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(fm, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let cs = self.f.render(c);
                match (i, c == self.f.one()) {
                    (0, _) => cs,
                    (1, true) => "t".into(),
                    (1, false) => format!("({cs})t"),
                    (_, true) => format!("t^{i}"),
                    (_, false) => format!("({cs})t^{i}"),
                }
            })
            .collect();
        write!(fm, "{}", terms.join(" + "))
    }
}

fn frob_pow(f: &FiniteField, a: Scalar, times: usize) -> Scalar {
    let mut x = a;
    for _ in 0..times % f.k() as usize {
        x = f.frobenius(x);
    }
    x
}

impl SkewPolynomial {
    /// Polynomial with the given scalar coefficients, low degree first.
    pub fn new(f: &FiniteField, coeffs: Vec<Scalar>) -> Self {
        let mut p = SkewPolynomial { f: f.clone(), coeffs };
        p.trim();
        p
    }

    /// Polynomial with integer coefficients reduced into the prime subfield.
    pub fn from_ints(f: &FiniteField, coeffs: &[i64]) -> Self {
        Self::new(f, coeffs.iter().map(|&c| f.from_int(c)).collect())
    }

    pub fn zero(f: &FiniteField) -> Self {
        SkewPolynomial { f: f.clone(), coeffs: Vec::new() }
    }

    /// c * t^d.
    pub fn monomial(f: &FiniteField, c: Scalar, d: usize) -> Self {
        if c == 0 {
            return Self::zero(f);
        }
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        SkewPolynomial { f: f.clone(), coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.f
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.f.one())
    }

    pub fn add(&self, other: &SkewPolynomial) -> SkewPolynomial {
        let f = &self.f;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = f.add(a, b);
        }
        SkewPolynomial::new(f, out)
    }

    pub fn sub(&self, other: &SkewPolynomial) -> SkewPolynomial {
        let f = &self.f;
        let neg = SkewPolynomial::new(f, other.coeffs.iter().map(|&c| f.neg(c)).collect());
        self.add(&neg)
    }
}

/// Product in F[t;s]: (a t^i)(b t^j) = a * s^i(b) t^(i+j).
pub fn sp_mul(a: &SkewPolynomial, b: &SkewPolynomial) -> SkewPolynomial {
    let f = a.field();
    debug_assert_eq!(f, b.field());
    if a.is_zero() || b.is_zero() {
        return SkewPolynomial::zero(f);
    }
    let mut out = vec![0; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.coeffs.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let term = f.mul(ai, frob_pow(f, bj, i));
            out[i + j] = f.add(out[i + j], term);
        }
    }
    SkewPolynomial::new(f, out)
}

/// Right division: returns (q, r) with a = q*b + r and deg r < deg b.
pub fn sp_right_divmod(
    a: &SkewPolynomial,
    b: &SkewPolynomial,
) -> Result<(SkewPolynomial, SkewPolynomial), Error> {
    let f = a.field();
    debug_assert_eq!(f, b.field());
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let e = b.degree().unwrap();
    let blead = *b.coeffs.last().unwrap();
    let mut r = a.clone();
    let mut q = SkewPolynomial::zero(f);
    while let Some(d) = r.degree() {
        if d < e {
            break;
        }
        // (c t^(d-e)) * (blead t^e) must cancel the lead of r.
        let c = f.div(*r.coeffs.last().unwrap(), frob_pow(f, blead, d - e));
        let m = SkewPolynomial::monomial(f, c, d - e);
        q = q.add(&m);
        r = r.sub(&sp_mul(&m, b));
    }
    Ok((q, r))
}

/// True iff f has no monic right factor of degree 1..deg-1, by exhaustive
/// search over the q^m monic candidates of each degree m.
pub fn sp_irreducible(poly: &SkewPolynomial, budget: u64) -> Result<bool, Error> {
    let f = poly.field();
    let d = match poly.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::BadParameters("irreducibility needs degree >= 1".into())),
    };
    let q = f.q() as u64;
    let mut needed: u64 = 0;
    for m in 1..d {
        needed = needed.saturating_add(q.saturating_pow(m as u32));
    }
    if needed > budget {
        return Err(Error::ResourceLimit { needed, budget });
    }
    for m in 1..d {
        let total = q.pow(m as u32);
        for code in 0..total {
            let mut coeffs = vec![0; m + 1];
            let mut c = code;
            for slot in coeffs.iter_mut().take(m) {
                *slot = (c % q) as Scalar;
                c /= q;
            }
            coeffs[m] = 1;
            let cand = SkewPolynomial::new(f, coeffs);
            let (_, r) = sp_right_divmod(poly, &cand)?;
            if r.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The cyclic restricted algebra R/Rf for monic f of degree s: abelian on
/// basis v_0..v_{s-1} (v_k the class of t^k), with v_k^[p] = v_{k+1} and
/// v_{s-1}^[p] = -(a_0 v_0 + ... + a_{s-1} v_{s-1}).
pub fn cyclic_from(poly: &SkewPolynomial) -> Result<RestrictedLieAlgebra, Error> {
    if !poly.is_monic() {
        return Err(Error::NotMonic);
    }
    let s = poly.degree().unwrap();
    if s == 0 {
        return Err(Error::BadParameters("cyclic construction needs degree >= 1".into()));
    }
    let f = poly.field();
    let names: Vec<String> = (0..s).map(|k| format!("v{k}")).collect();
    let mut pm = Mat::zero(f.clone(), s, s);
    for k in 0..s - 1 {
        pm.set(k, k + 1, 1);
    }
    for k in 0..s {
        pm.set(s - 1, k, f.neg(poly.coeffs[k]));
    }
    RestrictedLieAlgebra::from_scalar_parts(f.clone(), names, &[], pm)
}

/// How the p-map of an abelian family is filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianPmap {
    /// Identically zero ("strongly abelian").
    Zero,
    /// Every basis vector toral.
    Toral,
    /// Explicit rows of scalar codes.
    Custom(Vec<Vec<Scalar>>),
}

/// Abelian algebra of dimension n with the given p-map.
pub fn abelian(f: &FiniteField, n: usize, pmap: AbelianPmap) -> Result<RestrictedLieAlgebra, Error> {
    let names: Vec<String> = (0..n).map(|i| format!("a{}", i + 1)).collect();
    let pm = match pmap {
        AbelianPmap::Zero => Mat::zero(f.clone(), n, n),
        AbelianPmap::Toral => Mat::identity(f.clone(), n),
        AbelianPmap::Custom(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::BadParameters(format!("custom p-map must be {n} rows of {n}")));
            }
            Mat::from_rows(f.clone(), n, &rows)
        }
    };
    RestrictedLieAlgebra::from_scalar_parts(f.clone(), names, &[], pm)
}

/// Abelian with zero p-map.
pub fn strongly_abelian(f: &FiniteField, n: usize) -> RestrictedLieAlgebra {
    abelian(f, n, AbelianPmap::Zero).expect("zero p-map is always well formed")
}

/// Torus: abelian with every basis vector toral.
pub fn torus(f: &FiniteField, n: usize) -> RestrictedLieAlgebra {
    abelian(f, n, AbelianPmap::Toral).expect("toral p-map is always well formed")
}

/// L = Fb + A with A abelian of dimension n, ad(b) the identity on A,
/// b toral, and A^[p] = 0.  Basis order (b, a1..an).
pub fn almost_abelian(f: &FiniteField, n: usize) -> Result<RestrictedLieAlgebra, Error> {
    if n == 0 {
        return Err(Error::BadParameters("almost abelian needs a nonzero abelian part".into()));
    }
    let dim = n + 1;
    let mut names = vec!["b".to_string()];
    names.extend((0..n).map(|i| format!("a{}", i + 1)));
    let mut entries = Vec::new();
    for i in 1..dim {
        entries.push((0, i, i, 1));
    }
    let mut pm = Mat::zero(f.clone(), dim, dim);
    pm.set(0, 0, 1);
    RestrictedLieAlgebra::from_scalar_parts(f.clone(), names, &entries, pm)
}

/// Heisenberg algebra (x, y, z) with [x,y] = z and identically zero p-map.
pub fn heisenberg_null(f: &FiniteField) -> RestrictedLieAlgebra {
    RestrictedLieAlgebra::from_scalar_parts(
        f.clone(),
        vec!["x".into(), "y".into(), "z".into()],
        &[(0, 1, 2, 1)],
        Mat::zero(f.clone(), 3, 3),
    )
    .expect("well formed by construction")
}

/// Four-dimensional nilpotent algebra on (x, xp, y, z): [x,y] = z is the only
/// nonzero product, x^[p] = xp, and xp, y, z have zero p-power.
pub fn usmn(f: &FiniteField) -> RestrictedLieAlgebra {
    let mut pm = Mat::zero(f.clone(), 4, 4);
    pm.set(0, 1, 1);
    RestrictedLieAlgebra::from_scalar_parts(
        f.clone(),
        vec!["x".into(), "xp".into(), "y".into(), "z".into()],
        &[(0, 2, 3, 1)],
        pm,
    )
    .expect("well formed by construction")
}

/// sl(2) on basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h; e, f have
/// zero p-power and h is toral.  Requires p > 2.
pub fn sl2(f: &FiniteField) -> Result<RestrictedLieAlgebra, Error> {
    if f.p() == 2 {
        return Err(Error::BadParameters("sl(2) fixture needs characteristic > 2".into()));
    }
    let mut pm = Mat::zero(f.clone(), 3, 3);
    pm.set(1, 1, 1);
    RestrictedLieAlgebra::from_scalar_parts(
        f.clone(),
        vec!["e".into(), "h".into(), "f".into()],
        &[
            (0, 1, 0, f.from_int(-2)),
            (0, 2, 1, 1),
            (1, 2, 2, f.from_int(-2)),
        ],
        pm,
    )
}

/// Central cyclic blocks from monic irreducible skew polynomials, plus m
/// lines Fx_j with [b, x_j] = x_j and x_j^[p] = 0, plus a toral b.
/// Basis order: block vectors, then x_1..x_m, then b.
pub fn prop_solvable(
    f: &FiniteField,
    factors: &[SkewPolynomial],
    m: usize,
) -> Result<RestrictedLieAlgebra, Error> {
    if m == 0 {
        return Err(Error::BadParameters("at least one non-central line is required".into()));
    }
    for (i, poly) in factors.iter().enumerate() {
        if !poly.is_monic() {
            return Err(Error::NotMonic);
        }
        if poly.degree() == Some(0) {
            return Err(Error::BadParameters(format!("factor {} has degree 0", i + 1)));
        }
        if poly.degree().unwrap() > 1 && !sp_irreducible(poly, crate::DEFAULT_BUDGET)? {
            return Err(Error::BadParameters(format!("factor {} is reducible", i + 1)));
        }
    }
    let block_dims: Vec<usize> = factors.iter().map(|p| p.degree().unwrap()).collect();
    let central: usize = block_dims.iter().sum();
    let dim = central + m + 1;
    let b_idx = dim - 1;
    let mut names = Vec::with_capacity(dim);
    for (i, &s) in block_dims.iter().enumerate() {
        for k in 0..s {
            names.push(format!("a{}_{k}", i + 1));
        }
    }
    for j in 0..m {
        names.push(format!("x{}", j + 1));
    }
    names.push("b".to_string());
    let mut entries = Vec::new();
    for j in 0..m {
        let x = central + j;
        // [x_j, b] = -x_j, i.e. [b, x_j] = x_j.
        entries.push((x, b_idx, x, f.neg(f.one())));
    }
    let mut pm = Mat::zero(f.clone(), dim, dim);
    let mut off = 0;
    for (bi, &s) in block_dims.iter().enumerate() {
        for k in 0..s - 1 {
            pm.set(off + k, off + k + 1, 1);
        }
        for k in 0..s {
            pm.set(off + s - 1, off + k, f.neg(factors[bi].coeffs()[k]));
        }
        off += s;
    }
    pm.set(b_idx, b_idx, 1);
    RestrictedLieAlgebra::from_scalar_parts(f.clone(), names, &entries, pm)
}

/// Parameters for the `gen` subcommand, mapping onto the typed constructors.
#[derive(Clone, Debug, Default)]
pub struct FamilySpec {
    pub family: String,
    pub n: Option<usize>,
    /// zero | toral | custom (abelian family only).
    pub pmap: Option<String>,
    /// Rows for pmap = custom, as integers reduced into the prime subfield.
    pub custom_pmap: Option<Vec<Vec<i64>>>,
    /// Skew polynomial coefficient lists (low degree first) for cyclic and
    /// prop_solvable.
    pub factors: Vec<Vec<i64>>,
    pub lines: Option<usize>,
}

/// Builds the named family over the given field.
pub fn gen(f: &FiniteField, spec: &FamilySpec) -> Result<RestrictedLieAlgebra, Error> {
    let need_n = || {
        spec.n
            .ok_or_else(|| Error::BadParameters(format!("family {} needs --n", spec.family)))
    };
    match spec.family.as_str() {
        "abelian" => {
            let n = need_n()?;
            let pmap = match spec.pmap.as_deref() {
                None | Some("zero") => AbelianPmap::Zero,
                Some("toral") => AbelianPmap::Toral,
                Some("custom") => {
                    let rows = spec.custom_pmap.clone().ok_or_else(|| {
                        Error::BadParameters("pmap = custom needs explicit rows".into())
                    })?;
                    AbelianPmap::Custom(
                        rows.iter()
                            .map(|r| r.iter().map(|&c| f.from_int(c)).collect())
                            .collect(),
                    )
                }
                Some(other) => {
                    return Err(Error::BadParameters(format!("unknown pmap kind {other}")))
                }
            };
            abelian(f, n, pmap)
        }
        "torus" => Ok(torus(f, need_n()?)),
        "almost_abelian" => almost_abelian(f, need_n()?),
        "heisenberg_null" => Ok(heisenberg_null(f)),
        "usmn" => Ok(usmn(f)),
        "sl2" => sl2(f),
        "cyclic" => {
            if spec.factors.len() != 1 {
                return Err(Error::BadParameters("cyclic needs exactly one factor".into()));
            }
            cyclic_from(&SkewPolynomial::from_ints(f, &spec.factors[0]))
        }
        "prop_solvable" => {
            let polys: Vec<SkewPolynomial> = spec
                .factors
                .iter()
                .map(|c| SkewPolynomial::from_ints(f, c))
                .collect();
            let m = spec.lines.ok_or_else(|| {
                Error::BadParameters("prop_solvable needs --lines".into())
            })?;
            prop_solvable(f, &polys, m)
        }
        other => Err(Error::BadParameters(format!("unknown family {other}"))),
    }
}


#[cfg(test)]
mod skew_props {
    use super::*;
    use proptest::prelude::*;

    fn gf4() -> FiniteField {
        FiniteField::new(2, 2, None).unwrap()
    }

    fn poly(max_deg: usize) -> impl Strategy<Value = SkewPolynomial> {
        proptest::collection::vec(0u16..4, 0..=max_deg + 1)
            .prop_map(|c| SkewPolynomial::new(&gf4(), c))
    }

    proptest! {
        #[test]
        fn division_reconstructs_the_dividend(a in poly(5), b in poly(3)) {
            prop_assume!(!b.is_zero());
            let (q, r) = sp_right_divmod(&a, &b).unwrap();
            prop_assert_eq!(sp_mul(&q, &b).add(&r), a);
            if let Some(dr) = r.degree() {
                prop_assert!(dr < b.degree().unwrap());
            }
        }

        #[test]
        fn multiplication_is_associative(a in poly(3), b in poly(3), c in poly(3)) {
            prop_assert_eq!(sp_mul(&sp_mul(&a, &b), &c), sp_mul(&a, &sp_mul(&b, &c)));
        }
    }
}
