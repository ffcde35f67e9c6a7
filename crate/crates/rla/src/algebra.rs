//! Restricted Lie algebra core: validated construction from structure
//! constants and basis p-images, brackets, p-th powers of arbitrary elements,
//! restricted closure, subspace classification, and quotients.
//!
//! The p-th power of a general element x = Σ λ_i e_i is computed by a left
//! fold over the basis terms in index order, using the expansion
//! (a+b)^[p] = a^[p] + b^[p] + Σ s_i(a,b), where i·s_i(a,b) is the t^(i-1)
//! coefficient of ad(ta+b)^(p-1)(a).  The fold never solves ad(y) = ad(x)^p,
//! which would be underdetermined in the presence of a center.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Error;
use crate::field::{FiniteField, Scalar};
use crate::linalg::{Mat, Subspace};

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn vadd_into(f: &FiniteField, acc: &mut [Scalar], v: &[Scalar]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = f.add(*a, b);
    }
}

fn vscale(f: &FiniteField, v: &[Scalar], c: Scalar) -> Vec<Scalar> {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

fn vzero(v: &[Scalar]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Which axiom a validation violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Antisymmetry,
    Jacobi,
    PmapCompat,
}

impl fmt::Display for Axiom {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Antisymmetry => write!(fm, "antisymmetry"),
            Axiom::Jacobi => write!(fm, "jacobi"),
            Axiom::PmapCompat => write!(fm, "pmap_compat"),
        }
    }
}

/// One failed axiom instance with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

/// Outcome of checking the Jacobi identity and p-map compatibility on a
/// candidate algebra.  `ok` holds exactly when `violations` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(fm, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at {:?}", v.axiom, v.witness))
            .collect();
        write!(fm, "{}", parts.join("; "))
    }
}

struct Repr {
    f: FiniteField,
    dim: usize,
    names: Vec<String>,
    /// Dense bracket tensor: bt[(i*n + j)*n + k] is the e_k coefficient of
    /// [e_i, e_j].  Filled antisymmetrically, zero diagonal.
    bt: Vec<Scalar>,
    /// Row i holds the coordinates of e_i^[p].
    pmap: Mat,
}

/// A finite-dimensional restricted Lie algebra over a finite field, given by
/// structure constants on a fixed basis together with the p-th powers of the
/// basis vectors.  Immutable and cheap to clone.
#[derive(Clone)]
pub struct RestrictedLieAlgebra(Arc<Repr>);

impl PartialEq for RestrictedLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.0.f == other.0.f
            && self.0.dim == other.0.dim
            && self.0.names == other.0.names
            && self.0.bt == other.0.bt
            && self.0.pmap == other.0.pmap
    }
}

impl Eq for RestrictedLieAlgebra {}

impl fmt::Debug for RestrictedLieAlgebra {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            fm,
            "RestrictedLieAlgebra(dim {}, GF({}), basis {:?})",
            self.0.dim,
            self.0.f.q(),
            self.0.names
        )
    }
}

impl RestrictedLieAlgebra {
    /// Builds an algebra from scalar-valued structure data without checking
    /// the Lie axioms.  `entries` lists (i, j, k, c) with i < j, meaning
    /// [e_i, e_j] gains the term c·e_k; repeated (i, j, k) accumulate.
    /// `pmap` row i gives the coordinates of e_i^[p].
    pub fn from_scalar_parts(
        f: FiniteField,
        names: Vec<String>,
        entries: &[(usize, usize, usize, Scalar)],
        pmap: Mat,
    ) -> Result<Self, Error> {
        let n = names.len();
        if pmap.rows() != n || pmap.cols() != n {
            return Err(Error::BadAlgebra(format!(
                "p-map must be {n}x{n}, got {}x{}",
                pmap.rows(),
                pmap.cols()
            )));
        }
        if pmap.field() != &f {
            return Err(Error::BadAlgebra("p-map is over a different field".into()));
        }
        let q = f.q() as Scalar;
        let mut bt = vec![0 as Scalar; n * n * n];
        for &(i, j, k, c) in entries {
            if i >= j {
                return Err(Error::BadAlgebra(format!(
                    "bracket entries require i < j, got ({i}, {j})"
                )));
            }
            if j >= n || k >= n {
                return Err(Error::BadAlgebra(format!(
                    "bracket index out of range: ({i}, {j}, {k}) with dim {n}"
                )));
            }
            if c >= q {
                return Err(Error::BadAlgebra(format!(
                    "scalar code {c} out of range for GF({q})"
                )));
            }
            let idx = (i * n + j) * n + k;
            bt[idx] = f.add(bt[idx], c);
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    bt[(j * n + i) * n + k] = f.neg(bt[(i * n + j) * n + k]);
                }
            }
        }
        Ok(RestrictedLieAlgebra(Arc::new(Repr { f, dim: n, names, bt, pmap })))
    }

    /// Builds an algebra from integer structure data (reduced into the prime
    /// subfield) without checking the Lie axioms.
    pub fn from_structure(
        f: &FiniteField,
        names: &[&str],
        brackets: &[(usize, usize, usize, i64)],
        pmap_rows: &[Vec<i64>],
    ) -> Result<Self, Error> {
        let n = names.len();
        if pmap_rows.len() != n || pmap_rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadAlgebra(format!("p-map must be {n} rows of length {n}")));
        }
        let entries: Vec<(usize, usize, usize, Scalar)> = brackets
            .iter()
            .map(|&(i, j, k, c)| (i, j, k, f.from_int(c)))
            .collect();
        let rows: Vec<Vec<Scalar>> = pmap_rows
            .iter()
            .map(|r| r.iter().map(|&c| f.from_int(c)).collect())
            .collect();
        let pmap = Mat::from_rows(f.clone(), n, &rows);
        Self::from_scalar_parts(f.clone(), names.iter().map(|s| s.to_string()).collect(), &entries, pmap)
    }

    /// `from_structure` followed by `validate`; any axiom violation is an error.
    pub fn checked(
        f: &FiniteField,
        names: &[&str],
        brackets: &[(usize, usize, usize, i64)],
        pmap_rows: &[Vec<i64>],
    ) -> Result<Self, Error> {
        let alg = Self::from_structure(f, names, brackets, pmap_rows)?;
        let report = alg.validate();
        if report.ok {
            Ok(alg)
        } else {
            Err(Error::Validation(report))
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.0.f
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    /// The e_k coefficient of [e_i, e_j], any i, j.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.0.bt[(i * self.0.dim + j) * self.0.dim + k]
    }

    /// Nonzero bracket entries (i, j, k, c) with i < j, in index order.
    pub fn sparse_brackets(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.0.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.0.bt[(i * n + j) * n + k];
                    if c != 0 {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    /// Row i = coordinates of e_i^[p].
    pub fn pmap_matrix(&self) -> &Mat {
        &self.0.pmap
    }

    fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.0.dim;
        &self.0.bt[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// [u, v] on coordinate vectors.
    pub fn bracket_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.0.dim;
        debug_assert!(u.len() == n && v.len() == n);
        let f = &self.0.f;
        let mut out = vec![0; n];
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                if v[j] == 0 || i == j {
                    continue;
                }
                let c = f.mul(u[i], v[j]);
                let row = self.bracket_basis(i, j);
                for k in 0..n {
                    if row[k] != 0 {
                        out[k] = f.add(out[k], f.mul(c, row[k]));
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(u): column j holds the coordinates of [u, e_j].
    pub fn ad_matrix_vec(&self, u: &[Scalar]) -> Mat {
        let n = self.0.dim;
        let mut m = Mat::zero(self.0.f.clone(), n, n);
        for j in 0..n {
            let col = self.bracket_vec(u, &unit(n, j));
            for (i, &c) in col.iter().enumerate() {
                if c != 0 {
                    m.set(i, j, c);
                }
            }
        }
        m
    }

    /// Σ_{i=1}^{p-1} s_i(a, b), where i·s_i(a, b) is the t^(i-1) coefficient
    /// of ad(ta+b)^(p-1)(a), expanded in L[t] as one coordinate vector per
    /// t-degree.
    fn jacobson_cross_terms(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.0.dim;
        let f = self.0.f.clone();
        let p = f.p() as usize;
        let mut w: Vec<Vec<Scalar>> = vec![a.to_vec()];
        for _ in 0..p - 1 {
            let mut next: Vec<Vec<Scalar>> = Vec::with_capacity(w.len() + 1);
            for d in 0..=w.len() {
                let mut v = vec![0; n];
                if d > 0 {
                    v = self.bracket_vec(a, &w[d - 1]);
                }
                if d < w.len() {
                    let bv = self.bracket_vec(b, &w[d]);
                    vadd_into(&f, &mut v, &bv);
                }
                next.push(v);
            }
            w = next;
        }
        let mut out = vec![0; n];
        for i in 1..p {
            let ci = f.inv(f.from_int(i as i64));
            let term = vscale(&f, &w[i - 1], ci);
            vadd_into(&f, &mut out, &term);
        }
        out
    }

    /// x^[p] on coordinate vectors, by folding the basis terms of x in index
    /// order.
    pub fn p_power_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        let n = self.0.dim;
        debug_assert_eq!(x.len(), n);
        let f = self.0.f.clone();
        let mut partial: Vec<Scalar> = vec![0; n];
        let mut pp: Vec<Scalar> = vec![0; n];
        let mut seen = false;
        for i in 0..n {
            let lam = x[i];
            if lam == 0 {
                continue;
            }
            // (λ e_i)^[p] = λ^p e_i^[p]
            let term_pp = vscale(&f, self.0.pmap.row(i), f.frobenius(lam));
            if !seen {
                pp = term_pp;
                seen = true;
            } else {
                let mut term = vec![0; n];
                term[i] = lam;
                let cross = self.jacobson_cross_terms(&partial, &term);
                vadd_into(&f, &mut pp, &term_pp);
                vadd_into(&f, &mut pp, &cross);
            }
            partial[i] = lam;
        }
        pp
    }

    /// x^([p]^m) on coordinate vectors.
    pub fn p_power_iter_vec(&self, x: &[Scalar], m: u32) -> Vec<Scalar> {
        let mut v = x.to_vec();
        for _ in 0..m {
            v = self.p_power_vec(&v);
        }
        v
    }

    /// Checks the Jacobi identity on every ascending basis triple and p-map
    /// compatibility ad(e_i^[p]) = ad(e_i)^p on every basis index; collects
    /// every violation.
    pub fn validate(&self) -> ValidationReport {
        let n = self.0.dim;
        let f = &self.0.f;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = self.bracket_vec(self.bracket_basis(i, j), &unit(n, k));
                    let t = self.bracket_vec(self.bracket_basis(j, k), &unit(n, i));
                    vadd_into(f, &mut s, &t);
                    let u = self.bracket_vec(self.bracket_basis(k, i), &unit(n, j));
                    vadd_into(f, &mut s, &u);
                    if !vzero(&s) {
                        violations.push(Violation { axiom: Axiom::Jacobi, witness: vec![i, j, k] });
                    }
                }
            }
        }
        let p = f.p();
        for i in 0..n {
            let lhs = self.ad_matrix_vec(self.0.pmap.row(i));
            let rhs = self.ad_matrix_vec(&unit(n, i)).pow(p as u64);
            if lhs != rhs {
                violations.push(Violation { axiom: Axiom::PmapCompat, witness: vec![i] });
            }
        }
        ValidationReport { ok: violations.is_empty(), violations }
    }

    /// Least subspace containing the given vectors that is closed under the
    /// bracket and the p-map, by fixpoint iteration on a canonical basis.
    pub fn restricted_closure(&self, gens: &[Vec<Scalar>]) -> Subspace {
        self.closure_impl(gens, true)
    }

    /// Least subalgebra (bracket closure only) containing the given vectors.
    pub fn ordinary_closure(&self, gens: &[Vec<Scalar>]) -> Subspace {
        self.closure_impl(gens, false)
    }

    fn closure_impl(&self, gens: &[Vec<Scalar>], with_pmap: bool) -> Subspace {
        let n = self.0.dim;
        let f = &self.0.f;
        let mut cur = Subspace::from_vectors(f, n, gens);
        loop {
            let rows: Vec<Vec<Scalar>> = cur.basis_rows().map(|r| r.to_vec()).collect();
            let mut cand = rows.clone();
            for a in 0..rows.len() {
                for b in a + 1..rows.len() {
                    cand.push(self.bracket_vec(&rows[a], &rows[b]));
                }
                if with_pmap {
                    cand.push(self.p_power_vec(&rows[a]));
                }
            }
            let next = Subspace::from_vectors(f, n, &cand);
            if next.dim() == cur.dim() {
                return next;
            }
            cur = next;
        }
    }

    /// Closure flags of a subspace.  Restrictedness is checked on basis
    /// p-powers only; cross-terms of the fold lie in the derived span, which
    /// the subalgebra check already confines to S.
    pub fn classify_subspace(&self, s: &Subspace) -> Result<SubspaceFlags, Error> {
        if s.ambient() != self.0.dim || s.field() != &self.0.f {
            return Err(Error::AmbientMismatch);
        }
        let rows: Vec<Vec<Scalar>> = s.basis_rows().map(|r| r.to_vec()).collect();
        let mut subalgebra = true;
        'sub: for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                if !s.contains_vec(&self.bracket_vec(&rows[a], &rows[b])) {
                    subalgebra = false;
                    break 'sub;
                }
            }
        }
        let pclosed = rows.iter().all(|r| s.contains_vec(&self.p_power_vec(r)));
        let n = self.0.dim;
        let mut ideal = true;
        'idl: for i in 0..n {
            let e = unit(n, i);
            for r in &rows {
                if !s.contains_vec(&self.bracket_vec(&e, r)) {
                    ideal = false;
                    break 'idl;
                }
            }
        }
        Ok(SubspaceFlags {
            subalgebra,
            restricted_subalgebra: subalgebra && pclosed,
            ideal,
            restricted_ideal: ideal && pclosed,
        })
    }

    /// Factor algebra L/I on the standard-basis complement of I's pivot
    /// columns, with the induced bracket and p-map.
    pub fn quotient(&self, ideal: &Subspace) -> Result<RestrictedLieAlgebra, Error> {
        let flags = self.classify_subspace(ideal)?;
        if !flags.restricted_ideal {
            return Err(Error::NotARestrictedIdeal);
        }
        let n = self.0.dim;
        let f = &self.0.f;
        let comp = ideal.non_pivots();
        let m = comp.len();
        let names: Vec<String> = comp.iter().map(|&j| self.0.names[j].clone()).collect();
        let proj = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce_vec(v);
            comp.iter().map(|&j| r[j]).collect()
        };
        let mut entries = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let w = proj(&self.bracket_vec(&unit(n, comp[a]), &unit(n, comp[b])));
                for (k, &c) in w.iter().enumerate() {
                    if c != 0 {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        let mut pm = Mat::zero(f.clone(), m, m);
        for a in 0..m {
            let w = proj(self.0.pmap.row(comp[a]));
            for (k, &c) in w.iter().enumerate() {
                if c != 0 {
                    pm.set(a, k, c);
                }
            }
        }
        let q = Self::from_scalar_parts(f.clone(), names, &entries, pm)?;
        debug_assert!(q.validate().ok);
        Ok(q)
    }

    /// The induced algebra on a restricted subalgebra S, with basis the
    /// canonical basis rows of S (named by their rendering in L).
    pub fn algebra_on(&self, s: &Subspace) -> Result<RestrictedLieAlgebra, Error> {
        let flags = self.classify_subspace(s)?;
        if !flags.restricted_subalgebra {
            return Err(Error::NotASubalgebra);
        }
        let f = &self.0.f;
        let rows: Vec<Vec<Scalar>> = s.basis_rows().map(|r| r.to_vec()).collect();
        let d = rows.len();
        let names: Vec<String> = rows.iter().map(|r| self.render_vec(r)).collect();
        let mut entries = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let w = s
                    .coords_of(&self.bracket_vec(&rows[a], &rows[b]))
                    .expect("bracket stays inside the subalgebra");
                for (k, &c) in w.iter().enumerate() {
                    if c != 0 {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        let mut pm = Mat::zero(f.clone(), d, d);
        for a in 0..d {
            let w = s
                .coords_of(&self.p_power_vec(&rows[a]))
                .expect("p-power stays inside the subalgebra");
            for (k, &c) in w.iter().enumerate() {
                if c != 0 {
                    pm.set(a, k, c);
                }
            }
        }
        let alg = Self::from_scalar_parts(f.clone(), names, &entries, pm)?;
        debug_assert!(alg.validate().ok);
        Ok(alg)
    }

    /// Human-readable form of a coordinate vector, e.g. "x + 2z" or "(u+1)y".
    pub fn render_vec(&self, v: &[Scalar]) -> String {
        let f = &self.0.f;
        let mut terms = Vec::new();
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = &self.0.names[i];
            if c == f.one() {
                terms.push(name.clone());
            } else {
                let r = f.render(c);
                if r.contains('+') || r.contains('-') {
                    terms.push(format!("({r}){name}"));
                } else {
                    terms.push(format!("{r}{name}"));
                }
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// All q^dim coordinate vectors, in base-q counting order (index 0 runs
    /// fastest).  Caller is responsible for sizing q^dim.
    pub fn coordinate_vectors(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        let n = self.0.dim;
        let q = self.0.f.q() as u128;
        let total = q.checked_pow(n as u32).expect("element count overflow");
        (0..total).map(move |mut code| {
            let mut v = vec![0; n];
            for slot in v.iter_mut() {
                *slot = (code % q) as Scalar;
                code /= q;
            }
            v
        })
    }

    /// Number of elements q^dim, saturating.
    pub fn element_count(&self) -> u128 {
        (self.0.f.q() as u128)
            .checked_pow(self.0.dim as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn zero_element(&self) -> Element {
        Element { alg: self.clone(), coords: vec![0; self.0.dim] }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        assert!(i < self.0.dim);
        Element { alg: self.clone(), coords: unit(self.0.dim, i) }
    }

    /// Element from integer coordinates, reduced into the prime subfield.
    pub fn element(&self, ints: &[i64]) -> Element {
        assert_eq!(ints.len(), self.0.dim, "coordinate length must equal dim");
        Element {
            alg: self.clone(),
            coords: ints.iter().map(|&c| self.0.f.from_int(c)).collect(),
        }
    }

    /// Element from scalar codes.
    pub fn element_from_coords(&self, coords: Vec<Scalar>) -> Element {
        assert_eq!(coords.len(), self.0.dim, "coordinate length must equal dim");
        debug_assert!(coords.iter().all(|&c| (c as u32) < self.0.f.q()));
        Element { alg: self.clone(), coords }
    }
}

/// Closure properties of a subspace inside a fixed algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceFlags {
    pub subalgebra: bool,
    pub restricted_subalgebra: bool,
    pub ideal: bool,
    pub restricted_ideal: bool,
}

/// An element of a specific algebra: a coordinate vector plus a handle to the
/// algebra it lives in.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    alg: RestrictedLieAlgebra,
    coords: Vec<Scalar>,
}

impl fmt::Debug for Element {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "Element({})", self.render())
    }
}

impl Element {
    pub fn algebra(&self) -> &RestrictedLieAlgebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        vzero(&self.coords)
    }

    pub fn render(&self) -> String {
        self.alg.render_vec(&self.coords)
    }

    fn same_algebra(&self, other: &Element) -> Result<(), Error> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, Error> {
        self.same_algebra(other)?;
        let f = self.alg.field();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Element { alg: self.alg.clone(), coords })
    }

    pub fn neg(&self) -> Element {
        let f = self.alg.field();
        Element {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Result<Element, Error> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Scalar) -> Element {
        Element {
            alg: self.alg.clone(),
            coords: vscale(self.alg.field(), &self.coords, c),
        }
    }

    pub fn bracket(&self, other: &Element) -> Result<Element, Error> {
        self.same_algebra(other)?;
        Ok(Element {
            alg: self.alg.clone(),
            coords: self.alg.bracket_vec(&self.coords, &other.coords),
        })
    }

    /// x^([p]^m); m defaults to 1 at call sites that take one power.
    pub fn p_power(&self, m: u32) -> Element {
        Element {
            alg: self.alg.clone(),
            coords: self.alg.p_power_iter_vec(&self.coords, m),
        }
    }

    pub fn ad(&self) -> Mat {
        self.alg.ad_matrix_vec(&self.coords)
    }
}


#[cfg(test)]
mod closure_props {
    use super::*;
    use proptest::prelude::*;

    fn fixture() -> RestrictedLieAlgebra {
        let f = FiniteField::new(3, 1, None).unwrap();
        RestrictedLieAlgebra::checked(
            &f,
            &["x", "xp", "y", "z"],
            &[(0, 2, 3, 1)],
            &[vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]],
        )
        .unwrap()
    }

    fn coord_vec() -> impl Strategy<Value = Vec<Scalar>> {
        proptest::collection::vec(0u16..3, 4)
    }

    proptest! {
        #[test]
        fn closure_operator_laws(gens in proptest::collection::vec(coord_vec(), 0..3), extra in coord_vec()) {
            let l = fixture();
            let c = l.restricted_closure(&gens);
            // extensive
            for g in &gens {
                prop_assert!(c.contains_vec(g));
            }
            // idempotent
            let rows: Vec<Vec<Scalar>> = c.basis_rows().map(|r| r.to_vec()).collect();
            prop_assert_eq!(l.restricted_closure(&rows), c.clone());
            // monotone
            let mut bigger = gens.clone();
            bigger.push(extra);
            prop_assert!(l.restricted_closure(&bigger).contains(&c));
            // closed result
            prop_assert!(l.classify_subspace(&c).unwrap().restricted_subalgebra);
        }

        #[test]
        fn p_power_sum_defect_lies_in_derived_span_of_closure(a in coord_vec(), b in coord_vec()) {
            let l = fixture();
            let f = l.field().clone();
            let mut sum = a.clone();
            for (s, &x) in sum.iter_mut().zip(&b) {
                *s = f.add(*s, x);
            }
            let mut defect = l.p_power_vec(&sum);
            let pa = l.p_power_vec(&a);
            let pb = l.p_power_vec(&b);
            for (d, (&x, &y)) in defect.iter_mut().zip(pa.iter().zip(&pb)) {
                *d = f.sub(*d, f.add(x, y));
            }
            let c = l.restricted_closure(&[a, b]);
            let rows: Vec<Vec<Scalar>> = c.basis_rows().map(|r| r.to_vec()).collect();
            let mut derived = Vec::new();
            for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    derived.push(l.bracket_vec(&rows[i], &rows[j]));
                }
            }
            let d = Subspace::from_vectors(&f, 4, &derived);
            prop_assert!(d.contains_vec(&defect));
        }
    }
}
