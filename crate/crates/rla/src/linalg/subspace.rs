//! Canonical subspaces of F^n: every subspace is stored as the reduced row
//! echelon basis of its row space, so equality is representation equality
//! and (dimension, flattened-entry) order is a total canonical order.

use std::cmp::Ordering;

use crate::field::{FiniteField, Scalar};
use crate::linalg::Mat;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "Subspace(dim {} of F^{}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    /// Span of the given vectors.
    pub fn from_vectors(f: &FiniteField, ambient: usize, vecs: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::from_rows(f.clone(), ambient, vecs);
        let pivots = m.rref();
        let rank = pivots.len();
        let rows: Vec<Vec<Scalar>> = (0..rank).map(|r| m.row(r).to_vec()).collect();
        Subspace {
            ambient,
            basis: Mat::from_rows(f.clone(), ambient, &rows),
            pivots,
        }
    }

    /// Wraps a matrix already known to be in RREF with no zero rows.
    pub(crate) fn from_rref(basis: Mat, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace { ambient: basis.cols(), basis, pivots }
    }

    pub fn zero(f: &FiniteField, ambient: usize) -> Self {
        Subspace::from_vectors(f, ambient, &[])
    }

    pub fn full(f: &FiniteField, ambient: usize) -> Self {
        let rows: Vec<Vec<Scalar>> = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::from_vectors(f, ambient, &rows)
    }

    pub fn field(&self) -> &FiniteField {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Ambient coordinates that are not pivot columns, ascending.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Canonical coset representative: v minus its projection onto the
    /// subspace along the pivot coordinates. The result has zero entries at
    /// every pivot column and is zero iff v lies in the subspace.
    pub fn reduce_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field().clone();
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            let row = self.basis.row(i);
            for j in 0..self.ambient {
                w[j] = f.sub(w[j], f.mul(c, row[j]));
            }
        }
        w
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.reduce_vec(v).iter().all(|&x| x == 0)
    }

    /// Coefficients of v in the canonical basis, if v lies in the subspace.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vec(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis_rows().all(|r| self.contains_vec(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let rows: Vec<Vec<Scalar>> = self
            .basis_rows()
            .chain(other.basis_rows())
            .map(|r| r.to_vec())
            .collect();
        Subspace::from_vectors(self.field(), self.ambient, &rows)
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let f = self.field().clone();
        let n = self.ambient;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim() + other.dim());
        for r in self.basis_rows() {
            let mut v = vec![0; 2 * n];
            v[..n].copy_from_slice(r);
            v[n..].copy_from_slice(r);
            rows.push(v);
        }
        for r in other.basis_rows() {
            let mut v = vec![0; 2 * n];
            v[..n].copy_from_slice(r);
            rows.push(v);
        }
        let mut m = Mat::from_rows(f.clone(), 2 * n, &rows);
        m.rref();
        let mut inter: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..m.rows() {
            let row = m.row(r);
            if row[..n].iter().all(|&x| x == 0) && row[n..].iter().any(|&x| x != 0) {
                inter.push(row[n..].to_vec());
            }
        }
        Subspace::from_vectors(&f, n, &inter)
    }

    /// Basis of linear functionals vanishing on the subspace (rows of the
    /// returned matrix), i.e. the kernel of the basis matrix.
    pub fn annihilator(&self) -> Mat {
        if self.dim() == 0 {
            return Mat::identity(self.field().clone(), self.ambient);
        }
        self.basis.kernel()
    }

    /// All q^dim elements in canonical coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        let q = self.field().q() as u64;
        let total = q.pow(self.dim() as u32);
        let f = self.field().clone();
        (0..total).map(move |code| {
            let mut v = vec![0; self.ambient];
            let mut c = code;
            for r in 0..self.dim() {
                let coeff = (c % q) as Scalar;
                c /= q;
                if coeff != 0 {
                    let row = self.basis.row(r);
                    for j in 0..self.ambient {
                        v[j] = f.add(v[j], f.mul(coeff, row[j]));
                    }
                }
            }
            v
        })
    }

    /// Total canonical order: by dimension, then by the flattened RREF
    /// entries compared as packed scalar codes.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }

    /// Hash key uniquely identifying the subspace within its ambient space.
    pub fn canonical_key(&self) -> Vec<Scalar> {
        let mut key = Vec::with_capacity(1 + self.basis.entries().len());
        key.push(self.dim() as Scalar);
        key.extend_from_slice(self.basis.entries());
        key
    }
}
