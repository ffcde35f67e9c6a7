//! Dense matrices over a finite field.

use std::ops::Index;

use crate::field::{FiniteField, Scalar};

/// Row-major matrix over a fixed finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    f: FiniteField,
    rows: usize,
    cols: usize,
    a: Vec<Scalar>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(fm, "Mat {}x{} over {:?} [", self.rows, self.cols, self.f)?;
        for r in 0..self.rows {
            writeln!(
                fm,
                "  {:?}",
                self.row(r).iter().map(|&x| self.f.residues(x)).collect::<Vec<_>>()
            )?;
        }
        write!(fm, "]")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.a[r * self.cols + c]
    }
}

impl Mat {
    pub fn zero(f: FiniteField, rows: usize, cols: usize) -> Self {
        Mat { f, rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(f: FiniteField, n: usize) -> Self {
        let mut m = Mat::zero(f, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(f: FiniteField, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut a = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            a.extend_from_slice(r);
        }
        Mat { f, rows: rows.len(), cols, a }
    }

    pub fn field(&self) -> &FiniteField {
        &self.f
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.a[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.a[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.a[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.f.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(&x, &y)| self.f.add(x, y))
            .collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, a }
    }

    pub fn scale(&self, s: Scalar) -> Mat {
        let a = self.a.iter().map(|&x| self.f.mul(x, s)).collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, a }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.f;
        let mut out = Mat::zero(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(r, k);
                if x == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let y = other.get(k, c);
                    if y == 0 {
                        continue;
                    }
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, f.mul(x, y)));
                }
            }
        }
        out
    }

    /// Matrix-vector product (vector as column).
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = &self.f;
        let mut out = vec![0; self.rows];
        for r in 0..self.rows {
            let mut acc = 0;
            for c in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(r, c), v[c]));
            }
            out[r] = acc;
        }
        out
    }

    /// e-th power of a square matrix.
    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut base = self.clone();
        let mut acc = Mat::identity(self.f.clone(), self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut a = self.a.clone();
        a.extend_from_slice(&other.a);
        Mat { f: self.f.clone(), rows: self.rows + other.rows, cols: self.cols, a }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.f.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let hit = (pr..self.rows).find(|&r| self.get(r, col) != 0);
            let hit = match hit {
                Some(h) => h,
                None => continue,
            };
            if hit != pr {
                for c in 0..self.cols {
                    let (x, y) = (self.get(pr, c), self.get(hit, c));
                    self.set(pr, c, y);
                    self.set(hit, c, x);
                }
            }
            let inv = f.inv(self.get(pr, col));
            if inv != 1 {
                for c in 0..self.cols {
                    let v = self.get(pr, c);
                    self.set(pr, c, f.mul(v, inv));
                }
            }
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.get(r, c);
                    let sub = f.mul(factor, self.get(pr, c));
                    self.set(r, c, f.sub(v, sub));
                }
            }
            pivots.push(col);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical (RREF) basis of the right null space, one row per basis
    /// vector.
    pub fn kernel(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let f = &self.f;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(i, fc));
            }
            rows.push(v);
        }
        let mut k = Mat::from_rows(f.clone(), self.cols, &rows);
        k.rref();
        k
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.f;
        let mut aug = Mat::zero(f.clone(), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn gf(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    #[test]
    fn rref_canonicalizes() {
        let f = gf(5);
        let mut m = Mat::from_rows(f.clone(), 3, &[vec![0, 2, 0], vec![3, 0, 0], vec![1, 0, 4]]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(m, Mat::identity(f, 3));
    }

    #[test]
    fn rref_with_dependent_rows() {
        let f = gf(3);
        let mut m = Mat::from_rows(f, 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        let pivots = m.rref();
        // (2,1,0) = 2 * (1,2,0) mod 3, so the rank is 2.
        assert_eq!(pivots.len(), 2);
        assert_eq!(m.row(0), &[1, 2, 0]);
        assert_eq!(m.row(1), &[0, 0, 1]);
        assert_eq!(m.row(2), &[0, 0, 0]);
    }

    #[test]
    fn kernel_annihilates() {
        let f = gf(7);
        let m = Mat::from_rows(f, 4, &[vec![1, 2, 3, 4], vec![0, 1, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            assert!(m.apply(k.row(r)).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_round_trip() {
        let f = gf(5);
        let m = Mat::from_rows(f, 3, &[vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 2]]);
        let x = vec![2, 3, 1];
        let b = m.apply(&x);
        let got = m.solve(&b).unwrap();
        assert_eq!(m.apply(&got), b);
        assert!(m.solve(&[1, 0, 0]).is_some());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = gf(3);
        let m = Mat::from_rows(f, 2, &[vec![1, 1], vec![2, 2]]);
        assert_eq!(m.solve(&[0, 1]), None);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = gf(3);
        let m = Mat::from_rows(f.clone(), 2, &[vec![1, 1], vec![0, 1]]);
        let mut acc = Mat::identity(f, 2);
        for _ in 0..5 {
            acc = acc.mul(&m);
        }
        assert_eq!(m.pow(5), acc);
        assert_eq!(m.pow(0), Mat::identity(m.field().clone(), 2));
    }
}
