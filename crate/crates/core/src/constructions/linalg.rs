//! Dense linear algebra over a prime field.

use crate::{is_prime, Error, Result};

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (p64, mut b, mut e, mut r) = (p as u64, a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p64;
        }
        b = b * b % p64;
        e >>= 1;
    }
    r as u32
}

pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// `a - b` entrywise.
pub fn vsub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

pub fn vadd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

pub fn vscale(a: &[u32], c: u32, p: u32) -> Vec<u32> {
    a.iter().map(|&x| x * c % p).collect()
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<&[u32]> = (0..self.rows).map(|i| self.row(i)).collect();
        write!(f, "Matrix(F{}, {:?})", self.p, rows)
    }
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("matrix rows have different lengths".into()));
        }
        Ok(Matrix {
            p,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| x % p).collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, dim: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, c[i]);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u64;
                }
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + b) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = (*a as u64 * c as u64 % self.p as u64) as u32;
        }
        out
    }

    pub fn add_scalar(&self, c: u32) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let k = i * self.cols + i;
            out.data[k] = (out.data[k] + c) % self.p;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(None);
        (m, pivots)
    }

    /// Row reduces in place, applying the same row operations to `track`.
    fn rref_in_place(&mut self, mut track: Option<&mut Matrix>) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, piv);
            if let Some(t) = track.as_deref_mut() {
                t.swap_rows(r, piv);
            }
            let inv = inv_mod(self.get(r, c), p);
            self.scale_row(r, inv);
            if let Some(t) = track.as_deref_mut() {
                t.scale_row(r, inv);
            }
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    if f != 0 {
                        self.axpy_row(i, r, p - f);
                        if let Some(t) = track.as_deref_mut() {
                            t.axpy_row(i, r, p - f);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        let p = self.p as u64;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = (*x as u64 * c as u64 % p) as u32;
        }
    }

    /// `row[i] += f * row[src]`.
    fn axpy_row(&mut self, i: usize, src: usize, f: u32) {
        let p = self.p as u64;
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j] as u64;
            let d = &mut self.data[i * self.cols + j];
            *d = ((*d as u64 + f as u64 * s) % p) as u32;
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (e, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - e.get(r, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let mut m = self.clone();
        let mut t = Matrix::identity(self.p, self.rows);
        let pivots = m.rref_in_place(Some(&mut t));
        (pivots.len() == self.rows).then_some(t)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Solves `A x = b` for many right-hand sides with one elimination.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    p: u32,
    cols: usize,
    echelon: Matrix,
    transform: Matrix,
    pivots: Vec<usize>,
    kernel: Vec<Vec<u32>>,
}

impl LinearSystem {
    pub fn new(a: &Matrix) -> Self {
        let mut echelon = a.clone();
        let mut transform = Matrix::identity(a.p, a.rows);
        let pivots = echelon.rref_in_place(Some(&mut transform));
        let kernel = a.kernel();
        LinearSystem {
            p: a.p,
            cols: a.cols,
            echelon,
            transform,
            pivots,
            kernel,
        }
    }

    /// Basis of the solution space of the homogeneous system.
    pub fn kernel(&self) -> &[Vec<u32>] {
        &self.kernel
    }

    /// One solution, with free variables set to zero.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let tb = self.transform.mul_vec(b);
        if tb[self.pivots.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = tb[r] % self.p;
        }
        debug_assert!(self.echelon.rows == 0 || self.echelon.get(0, self.pivots.first().copied().unwrap_or(0)) <= 1);
        Some(x)
    }
}

/// A subspace of `F_p^n` kept as a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(F{}^{}, dim {}, {:?})", self.p, self.ambient, self.dim(), self.basis)
    }
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        let mut s = Self::zero(p, ambient);
        for i in 0..ambient {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.insert(&v);
        }
        s
    }

    pub fn span(p: u32, ambient: usize, vecs: &[Vec<u32>]) -> Self {
        let mut s = Self::zero(p, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Residue of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut r: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            let f = r[c];
            if f != 0 {
                for (x, &y) in r.iter_mut().zip(b) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let mut r = self.reduce(v);
        let Some(c) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[c], p);
        r.iter_mut().for_each(|x| *x = *x * inv % p);
        for b in self.basis.iter_mut() {
            let f = b[c];
            if f != 0 {
                for (x, &y) in b.iter_mut().zip(&r) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.basis.insert(pos, r);
        true
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&c| v[c] % self.p).collect())
    }

    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![0u32; self.ambient];
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                for (x, &y) in out.iter_mut().zip(b) {
                    *x = (*x + c * y) % p;
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// `{v : a · v = 0 for every a in self}`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.p, self.ambient);
        }
        let m = Matrix::from_rows(self.p, &self.basis).expect("rectangular");
        Subspace::span(self.p, self.ambient, &m.kernel())
    }

    /// Rows whose common kernel is this subspace.
    pub fn equations(&self) -> Matrix {
        let ann = self.annihilator();
        if ann.basis.is_empty() {
            return Matrix::zeros(self.p, 0, self.ambient);
        }
        Matrix::from_rows(self.p, &ann.basis).expect("rectangular")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let eq_a = self.equations();
        let eq_b = other.equations();
        let mut rows = eq_a.to_rows();
        rows.extend(eq_b.to_rows());
        if rows.is_empty() {
            return Subspace::full(self.p, self.ambient);
        }
        let m = Matrix::from_rows(self.p, &rows).expect("rectangular");
        Subspace::span(self.p, self.ambient, &m.kernel())
    }
}

/// Every nonzero vector of `span(basis)` whose first nonzero coefficient is 1.
pub fn projective_points(p: u32, basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let n = basis[0].len();
    let mut out = Vec::new();
    let mut coeffs = vec![0u32; k];
    loop {
        let lead = coeffs.iter().position(|&c| c != 0);
        if lead.map_or(false, |i| coeffs[i] == 1) {
            let mut v = vec![0u32; n];
            for (b, &c) in basis.iter().zip(&coeffs) {
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = (*x + c * y) % p;
                    }
                }
            }
            out.push(v);
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}
