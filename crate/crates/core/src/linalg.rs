//! Exact linear algebra over `F_p`: echelon forms, kernels and the subspace
//! lattice operations the canonical filtration is built from.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elt, PrimeField};

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

/// Semilinearity of an operator iterated by [`Mat::stable_rank`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    Linear,
    /// `A, A^{(p)}, A^{(p^2)}, ...` composed, as for a p-linear operator.
    PthPower,
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![Elt::ZERO; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elt::ONE);
        }
        m
    }

    pub fn from_u64(field: PrimeField, rows: usize, cols: usize, entries: &[u64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data: entries.iter().map(|&x| field.elt(x)).collect(),
        })
    }

    /// Convenience for tests and literals; panics on ragged input.
    pub fn from_rows(field: PrimeField, rows: &[&[u64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<u64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().copied()
            })
            .collect();
        Self::from_u64(field, rows.len(), cols, &flat).unwrap()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> &[Elt] {
        &self.data
    }

    pub fn to_u64(&self) -> Vec<u64> {
        self.data.iter().map(|x| x.value()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise map, e.g. p-th roots of every entry.
    pub fn map(&self, f: impl Fn(Elt) -> Elt) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Sub-block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut b = Mat::zeros(self.field, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                b.set(i - r0, j - c0, self.get(i, j));
            }
        }
        b
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = self.field;
        let mut out = Mat::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = k.add(out.get(i, j), k.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Elt]) -> Vec<Elt> {
        debug_assert_eq!(v.len(), self.cols);
        let k = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elt::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut acc = Mat::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, &mut m.data, self.rows, self.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space `{v : Av = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let k = self.field;
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis = (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Elt::ZERO; n];
                v[free] = Elt::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(r.get(row, free));
                }
                v
            })
            .collect();
        Subspace::from_generators_unchecked(k, n, basis)
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        let cols = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::from_generators_unchecked(self.field, self.rows, cols)
    }

    /// Rank of the fully iterated operator: `rank(A^n)` for the linear case,
    /// `rank(A · A^{(p)} ⋯ A^{(p^{n-1})})` for the p-linear one. Iterates the
    /// full ambient dimension without early exit.
    pub fn stable_rank(&self, twist: Twist) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "stable rank of a non-square matrix".into(),
            ));
        }
        let k = self.field;
        let mut acc = Mat::identity(k, self.rows);
        let mut factor = self.clone();
        for _ in 0..self.rows {
            acc = acc.mul(&factor)?;
            if twist == Twist::PthPower {
                factor = factor.map(|x| k.frobenius(x));
            }
        }
        Ok(acc.rank())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat(p={}) [", self.field.p())?;
        for i in 0..self.rows {
            let row: Vec<u64> = self.row(i).iter().map(|x| x.value()).collect();
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

fn rref_in_place(k: &PrimeField, data: &mut [Elt], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = k.inv(data[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            data[r * cols + j] = k.mul(data[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let t = data[i * cols + c];
            if t.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = k.sub(data[i * cols + j], k.mul(t, data[r * cols + j]));
                data[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A subspace of `F_p^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. Equality is equality of those rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<Elt>>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Elt::ZERO; ambient];
                v[i] = Elt::ONE;
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
        }
    }

    pub fn from_generators(field: PrimeField, ambient: usize, gens: Vec<Vec<Elt>>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F_p^{ambient}",
                bad.len()
            )));
        }
        Ok(Self::from_generators_unchecked(field, ambient, gens))
    }

    pub fn from_u64(field: PrimeField, ambient: usize, gens: &[&[u64]]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|g| g.iter().map(|&x| field.elt(x)).collect())
            .collect();
        Self::from_generators(field, ambient, gens)
    }

    fn from_generators_unchecked(field: PrimeField, ambient: usize, gens: Vec<Vec<Elt>>) -> Self {
        let rows = gens.len();
        let mut data: Vec<Elt> = gens.into_iter().flatten().collect();
        let rank = rref_in_place(&field, &mut data, rows, ambient).len();
        data.truncate(rank * ambient);
        let basis = data.chunks(ambient.max(1)).map(|c| c.to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis: if ambient == 0 { Vec::new() } else { basis },
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elt>] {
        &self.basis
    }

    pub fn basis_u64(&self) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|v| v.iter().map(|x| x.value()).collect())
            .collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_p^{} and F_p^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut gens = self.basis.clone();
        gens.push(v.to_vec());
        Self::from_generators_unchecked(self.field, self.ambient, gens).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_generators_unchecked(
            self.field,
            self.ambient,
            gens,
        ))
    }

    /// Solves `Σ λ_i u_i = Σ μ_j w_j` through the kernel of the stacked basis.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let k = self.field;
        let n = self.ambient;
        let r = self.dim();
        let s = other.dim();
        if r == 0 || s == 0 {
            return Ok(Subspace::zero(k, n));
        }
        let mut m = Mat::zeros(k, n, r + s);
        for (j, u) in self.basis.iter().enumerate() {
            for (i, &x) in u.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for (i, &x) in w.iter().enumerate() {
                m.set(i, r + j, k.neg(x));
            }
        }
        let gens = m
            .kernel()
            .basis
            .iter()
            .map(|lam| {
                let mut v = vec![Elt::ZERO; n];
                for (j, u) in self.basis.iter().enumerate() {
                    for i in 0..n {
                        v[i] = k.add(v[i], k.mul(lam[j], u[i]));
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_generators_unchecked(k, n, gens))
    }

    /// `A(U)`.
    pub fn image(&self, a: &Mat) -> Result<Subspace> {
        if a.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on F_p^{}",
                a.rows(),
                a.cols(),
                self.ambient
            )));
        }
        let gens = self.basis.iter().map(|v| a.apply(v)).collect();
        Ok(Self::from_generators_unchecked(self.field, a.rows(), gens))
    }

    /// Annihilator `{ℓ : ℓ·w = 0 for all w}` as row vectors.
    fn annihilator(&self) -> Vec<Vec<Elt>> {
        let mut m = Mat::zeros(self.field, self.dim(), self.ambient);
        for (i, v) in self.basis.iter().enumerate() {
            for (j, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m.kernel().basis
    }

    /// `{v : Av ∈ W}` for `W = self`.
    pub fn preimage(&self, a: &Mat) -> Result<Subspace> {
        if a.rows() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix into F_p^{}",
                a.rows(),
                a.cols(),
                self.ambient
            )));
        }
        let ann = self.annihilator();
        if ann.is_empty() {
            return Ok(Subspace::full(self.field, a.cols()));
        }
        let mut l = Mat::zeros(self.field, ann.len(), self.ambient);
        for (i, v) in ann.iter().enumerate() {
            for (j, &x) in v.iter().enumerate() {
                l.set(i, j, x);
            }
        }
        Ok(l.mul(a)?.kernel())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in F_{}^{}) {:?}",
            self.dim(),
            self.field.p(),
            self.ambient,
            self.basis_u64()
        )
    }
}

/// Free functions mirroring the method forms.
pub fn rank(a: &Mat) -> usize {
    a.rank()
}

pub fn kernel(a: &Mat) -> Subspace {
    a.kernel()
}

pub fn intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.intersect(w)
}

pub fn preimage(a: &Mat, w: &Subspace) -> Result<Subspace> {
    w.preimage(a)
}

pub fn stable_rank(a: &Mat, twist: Twist) -> Result<usize> {
    a.stable_rank(twist)
}
