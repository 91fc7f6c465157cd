//! Exact linear algebra over Q and Q(i): echelon forms, the subspace
//! lattice (span, sum, intersection, canonical complements), solving, and
//! integer-matrix utilities (determinants, gcd of minors, saturated kernels).
//!
//! Subspaces are kept in reduced row-echelon form, so equal subspaces have
//! identical representations and `==` is subspace equality.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Gauss, Rat, Scalar};

/// Dense rectangular matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<K: Scalar> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<K>>,
}

impl<K: Scalar> Matrix<K> {
    pub fn new(data: Vec<Vec<K>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix".into()));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![K::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i][i] = K::one();
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix<K>) -> Result<Matrix<K>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::<K>::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.data[i][k].mul(&other.data[k][j]);
                    out.data[i][j] = out.data[i][j].add(&t);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[K]) -> Result<Vec<K>> {
        if self.cols != v.len() {
            return Err(Error::Dimension("matrix-vector shape".into()));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                let mut acc = K::zero();
                for (a, x) in row.iter().zip(v) {
                    acc = acc.add(&a.mul(x));
                }
                acc
            })
            .collect())
    }

    /// Reduce to reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].inv().expect("nonzero pivot");
            for j in col..self.cols {
                self.data[row][j] = self.data[row][j].mul(&inv);
            }
            for r in 0..self.rows {
                if r != row && !self.data[r][col].is_zero() {
                    let factor = self.data[r][col].clone();
                    for j in col..self.cols {
                        let t = factor.mul(&self.data[row][j]);
                        self.data[r][j] = self.data[r][j].sub(&t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right kernel {x : Mx = 0}.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (r, &p) in pivot_set.iter().enumerate() {
                v[p] = m.data[r][free].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of Mx = rhs, if any.
    pub fn solve(&self, rhs: &[K]) -> Result<Option<Vec<K>>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension("solve: rhs length".into()));
        }
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i][..self.cols].clone_from_slice(&self.data[i]);
            aug.data[i][self.cols] = rhs[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return Ok(None); // inconsistent
        }
        let mut x = vec![K::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if nonsingular.
    pub fn inverse(&self) -> Result<Option<Matrix<K>>> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            aug.data[i][..n].clone_from_slice(&self.data[i]);
            aug.data[i][n + i] = K::one();
        }
        let pivots = aug.rref_in_place();
        // The augmented block always has full row rank; singularity shows up
        // as a pivot escaping into the identity columns.
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            inv.data[i].clone_from_slice(&aug.data[i][n..]);
        }
        Ok(Some(inv))
    }
}

/// Subspace of K^ambient in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<K: Scalar> {
    ambient: usize,
    basis: Vec<Vec<K>>,
}

impl<K: Scalar> Subspace<K> {
    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<K>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::Dimension("span: vector length != ambient".into()));
        }
        let mut m = Matrix::new(vectors.to_vec())?;
        if m.rows == 0 {
            return Ok(Subspace {
                ambient,
                basis: Vec::new(),
            });
        }
        let pivots = m.rref_in_place();
        m.data.truncate(pivots.len());
        Ok(Subspace {
            ambient,
            basis: m.data,
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::<K>::identity(ambient).data,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<K>] {
        &self.basis
    }

    pub fn contains_vec(&self, v: &[K]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::Dimension("membership: vector length".into()));
        }
        // Reduce v against the echelon basis.
        let mut v = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if !v[pivot].is_zero() {
                let factor = v[pivot].clone();
                for j in 0..self.ambient {
                    let t = factor.mul(&row[j]);
                    v[j] = v[j].sub(&t);
                }
            }
        }
        Ok(v.iter().all(K::is_zero))
    }

    pub fn contains(&self, other: &Subspace<K>) -> Result<bool> {
        for v in &other.basis {
            if !self.contains_vec(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace<K>) -> Result<Subspace<K>> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("sum of subspaces: ambient".into()));
        }
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace<K>) -> Result<Subspace<K>> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("intersection: ambient".into()));
        }
        let n = self.ambient;
        let mut block: Vec<Vec<K>> = Vec::new();
        for v in &self.basis {
            let mut row = v.clone();
            row.extend(v.iter().cloned());
            block.push(row);
        }
        for v in &other.basis {
            let mut row = v.clone();
            row.extend(vec![K::zero(); n]);
            block.push(row);
        }
        if block.is_empty() {
            return Ok(Subspace::zero(n));
        }
        let mut m = Matrix::new(block)?;
        m.rref_in_place();
        let mut inter = Vec::new();
        for row in &m.data {
            if row[..n].iter().all(K::is_zero) && !row[n..].iter().all(K::is_zero) {
                inter.push(row[n..].to_vec());
            }
        }
        Subspace::span(n, &inter)
    }

    /// Canonical complement of `self` inside `enclosing`: the span of the
    /// enclosing basis vectors at non-pivot positions of `self` written in
    /// the enclosing coordinates. Requires `self` to be a subspace of
    /// `enclosing`.
    pub fn complement_in(&self, enclosing: &Subspace<K>) -> Result<Subspace<K>> {
        if self.ambient != enclosing.ambient {
            return Err(Error::Dimension("complement: ambient".into()));
        }
        if !enclosing.contains(self)? {
            return Err(Error::NotContained(
                "complement_in requires inner subspace to lie in the enclosing one".into(),
            ));
        }
        // Coordinates of self's basis relative to enclosing's basis.
        let b = Matrix::new(enclosing.basis.clone())?.transpose();
        let mut coords = Vec::new();
        for v in &self.basis {
            let sol = b
                .solve(v)?
                .ok_or_else(|| Error::Internal("contained vector has no coordinates".into()))?;
            coords.push(sol);
        }
        let pivots = if coords.is_empty() {
            Vec::new()
        } else {
            Matrix::new(coords)?.rref_in_place()
        };
        let mut comp = Vec::new();
        for (j, bv) in enclosing.basis.iter().enumerate() {
            if !pivots.contains(&j) {
                comp.push(bv.clone());
            }
        }
        Subspace::span(self.ambient, &comp)
    }

    /// Image under a linear map given by a rows x ambient matrix.
    pub fn image(&self, map: &Matrix<K>) -> Result<Subspace<K>> {
        if map.cols != self.ambient {
            return Err(Error::Dimension("image: map shape".into()));
        }
        let vs: Vec<Vec<K>> = self
            .basis
            .iter()
            .map(|v| map.mul_vec(v))
            .collect::<Result<_>>()?;
        Subspace::span(map.rows, &vs)
    }
}

/// Realify a Gaussian-rational subspace of C^r into Q^{2r} with coordinates
/// (x_1..x_r, y_1..y_r): each complex basis vector contributes itself and its
/// multiple by i.
pub fn realify_subspace(s: &Subspace<Gauss>) -> Subspace<Rat> {
    let r = s.ambient_dim();
    let mut vecs = Vec::new();
    for v in s.basis() {
        let mut a = Vec::with_capacity(2 * r);
        let mut b = Vec::with_capacity(2 * r);
        for z in v {
            a.push(z.re.clone());
            b.push(-z.im.clone());
        }
        for z in v {
            a.push(z.im.clone());
            b.push(z.re.clone());
        }
        vecs.push(a);
        vecs.push(b);
    }
    Subspace::span(2 * r, &vecs).expect("realified span")
}

/// Realify a complex-linear map C^a -> C^b into the 2b x 2a rational matrix
/// acting on (x, y) coordinate blocks.
pub fn realify_matrix(m: &Matrix<Gauss>) -> Matrix<Rat> {
    let (b, a) = (m.rows, m.cols);
    let mut out = Matrix::zero(2 * b, 2 * a);
    for i in 0..b {
        for j in 0..a {
            let z = &m.data[i][j];
            out.data[i][j] = z.re.clone();
            out.data[i][a + j] = -z.im.clone();
            out.data[b + i][j] = z.im.clone();
            out.data[b + i][a + j] = z.re.clone();
        }
    }
    out
}

/// Complexify a rational subspace of Q^n into Q(i)^n (same basis vectors).
pub fn complexify_subspace(s: &Subspace<Rat>) -> Subspace<Gauss> {
    let vecs: Vec<Vec<Gauss>> = s
        .basis()
        .iter()
        .map(|v| v.iter().map(|x| Gauss::from_rat(x.clone())).collect())
        .collect();
    Subspace::span(s.ambient_dim(), &vecs).expect("complexified span")
}

/// Exact integer determinant (Bareiss fraction-free elimination).
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of non-square");
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// gcd of all k x k minors of an integer matrix; zero if every minor is zero.
pub fn smith_gcd_minors(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if k == 0 {
        return BigInt::one();
    }
    if k > rows || k > cols {
        return BigInt::zero();
    }
    let mut g = BigInt::zero();
    for rsel in (0..rows).combinations(k) {
        for csel in (0..cols).combinations(k) {
            let sub: Vec<Vec<BigInt>> = rsel
                .iter()
                .map(|&i| csel.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            g = g.gcd(&int_det(&sub));
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// Column echelon form of an integer matrix under a unimodular column
/// transform: returns (W, U, pivots) with M U = W, U unimodular (columns of
/// U stored as rows), and pivots the list of (row, column) leading positions.
#[allow(clippy::type_complexity)]
fn int_column_echelon(
    m: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w: Vec<Vec<BigInt>> = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut row = vec![BigInt::zero(); cols];
            row[i] = BigInt::one();
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut lead = 0usize;
    for i in 0..rows {
        if lead == cols {
            break;
        }
        // Euclidean reduction across columns lead..cols in row i.
        loop {
            let mut best: Option<usize> = None;
            for j in lead..cols {
                if !w[i][j].is_zero()
                    && best.map_or(true, |b| w[i][j].magnitude() < w[i][b].magnitude())
                {
                    best = Some(j);
                }
            }
            let Some(bj) = best else { break };
            if bj != lead {
                for r in w.iter_mut() {
                    r.swap(lead, bj);
                }
                u.swap(lead, bj);
            }
            let mut done = true;
            for j in lead + 1..cols {
                if w[i][j].is_zero() {
                    continue;
                }
                let q = w[i][j].div_floor(&w[i][lead]);
                if !q.is_zero() {
                    for r in w.iter_mut() {
                        let t = &r[lead] * &q;
                        r[j] -= t;
                    }
                    let scaled: Vec<BigInt> = u[lead].iter().map(|x| x * &q).collect();
                    for (x, s) in u[j].iter_mut().zip(scaled) {
                        *x -= s;
                    }
                }
                if !w[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !w[i][lead].is_zero() {
            pivots.push((i, lead));
            lead += 1;
        }
    }
    (w, u, pivots)
}

/// Saturated integer kernel {x in Z^n : Mx = 0} of an integer matrix.
pub fn int_kernel(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (_, mut u, pivots) = int_column_echelon(m);
    u.split_off(pivots.len())
}

/// One integer solution of Mx = rhs, if any.
pub fn int_solve(m: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    assert_eq!(rhs.len(), rows, "int_solve: rhs length");
    let (w, u, pivots) = int_column_echelon(m);
    // W is column-echelon: pivot column p_k has zeros above its pivot row
    // and non-pivot columns are zero, so forward substitution on the pivot
    // coordinates is exact; divisibility failure means no integer solution.
    let mut y = vec![BigInt::zero(); cols];
    for &(r, p) in &pivots {
        let mut acc = rhs[r].clone();
        for &(_, q) in pivots.iter().take_while(|&&(rq, _)| rq < r) {
            acc -= &w[r][q] * &y[q];
        }
        let (quot, rem) = acc.div_rem(&w[r][p]);
        if !rem.is_zero() {
            return None;
        }
        y[p] = quot;
    }
    // x = U y; verify, which also catches inconsistent non-pivot rows.
    let x: Vec<BigInt> = (0..cols)
        .map(|i| (0..cols).map(|j| &u[j][i] * &y[j]).sum())
        .collect();
    for (row, want) in m.iter().zip(rhs) {
        let got: BigInt = row.iter().zip(&x).map(|(a, b)| a * b).sum();
        if &got != want {
            return None;
        }
    }
    Some(x)
}
