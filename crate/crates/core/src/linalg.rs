//! Exact integer linear algebra.
//!
//! Every group computation in the crate bottoms out here. Entries are
//! arbitrary-precision integers; nothing in this module touches floating
//! point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from machine integers. Panics if the slice length is
    /// not `rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count mismatch");
        Self {
            rows,
            cols,
            entries: values.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self {
            rows: r,
            cols: c,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(values: &[BigInt]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, value: &BigInt) {
        self.entries[i * self.cols + j] += value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.entries[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            out.entries[r * self.cols..(r + 1) * self.cols].clone_from_slice(self.row(i));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out.entries[i * idx.len() + c] = self.get(i, j).clone();
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            out.entries[i * cols..i * cols + self.cols].clone_from_slice(self.row(i));
            out.entries[i * cols + self.cols..(i + 1) * cols].clone_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.entries[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Kronecker product: `(a ⊗ b)[(i, k), (j, l)] = a[i, j] * b[k, l]`, with
    /// the pair `(i, k)` flattened as `i * b.rows + k`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> IntMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Row-major entries rendered as decimal strings.
    pub fn to_string_entries(&self) -> Vec<String> {
        self.entries.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[{}x{}](", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(","))?;
        }
        write!(f, ")")
    }
}

/// Serialized form: dimensions plus row-major entries as decimal strings, so
/// no consumer ever sees a lossy number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl From<&IntMatrix> for MatrixRecord {
    fn from(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            entries: m.to_string_entries(),
        }
    }
}

impl TryFrom<&MatrixRecord> for IntMatrix {
    type Error = LinalgError;

    fn try_from(rec: &MatrixRecord) -> Result<Self, LinalgError> {
        let entries = rec
            .entries
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| LinalgError::Parse(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::new(rec.rows, rec.cols, entries)
    }
}

/// Result of a Smith normal form computation: `u * m * v = d`.
///
/// The inverses of the unimodular transforms are tracked alongside them,
/// since lattice coordinates need `u⁻¹`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d₁ | d₂ | … | d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

type Rows = Vec<Vec<BigInt>>;

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn rows_to_matrix(rows: Rows, ncols: usize) -> IntMatrix {
    let nrows = rows.len();
    IntMatrix {
        rows: nrows,
        cols: ncols,
        entries: rows.into_iter().flatten().collect(),
    }
}

struct SnfState {
    d: Rows,
    u: Rows,
    u_inv: Rows,
    v: Rows,
    v_inv: Rows,
}

impl SnfState {
    // row_i += q * row_t
    fn row_add(&mut self, i: usize, t: usize, q: &BigInt) {
        for rows in [&mut self.d, &mut self.u] {
            let (src, dst) = pick_two(rows, t, i);
            for (x, y) in dst.iter_mut().zip(src.iter()) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
        // u_inv: column t -= q * column i
        for row in self.u_inv.iter_mut() {
            if !row[i].is_zero() {
                let delta = q * &row[i];
                row[t] -= delta;
            }
        }
    }

    fn row_swap(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        self.d.swap(i, t);
        self.u.swap(i, t);
        for row in self.u_inv.iter_mut() {
            row.swap(i, t);
        }
    }

    fn row_negate(&mut self, t: usize) {
        for x in self.d[t].iter_mut().chain(self.u[t].iter_mut()) {
            *x = -std::mem::take(x);
        }
        for row in self.u_inv.iter_mut() {
            row[t] = -std::mem::take(&mut row[t]);
        }
    }

    // col_j += q * col_t
    fn col_add(&mut self, j: usize, t: usize, q: &BigInt) {
        for rows in [&mut self.d, &mut self.v] {
            for row in rows.iter_mut() {
                if !row[t].is_zero() {
                    let delta = q * &row[t];
                    row[j] += delta;
                }
            }
        }
        // v_inv: row t -= q * row j
        let (src, dst) = pick_two(&mut self.v_inv, j, t);
        for (x, y) in dst.iter_mut().zip(src.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }

    fn col_swap(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for rows in [&mut self.d, &mut self.v] {
            for row in rows.iter_mut() {
                row.swap(j, t);
            }
        }
        self.v_inv.swap(j, t);
    }
}

/// Returns (`&rows[src]`, `&mut rows[dst]`) for distinct indices.
fn pick_two(rows: &mut Rows, src: usize, dst: usize) -> (&Vec<BigInt>, &mut Vec<BigInt>) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = rows.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
///
/// Postconditions: `u * m * v == d`, `u` and `v` unimodular, `d` diagonal with
/// nonnegative entries forming a divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (nr, nc) = (m.rows, m.cols);
    let mut st = SnfState {
        d: (0..nr).map(|i| m.row(i).to_vec()).collect(),
        u: identity_rows(nr),
        u_inv: identity_rows(nr),
        v: identity_rows(nc),
        v_inv: identity_rows(nc),
    };
    let mut rank = 0;
    'outer: for t in 0..nr.min(nc) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    let x = &st.d[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => x.magnitude() < st.d[bi][bj].magnitude(),
                    };
                    if better {
                        best = Some((i, j));
                        if x.magnitude().is_one() {
                            break;
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            st.row_swap(t, pi);
            st.col_swap(t, pj);

            let mut clean = true;
            for i in t + 1..nr {
                if st.d[i][t].is_zero() {
                    continue;
                }
                let q = st.d[i][t].div_floor(&st.d[t][t]);
                st.row_add(i, t, &-q);
                if !st.d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..nc {
                if st.d[t][j].is_zero() {
                    continue;
                }
                let q = st.d[t][j].div_floor(&st.d[t][t]);
                st.col_add(j, t, &-q);
                if !st.d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = st.d[t][t].clone();
            let offender = (t + 1..nr).find(|&i| {
                st.d[i][t + 1..]
                    .iter()
                    .any(|x| !x.is_zero() && !x.is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => st.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.d[t][t].is_negative() {
            st.row_negate(t);
        }
        rank = t + 1;
    }
    SmithForm {
        u: rows_to_matrix(st.u, nr),
        d: rows_to_matrix(st.d, nc),
        v: rows_to_matrix(st.v, nc),
        u_inv: rows_to_matrix(st.u_inv, nr),
        v_inv: rows_to_matrix(st.v_inv, nc),
        rank,
    }
}

/// Saturated basis of the integer null space, one vector per column.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank..m.cols).collect();
    snf.v.select_cols(&idx)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank
}

/// A sublattice of `Z^n` given by generators, with an exact coordinate solver.
///
/// From `u * gens * v = diag(d₁..d_r)` the vectors `dᵢ · u⁻¹ eᵢ` form a basis,
/// and `y` lies in the lattice iff `(u y)ᵢ` is divisible by `dᵢ` for `i < r`
/// and vanishes for `i ≥ r`; the quotients are its coordinates.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    u: IntMatrix,
    diag: Vec<BigInt>,
}

impl Lattice {
    pub fn from_generators(gens: &IntMatrix) -> Self {
        let snf = smith_normal_form(gens);
        let diag = snf.invariant_factors();
        let n = gens.rows();
        let mut basis = IntMatrix::zeros(n, diag.len());
        for (k, dk) in diag.iter().enumerate() {
            for i in 0..n {
                let x = snf.u_inv.get(i, k);
                if !x.is_zero() {
                    basis.set(i, k, x * dk);
                }
            }
        }
        Self {
            ambient: n,
            basis,
            u: snf.u,
            diag,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Basis vectors as columns (`ambient × rank`).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn coordinates(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(y.len(), self.ambient, "vector outside the ambient space");
        let z = self.u.mul_vec(y);
        let r = self.diag.len();
        if z[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut coords = Vec::with_capacity(r);
        for (zi, di) in z.into_iter().zip(&self.diag) {
            let (q, rem) = zi.div_rem(di);
            if !rem.is_zero() {
                return None;
            }
            coords.push(q);
        }
        Some(coords)
    }

    pub fn contains(&self, y: &[BigInt]) -> bool {
        self.coordinates(y).is_some()
    }

    /// Coordinates of every column of `m`, as columns of the result.
    pub fn coordinates_of_columns(&self, m: &IntMatrix) -> Option<IntMatrix> {
        let cols = (0..m.cols())
            .map(|j| self.coordinates(&m.column(j)))
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix::from_columns(self.rank(), &cols))
    }
}
