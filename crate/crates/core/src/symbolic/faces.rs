//! Face maps on unnormalized cell groups `Z^{vertex arrays}`.
//!
//! Row deletion is covariant. Column coface `m` sends an array to the sum of
//! all arrays whose `m`-th column deletion gives it back.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::fiber_power::{
    column_insertions, delete_row, out_edge_arrays, targets, vertex_arrays, Array, Shape,
};
use super::sign_basis::{chain_add, Chain};
use super::FiberedPresentation;
use crate::error::SymbolicError;
use crate::fgab::{FgAbGroup, GroupMorphism};
use crate::linalg::IntMatrix;

pub fn row_face(chain: &Chain, shape: Shape, l: usize) -> Chain {
    let mut out = Chain::new();
    for (a, &c) in chain {
        chain_add(&mut out, delete_row(a, shape, l), c);
    }
    out
}

pub fn column_coface(p: &FiberedPresentation, chain: &Chain, shape: Shape, m: usize) -> Chain {
    let mut out = Chain::new();
    for (a, &c) in chain {
        for w in column_insertions(p, shape, a, m) {
            chain_add(&mut out, w, c);
        }
    }
    out
}

/// `Σ_l (−1)^l δ_l`, from shape `(L, M)` to `(L − 1, M)`.
pub fn row_boundary(chain: &Chain, shape: Shape) -> Chain {
    let mut out = Chain::new();
    if shape.l == 0 {
        return out;
    }
    for l in 0..shape.rows() {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        for (a, c) in row_face(chain, shape, l) {
            chain_add(&mut out, a, sign * c);
        }
    }
    out
}

/// `Σ_m (−1)^m ε_m*`, from shape `(L, M)` to `(L, M + 1)`.
pub fn column_coboundary(p: &FiberedPresentation, chain: &Chain, shape: Shape) -> Chain {
    let mut out = Chain::new();
    for m in 0..=shape.cols() {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        for (a, c) in column_coface(p, chain, shape, m) {
            chain_add(&mut out, a, sign * c);
        }
    }
    out
}

/// The dimension-group endomorphism of `Σ_{L,M}`: each vertex array goes to
/// the sum of the targets of its outgoing edge arrays.
pub fn gamma(p: &FiberedPresentation, chain: &Chain, shape: Shape) -> Chain {
    let mut out = Chain::new();
    for (a, &c) in chain {
        for e in out_edge_arrays(p, shape, a) {
            chain_add(&mut out, targets(p, &e), c);
        }
    }
    out
}

pub fn unit(a: &[usize]) -> Chain {
    let mut c = Chain::new();
    c.insert(a.to_vec(), 1);
    c
}

/// All vertex arrays of a shape with an index.
#[derive(Clone, Debug)]
pub struct ArrayIndex {
    pub shape: Shape,
    pub arrays: Vec<Array>,
    index: HashMap<Array, usize>,
}

impl ArrayIndex {
    pub fn new(p: &FiberedPresentation, shape: Shape) -> Self {
        let arrays = vertex_arrays(p, shape);
        let index = arrays
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Self {
            shape,
            arrays,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.arrays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrays.is_empty()
    }

    /// Coefficient vector of a chain; `None` if it leaves the array set.
    pub fn dense(&self, chain: &Chain) -> Option<Vec<i64>> {
        let mut v = vec![0; self.len()];
        for (a, &c) in chain {
            v[*self.index.get(a)?] += c;
        }
        Some(v)
    }

    /// Matrix whose column `j` is `f(unit(arrays[j]))`, expressed in `target`.
    pub fn matrix_of(&self, target: &ArrayIndex, f: impl Fn(&Chain) -> Chain) -> Option<IntMatrix> {
        let cols: Option<Vec<Vec<BigInt>>> = self
            .arrays
            .iter()
            .map(|a| {
                target
                    .dense(&f(&unit(a)))
                    .map(|v| v.into_iter().map(BigInt::from).collect())
            })
            .collect();
        Some(IntMatrix::from_columns(target.len(), &cols?))
    }
}

/// `γ` on the unnormalized cell group of the given shape.
pub fn unreduced_gamma(p: &FiberedPresentation, idx: &ArrayIndex) -> IntMatrix {
    idx.matrix_of(idx, |c| gamma(p, c, idx.shape))
        .expect("edge arrays end at vertex arrays")
}

fn equivariant_map(
    p: &FiberedPresentation,
    src: &ArrayIndex,
    dst: &ArrayIndex,
    f: impl Fn(&Chain) -> Chain,
    face: String,
) -> Result<GroupMorphism, SymbolicError> {
    let not_eq = || SymbolicError::NotEquivariant {
        face: face.clone(),
        l: src.shape.l,
        m: src.shape.m,
    };
    let matrix = src.matrix_of(dst, &f).ok_or_else(not_eq)?;
    let gs = unreduced_gamma(p, src);
    let gd = unreduced_gamma(p, dst);
    if matrix.mul(&gs) != gd.mul(&matrix) {
        return Err(not_eq());
    }
    let (a, b) = (FgAbGroup::free(src.len()), FgAbGroup::free(dst.len()));
    Ok(GroupMorphism::new(a, b, matrix).expect("free groups"))
}

/// Row deletion `δ_l : Z^{arrays(L, M)} → Z^{arrays(L − 1, M)}`, checked to
/// commute with `γ`.
pub fn face_row_covariant(
    p: &FiberedPresentation,
    l_dim: usize,
    m_dim: usize,
    l: usize,
) -> Result<GroupMorphism, SymbolicError> {
    if l_dim == 0 || l > l_dim {
        return Err(SymbolicError::IndexOutOfRange {
            index: l,
            l: l_dim,
            m: m_dim,
        });
    }
    let shape = Shape::new(l_dim, m_dim);
    let src = ArrayIndex::new(p, shape);
    let dst = ArrayIndex::new(p, Shape::new(l_dim - 1, m_dim));
    equivariant_map(
        p,
        &src,
        &dst,
        |c| row_face(c, shape, l),
        format!("row deletion {l}"),
    )
}

/// Column coface `ε_m* : Z^{arrays(L, M)} → Z^{arrays(L, M + 1)}`, checked
/// to commute with `γ`.
pub fn face_column_contravariant(
    p: &FiberedPresentation,
    l_dim: usize,
    m_dim: usize,
    m: usize,
) -> Result<GroupMorphism, SymbolicError> {
    if m > m_dim + 1 {
        return Err(SymbolicError::IndexOutOfRange {
            index: m,
            l: l_dim,
            m: m_dim,
        });
    }
    let shape = Shape::new(l_dim, m_dim);
    let src = ArrayIndex::new(p, shape);
    let dst = ArrayIndex::new(p, Shape::new(l_dim, m_dim + 1));
    equivariant_map(
        p,
        &src,
        &dst,
        |c| column_coface(p, c, shape, m),
        format!("column insertion {m}"),
    )
}
