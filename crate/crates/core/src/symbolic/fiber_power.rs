use itertools::Itertools;

use super::presentation::{FiberedPresentation, Partition};
use crate::error::SymbolicError;

/// `(L, M)`: arrays have `L + 1` rows and `M + 1` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub l: usize,
    pub m: usize,
}

impl Shape {
    pub fn new(l: usize, m: usize) -> Self {
        Self { l, m }
    }

    pub fn rows(&self) -> usize {
        self.l + 1
    }

    pub fn cols(&self) -> usize {
        self.m + 1
    }

    pub fn entries(&self) -> usize {
        self.rows() * self.cols()
    }
}

/// Row-major array of base vertex or edge indices.
pub type Array = Vec<usize>;

pub fn row_of(a: &[usize], shape: Shape, l: usize) -> &[usize] {
    &a[l * shape.cols()..(l + 1) * shape.cols()]
}

pub fn delete_row(a: &[usize], shape: Shape, l: usize) -> Array {
    let c = shape.cols();
    a.iter()
        .enumerate()
        .filter(|(i, _)| i / c != l)
        .map(|(_, &x)| x)
        .collect()
}

pub fn delete_col(a: &[usize], shape: Shape, m: usize) -> Array {
    let c = shape.cols();
    a.iter()
        .enumerate()
        .filter(|(i, _)| i % c != m)
        .map(|(_, &x)| x)
        .collect()
}

pub fn permute_rows(a: &[usize], shape: Shape, perm: &[usize]) -> Array {
    perm.iter()
        .flat_map(|&r| row_of(a, shape, r).iter().copied())
        .collect()
}

pub fn columns(a: &[usize], shape: Shape) -> Vec<Vec<usize>> {
    (0..shape.cols())
        .map(|m| (0..shape.rows()).map(|l| a[l * shape.cols() + m]).collect())
        .collect()
}

pub fn from_columns(cols: &[Vec<usize>], shape: Shape) -> Array {
    (0..shape.rows())
        .flat_map(|l| cols.iter().map(move |c| c[l]))
        .collect()
}

/// `+1` for even permutations, `-1` for odd.
pub fn parity(perm: &[usize]) -> i64 {
    let inversions = perm
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| perm[i + 1..].iter().filter(move |&&b| b < a))
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` in lexicographic order, with signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    (0..n)
        .permutations(n)
        .map(|p| {
            let s = parity(&p);
            (p, s)
        })
        .collect()
}

/// Sorts columns ascending. Returns the sorted array and the sign of the
/// sorting permutation, or `None` if two columns coincide.
pub fn sort_columns(a: &[usize], shape: Shape) -> Option<(Array, i64)> {
    let cols = columns(a, shape);
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by(|&i, &j| cols[i].cmp(&cols[j]));
    if order.windows(2).any(|w| cols[w[0]] == cols[w[1]]) {
        return None;
    }
    let sorted: Vec<Vec<usize>> = order.iter().map(|&i| cols[i].clone()).collect();
    Some((from_columns(&sorted, shape), parity(&order)))
}

pub fn has_repeated_rows(a: &[usize], shape: Shape) -> bool {
    (0..shape.rows())
        .tuple_combinations()
        .any(|(i, j)| row_of(a, shape, i) == row_of(a, shape, j))
}

pub fn has_repeated_cols(a: &[usize], shape: Shape) -> bool {
    columns(a, shape)
        .iter()
        .tuple_combinations()
        .any(|(x, y)| x == y)
}

/// Arrays whose rows lie in single `y` classes and columns in single `z`
/// classes, with entry `(l, m)` drawn from `candidates(l, m, partial)`.
/// Output is in lexicographic order when candidates are sorted.
fn enumerate_arrays<F>(shape: Shape, y: &Partition, z: &Partition, candidates: F) -> Vec<Array>
where
    F: Fn(usize, usize, &[usize]) -> Vec<usize>,
{
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(shape.entries());
    fill(shape, y, z, &candidates, &mut cur, &mut out);
    out
}

fn fill<F>(
    shape: Shape,
    y: &Partition,
    z: &Partition,
    candidates: &F,
    cur: &mut Array,
    out: &mut Vec<Array>,
) where
    F: Fn(usize, usize, &[usize]) -> Vec<usize>,
{
    if cur.len() == shape.entries() {
        out.push(cur.clone());
        return;
    }
    let (l, m) = (cur.len() / shape.cols(), cur.len() % shape.cols());
    for x in candidates(l, m, cur) {
        if m > 0 && !y.same(x, cur[l * shape.cols()]) {
            continue;
        }
        if l > 0 && !z.same(x, cur[m]) {
            continue;
        }
        cur.push(x);
        fill(shape, y, z, candidates, cur, out);
        cur.pop();
    }
}

/// Every vertex array of the given shape, in lexicographic order.
pub fn vertex_arrays(p: &FiberedPresentation, shape: Shape) -> Vec<Array> {
    let (y, z) = (p.y_vertex(), p.z_vertex());
    let n = p.base().vertex_count();
    let cols = shape.cols();
    enumerate_arrays(shape, y, z, |l, m, cur| {
        if m > 0 {
            y.class(y.class_of(cur[l * cols])).to_vec()
        } else if l > 0 {
            z.class(z.class_of(cur[0])).to_vec()
        } else {
            (0..n).collect()
        }
    })
}

/// Every edge array of the given shape, without checking the presentation.
pub fn edge_arrays_unchecked(p: &FiberedPresentation, shape: Shape) -> Vec<Array> {
    let (y, z) = (p.y_edge(), p.z_edge());
    let n = p.base().edge_count();
    let cols = shape.cols();
    enumerate_arrays(shape, y, z, |l, m, cur| {
        if m > 0 {
            y.class(y.class_of(cur[l * cols])).to_vec()
        } else if l > 0 {
            z.class(z.class_of(cur[0])).to_vec()
        } else {
            (0..n).collect()
        }
    })
}

/// Edge arrays starting at the vertex array `v`, in lexicographic order.
pub fn out_edge_arrays(p: &FiberedPresentation, shape: Shape, v: &[usize]) -> Vec<Array> {
    let g = p.base();
    let cols = shape.cols();
    enumerate_arrays(shape, p.y_edge(), p.z_edge(), |l, m, _| {
        g.out_edges(v[l * cols + m]).collect()
    })
}

pub fn sources(p: &FiberedPresentation, e: &[usize]) -> Array {
    e.iter().map(|&x| p.base().source(x)).collect()
}

pub fn targets(p: &FiberedPresentation, e: &[usize]) -> Array {
    e.iter().map(|&x| p.base().target(x)).collect()
}

/// Vertex arrays obtained by inserting a new column at position `m` into `v`
/// (shape of `v` is `(L, M)`, results have shape `(L, M + 1)`).
pub fn column_insertions(
    p: &FiberedPresentation,
    shape: Shape,
    v: &[usize],
    m: usize,
) -> Vec<Array> {
    let (y, z) = (p.y_vertex(), p.z_vertex());
    let cols = shape.cols();
    let first_row_class = y.class(y.class_of(v[0]));
    let mut out = Vec::new();
    'top: for &top in first_row_class {
        let mut column = vec![top];
        for l in 1..shape.rows() {
            let row_class = y.class(y.class_of(v[l * cols]));
            match row_class.iter().find(|&&x| z.same(x, top)) {
                Some(&x) => column.push(x),
                None => continue 'top,
            }
        }
        let mut w = Vec::with_capacity(shape.rows() * (cols + 1));
        for l in 0..shape.rows() {
            w.extend_from_slice(&v[l * cols..l * cols + m]);
            w.push(column[l]);
            w.extend_from_slice(&v[l * cols + m..(l + 1) * cols]);
        }
        out.push(w);
    }
    out
}

/// The graph `Σ_{L,M}`: vertex arrays and edge arrays with componentwise incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPowerGraph {
    pub shape: Shape,
    pub vertices: Vec<Array>,
    pub edges: Vec<Array>,
}

impl FiberPowerGraph {
    pub fn source(&self, p: &FiberedPresentation, e: usize) -> Array {
        sources(p, &self.edges[e])
    }

    pub fn target(&self, p: &FiberedPresentation, e: usize) -> Array {
        targets(p, &self.edges[e])
    }
}

pub fn fiber_power_graph(
    p: &FiberedPresentation,
    l: usize,
    m: usize,
) -> Result<FiberPowerGraph, SymbolicError> {
    let report = p.validate();
    if let Some(v) = report.violations.first() {
        return Err(SymbolicError::PresentationInvalid(v.to_string()));
    }
    let shape = Shape::new(l, m);
    Ok(FiberPowerGraph {
        shape,
        vertices: vertex_arrays(p, shape),
        edges: edge_arrays_unchecked(p, shape),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{ClassLists, Graph};

    #[test]
    fn base_graph_at_origin() {
        let p = FiberedPresentation::singleton(Graph::bouquet(2));
        let g = fiber_power_graph(&p, 0, 0).unwrap();
        assert_eq!(g.vertices, vec![vec![0]]);
        assert_eq!(g.edges, vec![vec![0], vec![1]]);
    }

    #[test]
    fn singleton_classes_force_constant_arrays() {
        let base = Graph::from_strs(
            &["a", "b"],
            &[("aa", "a", "a"), ("ab", "a", "b"), ("ba", "b", "a")],
        )
        .unwrap();
        let p = FiberedPresentation::singleton(base);
        for (l, m) in [(1, 0), (0, 2), (1, 1)] {
            let g = fiber_power_graph(&p, l, m).unwrap();
            assert_eq!(g.vertices.len(), 2);
            assert_eq!(g.edges.len(), 3);
            assert!(g.vertices.iter().all(|a| a.iter().all(|&x| x == a[0])));
        }
    }

    #[test]
    fn merged_loops_give_four_edge_arrays() {
        let lists = ClassLists {
            z_edge_classes: Some(vec![vec!["e1".into(), "e2".into()]]),
            ..Default::default()
        };
        let p = FiberedPresentation::from_class_lists(Graph::bouquet(2), &lists).unwrap();
        // Columns share a z class, so the two entries of a 2x1 array are free.
        let arrays = edge_arrays_unchecked(&p, Shape::new(1, 0));
        assert_eq!(arrays, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(fiber_power_graph(&p, 1, 0).is_err());
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(parity(&[0, 1, 2]), 1);
        assert_eq!(parity(&[1, 0, 2]), -1);
        assert_eq!(parity(&[1, 2, 0]), 1);
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i64>(), 0);
    }

    #[test]
    fn sorting_columns() {
        let shape = Shape::new(1, 1);
        // columns (2,3) and (0,1)
        let (sorted, sign) = sort_columns(&[2, 0, 3, 1], shape).unwrap();
        assert_eq!(sorted, vec![0, 2, 1, 3]);
        assert_eq!(sign, -1);
        assert!(sort_columns(&[1, 1, 2, 2], shape).is_none());
    }
}
