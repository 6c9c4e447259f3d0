//! Generators of the normalized cell groups.
//!
//! The cell group at shape `(L, M)` is built in two steps from `Z^{arrays}`:
//! take the column-alternating subgroup, whose basis is indexed by free
//! column orbits, then pass to the quotient identifying `x` with
//! `sign(r)·r·x` for row permutations `r` and killing arrays with a repeated
//! row. A class is indexed by the least array over both symmetric groups.

use std::collections::{BTreeMap, HashMap};

use super::fiber_power::{
    has_repeated_cols, has_repeated_rows, permute_rows, signed_permutations, sort_columns, Array,
    FiberPowerGraph, Shape,
};
use crate::fgab::FgAbGroup;
use crate::linalg::IntMatrix;

/// Sparse integer combination of arrays.
pub type Chain = BTreeMap<Array, i64>;

pub fn chain_add(chain: &mut Chain, key: Array, coef: i64) {
    if coef == 0 {
        return;
    }
    let entry = chain.entry(key).or_insert(0);
    *entry = entry.checked_add(coef).expect("chain coefficient overflow");
    if *entry == 0 {
        chain.retain(|_, c| *c != 0);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignBasis {
    shape: Shape,
    generators: Vec<Array>,
    order_two: Vec<bool>,
    index: HashMap<Array, usize>,
    row_perms: Vec<(Vec<usize>, i64)>,
    col_perms: Vec<(Vec<usize>, i64)>,
}

impl SignBasis {
    /// Basis for the normalized group spanned by the given arrays, which must
    /// be closed under row and column permutations.
    pub fn from_arrays(shape: Shape, arrays: &[Array]) -> Self {
        let row_perms = signed_permutations(shape.rows());
        let col_perms = signed_permutations(shape.cols());
        let mut found: BTreeMap<Array, bool> = BTreeMap::new();
        for a in arrays {
            if let Some((canon, _, torsion)) = canonical(a, shape, &row_perms) {
                found.entry(canon).or_insert(torsion);
            }
        }
        let generators: Vec<Array> = found.keys().cloned().collect();
        let order_two: Vec<bool> = found.values().copied().collect();
        let index = generators
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Self {
            shape,
            generators,
            order_two,
            index,
            row_perms,
            col_perms,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Canonical representative arrays, in lexicographic order.
    pub fn generators(&self) -> &[Array] {
        &self.generators
    }

    /// Whether generator `i` has order two (its orbit is fixed by an odd
    /// symmetry).
    pub fn is_order_two(&self, i: usize) -> bool {
        self.order_two[i]
    }

    /// The cell group: free on generators, with `2·g = 0` for order-two ones.
    pub fn group(&self) -> FgAbGroup {
        let torsion: Vec<usize> = (0..self.len()).filter(|&i| self.order_two[i]).collect();
        let mut rel = IntMatrix::zeros(self.len(), torsion.len());
        for (j, &i) in torsion.iter().enumerate() {
            rel.set(i, j, 2.into());
        }
        FgAbGroup::new(self.len(), rel).expect("generator count matches")
    }

    /// Column-alternating element `Σ_s sign(s)·s·c` lifting generator `i`.
    pub fn lift(&self, i: usize) -> Chain {
        self.alternating(&self.generators[i])
    }

    /// `Σ_s sign(s)·s·c` for any array `c` of this shape.
    pub fn alternating(&self, c: &[usize]) -> Chain {
        let cols = super::fiber_power::columns(c, self.shape);
        let mut out = Chain::new();
        for (perm, sign) in &self.col_perms {
            let permuted: Vec<Vec<usize>> = perm.iter().map(|&j| cols[j].clone()).collect();
            chain_add(
                &mut out,
                super::fiber_power::from_columns(&permuted, self.shape),
                *sign,
            );
        }
        out
    }

    /// Image in the normalized group of the alternating generator whose
    /// column-sorted representative is `c`: `(generator, sign)` or `None`
    /// when it vanishes.
    pub fn project_generator(&self, c: &[usize]) -> Option<(usize, i64)> {
        let (canon, sign, _) = canonical(c, self.shape, &self.row_perms)?;
        let i = *self.index.get(&canon)?;
        Some((i, sign))
    }

    /// Projects a column-alternating chain to coefficient form.
    ///
    /// Only column-sorted arrays are read; the alternating condition makes
    /// the other coefficients redundant.
    pub fn project(&self, chain: &Chain) -> Vec<i64> {
        let mut out = vec![0i64; self.len()];
        for (a, &coef) in chain {
            if let Some((sorted, 1)) = sort_columns(a, self.shape) {
                if &sorted == a {
                    if let Some((i, sign)) = self.project_generator(a) {
                        out[i] = out[i]
                            .checked_add(sign * coef)
                            .expect("coefficient overflow");
                    }
                }
            }
        }
        out
    }

    /// Whether a chain is column-alternating.
    pub fn is_alternating(&self, chain: &Chain) -> bool {
        let cols_of = |a: &Array| super::fiber_power::columns(a, self.shape);
        chain.iter().all(|(a, &coef)| {
            let cols = cols_of(a);
            self.col_perms.iter().all(|(perm, sign)| {
                let permuted: Vec<Vec<usize>> = perm.iter().map(|&j| cols[j].clone()).collect();
                let b = super::fiber_power::from_columns(&permuted, self.shape);
                chain.get(&b).copied().unwrap_or(0) == sign * coef
            })
        })
    }
}

/// Least array in the orbit of `c` under rows × columns, with the sign
/// relating the alternating generator of `c` to it and whether the orbit
/// carries an odd symmetry. `None` for arrays with repeated rows or columns.
fn canonical(
    c: &[usize],
    shape: Shape,
    row_perms: &[(Vec<usize>, i64)],
) -> Option<(Array, i64, bool)> {
    if has_repeated_rows(c, shape) || has_repeated_cols(c, shape) {
        return None;
    }
    let (c, c_sign) = sort_columns(c, shape)?;
    let mut best: Option<(Array, i64, bool)> = None;
    for (perm, rsign) in row_perms {
        let (cand, csign) = sort_columns(&permute_rows(&c, shape, perm), shape)?;
        let sign = rsign * csign;
        match &mut best {
            None => best = Some((cand, sign, false)),
            Some((b, s, torsion)) => {
                if cand < *b {
                    *b = cand;
                    *s = sign;
                    *torsion = false;
                } else if cand == *b && sign != *s {
                    *torsion = true;
                }
            }
        }
    }
    best.map(|(a, s, t)| (a, s * c_sign, t))
}

/// Generator basis of the normalized cell group of a fiber-power graph.
pub fn sign_basis(g: &FiberPowerGraph) -> SignBasis {
    SignBasis::from_arrays(g.shape, &g.vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::fiber_power::{edge_arrays_unchecked, fiber_power_graph};
    use crate::symbolic::{ClassLists, FiberedPresentation, Graph};

    #[test]
    fn singleton_partitions_have_no_free_columns() {
        let p = FiberedPresentation::singleton(Graph::bouquet(2));
        assert!(sign_basis(&fiber_power_graph(&p, 0, 1).unwrap()).is_empty());
        assert!(sign_basis(&fiber_power_graph(&p, 1, 0).unwrap()).is_empty());
        assert_eq!(sign_basis(&fiber_power_graph(&p, 0, 0).unwrap()).len(), 1);
    }

    #[test]
    fn merged_loop_orbit_gives_one_generator() {
        let lists = ClassLists {
            z_edge_classes: Some(vec![vec!["e1".into(), "e2".into()]]),
            ..Default::default()
        };
        let p = FiberedPresentation::from_class_lists(Graph::bouquet(2), &lists).unwrap();
        let shape = Shape::new(1, 0);
        let b = SignBasis::from_arrays(shape, &edge_arrays_unchecked(&p, shape));
        assert_eq!(b.generators(), &[vec![0, 1]]);
        assert_eq!(b.project_generator(&[1, 0]), Some((0, -1)));
    }

    #[test]
    fn transposed_shape_alternates_on_columns() {
        let shape = Shape::new(0, 1);
        let arrays = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
        let b = SignBasis::from_arrays(shape, &arrays);
        assert_eq!(b.generators(), &[vec![0, 1]]);
        let lift = b.lift(0);
        assert_eq!(lift.get(&vec![0, 1]), Some(&1));
        assert_eq!(lift.get(&vec![1, 0]), Some(&-1));
        assert!(b.is_alternating(&lift));
        assert_eq!(b.project(&lift), vec![1]);
    }

    #[test]
    fn too_wide_arrays_vanish() {
        // Three columns from a class of size two always repeat.
        let shape = Shape::new(0, 2);
        let arrays: Vec<Array> = (0..8)
            .map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1])
            .collect();
        assert!(SignBasis::from_arrays(shape, &arrays).is_empty());
    }

    #[test]
    fn odd_symmetry_gives_order_two() {
        // 2x2 array fixed by swapping both rows and columns: sign (-1)(-1) = +1, free.
        let shape = Shape::new(1, 1);
        let sym = vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]];
        let b = SignBasis::from_arrays(shape, &sym);
        assert_eq!(b.len(), 1);
        assert!(!b.is_order_two(0));
        assert!(b.group().torsion().is_empty());
    }
}
