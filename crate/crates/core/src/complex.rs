//! The normalized double complex of a fibered presentation and its total homology.
//!
//! Cell `(L, M)` is the normalized group of `Σ_{L,M}` with its dimension-group
//! endomorphism `γ`. Row boundaries lower `L`, column coboundaries raise `M`.
//! On total degree `k = L − M` the differential is `∂_row + (−1)^L δ_col`.
//!
//! Every identity the construction relies on is re-checked on the actual
//! matrices. A failed check aborts the build and no homology is produced.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{ComplexError, GuardrailFailure};
use crate::fgab::{direct_sum, FgAbGroup, GroupMorphism};
use crate::linalg::IntMatrix;
use crate::stationary::{
    limit_homology, StationaryComplex, StationaryInvariants, StationarySystem,
};
use crate::symbolic::faces::{
    column_coboundary, column_coface, gamma, row_boundary, row_face, unit, ArrayIndex,
};
use crate::symbolic::fiber_power::{has_repeated_cols, sort_columns};
use crate::symbolic::sign_basis::Chain;
use crate::symbolic::{FiberedPresentation, Shape, SignBasis};

/// One cell of the double complex.
#[derive(Clone, Debug)]
pub struct Cell {
    pub shape: Shape,
    pub basis: SignBasis,
    /// `(cell group, γ)`.
    pub system: StationarySystem,
}

#[derive(Clone, Debug)]
pub struct DoubleComplex {
    /// `(L_max, M_max)`.
    pub bounds: (usize, usize),
    pub digest: String,
    cells: BTreeMap<(usize, usize), Cell>,
    row: BTreeMap<(usize, usize), IntMatrix>,
    col: BTreeMap<(usize, usize), IntMatrix>,
    pub guardrail_log: Vec<String>,
}

impl DoubleComplex {
    pub fn cells(&self) -> &BTreeMap<(usize, usize), Cell> {
        &self.cells
    }

    pub fn cell(&self, l: usize, m: usize) -> Option<&Cell> {
        self.cells.get(&(l, m))
    }

    /// Row boundary out of `(L, M)`.
    pub fn row_differential(&self, l: usize, m: usize) -> Option<&IntMatrix> {
        self.row.get(&(l, m))
    }

    /// Column coboundary out of `(L, M)`.
    pub fn column_differential(&self, l: usize, m: usize) -> Option<&IntMatrix> {
        self.col.get(&(l, m))
    }

    fn degree_range(&self) -> std::ops::RangeInclusive<i64> {
        -(self.bounds.1 as i64)..=self.bounds.0 as i64
    }

    /// Cells of total degree `k`, by increasing `L`.
    fn cells_of_degree(&self, k: i64) -> Vec<(usize, usize)> {
        self.cells
            .keys()
            .copied()
            .filter(|&(l, m)| l as i64 - m as i64 == k)
            .collect()
    }

    /// `Σ_{L,M} (−1)^{L−M} rank(cell limit)`.
    pub fn cell_euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|(&(l, m), c)| sign(l + m) * c.system.rank() as i64)
            .sum()
    }

    /// The total complex as a complex of stationary systems.
    pub fn total_complex(&self) -> Result<StationaryComplex, ComplexError> {
        let mut complex = StationaryComplex::new();
        let mut stages: BTreeMap<i64, (Vec<(usize, usize)>, StationarySystem)> = BTreeMap::new();
        for k in self.degree_range() {
            let keys = self.cells_of_degree(k);
            let groups: Vec<FgAbGroup> = keys
                .iter()
                .map(|key| self.cells[key].system.stage().clone())
                .collect();
            let blocks: Vec<&IntMatrix> = keys
                .iter()
                .map(|key| self.cells[key].system.endo().matrix())
                .collect();
            let stage = direct_sum(&groups);
            let endo = GroupMorphism::new(stage.clone(), stage, IntMatrix::block_diag(&blocks))
                .map_err(crate::error::StationaryError::from)?;
            let system = StationarySystem::new(endo)?;
            complex = complex.with_term(k, system.clone());
            stages.insert(k, (keys, system));
        }
        for k in self.degree_range() {
            let Some((lower_keys, lower)) = stages.get(&(k - 1)) else {
                continue;
            };
            let (keys, upper) = &stages[&k];
            let d = self.total_block(keys, lower_keys, lower.stage().generators());
            let morphism = GroupMorphism::new(upper.stage().clone(), lower.stage().clone(), d)
                .map_err(crate::error::StationaryError::from)?;
            complex = complex.with_differential(k, morphism);
        }
        Ok(complex)
    }

    fn total_block(
        &self,
        src: &[(usize, usize)],
        dst: &[(usize, usize)],
        rows: usize,
    ) -> IntMatrix {
        let offsets = |keys: &[(usize, usize)]| {
            let mut acc = 0;
            keys.iter()
                .map(|key| {
                    let o = acc;
                    acc += self.cells[key].basis.len();
                    (*key, o)
                })
                .collect::<BTreeMap<_, _>>()
        };
        let (so, dof) = (offsets(src), offsets(dst));
        let cols = src.iter().map(|key| self.cells[key].basis.len()).sum();
        let mut d = IntMatrix::zeros(rows, cols);
        let mut place = |m: &IntMatrix, r0: usize, c0: usize, s: i64| {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    d.add_at(r0 + i, c0 + j, &(m.get(i, j) * s));
                }
            }
        };
        for &(l, m) in src {
            let c0 = so[&(l, m)];
            if l > 0 {
                if let (Some(r), Some(&r0)) = (self.row.get(&(l, m)), dof.get(&(l - 1, m))) {
                    place(r, r0, c0, 1);
                }
            }
            if let (Some(c), Some(&r0)) = (self.col.get(&(l, m)), dof.get(&(l, m + 1))) {
                place(c, r0, c0, sign(l));
            }
        }
        d
    }
}

fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn failure(identity: impl Into<String>, shape: Shape) -> GuardrailFailure {
    GuardrailFailure {
        identity: identity.into(),
        l: shape.l,
        m: shape.m,
    }
}

struct CellData {
    shape: Shape,
    arrays: ArrayIndex,
    basis: SignBasis,
}

impl CellData {
    fn new(p: &FiberedPresentation, shape: Shape) -> Self {
        let arrays = ArrayIndex::new(p, shape);
        let basis = SignBasis::from_arrays(shape, &arrays.arrays);
        Self {
            shape,
            arrays,
            basis,
        }
    }

    /// Column-sorted arrays with distinct columns: representatives of the
    /// basis of the column-alternating subgroup.
    fn alternating_generators(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.arrays.arrays.iter().filter(move |a| {
            !has_repeated_cols(a, self.shape)
                && sort_columns(a, self.shape)
                    .map(|(s, _)| &s == *a)
                    .unwrap_or(false)
        })
    }
}

/// Face and coface maps commute with `γ` on every array, and the
/// simplicial identities hold.
fn check_unreduced(p: &FiberedPresentation, cell: &CellData) -> Result<(), GuardrailFailure> {
    let shape = cell.shape;
    let below = Shape::new(shape.l.saturating_sub(1), shape.m);
    let right = Shape::new(shape.l, shape.m + 1);
    for a in &cell.arrays.arrays {
        let x = unit(a);
        let gx = gamma(p, &x, shape);
        if shape.l > 0 {
            for l in 0..shape.rows() {
                if row_face(&gx, shape, l) != gamma(p, &row_face(&x, shape, l), below) {
                    return Err(failure(format!("row face {l} commutes with gamma"), shape));
                }
            }
        }
        for m in 0..=shape.cols() {
            if column_coface(p, &gx, shape, m) != gamma(p, &column_coface(p, &x, shape, m), right) {
                return Err(failure(
                    format!("column coface {m} commutes with gamma"),
                    shape,
                ));
            }
        }
        if shape.l >= 2 {
            for j in 0..shape.rows() {
                for i in 0..j {
                    let lhs = row_face(&row_face(&x, shape, j), below, i);
                    let rhs = row_face(&row_face(&x, shape, i), below, j - 1);
                    if lhs != rhs {
                        return Err(failure(
                            format!("row faces {i} < {j} satisfy the simplicial identity"),
                            shape,
                        ));
                    }
                }
            }
        }
        for j in 0..=right.cols() {
            for i in 0..j {
                let lhs = column_coface(p, &column_coface(p, &x, shape, i), right, j);
                let rhs = column_coface(p, &column_coface(p, &x, shape, j - 1), right, i);
                if lhs != rhs {
                    return Err(failure(
                        format!("column cofaces {i} < {j} satisfy the simplicial identity"),
                        shape,
                    ));
                }
            }
        }
        if shape.l > 0 {
            for l in 0..shape.rows() {
                for m in 0..=shape.cols() {
                    let lhs = row_face(&column_coface(p, &x, shape, m), right, l);
                    let rhs = column_coface(p, &row_face(&x, shape, l), below, m);
                    if lhs != rhs {
                        return Err(failure(
                            format!("row face {l} commutes with column coface {m}"),
                            shape,
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Matrix of `P ∘ f ∘ lift` between normalized groups, after checking that
/// `P ∘ f` factors through `P` on every alternating generator.
fn reduced_map(
    src: &CellData,
    dst: &SignBasis,
    dst_group: &FgAbGroup,
    f: impl Fn(&Chain) -> Chain,
    name: &str,
) -> Result<IntMatrix, GuardrailFailure> {
    let cols: Vec<Vec<i64>> = (0..src.basis.len())
        .map(|i| dst.project(&f(&src.basis.lift(i))))
        .collect();
    let as_big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let matrix = IntMatrix::from_columns(
        dst.len(),
        &cols.iter().map(|c| as_big(c)).collect::<Vec<_>>(),
    );
    for a in src.alternating_generators() {
        let image = f(&src.basis.alternating(a));
        if !dst.is_alternating(&image) {
            return Err(failure(
                format!("{name} preserves column alternation"),
                src.shape,
            ));
        }
        let direct = dst.project(&image);
        let expected: Vec<i64> = match src.basis.project_generator(a) {
            Some((i, s)) => cols[i].iter().map(|x| s * x).collect(),
            None => vec![0; dst.len()],
        };
        let diff: Vec<BigInt> = direct
            .iter()
            .zip(&expected)
            .map(|(x, y)| BigInt::from(x - y))
            .collect();
        if !dst_group.is_zero_element(&diff) {
            return Err(failure(
                format!("{name} descends to the normalized quotient"),
                src.shape,
            ));
        }
    }
    Ok(matrix)
}

fn congruent(a: &IntMatrix, b: &IntMatrix, target: &FgAbGroup) -> bool {
    let d = a.sub(b);
    (0..d.cols()).all(|j| target.is_zero_element(&d.column(j)))
}

fn is_zero_map(a: &IntMatrix, target: &FgAbGroup) -> bool {
    (0..a.cols()).all(|j| target.is_zero_element(&a.column(j)))
}

/// Builds the normalized double complex and checks every guardrail.
pub fn build(p: &FiberedPresentation) -> Result<DoubleComplex, GuardrailFailure> {
    let report = p.validate();
    if let Some(v) = report.violations.first() {
        return Err(failure(
            format!("presentation validity: {v}"),
            Shape::new(0, 0),
        ));
    }
    let bounds = p.bounds();
    let (l_max, m_max) = bounds;
    let shapes: Vec<Shape> = (0..=l_max)
        .flat_map(|l| (0..=m_max).map(move |m| Shape::new(l, m)))
        .collect();
    let mut log = vec![format!("presentation validity: ok ({} conditions)", 7)];

    let data: Vec<CellData> = shapes.par_iter().map(|&s| CellData::new(p, s)).collect();
    let checks: Vec<Result<(), GuardrailFailure>> =
        data.par_iter().map(|c| check_unreduced(p, c)).collect();
    checks.into_iter().collect::<Result<Vec<()>, _>>()?;
    log.push("unnormalized faces commute with gamma; simplicial identities hold".into());

    let index: BTreeMap<(usize, usize), usize> = shapes
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.l, s.m), i))
        .collect();
    let groups: Vec<FgAbGroup> = data.iter().map(|c| c.basis.group()).collect();

    type Maps = (IntMatrix, Option<IntMatrix>, Option<IntMatrix>);
    let maps: Vec<Result<Maps, GuardrailFailure>> = data
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let s = c.shape;
            let g = reduced_map(c, &c.basis, &groups[i], |x| gamma(p, x, s), "gamma")?;
            let row = if s.l > 0 {
                let j = index[&(s.l - 1, s.m)];
                Some(reduced_map(
                    c,
                    &data[j].basis,
                    &groups[j],
                    |x| row_boundary(x, s),
                    "row boundary",
                )?)
            } else {
                None
            };
            let col = match index.get(&(s.l, s.m + 1)) {
                Some(&j) => Some(reduced_map(
                    c,
                    &data[j].basis,
                    &groups[j],
                    |x| column_coboundary(p, x, s),
                    "column coboundary",
                )?),
                None => None,
            };
            Ok((g, row, col))
        })
        .collect();
    let maps = maps.into_iter().collect::<Result<Vec<Maps>, _>>()?;
    log.push("normalized gamma and differentials are well defined".into());

    let mut cells = BTreeMap::new();
    let mut row = BTreeMap::new();
    let mut col = BTreeMap::new();
    for (i, (c, (g, r, k))) in data.into_iter().zip(maps).enumerate() {
        let key = (c.shape.l, c.shape.m);
        let endo = GroupMorphism::new(groups[i].clone(), groups[i].clone(), g)
            .map_err(|_| failure("gamma respects cell relations", c.shape))?;
        let system = StationarySystem::new(endo).expect("endomorphism");
        if let Some(r) = r {
            row.insert(key, r);
        }
        if let Some(k) = k {
            col.insert(key, k);
        }
        cells.insert(
            key,
            Cell {
                shape: c.shape,
                basis: c.basis,
                system,
            },
        );
    }

    let grp = |key: &(usize, usize)| &groups[index[key]];
    let gam = |key: &(usize, usize)| cells[key].system.endo().matrix().clone();
    for (&(l, m), r) in &row {
        let shape = Shape::new(l, m);
        let below = (l - 1, m);
        if let Some(r2) = row.get(&below) {
            if !is_zero_map(&r2.mul(r), grp(&(l - 2, m))) {
                return Err(failure("row boundary squares to zero", shape));
            }
        }
        if !congruent(&r.mul(&gam(&(l, m))), &gam(&below).mul(r), grp(&below)) {
            return Err(failure("row boundary commutes with gamma", shape));
        }
    }
    log.push("d_row^2 = 0 and d_row commutes with gamma".into());
    for (&(l, m), c) in &col {
        let shape = Shape::new(l, m);
        let right = (l, m + 1);
        if let Some(c2) = col.get(&right) {
            if !is_zero_map(&c2.mul(c), grp(&(l, m + 2))) {
                return Err(failure("column coboundary squares to zero", shape));
            }
        }
        if !congruent(&c.mul(&gam(&(l, m))), &gam(&right).mul(c), grp(&right)) {
            return Err(failure("column coboundary commutes with gamma", shape));
        }
        if l > 0 {
            let corner = (l - 1, m + 1);
            let via_right = row[&right].mul(c);
            let via_below = col[&(l - 1, m)].mul(&row[&(l, m)]);
            if !congruent(&via_right, &via_below, grp(&corner)) {
                return Err(failure("row and column differentials commute", shape));
            }
        }
    }
    log.push("d_col^2 = 0, d_col commutes with gamma and with d_row".into());

    let dc = DoubleComplex {
        bounds,
        digest: crate::document::presentation_digest(p),
        cells,
        row,
        col,
        guardrail_log: log,
    };
    let total = dc
        .total_complex()
        .map_err(|_| failure("total complex assembles", Shape::new(0, 0)))?;
    if total.check().is_err() {
        return Err(failure(
            "total differential squares to zero and commutes with gamma",
            Shape::new(0, 0),
        ));
    }
    let mut dc = dc;
    dc.guardrail_log
        .push("total differential squares to zero".into());
    Ok(dc)
}

/// Homology of one degree as a stationary system with its invariants.
#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub system: StationarySystem,
    pub invariants: StationaryInvariants,
}

impl DegreeHomology {
    pub fn new(system: StationarySystem) -> Self {
        let system = system.eventual_normalize();
        let invariants = system.invariants();
        Self { system, invariants }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Provenance {
    /// What produced the report: `presentation`, `kunneth` or `toral`.
    pub source: String,
    /// SHA-256 of the canonical input.
    pub digest: String,
    /// `(L_max, M_max)` when built from a presentation.
    pub bounds: Option<(usize, usize)>,
    pub guardrails: Vec<String>,
}

/// Homology indexed by total degree `k = L − M`.
#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub degrees: BTreeMap<i64, DegreeHomology>,
    pub provenance: Provenance,
}

impl HomologyReport {
    pub fn invariants(&self, k: i64) -> StationaryInvariants {
        self.degrees
            .get(&k)
            .map(|d| d.invariants.clone())
            .unwrap_or_else(|| StationarySystem::trivial().invariants())
    }

    pub fn rank(&self, k: i64) -> usize {
        self.degrees.get(&k).map(|d| d.invariants.rank).unwrap_or(0)
    }

    /// Degrees with nontrivial homology.
    pub fn support(&self) -> Vec<i64> {
        self.degrees
            .iter()
            .filter(|(_, d)| !d.invariants.is_trivial())
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|(&k, d)| if k % 2 == 0 { 1 } else { -1 } * d.invariants.rank as i64)
            .sum()
    }

    /// Invariants of every nontrivial degree.
    pub fn invariant_table(&self) -> BTreeMap<i64, StationaryInvariants> {
        self.support()
            .into_iter()
            .map(|k| (k, self.invariants(k)))
            .collect()
    }
}

/// Homology of the total complex, normalized degree by degree.
pub fn total_homology(dc: &DoubleComplex) -> Result<HomologyReport, ComplexError> {
    let complex = dc.total_complex()?;
    let homology = limit_homology(&complex)?;
    let degrees: BTreeMap<i64, DegreeHomology> = homology
        .into_iter()
        .map(|(k, s)| (k, DegreeHomology::new(s)))
        .collect();
    let mut guardrails = dc.guardrail_log.clone();
    let report_euler: i64 = degrees
        .iter()
        .map(|(&k, d)| if k % 2 == 0 { 1 } else { -1 } * d.invariants.rank as i64)
        .sum();
    if report_euler != dc.cell_euler_characteristic() {
        return Err(failure(
            "Euler characteristic of homology matches the cells",
            Shape::new(0, 0),
        )
        .into());
    }
    guardrails.push(format!(
        "Euler characteristic {report_euler} matches the cells"
    ));
    Ok(HomologyReport {
        degrees,
        provenance: Provenance {
            source: "presentation".into(),
            digest: dc.digest.clone(),
            bounds: Some(dc.bounds),
            guardrails,
        },
    })
}

/// [`build`] followed by [`total_homology`].
pub fn homology(p: &FiberedPresentation) -> Result<HomologyReport, ComplexError> {
    total_homology(&build(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stationary::krieger_dimension_group;
    use crate::symbolic::{ClassLists, Graph};

    fn golden() -> Graph {
        Graph::from_strs(
            &["a", "b"],
            &[("aa", "a", "a"), ("ab", "a", "b"), ("ba", "b", "a")],
        )
        .unwrap()
    }

    fn double_cover() -> FiberedPresentation {
        let g = Graph::from_strs(
            &["h0", "h1"],
            &[
                ("a00", "h0", "h0"),
                ("a11", "h1", "h1"),
                ("b01", "h0", "h1"),
                ("b10", "h1", "h0"),
            ],
        )
        .unwrap();
        let lists = ClassLists {
            y_vertex_classes: Some(vec![vec!["h0".into(), "h1".into()]]),
            y_edge_classes: Some(vec![
                vec!["a00".into(), "a11".into()],
                vec!["b01".into(), "b10".into()],
            ]),
            ..Default::default()
        };
        FiberedPresentation::from_class_lists(g, &lists).unwrap()
    }

    #[test]
    fn sft_golden_mean_single_cell() {
        let p = FiberedPresentation::singleton(golden());
        let dc = build(&p).unwrap();
        assert_eq!(dc.cells().len(), 1);
        let cell = dc.cell(0, 0).unwrap();
        assert_eq!(
            cell.system.endo().matrix(),
            &IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]])
        );
        let h = total_homology(&dc).unwrap();
        assert_eq!(
            h.invariant_table(),
            BTreeMap::from([(0, krieger_dimension_group(&golden()).unwrap().invariants())])
        );
    }

    #[test]
    fn sft_two_shift() {
        let h = homology(&FiberedPresentation::singleton(Graph::bouquet(2))).unwrap();
        let i = h.invariants(0);
        assert_eq!((i.rank, i.endo_det_abs.clone()), (1, BigInt::from(2)));
        assert_eq!(h.support(), vec![0]);
    }

    #[test]
    fn double_cover_gives_two_shift() {
        let p = double_cover();
        let dc = build(&p).unwrap();
        assert_eq!(dc.bounds, (0, 1));
        assert_eq!(dc.cell(0, 1).unwrap().basis.len(), 1);
        let h = total_homology(&dc).unwrap();
        let expected = krieger_dimension_group(&Graph::bouquet(2))
            .unwrap()
            .invariants();
        assert_eq!(h.invariant_table(), BTreeMap::from([(0, expected)]));
    }

    #[test]
    fn invalid_presentation_is_a_guardrail_failure() {
        let lists = ClassLists {
            z_edge_classes: Some(vec![vec!["e1".into(), "e2".into()]]),
            ..Default::default()
        };
        let p = FiberedPresentation::from_class_lists(Graph::bouquet(2), &lists).unwrap();
        let err = build(&p).unwrap_err();
        assert!(err.identity.starts_with("presentation validity"));
    }
}
