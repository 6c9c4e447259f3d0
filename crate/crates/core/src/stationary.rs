//! Stationary inductive limits `colim(G --h--> G --h--> …)`.
//!
//! These carry dimension groups and homology groups that are usually not
//! finitely generated (`Z[1/2]` is `(Z, ×2)`). Two systems are compared only
//! through [`StationaryInvariants`]; shift equivalence is never decided.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{GroupError, StationaryError};
use crate::fgab::{
    direct_sum_morphism, homology_data, tensor_morphism, tor_endomorphism, FgAbGroup,
    GroupMorphism, NormalForm,
};
use crate::linalg::IntMatrix;
use crate::symbolic::Graph;

/// A group with a self-map, standing for the colimit of iterating the map.
#[derive(Clone, Debug)]
pub struct StationarySystem {
    stage: FgAbGroup,
    endo: GroupMorphism,
    normalized: bool,
}

/// Shift-equivalence invariants of a stationary system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StationaryInvariants {
    /// Rank of the limit over `Q`.
    pub rank: usize,
    /// Torsion of the normalized stage.
    pub invariant_factors: Vec<BigInt>,
    /// `|det|` of the endomorphism on the free quotient of the normalized stage; 1 when that quotient is 0.
    pub endo_det_abs: BigInt,
    /// `coker(I − endo)`.
    pub bowen_franks: NormalForm,
}

impl StationaryInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }
}

impl fmt::Display for StationaryInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torsion: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect();
        write!(
            f,
            "rank {}, torsion [{}], |det| {}, Bowen-Franks {}",
            self.rank,
            torsion.join(", "),
            self.endo_det_abs,
            self.bowen_franks
        )
    }
}

impl StationarySystem {
    pub fn new(endo: GroupMorphism) -> Result<Self, StationaryError> {
        if !endo.source().same_presentation(endo.target()) {
            return Err(StationaryError::NotEndomorphism);
        }
        Ok(Self {
            stage: endo.source().clone(),
            endo,
            normalized: false,
        })
    }

    /// `(Zⁿ, m)`.
    pub fn from_matrix(m: IntMatrix) -> Result<Self, StationaryError> {
        if !m.is_square() {
            return Err(StationaryError::NotEndomorphism);
        }
        let g = FgAbGroup::free(m.rows());
        Self::new(GroupMorphism::new(g.clone(), g, m)?)
    }

    pub fn trivial() -> Self {
        let g = FgAbGroup::trivial();
        Self {
            stage: g.clone(),
            endo: GroupMorphism::identity(g),
            normalized: true,
        }
    }

    /// `(G, id)`, whose limit is `G` itself.
    pub fn constant(group: FgAbGroup) -> Self {
        Self {
            stage: group.clone(),
            endo: GroupMorphism::identity(group),
            normalized: false,
        }
    }

    pub fn stage(&self) -> &FgAbGroup {
        &self.stage
    }

    pub fn endo(&self) -> &GroupMorphism {
        &self.endo
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Restricts to the eventual image and rewrites in Smith coordinates.
    ///
    /// The stage is replaced by `h(stage)` until `h` is injective. Each step
    /// preserves the limit, and the process stops once `ker hᴺ = ker hᴺ⁺¹`.
    pub fn eventual_normalize(&self) -> StationarySystem {
        if self.normalized {
            return self.clone();
        }
        let mut endo = self.endo.clone();
        while !endo.is_injective() {
            let image = endo.image();
            let m = image
                .induced_matrix(endo.matrix(), &image)
                .expect("endomorphism preserves its image");
            endo = GroupMorphism::from_parts(image.group.clone(), image.group.clone(), m);
        }
        let simple = endo.source().simplify();
        let endo = endo.transport(&simple, &simple);
        StationarySystem {
            stage: simple.group,
            endo,
            normalized: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.eventual_normalize().stage.free_rank()
    }

    pub fn invariants(&self) -> StationaryInvariants {
        let n = self.eventual_normalize();
        let stage = &n.stage;
        let torsion_count = stage.torsion().len();
        let free: Vec<usize> = (torsion_count..stage.generators()).collect();
        let block = n.endo.matrix().select_rows(&free).select_cols(&free);
        let endo_det_abs = block.determinant().expect("square block").abs();
        let k = stage.generators();
        let shifted = IntMatrix::identity(k).sub(n.endo.matrix());
        let bf =
            FgAbGroup::new(k, shifted.hstack(stage.relations())).expect("same generator count");
        StationaryInvariants {
            rank: stage.free_rank(),
            invariant_factors: stage.torsion().to_vec(),
            endo_det_abs,
            bowen_franks: bf.normal_form().clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.eventual_normalize().stage.is_trivial()
    }
}

/// `D^s` of the edge shift of `g`: `(Z^V, Aᵀ)`.
pub fn krieger_dimension_group(g: &Graph) -> Result<StationarySystem, StationaryError> {
    if let Some((v, missing)) = g.inessential_vertex() {
        return Err(StationaryError::NotEssential {
            vertex: g.vertex_ids()[v].clone(),
            missing,
        });
    }
    StationarySystem::from_matrix(g.adjacency().transpose())
}

pub fn eventual_normalize(s: &StationarySystem) -> StationarySystem {
    s.eventual_normalize()
}

pub fn invariants(s: &StationarySystem) -> StationaryInvariants {
    s.invariants()
}

/// Stage-wise tensor product; tensor commutes with filtered colimits.
pub fn limit_tensor(s: &StationarySystem, t: &StationarySystem) -> StationarySystem {
    let (s, t) = (s.eventual_normalize(), t.eventual_normalize());
    let endo = tensor_morphism(&s.endo, &t.endo);
    StationarySystem::new(endo).expect("tensor of endomorphisms")
}

/// Stage-wise Tor with the induced endomorphism.
pub fn limit_tor(s: &StationarySystem, t: &StationarySystem) -> StationarySystem {
    let (s, t) = (s.eventual_normalize(), t.eventual_normalize());
    let endo = tor_endomorphism(&s.endo, &t.endo);
    StationarySystem::new(endo).expect("Tor of endomorphisms")
}

pub fn limit_direct_sum(systems: &[StationarySystem]) -> StationarySystem {
    let endos: Vec<&GroupMorphism> = systems.iter().map(|s| &s.endo).collect();
    StationarySystem::new(direct_sum_morphism(&endos)).expect("block endomorphism")
}

/// A bounded chain complex of stationary systems with equivariant
/// differentials `d_k : C_k → C_{k−1}`. Missing degrees are zero.
#[derive(Clone, Debug, Default)]
pub struct StationaryComplex {
    terms: BTreeMap<i64, StationarySystem>,
    differentials: BTreeMap<i64, GroupMorphism>,
}

impl StationaryComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_term(mut self, degree: i64, term: StationarySystem) -> Self {
        self.terms.insert(degree, term);
        self
    }

    /// Differential out of `degree`.
    pub fn with_differential(mut self, degree: i64, d: GroupMorphism) -> Self {
        self.differentials.insert(degree, d);
        self
    }

    pub fn terms(&self) -> &BTreeMap<i64, StationarySystem> {
        &self.terms
    }

    pub fn differentials(&self) -> &BTreeMap<i64, GroupMorphism> {
        &self.differentials
    }

    fn stage(&self, k: i64) -> FgAbGroup {
        self.terms
            .get(&k)
            .map(|t| t.stage.clone())
            .unwrap_or_else(FgAbGroup::trivial)
    }

    fn differential(&self, k: i64) -> Result<GroupMorphism, StationaryError> {
        let (src, dst) = (self.stage(k), self.stage(k - 1));
        match self.differentials.get(&k) {
            None => Ok(GroupMorphism::zero(src, dst)),
            Some(d) => {
                if !d.source().same_presentation(&src) || !d.target().same_presentation(&dst) {
                    return Err(GroupError::DomainMismatch(format!(
                        "differential out of degree {k} does not match the terms"
                    ))
                    .into());
                }
                Ok(d.clone())
            }
        }
    }

    fn endo(&self, k: i64) -> GroupMorphism {
        self.terms
            .get(&k)
            .map(|t| t.endo.clone())
            .unwrap_or_else(|| GroupMorphism::identity(FgAbGroup::trivial()))
    }

    /// Checks equivariance and `d∘d = 0` for every differential.
    pub fn check(&self) -> Result<(), StationaryError> {
        for &k in self.differentials.keys() {
            let d = self.differential(k)?;
            let left = d.compose(&self.endo(k))?;
            let right = self.endo(k - 1).compose(&d)?;
            if !left.equals(&right) {
                return Err(StationaryError::NotEquivariant { degree: k });
            }
            let next = self.differential(k - 1)?;
            if !next.compose(&d)?.is_zero() {
                return Err(StationaryError::CompositionNotZero { degree: k });
            }
        }
        Ok(())
    }
}

/// Per-degree homology of the limit complex, each degree normalized.
///
/// Homology is taken at the stage level and then passed to the limit; this
/// is exact because filtered colimits are exact.
pub fn limit_homology(
    complex: &StationaryComplex,
) -> Result<BTreeMap<i64, StationarySystem>, StationaryError> {
    complex.check()?;
    let mut out = BTreeMap::new();
    for (&k, term) in &complex.terms {
        let incoming = complex.differential(k + 1)?;
        let outgoing = complex.differential(k)?;
        let sub = homology_data(&incoming, &outgoing)?;
        let m = sub
            .induced_matrix(term.endo.matrix(), &sub)
            .ok_or(StationaryError::NotEquivariant { degree: k })?;
        let endo = GroupMorphism::from_parts(sub.group.clone(), sub.group.clone(), m);
        out.insert(k, StationarySystem::new(endo)?.eventual_normalize());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn sys(rows: &[Vec<i64>]) -> StationarySystem {
        StationarySystem::from_matrix(IntMatrix::from_rows(rows)).unwrap()
    }

    fn golden() -> Graph {
        Graph::from_strs(
            &["a", "b"],
            &[("aa", "a", "a"), ("ab", "a", "b"), ("ba", "b", "a")],
        )
        .unwrap()
    }

    #[test]
    fn krieger_examples() {
        let one = krieger_dimension_group(&Graph::bouquet(1)).unwrap();
        assert_eq!(one.invariants().rank, 1);
        assert_eq!(one.invariants().endo_det_abs, z(1));
        let two = krieger_dimension_group(&Graph::bouquet(2)).unwrap();
        assert_eq!(two.endo().matrix(), &IntMatrix::from_rows(&[vec![2]]));
        let gm = krieger_dimension_group(&golden()).unwrap();
        assert_eq!(
            gm.endo().matrix(),
            &IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]])
        );
        assert_eq!(gm.rank(), 2);
    }

    #[test]
    fn krieger_rejects_inessential() {
        let g = Graph::from_strs(&["a", "b"], &[("aa", "a", "a"), ("ab", "a", "b")]).unwrap();
        assert!(matches!(
            krieger_dimension_group(&g).unwrap_err(),
            StationaryError::NotEssential { .. }
        ));
    }

    #[test]
    fn normalize_examples() {
        assert!(sys(&[vec![0, 1], vec![0, 0]])
            .eventual_normalize()
            .stage()
            .is_trivial());
        let n = sys(&[vec![1, 0], vec![0, 0]]).eventual_normalize();
        assert_eq!(n.stage().normal_form().free_rank, 1);
        assert_eq!(n.endo().matrix(), &IntMatrix::from_rows(&[vec![1]]));
        let inj = sys(&[vec![2, 1], vec![1, 1]]).eventual_normalize();
        assert_eq!(inj.stage().generators(), 2);
        assert!(inj.is_normalized());
    }

    #[test]
    fn normalize_torsion_needs_several_steps() {
        // (Z/8, ×2) dies only after three applications.
        let g = FgAbGroup::cyclic(8);
        let endo = GroupMorphism::new(g.clone(), g, IntMatrix::from_rows(&[vec![2]])).unwrap();
        let s = StationarySystem::new(endo).unwrap();
        assert!(s.eventual_normalize().stage().is_trivial());
    }

    #[test]
    fn invariants_examples() {
        let i = sys(&[vec![2]]).invariants();
        assert_eq!((i.rank, i.endo_det_abs.clone()), (1, z(2)));
        assert!(i.bowen_franks.is_trivial());
        let i = sys(&[vec![3]]).invariants();
        assert_eq!(i.bowen_franks.invariant_factors, vec![z(2)]);
        let i = StationarySystem::trivial().invariants();
        assert!(i.is_trivial());
        assert_eq!(i.endo_det_abs, z(1));
        assert!(i.bowen_franks.is_trivial());
    }

    #[test]
    fn tensor_and_tor_examples() {
        let t = limit_tensor(&sys(&[vec![2]]), &sys(&[vec![3]]));
        assert_eq!(t.invariants(), sys(&[vec![6]]).invariants());
        let g = sys(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(
            limit_tensor(&g, &sys(&[vec![1]])).invariants(),
            g.invariants()
        );
        assert!(limit_tor(&sys(&[vec![2]]), &g).is_trivial());
    }

    #[test]
    fn homology_examples() {
        let d = sys(&[vec![2]]);
        let h = limit_homology(&StationaryComplex::new().with_term(0, d.clone())).unwrap();
        assert_eq!(h[&0].invariants(), d.invariants());

        let c = StationaryComplex::new()
            .with_term(1, d.clone())
            .with_term(0, d.clone())
            .with_differential(1, GroupMorphism::identity(d.stage().clone()));
        let h = limit_homology(&c).unwrap();
        assert!(h.values().all(StationarySystem::is_trivial));

        let gm = sys(&[vec![1, 1], vec![1, 0]]);
        let h = limit_homology(&StationaryComplex::new().with_term(0, gm)).unwrap();
        assert_eq!(h[&0].rank(), 2);
    }

    #[test]
    fn non_equivariant_differential_rejected() {
        let a = sys(&[vec![2]]);
        let b = sys(&[vec![3]]);
        let d = GroupMorphism::identity(a.stage().clone());
        let d =
            GroupMorphism::new(a.stage().clone(), b.stage().clone(), d.matrix().clone()).unwrap();
        let c = StationaryComplex::new()
            .with_term(1, a)
            .with_term(0, b)
            .with_differential(1, d);
        assert_eq!(
            limit_homology(&c).unwrap_err(),
            StationaryError::NotEquivariant { degree: 1 }
        );
    }
}
