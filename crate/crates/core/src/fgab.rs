//! Finitely generated abelian groups given by presentations.
//!
//! A group is `Zⁿ / (column span of the relation matrix)`. Presentations are
//! not canonical, so every group also caches its invariant-factor normal form
//! and "equal" in reports always means "normal forms agree".

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::GroupError;
use crate::linalg::{kernel_basis, smith_normal_form, IntMatrix, Lattice};

/// Isomorphism class of a finitely generated abelian group:
/// `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `dᵢ | dᵢ₊₁` and every `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl NormalForm {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

struct GroupData {
    generators: usize,
    relations: IntMatrix,
    normal_form: NormalForm,
    lattice: Lattice,
}

/// `Zⁿ / span(relations)`, cheap to clone.
#[derive(Clone)]
pub struct FgAbGroup {
    inner: Arc<GroupData>,
}

impl FgAbGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self, GroupError> {
        if relations.rows() != generators {
            return Err(GroupError::RelationShape {
                generators,
                rows: relations.rows(),
            });
        }
        let snf = smith_normal_form(&relations);
        let factors = snf.invariant_factors();
        let normal_form = NormalForm {
            free_rank: generators - snf.rank,
            invariant_factors: factors.into_iter().filter(|d| !d.is_one()).collect(),
        };
        let lattice = Lattice::from_generators(&relations);
        Ok(Self {
            inner: Arc::new(GroupData {
                generators,
                relations,
                normal_form,
                lattice,
            }),
        })
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(n, 0)).expect("free presentation")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/order`; order 0 gives `Z`.
    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        let order = order.into();
        Self::new(1, IntMatrix::new(1, 1, vec![order]).expect("1x1")).expect("cyclic presentation")
    }

    /// The group in diagonal form `Z^free ⊕ ⊕ Z/dᵢ` (torsion generators first).
    pub fn from_invariants(free_rank: usize, torsion: &[BigInt]) -> Self {
        let n = torsion.len() + free_rank;
        let mut rel = IntMatrix::zeros(n, torsion.len());
        for (i, d) in torsion.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        Self::new(n, rel).expect("diagonal presentation")
    }

    pub fn generators(&self) -> usize {
        self.inner.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.inner.relations
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.inner.normal_form
    }

    pub fn free_rank(&self) -> usize {
        self.inner.normal_form.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.inner.normal_form.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.normal_form.is_trivial()
    }

    pub fn is_free_presentation(&self) -> bool {
        self.inner.relations.is_zero()
    }

    /// Isomorphism test via normal forms.
    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.normal_form() == other.normal_form()
    }

    pub(crate) fn relation_lattice(&self) -> &Lattice {
        &self.inner.lattice
    }

    /// Whether a coordinate vector represents the zero element.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.inner.lattice.contains(v)
    }

    /// Structural equality of presentations (same generators, same relations).
    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.generators == other.inner.generators
                && self.inner.relations == other.inner.relations)
    }

    /// Change to Smith coordinates: generators with trivial invariant factor
    /// are dropped, the rest carry diagonal relations.
    pub fn simplify(&self) -> Simplified {
        let n = self.generators();
        let snf = smith_normal_form(self.relations());
        let factors = snf.invariant_factors();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| i >= snf.rank || !factors[i].is_one())
            .collect();
        let torsion: Vec<BigInt> = keep
            .iter()
            .filter(|&&i| i < snf.rank)
            .map(|&i| factors[i].clone())
            .collect();
        let group = FgAbGroup::from_invariants(keep.len() - torsion.len(), &torsion);
        Simplified {
            to_new: snf.u.select_rows(&keep),
            to_old: snf.u_inv.select_cols(&keep),
            group,
        }
    }

    /// Reduces a coordinate vector modulo diagonal torsion relations, for
    /// groups produced by [`FgAbGroup::simplify`]/[`FgAbGroup::from_invariants`].
    fn reduce_diagonal(&self, v: &mut [BigInt]) {
        let rel = self.relations();
        for (j, x) in v.iter_mut().enumerate().take(rel.rows().min(rel.cols())) {
            let d = rel.get(j, j);
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
    }

    fn is_diagonal_presentation(&self) -> bool {
        let rel = self.relations();
        (0..rel.rows()).all(|i| (0..rel.cols()).all(|j| i == j || rel.get(i, j).is_zero()))
    }
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other)
    }
}

impl Eq for FgAbGroup {}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FgAbGroup({} gens, {} relations; {})",
            self.generators(),
            self.relations().cols(),
            self.normal_form()
        )
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.normal_form().fmt(f)
    }
}

/// A group rewritten in Smith coordinates together with the coordinate maps.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub group: FgAbGroup,
    /// Old coordinates to new (`new_gens × old_gens`).
    pub to_new: IntMatrix,
    /// New generators expressed in old coordinates (`old_gens × new_gens`).
    pub to_old: IntMatrix,
}

/// Homomorphism between presented groups; the matrix acts on generator
/// columns and is checked to respect relations at construction.
#[derive(Clone)]
pub struct GroupMorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupMorphism {
    pub fn new(
        source: FgAbGroup,
        target: FgAbGroup,
        matrix: IntMatrix,
    ) -> Result<Self, GroupError> {
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(GroupError::MatrixShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.generators(),
                expected_cols: source.generators(),
            });
        }
        let images = matrix.mul(source.relations());
        for j in 0..images.cols() {
            if !target.is_zero_element(&images.column(j)) {
                return Err(GroupError::IllDefined { column: j });
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: FgAbGroup, target: FgAbGroup) -> Self {
        let matrix = IntMatrix::zeros(target.generators(), source.generators());
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(group: FgAbGroup) -> Self {
        let matrix = IntMatrix::identity(group.generators());
        Self {
            source: group.clone(),
            target: group,
            matrix,
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupMorphism) -> Result<GroupMorphism, GroupError> {
        if !first.target.same_presentation(&self.source) {
            return Err(GroupError::DomainMismatch(
                "target of the first map differs from the source of the second".into(),
            ));
        }
        Ok(GroupMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    /// Equality as homomorphisms: same groups and matrices congruent modulo
    /// the target relations.
    pub fn equals(&self, other: &GroupMorphism) -> bool {
        self.source.same_presentation(&other.source)
            && self.target.same_presentation(&other.target)
            && {
                let diff = self.matrix.sub(&other.matrix);
                (0..diff.cols()).all(|j| self.target.is_zero_element(&diff.column(j)))
            }
    }

    pub fn add(&self, other: &GroupMorphism) -> Result<GroupMorphism, GroupError> {
        if !self.source.same_presentation(&other.source)
            || !self.target.same_presentation(&other.target)
        {
            return Err(GroupError::DomainMismatch(
                "sum of maps between different groups".into(),
            ));
        }
        Ok(GroupMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    pub fn scale(&self, factor: i64) -> GroupMorphism {
        GroupMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(&BigInt::from(factor)),
        }
    }

    /// Rewrites the map in the coordinates of simplified source and target.
    pub fn transport(&self, source: &Simplified, target: &Simplified) -> GroupMorphism {
        let m = target.to_new.mul(&self.matrix).mul(&source.to_old);
        GroupMorphism::from_parts_reduced(source.group.clone(), target.group.clone(), m)
    }

    /// Kernel of the map as a subgroup of the source.
    pub fn kernel(&self) -> Subquotient {
        let zero_in = GroupMorphism::zero(FgAbGroup::trivial(), self.source.clone());
        homology_data(&zero_in, self).expect("zero map composes to zero")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    /// Image of the map as a subgroup of the target.
    pub fn image(&self) -> Subquotient {
        let gens = self.matrix.hstack(self.target.relations());
        let lattice = Lattice::from_generators(&gens);
        Subquotient::new(lattice, self.target.relations())
            .expect("relations lie in the image lattice")
    }

    /// Trusted constructor for matrices produced by internal algebra that is
    /// well defined by construction.
    pub(crate) fn from_parts(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.generators());
        debug_assert_eq!(matrix.cols(), source.generators());
        Self {
            source,
            target,
            matrix,
        }
    }

    fn from_parts_reduced(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Self {
        if target.is_diagonal_presentation() {
            for j in 0..matrix.cols() {
                let mut col = matrix.column(j);
                target.reduce_diagonal(&mut col);
                for (i, x) in col.into_iter().enumerate() {
                    matrix.set(i, j, x);
                }
            }
        }
        Self::from_parts(source, target, matrix)
    }
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupMorphism({:?} -> {:?}, {:?})",
            self.source, self.target, self.matrix
        )
    }
}

/// A subquotient `Λ / N` of an ambient `Zⁿ`: `Λ` is a lattice with a basis
/// (`reps`), `N ⊆ Λ`. The group is presented on the basis of `Λ`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAbGroup,
    lattice: Lattice,
}

impl Subquotient {
    /// `relation_gens` are ambient vectors spanning `N`; each must lie in the
    /// lattice.
    fn new(lattice: Lattice, relation_gens: &IntMatrix) -> Option<Self> {
        let rel = lattice.coordinates_of_columns(relation_gens)?;
        let group = FgAbGroup::new(lattice.rank(), rel).ok()?;
        Some(Self { group, lattice })
    }

    /// Generators of the group, as ambient vectors (columns).
    pub fn representatives(&self) -> &IntMatrix {
        self.lattice.basis()
    }

    /// Group coordinates of an ambient vector lying in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.lattice.coordinates(v)
    }

    /// Matrix of the map induced by an ambient matrix `m` from `self` to
    /// `target`; `None` if `m` does not carry the lattice of `self` into that of
    /// `target`.
    pub fn induced_matrix(&self, m: &IntMatrix, target: &Subquotient) -> Option<IntMatrix> {
        target
            .lattice
            .coordinates_of_columns(&m.mul(self.lattice.basis()))
    }
}

/// `ker(outgoing) / im(incoming)` with its lattice data.
///
/// The kernel is computed as the saturated solution set of
/// `G b ∈ span(R_C)`, i.e. the first block of `kernel_basis([G | R_C])`. The
/// image of `incoming` and the source relations are then rewritten in the
/// coordinates of that kernel lattice by exact integer solving; those
/// coordinate vectors are the relations of the homology group.
pub fn homology_data(
    incoming: &GroupMorphism,
    outgoing: &GroupMorphism,
) -> Result<Subquotient, GroupError> {
    if !incoming.target.same_presentation(&outgoing.source) {
        return Err(GroupError::DomainMismatch(
            "incoming target differs from outgoing source".into(),
        ));
    }
    let composite = outgoing.compose(incoming)?;
    if !composite.is_zero() {
        return Err(GroupError::CompositionNotZero);
    }
    let b = &outgoing.source;
    let n = b.generators();
    let stacked = outgoing.matrix.hstack(outgoing.target.relations());
    let kb = kernel_basis(&stacked);
    let top: Vec<usize> = (0..n).collect();
    let kernel_gens = kb.select_rows(&top).hstack(b.relations());
    let lattice = Lattice::from_generators(&kernel_gens);
    let boundaries = incoming.matrix.hstack(b.relations());
    Subquotient::new(lattice, &boundaries)
        .ok_or_else(|| GroupError::DomainMismatch("image escapes the kernel".into()))
}

/// Homology at the middle node of `A → B → C`.
pub fn homology_at(
    incoming: &GroupMorphism,
    outgoing: &GroupMorphism,
) -> Result<FgAbGroup, GroupError> {
    Ok(homology_data(incoming, outgoing)?.group)
}

/// Block presentation of a direct sum.
pub fn direct_sum(groups: &[FgAbGroup]) -> FgAbGroup {
    let gens = groups.iter().map(FgAbGroup::generators).sum();
    let blocks: Vec<&IntMatrix> = groups.iter().map(FgAbGroup::relations).collect();
    FgAbGroup::new(gens, IntMatrix::block_diag(&blocks)).expect("block presentation")
}

/// Block-diagonal sum of maps.
pub fn direct_sum_morphism(maps: &[&GroupMorphism]) -> GroupMorphism {
    let sources: Vec<FgAbGroup> = maps.iter().map(|m| m.source.clone()).collect();
    let targets: Vec<FgAbGroup> = maps.iter().map(|m| m.target.clone()).collect();
    let blocks: Vec<&IntMatrix> = maps.iter().map(|m| &m.matrix).collect();
    GroupMorphism::from_parts(
        direct_sum(&sources),
        direct_sum(&targets),
        IntMatrix::block_diag(&blocks),
    )
}

/// `G ⊗ H` presented on pairs of generators `(i, k) ↦ i·|H| + k`.
pub fn tensor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let (ng, nh) = (g.generators(), h.generators());
    let rel = g
        .relations()
        .kron(&IntMatrix::identity(nh))
        .hstack(&IntMatrix::identity(ng).kron(h.relations()));
    FgAbGroup::new(ng * nh, rel).expect("tensor presentation")
}

/// `f ⊗ g` between the tensor presentations built by [`tensor`].
pub fn tensor_morphism(f: &GroupMorphism, g: &GroupMorphism) -> GroupMorphism {
    GroupMorphism::from_parts(
        tensor(&f.source, &g.source),
        tensor(&f.target, &g.target),
        f.matrix.kron(&g.matrix),
    )
}

/// `Tor₁(G, H)` together with the lattice data used to compute maps into it.
///
/// With `0 → Zᵏ --R--> Zⁿ → G → 0` an injective resolution (`R` a basis of
/// the relation lattice), `Tor(G, H) = ker(R ⊗ 1 : Hᵏ → Hⁿ)`.
struct TorData {
    sub: Subquotient,
    resolution: IntMatrix,
    g: FgAbGroup,
    h: FgAbGroup,
}

fn power(h: &FgAbGroup, k: usize) -> FgAbGroup {
    let rel = IntMatrix::identity(k).kron(h.relations());
    FgAbGroup::new(k * h.generators(), rel).expect("power presentation")
}

fn tor_data(g: &FgAbGroup, h: &FgAbGroup) -> TorData {
    let resolution = g.relation_lattice().basis().clone();
    let k = resolution.cols();
    let src = power(h, k);
    let dst = power(h, g.generators());
    let map = GroupMorphism::from_parts(
        src.clone(),
        dst,
        resolution.kron(&IntMatrix::identity(h.generators())),
    );
    let zero_in = GroupMorphism::zero(FgAbGroup::trivial(), src);
    let sub = homology_data(&zero_in, &map).expect("kernel of a well-defined map");
    TorData {
        sub,
        resolution,
        g: g.clone(),
        h: h.clone(),
    }
}

pub fn tor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    tor_data(g, h).sub.group
}

/// Tor of two endomorphisms: the group `Tor(G, H)` with the map induced by
/// `f: G → G` and `e: H → H`.
pub fn tor_endomorphism(f: &GroupMorphism, e: &GroupMorphism) -> GroupMorphism {
    let data = tor_data(&f.source, &e.source);
    debug_assert!(f.target.same_presentation(&data.g));
    debug_assert!(e.target.same_presentation(&data.h));
    // Lift f to the resolution: f R = R φ.
    let phi = data
        .g
        .relation_lattice()
        .coordinates_of_columns(&f.matrix.mul(&data.resolution))
        .expect("well-defined map preserves relations");
    let ambient = phi.kron(&e.matrix);
    let m = data
        .sub
        .induced_matrix(&ambient, &data.sub)
        .expect("chain map preserves the Tor kernel");
    GroupMorphism::from_parts(data.sub.group.clone(), data.sub.group, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn nf(free_rank: usize, t: &[i64]) -> NormalForm {
        NormalForm {
            free_rank,
            invariant_factors: t.iter().map(|&x| z(x)).collect(),
        }
    }

    fn mul_map(src: &FgAbGroup, dst: &FgAbGroup, k: i64) -> GroupMorphism {
        GroupMorphism::new(src.clone(), dst.clone(), IntMatrix::from_i64(1, 1, &[k])).unwrap()
    }

    #[test]
    fn coker_of_doubling() {
        let zz = FgAbGroup::free(1);
        let incoming = mul_map(&zz, &zz, 2);
        let outgoing = GroupMorphism::zero(zz.clone(), FgAbGroup::trivial());
        assert_eq!(
            homology_at(&incoming, &outgoing).unwrap().normal_form(),
            &nf(0, &[2])
        );
    }

    #[test]
    fn zero_differentials_return_group() {
        let g = FgAbGroup::from_invariants(2, &[z(3)]);
        let incoming = GroupMorphism::zero(FgAbGroup::free(4), g.clone());
        let outgoing = GroupMorphism::zero(g.clone(), FgAbGroup::cyclic(5));
        assert!(homology_at(&incoming, &outgoing).unwrap().is_isomorphic(&g));
    }

    #[test]
    fn exact_sequence_has_trivial_homology() {
        let zz = FgAbGroup::free(1);
        let incoming = GroupMorphism::identity(zz.clone());
        let outgoing = GroupMorphism::zero(zz, FgAbGroup::trivial());
        assert!(homology_at(&incoming, &outgoing).unwrap().is_trivial());
    }

    #[test]
    fn nonzero_composite_rejected() {
        let zz = FgAbGroup::free(1);
        let id = GroupMorphism::identity(zz.clone());
        assert_eq!(
            homology_at(&id, &id).unwrap_err(),
            GroupError::CompositionNotZero
        );
        let other = GroupMorphism::identity(FgAbGroup::free(2));
        assert!(matches!(
            homology_at(&id, &other).unwrap_err(),
            GroupError::DomainMismatch(_)
        ));
    }

    #[test]
    fn ill_defined_morphism_rejected() {
        // Z/2 → Z/3 sending the generator to the generator is not a homomorphism.
        let err = GroupMorphism::new(
            FgAbGroup::cyclic(2),
            FgAbGroup::cyclic(3),
            IntMatrix::from_i64(1, 1, &[1]),
        )
        .unwrap_err();
        assert_eq!(err, GroupError::IllDefined { column: 0 });
    }

    #[test]
    fn tensor_examples() {
        let g = FgAbGroup::from_invariants(1, &[z(4)]);
        let h = FgAbGroup::cyclic(6);
        assert_eq!(tensor(&g, &h).normal_form(), &nf(0, &[2, 6]));
        assert!(tensor(&g, &FgAbGroup::free(1)).is_isomorphic(&g));
        assert!(tensor(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(3)).is_trivial());
    }

    #[test]
    fn tor_examples() {
        let t = tor(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(2));
        assert_eq!(t.normal_form(), &nf(0, &[2]));
        assert!(tor(&FgAbGroup::free(3), &FgAbGroup::cyclic(4)).is_trivial());
        assert!(tor(&FgAbGroup::cyclic(4), &FgAbGroup::free(3)).is_trivial());
        let t = tor(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6));
        assert_eq!(t.normal_form(), &nf(0, &[2]));
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&[FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)]);
        assert_eq!(s.normal_form(), &nf(0, &[6]));
        assert!(direct_sum(&[]).is_trivial());
        let g = FgAbGroup::from_invariants(1, &[z(2)]);
        assert!(direct_sum(&[g.clone(), FgAbGroup::trivial()]).is_isomorphic(&g));
    }

    #[test]
    fn simplify_round_trip() {
        let rel = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8], vec![0, 0]]);
        let g = FgAbGroup::new(3, rel).unwrap();
        let s = g.simplify();
        assert!(s.group.is_isomorphic(&g));
        assert_eq!(s.group.generators(), 3);
        // to_old ∘ to_new is the identity on the old group.
        let back = s.to_old.mul(&s.to_new);
        let diff = back.sub(&IntMatrix::identity(3));
        for j in 0..3 {
            assert!(g.is_zero_element(&diff.column(j)));
        }
    }

    #[test]
    fn tor_endomorphism_on_cyclic() {
        // Tor(Z/4, Z/4) = Z/4; multiplication by 3 on both factors induces ×9 = ×1.
        let g = FgAbGroup::cyclic(4);
        let f = mul_map(&g, &g, 3);
        let t = tor_endomorphism(&f, &f);
        assert_eq!(t.source().normal_form(), &nf(0, &[4]));
        assert!(t.equals(&GroupMorphism::identity(t.source().clone())));
        // Doubling on one side gives a map with nontrivial kernel.
        let d = mul_map(&g, &g, 2);
        assert!(!tor_endomorphism(&d, &f).is_injective());
    }

    #[test]
    fn kernel_and_image() {
        let zz2 = FgAbGroup::free(2);
        let m = GroupMorphism::new(
            zz2.clone(),
            zz2,
            IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]]),
        )
        .unwrap();
        assert_eq!(m.kernel().group.normal_form(), &nf(1, &[]));
        assert_eq!(m.image().group.normal_form(), &nf(1, &[]));
        assert!(!m.is_injective());
    }
}
