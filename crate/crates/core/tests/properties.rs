use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smale_core::analysis::poly::{
    characteristic_polynomial, count_outside_unit_circle, CircleCount, Poly,
};
use smale_core::analysis::{kunneth, product_presentation};
use smale_core::complex::{DegreeHomology, HomologyReport, Provenance};
use smale_core::fgab::{homology_at, tensor, tor};
use smale_core::sample::{cover_presentation, essential_graph};
use smale_core::symbolic::ClassLists;
use smale_core::{
    homology, kernel_basis, krieger_dimension_group, rank, smith_normal_form, FgAbGroup,
    FiberedPresentation, Graph, GroupMorphism, IntMatrix, StationarySystem,
};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

fn to_float(m: &IntMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        m.get(i, j).to_string().parse::<f64>().expect("small entry")
    })
}

/// Numerical rank from singular values; entries are small so the gap is wide.
fn float_rank(m: &IntMatrix) -> usize {
    const TOL: f64 = 1e-8;
    to_float(m)
        .singular_values()
        .iter()
        .filter(|s| **s > TOL)
        .count()
}

fn is_diagonal(d: &IntMatrix) -> bool {
    (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d.get(i, j).is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_postconditions(m in matrix(8, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        prop_assert!(is_diagonal(&s.d));
        let diag: Vec<BigInt> = (0..m.rows().min(m.cols())).map(|i| s.d.get(i, i).clone()).collect();
        prop_assert_eq!(diag.iter().filter(|x| !x.is_zero()).count(), s.rank);
        prop_assert!(diag[..s.rank].iter().all(|x| x.is_positive()));
        prop_assert!(diag[s.rank..].iter().all(Zero::is_zero));
        prop_assert!(diag[..s.rank].windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        prop_assert_eq!(rank(&m), float_rank(&m));
    }

    #[test]
    fn kernel_is_saturated_and_complete(m in matrix(8, 9)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.cols(), m.cols() - rank(&m));
        prop_assert!(m.mul(&k).is_zero());
        if k.cols() > 0 {
            // saturated: the quotient Z^n / span(K) is torsion-free
            prop_assert!(smith_normal_form(&k).invariant_factors().iter().all(One::is_one));
        }
    }

    #[test]
    fn transpose_preserves_invariants(m in matrix(6, 9)) {
        prop_assert_eq!(
            smith_normal_form(&m).invariant_factors(),
            smith_normal_form(&m.transpose()).invariant_factors()
        );
    }

    /// Torsion of `ker g / im f` is the torsion of `coker f`, and the free
    /// rank is `dim ker g − rank f`.
    #[test]
    fn homology_matches_rank_count(g in matrix(5, 4), seed in any::<u64>()) {
        let b = g.cols();
        let k = kernel_basis(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rand::Rng::gen_range(&mut rng, 1..=4usize);
        let r: Vec<i64> = (0..k.cols() * a).map(|_| rand::Rng::gen_range(&mut rng, -3..=3)).collect();
        let f = if k.cols() == 0 { IntMatrix::zeros(b, a) } else { k.mul(&IntMatrix::from_i64(k.cols(), a, &r)) };
        let fm = GroupMorphism::new(FgAbGroup::free(a), FgAbGroup::free(b), f.clone()).unwrap();
        let gm = GroupMorphism::new(FgAbGroup::free(b), FgAbGroup::free(g.rows()), g.clone()).unwrap();
        let h = homology_at(&fm, &gm).unwrap();
        prop_assert_eq!(h.free_rank(), b - float_rank(&g) - float_rank(&f));
        let torsion: Vec<BigInt> = smith_normal_form(&f).invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        prop_assert_eq!(h.torsion().to_vec(), torsion);
    }

    #[test]
    fn cyclic_tensor_and_tor(xs in prop::collection::vec(0u32..7, 1..4), ys in prop::collection::vec(0u32..7, 1..4)) {
        // order 0 stands for Z
        let group = |v: &[u32]| {
            let free = v.iter().filter(|&&x| x == 0).count();
            let tors: Vec<BigInt> = v.iter().filter(|&&x| x > 1).map(|&x| BigInt::from(x)).collect();
            FgAbGroup::from_invariants(free, &tors)
        };
        let (g, h) = (group(&xs), group(&ys));
        let mut tensor_parts = Vec::new();
        let mut tor_parts = Vec::new();
        for &x in &xs {
            for &y in &ys {
                let d = x.gcd(&y);
                if x == 0 && y == 0 {
                    tensor_parts.push(0);
                } else {
                    tensor_parts.push(d);
                }
                if x != 0 && y != 0 {
                    tor_parts.push(d);
                }
            }
        }
        prop_assert!(tensor(&g, &h).is_isomorphic(&group(&tensor_parts)));
        prop_assert!(tor(&g, &h).is_isomorphic(&group(&tor_parts)));
        prop_assert!(tensor(&g, &h).is_isomorphic(&tensor(&h, &g)));
        prop_assert!(tor(&g, &h).is_isomorphic(&tor(&h, &g)));
    }

    #[test]
    fn normalization_is_idempotent(m in matrix(4, 3).prop_filter("square", IntMatrix::is_square)) {
        let s = StationarySystem::from_matrix(m.clone()).unwrap();
        let n = s.eventual_normalize();
        prop_assert!(n.endo().is_injective());
        prop_assert_eq!(n.eventual_normalize().invariants(), n.invariants());
        prop_assert_eq!(n.invariants(), s.invariants());
        // eventual rank of the endomorphism
        prop_assert_eq!(s.rank(), float_rank(&m.pow(m.rows() as u32)));
    }

    #[test]
    fn krieger_matches_direct_oracles(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = essential_graph(&mut rng, 5, 9);
        let a = g.adjacency();
        let inv = krieger_dimension_group(&g).unwrap().invariants();
        let n = a.rows();
        prop_assert_eq!(inv.rank, float_rank(&a.pow(n as u32)));
        prop_assert!(inv.invariant_factors.is_empty());
        let direct = FgAbGroup::new(n, IntMatrix::identity(n).sub(&a.transpose())).unwrap();
        prop_assert_eq!(&inv.bowen_franks, direct.normal_form());
    }

    /// Exact unit-circle count against numerical eigenvalues.
    #[test]
    fn circle_count_matches_eigenvalues(m in (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| IntMatrix::from_i64(n, n, &v))
    })) {
        const GAP: f64 = 1e-4;
        let (coeffs, _) = characteristic_polynomial(&m);
        let moduli: Vec<f64> = to_float(&m).complex_eigenvalues().iter().map(|z| z.norm()).collect();
        match count_outside_unit_circle(&Poly::from_ints(&coeffs)) {
            CircleCount::OnCircle => prop_assert!(moduli.iter().any(|r| (r - 1.0).abs() < GAP), "{moduli:?}"),
            CircleCount::Outside(n) => {
                prop_assert!(moduli.iter().all(|r| (r - 1.0).abs() > 1e-9), "{moduli:?}");
                prop_assert_eq!(n, moduli.iter().filter(|&&r| r > 1.0).count(), "{:?}", moduli);
            }
        }
    }
}

fn report(degrees: Vec<(i64, StationarySystem)>) -> HomologyReport {
    HomologyReport {
        degrees: degrees
            .into_iter()
            .map(|(k, s)| (k, DegreeHomology::new(s)))
            .collect(),
        provenance: Provenance {
            source: "test".into(),
            digest: String::new(),
            bounds: None,
            guardrails: Vec::new(),
        },
    }
}

fn small_system() -> impl Strategy<Value = StationarySystem> {
    prop_oneof![
        (1i64..4)
            .prop_map(|k| StationarySystem::from_matrix(IntMatrix::from_rows(&[vec![k]])).unwrap()),
        (2u32..5).prop_map(
            |n| StationarySystem::new(GroupMorphism::identity(FgAbGroup::cyclic(n))).unwrap()
        ),
        Just(
            StationarySystem::from_matrix(IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]])).unwrap()
        ),
    ]
}

fn small_report() -> impl Strategy<Value = HomologyReport> {
    prop::collection::vec((-1i64..=1, small_system()), 1..3).prop_map(|v| {
        let mut m: BTreeMap<i64, StationarySystem> = BTreeMap::new();
        for (k, s) in v {
            m.insert(k, s);
        }
        report(m.into_iter().collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kunneth_is_commutative_and_associative(a in small_report(), b in small_report(), c in small_report()) {
        prop_assert_eq!(kunneth(&a, &b).invariant_table(), kunneth(&b, &a).invariant_table());
        prop_assert_eq!(
            kunneth(&kunneth(&a, &b), &c).invariant_table(),
            kunneth(&a, &kunneth(&b, &c)).invariant_table()
        );
    }
}

/// Renames every id and reverses the order of vertices, edges and classes.
fn relabel(p: &FiberedPresentation) -> FiberedPresentation {
    let g = p.base();
    let graph = Graph::new(
        g.vertex_ids().iter().rev().map(|v| format!("r{v}")),
        (0..g.edge_count()).rev().map(|e| {
            (
                format!("r{}", g.edge_ids()[e]),
                format!("r{}", g.vertex_ids()[g.source(e)]),
                format!("r{}", g.vertex_ids()[g.target(e)]),
            )
        }),
    )
    .unwrap();
    let rename = |c: Option<Vec<Vec<String>>>| {
        c.map(|cs| {
            cs.into_iter()
                .rev()
                .map(|c| c.into_iter().rev().map(|x| format!("r{x}")).collect())
                .collect()
        })
    };
    let l = p.class_lists();
    let lists = ClassLists {
        y_vertex_classes: rename(l.y_vertex_classes),
        y_edge_classes: rename(l.y_edge_classes),
        z_vertex_classes: rename(l.z_vertex_classes),
        z_edge_classes: rename(l.z_edge_classes),
    };
    FiberedPresentation::from_class_lists(graph, &lists).unwrap()
}

#[test]
fn relabeling_preserves_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..25 {
        let p = cover_presentation(&mut rng, 3, 5, 2).presentation;
        let q = relabel(&p);
        assert!(q.validate().is_valid());
        assert_eq!(p.bounds(), q.bounds());
        assert_eq!(
            homology(&p).unwrap().invariant_table(),
            homology(&q).unwrap().invariant_table()
        );
    }
}

#[test]
fn euler_characteristic_matches_cells() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let p = cover_presentation(&mut rng, 3, 5, 2).presentation;
        let dc = smale_core::complex::build(&p).unwrap();
        let h = smale_core::complex::total_homology(&dc).unwrap();
        assert_eq!(h.euler_characteristic(), dc.cell_euler_characteristic());
    }
}

#[test]
fn product_with_a_point_is_a_copy() {
    let point = FiberedPresentation::singleton(Graph::bouquet(1));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let p = cover_presentation(&mut rng, 3, 4, 2).presentation;
        let q = product_presentation(&p, &point).unwrap();
        assert_eq!(q.base().vertex_count(), p.base().vertex_count());
        assert_eq!(q.base().edge_count(), p.base().edge_count());
        assert_eq!(q.bounds(), p.bounds());
        assert_eq!(
            homology(&q).unwrap().invariant_table(),
            homology(&p).unwrap().invariant_table()
        );
    }
}
