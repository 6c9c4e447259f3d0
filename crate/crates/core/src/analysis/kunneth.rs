use std::collections::BTreeMap;

use crate::complex::{DegreeHomology, HomologyReport, Provenance};
use crate::document::sha256_hex;
use crate::error::SymbolicError;
use crate::stationary::{limit_direct_sum, limit_tensor, limit_tor, StationarySystem};
use crate::symbolic::{FiberedPresentation, Graph, Partition};

/// Predicted homology of a product: degree `k` receives `H_a ⊗ H_b` for
/// `a + b = k` and `Tor(H_a, H_b)` for `a + b = k − 1`. Only isomorphism
/// classes are meaningful; the splitting is not natural.
pub fn kunneth(h1: &HomologyReport, h2: &HomologyReport) -> HomologyReport {
    let mut parts: BTreeMap<i64, Vec<StationarySystem>> = BTreeMap::new();
    for (&a, x) in &h1.degrees {
        for (&b, y) in &h2.degrees {
            parts
                .entry(a + b)
                .or_default()
                .push(limit_tensor(&x.system, &y.system));
            let t = limit_tor(&x.system, &y.system);
            if !t.is_trivial() {
                parts.entry(a + b + 1).or_default().push(t);
            }
        }
    }
    let degrees = parts
        .into_iter()
        .map(|(k, systems)| (k, DegreeHomology::new(limit_direct_sum(&systems))))
        .collect();
    let digest =
        sha256_hex(format!("{}|{}", h1.provenance.digest, h2.provenance.digest).as_bytes());
    HomologyReport {
        degrees,
        provenance: Provenance {
            source: "kunneth".into(),
            digest,
            bounds: None,
            guardrails: Vec::new(),
        },
    }
}

fn product_partition(a: &Partition, b: &Partition, n_b: usize) -> Partition {
    let n = a.classes().iter().map(Vec::len).sum::<usize>() * n_b;
    let classes = a
        .classes()
        .iter()
        .flat_map(|ca| {
            b.classes().iter().map(move |cb| {
                ca.iter()
                    .flat_map(|&i| cb.iter().map(move |&j| i * n_b + j))
                    .collect::<Vec<usize>>()
            })
        })
        .collect();
    Partition::from_classes(n, classes, |i| i.to_string()).expect("product of partitions")
}

/// Product presentation: pairs of vertices and of edges with componentwise
/// incidence, classes are products of classes. Ids are `(a,b)`.
pub fn product_presentation(
    p1: &FiberedPresentation,
    p2: &FiberedPresentation,
) -> Result<FiberedPresentation, SymbolicError> {
    for p in [p1, p2] {
        if let Some(v) = p.validate().violations.first() {
            return Err(SymbolicError::PresentationInvalid(v.to_string()));
        }
    }
    let (g1, g2) = (p1.base(), p2.base());
    let pair = |a: &str, b: &str| format!("({a},{b})");
    let vertices: Vec<String> = g1
        .vertex_ids()
        .iter()
        .flat_map(|a| g2.vertex_ids().iter().map(move |b| pair(a, b)))
        .collect();
    let mut edges = Vec::new();
    for e in 0..g1.edge_count() {
        for f in 0..g2.edge_count() {
            edges.push((
                pair(&g1.edge_ids()[e], &g2.edge_ids()[f]),
                pair(
                    &g1.vertex_ids()[g1.source(e)],
                    &g2.vertex_ids()[g2.source(f)],
                ),
                pair(
                    &g1.vertex_ids()[g1.target(e)],
                    &g2.vertex_ids()[g2.target(f)],
                ),
            ));
        }
    }
    let graph = Graph::new(vertices, edges)?;
    let (nv, ne) = (g2.vertex_count(), g2.edge_count());
    Ok(FiberedPresentation::from_partitions(
        graph,
        product_partition(p1.y_vertex(), p2.y_vertex(), nv),
        product_partition(p1.y_edge(), p2.y_edge(), ne),
        product_partition(p1.z_vertex(), p2.z_vertex(), nv),
        product_partition(p1.z_edge(), p2.z_edge(), ne),
    ))
}
