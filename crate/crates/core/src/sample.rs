//! Seeded random inputs for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::symbolic::{FiberedPresentation, Graph, Partition};

/// Random essential graph with between 1 and `max_vertices` vertices and at
/// most `max_edges` edges (never fewer than the vertex count).
pub fn essential_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    assert!(max_vertices >= 1 && max_edges >= max_vertices);
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(n..=max_edges);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|v| (v, perm[v])).collect();
    while edges.len() < m {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    Graph::new(
        (0..n).map(|v| format!("v{v}")),
        edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (format!("e{i}"), format!("v{s}"), format!("v{t}"))),
    )
    .expect("generated ids are distinct")
}

/// A presentation built as a fiber product over a quotient graph.
#[derive(Clone, Debug)]
pub struct CoverSample {
    pub presentation: FiberedPresentation,
    /// The graph both covers map onto; its dimension group is the expected
    /// homology in degree 0.
    pub quotient: Graph,
}

/// `(quotient vertex, index in its fiber)`.
type Lift = (usize, usize);
/// `(quotient edge, source lift, target lift)`, lifts as positions.
type LiftedEdge = (usize, usize, usize);

/// Covering graph over `h`: `fiber[v]` lifts per vertex, and for every edge
/// `e` one lift per fiber point on one side (`outward`: per source lift,
/// otherwise per target lift), with the other endpoint chosen at random.
/// Resampled until every lift has both an incoming and an outgoing edge.
fn cover<R: Rng>(
    rng: &mut R,
    h: &Graph,
    max_fiber: usize,
    outward: bool,
) -> (Vec<Lift>, Vec<LiftedEdge>) {
    loop {
        let fiber: Vec<usize> = (0..h.vertex_count())
            .map(|_| rng.gen_range(1..=max_fiber))
            .collect();
        let vertices: Vec<(usize, usize)> = (0..h.vertex_count())
            .flat_map(|v| (0..fiber[v]).map(move |i| (v, i)))
            .collect();
        let index = |v: usize, i: usize| {
            vertices
                .iter()
                .position(|&x| x == (v, i))
                .expect("lift exists")
        };
        let mut edges = Vec::new();
        for e in 0..h.edge_count() {
            let (s, t) = (h.source(e), h.target(e));
            if outward {
                for i in 0..fiber[s] {
                    let j = rng.gen_range(0..fiber[t]);
                    edges.push((e, index(s, i), index(t, j)));
                }
            } else {
                for j in 0..fiber[t] {
                    let i = rng.gen_range(0..fiber[s]);
                    edges.push((e, index(s, i), index(t, j)));
                }
            }
        }
        let ok = (0..vertices.len()).all(|v| {
            edges.iter().any(|&(_, s, _)| s == v) && edges.iter().any(|&(_, _, t)| t == v)
        });
        if ok {
            return (vertices, edges);
        }
    }
}

/// Fiber product of an out-resolving cover (rows) and an in-resolving
/// cover (columns) of a random essential graph.
pub fn cover_presentation<R: Rng>(
    rng: &mut R,
    max_quotient_vertices: usize,
    max_quotient_edges: usize,
    max_fiber: usize,
) -> CoverSample {
    let h = essential_graph(rng, max_quotient_vertices, max_quotient_edges);
    let (yv, ye) = cover(rng, &h, max_fiber, true);
    let (zv, ze) = cover(rng, &h, max_fiber, false);
    let mut vertices = Vec::new();
    for (a, &(hv, _)) in yv.iter().enumerate() {
        for (b, &(hw, _)) in zv.iter().enumerate() {
            if hv == hw {
                vertices.push((a, b));
            }
        }
    }
    let mut edges = Vec::new();
    for (a, &(e, ..)) in ye.iter().enumerate() {
        for (b, &(f, ..)) in ze.iter().enumerate() {
            if e == f {
                edges.push((a, b));
            }
        }
    }
    let vid = |i: usize| format!("y{}z{}", vertices[i].0, vertices[i].1);
    let vpos = |a: usize, b: usize| {
        vertices
            .iter()
            .position(|&x| x == (a, b))
            .expect("pair exists")
    };
    let graph = Graph::new(
        (0..vertices.len()).map(vid),
        edges.iter().map(|&(a, b)| {
            (
                format!("f{a}g{b}"),
                vid(vpos(ye[a].1, ze[b].1)),
                vid(vpos(ye[a].2, ze[b].2)),
            )
        }),
    )
    .expect("generated ids are distinct");
    let group = |n: usize, key: &dyn Fn(usize) -> usize, classes: usize| {
        let lists: Vec<Vec<usize>> = (0..classes)
            .map(|c| (0..n).filter(|&i| key(i) == c).collect())
            .filter(|c: &Vec<usize>| !c.is_empty())
            .collect();
        Partition::from_classes(n, lists, |i| i.to_string()).expect("grouping is a partition")
    };
    let (nv, ne) = (vertices.len(), edges.len());
    let presentation = FiberedPresentation::from_partitions(
        graph,
        group(nv, &|i| vertices[i].0, yv.len()),
        group(ne, &|i| edges[i].0, ye.len()),
        group(nv, &|i| vertices[i].1, zv.len()),
        group(ne, &|i| edges[i].1, ze.len()),
    );
    CoverSample {
        presentation,
        quotient: h,
    }
}
