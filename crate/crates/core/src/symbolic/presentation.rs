use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::GraphError;

/// A partition of vertex or edge indices, stored both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn singletons(n: usize) -> Self {
        Self {
            class_of: (0..n).collect(),
            classes: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Classes given as index lists; must cover `0..n` exactly once.
    pub fn from_classes(
        n: usize,
        classes: Vec<Vec<usize>>,
        name: impl Fn(usize) -> String,
    ) -> Result<Self, GraphError> {
        let mut class_of = vec![usize::MAX; n];
        for (c, members) in classes.iter().enumerate() {
            if members.is_empty() {
                return Err(GraphError::EmptyClass);
            }
            for &i in members {
                if class_of[i] != usize::MAX {
                    return Err(GraphError::RepeatedInPartition(name(i)));
                }
                class_of[i] = c;
            }
        }
        if let Some(i) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(GraphError::MissingFromPartition(name(i)));
        }
        let mut classes = classes;
        for c in &mut classes {
            c.sort_unstable();
        }
        Ok(Self { class_of, classes })
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn largest(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// Graph with two pairs of partitions (`y` and `z`, each on vertices and edges).
///
/// Arrays over this presentation have rows inside a `y` class and columns
/// inside a `z` class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedPresentation {
    base: Graph,
    y_vertex: Partition,
    y_edge: Partition,
    z_vertex: Partition,
    z_edge: Partition,
}

/// Class lists by id; `None` means singletons.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLists {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_vertex_classes: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_edge_classes: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_vertex_classes: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_edge_classes: Option<Vec<Vec<String>>>,
}

impl FiberedPresentation {
    /// All classes singletons: the shift of finite type of `base` itself.
    pub fn singleton(base: Graph) -> Self {
        let (v, e) = (base.vertex_count(), base.edge_count());
        Self {
            y_vertex: Partition::singletons(v),
            y_edge: Partition::singletons(e),
            z_vertex: Partition::singletons(v),
            z_edge: Partition::singletons(e),
            base,
        }
    }

    pub fn from_partitions(
        base: Graph,
        y_vertex: Partition,
        y_edge: Partition,
        z_vertex: Partition,
        z_edge: Partition,
    ) -> Self {
        Self {
            base,
            y_vertex,
            y_edge,
            z_vertex,
            z_edge,
        }
    }

    pub fn from_class_lists(base: Graph, lists: &ClassLists) -> Result<Self, GraphError> {
        let vertex_part = |classes: &Option<Vec<Vec<String>>>| -> Result<Partition, GraphError> {
            match classes {
                None => Ok(Partition::singletons(base.vertex_count())),
                Some(cs) => {
                    let idx = resolve(cs, |id| base.vertex_index(id))?;
                    Partition::from_classes(base.vertex_count(), idx, |i| {
                        base.vertex_ids()[i].clone()
                    })
                }
            }
        };
        let edge_part = |classes: &Option<Vec<Vec<String>>>| -> Result<Partition, GraphError> {
            match classes {
                None => Ok(Partition::singletons(base.edge_count())),
                Some(cs) => {
                    let idx = resolve(cs, |id| base.edge_index(id))?;
                    Partition::from_classes(base.edge_count(), idx, |i| base.edge_ids()[i].clone())
                }
            }
        };
        let y_vertex = vertex_part(&lists.y_vertex_classes)?;
        let y_edge = edge_part(&lists.y_edge_classes)?;
        let z_vertex = vertex_part(&lists.z_vertex_classes)?;
        let z_edge = edge_part(&lists.z_edge_classes)?;
        Ok(Self::from_partitions(
            base, y_vertex, y_edge, z_vertex, z_edge,
        ))
    }

    /// Class lists by id, `None` for discrete partitions.
    pub fn class_lists(&self) -> ClassLists {
        let names = |p: &Partition, ids: &[String]| {
            if p.is_discrete() {
                None
            } else {
                Some(
                    p.classes()
                        .iter()
                        .map(|c| c.iter().map(|&i| ids[i].clone()).collect())
                        .collect(),
                )
            }
        };
        let (v, e) = (self.base.vertex_ids(), self.base.edge_ids());
        ClassLists {
            y_vertex_classes: names(&self.y_vertex, v),
            y_edge_classes: names(&self.y_edge, e),
            z_vertex_classes: names(&self.z_vertex, v),
            z_edge_classes: names(&self.z_edge, e),
        }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn y_vertex(&self) -> &Partition {
        &self.y_vertex
    }

    pub fn y_edge(&self) -> &Partition {
        &self.y_edge
    }

    pub fn z_vertex(&self) -> &Partition {
        &self.z_vertex
    }

    pub fn z_edge(&self) -> &Partition {
        &self.z_edge
    }

    pub fn is_sft(&self) -> bool {
        self.y_vertex.is_discrete()
            && self.y_edge.is_discrete()
            && self.z_vertex.is_discrete()
            && self.z_edge.is_discrete()
    }

    /// `(L_max, M_max)`: arrays with distinct rows need `L + 1` distinct
    /// members of one `z` class, distinct columns need `M + 1` members of one
    /// `y` class.
    pub fn bounds(&self) -> (usize, usize) {
        let l = self.z_vertex.largest().max(1) - 1;
        let m = self.y_vertex.largest().max(1) - 1;
        (l, m)
    }

    /// Unique edge of `z` class `class` starting at `v`, if exactly one exists.
    pub fn z_lift_from(&self, class: usize, v: usize) -> Option<usize> {
        unique(
            self.z_edge
                .class(class)
                .iter()
                .copied()
                .filter(|&e| self.base.source(e) == v),
        )
    }

    /// Unique edge of `y` class `class` ending at `v`, if exactly one exists.
    pub fn y_lift_to(&self, class: usize, v: usize) -> Option<usize> {
        unique(
            self.y_edge
                .class(class)
                .iter()
                .copied()
                .filter(|&e| self.base.target(e) == v),
        )
    }

    /// Checks every combinatorial condition and lists all violations.
    pub fn validate(&self) -> ViolationReport {
        let mut out = Vec::new();
        self.check_incidence(&mut out);
        if out.is_empty() {
            self.check_meets(&mut out);
            self.check_covering(&mut out);
            if out.is_empty() {
                self.check_lift_consistency(&mut out);
            }
            self.check_rectangles(&mut out);
        }
        ViolationReport { violations: out }
    }

    fn check_incidence(&self, out: &mut Vec<Violation>) {
        let g = &self.base;
        for (name, ve, ee) in [
            ("y", &self.y_vertex, &self.y_edge),
            ("z", &self.z_vertex, &self.z_edge),
        ] {
            for class in ee.classes() {
                let e0 = class[0];
                for &e in &class[1..] {
                    if !ve.same(g.source(e), g.source(e0)) || !ve.same(g.target(e), g.target(e0)) {
                        out.push(Violation::new(
                            ViolationKind::Incidence,
                            format!(
                                "edges {:?} and {:?} share a {name} class but their endpoints do not",
                                g.edge_ids()[e0],
                                g.edge_ids()[e]
                            ),
                        ));
                    }
                }
            }
        }
    }

    fn check_meets(&self, out: &mut Vec<Violation>) {
        let g = &self.base;
        for (kind, y, z, ids) in [
            ("vertex", &self.y_vertex, &self.z_vertex, g.vertex_ids()),
            ("edge", &self.y_edge, &self.z_edge, g.edge_ids()),
        ] {
            let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
            for i in 0..ids.len() {
                if let Some(&j) = seen.get(&(y.class_of(i), z.class_of(i))) {
                    out.push(Violation::new(
                        ViolationKind::ClassMeet,
                        format!(
                            "{kind}s {:?} and {:?} share both a y class and a z class",
                            ids[j], ids[i]
                        ),
                    ));
                } else {
                    seen.insert((y.class_of(i), z.class_of(i)), i);
                }
            }
        }
    }

    fn check_covering(&self, out: &mut Vec<Violation>) {
        let g = &self.base;
        for v in 0..g.vertex_count() {
            for (c, class) in self.z_edge.classes().iter().enumerate() {
                if self.z_vertex.same(g.source(class[0]), v) && self.z_lift_from(c, v).is_none() {
                    out.push(Violation::new(
                        ViolationKind::ZCovering,
                        format!(
                            "vertex {:?} does not start exactly one edge of the z class of {:?}",
                            g.vertex_ids()[v],
                            g.edge_ids()[class[0]]
                        ),
                    ));
                }
            }
            for (c, class) in self.y_edge.classes().iter().enumerate() {
                if self.y_vertex.same(g.target(class[0]), v) && self.y_lift_to(c, v).is_none() {
                    out.push(Violation::new(
                        ViolationKind::YCovering,
                        format!(
                            "vertex {:?} does not end exactly one edge of the y class of {:?}",
                            g.vertex_ids()[v],
                            g.edge_ids()[class[0]]
                        ),
                    ));
                }
            }
        }
    }

    /// Lifting `y`-related edges along `z` classes from `y`-related vertices
    /// stays `y`-related, and the mirror statement.
    fn check_lift_consistency(&self, out: &mut Vec<Violation>) {
        let g = &self.base;
        let (ne, nv) = (g.edge_count(), g.vertex_count());
        for e in 0..ne {
            for f in 0..ne {
                for v in 0..nv {
                    for w in 0..nv {
                        if self.y_edge.same(e, f)
                            && self.y_vertex.same(v, w)
                            && self.z_vertex.same(v, g.source(e))
                            && self.z_vertex.same(w, g.source(f))
                        {
                            let a = self.z_lift_from(self.z_edge.class_of(e), v);
                            let b = self.z_lift_from(self.z_edge.class_of(f), w);
                            if let (Some(a), Some(b)) = (a, b) {
                                if !self.y_edge.same(a, b) {
                                    out.push(lift_violation(g, ViolationKind::RowLift, a, b));
                                }
                            }
                        }
                        if self.z_edge.same(e, f)
                            && self.z_vertex.same(v, w)
                            && self.y_vertex.same(v, g.target(e))
                            && self.y_vertex.same(w, g.target(f))
                        {
                            let a = self.y_lift_to(self.y_edge.class_of(e), v);
                            let b = self.y_lift_to(self.y_edge.class_of(f), w);
                            if let (Some(a), Some(b)) = (a, b) {
                                if !self.z_edge.same(a, b) {
                                    out.push(lift_violation(g, ViolationKind::ColumnLift, a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.dedup();
    }

    /// `a ~z b ~y c` implies some `x` with `a ~y x ~z c`.
    fn check_rectangles(&self, out: &mut Vec<Violation>) {
        let g = &self.base;
        for (kind, y, z, ids) in [
            ("vertex", &self.y_vertex, &self.z_vertex, g.vertex_ids()),
            ("edge", &self.y_edge, &self.z_edge, g.edge_ids()),
        ] {
            let n = ids.len();
            for a in 0..n {
                for &b in z.class(z.class_of(a)) {
                    for &c in y.class(y.class_of(b)) {
                        let found = y.class(y.class_of(a)).iter().any(|&x| z.same(x, c));
                        if !found {
                            out.push(Violation::new(
                                ViolationKind::Rectangle,
                                format!(
                                    "{kind}s {:?} ~z {:?} ~y {:?} admit no completing {kind}",
                                    ids[a], ids[b], ids[c]
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
}

fn lift_violation(g: &Graph, kind: ViolationKind, a: usize, b: usize) -> Violation {
    let rel = if kind == ViolationKind::RowLift {
        "y"
    } else {
        "z"
    };
    Violation::new(
        kind,
        format!(
            "lifted edges {:?} and {:?} should share a {rel} class",
            g.edge_ids()[a],
            g.edge_ids()[b]
        ),
    )
}

fn resolve(
    classes: &[Vec<String>],
    index: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<Vec<usize>>, GraphError> {
    classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|id| index(id).ok_or_else(|| GraphError::UnknownId(id.clone())))
                .collect()
        })
        .collect()
}

fn unique(mut it: impl Iterator<Item = usize>) -> Option<usize> {
    let first = it.next()?;
    if it.next().is_some() {
        None
    } else {
        Some(first)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Related edges with unrelated endpoints.
    Incidence,
    /// A `y` class and a `z` class meeting twice.
    ClassMeet,
    /// `z` edge classes not out-bijective over vertices.
    ZCovering,
    /// `y` edge classes not in-bijective over vertices.
    YCovering,
    RowLift,
    ColumnLift,
    Rectangle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl Violation {
    fn new(kind: ViolationKind, message: String) -> Self {
        Self { kind, message }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}",
            serde_json::to_value(self.kind)
                .expect("enum")
                .as_str()
                .unwrap_or(""),
            self.message
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_presentation(p: &FiberedPresentation) -> ViolationReport {
    p.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists(yv: &[&[&str]], ye: &[&[&str]], zv: &[&[&str]], ze: &[&[&str]]) -> ClassLists {
        let conv = |c: &[&[&str]]| {
            if c.is_empty() {
                None
            } else {
                Some(
                    c.iter()
                        .map(|x| x.iter().map(|s| s.to_string()).collect())
                        .collect(),
                )
            }
        };
        ClassLists {
            y_vertex_classes: conv(yv),
            y_edge_classes: conv(ye),
            z_vertex_classes: conv(zv),
            z_edge_classes: conv(ze),
        }
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
        FiberedPresentation::from_class_lists(
            g,
            &lists(
                &[&["h0", "h1"]],
                &[&["a00", "a11"], &["b01", "b10"]],
                &[],
                &[],
            ),
        )
        .unwrap()
    }

    #[test]
    fn singletons_are_valid() {
        let g = Graph::from_strs(
            &["a", "b"],
            &[("aa", "a", "a"), ("ab", "a", "b"), ("ba", "b", "a")],
        )
        .unwrap();
        assert!(FiberedPresentation::singleton(g).validate().is_valid());
        assert!(FiberedPresentation::singleton(Graph::bouquet(3))
            .validate()
            .is_valid());
    }

    #[test]
    fn double_cover_is_valid() {
        let p = double_cover();
        assert!(p.validate().is_valid(), "{:?}", p.validate());
        assert_eq!(p.bounds(), (0, 1));
    }

    #[test]
    fn class_crossing_vertex_classes_rejected() {
        let g = Graph::from_strs(&["a", "b"], &[("aa", "a", "a"), ("bb", "b", "b")]).unwrap();
        let p = FiberedPresentation::from_class_lists(g, &lists(&[], &[&["aa", "bb"]], &[], &[]))
            .unwrap();
        let r = p.validate();
        assert!(r
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::Incidence));
    }

    #[test]
    fn merged_loops_over_one_vertex_rejected() {
        let p = FiberedPresentation::from_class_lists(
            Graph::bouquet(2),
            &lists(&[], &[], &[], &[&["e1", "e2"]]),
        )
        .unwrap();
        let r = p.validate();
        assert!(r
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::ZCovering));
    }

    #[test]
    fn partition_errors() {
        let g = Graph::bouquet(2);
        let err =
            FiberedPresentation::from_class_lists(g.clone(), &lists(&[], &[&["e1"]], &[], &[]))
                .unwrap_err();
        assert_eq!(err, GraphError::MissingFromPartition("e2".into()));
        let err = FiberedPresentation::from_class_lists(
            g.clone(),
            &lists(&[], &[&["e1", "e2"], &["e1"]], &[], &[]),
        )
        .unwrap_err();
        assert_eq!(err, GraphError::RepeatedInPartition("e1".into()));
        let err = FiberedPresentation::from_class_lists(g, &lists(&[], &[&["e1", "x"]], &[], &[]))
            .unwrap_err();
        assert_eq!(err, GraphError::UnknownId("x".into()));
    }

    #[test]
    fn class_lists_round_trip() {
        let p = double_cover();
        let q = FiberedPresentation::from_class_lists(p.base().clone(), &p.class_lists()).unwrap();
        assert_eq!(p, q);
    }
}
