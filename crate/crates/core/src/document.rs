//! JSON documents: input presentations and machine-readable reports.
//!
//! Integers that may exceed 64 bits travel as decimal strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{HomologyReport, Provenance};
use crate::error::GraphError;
use crate::linalg::MatrixRecord;
use crate::stationary::{StationaryInvariants, StationarySystem};
use crate::symbolic::{ClassLists, FiberedPresentation, Graph};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

/// Which spectral sequence applies to the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Totally disconnected stable sets.
    StableDisconnected,
    /// Totally disconnected unstable sets.
    UnstableDisconnected,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::StableDisconnected => "stable-disconnected",
            Mode::UnstableDisconnected => "unstable-disconnected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub graph: GraphDoc,
    #[serde(flatten)]
    pub classes: ClassLists,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn graph(&self) -> Result<Graph, GraphError> {
        Graph::new(
            self.graph.vertices.iter().cloned(),
            self.graph
                .edges
                .iter()
                .map(|e| (e.id.clone(), e.src.clone(), e.dst.clone())),
        )
    }

    pub fn presentation(&self) -> Result<FiberedPresentation, GraphError> {
        FiberedPresentation::from_class_lists(self.graph()?, &self.classes)
    }

    pub fn from_presentation(p: &FiberedPresentation, mode: Option<Mode>) -> Self {
        let g = p.base();
        let edges = (0..g.edge_count())
            .map(|e| EdgeDoc {
                id: g.edge_ids()[e].clone(),
                src: g.vertex_ids()[g.source(e)].clone(),
                dst: g.vertex_ids()[g.target(e)].clone(),
            })
            .collect();
        Self {
            graph: GraphDoc {
                vertices: g.vertex_ids().to_vec(),
                edges,
            },
            classes: p.class_lists(),
            mode,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// SHA-256 of the canonical JSON form of a presentation.
pub fn presentation_digest(p: &FiberedPresentation) -> String {
    let doc = InputDocument::from_presentation(p, None);
    sha256_hex(
        serde_json::to_string(&doc)
            .expect("serializable")
            .as_bytes(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormDoc {
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsDoc {
    pub rank: usize,
    pub invariant_factors: Vec<String>,
    pub endo_det_abs: String,
    pub bowen_franks: NormalFormDoc,
}

impl From<&StationaryInvariants> for InvariantsDoc {
    fn from(i: &StationaryInvariants) -> Self {
        Self {
            rank: i.rank,
            invariant_factors: i
                .invariant_factors
                .iter()
                .map(ToString::to_string)
                .collect(),
            endo_det_abs: i.endo_det_abs.to_string(),
            bowen_franks: NormalFormDoc {
                free_rank: i.bowen_franks.free_rank,
                invariant_factors: i
                    .bowen_franks
                    .invariant_factors
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub stage_generators: usize,
    pub stage_relations: MatrixRecord,
    pub endo: MatrixRecord,
}

impl From<&StationarySystem> for SystemDoc {
    fn from(s: &StationarySystem) -> Self {
        Self {
            stage_generators: s.stage().generators(),
            stage_relations: s.stage().relations().into(),
            endo: s.endo().matrix().into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDoc {
    pub degree: i64,
    /// `None` only in hand-written documents; the engine always fills it.
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReportDoc {
    pub schema_version: u32,
    pub degrees: Vec<DegreeDoc>,
    pub provenance: Provenance,
}

impl From<&HomologyReport> for HomologyReportDoc {
    fn from(r: &HomologyReport) -> Self {
        let degrees = r
            .degrees
            .iter()
            .map(|(&k, d)| DegreeDoc {
                degree: k,
                rank: Some(d.invariants.rank),
                group: Some(limit_group_label(&d.invariants)),
                invariants: Some((&d.invariants).into()),
                system: Some((&d.system).into()),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            degrees,
            provenance: r.provenance.clone(),
        }
    }
}

impl HomologyReportDoc {
    /// Per-degree ranks as stated in the document.
    pub fn ranks(&self) -> BTreeMap<i64, Option<usize>> {
        self.degrees.iter().map(|d| (d.degree, d.rank)).collect()
    }
}

/// Short description of a limit group: `Z^r` when the endomorphism is an
/// automorphism of the free part, otherwise `rank r (|det| d)`.
pub fn limit_group_label(i: &StationaryInvariants) -> String {
    if i.is_trivial() {
        return "0".into();
    }
    let mut parts = Vec::new();
    match (i.rank, i.endo_det_abs == 1u32.into()) {
        (0, _) => {}
        (1, true) => parts.push("Z".to_string()),
        (r, true) => parts.push(format!("Z^{r}")),
        (r, false) => parts.push(format!("rank {r} (|det| {})", i.endo_det_abs)),
    }
    parts.extend(i.invariant_factors.iter().map(|d| format!("Z/{d}")));
    parts.join(" ⊕ ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = r#"{
        "graph": {
            "vertices": ["a", "b"],
            "edges": [
                {"id": "aa", "src": "a", "dst": "a"},
                {"id": "ab", "src": "a", "dst": "b"},
                {"id": "ba", "src": "b", "dst": "a"}
            ]
        }
    }"#;

    #[test]
    fn parses_sft_input() {
        let doc = InputDocument::from_json(GOLDEN).unwrap();
        let p = doc.presentation().unwrap();
        assert!(p.is_sft());
        assert_eq!(InputDocument::from_presentation(&p, None), doc);
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = GOLDEN.replacen("\"graph\"", "\"grahp\"", 1);
        assert!(InputDocument::from_json(&text).is_err());
    }

    #[test]
    fn digest_is_stable() {
        let p = InputDocument::from_json(GOLDEN)
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(presentation_digest(&p), presentation_digest(&p.clone()));
        assert_eq!(presentation_digest(&p).len(), 64);
    }

    #[test]
    fn report_round_trip() {
        let p = InputDocument::from_json(GOLDEN)
            .unwrap()
            .presentation()
            .unwrap();
        let report = crate::complex::homology(&p).unwrap();
        let doc = HomologyReportDoc::from(&report);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: HomologyReportDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(doc.degrees[0].group.as_deref(), Some("Z^2"));
    }

    #[test]
    fn group_labels() {
        let sys = |rows: &[Vec<i64>]| {
            StationarySystem::from_matrix(crate::linalg::IntMatrix::from_rows(rows))
                .unwrap()
                .invariants()
        };
        assert_eq!(limit_group_label(&sys(&[vec![2]])), "rank 1 (|det| 2)");
        assert_eq!(limit_group_label(&sys(&[vec![1]])), "Z");
        assert_eq!(limit_group_label(&sys(&[vec![0]])), "0");
        let z2 = StationarySystem::constant(crate::fgab::FgAbGroup::cyclic(2));
        assert_eq!(limit_group_label(&z2.invariants()), "Z/2");
    }
}
