//! Human-readable tables.

use std::collections::BTreeMap;
use std::fmt::Write;

use smale_core::document::limit_group_label;
use smale_core::symbolic::ViolationReport;
use smale_core::{
    Collapse, FiberedPresentation, HomologyReport, SpectralRankReport, StationaryInvariants,
};

pub fn nontrivial(h: &HomologyReport) -> BTreeMap<i64, StationaryInvariants> {
    h.invariant_table()
        .into_iter()
        .filter(|(_, i)| !i.is_trivial())
        .collect()
}

pub fn validation(p: &FiberedPresentation, report: &ViolationReport) -> String {
    let mut out = String::new();
    if report.is_valid() {
        let (l, m) = p.bounds();
        writeln!(out, "valid; cells up to (L, M) = ({l}, {m})").unwrap();
    } else {
        writeln!(out, "invalid: {} violation(s)", report.violations.len()).unwrap();
        for v in &report.violations {
            writeln!(out, "  {v}").unwrap();
        }
    }
    out
}

pub fn dimension_group(i: &StationaryInvariants) -> String {
    let mut out = String::new();
    writeln!(out, "D^s = {}", limit_group_label(i)).unwrap();
    writeln!(out, "  {i}").unwrap();
    out
}

pub fn homology(h: &HomologyReport) -> String {
    let mut out = String::new();
    for (k, d) in &h.degrees {
        let i = &d.invariants;
        writeln!(
            out,
            "k={k}: {}    (|det| {}, Bowen-Franks {})",
            limit_group_label(i),
            i.endo_det_abs,
            i.bowen_franks
        )
        .unwrap();
    }
    if h.degrees.is_empty() {
        writeln!(out, "all degrees 0").unwrap();
    }
    writeln!(out, "source: {}", h.provenance.source).unwrap();
    if !h.provenance.digest.is_empty() {
        writeln!(out, "digest: {}", h.provenance.digest).unwrap();
    }
    for g in &h.provenance.guardrails {
        writeln!(out, "checked: {g}").unwrap();
    }
    out
}

pub fn k_ranks(r: &SpectralRankReport) -> String {
    let mut out = String::new();
    let certified = r.collapse == Collapse::Certified;
    writeln!(out, "mode: {}", r.mode.as_str()).unwrap();
    writeln!(
        out,
        "collapse: {}",
        if certified {
            "certified"
        } else {
            "bounds only"
        }
    )
    .unwrap();
    for e in r.e2_ranks.iter().filter(|e| e.rank > 0) {
        writeln!(out, "E2 p={} q even: rank {}", e.p, e.rank).unwrap();
    }
    let rel = if certified { "=" } else { "<=" };
    writeln!(out, "rank K0 {rel} {}", r.k0_rank).unwrap();
    writeln!(out, "rank K1 {rel} {}", r.k1_rank).unwrap();
    out
}
