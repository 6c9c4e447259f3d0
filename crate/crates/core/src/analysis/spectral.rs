use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::HomologyReport;
use crate::document::Mode;
use crate::error::AnalysisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QParity {
    Even,
    Odd,
}

/// One `E²` entry: `rank H_p ⊗ K_q(C)` with `q` taken mod 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Entry {
    pub p: i64,
    pub q_parity: QParity,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Collapse {
    /// `k0_rank` and `k1_rank` are exact rational ranks.
    Certified,
    /// `k0_rank` and `k1_rank` are upper bounds.
    BoundsOnly,
}

/// Rational K-theory ranks read off the `E²` page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralRankReport {
    pub mode: Mode,
    pub e2_ranks: Vec<E2Entry>,
    pub collapse: Collapse,
    pub k0_rank: usize,
    pub k1_rank: usize,
}

/// Widest rank support for which collapse is forced by position alone.
/// Differentials `d_r` move `p` by `r`; even `r` changes the parity of `q`
/// and lands on a zero row, and odd `r ≥ 3` needs four consecutive degrees.
pub const CERTIFIED_WIDTH: i64 = 3;

pub fn k_rank_report(h: &HomologyReport, mode: Mode) -> SpectralRankReport {
    let ranks = h
        .degrees
        .iter()
        .map(|(&k, d)| (k, d.invariants.rank))
        .collect();
    report(&ranks, mode)
}

/// Same as [`k_rank_report`] for hand-written rank tables, where `None`
/// marks a degree whose rank is not finite.
pub fn k_rank_report_from_ranks(
    ranks: &BTreeMap<i64, Option<usize>>,
    mode: Mode,
) -> Result<SpectralRankReport, AnalysisError> {
    let finite = ranks
        .iter()
        .map(|(&k, r)| {
            r.map(|r| (k, r))
                .ok_or(AnalysisError::InfiniteRank { degree: k })
        })
        .collect::<Result<_, _>>()?;
    Ok(report(&finite, mode))
}

fn report(ranks: &BTreeMap<i64, usize>, mode: Mode) -> SpectralRankReport {
    let e2_ranks = ranks
        .iter()
        .flat_map(|(&p, &rank)| {
            [
                E2Entry {
                    p,
                    q_parity: QParity::Even,
                    rank,
                },
                E2Entry {
                    p,
                    q_parity: QParity::Odd,
                    rank: 0,
                },
            ]
        })
        .collect();
    // Support is rational: torsion-only degrees vanish after tensoring with Q.
    let support: Vec<i64> = ranks
        .iter()
        .filter(|(_, &r)| r > 0)
        .map(|(&k, _)| k)
        .collect();
    let collapse = match (support.first(), support.last()) {
        (Some(lo), Some(hi)) if hi - lo + 1 > CERTIFIED_WIDTH => Collapse::BoundsOnly,
        _ => Collapse::Certified,
    };
    let sum = |even: bool| {
        ranks
            .iter()
            .filter(|(&k, _)| (k.rem_euclid(2) == 0) == even)
            .map(|(_, &r)| r)
            .sum()
    };
    SpectralRankReport {
        mode,
        e2_ranks,
        collapse,
        k0_rank: sum(true),
        k1_rank: sum(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranks(pairs: &[(i64, usize)]) -> BTreeMap<i64, Option<usize>> {
        pairs.iter().map(|&(k, r)| (k, Some(r))).collect()
    }

    #[test]
    fn cat_map_pattern() {
        let r =
            k_rank_report_from_ranks(&ranks(&[(-1, 1), (0, 2), (1, 1)]), Mode::StableDisconnected)
                .unwrap();
        assert_eq!(r.collapse, Collapse::Certified);
        assert_eq!((r.k0_rank, r.k1_rank), (2, 2));
        assert!(r
            .e2_ranks
            .iter()
            .filter(|e| e.q_parity == QParity::Odd)
            .all(|e| e.rank == 0));
    }

    #[test]
    fn empty_is_certified_zero() {
        let r = k_rank_report_from_ranks(&BTreeMap::new(), Mode::UnstableDisconnected).unwrap();
        assert_eq!(
            (r.collapse, r.k0_rank, r.k1_rank),
            (Collapse::Certified, 0, 0)
        );
    }

    #[test]
    fn wide_support_gives_bounds() {
        let r =
            k_rank_report_from_ranks(&ranks(&[(-2, 1), (1, 1)]), Mode::StableDisconnected).unwrap();
        assert_eq!(r.collapse, Collapse::BoundsOnly);
        assert_eq!((r.k0_rank, r.k1_rank), (1, 1));
        let r = k_rank_report_from_ranks(
            &ranks(&[(-2, 0), (0, 1), (1, 0), (2, 1)]),
            Mode::StableDisconnected,
        )
        .unwrap();
        assert_eq!(r.collapse, Collapse::Certified);
    }

    #[test]
    fn infinite_rank_is_rejected() {
        let mut r = ranks(&[(0, 1)]);
        r.insert(3, None);
        assert!(matches!(
            k_rank_report_from_ranks(&r, Mode::StableDisconnected),
            Err(AnalysisError::InfiniteRank { degree: 3 })
        ));
    }
}
