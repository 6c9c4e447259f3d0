use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{characteristic_polynomial, count_outside_unit_circle, CircleCount, Poly};
use crate::complex::{DegreeHomology, HomologyReport, Provenance};
use crate::document::sha256_hex;
use crate::error::AnalysisError;
use crate::fgab::FgAbGroup;
use crate::linalg::IntMatrix;
use crate::stationary::StationarySystem;

/// Eigenvalue data of a hyperbolic unimodular integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperbolic {
    pub dimension: usize,
    /// Eigenvalues of modulus greater than one, with multiplicity.
    pub unstable: usize,
    /// Same count for the inverse matrix.
    pub unstable_inverse: usize,
    pub characteristic_polynomial: Vec<BigInt>,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Counts expanding eigenvalues of `a` and of `a⁻¹` exactly, rejecting
/// matrices that are not hyperbolic automorphisms of `Z^m`.
pub fn classify(a: &IntMatrix) -> Result<Hyperbolic, AnalysisError> {
    if !a.is_square() {
        return Err(AnalysisError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let det = a.determinant().expect("square");
    if !det.abs().is_one() {
        return Err(AnalysisError::NotUnimodular {
            det: det.abs().to_string(),
        });
    }
    let m = a.rows();
    if m == 0 {
        return Err(AnalysisError::NotHyperbolic("empty matrix".into()));
    }
    let (coeffs, adj) = characteristic_polynomial(a);
    let count = |c: &[BigInt]| match count_outside_unit_circle(&Poly::from_ints(c)) {
        CircleCount::Outside(n) => Ok(n),
        CircleCount::OnCircle => Err(AnalysisError::NotHyperbolic(
            "characteristic polynomial has a root on the unit circle".into(),
        )),
    };
    let unstable = count(&coeffs)?;
    // a · M_m = −c₀ · I, and c₀ = ±1.
    let inverse = adj.scale(&(-&coeffs[0]));
    debug_assert_eq!(a.mul(&inverse), IntMatrix::identity(m));
    let (inv_coeffs, _) = characteristic_polynomial(&inverse);
    let unstable_inverse = count(&inv_coeffs)?;
    Ok(Hyperbolic {
        dimension: m,
        unstable,
        unstable_inverse,
        characteristic_polynomial: coeffs,
    })
}

/// Ranks `C(m, n − k)` for `k ∈ [n − m, n]`, keyed by degree.
pub fn toral_ranks(h: &Hyperbolic) -> BTreeMap<i64, u128> {
    let (m, n) = (h.dimension as i64, h.unstable as i64);
    (n - m..=n)
        .map(|k| (k, binomial(h.dimension, (n - k) as usize)))
        .collect()
}

/// Homology of the hyperbolic toral automorphism `a`: free of rank
/// `C(m, n − k)` in degree `k`, where `n` counts expanding eigenvalues.
pub fn toral_homology(a: &IntMatrix) -> Result<HomologyReport, AnalysisError> {
    let h = classify(a)?;
    let ranks = toral_ranks(&h);
    let mut guardrails = Vec::new();
    let total: u128 = ranks.values().sum();
    if total != 1u128 << h.dimension {
        return Err(AnalysisError::NotHyperbolic(
            "ranks do not sum to 2^m".into(),
        ));
    }
    guardrails.push(format!("ranks sum to 2^{}", h.dimension));
    if h.unstable + h.unstable_inverse != h.dimension {
        return Err(AnalysisError::NotHyperbolic(
            "expanding counts of the matrix and its inverse do not sum to its size".into(),
        ));
    }
    guardrails.push("expanding counts of the matrix and its inverse sum to its size".into());
    let degrees = ranks
        .iter()
        .map(|(&k, &r)| {
            let group = FgAbGroup::free(r as usize);
            (k, DegreeHomology::new(StationarySystem::constant(group)))
        })
        .collect();
    let entries: Vec<String> = a.to_string_entries();
    let digest = sha256_hex(format!("{}x{}:{}", a.rows(), a.cols(), entries.join(",")).as_bytes());
    Ok(HomologyReport {
        degrees,
        provenance: Provenance {
            source: "toral".into(),
            digest,
            bounds: None,
            guardrails,
        },
    })
}

/// Parses `"2,1;1,1"` (rows separated by `;`).
pub fn parse_matrix(text: &str) -> Result<IntMatrix, crate::error::LinalgError> {
    let rows: Vec<Vec<BigInt>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<BigInt>()
                        .map_err(|_| crate::error::LinalgError::Parse(x.trim().to_string()))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    let n = rows.len();
    let entries: Vec<BigInt> = rows.into_iter().flatten().collect();
    if entries.len() != n * cols {
        return Err(crate::error::LinalgError::Shape {
            rows: n,
            cols,
            len: entries.len(),
        });
    }
    IntMatrix::new(n, cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_map_ranks() {
        let r = toral_homology(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])).unwrap();
        let ranks: Vec<(i64, usize)> = r
            .degrees
            .iter()
            .map(|(&k, d)| (k, d.invariants.rank))
            .collect();
        assert_eq!(ranks, vec![(-1, 1), (0, 2), (1, 1)]);
    }

    #[test]
    fn shear_is_not_hyperbolic() {
        let err = toral_homology(&IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).unwrap_err();
        assert!(matches!(err, AnalysisError::NotHyperbolic(_)));
    }

    #[test]
    fn cubic_companion() {
        // x³ − x − 1
        let a = IntMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]);
        let h = classify(&a).unwrap();
        assert_eq!(
            h.characteristic_polynomial,
            [-1, -1, 0, 1].map(BigInt::from).to_vec()
        );
        assert_eq!(h.unstable, 1);
        let ranks: Vec<(i64, u128)> = toral_ranks(&h).into_iter().collect();
        assert_eq!(ranks, vec![(-2, 1), (-1, 3), (0, 3), (1, 1)]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            toral_homology(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])),
            Err(AnalysisError::NotUnimodular { .. })
        ));
        assert!(matches!(
            toral_homology(&IntMatrix::zeros(2, 3)),
            Err(AnalysisError::NotSquare { .. })
        ));
        // rotation by a quarter turn
        assert!(matches!(
            toral_homology(&IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]])),
            Err(AnalysisError::NotHyperbolic(_))
        ));
    }

    #[test]
    fn parses_matrices() {
        assert_eq!(
            parse_matrix("2,1;1,1").unwrap(),
            IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])
        );
        assert!(parse_matrix("1,2;3").is_err());
        assert!(parse_matrix("1,x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!((0..=5).map(|k| binomial(5, k)).sum::<u128>(), 32);
    }
}
