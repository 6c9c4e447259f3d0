//! Consumers of homology reports: products, toral duality ranks and
//! rational K-theory ranks.

mod kunneth;
pub mod poly;
mod spectral;
mod toral;

pub use kunneth::{kunneth, product_presentation};
pub use spectral::{
    k_rank_report, k_rank_report_from_ranks, Collapse, E2Entry, QParity, SpectralRankReport,
    CERTIFIED_WIDTH,
};
pub use toral::{binomial, classify, parse_matrix, toral_homology, toral_ranks, Hyperbolic};
