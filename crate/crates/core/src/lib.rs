//! Exact computation with Wall forms over finitely generated abelian groups.

pub mod complex;
pub mod error;
pub mod group;
pub mod hpair;
pub mod io;
pub mod lemmas;
pub mod linalg;
pub mod rank;
pub mod wall;

pub use num_bigint::BigInt;
pub use complex::{
    build_complex, connectivity_report, enumerate_vertices, form_complex, lcm_report, CliqueComplex, ConnectivityReport,
    FormComplex, HomologyReport, LcmEntry, LcmReport,
};
pub use error::{Axiom, AxiomViolation, Error, Preserved, Result};
pub use group::{FgAbGroup, GroupHom, Presentation, Subquotient};
pub use hpair::{HMap, HPair, HPairSum, ProbeHoms, SubHPair};
pub use lemmas::{
    cancel_standard, complement_standardize, envelope_morphism, focus_automorphism, kernel_rank_witness,
    random_automorphism, slice_rank_witness, standard_inclusion, transitivity_witness, IsotropicSplit, Side,
};
pub use linalg::IntMatrix;
pub use rank::{rank_certificate, stable_rank_certificate, RankCertificate, SearchBudget, StableRankCertificate};
pub use wall::{
    join, perp_sum, Duality, DualityReport, FormParameter, NonsingularityCertificate, PerpSum, StandardLayout,
    SubWallForm, WallForm, WallMorphism,
};
