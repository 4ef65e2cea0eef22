//! Dense symmetric eigenanalysis, spectrum clustering and certificates.

mod certificate;
mod eigh;
mod matrix;
mod ortho;
mod spectrum;

pub use certificate::{verify_certificate, verify_certificate_with, Certificate, Tolerances, Verification};
pub use eigh::{eigh, Eigh};
pub use matrix::SymMatrix;
pub use ortho::{complement_basis, random_orthogonal, OrthMatrix, ORTHO_TOL};
pub use spectrum::{
    cluster_spectrum, eigen_report, min_multiplicity, Cluster, EigenReport, SpectrumItem, SpectrumSpec,
    CLUSTER_TOL,
};
