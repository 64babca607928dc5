//! The generic stabilizer of HSpin16 on its half-spin module in characteristic 2,
//! realised inside E8 through eight orthogonal half-spin roots read off a
//! Hadamard matrix.

mod certificate;
mod gamma;
mod model;

pub use certificate::{
    e8_certificate, named_weyl_elements, same_span, CertificateOptions, E8Certificate, PartResult,
    SampleRecord, E8_CERTIFICATE_SCHEMA,
};
pub use gamma::{
    bourbaki_e8_simple_roots, build_gamma_system, mu2_part, sylvester, Check, GammaSystem,
    PRINTED_M,
};
pub use model::{
    gamma_preserving_weyl, named_involutions, E8Model, ModuleMap, MonomialElement, RCircElement,
};
