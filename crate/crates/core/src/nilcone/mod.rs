//! Experiments on the nilpotent cone and the module of highest weight
//! vectors: evaluation certificates, graded bases, generation tests.

pub mod counting;
pub mod generation;
pub mod gl3;
pub mod jacobian;
pub mod question;
pub mod scan;
pub mod seq;
pub mod space;

pub use generation::{basis_check, default_degree_cap, generation_check, BasisCheckReport, DegreeLayer, GenerationReport, Verdict};
pub use gl3::{gl3_suite, Gl3Report};
pub use jacobian::{jacobian_minor_certificate, JacobianCertificate};
pub use question::{question_experiment, QuestionReport};
pub use scan::{power_weight_dimension_scan, ScanMethod, ScanReport};
pub use seq::{delta_evaluation_matrix, nilpotent_from_sequence, sigma_choice, DeltaCertificate, NilpotentSeq};
pub use space::{hwv_layer, hwv_space, HwvLayer, WeightStratum};
