//! Certified checks of the curvature inequalities on concrete curves.

pub mod certificate;
pub mod exponent;
pub mod lemmas;
pub mod request;
pub mod shells;

pub use certificate::{certificates_csv, curve_digest, BoundCertificate};
pub use exponent::{estimate_shell_exponent, normalize_thickness, ShellExponent};
pub use lemmas::{
    assembled_constant, check_illumination, check_main_theorem, check_monotone_illumination,
    check_oscillation, check_packing, check_shell_suite, main_theorem_certificates,
    main_theorem_inputs, MainTheoremInputs,
};
pub use request::{VerifyRequest, Which};
pub use shells::{
    check_constraints, construct_extremal_string, count_jumps, shell_labels, shell_profile,
    string_energy, ExtremalString, LabelString, ShellProfile,
};
