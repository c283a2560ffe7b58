//! Exact projective dual quaternion kinematics.
//!
//! Rigid body displacements are points of the projective space `P⁷` over the
//! dual quaternions. This crate provides the algebra, the projective geometry
//! of the Study quadric and null cone, the group of admissible coordinate
//! changes, constraint spaces of two-joint dyads, Darboux-type motions and the
//! quadrilateral reconstruction machinery, all over exact rationals or
//! Gaussian rationals with a complex floating point fallback.

pub mod algebra;
pub mod dyads;
pub mod error;
pub mod json;
pub mod motions;
pub mod poly;
pub mod projgeom;
pub mod quadreconstruct;
pub mod transforms;

pub use algebra::{
    dq_mul, dq_norm, left_mul_matrix, left_mul_matrix8, right_mul_matrix, right_mul_matrix8, study_condition,
    DualNumber, DualQuaternion, Matrix, Quaternion, Scalar, DEFAULT_TOLERANCE,
};
pub use dyads::{
    build_variety, classify, example2_checks, null_quadrilateral, recover_axes, Classification, ConstraintVariety,
    DyadKind, DyadSpec, Evidence, Quadrilateral, RecoveredAxes, Verdict,
};
pub use error::{Error, Result};
pub use motions::{
    act, c_space_from_line, chi, darboux, darboux_invariants, is_vertical_darboux, mannheim, trajectory,
    CSpaceReport, DarbouxReport, MotionLabel, MotionPoly, Trajectory,
};
pub use poly::Poly;
pub use projgeom::{
    common_lines, fiber_image, fiber_projectivity, null_cone, ruling_handedness, study_quadric, Handedness, Line,
    LineSet, ProjPoint, QuadricForm, QuadricLabel, Signature, Subspace,
};
pub use quadreconstruct::{
    reconstruct_quadrilateral, run_cycle, ProjectionCycle, Reconstruction, ReconstructionProblem,
};
pub use transforms::{
    build_transform, factor_transform, verify_admissible, AdmissibleTransform, VerificationReport,
};
