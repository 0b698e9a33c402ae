//! Numerical tolerances shared across modules.

/// ‖A − A†‖ bound for Hermitian inputs and eigen-reconstruction.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Allowed |Tr ρ − 1| for density matrices.
pub const TRACE_TOL: f64 = 1e-8;
/// Eigenvalues in [−NEGATIVITY_CLAMP, 0) are treated as zero.
pub const NEGATIVITY_CLAMP: f64 = 1e-10;
/// Kraus completeness Σ E†E = I.
pub const COMPLETENESS_TOL: f64 = 1e-9;
/// Normalisation of unit vectors and amplitude vectors supplied by callers.
pub const UNIT_TOL: f64 = 1e-10;
/// Choi eigenvalues at or below this are dropped during compression.
pub const CHOI_DROP: f64 = 1e-12;
