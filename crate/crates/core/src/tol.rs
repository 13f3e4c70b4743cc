//! Global tolerance constants.
//!
//! Two tiers: input validation is relative at 1e-10, equality assertions on
//! derived quantities are absolute at 1e-9. Everything at these dimensions
//! (matrices up to 16x16, double precision) leaves several digits of headroom.

/// Relative tolerance for input validation (Hermiticity, unit norm, unit trace).
pub const VALIDATION: f64 = 1e-10;

/// Absolute tolerance for equality assertions on derived quantities.
pub const EQUALITY: f64 = 1e-9;

/// Variances below this are treated as degenerate (zero) when rescaling.
pub const DEGENERATE_VARIANCE: f64 = 1e-12;

/// Commutator expectations below this are ties when choosing a sign pattern.
pub const SIGN_TIE: f64 = 1e-12;

/// Margin required beyond a threshold before declaring a state entangled.
/// A verdict is never issued on round-off alone.
pub const ENTANGLED_MARGIN: f64 = 1e-9;

/// Maximum allowed deviation of H_j^2 from the identity for the
/// expectation-threshold witness.
pub const INVOLUTION: f64 = 1e-9;

/// Scale factor for the R^2 expansion identity residual.
pub const EXPANSION_IDENTITY: f64 = 1e-10;

/// Agreement required between the multi-start floor estimate and the
/// Bloch-grid oracle on qubit instances.
pub const GRID_AGREEMENT: f64 = 1e-6;
