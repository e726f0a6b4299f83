//! Nonnegativity and set-inclusion oracles.

pub mod convexity;
pub mod inclusion;
pub mod interval;
pub mod nonneg;
pub mod ray;
pub mod roots;
mod verdict;

pub use convexity::{joint_range_convexity_probe, ConvexityProbe, ProbeError};
pub use inclusion::{inclusion_check, violates, SamplingConfig};
pub use nonneg::{binary_form_nonneg, exact_nonneg, univariate_nonneg};
pub use ray::{ray_asymptotic_sign, RaySign};
pub use roots::{isolate_real_roots, RealRoot, RootIsolation};
pub use verdict::{Verdict, VerdictKind, Witness};
