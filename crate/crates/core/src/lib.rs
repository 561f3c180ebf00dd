//! Decentralized pursuit-evasion for large two-group multi-agent systems.
//!
//! Two populations of stochastic agents (pursuers and evaders) are coupled
//! through their empirical mean positions and through mean-field terms in
//! their running costs. Each agent runs an actor-critic-mass learner: five
//! linear-in-weights approximators tuned online from the residuals of the
//! coupled Hamilton-Jacobi-Isaacs and Fokker-Planck-Kolmogorov equations and
//! of the optimal-control relation, using normalized gradient updates.
//!
//! The crate provides
//! * feature bases with analytic spatial gradients and Laplacians ([`basis`]),
//! * the per-agent estimators and grid-normalized mass densities
//!   ([`estimators`]),
//! * the residuals and update laws ([`acm`]),
//! * agent dynamics and the Euler-Maruyama integrator ([`dynamics`]),
//! * mean-field coupling costs ([`meanfield`]),
//! * and a deterministic experiment engine with CSV/JSONL metric export
//!   ([`engine`]).
//!
//! All numeric kernels are generic over the scalar type through
//! [`scalar::Real`]; the engine and configuration layer run in `f64`.

pub mod acm;
pub mod basis;
pub mod config;
pub mod diagnostics;
pub mod dynamics;
pub mod engine;
pub mod error;
pub mod estimators;
pub mod linalg;
pub mod meanfield;
pub mod rng;
pub mod scalar;

use serde::{Deserialize, Serialize};

pub use error::{Result, SimError};
pub use scalar::Real;

/// The two competing populations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupId {
    Pursuer,
    Evader,
}

impl GroupId {
    pub const BOTH: [GroupId; 2] = [GroupId::Pursuer, GroupId::Evader];

    pub fn opponent(self) -> Self {
        match self {
            GroupId::Pursuer => GroupId::Evader,
            GroupId::Evader => GroupId::Pursuer,
        }
    }

    /// Stable label used in CSV output and diagnostics.
    pub fn label(self) -> &'static str {
        match self {
            GroupId::Pursuer => "pursuer",
            GroupId::Evader => "evader",
        }
    }
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Concrete aliases for the default double-precision instantiation.
pub type Vec2f64 = linalg::Vec2<f64>;
/// Single-precision position vector, for callers trading accuracy for space.
pub type Vec2f32 = linalg::Vec2<f32>;
/// Double-precision feature basis.
pub type BasisSetf64 = basis::BasisSet<f64>;
/// Double-precision linear-in-weights approximator.
pub type Approximatorf64 = estimators::LinearApproximator<f64>;
