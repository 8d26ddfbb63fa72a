//! Spinor Lie derivatives of Clifford and Dirac-Hestenes spinor fields on
//! parallelizable Lorentzian 4-manifolds.
//!
//! Fields live in the Clifford bundle of a chart with a global cotetrad
//! `γ^α = h^α_μ dx^μ`; every operator returns point values computed with
//! exact second-order automatic differentiation of the scene expressions.

pub mod clifford;
pub mod diracrep;
pub mod error;
pub mod geometry;
pub mod jet;
pub mod lieops;
pub mod report;
pub mod sampling;
pub mod scene;
pub mod symexpr;
pub mod verify;

pub use clifford::{exp_bivector, polar_decompose, Blade, Multivector, PolarForm};
pub use error::{MathError, ParseError, SceneError};
pub use geometry::{Chart, Geometry, MetricField, PointGeometry, TetradField, VectorField};
pub use jet::Jet2;
pub use lieops::{CliffordField, FlowProbe, LieAt, SpinorField};
pub use report::{Record, Report};
pub use scene::{load_scene, parse_scene, Scene, SceneField};
pub use symexpr::ScalarExpr;
pub use verify::{verify_scene, Tolerances, VerifyOptions};
