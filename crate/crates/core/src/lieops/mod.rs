//! Lie derivatives of forms, covariant derivatives and the spinor Lie
//! derivative, together with the spinor lift and flow-based images.

mod field;
mod flow;
mod lift;
mod ops;

pub use field::{CliffordField, MvJet, SpinorField};
pub use flow::{flow_map, pullback_frame, FlowProbe, DEFAULT_STEPS};
pub use lift::{
    checked_frame, frame_matrix, gram_residual, sigma_matrix, sigma_matrix_contraction,
    spinor_image, spinor_lie_metric, spinor_lift,
};
pub use ops::*;
