//! The real Clifford algebra Cl(1,3) with η = diag(+1, −1, −1, −1).
//!
//! Everything here is exact dense arithmetic over the 16 blades; no
//! approximation enters except in [`exp_bivector`].

mod blade;
mod multivector;
mod rotor;

pub use blade::{Blade, BLADE_KEYS, ETA};
pub use multivector::Multivector;
pub use rotor::{exp_bivector, polar_decompose, PolarForm, SINGULAR_RATIO};

/// Reverse of a rotor is its inverse; this is `u⁻¹ a u` for a rotor `u`.
pub fn sandwich_inverse(rotor: &Multivector, a: &Multivector) -> Multivector {
    rotor.reverse().gp(a).gp(rotor)
}
