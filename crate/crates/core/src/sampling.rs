//! Seeded random points, multivectors and fields for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{Blade, Multivector};
use crate::geometry::VectorField;
use crate::lieops::{CliffordField, SpinorField};
use crate::symexpr::{CoordNames, ScalarExpr};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent stream for item `index` of a run seeded with `seed`.
pub fn sub_rng(seed: u64, index: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index + 1);
    r
}

/// `count` uniform points in `bounds`, each interval shrunk by
/// `margin · width` on both sides.
pub fn points_in_box(
    rng: &mut impl Rng,
    bounds: &[[f64; 2]; 4],
    count: usize,
    margin: f64,
) -> Vec<[f64; 4]> {
    (0..count)
        .map(|_| {
            std::array::from_fn(|i| {
                let [lo, hi] = bounds[i];
                let pad = margin * (hi - lo);
                if hi - 2.0 * pad <= lo + pad {
                    0.5 * (lo + hi)
                } else {
                    rng.random_range((lo + pad)..(hi - pad))
                }
            })
        })
        .collect()
}

pub fn multivector(rng: &mut impl Rng, scale: f64) -> Multivector {
    let mut m = Multivector::ZERO;
    for b in Blade::all() {
        m[b] = rng.random_range(-scale..scale);
    }
    m
}

pub fn even_multivector(rng: &mut impl Rng, scale: f64) -> Multivector {
    multivector(rng, scale).even_part()
}

pub fn bivector(rng: &mut impl Rng, scale: f64) -> Multivector {
    multivector(rng, scale).grade(2).expect("grade 2 exists")
}

/// A smooth expression: a random combination of a constant, linear terms,
/// a product and a trigonometric term in the chart coordinates.
pub fn expression(rng: &mut impl Rng, names: &CoordNames, scale: f64) -> ScalarExpr {
    let mut coef = || rng.random_range(-scale..scale);
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| names[i].as_str());
    let src = format!(
        "{:?} + {:?}*{a} + {:?}*{b} + {:?}*{c}*{d} + {:?}*sin({b} + {:?}*{a}) + {:?}*{c}^2",
        coef(),
        coef(),
        coef(),
        coef(),
        coef(),
        coef(),
        coef()
    );
    ScalarExpr::parse(&src, names).expect("generated expression parses")
}

pub fn vector_field(rng: &mut impl Rng, names: &CoordNames, scale: f64) -> VectorField {
    VectorField {
        xi: std::array::from_fn(|_| expression(rng, names, scale)),
    }
}

pub fn clifford_field(rng: &mut impl Rng, names: &CoordNames, scale: f64) -> CliffordField {
    let comps: Vec<_> = Blade::all()
        .map(|b| (b, expression(rng, names, scale)))
        .collect();
    CliffordField::new(names, comps)
}

pub fn spinor_field(rng: &mut impl Rng, names: &CoordNames, scale: f64) -> SpinorField {
    let comps: Vec<_> = Blade::all()
        .filter(|b| b.is_even())
        .map(|b| (b, expression(rng, names, scale)))
        .collect();
    SpinorField::new(CliffordField::new(names, comps)).expect("even blades only")
}
