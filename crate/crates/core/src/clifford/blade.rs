//! Basis blades of Cl(1,3).
//!
//! A blade is stored as a 4-bit mask: bit `i` set means the generator
//! `γ^i` is a factor. Factors are always taken in ascending index order,
//! so the mask alone fixes the blade and its sign.

use std::fmt;

/// Diagonal of the Minkowski metric, η = diag(+1, −1, −1, −1).
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Textual keys in canonical storage order is *not* the mask order; this is
/// the order used for printing (grade by grade).
pub const BLADE_KEYS: [&str; 16] = [
    "s", "0", "1", "2", "3", "01", "02", "03", "12", "13", "23", "012", "013", "023", "123",
    "0123",
];

/// A canonical basis blade `γ^{i1} γ^{i2} ... ` with `i1 < i2 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    /// Panics if `mask >= 16`.
    pub fn from_mask(mask: u8) -> Self {
        assert!(mask < 16, "blade mask out of range: {mask}");
        Blade(mask)
    }

    /// Generator `γ^i`.
    pub fn vector(i: usize) -> Self {
        assert!(i < 4, "generator index out of range: {i}");
        Blade(1 << i)
    }

    /// Builds a blade from an ascending index list. Returns `None` if the
    /// indices are not strictly ascending or out of range.
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u8;
        let mut last: Option<usize> = None;
        for &i in indices {
            if i > 3 || last.is_some_and(|l| l >= i) {
                return None;
            }
            mask |= 1 << i;
            last = Some(i);
        }
        Some(Blade(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |i| self.0 & (1 << i) != 0)
    }

    /// All 16 blades in mask order.
    pub fn all() -> impl Iterator<Item = Blade> {
        (0u8..16).map(Blade)
    }

    pub fn is_even(self) -> bool {
        self.grade() % 2 == 0
    }

    /// Sign picked up by reversing the order of the factors.
    pub fn reversion_sign(self) -> f64 {
        let k = self.grade();
        if (k * k.saturating_sub(1) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Geometric product of two basis blades: `self * other = sign * result`.
    ///
    /// The sign counts the transpositions needed to merge the two ascending
    /// factor lists, times `η^{ii}` for every generator that appears twice.
    pub fn product(self, other: Blade) -> (f64, Blade) {
        let a = self.0;
        let b = other.0;
        let mut swaps = 0u32;
        // each factor of `b` must pass every factor of `a` with a larger index
        let mut shifted = a >> 1;
        while shifted != 0 {
            swaps += (shifted & b).count_ones();
            shifted >>= 1;
        }
        let mut sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
        let common = a & b;
        for (i, eta) in ETA.iter().enumerate() {
            if common & (1 << i) != 0 {
                sign *= eta;
            }
        }
        (sign, Blade(a ^ b))
    }

    /// Canonical textual key, e.g. `"s"`, `"0"`, `"013"`.
    pub fn key(self) -> String {
        if self.0 == 0 {
            return "s".to_string();
        }
        self.indices().map(|i| char::from(b'0' + i as u8)).collect()
    }

    /// Parses a key produced by [`Blade::key`].
    pub fn from_key(key: &str) -> Option<Self> {
        if key == "s" {
            return Some(Blade::SCALAR);
        }
        if key.is_empty() {
            return None;
        }
        let mut idx = Vec::with_capacity(4);
        for c in key.chars() {
            idx.push(c.to_digit(10)? as usize);
        }
        Blade::from_indices(&idx)
    }

    /// Blades in the printing order of [`BLADE_KEYS`].
    pub fn display_order() -> impl Iterator<Item = Blade> {
        BLADE_KEYS.iter().map(|k| Blade::from_key(k).expect("static key"))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}
