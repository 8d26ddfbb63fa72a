use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::blade::Blade;
use crate::error::MathError;

/// A general element of Cl(1,3), stored densely over the 16 basis blades
/// (indexed by blade mask).
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Multivector(pub [f64; 16]);

impl Multivector {
    pub const ZERO: Multivector = Multivector([0.0; 16]);

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::ZERO;
        m.0[0] = s;
        m
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    pub fn blade(b: Blade, coef: f64) -> Self {
        let mut m = Self::ZERO;
        m.0[b.index()] = coef;
        m
    }

    /// Generator `γ^i`.
    pub fn gamma(i: usize) -> Self {
        Self::blade(Blade::vector(i), 1.0)
    }

    /// Pseudoscalar τ = γ^0γ^1γ^2γ^3.
    pub fn tau() -> Self {
        Self::blade(Blade::PSEUDOSCALAR, 1.0)
    }

    /// `Σ v[i] γ^i`.
    pub fn vector(v: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, x) in v.into_iter().enumerate() {
            m.0[1 << i] = x;
        }
        m
    }

    /// `Σ_{i<j} f[i][j] γ^i∧γ^j` built from the antisymmetric part of `f`,
    /// i.e. `½ f[i][j] γ^i∧γ^j` summed over all `i, j`.
    pub fn bivector_from_matrix(f: &[[f64; 4]; 4]) -> Self {
        let mut m = Self::ZERO;
        for i in 0..4 {
            for j in (i + 1)..4 {
                m.0[(1 << i) | (1 << j)] = 0.5 * (f[i][j] - f[j][i]);
            }
        }
        m
    }

    pub fn get(&self, b: Blade) -> f64 {
        self.0[b.index()]
    }

    pub fn scalar_part(&self) -> f64 {
        self.0[0]
    }

    /// Components of the grade-1 part, `[c_0, c_1, c_2, c_3]`.
    pub fn vector_part(&self) -> [f64; 4] {
        [self.0[1], self.0[2], self.0[4], self.0[8]]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Geometric product.
    pub fn gp(&self, other: &Multivector) -> Multivector {
        let mut out = [0.0; 16];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let ba = Blade::from_mask(i as u8);
            for (j, &b) in other.0.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let (s, r) = ba.product(Blade::from_mask(j as u8));
                out[r.index()] += s * a * b;
            }
        }
        Multivector(out)
    }

    /// Product keeping only blade pairs for which `keep(grade_a, grade_b,
    /// grade_result)` holds.
    fn filtered_product(
        &self,
        other: &Multivector,
        keep: impl Fn(usize, usize, usize) -> bool,
    ) -> Multivector {
        let mut out = [0.0; 16];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let ba = Blade::from_mask(i as u8);
            for (j, &b) in other.0.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let bb = Blade::from_mask(j as u8);
                let (s, r) = ba.product(bb);
                if keep(ba.grade(), bb.grade(), r.grade()) {
                    out[r.index()] += s * a * b;
                }
            }
        }
        Multivector(out)
    }

    /// Outer product: grade `j+k` part of the product of grade-`j` and
    /// grade-`k` pieces.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        self.filtered_product(other, |ga, gb, gr| gr == ga + gb)
    }

    /// Left contraction `a ⌟ b`: grade `k−j` part of the product of grade-`j`
    /// and grade-`k` pieces, zero when `j > k`.
    pub fn left_contraction(&self, other: &Multivector) -> Multivector {
        self.filtered_product(other, |ga, gb, gr| gb >= ga && gr == gb - ga)
    }

    /// Grade-wise scalar product `Σ_k ⟨⟨a⟩_k ⟨b⟩_k⟩_0`.
    ///
    /// For bivectors this gives `(γ^0∧γ^1)·(γ^0∧γ^1) = +1`.
    pub fn scalar_product(&self, other: &Multivector) -> f64 {
        let mut s = 0.0;
        for (i, &a) in self.0.iter().enumerate() {
            let b = other.0[i];
            if a == 0.0 || b == 0.0 {
                continue;
            }
            let (sign, r) = Blade::from_mask(i as u8).product(Blade::from_mask(i as u8));
            debug_assert_eq!(r, Blade::SCALAR);
            s += sign * a * b;
        }
        s
    }

    /// Grade-`k` projection.
    pub fn grade(&self, k: usize) -> Result<Multivector, MathError> {
        if k > 4 {
            return Err(MathError::Domain(format!("grade {k} out of range 0..=4")));
        }
        Ok(self.grade_unchecked(k))
    }

    pub(crate) fn grade_unchecked(&self, k: usize) -> Multivector {
        let mut out = Self::ZERO;
        for b in Blade::all() {
            if b.grade() == k {
                out.0[b.index()] = self.0[b.index()];
            }
        }
        out
    }

    /// Even-grade part (grades 0, 2, 4).
    pub fn even_part(&self) -> Multivector {
        let mut out = Self::ZERO;
        for b in Blade::all().filter(|b| b.is_even()) {
            out.0[b.index()] = self.0[b.index()];
        }
        out
    }

    /// `true` when every component outside grade `k` is exactly zero.
    pub fn is_pure_grade(&self, k: usize) -> bool {
        Blade::all().all(|b| b.grade() == k || self.0[b.index()] == 0.0)
    }

    pub fn is_even(&self) -> bool {
        Blade::all().all(|b| b.is_even() || self.0[b.index()] == 0.0)
    }

    /// Reversion `ã`: sign `(−1)^{k(k−1)/2}` on grade `k`.
    pub fn reverse(&self) -> Multivector {
        let mut out = *self;
        for b in Blade::all() {
            out.0[b.index()] *= b.reversion_sign();
        }
        out
    }

    /// `ab − ba`.
    pub fn commutator(&self, other: &Multivector) -> Multivector {
        self.gp(other) - other.gp(self)
    }

    pub fn scale(&self, s: f64) -> Multivector {
        let mut out = *self;
        for c in out.0.iter_mut() {
            *c *= s;
        }
        out
    }

    /// Max-component norm.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Nonzero components keyed by blade name, in display order.
    pub fn to_key_map(&self) -> BTreeMap<String, f64> {
        Blade::all()
            .filter(|b| self.0[b.index()] != 0.0)
            .map(|b| (b.key(), self.0[b.index()]))
            .collect()
    }

    /// Nonzero `(key, coefficient)` pairs in display order.
    pub fn terms(&self) -> Vec<(Blade, f64)> {
        Blade::display_order()
            .filter(|b| self.0[b.index()] != 0.0)
            .map(|b| (b, self.0[b.index()]))
            .collect()
    }

    pub fn from_key_map(map: &BTreeMap<String, f64>) -> Result<Self, MathError> {
        let mut m = Self::ZERO;
        for (k, &v) in map {
            let b = Blade::from_key(k)
                .ok_or_else(|| MathError::Domain(format!("unknown blade key {k:?}")))?;
            if !v.is_finite() {
                return Err(MathError::Domain(format!("non-finite coefficient for {k}")));
            }
            m.0[b.index()] = v;
        }
        Ok(m)
    }
}

impl Index<Blade> for Multivector {
    type Output = f64;
    fn index(&self, b: Blade) -> &f64 {
        &self.0[b.index()]
    }
}

impl IndexMut<Blade> for Multivector {
    fn index_mut(&mut self, b: Blade) -> &mut f64 {
        &mut self.0[b.index()]
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (b, c)) in terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if *b == Blade::SCALAR {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*e{b}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Multivector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let terms = self.terms();
        let mut map = s.serialize_map(Some(terms.len()))?;
        for (b, c) in terms {
            map.serialize_entry(&b.key(), &c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, f64>::deserialize(d)?;
        Multivector::from_key_map(&map).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize) -> Multivector {
        Multivector::gamma(i)
    }

    fn b(key: &str) -> Multivector {
        Multivector::blade(Blade::from_key(key).unwrap(), 1.0)
    }

    #[test]
    fn generator_squares() {
        assert_eq!(g(0) * g(0), Multivector::one());
        assert_eq!(g(1) * g(1), Multivector::scalar(-1.0));
    }

    #[test]
    fn boost_bivector_squares_to_plus_one() {
        // γ0γ1γ0γ1 = −γ0γ0γ1γ1 = −(1)(−1) = 1
        let e01 = g(0) * g(1);
        assert_eq!(e01 * e01, Multivector::one());
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(g(0).wedge(&g(1)), b("01"));
        assert_eq!(g(1).wedge(&g(1)), Multivector::ZERO);
        assert_eq!(b("01").wedge(&b("23")), Multivector::tau());
        assert_eq!(g(1).wedge(&g(0)), -b("01"));
    }

    #[test]
    fn left_contraction_examples() {
        assert_eq!(g(0).left_contraction(&g(0).wedge(&g(1))), g(1));
        assert_eq!(g(2).left_contraction(&g(3)), Multivector::ZERO);
        assert_eq!(g(0).left_contraction(&Multivector::one()), Multivector::ZERO);
    }

    #[test]
    fn contraction_expansion_rule() {
        // x⌟(y∧z) = (x·y)z − (x·z)y
        let x = Multivector::vector([0.3, -1.2, 0.5, 2.0]);
        let y = Multivector::vector([1.1, 0.4, -0.7, 0.2]);
        let z = Multivector::vector([-0.6, 0.9, 1.3, -0.4]);
        let lhs = x.left_contraction(&y.wedge(&z));
        let rhs = z.scale(x.scalar_product(&y)) - y.scale(x.scalar_product(&z));
        assert!((lhs - rhs).norm_inf() < 1e-14);
    }

    #[test]
    fn scalar_product_examples() {
        assert_eq!(b("01").scalar_product(&b("01")), 1.0);
        assert_eq!(g(0).scalar_product(&g(1)), 0.0);
        assert_eq!(Multivector::one().scalar_product(&Multivector::one()), 1.0);
    }

    #[test]
    fn grade_examples() {
        assert_eq!((g(0) * g(1)).grade(2).unwrap(), g(0).wedge(&g(1)));
        assert_eq!((g(0) * g(0)).grade(0).unwrap(), Multivector::one());
        let m = Multivector::scalar(3.0) + g(0).scale(2.0) + Multivector::tau();
        assert_eq!(m.grade(4).unwrap(), Multivector::tau());
        assert!(matches!(m.grade(5), Err(MathError::Domain(_))));
    }

    #[test]
    fn reversion_examples() {
        assert_eq!((g(0) * g(1)).reverse(), g(1) * g(0));
        assert_eq!((g(0) * g(1)).reverse(), -(g(0) * g(1)));
        assert_eq!(Multivector::tau().reverse(), Multivector::tau());
        let m = Multivector::one() + g(0);
        assert_eq!(m.reverse(), m);
    }

    #[test]
    fn commutator_examples() {
        // γ01γ0 = −γ1 and γ0γ01 = γ1
        assert_eq!((g(0) * g(1)).commutator(&g(0)), g(1).scale(-2.0));
        assert_eq!(g(0).commutator(&(g(0) * g(1))), g(1).scale(2.0));
        let x = Multivector::vector([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(Multivector::one().commutator(&x), Multivector::ZERO);
        assert_eq!((g(1) * g(2)).commutator(&g(0)), Multivector::ZERO);
    }

    #[test]
    fn pseudoscalar_commutes_with_bivectors() {
        for key in ["01", "02", "03", "12", "13", "23"] {
            assert_eq!(Multivector::tau().commutator(&b(key)), Multivector::ZERO);
        }
    }

    #[test]
    fn lorentz_generator_scalar_products() {
        // Σ from contraction route −½(γ_κ∧γ^α)⌟S and scalar-product route
        // ½ S·(γ^α∧γ_κ) agree for every blade pair.
        let lower = |k: usize| g(k).scale(super::super::blade::ETA[k]);
        let s = Multivector::bivector_from_matrix(&[
            [0.0, 0.7, -1.1, 0.3],
            [-0.7, 0.0, 0.4, 2.0],
            [1.1, -0.4, 0.0, -0.9],
            [-0.3, -2.0, 0.9, 0.0],
        ]);
        for a in 0..4 {
            for k in 0..4 {
                let r1 = -0.5 * lower(k).wedge(&g(a)).left_contraction(&s).scalar_part();
                let r2 = 0.5 * s.scalar_product(&g(a).wedge(&lower(k)));
                assert!((r1 - r2).abs() < 1e-14, "{a} {k}: {r1} vs {r2}");
            }
        }
    }

    #[test]
    fn key_map_round_trip() {
        let m = Multivector::scalar(2.0) + b("013").scale(-0.25);
        let map = m.to_key_map();
        assert_eq!(Multivector::from_key_map(&map).unwrap(), m);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<Multivector>(&json).unwrap(), m);
    }
}
