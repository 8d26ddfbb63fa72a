use std::collections::BTreeMap;

use crate::clifford::{Blade, Multivector};
use crate::error::MathError;
use crate::symexpr::{CoordNames, ScalarExpr};

/// A multivector together with its four coordinate partials `∂_μ`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MvJet {
    pub val: Multivector,
    pub d: [Multivector; 4],
}

impl MvJet {
    pub fn constant(val: Multivector) -> Self {
        MvJet {
            val,
            d: [Multivector::ZERO; 4],
        }
    }

    /// `v^μ ∂_μ` of the components.
    pub fn directional(&self, v: &[f64; 4]) -> Multivector {
        let mut out = Multivector::ZERO;
        for (mu, dm) in self.d.iter().enumerate() {
            if v[mu] != 0.0 {
                out += dm.scale(v[mu]);
            }
        }
        out
    }

    /// Lifts a bilinear operation through the product rule.
    pub fn bilinear(
        &self,
        other: &MvJet,
        op: impl Fn(&Multivector, &Multivector) -> Multivector,
    ) -> MvJet {
        MvJet {
            val: op(&self.val, &other.val),
            d: std::array::from_fn(|mu| op(&self.d[mu], &other.val) + op(&self.val, &other.d[mu])),
        }
    }
}

/// Multivector field with components in the tetrad blade basis.
#[derive(Clone, Debug)]
pub struct CliffordField {
    components: BTreeMap<Blade, ScalarExpr>,
    names: CoordNames,
}

impl CliffordField {
    pub fn new(
        names: &CoordNames,
        components: impl IntoIterator<Item = (Blade, ScalarExpr)>,
    ) -> Self {
        CliffordField {
            components: components.into_iter().collect(),
            names: names.clone(),
        }
    }

    /// A field with constant components equal to `m`.
    pub fn constant(m: &Multivector, names: &CoordNames) -> Self {
        Self::new(
            names,
            m.terms()
                .into_iter()
                .map(|(b, c)| (b, ScalarExpr::constant(c, names))),
        )
    }

    /// The cotetrad field `γ^α`.
    pub fn gamma(alpha: usize, names: &CoordNames) -> Self {
        Self::constant(&Multivector::gamma(alpha), names)
    }

    /// Parses `{blade key: expression}` pairs.
    pub fn parse<'a>(
        names: &CoordNames,
        entries: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, String> {
        let mut components = BTreeMap::new();
        for (key, src) in entries {
            let blade = Blade::from_key(key).ok_or_else(|| format!("invalid blade key `{key}`"))?;
            let expr =
                ScalarExpr::parse(src, names).map_err(|e| format!("component `{key}`: {e}"))?;
            if components.insert(blade, expr).is_some() {
                return Err(format!("duplicate blade key `{key}`"));
            }
        }
        Ok(CliffordField {
            components,
            names: names.clone(),
        })
    }

    pub fn names(&self) -> &CoordNames {
        &self.names
    }

    pub fn components(&self) -> impl Iterator<Item = (Blade, &ScalarExpr)> {
        self.components.iter().map(|(b, e)| (*b, e))
    }

    fn active(&self) -> impl Iterator<Item = (Blade, &ScalarExpr)> {
        self.components().filter(|(_, e)| !e.is_zero_literal())
    }

    pub fn is_even(&self) -> bool {
        self.active().all(|(b, _)| b.is_even())
    }

    /// The single grade carried by the non-zero components, if there is one.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let mut grades = self.active().map(|(b, _)| b.grade());
        match grades.next() {
            None => Some(0),
            Some(g) => grades.all(|h| h == g).then_some(g),
        }
    }

    pub fn jet(&self, p: &[f64; 4]) -> Result<MvJet, MathError> {
        let mut out = MvJet::default();
        for (b, e) in self.components() {
            let j = e.eval_jet(p)?;
            out.val[b] = j.value;
            for mu in 0..4 {
                out.d[mu][b] = j.grad[mu];
            }
        }
        Ok(out)
    }

    pub fn eval(&self, p: &[f64; 4]) -> Result<Multivector, MathError> {
        let mut out = Multivector::ZERO;
        for (b, e) in self.components() {
            out[b] = e.eval(p)?;
        }
        Ok(out)
    }
}

/// A Clifford field with only even-grade components.
#[derive(Clone, Debug)]
pub struct SpinorField(CliffordField);

impl SpinorField {
    pub fn new(field: CliffordField) -> Result<Self, MathError> {
        if let Some((b, _)) = field.active().find(|(b, _)| !b.is_even()) {
            return Err(MathError::Domain(format!(
                "spinor field has odd blade `{}`",
                b.key()
            )));
        }
        Ok(SpinorField(field))
    }

    pub fn constant(m: &Multivector, names: &CoordNames) -> Result<Self, MathError> {
        Self::new(CliffordField::constant(m, names))
    }

    pub fn field(&self) -> &CliffordField {
        &self.0
    }

    pub fn jet(&self, p: &[f64; 4]) -> Result<MvJet, MathError> {
        self.0.jet(p)
    }
}
