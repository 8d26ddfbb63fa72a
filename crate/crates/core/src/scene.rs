//! Scene files: a chart, metric, optional cotetrad, named fields and vector
//! fields, and a sampling recipe, written as TOML.
//!
//! ```toml
//! name = "rindler"
//! coordinates = ["t", "x", "y", "z"]
//! metric = [["x^2", "0", "0", "0"],
//!           ["0", "-1", "0", "0"],
//!           ["0", "0", "-1", "0"],
//!           ["0", "0", "0", "-1"]]
//! tetrad = [["x", "0", "0", "0"], ...]      # optional
//!
//! [vectors]
//! timetrans = ["1", "0", "0", "0"]
//!
//! [fields.psi]
//! even = true
//! components = { s = "1", "01" = "x*t" }
//!
//! [sample]
//! seed = 42
//! count = 100
//! box = [[-1, 1], [0.5, 3], [-1, 1], [-1, 1]]
//! points = [[0, 2, 0, 0]]                  # optional
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{MathError, SceneError};
use crate::geometry::{
    has_lorentz_signature, Chart, Geometry, MetricField, TetradField, VectorField,
};
use crate::lieops::{CliffordField, SpinorField};
use crate::sampling;
use crate::symexpr::{is_reserved, CoordNames, ScalarExpr};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    name: Option<String>,
    coordinates: [String; 4],
    metric: [[String; 4]; 4],
    tetrad: Option<[[String; 4]; 4]>,
    #[serde(default)]
    fields: BTreeMap<String, RawField>,
    #[serde(default)]
    vectors: BTreeMap<String, [String; 4]>,
    sample: RawSample,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    #[serde(default)]
    even: bool,
    components: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSample {
    seed: u64,
    count: usize,
    #[serde(rename = "box")]
    bounds: [[f64; 2]; 4],
    #[serde(default)]
    points: Vec<[f64; 4]>,
}

/// A named field of a scene.
#[derive(Clone, Debug)]
pub enum SceneField {
    Clifford(CliffordField),
    Spinor(SpinorField),
}

impl SceneField {
    pub fn clifford(&self) -> &CliffordField {
        match self {
            SceneField::Clifford(c) => c,
            SceneField::Spinor(s) => s.field(),
        }
    }

    pub fn is_even(&self) -> bool {
        matches!(self, SceneField::Spinor(_))
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub seed: u64,
    pub count: usize,
    pub points: Vec<[f64; 4]>,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub name: String,
    pub geometry: Geometry,
    pub fields: BTreeMap<String, SceneField>,
    pub vectors: BTreeMap<String, VectorField>,
    pub sample: Sample,
}

impl Scene {
    pub fn names(&self) -> &CoordNames {
        &self.geometry.chart.names
    }

    /// Explicit points followed by `count` seeded draws from the box shrunk
    /// by `margin` on each side.
    pub fn sample_points(&self, seed: u64, count: usize, margin: f64) -> Vec<[f64; 4]> {
        let mut pts = self.sample.points.clone();
        let mut rng = sampling::rng(seed);
        pts.extend(sampling::points_in_box(
            &mut rng,
            &self.geometry.chart.sample_box,
            count,
            margin,
        ));
        pts
    }

    pub fn default_points(&self) -> Vec<[f64; 4]> {
        self.sample_points(self.sample.seed, self.sample.count, 0.0)
    }
}

pub fn load_scene(path: impl AsRef<Path>) -> Result<Scene, SceneError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scene".into());
    parse_scene(&text, &stem)
}

fn expr(src: &str, names: &CoordNames, location: String) -> Result<ScalarExpr, SceneError> {
    ScalarExpr::parse(src, names).map_err(|source| SceneError::Expression { location, source })
}

fn matrix(
    raw: &[[String; 4]; 4],
    names: &CoordNames,
    what: &str,
) -> Result<[[ScalarExpr; 4]; 4], SceneError> {
    let mut rows: Vec<[ScalarExpr; 4]> = Vec::with_capacity(4);
    for (i, row) in raw.iter().enumerate() {
        let mut out: Vec<ScalarExpr> = Vec::with_capacity(4);
        for (j, src) in row.iter().enumerate() {
            out.push(expr(src, names, format!("{what}[{i}][{j}]"))?);
        }
        rows.push(out.try_into().expect("four entries"));
    }
    Ok(rows.try_into().expect("four rows"))
}

/// Parses and validates a scene document; `default_name` is used when the
/// document has no `name`.
pub fn parse_scene(text: &str, default_name: &str) -> Result<Scene, SceneError> {
    let raw: RawScene = toml::from_str(text).map_err(|e| SceneError::Format(e.to_string()))?;

    for (i, n) in raw.coordinates.iter().enumerate() {
        let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || is_reserved(n) {
            return Err(SceneError::Validation(format!(
                "coordinate name `{n}` is not a usable identifier"
            )));
        }
        if raw.coordinates[..i].contains(n) {
            return Err(SceneError::Validation(format!(
                "coordinate names not distinct: `{n}` repeats"
            )));
        }
    }
    let names: CoordNames = Arc::new(raw.coordinates.clone());

    for (i, [lo, hi]) in raw.sample.bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(SceneError::Validation(format!(
                "sample box interval {i} = [{lo}, {hi}] is not a finite closed interval"
            )));
        }
    }

    let metric = MetricField {
        g: matrix(&raw.metric, &names, "metric")?,
    };
    let tetrad = match &raw.tetrad {
        Some(t) => Some(TetradField {
            h: matrix(t, &names, "tetrad")?,
        }),
        None => None,
    };

    let mut vectors = BTreeMap::new();
    for (name, comps) in &raw.vectors {
        let mut xi: Vec<ScalarExpr> = Vec::with_capacity(4);
        for (i, src) in comps.iter().enumerate() {
            xi.push(expr(src, &names, format!("vectors.{name}[{i}]"))?);
        }
        vectors.insert(
            name.clone(),
            VectorField {
                xi: xi.try_into().expect("four components"),
            },
        );
    }

    let mut fields = BTreeMap::new();
    for (name, f) in &raw.fields {
        let field = CliffordField::parse(
            &names,
            f.components.iter().map(|(k, v)| (k.as_str(), v.as_str())),
        )
        .map_err(|e| SceneError::Validation(format!("field `{name}`: {e}")))?;
        let entry = if f.even {
            SceneField::Spinor(SpinorField::new(field).map_err(|e| {
                SceneError::Validation(format!("field `{name}` is flagged even: {e}"))
            })?)
        } else {
            SceneField::Clifford(field)
        };
        fields.insert(name.clone(), entry);
    }

    let scene = Scene {
        name: raw.name.unwrap_or_else(|| default_name.to_string()),
        geometry: Geometry {
            chart: Chart::new(names, raw.sample.bounds),
            metric,
            tetrad,
        },
        fields,
        vectors,
        sample: Sample {
            seed: raw.sample.seed,
            count: raw.sample.count,
            points: raw.sample.points,
        },
    };
    validate_geometry(&scene)?;
    Ok(scene)
}

/// Symmetry, signature and tetrad consistency at the scene's own sample
/// points. Points where the metric is singular are left to `verify`.
fn validate_geometry(scene: &Scene) -> Result<(), SceneError> {
    let geo = &scene.geometry;
    let mut pts = scene.default_points();
    pts.push(geo.chart.center());
    for p in &pts {
        let mut g = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                g[mu][nu] = geo.metric.g[mu][nu].eval(p).map_err(|e| {
                    SceneError::Validation(format!("metric[{mu}][{nu}] at {p:?}: {e}"))
                })?;
            }
        }
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                let same = geo.metric.g[mu][nu] == geo.metric.g[nu][mu];
                if !same && (g[mu][nu] - g[nu][mu]).abs() > 1e-12 {
                    return Err(SceneError::Validation(format!(
                        "metric not symmetric: g[{mu}][{nu}] = {} but g[{nu}][{mu}] = {} at {p:?}",
                        g[mu][nu], g[nu][mu]
                    )));
                }
            }
        }
        let singular = crate::geometry::invert_metric(&g, p).is_err();
        if singular {
            continue;
        }
        if !has_lorentz_signature(&g) {
            return Err(SceneError::Validation(format!(
                "metric signature is not (+,-,-,-) at {p:?}"
            )));
        }
        match geo.at(p) {
            Err(MathError::TetradMismatch { residual, .. }) => {
                return Err(SceneError::Validation(format!(
                    "tetrad does not reproduce the metric at {p:?} (residual {residual:e})"
                )));
            }
            Err(MathError::Eval { node, message }) => {
                return Err(SceneError::Validation(format!(
                    "evaluating `{node}` at {p:?}: {message}"
                )));
            }
            _ => {}
        }
    }
    Ok(())
}
