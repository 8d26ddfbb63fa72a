//! The property suite run by `spinlie verify`.

use rand::Rng;
use rayon::prelude::*;

use crate::clifford::{polar_decompose, Multivector};
use crate::diracrep::{column_distance, cross_check, dirac_spinor_lie, dirac_spinor_lie_frame, DiracField, GammaRep};
use crate::error::MathError;
use crate::geometry::{
    connection_biform, connection_check, metric_reconstruction_residual,
    omega_antisymmetry_residual, tetrad_postulate_residual, VectorField, XiAtPoint,
};
use crate::lieops::{
    current_vector, frame_matrix, gram_residual, killing_residual, lie_form_cartan, sigma_matrix,
    spinor_image, spinor_lie_clifford_jet, spinor_lie_coordinate_jet, spinor_lie_covariant_jet,
    spinor_lie_left_jet, spinor_lie_metric, spinor_lie_right_jet, CliffordField, FlowProbe, LieAt,
    MvJet, KILLING_TOL,
};
use crate::report::{Record, Report};
use crate::sampling;
use crate::scene::{Scene, SceneField};

/// Tolerances of the suite. `tol` on the command line replaces every
/// exact-identity bound; finite-difference bounds are fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub point: f64,
    pub identity: f64,
    pub unit: f64,
    pub finite_difference: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            point: 1e-10,
            identity: 1e-9,
            unit: 1e-12,
            finite_difference: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn with_override(tol: Option<f64>) -> Self {
        let mut t = Self::default();
        if let Some(v) = tol {
            t.point = v;
            t.identity = v;
            t.unit = v;
        }
        t
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    pub tolerances: Tolerances,
}

/// Fraction of each box side kept clear so flows stay inside the domain.
pub const SAMPLE_MARGIN: f64 = 0.05;
const IMAGE_STEP: f64 = 1e-4;
const STENCIL_STEP: f64 = 1e-3;

fn dist(a: &Multivector, b: &Multivector) -> f64 {
    (*a - *b).norm_inf()
}

/// Vector fields of the scene whose Killing residual over `points` is at
/// most the Killing threshold.
pub fn killing_vectors<'a>(scene: &'a Scene, points: &[[f64; 4]]) -> Vec<(&'a str, &'a VectorField)> {
    scene
        .vectors
        .iter()
        .filter(|(_, xi)| {
            killing_residual(&scene.geometry, xi, points).is_ok_and(|r| r <= KILLING_TOL)
        })
        .map(|(n, xi)| (n.as_str(), xi))
        .collect()
}

pub fn verify_scene(scene: &Scene, opts: &VerifyOptions) -> Report {
    if opts.samples == 0 {
        return Report::new(opts.seed, Vec::new());
    }
    let tol = opts.tolerances;
    let mut records = vec![domain_regularity(scene, tol.point)];
    let points = scene.sample_points(opts.seed, opts.samples, SAMPLE_MARGIN);
    let killing = killing_vectors(scene, &points);
    let per_point: Vec<Vec<Record>> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut rng = sampling::sub_rng(opts.seed, i as u64);
            PointChecks {
                scene,
                p: *p,
                tol,
                killing: &killing,
                out: Vec::new(),
            }
            .run(&mut rng)
        })
        .collect();
    records.extend(per_point.into_iter().flatten());
    Report::new(opts.seed, records)
}

/// The geometry must be regular at every corner of the sample box.
fn domain_regularity(scene: &Scene, tol: f64) -> Record {
    for c in scene.geometry.chart.corners() {
        if let Err(e) = scene.geometry.at(&c) {
            return Record::failed("scene.domain_regularity", &scene.name, Some(c), tol, e.to_string());
        }
    }
    Record::measured("scene.domain_regularity", &scene.name, None, 0.0, tol)
}

struct PointChecks<'a> {
    scene: &'a Scene,
    p: [f64; 4],
    tol: Tolerances,
    killing: &'a [(&'a str, &'a VectorField)],
    out: Vec<Record>,
}

impl PointChecks<'_> {
    fn push(&mut self, name: String, tolerance: f64, r: Result<f64, MathError>) {
        let scene = self.scene.name.as_str();
        self.out.push(match r {
            Ok(v) if v.is_finite() => Record::measured(name, scene, Some(self.p), v, tolerance),
            Ok(v) => Record::failed(name, scene, Some(self.p), tolerance, format!("non-finite residual {v}")),
            Err(e) => Record::failed(name, scene, Some(self.p), tolerance, e.to_string()),
        });
    }

    fn check(&mut self, name: &str, tolerance: f64, f: impl FnOnce() -> Result<f64, MathError>) {
        let r = f();
        self.push(name.to_string(), tolerance, r);
    }

    fn run(mut self, rng: &mut sampling::SampleRng) -> Vec<Record> {
        let geo = match self.scene.geometry.at(&self.p) {
            Ok(g) => g,
            Err(e) => {
                self.push("geometry.point".into(), self.tol.point, Err(e));
                return self.out;
            }
        };
        let names = self.scene.names().clone();
        let (p, tol) = (self.p, self.tol);
        let scene = self.scene;

        self.check("geometry.tetrad_postulate", tol.point, || Ok(tetrad_postulate_residual(&geo)));
        self.check("geometry.connection_check", tol.point, || {
            Ok(connection_check(&geo.connection.structure, &geo.omega_frame))
        });
        self.check("geometry.metric_reconstruction", tol.point, || {
            Ok(metric_reconstruction_residual(&geo.h, &geo.g))
        });
        self.check("geometry.omega_antisymmetry", tol.point, || {
            Ok(omega_antisymmetry_residual(&geo.connection.omega))
        });

        let xi_field = sampling::vector_field(rng, &names, 0.5);
        let at = match XiAtPoint::eval(&xi_field, &geo) {
            Ok(xi) => LieAt::from_parts(geo.clone(), xi),
            Err(e) => {
                self.push("lieops.random_field".into(), tol.identity, Err(e));
                return self.out;
            }
        };
        self.check("geometry.l_equals_two_omega", tol.point, || {
            Ok(dist(&at.l, &connection_biform(&at.xi.frame, &at.geo.omega_frame).scale(2.0)))
        });
        self.check("geometry.dxi_routes", tol.point, || Ok(dist(&at.dxi, &at.dxi_christoffel)));

        for &(name, xi) in self.killing {
            let r = LieAt::new(&scene.geometry, xi, &p).and_then(|k| {
                let mut worst: f64 = 0.0;
                for alpha in 0..4 {
                    let g = CliffordField::gamma(alpha, &names);
                    let s = spinor_lie_clifford_jet(&k, &g.jet(&p)?);
                    worst = worst.max(dist(&s, &lie_form_cartan(&k, &g)?));
                }
                Ok(worst)
            });
            self.push(format!("lieops.killing_agreement[{name}]"), tol.identity, r);
        }

        let psi_field = sampling::spinor_field(rng, &names, 0.5);
        let phi_field = sampling::spinor_field(rng, &names, 0.5);
        let c_field = sampling::clifford_field(rng, &names, 0.5);
        let jets = psi_field
            .jet(&p)
            .and_then(|a| Ok((a, phi_field.jet(&p)?, c_field.jet(&p)?)));
        let (psi, phi, c) = match jets {
            Ok(j) => j,
            Err(e) => {
                self.push("lieops.random_field".into(), tol.identity, Err(e));
                return self.out;
            }
        };

        self.check("lieops.formula_equivalence", tol.identity, || Ok(three_way(&at, &psi)));
        for (name, field) in &scene.fields {
            if let SceneField::Spinor(s) = field {
                let r = s.jet(&p).map(|j| three_way(&at, &j));
                self.push(format!("lieops.formula_equivalence[{name}]"), tol.identity, r);
            }
        }

        self.check("lieops.leibniz", tol.identity, || {
            let prod = psi.bilinear(&phi, |a, b| a.gp(b));
            let lhs = spinor_lie_clifford_jet(&at, &prod);
            let rhs = spinor_lie_left_jet(&at, &psi).gp(&phi.val) + psi.val.gp(&spinor_lie_right_jet(&at, &phi));
            Ok(dist(&lhs, &rhs))
        });
        self.check("lieops.leibniz_clifford_left", tol.identity, || {
            let prod = c.bilinear(&psi, |a, b| a.gp(b));
            let lhs = spinor_lie_left_jet(&at, &prod);
            let rhs = spinor_lie_clifford_jet(&at, &c).gp(&psi.val) + c.val.gp(&spinor_lie_left_jet(&at, &psi));
            Ok(dist(&lhs, &rhs))
        });
        self.check("lieops.leibniz_clifford_right", tol.identity, || {
            let prod = phi.bilinear(&c, |a, b| a.gp(b));
            let lhs = spinor_lie_right_jet(&at, &prod);
            let rhs = spinor_lie_right_jet(&at, &phi).gp(&c.val) + phi.val.gp(&spinor_lie_clifford_jet(&at, &c));
            Ok(dist(&lhs, &rhs))
        });
        self.check("lieops.unit_section", tol.unit, || {
            let one = MvJet::constant(Multivector::one());
            Ok(dist(&spinor_lie_left_jet(&at, &one), &at.s.scale(0.25))
                .max(dist(&spinor_lie_right_jet(&at, &one), &at.s.scale(-0.25))))
        });

        self.check("lieops.metric_annihilation", tol.identity, || spinor_lie_metric(&at.s, &[0.1, 0.01]));
        let t: f64 = rng.random_range(0.0..2.0);
        self.check("lieops.checked_frame_orthonormality", tol.point, || gram_residual(&at.s, t));
        self.check("lieops.sigma_generator", tol.identity, || {
            let h = STENCIL_STEP;
            let f = |k: f64| frame_matrix(&at.s, k * h);
            let (m2, m1, p1, p2) = (f(-2.0)?, f(-1.0)?, f(1.0)?, f(2.0)?);
            let sigma = sigma_matrix(&at.s);
            let mut worst: f64 = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    let d = (m2[a][b] - 8.0 * m1[a][b] + 8.0 * p1[a][b] - p2[a][b]) / (12.0 * h);
                    worst = worst.max((d - sigma[a][b]).abs());
                }
            }
            Ok(worst)
        });
        self.check("lieops.spinor_image_derivative", tol.finite_difference, || {
            let plus = spinor_image(&scene.geometry, &xi_field, &c_field, &FlowProbe::new(p, IMAGE_STEP))?;
            let minus = spinor_image(&scene.geometry, &xi_field, &c_field, &FlowProbe::new(p, -IMAGE_STEP))?;
            let fd = (plus - minus).scale(0.5 / IMAGE_STEP);
            Ok(dist(&fd, &spinor_lie_clifford_jet(&at, &c)))
        });

        let rep = GammaRep::dirac();
        let psi_spinor = psi_field.clone();
        self.check("diracrep.cross_check", tol.identity, || cross_check(&rep, &at, &psi_spinor));
        self.check("diracrep.column_forms", tol.point, || {
            let mut worst: f64 = 0.0;
            for i in 0..4 {
                let f = DiracField::from_spinor(&rep, &psi_field, i);
                worst = worst.max(column_distance(
                    &dirac_spinor_lie(&rep, &at, &f)?,
                    &dirac_spinor_lie_frame(&rep, &at, &f)?,
                ));
            }
            Ok(worst)
        });

        let even = sampling::even_multivector(rng, 1.0);
        self.check("clifford.current_vector_grade", tol.unit, || {
            let scale = even.norm_inf().powi(2).max(1.0);
            let mut worst: f64 = 0.0;
            for alpha in 0..4 {
                let v = current_vector(&even, alpha);
                worst = worst.max((v - v.grade(1)?).norm_inf() / scale);
            }
            Ok(worst)
        });
        self.check("clifford.polar_round_trip", tol.point, || {
            let polar = polar_decompose(&even)?;
            Ok(dist(&polar.reconstruct(), &even) / even.norm_inf().max(1.0))
        });
        self.out
    }
}

/// Pairwise max distance between the left, covariant and coordinate forms.
fn three_way(at: &LieAt, psi: &MvJet) -> f64 {
    let a = spinor_lie_left_jet(at, psi);
    let b = spinor_lie_covariant_jet(at, psi);
    let c = spinor_lie_coordinate_jet(at, psi, true);
    dist(&a, &b).max(dist(&a, &c)).max(dist(&b, &c))
}
