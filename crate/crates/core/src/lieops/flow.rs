use crate::error::MathError;
use crate::geometry::{Chart, Geometry, Mat4, VectorField};

pub const DEFAULT_STEPS: usize = 64;

/// Where and how far to follow the flow of ξ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowProbe {
    pub base: [f64; 4],
    pub t: f64,
    pub steps: usize,
}

impl FlowProbe {
    pub fn new(base: [f64; 4], t: f64) -> Self {
        FlowProbe {
            base,
            t,
            steps: DEFAULT_STEPS,
        }
    }

    fn validate(&self) -> Result<(), MathError> {
        if !self.t.is_finite() {
            return Err(MathError::Domain(format!("flow time {} is not finite", self.t)));
        }
        if self.steps < 16 {
            return Err(MathError::Domain(format!(
                "flow needs at least 16 steps, got {}",
                self.steps
            )));
        }
        Ok(())
    }
}

type State = ([f64; 4], Mat4);

fn rhs(xi: &VectorField, x: &[f64; 4], j: &Mat4) -> Result<State, MathError> {
    let jets = xi.jets(x)?;
    let v = jets.map(|q| q.value);
    let dj = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| (0..4).map(|s| jets[mu].grad[s] * j[s][nu]).sum())
    });
    Ok((v, dj))
}

fn axpy(s: &State, h: f64, k: &State) -> State {
    (
        std::array::from_fn(|i| s.0[i] + h * k.0[i]),
        std::array::from_fn(|i| std::array::from_fn(|j| s.1[i][j] + h * k.1[i][j])),
    )
}

/// The flow `x′ = h_t(x)` and its Jacobian `J^μ_ν = ∂x′^μ/∂x^ν`, by RK4 on
/// the flow together with its variational equation.
pub fn flow_map(chart: &Chart, xi: &VectorField, probe: &FlowProbe) -> Result<State, MathError> {
    probe.validate()?;
    let ident: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u8 as f64));
    let mut state: State = (probe.base, ident);
    let h = probe.t / probe.steps as f64;
    let check = |x: &[f64; 4], time: f64| {
        if chart.contains(x) && x.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(MathError::FlowEscape { time, point: *x })
        }
    };
    check(&state.0, 0.0)?;
    for n in 0..probe.steps {
        let s0 = n as f64 * h;
        let k1 = rhs(xi, &state.0, &state.1)?;
        let y2 = axpy(&state, 0.5 * h, &k1);
        check(&y2.0, s0 + 0.5 * h)?;
        let k2 = rhs(xi, &y2.0, &y2.1)?;
        let y3 = axpy(&state, 0.5 * h, &k2);
        check(&y3.0, s0 + 0.5 * h)?;
        let k3 = rhs(xi, &y3.0, &y3.1)?;
        let y4 = axpy(&state, h, &k3);
        check(&y4.0, s0 + h)?;
        let k4 = rhs(xi, &y4.0, &y4.1)?;
        let mut next = state;
        for i in 0..4 {
            next.0[i] += h / 6.0 * (k1.0[i] + 2.0 * k2.0[i] + 2.0 * k3.0[i] + k4.0[i]);
            for j in 0..4 {
                next.1[i][j] +=
                    h / 6.0 * (k1.1[i][j] + 2.0 * k2.1[i][j] + 2.0 * k3.1[i][j] + k4.1[i][j]);
            }
        }
        check(&next.0, s0 + h)?;
        state = next;
    }
    Ok(state)
}

/// Coefficients `P^α_β` of the pulled-back cotetrad,
/// `h_t^* γ^α = P^α_β γ^β`, with `P^α_β = h^α_μ(x′) J^μ_ν h_β^ν(x)`.
pub fn pullback_frame(
    geometry: &Geometry,
    xi: &VectorField,
    probe: &FlowProbe,
) -> Result<Mat4, MathError> {
    let (x1, jac) = flow_map(&geometry.chart, xi, probe)?;
    let h1 = geometry.at(&x1)?.h;
    let e0 = geometry.at(&probe.base)?.e;
    Ok(std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let mut s = 0.0;
            for mu in 0..4 {
                for nu in 0..4 {
                    s += h1[a][mu] * jac[mu][nu] * e0[b][nu];
                }
            }
            s
        })
    }))
}
