use num_complex::Complex64;

use super::{FlowError, NumField};
use crate::dvariety::VectorField;

/// States above this norm count as divergence.
pub const DIVERGENCE_CAP: f64 = 1e8;

/// Samples of a solution over real time.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<[Complex64; 2]>,
    /// Largest accepted local error estimate.
    pub max_local_error: f64,
}

impl Trajectory {
    pub fn last(&self) -> [Complex64; 2] {
        *self
            .states
            .last()
            .expect("trajectories start with the initial state")
    }
}

// Dormand–Prince 5(4) tableau; the field is autonomous, so the nodes are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

type State = [Complex64; 2];

fn axpy(z: State, h: f64, terms: &[(f64, State)]) -> State {
    let mut out = z;
    for &(a, k) in terms {
        if a != 0.0 {
            out[0] += k[0] * (h * a);
            out[1] += k[1] * (h * a);
        }
    }
    out
}

fn norm(z: State) -> f64 {
    z[0].norm().max(z[1].norm())
}

/// One Dormand–Prince step: the fifth-order state and the error estimate.
fn step(field: &NumField, z: State, h: f64) -> (State, f64) {
    let mut k: [State; 7] = [[Complex64::new(0.0, 0.0); 2]; 7];
    for i in 0..7 {
        let terms: Vec<(f64, State)> = (0..i).map(|j| (A[i][j], k[j])).collect();
        k[i] = field.eval(axpy(z, h, &terms));
    }
    let high = axpy(z, h, &(0..7).map(|i| (B5[i], k[i])).collect::<Vec<_>>());
    let low = axpy(z, h, &(0..7).map(|i| (B4[i], k[i])).collect::<Vec<_>>());
    let err = norm([high[0] - low[0], high[1] - low[1]]);
    (high, err)
}

/// Integrates `v` from `z0` over `t ∈ [0, t_end]` with complex state,
/// keeping every accepted step's local error estimate at most `tol`.
pub fn flow(
    v: &VectorField,
    z0: (Complex64, Complex64),
    t_end: f64,
    tol: f64,
) -> Result<Trajectory, FlowError> {
    let field = NumField::new(v)?;
    match run(&field, [z0.0, z0.1], t_end, tol)? {
        (traj, None) => Ok(traj),
        (_, Some(e)) => Err(e),
    }
}

/// The integration loop. A divergence or step underflow ends the run and
/// comes back next to the trajectory computed up to that point.
pub(crate) fn run(
    field: &NumField,
    z0: State,
    t_end: f64,
    tol: f64,
) -> Result<(Trajectory, Option<FlowError>), FlowError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(FlowError::BadTolerance);
    }
    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![z0],
        max_local_error: 0.0,
    };
    let mut t = 0.0;
    let mut z = z0;
    let mut h = (t_end / 100.0).clamp(1e-6, 0.1);
    while t < t_end {
        h = h.min(t_end - t);
        if h <= 1e-14 * (1.0 + t.abs()) {
            if t_end - t <= 1e-12 * (1.0 + t_end.abs()) {
                break;
            }
            return Ok((traj, Some(FlowError::StepUnderflow(t))));
        }
        let (next, err) = step(field, z, h);
        let finite = next[0].is_finite() && next[1].is_finite() && err.is_finite();
        let accepted = finite && err <= tol;
        if accepted {
            t += h;
            z = next;
            traj.times.push(t);
            traj.states.push(z);
            traj.max_local_error = traj.max_local_error.max(err);
            if norm(z) > DIVERGENCE_CAP {
                return Ok((traj, Some(FlowError::Divergence(t))));
            }
        }
        // Standard controller with safety factor; rejected steps at least halve.
        let factor = if !finite {
            0.25
        } else if err == 0.0 {
            5.0
        } else {
            (0.9 * (tol / err).powf(0.2)).clamp(0.2, 5.0)
        };
        h *= if accepted { factor } else { factor.min(0.5) };
    }
    Ok((traj, None))
}
