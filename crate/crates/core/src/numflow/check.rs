use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::integrate::run;
use super::{FlowError, NumField, NumPoly};
use crate::dvariety::VectorField;
use crate::polycore::numroots::complex_roots;
use crate::QPoly;

/// Attempts at finding a start point before giving up.
const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub start: (Complex64, Complex64),
    /// Largest `|P| / (1 + |z|^deg P)` along the computed trajectory.
    pub worst_residual: f64,
    /// Time actually reached; short of `T` only after a divergence.
    pub reached: f64,
    pub diverged: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowCheckReport {
    pub trials: Vec<TrialResult>,
    pub worst_residual: f64,
    pub passed: bool,
}

/// Flows numeric points of `P = 0` for time `T` and checks that they stay
/// on the curve within `tol`, relative to `1 + |state|^deg P`.
///
/// Start points fix a random real coordinate in `[-1, 1]` and solve the
/// other from the slice. Trajectories that blow up are checked on the
/// part computed before the divergence.
pub fn invariance_flow_check(
    v: &VectorField,
    p: &QPoly,
    trials: usize,
    t_end: f64,
    tol: f64,
    seed: u64,
) -> Result<FlowCheckReport, FlowError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(FlowError::BadTolerance);
    }
    if p.is_constant() {
        return Err(FlowError::ConstantPolynomial);
    }
    let field = NumField::new(v)?;
    let curve = NumPoly::new(p)?;
    let deg = curve.degree() as i32;
    let residual = |z: [Complex64; 2]| {
        let n = z[0].norm().max(z[1].norm());
        curve.eval(z[0], z[1]).norm() / (1.0 + n.powi(deg))
    };
    let int_tol = (tol * 1e-6).max(1e-13);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let start = sample_point(&curve, p, &mut rng)?;
        let (traj, stop) = run(&field, start, t_end, int_tol)?;
        let worst = traj.states.iter().map(|&z| residual(z)).fold(0.0, f64::max);
        out.push(TrialResult {
            start: (start[0], start[1]),
            worst_residual: worst,
            reached: *traj.times.last().expect("nonempty"),
            diverged: stop.is_some(),
            passed: worst <= tol,
        });
    }
    let worst_residual = out.iter().map(|t| t.worst_residual).fold(0.0, f64::max);
    Ok(FlowCheckReport {
        passed: out.iter().all(|t| t.passed),
        trials: out,
        worst_residual,
    })
}

fn sample_point(
    curve: &NumPoly,
    p: &QPoly,
    rng: &mut ChaCha8Rng,
) -> Result<[Complex64; 2], FlowError> {
    for attempt in 0..MAX_ATTEMPTS {
        let fixed = Complex64::new(rng.gen_range(-1.0..=1.0), 0.0);
        let slice_y = p.involves("y") && (attempt % 2 == 0 || !p.involves("x"));
        let coeffs = if slice_y {
            curve.slice_in_y(fixed)
        } else {
            curve.slice_in_x(fixed)
        };
        let roots = complex_roots(&coeffs);
        if roots.is_empty() {
            continue;
        }
        let r = roots[rng.gen_range(0..roots.len())];
        let z = if slice_y { [fixed, r] } else { [r, fixed] };
        if z[0].is_finite() && z[1].is_finite() && curve.relative_residual(z[0], z[1]) < 1e-12 {
            return Ok(z);
        }
    }
    Err(FlowError::NoPointOnCurve)
}
