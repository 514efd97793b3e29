//! Simultaneous complex root refinement (Aberth–Ehrlich).

use num_complex::Complex64;

fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Evaluates with a running bound `sum |a_k| |z|^k`, for relative residuals.
pub fn eval_scaled(c: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut s = 0.0;
    let r = z.norm();
    for a in c.iter().rev() {
        p = p * z + a;
        s = s * r + a.norm();
    }
    (p, s)
}

/// All complex roots of the polynomial with ascending coefficients `coeffs`
/// (leading zeros ignored), repeated according to multiplicity.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    let mut roots = Vec::new();
    // Exact zero roots first.
    let lead_zeros = c.iter().take_while(|a| a.norm() == 0.0).count();
    roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), lead_zeros));
    let c: Vec<Complex64> = c[lead_zeros..].to_vec();
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return roots;
    }
    let lc = c[n];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lc).collect();
    if n == 1 {
        roots.push(-monic[0]);
        return roots;
    }
    // Initial guesses on a circle sized by the geometric mean of the root
    // moduli, offset to break symmetry.
    let radius = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let bound = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let radius = radius.min(bound);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        sum += 1.0 / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * sum;
            let w = if denom.norm() > 0.0 {
                ratio / denom
            } else {
                ratio
            };
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish on the original coefficients.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.norm() > 1e-6 * (1.0 + zi.norm()) {
                break;
            }
            *zi -= step;
        }
    }
    roots.extend(z);
    roots
}

/// Real-coefficient convenience wrapper.
pub fn complex_roots_real(coeffs: &[f64]) -> Vec<Complex64> {
    let c: Vec<Complex64> = coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    complex_roots(&c)
}
