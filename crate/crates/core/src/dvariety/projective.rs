use std::fmt;

use super::VectorField;
use crate::symweb::SymForm;
use crate::QPoly;

/// `t' = q0 + q1 t + q2 t^2` with coefficients in the base variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Riccati {
    var: String,
    q: [QPoly; 3],
}

impl Riccati {
    pub fn new(var: &str, q0: QPoly, q1: QPoly, q2: QPoly) -> Self {
        Riccati {
            var: var.to_string(),
            q: [q0, q1, q2],
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn q0(&self) -> &QPoly {
        &self.q[0]
    }

    pub fn q1(&self) -> &QPoly {
        &self.q[1]
    }

    pub fn q2(&self) -> &QPoly {
        &self.q[2]
    }

    /// The right-hand side as a polynomial in the base variables and `t`.
    pub fn rhs(&self) -> QPoly {
        let t = QPoly::var(&self.var);
        &(&self.q[0] + &(&self.q[1] * &t)) + &(&self.q[2] * &t.pow(2))
    }
}

/// Ascending powers of the slope, so the rotation reads `t1' = 1 + t1^2`.
impl fmt::Display for Riccati {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = Vec::new();
        for (k, c) in self.q.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, k),
            };
            let text = c.to_string();
            let piece = if k == 0 {
                text
            } else if c.is_constant() && text == "1" {
                power
            } else if c.is_constant() && text == "-1" {
                format!("-{power}")
            } else if c.len() == 1 {
                format!("{text}*{power}")
            } else {
                format!("({text})*{power}")
            };
            pieces.push(piece);
        }
        write!(f, "{}' = ", self.var)?;
        if pieces.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in pieces.iter().enumerate() {
            match (i, p.strip_prefix('-')) {
                (0, _) => write!(f, "{p}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {p}")?,
            }
        }
        Ok(())
    }
}

/// The lift of `v` to the bundle of tangent directions, in the two slope
/// charts `t1 = dx/dy` and `t2 = dy/dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivizedField {
    base: VectorField,
    chart1: Riccati,
    chart2: Riccati,
}

pub fn projectivize(v: &VectorField) -> ProjectivizedField {
    let [[ax, ay], [bx, by]] = v.jacobian();
    let chart1 = Riccati::new("t1", ay.clone(), &ax - &by, -&bx);
    let chart2 = Riccati::new("t2", bx, &by - &ax, -&ay);
    ProjectivizedField {
        base: v.clone(),
        chart1,
        chart2,
    }
}

impl ProjectivizedField {
    pub fn base(&self) -> &VectorField {
        &self.base
    }

    pub fn chart1(&self) -> &Riccati {
        &self.chart1
    }

    pub fn chart2(&self) -> &Riccati {
        &self.chart2
    }

    /// Substituting `t1 = 1/t2` into chart 1 and multiplying by `-t2^2`
    /// must give chart 2.
    pub fn overlap_holds(&self) -> bool {
        let t2 = QPoly::var("t2");
        // t2^2 R1(1/t2) read off by reversing the coefficients.
        let c = &self.chart1;
        let reversed = &(&c.q2().clone() + &(c.q1() * &t2)) + &(c.q0() * &t2.pow(2));
        -&reversed == self.chart2.rhs()
    }

    /// The lifted derivation on `(x, y, t1)`.
    pub fn apply_chart1(&self, p: &QPoly) -> QPoly {
        self.apply(&self.chart1, p)
    }

    /// The lifted derivation on `(x, y, t2)`.
    pub fn apply_chart2(&self, p: &QPoly) -> QPoly {
        self.apply(&self.chart2, p)
    }

    fn apply(&self, chart: &Riccati, p: &QPoly) -> QPoly {
        let base = super::apply_derivation(&self.base, p);
        &base + &(&chart.rhs() * &p.partial(chart.var()))
    }
}

/// Equation of the direction divisor of a form in chart 1: `ω(t1, 1)`.
pub fn divisor_chart1(a: &SymForm) -> QPoly {
    let r = a.degree() as u32;
    let t = QPoly::var("t1");
    a.coeffs()
        .iter()
        .enumerate()
        .fold(QPoly::zero(), |acc, (i, c)| {
            &acc + &(c * &t.pow(r - i as u32))
        })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{c, cubic, radial, rotation, x, y};
    use super::super::{invariance_certificate, VectorField};
    use super::*;
    use crate::polycore::exact_div;

    #[test]
    fn rotation_and_radial_charts() {
        let p = projectivize(&rotation());
        assert_eq!(p.chart1().to_string(), "t1' = 1 + t1^2");
        assert_eq!(p.chart2().to_string(), "t2' = -1 - t2^2");
        assert!(p.overlap_holds());
        let p = projectivize(&radial());
        assert_eq!(p.chart1().to_string(), "t1' = 0");
        assert!(p.chart2().rhs().is_zero());
    }

    #[test]
    fn display_with_polynomial_coefficients() {
        let p = projectivize(&cubic());
        // a_x - b_y = 3x^2 - 2x - 3y^2 + 2y, a_y = b_x = 0.
        assert_eq!(
            p.chart1().to_string(),
            "t1' = (3*x^2 - 3*y^2 - 2*x + 2*y)*t1"
        );
        let v = VectorField::new(&x() * &y(), c(2)).unwrap();
        assert_eq!(projectivize(&v).chart1().to_string(), "t1' = x + y*t1");
    }

    #[test]
    fn invariant_web_gives_invariant_divisor() {
        let v = cubic();
        let w = super::super::foliation_of(&v).unwrap();
        assert!(invariance_certificate(&v, &w).is_some());
        let phi = divisor_chart1(w.form());
        let lifted = projectivize(&v).apply_chart1(&phi);
        assert!(exact_div(&lifted, &phi).unwrap().is_some());
        // dx + x dy is not invariant under (1, 0), and neither is its divisor.
        let v = VectorField::new(c(1), QPoly::zero()).unwrap();
        let phi = divisor_chart1(&SymForm::linear(c(1), x()));
        assert!(exact_div(&projectivize(&v).apply_chart1(&phi), &phi)
            .unwrap()
            .is_none());
    }
}
