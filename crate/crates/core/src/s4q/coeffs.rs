//! Matrix coefficients of the scalar and chiral representations and of the
//! `U_q(so(5))` irreducibles `V_l`.
//!
//! Every coefficient that depends on `ε` recomputes it from its own
//! `(l, j, m2)` arguments.

use crate::podles::sqrt_nn;
use crate::qcore::DeformationParam;

/// The `ε ∈ {0, ±½}` with `l + ε - j - m2 ∈ 2ℕ`: zero for integral `l`,
/// `½(-1)^{l+½-j-m2}` otherwise.
pub fn epsilon(l: f64, j: f64, m2: f64) -> f64 {
    let l2 = (2.0 * l).round() as i64;
    if l2 % 2 == 0 {
        return 0.0;
    }
    let k = (l + 0.5 - j - m2).round() as i64;
    if k.rem_euclid(2) == 0 {
        0.5
    } else {
        -0.5
    }
}

/// Coefficients `A, B^±, C^±, D^±` of the scalar representation.
#[derive(Debug, Clone, Copy)]
pub struct ScalarCoefficients {
    pub q: DeformationParam,
}

impl ScalarCoefficients {
    #[inline]
    fn n(&self, x: f64) -> f64 {
        self.q.num(x)
    }

    pub fn a(&self, j: f64, m1: f64) -> f64 {
        self.q.pow(m1 - 1.0)
            * sqrt_nn(
                self.n(j + m1 + 1.0) * self.n(j - m1 + 1.0)
                    / (self.n(2.0 * j + 1.0) * self.n(2.0 * j + 3.0)),
            )
    }

    pub fn b_plus(&self, j: f64, m1: f64) -> f64 {
        self.q.pow(-j + m1 - 0.5)
            * sqrt_nn(
                self.n(j + m1 + 1.0) * self.n(j + m1 + 2.0)
                    / (self.n(2.0 * j + 1.0) * self.n(2.0 * j + 3.0)),
            )
    }

    pub fn b_minus(&self, j: f64, m1: f64) -> f64 {
        -self.q.pow(j + m1 + 0.5)
            * sqrt_nn(
                self.n(j - m1) * self.n(j - m1 - 1.0)
                    / (self.n(2.0 * j - 1.0) * self.n(2.0 * j + 1.0)),
            )
    }

    pub fn c_plus(&self, l: f64, j: f64, m2: f64) -> f64 {
        self.q.pow(m2 - 1.0)
            * sqrt_nn(
                self.n(l + j + m2 + 3.0) * self.n(l + j - m2 + 3.0)
                    / (self.n(2.0 * l + 3.0) * self.n(2.0 * l + 5.0)),
            )
    }

    pub fn c_minus(&self, l: f64, j: f64, m2: f64) -> f64 {
        -self.q.pow(m2 - 1.0)
            * sqrt_nn(
                self.n(l - j + m2) * self.n(l - j - m2)
                    / (self.n(2.0 * l + 1.0) * self.n(2.0 * l + 3.0)),
            )
    }

    pub fn d_plus(&self, l: f64, j: f64, m2: f64) -> f64 {
        self.q.pow(-l + m2 - 1.5)
            * sqrt_nn(
                self.n(l + j + m2 + 3.0) * self.n(l - j + m2 + 2.0)
                    / (self.n(2.0 * l + 3.0) * self.n(2.0 * l + 5.0)),
            )
    }

    pub fn d_minus(&self, l: f64, j: f64, m2: f64) -> f64 {
        self.q.pow(l + m2 + 1.5)
            * sqrt_nn(
                self.n(l - j - m2) * self.n(l + j - m2 + 1.0)
                    / (self.n(2.0 * l + 1.0) * self.n(2.0 * l + 3.0)),
            )
    }
}

/// Coefficients `A^{+,0}, B^{±,0}, C^{±,0}, H^{+,0}, D^{±,0}` of the chiral
/// representations.
#[derive(Debug, Clone, Copy)]
pub struct ChiralCoefficients {
    pub q: DeformationParam,
}

impl ChiralCoefficients {
    #[inline]
    fn n(&self, x: f64) -> f64 {
        self.q.num(x)
    }

    #[inline]
    fn p(&self, x: f64) -> f64 {
        self.q.pow(x)
    }

    pub fn a_plus(&self, j: f64, m1: f64) -> f64 {
        self.p(m1 - 1.0) * sqrt_nn(self.n(j + m1 + 1.0) * self.n(j - m1 + 1.0))
            / self.n(2.0 * j + 2.0)
    }

    pub fn a_zero(&self, j: f64, m1: f64) -> f64 {
        self.p(-2.0) * (self.p(j + m1 + 1.0) * self.n(2.0) * self.n(j - m1) - self.n(2.0 * j))
            / (self.n(2.0 * j) * self.n(2.0 * j + 2.0))
    }

    pub fn b_plus(&self, j: f64, m1: f64) -> f64 {
        self.p(-j + m1 - 0.5) * sqrt_nn(self.n(j + m1 + 1.0) * self.n(j + m1 + 2.0))
            / self.n(2.0 * j + 2.0)
    }

    pub fn b_zero(&self, j: f64, m1: f64) -> f64 {
        let q = self.q.value();
        (1.0 + q * q) * self.p(m1 - 0.5) * sqrt_nn(self.n(j - m1) * self.n(j + m1 + 1.0))
            / (self.n(2.0 * j) * self.n(2.0 * j + 2.0))
    }

    pub fn b_minus(&self, j: f64, m1: f64) -> f64 {
        -self.p(j + m1 + 0.5) * sqrt_nn(self.n(j - m1) * self.n(j - m1 - 1.0)) / self.n(2.0 * j)
    }

    pub fn c_plus(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        -self.p(m2 - 1.0 - e) * sqrt_nn(self.n(l + j + m2 + 3.0 + e) * self.n(l + j - m2 + 3.0 - e))
            / self.n(2.0 * l + 4.0)
    }

    pub fn c_zero(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        self.n(4.0 * e)
            * self.p(2.0 * e * l + m2 - 1.0 + 3.0 * e)
            * sqrt_nn(self.n(l + 0.5 + j - 2.0 * e * m2 + 2.0) * self.n(l + 0.5 - j - 2.0 * e * m2))
            / (self.n(2.0 * l + 2.0) * self.n(2.0 * l + 4.0))
    }

    pub fn c_minus(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        -self.p(m2 - 1.0 + e) * sqrt_nn(self.n(l - j + m2 - e) * self.n(l - j - m2 + e))
            / self.n(2.0 * l + 2.0)
    }

    pub fn h_plus(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        self.p(m2 - 1.0 + e * (2.0 * j + 1.0))
            * sqrt_nn(
                self.n(l + 2.0 * e * j - m2 + 2.0 + e) * self.n(l - 2.0 * e * j + m2 + 2.0 - e),
            )
            / self.n(2.0 * l + 4.0)
    }

    pub fn h_zero(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        let t = e * (2.0 * j + 1.0);
        (self.n(l - t - m2 + 1.0) * self.n(l - t + m2 + 2.0)
            - self.p(-2.0) * self.n(l + t - m2 + 2.0) * self.n(l + t + m2 + 1.0))
            / (self.n(2.0 * l + 2.0) * self.n(2.0 * l + 4.0))
    }

    pub fn d_plus(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        self.p(-l + m2 - 1.5) * sqrt_nn(self.n(l + j + m2 + 3.0 + e) * self.n(l - j + m2 + 2.0 - e))
            / self.n(2.0 * l + 4.0)
    }

    pub fn d_zero(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        self.n(2.0)
            * self.p(m2 + 0.5)
            * sqrt_nn(
                self.n(l - 2.0 * e * j - m2 + 1.0 - e) * self.n(l - 2.0 * e * j + m2 + 2.0 - e),
            )
            / (self.n(2.0 * l + 2.0) * self.n(2.0 * l + 4.0))
    }

    pub fn d_minus(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        -self.p(l + m2 + 1.5) * sqrt_nn(self.n(l - j - m2 + e) * self.n(l + j - m2 + 1.0 - e))
            / self.n(2.0 * l + 2.0)
    }
}

/// Coefficients `a_l, b_l, c_l` of the `E_2` action on `V_l`.
#[derive(Debug, Clone, Copy)]
pub struct So5Coefficients {
    pub q: DeformationParam,
}

impl So5Coefficients {
    #[inline]
    fn n(&self, x: f64) -> f64 {
        self.q.num(x)
    }

    pub fn a(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        let ae = e.abs();
        sqrt_nn(
            self.n(l - j - m2 + e) * self.n(l + j + m2 + 3.0 + e)
                / (self.n(2.0 * (j + ae) + 1.0) * self.n(2.0 * (j - ae) + 3.0)),
        ) / self.n(2.0)
    }

    pub fn b(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        if e == 0.0 {
            return 0.0;
        }
        let t = e * (2.0 * j + 1.0);
        2.0 * e.abs() * sqrt_nn(self.n(l - t - m2 + 1.0) * self.n(l - t + m2 + 2.0))
            / (self.n(2.0 * j) * self.n(2.0 * j + 2.0))
    }

    pub fn c(&self, l: f64, j: f64, m2: f64) -> f64 {
        let e = epsilon(l, j, m2);
        let ae = e.abs();
        let sign = if e == 0.0 { 1.0 } else { -1.0 };
        sign * sqrt_nn(
            self.n(l - j + m2 + 2.0 - e) * self.n(l + j - m2 + 1.0 - e)
                / (self.n(2.0 * (j + ae) - 1.0) * self.n(2.0 * (j - ae) + 1.0)),
        ) / self.n(2.0)
    }
}
