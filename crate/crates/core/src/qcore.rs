//! q-numbers, q-factorials, half-integers and the Riemann zeta function.
//!
//! All quantities are evaluated in binary64 directly from their defining
//! formulas. Half-integers are stored doubled so label arithmetic stays exact.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The deformation parameter `q`, validated to lie in the open interval (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationParam {
    q: f64,
}

impl DeformationParam {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(Self { q })
        } else {
            Err(Error::InvalidQ(q))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.q
    }

    /// The q-analogue `[x]` of a real number.
    #[inline]
    pub fn num(self, x: f64) -> f64 {
        q_number(x, self)
    }

    /// `q^x`.
    #[inline]
    pub fn pow(self, x: f64) -> f64 {
        self.q.powf(x)
    }
}

/// A half-integer `x`, stored as the integer `2x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    pub twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    #[inline]
    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    #[inline]
    pub const fn from_int(n: i32) -> Self {
        Self { twice: 2 * n }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    #[inline]
    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    #[inline]
    pub fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }

    /// True when `self - other` is an integer.
    #[inline]
    pub fn same_parity(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    /// Sign with the convention `sign(0) = +1`.
    #[inline]
    pub fn sign(self) -> i32 {
        if self.twice < 0 {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3"`, `"-1/2"`, `"1.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => Err(bad()),
            }
        } else if let Ok(n) = s.parse::<i32>() {
            Ok(HalfInt::from_int(n))
        } else {
            let x: f64 = s.parse().map_err(|_| bad())?;
            let twice = (2.0 * x).round();
            if (2.0 * x - twice).abs() > 1e-12 {
                return Err(bad());
            }
            Ok(HalfInt::from_twice(twice as i32))
        }
    }
}

/// `[x] = (q^x - q^{-x}) / (q - q^{-1})`.
#[inline]
pub fn q_number(x: f64, q: DeformationParam) -> f64 {
    let q = q.q;
    (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn q_factorial(n: i64, q: DeformationParam) -> Result<f64> {
    if n < 0 {
        return Err(Error::Domain(format!("q-factorial of negative n={n}")));
    }
    Ok((1..=n).map(|k| q_number(k as f64, q)).product())
}

/// `[n]!! = [n][n-2]...`, ending at `[1]` or `[2]`, with `[0]!! = [-1]!! = 1`.
pub fn q_double_factorial(n: i64, q: DeformationParam) -> Result<f64> {
    if n < -1 {
        return Err(Error::Domain(format!("q-double factorial of n={n} < -1")));
    }
    let mut acc = 1.0;
    let mut k = n;
    while k > 0 {
        acc *= q_number(k as f64, q);
        k -= 2;
    }
    Ok(acc)
}

/// The q-binomial `[n]! / ([m]! [n-m]!)`.
pub fn q_binomial(n: i64, m: i64, q: DeformationParam) -> Result<f64> {
    if m < 0 || n < 0 || m > n {
        return Err(Error::Domain(format!(
            "q-binomial needs 0 <= m <= n, got n={n}, m={m}"
        )));
    }
    Ok(q_factorial(n, q)? / (q_factorial(m, q)? * q_factorial(n - m, q)?))
}

/// Bernoulli numbers `B_2, B_4, ..., B_20`.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Riemann zeta function for real `s > 1`, by Euler-Maclaurin summation.
pub fn zeta_closed(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Domain(format!("zeta needs s > 1, got {s}")));
    }
    const N: usize = 24;
    let nf = N as f64;
    let head: f64 = (1..N).map(|n| (n as f64).powf(-s)).sum();
    let mut tail = nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // rising factorial s(s+1)...(s+2k-2) / (2k)!, times N^{-s-2k+1}
    let mut coef = s / 2.0;
    let mut power = nf.powf(-s - 1.0);
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = k as f64 + 1.0;
        tail += b * coef * power;
        coef *= (s + 2.0 * k - 1.0) * (s + 2.0 * k) / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        power /= nf * nf;
    }
    Ok(head + tail)
}
