//! Signed reals stored as `(sign, ln |x|)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::special::neumaier_sum;

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogReal {
    sign: i8,
    ln_abs: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal {
        sign: 0,
        ln_abs: f64::NEG_INFINITY,
    };
    pub const ONE: LogReal = LogReal { sign: 1, ln_abs: 0.0 };

    /// Positive value `e^ln`.
    pub fn from_ln(ln: f64) -> Self {
        if ln == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogReal { sign: 1, ln_abs: ln }
        }
    }

    pub fn from_parts(sign: i8, ln_abs: f64) -> Self {
        if sign == 0 || ln_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogReal {
                sign: sign.signum(),
                ln_abs,
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogReal {
                sign: if x > 0.0 { 1 } else { -1 },
                ln_abs: x.abs().ln(),
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude (`-inf` for zero).
    pub fn ln_abs(&self) -> f64 {
        self.ln_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Overflows to `±inf` or underflows to 0 outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.ln_abs.exp()
    }

    pub fn abs(self) -> Self {
        LogReal {
            sign: self.sign.abs(),
            ..self
        }
    }

    pub fn powi(self, e: i64) -> Self {
        if e == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return if e > 0 {
                Self::ZERO
            } else {
                Self::from_parts(1, f64::INFINITY)
            };
        }
        let sign = if self.sign < 0 && e % 2 != 0 { -1 } else { 1 };
        LogReal {
            sign,
            ln_abs: self.ln_abs * e as f64,
        }
    }

    /// Real power of a nonnegative value, with `0^0 = 1`. Returns `None`
    /// for negative bases and for zero raised to a negative power.
    pub fn powf(self, e: f64) -> Option<Self> {
        match self.sign {
            -1 => None,
            0 if e == 0.0 => Some(Self::ONE),
            0 if e > 0.0 => Some(Self::ZERO),
            0 => None,
            _ => Some(LogReal::from_ln(self.ln_abs * e)),
        }
    }

    /// Sum of many terms, shifting by the largest magnitude.
    pub fn sum<I: IntoIterator<Item = LogReal>>(terms: I) -> Self {
        let terms: Vec<LogReal> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        let Some(m) = terms
            .iter()
            .map(|t| t.ln_abs)
            .max_by(|a, b| a.total_cmp(b))
        else {
            return Self::ZERO;
        };
        if m.is_infinite() {
            return terms.into_iter().fold(Self::ZERO, |a, b| a + b);
        }
        let s = neumaier_sum(terms.iter().map(|t| f64::from(t.sign) * (t.ln_abs - m).exp()));
        Self::from_f64(s) * LogReal::from_ln(m)
    }
}

/// `ln Σ e^{x_i}` with a max shift and compensated summation.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + neumaier_sum(xs.iter().map(|x| (x - m).exp())).ln()
}

impl fmt::Debug for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "exp({})", self.ln_abs),
            _ => write!(f, "-exp({})", self.ln_abs),
        }
    }
}

impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, o: LogReal) -> LogReal {
        LogReal::from_parts(self.sign * o.sign, self.ln_abs + o.ln_abs)
    }
}

impl Div for LogReal {
    type Output = LogReal;
    /// Division by zero gives a signed infinity magnitude.
    fn div(self, o: LogReal) -> LogReal {
        if o.sign == 0 {
            return LogReal::from_parts(self.sign, f64::INFINITY);
        }
        LogReal::from_parts(self.sign * o.sign, self.ln_abs - o.ln_abs)
    }
}

impl Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal {
            sign: -self.sign,
            ..self
        }
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, o: LogReal) -> LogReal {
        if self.sign == 0 {
            return o;
        }
        if o.sign == 0 {
            return self;
        }
        let (hi, lo) = if self.ln_abs >= o.ln_abs { (self, o) } else { (o, self) };
        if hi.ln_abs == f64::INFINITY {
            return hi;
        }
        let d = (lo.ln_abs - hi.ln_abs).exp();
        if hi.sign == lo.sign {
            LogReal::from_parts(hi.sign, hi.ln_abs + d.ln_1p())
        } else if d == 1.0 {
            LogReal::ZERO
        } else {
            LogReal::from_parts(hi.sign, hi.ln_abs + (-d).ln_1p())
        }
    }
}

impl Sub for LogReal {
    type Output = LogReal;
    fn sub(self, o: LogReal) -> LogReal {
        self + (-o)
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, o: &LogReal) -> Option<Ordering> {
        match self.sign.cmp(&o.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.ln_abs.partial_cmp(&o.ln_abs),
                _ => o.ln_abs.partial_cmp(&self.ln_abs),
            },
            c => Some(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn arithmetic_small() {
        let a = LogReal::from_f64(3.0);
        let b = LogReal::from_f64(-5.0);
        assert!(close((a * b).to_f64(), -15.0));
        assert!(close((a / b).to_f64(), -0.6));
        assert!(close((a + b).to_f64(), -2.0));
        assert!(close((a - b).to_f64(), 8.0));
        assert!(close(b.powi(3).to_f64(), -125.0));
        assert!(close(a.powf(0.5).unwrap().to_f64(), 3f64.sqrt()));
        assert!((a - a).is_zero());
        assert!(b.powf(0.5).is_none());
        assert_eq!(LogReal::ZERO.powf(0.0), Some(LogReal::ONE));
        assert!(LogReal::ZERO.powf(-1.0).is_none());
    }

    #[test]
    fn huge_values() {
        let big = LogReal::from_ln(1e6);
        let s = big + big;
        assert!(close(s.ln_abs(), 1e6 + 2f64.ln()));
        assert!(big > LogReal::from_ln(999_999.0));
        assert!(-big < LogReal::ZERO);
    }

    #[test]
    fn sums() {
        let xs = [LogReal::from_f64(1.0), LogReal::from_f64(2.0), LogReal::from_f64(-0.5)];
        assert!(close(LogReal::sum(xs).to_f64(), 2.5));
        assert!(LogReal::sum([]).is_zero());
        assert!(close(log_sum_exp(&[0.0, 0.0]), 2f64.ln()));
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }
}
