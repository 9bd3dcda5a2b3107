//! The piecewise bound f(k, l, r) on the number of trees on `0..k` that
//! induce a fixed `r`-edge forest on `0..l`.

use std::f64::consts::E;

use crate::error::{Error, Result};
use crate::moments::LogReal;

/// Which formula of the piecewise bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FBranch {
    /// `r < l/2`: `2^r`
    Low,
    /// `l/2 <= r < l(1 - 1/e)`: `3^(2r-l) 2^(2l-3r)`
    Mid,
    /// `r >= l(1 - 1/e)`: `(l/(l-r))^(l-r)`
    High,
}

// e is bracketed by these over 10^15.
const E_LO: u128 = 2_718_281_828_459_045;
const E_HI: u128 = 2_718_281_828_459_046;
const E_SCALE: u128 = 1_000_000_000_000_000;

impl FBranch {
    /// Exact branch selection. `r < l(1 - 1/e)` is `e (l - r) > l`.
    pub fn select(l: u64, r: u64) -> Result<FBranch> {
        if 2 * r < l {
            return Ok(FBranch::Low);
        }
        let (l, s) = (u128::from(l), u128::from(l - r));
        if E_LO * s > l * E_SCALE {
            Ok(FBranch::Mid)
        } else if E_HI * s <= l * E_SCALE {
            Ok(FBranch::High)
        } else {
            Err(Error::Domain(format!(
                "cannot separate r = {r} from l(1 - 1/e) with l = {l}"
            )))
        }
    }

    /// Branch for real arguments, by floating-point comparison.
    pub fn select_real(l: f64, r: f64) -> FBranch {
        if r < l / 2.0 {
            FBranch::Low
        } else if r < l * (1.0 - 1.0 / E) {
            FBranch::Mid
        } else {
            FBranch::High
        }
    }
}

/// Nonnegative rational `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn check_domain(k: u64, l: u64, r: u64) -> Result<()> {
    if l == 0 || r >= l || l >= k {
        return Err(Error::Domain(format!(
            "f(k, l, r) needs 0 <= r <= l - 1 < k, got k = {k}, l = {l}, r = {r}"
        )));
    }
    Ok(())
}

fn overflow() -> Error {
    Error::Domain("exact value exceeds 128 bits".into())
}

fn pow(b: u128, e: u64) -> Result<u128> {
    b.checked_pow(u32::try_from(e).map_err(|_| overflow())?)
        .ok_or_else(overflow)
}

/// Exact value of f(k, l, r). Zero powers are taken as 1.
pub fn f_exact(k: u64, l: u64, r: u64) -> Result<Ratio> {
    check_domain(k, l, r)?;
    let common = pow(u128::from(l + 1), k - l - 1)?
        .checked_mul(pow(u128::from(k - l), k - r - 2)?)
        .ok_or_else(overflow)?;
    let (num, den) = match FBranch::select(l, r)? {
        FBranch::Low => (pow(2, r)?, 1),
        FBranch::Mid => (pow(3, 2 * r - l)?.checked_mul(pow(2, 2 * l - 3 * r)?).ok_or_else(overflow)?, 1),
        FBranch::High => (pow(u128::from(l), l - r)?, pow(u128::from(l - r), l - r)?),
    };
    Ok(Ratio {
        num: num.checked_mul(common).ok_or_else(overflow)?,
        den,
    })
}

/// f(k, l, r) in the log domain.
pub fn f_piecewise(k: u64, l: u64, r: u64) -> Result<LogReal> {
    check_domain(k, l, r)?;
    let branch = FBranch::select(l, r)?;
    Ok(LogReal::from_ln(ln_f_branch(branch, k as f64, l as f64, r as f64)))
}

/// `ln f(k, l, r)` at real `r`, branch chosen in floating point.
pub fn ln_f_real(k: f64, l: f64, r: f64) -> f64 {
    ln_f_branch(FBranch::select_real(l, r), k, l, r)
}

fn ln_f_branch(branch: FBranch, k: f64, l: f64, r: f64) -> f64 {
    let common = xlny(k - l - 1.0, l + 1.0) + xlny(k - r - 2.0, k - l);
    let head = match branch {
        FBranch::Low => r * 2f64.ln(),
        FBranch::Mid => (2.0 * r - l) * 3f64.ln() + (2.0 * l - 3.0 * r) * 2f64.ln(),
        FBranch::High => (l - r) * (l / (l - r)).ln(),
    };
    head + common
}

/// `x ln y` with `0 ln y = 0`.
fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}
