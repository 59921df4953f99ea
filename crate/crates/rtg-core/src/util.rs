//! Small numeric helpers shared by the bound modules.

use alloc::format;
use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Human-readable decimal rendering of an exact rational. Values in
/// comfortable `f64` range print as plain decimals; astronomically large
/// or tiny values fall back to scientific notation derived from the big
/// integers themselves, so nothing silently saturates to `inf`.
pub fn decimal_approx(value: &BigRational) -> String {
    if value.is_zero() {
        return String::from("0");
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let magnitude = value.abs();
    if let Some(f) = magnitude.to_f64() {
        if f.is_finite() && (1e-300..=1e300).contains(&f) {
            return if (1e-6..1e16).contains(&f) {
                format!("{sign}{f}")
            } else {
                format!("{sign}{f:e}")
            };
        }
    }
    // Scale into ~18 significant decimal digits using exact integer
    // arithmetic, then reassemble the exponent.
    let num = magnitude.numer();
    let den = magnitude.denom();
    let exp10 = libm::floor(
        (num.bits() as i64 - den.bits() as i64) as f64 * core::f64::consts::LOG10_2,
    ) as i64;
    let digits: i64 = 18;
    let shift = digits - exp10;
    let scaled: BigInt = if shift >= 0 {
        num * BigInt::from(10u32).pow(shift as u32) / den
    } else {
        num / (den * BigInt::from(10u32).pow((-shift) as u32))
    };
    let s = scaled.to_string();
    let adjusted_exp = exp10 + (s.len() as i64 - 1) - digits;
    let mantissa_head = &s[..1];
    let mantissa_tail = &s[1..s.len().min(13)];
    format!("{sign}{mantissa_head}.{mantissa_tail}e{adjusted_exp}")
}
