//! Snap-to-grid equality convention for floating-point signatures.
//!
//! A value `x` is represented by its tick count `round(x / tol)` (halves
//! away from zero), so quantization is odd: `ticks(-x) == -ticks(x)`.
//!
//! Exact voltages are rationals, and dyadic ones (`k / 512`, ...) fall right
//! on half ticks of decimal grids. Rounding noise would scatter such values
//! to either side, so anything within [`HALF_TICK_BAND`] of a half tick is
//! treated as the half itself.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuantizeError {
    #[error("cannot quantize non-finite value {0}")]
    NonFinite(f64),
    #[error("value {value} is too large for tolerance {tol}")]
    OutOfRange { value: f64, tol: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
}

/// Grid spacing used to compare voltages and currents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Tolerance(f64);

// never NaN: construction rejects non-finite values
impl Eq for Tolerance {}

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// |ticks| beyond this could not be told apart from neighbours in an f64.
const MAX_TICKS: f64 = 9.0e15;

/// Distance from a half tick, in ticks, that still rounds as an exact half.
pub const HALF_TICK_BAND: f64 = 1e-4;

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOLERANCE)
    }
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(DEFAULT_TOLERANCE);

    pub fn new(tol: f64) -> Result<Self, QuantizeError> {
        if tol > 0.0 && tol.is_finite() {
            Ok(Self(tol))
        } else {
            Err(QuantizeError::InvalidTolerance(tol))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn ticks(self, x: f64) -> Result<i64, QuantizeError> {
        if !x.is_finite() {
            return Err(QuantizeError::NonFinite(x));
        }
        let r = x / self.0;
        let (mag, floor) = (r.abs(), r.abs().floor());
        let t = if (mag - floor - 0.5).abs() < HALF_TICK_BAND {
            (floor + 1.0).copysign(r)
        } else {
            r.round()
        };
        if t.abs() > MAX_TICKS {
            return Err(QuantizeError::OutOfRange { value: x, tol: self.0 });
        }
        Ok(t as i64)
    }

    /// Number of decimals when the grid is `10^-k`, else `None`.
    fn decimal_places(self) -> Option<u32> {
        let k = -self.0.log10().round();
        if !(0.0..=18.0).contains(&k) {
            return None;
        }
        let k = k as u32;
        (self.0 == 10f64.powi(-(k as i32))).then_some(k)
    }

    /// The grid value `ticks · tol` as a double. For decimal grids this is
    /// the double nearest the exact decimal.
    pub fn value_of(self, ticks: i64) -> f64 {
        match self.decimal_places() {
            Some(k) => ticks as f64 / 10f64.powi(k as i32),
            None => ticks as f64 * self.0,
        }
    }

    /// Canonical decimal text of a grid value: exact for decimal grids,
    /// 17 significant digits otherwise.
    pub fn decimal(self, ticks: i64) -> String {
        let mut out = String::new();
        self.decimal_writer().write(ticks, &mut out);
        out
    }

    /// Appends [`Tolerance::decimal`] text to a buffer without per-value
    /// allocation; for bulk serialization.
    pub fn decimal_writer(self) -> DecimalWriter {
        DecimalWriter {
            tol: self,
            places: self.decimal_places(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DecimalWriter {
    tol: Tolerance,
    places: Option<u32>,
}

impl DecimalWriter {
    pub fn write(&self, ticks: i64, out: &mut String) {
        match self.places {
            Some(k) => exact_decimal(ticks, k, out),
            None => out.push_str(&format_f64(self.tol.value_of(ticks))),
        }
    }
}

fn exact_decimal(ticks: i64, places: u32, out: &mut String) {
    // i64 has at most 19 digits; room for a leading "0." and padding
    let mut digits = [b'0'; 40];
    let mut mag = ticks.unsigned_abs();
    let mut len = 0;
    while mag > 0 {
        digits[len] = b'0' + (mag % 10) as u8;
        mag /= 10;
        len += 1;
    }
    // digits[..] holds the number least significant first
    let places = places as usize;
    let len = len.max(places + 1);
    let mut frac_end = 0;
    while frac_end < places && digits[frac_end] == b'0' {
        frac_end += 1;
    }
    if ticks < 0 {
        out.push('-');
    }
    for i in (places..len).rev() {
        out.push(digits[i] as char);
    }
    if frac_end < places {
        out.push('.');
        for i in (frac_end..places).rev() {
            out.push(digits[i] as char);
        }
    }
}

/// Decimal text with 17 significant digits, which round-trips any double.
/// Plain notation for magnitudes in `[1e-5, 1e17)`, scientific otherwise.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..17).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

/// `round(x / tol) · tol`; `quantize(-x) == -quantize(x)` and zero maps to
/// `+0.0`.
pub fn quantize(x: f64, tol: f64) -> Result<f64, QuantizeError> {
    let tol = Tolerance::new(tol)?;
    Ok(tol.value_of(tol.ticks(x)?) + 0.0)
}
