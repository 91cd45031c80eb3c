use crate::error::{Error, Result};

/// Composite Simpson rule over samples taken at uniform spacing `h`.
/// Weights `(1, 4, 2, ..., 4, 1) * h / 3`.
pub fn simpson(values: &[f64], h: f64) -> Result<f64> {
    let n = values.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::BadSampleCount(n));
    }
    if !h.is_finite() || h < 0.0 {
        return Err(Error::OutOfRange {
            name: "h",
            value: h,
        });
    }
    let inner: f64 = values[1..n - 1]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    Ok(h / 3.0 * (values[0] + inner + values[n - 1]))
}
