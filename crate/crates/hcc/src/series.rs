//! Truncated power series about the origin with complex coefficients.
//!
//! A [`PowerSeries`] stores the Taylor coefficients `c_0..c_N` of an analytic
//! function on the unit disk together with the truncation order `N`. Binary
//! operations truncate to the shorter operand; every construction in this
//! crate controls `N` globally, so nothing is lost by doing so.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncated Taylor series `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from coefficients `c_0..c_N`.
    ///
    /// Panics if the coefficient list is empty or contains a non-finite
    /// value; coefficients are produced by recurrences that keep them finite,
    /// so a NaN here is a programming error, not a data error.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        assert!(
            coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "non-finite series coefficient"
        );
        PowerSeries { coeffs }
    }

    /// The zero series truncated at `trunc_order`.
    pub fn zero(trunc_order: usize) -> Self {
        PowerSeries { coeffs: vec![Complex64::ZERO; trunc_order + 1] }
    }

    /// Truncation order `N`; the series carries `N + 1` coefficients.
    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation at `z` with a geometric tail estimate.
    ///
    /// The tail bound extrapolates the trailing coefficients geometrically:
    /// with `q` the largest per-index growth ratio `|c_{n+1}/c_n| |z|`
    /// observed over the last ten indices, the discarded tail is bounded by
    /// `|c_N| |z|^N q / (1 - q)`. Ratios across runs of exactly-zero
    /// coefficients (series in `z^2` have them at every other index) are
    /// taken per index step, and the leading factor uses the last nonzero
    /// term. Reports infinity when `q >= 1`.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let r = z.norm();
        if !(r < 1.0) {
            return Err(Error::OutsideDisk(r));
        }
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        if !(acc.re.is_finite() && acc.im.is_finite()) {
            return Err(Error::NonFinite("series evaluation".into()));
        }
        Ok((acc, self.tail_bound(r)))
    }

    fn tail_bound(&self, r: f64) -> f64 {
        let n_last = self.trunc_order();
        if r == 0.0 {
            return 0.0;
        }
        // magnitudes of the terms |c_n| r^n over the trailing window
        let window = 10usize.min(n_last);
        let lo = n_last - window;
        let mut q: f64 = 0.0;
        let mut prev: Option<(usize, f64)> = None;
        let mut last_term = 0.0;
        let mut last_idx = n_last;
        for n in lo..=n_last {
            let t = self.coeffs[n].norm() * r.powi(n as i32);
            if t > 0.0 {
                if let Some((j, tj)) = prev {
                    q = q.max((t / tj).powf(1.0 / (n - j) as f64));
                }
                prev = Some((n, t));
                last_term = t;
                last_idx = n;
            }
        }
        if last_term == 0.0 {
            // trailing window is identically zero; nothing to extrapolate
            return 0.0;
        }
        if q >= 1.0 {
            return f64::INFINITY;
        }
        last_term * q.powi((n_last + 1 - last_idx) as i32) / (1.0 - q)
    }

    /// Term-by-term derivative; truncation order drops by one.
    pub fn derivative(&self) -> PowerSeries {
        if self.coeffs.len() == 1 {
            return PowerSeries::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * n as f64)
            .collect();
        PowerSeries::new(coeffs)
    }

    /// Term-by-term antiderivative with zero constant term; order grows by one.
    pub fn antiderivative(&self) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / (n + 1) as f64),
        );
        PowerSeries::new(coeffs)
    }

    /// Coefficient-wise (Hadamard) product, truncated to the shorter operand.
    pub fn hadamard(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeffs[i] * other.coeffs[i]).collect();
        PowerSeries::new(coeffs)
    }

    /// Coefficient-wise sum, truncated to the shorter operand.
    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeffs[i] + other.coeffs[i]).collect();
        PowerSeries::new(coeffs)
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: Complex64) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `z^k`; truncation order grows by `k`.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let mut coeffs = vec![Complex64::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        PowerSeries::new(coeffs)
    }

    /// Re-truncates to `order`, padding with zeros if the series is shorter.
    pub fn truncated(&self, order: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::ZERO);
        PowerSeries::new(coeffs)
    }
}

/// Geometric tail estimate for a sequence of non-negative term magnitudes.
///
/// Same extrapolation as the series tail bound, applied to an arbitrary
/// partial-sum term sequence (used by the coefficient-sum criteria when no
/// closed form is available).
pub(crate) fn geometric_tail(terms: &[f64]) -> f64 {
    if terms.is_empty() {
        return 0.0;
    }
    let n_last = terms.len() - 1;
    let window = 10usize.min(n_last);
    let lo = n_last - window;
    let mut q: f64 = 0.0;
    let mut prev: Option<(usize, f64)> = None;
    let mut last_term = 0.0;
    let mut last_idx = n_last;
    for (n, &t) in terms.iter().enumerate().take(n_last + 1).skip(lo) {
        if t > 0.0 {
            if let Some((j, tj)) = prev {
                q = q.max((t / tj).powf(1.0 / (n - j) as f64));
            }
            prev = Some((n, t));
            last_term = t;
            last_idx = n;
        }
    }
    if last_term == 0.0 {
        return 0.0;
    }
    if q >= 1.0 {
        return f64::INFINITY;
    }
    last_term * q.powi((n_last + 1 - last_idx) as i32) / (1.0 - q)
}
