//! Construction and evaluation of the two hypergeometric harmonic-map
//! families.
//!
//! Both families share the parameter tuple `(a, b, m, alpha)` and produce a
//! normalized map `f = h + conj(g)` with dilatation `g'/h' = alpha z^m`:
//!
//! - `T1`: `h = z F(a,b;a+b;z)`, co-analytic part built from the Hadamard
//!   product `F(a,b;a+b;.) * F(2,m+1;m+2;.)` shifted by `z^{m+1}/(m+1)`.
//! - `T2`: `h = z F(a,b;a+b;z^2)` (odd series), co-analytic part from the
//!   same product with the `z^2`-series sampled at matching power indices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::PowerSeries;
use crate::specfun::{hyp2f1_coeffs, HypParams};

/// Which of the two construction families a map belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Full series: `h(z) = z F(a,b;a+b;z)`.
    T1,
    /// Odd series: `h(z) = z F(a,b;a+b;z^2)`.
    T2,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::T1 => write!(f, "t1"),
            Variant::T2 => write!(f, "t2"),
        }
    }
}

/// Parameter tuple of a constructed map.
///
/// `(a, b)` must be real positive or a conjugate pair with `Re a > 0`;
/// `m >= 1` is the dilatation power and `trunc_order >= m + 2` the series
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionParams {
    pub a: Complex64,
    pub b: Complex64,
    pub m: u32,
    pub alpha: Complex64,
    pub variant: Variant,
    pub trunc_order: usize,
}

/// Default series truncation; keeps tail bounds below 1e-6 at |z| = 0.95 for
/// every example parameter set.
pub const DEFAULT_TRUNC_ORDER: usize = 400;

impl ConstructionParams {
    pub fn new(
        a: Complex64,
        b: Complex64,
        m: u32,
        alpha: Complex64,
        variant: Variant,
        trunc_order: usize,
    ) -> Result<Self> {
        let p = ConstructionParams { a, b, m, alpha, variant, trunc_order };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        // same admissible regime as the hypergeometric kernel, with c = a + b
        HypParams::new(self.a, self.b, self.a + self.b)
            .map_err(|e| Error::InvalidParams(e.to_string()))?;
        if self.m < 1 {
            return Err(Error::InvalidParams("m must be >= 1".into()));
        }
        if self.trunc_order < self.m as usize + 2 {
            return Err(Error::InvalidParams(format!(
                "trunc_order {} is below m + 2 = {}",
                self.trunc_order,
                self.m + 2
            )));
        }
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return Err(Error::InvalidParams("alpha must be finite".into()));
        }
        Ok(())
    }

    /// Product `a*b`, real for both admissible regimes.
    pub fn ab(&self) -> f64 {
        (self.a * self.b).re
    }

    /// Sum `a + b`, real for both admissible regimes.
    pub fn a_plus_b(&self) -> f64 {
        (self.a + self.b).re
    }
}

/// Harmonic map `f = h + conj(g)` with normalized analytic part
/// (`h(0) = 0`, `h'(0) = 1`) and `g(0) = 0`.
///
/// The derivative series are computed once at construction; grid scans of
/// the dilatation and Jacobian reuse them.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    h: PowerSeries,
    g: PowerSeries,
    h_prime: PowerSeries,
    g_prime: PowerSeries,
    params: Option<ConstructionParams>,
}

impl HarmonicMap {
    /// Wraps arbitrary analytic and co-analytic parts, checking normalization.
    pub fn new(h: PowerSeries, g: PowerSeries) -> Result<Self> {
        if h.coeff(0) != Complex64::ZERO {
            return Err(Error::InvalidParams("h(0) must be 0".into()));
        }
        if h.coeff(1) != Complex64::ONE {
            return Err(Error::InvalidParams("h'(0) must be 1".into()));
        }
        if g.coeff(0) != Complex64::ZERO {
            return Err(Error::InvalidParams("g(0) must be 0".into()));
        }
        Ok(HarmonicMap::assemble(h, g, None))
    }

    fn assemble(h: PowerSeries, g: PowerSeries, params: Option<ConstructionParams>) -> Self {
        let h_prime = h.derivative();
        let g_prime = g.derivative();
        HarmonicMap { h, g, h_prime, g_prime, params }
    }

    fn constructed(h: PowerSeries, g: PowerSeries, params: ConstructionParams) -> Self {
        debug_assert_eq!(h.coeff(0), Complex64::ZERO);
        debug_assert_eq!(h.coeff(1), Complex64::ONE);
        debug_assert_eq!(g.coeff(0), Complex64::ZERO);
        debug_assert_eq!(g.coeff(1), Complex64::ZERO);
        HarmonicMap::assemble(h, g, Some(params))
    }

    /// The identity map `f(z) = z` at the given truncation.
    pub fn identity(trunc_order: usize) -> Self {
        let mut h = vec![Complex64::ZERO; trunc_order + 1];
        h[1] = Complex64::ONE;
        HarmonicMap::assemble(PowerSeries::new(h), PowerSeries::zero(trunc_order), None)
    }

    pub fn h(&self) -> &PowerSeries {
        &self.h
    }

    pub fn g(&self) -> &PowerSeries {
        &self.g
    }

    pub fn params(&self) -> Option<&ConstructionParams> {
        self.params.as_ref()
    }

    pub fn trunc_order(&self) -> usize {
        self.h.trunc_order().min(self.g.trunc_order())
    }

    /// `f(z) = h(z) + conj(g(z))` for `|z| < 1`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let (hv, _) = self.h.eval(z)?;
        let (gv, _) = self.g.eval(z)?;
        Ok(hv + gv.conj())
    }

    /// Derivative series of the analytic part.
    pub fn h_prime(&self) -> &PowerSeries {
        &self.h_prime
    }

    /// Derivative series of the co-analytic part.
    pub fn g_prime(&self) -> &PowerSeries {
        &self.g_prime
    }

    /// Second complex dilatation `g'(z) / h'(z)`.
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64> {
        let (hp, _) = self.h_prime.eval(z)?;
        if hp.norm() < 1e-14 {
            return Err(Error::NearSingular(hp.norm()));
        }
        let (gp, _) = self.g_prime.eval(z)?;
        Ok(gp / hp)
    }

    /// Jacobian `|h'(z)|^2 - |g'(z)|^2`; positive where `f` preserves sense.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        let (hp, _) = self.h_prime.eval(z)?;
        let (gp, _) = self.g_prime.eval(z)?;
        Ok(hp.norm_sqr() - gp.norm_sqr())
    }

    /// Conformal pre-shear `phi = h + g`.
    pub fn pre_shear(&self) -> PowerSeries {
        self.h.add(&self.g)
    }
}

/// Builds the `T1` family map for `p` (full hypergeometric series in `z`).
pub fn build_t1_map(p: &ConstructionParams) -> Result<HarmonicMap> {
    p.validate()?;
    if p.variant != Variant::T1 {
        return Err(Error::InvalidParams("parameters declare variant t2".into()));
    }
    let n = p.trunc_order;
    let m = p.m as usize;
    let f = hyp2f1_coeffs(HypParams::new(p.a, p.b, p.a + p.b)?, n);
    let gfac = hyp2f1_coeffs(HypParams::new(two(), re(p.m as f64 + 1.0), re(p.m as f64 + 2.0))?, n);

    // h = z F(a,b;a+b;z)
    let h = f.shift(1).truncated(n);

    // g = (alpha z^{m+1} / (m+1)) { F(a,b;a+b;.) * F(2,m+1;m+2;.) }
    let g = f
        .hadamard(&gfac)
        .scale(p.alpha / (p.m as f64 + 1.0))
        .shift(m + 1)
        .truncated(n);

    Ok(HarmonicMap::constructed(h, g, *p))
}

/// Builds the `T2` family map for `p` (hypergeometric series in `z^2`).
///
/// The co-analytic coefficients follow the explicit product
/// `C_{2n-1} = A_{2n-1} (2,2n-2)(m+1,2n-2) / ((m+2,2n-2)(1,2n-2))`, i.e. the
/// `z^2`-series convolved with the factor series sampled at matching power
/// indices.
pub fn build_t2_map(p: &ConstructionParams) -> Result<HarmonicMap> {
    p.validate()?;
    if p.variant != Variant::T2 {
        return Err(Error::InvalidParams("parameters declare variant t1".into()));
    }
    let n = p.trunc_order;
    let m = p.m as usize;
    let f = hyp2f1_coeffs(HypParams::new(p.a, p.b, p.a + p.b)?, n / 2);
    let gfac = hyp2f1_coeffs(HypParams::new(two(), re(p.m as f64 + 1.0), re(p.m as f64 + 2.0))?, n);

    let mut h = vec![Complex64::ZERO; n + 1];
    for j in 0..=(n.saturating_sub(1)) / 2 {
        h[2 * j + 1] = f.coeff(j);
    }

    let scale = p.alpha / (p.m as f64 + 1.0);
    let mut g = vec![Complex64::ZERO; n + 1];
    let mut j = 0;
    while m + 1 + 2 * j <= n {
        g[m + 1 + 2 * j] = scale * f.coeff(j) * gfac.coeff(2 * j);
        j += 1;
    }

    Ok(HarmonicMap::constructed(PowerSeries::new(h), PowerSeries::new(g), *p))
}

/// Builds the map for `p`, dispatching on the variant.
pub fn build_map(p: &ConstructionParams) -> Result<HarmonicMap> {
    match p.variant {
        Variant::T1 => build_t1_map(p),
        Variant::T2 => build_t2_map(p),
    }
}

/// Closed form of the `T1` family at `a = b = 1` for `m` in {1, 2, 3, 4, 6}:
/// `f(z) = -log(1-z) - conj(alpha (z + z^2/2 + ... + z^m/m + log(1-z)))`
/// with the principal branch of the logarithm.
pub fn closed_form_example_t1(m: u32, alpha: Complex64, z: Complex64) -> Result<Complex64> {
    if !matches!(m, 1 | 2 | 3 | 4 | 6) {
        return Err(Error::Domain(format!(
            "no closed form tabulated for m = {m} (supported: 1, 2, 3, 4, 6)"
        )));
    }
    if !(z.norm() < 1.0) {
        return Err(Error::OutsideDisk(z.norm()));
    }
    let log1mz = (Complex64::ONE - z).ln();
    // the displayed forms: (1/L) (L z + (L/2) z^2 + ... + L log(1-z)), L = lcm(1..=m)
    let poly = match m {
        1 => z,
        2 => (2.0 * z + z * z) / 2.0,
        3 => (6.0 * z + 3.0 * z * z + 2.0 * z * z * z) / 6.0,
        4 => {
            let z2 = z * z;
            (12.0 * z + 6.0 * z2 + 4.0 * z2 * z + 3.0 * z2 * z2) / 12.0
        }
        6 => {
            let z2 = z * z;
            let z3 = z2 * z;
            (60.0 * z + 30.0 * z2 + 20.0 * z3 + 15.0 * z2 * z2 + 12.0 * z2 * z3
                + 10.0 * z3 * z3)
                / 60.0
        }
        _ => unreachable!(),
    };
    Ok(-log1mz - (alpha * (poly + log1mz)).conj())
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn two() -> Complex64 {
    Complex64::new(2.0, 0.0)
}
