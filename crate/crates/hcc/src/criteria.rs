//! Class-membership certificates for the constructed maps.
//!
//! Two independent routes are provided and cross-checked:
//!
//! - truncated coefficient sums of the sufficient conditions
//!   `sum |(n+1)a_{n+1} - n a_n| + sum |(n+1)b_{n+1} - n b_n| <= 1 - |b_1|`
//!   (close-to-convexity) and the skip-two analogue (convexity in the
//!   vertical direction);
//! - the closed-form limits of those sums, which telescope to Beta-function
//!   expressions when the difference terms have a single sign.
//!
//! Pointwise checks of the defining class inequalities on polar grids give a
//! third, geometry-level certificate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::mapping::{HarmonicMap, Variant};
use crate::series::{geometric_tail, PowerSeries};
use crate::specfun::beta;

/// Rounding allowance for the non-strict comparisons.
///
/// Boundary parameter sets (|alpha| exactly on its cap, `ab` exactly on a
/// region edge) satisfy their conditions with equality; the f64 evaluation
/// of the sums and of `B(a, b)` carries rounding of order 1e-14 that would
/// otherwise flip those sets to a rejection. Pointwise margins stay strict.
pub const BOUNDARY_EPS: f64 = 1e-12;

/// The two alternative hypothesis branches of the membership conditions.
///
/// `CaseA` is the branch where the telescoping difference terms are
/// non-negative (small `ab`), `CaseB` the branch where they are
/// non-positive (large `ab`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    CaseA,
    CaseB,
}

/// Which membership conditions a parameter tuple satisfies, with the values
/// the conditions bind on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleCase {
    pub case_a: bool,
    pub case_b: bool,
    /// Product `a b` (real in both admissible regimes).
    pub ab: f64,
    /// `B(a, b)`.
    pub beta: f64,
    /// Largest `|alpha|` for which some case whose `ab`-condition holds can
    /// be satisfied; negative when no `alpha` is admissible at this `(a, b)`.
    pub alpha_bound: f64,
}

impl AdmissibleCase {
    pub fn satisfied(&self) -> bool {
        self.case_a || self.case_b
    }

    pub fn contains(&self, case: Case) -> bool {
        match case {
            Case::CaseA => self.case_a,
            Case::CaseB => self.case_b,
        }
    }
}

/// Result of a single membership check.
///
/// For sum criteria `pass = (value + tail_estimate <= bound)` up to the
/// [`BOUNDARY_EPS`] rounding allowance and `margin = bound - value`; for
/// pointwise criteria `value` and `margin` are the minimum margin over the
/// grid and `pass = (margin > 0)` strictly.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub criterion_name: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub trunc_order: usize,
    pub tail_estimate: f64,
    pub pass: bool,
}

impl CheckReport {
    fn sum(name: &str, value: f64, bound: f64, trunc_order: usize, tail: f64) -> Self {
        CheckReport {
            criterion_name: name.to_string(),
            value,
            bound,
            margin: bound - value,
            trunc_order,
            tail_estimate: tail,
            pass: value + tail <= bound + BOUNDARY_EPS,
        }
    }

    fn pointwise(name: &str, min_margin: f64, trunc_order: usize) -> Self {
        CheckReport {
            criterion_name: name.to_string(),
            value: min_margin,
            bound: 0.0,
            margin: min_margin,
            trunc_order,
            tail_estimate: 0.0,
            pass: min_margin > 0.0,
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "criterion: {}", self.criterion_name)?;
        writeln!(f, "value: {:.17e}", self.value)?;
        writeln!(f, "bound: {:.17e}", self.bound)?;
        writeln!(f, "margin: {:.17e}", self.margin)?;
        writeln!(f, "tail: {:.17e}", self.tail_estimate)?;
        writeln!(f, "trunc: {}", self.trunc_order)?;
        write!(f, "pass: {}", self.pass)
    }
}

fn f1_difference_terms(s: &PowerSeries, n_terms: usize) -> Vec<f64> {
    (1..=n_terms)
        .map(|n| ((n as f64 + 1.0) * s.coeff(n + 1) - n as f64 * s.coeff(n)).norm())
        .collect()
}

fn f2_difference_terms(s: &PowerSeries, n_terms: usize) -> Vec<f64> {
    (1..=n_terms)
        .map(|n| {
            ((n as f64 + 1.0) * s.coeff(n + 1) - (n as f64 - 1.0) * s.coeff(n - 1)).norm()
        })
        .collect()
}

fn check_sum_precondition(f: &HarmonicMap, n_terms: usize) -> Result<()> {
    if n_terms + 1 > f.trunc_order() {
        return Err(Error::Domain(format!(
            "partial sum to N = {n_terms} needs coefficients beyond the truncation order {}",
            f.trunc_order()
        )));
    }
    Ok(())
}

/// Sign case of the `T1`-family difference terms, from the `ab`-conditions
/// alone (no constraint on `alpha`).
pub fn t1_sign_case(ab: f64, a_plus_b: f64) -> Option<Case> {
    if ab <= 1.0 + BOUNDARY_EPS {
        Some(Case::CaseA)
    } else if ab >= 1.0f64.max(a_plus_b / 2.0) - BOUNDARY_EPS {
        Some(Case::CaseB)
    } else {
        None
    }
}

/// Sign case of the `T2`-family difference terms.
pub fn t2_sign_case(ab: f64, a_plus_b: f64) -> Option<Case> {
    if ab <= 0.5f64.min(a_plus_b / 3.0) + BOUNDARY_EPS {
        Some(Case::CaseA)
    } else if ab >= 0.5f64.max(a_plus_b / 3.0) - BOUNDARY_EPS {
        Some(Case::CaseB)
    } else {
        None
    }
}

// Closed-form sum limit for a theorem-built map when the criterion matches
// the variant, else None.
fn closed_tail_limit(f: &HarmonicMap, want: Variant) -> Option<f64> {
    let p = f.params()?;
    if p.variant != want {
        return None;
    }
    let close = match want {
        Variant::T1 => {
            let case = t1_sign_case(p.ab(), p.a_plus_b())?;
            closed_t_t1(p.a, p.b, p.alpha, case).ok()?
        }
        Variant::T2 => {
            let case = t2_sign_case(p.ab(), p.a_plus_b())?;
            closed_t_t2(p.a, p.b, p.alpha, case).ok()?
        }
    };
    Some(close)
}

/// Truncated close-to-convexity coefficient sum
/// `sum_{n=1}^{N} |(n+1)a_{n+1} - n a_n| + |(n+1)b_{n+1} - n b_n|`
/// against the bound `1 - |b_1|`.
///
/// For theorem-built `T1` maps the tail is the exact gap to the closed-form
/// limit; otherwise it is a geometric extrapolation of the trailing terms.
pub fn coeff_sum_f1(f: &HarmonicMap, n_terms: usize) -> Result<CheckReport> {
    check_sum_precondition(f, n_terms)?;
    let da = f1_difference_terms(f.h(), n_terms);
    let db = f1_difference_terms(f.g(), n_terms);
    let value: f64 = da.iter().sum::<f64>() + db.iter().sum::<f64>();
    let bound = 1.0 - f.g().coeff(1).norm();
    let tail = match closed_tail_limit(f, Variant::T1) {
        Some(limit) => (limit - value).max(0.0),
        None => geometric_tail(&da) + geometric_tail(&db),
    };
    Ok(CheckReport::sum("coeff_sum_f1", value, bound, f.trunc_order(), tail))
}

/// Truncated vertical-direction-convexity coefficient sum
/// `sum_{n=1}^{N} |(n+1)a_{n+1} - (n-1)a_{n-1}| + |(n+1)b_{n+1} - (n-1)b_{n-1}|`
/// against the bound `1 - |b_1|` (with `a_0 = b_0 = 0`).
pub fn coeff_sum_f2(f: &HarmonicMap, n_terms: usize) -> Result<CheckReport> {
    check_sum_precondition(f, n_terms)?;
    let da = f2_difference_terms(f.h(), n_terms);
    let db = f2_difference_terms(f.g(), n_terms);
    let value: f64 = da.iter().sum::<f64>() + db.iter().sum::<f64>();
    let bound = 1.0 - f.g().coeff(1).norm();
    let tail = match closed_tail_limit(f, Variant::T2) {
        Some(limit) => (limit - value).max(0.0),
        None => geometric_tail(&da) + geometric_tail(&db),
    };
    Ok(CheckReport::sum("coeff_sum_f2", value, bound, f.trunc_order(), tail))
}

/// Closed-form limit of the `T1`-family close-to-convexity sum.
///
/// `CaseA`: `1 + 2|alpha| - (1 + |alpha|)/B(a,b)`;
/// `CaseB`: `(1/B(a,b) - 1) + |alpha|/B(a,b)`.
/// The case must match the sign structure of the difference terms, i.e. the
/// `ab`-condition of the corresponding hypothesis branch.
pub fn closed_t_t1(a: Complex64, b: Complex64, alpha: Complex64, case: Case) -> Result<f64> {
    let ab = (a * b).re;
    let apb = (a + b).re;
    let consistent = match case {
        Case::CaseA => ab <= 1.0 + BOUNDARY_EPS,
        Case::CaseB => ab >= 1.0f64.max(apb / 2.0) - BOUNDARY_EPS,
    };
    if !consistent {
        return Err(Error::Domain(format!(
            "{case:?} is inconsistent with ab = {ab}, a+b = {apb}"
        )));
    }
    let bv = beta(a, b)?.re;
    let aa = alpha.norm();
    Ok(match case {
        Case::CaseA => 1.0 + 2.0 * aa - (1.0 + aa) / bv,
        Case::CaseB => (1.0 / bv - 1.0) + aa / bv,
    })
}

/// Closed-form limit of the `T2`-family vertical-convexity sum.
///
/// `CaseA`: `1 - 2/B + 2|alpha| - 2|alpha|/B`;
/// `CaseB`: `2/B - 1 + 2|alpha|/B`.
pub fn closed_t_t2(a: Complex64, b: Complex64, alpha: Complex64, case: Case) -> Result<f64> {
    let ab = (a * b).re;
    let apb = (a + b).re;
    let consistent = match case {
        Case::CaseA => ab <= 0.5f64.min(apb / 3.0) + BOUNDARY_EPS,
        Case::CaseB => ab >= 0.5f64.max(apb / 3.0) - BOUNDARY_EPS,
    };
    if !consistent {
        return Err(Error::Domain(format!(
            "{case:?} is inconsistent with ab = {ab}, a+b = {apb}"
        )));
    }
    let bv = beta(a, b)?.re;
    let aa = alpha.norm();
    Ok(match case {
        Case::CaseA => 1.0 - 2.0 / bv + 2.0 * aa - 2.0 * aa / bv,
        Case::CaseB => 2.0 / bv - 1.0 + 2.0 * aa / bv,
    })
}

/// Membership conditions for the `T1` family:
/// `CaseA`: `ab <= 1` and `|alpha|(2B - 1) <= 1`;
/// `CaseB`: `ab >= max(1, (a+b)/2)` and `|alpha| <= 2B - 1`.
pub fn admissible_t1(a: Complex64, b: Complex64, alpha: Complex64) -> Result<AdmissibleCase> {
    let bv = beta(a, b)?.re;
    let ab = (a * b).re;
    let apb = (a + b).re;
    let aa = alpha.norm();

    let ab_a = ab <= 1.0 + BOUNDARY_EPS;
    let ab_b = ab >= 1.0f64.max(apb / 2.0) - BOUNDARY_EPS;
    let cap_a = if 2.0 * bv - 1.0 > 0.0 { 1.0 / (2.0 * bv - 1.0) } else { f64::INFINITY };
    let cap_b = 2.0 * bv - 1.0;

    let mut alpha_bound = f64::NEG_INFINITY;
    if ab_a {
        alpha_bound = alpha_bound.max(cap_a);
    }
    if ab_b {
        alpha_bound = alpha_bound.max(cap_b);
    }

    Ok(AdmissibleCase {
        case_a: ab_a && aa * (2.0 * bv - 1.0) <= 1.0 + BOUNDARY_EPS,
        case_b: ab_b && aa <= cap_b + BOUNDARY_EPS,
        ab,
        beta: bv,
        alpha_bound,
    })
}

/// Membership conditions for the `T2` family:
/// `CaseA`: `ab <= min(1/2, (a+b)/3)` and `|alpha|(B - 1) <= 1`;
/// `CaseB`: `ab >= max(1/2, (a+b)/3)` and `|alpha| <= B - 1`.
pub fn admissible_t2(a: Complex64, b: Complex64, alpha: Complex64) -> Result<AdmissibleCase> {
    let bv = beta(a, b)?.re;
    let ab = (a * b).re;
    let apb = (a + b).re;
    let aa = alpha.norm();

    let ab_a = ab <= 0.5f64.min(apb / 3.0) + BOUNDARY_EPS;
    let ab_b = ab >= 0.5f64.max(apb / 3.0) - BOUNDARY_EPS;
    let cap_a = if bv - 1.0 > 0.0 { 1.0 / (bv - 1.0) } else { f64::INFINITY };
    let cap_b = bv - 1.0;

    let mut alpha_bound = f64::NEG_INFINITY;
    if ab_a {
        alpha_bound = alpha_bound.max(cap_a);
    }
    if ab_b {
        alpha_bound = alpha_bound.max(cap_b);
    }

    Ok(AdmissibleCase {
        case_a: ab_a && aa * (bv - 1.0) <= 1.0 + BOUNDARY_EPS,
        case_b: ab_b && aa <= cap_b + BOUNDARY_EPS,
        ab,
        beta: bv,
        alpha_bound,
    })
}

/// `T1` `CaseB` region rewritten as explicit bounds on `b`:
/// `a in (1/2, inf)`, `b >= a/(2a - 1)`. Real parameters only.
pub fn t1_case_b_region_alt(a: f64, b: f64) -> bool {
    a > 0.5 && b >= a / (2.0 * a - 1.0)
}

/// `T2` `CaseA` region rewritten as explicit bounds on `b`:
/// `b <= 1/(2a)` for `a in (0, 1/2] U [1, inf)`, `b <= a/(3a - 1)` for
/// `a in [1/2, 1]`.
pub fn t2_case_a_region_alt(a: f64, b: f64) -> bool {
    if a <= 0.0 || b <= 0.0 {
        return false;
    }
    if (0.5..=1.0).contains(&a) {
        b <= a / (3.0 * a - 1.0)
    } else {
        b <= 1.0 / (2.0 * a)
    }
}

/// `T2` `CaseB` region rewritten as explicit bounds on `b`:
/// `b >= a/(3a - 1)` for `a in (1/3, 1/2] U [1, inf)`, `b >= 1/(2a)` for
/// `a in [1/2, 1]`.
pub fn t2_case_b_region_alt(a: f64, b: f64) -> bool {
    if a <= 1.0 / 3.0 || b <= 0.0 {
        return false;
    }
    if (0.5..=1.0).contains(&a) {
        b >= 1.0 / (2.0 * a)
    } else {
        b >= a / (3.0 * a - 1.0)
    }
}

/// The pointwise class inequalities, checked on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    /// `Re{e^{i theta} (1-z) h'(z)} > |(1-z) g'(z)|`.
    F,
    /// `|(1-z) h'(z) - 1| < 1 - |(1-z) g'(z)|`.
    F1,
    /// `Re{e^{i theta} (1-z^2) h'(z)} > |(1-z^2) g'(z)|`.
    F2,
}

impl MapClass {
    fn name(&self) -> &'static str {
        match self {
            MapClass::F => "pointwise_f",
            MapClass::F1 => "pointwise_f1",
            MapClass::F2 => "pointwise_f2",
        }
    }
}

/// Minimum margin of the class inequality over the grid; passes when the
/// margin is strictly positive. `theta` rotates the real-part form (it is
/// ignored by the modulus form `F1`).
pub fn pointwise_class_check(
    f: &HarmonicMap,
    kind: MapClass,
    grid: GridSpec,
    theta: f64,
) -> Result<CheckReport> {
    let hp = f.h_prime();
    let gp = f.g_prime();
    let rot = Complex64::from_polar(1.0, theta);
    let mut min_margin = f64::INFINITY;
    for z in grid.nodes() {
        let (hv, _) = hp.eval(z)?;
        let (gv, _) = gp.eval(z)?;
        let margin = match kind {
            MapClass::F => {
                let w = Complex64::ONE - z;
                (rot * w * hv).re - w.norm() * gv.norm()
            }
            MapClass::F1 => {
                let w = Complex64::ONE - z;
                (1.0 - (w * gv).norm()) - (w * hv - 1.0).norm()
            }
            MapClass::F2 => {
                let w = Complex64::ONE - z * z;
                (rot * w * hv).re - w.norm() * gv.norm()
            }
        };
        min_margin = min_margin.min(margin);
    }
    Ok(CheckReport::pointwise(kind.name(), min_margin, f.trunc_order()))
}

/// Minimum of `Re{(1 - z^2) phi'(z)}` over the grid; a strictly positive
/// minimum certifies that the analytic map `phi` is univalent and convex in
/// the vertical direction.
pub fn direction_convexity_check(phi: &PowerSeries, grid: GridSpec) -> Result<CheckReport> {
    let dp = phi.derivative();
    let mut min_margin = f64::INFINITY;
    for z in grid.nodes() {
        let (dv, _) = dp.eval(z)?;
        min_margin = min_margin.min(((Complex64::ONE - z * z) * dv).re);
    }
    Ok(CheckReport::pointwise("direction_convexity", min_margin, phi.trunc_order()))
}
