//! Built-in example parameter sets.
//!
//! These are the parameter tuples used throughout the test suites and handy
//! as CLI starting points: three `T1` sets at `a = b = 1` and five `T2` sets,
//! all admissible for their family's membership conditions.

use num_complex::Complex64;

use crate::mapping::{ConstructionParams, Variant, DEFAULT_TRUNC_ORDER};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn set(a: Complex64, b: Complex64, m: u32, alpha: Complex64, variant: Variant) -> ConstructionParams {
    ConstructionParams::new(a, b, m, alpha, variant, DEFAULT_TRUNC_ORDER)
        .expect("gallery parameters are admissible")
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The three `T1` example sets (`a = b = 1`; `m` = 2, 4, 6).
pub fn t1_examples() -> Vec<ConstructionParams> {
    vec![
        set(re(1.0), re(1.0), 2, Complex64::new(0.0, -1.0), Variant::T1),
        set(re(1.0), re(1.0), 4, Complex64::new(0.0, 0.75), Variant::T1),
        set(re(1.0), re(1.0), 6, Complex64::new(-FRAC_1_SQRT_2, FRAC_1_SQRT_2), Variant::T1),
    ]
}

/// The five `T2` example sets.
pub fn t2_examples() -> Vec<ConstructionParams> {
    vec![
        set(re(1.0), re(0.5), 4, re(1.0), Variant::T2),
        set(re(1.0), re(0.5), 4, Complex64::new(-FRAC_1_SQRT_2, -FRAC_1_SQRT_2), Variant::T2),
        set(re(1.0), re(0.5), 6, re(1.0), Variant::T2),
        set(re(1.0), re(1.0 / 7.0), 4, Complex64::new(0.0, 1.0 / 7.0), Variant::T2),
        set(
            re(0.75),
            re(2.0 / 3.0),
            2,
            Complex64::new(-0.871 * FRAC_1_SQRT_2, -0.871 * FRAC_1_SQRT_2),
            Variant::T2,
        ),
    ]
}

/// All eight example sets.
pub fn all_examples() -> Vec<ConstructionParams> {
    let mut v = t1_examples();
    v.extend(t2_examples());
    v
}
