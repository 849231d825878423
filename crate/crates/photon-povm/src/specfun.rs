//! Dawson's function and the u-functions every closed form is built from.
//!
//! D(x) = e^{-x²} ∫₀ˣ e^{t²} dt is evaluated to relative accuracy ≤ 1e-14
//! over the whole real line by three methods:
//!
//! * |x| < 1 — Maclaurin series D(x) = Σ (-1)ⁿ 2ⁿ x^{2n+1} / (2n+1)!!,
//! * 1 ≤ |x| ≤ 10 — Rybicki's sampling series
//!   D(x) ≈ π^{-1/2} Σ_{n odd} e^{-(x-nh)²}/n with h = 1/4
//!   (truncation error ~ e^{-(π/2h)²} ≈ 7e-18),
//! * |x| > 10 — the asymptotic series D(x) ~ (2x)^{-1} Σ (2k-1)!!/(2x²)ᵏ.
//!
//! The u-functions
//!   u1 = 1 - 6a + 12 a^{3/2} D(1/(2√a))
//!   u2 = 1 - 2√a D(1/(2√a))
//!   u3 = ½ (2√(a/π) e^{-1/(4a)} + (1-2a) erf(1/(2√a)))
//!   u4 = 1 - 2a u2
//! cancel catastrophically at large a when formed literally (2√a·D → 1),
//! so for a ≥ 1 they are evaluated from their exact Taylor expansions in
//! x² = 1/(4a), keeping the relative error at the 1e-15 level on both
//! sides of the switch.

use crate::{Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.5641895835477563;

/// Gaussian spread parameter a = (Δp)²/2p₀²; strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WidthParam(f64);

impl WidthParam {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a > 0.0 {
            Ok(WidthParam(a))
        } else {
            Err(Error::InvalidParam(format!(
                "width parameter must be positive and finite, got {a}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Dawson's function D(x), odd, total over the reals.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let d = if ax < 1.0 {
        dawson_series(ax)
    } else if ax <= 10.0 {
        dawson_rybicki(ax)
    } else {
        dawson_asymptotic(ax)
    };
    if x < 0.0 {
        -d
    } else {
        d
    }
}

fn dawson_series(x: f64) -> f64 {
    // term_{n+1} = term_n * (-2x²)/(2n+3)
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0u32;
    while term.abs() > 1e-18 * sum.abs().max(f64::MIN_POSITIVE) {
        term *= -2.0 * x2 / (2 * n + 3) as f64;
        sum += term;
        n += 1;
        if n > 60 {
            break;
        }
    }
    sum
}

fn dawson_rybicki(x: f64) -> f64 {
    const H: f64 = 0.25;
    // sum over odd n with |x - n h| <= 7 (e^{-49} below double precision)
    let n_center = (x / H).round() as i64;
    let span = (7.0 / H) as i64 + 1;
    let mut sum = 0.0;
    let mut n = n_center - span;
    if n % 2 == 0 {
        n -= 1;
    }
    while n <= n_center + span {
        if n != 0 {
            let d = x - n as f64 * H;
            sum += (-d * d).exp() / n as f64;
        }
        n += 2;
    }
    sum * FRAC_1_SQRT_PI
}

fn dawson_asymptotic(x: f64) -> f64 {
    let inv2x2 = 0.5 / (x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        let next = term * (2 * k - 1) as f64 * inv2x2;
        if next.abs() >= term.abs() {
            break; // divergent tail reached
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum {
            break;
        }
    }
    sum / (2.0 * x)
}

/// The four u-functions of the closed-form results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UFunctions {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub u4: f64,
}

/// Evaluate u1..u4 at the given width parameter.
pub fn u_functions(a: WidthParam) -> UFunctions {
    let a = a.get();
    let (u1, u2, u3) = if a < 1.0 {
        let x = 1.0 / (2.0 * a.sqrt());
        let d = dawson(x);
        let u1 = 1.0 - 6.0 * a + 12.0 * a.powf(1.5) * d;
        let u2 = 1.0 - 2.0 * a.sqrt() * d;
        let u3 = 0.5
            * (2.0 * (a / std::f64::consts::PI).sqrt() * (-1.0 / (4.0 * a)).exp()
                + (1.0 - 2.0 * a) * libm::erf(x));
        (u1, u2, u3)
    } else {
        u_large_a(a)
    };
    UFunctions {
        u1,
        u2,
        u3,
        u4: 1.0 - 2.0 * a * u2,
    }
}

/// Cancellation-free evaluation for a ≥ 1 via Taylor series in x² = 1/(4a).
fn u_large_a(a: f64) -> (f64, f64, f64) {
    let x2 = 1.0 / (4.0 * a);
    let x = x2.sqrt();

    // u2 = Σ_{k≥1} (-1)^{k+1} 2^k x^{2k} / (2k+1)!!  (first term 2x²/3)
    let mut term = 2.0 * x2 / 3.0;
    let mut u2 = term;
    let mut k = 1u32;
    while term.abs() > 1e-19 {
        term *= -2.0 * x2 / (2 * k + 3) as f64;
        u2 += term;
        k += 1;
    }

    // u1 = (3/2) Σ_{k≥2} (-1)^k 2^k x^{2k-2} / (2k+1)!!  (first term (2/5) x²)
    term = 0.4 * x2;
    let mut u1 = term;
    k = 2;
    while term.abs() > 1e-19 {
        term *= -2.0 * x2 / (2 * k + 3) as f64;
        u1 += term;
        k += 1;
    }

    // u3 = π^{-1/2} Σ_{k≥0} c_k x^{2k+1}/2 with
    // c_k = (-1)^k [ -1/(k+1)! + 2/(k!(2k+1)) + 1/((k+1)!(2k+3)) ]
    let mut u3 = 0.0;
    let mut fact_k = 1.0; // k!
    let mut xpow = x;
    for kk in 0..40u32 {
        let fact_k1 = fact_k * (kk + 1) as f64;
        let c = -1.0 / fact_k1
            + 2.0 / (fact_k * (2 * kk + 1) as f64)
            + 1.0 / (fact_k1 * (2 * kk + 3) as f64);
        let sign = if kk % 2 == 0 { 1.0 } else { -1.0 };
        let t = 0.5 * sign * c * xpow;
        u3 += t;
        if t.abs() < 1e-19 && kk > 2 {
            break;
        }
        fact_k = fact_k1;
        xpow *= x2;
    }
    u3 *= FRAC_1_SQRT_PI;

    (u1, u2, u3)
}
