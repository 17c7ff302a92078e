//! Dense grid search followed by golden-section refinement, for smooth
//! objectives on the unit interval and the unit square.

use rayon::prelude::*;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizer of a unimodal `f` on `[lo, hi]`; endpoints are compared
/// explicitly so boundary maxima are found exactly.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    [(lo, f(lo)), (hi, f(hi)), (mid, f(mid))]
        .into_iter()
        .fold((mid, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum2 {
    pub s: f64,
    pub u: f64,
    pub value: f64,
}

/// Maximum of `f` over `[0, 1]^2`: a `(samples + 1)^2` grid, then
/// alternating golden-section line searches inside the best grid cell's
/// neighbourhood until the value stops improving by more than `tol`.
pub fn maximize_unit_square<F>(f: F, samples: usize, tol: f64) -> Maximum2
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let step = 1.0 / samples as f64;
    let best = (0..=samples)
        .into_par_iter()
        .map(|i| {
            let s = i as f64 * step;
            let mut row_best = Maximum2 {
                s,
                u: 0.0,
                value: f64::NEG_INFINITY,
            };
            for j in 0..=samples {
                let u = j as f64 * step;
                let value = f(s, u);
                if value > row_best.value {
                    row_best = Maximum2 { s, u, value };
                }
            }
            row_best
        })
        .reduce(
            || Maximum2 {
                s: 0.0,
                u: 0.0,
                value: f64::NEG_INFINITY,
            },
            |x, y| {
                // prefer the lower grid index on ties for determinism
                if y.value > x.value || (y.value == x.value && (y.s, y.u) < (x.s, x.u)) {
                    y
                } else {
                    x
                }
            },
        );

    let mut current = best;
    for _ in 0..100 {
        let previous = current.value;
        let (s_lo, s_hi) = ((current.s - step).max(0.0), (current.s + step).min(1.0));
        let (s, value) = golden_section_max(|s| f(s, current.u), s_lo, s_hi, 1e-12);
        if value > current.value {
            current = Maximum2 { s, u: current.u, value };
        }
        let (u_lo, u_hi) = ((current.u - step).max(0.0), (current.u + step).min(1.0));
        let (u, value) = golden_section_max(|u| f(current.s, u), u_lo, u_hi, 1e-12);
        if value > current.value {
            current = Maximum2 { s: current.s, u, value };
        }
        if current.value - previous <= tol {
            break;
        }
    }
    current
}

/// Maximum of `f` over `[0, 1]`: grid then golden section.
pub fn maximize_unit_interval<F>(f: F, samples: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let step = 1.0 / samples as f64;
    let (mut x, mut fx) = (0.0, f64::NEG_INFINITY);
    for i in 0..=samples {
        let s = i as f64 * step;
        let v = f(s);
        if v > fx {
            x = s;
            fx = v;
        }
    }
    let (lo, hi) = ((x - step).max(0.0), (x + step).min(1.0));
    let (rx, rv) = golden_section_max(&f, lo, hi, 1e-13);
    if rv > fx {
        (rx, rv)
    } else {
        (x, fx)
    }
}
