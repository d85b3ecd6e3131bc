//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

const GL_X: [f64; 10] = [
    -0.9739065285171717,
    -0.8650633666889845,
    -0.6794095682990244,
    -0.4333953941292472,
    -0.14887433898163122,
    0.14887433898163122,
    0.4333953941292472,
    0.6794095682990244,
    0.8650633666889845,
    0.9739065285171717,
];
const GL_W: [f64; 10] = [
    0.06667134430868807,
    0.14945134915058036,
    0.219086362515982,
    0.2692667193099965,
    0.295524224714753,
    0.295524224714753,
    0.2692667193099965,
    0.219086362515982,
    0.14945134915058036,
    0.06667134430868807,
];

fn gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
    GL_X.iter().zip(GL_W.iter()).map(|(x, w)| w * f(m + h * x)).sum::<f64>() * h
}

/// Adaptive 10-point Gauss-Legendre quadrature (interval halving).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    refine(f, a, b, gauss(f, a, b), tol, 30)
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (l, r) = (gauss(f, a, m), gauss(f, m, b));
    if depth == 0 || (l + r - whole).abs() <= tol {
        return l + r;
    }
    refine(f, a, m, l, 0.5 * tol, depth - 1) + refine(f, m, b, r, 0.5 * tol, depth - 1)
}

/// `F(φ, k)` by direct quadrature of the defining integral.
pub fn quad_f(phi: f64, k: f64, tol: f64) -> f64 {
    // 1 − k² sin² t written without cancellation near t = π/2.
    let kc2 = (1.0 - k) * (1.0 + k);
    let g = |t: f64| {
        let (s, c) = t.sin_cos();
        1.0 / (c * c + kc2 * s * s).sqrt()
    };
    integrate(&g, 0.0, phi, tol)
}

pub fn quad_k(k: f64, tol: f64) -> f64 {
    quad_f(std::f64::consts::FRAC_PI_2, k, tol)
}

/// Root of an increasing function on `[lo, hi]` by bisection.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
