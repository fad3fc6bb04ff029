use std::f64::consts::PI;

/// Kesten–McKay density of the eigenvalues of a random `d`-regular graph,
/// `(d/2π) √(4(d−1) − λ²) / (d² − λ²)` on `|λ| ≤ 2√(d−1)`.
pub fn kesten_mckay_density(d: u32, lam: f64) -> f64 {
    assert!(d >= 3, "Kesten-McKay density needs d >= 3");
    let d = d as f64;
    let r2 = 4.0 * (d - 1.0);
    if lam * lam >= r2 {
        return 0.0;
    }
    d / (2.0 * PI) * (r2 - lam * lam).sqrt() / (d * d - lam * lam)
}

/// Probability mass of `[lo, hi]` under the Kesten–McKay law.
///
/// Integrates in the angle `λ = 2√(d−1) sin θ`, which removes the square-root
/// endpoints and leaves an analytic integrand for adaptive Simpson.
pub fn kesten_mckay_mass(d: u32, lo: f64, hi: f64) -> f64 {
    assert!(d >= 3);
    let df = d as f64;
    let radius = 2.0 * (df - 1.0).sqrt();
    let lo = lo.clamp(-radius, radius);
    let hi = hi.clamp(-radius, radius);
    if hi <= lo {
        return 0.0;
    }
    let (t0, t1) = ((lo / radius).asin(), (hi / radius).asin());
    let r2 = radius * radius;
    let f = |t: f64| {
        let (s, c) = t.sin_cos();
        df / (2.0 * PI) * r2 * c * c / (df * df - r2 * s * s)
    };
    adaptive_simpson(&f, t0, t1, 1e-13, 50)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
