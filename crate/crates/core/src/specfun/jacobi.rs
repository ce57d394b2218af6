use num_complex::Complex64;

/// Jacobi polynomial `P_n^{(a,b)}(u)` by the three-term recurrence.
///
/// Falls back to the explicit double-binomial sum when the recurrence's
/// leading coefficient vanishes (`2k + a + b - 2 = 0` or `k + a + b = 0`).
pub fn jacobi_polynomial(n: usize, a: f64, b: f64, u: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if n == 0 {
        return one;
    }
    let p1 = (a - b) / 2.0 + (1.0 + (a + b) / 2.0) * u;
    if n == 1 {
        return p1;
    }
    let (mut prev, mut cur) = (one, p1);
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let lead = 2.0 * kf * (kf + a + b) * (s - 2.0);
        if lead.abs() < 1e-300 {
            return jacobi_explicit(n, a, b, u);
        }
        let next = ((s - 1.0) * (s * (s - 2.0) * u + a * a - b * b) * cur
            - 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s * prev)
            / lead;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized binomial coefficient `C(x, k)` for real `x`.
pub fn binomial(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x - j as f64) / (j as f64 + 1.0))
}

/// `sum_s C(n+a, n-s) C(n+b, s) ((u-1)/2)^s ((u+1)/2)^(n-s)`
fn jacobi_explicit(n: usize, a: f64, b: f64, u: Complex64) -> Complex64 {
    let nf = n as f64;
    let lo = (u - 1.0) / 2.0;
    let hi = (u + 1.0) / 2.0;
    (0..=n)
        .map(|s| binomial(nf + a, n - s) * binomial(nf + b, s) * lo.powu(s as u32) * hi.powu((n - s) as u32))
        .sum()
}
