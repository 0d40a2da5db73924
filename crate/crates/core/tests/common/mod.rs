//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the library's truncation, summation or closed
//! form code.

#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix4};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

fn pos_pow(x: f64, g: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if g == 0.0 {
        1.0
    } else {
        x.powf(g)
    }
}

/// Mode frequencies from the sum and difference identities.
pub fn modes_from_identities(s1: f64, s2: f64) -> (f64, f64) {
    let sum = (1.0 + (s1 + s2).powi(2)).sqrt();
    let diff = (1.0 + (s1 - s2).powi(2)).sqrt();
    ((sum + diff) / 2.0, (sum - diff) / 2.0)
}

/// Mode frequencies as the symplectic spectrum of the classical Hamiltonian
/// `(p₁ + x₂/2)² + (p₂ − x₁/2)² + σ₁²x₁² + σ₂²x₂²`.
///
/// The flow `ż = 2JMz` has eigenvalues `±2i a±`.
#[rustfmt::skip]
pub fn modes_from_matrix(s1: f64, s2: f64) -> (f64, f64) {
    // z = (x₁, x₂, p₁, p₂)
    let m = Matrix4::new(
        0.25 + s1 * s1, 0.0, 0.0, -0.5,
        0.0, 0.25 + s2 * s2, 0.5, 0.0,
        0.0, 0.5, 1.0, 0.0,
        -0.5, 0.0, 0.0, 1.0,
    );
    let j = Matrix4::new(
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, -1.0, 0.0, 0.0,
    );
    let flow = j * m * 2.0;
    let mut freqs: Vec<f64> = flow
        .complex_eigenvalues()
        .iter()
        .map(|c| c.im.abs() / 2.0)
        .collect();
    freqs.sort_by(|a, b| b.total_cmp(a));
    (freqs[0], freqs[2])
}

/// `Σ_{k,l} (μ − B(a₊(2k+1) + a₋(2l+1)))₊^γ` by plain double loop.
pub fn brute_riesz_2d(b: f64, w1: f64, w2: f64, mu: f64, g: f64) -> f64 {
    let (ap, am) = modes_from_identities(w1 / b, w2 / b);
    let mut total = 0.0;
    let mut k = 0u64;
    loop {
        let row = b * ap * (2 * k + 1) as f64;
        if row + b * am >= mu {
            break;
        }
        let mut l = 0u64;
        loop {
            let e = row + b * am * (2 * l + 1) as f64;
            if e >= mu {
                break;
            }
            total += pos_pow(mu - e, g);
            l += 1;
        }
        k += 1;
    }
    total
}

/// Eigenvalue count below `μ` (strict).
pub fn brute_count_2d(b: f64, w1: f64, w2: f64, mu: f64) -> u64 {
    let (ap, am) = modes_from_identities(w1 / b, w2 / b);
    let mut n = 0;
    for k in 0.. {
        let row = b * ap * (2 * k + 1) as f64;
        if row + b * am >= mu {
            break;
        }
        for l in 0.. {
            if row + b * am * (2 * l + 1) as f64 >= mu {
                break;
            }
            n += 1;
        }
    }
    n
}

/// 3D sum with the extra ladder `ω₃(2j+1)`.
pub fn brute_riesz_3d(b: f64, w1: f64, w2: f64, w3: f64, mu: f64, g: f64) -> f64 {
    let mut total = 0.0;
    let mut j = 0u64;
    loop {
        let e3 = w3 * (2 * j + 1) as f64;
        if e3 >= mu {
            break;
        }
        total += brute_riesz_2d(b, w1, w2, mu - e3, g);
        j += 1;
    }
    total
}

pub fn brute_riesz_1d(w: f64, lambda: f64, g: f64) -> f64 {
    (0..)
        .map(|j| lambda - w * (2 * j + 1) as f64)
        .take_while(|&d| d > 0.0)
        .map(|d| pos_pow(d, g))
        .sum()
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` from the Jacobi matrix.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let kf = k as f64;
        let beta = kf / (4.0 * kf * kf - 1.0).sqrt();
        jac[(k - 1, k)] = beta;
        jac[(k, k - 1)] = beta;
    }
    let eig = jac.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(96))
}

/// `∫_{−π/2}^{π/2} f(θ) dθ`.
pub fn integrate_half_circle(f: impl Fn(f64) -> f64) -> f64 {
    let (x, w) = rule();
    x.iter()
        .zip(w)
        .map(|(&xi, &wi)| wi * f(FRAC_PI_2 * xi))
        .sum::<f64>()
        * FRAC_PI_2
}

/// `∫_{ℝ²} (E − ω₁²x₁² − ω₂²x₂²)₊^γ dx` as an iterated Cartesian integral
/// with `x₁ = (√E/ω₁) sin θ`, `x₂ = (√(E − ω₁²x₁²)/ω₂) sin φ`.
pub fn quad_ellipse_2d(e: f64, w1: f64, w2: f64, g: f64) -> f64 {
    if e <= 0.0 {
        return 0.0;
    }
    let a = e.sqrt() / w1;
    integrate_half_circle(|th| {
        let x1 = a * th.sin();
        let f = (e - w1 * w1 * x1 * x1).max(0.0);
        let b = f.sqrt() / w2;
        let inner = integrate_half_circle(|ph| {
            let x2 = b * ph.sin();
            pos_pow(f - w2 * w2 * x2 * x2, g) * b * ph.cos()
        });
        inner * a * th.cos()
    })
}

/// `(B/2π) Σ_m ∫ ((2m+1)B + ω₁²x₁² + ω₂²x₂² − μ)₋^γ dx`.
pub fn quad_magnetic_2d(b: f64, w1: f64, w2: f64, mu: f64, g: f64) -> f64 {
    let mut total = 0.0;
    for m in 0.. {
        let e = mu - b * (2 * m + 1) as f64;
        if e <= 0.0 {
            break;
        }
        total += quad_ellipse_2d(e, w1, w2, g);
    }
    b / (2.0 * PI) * total
}

/// `(2π)⁻² ∬ (|p|² + ω₁²x₁² + ω₂²x₂² − μ)₋^γ dx dp`, radial in `p`.
pub fn quad_phase_space_2d(w1: f64, w2: f64, mu: f64, g: f64) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    let r_max = mu.sqrt();
    let radial = integrate_half_circle(|th| {
        // r = r_max (1 + sin θ)/2 on [0, r_max]
        let r = r_max * (1.0 + th.sin()) / 2.0;
        let dr = r_max * th.cos() / 2.0;
        2.0 * PI * r * quad_ellipse_2d(mu - r * r, w1, w2, g) * dr
    });
    radial / (4.0 * PI * PI)
}

/// `B/(2π)² Σ_m ∬ ((2m+1)B + p₃² + ω₁²x₁² + ω₂²x₂² + ω₃²x₃² − μ)₋^γ dx dp₃`,
/// radial in the `(p₃, ω₃x₃)` plane.
pub fn quad_magnetic_3d(b: f64, w1: f64, w2: f64, w3: f64, mu: f64, g: f64) -> f64 {
    let mut total = 0.0;
    for m in 0.. {
        let e = mu - b * (2 * m + 1) as f64;
        if e <= 0.0 {
            break;
        }
        let r_max = e.sqrt();
        total += integrate_half_circle(|th| {
            let r = r_max * (1.0 + th.sin()) / 2.0;
            let dr = r_max * th.cos() / 2.0;
            2.0 * PI * r / w3 * quad_ellipse_2d(e - r * r, w1, w2, g) * dr
        });
    }
    b / (4.0 * PI * PI) * total
}

/// `(1/2π) ∬ (p² + ω²x² − Λ)₋^γ dx dp`.
pub fn quad_osc1d(w: f64, lambda: f64, g: f64) -> f64 {
    quad_ellipse_2d(lambda, 1.0, w, g) / (2.0 * PI)
}

/// Staircase `j` from its definition as a running integral of slopes.
pub fn j_by_segments(b: f64, rho: f64) -> f64 {
    let level = b / (2.0 * PI);
    let mut remaining = rho;
    let mut total = 0.0;
    let mut l = 0u64;
    while remaining > 0.0 {
        let width = remaining.min(level);
        total += b * (2 * l + 1) as f64 * width;
        remaining -= width;
        l += 1;
    }
    total
}

/// `min_{ρ ∈ [0, ρ_max]} j(ρ) + vρ` by exhaustive grid search.
pub fn legendre_grid_search(b: f64, v: f64, rho_max: f64, step: f64) -> f64 {
    let n = (rho_max / step).ceil() as u64;
    let mut best = f64::INFINITY;
    let level = b / (2.0 * PI);
    for i in 0..=n {
        let rho = i as f64 * step;
        let l = (rho / level).floor();
        let r = rho / level - l;
        let j = b * b / (2.0 * PI) * (l * l + (2.0 * l + 1.0) * r);
        best = best.min(j + v * rho);
    }
    best
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
