//! Library results against independently computed reference values.

use std::f64::consts::PI;

use nongauss::analytic::{kappa4_reverse_protocol, kerr_expect_coherent, reverse_protocol_state, HALF_VARIANCE_TO_UNIT};
use nongauss::channels::nonhermitian_evolve;
use nongauss::cumulants::{cumulants_from_moments, k_statistics_of, quadrature_cumulants, var_k4};
use nongauss::experiment::{
    design_snr, interaction_scale, lambda_qg_gaussian, ConstantsRegistry, DesignMode, ExperimentParams, G, HBAR,
};
use nongauss::fock::{
    coherent_state, fock_state, kerr_evolve, normal_ordered_expect, quadrature_pdf, squeezed_coherent_state, wigner,
    yurke_stoler_state, KerrParams, QuadratureAngle, SqueezeParams,
};
use nongauss::Complex64;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Mutual energy of two clouds with density `exp(−r²/R²)/(π^{3/2}R³)` from the
/// shell theorem, by composite Simpson quadrature in the radius.
fn shell_theorem_energy(m: f64, big_r: f64) -> f64 {
    let rho = |r: f64| (-(r * r) / (big_r * big_r)).exp() / (PI.powf(1.5) * big_r.powi(3));
    let n = 4000;
    let r_max = 12.0 * big_r;
    let h = r_max / n as f64;
    let grid: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
    // cumulative enclosed mass and outer potential integrals by the trapezoid rule on a fine grid
    let shell: Vec<f64> = grid.iter().map(|&r| 4.0 * PI * r * r * rho(r)).collect();
    let mut inner = vec![0.0; n + 1];
    for i in 1..=n {
        inner[i] = inner[i - 1] + 0.5 * h * (shell[i] + shell[i - 1]);
    }
    let mut outer = vec![0.0; n + 1];
    for i in (0..n).rev() {
        let f = |j: usize| if grid[j] == 0.0 { 0.0 } else { shell[j] / grid[j] };
        outer[i] = outer[i + 1] + 0.5 * h * (f(i) + f(i + 1));
    }
    let potential = |i: usize| {
        if grid[i] == 0.0 {
            outer[0]
        } else {
            inner[i] / grid[i] + outer[i]
        }
    };
    let mut sum = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += w * shell[i] * potential(i);
    }
    -G * m * m * sum * h / 3.0
}

#[test]
fn gravitational_coupling_matches_shell_theorem() {
    for (m, r) in [(2.2e-25, 200e-6), (1.0, 1.0), (3e-3, 0.05)] {
        let oracle = shell_theorem_energy(m, r);
        assert!(rel(lambda_qg_gaussian(m, r), oracle) < 1e-3, "{m} {r}");
    }
}

#[test]
fn interaction_scale_from_coupling() {
    let (total, r, t) = (1e-14, 200e-6, 2.0);
    let x = lambda_qg_gaussian(total, r).abs() * t / HBAR;
    assert!(rel(interaction_scale(total, r, t), x) < 1e-14);
}

#[test]
fn design_scaling_laws() {
    let m = ConstantsRegistry::default().mass("Cs133").unwrap();
    let snr = |total: f64, t: f64, reps: u64| {
        let p = ExperimentParams::from_total_mass(m, total, 200e-6, t, reps).unwrap();
        design_snr(&p, None, DesignMode::FirstOrder).unwrap()
    };
    let base = snr(1e-15, 2.0, 40_000);
    assert!(rel(snr(1e-15, 4.0, 40_000), 2.0 * base) < 1e-12);
    assert!(rel(snr(1e-15, 2.0, 160_000), 2.0 * base) < 1e-12);
    // N rounds to an integer, so the mass law holds to that precision
    assert!(rel(snr(3e-15, 2.0, 40_000), 9.0 * base) < 1e-8);
}

#[test]
fn coherent_kerr_mean_field() {
    let alpha = Complex64::new(1.3, -0.4);
    let psi = coherent_state(alpha, 80).unwrap();
    let chi_t = 0.37;
    let evolved = kerr_evolve(&psi, &KerrParams::new(1.0, 0.0).unwrap(), chi_t);
    // attractive sign: each number state picks up exp(+i n(n−1)χt/2)
    let oracle = alpha * ((Complex64::from_polar(1.0, chi_t) - 1.0) * alpha.norm_sqr()).exp();
    let got = normal_ordered_expect(&evolved, 0, 1).unwrap();
    assert!((got - oracle).norm() < 1e-12, "{got} vs {oracle}");
    let closed = kerr_expect_coherent(alpha, 0, 1, 1.0, chi_t);
    assert!((closed - oracle).norm() < 1e-13);
}

#[test]
fn nonhermitian_damps_coherent_amplitude() {
    let alpha = Complex64::new(0.8, 0.5);
    let (lr, li, t) = (0.7, 0.3, 0.9);
    let psi = coherent_state(alpha, 50).unwrap();
    let (out, norm) = nonhermitian_evolve(&psi, lr, li, t).unwrap();
    let beta = alpha * Complex64::new(-li * t, -lr * t).exp();
    let target = coherent_state(beta, 50).unwrap();
    assert!((out.fidelity(&target) - 1.0).abs() < 1e-12);
    let norm_oracle = (0.5 * (beta.norm_sqr() - alpha.norm_sqr())).exp();
    assert!(rel(norm, norm_oracle) < 1e-12);
}

#[test]
fn reverse_protocol_first_order() {
    let xi = SqueezeParams::new(0.6, 0.3).unwrap();
    let phi = 0.9;
    let err = |tau: f64| {
        let psi = reverse_protocol_state(xi, 1.0, tau, 120).unwrap();
        let k4 = quadrature_cumulants(&psi, QuadratureAngle::new(phi), 4).unwrap().get(4);
        rel(k4, HALF_VARIANCE_TO_UNIT * kappa4_reverse_protocol(xi, phi, 1.0, tau))
    };
    let (coarse, fine) = (err(1e-5), err(1e-6));
    assert!(fine < 1e-3, "{fine}");
    // relative residual linear in τ
    assert!((8.0..12.0).contains(&(coarse / fine)), "{coarse} {fine}");
}

#[test]
fn wigner_of_squeezed_coherent_is_gaussian() {
    let (a, r, th) = (Complex64::new(0.7, -0.3), 0.4f64, 1.1f64);
    let psi = squeezed_coherent_state(a, SqueezeParams::new(r, th).unwrap(), 60).unwrap();
    let axis: Vec<f64> = (0..81).map(|i| -8.0 + i as f64 / 5.0).collect();
    let grid = wigner(&psi, &axis, &axis);
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let (sxx, spp, sxp) = (c - s * th.cos(), c + s * th.cos(), -s * th.sin());
    let det = sxx * spp - sxp * sxp;
    for (i, &x) in axis.iter().enumerate() {
        for (j, &p) in axis.iter().enumerate() {
            let (dx, dp) = (x - 2.0 * a.re, p - 2.0 * a.im);
            let q = (spp * dx * dx - 2.0 * sxp * dx * dp + sxx * dp * dp) / det;
            let w = (-0.5 * q).exp() / (2.0 * PI * det.sqrt());
            assert!((grid.values[i][j] - w).abs() < 1e-10, "({x}, {p})");
        }
    }
}

#[test]
fn wigner_marginals_are_quadrature_densities() {
    let psi = yurke_stoler_state(Complex64::new(1.2, 0.4), 60).unwrap();
    let xs: Vec<f64> = (0..61).map(|i| -3.0 + i as f64 / 10.0).collect();
    let ps: Vec<f64> = (0..241).map(|i| -12.0 + i as f64 / 10.0).collect();
    let grid = wigner(&psi, &xs, &ps);
    let px = quadrature_pdf(&psi, QuadratureAngle::new(0.0), &xs);
    for (a, b) in grid.marginal_x().iter().zip(&px) {
        assert!((a - b).abs() < 1e-10, "{a} {b}");
    }
    let wide: Vec<f64> = (0..241).map(|i| -12.0 + i as f64 / 10.0).collect();
    let narrow: Vec<f64> = (0..61).map(|i| -3.0 + i as f64 / 10.0).collect();
    let grid = wigner(&psi, &wide, &narrow);
    let pp = quadrature_pdf(&psi, QuadratureAngle::new(PI / 2.0), &narrow);
    for (j, want) in pp.iter().enumerate() {
        let column: Vec<f64> = grid.values.iter().map(|row| row[j]).collect();
        let got: f64 = (1..wide.len()).map(|i| 0.05 * (column[i] + column[i - 1])).sum();
        assert!((got - want).abs() < 1e-10, "{got} {want}");
    }
}

#[test]
fn fock_one_density() {
    let psi = fock_state(1, 8).unwrap();
    let xs = [-2.5, -0.3, 0.0, 1.7];
    let pdf = quadrature_pdf(&psi, QuadratureAngle::new(0.4), &xs);
    for (x, p) in xs.iter().zip(pdf) {
        let oracle = x * x * (-x * x / 2.0).exp() / (2.0 * PI).sqrt();
        assert!((p - oracle).abs() < 1e-14);
    }
}

/// Exact variance of `k₄` over all `2^m` outcomes of `m` Bernoulli(p) draws.
fn enumerate_var_k4(p: f64, m: usize) -> f64 {
    let mut mean = 0.0;
    let mut second = 0.0;
    for mask in 0u32..(1 << m) {
        let xs: Vec<f64> = (0..m).map(|i| ((mask >> i) & 1) as f64).collect();
        let ones = mask.count_ones() as i32;
        let w = p.powi(ones) * (1.0 - p).powi(m as i32 - ones);
        let k4 = k_statistics_of(&xs).unwrap().k4;
        mean += w * k4;
        second += w * k4 * k4;
    }
    second - mean * mean
}

#[test]
fn var_k4_matches_enumeration() {
    for (p, m) in [(0.5, 6), (0.3, 8), (0.15, 10)] {
        let kappa = cumulants_from_moments(&[p; 8]);
        let v = var_k4(&kappa, m as u64).unwrap();
        let oracle = enumerate_var_k4(p, m);
        assert!(rel(v, oracle) < 1e-10, "p {p} m {m}: {v} vs {oracle}");
    }
}
