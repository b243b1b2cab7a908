use num_complex::Complex64;

/// `X(t) = prefactor · (left) e^{i number_phase N} (right)` for a Kerr-evolved operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeisenbergForm {
    pub prefactor: Complex64,
    pub number_phase: f64,
}

/// `aⁿ(t) = e^{i n(n−1)χt/2} e^{inχtN} aⁿ` under `H = −½ħχ a†a†aa`.
pub fn heisenberg_a_pow(n: u32, chi: f64, t: f64) -> HeisenbergForm {
    let n = n as f64;
    HeisenbergForm {
        prefactor: Complex64::from_polar(1.0, 0.5 * n * (n - 1.0) * chi * t),
        number_phase: n * chi * t,
    }
}

/// `a†ᵐ aⁿ(t) = e^{i(n−m)(n+m−1)χt/2} a†ᵐ e^{i(n−m)χtN} aⁿ`.
pub fn normal_ordered_evolution(m: u32, n: u32, chi: f64, t: f64) -> HeisenbergForm {
    let (m, n) = (m as f64, n as f64);
    HeisenbergForm {
        prefactor: Complex64::from_polar(1.0, 0.5 * (n - m) * (n + m - 1.0) * chi * t),
        number_phase: (n - m) * chi * t,
    }
}

/// `⟨α| a†ᵐ aⁿ(t) |α⟩ = e^{i(n−m)(n+m−1)χt/2} α*ᵐ αⁿ exp((e^{i(n−m)χt} − 1)|α|²)`.
pub fn kerr_expect_coherent(alpha: Complex64, m: u32, n: u32, chi: f64, t: f64) -> Complex64 {
    let h = normal_ordered_evolution(m, n, chi, t);
    let overlap = ((Complex64::from_polar(1.0, h.number_phase) - 1.0) * alpha.norm_sqr()).exp();
    h.prefactor * alpha.conj().powu(m) * alpha.powu(n) * overlap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, kerr_evolve, normal_ordered_expect, KerrParams};

    #[test]
    fn prefactors() {
        assert_eq!(heisenberg_a_pow(1, 0.3, 2.0).prefactor, Complex64::new(1.0, 0.0));
        let h = heisenberg_a_pow(4, 0.01, 1.0);
        assert!((h.prefactor - Complex64::from_polar(1.0, 0.06)).norm() < 1e-15);
        assert!((h.number_phase - 0.04).abs() < 1e-15);
        let h = heisenberg_a_pow(3, 0.0, 1.0);
        assert_eq!((h.prefactor, h.number_phase), (Complex64::new(1.0, 0.0), 0.0));
    }

    #[test]
    fn coherent_closed_form() {
        let a = Complex64::new(2.0, 0.0);
        assert_eq!(kerr_expect_coherent(Complex64::new(0.0, 0.0), 0, 2, 1.0, 0.5), Complex64::new(0.0, 0.0));
        let t0 = kerr_expect_coherent(a, 2, 3, 1.0, 0.0);
        assert!((t0 - a.conj().powu(2) * a.powu(3)).norm() < 1e-12);
        let v = kerr_expect_coherent(a, 0, 1, 1.0, 1e-3);
        let expect = a * ((Complex64::from_polar(1.0, 1e-3) - 1.0) * 4.0).exp();
        assert!((v - expect).norm() < 1e-15);
        let s = kerr_evolve(&coherent_state(a, 60).unwrap(), &KerrParams::new(1.0, 0.0).unwrap(), 1e-3);
        for (m, n) in [(0, 1), (1, 1), (0, 2), (1, 3), (2, 2)] {
            let f = normal_ordered_expect(&s, m, n).unwrap();
            assert!((kerr_expect_coherent(a, m as u32, n as u32, 1.0, 1e-3) - f).norm() < 1e-9 * (1.0 + f.norm()));
        }
    }
}
