use super::ControlError;
use crate::numerics::{Complex, Spectrum};

/// `zeta = -re / |lambda|`. Negative for right-half-plane eigenvalues.
pub fn damping_ratio(lambda: Complex) -> Result<f64, ControlError> {
    let modulus = lambda.re.hypot(lambda.im);
    if modulus == 0.0 {
        return Err(ControlError::ZeroEigenvalue);
    }
    if !modulus.is_finite() {
        return Err(ControlError::InvalidParams(format!("non-finite eigenvalue {lambda}")));
    }
    Ok((-lambda.re / modulus).clamp(-1.0, 1.0))
}

/// Smallest damping ratio over the spectrum.
pub fn min_damping_ratio(s: &Spectrum) -> Result<f64, ControlError> {
    if s.is_empty() {
        return Err(ControlError::EmptySpectrum);
    }
    s.iter()
        .map(|&l| damping_ratio(l))
        .try_fold(f64::INFINITY, |acc, z| z.map(|z| acc.min(z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn reported_eigenvalue_ratios() {
        assert!((damping_ratio(c(-3.032, 5.5839)).unwrap() - 0.4772).abs() < 1e-4);
        assert!((damping_ratio(c(-2.6591, 4.9738)).unwrap() - 0.4715).abs() < 5e-4);
    }

    #[test]
    fn axis_cases() {
        assert_eq!(damping_ratio(c(-1.0, 0.0)).unwrap(), 1.0);
        assert_eq!(damping_ratio(c(0.0, 4.0)).unwrap(), 0.0);
        assert_eq!(damping_ratio(c(2.0, 0.0)).unwrap(), -1.0);
        assert!(matches!(damping_ratio(c(0.0, 0.0)), Err(ControlError::ZeroEigenvalue)));
    }

    #[test]
    fn minimum_over_spectra() {
        let real = Spectrum::new(vec![c(-1.0, 0.0), c(-2.0, 0.0), c(-3.0, 0.0)]);
        assert_eq!(min_damping_ratio(&real).unwrap(), 1.0);

        let open = crate::control::StateSpacePlant::reference().open_loop_spectrum().unwrap();
        let oracle = -0.2954 / (0.2954f64.powi(2) + 4.9577f64.powi(2)).sqrt();
        let got = min_damping_ratio(&open).unwrap();
        assert!(got < 0.0);
        assert!((got - oracle).abs() < 1e-4, "{got} vs {oracle}");

        assert!(matches!(min_damping_ratio(&Spectrum::new(vec![])), Err(ControlError::EmptySpectrum)));
        let with_zero = Spectrum::new(vec![c(-1.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(min_damping_ratio(&with_zero), Err(ControlError::ZeroEigenvalue)));
    }

    proptest! {
        #[test]
        fn arctangent_form_agrees(re in -1e3f64..-1e-6, im in -1e3f64..1e3) {
            let direct = damping_ratio(c(re, im)).unwrap();
            let via_angle = (im / -re).atan().cos();
            prop_assert!((direct - via_angle).abs() <= 1e-12);
        }

        #[test]
        fn conjugate_symmetric(re in -1e3f64..1e3, im in -1e3f64..1e3) {
            prop_assume!(re != 0.0 || im != 0.0);
            prop_assert_eq!(damping_ratio(c(re, im)).unwrap(), damping_ratio(c(re, -im)).unwrap());
        }

        #[test]
        fn scale_invariant(re in -1e3f64..1e3, im in -1e3f64..1e3, k in 1e-3f64..1e3) {
            prop_assume!(re.hypot(im) > 1e-9);
            let a = damping_ratio(c(re, im)).unwrap();
            let b = damping_ratio(c(k * re, k * im)).unwrap();
            prop_assert!((a - b).abs() <= 1e-12);
        }

        #[test]
        fn positive_minimum_iff_stable(parts in proptest::collection::vec((-10f64..10.0, 0f64..10.0), 1..5)) {
            prop_assume!(parts.iter().all(|&(re, im)| re.hypot(im) > 1e-9));
            let mut values = Vec::new();
            for &(re, im) in &parts {
                values.push(c(re, im));
                if im != 0.0 {
                    values.push(c(re, -im));
                }
            }
            let s = Spectrum::new(values);
            let stable = s.iter().all(|l| l.re < 0.0);
            prop_assert_eq!(min_damping_ratio(&s).unwrap() > 0.0, stable);
        }
    }
}
