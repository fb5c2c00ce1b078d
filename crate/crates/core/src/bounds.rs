//! Prokhorov's explicit sample size for the weak law of large numbers.
//!
//! For `n` Bernoulli trials, `P{|μn/n - p| <= ε} > 1 - η` as soon as
//! `n > (1 + ε)/ε² · ln(1/η) + 1/ε`.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProkhorovQuery {
    epsilon: f64,
    eta: f64,
}

impl ProkhorovQuery {
    /// Requires `epsilon > 0` and `0 < eta <= 1`, both finite.
    pub fn new(epsilon: f64, eta: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) || !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::OutOfDomain(format!(
                "epsilon = {epsilon} must be > 0 and eta = {eta} must lie in (0, 1]"
            )));
        }
        Ok(ProkhorovQuery { epsilon, eta })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// The real-valued right-hand side `(1 + ε)/ε² · ln(1/η) + 1/ε`.
pub fn prokhorov_bound(q: &ProkhorovQuery) -> f64 {
    let eps = q.epsilon;
    (1.0 + eps) / (eps * eps) * -q.eta.ln() + 1.0 / eps
}

/// The smallest integer strictly greater than [`prokhorov_bound`].
pub fn prokhorov_n0(q: &ProkhorovQuery) -> Result<u64> {
    let bound = prokhorov_bound(q);
    // 2^53: above this, consecutive integers are no longer representable.
    if bound.is_nan() || bound >= 9_007_199_254_740_992.0 {
        return Err(Error::OutOfDomain(format!(
            "bound {bound} exceeds the integer range"
        )));
    }
    Ok(bound.floor() as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n0(eps: f64, eta: f64) -> u64 {
        prokhorov_n0(&ProkhorovQuery::new(eps, eta).unwrap()).unwrap()
    }

    #[test]
    fn thousandth_thousandth() {
        let q = ProkhorovQuery::new(0.001, 0.001).unwrap();
        let bound = prokhorov_bound(&q);
        assert!((bound - 6_915_663.034).abs() < 1e-3, "bound {bound}");
        assert_eq!(prokhorov_n0(&q), Ok(6_915_664));
    }

    #[test]
    fn unit_epsilon_eta_inverse_e() {
        let q = ProkhorovQuery::new(1.0, (-1.0f64).exp()).unwrap();
        assert!((prokhorov_bound(&q) - 3.0).abs() < 1e-12);
        assert_eq!(prokhorov_n0(&q), Ok(4));
    }

    #[test]
    fn eta_one_drops_log_term() {
        assert_eq!(
            prokhorov_bound(&ProkhorovQuery::new(0.5, 1.0).unwrap()),
            2.0
        );
        assert_eq!(n0(0.5, 1.0), 3);
    }

    #[test]
    fn domain_errors() {
        for (eps, eta) in [(0.0, 0.5), (-1.0, 0.5), (0.1, 0.0), (0.1, 1.5), (0.1, -0.2)] {
            let err = ProkhorovQuery::new(eps, eta).unwrap_err();
            assert!(
                err.to_string().starts_with("parameters out of domain"),
                "{err}"
            );
        }
        assert!(ProkhorovQuery::new(f64::NAN, 0.5).is_err());
        assert!(ProkhorovQuery::new(0.5, f64::NAN).is_err());
        assert!(prokhorov_n0(&ProkhorovQuery::new(1e-300, 0.5).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn tightest_strict_integer(eps in 1e-4f64..10.0, eta in 1e-12f64..=1.0) {
            let q = ProkhorovQuery::new(eps, eta).unwrap();
            let v = prokhorov_n0(&q).unwrap() as f64;
            let bound = prokhorov_bound(&q);
            prop_assert!(v - 1.0 <= bound && bound < v);
        }

        #[test]
        fn antitone(
            eps in 1e-4f64..10.0,
            eta in 1e-12f64..=1.0,
            eps_scale in 0.01f64..=1.0,
            eta_scale in 0.01f64..=1.0,
        ) {
            let base = n0(eps, eta);
            prop_assert!(n0(eps * eps_scale, eta) >= base);
            prop_assert!(n0(eps, eta * eta_scale) >= base);
        }
    }
}
