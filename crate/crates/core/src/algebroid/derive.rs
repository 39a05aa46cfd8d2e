//! Relations forced on a three-dimensional bundle by its two defining
//! parameters `a . b = beta b + gamma0 del a + gamma1 del(b0a)` and
//! `b0 del(b0a) = c0 del a + c1 del(b0a)`.

use num_traits::{One, Zero};

use super::AlgebroidError;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim3Constraints {
    pub c0: Scalar,
    pub c1: Scalar,
    pub gamma0: Scalar,
    pub gamma1: Scalar,
    pub beta: Scalar,
    /// `gamma0 + (gamma1 + 1) c1`, the coefficient of `b0a` in `a*a`.
    pub kappa: Scalar,
    /// Whether `kappa chi = 0` forces `chi = 0`.
    pub chi_forced_zero: bool,
}

impl Dim3Constraints {
    /// `a*a` in the basis `{1, a, b0a}` for a given `chi`.
    pub fn a_times_a(&self, chi: &Scalar) -> [Scalar; 3] {
        let g = &self.gamma1 + &Scalar::one();
        [&g * chi, &self.beta + &(&g * &self.c0), self.kappa.clone()]
    }

    /// `a . del a` in the basis `{del a, del(b0a)}`.
    pub fn a_del_a(&self) -> [Scalar; 2] {
        let half = Scalar::ratio(1, 2);
        let g = &self.gamma1 + &Scalar::one();
        [&half * &(&self.beta + &(&g * &self.c0)), &half * &self.kappa]
    }

    /// `a*(b0a) = beta b0a`, in the basis `{1, a, b0a}`.
    pub fn a_times_b0a(&self) -> [Scalar; 3] {
        [Scalar::zero(), Scalar::zero(), self.beta.clone()]
    }

    /// `(b0a)*(b0a) = 0`.
    pub fn b0a_squared(&self) -> [Scalar; 3] {
        [Scalar::zero(), Scalar::zero(), Scalar::zero()]
    }
}

pub fn derive_dim3_constraints(
    c0: &Scalar,
    c1: &Scalar,
    gamma0: &Scalar,
    gamma1: &Scalar,
) -> Result<Dim3Constraints, AlgebroidError> {
    let g = gamma1 + &Scalar::one();
    let kappa = gamma0 + &(&g * c1);
    let second = &kappa * c0;
    if !second.is_zero() {
        return Err(AlgebroidError::InconsistentParameters(format!(
            "(gamma0 + (gamma1 + 1) c1) c0 = {second} is nonzero"
        )));
    }
    let beta = &(&g * c0) + &(&kappa * c1);
    Ok(Dim3Constraints {
        c0: c0.clone(),
        c1: c1.clone(),
        gamma0: gamma0.clone(),
        gamma1: gamma1.clone(),
        beta,
        chi_forced_zero: !kappa.is_zero(),
        kappa,
    })
}
