//! Named continuous families produced by the by-parts transform, with
//! closed-form components wherever they exist.

use rand::{Rng, RngCore};

use crate::dist::{numeric_quantile, Continuous, StacyBase, StdNormal, Support};
use crate::error::{Error, Result};
use crate::quad::QuadratureConfig;
use crate::special::{
    incomplete_beta_complement, ln_beta, ln_gamma, normal_cdf, normal_pdf,
    upper_incomplete_gamma_scaled, SQRT_PI,
};

/// Closed-form pieces of a transformed distribution, shared by the identity
/// and dominance checks: N * G(x) = F(x) + u(x) v(x) - u(x_l) v(x_l) with
/// N = 1 + u(x_h) v(x_h) - u(x_l) v(x_l).
pub trait IbpFamily {
    fn support(&self) -> Support;
    fn base_cdf(&self, x: f64) -> f64;
    fn base_survival(&self, x: f64) -> f64;
    fn u(&self, x: f64) -> f64;
    fn v(&self, x: f64) -> f64;
    /// u(x_l) v(x_l)
    fn lower_boundary(&self) -> f64 {
        0.0
    }
    /// u(x_h) v(x_h)
    fn upper_boundary(&self) -> f64 {
        0.0
    }
    fn normalizer(&self) -> f64 {
        1.0 + self.upper_boundary() - self.lower_boundary()
    }
    fn cdf(&self, x: f64) -> f64;
    fn survival(&self, x: f64) -> f64;
    /// Whether first-order dominance of the L-form by the base is guaranteed
    /// (boundary-free construction, or proven for the family).
    fn dominance_guaranteed(&self) -> bool {
        self.lower_boundary() == 0.0 && self.upper_boundary() == 0.0
    }
}

/// z + expm1(-z), the quantity (lambda - 1 + e^{-lambda}) reduces to; kept
/// relatively accurate down to z -> 0.
pub(crate) fn psi(z: f64) -> f64 {
    if z.abs() < 1e-5 {
        let z2 = z * z;
        0.5 * z2 * (1.0 - z / 3.0 + z2 / 12.0 - z2 * z / 60.0)
    } else {
        z + (-z).exp_m1()
    }
}

const LAMBDA_ONE_WINDOW: f64 = 1e-6;

// ---------------------------------------------------------------------------
// u = F^lambda class
// ---------------------------------------------------------------------------

/// The u = F^lambda family: a negative mixture of the base and its top
/// lambda-th order statistic. Recovers the base as lambda -> infinity.
#[derive(Debug, Clone, Copy)]
pub struct FLambda<B: Continuous> {
    pub base: B,
    pub lambda: f64,
}

impl<B: Continuous> FLambda<B> {
    pub fn new(base: B, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
        }
        Ok(FLambda { base, lambda })
    }

    fn is_log_branch(&self) -> bool {
        (self.lambda - 1.0).abs() < LAMBDA_ONE_WINDOW
    }

    /// g(x) = lambda f (F^{lambda-1} - 1)/(1 - lambda); -ln(F) f at lambda=1.
    /// +inf at the lower limit when lambda < 1 and f(x_l) > 0.
    pub fn pdf(&self, x: f64) -> f64 {
        let f = self.base.pdf(x);
        if f == 0.0 {
            return 0.0;
        }
        let big_f = self.base.cdf(x);
        if self.is_log_branch() {
            let lnf = big_f.ln();
            let eps = self.lambda - 1.0;
            return self.lambda * f * (-lnf - 0.5 * eps * lnf * lnf);
        }
        if big_f == 0.0 {
            return if self.lambda < 1.0 {
                f64::INFINITY
            } else {
                self.lambda / (self.lambda - 1.0) * f
            };
        }
        self.lambda * f * (big_f.powf(self.lambda - 1.0) - 1.0) / (1.0 - self.lambda)
    }

    /// G(x) = (F^lambda - lambda F)/(1 - lambda); (1 - ln F) F at lambda=1.
    pub fn cdf(&self, x: f64) -> f64 {
        let big_f = self.base.cdf(x);
        if big_f <= 0.0 {
            return 0.0;
        }
        if self.is_log_branch() {
            let lnf = big_f.ln();
            let eps = self.lambda - 1.0;
            return (big_f * (1.0 - lnf) - 0.5 * eps * big_f * lnf * lnf).clamp(0.0, 1.0);
        }
        ((big_f.powf(self.lambda) - self.lambda * big_f) / (1.0 - self.lambda)).clamp(0.0, 1.0)
    }

    /// Survival in a right-tail-stable form.
    pub fn survival(&self, x: f64) -> f64 {
        let fbar = self.base.survival(x);
        if fbar >= 1.0 {
            return 1.0;
        }
        let ln_f = (-fbar).ln_1p();
        if self.is_log_branch() {
            let big_f = 1.0 - fbar;
            let eps = self.lambda - 1.0;
            return (fbar + big_f * ln_f + 0.5 * eps * big_f * ln_f * ln_f).clamp(0.0, 1.0);
        }
        // (1 - F^lambda - lambda Fbar) / (1 - lambda)
        let one_minus_flam = -(self.lambda * ln_f).exp_m1();
        ((one_minus_flam - self.lambda * fbar) / (1.0 - self.lambda)).clamp(0.0, 1.0)
    }

    pub fn hazard(&self, x: f64) -> f64 {
        self.pdf(x) / self.survival(x)
    }

    /// G-bar(x) / F-bar(x)^2, which tends to lambda/2 toward the right tail.
    pub fn tail_ratio(&self, x: f64) -> f64 {
        let fbar = self.base.survival(x);
        self.survival(x) / (fbar * fbar)
    }

    /// Y = Q(F(X) V^{1/lambda}) with X from the base.
    pub fn sample(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let x = self.base.sample(rng);
        let v: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let target = self.base.cdf(x) * v.powf(1.0 / self.lambda);
        self.base
            .quantile(target)
            .ok_or_else(|| Error::UnsupportedSampler("base quantile unavailable".into()))
    }
}

impl<B: Continuous> IbpFamily for FLambda<B> {
    fn support(&self) -> Support {
        self.base.support()
    }
    fn base_cdf(&self, x: f64) -> f64 {
        self.base.cdf(x)
    }
    fn base_survival(&self, x: f64) -> f64 {
        self.base.survival(x)
    }
    fn u(&self, x: f64) -> f64 {
        self.base.cdf(x).powf(self.lambda)
    }
    fn v(&self, x: f64) -> f64 {
        let big_f = self.base.cdf(x);
        if self.is_log_branch() {
            -big_f.ln()
        } else {
            (1.0 - big_f.powf(1.0 - self.lambda)) / (1.0 - self.lambda)
        }
    }
    fn cdf(&self, x: f64) -> f64 {
        FLambda::cdf(self, x)
    }
    fn survival(&self, x: f64) -> f64 {
        FLambda::survival(self, x)
    }
}

// ---------------------------------------------------------------------------
// u = exp(lambda F) class
// ---------------------------------------------------------------------------

/// The u = exp(lambda F) family. Boundary terms survive, so the normalized
/// form applies; the base is recovered as lambda -> infinity and
/// G-bar -> F-bar^2 as lambda -> 0.
#[derive(Debug, Clone, Copy)]
pub struct ExpLambdaF<B: Continuous> {
    pub base: B,
    pub lambda: f64,
}

impl<B: Continuous> ExpLambdaF<B> {
    pub fn new(base: B, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
        }
        Ok(ExpLambdaF { base, lambda })
    }

    /// G = (lambda F - exp(-lambda(1-F)) + exp(-lambda)) / (lambda - 1 + exp(-lambda)).
    pub fn cdf(&self, x: f64) -> f64 {
        let f = self.base.cdf(x);
        let lam = self.lambda;
        let num = lam * f - (-lam).exp() * (lam * f).exp_m1();
        (num / psi(lam)).clamp(0.0, 1.0)
    }

    /// G-bar = psi(lambda F-bar)/psi(lambda) with psi(z) = z - 1 + e^{-z}.
    pub fn survival(&self, x: f64) -> f64 {
        let fbar = self.base.survival(x);
        (psi(self.lambda * fbar) / psi(self.lambda)).clamp(0.0, 1.0)
    }

    /// g = lambda f (1 - e^{-lambda F-bar}) / (lambda - 1 + e^{-lambda}).
    pub fn pdf(&self, x: f64) -> f64 {
        let f = self.base.pdf(x);
        let fbar = self.base.survival(x);
        self.lambda * f * (-(-self.lambda * fbar).exp_m1()) / psi(self.lambda)
    }

    pub fn hazard(&self, x: f64) -> f64 {
        self.pdf(x) / self.survival(x)
    }

    /// Limit of G/F in the left tail: lambda (1 - e^{-lambda}) / psi(lambda),
    /// never exceeding 2.
    pub fn left_tail_ratio(&self) -> f64 {
        let lam = self.lambda;
        lam * (-(-lam).exp_m1()) / psi(lam)
    }

    /// Rejection form of the u-inverse sampler (boundary mass below x_l is
    /// redrawn).
    pub fn sample(&self, rng: &mut dyn RngCore) -> Result<f64> {
        for _ in 0..10_000 {
            let x = self.base.sample(rng);
            let v: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let z = (self.lambda * self.base.cdf(x)).exp() * v;
            if z >= 1.0 {
                return self
                    .base
                    .quantile(z.ln() / self.lambda)
                    .ok_or_else(|| Error::UnsupportedSampler("base quantile unavailable".into()));
            }
        }
        Err(Error::NonConvergence(
            "rejection sampler exceeded 10000 attempts".into(),
        ))
    }
}

impl<B: Continuous> IbpFamily for ExpLambdaF<B> {
    fn support(&self) -> Support {
        self.base.support()
    }
    fn base_cdf(&self, x: f64) -> f64 {
        self.base.cdf(x)
    }
    fn base_survival(&self, x: f64) -> f64 {
        self.base.survival(x)
    }
    fn u(&self, x: f64) -> f64 {
        (self.lambda * self.base.cdf(x)).exp()
    }
    fn v(&self, x: f64) -> f64 {
        // (e^{-lambda F} - e^{-lambda}) / lambda
        let f = self.base.cdf(x);
        ((-self.lambda * f).exp() - (-self.lambda).exp()) / self.lambda
    }
    fn lower_boundary(&self) -> f64 {
        -(-self.lambda).exp_m1() / self.lambda
    }
    fn cdf(&self, x: f64) -> f64 {
        ExpLambdaF::cdf(self, x)
    }
    fn survival(&self, x: f64) -> f64 {
        ExpLambdaF::survival(self, x)
    }
    fn dominance_guaranteed(&self) -> bool {
        // psi(z)/z is increasing, so psi(lambda Fbar) <= Fbar psi(lambda)
        true
    }
}

// ---------------------------------------------------------------------------
// Special cases with their own closed forms
// ---------------------------------------------------------------------------

/// Two-parameter phase-type distribution: the right shift of the unit
/// exponential with v = e^{-lambda x}; equivalently the sum of Exp(1) and
/// Exp(lambda) variables. Hazard rises with slope lambda at zero and levels
/// off at min(1, lambda).
#[derive(Debug, Clone, Copy)]
pub struct PhaseTypeExponential {
    pub lambda: f64,
}

impl PhaseTypeExponential {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
        }
        Ok(PhaseTypeExponential { lambda })
    }

    pub fn mean_value(&self) -> f64 {
        1.0 + 1.0 / self.lambda
    }

    pub fn hazard(&self, x: f64) -> f64 {
        self.pdf(x) / self.survival(x)
    }
}

impl Continuous for PhaseTypeExponential {
    fn support(&self) -> Support {
        Support::new(0.0, f64::INFINITY)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let eps = self.lambda - 1.0;
        if eps.abs() < 1e-9 {
            self.lambda * x * (-x).exp()
        } else {
            self.lambda * (-x).exp() * (-eps * x).exp_m1() / (-eps)
        }
    }
    fn cdf(&self, x: f64) -> f64 {
        1.0 - self.survival(x)
    }
    fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        let eps = self.lambda - 1.0;
        if eps.abs() < 1e-9 {
            (1.0 + x) * (-x).exp()
        } else {
            (-x).exp() * (1.0 - (-eps * x).exp_m1() / eps)
        }
    }
    fn mean(&self) -> Option<f64> {
        Some(self.mean_value())
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        -u1.ln() - u2.ln() / self.lambda
    }
}

/// The u = t^lambda right shift of the unit exponential: a two-component
/// mixture of exponential and gamma(2) densities.
#[derive(Debug, Clone, Copy)]
pub struct ExpGammaMixture {
    pub lambda: f64,
}

impl ExpGammaMixture {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
        }
        Ok(ExpGammaMixture { lambda })
    }

    pub fn mean_value(&self) -> f64 {
        (2.0 + self.lambda) / (1.0 + self.lambda)
    }
}

impl Continuous for ExpGammaMixture {
    fn support(&self) -> Support {
        Support::new(0.0, f64::INFINITY)
    }
    fn pdf(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        (t + self.lambda) * (-t).exp() / (self.lambda + 1.0)
    }
    fn cdf(&self, t: f64) -> f64 {
        1.0 - self.survival(t)
    }
    fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        (-t).exp() * (1.0 + self.lambda + t) / (1.0 + self.lambda)
    }
    fn mean(&self) -> Option<f64> {
        Some(self.mean_value())
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let pick: f64 = rng.gen();
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        if pick < self.lambda / (self.lambda + 1.0) {
            -u1.ln()
        } else {
            let u2: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            -u1.ln() - u2.ln()
        }
    }
}

// ---------------------------------------------------------------------------
// Stacy L-shift (modified Stacy / modified Weibull)
// ---------------------------------------------------------------------------

/// Left shift of the Stacy (generalized gamma) distribution by u = t^{bg-1+lambda}
/// where bg = beta*gamma. Needs the incomplete gamma function with first
/// argument (1-lambda)/gamma, negative whenever lambda > 1.
#[derive(Debug, Clone)]
pub struct StacyLShift {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
    cfg: QuadratureConfig,
    ln_gamma_beta: f64,
}

impl StacyLShift {
    pub fn new(alpha: f64, beta: f64, gamma: f64, lambda: f64) -> Result<Self> {
        Self::with_config(alpha, beta, gamma, lambda, QuadratureConfig::default())
    }

    pub fn with_config(
        alpha: f64,
        beta: f64,
        gamma: f64,
        lambda: f64,
        cfg: QuadratureConfig,
    ) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && gamma > 0.0) {
            return Err(Error::Domain(
                "alpha, beta, gamma must all be positive".into(),
            ));
        }
        if !(beta * gamma + lambda - 1.0 > 0.0) {
            return Err(Error::Domain(format!(
                "requires beta*gamma + lambda - 1 > 0, got {}",
                beta * gamma + lambda - 1.0
            )));
        }
        Ok(StacyLShift {
            alpha,
            beta,
            gamma,
            lambda,
            cfg,
            ln_gamma_beta: ln_gamma(beta),
        })
    }

    /// The u-exponent beta*gamma + lambda - 1 (= 1/xi).
    pub fn exponent(&self) -> f64 {
        self.beta * self.gamma + self.lambda - 1.0
    }

    /// Reliability growth xi = 1/(beta*gamma - 1 + lambda).
    pub fn xi(&self) -> f64 {
        1.0 / self.exponent()
    }

    /// E_g(T)/E_f(T) = k/(k+1) with k the u-exponent.
    pub fn mean_ratio(&self) -> f64 {
        let k = self.exponent();
        k / (k + 1.0)
    }

    pub fn base(&self) -> StacyBase {
        StacyBase::new(self.alpha, self.beta, self.gamma)
    }

    pub fn mean(&self) -> f64 {
        self.mean_ratio() * self.base().mean().unwrap()
    }

    fn incgam_a(&self) -> f64 {
        (1.0 - self.lambda) / self.gamma
    }

    fn w(&self, t: f64) -> f64 {
        (self.alpha * t).powf(self.gamma)
    }

    /// ln g(t); g(t) = alpha k (alpha t)^{k-1} Gamma(a; w)/Gamma(beta).
    pub fn log_pdf(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        let k = self.exponent();
        let w = self.w(t);
        let scaled = upper_incomplete_gamma_scaled(self.incgam_a(), w, &self.cfg)?;
        Ok(self.alpha.ln() + k.ln() + (k - 1.0) * (self.alpha * t).ln() - w + scaled.ln()
            - self.ln_gamma_beta)
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        Ok(self.log_pdf(t)?.exp())
    }

    /// ln G-bar(t); G-bar = F-bar - (alpha t)^k Gamma(a; w)/Gamma(beta).
    pub fn log_survival(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Ok(0.0);
        }
        let k = self.exponent();
        let w = self.w(t);
        let scaled_a = upper_incomplete_gamma_scaled(self.incgam_a(), w, &self.cfg)?;
        let scaled_beta = upper_incomplete_gamma_scaled(self.beta, w, &self.cfg)?;
        let inner = scaled_beta - w.powf(k / self.gamma) * scaled_a;
        if inner <= 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(-w + inner.ln() - self.ln_gamma_beta)
    }

    pub fn survival(&self, t: f64) -> Result<f64> {
        Ok(self.log_survival(t)?.exp())
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        Ok(1.0 - self.survival(t)?)
    }

    pub fn hazard(&self, t: f64) -> Result<f64> {
        Ok((self.log_pdf(t)? - self.log_survival(t)?).exp())
    }

    /// T = X V^{xi} with X from the Stacy base.
    pub fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let x = self.base().sample(rng);
        let v: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        x * v.powf(self.xi())
    }
}

impl IbpFamily for StacyLShift {
    fn support(&self) -> Support {
        Support::new(0.0, f64::INFINITY)
    }
    fn base_cdf(&self, x: f64) -> f64 {
        self.base().cdf(x)
    }
    fn base_survival(&self, x: f64) -> f64 {
        self.base().survival(x)
    }
    fn u(&self, x: f64) -> f64 {
        (self.alpha * x).powf(self.exponent())
    }
    fn v(&self, x: f64) -> f64 {
        let w = self.w(x);
        let scaled = upper_incomplete_gamma_scaled(self.incgam_a(), w, &self.cfg)
            .unwrap_or(f64::NAN);
        (-w + scaled.ln() - self.ln_gamma_beta).exp()
    }
    fn cdf(&self, x: f64) -> f64 {
        StacyLShift::cdf(self, x).unwrap_or(f64::NAN)
    }
    fn survival(&self, x: f64) -> f64 {
        StacyLShift::survival(self, x).unwrap_or(f64::NAN)
    }
}

// ---------------------------------------------------------------------------
// Modified exponential (Stacy with beta = gamma = 1, lambda = 1/2)
// ---------------------------------------------------------------------------

/// One-parameter lifetime distribution with pdf
/// alpha sqrt(pi) Phi(-sqrt(2 alpha t)) / sqrt(alpha t): infinite at zero,
/// exponential in the tail, hazard decreasing from infinity to alpha.
#[derive(Debug, Clone, Copy)]
pub struct ModifiedExponential {
    pub alpha: f64,
}

impl ModifiedExponential {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::Domain(format!("alpha must be > 0, got {alpha}")));
        }
        Ok(ModifiedExponential { alpha })
    }

    /// e^w Gamma(1/2; w) = sqrt(pi) erfc(sqrt(w)) e^w, no quadrature needed.
    fn scaled_half_gamma(w: f64) -> f64 {
        upper_incomplete_gamma_scaled(0.5, w, &QuadratureConfig::default()).unwrap()
    }

    pub fn hazard(&self, t: f64) -> f64 {
        let w = self.alpha * t;
        let s = Self::scaled_half_gamma(w);
        // g / G-bar with the common e^{-w} cancelled
        self.alpha * s / (2.0 * w.sqrt() * (1.0 - w.sqrt() * s))
    }

    /// E(T^n) = alpha^{-n} n! / (1 + 2n).
    pub fn moment(&self, n: u32) -> f64 {
        let mut fact = 1.0;
        for i in 2..=n {
            fact *= i as f64;
        }
        self.alpha.powi(-(n as i32)) * fact / (1.0 + 2.0 * n as f64)
    }

    pub fn variance(&self) -> f64 {
        self.moment(2) - self.moment(1).powi(2)
    }

    pub fn coefficient_of_variation(&self) -> f64 {
        self.variance().sqrt() / self.moment(1)
    }

    pub fn skewness(&self) -> f64 {
        let m = self.moment(1);
        let mu3 = self.moment(3) - 3.0 * m * self.moment(2) + 2.0 * m.powi(3);
        mu3 / self.variance().powf(1.5)
    }

    pub fn excess_kurtosis(&self) -> f64 {
        let m = self.moment(1);
        let mu4 = self.moment(4) - 4.0 * m * self.moment(3) + 6.0 * m * m * self.moment(2)
            - 3.0 * m.powi(4);
        mu4 / self.variance().powi(2) - 3.0
    }
}

impl Continuous for ModifiedExponential {
    fn support(&self) -> Support {
        Support::new(0.0, f64::INFINITY)
    }
    fn pdf(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        if t == 0.0 {
            return f64::INFINITY;
        }
        let w = self.alpha * t;
        self.alpha * SQRT_PI * normal_cdf(-(2.0 * w).sqrt()) / w.sqrt()
    }
    fn cdf(&self, t: f64) -> f64 {
        1.0 - self.survival(t)
    }
    fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        let w = self.alpha * t;
        ((-w).exp() * (1.0 - w.sqrt() * Self::scaled_half_gamma(w))).clamp(0.0, 1.0)
    }
    fn mean(&self) -> Option<f64> {
        Some(self.moment(1))
    }
    /// T = -U^2 ln(V) / alpha.
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let u: f64 = rng.gen();
        let v: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        -u * u * v.ln() / self.alpha
    }
}

impl IbpFamily for ModifiedExponential {
    fn support(&self) -> Support {
        Support::new(0.0, f64::INFINITY)
    }
    fn base_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.alpha * x).exp_m1()
        }
    }
    fn base_survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.alpha * x).exp()
        }
    }
    fn u(&self, x: f64) -> f64 {
        (self.alpha * x).sqrt()
    }
    fn v(&self, x: f64) -> f64 {
        2.0 * SQRT_PI * normal_cdf(-(2.0 * self.alpha * x).sqrt())
    }
    fn cdf(&self, x: f64) -> f64 {
        Continuous::cdf(self, x)
    }
    fn survival(&self, x: f64) -> f64 {
        Continuous::survival(self, x)
    }
}

// ---------------------------------------------------------------------------
// Beta L-shift
// ---------------------------------------------------------------------------

/// Four-parameter left shift of the beta distribution by u = x^{alpha+lambda-1},
/// with constant of integration c >= 0 allowed on the doubly-bounded support.
/// Not label-invariant; `mirror` applies the X <-> 1-X relabelling.
#[derive(Debug, Clone)]
pub struct BetaLShift {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub c: f64,
    pub mirror: bool,
    cfg: QuadratureConfig,
    ln_b: f64,
}

impl BetaLShift {
    pub fn new(alpha: f64, beta: f64, lambda: f64, c: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0) {
            return Err(Error::Domain("alpha and beta must be positive".into()));
        }
        if !(alpha + lambda - 1.0 > 0.0) {
            return Err(Error::Domain(format!(
                "requires alpha + lambda - 1 > 0, got {}",
                alpha + lambda - 1.0
            )));
        }
        if !(c >= 0.0) {
            return Err(Error::Domain(format!("c must be >= 0, got {c}")));
        }
        Ok(BetaLShift {
            alpha,
            beta,
            lambda,
            c,
            mirror: false,
            cfg: QuadratureConfig::default(),
            ln_b: ln_beta(alpha, beta),
        })
    }

    pub fn mirrored(mut self) -> Self {
        self.mirror = !self.mirror;
        self
    }

    fn exponent(&self) -> f64 {
        self.alpha + self.lambda - 1.0
    }

    /// v(x) = B(1-lambda, beta; x)/B(alpha, beta) + c.
    pub fn v_value(&self, x: f64) -> Result<f64> {
        let bc = incomplete_beta_complement(1.0 - self.lambda, self.beta, x, &self.cfg)?;
        Ok(bc / self.ln_b.exp() + self.c)
    }

    fn oriented(&self, x: f64) -> f64 {
        if self.mirror {
            1.0 - x
        } else {
            x
        }
    }

    /// g(x) = (alpha + lambda - 1) x^{alpha+lambda-2} v(x) / (1 + c).
    pub fn pdf(&self, x: f64) -> Result<f64> {
        let y = self.oriented(x);
        if y <= 0.0 || y > 1.0 {
            return Ok(if y == 0.0 && self.exponent() < 1.0 {
                f64::INFINITY
            } else {
                0.0
            });
        }
        let k = self.exponent();
        Ok(k * y.powf(k - 1.0) / y * y * self.v_value(y)? / (1.0 + self.c))
    }

    /// G(x) = (F(x) + x^{alpha+lambda-1} v(x)) / (1 + c).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if self.mirror {
            return Ok(1.0 - self.plain_cdf(1.0 - x)?);
        }
        self.plain_cdf(x)
    }

    fn plain_cdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x >= 1.0 {
            return Ok(1.0);
        }
        let f = crate::special::reg_incomplete_beta(self.alpha, self.beta, x);
        let uv = x.powf(self.exponent()) * self.v_value(x)?;
        Ok(((f + uv) / (1.0 + self.c)).clamp(0.0, 1.0))
    }

    pub fn survival(&self, x: f64) -> Result<f64> {
        Ok(1.0 - self.cdf(x)?)
    }

    /// E_g(X^n) = (alpha-1+lambda)(c + E_f(X^n)) / ((1+c)(alpha-1+lambda+n)),
    /// stated for the unmirrored orientation.
    pub fn moment(&self, n: u32) -> f64 {
        let k = self.exponent();
        let mut ef = 1.0;
        for j in 0..n {
            ef *= (self.alpha + j as f64) / (self.alpha + self.beta + j as f64);
        }
        k * (self.c + ef) / ((1.0 + self.c) * (k + n as f64))
    }

    /// g(1) = (alpha + lambda - 1) c / (1 + c).
    pub fn density_at_one(&self) -> f64 {
        self.exponent() * self.c / (1.0 + self.c)
    }

    /// Three-step mixture sampler: with probability c/(1+c) a pure power
    /// draw V^{1/(alpha+lambda-1)}, otherwise a beta draw damped by
    /// W^{1/(alpha+lambda-1)}.
    pub fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let k = self.exponent();
        let u: f64 = rng.gen();
        let y = if u < self.c / (1.0 + self.c) {
            let v: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            v.powf(1.0 / k)
        } else {
            let x = crate::dist::BetaDist::new(self.alpha, self.beta).sample(rng);
            let w: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            x * w.powf(1.0 / k)
        };
        self.oriented(y)
    }
}

impl IbpFamily for BetaLShift {
    fn support(&self) -> Support {
        Support::new(0.0, 1.0)
    }
    fn base_cdf(&self, x: f64) -> f64 {
        crate::special::reg_incomplete_beta(self.alpha, self.beta, x.clamp(0.0, 1.0))
    }
    fn base_survival(&self, x: f64) -> f64 {
        1.0 - self.base_cdf(x)
    }
    fn u(&self, x: f64) -> f64 {
        x.powf(self.exponent())
    }
    fn v(&self, x: f64) -> f64 {
        self.v_value(x).unwrap_or(f64::NAN)
    }
    fn upper_boundary(&self) -> f64 {
        self.c
    }
    fn cdf(&self, x: f64) -> f64 {
        self.plain_cdf(x).unwrap_or(f64::NAN)
    }
    fn survival(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }
    fn dominance_guaranteed(&self) -> bool {
        self.c == 0.0
    }
}

// ---------------------------------------------------------------------------
// Skew normal via the F^lambda class
// ---------------------------------------------------------------------------

/// Skewed normal from the u = F^lambda transform of the normal:
/// G(z) = (Phi(z)^lambda - lambda Phi(z)) / (1 - lambda).
#[derive(Debug, Clone, Copy)]
pub struct SkewNormalIbp {
    pub lambda: f64,
    pub location: f64,
    pub scale: f64,
}

impl SkewNormalIbp {
    pub fn new(lambda: f64, location: f64, scale: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
        }
        if !(scale > 0.0) {
            return Err(Error::Domain(format!("scale must be > 0, got {scale}")));
        }
        Ok(SkewNormalIbp {
            lambda,
            location,
            scale,
        })
    }

    fn inner(&self) -> FLambda<StdNormal> {
        FLambda {
            base: StdNormal,
            lambda: self.lambda,
        }
    }

    fn z(&self, x: f64) -> f64 {
        (x - self.location) / self.scale
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.inner().cdf(self.z(x))
    }

    pub fn survival(&self, x: f64) -> f64 {
        self.inner().survival(self.z(x))
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.inner().pdf(self.z(x)) / self.scale
    }

    pub fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let z = self
            .inner()
            .sample(rng)
            .expect("standard normal quantile is always available");
        self.location + self.scale * z
    }
}

impl IbpFamily for SkewNormalIbp {
    fn support(&self) -> Support {
        Support::new(f64::NEG_INFINITY, f64::INFINITY)
    }
    fn base_cdf(&self, x: f64) -> f64 {
        normal_cdf(self.z(x))
    }
    fn base_survival(&self, x: f64) -> f64 {
        normal_cdf(-self.z(x))
    }
    fn u(&self, x: f64) -> f64 {
        self.inner().u(self.z(x))
    }
    fn v(&self, x: f64) -> f64 {
        IbpFamily::v(&self.inner(), self.z(x))
    }
    fn cdf(&self, x: f64) -> f64 {
        SkewNormalIbp::cdf(self, x)
    }
    fn survival(&self, x: f64) -> f64 {
        SkewNormalIbp::survival(self, x)
    }
}

/// Numeric-inversion sampler usable by any of the closed-form families.
pub fn sample_by_inversion<F: Fn(f64) -> f64>(
    cdf: F,
    support: Support,
    rng: &mut dyn RngCore,
) -> f64 {
    let p: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    numeric_quantile(cdf, support, p)
}

#[allow(unused_imports)]
pub(crate) use normal_pdf as _normal_pdf_reexport_guard;
