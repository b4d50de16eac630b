//! The generic integration-by-parts transform on continuous distributions.
//!
//! Writing the base pdf as f = -u v' with u positive increasing and v
//! positive decreasing (v(x_h) = 0) gives the left-shifted pdf
//! g = u' v / (1 - u(x_l) v(x_l)); the reverse direction integrates u' and
//! differentiates v to shift mass right.

use rand::{Rng, RngCore};

use crate::dist::{numeric_quantile, Continuous, Support};
use crate::error::{Error, Result};
use crate::quad::{integrate_finite, integrate_semi_infinite, QuadratureConfig};

/// A positive, monotone increasing transform u with derivative and, where
/// available, an inverse.
pub trait UFunction {
    fn u(&self, x: f64) -> f64;
    fn du(&self, x: f64) -> f64;
    fn u_inv(&self, _y: f64) -> Option<f64> {
        None
    }
    /// Value of u at the lower support limit (0 turns off boundary terms).
    fn u_at_lower(&self) -> f64;
}

/// u(x) = x^k for x >= 0, k > 0.
#[derive(Debug, Clone, Copy)]
pub struct PowerLaw {
    pub exponent: f64,
}

impl UFunction for PowerLaw {
    fn u(&self, x: f64) -> f64 {
        x.powf(self.exponent)
    }
    fn du(&self, x: f64) -> f64 {
        self.exponent * x.powf(self.exponent - 1.0)
    }
    fn u_inv(&self, y: f64) -> Option<f64> {
        Some(y.powf(1.0 / self.exponent))
    }
    fn u_at_lower(&self) -> f64 {
        0.0
    }
}

/// u(x) = F(x)^lambda for a base distribution F.
#[derive(Debug, Clone)]
pub struct CdfPower<B: Continuous> {
    pub base: B,
    pub lambda: f64,
}

impl<B: Continuous> UFunction for CdfPower<B> {
    fn u(&self, x: f64) -> f64 {
        self.base.cdf(x).powf(self.lambda)
    }
    fn du(&self, x: f64) -> f64 {
        self.lambda * self.base.cdf(x).powf(self.lambda - 1.0) * self.base.pdf(x)
    }
    fn u_inv(&self, y: f64) -> Option<f64> {
        self.base.quantile(y.powf(1.0 / self.lambda))
    }
    fn u_at_lower(&self) -> f64 {
        0.0
    }
}

/// u(x) = exp(lambda F(x)); u at the lower limit is 1, so the boundary term
/// survives and the Eq-with-normalizer form applies.
#[derive(Debug, Clone)]
pub struct ExpCdf<B: Continuous> {
    pub base: B,
    pub lambda: f64,
}

impl<B: Continuous> UFunction for ExpCdf<B> {
    fn u(&self, x: f64) -> f64 {
        (self.lambda * self.base.cdf(x)).exp()
    }
    fn du(&self, x: f64) -> f64 {
        self.lambda * self.u(x) * self.base.pdf(x)
    }
    fn u_inv(&self, y: f64) -> Option<f64> {
        self.base.quantile(y.ln() / self.lambda)
    }
    fn u_at_lower(&self) -> f64 {
        1.0
    }
}

/// v(x) = int_x^{x_h} f(y)/u(y) dy, the generic quadrature path.
pub fn v_from_u<B: Continuous, U: UFunction>(
    base: &B,
    u: &U,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let sup = base.support();
    if x >= sup.upper {
        return Ok(0.0);
    }
    let integrand = |y: f64| {
        let f = base.pdf(y);
        if f == 0.0 {
            0.0
        } else {
            f / u.u(y)
        }
    };
    if sup.upper.is_finite() {
        integrate_finite(integrand, x, sup.upper, cfg)
    } else {
        integrate_semi_infinite(integrand, x, cfg)
    }
}

enum VPath {
    Quadrature(QuadratureConfig),
    Closed(Box<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// The left-shifted (L) distribution built from a base distribution and a
/// u-function. Immutable after construction; evaluation is pure.
pub struct LShift<B: Continuous, U: UFunction> {
    base: B,
    u: U,
    v: VPath,
    boundary: f64,
    normalizer: f64,
    cfg: QuadratureConfig,
}

impl<B: Continuous, U: UFunction> LShift<B, U> {
    /// Build with v evaluated by adaptive quadrature.
    pub fn new(base: B, u: U, cfg: QuadratureConfig) -> Result<Self> {
        let boundary = if u.u_at_lower() == 0.0 {
            0.0
        } else {
            let sup = base.support();
            if !sup.lower.is_finite() {
                // u > 0 toward -inf with v bounded: u(xl) v(xl) is the limit
                // of u*v; approximate from far in the left tail
                let x = numeric_quantile(|t| base.cdf(t), sup, 1e-12);
                u.u(x) * v_from_u(&base, &u, x, &cfg)?
            } else {
                u.u_at_lower() * v_from_u(&base, &u, sup.lower, &cfg)?
            }
        };
        let normalizer = 1.0 - boundary;
        if !(normalizer > 0.0 && normalizer <= 1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "normalizer 1 - u(x_l) v(x_l) = {normalizer} outside (0, 1]"
            )));
        }
        Ok(LShift {
            base,
            u,
            v: VPath::Quadrature(cfg),
            boundary,
            normalizer,
            cfg,
        })
    }

    /// Build with a registered closed-form v (must satisfy v(x_h) = 0).
    pub fn with_closed_v<F>(base: B, u: U, v: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let cfg = QuadratureConfig::default();
        let sup = base.support();
        let boundary = if u.u_at_lower() == 0.0 {
            0.0
        } else if sup.lower.is_finite() {
            u.u_at_lower() * v(sup.lower)
        } else {
            let x = numeric_quantile(|t| base.cdf(t), sup, 1e-12);
            u.u(x) * v(x)
        };
        let normalizer = 1.0 - boundary;
        if !(normalizer > 0.0 && normalizer <= 1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "normalizer 1 - u(x_l) v(x_l) = {normalizer} outside (0, 1]"
            )));
        }
        Ok(LShift {
            base,
            u,
            v: VPath::Closed(Box::new(v)),
            boundary,
            normalizer,
            cfg,
        })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn u_fn(&self) -> &U {
        &self.u
    }

    pub fn support(&self) -> Support {
        self.base.support()
    }

    pub fn boundary(&self) -> f64 {
        self.boundary
    }

    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn v(&self, x: f64) -> Result<f64> {
        match &self.v {
            VPath::Quadrature(cfg) => v_from_u(&self.base, &self.u, x, cfg),
            VPath::Closed(f) => Ok(f(x)),
        }
    }

    /// g(x) = u'(x) v(x) / normalizer. May be +inf at the lower limit when
    /// u' diverges there.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.u.du(x) * self.v(x)? / self.normalizer)
    }

    /// G(x) = (F(x) + u(x) v(x) - u(x_l) v(x_l)) / normalizer.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let uv = self.u.u(x) * self.v(x)?;
        Ok(((self.base.cdf(x) + uv - self.boundary) / self.normalizer).clamp(0.0, 1.0))
    }

    pub fn survival(&self, x: f64) -> Result<f64> {
        let uv = self.u.u(x) * self.v(x)?;
        Ok(((self.base.survival(x) - uv) / self.normalizer).clamp(0.0, 1.0))
    }

    /// E_g(X) = E_f(X) - int u v dy (boundary-free form), generalized with
    /// the -x_l * boundary correction when u(x_l) > 0 on a finite support.
    pub fn mean(&self) -> Result<f64> {
        let e_f = match self.base.mean() {
            Some(m) => m,
            None => {
                return Err(Error::Domain(
                    "base mean unavailable; integrate x g(x) directly".into(),
                ))
            }
        };
        let sup = self.base.support();
        if self.boundary != 0.0 && !sup.lower.is_finite() {
            return Err(Error::Divergence(
                "int u v does not converge when u(x_l) v(x_l) > 0 on an unbounded-below support"
                    .into(),
            ));
        }
        let integrand = |y: f64| {
            let v = self.v(y).unwrap_or(f64::NAN);
            self.u.u(y) * v
        };
        let int_uv = match (sup.lower.is_finite(), sup.upper.is_finite()) {
            (true, true) => integrate_finite(integrand, sup.lower, sup.upper, &self.cfg)?,
            (true, false) => integrate_semi_infinite(integrand, sup.lower, &self.cfg)?,
            (false, false) => crate::quad::integrate_real_line(integrand, &self.cfg)?,
            (false, true) => {
                let ub = sup.upper;
                crate::quad::integrate_semi_infinite(move |y| integrand(ub - y), 0.0, &self.cfg)?
            }
        };
        if !int_uv.is_finite() {
            return Err(Error::Divergence("int u v failed to converge".into()));
        }
        let xl_term = if self.boundary != 0.0 {
            sup.lower * self.boundary
        } else {
            0.0
        };
        Ok((e_f - int_uv - xl_term) / self.normalizer)
    }

    /// Draw from G: X ~ base, V ~ U(0,1), Y = u^{-1}(u(X) V); draws whose
    /// smeared mass would land below x_l are rejected (only possible when
    /// u(x_l) > 0).
    pub fn sample(&self, rng: &mut dyn RngCore) -> Result<f64> {
        let u_lower = self.u.u_at_lower();
        for _ in 0..10_000 {
            let x = self.base.sample(rng);
            let v: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let z = self.u.u(x) * v;
            if z >= u_lower {
                return self
                    .u
                    .u_inv(z)
                    .ok_or_else(|| {
                        Error::UnsupportedSampler(
                            "u has no inverse; use sample_numeric".into(),
                        )
                    });
            }
        }
        Err(Error::NonConvergence(
            "rejection sampler exceeded 10000 attempts".into(),
        ))
    }

    /// Fallback sampler: numeric inversion of G by bisection (to ~1e-10).
    pub fn sample_numeric(&self, rng: &mut dyn RngCore) -> f64 {
        let p: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        numeric_quantile(|x| self.cdf(x).unwrap_or(f64::NAN), self.support(), p)
    }
}

/// A positive decreasing v with derivative, for the right-shift direction.
pub trait DecreasingV {
    fn v(&self, x: f64) -> f64;
    fn dv(&self, x: f64) -> f64;
}

/// v(x) = exp(-lambda x).
#[derive(Debug, Clone, Copy)]
pub struct ExpDecay {
    pub lambda: f64,
}

impl DecreasingV for ExpDecay {
    fn v(&self, x: f64) -> f64 {
        (-self.lambda * x).exp()
    }
    fn dv(&self, x: f64) -> f64 {
        -self.lambda * (-self.lambda * x).exp()
    }
}

/// v(x) = survival(x)^lambda of a carried distribution.
#[derive(Debug, Clone)]
pub struct SurvivalPower<B: Continuous> {
    pub base: B,
    pub lambda: f64,
}

impl<B: Continuous> DecreasingV for SurvivalPower<B> {
    fn v(&self, x: f64) -> f64 {
        self.base.survival(x).powf(self.lambda)
    }
    fn dv(&self, x: f64) -> f64 {
        -self.lambda * self.base.survival(x).powf(self.lambda - 1.0) * self.base.pdf(x)
    }
}

/// The right-shifted (R) distribution: from an L-pdf g and a chosen
/// decreasing v, build u(x) = int_{x_l}^x g/v and pdf f = -u v'. The result
/// stochastically dominates the input when u(x_l) = 0.
pub struct RShift<B: Continuous, V: DecreasingV> {
    base_l: B,
    vfun: V,
    cfg: QuadratureConfig,
}

impl<B: Continuous, V: DecreasingV> RShift<B, V> {
    pub fn new(base_l: B, vfun: V, cfg: QuadratureConfig) -> Result<Self> {
        let shifted = RShift { base_l, vfun, cfg };
        // u(x_h) v(x_h) must vanish for f = -u v' to integrate to one
        let sup = shifted.base_l.support();
        let probe = if sup.upper.is_finite() {
            sup.upper - 1e-9 * (sup.upper - sup.lower)
        } else {
            let mut x = 1.0f64.max(sup.lower + 1.0);
            while shifted.base_l.survival(x) > 1e-10 && x < 1e12 {
                x *= 2.0;
            }
            x
        };
        let tail = shifted.u(probe)? * shifted.vfun.v(probe);
        if tail.abs() > 1e-6 {
            return Err(Error::Divergence(format!(
                "u(x_h) v(x_h) fails to vanish (u*v = {tail:.3e} at x = {probe:.3e})"
            )));
        }
        Ok(shifted)
    }

    pub fn u(&self, x: f64) -> Result<f64> {
        let sup = self.base_l.support();
        if x <= sup.lower {
            return Ok(0.0);
        }
        integrate_finite(
            |y| {
                let g = self.base_l.pdf(y);
                if g == 0.0 {
                    0.0
                } else {
                    g / self.vfun.v(y)
                }
            },
            sup.lower,
            x,
            &self.cfg,
        )
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(-self.u(x)? * self.vfun.dv(x))
    }

    pub fn survival(&self, x: f64) -> Result<f64> {
        Ok((self.u(x)? * self.vfun.v(x) + self.base_l.survival(x)).clamp(0.0, 1.0))
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(1.0 - self.survival(x)?)
    }
}

/// Smeared cdf of a unit mass at x0: u(x)/u(x0) for x <= x0, 1 above.
pub fn delta_smear<U: UFunction>(x0: f64, u: &U, x: f64) -> f64 {
    if x >= x0 {
        1.0
    } else {
        u.u(x) / u.u(x0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{Exponential, Uniform01, Weibull};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!(
            (a - b).abs() < tol,
            "approx failed: {a} vs {b} (diff {:.3e})",
            (a - b).abs()
        );
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn v_from_u_exponential_sqrt() {
        // base Exp(1), u = sqrt(t): v(1) = Gamma(1/2; 1) = 2 sqrt(pi) Phi(-sqrt(2))
        let v = v_from_u(&Exponential::new(1.0), &PowerLaw { exponent: 0.5 }, 1.0, &cfg()).unwrap();
        approx(v, 0.278_805_585_280_662, 1e-10);
        let closed = 2.0 * crate::special::SQRT_PI * crate::special::normal_cdf(-(2.0f64).sqrt());
        approx(v, closed, 1e-10);
    }

    #[test]
    fn v_from_u_uniform_identity() {
        let v = v_from_u(&Uniform01, &PowerLaw { exponent: 1.0 }, 0.5, &cfg()).unwrap();
        approx(v, std::f64::consts::LN_2, 1e-11);
    }

    #[test]
    fn v_vanishes_at_upper_limit() {
        let v = v_from_u(&Uniform01, &PowerLaw { exponent: 2.0 }, 1.0, &cfg()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn l_shift_pdf_modified_exponential_paths_agree() {
        let t = LShift::new(Exponential::new(1.0), PowerLaw { exponent: 0.5 }, cfg()).unwrap();
        let quad_path = t.pdf(1.0).unwrap();
        // closed form: g(t) = sqrt(pi) Phi(-sqrt(2 t)) / sqrt(t)
        let closed = crate::special::SQRT_PI * crate::special::normal_cdf(-(2.0f64).sqrt());
        approx(quad_path, closed, 1e-10);
        approx(quad_path, 0.139_402_792_640_331, 1e-9);
    }

    #[test]
    fn l_shift_uniform_square() {
        // u = x^2 on uniform base (F^lambda with lambda = 2): g = 2(1-x), G = 2x - x^2
        let t = LShift::new(Uniform01, PowerLaw { exponent: 2.0 }, cfg()).unwrap();
        approx(t.pdf(0.5).unwrap(), 1.0, 1e-10);
        approx(t.cdf(0.5).unwrap(), 0.75, 1e-10);
        approx(t.cdf(1.0).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn l_shift_pdf_normalizes() {
        let t = LShift::new(Exponential::new(1.0), PowerLaw { exponent: 0.5 }, cfg()).unwrap();
        let total = integrate_semi_infinite(|x| t.pdf(x).unwrap(), 0.0, &cfg()).unwrap();
        approx(total, 1.0, 1e-7);
    }

    #[test]
    fn mean_shift_identity_matches_quadrature() {
        // modified exponential: E = 1/3
        let t = LShift::new(Exponential::new(1.0), PowerLaw { exponent: 0.5 }, cfg()).unwrap();
        approx(t.mean().unwrap(), 1.0 / 3.0, 1e-8);
        let direct =
            integrate_semi_infinite(|x| x * t.pdf(x).unwrap(), 0.0, &cfg()).unwrap();
        approx(t.mean().unwrap(), direct, 1e-7);
        // uniform F^2: E = 1/3
        let t2 = LShift::new(Uniform01, PowerLaw { exponent: 2.0 }, cfg()).unwrap();
        approx(t2.mean().unwrap(), 1.0 / 3.0, 1e-9);
    }

    #[test]
    fn r_shift_phase_type() {
        // base_L = Exp(1) pdf as "g", v = e^{-lambda x}:
        // survival (e^{-lambda x} - lambda e^{-x}) / (1 - lambda)
        let lam = 2.0;
        let r = RShift::new(Exponential::new(1.0), ExpDecay { lambda: lam }, cfg()).unwrap();
        for &x in &[0.1, 0.5, 1.0, 2.5] {
            let closed = ((-lam * x).exp() - lam * (-x as f64).exp()) / (1.0 - lam);
            approx(r.survival(x).unwrap(), closed, 1e-9);
        }
    }

    #[test]
    fn r_shift_lambda_one_limit() {
        // v = base survival: F-bar = (1 + x) e^{-x}
        let r = RShift::new(
            Exponential::new(1.0),
            SurvivalPower {
                base: Exponential::new(1.0),
                lambda: 1.0,
            },
            cfg(),
        )
        .unwrap();
        for &x in &[0.2, 1.0, 3.0] {
            approx(r.survival(x).unwrap(), (1.0 + x) * (-x as f64).exp(), 1e-9);
        }
    }

    #[test]
    fn r_shift_closed_class_on_weibull() {
        // lambda = 1 member of the L->R survival-power class on a Weibull
        // base: F-bar = (1 - ln G-bar) G-bar, checked against quadrature
        let w = Weibull::new(1.0, 1.7);
        let r = RShift::new(
            w,
            SurvivalPower {
                base: w,
                lambda: 1.0,
            },
            cfg(),
        )
        .unwrap();
        for &x in &[0.3, 0.8, 1.5] {
            let gbar = w.survival(x);
            approx(r.survival(x).unwrap(), (1.0 - gbar.ln()) * gbar, 1e-8);
        }
    }

    #[test]
    fn delta_smear_cases() {
        let u1 = PowerLaw { exponent: 1.0 };
        approx(delta_smear(2.0, &u1, 1.0), 0.5, 1e-15);
        let u2 = PowerLaw { exponent: 2.0 };
        approx(delta_smear(2.0, &u2, 1.0), 0.25, 1e-15);
        approx(delta_smear(2.0, &u2, 2.0), 1.0, 1e-15);
    }

    #[test]
    fn sampler_matches_appendix_form() {
        // u = sqrt(t) on Exp(1): Y = X V^2 must have the modified
        // exponential law; check the sample mean against 1/3
        let t = LShift::new(Exponential::new(1.0), PowerLaw { exponent: 0.5 }, cfg()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 200_000;
        let mean: f64 = (0..n).map(|_| t.sample(&mut rng).unwrap()).sum::<f64>() / n as f64;
        // var = 13/45, 3 SE
        let se = (13.0f64 / 45.0 / n as f64).sqrt();
        approx(mean, 1.0 / 3.0, 3.0 * se);
    }

    #[test]
    fn uniform_square_monte_carlo_mean() {
        let t = LShift::new(Uniform01, PowerLaw { exponent: 2.0 }, cfg()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 1_000_000;
        let mean: f64 = (0..n).map(|_| t.sample(&mut rng).unwrap()).sum::<f64>() / n as f64;
        let var = 1.0 / 6.0 - 1.0 / 9.0;
        approx(mean, 1.0 / 3.0, 3.0 * (var / n as f64).sqrt());
    }

    #[test]
    fn numeric_sampler_agrees_with_u_inverse() {
        let t = LShift::new(Uniform01, PowerLaw { exponent: 2.0 }, cfg()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 30_000;
        let mut a: Vec<f64> = (0..n).map(|_| t.sample(&mut rng).unwrap()).collect();
        let mut b: Vec<f64> = (0..n).map(|_| t.sample_numeric(&mut rng)).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        // two-sample KS below the 1% critical value 1.628 sqrt(2/n)
        let mut i = 0;
        let mut j = 0;
        let mut d: f64 = 0.0;
        while i < n && j < n {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            d = d.max((i as f64 / n as f64 - j as f64 / n as f64).abs());
        }
        assert!(d < 1.628 * (2.0 / n as f64).sqrt(), "KS = {d}");
    }

    #[test]
    fn cdf_identity_and_dominance_on_grid() {
        let t = LShift::new(Exponential::new(1.0), PowerLaw { exponent: 0.5 }, cfg()).unwrap();
        for i in 1..100 {
            let x = 0.08 * i as f64;
            let uv = t.u_fn().u(x) * t.v(x).unwrap();
            let g = t.cdf(x).unwrap();
            let f = t.base().cdf(x);
            assert!((g - f - uv).abs() < 1e-9, "identity off at {x}");
            assert!(t.base().survival(x) - t.survival(x).unwrap() >= -1e-12);
        }
    }
}
