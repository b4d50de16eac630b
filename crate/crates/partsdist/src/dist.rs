//! Base (parent) continuous distributions used as raw material for the
//! by-parts transforms.

use rand::{Rng, RngCore};
use rand_distr::Distribution as _;

use crate::special::{
    gamma_fn, ln_gamma, normal_cdf, normal_pdf, reg_incomplete_beta, reg_lower_gamma,
    reg_upper_gamma,
};

/// Open support (x_l, x_h); either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn new(lower: f64, upper: f64) -> Self {
        assert!(lower < upper, "support requires lower < upper");
        Support { lower, upper }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }
}

/// A continuous distribution with the handles the transforms need.
pub trait Continuous {
    fn support(&self) -> Support;
    fn pdf(&self, x: f64) -> f64;
    fn cdf(&self, x: f64) -> f64;
    fn survival(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }
    /// Quantile function where a closed or cheap numeric form exists.
    fn quantile(&self, _p: f64) -> Option<f64> {
        None
    }
    fn mean(&self) -> Option<f64> {
        None
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64;
}

/// Monotone-bisection quantile for an arbitrary cdf, polished to ~1e-12.
pub fn numeric_quantile<F: Fn(f64) -> f64>(cdf: F, support: Support, p: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p));
    let mut lo = if support.lower.is_finite() {
        support.lower
    } else {
        let mut x = -1.0;
        while cdf(x) > p && x > -1e300 {
            x *= 4.0;
        }
        x
    };
    let mut hi = if support.upper.is_finite() {
        support.upper
    } else {
        let mut x = 1.0_f64.max(lo + 1.0);
        while cdf(x) < p && x < 1e300 {
            x *= 4.0;
        }
        x
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 * (1.0 + mid.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Exponential distribution with rate `rate`.
#[derive(Debug, Clone, Copy)]
pub struct Exponential {
    pub rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Self {
        assert!(rate > 0.0);
        Exponential { rate }
    }
}

impl Continuous for Exponential {
    fn support(&self) -> Support {
        Support::new(0.0, f64::INFINITY)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            self.rate * (-self.rate * x).exp()
        }
    }
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.rate * x).exp_m1()
        }
    }
    fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.rate * x).exp()
        }
    }
    fn quantile(&self, p: f64) -> Option<f64> {
        Some(-(-p).ln_1p() / self.rate)
    }
    fn mean(&self) -> Option<f64> {
        Some(1.0 / self.rate)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        -u.ln() / self.rate
    }
}

/// Uniform distribution on (0, 1).
#[derive(Debug, Clone, Copy, Default)]
pub struct Uniform01;

impl Continuous for Uniform01 {
    fn support(&self) -> Support {
        Support::new(0.0, 1.0)
    }
    fn pdf(&self, x: f64) -> f64 {
        if (0.0..=1.0).contains(&x) {
            1.0
        } else {
            0.0
        }
    }
    fn cdf(&self, x: f64) -> f64 {
        x.clamp(0.0, 1.0)
    }
    fn quantile(&self, p: f64) -> Option<f64> {
        Some(p)
    }
    fn mean(&self) -> Option<f64> {
        Some(0.5)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        rng.gen()
    }
}

/// Weibull distribution with survival exp(-(rate * t)^shape).
#[derive(Debug, Clone, Copy)]
pub struct Weibull {
    pub rate: f64,
    pub shape: f64,
}

impl Weibull {
    pub fn new(rate: f64, shape: f64) -> Self {
        assert!(rate > 0.0 && shape > 0.0);
        Weibull { rate, shape }
    }
}

impl Continuous for Weibull {
    fn support(&self) -> Support {
        Support::new(0.0, f64::INFINITY)
    }
    fn pdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let w = (self.rate * t).powf(self.shape);
        self.rate * self.shape * (self.rate * t).powf(self.shape - 1.0) * (-w).exp()
    }
    fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            -(-(self.rate * t).powf(self.shape)).exp_m1()
        }
    }
    fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            1.0
        } else {
            (-(self.rate * t).powf(self.shape)).exp()
        }
    }
    fn quantile(&self, p: f64) -> Option<f64> {
        Some((-(-p).ln_1p()).powf(1.0 / self.shape) / self.rate)
    }
    fn mean(&self) -> Option<f64> {
        Some(gamma_fn(1.0 + 1.0 / self.shape) / self.rate)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        (-u.ln()).powf(1.0 / self.shape) / self.rate
    }
}

/// Stacy (generalized gamma) distribution:
/// f(t) = rate * shape_pow * (rate t)^{shape_gamma * shape_pow - 1}
///        exp(-(rate t)^shape_pow) / Gamma(shape_gamma).
#[derive(Debug, Clone, Copy)]
pub struct StacyBase {
    pub rate: f64,      // alpha
    pub shape_gamma: f64, // beta
    pub shape_pow: f64, // gamma
}

impl StacyBase {
    pub fn new(rate: f64, shape_gamma: f64, shape_pow: f64) -> Self {
        assert!(rate > 0.0 && shape_gamma > 0.0 && shape_pow > 0.0);
        StacyBase {
            rate,
            shape_gamma,
            shape_pow,
        }
    }

    fn w(&self, t: f64) -> f64 {
        (self.rate * t).powf(self.shape_pow)
    }
}

impl Continuous for StacyBase {
    fn support(&self) -> Support {
        Support::new(0.0, f64::INFINITY)
    }
    fn pdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let ln_f = self.rate.ln()
            + self.shape_pow.ln()
            + (self.shape_gamma * self.shape_pow - 1.0) * (self.rate * t).ln()
            - self.w(t)
            - ln_gamma(self.shape_gamma);
        ln_f.exp()
    }
    fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            reg_lower_gamma(self.shape_gamma, self.w(t))
        }
    }
    fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            1.0
        } else {
            reg_upper_gamma(self.shape_gamma, self.w(t))
        }
    }
    fn mean(&self) -> Option<f64> {
        Some(
            (ln_gamma(self.shape_gamma + 1.0 / self.shape_pow) - ln_gamma(self.shape_gamma)).exp()
                / self.rate,
        )
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let g = rand_distr::Gamma::new(self.shape_gamma, 1.0).unwrap();
        let w = g.sample(&mut AsRng(rng));
        w.powf(1.0 / self.shape_pow) / self.rate
    }
}

/// Standard normal distribution.
#[derive(Debug, Clone, Copy, Default)]
pub struct StdNormal;

impl Continuous for StdNormal {
    fn support(&self) -> Support {
        Support::new(f64::NEG_INFINITY, f64::INFINITY)
    }
    fn pdf(&self, x: f64) -> f64 {
        normal_pdf(x)
    }
    fn cdf(&self, x: f64) -> f64 {
        normal_cdf(x)
    }
    fn survival(&self, x: f64) -> f64 {
        normal_cdf(-x)
    }
    fn quantile(&self, p: f64) -> Option<f64> {
        Some(numeric_quantile(normal_cdf, self.support(), p))
    }
    fn mean(&self) -> Option<f64> {
        Some(0.0)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        rand_distr::StandardNormal.sample(&mut AsRng(rng))
    }
}

/// Beta distribution on (0, 1).
#[derive(Debug, Clone, Copy)]
pub struct BetaDist {
    pub a: f64,
    pub b: f64,
}

impl BetaDist {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b > 0.0);
        BetaDist { a, b }
    }
}

impl Continuous for BetaDist {
    fn support(&self) -> Support {
        Support::new(0.0, 1.0)
    }
    fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        ((self.a - 1.0) * x.ln() + (self.b - 1.0) * (-x).ln_1p() - crate::special::ln_beta(self.a, self.b))
            .exp()
    }
    fn cdf(&self, x: f64) -> f64 {
        reg_incomplete_beta(self.a, self.b, x.clamp(0.0, 1.0))
    }
    fn quantile(&self, p: f64) -> Option<f64> {
        Some(numeric_quantile(|x| self.cdf(x), self.support(), p))
    }
    fn mean(&self) -> Option<f64> {
        Some(self.a / (self.a + self.b))
    }
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        rand_distr::Beta::new(self.a, self.b)
            .unwrap()
            .sample(&mut AsRng(rng))
    }
}

/// Adapter letting `&mut dyn RngCore` drive `rand_distr` samplers.
struct AsRng<'a>(&'a mut dyn RngCore);

impl RngCore for AsRng<'_> {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.0.try_fill_bytes(dest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn approx(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn exponential_basics() {
        let e = Exponential::new(2.0);
        approx(e.pdf(0.5), 2.0 * (-1.0f64).exp(), 1e-14);
        approx(e.cdf(0.5) + e.survival(0.5), 1.0, 1e-15);
        approx(e.quantile(e.cdf(1.3)).unwrap(), 1.3, 1e-12);
    }

    #[test]
    fn stacy_reduces_to_weibull() {
        let s = StacyBase::new(0.7, 1.0, 2.3);
        let w = Weibull::new(0.7, 2.3);
        for &t in &[0.2, 0.9, 2.5] {
            approx(s.pdf(t), w.pdf(t), 1e-12);
            approx(s.survival(t), w.survival(t), 1e-12);
        }
    }

    #[test]
    fn beta_cdf_uniform_case() {
        let b = BetaDist::new(1.0, 1.0);
        approx(b.cdf(0.42), 0.42, 1e-13);
    }

    #[test]
    fn sampler_mean_smoke() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let e = Exponential::new(1.0);
        let n = 20_000;
        let m: f64 = (0..n).map(|_| e.sample(&mut rng)).sum::<f64>() / n as f64;
        approx(m, 1.0, 0.03);
    }

    #[test]
    fn std_normal_quantile_roundtrip() {
        let n = StdNormal;
        for &p in &[0.01, 0.3, 0.5, 0.9, 0.999] {
            let x = n.quantile(p).unwrap();
            approx(n.cdf(x), p, 1e-11);
        }
    }
}
