//! Bessel functions of the first kind, orders zero and one.
//!
//! Small arguments use the ascending power series summed in double-word
//! arithmetic, which keeps the cancellation between large alternating terms
//! below the working precision. Large arguments use the Hankel asymptotic
//! expansion, truncated once terms drop under machine epsilon.

use crate::error::{Error, Result};
use crate::real::Real;

/// Default switch-over between the power series and the asymptotic form.
pub const DEFAULT_CROSSOVER: f64 = 20.0;

const MAX_ASYMPTOTIC_TERMS: usize = 40;

/// Stateless evaluator with a configurable series/asymptotic crossover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEvaluator<T> {
    crossover: T,
}

impl<T: Real> Default for BesselEvaluator<T> {
    fn default() -> Self {
        Self {
            crossover: T::lit(DEFAULT_CROSSOVER),
        }
    }
}

impl<T: Real> BesselEvaluator<T> {
    pub fn with_crossover(crossover: T) -> Result<Self> {
        if !(crossover.is_finite() && crossover > T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "Bessel crossover must be positive, got {crossover}"
            )));
        }
        Ok(Self { crossover })
    }

    pub fn crossover(&self) -> T {
        self.crossover
    }

    pub fn j0(&self, t: T) -> Result<T> {
        check_finite(t)?;
        Ok(self.j0_unchecked(t))
    }

    pub fn j1(&self, t: T) -> Result<T> {
        check_finite(t)?;
        Ok(self.j1_unchecked(t))
    }

    pub(crate) fn j0_unchecked(&self, t: T) -> T {
        let t = t.abs();
        if t < self.crossover {
            series(t, 0)
        } else {
            asymptotic(t, 0)
        }
    }

    pub(crate) fn j1_unchecked(&self, t: T) -> T {
        let sign = t.signum();
        let a = t.abs();
        let value = if a < self.crossover {
            series(a, 1)
        } else {
            asymptotic(a, 1)
        };
        if sign < T::zero() {
            -value
        } else {
            value
        }
    }
}

/// `J_0(t)`; negative arguments are folded by parity.
pub fn bessel_j0<T: Real>(t: T) -> Result<T> {
    BesselEvaluator::default().j0(t)
}

/// `J_1(t)`; odd in `t`.
pub fn bessel_j1<T: Real>(t: T) -> Result<T> {
    BesselEvaluator::default().j1(t)
}

pub(crate) fn j0<T: Real>(t: T) -> T {
    BesselEvaluator::default().j0_unchecked(t)
}

pub(crate) fn j1<T: Real>(t: T) -> T {
    BesselEvaluator::default().j1_unchecked(t)
}

fn check_finite<T: Real>(t: T) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "Bessel argument must be finite, got {t}"
        )))
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct DoubleWord<T> {
    hi: T,
    lo: T,
}

impl<T: Real> DoubleWord<T> {
    fn new(value: T) -> Self {
        Self {
            hi: value,
            lo: T::zero(),
        }
    }

    fn fast_two_sum(a: T, b: T) -> Self {
        let s = a + b;
        Self {
            hi: s,
            lo: b - (s - a),
        }
    }

    fn two_sum(a: T, b: T) -> Self {
        let s = a + b;
        let bb = s - a;
        Self {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn two_prod(a: T, b: T) -> Self {
        let p = a * b;
        Self {
            hi: p,
            lo: a.mul_add(b, -p),
        }
    }

    fn add(self, other: Self) -> Self {
        let s = Self::two_sum(self.hi, other.hi);
        let t = Self::two_sum(self.lo, other.lo);
        let s = Self::fast_two_sum(s.hi, s.lo + t.hi);
        Self::fast_two_sum(s.hi, s.lo + t.lo)
    }

    fn mul(self, other: Self) -> Self {
        let p = Self::two_prod(self.hi, other.hi);
        let lo = p.lo + (self.hi * other.lo + self.lo * other.hi);
        Self::fast_two_sum(p.hi, lo)
    }

    fn div_scalar(self, d: T) -> Self {
        let q1 = self.hi / d;
        let p = Self::two_prod(q1, d);
        let delta = ((self.hi - p.hi) - p.lo) + self.lo;
        Self::fast_two_sum(q1, delta / d)
    }

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn value(self) -> T {
        self.hi + self.lo
    }
}

/// `sum_k (-1)^k (t/2)^{2k+order} / (k! (k+order)!)` for `order` 0 or 1.
fn series<T: Real>(t: T, order: u32) -> T {
    if t == T::zero() {
        return if order == 0 { T::one() } else { T::zero() };
    }
    let quarter_sq = DoubleWord::two_prod(t, t).div_scalar(T::lit(4.0));
    let mut term = if order == 0 {
        DoubleWord::new(T::one())
    } else {
        DoubleWord::new(t / T::lit(2.0))
    };
    let mut sum = term;
    let tiny = T::epsilon() * T::epsilon();
    let q = quarter_sq.value();
    for k in 1..1000usize {
        let kk = T::from_usize_lossy(k);
        let denom = kk * (kk + T::from_u32(order).unwrap_or_else(T::zero));
        term = term.mul(quarter_sq).div_scalar(denom).neg();
        sum = sum.add(term);
        if kk * kk > q && term.hi.abs() <= tiny * sum.hi.abs() {
            break;
        }
    }
    sum.value()
}

/// Hankel expansion `sqrt(2/(pi t)) (P cos chi - Q sin chi)` with
/// `chi = t - (order/2 + 1/4) pi`.
fn asymptotic<T: Real>(t: T, order: u32) -> T {
    let mu = T::lit(4.0 * f64::from(order * order));
    let eight_t = T::lit(8.0) * t;
    let mut p = T::one();
    let mut q = T::zero();
    let mut coeff = T::one();
    let mut last = T::infinity();
    for k in 1..=2 * MAX_ASYMPTOTIC_TERMS {
        let odd = T::from_usize_lossy(2 * k - 1);
        coeff = coeff * (mu - odd * odd) / (T::from_usize_lossy(k) * eight_t);
        let magnitude = coeff.abs();
        if magnitude >= last {
            break;
        }
        last = magnitude;
        // Terms alternate P, Q, P, Q with sign pattern +, -, -, +, ...
        match k % 4 {
            1 => q += coeff,
            2 => p -= coeff,
            3 => q -= coeff,
            _ => p += coeff,
        }
        if magnitude <= T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    let (s, c) = t.sin_cos();
    let (cos_chi, sin_chi) = if order == 0 {
        (c + s, s - c)
    } else {
        (s - c, -(s + c))
    };
    let amplitude = (T::lit(2.0) / (T::PI() * t)).sqrt() * T::FRAC_1_SQRT_2();
    amplitude * (p * cos_chi - q * sin_chi)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // 40-digit reference values.
    const J0_REF: [(f64, f64); 8] = [
        (0.5, 0.938469807240812904),
        (1.0, 0.765197686557966551),
        (5.0, -0.177596771314338304),
        (10.0, -0.245935764451348335),
        (19.999, 0.167091415610786538),
        (20.0, 0.167024664340583155),
        (33.3, 0.0633384859475208996),
        (100.0, 0.0199858503042231224),
    ];
    const J1_REF: [(f64, f64); 8] = [
        (0.5, 0.242268457674873886),
        (1.0, 0.440050585744933516),
        (5.0, -0.327579137591465222),
        (10.0, 0.0434727461688614367),
        (19.999, 0.0666694037691489215),
        (20.0, 0.0668331241758500456),
        (33.3, 0.12386214790148026),
        (100.0, -0.077145352014112158),
    ];

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j0(0.0f64).unwrap(), 1.0);
        assert_eq!(bessel_j1(0.0f64).unwrap(), 0.0);
    }

    #[test]
    fn reference_values() {
        for (t, want) in J0_REF {
            let got = bessel_j0(t).unwrap();
            assert!((got - want).abs() <= 1e-10 * want.abs().max(1e-2), "J0({t}) = {got}, want {want}");
        }
        for (t, want) in J1_REF {
            let got = bessel_j1(t).unwrap();
            assert!((got - want).abs() <= 1e-10 * want.abs().max(1e-2), "J1({t}) = {got}, want {want}");
        }
    }

    #[test]
    fn parity() {
        for t in [0.3, 2.0, 11.0, 25.0, 80.0] {
            assert_eq!(bessel_j0(-t).unwrap(), bessel_j0(t).unwrap());
            assert_eq!(bessel_j1(-t).unwrap(), -bessel_j1(t).unwrap());
        }
    }

    #[test]
    fn non_finite_rejected() {
        assert!(bessel_j0(f64::NAN).is_err());
        assert!(bessel_j1(f64::INFINITY).is_err());
        assert!(BesselEvaluator::<f64>::with_crossover(0.0).is_err());
    }

    #[test]
    fn first_zero_of_j0() {
        let z: f64 = 2.404825557695773;
        assert!(bessel_j0(z).unwrap().abs() <= 1e-10);
    }

    #[test]
    fn j1_turns_over_at_its_first_maximum() {
        let t = 1.841183781340659;
        let h = 1e-4;
        let left = bessel_j1(t).unwrap() - bessel_j1(t - h).unwrap();
        let right = bessel_j1(t + h).unwrap() - bessel_j1(t).unwrap();
        assert!(left > 0.0 && right < 0.0);
    }

    #[test]
    fn branches_agree_across_crossover() {
        let series_only = BesselEvaluator::<f64>::with_crossover(1e9).unwrap();
        let asym_only = BesselEvaluator::<f64>::with_crossover(1e-9).unwrap();
        for t in [20.0f64, 22.5, 25.0] {
            let a = series_only.j0(t).unwrap();
            let b = asym_only.j0(t).unwrap();
            assert!((a - b).abs() <= 1e-13, "J0({t}): {a} vs {b}");
            let a = series_only.j1(t).unwrap();
            let b = asym_only.j1(t).unwrap();
            assert!((a - b).abs() <= 1e-13, "J1({t}): {a} vs {b}");
        }
    }

    #[test]
    fn wronskian_via_finite_differences() {
        // J0 J1' - J0' J1 = J0^2 + J1^2 - J0 J1 / t  with J0' = -J1, J1' = J0 - J1/t.
        let h = 1e-5;
        let mut t: f64 = 0.5;
        while t <= 20.0 {
            let d0 = (bessel_j0(t + h).unwrap() - bessel_j0(t - h).unwrap()) / (2.0 * h);
            let d1 = (bessel_j1(t + h).unwrap() - bessel_j1(t - h).unwrap()) / (2.0 * h);
            let (a, b) = (bessel_j0(t).unwrap(), bessel_j1(t).unwrap());
            let numeric = a * d1 - d0 * b;
            let closed = a * a + b * b - a * b / t;
            assert!((numeric - closed).abs() <= 1e-6, "t = {t}");
            assert!((d0 + b).abs() <= 1e-6);
            t += 0.25;
        }
    }

    #[test]
    fn single_precision_path() {
        let v: f32 = bessel_j0(5.0f32).unwrap();
        assert!((v - (-0.177_596_77)).abs() < 1e-5);
    }
}
