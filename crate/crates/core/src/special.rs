//! Bernoulli polynomials and the `z / (e^z - 1)` generating function.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

/// Largest Bernoulli degree needed for the polynomial part with `n <= 4`.
pub const DEFAULT_MAX_DEGREE: usize = 9;

/// Monomial coefficients of `B_0 .. B_max`, exact and rounded.
///
/// The exact coefficients come from the double-sum representation
/// `B_m(t) = sum_j 1/(j+1) sum_k (-1)^k C(j,k) (t+k)^m`, expanded in
/// rational arithmetic so that the alternating sums cancel exactly.
/// Floating-point evaluation is then a plain Horner scheme.
#[derive(Debug, Clone)]
pub struct BernoulliTable<T> {
    exact: Vec<Vec<BigRational>>,
    coeffs: Vec<Vec<T>>,
}

impl<T: Real> Default for BernoulliTable<T> {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_DEGREE)
    }
}

impl<T: Real> BernoulliTable<T> {
    pub fn new(max_degree: usize) -> Self {
        let exact: Vec<Vec<BigRational>> = (0..=max_degree).map(double_sum_coefficients).collect();
        let coeffs = exact.iter().map(|row| row.iter().map(rational_to_real::<T>).collect()).collect();
        Self { exact, coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact coefficients of `B_m`, lowest power first.
    pub fn exact_coefficients(&self, m: usize) -> Result<&[BigRational]> {
        self.check(m)?;
        Ok(&self.exact[m])
    }

    /// Rounded coefficients of `B_m`, lowest power first.
    pub fn coefficients(&self, m: usize) -> Result<&[T]> {
        self.check(m)?;
        Ok(&self.coeffs[m])
    }

    /// `B_m(t)`.
    pub fn eval(&self, m: usize, t: T) -> Result<T> {
        let c = self.coefficients(m)?;
        Ok(c.iter().rev().fold(T::zero(), |acc, &a| acc * t + a))
    }

    /// Bernoulli number `B_m = B_m(0)`, exact.
    pub fn number(&self, m: usize) -> Result<&BigRational> {
        self.check(m)?;
        Ok(&self.exact[m][0])
    }

    fn check(&self, m: usize) -> Result<()> {
        if m > self.max_degree() {
            Err(Error::DegreeOverflow { degree: m, max: self.max_degree() })
        } else {
            Ok(())
        }
    }
}

/// Convenience wrapper: `B_m(t)` from a freshly built default table.
pub fn bernoulli_poly<T: Real>(m: usize, t: T) -> Result<T> {
    BernoulliTable::<T>::default().eval(m, t)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn double_sum_coefficients(m: usize) -> Vec<BigRational> {
    // coefficient of t^r is C(m, r) * sum_j 1/(j+1) sum_k (-1)^k C(j,k) k^(m-r)
    (0..=m)
        .map(|r| {
            let e = m - r;
            let mut outer = BigRational::zero();
            for j in 0..=m {
                let mut inner = BigInt::zero();
                for k in 0..=j {
                    let term = binomial(j, k) * num_traits::pow(BigInt::from(k), e);
                    if k % 2 == 0 {
                        inner += term;
                    } else {
                        inner -= term;
                    }
                }
                outer += BigRational::new(inner, BigInt::from(j + 1));
            }
            outer * BigRational::from_integer(binomial(m, r))
        })
        .collect()
}

fn rational_to_real<T: Real>(q: &BigRational) -> T {
    T::lit(q.to_f64().expect("Bernoulli coefficient fits in f64"))
}

/// Taylor coefficients `B_j / j!` of `z / (e^z - 1)` up to degree 12.
const PSI1_TAYLOR: [f64; 13] = [
    1.0,
    -0.5,
    1.0 / 12.0,
    0.0,
    -1.0 / 720.0,
    0.0,
    1.0 / 30240.0,
    0.0,
    -1.0 / 1209600.0,
    0.0,
    1.0 / 47900160.0,
    0.0,
    -691.0 / 1307674368000.0,
];

/// Radius below which `psi1` switches to its Taylor expansion.
pub const PSI1_TAYLOR_RADIUS: f64 = 0.5;

/// Relative radius of the exclusion disc around each pole `2*pi*i*k`.
pub const POLE_EXCLUSION: f64 = 1e-8;

/// `psi_1(z) = z / (e^z - 1)`, with the removable singularity at the origin.
pub fn psi1<T: Real>(z: Cplx<T>) -> Result<Cplx<T>> {
    let modulus = z.norm();
    if modulus < T::lit(PSI1_TAYLOR_RADIUS) {
        let c = PSI1_TAYLOR
            .iter()
            .rev()
            .fold(Cplx::new(T::zero(), T::zero()), |acc, &a| acc * z + Cplx::new(T::lit(a), T::zero()));
        return Ok(c);
    }
    check_pole(z)?;
    if z.re > T::zero() {
        let e = (-z).exp();
        Ok(z * e / (Cplx::new(T::one(), T::zero()) - e))
    } else {
        Ok(z / (z.exp() - Cplx::new(T::one(), T::zero())))
    }
}

fn check_pole<T: Real>(z: Cplx<T>) -> Result<()> {
    let k = (z.im / T::two_pi()).round();
    if k == T::zero() {
        return Ok(());
    }
    let pole = Cplx::new(T::zero(), k * T::two_pi());
    let radius = T::lit(POLE_EXCLUSION) * z.norm().max(T::one());
    if (z - pole).norm() < radius {
        Err(Error::NearPole { k: k.to_i64().unwrap_or(i64::MAX) })
    } else {
        Ok(())
    }
}

/// `e^{lambda t} psi_1(2 pi lambda)`: the scalar solution symbol on `[0, 2*pi]`.
///
/// For `Re lambda > 0` the equivalent form `e^{lambda (t - 2 pi)} psi_1(-2 pi lambda)`
/// is used so that neither factor overflows.
pub fn psi_t<T: Real>(lambda: Cplx<T>, t: T) -> Result<Cplx<T>> {
    let tau = T::two_pi();
    if lambda.re > T::zero() {
        Ok((lambda * (t - tau)).exp() * psi1(-lambda * tau)?)
    } else {
        Ok((lambda * t).exp() * psi1(lambda * tau)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Bernoulli numbers from `sum_{j<=m} C(m+1, j) B_j = 0`.
    fn numbers_by_recurrence(max: usize) -> Vec<BigRational> {
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=max {
            let mut s = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                s += BigRational::from_integer(binomial(m + 1, j)) * bj;
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    }

    /// `B_m(t) = B_m(0) + m * int_0^t B_{m-1}`, built coefficient-wise from the recurrence numbers.
    fn polys_by_integration(max: usize) -> Vec<Vec<BigRational>> {
        let nums = numbers_by_recurrence(max);
        let mut polys = vec![vec![BigRational::one()]];
        for m in 1..=max {
            let prev = &polys[m - 1];
            let mut next = vec![nums[m].clone()];
            for (r, c) in prev.iter().enumerate() {
                next.push(
                    c * BigRational::from_integer(BigInt::from(m)) / BigRational::from_integer(BigInt::from(r + 1)),
                );
            }
            polys.push(next);
        }
        polys
    }

    #[test]
    fn low_degree_values() {
        let table = BernoulliTable::<f64>::default();
        assert_eq!(table.eval(0, 0.3).unwrap(), 1.0);
        assert!(table.eval(1, 0.5).unwrap().abs() < 1e-16);
        assert_relative_eq!(table.eval(2, 0.0).unwrap(), 1.0 / 6.0, max_relative = 1e-15);
        assert_eq!(
            table.exact_coefficients(1).unwrap(),
            &[BigRational::new((-1).into(), 2.into()), BigRational::one()]
        );
    }

    #[test]
    fn degree_overflow() {
        let table = BernoulliTable::<f64>::new(4);
        assert_eq!(table.eval(5, 0.1), Err(Error::DegreeOverflow { degree: 5, max: 4 }));
    }

    #[test]
    fn matches_integration_oracle_exactly() {
        let table = BernoulliTable::<f64>::default();
        let oracle = polys_by_integration(DEFAULT_MAX_DEGREE);
        for (m, want) in oracle.iter().enumerate() {
            assert_eq!(table.exact_coefficients(m).unwrap(), want.as_slice(), "degree {m}");
        }
    }

    #[test]
    fn float_evaluation_against_oracle() {
        let table = BernoulliTable::<f64>::default();
        let oracle = polys_by_integration(DEFAULT_MAX_DEGREE);
        for (m, poly) in oracle.iter().enumerate() {
            for i in 0..=100 {
                let t = i as f64 / 100.0;
                let want: f64 = poly.iter().enumerate().map(|(r, c)| c.to_f64().unwrap() * t.powi(r as i32)).sum();
                let got = table.eval(m, t).unwrap();
                assert!((got - want).abs() <= 1e-12 * (1.0 + want.abs()), "m={m} t={t}");
            }
        }
    }

    #[test]
    fn periodic_endpoints() {
        let table = BernoulliTable::<f64>::default();
        for m in 2..=DEFAULT_MAX_DEGREE {
            assert_eq!(
                table.exact_coefficients(m).unwrap().iter().sum::<BigRational>(),
                table.number(m).unwrap().clone()
            );
        }
    }

    #[test]
    fn linear_term_identity() {
        let table = BernoulliTable::<f64>::default();
        for i in 0..=200 {
            let t = std::f64::consts::TAU * i as f64 / 200.0;
            let lhs = std::f64::consts::TAU * table.eval(1, t / std::f64::consts::TAU).unwrap();
            assert!((lhs - (t - std::f64::consts::PI)).abs() <= 1e-13);
        }
    }

    #[test]
    fn f32_table_is_usable() {
        let table = BernoulliTable::<f32>::default();
        assert!((table.eval(2, 0.5f32).unwrap() + 1.0 / 12.0).abs() < 1e-6);
    }

    #[test]
    fn taylor_coefficients_are_bernoulli_numbers() {
        let table = BernoulliTable::<f64>::new(12);
        let mut fact = 1.0;
        for (j, &c) in PSI1_TAYLOR.iter().enumerate() {
            if j > 0 {
                fact *= j as f64;
            }
            let want = table.number(j).unwrap().to_f64().unwrap() / fact;
            assert_relative_eq!(c, want, max_relative = 1e-15);
        }
    }

    #[test]
    fn psi1_examples() {
        assert_eq!(psi1(Cplx::new(0.0f64, 0.0)).unwrap(), Cplx::new(1.0, 0.0));
        let e = std::f64::consts::E;
        assert_relative_eq!(psi1(Cplx::new(1.0f64, 0.0)).unwrap().re, 1.0 / (e - 1.0), max_relative = 1e-15);
        let pole = Cplx::new(0.0f64, std::f64::consts::TAU);
        assert_eq!(psi1(pole), Err(Error::NearPole { k: 1 }));
        assert_eq!(psi1(-pole * 3.0), Err(Error::NearPole { k: -3 }));
    }

    #[test]
    fn psi1_series_switch_is_accurate() {
        // compare Taylor branch against the direct formula where the latter is still accurate
        for i in 0..50 {
            let r = 0.05 + 0.45 * i as f64 / 50.0;
            let th = 0.37 * i as f64;
            let z = Cplx::from_polar(r, th);
            let direct = z / (z.exp() - 1.0);
            let got = psi1(z).unwrap();
            assert!((got - direct).norm() <= 1e-14 * (1.0 + direct.norm()) * 10.0 / r.min(1.0));
        }
        // just below the switch radius the Taylor remainder dominates
        let z = Cplx::new(0.499f64, 0.0);
        let direct = z / (z.exp() - 1.0);
        assert!((psi1(z).unwrap() - direct).norm() <= 1e-14 * (1.0 + direct.norm()));
    }

    #[test]
    fn psi_t_scalar() {
        let v = psi_t(Cplx::new(-1.0f64, 0.0), 1.0).unwrap();
        let want = std::f64::consts::TAU * (-1.0f64).exp() / (1.0 - (-std::f64::consts::TAU).exp());
        assert_relative_eq!(v.re, want, max_relative = 1e-14);
        let big = psi_t(Cplx::new(200.0f64, 0.0), 0.5).unwrap();
        assert!(big.re.is_finite() && big.re >= 0.0);
    }

    proptest! {
        #[test]
        fn psi1_shifted_is_even(r in 0.0f64..10.0, th in 0.0f64..std::f64::consts::TAU) {
            let z = Cplx::from_polar(r, th);
            let half = z * 0.5;
            if let (Ok(a), Ok(b)) = (psi1(z), psi1(-z)) {
                prop_assert!(((a + half) - (b - half)).norm() <= 1e-12);
            }
        }
    }
}
