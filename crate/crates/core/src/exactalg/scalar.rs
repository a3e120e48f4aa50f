use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rational scalar, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Complex number with rational real and imaginary parts.
pub type GaussianRational = Complex<Rational>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

/// Formats as `re + im i`, dropping zero parts; the output is accepted by
/// [`parse_gaussian`](super::parse_gaussian).
pub fn fmt_gaussian(z: &GaussianRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => z.re.to_string(),
        (true, false) => format!("{} i", z.im),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("{} {} {} i", z.re, sign, z.im.abs())
        }
    }
}
