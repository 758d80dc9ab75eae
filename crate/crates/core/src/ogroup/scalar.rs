use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::OGroupError;

/// Exact coordinate type. Integer components hold values with denominator 1.
pub type Scalar = BigRational;

/// Parses `"7"`, `"-3"` or `"p/q"`.
pub fn parse_scalar(text: &str) -> Result<Scalar, OGroupError> {
    let t = text.trim();
    let bad = || OGroupError::BadScalar(text.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Prints integers plainly and other rationals as `p/q`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}
