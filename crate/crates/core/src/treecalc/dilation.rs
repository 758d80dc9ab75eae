use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{TranslationData, TreeError};
use crate::ogroup::{GroupSignature, LexVector, OAutomorphism};

/// What `x ↦ qx + c` does to the line ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineAction {
    Identity,
    Hyperbolic { data: TranslationData, tame: bool },
    /// Fixes `point`; never essentially hyperbolic on rank-one ℚ.
    FixedPoint {
        point: BigRational,
        essentially_hyperbolic: bool,
    },
}

pub fn dilation_line_action(q: &BigRational, c: &BigRational) -> Result<LineAction, TreeError> {
    if !q.is_positive() {
        return Err(TreeError::NonPositiveDilation);
    }
    let sig = GroupSignature::rational(1);
    let theta = OAutomorphism::scaling(&sig, q.clone())?;
    let nu = LexVector::rational(c.clone());
    if q.is_one() {
        if c.is_zero() {
            return Ok(LineAction::Identity);
        }
        let tame = theta.is_tame(&nu)?;
        return Ok(LineAction::Hyperbolic {
            data: TranslationData {
                length: nu.abs(),
                nu,
                theta,
            },
            tame,
        });
    }
    Ok(LineAction::FixedPoint {
        point: c / (BigRational::one() - q),
        essentially_hyperbolic: theta.is_tame(&nu)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        match dilation_line_action(&r(1, 1), &r(3, 1)).unwrap() {
            LineAction::Hyperbolic { data, tame } => {
                assert!(tame);
                assert_eq!(data.nu, LexVector::rational(r(3, 1)));
                assert!(data.theta.is_identity());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            dilation_line_action(&r(2, 1), &r(0, 1)).unwrap(),
            LineAction::FixedPoint { point: r(0, 1), essentially_hyperbolic: false }
        );
        assert_eq!(
            dilation_line_action(&r(1, 4), &r(1, 1)).unwrap(),
            LineAction::FixedPoint { point: r(4, 3), essentially_hyperbolic: false }
        );
        assert_eq!(dilation_line_action(&r(1, 1), &r(0, 1)).unwrap(), LineAction::Identity);
        assert_eq!(dilation_line_action(&r(-1, 2), &r(0, 1)), Err(TreeError::NonPositiveDilation));
        assert_eq!(dilation_line_action(&r(0, 1), &r(0, 1)), Err(TreeError::NonPositiveDilation));
    }
}
