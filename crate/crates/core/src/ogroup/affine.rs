use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{mismatch, GroupSignature, LexVector, OAutomorphism, OGroupError};

/// The map `(m, λ₀) ↦ (m, θλ₀ + m·μ)` of ℤ×Λ₀.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    theta: OAutomorphism,
    mu: LexVector,
}

impl AffineMap {
    pub fn new(theta: OAutomorphism, mu: LexVector) -> Result<Self, OGroupError> {
        if theta.signature() != mu.signature() {
            return Err(mismatch(theta.signature(), mu.signature()));
        }
        Ok(AffineMap { theta, mu })
    }

    pub fn identity(sig: &GroupSignature) -> Self {
        AffineMap {
            theta: OAutomorphism::identity(sig),
            mu: LexVector::zero(sig),
        }
    }

    pub fn translation(mu: LexVector) -> Self {
        AffineMap {
            theta: OAutomorphism::identity(mu.signature()),
            mu,
        }
    }

    pub fn dilation(theta: OAutomorphism) -> Self {
        let mu = LexVector::zero(theta.signature());
        AffineMap { theta, mu }
    }

    pub fn theta(&self) -> &OAutomorphism {
        &self.theta
    }

    pub fn mu(&self) -> &LexVector {
        &self.mu
    }

    pub fn signature(&self) -> &GroupSignature {
        self.theta.signature()
    }

    pub fn is_identity(&self) -> bool {
        self.theta.is_identity() && self.mu.is_zero()
    }

    pub fn apply(&self, m: &BigInt, x: &LexVector) -> Result<(BigInt, LexVector), OGroupError> {
        let moved = self.theta.apply(x)?;
        Ok((m.clone(), moved + self.mu.scale(m)))
    }

    /// Applies the map to an element of ℤ×Λ₀ written as one vector.
    pub fn apply_extended(&self, x: &LexVector) -> Result<LexVector, OGroupError> {
        let expected = self.signature().extended();
        let (m, rest) = x
            .split_integer_prefix()
            .filter(|_| x.signature() == &expected)
            .ok_or_else(|| mismatch(&expected, x.signature()))?;
        let (m, y) = self.apply(&m, &rest)?;
        Ok(y.with_integer_prefix(&m))
    }

    /// `self ∘ other`: `(θ_g θ_h, μ_g + θ_g μ_h)`.
    pub fn compose(&self, other: &Self) -> Result<Self, OGroupError> {
        let theta = self.theta.compose(&other.theta)?;
        let mu = self.mu.checked_add(&self.theta.apply(&other.mu)?)?;
        Ok(AffineMap { theta, mu })
    }

    pub fn invert(&self) -> Self {
        let inv = self.theta.invert();
        let mu = -inv.apply(&self.mu).expect("signatures agree by construction");
        AffineMap { theta: inv, mu }
    }

    /// The same map as a lower-triangular automorphism of ℤ×Λ₀.
    pub fn to_extended(&self) -> OAutomorphism {
        let sig = self.signature().extended();
        let n = sig.rank();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        m[0][0] = BigRational::from_integer(1.into());
        for i in 1..n {
            m[i][0] = self.mu.coord(i - 1).clone();
            for j in 1..=i {
                m[i][j] = self.theta.entry(i - 1, j - 1).clone();
            }
        }
        OAutomorphism::new(sig, m).expect("affine lift is order preserving")
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(θ={}, μ={})", self.theta, self.mu)
    }
}
