use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{mismatch, ComponentKind, GroupSignature, LexVector, OAutomorphism, OGroupError};

/// Order embedding placing a source group into a block of coordinates of a
/// target group, with zeros elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    source: GroupSignature,
    target: GroupSignature,
    position: usize,
}

/// Builds the embedding of `source` at `position` of `target`. An integer
/// component may land in a rational one, not conversely.
pub fn coordinate_embedding(
    source: &GroupSignature,
    target: &GroupSignature,
    position: usize,
) -> Result<Embedding, OGroupError> {
    if position + source.rank() > target.rank() {
        return Err(OGroupError::DoesNotFit {
            source_rank: source.rank(),
            target_rank: target.rank(),
            position,
        });
    }
    for i in 0..source.rank() {
        let (s, t) = (source.kind(i), target.kind(position + i));
        if s == ComponentKind::Rational && t == ComponentKind::Integer {
            return Err(OGroupError::IncompatibleKinds {
                index: i,
                source_kind: s.symbol().into(),
                target_kind: t.symbol().into(),
            });
        }
    }
    Ok(Embedding {
        source: source.clone(),
        target: target.clone(),
        position,
    })
}

impl Embedding {
    pub fn identity(sig: &GroupSignature) -> Self {
        Embedding {
            source: sig.clone(),
            target: sig.clone(),
            position: 0,
        }
    }

    pub fn source(&self) -> &GroupSignature {
        &self.source
    }

    pub fn target(&self) -> &GroupSignature {
        &self.target
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn apply(&self, x: &LexVector) -> Result<LexVector, OGroupError> {
        if x.signature() != &self.source {
            return Err(mismatch(&self.source, x.signature()));
        }
        let mut coords = vec![BigRational::zero(); self.target.rank()];
        for (i, c) in x.coords().iter().enumerate() {
            coords[self.position + i] = c.clone();
        }
        LexVector::new(self.target.clone(), coords)
    }

    /// Extends θ by the identity on the coordinates outside the block.
    pub fn lift(&self, theta: &OAutomorphism) -> Result<OAutomorphism, OGroupError> {
        if theta.signature() != &self.source {
            return Err(mismatch(&self.source, theta.signature()));
        }
        let n = self.target.rank();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = BigRational::one();
        }
        let k = self.source.rank();
        for i in 0..k {
            for j in 0..k {
                m[self.position + i][self.position + j] = theta.entry(i, j).clone();
            }
        }
        OAutomorphism::new(self.target.clone(), m)
    }
}
