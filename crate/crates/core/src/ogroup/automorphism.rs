use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::format_scalar;
use super::{mismatch, ComponentKind, GroupSignature, LexVector, OGroupError, Scalar};

/// Order-preserving automorphism of a lexicographic group, stored as a
/// lower-triangular matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OAutomorphism {
    sig: GroupSignature,
    matrix: Vec<Vec<Scalar>>,
}

fn structural_problem(sig: &GroupSignature, m: &[Vec<Scalar>]) -> Option<String> {
    let n = sig.rank();
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Some(format!("matrix is not {n}×{n}"));
    }
    for i in 0..n {
        for j in 0..n {
            let e = &m[i][j];
            if j > i && !e.is_zero() {
                return Some(format!("entry ({i},{j}) above the diagonal is nonzero"));
            }
            if i == j {
                if !e.is_positive() {
                    return Some(format!("diagonal entry {i} is not positive"));
                }
                if sig.kind(i) == ComponentKind::Integer && !e.is_one() {
                    return Some(format!("diagonal entry {i} on an integer component is not 1"));
                }
            }
            if j < i && sig.kind(i) == ComponentKind::Integer {
                let ok = match sig.kind(j) {
                    ComponentKind::Integer => e.is_integer(),
                    ComponentKind::Rational => e.is_zero(),
                };
                if !ok {
                    return Some(format!(
                        "entry ({i},{j}) does not map the lattice into itself"
                    ));
                }
            }
        }
    }
    None
}

fn lower_triangular_inverse(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = m.len();
    let mut inv = vec![vec![BigRational::zero(); n]; n];
    for j in 0..n {
        inv[j][j] = m[j][j].recip();
        for i in j + 1..n {
            let mut acc = BigRational::zero();
            for k in j..i {
                acc += &m[i][k] * &inv[k][j];
            }
            inv[i][j] = -acc / &m[i][i];
        }
    }
    inv
}

/// True iff `matrix` is lower triangular with positive diagonal, unit
/// diagonal on integer components, preserves the lattice, and its inverse
/// does too.
pub fn is_order_preserving(sig: &GroupSignature, matrix: &[Vec<Scalar>]) -> bool {
    if structural_problem(sig, matrix).is_some() {
        return false;
    }
    structural_problem(sig, &lower_triangular_inverse(matrix)).is_none()
}

impl OAutomorphism {
    pub fn new(sig: GroupSignature, matrix: Vec<Vec<Scalar>>) -> Result<Self, OGroupError> {
        if let Some(p) = structural_problem(&sig, &matrix) {
            return Err(OGroupError::NotOrderPreserving(p));
        }
        if let Some(p) = structural_problem(&sig, &lower_triangular_inverse(&matrix)) {
            return Err(OGroupError::NotOrderPreserving(format!("inverse: {p}")));
        }
        Ok(OAutomorphism { sig, matrix })
    }

    pub fn identity(sig: &GroupSignature) -> Self {
        let n = sig.rank();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        OAutomorphism {
            sig: sig.clone(),
            matrix,
        }
    }

    /// Adds `a` times coordinate `from` to coordinate `to` (`from < to`).
    pub fn shear(sig: &GroupSignature, from: usize, to: usize, a: Scalar) -> Result<Self, OGroupError> {
        let mut m = Self::identity(sig).matrix;
        if from >= to || to >= sig.rank() {
            return Err(OGroupError::NotOrderPreserving(format!(
                "shear must add a more significant coordinate ({from}) to a less significant one ({to})"
            )));
        }
        m[to][from] = a;
        Self::new(sig.clone(), m)
    }

    /// The rank-two shear `(p,q) ↦ (p, q + a·p)` on ℤ².
    pub fn z2_shear(a: i64) -> Self {
        Self::shear(&GroupSignature::integer(2), 0, 1, BigRational::from_integer(a.into()))
            .expect("integer shear is order preserving")
    }

    /// Multiplication by a positive rational on every (rational) component.
    pub fn scaling(sig: &GroupSignature, q: Scalar) -> Result<Self, OGroupError> {
        let mut m = Self::identity(sig).matrix;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = q.clone();
        }
        Self::new(sig.clone(), m)
    }

    pub fn signature(&self) -> &GroupSignature {
        &self.sig
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.matrix[i][j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.sig)
    }

    pub fn apply(&self, a: &LexVector) -> Result<LexVector, OGroupError> {
        if a.signature() != &self.sig {
            return Err(mismatch(&self.sig, a.signature()));
        }
        let coords = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut acc = BigRational::zero();
                for (j, e) in row.iter().enumerate().take(i + 1) {
                    if !e.is_zero() {
                        acc += e * a.coord(j);
                    }
                }
                acc
            })
            .collect();
        LexVector::new(self.sig.clone(), coords)
    }

    /// `self ∘ other`, i.e. the matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self, OGroupError> {
        if self.sig != other.sig {
            return Err(mismatch(&self.sig, &other.sig));
        }
        let n = self.sig.rank();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate().take(i + 1) {
                let mut acc = BigRational::zero();
                for k in j..=i {
                    acc += &self.matrix[i][k] * &other.matrix[k][j];
                }
                *cell = acc;
            }
        }
        Ok(OAutomorphism {
            sig: self.sig.clone(),
            matrix: m,
        })
    }

    pub fn invert(&self) -> Self {
        OAutomorphism {
            sig: self.sig.clone(),
            matrix: lower_triangular_inverse(&self.matrix),
        }
    }

    /// Column `j` of `I − θ`.
    fn defect_column(&self, j: usize) -> Vec<Scalar> {
        (0..self.sig.rank())
            .map(|i| {
                let id = if i == j { BigRational::one() } else { BigRational::zero() };
                id - &self.matrix[i][j]
            })
            .collect()
    }

    /// Tameness of `(θ, ν)`: `(I−θ)λ ≪ |ν|` for every λ, decided by
    /// comparing leading indices of the columns of `I−θ` with that of ν.
    pub fn is_tame(&self, nu: &LexVector) -> Result<bool, OGroupError> {
        if nu.signature() != &self.sig {
            return Err(mismatch(&self.sig, nu.signature()));
        }
        let Some(lead) = nu.leading_index() else {
            return Ok(false);
        };
        Ok((0..self.sig.rank()).all(|j| {
            match self.defect_column(j).iter().position(|c| !c.is_zero()) {
                None => true,
                Some(i) => i > lead,
            }
        }))
    }
}

impl fmt::Display for OAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(format_scalar).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::int;
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn order_preserving_examples() {
        let z2 = GroupSignature::integer(2);
        assert!(is_order_preserving(&z2, &m(&[&[1, 0], &[3, 1]])));
        assert!(!is_order_preserving(&z2, &m(&[&[0, 1], &[1, 0]])));
        assert!(!is_order_preserving(&z2, &m(&[&[2, 0], &[0, 1]])));
        let q2 = GroupSignature::rational(2);
        assert!(is_order_preserving(&q2, &m(&[&[2, 0], &[-5, 3]])));
        // An integer row may not read a rational column.
        let qz = GroupSignature::new(vec![ComponentKind::Rational, ComponentKind::Integer]).unwrap();
        assert!(!is_order_preserving(&qz, &m(&[&[1, 0], &[1, 1]])));
    }

    #[test]
    fn shear_examples() {
        let s2 = OAutomorphism::z2_shear(2);
        assert_eq!(s2.apply(&LexVector::integers(&[1, 0])).unwrap(), LexVector::integers(&[1, 2]));
        let id = OAutomorphism::identity(&GroupSignature::integer(2));
        let a = LexVector::integers(&[-4, 9]);
        assert_eq!(id.apply(&a).unwrap(), a);
        let c = OAutomorphism::z2_shear(1).compose(&OAutomorphism::z2_shear(2)).unwrap();
        assert_eq!(c, OAutomorphism::z2_shear(3));
        assert_eq!(OAutomorphism::z2_shear(5).invert(), OAutomorphism::z2_shear(-5));
    }

    #[test]
    fn inverse_of_rational_matrix() {
        let q3 = GroupSignature::rational(3);
        let t = OAutomorphism::new(q3.clone(), m(&[&[2, 0, 0], &[1, 3, 0], &[-4, 7, 5]])).unwrap();
        assert!(t.compose(&t.invert()).unwrap().is_identity());
        assert!(t.invert().compose(&t).unwrap().is_identity());
    }

    #[test]
    fn tameness_examples() {
        let shear = OAutomorphism::z2_shear(4);
        assert_eq!(shear.is_tame(&LexVector::integers(&[1, 0])), Ok(true));
        let id = OAutomorphism::identity(&GroupSignature::integer(2));
        assert_eq!(id.is_tame(&LexVector::integers(&[0, 1])), Ok(true));
        assert_eq!(OAutomorphism::z2_shear(1).is_tame(&LexVector::integers(&[0, 1])), Ok(false));
        assert_eq!(id.is_tame(&LexVector::integers(&[0, 0])), Ok(false));
    }
}
