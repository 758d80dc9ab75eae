use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{format_scalar, int};
use super::{mismatch, ComponentKind, GroupSignature, OGroupError, Scalar};

/// Element of a lexicographically ordered group ℤ/ℚ-product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexVector {
    sig: GroupSignature,
    coords: Vec<Scalar>,
}

/// Convex subgroup generated by an element, named by its leading index.
///
/// The ordering is inclusion: `Bottom` is the least class and a smaller
/// leading index is a larger class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvexClass {
    Bottom,
    Index(usize),
}

impl ConvexClass {
    pub fn leading_index(self) -> Option<usize> {
        match self {
            ConvexClass::Bottom => None,
            ConvexClass::Index(i) => Some(i),
        }
    }

    /// Strict inclusion of convex subgroups.
    pub fn strictly_inside(self, other: ConvexClass) -> bool {
        self < other
    }
}

impl PartialOrd for ConvexClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConvexClass {
    fn cmp(&self, other: &Self) -> Ordering {
        use ConvexClass::*;
        match (self, other) {
            (Bottom, Bottom) => Ordering::Equal,
            (Bottom, Index(_)) => Ordering::Less,
            (Index(_), Bottom) => Ordering::Greater,
            (Index(i), Index(j)) => j.cmp(i),
        }
    }
}

impl LexVector {
    pub fn new(sig: GroupSignature, coords: Vec<Scalar>) -> Result<Self, OGroupError> {
        if coords.len() != sig.rank() {
            return Err(OGroupError::WrongLength {
                expected: sig.rank(),
                got: coords.len(),
            });
        }
        for (i, c) in coords.iter().enumerate() {
            if sig.kind(i) == ComponentKind::Integer && !c.is_integer() {
                return Err(OGroupError::NonIntegral {
                    index: i,
                    value: format_scalar(c),
                });
            }
        }
        Ok(LexVector { sig, coords })
    }

    pub fn zero(sig: &GroupSignature) -> Self {
        LexVector {
            sig: sig.clone(),
            coords: vec![BigRational::zero(); sig.rank()],
        }
    }

    pub fn from_ints(sig: &GroupSignature, coords: &[i64]) -> Result<Self, OGroupError> {
        Self::new(sig.clone(), coords.iter().map(|&c| int(c)).collect())
    }

    /// Shorthand for an element of ℤⁿ.
    pub fn integers(coords: &[i64]) -> Self {
        Self::from_ints(&GroupSignature::integer(coords.len()), coords)
            .expect("integer coordinates fit an integer signature")
    }

    /// Shorthand for an element of rank-one ℚ.
    pub fn rational(value: Scalar) -> Self {
        LexVector {
            sig: GroupSignature::rational(1),
            coords: vec![value],
        }
    }

    /// The basis vector with a one at `index`.
    pub fn unit(sig: &GroupSignature, index: usize) -> Self {
        let mut v = Self::zero(sig);
        v.coords[index] = BigRational::one();
        v
    }

    pub fn signature(&self) -> &GroupSignature {
        &self.sig
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn leading_index(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero())
    }

    pub fn convex_class(&self) -> ConvexClass {
        match self.leading_index() {
            Some(i) => ConvexClass::Index(i),
            None => ConvexClass::Bottom,
        }
    }

    /// Sign of the element: the sign of its leading coordinate.
    pub fn sign(&self) -> Ordering {
        match self.leading_index() {
            Some(i) => {
                if self.coords[i].is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            None => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    fn same_sig(&self, other: &Self) -> Result<(), OGroupError> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(mismatch(&self.sig, &other.sig))
        }
    }

    pub fn lex_compare(&self, other: &Self) -> Result<Ordering, OGroupError> {
        self.same_sig(other)?;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return Ok(ord),
            }
        }
        Ok(Ordering::Equal)
    }

    /// `self ≪ other`: every integer multiple of `self` stays below `other`.
    pub fn much_less(&self, other: &Self) -> Result<bool, OGroupError> {
        self.same_sig(other)?;
        Ok(other.is_positive() && self.convex_class() < other.convex_class())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, OGroupError> {
        self.same_sig(other)?;
        Ok(LexVector {
            sig: self.sig.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, OGroupError> {
        self.same_sig(other)?;
        Ok(LexVector {
            sig: self.sig.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Integer multiple `k·self`.
    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        LexVector {
            sig: self.sig.clone(),
            coords: self.coords.iter().map(|c| c * &k).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// `k·self` for a rational `k`; fails if an integer component would
    /// leave ℤ.
    pub fn scale_rational(&self, k: &Scalar) -> Result<Self, OGroupError> {
        Self::new(
            self.sig.clone(),
            self.coords.iter().map(|c| c * k).collect(),
        )
    }

    /// Prepends an integer coordinate: the element `(m, self)` of ℤ×Λ₀.
    pub fn with_integer_prefix(&self, m: &BigInt) -> Self {
        let mut coords = Vec::with_capacity(self.coords.len() + 1);
        coords.push(BigRational::from_integer(m.clone()));
        coords.extend(self.coords.iter().cloned());
        LexVector {
            sig: self.sig.extended(),
            coords,
        }
    }

    /// Parses `3`, `1/2` or `(0,2)`. Without a signature, integer
    /// coordinates become ℤ components and fractions become ℚ components.
    pub fn parse(text: &str, sig: Option<&GroupSignature>) -> Result<Self, OGroupError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let coords = inner
            .split(',')
            .map(super::parse_scalar)
            .collect::<Result<Vec<_>, _>>()?;
        let sig = match sig {
            Some(s) => s.clone(),
            None => GroupSignature::new(
                coords
                    .iter()
                    .map(|c| {
                        if c.is_integer() {
                            ComponentKind::Integer
                        } else {
                            ComponentKind::Rational
                        }
                    })
                    .collect(),
            )?,
        };
        Self::new(sig, coords)
    }

    /// Splits `(m, λ₀)` back into its parts. Needs rank ≥ 2 and an integer
    /// leading component.
    pub fn split_integer_prefix(&self) -> Option<(BigInt, LexVector)> {
        if self.sig.rank() < 2 || self.sig.kind(0) != ComponentKind::Integer {
            return None;
        }
        let tail = GroupSignature::new(self.sig.components()[1..].to_vec()).ok()?;
        Some((
            self.coords[0].to_integer(),
            LexVector {
                sig: tail,
                coords: self.coords[1..].to_vec(),
            },
        ))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&LexVector> for &LexVector {
            type Output = LexVector;
            /// Panics on a signature mismatch; use the checked form when
            /// signatures are not known to agree.
            fn $m(self, rhs: &LexVector) -> LexVector {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<LexVector> for LexVector {
            type Output = LexVector;
            fn $m(self, rhs: LexVector) -> LexVector {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LexVector> for LexVector {
            type Output = LexVector;
            fn $m(self, rhs: &LexVector) -> LexVector {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);

impl Neg for &LexVector {
    type Output = LexVector;
    fn neg(self) -> LexVector {
        LexVector {
            sig: self.sig.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LexVector {
    type Output = LexVector;
    fn neg(self) -> LexVector {
        -&self
    }
}

impl PartialOrd for LexVector {
    /// `None` when the signatures differ.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.lex_compare(other).ok()
    }
}

impl fmt::Display for LexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", format_scalar(&self.coords[0]));
        }
        let parts: Vec<String> = self.coords.iter().map(format_scalar).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LexVector {
        LexVector::integers(c)
    }

    #[test]
    fn compare_examples() {
        assert_eq!(v(&[1, -5]).lex_compare(&v(&[0, 100])), Ok(Ordering::Greater));
        assert_eq!(v(&[0, 0]).lex_compare(&v(&[0, 0])), Ok(Ordering::Equal));
        assert_eq!(v(&[2, 3]).lex_compare(&v(&[2, 4])), Ok(Ordering::Less));
        assert!(v(&[1]).lex_compare(&v(&[1, 0])).is_err());
    }

    #[test]
    fn much_less_examples() {
        assert_eq!(v(&[0, 3]).much_less(&v(&[1, 0])), Ok(true));
        assert_eq!(v(&[2, 0]).much_less(&v(&[3, 0])), Ok(false));
        assert_eq!(v(&[0, 0]).much_less(&v(&[0, 1])), Ok(true));
        assert_eq!(v(&[0, 0]).much_less(&v(&[0, -1])), Ok(false));
    }

    #[test]
    fn convex_class_examples() {
        assert_eq!(v(&[0, 0, 5]).convex_class(), ConvexClass::Index(2));
        assert_eq!(v(&[0, 0, 0]).convex_class(), ConvexClass::Bottom);
        assert_eq!(v(&[-1, 7, 0]).convex_class(), ConvexClass::Index(0));
        assert!(ConvexClass::Bottom.strictly_inside(ConvexClass::Index(4)));
        assert!(ConvexClass::Index(2).strictly_inside(ConvexClass::Index(1)));
        assert!(!ConvexClass::Index(1).strictly_inside(ConvexClass::Index(1)));
    }

    #[test]
    fn integer_components_reject_fractions() {
        let sig = GroupSignature::integer(1);
        let half = BigRational::new(1.into(), 2.into());
        assert!(LexVector::new(sig, vec![half.clone()]).is_err());
        assert!(LexVector::new(GroupSignature::rational(1), vec![half]).is_ok());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(LexVector::parse("(0,2)", None).unwrap(), v(&[0, 2]));
        assert_eq!(LexVector::parse(" 3 ", None).unwrap(), v(&[3]));
        let half = LexVector::parse("1/2", None).unwrap();
        assert_eq!(half, LexVector::rational(BigRational::new(1.into(), 2.into())));
        let q = GroupSignature::rational(1);
        assert_eq!(LexVector::parse("2", Some(&q)).unwrap().signature(), &q);
        assert!(LexVector::parse("1/2", Some(&GroupSignature::integer(1))).is_err());
        assert!(LexVector::parse("(1,y)", None).is_err());
        for s in ["(1,-3)", "5", "(1/3,2)"] {
            let x = LexVector::parse(s, None).unwrap();
            assert_eq!(LexVector::parse(&x.to_string(), Some(x.signature())).unwrap(), x);
        }
    }

    #[test]
    fn prefix_round_trip() {
        let x = v(&[3, -2]);
        let ext = x.with_integer_prefix(&BigInt::from(1));
        assert_eq!(ext, v(&[1, 3, -2]));
        assert_eq!(ext.split_integer_prefix(), Some((BigInt::from(1), x)));
    }
}
