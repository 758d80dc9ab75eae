use std::fmt;
use std::sync::Arc;

use super::OGroupError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Integer,
    Rational,
}

impl ComponentKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ComponentKind::Integer => "Z",
            ComponentKind::Rational => "Q",
        }
    }

    pub fn from_symbol(s: &str) -> Result<Self, OGroupError> {
        match s {
            "Z" => Ok(ComponentKind::Integer),
            "Q" => Ok(ComponentKind::Rational),
            other => Err(OGroupError::BadKind(other.to_string())),
        }
    }
}

/// Ordered list of components, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSignature {
    components: Arc<[ComponentKind]>,
}

impl GroupSignature {
    pub fn new(components: Vec<ComponentKind>) -> Result<Self, OGroupError> {
        if components.is_empty() {
            return Err(OGroupError::EmptySignature);
        }
        Ok(GroupSignature {
            components: components.into(),
        })
    }

    /// ℤⁿ with the lexicographic order.
    pub fn integer(rank: usize) -> Self {
        Self::new(vec![ComponentKind::Integer; rank]).expect("rank must be positive")
    }

    /// ℚⁿ with the lexicographic order.
    pub fn rational(rank: usize) -> Self {
        Self::new(vec![ComponentKind::Rational; rank]).expect("rank must be positive")
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn kind(&self, i: usize) -> ComponentKind {
        self.components[i]
    }

    pub fn components(&self) -> &[ComponentKind] {
        &self.components
    }

    /// ℤ×Λ₀: a new most significant integer component in front.
    pub fn extended(&self) -> Self {
        let mut c = Vec::with_capacity(self.rank() + 1);
        c.push(ComponentKind::Integer);
        c.extend_from_slice(&self.components);
        GroupSignature {
            components: c.into(),
        }
    }
}

impl std::str::FromStr for GroupSignature {
    type Err = OGroupError;

    /// Accepts `Z×Q`, `ZxQ`, `Z*Q`, `Z,Q` and powers such as `Z^2`.
    fn from_str(text: &str) -> Result<Self, OGroupError> {
        let mut kinds = Vec::new();
        for part in text.split(['×', 'x', '*', ',']) {
            let part = part.trim();
            let (sym, count) = match part.split_once('^') {
                Some((s, n)) => (
                    s.trim(),
                    n.trim().parse::<usize>().map_err(|_| OGroupError::BadKind(part.to_string()))?,
                ),
                None => (part, 1),
            };
            let kind = ComponentKind::from_symbol(sym)?;
            kinds.extend(std::iter::repeat_n(kind, count));
        }
        Self::new(kinds)
    }
}

impl fmt::Display for GroupSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.components.iter().map(|k| k.symbol()).collect();
        write!(f, "{}", parts.join("×"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let zq = GroupSignature::new(vec![ComponentKind::Integer, ComponentKind::Rational]).unwrap();
        for t in ["Z×Q", "ZxQ", "Z*Q", "Z, Q"] {
            assert_eq!(t.parse::<GroupSignature>().unwrap(), zq);
        }
        assert_eq!("Z^3".parse::<GroupSignature>().unwrap(), GroupSignature::integer(3));
        assert_eq!(zq.to_string().parse::<GroupSignature>().unwrap(), zq);
        assert!("R".parse::<GroupSignature>().is_err());
        assert!("".parse::<GroupSignature>().is_err());
    }
}
