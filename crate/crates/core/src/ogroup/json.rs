//! JSON forms: `{"sig":["Z","Q"],"coords":["1","1/2"]}` and friends.

use serde::{Deserialize, Serialize};

use super::{
    format_scalar, parse_scalar, AffineMap, ComponentKind, GroupSignature, LexVector,
    OAutomorphism, OGroupError, Scalar,
};

/// A coordinate is written as a string; plain JSON integers are accepted on
/// input.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Int(i64),
    Text(String),
}

impl ScalarRepr {
    fn parse(&self) -> Result<Scalar, OGroupError> {
        match self {
            ScalarRepr::Int(v) => Ok(super::scalar::int(*v)),
            ScalarRepr::Text(s) => parse_scalar(s),
        }
    }
}

fn sig_repr(sig: &GroupSignature) -> Vec<String> {
    sig.components().iter().map(|k| k.symbol().to_string()).collect()
}

fn sig_parse(sig: &[String]) -> Result<GroupSignature, OGroupError> {
    GroupSignature::new(
        sig.iter()
            .map(|s| ComponentKind::from_symbol(s))
            .collect::<Result<_, _>>()?,
    )
}

#[derive(Serialize, Deserialize)]
pub(super) struct LexVectorRepr {
    sig: Vec<String>,
    coords: Vec<ScalarRepr>,
}

impl From<LexVector> for LexVectorRepr {
    fn from(v: LexVector) -> Self {
        LexVectorRepr {
            sig: sig_repr(v.signature()),
            coords: v.coords().iter().map(|c| ScalarRepr::Text(format_scalar(c))).collect(),
        }
    }
}

impl TryFrom<LexVectorRepr> for LexVector {
    type Error = OGroupError;
    fn try_from(r: LexVectorRepr) -> Result<Self, OGroupError> {
        let coords = r.coords.iter().map(ScalarRepr::parse).collect::<Result<_, _>>()?;
        LexVector::new(sig_parse(&r.sig)?, coords)
    }
}

impl Serialize for LexVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LexVectorRepr::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LexVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LexVectorRepr::deserialize(d)?;
        LexVector::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct OAutomorphismRepr {
    sig: Vec<String>,
    matrix: Vec<Vec<ScalarRepr>>,
}

impl Serialize for OAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OAutomorphismRepr {
            sig: sig_repr(self.signature()),
            matrix: self
                .matrix()
                .iter()
                .map(|r| r.iter().map(|c| ScalarRepr::Text(format_scalar(c))).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OAutomorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = OAutomorphismRepr::deserialize(d)?;
        let build = || -> Result<OAutomorphism, OGroupError> {
            let m = r
                .matrix
                .iter()
                .map(|row| row.iter().map(ScalarRepr::parse).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            OAutomorphism::new(sig_parse(&r.sig)?, m)
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct AffineMapRepr {
    theta: OAutomorphism,
    mu: LexVector,
}

impl Serialize for AffineMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AffineMapRepr {
            theta: self.theta().clone(),
            mu: self.mu().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = AffineMapRepr::deserialize(d)?;
        AffineMap::new(r.theta, r.mu).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexvector_json() {
        let sig = GroupSignature::new(vec![
            ComponentKind::Integer,
            ComponentKind::Integer,
            ComponentKind::Rational,
        ])
        .unwrap();
        let v = LexVector::new(
            sig,
            vec![
                parse_scalar("1").unwrap(),
                parse_scalar("-5").unwrap(),
                parse_scalar("1/2").unwrap(),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"sig":["Z","Z","Q"],"coords":["1","-5","1/2"]}"#);
        assert_eq!(serde_json::from_str::<LexVector>(&text).unwrap(), v);
        let loose: LexVector = serde_json::from_str(r#"{"sig":["Z"],"coords":[3]}"#).unwrap();
        assert_eq!(loose, LexVector::integers(&[3]));
        assert!(serde_json::from_str::<LexVector>(r#"{"sig":["Z"],"coords":["1/2"]}"#).is_err());
    }

    #[test]
    fn affine_json() {
        let b = AffineMap::new(OAutomorphism::z2_shear(2), LexVector::integers(&[0, 7])).unwrap();
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<AffineMap>(&text).unwrap(), b);
        let bad = r#"{"sig":["Z","Z"],"matrix":[["2","0"],["0","1"]]}"#;
        assert!(serde_json::from_str::<OAutomorphism>(bad).is_err());
    }
}
