//! Wire format for polyhedra.
//!
//! ```json
//! {"dim": 2, "h": [["1", "0", "1"], ...], "v": {"vertices": [...], "rays": [...]}}
//! ```
//!
//! Each `h` row lists the normal followed by the right-hand side. Either
//! representation may be omitted on input; output always carries both.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::polyhedron::{HRep, HalfSpace, Polyhedron, VRep};
use super::rational::{RatVector, RatWire};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VJson {
    #[serde(default)]
    pub vertices: Vec<RatVector>,
    #[serde(default)]
    pub rays: Vec<RatVector>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<RatVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<VJson>,
}

impl PolyhedronJson {
    fn infer_dim(&self) -> Result<usize> {
        if let Some(d) = self.dim {
            return Ok(d);
        }
        if let Some(row) = self.h.as_ref().and_then(|h| h.first()) {
            return row
                .dim()
                .checked_sub(1)
                .ok_or_else(|| Error::InvalidInstance("empty inequality row".into()));
        }
        if let Some(g) = self
            .v
            .as_ref()
            .and_then(|v| v.vertices.first().or(v.rays.first()))
        {
            return Ok(g.dim());
        }
        Err(Error::InvalidInstance("cannot infer dimension; give \"dim\"".into()))
    }

    pub fn into_polyhedron(self) -> Result<Polyhedron> {
        let dim = self.infer_dim()?;
        let from_h = match &self.h {
            Some(rows) => {
                let mut out = Vec::with_capacity(rows.len());
                for r in rows {
                    if r.dim() != dim + 1 {
                        return Err(Error::DimensionMismatch {
                            expected: dim + 1,
                            found: r.dim(),
                        });
                    }
                    let mut a = r.0.clone();
                    let b = a.pop().expect("length checked");
                    out.push(HalfSpace::new(RatVector(a), b));
                }
                Some(Polyhedron::from_h(HRep::new(dim, out))?)
            }
            None => None,
        };
        let from_v = match self.v {
            Some(v) => Some(Polyhedron::from_v(VRep::new(dim, v.vertices, v.rays))?),
            None => None,
        };
        match (from_h, from_v) {
            (Some(a), Some(b)) if a != b => Err(Error::InvalidInstance(
                "\"h\" and \"v\" describe different sets".into(),
            )),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(Error::InvalidInstance("need \"h\" or \"v\"".into())),
        }
    }
}

impl From<&Polyhedron> for PolyhedronJson {
    fn from(p: &Polyhedron) -> Self {
        let h = p
            .rows()
            .iter()
            .map(|r| {
                let mut v = r.normal.0.clone();
                v.push(r.rhs.clone());
                RatVector(v)
            })
            .collect();
        PolyhedronJson {
            dim: Some(p.dim()),
            h: Some(h),
            v: Some(VJson {
                vertices: p.vertices().to_vec(),
                rays: p.rays().to_vec(),
            }),
        }
    }
}

impl Serialize for Polyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyhedronJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolyhedronJson::deserialize(d)?
            .into_polyhedron()
            .map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a rational-valued scalar field.
pub mod rational_str {
    use super::*;
    use crate::polyrat::rational::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatWire(r.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        Ok(RatWire::deserialize(d)?.0)
    }
}

pub mod opt_rational_str {
    use super::*;
    use crate::polyrat::rational::Rational;

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        r.as_ref().map(|r| RatWire(r.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Ok(Option::<RatWire>::deserialize(d)?.map(|w| w.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::rational::{frac, int};

    #[test]
    fn exact_round_trip() {
        let p = Polyhedron::hull(
            2,
            vec![
                RatVector(vec![frac(1, 3), int(0)]),
                RatVector(vec![int(0), frac(-2, 7)]),
                RatVector(vec![int(1), int(1)]),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: Polyhedron = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn h_only_and_v_only_inputs() {
        let a: Polyhedron =
            serde_json::from_str(r#"{"h": [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]]}"#).unwrap();
        let b: Polyhedron = serde_json::from_str(
            r#"{"v": {"vertices": [[1,1],[1,-1],[-1,1],[-1,-1]]}}"#,
        )
        .unwrap();
        assert_eq!(a, b);
        let whole: Polyhedron = serde_json::from_str(r#"{"dim": 3, "h": []}"#).unwrap();
        assert_eq!(whole, Polyhedron::whole_space(3));
    }

    #[test]
    fn rejects_inconsistent_descriptions() {
        let r: std::result::Result<Polyhedron, _> = serde_json::from_str(
            r#"{"h": [[1, 1]], "v": {"vertices": [[5]]}}"#,
        );
        assert!(r.is_err());
        let r: std::result::Result<Polyhedron, _> = serde_json::from_str(r#"{"h": [[1, 0, 1], [1, 1]]}"#);
        assert!(r.is_err());
    }
}
