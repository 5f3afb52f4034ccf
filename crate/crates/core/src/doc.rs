//! JSON document schemas: double complexes, multiplicity vectors, Lie data
//! and Hodge tables. All scalars travel as exact text, never as floats.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::DoubleComplex;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::models::LieData;
use crate::multiplicity::MultiplicityVector;
use crate::shape::Shape;
use crate::{Error, Result};

/// On-disk form of a double complex.
///
/// ```json
/// {
///   "field": "Q(i)",
///   "components": [{"p": 0, "q": 0, "dim": 1}],
///   "d1": [{"p": 0, "q": 0, "matrix": [["1", "0"]]}],
///   "d2": []
/// }
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub field: String,
    pub components: Vec<ComponentEntry>,
    #[serde(default)]
    pub d1: Vec<MapEntry>,
    #[serde(default)]
    pub d2: Vec<MapEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub p: i32,
    pub q: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapEntry {
    pub p: i32,
    pub q: i32,
    pub matrix: Vec<Vec<String>>,
}

impl ComplexDocument {
    pub fn from_complex(a: &DoubleComplex) -> Self {
        let field = a.field().label();
        let components = a
            .support()
            .map(|((p, q), dim)| ComponentEntry { p, q, dim })
            .collect();
        let dump = |m: &Matrix| -> Vec<Vec<String>> {
            (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
                .collect()
        };
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for ((p, q), _) in a.support() {
            let m1 = a.d1(p, q);
            if !m1.is_zero() {
                d1.push(MapEntry {
                    p,
                    q,
                    matrix: dump(&m1),
                });
            }
            let m2 = a.d2(p, q);
            if !m2.is_zero() {
                d2.push(MapEntry {
                    p,
                    q,
                    matrix: dump(&m2),
                });
            }
        }
        ComplexDocument {
            field,
            components,
            d1,
            d2,
        }
    }

    /// Structural parse. Scalar syntax and the field tag are checked here;
    /// the complex identities are reported by `DoubleComplex::validate`.
    pub fn to_complex(&self) -> Result<DoubleComplex> {
        let field = FieldSpec::parse(&self.field)?;
        let mut a = DoubleComplex::new(field);
        for c in &self.components {
            a.set_dim(c.p, c.q, c.dim);
        }
        let parse_matrix = |entry: &MapEntry| -> Result<Matrix> {
            let mut rows = Vec::with_capacity(entry.matrix.len());
            for row in &entry.matrix {
                let mut out = Vec::with_capacity(row.len());
                for s in row {
                    out.push(field.parse_scalar(s)?);
                }
                rows.push(out);
            }
            Matrix::from_rows(field, rows)
        };
        for entry in &self.d1 {
            a.set_d1(entry.p, entry.q, parse_matrix(entry)?);
        }
        for entry in &self.d2 {
            a.set_d2(entry.p, entry.q, parse_matrix(entry)?);
        }
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("complex document: {e}")))
    }
}

/// Multiplicity vectors serialize as a list of shape-label/count records.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultsDocument {
    pub shapes: Vec<MultEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultEntry {
    pub shape: String,
    pub count: usize,
}

impl MultsDocument {
    pub fn from_mults(m: &MultiplicityVector) -> Self {
        MultsDocument {
            shapes: m
                .iter()
                .map(|(s, c)| MultEntry {
                    shape: s.to_string(),
                    count: c,
                })
                .collect(),
        }
    }

    pub fn to_mults(&self) -> Result<MultiplicityVector> {
        let mut m = MultiplicityVector::new();
        for e in &self.shapes {
            m.add(e.shape.parse::<Shape>()?, e.count);
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("mults document: {e}")))
    }
}

/// Lie-algebra data: sparse 1-based structure constants plus a dense
/// rational matrix for the almost complex structure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieDocument {
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
    pub j: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

impl LieDocument {
    pub fn to_lie_data(&self) -> Result<LieData> {
        let parse_rat = |s: &str| -> Result<BigRational> {
            match FieldSpec::Rationals.parse_scalar(s)? {
                Scalar::Rational(r) => Ok(r),
                _ => unreachable!(),
            }
        };
        let mut triples = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            triples.push((b.i, b.j, b.k, parse_rat(&b.c)?));
        }
        let mut j_rows = Vec::with_capacity(self.j.len());
        for row in &self.j {
            let mut out = Vec::with_capacity(row.len());
            for s in row {
                out.push(parse_rat(s)?);
            }
            j_rows.push(out);
        }
        LieData::new(self.dim, triples, j_rows)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("lie document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// A Hodge table: dimensions per bidegree, zero differentials implied.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HodgeDocument {
    pub entries: Vec<ComponentEntry>,
}

impl HodgeDocument {
    pub fn to_table(&self) -> BTreeMap<(i32, i32), usize> {
        self.entries.iter().map(|e| ((e.p, e.q), e.dim)).collect()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("hodge document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn complex_documents_round_trip() {
        let samples = [
            DoubleComplex::elementary("S_{1,2}^{0,1}".parse().unwrap(), FieldSpec::Rationals),
            DoubleComplex::elementary("S^{1,1}".parse().unwrap(), FieldSpec::PrimeField(5)),
            models::h9_complex(),
            DoubleComplex::new(FieldSpec::Rationals),
        ];
        for a in samples {
            let doc = ComplexDocument::from_complex(&a);
            let json = doc.to_json();
            let back = ComplexDocument::from_json(&json)
                .unwrap()
                .to_complex()
                .unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn bad_documents_are_rejected() {
        assert!(ComplexDocument::from_json("{\"field\": \"R\"}").is_err());
        let unknown_field = ComplexDocument {
            field: "R".into(),
            components: vec![],
            d1: vec![],
            d2: vec![],
        };
        assert!(matches!(unknown_field.to_complex(), Err(Error::Parse(_))));
        let bad_scalar = ComplexDocument {
            field: "Q".into(),
            components: vec![ComponentEntry { p: 0, q: 0, dim: 1 }],
            d1: vec![MapEntry {
                p: 0,
                q: 0,
                matrix: vec![vec!["x".into()]],
            }],
            d2: vec![],
        };
        assert!(bad_scalar.to_complex().is_err());
    }

    #[test]
    fn invalid_identities_surface_as_diagnostics() {
        // d1 with the wrong shape parses fine and then fails validation,
        // naming the bidegree.
        let doc = ComplexDocument {
            field: "Q".into(),
            components: vec![
                ComponentEntry { p: 0, q: 0, dim: 1 },
                ComponentEntry { p: 1, q: 0, dim: 1 },
            ],
            d1: vec![MapEntry {
                p: 0,
                q: 0,
                matrix: vec![vec!["1".into()], vec!["1".into()]],
            }],
            d2: vec![],
        };
        let a = doc.to_complex().unwrap();
        let violations = a.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!((violations[0].p, violations[0].q), (0, 0));
    }

    #[test]
    fn mults_documents_round_trip() {
        let m = crate::multiplicity::multiplicities(&models::hopf_model()).unwrap();
        let doc = MultsDocument::from_mults(&m);
        let back = MultsDocument::from_json(&doc.to_json())
            .unwrap()
            .to_mults()
            .unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn h9_lie_document_builds_the_model() {
        let doc = LieDocument {
            dim: 6,
            brackets: vec![
                BracketEntry {
                    i: 1,
                    j: 2,
                    k: 4,
                    c: "1".into(),
                },
                BracketEntry {
                    i: 1,
                    j: 3,
                    k: 6,
                    c: "-1".into(),
                },
                BracketEntry {
                    i: 2,
                    j: 4,
                    k: 6,
                    c: "-1".into(),
                },
            ],
            j: vec![
                vec![
                    "0".into(),
                    "-1".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                ],
                vec![
                    "1".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                ],
                vec![
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "-1".into(),
                    "0".into(),
                    "0".into(),
                ],
                vec![
                    "0".into(),
                    "0".into(),
                    "1".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                ],
                vec![
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "-1".into(),
                ],
                vec![
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "0".into(),
                    "1".into(),
                    "0".into(),
                ],
            ],
        };
        let data = doc.to_lie_data().unwrap();
        let a = models::lie_complex(&data).unwrap();
        assert_eq!(a.total_dim(), 64);
        assert_eq!(a, models::h9_complex());
    }
}
