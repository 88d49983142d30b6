//! The JSON input document: one graded BiHom algebra per file.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "field": "Fp", "p": 5,
//!   "n": 2,
//!   "group": [2, 2], "alpha": [[0, 1], [1, 0]], "beta": [[1, 0], [0, 1]],
//!   "components": [{"degree": [0, 0], "basis": [[["1", "0"], ["0", "1"]]]}],
//!   "psi": {"conjugator": [["1", "1"], ["1", "-1"]]},
//!   "phi": "identity"
//! }
//! ```
//!
//! Scalars are strings such as `"2/3"` (bare integers are accepted on input).
//! `alpha`, `beta`, `psi` and `phi` default to the identity.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{GradedBiHomAlgebra, TwistSpec};
use crate::catalog::AnyAlgebra;
use crate::field::{Field, PrimeField, Rationals};
use crate::group::{BiHomGroup, GroupAuto, GroupSpec};
use crate::linalg::Mat;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct DocumentError {
    /// Location of the first problem, e.g. `components[1].basis[0]`.
    pub path: String,
    pub message: String,
}

impl DocumentError {
    fn at(path: impl Into<String>, message: impl ToString) -> Self {
        DocumentError {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn parse<F: Field>(&self, f: &F) -> Result<F::Elem, String> {
        match self {
            ScalarText::Int(i) => Ok(f.from_i64(*i)),
            ScalarText::Text(t) => f.parse(t).map_err(|e| e.to_string()),
        }
    }
}

pub type MatrixText = Vec<Vec<ScalarText>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub degree: Vec<i64>,
    pub basis: Vec<MatrixText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistDoc {
    Identity,
    Conjugator(MatrixText),
    /// Images of the concatenated component bases, in document order.
    Images(Vec<MatrixText>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    pub schema_version: String,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub n: usize,
    pub group: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<i64>>>,
    pub components: Vec<ComponentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<TwistDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<TwistDoc>,
}

const TOP_KEYS: &[&str] = &[
    "schema_version",
    "field",
    "p",
    "n",
    "group",
    "alpha",
    "beta",
    "components",
    "psi",
    "phi",
];
const COMPONENT_KEYS: &[&str] = &["degree", "basis"];

/// Removes keys the schema does not know and returns their paths.
fn strip_unknown(v: &mut Value) -> Vec<String> {
    let mut found = Vec::new();
    let Value::Object(top) = v else {
        return found;
    };
    top.retain(|k, _| {
        let known = TOP_KEYS.contains(&k.as_str());
        if !known {
            found.push(k.clone());
        }
        known
    });
    if let Some(Value::Array(comps)) = top.get_mut("components") {
        for (i, c) in comps.iter_mut().enumerate() {
            if let Value::Object(obj) = c {
                obj.retain(|k, _| {
                    let known = COMPONENT_KEYS.contains(&k.as_str());
                    if !known {
                        found.push(format!("components[{i}].{k}"));
                    }
                    known
                });
            }
        }
    }
    found
}

/// A parsed document together with the algebra it describes.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub document: InputDocument,
    pub algebra: AnyAlgebra,
    /// Unknown keys skipped in lenient mode.
    pub warnings: Vec<String>,
}

/// Parses and builds. Unknown keys are errors unless `lenient`.
pub fn load(text: &str, lenient: bool) -> Result<Loaded, DocumentError> {
    let mut value: Value =
        serde_json::from_str(text).map_err(|e| DocumentError::at("$", e))?;
    let unknown = strip_unknown(&mut value);
    if !lenient {
        if let Some(k) = unknown.first() {
            return Err(DocumentError::at(k.clone(), "unknown key"));
        }
    }
    let document: InputDocument = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        DocumentError::at(if path == "." { "$".into() } else { path }, e.into_inner())
    })?;
    let algebra = build(&document)?;
    Ok(Loaded {
        document,
        algebra,
        warnings: unknown.into_iter().map(|k| format!("{k}: unknown key ignored")).collect(),
    })
}

pub fn build(doc: &InputDocument) -> Result<AnyAlgebra, DocumentError> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(DocumentError::at(
            "schema_version",
            format!("unsupported version {:?}, expected {SCHEMA_VERSION:?}", doc.schema_version),
        ));
    }
    match (doc.field.as_str(), doc.p) {
        ("Q", None) => Ok(AnyAlgebra::Rational(build_over(Rationals, doc)?)),
        ("Q", Some(_)) => Err(DocumentError::at("p", "a modulus is only allowed with field Fp")),
        ("Fp", Some(p)) => {
            let f = PrimeField::new(p).map_err(|e| DocumentError::at("p", e))?;
            Ok(AnyAlgebra::Prime(build_over(f, doc)?))
        }
        ("Fp", None) => Err(DocumentError::at("p", "field Fp needs a prime p")),
        (other, _) => Err(DocumentError::at(
            "field",
            format!("unknown field {other:?}, expected \"Q\" or \"Fp\""),
        )),
    }
}

fn matrix<F: Field>(f: &F, n: usize, m: &MatrixText, path: &str) -> Result<Mat<F::Elem>, DocumentError> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(DocumentError::at(path, format!("expected a {n}x{n} matrix")));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, r) in m.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for (j, x) in r.iter().enumerate() {
            row.push(x.parse(f).map_err(|e| DocumentError::at(format!("{path}[{i}][{j}]"), e))?);
        }
        rows.push(row);
    }
    Mat::from_rows(rows).map_err(|e| DocumentError::at(path, e))
}

fn twist<F: Field>(
    f: &F,
    n: usize,
    t: &Option<TwistDoc>,
    name: &str,
) -> Result<TwistSpec<F::Elem>, DocumentError> {
    Ok(match t {
        None | Some(TwistDoc::Identity) => TwistSpec::Identity,
        Some(TwistDoc::Conjugator(m)) => {
            TwistSpec::Conjugator(matrix(f, n, m, &format!("{name}.conjugator"))?)
        }
        Some(TwistDoc::Images(ms)) => TwistSpec::Images(
            ms.iter()
                .enumerate()
                .map(|(i, m)| matrix(f, n, m, &format!("{name}.images[{i}]")))
                .collect::<Result<_, _>>()?,
        ),
    })
}

fn build_over<F: Field>(f: F, doc: &InputDocument) -> Result<GradedBiHomAlgebra<F>, DocumentError> {
    let n = doc.n;
    if n == 0 {
        return Err(DocumentError::at("n", "matrix size must be positive"));
    }
    let group = GroupSpec::new(doc.group.clone()).map_err(|e| DocumentError::at("group", e))?;
    let auto = |m: &Option<Vec<Vec<i64>>>, name: &str| match m {
        None => Ok(GroupAuto::identity(&group)),
        Some(m) => GroupAuto::new(&group, m.clone()).map_err(|e| DocumentError::at(name, e)),
    };
    let bhg = BiHomGroup::new(group.clone(), auto(&doc.alpha, "alpha")?, auto(&doc.beta, "beta")?);
    let mut comps = Vec::with_capacity(doc.components.len());
    for (i, c) in doc.components.iter().enumerate() {
        let degree = group
            .elem(&c.degree)
            .map_err(|e| DocumentError::at(format!("components[{i}].degree"), e))?;
        let basis = c
            .basis
            .iter()
            .enumerate()
            .map(|(k, m)| matrix(&f, n, m, &format!("components[{i}].basis[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        comps.push((degree, basis));
    }
    let psi = twist(&f, n, &doc.psi, "psi")?;
    let phi = twist(&f, n, &doc.phi, "phi")?;
    GradedBiHomAlgebra::new(f, n, bhg, comps, psi, phi).map_err(|e| {
        let path = match &e {
            crate::algebra::AlgebraError::SingularConjugator(which) => format!("{which}.conjugator"),
            crate::algebra::AlgebraError::ImageCount { which, .. } => format!("{which}.images"),
            _ => "components".to_string(),
        };
        DocumentError::at(path, e)
    })
}

fn matrix_text<F: Field>(f: &F, m: &Mat<F::Elem>) -> MatrixText {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|x| ScalarText::Text(f.render(x))).collect())
        .collect()
}

fn twist_doc<F: Field>(f: &F, t: &TwistSpec<F::Elem>) -> TwistDoc {
    match t {
        TwistSpec::Identity => TwistDoc::Identity,
        TwistSpec::Conjugator(s) => TwistDoc::Conjugator(matrix_text(f, s)),
        TwistSpec::Images(ms) => TwistDoc::Images(ms.iter().map(|m| matrix_text(f, m)).collect()),
    }
}

/// The document that rebuilds `a`, with every scalar as a string.
pub fn to_document<F: Field>(a: &GradedBiHomAlgebra<F>) -> InputDocument {
    let f = a.field();
    let spec = f.spec();
    let group = a.group().group();
    let to_i64 = |m: &[Vec<i64>]| m.to_vec();
    InputDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        field: if spec.is_rationals() { "Q" } else { "Fp" }.to_string(),
        p: spec.modulus(),
        n: a.n(),
        group: group.orders().to_vec(),
        alpha: Some(to_i64(a.group().alpha().matrix())),
        beta: Some(to_i64(a.group().beta().matrix())),
        components: a
            .given_components()
            .iter()
            .map(|(g, basis)| ComponentDoc {
                degree: g.coords().iter().map(|&c| c as i64).collect(),
                basis: basis.iter().map(|m| matrix_text(f, m)).collect(),
            })
            .collect(),
        psi: Some(twist_doc(f, &a.psi().to_spec(a.n()))),
        phi: Some(twist_doc(f, &a.phi().to_spec(a.n()))),
    }
}

impl AnyAlgebra {
    pub fn to_document(&self) -> InputDocument {
        match self {
            AnyAlgebra::Rational(a) => to_document(a),
            AnyAlgebra::Prime(a) => to_document(a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn pauli_text() -> String {
        let a = catalog::build("pauli_f5").unwrap();
        serde_json::to_string_pretty(&a.to_document()).unwrap()
    }

    #[test]
    fn catalog_documents_round_trip() {
        for e in catalog::entries() {
            let a = catalog::build(e.name).unwrap();
            let doc = a.to_document();
            let text = serde_json::to_string(&doc).unwrap();
            let back = load(&text, false).unwrap();
            assert_eq!(back.document, doc, "{}", e.name);
            assert_eq!(back.algebra.to_document(), doc, "{}", e.name);
        }
    }

    #[test]
    fn unknown_keys_are_rejected_or_warned() {
        let mut v: Value = serde_json::from_str(&pauli_text()).unwrap();
        v["colour"] = Value::from("blue");
        v["components"][2]["note"] = Value::from(1);
        let text = v.to_string();
        let err = load(&text, false).unwrap_err();
        assert_eq!(err.path, "colour");
        let ok = load(&text, true).unwrap();
        assert_eq!(ok.warnings.len(), 2);
        assert!(ok.warnings[1].starts_with("components[2].note"));
    }

    #[test]
    fn errors_carry_their_location() {
        let mut v: Value = serde_json::from_str(&pauli_text()).unwrap();
        v["components"][1]["basis"][0][1][0] = Value::from("1/5");
        let err = load(&v.to_string(), false).unwrap_err();
        assert_eq!(err.path, "components[1].basis[0][1][0]");

        let mut v: Value = serde_json::from_str(&pauli_text()).unwrap();
        v["n"] = Value::from("two");
        assert_eq!(load(&v.to_string(), false).unwrap_err().path, "n");

        let mut v: Value = serde_json::from_str(&pauli_text()).unwrap();
        v["components"][0]["degree"] = Value::from(vec![3, 0]);
        assert_eq!(load(&v.to_string(), false).unwrap_err().path, "components[0].degree");

        let mut v: Value = serde_json::from_str(&pauli_text()).unwrap();
        v["psi"] = serde_json::json!({"conjugator": [["1", "1"], ["1", "1"]]});
        assert_eq!(load(&v.to_string(), false).unwrap_err().path, "psi.conjugator");

        let mut v: Value = serde_json::from_str(&pauli_text()).unwrap();
        v["p"] = Value::from(6);
        assert_eq!(load(&v.to_string(), false).unwrap_err().path, "p");

        assert_eq!(load("{", false).unwrap_err().path, "$");
    }

    #[test]
    fn integers_and_defaults_are_accepted() {
        let text = r#"{
            "schema_version": "1", "field": "Q", "n": 1, "group": [2],
            "components": [{"degree": [0], "basis": [[[1]]]}]
        }"#;
        let l = load(text, false).unwrap();
        match l.algebra {
            AnyAlgebra::Rational(a) => assert!(a.validate().passed()),
            AnyAlgebra::Prime(_) => panic!("expected Q"),
        }
    }
}
