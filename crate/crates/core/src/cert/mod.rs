//! Canonical JSON documents for certificates and the decoding side of the
//! verifier.
//!
//! Every polynomial is stored as its canonical string and every module by
//! its rank and canonical presentation. Decoding re-parses each string and
//! rejects anything that does not print back identically, so a document
//! has exactly one valid spelling.

mod reconstruction;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complexes::Complex;
use crate::fpmod::{Dimension, FPModule, ModuleMap, ShortExactSequence};
use crate::matrix::Matrix;
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::ring::Ring;
use crate::vector::FreeVector;

pub use reconstruction::{encode_reconstruction, verify_reconstruction, ReconstructionDoc, StepDoc};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub characteristic: u32,
    pub vars: Vec<String>,
    pub order: String,
    /// Reduced Gröbner basis of the defining ideal.
    pub ideal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub rank: usize,
    pub rels: Vec<Vec<String>>,
}

/// Row-major matrix; the shape is explicit so empty matrices round-trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesDoc {
    pub left: ModuleDoc,
    pub mid: ModuleDoc,
    pub right: ModuleDoc,
    pub inj: MatrixDoc,
    pub surj: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub lo: i32,
    pub terms: Vec<ModuleDoc>,
    /// `diffs[k]` is `d_{lo+k+1}`.
    pub diffs: Vec<MatrixDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DimDoc {
    Finite(u64),
    Infinite(String),
}

impl From<Dimension> for DimDoc {
    fn from(d: Dimension) -> Self {
        match d {
            Dimension::Finite(n) => DimDoc::Finite(n),
            Dimension::Infinite => DimDoc::Infinite("INFINITE".into()),
        }
    }
}

impl RingDoc {
    pub fn encode(ring: &Ring) -> Self {
        RingDoc {
            characteristic: ring.characteristic(),
            vars: ring.var_names().to_vec(),
            order: ring.order().name().to_string(),
            ideal: ring.ideal().iter().map(|g| g.to_canonical(ring)).collect(),
        }
    }
}

impl ModuleDoc {
    pub fn encode(m: &FPModule) -> Self {
        ModuleDoc { rank: m.rank(), rels: m.canonical_relations() }
    }
}

impl MatrixDoc {
    pub fn encode(ring: &Ring, m: &Matrix) -> Self {
        MatrixDoc { rows: m.rows(), cols: m.cols(), entries: m.to_canonical(ring) }
    }
}

impl SesDoc {
    pub fn encode(ses: &ShortExactSequence) -> Self {
        let ring = ses.mid().ring();
        SesDoc {
            left: ModuleDoc::encode(ses.left()),
            mid: ModuleDoc::encode(ses.mid()),
            right: ModuleDoc::encode(ses.right()),
            inj: MatrixDoc::encode(ring, ses.inj.matrix()),
            surj: MatrixDoc::encode(ring, ses.surj.matrix()),
        }
    }
}

impl ComplexDoc {
    pub fn encode(c: &Complex) -> Self {
        ComplexDoc {
            lo: c.lo(),
            terms: c.terms().iter().map(ModuleDoc::encode).collect(),
            diffs: (c.lo() + 1..=c.hi()).map(|i| MatrixDoc::encode(c.ring(), c.diff(i).matrix())).collect(),
        }
    }
}

/// One failed check, located by a JSON path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub path: String,
    pub code: String,
    pub detail: String,
}

impl Failure {
    pub fn new(path: &str, code: &str, detail: impl Into<String>) -> Self {
        Failure { path: path.to_string(), code: code.to_string(), detail: detail.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code, self.path, self.detail)
    }
}

/// Outcome of verifying a document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: String,
    pub valid: bool,
    pub radius: Option<u32>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn from_failures(kind: &str, radius: Option<u32>, failures: Vec<Failure>) -> Self {
        VerifyReport { kind: kind.to_string(), valid: failures.is_empty(), radius, failures }
    }
}

/// Rebuilds objects from documents, checking canonical spelling.
#[derive(Debug, Clone)]
pub struct Decoder {
    pub ring: Arc<Ring>,
}

pub type Decoded<T> = std::result::Result<T, Failure>;

impl Decoder {
    pub fn new(doc: &RingDoc, path: &str) -> Decoded<Decoder> {
        let order = MonomialOrder::parse(&doc.order)
            .ok_or_else(|| Failure::new(path, "PARSE", format!("unknown monomial order `{}`", doc.order)))?;
        let bare = Ring::bare(doc.characteristic, doc.vars.clone(), order)
            .map_err(|e| Failure::new(path, "PARSE", e.to_string()))?;
        let gens = doc
            .ideal
            .iter()
            .map(|s| Poly::parse(&bare, s).map_err(|e| Failure::new(path, "PARSE", e.to_string())))
            .collect::<Decoded<Vec<_>>>()?;
        let ring = Ring::new(doc.characteristic, doc.vars.clone(), order, gens)
            .map_err(|e| Failure::new(path, "PARSE", e.to_string()))?;
        if RingDoc::encode(&ring) != *doc {
            return Err(Failure::new(path, "CANONICAL", "ring ideal is not a reduced Gröbner basis"));
        }
        Ok(Decoder { ring })
    }

    pub fn poly(&self, s: &str, path: &str) -> Decoded<Poly> {
        let f = Poly::parse(&self.ring, s).map_err(|e| Failure::new(path, "PARSE", e.to_string()))?;
        if f.to_canonical(&self.ring) != s {
            return Err(Failure::new(path, "CANONICAL", format!("`{s}` is not in canonical form")));
        }
        Ok(f)
    }

    pub fn polys(&self, ss: &[String], path: &str) -> Decoded<Vec<Poly>> {
        ss.iter().enumerate().map(|(i, s)| self.poly(s, &format!("{path}[{i}]"))).collect()
    }

    pub fn module(&self, doc: &ModuleDoc, path: &str) -> Decoded<FPModule> {
        let mut rels = Vec::with_capacity(doc.rels.len());
        for (i, r) in doc.rels.iter().enumerate() {
            let p = format!("{path}.rels[{i}]");
            if r.len() != doc.rank {
                return Err(Failure::new(&p, "PARSE", format!("relation has {} entries, rank is {}", r.len(), doc.rank)));
            }
            rels.push(FreeVector::new(self.polys(r, &p)?));
        }
        let m = FPModule::new(self.ring.clone(), doc.rank, &rels).map_err(|e| Failure::new(path, "PARSE", e.to_string()))?;
        if m.canonical_relations() != doc.rels {
            return Err(Failure::new(path, "CANONICAL", "relations are not the canonical presentation"));
        }
        Ok(m)
    }

    pub fn matrix(&self, doc: &MatrixDoc, path: &str) -> Decoded<Matrix> {
        if doc.entries.len() != doc.rows || doc.entries.iter().any(|r| r.len() != doc.cols) {
            return Err(Failure::new(path, "PARSE", "matrix shape does not match its entries"));
        }
        let rows = doc
            .entries
            .iter()
            .enumerate()
            .map(|(i, r)| self.polys(r, &format!("{path}.entries[{i}]")))
            .collect::<Decoded<Vec<_>>>()?;
        let mut m = Matrix::zero(doc.rows, doc.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, f) in r.into_iter().enumerate() {
                m.set(i, j, f);
            }
        }
        Ok(m)
    }

    /// A map between decoded modules; rejects ill-defined or non-normal
    /// matrices.
    pub fn map(&self, source: &FPModule, target: &FPModule, doc: &MatrixDoc, path: &str) -> Decoded<ModuleMap> {
        let m = self.matrix(doc, path)?;
        let f = ModuleMap::new(source, target, m.clone()).map_err(|e| Failure::new(path, "WELL_DEFINED", e.to_string()))?;
        if *f.matrix() != m {
            return Err(Failure::new(path, "CANONICAL", "matrix is not in normal form modulo the target"));
        }
        Ok(f)
    }

    pub fn ses(&self, doc: &SesDoc, path: &str) -> Decoded<ShortExactSequence> {
        let left = self.module(&doc.left, &format!("{path}.left"))?;
        let mid = self.module(&doc.mid, &format!("{path}.mid"))?;
        let right = self.module(&doc.right, &format!("{path}.right"))?;
        let inj = self.map(&left, &mid, &doc.inj, &format!("{path}.inj"))?;
        let surj = self.map(&mid, &right, &doc.surj, &format!("{path}.surj"))?;
        ShortExactSequence::new(inj, surj).map_err(|e| Failure::new(path, "PARSE", e.to_string()))
    }

    pub fn complex(&self, doc: &ComplexDoc, path: &str) -> Decoded<Complex> {
        let terms = doc
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| self.module(t, &format!("{path}.terms[{i}]")))
            .collect::<Decoded<Vec<_>>>()?;
        if terms.is_empty() || doc.diffs.len() + 1 != terms.len() {
            return Err(Failure::new(path, "PARSE", "complex needs one differential between consecutive terms"));
        }
        let diffs = doc
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| self.map(&terms[k + 1], &terms[k], d, &format!("{path}.diffs[{k}]")))
            .collect::<Decoded<Vec<_>>>()?;
        Complex::new(doc.lo, terms, diffs).map_err(|e| Failure::new(path, "D_SQUARED", e.to_string()))
    }
}

/// Path of the first place where two JSON values differ.
pub fn first_difference(a: &Value, b: &Value, path: &str) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, v) in x {
                match y.get(k) {
                    Some(w) => {
                        if let Some(p) = first_difference(v, w, &format!("{path}.{k}")) {
                            return Some(p);
                        }
                    }
                    None => return Some(format!("{path}.{k}")),
                }
            }
            y.keys().find(|k| !x.contains_key(*k)).map(|k| format!("{path}.{k}"))
        }
        (Value::Array(x), Value::Array(y)) => {
            for (i, (v, w)) in x.iter().zip(y).enumerate() {
                if let Some(p) = first_difference(v, w, &format!("{path}[{i}]")) {
                    return Some(p);
                }
            }
            (x.len() != y.len()).then(|| format!("{path}[{}]", x.len().min(y.len())))
        }
        _ => (a != b).then(|| path.to_string()),
    }
}

/// Verifies a certificate document of either kind.
pub fn verify_document(text: &str) -> VerifyReport {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return VerifyReport::from_failures("unknown", None, vec![Failure::new("$", "PARSE", e.to_string())]),
    };
    match value.get("kind").and_then(Value::as_str) {
        Some("reconstruction") => verify_reconstruction(&value),
        Some("ball") => crate::balls::verify_ball_document(&value),
        _ => VerifyReport::from_failures("unknown", None, vec![Failure::new("$.kind", "PARSE", "unknown certificate kind")]),
    }
}

/// Pretty JSON with the struct field order; the canonical on-disk form.
pub fn to_canonical_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::{ball_from_reconstruction, encode_ball};
    use crate::reconstruct::reconstruct;

    fn instance() -> (Arc<Ring>, FPModule, Vec<Poly>) {
        let a = Ring::quotient(5, &["x", "y"], MonomialOrder::Grevlex, &["x^2", "y^2"]).unwrap();
        let m = FPModule::cyclic(a.clone(), &[a.var(0), a.var(1)]);
        let xs = vec![a.var(0), a.var(1)];
        (a, m, xs)
    }

    /// Every matrix entry location in a document.
    fn entry_paths(v: &Value, path: Vec<String>, out: &mut Vec<Vec<String>>) {
        match v {
            Value::Object(o) => {
                for (k, w) in o {
                    let mut p = path.clone();
                    p.push(k.clone());
                    if k == "entries" {
                        if let Value::Array(rows) = w {
                            for (i, row) in rows.iter().enumerate() {
                                for j in 0..row.as_array().map_or(0, Vec::len) {
                                    let mut q = p.clone();
                                    q.push(i.to_string());
                                    q.push(j.to_string());
                                    out.push(q);
                                }
                            }
                        }
                    } else {
                        entry_paths(w, p, out);
                    }
                }
            }
            Value::Array(a) => {
                for (i, w) in a.iter().enumerate() {
                    let mut p = path.clone();
                    p.push(i.to_string());
                    entry_paths(w, p, out);
                }
            }
            _ => {}
        }
    }

    fn at<'a>(v: &'a mut Value, path: &[String]) -> &'a mut Value {
        path.iter().fold(v, |v, k| match v {
            Value::Array(a) => &mut a[k.parse::<usize>().unwrap()],
            Value::Object(o) => o.get_mut(k).unwrap(),
            _ => unreachable!(),
        })
    }

    fn corrupt(v: &Value, path: &[String]) -> Value {
        let mut w = v.clone();
        let slot = at(&mut w, path);
        *slot = Value::String(if slot.as_str() == Some("0") { "1".into() } else { "0".into() });
        w
    }

    #[test]
    fn reconstruction_round_trip() {
        let (_, m, xs) = instance();
        let cert = reconstruct(&m, &xs, 16).unwrap();
        let text = to_canonical_json(&encode_reconstruction(&cert));
        let report = verify_document(&text);
        assert!(report.valid, "{:?}", report.failures);
        let doc: ReconstructionDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(to_canonical_json(&doc), text);
    }

    #[test]
    fn corrupted_coefficients_are_rejected() {
        let (_, m, xs) = instance();
        let cert = reconstruct(&m, &xs, 16).unwrap();
        let value = serde_json::to_value(encode_reconstruction(&cert)).unwrap();
        let mut paths = Vec::new();
        entry_paths(&value, Vec::new(), &mut paths);
        assert!(paths.len() > 20);
        for p in paths.iter().step_by(paths.len() / 20) {
            let bad = corrupt(&value, p);
            let report = verify_document(&bad.to_string());
            assert!(!report.valid, "corruption at {p:?} accepted");
        }
    }

    #[test]
    fn ball_documents_round_trip_and_reject_corruption() {
        let (_, m, xs) = instance();
        let cert = reconstruct(&m, &xs, 16).unwrap();
        let ball = ball_from_reconstruction(&cert).unwrap();
        let value = serde_json::to_value(encode_ball(&ball)).unwrap();
        let report = verify_document(&value.to_string());
        assert!(report.valid, "{:?}", report.failures);
        assert_eq!(report.radius, Some(3));
        let mut paths = Vec::new();
        entry_paths(&value, Vec::new(), &mut paths);
        for p in paths.iter().step_by((paths.len() / 10).max(1)) {
            assert!(!verify_document(&corrupt(&value, p).to_string()).valid, "corruption at {p:?} accepted");
        }
    }

    #[test]
    fn non_canonical_spelling_is_rejected() {
        let (a, m, xs) = instance();
        let cert = reconstruct(&m, &xs, 16).unwrap();
        let mut value = serde_json::to_value(encode_reconstruction(&cert)).unwrap();
        let x = a.var(0).to_canonical(&a);
        value["xs"][0] = Value::String(format!("{x}+0"));
        assert!(!verify_document(&value.to_string()).valid);
        assert!(!verify_document("{\"kind\":\"other\"}").valid);
        assert!(!verify_document("not json").valid);
    }
}
