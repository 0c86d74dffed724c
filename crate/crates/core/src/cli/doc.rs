//! Structure documents: load, validate and save.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Number, Value};

use crate::config::Limits;
use crate::constructions::ConstructionError;
use crate::heap::{Element, FiniteHeap, HeapError, HeapMorphism, HeapSource};
use crate::modules::{ModuleError, TrussModule};
use crate::truss::{FiniteTruss, TrussError};
use crate::ztruss::{ZError, ZTrussParams};

/// A validation failure: the violated axiom, its witness and a message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub axiom: String,
    pub witness: Option<Vec<Element>>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocError {
    Io(String),
    /// A document of the wrong shape.
    Parse(String),
    Validation(Finding),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Io(m) => f.write_str(m),
            DocError::Parse(m) => write!(f, "parse error: {m}"),
            DocError::Validation(v) => f.write_str(&v.message),
        }
    }
}

fn finding(axiom: &str, witness: Option<&[Element]>, message: String) -> Finding {
    Finding {
        axiom: axiom.to_string(),
        witness: witness.map(<[_]>::to_vec),
        message,
    }
}

impl From<&HeapError> for Finding {
    fn from(e: &HeapError) -> Self {
        let m = e.to_string();
        match e {
            HeapError::EmptyCarrier => finding("EmptyCarrier", None, m),
            HeapError::CarrierTooLarge { .. } => finding("CarrierTooLarge", None, m),
            HeapError::MalformedTable(_) => finding("MalformedTable", None, m),
            HeapError::NotAGroup { witness, .. } => finding("NotAGroup", Some(witness), m),
            HeapError::NotMalcev { witness } => finding("NotMalcev", Some(witness), m),
            HeapError::NotAbelian { witness } => finding("NotAbelian", Some(witness), m),
            HeapError::Inconsistent { witness } => finding("Inconsistent", Some(witness), m),
            HeapError::IndexOutOfRange { index, .. } => finding("IndexOutOfRange", Some(&[*index]), m),
            HeapError::EvenLength(_) => finding("EvenLength", None, m),
            HeapError::EmptyGenerator => finding("EmptyGenerator", None, m),
            HeapError::NotSubHeap { witness } => finding("NotSubHeap", Some(witness), m),
            HeapError::NotInImage(x) => finding("NotInImage", Some(&[*x]), m),
            HeapError::LengthMismatch { .. } => finding("LengthMismatch", None, m),
        }
    }
}

impl From<&TrussError> for Finding {
    fn from(e: &TrussError) -> Self {
        let m = e.to_string();
        match e {
            TrussError::Heap(h) => h.into(),
            TrussError::MalformedTable(_) => finding("MalformedTable", None, m),
            TrussError::NotAssociative { witness } => finding("NotAssociative", Some(witness), m),
            TrussError::NotLeftDistributive { witness } => finding("NotLeftDistributive", Some(witness), m),
            TrussError::NotRightDistributive { witness } => finding("NotRightDistributive", Some(witness), m),
            TrussError::NotParagon { witness, .. } => finding("NotParagon", Some(witness), m),
            TrussError::NotCentral(x) => finding("NotCentral", Some(&[*x]), m),
            TrussError::CarrierTooLarge { .. } => finding("CarrierTooLarge", None, m),
        }
    }
}

impl From<&ModuleError> for Finding {
    fn from(e: &ModuleError) -> Self {
        let m = e.to_string();
        match e {
            ModuleError::Heap(h) => h.into(),
            ModuleError::Truss(t) => t.into(),
            ModuleError::MalformedTable { .. } => finding("MalformedTable", None, m),
            ModuleError::NotAssociativeAction { witness } => finding("NotAssociativeAction", Some(witness), m),
            ModuleError::NotHeapDistributive { witness } => finding("NotHeapDistributive", Some(witness), m),
            ModuleError::NotTrussDistributive { witness } => finding("NotTrussDistributive", Some(witness), m),
            ModuleError::NotInducedSubmodule { witness, .. } => finding("NotInducedSubmodule", Some(witness), m),
            ModuleError::NotBimodule { witness } => finding("NotBimodule", Some(witness), m),
            ModuleError::DifferentTruss => finding("DifferentTruss", None, m),
            ModuleError::NotIdempotent(x) => finding("NotIdempotent", Some(&[*x]), m),
            ModuleError::NotEndomorphism => finding("NotEndomorphism", None, m),
            ModuleError::CompositionLawViolated(x) => finding("CompositionLawViolated", Some(&[*x]), m),
            ModuleError::NotClosed => finding("NotClosed", None, m),
        }
    }
}

impl From<&ZError> for Finding {
    fn from(e: &ZError) -> Self {
        let m = e.to_string();
        match e {
            ZError::ConstraintViolated { .. } => finding("ConstraintViolated", None, m),
            ZError::NotIdempotentTraceOne => finding("NotIdempotentTraceOne", None, m),
            ZError::NotCommutative => finding("NotCommutative", None, m),
            ZError::ZeroModulus => finding("ZeroModulus", None, m),
            ZError::Heap(h) => h.into(),
            ZError::Truss(t) => t.into(),
        }
    }
}

impl From<&ConstructionError> for Finding {
    fn from(e: &ConstructionError) -> Self {
        let m = e.to_string();
        match e {
            ConstructionError::Heap(h) => h.into(),
            ConstructionError::Truss(t) => t.into(),
            ConstructionError::NotIdempotent(x) => finding("NotIdempotent", Some(&[*x]), m),
            ConstructionError::NotEndomorphism(w) => finding("NotEndomorphism", Some(w), m),
            ConstructionError::NotAdditive => finding("NotAdditive", None, m),
            ConstructionError::NotInKernel(x) => finding("NotInKernel", Some(&[*x]), m),
            ConstructionError::NotIdempotentMatrix(_) => finding("NotIdempotentMatrix", None, m),
            ConstructionError::BadDimension(_) => finding("BadDimension", None, m),
            ConstructionError::NotClosed(_) => finding("NotClosed", None, m),
            ConstructionError::ZeroModulus => finding("ZeroModulus", None, m),
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for DocError {
            fn from(e: $t) -> Self {
                DocError::Validation(Finding::from(&e))
            }
        }
    )*};
}
validation_from!(HeapError, TrussError, ModuleError, ZError, ConstructionError);

/// A morphism document: a map between two heaps, not yet checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDoc {
    pub domain: FiniteHeap,
    pub codomain: FiniteHeap,
    pub map: HeapMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Heap(FiniteHeap),
    Truss(FiniteTruss),
    Module(TrussModule),
    Morphism(MorphismDoc),
    ZParams(ZTrussParams),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Heap(_) => "heap",
            Document::Truss(_) => "truss",
            Document::Module(_) => "module",
            Document::Morphism(_) => "morphism",
            Document::ZParams(_) => "zparams",
        }
    }
}

type Table2 = Vec<Vec<Element>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HeapFields {
    kind: String,
    carrier: usize,
    cyclic: Option<Vec<usize>>,
    add_table: Option<Table2>,
    ternary_table: Option<Vec<Vec<Vec<Element>>>>,
    mul: Option<Table2>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFields {
    #[allow(dead_code)]
    kind: String,
    truss: Value,
    heap: Value,
    action: Table2,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFields {
    #[allow(dead_code)]
    kind: String,
    domain: Value,
    codomain: Value,
    image: Vec<Element>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZParamsFields {
    #[allow(dead_code)]
    kind: String,
    variant: String,
    a: Option<Number>,
    b: Option<Number>,
    c: Option<Number>,
}

fn parse_err(e: impl std::fmt::Display) -> DocError {
    DocError::Parse(e.to_string())
}

pub fn load(path: &Path, limits: &Limits) -> Result<Document, DocError> {
    let text = std::fs::read_to_string(path).map_err(|e| DocError::Io(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse(&text, &base, limits)
}

/// Parses a document; referenced sub-documents are resolved against `base`.
pub fn parse(text: &str, base: &Path, limits: &Limits) -> Result<Document, DocError> {
    let value: Value = serde_json::from_str(text).map_err(parse_err)?;
    from_value(value, base, limits)
}

fn from_value(value: Value, base: &Path, limits: &Limits) -> Result<Document, DocError> {
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| DocError::Parse("missing string field `kind`".into()))?
        .to_string();
    match kind.as_str() {
        "heap" | "truss" => {
            let f: HeapFields = serde_json::from_value(value).map_err(parse_err)?;
            heap_or_truss(f, limits)
        }
        "module" => {
            let f: ModuleFields = serde_json::from_value(value).map_err(parse_err)?;
            let truss = match sub_document(f.truss, base, limits)? {
                Document::Truss(t) => t,
                other => return Err(DocError::Parse(format!("`truss` is a {} document", other.kind()))),
            };
            let heap = expect_heap(sub_document(f.heap, base, limits)?)?;
            Ok(Document::Module(TrussModule::build(&truss, &heap, &f.action)?))
        }
        "morphism" => {
            let f: MorphismFields = serde_json::from_value(value).map_err(parse_err)?;
            let domain = expect_heap(sub_document(f.domain, base, limits)?)?;
            let codomain = expect_heap(sub_document(f.codomain, base, limits)?)?;
            if f.image.len() != domain.size() {
                return Err(HeapError::LengthMismatch {
                    expected: domain.size(),
                    got: f.image.len(),
                }
                .into());
            }
            for &y in &f.image {
                codomain.check_index(y)?;
            }
            Ok(Document::Morphism(MorphismDoc {
                domain,
                codomain,
                map: HeapMorphism::new(f.image),
            }))
        }
        "zparams" => {
            let f: ZParamsFields = serde_json::from_value(value).map_err(parse_err)?;
            let big = |n: Option<Number>, name: &str| -> Result<BigInt, DocError> {
                let n = n.ok_or_else(|| DocError::Parse(format!("missing field `{name}`")))?;
                BigInt::from_str(&n.to_string()).map_err(|_| DocError::Parse(format!("`{name}` is not an integer")))
            };
            let p = match f.variant.as_str() {
                "commutative" => ZTrussParams::commutative(big(f.a, "a")?, big(f.b, "b")?, big(f.c, "c")?)?,
                "left" => ZTrussParams::LeftProjection,
                "right" => ZTrussParams::RightProjection,
                v => return Err(DocError::Parse(format!("unknown variant `{v}`"))),
            };
            Ok(Document::ZParams(p))
        }
        k => Err(DocError::Parse(format!("unknown kind `{k}`"))),
    }
}

fn expect_heap(doc: Document) -> Result<FiniteHeap, DocError> {
    match doc {
        Document::Heap(h) => Ok(h),
        Document::Truss(t) => Ok(t.heap().clone()),
        other => Err(DocError::Parse(format!("expected a heap, found a {} document", other.kind()))),
    }
}

fn sub_document(v: Value, base: &Path, limits: &Limits) -> Result<Document, DocError> {
    match v {
        Value::String(rel) => {
            let path: PathBuf = base.join(rel);
            load(&path, limits)
        }
        Value::Object(_) => from_value(v, base, limits),
        _ => Err(DocError::Parse("sub-document must be an object or a path".into())),
    }
}

fn heap_or_truss(f: HeapFields, limits: &Limits) -> Result<Document, DocError> {
    let sources = [f.cyclic.is_some(), f.add_table.is_some(), f.ternary_table.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(DocError::Parse("exactly one of `cyclic`, `add_table`, `ternary_table` is required".into()));
    }
    let source = if let Some(c) = f.cyclic {
        HeapSource::Cyclic(c)
    } else if let Some(t) = f.add_table {
        HeapSource::GroupTable(t)
    } else {
        HeapSource::Ternary(f.ternary_table.expect("one source present"))
    };
    let heap = FiniteHeap::build(&source, limits)?;
    if heap.size() != f.carrier {
        return Err(DocError::Parse(format!("carrier is {} but the table describes {} elements", f.carrier, heap.size())));
    }
    match (f.kind.as_str(), f.mul) {
        ("heap", None) => Ok(Document::Heap(heap)),
        ("heap", Some(_)) => Err(DocError::Parse("a heap document has no `mul`".into())),
        (_, Some(mul)) => Ok(Document::Truss(FiniteTruss::build(heap, &mul)?)),
        (_, None) => Err(DocError::Parse("a truss document needs `mul`".into())),
    }
}

fn heap_fields(h: &FiniteHeap, kind: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    m.insert("carrier".into(), json!(h.size()));
    match h.factor_shape() {
        Some(shape) => m.insert("cyclic".into(), json!(shape)),
        None => m.insert("add_table".into(), json!(h.add_table())),
    };
    m
}

pub fn heap_value(h: &FiniteHeap) -> Value {
    Value::Object(heap_fields(h, "heap"))
}

pub fn truss_value(t: &FiniteTruss) -> Value {
    let mut m = heap_fields(t.heap(), "truss");
    m.insert("mul".into(), json!(t.mul_table()));
    Value::Object(m)
}

pub fn module_value(m: &TrussModule) -> Value {
    json!({
        "kind": "module",
        "truss": truss_value(m.truss()),
        "heap": heap_value(m.heap()),
        "action": m.action_table(),
    })
}

pub fn big_value(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn zparams_value(p: &ZTrussParams) -> Value {
    match p {
        ZTrussParams::Commutative { a, b, c } => json!({
            "kind": "zparams",
            "variant": "commutative",
            "a": big_value(a),
            "b": big_value(b),
            "c": big_value(c),
        }),
        ZTrussParams::LeftProjection => json!({"kind": "zparams", "variant": "left"}),
        ZTrussParams::RightProjection => json!({"kind": "zparams", "variant": "right"}),
    }
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Heap(h) => heap_value(h),
        Document::Truss(t) => truss_value(t),
        Document::Module(m) => module_value(m),
        Document::Morphism(d) => json!({
            "kind": "morphism",
            "domain": heap_value(&d.domain),
            "codomain": heap_value(&d.codomain),
            "image": d.map.image,
        }),
        Document::ZParams(p) => zparams_value(p),
    }
}

/// Compact JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn save(doc: &Document) -> String {
    to_canonical_string(&to_value(doc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_str(s: &str) -> Result<Document, DocError> {
        parse(s, Path::new("."), &Limits::default())
    }

    #[test]
    fn heap_documents() {
        let d = parse_str(r#"{"kind":"heap","carrier":4,"cyclic":[4]}"#).unwrap();
        assert_eq!(d, Document::Heap(FiniteHeap::cyclic(&[4]).unwrap()));
        assert_eq!(save(&d), "{\"carrier\":4,\"cyclic\":[4],\"kind\":\"heap\"}\n");
        assert!(matches!(parse_str(r#"{"kind":"heap","carrier":3,"cyclic":[4]}"#), Err(DocError::Parse(_))));
        assert!(matches!(parse_str(r#"{"kind":"heap","carrier":2}"#), Err(DocError::Parse(_))));
        let bad = parse_str(r#"{"kind":"heap","carrier":2,"add_table":[[0,1],[1,1]]}"#);
        assert!(matches!(bad, Err(DocError::Validation(_))));
    }

    #[test]
    fn corrupted_truss_names_the_axiom() {
        let h = FiniteHeap::cyclic(&[4]).unwrap();
        let t = FiniteTruss::from_fn(h, |x, y| x * y % 4).unwrap();
        let mut v = truss_value(&t);
        v["mul"][2][3] = json!(1);
        match parse_str(&v.to_string()) {
            Err(DocError::Validation(f)) => {
                assert!(["NotAssociative", "NotLeftDistributive", "NotRightDistributive"].contains(&f.axiom.as_str()));
                assert!(f.witness.is_some());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zparams_documents() {
        let d = parse_str(r#"{"kind":"zparams","variant":"commutative","a":6,"b":3,"c":1}"#).unwrap();
        assert_eq!(d, Document::ZParams(ZTrussParams::commutative(6, 3, 1).unwrap()));
        let big = r#"{"a":123456789012345678901234567890,"b":0,"c":0,"kind":"zparams","variant":"commutative"}"#;
        let d = parse_str(big).unwrap();
        assert_eq!(save(&d).trim_end(), big);
        assert!(matches!(
            parse_str(r#"{"kind":"zparams","variant":"commutative","a":6,"b":3,"c":2}"#),
            Err(DocError::Validation(_))
        ));
        assert_eq!(save(&parse_str(r#"{"kind":"zparams","variant":"left"}"#).unwrap()), "{\"kind\":\"zparams\",\"variant\":\"left\"}\n");
    }

    #[test]
    fn module_round_trip_and_references() {
        let dir = tempfile::tempdir().unwrap();
        let h = FiniteHeap::cyclic(&[2]).unwrap();
        let t = FiniteTruss::from_fn(h.clone(), |x, y| x * y).unwrap();
        std::fs::write(dir.path().join("t.json"), to_canonical_string(&truss_value(&t))).unwrap();
        let doc = r#"{"kind":"module","truss":"t.json","heap":{"kind":"heap","carrier":2,"cyclic":[2]},"action":[[0,0],[0,1]]}"#;
        std::fs::write(dir.path().join("m.json"), doc).unwrap();
        let m = load(&dir.path().join("m.json"), &Limits::default()).unwrap();
        assert_eq!(m, Document::Module(TrussModule::regular(&t)));
        let saved = save(&m);
        assert_eq!(save(&parse_str(&saved).unwrap()), saved);
    }
}
