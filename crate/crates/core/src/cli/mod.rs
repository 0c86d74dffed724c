//! The `truss` command-line tool.
//!
//! Exit status: 0 on success, 2 when a structure fails validation, 3 on a
//! usage error.

pub mod doc;
pub mod render;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::config::Limits;
use crate::constructions::{
    alpha_truss, constant_truss, end_at, endo_pair_truss, endomorphism_truss, mapping_truss, matrix_truss, product_truss,
    semidirect_truss, Variant,
};
use crate::heap::{Element, FiniteHeap, HeapMorphism, SubHeap};
use crate::modules::hom_set;
use crate::truss::{FiniteTruss, SubstructureKind};
use crate::ztruss::{
    apply_word, canonicalize, classify_special, ring_normal_form, type3_structures, unital_normal_form, zn_enumerate_all,
    zn_params_of, AutoSign, ZAuto, ZTrussParams,
};

use doc::{DocError, Document, Finding};
use render::{render_module, render_truss};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "truss", version, about = "Heaps, trusses and modules over trusses")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on enumerated carriers.
    #[arg(long, global = true)]
    max_carrier: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    Subheaps,
    Paragons,
    Ideals,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructName {
    Constant,
    Alpha,
    EndoPair,
    EndoTruss,
    EndAt,
    Semidirect,
    Product,
    Mapping,
    Matrix,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a structure file.
    Verify { file: PathBuf },
    /// List sub-heaps, paragons or ideals.
    Enumerate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EnumKind::Subheaps)]
        kind: EnumKind,
    },
    /// Canonical form and special elements of a truss on the integers.
    ClassifyZ {
        /// A zparams document, used when `--params` is absent.
        file: Option<PathBuf>,
        /// `a,b,c`, `left` or `right`.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
    /// Transport integer truss parameters along automorphisms `n ↦ k ± n`.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// `k,+` or `k,-`; repeated automorphisms apply left to right.
        #[arg(long = "auto", allow_hyphen_values = true)]
        autos: Vec<String>,
    },
    /// Distinct type-3 structures `(b, c)` for a given `a`.
    Type3 {
        #[arg(long)]
        a: u64,
    },
    /// Quotient a heap, truss or module by a sub-heap.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        subheap: String,
    },
    /// Induced action at a basepoint.
    Induce {
        file: PathBuf,
        #[arg(long)]
        e: Element,
    },
    /// The truss of all heap endomorphisms.
    Endotruss {
        #[arg(long)]
        carrier: String,
    },
    /// Build a named construction and emit it as a truss document.
    Construct {
        name: ConstructName,
        #[arg(long)]
        carrier: Option<String>,
        #[arg(long)]
        e: Option<Element>,
        /// Images of the map, comma separated.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        a: Option<Element>,
        #[arg(long, value_enum, default_value_t = VariantArg::First)]
        variant: VariantArg,
        #[arg(long)]
        truss: Option<PathBuf>,
        #[arg(long)]
        other: Option<PathBuf>,
        #[arg(long)]
        x_size: Option<usize>,
        #[arg(long)]
        modulus: Option<u64>,
        /// Row-major idempotent matrix entries.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// All truss products on `ℤₙ`.
    ZnEnumerate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Module morphisms between two module files.
    Homset { m: PathBuf, n: PathBuf },
    /// Full report on a structure file.
    Report {
        file: PathBuf,
        #[arg(long)]
        subheap: Option<String>,
        /// Comma-separated element labels for the table.
        #[arg(long)]
        labels: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Enumerate { .. } => "enumerate",
            Command::ClassifyZ { .. } => "classify-z",
            Command::Orbit { .. } => "orbit",
            Command::Type3 { .. } => "type3",
            Command::Quotient { .. } => "quotient",
            Command::Induce { .. } => "induce",
            Command::Endotruss { .. } => "endotruss",
            Command::Construct { .. } => "construct",
            Command::ZnEnumerate { .. } => "zn-enumerate",
            Command::Homset { .. } => "homset",
            Command::Report { .. } => "report",
        }
    }
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Usage(String),
    Invalid(Finding),
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Io(m) => Failure::Usage(m),
            DocError::Parse(m) => Failure::Invalid(Finding {
                axiom: "ParseError".into(),
                witness: None,
                message: m,
            }),
            DocError::Validation(f) => Failure::Invalid(f),
        }
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Invalid(Finding::from(&e))
            }
        }
    )*};
}
invalid_from!(
    crate::heap::HeapError,
    crate::truss::TrussError,
    crate::modules::ModuleError,
    crate::ztruss::ZError,
    crate::constructions::ConstructionError
);

impl From<render::RenderError> for Failure {
    fn from(e: render::RenderError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Report {
    text: String,
    json: Map<String, Value>,
}

impl Report {
    fn new() -> Self {
        Report {
            text: String::new(),
            json: Map::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    fn field(&mut self, k: &str, v: Value) -> &mut Self {
        self.json.insert(k.to_string(), v);
        self
    }
}

type CmdResult = Result<Report, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                },
            };
        }
    };
    let mut limits = Limits::default();
    if let Some(n) = cli.max_carrier {
        limits = limits.with_enumeration_cap(n).with_max_carrier(n.max(limits.max_carrier));
    }
    let name = cli.command.name();
    let result = dispatch(cli.command, &limits);
    let json_mode = cli.format == Format::Json;
    match result {
        Ok(report) => {
            let stdout = if json_mode {
                let mut m = report.json;
                m.insert("command".into(), json!(name));
                m.insert("status".into(), json!("ok"));
                doc::to_canonical_string(&Value::Object(m))
            } else {
                report.text
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: EXIT_OK,
            }
        }
        Err(Failure::Invalid(f)) => {
            let stdout = if json_mode {
                doc::to_canonical_string(&json!({
                    "command": name,
                    "status": "invalid",
                    "axiom": f.axiom,
                    "witness": f.witness,
                    "message": f.message,
                }))
            } else {
                let w = f.witness.as_deref().map(|w| format!(" at {}", tuple(w))).unwrap_or_default();
                format!("invalid: {}{w}; {}\n", f.axiom, f.message)
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: EXIT_INVALID,
            }
        }
        Err(Failure::Usage(m)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
            code: EXIT_USAGE,
        },
    }
}

fn dispatch(cmd: Command, limits: &Limits) -> CmdResult {
    match cmd {
        Command::Verify { file } => verify(&load(&file, limits)?),
        Command::Enumerate { file, kind } => enumerate(&load(&file, limits)?, kind, limits),
        Command::ClassifyZ { file, params } => {
            let p = match (params, file) {
                (Some(s), _) => parse_params(&s)?,
                (None, Some(f)) => match load(&f, limits)? {
                    Document::ZParams(p) => p,
                    other => return Err(Failure::Usage(format!("expected a zparams document, found {}", other.kind()))),
                },
                (None, None) => return Err(Failure::Usage("give --params or a zparams file".into())),
            };
            classify_z(&p)
        }
        Command::Orbit { params, autos } => {
            let p = parse_params(&params)?;
            let word = autos.iter().map(|s| parse_auto(s)).collect::<Result<Vec<_>, _>>()?;
            let image = apply_word(&p, &word)?;
            let mut r = Report::new();
            r.line(format!("image: {image}"));
            r.field("image", doc::zparams_value(&image));
            r.field("word", json!(word.iter().map(ToString::to_string).collect::<Vec<_>>()));
            Ok(r)
        }
        Command::Type3 { a } => {
            let found = type3_structures(a);
            let mut r = Report::new();
            if found.is_empty() {
                r.line("none");
            } else {
                r.line(found.iter().map(|(b, c)| format!("({b},{c})")).collect::<Vec<_>>().join(" "));
            }
            r.field("a", json!(a)).field("structures", json!(found));
            Ok(r)
        }
        Command::Quotient { file, subheap } => quotient(&load(&file, limits)?, &parse_list(&subheap)?),
        Command::Induce { file, e } => match load(&file, limits)? {
            Document::Module(m) => {
                let ind = m.induced_action(e)?;
                let mut r = Report::new();
                r.text = render_module(&ind, None, None)?;
                r.field("module", doc::module_value(&ind));
                Ok(r)
            }
            other => Err(Failure::Usage(format!("induce needs a module document, found {}", other.kind()))),
        },
        Command::Endotruss { carrier } => {
            let heap = parse_carrier(&carrier, limits)?;
            let (t, labels) = endomorphism_truss(&heap, limits)?;
            let names: Vec<String> = labels.iter().map(ToString::to_string).collect();
            let mut r = Report::new();
            r.text = render_truss(&t, Some(&names))?;
            r.field("truss", doc::truss_value(&t)).field("labels", json!(names));
            Ok(r)
        }
        Command::Construct {
            name,
            carrier,
            e,
            alpha,
            a,
            variant,
            truss,
            other,
            x_size,
            modulus,
            matrix,
        } => {
            let heap = || -> Result<FiniteHeap, Failure> {
                parse_carrier(carrier.as_deref().ok_or_else(|| Failure::Usage("--carrier is required".into()))?, limits)
            };
            let need = |v: Option<Element>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("--{flag} is required")));
            let map = || -> Result<HeapMorphism, Failure> {
                Ok(HeapMorphism::new(parse_list(
                    alpha.as_deref().ok_or_else(|| Failure::Usage("--alpha is required".into()))?,
                )?))
            };
            let load_truss = |p: &Option<PathBuf>, flag: &str| -> Result<FiniteTruss, Failure> {
                let p = p.as_ref().ok_or_else(|| Failure::Usage(format!("--{flag} is required")))?;
                match load(p, limits)? {
                    Document::Truss(t) => Ok(t),
                    d => Err(Failure::Usage(format!("--{flag} must be a truss document, found {}", d.kind()))),
                }
            };
            let variant = match variant {
                VariantArg::First => Variant::First,
                VariantArg::Second => Variant::Second,
            };
            let t = match name {
                ConstructName::Constant => constant_truss(&heap()?, need(e, "e")?)?,
                ConstructName::Alpha => {
                    let h = heap()?;
                    alpha_truss(&h, &checked_map(&h, map()?)?, variant)?
                }
                ConstructName::EndoPair => {
                    let h = heap()?;
                    endo_pair_truss(&h, &checked_map(&h, map()?)?, need(a, "a")?, variant)?
                }
                ConstructName::EndoTruss => endomorphism_truss(&heap()?, limits)?.0,
                ConstructName::EndAt => end_at(&heap()?, need(e, "e")?, limits)?.0,
                ConstructName::Semidirect => semidirect_truss(&heap()?, need(e, "e")?, limits)?.truss,
                ConstructName::Product => product_truss(&load_truss(&truss, "truss")?, &load_truss(&other, "other")?)?,
                ConstructName::Mapping => mapping_truss(&load_truss(&truss, "truss")?, need(x_size, "x-size")?, limits)?,
                ConstructName::Matrix => {
                    let m = modulus.ok_or_else(|| Failure::Usage("--modulus is required".into()))?;
                    let entries = parse_list(matrix.as_deref().ok_or_else(|| Failure::Usage("--matrix is required".into()))?)?;
                    let k = (1..=entries.len()).find(|k| k * k == entries.len()).ok_or_else(|| {
                        Failure::Usage("--matrix needs a square number of entries".into())
                    })?;
                    let rows: Vec<Vec<u64>> = entries.chunks(k).map(|r| r.iter().map(|&v| v as u64).collect()).collect();
                    matrix_truss(m, k, &rows, limits)?
                }
            };
            let mut r = Report::new();
            let v = doc::truss_value(&t);
            r.text = doc::to_canonical_string(&v);
            r.field("truss", v);
            Ok(r)
        }
        Command::ZnEnumerate { n, out } => {
            let all = zn_enumerate_all(n, limits)?;
            let params: Vec<Value> = all.iter().map(|t| describe_zn(t)).collect();
            let document = json!({
                "kind": "zn-enumeration",
                "n": n,
                "params": params,
                "trusses": all.iter().map(doc::truss_value).collect::<Vec<_>>(),
            });
            let mut r = Report::new();
            r.field("n", json!(n)).field("count", json!(all.len()));
            match out {
                Some(path) => {
                    std::fs::write(&path, doc::to_canonical_string(&document))
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    r.line(format!("{} truss structures on Z_{n} written to {}", all.len(), path.display()));
                }
                None => {
                    r.text = doc::to_canonical_string(&document);
                    r.field("document", document);
                }
            }
            Ok(r)
        }
        Command::Homset { m, n } => {
            let (dm, dn) = (load(&m, limits)?, load(&n, limits)?);
            let (Document::Module(mm), Document::Module(nn)) = (&dm, &dn) else {
                return Err(Failure::Usage("homset needs two module documents".into()));
            };
            let homs = hom_set(mm, nn, limits)?;
            let mut r = Report::new();
            r.line(format!("maps: {}", homs.len()));
            for f in &homs.maps {
                r.line(tuple(&f.image));
            }
            r.field("maps", json!(homs.maps.iter().map(|f| &f.image).collect::<Vec<_>>()))
                .field("heap", doc::heap_value(&homs.heap));
            Ok(r)
        }
        Command::Report { file, subheap, labels } => {
            let d = load(&file, limits)?;
            let labels: Option<Vec<String>> = labels.map(|l| l.split(',').map(|s| s.trim().to_string()).collect());
            let sub = subheap.map(|s| parse_list(&s)).transpose()?;
            report(&d, sub.as_deref(), labels.as_deref(), limits)
        }
    }
}

fn load(path: &Path, limits: &Limits) -> Result<Document, Failure> {
    Ok(doc::load(path, limits)?)
}

fn checked_map(h: &FiniteHeap, f: HeapMorphism) -> Result<HeapMorphism, Failure> {
    if f.image.len() != h.size() {
        return Err(Failure::Usage(format!("--alpha needs {} images", h.size())));
    }
    for &y in &f.image {
        h.check_index(y)?;
    }
    Ok(f)
}

fn tuple(xs: &[Element]) -> String {
    format!("({})", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn set(xs: &[Element]) -> String {
    format!("{{{}}}", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn opt(x: Option<Element>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn list_or_none(xs: &[Element]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_list(s: &str) -> Result<Vec<Element>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<Element>().map_err(|_| Failure::Usage(format!("`{t}` is not an element index"))))
        .collect()
}

fn parse_carrier(s: &str, limits: &Limits) -> Result<FiniteHeap, Failure> {
    let body = s.strip_prefix("cyclic:").unwrap_or(s);
    let orders = body
        .split('x')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad carrier `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteHeap::build(&crate::heap::HeapSource::Cyclic(orders), limits)?)
}

fn parse_params(s: &str) -> Result<ZTrussParams, Failure> {
    match s.trim() {
        "left" => return Ok(ZTrussParams::LeftProjection),
        "right" => return Ok(ZTrussParams::RightProjection),
        _ => {}
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(Failure::Usage(format!("expected a,b,c, got `{s}`")));
    };
    let big = |t: &str| BigInt::from_str(t).map_err(|_| Failure::Usage(format!("`{t}` is not an integer")));
    Ok(ZTrussParams::commutative(big(a)?, big(b)?, big(c)?)?)
}

fn parse_auto(s: &str) -> Result<ZAuto, Failure> {
    let bad = || Failure::Usage(format!("expected k,+ or k,-, got `{s}`"));
    let (k, sign) = s.rsplit_once(',').ok_or_else(bad)?;
    let k = BigInt::from_str(k.trim()).map_err(|_| bad())?;
    let sign = match sign.trim() {
        "+" | "plus" => AutoSign::Plus,
        "-" | "minus" => AutoSign::Minus,
        _ => return Err(bad()),
    };
    Ok(ZAuto::new(k, sign))
}

fn describe_zn(t: &FiniteTruss) -> Value {
    let n = t.size();
    if n > 1 && t.elements().all(|x| t.elements().all(|y| t.mul(x, y) == x)) && !t.is_commutative() {
        return json!("left");
    }
    if n > 1 && t.elements().all(|x| t.elements().all(|y| t.mul(x, y) == y)) && !t.is_commutative() {
        return json!("right");
    }
    let (a, b, c) = zn_params_of(t);
    json!([a, b, c])
}

fn verify(d: &Document) -> CmdResult {
    let mut r = Report::new();
    r.field("kind", json!(d.kind()));
    match d {
        Document::Heap(h) => {
            r.line(format!("heap: valid; size: {}", h.size()));
            r.field("size", json!(h.size()));
        }
        Document::Truss(t) => {
            let s = t.special_elements();
            r.line(format!(
                "truss: valid; identity: {}; absorber: {}; right-braceable: {}",
                opt(s.identity),
                opt(s.absorber),
                yes(s.right_braceable())
            ));
            r.field("identity", json!(s.identity))
                .field("absorber", json!(s.absorber))
                .field("right_braceable", json!(s.right_braceable()))
                .field("left_braceable", json!(s.left_braceable()));
        }
        Document::Module(m) => {
            let abs = m.absorbers();
            r.line(format!("module: valid; normalised: {}; absorbers: {}", yes(m.is_normalised()), list_or_none(&abs)));
            r.field("normalised", json!(m.is_normalised())).field("absorbers", json!(abs));
        }
        Document::Morphism(md) => {
            let report = md.map.check(&md.domain, &md.codomain)?;
            if let Some(w) = report.witness {
                return Err(Failure::Invalid(Finding {
                    axiom: "NotMorphism".into(),
                    witness: Some(w.to_vec()),
                    message: format!("bracket not preserved at {}", tuple(&w)),
                }));
            }
            r.line("morphism: valid");
        }
        Document::ZParams(p) => {
            r.line(format!("zparams: valid; {p}"));
            r.field("params", doc::zparams_value(p));
        }
    }
    Ok(r)
}

fn enumerate(d: &Document, kind: EnumKind, limits: &Limits) -> CmdResult {
    let subs: Vec<SubHeap> = match (d, kind) {
        (Document::Heap(h), EnumKind::Subheaps) => {
            crate::truss::ensure_cap(h.size(), limits.enumeration_cap)?;
            h.subheaps()
        }
        (Document::Truss(t), k) => t.enumerate_substructures(
            match k {
                EnumKind::Subheaps => SubstructureKind::SubHeaps,
                EnumKind::Paragons => SubstructureKind::Paragons,
                EnumKind::Ideals => SubstructureKind::Ideals,
            },
            limits,
        )?,
        (Document::Module(m), EnumKind::Subheaps) => {
            crate::truss::ensure_cap(m.heap().size(), limits.enumeration_cap)?;
            m.heap().subheaps()
        }
        (d, _) => return Err(Failure::Usage(format!("cannot enumerate {kind:?} of a {} document", d.kind()))),
    };
    let mut r = Report::new();
    for s in &subs {
        r.line(set(s.members()));
    }
    r.field("members", json!(subs.iter().map(SubHeap::members).collect::<Vec<_>>()));
    Ok(r)
}

fn classify_z(p: &ZTrussParams) -> CmdResult {
    let (canon, word) = canonicalize(p)?;
    let special = classify_special(p)?;
    let words: Vec<String> = word.iter().map(ToString::to_string).collect();
    let show = |v: &Option<BigInt>| v.as_ref().map_or_else(|| "none".to_string(), ToString::to_string);
    let mut r = Report::new();
    r.line(format!("params: {p}"))
        .line(format!("canonical: {canon}"))
        .line(format!("word: {}", if words.is_empty() { "identity".to_string() } else { words.join(" ") }))
        .line(format!("identity: {}", show(&special.identity)))
        .line(format!("absorber: {}", show(&special.absorber)));
    r.field("params", doc::zparams_value(p))
        .field("canonical", doc::zparams_value(&canon))
        .field("word", json!(words))
        .field("identity", special.identity.as_ref().map_or(Value::Null, doc::big_value))
        .field("absorber", special.absorber.as_ref().map_or(Value::Null, doc::big_value));
    if let Some((nf, _)) = unital_normal_form(p)? {
        r.line(format!("unital normal form: {nf}"));
        r.field("unital_normal_form", doc::zparams_value(&nf));
    }
    if let Some((nf, _)) = ring_normal_form(p)? {
        r.line(format!("ring normal form: {nf}"));
        r.field("ring_normal_form", doc::zparams_value(&nf));
    }
    Ok(r)
}

fn quotient(d: &Document, members: &[Element]) -> CmdResult {
    let mut r = Report::new();
    match d {
        Document::Heap(h) => {
            let sub = SubHeap::new(h, members.iter().copied())?;
            let (q, pi) = h.quotient(&sub)?;
            r.line(format!("size: {}", q.size())).line(format!("projection: {}", tuple(&pi.image)));
            r.field("heap", doc::heap_value(&q)).field("projection", json!(pi.image));
        }
        Document::Truss(t) => {
            let sub = SubHeap::new(t.heap(), members.iter().copied())?;
            let (q, pi) = t.quotient_truss(&sub)?;
            r.text = render_truss(&q, None)?;
            r.field("truss", doc::truss_value(&q)).field("projection", json!(pi.image));
        }
        Document::Module(m) => {
            let sub = SubHeap::new(m.heap(), members.iter().copied())?;
            let (q, pi) = m.quotient(&sub)?;
            r.text = render_module(&q, None, None)?;
            r.field("module", doc::module_value(&q)).field("projection", json!(pi.image));
        }
        other => return Err(Failure::Usage(format!("cannot quotient a {} document", other.kind()))),
    }
    Ok(r)
}

fn report(d: &Document, sub: Option<&[Element]>, labels: Option<&[String]>, limits: &Limits) -> CmdResult {
    let mut r = verify(d)?;
    match d {
        Document::Truss(t) => {
            let s = t.special_elements();
            r.line(format!("size: {}", t.size()))
                .line(format!("commutative: {}", yes(t.is_commutative())))
                .line(format!("central: {}", list_or_none(&s.central)))
                .line(format!("idempotents: {}", list_or_none(&s.idempotents)))
                .line(format!("left identities: {}", list_or_none(&s.left_identities)))
                .line(format!("right identities: {}", list_or_none(&s.right_identities)))
                .line(format!("left absorbers: {}", list_or_none(&s.left_absorbers)))
                .line(format!("right absorbers: {}", list_or_none(&s.right_absorbers)));
            r.field("commutative", json!(t.is_commutative()))
                .field("central", json!(s.central))
                .field("idempotents", json!(s.idempotents))
                .field("left_identities", json!(s.left_identities))
                .field("right_identities", json!(s.right_identities))
                .field("left_absorbers", json!(s.left_absorbers))
                .field("right_absorbers", json!(s.right_absorbers));
            if t.size() <= limits.enumeration_cap {
                let count = |k| t.enumerate_substructures(k, limits).map(|v| v.len());
                let (h, p, i) = (
                    count(SubstructureKind::SubHeaps)?,
                    count(SubstructureKind::Paragons)?,
                    count(SubstructureKind::Ideals)?,
                );
                r.line(format!("sub-heaps: {h}; paragons: {p}; ideals: {i}"));
                r.field("counts", json!({"subheaps": h, "paragons": p, "ideals": i}));
            }
            if let Some(b) = t.brace_view() {
                r.line(format!(
                    "brace at {}: left law {}; right law {}; group: {}",
                    b.identity,
                    yes(b.left_brace_law),
                    yes(b.right_brace_law),
                    yes(b.is_group)
                ));
                r.field(
                    "brace",
                    json!({"identity": b.identity, "left_law": b.left_brace_law, "right_law": b.right_brace_law, "group": b.is_group}),
                );
            }
            if let Some(members) = sub {
                let rep = t.classify_subheap(&SubHeap::new(t.heap(), members.iter().copied())?)?;
                let f = &rep.flags;
                let rows = [
                    ("sub-heap", &f.sub_heap),
                    ("normal", &f.normal),
                    ("left paragon", &f.left_paragon),
                    ("right paragon", &f.right_paragon),
                    ("paragon", &f.paragon),
                    ("left ideal", &f.left_ideal),
                    ("right ideal", &f.right_ideal),
                    ("ideal", &f.ideal),
                    ("sub-truss", &f.sub_truss),
                ];
                let mut flags = Map::new();
                r.line(format!("subject: {}", set(rep.subject.members())));
                for (name, flag) in rows {
                    let w = flag.witness.as_deref().map(|w| format!(" {}", tuple(w))).unwrap_or_default();
                    r.line(format!("{name}: {}{w}", yes(flag.holds)));
                    flags.insert(name.replace(' ', "_").replace('-', "_"), json!({"holds": flag.holds, "witness": flag.witness}));
                }
                r.field("subheap", json!(rep.subject.members())).field("flags", Value::Object(flags));
            }
            r.text.push_str(&render_truss(t, labels)?);
            r.field("table", json!(t.mul_table()));
        }
        Document::Module(m) => {
            r.text.push_str(&render_module(m, None, labels)?);
            r.field("action", json!(m.action_table()));
            if let Some(members) = sub {
                let rep = m.classify_submodule(&SubHeap::new(m.heap(), members.iter().copied())?)?;
                r.line(format!("submodule: {}", yes(rep.submodule)))
                    .line(format!("induced submodule: {}", yes(rep.induced_submodule)))
                    .line(format!("contains absorber: {}", yes(rep.contains_absorber)));
                r.field(
                    "submodule",
                    json!({"submodule": rep.submodule, "induced": rep.induced_submodule, "contains_absorber": rep.contains_absorber}),
                );
            }
        }
        Document::Heap(h) => {
            if h.size() <= limits.enumeration_cap {
                let n = h.subheaps().len();
                r.line(format!("sub-heaps: {n}"));
                r.field("subheaps", json!(n));
            }
        }
        Document::ZParams(p) => {
            let z = classify_z(p)?;
            r.text.push_str(&z.text);
            r.json.extend(z.json);
        }
        Document::Morphism(_) => {}
    }
    Ok(r)
}
