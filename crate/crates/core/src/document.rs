//! The JSON action document: strict parsing with path-tagged errors and
//! canonical emission (sorted keys, two-space indentation, trailing newline).
//!
//! ```json
//! {
//!   "name": "fib_regular",
//!   "regular_of": {
//!     "labels": ["1", "tau"], "unit": "1", "dual": ["1", "tau"],
//!     "tensor": [{"a": "tau", "b": "tau", "c": "1", "mult": 1}, ...]
//!   },
//!   "Y": {"tau": 1}
//! }
//! ```
//!
//! The explicit form replaces `regular_of` by `ring`, `module`
//! (`objects`, `action`), `dual_ring` and `dual_action`, and may set `m0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{Map, Value};

use crate::error::Result;
use crate::fusion::{FusionRing, ObjectVec};
use crate::matrix::IntMatrix;
use crate::module_cat::{regular_module, BimoduleAction, ModuleData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    Schema(Vec<SchemaError>),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax {
                line,
                column,
                message,
            } => write!(f, "syntax error at line {line}, column {column}: {message}"),
            ParseError::Schema(errors) => {
                for (i, e) in errors.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSection {
    pub labels: Vec<String>,
    pub unit: String,
    pub dual: Vec<String>,
    pub tensor: Vec<TensorEntry>,
}

impl RingSection {
    pub fn from_ring(ring: &FusionRing) -> Self {
        RingSection {
            labels: ring.labels().to_vec(),
            unit: ring.label(ring.unit()).to_string(),
            dual: ring
                .duals()
                .iter()
                .map(|&d| ring.label(d).to_string())
                .collect(),
            tensor: ring
                .triples()
                .map(|(a, b, c, mult)| TensorEntry {
                    a: ring.label(a).to_string(),
                    b: ring.label(b).to_string(),
                    c: ring.label(c).to_string(),
                    mult,
                })
                .collect(),
        }
    }

    fn index(&self, label: &str) -> usize {
        self.labels
            .iter()
            .position(|l| l == label)
            .expect("labels resolved during parsing")
    }

    pub fn to_ring(&self) -> Result<FusionRing> {
        FusionRing::new(
            self.labels.clone(),
            self.index(&self.unit),
            self.dual.iter().map(|d| self.index(d)).collect(),
            self.tensor
                .iter()
                .map(|t| (self.index(&t.a), self.index(&t.b), self.index(&t.c), t.mult)),
        )
    }

    fn to_value(&self) -> Value {
        let mut tensor: Vec<(usize, usize, usize, &TensorEntry)> = self
            .tensor
            .iter()
            .filter(|t| t.mult > 0)
            .map(|t| (self.index(&t.a), self.index(&t.b), self.index(&t.c), t))
            .collect();
        tensor.sort_by_key(|&(a, b, c, _)| (a, b, c));
        let mut m = Map::new();
        m.insert("labels".into(), strings(&self.labels));
        m.insert("unit".into(), Value::String(self.unit.clone()));
        m.insert("dual".into(), strings(&self.dual));
        m.insert(
            "tensor".into(),
            Value::Array(
                tensor
                    .into_iter()
                    .map(|(_, _, _, t)| {
                        let mut e = Map::new();
                        e.insert("a".into(), Value::String(t.a.clone()));
                        e.insert("b".into(), Value::String(t.b.clone()));
                        e.insert("c".into(), Value::String(t.c.clone()));
                        e.insert("mult".into(), Value::from(t.mult));
                        Value::Object(e)
                    })
                    .collect(),
            ),
        );
        Value::Object(m)
    }
}

pub type MatrixRows = Vec<Vec<u64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionBody {
    Regular(RingSection),
    Explicit {
        ring: RingSection,
        objects: Vec<String>,
        action: BTreeMap<String, MatrixRows>,
        dual_ring: RingSection,
        dual_action: BTreeMap<String, MatrixRows>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDocument {
    pub name: Option<String>,
    pub description: Option<String>,
    pub source: Option<String>,
    pub body: ActionBody,
    pub m0: Option<String>,
    pub y: BTreeMap<String, u64>,
}

impl ActionDocument {
    pub fn regular(name: &str, ring: RingSection, y: BTreeMap<String, u64>) -> Self {
        ActionDocument {
            name: Some(name.to_string()),
            description: None,
            source: Some("registry".into()),
            body: ActionBody::Regular(ring),
            m0: None,
            y,
        }
    }

    /// Explicit document for an arbitrary action.
    pub fn from_action(name: &str, action: &BimoduleAction) -> Self {
        let rows = |m: &IntMatrix| -> MatrixRows {
            m.to_rows()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| u64::try_from(x).expect("action entries fit in u64"))
                        .collect()
                })
                .collect()
        };
        let ring = action.ring();
        let dual = action.dual_ring();
        ActionDocument {
            name: Some(name.to_string()),
            description: None,
            source: Some("registry".into()),
            body: ActionBody::Explicit {
                ring: RingSection::from_ring(ring),
                objects: action.module().objects().to_vec(),
                action: (0..ring.rank())
                    .map(|a| (ring.label(a).to_string(), rows(action.module().left(a))))
                    .collect(),
                dual_ring: RingSection::from_ring(dual),
                dual_action: (0..dual.rank())
                    .map(|e| (dual.label(e).to_string(), rows(action.right(e))))
                    .collect(),
            },
            m0: Some(action.module().objects()[action.m0()].clone()),
            y: action
                .y()
                .to_u64_lossy()
                .into_iter()
                .enumerate()
                .filter(|&(_, m)| m > 0)
                .map(|(i, m)| (dual.label(i).to_string(), m))
                .collect(),
        }
    }

    pub fn dual_section(&self) -> &RingSection {
        match &self.body {
            ActionBody::Regular(r) => r,
            ActionBody::Explicit { dual_ring, .. } => dual_ring,
        }
    }

    /// Resolves labels into a [`BimoduleAction`]. Axioms are not checked here.
    pub fn to_action(&self) -> Result<BimoduleAction> {
        let y_of = |section: &RingSection| {
            let mut v = vec![0u64; section.labels.len()];
            for (label, &m) in &self.y {
                v[section.index(label)] = m;
            }
            ObjectVec::from_u64(&v)
        };
        match &self.body {
            ActionBody::Regular(section) => {
                let ring = section.to_ring()?;
                let mut action = regular_module_unchecked(&ring)?;
                if let Some(m0) = &self.m0 {
                    action = action.with_m0(section.index(m0))?;
                }
                action.with_y(y_of(section))
            }
            ActionBody::Explicit {
                ring,
                objects,
                action,
                dual_ring,
                dual_action,
            } => {
                let c = ring.to_ring()?;
                let e = dual_ring.to_ring()?;
                let mat = |rows: &MatrixRows| {
                    IntMatrix::from_rows(rows).expect("shapes checked during parsing")
                };
                let left = ring.labels.iter().map(|l| mat(&action[l])).collect();
                let right = dual_ring
                    .labels
                    .iter()
                    .map(|l| mat(&dual_action[l]))
                    .collect();
                let module = ModuleData::new(objects.clone(), left)?;
                let m0 = self
                    .m0
                    .as_ref()
                    .map(|m| objects.iter().position(|o| o == m).expect("resolved"))
                    .unwrap_or(0);
                BimoduleAction::new(c, module, e, right, m0, y_of(dual_ring))
            }
        }
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        for (key, field) in [
            ("name", &self.name),
            ("description", &self.description),
            ("source", &self.source),
            ("m0", &self.m0),
        ] {
            if let Some(s) = field {
                m.insert(key.into(), Value::String(s.clone()));
            }
        }
        m.insert(
            "Y".into(),
            Value::Object(
                self.y
                    .iter()
                    .map(|(k, &v)| (k.clone(), Value::from(v)))
                    .collect(),
            ),
        );
        match &self.body {
            ActionBody::Regular(r) => {
                m.insert("regular_of".into(), r.to_value());
            }
            ActionBody::Explicit {
                ring,
                objects,
                action,
                dual_ring,
                dual_action,
            } => {
                m.insert("ring".into(), ring.to_value());
                let mut module = Map::new();
                module.insert("objects".into(), strings(objects));
                module.insert("action".into(), matrices(action));
                m.insert("module".into(), Value::Object(module));
                m.insert("dual_ring".into(), dual_ring.to_value());
                m.insert("dual_action".into(), matrices(dual_action));
            }
        }
        Value::Object(m)
    }

    /// Canonical text form.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
        s.push('\n');
        s
    }
}

/// Like [`regular_module`] but without re-verifying the ring, so that broken
/// rings still reach the analyzer and are reported as violations.
pub(crate) fn regular_module_unchecked(ring: &FusionRing) -> Result<BimoduleAction> {
    if ring.verify().is_empty() {
        return regular_module(ring);
    }
    let k = ring.rank();
    let left = (0..k).map(|a| ring.left_matrix(a)).collect();
    let right = (0..k).map(|e| ring.right_matrix(e)).collect();
    BimoduleAction::new(
        ring.clone(),
        ModuleData::new(ring.labels().to_vec(), left)?,
        ring.clone(),
        right,
        ring.unit(),
        ObjectVec::basis(k, ring.unit()),
    )
}

fn strings(v: &[String]) -> Value {
    Value::Array(v.iter().cloned().map(Value::String).collect())
}

fn matrices(m: &BTreeMap<String, MatrixRows>) -> Value {
    Value::Object(
        m.iter()
            .map(|(k, rows)| {
                (
                    k.clone(),
                    Value::Array(
                        rows.iter()
                            .map(|r| Value::Array(r.iter().map(|&x| Value::from(x)).collect()))
                            .collect(),
                    ),
                )
            })
            .collect(),
    )
}

/// Strict parse: unknown keys are rejected and every schema error is collected.
pub fn parse(text: &str) -> std::result::Result<ActionDocument, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut v = Validator::default();
    let doc = v.document(&value);
    if v.errors.is_empty() {
        Ok(doc.expect("no errors implies a document"))
    } else {
        Err(ParseError::Schema(v.errors))
    }
}

#[derive(Default)]
struct Validator {
    errors: Vec<SchemaError>,
}

impl Validator {
    fn err(&mut self, path: &str, message: impl Into<String>) {
        self.errors.push(SchemaError {
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn object<'a>(
        &mut self,
        v: &'a Value,
        path: &str,
        required: &[&str],
        optional: &[&str],
    ) -> Option<&'a Map<String, Value>> {
        let Some(obj) = v.as_object() else {
            self.err(path, "expected an object");
            return None;
        };
        for key in obj.keys() {
            if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
                self.err(&join(path, key), "unknown key");
            }
        }
        for key in required {
            if !obj.contains_key(*key) {
                self.err(&join(path, key), "missing required key");
            }
        }
        Some(obj)
    }

    fn string(&mut self, v: &Value, path: &str) -> Option<String> {
        match v.as_str() {
            Some(s) => Some(s.to_string()),
            None => {
                self.err(path, "expected a string");
                None
            }
        }
    }

    fn uint(&mut self, v: &Value, path: &str) -> Option<u64> {
        match v.as_u64() {
            Some(x) => Some(x),
            None => {
                self.err(path, "expected a nonnegative integer");
                None
            }
        }
    }

    fn labels(&mut self, v: &Value, path: &str) -> Option<Vec<String>> {
        let Some(arr) = v.as_array() else {
            self.err(path, "expected an array of strings");
            return None;
        };
        if arr.is_empty() {
            self.err(path, "must not be empty");
            return None;
        }
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let mut ok = true;
        for (i, x) in arr.iter().enumerate() {
            let p = format!("{path}[{i}]");
            match self.string(x, &p) {
                Some(s) => {
                    // Recorded, but later sections are still checked against the list.
                    if !seen.insert(s.clone()) {
                        self.err(&p, format!("duplicate label {s:?}"));
                    }
                    out.push(s);
                }
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn label_ref(&mut self, v: &Value, path: &str, labels: &[String]) -> Option<String> {
        let s = self.string(v, path)?;
        if labels.contains(&s) {
            Some(s)
        } else {
            self.err(path, format!("unknown label {s:?}"));
            None
        }
    }

    fn ring(&mut self, v: &Value, path: &str) -> Option<RingSection> {
        let obj = self.object(v, path, &["labels", "unit", "dual", "tensor"], &[])?;
        let labels = self.labels(obj.get("labels")?, &join(path, "labels"))?;
        let unit = obj
            .get("unit")
            .and_then(|u| self.label_ref(u, &join(path, "unit"), &labels));
        let dual = obj.get("dual").and_then(|d| {
            let p = join(path, "dual");
            let Some(arr) = d.as_array() else {
                self.err(&p, "expected an array of labels");
                return None;
            };
            if arr.len() != labels.len() {
                self.err(
                    &p,
                    format!("expected {} entries, found {}", labels.len(), arr.len()),
                );
                return None;
            }
            let refs: Vec<Option<String>> = arr
                .iter()
                .enumerate()
                .map(|(i, x)| self.label_ref(x, &format!("{p}[{i}]"), &labels))
                .collect();
            refs.into_iter().collect::<Option<Vec<_>>>()
        });
        let tensor = obj.get("tensor").and_then(|t| {
            let p = join(path, "tensor");
            let Some(arr) = t.as_array() else {
                self.err(&p, "expected an array");
                return None;
            };
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            let mut ok = true;
            for (k, entry) in arr.iter().enumerate() {
                let ep = format!("{p}[{k}]");
                let Some(e) = self.object(entry, &ep, &["a", "b", "c", "mult"], &[]) else {
                    ok = false;
                    continue;
                };
                let field = |name: &str, this: &mut Self| {
                    e.get(name)
                        .and_then(|x| this.label_ref(x, &join(&ep, name), &labels))
                };
                let a = field("a", self);
                let b = field("b", self);
                let c = field("c", self);
                let mult = e.get("mult").and_then(|m| self.uint(m, &join(&ep, "mult")));
                match (a, b, c, mult) {
                    (Some(a), Some(b), Some(c), Some(mult)) => {
                        if !seen.insert((a.clone(), b.clone(), c.clone())) {
                            self.err(&ep, format!("duplicate entry for ({a}, {b}, {c})"));
                            ok = false;
                        }
                        out.push(TensorEntry { a, b, c, mult });
                    }
                    _ => ok = false,
                }
            }
            ok.then_some(out)
        });
        Some(RingSection {
            labels,
            unit: unit?,
            dual: dual?,
            tensor: tensor?,
        })
    }

    fn matrix(&mut self, v: &Value, path: &str, size: usize) -> Option<MatrixRows> {
        let Some(rows) = v.as_array() else {
            self.err(path, "expected an array of rows");
            return None;
        };
        if rows.len() != size {
            self.err(path, format!("expected {size} rows, found {}", rows.len()));
            return None;
        }
        let mut out = Vec::new();
        let mut ok = true;
        for (r, row) in rows.iter().enumerate() {
            let rp = format!("{path}[{r}]");
            let Some(cells) = row.as_array() else {
                self.err(&rp, "expected an array");
                ok = false;
                continue;
            };
            if cells.len() != size {
                self.err(
                    &rp,
                    format!("expected {size} entries, found {}", cells.len()),
                );
                ok = false;
                continue;
            }
            let parsed: Vec<Option<u64>> = cells
                .iter()
                .enumerate()
                .map(|(c, x)| self.uint(x, &format!("{rp}[{c}]")))
                .collect();
            match parsed.into_iter().collect::<Option<Vec<_>>>() {
                Some(r) => out.push(r),
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn matrix_family(
        &mut self,
        v: &Value,
        path: &str,
        labels: Option<&[String]>,
        size: Option<usize>,
    ) -> Option<BTreeMap<String, MatrixRows>> {
        let Some(obj) = v.as_object() else {
            self.err(path, "expected an object mapping labels to matrices");
            return None;
        };
        let (labels, size) = (labels?, size?);
        let mut out = BTreeMap::new();
        let mut ok = true;
        for (k, m) in obj {
            let p = join(path, k);
            if !labels.contains(k) {
                self.err(&p, format!("unknown label {k:?}"));
                ok = false;
                continue;
            }
            match self.matrix(m, &p, size) {
                Some(rows) => {
                    out.insert(k.clone(), rows);
                }
                None => ok = false,
            }
        }
        for l in labels {
            if !obj.contains_key(l) {
                self.err(&join(path, l), "missing action matrix");
                ok = false;
            }
        }
        ok.then_some(out)
    }

    fn document(&mut self, v: &Value) -> Option<ActionDocument> {
        let obj = self.object(
            v,
            "$",
            &["Y"],
            &[
                "name",
                "description",
                "source",
                "m0",
                "regular_of",
                "ring",
                "module",
                "dual_ring",
                "dual_action",
            ],
        )?;
        let opt_string = |this: &mut Self, key: &str| -> Option<Option<String>> {
            match obj.get(key) {
                None => Some(None),
                Some(x) => this.string(x, key).map(Some),
            }
        };
        let name = opt_string(self, "name");
        let description = opt_string(self, "description");
        let source = opt_string(self, "source");

        const EXPLICIT: [&str; 4] = ["ring", "module", "dual_ring", "dual_action"];
        let body = if obj.contains_key("regular_of") {
            for key in EXPLICIT {
                if obj.contains_key(key) {
                    self.err(key, "not allowed together with regular_of");
                }
            }
            self.ring(&obj["regular_of"], "regular_of")
                .map(ActionBody::Regular)
        } else {
            let mut missing = false;
            for key in EXPLICIT {
                if !obj.contains_key(key) {
                    self.err(key, "missing required key (or use regular_of)");
                    missing = true;
                }
            }
            if missing {
                None
            } else {
                let ring = self.ring(&obj["ring"], "ring");
                let dual_ring = self.ring(&obj["dual_ring"], "dual_ring");
                let module = self.object(&obj["module"], "module", &["objects", "action"], &[]);
                let objects = module
                    .and_then(|m| m.get("objects"))
                    .and_then(|o| self.labels(o, "module.objects"));
                let size = objects.as_ref().map(Vec::len);
                let action = module.and_then(|m| m.get("action")).and_then(|a| {
                    self.matrix_family(
                        a,
                        "module.action",
                        ring.as_ref().map(|r| r.labels.as_slice()),
                        size,
                    )
                });
                let dual_action = self.matrix_family(
                    &obj["dual_action"],
                    "dual_action",
                    dual_ring.as_ref().map(|r| r.labels.as_slice()),
                    size,
                );
                match (ring, objects, action, dual_ring, dual_action) {
                    (
                        Some(ring),
                        Some(objects),
                        Some(action),
                        Some(dual_ring),
                        Some(dual_action),
                    ) => Some(ActionBody::Explicit {
                        ring,
                        objects,
                        action,
                        dual_ring,
                        dual_action,
                    }),
                    _ => None,
                }
            }
        };

        let m0 = match (obj.get("m0"), &body) {
            (None, _) => Some(None),
            (Some(x), Some(ActionBody::Regular(r))) => self.label_ref(x, "m0", &r.labels).map(Some),
            (Some(x), Some(ActionBody::Explicit { objects, .. })) => {
                self.label_ref(x, "m0", objects).map(Some)
            }
            (Some(x), None) => self.string(x, "m0").map(Some),
        };

        let y = obj.get("Y").and_then(|yv| {
            let Some(map) = yv.as_object() else {
                self.err("Y", "expected an object mapping labels to multiplicities");
                return None;
            };
            let labels = body.as_ref().map(|b| match b {
                ActionBody::Regular(r) => r.labels.clone(),
                ActionBody::Explicit { dual_ring, .. } => dual_ring.labels.clone(),
            });
            let mut out = BTreeMap::new();
            let mut ok = true;
            for (k, m) in map {
                let p = join("Y", k);
                if let Some(labels) = &labels {
                    if !labels.contains(k) {
                        self.err(&p, format!("unknown label {k:?}"));
                        ok = false;
                    }
                }
                match self.uint(m, &p) {
                    Some(x) => {
                        out.insert(k.clone(), x);
                    }
                    None => ok = false,
                }
            }
            ok.then_some(out)
        });

        Some(ActionDocument {
            name: name?,
            description: description?,
            source: source?,
            body: body?,
            m0: m0?,
            y: y?,
        })
    }
}

fn join(path: &str, key: &str) -> String {
    if path == "$" {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}
