//! The workspace file format.
//!
//! A workspace is a JSON document with the top-level keys `instance`, `objects`,
//! `morphisms`, `complexes`, `chain_maps` and `simplicial`. Scalars are strings
//! (`"3"`, `"-1/2"`), matrices are arrays of rows, and named maps refer to named
//! objects or complexes by key. Entries are kept sorted by key, so saving a loaded
//! file reproduces it byte for byte.
//!
//! ```json
//! {
//!   "instance": "FGAB",
//!   "objects": { "A": { "free": 1, "torsion": ["2"] } },
//!   "morphisms": { "f": { "src": "A", "dst": "A", "matrix": [["1", "0"], ["0", "1"]] } },
//!   "complexes": {
//!     "X": { "lo": 0, "hi": 1, "objects": [{ "free": 1 }, { "free": 1 }],
//!            "differentials": [[["2"]]] }
//!   },
//!   "chain_maps": { "g": { "src": "X", "dst": "X", "lo": 0, "components": [[["1"]], [["1"]]] } },
//!   "simplicial": {}
//! }
//! ```
//!
//! Object encodings: `{"dim": n}` over VECTQ; `{"dim": n, "sub": rows}` over FILTQ
//! where the columns of `sub` span the subspace; `{"free": k, "torsion": [...]}` over
//! FGAB. In a complex, `differentials[k]` is `d_{lo+k+1}`; chain map components run
//! over consecutive degrees from `lo`. A simplicial object lists `objects[0..=L]`,
//! `faces[n][i] = d_i` (with `faces[0]` empty) and `degeneracies[n][j] = s_j` for `n < L`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use hocat::chain::{ChainMap, Complex};
use hocat::doldkan::SimplicialObject;
use hocat::exactlin::{RatMatrix, Rational};
use hocat::excat::{InstanceId, Mor, MorMatrix, Obj};
use serde::{Deserialize, Serialize};

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorDoc {
    pub src: String,
    pub dst: String,
    pub matrix: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub lo: i64,
    pub hi: i64,
    pub objects: Vec<ObjDoc>,
    pub differentials: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainMapDoc {
    pub src: String,
    pub dst: String,
    pub lo: i64,
    pub components: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDoc {
    pub objects: Vec<ObjDoc>,
    pub faces: Vec<Vec<MatrixDoc>>,
    pub degeneracies: Vec<Vec<MatrixDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    pub instance: String,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjDoc>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, MorDoc>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexDoc>,
    #[serde(default)]
    pub chain_maps: BTreeMap<String, ChainMapDoc>,
    #[serde(default)]
    pub simplicial: BTreeMap<String, SimplicialDoc>,
}

#[derive(Debug)]
pub enum FormatError {
    Io(String),
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Invalid {
        key: String,
        message: String,
    },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Io(m) => write!(f, "io error: {m}"),
            FormatError::Parse {
                line,
                column,
                message,
            } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            FormatError::Invalid { key, message } => write!(f, "invalid value at {key}: {message}"),
        }
    }
}

impl std::error::Error for FormatError {}

fn invalid(key: &str, message: impl fmt::Display) -> FormatError {
    FormatError::Invalid {
        key: key.to_string(),
        message: message.to_string(),
    }
}

/// A morphism between named objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMor {
    pub src: String,
    pub dst: String,
    pub mor: Mor,
}

/// A chain map between named complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedChainMap {
    pub src: String,
    pub dst: String,
    pub map: ChainMap,
}

/// Named values over one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub instance: InstanceId,
    pub objects: BTreeMap<String, Obj>,
    pub morphisms: BTreeMap<String, NamedMor>,
    pub complexes: BTreeMap<String, Complex>,
    pub chain_maps: BTreeMap<String, NamedChainMap>,
    pub simplicial: BTreeMap<String, SimplicialObject>,
}

impl Workspace {
    pub fn new(instance: InstanceId) -> Workspace {
        Workspace {
            instance,
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            complexes: BTreeMap::new(),
            chain_maps: BTreeMap::new(),
            simplicial: BTreeMap::new(),
        }
    }

    /// Adds a morphism together with its endpoints, stored as `<name>.src` and `<name>.dst`.
    pub fn add_mor(&mut self, name: &str, m: &Mor) {
        let (s, d) = (format!("{name}.src"), format!("{name}.dst"));
        self.objects.insert(s.clone(), m.src().clone());
        self.objects.insert(d.clone(), m.dst().clone());
        self.morphisms.insert(
            name.to_string(),
            NamedMor {
                src: s,
                dst: d,
                mor: m.clone(),
            },
        );
    }

    /// Adds a chain map together with its endpoints, stored as `<name>.src` and `<name>.dst`.
    pub fn add_chain_map(&mut self, name: &str, f: &ChainMap) {
        let (s, d) = (format!("{name}.src"), format!("{name}.dst"));
        self.complexes.insert(s.clone(), f.src().clone());
        self.complexes.insert(d.clone(), f.dst().clone());
        self.chain_maps.insert(
            name.to_string(),
            NamedChainMap {
                src: s,
                dst: d,
                map: f.clone(),
            },
        );
    }

    pub fn object(&self, name: &str) -> Result<&Obj, FormatError> {
        self.objects
            .get(name)
            .ok_or_else(|| invalid(name, "no such object"))
    }

    pub fn morphism(&self, name: &str) -> Result<&Mor, FormatError> {
        self.morphisms
            .get(name)
            .map(|m| &m.mor)
            .ok_or_else(|| invalid(name, "no such morphism"))
    }

    pub fn complex(&self, name: &str) -> Result<&Complex, FormatError> {
        self.complexes
            .get(name)
            .ok_or_else(|| invalid(name, "no such complex"))
    }

    pub fn chain_map(&self, name: &str) -> Result<&ChainMap, FormatError> {
        self.chain_maps
            .get(name)
            .map(|m| &m.map)
            .ok_or_else(|| invalid(name, "no such chain map"))
    }

    pub fn simplicial_object(&self, name: &str) -> Result<&SimplicialObject, FormatError> {
        self.simplicial
            .get(name)
            .ok_or_else(|| invalid(name, "no such simplicial object"))
    }

    pub fn to_doc(&self) -> WorkspaceDoc {
        WorkspaceDoc {
            instance: self.instance.name().to_string(),
            objects: self
                .objects
                .iter()
                .map(|(k, o)| (k.clone(), obj_doc(o)))
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|(k, m)| {
                    let doc = MorDoc {
                        src: m.src.clone(),
                        dst: m.dst.clone(),
                        matrix: mor_doc(&m.mor),
                    };
                    (k.clone(), doc)
                })
                .collect(),
            complexes: self
                .complexes
                .iter()
                .map(|(k, c)| (k.clone(), complex_doc(c)))
                .collect(),
            chain_maps: self
                .chain_maps
                .iter()
                .map(|(k, m)| {
                    let degs: Vec<i64> = m.map.degrees().collect();
                    let doc = ChainMapDoc {
                        src: m.src.clone(),
                        dst: m.dst.clone(),
                        lo: degs.first().copied().unwrap_or(0),
                        components: degs.iter().map(|&n| mor_doc(&m.map.comp(n))).collect(),
                    };
                    (k.clone(), doc)
                })
                .collect(),
            simplicial: self
                .simplicial
                .iter()
                .map(|(k, a)| (k.clone(), simplicial_doc(a)))
                .collect(),
        }
    }

    pub fn from_doc(doc: &WorkspaceDoc) -> Result<Workspace, FormatError> {
        let instance = InstanceId::parse(&doc.instance)
            .ok_or_else(|| invalid("instance", format!("unknown instance {:?}", doc.instance)))?;
        let mut ws = Workspace::new(instance);
        for (k, o) in &doc.objects {
            ws.objects
                .insert(k.clone(), parse_obj(instance, o, &format!("objects.{k}"))?);
        }
        for (k, m) in &doc.morphisms {
            let key = format!("morphisms.{k}");
            let src = ws
                .object(&m.src)
                .map_err(|_| invalid(&key, format!("unknown object {:?}", m.src)))?;
            let dst = ws
                .object(&m.dst)
                .map_err(|_| invalid(&key, format!("unknown object {:?}", m.dst)))?;
            let mor = parse_mor(src, dst, &m.matrix, &key)?;
            ws.morphisms.insert(
                k.clone(),
                NamedMor {
                    src: m.src.clone(),
                    dst: m.dst.clone(),
                    mor,
                },
            );
        }
        for (k, c) in &doc.complexes {
            ws.complexes.insert(
                k.clone(),
                parse_complex(instance, c, &format!("complexes.{k}"))?,
            );
        }
        for (k, m) in &doc.chain_maps {
            let key = format!("chain_maps.{k}");
            let src = ws
                .complex(&m.src)
                .map_err(|_| invalid(&key, format!("unknown complex {:?}", m.src)))?;
            let dst = ws
                .complex(&m.dst)
                .map_err(|_| invalid(&key, format!("unknown complex {:?}", m.dst)))?;
            let mut comps = BTreeMap::new();
            for (j, mat) in m.components.iter().enumerate() {
                let n = m.lo + j as i64;
                let ck = format!("{key}.components[{j}]");
                comps.insert(n, parse_mor(src.obj(n), dst.obj(n), mat, &ck)?);
            }
            let map = ChainMap::from_fn(src, dst, |n| {
                comps
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| Mor::zero(src.obj(n), dst.obj(n)))
            })
            .map_err(|e| invalid(&key, e))?;
            ws.chain_maps.insert(
                k.clone(),
                NamedChainMap {
                    src: m.src.clone(),
                    dst: m.dst.clone(),
                    map,
                },
            );
        }
        for (k, s) in &doc.simplicial {
            ws.simplicial.insert(
                k.clone(),
                parse_simplicial(instance, s, &format!("simplicial.{k}"))?,
            );
        }
        Ok(ws)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Workspace, FormatError> {
        let doc: WorkspaceDoc = serde_json::from_str(text).map_err(|e| FormatError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Workspace::from_doc(&doc)
    }
}

pub fn load(path: &Path) -> Result<Workspace, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::Io(format!("{}: {e}", path.display())))?;
    Workspace::from_json(&text)
}

pub fn save(ws: &Workspace, path: &Path) -> Result<(), FormatError> {
    std::fs::write(path, ws.to_json())
        .map_err(|e| FormatError::Io(format!("{}: {e}", path.display())))
}

pub fn rat_doc(m: &RatMatrix) -> MatrixDoc {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect()
}

pub fn mor_doc(m: &Mor) -> MatrixDoc {
    match m.matrix() {
        MorMatrix::Rat(r) => rat_doc(r),
        MorMatrix::Int(i) => i
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect(),
    }
}

pub fn obj_doc(o: &Obj) -> ObjDoc {
    match o {
        Obj::Vect { dim } => ObjDoc {
            dim: Some(*dim),
            ..ObjDoc::default()
        },
        Obj::Filt { dim, sub } => ObjDoc {
            dim: Some(*dim),
            sub: Some(rat_doc(sub)),
            ..ObjDoc::default()
        },
        Obj::Ab { free, torsion } => ObjDoc {
            free: Some(*free),
            torsion: if torsion.is_empty() {
                None
            } else {
                Some(torsion.iter().map(|d| d.to_string()).collect())
            },
            ..ObjDoc::default()
        },
    }
}

pub fn complex_doc(c: &Complex) -> ComplexDoc {
    if c.is_empty_support() {
        return ComplexDoc {
            lo: 0,
            hi: -1,
            objects: vec![],
            differentials: vec![],
        };
    }
    ComplexDoc {
        lo: c.lo(),
        hi: c.hi(),
        objects: c.objects().iter().map(obj_doc).collect(),
        differentials: (c.lo() + 1..=c.hi()).map(|n| mor_doc(&c.d(n))).collect(),
    }
}

pub fn simplicial_doc(a: &SimplicialObject) -> SimplicialDoc {
    SimplicialDoc {
        objects: a.objects.iter().map(obj_doc).collect(),
        faces: a
            .faces
            .iter()
            .map(|fs| fs.iter().map(mor_doc).collect())
            .collect(),
        degeneracies: a
            .degeneracies
            .iter()
            .map(|ss| ss.iter().map(mor_doc).collect())
            .collect(),
    }
}

fn parse_matrix(
    doc: &MatrixDoc,
    rows: usize,
    cols: usize,
    key: &str,
) -> Result<RatMatrix, FormatError> {
    if doc.len() != rows {
        return Err(invalid(
            key,
            format!("expected {rows} rows, found {}", doc.len()),
        ));
    }
    let mut m = RatMatrix::zeros(rows, cols);
    for (i, row) in doc.iter().enumerate() {
        if row.len() != cols {
            return Err(invalid(
                key,
                format!("row {i} has {} entries, expected {cols}", row.len()),
            ));
        }
        for (j, s) in row.iter().enumerate() {
            let v: Rational = s
                .trim()
                .parse()
                .map_err(|e| invalid(key, format!("entry ({i},{j}): {e}")))?;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

fn parse_obj(instance: InstanceId, o: &ObjDoc, key: &str) -> Result<Obj, FormatError> {
    let extra = |what: &str| {
        invalid(
            key,
            format!("field {what} is not used by {instance} objects"),
        )
    };
    match instance {
        InstanceId::VectQ => {
            if o.sub.is_some() {
                return Err(extra("sub"));
            }
            if o.free.is_some() || o.torsion.is_some() {
                return Err(extra("free/torsion"));
            }
            Ok(Obj::vect(o.dim.ok_or_else(|| invalid(key, "missing dim"))?))
        }
        InstanceId::FiltQ => {
            if o.free.is_some() || o.torsion.is_some() {
                return Err(extra("free/torsion"));
            }
            let dim = o.dim.ok_or_else(|| invalid(key, "missing dim"))?;
            let sub = o.sub.as_ref().ok_or_else(|| invalid(key, "missing sub"))?;
            let cols = sub.first().map_or(0, Vec::len);
            let m = parse_matrix(sub, dim, cols, key)?;
            Obj::filt(dim, &m).map_err(|e| invalid(key, e))
        }
        InstanceId::FgAb => {
            if o.dim.is_some() || o.sub.is_some() {
                return Err(extra("dim/sub"));
            }
            let free = o.free.unwrap_or(0);
            let mut torsion = Vec::new();
            for s in o.torsion.iter().flatten() {
                torsion.push(
                    s.trim()
                        .parse()
                        .map_err(|e| invalid(key, format!("torsion entry {s:?}: {e}")))?,
                );
            }
            Obj::ab_big(free, torsion).map_err(|e| invalid(key, e))
        }
    }
}

fn parse_mor(src: &Obj, dst: &Obj, doc: &MatrixDoc, key: &str) -> Result<Mor, FormatError> {
    let m = parse_matrix(doc, dst.gens(), src.gens(), key)?;
    Mor::from_rat(src, dst, m).map_err(|e| invalid(key, e))
}

fn parse_complex(instance: InstanceId, c: &ComplexDoc, key: &str) -> Result<Complex, FormatError> {
    let len = (c.hi - c.lo + 1).max(0) as usize;
    if c.objects.len() != len {
        return Err(invalid(
            key,
            format!(
                "degrees {}..={} need {len} objects, found {}",
                c.lo,
                c.hi,
                c.objects.len()
            ),
        ));
    }
    if c.differentials.len() != len.saturating_sub(1) {
        return Err(invalid(
            key,
            format!(
                "expected {} differentials, found {}",
                len.saturating_sub(1),
                c.differentials.len()
            ),
        ));
    }
    if len == 0 {
        return Ok(Complex::zero(instance));
    }
    let objects = c
        .objects
        .iter()
        .enumerate()
        .map(|(k, o)| parse_obj(instance, o, &format!("{key}.objects[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut diffs = Vec::new();
    for (k, d) in c.differentials.iter().enumerate() {
        let dk = format!("{key}.differentials[{k}]");
        diffs.push(parse_mor(&objects[k + 1], &objects[k], d, &dk)?);
    }
    Complex::new(instance, c.lo, objects, diffs).map_err(|e| invalid(key, e))
}

fn parse_simplicial(
    instance: InstanceId,
    s: &SimplicialDoc,
    key: &str,
) -> Result<SimplicialObject, FormatError> {
    let objects = s
        .objects
        .iter()
        .enumerate()
        .map(|(k, o)| parse_obj(instance, o, &format!("{key}.objects[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let level = objects
        .len()
        .checked_sub(1)
        .ok_or_else(|| invalid(key, "no levels"))?;
    if s.faces.len() != level + 1 || s.degeneracies.len() != level {
        return Err(invalid(
            key,
            "faces need one list per level and degeneracies one per level below the top",
        ));
    }
    let mut faces = Vec::new();
    for (n, fs) in s.faces.iter().enumerate() {
        let want = if n == 0 { 0 } else { n + 1 };
        if fs.len() != want {
            return Err(invalid(key, format!("level {n} needs {want} faces")));
        }
        let mut row = Vec::new();
        for (i, m) in fs.iter().enumerate() {
            row.push(parse_mor(
                &objects[n],
                &objects[n - 1],
                m,
                &format!("{key}.faces[{n}][{i}]"),
            )?);
        }
        faces.push(row);
    }
    let mut degs = Vec::new();
    for (n, ss) in s.degeneracies.iter().enumerate() {
        if ss.len() != n + 1 {
            return Err(invalid(
                key,
                format!("level {n} needs {} degeneracies", n + 1),
            ));
        }
        let mut row = Vec::new();
        for (j, m) in ss.iter().enumerate() {
            row.push(parse_mor(
                &objects[n],
                &objects[n + 1],
                m,
                &format!("{key}.degeneracies[{n}][{j}]"),
            )?);
        }
        degs.push(row);
    }
    SimplicialObject::new(instance, objects, faces, degs).map_err(|e| invalid(key, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_sphere_loads() {
        let text = r#"{"instance": "VECTQ", "complexes": {"S": {"lo": 0, "hi": 0, "objects": [{"dim": 1}], "differentials": []}}}"#;
        let ws = Workspace::from_json(text).unwrap();
        assert_eq!(ws.complex("S").unwrap().obj(0), &Obj::vect(1));
    }

    #[test]
    fn rejects_non_complex_naming_degree() {
        let text = r#"{"instance": "VECTQ", "complexes": {"X": {"lo": 0, "hi": 2,
            "objects": [{"dim": 1}, {"dim": 1}, {"dim": 1}],
            "differentials": [[["1"]], [["1"]]]}}}"#;
        let err = Workspace::from_json(text).unwrap_err().to_string();
        assert!(
            err.contains("complexes.X") && err.contains("degree 2"),
            "{err}"
        );
    }

    #[test]
    fn rejects_bad_torsion_chain() {
        let text = r#"{"instance": "FGAB", "objects": {"A": {"free": 0, "torsion": ["4", "2"]}}}"#;
        let err = Workspace::from_json(text).unwrap_err().to_string();
        assert!(err.contains("objects.A"), "{err}");
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = Workspace::from_json("{\n  \"instance\": \"VECTQ\",\n  oops\n}").unwrap_err();
        match err {
            FormatError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn filtered_and_group_values_round_trip() {
        let text = r#"{"instance": "FGAB", "objects": {"A": {"free": 1, "torsion": ["2"]}},
            "morphisms": {"f": {"src": "A", "dst": "A", "matrix": [["1", "0"], ["1", "1"]]}}}"#;
        let ws = Workspace::from_json(text).unwrap();
        let once = ws.to_json();
        assert_eq!(Workspace::from_json(&once).unwrap().to_json(), once);
        let text =
            r#"{"instance": "FILTQ", "objects": {"P": {"dim": 2, "sub": [["1/2"], ["1"]]}}}"#;
        let ws = Workspace::from_json(text).unwrap();
        let once = ws.to_json();
        assert_eq!(Workspace::from_json(&once).unwrap().to_json(), once);
    }
}
