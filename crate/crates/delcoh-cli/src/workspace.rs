//! Line-oriented JSON workspace files.
//!
//! A workspace is a text file with one JSON object per line. Each object
//! carries a `kind` field selecting one of four record types:
//!
//! * `complex` — a simplicial complex given by its generating simplices;
//! * `map` — a simplicial map between two named complexes, given by its
//!   vertex assignment;
//! * `character` — an absolute character on a named complex or a relative
//!   representative on a named map, with cochain data keyed by simplex;
//! * `cycle` — an absolute chain on a named complex or a relative chain
//!   pair on a named map.
//!
//! Cochain values are exact: JSON integers or `"num/den"` strings, never
//! floats. Simplex keys use the bracketed vertex list syntax `"[0,1]"`.
//! Blank lines and lines starting with `#` are ignored. All structural
//! validation (references resolve, complexes and maps are well formed,
//! character data satisfies its defining equations) happens on load; cycle
//! closure is deferred to the commands that pair cycles with characters, so
//! that a broken cycle reports the violated condition instead of a file
//! error.

use delcoh::characters::{
    make_character, make_relative, CharacterRep, RelCharacterRep, TypeTag,
};
use delcoh::report::sha256_hex;
use delcoh::simplicial::{
    Chain, Cochain, CoefficientRing, Simplex, SimplicialComplex, SimplicialMap, Vertex,
};
use num::{BigInt, BigRational};
use serde::Deserialize;
use serde_json::Value as JsonValue;
use std::collections::BTreeMap;
use std::str::FromStr;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// A failure while reading a workspace file.
#[derive(Debug)]
pub enum LoadError {
    /// The file could not be read at all.
    Io { message: String },
    /// A line was not a workspace record.
    Parse { line: usize, message: String },
    /// A record was structurally well formed but invalid.
    Validation { line: usize, message: String },
    /// A record referred to a name that is not defined in the file.
    Reference { line: usize, message: String },
}

impl LoadError {
    /// The process exit code this failure maps to.
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Io { .. } | LoadError::Parse { .. } | LoadError::Validation { .. } => 1,
            LoadError::Reference { .. } => 2,
        }
    }
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io { message } => write!(f, "{message}"),
            LoadError::Parse { line, message } => write!(f, "line {line}: {message}"),
            LoadError::Validation { line, message } => write!(f, "line {line}: {message}"),
            LoadError::Reference { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Loaded contents
// ---------------------------------------------------------------------------

/// A named character: absolute on a complex or relative on a map.
pub enum CharacterEntry {
    /// A character on a single named complex.
    Absolute {
        complex: String,
        character: CharacterRep,
    },
    /// A relative representative on a named map.
    Relative {
        map: String,
        character: RelCharacterRep,
    },
}

/// A named cycle: an absolute chain or a relative chain pair. Closure is
/// checked by the commands that use the cycle.
pub enum CycleEntry {
    /// A chain on a single named complex.
    Absolute { complex: String, chain: Chain },
    /// A chain on the target paired with a chain on the source.
    Relative {
        map: String,
        chain_x: Chain,
        chain_y: Chain,
    },
}

/// A fully loaded and validated workspace.
pub struct Workspace {
    pub complexes: BTreeMap<String, SimplicialComplex>,
    pub maps: BTreeMap<String, SimplicialMap>,
    pub characters: BTreeMap<String, CharacterEntry>,
    pub cycles: BTreeMap<String, CycleEntry>,
    /// Hash of the raw file bytes, echoed into verification reports.
    pub sha256: String,
}

// ---------------------------------------------------------------------------
// Raw records
// ---------------------------------------------------------------------------

type CochainMap = BTreeMap<String, JsonValue>;

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawRecord {
    Complex {
        name: String,
        simplices: Vec<Vec<Vertex>>,
    },
    Map {
        name: String,
        source: String,
        target: String,
        vertices: BTreeMap<String, Vertex>,
    },
    Character {
        name: String,
        degree: usize,
        #[serde(default)]
        complex: Option<String>,
        #[serde(default)]
        map: Option<String>,
        #[serde(default)]
        tag: Option<String>,
        #[serde(default)]
        lift: Option<CochainMap>,
        #[serde(default)]
        chern: Option<CochainMap>,
        #[serde(default)]
        lift_x: Option<CochainMap>,
        #[serde(default)]
        lift_y: Option<CochainMap>,
        #[serde(default)]
        chern_x: Option<CochainMap>,
        #[serde(default)]
        chern_y: Option<CochainMap>,
    },
    Cycle {
        name: String,
        degree: usize,
        #[serde(default)]
        complex: Option<String>,
        #[serde(default)]
        map: Option<String>,
        #[serde(default)]
        chain: Option<CochainMap>,
        #[serde(default)]
        chain_x: Option<CochainMap>,
        #[serde(default)]
        chain_y: Option<CochainMap>,
    },
}

// ---------------------------------------------------------------------------
// Value parsing
// ---------------------------------------------------------------------------

fn parse_simplex(key: &str) -> Result<Simplex, String> {
    let t = key.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("simplex key {t:?} must look like \"[0,1]\""))?;
    let mut out: Simplex = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        let v = part
            .parse::<Vertex>()
            .map_err(|_| format!("bad vertex {part:?} in simplex key {t:?}"))?;
        out.push(v);
    }
    Ok(out)
}

fn parse_rational(v: &JsonValue) -> Result<BigRational, String> {
    match v {
        JsonValue::Number(n) => {
            let i = n.as_i64().ok_or_else(|| {
                format!("numeric value {n} is not an integer; write fractions as \"num/den\"")
            })?;
            Ok(BigRational::from_integer(BigInt::from(i)))
        }
        JsonValue::String(s) => BigRational::from_str(s.trim())
            .map_err(|_| format!("cannot parse rational {s:?} (expected \"num\" or \"num/den\")")),
        other => Err(format!(
            "expected an integer or a \"num/den\" string, got {other}"
        )),
    }
}

fn parse_integer(v: &JsonValue) -> Result<i64, String> {
    match v {
        JsonValue::Number(n) => n
            .as_i64()
            .ok_or_else(|| format!("coefficient {n} is not an integer")),
        JsonValue::String(s) => s
            .trim()
            .parse::<i64>()
            .map_err(|_| format!("cannot parse integer coefficient {s:?}")),
        other => Err(format!("expected an integer coefficient, got {other}")),
    }
}

fn parse_tag(tag: &str) -> Result<TypeTag, String> {
    match tag {
        "I" => Ok(TypeTag::I),
        "II" => Ok(TypeTag::II),
        "II'" => Ok(TypeTag::IIPrime),
        "III" => Ok(TypeTag::IIIOrbit),
        "IV" => Ok(TypeTag::IVCoset),
        other => Err(format!(
            "unknown character tag {other:?} (expected I, II, II', III or IV)"
        )),
    }
}

fn cochain_from_map(
    k: &SimplicialComplex,
    degree: usize,
    ring: CoefficientRing,
    field: &str,
    m: Option<&CochainMap>,
) -> Result<Cochain, String> {
    let m = m.ok_or_else(|| format!("missing cochain field {field:?}"))?;
    let mut pairs: Vec<(Simplex, BigRational)> = Vec::new();
    for (key, val) in m {
        let s = parse_simplex(key).map_err(|e| format!("{field}: {e}"))?;
        let v = parse_rational(val).map_err(|e| format!("{field}[{key}]: {e}"))?;
        pairs.push((s, v));
    }
    Cochain::from_pairs(k, degree, ring, &pairs).map_err(|e| format!("{field}: {e}"))
}

fn chain_from_map(
    k: &SimplicialComplex,
    degree: usize,
    field: &str,
    m: Option<&CochainMap>,
) -> Result<Chain, String> {
    let m = m.ok_or_else(|| format!("missing chain field {field:?}"))?;
    let mut pairs: Vec<(Simplex, i64)> = Vec::new();
    for (key, val) in m {
        let s = parse_simplex(key).map_err(|e| format!("{field}: {e}"))?;
        let v = parse_integer(val).map_err(|e| format!("{field}[{key}]: {e}"))?;
        pairs.push((s, v));
    }
    Chain::from_pairs(k, degree, &pairs).map_err(|e| format!("{field}: {e}"))
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

impl Workspace {
    /// Reads and validates a workspace file.
    pub fn load(path: &std::path::Path) -> Result<Workspace, LoadError> {
        let bytes = std::fs::read(path).map_err(|e| LoadError::Io {
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| LoadError::Io {
            message: format!("{} is not valid UTF-8", path.display()),
        })?;
        let mut ws = Workspace {
            complexes: BTreeMap::new(),
            maps: BTreeMap::new(),
            characters: BTreeMap::new(),
            cycles: BTreeMap::new(),
            sha256: sha256_hex(&bytes),
        };
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw_line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let record: RawRecord =
                serde_json::from_str(trimmed).map_err(|e| LoadError::Parse {
                    line,
                    message: e.to_string(),
                })?;
            ws.add_record(line, record)?;
        }
        Ok(ws)
    }

    fn add_record(&mut self, line: usize, record: RawRecord) -> Result<(), LoadError> {
        let invalid = |message: String| LoadError::Validation { line, message };
        match record {
            RawRecord::Complex { name, simplices } => {
                let k = SimplicialComplex::new(simplices)
                    .map_err(|e| invalid(format!("complex {name:?}: {e}")))?;
                self.insert_unique(line, "complex", name, |ws, n| {
                    ws.complexes.insert(n, k);
                })
            }
            RawRecord::Map {
                name,
                source,
                target,
                vertices,
            } => {
                let src = self.lookup_complex(line, &source)?.clone();
                let tgt = self.lookup_complex(line, &target)?.clone();
                let mut vm: BTreeMap<Vertex, Vertex> = BTreeMap::new();
                for (k, v) in vertices {
                    let key = k.trim().parse::<Vertex>().map_err(|_| {
                        invalid(format!("map {name:?}: bad vertex key {k:?}"))
                    })?;
                    vm.insert(key, v);
                }
                let f = SimplicialMap::new(src, tgt, vm)
                    .map_err(|e| invalid(format!("map {name:?}: {e}")))?;
                self.insert_unique(line, "map", name, |ws, n| {
                    ws.maps.insert(n, f);
                })
            }
            RawRecord::Character {
                name,
                degree,
                complex,
                map,
                tag,
                lift,
                chern,
                lift_x,
                lift_y,
                chern_x,
                chern_y,
            } => {
                let entry = match (complex, map) {
                    (Some(cname), None) => {
                        let k = self.lookup_complex(line, &cname)?.clone();
                        let t = cochain_from_map(
                            &k,
                            degree,
                            CoefficientRing::Q,
                            "lift",
                            lift.as_ref(),
                        )
                        .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        let c = cochain_from_map(
                            &k,
                            degree + 1,
                            CoefficientRing::Z,
                            "chern",
                            chern.as_ref(),
                        )
                        .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        let character = make_character(&k, t, c)
                            .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        CharacterEntry::Absolute {
                            complex: cname,
                            character,
                        }
                    }
                    (None, Some(mname)) => {
                        let f = self.lookup_map(line, &mname)?.clone();
                        let tag = tag.as_deref().unwrap_or("II");
                        let tag = parse_tag(tag)
                            .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        if degree == 0 {
                            return Err(invalid(format!(
                                "character {name:?}: relative characters need degree >= 1"
                            )));
                        }
                        let t_x = cochain_from_map(
                            &f.target,
                            degree,
                            CoefficientRing::Q,
                            "lift_x",
                            lift_x.as_ref(),
                        )
                        .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        let t_y = cochain_from_map(
                            &f.source,
                            degree - 1,
                            CoefficientRing::Q,
                            "lift_y",
                            lift_y.as_ref(),
                        )
                        .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        let c_x = cochain_from_map(
                            &f.target,
                            degree + 1,
                            CoefficientRing::Z,
                            "chern_x",
                            chern_x.as_ref(),
                        )
                        .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        let c_y = cochain_from_map(
                            &f.source,
                            degree,
                            CoefficientRing::Z,
                            "chern_y",
                            chern_y.as_ref(),
                        )
                        .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        let character = make_relative(&f, t_x, t_y, c_x, c_y, tag)
                            .map_err(|e| invalid(format!("character {name:?}: {e}")))?;
                        CharacterEntry::Relative {
                            map: mname,
                            character,
                        }
                    }
                    _ => {
                        return Err(invalid(format!(
                            "character {name:?} must name exactly one of \"complex\" or \"map\""
                        )))
                    }
                };
                self.insert_unique(line, "character", name, |ws, n| {
                    ws.characters.insert(n, entry);
                })
            }
            RawRecord::Cycle {
                name,
                degree,
                complex,
                map,
                chain,
                chain_x,
                chain_y,
            } => {
                let entry = match (complex, map) {
                    (Some(cname), None) => {
                        let k = self.lookup_complex(line, &cname)?.clone();
                        let z = chain_from_map(&k, degree, "chain", chain.as_ref())
                            .map_err(|e| invalid(format!("cycle {name:?}: {e}")))?;
                        CycleEntry::Absolute {
                            complex: cname,
                            chain: z,
                        }
                    }
                    (None, Some(mname)) => {
                        let f = self.lookup_map(line, &mname)?.clone();
                        if degree == 0 {
                            return Err(invalid(format!(
                                "cycle {name:?}: relative cycles need degree >= 1"
                            )));
                        }
                        let cx = chain_from_map(&f.target, degree, "chain_x", chain_x.as_ref())
                            .map_err(|e| invalid(format!("cycle {name:?}: {e}")))?;
                        let cy = chain_from_map(
                            &f.source,
                            degree - 1,
                            "chain_y",
                            chain_y.as_ref(),
                        )
                        .map_err(|e| invalid(format!("cycle {name:?}: {e}")))?;
                        CycleEntry::Relative {
                            map: mname,
                            chain_x: cx,
                            chain_y: cy,
                        }
                    }
                    _ => {
                        return Err(invalid(format!(
                            "cycle {name:?} must name exactly one of \"complex\" or \"map\""
                        )))
                    }
                };
                self.insert_unique(line, "cycle", name, |ws, n| {
                    ws.cycles.insert(n, entry);
                })
            }
        }
    }

    fn insert_unique(
        &mut self,
        line: usize,
        kind: &str,
        name: String,
        insert: impl FnOnce(&mut Workspace, String),
    ) -> Result<(), LoadError> {
        let exists = match kind {
            "complex" => self.complexes.contains_key(&name),
            "map" => self.maps.contains_key(&name),
            "character" => self.characters.contains_key(&name),
            _ => self.cycles.contains_key(&name),
        };
        if exists {
            return Err(LoadError::Validation {
                line,
                message: format!("duplicate {kind} name {name:?}"),
            });
        }
        insert(self, name);
        Ok(())
    }

    fn lookup_complex(&self, line: usize, name: &str) -> Result<&SimplicialComplex, LoadError> {
        self.complexes.get(name).ok_or_else(|| LoadError::Reference {
            line,
            message: format!("unknown complex {name:?}"),
        })
    }

    fn lookup_map(&self, line: usize, name: &str) -> Result<&SimplicialMap, LoadError> {
        self.maps.get(name).ok_or_else(|| LoadError::Reference {
            line,
            message: format!("unknown map {name:?}"),
        })
    }
}
