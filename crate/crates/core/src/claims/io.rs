//! Lattice files: JSON with `name`, `gram`, and optionally `ambient` (a
//! named lattice) plus `basis` (rows are basis vectors in ambient
//! coordinates). Integers outside the `i64` range are written as strings.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{to_i64, IntMatrix};
use crate::glue::{build_named, NamedLattice};
use crate::lattice::{Embedding, Lattice};

/// An integer that reads from a JSON number or decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match to_i64(&self.0) {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                write!(f, "an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim().parse().map(JsonInt).map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub name: String,
    pub gram: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<JsonInt>>>,
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(JsonInt).collect()).collect()
}

fn from_rows(rows: &[Vec<JsonInt>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect()
}

impl LatticeFile {
    pub fn from_lattice(l: &Lattice) -> Self {
        let mut f = LatticeFile {
            name: l.name().unwrap_or("unnamed").to_string(),
            gram: to_rows(l.gram()),
            ambient: None,
            basis: None,
        };
        if let Some(e) = l.embedding() {
            let named = e.ambient.name().and_then(|n| n.parse::<NamedLattice>().ok());
            if let Some(n) = named {
                f.ambient = Some(n.to_string());
                f.basis = Some(to_rows(&e.basis.transpose()));
            }
        }
        f
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let rows = from_rows(&self.gram);
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "gram row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        let gram = if n == 0 { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(rows)? };
        let mut l = Lattice::new(gram)?.named(self.name.clone());
        match (&self.ambient, &self.basis) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                let ambient = build_named(&a.parse()?)?;
                let vectors = from_rows(b);
                if vectors.len() != n {
                    return Err(Error::DimensionMismatch(format!("{} basis vectors for rank {n}", vectors.len())));
                }
                let sub = ambient.sublattice(&vectors)?;
                if sub.gram() != l.gram() {
                    return Err(Error::DimensionMismatch("gram does not match the basis in the ambient".into()));
                }
                let basis = IntMatrix::from_columns(ambient.rank(), &vectors)?;
                l = l.with_embedding(Embedding { ambient: Arc::new(ambient), basis });
            }
            _ => return Err(Error::InvalidParameter("ambient and basis must be given together".into())),
        }
        Ok(l)
    }
}

pub fn parse(text: &str) -> Result<Lattice> {
    let f: LatticeFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    f.to_lattice()
}

fn matrix_json(rows: &[Vec<JsonInt>]) -> String {
    let body: Vec<String> =
        rows.iter().map(|r| format!("    {}", serde_json::to_string(r).expect("row serializes"))).collect();
    if body.is_empty() {
        "[]".into()
    } else {
        format!("[\n{}\n  ]", body.join(",\n"))
    }
}

/// JSON text with one matrix row per line.
pub fn to_json(l: &Lattice) -> String {
    let f = LatticeFile::from_lattice(l);
    let str_json = |s: &str| serde_json::to_string(s).expect("string serializes");
    let mut fields =
        vec![format!("  \"name\": {}", str_json(&f.name)), format!("  \"gram\": {}", matrix_json(&f.gram))];
    if let (Some(a), Some(b)) = (&f.ambient, &f.basis) {
        fields.push(format!("  \"ambient\": {}", str_json(a)));
        fields.push(format!("  \"basis\": {}", matrix_json(b)));
    }
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

pub fn load(path: impl AsRef<Path>) -> Result<Lattice> {
    parse(&fs::read_to_string(path)?)
}

pub fn save(l: &Lattice, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(l))?;
    Ok(())
}

/// The shipped corpus: `$K3LATTICE_DATA`, or `data/` next to this crate.
pub fn data_dir() -> PathBuf {
    std::env::var_os("K3LATTICE_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data"))
}

pub fn load_data(file: &str) -> Result<Lattice> {
    load(data_dir().join(file))
}
