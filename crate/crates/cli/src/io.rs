//! Reading quiver and sequence files.

use isoschur::quiver::QuiverFile;
use isoschur::{DimVector, Error, Quiver, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

pub fn load_quiver(path: &Path) -> Result<Quiver> {
    Quiver::parse_json(&read_text(path)?).map_err(|e| match e {
        Error::Invalid(m) => Error::invalid(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// The quiver of a sequence file: a path relative to the file, or inline.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(untagged)]
pub enum QuiverRef {
    Path(String),
    Inline(QuiverFile),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub quiver: QuiverRef,
    pub classes: Vec<DimVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

impl SequenceFile {
    pub fn resolve(&self, dir: &Path) -> Result<Quiver> {
        match &self.quiver {
            QuiverRef::Path(p) => load_quiver(&dir.join(p)),
            QuiverRef::Inline(f) => Quiver::from_file(f),
        }
    }

    pub fn inline(q: &Quiver, classes: Vec<DimVector>, position: Option<usize>) -> Self {
        SequenceFile { quiver: QuiverRef::Inline(q.to_file()), classes, position }
    }
}

pub fn load_sequence(path: &Path) -> Result<(Quiver, SequenceFile)> {
    let text = read_text(path)?;
    let file: SequenceFile =
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{}: sequence file: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let q = file.resolve(dir)?;
    Ok((q, file))
}

pub fn parse_vector(q: &Quiver, s: &str) -> Result<DimVector> {
    let d: DimVector = s.parse()?;
    if d.len() != q.n() {
        return Err(Error::DimensionMismatch { expected: q.n(), got: d.len() });
    }
    Ok(d)
}
