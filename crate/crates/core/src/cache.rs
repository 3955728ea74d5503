//! On-disk cache for the group and the invariants.
//!
//! Group files: a header line, the generator and element counts, then one
//! matrix per line. Polynomial files: a header line naming the variable set,
//! then the polynomial text format.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::matrix::Matrix4;
use crate::poly::{Polynomial, VarSet};

pub const FORMAT_VERSION: u32 = 1;
const GROUP_MAGIC: &str = "symwald-group";
const POLY_MAGIC: &str = "symwald-poly";

fn header(magic: &str, extra: &str) -> String {
    format!("{magic} v{FORMAT_VERSION} {extra}").trim_end().to_string()
}

fn check_header<'a>(line: Option<&'a str>, magic: &str) -> Result<Vec<&'a str>> {
    let line = line.ok_or_else(|| Error::Cache("empty file".into()))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(magic) {
        return Err(Error::Cache(format!("not a {magic} file")));
    }
    let version = parts.next().unwrap_or("");
    if version != format!("v{FORMAT_VERSION}") {
        return Err(Error::Cache(format!("version {version}, expected v{FORMAT_VERSION}")));
    }
    Ok(parts.collect())
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    fs::rename(tmp, path)?;
    Ok(())
}

pub fn group_to_text(g: &MatrixGroup) -> String {
    let mut s = header(GROUP_MAGIC, "");
    s.push('\n');
    s.push_str(&format!("generators {}\nelements {}\n", g.generators().len(), g.order()));
    for m in g.generators().iter().chain(g.elements()) {
        s.push_str(&m.canonical_string());
        s.push('\n');
    }
    s
}

fn count(line: Option<&str>, key: &str) -> Result<usize> {
    let line = line.ok_or_else(|| Error::Cache(format!("missing {key} line")))?;
    let (k, v) = line.split_once(' ').ok_or_else(|| Error::Cache(format!("bad {key} line")))?;
    if k != key {
        return Err(Error::Cache(format!("expected {key}, found {k}")));
    }
    v.trim().parse().map_err(|_| Error::Cache(format!("bad {key} count {v:?}")))
}

pub fn group_from_text(text: &str) -> Result<MatrixGroup> {
    let mut lines = text.lines();
    check_header(lines.next(), GROUP_MAGIC)?;
    let ngen = count(lines.next(), "generators")?;
    let n = count(lines.next(), "elements")?;
    let mats: Vec<Matrix4> = lines.filter(|l| !l.is_empty()).map(Matrix4::parse_canonical).collect::<Result<_>>()?;
    if mats.len() != ngen + n {
        return Err(Error::Cache(format!("expected {} matrices, found {}", ngen + n, mats.len())));
    }
    let mut mats = mats;
    let elements = mats.split_off(ngen);
    MatrixGroup::from_elements(mats, elements)
}

pub fn save_group(path: &Path, g: &MatrixGroup) -> Result<()> {
    write_atomic(path, &group_to_text(g))
}

pub fn load_group(path: &Path) -> Result<MatrixGroup> {
    group_from_text(&fs::read_to_string(path)?)
}

pub fn polynomial_to_text(p: &Polynomial) -> String {
    format!("{}\n{}", header(POLY_MAGIC, p.vars().tag()), p.to_text())
}

pub fn polynomial_from_text(text: &str) -> Result<Polynomial> {
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let extra = check_header(Some(first), POLY_MAGIC)?;
    let vars = VarSet::from_tag(extra.first().ok_or_else(|| Error::Cache("missing variable tag".into()))?)?;
    Polynomial::from_text(vars, rest)
}

pub fn save_polynomial(path: &Path, p: &Polynomial) -> Result<()> {
    write_atomic(path, &polynomial_to_text(p))
}

pub fn load_polynomial(path: &Path) -> Result<Polynomial> {
    polynomial_from_text(&fs::read_to_string(path)?)
}

/// A directory of cache files; `None` disables caching.
#[derive(Clone, Debug, Default)]
pub struct CacheDir(pub Option<PathBuf>);

impl CacheDir {
    pub fn path(&self, name: &str) -> Option<PathBuf> {
        self.0.as_ref().map(|d| d.join(name))
    }

    /// Loads `name` if present and valid, else builds and stores it. Load
    /// failures are recorded in `warnings` and trigger a rebuild.
    pub fn load_or_build<T>(
        &self,
        name: &str,
        load: impl FnOnce(&Path) -> Result<T>,
        build: impl FnOnce() -> Result<T>,
        save: impl FnOnce(&Path, &T) -> Result<()>,
        warnings: &mut Vec<String>,
    ) -> Result<T> {
        let Some(path) = self.path(name) else { return build() };
        if path.exists() {
            match load(&path) {
                Ok(v) => return Ok(v),
                Err(e) => warnings.push(format!("cache file {} unusable ({e}); rebuilding", path.display())),
            }
        }
        let v = build()?;
        if let Err(e) = save(&path, &v) {
            warnings.push(format!("could not write cache file {}: {e}", path.display()));
        }
        Ok(v)
    }
}
