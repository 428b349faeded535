use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use descent_core::algebra::{build_table_from_group, TableFile, SCHEMA_VERSION};
use descent_core::{CoxeterSystem, Group, StructureTable};

/// Cache file for one `(schema_version, group_type, n)`.
pub fn path_for(dir: &Path, system: CoxeterSystem) -> PathBuf {
    dir.join(format!(
        "table-v{SCHEMA_VERSION}-{}{}.json",
        system.group_type(),
        system.n()
    ))
}

fn load(path: &Path, system: CoxeterSystem) -> Result<StructureTable> {
    let bytes = fs::read(path)?;
    let file = TableFile::from_bytes(&bytes)?;
    if file.group_type != system.group_type().to_string() || file.n != system.n() {
        anyhow::bail!("file describes {}{}", file.group_type, file.n);
    }
    Ok(file.into_table()?)
}

fn store(path: &Path, table: &StructureTable) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, TableFile::from_table(table).to_bytes())?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// The table for `system`, from the cache when a valid file is present,
/// otherwise built from the group and written back.
pub fn load_or_build(
    dir: &Path,
    system: CoxeterSystem,
    group: impl FnOnce() -> Result<Arc<Group>>,
) -> Result<Arc<StructureTable>> {
    let path = path_for(dir, system);
    if path.exists() {
        match load(&path, system) {
            Ok(table) => return Ok(Arc::new(table)),
            Err(e) => eprintln!("warning: ignoring cache file {}: {e:#}; rebuilding", path.display()),
        }
    }
    let table = build_table_from_group(&*group()?).context("building structure table")?;
    if let Err(e) = store(&path, &table) {
        eprintln!("warning: could not write cache file {}: {e:#}", path.display());
    }
    Ok(table)
}
