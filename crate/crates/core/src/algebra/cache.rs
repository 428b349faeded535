use serde::{Deserialize, Serialize};

use super::{Provenance, StructureTable};
use crate::coxeter::{CoxeterSystem, GroupType};
use crate::error::{Error, Result};
use crate::labels;

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form of a [`StructureTable`]. Constants are `[i, j, k, value]`
/// rows sorted by `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub schema_version: u32,
    pub group_type: String,
    pub n: usize,
    pub basis: Vec<String>,
    pub constants: Vec<[u64; 4]>,
}

impl TableFile {
    pub fn from_table(table: &StructureTable) -> Self {
        let dim = table.dim();
        let mut constants = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for &(k, v) in table.product(i, j) {
                    constants.push([i as u64, j as u64, k as u64, v]);
                }
            }
        }
        TableFile {
            schema_version: SCHEMA_VERSION,
            group_type: table.group_type().to_string(),
            n: table.n(),
            basis: table.basis().iter().map(|k| k.to_string()).collect(),
            constants,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec(self).expect("table file serializes");
        out.push(b'\n');
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| Error::Cache(e.to_string()))
    }

    /// Rebuilds the table, checking the schema version and that the basis is
    /// the canonical one for `(group_type, n)`.
    pub fn into_table(self) -> Result<StructureTable> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Cache(format!(
                "schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let ty: GroupType = self.group_type.parse()?;
        let system = CoxeterSystem::new(ty, self.n)?;
        let basis = labels::labels_for(system)?;
        let expected: Vec<String> = basis.iter().map(|k| k.to_string()).collect();
        if expected != self.basis {
            return Err(Error::Cache("basis is not canonical".into()));
        }
        let dim = basis.len() as u64;
        let mut products = vec![Vec::new(); basis.len() * basis.len()];
        let mut last: Option<[u64; 3]> = None;
        for [i, j, k, v] in self.constants {
            if i >= dim || j >= dim || k >= dim || v == 0 {
                return Err(Error::Cache(format!("bad entry [{i},{j},{k},{v}]")));
            }
            if last.is_some_and(|l| l >= [i, j, k]) {
                return Err(Error::Cache("entries not strictly sorted".into()));
            }
            last = Some([i, j, k]);
            products[(i * dim + j) as usize].push((k as u32, v));
        }
        Ok(StructureTable::assemble(system, basis, products, Provenance::Cache))
    }
}
