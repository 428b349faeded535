use std::fs;
use std::io::Write;
use std::sync::{Arc, OnceLock};

use anyhow::{anyhow, bail, Context as _, Result};
use serde::Serialize;

use descent_core::algebra::SCHEMA_VERSION;
use descent_core::characters;
use descent_core::radical::{self, RadicalBasis};
use descent_core::typea;
use descent_core::verify;
use descent_core::{AlgebraElement, CoxeterSystem, Group, GroupType, Prime, ResourceBound, ScalarMode, StructureTable};

use crate::cache;
use crate::{Common, Format};

pub struct Context {
    common: Common,
    group: OnceLock<Arc<Group>>,
}

#[derive(Serialize)]
struct TableSummary {
    group_type: String,
    n: usize,
    schema_version: u32,
    dim: usize,
    basis: Vec<String>,
    nonzero_constants: usize,
    cache_file: String,
}

#[derive(Serialize)]
struct Term {
    label: String,
    coefficient: i64,
}

#[derive(Serialize)]
struct Product {
    group_type: String,
    n: usize,
    p: Option<u64>,
    a: String,
    b: String,
    product: Vec<Term>,
    text: String,
}

#[derive(Serialize)]
struct RadicalOutput {
    n: usize,
    p: Option<u64>,
    spanning_set: Vec<Vec<(String, i64)>>,
    is_ideal: bool,
    nilpotency_index: Option<usize>,
    quotient_dim: usize,
    #[serde(rename = "matches_aJJJ_criterion")]
    matches_a_jjj_criterion: Option<bool>,
}

#[derive(Serialize)]
struct CharactersOutput {
    n: usize,
    representatives: Vec<String>,
    entries: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modular: Option<ModularOutput>,
}

#[derive(Serialize)]
struct ModularOutput {
    p: u64,
    entries: Vec<Vec<u64>>,
    distinct_columns: Vec<String>,
    indexing_labels: Vec<String>,
    indexing_labels_match: bool,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    #[serde(flatten)]
    report: &'a verify::Report,
}

#[derive(Serialize)]
struct TypeaOutput {
    operation: &'static str,
    kappa: Vec<usize>,
    nu: Vec<usize>,
    terms: Vec<TypeaTerm>,
}

#[derive(Serialize)]
struct TypeaTerm {
    composition: Vec<usize>,
    multiplicity: u64,
}

fn bracketed(parts: &[usize]) -> String {
    format!("[{}]", parts.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn parse_parts(text: &str) -> Result<Vec<usize>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| anyhow!("expected a composition like [2,1,1], got {text:?}"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad component in {text:?}")))
        .collect()
}

impl Context {
    pub fn new(common: Common) -> Self {
        Context {
            common,
            group: OnceLock::new(),
        }
    }

    fn system(&self) -> Result<CoxeterSystem> {
        let n = self.common.n.ok_or_else(|| anyhow!("--n is required"))?;
        Ok(CoxeterSystem::new(self.common.group_type, n)?)
    }

    fn bound(&self) -> ResourceBound {
        self.common
            .max_n_override
            .map(ResourceBound::overridden)
            .unwrap_or_default()
    }

    fn prime(&self) -> Result<Option<Prime>> {
        Ok(self.common.p.map(Prime::new).transpose()?)
    }

    fn group(&self) -> Result<Arc<Group>> {
        if let Some(g) = self.group.get() {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(Group::enumerate(self.system()?, self.bound())?);
        Ok(Arc::clone(self.group.get_or_init(|| g)))
    }

    fn table_and_path(&self) -> Result<(Arc<StructureTable>, String)> {
        let system = self.system()?;
        // the rank bound applies even when the table is cached
        let limit = match system.group_type() {
            GroupType::A => self.bound().max_rank_a,
            GroupType::D => self.bound().max_rank_d,
        };
        if system.n() > limit {
            return Err(descent_core::Error::ResourceBound {
                what: "rank",
                limit,
                requested: system.n(),
            }
            .into());
        }
        let table = cache::load_or_build(&self.common.cache_dir, system, || self.group())?;
        Ok((table, cache::path_for(&self.common.cache_dir, system).display().to_string()))
    }

    fn emit(&self, bytes: Vec<u8>) -> Result<()> {
        match &self.common.out {
            Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(&bytes)?;
                out.flush()?;
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.emit(bytes)
    }

    fn emit_csv(&self, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        self.emit(w.into_inner().map_err(|e| anyhow!("{e}"))?)
    }

    pub fn table(&self) -> Result<bool> {
        let (table, cache_file) = self.table_and_path()?;
        let dim = table.dim();
        let labels: Vec<String> = table.basis().iter().map(ToString::to_string).collect();
        match self.common.format {
            Format::Json => {
                let nonzero = (0..dim * dim).map(|t| table.product(t / dim, t % dim).len()).sum();
                self.emit_json(&TableSummary {
                    group_type: table.group_type().to_string(),
                    n: table.n(),
                    schema_version: SCHEMA_VERSION,
                    dim,
                    basis: labels,
                    nonzero_constants: nonzero,
                    cache_file,
                })?
            }
            Format::Csv => {
                let header = ["left", "right", "result", "coefficient"].map(String::from);
                let rows = (0..dim * dim).flat_map(|t| {
                    let (i, j) = (t / dim, t % dim);
                    let labels = &labels;
                    table.product(i, j).iter().map(move |&(k, c)| {
                        vec![labels[i].clone(), labels[j].clone(), labels[k as usize].clone(), c.to_string()]
                    })
                });
                self.emit_csv(&header, rows)?
            }
        }
        Ok(true)
    }

    pub fn multiply(&self, a: &str, b: &str) -> Result<bool> {
        let (table, _) = self.table_and_path()?;
        let mode = match self.prime()? {
            Some(p) => ScalarMode::Modular(p),
            None => ScalarMode::Integer,
        };
        let i = table.label_index(a)?;
        let j = table.label_index(b)?;
        let product = AlgebraElement::basis(&table, i, mode).multiply(&AlgebraElement::basis(&table, j, mode))?;
        let terms: Vec<Term> = product
            .dump()
            .into_iter()
            .map(|(label, coefficient)| Term { label, coefficient })
            .collect();
        match self.common.format {
            Format::Json => self.emit_json(&Product {
                group_type: table.group_type().to_string(),
                n: table.n(),
                p: mode.modulus(),
                a: table.basis()[i].to_string(),
                b: table.basis()[j].to_string(),
                text: product.to_string(),
                product: terms,
            })?,
            Format::Csv => self.emit_csv(
                &["label".into(), "coefficient".into()],
                terms.into_iter().map(|t| vec![t.label, t.coefficient.to_string()]),
            )?,
        }
        Ok(true)
    }

    fn require_d(&self, what: &str) -> Result<()> {
        if self.common.group_type != GroupType::D {
            bail!("{what} is only available for type D");
        }
        Ok(())
    }

    pub fn radical(&self) -> Result<bool> {
        self.require_d("radical")?;
        let (table, _) = self.table_and_path()?;
        let p = self.prime()?;
        let (basis, matches): (RadicalBasis, Option<bool>) = match p {
            None => (radical::radical_char0(&table)?, None),
            Some(p) => {
                let basis = radical::radical_mod_p(&table, p)?;
                let via = radical::radical_mod_p_via_a_jjj(&table, &*self.group()?, p)?;
                let same = basis.span_equal(&via)?;
                (basis, Some(same))
            }
        };
        let report = radical::verify_ideal(&basis);
        let ok = report.is_ideal() && report.is_nilpotent() && matches != Some(false);
        let dumps: Vec<Vec<(String, i64)>> = basis.spanning_set().iter().map(AlgebraElement::dump).collect();
        match self.common.format {
            Format::Json => self.emit_json(&RadicalOutput {
                n: table.n(),
                p: p.map(Prime::get),
                spanning_set: dumps,
                is_ideal: report.is_ideal(),
                nilpotency_index: report.nilpotency_index,
                quotient_dim: report.quotient_dim,
                matches_a_jjj_criterion: matches,
            })?,
            Format::Csv => self.emit_csv(
                &["element".into(), "label".into(), "coefficient".into()],
                dumps.into_iter().enumerate().flat_map(|(e, terms)| {
                    terms
                        .into_iter()
                        .map(move |(l, c)| vec![e.to_string(), l, c.to_string()])
                }),
            )?,
        }
        if !ok {
            eprintln!(
                "verification failed: ideal {}, nilpotent {}, matches a_JJJ criterion {:?}",
                report.is_ideal(),
                report.is_nilpotent(),
                matches
            );
        }
        Ok(ok)
    }

    pub fn characters(&self) -> Result<bool> {
        self.require_d("characters")?;
        let group = self.group()?;
        let matrix = characters::character_matrix(&group)?;
        let reps: Vec<String> = matrix.representatives.iter().map(ToString::to_string).collect();
        let modular = match self.prime()? {
            None => None,
            Some(p) => {
                let irr = characters::irreducibles_mod_p(&matrix, &group, p)?;
                Some(ModularOutput {
                    p: p.get(),
                    entries: matrix.reduced(p),
                    distinct_columns: irr.column_labels.iter().map(ToString::to_string).collect(),
                    indexing_labels: irr.representatives.iter().map(ToString::to_string).collect(),
                    indexing_labels_match: irr.representatives_match,
                })
            }
        };
        let ok = modular.as_ref().map_or(true, |m| m.indexing_labels_match);
        match self.common.format {
            Format::Json => self.emit_json(&CharactersOutput {
                n: matrix.n,
                representatives: reps,
                entries: matrix.entries.clone(),
                modular,
            })?,
            Format::Csv => {
                let entries = modular.map_or_else(|| matrix.entries.clone(), |m| m.entries);
                let header: Vec<String> = std::iter::once("label".to_string()).chain(reps.iter().cloned()).collect();
                self.emit_csv(
                    &header,
                    reps.iter().zip(entries).map(|(label, row)| {
                        std::iter::once(label.clone())
                            .chain(row.iter().map(ToString::to_string))
                            .collect()
                    }),
                )?
            }
        }
        Ok(ok)
    }

    pub fn verify(&self) -> Result<bool> {
        let (table, _) = self.table_and_path()?;
        let group = self.group()?;
        let report = verify::run(&group, &table, self.prime()?)?;
        let passed = report.passed();
        match self.common.format {
            Format::Json => self.emit_json(&VerifyOutput { passed, report: &report })?,
            Format::Csv => self.emit_csv(
                &["check".into(), "status".into(), "detail".into()],
                report.checks.iter().map(|c| {
                    let status = serde_json::to_value(c.status).expect("status serializes");
                    vec![c.name.clone(), status.as_str().unwrap_or_default().to_string(), c.detail.clone()]
                }),
            )?,
        }
        if let Some(f) = report.first_failure() {
            eprintln!("verification failed: {f}");
        }
        Ok(passed)
    }

    pub fn typea(&self, a: &str, b: &str, lie: bool) -> Result<bool> {
        let kappa = parse_parts(a)?;
        let nu = parse_parts(b)?;
        let terms = if lie {
            typea::lie_action(&kappa, &nu)?
        } else {
            typea::multiply_sn(&kappa, &nu)?
        };
        match self.common.format {
            Format::Json => self.emit_json(&TypeaOutput {
                operation: if lie { "lie-action" } else { "multiply" },
                kappa,
                nu,
                terms: terms
                    .into_iter()
                    .map(|(composition, multiplicity)| TypeaTerm { composition, multiplicity })
                    .collect(),
            })?,
            Format::Csv => self.emit_csv(
                &["composition".into(), "multiplicity".into()],
                terms.into_iter().map(|(c, m)| vec![bracketed(&c), m.to_string()]),
            )?,
        }
        Ok(true)
    }
}
