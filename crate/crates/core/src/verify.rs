//! Named checks over one `(type, n, p)`, each reported as pass, fail or
//! informational, with a counterexample on failure.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{self, GroupAlgebra, Prime, Provenance, StructureTable, MAX_CAYLEY_ORDER};
use crate::characters::{self, CharacterMatrix};
use crate::coxeter::{CoxeterSystem, GeneratorSet, Group, GroupType};
use crate::error::Result;
use crate::labels;
use crate::radical;
use crate::typea;

/// Triples tried when exhaustive associativity is too large.
const RANDOM_TRIPLES: usize = 4000;
const EXHAUSTIVE_DIM: usize = 16;
const SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
        }
    }

    fn from_failure(name: impl Into<String>, failure: Option<String>, ok_detail: impl Into<String>) -> Self {
        match failure {
            None => Check::new(name, true, ok_detail),
            Some(f) => Check::new(name, false, f),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub group_type: String,
    pub n: usize,
    pub primes: Vec<u64>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

/// Primes checked when none is given.
pub const DEFAULT_PRIMES: [u64; 3] = [2, 3, 5];

/// Runs every check that applies to the group. With `p` given only that
/// prime is used for the modular checks, otherwise [`DEFAULT_PRIMES`].
pub fn run(group: &Group, table: &Arc<StructureTable>, p: Option<Prime>) -> Result<Report> {
    let primes: Vec<Prime> = match p {
        Some(p) => vec![p],
        None => DEFAULT_PRIMES.iter().map(|&q| Prime::new(q)).collect::<Result<_>>()?,
    };
    let mut checks = Vec::new();
    checks.extend(group_checks(group));
    checks.extend(table_checks(group, table)?);
    match group.system().group_type() {
        GroupType::D => {
            checks.extend(label_checks(group)?);
            checks.extend(radical_checks(group, table, &primes)?);
        }
        GroupType::A => checks.extend(type_a_checks(table)?),
    }
    Ok(Report {
        group_type: group.system().group_type().to_string(),
        n: group.system().n(),
        primes: primes.iter().map(|p| p.get()).collect(),
        checks,
    })
}

/// Word lengths by breadth-first search on the Cayley graph.
pub fn bfs_lengths(group: &Group) -> Vec<usize> {
    let sys = group.system();
    let gens: Vec<_> = (0..sys.generator_count()).map(|b| sys.generator_by_bit(b)).collect();
    let mut dist = vec![usize::MAX; group.len()];
    let start = group.identity_index();
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for s in &gens {
            let j = group.index_of(&group.element(i).mul(s)).expect("closed under generators");
            if dist[j] == usize::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    dist
}

pub fn group_checks(group: &Group) -> Vec<Check> {
    let sys = group.system();
    let bfs = bfs_lengths(group);
    let length = (0..group.len())
        .find(|&i| sys.length(group.element(i)) != bfs[i])
        .map(|i| {
            let w = group.element(i);
            format!("{w}: formula {} vs word length {}", sys.length(w), bfs[i])
        });
    let descents = (0..group.len()).find_map(|i| {
        let w = group.element(i);
        let (mut right, mut left) = (GeneratorSet::EMPTY, GeneratorSet::EMPTY);
        for b in 0..sys.generator_count() {
            let s = sys.generator_by_bit(b);
            let ws = group.index_of(&w.mul(&s)).expect("group element");
            let sw = group.index_of(&s.mul(w)).expect("group element");
            if bfs[ws] < bfs[i] {
                right = right.with(b);
            }
            if bfs[sw] < bfs[i] {
                left = left.with(b);
            }
        }
        (right != group.right_descents(i) || left != group.left_descents(i)).then(|| {
            format!(
                "{w}: right {} vs {}, left {} vs {}",
                sys.format_set(group.right_descents(i)),
                sys.format_set(right),
                sys.format_set(group.left_descents(i)),
                sys.format_set(left)
            )
        })
    });
    vec![
        Check::new(
            "group.order",
            group.len() as u64 == sys.order(),
            format!("|W| = {}", group.len()),
        ),
        Check::from_failure("group.length_vs_bfs", length, format!("{} elements", group.len())),
        Check::from_failure("group.descents_vs_length", descents, format!("{} elements", group.len())),
    ]
}

fn table_checks(group: &Group, table: &Arc<StructureTable>) -> Result<Vec<Check>> {
    let dim = table.dim();
    let mut out = Vec::new();

    if group.len() <= MAX_CAYLEY_ORDER {
        let detail = match GroupAlgebra::new(group)?.solomon_constants() {
            Ok(c) => {
                let by_products = StructureTable::from_constants(group.system(), &c, Provenance::GroupAlgebra)?;
                (0..dim * dim)
                    .map(|t| (t / dim, t % dim))
                    .find(|&(i, j)| by_products.product(i, j) != table.product(i, j))
                    .map(|(i, j)| {
                        let b = table.basis();
                        format!(
                            "B{} B{}: table {:?} vs products {:?}",
                            b[i],
                            b[j],
                            table.product(i, j),
                            by_products.product(i, j)
                        )
                    })
            }
            Err(e) => Some(e.to_string()),
        };
        out.push(Check::from_failure(
            "algebra.method_agreement",
            detail,
            "table equals group-algebra products with Möbius extraction",
        ));
    } else {
        out.push(Check::info(
            "algebra.method_agreement",
            format!("skipped: |W| = {} exceeds {MAX_CAYLEY_ORDER}", group.len()),
        ));
    }

    let e = table.identity_index();
    let identity = (0..dim).find_map(|i| {
        let unit = vec![(i as u32, 1u64)];
        (table.product(e, i) != unit.as_slice() || table.product(i, e) != unit.as_slice())
            .then(|| format!("B[] B{0} or B{0} B[] is not B{0}", table.basis()[i]))
    });
    out.push(Check::from_failure("algebra.identity", identity, format!("B{} is the identity", table.basis()[e])));

    let counting = table.counting_identity_failures().first().map(|&(i, j)| {
        format!("row ({}, {})", table.basis()[i], table.basis()[j])
    });
    out.push(Check::from_failure("algebra.counting_identity", counting, "|X_J||X_K| = Σ a_JKL |X_L|"));

    let triples: Vec<(usize, usize, usize)> = if dim <= EXHAUSTIVE_DIM {
        (0..dim * dim * dim).map(|t| (t / (dim * dim), t / dim % dim, t % dim)).collect()
    } else {
        let mut rng = StdRng::seed_from_u64(SEED);
        (0..RANDOM_TRIPLES)
            .map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim)))
            .collect()
    };
    let assoc = triples.iter().find_map(|&(i, j, k)| {
        let left = mul_basis_right(table, &basis_product(table, i, j), k);
        let right = mul_basis_left(table, i, &basis_product(table, j, k));
        (left != right).then(|| {
            let b = table.basis();
            format!("(B{0} B{1}) B{2} ≠ B{0} (B{1} B{2})", b[i], b[j], b[k])
        })
    });
    let how = if dim <= EXHAUSTIVE_DIM { "all" } else { "random" };
    out.push(Check::from_failure(
        "algebra.associativity",
        assoc,
        format!("{} {how} basis triples", triples.len()),
    ));
    Ok(out)
}

fn basis_product(table: &StructureTable, i: usize, j: usize) -> Vec<u128> {
    let mut v = vec![0u128; table.dim()];
    for &(k, c) in table.product(i, j) {
        v[k as usize] += c as u128;
    }
    v
}

fn mul_basis_right(table: &StructureTable, a: &[u128], k: usize) -> Vec<u128> {
    let mut v = vec![0u128; table.dim()];
    for (i, &ai) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for &(l, c) in table.product(i, k) {
            v[l as usize] += ai * c as u128;
        }
    }
    v
}

fn mul_basis_left(table: &StructureTable, i: usize, b: &[u128]) -> Vec<u128> {
    let mut v = vec![0u128; table.dim()];
    for (j, &bj) in b.iter().enumerate().filter(|(_, x)| **x != 0) {
        for &(l, c) in table.product(i, j) {
            v[l as usize] += bj * c as u128;
        }
    }
    v
}

fn label_checks(group: &Group) -> Result<Vec<Check>> {
    let n = group.system().n();
    let all = labels::all_labels(n)?;
    let mut seen = vec![false; 1 << n];
    let mut bijection = None;
    for k in &all {
        let j = labels::subset_of(k);
        if std::mem::replace(&mut seen[j.bits() as usize], true) {
            bijection = Some(format!("{k} repeats subset {:#b}", j.bits()));
        } else if labels::composition_of(j, n).as_ref() != Ok(k) {
            bijection = Some(format!("{k} does not round-trip"));
        }
        if bijection.is_some() {
            break;
        }
    }
    if bijection.is_none() && !seen.iter().all(|&s| s) {
        bijection = Some("some subset has no label".into());
    }

    let roots = group.subset_conjugacy_classes();
    let root = |k: &labels::Composition| roots[labels::coset_subset(k).bits() as usize];
    let conj = all.iter().find_map(|a| {
        all.iter().find_map(|b| {
            (labels::equivalent(a, b) != (root(a) == root(b)))
                .then(|| format!("{a} ≈ {b} is {} but conjugacy says {}", labels::equivalent(a, b), root(a) == root(b)))
        })
    });
    let classes = labels::class_representatives(n)?.len();
    Ok(vec![
        Check::from_failure("labels.bijection", bijection, format!("{} labels", all.len())),
        Check::from_failure(
            "labels.equivalence_is_subset_conjugacy",
            conj,
            format!("{classes} classes"),
        ),
    ])
}

fn radical_checks(group: &Group, table: &Arc<StructureTable>, primes: &[Prime]) -> Result<Vec<Check>> {
    let n = group.system().n();
    let classes = labels::class_representatives(n)?.len();
    let mut out = Vec::new();

    let rad = radical::radical_char0(table)?;
    let report = radical::verify_ideal(&rad);
    out.push(ideal_check("radical.char0.ideal", &report));
    out.push(Check::new(
        "radical.char0.nilpotent",
        report.is_nilpotent(),
        match report.nilpotency_index {
            Some(k) => format!("index {k}"),
            None => "powers do not vanish".into(),
        },
    ));
    out.push(Check::new(
        "radical.char0.quotient_dim",
        report.quotient_dim == classes,
        format!("quotient {} vs {classes} classes", report.quotient_dim),
    ));

    let maps = characters::irreducible_maps(table, group)?;
    let vanish = rad.spanning_set().iter().find_map(|e| {
        maps.iter()
            .find(|m| !m.eval(e).is_zero())
            .map(|m| format!("θ_{} ({e}) ≠ 0", m.label))
    });
    out.push(Check::from_failure("characters.theta_vanishes_on_radical", vanish, format!("{} maps", maps.len())));

    let dim = table.dim();
    let hom = maps.iter().find_map(|m| {
        (0..dim * dim).find_map(|t| {
            let (i, j) = (t / dim, t % dim);
            let lhs: u128 = table
                .product(i, j)
                .iter()
                .map(|&(k, c)| c as u128 * m.value(k as usize) as u128)
                .sum();
            let rhs = m.value(i) as u128 * m.value(j) as u128;
            (lhs != rhs).then(|| format!("θ_{} on B{} B{}", m.label, table.basis()[i], table.basis()[j]))
        })
    });
    out.push(Check::from_failure("characters.theta_homomorphism", hom, "all basis pairs"));

    let matrix = characters::character_matrix(group)?;
    let distinct = matrix.distinct_columns(None).len();
    out.push(Check::new(
        "characters.distinct_columns",
        distinct == classes,
        format!("{distinct} distinct columns, {classes} classes"),
    ));
    if group.len() <= MAX_CAYLEY_ORDER {
        out.push(orbit_check(group));
    } else {
        out.push(Check::info(
            "characters.orbit_count",
            format!("skipped: |W| = {} exceeds {MAX_CAYLEY_ORDER}", group.len()),
        ));
    }

    for &p in primes {
        out.extend(modular_checks(group, table, &matrix, p)?);
    }
    Ok(out)
}

fn ideal_check(name: &str, report: &radical::IdealReport) -> Check {
    let failure = report
        .left_failure
        .as_ref()
        .or(report.right_failure.as_ref())
        .map(|f| format!("{:?} product of spanning element {} with B{} leaves the span", f.side, f.spanning_index, f.basis_label));
    Check::from_failure(name, failure, format!("rank {}", report.rank))
}

fn orbit_check(group: &Group) -> Check {
    let g = group.system().generator_count();
    let failure = (0..1u32 << g).find_map(|j| {
        let phi = characters::PermCharacter::new(group, GeneratorSet(j));
        let total: u64 = group.elements().iter().map(|w| phi.eval(w)).sum();
        (total != group.len() as u64).then(|| {
            format!("Σ φ_J = {total} for J = {}", group.system().format_set(GeneratorSet(j)))
        })
    });
    Check::from_failure("characters.orbit_count", failure, "Σ_w φ_J(w) = |W| for every J")
}

fn modular_checks(group: &Group, table: &Arc<StructureTable>, matrix: &CharacterMatrix, p: Prime) -> Result<Vec<Check>> {
    let tag = |s: &str| format!("radical.p{p}.{s}");
    let rad = radical::radical_mod_p(table, p)?;
    let via = radical::radical_mod_p_via_a_jjj(table, group, p)?;
    let report = radical::verify_ideal(&rad);
    let reps = labels::p_modular_representatives(group, p)?;
    let irr = characters::irreducibles_mod_p(matrix, group, p)?;
    let regularity = labels::regularity_report(group, p)?;
    let mut out = vec![
        Check::new(
            tag("matches_a_jjj_criterion"),
            rad.span_equal(&via)?,
            format!("ranks {} and {}", rad.rank(), via.rank()),
        ),
        ideal_check(&tag("ideal"), &report),
        Check::new(
            tag("nilpotent"),
            report.is_nilpotent(),
            match report.nilpotency_index {
                Some(k) => format!("index {k}"),
                None => "powers do not vanish".into(),
            },
        ),
        Check::new(
            tag("quotient_dim"),
            report.quotient_dim == reps.len(),
            format!("quotient {} vs {} indexing labels", report.quotient_dim, reps.len()),
        ),
        Check::new(
            format!("characters.p{p}.distinct_columns"),
            irr.columns.len() == report.quotient_dim,
            format!("{} distinct columns mod {p}", irr.columns.len()),
        ),
        Check::new(
            format!("characters.p{p}.indexing_labels"),
            irr.representatives_match,
            format!("{} labels, one per distinct column", irr.representatives.len()),
        ),
    ];
    if p.get() != 2 {
        out.push(Check::info(
            format!("labels.p{p}.regularity"),
            format!(
                "a_JJJ selects {}; multiplicity < p {}; no part divisible by p {}",
                regularity.by_a_jjj.len(),
                if regularity.multiplicity_matches { "matches" } else { "differs" },
                if regularity.divisibility_matches { "matches" } else { "differs" },
            ),
        ));
    }
    Ok(out)
}

fn type_a_checks(table: &Arc<StructureTable>) -> Result<Vec<Check>> {
    let n = table.n();
    let mut out = Vec::new();
    let rule = typea::matrix_rule_table(n)?;
    out.push(Check::new(
        "typea.matrix_rule_table",
        rule.same_constants(table),
        "group table equals the matrix-rule table",
    ));
    let limit = n.min(6);
    let mut necessary = None;
    let mut converse = Vec::new();
    for m in 1..=limit {
        for kappa in labels::compositions(m) {
            let coarse = typea::adjacent_coarsenings(&kappa);
            for nu in labels::compositions(m) {
                let empty = typea::lie_action(&kappa, &nu)?.is_empty();
                if coarse.contains(&nu) && empty && necessary.is_none() {
                    necessary = Some(format!("κ = {kappa:?}, ν = {nu:?}"));
                }
                if !coarse.contains(&nu) && !empty {
                    converse.push((kappa.clone(), nu.clone()));
                }
            }
        }
    }
    out.push(Check::from_failure(
        "typea.lie_action_nonvanishing",
        necessary,
        format!("adjacent coarsenings give non-empty output, sizes ≤ {limit}"),
    ));
    out.push(Check::info(
        "typea.lie_action_vanishing_converse",
        match converse.first() {
            None => format!("empty exactly off adjacent coarsenings, sizes ≤ {limit}"),
            Some((k, v)) => format!(
                "{} pairs are non-empty without an adjacent coarsening, e.g. κ = {k:?}, ν = {v:?}",
                converse.len()
            ),
        },
    ));
    Ok(out)
}

/// Builds the group and table for `system` and runs [`run`].
pub fn run_for(system: CoxeterSystem, bound: crate::ResourceBound, p: Option<Prime>) -> Result<Report> {
    let group = Group::enumerate(system, bound)?;
    let table = algebra::build_table_from_group(&group)?;
    run(&group, &table, p)
}
