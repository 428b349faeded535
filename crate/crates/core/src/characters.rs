//! Permutation characters `φ_J` on the cosets of parabolic subgroups, their
//! values at Coxeter elements, and the one-dimensional representations of
//! the descent algebra they induce.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, Prime, StructureTable};
use crate::coxeter::{CoxeterSystem, Generator, GeneratorSet, Group, GroupType};
use crate::error::{Error, Result};
use crate::labels::{self, Composition};
use crate::SignedPermutation;

/// `W_J` as a membership bitmap over the group's element indices.
fn parabolic_members(group: &Group, j: GeneratorSet) -> Vec<bool> {
    let sys = group.system();
    let gens: Vec<SignedPermutation> = j.iter().map(|b| sys.generator_by_bit(b)).collect();
    let mut seen = vec![false; group.len()];
    let e = group.identity_index();
    seen[e] = true;
    let mut queue = VecDeque::from([e]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let next = group
                .index_of(&group.element(i).mul(g))
                .expect("closed under generators");
            if !seen[next] {
                seen[next] = true;
                queue.push_back(next);
            }
        }
    }
    seen
}

/// The subgroup generated by `J`, in the group's element order.
pub fn parabolic_subgroup(group: &Group, j: GeneratorSet) -> Vec<SignedPermutation> {
    parabolic_members(group, j)
        .into_iter()
        .enumerate()
        .filter(|(_, m)| *m)
        .map(|(i, _)| group.element(i).clone())
        .collect()
}

/// The product of the generators of `J` in the given order, or in generator
/// order (`1', 1, 2, …` for type D) by default.
pub fn coxeter_element(system: CoxeterSystem, j: GeneratorSet, ordering: Option<&[Generator]>) -> Result<SignedPermutation> {
    let bits: Vec<usize> = match ordering {
        None => j.iter().collect(),
        Some(order) => {
            let bits = order
                .iter()
                .map(|&g| system.bit_of(g))
                .collect::<Result<Vec<_>>>()?;
            let mut sorted = bits.clone();
            sorted.sort_unstable();
            if sorted != j.iter().collect::<Vec<_>>() {
                return Err(Error::InvalidOrdering);
            }
            bits
        }
    };
    Ok(bits
        .into_iter()
        .fold(SignedPermutation::identity(system.n()), |acc, b| {
            acc.mul(&system.generator_by_bit(b))
        }))
}

/// `φ_J`, the permutation character of `W` on the right cosets of `W_J`.
#[derive(Clone)]
pub struct PermCharacter<'g> {
    group: &'g Group,
    subset: GeneratorSet,
    members: Vec<bool>,
    /// `X_J^{-1}`: the minimal representatives of the right cosets.
    reps: Vec<usize>,
}

impl<'g> PermCharacter<'g> {
    pub fn new(group: &'g Group, j: GeneratorSet) -> Self {
        let members = parabolic_members(group, j);
        let reps = (0..group.len())
            .filter(|&i| group.left_descents(i).is_disjoint(j))
            .collect();
        PermCharacter {
            group,
            subset: j,
            members,
            reps,
        }
    }

    pub fn subset(&self) -> GeneratorSet {
        self.subset
    }

    /// `[W : W_J]`.
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn subgroup_order(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    /// Number of cosets `W_J x` with `W_J x w = W_J x`.
    pub fn eval(&self, w: &SignedPermutation) -> u64 {
        self.reps
            .iter()
            .filter(|&&x| {
                let x = self.group.element(x);
                let conj = x.mul(w).mul(&x.inverse());
                self.members[self.group.index_of(&conj).expect("group element")]
            })
            .count() as u64
    }
}

/// `φ_J(w)`.
pub fn perm_character(group: &Group, j: GeneratorSet, w: &SignedPermutation) -> u64 {
    PermCharacter::new(group, j).eval(w)
}

/// `R = [φ_J(c_K)]` over the class representatives: row `κ` uses
/// `J = J(κ)^c`, column `ν` evaluates at the Coxeter element of `J(ν)^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMatrix {
    pub n: usize,
    pub representatives: Vec<Composition>,
    pub entries: Vec<Vec<u64>>,
}

impl CharacterMatrix {
    pub fn column(&self, c: usize) -> Vec<u64> {
        self.entries.iter().map(|row| row[c]).collect()
    }

    /// Indices of the first column in each class of equal columns, with
    /// entries reduced mod `p` when given.
    pub fn distinct_columns(&self, p: Option<Prime>) -> Vec<usize> {
        let mut seen: Vec<Vec<u64>> = Vec::new();
        let mut out = Vec::new();
        for c in 0..self.representatives.len() {
            let col = self.reduced_column(c, p);
            if !seen.contains(&col) {
                seen.push(col);
                out.push(c);
            }
        }
        out
    }

    pub fn reduced_column(&self, c: usize, p: Option<Prime>) -> Vec<u64> {
        let col = self.column(c);
        match p {
            None => col,
            Some(p) => col.into_iter().map(|x| x % p.get()).collect(),
        }
    }

    pub fn reduced(&self, p: Prime) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|x| x % p.get()).collect())
            .collect()
    }
}

pub fn character_matrix(group: &Group) -> Result<CharacterMatrix> {
    let sys = group.system();
    if sys.group_type() != GroupType::D {
        return Err(Error::UnsupportedType {
            op: "character matrix",
            expected: 'D',
        });
    }
    let n = sys.n();
    let representatives = labels::class_representatives(n)?;
    let coxeter: Vec<SignedPermutation> = representatives
        .iter()
        .map(|k| coxeter_element(sys, labels::coset_subset(k), None))
        .collect::<Result<_>>()?;
    let entries = representatives
        .par_iter()
        .map(|k| {
            let phi = PermCharacter::new(group, labels::coset_subset(k));
            coxeter.iter().map(|c| phi.eval(c)).collect()
        })
        .collect();
    Ok(CharacterMatrix {
        n,
        representatives,
        entries,
    })
}

/// `θ_ν : B_κ ↦ φ_{J(κ)^c}(c_{J(ν)^c})`, extended linearly.
#[derive(Clone, Debug)]
pub struct IrreducibleMap {
    pub label: Composition,
    values: Vec<u64>,
}

impl IrreducibleMap {
    /// `θ(B_i)` for basis index `i`.
    pub fn value(&self, i: usize) -> u64 {
        self.values[i]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `θ(a)`, reduced mod `p` in modular mode.
    pub fn eval(&self, a: &AlgebraElement) -> BigInt {
        let total = a
            .terms()
            .fold(BigInt::zero(), |acc, (i, c)| acc + c * self.values[i]);
        a.mode().reduce(total)
    }
}

fn check_table(table: &StructureTable, group: &Group) -> Result<()> {
    if group.system() != table.system() {
        return Err(Error::RankMismatch(group.system().n(), table.n()));
    }
    Ok(())
}

fn map_from(table: &StructureTable, phis: &[PermCharacter<'_>], label: &Composition) -> Result<IrreducibleMap> {
    if table.index_of(label).is_none() {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    let c = coxeter_element(table.system(), labels::coset_subset(label), None)?;
    Ok(IrreducibleMap {
        label: label.clone(),
        values: phis.par_iter().map(|phi| phi.eval(&c)).collect(),
    })
}

fn basis_characters<'g>(table: &StructureTable, group: &'g Group) -> Vec<PermCharacter<'g>> {
    (0..table.dim())
        .into_par_iter()
        .map(|i| PermCharacter::new(group, table.coset_subset(i)))
        .collect()
}

pub fn irreducible_map(table: &StructureTable, group: &Group, label: &Composition) -> Result<IrreducibleMap> {
    check_table(table, group)?;
    map_from(table, &basis_characters(table, group), label)
}

/// The irreducible maps for every class representative.
pub fn irreducible_maps(table: &Arc<StructureTable>, group: &Group) -> Result<Vec<IrreducibleMap>> {
    check_table(table, group)?;
    let phis = basis_characters(table, group);
    labels::class_representatives(table.n())?
        .iter()
        .map(|k| map_from(table, &phis, k))
        .collect()
}

/// The distinct columns of `R mod p`, compared with the representatives
/// picked out by the `p`-modular indexing rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularIrreducibles {
    pub p: u64,
    /// Label of the first column in each class of equal columns.
    pub column_labels: Vec<Composition>,
    pub columns: Vec<Vec<u64>>,
    pub representatives: Vec<Composition>,
    /// Each distinct column is the column of exactly one representative.
    pub representatives_match: bool,
}

pub fn irreducibles_mod_p(matrix: &CharacterMatrix, group: &Group, p: Prime) -> Result<ModularIrreducibles> {
    let distinct = matrix.distinct_columns(Some(p));
    let columns: Vec<Vec<u64>> = distinct
        .iter()
        .map(|&c| matrix.reduced_column(c, Some(p)))
        .collect();
    let representatives = labels::p_modular_representatives(group, p)?;
    let mut hits: BTreeMap<usize, usize> = BTreeMap::new();
    let mut all_found = true;
    for r in &representatives {
        match matrix.representatives.iter().position(|k| k == r) {
            Some(c) => {
                let col = matrix.reduced_column(c, Some(p));
                let slot = columns.iter().position(|x| *x == col).expect("every column is listed");
                *hits.entry(slot).or_default() += 1;
            }
            None => all_found = false,
        }
    }
    let representatives_match =
        all_found && hits.len() == columns.len() && hits.values().all(|&h| h == 1);
    Ok(ModularIrreducibles {
        p: p.get(),
        column_labels: distinct
            .iter()
            .map(|&c| matrix.representatives[c].clone())
            .collect(),
        columns,
        representatives,
        representatives_match,
    })
}
