//! The symmetric-group descent algebra via non-negative integer matrices.
//!
//! `B_κ B_ν = Σ_z B_{r(z)}` over matrices `z` with column sums `κ` and row
//! sums `ν`, where `r(z)` reads the non-zero entries row by row. Restricting
//! to matrices with one non-zero entry per column gives the action on
//! products of Lie elements, tracked here only through degree compositions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{AlgebraElement, Provenance, ScalarMode, StructureTable};
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::labels::{self, Composition, Region};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowMatrix {
    rows: Vec<Vec<usize>>,
}

impl FlowMatrix {
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        FlowMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).map(|j| self.rows.iter().map(|r| r[j]).sum()).collect()
    }

    /// `r(z)`: the non-zero entries, row by row.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().filter(|&x| x > 0).collect()
    }

    pub fn one_nonzero_per_column(&self) -> bool {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).all(|j| self.rows.iter().filter(|r| r[j] > 0).count() == 1)
    }
}

/// All matrices with the given column and row sums, rows filled in order
/// against the remaining column capacity.
pub fn flow_matrices(col_sums: &[usize], row_sums: &[usize]) -> Vec<FlowMatrix> {
    fn fill_row(
        target: usize,
        col: usize,
        remaining: &mut [usize],
        row: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize], &mut [usize]),
    ) {
        if col == remaining.len() {
            if target == 0 {
                emit(row, remaining);
            }
            return;
        }
        let capacity_after: usize = remaining[col + 1..].iter().sum();
        let lo = target.saturating_sub(capacity_after);
        for v in lo..=target.min(remaining[col]) {
            remaining[col] -= v;
            row.push(v);
            fill_row(target - v, col + 1, remaining, row, emit);
            row.pop();
            remaining[col] += v;
        }
    }

    fn rec(i: usize, row_sums: &[usize], remaining: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>, out: &mut Vec<FlowMatrix>) {
        if i == row_sums.len() {
            if remaining.iter().all(|&r| r == 0) {
                out.push(FlowMatrix::new(acc.clone()));
            }
            return;
        }
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut row = Vec::with_capacity(remaining.len());
        fill_row(row_sums[i], 0, remaining, &mut row, &mut |r, _| rows.push(r.to_vec()));
        for r in rows {
            for (rem, v) in remaining.iter_mut().zip(&r) {
                *rem -= v;
            }
            acc.push(r);
            rec(i + 1, row_sums, remaining, acc, out);
            let r = acc.pop().expect("pushed above");
            for (rem, v) in remaining.iter_mut().zip(&r) {
                *rem += v;
            }
        }
    }

    let mut out = Vec::new();
    if col_sums.iter().sum::<usize>() != row_sums.iter().sum::<usize>() {
        return out;
    }
    rec(0, row_sums, &mut col_sums.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn check_totals(kappa: &[usize], nu: &[usize]) -> Result<()> {
    let (a, b) = (kappa.iter().sum(), nu.iter().sum());
    if a != b {
        return Err(Error::UnequalTotals(a, b));
    }
    if kappa.contains(&0) || nu.contains(&0) {
        return Err(Error::InvalidLabel("zero component".into()));
    }
    Ok(())
}

/// `B_κ B_ν` by the matrix rule, as reading word ↦ multiplicity.
pub fn multiply_sn(kappa: &[usize], nu: &[usize]) -> Result<BTreeMap<Vec<usize>, u64>> {
    check_totals(kappa, nu)?;
    let mut out = BTreeMap::new();
    for z in flow_matrices(kappa, nu) {
        *out.entry(z.reading_word()).or_insert(0) += 1;
    }
    Ok(out)
}

/// [`multiply_sn`] as an element of a type-A table.
pub fn multiply_sn_element(table: &Arc<StructureTable>, kappa: &Composition, nu: &Composition) -> Result<AlgebraElement> {
    let n = table.n();
    let terms = multiply_sn(kappa.parts(), nu.parts())?
        .into_iter()
        .map(|(word, c)| {
            let label = Composition::new(word, Region::A, n)?;
            let i = table
                .index_of(&label)
                .ok_or_else(|| Error::InvalidLabel(label.to_string()))?;
            Ok((i, c.into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraElement::from_terms(table, ScalarMode::Integer, terms))
}

/// `P^(κ) B_ν = Σ_z P^(r(z))` over matrices with column sums `κ`, row sums
/// `ν`, and exactly one non-zero entry per column; returns the multiset of
/// `r(z)`.
pub fn lie_action(kappa: &[usize], nu: &[usize]) -> Result<BTreeMap<Vec<usize>, u64>> {
    check_totals(kappa, nu)?;
    let mut out = BTreeMap::new();
    for z in flow_matrices(kappa, nu) {
        if z.one_nonzero_per_column() {
            *out.entry(z.reading_word()).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Every composition obtained from `κ` by summing runs of adjacent
/// components (including `κ` itself).
pub fn adjacent_coarsenings(kappa: &[usize]) -> BTreeSet<Vec<usize>> {
    let k = kappa.len();
    if k == 0 {
        return BTreeSet::from([vec![]]);
    }
    (0..1u32 << (k - 1))
        .map(|cuts| {
            let mut out = vec![kappa[0]];
            for (i, &x) in kappa.iter().enumerate().skip(1) {
                if cuts >> (i - 1) & 1 == 1 {
                    out.push(x);
                } else {
                    *out.last_mut().expect("non-empty") += x;
                }
            }
            out
        })
        .collect()
}

/// The type-A table built entirely from the matrix rule.
pub fn matrix_rule_table(n: usize) -> Result<StructureTable> {
    let system = CoxeterSystem::type_a(n)?;
    let basis = labels::type_a_labels(n)?;
    let index: BTreeMap<&[usize], usize> = basis.iter().enumerate().map(|(i, k)| (k.parts(), i)).collect();
    let mut products = Vec::with_capacity(basis.len() * basis.len());
    for a in &basis {
        for b in &basis {
            let mut row: Vec<(u32, u64)> = multiply_sn(a.parts(), b.parts())?
                .into_iter()
                .map(|(w, c)| (index[w.as_slice()] as u32, c))
                .collect();
            row.sort_unstable();
            products.push(row);
        }
    }
    Ok(StructureTable::assemble(system, basis, products, Provenance::MatrixRule))
}
