//! Solomon's descent algebra: coset sums `𝒳_J`, structure constants
//! `a_JKL`, and the composition-labelled structure table.
//!
//! `𝒳_J 𝒳_K = Σ_L a_JKL 𝒳_L`, where `a_JKL` counts the `x` with no left
//! descent in `J`, no right descent in `K`, and `x^{-1} J x ∩ K = L`.
//! Two independent routes compute the constants: a per-element sweep of that
//! definition ([`solomon_constants`]) and explicit products in the group
//! algebra followed by Möbius extraction ([`GroupAlgebra`]).

mod cache;
mod element;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::coxeter::{for_each_subset, CoxeterSystem, GeneratorSet, Group, GroupType, ResourceBound};
use crate::error::{Error, Result};
use crate::labels::{self, Composition};

pub use cache::{TableFile, SCHEMA_VERSION};
pub use element::{AlgebraElement, Prime, ScalarMode};

/// `X_J`: the elements with no right descent in `J` (indices into the group).
pub fn coset_reps(group: &Group, j: GeneratorSet) -> Vec<usize> {
    (0..group.len())
        .filter(|&i| group.right_descents(i).is_disjoint(j))
        .collect()
}

/// `x^{-1} J x ∩ K` as a bit set, dropping conjugates that are not generators.
fn conjugate_into(map: &[Option<usize>], j: GeneratorSet, k: GeneratorSet) -> GeneratorSet {
    let image = j
        .iter()
        .filter_map(|b| map[b])
        .fold(0u32, |acc, t| acc | 1 << t);
    GeneratorSet(image & k.bits())
}

/// `a_JKL` by direct count over the group.
pub fn structure_constant_direct(group: &Group, j: GeneratorSet, k: GeneratorSet, l: GeneratorSet) -> u64 {
    let sys = group.system();
    (0..group.len())
        .into_par_iter()
        .filter(|&i| group.left_descents(i).is_disjoint(j) && group.right_descents(i).is_disjoint(k))
        .filter(|&i| conjugate_into(&sys.conjugation_map(group.element(i)), j, k) == l)
        .count() as u64
}

/// The dense tensor `a_JKL` indexed by subset bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetConstants {
    gens: usize,
    data: Vec<u64>,
}

impl SubsetConstants {
    fn zeros(gens: usize) -> Self {
        SubsetConstants {
            gens,
            data: vec![0; 1 << (3 * gens)],
        }
    }

    #[inline]
    fn offset(&self, j: GeneratorSet, k: GeneratorSet, l: GeneratorSet) -> usize {
        (((j.bits() as usize) << self.gens | k.bits() as usize) << self.gens) | l.bits() as usize
    }

    pub fn generator_count(&self) -> usize {
        self.gens
    }

    pub fn get(&self, j: GeneratorSet, k: GeneratorSet, l: GeneratorSet) -> u64 {
        self.data[self.offset(j, k, l)]
    }

    /// The non-zero `(J, K, L, a_JKL)` entries.
    pub fn nonzero(&self) -> impl Iterator<Item = (GeneratorSet, GeneratorSet, GeneratorSet, u64)> + '_ {
        let mask = (1usize << self.gens) - 1;
        self.data.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(i, &v)| {
            let l = i & mask;
            let k = (i >> self.gens) & mask;
            let j = i >> (2 * self.gens);
            (GeneratorSet(j as u32), GeneratorSet(k as u32), GeneratorSet(l as u32), v)
        })
    }
}

/// All `a_JKL` in one pass over `W`: each `x` contributes to every `J`
/// avoiding its left descents and every `K` avoiding its right descents.
pub fn solomon_constants(group: &Group) -> SubsetConstants {
    let sys = group.system();
    let g = sys.generator_count();
    let full = sys.full_set().bits();
    let size = 1usize << (3 * g);
    let workers = rayon::current_num_threads().max(1);
    let chunk = group.len().div_ceil(workers).max(1);
    let partials: Vec<Vec<u32>> = (0..group.len())
        .collect::<Vec<_>>()
        .par_chunks(chunk)
        .map(|chunk| {
            let mut acc = vec![0u32; size];
            for &i in chunk {
                let x = group.element(i);
                let map = sys.conjugation_map(x);
                let free_left = full & !group.left_descents(i).bits();
                let free_right = full & !group.right_descents(i).bits();
                for_each_subset(free_left, |j| {
                    let image = GeneratorSet(j)
                        .iter()
                        .filter_map(|b| map[b])
                        .fold(0u32, |a, t| a | 1 << t);
                    let base = (j as usize) << (2 * g);
                    for_each_subset(free_right, |k| {
                        acc[base | (k as usize) << g | (image & k) as usize] += 1;
                    });
                });
            }
            acc
        })
        .collect();
    let mut out = SubsetConstants::zeros(g);
    for part in partials {
        for (o, v) in out.data.iter_mut().zip(part) {
            *o += v as u64;
        }
    }
    out
}

/// The group algebra `ℤW`, with a precomputed Cayley table.
pub struct GroupAlgebra<'g> {
    group: &'g Group,
    cayley: Vec<u32>,
}

/// Largest group for which a Cayley table is built.
pub const MAX_CAYLEY_ORDER: usize = 6000;

impl<'g> GroupAlgebra<'g> {
    pub fn new(group: &'g Group) -> Result<Self> {
        let m = group.len();
        if m > MAX_CAYLEY_ORDER {
            return Err(Error::ResourceBound {
                what: "Cayley table order",
                limit: MAX_CAYLEY_ORDER,
                requested: m,
            });
        }
        let cayley = group
            .elements()
            .par_iter()
            .flat_map_iter(|u| {
                group
                    .elements()
                    .iter()
                    .map(move |v| group.index_of(&u.mul(v)).expect("closed under product") as u32)
            })
            .collect();
        Ok(GroupAlgebra { group, cayley })
    }

    pub fn group(&self) -> &Group {
        self.group
    }

    /// `𝒳_J 𝒳_K` as a dense coefficient vector over the group order.
    pub fn multiply(&self, j: GeneratorSet, k: GeneratorSet) -> Vec<u64> {
        let m = self.group.len();
        let left = coset_reps(self.group, j);
        let right = coset_reps(self.group, k);
        let mut out = vec![0u64; m];
        for &u in &left {
            let row = &self.cayley[u * m..(u + 1) * m];
            for &v in &right {
                out[row[v] as usize] += 1;
            }
        }
        out
    }

    /// `a_JKL` for all triples via products and extraction.
    pub fn solomon_constants(&self) -> Result<SubsetConstants> {
        let g = self.group.system().generator_count();
        let count = 1u32 << g;
        let rows: Vec<Result<(u32, u32, Vec<i64>)>> = (0..count * count)
            .into_par_iter()
            .map(|jk| {
                let (j, k) = (jk / count, jk % count);
                let product = self.multiply(GeneratorSet(j), GeneratorSet(k));
                Ok((j, k, extract_coefficients(self.group, &product)?))
            })
            .collect();
        let mut out = SubsetConstants::zeros(g);
        for row in rows {
            let (j, k, coeffs) = row?;
            for (l, c) in coeffs.into_iter().enumerate() {
                let c = u64::try_from(c).map_err(|_| Error::NotInDescentSpan {
                    class: format!("negative coefficient {c} at L = {l:#b}"),
                })?;
                let at = out.offset(GeneratorSet(j), GeneratorSet(k), GeneratorSet(l as u32));
                out.data[at] = c;
            }
        }
        Ok(out)
    }
}

/// `𝒳_J 𝒳_K` without a Cayley table, as a map from group elements.
pub fn multiply_in_group_algebra(group: &Group, j: GeneratorSet, k: GeneratorSet) -> HashMap<usize, u64> {
    let right = coset_reps(group, k);
    let mut out = HashMap::new();
    for u in coset_reps(group, j) {
        let x = group.element(u);
        for &v in &right {
            let w = group.index_of(&x.mul(group.element(v))).expect("closed under product");
            *out.entry(w).or_insert(0) += 1;
        }
    }
    out
}

/// Writes a group-algebra element that lies in the descent algebra as
/// `Σ_L c_L 𝒳_L`; entry `L` of the result is `c_L`.
///
/// The coefficient must be constant on each class `{w : Des_R(w) = T}`;
/// with `v_T` that value, `v_T = Σ_{L ⊆ S∖T} c_L` and `c_L` follows by
/// Möbius inversion over subsets.
pub fn extract_coefficients(group: &Group, product: &[u64]) -> Result<Vec<i64>> {
    let sys = group.system();
    let g = sys.generator_count();
    let full = sys.full_set().bits();
    let mut class_value: Vec<Option<u64>> = vec![None; 1 << g];
    for (i, &c) in product.iter().enumerate() {
        let t = group.right_descents(i).bits() as usize;
        match class_value[t] {
            None => class_value[t] = Some(c),
            Some(v) if v != c => {
                return Err(Error::NotInDescentSpan {
                    class: sys.format_set(GeneratorSet(t as u32)),
                })
            }
            Some(_) => {}
        }
    }
    // u(M) = v_{S∖M}
    let mut coeffs: Vec<i64> = (0..1u32 << g)
        .map(|m| {
            let v = class_value[(full & !m) as usize].unwrap_or(0);
            i64::try_from(v).map_err(|_| Error::Overflow("coefficient extraction"))
        })
        .collect::<Result<_>>()?;
    // in-place subset Möbius transform
    for bit in 0..g {
        for m in 0..1usize << g {
            if m >> bit & 1 == 1 {
                coeffs[m] = coeffs[m]
                    .checked_sub(coeffs[m ^ 1 << bit])
                    .ok_or(Error::Overflow("coefficient extraction"))?;
            }
        }
    }
    Ok(coeffs)
}

/// Extraction for sparse products, e.g. from [`multiply_in_group_algebra`].
pub fn extract_sparse(group: &Group, product: &HashMap<usize, u64>) -> Result<Vec<i64>> {
    let mut dense = vec![0u64; group.len()];
    for (&w, &c) in product {
        dense[w] = c;
    }
    extract_coefficients(group, &dense)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Sweep,
    GroupAlgebra,
    MatrixRule,
    Cache,
}

/// Structure constants in the composition basis: `B_κ B_ν = Σ_η c^η_κν B_η`
/// with `c^η_κν = a_{J(κ)^c, J(ν)^c, J(η)^c}`.
#[derive(Debug)]
pub struct StructureTable {
    system: CoxeterSystem,
    basis: Vec<Composition>,
    coset_subsets: Vec<GeneratorSet>,
    coset_sizes: Vec<u64>,
    products: Vec<Vec<(u32, u64)>>,
    label_index: HashMap<Composition, usize>,
    provenance: Provenance,
}

impl StructureTable {
    pub fn from_constants(system: CoxeterSystem, constants: &SubsetConstants, provenance: Provenance) -> Result<Self> {
        let basis = labels::labels_for(system)?;
        let dim = basis.len();
        let subsets: Vec<GeneratorSet> = basis.iter().map(labels::coset_subset).collect();
        let mut by_subset = vec![0usize; 1 << system.generator_count()];
        for (i, s) in subsets.iter().enumerate() {
            by_subset[s.bits() as usize] = i;
        }
        let mut products = vec![Vec::new(); dim * dim];
        for (j, k, l, v) in constants.nonzero() {
            let (a, b, c) = (
                by_subset[j.bits() as usize],
                by_subset[k.bits() as usize],
                by_subset[l.bits() as usize],
            );
            products[a * dim + b].push((c as u32, v));
        }
        for row in &mut products {
            row.sort_unstable();
        }
        Ok(Self::assemble(system, basis, products, provenance))
    }

    pub(crate) fn assemble(
        system: CoxeterSystem,
        basis: Vec<Composition>,
        products: Vec<Vec<(u32, u64)>>,
        provenance: Provenance,
    ) -> Self {
        let coset_subsets: Vec<GeneratorSet> = basis.iter().map(labels::coset_subset).collect();
        let order = system.order();
        let coset_sizes = coset_subsets
            .iter()
            .map(|&k| order / system.parabolic_order(k))
            .collect();
        let label_index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        StructureTable {
            system,
            basis,
            coset_subsets,
            coset_sizes,
            products,
            label_index,
            provenance,
        }
    }

    pub fn system(&self) -> CoxeterSystem {
        self.system
    }

    pub fn group_type(&self) -> GroupType {
        self.system.group_type()
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Composition] {
        &self.basis
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn index_of(&self, label: &Composition) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn label_index(&self, text: &str) -> Result<usize> {
        let label = Composition::parse(text, self.n(), self.group_type())?;
        self.index_of(&label)
            .ok_or_else(|| Error::InvalidLabel(text.to_string()))
    }

    /// The subset `K` with `B_κ = 𝒳_K`.
    pub fn coset_subset(&self, i: usize) -> GeneratorSet {
        self.coset_subsets[i]
    }

    /// `|X_K|` for `B_κ = 𝒳_K`.
    pub fn coset_size(&self, i: usize) -> u64 {
        self.coset_sizes[i]
    }

    /// Sparse `(η, c^η_κν)` for `B_κ B_ν`, sorted by `η`.
    pub fn product(&self, i: usize, j: usize) -> &[(u32, u64)] {
        &self.products[i * self.dim() + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> u64 {
        let row = self.product(i, j);
        row.binary_search_by_key(&(k as u32), |e| e.0)
            .map(|p| row[p].1)
            .unwrap_or(0)
    }

    /// `a_JJJ` for `B_κ = 𝒳_J`.
    pub fn diagonal_constant(&self, i: usize) -> u64 {
        self.coefficient(i, i, i)
    }

    /// Index of the identity `B_[]` (`𝒳_S = {e}`).
    pub fn identity_index(&self) -> usize {
        let full = self.system.full_set();
        self.coset_subsets
            .iter()
            .position(|&s| s == full)
            .expect("a label addresses 𝒳_S")
    }

    /// Same constants, ignoring provenance.
    pub fn same_constants(&self, other: &StructureTable) -> bool {
        self.system == other.system && self.basis == other.basis && self.products == other.products
    }

    /// Counting check: `|X_J| |X_K| = Σ_L a_JKL |X_L|` on every row.
    pub fn counting_identity_failures(&self) -> Vec<(usize, usize)> {
        let dim = self.dim();
        (0..dim * dim)
            .filter(|&ij| {
                let (i, j) = (ij / dim, ij % dim);
                let lhs = self.coset_sizes[i] as u128 * self.coset_sizes[j] as u128;
                let rhs: u128 = self
                    .product(i, j)
                    .iter()
                    .map(|&(k, c)| c as u128 * self.coset_sizes[k as usize] as u128)
                    .sum();
                lhs != rhs
            })
            .map(|ij| (ij / dim, ij % dim))
            .collect()
    }

    /// Dense product `a · b`, reduced modulo `modulus` when given.
    pub fn multiply_dense(&self, a: &[BigInt], b: &[BigInt], modulus: Option<u64>) -> Vec<BigInt> {
        let dim = self.dim();
        let mut out = vec![BigInt::zero(); dim];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let ab = ai * bj;
                for &(k, c) in self.product(i, j) {
                    out[k as usize] += &ab * c;
                }
            }
        }
        if let Some(p) = modulus {
            let p = BigInt::from(p);
            for x in &mut out {
                *x = ((&*x % &p) + &p) % &p;
            }
        }
        out
    }
}

/// Enumerates the group and builds its table by the per-element sweep.
pub fn build_table(system: CoxeterSystem, bound: ResourceBound) -> Result<Arc<StructureTable>> {
    let group = Group::enumerate(system, bound)?;
    build_table_from_group(&group)
}

pub fn build_table_from_group(group: &Group) -> Result<Arc<StructureTable>> {
    let constants = solomon_constants(group);
    Ok(Arc::new(StructureTable::from_constants(
        group.system(),
        &constants,
        Provenance::Sweep,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Generator;

    fn group(ty: GroupType, n: usize) -> Group {
        Group::enumerate(CoxeterSystem::new(ty, n).unwrap(), ResourceBound::default()).unwrap()
    }

    #[test]
    fn coset_reps_sizes() {
        let g = group(GroupType::D, 3);
        let sys = g.system();
        assert_eq!(coset_reps(&g, sys.full_set()), vec![g.identity_index()]);
        assert_eq!(coset_reps(&g, GeneratorSet::EMPTY).len(), 24);
        let j = sys.set_of(&[Generator::Adjacent(1)]).unwrap();
        assert_eq!(coset_reps(&g, j).len(), 12);
        for bits in 0..8 {
            let j = GeneratorSet(bits);
            assert_eq!(
                coset_reps(&g, j).len() as u64 * sys.parabolic_order(j),
                sys.order()
            );
        }
    }

    #[test]
    fn direct_count_corner_cases() {
        let g = group(GroupType::D, 3);
        let full = g.system().full_set();
        let e = GeneratorSet::EMPTY;
        assert_eq!(structure_constant_direct(&g, e, e, e), 24);
        assert_eq!(structure_constant_direct(&g, full, full, full), 1);
    }

    #[test]
    fn sweep_matches_direct_count_d3_a4() {
        for (ty, n) in [(GroupType::D, 3), (GroupType::D, 2), (GroupType::A, 4)] {
            let g = group(ty, n);
            let sweep = solomon_constants(&g);
            let count = 1u32 << g.system().generator_count();
            for j in 0..count {
                for k in 0..count {
                    for l in 0..count {
                        let (j, k, l) = (GeneratorSet(j), GeneratorSet(k), GeneratorSet(l));
                        assert_eq!(sweep.get(j, k, l), structure_constant_direct(&g, j, k, l));
                    }
                }
            }
        }
    }

    #[test]
    fn group_algebra_identity_products() {
        let g = group(GroupType::D, 3);
        let ga = GroupAlgebra::new(&g).unwrap();
        let full = g.system().full_set();
        let ee = ga.multiply(full, full);
        assert_eq!(ee.iter().sum::<u64>(), 1);
        assert_eq!(ee[g.identity_index()], 1);
        for bits in 0..8 {
            let k = GeneratorSet(bits);
            let p = ga.multiply(full, k);
            let xk = coset_reps(&g, k);
            for (i, &c) in p.iter().enumerate() {
                assert_eq!(c, xk.contains(&i) as u64);
            }
            assert_eq!(
                multiply_in_group_algebra(&g, full, k),
                xk.iter().map(|&i| (i, 1)).collect()
            );
        }
    }

    #[test]
    fn extraction_of_coset_sums() {
        let g = group(GroupType::D, 3);
        let full = g.system().full_set().bits() as usize;
        let mut delta = vec![0u64; g.len()];
        delta[g.identity_index()] = 1;
        let c = extract_coefficients(&g, &delta).unwrap();
        assert!(c.iter().enumerate().all(|(l, &v)| v == (l == full) as i64));
        let ones = vec![1u64; g.len()];
        let c = extract_coefficients(&g, &ones).unwrap();
        assert!(c.iter().enumerate().all(|(l, &v)| v == (l == 0) as i64));
    }

    #[test]
    fn extraction_rejects_non_descent_elements() {
        let g = group(GroupType::D, 3);
        let mut v = vec![0u64; g.len()];
        // a non-identity element alone is never a combination of coset sums
        v[(g.identity_index() + 1) % g.len()] = 1;
        assert!(matches!(
            extract_coefficients(&g, &v),
            Err(Error::NotInDescentSpan { .. })
        ));
    }

    #[test]
    fn products_constant_on_descent_classes_d3() {
        let g = group(GroupType::D, 3);
        let ga = GroupAlgebra::new(&g).unwrap();
        for j in 0..8 {
            for k in 0..8 {
                let p = ga.multiply(GeneratorSet(j), GeneratorSet(k));
                let mut seen: HashMap<u32, u64> = HashMap::new();
                for (i, &c) in p.iter().enumerate() {
                    let t = g.right_descents(i).bits();
                    assert_eq!(*seen.entry(t).or_insert(c), c);
                }
            }
        }
    }

    #[test]
    fn methods_agree_d3() {
        let g = group(GroupType::D, 3);
        let sweep = solomon_constants(&g);
        let via = GroupAlgebra::new(&g).unwrap().solomon_constants().unwrap();
        assert_eq!(sweep, via);
        let a = StructureTable::from_constants(g.system(), &sweep, Provenance::Sweep).unwrap();
        let b = StructureTable::from_constants(g.system(), &via, Provenance::GroupAlgebra).unwrap();
        assert!(a.same_constants(&b));
    }

    #[test]
    fn identity_and_counting_d4() {
        let table = build_table(CoxeterSystem::type_d(4).unwrap(), ResourceBound::default()).unwrap();
        let e = table.identity_index();
        assert_eq!(table.basis()[e].to_string(), "[]@Small");
        for j in 0..table.dim() {
            assert_eq!(table.product(e, j), &[(j as u32, 1)]);
            assert_eq!(table.product(j, e), &[(j as u32, 1)]);
        }
        assert!(table.counting_identity_failures().is_empty());
    }

    #[test]
    fn a_jjj_from_table_matches_direct_d4() {
        let g = group(GroupType::D, 4);
        let table = build_table_from_group(&g).unwrap();
        for i in 0..table.dim() {
            let j = table.coset_subset(i);
            assert_eq!(table.diagonal_constant(i), structure_constant_direct(&g, j, j, j));
        }
    }
}
