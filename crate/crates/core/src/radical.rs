//! Spanning sets for the radical of the type-D descent algebra, over ℚ and
//! over 𝔽_p, and an exact check that a span is a nilpotent two-sided ideal.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{structure_constant_direct, AlgebraElement, Prime, ScalarMode, StructureTable};
use crate::coxeter::{Group, GroupType};
use crate::error::{Error, Result};
use crate::labels::{self, Composition, Region};
use crate::linear::{Echelon, Field};

/// A spanning set kept in the combinatorial form it was built from, with
/// the class map used to build the differences.
#[derive(Clone, Debug)]
pub struct RadicalBasis {
    table: Arc<StructureTable>,
    mode: ScalarMode,
    spanning_set: Vec<AlgebraElement>,
    class_map: BTreeMap<Composition, Composition>,
}

impl RadicalBasis {
    pub fn table(&self) -> &Arc<StructureTable> {
        &self.table
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn prime(&self) -> Option<Prime> {
        match self.mode {
            ScalarMode::Integer => None,
            ScalarMode::Modular(p) => Some(p),
        }
    }

    pub fn spanning_set(&self) -> &[AlgebraElement] {
        &self.spanning_set
    }

    pub fn class_map(&self) -> &BTreeMap<Composition, Composition> {
        &self.class_map
    }

    pub fn field(&self) -> Field {
        self.mode.into()
    }

    pub fn vectors(&self) -> Vec<Vec<BigInt>> {
        self.spanning_set.iter().map(AlgebraElement::to_dense).collect()
    }

    pub fn rank(&self) -> usize {
        crate::linear::rank(self.field(), &self.vectors())
    }

    /// Equal spans over the common scalar field.
    pub fn span_equal(&self, other: &RadicalBasis) -> Result<bool> {
        if self.mode != other.mode || !self.table.same_constants(&other.table) {
            return Err(Error::ModeMismatch);
        }
        let (a, b) = (self.vectors(), other.vectors());
        Ok(if a.is_empty() || b.is_empty() {
            self.rank() == 0 && other.rank() == 0
        } else {
            crate::linear::span_equal(self.field(), &a, &b)
        })
    }

    pub fn contains(&self, element: &AlgebraElement) -> bool {
        echelon(self.field(), self.table.dim(), &self.vectors()).contains(&element.to_dense())
    }
}

fn require_type_d(table: &StructureTable, op: &'static str) -> Result<()> {
    if table.group_type() == GroupType::D {
        Ok(())
    } else {
        Err(Error::UnsupportedType { op, expected: 'D' })
    }
}

fn echelon(field: Field, dim: usize, vectors: &[Vec<BigInt>]) -> Echelon {
    let mut e = Echelon::new(field, dim);
    for v in vectors {
        e.insert(v);
    }
    e
}

/// `B_κ - B_ρ` for every label `κ` whose class representative `ρ` differs.
fn class_differences(
    table: &Arc<StructureTable>,
    mode: ScalarMode,
    class_map: &BTreeMap<Composition, Composition>,
) -> Vec<AlgebraElement> {
    table
        .basis()
        .iter()
        .enumerate()
        .filter_map(|(i, k)| {
            let rep = &class_map[k];
            (rep != k).then(|| {
                let r = table.index_of(rep).expect("representative is a basis label");
                AlgebraElement::difference(table, mode, i, r)
            })
        })
        .collect()
}

/// Over ℚ: `B_κ - B_ρ` for each label `κ` and its `≈`-representative `ρ ≠ κ`.
pub fn radical_char0(table: &Arc<StructureTable>) -> Result<RadicalBasis> {
    require_type_d(table, "radical")?;
    let class_map = labels::class_map(table.n())?;
    let spanning_set = class_differences(table, ScalarMode::Integer, &class_map);
    Ok(RadicalBasis {
        table: Arc::clone(table),
        mode: ScalarMode::Integer,
        spanning_set,
        class_map,
    })
}

/// Over 𝔽_p, following the combinatorial description.
///
/// Odd `p`: the class differences plus every `B̄_κ` with a component
/// repeated at least `p` times. `p = 2`, `n` even: every `B̄_κ` with
/// `κ ≠ []`. `p = 2`, `n` odd: every `B̄_κ` with `κ ∉ {[], [n], [n]^∨}`, and
/// `B̄_[n] - B̄_[n]^∨`.
pub fn radical_mod_p(table: &Arc<StructureTable>, p: Prime) -> Result<RadicalBasis> {
    require_type_d(table, "radical")?;
    let n = table.n();
    let mode = ScalarMode::Modular(p);
    let class_map = labels::class_map(n)?;
    let single = |i: usize| AlgebraElement::basis(table, i, mode);
    let spanning_set = if p.get() == 2 {
        let top = Composition::new(vec![n], Region::Main, n)?;
        let top_prime = Composition::new(vec![n], Region::MainPrime, n)?;
        let keep = |k: &Composition| {
            k.parts().is_empty() || (n % 2 == 1 && (*k == top || *k == top_prime))
        };
        let mut out: Vec<_> = table
            .basis()
            .iter()
            .enumerate()
            .filter(|(_, k)| !keep(k))
            .map(|(i, _)| single(i))
            .collect();
        if n % 2 == 1 {
            let (a, b) = (table.index_of(&top), table.index_of(&top_prime));
            out.push(AlgebraElement::difference(table, mode, a.unwrap(), b.unwrap()));
        }
        out
    } else {
        let mut out = class_differences(table, mode, &class_map);
        out.extend(
            table
                .basis()
                .iter()
                .enumerate()
                .filter(|(_, k)| labels::max_multiplicity(k) >= p.get() as usize)
                .map(|(i, _)| single(i)),
        );
        out
    };
    Ok(RadicalBasis {
        table: Arc::clone(table),
        mode,
        spanning_set,
        class_map,
    })
}

/// Over 𝔽_p, from the group: `𝒳̄_J - 𝒳̄_K` for conjugate subsets `J, K`,
/// together with every `𝒳̄_J` for which `p | a_JJJ`.
///
/// Conjugacy is computed by the group action, and `a_JJJ` by direct count,
/// so nothing here depends on the label combinatorics.
pub fn radical_mod_p_via_a_jjj(table: &Arc<StructureTable>, group: &Group, p: Prime) -> Result<RadicalBasis> {
    require_type_d(table, "radical")?;
    if group.system() != table.system() {
        return Err(Error::RankMismatch(group.system().n(), table.n()));
    }
    let mode = ScalarMode::Modular(p);
    let roots = group.subset_conjugacy_classes();
    let root_of = |i: usize| roots[table.coset_subset(i).bits() as usize];
    let mut anchor: BTreeMap<u32, usize> = BTreeMap::new();
    for i in 0..table.dim() {
        anchor.entry(root_of(i)).or_insert(i);
    }
    let basis = table.basis();
    let class_map: BTreeMap<Composition, Composition> = (0..table.dim())
        .map(|i| (basis[i].clone(), basis[anchor[&root_of(i)]].clone()))
        .collect();
    let mut spanning_set = class_differences(table, mode, &class_map);
    let divisible: Vec<usize> = (0..table.dim())
        .into_par_iter()
        .filter(|&i| {
            let j = table.coset_subset(i);
            structure_constant_direct(group, j, j, j) % p.get() == 0
        })
        .collect();
    spanning_set.extend(divisible.into_iter().map(|i| AlgebraElement::basis(table, i, mode)));
    Ok(RadicalBasis {
        table: Arc::clone(table),
        mode,
        spanning_set,
        class_map,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `B_κ · v`
    Left,
    /// `v · B_κ`
    Right,
}

/// A product that leaves the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFailure {
    pub side: Side,
    pub spanning_index: usize,
    pub basis_label: Composition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub is_left_ideal: bool,
    pub is_right_ideal: bool,
    pub left_failure: Option<IdealFailure>,
    pub right_failure: Option<IdealFailure>,
    /// Least `k` with `I^k = 0`; `None` if the powers stall or exceed
    /// `dim + 1`.
    pub nilpotency_index: Option<usize>,
    pub rank: usize,
    pub quotient_dim: usize,
}

impl IdealReport {
    pub fn is_ideal(&self) -> bool {
        self.is_left_ideal && self.is_right_ideal
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index.is_some()
    }
}

/// Dense product, with a machine-word path over 𝔽_p.
fn product(table: &StructureTable, field: Field, a: &[BigInt], b: &[(usize, BigInt)]) -> Vec<BigInt> {
    match field {
        Field::Rational => {
            let mut out = vec![BigInt::zero(); table.dim()];
            for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, bj) in b {
                    let ab = ai * bj;
                    for &(k, c) in table.product(i, *j) {
                        out[k as usize] += &ab * c;
                    }
                }
            }
            out
        }
        Field::Modular(p) => {
            let p = p.get() as u128;
            let residue = |x: &BigInt| {
                let m = BigInt::from(p as u64);
                ((x % &m + &m) % &m).to_u64().expect("residue") as u128
            };
            let a: Vec<u128> = a.iter().map(residue).collect();
            let b: Vec<(usize, u128)> = b.iter().map(|(j, x)| (*j, residue(x))).collect();
            let mut out = vec![0u128; table.dim()];
            for (i, &ai) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
                for &(j, bj) in &b {
                    let ab = ai * bj % p;
                    for &(k, c) in table.product(i, j) {
                        out[k as usize] = (out[k as usize] + ab * (c as u128 % p)) % p;
                    }
                }
            }
            out.into_iter().map(BigInt::from).collect()
        }
    }
}

fn sparse(v: &[BigInt]) -> Vec<(usize, BigInt)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::one();
    v
}

/// Checks that the span is closed under multiplication by every basis
/// element on each side, and measures its nilpotency index by computing
/// `I^{k+1} = I^k · I` until it vanishes.
pub fn verify_ideal(basis: &RadicalBasis) -> IdealReport {
    let table = basis.table();
    let dim = table.dim();
    let field = basis.field();
    let vectors = basis.vectors();
    let span = echelon(field, dim, &vectors);
    let rank = span.rank();

    let first_failure = |side: Side| -> Option<IdealFailure> {
        (0..vectors.len() * dim)
            .into_par_iter()
            .find_first(|&t| {
                let (s, b) = (t / dim, t % dim);
                let prod = match side {
                    Side::Left => product(table, field, &unit(dim, b), &sparse(&vectors[s])),
                    Side::Right => product(table, field, &vectors[s], &[(b, BigInt::one())]),
                };
                !span.contains(&prod)
            })
            .map(|t| IdealFailure {
                side,
                spanning_index: t / dim,
                basis_label: table.basis()[t % dim].clone(),
            })
    };
    let left_failure = first_failure(Side::Left);
    let right_failure = first_failure(Side::Right);

    let generators: Vec<Vec<(usize, BigInt)>> = vectors.iter().map(|v| sparse(v)).collect();
    let mut power = span.vectors();
    let mut k = 1;
    let nilpotency_index = loop {
        if power.is_empty() {
            break Some(k);
        }
        if k > dim {
            break None;
        }
        let products: Vec<Vec<BigInt>> = power
            .par_iter()
            .flat_map_iter(|u| generators.iter().map(move |g| product(table, field, u, g)))
            .collect();
        let next = echelon(field, dim, &products);
        if next.rank() >= power.len() {
            break None;
        }
        power = next.vectors();
        k += 1;
    };

    IdealReport {
        is_left_ideal: left_failure.is_none(),
        is_right_ideal: right_failure.is_none(),
        left_failure,
        right_failure,
        nilpotency_index,
        rank,
        quotient_dim: dim - rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_table;
    use crate::coxeter::{CoxeterSystem, ResourceBound};

    fn table(n: usize) -> Arc<StructureTable> {
        build_table(CoxeterSystem::type_d(n).unwrap(), ResourceBound::default()).unwrap()
    }

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn lab(parts: &[usize], region: Region, n: usize) -> Composition {
        Composition::new(parts.to_vec(), region, n).unwrap()
    }

    #[test]
    fn char0_sizes() {
        assert!(radical_char0(&table(2)).unwrap().spanning_set().is_empty());
        assert_eq!(radical_char0(&table(4)).unwrap().spanning_set().len(), 5);
        for n in 2..=5 {
            let classes = labels::class_representatives(n).unwrap().len();
            assert_eq!(radical_char0(&table(n)).unwrap().spanning_set().len(), (1 << n) - classes);
        }
    }

    #[test]
    fn spanning_elements_have_the_stated_shape() {
        let t = table(4);
        let mut bases = vec![radical_char0(&t).unwrap()];
        for p in [2, 3, 5] {
            bases.push(radical_mod_p(&t, prime(p)).unwrap());
        }
        for b in &bases {
            for e in b.spanning_set() {
                let terms: Vec<_> = e.terms().map(|(i, c)| (i, c.clone())).collect();
                let ok = match terms.as_slice() {
                    [(_, c)] => c.is_one() && b.prime().is_some(),
                    [(_, a), (_, c)] => {
                        let minus_one = b.mode().reduce(-BigInt::one());
                        (a.is_one() && *c == minus_one) || (*a == minus_one && c.is_one())
                    }
                    _ => false,
                };
                assert!(ok, "{e}");
            }
        }
    }

    #[test]
    fn n6_example_pairs() {
        let t = table(6);
        let rad = radical_char0(&t).unwrap();
        let idx = |k: &Composition| t.index_of(k).unwrap();
        // [1,2,2,1]^∨ is not a label of 𝒞(6); its class is that of [2,2,1,1]^∨
        let a = lab(&[2, 1, 2, 1], Region::Main, 6);
        let b = lab(&[2, 2, 1, 1], Region::MainPrime, 6);
        assert!(rad.contains(&AlgebraElement::difference(&t, ScalarMode::Integer, idx(&a), idx(&b))));
        let a = lab(&[4, 2], Region::Main, 6);
        let b = lab(&[2, 4], Region::MainPrime, 6);
        assert!(!rad.contains(&AlgebraElement::difference(&t, ScalarMode::Integer, idx(&a), idx(&b))));
    }

    #[test]
    fn empty_span_is_trivially_nilpotent() {
        let report = verify_ideal(&radical_char0(&table(2)).unwrap());
        assert!(report.is_ideal());
        assert_eq!(report.nilpotency_index, Some(1));
        assert_eq!(report.quotient_dim, 4);
    }

    #[test]
    fn char0_is_nilpotent_ideal() {
        for n in 2..=5 {
            let report = verify_ideal(&radical_char0(&table(n)).unwrap());
            assert!(report.is_ideal(), "n = {n}: {report:?}");
            assert!(report.is_nilpotent(), "n = {n}");
            assert_eq!(report.quotient_dim, labels::class_representatives(n).unwrap().len());
        }
    }

    #[test]
    fn mod_p_examples() {
        let t4 = table(4);
        let r = radical_mod_p(&t4, prime(2)).unwrap();
        assert_eq!(r.spanning_set().len(), 15);
        assert_eq!(verify_ideal(&r).quotient_dim, 1);
        let t5 = table(5);
        let r = radical_mod_p(&t5, prime(2)).unwrap();
        assert_eq!(r.spanning_set().len(), 30);
        assert_eq!(verify_ideal(&r).quotient_dim, 2);
        let r = radical_mod_p(&t4, prime(3)).unwrap();
        assert_eq!(r.spanning_set().len(), 6);
        let report = verify_ideal(&r);
        assert_eq!(report.quotient_dim, 10);
        assert!(report.is_ideal() && report.is_nilpotent());
    }

    #[test]
    fn both_mod_p_routes_agree() {
        for n in 2..=5 {
            let t = table(n);
            let g = Group::enumerate(t.system(), ResourceBound::default()).unwrap();
            for p in [2, 3, 5] {
                let a = radical_mod_p(&t, prime(p)).unwrap();
                let b = radical_mod_p_via_a_jjj(&t, &g, prime(p)).unwrap();
                assert!(a.span_equal(&b).unwrap(), "n = {n}, p = {p}");
            }
        }
    }

    #[test]
    fn large_prime_leaves_only_differences() {
        let t = table(4);
        let g = Group::enumerate(t.system(), ResourceBound::default()).unwrap();
        let big = (0..t.dim()).map(|i| t.diagonal_constant(i)).max().unwrap() + 1;
        let p = (big..).find(|&q| Prime::new(q).is_ok()).unwrap();
        let via = radical_mod_p_via_a_jjj(&t, &g, prime(p)).unwrap();
        assert!(via.spanning_set().iter().all(|e| e.terms().count() == 2));
        assert_eq!(via.spanning_set().len(), 5);
    }

    #[test]
    fn non_ideal_reports_failure() {
        let t = table(3);
        // a single basis element that is not in the radical
        let top = t.index_of(&lab(&[3], Region::Main, 3)).unwrap();
        let rb = RadicalBasis {
            table: Arc::clone(&t),
            mode: ScalarMode::Integer,
            spanning_set: vec![AlgebraElement::basis(&t, top, ScalarMode::Integer)],
            class_map: BTreeMap::new(),
        };
        let report = verify_ideal(&rb);
        assert!(!report.is_ideal());
        assert!(report.left_failure.is_some() || report.right_failure.is_some());
    }

    #[test]
    fn type_a_rejected() {
        let t = build_table(CoxeterSystem::type_a(3).unwrap(), ResourceBound::default()).unwrap();
        assert!(matches!(radical_char0(&t), Err(Error::UnsupportedType { .. })));
    }
}
