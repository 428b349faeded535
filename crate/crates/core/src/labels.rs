//! Composition labels for the basis of the descent algebra.
//!
//! For type D the labels form the multiset `C(n)`: compositions of
//! `m <= n-2` ([`Region::Small`]), compositions of `n` starting with 1
//! ([`Region::One`]), and two copies of the compositions of `n` whose first
//! component is at least 2 ([`Region::Main`], [`Region::MainPrime`]).
//! Each label corresponds to a subset `J ⊆ S`, and the basis element
//! `B_κ` is the coset sum of the complement of that subset.
//!
//! For type A the labels are the plain compositions of `n` ([`Region::A`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::algebra::{self, Prime};
use crate::coxeter::{CoxeterSystem, GeneratorSet, Group, GroupType};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    Small,
    One,
    Main,
    MainPrime,
    /// A composition of `n` labelling a type-A basis element.
    A,
}

impl Region {
    pub fn tag(self) -> &'static str {
        match self {
            Region::Small => "Small",
            Region::One => "One",
            Region::Main => "Main",
            Region::MainPrime => "MainPrime",
            Region::A => "A",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "Small" => Region::Small,
            "One" => Region::One,
            "Main" => Region::Main,
            "MainPrime" => Region::MainPrime,
            "A" => Region::A,
            _ => return None,
        })
    }
}

/// A labelled composition; the canonical text form is `[2,4]@MainPrime`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    region: Region,
    n: usize,
}

impl Composition {
    /// Validates the region constraints against the ambient `n`.
    pub fn new(parts: Vec<usize>, region: Region, n: usize) -> Result<Self> {
        let sum: usize = parts.iter().sum();
        let first = parts.first().copied();
        let ok = !parts.contains(&0)
            && match region {
                Region::Small => n >= 2 && sum + 2 <= n,
                Region::One => n >= 2 && sum == n && first == Some(1),
                Region::Main | Region::MainPrime => n >= 2 && sum == n && first >= Some(2),
                Region::A => n >= 1 && sum == n,
            };
        if !ok {
            return Err(Error::InvalidLabel(format!(
                "{} with n = {n}",
                display_parts(&parts, region)
            )));
        }
        Ok(Composition { parts, region, n })
    }

    /// Builds a label without checking membership in `C(n)`.
    ///
    /// Only for evaluating the component-multiset relation on inputs outside
    /// the label set; table lookups will not find such a label.
    pub fn unchecked(parts: Vec<usize>, region: Region, n: usize) -> Self {
        Composition { parts, region, n }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn all_parts_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    fn sorted_parts(&self) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Parses the canonical text form. A bare `[..]` is accepted when the
    /// region is unambiguous (always for type A).
    pub fn parse(text: &str, n: usize, group: GroupType) -> Result<Self> {
        let bad = || Error::InvalidLabel(text.to_string());
        let text = text.trim();
        let (body, tag) = match text.split_once('@') {
            Some((b, t)) => (b.trim(), Some(t.trim())),
            None => (text, None),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        let region = match (tag, group) {
            (Some(t), _) => Region::from_tag(t).ok_or_else(bad)?,
            (None, GroupType::A) => Region::A,
            (None, GroupType::D) => {
                let sum: usize = parts.iter().sum();
                match parts.first() {
                    _ if sum + 2 <= n => Region::Small,
                    Some(1) => Region::One,
                    _ => return Err(bad()),
                }
            }
        };
        if (region == Region::A) != (group == GroupType::A) {
            return Err(bad());
        }
        Composition::new(parts, region, n)
    }

    fn sort_key(&self) -> (Region, usize, &[usize]) {
        (self.region, self.sum(), &self.parts)
    }
}

fn display_parts(parts: &[usize], region: Region) -> String {
    format!("[{}]@{}", parts.iter().join(","), region.tag())
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_parts(&self.parts, self.region))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compositions of `m` in lexicographic order; `[[]]` for `m = 0`.
pub fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::with_capacity(1 << (m - 1));
    let mut current = Vec::new();
    fn rec(remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for first in 1..=remaining {
            current.push(first);
            rec(remaining - first, current, out);
            current.pop();
        }
    }
    rec(m, &mut current, &mut out);
    out
}

fn new_unchecked(parts: Vec<usize>, region: Region, n: usize) -> Composition {
    Composition { parts, region, n }
}

/// Every element of `C(n)` once, in canonical order. `|C(n)| = 2^n`.
pub fn all_labels(n: usize) -> Result<Vec<Composition>> {
    if n < 2 {
        return Err(Error::InvalidRank {
            group: 'D',
            n,
            reason: "labels need n >= 2",
        });
    }
    let mut out = Vec::with_capacity(1 << n);
    for m in 0..=n - 2 {
        out.extend(
            compositions(m)
                .into_iter()
                .map(|c| new_unchecked(c, Region::Small, n)),
        );
    }
    let full = compositions(n);
    out.extend(
        full.iter()
            .filter(|c| c[0] == 1)
            .map(|c| new_unchecked(c.clone(), Region::One, n)),
    );
    for region in [Region::Main, Region::MainPrime] {
        out.extend(
            full.iter()
                .filter(|c| c[0] >= 2)
                .map(|c| new_unchecked(c.clone(), region, n)),
        );
    }
    Ok(out)
}

/// The compositions of `n` labelling the type-A basis, lexicographic.
pub fn type_a_labels(n: usize) -> Result<Vec<Composition>> {
    if n < 1 {
        return Err(Error::InvalidRank {
            group: 'A',
            n,
            reason: "labels need n >= 1",
        });
    }
    Ok(compositions(n)
        .into_iter()
        .map(|c| new_unchecked(c, Region::A, n))
        .collect())
}

pub fn labels_for(system: CoxeterSystem) -> Result<Vec<Composition>> {
    match system.group_type() {
        GroupType::A => type_a_labels(system.n()),
        GroupType::D => all_labels(system.n()),
    }
}

fn partial_sums(parts: &[usize]) -> impl Iterator<Item = usize> + '_ {
    parts[..parts.len().saturating_sub(1)]
        .iter()
        .scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
}

/// The subset `J ⊆ S` corresponding to a label.
///
/// Type D bits follow the canonical order (bit 0 is `s_1'`, bit `i` is
/// `s_i`). Type A labels map to their partial sums `{s_κ1, s_κ1+κ2, ...}`.
pub fn subset_of(label: &Composition) -> GeneratorSet {
    let n = label.n;
    let parts = &label.parts;
    let bits_from = |offset: usize, parts: &[usize]| {
        partial_sums(parts).fold(0u32, |acc, s| acc | 1 << (offset + s))
    };
    let bits = match label.region {
        Region::Small => {
            if parts.is_empty() {
                0
            } else {
                let k0 = n - label.sum();
                // s_{κ0}, s_{κ0+κ1}, ..., s_{κ0+...+κ_{k-1}}
                (1u32 << k0) | bits_from(k0, parts)
            }
        }
        // s_1 belongs to J exactly when κ1 = 1, i.e. in region One
        Region::One | Region::Main => 1 | bits_from(0, parts),
        Region::MainPrime => 1 << 1 | bits_from(0, parts),
        Region::A => partial_sums(parts).fold(0u32, |acc, s| acc | 1 << (s - 1)),
    };
    GeneratorSet(bits)
}

/// Inverse of [`subset_of`] for type D.
pub fn composition_of(set: GeneratorSet, n: usize) -> Result<Composition> {
    if n < 2 || set.bits() >> n != 0 {
        return Err(Error::InvalidLabel(format!("subset {:#b} for n = {n}", set.bits())));
    }
    let rest: Vec<usize> = set.iter().filter(|&b| b >= 2).collect();
    let gaps = |start: usize, cuts: &[usize]| -> Vec<usize> {
        let mut parts = Vec::with_capacity(cuts.len() + 1);
        let mut prev = start;
        for &i in cuts {
            parts.push(i - prev);
            prev = i;
        }
        parts.push(n - prev);
        parts
    };
    let label = match (set.contains(0), set.contains(1)) {
        (true, true) => {
            let mut parts = vec![1];
            parts.extend(gaps(1, &rest));
            new_unchecked(parts, Region::One, n)
        }
        (true, false) => new_unchecked(gaps(0, &rest), Region::Main, n),
        (false, true) => new_unchecked(gaps(0, &rest), Region::MainPrime, n),
        (false, false) => match rest.split_first() {
            None => new_unchecked(vec![], Region::Small, n),
            Some((&k0, cuts)) => new_unchecked(gaps(k0, cuts), Region::Small, n),
        },
    };
    Ok(label)
}

/// Inverse of [`subset_of`] for type A.
pub fn type_a_composition_of(set: GeneratorSet, n: usize) -> Result<Composition> {
    if n < 1 || set.bits() >> (n - 1) != 0 {
        return Err(Error::InvalidLabel(format!("subset {:#b} for n = {n}", set.bits())));
    }
    let mut parts = Vec::new();
    let mut prev = 0;
    for b in set.iter() {
        parts.push(b + 1 - prev);
        prev = b + 1;
    }
    parts.push(n - prev);
    Ok(new_unchecked(parts, Region::A, n))
}

/// How a type-A composition addresses a coset sum. Only one candidate
/// reproduces the worked product `B_[2,1,1] B_[2,2]`; see the tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeAConvention {
    ComplementOfPartialSums,
    PartialSums,
    ComplementOfReversedPartialSums,
    ReversedPartialSums,
}

impl TypeAConvention {
    pub const ALL: [TypeAConvention; 4] = [
        TypeAConvention::ComplementOfPartialSums,
        TypeAConvention::PartialSums,
        TypeAConvention::ComplementOfReversedPartialSums,
        TypeAConvention::ReversedPartialSums,
    ];

    pub fn coset_subset(self, label: &Composition) -> GeneratorSet {
        let n = label.n;
        let full = GeneratorSet((1u32 << (n - 1)) - 1);
        let sums = subset_of(label);
        let reversed = GeneratorSet(sums.iter().fold(0, |acc, b| acc | 1 << (n - 2 - b)));
        let complement = |s: GeneratorSet| GeneratorSet(full.bits() & !s.bits());
        match self {
            TypeAConvention::ComplementOfPartialSums => complement(sums),
            TypeAConvention::PartialSums => sums,
            TypeAConvention::ComplementOfReversedPartialSums => complement(reversed),
            TypeAConvention::ReversedPartialSums => reversed,
        }
    }
}

/// The convention used for type-A tables.
pub const TYPE_A_CONVENTION: TypeAConvention = TypeAConvention::ComplementOfPartialSums;

/// The subset `K` with `B_κ = 𝒳_K`.
pub fn coset_subset(label: &Composition) -> GeneratorSet {
    match label.region {
        Region::A => TYPE_A_CONVENTION.coset_subset(label),
        _ => {
            let full = GeneratorSet((1u32 << label.n) - 1);
            GeneratorSet(full.bits() & !subset_of(label).bits())
        }
    }
}

/// `κ ≈ ν`: equal component multisets, except across `Main`/`MainPrime`
/// when every component is even.
pub fn equivalent(a: &Composition, b: &Composition) -> bool {
    if a.n != b.n || a.sorted_parts() != b.sorted_parts() {
        return false;
    }
    let cross = matches!(
        (a.region, b.region),
        (Region::Main, Region::MainPrime) | (Region::MainPrime, Region::Main)
    );
    !(cross && a.all_parts_even())
}

/// The canonical `≈`-class representative of a label: its unique partition
/// re-ordering, in the first region (Small < One < Main < MainPrime) that
/// holds one.
pub fn representative(label: &Composition) -> Composition {
    let parts = label.sorted_parts();
    let region = match label.region {
        Region::Small => Region::Small,
        Region::A => Region::A,
        _ if parts.first() == Some(&1) => Region::One,
        Region::MainPrime if label.all_parts_even() => Region::MainPrime,
        _ => Region::Main,
    };
    new_unchecked(parts, region, label.n)
}

/// One label per `≈`-class, in canonical order.
pub fn class_representatives(n: usize) -> Result<Vec<Composition>> {
    Ok(all_labels(n)?
        .into_iter()
        .filter(|k| *k == representative(k))
        .collect())
}

/// Map from every label to its class representative.
pub fn class_map(n: usize) -> Result<BTreeMap<Composition, Composition>> {
    Ok(all_labels(n)?
        .into_iter()
        .map(|k| {
            let r = representative(&k);
            (k, r)
        })
        .collect())
}

/// Largest number of equal components (0 for `[]`).
pub fn max_multiplicity(label: &Composition) -> usize {
    label
        .parts
        .iter()
        .counts()
        .into_values()
        .max()
        .unwrap_or(0)
}

/// Indexing set for the irreducible modules of the mod-`p` algebra.
///
/// For odd `p`: the class representatives whose `a_JJJ` is prime to `p`.
/// For `p = 2`: `[]`, together with `[n]` when `n` is odd.
pub fn p_modular_representatives(group: &Group, p: Prime) -> Result<Vec<Composition>> {
    let n = group.system().n();
    if p.get() == 2 {
        let mut out = vec![new_unchecked(vec![], Region::Small, n)];
        if n % 2 == 1 {
            out.push(new_unchecked(vec![n], Region::Main, n));
        }
        return Ok(out);
    }
    aj_selected_representatives(group, p)
}

/// Class representatives `κ` with `p ∤ a_JJJ`, `J = J(κ)^c`.
pub fn aj_selected_representatives(group: &Group, p: Prime) -> Result<Vec<Composition>> {
    let n = group.system().n();
    Ok(class_representatives(n)?
        .into_iter()
        .filter(|k| {
            let j = coset_subset(k);
            algebra::structure_constant_direct(group, j, j, j) % p.get() != 0
        })
        .collect())
}

/// How the two combinatorial readings of "p-regular" compare with the
/// `a_JJJ` criterion for one `(n, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub n: usize,
    pub p: u64,
    pub by_a_jjj: Vec<Composition>,
    /// No component repeated `p` or more times.
    pub by_multiplicity: Vec<Composition>,
    /// No part divisible by `p`.
    pub by_divisibility: Vec<Composition>,
    pub multiplicity_matches: bool,
    pub divisibility_matches: bool,
}

pub fn regularity_report(group: &Group, p: Prime) -> Result<RegularityReport> {
    let n = group.system().n();
    let reps = class_representatives(n)?;
    let by_a_jjj = aj_selected_representatives(group, p)?;
    let pv = p.get() as usize;
    let by_multiplicity: Vec<_> = reps
        .iter()
        .filter(|k| max_multiplicity(k) < pv)
        .cloned()
        .collect();
    let by_divisibility: Vec<_> = reps
        .iter()
        .filter(|k| k.parts.iter().all(|x| x % pv != 0))
        .cloned()
        .collect();
    Ok(RegularityReport {
        n,
        p: p.get(),
        multiplicity_matches: by_multiplicity == by_a_jjj,
        divisibility_matches: by_divisibility == by_a_jjj,
        by_a_jjj,
        by_multiplicity,
        by_divisibility,
    })
}
