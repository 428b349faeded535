//! Coxeter groups of type D (and type A) realised as signed permutations.
//!
//! Generators are addressed by a bit index in the canonical order
//! `1', 1, 2, ..., n-1` for type D, so bit 0 is `s_1'` and bit `i` is `s_i`.
//! Type A has no `s_1'` and bit `i - 1` is `s_i`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest rank the fixed-width permutation storage supports.
pub const MAX_RANK: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupType {
    A,
    D,
}

impl GroupType {
    pub fn letter(self) -> char {
        match self {
            GroupType::A => 'A',
            GroupType::D => 'D',
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl std::str::FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(GroupType::A),
            "D" | "d" => Ok(GroupType::D),
            other => Err(Error::InvalidLabel(format!("group type {other}"))),
        }
    }
}

/// An element of the signed symmetric group in one-line notation.
///
/// Only the images of `1..=n` are stored; `w(-i) = -w(i)` is implicit.
/// Ordering is lexicographic on the one-line notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    n: u8,
    image: [i8; MAX_RANK],
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_RANK);
        let mut image = [0i8; MAX_RANK];
        for (i, slot) in image.iter_mut().enumerate().take(n) {
            *slot = (i + 1) as i8;
        }
        SignedPermutation { n: n as u8, image }
    }

    /// Builds a signed permutation from its one-line notation.
    pub fn from_image(values: &[i64]) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::InvalidPermutation(format!("{values:?}")));
        }
        let mut seen = [false; MAX_RANK];
        let mut image = [0i8; MAX_RANK];
        for (i, &v) in values.iter().enumerate() {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return Err(Error::InvalidPermutation(format!("{values:?}")));
            }
            seen[a - 1] = true;
            image[i] = v as i8;
        }
        Ok(SignedPermutation { n: n as u8, image })
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn image(&self) -> &[i8] {
        &self.image[..self.n as usize]
    }

    /// `w(i)` for `i` in `±1..=±n`.
    #[inline]
    pub fn apply(&self, i: i8) -> i8 {
        let v = self.image[(i.unsigned_abs() - 1) as usize];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.mul(other))
    }

    /// `(self ∘ other)(i) = self(other(i))`; ranks must agree.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut image = [0i8; MAX_RANK];
        for i in 0..self.n as usize {
            image[i] = self.apply(other.image[i]);
        }
        SignedPermutation { n: self.n, image }
    }

    pub fn inverse(&self) -> Self {
        let mut image = [0i8; MAX_RANK];
        for i in 0..self.n as usize {
            let v = self.image[i];
            let target = (v.unsigned_abs() - 1) as usize;
            let src = (i + 1) as i8;
            image[target] = if v < 0 { -src } else { src };
        }
        SignedPermutation { n: self.n, image }
    }

    pub fn is_identity(&self) -> bool {
        self.image().iter().enumerate().all(|(i, &v)| v == (i + 1) as i8)
    }

    pub fn negative_count(&self) -> usize {
        self.image().iter().filter(|&&v| v < 0).count()
    }

    /// Membership in `D_n`: an even number of sign changes.
    pub fn is_even_signed(&self) -> bool {
        self.negative_count() % 2 == 0
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.image().iter().join(","))
    }
}

/// A Coxeter generator: `s_1'` or `s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Prime,
    Adjacent(u8),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Prime => write!(f, "1'"),
            Generator::Adjacent(i) => write!(f, "{i}"),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('s').trim_start_matches('_');
        if t == "1'" || t == "1′" {
            return Ok(Generator::Prime);
        }
        t.parse::<u8>()
            .map(Generator::Adjacent)
            .map_err(|_| Error::InvalidGenerator(s.to_string()))
    }
}

/// A subset of the Coxeter generators, as a bit set in canonical order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSet(pub u32);

impl GeneratorSet {
    pub const EMPTY: GeneratorSet = GeneratorSet(0);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }
    #[inline]
    pub fn contains(self, bit: usize) -> bool {
        self.0 >> bit & 1 == 1
    }
    #[inline]
    pub fn with(self, bit: usize) -> Self {
        GeneratorSet(self.0 | 1 << bit)
    }
    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        GeneratorSet(self.0 & other.0)
    }
    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }
    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&b| self.contains(b))
    }
}

/// Resource limits on group enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceBound {
    pub max_rank_d: usize,
    pub max_rank_a: usize,
}

impl Default for ResourceBound {
    fn default() -> Self {
        ResourceBound {
            max_rank_d: 8,
            max_rank_a: 9,
        }
    }
}

impl ResourceBound {
    /// Lifts both limits to at least `n`, capped at [`MAX_RANK`].
    pub fn overridden(n: usize) -> Self {
        let n = n.min(MAX_RANK);
        let d = ResourceBound::default();
        ResourceBound {
            max_rank_d: d.max_rank_d.max(n),
            max_rank_a: d.max_rank_a.max(n),
        }
    }

    fn limit(&self, ty: GroupType) -> usize {
        match ty {
            GroupType::A => self.max_rank_a,
            GroupType::D => self.max_rank_d,
        }
    }
}

/// A Coxeter system `(W, S)` of type A_{n-1} (acting on `n` letters) or D_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterSystem {
    ty: GroupType,
    n: usize,
}

impl CoxeterSystem {
    pub fn new(ty: GroupType, n: usize) -> Result<Self> {
        let min = match ty {
            GroupType::A => 1,
            GroupType::D => 2,
        };
        if n < min {
            return Err(Error::InvalidRank {
                group: ty.letter(),
                n,
                reason: "rank too small",
            });
        }
        if n > MAX_RANK {
            return Err(Error::InvalidRank {
                group: ty.letter(),
                n,
                reason: "rank exceeds storage width",
            });
        }
        Ok(CoxeterSystem { ty, n })
    }

    pub fn type_d(n: usize) -> Result<Self> {
        Self::new(GroupType::D, n)
    }

    pub fn type_a(n: usize) -> Result<Self> {
        Self::new(GroupType::A, n)
    }

    pub fn group_type(&self) -> GroupType {
        self.ty
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|S|`.
    pub fn generator_count(&self) -> usize {
        match self.ty {
            GroupType::A => self.n - 1,
            GroupType::D => self.n,
        }
    }

    pub fn full_set(&self) -> GeneratorSet {
        GeneratorSet((1u32 << self.generator_count()) - 1)
    }

    pub fn complement(&self, set: GeneratorSet) -> GeneratorSet {
        GeneratorSet(!set.0 & self.full_set().0)
    }

    /// `|W|`: `2^{n-1} n!` for D_n and `n!` for S_n.
    pub fn order(&self) -> u64 {
        let fact: u64 = (1..=self.n as u64).product();
        match self.ty {
            GroupType::A => fact,
            GroupType::D => fact << (self.n - 1),
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.generator_count())
            .map(|b| self.generator_at(b))
            .collect()
    }

    pub fn generator_at(&self, bit: usize) -> Generator {
        match self.ty {
            GroupType::A => Generator::Adjacent(bit as u8 + 1),
            GroupType::D if bit == 0 => Generator::Prime,
            GroupType::D => Generator::Adjacent(bit as u8),
        }
    }

    pub fn bit_of(&self, g: Generator) -> Result<usize> {
        match (self.ty, g) {
            (GroupType::D, Generator::Prime) => Ok(0),
            (GroupType::A, Generator::Prime) => Err(Error::InvalidGenerator("1' in type A".into())),
            (_, Generator::Adjacent(i)) if i >= 1 && (i as usize) < self.n => Ok(match self.ty {
                GroupType::A => i as usize - 1,
                GroupType::D => i as usize,
            }),
            (_, g) => Err(Error::InvalidGenerator(format!("{g} for rank {}", self.n))),
        }
    }

    pub fn set_of(&self, gens: &[Generator]) -> Result<GeneratorSet> {
        gens.iter()
            .try_fold(GeneratorSet::EMPTY, |acc, &g| Ok(acc.with(self.bit_of(g)?)))
    }

    pub fn format_set(&self, set: GeneratorSet) -> String {
        format!(
            "{{{}}}",
            set.iter().map(|b| self.generator_at(b).to_string()).join(",")
        )
    }

    /// The signed permutation of a generator: `s_i = (-i-1,-i)(i,i+1)`,
    /// `s_1' = (-2,1)(-1,2)`.
    pub fn generator(&self, g: Generator) -> Result<SignedPermutation> {
        self.bit_of(g)?;
        let mut w = SignedPermutation::identity(self.n);
        match g {
            Generator::Prime => {
                w.image[0] = -2;
                w.image[1] = -1;
            }
            Generator::Adjacent(i) => {
                let i = i as usize;
                w.image.swap(i - 1, i);
            }
        }
        Ok(w)
    }

    pub fn generator_by_bit(&self, bit: usize) -> SignedPermutation {
        self.generator(self.generator_at(bit))
            .expect("bit within generator range")
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        w.rank() == self.n
            && match self.ty {
                GroupType::A => w.negative_count() == 0,
                GroupType::D => w.is_even_signed(),
            }
    }

    /// Coxeter length: inversions, plus for type D the pairs `i<j` with
    /// `w(i) + w(j) < 0`.
    pub fn length(&self, w: &SignedPermutation) -> usize {
        let v = w.image();
        let mut len = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    len += 1;
                }
                if self.ty == GroupType::D && v[i] + v[j] < 0 {
                    len += 1;
                }
            }
        }
        len
    }

    /// Right descents from the closed-form tests on the one-line notation.
    #[inline]
    pub fn right_descents(&self, w: &SignedPermutation) -> GeneratorSet {
        let v = w.image();
        let mut bits = 0u32;
        match self.ty {
            GroupType::A => {
                for i in 0..self.n - 1 {
                    if v[i] > v[i + 1] {
                        bits |= 1 << i;
                    }
                }
            }
            GroupType::D => {
                if v[0] + v[1] < 0 {
                    bits |= 1;
                }
                for i in 1..self.n {
                    if v[i - 1] > v[i] {
                        bits |= 1 << i;
                    }
                }
            }
        }
        GeneratorSet(bits)
    }

    pub fn left_descents(&self, w: &SignedPermutation) -> GeneratorSet {
        self.right_descents(&w.inverse())
    }

    /// Identifies `w` as a Coxeter generator, returning its bit.
    pub fn recognize_generator(&self, w: &SignedPermutation) -> Option<usize> {
        let v = w.image();
        let first = (0..self.n).find(|&i| v[i] != (i + 1) as i8)?;
        if first + 1 >= self.n {
            return None;
        }
        let (a, b) = (v[first], v[first + 1]);
        let bit = if a == (first + 2) as i8 && b == (first + 1) as i8 {
            match self.ty {
                GroupType::A => first,
                GroupType::D => first + 1,
            }
        } else if self.ty == GroupType::D && first == 0 && a == -2 && b == -1 {
            0
        } else {
            return None;
        };
        if v[first + 2..]
            .iter()
            .enumerate()
            .all(|(k, &x)| x == (first + 3 + k) as i8)
        {
            Some(bit)
        } else {
            None
        }
    }

    /// If `x^{-1} s x` is a generator `t`, returns `t`.
    pub fn conjugate_generator(&self, x: &SignedPermutation, g: Generator) -> Result<Option<Generator>> {
        if x.rank() != self.n {
            return Err(Error::RankMismatch(x.rank(), self.n));
        }
        let bit = self.bit_of(g)?;
        Ok(self
            .conjugate_bit(&x.inverse(), x, bit)
            .map(|b| self.generator_at(b)))
    }

    #[inline]
    fn conjugate_bit(&self, x_inv: &SignedPermutation, x: &SignedPermutation, bit: usize) -> Option<usize> {
        let s = self.generator_by_bit(bit);
        self.recognize_generator(&x_inv.mul(&s).mul(x))
    }

    /// For each generator bit, the bit of `x^{-1} s x` when that is a generator.
    pub fn conjugation_map(&self, x: &SignedPermutation) -> Vec<Option<usize>> {
        let x_inv = x.inverse();
        (0..self.generator_count())
            .map(|b| self.conjugate_bit(&x_inv, x, b))
            .collect()
    }

    fn diagram_adjacent(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        match self.ty {
            GroupType::A => b == a + 1,
            GroupType::D => (b == 2 && a <= 1) || (a >= 2 && b == a + 1),
        }
    }

    /// `|W_J|`, from the connected components of `J` in the Coxeter diagram.
    pub fn parabolic_order(&self, set: GeneratorSet) -> u64 {
        let mut left = set.bits();
        let mut order = 1u64;
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut component = 1u32 << start;
            let mut frontier = vec![start];
            while let Some(a) = frontier.pop() {
                for b in GeneratorSet(left).iter() {
                    if component >> b & 1 == 0 && self.diagram_adjacent(a, b) {
                        component |= 1 << b;
                        frontier.push(b);
                    }
                }
            }
            left &= !component;
            let m = component.count_ones() as u64;
            let fact = |k: u64| (1..=k).product::<u64>();
            order *= if self.ty == GroupType::D && component & 0b111 == 0b111 {
                fact(m) << (m - 1)
            } else {
                fact(m + 1)
            };
        }
        order
    }

    /// Product of the given generators left to right.
    pub fn word(&self, gens: &[Generator]) -> Result<SignedPermutation> {
        gens.iter().try_fold(SignedPermutation::identity(self.n), |acc, &g| {
            Ok(acc.mul(&self.generator(g)?))
        })
    }
}

/// A fully enumerated group with cached descent sets.
///
/// Elements are sorted lexicographically by one-line notation; every index
/// handed out by this crate refers to that order.
pub struct Group {
    system: CoxeterSystem,
    elements: Vec<SignedPermutation>,
    right: Vec<GeneratorSet>,
    left: Vec<GeneratorSet>,
    index: HashMap<SignedPermutation, u32>,
}

impl Group {
    pub fn enumerate(system: CoxeterSystem, bound: ResourceBound) -> Result<Self> {
        let limit = bound.limit(system.group_type());
        if system.n() > limit {
            return Err(Error::ResourceBound {
                what: "group rank",
                limit,
                requested: system.n(),
            });
        }
        let elements = enumerate_elements(system);
        let right: Vec<_> = elements.par_iter().map(|w| system.right_descents(w)).collect();
        let left: Vec<_> = elements.par_iter().map(|w| system.left_descents(w)).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (*w, i as u32))
            .collect();
        Ok(Group {
            system,
            elements,
            right,
            left,
            index,
        })
    }

    pub fn system(&self) -> CoxeterSystem {
        self.system
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SignedPermutation {
        &self.elements[i]
    }

    pub fn right_descents(&self, i: usize) -> GeneratorSet {
        self.right[i]
    }

    pub fn left_descents(&self, i: usize) -> GeneratorSet {
        self.left[i]
    }

    pub fn index_of(&self, w: &SignedPermutation) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&SignedPermutation::identity(self.system.n()))
            .expect("identity is enumerated")
    }

    /// Labels each subset `J ⊆ S` by the smallest subset conjugate to it.
    ///
    /// `J` and `K` are conjugate when `x^{-1} J x = K` for some `x ∈ W`.
    pub fn subset_conjugacy_classes(&self) -> Vec<u32> {
        let sys = self.system;
        let count = 1usize << sys.generator_count();
        let mut parent: Vec<u32> = (0..count as u32).collect();
        fn find(p: &mut [u32], mut a: u32) -> u32 {
            while p[a as usize] != a {
                p[a as usize] = p[p[a as usize] as usize];
                a = p[a as usize];
            }
            a
        }
        let maps: Vec<Vec<Option<usize>>> = self
            .elements
            .par_iter()
            .map(|x| sys.conjugation_map(x))
            .collect();
        for map in &maps {
            let domain = map
                .iter()
                .enumerate()
                .filter(|(_, t)| t.is_some())
                .fold(0u32, |acc, (b, _)| acc | 1 << b);
            for_each_subset(domain, |j| {
                let k = GeneratorSet(j)
                    .iter()
                    .fold(0u32, |acc, b| acc | 1 << map[b].unwrap());
                let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi as usize] = lo;
                }
            });
        }
        (0..count as u32).map(|j| find(&mut parent, j)).collect()
    }
}

/// Calls `f` on every subset of `mask` (including `0` and `mask`).
#[inline]
pub fn for_each_subset(mask: u32, mut f: impl FnMut(u32)) {
    let mut sub = mask;
    loop {
        f(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
}

fn enumerate_elements(system: CoxeterSystem) -> Vec<SignedPermutation> {
    let n = system.n();
    let sign_masks: Vec<u32> = match system.group_type() {
        GroupType::A => vec![0],
        GroupType::D => (0..1u32 << n).filter(|m| m.count_ones() % 2 == 0).collect(),
    };
    let perms: Vec<Vec<usize>> = (1..=n).permutations(n).collect();
    let mut out: Vec<SignedPermutation> = perms
        .par_iter()
        .flat_map_iter(|p| {
            sign_masks.iter().map(move |&m| {
                let mut image = [0i8; MAX_RANK];
                for (i, &v) in p.iter().enumerate() {
                    image[i] = if m >> i & 1 == 1 { -(v as i8) } else { v as i8 };
                }
                SignedPermutation { n: n as u8, image }
            })
        })
        .collect();
    out.par_sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn d(n: usize) -> CoxeterSystem {
        CoxeterSystem::type_d(n).unwrap()
    }

    fn bfs_lengths(group: &Group) -> Vec<usize> {
        let sys = group.system();
        let gens: Vec<_> = (0..sys.generator_count()).map(|b| sys.generator_by_bit(b)).collect();
        let mut dist = vec![usize::MAX; group.len()];
        let start = group.identity_index();
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let j = group.index_of(&group.element(i).mul(s)).unwrap();
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    #[test]
    fn generators_match_transposition_products() {
        let sys = d(3);
        let s1 = sys.generator(Generator::Adjacent(1)).unwrap();
        assert_eq!(s1.image(), &[2, 1, 3]);
        let s1p = sys.generator(Generator::Prime).unwrap();
        assert_eq!(s1p.image(), &[-2, -1, 3]);
        for g in sys.generators() {
            let s = sys.generator(g).unwrap();
            assert!(s.mul(&s).is_identity());
            assert_eq!(s.inverse(), s);
            assert_eq!(sys.length(&s), 1);
            assert_eq!(sys.recognize_generator(&s), Some(sys.bit_of(g).unwrap()));
        }
        let s = d(2).generator(Generator::Adjacent(1)).unwrap();
        assert!(s.mul(&s).is_identity());
    }

    #[test]
    fn invalid_generators_rejected() {
        assert!(d(3).generator(Generator::Adjacent(3)).is_err());
        assert!(d(3).generator(Generator::Adjacent(0)).is_err());
        assert!(CoxeterSystem::type_a(3).unwrap().generator(Generator::Prime).is_err());
        assert!(CoxeterSystem::type_d(1).is_err());
    }

    #[test]
    fn compose_examples() {
        let sys = d(2);
        let s1p = sys.generator(Generator::Prime).unwrap();
        let s1 = sys.generator(Generator::Adjacent(1)).unwrap();
        // s_1'(s_1(1)) = s_1'(2) = -1, s_1'(s_1(2)) = s_1'(1) = -2
        assert_eq!(s1p.compose(&s1).unwrap().image(), &[-1, -2]);
        let e = SignedPermutation::identity(2);
        assert_eq!(e.compose(&s1p).unwrap(), s1p);
        assert!(e.compose(&SignedPermutation::identity(3)).is_err());
    }

    #[test]
    fn from_image_validates() {
        assert!(SignedPermutation::from_image(&[1, -1]).is_err());
        assert!(SignedPermutation::from_image(&[3, 1]).is_err());
        let w = SignedPermutation::from_image(&[-3, 1, -2]).unwrap();
        assert!(w.is_even_signed());
        assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn group_orders() {
        for n in 2..=6 {
            let g = Group::enumerate(d(n), ResourceBound::default()).unwrap();
            assert_eq!(g.len() as u64, d(n).order());
            assert_eq!(g.len() as u64, (1u64 << (n - 1)) * (1..=n as u64).product::<u64>());
            assert!(g.elements().iter().all(|w| w.is_even_signed()));
            assert!(g.elements().windows(2).all(|p| p[0] < p[1]));
        }
        assert_eq!(Group::enumerate(d(2), ResourceBound::default()).unwrap().len(), 4);
        assert_eq!(Group::enumerate(d(4), ResourceBound::default()).unwrap().len(), 192);
        let a4 = Group::enumerate(CoxeterSystem::type_a(4).unwrap(), ResourceBound::default()).unwrap();
        assert_eq!(a4.len(), 24);
    }

    #[test]
    fn resource_bound_enforced() {
        let err = Group::enumerate(d(9), ResourceBound::default()).err().unwrap();
        assert!(matches!(err, Error::ResourceBound { .. }));
    }

    #[test]
    fn length_matches_bfs_and_descents_match_definition() {
        for sys in [d(2), d(3), d(4), CoxeterSystem::type_a(4).unwrap()] {
            let group = Group::enumerate(sys, ResourceBound::default()).unwrap();
            let bfs = bfs_lengths(&group);
            for (i, w) in group.elements().iter().enumerate() {
                let len = sys.length(w);
                assert_eq!(len, bfs[i], "{w}");
                let mut by_length = GeneratorSet::EMPTY;
                for b in 0..sys.generator_count() {
                    if sys.length(&w.mul(&sys.generator_by_bit(b))) < len {
                        by_length = by_length.with(b);
                    }
                }
                assert_eq!(group.right_descents(i), by_length);
                assert_eq!(group.left_descents(i), sys.right_descents(&w.inverse()));
            }
        }
    }

    #[test]
    fn descents_of_small_elements() {
        let sys = d(3);
        let e = SignedPermutation::identity(3);
        assert!(sys.right_descents(&e).is_empty());
        assert!(sys.left_descents(&e).is_empty());
        let s1 = sys.generator(Generator::Adjacent(1)).unwrap();
        assert_eq!(sys.right_descents(&s1), GeneratorSet(0b010));
        for b in 0..3 {
            let s = sys.generator_by_bit(b);
            assert_eq!(sys.left_descents(&s), GeneratorSet(1 << b));
        }
    }

    #[test]
    fn conjugate_generator_examples() {
        let sys = d(3);
        let e = SignedPermutation::identity(3);
        for g in sys.generators() {
            assert_eq!(sys.conjugate_generator(&e, g).unwrap(), Some(g));
        }
        // s_2 s_1 s_2 = (1,3)(-1,-3): not a generator
        let s2 = sys.generator(Generator::Adjacent(2)).unwrap();
        let conj = s2.mul(&sys.generator(Generator::Adjacent(1)).unwrap()).mul(&s2);
        assert_eq!(conj.image(), &[3, 2, 1]);
        assert_eq!(sys.conjugate_generator(&s2, Generator::Adjacent(1)).unwrap(), None);

        let group = Group::enumerate(d(4), ResourceBound::default()).unwrap();
        for x in group.elements() {
            let images: Vec<_> = d(4).conjugation_map(x).into_iter().flatten().collect();
            let mut dedup = images.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(images.len(), dedup.len());
        }
    }

    #[test]
    fn subset_conjugacy_in_d2_is_trivial() {
        let group = Group::enumerate(d(2), ResourceBound::default()).unwrap();
        assert_eq!(group.subset_conjugacy_classes(), vec![0, 1, 2, 3]);
    }
}
