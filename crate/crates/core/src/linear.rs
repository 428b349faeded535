//! Exact rank and span tests over ℚ and 𝔽_p.
//!
//! Over ℚ the vectors are integral and elimination is fraction-free: a row
//! operation replaces `v` by `a·v - b·r` and strips the content of the
//! result, so entries stay integers throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{Prime, ScalarMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Modular(Prime),
}

impl From<ScalarMode> for Field {
    fn from(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Integer => Field::Rational,
            ScalarMode::Modular(p) => Field::Modular(p),
        }
    }
}

/// An incrementally built row-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Kind {
    Rational(Vec<(usize, Vec<BigInt>)>),
    Modular(u64, Vec<(usize, Vec<u64>)>),
}

fn strip_content(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, a ≠ 0
    let mut result = 1u64;
    let (mut base, mut exp) = (a % p, p - 2);
    while exp > 0 {
        if exp & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    result
}

fn to_residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        let kind = match field {
            Field::Rational => Kind::Rational(Vec::new()),
            Field::Modular(p) => Kind::Modular(p.get(), Vec::new()),
        };
        Echelon { dim, kind }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            Kind::Rational(rows) => rows.len(),
            Kind::Modular(_, rows) => rows.len(),
        }
    }

    fn reduce_rational(rows: &[(usize, Vec<BigInt>)], v: &mut [BigInt]) {
        for (pivot, row) in rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let g = v[*pivot].gcd(&row[*pivot]);
            let a = &row[*pivot] / &g;
            let b = &v[*pivot] / &g;
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &a - &b * r;
            }
            strip_content(v);
        }
    }

    fn reduce_modular(p: u64, rows: &[(usize, Vec<u64>)], v: &mut [u64]) {
        for (pivot, row) in rows {
            let f = v[*pivot];
            if f == 0 {
                continue;
            }
            // rows are normalised to pivot 1
            for (x, r) in v.iter_mut().zip(row) {
                *x = ((*x as u128 + (p - f) as u128 * *r as u128) % p as u128) as u64;
            }
        }
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        match &mut self.kind {
            Kind::Rational(rows) => {
                let mut w = v.to_vec();
                strip_content(&mut w);
                Self::reduce_rational(rows, &mut w);
                match w.iter().position(|x| !x.is_zero()) {
                    Some(pivot) => {
                        if w[pivot].is_negative() {
                            w.iter_mut().for_each(|x| *x = -&*x);
                        }
                        rows.push((pivot, w));
                        true
                    }
                    None => false,
                }
            }
            Kind::Modular(p, rows) => {
                let p = *p;
                let mut w: Vec<u64> = v.iter().map(|x| to_residue(x, p)).collect();
                Self::reduce_modular(p, rows, &mut w);
                match w.iter().position(|&x| x != 0) {
                    Some(pivot) => {
                        let inv = inv_mod(w[pivot], p);
                        w.iter_mut()
                            .for_each(|x| *x = (*x as u128 * inv as u128 % p as u128) as u64);
                        rows.push((pivot, w));
                        true
                    }
                    None => false,
                }
            }
        }
    }

    /// The echelon rows, as integer vectors.
    pub fn vectors(&self) -> Vec<Vec<BigInt>> {
        match &self.kind {
            Kind::Rational(rows) => rows.iter().map(|(_, r)| r.clone()).collect(),
            Kind::Modular(_, rows) => rows
                .iter()
                .map(|(_, r)| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        match &self.kind {
            Kind::Rational(rows) => {
                let mut w = v.to_vec();
                Self::reduce_rational(rows, &mut w);
                w.iter().all(Zero::is_zero)
            }
            Kind::Modular(p, rows) => {
                let mut w: Vec<u64> = v.iter().map(|x| to_residue(x, *p)).collect();
                Self::reduce_modular(*p, rows, &mut w);
                w.iter().all(|&x| x == 0)
            }
        }
    }
}

fn echelon_of(field: Field, dim: usize, vectors: &[Vec<BigInt>]) -> Echelon {
    let mut e = Echelon::new(field, dim);
    for v in vectors {
        e.insert(v);
    }
    e
}

fn dim_of(vectors: &[Vec<BigInt>]) -> usize {
    vectors.first().map_or(0, Vec::len)
}

pub fn rank(field: Field, vectors: &[Vec<BigInt>]) -> usize {
    echelon_of(field, dim_of(vectors), vectors).rank()
}

pub fn in_span(field: Field, v: &[BigInt], vectors: &[Vec<BigInt>]) -> bool {
    echelon_of(field, v.len(), vectors).contains(v)
}

pub fn span_equal(field: Field, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let dim = dim_of(a).max(dim_of(b));
    let ea = echelon_of(field, dim, a);
    let eb = echelon_of(field, dim, b);
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v))
}
