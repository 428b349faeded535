use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::StructureTable;
use crate::error::{Error, Result};

/// A validated prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        let is_prime = p >= 2 && (2u64..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if is_prime {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Integers (read over ℚ) or residues mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Integer,
    Modular(Prime),
}

impl ScalarMode {
    pub fn modulus(self) -> Option<u64> {
        match self {
            ScalarMode::Integer => None,
            ScalarMode::Modular(p) => Some(p.get()),
        }
    }

    pub fn reduce(self, x: BigInt) -> BigInt {
        match self {
            ScalarMode::Integer => x,
            ScalarMode::Modular(p) => {
                let p = BigInt::from(p.get());
                ((x % &p) + &p) % &p
            }
        }
    }
}

/// A finitely supported combination of basis elements `B_κ`.
#[derive(Clone)]
pub struct AlgebraElement {
    table: Arc<StructureTable>,
    mode: ScalarMode,
    coeffs: BTreeMap<usize, BigInt>,
}

impl AlgebraElement {
    pub fn zero(table: &Arc<StructureTable>, mode: ScalarMode) -> Self {
        AlgebraElement {
            table: Arc::clone(table),
            mode,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(table: &Arc<StructureTable>, index: usize, mode: ScalarMode) -> Self {
        Self::from_terms(table, mode, [(index, BigInt::one())])
    }

    /// Builds `Σ c_i B_i`, reducing coefficients and dropping zeros.
    pub fn from_terms(
        table: &Arc<StructureTable>,
        mode: ScalarMode,
        terms: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Self {
        let mut e = Self::zero(table, mode);
        for (i, c) in terms {
            assert!(i < table.dim(), "basis index {i} out of range");
            e.add_term(i, c);
        }
        e
    }

    pub fn from_dense(table: &Arc<StructureTable>, mode: ScalarMode, values: &[BigInt]) -> Self {
        Self::from_terms(table, mode, values.iter().cloned().enumerate())
    }

    /// `B_a - B_b`.
    pub fn difference(table: &Arc<StructureTable>, mode: ScalarMode, a: usize, b: usize) -> Self {
        Self::from_terms(table, mode, [(a, BigInt::one()), (b, -BigInt::one())])
    }

    fn add_term(&mut self, i: usize, c: BigInt) {
        let slot = self.coeffs.entry(i).or_insert_with(BigInt::zero);
        *slot = self.mode.reduce(std::mem::take(slot) + c);
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn table(&self) -> &Arc<StructureTable> {
        &self.table
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.table.dim()];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        let same_table = Arc::ptr_eq(&self.table, &other.table) || self.table.same_constants(&other.table);
        if same_table && self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::from_terms(&self.table, self.mode, self.coeffs.iter().map(|(&i, c)| (i, c * s)))
    }

    /// Bilinear extension of the structure table; residues are reduced mod `p`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.table, self.mode);
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                let ab = a * b;
                for &(k, c) in self.table.product(i, j) {
                    out.add_term(k as usize, &ab * c);
                }
            }
        }
        Ok(out)
    }

    /// `(label, coefficient)` pairs in basis order.
    pub fn dump(&self) -> Vec<(String, i64)> {
        self.coeffs
            .iter()
            .map(|(&i, c)| {
                (
                    self.table.basis()[i].to_string(),
                    c.to_i64().expect("coefficient fits in i64"),
                )
            })
            .collect()
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.check_compatible(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (&i, c)) in self.coeffs.iter().enumerate() {
            let label = &self.table.basis()[i];
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "B{label}")?;
            } else {
                write!(f, "{a}·B{label}")?;
            }
        }
        if let ScalarMode::Modular(p) = self.mode {
            write!(f, " (mod {p})")?;
        }
        Ok(())
    }
}
