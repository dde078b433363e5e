//! Bigraded free modules, their elements and bihomogeneous maps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Polynomial;
use crate::ring::{BiDegree, Monomial, Ring};

/// `F = ⊕ S(-a_i, -b_i)`: basis element `e_i` has degree `twists[i] = (a_i, b_i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeModule {
    twists: Vec<BiDegree>,
}

impl FreeModule {
    pub fn new(twists: Vec<BiDegree>) -> Self {
        FreeModule { twists }
    }

    /// `S^rank` with all generators in degree `(0,0)`.
    pub fn untwisted(rank: usize) -> Self {
        FreeModule { twists: alloc::vec![BiDegree::ZERO; rank] }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn twists(&self) -> &[BiDegree] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> BiDegree {
        self.twists[i]
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        FreeModule { twists }
    }

    /// Every twist shifted by `d`.
    pub fn shifted(&self, d: BiDegree) -> FreeModule {
        FreeModule { twists: self.twists.iter().map(|&t| t + d).collect() }
    }
}

/// Dense element of a free module of known rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    entries: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn zero(rank: usize) -> Self {
        ModuleVector { entries: alloc::vec![Polynomial::zero(); rank] }
    }

    pub fn basis(ring: &Ring, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.entries[i] = Polynomial::one(ring);
        v
    }

    pub fn from_entries(entries: Vec<Polynomial>) -> Self {
        ModuleVector { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn entry(&self, i: usize) -> &Polynomial {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, p: Polynomial) {
        self.entries[i] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &ModuleVector, f: &PrimeField) -> ModuleVector {
        debug_assert_eq!(self.rank(), other.rank());
        ModuleVector {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b, f)).collect(),
        }
    }

    pub fn sub(&self, other: &ModuleVector, f: &PrimeField) -> ModuleVector {
        debug_assert_eq!(self.rank(), other.rank());
        ModuleVector {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b, f)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial, f: &PrimeField) -> ModuleVector {
        ModuleVector { entries: self.entries.iter().map(|a| a.mul(p, f)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32, f: &PrimeField) -> ModuleVector {
        ModuleVector { entries: self.entries.iter().map(|a| a.mul_term(m, c, f)).collect() }
    }

    /// The common degree `d` with entry `i` of degree `d - twist_i`.
    pub fn bidegree(&self, ambient: &FreeModule) -> Result<BiDegree> {
        if self.rank() != ambient.rank() {
            return Err(Error::ShapeMismatch(format!(
                "vector of rank {} in module of rank {}",
                self.rank(),
                ambient.rank()
            )));
        }
        let mut deg = None;
        for (p, &tw) in self.entries.iter().zip(ambient.twists()) {
            if p.is_zero() {
                continue;
            }
            let d = p.bidegree().ok_or(Error::NotBihomogeneous)? + tw;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::NotBihomogeneous),
                _ => {}
            }
        }
        deg.ok_or_else(|| Error::Precondition("the zero vector has no degree".into()))
    }

    /// Entries joined by `"; "`.
    pub fn display(&self, ring: &Ring) -> String {
        let mut s = String::new();
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                s.push_str("; ");
            }
            let _ = write!(s, "{}", p.display(ring));
        }
        s
    }
}

/// A bihomogeneous map of bigraded free modules, stored by columns:
/// column `j` is the image of the `j`-th source basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BihomMatrix {
    ring: Ring,
    source: FreeModule,
    target: FreeModule,
    columns: Vec<ModuleVector>,
}

impl BihomMatrix {
    /// Validates that column `j` is zero or of degree `source.twist(j)`.
    pub fn new(
        ring: Ring,
        source: FreeModule,
        target: FreeModule,
        columns: Vec<ModuleVector>,
    ) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for source of rank {}",
                columns.len(),
                source.rank()
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.rank() != target.rank() {
                return Err(Error::ShapeMismatch(format!("column {} has wrong length", j)));
            }
            if !col.is_zero() && col.bidegree(&target)? != source.twist(j) {
                return Err(Error::NotBihomogeneous);
            }
        }
        Ok(BihomMatrix { ring, source, target, columns })
    }

    pub(crate) fn new_unchecked(
        ring: Ring,
        source: FreeModule,
        target: FreeModule,
        columns: Vec<ModuleVector>,
    ) -> Self {
        debug_assert!(Self::new(ring, source.clone(), target.clone(), columns.clone()).is_ok());
        BihomMatrix { ring, source, target, columns }
    }

    /// Source twists are read off the (nonzero, bihomogeneous) columns.
    pub fn from_columns(ring: Ring, target: FreeModule, columns: Vec<ModuleVector>) -> Result<Self> {
        let twists = columns
            .iter()
            .map(|c| c.bidegree(&target))
            .collect::<Result<Vec<_>>>()?;
        Ok(BihomMatrix { ring, source: FreeModule::new(twists), target, columns })
    }

    pub fn identity(ring: Ring, module: FreeModule) -> Self {
        let r = module.rank();
        let columns = (0..r).map(|i| ModuleVector::basis(&ring, r, i)).collect();
        BihomMatrix { ring, source: module.clone(), target: module, columns }
    }

    pub fn zero(ring: Ring, source: FreeModule, target: FreeModule) -> Self {
        let columns = (0..source.rank()).map(|_| ModuleVector::zero(target.rank())).collect();
        BihomMatrix { ring, source, target, columns }
    }

    /// Multiplication by a bihomogeneous polynomial `p` from `F(-deg p)` to `F`.
    pub fn scalar(ring: Ring, module: FreeModule, p: &Polynomial) -> Result<Self> {
        let d = p.bidegree().ok_or(Error::NotBihomogeneous)?;
        let r = module.rank();
        let columns = (0..r)
            .map(|i| {
                let mut v = ModuleVector::zero(r);
                v.set(i, p.clone());
                v
            })
            .collect();
        Ok(BihomMatrix { ring, source: module.shifted(d), target: module, columns })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[ModuleVector] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<ModuleVector> {
        self.columns
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        self.columns[col].entry(row)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(ModuleVector::is_zero)
    }

    /// Image of `v` (an element of the source).
    pub fn apply(&self, v: &ModuleVector) -> ModuleVector {
        let f = self.ring.field();
        let mut out = ModuleVector::zero(self.target.rank());
        for (c, col) in v.entries().iter().zip(&self.columns) {
            if c.is_zero() {
                continue;
            }
            out = out.add(&col.mul_poly(c, f), f);
        }
        out
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &BihomMatrix) -> Result<BihomMatrix> {
        if f.target != self.source {
            return Err(Error::ShapeMismatch("f.target differs from g.source".into()));
        }
        if f.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        let columns = f.columns.iter().map(|c| self.apply(c)).collect();
        Ok(BihomMatrix {
            ring: self.ring,
            source: f.source.clone(),
            target: self.target.clone(),
            columns,
        })
    }

    /// Horizontal concatenation (same target).
    pub fn concat(&self, other: &BihomMatrix) -> Result<BihomMatrix> {
        if self.target != other.target {
            return Err(Error::ShapeMismatch("concatenated maps need a common target".into()));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(BihomMatrix {
            ring: self.ring,
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            columns,
        })
    }

    /// Keeps only the listed columns.
    pub fn select_columns(&self, keep: &[usize]) -> BihomMatrix {
        BihomMatrix {
            ring: self.ring,
            source: FreeModule::new(keep.iter().map(|&j| self.source.twist(j)).collect()),
            target: self.target.clone(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    /// True when some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.columns.iter().any(|c| c.entries().iter().any(|p| p.as_unit().is_some()))
    }
}
