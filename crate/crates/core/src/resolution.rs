//! Finitely presented bigraded modules and their minimal free resolutions.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::free::{BihomMatrix, FreeModule, ModuleVector};
use crate::groebner::{kernel_of_map, minimalize_columns, GroebnerBasis};
use crate::poly::Polynomial;
use crate::ring::{BiDegree, Ring};

/// `coker(relations)`: a bigraded module given by generators and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    relations: BihomMatrix,
}

impl PresentedModule {
    pub fn new(relations: BihomMatrix) -> Self {
        PresentedModule { relations }
    }

    /// Builds the module from relation columns; zero columns are dropped.
    pub fn from_columns(ring: Ring, ambient: FreeModule, columns: Vec<ModuleVector>) -> Result<Self> {
        let cols: Vec<ModuleVector> = columns.into_iter().filter(|c| !c.is_zero()).collect();
        Ok(PresentedModule { relations: BihomMatrix::from_columns(ring, ambient, cols)? })
    }

    pub fn free(ring: Ring, ambient: FreeModule) -> Self {
        PresentedModule { relations: BihomMatrix::zero(ring, FreeModule::default(), ambient) }
    }

    /// `S / (f_1, ..., f_k)` with the generator in degree `(0,0)`.
    pub fn cyclic(ring: Ring, ideal: &[Polynomial]) -> Result<Self> {
        let cols = ideal
            .iter()
            .map(|p| ModuleVector::from_entries(alloc::vec![p.clone()]))
            .collect();
        Self::from_columns(ring, FreeModule::untwisted(1), cols)
    }

    pub fn ring(&self) -> &Ring {
        self.relations.ring()
    }

    pub fn ambient(&self) -> &FreeModule {
        self.relations.target()
    }

    pub fn relations(&self) -> &BihomMatrix {
        &self.relations
    }

    /// Adds relation columns.
    pub fn with_extra_relations(&self, extra: &[ModuleVector]) -> Result<Self> {
        let mut cols = self.relations.columns().to_vec();
        cols.extend(extra.iter().cloned());
        Self::from_columns(*self.ring(), self.ambient().clone(), cols)
    }

    /// `M / (g_1, ..., g_t) M` for bihomogeneous `g_i`.
    pub fn quotient_by_elements(&self, elems: &[Polynomial]) -> Result<Self> {
        let r = self.ambient().rank();
        let mut extra = Vec::with_capacity(r * elems.len());
        for g in elems {
            if !g.is_bihomogeneous() {
                return Err(Error::NotBihomogeneous);
            }
            for i in 0..r {
                let mut v = ModuleVector::zero(r);
                v.set(i, g.clone());
                extra.push(v);
            }
        }
        self.with_extra_relations(&extra)
    }

    pub fn groebner(&self) -> GroebnerBasis {
        GroebnerBasis::new(self.ring(), self.ambient(), self.relations.columns())
    }

    pub fn is_zero(&self) -> bool {
        let gb = self.groebner();
        let r = self.ambient().rank();
        (0..r).all(|i| gb.contains(&ModuleVector::basis(self.ring(), r, i)))
    }

    /// `dim_K M_(d)` counted by standard monomials of a Gröbner basis.
    pub fn hilbert_function(&self, d: BiDegree) -> u64 {
        self.hilbert_function_with(&self.groebner(), d)
    }

    pub fn hilbert_function_with(&self, gb: &GroebnerBasis, d: BiDegree) -> u64 {
        let ring = self.ring();
        let mut count = 0;
        for (pos, &tw) in self.ambient().twists().iter().enumerate() {
            for mon in ring.monomials_of_bidegree(d - tw) {
                if !gb.is_leading_multiple(pos, &mon) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// `0 <- F_0 <- F_1 <- ... <- F_L <- 0` with `maps[i-1] = φ_i : F_i -> F_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    ring: Ring,
    modules: Vec<FreeModule>,
    maps: Vec<BihomMatrix>,
    minimal: bool,
}

impl FreeResolution {
    /// Assembles a complex from its maps. `maps[0]` targets `F_0`.
    pub fn from_maps(ring: Ring, f0: FreeModule, maps: Vec<BihomMatrix>, minimal: bool) -> Result<Self> {
        let mut modules = alloc::vec![f0];
        for (i, m) in maps.iter().enumerate() {
            if m.target() != &modules[i] {
                return Err(Error::ShapeMismatch(format!("map {} does not land in F_{}", i + 1, i)));
            }
            modules.push(m.source().clone());
        }
        Ok(FreeResolution { ring, modules, maps, minimal })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Index of the last nonzero module (0 for the zero complex).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> Option<&FreeModule> {
        self.modules.get(i)
    }

    /// `φ_i`, for `1 <= i <= length`.
    pub fn map(&self, i: usize) -> Option<&BihomMatrix> {
        if i == 0 {
            None
        } else {
            self.maps.get(i - 1)
        }
    }

    pub fn maps(&self) -> &[BihomMatrix] {
        &self.maps
    }

    /// Betti numbers `rank F_i`.
    pub fn betti(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    /// `φ_i ∘ φ_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// Exactness away from degree 0: for every `i >= 1`, the kernel of `φ_i`
    /// equals the image of `φ_{i+1}`; checked by normal forms both ways.
    pub fn is_exact(&self) -> bool {
        if !self.is_complex() {
            return false;
        }
        for i in 1..=self.length() {
            let phi = &self.maps[i - 1];
            let ker = match kernel_of_map(phi, None) {
                Ok(k) => k,
                Err(_) => return false,
            };
            let image: Vec<ModuleVector> = match self.maps.get(i) {
                Some(next) => next.columns().to_vec(),
                None => Vec::new(),
            };
            let gb_img = GroebnerBasis::new(&self.ring, phi.source(), &image);
            if !ker.columns().iter().all(|c| gb_img.contains(c)) {
                return false;
            }
            let gb_ker = GroebnerBasis::new(&self.ring, phi.source(), ker.columns());
            if !image.iter().all(|c| gb_ker.contains(c)) {
                return false;
            }
        }
        true
    }

    /// Splits off trivial complexes `0 -> S(-d) --unit--> S(-d) -> 0`, working
    /// from homological degree 1 upward. Pivots: lowest row, then lowest column.
    pub fn minimalize(mut self) -> FreeResolution {
        let f = *self.ring.field();
        let mut i = 1;
        while i <= self.maps.len() {
            let pivot = {
                let phi = &self.maps[i - 1];
                let mut best: Option<(usize, usize)> = None;
                'rows: for r in 0..phi.nrows() {
                    for c in 0..phi.ncols() {
                        if phi.entry(r, c).as_unit().is_some() {
                            best = Some((r, c));
                            break 'rows;
                        }
                    }
                }
                best
            };
            let Some((r, c)) = pivot else {
                i += 1;
                continue;
            };
            let phi = &self.maps[i - 1];
            let u_inv = f.inv(phi.entry(r, c).as_unit().unwrap());
            let pivot_col = phi.columns()[c].clone();
            let keep_rows: Vec<usize> = (0..phi.nrows()).filter(|&x| x != r).collect();
            let keep_cols: Vec<usize> = (0..phi.ncols()).filter(|&x| x != c).collect();
            let mut new_cols = Vec::with_capacity(keep_cols.len());
            for &cc in &keep_cols {
                let col = &phi.columns()[cc];
                let lam = col.entry(r).scale(u_inv, &f);
                let adj = col.sub(&pivot_col.mul_poly(&lam, &f), &f);
                let e = keep_rows.iter().map(|&rr| adj.entry(rr).clone()).collect();
                new_cols.push(ModuleVector::from_entries(e));
            }
            let src = FreeModule::new(keep_cols.iter().map(|&x| phi.source().twist(x)).collect());
            let tgt = FreeModule::new(keep_rows.iter().map(|&x| phi.target().twist(x)).collect());
            self.maps[i - 1] = BihomMatrix::new_unchecked(self.ring, src.clone(), tgt.clone(), new_cols);
            if let Some(next) = self.maps.get(i) {
                let cols = next
                    .columns()
                    .iter()
                    .map(|col| {
                        ModuleVector::from_entries(
                            keep_cols.iter().map(|&x| col.entry(x).clone()).collect(),
                        )
                    })
                    .collect();
                self.maps[i] =
                    BihomMatrix::new_unchecked(self.ring, next.source().clone(), src.clone(), cols);
            }
            if i >= 2 {
                let prev = &self.maps[i - 2];
                self.maps[i - 2] = prev.select_columns(&keep_rows);
            }
            self.modules[i] = src;
            self.modules[i - 1] = tgt;
        }
        // trailing zero modules
        while self.maps.last().is_some_and(|m| m.source().is_zero()) {
            self.maps.pop();
            self.modules.pop();
        }
        self.minimal = self.maps.iter().all(|m| !m.has_unit_entry());
        self
    }
}

/// Minimal bigraded free resolution of `coker(relations)`.
///
/// The presentation is first minimalized (unit pivots, then a minimal set of
/// relations); each further step takes minimal generators of the kernel.
pub fn free_resolution(module: &PresentedModule) -> Result<FreeResolution> {
    let ring = *module.ring();
    let nonzero: Vec<usize> = (0..module.relations().ncols())
        .filter(|&c| !module.relations().columns()[c].is_zero())
        .collect();
    let rel = module.relations().select_columns(&nonzero);
    let pres = FreeResolution::from_maps(ring, module.ambient().clone(), alloc::vec![rel], false)?
        .minimalize();
    let f0 = pres.modules[0].clone();
    let mut maps: Vec<BihomMatrix> = Vec::new();
    if let Some(phi1) = pres.maps.into_iter().next() {
        let phi1 = minimalize_columns(&phi1);
        if phi1.ncols() > 0 {
            maps.push(phi1);
        }
    }
    let cap = ring.nvars();
    while let Some(last) = maps.last() {
        let k = kernel_of_map(last, None)?;
        if k.ncols() == 0 {
            break;
        }
        if maps.len() + 1 > cap {
            return Err(Error::Internal(format!(
                "resolution exceeds length {} (Hilbert syzygy bound)",
                cap
            )));
        }
        maps.push(k);
    }
    FreeResolution::from_maps(ring, f0, maps, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(r: &Ring, e: &[u16]) -> Polynomial {
        Polynomial::monomial(r.monomial_from_slice(e))
    }

    #[test]
    fn free_module_has_length_zero() {
        let r = Ring::standard(1, 1);
        let m = PresentedModule::free(r, FreeModule::untwisted(1));
        let res = free_resolution(&m).unwrap();
        assert_eq!(res.length(), 0);
        assert_eq!(res.betti(), alloc::vec![1]);
    }

    #[test]
    fn hypersurface() {
        let r = Ring::standard(1, 1);
        let m = PresentedModule::cyclic(r, &[mono(&r, &[1, 1])]).unwrap();
        let res = free_resolution(&m).unwrap();
        assert_eq!(res.length(), 1);
        assert_eq!(res.module(1).unwrap().twists(), &[BiDegree::new(1, 1)]);
    }

    #[test]
    fn nilpotent_y_with_one_x() {
        // S/(x1y1, y1^2), m = n = 1
        let r = Ring::standard(1, 1);
        let m = PresentedModule::cyclic(r, &[mono(&r, &[1, 1]), mono(&r, &[0, 2])]).unwrap();
        let res = free_resolution(&m).unwrap();
        assert_eq!(res.length(), 2);
        let mut f1 = res.module(1).unwrap().twists().to_vec();
        f1.sort();
        assert_eq!(f1, alloc::vec![BiDegree::new(0, 2), BiDegree::new(1, 1)]);
        assert_eq!(res.module(2).unwrap().twists(), &[BiDegree::new(1, 2)]);
        assert!(res.is_exact());
        assert!(res.is_minimal());
    }

    #[test]
    fn redundant_presentation_is_minimalized() {
        // generators e1, e2 with relation e2 - x1 e1 and x1^2 e1: module is S/(x1^2) shifted
        let r = Ring::standard(1, 1);
        let f = r.field();
        let amb = FreeModule::new(alloc::vec![BiDegree::ZERO, BiDegree::new(1, 0)]);
        let c1 = ModuleVector::from_entries(alloc::vec![
            mono(&r, &[1, 0]).neg(f),
            Polynomial::one(&r)
        ]);
        let c2 = ModuleVector::from_entries(alloc::vec![mono(&r, &[2, 0]), Polynomial::zero()]);
        let c3 = ModuleVector::from_entries(alloc::vec![mono(&r, &[3, 0]), Polynomial::zero()]);
        let m = PresentedModule::from_columns(r, amb, alloc::vec![c1, c2, c3]).unwrap();
        let res = free_resolution(&m).unwrap();
        assert_eq!(res.betti(), alloc::vec![1, 1]);
        assert!(res.is_minimal());
        assert_eq!(res.module(1).unwrap().twist(0), BiDegree::new(2, 0));
    }

    #[test]
    fn koszul_resolution_of_maximal_ideal() {
        let r = Ring::standard(2, 1);
        let m = PresentedModule::cyclic(
            r,
            &[mono(&r, &[1, 0, 0]), mono(&r, &[0, 1, 0]), mono(&r, &[0, 0, 1])],
        )
        .unwrap();
        let res = free_resolution(&m).unwrap();
        assert_eq!(res.betti(), alloc::vec![1, 3, 3, 1]);
        assert!(res.is_exact());
        assert!(res.maps().iter().all(|p| !p.has_unit_entry()));
    }

    #[test]
    fn zero_module() {
        let r = Ring::standard(1, 1);
        let m = PresentedModule::cyclic(r, &[Polynomial::one(&r)]).unwrap();
        assert!(m.is_zero());
        let res = free_resolution(&m).unwrap();
        assert_eq!(res.betti(), alloc::vec![0]);
    }

    #[test]
    fn hilbert_function_counts_standard_monomials() {
        let r = Ring::standard(1, 1);
        let m = PresentedModule::cyclic(r, &[mono(&r, &[1, 1])]).unwrap();
        assert_eq!(m.hilbert_function(BiDegree::new(0, 0)), 1);
        assert_eq!(m.hilbert_function(BiDegree::new(2, 0)), 1);
        assert_eq!(m.hilbert_function(BiDegree::new(1, 1)), 0);
        assert_eq!(m.hilbert_function(BiDegree::new(-1, 0)), 0);
    }
}
