//! Strand-wise local cohomology through graded local duality over `K[y]`.
//!
//! The x-degree-`k` strand `M_k` of `M` is a finitely presented graded
//! `K[y]`-module, and `H^i_Q(M)` in x-degree `k` is `H^i_Q(M_k)`. Over the
//! polynomial ring `K[y]` local duality gives
//! `dim H^i_Q(M_k)_j = dim Ext^{n-i}(M_k, K[y](-n))_{-j}`; the Ext groups are
//! computed from a minimal resolution by dense linear algebra in each degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::free::{BihomMatrix, FreeModule, ModuleVector};
use crate::invariants::{self};
use crate::linalg::DenseMatrix;
use crate::local_cohomology::lc_component_from;
use crate::poly::Polynomial;
use crate::resolution::{free_resolution, FreeResolution, PresentedModule};
use crate::ring::{BiDegree, Monomial, Ring};

/// A finitely presented graded `K[y]`-module (a presented module over the
/// ring with no x-variables).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KyModule(pub PresentedModule);

impl KyModule {
    pub fn presentation(&self) -> &PresentedModule {
        &self.0
    }

    pub fn dimension_in_degree(&self, j: i32) -> u64 {
        self.0.hilbert_function(BiDegree::new(0, j))
    }
}

/// `M_k = ⊕_j M_(k,j)` as a `K[y]`-module. Its generators are `x^α e_i` with
/// `|α| = k - a_i` (graded-descending `α`), in y-degree `b_i`.
pub fn strand_module(module: &PresentedModule, k: i32) -> KyModule {
    let ring = *module.ring();
    let kx = ring.x_subring();
    let ky = ring.y_subring();
    let f = ring.field();

    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut twists = Vec::new();
    for (i, t) in module.ambient().twists().iter().enumerate() {
        for mon in kx.monomials_of_bidegree(BiDegree::new(k - t.dx, 0)) {
            index.insert((i, mon), twists.len());
            twists.push(BiDegree::new(0, t.dy));
        }
    }
    let rank = twists.len();

    let rel = module.relations();
    let mut cols = Vec::new();
    for (c, col) in rel.columns().iter().enumerate() {
        let d = rel.source().twist(c);
        for mu in kx.monomials_of_bidegree(BiDegree::new(k - d.dx, 0)) {
            let mut entries: Vec<Vec<(Monomial, u32)>> = alloc::vec![Vec::new(); rank];
            for (i, p) in col.entries().iter().enumerate() {
                for (mon, coeff) in p.terms() {
                    let xpart = kx.monomial(mon.xexp(), &[]).mul(&mu);
                    let pos = index[&(i, xpart)];
                    entries[pos].push((ky.monomial(&[], mon.yexp()), *coeff));
                }
            }
            let v: Vec<Polynomial> = entries.into_iter().map(|t| Polynomial::from_terms(f, t)).collect();
            cols.push(ModuleVector::from_entries(v));
        }
    }
    let ambient = FreeModule::new(twists);
    let m = PresentedModule::from_columns(ky, ambient, cols).expect("strand relations are homogeneous");
    KyModule(m)
}

/// `(dim, depth)` of a strand over `K[y]`.
pub fn strand_invariants(module: &PresentedModule, k: i32) -> Result<(usize, usize)> {
    let s = strand_module(module, k);
    let res = free_resolution(&s.0)?;
    let dim = invariants::dimension_from(&res).ok_or(Error::ZeroModule)?;
    Ok((dim, invariants::depth_from(&res)?))
}

/// `Ext^•(N, K[y](-n))` degree by degree from a resolution of `N` over `K[y]`.
pub struct DualityTable {
    ring: Ring,
    res: FreeResolution,
    /// `rank δ^s` in degree `d`, keyed by `(s, d)`.
    ranks: BTreeMap<(usize, i32), usize>,
}

impl DualityTable {
    pub fn new(strand: &KyModule) -> Result<Self> {
        let res = free_resolution(&strand.0)?;
        Ok(DualityTable { ring: *strand.0.ring(), res, ranks: BTreeMap::new() })
    }

    /// Generator degree of the summands of `Hom(G_s, K[y](-n))`.
    fn dual_twists(&self, s: usize) -> Vec<i32> {
        let n = self.ring.n() as i32;
        match self.res.module(s) {
            Some(g) => g.twists().iter().map(|t| n - t.dy).collect(),
            None => Vec::new(),
        }
    }

    fn basis(&self, s: usize, d: i32) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (u, tau) in self.dual_twists(s).into_iter().enumerate() {
            for mon in self.ring.monomials_of_bidegree(BiDegree::new(0, d - tau)) {
                out.push((u, mon));
            }
        }
        out
    }

    /// Rank of `δ^s : Hom(G_s, K[y](-n))_d -> Hom(G_{s+1}, K[y](-n))_d`.
    fn rank(&mut self, s: usize, d: i32) -> usize {
        if let Some(&r) = self.ranks.get(&(s, d)) {
            return r;
        }
        let r = match self.res.map(s + 1) {
            None => 0,
            Some(phi) => {
                let src = self.basis(s, d);
                let tgt = self.basis(s + 1, d);
                let tindex: BTreeMap<(usize, &Monomial), usize> =
                    tgt.iter().enumerate().map(|(k, (v, m))| ((*v, m), k)).collect();
                let f = self.ring.field();
                let mut mat = DenseMatrix::zeros(src.len(), tgt.len());
                for (row, (u, mu)) in src.iter().enumerate() {
                    for v in 0..phi.ncols() {
                        for (mon, c) in phi.entry(*u, v).terms() {
                            let prod = mon.mul(mu);
                            let col = tindex[&(v, &prod)];
                            mat.add_to(row, col, *c, f);
                        }
                    }
                }
                mat.rank(f)
            }
        };
        self.ranks.insert((s, d), r);
        r
    }

    /// `dim_K Ext^s(N, K[y](-n))_d`.
    pub fn ext_dimension(&mut self, s: usize, d: i32) -> u64 {
        if s > self.res.length() {
            return 0;
        }
        let total = self.basis(s, d).len();
        let out = self.rank(s, d);
        let inc = if s == 0 { 0 } else { self.rank(s - 1, d) };
        (total - out - inc) as u64
    }

    /// `dim_K H^i_Q(N)_j`.
    pub fn local_cohomology_dimension(&mut self, i: usize, j: i32) -> u64 {
        let n = self.ring.n();
        if i > n {
            return 0;
        }
        self.ext_dimension(n - i, -j)
    }
}

/// `dim_K H^i_Q(M_k)_j` via local duality over `K[y]`.
pub fn lc_piece_via_duality(module: &PresentedModule, k: i32, j: i32, i: usize) -> Result<u64> {
    let mut t = DualityTable::new(&strand_module(module, k))?;
    Ok(t.local_cohomology_dimension(i, j))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mismatch {
    pub k: i32,
    pub j: i32,
    pub i: usize,
    pub pipeline_dim: u64,
    pub oracle_dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub k_window: (i32, i32),
    pub j_window: (i32, i32),
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Compares `dim_K (H^i_Q(M)_j)_k` from the component complex with the
/// strand oracle for all `i in 0..=n` and `(k, j)` in the windows.
pub fn cross_check(module: &PresentedModule, k_window: (i32, i32), j_window: (i32, i32)) -> Result<CrossCheckReport> {
    let res = free_resolution(module)?;
    cross_check_with(module, &res, k_window, j_window)
}

pub fn cross_check_with(
    module: &PresentedModule,
    res: &FreeResolution,
    k_window: (i32, i32),
    j_window: (i32, i32),
) -> Result<CrossCheckReport> {
    let n = module.ring().n();
    let mut tables: Vec<(i32, DualityTable)> = Vec::new();
    for k in k_window.0..=k_window.1 {
        tables.push((k, DualityTable::new(&strand_module(module, k))?));
    }
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for j in j_window.0..=j_window.1 {
        for i in 0..=n {
            let comp = lc_component_from(res, i, j)?;
            let gb = comp.presentation().groebner();
            for (k, table) in tables.iter_mut() {
                let pipeline = comp.presentation().hilbert_function_with(&gb, BiDegree::new(*k, 0));
                let oracle = table.local_cohomology_dimension(i, j);
                checked += 1;
                if pipeline != oracle {
                    mismatches.push(Mismatch { k: *k, j, i, pipeline_dim: pipeline, oracle_dim: oracle });
                }
            }
        }
    }
    mismatches.sort();
    Ok(CrossCheckReport { k_window, j_window, checked, mismatches })
}

/// Relations of a strand as a matrix, for display.
pub fn strand_relations(strand: &KyModule) -> &BihomMatrix {
    strand.0.relations()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::binomial;

    fn mono(r: &Ring, e: &[u16]) -> Polynomial {
        Polynomial::monomial(r.monomial_from_slice(e))
    }

    fn ex35() -> PresentedModule {
        let r = Ring::standard(2, 2);
        PresentedModule::cyclic(r, &[mono(&r, &[2, 0, 0, 0]), mono(&r, &[1, 1, 0, 0])]).unwrap()
    }

    fn ex36(m: usize) -> PresentedModule {
        let r = Ring::standard(m, 1);
        let mut gens = Vec::new();
        for i in 0..m {
            gens.push(Polynomial::monomial(r.x(i).mul(&r.y(0))));
        }
        gens.push(Polynomial::monomial(r.y(0).mul(&r.y(0))));
        PresentedModule::cyclic(r, &gens).unwrap()
    }

    #[test]
    fn strand_of_polynomial_ring() {
        let r = Ring::standard(1, 1);
        let s = PresentedModule::free(r, FreeModule::untwisted(1));
        let st = strand_module(&s, 0);
        assert_eq!(st.0.ambient().rank(), 1);
        assert_eq!(st.0.relations().ncols(), 0);
    }

    #[test]
    fn strand_rank_formula() {
        for m in 1..=3usize {
            let r = Ring::standard(m, 1);
            for a in -1..=2 {
                let f = PresentedModule::free(r, FreeModule::new(alloc::vec![BiDegree::new(a, 1)]));
                for k in -2..=5 {
                    let expect = if k >= a { binomial((k - a) as i64 + m as i64 - 1, m as i64 - 1) } else { 0 };
                    assert_eq!(strand_module(&f, k).0.ambient().rank() as u64, expect);
                }
            }
        }
    }

    #[test]
    fn nilpotent_y_strands() {
        let m = ex36(1);
        let s0 = strand_module(&m, 0);
        assert_eq!((0..4).map(|j| s0.dimension_in_degree(j)).collect::<Vec<_>>(), alloc::vec![1, 1, 0, 0]);
        let s1 = strand_module(&m, 1);
        assert_eq!((0..3).map(|j| s1.dimension_in_degree(j)).collect::<Vec<_>>(), alloc::vec![1, 0, 0]);
        for k in 0..4 {
            assert_eq!(strand_invariants(&m, k).unwrap(), (0, 0));
        }
    }

    #[test]
    fn ideal_in_x_strands_are_free() {
        let m = ex35();
        let ranks: Vec<usize> = (0..4)
            .map(|k| {
                let s = strand_module(&m, k);
                let res = free_resolution(&s.0).unwrap();
                assert_eq!(res.length(), 0);
                res.modules()[0].rank()
            })
            .collect();
        assert_eq!(ranks, alloc::vec![1, 2, 1, 1]);
        assert_eq!(strand_invariants(&m, 1).unwrap(), (2, 2));
        assert_eq!(lc_piece_via_duality(&m, 1, -3, 2).unwrap(), 4);
    }

    #[test]
    fn hypersurface_strand_invariants() {
        let r = Ring::standard(1, 1);
        let h = PresentedModule::cyclic(r, &[mono(&r, &[1, 1])]).unwrap();
        assert_eq!(strand_invariants(&h, 0).unwrap(), (1, 1));
        assert_eq!(strand_invariants(&h, 2).unwrap(), (0, 0));
    }

    #[test]
    fn duality_on_polynomial_rings() {
        for n in 1..=3usize {
            let r = Ring::standard(1, n);
            let s = PresentedModule::free(r, FreeModule::untwisted(1));
            let mut t = DualityTable::new(&strand_module(&s, 0)).unwrap();
            for j in -8..=3 {
                for i in 0..=n {
                    let expect = if i == n { binomial(-j as i64 - 1, n as i64 - 1) } else { 0 };
                    assert_eq!(t.local_cohomology_dimension(i, j), expect, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn duality_on_residue_field() {
        let r = Ring::standard(1, 1);
        let m = PresentedModule::cyclic(r, &[mono(&r, &[0, 1])]).unwrap();
        assert_eq!(lc_piece_via_duality(&m, 0, 0, 0).unwrap(), 1);
        assert_eq!(lc_piece_via_duality(&m, 0, -1, 0).unwrap(), 0);
    }

    #[test]
    fn pipelines_agree() {
        let r = Ring::standard(1, 1);
        let h = PresentedModule::cyclic(r, &[mono(&r, &[1, 1])]).unwrap();
        for m in [ex35(), ex36(2), h] {
            let rep = cross_check(&m, (-1, 4), (-5, 3)).unwrap();
            assert!(rep.mismatches.is_empty(), "{:?}", rep.mismatches);
            assert!(rep.checked > 0);
        }
    }
}
