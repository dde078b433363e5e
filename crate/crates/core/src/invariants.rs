//! Numerical invariants of presented modules: Hilbert series, dimension,
//! multiplicity, depth, grade, cohomological dimension, regularity.
//!
//! Conventions for the zero module: its dimension is `-∞` (`None` or
//! [`Error::ZeroModule`]) and grades are `+∞` ([`Error::GradeInfinite`]).

use alloc::vec::Vec;

use crate::error::{Error, Ideal, Result};
use crate::free::{BihomMatrix, FreeModule, ModuleVector};
use crate::groebner::{kernel_of_map, GroebnerBasis};
use crate::poly::Polynomial;
use crate::resolution::{free_resolution, FreeResolution, PresentedModule};
use crate::ring::{binomial, BiDegree, Ring};

/// `numerator(t) / (1 - t)^denominator_exponent` in lowest terms
/// (total grading), with `numerator(1) != 0` unless the module is zero.
///
/// The numerator is a Laurent polynomial: `coeffs[k]` multiplies `t^(shift + k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub shift: i32,
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
}

impl HilbertSeries {
    /// Reduces `Σ_i (-1)^i Σ_k t^{|twist_ik|} / (1-t)^nvars`.
    pub fn from_resolution(res: &FreeResolution) -> Self {
        let mut terms: Vec<(i32, i64)> = Vec::new();
        for (i, f) in res.modules().iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for t in f.twists() {
                terms.push((t.total(), sign));
            }
        }
        Self::from_terms(&terms, res.ring().nvars())
    }

    fn from_terms(terms: &[(i32, i64)], nvars: usize) -> Self {
        if terms.is_empty() {
            return HilbertSeries { shift: 0, numerator: Vec::new(), denominator_exponent: nvars };
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = alloc::vec![0i64; (hi - lo + 1) as usize];
        for &(e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        let mut hs = HilbertSeries { shift: lo, numerator: coeffs, denominator_exponent: nvars };
        hs.normalize();
        hs
    }

    fn normalize(&mut self) {
        while self.numerator.last() == Some(&0) {
            self.numerator.pop();
        }
        let lead_zeros = self.numerator.iter().take_while(|&&c| c == 0).count();
        self.numerator.drain(..lead_zeros);
        self.shift += lead_zeros as i32;
        if self.numerator.is_empty() {
            self.shift = 0;
            return;
        }
        // divide by (1 - t) while numerator(1) == 0
        while self.denominator_exponent > 0 && self.numerator.iter().sum::<i64>() == 0 {
            // N(t) = (1 - t) q(t): q_k = Σ_{l<=k} N_l
            let mut q = Vec::with_capacity(self.numerator.len() - 1);
            let mut acc = 0;
            for &c in &self.numerator[..self.numerator.len() - 1] {
                acc += c;
                q.push(acc);
            }
            self.numerator = q;
            self.denominator_exponent -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Krull dimension, `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        (!self.is_zero()).then_some(self.denominator_exponent)
    }

    /// `numerator(1)` in lowest terms.
    pub fn multiplicity(&self) -> Option<u64> {
        (!self.is_zero()).then(|| self.numerator.iter().sum::<i64>() as u64)
    }

    /// Coefficient of `t^d` in the power series expansion.
    pub fn coefficient(&self, d: i32) -> i64 {
        let dd = self.denominator_exponent as i64;
        let mut acc = 0i64;
        for (k, &c) in self.numerator.iter().enumerate() {
            let e = (d - self.shift - k as i32) as i64;
            if e < 0 {
                continue;
            }
            let b = if dd == 0 {
                (e == 0) as i64
            } else {
                binomial(e + dd - 1, dd - 1) as i64
            };
            acc += c * b;
        }
        acc
    }
}

/// Hilbert series of `M` under the total grading.
pub fn hilbert_series(module: &PresentedModule) -> Result<HilbertSeries> {
    Ok(HilbertSeries::from_resolution(&free_resolution(module)?))
}

/// Krull dimension.
pub fn dimension(module: &PresentedModule) -> Result<usize> {
    hilbert_series(module)?.dimension().ok_or(Error::ZeroModule)
}

pub fn dimension_from(res: &FreeResolution) -> Option<usize> {
    HilbertSeries::from_resolution(res).dimension()
}

/// `nvars - pd(M)` (Auslander–Buchsbaum).
pub fn depth(module: &PresentedModule) -> Result<usize> {
    depth_from(&free_resolution(module)?)
}

pub fn depth_from(res: &FreeResolution) -> Result<usize> {
    if res.modules()[0].is_zero() {
        return Err(Error::ZeroModule);
    }
    res.ring()
        .nvars()
        .checked_sub(res.length())
        .ok_or_else(|| Error::Internal("resolution longer than the number of variables".into()))
}

pub fn multiplicity(module: &PresentedModule) -> Result<u64> {
    hilbert_series(module)?.multiplicity().ok_or(Error::ZeroModule)
}

/// Generators of the chosen irrelevant ideal.
pub fn ideal_generators(ring: &Ring, which: Ideal) -> Vec<Polynomial> {
    match which {
        Ideal::P => (0..ring.m()).map(|i| Polynomial::monomial(ring.x(i))).collect(),
        Ideal::Q => (0..ring.n()).map(|i| Polynomial::monomial(ring.y(i))).collect(),
    }
}

/// `M / I M`.
pub fn quotient_by_ideal(module: &PresentedModule, which: Ideal) -> Result<PresentedModule> {
    module.quotient_by_elements(&ideal_generators(module.ring(), which))
}

/// k-subsets of `0..t` in lexicographic order.
fn subsets(t: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > t {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < t - k + i {
                cur[i] += 1;
                for l in i + 1..k {
                    cur[l] = cur[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Data of `K_•(g) ⊗ F_0` and the relations of `M` copied into each level.
struct Koszul<'a> {
    ring: Ring,
    module: &'a PresentedModule,
    gens: Vec<Polynomial>,
    gdeg: Vec<BiDegree>,
}

impl<'a> Koszul<'a> {
    fn new(module: &'a PresentedModule, which: Ideal) -> Self {
        let ring = *module.ring();
        let gens = ideal_generators(&ring, which);
        let gdeg = gens.iter().map(|g| g.bidegree().unwrap()).collect();
        Koszul { ring, module, gens, gdeg }
    }

    fn t(&self) -> usize {
        self.gens.len()
    }

    fn subset_degree(&self, s: &[usize]) -> BiDegree {
        s.iter().fold(BiDegree::ZERO, |acc, &i| acc + self.gdeg[i])
    }

    /// `⊕_{|J| = i} F_0(-deg J)` for the chain side, or `F_0(+deg J)` for Hom.
    fn level(&self, i: usize, dual: bool) -> (Vec<Vec<usize>>, FreeModule) {
        let subs = subsets(self.t(), i);
        let f0 = self.module.ambient();
        let mut twists = Vec::with_capacity(subs.len() * f0.rank());
        for s in &subs {
            let d = self.subset_degree(s);
            for &tw in f0.twists() {
                twists.push(if dual { tw - d } else { tw + d });
            }
        }
        (subs, FreeModule::new(twists))
    }

    /// Relations of `M` repeated on every copy of `F_0` at level `i`.
    fn relations(&self, i: usize, dual: bool) -> BihomMatrix {
        let (subs, amb) = self.level(i, dual);
        let r = self.module.ambient().rank();
        let mut cols = Vec::new();
        for (si, _) in subs.iter().enumerate() {
            for col in self.module.relations().columns() {
                let mut v = ModuleVector::zero(amb.rank());
                for (pos, p) in col.entries().iter().enumerate() {
                    v.set(si * r + pos, p.clone());
                }
                cols.push(v);
            }
        }
        BihomMatrix::from_columns(self.ring, amb, cols).expect("relations are bihomogeneous")
    }

    /// Chain differential `d_i : K_i ⊗ F_0 -> K_{i-1} ⊗ F_0`.
    fn differential(&self, i: usize) -> BihomMatrix {
        let f = self.ring.field();
        let (src_subs, src) = self.level(i, false);
        let (tgt_subs, tgt) = self.level(i - 1, false);
        let r = self.module.ambient().rank();
        let mut cols = Vec::with_capacity(src.rank());
        for s in &src_subs {
            for pos in 0..r {
                let mut v = ModuleVector::zero(tgt.rank());
                for (idx, &g) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != g).collect();
                    let ti = tgt_subs.binary_search(&rest).unwrap();
                    let coef = if idx % 2 == 0 { self.gens[g].clone() } else { self.gens[g].neg(f) };
                    v.set(ti * r + pos, coef);
                }
                cols.push(v);
            }
        }
        BihomMatrix::new(self.ring, src, tgt, cols).expect("Koszul differential is bihomogeneous")
    }

    /// Cochain differential `δ^i : Hom(K_i, M) -> Hom(K_{i+1}, M)`.
    fn codifferential(&self, i: usize) -> BihomMatrix {
        let f = self.ring.field();
        let (src_subs, src) = self.level(i, true);
        let (tgt_subs, tgt) = self.level(i + 1, true);
        let r = self.module.ambient().rank();
        let mut cols = Vec::with_capacity(src.rank());
        for s in &src_subs {
            for pos in 0..r {
                let mut v = ModuleVector::zero(tgt.rank());
                for g in (0..self.t()).filter(|g| !s.contains(g)) {
                    let mut bigger = s.clone();
                    bigger.push(g);
                    bigger.sort_unstable();
                    let idx = bigger.iter().position(|&x| x == g).unwrap();
                    let ti = tgt_subs.binary_search(&bigger).unwrap();
                    let coef = if idx % 2 == 0 { self.gens[g].clone() } else { self.gens[g].neg(f) };
                    v.set(ti * r + pos, coef);
                }
                cols.push(v);
            }
        }
        BihomMatrix::new(self.ring, src, tgt, cols).expect("Koszul codifferential is bihomogeneous")
    }

    /// Is `ker(into) / (im(from) + rel)` nonzero, where `into` is taken
    /// modulo `rel_target`?
    fn homology_nonzero(
        &self,
        ambient: &FreeModule,
        into: Option<(BihomMatrix, BihomMatrix)>,
        from: Option<BihomMatrix>,
        rel: BihomMatrix,
    ) -> Result<bool> {
        let cycles: Vec<ModuleVector> = match into {
            Some((map, rel_target)) => kernel_of_map(&map, Some(&rel_target))?.into_columns(),
            None => (0..ambient.rank()).map(|i| ModuleVector::basis(&self.ring, ambient.rank(), i)).collect(),
        };
        let mut bounds: Vec<ModuleVector> = rel.into_columns();
        if let Some(b) = from {
            bounds.extend(b.into_columns());
        }
        let gb = GroebnerBasis::new(&self.ring, ambient, &bounds);
        Ok(cycles.iter().any(|c| !gb.contains(c)))
    }

    /// `H_i(g; M) != 0`.
    fn homology(&self, i: usize) -> Result<bool> {
        let (_, amb) = self.level(i, false);
        let into = (i >= 1).then(|| (self.differential(i), self.relations(i - 1, false)));
        let from = (i < self.t()).then(|| self.differential(i + 1));
        self.homology_nonzero(&amb, into, from, self.relations(i, false))
    }

    /// `Ext^i(S/I, M) != 0` via `Hom(K_•, M)`.
    fn ext(&self, i: usize) -> Result<bool> {
        let (_, amb) = self.level(i, true);
        let into = (i < self.t()).then(|| (self.codifferential(i), self.relations(i + 1, true)));
        let from = (i >= 1).then(|| self.codifferential(i - 1));
        self.homology_nonzero(&amb, into, from, self.relations(i, true))
    }
}

/// `grade(I, M) = t - max{i : H_i(g; M) != 0}` for the `t` generators of `I`.
pub fn grade(which: Ideal, module: &PresentedModule) -> Result<usize> {
    let k = Koszul::new(module, which);
    for i in (0..=k.t()).rev() {
        if k.homology(i)? {
            return Ok(k.t() - i);
        }
    }
    Err(Error::GradeInfinite)
}

/// `grade(I, M) = min{i : Ext^i(S/I, M) != 0}`, using the Koszul resolution of `S/I`.
pub fn grade_via_ext(which: Ideal, module: &PresentedModule) -> Result<usize> {
    let k = Koszul::new(module, which);
    for i in 0..=k.t() {
        if k.ext(i)? {
            return Ok(i);
        }
    }
    Err(Error::GradeInfinite)
}

/// `cd(Q, M) = dim M/PM` and `cd(P, M) = dim M/QM`.
pub fn cohomological_dimension(which: Ideal, module: &PresentedModule) -> Result<usize> {
    let other = match which {
        Ideal::P => Ideal::Q,
        Ideal::Q => Ideal::P,
    };
    dimension(&quotient_by_ideal(module, other)?)
}

/// Castelnuovo–Mumford regularity `max_i (b_i - i)` read from the minimal
/// resolution, where `b_i` is the top total degree of a generator of `F_i`.
/// `None` for the zero module.
pub fn regularity(module: &PresentedModule) -> Result<Option<i32>> {
    Ok(regularity_from(&free_resolution(module)?))
}

pub fn regularity_from(res: &FreeResolution) -> Option<i32> {
    res.modules()
        .iter()
        .enumerate()
        .filter_map(|(i, f)| f.twists().iter().map(|t| t.total()).max().map(|b| b - i as i32))
        .max()
}

/// Rank of `F_0` in a minimal presentation.
pub fn minimal_generator_count(module: &PresentedModule) -> Result<usize> {
    Ok(free_resolution(module)?.modules()[0].rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub dim: usize,
    pub depth: usize,
    pub grade_p: usize,
    pub grade_q: usize,
    pub cd_p: usize,
    pub cd_q: usize,
    pub is_cm: bool,
}

pub fn invariant_report(module: &PresentedModule) -> Result<InvariantReport> {
    let res = free_resolution(module)?;
    let dim = dimension_from(&res).ok_or(Error::ZeroModule)?;
    let depth = depth_from(&res)?;
    Ok(InvariantReport {
        dim,
        depth,
        grade_p: grade(Ideal::P, module)?,
        grade_q: grade(Ideal::Q, module)?,
        cd_p: cohomological_dimension(Ideal::P, module)?,
        cd_q: cohomological_dimension(Ideal::Q, module)?,
        is_cm: depth == dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(r: &Ring, e: &[u16]) -> Polynomial {
        Polynomial::monomial(r.monomial_from_slice(e))
    }

    fn ex35() -> PresentedModule {
        let r = Ring::standard(2, 2);
        PresentedModule::cyclic(r, &[mono(&r, &[2, 0, 0, 0]), mono(&r, &[1, 1, 0, 0])]).unwrap()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), alloc::vec![alloc::vec![0, 1], alloc::vec![0, 2], alloc::vec![1, 2]]);
        assert_eq!(subsets(2, 0), alloc::vec![Vec::<usize>::new()]);
        assert!(subsets(1, 2).is_empty());
    }

    #[test]
    fn hilbert_series_of_polynomial_ring_and_hypersurface() {
        let r = Ring::standard(1, 1);
        let s = PresentedModule::free(r, FreeModule::untwisted(1));
        let hs = hilbert_series(&s).unwrap();
        assert_eq!((hs.numerator.clone(), hs.denominator_exponent), (alloc::vec![1], 2));

        let h = PresentedModule::cyclic(r, &[mono(&r, &[1, 1])]).unwrap();
        let hs = hilbert_series(&h).unwrap();
        assert_eq!(hs.numerator, alloc::vec![1, 1]);
        assert_eq!(hs.denominator_exponent, 1);
        // 1, 2, 2, 2, ...
        assert_eq!((0..5).map(|d| hs.coefficient(d)).collect::<Vec<_>>(), alloc::vec![1, 2, 2, 2, 2]);
        assert_eq!(multiplicity(&h).unwrap(), 2);
    }

    #[test]
    fn ideal_in_x_series() {
        // 1 - 2t^2 + t^3 = (1 - t)(1 + t - t^2)
        let hs = hilbert_series(&ex35()).unwrap();
        assert_eq!(hs.numerator, alloc::vec![1, 1, -1]);
        assert_eq!(hs.dimension(), Some(3));
        assert_eq!(hs.multiplicity(), Some(1));
    }

    #[test]
    fn ideal_in_x_invariants() {
        let m = ex35();
        assert_eq!(dimension(&m).unwrap(), 3);
        assert_eq!(depth(&m).unwrap(), 2);
        assert_eq!(grade(Ideal::P, &m).unwrap(), 0);
        assert_eq!(grade(Ideal::Q, &m).unwrap(), 2);
        assert_eq!(cohomological_dimension(Ideal::P, &m).unwrap(), 1);
        assert_eq!(cohomological_dimension(Ideal::Q, &m).unwrap(), 2);
        assert_eq!(grade_via_ext(Ideal::P, &m).unwrap(), 0);
        assert_eq!(grade_via_ext(Ideal::Q, &m).unwrap(), 2);
    }

    #[test]
    fn grades_of_polynomial_ring() {
        let r = Ring::standard(2, 3);
        let s = PresentedModule::free(r, FreeModule::untwisted(1));
        assert_eq!(grade(Ideal::Q, &s).unwrap(), 3);
        assert_eq!(grade(Ideal::P, &s).unwrap(), 2);
        assert_eq!(cohomological_dimension(Ideal::Q, &s).unwrap(), 3);
        assert_eq!(depth(&s).unwrap(), 5);
        assert_eq!(dimension(&s).unwrap(), 5);
    }

    #[test]
    fn zero_module_conventions() {
        let r = Ring::standard(1, 1);
        let z = PresentedModule::cyclic(r, &[Polynomial::one(&r)]).unwrap();
        assert_eq!(dimension(&z), Err(Error::ZeroModule));
        assert_eq!(depth(&z), Err(Error::ZeroModule));
        assert_eq!(grade(Ideal::Q, &z), Err(Error::GradeInfinite));
        assert_eq!(regularity(&z).unwrap(), None);
    }

    #[test]
    fn regularity_over_kx() {
        let kx = Ring::standard(2, 0);
        let shifted = PresentedModule::free(kx, FreeModule::new(alloc::vec![BiDegree::new(3, 0)]));
        assert_eq!(regularity(&shifted).unwrap(), Some(3));
        let k = PresentedModule::cyclic(kx, &[mono(&kx, &[1, 0]), mono(&kx, &[0, 1])]).unwrap();
        assert_eq!(regularity(&k).unwrap(), Some(0));
        let k1 = Ring::standard(1, 0);
        let cube = PresentedModule::cyclic(k1, &[mono(&k1, &[3])]).unwrap();
        assert_eq!(regularity(&cube).unwrap(), Some(2));
        assert_eq!(multiplicity(&cube).unwrap(), 3);
    }

    #[test]
    fn generator_counts() {
        let kx = Ring::standard(2, 0);
        let free2 = PresentedModule::free(kx, FreeModule::untwisted(2));
        assert_eq!(minimal_generator_count(&free2).unwrap(), 2);
        let id = PresentedModule::new(BihomMatrix::identity(kx, FreeModule::untwisted(2)));
        assert_eq!(minimal_generator_count(&id).unwrap(), 0);
        // the ideal (x1^2, x1x2) as a module: two generators of degree 2, one syzygy
        let amb = FreeModule::new(alloc::vec![BiDegree::new(2, 0); 2]);
        let syz = ModuleVector::from_entries(alloc::vec![
            mono(&kx, &[0, 1]),
            mono(&kx, &[1, 0]).neg(kx.field())
        ]);
        let ideal = PresentedModule::from_columns(kx, amb, alloc::vec![syz]).unwrap();
        assert_eq!(minimal_generator_count(&ideal).unwrap(), 2);
    }
}
