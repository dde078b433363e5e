//! Graded components `H^i_Q(M)_j` as finitely presented `K[x]`-modules.
//!
//! Applying `H^n_Q(-)_j` to a bigraded free resolution `F_•` of `M` gives a
//! complex of free `K[x]`-modules whose homology in degree `n - i` is
//! `H^i_Q(M)_j`. The top local cohomology of a summand `S(-a, -b)` in
//! y-degree `j` has the basis `z^α` with `|α| = -n - j + b`, each spanning a
//! copy of `K[x](-a)`; the symbol `z^α` stands for the Čech class `y^{-α-1}`.
//!
//! Multiplication by `y^γ` sends `z^α` to `z^{α-γ}` when `γ <= α`
//! componentwise and to zero otherwise. For example with `n = 1`,
//! `y_1 · z^(2) = z^(1)` (that is, `y·y^{-3} = y^{-2}`) while `y_1 · z^(0) = 0`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Ideal, Result};
use crate::free::{BihomMatrix, FreeModule, ModuleVector};
use crate::groebner::{kernel_of_map, lift};
use crate::invariants::{self, HilbertSeries};
use crate::poly::Polynomial;
use crate::resolution::{free_resolution, FreeResolution, PresentedModule};
use crate::ring::{compositions, BiDegree, Ring};

/// Exponent vector of the formal symbol `z^a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZMonomial {
    pub a: Vec<u16>,
}

impl ZMonomial {
    pub fn degree(&self) -> u32 {
        self.a.iter().map(|&e| e as u32).sum()
    }
}

/// `H^n_Q(F)_j` as a free `K[x]`-module with basis `(summand, z^a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LCFreeComponent {
    pub basis: Vec<(usize, ZMonomial)>,
    pub twists: Vec<i32>,
}

impl LCFreeComponent {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The underlying free module over `K[x]`, twists `(a_i, 0)`.
    pub fn free_module(&self) -> FreeModule {
        FreeModule::new(self.twists.iter().map(|&a| BiDegree::new(a, 0)).collect())
    }

    fn index(&self) -> BTreeMap<(usize, &[u16]), usize> {
        self.basis.iter().enumerate().map(|(k, (s, z))| ((*s, z.a.as_slice()), k)).collect()
    }
}

/// `0 <- C_0 <- C_1 <- ... <- C_L <- 0`, `C_i = H^n_Q(F_i)_j`, over `K[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LCComponentComplex {
    pub j: i32,
    pub components: Vec<LCFreeComponent>,
    /// `maps[i - 1] = ψ_i : C_i -> C_{i-1}`.
    pub maps: Vec<BihomMatrix>,
}

impl LCComponentComplex {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `ψ_i`, `1 <= i <= L`.
    pub fn map(&self, i: usize) -> Option<&BihomMatrix> {
        i.checked_sub(1).and_then(|k| self.maps.get(k))
    }
}

/// A finitely presented graded `K[x]`-module: a presented module over the
/// ring with no y-variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KxModule(pub PresentedModule);

impl KxModule {
    pub fn presentation(&self) -> &PresentedModule {
        &self.0
    }

    pub fn ring(&self) -> &Ring {
        self.0.ring()
    }

    /// `dim_K` of the component of x-degree `k`.
    pub fn dimension_in_degree(&self, k: i32) -> u64 {
        self.0.hilbert_function(BiDegree::new(k, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn resolution(&self) -> Result<FreeResolution> {
        free_resolution(&self.0)
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        invariants::hilbert_series(&self.0)
    }

    /// `None` for the zero module.
    pub fn regularity(&self) -> Result<Option<i32>> {
        invariants::regularity(&self.0)
    }

    pub fn minimal_generator_count(&self) -> Result<usize> {
        invariants::minimal_generator_count(&self.0)
    }

    /// Multiplicity, `None` for the zero module.
    pub fn multiplicity(&self) -> Result<Option<u64>> {
        Ok(self.hilbert_series()?.multiplicity())
    }

    /// Krull dimension, `None` for the zero module.
    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.hilbert_series()?.dimension())
    }
}

/// Basis of `H^n_Q(F)_j` in summand order, `z^a` lexicographically ascending
/// within a summand.
pub fn top_component_free(f: &FreeModule, n: usize, j: i32) -> LCFreeComponent {
    let mut basis = Vec::new();
    let mut twists = Vec::new();
    for (i, t) in f.twists().iter().enumerate() {
        let s = -(n as i32) - j + t.dy;
        if s < 0 {
            continue;
        }
        let mut zs = compositions(s as u16, n);
        zs.reverse();
        for a in zs {
            basis.push((i, ZMonomial { a }));
            twists.push(t.dx);
        }
    }
    LCFreeComponent { basis, twists }
}

/// The `K[x]`-matrix of `H^n_Q(φ)_j : H^n_Q(F')_j -> H^n_Q(F)_j` for a map
/// `φ : F' -> F` over the bigraded ring.
pub fn induced_component_map(phi: &BihomMatrix, j: i32) -> Result<BihomMatrix> {
    let ring = phi.ring();
    let n = ring.n();
    let src = top_component_free(phi.source(), n, j);
    let tgt = top_component_free(phi.target(), n, j);
    induced_between(phi, &src, &tgt)
}

fn induced_between(phi: &BihomMatrix, src: &LCFreeComponent, tgt: &LCFreeComponent) -> Result<BihomMatrix> {
    let ring = phi.ring();
    let kx = ring.x_subring();
    let f = ring.field();
    let index = tgt.index();
    let mut cols = Vec::with_capacity(src.rank());
    let mut target_z = Vec::with_capacity(ring.n());
    for (c, z) in &src.basis {
        let mut entries: Vec<Vec<(crate::ring::Monomial, u32)>> = alloc::vec![Vec::new(); tgt.rank()];
        for row in 0..phi.nrows() {
            for (mon, coeff) in phi.entry(row, *c).terms() {
                let gamma = mon.yexp();
                if gamma.iter().zip(&z.a).any(|(g, a)| g > a) {
                    continue;
                }
                target_z.clear();
                target_z.extend(z.a.iter().zip(gamma).map(|(a, g)| a - g));
                let Some(&k) = index.get(&(row, target_z.as_slice())) else {
                    return Err(Error::ShapeMismatch(format!(
                        "entry ({row}, {c}) of the map is not of the degree forced by its twists"
                    )));
                };
                entries[k].push((kx.monomial(mon.xexp(), &[]), *coeff));
            }
        }
        let v = entries.into_iter().map(|t| Polynomial::from_terms(f, t)).collect();
        cols.push(ModuleVector::from_entries(v));
    }
    BihomMatrix::new(kx, src.free_module(), tgt.free_module(), cols)
}

/// `H^n_Q(F_•)_j` for a resolution `F_•`; asserts `ψ_i ∘ ψ_{i+1} = 0`.
pub fn component_complex(res: &FreeResolution, j: i32) -> Result<LCComponentComplex> {
    let n = res.ring().n();
    let components: Vec<LCFreeComponent> =
        res.modules().iter().map(|f| top_component_free(f, n, j)).collect();
    let mut maps = Vec::with_capacity(res.length());
    for (i, phi) in res.maps().iter().enumerate() {
        maps.push(induced_between(phi, &components[i + 1], &components[i])?);
    }
    for w in maps.windows(2) {
        if !w[0].compose(&w[1])?.is_zero() {
            return Err(Error::Internal(format!("induced maps do not form a complex at j = {j}")));
        }
    }
    Ok(LCComponentComplex { j, components, maps })
}

/// Generators of `ker ψ_i` as columns of a map into `C_i`.
fn cycles(c: &LCComponentComplex, kx: Ring, i: usize) -> Result<BihomMatrix> {
    let ci = c.components[i].free_module();
    match c.map(i) {
        Some(psi) if !psi.target().is_zero() => kernel_of_map(psi, None),
        _ => Ok(BihomMatrix::identity(kx, ci)),
    }
}

/// `H_i(C) = ker ψ_i / im ψ_{i+1}` presented on the generators of `ker ψ_i`.
pub fn component_homology(c: &LCComponentComplex, kx: Ring, i: usize) -> Result<KxModule> {
    if i >= c.components.len() {
        return Ok(KxModule(PresentedModule::free(kx, FreeModule::default())));
    }
    let z = cycles(c, kx, i)?;
    let rel = match c.map(i + 1) {
        Some(next) if next.ncols() > 0 && z.ncols() > 0 => kernel_of_map(&z, Some(next))?,
        _ => BihomMatrix::zero(kx, FreeModule::default(), z.source().clone()),
    };
    Ok(KxModule(PresentedModule::from_columns(kx, z.source().clone(), rel.into_columns())?))
}

/// `H^i_Q(M)_j` from a resolution of `M`.
pub fn lc_component_from(res: &FreeResolution, i: usize, j: i32) -> Result<KxModule> {
    let ring = res.ring();
    let kx = ring.x_subring();
    let n = ring.n();
    if i > n {
        return Ok(KxModule(PresentedModule::free(kx, FreeModule::default())));
    }
    component_homology(&component_complex(res, j)?, kx, n - i)
}

pub fn lc_component(module: &PresentedModule, i: usize, j: i32) -> Result<KxModule> {
    lc_component_from(&free_resolution(module)?, i, j)
}

/// `max |b_ik|` over the twists of a resolution.
fn max_abs_y_twist(res: &FreeResolution) -> i32 {
    res.modules().iter().flat_map(|f| f.twists()).map(|t| t.dy.abs()).max().unwrap_or(0)
}

/// `[-n - B - 6, B + 2]` with `B = max |b_ik|` over the resolution twists.
pub fn default_j_window(res: &FreeResolution) -> (i32, i32) {
    let b = max_abs_y_twist(res);
    (-(res.ring().n() as i32) - b - 6, b + 2)
}

/// `[min a_ik - 1, max a_ik + 5]` over the resolution twists.
pub fn default_k_window(res: &FreeResolution) -> (i32, i32) {
    let xs = res.modules().iter().flat_map(|f| f.twists()).map(|t| t.dx);
    let lo = xs.clone().min().unwrap_or(0);
    let hi = xs.max().unwrap_or(0);
    (lo - 1, hi + 5)
}

/// Checks `grade(Q, M) = cd(Q, M) = q`.
pub fn require_rcm_q(module: &PresentedModule, q: usize) -> Result<()> {
    let g = match invariants::grade(Ideal::Q, module) {
        Ok(g) => g,
        Err(Error::GradeInfinite) => return Err(Error::ZeroModule),
        Err(e) => return Err(e),
    };
    let cd = invariants::cohomological_dimension(Ideal::Q, module)?;
    if g != cd || g != q {
        return Err(Error::NotRelativeCm(Ideal::Q));
    }
    Ok(())
}

/// Explicit free resolution of `H^q_Q(M)_j` over `K[x]`:
/// `0 -> C_L -> ... -> C_{t+1} -> ker ψ_t`, `t = n - q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentResolution {
    pub q: usize,
    pub j: i32,
    /// Minimal generators of `ker ψ_t` as columns into `C_t`.
    pub kernel_generators: BihomMatrix,
    /// Syzygies among those generators; empty exactly when the kernel is free.
    pub kernel_syzygies: BihomMatrix,
    /// The resolution itself, `F_0 = ker ψ_t`, `F_s = C_{t+s}`.
    pub resolution: FreeResolution,
}

impl ComponentResolution {
    pub fn kernel_is_free(&self) -> bool {
        self.kernel_syzygies.ncols() == 0
    }

    pub fn length(&self) -> usize {
        self.resolution.length()
    }
}

/// Builds the resolution of `H^q_Q(M)_j` for `M` relative Cohen–Macaulay
/// with respect to `Q` of relative dimension `q`. The freeness of `ker ψ_t` is
/// verified, not assumed.
pub fn component_resolution(module: &PresentedModule, q: usize, j: i32) -> Result<ComponentResolution> {
    require_rcm_q(module, q)?;
    component_resolution_from(&free_resolution(module)?, q, j)
}

/// As [`component_resolution`], trusting the caller for the vanishing hypothesis.
pub fn component_resolution_from(res: &FreeResolution, q: usize, j: i32) -> Result<ComponentResolution> {
    let ring = res.ring();
    let kx = ring.x_subring();
    let n = ring.n();
    if q > n {
        return Err(Error::Precondition(format!("relative dimension {q} exceeds n = {n}")));
    }
    let t = n - q;
    let c = component_complex(res, j)?;
    let kernel = if t < c.components.len() {
        cycles(&c, kx, t)?
    } else {
        BihomMatrix::zero(kx, FreeModule::default(), FreeModule::default())
    };
    let kernel_syzygies = if kernel.ncols() == 0 {
        BihomMatrix::zero(kx, FreeModule::default(), FreeModule::default())
    } else {
        kernel_of_map(&kernel, None)?
    };
    let mut maps = Vec::new();
    if let Some(next) = c.map(t + 1) {
        let mut cols = Vec::with_capacity(next.ncols());
        for v in next.columns() {
            let w = if kernel.ncols() == 0 {
                if !v.is_zero() {
                    return Err(Error::Internal("boundary outside the cycles".into()));
                }
                ModuleVector::zero(0)
            } else {
                lift(&kernel, v)?.ok_or_else(|| Error::Internal("boundary outside the cycles".into()))?
            };
            cols.push(w);
        }
        maps.push(BihomMatrix::new(kx, next.source().clone(), kernel.source().clone(), cols)?);
        for k in t + 2..=c.length() {
            maps.push(c.map(k).unwrap().clone());
        }
    }
    while maps.last().is_some_and(|m| m.source().is_zero()) {
        maps.pop();
    }
    let resolution = FreeResolution::from_maps(kx, kernel.source().clone(), maps, false)?;
    if resolution.length() > ring.m() {
        return Err(Error::Internal(format!(
            "resolution of H^{q}_Q(M)_{j} has length {} > m",
            resolution.length()
        )));
    }
    Ok(ComponentResolution { q, j, kernel_generators: kernel, kernel_syzygies, resolution })
}

/// `c = max_{i,k} (a_ik - i)` over a minimal resolution.
pub fn regularity_bound(res: &FreeResolution) -> Option<i32> {
    res.modules()
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.twists().iter().map(move |t| t.dx - i as i32))
        .max()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityPoint {
    pub j: i32,
    /// `None` when the component vanishes.
    pub reg: Option<i32>,
    pub bound: Option<i32>,
}

/// `reg H^q_Q(M)_j` for `j` in `[j_min, j_max]`, with the bound `c`.
pub fn regularity_profile(module: &PresentedModule, q: usize, j_min: i32, j_max: i32) -> Result<Vec<RegularityPoint>> {
    require_rcm_q(module, q)?;
    let res = free_resolution(module)?;
    let bound = regularity_bound(&res);
    let mut out = Vec::new();
    for j in j_min..=j_max {
        let h = lc_component_from(&res, q, j)?;
        out.push(RegularityPoint { j, reg: h.regularity()?, bound });
    }
    Ok(out)
}
