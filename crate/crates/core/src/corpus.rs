//! Deterministic test modules with known invariants.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Ideal, Result};
use crate::field::PrimeField;
use crate::free::{FreeModule, ModuleVector};
use crate::invariants::{self, ideal_generators};
use crate::poly::Polynomial;
use crate::resolution::{free_resolution, PresentedModule};
use crate::ring::{BiDegree, Monomial, Ring};

/// Expected invariants; `None` means "not asserted".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub dim: Option<usize>,
    pub depth: Option<usize>,
    pub grade_p: Option<usize>,
    pub cd_p: Option<usize>,
    pub grade_q: Option<usize>,
    pub cd_q: Option<usize>,
    pub rcm_p: Option<bool>,
    pub rcm_q: Option<bool>,
}

impl Expected {
    /// Names and values of the asserted fields, in a fixed order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut push = |name, v: Option<String>| {
            if let Some(v) = v {
                out.push((name, v));
            }
        };
        push("dim", self.dim.map(|v| v.to_string()));
        push("depth", self.depth.map(|v| v.to_string()));
        push("grade_p", self.grade_p.map(|v| v.to_string()));
        push("cd_p", self.cd_p.map(|v| v.to_string()));
        push("grade_q", self.grade_q.map(|v| v.to_string()));
        push("cd_q", self.cd_q.map(|v| v.to_string()));
        push("rcm_p", self.rcm_p.map(|v| v.to_string()));
        push("rcm_q", self.rcm_q.map(|v| v.to_string()));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub module: PresentedModule,
    pub expected: Expected,
}

fn entry(name: &str, module: PresentedModule, expected: Expected) -> CorpusEntry {
    CorpusEntry { name: name.into(), module, expected }
}

fn ring(field: PrimeField, m: usize, n: usize) -> Ring {
    Ring::new(field, m, n).expect("corpus ring sizes are valid")
}

fn mono(r: &Ring, xexp: &[u16], yexp: &[u16]) -> Polynomial {
    Polynomial::monomial(r.monomial(xexp, yexp))
}

/// Moves a polynomial in the x- (resp. y-) variables alone into `K[x]` (resp. `K[y]`).
fn restrict(p: &Polynomial, target: &Ring, keep_x: bool) -> Polynomial {
    let f = target.field();
    Polynomial::from_terms(
        f,
        p.terms().iter().map(|(mon, c)| {
            let m: Monomial = if keep_x { target.monomial(mon.xexp(), &[]) } else { target.monomial(&[], mon.yexp()) };
            (m, *c)
        }),
    )
}

/// `(dim, depth)` of `K[sub]/ideal`, `None` when the quotient is zero.
fn factor_invariants(sub: Ring, ideal: &[Polynomial]) -> Result<Option<(usize, usize)>> {
    let m = PresentedModule::cyclic(sub, ideal)?;
    let res = free_resolution(&m)?;
    match invariants::dimension_from(&res) {
        None => Ok(None),
        Some(d) => Ok(Some((d, invariants::depth_from(&res)?))),
    }
}

/// `S / (I + J)` for `I` in the x-variables and `J` in the y-variables.
///
/// With `R_0 = K[x]/I` and `R_1 = K[y]/J` the quotient is `R_0 ⊗_K R_1`, so
/// its local cohomology with respect to `Q` is `R_0 ⊗ H_Q(R_1)`: it is
/// relative Cohen–Macaulay w.r.t. `Q` exactly when `R_1` is Cohen–Macaulay,
/// with relative dimension `dim R_1`, and symmetrically for `P`. The
/// expected values are computed with the factor rings alone.
pub fn tensor_module(name: &str, r: Ring, i_gens: &[Polynomial], j_gens: &[Polynomial]) -> Result<CorpusEntry> {
    if i_gens.iter().any(|g| g.terms().iter().any(|(m, _)| m.yexp().iter().any(|&e| e > 0))) {
        return Err(Error::MixedVariables("x"));
    }
    if j_gens.iter().any(|g| g.terms().iter().any(|(m, _)| m.xexp().iter().any(|&e| e > 0))) {
        return Err(Error::MixedVariables("y"));
    }
    let kx = r.x_subring();
    let ky = r.y_subring();
    let ix: Vec<Polynomial> = i_gens.iter().map(|g| restrict(g, &kx, true)).collect();
    let jy: Vec<Polynomial> = j_gens.iter().map(|g| restrict(g, &ky, false)).collect();
    let mut all = i_gens.to_vec();
    all.extend_from_slice(j_gens);
    let module = PresentedModule::cyclic(r, &all)?;
    let expected = match (factor_invariants(kx, &ix)?, factor_invariants(ky, &jy)?) {
        (Some((d0, e0)), Some((d1, e1))) => Expected {
            dim: Some(d0 + d1),
            depth: Some(e0 + e1),
            grade_p: Some(e0),
            cd_p: Some(d0),
            grade_q: Some(e1),
            cd_q: Some(d1),
            rcm_p: Some(d0 == e0),
            rcm_q: Some(d1 == e1),
        },
        _ => Expected::default(),
    };
    Ok(entry(name, module, expected))
}

/// `K[x_1, x_2, y_1, y_2] / (x_1^2, x_1 x_2)`.
pub fn example_ideal_in_x(field: PrimeField) -> CorpusEntry {
    let r = ring(field, 2, 2);
    let module = PresentedModule::cyclic(r, &[mono(&r, &[2, 0], &[0, 0]), mono(&r, &[1, 1], &[0, 0])]).unwrap();
    entry(
        "ex35",
        module,
        Expected {
            dim: Some(3),
            depth: Some(2),
            grade_p: Some(0),
            cd_p: Some(1),
            grade_q: Some(2),
            cd_q: Some(2),
            rcm_p: Some(false),
            rcm_q: Some(true),
        },
    )
}

/// `K[x_1..x_m, y_1] / (x_1 y_1, ..., x_m y_1, y_1^2)`.
pub fn example_nilpotent_y(field: PrimeField, m: usize) -> Result<CorpusEntry> {
    if m == 0 {
        return Err(Error::Precondition("the example needs m >= 1".into()));
    }
    let r = ring(field, m, 1);
    let mut gens: Vec<Polynomial> = (0..m).map(|i| Polynomial::monomial(r.x(i).mul(&r.y(0)))).collect();
    gens.push(mono(&r, &alloc::vec![0; m], &[2]));
    let module = PresentedModule::cyclic(r, &gens)?;
    Ok(entry(
        &format!("ex36_{m}"),
        module,
        Expected {
            dim: Some(m),
            depth: Some(0),
            grade_p: None,
            cd_p: Some(m),
            grade_q: Some(0),
            cd_q: Some(0),
            rcm_p: Some(false),
            rcm_q: Some(true),
        },
    ))
}

/// `ex35`, `ex36_<m>`.
pub fn worked_example(name: &str, field: PrimeField) -> Result<CorpusEntry> {
    if name == "ex35" {
        return Ok(example_ideal_in_x(field));
    }
    if let Some(m) = name.strip_prefix("ex36_").and_then(|s| s.parse::<usize>().ok()) {
        return example_nilpotent_y(field, m);
    }
    Err(Error::Precondition(format!("unknown example {name}")))
}

/// Size limits for [`random_module`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSizes {
    pub m: usize,
    pub n: usize,
    pub relations: usize,
    pub max_degree: BiDegree,
}

impl Default for RandomSizes {
    fn default() -> Self {
        RandomSizes { m: 2, n: 2, relations: 3, max_degree: BiDegree::new(2, 2) }
    }
}

/// A cyclic module `S/(f_1..f_r)` with random bihomogeneous `f_i`: a bidegree
/// `≠ (0,0)` is drawn first, then sparse random coefficients on its monomials.
pub fn random_module(field: PrimeField, seed: u64, sizes: RandomSizes) -> CorpusEntry {
    let r = ring(field, sizes.m, sizes.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut below = |bound: u32| rng.next_u32() % bound;
    let mut gens = Vec::with_capacity(sizes.relations);
    while gens.len() < sizes.relations {
        let dx = below(sizes.max_degree.dx as u32 + 1) as i32;
        let dy = below(sizes.max_degree.dy as u32 + 1) as i32;
        if dx == 0 && dy == 0 {
            continue;
        }
        let mons = r.monomials_of_bidegree(BiDegree::new(dx, dy));
        if mons.is_empty() {
            continue;
        }
        let mut terms = Vec::new();
        for mon in mons {
            if below(3) == 0 {
                terms.push((mon, 1 + below(field.modulus() - 1)));
            }
        }
        if terms.is_empty() {
            continue;
        }
        gens.push(Polynomial::from_terms(&field, terms));
    }
    let module = PresentedModule::cyclic(r, &gens).expect("random relations are bihomogeneous");
    entry(&format!("random_{seed}"), module, Expected::default())
}

fn free_entry(field: PrimeField, name: &str, m: usize, n: usize, twist: BiDegree) -> CorpusEntry {
    let r = ring(field, m, n);
    let (mm, nn) = (m, n);
    entry(
        name,
        PresentedModule::free(r, FreeModule::new(alloc::vec![twist])),
        Expected {
            dim: Some(mm + nn),
            depth: Some(mm + nn),
            grade_p: Some(mm),
            cd_p: Some(mm),
            grade_q: Some(nn),
            cd_q: Some(nn),
            rcm_p: Some(true),
            rcm_q: Some(true),
        },
    )
}

/// Seeds of the random corpus entries.
pub const RANDOM_SEEDS: [u64; 4] = [0, 1, 2, 3];

/// Names accepted by [`corpus_entry`], in corpus order.
pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = [
        "ex35",
        "ex36_1",
        "ex36_2",
        "ex36_3",
        "free_1_1",
        "free_2_2",
        "free_1_2",
        "free_shifted",
        "hypersurface",
        "tensor_x2",
        "tensor_y2",
        "tensor_x1x2_y1y2",
        "tensor_ex35_y1",
        "tensor_x3_y2",
        "maximal_x2",
        "quotient_p",
        "quotient_q",
        "non_cm_y",
        "maximal_ideal",
    ]
    .iter()
    .map(|s| String::from(*s))
    .collect();
    names.extend(RANDOM_SEEDS.iter().map(|s| format!("random_{s}")));
    names
}

/// Builds a named corpus entry.
pub fn corpus_entry(name: &str, field: PrimeField) -> Result<CorpusEntry> {
    if name == "ex35" || name.starts_with("ex36_") {
        return worked_example(name, field);
    }
    if let Some(seed) = name.strip_prefix("random_").and_then(|s| s.parse::<u64>().ok()) {
        return Ok(random_module(field, seed, RandomSizes::default()));
    }
    let x = |r: &Ring, e: &[u16]| mono(r, e, &alloc::vec![0; r.n()]);
    let y = |r: &Ring, e: &[u16]| mono(r, &alloc::vec![0; r.m()], e);
    match name {
        "free_1_1" => Ok(free_entry(field, name, 1, 1, BiDegree::ZERO)),
        "free_2_2" => Ok(free_entry(field, name, 2, 2, BiDegree::ZERO)),
        "free_1_2" => Ok(free_entry(field, name, 1, 2, BiDegree::ZERO)),
        "free_shifted" => Ok(free_entry(field, name, 2, 1, BiDegree::new(2, 0))),
        "hypersurface" => {
            let r = ring(field, 1, 1);
            let module = PresentedModule::cyclic(r, &[mono(&r, &[1], &[1])])?;
            Ok(entry(
                name,
                module,
                Expected {
                    dim: Some(1),
                    depth: Some(1),
                    grade_p: Some(0),
                    cd_p: Some(1),
                    grade_q: Some(0),
                    cd_q: Some(1),
                    rcm_p: Some(false),
                    rcm_q: Some(false),
                },
            ))
        }
        "tensor_x2" => {
            let r = ring(field, 1, 1);
            tensor_module(name, r, &[x(&r, &[2])], &[])
        }
        "tensor_y2" => {
            let r = ring(field, 2, 2);
            tensor_module(name, r, &[], &[y(&r, &[2, 0])])
        }
        "tensor_x1x2_y1y2" => {
            let r = ring(field, 2, 2);
            tensor_module(name, r, &[x(&r, &[1, 1])], &[y(&r, &[1, 1])])
        }
        "tensor_ex35_y1" => {
            let r = ring(field, 2, 2);
            tensor_module(name, r, &[x(&r, &[2, 0]), x(&r, &[1, 1])], &[y(&r, &[1, 0])])
        }
        "tensor_x3_y2" => {
            let r = ring(field, 1, 1);
            tensor_module(name, r, &[x(&r, &[3])], &[y(&r, &[2])])
        }
        "maximal_x2" => {
            let r = ring(field, 2, 2);
            tensor_module(name, r, &[x(&r, &[2, 0])], &[])
        }
        "quotient_p" => {
            let r = ring(field, 2, 2);
            tensor_module(name, r, &ideal_generators(&r, Ideal::P), &[])
        }
        "quotient_q" => {
            let r = ring(field, 2, 2);
            tensor_module(name, r, &[], &ideal_generators(&r, Ideal::Q))
        }
        "non_cm_y" => {
            let r = ring(field, 1, 2);
            tensor_module(name, r, &[], &[y(&r, &[2, 0]), y(&r, &[1, 1])])
        }
        "maximal_ideal" => {
            // (x1, y1) ⊂ K[x1, y1] up to a shift: coker of S(-1,0) -> S ⊕ S(-1,1),
            // 1 ↦ (x1, y1). Only H^1 survives for either ideal, but depth is 1.
            let r = ring(field, 1, 1);
            let amb = FreeModule::new(alloc::vec![BiDegree::ZERO, BiDegree::new(1, -1)]);
            let col = ModuleVector::from_entries(alloc::vec![mono(&r, &[1], &[0]), mono(&r, &[0], &[1])]);
            Ok(entry(
                name,
                PresentedModule::from_columns(r, amb, alloc::vec![col])?,
                Expected {
                    dim: Some(2),
                    depth: Some(1),
                    grade_p: Some(1),
                    cd_p: Some(1),
                    grade_q: Some(1),
                    cd_q: Some(1),
                    rcm_p: Some(true),
                    rcm_q: Some(true),
                },
            ))
        }
        _ => Err(Error::Precondition(format!("unknown corpus entry {name}"))),
    }
}

/// The full corpus over `field`.
pub fn corpus(field: PrimeField) -> Vec<CorpusEntry> {
    corpus_names().iter().map(|n| corpus_entry(n, field).expect("corpus names are valid")).collect()
}
