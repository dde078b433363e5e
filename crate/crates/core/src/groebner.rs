//! Gröbner bases of submodules of bigraded free modules.
//!
//! Inputs are always bihomogeneous, so Buchberger's algorithm runs degree by
//! degree (normal selection strategy). Input generators are interleaved with
//! S-pairs of the same total degree; an input that reduces to zero at its turn
//! is redundant, which yields minimal generating sets as a by-product.
//!
//! Kernels, syzygies and lifts use the augmented module `G ⊕ F` spanned by
//! `(f_c, e_c)` under an order in which every `G`-term beats every `F`-term.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::free::{BihomMatrix, FreeModule, ModuleVector};
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// Module monomial order.
///
/// Positions `< split` form a block that dominates the rest; inside a block
/// the order is term-over-position (monomial first, then lower position wins).
/// `split = 0` is plain term-over-position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub split: usize,
}

impl ModuleOrder {
    pub const TOP: ModuleOrder = ModuleOrder { split: 0 };

    pub fn elimination(split: usize) -> Self {
        ModuleOrder { split }
    }

    #[inline]
    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let ba = a.pos >= self.split;
        let bb = b.pos >= self.split;
        if ba != bb {
            // the low block is larger
            return bb.cmp(&ba);
        }
        match a.mon.cmp(&b.mon) {
            Ordering::Equal => b.pos.cmp(&a.pos),
            o => o,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub pos: usize,
    pub coeff: u32,
}

/// Terms sorted strictly descending.
pub(crate) type TermVec = Vec<Term>;

pub(crate) fn to_terms(v: &ModuleVector, order: &ModuleOrder) -> TermVec {
    let mut out: TermVec = Vec::new();
    for (pos, p) in v.entries().iter().enumerate() {
        for (m, c) in p.terms() {
            out.push(Term { mon: m.clone(), pos, coeff: *c });
        }
    }
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

pub(crate) fn from_terms(t: &[Term], rank: usize, f: &PrimeField) -> ModuleVector {
    let mut buckets: Vec<Vec<(Monomial, u32)>> = (0..rank).map(|_| Vec::new()).collect();
    for term in t {
        buckets[term.pos].push((term.mon.clone(), term.coeff));
    }
    ModuleVector::from_entries(
        buckets.into_iter().map(|b| Polynomial::from_terms(f, b)).collect(),
    )
}

/// `a - c*mon*b`, both sorted, result sorted. Skips `skip_a`/`skip_b` leading terms.
fn sub_scaled(
    a: &[Term],
    b: &[Term],
    mon: &Monomial,
    c: u32,
    f: &PrimeField,
    order: &ModuleOrder,
) -> TermVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let negc = f.neg(c);
    let scaled = |t: &Term| Term { mon: t.mon.mul(mon), pos: t.pos, coeff: f.mul(t.coeff, negc) };
    let mut pending_b: Option<Term> = b.first().map(scaled);
    while i < a.len() {
        let Some(bt) = pending_b.as_ref() else { break };
        match order.cmp(&a[i], bt) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(pending_b.take().unwrap());
                j += 1;
                pending_b = b.get(j).map(scaled);
            }
            Ordering::Equal => {
                let s = f.add(a[i].coeff, bt.coeff);
                if s != 0 {
                    out.push(Term { mon: a[i].mon.clone(), pos: a[i].pos, coeff: s });
                }
                i += 1;
                j += 1;
                pending_b = b.get(j).map(scaled);
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    if let Some(bt) = pending_b {
        out.push(bt);
        out.extend(b[j + 1..].iter().map(scaled));
    }
    out
}

#[derive(Clone, Debug)]
struct Pair {
    deg: i64,
    lcm: Monomial,
    pos: usize,
    i: usize,
    j: usize,
}

/// A Gröbner basis of a submodule of `ambient`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    ambient: FreeModule,
    order: ModuleOrder,
    elems: Vec<TermVec>,
    by_pos: Vec<Vec<usize>>,
}

struct Engine<'a> {
    ring: &'a Ring,
    ambient: &'a FreeModule,
    order: ModuleOrder,
    basis: Vec<TermVec>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn new(ring: &'a Ring, ambient: &'a FreeModule, order: ModuleOrder) -> Self {
        Engine {
            ring,
            ambient,
            order,
            basis: Vec::new(),
            by_pos: alloc::vec![Vec::new(); ambient.rank()],
            pairs: Vec::new(),
        }
    }

    fn degree_of(&self, mon: &Monomial, pos: usize) -> i64 {
        mon.total_degree() as i64 + self.ambient.twist(pos).total() as i64
    }

    fn find_divisor(&self, t: &Term) -> Option<usize> {
        self.by_pos[t.pos]
            .iter()
            .copied()
            .find(|&g| self.basis[g][0].mon.divides(&t.mon))
    }

    /// Full reduction of `v` by the current basis.
    fn reduce(&self, mut v: TermVec) -> TermVec {
        let f = self.ring.field();
        let mut rem: TermVec = Vec::new();
        let mut start = 0;
        while start < v.len() {
            let lead = &v[start];
            match self.find_divisor(lead) {
                Some(g) => {
                    let gl = &self.basis[g];
                    let q = gl[0].mon.quotient_of(&lead.mon);
                    let c = lead.coeff;
                    v = sub_scaled(&v[start + 1..], &gl[1..], &q, c, f, &self.order);
                    start = 0;
                }
                None => {
                    rem.push(v[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }

    fn make_monic(&self, mut v: TermVec) -> TermVec {
        let f = self.ring.field();
        let inv = f.inv(v[0].coeff);
        for t in v.iter_mut() {
            t.coeff = f.mul(t.coeff, inv);
        }
        v
    }

    fn spoly(&self, p: &Pair) -> TermVec {
        let f = self.ring.field();
        let (a, b) = (&self.basis[p.i], &self.basis[p.j]);
        let qa = a[0].mon.quotient_of(&p.lcm);
        let qb = b[0].mon.quotient_of(&p.lcm);
        let sa: TermVec = a[1..]
            .iter()
            .map(|t| Term { mon: t.mon.mul(&qa), pos: t.pos, coeff: t.coeff })
            .collect();
        sub_scaled(&sa, &b[1..], &qb, 1, f, &self.order)
    }

    fn insert(&mut self, h: TermVec) {
        let k = self.basis.len();
        let lt = h[0].mon.clone();
        let pos = h[0].pos;
        // drop queued pairs made redundant by h
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.pos != pos || !lt.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i][0].mon.lcm(&lt);
            let lj = basis[p.j][0].mon.lcm(&lt);
            li == p.lcm || lj == p.lcm
        });
        let mut cands: Vec<Pair> = self.by_pos[pos]
            .iter()
            .map(|&i| {
                let lcm = self.basis[i][0].mon.lcm(&lt);
                Pair { deg: self.degree_of(&lcm, pos), lcm, pos, i, j: k }
            })
            .collect();
        let mut keep = alloc::vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&cands[a].lcm, &cands[b].lcm);
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut idx = 0;
        cands.retain(|_| {
            idx += 1;
            keep[idx - 1]
        });
        self.pairs.extend(cands);
        self.by_pos[pos].push(k);
        self.basis.push(h);
    }

    /// Runs the degree-by-degree loop. Returns indices of inputs that were kept.
    fn run(&mut self, inputs: Vec<(usize, TermVec)>) -> Vec<usize> {
        let mut inputs: Vec<(i64, usize, TermVec)> = inputs
            .into_iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(i, t)| (self.degree_of(&t[0].mon, t[0].pos), i, t))
            .collect();
        inputs.sort_by_key(|(d, i, _)| (*d, *i));
        let mut inputs = inputs.into_iter().peekable();
        let mut kept = Vec::new();
        loop {
            let pd = self.pairs.iter().map(|p| p.deg).min();
            let id = inputs.peek().map(|x| x.0);
            let d = match (pd, id) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            // S-pairs of degree d
            loop {
                let mut sel: Vec<Pair> = Vec::new();
                self.pairs.retain(|p| {
                    if p.deg == d {
                        sel.push(p.clone());
                        false
                    } else {
                        true
                    }
                });
                if sel.is_empty() {
                    break;
                }
                sel.sort_by_key(|a| (a.i, a.j));
                for p in sel {
                    let s = self.spoly(&p);
                    let r = self.reduce(s);
                    if !r.is_empty() {
                        let r = self.make_monic(r);
                        self.insert(r);
                    }
                }
            }
            while inputs.peek().is_some_and(|x| x.0 == d) {
                let (_, idx, t) = inputs.next().unwrap();
                let r = self.reduce(t);
                if !r.is_empty() {
                    kept.push(idx);
                    let r = self.make_monic(r);
                    self.insert(r);
                }
            }
        }
        kept
    }

    /// Interreduces into the unique reduced basis, sorted by leading term.
    fn finish(self) -> GroebnerBasis {
        let n = self.basis.len();
        let mut alive = alloc::vec![true; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || !alive[j] {
                    continue;
                }
                let (a, b) = (&self.basis[i][0], &self.basis[j][0]);
                if a.pos == b.pos && b.mon.divides(&a.mon) && (a.mon != b.mon || j < i) {
                    alive[i] = false;
                    break;
                }
            }
        }
        let mut minimal: Vec<TermVec> =
            self.basis.iter().zip(&alive).filter(|(_, a)| **a).map(|(t, _)| t.clone()).collect();
        minimal.sort_by(|a, b| self.order.cmp(&a[0], &b[0]));
        let mut by_pos = alloc::vec![Vec::new(); self.ambient.rank()];
        for (i, t) in minimal.iter().enumerate() {
            by_pos[t[0].pos].push(i);
        }
        let mut gb = GroebnerBasis {
            ring: *self.ring,
            ambient: self.ambient.clone(),
            order: self.order,
            elems: minimal,
            by_pos,
        };
        // tail reduction; leading terms are untouched so indices stay valid
        for i in 0..gb.elems.len() {
            let tail = gb.elems[i][1..].to_vec();
            let red = gb.reduce_excluding(tail, i);
            let mut e = alloc::vec![gb.elems[i][0].clone()];
            e.extend(red);
            gb.elems[i] = e;
        }
        gb
    }
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the submodule generated by `gens` under
    /// term-over-position order.
    pub fn new(ring: &Ring, ambient: &FreeModule, gens: &[ModuleVector]) -> Self {
        Self::with_order(ring, ambient, gens, ModuleOrder::TOP)
    }

    pub fn with_order(
        ring: &Ring,
        ambient: &FreeModule,
        gens: &[ModuleVector],
        order: ModuleOrder,
    ) -> Self {
        Self::compute(ring, ambient, gens, order).0
    }

    /// Also returns the indices of a minimal generating subset of `gens`.
    pub fn compute(
        ring: &Ring,
        ambient: &FreeModule,
        gens: &[ModuleVector],
        order: ModuleOrder,
    ) -> (Self, Vec<usize>) {
        let mut eng = Engine::new(ring, ambient, order);
        let inputs = gens.iter().enumerate().map(|(i, g)| (i, to_terms(g, &order))).collect();
        let mut kept = eng.run(inputs);
        kept.sort_unstable();
        (eng.finish(), kept)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn generators(&self) -> Vec<ModuleVector> {
        let f = self.ring.field();
        self.elems.iter().map(|t| from_terms(t, self.ambient.rank(), f)).collect()
    }

    /// Leading terms as (position, monomial).
    pub fn leading_terms(&self) -> impl Iterator<Item = (usize, &Monomial)> {
        self.elems.iter().map(|t| (t[0].pos, &t[0].mon))
    }

    /// True when `mon * e_pos` is divisible by some leading term.
    pub fn is_leading_multiple(&self, pos: usize, mon: &Monomial) -> bool {
        self.by_pos[pos].iter().any(|&g| self.elems[g][0].mon.divides(mon))
    }

    fn reduce_excluding(&self, mut v: TermVec, skip: usize) -> TermVec {
        let f = self.ring.field();
        let mut rem: TermVec = Vec::new();
        let mut start = 0;
        while start < v.len() {
            let lead = &v[start];
            let div = self.by_pos[lead.pos]
                .iter()
                .copied()
                .find(|&g| g != skip && self.elems[g][0].mon.divides(&lead.mon));
            match div {
                Some(g) => {
                    let gl = &self.elems[g];
                    let q = gl[0].mon.quotient_of(&lead.mon);
                    v = sub_scaled(&v[start + 1..], &gl[1..], &q, lead.coeff, f, &self.order);
                    start = 0;
                }
                None => {
                    rem.push(v[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }

    pub(crate) fn reduce_terms(&self, v: TermVec) -> TermVec {
        self.reduce_excluding(v, usize::MAX)
    }

    /// Remainder of `v`: no term is divisible by a leading term. Zero iff
    /// `v` lies in the submodule.
    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        let t = self.reduce_terms(to_terms(v, &self.order));
        from_terms(&t, self.ambient.rank(), self.ring.field())
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.reduce_terms(to_terms(v, &self.order)).is_empty()
    }

    /// Checks that every S-pair reduces to zero (slow, for tests).
    pub fn is_groebner(&self) -> bool {
        let eng = Engine {
            ring: &self.ring,
            ambient: &self.ambient,
            order: self.order,
            basis: self.elems.clone(),
            by_pos: self.by_pos.clone(),
            pairs: Vec::new(),
        };
        for i in 0..self.elems.len() {
            for j in (i + 1)..self.elems.len() {
                let (a, b) = (&self.elems[i][0], &self.elems[j][0]);
                if a.pos != b.pos {
                    continue;
                }
                let lcm = a.mon.lcm(&b.mon);
                let p = Pair { deg: 0, lcm, pos: a.pos, i, j };
                if !eng.reduce(eng.spoly(&p)).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the submodule of `ambient` generated by `gens`.
pub fn buchberger(ring: &Ring, gens: &[ModuleVector], ambient: &FreeModule) -> GroebnerBasis {
    GroebnerBasis::new(ring, ambient, gens)
}

/// Indices (ascending) of a minimal generating subset of the bihomogeneous `gens`.
pub fn minimal_generators(ring: &Ring, ambient: &FreeModule, gens: &[ModuleVector]) -> Vec<usize> {
    GroebnerBasis::compute(ring, ambient, gens, ModuleOrder::TOP).1
}

/// Restricts a map to a minimal generating subset of its columns.
pub fn minimalize_columns(m: &BihomMatrix) -> BihomMatrix {
    let keep = minimal_generators(m.ring(), m.target(), m.columns());
    m.select_columns(&keep)
}

fn check_same_target(f: &BihomMatrix, modulo: Option<&BihomMatrix>) -> Result<()> {
    if let Some(g) = modulo {
        if g.target() != f.target() {
            return Err(Error::ShapeMismatch(format!(
                "modulo matrix targets rank {}, map targets rank {}",
                g.target().rank(),
                f.target().rank()
            )));
        }
        if g.ring() != f.ring() {
            return Err(Error::RingMismatch);
        }
    }
    Ok(())
}

/// Augmented generators `(f_c, e_c)` and `(g_k, 0)` in `target ⊕ source`.
fn augmented(f: &BihomMatrix, modulo: Option<&BihomMatrix>) -> (FreeModule, Vec<ModuleVector>) {
    let g_rank = f.target().rank();
    let r = f.source().rank();
    let ambient = f.target().direct_sum(f.source());
    let ring = f.ring();
    let mut gens = Vec::with_capacity(r + modulo.map_or(0, |g| g.ncols()));
    for (c, col) in f.columns().iter().enumerate() {
        let mut e = col.entries().to_vec();
        e.resize(g_rank + r, Polynomial::zero());
        e[g_rank + c] = Polynomial::one(ring);
        gens.push(ModuleVector::from_entries(e));
    }
    if let Some(g) = modulo {
        for col in g.columns() {
            let mut e = col.entries().to_vec();
            e.resize(g_rank + r, Polynomial::zero());
            gens.push(ModuleVector::from_entries(e));
        }
    }
    (ambient, gens)
}

/// Minimal generators of `{v in source : f(v) ∈ im(modulo)}`, as columns of a
/// map into `f.source()`.
pub fn kernel_of_map(f: &BihomMatrix, modulo: Option<&BihomMatrix>) -> Result<BihomMatrix> {
    check_same_target(f, modulo)?;
    let ring = *f.ring();
    let g_rank = f.target().rank();
    let r = f.source().rank();
    if r == 0 {
        return Ok(BihomMatrix::zero(ring, FreeModule::default(), f.source().clone()));
    }
    let (ambient, gens) = augmented(f, modulo);
    let gb = GroebnerBasis::with_order(&ring, &ambient, &gens, ModuleOrder::elimination(g_rank));
    let fld = ring.field();
    let mut kernel: Vec<ModuleVector> = Vec::new();
    for t in &gb.elems {
        if t[0].pos < g_rank {
            continue;
        }
        let shifted: Vec<Term> = t
            .iter()
            .map(|x| Term { mon: x.mon.clone(), pos: x.pos - g_rank, coeff: x.coeff })
            .collect();
        kernel.push(from_terms(&shifted, r, fld));
    }
    let keep = minimal_generators(&ring, f.source(), &kernel);
    let cols: Vec<ModuleVector> = keep.into_iter().map(|i| kernel[i].clone()).collect();
    BihomMatrix::from_columns(ring, f.source().clone(), cols)
}

/// Syzygies of the generators of `gb`.
pub fn syzygy_basis(gb: &GroebnerBasis) -> Result<BihomMatrix> {
    let m = BihomMatrix::from_columns(*gb.ring(), gb.ambient().clone(), gb.generators())?;
    kernel_of_map(&m, None)
}

/// Some `w` with `f(w) = v`, if `v ∈ im f`.
pub fn lift(f: &BihomMatrix, v: &ModuleVector) -> Result<Option<ModuleVector>> {
    if v.rank() != f.target().rank() {
        return Err(Error::ShapeMismatch("vector not in the target of the map".into()));
    }
    let ring = *f.ring();
    let g_rank = f.target().rank();
    let r = f.source().rank();
    let (ambient, gens) = augmented(f, None);
    let order = ModuleOrder::elimination(g_rank);
    let gb = GroebnerBasis::with_order(&ring, &ambient, &gens, order);
    let mut e = v.entries().to_vec();
    e.resize(g_rank + r, Polynomial::zero());
    let red = gb.reduce_terms(to_terms(&ModuleVector::from_entries(e), &order));
    if red.iter().any(|t| t.pos < g_rank) {
        return Ok(None);
    }
    let fld = ring.field();
    let w: Vec<Term> = red
        .iter()
        .map(|t| Term { mon: t.mon.clone(), pos: t.pos - g_rank, coeff: fld.neg(t.coeff) })
        .collect();
    Ok(Some(from_terms(&w, r, fld)))
}
