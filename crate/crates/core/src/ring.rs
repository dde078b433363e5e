//! The standard bigraded polynomial ring `K[x_1..x_m, y_1..y_n]`, its
//! bidegrees and monomials.
//!
//! The same type also describes the single-block subrings `K[x]` (`n = 0`)
//! and `K[y]` (`m = 0`); every algorithm in the crate is written once over
//! [`Ring`] and reused for all three.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use alloc::vec::Vec;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiDegree {
    pub dx: i32,
    pub dy: i32,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { dx: 0, dy: 0 };

    pub const fn new(dx: i32, dy: i32) -> Self {
        Self { dx, dy }
    }

    #[inline]
    pub fn total(self) -> i32 {
        self.dx + self.dy
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.dx + o.dx, self.dy + o.dy)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.dx - o.dx, self.dy - o.dy)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.dx, -self.dy)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

pub(crate) type Exps = SmallVec<[u16; 8]>;

/// A monomial `x^a y^b`, exponents stored x-block first.
///
/// Ordered by graded reverse lexicographic order with
/// `x_1 > ... > x_m > y_1 > ... > y_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    nx: u8,
    tdeg: u32,
}

impl Monomial {
    pub(crate) fn from_exps(exps: Exps, nx: usize) -> Self {
        let tdeg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, nx: nx as u8, tdeg }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn xexp(&self) -> &[u16] {
        &self.exps[..self.nx as usize]
    }

    pub fn yexp(&self) -> &[u16] {
        &self.exps[self.nx as usize..]
    }

    pub fn is_one(&self) -> bool {
        self.tdeg == 0
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.tdeg
    }

    pub fn bidegree(&self) -> BiDegree {
        let dx: u32 = self.xexp().iter().map(|&e| e as u32).sum();
        BiDegree::new(dx as i32, (self.tdeg - dx) as i32)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps, nx: self.nx, tdeg: self.tdeg + other.tdeg }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.tdeg <= other.tdeg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Monomial { exps, nx: self.nx, tdeg: other.tdeg - self.tdeg }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps, self.nx as usize)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.tdeg.cmp(&other.tdeg) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Ring configuration: coefficient field and the sizes of the two variable
/// blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    m: usize,
    n: usize,
}

impl Ring {
    pub fn new(field: PrimeField, m: usize, n: usize) -> Result<Self> {
        if m + n > 64 {
            return Err(Error::Precondition("at most 64 variables are supported".into()));
        }
        Ok(Ring { field, m, n })
    }

    /// `K[x_1..x_m, y_1..y_n]` over the default field.
    pub fn standard(m: usize, n: usize) -> Self {
        Ring { field: PrimeField::default(), m, n }
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// Number of x-variables.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of y-variables.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.m + self.n
    }

    /// `K[x]` with the same field.
    pub fn x_subring(&self) -> Ring {
        Ring { field: self.field, m: self.m, n: 0 }
    }

    /// `K[y]` with the same field.
    pub fn y_subring(&self) -> Ring {
        Ring { field: self.field, m: 0, n: self.n }
    }

    pub fn one(&self) -> Monomial {
        Monomial::from_exps(core::iter::repeat_n(0, self.nvars()).collect(), self.m)
    }

    pub fn monomial(&self, xexp: &[u16], yexp: &[u16]) -> Monomial {
        assert_eq!(xexp.len(), self.m);
        assert_eq!(yexp.len(), self.n);
        Monomial::from_exps(xexp.iter().chain(yexp.iter()).copied().collect(), self.m)
    }

    #[cfg(test)]
    pub(crate) fn monomial_from_slice(&self, exps: &[u16]) -> Monomial {
        assert_eq!(exps.len(), self.nvars());
        Monomial::from_exps(exps.iter().copied().collect(), self.m)
    }

    /// The variable with global index `i` (x-block first).
    pub fn var(&self, i: usize) -> Monomial {
        let mut exps: Exps = core::iter::repeat_n(0, self.nvars()).collect();
        exps[i] = 1;
        Monomial::from_exps(exps, self.m)
    }

    /// `x_i`, 0-based.
    pub fn x(&self, i: usize) -> Monomial {
        assert!(i < self.m);
        self.var(i)
    }

    /// `y_i`, 0-based.
    pub fn y(&self, i: usize) -> Monomial {
        assert!(i < self.n);
        self.var(self.m + i)
    }

    pub fn var_name(&self, i: usize) -> alloc::string::String {
        if i < self.m {
            alloc::format!("x{}", i + 1)
        } else {
            alloc::format!("y{}", i - self.m + 1)
        }
    }

    /// All monomials of bidegree `d`, in descending monomial order.
    pub fn monomials_of_bidegree(&self, d: BiDegree) -> Vec<Monomial> {
        if d.dx < 0 || d.dy < 0 || (self.m == 0 && d.dx > 0) || (self.n == 0 && d.dy > 0) {
            return Vec::new();
        }
        let xs = compositions(d.dx as u16, self.m);
        let ys = compositions(d.dy as u16, self.n);
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for a in &xs {
            for b in &ys {
                out.push(self.monomial(a, b));
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

/// All exponent vectors of length `len` summing to `total`, lexicographically
/// descending.
pub fn compositions(total: u16, len: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = alloc::vec![0u16; len];
    fill(total, 0, &mut cur, &mut out);
    out
}

fn fill(rest: u16, idx: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if idx + 1 == cur.len() {
        cur[idx] = rest;
        out.push(cur.clone());
        return;
    }
    for e in (0..=rest).rev() {
        cur[idx] = e;
        fill(rest - e, idx + 1, cur, out);
    }
}

/// Binomial coefficient with `binom(n, k) = 0` for `k < 0` or `n < k`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_orders_variables() {
        let r = Ring::standard(2, 2);
        assert!(r.x(0) > r.x(1));
        assert!(r.x(1) > r.y(0));
        assert!(r.y(0) > r.y(1));
        // x1*y2 vs x2^2: revlex, last variable y2 appears in the first
        let a = r.monomial(&[1, 0], &[0, 1]);
        let b = r.monomial(&[0, 2], &[0, 0]);
        assert!(b > a);
        assert!(r.monomial(&[2, 0], &[0, 0]) > r.one());
    }

    #[test]
    fn monomial_arithmetic() {
        let r = Ring::standard(1, 1);
        let a = r.monomial(&[1], &[1]);
        let b = r.x(0);
        let p = a.mul(&b);
        assert_eq!(p.exponents(), &[2, 1]);
        assert_eq!(p.bidegree(), BiDegree::new(2, 1));
        assert!(b.divides(&p));
        assert_eq!(b.quotient_of(&p), a);
        assert_eq!(a.lcm(&r.y(0)), a);
    }

    #[test]
    fn counts_monomials() {
        let r = Ring::standard(2, 3);
        let ms = r.monomials_of_bidegree(BiDegree::new(2, 2));
        assert_eq!(ms.len() as u64, binomial(3, 1) * binomial(4, 2));
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert!(Ring::standard(0, 2).monomials_of_bidegree(BiDegree::new(1, 0)).is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(-1, -1), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
