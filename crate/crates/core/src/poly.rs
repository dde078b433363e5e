//! Sparse polynomials with coefficients in `F_p`.

use core::fmt;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::PrimeField;
use crate::ring::{BiDegree, Monomial, Ring};

/// Terms sorted strictly descending by monomial order, no zero coefficients.
/// Equality is therefore structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: u32) -> Self {
        Self::term(ring.one(), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn term(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Polynomial { terms: alloc::vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, 1)
    }

    /// Canonicalizes arbitrary (monomial, coefficient) pairs.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, u32)>>(f: &PrimeField, terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % f.modulus());
        }
        Polynomial { terms: acc.into_iter().rev().filter(|(_, c)| *c != 0).collect() }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// The common bidegree of all terms; `None` for zero or mixed polynomials.
    pub fn bidegree(&self) -> Option<BiDegree> {
        let d = self.terms.first()?.0.bidegree();
        self.terms.iter().all(|(m, _)| m.bidegree() == d).then_some(d)
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// Nonzero constant (a unit of the polynomial ring).
    pub fn as_unit(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn constant_coefficient(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn add(&self, other: &Polynomial, f: &PrimeField) -> Polynomial {
        self.combine(other, f, false)
    }

    pub fn sub(&self, other: &Polynomial, f: &PrimeField) -> Polynomial {
        self.combine(other, f, true)
    }

    fn combine(&self, other: &Polynomial, f: &PrimeField, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let g = |c: u32| if negate { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), g(b[j].1)));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = f.add(a[i].1, g(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), g(*c))));
        Polynomial { terms: out }
    }

    pub fn neg(&self, f: &PrimeField) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect() }
    }

    pub fn scale(&self, c: u32, f: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, d)| (m.clone(), f.mul(*d, c))).collect() }
    }

    /// Multiplication by `c * mon`; order is preserved by monomial multiplication.
    pub fn mul_term(&self, mon: &Monomial, c: u32, f: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, d)| (m.mul(mon), f.mul(*d, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, f: &PrimeField) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, *c, f);
        }
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = acc.entry(m1.mul(m2)).or_insert(0);
                *e = f.add(*e, f.mul(*c1, *c2));
            }
        }
        Polynomial { terms: acc.into_iter().rev().filter(|(_, c)| *c != 0).collect() }
    }

    /// Coefficient of `mon`, zero if absent.
    pub fn coefficient(&self, mon: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(m, _)| mon.cmp(m))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Printable view using the ring's variable names.
    pub fn display<'a>(&'a self, ring: &'a Ring) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ring }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    ring: &'a Ring,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        for (idx, (m, c)) in self.poly.terms.iter().enumerate() {
            let s = field.to_signed(*c);
            let mag = s.unsigned_abs();
            if idx == 0 {
                if s < 0 {
                    f.write_str("-")?;
                }
            } else if s < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut first = true;
            if mag != 1 || m.is_one() {
                write!(f, "{}", mag)?;
                first = false;
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&self.ring.var_name(v))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x1y1() -> (Ring, Polynomial, Polynomial) {
        let r = Ring::standard(1, 1);
        (r, Polynomial::monomial(r.x(0)), Polynomial::monomial(r.y(0)))
    }

    #[test]
    fn product_adds_bidegrees() {
        let (r, x, y) = x1y1();
        let f = r.field();
        let p = x.mul(&y, f).mul(&x, f);
        assert_eq!(p.bidegree(), Some(BiDegree::new(2, 1)));
        assert_eq!(p.display(&r).to_string(), "x1^2*y1");
        assert_eq!(p.mul(&Polynomial::one(&r), f), p);
    }

    #[test]
    fn difference_of_squares() {
        let (r, x, y) = x1y1();
        let f = r.field();
        let p = x.add(&y, f).mul(&x.sub(&y, f), f);
        let expected = x.mul(&x, f).sub(&y.mul(&y, f), f);
        assert_eq!(p, expected);
        assert_eq!(p.display(&r).to_string(), "x1^2 - y1^2");
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let (r, x, _) = x1y1();
        let f = r.field();
        assert!(x.sub(&x, f).is_zero());
        let q = Polynomial::from_terms(f, [(r.x(0), 5), (r.x(0), 31998)]);
        assert!(q.is_zero());
        assert!(!x.add(&Polynomial::one(&r), f).is_bihomogeneous());
    }

    #[test]
    fn display_signs_and_constants() {
        let r = Ring::standard(2, 2);
        let f = r.field();
        let p = Polynomial::from_terms(
            f,
            [
                (r.monomial(&[2, 0], &[0, 1]), 3),
                (r.monomial(&[0, 1], &[1, 0]), f.from_i64(-1)),
            ],
        );
        assert_eq!(p.display(&r).to_string(), "3*x1^2*y2 - x2*y1");
        assert_eq!(Polynomial::constant(&r, f.from_i64(-2)).display(&r).to_string(), "-2");
    }
}
