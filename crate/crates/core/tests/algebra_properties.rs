use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rcm_core::corpus::{random_module, RandomSizes};
use rcm_core::invariants::{cohomological_dimension, depth, dimension, grade};
use rcm_core::{
    free_resolution, BiDegree, BihomMatrix, Error, FreeModule, GroebnerBasis, Ideal, ModuleVector, Polynomial,
    PrimeField, Ring,
};

fn ring(p: u32, m: usize, n: usize) -> Ring {
    Ring::new(PrimeField::new(p).unwrap(), m, n).unwrap()
}

/// Random element of bidegree `d` with roughly half the monomials present.
fn homogeneous(r: &Ring, d: BiDegree, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = r.field().modulus();
    let mut terms = Vec::new();
    for m in r.monomials_of_bidegree(d) {
        if rng.next_u32().is_multiple_of(2) {
            terms.push((m, rng.next_u32() % p));
        }
    }
    Polynomial::from_terms(r.field(), terms)
}

/// Arbitrary (usually inhomogeneous) polynomial with exponents below 3.
fn arbitrary(r: &Ring, rng: &mut ChaCha8Rng) -> Polynomial {
    let p = r.field().modulus();
    let count = rng.next_u32() % 6;
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let d = BiDegree::new((rng.next_u32() % 3) as i32, (rng.next_u32() % 3) as i32);
            let mons = r.monomials_of_bidegree(d);
            let m = mons[rng.next_u32() as usize % mons.len()].clone();
            (m, rng.next_u32() % p)
        })
        .collect();
    Polynomial::from_terms(r.field(), terms)
}

fn no_zero_terms(p: &Polynomial) -> bool {
    p.terms().iter().all(|(_, c)| *c != 0)
}

/// A degree-compatible map into `target` with `cols` columns.
fn random_map(r: &Ring, target: &FreeModule, cols: usize, rng: &mut ChaCha8Rng) -> BihomMatrix {
    let top = target.twists().iter().fold(BiDegree::ZERO, |a, t| BiDegree::new(a.dx.max(t.dx), a.dy.max(t.dy)));
    let mut twists = Vec::new();
    let mut columns = Vec::new();
    for _ in 0..cols {
        let s = BiDegree::new(top.dx + (rng.next_u32() % 2) as i32, top.dy + (rng.next_u32() % 2) as i32);
        let entries = target
            .twists()
            .iter()
            .map(|t| homogeneous(r, BiDegree::new(s.dx - t.dx, s.dy - t.dy), rng))
            .collect();
        twists.push(s);
        columns.push(ModuleVector::from_entries(entries));
    }
    BihomMatrix::new(*r, FreeModule::new(twists), target.clone(), columns).unwrap()
}

fn primes() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7, 32003])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_add_bidegrees(seed in any::<u64>(), p in primes(), dx in 0i32..3, dy in 0i32..3, ex in 0i32..3, ey in 0i32..3) {
        let r = ring(p, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = homogeneous(&r, BiDegree::new(dx, dy), &mut rng);
        let b = homogeneous(&r, BiDegree::new(ex, ey), &mut rng);
        let prod = a.mul(&b, r.field());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(prod.bidegree(), Some(BiDegree::new(dx + ex, dy + ey)));
            prop_assert!(prod.is_bihomogeneous());
        }
    }

    #[test]
    fn operations_keep_canonical_form(seed in any::<u64>(), p in primes()) {
        let r = ring(p, 2, 1);
        let f = r.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = arbitrary(&r, &mut rng);
        let b = arbitrary(&r, &mut rng);
        let c = rng.next_u32() % p;
        for q in [a.add(&b, f), a.sub(&b, f), a.mul(&b, f), a.neg(f), a.scale(c, f), a.sub(&a, f)] {
            prop_assert!(no_zero_terms(&q));
        }
        prop_assert!(a.sub(&a, f).is_zero());
        prop_assert_eq!(a.add(&b, f), b.add(&a, f));
        prop_assert_eq!(a.mul(&b, f), b.mul(&a, f));
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>(), p in primes(), r0 in 1usize..3, r1 in 1usize..3, r2 in 1usize..3, r3 in 1usize..3) {
        let r = ring(p, 1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f0 = FreeModule::new((0..r0).map(|i| BiDegree::new(i as i32 % 2, 0)).collect());
        let a = random_map(&r, &f0, r1, &mut rng);
        let b = random_map(&r, a.source(), r2, &mut rng);
        let c = random_map(&r, b.source(), r3, &mut rng);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reduced_basis_is_order_independent(seed in any::<u64>(), shift in 0usize..5) {
        let r = ring(32003, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amb = FreeModule::untwisted(1);
        let gens: Vec<ModuleVector> = (0..4)
            .map(|_| {
                let d = BiDegree::new((rng.next_u32() % 3) as i32, (rng.next_u32() % 2) as i32);
                ModuleVector::from_entries(vec![homogeneous(&r, d, &mut rng)])
            })
            .filter(|v| !v.is_zero())
            .collect();
        let mut rotated = gens.clone();
        if !rotated.is_empty() {
            let k = shift % rotated.len();
            rotated.rotate_left(k);
            rotated.reverse();
        }
        let a = GroebnerBasis::new(&r, &amb, &gens);
        let b = GroebnerBasis::new(&r, &amb, &rotated);
        prop_assert!(a.is_groebner());
        prop_assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn combinations_of_generators_reduce_to_zero(seed in any::<u64>()) {
        let r = ring(7, 1, 2);
        let f = r.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amb = FreeModule::new(vec![BiDegree::ZERO, BiDegree::new(0, 1)]);
        let top = BiDegree::new(1, 2);
        let gens: Vec<ModuleVector> = (0..3)
            .map(|_| {
                ModuleVector::from_entries(vec![
                    homogeneous(&r, top, &mut rng),
                    homogeneous(&r, BiDegree::new(1, 1), &mut rng),
                ])
            })
            .filter(|v| !v.is_zero())
            .collect();
        let gb = GroebnerBasis::new(&r, &amb, &gens);
        let mut combo = ModuleVector::zero(2);
        let d = BiDegree::new((rng.next_u32() % 2) as i32, 1);
        for g in &gens {
            let c = homogeneous(&r, d, &mut rng);
            combo = combo.add(&g.mul_poly(&c, f), f);
        }
        prop_assert!(gb.contains(&combo));
        let outside = ModuleVector::from_entries(vec![Polynomial::one(&r), Polynomial::zero()]);
        let nf = gb.normal_form(&outside);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        prop_assert_eq!(gb.contains(&outside), nf.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_resolutions_are_minimal_and_exact(seed in any::<u64>(), m in 1usize..=2, n in 1usize..=2, relations in 1usize..=3) {
        let sizes = RandomSizes { m, n, relations, max_degree: BiDegree::new(2, 2) };
        let module = random_module(PrimeField::new(32003).unwrap(), seed, sizes).module;
        let res = free_resolution(&module).unwrap();
        prop_assert!(res.is_minimal());
        prop_assert!(res.is_exact());
        prop_assert!(res.length() <= m + n);
        match dimension(&module) {
            Ok(dim) => {
                let dp = depth(&module).unwrap();
                prop_assert!(dp <= dim);
                prop_assert_eq!(dp + res.length(), m + n);
                for which in [Ideal::P, Ideal::Q] {
                    let cd = cohomological_dimension(which, &module).unwrap();
                    prop_assert!(cd <= dim);
                    match grade(which, &module) {
                        Ok(g) => prop_assert!(g <= cd),
                        Err(Error::GradeInfinite) => {}
                        Err(e) => prop_assert!(false, "{}", e),
                    }
                }
            }
            Err(Error::ZeroModule) => prop_assert!(module.is_zero()),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
