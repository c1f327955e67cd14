//! Property tests for structural invariants: every monomial is accounted
//! for by basis plus relations, normal forms are idempotent, multiplication
//! respects the grading, the character ring decomposes exactly, and the
//! affine reflections satisfy their Coxeter relations.

use std::sync::LazyLock;

use abg_core::charring::{self, SymLaurent};
use abg_core::magma::{component_size, enumerate};
use abg_core::weyl::AffineWeight;
use abg_core::{AlgElement, Algebra, AlgebraConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

/// One shared algebra per generator count so components are built once.
static ALGEBRAS: LazyLock<Vec<Algebra>> = LazyLock::new(|| {
    (1..=3).map(|d| Algebra::new(d, AlgebraConfig::default())).collect()
});

fn algebra(d: u32) -> &'static Algebra {
    &ALGEBRAS[d as usize - 1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_and_relations_account_for_every_monomial(d in 1u32..=3, n in 1u32..=4) {
        let comp = algebra(d).component(n).unwrap();
        prop_assert_eq!((comp.dim() + comp.relation_rank()) as u128, component_size(d, n));
    }

    #[test]
    fn normal_forms_are_idempotent(
        d in 1u32..=3,
        n in 1u32..=4,
        pick in any::<prop::sample::Index>(),
    ) {
        let comp = algebra(d).component(n).unwrap();
        let monos = enumerate(d, n);
        let m = monos[pick.index(monos.len())];
        for (pos, _) in comp.reduce_monomial(&m) {
            let basis_monomial = comp.basis_monomial(pos);
            let again = comp.reduce_monomial(&basis_monomial);
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(again[0].0, pos);
            prop_assert!(again[0].1.is_one());
        }
    }

    #[test]
    fn multiplication_respects_the_grading(
        d in 1u32..=3,
        p in 1u32..=3,
        q in 1u32..=2,
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let alg = algebra(d);
        let x = AlgElement::basis(p, i.index(alg.dim(p).unwrap()) as u32);
        let y = AlgElement::basis(q, j.index(alg.dim(q).unwrap()) as u32);
        let product = alg.multiply(&x, &y).unwrap();
        prop_assert_eq!(product.degree, p + q);
    }

    #[test]
    fn commutators_are_antisymmetric(
        d in 1u32..=3,
        p in 1u32..=2,
        q in 1u32..=2,
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let alg = algebra(d);
        let x = AlgElement::basis(p, i.index(alg.dim(p).unwrap()) as u32);
        let y = AlgElement::basis(q, j.index(alg.dim(q).unwrap()) as u32);
        let xy = alg.commutator(&x, &y).unwrap();
        let yx = alg.commutator(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());
    }

    #[test]
    fn tensor_products_decompose_exactly(
        p1 in 0i64..=3, q1 in 0i64..=3,
        p2 in 0i64..=3, q2 in 0i64..=3,
    ) {
        prop_assume!(charring::is_dominant((p1, q1)));
        prop_assume!(charring::is_dominant((p2, q2)));
        let a = charring::ch_irr((p1, q1));
        let b = charring::ch_irr((p2, q2));
        let product = a.mul(&b);
        let parts = charring::decompose(&product).unwrap();
        // multiplicities are positive, dimensions add up, and the sum of
        // irreducibles rebuilds the product term by term
        let mut rebuilt = SymLaurent::zero();
        let mut total = BigInt::from(0);
        for ((p, q), mult) in &parts {
            prop_assert!(*mult > BigInt::from(0));
            total += mult * BigInt::from(charring::weyl_dim((*p, *q)));
            rebuilt = rebuilt.add(&charring::ch_irr((*p, *q)).scale(mult));
        }
        prop_assert_eq!(total, a.dim() * b.dim());
        prop_assert_eq!(rebuilt, product);
    }

    #[test]
    fn non_dominant_leading_terms_are_rejected(p in 0i64..=3, q in 0i64..=3) {
        prop_assume!(charring::is_dominant((p, q)));
        prop_assume!((p, q) != (0, 0));
        // drop one extreme weight from a genuine character: no longer a
        // nonnegative combination of irreducibles
        let chi = charring::ch_irr((p, q));
        let mut broken = chi.as_ref().clone();
        let lowest = *broken.0.keys().next().unwrap();
        broken.0.remove(&lowest);
        prop_assert!(charring::decompose(&broken).is_err() ||
            charring::decompose(&broken).unwrap().iter().any(|(_, m)| *m < BigInt::from(0)));
    }

    #[test]
    fn affine_reflections_are_involutions(
        c0 in -6i64..=6, c1 in -6i64..=6, c2 in -6i64..=6,
        i in 0usize..3,
    ) {
        let w = AffineWeight([c0, c1, c2]);
        prop_assert_eq!(w.reflect(i).reflect(i), w);
    }

    #[test]
    fn affine_braid_relations_hold(
        c0 in -6i64..=6, c1 in -6i64..=6, c2 in -6i64..=6,
        i in 0usize..3, j in 0usize..3,
    ) {
        prop_assume!(i != j);
        let w = AffineWeight([c0, c1, c2]);
        let mut u = w;
        for step in 0..6 {
            u = u.reflect(if step % 2 == 0 { i } else { j });
        }
        prop_assert_eq!(u, w, "(r{} r{})^3 must be the identity", i, j);
    }

    #[test]
    fn scaling_is_linear_in_the_quotient(
        d in 1u32..=3,
        n in 1u32..=3,
        i in any::<prop::sample::Index>(),
        c in -5i64..=5,
    ) {
        let alg = algebra(d);
        let x = AlgElement::basis(n, i.index(alg.dim(n).unwrap()) as u32);
        let g = AlgElement::basis(1, 0);
        let scale = BigRational::from_integer(c.into());
        let left = alg.multiply(&x.scale(&scale), &g).unwrap();
        let right = alg.multiply(&x, &g).unwrap().scale(&scale);
        prop_assert_eq!(left.coords, right.coords);
    }
}
