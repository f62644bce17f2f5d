use std::sync::Arc;

use brandt_core::brandt::{AlgebraElement, BrandtContext, Triple};
use brandt_core::cyclotomic::{CycloNum, FieldContext, Rational};
use brandt_core::exactla::Matrix;
use brandt_core::groups::{cyclic, s3};
use num_bigint::BigInt;
use proptest::prelude::*;

fn field_order() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![1usize, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn cyclo(ctx: Arc<FieldContext>) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec(rational(), ctx.degree())
        .prop_map(move |c| CycloNum::from_coeffs(&ctx, c))
}

fn field_and_values(k: usize) -> impl Strategy<Value = (Arc<FieldContext>, Vec<CycloNum>)> {
    field_order().prop_flat_map(move |n| {
        let ctx = FieldContext::new(n);
        (Just(ctx.clone()), prop::collection::vec(cyclo(ctx), k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn nonzero_values_invert((_ctx, v) in field_and_values(1)) {
        let x = &v[0];
        prop_assume!(!x.is_zero());
        let inv = x.inverse().unwrap();
        prop_assert!((x * &inv).is_one());
    }
}

proptest! {
    #[test]
    fn conjugation_is_a_ring_homomorphism((_ctx, v) in field_and_values(2)) {
        let (x, y) = (&v[0], &v[1]);
        prop_assert_eq!((x * y).conjugate(), x.conjugate() * y.conjugate());
        prop_assert_eq!((x + y).conjugate(), x.conjugate() + y.conjugate());
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
    }

    #[test]
    fn literals_round_trip((ctx, v) in field_and_values(1)) {
        let s = v[0].to_string();
        prop_assert_eq!(CycloNum::parse(&ctx, &s).unwrap(), v[0].clone());
    }

    #[test]
    fn rref_is_idempotent((ctx, v) in field_and_values(12)) {
        let m = Matrix::from_rows(&ctx, 4, v.chunks(4).map(<[CycloNum]>::to_vec).collect());
        let (r, p) = m.row_reduce();
        let (r2, p2) = r.row_reduce();
        prop_assert_eq!(p, p2);
        prop_assert_eq!(format!("{r:?}"), format!("{r2:?}"));
    }
}

fn sparse_element(ctx: Arc<BrandtContext>) -> impl Strategy<Value = AlgebraElement> {
    let dim = ctx.dim();
    let field = ctx.field().clone();
    prop::collection::vec((0..dim, cyclo(field)), 0..5).prop_map(move |terms| {
        AlgebraElement::from_terms(&ctx, terms.into_iter().map(|(k, c)| (ctx.triple(k), c)))
    })
}

fn brandt_instance() -> impl Strategy<Value = Arc<BrandtContext>> {
    (0usize..3, 1usize..=3).prop_map(|(g, n)| {
        let g = match g {
            0 => cyclic(3),
            1 => cyclic(4),
            _ => s3(),
        };
        let field = FieldContext::new(g.exponent());
        BrandtContext::new(g, n, field)
    })
}

fn three_elements() -> impl Strategy<Value = [AlgebraElement; 3]> {
    brandt_instance().prop_flat_map(|ctx| {
        (
            sparse_element(ctx.clone()),
            sparse_element(ctx.clone()),
            sparse_element(ctx),
        )
            .prop_map(|(a, b, c)| [a, b, c])
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative([x, y, z] in three_elements()) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes([x, y, z] in three_elements()) {
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hamming_is_a_metric([x, y, z] in three_elements()) {
        let d = |a: &AlgebraElement, b: &AlgebraElement| a.hamming(b).unwrap();
        prop_assert_eq!(d(&x, &x), 0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        prop_assert_eq!(d(&x, &y) == 0, x == y);
        prop_assert_eq!(d(&x, &AlgebraElement::zero(x.context())), x.weight());
    }

    #[test]
    fn element_literals_round_trip([x, _y, _z] in three_elements()) {
        let s = x.to_string();
        prop_assert_eq!(AlgebraElement::parse(x.context(), &s).unwrap(), x);
    }

    #[test]
    fn identity_is_neutral([x, _y, _z] in three_elements()) {
        let one = AlgebraElement::identity(x.context());
        prop_assert_eq!(one.mul(&x).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&one).unwrap(), x);
    }
}

#[test]
fn basis_products_follow_the_sandwich_rule() {
    let ctx = BrandtContext::new(s3(), 2, FieldContext::new(6));
    let g = ctx.group().clone();
    for a in ctx.basis() {
        for b in ctx.basis() {
            let expected = (a.j == b.i).then(|| Triple::new(a.i, g.mul(a.g, b.g), b.j));
            assert_eq!(ctx.mul_basis(a, b), expected);
        }
    }
}
