use vsa_core::center::m0_hilbert;
use vsa_core::scalars::rat;
use vsa_core::susypoly::*;

fn u(i: u32) -> SuperPoly {
    SuperPoly::u(i)
}
fn v(j: u32) -> SuperPoly {
    SuperPoly::v(j)
}

#[test]
fn power_sums() {
    assert_eq!(power_sum(2, 2, 1), u(1).pow(2).add(&u(2).pow(2)).sub(&v(1).pow(2)));
    assert_eq!(power_sum(1, 1, 1), u(1).add(&v(1)));
    assert_eq!(power_sum(3, 1, 1), u(1).pow(3).add(&v(1).pow(3)));
    assert_eq!(power_sum(4, 2, 1).weight(), Some(4));
}

#[test]
fn supersymmetry_test() {
    assert!(is_supersymmetric(&u(1).add(&u(2)).add(&v(1)), 2, 1));
    assert!(!is_supersymmetric(&u(2).sub(&v(1)), 2, 1));
    assert!(is_supersymmetric(&u(1).add(&v(1)).mul(&u(2).add(&v(1))), 2, 1));
    // symmetric but the substitution leaves t behind
    assert!(!is_supersymmetric(&u(1).pow(2).add(&u(2).pow(2)).add(&v(1).pow(2)), 2, 1));
    for p in 1..=5 {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            assert!(is_supersymmetric(&power_sum(p, m, n), m, n));
        }
    }
}

#[test]
fn derivation_is_leibniz() {
    let f = u(1).mul(&v(1));
    let d = f.derive();
    let expected = SuperPoly::var(Var::U(1, 1)).mul(&v(1)).add(&u(1).mul(&SuperPoly::var(Var::V(1, 1))));
    assert_eq!(d, expected);
    assert_eq!(d.weight(), Some(3));
    assert!(d.has_derivatives());
}

#[test]
fn affine_hilbert_oracles() {
    assert_eq!(affine_hilbert(1, 1, 3), vec![1, 1, 3, 6]);
    assert_eq!(affine_hilbert(2, 1, 1), vec![1, 1]);
    assert_eq!(affine_hilbert(3, 2, 0), vec![1]);
    assert_eq!(affine_hilbert(1, 1, 5), m0_hilbert(5));
}

#[test]
fn span_is_closed_under_products_and_derivatives() {
    for w in 1..=3u32 {
        for f in affine_span(2, 1, w) {
            assert!(in_affine_span(&f.derive(), 2, 1));
            assert!(in_affine_span(&f.mul(&power_sum(1, 2, 1)), 2, 1));
        }
    }
    assert!(!in_affine_span(&u(1), 2, 1));
}

#[test]
fn scaling_and_zero() {
    let f = power_sum(2, 1, 1);
    assert!(f.sub(&f).is_zero());
    assert_eq!(f.scale(&rat(2)), f.add(&f));
}
