#![allow(dead_code)]

use catalan_ff::ffield::{make_curve, CurveRef};
use catalan_ff::{make_field, Elem, FieldRef, Polynomial, RingElement};
use rand::Rng;

pub fn field(ell: u64, a: u32) -> FieldRef {
    make_field(ell, a).unwrap()
}

pub fn rational(ell: u64, a: u32) -> CurveRef {
    let k = field(ell, a);
    make_curve(&k, 1, Polynomial::var(&k)).unwrap()
}

/// y^2 = x^3 + x + 1 over F_5.
pub fn genus_one_f5() -> CurveRef {
    let k = field(5, 1);
    make_curve(&k, 2, Polynomial::from_ints(&k, &[1, 1, 0, 1])).unwrap()
}

/// y^2 = x^3 + 2x + 1 over F_3.
pub fn genus_one_f3() -> CurveRef {
    let k = field(3, 1);
    make_curve(&k, 2, Polynomial::from_ints(&k, &[1, 2, 0, 1])).unwrap()
}

/// y^2 = x^5 + x + 1 over F_5.
pub fn genus_two_f5() -> CurveRef {
    let k = field(5, 1);
    make_curve(&k, 2, Polynomial::from_ints(&k, &[1, 1, 0, 0, 0, 1])).unwrap()
}

/// y^3 = x^4 + 1 over F_7.
pub fn trigonal_f7() -> CurveRef {
    let k = field(7, 1);
    make_curve(&k, 3, Polynomial::from_ints(&k, &[1, 0, 0, 0, 1])).unwrap()
}

pub fn random_poly<R: Rng>(rng: &mut R, k: &FieldRef, max_deg: usize) -> Polynomial {
    let len = rng.gen_range(0..=max_deg + 1);
    let coeffs = (0..len)
        .map(|_| k.element(rng.gen_range(0..k.order())))
        .collect();
    Polynomial::new(k.clone(), coeffs)
}

/// A random element with `x`-degree at most `max_deg` in every part.
pub fn random_element<R: Rng>(rng: &mut R, c: &CurveRef, max_deg: usize) -> RingElement {
    let parts = (0..c.e())
        .map(|_| random_poly(rng, c.field(), max_deg))
        .collect();
    RingElement::from_parts(c, parts).unwrap()
}

/// Affine points of `y^e = f(x)` over the field of `f`, by a double loop.
pub fn naive_affine_points(e: u32, f: &Polynomial) -> u64 {
    let k = f.field();
    let mut count = 0;
    for x in k.elements() {
        let v = f.eval(x);
        for y in k.elements() {
            if k.pow(y, e as u64) == v {
                count += 1;
            }
        }
    }
    count
}

pub fn elem(k: &FieldRef, n: i64) -> Elem {
    k.from_int(n)
}
