//! Relabeling and orientation reversal of four-strand normal forms.
//!
//! Both operations change the string link but not the closed link up to
//! relabeling: a swap of adjacent strands is conjugation by a crossing, and
//! reversing the last strand replaces `T = T' φ(w)` by `T' φ(w)^-1`, where
//! `T'` is `T` with the last strand made trivial.

use alloc::boxed::Box;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::h4::{basis_expr, h4_multiply, multiply_exponents, H4NormalForm, H4_PAIRS};
use crate::int::{small, Int};
use once_cell::race::OnceBox;

use super::tuple::Pair;
use crate::rf::GroupModel;
use crate::{Error, Result};

fn single(t: usize, e: BigInt) -> H4NormalForm {
    let mut nf = H4NormalForm::zero();
    nf.a[t] = e;
    nf
}

fn zeros<T: Int>() -> [T; 12] {
    core::array::from_fn(|_| T::zero())
}

fn inverse_exponents<T: Int>(x: &[T; 12]) -> [T; 12] {
    let mut acc = zeros();
    for t in (0..12).rev() {
        if !x[t].is_zero() {
            let mut s = zeros::<T>();
            s[t] = -x[t].clone();
            acc = multiply_exponents(&acc, &s);
        }
    }
    acc
}

fn pow_exponents<T: Int>(x: &[T; 12], e: &T) -> [T; 12] {
    let mut base = if e.is_negative() {
        inverse_exponents(x)
    } else {
        x.clone()
    };
    let mut k = e.abs();
    let mut acc = zeros();
    while !k.is_zero() {
        if k.is_even() {
            base = multiply_exponents(&base, &base);
            k = k / small(2);
        } else {
            acc = multiply_exponents(&acc, &base);
            k = k - T::one();
        }
    }
    acc
}

/// Group inverse of a normal form.
pub fn h4_inverse(x: &H4NormalForm) -> H4NormalForm {
    H4NormalForm {
        a: inverse_exponents(&x.a),
    }
}

/// `x^e` by repeated squaring.
pub fn h4_pow(x: &H4NormalForm, e: &BigInt) -> H4NormalForm {
    H4NormalForm {
        a: pow_exponents(&x.a, e),
    }
}

struct Images([H4NormalForm; 6]);

impl GroupModel<Pair> for Images {
    type Value = H4NormalForm;

    fn identity(&mut self) -> Result<H4NormalForm> {
        Ok(H4NormalForm::zero())
    }

    fn generator_power(&mut self, g: Pair, e: i64) -> Result<H4NormalForm> {
        let v = H4_PAIRS
            .iter()
            .position(|&(i, j)| (i, j) == (g.0, g.1))
            .ok_or(Error::BadPair {
                i: g.0 as usize,
                j: g.1 as usize,
                n: 4,
            })?;
        Ok(h4_pow(&self.0[v], &BigInt::from(e)))
    }

    fn mul(&mut self, a: &H4NormalForm, b: &H4NormalForm) -> Result<H4NormalForm> {
        Ok(h4_multiply(a, b))
    }

    fn inverse(&mut self, a: &H4NormalForm) -> Result<H4NormalForm> {
        Ok(h4_inverse(a))
    }
}

fn pair_index(i: u8, j: u8) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    H4_PAIRS.iter().position(|&p| p == (i, j)).expect("pair")
}

/// Images of the basis elements under each adjacent swap.
static SWAP_IMAGES: OnceBox<[[[i64; 12]; 12]; 3]> = OnceBox::new();

fn swap_images(i: usize) -> &'static [[i64; 12]; 12] {
    let all = SWAP_IMAGES.get_or_init(|| {
        Box::new(core::array::from_fn(|k| {
            let i = k as u8 + 1;
            let g = single(pair_index(i, i + 1), BigInt::from(1));
            let g_inv = h4_inverse(&g);
            let pairs: [H4NormalForm; 6] = core::array::from_fn(|v| {
                let (a, b) = H4_PAIRS[v];
                let other = |k: u8| if a == k { b } else { a };
                if (a, b) == (i, i + 1) {
                    g.clone()
                } else if a == i || b == i {
                    let moved = single(pair_index(i + 1, other(i)), BigInt::from(1));
                    h4_multiply(&h4_multiply(&g, &moved), &g_inv)
                } else if a == i + 1 || b == i + 1 {
                    single(pair_index(i, other(i + 1)), BigInt::from(1))
                } else {
                    single(v, BigInt::from(1))
                }
            });
            let mut model = Images(pairs);
            core::array::from_fn(|t| {
                let img = basis_expr(t)
                    .evaluate(&mut model)
                    .expect("basis elements evaluate");
                core::array::from_fn(|s| img.a[s].to_i64().expect("small image"))
            })
        }))
    });
    &all[i - 1]
}

/// [`h4_swap`] on exponent vectors, for `i` in `1..=3`.
pub(crate) fn swap_exponents<T: Int>(a: &[T; 12], i: usize) -> [T; 12] {
    let images = swap_images(i);
    let mut acc = zeros();
    for t in 0..12 {
        if !a[t].is_zero() {
            let img: [T; 12] = core::array::from_fn(|s| small(images[t][s]));
            acc = multiply_exponents(&acc, &pow_exponents(&img, &a[t]));
        }
    }
    acc
}

/// [`h4_reverse_last`] on exponent vectors.
pub(crate) fn reverse_last_exponents<T: Int>(a: &[T; 12]) -> [T; 12] {
    let mut rest = zeros::<T>();
    // x12, x13, x23 and x123 avoid strand 4
    for t in [0, 1, 3, 6] {
        rest[t] = a[t].clone();
    }
    multiply_exponents(&multiply_exponents(&rest, &inverse_exponents(a)), &rest)
}

/// Conjugation by the crossing of strands `i` and `i + 1`; the strands
/// trade places.
pub fn h4_swap(nf: &H4NormalForm, i: usize) -> Result<H4NormalForm> {
    if !(1..=3).contains(&i) {
        return Err(Error::BadPosition {
            position: i,
            len: 4,
        });
    }
    Ok(H4NormalForm {
        a: swap_exponents(&nf.a, i),
    })
}

/// Reverses the orientation of strand 4.
pub fn h4_reverse_last(nf: &H4NormalForm) -> H4NormalForm {
    H4NormalForm {
        a: reverse_last_exponents(&nf.a),
    }
}

/// Reverses strand `c` by moving it to the last position, reversing, and
/// moving it back.
pub fn h4_reverse(nf: &H4NormalForm, c: usize) -> Result<H4NormalForm> {
    if !(1..=4).contains(&c) {
        return Err(Error::BadComponent { k: c, n: 4 });
    }
    let mut x = nf.clone();
    for i in c..4 {
        x = h4_swap(&x, i)?;
    }
    x = h4_reverse_last(&x);
    for i in (c..4).rev() {
        x = h4_swap(&x, i)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlink::{h4_normalize, h4_realize};

    fn samples() -> [H4NormalForm; 3] {
        [
            H4NormalForm::from_i64([1, -1, 2, 0, 1, 1, 2, -1, 1, 3, 1, -2]),
            H4NormalForm::from_i64([0, 2, 0, 1, -1, 0, 1, 1, -2, 0, 3, 1]),
            H4NormalForm::from_i64([-2, 0, 1, 3, 0, -1, 0, 2, 1, -1, -4, 2]),
        ]
    }

    fn conj(g: &H4NormalForm, t: &H4NormalForm) -> H4NormalForm {
        h4_multiply(&h4_multiply(g, t), &h4_inverse(g))
    }

    #[test]
    fn inverse_and_power_match_tuples() {
        for s in samples() {
            let t = h4_realize(&s).unwrap();
            assert_eq!(h4_inverse(&s), h4_normalize(&t.invert().unwrap()).unwrap());
            assert_eq!(
                h4_pow(&s, &BigInt::from(-3)),
                h4_normalize(&t.pow(-3).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn swaps_are_automorphisms() {
        let s = samples();
        for i in 1..=3 {
            for (x, y) in [(&s[0], &s[1]), (&s[1], &s[2]), (&s[2], &s[0])] {
                let lhs = h4_swap(&h4_multiply(x, y), i).unwrap();
                let rhs = h4_multiply(&h4_swap(x, i).unwrap(), &h4_swap(y, i).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn swap_squared_is_conjugation_by_the_clasp() {
        for i in 1..=3usize {
            let g = single(pair_index(i as u8, i as u8 + 1), BigInt::from(1));
            for s in samples() {
                let twice = h4_swap(&h4_swap(&s, i).unwrap(), i).unwrap();
                assert_eq!(twice, conj(&g, &s));
            }
        }
    }

    #[test]
    fn swaps_satisfy_braid_relations() {
        for s in samples() {
            let w = |x: &H4NormalForm, seq: &[usize]| {
                seq.iter()
                    .fold(x.clone(), |acc, &i| h4_swap(&acc, i).unwrap())
            };
            assert_eq!(w(&s, &[1, 2, 1]), w(&s, &[2, 1, 2]));
            assert_eq!(w(&s, &[2, 3, 2]), w(&s, &[3, 2, 3]));
            assert_eq!(w(&s, &[1, 3]), w(&s, &[3, 1]));
        }
    }

    #[test]
    fn swap_relabels_linking_and_triples() {
        for s in samples() {
            let t = h4_realize(&s).unwrap().milnor();
            let u = h4_realize(&h4_swap(&s, 2).unwrap()).unwrap().milnor();
            let tau = |k: u8| match k {
                2 => 3,
                3 => 2,
                k => k,
            };
            for i in 1..=4u8 {
                for j in 1..=4u8 {
                    if i != j {
                        assert_eq!(u.get(&[tau(i), tau(j)]), t.get(&[i, j]));
                    }
                }
            }
        }
        let x123 = H4NormalForm::zero().with("123", 1);
        let swapped = h4_swap(&x123, 3).unwrap();
        assert_eq!(
            h4_realize(&swapped).unwrap().milnor().get(&[1, 2, 4]),
            BigInt::from(-1)
        );
    }

    #[test]
    fn reversal_is_an_involution_negating_linking() {
        for s in samples() {
            let r = h4_reverse_last(&s);
            assert_eq!(h4_reverse_last(&r), s);
            for (v, &(_, j)) in H4_PAIRS.iter().enumerate() {
                let expected = if j == 4 { -&s.a[v] } else { s.a[v].clone() };
                assert_eq!(r.a[v], expected);
            }
            for c in 1..=4 {
                let r = h4_reverse(&s, c).unwrap();
                for (v, &(i, j)) in H4_PAIRS.iter().enumerate() {
                    let flip = i as usize == c || j as usize == c;
                    assert_eq!(r.a[v], if flip { -&s.a[v] } else { s.a[v].clone() });
                }
            }
        }
    }

    #[test]
    fn reversing_a_brunnian_strand_negates_it() {
        let x123 = H4NormalForm::zero().with("123", 2);
        let r = h4_reverse(&x123, 3).unwrap();
        assert_eq!(r.a[..10], H4NormalForm::zero().with("123", -2).a[..10]);
    }
}
