//! Milnor invariants of a four-strand normal form as exact polynomials in
//! its twelve exponents.
//!
//! Every invariant of length at most 4 is a polynomial of total degree at
//! most 3 in the exponents. Coefficients in the binomial basis
//! `∏ C(a_v, k_v)` are recovered once by finite differences over the
//! stacking route on the grid of exponent vectors with entries summing to 3.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use once_cell::race::OnceBox;

use crate::hlink::{h4_realize, H4NormalForm, A1234, A1324, H4_PAIRS, H4_TRIPLES};
use crate::int::Int;

/// One product `coeff · ∏ C(a_v, k_v)`.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub coeff: i64,
    pub factors: Vec<(u8, u8)>,
}

pub(crate) struct MilnorTable {
    /// Index sequences of length 2..=4 over 1..=4.
    pub keys: Vec<Vec<u8>>,
    pub polys: Vec<Vec<Term>>,
    index: [u8; 625],
}

pub(crate) const NO_KEY: u8 = u8::MAX;

fn key_code(key: &[u8]) -> usize {
    key.iter().fold(0usize, |acc, &i| acc * 5 + i as usize)
}

fn all_keys() -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for len in 2..=4usize {
        let mut cur = Vec::new();
        push_sequences(len, &mut cur, &mut out);
    }
    out
}

fn push_sequences(len: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for i in 1..=4u8 {
        if !cur.contains(&i) {
            cur.push(i);
            push_sequences(len, cur, out);
            cur.pop();
        }
    }
}

/// Exponent vectors with nonnegative entries summing to at most 3.
fn grid() -> Vec<[u8; 12]> {
    let mut out = Vec::new();
    let mut cur = [0u8; 12];
    fill_grid(0, 3, &mut cur, &mut out);
    out
}

fn fill_grid(v: usize, budget: u8, cur: &mut [u8; 12], out: &mut Vec<[u8; 12]>) {
    if v == 12 {
        out.push(*cur);
        return;
    }
    for k in 0..=budget {
        cur[v] = k;
        fill_grid(v + 1, budget - k, cur, out);
    }
    cur[v] = 0;
}

fn binom_small(n: u8, k: u8) -> i64 {
    let mut r = 1i64;
    for t in 0..k {
        r = r * (n - t) as i64 / (t + 1) as i64;
    }
    r
}

impl MilnorTable {
    fn build() -> MilnorTable {
        let keys = all_keys();
        let mut index = [NO_KEY; 625];
        for (t, k) in keys.iter().enumerate() {
            index[key_code(k)] = t as u8;
        }
        let points = grid();
        let position = |p: &[u8; 12]| points.binary_search(p).ok();
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        let values: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                let nf = H4NormalForm {
                    a: p.map(BigInt::from),
                };
                let mu = h4_realize(&nf).expect("grid point").milnor();
                keys.iter().map(|k| mu.get(k)).collect()
            })
            .collect();
        let mut polys: Vec<Vec<Term>> = alloc::vec![Vec::new(); keys.len()];
        for s in &points {
            // forward difference Δ^s f(0) = Σ_{u ≤ s} ∏ (-1)^{s-u} C(s, u) f(u)
            let mut coeffs: Vec<BigInt> = alloc::vec![BigInt::zero(); keys.len()];
            let mut u = [0u8; 12];
            loop {
                let mut w = 1i64;
                for v in 0..12 {
                    w *= binom_small(s[v], u[v]);
                    if (s[v] - u[v]) % 2 == 1 {
                        w = -w;
                    }
                }
                let f = &values[position(&u).expect("sub-grid point")];
                for (c, fv) in coeffs.iter_mut().zip(f) {
                    *c += fv * w;
                }
                // next u ≤ s in mixed radix
                let mut v = 0;
                while v < 12 {
                    if u[v] < s[v] {
                        u[v] += 1;
                        break;
                    }
                    u[v] = 0;
                    v += 1;
                }
                if v == 12 {
                    break;
                }
            }
            let factors: Vec<(u8, u8)> = (0..12)
                .filter(|&v| s[v] > 0)
                .map(|v| (v as u8, s[v]))
                .collect();
            for (t, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    polys[t].push(Term {
                        coeff: c.to_i64().expect("small coefficient"),
                        factors: factors.clone(),
                    });
                }
            }
        }
        let table = MilnorTable { keys, polys, index };
        table.check_triangular();
        table
    }

    /// Own-variable coefficients used when inverting: pairs +1, triples -1,
    /// `x_1234` and `x_1324` +1, with no cross-dependence among the top layer.
    fn check_triangular(&self) {
        let linear = |key: &[u8], var: usize| -> i64 {
            self.polys[self.index(key).expect("key")]
                .iter()
                .filter(|t| t.factors.as_slice() == [(var as u8, 1)])
                .map(|t| t.coeff)
                .sum()
        };
        for (v, &(i, j)) in H4_PAIRS.iter().enumerate() {
            assert_eq!(linear(&[i, j], v), 1);
        }
        for (s, &(i, j, k)) in H4_TRIPLES.iter().enumerate() {
            assert_eq!(linear(&[i, j, k], 6 + s), -1);
        }
        assert_eq!(linear(&[1, 2, 3, 4], A1234), 1);
        assert_eq!(linear(&[1, 3, 2, 4], A1324), 1);
        assert_eq!(linear(&[1, 2, 3, 4], A1324), 0);
        assert_eq!(linear(&[1, 3, 2, 4], A1234), 0);
        // triples never depend on the top layer or on other triples
        for (s, &(i, j, k)) in H4_TRIPLES.iter().enumerate() {
            let p = &self.polys[self.index(&[i, j, k]).unwrap()];
            let own = [(6 + s as u8, 1u8)];
            assert!(p
                .iter()
                .all(|t| t.factors.iter().all(|&(v, _)| v < 6) || t.factors.as_slice() == own));
        }
    }

    pub fn index(&self, key: &[u8]) -> Option<usize> {
        let t = self.index[key_code(key)];
        (t != NO_KEY).then_some(t as usize)
    }

    /// Evaluates one invariant; `bin[v][k-1] = C(a_v, k)`.
    pub fn eval<T: Int>(&self, t: usize, bin: &[[T; 3]; 12]) -> T {
        let mut acc = T::zero();
        'terms: for term in &self.polys[t] {
            let mut prod = T::from_i64(term.coeff).expect("coefficient");
            for &(v, k) in &term.factors {
                let b = &bin[v as usize][k as usize - 1];
                if b.is_zero() {
                    continue 'terms;
                }
                prod = prod * b.clone();
            }
            acc = acc + prod;
        }
        acc
    }
}

/// `C(a, 1..=3)` for each exponent.
pub(crate) fn binomials<T: Int>(a: &[T; 12]) -> [[T; 3]; 12] {
    core::array::from_fn(|v| {
        let x = a[v].clone();
        let one = T::one();
        let two = T::from_i64(2).unwrap();
        let c2 = x.clone() * (x.clone() - one.clone()) / two.clone();
        let c3 = c2.clone() * (x.clone() - two) / T::from_i64(3).unwrap();
        [x, c2, c3]
    })
}

static TABLE: OnceBox<MilnorTable> = OnceBox::new();

pub(crate) fn milnor_table() -> &'static MilnorTable {
    TABLE.get_or_init(|| Box::new(MilnorTable::build()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlink::H4NormalForm;

    #[test]
    fn table_reproduces_stacking_off_grid() {
        let table = milnor_table();
        assert_eq!(table.keys.len(), 60);
        let samples = [
            [2i64, -1, 3, 1, -2, 2, 1, -3, 2, 1, 4, -1],
            [-3, 2, 1, -2, 3, -1, 2, 1, -1, 3, -2, 5],
            [5, 0, -4, 0, 2, 0, 0, 7, 0, -2, 0, 1],
        ];
        for s in samples {
            let nf = H4NormalForm::from_i64(s);
            let mu = h4_realize(&nf).unwrap().milnor();
            let a: [BigInt; 12] = s.map(BigInt::from);
            let bin = binomials(&a);
            for (t, key) in table.keys.iter().enumerate() {
                assert_eq!(table.eval(t, &bin), mu.get(key), "key {:?} at {:?}", key, s);
            }
        }
    }
}
