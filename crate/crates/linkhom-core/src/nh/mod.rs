//! Homotopy trivializing numbers: exact values for three and four strands,
//! bounds for more, and Delta-move bounds.

mod four;
mod table;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use four::{maximal_excess, nh_exact_4, nh_row_4, shortcut_prediction, Row};

use crate::hlink::{H4NormalForm, LongitudeTuple, MilnorVector};
use crate::{Error, Result};

/// Per-strand orientation signs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientationMask(Vec<i8>);

impl OrientationMask {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter(
                "orientation signs must be +1 or -1".into(),
            ));
        }
        Ok(OrientationMask(signs))
    }

    pub fn identity(n: usize) -> Self {
        OrientationMask(alloc::vec![1; n])
    }

    /// Reverses strand `c` alone.
    pub fn flip(n: usize, c: usize) -> Result<Self> {
        if c == 0 || c > n {
            return Err(Error::BadComponent { k: c, n });
        }
        let mut signs = alloc::vec![1; n];
        signs[c - 1] = -1;
        Ok(OrientationMask(signs))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sign(&self, c: u8) -> i8 {
        self.0[c as usize - 1]
    }
}

/// Reverses orientations: `μ(I)` changes sign once per reversed strand in `I`.
pub fn reorient(v: &MilnorVector, mask: &OrientationMask) -> Result<MilnorVector> {
    if mask.len() != v.n {
        return Err(Error::WrongComponentCount {
            expected: v.n,
            actual: mask.len(),
        });
    }
    let mut out = v.clone();
    for (key, value) in out.mu.iter_mut() {
        let sign: i8 = key.iter().map(|&c| mask.sign(c)).product();
        if sign < 0 {
            *value = -&*value;
        }
    }
    Ok(out)
}

/// `Λ`, the sum of absolute pairwise linking numbers.
pub fn lambda(v: &MilnorVector) -> BigInt {
    let n = v.n as u8;
    let mut total = BigInt::zero();
    for i in 1..=n {
        for j in i + 1..=n {
            total += v.get(&[i, j]).abs();
        }
    }
    total
}

/// `Λ₃`, the sum of absolute triple invariants `μ(ijk)`, `i < j < k`.
pub fn lambda3(v: &MilnorVector) -> BigInt {
    let n = v.n as u8;
    let mut total = BigInt::zero();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                total += v.get(&[i, j, k]).abs();
            }
        }
    }
    total
}

/// Number of unlinked pairs `(i, j)` with `j ≥ i + 2`.
pub fn q_count(v: &MilnorVector, n: usize) -> usize {
    let n = n as u8;
    (1..=n)
        .flat_map(|i| (i + 2..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| v.get(&[i, j]).is_zero())
        .count()
}

/// Membership of `a` in the ideal of `ℤ` generated by `gens`.
pub fn in_ideal(a: &BigInt, gens: &[BigInt]) -> bool {
    crate::int::in_ideal_generic(a, gens)
}

/// Homotopy trivializing number of a three-strand string link.
pub fn nh_exact_3(v: &MilnorVector) -> Result<BigInt> {
    if v.n != 3 {
        return Err(Error::WrongComponentCount {
            expected: 3,
            actual: v.n,
        });
    }
    let l = lambda(v);
    Ok(if !l.is_zero() {
        l
    } else if !v.get(&[1, 2, 3]).is_zero() {
        BigInt::from(2)
    } else {
        BigInt::zero()
    })
}

/// Invariants of the sublink on `comps` (increasing), renumbered `1..`.
pub fn sublink(v: &MilnorVector, comps: &[u8]) -> MilnorVector {
    let mut out = MilnorVector::new(comps.len());
    for (key, value) in &v.mu {
        let renamed: Option<Vec<u8>> = key
            .iter()
            .map(|c| comps.iter().position(|x| x == c).map(|p| p as u8 + 1))
            .collect();
        if let Some(k) = renamed {
            out.mu.insert(k, value.clone());
        }
    }
    out
}

/// Normal form of a four-strand string link with the given invariants.
///
/// Only the invariants `μ(ij)`, `μ(ijk)`, `μ(1234)`, `μ(1324)` and those
/// they determine are read.
pub fn h4_from_milnor(v: &MilnorVector) -> Result<H4NormalForm> {
    if v.n != 4 {
        return Err(Error::WrongComponentCount {
            expected: 4,
            actual: v.n,
        });
    }
    let table = table::milnor_table();
    let mu: Vec<BigInt> = table.keys.iter().map(|k| v.get(k)).collect();
    Ok(H4NormalForm {
        a: four::normal_form_from_mu(&mu),
    })
}

/// Every invariant of a four-strand normal form, without realizing it.
pub fn h4_to_milnor(nf: &H4NormalForm) -> MilnorVector {
    let table = table::milnor_table();
    let bin = table::binomials(&nf.a);
    let mut v = MilnorVector::new(4);
    for (t, key) in table.keys.iter().enumerate() {
        v.set(key, table.eval(t, &bin));
    }
    v
}

/// Lower and upper bounds with the reasoning behind each.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub lower: BigInt,
    /// `None` stands for infinity.
    pub upper: Option<BigInt>,
    pub exact: Option<BigInt>,
    pub lower_source: &'static str,
    pub upper_source: &'static str,
}

impl BoundReport {
    fn exact(value: BigInt, source: &'static str) -> Self {
        BoundReport {
            lower: value.clone(),
            upper: Some(value.clone()),
            exact: Some(value),
            lower_source: source,
            upper_source: source,
        }
    }
}

pub const SRC_LINKING: &str = "sum of absolute linking numbers";
pub const SRC_ORDERED_Q: &str =
    "linking sum plus twice the unlinked non-adjacent pairs, best ordering";
pub const SRC_DELETION: &str = "linking sum plus 2(n-2) when deleting one strand trivializes";
pub const SRC_TRIANGLES: &str = "every 3-strand sublink nontrivial: triangle-free complement count";
pub const SRC_FOUR_SUBLINKS: &str = "every 4-strand sublink needs 6: sublink covering count";
pub const SRC_EXACT_3: &str = "3-strand classification";
pub const SRC_EXACT_4: &str = "4-strand classification";
pub const SRC_TRIPLES: &str = "sum of absolute triple linking numbers";
pub const SRC_DELTA_UPPER: &str = "triple sum plus (2/3)(n-1)(n-2)(n-3)";
pub const SRC_DELTA_LINKED: &str = "Delta moves preserve linking numbers";

/// Smallest `Q` over all orderings of the strands.
///
/// Equivalently, the unlinked pairs minus the most unlinked pairs that an
/// ordering can place next to each other.
pub fn min_q_over_orderings(v: &MilnorVector) -> usize {
    let n = v.n;
    if n < 3 {
        return 0;
    }
    let zero = |i: usize, j: usize| v.get(&[i as u8 + 1, j as u8 + 1]).is_zero();
    let total = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| zero(i, j))
        .count();
    let full = (1usize << n) - 1;
    let mut best = alloc::vec![alloc::vec![-1i32; n]; 1 << n];
    for s in 0..n {
        best[1 << s][s] = 0;
    }
    for mask in 1..=full {
        for last in 0..n {
            let cur = best[mask][last];
            if cur < 0 {
                continue;
            }
            for next in 0..n {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let val = cur + zero(last, next) as i32;
                let slot = &mut best[mask | (1 << next)][next];
                if val > *slot {
                    *slot = val;
                }
            }
        }
    }
    let adjacent = best[full].iter().copied().max().unwrap_or(0) as usize;
    total - adjacent
}

fn combinations(n: u8, k: usize) -> Vec<Vec<u8>> {
    fn go(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Bounds on the homotopy trivializing number; exact for at most 4 strands.
pub fn nh_bounds(t: &LongitudeTuple) -> Result<BoundReport> {
    let v = t.milnor();
    let n = t.n();
    let l = lambda(&v);
    match n {
        1 => return Ok(BoundReport::exact(BigInt::zero(), SRC_LINKING)),
        2 => return Ok(BoundReport::exact(l, SRC_LINKING)),
        3 => return Ok(BoundReport::exact(nh_exact_3(&v)?, SRC_EXACT_3)),
        4 => {
            return Ok(BoundReport::exact(
                nh_exact_4(&h4_from_milnor(&v)?),
                SRC_EXACT_4,
            ))
        }
        _ => {}
    }

    let mut upper = &l + 2 * min_q_over_orderings(&v);
    let mut upper_source = SRC_ORDERED_Q;
    let deletion_trivial = (1..=n).any(|k| {
        t.delete_component(k)
            .map(|d| d.is_trivial())
            .unwrap_or(false)
    });
    if deletion_trivial {
        let candidate = &l + BigInt::from(2 * (n - 2));
        if candidate < upper {
            upper = candidate;
            upper_source = SRC_DELETION;
        }
    }

    let mut lower = l.clone();
    let mut lower_source = SRC_LINKING;
    if l.is_zero() {
        let n8 = n as u8;
        let triangles = combinations(n8, 3).iter().all(|c| {
            nh_exact_3(&sublink(&v, c))
                .map(|x| !x.is_zero())
                .unwrap_or(false)
        });
        if triangles {
            let candidate = BigInt::from(2 * ((n - 1) * (n - 1) / 4));
            if candidate > lower {
                lower = candidate;
                lower_source = SRC_TRIANGLES;
            }
        }
        let mut quads = true;
        for c in combinations(n8, 4) {
            if nh_exact_4(&h4_from_milnor(&sublink(&v, &c))?) != BigInt::from(6) {
                quads = false;
                break;
            }
        }
        if quads {
            let candidate = BigInt::from(2 * (n * (n - 2)).div_ceil(3));
            if candidate > lower {
                lower = candidate;
                lower_source = SRC_FOUR_SUBLINKS;
            }
        }
    }
    debug_assert!(lower <= upper);
    Ok(BoundReport {
        lower,
        upper: Some(upper),
        exact: None,
        lower_source,
        upper_source,
    })
}

/// Bounds on the number of Delta moves; infinite when any linking number is nonzero.
pub fn ndelta_bounds(v: &MilnorVector) -> BoundReport {
    let l3 = lambda3(v);
    if !lambda(v).is_zero() {
        return BoundReport {
            lower: l3,
            upper: None,
            exact: None,
            lower_source: SRC_TRIPLES,
            upper_source: SRC_DELTA_LINKED,
        };
    }
    let n = v.n as i64;
    let cubic = if n >= 3 {
        2 * (n - 1) * (n - 2) * (n - 3) / 3
    } else {
        0
    };
    let upper = &l3 + BigInt::from(cubic);
    let exact = (cubic == 0).then(|| l3.clone());
    BoundReport {
        lower: l3,
        upper: Some(upper),
        exact,
        lower_source: SRC_TRIPLES,
        upper_source: SRC_DELTA_UPPER,
    }
}

/// Range of the largest excess `n_h − Λ` over `n`-strand links.
pub fn cn_bounds(n: usize) -> Result<(u64, u64)> {
    if n < 3 {
        return Err(Error::InvalidParameter("n must be at least 3".into()));
    }
    let n = n as u64;
    Ok((2 * (n * (n - 2)).div_ceil(3), (n - 1) * (n - 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vector(n: usize, entries: &[(&[u8], i64)]) -> MilnorVector {
        let mut v = MilnorVector::new(n);
        for (k, x) in entries {
            v.set(k, BigInt::from(*x));
        }
        v
    }

    #[test]
    fn lambda_examples() {
        let b = vector(3, &[(&[1, 2, 3], 1)]);
        assert_eq!(lambda(&b), BigInt::from(0));
        assert_eq!(lambda3(&b), BigInt::from(1));
        let t = vector(3, &[]);
        assert_eq!(
            (lambda(&t), lambda3(&t)),
            (BigInt::from(0), BigInt::from(0))
        );
        let v = vector(4, &[(&[1, 3], 2), (&[2, 4], -3)]);
        assert_eq!(lambda(&v), BigInt::from(5));
    }

    #[test]
    fn normal_form_invariants_match_realization() {
        let mut nf = H4NormalForm::default();
        for (v, x) in [2i64, 0, -1, 1, 0, 3, 1, -2, 0, 1, 2, -1]
            .iter()
            .enumerate()
        {
            nf.a[v] = BigInt::from(*x);
        }
        let t = crate::hlink::h4_realize(&nf).unwrap();
        let real = t.milnor();
        let direct = h4_to_milnor(&nf);
        for key in &table::milnor_table().keys {
            assert_eq!(direct.get(key), real.get(key), "{:?}", key);
        }
        assert_eq!(h4_from_milnor(&direct).unwrap(), nf);
    }

    #[test]
    fn q_count_examples() {
        assert_eq!(q_count(&vector(4, &[]), 4), 3);
        assert_eq!(q_count(&vector(3, &[]), 3), 1);
        assert_eq!(q_count(&vector(4, &[(&[1, 3], 2), (&[2, 4], -3)]), 4), 1);
    }

    #[test]
    fn ideal_examples() {
        let b = |x: i64| BigInt::from(x);
        assert!(in_ideal(&b(5), &[b(3), b(4)]));
        assert!(!in_ideal(&b(3), &[b(0), b(0)]));
        assert!(in_ideal(&b(0), &[b(0), b(0)]));
        assert!(in_ideal(&b(4), &[b(6), b(10)]));
    }

    #[test]
    fn exact_3_examples() {
        let v = vector(3, &[(&[1, 2], 2), (&[1, 3], -3)]);
        assert_eq!(nh_exact_3(&v).unwrap(), BigInt::from(5));
        assert_eq!(
            nh_exact_3(&vector(3, &[(&[1, 2, 3], 7)])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(nh_exact_3(&vector(3, &[])).unwrap(), BigInt::from(0));
        assert!(nh_exact_3(&vector(4, &[])).is_err());
    }

    #[test]
    fn reorient_examples() {
        let v = vector(2, &[(&[1, 2], 3)]);
        assert_eq!(reorient(&v, &OrientationMask::identity(2)).unwrap(), v);
        let f = reorient(&v, &OrientationMask::flip(2, 1).unwrap()).unwrap();
        assert_eq!(f.linking(1, 2), BigInt::from(-3));
    }

    #[test]
    fn cn_examples() {
        assert_eq!(cn_bounds(3).unwrap(), (2, 2));
        assert_eq!(cn_bounds(4).unwrap(), (6, 6));
        assert_eq!(cn_bounds(5).unwrap(), (10, 12));
        assert!(cn_bounds(2).is_err());
    }

    #[test]
    fn ndelta_examples() {
        let r = ndelta_bounds(&vector(3, &[(&[1, 2, 3], 1)]));
        assert_eq!((r.lower, r.upper), (BigInt::from(1), Some(BigInt::from(1))));
        assert_eq!(ndelta_bounds(&vector(3, &[(&[1, 2], 1)])).upper, None);
        let r = ndelta_bounds(&vector(4, &[]));
        assert_eq!((r.lower, r.upper), (BigInt::from(0), Some(BigInt::from(4))));
    }

    #[test]
    fn min_q_matches_brute_force() {
        let v = vector(5, &[(&[1, 2], 1), (&[3, 5], 2)]);
        let mut best = usize::MAX;
        let mut perm = [1u8, 2, 3, 4, 5];
        permute_all(&mut perm, 0, &mut |p| {
            let mut w = MilnorVector::new(5);
            for (k, x) in &v.mu {
                let key: Vec<u8> = k.iter().map(|&c| p[c as usize - 1]).collect();
                w.mu.insert(key, x.clone());
            }
            best = best.min(q_count(&w, 5));
        });
        assert_eq!(min_q_over_orderings(&v), best);
    }

    fn permute_all(p: &mut [u8; 5], k: usize, f: &mut impl FnMut(&[u8; 5])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute_all(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn four_strand_milnor_round_trip() {
        let nf = H4NormalForm::from_i64([1, -2, 0, 3, 1, -1, 2, 0, -3, 1, 4, -2]);
        let v = crate::hlink::h4_realize(&nf).unwrap().milnor();
        assert_eq!(h4_from_milnor(&v).unwrap(), nf);
    }
}
