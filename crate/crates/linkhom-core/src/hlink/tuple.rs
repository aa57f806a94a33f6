//! String links up to link homotopy, as tuples of longitudes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rf::{
    canonical_word, expand_word, Generator, GroupExpr, GroupModel, Letter, ReducedPolynomial,
    RfLetter, RfWord, MAX_RANK,
};
use crate::{Error, Result};

/// Generator `x_{ij}` of `H(n)` with `i < j`: strand `i` clasps strand `j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Pair(pub u8, pub u8);

impl Pair {
    pub fn new(i: u8, j: u8, n: usize) -> Result<Pair> {
        if i == 0 || i >= j || j as usize > n {
            return Err(Error::BadPair {
                i: i as usize,
                j: j as usize,
                n,
            });
        }
        Ok(Pair(i, j))
    }
}

/// Printed `x12`, or `x{10,12}` once an index exceeds 9.
impl Generator for Pair {
    fn write_gen(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 <= 9 && self.1 <= 9 {
            write!(f, "x{}{}", self.0, self.1)
        } else {
            write!(f, "x{{{},{}}}", self.0, self.1)
        }
    }
}

/// Expression over `H(n)` generators.
pub type HExpr = GroupExpr<Pair>;
/// Letter over `H(n)` generators.
pub type HLetter = Letter<Pair>;
/// Word over `H(n)` generators.
pub type HWord = Vec<HLetter>;

/// An element of `H(n)`.
///
/// Component `k` carries its longitude as an expansion in rank `n` in which
/// `X_k` never occurs. Two tuples are equal exactly when the string links
/// are link-homotopic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LongitudeTuple {
    n: usize,
    longitudes: Vec<ReducedPolynomial>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_RANK {
        Err(Error::UnsupportedRank(n))
    } else {
        Ok(())
    }
}

impl LongitudeTuple {
    /// The trivial string link on `n` strands.
    pub fn trivial(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(LongitudeTuple {
            n,
            longitudes: (0..n)
                .map(|_| ReducedPolynomial::one(n))
                .collect::<Result<_>>()?,
        })
    }

    /// Builds a tuple from longitude expansions, killing `X_k` in the `k`-th.
    pub fn from_longitudes(longitudes: Vec<ReducedPolynomial>) -> Result<Self> {
        let n = longitudes.len();
        check_n(n)?;
        let mut out = Vec::with_capacity(n);
        for (k, l) in longitudes.into_iter().enumerate() {
            if l.rank() != n {
                return Err(Error::RankMismatch {
                    left: l.rank(),
                    right: n,
                });
            }
            if !l.is_unipotent() {
                return Err(Error::NotUnit);
            }
            out.push(l.kill(k as u8 + 1));
        }
        Ok(LongitudeTuple { n, longitudes: out })
    }

    /// The clasp `x_{ij}`: strand `i` runs around strand `j` behind the
    /// strands strictly between them.
    pub fn generator(i: usize, j: usize, n: usize) -> Result<Self> {
        check_n(n)?;
        if i == 0 || i >= j || j > n {
            return Err(Error::BadPair { i, j, n });
        }
        let mut t = Self::trivial(n)?;
        let between: RfWord = ((i + 1)..j).map(|k| RfLetter::new(k as u8, 1)).collect();
        let between_inv = crate::rf::invert_word(&between);
        let mut li = between.clone();
        li.push(RfLetter::new(j as u8, 1));
        li.extend_from_slice(&between_inv);
        let mut lj = between_inv;
        lj.push(RfLetter::new(i as u8, 1));
        lj.extend_from_slice(&between);
        t.longitudes[i - 1] = expand_word(&li, n)?;
        t.longitudes[j - 1] = expand_word(&lj, n)?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Expansion of the `k`-th longitude (1-based).
    pub fn longitude(&self, k: usize) -> &ReducedPolynomial {
        &self.longitudes[k - 1]
    }

    pub fn longitudes(&self) -> &[ReducedPolynomial] {
        &self.longitudes
    }

    /// A word representing the `k`-th longitude.
    pub fn longitude_word(&self, k: usize) -> Result<RfWord> {
        if k == 0 || k > self.n {
            return Err(Error::BadComponent { k, n: self.n });
        }
        canonical_word(&self.longitudes[k - 1])
    }

    pub fn is_trivial(&self) -> bool {
        self.longitudes.iter().all(|l| l.is_one())
    }

    /// Images `X_m -> ℓ_m^-1 X_m ℓ_m` of the conjugation action.
    fn action_images(&self) -> Result<Vec<ReducedPolynomial>> {
        let mut out = Vec::with_capacity(self.n);
        for (m, l) in self.longitudes.iter().enumerate() {
            let x = ReducedPolynomial::from_terms(self.n, [(alloc::vec![m as u8 + 1], 1)])?;
            out.push(&(&l.inverse()? * &x) * l);
        }
        Ok(out)
    }

    /// Stacking `self` then `other`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.is_trivial() {
            return Ok(other.clone());
        }
        if other.is_trivial() {
            return Ok(self.clone());
        }
        let images = self.action_images()?;
        let mut longitudes = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let moved = other.longitudes[k].substitute(&images)?;
            longitudes.push((&self.longitudes[k] * &moved).kill(k as u8 + 1));
        }
        Ok(LongitudeTuple {
            n: self.n,
            longitudes,
        })
    }

    /// Group inverse.
    pub fn invert(&self) -> Result<Self> {
        if self.is_trivial() {
            return Ok(self.clone());
        }
        // U = T^-1 solves ℓ_U = A_U(ℓ_T)^-1; each pass fixes one more degree
        let mut u = LongitudeTuple {
            n: self.n,
            longitudes: self
                .longitudes
                .iter()
                .map(|l| l.inverse())
                .collect::<Result<_>>()?,
        };
        for _ in 0..self.n {
            let images = u.action_images()?;
            let mut next = Vec::with_capacity(self.n);
            for k in 0..self.n {
                next.push(
                    self.longitudes[k]
                        .substitute(&images)?
                        .inverse()?
                        .kill(k as u8 + 1),
                );
            }
            u = LongitudeTuple {
                n: self.n,
                longitudes: next,
            };
        }
        debug_assert!(u.stack(self)?.is_trivial() && self.stack(&u)?.is_trivial());
        Ok(u)
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut model = HModel::new(self.n);
        model.pow(self, e)
    }

    /// Deletes strand `k` and renumbers the later strands.
    pub fn delete_component(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n || self.n == 1 {
            return Err(Error::BadComponent { k, n: self.n });
        }
        let longitudes = self
            .longitudes
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != k - 1)
            .map(|(_, l)| l.delete_index(k as u8))
            .collect::<Result<_>>()?;
        Ok(LongitudeTuple {
            n: self.n - 1,
            longitudes,
        })
    }

    /// Adds a trivial strand `n + 1`.
    pub fn add_trivial(&self) -> Result<Self> {
        check_n(self.n + 1)?;
        let mut longitudes: Vec<ReducedPolynomial> = self
            .longitudes
            .iter()
            .map(|l| l.with_rank(self.n + 1))
            .collect::<Result<_>>()?;
        longitudes.push(ReducedPolynomial::one(self.n + 1)?);
        Ok(LongitudeTuple {
            n: self.n + 1,
            longitudes,
        })
    }

    /// Renames strand `k` to `sigma[k-1]`.
    pub fn permute(&self, sigma: &[u8]) -> Result<Self> {
        check_permutation(sigma, self.n)?;
        let mut longitudes = alloc::vec![ReducedPolynomial::one(self.n)?; self.n];
        for (k, l) in self.longitudes.iter().enumerate() {
            longitudes[sigma[k] as usize - 1] = l.relabel(sigma);
        }
        Ok(LongitudeTuple {
            n: self.n,
            longitudes,
        })
    }

    /// Milnor invariants `μ(i_1..i_k j)`, the coefficient of
    /// `X_{i_1}..X_{i_k}` in the `j`-th longitude.
    pub fn milnor(&self) -> MilnorVector {
        let mut mu = BTreeMap::new();
        for (j, l) in self.longitudes.iter().enumerate() {
            for (m, c) in l.terms() {
                if m.is_empty() {
                    continue;
                }
                let mut key = m.to_vec();
                key.push(j as u8 + 1);
                mu.insert(key, c.clone());
            }
        }
        MilnorVector { n: self.n, mu }
    }

    /// Linking number of strands `i` and `j`.
    pub fn linking(&self, i: usize, j: usize) -> BigInt {
        self.longitudes[j - 1].coeff_of(&[i as u8])
    }

    /// Evaluates an `H(n)` expression.
    pub fn from_expr(e: &HExpr, n: usize) -> Result<Self> {
        e.evaluate(&mut HModel::new(n))
    }

    /// Stacks the letters of a word.
    pub fn from_word(word: &[HLetter], n: usize) -> Result<Self> {
        let mut model = HModel::new(n);
        let mut acc = Self::trivial(n)?;
        for l in word {
            let g = model.letter(l.gen, l.sign)?;
            acc = acc.stack(&g)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for LongitudeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LongitudeTuple")
            .field("n", &self.n)
            .field("longitudes", &self.longitudes)
            .finish()
    }
}

pub(crate) fn check_permutation(sigma: &[u8], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::NotPermutation(n));
    }
    let mut seen = 0u32;
    for &s in sigma {
        if s == 0 || s as usize > n || seen & (1 << s) != 0 {
            return Err(Error::NotPermutation(n));
        }
        seen |= 1 << s;
    }
    Ok(())
}

/// Evaluates `H(n)` expressions, caching generator tuples and their inverses.
#[derive(Clone, Debug)]
pub struct HModel {
    n: usize,
    cache: BTreeMap<Pair, (LongitudeTuple, LongitudeTuple)>,
}

impl HModel {
    pub fn new(n: usize) -> Self {
        HModel {
            n,
            cache: BTreeMap::new(),
        }
    }

    /// `x_p^sign`.
    pub fn letter(&mut self, p: Pair, sign: i8) -> Result<LongitudeTuple> {
        if !self.cache.contains_key(&p) {
            let g = LongitudeTuple::generator(p.0 as usize, p.1 as usize, self.n)?;
            let gi = g.invert()?;
            self.cache.insert(p, (g, gi));
        }
        let (g, gi) = &self.cache[&p];
        Ok(if sign > 0 { g.clone() } else { gi.clone() })
    }
}

impl GroupModel<Pair> for HModel {
    type Value = LongitudeTuple;

    fn identity(&mut self) -> Result<LongitudeTuple> {
        LongitudeTuple::trivial(self.n)
    }

    fn generator_power(&mut self, g: Pair, e: i64) -> Result<LongitudeTuple> {
        let base = self.letter(g, if e < 0 { -1 } else { 1 })?;
        self.pow(&base, e.abs())
    }

    fn mul(&mut self, a: &LongitudeTuple, b: &LongitudeTuple) -> Result<LongitudeTuple> {
        a.stack(b)
    }

    fn inverse(&mut self, a: &LongitudeTuple) -> Result<LongitudeTuple> {
        a.invert()
    }
}

/// The homomorphism `RF(n-1) -> H(n)` sending `x_i` to `x_{i,n}`.
pub fn phi(word: &[RfLetter], n: usize) -> Result<LongitudeTuple> {
    let mut hw = Vec::with_capacity(word.len());
    for l in word {
        if l.gen == 0 || l.gen as usize >= n {
            return Err(Error::IndexOutOfRange {
                index: l.gen as usize,
                rank: n - 1,
            });
        }
        hw.push(HLetter::new(Pair(l.gen, n as u8), l.sign));
    }
    LongitudeTuple::from_word(&hw, n)
}

/// The word over `H(n)` generators obtained by applying `φ` letterwise.
pub fn phi_word(word: &[RfLetter], n: usize) -> HWord {
    word.iter()
        .map(|l| HLetter::new(Pair(l.gen, n as u8), l.sign))
        .collect()
}

/// Milnor invariants of a string link, keyed by index sequence.
///
/// Only nonzero values are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MilnorVector {
    pub n: usize,
    pub mu: BTreeMap<Vec<u8>, BigInt>,
}

impl MilnorVector {
    pub fn new(n: usize) -> Self {
        MilnorVector {
            n,
            mu: BTreeMap::new(),
        }
    }

    /// `μ(I)`, zero when absent.
    pub fn get(&self, key: &[u8]) -> BigInt {
        self.mu.get(key).cloned().unwrap_or_default()
    }

    /// Sets `μ(I)`; pairwise invariants are stored symmetrically.
    pub fn set(&mut self, key: &[u8], value: BigInt) {
        let keys: Vec<Vec<u8>> = if key.len() == 2 {
            alloc::vec![key.to_vec(), alloc::vec![key[1], key[0]]]
        } else {
            alloc::vec![key.to_vec()]
        };
        for k in keys {
            if value.is_zero() {
                self.mu.remove(&k);
            } else {
                self.mu.insert(k, value.clone());
            }
        }
    }

    /// Linking number `μ(ij)`.
    pub fn linking(&self, i: u8, j: u8) -> BigInt {
        self.get(&[i, j])
    }

    pub fn is_zero(&self) -> bool {
        self.mu.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn x(i: u8, j: u8) -> HExpr {
        HExpr::gen(Pair(i, j))
    }

    fn comm(a: HExpr, b: HExpr) -> HExpr {
        HExpr::commutator(a, b)
    }

    #[test]
    fn generator_longitudes() {
        let t = LongitudeTuple::generator(1, 2, 3).unwrap();
        assert_eq!(t.longitude(1).to_string(), "1 + X2");
        assert_eq!(t.longitude(2).to_string(), "1 + X1");
        assert!(t.longitude(3).is_one());
        let mu = t.milnor();
        assert_eq!(mu.get(&[1, 2]), BigInt::from(1));
        assert_eq!(mu.get(&[2, 1]), BigInt::from(1));
    }

    #[test]
    fn nonadjacent_generator_is_conjugated_by_middle_strands() {
        let t = LongitudeTuple::generator(1, 3, 3).unwrap();
        assert_eq!(t.longitude(1).to_string(), "1 + X3 + X2X3 - X3X2");
        assert_eq!(t.linking(1, 3), BigInt::from(1));
        assert_eq!(t.linking(3, 1), BigInt::from(1));
        assert!(t.longitude(2).is_one());
    }

    #[test]
    fn inverse_both_sides() {
        for (i, j) in [(1, 2), (1, 3), (2, 4), (1, 4)] {
            let g = LongitudeTuple::generator(i, j, 4).unwrap();
            let gi = g.invert().unwrap();
            assert!(g.stack(&gi).unwrap().is_trivial());
            assert!(gi.stack(&g).unwrap().is_trivial());
        }
        let t = LongitudeTuple::trivial(3).unwrap();
        assert_eq!(t.invert().unwrap(), t);
    }

    #[test]
    fn linking_adds() {
        let g = LongitudeTuple::generator(1, 2, 2).unwrap();
        let t = g.stack(&g).unwrap();
        assert_eq!(t.milnor().get(&[1, 2]), BigInt::from(2));
        assert_eq!(g.pow(-3).unwrap().linking(1, 2), BigInt::from(-3));
        assert_eq!(t.stack(&LongitudeTuple::trivial(2).unwrap()).unwrap(), t);
    }

    #[test]
    fn triple_commutator_sign() {
        let t = LongitudeTuple::from_expr(&comm(x(1, 3), x(1, 2)), 3).unwrap();
        let mu = t.milnor();
        assert_eq!(mu.get(&[1, 2, 3]), BigInt::from(-1));
        assert_eq!(mu.get(&[1, 2]), BigInt::zero());
    }

    #[test]
    fn triples_are_distinguished() {
        let a = LongitudeTuple::from_expr(&comm(x(1, 3), x(1, 2)), 4).unwrap();
        let b = LongitudeTuple::from_expr(&comm(x(1, 4), x(1, 2)), 4).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn delete_and_add_components() {
        let t = LongitudeTuple::from_expr(&comm(x(1, 3), x(1, 2)), 4).unwrap();
        let t3 = LongitudeTuple::from_expr(&comm(x(1, 3), x(1, 2)), 3).unwrap();
        assert_eq!(t.delete_component(4).unwrap(), t3);
        assert!(t.delete_component(1).unwrap().is_trivial());
        assert_eq!(t3.add_trivial().unwrap().delete_component(4).unwrap(), t3);
        assert_eq!(t3.add_trivial().unwrap(), t);
        assert!(t.delete_component(5).is_err());
    }

    #[test]
    fn permutations_relabel() {
        let g = LongitudeTuple::generator(1, 2, 2).unwrap();
        assert_eq!(g.permute(&[2, 1]).unwrap(), g);
        let t123 = LongitudeTuple::from_expr(&comm(x(1, 3), x(1, 2)), 4).unwrap();
        let t124 = LongitudeTuple::from_expr(&comm(x(1, 4), x(1, 2)), 4).unwrap();
        let low = |t: &LongitudeTuple| {
            let mut m = t.milnor();
            m.mu.retain(|k, _| k.len() <= 3);
            m
        };
        let moved = t123.permute(&[1, 2, 4, 3]).unwrap();
        assert_eq!(low(&moved), low(&t124));
        assert_eq!(moved.milnor().get(&[1, 2, 4]), BigInt::from(-1));
        assert_eq!(t123.permute(&[1, 2, 3, 4]).unwrap(), t123);
        assert!(t123.permute(&[1, 1, 2, 3]).is_err());
    }

    #[test]
    fn phi_image_of_commutator() {
        let w = vec![
            RfLetter::new(2, -1),
            RfLetter::new(1, -1),
            RfLetter::new(2, 1),
            RfLetter::new(1, 1),
        ];
        let t = phi(&w, 3).unwrap();
        assert_eq!(t.milnor().get(&[1, 2, 3]), BigInt::from(-1));
        assert!(t.delete_component(3).unwrap().is_trivial());
    }

    #[test]
    fn bad_pairs() {
        assert!(LongitudeTuple::generator(2, 2, 3).is_err());
        assert!(LongitudeTuple::generator(1, 4, 3).is_err());
    }
}
