//! Truncated multilinear expansions of elements of `RF(m)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Largest supported rank. Monomials are packed into 4-bit nibbles.
pub const MAX_RANK: usize = 15;

/// A product `X_{i_1} X_{i_2} ... X_{i_k}` of distinct indices.
///
/// Packed left-aligned into a `u64`, one nibble per index, so that the
/// numeric order coincides with the lexicographic order of index sequences.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    /// The empty product.
    pub const ONE: Monomial = Monomial(0);

    /// Builds a monomial from an index sequence; `None` if an index repeats
    /// or lies outside `1..=15`.
    pub fn from_indices(indices: &[u8]) -> Option<Monomial> {
        if indices.len() > MAX_RANK {
            return None;
        }
        let mut mask = 0u16;
        let mut bits = 0u64;
        for (t, &i) in indices.iter().enumerate() {
            if i == 0 || i as usize > MAX_RANK || mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
            bits |= (i as u64) << (60 - 4 * t);
        }
        Some(Monomial(bits))
    }

    /// The monomial `X_i`.
    pub fn single(i: u8) -> Monomial {
        debug_assert!(i >= 1 && i as usize <= MAX_RANK);
        Monomial((i as u64) << 60)
    }

    /// Number of factors.
    #[inline]
    pub fn len(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            (67 - self.0.trailing_zeros() as usize) / 4
        }
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Index of the `t`-th factor (0-based).
    #[inline]
    pub fn get(self, t: usize) -> u8 {
        ((self.0 >> (60 - 4 * t)) & 0xF) as u8
    }

    /// Factors in order.
    pub fn indices(self) -> impl Iterator<Item = u8> {
        (0..self.len()).map(move |t| self.get(t))
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.indices().collect()
    }

    /// Bit `i` is set iff `X_i` occurs.
    #[inline]
    pub fn mask(self) -> u16 {
        let mut m = 0u16;
        let mut b = self.0;
        while b != 0 {
            m |= 1 << (b >> 60);
            b <<= 4;
        }
        m
    }

    #[inline]
    pub fn contains(self, i: u8) -> bool {
        self.mask() & (1 << i) != 0
    }

    /// Concatenation; the caller guarantees the index sets are disjoint.
    #[inline]
    pub fn concat(self, other: Monomial) -> Monomial {
        let l = self.len();
        if l == 0 {
            other
        } else {
            Monomial(self.0 | (other.0 >> (4 * l)))
        }
    }

    /// All but the last factor.
    #[inline]
    pub fn prefix(self) -> Monomial {
        let l = self.len();
        if l == 0 {
            self
        } else {
            Monomial(self.0 & !(0xFu64 << (60 - 4 * (l - 1))))
        }
    }

    /// Last factor, or 0 for the empty product.
    #[inline]
    pub fn last(self) -> u8 {
        let l = self.len();
        if l == 0 {
            0
        } else {
            self.get(l - 1)
        }
    }

    /// Applies `f` to every index.
    pub fn map(self, mut f: impl FnMut(u8) -> u8) -> Monomial {
        let mut bits = 0u64;
        for t in 0..self.len() {
            bits |= (f(self.get(t)) as u64) << (60 - 4 * t);
        }
        Monomial(bits)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for i in self.indices() {
            if i > 9 {
                write!(f, "X{{{}}}", i)?;
            } else {
                write!(f, "X{}", i)?;
            }
        }
        Ok(())
    }
}

/// An element of the ring `Z<X_1..X_m>` modulo monomials with a repeated
/// index. Group elements of `RF(m)` embed faithfully via `x_i -> 1 + X_i`.
///
/// Zero coefficients are never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReducedPolynomial {
    rank: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        Err(Error::UnsupportedRank(rank))
    } else {
        Ok(())
    }
}

impl ReducedPolynomial {
    pub fn zero(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(ReducedPolynomial {
            rank,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(rank: usize) -> Result<Self> {
        let mut p = Self::zero(rank)?;
        p.terms.insert(Monomial::ONE, BigInt::one());
        Ok(p)
    }

    /// `1 + X_i` when `sign > 0`, `1 - X_i` otherwise.
    pub fn letter(i: usize, sign: i32, rank: usize) -> Result<Self> {
        let mut p = Self::one(rank)?;
        check_index(i, rank)?;
        p.terms
            .insert(Monomial::single(i as u8), BigInt::from(sign.signum()));
        Ok(p)
    }

    /// Builds a polynomial from explicit `(indices, coefficient)` pairs.
    pub fn from_terms<I, C>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u8>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(rank)?;
        for (idx, c) in terms {
            for &i in &idx {
                check_index(i as usize, rank)?;
            }
            let m = Monomial::from_indices(&idx).ok_or_else(|| {
                Error::InvalidParameter(alloc::format!("repeated index in monomial {:?}", idx))
            })?;
            p.add_term(m, c.into());
        }
        Ok(p)
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero terms in lexicographic monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Coefficient of `X_{i_1}...X_{i_k}`; zero for sequences that are not monomials.
    pub fn coeff_of(&self, indices: &[u8]) -> BigInt {
        Monomial::from_indices(indices)
            .map(|m| self.coeff(m))
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    /// Constant term equal to 1, the image of every group element.
    pub fn is_unipotent(&self) -> bool {
        self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        } else {
            Ok(())
        }
    }

    /// Ring product, discarding monomials with a repeated index.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let rhs: Vec<(Monomial, u16, &BigInt)> =
            other.terms.iter().map(|(m, c)| (*m, m.mask(), c)).collect();
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let mask_a = ma.mask();
            for (mb, mask_b, cb) in &rhs {
                if mask_a & mask_b == 0 {
                    let key = ma.concat(*mb);
                    let prod = ca * *cb;
                    match out.entry(key) {
                        alloc::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(prod);
                        }
                        alloc::collections::btree_map::Entry::Occupied(mut o) => {
                            *o.get_mut() += prod;
                        }
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        ReducedPolynomial {
            rank: self.rank,
            terms: out,
        }
    }

    /// `self * (1 + sign X_i)`.
    pub fn mul_letter(&self, i: u8, sign: i32) -> Self {
        let mut out = self.clone();
        let bit = 1u16 << i;
        for (m, c) in &self.terms {
            if m.mask() & bit == 0 {
                let key = m.concat(Monomial::single(i));
                if sign > 0 {
                    out.add_term(key, c.clone());
                } else {
                    out.add_term(key, -c);
                }
            }
        }
        out
    }

    /// `(1 + sign X_i) * self`.
    pub fn letter_mul(&self, i: u8, sign: i32) -> Self {
        let mut out = self.clone();
        let bit = 1u16 << i;
        let head = Monomial::single(i);
        for (m, c) in &self.terms {
            if m.mask() & bit == 0 {
                let key = head.concat(*m);
                if sign > 0 {
                    out.add_term(key, c.clone());
                } else {
                    out.add_term(key, -c);
                }
            }
        }
        out
    }

    /// Multiplicative inverse of a polynomial with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unipotent() {
            return Err(Error::NotUnit);
        }
        let mut nil = self.clone();
        nil.terms.remove(&Monomial::ONE);
        let neg = -&nil;
        let mut result = Self::one(self.rank)?;
        let mut power = result.clone();
        for _ in 0..self.rank {
            power = power.mul_unchecked(&neg);
            if power.is_zero() {
                break;
            }
            result = &result + &power;
        }
        Ok(result)
    }

    /// Integer power of a polynomial with constant term 1, via the binomial series.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if !self.is_unipotent() {
            return Err(Error::NotUnit);
        }
        if e < 0 {
            return self.inverse()?.pow_nonneg(e.unsigned_abs());
        }
        self.pow_nonneg(e as u64)
    }

    fn pow_nonneg(&self, e: u64) -> Result<Self> {
        let mut nil = self.clone();
        nil.terms.remove(&Monomial::ONE);
        let mut result = Self::one(self.rank)?;
        let mut power = result.clone();
        let mut binom = BigInt::one();
        let e_big = BigInt::from(e);
        for k in 1..=self.rank as u64 {
            if k > e {
                break;
            }
            power = power.mul_unchecked(&nil);
            if power.is_zero() {
                break;
            }
            binom = binom * (&e_big - BigInt::from(k - 1)) / BigInt::from(k);
            result = &result + &power.scale(&binom);
        }
        Ok(result)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return ReducedPolynomial {
                rank: self.rank,
                terms: BTreeMap::new(),
            };
        }
        ReducedPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Smallest positive degree with a nonzero coefficient; `None` when the
    /// polynomial is a constant.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).filter(|&l| l > 0).min()
    }

    /// Terms of exactly degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        ReducedPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Sets `X_i = 0`.
    pub fn kill(&self, i: u8) -> Self {
        let bit = 1u16 << i;
        ReducedPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.mask() & bit == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Sets `X_k = 0`, then renumbers `X_j -> X_{j-1}` for `j > k`, landing in rank `m - 1`.
    pub fn delete_index(&self, k: u8) -> Result<Self> {
        check_rank(self.rank - 1)?;
        let bit = 1u16 << k;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.mask() & bit == 0)
            .map(|(m, c)| (m.map(|j| if j > k { j - 1 } else { j }), c.clone()))
            .collect();
        Ok(ReducedPolynomial {
            rank: self.rank - 1,
            terms,
        })
    }

    /// Same polynomial viewed in a different rank (indices must fit).
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        check_rank(rank)?;
        for m in self.terms.keys() {
            for i in m.indices() {
                check_index(i as usize, rank)?;
            }
        }
        Ok(ReducedPolynomial {
            rank,
            terms: self.terms.clone(),
        })
    }

    /// Renames `X_i -> X_{sigma[i-1]}`; `sigma` lists images of `1..=rank`.
    pub fn relabel(&self, sigma: &[u8]) -> Self {
        ReducedPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.map(|i| sigma[i as usize - 1]), c.clone()))
                .collect(),
        }
    }

    /// Ring substitution `X_i -> images[i-1]`; `images` all share one rank.
    pub fn substitute(&self, images: &[ReducedPolynomial]) -> Result<Self> {
        let rank = images.first().map(|p| p.rank).unwrap_or(self.rank);
        if images.len() < self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: images.len(),
            });
        }
        let mut cache: BTreeMap<Monomial, ReducedPolynomial> = BTreeMap::new();
        cache.insert(Monomial::ONE, Self::one(rank)?);
        let mut out = Self::zero(rank)?;
        for (m, c) in &self.terms {
            let img = substitute_monomial(*m, images, &mut cache);
            for (k, v) in &img.terms {
                out.add_term(*k, v * c);
            }
        }
        Ok(out)
    }
}

fn substitute_monomial(
    m: Monomial,
    images: &[ReducedPolynomial],
    cache: &mut BTreeMap<Monomial, ReducedPolynomial>,
) -> ReducedPolynomial {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let prefix = substitute_monomial(m.prefix(), images, cache);
    let result = prefix.mul_unchecked(&images[m.last() as usize - 1]);
    cache.insert(m, result.clone());
    result
}

pub(crate) fn check_index(i: usize, rank: usize) -> Result<()> {
    if i == 0 || i > rank {
        Err(Error::IndexOutOfRange { index: i, rank })
    } else {
        Ok(())
    }
}

impl Add for &ReducedPolynomial {
    type Output = ReducedPolynomial;
    fn add(self, rhs: &ReducedPolynomial) -> ReducedPolynomial {
        assert_eq!(self.rank, rhs.rank, "rank mismatch in polynomial addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &ReducedPolynomial {
    type Output = ReducedPolynomial;
    fn sub(self, rhs: &ReducedPolynomial) -> ReducedPolynomial {
        assert_eq!(
            self.rank, rhs.rank,
            "rank mismatch in polynomial subtraction"
        );
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &ReducedPolynomial {
    type Output = ReducedPolynomial;
    fn neg(self) -> ReducedPolynomial {
        ReducedPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// Panics on rank mismatch; use [`ReducedPolynomial::try_mul`] for a checked product.
impl Mul for &ReducedPolynomial {
    type Output = ReducedPolynomial;
    fn mul(self, rhs: &ReducedPolynomial) -> ReducedPolynomial {
        assert_eq!(self.rank, rhs.rank, "rank mismatch in polynomial product");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Debug for ReducedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Terms by degree, then lexicographically: `1 + X1X2 - X2X1`.
impl fmt::Display for ReducedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut sorted: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        sorted.sort_by_key(|(m, _)| (m.len(), **m));
        for (t, (m, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if t == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{} {}", mag, m)?;
            }
        }
        Ok(())
    }
}
