//! Normal form for four-strand string links and its multiplication.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use once_cell::race::OnceBox;

use super::tuple::{HExpr, LongitudeTuple, Pair};
use crate::int::{small, Int};
use crate::{Error, Result};

/// Exponent keys in normal-form order.
pub const H4_KEYS: [&str; 12] = [
    "12", "13", "14", "23", "24", "34", "123", "124", "134", "234", "1234", "1324",
];

/// Generator pairs in normal-form order.
pub const H4_PAIRS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Triple indices in normal-form order.
pub const H4_TRIPLES: [(u8, u8, u8); 4] = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)];

pub const A1234: usize = 10;
pub const A1324: usize = 11;

/// `T = A_1 A_2 A_3` with `A_1` the pair clasps, `A_2` the triple
/// commutators `x_{ijk} = [x_{ik}, x_{ij}]` and `A_3` the central
/// `x_{1234} = [[x_14,x_13],x_12]`, `x_{1324} = [[x_14,x_12],x_13]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct H4NormalForm {
    /// Exponents indexed like [`H4_KEYS`].
    pub a: [BigInt; 12],
}

impl H4NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_i64(a: [i64; 12]) -> Self {
        H4NormalForm {
            a: a.map(BigInt::from),
        }
    }

    /// Exponent for a key such as `"123"`.
    pub fn get(&self, key: &str) -> Option<&BigInt> {
        H4_KEYS.iter().position(|k| *k == key).map(|t| &self.a[t])
    }

    pub fn set(&mut self, key: &str, value: BigInt) -> Result<()> {
        let t = H4_KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| Error::InvalidBasisElement(key.into()))?;
        self.a[t] = value;
        Ok(())
    }

    /// Builder-style setter for tests and examples.
    pub fn with(mut self, key: &str, value: i64) -> Self {
        self.set(key, BigInt::from(value)).expect("known key");
        self
    }

    pub fn pair(&self, i: u8, j: u8) -> &BigInt {
        let t = H4_PAIRS
            .iter()
            .position(|&p| p == (i.min(j), i.max(j)))
            .expect("pair in 1..4");
        &self.a[t]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    /// The product `A_1 A_2 A_3` as an expression.
    pub fn to_expr(&self) -> HExpr {
        HExpr::Product(
            (0..12)
                .filter(|&t| !self.a[t].is_zero())
                .map(|t| {
                    let e = self.a[t].to_i64().expect("exponent fits in 64 bits");
                    match basis_expr(t) {
                        HExpr::Gen(g, 1) => HExpr::Gen(g, e),
                        b => HExpr::power(b, e),
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for H4NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (key, a) in H4_KEYS.iter().zip(&self.a) {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "x{}^{}", key, a)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Basis element `t` of the normal form as an expression.
pub fn basis_expr(t: usize) -> HExpr {
    let x = |i: u8, j: u8| HExpr::gen(Pair(i, j));
    match t {
        0..=5 => x(H4_PAIRS[t].0, H4_PAIRS[t].1),
        6..=9 => {
            let (i, j, k) = H4_TRIPLES[t - 6];
            HExpr::commutator(x(i, k), x(i, j))
        }
        A1234 => HExpr::commutator(HExpr::commutator(x(1, 4), x(1, 3)), x(1, 2)),
        A1324 => HExpr::commutator(HExpr::commutator(x(1, 4), x(1, 2)), x(1, 3)),
        _ => panic!("basis index out of range"),
    }
}

struct BasisTuples {
    plain: Vec<LongitudeTuple>,
    inverse: Vec<LongitudeTuple>,
}

static BASIS: OnceBox<BasisTuples> = OnceBox::new();

fn basis_tuples() -> &'static BasisTuples {
    BASIS.get_or_init(|| {
        let plain: Vec<LongitudeTuple> = (0..12)
            .map(|t| LongitudeTuple::from_expr(&basis_expr(t), 4).expect("basis element"))
            .collect();
        let inverse = plain
            .iter()
            .map(|p| p.invert().expect("invertible"))
            .collect();
        Box::new(BasisTuples { plain, inverse })
    })
}

fn basis_power(t: usize, e: &BigInt) -> Result<LongitudeTuple> {
    let b = basis_tuples();
    let k = e
        .to_i64()
        .ok_or_else(|| Error::InvalidParameter(format!("exponent {} too large to realize", e)))?;
    let base = if k < 0 { &b.inverse[t] } else { &b.plain[t] };
    base.pow(k.abs())
}

fn realize_range(nf: &H4NormalForm, range: core::ops::Range<usize>) -> Result<LongitudeTuple> {
    let mut acc = LongitudeTuple::trivial(4)?;
    for t in range {
        if !nf.a[t].is_zero() {
            acc = acc.stack(&basis_power(t, &nf.a[t])?)?;
        }
    }
    Ok(acc)
}

/// The string link `A_1 A_2 A_3`.
pub fn h4_realize(nf: &H4NormalForm) -> Result<LongitudeTuple> {
    realize_range(nf, 0..12)
}

/// Normal form of a four-strand tuple, by peeling one layer at a time.
pub fn h4_normalize(t: &LongitudeTuple) -> Result<H4NormalForm> {
    if t.n() != 4 {
        return Err(Error::WrongComponentCount {
            expected: 4,
            actual: t.n(),
        });
    }
    let mut nf = H4NormalForm::zero();
    for (s, &(i, j)) in H4_PAIRS.iter().enumerate() {
        nf.a[s] = t.linking(i as usize, j as usize);
    }
    let r1 = realize_range(&nf, 0..6)?.invert()?.stack(t)?;
    // x_{ijk} carries μ(ijk) = -1 and no other triple invariant
    for (s, &(i, j, k)) in H4_TRIPLES.iter().enumerate() {
        nf.a[6 + s] = -r1.longitude(k as usize).coeff_of(&[i, j]);
    }
    let r2 = realize_range(&nf, 6..10)?.invert()?.stack(&r1)?;
    // x_{1234} and x_{1324} carry μ(1234) = 1 and μ(1324) = 1 respectively
    nf.a[A1234] = r2.longitude(4).coeff_of(&[1, 2, 3]);
    nf.a[A1324] = r2.longitude(4).coeff_of(&[1, 3, 2]);
    let r3 = realize_range(&nf, 10..12)?.invert()?.stack(&r2)?;
    if !r3.is_trivial() {
        return Err(Error::NotRealizable);
    }
    Ok(nf)
}

/// `(triples, quads)` of `[A, x_g]` for a basis element `A` (row) and pair `g` (column).
type Entry = ([i8; 4], [i8; 2]);

const fn tr(t: usize, s: i8) -> Entry {
    let mut e = [0i8; 4];
    e[t] = s;
    (e, [0, 0])
}
const fn qd(a: i8, b: i8) -> Entry {
    ([0; 4], [a, b])
}
const ONE: Entry = ([0; 4], [0, 0]);

/// Commutators `[A, x_{ij}]` for `A` a pair or triple basis element.
#[rustfmt::skip]
const TABLE: [[Entry; 6]; 10] = [
    // x12
    [ONE, tr(0, -1), tr(1, -1), tr(0, 1), tr(1, 1), ONE],
    // x13
    [tr(0, 1), ONE, tr(2, -1), tr(0, -1), qd(0, 1), tr(2, 1)],
    // x14
    [tr(1, 1), tr(2, 1), ONE, ONE, tr(1, -1), tr(2, -1)],
    // x23
    [tr(0, -1), tr(0, 1), ONE, ONE, tr(3, -1), tr(3, 1)],
    // x24
    [tr(1, -1), qd(0, -1), tr(1, 1), tr(3, 1), ONE, tr(3, -1)],
    // x34
    [ONE, tr(2, -1), tr(2, 1), tr(3, -1), tr(3, 1), ONE],
    // x123
    [ONE, ONE, qd(-1, 1), ONE, qd(0, -1), qd(1, 0)],
    // x124
    [ONE, qd(0, 1), ONE, qd(1, -1), ONE, qd(-1, 0)],
    // x134
    [qd(1, 0), ONE, ONE, qd(-1, 1), qd(0, -1), ONE],
    // x234
    [qd(-1, 0), qd(0, 1), qd(1, -1), ONE, ONE, ONE],
];

fn entry_nf(e: &Entry) -> H4NormalForm {
    let mut nf = H4NormalForm::zero();
    for t in 0..4 {
        nf.a[6 + t] = BigInt::from(e.0[t]);
    }
    nf.a[A1234] = BigInt::from(e.1[0]);
    nf.a[A1324] = BigInt::from(e.1[1]);
    nf
}

/// The commutator `[A, x_{ij}]` in normal form, for `A` named by its key
/// (`"12"` .. `"34"` or `"123"` .. `"234"`).
pub fn h4_commutator_entry(basis: &str, g: Pair) -> Result<H4NormalForm> {
    let row = H4_KEYS[..10]
        .iter()
        .position(|k| *k == basis)
        .ok_or_else(|| Error::InvalidBasisElement(basis.into()))?;
    let col = H4_PAIRS
        .iter()
        .position(|&p| p == (g.0, g.1))
        .ok_or(Error::BadPair {
            i: g.0 as usize,
            j: g.1 as usize,
            n: 4,
        })?;
    Ok(entry_nf(&TABLE[row][col]))
}

/// Central part of `[T, x_g]` for `T` in the triple layer with exponents `t`.
fn triple_bracket<T: Int>(t: &[T; 4], g: usize, q: &mut [T; 2]) {
    for (s, ts) in t.iter().enumerate() {
        if ts.is_zero() {
            continue;
        }
        let e = &TABLE[6 + s][g];
        q[0] = q[0].clone() + ts.clone() * small(e.1[0] as i64);
        q[1] = q[1].clone() + ts.clone() * small(e.1[1] as i64);
    }
}

fn choose2<T: Int>(a: &T) -> T {
    a.clone() * (a.clone() - T::one()) / small(2)
}

fn scale<T: Int>(v: &[T; 4], k: &T) -> [T; 4] {
    core::array::from_fn(|s| v[s].clone() * k.clone())
}

struct Collector<T> {
    p: [T; 6],
    t: [T; 4],
    q: [T; 2],
}

impl<T: Int> Collector<T> {
    /// Right-multiplies by `x_{pair k}^e`.
    fn push_pair(&mut self, k: usize, e: &T) {
        if e.is_zero() {
            return;
        }
        // T x^e = x^e T [T, x^e], and [T, x^e] is central
        triple_bracket(&scale(&self.t, e), k, &mut self.q);
        // move x_k^e left past the later pair syllables S_l = x_l^a:
        // S_l x_k^e = x_k^e S_l c_l with c_l = [x_l^a, x_k^e]
        let mut comms: [Option<[T; 4]>; 6] = Default::default();
        for (l, row) in TABLE.iter().enumerate().take(6).skip(k + 1) {
            let a = &self.p[l];
            if a.is_zero() {
                continue;
            }
            let c = &row[k];
            let ae = a.clone() * e.clone();
            let ct: [T; 4] = core::array::from_fn(|s| small(c.0[s] as i64));
            // [g^a, h^b] = c^{ab} [c,g]^{b C(a,2)} [c,h]^{a C(b,2)}
            let triples = scale(&ct, &ae);
            self.q[0] = self.q[0].clone() + ae.clone() * small(c.1[0] as i64);
            self.q[1] = self.q[1].clone() + ae * small(c.1[1] as i64);
            triple_bracket(&scale(&ct, &(e.clone() * choose2(a))), l, &mut self.q);
            triple_bracket(&scale(&ct, &(a.clone() * choose2(e))), k, &mut self.q);
            for (t, x) in self.t.iter_mut().zip(&triples) {
                *t = t.clone() + x.clone();
            }
            comms[l] = Some(triples);
        }
        // each c_l then moves right past S_{l'} for l' > l: c S = S c [c, S]
        for (l, ct) in comms.iter().enumerate() {
            let Some(ct) = ct else { continue };
            for l2 in (l + 1)..6 {
                if !self.p[l2].is_zero() {
                    triple_bracket(&scale(ct, &self.p[l2]), l2, &mut self.q);
                }
            }
        }
        self.p[k] = self.p[k].clone() + e.clone();
    }
}

/// The group law on exponent vectors.
pub(crate) fn multiply_exponents<T: Int>(x: &[T; 12], y: &[T; 12]) -> [T; 12] {
    let mut c = Collector {
        p: core::array::from_fn(|s| x[s].clone()),
        t: core::array::from_fn(|s| x[6 + s].clone()),
        q: [x[A1234].clone(), x[A1324].clone()],
    };
    for (k, e) in y.iter().enumerate().take(6) {
        c.push_pair(k, e);
    }
    core::array::from_fn(|s| match s {
        0..=5 => c.p[s].clone(),
        6..=9 => c.t[s - 6].clone() + y[s].clone(),
        _ => c.q[s - A1234].clone() + y[s].clone(),
    })
}

/// Group law on normal forms by commutator collection.
pub fn h4_multiply(x: &H4NormalForm, y: &H4NormalForm) -> H4NormalForm {
    H4NormalForm {
        a: multiply_exponents(&x.a, &y.a),
    }
}

/// Parameters of a conjugate of a generator `x_{ij}` in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugateParams {
    pub pair: Pair,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    /// Present for the `x_14` and `x_23` families, where `γ + δ = αβ`.
    pub delta: Option<BigInt>,
}

/// Which triples carry `α`, `β` for each generator, and how the central
/// exponents depend on the parameters.
fn family_shape(pair: Pair) -> Result<(usize, usize, usize, u8)> {
    // (pair index, α triple, β triple, kind): kind 0: γ on 1234, 1324 = -αβ;
    // 1: 1234 = αβ, γ on 1324; 2: free γ, δ with γ + δ = αβ
    Ok(match (pair.0, pair.1) {
        (1, 2) => (0, 6, 7, 0),
        (1, 3) => (1, 6, 8, 1),
        (1, 4) => (2, 7, 8, 2),
        (2, 3) => (3, 6, 9, 2),
        (2, 4) => (4, 7, 9, 1),
        (3, 4) => (5, 8, 9, 0),
        _ => {
            return Err(Error::BadPair {
                i: pair.0 as usize,
                j: pair.1 as usize,
                n: 4,
            })
        }
    })
}

/// The conjugate of `x_{ij}` with the given parameters.
pub fn h4_conjugate_family(params: &ConjugateParams) -> Result<H4NormalForm> {
    let (p, ta, tb, kind) = family_shape(params.pair)?;
    let mut nf = H4NormalForm::zero();
    nf.a[p] = BigInt::from(1);
    nf.a[ta] = params.alpha.clone();
    nf.a[tb] = params.beta.clone();
    let ab = &params.alpha * &params.beta;
    match kind {
        0 => {
            nf.a[A1234] = params.gamma.clone();
            nf.a[A1324] = -ab;
        }
        1 => {
            nf.a[A1234] = ab;
            nf.a[A1324] = params.gamma.clone();
        }
        _ => {
            let delta = params.delta.clone().unwrap_or_else(|| &ab - &params.gamma);
            if &params.gamma + &delta != ab {
                return Err(Error::InvalidParameter(
                    "conjugate family requires γ + δ = αβ".into(),
                ));
            }
            nf.a[A1234] = params.gamma.clone();
            nf.a[A1324] = delta;
        }
    }
    Ok(nf)
}

/// Parameters when `nf` is a conjugate of `x_{ij}`, otherwise `None`.
pub fn h4_is_conjugate(nf: &H4NormalForm, pair: Pair) -> Result<Option<ConjugateParams>> {
    let (p, ta, tb, kind) = family_shape(pair)?;
    let alpha = nf.a[ta].clone();
    let beta = nf.a[tb].clone();
    let (gamma, delta) = match kind {
        0 => (nf.a[A1234].clone(), None),
        1 => (nf.a[A1324].clone(), None),
        _ => (nf.a[A1234].clone(), Some(nf.a[A1324].clone())),
    };
    let params = ConjugateParams {
        pair,
        alpha,
        beta,
        gamma,
        delta,
    };
    let _ = p;
    match h4_conjugate_family(&params) {
        Ok(candidate) if candidate == *nf => Ok(Some(params)),
        _ => Ok(None),
    }
}
