//! Group expressions over an arbitrary generator alphabet.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::Result;

/// A generator alphabet that knows how to print itself in word syntax.
pub trait Generator: Copy + Ord + fmt::Debug {
    fn write_gen(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

/// Generator `x_i` of a reduced free group, printed `x3` or `x12`.
impl Generator for u8 {
    fn write_gen(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self)
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter<G> {
    pub gen: G,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl<G: Generator> Letter<G> {
    pub fn new(gen: G, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { gen, sign }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }
}

impl<G: Generator> fmt::Display for Letter<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.gen.write_gen(f)?;
        if self.sign < 0 {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// Free-reduces a letter sequence.
pub fn reduce_word<G: Generator>(word: &[Letter<G>]) -> Vec<Letter<G>> {
    let mut out: Vec<Letter<G>> = Vec::with_capacity(word.len());
    for &l in word {
        if out
            .last()
            .is_some_and(|&p| p.gen == l.gen && p.sign == -l.sign)
        {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Formal inverse of a word.
pub fn invert_word<G: Generator>(word: &[Letter<G>]) -> Vec<Letter<G>> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// Writes a word in the expression syntax; the empty word prints as `()`.
pub fn write_word<G: Generator>(f: &mut fmt::Formatter<'_>, word: &[Letter<G>]) -> fmt::Result {
    if word.is_empty() {
        return f.write_str("()");
    }
    for (t, l) in word.iter().enumerate() {
        if t > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{}", l)?;
    }
    Ok(())
}

/// Display adapter for a letter sequence.
pub struct WordDisplay<'a, G>(pub &'a [Letter<G>]);

impl<G: Generator> fmt::Display for WordDisplay<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.0)
    }
}

/// Expression tree for a group element.
///
/// Commutators follow `[g,h] = g^-1 h^-1 g h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupExpr<G> {
    /// `x^e`.
    Gen(G, i64),
    Product(Vec<GroupExpr<G>>),
    Commutator(Box<GroupExpr<G>>, Box<GroupExpr<G>>),
    Inverse(Box<GroupExpr<G>>),
    Power(Box<GroupExpr<G>>, i64),
}

/// Interpretation of expressions in a concrete group.
pub trait GroupModel<G> {
    type Value: Clone;
    fn identity(&mut self) -> Result<Self::Value>;
    fn generator_power(&mut self, g: G, e: i64) -> Result<Self::Value>;
    fn mul(&mut self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn inverse(&mut self, a: &Self::Value) -> Result<Self::Value>;

    fn pow(&mut self, a: &Self::Value, e: i64) -> Result<Self::Value> {
        let mut base = if e < 0 { self.inverse(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.identity()?;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }
}

impl<G: Generator> GroupExpr<G> {
    pub fn gen(g: G) -> Self {
        GroupExpr::Gen(g, 1)
    }

    pub fn commutator(a: GroupExpr<G>, b: GroupExpr<G>) -> Self {
        GroupExpr::Commutator(Box::new(a), Box::new(b))
    }

    pub fn inverse_of(a: GroupExpr<G>) -> Self {
        GroupExpr::Inverse(Box::new(a))
    }

    pub fn power(a: GroupExpr<G>, e: i64) -> Self {
        GroupExpr::Power(Box::new(a), e)
    }

    pub fn from_word(word: &[Letter<G>]) -> Self {
        if word.len() == 1 {
            return GroupExpr::Gen(word[0].gen, word[0].sign as i64);
        }
        GroupExpr::Product(
            word.iter()
                .map(|l| GroupExpr::Gen(l.gen, l.sign as i64))
                .collect(),
        )
    }

    /// Evaluates the tree in a group model.
    pub fn evaluate<M: GroupModel<G>>(&self, model: &mut M) -> Result<M::Value> {
        match self {
            GroupExpr::Gen(g, e) => model.generator_power(*g, *e),
            GroupExpr::Product(items) => {
                let mut acc = model.identity()?;
                for item in items {
                    let v = item.evaluate(model)?;
                    acc = model.mul(&acc, &v)?;
                }
                Ok(acc)
            }
            GroupExpr::Commutator(a, b) => {
                let va = a.evaluate(model)?;
                let vb = b.evaluate(model)?;
                let ia = model.inverse(&va)?;
                let ib = model.inverse(&vb)?;
                let left = model.mul(&ia, &ib)?;
                let right = model.mul(&va, &vb)?;
                model.mul(&left, &right)
            }
            GroupExpr::Inverse(a) => {
                let va = a.evaluate(model)?;
                model.inverse(&va)
            }
            GroupExpr::Power(a, e) => {
                let va = a.evaluate(model)?;
                model.pow(&va, *e)
            }
        }
    }

    /// Flattens to a free-reduced letter sequence.
    ///
    /// Powers are written out, so large exponents give long words.
    pub fn to_word(&self) -> Vec<Letter<G>> {
        let mut out = Vec::new();
        self.push_letters(false, &mut out);
        reduce_word(&out)
    }

    fn push_letters(&self, inverted: bool, out: &mut Vec<Letter<G>>) {
        match self {
            GroupExpr::Gen(g, e) => {
                let mut sign: i8 = if *e < 0 { -1 } else { 1 };
                if inverted {
                    sign = -sign;
                }
                for _ in 0..e.unsigned_abs() {
                    out.push(Letter::new(*g, sign));
                }
            }
            GroupExpr::Product(items) => {
                if inverted {
                    for item in items.iter().rev() {
                        item.push_letters(true, out);
                    }
                } else {
                    for item in items {
                        item.push_letters(false, out);
                    }
                }
            }
            GroupExpr::Commutator(a, b) => {
                // [a,b]^-1 = [b,a]
                let (a, b) = if inverted { (b, a) } else { (a, b) };
                a.push_letters(true, out);
                b.push_letters(true, out);
                a.push_letters(false, out);
                b.push_letters(false, out);
            }
            GroupExpr::Inverse(a) => a.push_letters(!inverted, out),
            GroupExpr::Power(a, e) => {
                let inv = inverted ^ (*e < 0);
                for _ in 0..e.unsigned_abs() {
                    a.push_letters(inv, out);
                }
            }
        }
    }

    /// Every generator occurring in the tree, in order of appearance.
    pub fn generators(&self) -> Vec<G> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut Vec<G>) {
        match self {
            GroupExpr::Gen(g, _) => out.push(*g),
            GroupExpr::Product(items) => items.iter().for_each(|i| i.collect_generators(out)),
            GroupExpr::Commutator(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
            GroupExpr::Inverse(a) | GroupExpr::Power(a, _) => a.collect_generators(out),
        }
    }

    /// Applies `f` to every generator.
    pub fn map_generators<H: Generator>(&self, f: &impl Fn(G) -> H) -> GroupExpr<H> {
        match self {
            GroupExpr::Gen(g, e) => GroupExpr::Gen(f(*g), *e),
            GroupExpr::Product(items) => {
                GroupExpr::Product(items.iter().map(|i| i.map_generators(f)).collect())
            }
            GroupExpr::Commutator(a, b) => {
                GroupExpr::commutator(a.map_generators(f), b.map_generators(f))
            }
            GroupExpr::Inverse(a) => GroupExpr::inverse_of(a.map_generators(f)),
            GroupExpr::Power(a, e) => GroupExpr::power(a.map_generators(f), *e),
        }
    }

    fn write_top(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Product(items) if items.len() >= 2 => {
                for (t, item) in items.iter().enumerate() {
                    if t > 0 {
                        f.write_str(" ")?;
                    }
                    item.write_term(f)?;
                }
                Ok(())
            }
            _ => self.write_term(f),
        }
    }

    fn write_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Gen(g, e) => {
                g.write_gen(f)?;
                if *e != 1 {
                    write!(f, "^{}", e)?;
                }
                Ok(())
            }
            GroupExpr::Commutator(a, b) => {
                f.write_str("[")?;
                a.write_top(f)?;
                f.write_str(",")?;
                b.write_top(f)?;
                f.write_str("]")
            }
            GroupExpr::Product(items) => {
                f.write_str("(")?;
                for (t, item) in items.iter().enumerate() {
                    if t > 0 {
                        f.write_str(" ")?;
                    }
                    item.write_term(f)?;
                }
                f.write_str(")")
            }
            GroupExpr::Inverse(a) => {
                a.write_power_base(f)?;
                f.write_str("^-1")
            }
            GroupExpr::Power(a, e) => {
                a.write_power_base(f)?;
                write!(f, "^{}", e)
            }
        }
    }

    fn write_power_base(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Commutator(..) | GroupExpr::Product(_) => self.write_term(f),
            _ => {
                f.write_str("(")?;
                self.write_term(f)?;
                f.write_str(")")
            }
        }
    }
}

/// Word syntax: juxtaposition for products, `[a,b]` for commutators,
/// `^k` for powers and `()` for the identity.
impl<G: Generator> fmt::Display for GroupExpr<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_top(f)
    }
}
