//! Recursive-descent parser for group expressions.
//!
//! ```text
//! expr := term { term }
//! term := atom [ '^' signed-int ]
//! atom := gen | '[' expr ',' expr ']' | '(' expr ')'
//! ```
//!
//! A top-level expression with one term is that term; any other
//! expression, and every parenthesized one, is a product. The printed form
//! of a parsed tree parses back to the same tree.

use std::fmt;

use linkhom_core::hlink::{HExpr, HLetter, Pair};
use linkhom_core::rf::{Generator, GroupExpr, RfExpr, MAX_RANK};

/// Where generator indices come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    /// `x1 .. xm` in the reduced free group of rank `m`.
    Rf(usize),
    /// `x12` or `x{i,j}` in `H(n)`.
    HLink(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(
                self.pos,
                format!("expected '{}', found '{}'", c as char, d as char),
            ),
            None => self.err(
                self.pos,
                format!("expected '{}', found end of input", c as char),
            ),
        }
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Unsigned integer with optional surrounding whitespace.
    fn uint(&mut self) -> PResult<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return self.err(start, "expected an index");
        }
        let v = std::str::from_utf8(d)
            .expect("ascii digits")
            .parse::<usize>()
            .or_else(|_| self.err(start, "index too large"))?;
        Ok((v, start))
    }

    fn signed_int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let at = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return self.err(at, "expected an integer exponent");
        }
        let text = std::str::from_utf8(d).expect("ascii digits");
        let magnitude: i128 = text
            .parse()
            .or_else(|_| self.err(start, "exponent out of range"))?;
        let v = if neg { -magnitude } else { magnitude };
        i64::try_from(v).or_else(|_| self.err(start, "exponent out of range"))
    }
}

trait Gen: Sized {
    fn parse_gen(p: &mut Parser<'_>, ctx: Context) -> PResult<Self>;
}

impl Gen for u8 {
    fn parse_gen(p: &mut Parser<'_>, ctx: Context) -> PResult<u8> {
        let Context::Rf(m) = ctx else {
            unreachable!("rank context required")
        };
        let start = p.pos;
        let d = p.digits();
        if d.is_empty() {
            return p.err(p.pos, "expected a generator index after 'x'");
        }
        let i: usize = std::str::from_utf8(d)
            .expect("ascii digits")
            .parse()
            .unwrap_or(usize::MAX);
        if i == 0 || i > m {
            return p.err(start, format!("generator index {} outside 1..={}", i, m));
        }
        Ok(i as u8)
    }
}

impl Gen for Pair {
    fn parse_gen(p: &mut Parser<'_>, ctx: Context) -> PResult<Pair> {
        let Context::HLink(n) = ctx else {
            unreachable!("component context required")
        };
        let start = p.pos;
        let (i, j) = if p.src.get(p.pos) == Some(&b'{') {
            p.pos += 1;
            let (i, _) = p.uint()?;
            p.expect(b',')?;
            let (j, _) = p.uint()?;
            p.expect(b'}')?;
            (i, j)
        } else {
            let d = p.digits();
            if d.len() != 2 {
                return p.err(start, "expected two digits or x{i,j}");
            }
            if n > 9 {
                return p.err(start, "use the braced form x{i,j} when n > 9");
            }
            ((d[0] - b'0') as usize, (d[1] - b'0') as usize)
        };
        if i == 0 || j > n || i >= j {
            return p.err(
                start,
                format!("generator x{{{},{}}} needs 1 <= i < j <= {}", i, j, n),
            );
        }
        Ok(Pair(i as u8, j as u8))
    }
}

fn parse_expr<G: Gen + linkhom_core::rf::Generator>(
    p: &mut Parser<'_>,
    ctx: Context,
    depth: usize,
) -> PResult<Vec<GroupExpr<G>>> {
    if depth > 256 {
        return p.err(p.pos, "expression nested too deeply");
    }
    let mut terms = Vec::new();
    loop {
        match p.peek() {
            Some(b'x') | Some(b'[') | Some(b'(') => terms.push(parse_term(p, ctx, depth)?),
            _ => return Ok(terms),
        }
    }
}

fn parse_term<G: Gen + linkhom_core::rf::Generator>(
    p: &mut Parser<'_>,
    ctx: Context,
    depth: usize,
) -> PResult<GroupExpr<G>> {
    let atom = match p.peek() {
        Some(b'x') => {
            p.pos += 1;
            GroupExpr::Gen(G::parse_gen(p, ctx)?, 1)
        }
        Some(b'[') => {
            p.pos += 1;
            let a = collapse(parse_expr(p, ctx, depth + 1)?);
            p.expect(b',')?;
            let b = collapse(parse_expr(p, ctx, depth + 1)?);
            p.expect(b']')?;
            GroupExpr::Commutator(Box::new(a), Box::new(b))
        }
        Some(b'(') => {
            p.pos += 1;
            let items = parse_expr(p, ctx, depth + 1)?;
            p.expect(b')')?;
            GroupExpr::Product(items)
        }
        _ => unreachable!("caller checked the first byte"),
    };
    if p.peek() != Some(b'^') {
        return Ok(atom);
    }
    p.pos += 1;
    let e = p.signed_int()?;
    Ok(match atom {
        GroupExpr::Gen(g, 1) => GroupExpr::Gen(g, e),
        other => GroupExpr::Power(Box::new(other), e),
    })
}

fn collapse<G>(mut terms: Vec<GroupExpr<G>>) -> GroupExpr<G> {
    if terms.len() == 1 {
        terms.pop().expect("one term")
    } else {
        GroupExpr::Product(terms)
    }
}

fn parse_all<G: Gen + linkhom_core::rf::Generator>(
    text: &str,
    ctx: Context,
) -> PResult<GroupExpr<G>> {
    let mut p = Parser::new(text);
    let terms = parse_expr(&mut p, ctx, 0)?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected '{}'", c as char));
    }
    Ok(collapse(terms))
}

fn check_size(size: usize, what: &str) -> PResult<()> {
    if size == 0 || size > MAX_RANK {
        return Err(ParseError {
            offset: 0,
            message: format!("{} must be in 1..={}, got {}", what, MAX_RANK, size),
        });
    }
    Ok(())
}

/// Parses an expression over `x1 .. xm`.
pub fn parse_rf(text: &str, m: usize) -> PResult<RfExpr> {
    check_size(m, "rank")?;
    parse_all(text, Context::Rf(m))
}

/// Parses an expression over the generators `x_{ij}` of `H(n)`.
pub fn parse_hlink(text: &str, n: usize) -> PResult<HExpr> {
    check_size(n, "component count")?;
    parse_all(text, Context::HLink(n))
}

/// A pair that always prints as `x{i,j}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Braced(Pair);

impl Generator for Braced {
    fn write_gen(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{{{},{}}}", self.0 .0, self.0 .1)
    }
}

/// Prints an expression so that [`parse_hlink`] with the same `n` reads it
/// back.
pub fn format_hlink(e: &HExpr, n: usize) -> String {
    if n <= 9 {
        e.to_string()
    } else {
        e.map_generators(&Braced).to_string()
    }
}

/// [`format_hlink`] for a word.
pub fn format_hword(w: &[HLetter], n: usize) -> String {
    format_hlink(&HExpr::from_word(w), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u8, j: u8) -> HExpr {
        HExpr::gen(Pair(i, j))
    }

    #[test]
    fn products_of_powers() {
        let e = parse_hlink("x12 x13^-1", 3).unwrap();
        assert_eq!(e, HExpr::Product(vec![x(1, 2), HExpr::Gen(Pair(1, 3), -1)]));
    }

    #[test]
    fn commutator_power() {
        let e = parse_hlink("[x13,x12]^3", 3).unwrap();
        assert_eq!(e, HExpr::power(HExpr::commutator(x(1, 3), x(1, 2)), 3));
    }

    #[test]
    fn dangling_caret_reports_end_offset() {
        let err = parse_hlink("x12^", 2).unwrap_err();
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn braced_and_juxtaposed_forms() {
        assert_eq!(parse_hlink("x{1, 2}", 3).unwrap(), x(1, 2));
        assert_eq!(parse_hlink("x{10,12}", 12).unwrap(), x(10, 12));
        let err = parse_hlink("x12", 10).unwrap_err();
        assert!(err.message.contains("braced"));
        assert!(parse_hlink("x21", 3).is_err());
        let e = parse_hlink("x{2,3} [x{1,11},x{3,4}]", 11).unwrap();
        assert_eq!(format_hlink(&e, 11), "x{2,3} [x{1,11},x{3,4}]");
        assert_eq!(parse_hlink(&format_hlink(&e, 11), 11).unwrap(), e);
        assert!(parse_hlink("x14", 3).is_err());
    }

    #[test]
    fn rank_context_indices() {
        let e = parse_rf("x1 x12^2", 12).unwrap();
        assert_eq!(e, RfExpr::Product(vec![RfExpr::gen(1), RfExpr::Gen(12, 2)]));
        assert_eq!(parse_rf("x4", 3).unwrap_err().offset, 1);
        assert_eq!(parse_rf("x", 3).unwrap_err().offset, 1);
    }

    #[test]
    fn identity_and_whitespace() {
        assert_eq!(parse_rf("", 2).unwrap(), RfExpr::Product(vec![]));
        assert_eq!(parse_rf("()", 2).unwrap(), RfExpr::Product(vec![]));
        assert_eq!(
            parse_rf(" [ x1 , x2 ] ^ - 2 ", 2).unwrap(),
            RfExpr::power(RfExpr::commutator(RfExpr::gen(1), RfExpr::gen(2)), -2)
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(parse_rf("[x1 x2]", 2).unwrap_err().offset, 6);
        assert_eq!(parse_rf("(x1", 2).unwrap_err().offset, 3);
        assert_eq!(parse_rf("x1 ]", 2).unwrap_err().offset, 3);
        assert!(parse_rf("x1^99999999999999999999", 2).is_err());
    }
}
