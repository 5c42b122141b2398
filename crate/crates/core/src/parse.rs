//! Text syntax for scalars, operators, differential polynomials and
//! parametrizations.
//!
//! One grammar serves all kinds; the parsed tree is then evaluated in the
//! requested domain.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exponent)?
//! atom  := integer | 't' | 'D' | var | '(' expr (',' expr)* ')'
//! var   := ('x' | 'y' | 'u') ("'"* | '^(' integer ')')
//! ```

use num::{BigInt, BigRational, ToPrimitive, Zero};

use crate::diffpoly::{DerivVar, DiffPoly, Indet};
use crate::error::{Error, Result};
use crate::ore::OreOp;
use crate::scalar::ScalarRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseOptions {
    /// When false the ground field is `Q` and `t` is rejected.
    pub allow_t: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { allow_t: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(char),
    Prime,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    offset: usize,
    text: String,
}

fn syntax(offset: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        token: token.to_string(),
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                chars.next();
            }
            let text = &src[i..end];
            out.push(Token {
                tok: Tok::Int(text.parse().expect("digits")),
                offset: i,
                text: text.to_string(),
            });
            continue;
        }
        let tok = match ch {
            't' | 'D' | 'x' | 'y' | 'u' => Tok::Ident(ch),
            '\'' => Tok::Prime,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => return Err(syntax(i, &ch.to_string(), "unexpected character")),
        };
        out.push(Token {
            tok,
            offset: i,
            text: ch.to_string(),
        });
        chars.next();
    }
    out.push(Token {
        tok: Tok::End,
        offset: src.len(),
        text: "end of input".into(),
    });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Int(BigInt),
    T,
    D,
    Var(DerivVar),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Tuple(Vec<Expr>),
}

#[derive(Clone, Debug)]
struct Expr {
    node: Node,
    offset: usize,
    text: String,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        let t = self.bump();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(syntax(t.offset, &t.text, format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = self.peek().clone();
            let build: fn(Box<Expr>, Box<Expr>) -> Node = match op.tok {
                Tok::Plus => Node::Add,
                Tok::Minus => Node::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr {
                node: build(Box::new(lhs), Box::new(rhs)),
                offset: op.offset,
                text: op.text,
            };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = self.peek().clone();
            let build: fn(Box<Expr>, Box<Expr>) -> Node = match op.tok {
                Tok::Star => Node::Mul,
                Tok::Slash => Node::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr {
                node: build(Box::new(lhs), Box::new(rhs)),
                offset: op.offset,
                text: op.text,
            };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            let op = self.bump();
            let inner = self.unary()?;
            return Ok(Expr {
                node: Node::Neg(Box::new(inner)),
                offset: op.offset,
                text: op.text,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let e = self.small_int("exponent")?;
        Ok(Expr {
            node: Node::Pow(Box::new(base), e),
            offset: caret.offset,
            text: caret.text,
        })
    }

    /// A nonnegative integer, optionally parenthesized.
    fn small_int(&mut self, what: &str) -> Result<u32> {
        let paren = self.peek().tok == Tok::LParen;
        if paren {
            self.bump();
        }
        let t = self.bump();
        let value = match &t.tok {
            Tok::Int(n) => n
                .to_u32()
                .ok_or_else(|| syntax(t.offset, &t.text, format!("{what} too large")))?,
            Tok::Minus => {
                return Err(syntax(
                    t.offset,
                    &t.text,
                    format!("{what} must be a nonnegative integer"),
                ))
            }
            _ => return Err(syntax(t.offset, &t.text, format!("expected {what}"))),
        };
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.bump();
        let node = match &t.tok {
            Tok::Int(n) => Node::Int(n.clone()),
            Tok::Ident('t') => Node::T,
            Tok::Ident('D') => Node::D,
            Tok::Ident(c) => {
                let indet = Indet::from_name(&c.to_string()).expect("lexer admits x, y, u");
                let mut order = 0usize;
                while self.peek().tok == Tok::Prime {
                    self.bump();
                    order += 1;
                }
                let suffix = order == 0
                    && self.peek().tok == Tok::Caret
                    && self.toks[self.pos + 1].tok == Tok::LParen;
                if suffix {
                    self.bump();
                    order = self.small_int("derivative order")? as usize;
                }
                Node::Var(DerivVar::new(indet, order))
            }
            Tok::LParen => {
                let mut items = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    items.push(self.expr()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                if items.len() == 1 {
                    return Ok(items.pop().unwrap());
                }
                Node::Tuple(items)
            }
            Tok::Prime => return Err(syntax(t.offset, &t.text, "prime must follow x, y or u")),
            _ => return Err(syntax(t.offset, &t.text, "expected an operand")),
        };
        Ok(Expr {
            node,
            offset: t.offset,
            text: t.text,
        })
    }
}

fn parse_tree(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.offset, &t.text, "unexpected trailing input"));
    }
    Ok(e)
}

fn not_allowed(e: &Expr, what: &str) -> Error {
    syntax(e.offset, &e.text, format!("{what} not allowed here"))
}

fn int_scalar(n: &BigInt) -> ScalarRat {
    ScalarRat::from_rational(BigRational::from_integer(n.clone()))
}

fn eval_scalar(e: &Expr, opts: ParseOptions) -> Result<ScalarRat> {
    Ok(match &e.node {
        Node::Int(n) => int_scalar(n),
        Node::T if opts.allow_t => ScalarRat::t(),
        Node::T => return Err(not_allowed(e, "`t` (field is Q)")),
        Node::D => return Err(not_allowed(e, "`D`")),
        Node::Var(_) => return Err(not_allowed(e, "a differential indeterminate")),
        Node::Tuple(_) => return Err(not_allowed(e, "a tuple")),
        Node::Neg(a) => -eval_scalar(a, opts)?,
        Node::Add(a, b) => eval_scalar(a, opts)? + eval_scalar(b, opts)?,
        Node::Sub(a, b) => eval_scalar(a, opts)? - eval_scalar(b, opts)?,
        Node::Mul(a, b) => eval_scalar(a, opts)? * eval_scalar(b, opts)?,
        Node::Div(a, b) => eval_scalar(a, opts)?.checked_div(&eval_scalar(b, opts)?)?,
        Node::Pow(a, k) => eval_scalar(a, opts)?.pow(*k),
    })
}

fn eval_op(e: &Expr, opts: ParseOptions) -> Result<OreOp> {
    Ok(match &e.node {
        Node::Int(_) | Node::T => OreOp::scalar(eval_scalar(e, opts)?),
        Node::D => OreOp::d(),
        Node::Var(_) => return Err(not_allowed(e, "a differential indeterminate")),
        Node::Tuple(_) => return Err(not_allowed(e, "a tuple")),
        Node::Neg(a) => -eval_op(a, opts)?,
        Node::Add(a, b) => eval_op(a, opts)? + eval_op(b, opts)?,
        Node::Sub(a, b) => eval_op(a, opts)? - eval_op(b, opts)?,
        Node::Mul(a, b) => eval_op(a, opts)? * eval_op(b, opts)?,
        Node::Div(a, b) => {
            let den = eval_op(b, opts)?;
            if den.degree().is_some_and(|k| k > 0) {
                return Err(syntax(
                    e.offset,
                    &e.text,
                    "can only divide an operator by a scalar",
                ));
            }
            let inv = den.coeff(0).inv()?;
            eval_op(a, opts)?.scale_right(&inv)
        }
        Node::Pow(a, k) => {
            let base = eval_op(a, opts)?;
            let mut acc = OreOp::one();
            for _ in 0..*k {
                acc = &acc * &base;
            }
            acc
        }
    })
}

type Frac = (DiffPoly, DiffPoly);

/// Moves a ground-field denominator into the numerator.
fn fold(n: DiffPoly, d: DiffPoly) -> Result<Frac> {
    match d.constant_value() {
        Some(c) => Ok((n.scale(&c.inv()?), DiffPoly::one())),
        None => Ok((n, d)),
    }
}

fn eval_frac(e: &Expr, opts: ParseOptions) -> Result<Frac> {
    let one = DiffPoly::one;
    match &e.node {
        Node::Int(_) | Node::T => Ok((DiffPoly::constant(eval_scalar(e, opts)?), one())),
        Node::Var(v) => Ok((DiffPoly::var(*v), one())),
        Node::D => Err(not_allowed(e, "`D`")),
        Node::Tuple(_) => Err(not_allowed(e, "a tuple")),
        Node::Neg(a) => {
            let (n, d) = eval_frac(a, opts)?;
            Ok((-n, d))
        }
        Node::Add(a, b) | Node::Sub(a, b) => {
            let (an, ad) = eval_frac(a, opts)?;
            let (mut bn, bd) = eval_frac(b, opts)?;
            if matches!(e.node, Node::Sub(..)) {
                bn = -bn;
            }
            if ad == bd {
                return fold(&an + &bn, ad);
            }
            fold(&(&an * &bd) + &(&bn * &ad), &ad * &bd)
        }
        Node::Mul(a, b) => {
            let (an, ad) = eval_frac(a, opts)?;
            let (bn, bd) = eval_frac(b, opts)?;
            fold(&an * &bn, &ad * &bd)
        }
        Node::Div(a, b) => {
            let (an, ad) = eval_frac(a, opts)?;
            let (bn, bd) = eval_frac(b, opts)?;
            if bn.is_zero() {
                return Err(Error::DivisionByZero);
            }
            fold(&an * &bd, &ad * &bn)
        }
        Node::Pow(a, k) => {
            let (n, d) = eval_frac(a, opts)?;
            Ok((n.pow(*k), d.pow(*k)))
        }
    }
}

pub fn parse_scalar(src: &str, opts: ParseOptions) -> Result<ScalarRat> {
    eval_scalar(&parse_tree(src)?, opts)
}

/// Operators in `D`, e.g. `t*D^2 + (t+1)*D + 1`. Juxtaposition is the
/// noncommutative product.
pub fn parse_operator(src: &str, opts: ParseOptions) -> Result<OreOp> {
    eval_op(&parse_tree(src)?, opts)
}

/// A differential polynomial; division is allowed only by ground-field
/// elements.
pub fn parse_diffpoly(src: &str, opts: ParseOptions) -> Result<DiffPoly> {
    let tree = parse_tree(src)?;
    let (n, d) = eval_frac(&tree, opts)?;
    if d != DiffPoly::one() {
        return Err(syntax(
            tree.offset,
            &tree.text,
            "expected a polynomial, found a fraction",
        ));
    }
    Ok(n)
}

/// A differential rational function as an unreduced
/// (numerator, denominator) pair, e.g. `(u''+1)/u`.
pub fn parse_fraction(src: &str, opts: ParseOptions) -> Result<Frac> {
    eval_frac(&parse_tree(src)?, opts)
}

/// A parametrization `(P1/Q1, P2/Q2)`.
pub fn parse_param(src: &str, opts: ParseOptions) -> Result<(Frac, Frac)> {
    let tree = parse_tree(src)?;
    match &tree.node {
        Node::Tuple(items) if items.len() == 2 => {
            Ok((eval_frac(&items[0], opts)?, eval_frac(&items[1], opts)?))
        }
        _ => Err(syntax(
            tree.offset,
            &tree.text,
            "expected a pair `(x(u), y(u))`",
        )),
    }
}

/// Whether `s` parses as the integer zero; used for quick input checks.
pub fn is_zero_literal(s: &str) -> bool {
    matches!(parse_tree(s).map(|e| e.node), Ok(Node::Int(n)) if n.is_zero())
}
