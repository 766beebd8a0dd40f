use num_bigint::BigInt;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

pub(crate) fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line: pos.line, col: pos.col, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Punct(char),
    Eof,
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if "+-*/^(){},".contains(c) {
            i += 1;
            out.push((Tok::Punct(c), pos));
        } else {
            return err(pos, format!("unexpected character {c:?}"));
        }
        col += i - start;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A call argument: an index name, an integer literal or a field name.
#[derive(Clone, Debug, PartialEq)]
pub struct Arg {
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt, Pos),
    Name(String, Pos),
    Call(String, Vec<Arg>, Pos),
    Neg(Box<Expr>, Pos),
    Bin(BinOp, Box<Expr>, Box<Expr>, Pos),
    /// Exponent `num/den` with `den > 0`.
    Pow(Box<Expr>, i64, i64, Pos),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Int(_, p) | Expr::Name(_, p) | Expr::Call(_, _, p) | Expr::Neg(_, p) | Expr::Bin(_, _, _, p) | Expr::Pow(_, _, _, p) => *p,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub order: i32,
    pub body: Option<Expr>,
    pub pos: Pos,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    fn expect(&mut self, c: char) -> Result<Pos> {
        if self.is(c) {
            Ok(self.bump().1)
        } else {
            err(self.pos(), format!("expected '{c}', found {}", describe(self.peek())))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.is('-');
        if neg {
            self.bump();
        }
        match self.bump() {
            (Tok::Int(v), p) => {
                let v: i64 = v.try_into().map_err(|_| Error::Parse { line: p.line, col: p.col, msg: "integer too large".into() })?;
                Ok(if neg { -v } else { v })
            }
            (t, p) => err(p, format!("expected an integer, found {}", describe(&t))),
        }
    }

    fn blocks(&mut self) -> Result<Vec<Block>> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            let pos = self.pos();
            match self.bump() {
                (Tok::Ident(k), _) if k == "order" => {}
                (t, p) => return err(p, format!("expected 'order', found {}", describe(&t))),
            }
            let order = self.int()?;
            let order = i32::try_from(order).map_err(|_| Error::Parse { line: pos.line, col: pos.col, msg: "order out of range".into() })?;
            self.expect('{')?;
            let body = if self.is('}') { None } else { Some(self.expr()?) };
            self.expect('}')?;
            out.push(Block { order, body, pos });
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Punct('+') => BinOp::Add,
                Tok::Punct('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let pos = self.bump().1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), pos);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Punct('*') => BinOp::Mul,
                Tok::Punct('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            let pos = self.bump().1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), pos);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.is('-') {
            let pos = self.bump().1;
            return Ok(Expr::Neg(Box::new(self.unary()?), pos));
        }
        if self.is('+') {
            self.bump();
            return self.unary();
        }
        let base = self.primary()?;
        if !self.is('^') {
            return Ok(base);
        }
        let pos = self.bump().1;
        let (num, den) = if self.is('(') {
            self.bump();
            let num = self.int()?;
            let den = if self.is('/') {
                self.bump();
                self.int()?
            } else {
                1
            };
            self.expect(')')?;
            if den <= 0 {
                return err(pos, "exponent denominator must be positive");
            }
            (num, den)
        } else {
            (self.int()?, 1)
        };
        Ok(Expr::Pow(Box::new(base), num, den, pos))
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.bump() {
            (Tok::Int(v), p) => Ok(Expr::Int(v, p)),
            (Tok::Punct('('), _) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            (Tok::Ident(name), p) => {
                if !self.is('(') {
                    return Ok(Expr::Name(name, p));
                }
                self.bump();
                let mut args = Vec::new();
                loop {
                    let (t, ap) = self.bump();
                    let text = match t {
                        Tok::Ident(s) => s,
                        Tok::Int(v) => v.to_string(),
                        t => return err(ap, format!("expected an argument, found {}", describe(&t))),
                    };
                    args.push(Arg { text, pos: ap });
                    if self.is(',') {
                        self.bump();
                        continue;
                    }
                    self.expect(')')?;
                    break;
                }
                Ok(Expr::Call(name, args, p))
            }
            (t, p) => err(p, format!("expected an expression, found {}", describe(&t))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer {v}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Punct(c) => format!("'{c}'"),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a symbol file into its `order k { ... }` blocks.
pub fn parse_blocks(src: &str) -> Result<Vec<Block>> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    p.blocks()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_precedence() {
        let b = parse_blocks("# c\norder -2 {\n  -a*b^2 + c }").unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].order, -2);
        assert_eq!(b[0].pos, Pos { line: 2, col: 1 });
        match b[0].body.as_ref().unwrap() {
            Expr::Bin(BinOp::Add, l, _, p) => {
                assert_eq!(*p, Pos { line: 3, col: 10 });
                // unary minus binds tighter than '*'
                match &**l {
                    Expr::Bin(BinOp::Mul, a, b, _) => {
                        assert!(matches!(**a, Expr::Neg(..)));
                        assert!(matches!(**b, Expr::Pow(_, 2, 1, _)));
                    }
                    other => panic!("{other:?}"),
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_blocks("order 1 {\n  V(j) * }").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, col: 10, msg: "expected an expression, found '}'".into() });
        assert!(matches!(parse_blocks("order 1 { $ }"), Err(Error::Parse { line: 1, col: 11, .. })));
        assert!(matches!(parse_blocks("degree 1 {}"), Err(Error::Parse { line: 1, col: 1, .. })));
    }

    #[test]
    fn fractional_exponents() {
        let b = parse_blocks("order 0 { PI^(3/2) * normxi2inv^(-1) }").unwrap();
        match b[0].body.as_ref().unwrap() {
            Expr::Bin(BinOp::Mul, l, r, _) => {
                assert!(matches!(**l, Expr::Pow(_, 3, 2, _)));
                assert!(matches!(**r, Expr::Pow(_, -1, 1, _)));
            }
            other => panic!("{other:?}"),
        }
    }
}
