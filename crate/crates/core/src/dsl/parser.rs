//! Recursive-descent parser for curve component expressions.
//!
//! Precedence, tightest first: unary minus, `^`, `*` `/`, `+` `-`.
//! The exponent of `^` must be a non-negative integer literal. The only
//! variable is `t`; `pi` is accepted as a named constant.

use std::fmt;

use crate::series::Elementary;

use super::expr::Expr;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown function `{name}` at offset {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("function `{name}` at offset {offset} takes 1 argument, got {found}")]
    Arity { name: String, offset: usize, found: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownFunction { offset, .. }
            | ParseError::Arity { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Returns the next token and its starting offset.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == '.' {
            let bytes = rest.as_bytes();
            let mut i = 0;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &rest[..i];
            let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                offset: start,
                expected: vec!["number".into()],
                found: format!("`{text}`"),
            })?;
            self.pos += i;
            return Ok((Tok::Num(v), start));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            self.pos += len;
            return Ok((Tok::Ident(rest[..len].to_string()), start));
        }
        if "+-*/^(),".contains(c) {
            self.pos += 1;
            return Ok((Tok::Sym(c), start));
        }
        Err(ParseError::Syntax {
            offset: start,
            expected: vec!["expression".into()],
            found: format!("`{c}`"),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, offset) = lexer.next()?;
        Ok(Parser { lexer, tok, offset })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, offset) = self.lexer.next()?;
        self.tok = tok;
        self.offset = offset;
        Ok(())
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.tok.to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.tok == Tok::Sym(c) {
            self.bump()
        } else {
            Err(self.error(&[&format!("\"{c}\"")]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.tok {
                Tok::Sym('+') => {
                    self.bump()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        loop {
            match self.tok {
                Tok::Sym('*') => {
                    self.bump()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Tok::Sym('/') => {
                    self.bump()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.unary()?;
        while self.tok == Tok::Sym('^') {
            self.bump()?;
            match self.tok {
                Tok::Num(v) if v.fract() == 0.0 && v >= 0.0 && v <= u32::MAX as f64 => {
                    self.bump()?;
                    base = Expr::Pow(Box::new(base), v as u32);
                }
                _ => return Err(self.error(&["non-negative integer exponent"])),
            }
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Sym('-') {
            self.bump()?;
            if let Tok::Num(v) = self.tok {
                self.bump()?;
                return Ok(Expr::Const(-v));
            }
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expr::Const(v))
            }
            Tok::Sym('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.offset;
                self.bump()?;
                if self.tok == Tok::Sym('(') {
                    return self.call(name, at);
                }
                match name.as_str() {
                    "t" => Ok(Expr::Var),
                    "pi" => Ok(Expr::Const(std::f64::consts::PI)),
                    _ => Err(ParseError::Syntax {
                        offset: at,
                        expected: vec!["`t`".into(), "`pi`".into(), "function call".into()],
                        found: format!("`{name}`"),
                    }),
                }
            }
            _ => Err(self.error(&["number", "`t`", "\"(\"", "function call"])),
        }
    }

    fn call(&mut self, name: String, at: usize) -> Result<Expr, ParseError> {
        // Current token is "(".
        self.bump()?;
        let mut args = Vec::new();
        if self.tok != Tok::Sym(')') {
            args.push(self.expr()?);
            while self.tok == Tok::Sym(',') {
                self.bump()?;
                args.push(self.expr()?);
            }
        }
        self.expect(')')?;
        let func = Elementary::from_name(&name).ok_or(ParseError::UnknownFunction {
            name: name.clone(),
            offset: at,
        })?;
        if args.len() != 1 {
            return Err(ParseError::Arity {
                name,
                offset: at,
                found: args.len(),
            });
        }
        Ok(Expr::Call(func, Box::new(args.pop().unwrap())))
    }
}

/// Parses a single expression in `t`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn call() {
        assert_eq!(parse("cos(t)").unwrap(), Expr::Call(Elementary::Cos, b(Expr::Var)));
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("1 - t^2/2").unwrap(),
            Expr::Sub(
                b(Expr::Const(1.0)),
                b(Expr::Div(b(Expr::Pow(b(Expr::Var), 2)), b(Expr::Const(2.0))))
            )
        );
        // Unary minus binds tighter than `^`.
        assert_eq!(parse("-t^2").unwrap(), Expr::Pow(b(Expr::Neg(b(Expr::Var))), 2));
        assert_eq!(parse("2*t+1").unwrap(), parse(" 2 * t + 1 ").unwrap());
    }

    #[test]
    fn unbalanced_paren() {
        match parse("cos(t") {
            Err(ParseError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 5);
                assert_eq!(expected, vec!["\")\"".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_function_and_arity() {
        assert!(matches!(
            parse("tan(t)"),
            Err(ParseError::UnknownFunction { offset: 0, .. })
        ));
        assert!(matches!(
            parse("1 + sin(t, t)"),
            Err(ParseError::Arity {
                offset: 4,
                found: 2,
                ..
            })
        ));
        assert!(matches!(parse("exp()"), Err(ParseError::Arity { found: 0, .. })));
    }

    #[test]
    fn bad_exponents_and_variables() {
        assert!(parse("t^2.5").is_err());
        assert!(parse("t^-1").is_err());
        assert!(matches!(parse("x + 1"), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse("t t"), Err(ParseError::Syntax { offset: 2, .. })));
    }

    #[test]
    fn numbers() {
        assert_eq!(parse("1.5e-3").unwrap(), Expr::Const(1.5e-3));
        assert_eq!(parse("-2").unwrap(), Expr::Const(-2.0));
        assert_eq!(parse(".25").unwrap(), Expr::Const(0.25));
        assert_eq!(parse("2*pi").unwrap().eval(0.0), std::f64::consts::TAU);
    }
}
