//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+'|'-') term)* ;
//! term   := factor (('*'|'/') factor)* ;
//! factor := '-' factor | atom ('^' uint)? ;
//! atom   := number | 'i' | 'z' | ident '(' expr ')' | '(' expr ')' ;
//! ```
//!
//! A number written directly against `i` (`2.5i`) is read as an imaginary
//! literal.

use super::ast::{Expr, Func};
use super::ExprError;
use crate::ComplexValue;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos];
        let start = pos;
        let token = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' | b'.' => {
                let end = scan_number(bytes, pos);
                let lexeme = &text[pos..end];
                let value: f64 = lexeme.parse().map_err(|_| ExprError::Syntax {
                    pos,
                    msg: format!("malformed number `{lexeme}`"),
                })?;
                pos = end;
                let imag =
                    pos < bytes.len() && bytes[pos] == b'i' && !bytes.get(pos + 1).is_some_and(|b| is_ident_byte(*b));
                if imag {
                    pos += 1;
                    out.push((start, Token::Imag(value)));
                } else {
                    out.push((start, Token::Num(value)));
                }
                continue;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let mut end = pos;
                while end < bytes.len() && is_ident_byte(bytes[end]) {
                    end += 1;
                }
                out.push((start, Token::Ident(text[pos..end].to_string())));
                pos = end;
                continue;
            }
            _ => {
                return Err(ExprError::Syntax {
                    pos,
                    msg: format!("unexpected character `{}`", text[pos..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, token));
        pos += 1;
    }
    Ok(out)
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

fn scan_number(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
        pos += 1;
    }
    // exponent only when followed by digits, so `2e` stays an error downstream
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut k = pos + 1;
        if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
            k += 1;
        }
        if k < bytes.len() && bytes[k].is_ascii_digit() {
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            pos = k;
        }
    }
    pos
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.cursor).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        self.cursor += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ExprError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(ExprError::Syntax {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if let Some(Token::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Token::Num(k)) if k.fract() == 0.0 && k >= 0.0 && k <= u32::MAX as f64 => {
                    return Ok(Expr::Pow(Box::new(base), k as u32));
                }
                _ => {
                    return Err(ExprError::Syntax {
                        pos,
                        msg: "exponent must be a nonnegative integer literal".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Num(v)) => Ok(Expr::Num(ComplexValue::new(v, 0.0))),
            Some(Token::Imag(v)) => Ok(Expr::Num(ComplexValue::new(0.0, v))),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "z" => Ok(Expr::Var),
                "i" => Ok(Expr::Num(ComplexValue::new(0.0, 1.0))),
                _ => {
                    let func = Func::from_name(&name).ok_or(ExprError::UnknownIdentifier { name, pos })?;
                    self.expect(Token::LParen, "`(` after function name")?;
                    let arg = self.expr()?;
                    self.expect(Token::RParen, "`)`")?;
                    Ok(Expr::Call(func, Box::new(arg)))
                }
            },
            Some(_) => Err(ExprError::Syntax {
                pos,
                msg: "expected a number, `i`, `z`, a function call or `(`".into(),
            }),
            None => Err(ExprError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    if text.trim().is_empty() {
        return Err(ExprError::Empty);
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.cursor < parser.tokens.len() {
        return Err(ExprError::Syntax {
            pos: parser.pos(),
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_unary_minus() {
        let e = parse_expr("-z^2 + 3*z/2").unwrap();
        let z = ComplexValue::new(2.0, 0.0);
        assert_eq!(e.eval(z), ComplexValue::new(-4.0 + 3.0, 0.0));
    }

    #[test]
    fn imaginary_literals() {
        let e = parse_expr("2.5i + i").unwrap();
        assert_eq!(e.eval(ComplexValue::new(0.0, 0.0)), ComplexValue::new(0.0, 3.5));
        let e = parse_expr("1e-3").unwrap();
        assert_eq!(e.eval(ComplexValue::new(0.0, 0.0)).re, 1e-3);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_expr("   "), Err(ExprError::Empty));
        match parse_expr("z + ") {
            Err(ExprError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_expr("2*foo(z)") {
            Err(ExprError::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "foo");
                assert_eq!(pos, 2);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("z^1.5"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("z^-1"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("(z"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_expr("z z"), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("z # 1"), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("w"), Err(ExprError::UnknownIdentifier { .. })));
    }
}
