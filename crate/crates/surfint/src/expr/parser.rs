//! Tokenizer and recursive-descent parser for the expression language.
//!
//! Grammar (binary operators are left-associative):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)*
//! exponent := ['-'] integer-literal
//! atom     := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```

use super::ast::{Ast, Func};
use super::ExprError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number '{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
        }
    }
}

/// Token plus the byte offset of its first character in the source.
type Spanned = (Tok, usize);

fn tokenize(src: &str) -> Result<Vec<Spanned>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let single = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, i));
            i += 1;
            continue;
        }
        match c {
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // Scientific notation: consume the 'e' only when an actual
                // exponent follows, so "2e" lexes as "2" then the ident "e".
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value = text.parse::<f64>().map_err(|_| ExprError::InvalidNumber {
                    pos: start,
                    text: text.to_string(),
                })?;
                out.push((Tok::Num(value), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            other => {
                return Err(ExprError::UnexpectedChar { pos: i, ch: other });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    cursor: usize,
    vars: &'a [String],
    src_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|(t, _)| t)
    }

    fn peek_pos(&self) -> usize {
        self.toks
            .get(self.cursor)
            .map_or(self.src_len, |(_, p)| *p)
    }

    fn advance(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn expect_rparen(&mut self, open_pos: usize) -> Result<(), ExprError> {
        match self.advance() {
            Some((Tok::RParen, _)) => Ok(()),
            Some((tok, pos)) => Err(ExprError::UnexpectedToken {
                pos,
                found: tok.describe(),
                expected: "')'",
            }),
            None => Err(ExprError::UnclosedParen { pos: open_pos }),
        }
    }

    fn parse_expr(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.parse_term()?;
        loop {
            if self.eat(&Tok::Plus) {
                let rhs = self.parse_term()?;
                lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(&Tok::Minus) {
                let rhs = self.parse_term()?;
                lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.parse_unary()?;
        loop {
            if self.eat(&Tok::Star) {
                let rhs = self.parse_unary()?;
                lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
            } else if self.eat(&Tok::Slash) {
                let rhs = self.parse_unary()?;
                lhs = Ast::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Ast, ExprError> {
        if self.eat(&Tok::Minus) {
            let inner = self.parse_unary()?;
            // Fold "-<literal>" into a negative constant so simple inputs
            // keep a one-node tree.
            if let Ast::Const(c) = inner {
                return Ok(Ast::Const(-c));
            }
            return Ok(Ast::Neg(Box::new(inner)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Ast, ExprError> {
        let mut base = self.parse_atom()?;
        while self.eat(&Tok::Caret) {
            let exponent = self.parse_exponent()?;
            base = Ast::Pow(Box::new(base), exponent);
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> Result<i32, ExprError> {
        let sign: i64 = if self.eat(&Tok::Minus) { -1 } else { 1 };
        match self.advance() {
            Some((Tok::Num(n), _)) if n.fract() == 0.0 && n.abs() <= f64::from(i32::MAX) => {
                Ok((sign * n as i64) as i32)
            }
            Some((_, pos)) => Err(ExprError::ExponentNotInteger { pos }),
            None => Err(ExprError::UnexpectedEnd {
                pos: self.src_len,
                expected: "an integer exponent",
            }),
        }
    }

    fn parse_atom(&mut self) -> Result<Ast, ExprError> {
        let (tok, pos) = match self.advance() {
            Some(sp) => sp,
            None => {
                return Err(ExprError::UnexpectedEnd {
                    pos: self.src_len,
                    expected: "a number, variable, function call, or '('",
                })
            }
        };
        match tok {
            Tok::Num(n) => Ok(Ast::Const(n)),
            Tok::LParen => {
                let inner = self.parse_expr()?;
                self.expect_rparen(pos)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if self.peek() == Some(&Tok::LParen) {
                    let open = self.peek_pos();
                    self.cursor += 1;
                    let func = Func::from_name(&name).ok_or(ExprError::UnknownFunction {
                        pos,
                        name: name.clone(),
                    })?;
                    let arg = self.parse_expr()?;
                    if self.peek() == Some(&Tok::Comma) {
                        return Err(ExprError::FunctionArity {
                            pos: self.peek_pos(),
                            name,
                        });
                    }
                    self.expect_rparen(open)?;
                    Ok(Ast::Call(func, Box::new(arg)))
                } else if let Some(index) = self.vars.iter().position(|v| *v == name) {
                    Ok(Ast::Var(index))
                } else {
                    Err(ExprError::UnknownVariable {
                        pos,
                        name,
                        available: self.vars.join(", "),
                    })
                }
            }
            tok => Err(ExprError::UnexpectedToken {
                pos,
                found: tok.describe(),
                expected: "a number, variable, function call, or '('",
            }),
        }
    }
}

/// Parses `src` against the given variable names, returning the tree.
pub fn parse(src: &str, vars: &[String]) -> Result<Ast, ExprError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ExprError::EmptyInput);
    }
    let mut parser = Parser {
        toks,
        cursor: 0,
        vars,
        src_len: src.len(),
    };
    let ast = parser.parse_expr()?;
    if let Some((tok, pos)) = parser.toks.get(parser.cursor) {
        return Err(ExprError::UnexpectedToken {
            pos: *pos,
            found: tok.describe(),
            expected: "end of expression",
        });
    }
    Ok(ast)
}
