//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expression  := ['+'|'-'] term (('+'|'-') term)*
//! term        := factor ('*'? factor)*
//! factor      := coefficient | variable ('^' uint)? | '(' expression ')' ('^' uint)?
//! coefficient := int ('/' uint)?
//! ```

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::poly2::Poly2;
use super::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier '{name}' at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
}

impl ParseError {
    /// The offending token or position, for diagnostics.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::ZeroDenominator { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("'{n}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|(_, c)| *c).collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            let name: String = chars[start..k].iter().map(|(_, c)| *c).collect();
            out.push((Tok::Ident(name), pos));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(ParseError::Syntax { pos, msg: format!("unexpected character '{c}'") });
            }
        };
        out.push((t, pos));
        k += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: [&'a str; 2],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            msg: format!("expected {wanted}, found {}", describe(self.peek())),
        }
    }

    fn expression(&mut self) -> Result<Poly2, ParseError> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                -self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if *self.peek() != Tok::Caret {
            return Ok(None);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(n) => n
                .try_into()
                .map(Some)
                .map_err(|_| ParseError::Syntax { pos, msg: "exponent too large".into() }),
            t => Err(ParseError::Syntax {
                pos,
                msg: format!("expected exponent, found {}", describe(&t)),
            }),
        }
    }

    fn factor(&mut self) -> Result<Poly2, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut value = Rat::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump().0 {
                        Tok::Int(d) if d.is_zero() => {
                            return Err(ParseError::ZeroDenominator { pos: dpos })
                        }
                        Tok::Int(d) => value /= Rat::from_integer(d),
                        t => {
                            return Err(ParseError::Syntax {
                                pos: dpos,
                                msg: format!("expected denominator, found {}", describe(&t)),
                            })
                        }
                    }
                }
                Ok(Poly2::constant(value))
            }
            Tok::Ident(name) => {
                self.bump();
                let base = if name == self.vars[0] {
                    Poly2::x()
                } else if name == self.vars[1] {
                    Poly2::y()
                } else {
                    return Err(ParseError::UnknownIdentifier { name, pos });
                };
                Ok(match self.exponent()? {
                    Some(e) => base.pow(e),
                    None => base,
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expression()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(match self.exponent()? {
                    Some(e) => inner.pow(e),
                    None => inner,
                })
            }
            _ => Err(self.unexpected("a number, variable or '('")),
        }
    }
}

/// Parse `src` as a polynomial in the two named variables.
pub fn parse_polynomial(src: &str, vars: [&str; 2]) -> Result<Poly2, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, vars };
    let out = p.expression()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(out)
}
