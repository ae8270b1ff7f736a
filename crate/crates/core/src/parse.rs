//! Recursive descent parser for ordinal expressions.
//!
//! ```text
//! ordinal := term ("+" term)* | "0"
//! term    := "w" ["^" factor] ["*" nat] | nat        (nat >= 1 inside terms)
//! factor  := nat | "w" | "(" ordinal ")"
//! ```
//!
//! Whitespace is ignored. Only canonical forms are accepted: `w+w`, `1+w`
//! and `w*0` are rejected rather than normalized. Positions in errors are
//! character offsets into the original input.

use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, DEFAULT_MAX_DEPTH};

pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    parse_ordinal_with_depth(text, DEFAULT_MAX_DEPTH)
}

pub fn parse_ordinal_with_depth(text: &str, max_depth: usize) -> Result<Ordinal> {
    let tokens: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        tokens,
        at: 0,
        end: text.chars().count(),
        max_depth,
    };
    let out = p.ordinal(0)?;
    if let Some(&(pos, c)) = p.tokens.get(p.at) {
        return Err(Error::Syntax {
            pos,
            msg: format!("unexpected '{c}'"),
        });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, char)>,
    at: usize,
    end: usize,
    max_depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn syntax<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: match self.peek() {
                Some(c) => format!("{msg}, found '{c}'"),
                None => format!("{msg}, found end of input"),
            },
        })
    }

    fn ordinal(&mut self, depth: usize) -> Result<Ordinal> {
        let start = self.pos();
        if self.peek() == Some('0') {
            let n = self.nat()?;
            if n == 0 && !matches!(self.peek(), Some('+')) {
                return Ok(Ordinal::zero());
            }
            return Err(Error::Canonicity {
                pos: start,
                msg: "zero term inside a sum".into(),
            });
        }
        let mut terms = vec![(start, self.term(depth)?)];
        while self.eat('+') {
            let pos = self.pos();
            terms.push((pos, self.term(depth)?));
        }
        for w in terms.windows(2) {
            let ((_, (prev, _)), (pos, (exp, _))) = (&w[0], &w[1]);
            if exp >= prev {
                return Err(Error::Canonicity {
                    pos: *pos,
                    msg: format!("exponent {exp} does not decrease after {prev}"),
                });
            }
        }
        Ok(Ordinal::from_terms(terms.into_iter().map(|(_, t)| t))
            .expect("canonicity checked above"))
    }

    fn term(&mut self, depth: usize) -> Result<(Ordinal, u64)> {
        let start = self.pos();
        match self.peek() {
            Some('w') => {
                self.at += 1;
                let exponent = if self.eat('^') {
                    self.factor(depth)?
                } else {
                    Ordinal::nat(1)
                };
                let coefficient = if self.eat('*') {
                    let pos = self.pos();
                    let c = self.nat()?;
                    if c == 0 {
                        return Err(Error::Canonicity {
                            pos,
                            msg: "zero coefficient".into(),
                        });
                    }
                    c
                } else {
                    1
                };
                Ok((exponent, coefficient))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                if n == 0 {
                    return Err(Error::Canonicity {
                        pos: start,
                        msg: "zero term inside a sum".into(),
                    });
                }
                Ok((Ordinal::zero(), n))
            }
            _ => self.syntax("expected a term"),
        }
    }

    fn factor(&mut self, depth: usize) -> Result<Ordinal> {
        match self.peek() {
            Some('w') => {
                self.at += 1;
                Ok(Ordinal::omega())
            }
            Some('(') => {
                if depth + 1 > self.max_depth {
                    return Err(Error::DepthExceeded {
                        limit: self.max_depth,
                    });
                }
                self.at += 1;
                let inner = self.ordinal(depth + 1)?;
                if !self.eat(')') {
                    return self.syntax("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ => self.syntax("expected a number, 'w' or '('"),
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let pos = self.pos();
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d)))
                .ok_or_else(|| Error::Syntax {
                    pos,
                    msg: "number does not fit in 64 bits".into(),
                })?;
            digits += 1;
            self.at += 1;
        }
        if digits == 0 {
            return self.syntax("expected a number");
        }
        Ok(value)
    }
}
