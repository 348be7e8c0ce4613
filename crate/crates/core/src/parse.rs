//! Text front end for elements and Kashiwara words.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | 'q' ['^' exp] | 'gam' ['^' exp] | 'gam(' int ['/2'] ')'
//!         | 'xm(' int ')' | 'Wpsi(' int ')' | '(' expr ')'
//! exp    := int | '(' int ['/' '2'] ')'
//! ```
//!
//! `q` and `gam` powers fold into the coefficient; `Wpsi` is only accepted in
//! word mode.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kashiwara::{k_act, KElement, KGen};
use crate::nq::Element;
use crate::scalar::{Rational, Scalar};

pub fn parse_element(text: &str) -> Result<Element> {
    let w = Parser::new(text, false).parse_all()?;
    Ok(k_act(&w, &Element::one()))
}

pub fn parse_word(text: &str) -> Result<KElement> {
    Parser::new(text, true).parse_all()
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let w = Parser::new(text, false).parse_all()?;
    let mut out = Scalar::zero();
    for (word, c) in w.terms() {
        if !word.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "expected a scalar".into(),
            });
        }
        out += c;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    words: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, words: bool) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            words,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.len();
        if self.src.get(self.pos..end) == Some(kw.as_bytes()) {
            let next = self.src.get(end).copied();
            if next.is_none_or(|c| !c.is_ascii_alphanumeric() && c != b'_') {
                self.pos = end;
                return true;
            }
        }
        false
    }

    fn parse_all(&mut self) -> Result<KElement> {
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let e = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<KElement> {
        let mut acc = KElement::zero();
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<KElement> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<KElement> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(KElement::scalar(Scalar::from_rational(r)))
            }
            Some(_) => {
                if self.keyword("xm") {
                    let n = self.paren_int()?;
                    Ok(KElement::gen(KGen::Xm(n)))
                } else if self.keyword("Wpsi") {
                    if !self.words {
                        return self.err("Wpsi is only allowed in words");
                    }
                    let k = self.paren_int()?;
                    Ok(KElement::gen(KGen::Wpsi(k)))
                } else if self.keyword("q") {
                    let h = if self.eat(b'^') { self.exponent()? } else { 2 };
                    Ok(KElement::scalar(Scalar::monomial(Rational::from_integer(1.into()), h, 0)))
                } else if self.keyword("gam") {
                    let h = if self.eat(b'^') || self.peek() == Some(b'(') {
                        self.exponent()?
                    } else {
                        2
                    };
                    Ok(KElement::scalar(Scalar::monomial(Rational::from_integer(1.into()), 0, h)))
                } else {
                    self.err("expected a factor")
                }
            }
        }
    }

    fn paren_int(&mut self) -> Result<i64> {
        self.expect(b'(')?;
        let n = self.int()?;
        self.expect(b')')?;
        Ok(n)
    }

    /// Returns the exponent in half-steps.
    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'(') {
            let n = self.int()?;
            let h = if self.eat(b'/') {
                let start = self.pos;
                let d = self.int()?;
                if d != 2 {
                    self.pos = start;
                    return self.err("exponent denominator must be 2");
                }
                n
            } else {
                2 * n
            };
            self.expect(b')')?;
            Ok(h)
        } else {
            Ok(2 * self.int()?)
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let start = self.pos;
        let d = self.digits()?;
        let v: i64 = match d.parse() {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.err("integer out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational> {
        let n: BigInt = self.digits()?.parse().expect("digits");
        if self.peek() == Some(b'/') && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let at = self.pos;
            let d: BigInt = self.digits()?.parse().expect("digits");
            if d == BigInt::from(0) {
                self.pos = at;
                return self.err("zero denominator");
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }
}
