use num_bigint::BigInt;

use crate::arith::Rational;
use crate::error::{Error, Result};

use super::ast::{CoeffExpr, Param, Relation, Side, Term, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = chars.get(j).map_or(src.len(), |c| c.0);
            out.push(Token {
                tok: Tok::Num(src[pos..end].parse().expect("digits")),
                pos,
            });
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let end = chars.get(j).map_or(src.len(), |c| c.0);
            out.push(Token {
                tok: Tok::Ident(src[pos..end].to_string()),
                pos,
            });
            i = j;
        } else if "[],=+-*^()/".contains(c) {
            out.push(Token { tok: Tok::Sym(c), pos });
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

/// Unknowns are identifiers starting with `c`, other than reserved names.
fn is_unknown_name(s: &str) -> bool {
    s.starts_with('c')
}

fn leaf_word(s: &str) -> Option<Word> {
    match s {
        "x" => Some(Word::X),
        "y" => Some(Word::Y),
        "z" => Some(Word::Z),
        "h" => Some(Word::H),
        _ => {
            let digits = s.strip_prefix('z')?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.parse().ok().map(Word::Zi)
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    end: usize,
    /// Unknowns are rejected while parsing the left side.
    allow_unknowns: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                None => self.err(format!("expected '{c}', found end of input")),
                Some(_) => self.err(format!("expected '{c}'")),
            }
        }
    }

    fn at_word_start(&self) -> bool {
        match self.peek() {
            Some(Tok::Sym('[')) => true,
            Some(Tok::Sym('(')) => matches!(self.peek_at(1), Some(Tok::Ident(s)) if s == "ad"),
            Some(Tok::Ident(s)) => leaf_word(s).is_some() || !(is_param(s) || is_unknown_name(s)),
            _ => false,
        }
    }

    fn relation(&mut self) -> Result<Relation> {
        self.allow_unknowns = false;
        let lhs = self.side()?;
        if lhs.is_zero() {
            return self.err("left side must not be 0");
        }
        self.expect('=')?;
        self.allow_unknowns = true;
        let rhs = self.side()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(Relation { lhs, rhs })
    }

    fn side(&mut self) -> Result<Side> {
        if matches!(self.peek(), Some(Tok::Num(n)) if n == &BigInt::from(0))
            && matches!(self.peek_at(1), None | Some(Tok::Sym('=')) | Some(Tok::Sym(',')) | Some(Tok::Sym(']')))
        {
            self.i += 1;
            return Ok(Side::default());
        }
        let mut terms = Vec::new();
        let mut neg = self.eat('-');
        loop {
            terms.push(self.term(neg)?);
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(Side { terms })
    }

    fn term(&mut self, neg: bool) -> Result<Term> {
        if self.at_word_start() {
            return Ok(Term {
                neg,
                coeff: None,
                word: self.word()?,
            });
        }
        let mut factors = Vec::new();
        loop {
            factors.push(self.factor()?);
            if !self.eat('*') {
                return match self.peek() {
                    None => self.err("expected '*' and a word after the coefficient, found end of input"),
                    _ => self.err("expected '*' between coefficient and word"),
                };
            }
            if self.at_word_start() {
                break;
            }
        }
        let coeff = if factors.len() == 1 { factors.pop().unwrap() } else { CoeffExpr::Product(factors) };
        Ok(Term {
            neg,
            coeff: Some(coeff),
            word: self.word()?,
        })
    }

    fn word(&mut self) -> Result<Word> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Sym('[')) => {
                self.i += 1;
                let a = self.side()?;
                self.expect(',')?;
                let b = self.side()?;
                self.expect(']')?;
                if a.is_zero() || b.is_zero() {
                    return Err(Error::Syntax {
                        pos,
                        msg: "bracket entries must not be 0".into(),
                    });
                }
                Ok(Word::Bracket(Box::new(a), Box::new(b)))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                match self.peek() {
                    Some(Tok::Ident(s)) if s == "ad" => self.i += 1,
                    _ => return self.err("expected 'ad'"),
                }
                let op = self.word()?;
                self.expect(')')?;
                self.expect('^')?;
                let exp = match self.peek().cloned() {
                    Some(Tok::Num(n)) => {
                        self.i += 1;
                        CoeffExpr::Num(Rational::from_integer(n))
                    }
                    Some(Tok::Sym('(')) => {
                        self.i += 1;
                        let e = self.poly()?;
                        self.expect(')')?;
                        e
                    }
                    _ => return self.err("expected exponent"),
                };
                let mut unknowns = Vec::new();
                exp.unknowns(&mut unknowns);
                if !unknowns.is_empty() {
                    return Err(Error::InvalidUnknown(format!("unknown in exponent at {pos}")));
                }
                let arg = self.word()?;
                Ok(Word::AdPow {
                    op: Box::new(op),
                    exp,
                    arg: Box::new(arg),
                })
            }
            Some(Tok::Ident(s)) => match leaf_word(&s) {
                Some(w) => {
                    self.i += 1;
                    Ok(w)
                }
                None => Err(Error::UnknownSymbol { pos, name: s }),
            },
            None => self.err("expected a word, found end of input"),
            _ => self.err("expected a word"),
        }
    }

    /// `["-"] prod (("+"|"-") prod)*`
    fn poly(&mut self) -> Result<CoeffExpr> {
        let mut terms = Vec::new();
        let mut neg = self.eat('-');
        loop {
            terms.push((neg, self.product()?));
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        if terms.len() == 1 && !terms[0].0 {
            Ok(terms.pop().unwrap().1)
        } else {
            Ok(CoeffExpr::Sum(terms))
        }
    }

    fn product(&mut self) -> Result<CoeffExpr> {
        let mut fs = vec![self.factor()?];
        while self.eat('*') {
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { CoeffExpr::Product(fs) })
    }

    fn factor(&mut self) -> Result<CoeffExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.i += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    return Ok(CoeffExpr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CoeffExpr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            self.i += 1;
                            return Ok(CoeffExpr::Num(Rational::new(n, d)));
                        }
                        _ => return self.err("expected nonzero denominator"),
                    }
                }
                Ok(CoeffExpr::Num(Rational::from_integer(n)))
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                match s.as_str() {
                    "t" => Ok(CoeffExpr::Param(Param::T)),
                    "n" => Ok(CoeffExpr::Param(Param::N)),
                    "lambda" | "λ" => Ok(CoeffExpr::Param(Param::Lambda)),
                    u if is_unknown_name(u) => {
                        if self.allow_unknowns {
                            Ok(CoeffExpr::Unknown(s))
                        } else {
                            Err(Error::InvalidUnknown(format!("unknown '{u}' at {pos} on the left side")))
                        }
                    }
                    _ => Err(Error::UnknownSymbol { pos, name: s }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.poly()?;
                self.expect(')')?;
                Ok(e)
            }
            None => self.err("expected a coefficient, found end of input"),
            _ => self.err("expected a coefficient"),
        }
    }
}

fn is_param(s: &str) -> bool {
    matches!(s, "t" | "n" | "lambda" | "λ")
}

pub fn parse_relation(text: &str) -> Result<Relation> {
    Parser {
        toks: lex(text)?,
        i: 0,
        end: text.len(),
        allow_unknowns: false,
    }
    .relation()
}

/// Parses a standalone side, as used inside brackets.
pub fn parse_side(text: &str) -> Result<Side> {
    let mut p = Parser {
        toks: lex(text)?,
        i: 0,
        end: text.len(),
        allow_unknowns: true,
    };
    let s = p.side()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::ast::RelationKind;

    fn rt(s: &str) {
        let r = parse_relation(s).unwrap();
        assert_eq!(r.to_string(), s, "print");
        assert_eq!(parse_relation(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn round_trips() {
        rt("3*[z1,z2] - 2*[z,z3] = 24*t^2*(n^2-4)*y");
        rt("(ad z1)^(n-2) z = 0");
        rt("[y,z] = 0");
        rt("[z4,[z,z2]] = 1/2*t^2*z");
        rt("4*[z3,[z,z1]] - 3*[z2,[z,z2]] = 576*t^2*(lambda^2-9)*z");
        rt("-[z,z1] = -432*t^2*(lambda^2-4)*(lambda^2-9)*y + c*z2");
        rt("(ad x)^7 z = 0");
        rt("[z,2*z1 - z2] = 0");
    }

    #[test]
    fn kinds() {
        assert_eq!(parse_relation("3*[z1,z2] - 2*[z,z3] = 24*t^2*(n^2-4)*y").unwrap().kind(), RelationKind::Type(2));
        assert_eq!(parse_relation("(ad z1)^(n-2) z = 0").unwrap().kind(), RelationKind::Infinity);
        assert_eq!(parse_relation("[y,z] = 0").unwrap().kind(), RelationKind::Type(1));
        assert_eq!(parse_relation("[[x,y],x] = 2*x").unwrap().kind(), RelationKind::Type(0));
        assert_eq!(parse_relation("(ad z1)^2 z = 0").unwrap().kind(), RelationKind::Type(3));
    }

    #[test]
    fn lambda_spelling() {
        let a = parse_relation("[z,z1] = λ^2*z").unwrap();
        let b = parse_relation("[z,z1] = lambda^2*z").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("[z1,z2 = 0", 7),
            ("[z1,z2] = 24*", 13),
            ("[z1,z2] == 0", 9),
            ("3[z1,z2] = 0", 1),
            ("[z1;z2] = 0", 3),
        ];
        for (src, pos) in cases {
            match parse_relation(src) {
                Err(Error::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
        assert!(matches!(parse_relation("[w,z] = 0"), Err(Error::UnknownSymbol { pos: 1, .. })));
        assert!(matches!(parse_relation("c*[z,z1] = y"), Err(Error::InvalidUnknown(_))));
    }
}
