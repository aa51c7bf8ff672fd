//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! document := [ "sig" DECL ("," DECL)* (";" | newline) ] formula
//! formula  := imp ( "<->" imp )*
//! imp      := or [ "->" imp ]
//! or       := and ( "|" and )*
//! and      := unary ( "&" unary )*
//! unary    := "~" unary | ("forall" | "exists") VAR "." formula
//!           | "(" formula ")" | "true" | "false" | atom
//! atom     := PRED [ "(" [ term ("," term)* ] ")" ] | term ("=" | "!=") term
//! term     := VAR | "$a" DIGITS
//! ```
//!
//! Variables start with a lowercase letter, predicates with an uppercase
//! one. A quantifier's scope extends as far to the right as possible.

use crate::error::{Error, Result};

use super::syntax::{Formula, Quantifier, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Lower(String),
    Upper(String),
    Name(usize),
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Equals,
    NotEquals,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Lower(s) | Token::Upper(s) => format!("`{s}`"),
            Token::Name(k) => format!("`$a{k}`"),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Dot => "`.`".into(),
            Token::Tilde => "`~`".into(),
            Token::Amp => "`&`".into(),
            Token::Bar => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::DoubleArrow => "`<->`".into(),
            Token::Equals => "`=`".into(),
            Token::NotEquals => "`!=`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str, base: usize) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let at = base + i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b',' => Some(Token::Comma),
            b'.' => Some(Token::Dot),
            b'~' => Some(Token::Tilde),
            b'&' => Some(Token::Amp),
            b'|' => Some(Token::Bar),
            b'=' => Some(Token::Equals),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((tok, at));
            i += 1;
            continue;
        }
        let rest = &text[i..];
        if rest.starts_with("<->") {
            out.push((Token::DoubleArrow, at));
            i += 3;
        } else if rest.starts_with("->") {
            out.push((Token::Arrow, at));
            i += 2;
        } else if rest.starts_with("!=") {
            out.push((Token::NotEquals, at));
            i += 2;
        } else if rest.starts_with("$a") {
            let digits: String = rest[2..].chars().take_while(|c| c.is_ascii_digit()).collect();
            let k: usize = digits.parse().map_err(|_| Error::Syntax {
                offset: at,
                message: "expected digits after `$a`".into(),
            })?;
            if k == 0 {
                return Err(Error::Syntax {
                    offset: at,
                    message: "names are numbered from 1".into(),
                });
            }
            out.push((Token::Name(k), at));
            i += 2 + digits.len();
        } else if c.is_ascii_alphabetic() {
            let len = rest
                .bytes()
                .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                .count();
            let word = rest[..len].to_string();
            out.push((
                if c.is_ascii_uppercase() {
                    Token::Upper(word)
                } else {
                    Token::Lower(word)
                },
                at,
            ));
            i += len;
        } else {
            let ch = rest.chars().next().unwrap();
            return Err(Error::Syntax {
                offset: at,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    out.push((Token::End, base + text.len()));
    Ok(out)
}

const KEYWORDS: [&str; 4] = ["forall", "exists", "true", "false"];

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    sig: Signature,
    infer: bool,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", want.describe(), self.peek().describe()))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while *self.peek() == Token::DoubleArrow {
            self.bump();
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Token::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conjunction()?];
        while *self.peek() == Token::Bar {
            self.bump();
            parts.push(self.conjunction()?);
        }
        Ok(Formula::or(parts))
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Token::Amp {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(Formula::and(parts))
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Token::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Token::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Token::Lower(word) if word == "forall" || word == "exists" => {
                self.bump();
                let q = if word == "forall" {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                let var = match self.peek().clone() {
                    Token::Lower(v) if !KEYWORDS.contains(&v.as_str()) => {
                        self.bump();
                        v
                    }
                    other => return self.error(format!("expected a variable after `{word}`, found {}", other.describe())),
                };
                self.expect(Token::Dot)?;
                let body = self.formula()?;
                Ok(Formula::Quant(q, var, Box::new(body)))
            }
            Token::Lower(word) if word == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Token::Lower(word) if word == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Token::Upper(name) => self.application(name),
            Token::Lower(_) | Token::Name(_) => {
                let lhs = self.term()?;
                match self.peek() {
                    Token::Equals => {
                        self.bump();
                        Ok(Formula::eq(lhs, self.term()?))
                    }
                    Token::NotEquals => {
                        self.bump();
                        Ok(Formula::neq(lhs, self.term()?))
                    }
                    other => self.error(format!("expected `=` or `!=` after a term, found {}", other.describe())),
                }
            }
            other => self.error(format!("expected a formula, found {}", other.describe())),
        }
    }

    fn application(&mut self, name: String) -> Result<Formula> {
        let at = self.offset();
        self.bump();
        let mut args = Vec::new();
        if *self.peek() == Token::LParen {
            self.bump();
            if *self.peek() != Token::RParen {
                args.push(self.term()?);
                while *self.peek() == Token::Comma {
                    self.bump();
                    args.push(self.term()?);
                }
            }
            self.expect(Token::RParen)?;
        }
        match self.sig.arity(&name) {
            Some(expected) if expected != args.len() => Err(Error::ArityMismatch {
                name,
                expected,
                found: args.len(),
                offset: at,
            }),
            Some(_) => Ok(Formula::Pred(name, args)),
            None if self.infer => {
                self.sig.declare(name.clone(), args.len())?;
                Ok(Formula::Pred(name, args))
            }
            None => Err(Error::UnknownPredicate { name, offset: at }),
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Token::Lower(v) if !KEYWORDS.contains(&v.as_str()) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Token::Name(k) => {
                self.bump();
                Ok(Term::Name(k))
            }
            other => self.error(format!("expected a variable, found {}", other.describe())),
        }
    }
}

fn run(text: &str, base: usize, sig: Signature, infer: bool) -> Result<(Formula, Signature)> {
    let mut parser = Parser {
        tokens: tokenize(text, base)?,
        pos: 0,
        sig,
        infer,
    };
    let f = parser.formula()?;
    if *parser.peek() != Token::End {
        return parser.error(format!("unexpected {} after formula", parser.peek().describe()));
    }
    Ok((f, parser.sig))
}

/// Parse against a declared signature. Unknown predicates and arity
/// mismatches are errors.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula> {
    run(text, 0, sig.clone(), false).map(|(f, _)| f)
}

/// Parse a formula with an optional `sig …` header line. Predicates not
/// declared in the header (or when there is no header) are declared on
/// first use; later uses must agree on arity. Returns the formula and the
/// resulting signature.
pub fn parse_document(text: &str) -> Result<(Formula, Signature)> {
    parse_document_with(text, &Signature::new())
}

/// Like [`parse_document`], seeded with an externally declared signature.
pub fn parse_document_with(text: &str, declared: &Signature) -> Result<(Formula, Signature)> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    let is_header = trimmed.starts_with("sig")
        && trimmed[3..].starts_with(|c: char| c.is_whitespace());
    if !is_header {
        return run(text, 0, declared.clone(), true);
    }
    let end = trimmed.find([';', '\n']).ok_or_else(|| Error::Syntax {
        offset: lead,
        message: "signature header must end with `;` or a newline".into(),
    })?;
    let header: Signature = trimmed[..end].parse()?;
    let sig = declared.merge(&header)?;
    let body_start = lead + end + 1;
    run(&text[body_start..], body_start, sig, true)
}
