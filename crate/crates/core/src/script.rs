//! The ideal-script text formats: polynomial expressions, ring declarations,
//! named ideals/matrices/complexes, and expectation annotations.
//!
//! Polynomial grammar: `^` for powers, `*` required for products, implicit
//! coefficient 1, integer literals reduced mod p at parse time. Example:
//! `3*x^2*y - a*x + 1`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, Ring, RingSpec};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Semicolon,
    Equals,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::Semicolon => write!(f, "';'"),
            Tok::Equals => write!(f, "'='"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str, line: usize) -> Result<Lexer> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
            }
            '#' => break,
            '+' => {
                toks.push((Tok::Plus, line, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, line, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, line, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, line, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, line, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, line, col));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, line, col));
                i += 1;
            }
            ';' => {
                toks.push((Tok::Semicolon, line, col));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Equals, line, col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n: u64 = s.parse().map_err(|_| Error::Parse {
                    line,
                    col,
                    message: format!("integer literal {s} out of range"),
                })?;
                toks.push((Tok::Int(n), line, col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), line, col));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    toks.push((Tok::Eof, line, chars.len() + 1));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn loc(&self) -> (usize, usize) {
        (self.toks[self.pos].1, self.toks[self.pos].2)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, expected: &str) -> Result<Tok> {
        if std::mem::discriminant(self.peek()) == std::mem::discriminant(want) {
            Ok(self.bump())
        } else {
            let (line, col) = self.loc();
            Err(Error::Parse {
                line,
                col,
                message: format!("expected {expected}, found {}", self.peek()),
            })
        }
    }

    fn error(&self, expected: &str) -> Error {
        let (line, col) = self.loc();
        Error::Parse {
            line,
            col,
            message: format!("expected {expected}, found {}", self.peek()),
        }
    }
}

// Expression grammar: expr := term (('+'|'-') term)*
//                     term := factor ('*' factor)*
//                     factor := atom ('^' int)?
//                     atom := int | var | '(' expr ')' | '-' factor
fn parse_expr(lx: &mut Lexer, ring: &Ring) -> Result<Polynomial> {
    let mut acc = parse_term(lx, ring)?;
    loop {
        match lx.peek() {
            Tok::Plus => {
                lx.bump();
                acc = acc.add_unchecked(&parse_term(lx, ring)?);
            }
            Tok::Minus => {
                lx.bump();
                acc = acc.add_unchecked(&parse_term(lx, ring)?.neg());
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(lx: &mut Lexer, ring: &Ring) -> Result<Polynomial> {
    let mut acc = parse_factor(lx, ring)?;
    while *lx.peek() == Tok::Star {
        lx.bump();
        acc = acc.mul_unchecked(&parse_factor(lx, ring)?);
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer, ring: &Ring) -> Result<Polynomial> {
    let base = parse_atom(lx, ring)?;
    if *lx.peek() == Tok::Caret {
        lx.bump();
        let (line, col) = lx.loc();
        match lx.bump() {
            Tok::Int(e) => {
                if e > 512 {
                    return Err(Error::Parse {
                        line,
                        col,
                        message: format!("exponent {e} too large"),
                    });
                }
                Ok(base.pow(e as u32))
            }
            other => Err(Error::Parse {
                line,
                col,
                message: format!("expected exponent integer, found {other}"),
            }),
        }
    } else {
        Ok(base)
    }
}

fn parse_atom(lx: &mut Lexer, ring: &Ring) -> Result<Polynomial> {
    let (line, col) = lx.loc();
    match lx.bump() {
        Tok::Int(n) => Ok(Polynomial::constant(
            ring,
            (n % ring.characteristic() as u64) as u32,
        )),
        Tok::Ident(name) => match ring.var_index(&name) {
            Some(i) => Ok(Polynomial::var(ring, i)),
            None => Err(Error::Parse {
                line,
                col,
                message: format!("unknown variable {name:?} (ring has {:?})", ring.vars()),
            }),
        },
        Tok::LParen => {
            let inner = parse_expr(lx, ring)?;
            lx.expect(&Tok::RParen, "')'")?;
            Ok(inner)
        }
        Tok::Minus => Ok(parse_factor(lx, ring)?.neg()),
        other => Err(Error::Parse {
            line,
            col,
            message: format!("expected integer, variable, '(' or '-', found {other}"),
        }),
    }
}

/// Parses one polynomial expression in the given ring.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, text, 1)
}

fn parse_polynomial_at(ring: &Ring, text: &str, line: usize) -> Result<Polynomial> {
    let mut lx = lex(text, line)?;
    let p = parse_expr(&mut lx, ring)?;
    if *lx.peek() != Tok::Eof {
        return Err(lx.error("end of expression, '+', '-', '*' or '^'"));
    }
    Ok(p)
}

/// A parsed script: ring declaration plus named objects and expectations.
#[derive(Debug, Clone)]
pub struct Script {
    pub ring: Ring,
    pub ideals: BTreeMap<String, Vec<Polynomial>>,
    pub matrices: BTreeMap<String, Vec<Vec<Polynomial>>>,
    pub complexes: BTreeMap<String, Vec<String>>,
    pub expectations: BTreeMap<String, Expectation>,
    /// Declaration order of ideals, for default-target commands.
    pub ideal_order: Vec<String>,
}

/// An `expect` annotation: checked invariants for a named ideal.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Expectation {
    pub e: Option<u64>,
    pub pd: Option<u32>,
    pub primary: Option<Vec<String>>,
}

impl Script {
    pub fn ideal(&self, name: &str) -> Result<&Vec<Polynomial>> {
        self.ideals
            .get(name)
            .ok_or_else(|| Error::invalid(format!("undefined ideal {name:?}")))
    }

    pub fn matrix(&self, name: &str) -> Result<&Vec<Vec<Polynomial>>> {
        self.matrices
            .get(name)
            .ok_or_else(|| Error::invalid(format!("undefined matrix {name:?}")))
    }
}

fn parse_ring_decl(rest: &str, line: usize) -> Result<Ring> {
    let mut p: Option<u32> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order = MonomialOrder::Grevlex;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or(Error::Parse {
            line,
            col: 1,
            message: format!("ring field {field:?} is not key=value"),
        })?;
        match key {
            "p" => {
                p = Some(value.parse().map_err(|_| Error::Parse {
                    line,
                    col: 1,
                    message: format!("bad characteristic {value:?}"),
                })?)
            }
            "vars" => vars = Some(value.split(',').map(|s| s.trim().to_string()).collect()),
            "order" => {
                order = match value {
                    "grevlex" => MonomialOrder::Grevlex,
                    "lex" => MonomialOrder::Lex,
                    other => {
                        if let Some(k) = other.strip_prefix("elim:") {
                            MonomialOrder::Elimination(k.parse().map_err(|_| Error::Parse {
                                line,
                                col: 1,
                                message: format!("bad elimination block {other:?}"),
                            })?)
                        } else {
                            return Err(Error::Parse {
                                line,
                                col: 1,
                                message: format!("unknown order {other:?}"),
                            });
                        }
                    }
                }
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col: 1,
                    message: format!("unknown ring field {other:?}"),
                })
            }
        }
    }
    let p = p.unwrap_or(crate::ring::DEFAULT_CHARACTERISTIC);
    let vars = vars.ok_or(Error::Parse {
        line,
        col: 1,
        message: "ring declaration missing vars=".to_string(),
    })?;
    RingSpec::new(p, vars, order).map_err(|e| Error::Parse {
        line,
        col: 1,
        message: e.to_string(),
    })
}

/// Parses an ideal-script document.
///
/// Grammar (one statement per line, `#` comments, blank lines ignored):
/// - `ring p=<prime> vars=<v1,...,vn> order=<grevlex|lex|elim:k>`
/// - `ideal <Name> = <poly>, <poly>, ...`
/// - `matrix <Name> rows=<r> cols=<c> = <entries row-major, ',' within rows, ';' between>`
/// - `complex <Name> = <M1>, <M2>, ...` (named matrices, differentials d1..dp)
/// - `expect <Name> e=<int> pd=<int> primary=(<v1,...>)`
pub fn parse_script(text: &str) -> Result<Script> {
    let mut ring: Option<Ring> = None;
    let mut ideals = BTreeMap::new();
    let mut matrices = BTreeMap::new();
    let mut complexes = BTreeMap::new();
    let mut expectations = BTreeMap::new();
    let mut ideal_order = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = match line.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (line, ""),
        };
        match head {
            "ring" => {
                ring = Some(parse_ring_decl(rest, line_no)?);
            }
            "ideal" => {
                let ring = ring.as_ref().ok_or(Error::Parse {
                    line: line_no,
                    col: 1,
                    message: "ideal declared before ring".to_string(),
                })?;
                let (name, body) = rest.split_once('=').ok_or(Error::Parse {
                    line: line_no,
                    col: 1,
                    message: "ideal declaration missing '='".to_string(),
                })?;
                let name = name.trim().to_string();
                let mut gens = Vec::new();
                for chunk in split_top_level(body, ',') {
                    let chunk = chunk.trim();
                    if chunk.is_empty() {
                        continue;
                    }
                    gens.push(parse_polynomial_at(ring, chunk, line_no)?);
                }
                if ideals.insert(name.clone(), gens).is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        message: format!("ideal {name:?} redefined"),
                    });
                }
                ideal_order.push(name);
            }
            "matrix" => {
                let ring = ring.as_ref().ok_or(Error::Parse {
                    line: line_no,
                    col: 1,
                    message: "matrix declared before ring".to_string(),
                })?;
                // The separator '=' is a standalone token; 'rows=2' etc. are
                // header fields.
                let mut header_toks: Vec<&str> = Vec::new();
                let mut body_opt: Option<String> = None;
                let mut remainder = rest;
                loop {
                    let (tok, after) = match remainder.split_once(char::is_whitespace) {
                        Some((t, a)) => (t, a.trim_start()),
                        None => (remainder, ""),
                    };
                    if tok == "=" {
                        body_opt = Some(after.to_string());
                        break;
                    }
                    if tok.is_empty() {
                        break;
                    }
                    header_toks.push(tok);
                    if after.is_empty() {
                        break;
                    }
                    remainder = after;
                }
                let header = header_toks.join(" ");
                let header = header.as_str();
                let body = body_opt.ok_or(Error::Parse {
                    line: line_no,
                    col: 1,
                    message: "matrix declaration missing '='".to_string(),
                })?;
                let body = body.as_str();
                let mut name = None;
                let mut rows = None;
                let mut cols = None;
                for field in header.split_whitespace() {
                    if let Some((k, v)) = field.split_once('=') {
                        let n: usize = v.parse().map_err(|_| Error::Parse {
                            line: line_no,
                            col: 1,
                            message: format!("bad matrix field {field:?}"),
                        })?;
                        match k {
                            "rows" => rows = Some(n),
                            "cols" => cols = Some(n),
                            _ => {
                                return Err(Error::Parse {
                                    line: line_no,
                                    col: 1,
                                    message: format!("unknown matrix field {k:?}"),
                                })
                            }
                        }
                    } else {
                        name = Some(field.to_string());
                    }
                }
                let name = name.ok_or(Error::Parse {
                    line: line_no,
                    col: 1,
                    message: "matrix declaration missing name".to_string(),
                })?;
                let (rows, cols) = (
                    rows.ok_or(Error::Parse {
                        line: line_no,
                        col: 1,
                        message: "matrix missing rows=".to_string(),
                    })?,
                    cols.ok_or(Error::Parse {
                        line: line_no,
                        col: 1,
                        message: "matrix missing cols=".to_string(),
                    })?,
                );
                let mut mat = Vec::new();
                for row_text in split_top_level(body, ';') {
                    let mut row = Vec::new();
                    for entry in split_top_level(&row_text, ',') {
                        let entry = entry.trim();
                        if entry.is_empty() {
                            continue;
                        }
                        row.push(parse_polynomial_at(ring, entry, line_no)?);
                    }
                    if !row.is_empty() {
                        mat.push(row);
                    }
                }
                if mat.len() != rows || mat.iter().any(|r| r.len() != cols) {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        message: format!(
                            "matrix {name:?} shape mismatch: declared {rows}x{cols}, got {}x{:?}",
                            mat.len(),
                            mat.iter().map(|r| r.len()).collect::<Vec<_>>()
                        ),
                    });
                }
                matrices.insert(name, mat);
            }
            "complex" => {
                let (name, body) = rest.split_once('=').ok_or(Error::Parse {
                    line: line_no,
                    col: 1,
                    message: "complex declaration missing '='".to_string(),
                })?;
                let names: Vec<String> = body
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                for n in &names {
                    if !matrices.contains_key(n) {
                        return Err(Error::Parse {
                            line: line_no,
                            col: 1,
                            message: format!("complex references undefined matrix {n:?}"),
                        });
                    }
                }
                complexes.insert(name.trim().to_string(), names);
            }
            "expect" => {
                let mut parts = rest.split_whitespace();
                let name = parts
                    .next()
                    .ok_or(Error::Parse {
                        line: line_no,
                        col: 1,
                        message: "expect missing ideal name".to_string(),
                    })?
                    .to_string();
                if !ideals.contains_key(&name) {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        message: format!("expect references undefined ideal {name:?}"),
                    });
                }
                let mut exp = Expectation::default();
                for field in parts {
                    let (k, v) = field.split_once('=').ok_or(Error::Parse {
                        line: line_no,
                        col: 1,
                        message: format!("expect field {field:?} is not key=value"),
                    })?;
                    match k {
                        "e" => {
                            exp.e = Some(v.parse().map_err(|_| Error::Parse {
                                line: line_no,
                                col: 1,
                                message: format!("bad e value {v:?}"),
                            })?)
                        }
                        "pd" => {
                            exp.pd = Some(v.parse().map_err(|_| Error::Parse {
                                line: line_no,
                                col: 1,
                                message: format!("bad pd value {v:?}"),
                            })?)
                        }
                        "primary" => {
                            let inner = v
                                .strip_prefix('(')
                                .and_then(|s| s.strip_suffix(')'))
                                .ok_or(Error::Parse {
                                    line: line_no,
                                    col: 1,
                                    message: format!("primary value {v:?} not parenthesized"),
                                })?;
                            exp.primary =
                                Some(inner.split(',').map(|s| s.trim().to_string()).collect());
                        }
                        other => {
                            return Err(Error::Parse {
                                line: line_no,
                                col: 1,
                                message: format!("unknown expect field {other:?}"),
                            })
                        }
                    }
                }
                expectations.insert(name, exp);
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    col: 1,
                    message: format!(
                        "unknown statement {other:?} (expected ring, ideal, matrix, complex, expect)"
                    ),
                })
            }
        }
    }

    let ring = ring.ok_or(Error::Parse {
        line: 1,
        col: 1,
        message: "script has no ring declaration".to_string(),
    })?;
    Ok(Script {
        ring,
        ideals,
        matrices,
        complexes,
        expectations,
        ideal_order,
    })
}

/// Splits on `sep` outside parentheses.
fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            c if c == sep && depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            c => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}
