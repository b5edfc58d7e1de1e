//! Polynomial expression grammar.
//!
//! ```text
//! expr    := signed (('+' | '-') signed)*
//! signed  := '-' signed | product
//! product := power ('*' power)*
//! power   := atom ('^' integer)?
//! atom    := integer | integer '/' integer | ident | '(' expr ')'
//! ident   := [a-zA-Z][a-zA-Z0-9]*
//! ```
//!
//! Multiplication must be explicit. Identifiers become ambient coordinates in
//! order of first occurrence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactalg::{LoopPoly, LoopVar, Monomial, Rational};
use crate::loopfun::{InputFunction, LoopError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("not homogeneous: terms of degree {0} and {1}")]
    NotHomogeneous(u32, u32),
    #[error("degree {0} is too low, need at least 2")]
    DegreeTooLow(u32),
    #[error("the expression is identically zero")]
    ZeroFunction,
}

/// A parsed input function together with the names of its coordinates.
#[derive(Clone, Debug)]
pub struct ParsedFunction {
    pub names: Vec<String>,
    pub function: InputFunction,
}

impl ParsedFunction {
    /// Name of an ambient coordinate, 1-based.
    pub fn name(&self, coord: u32) -> &str {
        &self.names[coord as usize - 1]
    }

    /// Renders a loop variable as `name_cdeg`, e.g. `x_-2`.
    pub fn loop_var_name(&self, v: LoopVar) -> String {
        format!("{}_{}", self.name(v.coord), v.cdeg)
    }

    pub fn render_loop_poly(&self, p: &LoopPoly) -> String {
        p.render(|v| self.loop_var_name(v))
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        m.render(|v| self.loop_var_name(v))
    }

    /// The function as an expression in the original variable names.
    pub fn render(&self) -> String {
        self.function
            .poly()
            .render(|v| self.name(v.coord).to_string())
    }

    fn named_terms(&self) -> BTreeMap<Vec<(String, u32)>, Rational> {
        self.function
            .poly()
            .terms()
            .map(|(m, c)| {
                let mut key: Vec<(String, u32)> = m
                    .factors()
                    .iter()
                    .map(|&(v, e)| (self.name(v.coord).to_string(), e))
                    .collect();
                key.sort();
                (key, c.clone())
            })
            .collect()
    }
}

/// Equal as functions of the named variables; coordinate numbering may
/// differ.
impl PartialEq for ParsedFunction {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.names.clone();
        let mut b = other.names.clone();
        a.sort();
        b.sort();
        a == b
            && self.function.delta() == other.function.delta()
            && self.named_terms() == other.named_terms()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational, bool),
    Ident(String),
    Op(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(r, _) => format!("number {r}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Op(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let num: BigInt = digits(&mut i).parse().expect("digits");
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let den: BigInt = digits(&mut i).parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError::Syntax {
                        column: i,
                        expected: vec!["nonzero denominator".into()],
                        found: "0".into(),
                    });
                }
                out.push((column, Tok::Num(Rational::new(num, den), false)));
            } else {
                out.push((column, Tok::Num(Rational::from_integer(num), true)));
            }
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((column, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()".contains(c) {
            out.push((column, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                column,
                expected: vec!["number".into(), "identifier".into(), "operator".into()],
                found: format!("'{c}'"),
            });
        }
    }
    out.push((chars.len() + 1, Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let (column, tok) = &self.toks[self.pos];
        Err(ParseError::Syntax {
            column: *column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if *self.peek() == Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LoopPoly, ParseError> {
        let mut acc = self.signed()?;
        loop {
            if self.eat('+') {
                acc = acc + self.signed()?;
            } else if self.eat('-') {
                acc = acc - self.signed()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn signed(&mut self) -> Result<LoopPoly, ParseError> {
        if self.eat('-') {
            Ok(-self.signed()?)
        } else {
            self.product()
        }
    }

    fn product(&mut self) -> Result<LoopPoly, ParseError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<LoopPoly, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().clone() {
            Tok::Num(r, true) => match u32::try_from(r.to_integer()) {
                Ok(e) => {
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                Err(_) => self.fail(&["exponent below 2^32"]),
            },
            _ => self.fail(&["integer exponent"]),
        }
    }

    fn atom(&mut self) -> Result<LoopPoly, ParseError> {
        match self.peek().clone() {
            Tok::Num(r, _) => {
                self.pos += 1;
                Ok(LoopPoly::constant(r))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                let coord = match self.names.iter().position(|n| *n == name) {
                    Some(i) => i + 1,
                    None => {
                        self.names.push(name);
                        self.names.len()
                    }
                };
                Ok(LoopPoly::var(LoopVar::ambient(coord as u32)))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.fail(&["'+'", "'-'", "'*'", "'^'", "')'"]);
                }
                Ok(inner)
            }
            _ => self.fail(&["number", "identifier", "'('", "'-'"]),
        }
    }
}

/// Parses a homogeneous polynomial of degree at least 2.
pub fn parse_function(src: &str) -> Result<ParsedFunction, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        names: Vec::new(),
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["'+'", "'-'", "'*'", "'^'", "end of input"]);
    }
    let d = p.names.len() as u32;
    if poly.is_zero() {
        return Err(ParseError::ZeroFunction);
    }
    let function = InputFunction::new(d, poly).map_err(|e| match e {
        LoopError::NotHomogeneous(a, b) => ParseError::NotHomogeneous(a, b),
        LoopError::DegreeTooLow(k) => ParseError::DegreeTooLow(k),
        LoopError::NoCoordinates => ParseError::DegreeTooLow(0),
        _ => ParseError::ZeroFunction,
    })?;
    Ok(ParsedFunction {
        names: p.names,
        function,
    })
}

/// Reads an input file: `#` comment lines and blank lines are skipped and
/// the remaining lines form one expression.
pub fn expression_from_file_contents(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let f = parse_function("z^2").unwrap();
        assert_eq!((f.function.d(), f.function.delta()), (1, 2));
        let f = parse_function("x^3 + y^3").unwrap();
        assert_eq!((f.function.d(), f.function.delta()), (2, 3));
        assert_eq!(
            parse_function("x^2 + y^3").unwrap_err(),
            ParseError::NotHomogeneous(2, 3)
        );
    }

    #[test]
    fn precedence() {
        let a = parse_function("-x^2 + 2*x*y").unwrap();
        let b = parse_function("2*(x*y) - (x^2)").unwrap();
        assert_eq!(a, b);
        let c = parse_function("(x + y)^2").unwrap();
        let d = parse_function("x^2 + 2*x*y + y^2").unwrap();
        assert_eq!(c, d);
        let e = parse_function("1/2*x^2 - 3/4*y^2").unwrap();
        assert_eq!(e.render(), "1/2*x^2 - 3/4*y^2");
    }

    #[test]
    fn first_occurrence_order() {
        let f = parse_function("y*x + x^2").unwrap();
        assert_eq!(f.names, vec!["y", "x"]);
        assert_eq!(f.name(1), "y");
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_function("x^2 + * y").unwrap_err() {
            ParseError::Syntax {
                column, expected, ..
            } => {
                assert_eq!(column, 7);
                assert!(expected.contains(&"identifier".to_string()));
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            parse_function("x y"),
            Err(ParseError::Syntax { column: 3, .. })
        ));
        assert!(matches!(
            parse_function("(x^2"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_function("x^y"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_function("x^2 $"),
            Err(ParseError::Syntax { column: 5, .. })
        ));
        assert!(matches!(
            parse_function("1/0*x^2"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            parse_function("x + y").unwrap_err(),
            ParseError::DegreeTooLow(1)
        );
        assert_eq!(
            parse_function("7").unwrap_err(),
            ParseError::DegreeTooLow(0)
        );
        assert_eq!(
            parse_function("x^2 - x^2").unwrap_err(),
            ParseError::ZeroFunction
        );
    }

    #[test]
    fn loop_variable_names() {
        let f = parse_function("x^2 + y^2").unwrap();
        assert_eq!(f.loop_var_name(LoopVar::new(1, -2)), "x_-2");
        assert_eq!(f.loop_var_name(LoopVar::new(2, 0)), "y_0");
    }

    #[test]
    fn file_contents() {
        let text = "# Fermat cubic\n# second comment\nx^3 +\n  y^3\n\n";
        assert_eq!(expression_from_file_contents(text), "x^3 + y^3");
    }
}
