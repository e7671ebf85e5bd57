//! Expression language for equations.
//!
//! ```text
//! equation := expr [ '=' expr ]
//! expr     := integers, uIJ (1 ≤ I, J ≤ n), HESS, + - * / ^ and parentheses
//! ```
//!
//! `uJI` is read as `uIJ`. `HESS` is the determinant of the full Hessian.
//! Division is allowed only by nonzero constants; exponents are integer
//! literals. Vector-field expressions additionally accept `lam` and the basis
//! markers `d1 … dn`.

use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::algebra::poly::Vars;
use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::grassmann::hessian::{hessian_vars, minor, var_index, MAX_CHART_DIM};
use crate::grassmann::MAEquation;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize, usize),
    Hess,
    Lam,
    Marker(usize),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str, n: usize, fields: bool) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().expect("digits"))));
        } else if c == 'u' {
            let start = i;
            let digits: Vec<usize> = chars[i + 1..]
                .iter()
                .take_while(|c| c.is_ascii_digit())
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect();
            if digits.len() != 2 {
                return Err(syntax(start, "variable must be uIJ with two digits"));
            }
            let (a, b) = (digits[0], digits[1]);
            if a == 0 || b == 0 || a > n || b > n {
                return Err(syntax(
                    start,
                    format!("variable u{a}{b} out of range for n = {n}"),
                ));
            }
            out.push((start, Tok::Var(a - 1, b - 1)));
            i += 3;
        } else if fields && chars[i..].starts_with(&['l', 'a', 'm']) {
            out.push((i, Tok::Lam));
            i += 3;
        } else if fields && c == 'd' {
            let k = chars.get(i + 1).and_then(|c| c.to_digit(10)).unwrap_or(0) as usize;
            if k == 0 || k > n {
                return Err(syntax(i, format!("basis marker out of range for n = {n}")));
            }
            out.push((i, Tok::Marker(k - 1)));
            i += 2;
        } else if chars[i..].starts_with(&['H', 'E', 'S', 'S']) {
            out.push((i, Tok::Hess));
            i += 4;
        } else if "+-*/^()=".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(syntax(i, format!("unexpected character {c:?}")));
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }
}

struct Parser {
    lex: Lexer,
    n: usize,
    vars: Vars,
}

fn infix_power(op: char) -> Option<(u8, u8)> {
    match op {
        '+' | '-' => Some((10, 11)),
        '*' | '/' => Some((20, 21)),
        '^' => Some((31, 30)),
        _ => None,
    }
}

impl Parser {
    fn expr(&mut self, min_bp: u8) -> Result<Polynomial> {
        let vars = self.vars.clone();
        let (pos, tok) = self.lex.next();
        let mut lhs = match tok {
            Tok::Int(v) => Polynomial::constant(&vars, Rational::from_integer(v)),
            Tok::Var(i, j) => Polynomial::var(&vars, var_index(self.n, i, j)),
            Tok::Hess => {
                let all: Vec<usize> = (0..self.n).collect();
                minor(self.n, &all, &all).rename_into(&vars)
            }
            Tok::Lam => Polynomial::var_named(&vars, "lam").expect("field ring"),
            Tok::Marker(k) => {
                Polynomial::var_named(&vars, &format!("d{}", k + 1)).expect("field ring")
            }
            Tok::Op('(') => {
                let inner = self.expr(0)?;
                match self.lex.next() {
                    (_, Tok::Op(')')) => inner,
                    (p, _) => return Err(syntax(p, "expected ')'")),
                }
            }
            Tok::Op('-') => -self.expr(25)?,
            Tok::Op('+') => self.expr(25)?,
            Tok::End => return Err(syntax(pos, "unexpected end of input")),
            Tok::Op(c) => return Err(syntax(pos, format!("unexpected {c:?}"))),
        };
        loop {
            let (pos, tok) = self.lex.peek().clone();
            let op = match tok {
                Tok::End => break,
                Tok::Op(c) if infix_power(c).is_some() => c,
                Tok::Op(')') | Tok::Op('=') => break,
                _ => return Err(syntax(pos, "expected an operator")),
            };
            let (l_bp, r_bp) = infix_power(op).unwrap();
            if l_bp < min_bp {
                break;
            }
            self.lex.next();
            if op == '^' {
                let (p, t) = self.lex.next();
                let Tok::Int(e) = t else {
                    return Err(syntax(p, "exponent must be an integer literal"));
                };
                let e: u32 = e
                    .try_into()
                    .ok()
                    .filter(|&e| e <= 64)
                    .ok_or_else(|| syntax(p, "exponent too large"))?;
                lhs = lhs.pow(e);
                continue;
            }
            let rhs = self.expr(r_bp)?;
            lhs = match op {
                '+' => &lhs + &rhs,
                '-' => &lhs - &rhs,
                '*' => &lhs * &rhs,
                '/' => {
                    if !rhs.is_constant() || rhs.is_zero() {
                        return Err(syntax(pos, "division only by nonzero constants"));
                    }
                    lhs.scale(&(Rational::from_integer(1.into()) / rhs.constant_term()))
                }
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }
}

/// Parses `lhs [= rhs]` into `lhs − rhs`.
pub fn parse_polynomial(n: usize, text: &str) -> Result<Polynomial> {
    if !(1..=MAX_CHART_DIM).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    parse_in(n, text, hessian_vars(n), false)
}

/// Ring of vector-field expressions: `u11 … unn`, then `lam`, then `d1 … dn`.
pub fn field_vars(n: usize) -> Vars {
    static CACHE: OnceLock<Vec<Vars>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (0..=MAX_CHART_DIM)
            .map(|n| {
                let mut names: Vec<String> = if n == 0 {
                    Vec::new()
                } else {
                    hessian_vars(n).iter().cloned().collect()
                };
                names.push("lam".into());
                names.extend((1..=n).map(|k| format!("d{k}")));
                names.into()
            })
            .collect()
    })[n]
        .clone()
}

/// Parses a vector field such as `d6 + u13*d4 - lam*d1` into [`field_vars`].
pub fn parse_field_expression(n: usize, text: &str) -> Result<Polynomial> {
    if !(1..=MAX_CHART_DIM).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    parse_in(n, text, field_vars(n), true)
}

fn parse_in(n: usize, text: &str, vars: Vars, fields: bool) -> Result<Polynomial> {
    let mut p = Parser {
        lex: Lexer {
            toks: lex(text, n, fields)?,
            pos: 0,
        },
        n,
        vars,
    };
    let lhs = p.expr(0)?;
    let out = match p.lex.next() {
        (_, Tok::End) => lhs,
        (_, Tok::Op('=')) => {
            let rhs = p.expr(0)?;
            match p.lex.next() {
                (_, Tok::End) => &lhs - &rhs,
                (pos, _) => return Err(syntax(pos, "trailing input")),
            }
        }
        (pos, _) => return Err(syntax(pos, "trailing input")),
    };
    Ok(out)
}

pub fn parse_equation(n: usize, text: &str) -> Result<MAEquation> {
    let p = parse_polynomial(n, text)?;
    if p.is_zero() {
        return Err(Error::ZeroEquation);
    }
    MAEquation::new(n, &p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_symmetry() {
        let p = parse_polynomial(2, "u11*u22 - u21^2").unwrap();
        assert_eq!(p.to_string(), "u11*u22 - u12^2");
        assert_eq!(parse_polynomial(2, "HESS").unwrap(), p);
        let q = parse_polynomial(2, "-(u11 + 1)*2 = u22/2").unwrap();
        assert_eq!(q.to_string(), "-(1/2)*u22 - 2*u11 - 2");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial(2, "u11 + u13").unwrap_err(),
            syntax(6, "variable u13 out of range for n = 2")
        );
        assert!(matches!(
            parse_polynomial(2, "u11 +"),
            Err(Error::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_polynomial(2, "u11 / u22"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial(2, "u11 $"),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial(2, "(u11"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn equation_checks() {
        assert_eq!(
            parse_equation(2, "u11 - u11").unwrap_err(),
            Error::ZeroEquation
        );
        assert!(matches!(
            parse_equation(2, "u11^2"),
            Err(Error::NotInSpan { .. })
        ));
        assert_eq!(
            parse_equation(7, "1").unwrap_err(),
            Error::UnsupportedDimension(7)
        );
    }
}
