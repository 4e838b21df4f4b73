//! Input language for polynomials, vector fields, and maps.
//!
//! Grammar (no implicit multiplication):
//!
//! ```text
//! input   := expr ',' expr
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := ('-' | '+') factor | power
//! power   := atom ('^' nat)?
//! atom    := nat ('/' nat)? | 'i' | var | '(' expr ')'
//! var     := 'x' | 'y' | 'u' | 'v'
//! ```
//!
//! A polynomial uses one variable pair — `x,y` or `u,v` — and the first
//! variable encountered pins the pair. Rational literals are written `a/b`;
//! `/` is not a general operator. Terms whose total degree exceeds the
//! working truncation order are dropped and the result is marked inexact.

use crate::cpoly::BPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::Series2;
use crate::vector_field::{TangentMap, VectorField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    ImaginaryUnit,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        match c {
            c if c.is_whitespace() => {
                k += 1;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    digits.push(chars[k].1);
                    k += 1;
                }
                let n: BigInt = digits.parse().expect("digit string");
                out.push((pos, Tok::Int(n)));
            }
            'x' | 'y' | 'u' | 'v' => {
                out.push((pos, Tok::Var(c)));
                k += 1;
            }
            'i' => {
                out.push((pos, Tok::ImaginaryUnit));
                k += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                k += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                k += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                k += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                k += 1;
            }
            '/' => {
                out.push((pos, Tok::Slash));
                k += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                k += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                k += 1;
            }
            ',' => {
                out.push((pos, Tok::Comma));
                k += 1;
            }
            c if c.is_alphabetic() => {
                return Err(Error::parse(
                    pos,
                    format!("unknown variable '{c}' (use the pair x,y or u,v)"),
                ));
            }
            _ => {
                return Err(Error::parse(pos, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    /// The variable pair in use, pinned by the first variable seen.
    pair: Option<(char, char)>,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            idx: 0,
            end: text.len(),
            pair: None,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn eat(&mut self, want: &Tok, what: &str) -> Result<()> {
        if self.peek() == Some(want) {
            self.idx += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<BPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.idx += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.idx += 1;
                Ok(self.factor()?.neg())
            }
            Some(Tok::Plus) => {
                self.idx += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.idx += 1;
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e = usize::try_from(&n)
                    .map_err(|_| Error::parse(pos, "exponent too large".to_string()))?;
                let mut acc = BPoly::monomial(Scalar::one(), 0, 0);
                for _ in 0..e {
                    acc = acc.mul(&base);
                }
                Ok(acc)
            }
            Some(Tok::Minus) => Err(Error::parse(
                pos,
                "negative exponent: only nonnegative integer powers are allowed".to_string(),
            )),
            _ => Err(Error::parse(
                pos,
                "expected a nonnegative integer exponent after '^'".to_string(),
            )),
        }
    }

    fn atom(&mut self) -> Result<BPoly> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                // A rational literal `a/b`; '/' is not a general operator.
                if self.peek() == Some(&Tok::Slash) {
                    self.idx += 1;
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(Error::parse(
                                    dpos,
                                    "zero denominator in rational literal".to_string(),
                                ));
                            }
                            let q = BigRational::new(n, d);
                            Ok(BPoly::monomial(
                                Scalar::new(q, BigRational::zero()),
                                0,
                                0,
                            ))
                        }
                        _ => Err(Error::parse(
                            dpos,
                            "expected an integer denominator after '/'".to_string(),
                        )),
                    }
                } else {
                    Ok(BPoly::monomial(
                        Scalar::new(BigRational::from_integer(n), BigRational::zero()),
                        0,
                        0,
                    ))
                }
            }
            Some(Tok::ImaginaryUnit) => Ok(BPoly::monomial(Scalar::i(), 0, 0)),
            Some(Tok::Var(c)) => {
                let this_pair = if c == 'x' || c == 'y' { ('x', 'y') } else { ('u', 'v') };
                match self.pair {
                    None => self.pair = Some(this_pair),
                    Some(p) if p == this_pair => {}
                    Some(p) => {
                        return Err(Error::parse(
                            pos,
                            format!(
                                "variable '{c}' does not belong to the declared pair {},{}",
                                p.0, p.1
                            ),
                        ));
                    }
                }
                if c == this_pair.0 {
                    Ok(BPoly::monomial(Scalar::one(), 1, 0))
                } else {
                    Ok(BPoly::monomial(Scalar::one(), 0, 1))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Slash) => Err(Error::parse(
                pos,
                "'/' is only valid inside a rational literal a/b".to_string(),
            )),
            _ => Err(Error::parse(
                pos,
                "expected a number, 'i', a variable, or '('".to_string(),
            )),
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.idx == self.toks.len() {
            Ok(())
        } else {
            Err(Error::parse(
                self.pos(),
                "unexpected trailing input".to_string(),
            ))
        }
    }
}

/// Parse one polynomial into a series at the given truncation order.
/// Terms of total degree above the order are dropped and the result is
/// marked inexact.
pub fn parse_poly(text: &str, trunc: usize) -> Result<Series2> {
    let mut p = Parser::new(text)?;
    let poly = p.expr()?;
    p.expect_end()?;
    Ok(poly.to_series2(trunc).0)
}

/// Parse `"A, B"` as the vector field `A ∂/∂x + B ∂/∂y`.
pub fn parse_field(text: &str, trunc: usize) -> Result<VectorField> {
    let mut p = Parser::new(text)?;
    let a = p.expr()?;
    p.eat(&Tok::Comma, "',' between the two components")?;
    let b = p.expr()?;
    p.expect_end()?;
    Ok(VectorField::new(
        a.to_series2(trunc).0,
        b.to_series2(trunc).0,
    ))
}

/// Parse `"f1, f2"` as a map tangent to the identity; rejects maps whose
/// linear part is not the identity.
pub fn parse_map(text: &str, trunc: usize) -> Result<TangentMap> {
    let mut p = Parser::new(text)?;
    let f1 = p.expr()?;
    p.eat(&Tok::Comma, "',' between the two components")?;
    let f2 = p.expr()?;
    p.expect_end()?;
    TangentMap::new(f1.to_series2(trunc).0, f2.to_series2(trunc).0)
}

/// A parsed input: either a vector field or a map tangent to the identity.
#[derive(Debug, Clone)]
pub enum ParsedInput {
    Field(VectorField),
    Map(TangentMap),
}

impl ParsedInput {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedInput::Field(_) => "field",
            ParsedInput::Map(_) => "map",
        }
    }
}

/// Parse an input file: `#` starts a comment, blank lines are skipped, and
/// the remaining text must be one spec of the form `field: A, B` or
/// `map: f1, f2` (possibly spread over several lines).
pub fn parse_input_file(text: &str, trunc: usize) -> Result<ParsedInput> {
    let payload: String = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let payload = payload.trim();
    if let Some(rest) = payload.strip_prefix("field:") {
        Ok(ParsedInput::Field(parse_field(rest, trunc)?))
    } else if let Some(rest) = payload.strip_prefix("map:") {
        Ok(ParsedInput::Map(parse_map(rest, trunc)?))
    } else {
        Err(Error::parse(
            0,
            "an input file must contain one spec starting with 'field:' or 'map:'".to_string(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 12;

    fn s2(terms: &[(usize, usize, i64)]) -> Series2 {
        Series2::from_int_terms(N, terms)
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(parse_poly("x^2 + x*y", N).unwrap(), s2(&[(2, 0, 1), (1, 1, 1)]));
        let p = parse_poly("1/2*y^3 - i*x", N).unwrap();
        assert_eq!(p.coeff(0, 3), Scalar::from_ratio(1, 2));
        assert_eq!(p.coeff(1, 0), -&Scalar::i());
        assert_eq!(parse_poly("(x+y)^2", N).unwrap(), s2(&[(2, 0, 1), (1, 1, 2), (0, 2, 1)]));
        assert_eq!(parse_poly("-x^2 + y", N).unwrap(), s2(&[(2, 0, -1), (0, 1, 1)]));
        assert_eq!(parse_poly("x^0", N).unwrap(), Series2::one(N));
        assert_eq!(parse_poly("u*v", N).unwrap(), s2(&[(1, 1, 1)]));
    }

    #[test]
    fn rejects_bad_input() {
        let err = parse_poly("x^-1", N).unwrap_err();
        assert!(err.to_string().contains("negative exponent"), "{err}");
        assert!(parse_poly("2x", N).is_err(), "implicit multiplication");
        assert!(parse_poly("x + z", N).is_err(), "unknown variable");
        let err = parse_poly("x + v", N).unwrap_err();
        assert!(err.to_string().contains("pair"), "{err}");
        assert!(parse_poly("1/0", N).is_err(), "zero denominator");
        assert!(parse_poly("x/2", N).is_err(), "slash after variable");
        assert!(parse_poly("(x", N).is_err(), "unbalanced paren");
        assert!(parse_poly("", N).is_err(), "empty input");
        assert!(parse_poly("x^(2)", N).is_err(), "non-literal exponent");
        match parse_poly("x^2 @", N).unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 4),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn degree_overflow_becomes_inexact_jet() {
        let p = parse_poly("x^15", N).unwrap();
        assert!(p.is_zero());
        assert!(!p.is_exact());
        let p = parse_poly("x^2 + y^15", N).unwrap();
        assert_eq!(p.coeff(2, 0), Scalar::one());
        assert!(!p.is_exact());
    }

    #[test]
    fn field_and_map_inputs() {
        let x = parse_field("x^2, x*y + y^2", N).unwrap();
        assert_eq!(*x.a(), s2(&[(2, 0, 1)]));
        assert_eq!(*x.b(), s2(&[(1, 1, 1), (0, 2, 1)]));
        assert!(parse_field("x^2", N).is_err(), "missing comma");
        assert!(parse_field("x^2, y^2, x", N).is_err(), "trailing input");
        let f = parse_map("x + x^2, y", N).unwrap();
        assert_eq!(*f.f1(), s2(&[(1, 0, 1), (2, 0, 1)]));
        let err = parse_map("2*x, y", N).unwrap_err();
        assert!(err.to_string().contains("tangent to the identity"), "{err}");
    }

    #[test]
    fn input_files() {
        let text = "# a singular field\nfield: x^2,\n  x*y + y^2  # second component\n";
        match parse_input_file(text, N).unwrap() {
            ParsedInput::Field(x) => {
                assert_eq!(*x.b(), s2(&[(1, 1, 1), (0, 2, 1)]));
            }
            other => panic!("expected a field, got {}", other.kind()),
        }
        let text = "map: x + x^2, y + y^3";
        assert!(matches!(
            parse_input_file(text, N).unwrap(),
            ParsedInput::Map(_)
        ));
        assert!(parse_input_file("x^2, y^2", N).is_err(), "missing prefix");
    }

    #[test]
    fn rendering_round_trips() {
        let samples = [
            s2(&[(2, 0, 1), (1, 1, 1)]),
            s2(&[(0, 3, -2), (4, 0, 5)]),
            Series2::from_terms(
                N,
                &[
                    (1, 0, Scalar::from_ratio(-1, 2)),
                    (0, 2, Scalar::from_parts(1, 2)),
                    (2, 1, Scalar::from_parts(0, -3)),
                ],
            ),
            Series2::zero(N),
            Series2::one(N),
        ];
        for s in samples {
            let text = s.render_with("x", "y");
            let back = parse_poly(&text, N).unwrap();
            assert_eq!(back, s, "round trip of {text}");
        }
    }
}
