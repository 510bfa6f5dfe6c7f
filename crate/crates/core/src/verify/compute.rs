//! Single evaluations from a small prefix expression language, e.g.
//! `star 0 h h` or `theta (mode -2 h h)`.
//!
//! Vectors: `one`, `h`, `w` (or `omega`), `p[2,1]` for a PBW monomial, or a
//! parenthesized expression. Integer parameters come before vector arguments.

use crate::exact::{GradedVector, Rational};
use crate::voa::Voa;
use crate::zhu::{
    bar_star_mn, bar_star_upper, bracket_star, circ_m_n, circ_n, dot_action, left_right_gap, shift_relation, star_n,
};
use crate::{Error, Result};

/// `(name, integer parameters, vector arguments, description)`.
pub const OPERATIONS: &[(&str, usize, usize, &str)] = &[
    ("star", 1, 2, "star n a b: a *_n b"),
    ("circ", 1, 2, "circ n a b: a o_n b"),
    ("circmn", 2, 2, "circmn m n a b: a o_m^n b"),
    ("barstar", 2, 2, "barstar m n a b: a *bar_{m,n} b"),
    ("barstarup", 2, 2, "barstarup m n a b: a *bar_m^n b"),
    ("bracket", 3, 2, "bracket p m n a b: a[p] *bar_m^n b"),
    ("dot", 0, 2, "dot a b: a_(wt a - 1) b"),
    ("gap", 0, 2, "gap a b: Res_x (1+x)^{wt a-1} Y(a,x) b"),
    ("mode", 1, 2, "mode k a b: a_k b"),
    ("theta", 0, 1, "theta a: e^{L(1)} (-1)^{L(0)} a"),
    ("L", 1, 1, "L k a: L(k) a"),
    ("shift", 1, 1, "shift s a: (L(-1) + L(0) + s) a"),
];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Int(i64),
    Open,
    Close,
    Partition(Vec<u8>),
}

fn parse_error(pos: usize, msg: impl std::fmt::Display) -> Error {
    Error::Usage(format!("parse error at position {pos}: {msg}"))
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' || c == ')' {
            out.push((i, if c == '(' { Tok::Open } else { Tok::Close }));
            i += 1;
        } else if c == '-' || c.is_ascii_digit() {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse()
                .map_err(|_| parse_error(start, format!("bad integer '{s}'")))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "p" && i < chars.len() && chars[i] == '[' {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| parse_error(i, "unclosed '['"))?
                    + i;
                let body: String = chars[i + 1..close].iter().collect();
                let parts = body
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<u8>()
                            .map_err(|_| parse_error(i + 1, format!("bad part '{s}'")))
                    })
                    .collect::<Result<Vec<u8>>>()?;
                out.push((start, Tok::Partition(parts)));
                i = close + 1;
            } else {
                out.push((start, Tok::Word(word)));
            }
        } else {
            return Err(parse_error(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'v> {
    voa: &'v Voa,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn int(&mut self) -> Result<i64> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(parse_error(pos, "expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<GradedVector> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Open) => {
                let v = self.expr()?;
                let close = self.pos();
                match self.next() {
                    Some(Tok::Close) => Ok(v),
                    _ => Err(parse_error(close, "expected ')'")),
                }
            }
            Some(Tok::Partition(p)) => self.voa.monomial(&p).map_err(|e| parse_error(pos, e)),
            Some(Tok::Word(w)) => match w.as_str() {
                "one" | "vac" => Ok(self.voa.vacuum()),
                "h" => self.voa.h().map_err(|e| parse_error(pos, e)),
                "w" | "omega" => Ok(self.voa.omega()),
                name => {
                    let &(_, n_int, n_vec, _) = OPERATIONS
                        .iter()
                        .find(|op| op.0 == name)
                        .ok_or_else(|| parse_error(pos, format!("unknown name '{name}'")))?;
                    let ints = (0..n_int).map(|_| self.int()).collect::<Result<Vec<_>>>()?;
                    let vecs = (0..n_vec).map(|_| self.expr()).collect::<Result<Vec<_>>>()?;
                    self.apply(name, &ints, &vecs)
                }
            },
            Some(t) => Err(parse_error(pos, format!("unexpected {t:?}"))),
            None => Err(parse_error(pos, "unexpected end of input")),
        }
    }

    fn apply(&self, name: &str, k: &[i64], x: &[GradedVector]) -> Result<GradedVector> {
        let voa = self.voa;
        match name {
            "star" => star_n(voa, &x[0], &x[1], k[0]),
            "circ" => circ_n(voa, &x[0], &x[1], k[0]),
            "circmn" => circ_m_n(voa, &x[0], &x[1], k[0], k[1]),
            "barstar" => bar_star_mn(voa, &x[0], &x[1], k[0], k[1]),
            "barstarup" => bar_star_upper(voa, &x[0], &x[1], k[0], k[1]),
            "bracket" => bracket_star(voa, &x[0], k[0], &x[1], k[1], k[2]),
            "dot" => dot_action(voa, &x[0], &x[1]),
            "gap" => left_right_gap(voa, &x[0], &x[1]),
            "mode" => voa.mode_apply(&x[0], k[0], &x[1]),
            "theta" => voa.theta(&x[0]),
            "L" => voa.virasoro_mode(k[0], &x[0]),
            "shift" => shift_relation(voa, &x[0], k[0]),
            _ => unreachable!("operation table and dispatch agree"),
        }
    }
}

/// Parses and evaluates `src`; parse errors are usage errors carrying the
/// character position.
pub fn evaluate(voa: &Voa, src: &str) -> Result<GradedVector> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        voa,
        toks,
        at: 0,
        end: src.chars().count(),
    };
    let v = p.expr()?;
    if p.at < p.toks.len() {
        return Err(parse_error(p.pos(), "trailing input"));
    }
    Ok(v)
}

/// The coefficient of a basis monomial in `v`, for scripted spot checks.
pub fn coefficient(voa: &Voa, v: &GradedVector, parts: &[u8]) -> Result<Rational> {
    let key = voa.monomial(parts)?;
    let (k, _) = key.terms().next().expect("basis vector");
    Ok(v.coeff(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_examples() {
        let voa = Voa::free_boson(12);
        let v = evaluate(&voa, "star 0 h h").unwrap();
        assert_eq!(v, voa.omega().scaled(&Rational::from_int(2)));
        assert_eq!(coefficient(&voa, &v, &[1, 1]).unwrap(), Rational::ONE);
        assert_eq!(evaluate(&voa, "theta h").unwrap(), -&voa.h().unwrap());
        assert!(evaluate(&voa, "circmn 0 0 one w").unwrap().is_zero());
        assert_eq!(
            evaluate(&voa, "mode -1 h (p[1])").unwrap(),
            voa.monomial(&[1, 1]).unwrap()
        );
        assert_eq!(
            evaluate(&voa, "L 0 p[2,1]").unwrap(),
            voa.monomial(&[2, 1]).unwrap().scaled(&Rational::from_int(3))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let voa = Voa::free_boson(8);
        for (src, pos) in [
            ("star x h h", 5),
            ("star 0 h", 8),
            ("theta h h", 8),
            ("(theta h", 8),
            ("dot h $", 6),
        ] {
            match evaluate(&voa, src) {
                Err(Error::Usage(msg)) => assert!(msg.contains(&format!("position {pos}")), "{src}: {msg}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }
}
