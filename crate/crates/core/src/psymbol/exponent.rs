//! Exact exponents: affine forms `k0 + ka a + kb b + kc c` with rational
//! coefficients in the free parameters `a, b, c`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

const SYMBOLS: [char; 3] = ['a', 'b', 'c'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    // constant, then the coefficients of a, b, c
    coeffs: [Rational64; 4],
}

impl Exponent {
    pub fn constant(q: Rational64) -> Self {
        let z = Rational64::zero();
        Exponent { coeffs: [q, z, z, z] }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational64::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(Rational64::new(num, den))
    }

    /// The free parameter `a`, `b` or `c`.
    pub fn symbol(name: char) -> Result<Self> {
        let idx = SYMBOLS
            .iter()
            .position(|&s| s == name)
            .ok_or_else(|| Error::Parse(format!("unknown parameter {name:?}")))?;
        let mut e = Self::int(0);
        e.coeffs[idx + 1] = Rational64::one();
        Ok(e)
    }

    pub fn a() -> Self {
        Self::symbol('a').unwrap()
    }

    pub fn b() -> Self {
        Self::symbol('b').unwrap()
    }

    pub fn c() -> Self {
        Self::symbol('c').unwrap()
    }

    /// The value when no free parameter occurs.
    pub fn as_constant(&self) -> Option<Rational64> {
        self.coeffs[1..].iter().all(Zero::is_zero).then_some(self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    fn scale(self, k: Rational64) -> Self {
        let mut out = self;
        for x in out.coeffs.iter_mut() {
            *x *= k;
        }
        out
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(mut self, rhs: Exponent) -> Exponent {
        for (x, y) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *x += y;
        }
        self
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        self + (-rhs)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        self.scale(-Rational64::one())
    }
}

impl Mul<Rational64> for Exponent {
    type Output = Exponent;
    fn mul(self, k: Rational64) -> Exponent {
        self.scale(k)
    }
}

impl Mul<i64> for Exponent {
    type Output = Exponent;
    fn mul(self, k: i64) -> Exponent {
        self.scale(Rational64::from_integer(k))
    }
}

impl From<Rational64> for Exponent {
    fn from(q: Rational64) -> Self {
        Exponent::constant(q)
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

fn write_term(out: &mut String, coeff: Rational64, symbol: Option<char>) {
    if coeff.is_zero() {
        return;
    }
    let mag = coeff.abs();
    if coeff.is_negative() {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    match symbol {
        None => out.push_str(&mag.to_string()),
        Some(s) => {
            if *mag.numer() != 1 {
                out.push_str(&mag.numer().to_string());
            }
            out.push(s);
            if *mag.denom() != 1 {
                out.push('/');
                out.push_str(&mag.denom().to_string());
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        // positive parameter terms lead, so b - a reads as `b-a`
        for positive in [true, false] {
            for (i, s) in SYMBOLS.iter().enumerate() {
                let k = self.coeffs[i + 1];
                if k.is_positive() == positive {
                    write_term(&mut out, k, Some(*s));
                }
            }
        }
        write_term(&mut out, self.coeffs[0], None);
        if out.is_empty() {
            out.push('0');
        }
        f.pad(&out)
    }
}

impl serde::Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Parses expressions such as `1/3`, `b-a`, `2(a-b-c+1)`, `(a+1)/2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            source: s,
        };
        let e = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    source: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in exponent {:?}", self.pos, self.source))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Exponent> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Exponent> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = self.product(acc, rhs)?;
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let k = rhs
                        .as_constant()
                        .filter(|k| !k.is_zero())
                        .ok_or_else(|| self.error("division by a non-constant or zero"))?;
                    acc = acc * k.recip();
                }
                // implicit multiplication: 2a, 2(a+b), (a+1)(1/2)
                Some(ch) if ch == '(' || SYMBOLS.contains(&ch) => {
                    let rhs = self.factor()?;
                    acc = self.product(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&self, x: Exponent, y: Exponent) -> Result<Exponent> {
        match (x.as_constant(), y.as_constant()) {
            (Some(k), _) => Ok(y * k),
            (_, Some(k)) => Ok(x * k),
            _ => Err(self.error("product of two parameters is not affine")),
        }
    }

    fn factor(&mut self) -> Result<Exponent> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(ch) if SYMBOLS.contains(&ch) => {
                self.pos += 1;
                Exponent::symbol(ch)
            }
            Some(ch) if ch.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: i64 = digits.parse().map_err(|_| self.error("integer overflow"))?;
                Ok(Exponent::int(n))
            }
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            _ => Err(self.error("expected a number, parameter or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(e("1/3"), Exponent::ratio(1, 3));
        assert_eq!(e("b-a"), Exponent::b() - Exponent::a());
        assert_eq!(e("2(a-b-c+1)"), (Exponent::a() - Exponent::b() - Exponent::c() + 1.into()) * 2);
        assert_eq!(e("(a+1)/2"), (Exponent::a() + 1.into()) * Rational64::new(1, 2));
        assert_eq!(e("-2/3"), Exponent::ratio(-2, 3));
        assert_eq!(e("a/2").to_string(), "a/2");
        assert_eq!(e("2(a-b-c+1)").to_string(), "2a-2b-2c+2");
        assert_eq!(e("(a+1)/2").to_string(), "a/2+1/2");
        assert_eq!(e("0").to_string(), "0");
        assert_eq!(e("-a+c").to_string(), "c-a");
        assert_eq!(e("-3a/2 + 1").to_string(), "-3a/2+1");
    }

    #[test]
    fn rejects_non_affine_input() {
        assert!("a*b".parse::<Exponent>().is_err());
        assert!("1/a".parse::<Exponent>().is_err());
        assert!("1/0".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
        assert!("(a".parse::<Exponent>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1/3", "-a+b", "2a-2b-2c+2", "a/2+1/2", "-7/5", "3c/4-1"] {
            let x = e(s);
            assert_eq!(e(&x.to_string()), x, "{s}");
        }
    }
}
