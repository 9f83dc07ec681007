//! Small recursive-descent parser for expressions such as `(1+z)/(z^2+z)`.
//!
//! Grammar, whitespace ignored:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/')? factor)*
//! factor  := primary ('^' '-'? digits)?
//! primary := digits | '(' expr ')' | atom
//! ```
//!
//! Integer literals are read mod 2 and `-` is addition. Atoms are resolved by a
//! caller-supplied function, which lets the same parser read quaternion
//! expressions with basis symbols.

use super::rational::RationalFunction;
use crate::error::Error;

pub trait ExprRing: Clone + Sized {
    fn from_bit(b: bool) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn try_div(&self, other: &Self) -> Option<Self>;
    fn try_pow(&self, e: i64) -> Option<Self>;
}

impl ExprRing for RationalFunction {
    fn from_bit(b: bool) -> Self {
        if b {
            RationalFunction::one()
        } else {
            RationalFunction::zero()
        }
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        self.checked_div(other)
    }
    fn try_pow(&self, e: i64) -> Option<Self> {
        self.pow(e)
    }
}

/// Resolves an atom at the start of the given text, returning its value and byte length.
pub type AtomFn<'a, T> = dyn Fn(&str) -> Option<(T, usize)> + 'a;

struct Parser<'a, T> {
    src: Vec<char>,
    pos: usize,
    atom: &'a AtomFn<'a, T>,
    input: &'a str,
}

impl<'a, T: ExprRing> Parser<'a, T> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<T, Error> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let t = self.term()?;
                acc = acc.add(&t);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<T, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    acc = acc.try_div(&f).ok_or_else(|| {
                        let mut e = self.err("division by zero or by a non-scalar");
                        if let Error::Parse { position, .. } = &mut e {
                            *position = at;
                        }
                        e
                    })?;
                }
                Some(c) if c == '(' || c.is_alphabetic() || c.is_ascii_digit() => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<T, Error> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let digits: String = self.src[start..self.pos].iter().collect();
            let e: i64 = digits
                .parse()
                .map_err(|_| self.err("exponent out of range"))?;
            let e = if neg { -e } else { e };
            return base
                .try_pow(e)
                .ok_or_else(|| self.err("negative power of zero"));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<T, Error> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut last = c;
                while let Some(d) = self.peek().filter(|d| d.is_ascii_digit()) {
                    last = d;
                    self.pos += 1;
                }
                Ok(T::from_bit((last as u8 - b'0') % 2 == 1))
            }
            Some(_) => {
                let rest: String = self.src[self.pos..].iter().collect();
                match (self.atom)(&rest) {
                    Some((v, len)) => {
                        self.pos += rest[..len].chars().count();
                        Ok(v)
                    }
                    None => Err(self.err("unknown symbol")),
                }
            }
        }
    }
}

pub fn parse_expr<T: ExprRing>(input: &str, atom: &AtomFn<'_, T>) -> Result<T, Error> {
    let src: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src,
        pos: 0,
        atom,
        input,
    };
    let v = p.expr()?;
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses an element of F2(var).
pub fn parse_rational(input: &str, var: char) -> Result<RationalFunction, Error> {
    let atom = move |s: &str| {
        if s.starts_with(var) {
            Some((RationalFunction::x(), var.len_utf8()))
        } else {
            None
        }
    };
    parse_expr(input, &atom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::poly::BinaryPoly;
    use proptest::prelude::*;

    #[test]
    fn parses_common_forms() {
        let f = parse_rational("1+z^3", 'z').unwrap();
        assert_eq!(f, RationalFunction::poly(&[0, 3]));
        let g = parse_rational("(1+z)(1+z+z^2)", 'z').unwrap();
        assert_eq!(g, f);
        let h = parse_rational("z^-1 (z+z^2)", 'z').unwrap();
        assert_eq!(h, RationalFunction::poly(&[0, 1]));
        assert_eq!(
            parse_rational("3z - z", 'z').unwrap(),
            RationalFunction::zero()
        );
    }

    #[test]
    fn reports_errors() {
        assert!(parse_rational("1/(z+z)", 'z').is_err());
        assert!(parse_rational("1+", 'z').is_err());
        assert!(parse_rational("y", 'z').is_err());
        assert!(parse_rational("(z", 'z').is_err());
    }

    proptest! {
        #[test]
        fn display_round_trip(n in 0u64..1 << 12, d in 1u64..1 << 12) {
            let f = RationalFunction::new(BinaryPoly::from_bits(n), BinaryPoly::from_bits(d)).unwrap();
            for var in ['z', 'y', 't'] {
                prop_assert_eq!(parse_rational(&f.display_with(var), var).unwrap(), f.clone());
            }
        }
    }
}
