use std::cmp::Ordering;
use std::fmt;

use super::poly::BinaryPoly;
use super::rational::RationalFunction;
use crate::error::Error;

/// A place of F2(x): a monic irreducible polynomial, or the place at infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Place {
    Finite(BinaryPoly),
    Infinity,
}

impl Place {
    pub fn finite(m: BinaryPoly) -> Result<Self, Error> {
        if m.is_irreducible() {
            Ok(Place::Finite(m))
        } else {
            Err(Error::NotIrreducible(m.display_with('x')))
        }
    }

    /// The place `x = 0`.
    pub fn zero() -> Self {
        Place::Finite(BinaryPoly::x())
    }

    /// The place `x = 1`.
    pub fn one() -> Self {
        Place::Finite(BinaryPoly::from_bits(0b11))
    }

    /// The degree-2 place `x^2 + x + 1`.
    pub fn zeta() -> Self {
        Place::Finite(BinaryPoly::from_bits(0b111))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(m) => m.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    pub fn valuation(&self, f: &RationalFunction) -> Valuation {
        if f.is_zero() {
            return Valuation::Infinite;
        }
        match self {
            Place::Finite(m) => {
                let a = f.num().split_power(m).0 as i64;
                let b = f.den().split_power(m).0 as i64;
                Valuation::Finite(a - b)
            }
            Place::Infinity => {
                let dn = f.num().degree().unwrap() as i64;
                let dd = f.den().degree().unwrap() as i64;
                Valuation::Finite(dd - dn)
            }
        }
    }

    pub fn display_with(&self, var: char) -> String {
        match self {
            Place::Infinity => "inf".into(),
            Place::Finite(m) if m.degree() == Some(2) && m.weight() == 3 => "zeta".into(),
            Place::Finite(m) if m.degree() == Some(1) => {
                if m.coeff(0) {
                    "1".into()
                } else {
                    "0".into()
                }
            }
            Place::Finite(m) => format!("({})", m.display_with(var)),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('z'))
    }
}

/// Valuation of an element; zero has infinite valuation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rf(bits_n: u64, bits_d: u64) -> RationalFunction {
        RationalFunction::new(BinaryPoly::from_bits(bits_n), BinaryPoly::from_bits(bits_d)).unwrap()
    }

    #[test]
    fn basic_valuations() {
        let z = RationalFunction::x();
        let b = RationalFunction::poly(&[0, 3]);
        assert_eq!(Place::zero().valuation(&z), Valuation::Finite(1));
        assert_eq!(Place::Infinity.valuation(&b), Valuation::Finite(-3));
        assert_eq!(Place::one().valuation(&b), Valuation::Finite(1));
        assert_eq!(Place::zeta().valuation(&b), Valuation::Finite(1));
        assert_eq!(
            Place::zero().valuation(&RationalFunction::zero()),
            Valuation::Infinite
        );
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinite);
    }

    #[test]
    fn rejects_reducible() {
        assert!(Place::finite(BinaryPoly::from_bits(0b101)).is_err());
    }

    fn small_places() -> &'static [Place] {
        static PLACES: std::sync::OnceLock<Vec<Place>> = std::sync::OnceLock::new();
        PLACES.get_or_init(|| {
            (2u64..4096)
                .map(BinaryPoly::from_bits)
                .filter(|m| m.is_irreducible())
                .map(Place::Finite)
                .collect()
        })
    }

    proptest! {
        // product formula: sum over all places of deg(p) * v_p(f) = 0
        #[test]
        fn product_formula(n in 1u64..4096, d in 1u64..4096) {
            let f = rf(n, d);
            let mut total = Place::Infinity.valuation(&f).finite().unwrap();
            for p in small_places() {
                total += p.degree() as i64 * p.valuation(&f).finite().unwrap();
            }
            prop_assert_eq!(total, 0);
        }

        #[test]
        fn valuation_is_additive(a in 1u64..512, b in 1u64..512, c in 1u64..512) {
            let f = rf(a, c);
            let g = rf(b, a);
            for p in [Place::zero(), Place::one(), Place::zeta(), Place::Infinity] {
                let vf = p.valuation(&f).finite().unwrap();
                let vg = p.valuation(&g).finite().unwrap();
                prop_assert_eq!(p.valuation(&(&f * &g)), Valuation::Finite(vf + vg));
                let s = &f + &g;
                prop_assert!(p.valuation(&s) >= Valuation::Finite(vf.min(vg)));
            }
        }
    }
}
