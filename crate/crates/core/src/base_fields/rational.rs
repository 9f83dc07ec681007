use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::BinaryPoly;

/// Element of F2(x) in lowest terms.
///
/// The denominator is nonzero and coprime to the numerator; zero is stored as
/// `0/1`. Since every nonzero polynomial over F2 is monic, this form is unique
/// and derived equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: BinaryPoly,
    den: BinaryPoly,
}

impl RationalFunction {
    pub fn new(num: BinaryPoly, den: BinaryPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        Some(RationalFunction {
            num: num.div_rem(&g).0,
            den: den.div_rem(&g).0,
        })
    }

    pub fn from_poly(p: BinaryPoly) -> Self {
        RationalFunction {
            num: p,
            den: BinaryPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(BinaryPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BinaryPoly::one())
    }

    pub fn x() -> Self {
        Self::from_poly(BinaryPoly::x())
    }

    /// Shorthand for a polynomial given by exponents, e.g. `[0, 3]` is `1+x^3`.
    pub fn poly(exps: &[usize]) -> Self {
        Self::from_poly(BinaryPoly::from_exponents(exps))
    }

    /// `x^k` for any integer `k`.
    pub fn x_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(BinaryPoly::monomial(k as usize))
        } else {
            RationalFunction {
                num: BinaryPoly::one(),
                den: BinaryPoly::monomial((-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &BinaryPoly {
        &self.num
    }

    pub fn den(&self) -> &BinaryPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RationalFunction {
                num: self.den.clone(),
                den: self.num.clone(),
            })
        }
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inv()?)
    }

    pub fn square(&self) -> Self {
        RationalFunction {
            num: self.num.square(),
            den: self.den.square(),
        }
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Some(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) + &(&self.num * &self.den.derivative());
        Self::new(n, self.den.square()).expect("nonzero denominator")
    }

    /// `self(g)`; `None` when `g` makes the denominator vanish.
    pub fn compose(&self, g: &RationalFunction) -> Option<Self> {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let n = homogenize(&self.num, dn, &g.num, &g.den);
        let d = homogenize(&self.den, dd, &g.num, &g.den);
        if d.is_zero() {
            return None;
        }
        // self(p/q) = n / q^dn  divided by  d / q^dd
        let (num, den) = if dn >= dd {
            (n, &d * &g.den.pow((dn - dd) as u64))
        } else {
            (&n * &g.den.pow((dd - dn) as u64), d)
        };
        Self::new(num, den)
    }

    pub fn display_with(&self, var: char) -> String {
        let n = self.num.display_with(var);
        if self.den.is_one() {
            return n;
        }
        let wrap = |p: &BinaryPoly, s: String| if p.weight() > 1 { format!("({s})") } else { s };
        format!(
            "{}/{}",
            wrap(&self.num, n),
            wrap(&self.den, self.den.display_with(var))
        )
    }
}

// sum over k of c_k p^k q^(deg - k)
fn homogenize(f: &BinaryPoly, deg: usize, p: &BinaryPoly, q: &BinaryPoly) -> BinaryPoly {
    let mut out = BinaryPoly::zero();
    for k in f.exponents() {
        out += &(&p.pow(k as u64) * &q.pow((deg - k) as u64));
    }
    out
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.display_with('x'))
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BinaryPoly> for RationalFunction {
    fn from(p: BinaryPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_rem(&g1).0 * &rhs.num.div_rem(&g2).0;
        let den = &self.den.div_rem(&g2).0 * &rhs.den.div_rem(&g1).0;
        RationalFunction { num, den }
    }
}

/// Panics on division by zero; see [`RationalFunction::checked_div`].
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero in F2(x)")
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    // characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.clone()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Mul mul, Div div, Sub sub);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(max_bits: u32) -> impl Strategy<Value = BinaryPoly> {
        (0u64..(1u64 << max_bits)).prop_map(BinaryPoly::from_bits)
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction> {
        (
            arb_poly(10),
            arb_poly(10).prop_filter("den", |d| !d.is_zero()),
        )
            .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
    }

    #[test]
    fn lowest_terms() {
        let f = RationalFunction::new(
            BinaryPoly::from_exponents(&[0, 3]),
            BinaryPoly::from_exponents(&[0, 1]),
        )
        .unwrap();
        assert_eq!(f, RationalFunction::poly(&[0, 1, 2]));
        assert!(RationalFunction::new(BinaryPoly::one(), BinaryPoly::zero()).is_none());
        assert!(RationalFunction::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        let f = RationalFunction::x() / RationalFunction::poly(&[0, 1]);
        assert_eq!(f.display_with('z'), "z/(1+z)");
        assert_eq!(RationalFunction::x_pow(-2).display_with('t'), "1/t^2");
    }

    #[test]
    fn compose_with_artin_schreier() {
        // substituting z = y^2 + y into 1 + z^3
        let g = RationalFunction::poly(&[1, 2]);
        let f = RationalFunction::poly(&[0, 3]);
        let h = f.compose(&g).unwrap();
        let expect = &(&(&g * &g) * &g) + &RationalFunction::one();
        assert_eq!(h, expect);
        // composing with 1/(t^2+t)
        let u = RationalFunction::poly(&[1, 2]).inv().unwrap();
        let zinv = RationalFunction::x().inv().unwrap();
        assert_eq!(zinv.compose(&u).unwrap(), RationalFunction::poly(&[1, 2]));
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &a).is_zero());
            if let Some(ai) = a.inv() {
                prop_assert!((&a * &ai).is_one());
            }
        }

        #[test]
        fn quotient_rule(a in arb_rf(), b in arb_rf()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_is_ring_map(a in arb_rf(), b in arb_rf(), g in arb_rf()) {
            prop_assume!(g.num().degree().unwrap_or(0) > 0 || g.den().degree().unwrap_or(0) > 0);
            let ca = a.compose(&g).unwrap();
            let cb = b.compose(&g).unwrap();
            prop_assert_eq!((&a + &b).compose(&g).unwrap(), &ca + &cb);
            prop_assert_eq!((&a * &b).compose(&g).unwrap(), &ca * &cb);
        }
    }
}
