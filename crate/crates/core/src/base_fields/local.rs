use std::fmt;

use super::place::{Place, Valuation};
use super::poly::BinaryPoly;
use super::rational::RationalFunction;
use crate::error::Error;

/// Finite Laurent polynomial `sum_k c_k pi^k` over F2 in a uniformizer `pi`.
///
/// Stored as `pi^shift * poly` with `poly(0) = 1`, so each series has a single
/// representation. Zero is `shift = 0, poly = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    shift: i64,
    poly: BinaryPoly,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(e: i64) -> Self {
        LaurentPoly {
            shift: e,
            poly: BinaryPoly::one(),
        }
    }

    pub fn from_shifted(poly: BinaryPoly, shift: i64) -> Self {
        match poly.trailing_zeros() {
            None => LaurentPoly::zero(),
            Some(t) => LaurentPoly {
                shift: shift + t as i64,
                poly: poly.shr(t),
            },
        }
    }

    pub fn from_exponents(exps: &[i64]) -> Self {
        let mut out = LaurentPoly::zero();
        for &e in exps {
            out = out.add(&LaurentPoly::monomial(e));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.shift)
        }
    }

    pub fn coeff(&self, e: i64) -> bool {
        e >= self.shift && !self.is_zero() && self.poly.coeff((e - self.shift) as usize)
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.poly
            .exponents()
            .into_iter()
            .map(|k| self.shift + k as i64)
            .collect()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = self.poly.shl((self.shift - s) as usize);
        let b = other.poly.shl((other.shift - s) as usize);
        LaurentPoly::from_shifted(&a + &b, s)
    }

    pub fn mul_pi_pow(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            shift: self.shift + k,
            poly: self.poly.clone(),
        }
    }

    /// Terms with exponent strictly below `upper`.
    pub fn truncate(&self, upper: i64) -> LaurentPoly {
        if self.is_zero() || upper <= self.shift {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_shifted(
            self.poly.truncate((upper - self.shift) as usize),
            self.shift,
        )
    }

    /// Highest exponent present.
    pub fn top(&self) -> Option<i64> {
        self.poly.degree().map(|d| self.shift + d as i64)
    }

    /// The same series read as a rational function in the uniformizer variable.
    pub fn to_rational(&self) -> RationalFunction {
        &RationalFunction::from_poly(self.poly.clone()) * &RationalFunction::x_pow(self.shift)
    }

    pub fn display_with(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            })
            .collect();
        terms.join("+")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.display_with('p'))
    }
}

/// Element of the residue field F2[x]/(m) at a place.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ResidueElement {
    pub modulus: BinaryPoly,
    pub value: BinaryPoly,
}

impl ResidueElement {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Absolute trace to F2.
    pub fn trace(&self) -> bool {
        let d = self.modulus.degree().unwrap();
        let mut acc = BinaryPoly::zero();
        let mut p = self.value.clone();
        for _ in 0..d {
            acc += &p;
            p = p.mul_mod(&p, &self.modulus);
        }
        debug_assert!(acc.degree().unwrap_or(0) == 0);
        acc.coeff(0)
    }
}

// Root of m modulo m^n congruent to x, by Newton iteration.
fn teichmuller_root(m: &BinaryPoly, modulus: &BinaryPoly) -> BinaryPoly {
    let dm = m.derivative();
    let mut theta = &BinaryPoly::x() % modulus;
    loop {
        let val = eval_mod(m, &theta, modulus);
        if val.is_zero() {
            return theta;
        }
        let d = eval_mod(&dm, &theta, modulus)
            .inv_mod(modulus)
            .expect("separable place");
        theta = &(&theta + &val.mul_mod(&d, modulus)) % modulus;
    }
}

fn eval_mod(p: &BinaryPoly, at: &BinaryPoly, modulus: &BinaryPoly) -> BinaryPoly {
    let mut acc = BinaryPoly::zero();
    if let Some(d) = p.degree() {
        for k in (0..=d).rev() {
            acc = acc.mul_mod(at, modulus);
            if p.coeff(k) {
                acc += &BinaryPoly::one();
            }
        }
    }
    &acc % modulus
}

/// Coefficients of the expansion of `f` at `place` for exponents `< upper`.
///
/// The uniformizer is `m` at a finite place and `1/x` at infinity. Each
/// coefficient is a residue class mod `m` (a constant at degree-1 places and
/// at infinity), lifted through the Teichmüller section. Only nonzero
/// coefficients are returned, in increasing exponent order.
pub fn local_digits(f: &RationalFunction, place: &Place, upper: i64) -> Vec<(i64, BinaryPoly)> {
    match place {
        Place::Infinity => {
            let g = f
                .compose(&RationalFunction::x_pow(-1))
                .expect("nonconstant substitution");
            local_digits(&g, &Place::zero(), upper)
        }
        Place::Finite(m) => {
            if f.is_zero() {
                return Vec::new();
            }
            let (vn, g) = f.num().split_power(m);
            let (vd, h) = f.den().split_power(m);
            let v = vn as i64 - vd as i64;
            if upper <= v {
                return Vec::new();
            }
            let n = (upper - v) as u64;
            let big = m.pow(n);
            let mut r = g.mul_mod(&h.inv_mod(&big).expect("unit at place"), &big);
            let d = m.degree().unwrap();
            let theta = teichmuller_root(m, &big);
            let mut theta_pows = vec![BinaryPoly::one()];
            for i in 1..d {
                theta_pows.push(theta_pows[i - 1].mul_mod(&theta, &big));
            }
            let mut out = Vec::new();
            for k in 0..n as i64 {
                let c = &r % m;
                if !c.is_zero() {
                    let mut lift = BinaryPoly::zero();
                    for e in c.exponents() {
                        lift += &theta_pows[e];
                    }
                    r = (&r + &(&lift % &big)).div_rem(m).0;
                    out.push((v + k, c));
                } else {
                    r = r.div_rem(m).0;
                }
            }
            out
        }
    }
}

/// Expansion of `f` in the uniformizer of a degree-one place, truncated below `upper`.
pub fn laurent_expand(
    f: &RationalFunction,
    place: &Place,
    upper: i64,
) -> Result<LaurentPoly, Error> {
    if place.degree() != 1 {
        return Err(Error::UnsupportedPlace(place.to_string()));
    }
    let exps: Vec<i64> = local_digits(f, place, upper)
        .into_iter()
        .map(|(e, _)| e)
        .collect();
    Ok(LaurentPoly::from_exponents(&exps))
}

/// Residue of the differential `a db/b` at `place`.
pub fn residue(
    a: &RationalFunction,
    b: &RationalFunction,
    place: &Place,
) -> Result<ResidueElement, Error> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("logarithmic derivative of zero"));
    }
    let f = &(a * &b.derivative()) / b;
    let (modulus, g) = match place {
        Place::Finite(m) => {
            let dm = RationalFunction::from_poly(m.derivative());
            (m.clone(), &f / &dm)
        }
        Place::Infinity => {
            // x = 1/pi, dx = pi^-2 dpi (signs vanish in characteristic 2)
            let g = f
                .compose(&RationalFunction::x_pow(-1))
                .expect("nonconstant substitution");
            let g = &g * &RationalFunction::x_pow(-2);
            let value = local_digits(&g, &Place::zero(), 0)
                .into_iter()
                .find(|(e, _)| *e == -1)
                .map(|(_, c)| c)
                .unwrap_or_default();
            return Ok(ResidueElement {
                modulus: BinaryPoly::x(),
                value,
            });
        }
    };
    let value = local_digits(&g, place, 0)
        .into_iter()
        .find(|(e, _)| *e == -1)
        .map(|(_, c)| c)
        .unwrap_or_default();
    Ok(ResidueElement { modulus, value })
}

/// Local symbol of `[a, b)` at `place`: the trace of the residue of `a db/b`.
pub fn local_symbol(
    a: &RationalFunction,
    b: &RationalFunction,
    place: &Place,
) -> Result<u8, Error> {
    Ok(residue(a, b, place)?.trace() as u8)
}
