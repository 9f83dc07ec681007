//! The characteristic-2 quaternion algebra `[a, b)` over F2(z).
//!
//! Generators `I`, `J` with `I^2 = I + a`, `J^2 = b`, `JI = IJ + J`. Elements
//! are stored in the basis `1, I, J, IJ`.

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use crate::base_fields::parse::{parse_expr, ExprRing};
use crate::base_fields::{BinaryPoly, RationalFunction};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuaternionAlgebra {
    a: RationalFunction,
    b: RationalFunction,
}

impl QuaternionAlgebra {
    pub fn new(a: RationalFunction, b: RationalFunction) -> Result<Arc<Self>, Error> {
        if b.is_zero() {
            return Err(Error::ZeroArgument("parameter b of [a, b)"));
        }
        Ok(Arc::new(QuaternionAlgebra { a, b }))
    }

    /// The algebra `[z, 1+z^3)`.
    pub fn standard() -> Arc<Self> {
        static STD: std::sync::OnceLock<Arc<QuaternionAlgebra>> = std::sync::OnceLock::new();
        STD.get_or_init(|| {
            QuaternionAlgebra::new(RationalFunction::x(), RationalFunction::poly(&[0, 3])).unwrap()
        })
        .clone()
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }
}

#[derive(Clone)]
pub struct Quaternion {
    alg: Arc<QuaternionAlgebra>,
    c: [RationalFunction; 4],
}

impl PartialEq for Quaternion {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg)
    }
}

impl Eq for Quaternion {}

impl std::hash::Hash for Quaternion {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Quaternion {
    pub fn new(alg: &Arc<QuaternionAlgebra>, c: [RationalFunction; 4]) -> Self {
        Quaternion {
            alg: alg.clone(),
            c,
        }
    }

    pub fn scalar(alg: &Arc<QuaternionAlgebra>, f: RationalFunction) -> Self {
        Self::new(
            alg,
            [
                f,
                RationalFunction::zero(),
                RationalFunction::zero(),
                RationalFunction::zero(),
            ],
        )
    }

    pub fn one(alg: &Arc<QuaternionAlgebra>) -> Self {
        Self::scalar(alg, RationalFunction::one())
    }

    pub fn zero(alg: &Arc<QuaternionAlgebra>) -> Self {
        Self::scalar(alg, RationalFunction::zero())
    }

    /// Basis element by index: 0 = 1, 1 = I, 2 = J, 3 = IJ.
    pub fn basis(alg: &Arc<QuaternionAlgebra>, k: usize) -> Self {
        let mut c: [RationalFunction; 4] = Default::default();
        c[k] = RationalFunction::one();
        Self::new(alg, c)
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[RationalFunction; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    fn same_algebra(&self, other: &Self) -> Result<(), Error> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.same_algebra(other)?;
        let c = std::array::from_fn(|k| &self.c[k] + &other.c[k]);
        Ok(Self::new(&self.alg, c))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.same_algebra(other)?;
        let (a, b) = (&self.alg.a, &self.alg.b);
        let [x0, x1, x2, x3] = &self.c;
        let [y0, y1, y2, y3] = &other.c;
        let ab = a * b;
        // basis products: I.I = a+I, I.IJ = aJ+IJ, J.I = IJ+J, J.J = b,
        // J.IJ = b+bI, IJ.I = aJ, IJ.J = bI, IJ.IJ = ab
        let c0 = sum(&[
            x0 * y0,
            a * &(x1 * y1),
            b * &(x2 * y2),
            b * &(x2 * y3),
            &ab * &(x3 * y3),
        ]);
        let c1 = sum(&[x0 * y1, x1 * y0, x1 * y1, b * &(x2 * y3), b * &(x3 * y2)]);
        let c2 = sum(&[x0 * y2, a * &(x1 * y3), x2 * y0, x2 * y1, a * &(x3 * y1)]);
        let c3 = sum(&[x0 * y3, x1 * y2, x1 * y3, x2 * y1, x3 * y0]);
        Ok(Self::new(&self.alg, [c0, c1, c2, c3]))
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        Self::new(&self.alg, std::array::from_fn(|k| f * &self.c[k]))
    }

    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = &self.c;
        Self::new(&self.alg, [x0 + x1, x1.clone(), x2.clone(), x3.clone()])
    }

    pub fn rtrace(&self) -> RationalFunction {
        self.c[1].clone()
    }

    /// Scalar part of `q * conj(q)`; panics if the product is not a scalar.
    pub fn rnorm(&self) -> RationalFunction {
        let p = self.checked_mul(&self.conj()).unwrap();
        assert!(
            p.is_scalar(),
            "q * conj(q) is not a scalar: multiplication table is broken"
        );
        p.c[0].clone()
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        let n = self.rnorm().inv().ok_or(Error::NotInvertible)?;
        Ok(self.conj().scale(&n))
    }

    /// Representative with first nonzero coordinate equal to 1; `None` for zero.
    pub fn projective_key(&self) -> Option<[RationalFunction; 4]> {
        let lead = self.c.iter().find(|x| !x.is_zero())?.inv().unwrap();
        Some(std::array::from_fn(|k| &lead * &self.c[k]))
    }

    /// Equality in `Q^x / K^x`.
    pub fn projective_eq(&self, other: &Self) -> Result<bool, Error> {
        self.same_algebra(other)?;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => {
                return Err(Error::ZeroArgument(
                    "projective comparison of two zero quaternions",
                ))
            }
            (true, false) | (false, true) => return Ok(false),
            _ => {}
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if &self.c[i] * &other.c[j] != &self.c[j] * &other.c[i] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the element lies in the scalar subfield up to a nonzero scalar, i.e. is trivial in `Q^x / K^x`.
    pub fn is_projectively_trivial(&self) -> bool {
        self.is_scalar() && !self.is_zero()
    }

    pub fn parse(alg: &Arc<QuaternionAlgebra>, s: &str) -> Result<Self, Error> {
        let atom = |rest: &str| -> Option<(QExpr, usize)> {
            let basis = |k| QExpr::Quat(Quaternion::basis(alg, k));
            if rest.starts_with("IJ") {
                Some((basis(3), 2))
            } else if rest.starts_with('I') {
                Some((basis(1), 1))
            } else if rest.starts_with('J') {
                Some((basis(2), 1))
            } else if rest.starts_with('z') {
                Some((QExpr::Scalar(RationalFunction::x()), 1))
            } else {
                None
            }
        };
        Ok(match parse_expr(s, &atom)? {
            QExpr::Scalar(f) => Quaternion::scalar(alg, f),
            QExpr::Quat(q) => q,
        })
    }
}

// Parser values: scalars stay in F2(z) until they meet a basis symbol.
#[derive(Clone)]
enum QExpr {
    Scalar(RationalFunction),
    Quat(Quaternion),
}

impl ExprRing for QExpr {
    fn from_bit(b: bool) -> Self {
        QExpr::Scalar(RationalFunction::from_bit(b))
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (QExpr::Scalar(a), QExpr::Scalar(b)) => QExpr::Scalar(a + b),
            (QExpr::Scalar(a), QExpr::Quat(q)) | (QExpr::Quat(q), QExpr::Scalar(a)) => {
                QExpr::Quat(q + &Quaternion::scalar(&q.alg, a.clone()))
            }
            (QExpr::Quat(p), QExpr::Quat(q)) => QExpr::Quat(p + q),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (QExpr::Scalar(a), QExpr::Scalar(b)) => QExpr::Scalar(a * b),
            (QExpr::Scalar(a), QExpr::Quat(q)) | (QExpr::Quat(q), QExpr::Scalar(a)) => {
                QExpr::Quat(q.scale(a))
            }
            (QExpr::Quat(p), QExpr::Quat(q)) => QExpr::Quat(p * q),
        }
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        match other {
            QExpr::Scalar(f) => self.try_mul_scalar(&f.inv()?),
            QExpr::Quat(q) if q.is_scalar() => self.try_mul_scalar(&q.c[0].inv()?),
            QExpr::Quat(_) => None,
        }
    }
    fn try_pow(&self, e: i64) -> Option<Self> {
        match self {
            QExpr::Scalar(f) => Some(QExpr::Scalar(f.pow(e)?)),
            QExpr::Quat(q) => {
                let base = if e < 0 { q.inverse().ok()? } else { q.clone() };
                let mut acc = Quaternion::one(&q.alg);
                for _ in 0..e.unsigned_abs() {
                    acc = &acc * &base;
                }
                Some(QExpr::Quat(acc))
            }
        }
    }
}

impl QExpr {
    fn try_mul_scalar(&self, f: &RationalFunction) -> Option<Self> {
        Some(self.mul(&QExpr::Scalar(f.clone())))
    }
}

fn sum(terms: &[RationalFunction]) -> RationalFunction {
    terms
        .iter()
        .fold(RationalFunction::zero(), |acc, t| &acc + t)
}

impl Mul<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    /// Panics on mismatched algebras; see [`Quaternion::checked_mul`].
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        self.checked_mul(rhs).expect("quaternion algebras differ")
    }
}

impl Add<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        self.checked_add(rhs).expect("quaternion algebras differ")
    }
}

impl fmt::Display for Quaternion {
    /// Text form `x0 + (x1)*I + (x2)*J + (x3)*IJ`, omitting zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "I", "J", "IJ"];
        let mut parts = Vec::new();
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let s = x.display_with('z');
            parts.push(match (k, x.is_one()) {
                (0, _) => s,
                (_, true) => names[k].to_string(),
                _ => format!("({s})*{}", names[k]),
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quaternion({self})")
    }
}

/// Subrings of F2(z) whose unit groups matter here: `R0 = F2[z, 1/z]`,
/// `R1 = F2[z, 1/z, 1/(1+z)]` and `R = F2[z, 1/z, 1/(1+z), 1/(1+z+z^2)]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UnitRing {
    R0,
    R1,
    R,
}

impl UnitRing {
    fn primes(self) -> Vec<BinaryPoly> {
        let mut v = vec![BinaryPoly::x()];
        if matches!(self, UnitRing::R1 | UnitRing::R) {
            v.push(BinaryPoly::from_bits(0b11));
        }
        if self == UnitRing::R {
            v.push(BinaryPoly::from_bits(0b111));
        }
        v
    }

    /// Nonzero and numerator and denominator factor over the allowed primes.
    pub fn is_unit(self, f: &RationalFunction) -> bool {
        if f.is_zero() {
            return false;
        }
        let primes = self.primes();
        [f.num(), f.den()].iter().all(|p| {
            let mut rest = (*p).clone();
            for m in &primes {
                rest = rest.split_power(m).1;
            }
            rest.is_one()
        })
    }
}

/// Invertibility over a ring in the sense used for the lattice: the reduced norm is a unit.
pub fn is_invertible_over(q: &Quaternion, ring: UnitRing) -> bool {
    ring.is_unit(&q.rnorm())
}

/// The elements `B1, B2, C1, C2, D` of `[z, 1+z^3)`.
#[derive(Clone, Debug)]
pub struct NamedElements {
    pub b1: Quaternion,
    pub b2: Quaternion,
    pub c1: Quaternion,
    pub c2: Quaternion,
    pub d: Quaternion,
}

impl NamedElements {
    pub fn new() -> Self {
        let alg = QuaternionAlgebra::standard();
        let p = |s: &str| Quaternion::parse(&alg, s).expect("built-in element");
        NamedElements {
            b1: p("(1+z)I + J"),
            b2: p("z+z^2 + (1+z)I + J + IJ"),
            c1: p("1+z^2 + IJ"),
            c2: p("z+z^2 + IJ"),
            d: p("1+z+z^2 + IJ"),
        }
    }
}

impl Default for NamedElements {
    fn default() -> Self {
        Self::new()
    }
}
