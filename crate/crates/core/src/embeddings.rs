//! The splitting maps of `[z, 1+z^3)` into 2x2 matrices over F2(y) and F2(t).
//!
//! `rho_y` substitutes `z = y^2 + y`; `rho_t` substitutes `u = 1/z = t^2 + t`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::base_fields::parse::parse_expr;
use crate::base_fields::{Place, RationalFunction, Valuation};
use crate::error::Error;
use crate::quaternion::{Quaternion, QuaternionAlgebra};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum FieldMap {
    #[serde(rename = "y")]
    RhoY,
    #[serde(rename = "t")]
    RhoT,
}

impl FieldMap {
    pub fn var(self) -> char {
        match self {
            FieldMap::RhoY => 'y',
            FieldMap::RhoT => 't',
        }
    }

    pub fn from_var(c: char) -> Option<Self> {
        match c {
            'y' => Some(FieldMap::RhoY),
            't' => Some(FieldMap::RhoT),
            _ => None,
        }
    }

    /// Image of `z` in the target field.
    pub fn image_of_z(self) -> RationalFunction {
        let s = RationalFunction::poly(&[1, 2]);
        match self {
            FieldMap::RhoY => s,
            FieldMap::RhoT => s.inv().unwrap(),
        }
    }
}

pub fn embed_scalar(f: &RationalFunction, which: FieldMap) -> RationalFunction {
    f.compose(&which.image_of_z())
        .expect("field embedding is injective")
}

/// Parses an element of the target field written with any of its names:
/// `y` and `z = y^2+y` for `rho_y`; `t`, `u = t^2+t` and `z = 1/u` for `rho_t`.
pub fn parse_in_field(s: &str, which: FieldMap) -> Result<RationalFunction, Error> {
    let atom = move |rest: &str| {
        let c = rest.chars().next()?;
        let v = match (which, c) {
            (_, 'z') => which.image_of_z(),
            (FieldMap::RhoY, 'y') | (FieldMap::RhoT, 't') => RationalFunction::x(),
            (FieldMap::RhoT, 'u') => RationalFunction::poly(&[1, 2]),
            _ => return None,
        };
        Some((v, 1))
    };
    parse_expr(s, &atom)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    field: FieldMap,
    e: [[RationalFunction; 2]; 2],
}

impl Matrix2 {
    pub fn new(field: FieldMap, e: [[RationalFunction; 2]; 2]) -> Self {
        Matrix2 { field, e }
    }

    /// Entries in the notation of [`parse_in_field`], row by row.
    pub fn parse(field: FieldMap, entries: [&str; 4]) -> Result<Self, Error> {
        let p = |s: &str| parse_in_field(s, field);
        Ok(Matrix2::new(
            field,
            [
                [p(entries[0])?, p(entries[1])?],
                [p(entries[2])?, p(entries[3])?],
            ],
        ))
    }

    pub fn identity(field: FieldMap) -> Self {
        Self::scalar(field, RationalFunction::one())
    }

    pub fn scalar(field: FieldMap, f: RationalFunction) -> Self {
        let z = RationalFunction::zero();
        Matrix2::new(field, [[f.clone(), z.clone()], [z, f]])
    }

    pub fn field(&self) -> FieldMap {
        self.field
    }

    pub fn entries(&self) -> &[[RationalFunction; 2]; 2] {
        &self.e
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.e[i][j]
    }

    pub fn det(&self) -> RationalFunction {
        &(&self.e[0][0] * &self.e[1][1]) + &(&self.e[0][1] * &self.e[1][0])
    }

    pub fn trace(&self) -> RationalFunction {
        &self.e[0][0] + &self.e[1][1]
    }

    pub fn checked_mul(&self, other: &Matrix2) -> Result<Matrix2, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let e = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                &(&self.e[i][0] * &other.e[0][j]) + &(&self.e[i][1] * &other.e[1][j])
            })
        });
        Ok(Matrix2::new(self.field, e))
    }

    pub fn add(&self, other: &Matrix2) -> Matrix2 {
        assert_eq!(self.field, other.field, "matrices over different fields");
        let e = std::array::from_fn(|i| std::array::from_fn(|j| &self.e[i][j] + &other.e[i][j]));
        Matrix2::new(self.field, e)
    }

    pub fn scale(&self, f: &RationalFunction) -> Matrix2 {
        let e = std::array::from_fn(|i| std::array::from_fn(|j| f * &self.e[i][j]));
        Matrix2::new(self.field, e)
    }

    /// `[[d, b], [c, a]]`; signs disappear in characteristic 2.
    pub fn adjugate(&self) -> Matrix2 {
        let [[a, b], [c, d]] = &self.e;
        Matrix2::new(self.field, [[d.clone(), b.clone()], [c.clone(), a.clone()]])
    }

    pub fn inverse(&self) -> Result<Matrix2, Error> {
        let d = self.det().inv().ok_or(Error::SingularMatrix)?;
        Ok(self.adjugate().scale(&d))
    }

    /// Equality up to a nonzero scalar of the field.
    pub fn projective_eq(&self, other: &Matrix2) -> bool {
        if self.field != other.field {
            return false;
        }
        let a: Vec<&RationalFunction> = self.e.iter().flatten().collect();
        let b: Vec<&RationalFunction> = other.e.iter().flatten().collect();
        if a.iter().all(|x| x.is_zero()) || b.iter().all(|x| x.is_zero()) {
            return false;
        }
        (0..4).all(|i| (i + 1..4).all(|j| a[i] * b[j] == a[j] * b[i]))
    }

    /// Minimal valuation of the entries at the place `0` of the field's variable.
    pub fn min_valuation(&self) -> Valuation {
        self.e
            .iter()
            .flatten()
            .map(|x| Place::zero().valuation(x))
            .min()
            .unwrap()
    }

    /// Entries reduced modulo the uniformizer; `None` unless every entry is integral.
    pub fn reduce_mod_pi(&self) -> Option<[[u8; 2]; 2]> {
        let mut out = [[0u8; 2]; 2];
        for (row, entries) in out.iter_mut().zip(&self.e) {
            for (o, x) in row.iter_mut().zip(entries) {
                if Place::zero().valuation(x) < Valuation::Finite(0) {
                    return None;
                }
                // integral: denominator has nonzero constant term, so x(0) = num(0)/den(0)
                *o = x.num().coeff(0) as u8;
            }
        }
        Some(out)
    }

    pub fn display(&self) -> String {
        let v = self.field.var();
        let s = |x: &RationalFunction| x.display_with(v);
        format!(
            "[[{}, {}], [{}, {}]]",
            s(&self.e[0][0]),
            s(&self.e[0][1]),
            s(&self.e[1][0]),
            s(&self.e[1][1])
        )
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix2({:?}, {})", self.field, self.display())
    }
}

struct GeneratorImages {
    i: Matrix2,
    j: Matrix2,
    ij: Matrix2,
}

fn generator_images(which: FieldMap) -> &'static GeneratorImages {
    static Y: OnceLock<GeneratorImages> = OnceLock::new();
    static T: OnceLock<GeneratorImages> = OnceLock::new();
    let build = || {
        let (i, j) = match which {
            FieldMap::RhoY => {
                let y = RationalFunction::x();
                let b = embed_scalar(&RationalFunction::poly(&[0, 3]), which);
                let one = RationalFunction::one();
                let zero = RationalFunction::zero();
                (
                    Matrix2::new(
                        which,
                        [[y.clone(), zero.clone()], [zero.clone(), &one + &y]],
                    ),
                    Matrix2::new(which, [[zero.clone(), b], [one, zero]]),
                )
            }
            FieldMap::RhoT => {
                let t = RationalFunction::x();
                let u = RationalFunction::poly(&[1, 2]);
                let ui = u.inv().unwrap();
                let one = RationalFunction::one();
                let zero = RationalFunction::zero();
                let u3 = &(&u * &u) * &u;
                (
                    Matrix2::new(
                        which,
                        [[&(&one + &u) + &t, &one + &u3], [ui.clone(), &u + &t]],
                    ),
                    Matrix2::new(which, [[zero.clone(), &ui + &(&u * &u)], [&ui * &ui, zero]]),
                )
            }
        };
        let ij = i.checked_mul(&j).unwrap();
        GeneratorImages { i, j, ij }
    };
    match which {
        FieldMap::RhoY => Y.get_or_init(build),
        FieldMap::RhoT => T.get_or_init(build),
    }
}

/// Image of `q` under the chosen splitting map.
pub fn rho(q: &Quaternion, which: FieldMap) -> Result<Matrix2, Error> {
    let std = QuaternionAlgebra::standard();
    if **q.algebra() != *std {
        return Err(Error::UnsupportedAlgebra);
    }
    let g = generator_images(which);
    let [x0, x1, x2, x3] = q.coords().clone().map(|x| embed_scalar(&x, which));
    Ok(Matrix2::scalar(which, x0)
        .add(&g.i.scale(&x1))
        .add(&g.j.scale(&x2))
        .add(&g.ij.scale(&x3)))
}
