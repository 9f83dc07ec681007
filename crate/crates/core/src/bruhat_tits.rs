//! Bruhat-Tits trees of PGL2 over F2((y)) and F2((t)) and the product action.
//!
//! A vertex is the homothety class of the lattice spanned by the columns of
//! `[[pi^n, c], [0, 1]]`, where `pi` is the field variable and `c` is a Laurent
//! polynomial with all exponents below `n`. Every class has exactly one such
//! representative.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::base_fields::{
    laurent_expand, BinaryPoly, LaurentPoly, Place, RationalFunction, Valuation,
};
use crate::embeddings::{rho, FieldMap, Matrix2};
use crate::error::Error;
use crate::quaternion::Quaternion;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    field: FieldMap,
    level: i64,
    tail: LaurentPoly,
}

fn val(f: &RationalFunction) -> Valuation {
    Place::zero().valuation(f)
}

fn fin(v: Valuation) -> i64 {
    v.finite().expect("finite valuation of a nonzero entry")
}

impl TreeVertex {
    pub fn new(field: FieldMap, level: i64, tail: LaurentPoly) -> Result<Self, Error> {
        if tail.top().is_some_and(|e| e >= level) {
            return Err(Error::InvalidVertex(format!(
                "tail exponent >= level {level}"
            )));
        }
        Ok(TreeVertex { field, level, tail })
    }

    /// The standard vertex, the class of `O^2`.
    pub fn standard(field: FieldMap) -> Self {
        TreeVertex {
            field,
            level: 0,
            tail: LaurentPoly::zero(),
        }
    }

    pub fn field(&self) -> FieldMap {
        self.field
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn tail(&self) -> &LaurentPoly {
        &self.tail
    }

    /// `[[pi^n, c], [0, 1]]`.
    pub fn matrix(&self) -> Matrix2 {
        Matrix2::new(
            self.field,
            [
                [RationalFunction::x_pow(self.level), self.tail.to_rational()],
                [RationalFunction::zero(), RationalFunction::one()],
            ],
        )
    }

    pub fn neighbors(&self) -> [TreeVertex; 3] {
        let n = self.level;
        let mk = |level, tail| TreeVertex {
            field: self.field,
            level,
            tail,
        };
        [
            mk(n + 1, self.tail.clone()),
            mk(n + 1, self.tail.add(&LaurentPoly::monomial(n))),
            mk(n - 1, self.tail.truncate(n - 1)),
        ]
    }

    /// `field:level:tail-hex`, where bit `k` of the hex number is the coefficient of `pi^(level-1-k)`.
    pub fn encode(&self) -> String {
        let bits: Vec<usize> = self
            .tail
            .exponents()
            .into_iter()
            .map(|e| (self.level - 1 - e) as usize)
            .collect();
        format!(
            "{}:{}:{}",
            self.field.var(),
            self.level,
            BinaryPoly::from_exponents(&bits).to_hex()
        )
    }
}

impl FromStr for TreeVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidVertex(s.to_string());
        let mut parts = s.split(':');
        let (f, l, h) = (parts.next(), parts.next(), parts.next());
        if parts.next().is_some() {
            return Err(bad());
        }
        let mut fc = f.ok_or_else(bad)?.chars();
        let field = fc.next().and_then(FieldMap::from_var).ok_or_else(bad)?;
        if fc.next().is_some() {
            return Err(bad());
        }
        let level: i64 = l.ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let bits = BinaryPoly::from_hex(h.ok_or_else(bad)?).ok_or_else(bad)?;
        let exps: Vec<i64> = bits
            .exponents()
            .into_iter()
            .map(|k| level - 1 - k as i64)
            .collect();
        TreeVertex::new(field, level, LaurentPoly::from_exponents(&exps))
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeVertex({})", self.encode())
    }
}

impl Serialize for TreeVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for TreeVertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical vertex of the lattice class spanned by the columns of `m`.
pub fn vertex_from_matrix(m: &Matrix2) -> Result<TreeVertex, Error> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let [[a, b], [c, d]] = m.entries();
    // pivot on the bottom entry of least valuation; clearing the other column
    // leaves [[det/p, top/p], [0, 1]] after scaling by 1/p
    let (top, bottom) = if d.is_zero() || (!c.is_zero() && val(c) < val(d)) {
        (a, c)
    } else {
        (b, d)
    };
    let level = fin(val(&det)) - 2 * fin(val(bottom));
    let tail = laurent_expand(&(top / bottom), &Place::zero(), level)?;
    Ok(TreeVertex {
        field: m.field(),
        level,
        tail,
    })
}

pub fn act(m: &Matrix2, v: &TreeVertex) -> Result<TreeVertex, Error> {
    if m.field() != v.field {
        return Err(Error::FieldMismatch);
    }
    vertex_from_matrix(&m.checked_mul(&v.matrix())?)
}

/// Combinatorial distance: `nu(det g) - 2 min nu(g_ij)` for `g = M1^-1 M2`.
pub fn distance(v1: &TreeVertex, v2: &TreeVertex) -> Result<u64, Error> {
    if v1.field != v2.field {
        return Err(Error::FieldMismatch);
    }
    // M1 is upper triangular with unit lower-right entry, so M1^-1 is explicit
    let g = v1.matrix().inverse()?.checked_mul(&v2.matrix())?;
    let d = fin(val(&g.det())) - 2 * fin(g.min_valuation());
    Ok(d as u64)
}

/// All vertices at distance at most `r` from `center`, by breadth-first search.
pub fn ball(center: &TreeVertex, r: u32) -> Vec<TreeVertex> {
    let mut seen: HashSet<TreeVertex> = HashSet::new();
    let mut order = vec![center.clone()];
    let mut queue = VecDeque::from([(center.clone(), 0u32)]);
    seen.insert(center.clone());
    while let Some((v, k)) = queue.pop_front() {
        if k == r {
            continue;
        }
        for n in v.neighbors() {
            if seen.insert(n.clone()) {
                order.push(n.clone());
                queue.push_back((n, k + 1));
            }
        }
    }
    order
}

/// Vertex of `T0 x Tinf`: the horizontal factor lives over F2((y)), the vertical over F2((t)).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ProductVertex {
    pub horizontal: TreeVertex,
    pub vertical: TreeVertex,
}

impl ProductVertex {
    pub fn standard() -> Self {
        ProductVertex {
            horizontal: TreeVertex::standard(FieldMap::RhoY),
            vertical: TreeVertex::standard(FieldMap::RhoT),
        }
    }
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.horizontal, self.vertical)
    }
}

/// Action of `g` through `rho_y` on the horizontal and `rho_t` on the vertical factor.
pub fn bt_act(g: &Quaternion, v: &ProductVertex) -> Result<ProductVertex, Error> {
    if g.rnorm().is_zero() {
        return Err(Error::NotInvertible);
    }
    Ok(ProductVertex {
        horizontal: act(&rho(g, FieldMap::RhoY)?, &v.horizontal)?,
        vertical: act(&rho(g, FieldMap::RhoT)?, &v.vertical)?,
    })
}
