//! Finite certificates for the lattice: ramification, discriminant, stabilizer
//! of the standard vertex, neighbor geometry and the ball check on `T3 x T3`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base_fields::{local_symbol, Place, RationalFunction, Valuation};
use crate::bruhat_tits::{ball, bt_act, distance, ProductVertex, TreeVertex};
use crate::embeddings::{rho, FieldMap, Matrix2};
use crate::error::Error;
use crate::lattice::ProjectiveInterner;
use crate::quaternion::{NamedElements, Quaternion, QuaternionAlgebra, UnitRing};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A named list of checks; passes iff every item passes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub items: Vec<CheckItem>,
}

impl Certificate {
    pub fn new(name: &str) -> Self {
        Certificate {
            name: name.into(),
            passed: true,
            items: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.items.push(CheckItem {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items.iter().filter(|i| !i.passed).collect()
    }
}

/// Places where `z` or `1+z^3` has nonzero valuation, or `z` a pole.
pub fn candidate_places() -> Vec<Place> {
    vec![Place::zero(), Place::one(), Place::zeta(), Place::Infinity]
}

/// Places among the candidates where the local symbol of `[z, 1+z^3)` is 1.
pub fn ramified_places() -> Result<Vec<Place>, Error> {
    let alg = QuaternionAlgebra::standard();
    let mut out = Vec::new();
    for p in candidate_places() {
        if local_symbol(alg.a(), alg.b(), &p)? == 1 {
            out.push(p);
        }
    }
    Ok(out)
}

fn quaternion_basis(alg: &std::sync::Arc<QuaternionAlgebra>) -> [Quaternion; 4] {
    std::array::from_fn(|k| Quaternion::basis(alg, k))
}

/// `tr(u_i u_j)` on the basis `1, I, J, IJ`.
pub fn gram_matrix(alg: &std::sync::Arc<QuaternionAlgebra>) -> [[RationalFunction; 4]; 4] {
    let u = quaternion_basis(alg);
    std::array::from_fn(|i| std::array::from_fn(|j| (&u[i] * &u[j]).rtrace()))
}

/// Determinant of the reduced-trace form on `1, I, J, IJ`. In characteristic 2
/// the determinant equals the permanent, which is summed directly.
pub fn order_discriminant_of(alg: &std::sync::Arc<QuaternionAlgebra>) -> RationalFunction {
    let g = gram_matrix(alg);
    let mut det = RationalFunction::zero();
    for p in itertools::Itertools::permutations(0..4usize, 4) {
        let term = (0..4).fold(RationalFunction::one(), |acc, i| &acc * &g[i][p[i]]);
        det = &det + &term;
    }
    det
}

pub fn order_discriminant() -> RationalFunction {
    order_discriminant_of(&QuaternionAlgebra::standard())
}

fn m(field: FieldMap, e: [&str; 4]) -> Matrix2 {
    Matrix2::parse(field, e).expect("built-in matrix")
}

fn u_scalar() -> RationalFunction {
    RationalFunction::poly(&[1, 2])
}

/// Printed images of `B1, B2, C1, C2` under `rho_y` and `rho_t`.
pub fn generator_image_table() -> Vec<(&'static str, FieldMap, Matrix2)> {
    use FieldMap::{RhoT as T, RhoY as Y};
    vec![
        ("B1", Y, m(Y, ["(1+z)y", "1+z^3", "1", "(1+z)(1+y)"])),
        ("B1", T, m(T, ["(1+u)(1+u+t)", "u+u^4", "1", "(1+u)(u+t)"])),
        (
            "B2",
            Y,
            m(Y, ["z+z^2+(1+z)y", "(1+z^3)(1+y)", "y", "1+z^2+(1+z)y"]),
        ),
        (
            "B2",
            T,
            m(T, ["(1+u)t", "(1+t)(1+u^3)", "t/u", "(1+u)(1+t)"]),
        ),
        ("C1", Y, m(Y, ["1+z^2", "(1+z^3)y", "1+y", "1+z^2"])),
        (
            "C1",
            T,
            m(T, ["u+u^2", "(1+u^3)(1+u+t)", "(u+t)/u", "u+u^2"]),
        ),
        ("C2", Y, m(Y, ["z+z^2", "(1+z^3)y", "1+y", "z+z^2"])),
        (
            "C2",
            T,
            m(T, ["1+u^2", "(1+u^3)(1+u+t)", "(u+t)/u", "1+u^2"]),
        ),
    ]
}

pub fn generator_table_certificate() -> Result<Certificate, Error> {
    let n = NamedElements::new();
    let mut c = Certificate::new("generator-images");
    for (name, field, expected) in generator_image_table() {
        let q = match name {
            "B1" => &n.b1,
            "B2" => &n.b2,
            "C1" => &n.c1,
            _ => &n.c2,
        };
        let got = rho(q, field)?;
        c.check(
            format!("rho_{}({name})", field.var()),
            got.projective_eq(&expected),
            got.display(),
        );
    }
    Ok(c)
}

/// `d` fixes `w`, is not invertible over `R1`, and has order 2 projectively.
pub fn stabilizer_certificate() -> Result<Certificate, Error> {
    let n = NamedElements::new();
    let mut c = Certificate::new("stabilizer");
    let my = rho(&n.d, FieldMap::RhoY)?;
    let mt = rho(&n.d, FieldMap::RhoT)?.scale(&u_scalar());
    let printed_y = m(FieldMap::RhoY, ["1+z+z^2", "(1+z^3)y", "1+y", "1+z+z^2"]);
    let printed_t = m(
        FieldMap::RhoT,
        ["1+u+u^2", "(1+u+t)(1+u^3)", "1+t/u", "1+u+u^2"],
    );
    c.check(
        "rho_y(D) matches printed matrix",
        my == printed_y,
        my.display(),
    );
    c.check(
        "u rho_t(D) matches printed matrix",
        mt == printed_t,
        mt.display(),
    );
    for (label, mat, expected) in [("y", &my, [[1, 0], [1, 1]]), ("t", &mt, [[1, 1], [0, 1]])] {
        let integral = mat.min_valuation() >= Valuation::Finite(0);
        let unit_det = Place::zero().valuation(&mat.det()) == Valuation::Finite(0);
        c.check(
            format!("{label}: entries integral, det a unit"),
            integral && unit_det,
            "",
        );
        let red = mat.reduce_mod_pi();
        c.check(
            format!("{label}: reduction mod {label}"),
            red == Some(expected),
            format!("{red:?}"),
        );
    }
    let w = ProductVertex::standard();
    let image = bt_act(&n.d, &w)?;
    c.check("d.w = w", image == w, image.to_string());
    let norm = n.d.rnorm();
    c.check(
        "rnorm(D) = 1+z+z^2 is not a unit in R1",
        norm == RationalFunction::poly(&[0, 1, 2]) && !UnitRing::R1.is_unit(&norm),
        norm.display_with('z'),
    );
    let d2 = &n.d * &n.d;
    c.check(
        "D^2 = 1+z+z^2",
        d2 == Quaternion::scalar(n.d.algebra(), RationalFunction::poly(&[0, 1, 2])),
        d2.to_string(),
    );
    Ok(c)
}

/// `A` moves only the vertical factor of `w` to three distinct neighbors, `B` only the horizontal one.
pub fn neighbors_certificate() -> Result<Certificate, Error> {
    let n = NamedElements::new();
    let mut c = Certificate::new("neighbors");
    let w = ProductVertex::standard();
    let inv = |q: &Quaternion| q.inverse();
    let sets = [
        (
            "A",
            [
                ("b1", n.b1.clone()),
                ("b1^-1", inv(&n.b1)?),
                ("c1", n.c1.clone()),
            ],
            true,
        ),
        (
            "B",
            [
                ("b2", n.b2.clone()),
                ("b2^-1", inv(&n.b2)?),
                ("c2", n.c2.clone()),
            ],
            false,
        ),
    ];
    for (set, elems, vertical) in sets {
        let mut moved = HashSet::new();
        for (name, q) in elems {
            let v = bt_act(&q, &w)?;
            let (fixed, moving, fixed_ref, moving_ref) = if vertical {
                (&v.horizontal, &v.vertical, &w.horizontal, &w.vertical)
            } else {
                (&v.vertical, &v.horizontal, &w.vertical, &w.horizontal)
            };
            let d = distance(moving_ref, moving)?;
            c.check(
                format!("{name}.w: fixes one factor, moves the other by 1"),
                fixed == fixed_ref && d == 1,
                v.to_string(),
            );
            moved.insert(moving.clone());
        }
        c.check(
            format!("{set}.w has 3 distinct images"),
            moved.len() == 3,
            "",
        );
    }
    Ok(c)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BallCheckReport {
    pub radius: u32,
    pub word_count: usize,
    pub distinct_elements: usize,
    pub distinct_vertices: usize,
    pub expected_vertices: usize,
    /// Vertices of the product ball enumerated through tree neighbors.
    pub enumerated_vertices: usize,
    /// Only the identity class maps to `w`.
    pub stabilizer_trivial: bool,
    pub injective: bool,
}

/// `sum_{i+j<=L} n_i n_j` with `n_0 = 1`, `n_k = 3 * 2^(k-1)`.
pub fn expected_ball_size(radius: u32) -> usize {
    let n = |k: u32| if k == 0 { 1usize } else { 3 << (k - 1) };
    (0..=radius)
        .flat_map(|i| (0..=radius - i).map(move |j| n(i) * n(j)))
        .sum()
}

/// Product-ball size counted from breadth-first tree balls.
pub fn enumerated_ball_size(radius: u32) -> usize {
    let shells = |f: FieldMap| -> Vec<usize> {
        let w = TreeVertex::standard(f);
        let mut counts = vec![0usize; radius as usize + 1];
        for v in ball(&w, radius) {
            counts[distance(&w, &v).expect("same field") as usize] += 1;
        }
        counts
    };
    let (h, v) = (shells(FieldMap::RhoY), shells(FieldMap::RhoT));
    (0..=radius as usize)
        .flat_map(|i| (0..=radius as usize - i).map(move |j| (i, j)))
        .map(|(i, j)| h[i] * v[j])
        .sum()
}

/// Letters `b1, b1^-1, c1, b2, b2^-1, c2`; `inverse_letter[k]` is the letter that cancels `k`.
fn letters() -> (Vec<Quaternion>, [usize; 6]) {
    let n = NamedElements::new();
    (
        vec![
            n.b1.clone(),
            n.b1.conj(),
            n.c1.clone(),
            n.b2.clone(),
            n.b2.conj(),
            n.c2.clone(),
        ],
        [1, 0, 2, 4, 3, 5],
    )
}

fn extend_words(
    prefixes: Vec<(Quaternion, Option<usize>)>,
    gens: &[Quaternion],
    inv: &[usize; 6],
) -> Vec<(Quaternion, Option<usize>)> {
    let mut out = Vec::new();
    for (q, last) in prefixes {
        for (k, g) in gens.iter().enumerate() {
            if last.is_some_and(|l| inv[l] == k) {
                continue;
            }
            out.push((&q * g, Some(k)));
        }
    }
    out
}

/// Freely reduced words of length at most `radius`, with `c1, c2` self-inverse.
pub fn ball_words(radius: u32) -> Vec<Quaternion> {
    let (gens, inv) = letters();
    let alg = QuaternionAlgebra::standard();
    let mut layer = vec![(Quaternion::one(&alg), None)];
    let mut all = vec![Quaternion::one(&alg)];
    for _ in 0..radius {
        layer = extend_words(layer, &gens, &inv);
        all.extend(layer.iter().map(|(q, _)| q.clone()));
    }
    all
}

fn report(radius: u32, words: &[Quaternion], images: &[ProductVertex]) -> BallCheckReport {
    let mut interner = ProjectiveInterner::new();
    let mut vertices = HashSet::new();
    let w = ProductVertex::standard();
    let mut fixers = HashSet::new();
    for (q, v) in words.iter().zip(images) {
        let (id, _) = interner.intern(q).expect("nonzero");
        if *v == w {
            fixers.insert(id);
        }
        vertices.insert(v.clone());
    }
    let expected = expected_ball_size(radius);
    let enumerated = enumerated_ball_size(radius);
    let distinct_elements = interner.len();
    BallCheckReport {
        radius,
        word_count: words.len(),
        distinct_elements,
        distinct_vertices: vertices.len(),
        expected_vertices: expected,
        enumerated_vertices: enumerated,
        stabilizer_trivial: fixers.len() == 1,
        injective: distinct_elements == vertices.len()
            && vertices.len() == expected
            && expected == enumerated,
    }
}

pub fn ball_check(radius: u32) -> Result<BallCheckReport, Error> {
    let words = ball_words(radius);
    let w = ProductVertex::standard();
    let images = words
        .iter()
        .map(|q| bt_act(q, &w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report(radius, &words, &images))
}

/// Same as [`ball_check`], evaluating the tree action in parallel.
pub fn ball_check_parallel(radius: u32) -> Result<BallCheckReport, Error> {
    let words = ball_words(radius);
    let w = ProductVertex::standard();
    let images = words
        .par_iter()
        .map(|q| bt_act(q, &w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report(radius, &words, &images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::BinaryPoly;

    #[test]
    fn ramification() {
        let r = ramified_places().unwrap();
        assert_eq!(r, vec![Place::one(), Place::zeta()]);
        assert_eq!(r.len() % 2, 0);
    }

    #[test]
    fn no_ramification_elsewhere() {
        // places of degree <= 5 away from the candidates
        let alg = QuaternionAlgebra::standard();
        for bits in 2u64..64 {
            let m = BinaryPoly::from_bits(bits);
            let Ok(p) = Place::finite(m) else { continue };
            if candidate_places().contains(&p) {
                continue;
            }
            assert_eq!(local_symbol(alg.a(), alg.b(), &p).unwrap(), 0, "{p:?}");
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(
            order_discriminant(),
            RationalFunction::poly(&[0, 3]).square()
        );
        let split =
            QuaternionAlgebra::new(RationalFunction::zero(), RationalFunction::one()).unwrap();
        assert_eq!(order_discriminant_of(&split), RationalFunction::one());
        let g = gram_matrix(&QuaternionAlgebra::standard());
        assert!(g[0][0].is_zero());
        // oracle: the trace of q is its I-coordinate, since q + conj(q) = x1
        let alg = QuaternionAlgebra::standard();
        let ij = &Quaternion::basis(&alg, 1) * &Quaternion::basis(&alg, 2);
        assert_eq!(g[1][2], ij.coords()[1]);
    }

    #[test]
    fn certificates_pass() {
        for c in [
            generator_table_certificate(),
            stabilizer_certificate(),
            neighbors_certificate(),
        ] {
            let c = c.unwrap();
            assert!(c.passed, "{:?}", c.failures());
        }
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(
            (0..5).map(expected_ball_size).collect::<Vec<_>>(),
            [1, 7, 28, 88, 244]
        );
        for r in 0..4 {
            assert_eq!(enumerated_ball_size(r), expected_ball_size(r));
        }
        assert_eq!(ball_words(4).len(), 937);
    }

    #[test]
    fn ball_check_small() {
        for (r, n) in [(0, 1), (1, 7), (2, 28)] {
            let rep = ball_check(r).unwrap();
            assert!(rep.injective, "{rep:?}");
            assert_eq!(rep.distinct_vertices, n);
            assert!(rep.stabilizer_trivial);
        }
        assert_eq!(ball_check_parallel(2).unwrap(), ball_check(2).unwrap());
    }
}
