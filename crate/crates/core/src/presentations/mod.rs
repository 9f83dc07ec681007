//! Group presentations: the orbifold presentation of a V4-structure complex,
//! the fixed presentations of `Lambda`, `G(R)` and `Gamma`, evaluation in the
//! quaternion algebra, Reidemeister-Schreier and abelianization.

mod finite;
mod presentation;
mod snf;
mod word;

pub use finite::{
    reidemeister_schreier, tietze_prune, FiniteGroup, FiniteQuotientMap, SchreierResult,
};
pub use presentation::Presentation;
pub use snf::{
    abelianization, determinant, mat_mul, smith_normal_form, to_big, Abelianization, IntMatrix,
    SmithForm,
};
pub use word::{letter, letter_gen, Word};

use crate::error::Error;
use crate::quaternion::{NamedElements, Quaternion};
use crate::square_complex::SquareComplexVH;

pub const LAMBDA: &str = "< b1, b2, c1, c2 | c1^2, c2^2, c1c2c1^-1c2^-1, b1b2c1b2, b1c2b1b2^-1 >";
pub const GR: &str =
    "< b1, b2, c1, c2, d | c1^2, c2^2, d^2, c1c2c1^-1c2^-1, c1dc1^-1d^-1, c2dc2^-1d^-1, \
                      b1b2c1b2, b1c2b1b2^-1, db1db1, db2db2 >";
pub const GAMMA: &str =
    "< a1, a2 | a2a1^-1a2^2a1a2a1a2^2a1^-1a2a1, a1a2^2a1^-1a2^2a1^-1a2^2a1a2a1^-1a2 >";

/// `a1 = c1 b1^-1`, `a2 = c2 b2^-1`, as words over the generators of `Lambda`.
pub const GAMMA_GENERATORS: [(&str, &str); 2] = [("a1", "c1b1^-1"), ("a2", "c2b2^-1")];

#[derive(Clone, Debug)]
pub struct FixedPresentations {
    pub lambda: Presentation,
    pub gr: Presentation,
    pub gamma: Presentation,
}

pub fn fixed_presentations() -> FixedPresentations {
    let p = |s: &str| Presentation::parse(s).expect("built-in presentation");
    FixedPresentations {
        lambda: p(LAMBDA),
        gr: p(GR),
        gamma: p(GAMMA),
    }
}

/// Rewrites a word over `a1, a2` as a word over the generators of `Lambda`.
pub fn gamma_in_lambda(w: &Word) -> Word {
    let f = fixed_presentations();
    let images: Vec<Word> = GAMMA_GENERATORS
        .iter()
        .map(|(_, s)| f.lambda.parse_word(s).expect("built-in word"))
        .collect();
    w.map_letters(|l| {
        let img = &images[letter_gen(l)];
        if l < 0 {
            img.inverse()
        } else {
            img.clone()
        }
    })
}

/// The reduced presentation of the orbifold fundamental group of the complex
/// modulo V4: one generator per inverse pair of `A` and of `B`, a relator
/// `x^2` for each self-inverse label, and one relator `a b' a'^-1 b^-1` per
/// V4-orbit of squares. Generators take the labels, prefixed by `alpha_` and
/// `beta_` if a label occurs in both sets.
pub fn orbifold_presentation(c: &SquareComplexVH) -> Presentation {
    let reps_a: Vec<usize> = (0..c.a_labels.len()).filter(|&a| a <= c.inv_a[a]).collect();
    let reps_b: Vec<usize> = (0..c.b_labels.len()).filter(|&b| b <= c.inv_b[b]).collect();
    let clash = reps_a
        .iter()
        .any(|&a| reps_b.iter().any(|&b| c.a_labels[a] == c.b_labels[b]));
    let mut generators = Vec::new();
    for &a in &reps_a {
        generators.push(if clash {
            format!("alpha_{}", c.a_labels[a])
        } else {
            c.a_labels[a].clone()
        });
    }
    for &b in &reps_b {
        generators.push(if clash {
            format!("beta_{}", c.b_labels[b])
        } else {
            c.b_labels[b].clone()
        });
    }
    // letter for a label, using alpha_{x^-1} = alpha_x^-1
    let la = |a: usize| -> i32 {
        let rep = a.min(c.inv_a[a]);
        letter(
            reps_a.iter().position(|&r| r == rep).expect("rep"),
            a != rep,
        )
    };
    let lb = |b: usize| -> i32 {
        let rep = b.min(c.inv_b[b]);
        letter(
            reps_a.len() + reps_b.iter().position(|&r| r == rep).expect("rep"),
            b != rep,
        )
    };
    let mut relators = Vec::new();
    for &a in &reps_a {
        if c.inv_a[a] == a {
            relators.push(Word(vec![la(a), la(a)]));
        }
    }
    for &b in &reps_b {
        if c.inv_b[b] == b {
            relators.push(Word(vec![lb(b), lb(b)]));
        }
    }
    for s in c.v4_orbit_representatives() {
        relators.push(Word(vec![la(s.a), lb(s.b_prime), -la(s.a_prime), -lb(s.b)]).free_reduce());
    }
    Presentation {
        generators,
        relators,
    }
}

/// The map to V4 sending `A`-generators to `g_v = 1` and `B`-generators to `g_h = 2`.
pub fn v4_quotient(p: &Presentation, vertical: &[&str]) -> FiniteQuotientMap {
    let images = p
        .generators
        .iter()
        .map(|g| if vertical.contains(&g.as_str()) { 1 } else { 2 })
        .collect();
    FiniteQuotientMap::new(FiniteGroup::klein_four(), images)
}

/// `Lambda -> V4` with `b1, c1 -> g_v` and `b2, c2 -> g_h`.
pub fn lambda_to_v4() -> FiniteQuotientMap {
    v4_quotient(&fixed_presentations().lambda, &["b1", "c1"])
}

/// Product of the images of the letters; inverses are taken as conjugates, so
/// the result is determined up to a nonzero scalar.
pub fn evaluate_word(w: &Word, assignment: &[Quaternion]) -> Result<Quaternion, Error> {
    let alg = assignment
        .first()
        .map(|q| q.algebra().clone())
        .unwrap_or_else(crate::quaternion::QuaternionAlgebra::standard);
    let mut acc = Quaternion::one(&alg);
    for &l in &w.0 {
        let q = assignment
            .get(letter_gen(l))
            .ok_or_else(|| Error::InvalidInput("word uses an unassigned generator".into()))?;
        if q.rnorm().is_zero() {
            return Err(Error::NotInvertible);
        }
        let x = if l < 0 { q.conj() } else { q.clone() };
        acc = acc.checked_mul(&x)?;
    }
    Ok(acc)
}

/// Quaternion images of the generators of `p` by name: `b1, b2, c1, c2, d`
/// go to `B1, B2, C1, C2, D`; `a1, a2` to `C1 B1^-1, C2 B2^-1`.
pub fn standard_assignment(p: &Presentation) -> Result<Vec<Quaternion>, Error> {
    let n = NamedElements::new();
    p.generators
        .iter()
        .map(|g| match g.as_str() {
            "b1" => Ok(n.b1.clone()),
            "b2" => Ok(n.b2.clone()),
            "c1" => Ok(n.c1.clone()),
            "c2" => Ok(n.c2.clone()),
            "d" => Ok(n.d.clone()),
            "a1" => n.c1.checked_mul(&n.b1.conj()),
            "a2" => n.c2.checked_mul(&n.b2.conj()),
            other => Err(Error::InvalidInput(format!(
                "no quaternion for generator {other}"
            ))),
        })
        .collect()
}

/// Relators that do not evaluate to a scalar under [`standard_assignment`].
pub fn nontrivial_relators(p: &Presentation) -> Result<Vec<String>, Error> {
    let asg = standard_assignment(p)?;
    let mut bad = Vec::new();
    for r in &p.relators {
        if !evaluate_word(r, &asg)?.is_projectively_trivial() {
            bad.push(p.format_word(r));
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard_structure;
    use crate::quaternion::QuaternionAlgebra;
    use crate::square_complex::{build_complex, Labeled, PermutationDomain, V4Structure};

    #[test]
    fn fixed_shapes() {
        let f = fixed_presentations();
        assert_eq!((f.lambda.num_generators(), f.lambda.relators.len()), (4, 5));
        assert_eq!((f.gr.num_generators(), f.gr.relators.len()), (5, 10));
        assert_eq!((f.gamma.num_generators(), f.gamma.relators.len()), (2, 2));
        let db = |s: &str| f.gr.parse_word(s).unwrap();
        assert!(f.gr.relators.contains(&db("db1db1")));
        assert!(f.gr.relators.contains(&db("db2db2")));
        assert_eq!(f.lambda.to_text(), LAMBDA);
    }

    #[test]
    fn orbifold_matches_lambda() {
        let c = build_complex(&standard_structure()).unwrap();
        let p = orbifold_presentation(&c);
        assert_eq!(p.generators, ["b1", "c1", "b2", "c2"]);
        assert_eq!(p.relators.len(), 5);
        assert_eq!(
            p.to_text(),
            "< b1, c1, b2, c2 | c1^2, c2^2, b1b2c1^-1b2, b1c2b1b2^-1, c1c2c1^-1c2^-1 >"
        );
        assert!(p.same_relators(&fixed_presentations().lambda));
    }

    #[test]
    fn orbifold_of_trivial_structure() {
        let s = V4Structure::new(
            PermutationDomain,
            vec![Labeled::new("1", vec![0])],
            vec![Labeled::new("1", vec![0])],
        );
        let p = orbifold_presentation(&build_complex(&s).unwrap());
        assert_eq!(
            p.to_text(),
            "< alpha_1, beta_1 | alpha_1^2, beta_1^2, alpha_1beta_1alpha_1^-1beta_1^-1 >"
        );
        let ab = abelianization(&p).unwrap();
        assert_eq!(ab.to_string(), "Z/2 x Z/2");
    }

    #[test]
    fn relators_are_sound() {
        let f = fixed_presentations();
        for p in [&f.lambda, &f.gr, &f.gamma] {
            assert!(nontrivial_relators(p).unwrap().is_empty(), "{p}");
        }
        let alg = QuaternionAlgebra::standard();
        assert_eq!(
            evaluate_word(&Word::empty(), &[]).unwrap(),
            Quaternion::one(&alg)
        );
        let asg = standard_assignment(&f.gr).unwrap();
        let r = evaluate_word(&f.gr.parse_word("db1db1").unwrap(), &asg).unwrap();
        assert!(r.is_projectively_trivial());
        // a non-relator stays nontrivial
        let w = evaluate_word(
            &f.lambda.parse_word("b1b2").unwrap(),
            &standard_assignment(&f.lambda).unwrap(),
        )
        .unwrap();
        assert!(!w.is_projectively_trivial());
    }

    #[test]
    fn gamma_words_evaluate_consistently() {
        let f = fixed_presentations();
        let asg_l = standard_assignment(&f.lambda).unwrap();
        let asg_g = standard_assignment(&f.gamma).unwrap();
        for r in &f.gamma.relators {
            let via_lambda = evaluate_word(&gamma_in_lambda(r), &asg_l).unwrap();
            let direct = evaluate_word(r, &asg_g).unwrap();
            assert!(via_lambda.projective_eq(&direct).unwrap());
            assert!(lambda_to_v4().image(&gamma_in_lambda(r)) == 0);
        }
    }

    #[test]
    fn gamma_abelianizes_to_z15() {
        let f = fixed_presentations();
        assert!(abelianization(&f.gamma).unwrap().is_cyclic_of_order(15));
        let k = reidemeister_schreier(&f.lambda, &lambda_to_v4()).unwrap();
        assert_eq!(k.index, 4);
        assert_eq!(k.schreier_generators, 4 * 3 + 1);
        assert!(abelianization(&k.presentation)
            .unwrap()
            .is_cyclic_of_order(15));
    }

    #[test]
    fn lambda_abelianization() {
        let ab = abelianization(&fixed_presentations().lambda).unwrap();
        assert_eq!(ab.free_rank, 0);
        let prod: num_bigint::BigInt = ab.invariant_factors.iter().product();
        assert_eq!(prod, 20.into());
    }
}
