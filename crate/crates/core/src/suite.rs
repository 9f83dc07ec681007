//! All certificates in one run, as used by the command-line `verify`.

use serde::{Deserialize, Serialize};

use crate::base_fields::{Place, RationalFunction};
use crate::error::Error;
use crate::invariants::{albanese_certificate, chern_numbers, complex_counts};
use crate::lattice::{standard_structure, AB_PRODUCTS, BA_PRODUCTS};
use crate::local_perm::{local_group_a, local_group_b, reference_group, sigma, Perm, WreathPerm};
use crate::presentations::{
    abelianization, fixed_presentations, lambda_to_v4, nontrivial_relators, orbifold_presentation,
    reidemeister_schreier,
};
use crate::square_complex::{build_complex, verify_v4, Edge, SquareComplexVH, V4Verdict};
use crate::verification::{
    ball_check, ball_check_parallel, generator_table_certificate, neighbors_certificate,
    order_discriminant, ramified_places, stabilizer_certificate, BallCheckReport, Certificate,
};

pub const DEFAULT_RADIUS: u32 = 3;

pub fn ramification_certificate() -> Result<Certificate, Error> {
    let mut c = Certificate::new("ramification");
    let r = ramified_places()?;
    let names: Vec<String> = r.iter().map(|p| p.display_with('z')).collect();
    c.check(
        "ramified places = {1, zeta}",
        r == [Place::one(), Place::zeta()],
        names.join(", "),
    );
    Ok(c)
}

pub fn discriminant_certificate() -> Certificate {
    let mut c = Certificate::new("discriminant");
    let d = order_discriminant();
    let expected = RationalFunction::poly(&[0, 3]).square();
    c.check("disc = (1+z^3)^2", d == expected, d.display_with('z'));
    c
}

pub fn structure_certificate() -> Certificate {
    let mut c = Certificate::new("v4-structure");
    let s = standard_structure();
    let verdict = verify_v4(&s);
    let detail = match &verdict {
        V4Verdict::Ok => "ok (generation assumed)".to_string(),
        V4Verdict::Failure(f) => f.to_string(),
    };
    c.check("verify_v4", verdict.is_ok(), detail);
    c.check("inverse-stable", s.is_inverse_stable(), "");
    for p in AB_PRODUCTS.iter().chain(BA_PRODUCTS.iter()) {
        c.check(
            format!("{} * {} = {}", p.left, p.right, p.value),
            p.holds(),
            "",
        );
    }
    c
}

pub fn complex_certificate(cx: &SquareComplexVH) -> Certificate {
    let mut c = Certificate::new("square-complex");
    let counts = cx.counts();
    c.check(
        "counts (4, 12, 9)",
        counts == (4, 12, 9),
        format!("{counts:?}"),
    );
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        c.check(
            format!("link at s{i}{j} is K_3,3"),
            cx.link(i, j).is_complete_bipartite(),
            "",
        );
    }
    let reps: Vec<String> = cx
        .v4_orbit_representatives()
        .iter()
        .map(|s| cx.square_label(s))
        .collect();
    c.check(
        "V4-orbit representatives",
        reps == ["[b1,b2;b2^-1,c1]", "[b1,c2;b2,b1^-1]", "[c1,c2;c2,c1]"],
        reps.join(" "),
    );
    let mut sizes: Vec<usize> = cx.v4_orbits().iter().map(Vec::len).collect();
    sizes.sort();
    c.check(
        "orbit sizes {1, 4, 4}",
        sizes == [1, 4, 4],
        format!("{sizes:?}"),
    );
    c.check(
        "Euler characteristic 1",
        cx.euler_characteristic() == 1,
        cx.euler_characteristic().to_string(),
    );
    c
}

/// The two listed generators of `P^A_0` in cycle notation.
pub const SIGMA_B2: (&str, &str) = ("(b1 c1 b1^-1)", "(b1^-1 c1 b1)");
pub const SIGMA_C2: (&str, &str) = ("(b1 b1^-1)", "(b1^-1 b1)");

pub fn local_perm_certificate(cx: &SquareComplexVH) -> Result<Certificate, Error> {
    let mut c = Certificate::new("local-permutation-groups");
    let ref_a = reference_group(&Perm(cx.inv_a.clone()));
    let ref_b = reference_group(&Perm(cx.inv_b.clone()));
    for j in 0..2u8 {
        let pa = local_group_a(cx, j)?;
        let pb = local_group_b(cx, j)?;
        c.check(
            format!("|P^A_{j}| = 12 and P^A_{j} = P^A"),
            pa.order() == 12 && pa.elements == ref_a.elements,
            pa.order().to_string(),
        );
        c.check(
            format!("|P^B_{j}| = 12 and P^B_{j} = P^B"),
            pb.order() == 12 && pb.elements == ref_b.elements,
            pb.order().to_string(),
        );
        c.check(
            format!("P^A_{j} transitive on A x I"),
            pa.is_transitive(),
            "",
        );
    }
    for (edge, (x, y), name) in [
        (Edge::horizontal(0, 0), SIGMA_B2, "sigma_(b2,0)"),
        (Edge::horizontal(2, 0), SIGMA_C2, "sigma_(c2,0)"),
    ] {
        let s = sigma(cx, &edge)?;
        let expected = WreathPerm {
            components: [
                Perm::parse_cycles(x, &cx.a_labels)?,
                Perm::parse_cycles(y, &cx.a_labels)?,
            ],
            flip: true,
        };
        c.check(name, s == expected, s.to_cycle_string(&cx.a_labels));
    }
    Ok(c)
}

pub fn presentation_certificate(cx: &SquareComplexVH) -> Result<Certificate, Error> {
    let mut c = Certificate::new("presentations");
    let f = fixed_presentations();
    let orb = orbifold_presentation(cx);
    c.check(
        "orbifold presentation = Lambda",
        orb.same_relators(&f.lambda),
        orb.to_text(),
    );
    for (name, p) in [("Lambda", &f.lambda), ("G(R)", &f.gr), ("Gamma", &f.gamma)] {
        let bad = nontrivial_relators(p)?;
        c.check(
            format!("{name} relators are projectively trivial"),
            bad.is_empty(),
            bad.join(", "),
        );
    }
    Ok(c)
}

pub fn abelianization_certificate() -> Result<Certificate, Error> {
    let mut c = Certificate::new("abelianization");
    let f = fixed_presentations();
    let g = abelianization(&f.gamma)?;
    c.check("Gamma^ab = Z/15", g.is_cyclic_of_order(15), g.to_string());
    let k = reidemeister_schreier(&f.lambda, &lambda_to_v4())?;
    c.check(
        "index of ker(Lambda -> V4) = 4",
        k.index == 4,
        k.index.to_string(),
    );
    let kab = abelianization(&k.presentation)?;
    c.check(
        "ker(Lambda -> V4)^ab = Z/15",
        kab.is_cyclic_of_order(15),
        kab.to_string(),
    );
    Ok(c)
}

pub fn ball_certificate(report: &BallCheckReport) -> Certificate {
    let mut c = Certificate::new("ball-check");
    c.check(
        format!(
            "radius {}: elements = vertices = {}",
            report.radius, report.expected_vertices
        ),
        report.injective,
        format!(
            "{} words, {} elements, {} vertices",
            report.word_count, report.distinct_elements, report.distinct_vertices
        ),
    );
    c.check("only the identity fixes w", report.stabilizer_trivial, "");
    c
}

pub fn invariants_certificate() -> Result<Certificate, Error> {
    let mut c = Certificate::new("invariants");
    let k = complex_counts(4, 2)?;
    c.check(
        "counts(4,2) = (12, 9, chi 1)",
        (k.edges, k.squares, k.chi) == (12, 9, 1),
        format!("{k:?}"),
    );
    let ch = chern_numbers(4, 2)?;
    c.check(
        "c1^2 = 8, c2 = 4",
        (ch.c1_squared, ch.c2) == (8, 4),
        format!("{ch:?}"),
    );
    c.check("Noether", ch.c1_squared + ch.c2 == 12 * k.chi, "");
    Ok(c)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub ball: BallCheckReport,
    pub certificates: Vec<Certificate>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<String> {
        self.certificates
            .iter()
            .flat_map(|c| {
                c.failures()
                    .into_iter()
                    .map(move |i| format!("{}: {}", c.name, i.name))
            })
            .collect()
    }
}

pub fn run_all(radius: u32, parallel: bool) -> Result<VerifyReport, Error> {
    let cx = build_complex(&standard_structure())?;
    let ball = if parallel {
        ball_check_parallel(radius)?
    } else {
        ball_check(radius)?
    };
    let certificates = vec![
        ramification_certificate()?,
        discriminant_certificate(),
        generator_table_certificate()?,
        structure_certificate(),
        complex_certificate(&cx),
        local_perm_certificate(&cx)?,
        stabilizer_certificate()?,
        neighbors_certificate()?,
        presentation_certificate(&cx)?,
        abelianization_certificate()?,
        ball_certificate(&ball),
        invariants_certificate()?,
        albanese_certificate(&cx)?,
    ];
    Ok(VerifyReport {
        passed: certificates.iter().all(|c| c.passed),
        ball,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass_at_radius_two() {
        let r = run_all(2, false).unwrap();
        assert!(r.passed, "{:?}", r.failures());
        assert_eq!(r.certificates.len(), 13);
    }
}
