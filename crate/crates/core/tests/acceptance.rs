//! Acceptance run: one PASS/FAIL line per criterion, then a single assertion.
//!
//! Run with `cargo test -p quatlattice --test acceptance -- --nocapture` to see the table.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quatlattice::base_fields::{BinaryPoly, Place, RationalFunction, Valuation};
use quatlattice::bruhat_tits::{distance, vertex_from_matrix, TreeVertex};
use quatlattice::embeddings::{embed_scalar, rho, FieldMap, Matrix2};
use quatlattice::invariants::{albanese_certificate, albanese_kernel_dim};
use quatlattice::lattice::standard_structure;
use quatlattice::quaternion::{Quaternion, QuaternionAlgebra};
use quatlattice::square_complex::{build_complex, SquareComplexVH};
use quatlattice::suite;
use quatlattice::verification::{
    ball_check, expected_ball_size, generator_table_certificate, neighbors_certificate,
    order_discriminant, ramified_places, stabilizer_certificate, Certificate,
};

const SEED: u64 = 0x5eed_0f2a;
const CASES: usize = 1000;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cert(c: Result<Certificate, quatlattice::Error>) -> Outcome {
    let c = c.map_err(|e| e.to_string())?;
    let bad: Vec<String> = c
        .failures()
        .iter()
        .map(|i| format!("{} [{}]", i.name, i.detail))
        .collect();
    ensure(c.passed, || format!("{}: {}", c.name, bad.join("; ")))
}

fn complex() -> SquareComplexVH {
    build_complex(&standard_structure()).expect("standard structure")
}

fn poly(rng: &mut ChaCha8Rng, bits: u32) -> BinaryPoly {
    BinaryPoly::from_bits(rng.gen_range(0..1u64 << bits))
}

fn nonzero_poly(rng: &mut ChaCha8Rng, bits: u32) -> BinaryPoly {
    BinaryPoly::from_bits(rng.gen_range(1..1u64 << bits))
}

fn rf(rng: &mut ChaCha8Rng) -> RationalFunction {
    RationalFunction::new(poly(rng, 7), nonzero_poly(rng, 5)).unwrap()
}

fn nonzero_rf(rng: &mut ChaCha8Rng) -> RationalFunction {
    RationalFunction::new(nonzero_poly(rng, 7), nonzero_poly(rng, 5)).unwrap()
}

/// An element of the valuation ring at 0: denominator with constant term 1.
fn integral(rng: &mut ChaCha8Rng) -> RationalFunction {
    let den = BinaryPoly::from_bits(rng.gen_range(0..1u64 << 4) << 1 | 1);
    RationalFunction::new(poly(rng, 6), den).unwrap()
}

fn quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    let alg = QuaternionAlgebra::standard();
    Quaternion::new(&alg, std::array::from_fn(|_| rf(rng)))
}

fn field(rng: &mut ChaCha8Rng) -> FieldMap {
    if rng.gen_bool(0.5) {
        FieldMap::RhoY
    } else {
        FieldMap::RhoT
    }
}

fn nonsingular(rng: &mut ChaCha8Rng, f: FieldMap) -> Matrix2 {
    loop {
        let m = Matrix2::new(f, [[rf(rng), rf(rng)], [rf(rng), rf(rng)]]);
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn unit_matrix(rng: &mut ChaCha8Rng, f: FieldMap) -> Matrix2 {
    loop {
        let m = Matrix2::new(
            f,
            [
                [integral(rng), integral(rng)],
                [integral(rng), integral(rng)],
            ],
        );
        if Place::zero().valuation(&m.det()) == Valuation::Finite(0) {
            return m;
        }
    }
}

fn random_vertex(rng: &mut ChaCha8Rng, f: FieldMap) -> TreeVertex {
    let mut v = TreeVertex::standard(f);
    for _ in 0..rng.gen_range(0..8) {
        v = v.neighbors()[rng.gen_range(0..3)].clone();
    }
    v
}

fn c1_ramification() -> Outcome {
    let r = ramified_places().map_err(|e| e.to_string())?;
    ensure(r == [Place::one(), Place::zeta()], || format!("{r:?}"))?;
    ensure(r.len() % 2 == 0, || "odd number of ramified places".into())
}

fn c2_discriminant() -> Outcome {
    let d = order_discriminant();
    ensure(d == RationalFunction::poly(&[0, 3]).square(), || {
        d.to_string()
    })
}

fn c3_splitting() -> Outcome {
    let alg = QuaternionAlgebra::standard();
    let (i, j) = (Quaternion::basis(&alg, 1), Quaternion::basis(&alg, 2));
    for f in [FieldMap::RhoY, FieldMap::RhoT] {
        let ri = rho(&i, f).map_err(e_str)?;
        let rj = rho(&j, f).map_err(e_str)?;
        let one = Matrix2::identity(f);
        let a = Matrix2::scalar(f, embed_scalar(alg.a(), f));
        let b = Matrix2::scalar(f, embed_scalar(alg.b(), f));
        let ii = ri.checked_mul(&ri).map_err(e_str)?;
        ensure(ii.add(&ri) == a, || format!("{f:?}: I^2 + I != z"))?;
        ensure(rj.checked_mul(&rj).map_err(e_str)? == b, || {
            format!("{f:?}: J^2 != 1+z^3")
        })?;
        let ji = rj.checked_mul(&ri).map_err(e_str)?;
        let ij = ri.checked_mul(&rj).map_err(e_str)?;
        ensure(ji == ij.add(&rj), || format!("{f:?}: JI != IJ + J"))?;
        ensure(
            rho(&Quaternion::one(&alg), f).map_err(e_str)? == one,
            || format!("{f:?}: rho(1) != 1"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    for _ in 0..CASES {
        let p = quaternion(&mut rng);
        let n = p.rnorm();
        for f in [FieldMap::RhoY, FieldMap::RhoT] {
            let rp = rho(&p, f).map_err(e_str)?;
            ensure(rp.det() == embed_scalar(&n, f), || {
                format!("det rho({p}) != rnorm")
            })?;
        }
    }
    cert(generator_table_certificate())
}

fn e_str(e: quatlattice::Error) -> String {
    e.to_string()
}

fn c4_structure() -> Outcome {
    cert(Ok(suite::structure_certificate()))
}

fn c5_complex() -> Outcome {
    cert(Ok(suite::complex_certificate(&complex())))
}

fn c6_local_groups() -> Outcome {
    cert(suite::local_perm_certificate(&complex()))
}

fn c7_stabilizer() -> Outcome {
    cert(stabilizer_certificate())
}

fn c8_neighbors() -> Outcome {
    cert(neighbors_certificate())
}

fn c9_ball() -> Outcome {
    let literal = [1usize, 7, 28];
    for radius in 0..=4u32 {
        let r = ball_check(radius).map_err(e_str)?;
        let expected = literal
            .get(radius as usize)
            .copied()
            .unwrap_or_else(|| expected_ball_size(radius));
        ensure(expected == expected_ball_size(radius), || {
            format!("formula at {radius}")
        })?;
        ensure(
            r.injective
                && r.stabilizer_trivial
                && r.distinct_elements == expected
                && r.distinct_vertices == expected,
            || format!("{r:?}"),
        )?;
    }
    Ok(())
}

fn c10_presentations() -> Outcome {
    cert(suite::presentation_certificate(&complex()))
}

fn c11_abelianization() -> Outcome {
    cert(suite::abelianization_certificate())
}

fn c12_invariants() -> Outcome {
    cert(suite::invariants_certificate())
}

fn c13_albanese() -> Outcome {
    let c = complex();
    for ell in [5, 7] {
        let k = albanese_kernel_dim(&c, ell).map_err(e_str)?;
        ensure(k == 0, || format!("kernel mod {ell} has dimension {k}"))?;
    }
    cert(albanese_certificate(&c))
}

fn quaternion_suite(rng: &mut ChaCha8Rng) -> Outcome {
    let alg = QuaternionAlgebra::standard();
    for _ in 0..CASES {
        let (p, q, r) = (quaternion(rng), quaternion(rng), quaternion(rng));
        ensure(&(&p * &q) * &r == &p * &(&q * &r), || {
            format!("associativity at {p}, {q}, {r}")
        })?;
        ensure((&p * &q).rnorm() == &p.rnorm() * &q.rnorm(), || {
            format!("norm at {p}, {q}")
        })?;
        // char 2: q^2 + tr(q) q + N(q) = 0
        let ch = &(&(&p * &p) + &p.scale(&p.rtrace())) + &Quaternion::scalar(&alg, p.rnorm());
        ensure(ch.is_zero(), || format!("Cayley-Hamilton at {p}"))?;
    }
    Ok(())
}

fn valuation_suite(rng: &mut ChaCha8Rng) -> Outcome {
    let places = [Place::zero(), Place::one(), Place::zeta(), Place::Infinity];
    for _ in 0..CASES {
        let (f, g) = (nonzero_rf(rng), rf(rng));
        let p = &places[rng.gen_range(0..places.len())];
        let (vf, vg) = (p.valuation(&f), p.valuation(&g));
        ensure(
            p.valuation(&RationalFunction::zero()) == Valuation::Infinite,
            || "v(0)".into(),
        )?;
        let vfg = p.valuation(&(&f * &g));
        let sum = match vg {
            Valuation::Infinite => Valuation::Infinite,
            Valuation::Finite(b) => Valuation::Finite(vf.finite().unwrap() + b),
        };
        ensure(vfg == sum, || format!("v({f} * {g}) at {p:?}"))?;
        ensure(p.valuation(&(&f + &g)) >= vf.min(vg), || {
            format!("v({f} + {g}) at {p:?}")
        })?;
        ensure(
            p.valuation(&f.inv().unwrap()) == Valuation::Finite(-vf.finite().unwrap()),
            || format!("v(1/{f})"),
        )?;
    }
    Ok(())
}

fn tree_metric_suite(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..CASES {
        let f = field(rng);
        let (x, y, z) = (
            random_vertex(rng, f),
            random_vertex(rng, f),
            random_vertex(rng, f),
        );
        let d = |a: &TreeVertex, b: &TreeVertex| distance(a, b).map_err(e_str);
        ensure(d(&x, &x)? == 0, || format!("d({x}, {x}) != 0"))?;
        ensure((d(&x, &y)? == 0) == (x == y), || {
            format!("d({x}, {y}) = 0 iff equal")
        })?;
        ensure(d(&x, &y)? == d(&y, &x)?, || format!("symmetry at {x}, {y}"))?;
        ensure(d(&x, &z)? <= d(&x, &y)? + d(&y, &z)?, || {
            format!("triangle at {x}, {y}, {z}")
        })?;
        for n in x.neighbors() {
            ensure(d(&x, &n)? == 1, || {
                format!("neighbor of {x} at distance != 1")
            })?;
        }
    }
    Ok(())
}

fn canonical_form_suite(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..CASES {
        let f = field(rng);
        let m = nonsingular(rng, f);
        let v = vertex_from_matrix(&m).map_err(e_str)?;
        let u = unit_matrix(rng, f);
        let mu = m.checked_mul(&u).map_err(e_str)?;
        ensure(vertex_from_matrix(&mu).map_err(e_str)? == v, || {
            format!("{m} * {u}")
        })?;
        let s = nonzero_rf(rng);
        ensure(
            vertex_from_matrix(&m.scale(&s)).map_err(e_str)? == v,
            || format!("{s} * {m}"),
        )?;
        ensure(vertex_from_matrix(&v.matrix()).map_err(e_str)? == v, || {
            format!("{v} not a fixed point")
        })?;
    }
    Ok(())
}

fn c14_properties() -> Outcome {
    type Suite = fn(&mut ChaCha8Rng) -> Outcome;
    let suites: [(&str, Suite); 4] = [
        ("quaternion", quaternion_suite),
        ("valuation", valuation_suite),
        ("tree metric", tree_metric_suite),
        ("canonical form", canonical_form_suite),
    ];
    for (k, (name, suite)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + k as u64);
        suite(&mut rng).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const fn ms(n: u64) -> Duration {
    Duration::from_millis(n)
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            id: 1,
            name: "ramification",
            budget: ms(1),
            run: c1_ramification,
        },
        Criterion {
            id: 2,
            name: "discriminant",
            budget: ms(1),
            run: c2_discriminant,
        },
        Criterion {
            id: 3,
            name: "splitting maps",
            budget: ms(1000),
            run: c3_splitting,
        },
        Criterion {
            id: 4,
            name: "V4-structure",
            budget: ms(100),
            run: c4_structure,
        },
        Criterion {
            id: 5,
            name: "square complex",
            budget: ms(100),
            run: c5_complex,
        },
        Criterion {
            id: 6,
            name: "local permutation groups",
            budget: ms(100),
            run: c6_local_groups,
        },
        Criterion {
            id: 7,
            name: "stabilizer",
            budget: ms(10),
            run: c7_stabilizer,
        },
        Criterion {
            id: 8,
            name: "neighbors",
            budget: ms(10),
            run: c8_neighbors,
        },
        Criterion {
            id: 9,
            name: "ball check to radius 4",
            budget: ms(20_000),
            run: c9_ball,
        },
        Criterion {
            id: 10,
            name: "presentations",
            budget: ms(1000),
            run: c10_presentations,
        },
        Criterion {
            id: 11,
            name: "abelianization",
            budget: ms(1000),
            run: c11_abelianization,
        },
        Criterion {
            id: 12,
            name: "invariants",
            budget: ms(1),
            run: c12_invariants,
        },
        Criterion {
            id: 13,
            name: "Albanese",
            budget: ms(100),
            run: c13_albanese,
        },
        Criterion {
            id: 14,
            name: "property suites",
            budget: ms(10_000),
            run: c14_properties,
        },
    ];
    println!("\nacceptance criteria");
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let over = elapsed > c.budget;
        let status = if result.is_ok() && !over {
            "PASS"
        } else {
            "FAIL"
        };
        let mut line = format!(
            "{status} {:>2}. {} ({elapsed:.2?}, budget {:?})",
            c.id, c.name, c.budget
        );
        if let Err(e) = &result {
            line.push_str(&format!(": {e}"));
        }
        if over {
            line.push_str(": over budget");
        }
        println!("{line}");
        if status == "FAIL" {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
