//! The lattice generated by `b1, b2, c1, c2` in `Q^x / K^x` and its V4-structure.

use std::collections::HashMap;
use std::sync::Arc;

use crate::base_fields::RationalFunction;
use crate::quaternion::{NamedElements, Quaternion, QuaternionAlgebra};
use crate::square_complex::{ElementDomain, Labeled, V4Structure};

/// Quaternions up to nonzero scalars. Inverses are taken as conjugates,
/// which agree with true inverses projectively and keep entries polynomial.
#[derive(Clone, Debug)]
pub struct QuaternionDomain {
    alg: Arc<QuaternionAlgebra>,
}

impl QuaternionDomain {
    pub fn new(alg: Arc<QuaternionAlgebra>) -> Self {
        QuaternionDomain { alg }
    }

    pub fn standard() -> Self {
        Self::new(QuaternionAlgebra::standard())
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.alg
    }
}

impl ElementDomain for QuaternionDomain {
    type Element = Quaternion;

    fn mul(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a.checked_mul(b).expect("elements of one algebra")
    }

    fn inv(&self, a: &Quaternion) -> Option<Quaternion> {
        if a.rnorm().is_zero() {
            None
        } else {
            Some(a.conj())
        }
    }

    fn eq(&self, a: &Quaternion, b: &Quaternion) -> bool {
        a.projective_eq(b).unwrap_or(false)
    }
}

/// Hash-based interning of quaternions up to scalars.
#[derive(Default, Debug)]
pub struct ProjectiveInterner {
    ids: HashMap<[RationalFunction; 4], usize>,
}

impl ProjectiveInterner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id of the class of `q` and whether it was new. `None` for zero.
    pub fn intern(&mut self, q: &Quaternion) -> Option<(usize, bool)> {
        let key = q.projective_key()?;
        let next = self.ids.len();
        let mut fresh = false;
        let id = *self.ids.entry(key).or_insert_with(|| {
            fresh = true;
            next
        });
        Some((id, fresh))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

pub const A_LABELS: [&str; 3] = ["b1", "b1^-1", "c1"];
pub const B_LABELS: [&str; 3] = ["b2", "b2^-1", "c2"];

/// `A = {b1, b1^-1, c1}`, `B = {b2, b2^-1, c2}` in that order.
pub fn standard_structure() -> V4Structure<QuaternionDomain> {
    let n = NamedElements::new();
    let inv = |q: &Quaternion| q.inverse().expect("norm is a unit");
    V4Structure::new(
        QuaternionDomain::standard(),
        vec![
            Labeled::new(A_LABELS[0], n.b1.clone()),
            Labeled::new(A_LABELS[1], inv(&n.b1)),
            Labeled::new(A_LABELS[2], n.c1.clone()),
        ],
        vec![
            Labeled::new(B_LABELS[0], n.b2.clone()),
            Labeled::new(B_LABELS[1], inv(&n.b2)),
            Labeled::new(B_LABELS[2], n.c2.clone()),
        ],
    )
}

/// An exact identity `x * y = value` between named elements and their inverses.
#[derive(Clone, Debug)]
pub struct ProductIdentity {
    pub left: &'static str,
    pub right: &'static str,
    pub value: &'static str,
}

/// The nine products `A x B` with their exact values.
pub const AB_PRODUCTS: [ProductIdentity; 9] = [
    ProductIdentity {
        left: "B1",
        right: "B2",
        value: "(1+z)(z+z^2+zI+J+IJ)",
    },
    ProductIdentity {
        left: "B1",
        right: "B2^-1",
        value: "z^-1(z+z^2+I+IJ)",
    },
    ProductIdentity {
        left: "B1",
        right: "C2",
        value: "(1+z)(1+z+z^2+I+IJ)",
    },
    ProductIdentity {
        left: "B1^-1",
        right: "B2",
        value: "I",
    },
    ProductIdentity {
        left: "B1^-1",
        right: "B2^-1",
        value: "(z+z^2)^-1(1+z+zI+J)",
    },
    ProductIdentity {
        left: "B1^-1",
        right: "C2",
        value: "1+I",
    },
    ProductIdentity {
        left: "C1",
        right: "B2",
        value: "(1+z)(z^2+zI+J+IJ)",
    },
    ProductIdentity {
        left: "C1",
        right: "B2^-1",
        value: "z^-1(1+zI+J)",
    },
    ProductIdentity {
        left: "C1",
        right: "C2",
        value: "(1+z)(z^2+IJ)",
    },
];

/// Products `B x A` used to derive the square relations.
pub const BA_PRODUCTS: [ProductIdentity; 3] = [
    ProductIdentity {
        left: "B2",
        right: "B1",
        value: "(1+z)(1+zI+J)",
    },
    ProductIdentity {
        left: "C2",
        right: "B1",
        value: "(1+z)I",
    },
    ProductIdentity {
        left: "C2",
        right: "C1",
        value: "(1+z)(z^2+IJ)",
    },
];

/// Looks up `B1, B2, C1, C2, D` and their exact inverses by name.
pub fn named_element(name: &str) -> Option<Quaternion> {
    let n = NamedElements::new();
    let (base, inverse) = match name.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let q = match base {
        "B1" => n.b1,
        "B2" => n.b2,
        "C1" => n.c1,
        "C2" => n.c2,
        "D" => n.d,
        _ => return None,
    };
    if inverse {
        q.inverse().ok()
    } else {
        Some(q)
    }
}

impl ProductIdentity {
    /// Whether the identity holds exactly in `Q`.
    pub fn holds(&self) -> bool {
        let alg = QuaternionAlgebra::standard();
        let (Some(x), Some(y)) = (named_element(self.left), named_element(self.right)) else {
            return false;
        };
        let Ok(v) = Quaternion::parse(&alg, self.value) else {
            return false;
        };
        x.checked_mul(&y).map(|p| p == v).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square_complex::{build_complex, verify_v4, Square};

    #[test]
    fn products_are_exact() {
        for p in AB_PRODUCTS.iter().chain(BA_PRODUCTS.iter()) {
            assert!(p.holds(), "{} * {} != {}", p.left, p.right, p.value);
        }
    }

    #[test]
    fn torsion_of_c() {
        let n = NamedElements::new();
        let alg = QuaternionAlgebra::standard();
        assert_eq!(&n.c1 * &n.c1, Quaternion::parse(&alg, "1+z").unwrap());
        assert_eq!(&n.c2 * &n.c2, Quaternion::parse(&alg, "z+z^2").unwrap());
    }

    #[test]
    fn standard_structure_is_inverse_stable() {
        let s = standard_structure();
        assert!(verify_v4(&s).is_ok());
        assert!(s.is_inverse_stable());
        let c = build_complex(&s).unwrap();
        assert_eq!(c.counts(), (4, 12, 9));
        assert!(c.inversion_preserves_squares());
    }

    #[test]
    fn contains_relation_square() {
        // b2 b1 = c1 b2^-1 rewritten as b1 b2 = b2^-1 c1
        let c = build_complex(&standard_structure()).unwrap();
        let sq = Square {
            a: 0,
            b_prime: 0,
            b: 1,
            a_prime: 2,
        };
        assert!(c.find_square(&sq).is_some());
    }

    #[test]
    fn orbits_and_links() {
        let c = build_complex(&standard_structure()).unwrap();
        let mut sizes: Vec<usize> = c.v4_orbits().iter().map(|o| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 4, 4]);
        let reps: Vec<String> = c
            .v4_orbit_representatives()
            .iter()
            .map(|s| c.square_label(s))
            .collect();
        assert_eq!(
            reps,
            ["[b1,b2;b2^-1,c1]", "[b1,c2;b2,b1^-1]", "[c1,c2;c2,c1]"]
        );
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let l = c.link(i, j);
            assert_eq!((l.left.len(), l.right.len(), l.edges.len()), (3, 3, 9));
            assert!(l.is_complete_bipartite());
        }
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn one_sided_sets_are_not_inverse_closed() {
        let n = NamedElements::new();
        let d = QuaternionDomain::standard();
        let s = V4Structure::new(
            d,
            vec![Labeled::new("b1", n.b1)],
            vec![Labeled::new("b2", n.b2)],
        );
        assert!(!verify_v4(&s).is_ok());
    }

    #[test]
    fn interning_is_projective() {
        let n = NamedElements::new();
        let mut t = ProjectiveInterner::new();
        let (i, fresh) = t.intern(&n.b1).unwrap();
        assert!(fresh);
        let scaled = n.b1.scale(&RationalFunction::poly(&[0, 1, 5]));
        assert_eq!(t.intern(&scaled).unwrap(), (i, false));
        assert_eq!(t.len(), 1);
    }
}
