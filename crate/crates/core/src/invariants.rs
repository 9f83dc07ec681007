//! Numerical invariants of the fake quadric: cell counts of the quotient
//! complex, Chern numbers, and the mod-l kernel of the boundary map used for
//! the Albanese variety.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::local_perm::t_map;
use crate::presentations::{
    abelianization, fixed_presentations, lambda_to_v4, reidemeister_schreier, Abelianization,
};
use crate::square_complex::{Edge, Orientation, SquareComplexVH};
use crate::verification::Certificate;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComplexCounts {
    pub vertices: u64,
    pub q: u64,
    pub edges: u64,
    pub squares: u64,
    pub chi: u64,
}

pub fn complex_counts(n: u64, q: u64) -> Result<ComplexCounts, Error> {
    if n == 0 || q < 2 {
        return Err(Error::InvalidInput("need N >= 1 and q >= 2".into()));
    }
    let sq = n * (q + 1) * (q + 1);
    if !sq.is_multiple_of(4) {
        return Err(Error::InvalidInput(format!(
            "N(q+1)^2 = {sq} is not divisible by 4"
        )));
    }
    Ok(ComplexCounts {
        vertices: n,
        q,
        edges: n * (q + 1),
        squares: sq / 4,
        // N(q-1)^2 = N(q+1)^2 - 4Nq
        chi: sq / 4 - n * q,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ChernNumbers {
    pub c1_squared: u64,
    pub c2: u64,
}

pub fn chern_numbers(n: u64, q: u64) -> Result<ChernNumbers, Error> {
    let counts = complex_counts(n, q)?;
    let base = n * (q - 1) * (q - 1);
    let c = ChernNumbers {
        c1_squared: 2 * base,
        c2: base,
    };
    assert_eq!(c.c1_squared + c.c2, 12 * counts.chi, "Noether's formula");
    Ok(c)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Rank of a matrix over `Z/ell` by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank_mod(rows: &[Vec<u64>], ell: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x % ell).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c], ell - 2, ell);
        for x in m[rank].iter_mut() {
            *x = *x * inv % ell;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + ell * ell - f * m[rank][k] % ell) % ell;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// The matrix of `∂` mod `ell`, one row per basis vector of the domain.
///
/// The domain is `⊕_{i,j} Maps0(A) ⊕ Maps0(B)` ordered by vertex `s_00, s_01,
/// s_10, s_11`, with basis `e_k - e_last`. A horizontal edge `(b, j)` receives
/// `ξ^h_{0j} ∘ t^0 - ξ^h_{1j} ∘ t^1`, a vertical edge `(a, i)` receives
/// `ξ^v_{i0} ∘ t^0 - ξ^v_{i1} ∘ t^1`. Each edge block is a zero-sum function
/// on its squares, stored without its last coordinate. With `flip` the two
/// terms swap sign.
pub fn boundary_matrix(c: &SquareComplexVH, ell: u64, flip: bool) -> Vec<Vec<u64>> {
    let (na, nb) = (c.a_labels.len(), c.b_labels.len());
    let vertices = [(0u8, 0u8), (0, 1), (1, 0), (1, 1)];
    let edges = c.edges();
    let t_maps: Vec<[Vec<(usize, usize)>; 2]> = edges
        .iter()
        .map(|e| [t_map(c, e, 0), t_map(c, e, 1)])
        .collect();
    let mut rows = Vec::new();
    for &(vi, vj) in &vertices {
        for (kind, n) in [(Orientation::Horizontal, na), (Orientation::Vertical, nb)] {
            for k in 0..n.saturating_sub(1) {
                let mut xi = vec![0u64; n];
                xi[k] = 1;
                xi[n - 1] = ell - 1;
                let mut row = Vec::new();
                for (e, t) in edges.iter().zip(&t_maps) {
                    let size = t[0].len();
                    let mut out = vec![0u64; size];
                    if e.orientation == kind {
                        // ξ lives at s_ij; its position in the pair fixes t and the sign
                        let (slot, matches) = match e.orientation {
                            Orientation::Horizontal => (vi as usize, vj == e.index),
                            Orientation::Vertical => (vj as usize, vi == e.index),
                        };
                        if matches {
                            let positive = (slot == 0) != flip;
                            for (pos, &(_, label)) in t[slot].iter().enumerate() {
                                let v = xi[label];
                                out[pos] = if positive { v } else { (ell - v) % ell };
                            }
                        }
                    }
                    let sum = out.iter().sum::<u64>() % ell;
                    assert_eq!(sum, 0, "boundary component on {e:?} is not zero-sum");
                    row.extend_from_slice(&out[..size.saturating_sub(1)]);
                }
                rows.push(row);
            }
        }
    }
    rows
}

pub fn domain_dim(c: &SquareComplexVH) -> usize {
    4 * (c.a_labels.len() - 1 + c.b_labels.len() - 1)
}

pub fn codomain_dim(c: &SquareComplexVH) -> usize {
    c.edges()
        .iter()
        .map(|e: &Edge| c.squares_on_edge(e).len().saturating_sub(1))
        .sum()
}

/// Dimension of `ker ∂` over `Z/ell`.
pub fn albanese_kernel_dim(c: &SquareComplexVH, ell: u64) -> Result<usize, Error> {
    if !is_prime(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    let m = boundary_matrix(c, ell, false);
    Ok(m.len() - rank_mod(&m, ell))
}

/// `dim Hom(G, Z/ell)` for a finitely generated abelian group `G`.
pub fn hom_dim(ab: &Abelianization, ell: u64) -> usize {
    let l = num_bigint::BigInt::from(ell);
    ab.free_rank
        + ab.invariant_factors
            .iter()
            .filter(|d| (*d % &l) == num_bigint::BigInt::from(0))
            .count()
}

pub const KERNEL_PRIMES: [u64; 2] = [5, 7];
pub const HOM_PRIMES: [u64; 3] = [7, 11, 13];

pub fn albanese_certificate(c: &SquareComplexVH) -> Result<Certificate, Error> {
    let mut cert = Certificate::new("albanese");
    for ell in KERNEL_PRIMES {
        let k = albanese_kernel_dim(c, ell)?;
        cert.check(
            format!("ker ∂ mod {ell} = 0"),
            k == 0,
            format!("dimension {k}"),
        );
    }
    let f = fixed_presentations();
    let gamma = abelianization(&f.gamma)?;
    cert.check(
        "Gamma^ab = Z/15",
        gamma.is_cyclic_of_order(15),
        gamma.to_string(),
    );
    let kernel = reidemeister_schreier(&f.lambda, &lambda_to_v4())?;
    let kab = abelianization(&kernel.presentation)?;
    cert.check(
        "ker(Lambda -> V4)^ab = Z/15",
        kab.is_cyclic_of_order(15),
        kab.to_string(),
    );
    for ell in HOM_PRIMES {
        let h = hom_dim(&gamma, ell);
        cert.check(
            format!("Hom(Gamma^ab, Z/{ell}) = 0"),
            h == 0,
            format!("dimension {h}"),
        );
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard_structure;
    use crate::square_complex::build_complex;
    use num_bigint::BigInt;

    fn complex() -> SquareComplexVH {
        build_complex(&standard_structure()).unwrap()
    }

    #[test]
    fn counts() {
        let c = complex_counts(4, 2).unwrap();
        assert_eq!((c.edges, c.squares, c.chi), (12, 9, 1));
        let c = complex_counts(1, 3).unwrap();
        assert_eq!((c.edges, c.squares, c.chi), (4, 4, 1));
        assert!(complex_counts(0, 2).is_err());
        assert!(complex_counts(1, 2).is_err());
        assert_eq!(complex().euler_characteristic(), 1);
    }

    #[test]
    fn chern() {
        assert_eq!(
            chern_numbers(4, 2).unwrap(),
            ChernNumbers {
                c1_squared: 8,
                c2: 4
            }
        );
        assert_eq!(
            chern_numbers(1, 3).unwrap(),
            ChernNumbers {
                c1_squared: 8,
                c2: 4
            }
        );
    }

    #[test]
    fn dimensions() {
        let c = complex();
        assert_eq!(domain_dim(&c), 16);
        assert_eq!(codomain_dim(&c), 24);
        let m = boundary_matrix(&c, 5, false);
        assert_eq!((m.len(), m[0].len()), (16, 24));
    }

    #[test]
    fn kernel_trivial_for_5_and_7() {
        let c = complex();
        for ell in [5, 7] {
            assert_eq!(albanese_kernel_dim(&c, ell).unwrap(), 0);
        }
        assert!(albanese_kernel_dim(&c, 6).is_err());
    }

    #[test]
    fn kernel_independent_of_sign_convention() {
        let c = complex();
        for ell in [2, 3, 5, 7, 11] {
            let a = boundary_matrix(&c, ell, false);
            let b = boundary_matrix(&c, ell, true);
            assert_eq!(rank_mod(&a, ell), rank_mod(&b, ell));
        }
    }

    // Oracle for l = 2: count kernel vectors by exhausting all 2^16 inputs.
    #[test]
    fn kernel_mod_2_by_enumeration() {
        let c = complex();
        let m = boundary_matrix(&c, 2, false);
        let rows: Vec<u32> = (0..m[0].len())
            .map(|col| (0..m.len()).fold(0u32, |acc, r| acc | ((m[r][col] as u32) << r)))
            .collect();
        let kernel = (0u32..1 << m.len())
            .filter(|x| rows.iter().all(|col| (col & x).count_ones() % 2 == 0))
            .count();
        let dim = kernel.trailing_zeros() as usize;
        assert_eq!(1usize << dim, kernel);
        assert_eq!(dim, albanese_kernel_dim(&c, 2).unwrap());
    }

    #[test]
    fn hom_dims() {
        let z15 = Abelianization {
            invariant_factors: vec![BigInt::from(15)],
            free_rank: 0,
        };
        assert_eq!(hom_dim(&z15, 7), 0);
        assert_eq!(hom_dim(&z15, 5), 1);
        assert_eq!(hom_dim(&z15, 3), 1);
    }

    #[test]
    fn certificate_passes() {
        let cert = albanese_certificate(&complex()).unwrap();
        assert!(cert.passed, "{:?}", cert.failures());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod(&[vec![1, 2], vec![2, 4]], 7), 1);
        assert_eq!(rank_mod(&[vec![1, 2], vec![2, 4]], 2), 1);
        assert_eq!(rank_mod(&[vec![1, 1], vec![1, 2]], 3), 2);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(15));
    }
}
