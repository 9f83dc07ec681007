use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use crate::error::Error;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(m).abs().is_one()
}

/// Smith normal form, pivoting on the entry of least absolute value.
/// The factorization is verified by multiplication before returning.
#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm, Error> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidInput("ragged matrix".into()));
    }
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero |entry| in the remaining block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d[i][j].is_zero())
            .min_by(|&(a, b), &(c, e)| d[a][b].abs().cmp(&d[c][e].abs()))
        else {
            break;
        };
        d.swap(t, pi);
        u.swap(t, pi);
        for r in d.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = &d[i][t] / &d[t][t];
            if !q.is_zero() {
                for j in 0..cols {
                    let x = &q * &d[t][j];
                    d[i][j] -= x;
                }
                for j in 0..rows {
                    let x = &q * &u[t][j];
                    u[i][j] -= x;
                }
            }
            clean &= d[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = &d[t][j] / &d[t][t];
            if !q.is_zero() {
                for i in 0..rows {
                    let x = &q * &d[i][t];
                    d[i][j] -= x;
                }
                for i in 0..cols {
                    let x = &q * &v[i][t];
                    v[i][j] -= x;
                }
            }
            clean &= d[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold a row with a non-multiple into the pivot row
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
        if let Some((i, _)) = bad {
            for j in 0..cols {
                let x = d[i][j].clone();
                d[t][j] += x;
            }
            for j in 0..rows {
                let x = u[i][j].clone();
                u[t][j] += x;
            }
            continue;
        }
        if d[t][t].is_negative() {
            for j in 0..cols {
                d[t][j] = -&d[t][j];
            }
            for j in 0..rows {
                u[t][j] = -&u[t][j];
            }
        }
        t += 1;
    }
    let check = mat_mul(&mat_mul(&u, m), &v);
    if check != d || !is_unimodular(&u) || !is_unimodular(&v) {
        return Err(Error::InvalidInput("Smith form verification failed".into()));
    }
    Ok(SmithForm { u, v, d })
}

/// Invariant factors greater than one and the free rank of the abelianization.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Abelianization {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl Abelianization {
    pub fn is_cyclic_of_order(&self, n: u64) -> bool {
        self.free_rank == 0 && self.invariant_factors == [BigInt::from(n)]
    }
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|n| format!("Z/{n}"))
            .collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> Result<Abelianization, Error> {
    let n = p.num_generators();
    let m = to_big(&p.exponent_matrix());
    if m.is_empty() {
        return Ok(Abelianization {
            invariant_factors: Vec::new(),
            free_rank: n,
        });
    }
    let s = smith_normal_form(&m)?;
    let diag = s.diagonal();
    Ok(Abelianization {
        free_rank: n - diag.len(),
        invariant_factors: diag.into_iter().filter(|x| !x.is_one()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use minors::*;
    use proptest::prelude::*;

    // Independent oracle: invariant factors from gcds of k x k minors.
    mod minors {
        use itertools::Itertools;

        pub fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }

        fn leibniz(m: &[Vec<i64>]) -> i64 {
            let n = m.len();
            (0..n)
                .permutations(n)
                .map(|p| {
                    let inversions = (0..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    let prod: i64 = (0..n).map(|i| m[i][p[i]]).product();
                    if inversions % 2 == 0 {
                        prod
                    } else {
                        -prod
                    }
                })
                .sum()
        }

        pub fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i64> {
            let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
            let mut out = Vec::new();
            for k in 1..=r.min(c) {
                let mut g = 0;
                for rows in (0..r).combinations(k) {
                    for cols in (0..c).combinations(k) {
                        let sub: Vec<Vec<i64>> = rows
                            .iter()
                            .map(|&i| cols.iter().map(|&j| m[i][j]).collect())
                            .collect();
                        g = gcd(g, leibniz(&sub));
                    }
                }
                if g == 0 {
                    break;
                }
                out.push(g);
            }
            out
        }

        pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
            let dd = determinantal_divisors(m);
            (0..dd.len())
                .map(|k| if k == 0 { dd[0] } else { dd[k] / dd[k - 1] })
                .collect()
        }
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gamma_matrix() {
        let m = to_big(&[vec![1, -1], vec![7, 8]]);
        assert_eq!(determinant(&m), BigInt::from(15));
        assert_eq!(smith_normal_form(&m).unwrap().diagonal(), big(&[1, 15]));
    }

    #[test]
    fn lambda_exponent_matrix() {
        let m = vec![
            vec![0, 0, 2, 0],
            vec![0, 0, 0, 2],
            vec![0, 0, 0, 0],
            vec![1, 2, 1, 0],
            vec![2, -1, 0, 1],
        ];
        let s = smith_normal_form(&to_big(&m)).unwrap();
        let oracle = invariant_factors(&m);
        assert_eq!(s.diagonal(), big(&oracle));
        assert_eq!(oracle.iter().product::<i64>(), 20);
    }

    #[test]
    fn free_group() {
        let p = Presentation::parse("< a | >").unwrap();
        let ab = abelianization(&p).unwrap();
        assert!(ab.invariant_factors.is_empty());
        assert_eq!(ab.free_rank, 1);
        assert_eq!(ab.to_string(), "Z");
    }

    proptest! {
        #[test]
        fn matches_minor_oracle(m in prop::collection::vec(prop::collection::vec(-6i64..7, 3), 1..4)) {
            let s = smith_normal_form(&to_big(&m)).unwrap();
            prop_assert_eq!(s.diagonal(), big(&invariant_factors(&m)));
            let diag = s.diagonal();
            for k in 1..diag.len() {
                prop_assert!((&diag[k] % &diag[k - 1]).is_zero());
            }
        }
    }
}
