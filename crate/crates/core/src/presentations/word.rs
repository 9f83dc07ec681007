use serde::{Deserialize, Serialize};

/// A word in generators `0..n`: letter `k + 1` is generator `k`, `-(k + 1)` its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<i32>);

pub fn letter(gen: usize, inverse: bool) -> i32 {
    let l = gen as i32 + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn letter_gen(l: i32) -> usize {
    (l.unsigned_abs() - 1) as usize
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![letter(g, false)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|&l| letter_gen(l)).max()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).free_reduce()
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::new();
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v).free_reduce()
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free and cyclic reduction.
    pub fn cyclic_reduce(&self) -> Word {
        let mut v = self.free_reduce().0;
        while v.len() >= 2 && v[0] == -v[v.len() - 1] {
            v.pop();
            v.remove(0);
        }
        Word(v)
    }

    /// Exponent sum of each of the first `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for &l in &self.0 {
            out[letter_gen(l)] += l.signum() as i64;
        }
        out
    }

    pub fn map_letters(&self, f: impl Fn(i32) -> Word) -> Word {
        let mut v = Vec::new();
        for &l in &self.0 {
            v.extend(f(l).0);
        }
        Word(v).free_reduce()
    }

    /// Form used to compare relators: letters of involutory generators lose
    /// their sign, then the least cyclic rotation of the word or its inverse.
    pub fn canonical_relator(&self, involutions: &[bool]) -> Word {
        let norm = |w: &Word| -> Vec<i32> {
            w.cyclic_reduce()
                .0
                .iter()
                .map(|&l| {
                    if involutions.get(letter_gen(l)).copied().unwrap_or(false) {
                        l.abs()
                    } else {
                        l
                    }
                })
                .collect()
        };
        let mut best: Option<Vec<i32>> = None;
        for v in [norm(self), norm(&Word(norm(self)).inverse())] {
            for r in 0..v.len().max(1) {
                let mut rot = v.clone();
                rot.rotate_left(r.min(v.len()));
                let rot = norm(&Word(rot));
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![1i32..4, -3i32..0], 0..12).prop_map(Word)
    }

    #[test]
    fn reductions() {
        assert_eq!(Word(vec![1, 2, -2, -1, 3]).free_reduce(), Word(vec![3]));
        assert_eq!(Word(vec![-1, 2, 3, 1]).cyclic_reduce(), Word(vec![2, 3]));
        assert_eq!(Word(vec![1, 2]).pow(-2), Word(vec![-2, -1, -2, -1]));
        assert_eq!(Word(vec![1, 1, -2]).exponent_sums(3), vec![2, -1, 0]);
    }

    #[test]
    fn canonical_identifies_rotations_and_involutions() {
        let inv = [false, false, true];
        let a = Word(vec![1, 2, -3, 2]);
        let b = Word(vec![2, 1, 2, 3]);
        assert_eq!(a.canonical_relator(&inv), b.canonical_relator(&inv));
        assert_ne!(
            a.canonical_relator(&[false; 3]),
            b.canonical_relator(&[false; 3])
        );
    }

    proptest! {
        #[test]
        fn inverse_cancels(w in arb_word()) {
            prop_assert!(w.concat(&w.inverse()).is_empty());
        }

        #[test]
        fn canonical_is_rotation_invariant(w in arb_word(), r in 0usize..12) {
            let mut v = w.cyclic_reduce().0;
            if !v.is_empty() {
                let k = r % v.len();
                v.rotate_left(k);
            }
            let inv = [true, false, false];
            prop_assert_eq!(Word(v).canonical_relator(&inv), w.canonical_relator(&inv));
            prop_assert_eq!(w.inverse().canonical_relator(&inv), w.canonical_relator(&inv));
        }
    }
}
