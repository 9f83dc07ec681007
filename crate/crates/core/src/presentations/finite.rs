use std::collections::{BTreeMap, VecDeque};

use super::presentation::Presentation;
use super::word::{letter, letter_gen, Word};
use crate::error::Error;

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = table.len();
        let bad = |m: &str| Error::InvalidInput(format!("multiplication table: {m}"));
        if n == 0
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(bad("not square over 0..n"));
        }
        if (0..n).any(|x| table[0][x] != x || table[x][0] != x) {
            return Err(bad("0 is not the identity"));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == 0)
                    .ok_or_else(|| bad("missing inverse"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroup { table, inverses })
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(vec![vec![0]]).expect("valid")
    }

    /// `{1, g_v, g_h, g_v g_h}` as `0, 1, 2, 3` with XOR multiplication.
    pub fn klein_four() -> Self {
        FiniteGroup::from_table((0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect())
            .expect("valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x]
    }
}

/// A homomorphism from a presented group to a finite group, by generator images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteQuotientMap {
    pub group: FiniteGroup,
    pub images: Vec<usize>,
}

impl FiniteQuotientMap {
    pub fn new(group: FiniteGroup, images: Vec<usize>) -> Self {
        FiniteQuotientMap { group, images }
    }

    pub fn image(&self, w: &Word) -> usize {
        w.0.iter().fold(0, |acc, &l| {
            let g = self.images[letter_gen(l)];
            self.group
                .mul(acc, if l < 0 { self.group.inv(g) } else { g })
        })
    }

    /// Checks that every relator maps to the identity.
    pub fn check(&self, p: &Presentation) -> Result<(), Error> {
        if self.images.len() != p.num_generators()
            || self.images.iter().any(|&g| g >= self.group.order())
        {
            return Err(Error::InvalidQuotient(
                "generator images do not match".into(),
            ));
        }
        for r in &p.relators {
            if self.image(r) != 0 {
                return Err(Error::InvalidQuotient(format!(
                    "relator {} is not in the kernel",
                    p.format_word(r)
                )));
            }
        }
        Ok(())
    }
}

/// Kernel presentation together with its coset data.
#[derive(Clone, Debug)]
pub struct SchreierResult {
    pub presentation: Presentation,
    pub index: usize,
    /// Schreier generators before pruning, `index * (gens - 1) + 1`.
    pub schreier_generators: usize,
    /// Transversal word for each coset, in group-element order.
    pub transversal: BTreeMap<usize, Word>,
}

/// Reidemeister-Schreier for the kernel of `q`.
pub fn reidemeister_schreier(
    p: &Presentation,
    q: &FiniteQuotientMap,
) -> Result<SchreierResult, Error> {
    q.check(p)?;
    let n = p.num_generators();
    // breadth-first Schreier transversal over the image
    let mut transversal: BTreeMap<usize, Word> = BTreeMap::from([(0, Word::empty())]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..n {
            for inv in [false, true] {
                let img = q.images[g];
                let d = q.group.mul(c, if inv { q.group.inv(img) } else { img });
                if !transversal.contains_key(&d) {
                    let mut w = transversal[&c].clone();
                    w.0.push(letter(g, inv));
                    transversal.insert(d, w);
                    queue.push_back(d);
                }
            }
        }
    }
    let cosets: Vec<usize> = transversal.keys().copied().collect();
    let index = cosets.len();
    let pos = |c: usize| cosets.binary_search(&c).expect("coset in transversal");
    // Schreier generator (c, g) = t_c g t_{cg}^-1; trivial when t_c g is the transversal word of cg
    let mut sid = vec![None; index * n];
    let mut names = Vec::new();
    for (k, &c) in cosets.iter().enumerate() {
        for g in 0..n {
            let d = q.group.mul(c, q.images[g]);
            let mut tg = transversal[&c].clone();
            tg.0.push(letter(g, false));
            if tg.free_reduce() != transversal[&d] {
                sid[k * n + g] = Some(names.len());
                names.push(format!("{}_{}", p.generators[g], k));
            }
        }
    }
    let schreier_generators = index * n;
    let rewrite = |start: usize, w: &Word| -> Word {
        let mut c = start;
        let mut out = Vec::new();
        for &l in &w.0 {
            let g = letter_gen(l);
            if l > 0 {
                if let Some(s) = sid[pos(c) * n + g] {
                    out.push(letter(s, false));
                }
                c = q.group.mul(c, q.images[g]);
            } else {
                let prev = q.group.mul(c, q.group.inv(q.images[g]));
                if let Some(s) = sid[pos(prev) * n + g] {
                    out.push(letter(s, true));
                }
                c = prev;
            }
        }
        Word(out).free_reduce()
    };
    let mut relators = Vec::new();
    for &c in &cosets {
        for r in &p.relators {
            let w = rewrite(c, r).cyclic_reduce();
            if !w.is_empty() && !relators.contains(&w) {
                relators.push(w);
            }
        }
    }
    let presentation = tietze_prune(Presentation::new(names, relators)?);
    Ok(SchreierResult {
        presentation,
        index,
        schreier_generators: schreier_generators - (index - 1),
        transversal,
    })
}

/// Removes generators killed by relators of length one, repeatedly.
pub fn tietze_prune(mut p: Presentation) -> Presentation {
    while let Some(g) = p
        .relators
        .iter()
        .find(|r| r.len() == 1)
        .map(|r| letter_gen(r.0[0]))
    {
        let remap = |l: i32| -> Word {
            let h = letter_gen(l);
            match h.cmp(&g) {
                std::cmp::Ordering::Equal => Word::empty(),
                std::cmp::Ordering::Less => Word(vec![l]),
                std::cmp::Ordering::Greater => Word(vec![letter(h - 1, l < 0)]),
            }
        };
        let mut rels = Vec::new();
        for r in &p.relators {
            let w = r.map_letters(remap).cyclic_reduce();
            if !w.is_empty() && !rels.contains(&w) {
                rels.push(w);
            }
        }
        p.generators.remove(g);
        p.relators = rels;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        let v = FiniteGroup::klein_four();
        assert_eq!(v.order(), 4);
        assert!((0..4).all(|x| v.inv(x) == x));
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn trivial_quotient_keeps_presentation() {
        let p = Presentation::parse("< a, b | a^3, abab^-1 >").unwrap();
        let q = FiniteQuotientMap::new(FiniteGroup::trivial(), vec![0, 0]);
        let k = reidemeister_schreier(&p, &q).unwrap();
        assert_eq!(k.index, 1);
        assert_eq!(k.presentation.generators, ["a_0", "b_0"]);
        let expect: Vec<Word> = p.relators.iter().map(|r| r.cyclic_reduce()).collect();
        assert_eq!(k.presentation.relators, expect);
    }

    #[test]
    fn index_two_in_free_group() {
        // kernel of F(a) -> Z/2 is free on a^2
        let p = Presentation::parse("< a | >").unwrap();
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let k = reidemeister_schreier(&p, &FiniteQuotientMap::new(z2, vec![1])).unwrap();
        assert_eq!(k.index, 2);
        assert_eq!(k.schreier_generators, 1);
        assert_eq!(k.presentation.num_generators(), 1);
    }

    #[test]
    fn rejects_non_kernel_relators() {
        let p = Presentation::parse("< a | a >").unwrap();
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(
            reidemeister_schreier(&p, &FiniteQuotientMap::new(z2, vec![1])),
            Err(Error::InvalidQuotient(_))
        ));
    }

    #[test]
    fn prune_length_one() {
        let p = Presentation::parse("< x, y, z | y, x z y x^-1, z^2 >").unwrap();
        let q = tietze_prune(p);
        assert_eq!(q.to_text(), "< x | >");
    }
}
