//! Bijections between squares and edges, the permutations `sigma` they induce
//! in `Sym(X) wr Sym({0,1})`, and the local permutation groups.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use itertools::Itertools;

use crate::error::Error;
use crate::square_complex::{Edge, Orientation, SquareComplexVH};

/// A permutation of `{0..n}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation: {images:?}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x] = i;
        }
        Perm(out)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.0[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle notation such as `(b1 c1 b1^-1)`; `()` for the identity.
    pub fn to_cycle_string(&self, labels: &[String]) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".into();
        }
        cs.iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter()
                        .map(|&x| labels[x].as_str())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            })
            .collect()
    }

    /// Parses cycle notation over the given labels. Cycle entries are separated
    /// by whitespace or `~`.
    pub fn parse_cycles(s: &str, labels: &[String]) -> Result<Perm, Error> {
        let err = |position: usize, message: &str| Error::Parse {
            input: s.to_string(),
            position,
            message: message.to_string(),
        };
        let mut p = Perm::identity(labels.len());
        let mut rest = s.trim();
        let mut pos = s.len() - s.trim_start().len();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err(pos, "expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| err(pos, "unclosed cycle"))?;
            let body = &rest[1..close];
            let mut cyc = Vec::new();
            for tok in body
                .split(|c: char| c.is_whitespace() || c == '~')
                .filter(|t| !t.is_empty())
            {
                let idx = labels
                    .iter()
                    .position(|l| l == tok)
                    .ok_or_else(|| err(pos, &format!("unknown label {tok}")))?;
                if cyc.contains(&idx) {
                    return Err(err(pos, "repeated label in cycle"));
                }
                cyc.push(idx);
            }
            let mut c = Perm::identity(labels.len());
            for k in 0..cyc.len() {
                c.0[cyc[k]] = cyc[(k + 1) % cyc.len()];
            }
            // cycles written left to right compose as functions, rightmost first
            p = p.compose(&c);
            let consumed = close + 1;
            let next = rest[consumed..].trim_start();
            pos += consumed + (rest[consumed..].len() - next.len());
            rest = next;
        }
        Ok(p)
    }
}

/// An element `((g_0, g_1), flip)` of `Sym(X) wr Sym({0,1})`, acting on
/// `X x {0,1}` by `(x, i) -> (g_{i'}(x), i')` with `i' = flip(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WreathPerm {
    pub components: [Perm; 2],
    pub flip: bool,
}

impl WreathPerm {
    pub fn identity(n: usize) -> Self {
        WreathPerm {
            components: [Perm::identity(n), Perm::identity(n)],
            flip: false,
        }
    }

    pub fn degree(&self) -> usize {
        self.components[0].len()
    }

    pub fn apply(&self, x: usize, i: usize) -> (usize, usize) {
        let j = if self.flip { 1 - i } else { i };
        (self.components[j].apply(x), j)
    }

    /// `self ∘ other` in the wreath product; `other` acts first.
    pub fn compose(&self, other: &WreathPerm) -> WreathPerm {
        // component at m is g_m ∘ h_{flip_g^-1(m)}
        let src = |m: usize| if self.flip { 1 - m } else { m };
        WreathPerm {
            components: [0, 1].map(|m| self.components[m].compose(&other.components[src(m)])),
            flip: self.flip ^ other.flip,
        }
    }

    pub fn inverse(&self) -> WreathPerm {
        let src = |m: usize| if self.flip { 1 - m } else { m };
        WreathPerm {
            components: [0, 1].map(|m| self.components[src(m)].inverse()),
            flip: self.flip,
        }
    }

    /// The permutation of `X x {0,1}` with `(x, i)` encoded as `i * |X| + x`.
    pub fn to_product_perm(&self) -> Perm {
        let n = self.degree();
        Perm(
            (0..2 * n)
                .map(|k| {
                    let (x, j) = self.apply(k % n, k / n);
                    j * n + x
                })
                .collect(),
        )
    }

    pub fn to_cycle_string(&self, labels: &[String]) -> String {
        format!(
            "(({},{}),{})",
            self.components[0].to_cycle_string(labels),
            self.components[1].to_cycle_string(labels),
            if self.flip { "flip" } else { "id" }
        )
    }
}

/// A finite group of wreath permutations with its full element set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermGroup {
    pub generators: Vec<WreathPerm>,
    pub elements: BTreeSet<WreathPerm>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &WreathPerm) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// Whether the group acts transitively on `X x {0,1}`.
    pub fn is_transitive(&self) -> bool {
        let Some(g) = self.elements.iter().next() else {
            return false;
        };
        let n = g.degree();
        let mut orbit = BTreeSet::new();
        for h in &self.elements {
            let (x, i) = h.apply(0, 0);
            orbit.insert(i * n + x);
        }
        orbit.len() == 2 * n
    }
}

/// Closure of the generators under composition. `degree` is used when the list is empty.
pub fn generate(generators: &[WreathPerm], degree: usize) -> PermGroup {
    let id = WreathPerm::identity(generators.first().map_or(degree, |g| g.degree()));
    let mut elements = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if elements.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    PermGroup {
        generators: generators.to_vec(),
        elements,
    }
}

/// `{((s, τ s τ), e)}` where `τ` is the given involution of `X`.
pub fn reference_group(tau: &Perm) -> PermGroup {
    let n = tau.len();
    let mut elements = BTreeSet::new();
    for images in (0..n).permutations(n) {
        let s = Perm(images);
        let twisted = tau.compose(&s).compose(tau);
        for flip in [false, true] {
            elements.insert(WreathPerm {
                components: [s.clone(), twisted.clone()],
                flip,
            });
        }
    }
    PermGroup {
        generators: elements.iter().cloned().collect(),
        elements,
    }
}

/// `t^j` on the squares of an edge: each square goes to the label of the
/// opposite-type edge at its corner `s_ij`. Returns `(square id, label)` pairs.
pub fn t_map(c: &SquareComplexVH, e: &Edge, j: u8) -> Vec<(usize, usize)> {
    c.squares_on_edge(e)
        .into_iter()
        .map(|s| {
            let (v, h) = match e.orientation {
                Orientation::Vertical => c.squares[s].corner(e.index, j),
                Orientation::Horizontal => c.squares[s].corner(j, e.index),
            };
            let label = match e.orientation {
                Orientation::Vertical => h,
                Orientation::Horizontal => v,
            };
            (s, label)
        })
        .collect()
}

fn codomain_size(c: &SquareComplexVH, e: &Edge) -> usize {
    match e.orientation {
        Orientation::Vertical => c.b_labels.len(),
        Orientation::Horizontal => c.a_labels.len(),
    }
}

/// `t^to ∘ (t^from)^-1` as a permutation of the opposite label set.
fn transfer(c: &SquareComplexVH, e: &Edge, from: u8, to: u8) -> Result<Perm, Error> {
    let src = t_map(c, e, from);
    let dst = t_map(c, e, to);
    let mut images = vec![usize::MAX; codomain_size(c, e)];
    for ((s1, x), (s2, y)) in src.iter().zip(dst.iter()) {
        debug_assert_eq!(s1, s2);
        if images[*x] != usize::MAX {
            return Err(Error::InvalidStructure(format!(
                "t-map of {e:?} is not injective"
            )));
        }
        images[*x] = *y;
    }
    Perm::from_images(images)
}

/// `sigma_e = ((t^0 ∘ (t^1)^-1, t^1 ∘ (t^0)^-1), flip)`.
pub fn sigma(c: &SquareComplexVH, e: &Edge) -> Result<WreathPerm, Error> {
    Ok(WreathPerm {
        components: [transfer(c, e, 1, 0)?, transfer(c, e, 0, 1)?],
        flip: true,
    })
}

/// `P^A_j`, generated by `sigma` of the horizontal edges `(b, j)`.
pub fn local_group_a(c: &SquareComplexVH, j: u8) -> Result<PermGroup, Error> {
    let gens = (0..c.b_labels.len())
        .map(|b| sigma(c, &Edge::horizontal(b, j)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(generate(&gens, c.a_labels.len()))
}

/// `P^B_i`, generated by `sigma` of the vertical edges `(a, i)`.
pub fn local_group_b(c: &SquareComplexVH, i: u8) -> Result<PermGroup, Error> {
    let gens = (0..c.a_labels.len())
        .map(|a| sigma(c, &Edge::vertical(a, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(generate(&gens, c.b_labels.len()))
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.len()).map(|i| i.to_string()).collect();
        f.write_str(&self.to_cycle_string(&labels))
    }
}
