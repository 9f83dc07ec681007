use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{letter, letter_gen, Word};
use crate::error::Error;

/// A finite presentation `< generators | relators >`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, Error> {
        let p = Presentation {
            generators,
            relators,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let names: BTreeSet<&String> = self.generators.iter().collect();
        if names.len() != self.generators.len() {
            return Err(Error::InvalidPresentation(
                "duplicate generator name".into(),
            ));
        }
        for (k, r) in self.relators.iter().enumerate() {
            if r.0.contains(&0) || r.max_gen().is_some_and(|g| g >= self.generators.len()) {
                return Err(Error::InvalidPresentation(format!(
                    "relator {k} out of range"
                )));
            }
        }
        Ok(())
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Words are written as generator names with `^n` exponents, e.g. `b1b2^-1c1^2`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let v = &w.0;
        let mut k = 0;
        while k < v.len() {
            let mut run = 1;
            while k + run < v.len() && v[k + run] == v[k] {
                run += 1;
            }
            out.push_str(&self.generators[letter_gen(v[k])]);
            let e = run as i64 * v[k].signum() as i64;
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
            k += run;
        }
        out
    }

    /// Parses a word over the generators. Accepts juxtaposition, `*`, parentheses,
    /// integer exponents, and a single `=` (read as `lhs * rhs^-1`).
    pub fn parse_word(&self, s: &str) -> Result<Word, Error> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parts = src.split('=');
        let lhs = parts.next().unwrap_or("");
        let rhs = parts.next();
        if parts.next().is_some() {
            return Err(parse_err(s, 0, "more than one '='"));
        }
        let mut p = WordParser {
            p: self,
            src: lhs.as_bytes(),
            pos: 0,
            input: s,
        };
        let l = p.sequence()?;
        if p.pos != p.src.len() {
            return Err(parse_err(s, p.pos, "unexpected character"));
        }
        match rhs {
            None => Ok(l.free_reduce()),
            Some(r) => {
                let mut q = WordParser {
                    p: self,
                    src: r.as_bytes(),
                    pos: 0,
                    input: s,
                };
                let rw = q.sequence()?;
                if q.pos != q.src.len() {
                    return Err(parse_err(s, lhs.len() + 1 + q.pos, "unexpected character"));
                }
                Ok(l.concat(&rw.inverse()))
            }
        }
    }

    /// Parses `< g1, g2 | w1, w2 >`.
    pub fn parse(s: &str) -> Result<Presentation, Error> {
        let t = s.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|x| x.strip_suffix('>'))
            .ok_or_else(|| parse_err(s, 0, "expected '< ... | ... >'"))?;
        let (g, r) = inner
            .split_once('|')
            .ok_or_else(|| parse_err(s, 0, "missing '|'"))?;
        let generators: Vec<String> = g
            .split(',')
            .map(|x| x.trim().to_string())
            .filter(|x| !x.is_empty())
            .collect();
        for name in &generators {
            let ok = name
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(parse_err(s, 0, &format!("invalid generator name {name:?}")));
            }
        }
        let mut p = Presentation::new(generators, Vec::new())?;
        for w in r.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let word = p.parse_word(w)?;
            p.relators.push(word);
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        if rels.is_empty() {
            format!("< {} | >", self.generators.join(", "))
        } else {
            format!("< {} | {} >", self.generators.join(", "), rels.join(", "))
        }
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.exponent_sums(self.generators.len()))
            .collect()
    }

    /// Generators with a relator `x^2`.
    pub fn involutions(&self) -> Vec<bool> {
        let mut out = vec![false; self.generators.len()];
        for r in &self.relators {
            let v = &r.0;
            if v.len() == 2 && v[0] == v[1] {
                out[letter_gen(v[0])] = true;
            }
        }
        out
    }

    /// Whether both presentations have the same relators up to cyclic rotation,
    /// inversion and the sign of involutory letters, after matching generators by name.
    pub fn same_relators(&self, other: &Presentation) -> bool {
        let names_a: BTreeSet<&String> = self.generators.iter().collect();
        let names_b: BTreeSet<&String> = other.generators.iter().collect();
        if names_a != names_b {
            return false;
        }
        let perm: Vec<usize> = other
            .generators
            .iter()
            .map(|g| self.generator_index(g).expect("same names"))
            .collect();
        let relabeled: Vec<Word> = other
            .relators
            .iter()
            .map(|r| {
                Word(
                    r.0.iter()
                        .map(|&l| letter(perm[letter_gen(l)], l < 0))
                        .collect(),
                )
            })
            .collect();
        let inv = self.involutions();
        let set = |rs: &[Word]| -> BTreeSet<Word> {
            rs.iter()
                .map(|r| r.canonical_relator(&inv))
                .filter(|w| !w.is_empty())
                .collect()
        };
        inv == Presentation {
            generators: self.generators.clone(),
            relators: relabeled.clone(),
        }
        .involutions()
            && set(&self.relators) == set(&relabeled)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_err(input: &str, position: usize, message: &str) -> Error {
    Error::Parse {
        input: input.to_string(),
        position,
        message: message.to_string(),
    }
}

struct WordParser<'a> {
    p: &'a Presentation,
    src: &'a [u8],
    pos: usize,
    input: &'a str,
}

impl WordParser<'_> {
    fn sequence(&mut self) -> Result<Word, Error> {
        let mut acc = Word::empty();
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b')' => break,
                b'*' => self.pos += 1,
                _ => {
                    let f = self.factor()?;
                    acc = acc.concat(&f);
                }
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Word, Error> {
        let base = if self.src[self.pos] == b'(' {
            self.pos += 1;
            let w = self.sequence()?;
            if self.src.get(self.pos) != Some(&b')') {
                return Err(parse_err(self.input, self.pos, "expected ')'"));
            }
            self.pos += 1;
            w
        } else if self.src[self.pos] == b'1'
            && !self.p.generators.iter().any(|g| g.starts_with('1'))
        {
            self.pos += 1;
            Word::empty()
        } else {
            let rest = &self.src[self.pos..];
            // longest generator name that prefixes the rest
            let g = (0..self.p.generators.len())
                .filter(|&g| rest.starts_with(self.p.generators[g].as_bytes()))
                .max_by_key(|&g| self.p.generators[g].len())
                .ok_or_else(|| parse_err(self.input, self.pos, "unknown generator"))?;
            self.pos += self.p.generators[g].len();
            Word::gen(g)
        };
        if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            let start = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            let e: i64 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| parse_err(self.input, start, "expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}
