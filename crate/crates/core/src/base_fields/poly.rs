use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Rem};

/// Polynomial over F2, bit `k` of the packed words is the coefficient of `x^k`.
///
/// The word vector never has trailing zero words, so derived equality and
/// hashing agree with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPoly {
    words: Vec<u64>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        BinaryPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BinaryPoly { words: vec![1] }
    }

    /// The variable `x`.
    pub fn x() -> Self {
        BinaryPoly { words: vec![2] }
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1u64 << (k % 64);
        BinaryPoly { words }
    }

    /// Low 64 coefficients packed into a single word.
    pub fn from_bits(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        BinaryPoly { words }
    }

    /// Sum of `x^e` over the given exponents (repeated exponents cancel).
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = BinaryPoly::zero();
        for &e in exps {
            p.flip_coeff(e);
        }
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        match self.words.get(k / 64) {
            Some(w) => (w >> (k % 64)) & 1 == 1,
            None => false,
        }
    }

    pub fn flip_coeff(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1u64 << (k % 64);
        self.trim();
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Largest `k` with `x^k` dividing `self`; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Multiply by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs != 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        Self::from_words(words)
    }

    /// Floor division by `x^k` (drops the low `k` coefficients).
    pub fn shr(&self, k: usize) -> Self {
        let (ws, bs) = (k / 64, k % 64);
        if ws >= self.words.len() {
            return BinaryPoly::zero();
        }
        let src = &self.words[ws..];
        let mut words = vec![0u64; src.len()];
        for i in 0..src.len() {
            words[i] = src[i] >> bs;
            if bs != 0 && i + 1 < src.len() {
                words[i] |= src[i + 1] << (64 - bs);
            }
        }
        Self::from_words(words)
    }

    /// Keep only coefficients of exponent `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        let mut words: Vec<u64> = self.words.iter().take(k.div_ceil(64)).copied().collect();
        if !k.is_multiple_of(64) {
            if let Some(w) = words.get_mut(k / 64) {
                *w &= (1u64 << (k % 64)) - 1;
            }
        }
        Self::from_words(words)
    }

    pub fn div_rem(&self, d: &BinaryPoly) -> (BinaryPoly, BinaryPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        let mut q = BinaryPoly::zero();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let s = rd - dd;
            q.flip_coeff(s);
            r += &d.shl(s);
        }
        (q, r)
    }

    pub fn divides(&self, other: &BinaryPoly) -> bool {
        (other % self).is_zero()
    }

    pub fn gcd(&self, other: &BinaryPoly) -> BinaryPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g = gcd(self, other)`.
    pub fn ext_gcd(&self, other: &BinaryPoly) -> (BinaryPoly, BinaryPoly, BinaryPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (BinaryPoly::one(), BinaryPoly::zero());
        let (mut t0, mut t1) = (BinaryPoly::zero(), BinaryPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 + &(&q * &s1);
            let t = &t0 + &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &BinaryPoly) -> Option<BinaryPoly> {
        let (g, s, _) = (self % m).ext_gcd(m);
        if g.is_one() {
            Some(&s % m)
        } else {
            None
        }
    }

    pub fn mul_mod(&self, other: &BinaryPoly, m: &BinaryPoly) -> BinaryPoly {
        &(self * other) % m
    }

    pub fn square(&self) -> BinaryPoly {
        let mut out = BinaryPoly::zero();
        for e in self.exponents() {
            out.flip_coeff(2 * e);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> BinaryPoly {
        let mut base = self.clone();
        let mut acc = BinaryPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Formal derivative; in characteristic 2 only odd exponents survive.
    pub fn derivative(&self) -> BinaryPoly {
        let exps: Vec<usize> = self
            .exponents()
            .into_iter()
            .filter(|e| e % 2 == 1)
            .map(|e| e - 1)
            .collect();
        BinaryPoly::from_exponents(&exps)
    }

    pub fn eval_bit(&self, x: bool) -> bool {
        if x {
            self.weight() % 2 == 1
        } else {
            self.coeff(0)
        }
    }

    /// Irreducibility by trial division (adequate for the small degrees used here).
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if d == 1 {
            return true;
        }
        let mut cand = 2u64;
        while (64 - cand.leading_zeros() as usize - 1) * 2 <= d {
            if (self % &BinaryPoly::from_bits(cand)).is_zero() {
                return false;
            }
            cand += 1;
        }
        true
    }

    /// Multiplicity of `m` as a factor of `self` together with the cofactor.
    pub fn split_power(&self, m: &BinaryPoly) -> (u64, BinaryPoly) {
        assert!(!self.is_zero(), "multiplicity in the zero polynomial");
        let mut k = 0;
        let mut p = self.clone();
        loop {
            let (q, r) = p.div_rem(m);
            if !r.is_zero() {
                return (k, p);
            }
            p = q;
            k += 1;
        }
    }

    /// Renders with the given variable, ascending exponents, e.g. `1+z+z^3`.
    pub fn display_with(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            })
            .collect();
        terms.join("+")
    }

    /// Bits as a hex string, most significant first; `"0"` for zero.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = format!("{:x}", self.words.last().unwrap());
        for w in self.words.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Option<BinaryPoly> {
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_hexdigit()) {
            return None;
        }
        let digits: Vec<u8> = s.bytes().rev().collect();
        let mut words = Vec::new();
        for chunk in digits.chunks(16) {
            let hex: String = chunk.iter().rev().map(|&b| b as char).collect();
            words.push(u64::from_str_radix(&hex, 16).ok()?);
        }
        Some(BinaryPoly::from_words(words))
    }
}

impl Ord for BinaryPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BinaryPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('x'))
    }
}

impl fmt::Debug for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPoly({})", self.display_with('x'))
    }
}

impl AddAssign<&BinaryPoly> for BinaryPoly {
    fn add_assign(&mut self, rhs: &BinaryPoly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
        self.trim();
    }
}

impl Add<&BinaryPoly> for &BinaryPoly {
    type Output = BinaryPoly;
    fn add(self, rhs: &BinaryPoly) -> BinaryPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BinaryPoly {
    type Output = BinaryPoly;
    fn add(mut self, rhs: BinaryPoly) -> BinaryPoly {
        self += &rhs;
        self
    }
}

fn clmul(a: u64, b: u64) -> (u64, u64) {
    let (mut lo, mut hi) = (0u64, 0u64);
    let mut a = a;
    while a != 0 {
        let i = a.trailing_zeros();
        lo ^= b << i;
        if i != 0 {
            hi ^= b >> (64 - i);
        }
        a &= a - 1;
    }
    (lo, hi)
}

impl Mul<&BinaryPoly> for &BinaryPoly {
    type Output = BinaryPoly;
    fn mul(self, rhs: &BinaryPoly) -> BinaryPoly {
        if self.is_zero() || rhs.is_zero() {
            return BinaryPoly::zero();
        }
        let mut words = vec![0u64; self.words.len() + rhs.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.words.iter().enumerate() {
                let (lo, hi) = clmul(a, b);
                words[i + j] ^= lo;
                words[i + j + 1] ^= hi;
            }
        }
        BinaryPoly::from_words(words)
    }
}

impl Mul for BinaryPoly {
    type Output = BinaryPoly;
    fn mul(self, rhs: BinaryPoly) -> BinaryPoly {
        &self * &rhs
    }
}

impl Rem<&BinaryPoly> for &BinaryPoly {
    type Output = BinaryPoly;
    fn rem(self, rhs: &BinaryPoly) -> BinaryPoly {
        self.div_rem(rhs).1
    }
}
