//! Signed and plain permutations.
//!
//! Both kinds use one-line notation with 1-based symbols. A signed
//! permutation of length `n` carries entries from `{±1, …, ±n}` whose
//! absolute values form a permutation of `1..=n`.
//!
//! Ranks are dense integers used as vertex indices:
//!
//! * a plain permutation is ranked by its Lehmer code read in the factorial
//!   number system, so ranks `0..n!` follow lexicographic order;
//! * a signed permutation is ranked as `lehmer(|x|) * 2^n + mask`, where bit
//!   `i` of `mask` is set when the entry at 0-based position `i` is negative.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest length accepted by the ranking routines (`20!` fits in `u64`,
/// `2^n n!` has to fit in `usize` as well).
pub const MAX_LEN: usize = 12;

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn lehmer_rank(abs: impl Iterator<Item = usize> + Clone, n: usize) -> usize {
    let values: Vec<usize> = abs.collect();
    let mut rank = 0;
    for i in 0..n {
        let smaller_after = values[i + 1..].iter().filter(|&&v| v < values[i]).count();
        rank = rank * (n - i) + smaller_after;
    }
    rank
}

fn lehmer_unrank(n: usize, mut rank: usize) -> Vec<u8> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let radix = n - i;
        digits[i] = rank % radix;
        rank /= radix;
    }
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(Error::parse(s, "empty permutation"));
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|e| Error::parse(s, format!("bad entry {tok:?}: {e}")))
        })
        .collect()
}

/// A vertex of the burnt pancake graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignedPermutation {
    entries: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        let n = entries.len();
        if n < 2 {
            return Err(Error::domain(format!(
                "signed permutation needs at least 2 entries, got {n}"
            )));
        }
        if n > MAX_LEN {
            return Err(Error::domain(format!("length {n} exceeds {MAX_LEN}")));
        }
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            let a = e.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::domain(format!(
                    "{entries:?} is not a signed permutation of [{n}]"
                )));
            }
            seen[a] = true;
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n as i8).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn first(&self) -> i8 {
        self.entries[0]
    }

    pub fn last(&self) -> i8 {
        self.entries[self.entries.len() - 1]
    }

    /// The `i`-th signed prefix reversal: reverse the first `i` entries and
    /// negate each of them.
    pub fn prefix_reversal(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(Error::domain(format!(
                "prefix length {i} outside 1..={}",
                self.len()
            )));
        }
        Ok(self.prefix_reversal_unchecked(i))
    }

    pub(crate) fn prefix_reversal_unchecked(&self, i: usize) -> Self {
        let mut entries = self.entries.clone();
        entries[..i].reverse();
        for e in &mut entries[..i] {
            *e = -*e;
        }
        Self { entries }
    }

    pub fn rank(&self) -> usize {
        let n = self.len();
        let pattern = lehmer_rank(self.entries.iter().map(|e| e.unsigned_abs() as usize), n);
        let mask = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e < 0)
            .fold(0usize, |m, (i, _)| m | (1 << i));
        (pattern << n) | mask
    }

    pub fn order(n: usize) -> usize {
        factorial(n) << n
    }

    pub fn unrank(n: usize, rank: usize) -> Result<Self> {
        if !(2..=MAX_LEN).contains(&n) {
            return Err(Error::domain(format!("length {n} outside 2..={MAX_LEN}")));
        }
        if rank >= Self::order(n) {
            return Err(Error::domain(format!(
                "rank {rank} outside 0..{}",
                Self::order(n)
            )));
        }
        Ok(Self::unrank_unchecked(n, rank))
    }

    pub(crate) fn unrank_unchecked(n: usize, rank: usize) -> Self {
        let mask = rank & ((1 << n) - 1);
        let abs = lehmer_unrank(n, rank >> n);
        let entries = abs
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                if mask & (1 << i) != 0 {
                    -(a as i8)
                } else {
                    a as i8
                }
            })
            .collect();
        Self { entries }
    }
}

impl TryFrom<Vec<i8>> for SignedPermutation {
    type Error = Error;

    fn try_from(entries: Vec<i8>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<SignedPermutation> for Vec<i8> {
    fn from(p: SignedPermutation) -> Self {
        p.entries
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = parse_list(s)?;
        let entries = raw
            .into_iter()
            .map(|v| i8::try_from(v).map_err(|_| Error::parse(s, format!("entry {v} too large"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection of `1..=n` in one-line form: `image[i-1] = p(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn new(image: Vec<u8>) -> Result<Self> {
        let n = image.len();
        if n == 0 || n > MAX_LEN {
            return Err(Error::domain(format!(
                "permutation length {n} outside 1..={MAX_LEN}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &image {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::domain(format!(
                    "{image:?} is not a permutation of [{n}]"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n as u8).collect())
    }

    /// The transposition `(i j)` on `1..=n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_cycles(n, &[&[i, j]])
    }

    /// Builds a permutation from disjoint cycles given as 1-based symbols.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<u8> = (1..=n as u8).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n || touched[a] {
                    return Err(Error::domain(format!(
                        "cycle symbol {a} repeated or outside 1..={n}"
                    )));
                }
                touched[a] = true;
                let b = cycle[(k + 1) % cycle.len()];
                image[a - 1] = b as u8;
            }
        }
        Self::new(image)
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"` or `"(123)"`. Symbols
    /// may be separated by spaces or commas; a cycle written without any
    /// separator is read one digit per symbol. `"()"` is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(s, "expected '('"))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::parse(s, "unbalanced parenthesis"))?;
            let body = open[..close].trim();
            let symbols: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|e| Error::parse(s, e.to_string()))
                    })
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::parse(s, format!("bad symbol {c:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            if !symbols.is_empty() {
                cycles.push(symbols);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }

    /// `p(i)` for a 1-based symbol `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0u8; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize - 1] = (i + 1) as u8;
        }
        Self { image }
    }

    pub fn parity(&self) -> Parity {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image[i] as usize - 1;
            }
        }
        if (n - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn rank(&self) -> usize {
        lehmer_rank(self.image.iter().map(|&v| v as usize), self.len())
    }

    pub fn unrank(n: usize, rank: usize) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::domain(format!("length {n} outside 1..={MAX_LEN}")));
        }
        if rank >= factorial(n) {
            return Err(Error::domain(format!(
                "rank {rank} outside 0..{}",
                factorial(n)
            )));
        }
        Ok(Self {
            image: lehmer_unrank(n, rank),
        })
    }

    /// Cycle notation with fixed points omitted, e.g. `(1 2)(3 4)`.
    pub fn cycle_string(&self) -> String {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut out = String::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&i.to_string());
                i = self.apply(i);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// The composition `sigma tau`, which maps `i` to `sigma(tau(i))`.
pub fn compose(sigma: &Permutation, tau: &Permutation) -> Result<Permutation> {
    if sigma.len() != tau.len() {
        return Err(Error::domain(format!(
            "cannot compose permutations of lengths {} and {}",
            sigma.len(),
            tau.len()
        )));
    }
    Ok(compose_unchecked(sigma, tau))
}

pub(crate) fn compose_unchecked(sigma: &Permutation, tau: &Permutation) -> Permutation {
    Permutation {
        image: tau
            .image
            .iter()
            .map(|&t| sigma.image[t as usize - 1])
            .collect(),
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<u8>) -> Result<Self> {
        Self::new(image)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Self {
        p.image
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = parse_list(s)?;
        let image = raw
            .into_iter()
            .map(|v| u8::try_from(v).map_err(|_| Error::parse(s, format!("bad entry {v}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(image)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// An inverse-closed generating set without the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    elements: Vec<Permutation>,
}

impl GeneratorSet {
    pub fn new(mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let Some(n) = elements.first().map(Permutation::len) else {
            return Err(Error::domain("empty generator set"));
        };
        for g in &elements {
            if g.len() != n {
                return Err(Error::domain("generators of mixed length"));
            }
            if g.is_identity() {
                return Err(Error::domain("generator set contains the identity"));
            }
            if elements.binary_search(&g.inverse()).is_err() {
                return Err(Error::domain(format!(
                    "generator set not closed under inverse: missing inverse of {}",
                    g.cycle_string()
                )));
            }
        }
        Ok(Self { elements })
    }

    pub fn degree(&self) -> usize {
        self.elements[0].len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

fn base_generators(n: usize) -> Result<Vec<Permutation>> {
    if n < 3 {
        return Err(Error::domain(format!(
            "generator sets need n >= 3, got {n}"
        )));
    }
    let mut gens = vec![
        Permutation::from_cycles(n, &[&[1, 2, 3]])?,
        Permutation::from_cycles(n, &[&[1, 3, 2]])?,
    ];
    for i in 4..=n {
        gens.push(Permutation::from_cycles(n, &[&[1, 2], &[3, i]])?);
    }
    Ok(gens)
}

/// `{(123), (132)} ∪ {(12)(3i) : 4 ≤ i ≤ n}`, generating the alternating group.
pub fn an_generators(n: usize) -> Result<GeneratorSet> {
    GeneratorSet::new(base_generators(n)?)
}

/// The alternating-network generators together with `(12)`.
pub fn ea_generators(n: usize) -> Result<GeneratorSet> {
    let mut gens = base_generators(n)?;
    gens.push(Permutation::transposition(n, 1, 2)?);
    GeneratorSet::new(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn prefix_reversal_examples() {
        assert_eq!(sp("1,2,3").prefix_reversal(1).unwrap(), sp("-1,2,3"));
        assert_eq!(sp("1,-2,3").prefix_reversal(2).unwrap(), sp("2,-1,3"));
        assert_eq!(sp("1,2,3").prefix_reversal(3).unwrap(), sp("-3,-2,-1"));
        assert!(sp("1,2,3").prefix_reversal(0).is_err());
        assert!(sp("1,2,3").prefix_reversal(4).is_err());
    }

    #[test]
    fn prefix_reversal_is_an_involution_up_to_five() {
        for n in 2..=5 {
            for r in 0..SignedPermutation::order(n) {
                let x = SignedPermutation::unrank(n, r).unwrap();
                for i in 1..=n {
                    let y = x.prefix_reversal(i).unwrap();
                    assert_eq!(y.prefix_reversal(i).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn rejects_malformed_signed_permutations() {
        assert!("1".parse::<SignedPermutation>().is_err());
        assert!("1,1".parse::<SignedPermutation>().is_err());
        assert!("1,-1".parse::<SignedPermutation>().is_err());
        assert!("0,1".parse::<SignedPermutation>().is_err());
        assert!("1,3".parse::<SignedPermutation>().is_err());
        assert!("1,x".parse::<SignedPermutation>().is_err());
    }

    #[test]
    fn text_form_round_trips() {
        let x = sp("-3, 1,2");
        assert_eq!(x.to_string(), "-3,1,2");
        assert_eq!(sp(&x.to_string()), x);
    }

    #[test]
    fn composition_examples() {
        let t12 = cyc(3, "(1 2)");
        let id = Permutation::identity(3).unwrap();
        assert_eq!(compose(&t12, &t12).unwrap(), id);
        assert_eq!(compose(&id, &t12).unwrap(), t12);
        // i -> (123)((12)(i)): 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
        let r = compose(&cyc(3, "(123)"), &t12).unwrap();
        assert_eq!(r.image(), &[3, 2, 1]);
        assert_eq!(r, cyc(3, "(1 3)"));
        assert!(compose(&t12, &Permutation::identity(4).unwrap()).is_err());
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(4).unwrap().parity(), Parity::Even);
        assert_eq!(cyc(4, "(1 2)").parity(), Parity::Odd);
        assert_eq!(cyc(4, "(1 2)(3 4)").parity(), Parity::Even);
        assert_eq!(cyc(4, "(1 2 3)").parity(), Parity::Even);
    }

    #[test]
    fn parity_is_multiplicative_up_to_four() {
        for n in 1..=4 {
            for a in 0..factorial(n) {
                let s = Permutation::unrank(n, a).unwrap();
                for b in 0..factorial(n) {
                    let t = Permutation::unrank(n, b).unwrap();
                    let st = compose(&s, &t).unwrap();
                    assert_eq!(st.parity(), s.parity().combine(t.parity()));
                }
            }
        }
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(cyc(4, "(1 2)(3 4)").image(), &[2, 1, 4, 3]);
        assert_eq!(cyc(3, "(123)").image(), &[2, 3, 1]);
        assert_eq!(cyc(3, "(1,3,2)").image(), &[3, 1, 2]);
        assert!(cyc(3, "()").is_identity());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert_eq!(cyc(5, "(1 2)(3 5)").cycle_string(), "(1 2)(3 5)");
    }

    #[test]
    fn generator_sets() {
        let an3 = an_generators(3).unwrap();
        assert_eq!(an3.len(), 2);
        assert!(an3.contains(&cyc(3, "(123)")));
        assert!(an3.contains(&cyc(3, "(132)")));

        let ea3 = ea_generators(3).unwrap();
        assert_eq!(ea3.len(), 3);
        assert!(ea3.contains(&cyc(3, "(12)")));

        assert_eq!(ea_generators(5).unwrap().len(), 5);
        assert!(an_generators(2).is_err());
        assert!(ea_generators(2).is_err());

        for n in 3..=7 {
            let an = an_generators(n).unwrap();
            let ea = ea_generators(n).unwrap();
            assert_eq!(an.len(), n - 1);
            assert_eq!(ea.len(), n);
            assert!(an.iter().all(|g| g.parity() == Parity::Even));
            let odd: Vec<_> = ea.iter().filter(|g| g.parity() == Parity::Odd).collect();
            assert_eq!(odd, vec![&Permutation::transposition(n, 1, 2).unwrap()]);
            assert!(an.iter().all(|g| ea.contains(g)));
        }
    }

    #[test]
    fn generator_set_requires_inverse_closure() {
        assert!(GeneratorSet::new(vec![cyc(3, "(123)")]).is_err());
        assert!(GeneratorSet::new(vec![Permutation::identity(3).unwrap()]).is_err());
    }

    #[test]
    fn signed_rank_is_a_bijection() {
        for n in 2..=4 {
            let order = SignedPermutation::order(n);
            let mut seen = std::collections::HashSet::new();
            for r in 0..order {
                let x = SignedPermutation::unrank(n, r).unwrap();
                assert_eq!(x.rank(), r);
                assert!(seen.insert(x.to_string()));
            }
        }
        assert_eq!(SignedPermutation::order(2), 8);
        assert_eq!(SignedPermutation::order(3), 48);
        assert!(SignedPermutation::unrank(2, 8).is_err());
        assert!(SignedPermutation::unrank(1, 0).is_err());
    }

    #[test]
    fn signed_rank_layout_is_stable() {
        assert_eq!(sp("1,2").rank(), 0);
        assert_eq!(sp("-1,2").rank(), 1);
        assert_eq!(sp("1,-2").rank(), 2);
        assert_eq!(sp("2,1").rank(), 4);
        assert_eq!(sp("-3,-2,-1").rank(), (5 << 3) | 0b111);
    }

    #[test]
    fn plain_rank_follows_lexicographic_order() {
        let all: Vec<_> = (0..24)
            .map(|r| Permutation::unrank(4, r).unwrap())
            .collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().enumerate().all(|(r, p)| p.rank() == r));
        assert!(Permutation::unrank(4, 24).is_err());
    }
}
