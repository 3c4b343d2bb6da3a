//! Graded bases, multi-indices, and Koszul sign bookkeeping.
//!
//! Everything downstream indexes cochains by words over a fixed ordered
//! basis of a ℤ₂-graded space. The canonical word order is lexicographic in
//! the basis order; it fixes every matrix layout in the crate.

use std::fmt;
use std::ops::Add;

use crate::Error;

/// Parity of a homogeneous element. Addition is mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Sign `(-1)^{|prefix||map|}` picked up when a map moves past a prefix.
pub fn koszul_sign(prefix: Parity, map: Parity) -> i64 {
    if prefix.is_odd() && map.is_odd() {
        -1
    } else {
        1
    }
}

/// An ordered basis of a finite-dimensional ℤ₂-graded vector space.
///
/// The order is total and fixed; it is the canonical order used for matrix
/// indexing everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    labels: Vec<char>,
    parities: Vec<Parity>,
}

impl GradedBasis {
    pub fn new(items: &[(char, Parity)]) -> Result<Self, Error> {
        let mut labels = Vec::with_capacity(items.len());
        let mut parities = Vec::with_capacity(items.len());
        for &(label, parity) in items {
            if labels.contains(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            labels.push(label);
            parities.push(parity);
        }
        Ok(GradedBasis { labels, parities })
    }

    /// The 1|1 basis `⟨e, f⟩` with `e` even and `f` odd.
    pub fn one_one() -> Self {
        GradedBasis::new(&[('e', Parity::Even), ('f', Parity::Odd)]).expect("labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, idx: usize) -> char {
        self.labels[idx]
    }

    pub fn parity(&self, idx: usize) -> Result<Parity, Error> {
        self.parities
            .get(idx)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(format!("#{idx}")))
    }

    pub fn index_of(&self, label: char) -> Result<usize, Error> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

/// A word of basis labels, indexing a tensor factor `w_I`. May be empty.
///
/// Entries are stored as positions into the ambient [`GradedBasis`]; the
/// derived `Ord` is therefore lexicographic in the basis order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn from_entries(entries: Vec<u8>) -> Self {
        MultiIndex(entries)
    }

    pub fn from_labels(basis: &GradedBasis, labels: &str) -> Result<Self, Error> {
        let mut entries = Vec::with_capacity(labels.len());
        for ch in labels.chars() {
            entries.push(basis.index_of(ch)? as u8);
        }
        Ok(MultiIndex(entries))
    }

    /// ℓ(I), the word length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// Concatenation `KL`.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut entries = self.0.clone();
        entries.extend_from_slice(&other.0);
        MultiIndex(entries)
    }

    /// Mod-2 sum of entry parities; the empty word is even.
    pub fn parity(&self, basis: &GradedBasis) -> Result<Parity, Error> {
        let mut p = Parity::Even;
        for &idx in &self.0 {
            p = p + basis.parity(idx as usize)?;
        }
        Ok(p)
    }

    /// Replaces the entry at `pos` by the whole word `inner`. With an empty
    /// `inner` this deletes the entry.
    pub fn splice(&self, pos: usize, inner: &MultiIndex) -> MultiIndex {
        let mut entries = Vec::with_capacity(self.0.len() + inner.0.len() - 1);
        entries.extend_from_slice(&self.0[..pos]);
        entries.extend_from_slice(&inner.0);
        entries.extend_from_slice(&self.0[pos + 1..]);
        MultiIndex(entries)
    }

    /// Rank of the word in the lexicographic enumeration of its length.
    pub fn lex_rank(&self, basis: &GradedBasis) -> usize {
        let m = basis.len();
        self.0.iter().fold(0usize, |acc, &d| acc * m + d as usize)
    }

    pub fn to_text(&self, basis: &GradedBasis) -> String {
        self.0.iter().map(|&i| basis.label(i as usize)).collect()
    }
}

/// All `|B|^n` words of length `n`, in lexicographic order.
pub fn enumerate_indices(basis: &GradedBasis, n: usize) -> Vec<MultiIndex> {
    let m = basis.len();
    if n == 0 {
        return vec![MultiIndex::empty()];
    }
    let total = m.checked_pow(n as u32).expect("word count overflows usize");
    let mut out = Vec::with_capacity(total);
    let mut word = vec![0u8; n];
    loop {
        out.push(MultiIndex(word.clone()));
        // odometer increment, most significant digit first
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (word[pos] as usize) + 1 < m {
                word[pos] += 1;
                for digit in &mut word[pos + 1..] {
                    *digit = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(basis: &GradedBasis, s: &str) -> MultiIndex {
        MultiIndex::from_labels(basis, s).unwrap()
    }

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Even + Parity::Even, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Even + Parity::Odd, Parity::Odd);
    }

    #[test]
    fn koszul_signs() {
        assert_eq!(koszul_sign(Parity::Even, Parity::Odd), 1);
        assert_eq!(koszul_sign(Parity::Odd, Parity::Odd), -1);
        assert_eq!(koszul_sign(Parity::Odd, Parity::Even), 1);
    }

    #[test]
    fn index_parities() {
        let b = GradedBasis::one_one();
        assert_eq!(idx(&b, "").parity(&b).unwrap(), Parity::Even);
        assert_eq!(idx(&b, "ff").parity(&b).unwrap(), Parity::Even);
        assert_eq!(idx(&b, "efe").parity(&b).unwrap(), Parity::Odd);
    }

    #[test]
    fn unknown_label_rejected() {
        let b = GradedBasis::one_one();
        assert_eq!(
            MultiIndex::from_labels(&b, "eg"),
            Err(Error::UnknownLabel("g".into()))
        );
        let foreign = MultiIndex::from_entries(vec![7]);
        assert!(foreign.parity(&b).is_err());
    }

    #[test]
    fn duplicate_label_rejected() {
        assert_eq!(
            GradedBasis::new(&[('e', Parity::Even), ('e', Parity::Odd)]),
            Err(Error::DuplicateLabel('e'))
        );
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let b = GradedBasis::one_one();
        assert_eq!(enumerate_indices(&b, 0), vec![MultiIndex::empty()]);
        assert_eq!(enumerate_indices(&b, 1), vec![idx(&b, "e"), idx(&b, "f")]);
        assert_eq!(
            enumerate_indices(&b, 2),
            vec![idx(&b, "ee"), idx(&b, "ef"), idx(&b, "fe"), idx(&b, "ff")]
        );
        for n in 0..=6 {
            let words = enumerate_indices(&b, n);
            assert_eq!(words.len(), 2usize.pow(n as u32));
            assert!(words.windows(2).all(|w| w[0] < w[1]));
            for (rank, w) in words.iter().enumerate() {
                assert_eq!(w.lex_rank(&b), rank);
            }
        }
    }

    #[test]
    fn splice_replaces_and_deletes() {
        let b = GradedBasis::one_one();
        let base = idx(&b, "efe");
        assert_eq!(base.splice(1, &idx(&b, "ff")), idx(&b, "effe"));
        assert_eq!(base.splice(0, &MultiIndex::empty()), idx(&b, "fe"));
    }

    #[test]
    fn concat_adds_lengths_and_parities() {
        let b = GradedBasis::one_one();
        let k = idx(&b, "ef");
        let l = idx(&b, "ffe");
        let kl = k.concat(&l);
        assert_eq!(kl.len(), k.len() + l.len());
        assert_eq!(
            kl.parity(&b).unwrap(),
            k.parity(&b).unwrap() + l.parity(&b).unwrap()
        );
    }
}
