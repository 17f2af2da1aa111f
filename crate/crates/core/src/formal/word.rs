//! Words over `{T0, T1}` and the correspondence between words ending in `T1` and indices.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    T0,
    T1,
}

/// A nonempty monomial in the free algebra. The empty product is the algebra unit,
/// which is not a word.
///
/// Words order by weight first, so each weight forms a contiguous range in ordered maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Invalid("the empty product is not a word".into()));
        }
        Ok(Word(letters))
    }

    /// Parses `"T0T1"`-style text or a bit string such as `"01"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s.replace("T", "");
        let letters = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(Letter::T0),
                '1' => Ok(Letter::T1),
                _ => Err(Error::Invalid(format!("bad word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn depth(&self) -> usize {
        self.0.iter().filter(|l| **l == Letter::T1).count()
    }

    /// Membership in `M' = A T1`.
    pub fn ends_in_t1(&self) -> bool {
        self.0.last() == Some(&Letter::T1)
    }

    pub fn first(&self) -> Letter {
        self.0[0]
    }

    /// The word with its first letter removed; `None` for a single letter.
    pub fn tail(&self) -> Option<Word> {
        (self.0.len() > 1).then(|| Word(self.0[1..].to_vec()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    /// `T0^r`.
    pub fn t0_power(r: usize) -> Option<Word> {
        (r > 0).then(|| Word(vec![Letter::T0; r]))
    }

    /// Splits `W = V T0^r` with `V` in `M'`; `None` when `W = T0^r`.
    pub fn split_trailing_t0(&self) -> Option<(Word, usize)> {
        let r = self.0.iter().rev().take_while(|l| **l == Letter::T0).count();
        (r < self.0.len()).then(|| (Word(self.0[..self.0.len() - r].to_vec()), r))
    }

    /// Every word of the given weight, in order.
    pub fn all_of_weight(w: usize) -> Vec<Word> {
        (0..1u64 << w)
            .map(|bits| {
                Word((0..w)
                    .map(|i| if bits >> (w - 1 - i) & 1 == 1 { Letter::T1 } else { Letter::T0 })
                    .collect())
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::T0 => "T0",
                Letter::T1 => "T1",
            })?;
        }
        Ok(())
    }
}

/// A tuple of positive integers `(k_1, ..., k_n)`.
pub type Index = Vec<u32>;

pub fn index_weight(k: &[u32]) -> u32 {
    k.iter().sum()
}

/// Number of entries greater than `1`.
pub fn index_height(k: &[u32]) -> usize {
    k.iter().filter(|&&x| x > 1).count()
}

/// An index whose last entry exceeds `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleIndex(Index);

impl AdmissibleIndex {
    pub fn new(k: Index) -> Result<Self> {
        if k.is_empty() || k.contains(&0) || *k.last().expect("nonempty") < 2 {
            return Err(Error::Invalid(format!("{k:?} is not admissible")));
        }
        let a = AdmissibleIndex(k);
        debug_assert!(a.weight() as usize >= a.depth() + a.height());
        Ok(a)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        index_weight(&self.0)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> usize {
        index_height(&self.0)
    }
}

/// Reads `W = (T0^(e_1) T1) ... (T0^(e_n) T1)` as the index `(e_n + 1, ..., e_1 + 1)`.
pub fn word_to_index(w: &Word) -> Result<Index> {
    if !w.ends_in_t1() {
        return Err(Error::NotInMPrime(w.to_string()));
    }
    let mut out = Vec::with_capacity(w.depth());
    let mut e = 0;
    for l in w.letters() {
        match l {
            Letter::T0 => e += 1,
            Letter::T1 => {
                out.push(e + 1);
                e = 0;
            }
        }
    }
    out.reverse();
    Ok(out)
}

/// Inverse of [`word_to_index`].
pub fn index_to_word(k: &[u32]) -> Result<Word> {
    if k.is_empty() || k.contains(&0) {
        return Err(Error::Invalid(format!("{k:?} is not an index")));
    }
    let mut v = Vec::new();
    for &e in k.iter().rev() {
        v.extend(std::iter::repeat_n(Letter::T0, e as usize - 1));
        v.push(Letter::T1);
    }
    Word::new(v)
}

/// All compositions of `wt` into positive parts.
pub fn compositions(wt: u32) -> Vec<Index> {
    if wt == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=wt {
        for mut rest in compositions(wt - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Admissible indices with the given weight, depth and height.
pub fn admissible_indices(wt: u32, dp: usize, ht: usize) -> Vec<AdmissibleIndex> {
    let mut out = Vec::new();
    fn rec(left: u32, slots: usize, prefix: &mut Index, ht: usize, out: &mut Vec<AdmissibleIndex>) {
        if slots == 0 {
            if left == 0 && index_height(prefix) == ht && prefix.last().is_some_and(|&x| x > 1) {
                out.push(AdmissibleIndex(prefix.clone()));
            }
            return;
        }
        if left < slots as u32 {
            return;
        }
        for k in 1..=left - (slots as u32 - 1) {
            prefix.push(k);
            rec(left - k, slots - 1, prefix, ht, out);
            prefix.pop();
        }
    }
    if dp > 0 {
        rec(wt, dp, &mut Vec::new(), ht, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn weight_and_depth() {
        let x = w("T0T1T1");
        assert_eq!((x.weight(), x.depth()), (3, 2));
        assert!(Word::new(vec![]).is_err());
    }

    #[test]
    fn index_map_examples() {
        assert_eq!(word_to_index(&w("T1")).unwrap(), vec![1]);
        assert_eq!(word_to_index(&w("T0T1")).unwrap(), vec![2]);
        assert_eq!(word_to_index(&w("T0T0T1")).unwrap(), vec![3]);
        assert_eq!(word_to_index(&w("T1T0T1")).unwrap(), vec![2, 1]);
        assert_eq!(word_to_index(&w("T0T1T1")).unwrap(), vec![1, 2]);
        assert!(matches!(word_to_index(&w("T1T0")), Err(Error::NotInMPrime(_))));
    }

    #[test]
    fn index_map_round_trips() {
        for wt in 1..=7 {
            for x in Word::all_of_weight(wt).into_iter().filter(Word::ends_in_t1) {
                let k = word_to_index(&x).unwrap();
                assert_eq!(index_weight(&k) as usize, x.weight());
                assert_eq!(k.len(), x.depth());
                assert_eq!(index_to_word(&k).unwrap(), x);
            }
        }
    }

    #[test]
    fn admissible_enumeration() {
        let e = |k, n, s| admissible_indices(k, n, s).into_iter().map(|a| a.0).collect::<Vec<_>>();
        assert_eq!(e(2, 1, 1), vec![vec![2]]);
        assert_eq!(e(4, 2, 1), vec![vec![1, 3]]);
        assert_eq!(e(4, 2, 2), vec![vec![2, 2]]);
        for k in 1..=9 {
            for n in 0..=k as usize {
                for s in 0..=n {
                    let brute = compositions(k)
                        .into_iter()
                        .filter(|c| c.len() == n && index_height(c) == s && c.last().is_some_and(|&x| x > 1))
                        .count();
                    assert_eq!(admissible_indices(k, n, s).len(), brute, "({k},{n},{s})");
                }
            }
        }
    }

    #[test]
    fn trailing_split() {
        assert_eq!(w("T1T0T0").split_trailing_t0(), Some((w("T1"), 2)));
        assert_eq!(w("T0T0").split_trailing_t0(), None);
        assert_eq!(w("T0T1").split_trailing_t0(), Some((w("T0T1"), 0)));
    }
}
