//! Permutations in one-line notation, their statistics, pattern machinery,
//! quadrant analysis, and fixed-point insertion/removal.
//!
//! Values are 1-based: an `n`-permutation is a word over `1..=n` in which
//! every value appears exactly once. The empty word is the unique
//! 0-permutation. Grid convention throughout the crate: the graphical
//! representation of `p` puts a dot in column `i` (left to right) and row
//! `p_i` (top to bottom).

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("token `{0}` is not a positive integer")]
    InvalidToken(String),
    #[error("duplicate value {0}")]
    DuplicateValue(u32),
    #[error("value {value} out of range 1..={n}")]
    ValueOutOfRange { value: u32, n: usize },
    #[error("index {j} out of range {lo}..={hi}")]
    IndexOutOfRange { j: u32, lo: u32, hi: u32 },
    #[error("position {j} is not a fixed point")]
    NotAFixedPoint { j: u32 },
    #[error("permutation is reducible")]
    Reducible,
}

/// A permutation in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    word: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = PermError;
    fn try_from(word: Vec<u32>) -> Result<Self, PermError> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.word
    }
}

impl Permutation {
    /// Validates that `word` is a permutation of `1..=n`.
    pub fn new(word: Vec<u32>) -> Result<Self, PermError> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v as usize > n {
                return Err(PermError::ValueOutOfRange { value: v, n });
            }
            if seen[v as usize - 1] {
                return Err(PermError::DuplicateValue(v));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { word })
    }

    /// The unique 0-permutation.
    pub fn empty() -> Self {
        Permutation { word: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    /// The decreasing permutation `n (n-1) ... 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).rev().collect(),
        }
    }

    /// All `n`-permutations in lexicographic word order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u32)
            .permutations(n)
            .map(|word| Permutation { word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Value at 1-based position `i`.
    pub fn value_at(&self, i: u32) -> u32 {
        self.word[i as usize - 1]
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: u32) -> u32 {
        self.word.iter().position(|&v| v == value).unwrap() as u32 + 1
    }

    /// All inversions `(i, j)` with `i > j` and `i` appearing before `j`,
    /// as value pairs in word-scan order.
    pub fn inversions(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 0..self.word.len() {
            for b in a + 1..self.word.len() {
                if self.word[a] > self.word[b] {
                    out.push((self.word[a], self.word[b]));
                }
            }
        }
        out
    }

    /// Descents as value pairs: inversions at consecutive positions.
    pub fn descents(&self) -> Vec<(u32, u32)> {
        self.word
            .windows(2)
            .filter(|w| w[0] > w[1])
            .map(|w| (w[0], w[1]))
            .collect()
    }

    /// Left-to-right minima, in word order.
    pub fn ltr_minima(&self) -> Vec<u32> {
        left_to_right_minima(&self.word)
    }

    /// 1-based positions `j` with `p_j = j`.
    pub fn fixed_points(&self) -> Vec<u32> {
        self.word
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == i as u32 + 1)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// True iff no proper prefix of length `k < n` is a permutation of `1..=k`.
    pub fn is_irreducible(&self) -> bool {
        let mut max = 0u32;
        for (i, &v) in self.word.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 && i + 1 < self.word.len() {
                return false;
            }
        }
        true
    }

    /// All occurrences of `pattern`, as strictly increasing position tuples in
    /// lexicographic order. Brute force over index subsets; fine at desk scale.
    pub fn occurrences(&self, pattern: &Permutation) -> Vec<PatternOccurrence> {
        let k = pattern.len();
        if k > self.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for combo in (1..=self.len() as u32).combinations(k) {
            if self.is_occurrence(&combo, pattern) {
                out.push(PatternOccurrence { indices: combo });
            }
        }
        out
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        if k > self.len() {
            return false;
        }
        (1..=self.len() as u32)
            .combinations(k)
            .any(|combo| self.is_occurrence(&combo, pattern))
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    fn is_occurrence(&self, indices: &[u32], pattern: &Permutation) -> bool {
        // Host values at the indices must be order-isomorphic to the pattern.
        let vals: Vec<u32> = indices.iter().map(|&i| self.value_at(i)).collect();
        for a in 0..vals.len() {
            for b in a + 1..vals.len() {
                if (vals[a] < vals[b]) != (pattern.word[a] < pattern.word[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Dot counts of the four `k`-quadrants of the graphical representation.
    pub fn quadrant_profile(&self, k: u32) -> Result<QuadrantProfile, PermError> {
        let n = self.len() as u32;
        if k < 2 || k > n {
            return Err(PermError::IndexOutOfRange { j: k, lo: 2, hi: n });
        }
        let mut profile = QuadrantProfile {
            k,
            upper_left: 0,
            lower_left: 0,
            upper_right: 0,
            lower_right: 0,
        };
        for (i, &v) in self.word.iter().enumerate() {
            let col = i as u32 + 1;
            match (col < k, v < k) {
                (true, true) => profile.upper_left += 1,
                (true, false) => profile.lower_left += 1,
                (false, true) => profile.upper_right += 1,
                (false, false) => profile.lower_right += 1,
            }
        }
        Ok(profile)
    }

    /// True iff every lower-left `k`-quadrant, `k` in `2..=n`, has exactly one
    /// dot. Requires an irreducible permutation.
    pub fn satisfies_quadrant_condition(&self) -> Result<bool, PermError> {
        if !self.is_irreducible() {
            return Err(PermError::Reducible);
        }
        for k in 2..=self.len() as u32 {
            if self.quadrant_profile(k)?.lower_left != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Inserts the fixed point `j`: values `>= j` are incremented and the value
    /// `j` is inserted at position `j`. Requires `2 <= j <= n`.
    pub fn insert_fixed_point(&self, j: u32) -> Result<Permutation, PermError> {
        let n = self.len() as u32;
        if j < 2 || j > n {
            return Err(PermError::IndexOutOfRange { j, lo: 2, hi: n });
        }
        let mut word: Vec<u32> = self
            .word
            .iter()
            .map(|&v| if v >= j { v + 1 } else { v })
            .collect();
        word.insert(j as usize - 1, j);
        Ok(Permutation { word })
    }

    /// Inverse of [`insert_fixed_point`](Self::insert_fixed_point): removes the
    /// fixed point at position `j` and decrements values `> j`.
    pub fn remove_fixed_point(&self, j: u32) -> Result<Permutation, PermError> {
        let n = self.len() as u32;
        if j < 2 || j > n {
            return Err(PermError::IndexOutOfRange { j, lo: 2, hi: n });
        }
        if self.value_at(j) != j {
            return Err(PermError::NotAFixedPoint { j });
        }
        let word = self
            .word
            .iter()
            .enumerate()
            .filter(|&(i, _)| i as u32 + 1 != j)
            .map(|(_, &v)| if v > j { v - 1 } else { v })
            .collect();
        Ok(Permutation { word })
    }
}

/// An occurrence of a pattern: strictly increasing 1-based positions into the
/// host whose values are order-isomorphic to the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternOccurrence {
    pub indices: Vec<u32>,
}

impl PatternOccurrence {
    /// Host values at the occurrence's positions.
    pub fn values(&self, host: &Permutation) -> Vec<u32> {
        self.indices.iter().map(|&i| host.value_at(i)).collect()
    }
}

/// Four-quadrant dot counts at split index `k`: columns `< k` vs `>= k`,
/// rows `< k` vs `>= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadrantProfile {
    pub k: u32,
    pub upper_left: u32,
    pub lower_left: u32,
    pub upper_right: u32,
    pub lower_right: u32,
}

/// Number of descents of an arbitrary word.
pub fn descent_count<T: Ord>(word: &[T]) -> usize {
    word.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Left-to-right minima of an arbitrary word, in word order.
pub fn left_to_right_minima<T: Ord + Copy>(word: &[T]) -> Vec<T> {
    let mut out = Vec::new();
    for &v in word {
        if out.last().map_or(true, |&m| v < m) {
            out.push(v);
        }
    }
    out
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts whitespace/comma-separated values, or a contiguous digit string
    /// when `n <= 9`. Empty input is the 0-permutation.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Ok(Permutation::empty());
        }
        if tokens.len() == 1 {
            let t = tokens[0];
            if t.len() > 1 && t.len() <= 9 && t.bytes().all(|b| b.is_ascii_digit()) {
                let word = t.bytes().map(|b| (b - b'0') as u32).collect();
                return Permutation::new(word);
            }
        }
        let mut word = Vec::with_capacity(tokens.len());
        for t in tokens {
            let v: u32 = t
                .parse()
                .map_err(|_| PermError::InvalidToken(t.to_string()))?;
            word.push(v);
        }
        Permutation::new(word)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.word {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_contiguous_and_separated() {
        assert_eq!(p("561243").word(), &[5, 6, 1, 2, 4, 3]);
        assert_eq!(p("5 6 1 2 4 3"), p("561243"));
        assert_eq!(p("5,6,1,2,4,3"), p("561243"));
        assert_eq!(p(""), Permutation::empty());
        assert_eq!(p("  "), Permutation::empty());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            "1 3 3".parse::<Permutation>(),
            Err(PermError::DuplicateValue(3))
        );
        assert_eq!(
            "1 5".parse::<Permutation>(),
            Err(PermError::ValueOutOfRange { value: 5, n: 2 })
        );
        assert!(matches!(
            "1 x".parse::<Permutation>(),
            Err(PermError::InvalidToken(_))
        ));
        // A long digit token is one value, not a contiguous word.
        assert!("1234567890".parse::<Permutation>().is_err());
    }

    #[test]
    fn inversions_of_561243() {
        let inv: BTreeSet<_> = p("561243").inversions().into_iter().collect();
        let expected: BTreeSet<_> = [
            (5, 1),
            (5, 2),
            (5, 4),
            (5, 3),
            (6, 1),
            (6, 2),
            (6, 4),
            (6, 3),
            (4, 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(inv, expected);
        assert!(Permutation::identity(5).inversions().is_empty());
        let dec3: BTreeSet<_> = Permutation::decreasing(3).inversions().into_iter().collect();
        assert_eq!(dec3, [(3, 2), (3, 1), (2, 1)].into_iter().collect());
    }

    #[test]
    fn statistics_of_561243() {
        let q = p("561243");
        assert_eq!(q.descents(), vec![(6, 1), (4, 3)]);
        assert_eq!(q.ltr_minima(), vec![5, 1]);
        assert!(q.fixed_points().is_empty());

        let id = Permutation::identity(4);
        assert!(id.descents().is_empty());
        assert_eq!(id.ltr_minima(), vec![1]);
        assert_eq!(id.fixed_points(), vec![1, 2, 3, 4]);

        // 6231745 = 521634 with the fixed point 3 inserted; position 2 was
        // already fixed beforehand.
        assert_eq!(p("6231745").fixed_points(), vec![2, 3]);
    }

    #[test]
    fn irreducibility() {
        assert!(!p("312564").is_irreducible());
        assert!(p("561243").is_irreducible());
        assert!(p("1").is_irreducible());
        assert!(!p("132").is_irreducible());
    }

    #[test]
    fn occurrences_and_avoidance() {
        let q = p("561243");
        let occ = q.occurrences(&p("321"));
        let values: Vec<Vec<u32>> = occ.iter().map(|o| o.values(&q)).collect();
        assert_eq!(values, vec![vec![5, 4, 3], vec![6, 4, 3]]);
        assert!(q.avoids(&p("4321")));
        assert_eq!(q.occurrences(&p("1")).len(), 6);
        assert_eq!(Permutation::empty().occurrences(&p("1")).len(), 0);
    }

    #[test]
    fn quadrants() {
        let prof = p("561243").quadrant_profile(4).unwrap();
        assert_eq!((prof.lower_left, prof.upper_right), (2, 2));
        assert_eq!(
            prof.upper_left + prof.lower_left + prof.upper_right + prof.lower_right,
            6
        );
        let prof = p("21").quadrant_profile(2).unwrap();
        assert_eq!((prof.lower_left, prof.upper_right), (1, 1));
        let prof = p("561423").quadrant_profile(4).unwrap();
        assert_eq!((prof.lower_left, prof.upper_right), (2, 2));
        assert!(p("21").quadrant_profile(3).is_err());
    }

    #[test]
    fn quadrant_condition() {
        assert!(p("21").satisfies_quadrant_condition().unwrap());
        assert!(!p("561243").satisfies_quadrant_condition().unwrap());
        assert!(p("321").satisfies_quadrant_condition().unwrap());
        assert_eq!(
            p("312").satisfies_quadrant_condition(),
            Ok(true),
        );
        assert_eq!(
            p("132").satisfies_quadrant_condition(),
            Err(PermError::Reducible)
        );
    }

    #[test]
    fn fixed_point_insertion() {
        assert_eq!(p("521634").insert_fixed_point(3).unwrap(), p("6231745"));
        assert_eq!(p("321").insert_fixed_point(3).unwrap(), p("4231"));
        assert_eq!(p("21").insert_fixed_point(2).unwrap(), p("321"));
        assert!(p("21").insert_fixed_point(1).is_err());
        assert!(p("21").insert_fixed_point(3).is_err());
    }

    #[test]
    fn fixed_point_removal() {
        assert_eq!(p("6231745").remove_fixed_point(3).unwrap(), p("521634"));
        assert_eq!(p("321").remove_fixed_point(2).unwrap(), p("21"));
        assert!(matches!(
            p("321").remove_fixed_point(3),
            Err(PermError::NotAFixedPoint { j: 3 })
        ));
    }

    #[test]
    fn insert_remove_round_trip_small() {
        for n in 2..=5 {
            for q in Permutation::all(n) {
                for j in 2..=n as u32 {
                    let inserted = q.insert_fixed_point(j).unwrap();
                    assert_eq!(inserted.value_at(j), j);
                    assert_eq!(inserted.remove_fixed_point(j).unwrap(), q);
                }
            }
        }
    }
}
