//! Party labels and subsystems.
//!
//! Parties `0..n` are the subsystems of interest and party `n` is the
//! purifier `O`. A [`Subsystem`] is a non-empty set of non-purifier parties,
//! stored as a bitmask with party `i` at bit `i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported party count. Entropy vectors have `2^n - 1` entries.
pub const MAX_PARTIES: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subsystem(pub u32);

impl Subsystem {
    pub fn from_parties(parties: impl IntoIterator<Item = usize>) -> Self {
        Subsystem(parties.into_iter().fold(0, |m, p| m | (1 << p)))
    }

    pub fn contains(self, party: usize) -> bool {
        self.0 >> party & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn parties(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&p| self.contains(p))
    }

    pub fn union(self, other: Subsystem) -> Subsystem {
        Subsystem(self.0 | other.0)
    }

    /// Complement within `{0..n}`; may be empty.
    pub fn complement(self, n: usize) -> Subsystem {
        Subsystem(full_mask(n) & !self.0)
    }

    /// Concatenated party labels, e.g. `ABD`.
    pub fn label(self, n: usize) -> String {
        self.parties().map(|p| party_label(n, p)).collect()
    }

    /// Parses a concatenation of party labels such as `AB` or `P1P3`.
    ///
    /// The purifier is accepted and reported separately so callers can
    /// decide how to handle it.
    pub fn parse_with_purifier(text: &str, n: usize) -> Result<(Subsystem, bool)> {
        let mut mask = 0u32;
        let mut purifier = false;
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let party = if c == 'P' && i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let num: usize = chars[i + 1..j].iter().collect::<String>().parse().unwrap();
                i = j;
                if num == 0 || num > n {
                    return Err(Error::input(format!("unknown party P{num} for n = {n}")));
                }
                Some(num - 1)
            } else {
                i += 1;
                if c == 'O' {
                    purifier = true;
                    None
                } else if n <= 5 && ('A'..='E').contains(&c) && ((c as u8 - b'A') as usize) < n {
                    Some((c as u8 - b'A') as usize)
                } else {
                    return Err(Error::input(format!("unknown party `{c}` for n = {n}")));
                }
            };
            if let Some(p) = party {
                mask |= 1 << p;
            }
        }
        Ok((Subsystem(mask), purifier))
    }

    /// Parses a non-empty subsystem of non-purifier parties.
    pub fn parse(text: &str, n: usize) -> Result<Subsystem> {
        let (s, purifier) = Subsystem::parse_with_purifier(text, n)?;
        if purifier {
            return Err(Error::input(format!(
                "subsystem `{text}` contains the purifier; use its complement instead"
            )));
        }
        if s.is_empty() {
            return Err(Error::input("empty subsystem"));
        }
        Ok(s)
    }
}

impl fmt::Debug for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subsystem({:#b})", self.0)
    }
}

pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// `A..E` then `O` for `n <= 5`; `P1..Pn` then `O` otherwise.
pub fn party_label(n: usize, party: usize) -> String {
    if party == n {
        "O".to_string()
    } else if n <= 5 {
        ((b'A' + party as u8) as char).to_string()
    } else {
        format!("P{}", party + 1)
    }
}

pub fn party_labels(n: usize) -> Vec<String> {
    (0..=n).map(|p| party_label(n, p)).collect()
}

pub fn check_party_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PARTIES {
        return Err(Error::input(format!("party count {n} outside 1..={MAX_PARTIES}")));
    }
    Ok(())
}

/// All non-empty subsystems in graded lexicographic order:
/// singletons, then pairs `AB, AC, ...`, up to the full set.
pub fn canonical_subsystems(n: usize) -> Vec<Subsystem> {
    let mut out = Vec::with_capacity((1usize << n) - 1);
    for size in 1..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            out.push(Subsystem::from_parties(combo.iter().copied()));
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && combo[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

/// Maps a subsystem mask to its position in [`canonical_subsystems`].
#[derive(Debug, Clone)]
pub struct SubsystemIndex {
    n: usize,
    order: Vec<Subsystem>,
    position: Vec<usize>,
}

impl SubsystemIndex {
    pub fn new(n: usize) -> Self {
        let order = canonical_subsystems(n);
        let mut position = vec![usize::MAX; 1 << n];
        for (i, s) in order.iter().enumerate() {
            position[s.0 as usize] = i;
        }
        SubsystemIndex { n, order, position }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, s: Subsystem) -> Option<usize> {
        self.position.get(s.0 as usize).copied().filter(|&p| p != usize::MAX)
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order_for_three_parties() {
        let labels: Vec<String> = canonical_subsystems(3).iter().map(|s| s.label(3)).collect();
        assert_eq!(labels, ["A", "B", "C", "AB", "AC", "BC", "ABC"]);
    }

    #[test]
    fn five_party_order_matches_listing() {
        let order = canonical_subsystems(5);
        assert_eq!(order.len(), 31);
        let labels: Vec<String> = order.iter().map(|s| s.label(5)).collect();
        assert_eq!(&labels[..7], ["A", "B", "C", "D", "E", "AB", "AC"]);
        assert_eq!(&labels[28..], ["ACDE", "BCDE", "ABCDE"]);
    }

    #[test]
    fn index_round_trip() {
        let idx = SubsystemIndex::new(4);
        for (i, s) in idx.subsystems().iter().enumerate() {
            assert_eq!(idx.position(*s), Some(i));
        }
        assert_eq!(idx.position(Subsystem(0)), None);
    }

    #[test]
    fn labels_switch_to_numbered_parties_above_five() {
        assert_eq!(party_label(3, 3), "O");
        assert_eq!(party_label(6, 0), "P1");
        assert_eq!(Subsystem::parse("P1P3", 6).unwrap(), Subsystem(0b101));
    }

    #[test]
    fn parse_rejects_unknown_party() {
        assert!(Subsystem::parse("AD", 3).is_err());
        assert!(Subsystem::parse("AO", 3).is_err());
        let (s, o) = Subsystem::parse_with_purifier("BO", 3).unwrap();
        assert_eq!(s, Subsystem(0b10));
        assert!(o);
    }
}
