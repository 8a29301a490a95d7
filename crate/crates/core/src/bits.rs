use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A fixed-width bit string. Bit `0` in string order (the first inequality
/// term) is the most significant bit of `bits`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitString {
    width: u32,
    bits: u64,
}

impl BitString {
    pub fn new(width: usize, bits: u64) -> Result<Self> {
        if width > 64 {
            return Err(Error::input(format!("bit string width {width} exceeds 64")));
        }
        if width < 64 && bits >> width != 0 {
            return Err(Error::input(format!("value {bits} does not fit in {width} bits")));
        }
        Ok(BitString { width: width as u32, bits })
    }

    pub fn zeros(width: usize) -> Self {
        BitString { width: width as u32, bits: 0 }
    }

    /// Builds a string from bits listed in string order.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let v = bits.iter().fold(0u64, |acc, &b| acc << 1 | b as u64);
        BitString::new(bits.len(), v)
    }

    /// Parses a string such as `10011`.
    pub fn parse(text: &str) -> Result<Self> {
        let bits: Vec<bool> = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::input(format!("invalid bit `{c}` in `{text}`"))),
            })
            .collect::<Result<_>>()?;
        BitString::from_bits(&bits)
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn value(&self) -> u64 {
        self.bits
    }

    /// The bit at string position `i` (0 = first term).
    pub fn get(&self, i: usize) -> bool {
        self.bits >> (self.width as usize - 1 - i) & 1 == 1
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.width()).map(|i| self.get(i)).collect()
    }

    pub fn hamming(&self, other: &BitString) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_position_is_most_significant() {
        let b = BitString::parse("10011").unwrap();
        assert_eq!(b.value(), 19);
        assert!(b.get(0));
        assert!(!b.get(1));
        assert_eq!(b.to_string(), "10011");
    }

    #[test]
    fn rejects_overflow() {
        assert!(BitString::new(3, 8).is_err());
        assert!(BitString::new(65, 0).is_err());
        assert!(BitString::parse("012").is_err());
    }

    #[test]
    fn hamming_distance() {
        let a = BitString::parse("1100").unwrap();
        let b = BitString::parse("1010").unwrap();
        assert_eq!(a.hamming(&b), 2);
    }
}
