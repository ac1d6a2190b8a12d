use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// One of the four cell colors. The derived order r < g < y < b is relied on
/// for deterministic output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    R,
    G,
    Y,
    B,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::R, Color::G, Color::Y, Color::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Color {
        Color::ALL[i]
    }

    pub fn letter(self) -> char {
        match self {
            Color::R => 'r',
            Color::G => 'g',
            Color::Y => 'y',
            Color::B => 'b',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'r' => Some(Color::R),
            'g' => Some(Color::G),
            'y' => Some(Color::Y),
            'b' => Some(Color::B),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Color {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut chars = s.chars();
        match (chars.next().and_then(Color::from_letter), chars.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(Error::Malformed(format!("bad color `{s}`"))),
        }
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Unordered pair of distinct colors, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorPair(Color, Color);

impl ColorPair {
    pub fn new(a: Color, b: Color) -> Option<ColorPair> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(ColorPair(a, b)),
            std::cmp::Ordering::Greater => Some(ColorPair(b, a)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn first(self) -> Color {
        self.0
    }

    pub fn second(self) -> Color {
        self.1
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 == c || self.1 == c
    }

    /// The two colors not in the pair, ascending.
    pub fn complement(self) -> [Color; 2] {
        let mut rest = Color::ALL.into_iter().filter(|&c| !self.contains(c));
        [rest.next().unwrap(), rest.next().unwrap()]
    }

    pub fn all() -> impl Iterator<Item = ColorPair> {
        Color::ALL.into_iter().flat_map(|a| {
            Color::ALL
                .into_iter()
                .filter(move |&b| a < b)
                .map(move |b| ColorPair(a, b))
        })
    }
}

impl fmt::Display for ColorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

impl FromStr for ColorPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let cs: Vec<Option<Color>> = s.chars().map(Color::from_letter).collect();
        match cs.as_slice() {
            [Some(a), Some(b)] => ColorPair::new(*a, *b),
            _ => None,
        }
        .ok_or_else(|| Error::Malformed(format!("bad color pair `{s}`")))
    }
}

impl Serialize for ColorPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColorPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_rgyb() {
        let mut v = vec![Color::B, Color::Y, Color::R, Color::G];
        v.sort();
        assert_eq!(v, Color::ALL.to_vec());
    }

    #[test]
    fn pairs() {
        assert_eq!(ColorPair::all().count(), 6);
        let p = ColorPair::new(Color::B, Color::R).unwrap();
        assert_eq!(p.to_string(), "rb");
        assert_eq!(p.complement(), [Color::G, Color::Y]);
        assert_eq!("rb".parse::<ColorPair>().unwrap(), p);
        assert!(ColorPair::new(Color::G, Color::G).is_none());
        assert!("rr".parse::<ColorPair>().is_err());
    }
}
