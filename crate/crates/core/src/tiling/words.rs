use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Generator labels. `A..D` cross the four faces of a square in
/// counterclockwise order starting at `+x`; `U`/`V` step one layer up/down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    U,
    V,
}

impl Letter {
    pub const ALL: [Letter; 6] = [Letter::A, Letter::B, Letter::C, Letter::D, Letter::U, Letter::V];
    pub const HORIZONTAL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::C,
            Letter::B => Letter::D,
            Letter::C => Letter::A,
            Letter::D => Letter::B,
            Letter::U => Letter::V,
            Letter::V => Letter::U,
        }
    }

    /// Face index `0..4` for horizontal letters.
    pub fn face(self) -> Option<usize> {
        match self {
            Letter::A => Some(0),
            Letter::B => Some(1),
            Letter::C => Some(2),
            Letter::D => Some(3),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::U => 'U',
            Letter::V => 'V',
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = Error;
    fn try_from(c: char) -> Result<Self, Error> {
        Ok(match c {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'U' => Letter::U,
            'V' => Letter::V,
            other => return Err(Error::UnknownLetter(other)),
        })
    }
}

/// A freely reduced word in the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellWord(Vec<Letter>);

impl CellWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a word, cancelling adjacent inverse pairs.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Self::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends `l`, cancelling it against the last letter if they are inverse.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn concat(&self, other: &CellWord) -> CellWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> CellWord {
        CellWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Net number of layers climbed.
    pub fn layer(&self) -> i64 {
        self.0.iter().fold(0, |acc, l| match l {
            Letter::U => acc + 1,
            Letter::V => acc - 1,
            _ => acc,
        })
    }

    pub fn horizontal(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().copied().filter(|l| l.face().is_some())
    }
}

impl fmt::Display for CellWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for CellWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "-" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(Letter::try_from)
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w: CellWord = "AACBDU".parse().unwrap();
        assert_eq!(w.to_string(), "AU");
        let w: CellWord = "UV".parse().unwrap();
        assert!(w.is_empty());
        assert_eq!(w.to_string(), "-");
        let w: CellWord = "ABU".parse().unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!("UUAV".parse::<CellWord>().unwrap().layer(), 1);
        assert!("AX".parse::<CellWord>().is_err());
    }
}
