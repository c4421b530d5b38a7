//! Alphabets, letters and neighborhood intervals.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A letter of some alphabet, stored as its index. Only meaningful
/// relative to the [`Alphabet`] that produced it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub(crate) u8);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphabetError {
    TooSmall,
    TooLarge,
    DuplicateLetter(String),
    BadSymbol(String),
}

impl fmt::Display for AlphabetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetError::TooSmall => write!(f, "alphabet needs at least 2 letters"),
            AlphabetError::TooLarge => write!(f, "alphabet is limited to 256 letters"),
            AlphabetError::DuplicateLetter(s) => write!(f, "duplicate letter {s:?}"),
            AlphabetError::BadSymbol(s) => write!(f, "unusable letter symbol {s:?}"),
        }
    }
}

impl core::error::Error for AlphabetError {}

/// Ordered finite set of distinct letter symbols. The index of a symbol in
/// the declaration order is its letter index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

/// Characters that would collide with the configuration-literal and
/// rule-file syntax are not allowed inside letter symbols.
fn symbol_ok(s: &str) -> bool {
    !s.is_empty()
        && !s.chars().any(|c| {
            c.is_whitespace() || matches!(c, '.' | '^' | '(' | ')' | '@' | '#' | ':' | '>')
        })
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Alphabet, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(AlphabetError::TooSmall);
        }
        if symbols.len() > 256 {
            return Err(AlphabetError::TooLarge);
        }
        for (i, s) in symbols.iter().enumerate() {
            if !symbol_ok(s) {
                return Err(AlphabetError::BadSymbol(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(AlphabetError::DuplicateLetter(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The binary alphabet `{0, 1}` of elementary cellular automata.
    pub fn binary() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter(&self, index: usize) -> Option<Letter> {
        (index < self.symbols.len()).then_some(Letter(index as u8))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len()).map(|i| Letter(i as u8))
    }

    pub fn symbol(&self, l: Letter) -> &str {
        &self.symbols[l.index()]
    }

    pub fn find(&self, symbol: &str) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| Letter(i as u8))
    }

    pub fn contains(&self, l: Letter) -> bool {
        l.index() < self.symbols.len()
    }

    /// True when every symbol is a single character, which makes compact
    /// word notation unambiguous.
    pub fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }
}

/// Contiguous interval of cell offsets a local rule reads,
/// `left <= 0 <= right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    left: i64,
    right: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadNeighborhood {
    pub left: i64,
    pub right: i64,
}

impl fmt::Display for BadNeighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "neighborhood [{}, {}] must satisfy left <= 0 <= right",
            self.left, self.right
        )
    }
}

impl core::error::Error for BadNeighborhood {}

impl Neighborhood {
    pub fn new(left: i64, right: i64) -> Result<Neighborhood, BadNeighborhood> {
        if left <= 0 && right >= 0 && right - left < 32 {
            Ok(Neighborhood { left, right })
        } else {
            Err(BadNeighborhood { left, right })
        }
    }

    pub fn symmetric(radius: i64) -> Neighborhood {
        Neighborhood::new(-radius, radius).unwrap()
    }

    pub fn left(&self) -> i64 {
        self.left
    }

    pub fn right(&self) -> i64 {
        self.right
    }

    /// Span `d = right - left`; a local rule reads `d + 1` cells.
    pub fn span(&self) -> usize {
        (self.right - self.left) as usize
    }

    pub fn radius(&self) -> i64 {
        core::cmp::max(-self.left, self.right)
    }
}
