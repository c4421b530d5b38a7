//! Local rules and the cellular automata they induce.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{Alphabet, AlphabetError, BadNeighborhood, Letter, Neighborhood};
use crate::word::{format_word, parse_word, Word, WordParseError};

/// Hard cap on rule-table size, k^(d+1) entries.
const MAX_TABLE: usize = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleError {
    Alphabet(AlphabetError),
    Neighborhood(BadNeighborhood),
    Word(WordParseError),
    TableTooLarge,
    MissingEntry(String),
    DuplicateEntry(String),
    WrongEntryLength { entry: String, expected: usize },
    WrongWordLength { got: usize, expected: usize },
    WordTooShort { got: usize, need: usize },
    EcaCodeOutOfRange(i64),
    MissingField(&'static str),
    ConflictingFields(&'static str),
    Syntax(String),
}

impl fmt::Display for RuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleError::Alphabet(e) => write!(f, "{e}"),
            RuleError::Neighborhood(e) => write!(f, "{e}"),
            RuleError::Word(e) => write!(f, "{e}"),
            RuleError::TableTooLarge => write!(f, "rule table too large"),
            RuleError::MissingEntry(w) => write!(f, "table is missing an entry for {w:?}"),
            RuleError::DuplicateEntry(w) => write!(f, "table defines {w:?} twice"),
            RuleError::WrongEntryLength { entry, expected } => {
                write!(f, "table input {entry:?} must have {expected} letters")
            }
            RuleError::WrongWordLength { got, expected } => {
                write!(f, "word has {got} letters, local rule reads {expected}")
            }
            RuleError::WordTooShort { got, need } => {
                write!(f, "word of {got} letters is shorter than {need}")
            }
            RuleError::EcaCodeOutOfRange(c) => write!(f, "elementary code {c} outside 0..=255"),
            RuleError::MissingField(k) => write!(f, "rule file is missing field {k:?}"),
            RuleError::ConflictingFields(k) => write!(f, "conflicting rule-file fields: {k}"),
            RuleError::Syntax(s) => write!(f, "rule-file syntax: {s}"),
        }
    }
}

impl core::error::Error for RuleError {}

impl From<AlphabetError> for RuleError {
    fn from(e: AlphabetError) -> Self {
        RuleError::Alphabet(e)
    }
}

impl From<BadNeighborhood> for RuleError {
    fn from(e: BadNeighborhood) -> Self {
        RuleError::Neighborhood(e)
    }
}

impl From<WordParseError> for RuleError {
    fn from(e: WordParseError) -> Self {
        RuleError::Word(e)
    }
}

/// A one-dimensional cellular automaton: an alphabet, a neighborhood
/// interval and a total local-rule table over all neighborhood words.
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularAutomaton {
    alphabet: Alphabet,
    neighborhood: Neighborhood,
    table: Vec<Letter>,
}

impl CellularAutomaton {
    pub fn new(
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        table: Vec<Letter>,
    ) -> Result<CellularAutomaton, RuleError> {
        let size = table_size(alphabet.len(), neighborhood.span())?;
        if table.len() != size {
            return Err(RuleError::Syntax(format!(
                "table has {} entries, expected {size}",
                table.len()
            )));
        }
        if table.iter().any(|l| !alphabet.contains(*l)) {
            return Err(RuleError::Syntax("table output outside alphabet".into()));
        }
        Ok(CellularAutomaton {
            alphabet,
            neighborhood,
            table,
        })
    }

    /// Builds a rule from explicit `(input word, output letter)` pairs,
    /// which must cover every neighborhood word exactly once.
    pub fn from_entries(
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        entries: &[(Word, Letter)],
    ) -> Result<CellularAutomaton, RuleError> {
        let width = neighborhood.span() + 1;
        let k = alphabet.len();
        let size = table_size(k, neighborhood.span())?;
        let mut table: Vec<Option<Letter>> = alloc::vec![None; size];
        for (input, output) in entries {
            if input.len() != width {
                return Err(RuleError::WrongEntryLength {
                    entry: format_word(&alphabet, input),
                    expected: width,
                });
            }
            if input.iter().any(|l| !alphabet.contains(*l)) || !alphabet.contains(*output) {
                return Err(RuleError::Syntax("entry letter outside alphabet".into()));
            }
            let idx = radix_index(k, input);
            if table[idx].is_some() {
                return Err(RuleError::DuplicateEntry(format_word(&alphabet, input)));
            }
            table[idx] = Some(*output);
        }
        if let Some(missing) = table.iter().position(|e| e.is_none()) {
            let word = index_word(k, width, missing);
            return Err(RuleError::MissingEntry(format_word(&alphabet, &word)));
        }
        let table = table.into_iter().map(|e| e.unwrap()).collect();
        CellularAutomaton::new(alphabet, neighborhood, table)
    }

    /// The elementary cellular automaton of Wolfram code `code`: binary
    /// alphabet, neighborhood `[-1, 1]`, `f(a,b,c)` given by bit `4a+2b+c`.
    pub fn elementary(code: u8) -> CellularAutomaton {
        // radix index of (a,b,c) is 4a+2b+c, so the table is the code's
        // bits in pattern order
        let table = (0..8).map(|i| Letter((code >> i) & 1)).collect();
        CellularAutomaton {
            alphabet: Alphabet::binary(),
            neighborhood: Neighborhood::symmetric(1),
            table,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn neighborhood(&self) -> Neighborhood {
        self.neighborhood
    }

    /// Number of letters.
    pub fn k(&self) -> usize {
        self.alphabet.len()
    }

    /// Neighborhood span `d`; the local rule reads `d + 1` cells and a
    /// block application shrinks a word by `d`.
    pub fn span(&self) -> usize {
        self.neighborhood.span()
    }

    pub fn radius(&self) -> i64 {
        self.neighborhood.radius()
    }

    pub fn table(&self) -> &[Letter] {
        &self.table
    }

    #[inline]
    pub(crate) fn local(&self, window: &[Letter]) -> Letter {
        self.table[radix_index(self.k(), window)]
    }

    /// Applies the local rule to one neighborhood word of length `d + 1`.
    pub fn apply_local(&self, word: &[Letter]) -> Result<Letter, RuleError> {
        let expected = self.span() + 1;
        if word.len() != expected {
            return Err(RuleError::WrongWordLength {
                got: word.len(),
                expected,
            });
        }
        Ok(self.local(word))
    }

    /// Slides the local rule over `word`, producing `|word| - d` letters:
    /// `out[i] = f(word[i..=i+d])`.
    pub fn apply_block(&self, word: &[Letter]) -> Result<Vec<Letter>, RuleError> {
        let width = self.span() + 1;
        if word.len() < width {
            return Err(RuleError::WordTooShort {
                got: word.len(),
                need: width,
            });
        }
        Ok(self.apply_block_unchecked(word))
    }

    pub(crate) fn apply_block_unchecked(&self, word: &[Letter]) -> Vec<Letter> {
        let width = self.span() + 1;
        let k = self.k();
        let n = word.len() - width + 1;
        let mut out = Vec::with_capacity(n);
        if k == 2 && width <= 16 {
            // incremental radix index, the hot path for elementary rules
            let mask = (1usize << width) - 1;
            let mut idx = 0usize;
            for (i, l) in word.iter().enumerate() {
                idx = ((idx << 1) | l.index()) & mask;
                if i + 1 >= width {
                    out.push(self.table[idx]);
                }
            }
        } else {
            for i in 0..n {
                out.push(self.local(&word[i..i + width]));
            }
        }
        out
    }
}

fn table_size(k: usize, span: usize) -> Result<usize, RuleError> {
    let mut size = 1usize;
    for _ in 0..=span {
        size = size.checked_mul(k).ok_or(RuleError::TableTooLarge)?;
        if size > MAX_TABLE {
            return Err(RuleError::TableTooLarge);
        }
    }
    Ok(size)
}

#[inline]
fn radix_index(k: usize, word: &[Letter]) -> usize {
    let mut idx = 0usize;
    for l in word {
        idx = idx * k + l.index();
    }
    idx
}

fn index_word(k: usize, width: usize, mut idx: usize) -> Word {
    let mut out = alloc::vec![Letter(0); width];
    for pos in (0..width).rev() {
        out[pos] = Letter((idx % k) as u8);
        idx /= k;
    }
    out
}

/// Parses the rule-file format: `alphabet:`, `neighborhood:` and `table:`
/// sections, or a single `eca:` code. `#` starts a comment; whitespace is
/// free. See the repository README for the grammar.
pub fn parse_rule(text: &str) -> Result<CellularAutomaton, RuleError> {
    let mut alphabet_line: Option<String> = None;
    let mut neighborhood_line: Option<String> = None;
    let mut eca_line: Option<String> = None;
    let mut table_lines: Vec<String> = Vec::new();
    let mut in_table = false;

    for raw in text.lines() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let lower = line.to_lowercase();
        let field = |name: &str| -> Option<String> {
            let rest = lower.strip_prefix(name)?;
            let rest = rest.trim_start();
            let rest = rest.strip_prefix(':').or_else(|| rest.strip_prefix('='))?;
            // return the original-case payload
            let start = line.len() - rest.len();
            Some(line[start..].trim().to_string())
        };
        if let Some(v) = field("alphabet") {
            set_once(&mut alphabet_line, v, "alphabet")?;
            in_table = false;
        } else if let Some(v) = field("neighborhood") {
            set_once(&mut neighborhood_line, v, "neighborhood")?;
            in_table = false;
        } else if let Some(v) = field("eca") {
            set_once(&mut eca_line, v, "eca")?;
            in_table = false;
        } else if let Some(v) = field("table") {
            in_table = true;
            if !v.is_empty() {
                table_lines.push(v);
            }
        } else if in_table {
            table_lines.push(line.to_string());
        } else {
            return Err(RuleError::Syntax(format!("unexpected line {line:?}")));
        }
    }

    if let Some(code) = eca_line {
        if !table_lines.is_empty() {
            return Err(RuleError::ConflictingFields("eca and table"));
        }
        let code: i64 = code
            .trim()
            .parse()
            .map_err(|_| RuleError::Syntax(format!("bad eca code {code:?}")))?;
        if !(0..=255).contains(&code) {
            return Err(RuleError::EcaCodeOutOfRange(code));
        }
        let ca = CellularAutomaton::elementary(code as u8);
        if let Some(a) = alphabet_line {
            let declared = Alphabet::new(a.split_whitespace())?;
            if declared != *ca.alphabet() {
                return Err(RuleError::ConflictingFields("eca with non-binary alphabet"));
            }
        }
        if let Some(n) = neighborhood_line {
            if parse_neighborhood(&n)? != ca.neighborhood() {
                return Err(RuleError::ConflictingFields(
                    "eca with non-standard neighborhood",
                ));
            }
        }
        return Ok(ca);
    }

    let alphabet = Alphabet::new(
        alphabet_line
            .ok_or(RuleError::MissingField("alphabet"))?
            .split_whitespace(),
    )?;
    let neighborhood =
        parse_neighborhood(&neighborhood_line.ok_or(RuleError::MissingField("neighborhood"))?)?;
    if table_lines.is_empty() {
        return Err(RuleError::MissingField("table"));
    }

    let mut entries: Vec<(Word, Letter)> = Vec::new();
    for line in &table_lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| RuleError::Syntax(format!("table entry {line:?} lacks '->'")))?;
        let mut input = Word::new();
        for tok in lhs.split_whitespace() {
            input.extend(parse_word(&alphabet, tok)?);
        }
        let output = parse_word(&alphabet, rhs.trim())?;
        if output.len() != 1 {
            return Err(RuleError::Syntax(format!(
                "table output {:?} must be a single letter",
                rhs.trim()
            )));
        }
        entries.push((input, output[0]));
    }
    CellularAutomaton::from_entries(alphabet, neighborhood, &entries)
}

fn set_once(slot: &mut Option<String>, v: String, name: &'static str) -> Result<(), RuleError> {
    if slot.is_some() {
        return Err(RuleError::ConflictingFields(name));
    }
    *slot = Some(v);
    Ok(())
}

fn parse_neighborhood(text: &str) -> Result<Neighborhood, RuleError> {
    let parts: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() != 2 {
        return Err(RuleError::Syntax(format!(
            "neighborhood {text:?} must be two integers"
        )));
    }
    let left: i64 = parts[0]
        .parse()
        .map_err(|_| RuleError::Syntax(format!("bad integer {:?}", parts[0])))?;
    let right: i64 = parts[1]
        .parse()
        .map_err(|_| RuleError::Syntax(format!("bad integer {:?}", parts[1])))?;
    Ok(Neighborhood::new(left, right)?)
}
