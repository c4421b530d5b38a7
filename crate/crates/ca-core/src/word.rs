//! Finite words over an alphabet: formatting, parsing and the cyclic-word
//! helpers the canonical configuration forms are built on.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{Alphabet, Letter};

pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordParseError {
    UnknownLetter(String),
    Empty,
}

impl fmt::Display for WordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordParseError::UnknownLetter(s) => write!(f, "unknown letter {s:?}"),
            WordParseError::Empty => write!(f, "empty word"),
        }
    }
}

impl core::error::Error for WordParseError {}

/// Renders a word. Single-character alphabets concatenate; otherwise
/// letters are joined with '.'.
pub fn format_word(alphabet: &Alphabet, word: &[Letter]) -> String {
    let mut out = String::new();
    let dotted = !alphabet.single_char();
    for (i, l) in word.iter().enumerate() {
        if dotted && i > 0 {
            out.push('.');
        }
        out.push_str(alphabet.symbol(*l));
    }
    out
}

/// Parses a word. Accepts '.'-separated letter symbols, and for inputs
/// without dots a greedy longest-match segmentation (which is simply
/// per-character for single-character alphabets).
pub fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, WordParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(WordParseError::Empty);
    }
    if text.contains('.') {
        return text
            .split('.')
            .map(|tok| {
                alphabet
                    .find(tok.trim())
                    .ok_or_else(|| WordParseError::UnknownLetter(tok.into()))
            })
            .collect();
    }
    let mut out = Word::new();
    let mut rest = text;
    'outer: while !rest.is_empty() {
        let mut best: Option<(usize, Letter)> = None;
        for l in alphabet.letters() {
            let sym = alphabet.symbol(l);
            if rest.starts_with(sym) {
                match best {
                    Some((blen, _)) if blen >= sym.len() => {}
                    _ => best = Some((sym.len(), l)),
                }
            }
        }
        if let Some((len, l)) = best {
            out.push(l);
            rest = &rest[len..];
            continue 'outer;
        }
        return Err(WordParseError::UnknownLetter(rest.into()));
    }
    Ok(out)
}

/// Length of the primitive root of `word` (the shortest `p` with
/// `word[i] == word[i + p]` for all valid `i` and `p` dividing `|word|`).
pub fn primitive_root_len(word: &[Letter]) -> usize {
    let n = word.len();
    'cand: for p in 1..=n {
        if !n.is_multiple_of(p) {
            continue;
        }
        for i in p..n {
            if word[i] != word[i - p] {
                continue 'cand;
            }
        }
        return p;
    }
    n
}

pub fn primitive_root(word: &[Letter]) -> Word {
    word[..primitive_root_len(word)].to_vec()
}

pub fn rotate(word: &[Letter], start: usize) -> Word {
    let n = word.len();
    (0..n).map(|i| word[(start + i) % n]).collect()
}

/// Index of the lexicographically least rotation (naive scan; words here
/// are short).
pub fn least_rotation(word: &[Letter]) -> usize {
    let n = word.len();
    let mut best = 0usize;
    for cand in 1..n {
        for i in 0..n {
            let a = word[(cand + i) % n];
            let b = word[(best + i) % n];
            if a < b {
                best = cand;
                break;
            }
            if a > b {
                break;
            }
        }
    }
    best
}

/// All words of length `len` over `k` letters in lexicographic order.
pub struct LexWords {
    k: u8,
    next: Option<Vec<u8>>,
}

impl LexWords {
    pub fn new(k: usize, len: usize) -> LexWords {
        assert!((1..=256).contains(&k));
        LexWords {
            k: (k - 1) as u8,
            next: Some(alloc::vec![0u8; len]),
        }
    }
}

impl Iterator for LexWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let word: Word = cur.iter().map(|&i| Letter(i)).collect();
        let mut digits = cur;
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            if digits[pos] < self.k {
                digits[pos] += 1;
                for d in digits[pos + 1..].iter_mut() {
                    *d = 0;
                }
                self.next = Some(digits);
                break;
            }
        }
        Some(word)
    }
}
