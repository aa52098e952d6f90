//! Strings over small integer alphabets, run-length encoding and the
//! structural predicates (squares, square-freeness, exemplars, alternation).
//!
//! Indices exposed through this module are 1-based, matching the `[n]`
//! convention used throughout the crate. Text I/O maps `0-9` to codes 0..=9,
//! `a-z` to 10..=35, `L` (also accepted as `Ł`) to 36 and `$` to 37.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u8;

/// Code of the block terminator `Ł` (printed as `L`).
pub const ELL: Symbol = 36;
/// Code of the chunk terminator `$`.
pub const DOLLAR: Symbol = 37;

pub fn symbol_char(code: Symbol) -> Option<char> {
    match code {
        0..=9 => Some((b'0' + code) as char),
        10..=35 => Some((b'a' + code - 10) as char),
        ELL => Some('L'),
        DOLLAR => Some('$'),
        _ => None,
    }
}

pub fn char_symbol(ch: char) -> Option<Symbol> {
    match ch {
        '0'..='9' => Some(ch as u8 - b'0'),
        'a'..='z' => Some(ch as u8 - b'a' + 10),
        'L' | 'Ł' => Some(ELL),
        '$' => Some(DOLLAR),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("empty".into()));
        }
        let mut seen = BTreeSet::new();
        for &c in &symbols {
            if symbol_char(c).is_none() {
                return Err(Error::UnknownCode(c));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidAlphabet(format!("symbol {c} repeated")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Sorted set of symbols occurring in `data`.
    pub fn of(data: &[Symbol]) -> Self {
        let set: BTreeSet<Symbol> = data.iter().copied().collect();
        Alphabet {
            symbols: set.into_iter().collect(),
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, c: Symbol) -> bool {
        self.symbols.contains(&c)
    }

    pub fn display(&self, c: Symbol) -> Option<char> {
        if self.contains(c) {
            symbol_char(c)
        } else {
            None
        }
    }
}

/// A string over a declared alphabet. Dereferences to its symbol slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TDString {
    alphabet: Alphabet,
    data: Vec<Symbol>,
}

impl TDString {
    pub fn parse(text: &str) -> Result<Self> {
        let mut data = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            data.push(char_symbol(ch).ok_or(Error::InvalidSymbol { ch, pos: pos + 1 })?);
        }
        Ok(Self::from_symbols(data))
    }

    /// Alphabet is inferred from the symbols present.
    pub fn from_symbols(data: Vec<Symbol>) -> Self {
        TDString {
            alphabet: Alphabet::of(&data),
            data,
        }
    }

    pub fn with_alphabet(alphabet: Alphabet, data: Vec<Symbol>) -> Result<Self> {
        if let Some(&c) = data.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::InvalidAlphabet(format!("symbol {c} not declared")));
        }
        Ok(TDString { alphabet, data })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn data(&self) -> &[Symbol] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Symbol> {
        self.data
    }

    /// `S[i,j]` with 1-based inclusive bounds; empty when `i > j`, clamped at the end.
    pub fn substring(&self, i: usize, j: usize) -> TDString {
        TDString::from_symbols(substring(&self.data, i, j).to_vec())
    }
}

impl Deref for TDString {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.data
    }
}

impl fmt::Display for TDString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(&self.data))
    }
}

impl Serialize for TDString {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&to_text(&self.data))
    }
}

impl<'de> Deserialize<'de> for TDString {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        TDString::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for TDString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TDString::parse(s)
    }
}

pub fn to_text(data: &[Symbol]) -> String {
    data.iter().map(|&c| symbol_char(c).unwrap_or('?')).collect()
}

/// `C[i,j]`, 1-based inclusive, clamped to the string.
pub fn substring(s: &[Symbol], i: usize, j: usize) -> &[Symbol] {
    if i == 0 || i > j || i > s.len() {
        return &[];
    }
    &s[i - 1..j.min(s.len())]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Run {
    pub symbol: Symbol,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RunLengthEncoding {
    pub runs: Vec<Run>,
}

impl RunLengthEncoding {
    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.runs.iter().map(|r| r.length).collect()
    }

    pub fn pairs(&self) -> Vec<(Symbol, usize)> {
        self.runs.iter().map(|r| (r.symbol, r.length)).collect()
    }

    pub fn decode(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for r in &self.runs {
            out.extend(std::iter::repeat_n(r.symbol, r.length));
        }
        out
    }
}

pub fn rle(s: &[Symbol]) -> RunLengthEncoding {
    let mut runs: Vec<Run> = Vec::new();
    for &c in s {
        match runs.last_mut() {
            Some(r) if r.symbol == c => r.length += 1,
            _ => runs.push(Run {
                symbol: c,
                length: 1,
            }),
        }
    }
    RunLengthEncoding { runs }
}

/// All squares as 1-based `(start, half_length)`, sorted by `(start, half_length)`.
pub fn find_squares(s: &[Symbol]) -> Vec<(usize, usize)> {
    let n = s.len();
    let mut out = Vec::new();
    for d in 1..=n / 2 {
        // run of consecutive k with s[k] == s[k+d]
        let mut run = 0usize;
        for k in 0..n - d {
            if s[k] == s[k + d] {
                run += 1;
                if run >= d {
                    out.push((k + 2 - d, d));
                }
            } else {
                run = 0;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Center-based quadratic scan.
pub fn is_square_free_quadratic(s: &[Symbol]) -> bool {
    let n = s.len();
    for d in 1..=n / 2 {
        let mut run = 0usize;
        for k in 0..n - d {
            if s[k] == s[k + d] {
                run += 1;
                if run >= d {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}

pub fn is_square_free(s: &[Symbol]) -> bool {
    if s.len() < 512 {
        return is_square_free_quadratic(s);
    }
    match HashedSquareScan::new(s).find_square() {
        None => true,
        Some((i, d)) if s[i..i + d] == s[i + d..i + 2 * d] => false,
        // hash collision, settle it exactly
        Some(_) => is_square_free_quadratic(s),
    }
}

const MERSENNE61: u64 = (1 << 61) - 1;
const HASH_BASE: u64 = 1_000_003;

fn mulmod(a: u64, b: u64) -> u64 {
    let p = (a as u128) * (b as u128);
    let lo = (p as u64) & MERSENNE61;
    let hi = (p >> 61) as u64;
    let r = lo + hi;
    if r >= MERSENNE61 {
        r - MERSENNE61
    } else {
        r
    }
}

/// Squares with half-length d are found by sampling positions at multiples
/// of d and extending with hashed longest-common-extension queries.
struct HashedSquareScan<'a> {
    s: &'a [Symbol],
    prefix: Vec<u64>,
    pow: Vec<u64>,
}

impl<'a> HashedSquareScan<'a> {
    fn new(s: &'a [Symbol]) -> Self {
        let mut prefix = Vec::with_capacity(s.len() + 1);
        let mut pow = Vec::with_capacity(s.len() + 1);
        prefix.push(0);
        pow.push(1);
        for (k, &c) in s.iter().enumerate() {
            let h = mulmod(prefix[k], HASH_BASE) + c as u64 + 1;
            prefix.push(if h >= MERSENNE61 { h - MERSENNE61 } else { h });
            pow.push(mulmod(pow[k], HASH_BASE));
        }
        HashedSquareScan { s, prefix, pow }
    }

    fn hash(&self, i: usize, len: usize) -> u64 {
        let a = self.prefix[i + len];
        let b = mulmod(self.prefix[i], self.pow[len]);
        if a >= b {
            a - b
        } else {
            a + MERSENNE61 - b
        }
    }

    fn lce_forward(&self, i: usize, j: usize, cap: usize) -> usize {
        let (mut lo, mut hi) = (0, cap);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.hash(i, mid) == self.hash(j, mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    fn lce_backward(&self, i: usize, j: usize, cap: usize) -> usize {
        let (mut lo, mut hi) = (0, cap);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.hash(i - mid, mid) == self.hash(j - mid, mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// 0-based `(start, half)` of some square, if the hashes report one.
    fn find_square(&self) -> Option<(usize, usize)> {
        let n = self.s.len();
        for d in 1..=n / 2 {
            let mut j = 0;
            while j + d < n {
                let fwd = self.lce_forward(j, j + d, d.min(n - j - d));
                if fwd < d {
                    let back = self.lce_backward(j, j + d, (d - fwd).min(j));
                    if fwd + back >= d {
                        return Some((j - back, d));
                    }
                } else {
                    return Some((j, d));
                }
                j += d;
            }
        }
        None
    }
}

/// `dup(A, I)`: every character at a 1-based index in `i_set` is doubled in place.
pub fn dup(a: &[Symbol], i_set: &[usize]) -> Result<Vec<Symbol>> {
    let mut marks = vec![false; a.len()];
    for &i in i_set {
        if i == 0 || i > a.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: a.len(),
            });
        }
        marks[i - 1] = true;
    }
    let mut out = Vec::with_capacity(a.len() + i_set.len());
    for (k, &c) in a.iter().enumerate() {
        out.push(c);
        if marks[k] {
            out.push(c);
        }
    }
    Ok(out)
}

/// `A^dup`, every character doubled.
pub fn dup_all(a: &[Symbol]) -> Vec<Symbol> {
    a.iter().flat_map(|&c| [c, c]).collect()
}

/// Symbols of the first `q` runs when the run sequence cycles through all
/// `q` distinct symbols in a fixed order.
pub fn alternation_order(s: &[Symbol]) -> Option<Vec<Symbol>> {
    let runs = rle(s);
    if runs.is_empty() {
        return None;
    }
    let q = Alphabet::of(s).len();
    let order: Vec<Symbol> = runs.runs.iter().take(q).map(|r| r.symbol).collect();
    if order.len() < q {
        return None;
    }
    for (k, r) in runs.runs.iter().enumerate() {
        if r.symbol != order[k % q] {
            return None;
        }
    }
    Some(order)
}

/// The first-appearance relabeling (run `k` carries `(k-1) mod q`) when `s` is
/// purely alternating.
pub fn is_purely_alternating(s: &[Symbol]) -> Option<TDString> {
    let order = alternation_order(s)?;
    let map: HashMap<Symbol, Symbol> = order
        .iter()
        .enumerate()
        .map(|(k, &c)| (c, k as Symbol))
        .collect();
    Some(TDString::from_symbols(s.iter().map(|c| map[c]).collect()))
}

/// The relation `s ⪯ t`.
pub fn matches(s: &[Symbol], t: &[Symbol]) -> bool {
    let (a, b) = (rle(s), rle(t));
    a.len() == b.len()
        && a
            .runs
            .iter()
            .zip(&b.runs)
            .all(|(x, y)| x.symbol == y.symbol && x.length <= y.length)
}

/// Run-length form of [`matches`].
pub fn matches_runs(s: &[usize], t: &[usize]) -> bool {
    s.len() == t.len() && s.iter().zip(t).all(|(a, b)| a <= b)
}

/// Square-free root and 1-based duplication set when `s = dup(root, I)`.
pub fn is_almost_square_free(s: &[Symbol]) -> Option<(TDString, Vec<usize>)> {
    let mut root = Vec::with_capacity(s.len());
    let mut i_set = Vec::new();
    let mut k = 0;
    while k < s.len() {
        root.push(s[k]);
        if k + 1 < s.len() && s[k + 1] == s[k] {
            if k + 2 < s.len() && s[k + 2] == s[k] {
                return None;
            }
            i_set.push(root.len());
            k += 2;
        } else {
            k += 1;
        }
    }
    if is_square_free(&root) {
        Some((TDString::from_symbols(root), i_set))
    } else {
        None
    }
}

pub fn is_exemplar(s: &[Symbol]) -> bool {
    let mut seen = BTreeSet::new();
    s.iter().all(|c| seen.insert(*c))
}

pub fn is_subsequence(sub: &[Symbol], s: &[Symbol]) -> bool {
    let mut it = s.iter();
    sub.iter().all(|c| it.any(|d| d == c))
}
