//! Duplications `AXB => AXXB` and contractions `AXXB >-> AXB`.
//!
//! Operations use 1-based `start` and a length `len = |X|`. A contraction
//! removes the right copy of `X`, so a duplication and a contraction at the
//! same `(start, len)` undo each other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strings::{find_squares, rle, Symbol, TDString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Duplication,
    Contraction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RewriteOp {
    pub kind: OpKind,
    pub start: usize,
    pub len: usize,
}

impl RewriteOp {
    pub fn duplication(start: usize, len: usize) -> Self {
        RewriteOp {
            kind: OpKind::Duplication,
            start,
            len,
        }
    }

    pub fn contraction(start: usize, len: usize) -> Self {
        RewriteOp {
            kind: OpKind::Contraction,
            start,
            len,
        }
    }

    /// Same site, opposite direction.
    pub fn mirrored(self) -> Self {
        let kind = match self.kind {
            OpKind::Duplication => OpKind::Contraction,
            OpKind::Contraction => OpKind::Duplication,
        };
        RewriteOp { kind, ..self }
    }

    fn check_bounds(&self, subject: usize) -> Result<()> {
        let span = match self.kind {
            OpKind::Duplication => self.len,
            OpKind::Contraction => 2 * self.len,
        };
        if self.start == 0 || self.len == 0 || self.start + span - 1 > subject {
            return Err(Error::OutOfBounds {
                start: self.start,
                len: self.len,
                subject,
            });
        }
        Ok(())
    }
}

pub fn duplicate_raw(s: &[Symbol], start: usize, len: usize) -> Vec<Symbol> {
    let (a, rest) = s.split_at(start - 1);
    let (x, b) = rest.split_at(len);
    let mut out = Vec::with_capacity(s.len() + len);
    out.extend_from_slice(a);
    out.extend_from_slice(x);
    out.extend_from_slice(x);
    out.extend_from_slice(b);
    out
}

pub fn contract_raw(s: &[Symbol], start: usize, len: usize) -> Vec<Symbol> {
    let cut = start - 1 + len;
    let mut out = Vec::with_capacity(s.len() - len);
    out.extend_from_slice(&s[..cut]);
    out.extend_from_slice(&s[cut + len..]);
    out
}

pub fn apply_duplication(s: &[Symbol], op: RewriteOp) -> Result<TDString> {
    if op.kind != OpKind::Duplication {
        return Err(Error::WrongKind("duplication"));
    }
    op.check_bounds(s.len())?;
    Ok(TDString::from_symbols(duplicate_raw(s, op.start, op.len)))
}

pub fn apply_contraction(s: &[Symbol], op: RewriteOp) -> Result<TDString> {
    if op.kind != OpKind::Contraction {
        return Err(Error::WrongKind("contraction"));
    }
    op.check_bounds(s.len())?;
    let i = op.start - 1;
    if s[i..i + op.len] != s[i + op.len..i + 2 * op.len] {
        return Err(Error::NotASquare {
            start: op.start,
            len: op.len,
        });
    }
    Ok(TDString::from_symbols(contract_raw(s, op.start, op.len)))
}

pub fn apply(s: &[Symbol], op: RewriteOp) -> Result<TDString> {
    match op.kind {
        OpKind::Duplication => apply_duplication(s, op),
        OpKind::Contraction => apply_contraction(s, op),
    }
}

/// Ordered by `(start, len)`.
pub fn enumerate_contractions(s: &[Symbol]) -> Vec<RewriteOp> {
    find_squares(s)
        .into_iter()
        .map(|(i, d)| RewriteOp::contraction(i, d))
        .collect()
}

/// All duplications whose result has length at most `max_result_len`,
/// ordered by `(start, len)`.
pub fn enumerate_duplications(s: &[Symbol], max_result_len: usize) -> Vec<RewriteOp> {
    let n = s.len();
    let room = max_result_len.saturating_sub(n);
    let mut out = Vec::new();
    for start in 1..=n {
        for len in 1..=room.min(n + 1 - start) {
            out.push(RewriteOp::duplication(start, len));
        }
    }
    out
}

/// Range of 1-based run indices covered by the segment `[start, start+len)`.
pub fn spanned_runs(s: &[Symbol], start: usize, len: usize) -> (usize, usize) {
    let runs = rle(s);
    let (first, last) = (start, start + len - 1);
    let (mut a, mut b) = (0, 0);
    let mut end = 0;
    for (k, r) in runs.runs.iter().enumerate() {
        let begin = end + 1;
        end += r.length;
        if begin <= first && first <= end {
            a = k + 1;
        }
        if begin <= last && last <= end {
            b = k + 1;
            break;
        }
    }
    (a, b)
}

/// A single character, or `X` spanning exactly `q` runs with the first and
/// last contributing one character each.
pub fn is_normal_duplication(s: &[Symbol], op: RewriteOp, q: usize) -> Result<bool> {
    let order = crate::strings::alternation_order(s).ok_or(Error::NotAlternating)?;
    if order.len() != q {
        return Err(Error::NotAlternating);
    }
    if op.kind != OpKind::Duplication {
        return Err(Error::WrongKind("duplication"));
    }
    op.check_bounds(s.len())?;
    if op.len == 1 {
        return Ok(true);
    }
    let (a, b) = spanned_runs(s, op.start, op.len);
    if b + 1 - a != q {
        return Ok(false);
    }
    let lengths = rle(s).lengths();
    let end_of_a: usize = lengths[..a].iter().sum();
    let start_of_b: usize = lengths[..b - 1].iter().sum::<usize>() + 1;
    Ok(op.start == end_of_a && op.start + op.len - 1 == start_of_b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteTrace {
    pub source: TDString,
    pub ops: Vec<RewriteOp>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFailure {
    /// 0-based index of the failing op; equals `ops.len()` when every op
    /// applied but the final string differs from the expected target.
    pub step: usize,
    pub reason: String,
}

impl RewriteTrace {
    pub fn new(source: TDString, ops: Vec<RewriteOp>) -> Self {
        RewriteTrace { source, ops }
    }

    pub fn intermediates(&self) -> Result<Vec<TDString>> {
        let mut cur = self.source.clone();
        let mut out = Vec::with_capacity(self.ops.len());
        for &op in &self.ops {
            cur = apply(&cur, op)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn result(&self) -> Result<TDString> {
        let mut cur = self.source.clone();
        for &op in &self.ops {
            cur = apply(&cur, op)?;
        }
        Ok(cur)
    }

    /// Replays the trace against `expected_target`.
    pub fn validate(&self, expected_target: &[Symbol]) -> std::result::Result<(), TraceFailure> {
        let mut cur = self.source.clone();
        for (step, &op) in self.ops.iter().enumerate() {
            cur = apply(&cur, op).map_err(|e| TraceFailure {
                step,
                reason: e.to_string(),
            })?;
        }
        if cur.data() != expected_target {
            return Err(TraceFailure {
                step: self.ops.len(),
                reason: format!("final string {cur} differs from target"),
            });
        }
        Ok(())
    }

    /// A contraction trace from `t` to `s` turned into a duplication trace from `s` to `t`.
    pub fn reversed(&self) -> Result<RewriteTrace> {
        let mut inter = self.intermediates()?;
        let end = inter.pop().unwrap_or_else(|| self.source.clone());
        let ops = self.ops.iter().rev().map(|op| op.mirrored()).collect();
        Ok(RewriteTrace::new(end, ops))
    }
}

pub fn validate_trace(trace: &RewriteTrace, expected_target: &[Symbol]) -> bool {
    trace.validate(expected_target).is_ok()
}
