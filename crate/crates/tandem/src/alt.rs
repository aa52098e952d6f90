//! Existence of normal-duplication sequences between purely alternating
//! strings over at most five symbols.
//!
//! A pair `(S, T)` with run lengths `l_1..l_n` and `l'_1..l'_m` (jointly
//! normalized so both start with symbol 0) is a yes-instance iff there is a
//! map `f: {1..n-q+2} -> {1..m-q+2}` with
//!
//! 1. `f(1) = 1` and `f(n-q+2) = m-q+2`;
//! 2. windows: `f(i) = j` implies `l_{i+u} <= l'_{j+u}` for `u = 0..q-2`
//!    (and hence `j ≡ i mod q`);
//! 3. `f` strictly increasing, consecutive values differing by `1 + q*u`;
//! 4. for `q = 5`, every gap `j = f(i) < j' = f(i+1)` with `j' > j+1` has a
//!    position `p ≡ j+3 (mod 5)`, `j+3 <= p <= j'-3`, with
//!    `l'_p >= l_{i+3}` and `l'_{p+3} >= l_{i+1}`.
//!
//! Run indices are 1-based throughout.
//!
//! For `q = 5` a left-to-right greedy choice of `f` can paint itself into a
//! corner, so [`decide`] runs a frontier search over all feasible `f(i)`
//! instead; [`greedy_mapping`] is kept as a reference for `q <= 4`, where the
//! two coincide.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewrite::{apply_duplication, spanned_runs, RewriteOp, RewriteTrace};
use crate::strings::{alternation_order, matches, matches_runs, rle, Alphabet, Symbol, TDString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    NotAlternating,
    AlphabetMismatch,
    BoundaryMismatch,
    ResidueMismatch,
    WindowFailure,
    GapFailure,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::NotAlternating => "not-alternating",
            Reason::AlphabetMismatch => "alphabet-mismatch",
            Reason::BoundaryMismatch => "boundary-mismatch",
            Reason::ResidueMismatch => "residue-mismatch",
            Reason::WindowFailure => "window-failure",
            Reason::GapFailure => "gap-failure",
        }
    }
}

/// Run lengths of a jointly normalized pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltPair {
    pub q: usize,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub i: usize,
    pub j: usize,
    pub j_next: usize,
    /// Witness position for the `q = 5` gap condition.
    pub p: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMapping {
    /// `f[i-1] = f(i)`.
    pub f: Vec<usize>,
    pub gaps: Vec<Gap>,
}

impl RunMapping {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.f.iter().enumerate().map(|(k, &j)| (k + 1, j)).collect()
    }

    fn from_f(pair: &AltPair, f: Vec<usize>, witnesses: &HashMap<usize, usize>) -> Self {
        let gaps = f
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] > w[0] + 1)
            .map(|(k, w)| Gap {
                i: k + 1,
                j: w[0],
                j_next: w[1],
                p: if pair.q == 5 {
                    witnesses.get(&(k + 1)).copied()
                } else {
                    None
                },
            })
            .collect();
        RunMapping { f, gaps }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "verdict")]
pub enum Decision {
    Yes { mapping: RunMapping },
    No { reason: Reason },
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes { .. })
    }
}

impl AltPair {
    pub fn new(q: usize, s: Vec<usize>, t: Vec<usize>) -> Result<Self> {
        if !(1..=5).contains(&q) {
            return Err(Error::UnsupportedAlphabet(q));
        }
        if s.len() < q || t.len() < q || s.iter().chain(&t).any(|&l| l == 0) {
            return Err(Error::NotAlternating);
        }
        Ok(AltPair { q, s, t })
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn m(&self) -> usize {
        self.t.len()
    }

    /// `n - q + 2`, the size of the domain of `f`.
    pub fn domain(&self) -> usize {
        self.n() + 2 - self.q
    }

    /// `m - q + 2`, the largest admissible value of `f`.
    pub fn range(&self) -> usize {
        self.m() + 2 - self.q
    }

    pub fn window(&self, i: usize, j: usize) -> bool {
        let q = self.q;
        j >= 1
            && i >= 1
            && j % q == i % q
            && i + q - 2 <= self.n()
            && j + q - 2 <= self.m()
            && (0..q - 1).all(|u| self.s[i + u - 1] <= self.t[j + u - 1])
    }

    /// The `q = 5` gap predicate at position `p` for a gap leaving `i`.
    pub fn gap_witness(&self, i: usize, p: usize) -> bool {
        p >= 1
            && p + 3 <= self.m()
            && i + 3 <= self.n()
            && self.t[p - 1] >= self.s[i + 2]
            && self.t[p + 2] >= self.s[i]
    }

    fn string(&self, runs: &[usize]) -> TDString {
        let data = runs
            .iter()
            .enumerate()
            .flat_map(|(k, &l)| std::iter::repeat_n((k % self.q) as Symbol, l))
            .collect();
        TDString::from_symbols(data)
    }

    pub fn source_string(&self) -> TDString {
        self.string(&self.s)
    }

    pub fn target_string(&self) -> TDString {
        self.string(&self.t)
    }
}

/// Relabels both strings by the first-appearance order of `s`. Rejections
/// carry the reason code; alphabets above five symbols are an error.
pub fn normalize_pair(s: &[Symbol], t: &[Symbol]) -> Result<std::result::Result<AltPair, Reason>> {
    let (Some(so), Some(to)) = (alternation_order(s), alternation_order(t)) else {
        return Ok(Err(Reason::NotAlternating));
    };
    if Alphabet::of(s) != Alphabet::of(t) {
        return Ok(Err(Reason::AlphabetMismatch));
    }
    let q = so.len();
    if q > 5 {
        return Err(Error::UnsupportedAlphabet(q));
    }
    let rank: HashMap<Symbol, usize> = so.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let t_first = rank[&to[0]];
    if to.iter().enumerate().any(|(k, c)| rank[c] != (t_first + k) % q) {
        return Ok(Err(Reason::AlphabetMismatch));
    }
    if t_first != 0 {
        return Ok(Err(Reason::BoundaryMismatch));
    }
    let (ls, lt) = (rle(s).lengths(), rle(t).lengths());
    if ls.len() % q != lt.len() % q {
        return Ok(Err(Reason::ResidueMismatch));
    }
    Ok(Ok(AltPair { q, s: ls, t: lt }))
}

pub fn decide(s: &[Symbol], t: &[Symbol]) -> Result<Decision> {
    Ok(match normalize_pair(s, t)? {
        Ok(pair) => decide_pair(&pair),
        Err(reason) => Decision::No { reason },
    })
}

pub fn decide_pair(pair: &AltPair) -> Decision {
    if pair.n() % pair.q != pair.m() % pair.q {
        return Decision::No {
            reason: Reason::ResidueMismatch,
        };
    }
    if pair.q == 1 {
        return if pair.s[0] <= pair.t[0] {
            Decision::Yes {
                mapping: RunMapping {
                    f: vec![1, 2],
                    gaps: vec![],
                },
            }
        } else {
            Decision::No {
                reason: Reason::WindowFailure,
            }
        };
    }
    if let Some(mapping) = frontier_search(pair, true) {
        return Decision::Yes { mapping };
    }
    let reason = if pair.q == 5 && frontier_search(pair, false).is_some() {
        Reason::GapFailure
    } else {
        Reason::WindowFailure
    };
    Decision::No { reason }
}

#[derive(Debug, Clone, Copy)]
enum Pred {
    Start,
    Chain,
    Gap { from: usize, p: Option<usize> },
}

/// Smallest admissible `f(i+1)` reached through a gap from `min_f = min F_i`,
/// with the witness position when `q = 5`.
fn gap_threshold(pair: &AltPair, i: usize, min_f: usize, cond4: bool) -> Option<(usize, Option<usize>)> {
    let q = pair.q;
    if q < 5 || !cond4 {
        return Some((min_f + 1 + q, None));
    }
    let r = pair.range();
    let mut p = min_f + 3;
    while p + 3 <= r {
        if pair.gap_witness(i, p) {
            return Some((p + 3, Some(p)));
        }
        p += q;
    }
    None
}

/// Level `i` holds every feasible value of `f(i)` that is not dominated.
/// A value `j` with `j + 1` at or beyond the gap threshold of its level is
/// dominated: both its chain successor and its gap successors are already
/// reachable through the level minimum.
fn frontier_search(pair: &AltPair, cond4: bool) -> Option<RunMapping> {
    let (d, r, q) = (pair.domain(), pair.range(), pair.q);
    if r < d || !pair.window(1, 1) {
        return None;
    }
    let mut levels: Vec<Vec<(usize, Pred)>> = vec![vec![(1, Pred::Start)]];
    for i in 1..d {
        let cur = &levels[i - 1];
        let min_f = cur[0].0;
        let thr = gap_threshold(pair, i, min_f, cond4);
        let cap = r - (d - i - 1);
        let chain: Vec<usize> = cur
            .iter()
            .map(|&(j, _)| j + 1)
            .filter(|&j| j <= cap && pair.window(i + 1, j))
            .collect();
        let gap_pred = |p| Pred::Gap { from: min_f, p };
        if i + 1 == d {
            let pred = if chain.contains(&r) {
                Pred::Chain
            } else {
                match thr {
                    Some((tj, p)) if tj <= r && pair.window(d, r) => gap_pred(p),
                    _ => return None,
                }
            };
            levels.push(vec![(r, pred)]);
            break;
        }
        let first_gap =
            thr.and_then(|(tj, _)| (tj..=cap).step_by(q).find(|&j| pair.window(i + 1, j)));
        let new_min = match (chain.first(), first_gap) {
            (Some(&a), Some(b)) => a.min(b),
            (Some(&a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return None,
        };
        let bound = gap_threshold(pair, i + 1, new_min, cond4).map(|(tj, _)| tj);
        let keep = |j: usize| bound.is_none_or(|b| j + 1 < b);
        let mut next: Vec<(usize, Pred)> = chain
            .iter()
            .filter(|&&j| keep(j))
            .map(|&j| (j, Pred::Chain))
            .collect();
        if let (Some(start), Some((_, p))) = (first_gap, thr) {
            let seen: HashSet<usize> = chain.iter().copied().collect();
            let mut j = start;
            while j <= cap && keep(j) {
                if !seen.contains(&j) && pair.window(i + 1, j) {
                    next.push((j, gap_pred(p)));
                }
                j += q;
            }
            next.sort_by_key(|e| e.0);
        }
        levels.push(next);
    }
    // walk back from f(d) = r
    let mut f = vec![0; d];
    let mut witnesses = HashMap::new();
    f[d - 1] = r;
    for i in (1..d).rev() {
        let level = &levels[i];
        let k = level.binary_search_by_key(&f[i], |e| e.0).ok()?;
        f[i - 1] = match level[k].1 {
            Pred::Chain => f[i] - 1,
            Pred::Gap { from, p } => {
                if let Some(p) = p {
                    witnesses.insert(i, p);
                }
                from
            }
            Pred::Start => return None,
        };
    }
    Some(RunMapping::from_f(pair, f, &witnesses))
}

/// The left-to-right greedy choice: keep `f(i+1) = f(i) + 1` when the window
/// allows it, otherwise jump to the smallest admissible value past a gap.
pub fn greedy_mapping(pair: &AltPair) -> Option<RunMapping> {
    let (d, r, q) = (pair.domain(), pair.range(), pair.q);
    if q == 1 {
        return (pair.s[0] <= pair.t[0]).then(|| RunMapping {
            f: vec![1, 2],
            gaps: vec![],
        });
    }
    if r < d || !pair.window(1, 1) {
        return None;
    }
    let mut f = vec![1];
    let mut witnesses = HashMap::new();
    let mut j = 1;
    for i in 2..=d {
        if pair.window(i, j + 1) && (i < d || j + 1 == r) {
            j += 1;
            f.push(j);
            continue;
        }
        let (mut jn, p) = gap_threshold(pair, i - 1, j, true)?;
        while jn <= r && !pair.window(i, jn) {
            jn += q;
        }
        if jn > r {
            return None;
        }
        if i == d && jn != r {
            if !pair.window(i, r) {
                return None;
            }
            jn = r;
        }
        if let Some(p) = p {
            witnesses.insert(i - 1, p);
        }
        j = jn;
        f.push(j);
    }
    (j == r).then(|| RunMapping::from_f(pair, f, &witnesses))
}

/// Checks conditions 1-4 for `mapping` independently of how it was built.
pub fn validate_mapping(pair: &AltPair, mapping: &RunMapping) -> std::result::Result<(), String> {
    let (d, r, q) = (pair.domain(), pair.range(), pair.q);
    let f = &mapping.f;
    if f.len() != d {
        return Err(format!("f has {} values, expected {d}", f.len()));
    }
    if f[0] != 1 || f[d - 1] != r {
        return Err("endpoints: f(1) must be 1 and f(n-q+2) must be m-q+2".into());
    }
    if q == 1 {
        return if pair.s[0] <= pair.t[0] {
            Ok(())
        } else {
            Err("single run is longer in the source".into())
        };
    }
    for (k, &j) in f.iter().enumerate() {
        if !pair.window(k + 1, j) {
            return Err(format!("window fails at f({}) = {j}", k + 1));
        }
    }
    for (k, w) in f.windows(2).enumerate() {
        let i = k + 1;
        if w[1] <= w[0] || (w[1] - w[0] - 1) % q != 0 {
            return Err(format!("step f({i}) = {} -> f({}) = {}", w[0], i + 1, w[1]));
        }
        if q == 5 && w[1] > w[0] + 1 {
            let ok = (w[0] + 3..=w[1] - 3)
                .step_by(5)
                .any(|p| pair.gap_witness(i, p));
            if !ok {
                return Err(format!("no gap witness between f({i}) = {} and {}", w[0], w[1]));
            }
        }
    }
    for g in &mapping.gaps {
        if let Some(p) = g.p {
            if !(g.j + 3 <= p && p + 3 <= g.j_next && (p - g.j - 3) % 5 == 0 && pair.gap_witness(g.i, p)) {
                return Err(format!("recorded witness p = {p} invalid for gap at i = {}", g.i));
            }
        }
    }
    Ok(())
}

/// Length-vector form of the type-1 normal duplication "at run a": the last
/// character of run `a` through the first character of run `a+q-1`.
fn type1_op(c: &[usize], a: usize, q: usize) -> Result<RewriteOp> {
    if a == 0 || a + q - 1 > c.len() {
        return Err(Error::Construction(format!("type-1 at run {a} out of range")));
    }
    let start: usize = c[..a].iter().sum();
    let len = 2 + c[a..a + q - 2].iter().sum::<usize>();
    Ok(RewriteOp::duplication(start, len))
}

fn apply_type1(c: &mut Vec<usize>, a: usize, q: usize) {
    let mut block = vec![1, 1];
    block.extend_from_slice(&c[a..a + q - 2]);
    let at = a + q - 2;
    c.splice(at..at, block);
}

fn push_type1(ops: &mut Vec<RewriteOp>, c: &mut Vec<usize>, a: usize, q: usize) -> Result<()> {
    ops.push(type1_op(c, a, q)?);
    apply_type1(c, a, q);
    Ok(())
}

/// Single-character duplications raising every run of `c` to `target`.
fn extend_runs(ops: &mut Vec<RewriteOp>, c: &mut [usize], target: &[usize]) {
    let mut end = 0;
    for k in 0..c.len() {
        end += c[k];
        while c[k] < target[k] {
            ops.push(RewriteOp::duplication(end, 1));
            c[k] += 1;
            end += 1;
        }
    }
}

/// Run indices (current coordinates) of the type-1 ops filling one gap.
fn gap_ops(q: usize, g: &Gap) -> Result<Vec<usize>> {
    let j = g.j;
    let u = (g.j_next - j - 1) / q;
    if q < 5 {
        let mut ops = vec![j];
        ops.extend(std::iter::repeat_n(j + q - 2, u - 1));
        return Ok(ops);
    }
    if u == 1 {
        return Ok(vec![j]);
    }
    let p = g
        .p
        .ok_or_else(|| Error::InvalidMapping(format!("gap at i = {} lacks a witness", g.i)))?;
    let v = (p - (j + 3)) / 5;
    let mut ops = Vec::with_capacity(u);
    if v == 0 {
        ops.extend([j, j + 3]);
        ops.extend(std::iter::repeat_n(j + 6, u - 2));
    } else if v == u - 1 {
        ops.extend([j, j + 2]);
        ops.extend(std::iter::repeat_n(j + 3, u - 2));
    } else {
        ops.extend([j, j + 3, j + 2]);
        ops.extend(std::iter::repeat_n(j + 3, v - 1));
        ops.extend(std::iter::repeat_n(j + 6 + 5 * v, u - 2 - v));
    }
    Ok(ops)
}

fn synthesize_pair(pair: &AltPair, mapping: &RunMapping) -> Result<Vec<RewriteOp>> {
    let q = pair.q;
    let mut c = pair.s.clone();
    let mut ops = Vec::new();
    for g in &mapping.gaps {
        for a in gap_ops(q, g)? {
            push_type1(&mut ops, &mut c, a, q)?;
        }
    }
    if !matches_runs(&c, &pair.t) {
        return Err(Error::Construction("group insertion does not match target".into()));
    }
    extend_runs(&mut ops, &mut c, &pair.t);
    Ok(ops)
}

/// Normal-duplication trace from `s` to `t` realizing `mapping`.
pub fn synthesize_witness(s: &TDString, t: &TDString, mapping: &RunMapping) -> Result<RewriteTrace> {
    let pair = match normalize_pair(s, t)? {
        Ok(p) => p,
        Err(reason) => return Err(Error::InvalidMapping(format!("pair rejected: {}", reason.code()))),
    };
    validate_mapping(&pair, mapping).map_err(Error::InvalidMapping)?;
    let trace = RewriteTrace::new(s.clone(), synthesize_pair(&pair, mapping)?);
    trace
        .validate(t)
        .map_err(|e| Error::Construction(format!("replay failed at step {}: {}", e.step, e.reason)))?;
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `X` inside one run: extensions only.
    Extension,
    /// Type-1 at the first run of `X`, then shifted copies (also every `q <= 4` case).
    Direct,
    /// `q = 5`: ops at X-relative runs 1, 3, then 4.
    First,
    /// `q = 5`: ops at X-relative runs 6, 8, then 9.
    Second,
    /// Neither fixed pattern matched; fell back to decide and synthesize.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    pub trace: RewriteTrace,
    pub target: TDString,
    pub variant: Variant,
    /// Number of leading ops that are group insertions (type 1).
    pub normal_ops: usize,
    /// Runs spanned by the duplicated segment.
    pub runs: usize,
}

/// Replaces an arbitrary duplication (whose segment spans `k` runs with
/// `k mod q <= 1`) by normal duplications followed by run extensions.
pub fn simulate_duplication_normally(s: &TDString, op: RewriteOp) -> Result<Simulation> {
    let order = alternation_order(s).ok_or(Error::NotAlternating)?;
    let q = order.len();
    if q > 5 {
        return Err(Error::UnsupportedAlphabet(q));
    }
    let target = apply_duplication(s, op)?;
    let (a, b) = spanned_runs(s, op.start, op.len);
    let k = b + 1 - a;
    if k % q > 1 {
        return Err(Error::RunCountViolation { runs: k, q });
    }
    let goal = rle(&target).lengths();
    let base = rle(s).lengths();
    // a segment with k ≡ 1 (mod q) is simulated by the one over its first k-1 runs
    let groups = if k % q == 1 { (k - 1) / q } else { k / q };
    let len_at = |x: usize| base[a + x - 2];
    let mut plans: Vec<(Variant, Vec<usize>)> = Vec::new();
    if groups == 0 {
        plans.push((Variant::Extension, vec![]));
    } else if q < 5 || groups == 1 {
        let mut rel = vec![1];
        rel.extend(std::iter::repeat_n(q - 1, groups - 1));
        plans.push((Variant::Direct, rel));
    } else {
        let first = || {
            let mut rel = vec![1, 3];
            rel.extend(std::iter::repeat_n(4, groups - 2));
            (Variant::First, rel)
        };
        let second = || {
            let mut rel = vec![6, 8];
            rel.extend(std::iter::repeat_n(9, groups - 2));
            (Variant::Second, rel)
        };
        if groups == 2 {
            plans.push(if len_at(4) <= len_at(9) { first() } else { second() });
        } else {
            if len_at(4) <= len_at(5 * groups - 1) {
                plans.push(first());
            }
            if len_at(9) <= len_at(4) {
                plans.push(second());
            }
        }
    }
    for (variant, rel) in plans {
        let mut c = base.clone();
        let mut ops = Vec::new();
        for x in rel {
            push_type1(&mut ops, &mut c, a + x - 1, q)?;
        }
        if matches_runs(&c, &goal) {
            let normal_ops = ops.len();
            extend_runs(&mut ops, &mut c, &goal);
            return Ok(Simulation {
                trace: RewriteTrace::new(s.clone(), ops),
                target,
                variant,
                normal_ops,
                runs: k,
            });
        }
    }
    let Decision::Yes { mapping } = decide(s, &target)? else {
        return Err(Error::Construction("no normal sequence reaches the duplication result".into()));
    };
    let trace = synthesize_witness(s, &target, &mapping)?;
    let normal_ops = trace.ops.iter().filter(|o| o.len > 1).count();
    Ok(Simulation {
        trace,
        target,
        variant: Variant::General,
        normal_ops,
        runs: k,
    })
}

/// Every normal duplication applicable to a purely alternating `x` over `q`
/// symbols: one per character position, plus one type-1 per admissible run.
pub fn normal_duplications(x: &[Symbol], q: usize) -> Vec<RewriteOp> {
    let c = rle(x).lengths();
    let mut ops: Vec<RewriteOp> = (1..=x.len()).map(|i| RewriteOp::duplication(i, 1)).collect();
    if q >= 2 {
        for a in 1..=c.len().saturating_sub(q - 1) {
            if let Ok(op) = type1_op(&c, a, q) {
                ops.push(op);
            }
        }
    }
    ops.sort();
    ops
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSearch {
    /// True when no sequence within the op limit reached a string matched by `XX`.
    pub confirmed: bool,
    pub max_ops: usize,
    pub explored: usize,
    pub witness: Option<Vec<RewriteOp>>,
    pub result: Option<TDString>,
}

/// Searches sequences of at most `max_ops` normal duplications from `x` for
/// a result `T'` with `T' ⪯ XX`.
pub fn search_normal_sequences(x: &TDString, max_ops: usize) -> Result<NormalSearch> {
    let q = alternation_order(x).ok_or(Error::NotAlternating)?.len();
    let xx: Vec<Symbol> = x.iter().chain(x.iter()).copied().collect();
    let mut layer: Vec<(Vec<Symbol>, Vec<RewriteOp>)> = vec![(x.to_vec(), vec![])];
    let mut seen: HashSet<Vec<Symbol>> = HashSet::from([x.to_vec()]);
    let mut explored = 0;
    for _ in 0..max_ops {
        let mut next = Vec::new();
        for (y, path) in &layer {
            for op in normal_duplications(y, q) {
                explored += 1;
                let z = crate::rewrite::duplicate_raw(y, op.start, op.len);
                let mut p = path.clone();
                p.push(op);
                if matches(&z, &xx) {
                    return Ok(NormalSearch {
                        confirmed: false,
                        max_ops,
                        explored,
                        witness: Some(p),
                        result: Some(TDString::from_symbols(z)),
                    });
                }
                if z.len() < xx.len() && seen.insert(z.clone()) {
                    next.push((z, p));
                }
            }
        }
        layer = next;
    }
    Ok(NormalSearch {
        confirmed: true,
        max_ops,
        explored,
        witness: None,
        result: None,
    })
}

/// `0^2 1 2^2 3 4^2 5 0 1^2 2 3^2 4 5^2`.
pub fn sixary_string() -> TDString {
    TDString::parse("001223445011233455").expect("static")
}

/// Five-symbol ten-run string that plays the same role for `q = 5`.
pub fn fiveary_analogue() -> TDString {
    TDString::parse("0012234401122334").expect("static")
}

/// Searches all sequences of at most two normal duplications on the six-symbol
/// string above for a result matched by `XX`.
pub fn check_sixary_counterexample() -> NormalSearch {
    search_normal_sequences(&sixary_string(), 2).expect("static string alternates")
}
