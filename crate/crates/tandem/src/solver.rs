//! Exhaustive breadth-first search over contractions from the target toward
//! the source. Every contraction shortens the string, so the search always
//! terminates; a visited-state budget turns runaway instances into an
//! explicit `ExhaustedBudget` verdict instead of a wrong answer.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewrite::{contract_raw, duplicate_raw, RewriteOp, RewriteTrace};
use crate::strings::{find_squares, is_square_free, is_subsequence, Symbol, TDString};

pub const DEFAULT_BUDGET: usize = 5_000_000;

/// Frontiers smaller than this are expanded on the calling thread.
const PARALLEL_THRESHOLD: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_visited: usize,
    pub max_depth: Option<usize>,
    pub collect_trace: bool,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_visited: DEFAULT_BUDGET,
            max_depth: None,
            collect_trace: true,
            parallel: false,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(max_visited: usize) -> Self {
        SearchConfig {
            max_visited: max_visited.max(1),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Reachable,
    /// Not reachable, or not reachable within `max_depth` when one is set.
    Unreachable,
    ExhaustedBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub distance: Option<usize>,
    pub visited_count: usize,
    /// Contractions leading from the target down to the source.
    pub trace: Option<RewriteTrace>,
}

impl SearchResult {
    pub fn is_reachable(&self) -> bool {
        self.verdict == Verdict::Reachable
    }

    /// The trace as duplications from the source up to the target.
    pub fn duplication_trace(&self) -> Option<RewriteTrace> {
        self.trace.as_ref().and_then(|t| t.reversed().ok())
    }
}

/// Moves from `x`: contractions, or duplications when searching forward.
#[derive(Clone, Copy)]
enum Direction {
    Contract,
    Expand { max_len: usize },
}

fn successors(x: &[Symbol], dir: Direction, prune: &dyn Fn(&[Symbol]) -> bool) -> Vec<(RewriteOp, Vec<Symbol>)> {
    match dir {
        Direction::Contract => find_squares(x)
            .into_iter()
            .map(|(i, d)| (RewriteOp::contraction(i, d), contract_raw(x, i, d)))
            .filter(|(_, y)| prune(y))
            .collect(),
        Direction::Expand { max_len } => crate::rewrite::enumerate_duplications(x, max_len)
            .into_iter()
            .map(|op| (op, duplicate_raw(x, op.start, op.len)))
            .filter(|(_, y)| prune(y))
            .collect(),
    }
}

struct Bfs {
    states: Vec<Vec<Symbol>>,
    parent: Vec<Option<(usize, RewriteOp)>>,
    index: HashMap<Vec<Symbol>, usize>,
    truncated: bool,
    exhausted: bool,
}

impl Bfs {
    /// Layered search from `root`. Stops when `goal` is discovered; returns
    /// its state id and depth.
    fn run(
        root: &[Symbol],
        goal: Option<&[Symbol]>,
        dir: Direction,
        prune: &(dyn Fn(&[Symbol]) -> bool + Sync),
        cfg: &SearchConfig,
    ) -> (Bfs, Option<(usize, usize)>) {
        let mut bfs = Bfs {
            states: vec![root.to_vec()],
            parent: vec![None],
            index: HashMap::from([(root.to_vec(), 0)]),
            truncated: false,
            exhausted: false,
        };
        if goal == Some(root) {
            return (bfs, Some((0, 0)));
        }
        let mut frontier = vec![0usize];
        let mut depth = 0;
        while !frontier.is_empty() {
            if cfg.max_depth.is_some_and(|m| depth >= m) {
                bfs.truncated = frontier
                    .iter()
                    .any(|&id| !successors(&bfs.states[id], dir, prune).is_empty());
                break;
            }
            depth += 1;
            let expanded: Vec<Vec<(RewriteOp, Vec<Symbol>)>> =
                if cfg.parallel && frontier.len() >= PARALLEL_THRESHOLD {
                    frontier
                        .par_iter()
                        .map(|&id| successors(&bfs.states[id], dir, prune))
                        .collect()
                } else {
                    frontier
                        .iter()
                        .map(|&id| successors(&bfs.states[id], dir, prune))
                        .collect()
                };
            let mut next = Vec::new();
            for (&pid, children) in frontier.iter().zip(expanded) {
                for (op, y) in children {
                    if bfs.index.contains_key(&y) {
                        continue;
                    }
                    if bfs.states.len() >= cfg.max_visited {
                        bfs.exhausted = true;
                        return (bfs, None);
                    }
                    let id = bfs.states.len();
                    let hit = goal == Some(y.as_slice());
                    bfs.index.insert(y.clone(), id);
                    bfs.states.push(y);
                    bfs.parent.push(Some((pid, op)));
                    if hit {
                        return (bfs, Some((id, depth)));
                    }
                    next.push(id);
                }
            }
            frontier = next;
        }
        (bfs, None)
    }

    fn path(&self, mut id: usize) -> Vec<RewriteOp> {
        let mut ops = Vec::new();
        while let Some((p, op)) = self.parent[id] {
            ops.push(op);
            id = p;
        }
        ops.reverse();
        ops
    }
}

fn check_alphabets(s: &TDString, t: &TDString) -> Result<()> {
    if s.alphabet() != t.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

fn search(s: &TDString, t: &TDString, cfg: &SearchConfig) -> Result<SearchResult> {
    check_alphabets(s, t)?;
    let goal = s.data();
    let prune = |y: &[Symbol]| is_subsequence(goal, y);
    let (bfs, hit) = Bfs::run(t, Some(goal), Direction::Contract, &prune, cfg);
    Ok(finish(bfs, hit, t, cfg))
}

fn finish(bfs: Bfs, hit: Option<(usize, usize)>, root: &TDString, cfg: &SearchConfig) -> SearchResult {
    let visited_count = bfs.states.len();
    match hit {
        Some((id, depth)) => SearchResult {
            verdict: Verdict::Reachable,
            distance: Some(depth),
            visited_count,
            trace: cfg
                .collect_trace
                .then(|| RewriteTrace::new(root.clone(), bfs.path(id))),
        },
        None => SearchResult {
            verdict: if bfs.exhausted {
                Verdict::ExhaustedBudget
            } else {
                Verdict::Unreachable
            },
            distance: None,
            visited_count,
            trace: None,
        },
    }
}

/// Whether `s` is a contraction descendant of `t` (equivalently `s =>* t`).
pub fn oracle_exists(s: &TDString, t: &TDString, cfg: &SearchConfig) -> Result<SearchResult> {
    search(s, t, cfg)
}

/// Minimal number of duplications turning `s` into `t`. Breadth-first layers
/// make the first hit minimal; ties go to the lexicographically smallest
/// contraction sequence under `(start, len)` order.
pub fn oracle_distance(s: &TDString, t: &TDString, cfg: &SearchConfig) -> Result<SearchResult> {
    search(s, t, cfg)
}

/// Forward search over duplications from `s`, pruned to subsequences of `t`.
pub fn forward_exists(s: &TDString, t: &TDString, cfg: &SearchConfig) -> Result<SearchResult> {
    check_alphabets(s, t)?;
    let goal = t.data();
    let prune = |y: &[Symbol]| is_subsequence(y, goal);
    let dir = Direction::Expand { max_len: t.len() };
    let (bfs, hit) = Bfs::run(s, Some(goal), dir, &prune, cfg);
    Ok(finish(bfs, hit, s, cfg))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub strings: BTreeSet<TDString>,
    /// False when the budget or the depth cap cut the enumeration short.
    pub complete: bool,
}

pub fn contraction_closure(t: &TDString, cfg: &SearchConfig) -> Closure {
    let prune = |_: &[Symbol]| true;
    let (bfs, _) = Bfs::run(t, None, Direction::Contract, &prune, cfg);
    Closure {
        complete: !bfs.exhausted && !bfs.truncated,
        strings: bfs.states.into_iter().map(TDString::from_symbols).collect(),
    }
}

/// Square-free members of the contraction closure.
pub fn compute_roots(t: &TDString, cfg: &SearchConfig) -> Closure {
    let c = contraction_closure(t, cfg);
    Closure {
        strings: c.strings.into_iter().filter(|x| is_square_free(x)).collect(),
        complete: c.complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::validate_trace;

    fn t(s: &str) -> TDString {
        TDString::parse(s).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn worked_example() {
        let r = oracle_distance(&t("0121"), &t("0101211"), &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Reachable);
        assert_eq!(r.distance, Some(2));
        let tr = r.trace.unwrap();
        assert!(validate_trace(&tr, &t("0121")));
        assert!(validate_trace(&tr.reversed().unwrap(), &t("0101211")));
    }

    #[test]
    fn small_distances() {
        assert_eq!(oracle_distance(&t("01"), &t("0101"), &cfg()).unwrap().distance, Some(1));
        assert_eq!(oracle_distance(&t("010"), &t("0110"), &cfg()).unwrap().distance, Some(1));
        assert_eq!(oracle_distance(&t("010"), &t("010"), &cfg()).unwrap().distance, Some(0));
    }

    #[test]
    fn unreachable_and_errors() {
        let r = oracle_exists(&t("0110"), &t("01010"), &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Unreachable);
        assert_eq!(r.distance, None);
        assert_eq!(
            oracle_exists(&t("01"), &t("012"), &cfg()),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn budget_is_reported() {
        let r = oracle_exists(&t("012"), &t("0120120121201"), &SearchConfig::with_budget(3)).unwrap();
        assert_eq!(r.verdict, Verdict::ExhaustedBudget);
    }

    #[test]
    fn depth_cap() {
        let c = SearchConfig {
            max_depth: Some(1),
            ..cfg()
        };
        let r = oracle_distance(&t("0121"), &t("0101211"), &c).unwrap();
        assert_eq!(r.verdict, Verdict::Unreachable);
    }

    #[test]
    fn closures() {
        let set = |c: Closure| c.strings.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(set(contraction_closure(&t("01010"), &cfg())), vec!["010", "01010"]);
        assert_eq!(set(contraction_closure(&t("ab"), &cfg())), vec!["ab"]);
        assert_eq!(set(contraction_closure(&t("aa"), &cfg())), vec!["a", "aa"]);
        assert_eq!(set(compute_roots(&t("0000"), &cfg())), vec!["0"]);
        assert_eq!(set(compute_roots(&t("012"), &cfg())), vec!["012"]);
        let roots = compute_roots(&t("0101211"), &cfg());
        assert!(roots.complete);
        assert_eq!(set(roots), vec!["0121"]);
    }

    #[test]
    fn partial_closure_flagged() {
        let c = contraction_closure(&t("00000000"), &SearchConfig::with_budget(2));
        assert!(!c.complete);
    }

    #[test]
    fn parallel_matches_sequential() {
        let s = t("0120");
        let target = t("01201201212012001");
        let seq = oracle_distance(&s, &target, &cfg()).unwrap();
        let par = oracle_distance(
            &s,
            &target,
            &SearchConfig {
                parallel: true,
                ..cfg()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn forward_agrees() {
        assert!(forward_exists(&t("0121"), &t("0101211"), &cfg()).unwrap().is_reachable());
        assert!(!forward_exists(&t("0110"), &t("01010"), &cfg()).unwrap().is_reachable());
    }
}
