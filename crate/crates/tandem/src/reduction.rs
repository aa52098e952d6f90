//! Block-exemplar pairs and their encoding into strings over `{0,1,2,Ł,$}`.
//!
//! An instance `(t, p, X, B_0..B_t, I_1..I_p, Ł)` yields
//!
//! ```text
//! S = 𝓑_t X Ł
//! T = 𝓑_t^0 X^dup Ł 𝓑_t^1 X Ł 𝓑_1^01 X_1 Ł 𝓑_t^1 X Ł ... 𝓑_p^01 X_p Ł 𝓑_t^1 X Ł
//! ```
//!
//! with `𝓑_j = B_j .. B_2 B_1 B_0`, superscripts naming which of `B_1`, `B_0`
//! are fully doubled, and `X_j = dup(X, I_j)`. Both strings factor into
//! chunks (`Ł`, `B_i` for `i >= 2`, and doubled variants of `B_0`, `B_1`,
//! `X`). The encoding µ replaces every chunk by a slice of a ternary
//! square-free master string, terminating `B` chunks with `$`.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewrite::{contract_raw, RewriteOp};
use crate::squarefree::generate;
use crate::strings::{
    dup, is_exemplar, to_text, Alphabet, Symbol, TDString, DOLLAR, ELL,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockExemplarInstance {
    pub t: usize,
    pub p: usize,
    pub x: Vec<Symbol>,
    /// `B_0 ..= B_t`.
    pub b: Vec<Vec<Symbol>>,
    /// `I_1 ..= I_p`, 1-based indices into `X`.
    pub i_sets: Vec<Vec<usize>>,
    pub ell: Symbol,
}

/// File form: `{t, p, X, B: [...], I: [[...]], L}` with strings in the text alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub t: usize,
    pub p: usize,
    #[serde(rename = "X")]
    pub x: String,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "I")]
    pub i: Vec<Vec<usize>>,
    #[serde(rename = "L", default = "default_ell")]
    pub l: String,
}

fn default_ell() -> String {
    "L".into()
}

fn parse_field(name: &str, text: &str) -> Result<Vec<Symbol>> {
    TDString::parse(text)
        .map(TDString::into_data)
        .map_err(|e| Error::InvalidInstance(format!("field {name}: {e}")))
}

impl TryFrom<&InstanceFile> for BlockExemplarInstance {
    type Error = Error;
    fn try_from(f: &InstanceFile) -> Result<Self> {
        let ell = parse_field("L", &f.l)?;
        if ell.len() != 1 {
            return Err(Error::InvalidInstance("field L: must be a single symbol".into()));
        }
        let b = f
            .b
            .iter()
            .enumerate()
            .map(|(k, s)| parse_field(&format!("B[{k}]"), s))
            .collect::<Result<Vec<_>>>()?;
        let inst = BlockExemplarInstance {
            t: f.t,
            p: f.p,
            x: parse_field("X", &f.x)?,
            b,
            i_sets: f.i.clone(),
            ell: ell[0],
        };
        inst.validate()?;
        Ok(inst)
    }
}

impl From<&BlockExemplarInstance> for InstanceFile {
    fn from(inst: &BlockExemplarInstance) -> Self {
        InstanceFile {
            t: inst.t,
            p: inst.p,
            x: to_text(&inst.x),
            b: inst.b.iter().map(|b| to_text(b)).collect(),
            i: inst.i_sets.clone(),
            l: to_text(&[inst.ell]),
        }
    }
}

impl BlockExemplarInstance {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if self.t < 2 {
            return bad(format!("t = {} must exceed 1", self.t));
        }
        if self.p == 0 || self.p >= self.t {
            return bad(format!("p = {} must satisfy 0 < p < t = {}", self.p, self.t));
        }
        if self.b.len() != self.t + 1 {
            return bad(format!("B lists {} blocks, expected t + 1 = {}", self.b.len(), self.t + 1));
        }
        if self.x.len() < 2 || !is_exemplar(&self.x) {
            return bad("X must be an exemplar string of length > 1".into());
        }
        for (i, b) in self.b.iter().enumerate() {
            if !is_exemplar(b) {
                return bad(format!("B[{i}] is not exemplar"));
            }
            if i < 2 && b.len() < 2 {
                return bad(format!("|B[{i}]| must exceed 1"));
            }
            if i >= 2 && b.len() != 1 {
                return bad(format!("|B[{i}]| must be 1"));
            }
        }
        let mut seen = BTreeSet::from([self.ell]);
        for part in std::iter::once(&self.x).chain(&self.b) {
            for &c in part {
                if !seen.insert(c) {
                    return bad(format!(
                        "alphabets of X, B and L must be pairwise disjoint (symbol {:?} repeats)",
                        to_text(&[c])
                    ));
                }
            }
        }
        if self.i_sets.len() != self.p {
            return bad(format!("I lists {} sets, expected p = {}", self.i_sets.len(), self.p));
        }
        let mut distinct = BTreeSet::new();
        for (j, set) in self.i_sets.iter().enumerate() {
            let s: BTreeSet<usize> = set.iter().copied().collect();
            if s.len() != set.len() {
                return bad(format!("I[{}] repeats an index", j + 1));
            }
            if s.is_empty() || s.len() == self.x.len() {
                return bad(format!("I[{}] must be a nonempty proper subset of [|X|]", j + 1));
            }
            if s.iter().any(|&i| i == 0 || i > self.x.len()) {
                return bad(format!("I[{}] has an index outside 1..={}", j + 1, self.x.len()));
            }
            if !distinct.insert(s) {
                return bad(format!("I[{}] duplicates an earlier set", j + 1));
            }
        }
        Ok(())
    }

    fn max_head(&self) -> usize {
        self.b[0].len().max(self.b[1].len())
    }
}

/// `t = 2, p = 1, X = xy, B = (ab, cd, e), I_1 = {1}`.
pub fn tiny_instance() -> BlockExemplarInstance {
    let sym = |s: &str| TDString::parse(s).expect("static").into_data();
    BlockExemplarInstance {
        t: 2,
        p: 1,
        x: sym("xy"),
        b: vec![sym("ab"), sym("cd"), sym("e")],
        i_sets: vec![vec![1]],
        ell: ELL,
    }
}

/// Valid random instance; blocks take consecutive letters from `a..z` in a
/// shuffled order, index sets are distinct random proper subsets.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    t: usize,
    p: usize,
    x_len: usize,
    b_len: usize,
) -> Result<BlockExemplarInstance> {
    let letters = x_len + 2 * b_len + t.saturating_sub(1);
    if letters > 26 {
        return Err(Error::InvalidInstance(format!("needs {letters} letters, only 26 available")));
    }
    if x_len < 2 || x_len >= usize::BITS as usize || (1usize << x_len) - 2 < p {
        return Err(Error::InvalidInstance(format!("|X| = {x_len} cannot host {p} distinct sets")));
    }
    let mut pool: Vec<Symbol> = (10..36).collect();
    pool.shuffle(rng);
    let mut take = |k: usize| pool.drain(..k).collect::<Vec<_>>();
    let x = take(x_len);
    let mut b = vec![take(b_len), take(b_len)];
    for _ in 2..=t {
        b.push(take(1));
    }
    let mut sets = BTreeSet::new();
    while sets.len() < p {
        let mask = rng.gen_range(1..(1usize << x_len) - 1);
        sets.insert((1..=x_len).filter(|i| mask >> (i - 1) & 1 == 1).collect::<Vec<_>>());
    }
    let mut i_sets: Vec<Vec<usize>> = sets.into_iter().collect();
    i_sets.shuffle(rng);
    let inst = BlockExemplarInstance {
        t,
        p,
        x,
        b,
        i_sets,
        ell: ELL,
    };
    inst.validate()?;
    Ok(inst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    B0,
    B1,
    X,
}

/// An element of the chunk set. Family chunks carry their duplication set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chunk {
    Ell,
    /// `B_i` for `i >= 2`.
    Block(usize),
    Family(Family, Vec<usize>),
}

impl Chunk {
    pub fn family(&self) -> Option<Family> {
        match self {
            Chunk::Family(f, _) => Some(*f),
            _ => None,
        }
    }
}

fn all_indices(len: usize) -> Vec<usize> {
    (1..=len).collect()
}

fn family_base(inst: &BlockExemplarInstance, f: Family) -> &[Symbol] {
    match f {
        Family::B0 => &inst.b[0],
        Family::B1 => &inst.b[1],
        Family::X => &inst.x,
    }
}

/// `𝓑_j` with the requested doubling of `B_1` and `B_0`.
fn b_cal(inst: &BlockExemplarInstance, j: usize, dup1: bool, dup0: bool) -> Vec<Chunk> {
    let mut out: Vec<Chunk> = (2..=j).rev().map(Chunk::Block).collect();
    let full = |f: Family, on: bool| {
        if on {
            Chunk::Family(f, all_indices(family_base(inst, f).len()))
        } else {
            Chunk::Family(f, vec![])
        }
    };
    out.push(full(Family::B1, dup1));
    out.push(full(Family::B0, dup0));
    out
}

pub fn s_chunks(inst: &BlockExemplarInstance) -> Vec<Chunk> {
    let mut out = b_cal(inst, inst.t, false, false);
    out.extend([Chunk::Family(Family::X, vec![]), Chunk::Ell]);
    out
}

pub fn t_chunks(inst: &BlockExemplarInstance) -> Vec<Chunk> {
    let x_all = Chunk::Family(Family::X, all_indices(inst.x.len()));
    let x_plain = Chunk::Family(Family::X, vec![]);
    let cluster = {
        let mut c = b_cal(inst, inst.t, true, false);
        c.extend([x_plain, Chunk::Ell]);
        c
    };
    let mut out = b_cal(inst, inst.t, false, true);
    out.extend([x_all, Chunk::Ell]);
    out.extend(cluster.iter().cloned());
    for (j, set) in inst.i_sets.iter().enumerate() {
        out.extend(b_cal(inst, j + 1, true, true));
        let mut set = set.clone();
        set.sort_unstable();
        out.extend([Chunk::Family(Family::X, set), Chunk::Ell]);
        out.extend(cluster.iter().cloned());
    }
    out
}

pub fn chunk_exemplar(inst: &BlockExemplarInstance, c: &Chunk) -> Vec<Symbol> {
    match c {
        Chunk::Ell => vec![inst.ell],
        Chunk::Block(i) => inst.b[*i].clone(),
        Chunk::Family(f, set) => dup(family_base(inst, *f), set).expect("indices within base"),
    }
}

fn concat<F: Fn(&Chunk) -> Vec<Symbol>>(chunks: &[Chunk], image: F) -> TDString {
    TDString::from_symbols(chunks.iter().flat_map(image).collect())
}

/// `(S, T)` assembled chunk by chunk.
pub fn build_block_exemplar(inst: &BlockExemplarInstance) -> Result<(TDString, TDString)> {
    inst.validate()?;
    let img = |c: &Chunk| chunk_exemplar(inst, c);
    Ok((concat(&s_chunks(inst), img), concat(&t_chunks(inst), img)))
}

/// Adjacent chunks of `T` use disjoint symbol sets.
pub fn adjacent_chunks_disjoint(inst: &BlockExemplarInstance) -> bool {
    let alph: Vec<Alphabet> = t_chunks(inst)
        .iter()
        .map(|c| Alphabet::of(&chunk_exemplar(inst, c)))
        .collect();
    alph.windows(2)
        .all(|w| w[0].symbols().iter().all(|c| !w[1].contains(*c)))
}

/// The stated requirement `|X| + t^2 + t(5 + max(|B_0|, |B_1|))`.
pub fn stated_master_bound(inst: &BlockExemplarInstance) -> usize {
    inst.x.len() + inst.t * inst.t + inst.t * (5 + inst.max_head())
}

/// Length of master string used by [`FiveAryInstance::build`]. Slicing
/// takes at most `max+1` for `B~_0`, two more per later block, and four more
/// for the final block (a ternary square-free word has no 0-free factor of
/// length 4), which can exceed the stated bound when `max > 3t - 3`.
pub fn master_length(inst: &BlockExemplarInstance) -> usize {
    let t = inst.t;
    let worst = inst.x.len() + (t + 1) * inst.max_head() + t * t + 2 * t + 3;
    worst.max(stated_master_bound(inst))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicedBlocks {
    pub x_tilde: TDString,
    /// `B~_0 ..= B~_t`.
    pub b_tilde: Vec<TDString>,
    /// Characters taken from the end of the master string.
    pub consumed: usize,
}

/// Cuts `X~` and then `B~_0, .., B~_t` off the end of `o`: each block is the
/// shortest remaining suffix longer than its predecessor (at least
/// `max(|B_0|, |B_1|)` for the first) that does not start with 0, except the
/// last, which must start with 0.
pub fn slice_blocks(inst: &BlockExemplarInstance, o: &[Symbol]) -> Result<SlicedBlocks> {
    let short = || Error::MasterTooShort {
        required: master_length(inst),
        actual: o.len(),
    };
    let xl = inst.x.len();
    if o.len() < xl {
        return Err(short());
    }
    let mut rem = &o[..o.len() - xl];
    let mut blocks: Vec<TDString> = Vec::with_capacity(inst.t + 1);
    for i in 0..=inst.t {
        let mut len = match blocks.last() {
            None => inst.max_head(),
            Some(prev) => prev.len() + 1,
        };
        loop {
            if len > rem.len() {
                return Err(short());
            }
            let first = rem[rem.len() - len];
            if (first == 0) == (i == inst.t) {
                break;
            }
            len += 1;
        }
        blocks.push(TDString::from_symbols(rem[rem.len() - len..].to_vec()));
        rem = &rem[..rem.len() - len];
    }
    Ok(SlicedBlocks {
        x_tilde: TDString::from_symbols(o[o.len() - xl..].to_vec()),
        b_tilde: blocks,
        consumed: o.len() - rem.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveAryInstance {
    pub inst: BlockExemplarInstance,
    pub o: TDString,
    pub blocks: SlicedBlocks,
    pub s_hat: TDString,
    pub t_hat: TDString,
}

/// µ of a single chunk.
pub fn chunk_hat(inst: &BlockExemplarInstance, blocks: &SlicedBlocks, c: &Chunk) -> Vec<Symbol> {
    let with_dollar = |mut v: Vec<Symbol>| {
        v.push(DOLLAR);
        v
    };
    match c {
        Chunk::Ell => vec![ELL],
        Chunk::Block(i) => with_dollar(blocks.b_tilde[*i].to_vec()),
        Chunk::Family(Family::X, set) => dup(&blocks.x_tilde, set).expect("indices within head"),
        Chunk::Family(f, set) => {
            let base = &blocks.b_tilde[if *f == Family::B0 { 0 } else { 1 }];
            let _ = inst;
            with_dollar(dup(base, set).expect("indices within head"))
        }
    }
}

/// `(ŝ, t̂) = (µ(S), µ(T))`.
pub fn mu_encode(inst: &BlockExemplarInstance, blocks: &SlicedBlocks) -> (TDString, TDString) {
    let img = |c: &Chunk| chunk_hat(inst, blocks, c);
    (concat(&s_chunks(inst), img), concat(&t_chunks(inst), img))
}

impl FiveAryInstance {
    pub fn build(inst: &BlockExemplarInstance) -> Result<Self> {
        Self::with_master(inst, generate(master_length(inst)))
    }

    pub fn with_master(inst: &BlockExemplarInstance, o: TDString) -> Result<Self> {
        inst.validate()?;
        let blocks = slice_blocks(inst, &o)?;
        let (s_hat, t_hat) = mu_encode(inst, &blocks);
        Ok(FiveAryInstance {
            inst: inst.clone(),
            o,
            blocks,
            s_hat,
            t_hat,
        })
    }

    pub fn hat(&self, c: &Chunk) -> Vec<Symbol> {
        chunk_hat(&self.inst, &self.blocks, c)
    }

    /// `(C, µ(C))` for the three families.
    pub fn family_images(&self) -> Vec<(Family, Vec<Symbol>, Vec<Symbol>)> {
        [Family::B0, Family::B1, Family::X]
            .into_iter()
            .map(|f| {
                let c = Chunk::Family(f, vec![]);
                (f, chunk_exemplar(&self.inst, &c), self.hat(&c))
            })
            .collect()
    }

    /// Every chunk: `Ł`, `B_2..B_t`, and all duplication variants of the families.
    pub fn omega(&self) -> Vec<Chunk> {
        let mut out = vec![Chunk::Ell];
        out.extend((2..=self.inst.t).map(Chunk::Block));
        for f in [Family::B0, Family::B1, Family::X] {
            let len = family_base(&self.inst, f).len();
            for set in subsets(len) {
                out.push(Chunk::Family(f, set));
            }
        }
        out
    }

    /// Distinct chunks have distinct exemplar images and distinct µ images,
    /// checked pairwise.
    pub fn mu_injective(&self) -> bool {
        let om = self.omega();
        let ex: Vec<Vec<Symbol>> = om.iter().map(|c| chunk_exemplar(&self.inst, c)).collect();
        let hat: Vec<Vec<Symbol>> = om.iter().map(|c| self.hat(c)).collect();
        for a in 0..om.len() {
            for b in a + 1..om.len() {
                if ex[a] == ex[b] || hat[a] == hat[b] {
                    return false;
                }
            }
        }
        true
    }
}

/// All subsets of `1..=len` as sorted vectors, smallest masks first.
pub fn subsets(len: usize) -> Vec<Vec<usize>> {
    (0..1usize << len)
        .map(|mask| (1..=len).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedChunk {
    pub chunk: Chunk,
    /// 0-based offset in the subject.
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkFactorization {
    pub chunks: Vec<ParsedChunk>,
}

impl ChunkFactorization {
    /// 0-based chunk start offsets plus the subject length.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut b: Vec<usize> = self.chunks.iter().map(|c| c.start).collect();
        if let Some(last) = self.chunks.last() {
            b.push(last.start + last.len);
        } else {
            b.push(0);
        }
        b
    }

    /// Index of the chunk covering 0-based position `pos`.
    pub fn chunk_at(&self, pos: usize) -> usize {
        self.chunks.partition_point(|c| c.start + c.len <= pos)
    }
}

/// Duplication set `I` (within the first `head` letters) with `seg = dup(base, I)`.
fn collapse_against(seg: &[Symbol], base: &[Symbol], head: usize) -> Option<Vec<usize>> {
    let mut k = 0;
    let mut set = Vec::new();
    for (idx, &c) in base.iter().enumerate() {
        if seg.get(k) != Some(&c) {
            return None;
        }
        k += 1;
        if idx < head && seg.get(k) == Some(&c) {
            set.push(idx + 1);
            k += 1;
        }
    }
    (k == seg.len()).then_some(set)
}

/// Left-to-right parse into chunk images. `$` ends `B` chunks and `Ł` ends
/// blocks, so every chunk is located before it is identified.
pub fn factorize_chunks(s: &[Symbol], five: &FiveAryInstance) -> Result<ChunkFactorization> {
    let inst = &five.inst;
    let bt = &five.blocks.b_tilde;
    let mut chunks = Vec::new();
    let mut pos = 0;
    let fail = |offset: usize, reason: &str| Error::Parse {
        offset,
        reason: reason.into(),
    };
    while pos < s.len() {
        if s[pos] == ELL {
            chunks.push(ParsedChunk {
                chunk: Chunk::Ell,
                start: pos,
                len: 1,
            });
            pos += 1;
            continue;
        }
        let end = (pos..s.len())
            .find(|&k| s[k] == DOLLAR || s[k] == ELL)
            .ok_or_else(|| fail(pos, "segment runs past the end without $ or Ł"))?;
        let seg = &s[pos..end];
        if seg.is_empty() {
            return Err(fail(pos, "empty chunk before $"));
        }
        let (chunk, len) = if s[end] == DOLLAR {
            let c = if let Some(i) = (2..=inst.t).find(|&i| seg == &bt[i][..]) {
                Chunk::Block(i)
            } else if let Some(set) = collapse_against(seg, &bt[0], inst.b[0].len()) {
                Chunk::Family(Family::B0, set)
            } else if let Some(set) = collapse_against(seg, &bt[1], inst.b[1].len()) {
                Chunk::Family(Family::B1, set)
            } else {
                return Err(fail(pos, "segment before $ matches no B chunk"));
            };
            (c, seg.len() + 1)
        } else {
            let set = collapse_against(seg, &five.blocks.x_tilde, inst.x.len())
                .ok_or_else(|| fail(pos, "segment before Ł matches no X chunk"))?;
            (Chunk::Family(Family::X, set), seg.len())
        };
        chunks.push(ParsedChunk {
            chunk,
            start: pos,
            len,
        });
        pos += len;
    }
    Ok(ChunkFactorization { chunks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "index")]
pub enum BlockKind {
    /// The leading `𝓑̂_t^0 X̂ Ł`-block.
    First,
    /// A `𝓑̂_t^1 X̂ Ł`-block.
    Cluster,
    /// `E_j`, a `𝓑̂_j^01 X̂ Ł`-block.
    E(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardForm {
    pub factorization: ChunkFactorization,
    pub blocks: Vec<BlockKind>,
    /// `i_1 < i_2 < .. < i_h`.
    pub e_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "violation")]
pub enum FormViolation {
    Unparseable { offset: usize, reason: String },
    /// Chunks after the last `Ł`.
    Unterminated,
    /// The first block is not a `𝓑̂_t^0 X̂ Ł`-block.
    FirstBlock { reason: String },
    /// A later block is neither a cluster block nor an `E` block.
    BlockShape { block: usize, reason: String },
    /// `E` indices not strictly increasing.
    EOrder { block: usize, previous: usize, index: usize },
}

/// `(j, I_1, I_0, I_X)` for a chunk list `B̂_j .. B̂_2 B̂_1' B̂_0' X̂'`.
fn block_shape(chunks: &[ParsedChunk]) -> std::result::Result<(usize, bool, bool), String> {
    let kinds: Vec<&Chunk> = chunks.iter().map(|c| &c.chunk).collect();
    let lead = kinds.iter().take_while(|c| matches!(c, Chunk::Block(_))).count();
    let j = match kinds.first() {
        Some(Chunk::Block(j)) => *j,
        _ => 1,
    };
    for (k, c) in kinds[..lead].iter().enumerate() {
        if **c != Chunk::Block(j - k) {
            return Err(format!("expected B̂_{} at chunk {k}", j - k));
        }
    }
    if lead + 1 != j.max(1) {
        return Err(format!("B̂ chunks stop at B̂_{}", j + 1 - lead));
    }
    match &kinds[lead..] {
        [Chunk::Family(Family::B1, i1), Chunk::Family(Family::B0, i0), Chunk::Family(Family::X, _)] => {
            Ok((j, i1.is_empty(), i0.is_empty()))
        }
        _ => Err("expected B̂_1, B̂_0, X̂ before Ł".into()),
    }
}

/// Verifies `B̂X̂Ł (cluster)* E_{i1} (cluster)* .. E_{ih} (cluster)*`.
pub fn check_standard_form(
    s: &[Symbol],
    five: &FiveAryInstance,
) -> std::result::Result<StandardForm, FormViolation> {
    let factorization = factorize_chunks(s, five).map_err(|e| match e {
        Error::Parse { offset, reason } => FormViolation::Unparseable { offset, reason },
        other => FormViolation::Unparseable {
            offset: 0,
            reason: other.to_string(),
        },
    })?;
    let (t, p) = (five.inst.t, five.inst.p);
    let mut blocks = Vec::new();
    let mut e_indices: Vec<usize> = Vec::new();
    let mut begin = 0;
    for (k, c) in factorization.chunks.iter().enumerate() {
        if c.chunk != Chunk::Ell {
            continue;
        }
        let body = &factorization.chunks[begin..k];
        let b = blocks.len();
        let shape = block_shape(body);
        let kind = if b == 0 {
            match shape {
                Ok((j, b1_plain, _)) if j == t && b1_plain => BlockKind::First,
                Ok(_) => {
                    return Err(FormViolation::FirstBlock {
                        reason: "B̂_1 must be undoubled and the block must start at B̂_t".into(),
                    })
                }
                Err(reason) => return Err(FormViolation::FirstBlock { reason }),
            }
        } else {
            match shape {
                Ok((j, _, b0_plain)) if j == t => {
                    if !b0_plain {
                        return Err(FormViolation::BlockShape {
                            block: b,
                            reason: "cluster block with doubled B̂_0".into(),
                        });
                    }
                    BlockKind::Cluster
                }
                Ok((j, _, _)) if (1..=p).contains(&j) => {
                    if let Some(&prev) = e_indices.last() {
                        if prev >= j {
                            return Err(FormViolation::EOrder {
                                block: b,
                                previous: prev,
                                index: j,
                            });
                        }
                    }
                    e_indices.push(j);
                    BlockKind::E(j)
                }
                Ok((j, _, _)) => {
                    return Err(FormViolation::BlockShape {
                        block: b,
                        reason: format!("block starts at B̂_{j}, which is neither t nor in 1..=p"),
                    })
                }
                Err(reason) => return Err(FormViolation::BlockShape { block: b, reason }),
            }
        };
        blocks.push(kind);
        begin = k + 1;
    }
    if begin != factorization.chunks.len() || blocks.is_empty() {
        return Err(FormViolation::Unterminated);
    }
    Ok(StandardForm {
        factorization,
        blocks,
        e_indices,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContractionCase {
    /// A single letter inside a family chunk.
    A,
    /// Same result as contracting a square made of whole chunks.
    B,
    /// Halves `Ĉ_1'' D' Ĉ_2' = Ĉ_2'' D' Ĉ_3'` cut through three chunks of one family.
    C,
    Other,
}

pub fn classify_contraction(
    s: &[Symbol],
    op: RewriteOp,
    five: &FiveAryInstance,
) -> Result<ContractionCase> {
    crate::rewrite::apply_contraction(s, op)?;
    let fac = factorize_chunks(s, five)?;
    let (st, len) = (op.start - 1, op.len);
    let (mid, en) = (st + len, st + 2 * len);
    let fam = |k: usize| fac.chunks[k].chunk.family();
    if len == 1 {
        return Ok(if fam(fac.chunk_at(st)).is_some() {
            ContractionCase::A
        } else {
            ContractionCase::Other
        });
    }
    let bounds = fac.boundaries();
    let is_bound = |x: usize| bounds.binary_search(&x).is_ok();
    if is_bound(st) && is_bound(mid) && is_bound(en) {
        return Ok(ContractionCase::B);
    }
    let result = contract_raw(s, op.start, len);
    for (a, &b1) in bounds.iter().enumerate() {
        for &b2 in &bounds[a + 1..] {
            let b3 = 2 * b2 - b1;
            if b3 > s.len() {
                break;
            }
            if is_bound(b3) && s[b1..b2] == s[b2..b3] && contract_raw(s, b1 + 1, b2 - b1) == result {
                return Ok(ContractionCase::B);
            }
        }
    }
    // C_3 is the chunk starting at or covering `en`; when the square ends on a
    // boundary its prefix in the square is empty and its family is irrelevant
    let (k1, k2, k3) = (fac.chunk_at(st), fac.chunk_at(mid), fac.chunk_at(en));
    let o3 = if k3 < fac.chunks.len() { en - fac.chunks[k3].start } else { 0 };
    let family = fam(k1);
    let same_family = family.is_some() && fam(k2) == family && (o3 == 0 || fam(k3) == family);
    let inner = |lo: usize, hi: usize| -> Vec<usize> {
        bounds.iter().filter(|&&b| lo < b && b < hi).map(|&b| b - lo).collect()
    };
    // equal inner boundaries give both halves the same chunk layout
    if same_family && k1 < k2 && inner(st, mid) == inner(mid, en) {
        return Ok(ContractionCase::C);
    }
    Ok(ContractionCase::Other)
}

/// Outcome of the µ/dup modularity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ModularityReport {
    pub checked: usize,
    pub failures: usize,
}

fn sub(s: &[Symbol], i: usize, j: usize) -> &[Symbol] {
    crate::strings::substring(s, i, j)
}

/// Evaluates, for exemplar `c` with image `c_hat` (duplications confined to
/// the first `|c|` letters of `c_hat`):
///
/// * prefix: `dup(C,I')[1,i] = dup(C,I'')[1,i]` iff the same holds for `Ĉ`,
///   for `i <= |C| + |I'|`;
/// * suffix: `dup(C,I')[i+1, c+|I'|] = dup(C,I'')[j+1, c+|I''|]` iff
///   `dup(Ĉ,I')[i+1, ĉ+|I'|] = dup(Ĉ,I'')[j+1, ĉ+|I''|]`, for
///   `i <= c+|I'|`, `j <= c+|I''|`;
/// * splice: for `1 <= i <= ĉ+|I'|`, `1 <= j <= ĉ+|I''|`, if
///   `dup(Ĉ,I')[1,i] dup(Ĉ,I'')[j+1, ĉ+|I''|] = dup(Ĉ,I''')` then
///   `dup(C,I')[1,min(i, c+|I'|)] dup(C,I'')[j+1, c+|I''|] = dup(C,I''')`.
///
/// Returns whether every applicable clause holds.
#[allow(clippy::too_many_arguments)]
pub fn mu_modularity_check(
    c: &[Symbol],
    c_hat: &[Symbol],
    i1: &[usize],
    i2: &[usize],
    i3: &[usize],
    i: usize,
    j: usize,
) -> Result<bool> {
    let (cl, hl) = (c.len(), c_hat.len());
    if hl < cl {
        return Err(Error::InvalidInstance("image shorter than its exemplar".into()));
    }
    if i > hl + i1.len() || j > hl + i2.len() {
        return Err(Error::IndexOutOfRange {
            index: i.max(j),
            len: hl + i1.len().max(i2.len()),
        });
    }
    let d = |base: &[Symbol], set: &[usize]| -> Result<Vec<Symbol>> {
        if let Some(&bad) = set.iter().find(|&&k| k == 0 || k > cl) {
            return Err(Error::IndexOutOfRange { index: bad, len: cl });
        }
        dup(base, set)
    };
    let (a, b, a3) = (d(c, i1)?, d(c, i2)?, d(c, i3)?);
    let (ah, bh, ah3) = (d(c_hat, i1)?, d(c_hat, i2)?, d(c_hat, i3)?);
    let (ca, cb) = (cl + i1.len(), cl + i2.len());
    let (ha, hb) = (hl + i1.len(), hl + i2.len());
    let mut ok = true;
    if i <= ca {
        ok &= (sub(&a, 1, i) == sub(&b, 1, i)) == (sub(&ah, 1, i) == sub(&bh, 1, i));
        if j <= cb {
            ok &= (sub(&a, i + 1, ca) == sub(&b, j + 1, cb))
                == (sub(&ah, i + 1, ha) == sub(&bh, j + 1, hb));
        }
    }
    if i >= 1 && j >= 1 {
        let hat_splice = [sub(&ah, 1, i), sub(&bh, j + 1, hb)].concat();
        if hat_splice == ah3 {
            let splice = [sub(&a, 1, i.min(ca)), sub(&b, j + 1, cb)].concat();
            ok &= splice == a3;
        }
    }
    Ok(ok)
}

/// Runs every clause of [`mu_modularity_check`] over all subset pairs, all
/// cut points and (for the splice clause) all `I'''`.
pub fn modularity_exhaustive(c: &[Symbol], c_hat: &[Symbol]) -> ModularityReport {
    let (cl, hl) = (c.len(), c_hat.len());
    let sets = subsets(cl);
    let ex: Vec<Vec<Symbol>> = sets.iter().map(|s| dup(c, s).expect("in range")).collect();
    let hat: Vec<Vec<Symbol>> = sets.iter().map(|s| dup(c_hat, s).expect("in range")).collect();
    let mut by_hat: HashMap<&[Symbol], Vec<usize>> = HashMap::new();
    for (k, h) in hat.iter().enumerate() {
        by_hat.entry(h.as_slice()).or_default().push(k);
    }
    let mut report = ModularityReport::default();
    let mut tally = |ok: bool| {
        report.checked += 1;
        if !ok {
            report.failures += 1;
        }
    };
    for (x, sx) in sets.iter().enumerate() {
        for (y, sy) in sets.iter().enumerate() {
            let (a, b, ah, bh) = (&ex[x], &ex[y], &hat[x], &hat[y]);
            let (ca, cb) = (cl + sx.len(), cl + sy.len());
            let (ha, hb) = (hl + sx.len(), hl + sy.len());
            for i in 0..=ca {
                tally((sub(a, 1, i) == sub(b, 1, i)) == (sub(ah, 1, i) == sub(bh, 1, i)));
                for j in 0..=cb {
                    tally(
                        (sub(a, i + 1, ca) == sub(b, j + 1, cb))
                            == (sub(ah, i + 1, ha) == sub(bh, j + 1, hb)),
                    );
                }
            }
            for i in 1..=ha {
                for j in 1..=hb {
                    let hat_splice = [sub(ah, 1, i), sub(bh, j + 1, hb)].concat();
                    let splice = [sub(a, 1, i.min(ca)), sub(b, j + 1, cb)].concat();
                    match by_hat.get(hat_splice.as_slice()) {
                        Some(ks) => {
                            for &k in ks {
                                tally(splice == ex[k]);
                            }
                        }
                        None => tally(true),
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::is_square_free;

    fn text(s: &[Symbol]) -> String {
        to_text(s)
    }

    // master string the frozen values below were computed against
    fn tiny_five() -> FiveAryInstance {
        FiveAryInstance::with_master(&tiny_instance(), generate(60)).unwrap()
    }

    #[test]
    fn tiny_pair() {
        let inst = tiny_instance();
        let (s, t) = build_block_exemplar(&inst).unwrap();
        assert_eq!(s.to_string(), "ecdabxyL");
        assert!(t.to_string().starts_with("ecdaabbxxyyL"));
        assert_eq!(t.to_string(), "ecdaabbxxyyLeccddabxyLccddaabbxxyLeccddabxyL");
        assert!(adjacent_chunks_disjoint(&inst));
    }

    #[test]
    fn invalid_instances() {
        let mut inst = tiny_instance();
        inst.p = 0;
        inst.i_sets.clear();
        assert!(matches!(build_block_exemplar(&inst), Err(Error::InvalidInstance(m)) if m.contains("0 < p < t")));
        let mut inst = tiny_instance();
        inst.i_sets = vec![vec![1, 2]];
        assert!(inst.validate().is_err());
        let mut inst = tiny_instance();
        inst.b[2] = inst.x[..1].to_vec();
        assert!(matches!(inst.validate(), Err(Error::InvalidInstance(m)) if m.contains("disjoint")));
        let mut inst = tiny_instance();
        inst.b[1] = vec![inst.b[1][0]];
        assert!(inst.validate().is_err());
    }

    #[test]
    fn tiny_slicing() {
        let five = tiny_five();
        assert_eq!(five.blocks.x_tilde.to_string(), "12");
        let b: Vec<String> = five.blocks.b_tilde.iter().map(|b| b.to_string()).collect();
        assert_eq!(b, vec!["102", "1012", "01202"]);
        assert_eq!(five.s_hat.to_string(), "01202$1012$102$12L");
        assert_eq!(
            five.t_hat.to_string(),
            "01202$1012$11002$1122L01202$110012$102$12L110012$11002$112L01202$110012$102$12L"
        );
        assert!(is_square_free(&five.s_hat));
    }

    #[test]
    fn slicing_rules_hold_on_random_instances() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let t = rng.gen_range(2..6);
            let p = rng.gen_range(1..t);
            let (xl, bl) = (rng.gen_range(3..5), rng.gen_range(2..6));
            let inst = random_instance(&mut rng, t, p, xl, bl).unwrap();
            let five = FiveAryInstance::build(&inst).unwrap();
            let lens: Vec<usize> = five.blocks.b_tilde.iter().map(|b| b.len()).collect();
            assert!(lens.windows(2).all(|w| w[0] < w[1]));
            for (i, b) in five.blocks.b_tilde.iter().enumerate() {
                assert_eq!(b[0] == 0, i == t);
            }
            assert!(five.blocks.consumed <= five.o.len());
            assert!(is_square_free(&five.s_hat));
        }
    }

    #[test]
    fn short_master_rejected() {
        let inst = tiny_instance();
        let o = generate(8);
        assert!(matches!(
            slice_blocks(&inst, &o),
            Err(Error::MasterTooShort { actual: 8, .. })
        ));
    }

    #[test]
    fn factorization() {
        let five = tiny_five();
        let fs = factorize_chunks(&five.s_hat, &five).unwrap();
        let kinds: Vec<Chunk> = fs.chunks.iter().map(|c| c.chunk.clone()).collect();
        assert_eq!(kinds, s_chunks(&five.inst));
        let ft = factorize_chunks(&five.t_hat, &five).unwrap();
        let kinds: Vec<Chunk> = ft.chunks.iter().map(|c| c.chunk.clone()).collect();
        assert_eq!(kinds, t_chunks(&five.inst));
        let mut broken = five.t_hat.to_vec();
        let k = broken.iter().position(|&c| c == DOLLAR).unwrap();
        broken.remove(k);
        assert!(matches!(factorize_chunks(&broken, &five), Err(Error::Parse { .. })));
    }

    #[test]
    fn standard_form() {
        let five = tiny_five();
        let sf = check_standard_form(&five.t_hat, &five).unwrap();
        assert_eq!(sf.e_indices, vec![1]);
        assert_eq!(sf.blocks, vec![BlockKind::First, BlockKind::Cluster, BlockKind::E(1), BlockKind::Cluster]);
        let sf = check_standard_form(&five.s_hat, &five).unwrap();
        assert_eq!(sf.blocks, vec![BlockKind::First]);
        assert!(sf.e_indices.is_empty());
    }

    #[test]
    fn swapped_e_blocks_rejected() {
        let mut inst = tiny_instance();
        let sym = |s: &str| TDString::parse(s).unwrap().into_data();
        inst.t = 3;
        inst.p = 2;
        inst.b.push(sym("f"));
        inst.i_sets = vec![vec![1], vec![2]];
        let five = FiveAryInstance::build(&inst).unwrap();
        assert_eq!(check_standard_form(&five.t_hat, &five).unwrap().e_indices, vec![1, 2]);
        // blocks: First, Cluster, E1, Cluster, E2, Cluster; swap E1 and E2
        let text = five.t_hat.to_string();
        let parts: Vec<&str> = text.split_inclusive('L').collect();
        let swapped = [parts[0], parts[1], parts[4], parts[3], parts[2], parts[5]].concat();
        let v = check_standard_form(&TDString::parse(&swapped).unwrap(), &five).unwrap_err();
        assert!(matches!(v, FormViolation::EOrder { previous: 2, index: 1, .. }), "{v:?}");
    }

    #[test]
    fn contraction_cases() {
        let five = tiny_five();
        let th = five.t_hat.to_vec();
        // doubled letter in the first X̂* chunk "1122"
        let x_at = text(&th).find("1122L").unwrap();
        let op = RewriteOp::contraction(x_at + 1, 1);
        assert_eq!(classify_contraction(&th, op, &five).unwrap(), ContractionCase::A);
        // two identical cluster blocks in a row
        let cluster = "01202$110012$102$12L";
        let doubled = TDString::parse(&format!("{}{cluster}{cluster}", &text(&th)[..22])).unwrap();
        assert!(check_standard_form(&doubled, &five).is_ok());
        let op = RewriteOp::contraction(23, cluster.len());
        assert_eq!(classify_contraction(&doubled, op, &five).unwrap(), ContractionCase::B);
        // same square shifted left onto the preceding Ł: not aligned, same result
        let op = RewriteOp::contraction(22, cluster.len());
        assert_eq!(classify_contraction(&doubled, op, &five).unwrap(), ContractionCase::B);
        assert!(classify_contraction(&th, RewriteOp::contraction(1, 2), &five).is_err());
    }

    #[test]
    fn contraction_case_c() {
        // halves run from inside one X̂ chunk to the same offset of the next
        let five = tiny_five();
        let blk = |x: &str| format!("01202$110012$102${x}L");
        let s = format!("01202$1012$102$12L{}{}{}", blk("112"), blk("1122"), blk("112"));
        let s = TDString::parse(&s).unwrap();
        assert!(check_standard_form(&s, &five).is_ok());
        let op = RewriteOp::contraction(38, 22);
        assert!(crate::rewrite::apply_contraction(&s, op).is_ok());
        assert_eq!(classify_contraction(&s, op, &five).unwrap(), ContractionCase::C);
    }

    #[test]
    fn injectivity_and_modularity() {
        let five = tiny_five();
        assert!(five.mu_injective());
        for (_, c, ch) in five.family_images() {
            let r = modularity_exhaustive(&c, &ch);
            assert!(r.checked > 0);
            assert_eq!(r.failures, 0);
        }
        let (_, c, ch) = five.family_images().remove(2);
        assert!(mu_modularity_check(&c, &ch, &[1], &[1], &[], 1, 1).unwrap());
        assert!(mu_modularity_check(&c, &ch, &[3], &[], &[], 0, 0).is_err());
        assert!(mu_modularity_check(&c, &ch, &[], &[], &[], 99, 0).is_err());
    }

    #[test]
    fn instance_file_round_trip() {
        let inst = tiny_instance();
        let file = InstanceFile::from(&inst);
        assert_eq!(file.x, "xy");
        assert_eq!(BlockExemplarInstance::try_from(&file).unwrap(), inst);
        let mut bad = file.clone();
        bad.x = "x?".into();
        assert!(matches!(BlockExemplarInstance::try_from(&bad), Err(Error::InvalidInstance(m)) if m.contains("field X")));
    }
}
