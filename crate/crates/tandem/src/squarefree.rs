//! Ternary square-free words from Leech's 13-uniform morphism.

use crate::strings::{is_square_free, Symbol, TDString};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    images: [Vec<Symbol>; 3],
}

impl Morphism {
    pub fn new(images: [Vec<Symbol>; 3]) -> Option<Self> {
        let ternary = images.iter().flatten().all(|&c| c < 3);
        (ternary && images.iter().all(|im| !im.is_empty())).then_some(Morphism { images })
    }

    pub fn from_text(images: [&str; 3]) -> Option<Self> {
        let parse = |s: &str| TDString::parse(s).ok().map(TDString::into_data);
        Morphism::new([parse(images[0])?, parse(images[1])?, parse(images[2])?])
    }

    pub fn leech() -> Self {
        Morphism::from_text(["0121021201210", "1202102012021", "2010210120102"])
            .expect("static images")
    }

    pub fn image(&self, c: Symbol) -> &[Symbol] {
        &self.images[c as usize]
    }

    pub fn apply(&self, s: &[Symbol]) -> Vec<Symbol> {
        s.iter().flat_map(|&c| self.image(c).iter().copied()).collect()
    }

    /// Iterates from `"0"` until at least `min_len` symbols exist. Gives up
    /// (returning what it has) if an iterate stops growing.
    fn iterate_to(&self, min_len: usize) -> Vec<Symbol> {
        let mut s = vec![0];
        while s.len() < min_len {
            let next = self.apply(&s);
            if next.len() <= s.len() {
                break;
            }
            s = next;
        }
        s
    }
}

/// The length-`min_len` prefix of the fixed point of Leech's morphism.
pub fn generate(min_len: usize) -> TDString {
    let mut s = Morphism::leech().iterate_to(min_len);
    s.truncate(min_len.max(1));
    TDString::from_symbols(s)
}

/// Checks the iterates `m^1("0")`, ..., `m^depth("0")`.
pub fn verify_square_free_preserving(m: &Morphism, depth: usize) -> bool {
    let mut s = vec![0];
    for _ in 0..depth {
        s = m.apply(&s);
        if !is_square_free(&s) {
            return false;
        }
    }
    true
}
