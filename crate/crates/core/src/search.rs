//! Backtracking enumeration of maps between finite carriers.

use std::ops::ControlFlow;

use crate::error::{EquilogError, Result};

/// Default cap on the raw search space (product of candidate list sizes).
pub const DEFAULT_SEARCH_BOUND: u128 = 1 << 26;

type PairCheck<'a> = &'a dyn Fn(usize, usize, usize, usize) -> bool;
type LeafCheck<'a> = &'a dyn Fn(&[usize]) -> bool;

/// A search over maps `f: 0..dom → 0..cod`, pruned by a pairwise constraint
/// and finished by a whole-map check.
pub struct MapSearch<'a> {
    candidates: Vec<Vec<usize>>,
    pair_ok: Option<PairCheck<'a>>,
    leaf_ok: Option<LeafCheck<'a>>,
}

impl<'a> MapSearch<'a> {
    /// All maps `0..dom → 0..cod`.
    pub fn new(dom: usize, cod: usize) -> Self {
        MapSearch {
            candidates: vec![(0..cod).collect(); dom],
            pair_ok: None,
            leaf_ok: None,
        }
    }

    /// Maps with `f(i) ∈ candidates[i]`.
    pub fn with_candidates(candidates: Vec<Vec<usize>>) -> Self {
        MapSearch {
            candidates,
            pair_ok: None,
            leaf_ok: None,
        }
    }

    /// `pair_ok(i, f(i), j, f(j))` is called for every `j ≤ i` as soon as
    /// `f(i)` is assigned; it should check both orientations of the pair.
    pub fn pairwise(mut self, pair_ok: PairCheck<'a>) -> Self {
        self.pair_ok = Some(pair_ok);
        self
    }

    pub fn leaf(mut self, leaf_ok: &'a dyn Fn(&[usize]) -> bool) -> Self {
        self.leaf_ok = Some(leaf_ok);
        self
    }

    /// Size of the unpruned search space.
    pub fn space(&self) -> u128 {
        self.candidates
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    pub fn check_bound(&self, what: &str, bound: u128) -> Result<()> {
        let needed = self.space();
        if needed > bound {
            return Err(EquilogError::BoundExceeded {
                what: what.to_string(),
                needed,
                bound,
            });
        }
        Ok(())
    }

    /// Visits every accepted map in lexicographic order until `visit` breaks.
    /// Returns `true` if the visitor stopped the search.
    pub fn run(&self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> bool {
        let mut f = Vec::with_capacity(self.candidates.len());
        self.rec(&mut f, visit).is_break()
    }

    fn rec(
        &self,
        f: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let i = f.len();
        if i == self.candidates.len() {
            if self.leaf_ok.is_none_or(|ok| ok(f)) {
                return visit(f);
            }
            return ControlFlow::Continue(());
        }
        for &c in &self.candidates[i] {
            if let Some(ok) = self.pair_ok {
                if !(0..i).all(|j| ok(i, c, j, f[j])) || !ok(i, c, i, c) {
                    continue;
                }
            }
            f.push(c);
            let flow = self.rec(f, visit);
            f.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    pub fn collect(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.run(&mut |f| {
            out.push(f.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn first(&self) -> Option<Vec<usize>> {
        let mut out = None;
        self.run(&mut |f| {
            out = Some(f.to_vec());
            ControlFlow::Break(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.run(&mut |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}
