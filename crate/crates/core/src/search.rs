//! Backtracking enumeration of homomorphisms given by generator images.
//!
//! A partial assignment `g_0 -> y_0, ..., g_i -> y_i` is extended to the
//! subgroup `<g_0..g_i>` by walking its Cayley graph; any edge where the
//! forced image disagrees with an earlier one kills the branch. Consistency on
//! every Cayley-graph edge is exactly the homomorphism condition, so complete
//! leaves need no further product check.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::group::Group;

const UNSET: u16 = u16::MAX;
const DEADLINE_CHECK_INTERVAL: u32 = 256;

/// Wall-clock budget shared by every branch of a search.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    at: Option<Instant>,
    budget: Duration,
}

impl Deadline {
    pub fn none() -> Deadline {
        Deadline { at: None, budget: Duration::ZERO }
    }

    pub fn after(budget: Duration) -> Deadline {
        Deadline { at: Some(Instant::now() + budget), budget }
    }

    pub fn check(&self) -> Result<()> {
        match self.at {
            Some(at) if Instant::now() >= at => Err(Error::Timeout { budget_ms: self.budget.as_millis() as u64 }),
            _ => Ok(()),
        }
    }
}

pub(crate) struct HomSearch<'a> {
    pub source: &'a Group,
    pub target: &'a Group,
    pub gens: &'a [usize],
    pub candidates: Vec<Vec<usize>>,
    pub injective: bool,
}

struct Scratch {
    map: Vec<u16>,
    used: Vec<bool>,
    queue: Vec<usize>,
    images: Vec<usize>,
    ticks: u32,
}

impl<'a> HomSearch<'a> {
    fn scratch(&self) -> Scratch {
        Scratch {
            map: vec![UNSET; self.source.order()],
            used: vec![false; self.target.order()],
            queue: Vec::with_capacity(self.source.order()),
            images: Vec::with_capacity(self.gens.len()),
            ticks: 0,
        }
    }

    /// Product of per-generator candidate counts: an upper bound on leaves.
    pub fn candidate_product(&self) -> u128 {
        self.candidates
            .iter()
            .map(|c| c.len() as u128)
            .try_fold(1u128, |acc, c| acc.checked_mul(c))
            .unwrap_or(u128::MAX)
    }

    /// Extends the current generator images to `<gens[..images.len()]>`.
    fn extend(&self, s: &mut Scratch) -> bool {
        let (src, dst) = (self.source, self.target);
        s.map.fill(UNSET);
        if self.injective {
            s.used.fill(false);
            s.used[0] = true;
        }
        s.map[0] = 0;
        s.queue.clear();
        s.queue.push(0);
        let k = s.images.len();
        let mut i = 0;
        while i < s.queue.len() {
            let h = s.queue[i];
            let fh = s.map[h] as usize;
            for j in 0..k {
                let x = src.mul(h, self.gens[j]);
                let y = dst.mul(fh, s.images[j]);
                if s.map[x] == UNSET {
                    if self.injective {
                        if s.used[y] {
                            return false;
                        }
                        s.used[y] = true;
                    }
                    s.map[x] = y as u16;
                    s.queue.push(x);
                } else if s.map[x] as usize != y {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn dfs(
        &self,
        level: usize,
        s: &mut Scratch,
        deadline: &Deadline,
        emit: &mut dyn FnMut(&[u16]) -> Result<ControlFlow<()>>,
    ) -> Result<ControlFlow<()>> {
        for &c in &self.candidates[level] {
            s.ticks += 1;
            if s.ticks.is_multiple_of(DEADLINE_CHECK_INTERVAL) {
                deadline.check()?;
            }
            s.images.push(c);
            if self.extend(s) {
                let flow = if level + 1 == self.gens.len() {
                    emit(&s.map)?
                } else {
                    self.dfs(level + 1, s, deadline, emit)?
                };
                if flow.is_break() {
                    s.images.pop();
                    return Ok(flow);
                }
            }
            s.images.pop();
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Enumerates every complete map. `emit` receives the full image array.
    pub fn run(
        &self,
        deadline: &Deadline,
        emit: &mut dyn FnMut(&[u16]) -> Result<ControlFlow<()>>,
    ) -> Result<()> {
        if self.gens.is_empty() {
            return self.emit_trivial(emit);
        }
        let mut s = self.scratch();
        self.dfs(0, &mut s, deadline, emit).map(drop)
    }

    /// Enumerates the subtree where the first generator maps to `first`.
    pub fn run_branch(
        &self,
        first: usize,
        deadline: &Deadline,
        emit: &mut dyn FnMut(&[u16]) -> Result<ControlFlow<()>>,
    ) -> Result<()> {
        let mut s = self.scratch();
        s.images.push(first);
        if !self.extend(&mut s) {
            return Ok(());
        }
        if self.gens.len() == 1 {
            return emit(&s.map).map(drop);
        }
        self.dfs(1, &mut s, deadline, emit).map(drop)
    }

    fn emit_trivial(&self, emit: &mut dyn FnMut(&[u16]) -> Result<ControlFlow<()>>) -> Result<()> {
        if self.injective && self.target.order() != 1 {
            return Ok(());
        }
        emit(&[0]).map(drop)
    }
}
