//! The square of elementary classes `z^i_j` of a quadric with rationality
//! marks, closed under the implications between the highest classes `z^i_{n-i}`
//! and the cycles `ρ_i mod 2`.
//!
//! Node `(i, c)` is the class `z^i_{n-i-c}` on `G_i`: row `i` is the
//! grassmannian, column `c = 0` holds the highest class and codimension drops
//! by one per column. Marks are hypotheses supplied by the caller; nothing
//! here decides rationality.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest quadric dimension accepted for a square.
pub const MAX_SQUARE_N: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdiSquare {
    n: u32,
    marks: BTreeSet<(u32, u32)>,
    rho_marks: BTreeSet<u32>,
    witt_index: Option<u32>,
}

/// Outcome of comparing a square with a first Witt index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittReport {
    pub witt_index: u32,
    /// Marked nodes `(i, 0)`, `1 ≤ i < i_1`, which contradict an anisotropic
    /// quadric with that first Witt index.
    pub inconsistent: Vec<(u32, u32)>,
    /// Nodes on which the check says nothing: all columns `c ≥ 1`, and the
    /// point class `(0, 0)`.
    pub unconstrained: Vec<(u32, u32)>,
}

impl WittReport {
    pub fn is_consistent(&self) -> bool {
        self.inconsistent.is_empty()
    }
}

impl EdiSquare {
    pub fn new(n: u32) -> Result<Self> {
        if !(2..=MAX_SQUARE_N).contains(&n) {
            return Err(Error::DimensionOutOfRange { n, min: 2, max: MAX_SQUARE_N });
        }
        Ok(EdiSquare { n, marks: BTreeSet::new(), rho_marks: BTreeSet::new(), witt_index: None })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.n / 2
    }

    pub fn witt_index(&self) -> Option<u32> {
        self.witt_index
    }

    pub fn set_witt_index(&mut self, i1: Option<u32>) -> Result<()> {
        if let Some(i1) = i1 {
            if i1 == 0 || i1 > self.d() + 1 {
                return Err(Error::OutOfRange(alloc::format!("first Witt index {i1} outside 1..={}", self.d() + 1)));
            }
        }
        self.witt_index = i1;
        Ok(())
    }

    /// Codimension of the class at node `(i, c)`.
    pub fn codim(&self, i: u32, c: u32) -> u32 {
        self.n - i - c
    }

    fn check_node(&self, i: u32, c: u32) -> Result<()> {
        let d = self.d();
        if i > d || c > d {
            return Err(Error::OutOfRange(alloc::format!("node ({i}, {c}) outside the {0}×{0} square", d + 1)));
        }
        Ok(())
    }

    pub fn mark(&mut self, i: u32, c: u32) -> Result<()> {
        self.check_node(i, c)?;
        self.marks.insert((i, c));
        Ok(())
    }

    /// Records `ρ_i mod 2` as rational.
    pub fn mark_rho(&mut self, i: u32) -> Result<()> {
        if i > self.d() {
            return Err(Error::OutOfRange(alloc::format!("ρ_{i} with d = {}", self.d())));
        }
        self.rho_marks.insert(i);
        Ok(())
    }

    pub fn is_marked(&self, i: u32, c: u32) -> bool {
        self.marks.contains(&(i, c))
    }

    pub fn marks(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.marks.iter().copied()
    }

    pub fn rho_marks(&self) -> impl Iterator<Item = u32> + '_ {
        self.rho_marks.iter().copied()
    }

    /// The least square containing `self` and closed under:
    /// `z^i_{n-i}` rational implies `z^j_{n-j}` rational for `j > i`;
    /// `z^i_{n-i}` is rational iff `ρ_i mod 2` is;
    /// `ρ_i mod 2` rational implies `ρ_j mod 2` rational for `j > i`.
    pub fn propagate(&self) -> Self {
        let d = self.d();
        let lowest =
            self.marks.iter().filter(|(_, c)| *c == 0).map(|(i, _)| *i).chain(self.rho_marks.iter().copied()).min();
        let mut out = self.clone();
        if let Some(low) = lowest {
            for j in low..=d {
                out.marks.insert((j, 0));
                out.rho_marks.insert(j);
            }
        }
        out
    }

    /// Compares the highest classes with an anisotropic quadric of first Witt
    /// index `i1`: a rational `z^i_{n-i}` with `1 ≤ i` forces `i1 ≤ i`.
    pub fn check_witt_consistency(&self, i1: u32) -> Result<WittReport> {
        if i1 == 0 {
            return Err(Error::OutOfRange(String::from("the first Witt index is at least 1")));
        }
        let d = self.d();
        let inconsistent = (1..i1.min(d + 1)).filter(|&i| self.is_marked(i, 0)).map(|i| (i, 0)).collect();
        let mut unconstrained = alloc::vec![(0, 0)];
        for i in 0..=d {
            for c in 1..=d {
                unconstrained.push((i, c));
            }
        }
        Ok(WittReport { witt_index: i1, inconsistent, unconstrained })
    }

    /// Rows from `d` down to `0`, each `"{i} "` followed by the cells of the
    /// row separated by spaces: `×` marked, `○` unmarked.
    pub fn render_ascii(&self) -> String {
        let d = self.d();
        let width = alloc::format!("{d}").len();
        let mut out = String::new();
        for i in (0..=d).rev() {
            let cells: Vec<&str> = (0..=d).map(|c| if self.is_marked(i, c) { "×" } else { "○" }).collect();
            out.push_str(&alloc::format!("{i:>width$} {}\n", cells.join(" ")));
        }
        out
    }
}
