use alloc::vec::Vec;

use super::{monomial_pairing, QuadCycle, QuadMonomial};
use crate::error::{Error, Result};

/// A cycle on `X^{a+b}` read as a correspondence `X^a ⇝ X^b`: the first `a`
/// factors are the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    cycle: QuadCycle,
    source: usize,
}

impl Correspondence {
    pub fn new(cycle: QuadCycle, source: usize) -> Result<Self> {
        if source > cycle.arity() {
            return Err(Error::ArityMismatch { expected: cycle.arity(), found: source });
        }
        Ok(Correspondence { cycle, source })
    }

    pub fn cycle(&self) -> &QuadCycle {
        &self.cycle
    }

    pub fn into_cycle(self) -> QuadCycle {
        self.cycle
    }

    pub fn source_arity(&self) -> usize {
        self.source
    }

    pub fn target_arity(&self) -> usize {
        self.cycle.arity() - self.source
    }

    fn split(&self, m: &QuadMonomial) -> (QuadMonomial, QuadMonomial) {
        let a = self.source;
        let source: Vec<usize> = (0..a).collect();
        let target: Vec<usize> = (a..m.arity()).collect();
        (m.select(&source), m.select(&target))
    }

    /// `α_*(x) = p_{target*}(α · p_{source}^*(x))`.
    pub fn action(&self, x: &QuadCycle) -> Result<QuadCycle> {
        if x.context().n() != self.cycle.context().n() {
            return Err(Error::ContextMismatch);
        }
        if x.arity() != self.source {
            return Err(Error::ArityMismatch { expected: self.source, found: x.arity() });
        }
        let ctx = *self.cycle.context();
        let mut out = QuadCycle::zero(&ctx, self.target_arity());
        out.ring = self.cycle.ring().join(x.ring());
        for (m, c) in self.cycle.terms() {
            let (src, tgt) = self.split(m);
            let weight: i64 = x.terms().map(|(u, k)| k * monomial_pairing(&ctx, u, &src)).sum();
            if weight != 0 {
                out.add_term(tgt, c * weight);
            }
        }
        Ok(out)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Correspondence) -> Result<Correspondence> {
        if first.cycle.context().n() != self.cycle.context().n() {
            return Err(Error::ContextMismatch);
        }
        if first.target_arity() != self.source {
            return Err(Error::ArityMismatch { expected: self.source, found: first.target_arity() });
        }
        let ctx = *self.cycle.context();
        let arity = first.source + self.target_arity();
        let mut out = QuadCycle::zero(&ctx, arity);
        out.ring = self.cycle.ring().join(first.cycle.ring());
        for (m1, c1) in first.cycle.terms() {
            let (src1, tgt1) = first.split(m1);
            for (m2, c2) in self.cycle.terms() {
                let (src2, tgt2) = self.split(m2);
                let w = monomial_pairing(&ctx, &tgt1, &src2);
                if w != 0 {
                    out.add_term(src1.concat(&tgt2), c1 * c2 * w);
                }
            }
        }
        Correspondence::new(out, first.source)
    }

    /// Swaps source and target.
    pub fn transpose(&self) -> Correspondence {
        let m = self.cycle.arity();
        let p: Vec<usize> =
            (0..m).map(|j| if j < self.source { j + self.target_arity() } else { j - self.source }).collect();
        let cycle = self.cycle.permute(&p).expect("block swap is a permutation");
        Correspondence { cycle, source: self.target_arity() }
    }

    pub fn mod2(&self) -> Correspondence {
        Correspondence { cycle: self.cycle.mod2(), source: self.source }
    }
}
