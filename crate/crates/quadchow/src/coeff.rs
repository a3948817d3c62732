//! Coefficient rings for cycles: the integers or `Z/2`.

/// Coefficients carried by a cycle. Mixing an integral cycle with a mod-2
/// cycle yields a mod-2 result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum CoeffRing {
    #[default]
    Integer,
    Mod2,
}

impl CoeffRing {
    pub fn join(self, other: CoeffRing) -> CoeffRing {
        if self == CoeffRing::Mod2 || other == CoeffRing::Mod2 {
            CoeffRing::Mod2
        } else {
            CoeffRing::Integer
        }
    }

    /// Canonical representative of `c` in this ring.
    pub fn reduce(self, c: i64) -> i64 {
        match self {
            CoeffRing::Integer => c,
            CoeffRing::Mod2 => c.rem_euclid(2),
        }
    }
}
