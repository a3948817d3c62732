use crate::error::{Error, Result};
use crate::weyl::Family;

/// Which of the two families of maximal isotropic subspaces plays the role of
/// `l_d` when the quadric has even dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Orientation {
    #[default]
    Plus,
    Minus,
}

/// Global parameters of a split quadric of dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadricContext {
    n: u32,
    orientation: Option<Orientation>,
}

impl QuadricContext {
    /// Largest dimension accepted anywhere in the crate.
    pub const MAX_N: u32 = 8;

    /// A quadric of dimension `n` (`2 ≤ n ≤ 8`), with the plus orientation
    /// when `n` is even.
    pub fn new(n: u32) -> Result<Self> {
        Self::with_orientation(n, Orientation::Plus)
    }

    /// The orientation is stored only when `n` is even.
    pub fn with_orientation(n: u32, orientation: Orientation) -> Result<Self> {
        if !(2..=Self::MAX_N).contains(&n) {
            return Err(Error::DimensionOutOfRange { n, min: 2, max: Self::MAX_N });
        }
        let orientation = (n % 2 == 0).then_some(orientation);
        Ok(QuadricContext { n, orientation })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `⌊n/2⌋`, the projective dimension of a maximal isotropic subspace.
    pub fn d(&self) -> u32 {
        self.n / 2
    }

    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    pub fn orientation(&self) -> Option<Orientation> {
        self.orientation
    }

    /// The same quadric with the plus orientation. `CH(X)` itself does not
    /// depend on the orientation, so quadric cycles carry this one.
    pub fn unoriented(&self) -> QuadricContext {
        QuadricContext { n: self.n, orientation: self.orientation.map(|_| Orientation::Plus) }
    }

    /// `B_{d+1}` for odd `n`, `D_{d+1}` for even `n`.
    pub fn family(&self) -> Family {
        if self.is_even() {
            Family::D
        } else {
            Family::B
        }
    }

    pub fn rank(&self) -> usize {
        self.d() as usize + 1
    }
}
