//! Lattice indices, finite index boxes, and completeness domains.

use crate::error::{Error, Result};
use std::fmt;

/// A frequency `k = (k1, k2)` on `Z^2`; tuple order is lexicographic.
pub type LatticeIndex = (i64, i64);

/// A finite product box `[n1_min, n1_max] x [n2_min, n2_max]` on `Z^2`.
///
/// Boxes are always non-empty; operations that can empty a box return
/// `Option` so the empty outcome stays explicit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LatticeBox {
    pub n1_min: i64,
    pub n1_max: i64,
    pub n2_min: i64,
    pub n2_max: i64,
}

impl LatticeBox {
    pub fn new(n1_min: i64, n1_max: i64, n2_min: i64, n2_max: i64) -> Result<Self> {
        if n1_min > n1_max || n2_min > n2_max {
            return Err(Error::EmptyBox(format!(
                "[{n1_min}, {n1_max}] x [{n2_min}, {n2_max}]"
            )));
        }
        Ok(LatticeBox {
            n1_min,
            n1_max,
            n2_min,
            n2_max,
        })
    }

    /// Symmetric box `[-r1, r1] x [-r2, r2]`.
    pub fn symmetric(r1: i64, r2: i64) -> Self {
        assert!(r1 >= 0 && r2 >= 0);
        LatticeBox {
            n1_min: -r1,
            n1_max: r1,
            n2_min: -r2,
            n2_max: r2,
        }
    }

    pub fn contains(&self, k: LatticeIndex) -> bool {
        self.n1_min <= k.0 && k.0 <= self.n1_max && self.n2_min <= k.1 && k.1 <= self.n2_max
    }

    /// Erode by `m1` in `k1` and `m2` in `k2`; `None` when nothing is left.
    pub fn shrink(&self, m1: i64, m2: i64) -> Option<Self> {
        debug_assert!(m1 >= 0 && m2 >= 0);
        LatticeBox::new(
            self.n1_min + m1,
            self.n1_max - m1,
            self.n2_min + m2,
            self.n2_max - m2,
        )
        .ok()
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        LatticeBox::new(
            self.n1_min.max(other.n1_min),
            self.n1_max.min(other.n1_max),
            self.n2_min.max(other.n2_min),
            self.n2_max.min(other.n2_max),
        )
        .ok()
    }

    pub fn translate(&self, n: LatticeIndex) -> Self {
        LatticeBox {
            n1_min: self.n1_min + n.0,
            n1_max: self.n1_max + n.0,
            n2_min: self.n2_min + n.1,
            n2_max: self.n2_max + n.1,
        }
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &Self) -> Self {
        LatticeBox {
            n1_min: self.n1_min.min(other.n1_min),
            n1_max: self.n1_max.max(other.n1_max),
            n2_min: self.n2_min.min(other.n2_min),
            n2_max: self.n2_max.max(other.n2_max),
        }
    }

    pub fn is_symmetric(&self, axis: u8) -> bool {
        match axis {
            1 => self.n1_min == -self.n1_max,
            2 => self.n2_min == -self.n2_max,
            _ => panic!("axis must be 1 or 2"),
        }
    }

    pub fn point_count(&self) -> u64 {
        ((self.n1_max - self.n1_min + 1) as u64) * ((self.n2_max - self.n2_min + 1) as u64)
    }

    /// Lexicographic iteration over all points.
    pub fn iter(&self) -> impl Iterator<Item = LatticeIndex> + '_ {
        let b = *self;
        (b.n1_min..=b.n1_max).flat_map(move |k1| (b.n2_min..=b.n2_max).map(move |k2| (k1, k2)))
    }
}

impl fmt::Display for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] x [{}, {}]",
            self.n1_min, self.n1_max, self.n2_min, self.n2_max
        )
    }
}

/// The region on which a series' stored coefficients are asserted complete.
///
/// `Entire` marks a trigonometric polynomial: every unstored coefficient is
/// zero on all of `Z^2`. `Window` asserts completeness only inside the box.
/// `Empty` makes no assertion anywhere; it arises when completeness regions
/// shrink to nothing and keeps that outcome explicit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Domain {
    Entire,
    Window(LatticeBox),
    Empty,
}

impl Domain {
    pub fn contains(&self, k: LatticeIndex) -> bool {
        match self {
            Domain::Entire => true,
            Domain::Window(b) => b.contains(k),
            Domain::Empty => false,
        }
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        match (self, other) {
            (Domain::Entire, d) | (d, Domain::Entire) => *d,
            (Domain::Empty, _) | (_, Domain::Empty) => Domain::Empty,
            (Domain::Window(a), Domain::Window(b)) => match a.intersect(b) {
                Some(c) => Domain::Window(c),
                None => Domain::Empty,
            },
        }
    }

    pub fn shrink(&self, m1: i64, m2: i64) -> Domain {
        match self {
            Domain::Entire => Domain::Entire,
            Domain::Empty => Domain::Empty,
            Domain::Window(b) => match b.shrink(m1, m2) {
                Some(c) => Domain::Window(c),
                None => Domain::Empty,
            },
        }
    }

    pub fn translate(&self, n: LatticeIndex) -> Domain {
        match self {
            Domain::Window(b) => Domain::Window(b.translate(n)),
            d => *d,
        }
    }

    pub fn is_symmetric(&self, axis: u8) -> bool {
        match self {
            Domain::Window(b) => b.is_symmetric(axis),
            _ => true,
        }
    }

    pub fn is_entire(&self) -> bool {
        matches!(self, Domain::Entire)
    }

    pub fn window(&self) -> Option<&LatticeBox> {
        match self {
            Domain::Window(b) => Some(b),
            _ => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Entire => write!(f, "entire"),
            Domain::Window(b) => write!(f, "{b}"),
            Domain::Empty => write!(f, "empty"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shrink_and_intersect_stay_valid_or_explicitly_empty() {
        let b = LatticeBox::new(-3, 3, -1, 1).unwrap();
        assert_eq!(b.shrink(1, 0), LatticeBox::new(-2, 2, -1, 1).ok());
        assert_eq!(b.shrink(1, 2), None);
        assert_eq!(b.shrink(4, 0), None);
        let c = LatticeBox::new(2, 5, 0, 4).unwrap();
        assert_eq!(b.intersect(&c), LatticeBox::new(2, 3, 0, 1).ok());
        let d = LatticeBox::new(10, 11, 0, 0).unwrap();
        assert_eq!(b.intersect(&d), None);
        assert!(LatticeBox::new(1, 0, 0, 0).is_err());
    }

    #[test]
    fn lexicographic_iteration() {
        let b = LatticeBox::new(0, 1, 5, 6).unwrap();
        let pts: Vec<_> = b.iter().collect();
        assert_eq!(pts, vec![(0, 5), (0, 6), (1, 5), (1, 6)]);
        assert_eq!(b.point_count(), 4);
    }

    #[test]
    fn domain_algebra() {
        let w = Domain::Window(LatticeBox::symmetric(2, 2));
        assert_eq!(Domain::Entire.intersect(&w), w);
        assert_eq!(w.intersect(&Domain::Empty), Domain::Empty);
        let v = Domain::Window(LatticeBox::new(3, 4, 0, 0).unwrap());
        assert_eq!(w.intersect(&v), Domain::Empty);
        assert_eq!(w.shrink(3, 0), Domain::Empty);
        assert!(w.is_symmetric(1) && w.is_symmetric(2));
    }
}
