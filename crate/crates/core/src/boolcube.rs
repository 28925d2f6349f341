//! Systems over boolean cubes `{0,1}^X` and their basic algebra:
//! complement, antipodal, cubes, restrictions, and the co-complement
//! operator on set families.
//!
//! Points of `{0,1}^X` and subsets of `X` are both encoded as `u32` words;
//! bit `i` corresponds to the `i`-th coordinate of the ground set. Membership
//! tables are dense: one bit per point (or per subset), `2^m` entries total.

use crate::bits::BitTable;
use thiserror::Error;

/// Default cap on the number of coordinates (table size `2^m`).
pub const DEFAULT_COORD_LIMIT: usize = 20;
/// Hard cap; point words are `u32` and tables must stay desk-scale.
pub const HARD_COORD_LIMIT: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubeError {
    #[error("duplicate coordinate label `{0}`")]
    DuplicateLabel(String),
    #[error("too many coordinates: {got} (limit {limit})")]
    TooManyCoords { got: usize, limit: usize },
    #[error("point {point:#b} out of range for {m} coordinates")]
    PointOutOfRange { point: u32, m: usize },
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("unknown coordinate index {0}")]
    UnknownCoordinate(usize),
}

/// An ordered set of coordinate labels. The order is fixed for the lifetime
/// of every object derived from it; bit `i` of any point word refers to
/// `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self, CubeError> {
        Self::with_limit(labels, DEFAULT_COORD_LIMIT)
    }

    pub fn with_limit(labels: Vec<String>, limit: usize) -> Result<Self, CubeError> {
        let limit = limit.min(HARD_COORD_LIMIT);
        if labels.len() > limit {
            return Err(CubeError::TooManyCoords {
                got: labels.len(),
                limit,
            });
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(CubeError::DuplicateLabel(a.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set with anonymous labels `x0..x{m-1}`.
    pub fn of_size(m: usize) -> Self {
        GroundSet::new((0..m).map(|i| format!("x{i}")).collect())
            .expect("generated labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of points of `{0,1}^X`, i.e. `2^m`.
    pub fn point_count(&self) -> usize {
        1usize << self.labels.len()
    }

    /// Word with one bit per coordinate.
    pub fn full_mask(&self) -> u32 {
        if self.labels.is_empty() {
            0
        } else {
            (1u32 << self.labels.len()) - 1
        }
    }
}

/// A system: a ground set plus a dense membership table over all `2^m`
/// points of the cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    ground: GroundSet,
    table: BitTable,
}

impl System {
    /// Builds a system from an explicit point list (duplicates are merged).
    pub fn new(ground: GroundSet, points: &[u32]) -> Result<Self, CubeError> {
        let mut table = BitTable::zeros(ground.point_count());
        for &p in points {
            if p > ground.full_mask() {
                return Err(CubeError::PointOutOfRange {
                    point: p,
                    m: ground.len(),
                });
            }
            table.set(p as usize, true);
        }
        Ok(System { ground, table })
    }

    pub fn empty(ground: GroundSet) -> Self {
        let table = BitTable::zeros(ground.point_count());
        System { ground, table }
    }

    pub fn full(ground: GroundSet) -> Self {
        let table = BitTable::ones(ground.point_count());
        System { ground, table }
    }

    pub fn from_predicate(ground: GroundSet, pred: impl Fn(u32) -> bool) -> Self {
        let mut table = BitTable::zeros(ground.point_count());
        for p in 0..ground.point_count() {
            if pred(p as u32) {
                table.set(p, true);
            }
        }
        System { ground, table }
    }

    pub fn from_table(ground: GroundSet, table: BitTable) -> Self {
        assert_eq!(table.len(), ground.point_count());
        System { ground, table }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn table(&self) -> &BitTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.ground.len()
    }

    #[inline]
    pub fn contains(&self, point: u32) -> bool {
        self.table.get(point as usize)
    }

    pub fn size(&self) -> u64 {
        self.table.count_ones()
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.table.iter_ones().map(|i| i as u32)
    }

    /// `¬S`: bitwise-negated membership table.
    pub fn complement(&self) -> System {
        System {
            ground: self.ground.clone(),
            table: self.table.negated(),
        }
    }

    /// Pointwise union of two systems over the same ground set.
    pub fn union(&self, other: &System) -> System {
        assert_eq!(self.ground, other.ground);
        System {
            ground: self.ground.clone(),
            table: self.table.or(&other.table),
        }
    }

    /// Pointwise intersection of two systems over the same ground set.
    pub fn intersection(&self, other: &System) -> System {
        assert_eq!(self.ground, other.ground);
        System {
            ground: self.ground.clone(),
            table: self.table.and(&other.table),
        }
    }

    /// The antipodal system: `f` is a member iff `1-f` is a member of `self`.
    pub fn antipodal(&self) -> System {
        let full = self.ground.full_mask();
        System::from_predicate(self.ground.clone(), |p| self.contains(p ^ full))
    }

    pub fn is_symmetric(&self) -> bool {
        let full = self.ground.full_mask();
        self.members().all(|p| self.contains(p ^ full))
    }

    pub fn is_trivial(&self) -> bool {
        self.table.none() || self.table.all()
    }

    /// Restriction of the system to a cube: a system over the cube's free
    /// coordinates whose members are the projections of `S ∩ C`.
    pub fn restrict(&self, cube: &Cube) -> Result<System, CubeError> {
        if cube.coord_count() != self.ground.len() {
            return Err(CubeError::GroundMismatch);
        }
        let free = cube.free_mask();
        let sub_labels: Vec<String> = (0..self.ground.len())
            .filter(|&i| free >> i & 1 != 0)
            .map(|i| self.ground.labels[i].clone())
            .collect();
        let sub_ground = GroundSet::with_limit(sub_labels, HARD_COORD_LIMIT)?;
        let system = System::from_predicate(sub_ground, |pat| {
            self.contains(scatter(pat, free) | cube.fixed_bits())
        });
        Ok(system)
    }

    /// The two restrictions associated with coordinate `x`: the projections
    /// of the members with `x = 0` and with `x = 1` onto the remaining
    /// coordinates, in that order.
    pub fn coordinate_restrictions(&self, x: usize) -> Result<(System, System), CubeError> {
        if x >= self.ground.len() {
            return Err(CubeError::UnknownCoordinate(x));
        }
        let c0 = Cube::fixing(self.ground.len(), &[(x, false)]);
        let c1 = Cube::fixing(self.ground.len(), &[(x, true)]);
        Ok((self.restrict(&c0)?, self.restrict(&c1)?))
    }
}

/// Spreads the low bits of `pat` into the set positions of `mask`.
#[inline]
pub fn scatter(pat: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let i = m.trailing_zeros();
        out |= ((pat >> k) & 1) << i;
        m &= m - 1;
        k += 1;
    }
    out
}

/// Extracts the bits of `word` at the set positions of `mask`, packing them
/// into the low bits of the result.
#[inline]
pub fn gather(word: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let i = m.trailing_zeros();
        out |= ((word >> i) & 1) << k;
        m &= m - 1;
        k += 1;
    }
    out
}

/// Per-coordinate state of a cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordState {
    Free,
    Fixed(bool),
}

/// A sub-cube of `{0,1}^X`: each coordinate is either free or fixed to a
/// constant. `dim(C)` is the set of free coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    m: usize,
    free: u32,
    fixed: u32, // bits meaningful only outside `free`
}

impl Cube {
    pub fn new(m: usize, free: u32, fixed: u32) -> Self {
        assert!(free & fixed == 0, "fixed bits must lie outside free set");
        Cube { m, free, fixed }
    }

    pub fn all_free(m: usize) -> Self {
        let free = if m == 0 { 0 } else { (1u32 << m) - 1 };
        Cube { m, free, fixed: 0 }
    }

    /// Cube fixing the listed coordinates; all others free.
    pub fn fixing(m: usize, fixes: &[(usize, bool)]) -> Self {
        let mut free = if m == 0 { 0 } else { (1u32 << m) - 1 };
        let mut fixed = 0;
        for &(i, v) in fixes {
            assert!(i < m);
            free &= !(1u32 << i);
            if v {
                fixed |= 1u32 << i;
            }
        }
        Cube { m, free, fixed }
    }

    pub fn coord_count(&self) -> usize {
        self.m
    }

    pub fn state(&self, i: usize) -> CoordState {
        assert!(i < self.m);
        if self.free >> i & 1 != 0 {
            CoordState::Free
        } else {
            CoordState::Fixed(self.fixed >> i & 1 != 0)
        }
    }

    pub fn free_mask(&self) -> u32 {
        self.free
    }

    pub fn fixed_bits(&self) -> u32 {
        self.fixed
    }

    /// Number of free coordinates, `|dim(C)|`.
    pub fn dim(&self) -> usize {
        self.free.count_ones() as usize
    }

    pub fn contains(&self, point: u32) -> bool {
        point & !self.free == self.fixed
    }

    /// All `2^dim` points of the cube, in increasing order of the packed
    /// free-coordinate pattern.
    pub fn points(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.dim()).map(move |pat| scatter(pat, self.free) | self.fixed)
    }
}

/// Yields all `3^m` cubes of `{0,1}^X` exactly once, ordered by increasing
/// number of free coordinates, then lexicographically (free mask, then
/// fixed bits).
pub fn enumerate_cubes(ground: &GroundSet) -> impl Iterator<Item = Cube> {
    let m = ground.len();
    let full = ground.full_mask();
    let mut free_masks: Vec<u32> = (0..=full).collect();
    if m == 0 {
        free_masks = vec![0];
    }
    free_masks.sort_by_key(|f| (f.count_ones(), *f));
    free_masks.into_iter().flat_map(move |free| {
        let comp = full & !free;
        // ascending enumeration of submasks of `comp`
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let fixed = next?;
            next = if fixed == comp {
                None
            } else {
                Some(((fixed | !comp) + 1) & comp)
            };
            Some(Cube::new(m, free, fixed))
        })
    })
}

/// A family of subsets of the ground set, stored as a dense table over all
/// `2^m` subset masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    ground: GroundSet,
    table: BitTable,
}

impl Family {
    pub fn empty(ground: GroundSet) -> Self {
        let table = BitTable::zeros(ground.point_count());
        Family { ground, table }
    }

    pub fn full(ground: GroundSet) -> Self {
        let table = BitTable::ones(ground.point_count());
        Family { ground, table }
    }

    pub fn from_predicate(ground: GroundSet, pred: impl Fn(u32) -> bool) -> Self {
        let mut table = BitTable::zeros(ground.point_count());
        for y in 0..ground.point_count() {
            if pred(y as u32) {
                table.set(y, true);
            }
        }
        Family { ground, table }
    }

    pub fn from_table(ground: GroundSet, table: BitTable) -> Self {
        assert_eq!(table.len(), ground.point_count());
        Family { ground, table }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn table(&self) -> &BitTable {
        &self.table
    }

    #[inline]
    pub fn contains(&self, subset: u32) -> bool {
        self.table.get(subset as usize)
    }

    pub fn insert(&mut self, subset: u32) {
        self.table.set(subset as usize, true);
    }

    pub fn size(&self) -> u64 {
        self.table.count_ones()
    }

    pub fn subsets(&self) -> impl Iterator<Item = u32> + '_ {
        self.table.iter_ones().map(|i| i as u32)
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.ground == other.ground && self.table.subset_of(&other.table)
    }

    /// Co-complement: `Y ∈ F*` iff the complement of `Y` is not in `F`.
    /// An involution, and antitone with respect to inclusion.
    pub fn co_complement(&self) -> Family {
        let full = self.ground.full_mask();
        Family::from_predicate(self.ground.clone(), |y| !self.contains(full ^ y))
    }

    /// True when removing any element from a member yields a member.
    pub fn is_downward_closed(&self) -> bool {
        self.subsets().all(|y| {
            let mut rest = y;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if !self.contains(y ^ bit) {
                    return false;
                }
                rest ^= bit;
            }
            true
        })
    }

    /// Largest member cardinality, or -1 for the empty family.
    pub fn max_set_size(&self) -> i32 {
        self.subsets()
            .map(|y| y.count_ones() as i32)
            .max()
            .unwrap_or(-1)
    }
}
