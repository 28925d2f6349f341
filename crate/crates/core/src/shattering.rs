//! Shattered and strongly shattered families, VC and dual VC dimension,
//! sandwich and Sauer-Shelah checks, shattering-extremal (SE) detection by
//! definition and by symmetric-restriction scan, and flip geodesics inside
//! a system.

use crate::bits::BitTable;
use crate::boolcube::{enumerate_cubes, gather, scatter, Cube, CubeError, Family, System};
use thiserror::Error;

/// Default cap on the coordinate count for the `3^m` symmetric-restriction scan.
pub const DEFAULT_LOPSIDED_LIMIT: usize = 14;
/// Cap for the all-partitions duality check (`2^m` partitions, each scanned).
pub const DUALITY_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShatterError {
    #[error("subset {subset:#b} is not contained in a ground set of {m} coordinates")]
    SubsetOutOfRange { subset: u32, m: usize },
    #[error("{op} limited to {limit} coordinates, got {m}")]
    LimitExceeded {
        op: &'static str,
        m: usize,
        limit: usize,
    },
    #[error("sandwich inequality violated: |sstr|={sstr} |S|={size} |str|={str_}")]
    SandwichViolation { sstr: u64, size: u64, str_: u64 },
    #[error("duality violated on partition {partition:#b}")]
    DualityViolation { partition: u32 },
    #[error("point {0:#b} is not a member of the system")]
    NotMember(u32),
    #[error("no in-system geodesic: Hamming distance {required}, in-system distance {}",
            .actual.map(|d| d.to_string()).unwrap_or_else(|| "unreachable".into()))]
    NoGeodesic { required: u32, actual: Option<u32> },
    #[error(transparent)]
    Cube(#[from] CubeError),
}

fn check_subset(s: &System, y: u32) -> Result<(), ShatterError> {
    if y & !s.ground().full_mask() != 0 {
        Err(ShatterError::SubsetOutOfRange {
            subset: y,
            m: s.dim(),
        })
    } else {
        Ok(())
    }
}

/// `S` shatters `Y`: every pattern on `Y` extends to a member (∀f ∃g).
///
/// The empty set is shattered exactly when `S` is nonempty.
pub fn shatters(s: &System, y: u32) -> Result<bool, ShatterError> {
    check_subset(s, y)?;
    let k = y.count_ones() as usize;
    let mut seen = BitTable::zeros(1 << k);
    let mut remaining = 1u64 << k;
    for p in s.members() {
        let pat = gather(p, y) as usize;
        if !seen.get(pat) {
            seen.set(pat, true);
            remaining -= 1;
            if remaining == 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `S` strongly shatters `Y`: one outside assignment works for every pattern
/// on `Y` (∃g ∀f), i.e. some `Y`-cube lies entirely inside `S`.
pub fn strongly_shatters(s: &System, y: u32) -> Result<bool, ShatterError> {
    check_subset(s, y)?;
    let outside = s.ground().full_mask() & !y;
    let k = y.count_ones();
    let g_count = 1u32 << outside.count_ones();
    'outer: for g in 0..g_count {
        let base = scatter(g, outside);
        for f in 0..1u32 << k {
            if !s.contains(base | scatter(f, y)) {
                continue 'outer;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// The complete shattering data of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShatterProfile {
    pub shattered: Family,
    pub strongly_shattered: Family,
    pub vc: i32,
    pub dvc: i32,
    pub size: u64,
}

/// Computes `str(S)`, `sstr(S)`, vc and dvc by direct per-subset quantifier
/// checks. This is the trusted oracle; see [`profile_recursive`] for the
/// independent decomposition route.
pub fn profile(s: &System) -> ShatterProfile {
    let ground = s.ground().clone();
    let shattered = Family::from_predicate(ground.clone(), |y| shatters(s, y).unwrap());
    let strongly_shattered = Family::from_predicate(ground, |y| strongly_shatters(s, y).unwrap());
    ShatterProfile {
        vc: shattered.max_set_size(),
        dvc: strongly_shattered.max_set_size(),
        size: s.size(),
        shattered,
        strongly_shattered,
    }
}

/// Computes `(str(S), sstr(S))` by recursion on the coordinate restrictions
/// associated with the last coordinate `x`:
///
/// * `Y ∌ x` is shattered iff `Y` is shattered by `S' ∪ S''`;
///   `Y ∪ {x}` is shattered iff `Y` is shattered by both `S'` and `S''`.
/// * `Y ∌ x` is strongly shattered iff `Y` is strongly shattered by `S'`
///   or by `S''`; `Y ∪ {x}` iff `Y` is strongly shattered by `S' ∩ S''`.
pub fn profile_recursive(s: &System) -> (Family, Family) {
    let m = s.dim();
    if m == 0 {
        let mut str_f = Family::empty(s.ground().clone());
        let mut sstr_f = Family::empty(s.ground().clone());
        if s.size() > 0 {
            str_f.insert(0);
            sstr_f.insert(0);
        }
        return (str_f, sstr_f);
    }
    let x = m - 1;
    let (s0, s1) = s.coordinate_restrictions(x).expect("x < m");
    let (str_union, _) = profile_recursive(&s0.union(&s1));
    let (str0, sstr0) = profile_recursive(&s0);
    let (str1, sstr1) = profile_recursive(&s1);
    let (_, sstr_inter) = profile_recursive(&s0.intersection(&s1));

    let xbit = 1u32 << x;
    let str_f = Family::from_predicate(s.ground().clone(), |y| {
        if y & xbit == 0 {
            str_union.contains(y)
        } else {
            let y0 = y & !xbit;
            str0.contains(y0) && str1.contains(y0)
        }
    });
    let sstr_f = Family::from_predicate(s.ground().clone(), |y| {
        if y & xbit == 0 {
            sstr0.contains(y) || sstr1.contains(y)
        } else {
            sstr_inter.contains(y & !xbit)
        }
    });
    (str_f, sstr_f)
}

/// Returns `(|sstr(S)|, |S|, |str(S)|)`. A violated inequality is an
/// implementation bug and is surfaced as an error.
pub fn sandwich_check(s: &System) -> Result<(u64, u64, u64), ShatterError> {
    let p = profile(s);
    let triple = (p.strongly_shattered.size(), p.size, p.shattered.size());
    if triple.0 > triple.1 || triple.1 > triple.2 {
        return Err(ShatterError::SandwichViolation {
            sstr: triple.0,
            size: triple.1,
            str_: triple.2,
        });
    }
    Ok(triple)
}

/// `Σ_{i=0..vc} C(m, i)`, the binomial-sum bound on `|S|`.
pub fn sauer_bound(s: &System) -> u64 {
    let vc = profile(s).vc;
    binomial_sum(s.dim(), vc)
}

pub fn binomial_sum(m: usize, upto: i32) -> u64 {
    if upto < 0 {
        return 0;
    }
    let mut total = 0u64;
    let mut binom = 1u64; // C(m, 0)
    for i in 0..=(upto as u64).min(m as u64) {
        if i > 0 {
            binom = binom * (m as u64 - i + 1) / i;
        }
        total += binom;
    }
    total
}

/// Verifies, over every partition `{X', X''}` of the ground set, that exactly
/// one of "`S` shatters `X'`" and "`¬S` strongly shatters `X''`" holds, and
/// that `str(¬S) = sstr(S)*` and `sstr(¬S) = str(S)*` as families.
pub fn duality_check(s: &System) -> Result<(), ShatterError> {
    let m = s.dim();
    if m > DUALITY_LIMIT {
        return Err(ShatterError::LimitExceeded {
            op: "duality_check",
            m,
            limit: DUALITY_LIMIT,
        });
    }
    let full = s.ground().full_mask();
    let not_s = s.complement();
    for x1 in 0..=full {
        let x2 = full ^ x1;
        let a = shatters(s, x1)?;
        let b = strongly_shatters(&not_s, x2)?;
        if a == b {
            return Err(ShatterError::DualityViolation { partition: x1 });
        }
        if x1 == full && full == 0 {
            break;
        }
    }
    let p = profile(s);
    let pc = profile(&not_s);
    if pc.shattered != p.strongly_shattered.co_complement()
        || pc.strongly_shattered != p.shattered.co_complement()
    {
        return Err(ShatterError::DualityViolation { partition: 0 });
    }
    Ok(())
}

/// SE: the shattered and strongly shattered families coincide.
pub fn is_se(s: &System) -> bool {
    let p = profile(s);
    p.shattered == p.strongly_shattered
}

/// Checks that the three equivalent SE criteria (`sstr = str`,
/// `|sstr| = |S|`, `|S| = |str|`) agree with each other, and that the system
/// and its complement agree on SE-ness. Returns the common verdict.
pub fn se_char_check(s: &System) -> Result<bool, ShatterError> {
    let p = profile(s);
    let by_families = p.shattered == p.strongly_shattered;
    let by_lower = p.strongly_shattered.size() == p.size;
    let by_upper = p.size == p.shattered.size();
    if by_families != by_lower || by_lower != by_upper {
        return Err(ShatterError::SandwichViolation {
            sstr: p.strongly_shattered.size(),
            size: p.size,
            str_: p.shattered.size(),
        });
    }
    if is_se(&s.complement()) != by_families {
        return Err(ShatterError::SandwichViolation {
            sstr: p.strongly_shattered.size(),
            size: p.size,
            str_: p.shattered.size(),
        });
    }
    Ok(by_families)
}

/// Scans all `3^m` cubes, by increasing number of free coordinates, for one
/// whose restriction is non-trivial and symmetric. Such a cube exists iff
/// the system is not SE.
pub fn find_symmetric_restriction(s: &System) -> Result<Option<Cube>, ShatterError> {
    find_symmetric_restriction_with_limit(s, DEFAULT_LOPSIDED_LIMIT)
}

pub fn find_symmetric_restriction_with_limit(
    s: &System,
    limit: usize,
) -> Result<Option<Cube>, ShatterError> {
    let m = s.dim();
    if m > limit {
        return Err(ShatterError::LimitExceeded {
            op: "find_symmetric_restriction",
            m,
            limit,
        });
    }
    'cubes: for cube in enumerate_cubes(s.ground()) {
        let free = cube.free_mask();
        let mut any_in = false;
        let mut any_out = false;
        for p in cube.points() {
            let inside = s.contains(p);
            // symmetric: membership must match the antipode within the cube
            if inside != s.contains(p ^ free) {
                continue 'cubes;
            }
            any_in |= inside;
            any_out |= !inside;
        }
        if any_in && any_out {
            return Ok(Some(cube));
        }
    }
    Ok(None)
}

/// A shortest flip path between two members of a system, staying inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSequence {
    pub start: u32,
    pub end: u32,
    /// Coordinate indices flipped, in order.
    pub steps: Vec<usize>,
}

/// BFS inside the system from `from` to `to`, expanding neighbors in
/// increasing coordinate order. Succeeds only when the in-system distance
/// equals the Hamming distance (always the case for SE systems).
pub fn flip_geodesic(s: &System, from: u32, to: u32) -> Result<FlipSequence, ShatterError> {
    for p in [from, to] {
        if !s.contains(p) {
            return Err(ShatterError::NotMember(p));
        }
    }
    let required = (from ^ to).count_ones();
    let m = s.dim();
    let mut parent: Vec<Option<(u32, usize)>> = vec![None; s.ground().point_count()];
    let mut dist: Vec<u32> = vec![u32::MAX; s.ground().point_count()];
    let mut queue = std::collections::VecDeque::new();
    dist[from as usize] = 0;
    queue.push_back(from);
    while let Some(p) = queue.pop_front() {
        if p == to {
            break;
        }
        for i in 0..m {
            let q = p ^ (1u32 << i);
            if s.contains(q) && dist[q as usize] == u32::MAX {
                dist[q as usize] = dist[p as usize] + 1;
                parent[q as usize] = Some((p, i));
                queue.push_back(q);
            }
        }
    }
    let actual = dist[to as usize];
    if actual == u32::MAX {
        return Err(ShatterError::NoGeodesic {
            required,
            actual: None,
        });
    }
    if actual != required {
        return Err(ShatterError::NoGeodesic {
            required,
            actual: Some(actual),
        });
    }
    let mut steps = Vec::with_capacity(actual as usize);
    let mut cur = to;
    while cur != from {
        let (prev, coord) = parent[cur as usize].expect("reached points have parents");
        steps.push(coord);
        cur = prev;
    }
    steps.reverse();
    Ok(FlipSequence {
        start: from,
        end: to,
        steps,
    })
}

/// True when the members of `S`, joined along Hamming-distance-1 pairs, form
/// an isometric subgraph of the hypercube: in-system BFS distance equals
/// Hamming distance for every member pair.
pub fn is_partial_cube(s: &System) -> bool {
    let m = s.dim();
    let n_points = s.ground().point_count();
    let members: Vec<u32> = s.members().collect();
    let mut dist: Vec<u32> = vec![u32::MAX; n_points];
    let mut queue = std::collections::VecDeque::new();
    for &src in &members {
        dist.fill(u32::MAX);
        dist[src as usize] = 0;
        queue.clear();
        queue.push_back(src);
        while let Some(p) = queue.pop_front() {
            for i in 0..m {
                let q = p ^ (1u32 << i);
                if s.contains(q) && dist[q as usize] == u32::MAX {
                    dist[q as usize] = dist[p as usize] + 1;
                    queue.push_back(q);
                }
            }
        }
        for &t in &members {
            if dist[t as usize] != (src ^ t).count_ones() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolcube::GroundSet;

    fn sys(m: usize, pts: &[u32]) -> System {
        System::new(GroundSet::of_size(m), pts).unwrap()
    }

    /// Brute-force shattering oracle, written directly from the quantifier
    /// definition, independent of the bit-table implementation path.
    fn shatters_oracle(pts: &[u32], m: usize, y: u32) -> bool {
        let outside = ((1u32 << m) - 1) & !y;
        (0..1u32 << y.count_ones()).all(|f| {
            (0..1u32 << outside.count_ones())
                .any(|g| pts.contains(&(scatter(f, y) | scatter(g, outside))))
        })
    }

    fn strongly_shatters_oracle(pts: &[u32], m: usize, y: u32) -> bool {
        let outside = ((1u32 << m) - 1) & !y;
        (0..1u32 << outside.count_ones()).any(|g| {
            (0..1u32 << y.count_ones())
                .all(|f| pts.contains(&(scatter(f, y) | scatter(g, outside))))
        })
    }

    #[test]
    fn shatters_examples() {
        let s = sys(2, &[0b00, 0b01, 0b10]);
        assert!(shatters(&s, 0b01).unwrap());
        assert!(shatters(&s, 0b10).unwrap());
        assert!(!shatters(&s, 0b11).unwrap());

        // empty system shatters nothing, not even the empty set
        let empty = System::empty(GroundSet::of_size(2));
        assert!(!shatters(&empty, 0).unwrap());
        assert!(!strongly_shatters(&empty, 0).unwrap());

        let full = System::full(GroundSet::of_size(3));
        for y in 0..8 {
            assert!(strongly_shatters(&full, y).unwrap());
        }

        assert!(shatters(&s, 0b100).is_err());
    }

    #[test]
    fn shatters_matches_brute_force_oracle() {
        // all systems on m = 3 against the definitional oracle
        let m = 3;
        for bits in 0u32..256 {
            let pts: Vec<u32> = (0..8).filter(|&p| bits >> p & 1 != 0).collect();
            let s = sys(m, &pts);
            for y in 0..8u32 {
                assert_eq!(
                    shatters(&s, y).unwrap(),
                    shatters_oracle(&pts, m, y),
                    "bits={bits:#b} y={y:#b}"
                );
                assert_eq!(
                    strongly_shatters(&s, y).unwrap(),
                    strongly_shatters_oracle(&pts, m, y),
                    "bits={bits:#b} y={y:#b}"
                );
            }
        }
    }

    #[test]
    fn profile_examples() {
        let s = sys(2, &[0b00, 0b01, 0b10]);
        let p = profile(&s);
        assert_eq!(p.size, 3);
        assert_eq!(p.vc, 1);
        assert_eq!(p.dvc, 1);
        assert_eq!(p.shattered.size(), 3);
        assert_eq!(p.strongly_shattered, p.shattered);

        let full = System::full(GroundSet::of_size(3));
        let pf = profile(&full);
        assert_eq!(pf.vc, 3);
        assert_eq!(pf.dvc, 3);
        assert_eq!(pf.shattered.size(), 8);

        let diag = sys(2, &[0b00, 0b11]);
        let pd = profile(&diag);
        assert_eq!(pd.shattered.size(), 3);
        assert_eq!(pd.strongly_shattered.size(), 1);
        assert!(pd.strongly_shattered.is_subfamily_of(&pd.shattered));
    }

    #[test]
    fn sandwich_examples() {
        assert_eq!(sandwich_check(&sys(2, &[0b00, 0b11])).unwrap(), (1, 2, 3));
        let empty = System::empty(GroundSet::of_size(2));
        assert_eq!(sandwich_check(&empty).unwrap(), (0, 0, 0));
    }

    #[test]
    fn sauer_examples() {
        assert_eq!(sauer_bound(&System::full(GroundSet::of_size(3))), 8);
        assert_eq!(sauer_bound(&sys(2, &[0b00, 0b01, 0b10])), 3);
        assert_eq!(sauer_bound(&System::empty(GroundSet::of_size(2))), 0);
    }

    #[test]
    fn binomial_sum_values() {
        assert_eq!(binomial_sum(4, 2), 1 + 4 + 6);
        assert_eq!(binomial_sum(4, 9), 16);
        assert_eq!(binomial_sum(0, 0), 1);
        assert_eq!(binomial_sum(5, -1), 0);
    }

    #[test]
    fn duality_examples() {
        duality_check(&sys(2, &[0b00, 0b01, 0b10])).unwrap();
        duality_check(&System::full(GroundSet::of_size(3))).unwrap();
        duality_check(&System::empty(GroundSet::of_size(0))).unwrap();
        for bits in 0u32..256 {
            let pts: Vec<u32> = (0..8).filter(|&p| bits >> p & 1 != 0).collect();
            duality_check(&sys(3, &pts)).unwrap();
        }
    }

    #[test]
    fn se_examples() {
        assert!(is_se(&sys(2, &[0b00, 0b01, 0b10])));
        assert!(!is_se(&sys(2, &[0b00, 0b11])));
        assert!(is_se(&System::empty(GroundSet::of_size(2))));
        assert!(is_se(&System::full(GroundSet::of_size(2))));
        assert!(se_char_check(&sys(2, &[0b00, 0b01, 0b10])).unwrap());
        assert!(!se_char_check(&sys(2, &[0b00, 0b11])).unwrap());
    }

    #[test]
    fn symmetric_restriction_examples() {
        // S = {00, 11} is itself symmetric and non-trivial
        let s = sys(2, &[0b00, 0b11]);
        let w = find_symmetric_restriction(&s).unwrap().unwrap();
        assert!(!s.restrict(&w).unwrap().is_trivial());
        assert!(s.restrict(&w).unwrap().is_symmetric());

        assert!(find_symmetric_restriction(&sys(2, &[0b00, 0b01, 0b10]))
            .unwrap()
            .is_none());
        assert!(find_symmetric_restriction(&System::full(GroundSet::of_size(2)))
            .unwrap()
            .is_none());
        assert!(find_symmetric_restriction(&System::empty(GroundSet::of_size(2)))
            .unwrap()
            .is_none());
    }

    #[test]
    fn lopsidedness_matches_se_on_all_m3_systems() {
        for bits in 0u32..256 {
            let pts: Vec<u32> = (0..8).filter(|&p| bits >> p & 1 != 0).collect();
            let s = sys(3, &pts);
            assert_eq!(
                is_se(&s),
                find_symmetric_restriction(&s).unwrap().is_none(),
                "bits={bits:#b}"
            );
        }
    }

    #[test]
    fn flip_geodesic_examples() {
        let s = sys(2, &[0b00, 0b01, 0b10]);
        let trivial = flip_geodesic(&s, 0b01, 0b01).unwrap();
        assert!(trivial.steps.is_empty());

        let one = flip_geodesic(&s, 0b00, 0b01).unwrap();
        assert_eq!(one.steps, vec![0]);

        // distance-2 pair through an in-system midpoint
        let two = flip_geodesic(&s, 0b01, 0b10).unwrap();
        assert_eq!(two.steps.len(), 2);

        let diag = sys(2, &[0b00, 0b11]);
        match flip_geodesic(&diag, 0b00, 0b11) {
            Err(ShatterError::NoGeodesic {
                required: 2,
                actual: None,
            }) => {}
            other => panic!("expected disconnected geodesic, got {other:?}"),
        }
        assert!(matches!(
            flip_geodesic(&diag, 0b00, 0b01),
            Err(ShatterError::NotMember(_))
        ));
    }

    #[test]
    fn partial_cube_examples() {
        assert!(is_partial_cube(&sys(2, &[0b00, 0b01, 0b10])));
        assert!(!is_partial_cube(&sys(2, &[0b00, 0b11])));
        assert!(is_partial_cube(&sys(3, &[0b101])));
        assert!(is_partial_cube(&System::empty(GroundSet::of_size(2))));
    }

    #[test]
    fn recursive_profile_agrees_on_all_m3_systems() {
        for bits in 0u32..256 {
            let pts: Vec<u32> = (0..8).filter(|&p| bits >> p & 1 != 0).collect();
            let s = sys(3, &pts);
            let p = profile(&s);
            let (str_f, sstr_f) = profile_recursive(&s);
            assert_eq!(p.shattered, str_f, "bits={bits:#b}");
            assert_eq!(p.strongly_shattered, sstr_f, "bits={bits:#b}");
        }
    }

    #[test]
    fn vc_conventions() {
        let empty = System::empty(GroundSet::of_size(3));
        let p = profile(&empty);
        assert_eq!((p.vc, p.dvc), (-1, -1));
        let full = System::full(GroundSet::of_size(3));
        assert_eq!(profile(&full).vc, 3);
        // ∅ is shattered iff S nonempty
        assert!(shatters(&sys(3, &[5]), 0).unwrap());
    }
}
