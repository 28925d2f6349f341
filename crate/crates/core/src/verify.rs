//! One verifier per claimed counting inequality/equality, VC formula, and
//! flip-sequence property; each runs exhaustive enumeration and emits a
//! structured [`Report`] with pass/fail and witness data.
//!
//! Counts come from the enumeration layer (`systems` + `graph`) while
//! shattering data comes from `shattering`; the two sides share no
//! predicate code.

use num::pow::pow;
use num::{BigInt, BigRational};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::boolcube::{Cube, CubeError, Family, System};
use crate::graph::{
    graph_stats, Digraph, Graph, GraphError, Orientation, SubgraphMask, SubgraphObjective,
};
use crate::shattering::{
    self, find_symmetric_restriction_with_limit, flip_geodesic, is_partial_cube, profile,
    ShatterError, ShatterProfile,
};
use crate::systems::{
    ab_distance_transform, build_orientation_system, build_subgraph_family, count_subgraphs,
    orientation_satisfies, steiner_transform, subgraph_satisfies, OrientationProperty,
    SubgraphProperty, SystemsError,
};

/// Partial-cube checks are skipped above this member count.
pub const PARTIAL_CUBE_MEMBER_LIMIT: u64 = 1 << 12;
/// Explicit geodesics are reconstructed for all member pairs up to this size.
pub const GEODESIC_MEMBER_LIMIT: u64 = 64;
/// Transform-restriction equality is verified up to this edge count.
pub const TRANSFORM_CHECK_EDGE_LIMIT: usize = 6;
/// Monotonicity is exercised over all 3^m partial digraphs up to this cap.
pub const MONOTONE_CHECK_EDGE_LIMIT: usize = 8;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Systems(#[from] SystemsError),
    #[error(transparent)]
    Shatter(#[from] ShatterError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cube(#[from] CubeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// A soft finding: verified and surfaced, but not folded into the verdict.
#[derive(Debug, Clone)]
pub struct Finding {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

/// Structured record for one claim.
#[derive(Debug, Clone)]
pub struct Report {
    pub claim: String,
    pub inputs: String,
    pub quantities: Vec<(String, String)>,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub findings: Vec<Finding>,
}

impl Report {
    fn new(claim: &str, inputs: String) -> Self {
        Report {
            claim: claim.to_string(),
            inputs,
            quantities: Vec::new(),
            verdict: Verdict::Pass,
            witness: None,
            findings: Vec::new(),
        }
    }

    fn quantity(&mut self, name: &str, value: impl std::fmt::Display) {
        self.quantities.push((name.to_string(), value.to_string()));
    }

    fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.quantity(name, if ok { "ok" } else { "VIOLATED" });
        if !ok && self.verdict != Verdict::Fail {
            self.verdict = Verdict::Fail;
            self.witness = Some(format!("{name}: {}", witness()));
        }
    }

    fn finding(&mut self, name: &str, ok: bool, detail: String) {
        self.findings.push(Finding {
            name: name.to_string(),
            ok,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "claim: {}", self.claim)?;
        writeln!(f, "inputs: {}", self.inputs)?;
        writeln!(f, "verdict: {}", self.verdict)?;
        for (k, v) in &self.quantities {
            writeln!(f, "  {k} = {v}")?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        for fi in &self.findings {
            writeln!(
                f,
                "finding: {} = {} ({})",
                fi.name,
                if fi.ok { "ok" } else { "DISCREPANT" },
                fi.detail
            )?;
        }
        Ok(())
    }
}

/// Runtime caps, overridable from the command line.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_edges: usize,
    pub max_lopsided: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: crate::systems::DEFAULT_ENUM_LIMIT,
            max_lopsided: shattering::DEFAULT_LOPSIDED_LIMIT,
        }
    }
}

fn describe(g: &Graph) -> String {
    format!("n={} m={} edges={:?}", g.n(), g.m(), g.edges())
}

/// Conservative rational upper bound on Euler's number.
fn euler_upper() -> BigRational {
    BigRational::new(
        BigInt::from(2718281828459045236u64),
        BigInt::from(1000000000000000000u64),
    )
}

/// Exact check of `count <= (m*e/exponent)^exponent` with `e` rounded up.
pub fn binomial_tail_bound_holds(count: u64, m: usize, exponent: usize) -> bool {
    let base = BigRational::from_integer(BigInt::from(m as u64)) * euler_upper()
        / BigRational::from_integer(BigInt::from(exponent as u64));
    pow(base, exponent) >= BigRational::from_integer(BigInt::from(count))
}

/// Cyclic/acyclic claims: counting inequalities against forests and
/// cycle-containing subgraphs, the exact characterizations of
/// `str(¬S_cyc)` and `sstr(S_cyc)`, the bridge inclusions, the component
/// and girth formulas for vc/dvc, the binomial tail bound, and strictness.
pub fn verify_cyclic(g: &Graph, limits: Limits) -> Result<Report, VerifyError> {
    let mut report = Report::new("cyclic-orientations", describe(g));
    let m = g.m();
    let full = g.full_mask().0;

    let s_cyc = build_orientation_system(g, &OrientationProperty::Cyclic, limits.max_edges)?;
    let s_acyc = s_cyc.complement();
    let forests = build_subgraph_family(g, &SubgraphProperty::IsForest, limits.max_edges)?;
    let cyclic_subs = build_subgraph_family(g, &SubgraphProperty::HasCycle, limits.max_edges)?;

    let n_cyc = s_cyc.size();
    let n_acyc = s_acyc.size();
    report.quantity("cyclic_orientations", n_cyc);
    report.quantity("acyclic_orientations", n_acyc);
    report.quantity("forest_subgraphs", forests.size());
    report.quantity("cyclic_subgraphs", cyclic_subs.size());

    report.check("cyclic_count_lower", n_cyc >= cyclic_subs.size(), || {
        format!("{n_cyc} < {}", cyclic_subs.size())
    });
    report.check("acyclic_count_upper", n_acyc <= forests.size(), || {
        format!("{n_acyc} > {}", forests.size())
    });

    let p_cyc = profile(&s_cyc);
    let p_acyc = profile(&s_acyc);

    // exact family characterizations
    report.check(
        "str_acyclic_equals_forests",
        p_acyc.shattered == forests,
        || "family mismatch".into(),
    );
    let removed_has_cycle = Family::from_predicate(g.ground_set(), |x| {
        subgraph_satisfies(g, &SubgraphProperty::HasCycle, SubgraphMask(full & !x))
    });
    report.check(
        "sstr_cyclic_equals_removed_cycles",
        p_cyc.strongly_shattered == removed_has_cycle,
        || "family mismatch".into(),
    );

    // bridge inclusions (inclusions only)
    let stats = graph_stats(g, g.full_mask());
    let bridges = stats.bridges.0;
    let non_bridges = full & !bridges;
    let mut bridge_subsets_in_sstr = true;
    let mut x = 0u32;
    loop {
        if !p_acyc.strongly_shattered.contains(x) {
            bridge_subsets_in_sstr = false;
            break;
        }
        if x == bridges {
            break;
        }
        x = ((x | !bridges) + 1) & bridges;
    }
    report.check("bridge_sets_strongly_shattered", bridge_subsets_in_sstr, || {
        format!("subset {x:#b} of the bridge set missing from sstr")
    });
    let str_cyc_meets_cycles = p_cyc
        .shattered
        .subsets()
        .all(|y| (full & !y) & non_bridges != 0);
    report.check(
        "str_cyclic_within_cycle_meeting_sets",
        str_cyc_meets_cycles,
        || "shattered set whose removal leaves only bridges".into(),
    );

    // vc / dvc formulas
    let k = stats.components;
    let expected_vc = (g.n() - k) as i32;
    report.quantity("vc_acyclic", p_acyc.vc);
    report.check("vc_acyclic_is_n_minus_k", p_acyc.vc == expected_vc, || {
        format!("vc={} expected {expected_vc}", p_acyc.vc)
    });
    // forest convention: girth infinity behaves as c = m + 1
    let expected_dvc = match stats.girth {
        Some(c) => m as i32 - c as i32,
        None => -1,
    };
    report.quantity("dvc_cyclic", p_cyc.dvc);
    report.check("dvc_cyclic_is_m_minus_c", p_cyc.dvc == expected_dvc, || {
        format!("dvc={} expected {expected_dvc}", p_cyc.dvc)
    });

    // binomial tail bound on the acyclic count
    if m >= 1 && g.n() > k {
        let ok = binomial_tail_bound_holds(n_acyc, m, g.n() - k);
        report.check("acyclic_tail_bound", ok, || {
            format!("{n_acyc} exceeds (me/(n-k))^(n-k)")
        });
    } else {
        report.quantity("acyclic_tail_bound", "not-applicable");
    }

    // strictness is implied rather than stated inline; soft finding
    let has_cycle = stats.girth.is_some();
    let strict_lower = n_cyc > cyclic_subs.size();
    let strict_upper = n_acyc < forests.size();
    report.finding(
        "strict_iff_cyclic",
        (strict_lower == has_cycle) && (strict_upper == has_cycle),
        format!("strict=({strict_lower},{strict_upper}) graph_has_cycle={has_cycle}"),
    );

    Ok(report)
}

/// k-strong claims: the two-sided subgraph count sandwich, the vc/dvc
/// bounds through minimum k-connected subgraphs, the binomial tail bound,
/// the orientability criterion, and strictness.
pub fn verify_strong(g: &Graph, k: usize, limits: Limits) -> Result<Report, VerifyError> {
    let mut report = Report::new("k-strong-orientations", format!("k={k} {}", describe(g)));
    let m = g.m();

    let s_k = build_orientation_system(g, &OrientationProperty::KStrong(k), limits.max_edges)?;
    let f_2k = count_subgraphs(g, &SubgraphProperty::KConnected(2 * k), limits.max_edges)?;
    let f_k = count_subgraphs(g, &SubgraphProperty::KConnected(k), limits.max_edges)?;
    report.quantity("k_strong_orientations", s_k.size());
    report.quantity("2k_connected_subgraphs", f_2k);
    report.quantity("k_connected_subgraphs", f_k);
    report.check("lower_count", f_2k <= s_k.size(), || {
        format!("{f_2k} > {}", s_k.size())
    });
    report.check("upper_count", s_k.size() <= f_k, || {
        format!("{} > {f_k}", s_k.size())
    });

    let p = profile(&s_k);
    report.quantity("vc", p.vc);
    report.quantity("dvc", p.dvc);
    report.check("dvc_le_vc", p.dvc <= p.vc, || format!("{} > {}", p.dvc, p.vc));

    let c_k = crate::graph::optimize_subgraph(
        g,
        &SubgraphObjective::MinEdgesKConnected(k),
        limits.max_edges,
    )?;
    let c_2k = crate::graph::optimize_subgraph(
        g,
        &SubgraphObjective::MinEdgesKConnected(2 * k),
        limits.max_edges,
    )?;
    match c_2k {
        Some(c) => {
            report.quantity("c_2k", c);
            report.check("dvc_lower_bound", m as i32 - c as i32 <= p.dvc, || {
                format!("m-c_2k={} > dvc={}", m as i32 - c as i32, p.dvc)
            });
        }
        None => report.quantity("c_2k", "not-applicable"),
    }
    match c_k {
        Some(c) => {
            report.quantity("c_k", c);
            report.check("vc_upper_bound", p.vc <= m as i32 - c as i32, || {
                format!("vc={} > m-c_k={}", p.vc, m as i32 - c as i32)
            });
            if m as i32 - (c as i32) >= 1 {
                let ok = binomial_tail_bound_holds(s_k.size(), m, m - c as usize);
                report.check("k_strong_tail_bound", ok, || {
                    format!("{} exceeds (me/(m-c_k))^(m-c_k)", s_k.size())
                });
            } else {
                report.quantity("k_strong_tail_bound", "not-applicable");
            }
        }
        None => report.quantity("c_k", "not-applicable"),
    }

    // orientability cross-check: S_k nonempty iff g is 2k-edge-connected
    let is_2k = crate::graph::is_k_edge_connected(g, g.full_mask(), 2 * k);
    report.check("orientability", (s_k.size() > 0) == is_2k, || {
        format!("|S_k|={} 2k_connected={is_2k}", s_k.size())
    });

    let strict_lower = f_2k < s_k.size();
    let strict_upper = s_k.size() < f_k;
    report.finding(
        "strict_iff_2k_connected",
        (strict_lower && strict_upper) == is_2k,
        format!("strict=({strict_lower},{strict_upper}) 2k_connected={is_2k}"),
    );

    Ok(report)
}

/// Checks the oriented property for monotonicity under arc addition (on
/// demand), the orientability hypothesis, and the counting inequality
/// between subgraphs with the undirected property and orientations with
/// the directed one.
pub fn verify_general(
    g: &Graph,
    p: &OrientationProperty,
    p_sub: &SubgraphProperty,
    monotone_check: bool,
    limits: Limits,
) -> Result<Report, VerifyError> {
    let mut report = Report::new(
        "general-inequality",
        format!("{p:?} vs {p_sub:?}; {}", describe(g)),
    );
    let m = g.m();

    if monotone_check && m <= MONOTONE_CHECK_EDGE_LIMIT {
        // hypotheses are input conditions; violations invalidate the claim
        // instance rather than the theorem
        let mut hypothesis_witness: Option<String> = None;
        'outer: for bits in 0..=g.full_mask().0 {
            let mask = SubgraphMask(bits);
            // every orientation word restricted to the mask
            let mut o = 0u32;
            loop {
                if orientation_satisfies(g, p, Orientation(o), mask) {
                    for e in 0..m {
                        if mask.keeps(e) {
                            continue;
                        }
                        let bigger = SubgraphMask(bits | 1 << e);
                        for dir in [0u32, 1] {
                            let o2 = o | dir << e;
                            if !orientation_satisfies(g, p, Orientation(o2), bigger) {
                                hypothesis_witness = Some(format!(
                                    "not monotone: mask={bits:#b} o={o:#b} edge={e} dir={dir}"
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
                if o == bits {
                    break;
                }
                o = ((o | !bits) + 1) & bits;
            }
            if subgraph_satisfies(g, p_sub, mask) {
                let mut any = false;
                let mut o = 0u32;
                loop {
                    if orientation_satisfies(g, p, Orientation(o), mask) {
                        any = true;
                        break;
                    }
                    if o == bits {
                        break;
                    }
                    o = ((o | !bits) + 1) & bits;
                }
                if !any {
                    hypothesis_witness =
                        Some(format!("subgraph {bits:#b} satisfies P' but no orientation has P"));
                    break 'outer;
                }
            }
            if bits == u32::MAX {
                break;
            }
        }
        if let Some(w) = hypothesis_witness {
            report.verdict = Verdict::NotApplicable;
            report.witness = Some(w);
            return Ok(report);
        }
        report.quantity("hypotheses", "ok");
    } else {
        report.quantity("hypotheses", "assumed");
    }

    let orientations = build_orientation_system(g, p, limits.max_edges)?.size();
    let subgraphs = count_subgraphs(g, p_sub, limits.max_edges)?;
    report.quantity("orientations", orientations);
    report.quantity("subgraphs", subgraphs);
    report.check("count_inequality", subgraphs <= orientations, || {
        format!("{subgraphs} > {orientations}")
    });
    Ok(report)
}

/// Forbidden-pattern claims: orientations avoiding the directed pattern
/// versus subgraphs avoiding its underlying graph, plus the vc bound by the
/// largest pattern-free subgraph.
pub fn verify_forbidden(
    g: &Graph,
    pattern: &Digraph,
    limits: Limits,
) -> Result<Report, VerifyError> {
    let mut report = Report::new(
        "forbidden-pattern",
        format!("pattern_arcs={:?} {}", pattern.arcs, describe(g)),
    );
    let underlying = pattern.underlying();
    let system =
        build_orientation_system(g, &OrientationProperty::Forbid(pattern.clone()), limits.max_edges)?;
    let free_subs = count_subgraphs(
        g,
        &SubgraphProperty::FreeOf(underlying.clone()),
        limits.max_edges,
    )?;
    report.quantity("avoiding_orientations", system.size());
    report.quantity("avoiding_subgraphs", free_subs);
    report.check("count_inequality", system.size() <= free_subs, || {
        format!("{} > {free_subs}", system.size())
    });

    let p = profile(&system);
    report.quantity("vc", p.vc);
    let ex = crate::graph::optimize_subgraph(
        g,
        &SubgraphObjective::MaxEdgesFreeOf {
            pattern: &underlying,
        },
        limits.max_edges,
    )?;
    match ex {
        Some(ex) => {
            report.quantity("largest_free_subgraph", ex);
            report.check("vc_at_most_ex", p.vc <= ex as i32, || {
                format!("vc={} > ex={ex}", p.vc)
            });
        }
        None => {
            report.quantity("largest_free_subgraph", "not-applicable");
            report.check("system_empty_when_no_free_subgraph", system.size() == 0, || {
                format!("|S|={}", system.size())
            });
        }
    }
    Ok(report)
}

/// Shared SE battery: the three equivalent extremality criteria, the
/// symmetric-restriction scan, complement extremality, the partial-cube
/// property, and explicit flip geodesics within budget.
fn check_se_battery(
    report: &mut Report,
    system: &System,
    prof: &ShatterProfile,
    limits: Limits,
) -> Result<(), VerifyError> {
    let by_families = prof.shattered == prof.strongly_shattered;
    let by_lower = prof.strongly_shattered.size() == prof.size;
    let by_upper = prof.size == prof.shattered.size();
    report.quantity("size", prof.size);
    report.quantity("str", prof.shattered.size());
    report.quantity("sstr", prof.strongly_shattered.size());
    report.check("se_by_definition", by_families, || {
        "str and sstr differ".into()
    });
    report.check("se_criteria_agree", by_families == by_lower && by_lower == by_upper, || {
        format!(
            "families={by_families} lower={by_lower} upper={by_upper}"
        )
    });

    let witness = find_symmetric_restriction_with_limit(system, limits.max_lopsided)?;
    report.check("se_by_lopsidedness", witness.is_none(), || {
        format!("symmetric non-trivial restriction at cube {witness:?}")
    });

    let comp = system.complement();
    let comp_prof = profile(&comp);
    report.check(
        "complement_se",
        comp_prof.shattered == comp_prof.strongly_shattered,
        || "complement not extremal".into(),
    );

    if prof.size <= PARTIAL_CUBE_MEMBER_LIMIT {
        report.check("partial_cube", is_partial_cube(system), || {
            "member pair with in-system distance above Hamming distance".into()
        });
    } else {
        report.quantity("partial_cube", "skipped-over-budget");
    }

    if prof.size <= GEODESIC_MEMBER_LIMIT {
        let members: Vec<u32> = system.members().collect();
        let mut ok = true;
        let mut bad = (0u32, 0u32);
        'pairs: for &a in &members {
            for &b in &members {
                match flip_geodesic(system, a, b) {
                    Ok(seq) => {
                        if seq.steps.len() != (a ^ b).count_ones() as usize {
                            ok = false;
                            bad = (a, b);
                            break 'pairs;
                        }
                    }
                    Err(_) => {
                        ok = false;
                        bad = (a, b);
                        break 'pairs;
                    }
                }
            }
        }
        report.check("flip_geodesics", ok, || {
            format!("pair ({:#b}, {:#b}) has no geodesic", bad.0, bad.1)
        });
    } else {
        report.quantity("flip_geodesics", "skipped-over-budget");
    }
    Ok(())
}

/// Flow claims: extremality of the flow system, the exact
/// orientation/subgraph count equality, and `vc = dvc = m - e_w`.
pub fn verify_flow(
    g: &Graph,
    caps: &[u64],
    s: usize,
    t: usize,
    w: u64,
    limits: Limits,
) -> Result<Report, VerifyError> {
    let mut report = Report::new(
        "flow-system",
        format!("s={s} t={t} w={w} caps={caps:?} {}", describe(g)),
    );
    let spec = OrientationProperty::Flow {
        caps: caps.to_vec(),
        s,
        t,
        w,
    };
    let system = build_orientation_system(g, &spec, limits.max_edges)?;
    let subgraphs = count_subgraphs(
        g,
        &SubgraphProperty::Flow {
            caps: caps.to_vec(),
            s,
            t,
            w,
        },
        limits.max_edges,
    )?;
    report.quantity("orientations", system.size());
    report.quantity("subgraphs", subgraphs);
    report.check("count_equality", system.size() == subgraphs, || {
        format!("{} != {subgraphs}", system.size())
    });

    let prof = profile(&system);
    check_se_battery(&mut report, &system, &prof, limits)?;

    let e_w = crate::graph::optimize_subgraph(
        g,
        &SubgraphObjective::MinEdgesFlow { caps, s, t, w },
        limits.max_edges,
    )?;
    vc_formula_check(&mut report, &prof, g.m(), e_w, "e_w");
    Ok(report)
}

/// Distance claims: extremality of the bounded-distance system, the count
/// equality, and `vc = dvc = m - p_d`.
pub fn verify_distance(
    g: &Graph,
    lens: &[u64],
    s: usize,
    t: usize,
    d: u64,
    limits: Limits,
) -> Result<Report, VerifyError> {
    let mut report = Report::new(
        "distance-system",
        format!("s={s} t={t} d={d} lens={lens:?} {}", describe(g)),
    );
    let spec = OrientationProperty::Distance {
        lens: lens.to_vec(),
        s,
        t,
        d,
    };
    let system = build_orientation_system(g, &spec, limits.max_edges)?;
    let subgraphs = count_subgraphs(
        g,
        &SubgraphProperty::Distance {
            lens: lens.to_vec(),
            s,
            t,
            d,
        },
        limits.max_edges,
    )?;
    report.quantity("orientations", system.size());
    report.quantity("subgraphs", subgraphs);
    report.check("count_equality", system.size() == subgraphs, || {
        format!("{} != {subgraphs}", system.size())
    });

    let prof = profile(&system);
    check_se_battery(&mut report, &system, &prof, limits)?;

    let p_d = crate::graph::optimize_subgraph(
        g,
        &SubgraphObjective::MinEdgesDistance { lens, s, t, d },
        limits.max_edges,
    )?;
    vc_formula_check(&mut report, &prof, g.m(), p_d, "p_d");
    Ok(report)
}

/// `vc = dvc = m - optimum`, or vc = dvc = -1 with the formula flagged
/// not-applicable when no subgraph is feasible.
fn vc_formula_check(
    report: &mut Report,
    prof: &ShatterProfile,
    m: usize,
    optimum: Option<u64>,
    name: &str,
) {
    report.quantity("vc", prof.vc);
    report.quantity("dvc", prof.dvc);
    match optimum {
        Some(e) => {
            report.quantity(name, e);
            let expected = m as i32 - e as i32;
            report.check("vc_formula", prof.vc == expected && prof.dvc == expected, || {
                format!("vc={} dvc={} expected {expected}", prof.vc, prof.dvc)
            });
        }
        None => {
            report.quantity(name, "infeasible");
            report.quantity("vc_formula", "not-applicable");
            report.check("empty_when_infeasible", prof.size == 0 && prof.vc == -1, || {
                format!("|S|={} vc={}", prof.size, prof.vc)
            });
        }
    }
}

/// Reachability claims: orientation/subgraph count equality, extremality,
/// `vc = dvc = m - (minimum connecting subgraph)`, and agreement between
/// the direct system and the fixed-direction restriction of the
/// transformed flow system.
pub fn verify_steiner(
    g: &Graph,
    s: usize,
    targets: &[usize],
    limits: Limits,
) -> Result<Report, VerifyError> {
    let mut report = Report::new(
        "reachability-system",
        format!("s={s} targets={targets:?} {}", describe(g)),
    );
    let spec = OrientationProperty::Reach {
        s,
        targets: targets.to_vec(),
    };
    let system = build_orientation_system(g, &spec, limits.max_edges)?;
    let mut terminals = targets.to_vec();
    terminals.push(s);
    terminals.sort_unstable();
    terminals.dedup();
    let subgraphs = count_subgraphs(
        g,
        &SubgraphProperty::ConnectsSet(terminals.clone()),
        limits.max_edges,
    )?;
    report.quantity("orientations", system.size());
    report.quantity("subgraphs", subgraphs);
    report.check("count_equality", system.size() == subgraphs, || {
        format!("{} != {subgraphs}", system.size())
    });

    let prof = profile(&system);
    check_se_battery(&mut report, &system, &prof, limits)?;

    let steiner = crate::graph::optimize_subgraph(
        g,
        &SubgraphObjective::MinEdgesConnecting {
            terminals: &terminals,
        },
        limits.max_edges,
    )?;
    vc_formula_check(&mut report, &prof, g.m(), steiner, "steiner_size");

    if g.m() <= TRANSFORM_CHECK_EDGE_LIMIT {
        let net = steiner_transform(g, s, targets)?;
        let flow_sys = build_orientation_system(
            &net.graph,
            &OrientationProperty::Flow {
                caps: net.caps.clone(),
                s: net.source,
                t: net.sink,
                w: net.target_flow,
            },
            limits.max_edges,
        )?;
        let fixes: Vec<(usize, bool)> = net.added_edges.clone().map(|e| (e, false)).collect();
        let cube = Cube::fixing(net.graph.m(), &fixes);
        let restricted = flow_sys.restrict(&cube)?;
        report.check(
            "transform_restriction",
            restricted.table() == system.table(),
            || "restricted flow system differs from reachability system".into(),
        );
    } else {
        report.quantity("transform_restriction", "skipped-over-budget");
    }
    Ok(report)
}

/// Set-to-set distance claims via the zero-length transform.
pub fn verify_ab_distance(
    g: &Graph,
    lens: &[u64],
    sources: &[usize],
    sinks: &[usize],
    d: u64,
    limits: Limits,
) -> Result<Report, VerifyError> {
    let mut report = Report::new(
        "set-distance-system",
        format!("A={sources:?} B={sinks:?} d={d} {}", describe(g)),
    );
    let spec = OrientationProperty::AbDistance {
        lens: lens.to_vec(),
        sources: sources.to_vec(),
        sinks: sinks.to_vec(),
        d,
    };
    let system = build_orientation_system(g, &spec, limits.max_edges)?;
    let prof = profile(&system);
    check_se_battery(&mut report, &system, &prof, limits)?;

    if g.m() <= TRANSFORM_CHECK_EDGE_LIMIT {
        let net = ab_distance_transform(g, lens, sources, sinks)?;
        let dist_sys = build_orientation_system(
            &net.graph,
            &OrientationProperty::Distance {
                lens: net.lens.clone(),
                s: net.source,
                t: net.sink,
                d,
            },
            limits.max_edges,
        )?;
        let fixes: Vec<(usize, bool)> = net.added_edges.clone().map(|e| (e, false)).collect();
        let cube = Cube::fixing(net.graph.m(), &fixes);
        let restricted = dist_sys.restrict(&cube)?;
        report.check(
            "transform_restriction",
            restricted.table() == system.table(),
            || "restricted distance system differs from set-distance system".into(),
        );
    } else {
        report.quantity("transform_restriction", "skipped-over-budget");
    }
    Ok(report)
}

/// The suites a corpus run can select.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Cyclic,
    Strong,
    Flow,
    Dist,
    Steiner,
    Forbidden,
    General,
}

impl SuiteKind {
    pub fn all() -> &'static [SuiteKind] {
        &[
            SuiteKind::Cyclic,
            SuiteKind::Strong,
            SuiteKind::Flow,
            SuiteKind::Dist,
            SuiteKind::Steiner,
            SuiteKind::Forbidden,
            SuiteKind::General,
        ]
    }
}

/// Deterministic weights in `[lo, hi]` for a graph's edges.
pub fn seeded_weights(rng: &mut ChaCha8Rng, m: usize, lo: u64, hi: u64) -> Vec<u64> {
    (0..m).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// Runs every selected verifier over every corpus graph with seeded
/// parameters. Same seed, same reports.
pub fn run_suite(
    graphs: &[(String, Graph)],
    kinds: &[SuiteKind],
    seed: u64,
    limits: Limits,
) -> Result<Vec<Report>, VerifyError> {
    let mut reports = Vec::new();
    for (gi, (name, g)) in graphs.iter().enumerate() {
        for (ki, kind) in kinds.iter().enumerate() {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ ((gi as u64) << 24) ^ ((ki as u64) << 8));
            let mut tagged = |mut r: Report| {
                r.inputs = format!("{name}; {}", r.inputs);
                reports.push(r);
            };
            match kind {
                SuiteKind::Cyclic => tagged(verify_cyclic(g, limits)?),
                SuiteKind::Strong => {
                    let k = rng.gen_range(1..=2);
                    tagged(verify_strong(g, k, limits)?);
                }
                SuiteKind::Flow => {
                    if g.n() < 2 {
                        continue;
                    }
                    let caps = seeded_weights(&mut rng, g.m(), 1, 4);
                    let s = 0;
                    let t = g.n() - 1;
                    let best = crate::graph::max_flow(
                        g,
                        g.full_mask(),
                        crate::graph::EdgeMode::Undirected,
                        &caps,
                        s,
                        t,
                    )?;
                    // sometimes infeasible on purpose
                    let w = rng.gen_range(1..=best.max(1) + 1);
                    tagged(verify_flow(g, &caps, s, t, w, limits)?);
                }
                SuiteKind::Dist => {
                    if g.n() < 2 {
                        continue;
                    }
                    let lens = seeded_weights(&mut rng, g.m(), 1, 8);
                    let s = 0;
                    let t = g.n() - 1;
                    let base = crate::graph::shortest_dist(
                        g,
                        g.full_mask(),
                        crate::graph::EdgeMode::Undirected,
                        &lens,
                        s,
                        t,
                    )?;
                    let d = match base {
                        Some(b) => b + rng.gen_range(0..=2),
                        None => rng.gen_range(0..=4),
                    };
                    tagged(verify_distance(g, &lens, s, t, d, limits)?);
                }
                SuiteKind::Steiner => {
                    if g.n() < 2 {
                        continue;
                    }
                    let mut targets: Vec<usize> =
                        (1..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
                    if targets.is_empty() {
                        targets.push(g.n() - 1);
                    }
                    tagged(verify_steiner(g, 0, &targets, limits)?);
                }
                SuiteKind::Forbidden => {
                    tagged(verify_forbidden(g, &Digraph::directed_triangle(), limits)?);
                }
                SuiteKind::General => {
                    tagged(verify_general(
                        g,
                        &OrientationProperty::Cyclic,
                        &SubgraphProperty::HasCycle,
                        true,
                        limits,
                    )?);
                    tagged(verify_general(
                        g,
                        &OrientationProperty::KStrong(1),
                        &SubgraphProperty::KConnected(2),
                        true,
                        limits,
                    )?);
                    if g.n() >= 2 {
                        tagged(verify_general(
                            g,
                            &OrientationProperty::Reach {
                                s: 0,
                                targets: vec![g.n() - 1],
                            },
                            &SubgraphProperty::ConnectsSet(vec![0, g.n() - 1]),
                            true,
                            limits,
                        )?);
                    }
                }
            }
        }
    }
    Ok(reports)
}
