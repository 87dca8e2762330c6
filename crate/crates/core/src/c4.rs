//! Generalized Sierpiński graphs over the 4-cycle.
//!
//! For `r ≥ 2` the four dimensions of `S_{C4}^r` have closed forms
//! `dim = dim_E = 4(2 + 4^(r-2))/3` and `dim' = dim'_E = 8(2 + 4^(r-2))/3`.
//! The upper bound comes from an explicit resolving set `R_r` built
//! recursively from `R_1 = {0, 1}`; the lower bound from the twin structure.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{Metric, Variant};
use crate::sierpinski::{SierpinskiGraph, VertexWord};
use crate::solver::{exact_dimension, SolveOutcome, DEFAULT_BUDGET};
use crate::twins::{find_twins, TwinPartition};

/// Largest level for which [`verify_theorem`] runs the exact solver.
pub const EXACT_LEVEL_CAP: usize = 4;

/// Largest level accepted by [`verify_theorem`].
pub const VERIFY_LEVEL_CAP: usize = 5;

/// Largest level for which closed forms fit in a `u64`.
pub const FORMULA_LEVEL_CAP: usize = 30;

pub fn c4() -> Graph {
    Graph::cycle(4).expect("C4 is a valid graph")
}

pub fn sierpinski_c4(r: usize) -> Result<SierpinskiGraph> {
    SierpinskiGraph::build(&c4(), r)
}

/// The resolving set `R_r` of `S_{C4}^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSet {
    pub r: usize,
    /// Sorted lexicographically.
    pub words: Vec<VertexWord>,
}

impl RSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Dense indices in `S_{C4}^r`, sorted.
    pub fn indices(&self, s: &SierpinskiGraph) -> Result<Vec<usize>> {
        let mut v = self
            .words
            .iter()
            .map(|w| s.index(w))
            .collect::<Result<Vec<_>>>()?;
        v.sort_unstable();
        Ok(v)
    }
}

// Per prefix digit p: the words p a^(k-2) last removed from pR_(k-1), for
// each listed a.
const EXCLUSIONS: [(usize, [usize; 2], usize); 4] = [
    (0, [1, 3], 1),
    (1, [0, 2], 0),
    (2, [1, 3], 1),
    (3, [0, 2], 0),
];

/// Builds `R_r`. At `k = 2` both excluded words of a copy coincide, so each
/// copy of `R_1` loses one word.
pub fn build_rset(r: usize) -> Result<RSet> {
    if r == 0 {
        return Err(Error::LevelTooSmall { r, min: 1 });
    }
    let mut words = vec![VertexWord::new(vec![0]), VertexWord::new(vec![1])];
    for k in 2..=r {
        let mut next = Vec::with_capacity(4 * words.len());
        for &(p, runs, last) in &EXCLUSIONS {
            let excluded: Vec<VertexWord> = runs
                .iter()
                .map(|&a| VertexWord::from_run(p, a, k - 2, last))
                .collect();
            next.extend(
                words
                    .iter()
                    .map(|w| w.prefixed(p))
                    .filter(|w| !excluded.contains(w)),
            );
        }
        next.sort();
        words = next;
    }
    Ok(RSet { r, words })
}

/// Closed-form value of `variant`'s dimension of `S_{C4}^r`, `2 ≤ r ≤ 30`.
pub fn closed_form(variant: Variant, r: usize) -> Result<u64> {
    if r < 2 {
        return Err(Error::LevelTooSmall { r, min: 2 });
    }
    if r > FORMULA_LEVEL_CAP {
        return Err(Error::TooLarge { base: 4, r });
    }
    let t = 2 + 4u64.pow((r - 2) as u32);
    debug_assert_eq!(t % 3, 0);
    let numerator = if variant.is_fault_tolerant() { 8 } else { 4 };
    Ok(numerator * t / 3)
}

/// `|V(S_{C4}^r)| = 4^r`.
pub fn vertex_count(r: usize) -> u64 {
    4u64.pow(r as u32)
}

/// `|E(S_{C4}^r)| = 4(4^r - 1)/3`.
pub fn edge_count(r: usize) -> u64 {
    4 * (vertex_count(r) - 1) / 3
}

/// Checks `|R_k| = 4(|R_(k-1)| - 2)` for `3 ≤ k ≤ r_max` and
/// `|R_k| = closed_form(Mg, k)` for `2 ≤ k ≤ r_max`.
///
/// The recurrence does not hold at `k = 2`: `|R_1| = 2` would give 0 while
/// `|R_2| = 4`.
pub fn verify_rset_size_recurrence(r_max: usize) -> Result<bool> {
    if r_max < 2 {
        return Err(Error::LevelTooSmall { r: r_max, min: 2 });
    }
    let mut prev = build_rset(1)?.len();
    for k in 2..=r_max {
        let cur = build_rset(k)?.len();
        if k >= 3 && cur + 8 != 4 * prev {
            return Ok(false);
        }
        if cur as u64 != closed_form(Variant::Mg, k)? {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

/// `set` together with the twin partner of each member, sorted.
pub fn twin_partner_set(set: &[usize], twins: &TwinPartition, g: &Graph) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(2 * set.len());
    for &u in set {
        let partner = twins
            .partner(u)
            .ok_or_else(|| Error::MissingTwinPartner(g.label(u)))?;
        out.push(u);
        out.push(partner);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
}

/// Outcome of [`verify_theorem`]. The `Display` form is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub r: usize,
    pub vertices: usize,
    pub edges: usize,
    pub rset_size: usize,
    pub ft_set_size: usize,
    pub twin_count: usize,
    pub twin_sets: usize,
    /// `(dim, dimE, ftdim, ftdimE)` from the exact solver, when run.
    pub exact: Option<[usize; 4]>,
    pub checks: Vec<Check>,
}

impl TheoremReport {
    /// True when no enabled check failed.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.status, CheckStatus::Failed(_)))
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "S_C4^{}: vertices={} edges={}",
            self.r, self.vertices, self.edges
        )?;
        writeln!(
            f,
            "closed forms: dim=dimE={} ftdim=ftdimE={}",
            closed_form(Variant::Mg, self.r).unwrap_or(0),
            closed_form(Variant::Ftmg, self.r).unwrap_or(0)
        )?;
        writeln!(
            f,
            "|R_{}|={} |R+partners|={} |T|={} k={}",
            self.r, self.rset_size, self.ft_set_size, self.twin_count, self.twin_sets
        )?;
        if let Some([d, de, ft, fte]) = self.exact {
            writeln!(f, "exact: dim={d} dimE={de} ftdim={ft} ftdimE={fte}")?;
        }
        for c in &self.checks {
            match &c.status {
                CheckStatus::Passed => writeln!(f, "[PASS] {}", c.name)?,
                CheckStatus::Failed(why) => writeln!(f, "[FAIL] {}: {}", c.name, why)?,
                CheckStatus::Skipped(why) => writeln!(f, "[SKIP] {}: {}", c.name, why)?,
            }
        }
        if self.r == 2 {
            writeln!(
                f,
                "note: |R_r| = 4(|R_(r-1)| - 2) fails at r=2 (|R_1|=2, |R_2|=4); it holds from r=3"
            )?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn status(ok: bool, detail: impl FnOnce() -> String) -> CheckStatus {
    if ok {
        CheckStatus::Passed
    } else {
        CheckStatus::Failed(detail())
    }
}

fn verdict(metric: &Metric<'_>, variant: Variant, set: &[usize]) -> CheckStatus {
    match metric.check(variant, set) {
        Ok(c) if c.accepted => CheckStatus::Passed,
        Ok(c) => CheckStatus::Failed(format!("{:?}", c.witness)),
        Err(e) => CheckStatus::Failed(e.to_string()),
    }
}

/// Machine-checks the closed forms on `S_{C4}^r`.
///
/// (a) `R_r` is a metric generator; (b) it is an edge metric generator;
/// (c) `R_r` plus twin partners is a fault-tolerant generator of both kinds
/// with the closed-form size; (d) the twin lower bounds equal the closed
/// forms; (e) for `r ≤ 4`, the exact solver returns the closed forms.
pub fn verify_theorem(r: usize) -> Result<TheoremReport> {
    if r < 2 {
        return Err(Error::LevelTooSmall { r, min: 2 });
    }
    if r > VERIFY_LEVEL_CAP {
        return Err(Error::Unsupported(format!(
            "verification is capped at r={VERIFY_LEVEL_CAP}, got r={r}"
        )));
    }
    let s = sierpinski_c4(r)?;
    let g = s.graph();
    let metric = Metric::new(g)?;
    let twins = find_twins(g);
    let rset = build_rset(r)?;
    let r_idx = rset.indices(&s)?;
    let dim = closed_form(Variant::Mg, r)? as usize;
    let ftdim = closed_form(Variant::Ftmg, r)? as usize;

    let mut checks = Vec::new();
    checks.push(Check {
        name: "(a) R_r is a metric generator",
        status: verdict(&metric, Variant::Mg, &r_idx),
    });
    checks.push(Check {
        name: "(b) R_r is an edge metric generator",
        status: verdict(&metric, Variant::Emg, &r_idx),
    });

    let ft_set = twin_partner_set(&r_idx, &twins, g);
    let ft_len = ft_set.as_ref().map(Vec::len).unwrap_or(0);
    let (ftmg, ftemg) = match &ft_set {
        Ok(set) if set.len() == ftdim => (
            verdict(&metric, Variant::Ftmg, set),
            verdict(&metric, Variant::Ftemg, set),
        ),
        Ok(set) => {
            let why = format!("size {} differs from {ftdim}", set.len());
            (CheckStatus::Failed(why.clone()), CheckStatus::Failed(why))
        }
        Err(e) => (
            CheckStatus::Failed(e.to_string()),
            CheckStatus::Failed(e.to_string()),
        ),
    };
    checks.push(Check {
        name: "(c) R_r + twin partners is a fault-tolerant metric generator",
        status: ftmg,
    });
    checks.push(Check {
        name: "(c) R_r + twin partners is a fault-tolerant edge metric generator",
        status: ftemg,
    });

    let lb = twins.lower_bounds();
    checks.push(Check {
        name: "(d) twin lower bounds meet the closed forms",
        status: status(
            lb.dim == dim && lb.dim_e == dim && lb.ftdim == ftdim && lb.ftdim_e == ftdim,
            || format!("bounds {lb:?}, expected {dim}/{ftdim}"),
        ),
    });
    checks.push(Check {
        name: "(d) twin sets are pairs and dim equals their number",
        status: status(twins.doubling_applies(dim), || {
            format!("{} sets, dim {dim}", twins.set_count())
        }),
    });
    checks.push(Check {
        name: "|R_r| equals the closed form",
        status: status(rset.len() == dim, || format!("|R_r|={}", rset.len())),
    });

    let mut exact = None;
    if r <= EXACT_LEVEL_CAP {
        let mut values = [0usize; 4];
        let mut problems = Vec::new();
        for (slot, v) in Variant::ALL.into_iter().enumerate() {
            let want = if v.is_fault_tolerant() { ftdim } else { dim };
            match exact_dimension(g, v, DEFAULT_BUDGET)? {
                SolveOutcome::Solved(res) => {
                    values[slot] = res.value;
                    if res.value != want {
                        problems.push(format!("{}={} (want {want})", v.dim_name(), res.value));
                    }
                }
                SolveOutcome::Unknown { lower, upper, .. } => {
                    problems.push(format!("{} unresolved in [{lower}, {upper}]", v.dim_name()));
                }
            }
        }
        exact = Some(values);
        checks.push(Check {
            name: "(e) exact dimensions equal the closed forms",
            status: status(problems.is_empty(), || problems.join(", ")),
        });
    } else {
        checks.push(Check {
            name: "(e) exact dimensions equal the closed forms",
            status: CheckStatus::Skipped(format!("exact search capped at r={EXACT_LEVEL_CAP}")),
        });
    }

    Ok(TheoremReport {
        r,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        rset_size: rset.len(),
        ft_set_size: ft_len,
        twin_count: twins.twin_count(),
        twin_sets: twins.set_count(),
        exact,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(r: &RSet) -> Vec<String> {
        r.words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn small_rsets() {
        assert_eq!(words(&build_rset(1).unwrap()), ["0", "1"]);
        assert_eq!(words(&build_rset(2).unwrap()), ["00", "11", "20", "31"]);
        assert_eq!(
            words(&build_rset(3).unwrap()),
            ["000", "020", "111", "131", "200", "220", "311", "331"]
        );
        assert_eq!(build_rset(4).unwrap().len(), 24);
        assert!(build_rset(0).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form(Variant::Mg, 2).unwrap(), 4);
        assert_eq!(closed_form(Variant::Ftmg, 3).unwrap(), 16);
        assert_eq!(closed_form(Variant::Mg, 4).unwrap(), 24);
        assert_eq!(closed_form(Variant::Emg, 4).unwrap(), 24);
        assert_eq!(closed_form(Variant::Ftemg, 4).unwrap(), 48);
        assert!(matches!(
            closed_form(Variant::Mg, 1),
            Err(Error::LevelTooSmall { .. })
        ));
        assert!(closed_form(Variant::Mg, 31).is_err());
    }

    #[test]
    fn closed_forms_are_integral() {
        for r in 2..=FORMULA_LEVEL_CAP {
            assert_eq!((2 + 4u64.pow(r as u32 - 2)) % 3, 0, "r={r}");
            assert_eq!(
                closed_form(Variant::Ftmg, r).unwrap(),
                2 * closed_form(Variant::Mg, r).unwrap()
            );
        }
    }

    #[test]
    fn recurrence() {
        assert!(verify_rset_size_recurrence(6).unwrap());
        assert_eq!(build_rset(5).unwrap().len(), 88);
        assert!(verify_rset_size_recurrence(1).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(vertex_count(4), 256);
        assert_eq!(edge_count(4), 340);
        assert_eq!(edge_count(1), 4);
    }

    #[test]
    fn partner_set_requires_twins() {
        let s = sierpinski_c4(2).unwrap();
        let tp = find_twins(s.graph());
        // 01 has degree 3 and no twin.
        let err = twin_partner_set(&[1], &tp, s.graph()).unwrap_err();
        assert_eq!(err, Error::MissingTwinPartner("01".into()));
    }

    #[test]
    fn verify_level_bounds() {
        assert!(verify_theorem(1).is_err());
        assert!(verify_theorem(VERIFY_LEVEL_CAP + 1).is_err());
    }
}
