//! Combinatorial invariants of string and cycle hypergraphs: open runs,
//! the buffer count b, isolated open vertices, 2-special configurations,
//! and the modularity M.

use std::collections::BTreeSet;

use crate::hypergraph::{Hypergraph, Shape, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("only string and cycle hypergraphs are supported here")]
    UnsupportedShape,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    String,
    Cycle,
}

/// A maximal block of consecutive open vertices, by position along the
/// traversal (positions are 1-based). Delimiters are `None` only on a
/// fully open cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenRun {
    pub start: usize,
    pub length: usize,
    pub left_closed: Option<usize>,
    pub right_closed: Option<usize>,
}

impl OpenRun {
    pub fn positions(&self, mu: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.start;
        (0..self.length).map(move |k| (start - 1 + k) % mu + 1)
    }

    fn end(&self, mu: usize) -> usize {
        (self.start - 1 + self.length - 1) % mu + 1
    }
}

/// Everything the closed formula needs, computed once per hypergraph.
///
/// `runs` lists the actual maximal open runs; `s` and `n` follow the cycle
/// convention for sparse cases (a cycle with at most one closed vertex
/// counts as a single run of `mu - 1` opens).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub kind: ShapeKind,
    pub mu: usize,
    /// closed/open flag per position along the traversal
    pub closed: Vec<bool>,
    /// traversal position (1-based) -> original vertex label
    pub order: Vec<Vertex>,
    pub runs: Vec<OpenRun>,
    pub s: usize,
    pub n: Vec<usize>,
    pub b: usize,
    pub is_count: usize,
}

/// A 2-special configuration: at least two consecutive open runs, each
/// neighboring pair separated by exactly one closed vertex, with run
/// lengths ≡ 1, 2, …, 2, 1 (mod 3). On cycles the run interval may wrap,
/// and may cover the whole cycle when the two extremal closed vertices
/// coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSpecialConfig {
    /// indices into `Profile::runs`, in traversal order of the interval
    pub run_indices: Vec<usize>,
    /// positions of the open vertices covered
    pub open_vertices: BTreeSet<usize>,
}

impl Profile {
    pub fn of(h: &Hypergraph) -> Result<Profile, InvariantError> {
        let shape = h
            .classify_shape()
            .map_err(|_| InvariantError::UnsupportedShape)?;
        let (kind, order) = match shape {
            Shape::String { order } => (ShapeKind::String, order),
            Shape::Cycle { order } => (ShapeKind::Cycle, order),
            _ => return Err(InvariantError::UnsupportedShape),
        };
        let closed: Vec<bool> = order.iter().map(|&v| h.is_closed(v)).collect();
        Ok(Profile::from_flags(kind, closed, order))
    }

    /// Build a profile from closed/open flags along the traversal.
    /// For strings the flags must begin and end with `true`.
    pub fn from_flags(kind: ShapeKind, closed: Vec<bool>, order: Vec<Vertex>) -> Profile {
        let mu = closed.len();
        debug_assert_eq!(order.len(), mu);
        if kind == ShapeKind::String {
            debug_assert!(mu == 0 || (closed[0] && closed[mu - 1]));
        }
        let runs = match kind {
            ShapeKind::String => string_runs(&closed),
            ShapeKind::Cycle => cycle_runs(&closed),
        };
        let closed_count = closed.iter().filter(|&&c| c).count();
        let n: Vec<usize> = if kind == ShapeKind::Cycle && closed_count <= 1 && mu > 0 {
            vec![mu - 1]
        } else {
            runs.iter().map(|r| r.length).collect()
        };
        let s = n.len();
        let b = s + n.iter().map(|&ni| (ni - 1) / 3).sum::<usize>();
        let is_count = (0..mu)
            .filter(|&p| {
                if closed[p] {
                    return false;
                }
                match kind {
                    ShapeKind::String => {
                        // endpoints are closed, so open p has both neighbors
                        closed[p - 1] && closed[p + 1]
                    }
                    ShapeKind::Cycle => closed[(p + mu - 1) % mu] && closed[(p + 1) % mu],
                }
            })
            .count();
        Profile {
            kind,
            mu,
            closed,
            order,
            runs,
            s,
            n,
            b,
            is_count,
        }
    }

    /// Closed vertices strictly between run `i` and the next run
    /// (cyclically on cycles).
    fn gap_after(&self, i: usize) -> usize {
        let runs = &self.runs;
        match self.kind {
            ShapeKind::String => {
                if i + 1 < runs.len() {
                    runs[i + 1].start - (runs[i].start + runs[i].length)
                } else {
                    0
                }
            }
            ShapeKind::Cycle => {
                let next = runs[(i + 1) % runs.len()].start;
                let end = runs[i].end(self.mu);
                (next + self.mu - end - 1 - 1) % self.mu + 1
            }
        }
    }

    pub fn two_special_configs(&self) -> Vec<TwoSpecialConfig> {
        let s = self.runs.len();
        if s < 2 {
            return Vec::new();
        }
        // On a cycle with at most one closed vertex there is a single run,
        // already excluded above.
        let fits = |len: usize| len % 3;
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for i in 0..s {
            'len: for len in 2..=s {
                if self.kind == ShapeKind::String && i + len > s {
                    break;
                }
                let idx = |t: usize| match self.kind {
                    ShapeKind::String => i + t,
                    ShapeKind::Cycle => (i + t) % s,
                };
                // single closed vertex between consecutive runs inside
                for t in 0..len - 1 {
                    if self.gap_after(idx(t)) != 1 {
                        continue 'len;
                    }
                }
                // residues 1, 2, …, 2, 1 (mod 3)
                if fits(self.runs[idx(0)].length) != 1
                    || fits(self.runs[idx(len - 1)].length) != 1
                {
                    continue;
                }
                if (1..len - 1).any(|t| fits(self.runs[idx(t)].length) != 2) {
                    continue;
                }
                let run_indices: Vec<usize> = (0..len).map(idx).collect();
                let key: BTreeSet<usize> = run_indices.iter().copied().collect();
                if !seen.insert(key) {
                    // same open set reached from another rotation
                    continue;
                }
                let open_vertices = run_indices
                    .iter()
                    .flat_map(|&r| self.runs[r].positions(self.mu))
                    .collect();
                out.push(TwoSpecialConfig {
                    run_indices,
                    open_vertices,
                });
            }
        }
        out
    }

    /// Modularity: the maximum number of pairwise disjoint 2-special
    /// configurations, where disjoint means "no shared open vertex"
    /// (a shared closed delimiter is allowed).
    ///
    /// Configurations are intervals of runs, so this is interval
    /// scheduling: greedy by right endpoint on strings; on cycles, fix the
    /// first chosen configuration and schedule the rest in the remaining
    /// arc, which is linear.
    pub fn modularity(&self) -> usize {
        let configs = self.two_special_configs();
        if configs.is_empty() {
            return 0;
        }
        match self.kind {
            ShapeKind::String => {
                let mut intervals: Vec<(usize, usize)> = configs
                    .iter()
                    .map(|c| (c.run_indices[0], *c.run_indices.last().unwrap()))
                    .collect();
                greedy_disjoint(&mut intervals)
            }
            ShapeKind::Cycle => {
                let s = self.runs.len();
                let mut best = 0;
                for c in &configs {
                    let used: BTreeSet<usize> = c.run_indices.iter().copied().collect();
                    // arc of free runs after the chosen interval, in cyclic
                    // order; its position in this listing linearizes it
                    let after = (c.run_indices.last().unwrap() + 1) % s;
                    let mut arc_pos = vec![usize::MAX; s];
                    let mut free = 0;
                    for t in 0..s {
                        let r = (after + t) % s;
                        if !used.contains(&r) {
                            arc_pos[r] = free;
                            free += 1;
                        }
                    }
                    let mut intervals: Vec<(usize, usize)> = configs
                        .iter()
                        .filter(|other| {
                            other.run_indices.iter().all(|r| arc_pos[*r] != usize::MAX)
                        })
                        .map(|other| {
                            let ps: Vec<usize> =
                                other.run_indices.iter().map(|r| arc_pos[*r]).collect();
                            (*ps.iter().min().unwrap(), *ps.iter().max().unwrap())
                        })
                        .collect();
                    best = best.max(1 + greedy_disjoint(&mut intervals));
                }
                best
            }
        }
    }

    /// Brute-force modularity by searching all subsets of configurations;
    /// exponential, used to cross-check `modularity`.
    pub fn modularity_exhaustive(&self) -> usize {
        let configs = self.two_special_configs();
        fn rec(configs: &[TwoSpecialConfig], chosen: &BTreeSet<usize>, from: usize) -> usize {
            let mut best = 0;
            for i in from..configs.len() {
                let c = &configs[i];
                if c.open_vertices.is_disjoint(chosen) {
                    let mut next = chosen.clone();
                    next.extend(c.open_vertices.iter().copied());
                    best = best.max(1 + rec(configs, &next, i + 1));
                }
            }
            best
        }
        rec(&configs, &BTreeSet::new(), 0)
    }

    /// `⌊Is/2⌋` shortcut for the reduced situation: no two adjacent closed
    /// vertices (except at string endpoints) and every run of length ≤ 2.
    pub fn modularity_reduced_case(&self) -> Result<usize, InvariantError> {
        if self.runs.iter().any(|r| r.length > 2) {
            return Err(InvariantError::PreconditionViolated(
                "an open run has more than two vertices".into(),
            ));
        }
        let mu = self.mu;
        for p in 0..mu {
            let q = (p + 1) % mu;
            if self.kind == ShapeKind::String {
                if p + 1 >= mu {
                    continue;
                }
                if self.closed[p] && self.closed[p + 1] && p != 0 && p + 2 != mu {
                    return Err(InvariantError::PreconditionViolated(
                        "two adjacent closed vertices away from the endpoints".into(),
                    ));
                }
            } else if self.closed[p] && self.closed[q] {
                return Err(InvariantError::PreconditionViolated(
                    "two adjacent closed vertices on the cycle".into(),
                ));
            }
        }
        Ok(self.is_count / 2)
    }
}

/// How b and M change when the first three vertices of a string are cut
/// off (with the new first vertex becoming closed), given that vertex 2 is
/// open. The drop pattern is determined by whether vertex 2 is an isolated
/// open sitting inside a 1-1 configuration (a two-run configuration whose
/// first run is a single vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionReport {
    pub b: usize,
    pub b_tail: usize,
    pub m: usize,
    pub m_tail: usize,
    pub one_one_case: bool,
    /// b drops by 2 and M by 1 exactly in the 1-1 case; otherwise b drops
    /// by 1 and M is unchanged
    pub consistent: bool,
}

pub fn recursion_checks(p: &Profile) -> Result<RecursionReport, InvariantError> {
    if p.kind != ShapeKind::String || p.mu < 3 {
        return Err(InvariantError::PreconditionViolated(
            "need a string with at least 3 vertices".into(),
        ));
    }
    if p.closed[1] {
        return Err(InvariantError::PreconditionViolated(
            "vertex 2 must be open".into(),
        ));
    }
    let mut tail_flags: Vec<bool> = p.closed[3..].to_vec();
    if let Some(first) = tail_flags.first_mut() {
        *first = true;
    }
    let order: Vec<Vertex> = (1..=tail_flags.len()).collect();
    let tail = Profile::from_flags(ShapeKind::String, tail_flags, order);
    let one_one_case = p.closed.get(2) == Some(&true)
        && p.closed.get(3) == Some(&false)
        && p.runs.get(1).map_or(false, |r| r.length % 3 == 1);
    let (b, b_tail) = (p.b, tail.b);
    let (m, m_tail) = (p.modularity(), tail.modularity());
    let consistent = if one_one_case {
        b_tail + 2 == b && m_tail + 1 == m
    } else {
        b_tail + 1 == b && m_tail == m
    };
    Ok(RecursionReport {
        b,
        b_tail,
        m,
        m_tail,
        one_one_case,
        consistent,
    })
}

fn string_runs(closed: &[bool]) -> Vec<OpenRun> {
    let mut runs = Vec::new();
    let mut p = 0;
    while p < closed.len() {
        if closed[p] {
            p += 1;
            continue;
        }
        let start = p;
        while p < closed.len() && !closed[p] {
            p += 1;
        }
        runs.push(OpenRun {
            start: start + 1,
            length: p - start,
            left_closed: Some(start), // 1-based: the closed vertex before
            right_closed: Some(p + 1),
        });
    }
    runs
}

fn cycle_runs(closed: &[bool]) -> Vec<OpenRun> {
    let mu = closed.len();
    let closed_positions: Vec<usize> = (0..mu).filter(|&p| closed[p]).collect();
    if closed_positions.is_empty() {
        if mu == 0 {
            return Vec::new();
        }
        return vec![OpenRun {
            start: 1,
            length: mu,
            left_closed: None,
            right_closed: None,
        }];
    }
    let mut runs = Vec::new();
    let k = closed_positions.len();
    for (t, &c) in closed_positions.iter().enumerate() {
        let next = closed_positions[(t + 1) % k];
        let gap = (next + mu - c - 1) % mu;
        let gap = if k == 1 { mu - 1 } else { gap };
        if gap > 0 {
            runs.push(OpenRun {
                start: (c + 1) % mu + 1,
                length: gap,
                left_closed: Some(c + 1),
                right_closed: Some(next + 1),
            });
        }
    }
    // keep runs ordered by start position
    runs.sort_by_key(|r| r.start);
    runs
}

fn greedy_disjoint(intervals: &mut Vec<(usize, usize)>) -> usize {
    intervals.sort_by_key(|&(_, hi)| hi);
    let mut count = 0;
    let mut frontier: Option<usize> = None;
    for &(lo, hi) in intervals.iter() {
        if frontier.map_or(true, |f| lo > f) {
            count += 1;
            frontier = Some(hi);
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(pattern: &str) -> Profile {
        Profile::of(&Hypergraph::parse_pattern(pattern).unwrap()).unwrap()
    }

    #[test]
    fn profile_eleven_vertex_string() {
        let p = prof("coooococcoc");
        assert_eq!((p.mu, p.s, p.b), (11, 3, 4));
        // the traversal is canonically oriented, which mirrors this string
        assert_eq!(p.n, vec![1, 1, 4]);
        assert_eq!(p.modularity(), 1);
    }

    #[test]
    fn profile_sixteen_cycle() {
        let p = prof("cycle:cocoooocccocooco");
        assert_eq!((p.mu, p.s, p.b), (16, 5, 6));
        assert_eq!(p.modularity(), 2);
    }

    #[test]
    fn profile_fully_closed() {
        let p = prof("cccc");
        assert_eq!((p.s, p.b, p.is_count), (0, 0, 0));
        assert_eq!(p.modularity(), 0);
    }

    #[test]
    fn cycle_sparse_closed_convention() {
        // at most one closed vertex: one conventional run of mu - 1 opens
        let one = Profile::from_flags(
            ShapeKind::Cycle,
            vec![true, false, false, false, false],
            vec![1, 2, 3, 4, 5],
        );
        assert_eq!((one.s, one.n.clone(), one.b), (1, vec![4], 2));
        let none = Profile::from_flags(
            ShapeKind::Cycle,
            vec![false; 5],
            vec![1, 2, 3, 4, 5],
        );
        assert_eq!((none.s, none.n.clone(), none.b), (1, vec![4], 2));
        assert_eq!(none.modularity(), 0);
    }

    #[test]
    fn nine_vertex_modularity_pair() {
        // alternating string on 9 vertices: two disjoint configurations
        let p = prof("cococococ");
        assert_eq!(p.two_special_configs().len(), 3);
        assert_eq!(p.modularity(), 2);
        // on 7 vertices the two configurations share open vertex 4
        let q = prof("cocococ");
        assert_eq!(q.two_special_configs().len(), 2);
        assert_eq!(q.modularity(), 1);
    }

    #[test]
    fn runs_divisible_by_three_join_no_config() {
        let p = prof("coooc");
        assert!(p.two_special_configs().is_empty());
        assert_eq!(p.modularity(), 0);
        let q = prof("cocooococ");
        // middle run has 3 opens, so no interval can cross it with the
        // right residues
        assert!(q
            .two_special_configs()
            .iter()
            .all(|c| !c.run_indices.contains(&1)));
    }

    #[test]
    fn whole_cycle_config() {
        // smallest cycle whose single configuration wraps all the way
        // around: the two extremal closed vertices coincide
        let p = prof("cycle:coco");
        let configs = p.two_special_configs();
        assert_eq!(configs.len(), 1);
        assert_eq!(configs[0].run_indices.len(), 2);
        assert_eq!(p.modularity(), 1);
    }

    #[test]
    fn fourteen_cycle_profile() {
        let p = prof("cycle:ccocoococooooo");
        assert_eq!((p.s, p.b), (4, 5));
        assert_eq!(p.modularity(), 1);
    }

    #[test]
    fn isolated_open_count() {
        assert_eq!(prof("cococ").is_count, 2);
        assert_eq!(prof("coooc").is_count, 0);
        assert_eq!(prof("cycle:cocoo").is_count, 1);
    }

    #[test]
    fn reduced_case_shortcut() {
        // 5-cycle c-o-c-o-o: one isolated open
        let p = prof("cycle:cocoo");
        assert_eq!(p.modularity_reduced_case().unwrap(), 0);
        assert_eq!(p.modularity(), 0);
        // cycle alternating isolated opens and 2-runs, four isolated opens
        let q = prof("cycle:cocoocococoococo");
        let m = q.modularity_reduced_case().unwrap();
        assert_eq!(m, q.is_count / 2);
        assert_eq!(q.modularity(), m);
        // no isolated opens at all
        let r = prof("cycle:coocoo");
        assert_eq!(r.modularity_reduced_case().unwrap(), 0);
        assert_eq!(r.modularity(), 0);
        // out of domain: a run of three opens, or interior adjacent closed
        assert!(prof("cycle:cooo").modularity_reduced_case().is_err());
        assert!(prof("coccoc").modularity_reduced_case().is_err());
    }

    #[test]
    fn recursion_report_cases() {
        // isolated open vertex 2 inside a 1-1 configuration:
        // b drops 2 -> 0, M drops 1 -> 0
        let r = recursion_checks(&prof("cococ")).unwrap();
        assert!(r.one_one_case && r.consistent);
        assert_eq!((r.b, r.b_tail, r.m, r.m_tail), (2, 0, 1, 0));
        // leading run of 4 opens: b drops by one, M unchanged
        let r = recursion_checks(&prof("cooooccoc")).unwrap();
        assert!(!r.one_one_case && r.consistent);
        assert_eq!(r.b, r.b_tail + 1);
        assert_eq!(r.m, r.m_tail);
        // leading run of 2 opens: same drop pattern
        let r = recursion_checks(&prof("coococ")).unwrap();
        assert!(!r.one_one_case && r.consistent);
        // vertex 2 closed is out of domain
        assert!(recursion_checks(&prof("ccc")).is_err());
    }

    #[test]
    fn recursion_report_exhaustive() {
        for mu in 3..=12usize {
            for bits in 0..(1u32 << mu.saturating_sub(2)) {
                let mut flags = vec![true; mu];
                for k in 0..mu - 2 {
                    flags[k + 1] = bits >> k & 1 == 1;
                }
                if flags[1] {
                    continue;
                }
                let p = Profile::from_flags(ShapeKind::String, flags, (1..=mu).collect());
                let r = recursion_checks(&p).unwrap();
                assert!(r.consistent, "mu={mu} bits={bits:b} report={r:?}");
            }
        }
    }

    #[test]
    fn modularity_matches_exhaustive_small() {
        // every string pattern with closed endpoints, mu <= 11
        for mu in 1..=11usize {
            for bits in 0..(1u32 << mu.saturating_sub(2)) {
                let mut flags = vec![true; mu];
                for k in 0..mu.saturating_sub(2) {
                    flags[k + 1] = bits >> k & 1 == 1;
                }
                let p =
                    Profile::from_flags(ShapeKind::String, flags, (1..=mu).collect());
                assert_eq!(p.modularity(), p.modularity_exhaustive());
            }
        }
        // every cycle pattern, mu <= 11
        for mu in 3..=11usize {
            for bits in 0..(1u32 << mu) {
                let flags: Vec<bool> = (0..mu).map(|k| bits >> k & 1 == 1).collect();
                let p = Profile::from_flags(ShapeKind::Cycle, flags, (1..=mu).collect());
                assert_eq!(p.modularity(), p.modularity_exhaustive(), "mu={mu} bits={bits:b}");
            }
        }
    }

    #[test]
    fn reduced_case_matches_modularity_on_domain() {
        for mu in 3..=12usize {
            for bits in 0..(1u32 << mu) {
                let flags: Vec<bool> = (0..mu).map(|k| bits >> k & 1 == 1).collect();
                let p = Profile::from_flags(ShapeKind::Cycle, flags.clone(), (1..=mu).collect());
                if let Ok(m) = p.modularity_reduced_case() {
                    assert_eq!(m, p.modularity(), "cycle mu={mu} bits={bits:b}");
                }
            }
        }
    }
}
