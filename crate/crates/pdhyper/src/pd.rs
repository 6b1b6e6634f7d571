//! Projective dimension of string and cycle hypergraphs, by the closed
//! formula mu - b + M and by the peel-off recursion, plus grade and the
//! Cohen-Macaulay classification.

use crate::hypergraph::{Hypergraph, Shape};
use crate::invariants::{Profile, ShapeKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PdError {
    #[error("projective dimension is only computed for strings, cycles, and disjoint unions of strings")]
    UnsupportedShape,
    #[error("internal mismatch: formula gives {formula}, algorithm gives {algorithm}")]
    InternalMismatch { formula: usize, algorithm: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Formula,
    Algorithm,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodUsed {
    Formula,
    RecursiveAlgorithm,
    BaseCase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    pub add: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdResult {
    pub value: usize,
    pub method: MethodUsed,
    pub trace: Vec<TraceStep>,
}

impl PdResult {
    fn step(rule: impl Into<String>, add: usize) -> TraceStep {
        TraceStep {
            rule: rule.into(),
            add,
        }
    }
}

/// Closed formula on flags: mu - b + M.
pub fn formula_flags(kind: ShapeKind, flags: &[bool]) -> PdResult {
    let mu = flags.len();
    if mu == 0 {
        return PdResult {
            value: 0,
            method: MethodUsed::Formula,
            trace: vec![PdResult::step("empty hypergraph", 0)],
        };
    }
    let p = Profile::from_flags(kind, flags.to_vec(), (1..=mu).collect());
    let m = p.modularity();
    let value = mu - p.b + m;
    PdResult {
        value,
        method: MethodUsed::Formula,
        trace: vec![PdResult::step(
            format!("closed formula: mu - b + M = {} - {} + {}", mu, p.b, m),
            value,
        )],
    }
}

/// Peel-off recursion for strings: repeatedly look at the second vertex;
/// if it is closed (or the string is a single vertex) drop one vertex and
/// add 1, otherwise drop three vertices and add 2. The vertex that becomes
/// first is closed afterwards.
pub fn string_algorithm_flags(flags: &[bool]) -> PdResult {
    let mut flags = flags.to_vec();
    let mut trace = Vec::new();
    let mut value = 0;
    while !flags.is_empty() {
        if flags.len() == 1 {
            trace.push(PdResult::step("single closed vertex: +1", 1));
            value += 1;
            flags.clear();
        } else if flags[1] {
            trace.push(PdResult::step("closed neighbor: +1", 1));
            value += 1;
            flags.remove(0);
            flags[0] = true;
        } else {
            trace.push(PdResult::step("open neighbor: +2", 2));
            value += 2;
            flags.drain(0..3);
            if let Some(first) = flags.first_mut() {
                *first = true;
            }
        }
    }
    PdResult {
        value,
        method: MethodUsed::RecursiveAlgorithm,
        trace,
    }
}

/// Recursion for cycles: small cycles and fully open cycles are base
/// cases; a pair of adjacent closed vertices lets the cycle be cut open
/// into a string; three consecutive opens can be contracted for +2; and
/// otherwise the cycle is split at a closed vertex into two strings.
pub fn cycle_algorithm_flags(flags: &[bool]) -> PdResult {
    assert!(flags.len() >= 3, "a cycle has at least 3 vertices");
    let mut flags = flags.to_vec();
    let mut trace: Vec<TraceStep> = Vec::new();
    let mut value = 0;
    loop {
        let mu = flags.len();
        if mu <= 4 {
            let add = if flags.iter().all(|&c| c) { mu } else { mu - 1 };
            trace.push(PdResult::step(
                format!("small cycle base case: +{add}"),
                add,
            ));
            value += add;
            break;
        }
        if flags.iter().all(|&c| !c) {
            let add = mu - 1 - (mu - 2) / 3;
            trace.push(PdResult::step(format!("fully open cycle: +{add}"), add));
            value += add;
            break;
        }
        if let Some(i) = (0..mu).find(|&i| flags[i] && flags[(i + 1) % mu]) {
            // cut the face joining the two adjacent closed vertices; the
            // remaining string starts at the second one
            let cut: Vec<bool> = (0..mu).map(|t| flags[(i + 1 + t) % mu]).collect();
            trace.push(PdResult::step(
                "adjacent closed vertices: cut their joining face, a string remains",
                0,
            ));
            let sub = string_algorithm_flags(&cut);
            value += sub.value;
            trace.extend(sub.trace);
            break;
        }
        if mu >= 6 {
            if let Some(p) =
                (0..mu).find(|&p| !flags[p] && !flags[(p + 1) % mu] && !flags[(p + 2) % mu])
            {
                let kept: Vec<bool> = (0..mu)
                    .filter(|&t| t != p && t != (p + 1) % mu && t != (p + 2) % mu)
                    .map(|t| flags[t])
                    .collect();
                trace.push(PdResult::step("three connected opens removed: +2", 2));
                value += 2;
                flags = kept;
                continue;
            }
        }
        // split at a closed vertex (its neighbors are open, since no two
        // closed vertices are adjacent at this point)
        let v1 = (0..mu).find(|&p| flags[p]).expect("a closed vertex exists");
        let mut ring: Vec<bool> = (1..mu).map(|t| flags[(v1 + t) % mu]).collect();
        *ring.first_mut().unwrap() = true;
        *ring.last_mut().unwrap() = true;
        let far = if mu == 5 {
            PdResult {
                value: 0,
                method: MethodUsed::RecursiveAlgorithm,
                trace: vec![PdResult::step("empty far segment", 0)],
            }
        } else {
            let mut seg: Vec<bool> = (3..mu - 2).map(|t| flags[(v1 + t) % mu]).collect();
            *seg.first_mut().unwrap() = true;
            *seg.last_mut().unwrap() = true;
            string_algorithm_flags(&seg)
        };
        let ring_pd = string_algorithm_flags(&ring);
        if ring_pd.value >= far.value + 3 {
            trace.push(PdResult::step(
                format!(
                    "split at a closed vertex: max{{{}, {} + 3}} — ring minus the vertex wins",
                    ring_pd.value, far.value
                ),
                0,
            ));
            value += ring_pd.value;
            trace.extend(ring_pd.trace);
        } else {
            trace.push(PdResult::step(
                format!(
                    "split at a closed vertex: max{{{}, {} + 3}} — far segment plus 3 wins",
                    ring_pd.value, far.value
                ),
                3,
            ));
            value += far.value + 3;
            trace.extend(far.trace);
        }
        break;
    }
    let method = if trace.len() == 1 && value == trace[0].add {
        MethodUsed::BaseCase
    } else {
        MethodUsed::RecursiveAlgorithm
    };
    PdResult {
        value,
        method,
        trace,
    }
}

fn shape_flags(h: &Hypergraph) -> Result<(ShapeKind, Vec<bool>, Option<Vec<Vec<bool>>>), PdError> {
    match h.classify_shape().map_err(|_| PdError::UnsupportedShape)? {
        Shape::String { order } => Ok((
            ShapeKind::String,
            order.iter().map(|&v| h.is_closed(v)).collect(),
            None,
        )),
        Shape::Cycle { order } => Ok((
            ShapeKind::Cycle,
            order.iter().map(|&v| h.is_closed(v)).collect(),
            None,
        )),
        Shape::DisjointStrings { components } => {
            let parts = components
                .iter()
                .map(|comp| comp.iter().map(|&v| h.is_closed(v)).collect())
                .collect();
            Ok((ShapeKind::String, Vec::new(), Some(parts)))
        }
        Shape::Other => Err(PdError::UnsupportedShape),
    }
}

pub fn pd_formula(h: &Hypergraph) -> Result<PdResult, PdError> {
    let (kind, flags, parts) = shape_flags(h)?;
    if let Some(parts) = parts {
        let mut value = 0;
        let mut trace = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            let sub = formula_flags(ShapeKind::String, part);
            trace.push(PdResult::step(
                format!("component {}: +{}", i + 1, sub.value),
                sub.value,
            ));
            value += sub.value;
        }
        return Ok(PdResult {
            value,
            method: MethodUsed::Formula,
            trace,
        });
    }
    Ok(formula_flags(kind, &flags))
}

pub fn pd_string_algorithm(h: &Hypergraph) -> Result<PdResult, PdError> {
    match shape_flags(h)? {
        (ShapeKind::String, flags, None) => Ok(string_algorithm_flags(&flags)),
        (_, _, Some(parts)) if parts.is_empty() => Ok(string_algorithm_flags(&[])),
        _ => Err(PdError::UnsupportedShape),
    }
}

pub fn pd_cycle_algorithm(h: &Hypergraph) -> Result<PdResult, PdError> {
    match shape_flags(h)? {
        (ShapeKind::Cycle, flags, None) => Ok(cycle_algorithm_flags(&flags)),
        _ => Err(PdError::UnsupportedShape),
    }
}

fn pd_algorithm(h: &Hypergraph) -> Result<PdResult, PdError> {
    match shape_flags(h)? {
        (ShapeKind::String, flags, None) => Ok(string_algorithm_flags(&flags)),
        (ShapeKind::Cycle, flags, None) => Ok(cycle_algorithm_flags(&flags)),
        (_, _, Some(parts)) => {
            let mut value = 0;
            let mut trace = Vec::new();
            for (i, part) in parts.iter().enumerate() {
                let sub = string_algorithm_flags(part);
                trace.push(PdResult::step(
                    format!("component {}: +{}", i + 1, sub.value),
                    sub.value,
                ));
                value += sub.value;
            }
            Ok(PdResult {
                value,
                method: MethodUsed::RecursiveAlgorithm,
                trace,
            })
        }
    }
}

pub fn pd(h: &Hypergraph, method: Method) -> Result<PdResult, PdError> {
    match method {
        Method::Formula => pd_formula(h),
        Method::Algorithm => pd_algorithm(h),
        Method::Both => {
            let f = pd_formula(h)?;
            let a = pd_algorithm(h)?;
            if f.value != a.value {
                return Err(PdError::InternalMismatch {
                    formula: f.value,
                    algorithm: a.value,
                });
            }
            Ok(a)
        }
    }
}

/// grade of the ideal: the ceiling of mu/2, for strings and cycles.
pub fn grade(h: &Hypergraph) -> Result<usize, PdError> {
    match h.classify_shape().map_err(|_| PdError::UnsupportedShape)? {
        Shape::String { .. } | Shape::Cycle { .. } => Ok((h.mu() + 1) / 2),
        _ => Err(PdError::UnsupportedShape),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmVerdict {
    pub is_cm: bool,
    pub grade: usize,
    pub pd: usize,
    pub reason: String,
}

/// Cohen-Macaulay classification: a string is CM exactly when mu = 1, or
/// mu = 3 and not saturated; a cycle exactly when mu = 3 and not
/// saturated, or mu = 5 with no two adjacent closed vertices.
pub fn is_cohen_macaulay(h: &Hypergraph) -> Result<CmVerdict, PdError> {
    let (kind, flags, parts) = shape_flags(h)?;
    if parts.is_some() {
        return Err(PdError::UnsupportedShape);
    }
    let mu = flags.len();
    let saturated = flags.iter().all(|&c| c);
    let (is_cm, reason) = match kind {
        ShapeKind::String => {
            if mu == 1 {
                (true, "single vertex".to_string())
            } else if mu == 3 && !saturated {
                (true, "three-vertex string with an open vertex".to_string())
            } else {
                (false, format!("string with mu = {mu} outside the CM cases"))
            }
        }
        ShapeKind::Cycle => {
            let adjacent_closed = (0..mu).any(|p| flags[p] && flags[(p + 1) % mu]);
            if mu == 3 && !saturated {
                (true, "three-cycle with an open vertex".to_string())
            } else if mu == 5 && !adjacent_closed {
                (true, "five-cycle without adjacent closed vertices".to_string())
            } else {
                (false, format!("cycle with mu = {mu} outside the CM cases"))
            }
        }
    };
    let g = grade(h)?;
    let p = pd(h, Method::Both)?.value;
    debug_assert_eq!(is_cm, g == p, "classification must agree with grade = pd");
    Ok(CmVerdict {
        is_cm,
        grade: g,
        pd: p,
        reason,
    })
}

/// All string patterns (closed endpoints) with exactly `mu` vertices.
pub fn all_string_flags(mu: usize) -> Vec<Vec<bool>> {
    if mu == 0 {
        return vec![Vec::new()];
    }
    if mu == 1 {
        return vec![vec![true]];
    }
    let free = mu - 2;
    (0..(1u64 << free))
        .map(|bits| {
            let mut flags = vec![true; mu];
            for k in 0..free {
                flags[k + 1] = bits >> k & 1 == 1;
            }
            flags
        })
        .collect()
}

/// All cycle patterns with exactly `mu` vertices (every closed/open
/// assignment; rotations are not deduplicated).
pub fn all_cycle_flags(mu: usize) -> Vec<Vec<bool>> {
    (0..(1u64 << mu))
        .map(|bits| (0..mu).map(|k| bits >> k & 1 == 1).collect())
        .collect()
}
