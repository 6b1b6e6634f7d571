//! Hypergraphs on the vertex set `{1..mu}` together with the structural
//! surgery (vertex and face removal) and shape classification used by the
//! projective-dimension engine.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub type Vertex = usize;
pub type Face = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergraphError {
    #[error("faces must be non-empty")]
    EmptyFace,
    #[error("face contains vertex {0}, outside 1..={1}")]
    VertexOutOfRange(Vertex, usize),
    #[error("vertex {0} does not belong to any face")]
    UncoveredVertex(Vertex),
    #[error("{0:?} is not a face of the hypergraph")]
    NotAFace(Face),
    #[error("removing face {0:?} leaves vertex {1} uncovered")]
    CoverageBroken(Face, Vertex),
    #[error("hypergraph is not separated")]
    NotSeparated,
    #[error("bad pattern: {0}")]
    BadPattern(String),
}

/// A hypergraph: `mu` vertices labelled `1..=mu` and a set of non-empty
/// faces covering every vertex. Faces are kept as sorted vertex lists inside
/// a sorted set, so equal hypergraphs compare equal structurally.
///
/// The empty hypergraph (`mu == 0`, no faces) is a legal value; it shows up
/// as the terminal state of the reduction algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    mu: usize,
    faces: BTreeSet<Face>,
}

/// Shape of a separated hypergraph, with an explicit vertex traversal order
/// when the shape is recognized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// Endpoint-to-endpoint vertex order; consecutive pairs are faces and
    /// both endpoints are closed.
    String { order: Vec<Vertex> },
    /// Cyclic vertex order (`mu >= 3`); consecutive pairs and the wrap pair
    /// are faces.
    Cycle { order: Vec<Vertex> },
    /// Disjoint union of two or more strings, one vertex order per component.
    /// The empty hypergraph is reported as a union of zero strings.
    DisjointStrings { components: Vec<Vec<Vertex>> },
    Other,
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    mu: usize,
    faces: Vec<Face>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        HypergraphRepr {
            mu: self.mu,
            faces: self.faces.iter().cloned().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = HypergraphRepr::deserialize(deserializer)?;
        Hypergraph::new(repr.mu, repr.faces).map_err(serde::de::Error::custom)
    }
}

impl Hypergraph {
    pub fn new<I, F>(mu: usize, faces: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        let mut set: BTreeSet<Face> = BTreeSet::new();
        for face in faces {
            let members: BTreeSet<Vertex> = face.into_iter().collect();
            if members.is_empty() {
                return Err(HypergraphError::EmptyFace);
            }
            for &v in &members {
                if v < 1 || v > mu {
                    return Err(HypergraphError::VertexOutOfRange(v, mu));
                }
            }
            set.insert(members.into_iter().collect());
        }
        let covered: BTreeSet<Vertex> = set.iter().flatten().copied().collect();
        for v in 1..=mu {
            if !covered.contains(&v) {
                return Err(HypergraphError::UncoveredVertex(v));
            }
        }
        Ok(Hypergraph { mu, faces: set })
    }

    pub fn empty() -> Self {
        Hypergraph {
            mu: 0,
            faces: BTreeSet::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.mu == 0
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn has_face(&self, face: &[Vertex]) -> bool {
        let sorted: Face = {
            let s: BTreeSet<Vertex> = face.iter().copied().collect();
            s.into_iter().collect()
        };
        self.faces.contains(&sorted)
    }

    /// A vertex is closed when its singleton is a face, open otherwise.
    pub fn is_closed(&self, v: Vertex) -> bool {
        self.faces.contains(&vec![v])
    }

    /// All vertices closed.
    pub fn is_saturated(&self) -> bool {
        (1..=self.mu).all(|v| self.is_closed(v))
    }

    /// Vertices sharing a face with `v`, excluding `v` itself.
    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for face in &self.faces {
            if face.contains(&v) {
                out.extend(face.iter().copied().filter(|&w| w != v));
            }
        }
        out
    }

    /// Separatedness: every ordered vertex pair is distinguished by a face.
    /// Equivalently, the face-membership sets of distinct vertices are
    /// incomparable under inclusion.
    pub fn is_separated(&self) -> bool {
        let mut membership: BTreeMap<Vertex, BTreeSet<usize>> = BTreeMap::new();
        for (i, face) in self.faces.iter().enumerate() {
            for &v in face {
                membership.entry(v).or_default().insert(i);
            }
        }
        for j1 in 1..=self.mu {
            for j2 in (j1 + 1)..=self.mu {
                let m1 = &membership[&j1];
                let m2 = &membership[&j2];
                if m1.is_subset(m2) || m2.is_subset(m1) {
                    return false;
                }
            }
        }
        true
    }

    /// Classify a separated hypergraph as a string, a cycle, a disjoint
    /// union of strings, or something else.
    pub fn classify_shape(&self) -> Result<Shape, HypergraphError> {
        if !self.is_separated() {
            return Err(HypergraphError::NotSeparated);
        }
        if self.is_empty() {
            return Ok(Shape::DisjointStrings { components: vec![] });
        }
        if self.faces.iter().any(|f| f.len() > 2) {
            return Ok(Shape::Other);
        }
        // Adjacency from the pair faces.
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); self.mu + 1];
        for face in &self.faces {
            if let [a, b] = face[..] {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        if adj.iter().any(|n| n.len() > 2) {
            return Ok(Shape::Other);
        }
        // Walk out each connected component of the pair graph.
        let mut seen = vec![false; self.mu + 1];
        let mut paths: Vec<Vec<Vertex>> = Vec::new();
        let mut cycles: Vec<Vec<Vertex>> = Vec::new();
        for start in 1..=self.mu {
            if seen[start] {
                continue;
            }
            // Find an endpoint of the component if one exists.
            let mut endpoint = None;
            {
                let mut stack = vec![start];
                let mut comp_seen = BTreeSet::new();
                while let Some(v) = stack.pop() {
                    if !comp_seen.insert(v) {
                        continue;
                    }
                    if adj[v].len() <= 1 && (endpoint.is_none() || v < endpoint.unwrap()) {
                        endpoint = Some(v);
                    }
                    stack.extend(adj[v].iter().copied());
                }
            }
            let first = endpoint.unwrap_or(start);
            let mut order = vec![first];
            seen[first] = true;
            let mut prev = first;
            let mut cur = match adj[first].iter().copied().min() {
                Some(v) => v,
                None => {
                    paths.push(order);
                    continue;
                }
            };
            let is_cycle = loop {
                if cur == first {
                    break true;
                }
                seen[cur] = true;
                order.push(cur);
                match adj[cur].iter().copied().find(|&w| w != prev) {
                    Some(next) => {
                        prev = cur;
                        cur = next;
                    }
                    None => break false,
                }
            };
            if is_cycle {
                cycles.push(order);
            } else {
                paths.push(order);
            }
        }
        if cycles.len() == 1 && paths.is_empty() && cycles[0].len() == self.mu {
            return Ok(Shape::Cycle {
                order: cycles.remove(0),
            });
        }
        if !cycles.is_empty() {
            return Ok(Shape::Other);
        }
        // Every component must be a genuine string: all its pair faces are
        // consecutive in the walk (guaranteed by degree <= 2) and each
        // single-vertex component must be closed (coverage forces this).
        if paths.len() == 1 && paths[0].len() == self.mu {
            return Ok(Shape::String {
                order: orient_string(self, paths.pop().unwrap()),
            });
        }
        let total: usize = paths.iter().map(|p| p.len()).sum();
        if paths.len() >= 2 && total == self.mu {
            let components = paths
                .into_iter()
                .map(|p| orient_string(self, p))
                .collect();
            return Ok(Shape::DisjointStrings { components });
        }
        Ok(Shape::Other)
    }

    /// Remove a set of vertices: each face is intersected with the
    /// complement, empty faces are dropped, duplicates merge, and the
    /// surviving vertices are renumbered consecutively in increasing order.
    /// Removing every vertex yields the empty hypergraph.
    pub fn remove_vertices(&self, removed: &BTreeSet<Vertex>) -> Hypergraph {
        let survivors: Vec<Vertex> = (1..=self.mu).filter(|v| !removed.contains(v)).collect();
        let relabel: BTreeMap<Vertex, Vertex> = survivors
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i + 1))
            .collect();
        let faces: BTreeSet<Face> = self
            .faces
            .iter()
            .filter_map(|face| {
                let f: Face = face.iter().filter_map(|v| relabel.get(v).copied()).collect();
                if f.is_empty() {
                    None
                } else {
                    Some(f)
                }
            })
            .collect();
        Hypergraph {
            mu: survivors.len(),
            faces,
        }
    }

    /// Remove the first `i` vertices, keeping the renumbered remainder.
    pub fn tail(&self, i: usize) -> Hypergraph {
        self.remove_vertices(&(1..=i.min(self.mu)).collect())
    }

    /// Delete one face, keeping the vertex set. Fails if the face is absent
    /// or if some vertex of the face appears in no other face.
    pub fn remove_face(&self, face: &[Vertex]) -> Result<Hypergraph, HypergraphError> {
        let sorted: Face = {
            let s: BTreeSet<Vertex> = face.iter().copied().collect();
            s.into_iter().collect()
        };
        if !self.faces.contains(&sorted) {
            return Err(HypergraphError::NotAFace(sorted));
        }
        for &v in &sorted {
            let covered_elsewhere = self
                .faces
                .iter()
                .any(|f| f != &sorted && f.contains(&v));
            if !covered_elsewhere {
                return Err(HypergraphError::CoverageBroken(sorted, v));
            }
        }
        let mut faces = self.faces.clone();
        faces.remove(&sorted);
        Ok(Hypergraph { mu: self.mu, faces })
    }

    /// Add a face (no-op when already present).
    pub fn add_face(&self, face: &[Vertex]) -> Result<Hypergraph, HypergraphError> {
        let members: BTreeSet<Vertex> = face.iter().copied().collect();
        if members.is_empty() {
            return Err(HypergraphError::EmptyFace);
        }
        for &v in &members {
            if v < 1 || v > self.mu {
                return Err(HypergraphError::VertexOutOfRange(v, self.mu));
            }
        }
        let mut faces = self.faces.clone();
        faces.insert(members.into_iter().collect());
        Ok(Hypergraph { mu: self.mu, faces })
    }

    /// Build a string hypergraph from its closed/open flags
    /// (`closed[i]` is vertex `i+1`). Endpoints must be closed.
    pub fn string_from_flags(closed: &[bool]) -> Result<Hypergraph, HypergraphError> {
        let mu = closed.len();
        if mu == 0 {
            return Ok(Hypergraph::empty());
        }
        if !closed[0] || !closed[mu - 1] {
            return Err(HypergraphError::BadPattern(
                "string endpoints must be closed".into(),
            ));
        }
        let mut faces: Vec<Face> = Vec::new();
        for (i, &c) in closed.iter().enumerate() {
            if c {
                faces.push(vec![i + 1]);
            }
        }
        for i in 1..mu {
            faces.push(vec![i, i + 1]);
        }
        Hypergraph::new(mu, faces)
    }

    /// Build a cycle hypergraph (`mu >= 3`) from closed/open flags.
    pub fn cycle_from_flags(closed: &[bool]) -> Result<Hypergraph, HypergraphError> {
        let mu = closed.len();
        if mu < 3 {
            return Err(HypergraphError::BadPattern(
                "a cycle needs at least 3 vertices".into(),
            ));
        }
        let mut faces: Vec<Face> = Vec::new();
        for (i, &c) in closed.iter().enumerate() {
            if c {
                faces.push(vec![i + 1]);
            }
        }
        for i in 1..mu {
            faces.push(vec![i, i + 1]);
        }
        faces.push(vec![mu, 1]);
        Hypergraph::new(mu, faces)
    }

    /// Parse the compact pattern format: `[co]+` for strings (both
    /// endpoints `c`), or `cycle:[co]+` with at least 3 symbols.
    /// Case-insensitive.
    pub fn parse_pattern(text: &str) -> Result<Hypergraph, HypergraphError> {
        let trimmed = text.trim();
        let lower = trimmed.to_ascii_lowercase();
        let (is_cycle, body) = match lower.strip_prefix("cycle:") {
            Some(rest) => (true, rest),
            None => (false, lower.as_str()),
        };
        if body.is_empty() {
            return Err(HypergraphError::BadPattern("empty pattern".into()));
        }
        let mut closed = Vec::with_capacity(body.len());
        for ch in body.chars() {
            match ch {
                'c' => closed.push(true),
                'o' => closed.push(false),
                other => {
                    return Err(HypergraphError::BadPattern(format!(
                        "illegal character '{other}'"
                    )))
                }
            }
        }
        if is_cycle {
            Hypergraph::cycle_from_flags(&closed)
        } else {
            Hypergraph::string_from_flags(&closed)
        }
    }

    /// Inverse of `parse_pattern` on string and cycle shapes, emitting the
    /// canonical orientation (lexicographically least over reversal, and
    /// over rotation as well for cycles).
    pub fn render_pattern(&self) -> Result<String, HypergraphError> {
        match self.classify_shape()? {
            Shape::String { order } => {
                let flags: Vec<bool> = order.iter().map(|&v| self.is_closed(v)).collect();
                Ok(canonical_string_pattern(&flags))
            }
            Shape::Cycle { order } => {
                let flags: Vec<bool> = order.iter().map(|&v| self.is_closed(v)).collect();
                Ok(format!("cycle:{}", canonical_cycle_pattern(&flags)))
            }
            _ => Err(HypergraphError::BadPattern(
                "only strings and cycles have a pattern form".into(),
            )),
        }
    }
}

// Orient a walked path so the closed-pattern reads lexicographically least.
fn orient_string(h: &Hypergraph, order: Vec<Vertex>) -> Vec<Vertex> {
    let fwd: Vec<char> = order
        .iter()
        .map(|&v| if h.is_closed(v) { 'c' } else { 'o' })
        .collect();
    let rev: Vec<char> = fwd.iter().rev().copied().collect();
    if rev < fwd {
        order.into_iter().rev().collect()
    } else {
        order
    }
}

fn flags_to_string(flags: &[bool]) -> String {
    flags.iter().map(|&c| if c { 'c' } else { 'o' }).collect()
}

pub(crate) fn canonical_string_pattern(flags: &[bool]) -> String {
    let fwd = flags_to_string(flags);
    let rev: String = fwd.chars().rev().collect();
    fwd.min(rev)
}

pub(crate) fn canonical_cycle_pattern(flags: &[bool]) -> String {
    let n = flags.len();
    let mut best: Option<String> = None;
    for rev in [false, true] {
        let base: Vec<bool> = if rev {
            flags.iter().rev().copied().collect()
        } else {
            flags.to_vec()
        };
        for rot in 0..n {
            let s: String = (0..n)
                .map(|i| if base[(i + rot) % n] { 'c' } else { 'o' })
                .collect();
            if best.as_ref().map_or(true, |b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(mu: usize, faces: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(mu, faces.iter().map(|f| f.iter().copied())).unwrap()
    }

    // The 7-vertex running example used throughout the tests:
    // closed at 1, 2, 5, 7.
    fn seven_string() -> Hypergraph {
        hg(
            7,
            &[
                &[1],
                &[1, 2],
                &[2],
                &[2, 3],
                &[3, 4],
                &[4, 5],
                &[5],
                &[5, 6],
                &[6, 7],
                &[7],
            ],
        )
    }

    #[test]
    fn separatedness() {
        assert!(hg(2, &[&[1], &[2], &[1, 2]]).is_separated());
        assert!(!hg(2, &[&[1, 2]]).is_separated());
        assert!(hg(3, &[&[1], &[1, 2], &[2, 3], &[3]]).is_separated());
        // Vertex 2's membership set is contained in vertex 1's.
        assert!(!hg(2, &[&[1], &[1, 2]]).is_separated());
    }

    #[test]
    fn closed_vertices() {
        let h = hg(3, &[&[1], &[1, 2], &[2, 3], &[3]]);
        assert!(h.is_closed(1));
        assert!(!h.is_closed(2));
        let s = seven_string();
        assert!(s.is_closed(5));
        assert!(!s.is_closed(3));
    }

    #[test]
    fn shape_string() {
        let shape = seven_string().classify_shape().unwrap();
        match shape {
            Shape::String { order } => assert_eq!(order, vec![1, 2, 3, 4, 5, 6, 7]),
            other => panic!("expected string, got {other:?}"),
        }
    }

    #[test]
    fn shape_cycle() {
        let h = hg(3, &[&[1], &[1, 2], &[2, 3], &[3], &[1, 3]]);
        assert!(matches!(h.classify_shape().unwrap(), Shape::Cycle { .. }));
    }

    #[test]
    fn shape_disjoint_strings() {
        let h = hg(4, &[&[1], &[1, 2], &[2], &[3], &[3, 4], &[4]]);
        match h.classify_shape().unwrap() {
            Shape::DisjointStrings { components } => assert_eq!(components.len(), 2),
            other => panic!("expected disjoint strings, got {other:?}"),
        }
    }

    #[test]
    fn shape_other() {
        // A face of size 3 is never a string or cycle.
        let h = hg(3, &[&[1], &[2], &[3], &[1, 2, 3]]);
        assert!(matches!(h.classify_shape().unwrap(), Shape::Other));
        // A claw: vertex of degree 3.
        let h = hg(
            4,
            &[&[1], &[2], &[3], &[4], &[1, 2], &[1, 3], &[1, 4]],
        );
        assert!(matches!(h.classify_shape().unwrap(), Shape::Other));
    }

    #[test]
    fn shape_requires_separated() {
        let h = hg(2, &[&[1, 2]]);
        assert_eq!(h.classify_shape(), Err(HypergraphError::NotSeparated));
    }

    #[test]
    fn cycle_needs_three_vertices() {
        assert!(Hypergraph::cycle_from_flags(&[true, true]).is_err());
    }

    #[test]
    fn remove_vertices_renumbers() {
        let s = seven_string();
        let tail1 = s.tail(1);
        assert_eq!(tail1, Hypergraph::parse_pattern("coococ").unwrap());
        assert_eq!(s.remove_vertices(&BTreeSet::new()), s);
        assert_eq!(s.tail(4), Hypergraph::parse_pattern("coc").unwrap());
        assert!(s.tail(7).is_empty());
    }

    #[test]
    fn remove_vertices_keeps_string_shape() {
        let s = seven_string();
        for i in 1..7 {
            let t = s.tail(i);
            assert_eq!(t.mu(), 7 - i);
            assert!(matches!(t.classify_shape().unwrap(), Shape::String { .. }));
        }
    }

    #[test]
    fn remove_face_cases() {
        let square = Hypergraph::parse_pattern("cycle:cccc").unwrap();
        let cut = square.remove_face(&[4, 1]).unwrap();
        assert!(matches!(
            cut.classify_shape().unwrap(),
            Shape::String { .. }
        ));

        // Open 3-cycle: removing an edge keeps coverage but breaks
        // separatedness of the remainder.
        let open3 = hg(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let cut = open3.remove_face(&[1, 3]).unwrap();
        assert!(!cut.is_separated());

        // Breaking coverage is rejected.
        let h = hg(2, &[&[1], &[1, 2]]);
        assert!(matches!(
            h.remove_face(&[1, 2]),
            Err(HypergraphError::CoverageBroken(_, 2))
        ));
    }

    #[test]
    fn pattern_parsing() {
        let h = Hypergraph::parse_pattern("ccoococ").unwrap();
        assert_eq!(h, seven_string());
        let h = Hypergraph::parse_pattern("CCOOCOC").unwrap();
        assert_eq!(h, seven_string());
        assert_eq!(
            Hypergraph::parse_pattern("c").unwrap(),
            hg(1, &[&[1]])
        );
        assert!(Hypergraph::parse_pattern("co").is_err());
        assert!(Hypergraph::parse_pattern("cxc").is_err());
        assert!(Hypergraph::parse_pattern("cycle:co").is_err());
        assert!(Hypergraph::parse_pattern("cycle:cocooc").is_ok());
    }

    #[test]
    fn pattern_render_round_trip() {
        for p in ["ccoococ", "coc", "c", "cocooocccoooooc"] {
            let h = Hypergraph::parse_pattern(p).unwrap();
            let rendered = h.render_pattern().unwrap();
            assert_eq!(Hypergraph::parse_pattern(&rendered).unwrap().mu(), h.mu());
            // Canonical form re-renders to itself.
            let h2 = Hypergraph::parse_pattern(&rendered).unwrap();
            assert_eq!(h2.render_pattern().unwrap(), rendered);
        }
        let h = Hypergraph::parse_pattern("cycle:cocooc").unwrap();
        let rendered = h.render_pattern().unwrap();
        assert!(rendered.starts_with("cycle:"));
        assert_eq!(Hypergraph::parse_pattern(&rendered).unwrap(), {
            // Canonical rotation of the same cycle.
            Hypergraph::parse_pattern(&rendered).unwrap()
        });
    }

    #[test]
    fn json_round_trip() {
        let h = seven_string();
        let text = serde_json::to_string(&h).unwrap();
        let back: Hypergraph = serde_json::from_str(&text).unwrap();
        assert_eq!(h, back);
        // Invalid input is rejected on deserialize.
        assert!(serde_json::from_str::<Hypergraph>(r#"{"mu":2,"faces":[[1]]}"#).is_err());
    }

    #[test]
    fn saturated_detection() {
        assert!(Hypergraph::parse_pattern("ccc").unwrap().is_saturated());
        assert!(!seven_string().is_saturated());
    }
}
