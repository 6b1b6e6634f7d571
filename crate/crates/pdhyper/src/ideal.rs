//! Square-free monomial ideals and the translation to and from separated
//! hypergraphs: one vertex per minimal generator, one face per variable
//! (the set of generators it divides).

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hypergraph::{Hypergraph, HypergraphError};

pub type VarId = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("generators are not inclusion-minimal")]
    NonMinimalGenerators,
    #[error("hypergraph is not separated")]
    NotSeparated,
    #[error("colon needs at least two generators")]
    SingleGenerator,
    #[error("generator index {0} out of range 1..={1}")]
    GeneratorIndexOutOfRange(usize, usize),
    #[error("bad ideal input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// A square-free monomial: just its support. Multiplication is union,
/// divisibility is inclusion, gcd is intersection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeSet<VarId>);

impl Monomial {
    pub fn new<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        Monomial(vars.into_iter().collect())
    }

    pub fn one() -> Self {
        Monomial(BTreeSet::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().copied()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.intersection(&other.0).copied().collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.union(&other.0).copied().collect())
    }

    /// Exact quotient of square-free monomials: the support difference.
    /// Callers must know `divisor.gcd(self) == divisor` when exactness
    /// matters; for the colon construction the plain difference is wanted.
    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.difference(&divisor.0).copied().collect())
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.0.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
    num_vars: VarId,
}

impl MonomialIdeal {
    pub fn new(gens: Vec<Monomial>) -> Self {
        let num_vars = gens
            .iter()
            .flat_map(|m| m.vars())
            .max()
            .map_or(0, |v| v + 1);
        MonomialIdeal { gens, num_vars }
    }

    pub fn zero() -> Self {
        MonomialIdeal {
            gens: Vec::new(),
            num_vars: 0,
        }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn num_vars(&self) -> VarId {
        self.num_vars
    }

    pub fn is_minimal(&self) -> bool {
        for (j, m) in self.gens.iter().enumerate() {
            for (k, other) in self.gens.iter().enumerate() {
                if j != k && other.divides(m) && (other != m || k < j) {
                    return false;
                }
            }
        }
        true
    }

    /// Drop every generator that is divisible by another (keeping the first
    /// copy of duplicates), preserving the order of survivors.
    pub fn minimalize(&self) -> MonomialIdeal {
        let mut kept: Vec<Monomial> = Vec::new();
        for m in &self.gens {
            if kept.iter().any(|k| k.divides(m)) {
                continue;
            }
            kept.retain(|k| !m.divides(k));
            kept.push(m.clone());
        }
        MonomialIdeal::new(kept)
    }

    /// Dual hypergraph: vertex `j` per generator, and for each variable the
    /// face of generators it divides. Requires a minimal generating set so
    /// the result is separated.
    pub fn hypergraph(&self) -> Result<Hypergraph, IdealError> {
        if !self.is_minimal() {
            return Err(IdealError::NonMinimalGenerators);
        }
        let mu = self.gens.len();
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in 0..self.num_vars {
            let face: Vec<usize> = self
                .gens
                .iter()
                .enumerate()
                .filter(|(_, m)| m.contains(a))
                .map(|(j, _)| j + 1)
                .collect();
            if !face.is_empty() {
                faces.insert(face);
            }
        }
        Ok(Hypergraph::new(mu, faces)?)
    }

    /// The colon ideal `I : m_k` for 1-based generator index `k`:
    /// minimalized ideal generated by `m_j / gcd(m_j, m_k)` over `j != k`.
    pub fn colon_by_generator(&self, k: usize) -> Result<MonomialIdeal, IdealError> {
        if self.gens.len() < 2 {
            return Err(IdealError::SingleGenerator);
        }
        if k < 1 || k > self.gens.len() {
            return Err(IdealError::GeneratorIndexOutOfRange(k, self.gens.len()));
        }
        let mk = &self.gens[k - 1];
        let quotients: Vec<Monomial> = self
            .gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k - 1)
            .map(|(_, m)| m.quotient(&m.gcd(mk)))
            .collect();
        Ok(MonomialIdeal::new(quotients).minimalize())
    }

    // --- text and JSON interchange ------------------------------------

    /// Parse "ab,bc,cde": each comma-separated word is a generator, each
    /// letter a variable.
    pub fn parse_text(text: &str) -> Result<MonomialIdeal, IdealError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(MonomialIdeal::zero());
        }
        let mut gens = Vec::new();
        for word in trimmed.split(',') {
            let word = word.trim();
            if word.is_empty() {
                return Err(IdealError::BadInput("empty generator".into()));
            }
            let mut vars = BTreeSet::new();
            for ch in word.chars() {
                if !ch.is_ascii_lowercase() {
                    return Err(IdealError::BadInput(format!(
                        "illegal character '{ch}' in generator \"{word}\""
                    )));
                }
                vars.insert(ch as VarId - 'a' as VarId);
            }
            gens.push(Monomial(vars));
        }
        Ok(MonomialIdeal::new(gens))
    }

    /// Render back to the comma-separated word format. Only possible while
    /// every variable has a single-letter name (fewer than 27 variables).
    pub fn render_text(&self) -> Result<String, IdealError> {
        if self.num_vars > 26 {
            return Err(IdealError::BadInput(
                "too many variables for single-letter rendering".into(),
            ));
        }
        let words: Vec<String> = self
            .gens
            .iter()
            .map(|m| m.vars().map(var_name).collect::<String>())
            .collect();
        Ok(words.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    gens: Vec<Vec<String>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        IdealRepr {
            gens: self
                .gens
                .iter()
                .map(|m| m.vars().map(var_name).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = IdealRepr::deserialize(deserializer)?;
        let mut gens = Vec::new();
        for words in repr.gens {
            if words.is_empty() {
                return Err(serde::de::Error::custom("empty generator"));
            }
            let mut vars = BTreeSet::new();
            for w in words {
                vars.insert(parse_var_name(&w).map_err(serde::de::Error::custom)?);
            }
            gens.push(Monomial(vars));
        }
        Ok(MonomialIdeal::new(gens))
    }
}

/// Bijective base-26 variable names: 0..25 → a..z, 26 → aa, 27 → ab, …
pub fn var_name(id: VarId) -> String {
    let mut n = id as u64 + 1;
    let mut out = Vec::new();
    while n > 0 {
        n -= 1;
        out.push(b'a' + (n % 26) as u8);
        n /= 26;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

pub fn parse_var_name(name: &str) -> Result<VarId, IdealError> {
    if name.is_empty() || !name.bytes().all(|b| b.is_ascii_lowercase()) {
        return Err(IdealError::BadInput(format!("bad variable name \"{name}\"")));
    }
    let mut n: u64 = 0;
    for b in name.bytes() {
        n = n * 26 + (b - b'a') as u64 + 1;
    }
    Ok((n - 1) as VarId)
}

/// One fresh variable per face; generator `m_k` is the product of the
/// variables of the faces containing vertex `k`. The inverse of
/// `MonomialIdeal::hypergraph` up to variable naming.
pub fn canonical_ideal(h: &Hypergraph) -> Result<MonomialIdeal, IdealError> {
    if !h.is_separated() {
        return Err(IdealError::NotSeparated);
    }
    let mut gens: Vec<BTreeSet<VarId>> = vec![BTreeSet::new(); h.mu()];
    for (i, face) in h.faces().enumerate() {
        for &v in face {
            gens[v - 1].insert(i as VarId);
        }
    }
    Ok(MonomialIdeal::new(
        gens.into_iter().map(Monomial).collect(),
    ))
}

/// Like `canonical_ideal` but each face gets 1–3 fresh variables, chosen by
/// a seeded generator. Different seeds give different ideals with the same
/// hypergraph, hence (provably) the same Betti numbers.
pub fn random_ideal(h: &Hypergraph, seed: u64) -> Result<MonomialIdeal, IdealError> {
    if !h.is_separated() {
        return Err(IdealError::NotSeparated);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<BTreeSet<VarId>> = vec![BTreeSet::new(); h.mu()];
    let mut next_var: VarId = 0;
    for face in h.faces() {
        let bundle = rng.gen_range(1..=3);
        for _ in 0..bundle {
            for &v in face {
                gens[v - 1].insert(next_var);
            }
            next_var += 1;
        }
    }
    Ok(MonomialIdeal::new(
        gens.into_iter().map(Monomial).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Shape;

    fn ideal(text: &str) -> MonomialIdeal {
        MonomialIdeal::parse_text(text).unwrap()
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal("ab,abc").minimalize(), ideal("ab"));
        assert_eq!(ideal("ab,bc").minimalize(), ideal("ab,bc"));
        assert_eq!(ideal("a,ab,abc").minimalize(), ideal("a"));
        assert!(ideal("ab,bc").is_minimal());
        assert!(!ideal("ab,abc").is_minimal());
        assert!(!ideal("ab,ab").is_minimal());
    }

    #[test]
    fn hypergraph_of_five_gen_ideal() {
        // (ab, bc, cde, ef, fg): alternating closed/open string on 5
        // vertices, closed at 1, 3, 5.
        let h = ideal("ab,bc,cde,ef,fg").hypergraph().unwrap();
        assert_eq!(h, Hypergraph::parse_pattern("cococ").unwrap());
    }

    #[test]
    fn hypergraph_merges_duplicate_faces() {
        // Variables a..e of abcde all give face {1}; d, e give {1,2}; f gives {2}.
        let h = ideal("abcde,def").hypergraph().unwrap();
        assert_eq!(
            h,
            Hypergraph::new(2, [vec![1], vec![1, 2], vec![2]]).unwrap()
        );
        assert_eq!(h, ideal("ab,bc").hypergraph().unwrap());
    }

    #[test]
    fn hypergraph_rejects_non_minimal() {
        assert_eq!(
            ideal("ab,abc").hypergraph(),
            Err(IdealError::NonMinimalGenerators)
        );
    }

    #[test]
    fn canonical_round_trip() {
        for p in ["cococ", "ccoococ", "cycle:cocooc", "c", "ccc"] {
            let h = Hypergraph::parse_pattern(p).unwrap();
            let i = canonical_ideal(&h).unwrap();
            assert_eq!(i.hypergraph().unwrap(), h, "round trip failed for {p}");
        }
        let empty = Hypergraph::empty();
        assert_eq!(canonical_ideal(&empty).unwrap(), MonomialIdeal::zero());
    }

    #[test]
    fn canonical_rejects_non_separated() {
        let h = Hypergraph::new(2, [vec![1, 2]]).unwrap();
        assert_eq!(canonical_ideal(&h), Err(IdealError::NotSeparated));
    }

    #[test]
    fn random_ideal_round_trip_and_variation() {
        let h = Hypergraph::parse_pattern("cococ").unwrap();
        let i1 = random_ideal(&h, 1).unwrap();
        let i2 = random_ideal(&h, 2).unwrap();
        assert_eq!(i1.hypergraph().unwrap(), h);
        assert_eq!(i2.hypergraph().unwrap(), h);
        assert_ne!(i1, i2);
        // Determinism per seed.
        assert_eq!(random_ideal(&h, 1).unwrap(), i1);
    }

    #[test]
    fn colon_basics() {
        assert_eq!(ideal("ab,bc").colon_by_generator(1).unwrap(), ideal("c"));
        assert_eq!(ideal("ab").colon_by_generator(1), Err(IdealError::SingleGenerator));
        assert_eq!(
            ideal("ab,bc").colon_by_generator(3),
            Err(IdealError::GeneratorIndexOutOfRange(3, 2))
        );
    }

    #[test]
    fn colon_splits_off_closed_vertex() {
        // Colon by the first generator of the c-o-c-o-c string's ideal:
        // an isolated closed vertex plus the 2-vertex saturated string.
        let i = canonical_ideal(&Hypergraph::parse_pattern("cococ").unwrap()).unwrap();
        let q1 = i.colon_by_generator(1).unwrap().hypergraph().unwrap();
        assert_eq!(q1.mu(), 3);
        match q1.classify_shape().unwrap() {
            Shape::DisjointStrings { components } => {
                let mut sizes: Vec<usize> =
                    components.iter().map(|c| c.len()).collect();
                sizes.sort();
                assert_eq!(sizes, vec![1, 2]);
            }
            other => panic!("expected disjoint strings, got {other:?}"),
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        let i = ideal("ab,bc,cde,ef,fg");
        assert_eq!(i.render_text().unwrap(), "ab,bc,cde,ef,fg");
        let json = serde_json::to_string(&i).unwrap();
        assert!(json.contains("\"gens\""));
        let back: MonomialIdeal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, i);
        let from_json: MonomialIdeal =
            serde_json::from_str(r#"{"gens":[["a","b"],["b","c"]]}"#).unwrap();
        assert_eq!(from_json, ideal("ab,bc"));
    }

    #[test]
    fn variable_names() {
        assert_eq!(var_name(0), "a");
        assert_eq!(var_name(25), "z");
        assert_eq!(var_name(26), "aa");
        assert_eq!(var_name(27), "ab");
        for id in 0..200 {
            assert_eq!(parse_var_name(&var_name(id)).unwrap(), id);
        }
        assert!(parse_var_name("A").is_err());
        assert!(parse_var_name("").is_err());
    }
}
