//! Discrete Morse matchings derived from collapse certificates.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::collapse::{apply_certificate, collapse_onto, CollapseCertificate};
use crate::complex::{Face, SimplicialComplex};
use crate::error::Error;
use crate::Result;

/// Cover relations of the face poset.
#[derive(Clone, Debug)]
pub struct HasseDiagram {
    pub nodes: Vec<Face>,
    /// `(i, j)` with `nodes[i]` a facet of `nodes[j]`.
    pub covers: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn new(k: &SimplicialComplex) -> Self {
        let nodes: Vec<Face> = k.faces().iter().cloned().collect();
        let index: HashMap<&Face, usize> = nodes.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut covers = Vec::new();
        for (j, f) in nodes.iter().enumerate() {
            for g in f.facets() {
                covers.push((index[&g], j));
            }
        }
        HasseDiagram { nodes, covers }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MorseMatching {
    pub pairs: BTreeSet<(Face, Face)>,
    pub critical: BTreeSet<Face>,
}

impl MorseMatching {
    /// Total number of faces covered.
    pub fn face_count(&self) -> usize {
        2 * self.pairs.len() + self.critical.len()
    }
}

/// Pairs every collapsed interval [σ, τ] and leaves the end complex critical.
///
/// Inside a step, with v the smallest vertex of τ ∖ σ, each removed face ϑ
/// without v is paired with ϑ ∪ {v}.
pub fn certificate_to_matching(k: &SimplicialComplex, cert: &CollapseCertificate) -> Result<MorseMatching> {
    let end = apply_certificate(k, cert)?;
    let mut pairs = BTreeSet::new();
    for step in &cert.steps {
        let v = step.tau.minus(&step.sigma)[0];
        for theta in step.tau.subfaces() {
            if step.sigma.is_subface_of(&theta) && !theta.contains_vertex(v) {
                let up = theta.union(&Face::vertex(v));
                pairs.insert((theta, up));
            }
        }
    }
    Ok(MorseMatching { pairs, critical: end.faces().clone() })
}

/// Same as [`certificate_to_matching`] but requires the certificate to end at
/// a single vertex.
pub fn point_certificate_to_matching(k: &SimplicialComplex, cert: &CollapseCertificate) -> Result<MorseMatching> {
    if !cert.target.is_single_vertex() {
        return Err(Error::Other("certificate does not end at a point".into()));
    }
    certificate_to_matching(k, cert)
}

/// Checks that `m` is a matching of cover pairs of `k` whose critical set is
/// the complement of the matched faces.
pub fn validate_matching(k: &SimplicialComplex, m: &MorseMatching) -> Result<()> {
    let mut used = BTreeSet::new();
    for (s, t) in &m.pairs {
        if !k.contains(s) || !k.contains(t) || t.dim() != s.dim() + 1 || !s.is_subface_of(t) {
            return Err(Error::Other(format!("{s} -> {t} is not a cover pair")));
        }
        if !used.insert(s.clone()) || !used.insert(t.clone()) {
            return Err(Error::Other(format!("{s} -> {t} reuses a face")));
        }
    }
    let expect: BTreeSet<Face> = k.faces().difference(&used).cloned().collect();
    if expect != m.critical {
        return Err(Error::Other("critical set is not the set of unmatched faces".into()));
    }
    Ok(())
}

/// True iff the Hasse digraph (edges pointing down, matched covers reversed)
/// has no directed cycle. Errors if the pairs are not a matching.
pub fn is_acyclic(m: &MorseMatching) -> Result<bool> {
    let mut faces: BTreeSet<Face> = m.critical.clone();
    let mut matched = BTreeSet::new();
    for (s, t) in &m.pairs {
        if t.dim() != s.dim() + 1 || !s.is_subface_of(t) {
            return Err(Error::Other(format!("{s} -> {t} is not a cover pair")));
        }
        if !matched.insert(s.clone()) || !matched.insert(t.clone()) {
            return Err(Error::Other(format!("{s} -> {t} reuses a face")));
        }
        faces.insert(s.clone());
        faces.insert(t.clone());
    }
    let k = SimplicialComplex::from_generators(faces.iter());
    let hasse = HasseDiagram::new(&k);
    let pairs: BTreeMap<&Face, &Face> = m.pairs.iter().map(|(s, t)| (s, t)).collect();
    let n = hasse.nodes.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(i, j) in &hasse.covers {
        let (a, b) = if pairs.get(&hasse.nodes[i]) == Some(&&hasse.nodes[j]) { (i, j) } else { (j, i) };
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(x) = queue.pop() {
        seen += 1;
        for &y in &out[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push(y);
            }
        }
    }
    Ok(seen == n)
}

/// Exactly one critical cell, and it is a vertex.
pub fn is_perfect(m: &MorseMatching) -> bool {
    m.critical.len() == 1 && m.critical.iter().all(|f| f.dim() == 0)
}

/// The matching of a greedy collapse: codimension-one moves, higher
/// dimensions first, ties lexicographic, until no move is left. Acyclic by
/// construction; the critical faces are whatever the collapse could not reach.
pub fn greedy_acyclic_matching(k: &SimplicialComplex) -> MorseMatching {
    let cert = collapse_onto(k, &SimplicialComplex::empty(), None);
    certificate_to_matching(k, &cert).expect("a fresh greedy collapse replays")
}
