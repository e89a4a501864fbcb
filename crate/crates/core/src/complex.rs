//! Faces, simplicial complexes and labeled complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;
use crate::state::CollapseState;
use crate::Result;

pub type VertexId = u32;

/// A non-empty, strictly increasing list of vertex ids.
///
/// The derived order is lexicographic on the vertex list, which is the order
/// used for every deterministic choice in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Face(Vec<VertexId>);

impl Face {
    pub fn new(vertices: Vec<VertexId>) -> Result<Face> {
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedFace(vertices));
        }
        Ok(Face(vertices))
    }

    /// Sorts the input; rejects duplicates and the empty list.
    pub fn from_unsorted(mut vertices: Vec<VertexId>) -> Result<Face> {
        vertices.sort_unstable();
        Face::new(vertices)
    }

    /// Convenience constructor for literals in code and tests. Panics on
    /// duplicate vertices or an empty slice.
    pub fn of(vertices: &[VertexId]) -> Face {
        Face::from_unsorted(vertices.to_vec()).expect("invalid face literal")
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexId>) -> Face {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertex(v: VertexId) -> Face {
        Face(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Codimension-one faces, in lexicographic order. Empty for a vertex.
    pub fn facets(&self) -> Vec<Face> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        let mut out: Vec<Face> = (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Face(v)
            })
            .collect();
        out.sort();
        out
    }

    /// Every non-empty subset, including the face itself.
    pub fn subfaces(&self) -> Vec<Face> {
        let n = self.0.len();
        assert!(n < 31, "face too large");
        let mut out: Vec<Face> = (1u32..(1 << n))
            .map(|mask| {
                Face(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect();
        out.sort();
        out
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v: Vec<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    /// Vertices of `self` not in `other`.
    pub fn minus(&self, other: &Face) -> Vec<VertexId> {
        self.0
            .iter()
            .copied()
            .filter(|v| !other.contains_vertex(*v))
            .collect()
    }

    pub fn map(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Face> {
        Face::from_unsorted(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A finite downward-closed set of faces. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SimplicialComplex {
    faces: BTreeSet<Face>,
    maximal: BTreeSet<Face>,
}

/// Closure of a list of faces under taking non-empty subsets.
pub fn close_downward(maximal_faces: &[Face]) -> SimplicialComplex {
    SimplicialComplex::from_generators(maximal_faces.iter())
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_generators<'a>(gens: impl IntoIterator<Item = &'a Face>) -> Self {
        let mut faces = BTreeSet::new();
        for g in gens {
            if faces.contains(g) {
                continue;
            }
            faces.extend(g.subfaces());
        }
        Self::from_closed(faces)
    }

    /// Parses raw vertex lists (unsorted allowed) and closes them.
    pub fn from_vertex_lists(lists: &[Vec<VertexId>]) -> Result<Self> {
        let faces = lists
            .iter()
            .map(|l| Face::from_unsorted(l.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(close_downward(&faces))
    }

    /// Accepts an already closed face set; errors with the first missing facet.
    pub fn from_faces(faces: BTreeSet<Face>) -> Result<Self> {
        for f in &faces {
            for g in f.facets() {
                if !faces.contains(&g) {
                    return Err(Error::MissingFace(g));
                }
            }
        }
        Ok(Self::from_closed(faces))
    }

    pub(crate) fn from_closed(faces: BTreeSet<Face>) -> Self {
        let mut covered = BTreeSet::new();
        for f in &faces {
            covered.extend(f.facets());
        }
        let maximal = faces.difference(&covered).cloned().collect();
        SimplicialComplex { faces, maximal }
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn maximal_faces(&self) -> &BTreeSet<Face> {
        &self.maximal
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.maximal.iter().map(Face::dim).max()
    }

    pub fn is_single_vertex(&self) -> bool {
        self.faces.len() == 1
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.faces
            .iter()
            .filter(|f| f.len() == 1)
            .map(|f| f.vertices()[0])
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for face in &self.faces {
            f[face.dim()] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn dim_faces(&self, k: usize) -> Vec<Face> {
        self.faces.iter().filter(|f| f.dim() == k).cloned().collect()
    }

    pub fn star(&self, sigma: &Face) -> BTreeSet<Face> {
        self.faces
            .iter()
            .filter(|f| sigma.is_subface_of(f))
            .cloned()
            .collect()
    }

    /// Every free face paired with its unique maximal coface, sorted by σ.
    pub fn free_faces(&self) -> Vec<(Face, Face)> {
        CollapseState::new(self).free_pairs()
    }

    pub fn elementary_collapse(&self, sigma: &Face) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::MissingFace(sigma.clone()));
        }
        let mut st = CollapseState::new(self);
        let id = st.id(sigma).expect("face present");
        if st.free_partner(id).is_none() {
            return Err(Error::NotFree(sigma.clone()));
        }
        st.collapse(id);
        Ok(st.to_complex())
    }

    /// True iff `edges` is a non-empty list of edges of the complex whose
    /// consecutive members share a vertex and which visits no vertex twice.
    pub fn is_path(&self, edges: &[Face]) -> bool {
        path_vertices(edges).is_some() && edges.iter().all(|e| self.contains(e))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.faces.is_subset(&other.faces)
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let faces = self.faces.union(&other.faces).cloned().collect();
        Self::from_closed(faces)
    }

    /// Faces of `self` that are not in `other` (a set, generally not closed).
    pub fn difference(&self, other: &SimplicialComplex) -> BTreeSet<Face> {
        self.faces.difference(&other.faces).cloned().collect()
    }

    /// Renames vertices; the map must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<SimplicialComplex> {
        let faces = self
            .faces
            .iter()
            .map(|x| x.map(&f))
            .collect::<Result<BTreeSet<_>>>()?;
        if faces.len() != self.faces.len() {
            return Err(Error::Other("relabel map is not injective".into()));
        }
        Ok(Self::from_closed(faces))
    }

    /// The subcomplex generated by the faces of `self` that satisfy `keep`
    /// together with their subfaces.
    pub fn restrict(&self, keep: impl Fn(&Face) -> bool) -> SimplicialComplex {
        SimplicialComplex::from_generators(self.faces.iter().filter(|f| keep(f)))
    }
}

/// Ordered vertex sequence of a simple path given by its edges, if it is one.
pub fn path_vertices(edges: &[Face]) -> Option<Vec<VertexId>> {
    if edges.is_empty() || edges.iter().any(|e| e.len() != 2) {
        return None;
    }
    let first = edges[0].vertices();
    let start = if edges.len() == 1 {
        first[0]
    } else {
        let next = &edges[1];
        match (next.contains_vertex(first[0]), next.contains_vertex(first[1])) {
            (false, true) => first[0],
            (true, false) => first[1],
            _ => return None,
        }
    };
    let mut seq = vec![start];
    let mut cur = start;
    for e in edges {
        let v = e.vertices();
        cur = if v[0] == cur {
            v[1]
        } else if v[1] == cur {
            v[0]
        } else {
            return None;
        };
        seq.push(cur);
    }
    let distinct: BTreeSet<_> = seq.iter().collect();
    (distinct.len() == seq.len()).then_some(seq)
}

/// Edge list of the path through the given vertices.
pub fn path_edges(vertices: &[VertexId]) -> Vec<Face> {
    vertices.windows(2).map(Face::of).collect()
}

/// A complex with named distinguished faces and paths.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LabeledComplex {
    pub complex: SimplicialComplex,
    pub face_labels: BTreeMap<String, Face>,
    pub path_labels: BTreeMap<String, Vec<Face>>,
}

impl LabeledComplex {
    pub fn new(complex: SimplicialComplex) -> Self {
        LabeledComplex { complex, ..Default::default() }
    }

    pub fn label_face(&mut self, name: &str, face: Face) -> Result<()> {
        if !self.complex.contains(&face) {
            return Err(Error::BadLabel(name.into(), format!("face {face} not in complex")));
        }
        self.face_labels.insert(name.to_string(), face);
        Ok(())
    }

    pub fn label_path(&mut self, name: &str, edges: Vec<Face>) -> Result<()> {
        if !self.complex.is_path(&edges) {
            return Err(Error::BadLabel(name.into(), "not a simple path in the complex".into()));
        }
        self.path_labels.insert(name.to_string(), edges);
        Ok(())
    }

    pub fn face(&self, name: &str) -> Option<&Face> {
        self.face_labels.get(name)
    }

    pub fn path(&self, name: &str) -> Option<&[Face]> {
        self.path_labels.get(name).map(Vec::as_slice)
    }

    /// Checks that all labels still refer to faces and paths of the complex.
    pub fn validate(&self) -> Result<()> {
        for (name, f) in &self.face_labels {
            if !self.complex.contains(f) {
                return Err(Error::BadLabel(name.clone(), format!("face {f} not in complex")));
            }
        }
        for (name, p) in &self.path_labels {
            if !self.complex.is_path(p) {
                return Err(Error::BadLabel(name.clone(), "not a simple path in the complex".into()));
            }
        }
        Ok(())
    }

    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<LabeledComplex> {
        let complex = self.complex.relabel(&f)?;
        let face_labels = self
            .face_labels
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.map(&f)?)))
            .collect::<Result<_>>()?;
        let path_labels = self
            .path_labels
            .iter()
            .map(|(k, es)| Ok((k.clone(), es.iter().map(|e| e.map(&f)).collect::<Result<_>>()?)))
            .collect::<Result<_>>()?;
        Ok(LabeledComplex { complex, face_labels, path_labels })
    }
}
