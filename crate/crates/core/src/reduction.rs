//! The reduction from 3-SAT: K(Φ) is glued from the gadgets by label, and a
//! satisfying assignment yields a scripted collapse of K(Φ) to v_and.
//!
//! Gluing works purely on names. Every labelled vertex, path and edge that
//! occurs in several gadgets is identified across them: vertices directly,
//! paths vertex by vertex in order, single edges once one endpoint is already
//! identified. The disks are added afterwards as cones over the cycles
//! b(ℓ) ∪ p(ℓ) ∪ a(x).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use crate::cnf::{sat_bruteforce, Assignment, CnfFormula, Literal};
use crate::collapse::{collapse_onto, constraint_complex, lift_collapse, CollapseCertificate, CollapseStep};
use crate::complex::{close_downward, path_vertices, Face, LabeledComplex, SimplicialComplex, VertexId};
use crate::error::Error;
use crate::gadgets::{
    bl_gadget, clause_gadget, conjunction_gadget, disk_faces, literal_gadget, GadgetInstance, ScriptedCertificate,
};
use crate::homology::{homology, HomologyProfile};
use crate::morse::{certificate_to_matching, greedy_acyclic_matching, is_acyclic};
use crate::search::{search_prefixes, PrefixReport, PrefixSearchConfig, PrefixView};
use crate::Result;

/// Faces of K(Φ) per variable plus clause; a regression bound, not a
/// theoretical constant.
pub const SIZE_CONSTANT: usize = 6000;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GadgetId {
    /// K(x, ~x).
    Literal(u32),
    Conjunction,
    Clause(usize),
    /// B(x), B(~x) and the two disks D(x), D(~x).
    Disk(u32),
}

impl fmt::Display for GadgetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetId::Literal(v) => write!(f, "literal x{v}"),
            GadgetId::Conjunction => write!(f, "conjunction"),
            GadgetId::Clause(j) => write!(f, "clause c{}", j + 1),
            GadgetId::Disk(v) => write!(f, "disk x{v}"),
        }
    }
}

/// One glued piece and where its vertices went.
#[derive(Clone, Debug)]
pub struct GadgetPiece {
    pub name: String,
    /// Local vertex → vertex of K(Φ).
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub image: SimplicialComplex,
    /// Names of the labels the piece carries.
    pub labels: BTreeSet<String>,
    instance: Option<GadgetInstance>,
}

impl GadgetPiece {
    fn map_face(&self, f: &Face) -> Result<Face> {
        f.map(|v| self.vertex_map[&v])
    }

    fn map_complex(&self, k: &SimplicialComplex) -> Result<SimplicialComplex> {
        k.relabel(|v| self.vertex_map[&v])
    }

    fn certificate(&self, name: &str) -> Result<&ScriptedCertificate> {
        self.instance
            .as_ref()
            .and_then(|g| g.certificate(name))
            .ok_or_else(|| Error::Contract(format!("{} has no certificate {name}", self.name)))
    }
}

#[derive(Clone, Debug)]
pub struct ReductionComplex {
    pub formula: CnfFormula,
    /// K(Φ) with the union of all gadget labels.
    pub labeled: LabeledComplex,
    pub gadget_index: BTreeMap<GadgetId, Vec<GadgetPiece>>,
    /// Piece images and named sub-regions such as X(ℓ) and A.
    pub regions: BTreeMap<String, SimplicialComplex>,
    /// Vertices of K(Φ) that came from more than one piece, with their sources.
    pub identifications: BTreeMap<VertexId, Vec<(String, VertexId)>>,
    pub warnings: Vec<String>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// True if the classes were different.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
        ra != rb
    }
}

enum Occurrence {
    Face(usize, Face),
    Path(usize, Vec<VertexId>),
}

fn lit_vars(l: Literal) -> String {
    format!("x{}", l.var)
}

pub fn build_reduction(phi: &CnfFormula) -> Result<ReductionComplex> {
    let n = phi.variable_count;
    let mut warnings = Vec::new();
    for v in phi.unused_variables() {
        warnings.push(format!("variable x{v} occurs in no clause"));
    }
    let mut built: Vec<(GadgetId, String, GadgetInstance)> = Vec::new();
    for var in 1..=n {
        built.push((GadgetId::Literal(var), format!("K(x{var},~x{var})"), literal_gadget(var)?));
    }
    built.push((GadgetId::Conjunction, "K_and".into(), conjunction_gadget(n)?));
    for (j, c) in phi.clauses.iter().enumerate() {
        built.push((GadgetId::Clause(j), format!("K(c{})", j + 1), clause_gadget(j, *c)?));
    }
    for var in 1..=n {
        for l in [Literal::pos(var), Literal::neg(var)] {
            let occ: Vec<usize> = (0..phi.clauses.len()).filter(|&j| phi.clauses[j].contains(&l)).collect();
            built.push((GadgetId::Disk(var), format!("B({l})"), bl_gadget(l, &occ)?));
        }
    }

    // slots: (piece, local vertex) → index
    let mut slot: Vec<BTreeMap<VertexId, usize>> = Vec::new();
    let mut owner: Vec<(usize, VertexId)> = Vec::new();
    for (i, (_, _, g)) in built.iter().enumerate() {
        let mut m = BTreeMap::new();
        for v in g.complex().vertices() {
            m.insert(v, owner.len());
            owner.push((i, v));
        }
        slot.push(m);
    }
    let mut uf = UnionFind((0..owner.len()).collect());

    let mut occurrences: BTreeMap<&str, Vec<Occurrence>> = BTreeMap::new();
    for (i, (_, _, g)) in built.iter().enumerate() {
        for (name, f) in &g.labeled.face_labels {
            occurrences.entry(name).or_default().push(Occurrence::Face(i, f.clone()));
        }
        for (name, p) in &g.labeled.path_labels {
            let vs = path_vertices(p).ok_or_else(|| Error::BadLabel(name.clone(), "not a path".into()))?;
            occurrences.entry(name).or_default().push(Occurrence::Path(i, vs));
        }
    }
    let mut edges: Vec<(&str, Vec<(usize, usize)>)> = Vec::new();
    for (name, occ) in &occurrences {
        if occ.len() < 2 {
            continue;
        }
        let mut ends = Vec::new();
        let mut first_path: Option<(usize, &Vec<VertexId>)> = None;
        for o in occ {
            match o {
                Occurrence::Path(i, vs) => match first_path {
                    None => first_path = Some((*i, vs)),
                    Some((i0, v0)) => {
                        if v0.len() != vs.len() {
                            return Err(Error::Contract(format!("path {name} has different lengths")));
                        }
                        for (a, b) in v0.iter().zip(vs) {
                            uf.union(slot[i0][a], slot[*i][b]);
                        }
                    }
                },
                Occurrence::Face(i, f) => match f.vertices() {
                    [v] => ends.push((slot[*i][v], slot[*i][v])),
                    [a, b] => ends.push((slot[*i][a], slot[*i][b])),
                    _ => return Err(Error::Contract(format!("label {name} of dimension ≥ 2 is shared"))),
                },
            }
        }
        if let Some(&(a0, b0)) = ends.first() {
            if a0 == b0 {
                for &(a, _) in &ends[1..] {
                    uf.union(a0, a);
                }
            } else {
                edges.push((name, ends));
            }
        }
    }
    // shared single edges: fix one endpoint, then the other follows
    loop {
        let mut changed = false;
        let mut open = Vec::new();
        for (name, ends) in &edges {
            let (a0, b0) = ends[0];
            for &(a, b) in &ends[1..] {
                let (fa, fb, fa0, fb0) = (uf.find(a), uf.find(b), uf.find(a0), uf.find(b0));
                if (fa == fa0 && fb == fb0) || (fa == fb0 && fb == fa0) {
                    continue;
                }
                changed |= if fa == fa0 {
                    uf.union(b, b0)
                } else if fa == fb0 {
                    uf.union(b, a0)
                } else if fb == fa0 {
                    uf.union(a, b0)
                } else if fb == fb0 {
                    uf.union(a, a0)
                } else {
                    open.push(*name);
                    false
                };
            }
        }
        if !changed {
            if let Some(name) = open.first() {
                return Err(Error::Contract(format!("edge label {name} cannot be placed")));
            }
            break;
        }
    }

    // compact ids in order of first appearance
    let mut global: HashMap<usize, VertexId> = HashMap::new();
    let mut sources: BTreeMap<VertexId, Vec<(String, VertexId)>> = BTreeMap::new();
    let mut pieces_raw = Vec::new();
    for (i, (id, name, g)) in built.into_iter().enumerate() {
        let mut vertex_map = BTreeMap::new();
        for (&v, &s) in &slot[i] {
            let root = uf.find(s);
            let next = global.len() as VertexId;
            let gv = *global.entry(root).or_insert(next);
            vertex_map.insert(v, gv);
            sources.entry(gv).or_default().push((name.clone(), v));
        }
        let distinct: BTreeSet<_> = vertex_map.values().collect();
        if distinct.len() != vertex_map.len() {
            return Err(Error::Contract(format!("gluing identifies two vertices of {name}")));
        }
        let labels = g.labeled.face_labels.keys().chain(g.labeled.path_labels.keys()).cloned().collect();
        let mut piece = GadgetPiece { name, vertex_map, image: SimplicialComplex::empty(), labels, instance: None };
        piece.image = piece.map_complex(g.complex())?;
        piece.instance = Some(g);
        pieces_raw.push((id, piece));
    }
    let identifications = sources.into_iter().filter(|(_, s)| s.len() > 1).collect();

    // labels of K(Φ)
    let mut face_labels: BTreeMap<String, Face> = BTreeMap::new();
    let mut path_labels: BTreeMap<String, Vec<Face>> = BTreeMap::new();
    for (_, p) in &pieces_raw {
        let g = p.instance.as_ref().unwrap();
        for (name, f) in &g.labeled.face_labels {
            let gf = p.map_face(f)?;
            if face_labels.insert(name.clone(), gf.clone()).is_some_and(|old| old != gf) {
                return Err(Error::Contract(format!("label {name} lands on different faces")));
            }
        }
        for (name, es) in &g.labeled.path_labels {
            let ge = es.iter().map(|e| p.map_face(e)).collect::<Result<Vec<_>>>()?;
            if path_labels.insert(name.clone(), ge.clone()).is_some_and(|old| old != ge) {
                return Err(Error::Contract(format!("path {name} lands on different edges")));
            }
        }
    }

    // disks
    let v_and = vertex_of(&face_labels, "v_and")?;
    let mut next = global.len() as VertexId;
    for var in 1..=n {
        for l in [Literal::pos(var), Literal::neg(var)] {
            let p = &path_labels[&format!("p({l})")];
            let mut cycle = vec![v_and];
            cycle.extend(path_vertices(p).expect("labelled path"));
            let center = next;
            next += 1;
            let image = close_downward(&disk_faces(center, &cycle));
            let vertex_map = image.vertices().into_iter().map(|v| (v, v)).collect();
            let x = lit_vars(l);
            let labels = ["v_and".to_string(), format!("w({l})"), format!("b({l})"), format!("p({l})"), format!("u({x})"), format!("a({x})")]
                .into_iter()
                .collect();
            face_labels.insert(format!("D({l})"), Face::vertex(center));
            pieces_raw.push((GadgetId::Disk(var), GadgetPiece { name: format!("D({l})"), vertex_map, image, labels, instance: None }));
        }
    }

    let complex = pieces_raw.iter().fold(SimplicialComplex::empty(), |k, (_, p)| k.union(&p.image));
    let labeled = LabeledComplex { complex, face_labels, path_labels };
    labeled.validate()?;
    audit(&labeled, &pieces_raw)?;

    let mut regions = BTreeMap::new();
    for (_, p) in &pieces_raw {
        regions.insert(p.name.clone(), p.image.clone());
        if let Some(g) = &p.instance {
            for (name, r) in &g.regions {
                regions.insert(name.clone(), p.map_complex(r)?);
            }
        }
    }
    let mut gadget_index: BTreeMap<GadgetId, Vec<GadgetPiece>> = BTreeMap::new();
    for (id, p) in pieces_raw {
        gadget_index.entry(id).or_default().push(p);
    }
    let rc = ReductionComplex { formula: phi.clone(), labeled, gadget_index, regions, identifications, warnings };
    if rc.complex().dim() != Some(3) {
        return Err(Error::Contract("K(Φ) is not three-dimensional".into()));
    }
    check_reduction_structure(&rc.labeled, phi)?;
    Ok(rc)
}

fn vertex_of(labels: &BTreeMap<String, Face>, name: &str) -> Result<VertexId> {
    match labels.get(name).map(Face::vertices) {
        Some([v]) => Ok(*v),
        _ => Err(Error::BadLabel(name.into(), "missing vertex label".into())),
    }
}

/// Every face lying in two pieces must lie in the closure of labels the two
/// pieces share.
fn audit(k: &LabeledComplex, pieces: &[(GadgetId, GadgetPiece)]) -> Result<()> {
    let mut owners: HashMap<&Face, Vec<usize>> = HashMap::new();
    for (i, (_, p)) in pieces.iter().enumerate() {
        for f in p.image.faces() {
            owners.entry(f).or_default().push(i);
        }
    }
    let mut shared: HashMap<(usize, usize), SimplicialComplex> = HashMap::new();
    for (f, own) in owners {
        for a in 0..own.len() {
            for b in a + 1..own.len() {
                let (i, j) = (own[a], own[b]);
                let s = shared.entry((i, j)).or_insert_with(|| {
                    let mut gens = Vec::new();
                    for name in pieces[i].1.labels.intersection(&pieces[j].1.labels) {
                        gens.extend(k.face(name).cloned());
                        gens.extend(k.path(name).into_iter().flatten().cloned());
                    }
                    close_downward(&gens)
                });
                if !s.contains(f) {
                    return Err(Error::Contract(format!(
                        "{} and {} share {f} outside their common labels",
                        pieces[i].1.name, pieces[j].1.name
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Required labels of K(Φ): present, and the complex is three-dimensional.
/// Rejects complexes that are not reduction output.
pub fn check_reduction_structure(k: &LabeledComplex, phi: &CnfFormula) -> Result<()> {
    if k.complex.dim() != Some(3) {
        return Err(Error::Contract("not a reduction complex: dimension is not 3".into()));
    }
    let mut faces = vec!["v_and".to_string(), "e_and".to_string()];
    let mut paths = Vec::new();
    for var in 1..=phi.variable_count {
        faces.push(format!("u(x{var})"));
        faces.push(format!("a(x{var})"));
        for l in [Literal::pos(var), Literal::neg(var)] {
            faces.extend([format!("e({l})"), format!("f({l})"), format!("b({l})"), format!("D({l})")]);
            paths.push(format!("p({l})"));
        }
    }
    for (j, c) in phi.clauses.iter().enumerate() {
        for l in c {
            faces.push(format!("({l},c{})", j + 1));
            paths.push(format!("p({l},c{})", j + 1));
        }
    }
    for f in &faces {
        if k.face(f).is_none() {
            return Err(Error::BadLabel(f.clone(), "not a reduction complex: label missing".into()));
        }
    }
    for p in &paths {
        if k.path(p).is_none() {
            return Err(Error::BadLabel(p.clone(), "not a reduction complex: path missing".into()));
        }
    }
    k.validate()
}

/// One stage of the scripted collapse.
#[derive(Clone, Debug)]
pub struct ScriptStage {
    pub name: String,
    /// Step of the satisfiable-side argument, 1 to 6.
    pub step: u8,
    /// Γ(M, L) at the moment the stage was lifted.
    pub gamma: SimplicialComplex,
    pub steps: Range<usize>,
}

#[derive(Clone, Debug)]
pub struct ScriptedRun {
    pub certificate: CollapseCertificate,
    pub stages: Vec<ScriptStage>,
}

impl ScriptedRun {
    /// Steps up to and including the last stage of `step`.
    pub fn prefix_through(&self, step: u8) -> &[CollapseStep] {
        let end = self.stages.iter().filter(|s| s.step <= step).map(|s| s.steps.end).max().unwrap_or(0);
        &self.certificate.steps[..end]
    }
}

struct Runner {
    cur: SimplicialComplex,
    steps: Vec<CollapseStep>,
    stages: Vec<ScriptStage>,
}

impl Runner {
    /// Lifts a collapse of `l` (the current piece) to the whole complex.
    fn lift(&mut self, step: u8, name: &str, l: &SimplicialComplex, cert: &CollapseCertificate) -> Result<()> {
        let fail = |e: Error| Error::Contract(format!("step {step}, {name}: {e}"));
        let gamma = constraint_complex(&self.cur, l).map_err(fail)?.gamma;
        let lifted = lift_collapse(&self.cur, l, cert).map_err(fail)?;
        let start = self.steps.len();
        self.steps.extend(lifted.steps);
        self.cur = lifted.target;
        self.stages.push(ScriptStage { name: name.into(), step, gamma, steps: start..self.steps.len() });
        Ok(())
    }

    /// Lifts a gadget's own certificate; the piece must be in the state the
    /// certificate starts from.
    fn lift_piece(&mut self, step: u8, piece: &GadgetPiece, cert_name: &str) -> Result<()> {
        let sc = piece.certificate(cert_name)?;
        let start = piece.map_complex(&sc.start)?;
        let l = self.cur.restrict(|f| piece.image.contains(f));
        if l != start {
            return Err(Error::Contract(format!("step {step}, {cert_name}: {} is not in the expected state", piece.name)));
        }
        let steps = sc
            .certificate
            .steps
            .iter()
            .map(|s| Ok(CollapseStep::new(piece.map_face(&s.sigma)?, piece.map_face(&s.tau)?)))
            .collect::<Result<Vec<_>>>()?;
        let cert = CollapseCertificate { steps, target: piece.map_complex(&sc.certificate.target)? };
        self.lift(step, &format!("{} {cert_name}", piece.name), &l, &cert)
    }

    /// Collapses the current part of `region` onto `target` and lifts it.
    fn lift_directed(&mut self, step: u8, name: &str, region: &SimplicialComplex, drop: &[Face]) -> Result<()> {
        let l = self.cur.restrict(|f| region.contains(f));
        let target = l.restrict(|f| !drop.iter().any(|d| d.is_subface_of(f)));
        let cert = collapse_onto(&l, &target, None);
        if cert.target != target {
            return Err(Error::Contract(format!("step {step}, {name}: directed collapse stopped early")));
        }
        self.lift(step, name, &l, &cert)
    }
}

impl ReductionComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.labeled.complex
    }

    pub fn piece(&self, name: &str) -> Result<&GadgetPiece> {
        self.gadget_index
            .values()
            .flatten()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::Contract(format!("no piece {name}")))
    }

    pub fn region(&self, name: &str) -> Result<&SimplicialComplex> {
        self.regions.get(name).ok_or_else(|| Error::BadLabel(name.into(), "no such region".into()))
    }

    pub fn face(&self, name: &str) -> Result<&Face> {
        self.labeled.face(name).ok_or_else(|| Error::BadLabel(name.into(), "no such label".into()))
    }

    pub fn v_and(&self) -> VertexId {
        self.face("v_and").expect("checked on build").vertices()[0]
    }

    /// Faces of K(Φ) per variable plus clause.
    pub fn size_ratio(&self) -> f64 {
        self.complex().len() as f64 / (self.formula.variable_count as usize + self.formula.clauses.len()) as f64
    }

    pub fn scripted_run(&self, a: &Assignment) -> Result<ScriptedRun> {
        let phi = &self.formula;
        if a.len() != phi.variable_count as usize {
            return Err(Error::Formula(format!("assignment has {} values for {} variables", a.len(), phi.variable_count)));
        }
        if !phi.is_satisfied_by(a) {
            return Err(Error::Unsatisfied);
        }
        let n = phi.variable_count;
        let truth = |var: u32| {
            let (p, q) = (Literal::pos(var), Literal::neg(var));
            if a.value(var) { (p, q) } else { (q, p) }
        };
        let mut r = Runner { cur: self.complex().clone(), steps: Vec::new(), stages: Vec::new() };
        for var in 1..=n {
            let (t, _) = truth(var);
            r.lift_piece(1, self.piece(&format!("K(x{var},~x{var})"))?, &format!("literal1:{t}"))?;
        }
        for var in 1..=n {
            let (t, _) = truth(var);
            r.lift_piece(2, self.piece(&format!("B({t})"))?, &format!("bl:{t}"))?;
        }
        for (j, c) in phi.clauses.iter().enumerate() {
            let l = c.iter().find(|l| l.eval(a)).expect("satisfied");
            r.lift_piece(3, self.piece(&format!("K(c{})", j + 1))?, &format!("clause:({l},c{})", j + 1))?;
        }
        r.lift_piece(4, self.piece("K_and")?, "and")?;
        for var in 1..=n {
            let (t, f) = truth(var);
            r.lift_piece(5, self.piece(&format!("K(x{var},~x{var})"))?, &format!("literal2:{t}"))?;
            r.lift_piece(5, self.piece(&format!("B({f})"))?, &format!("bl:{f}"))?;
            for l in [t, f] {
                let drop = [self.face(&format!("D({l})"))?.clone(), self.face(&format!("b({l})"))?.clone()];
                r.lift_directed(5, &format!("D({l})"), self.region(&format!("D({l})"))?, &drop)?;
            }
        }
        let point = close_downward(&[Face::vertex(self.v_and())]);
        let all = r.cur.clone();
        let others: Vec<Face> = all.vertices().into_iter().filter(|&v| v != self.v_and()).map(Face::vertex).collect();
        r.lift_directed(6, "paths", &all, &others)?;
        if r.cur != point {
            return Err(Error::Contract("step 6 did not end at v_and".into()));
        }
        let certificate = CollapseCertificate { steps: r.steps, target: r.cur };
        Ok(ScriptedRun { certificate, stages: r.stages })
    }

    /// Full certificate from K(Φ) to v_and for a satisfying assignment.
    pub fn scripted_certificate(&self, a: &Assignment) -> Result<CollapseCertificate> {
        Ok(self.scripted_run(a)?.certificate)
    }

    /// x is TRUE iff some step removed a face containing e(x) before any
    /// triangle of K_and was removed.
    pub fn assignment_from_prefix(&self, prefix: &[CollapseStep]) -> Assignment {
        let n = self.formula.variable_count;
        let kand = &self.piece("K_and").expect("built").image;
        let e: Vec<Face> = (1..=n).map(|v| self.face(&format!("e(x{v})")).expect("built").clone()).collect();
        let mut a = Assignment::all_false(n);
        for s in prefix {
            let removed: Vec<Face> = s.tau.subfaces().into_iter().filter(|f| s.sigma.is_subface_of(f)).collect();
            if removed.iter().any(|f| f.dim() == 2 && kand.contains(f)) {
                break;
            }
            for (i, ev) in e.iter().enumerate() {
                if removed.iter().any(|f| ev.is_subface_of(f)) {
                    a.set(i as u32 + 1, true);
                }
            }
        }
        a
    }
}

pub fn scripted_certificate(phi: &CnfFormula, a: &Assignment) -> Result<CollapseCertificate> {
    build_reduction(phi)?.scripted_certificate(a)
}

pub fn assignment_from_prefix(rc: &ReductionComplex, prefix: &[CollapseStep]) -> Assignment {
    rc.assignment_from_prefix(prefix)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptedOutcome {
    Verified,
    Failed(String),
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Brute force, certificate and search agree.
    Consistent,
    /// The unsatisfiable-side search ran out of budget.
    Inconclusive,
    Inconsistent,
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub satisfying: Option<Assignment>,
    pub scripted: ScriptedOutcome,
    pub morse_critical: usize,
    pub morse_acyclic: bool,
    pub chi: i64,
    pub homology: HomologyProfile,
    pub faces: usize,
    /// Unsatisfiable side only.
    pub search: Option<PrefixReport>,
}

impl ReductionReport {
    pub fn verdict(&self) -> Verdict {
        match (&self.satisfying, &self.search) {
            (Some(_), _) if self.scripted == ScriptedOutcome::Verified && self.morse_critical == 1 => Verdict::Consistent,
            (Some(_), _) => Verdict::Inconsistent,
            (None, Some(s)) if !s.holds() => Verdict::Inconsistent,
            (None, Some(s)) if s.budget_hit => Verdict::Inconclusive,
            (None, _) => Verdict::Consistent,
        }
    }

    /// `SAT=.. SCRIPTED=.. MORSE_CRITICAL=.. CHI=.. HOMOLOGY=..`
    pub fn summary_line(&self) -> String {
        let scripted = match &self.scripted {
            ScriptedOutcome::Verified => "ok",
            ScriptedOutcome::Failed(_) => "fail",
            ScriptedOutcome::NotApplicable => "na",
        };
        let hom = if self.homology.is_point_like() { "point-like".to_string() } else { compact_profile(&self.homology) };
        format!(
            "SAT={} SCRIPTED={scripted} MORSE_CRITICAL={} CHI={} HOMOLOGY={hom}",
            if self.satisfying.is_some() { "yes" } else { "no" },
            self.morse_critical,
            self.chi
        )
    }
}

fn compact_profile(h: &HomologyProfile) -> String {
    h.to_string().lines().collect::<Vec<_>>().join(";").replace(' ', "")
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary_line())?;
        writeln!(f, "FACES={}", self.faces)?;
        if let Some(a) = &self.satisfying {
            writeln!(f, "ASSIGNMENT={a}")?;
        }
        if let ScriptedOutcome::Failed(e) = &self.scripted {
            writeln!(f, "SCRIPTED_ERROR={e}")?;
        }
        if let Some(s) = &self.search {
            writeln!(f, "SEARCH={s}")?;
        }
        let v = match self.verdict() {
            Verdict::Consistent => "consistent",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Inconsistent => "inconsistent",
        };
        writeln!(f, "VERDICT={v}")
    }
}

/// Violation of the unsatisfiable-side chain: e_and is free or gone while no
/// clause edge (ℓ,c) is free or gone together with its e(ℓ).
pub fn and_freed_without_clause(rc: &ReductionComplex) -> impl Fn(&PrefixView) -> bool + '_ {
    let e_and = rc.face("e_and").expect("built").clone();
    let mut pairs = Vec::new();
    for (j, c) in rc.formula.clauses.iter().enumerate() {
        for l in c {
            let ce = rc.face(&format!("({l},c{})", j + 1)).expect("built").clone();
            pairs.push((ce, rc.face(&format!("e({l})")).expect("built").clone()));
        }
    }
    let freed = |v: &PrefixView, f: &Face| !v.contains(f) || v.cofaces(f).len() <= 1;
    move |v| freed(v, &e_and) && !pairs.iter().any(|(ce, e)| freed(v, ce) && freed(v, e))
}

/// Brute force against the reduction: on the satisfiable side the scripted
/// certificate must verify with one critical cell; on the other side a
/// bounded prefix search looks for a way to free e_and without a clause.
pub fn verify_reduction(phi: &CnfFormula, cfg: PrefixSearchConfig) -> Result<ReductionReport> {
    let rc = build_reduction(phi)?;
    verify_built(&rc, cfg)
}

pub fn verify_built(rc: &ReductionComplex, cfg: PrefixSearchConfig) -> Result<ReductionReport> {
    let k = rc.complex();
    let satisfying = sat_bruteforce(&rc.formula)?;
    let h = homology(k);
    let (scripted, matching, search) = match &satisfying {
        Some(a) => match rc.scripted_certificate(a) {
            Ok(cert) => {
                crate::collapse::check_certificate(k, &cert)?;
                let m = certificate_to_matching(k, &cert)?;
                (ScriptedOutcome::Verified, m, None)
            }
            Err(e) => (ScriptedOutcome::Failed(e.to_string()), greedy_acyclic_matching(k), None),
        },
        None => {
            let s = search_prefixes(k, cfg, and_freed_without_clause(rc));
            (ScriptedOutcome::NotApplicable, greedy_acyclic_matching(k), Some(s))
        }
    };
    Ok(ReductionReport {
        satisfying,
        scripted,
        morse_critical: matching.critical.len(),
        morse_acyclic: is_acyclic(&matching)?,
        chi: k.euler_characteristic(),
        homology: h,
        faces: k.len(),
        search,
    })
}
