//! The labelled gadgets consumed by the reduction.
//!
//! Labels shared between gadgets carry the same name in each of them, and
//! shared paths run in the same direction, so the reduction can glue purely
//! by label: `p(ℓ)` runs from `w(ℓ)` to `u(x)`, `p(ℓ,c)` from `v_and` to the
//! clause edge `(ℓ,c)`, and `e(ℓ)` joins `w(ℓ)` to `z(ℓ)`.

use std::collections::BTreeMap;

use super::rooms::three_rooms;
use super::*;
use crate::cnf::Clause;
use crate::grid::{Residue, Triangulation};

fn id_of(g: &GridCellComplex, t: &Triangulation, k: VertexKey) -> VertexId {
    t.id(&g.resolve(&k)).expect("vertex exists")
}

fn open_walls(t: &Triangulation, k: &SimplicialComplex, names: &[String]) -> SimplicialComplex {
    names.iter().fold(k.clone(), |cur, n| t.block(n).expect("wall exists").residue_in(&cur, Residue::OpenFloor))
}

fn base_instance(kind: GadgetKind, t: &Triangulation, complex: SimplicialComplex) -> GadgetInstance {
    GadgetInstance {
        kind,
        labeled: LabeledComplex::new(complex),
        scripted_certificates: Vec::new(),
        vertex_keys: key_map(&t.ids),
        regions: BTreeMap::new(),
        blocks: t.blocks.clone(),
    }
}

fn label_vertex(inst: &mut GadgetInstance, name: &str, v: VertexId) -> Result<()> {
    inst.labeled.label_face(name, Face::vertex(v))
}

fn label_edge(inst: &mut GadgetInstance, name: &str, a: VertexId, b: VertexId) -> Result<()> {
    inst.labeled.label_face(name, edge(a, b))
}

fn label_path(inst: &mut GadgetInstance, name: &str, vs: &[VertexId]) -> Result<()> {
    inst.labeled.label_path(name, path_edges(vs))
}

fn label_complex(inst: &GadgetInstance, faces: &[&str], paths: &[&str]) -> Result<SimplicialComplex> {
    let mut gens = Vec::new();
    for f in faces {
        gens.push(inst.face(f)?.clone());
    }
    for p in paths {
        gens.extend(inst.path(p)?.iter().cloned());
    }
    Ok(close_downward(&gens))
}

/// K(ℓ, ℓ̄): two houses X(ℓ), X(ℓ̄) with thick walls whose upper walls share
/// the axis 89, renamed u(x).
///
/// In X(ℓ): w(ℓ) is vertex 8 of the lower wall, f(ℓ) its axis 89, e(ℓ) the
/// spoke from 8 to 2 in the end face D0, and p(ℓ) runs from w(ℓ) through
/// lower-wall vertex 0 along the middle floor to upper-wall vertex 0 and u.
pub fn literal_gadget(var: u32) -> Result<GadgetInstance> {
    let x = var_name(var);
    let lits = [Literal::pos(var), Literal::neg(var)];
    let mut g = GridCellComplex::new();
    let u = VertexKey::named(&format!("u({x})"));
    let u9 = VertexKey::named(&format!("u9({x})"));
    for l in lits {
        let c = format!("X({l})");
        two_room(&mut g, &c, 6, 3, WallFill::Solid, WallFill::Solid);
        g.identify(VertexKey::named(&format!("{c}.up.8")), u.clone());
        g.identify(VertexKey::named(&format!("{c}.up.9")), u9.clone());
    }
    let t = g.triangulate()?;
    let mut inst = base_instance(GadgetKind::Literal, &t, t.complex.clone());
    for l in lits {
        let c = format!("X({l})");
        let low = t.block(&format!("{c}.low")).unwrap();
        let up = t.block(&format!("{c}.up")).unwrap();
        let mid = [[1, 2, 0], [2, 2, 0], [3, 2, 0], [3, 1, 0]].map(|p| id_of(&g, &t, VertexKey::grid(&c, p)));
        let mut p = vec![low.label(8), low.label(0)];
        p.extend(mid);
        p.extend([up.label(0), up.label(8)]);
        let n = lit_name(l);
        label_path(&mut inst, &format!("p({n})"), &p)?;
        label_edge(&mut inst, &format!("e({n})"), low.label(8), low.label(2))?;
        label_edge(&mut inst, &format!("f({n})"), low.label(8), low.label(9))?;
        label_vertex(&mut inst, &format!("w({n})"), low.label(8))?;
        label_vertex(&mut inst, &format!("z({n})"), low.label(2))?;
        let e = edge(low.label(8), low.label(2));
        let tri = low.part(crate::grid::BlockPart::D0).into_iter().filter(|f| e.is_subface_of(f)).min().unwrap();
        inst.labeled.label_face(&format!("T({n})"), tri)?;
        inst.regions.insert(c.clone(), t.region(&[&c]));
    }
    label_vertex(&mut inst, &format!("u({x})"), id_of(&g, &t, u))?;
    for (a, b) in [(0, 1), (1, 0)] {
        let (c1, c2) = literal_certificates(&inst, &t, lits[a], lits[b])?;
        inst.scripted_certificates.push(c1);
        inst.scripted_certificates.push(c2);
    }
    Ok(inst)
}

/// The two collapsing stages of the literal gadget with `tl` true.
fn literal_certificates(
    inst: &GadgetInstance,
    t: &Triangulation,
    tl: Literal,
    fl: Literal,
) -> Result<(ScriptedCertificate, ScriptedCertificate)> {
    let (tn, fname) = (lit_name(tl), lit_name(fl));
    let k = inst.complex().clone();
    let mut s = Script::new(&k);
    let fu = t.block(&format!("X({fname}).up")).unwrap();
    s.run(&fu.residue_in(&s.cur, Residue::KeepRectangles), Some(&fu.ball()), "upper wall of the false side")?;
    let tu = t.block(&format!("X({tn}).up")).unwrap();
    s.run(&tu.residue_in(&s.cur, Residue::OpenFloor), Some(&tu.ball()), "upper wall of the true side")?;
    let keep = label_complex(inst, &[&format!("e({tn})"), &format!("f({tn})")], &[&format!("p({tn})")])?;
    s.reduce_region(inst.region(&format!("X({tn})"))?, &keep, "true side")?;
    let first = s.finish(&format!("literal1:{tn}"), &k);

    let e = inst.face(&format!("e({tn})"))?.clone();
    let z = Face::vertex(inst.vertex(&format!("z({tn})"))?);
    let start = first.certificate.target.restrict(|f| *f != e && *f != z);
    if start.contains(&z) {
        return Err(Error::Contract("z is not a leaf after the first literal stage".into()));
    }
    let mut s = Script::new(&start);
    let fl_low = t.block(&format!("X({fname}).low")).unwrap();
    s.run(&fl_low.residue_in(&s.cur, Residue::OpenFloor), Some(&fl_low.ball()), "lower wall of the false side")?;
    let target = label_complex(inst, &[&format!("e({fname})")], &[&format!("p({tn})"), &format!("p({fname})")])?;
    s.run(&target, None, "both sides")?;
    let second = s.finish(&format!("literal2:{tn}"), &start);
    Ok((first, second))
}

/// Pinches the middle-floor line y = 1 from `from` to `lx` into v_and.
fn pinch(g: &mut GridCellComplex, chart: &str, from: i32, lx: i32) {
    for x in from..=lx {
        g.identify(VertexKey::grid(chart, [x, 1, 0]), VertexKey::named("v_and"));
    }
}

/// K_and: Bing's house with a thin lower wall and a collapsed upper wall whose
/// middle floor line y = 1 beyond the wall is pinched to v_and. e_and is edge
/// 01 of the upper wall. Variable i gets the anchor u(xi) joined to v_and by
/// a(xi) and two arms of 8 edges, one per literal; each arm is p(ℓ)
/// backwards followed by f(ℓ).
pub fn conjunction_gadget(variables: u32) -> Result<GadgetInstance> {
    if variables == 0 {
        return Err(Error::Formula("no variables".into()));
    }
    let lx = 7 + 3 * variables as i32 + 1;
    let mut g = GridCellComplex::new();
    let walls = two_room(&mut g, "KA", lx, 11, WallFill::Thin, WallFill::Solid);
    pinch(&mut g, "KA", 5, lx);
    let t = g.triangulate()?;
    let complex = open_walls(&t, &t.complex, &walls[1..]);
    let mut inst = base_instance(GadgetKind::Conjunction, &t, complex);
    let v = id_of(&g, &t, VertexKey::named("v_and"));
    let up = t.block(&walls[1]).unwrap();
    label_vertex(&mut inst, "v_and", v)?;
    label_edge(&mut inst, "e_and", up.label(0), v)?;
    for var in 1..=variables {
        let xx = 7 + 3 * (var as i32 - 1);
        let u = id_of(&g, &t, VertexKey::grid("KA", [xx, 2, 0]));
        label_vertex(&mut inst, &format!("u({})", var_name(var)), u)?;
        label_edge(&mut inst, &format!("a({})", var_name(var)), v, u)?;
        for (l, col) in [(Literal::pos(var), xx), (Literal::neg(var), xx + 1)] {
            let mut arm = vec![u];
            arm.extend((3..=10).map(|y| id_of(&g, &t, VertexKey::grid("KA", [col, y, 0]))));
            let n = lit_name(l);
            let p: Vec<VertexId> = arm[..8].iter().rev().copied().collect();
            label_path(&mut inst, &format!("p({n})"), &p)?;
            label_edge(&mut inst, &format!("f({n})"), arm[7], arm[8])?;
            label_vertex(&mut inst, &format!("w({n})"), arm[7])?;
            label_path(&mut inst, &format!("arm({n})"), &arm)?;
        }
    }
    let mut faces = Vec::new();
    let mut paths = Vec::new();
    for var in 1..=variables {
        faces.push(format!("a({})", var_name(var)));
        paths.push(format!("arm({})", Literal::pos(var)));
        paths.push(format!("arm({})", Literal::neg(var)));
    }
    let fr: Vec<&str> = faces.iter().map(String::as_str).collect();
    let pr: Vec<&str> = paths.iter().map(String::as_str).collect();
    let a = label_complex(&inst, &fr, &pr)?;
    let mut s = Script::new(inst.complex());
    s.run(&a, None, "and")?;
    inst.scripted_certificates.push(s.finish("and", inst.complex()));
    inst.regions.insert("A".into(), a);
    Ok(inst)
}

/// K(c): the three-room house with collapsed walls. The edge 01 of wall i is
/// (ℓi,c), reached from v_and by p(ℓi,c).
pub fn clause_gadget(index: usize, clause: Clause) -> Result<GadgetInstance> {
    for a in 0..3 {
        for b in a + 1..3 {
            if clause[a].var == clause[b].var {
                return Err(Error::Formula(format!("clause {} repeats variable {}", index + 1, clause[a].var)));
            }
        }
    }
    let r = three_rooms(true)?;
    let mut inst = base_instance(GadgetKind::Clause, &r.tri, r.complex.clone());
    let c = clause_name(index);
    label_vertex(&mut inst, "v_and", r.v)?;
    label_edge(&mut inst, "e_and", r.eand.0, r.eand.1)?;
    for (i, l) in clause.iter().enumerate() {
        label_edge(&mut inst, &format!("({l},{c})"), r.x[i].0, r.x[i].1)?;
        label_path(&mut inst, &format!("p({l},{c})"), &r.p[i])?;
    }
    for (i, l) in clause.iter().enumerate() {
        let mut faces = vec!["e_and".to_string()];
        let mut paths = Vec::new();
        for (j, m) in clause.iter().enumerate() {
            paths.push(format!("p({m},{c})"));
            if j != i {
                faces.push(format!("({m},{c})"));
            }
        }
        let fr: Vec<&str> = faces.iter().map(String::as_str).collect();
        let pr: Vec<&str> = paths.iter().map(String::as_str).collect();
        let target = label_complex(&inst, &fr, &pr)?;
        let mut s = Script::new(inst.complex());
        s.run(&target, None, &format!("clause {c}, literal {l}"))?;
        inst.scripted_certificates.push(s.finish(&format!("clause:({l},{c})"), inst.complex()));
    }
    Ok(inst)
}

/// Lays out B(ℓ) on `chart`; returns the upper wall's name and the length.
fn bl_layout(g: &mut GridCellComplex, chart: &str, arms: usize) -> (String, i32) {
    let lx = 8.max(7 + 2 * arms as i32 + 1);
    let walls = two_room(g, chart, lx, 5, WallFill::Thin, WallFill::Solid);
    pinch(g, chart, 6, lx);
    (walls[1].clone(), lx)
}

fn label_bl(inst: &mut GadgetInstance, g: &GridCellComplex, t: &Triangulation, wall: &str, l: Literal) -> Result<()> {
    let n = lit_name(l);
    let up = t.block(wall).unwrap();
    let v = id_of(g, t, VertexKey::named("v_and"));
    label_edge(inst, &format!("e({n})"), up.label(1), up.label(0))?;
    label_vertex(inst, &format!("w({n})"), up.label(1))?;
    label_vertex(inst, &format!("z({n})"), up.label(0))?;
    label_edge(inst, &format!("b({n})"), v, up.label(1))
}

/// B(ℓ): Bing's house with a thin lower wall and a collapsed upper wall; the
/// middle floor line y = 1 beyond the wall is pinched to v_and. e(ℓ) is edge
/// 01 of the upper wall, b(ℓ) joins w(ℓ) = vertex 1 to v_and, and clause j
/// gets the path p(ℓ,cj) of two edges from v_and followed by (ℓ,cj).
pub fn bl_gadget(l: Literal, clauses: &[usize]) -> Result<GadgetInstance> {
    let mut g = GridCellComplex::new();
    let (wall, _) = bl_layout(&mut g, "B", clauses.len());
    let t = g.triangulate()?;
    let complex = open_walls(&t, &t.complex, std::slice::from_ref(&wall));
    let mut inst = base_instance(GadgetKind::BL, &t, complex);
    let v = id_of(&g, &t, VertexKey::named("v_and"));
    label_vertex(&mut inst, "v_and", v)?;
    label_bl(&mut inst, &g, &t, &wall, l)?;
    let n = lit_name(l);
    let mut paths = Vec::new();
    let mut faces = vec![format!("b({n})")];
    for (j, &ci) in clauses.iter().enumerate() {
        let xx = 7 + 2 * j as i32;
        let pts = [2, 3, 4].map(|y| id_of(&g, &t, VertexKey::grid("B", [xx, y, 0])));
        let c = clause_name(ci);
        label_path(&mut inst, &format!("p({n},{c})"), &[v, pts[0], pts[1]])?;
        label_edge(&mut inst, &format!("({n},{c})"), pts[1], pts[2])?;
        paths.push(format!("p({n},{c})"));
        faces.push(format!("({n},{c})"));
    }
    let fr: Vec<&str> = faces.iter().map(String::as_str).collect();
    let pr: Vec<&str> = paths.iter().map(String::as_str).collect();
    let target = label_complex(&inst, &fr, &pr)?;
    let mut s = Script::new(inst.complex());
    s.run(&target, None, "bl")?;
    inst.scripted_certificates.push(s.finish(&format!("bl:{n}"), inst.complex()));
    Ok(inst)
}

/// Cone from `center` over the closed cycle `cycle`.
pub fn disk_faces(center: VertexId, cycle: &[VertexId]) -> Vec<Face> {
    (0..cycle.len()).map(|i| Face::of(&[center, cycle[i], cycle[(i + 1) % cycle.len()]])).collect()
}

/// D(ℓ,ℓ̄) on its own: B(ℓ) and B(ℓ̄) without clauses, paths p(ℓ), p(ℓ̄) of
/// seven edges from w to a common vertex u, the edge a = u v_and, and the
/// two cones over the cycles b ∪ p ∪ a.
pub fn disk_gadget(var: u32) -> Result<GadgetInstance> {
    let x = var_name(var);
    let lits = [Literal::pos(var), Literal::neg(var)];
    let mut g = GridCellComplex::new();
    let v = VertexKey::named("v_and");
    let u = VertexKey::named(&format!("u({x})"));
    let mut walls = Vec::new();
    for l in lits {
        let c = format!("B({l})");
        let (wall, _) = bl_layout(&mut g, &c, 0);
        let w = g.resolve(&VertexKey::grid(&c, [5, 1, 0]));
        let mut cyc = vec![v.clone(), w];
        cyc.extend((1..=6).map(|i| VertexKey::named(&format!("p({l}).{i}"))));
        cyc.push(u.clone());
        let center = VertexKey::named(&format!("D({l})"));
        let d = format!("D({l})");
        for i in 0..cyc.len() {
            g.triangle(&d, [center.clone(), cyc[i].clone(), cyc[(i + 1) % cyc.len()].clone()]);
        }
        walls.push(wall);
    }
    let t = g.triangulate()?;
    let complex = open_walls(&t, &t.complex, &walls);
    let mut inst = base_instance(GadgetKind::Disk, &t, complex);
    let vid = id_of(&g, &t, v);
    let uid = id_of(&g, &t, u);
    label_vertex(&mut inst, "v_and", vid)?;
    label_vertex(&mut inst, &format!("u({x})"), uid)?;
    label_edge(&mut inst, &format!("a({x})"), uid, vid)?;
    for (l, wall) in lits.iter().zip(&walls) {
        let c = format!("B({l})");
        label_bl(&mut inst, &g, &t, wall, *l)?;
        let n = lit_name(*l);
        let mut p = vec![inst.vertex(&format!("w({n})"))?];
        p.extend((1..=6).map(|i| id_of(&g, &t, VertexKey::named(&format!("p({l}).{i}")))));
        p.push(uid);
        label_path(&mut inst, &format!("p({n})"), &p)?;
        label_vertex(&mut inst, &format!("D({n})"), id_of(&g, &t, VertexKey::named(&format!("D({l})"))))?;
        inst.regions.insert(c.clone(), t.region(&[&c]));
        inst.regions.insert(format!("D({l})"), t.region(&[&format!("D({l})")]));
    }
    let cert = disk_certificate(&inst, lits)?;
    inst.scripted_certificates.push(cert);
    Ok(inst)
}

fn disk_certificate(inst: &GadgetInstance, lits: [Literal; 2]) -> Result<ScriptedCertificate> {
    let k = inst.complex().clone();
    let mut s = Script::new(&k);
    for l in lits {
        let n = lit_name(l);
        let keep = label_complex(inst, &[&format!("b({n})")], &[])?;
        s.reduce_region(inst.region(&format!("B({l})"))?, &keep, &format!("B({n})"))?;
    }
    let mut drop = Vec::new();
    let mut region = SimplicialComplex::empty();
    for l in lits {
        let n = lit_name(l);
        drop.push(Face::vertex(inst.vertex(&format!("D({n})"))?));
        drop.push(inst.face(&format!("b({n})"))?.clone());
        region = region.union(inst.region(&format!("D({l})"))?);
    }
    let target = s.cur.restrict(|f| !drop.iter().any(|d| d.is_subface_of(f)));
    s.run(&target, Some(&region), "disks")?;
    let point = close_downward(&[Face::vertex(inst.vertex("v_and")?)]);
    s.run(&point, None, "tree")?;
    Ok(s.finish("disks", &k))
}
