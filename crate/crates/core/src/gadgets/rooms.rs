//! The thick wall, Bing's rooms and houses, and the three-room house.

use std::collections::BTreeMap;

use super::*;
use crate::grid::{Residue, Triangulation};

/// A solid box on labels 0..=9 and its two standard residues.
pub fn thick_wall(variant: ThickWallVariant) -> Result<GadgetInstance> {
    let mut g = GridCellComplex::new();
    for (p, a, b) in [([0, 0, 0], 0, 1), ([0, 0, 0], 0, 2), ([0, 1, 0], 0, 2), ([0, 0, 1], 0, 1)] {
        g.square("w", p, a, b);
    }
    g.wall("wall", "w", [0, 0, 0], [X, Y, Z], WallFill::Solid);
    let t = g.triangulate()?;
    let b = &t.blocks[0];
    let to_label: BTreeMap<u32, u32> = b.labels.iter().enumerate().map(|(l, &v)| (v, l as u32)).collect();
    let relabel = |v: u32| to_label[&v];
    let full = t.complex.relabel(relabel)?;
    let block = BlockTriangulation {
        name: "wall".into(),
        labels: std::array::from_fn(|l| l as u32),
        tets: b.tets.iter().map(|f| f.map(relabel)).collect::<Result<_>>()?,
    };
    let mut certs = Vec::new();
    for (name, kind) in [("collapse:01_free", Residue::Corner01), ("collapse:keep_rectangles", Residue::KeepRectangles)] {
        let mut s = Script::new(&full);
        s.run(&block.residue_faces(kind), None, name)?;
        certs.push(s.finish(name, &full));
    }
    let complex = match variant {
        ThickWallVariant::Full => full.clone(),
        ThickWallVariant::CollapsedTo01Free => block.residue_faces(Residue::Corner01),
        ThickWallVariant::CollapsedKeepRectangles => block.residue_faces(Residue::KeepRectangles),
    };
    let mut labeled = LabeledComplex::new(complex);
    for (name, a, bb) in [("01", 0, 1), ("89", 8, 9)] {
        let e = edge(a, bb);
        if labeled.complex.contains(&e) {
            labeled.label_face(name, e)?;
        }
    }
    let vertex_keys = t.ids.iter().map(|(k, &v)| (relabel(v), k.clone())).collect();
    Ok(GadgetInstance {
        kind: GadgetKind::ThickWall(variant),
        labeled,
        scripted_certificates: certs,
        vertex_keys,
        regions: BTreeMap::new(),
        blocks: vec![block],
    })
}

/// Replaces every solid wall named in `collapse` by its open-floor residue.
/// Returns the complex and a certificate from the solid version.
fn collapse_walls(t: &Triangulation, collapse: &[String], cert_name: &str) -> Result<(SimplicialComplex, Option<ScriptedCertificate>)> {
    if collapse.is_empty() {
        return Ok((t.complex.clone(), None));
    }
    let mut s = Script::new(&t.complex);
    for name in collapse {
        let b = t.block(name).expect("wall exists");
        let target = b.residue_in(&s.cur, Residue::OpenFloor);
        s.run(&target, Some(&b.ball()), name)?;
    }
    let done = s.cur.clone();
    Ok((done, Some(s.finish(cert_name, &t.complex))))
}

fn instance(
    kind: GadgetKind,
    t: &Triangulation,
    complex: SimplicialComplex,
    cert: Option<ScriptedCertificate>,
) -> GadgetInstance {
    GadgetInstance {
        kind,
        labeled: LabeledComplex::new(complex),
        scripted_certificates: cert.into_iter().collect(),
        vertex_keys: key_map(&t.ids),
        regions: BTreeMap::new(),
        blocks: t.blocks.clone(),
    }
}

/// One room: a box with two holes in the floor and one in the roof, a tube
/// from the floor hole at (4,1) to the roof, and a wall between the tube and
/// the side y = 0.
pub fn bing_room(wall: WallKind) -> Result<GadgetInstance> {
    let mut g = GridCellComplex::new();
    let c = "room";
    let (lx, wy) = (6, 3);
    for x in 0..lx {
        for y in 0..wy {
            if (x, y) != (1, 1) && (x, y) != (4, 1) {
                g.square(c, [x, y, 0], 0, 1);
            }
            if (x, y) != (4, 1) {
                g.square(c, [x, y, 1], 0, 1);
            }
        }
    }
    g.hole(c, [1, 1, 0], 0, 1);
    g.hole(c, [4, 1, 0], 0, 1);
    g.hole(c, [4, 1, 1], 0, 1);
    for y in 0..wy {
        g.square(c, [0, y, 0], 1, 2);
        g.square(c, [lx, y, 0], 1, 2);
    }
    for x in 0..lx {
        g.square(c, [x, 0, 0], 0, 2);
        g.square(c, [x, wy, 0], 0, 2);
    }
    tube(&mut g, c, 4, 0);
    g.wall("room.wall", c, [4, 1, 0], [X, NEG_Y, Z], wall.fill());
    let t = g.triangulate()?;
    let collapse = if wall == WallKind::Collapsed { vec!["room.wall".to_string()] } else { vec![] };
    let (complex, cert) = collapse_walls(&t, &collapse, "wall")?;
    let kind = match wall {
        WallKind::Thin => GadgetKind::BingRoomThin,
        WallKind::Thick => GadgetKind::BingRoomThick,
        WallKind::Collapsed => GadgetKind::BingRoomCollapsed,
    };
    let mut inst = instance(kind, &t, complex, cert);
    if wall != WallKind::Thin {
        let e = t.block("room.wall").unwrap().edge(0, 1);
        inst.labeled.label_face("x", e)?;
    }
    Ok(inst)
}

/// Two rooms glued along the middle floor; `low` and `up` are the walls of
/// the lower and upper room.
pub fn bing_house(low: WallKind, up: WallKind) -> Result<GadgetInstance> {
    let mut g = GridCellComplex::new();
    let names = two_room(&mut g, "house", 6, 3, low.fill(), up.fill());
    let t = g.triangulate()?;
    let collapse: Vec<String> = names
        .iter()
        .zip([low, up])
        .filter(|(_, w)| *w == WallKind::Collapsed)
        .map(|(n, _)| n.clone())
        .collect();
    let (complex, cert) = collapse_walls(&t, &collapse, "walls")?;
    let mut inst = instance(GadgetKind::BingHouse(low, up), &t, complex, cert);
    for (n, w, label) in [(&names[0], low, "x(low)"), (&names[1], up, "x(up)")] {
        if w != WallKind::Thin {
            inst.labeled.label_face(label, t.block(n).unwrap().edge(0, 1))?;
        }
    }
    Ok(inst)
}

/// Vertex data of the three-room house.
pub(crate) struct ThreeRooms {
    pub tri: Triangulation,
    pub complex: SimplicialComplex,
    pub cert: Option<ScriptedCertificate>,
    pub v: VertexId,
    /// Edge 01 of wall i, as (0, 1).
    pub x: [(VertexId, VertexId); 3],
    /// From the centre v through the middle of square i to vertex 0 of wall i.
    pub p: [[VertexId; 3]; 3],
    pub eand: (VertexId, VertexId),
}

/// The base floor is three 3×3 squares minus their middle cells, glued
/// cyclically around the centre v: side t of square j is side t of square
/// j-1 turned. Room i stands over square i and square i-1; its tube rises
/// from the hole of square i and its wall sits between the tube and the
/// outer side.
pub(crate) fn three_rooms(collapsed: bool) -> Result<ThreeRooms> {
    let mut g = GridCellComplex::new();
    let v = VertexKey::named("v_and");
    let q = |j: usize| format!("Q{j}");
    for j in 0..3 {
        for s in 0..3 {
            for t in 0..3 {
                if (s, t) != (1, 1) {
                    g.square(&q(j), [s, t, 0], 0, 1);
                }
            }
        }
        g.hole(&q(j), [1, 1, 0], 0, 1);
        let prev = q((j + 2) % 3);
        g.identify(VertexKey::grid(&q(j), [0, 0, 0]), v.clone());
        for t in 1..=3 {
            g.identify(VertexKey::grid(&q(j), [0, t, 0]), VertexKey::grid(&prev, [t, 0, 0]));
        }
    }
    let mut walls = Vec::new();
    for i in 0..3 {
        let r = format!("R{i}");
        for x in 0..6 {
            g.square(&r, [x, 0, 0], 0, 2);
            g.square(&r, [x, 3, 0], 0, 2);
            for y in 0..3 {
                if (x, y) != (4, 1) {
                    g.square(&r, [x, y, 1], 0, 1);
                }
            }
        }
        g.hole(&r, [4, 1, 1], 0, 1);
        for y in 0..3 {
            g.square(&r, [0, y, 0], 1, 2);
            g.square(&r, [6, y, 0], 1, 2);
        }
        tube(&mut g, &r, 4, 0);
        for x in 0..=6 {
            for y in 0..=3 {
                let to = if x >= 3 {
                    VertexKey::grid(&q(i), [x - 3, y, 0])
                } else {
                    VertexKey::grid(&q((i + 2) % 3), [y, 3 - x, 0])
                };
                g.identify(VertexKey::grid(&r, [x, y, 0]), to);
            }
        }
        let name = format!("R{i}.wall");
        g.wall(&name, &r, [4, 2, 0], [X, Y, Z], WallFill::Solid);
        walls.push(name);
    }
    let tri = g.triangulate()?;
    let (complex, cert) = if collapsed { collapse_walls(&tri, &walls, "walls")? } else { (tri.complex.clone(), None) };
    let id = |k: VertexKey| tri.id(&g.resolve(&k)).expect("vertex exists");
    let vid = id(v.clone());
    let mut x = [(0, 0); 3];
    let mut p = [[0; 3]; 3];
    for i in 0..3 {
        let b = tri.block(&walls[i]).unwrap();
        x[i] = (b.label(0), b.label(1));
        p[i] = [vid, id(VertexKey::grid(&q(i), [1, 1, 0])), b.label(0)];
    }
    let eand = (vid, id(VertexKey::grid(&q(0), [1, 0, 0])));
    Ok(ThreeRooms { tri, complex, cert, v: vid, x, p, eand })
}

pub fn three_room_house(collapsed: bool) -> Result<GadgetInstance> {
    let r = three_rooms(collapsed)?;
    let kind = if collapsed { GadgetKind::ThreeRoomCollapsed } else { GadgetKind::ThreeRoomHouse };
    let mut inst = instance(kind, &r.tri, r.complex.clone(), r.cert);
    for (i, &(a, b)) in r.x.iter().enumerate() {
        inst.labeled.label_face(&format!("x{}", i + 1), edge(a, b))?;
    }
    Ok(inst)
}
