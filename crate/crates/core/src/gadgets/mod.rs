//! Bing's rooms and houses, the thick wall, and the four labelled gadget
//! families, each with scripted collapsing sequences.
//!
//! Every builder lays out unit squares on integer grids (see [`crate::grid`]),
//! triangulates, and then replaces each collapsed thick wall by its residue.
//! Certificates are produced by running [`collapse_onto`] in stages and are
//! checked to land exactly on the stated residues.

mod families;
mod properties;
mod rooms;

pub use families::{bl_gadget, clause_gadget, conjunction_gadget, disk_faces, disk_gadget, literal_gadget};
pub use properties::{check_prefix_property, violation, PrefixProperty, Violation};
pub use rooms::{bing_house, bing_room, thick_wall, three_room_house};

use std::collections::BTreeMap;

use crate::cnf::Literal;
use crate::collapse::{collapse_onto, CollapseCertificate, CollapseStep};
use crate::complex::{close_downward, path_edges, Face, LabeledComplex, SimplicialComplex, VertexId};
use crate::error::Error;
use crate::grid::{BlockTriangulation, GridCellComplex, VertexKey, WallFill};
use crate::Result;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThickWallVariant {
    Full,
    CollapsedTo01Free,
    CollapsedKeepRectangles,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WallKind {
    Thin,
    Thick,
    Collapsed,
}

impl WallKind {
    fn fill(self) -> WallFill {
        match self {
            WallKind::Thin => WallFill::Thin,
            _ => WallFill::Solid,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GadgetKind {
    ThickWall(ThickWallVariant),
    BingRoomThin,
    BingRoomThick,
    BingRoomCollapsed,
    BingHouse(WallKind, WallKind),
    ThreeRoomHouse,
    ThreeRoomCollapsed,
    Literal,
    Conjunction,
    Clause,
    BL,
    Disk,
}

/// A certificate together with the complex it starts from.
#[derive(Clone, Debug)]
pub struct ScriptedCertificate {
    pub name: String,
    pub start: SimplicialComplex,
    pub certificate: CollapseCertificate,
}

#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    pub labeled: LabeledComplex,
    pub scripted_certificates: Vec<ScriptedCertificate>,
    /// Grid key of every vertex id.
    pub vertex_keys: BTreeMap<VertexId, VertexKey>,
    /// Named face sets such as the two halves X(ℓ), X(ℓ̄) of a literal gadget.
    pub regions: BTreeMap<String, SimplicialComplex>,
    /// Thick walls, collapsed or not.
    pub blocks: Vec<BlockTriangulation>,
}

impl GadgetInstance {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.labeled.complex
    }

    pub fn certificate(&self, name: &str) -> Option<&ScriptedCertificate> {
        self.scripted_certificates.iter().find(|c| c.name == name)
    }

    pub fn face(&self, name: &str) -> Result<&Face> {
        self.labeled.face(name).ok_or_else(|| Error::BadLabel(name.into(), "no such label".into()))
    }

    pub fn path(&self, name: &str) -> Result<&[Face]> {
        self.labeled.path(name).ok_or_else(|| Error::BadLabel(name.into(), "no such path".into()))
    }

    /// A labelled single vertex.
    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        let f = self.face(name)?;
        match f.vertices() {
            [v] => Ok(*v),
            _ => Err(Error::BadLabel(name.into(), "not a vertex".into())),
        }
    }

    pub fn region(&self, name: &str) -> Result<&SimplicialComplex> {
        self.regions.get(name).ok_or_else(|| Error::BadLabel(name.into(), "no such region".into()))
    }

    pub fn block(&self, name: &str) -> Result<&BlockTriangulation> {
        self.blocks
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| Error::BadLabel(name.into(), "no such wall".into()))
    }
}

/// Labels are written with the literal as `x3` or `~x3`.
pub(crate) fn lit_name(l: Literal) -> String {
    l.to_string()
}

pub(crate) fn var_name(var: u32) -> String {
    format!("x{var}")
}

pub(crate) fn clause_name(index: usize) -> String {
    format!("c{}", index + 1)
}

/// Staged construction of a certificate by directed collapses.
pub(crate) struct Script {
    pub cur: SimplicialComplex,
    pub steps: Vec<CollapseStep>,
}

impl Script {
    pub fn new(k: &SimplicialComplex) -> Self {
        Script { cur: k.clone(), steps: Vec::new() }
    }

    /// Collapses onto `target`, removing only faces of `region`; fails unless
    /// the target is reached exactly.
    pub fn run(&mut self, target: &SimplicialComplex, region: Option<&SimplicialComplex>, stage: &str) -> Result<()> {
        if !target.is_subcomplex_of(&self.cur) {
            return Err(Error::Contract(format!("{stage}: target is not a subcomplex of the current complex")));
        }
        let cert = collapse_onto(&self.cur, target, region);
        if cert.target != *target {
            let left = cert.target.len() - target.len();
            return Err(Error::Contract(format!("{stage}: directed collapse stopped with {left} extra faces")));
        }
        self.steps.extend(cert.steps);
        self.cur = cert.target;
        Ok(())
    }

    /// Collapses the faces of `region` except those in `keep`.
    pub fn reduce_region(&mut self, region: &SimplicialComplex, keep: &SimplicialComplex, stage: &str) -> Result<()> {
        let target = self.cur.restrict(|f| !region.contains(f) || keep.contains(f));
        self.run(&target, Some(region), stage)
    }

    pub fn certificate(&self) -> CollapseCertificate {
        CollapseCertificate { steps: self.steps.clone(), target: self.cur.clone() }
    }

    pub fn finish(self, name: &str, start: &SimplicialComplex) -> ScriptedCertificate {
        ScriptedCertificate { name: name.to_string(), start: start.clone(), certificate: self.certificate() }
    }
}

pub(crate) fn edge(a: VertexId, b: VertexId) -> Face {
    Face::of(&[a, b])
}

pub(crate) const X: [i32; 3] = [1, 0, 0];
pub(crate) const NEG_Y: [i32; 3] = [0, -1, 0];
pub(crate) const Y: [i32; 3] = [0, 1, 0];
pub(crate) const Z: [i32; 3] = [0, 0, 1];
pub(crate) const NEG_Z: [i32; 3] = [0, 0, -1];

/// Bing's house with two rooms on the grid of `chart`.
///
/// Floors at z = -1, 0, 1 over `lx × wy` cells, with holes (1,1) in the
/// bottom floor, (1,1) and (4,1) in the middle floor and (4,1) in the roof.
/// The lower tube joins the two holes at (1,1), the upper tube the two at
/// (4,1). The lower wall sits at (1,1,0) going -y, -z, the upper one at
/// (4,1,0) going -y, +z; both run along +x. Returns the wall names.
pub(crate) fn two_room(g: &mut GridCellComplex, chart: &str, lx: i32, wy: i32, low: WallFill, up: WallFill) -> [String; 2] {
    for x in 0..lx {
        for y in 0..wy {
            if (x, y) != (1, 1) && (x, y) != (4, 1) {
                g.square(chart, [x, y, 0], 0, 1);
            }
            if (x, y) != (1, 1) {
                g.square(chart, [x, y, -1], 0, 1);
            }
            if (x, y) != (4, 1) {
                g.square(chart, [x, y, 1], 0, 1);
            }
        }
    }
    g.hole(chart, [1, 1, 0], 0, 1);
    g.hole(chart, [4, 1, 0], 0, 1);
    g.hole(chart, [1, 1, -1], 0, 1);
    g.hole(chart, [4, 1, 1], 0, 1);
    for z in [-1, 0] {
        for y in 0..wy {
            g.square(chart, [0, y, z], 1, 2);
            g.square(chart, [lx, y, z], 1, 2);
        }
        for x in 0..lx {
            g.square(chart, [x, 0, z], 0, 2);
            g.square(chart, [x, wy, z], 0, 2);
        }
    }
    tube(g, chart, 1, -1);
    tube(g, chart, 4, 0);
    let names = [format!("{chart}.low"), format!("{chart}.up")];
    g.wall(&names[0], chart, [1, 1, 0], [X, NEG_Y, NEG_Z], low);
    g.wall(&names[1], chart, [4, 1, 0], [X, NEG_Y, Z], up);
    names
}

/// The four sides of the vertical tube over cell (tx, 1) at height z.
pub(crate) fn tube(g: &mut GridCellComplex, chart: &str, tx: i32, z: i32) {
    g.square(chart, [tx, 1, z], 1, 2);
    g.square(chart, [tx + 1, 1, z], 1, 2);
    g.square(chart, [tx, 1, z], 0, 2);
    g.square(chart, [tx, 2, z], 0, 2);
}

pub(crate) fn key_map(ids: &BTreeMap<VertexKey, u32>) -> BTreeMap<VertexId, VertexKey> {
    ids.iter().map(|(k, &v)| (v, k.clone())).collect()
}
