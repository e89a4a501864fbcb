//! Integer-grid scaffolding for the gadgets.
//!
//! Unit squares live in named charts; vertices of different charts are glued
//! by an identification map (chains are followed). A unit square with minimal
//! corner `p` and axes `a < b` becomes the triangles `(p, p+a, p+a+b)` and
//! `(p, p+b, p+a+b)`; triangles made degenerate by gluing are dropped.
//!
//! A thick wall is a unit box with labelled corners: corner `i` is
//! `origin + bit0(i)·d0 + bit1(i)·d1 + bit2(i)·d2`, and 8, 9 are the centres
//! of the end faces D0 = 0246 and D1 = 1357. It is cut into the four prisms
//! around the axis 89, three tetrahedra each.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::complex::{close_downward, Face, SimplicialComplex};
use crate::error::Error;
use crate::Result;

/// Coordinates are kept well inside `i32`.
pub const GRID_BOUND: i32 = 1 << 20;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VertexKey {
    Named(String),
    Grid { chart: String, p: [i32; 3] },
}

impl VertexKey {
    pub fn grid(chart: &str, p: [i32; 3]) -> Self {
        VertexKey::Grid { chart: chart.to_string(), p }
    }

    pub fn named(name: &str) -> Self {
        VertexKey::Named(name.to_string())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Square {
    pub chart: String,
    /// Minimal corner.
    pub p: [i32; 3],
    pub axes: (usize, usize),
}

impl Square {
    fn corners(&self) -> [[i32; 3]; 4] {
        let (a, b) = self.axes;
        let mut pa = self.p;
        pa[a] += 1;
        let mut pb = self.p;
        pb[b] += 1;
        let mut pab = pa;
        pab[b] += 1;
        [self.p, pa, pb, pab]
    }
}

/// The parts of a thick wall's boundary, by corner labels.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockPart {
    /// 0123, the floor square.
    F,
    /// 0145, the tube side.
    T,
    /// 2367, the outer side.
    S,
    /// 4567, the roof side.
    C,
    D0,
    D1,
}

impl BlockPart {
    pub const ALL: [BlockPart; 6] = [BlockPart::F, BlockPart::T, BlockPart::S, BlockPart::C, BlockPart::D0, BlockPart::D1];

    pub fn labels(self) -> &'static [usize] {
        match self {
            BlockPart::F => &[0, 1, 2, 3],
            BlockPart::T => &[0, 1, 4, 5],
            BlockPart::S => &[2, 3, 6, 7],
            BlockPart::C => &[4, 5, 6, 7],
            BlockPart::D0 => &[0, 2, 4, 6, 8],
            BlockPart::D1 => &[1, 3, 5, 7, 9],
        }
    }
}

/// What is left of a collapsed thick wall.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Residue {
    /// Boundary sphere minus the open floor square.
    OpenFloor,
    /// Rectangles 0462, 0451, 4576, 2673, 0132 and the axis 89.
    KeepRectangles,
    /// S, C and D1 plus the bare edge 01.
    Corner01,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WallFill {
    /// The square D0 only.
    Thin,
    /// Tetrahedra.
    Solid,
}

#[derive(Clone, Debug)]
pub struct WallBlock {
    pub name: String,
    pub chart: String,
    pub origin: [i32; 3],
    pub dirs: [[i32; 3]; 3],
    pub centers: [VertexKey; 2],
}

impl WallBlock {
    pub fn corner(&self, label: usize) -> [i32; 3] {
        let mut q = self.origin;
        for (bit, d) in self.dirs.iter().enumerate() {
            if label >> bit & 1 == 1 {
                for i in 0..3 {
                    q[i] += d[i];
                }
            }
        }
        q
    }

    /// Key of corner label 0..=9.
    pub fn key(&self, label: usize) -> VertexKey {
        match label {
            0..=7 => VertexKey::grid(&self.chart, self.corner(label)),
            8 | 9 => self.centers[label - 8].clone(),
            _ => panic!("wall label {label} out of range"),
        }
    }

    fn square_of(&self, labels: [usize; 4]) -> Square {
        let cs: Vec<[i32; 3]> = labels.iter().map(|&l| self.corner(l)).collect();
        let p = [0, 1, 2].map(|i| cs.iter().map(|c| c[i]).min().unwrap());
        let spread: Vec<usize> = (0..3).filter(|&i| cs.iter().any(|c| c[i] != p[i])).collect();
        Square { chart: self.chart.clone(), p, axes: (spread[0], spread[1]) }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GridCellComplex {
    pub squares: Vec<Square>,
    pub holes: Vec<Square>,
    pub blocks: Vec<WallBlock>,
    /// Triangles outside the grid, such as cones over cycles.
    pub triangles: Vec<(String, [VertexKey; 3])>,
    pub glue: BTreeMap<VertexKey, VertexKey>,
}

/// Tetrahedra and vertex ids of one solid wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTriangulation {
    pub name: String,
    pub labels: [u32; 10],
    pub tets: Vec<Face>,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    pub complex: SimplicialComplex,
    pub ids: BTreeMap<VertexKey, u32>,
    pub blocks: Vec<BlockTriangulation>,
    /// Maximal faces contributed by each chart.
    pub chart_faces: BTreeMap<String, Vec<Face>>,
}

impl Triangulation {
    pub fn id(&self, key: &VertexKey) -> Option<u32> {
        self.ids.get(key).copied()
    }

    pub fn block(&self, name: &str) -> Option<&BlockTriangulation> {
        self.blocks.iter().find(|b| b.name == name)
    }

    /// Closure of the faces contributed by the given charts.
    pub fn region(&self, charts: &[&str]) -> SimplicialComplex {
        let gens: Vec<Face> = charts.iter().filter_map(|c| self.chart_faces.get(*c)).flatten().cloned().collect();
        close_downward(&gens)
    }
}

impl GridCellComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn square(&mut self, chart: &str, p: [i32; 3], a: usize, b: usize) {
        assert!(a < b && b < 3, "axes must be increasing");
        self.squares.push(Square { chart: chart.to_string(), p, axes: (a, b) });
    }

    pub fn hole(&mut self, chart: &str, p: [i32; 3], a: usize, b: usize) {
        self.holes.push(Square { chart: chart.to_string(), p, axes: (a, b) });
    }

    /// Adds a wall. A thin wall contributes its square D0; a solid one is cut
    /// into tetrahedra by [`GridCellComplex::triangulate`].
    pub fn wall(&mut self, name: &str, chart: &str, origin: [i32; 3], dirs: [[i32; 3]; 3], fill: WallFill) {
        let block = WallBlock {
            name: name.to_string(),
            chart: chart.to_string(),
            origin,
            dirs,
            centers: [VertexKey::named(&format!("{name}.8")), VertexKey::named(&format!("{name}.9"))],
        };
        match fill {
            WallFill::Thin => self.squares.push(block.square_of([0, 2, 4, 6])),
            WallFill::Solid => self.blocks.push(block),
        }
    }

    pub fn triangle(&mut self, chart: &str, keys: [VertexKey; 3]) {
        self.triangles.push((chart.to_string(), keys));
    }

    /// Glues `from` onto `to`.
    pub fn identify(&mut self, from: VertexKey, to: VertexKey) {
        if from != to {
            self.glue.insert(from, to);
        }
    }

    pub fn resolve(&self, key: &VertexKey) -> VertexKey {
        let mut k = key;
        let mut steps = 0;
        while let Some(next) = self.glue.get(k) {
            k = next;
            steps += 1;
            assert!(steps <= self.glue.len(), "identification map has a cycle");
        }
        k.clone()
    }

    fn square_keys(&self, s: &Square) -> [VertexKey; 4] {
        s.corners().map(|c| self.resolve(&VertexKey::grid(&s.chart, c)))
    }

    fn check(&self) -> Result<()> {
        let bad = |s: &Square| s.p.iter().any(|c| c.abs() > GRID_BOUND) || s.axes.0 >= s.axes.1 || s.axes.1 > 2;
        if let Some(s) = self.squares.iter().chain(&self.holes).find(|s| bad(s)) {
            return Err(Error::Grid(format!("square {s:?} is malformed or out of bounds")));
        }
        let present: HashSet<BTreeSet<VertexKey>> =
            self.squares.iter().map(|s| self.square_keys(s).into_iter().collect()).collect();
        for h in &self.holes {
            if present.contains(&self.square_keys(h).into_iter().collect()) {
                return Err(Error::Grid(format!("hole {h:?} is covered by a square")));
            }
        }
        for b in &self.blocks {
            for part in BlockPart::ALL {
                let ls = part.labels();
                let keys: BTreeSet<VertexKey> = ls.iter().take(4).map(|&l| self.resolve(&b.key(l))).collect();
                let is_band = ls.len() == 4;
                let has = present.contains(&keys);
                if is_band && !has {
                    return Err(Error::Grid(format!("wall {}: band face {part:?} is not a square", b.name)));
                }
                if !is_band && has {
                    return Err(Error::Grid(format!("wall {}: end face {part:?} is also a square", b.name)));
                }
            }
        }
        Ok(())
    }

    pub fn triangulate(&self) -> Result<Triangulation> {
        self.check()?;
        let mut tris: Vec<(&str, [VertexKey; 3])> = Vec::new();
        for s in &self.squares {
            let [c0, ca, cb, cab] = self.square_keys(s);
            tris.push((&s.chart, [c0.clone(), ca, cab.clone()]));
            tris.push((&s.chart, [c0, cb, cab]));
        }
        for (chart, t) in &self.triangles {
            tris.push((chart, t.clone().map(|k| self.resolve(&k))));
        }
        let mut keys: BTreeSet<VertexKey> = tris.iter().flat_map(|(_, t)| t.iter().cloned()).collect();
        for b in &self.blocks {
            keys.extend((0..10).map(|l| self.resolve(&b.key(l))));
        }
        let ids: BTreeMap<VertexKey, u32> = keys.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        let mut gens: Vec<Face> = Vec::new();
        let mut chart_faces: BTreeMap<String, Vec<Face>> = BTreeMap::new();
        for (chart, t) in &tris {
            let vs = sorted_distinct(t.iter().map(|k| ids[k]).collect());
            if vs.len() == 3 {
                let f = Face::of(&vs);
                chart_faces.entry(chart.to_string()).or_default().push(f.clone());
                gens.push(f);
            }
        }
        let edges: HashSet<(u32, u32)> = gens
            .iter()
            .flat_map(|f| f.facets())
            .map(|e| (e.vertices()[0], e.vertices()[1]))
            .collect();
        let mut blocks = Vec::new();
        for b in &self.blocks {
            let labels: [u32; 10] = std::array::from_fn(|l| ids[&self.resolve(&b.key(l))]);
            if sorted_distinct(labels.to_vec()).len() != 10 {
                return Err(Error::Grid(format!("wall {}: corners were glued together", b.name)));
            }
            let tets = block_tets(&labels, &edges).ok_or_else(|| {
                Error::Grid(format!("wall {}: no prism split matches the surrounding diagonals", b.name))
            })?;
            gens.extend(tets.iter().cloned());
            chart_faces.entry(b.chart.clone()).or_default().extend(tets.iter().cloned());
            blocks.push(BlockTriangulation { name: b.name.clone(), labels, tets });
        }
        Ok(Triangulation { complex: close_downward(&gens), ids, blocks, chart_faces })
    }
}

fn sorted_distinct(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v.dedup();
    v
}

fn edge_key(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

const PRISMS: [[usize; 4]; 4] = [[0, 2, 1, 3], [0, 4, 1, 5], [2, 6, 3, 7], [4, 6, 5, 7]];
const INNER: [(usize, usize); 4] = [(0, 1), (2, 3), (4, 5), (6, 7)];
const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The diagonal of quadrilateral `(a, b, a2, b2)` (a–a2, b–b2 vertical) used
/// by `tets`.
fn diag_of(tets: &[Face], [a, b, a2, b2]: [u32; 4]) -> (u32, u32) {
    let has = tets.iter().any(|t| t.contains_vertex(a) && t.contains_vertex(b2));
    if has {
        edge_key(a, b2)
    } else {
        edge_key(b, a2)
    }
}

fn prism_splits(bot: [u32; 3], top: [u32; 3]) -> impl Iterator<Item = Vec<Face>> {
    PERMS.into_iter().map(move |p| {
        let (pp, q) = (p.map(|i| bot[i]), p.map(|i| top[i]));
        vec![
            Face::of(&[pp[0], pp[1], pp[2], q[0]]),
            Face::of(&[pp[1], pp[2], q[0], q[1]]),
            Face::of(&[pp[2], q[0], q[1], q[2]]),
        ]
    })
}

/// Splits the four prisms so every band diagonal agrees with `edges`; the
/// inner rectangles 0189, 2389, 4589, 6789 are tried in a fixed order.
fn block_tets(lab: &[u32; 10], edges: &HashSet<(u32, u32)>) -> Option<Vec<Face>> {
    let mut band = Vec::new();
    for [a0, b0, a1, b1] in PRISMS {
        let d1 = edge_key(lab[a0], lab[b1]);
        let d2 = edge_key(lab[b0], lab[a1]);
        match (edges.contains(&d1), edges.contains(&d2)) {
            (true, false) => band.push(d1),
            (false, true) => band.push(d2),
            _ => return None,
        }
    }
    for choice in 0..16u32 {
        let inner = |a0: usize| -> (u32, u32) {
            let k = INNER.iter().position(|&(x, _)| x == a0).unwrap();
            let (x0, x1) = INNER[k];
            if choice >> (3 - k) & 1 == 0 {
                edge_key(lab[x0], lab[9])
            } else {
                edge_key(lab[x1], lab[8])
            }
        };
        let mut all = Vec::new();
        let ok = PRISMS.iter().zip(&band).all(|(&[a0, b0, a1, b1], &bd)| {
            let bot = [lab[a0], lab[b0], lab[8]];
            let top = [lab[a1], lab[b1], lab[9]];
            let found = prism_splits(bot, top).find(|tets| {
                diag_of(tets, [lab[a0], lab[b0], lab[a1], lab[b1]]) == bd
                    && diag_of(tets, [lab[a0], lab[8], lab[a1], lab[9]]) == inner(a0)
                    && diag_of(tets, [lab[b0], lab[8], lab[b1], lab[9]]) == inner(b0)
            });
            match found {
                Some(t) => {
                    all.extend(t);
                    true
                }
                None => false,
            }
        });
        if ok {
            return Some(all);
        }
    }
    None
}

impl BlockTriangulation {
    pub fn label(&self, l: usize) -> u32 {
        self.labels[l]
    }

    pub fn edge(&self, a: usize, b: usize) -> Face {
        Face::of(&[self.labels[a], self.labels[b]])
    }

    pub fn ball(&self) -> SimplicialComplex {
        close_downward(&self.tets)
    }

    /// Boundary triangles of the ball.
    pub fn boundary(&self) -> Vec<Face> {
        let mut count: BTreeMap<Face, usize> = BTreeMap::new();
        for t in &self.tets {
            for f in t.facets() {
                *count.entry(f).or_default() += 1;
            }
        }
        count.into_iter().filter(|&(_, n)| n == 1).map(|(f, _)| f).collect()
    }

    pub fn part(&self, part: BlockPart) -> Vec<Face> {
        let vs: Vec<u32> = part.labels().iter().map(|&l| self.labels[l]).collect();
        self.boundary().into_iter().filter(|f| f.vertices().iter().all(|v| vs.contains(v))).collect()
    }

    /// Faces of the ball that survive in `kind`.
    pub fn residue_faces(&self, kind: Residue) -> SimplicialComplex {
        let parts: &[BlockPart] = match kind {
            Residue::OpenFloor => &[BlockPart::T, BlockPart::S, BlockPart::C, BlockPart::D0, BlockPart::D1],
            Residue::KeepRectangles => &[BlockPart::F, BlockPart::T, BlockPart::S, BlockPart::C, BlockPart::D0],
            Residue::Corner01 => &[BlockPart::S, BlockPart::C, BlockPart::D1],
        };
        let mut gens: Vec<Face> = parts.iter().flat_map(|&p| self.part(p)).collect();
        match kind {
            Residue::KeepRectangles => gens.push(self.edge(8, 9)),
            Residue::Corner01 => gens.push(self.edge(0, 1)),
            Residue::OpenFloor => {}
        }
        close_downward(&gens)
    }

    /// `k` with the ball replaced by `kind`: every face of the ball outside the
    /// residue is removed, faces outside the ball are kept.
    pub fn residue_in(&self, k: &SimplicialComplex, kind: Residue) -> SimplicialComplex {
        let ball = self.ball();
        let keep = self.residue_faces(kind);
        k.restrict(|f| !ball.contains(f) || keep.contains(f))
    }
}
