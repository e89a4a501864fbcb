//! Oracles and generators shared by the integration tests. Nothing here calls
//! the library's collapse machinery; faces are plain vertex sets.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use collapsibility::cnf::{CnfFormula, Literal};
use collapsibility::complex::{close_downward, Face, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Faces = BTreeSet<Vec<u32>>;

pub fn faces_of(k: &SimplicialComplex) -> Faces {
    k.faces().iter().map(|f| f.vertices().to_vec()).collect()
}

pub fn complex_of(faces: &Faces) -> SimplicialComplex {
    let gens: Vec<Face> = faces.iter().map(|f| Face::of(f)).collect();
    close_downward(&gens)
}

fn subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|v| b.contains(v))
}

pub fn maximal(k: &Faces) -> Vec<&Vec<u32>> {
    k.iter().filter(|f| !k.iter().any(|g| g.len() > f.len() && subset(f, g))).collect()
}

/// (σ, τ) with τ the only maximal face containing σ, σ ≠ τ.
pub fn free_pairs(k: &Faces) -> Vec<(Vec<u32>, Vec<u32>)> {
    let max = maximal(k);
    let mut out = Vec::new();
    for s in k {
        let over: Vec<&&Vec<u32>> = max.iter().filter(|m| subset(s, m)).collect();
        if over.len() == 1 && over[0].len() > s.len() {
            out.push((s.clone(), (*over[0]).clone()));
        }
    }
    out
}

/// Removes every face containing σ.
pub fn collapse(k: &Faces, sigma: &[u32]) -> Faces {
    k.iter().filter(|f| !subset(sigma, f)).cloned().collect()
}

pub fn dim(k: &Faces) -> Option<usize> {
    k.iter().map(|f| f.len() - 1).max()
}

/// Memo-free brute force over every collapse sequence.
pub fn naive_collapsible(k: &Faces) -> bool {
    if k.len() == 1 {
        return true;
    }
    free_pairs(k).iter().any(|(s, _)| naive_collapsible(&collapse(k, s)))
}

/// Exhaustive (memoised) search: can collapses remove every top face?
pub fn reaches_lower_dim(k: &Faces) -> bool {
    let d = dim(k).unwrap_or(0);
    fn go(k: &Faces, d: usize, dead: &mut HashSet<Faces>) -> bool {
        if dim(k).is_none_or(|e| e < d) {
            return true;
        }
        if dead.contains(k) {
            return false;
        }
        for (s, t) in free_pairs(k) {
            if t.len() == d + 1 && go(&collapse(k, &s), d, dead) {
                return true;
            }
        }
        dead.insert(k.clone());
        false
    }
    go(k, d, &mut HashSet::new())
}

/// Relabelling-invariant key of a complex on vertices 0..n.
fn canonical(max: &[Vec<u32>], n: u32) -> Vec<Vec<u32>> {
    let mut perm: Vec<u32> = (0..n).collect();
    let mut best: Option<Vec<Vec<u32>>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut img: Vec<Vec<u32>> = max
            .iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| p[v as usize]).collect();
                g.sort();
                g
            })
            .collect();
        img.sort();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    });
    best.unwrap()
}

fn permute(p: &mut Vec<u32>, i: usize, f: &mut impl FnMut(&[u32])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// Every simplicial complex on at most five vertices, given by its maximal
/// faces, up to relabelling.
pub fn all_complexes_up_to_5() -> Vec<Faces> {
    let subsets: Vec<Vec<u32>> =
        (1u32..32).map(|m| (0..5).filter(|i| m >> i & 1 == 1).collect()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    fn rec(
        i: usize,
        subsets: &[Vec<u32>],
        chosen: &mut Vec<Vec<u32>>,
        seen: &mut BTreeSet<Vec<Vec<u32>>>,
        out: &mut Vec<Faces>,
    ) {
        if i == subsets.len() {
            if chosen.is_empty() {
                return;
            }
            let key = canonical(chosen, 5);
            if seen.insert(key.clone()) {
                let gens: Vec<Face> = key.iter().map(|f| Face::of(f)).collect();
                out.push(faces_of(&close_downward(&gens)));
            }
            return;
        }
        rec(i + 1, subsets, chosen, seen, out);
        let s = &subsets[i];
        if chosen.iter().all(|c| !subset(c, s) && !subset(s, c)) {
            chosen.push(s.clone());
            rec(i + 1, subsets, chosen, seen, out);
            chosen.pop();
        }
    }
    rec(0, &subsets, &mut chosen, &mut seen, &mut out);
    out
}

/// A random pure-ish 2-complex on at most eight vertices: some triangles and
/// a few stray edges.
pub fn random_2complex(rng: &mut impl Rng) -> Faces {
    let n = rng.gen_range(3..=8u32);
    let mut tris = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                tris.push(vec![a, b, c]);
            }
        }
    }
    tris.shuffle(rng);
    let m = rng.gen_range(1..=tris.len().min(12));
    let mut gens: Vec<Face> = tris[..m].iter().map(|t| Face::of(t)).collect();
    for _ in 0..rng.gen_range(0..3) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            gens.push(Face::of(&[a, b]));
        }
    }
    faces_of(&close_downward(&gens))
}

pub fn simplex(d: u32) -> Faces {
    faces_of(&close_downward(&[Face::of(&(0..=d).collect::<Vec<_>>())]))
}

/// All formulas over x1, x2, x3 with one to three distinct clauses.
pub fn three_variable_corpus() -> Vec<CnfFormula> {
    let clauses: Vec<[Literal; 3]> = (0..8u32)
        .map(|s| {
            let l = |v: u32| if s >> (v - 1) & 1 == 1 { Literal::neg(v) } else { Literal::pos(v) };
            [l(1), l(2), l(3)]
        })
        .collect();
    let mut out = Vec::new();
    for a in 0..8 {
        out.push(vec![clauses[a]]);
        for b in a + 1..8 {
            out.push(vec![clauses[a], clauses[b]]);
            for c in b + 1..8 {
                out.push(vec![clauses[a], clauses[b], clauses[c]]);
            }
        }
    }
    out.into_iter().map(|cs| CnfFormula::new(3, cs).unwrap()).collect()
}

/// A random formula over `n` variables with one to `max_clauses` clauses.
pub fn random_formula(rng: &mut impl Rng, n: u32, max_clauses: usize) -> CnfFormula {
    let m = rng.gen_range(1..=max_clauses);
    let mut clauses = Vec::new();
    let vars: Vec<u32> = (1..=n).collect();
    for _ in 0..m {
        let pick: Vec<u32> = vars.choose_multiple(rng, 3).copied().collect();
        let lits = pick.iter().map(|&v| if rng.gen() { Literal::pos(v) } else { Literal::neg(v) }).collect::<Vec<_>>();
        clauses.push([lits[0], lits[1], lits[2]]);
    }
    CnfFormula::new(n, clauses).unwrap()
}

fn proper_subfaces(f: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let n = f.len();
    (1..(1u32 << n) - 1).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| f[i]).collect())
}

/// Replays collapse steps with a count of alive proper cofaces per face.
pub struct Replayer {
    pub alive: HashSet<Vec<u32>>,
    up: std::collections::HashMap<Vec<u32>, usize>,
}

impl Replayer {
    pub fn new(k: &SimplicialComplex) -> Self {
        let alive: HashSet<Vec<u32>> = k.faces().iter().map(|f| f.vertices().to_vec()).collect();
        let mut up = std::collections::HashMap::new();
        for f in &alive {
            up.entry(f.clone()).or_insert(0);
            for s in proper_subfaces(f) {
                *up.entry(s).or_insert(0) += 1;
            }
        }
        Replayer { alive, up }
    }

    /// Legal iff σ ⊊ τ, both alive, and every alive coface of σ lies in τ.
    pub fn step(&mut self, sigma: &[u32], tau: &[u32]) -> Result<(), String> {
        if sigma.len() >= tau.len() || !subset(sigma, tau) {
            return Err(format!("{sigma:?} is not a proper face of {tau:?}"));
        }
        if !self.alive.contains(tau) {
            return Err(format!("{tau:?} is not alive"));
        }
        let extra: Vec<u32> = tau.iter().copied().filter(|v| !sigma.contains(v)).collect();
        let mut between = Vec::new();
        for m in 0..1u32 << extra.len() {
            let mut f: Vec<u32> = sigma.to_vec();
            f.extend((0..extra.len()).filter(|i| m >> i & 1 == 1).map(|i| extra[i]));
            f.sort();
            if !self.alive.contains(&f) {
                return Err(format!("{f:?} missing below {tau:?}"));
            }
            between.push(f);
        }
        if self.up[sigma] + 1 != between.len() {
            return Err(format!("{sigma:?} has cofaces outside {tau:?}"));
        }
        for f in between {
            self.alive.remove(&f);
            for s in proper_subfaces(&f) {
                *self.up.get_mut(&s).unwrap() -= 1;
            }
        }
        Ok(())
    }

    pub fn faces(&self) -> Faces {
        self.alive.iter().cloned().collect()
    }
}

/// Replays a certificate and returns the end complex, or the failing step.
pub fn replay_oracle(
    k: &SimplicialComplex,
    steps: &[collapsibility::CollapseStep],
) -> Result<Faces, String> {
    let mut r = Replayer::new(k);
    for (i, s) in steps.iter().enumerate() {
        r.step(s.sigma.vertices(), s.tau.vertices()).map_err(|e| format!("step {i}: {e}"))?;
    }
    Ok(r.faces())
}

/// Every σ whose cofaces (σ included) have a unique maximal element τ ≠ σ.
pub fn free_faces_oracle(k: &SimplicialComplex) -> Faces {
    let faces = faces_of(k);
    let mut co: std::collections::HashMap<Vec<u32>, Vec<&Vec<u32>>> = std::collections::HashMap::new();
    for f in &faces {
        for s in proper_subfaces(f) {
            co.entry(s).or_default().push(f);
        }
    }
    let mut out = Faces::new();
    for (s, ups) in co {
        let top = ups.iter().max_by_key(|f| f.len()).unwrap();
        if ups.iter().all(|f| subset(f, top)) {
            out.insert(s);
        }
    }
    out
}

/// Acyclicity of a matching via Kahn's algorithm on the modified Hasse
/// diagram: down-edges τ → facet, reversed on matched pairs.
pub fn matching_is_acyclic(pairs: &[(Vec<u32>, Vec<u32>)], faces: &Faces) -> bool {
    let idx: std::collections::HashMap<&Vec<u32>, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let matched: HashSet<(usize, usize)> = pairs.iter().map(|(a, b)| (idx[a], idx[b])).collect();
    let mut adj = vec![Vec::new(); faces.len()];
    let mut indeg = vec![0usize; faces.len()];
    for (j, f) in faces.iter().enumerate() {
        if f.len() < 2 {
            continue;
        }
        for i in 0..f.len() {
            let mut g = f.clone();
            g.remove(i);
            let gi = idx[&g];
            let (a, b) = if matched.contains(&(gi, j)) { (gi, j) } else { (j, gi) };
            adj[a].push(b);
            indeg[b] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..faces.len()).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(u) = queue.pop() {
        seen += 1;
        for &v in &adj[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push(v);
            }
        }
    }
    seen == faces.len()
}

/// Checks the library's boundary matrices entry by entry against the
/// alternating-sign formula, then multiplies consecutive ones.
pub fn boundary_squared_vanishes(k: &SimplicialComplex) -> bool {
    let ms = collapsibility::homology::boundary_matrices(k);
    for m in &ms {
        for (j, col) in m.columns.iter().enumerate() {
            let tau = m.cols[j].vertices();
            if col.len() != tau.len() {
                return false;
            }
            for &(i, s) in col {
                let row = m.rows[i].vertices();
                let Some(gap) = (0..tau.len()).find(|&g| {
                    let mut t = tau.to_vec();
                    t.remove(g);
                    t == row
                }) else {
                    return false;
                };
                if s as i64 != if gap % 2 == 0 { 1 } else { -1 } {
                    return false;
                }
            }
        }
    }
    ms.windows(2).all(|w| {
        w[1].columns.iter().all(|col| {
            let mut acc: std::collections::HashMap<usize, i64> = std::collections::HashMap::new();
            for &(mid, s) in col {
                for &(i, t) in &w[0].columns[mid] {
                    *acc.entry(i).or_default() += s as i64 * t as i64;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    })
}

pub fn euler(faces: &Faces) -> i64 {
    faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
}
