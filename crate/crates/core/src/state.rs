//! Mutable collapse engine shared by the verifier, the deciders and the
//! gadget scripts. Face ids follow lexicographic face order, so iterating ids
//! iterates faces in the canonical order.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{Face, SimplicialComplex};

pub(crate) struct CollapseState {
    faces: Vec<Face>,
    index: HashMap<Face, u32>,
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    alive: Vec<bool>,
    alive_count: usize,
    dim_counts: Vec<usize>,
    /// Currently free faces with their unique maximal coface.
    free: BTreeMap<u32, u32>,
    zobrist: Vec<u128>,
    hash: u128,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn face_key(f: &Face) -> u128 {
    let mut a = 0x243f_6a88_85a3_08d3u64;
    let mut b = 0x1319_8a2e_0370_7344u64;
    for &v in f.vertices() {
        a = splitmix(a ^ v as u64);
        b = splitmix(b.rotate_left(17) ^ (v as u64).wrapping_mul(0x9e37_79b9));
    }
    ((a as u128) << 64) | b as u128
}

impl CollapseState {
    pub fn new(k: &SimplicialComplex) -> Self {
        let faces: Vec<Face> = k.faces().iter().cloned().collect();
        let index: HashMap<Face, u32> =
            faces.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let n = faces.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut dim_counts = vec![0; k.dim().map_or(0, |d| d + 1)];
        for (i, f) in faces.iter().enumerate() {
            dim_counts[f.dim()] += 1;
            for g in f.facets() {
                let j = index[&g];
                down[i].push(j);
                up[j as usize].push(i as u32);
            }
        }
        let zobrist: Vec<u128> = faces.iter().map(face_key).collect();
        let hash = zobrist.iter().fold(0, |h, z| h ^ z);
        let mut st = CollapseState {
            faces,
            index,
            up,
            down,
            alive: vec![true; n],
            alive_count: n,
            dim_counts,
            free: BTreeMap::new(),
            zobrist,
            hash,
        };
        for i in 0..n as u32 {
            st.refresh(i);
        }
        st
    }

    pub fn id(&self, f: &Face) -> Option<u32> {
        self.index.get(f).copied()
    }

    pub fn face(&self, id: u32) -> &Face {
        &self.faces[id as usize]
    }

    pub fn is_alive(&self, id: u32) -> bool {
        self.alive[id as usize]
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.id(f).is_some_and(|i| self.is_alive(i))
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim_counts.iter().rposition(|&c| c > 0)
    }

    pub fn hash(&self) -> u128 {
        self.hash
    }

    /// Exact key of the current face set.
    pub fn alive_key(&self) -> Vec<u64> {
        let mut key = vec![0u64; self.alive.len().div_ceil(64)];
        for (i, &a) in self.alive.iter().enumerate() {
            if a {
                key[i / 64] |= 1 << (i % 64);
            }
        }
        key
    }

    pub fn cofaces(&self, id: u32) -> impl Iterator<Item = u32> + '_ {
        self.up[id as usize].iter().copied().filter(|&j| self.alive[j as usize])
    }

    pub fn is_maximal(&self, id: u32) -> bool {
        self.cofaces(id).next().is_none()
    }

    /// Up to `limit` distinct alive maximal faces containing `id`.
    fn maximal_cofaces(&self, id: u32, limit: usize) -> Vec<u32> {
        let mut found = Vec::new();
        let mut seen = vec![id];
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            let mut any = false;
            for j in self.cofaces(x) {
                any = true;
                if !seen.contains(&j) {
                    seen.push(j);
                    stack.push(j);
                }
            }
            if !any && x != id {
                found.push(x);
                if found.len() >= limit {
                    break;
                }
            }
        }
        found
    }

    /// The unique maximal coface of a free face, computed from scratch.
    pub fn free_partner(&self, id: u32) -> Option<u32> {
        if !self.alive[id as usize] || self.is_maximal(id) {
            return None;
        }
        let m = self.maximal_cofaces(id, 2);
        (m.len() == 1).then(|| m[0])
    }

    fn refresh(&mut self, id: u32) {
        match self.free_partner(id) {
            Some(t) => {
                self.free.insert(id, t);
            }
            None => {
                self.free.remove(&id);
            }
        }
    }

    pub fn partner(&self, id: u32) -> Option<u32> {
        self.free.get(&id).copied()
    }

    pub fn free_ids(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.free.iter().map(|(&s, &t)| (s, t))
    }

    pub fn free_pairs(&self) -> Vec<(Face, Face)> {
        self.free_ids()
            .map(|(s, t)| (self.faces[s as usize].clone(), self.faces[t as usize].clone()))
            .collect()
    }

    fn closure_ids(&self, id: u32) -> Vec<u32> {
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for &d in &self.down[out[i] as usize] {
                if !out.contains(&d) {
                    out.push(d);
                }
            }
            i += 1;
        }
        out
    }

    fn star_ids(&self, id: u32) -> Vec<u32> {
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for j in self.cofaces(out[i]) {
                if !out.contains(&j) {
                    out.push(j);
                }
            }
            i += 1;
        }
        out
    }

    fn set_alive(&mut self, id: u32, on: bool) {
        let i = id as usize;
        if self.alive[i] == on {
            return;
        }
        self.alive[i] = on;
        self.hash ^= self.zobrist[i];
        let d = self.faces[i].dim();
        if on {
            self.alive_count += 1;
            self.dim_counts[d] += 1;
        } else {
            self.alive_count -= 1;
            self.dim_counts[d] -= 1;
        }
    }

    /// Removes the star of a free face. Returns `(tau, removed ids)`, or
    /// `None` if the face is not free.
    pub fn collapse(&mut self, sigma: u32) -> Option<(u32, Vec<u32>)> {
        let tau = self.partner(sigma)?;
        let removed = self.star_ids(sigma);
        for &r in &removed {
            self.set_alive(r, false);
            self.free.remove(&r);
        }
        for x in self.closure_ids(tau) {
            if self.alive[x as usize] {
                self.refresh(x);
            }
        }
        Some((tau, removed))
    }

    /// Undoes a collapse returned by [`CollapseState::collapse`].
    pub fn restore(&mut self, tau: u32, removed: &[u32]) {
        for &r in removed {
            self.set_alive(r, true);
        }
        for x in self.closure_ids(tau) {
            self.refresh(x);
        }
    }

    /// Applies the step `(sigma, tau)` after checking it is a legal collapse.
    pub fn apply_step(&mut self, sigma: &Face, tau: &Face) -> Result<Vec<u32>, String> {
        let s = self
            .id(sigma)
            .filter(|&s| self.is_alive(s))
            .ok_or_else(|| format!("face {sigma} is not in the current complex"))?;
        match self.partner(s) {
            None => Err(format!("face {sigma} is not free")),
            Some(t) if &self.faces[t as usize] != tau => Err(format!(
                "unique maximal coface of {sigma} is {}, not {tau}",
                self.faces[t as usize]
            )),
            Some(_) => Ok(self.collapse(s).expect("free").1),
        }
    }

    pub fn alive_faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().zip(&self.alive).filter(|(_, a)| **a).map(|(f, _)| f)
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed(self.alive_faces().cloned().collect())
    }
}
