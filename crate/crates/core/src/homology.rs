//! Integer simplicial homology through Smith normal forms.
//!
//! Everything is generic over the integer scalar; [`homology`] uses
//! arbitrary-precision integers.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

use crate::complex::{Face, SimplicialComplex};

pub trait Scalar: Clone + fmt::Debug + fmt::Display + Integer + Signed + FromPrimitive {}
impl<T: Clone + fmt::Debug + fmt::Display + Integer + Signed + FromPrimitive> Scalar for T {}

/// ∂_k with rows indexed by (k−1)-faces and columns by k-faces, both in
/// lexicographic order. Faces are oriented by their sorted vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub k: usize,
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    /// Sparse columns: `(row index, ±1)`.
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn to_dense<T: Scalar>(&self) -> Vec<Vec<T>> {
        let mut m = vec![vec![T::zero(); self.cols.len()]; self.rows.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                m[i][j] = T::from_i8(s).expect("small");
            }
        }
        m
    }

    /// True iff `self ∘ next` vanishes, where `next` is ∂_{k+1}.
    pub fn composes_to_zero(&self, next: &BoundaryMatrix) -> bool {
        next.columns.iter().all(|col| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(mid, s) in col {
                for &(i, t) in &self.columns[mid] {
                    *acc.entry(i).or_default() += (s * t) as i64;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// ∂_1, …, ∂_d of a d-dimensional complex.
pub fn boundary_matrices(k: &SimplicialComplex) -> Vec<BoundaryMatrix> {
    let d = k.dim().unwrap_or(0);
    let by_dim: Vec<Vec<Face>> = (0..=d).map(|i| k.dim_faces(i)).collect();
    (1..=d)
        .map(|dim| {
            let rows = by_dim[dim - 1].clone();
            let index: HashMap<&Face, usize> = rows.iter().enumerate().map(|(i, f)| (f, i)).collect();
            let cols = by_dim[dim].clone();
            let columns = cols
                .iter()
                .map(|f| {
                    let v = f.vertices();
                    let mut col: Vec<(usize, i8)> = (0..v.len())
                        .map(|i| {
                            let mut w = v.to_vec();
                            w.remove(i);
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            (index[&Face::from_sorted_unchecked(w)], sign)
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            BoundaryMatrix { k: dim, rows, cols, columns }
        })
        .collect()
}

/// Nonzero invariant factors d₁ | d₂ | … (all positive) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub invariant_factors: Vec<T>,
    pub rank: usize,
}

/// Dense Smith normal form by repeated row and column reduction.
#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form<T: Scalar>(m: &[Vec<T>]) -> SmithForm<T> {
    let mut a: Vec<Vec<T>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = a[t][j].clone() * q.clone();
                        a[i][j] = a[i][j].clone() - v;
                    }
                    if !a[i][t].is_zero() {
                        changed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = row[t].clone() * q.clone();
                        row[j] = row[j].clone() - v;
                    }
                    if !a[t][j].is_zero() {
                        changed = true;
                    }
                }
            }
            if !changed {
                // Divisibility: fold a row with a non-multiple into row t.
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(a[i][j].clone() % a[t][t].clone()).is_zero()));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] = a[t][j].clone() + v;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            let Some((pi, pj)) = smallest_entry(&a, t) else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    SmithForm { rank: diag.len(), invariant_factors: diag }
}

fn smallest_entry<T: Scalar>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith form of a sparse ±1 matrix: unit pivots are eliminated sparsely,
/// the leftover block goes through the dense algorithm.
pub fn sparse_smith<T: Scalar>(bm: &BoundaryMatrix) -> SmithForm<T> {
    let nrows = bm.rows.len();
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); nrows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); bm.cols.len()];
    for (j, col) in bm.columns.iter().enumerate() {
        for &(i, s) in col {
            rows[i].insert(j, T::from_i8(s).expect("small"));
            col_rows[j].insert(i);
        }
    }
    let mut units = 0usize;
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..col_rows.len() {
            let pivot = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].abs().is_one())
                .min_by_key(|&r| rows[r].len());
            let Some(r) = pivot else { continue };
            progress = true;
            units += 1;
            let prow = std::mem::take(&mut rows[r]);
            let u = prow[&c].clone();
            for &j in prow.keys() {
                col_rows[j].remove(&r);
            }
            let others: Vec<usize> = col_rows[c].iter().copied().collect();
            for o in others {
                let factor = rows[o][&c].clone() * u.clone();
                for (&j, v) in &prow {
                    let cur = rows[o].get(&j).cloned().unwrap_or_else(T::zero);
                    let new = cur - factor.clone() * v.clone();
                    if new.is_zero() {
                        rows[o].remove(&j);
                        col_rows[j].remove(&o);
                    } else {
                        rows[o].insert(j, new);
                        col_rows[j].insert(o);
                    }
                }
            }
            debug_assert!(col_rows[c].is_empty());
        }
    }
    let live_rows: Vec<usize> = (0..nrows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..col_rows.len()).filter(|&c| !col_rows[c].is_empty()).collect();
    let cindex: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let dense: Vec<Vec<T>> = live_rows
        .iter()
        .map(|&r| {
            let mut row = vec![T::zero(); live_cols.len()];
            for (j, v) in &rows[r] {
                row[cindex[j]] = v.clone();
            }
            row
        })
        .collect();
    let rest = smith_normal_form(&dense);
    let mut factors = vec![T::one(); units];
    factors.extend(rest.invariant_factors);
    factors.sort();
    SmithForm { rank: factors.len(), invariant_factors: factors }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup<T = BigInt> {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile<T = BigInt> {
    pub groups: Vec<HomologyGroup<T>>,
}

impl<T: Scalar> HomologyProfile<T> {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    pub fn is_point_like(&self) -> bool {
        self.is_torsion_free()
            && self.groups.first().is_some_and(|g| g.betti == 1)
            && self.groups.iter().skip(1).all(|g| g.betti == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }
}

impl<T: Scalar> fmt::Display for HomologyProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.groups.iter().enumerate() {
            let mut parts = Vec::new();
            if g.betti > 0 {
                parts.push(format!("Z^{}", g.betti));
            }
            parts.extend(g.torsion.iter().map(|d| format!("Z/{d}")));
            if parts.is_empty() {
                parts.push("0".into());
            }
            writeln!(f, "H_{k} = {}", parts.join(" ⊕ "))?;
        }
        Ok(())
    }
}

pub fn homology_with<T: Scalar>(k: &SimplicialComplex) -> HomologyProfile<T> {
    let f = k.f_vector();
    let smith: Vec<SmithForm<T>> = boundary_matrices(k).iter().map(sparse_smith).collect();
    let rank = |dim: usize| -> usize {
        if dim == 0 || dim > smith.len() {
            0
        } else {
            smith[dim - 1].rank
        }
    };
    let groups = (0..f.len())
        .map(|dim| {
            let torsion = if dim < smith.len() {
                smith[dim].invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
            } else {
                Vec::new()
            };
            HomologyGroup { betti: f[dim] - rank(dim) - rank(dim + 1), torsion }
        })
        .collect();
    HomologyProfile { groups }
}

pub fn homology(k: &SimplicialComplex) -> HomologyProfile {
    homology_with::<BigInt>(k)
}

pub fn is_point_like(k: &SimplicialComplex) -> bool {
    !k.is_empty() && homology(k).is_point_like()
}
