//! Finite windows of the complex of embedded `W¹`s, flag complexes, links
//! and integral simplicial homology.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::rank::{rank_certificate, SearchBudget};
use crate::wall::{WallForm, WallMorphism};

/// All morphisms `W¹ → M` whose generator images have coordinates in
/// `[-bound, bound]` (before reduction modulo torsion), deduplicated and
/// sorted by `(x, y)`.
pub fn enumerate_vertices(m: &Arc<WallForm>, bound: u32) -> Result<Vec<WallMorphism>> {
    let b = bound as i64;
    let (nm, np) = (m.minus().ngens(), m.plus().ngens());
    if nm == 0 || np == 0 {
        return Ok(vec![]);
    }
    let box_elems = |n: usize, group: &crate::group::FgAbGroup| -> Vec<Vec<BigInt>> {
        let mut out = BTreeSet::new();
        let total = (2 * b + 1).pow(n as u32);
        for mut code in 0..total {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(BigInt::from(code % (2 * b + 1) - b));
                code /= 2 * b + 1;
            }
            out.insert(group.canonicalize(&v));
        }
        out.into_iter().collect()
    };
    let xs: Vec<Vec<BigInt>> = box_elems(nm, m.minus())
        .into_iter()
        .filter(|x| m.param().g().minus().is_zero_elem(&m.alpha_minus(x)))
        .collect();
    let ys: Vec<Vec<BigInt>> = box_elems(np, m.plus())
        .into_par_iter()
        .filter(|y| m.h().is_zero_elem(&m.mu(y, y)) && m.param().g().plus().is_zero_elem(&m.alpha_plus(y)))
        .collect();
    let one = BigInt::one();
    let mut pairs: Vec<(Vec<BigInt>, Vec<BigInt>)> = xs
        .par_iter()
        .flat_map_iter(|x| {
            ys.iter()
                .filter(|y| m.lambda(x, y) == one)
                .map(|y| (x.clone(), y.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    pairs.sort();
    pairs.dedup();
    let w1 = Arc::new(WallForm::standard(1, m.param())?);
    pairs
        .into_par_iter()
        .map(|(x, y)| vertex(&w1, m, x, y))
        .collect()
}

fn vertex(w1: &Arc<WallForm>, m: &Arc<WallForm>, x: Vec<BigInt>, y: Vec<BigInt>) -> Result<WallMorphism> {
    let h = m.h();
    let mut plus = Vec::with_capacity(h.ngens() + 1);
    for k in 0..h.ngens() {
        plus.push(m.tau(&x, &h.generator(k)));
    }
    plus.push(y);
    WallMorphism::from_images(w1.clone(), m.clone(), &[x], &plus)
}

/// Whether the images of two morphisms `W¹ → M` are orthogonal:
/// `λ(x1, y2) = λ(x2, y1) = 0` and `μ(y1, y2) = 0`. The remaining pairings
/// vanish by axioms i and ii, and the images then meet in zero because `W¹`
/// is non-singular.
pub fn vertices_orthogonal(m: &WallForm, f1: &WallMorphism, f2: &WallMorphism) -> bool {
    let (x1, y1) = f1.standard_images();
    let (x2, y2) = f2.standard_images();
    m.lambda(&x1[0], &y2[0]).is_zero() && m.lambda(&x2[0], &y1[0]).is_zero() && m.h().is_zero_elem(&m.mu(&y1[0], &y2[0]))
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn ones_after(b: &Bits, after: Option<usize>) -> Vec<usize> {
    let start = after.map_or(0, |a| a + 1);
    let mut out = Vec::new();
    for (w, word) in b.iter().enumerate() {
        let mut word = *word;
        while word != 0 {
            let t = word.trailing_zeros() as usize;
            let i = w * 64 + t;
            if i >= start {
                out.push(i);
            }
            word &= word - 1;
        }
    }
    out
}

/// The flag complex of a graph, built up to dimension `max_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueComplex {
    n: usize,
    adjacency: Vec<Bits>,
    max_dim: usize,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl CliqueComplex {
    pub fn from_adjacency(adjacency: &[Vec<bool>], max_dim: usize) -> Self {
        let n = adjacency.len();
        let rows = adjacency
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut b = vec![0u64; words(n)];
                for (j, &a) in row.iter().enumerate() {
                    if a && i != j {
                        set_bit(&mut b, j);
                    }
                }
                b
            })
            .collect();
        Self::from_bits(n, rows, max_dim)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)], max_dim: usize) -> Self {
        let mut rows = vec![vec![0u64; words(n)]; n];
        for &(i, j) in edges {
            if i != j {
                set_bit(&mut rows[i], j);
                set_bit(&mut rows[j], i);
            }
        }
        Self::from_bits(n, rows, max_dim)
    }

    fn from_bits(n: usize, adjacency: Vec<Bits>, max_dim: usize) -> Self {
        let per_vertex: Vec<Vec<Vec<Vec<usize>>>> = (0..n)
            .into_par_iter()
            .map(|v| {
                let mut out = vec![Vec::new(); max_dim + 1];
                let mut stack = vec![v];
                extend(&adjacency, &mut stack, adjacency[v].clone(), max_dim, &mut out);
                out
            })
            .collect();
        let mut simplices = vec![Vec::new(); max_dim + 1];
        for pv in per_vertex {
            for (k, list) in pv.into_iter().enumerate() {
                simplices[k].extend(list);
            }
        }
        CliqueComplex {
            n,
            adjacency,
            max_dim,
            simplices,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        bit(&self.adjacency[i], j)
    }

    pub fn adjacency_rows(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.adjacent(i, j)).collect()).collect()
    }

    /// The `k`-simplices as sorted vertex lists in lexicographic order.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.simplices(1)
    }

    pub fn simplex_counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn is_simplex(&self, s: &[usize]) -> bool {
        s.len() <= self.max_dim + 1
            && s.iter().all(|&v| v < self.n)
            && s.iter().enumerate().all(|(a, &u)| s[a + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    /// The link of a simplex (the empty simplex gives the whole complex),
    /// with the original index of each link vertex.
    pub fn link(&self, simplex: &[usize]) -> Result<(CliqueComplex, Vec<usize>)> {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != simplex.len() || !self.is_simplex(&s) {
            return Err(Error::SimplexNotFound);
        }
        let mut common = vec![u64::MAX; words(self.n)];
        for &v in &s {
            common = and(&common, &self.adjacency[v]);
        }
        let verts: Vec<usize> = ones_after(&common, None).into_iter().filter(|&v| v < self.n).collect();
        let index: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let m = verts.len();
        let rows = verts
            .iter()
            .map(|&v| {
                let mut b = vec![0u64; words(m)];
                for u in ones_after(&and(&self.adjacency[v], &common), None) {
                    if let Some(&j) = index.get(&u) {
                        set_bit(&mut b, j);
                    }
                }
                b
            })
            .collect();
        Ok((CliqueComplex::from_bits(m, rows, self.max_dim.saturating_sub(s.len())), verts))
    }

    fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut count = self.n;
        for e in self.edges() {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// Integral homology in degrees `0..=max_degree`.
    pub fn homology(&self, max_degree: usize) -> Result<HomologyReport> {
        if max_degree >= self.max_dim {
            return Err(Error::InvalidInput(format!(
                "homology through degree {max_degree} needs simplices of dimension {}, built up to {}",
                max_degree + 1,
                self.max_dim
            )));
        }
        let mut ranks = vec![0usize; max_degree + 2];
        let mut torsion = vec![Vec::new(); max_degree + 1];
        ranks[1] = self.n - self.components();
        let boundary: Vec<(usize, usize, Vec<BigInt>)> = (2..=max_degree + 1)
            .into_par_iter()
            .map(|k| {
                let (r, t) = reduce(boundary_matrix(self.simplices(k - 1), self.simplices(k)), self.simplices(k - 1).len());
                (k, r, t)
            })
            .collect();
        for (k, r, t) in boundary {
            ranks[k] = r;
            torsion[k - 1] = t;
        }
        let counts = self.simplex_counts();
        let betti = (0..=max_degree)
            .map(|k| counts.get(k).copied().unwrap_or(0) - ranks[k] - ranks[k + 1])
            .collect();
        Ok(HomologyReport {
            betti,
            torsion,
            simplex_counts: counts,
        })
    }

    /// Whether reduced homology vanishes through degree `k` (with `k = -1`
    /// meaning non-empty and `k ≤ -2` always true).
    pub fn homologically_connected(&self, k: i64) -> Result<bool> {
        if k <= -2 {
            return Ok(true);
        }
        if self.n == 0 {
            return Ok(false);
        }
        if k == -1 {
            return Ok(true);
        }
        let r = self.homology(k as usize)?;
        Ok(r.reduced_vanishes(k as usize))
    }

    /// Edge-list text: a header `n m` then one `i j` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges().len());
        for e in self.edges() {
            s.push_str(&format!("{} {}\n", e[0], e[1]));
        }
        s
    }
}

fn extend(adj: &[Bits], stack: &mut Vec<usize>, common: Bits, max_dim: usize, out: &mut [Vec<Vec<usize>>]) {
    out[stack.len() - 1].push(stack.clone());
    if stack.len() > max_dim {
        return;
    }
    let last = *stack.last().expect("nonempty");
    for v in ones_after(&common, Some(last)) {
        stack.push(v);
        extend(adj, stack, and(&common, &adj[v]), max_dim, out);
        stack.pop();
    }
}

fn boundary_matrix(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Vec<Vec<(usize, BigInt)>> {
    let index: HashMap<&[usize], usize> = lower.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    upper
        .iter()
        .map(|s| {
            let mut col: Vec<(usize, BigInt)> = (0..s.len())
                .map(|i| {
                    let mut face = s.clone();
                    face.remove(i);
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    (index[face.as_slice()], sign)
                })
                .collect();
            col.sort_by_key(|e| e.0);
            col
        })
        .collect()
}

fn axpy(target: &[(usize, BigInt)], factor: &BigInt, pivot: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let take_t = j >= pivot.len() || (i < target.len() && target[i].0 < pivot[j].0);
        let take_p = i >= target.len() || (j < pivot.len() && pivot[j].0 < target[i].0);
        if take_t {
            out.push(target[i].clone());
            i += 1;
        } else if take_p {
            out.push((pivot[j].0, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - factor * &pivot[j].1;
            if !v.is_zero() {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank and nontrivial invariant factors of a sparse integer matrix given
/// by columns: unit pivots are eliminated sparsely, the rest goes to SNF.
fn reduce(mut cols: Vec<Vec<(usize, BigInt)>>, nrows: usize) -> (usize, Vec<BigInt>) {
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nrows];
    for (c, col) in cols.iter().enumerate() {
        for (r, _) in col {
            rows[*r].insert(c);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut rank = 0;
    loop {
        let mut progress = false;
        for c in 0..cols.len() {
            if !alive[c] || cols[c].is_empty() {
                continue;
            }
            let Some(pos) = cols[c].iter().position(|(_, e)| e.abs().is_one()) else {
                continue;
            };
            let (r, e) = cols[c][pos].clone();
            let pivot = std::mem::take(&mut cols[c]);
            for (rr, _) in &pivot {
                rows[*rr].remove(&c);
            }
            alive[c] = false;
            let others: Vec<usize> = rows[r].iter().copied().collect();
            for c2 in others {
                let e2 = cols[c2].iter().find(|(rr, _)| *rr == r).map(|(_, v)| v.clone()).expect("indexed entry");
                let factor = &e2 * &e;
                let new = axpy(&cols[c2], &factor, &pivot);
                for (rr, _) in &cols[c2] {
                    rows[*rr].remove(&c2);
                }
                for (rr, _) in &new {
                    rows[*rr].insert(c2);
                }
                cols[c2] = new;
            }
            rank += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest_cols: Vec<usize> = (0..cols.len()).filter(|&c| alive[c] && !cols[c].is_empty()).collect();
    if rest_cols.is_empty() {
        return (rank, vec![]);
    }
    let rest_rows: Vec<usize> = {
        let set: BTreeSet<usize> = rest_cols.iter().flat_map(|&c| cols[c].iter().map(|e| e.0)).collect();
        set.into_iter().collect()
    };
    let rindex: HashMap<usize, usize> = rest_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = IntMatrix::zeros(rest_rows.len(), rest_cols.len());
    for (j, &c) in rest_cols.iter().enumerate() {
        for (r, v) in &cols[c] {
            dense[(rindex[r], j)] = v.clone();
        }
    }
    let inv = linalg::invariant_factors(&dense);
    let nonzero: Vec<BigInt> = inv.into_iter().filter(|d| !d.is_zero()).collect();
    let torsion = nonzero.iter().filter(|d| !d.is_one()).cloned().collect();
    (rank + nonzero.len(), torsion)
}

/// Betti numbers and torsion coefficients by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    pub simplex_counts: Vec<usize>,
}

impl HomologyReport {
    pub fn max_degree(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    /// Reduced homology vanishes in degrees `0..=k`.
    pub fn reduced_vanishes(&self, k: usize) -> bool {
        (0..=k.min(self.max_degree())).all(|i| {
            let b = if i == 0 { self.betti[0] == 1 } else { self.betti[i] == 0 };
            b && self.torsion[i].is_empty()
        })
    }

    /// `Σ (-1)^k · #k-simplices` over the built skeleton.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplex_counts
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Aligned text table, one row per degree.
    pub fn to_table(&self) -> String {
        let mut s = String::from("degree  betti  torsion\n");
        for (k, b) in self.betti.iter().enumerate() {
            let t: Vec<String> = self.torsion[k].iter().map(|d| format!("Z/{d}")).collect();
            let t = if t.is_empty() { "-".to_string() } else { t.join(" + ") };
            s.push_str(&format!("{k:>6}  {b:>5}  {t}\n"));
        }
        s
    }
}

/// A finite window of the complex of morphisms `W¹ → M`.
#[derive(Clone, Debug)]
pub struct FormComplex {
    pub bound: u32,
    pub vertices: Vec<WallMorphism>,
    pub complex: CliqueComplex,
}

/// The flag complex on `vertices` with orthogonality as adjacency.
pub fn build_complex(vertices: &[WallMorphism], m: &WallForm, max_dim: usize) -> CliqueComplex {
    let images: Vec<(Vec<BigInt>, Vec<BigInt>)> = vertices
        .iter()
        .map(|f| {
            let (x, y) = f.standard_images();
            (x[0].clone(), y[0].clone())
        })
        .collect();
    let n = images.len();
    let rows: Vec<Bits> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut b = vec![0u64; words(n)];
            let (x1, y1) = &images[i];
            for (j, (x2, y2)) in images.iter().enumerate() {
                if i != j
                    && m.lambda(x1, y2).is_zero()
                    && m.lambda(x2, y1).is_zero()
                    && m.h().is_zero_elem(&m.mu(y1, y2))
                {
                    set_bit(&mut b, j);
                }
            }
            b
        })
        .collect();
    CliqueComplex::from_bits(n, rows, max_dim)
}

pub fn form_complex(m: &Arc<WallForm>, bound: u32, max_dim: usize) -> Result<FormComplex> {
    let vertices = enumerate_vertices(m, bound)?;
    let complex = build_complex(&vertices, m, max_dim);
    Ok(FormComplex {
        bound,
        vertices,
        complex,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmEntry {
    /// Empty for the empty simplex, whose link is the whole complex.
    pub simplex: Vec<usize>,
    pub dim: i64,
    /// Required connectivity `n - dim - 2`.
    pub required: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmReport {
    pub n: i64,
    pub entries: Vec<LcmEntry>,
    pub pass: bool,
}

/// For every simplex `σ` of dimension `l` (including the empty simplex,
/// `l = -1`) with `n - l - 2 ≥ -1`: is the link `(n - l - 2)`-connected in
/// homology? The complex must be built through dimension `n`.
pub fn lcm_report(x: &CliqueComplex, n: i64) -> Result<LcmReport> {
    if n >= 0 && (x.max_dim as i64) < n {
        return Err(Error::InvalidInput(format!("complex must be built through dimension {n}")));
    }
    let mut entries = Vec::new();
    let mut simplices: Vec<Vec<usize>> = vec![vec![]];
    for l in 0..=n.max(-1) {
        simplices.extend(x.simplices(l as usize).iter().cloned());
    }
    for s in simplices {
        let dim = s.len() as i64 - 1;
        let required = n - dim - 2;
        if required < -1 {
            continue;
        }
        let pass = if required == -1 {
            if s.is_empty() {
                x.n > 0
            } else {
                let (lk, _) = x.link(&s)?;
                lk.n > 0
            }
        } else {
            let (lk, _) = x.link(&s)?;
            lk.homologically_connected(required)?
        };
        entries.push(LcmEntry {
            simplex: s,
            dim,
            required,
            pass,
        });
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(LcmReport { n, entries, pass })
}

/// Evidence about the connectivity of the complex of `W¹`s in `M`, all
/// conclusions relative to the coefficient bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub bound: u32,
    pub g: usize,
    pub d: usize,
    pub vertices: usize,
    pub edges: usize,
    pub nonempty: bool,
    pub homology: HomologyReport,
    /// `g ≥ 2 + d`.
    pub nonempty_expected: bool,
    /// `g ≥ 4 + d`.
    pub connected_expected: bool,
    /// `⌊(g - 4 - d) / 2⌋`, the degree through which reduced homology is expected to vanish.
    pub vanishing_degree: i64,
    /// Whether the observations agree with every expectation above.
    pub consistent: bool,
}

impl ConnectivityReport {
    pub fn label(&self) -> String {
        format!("EVIDENCE-AT-BOUND-{}", self.bound)
    }
}

/// `g` is a known lower bound for the stable rank of `M`; `None` uses the
/// rank certificate found with the default budget.
pub fn connectivity_report(m: &Arc<WallForm>, g: Option<usize>, bound: u32, max_degree: usize) -> Result<ConnectivityReport> {
    let g = match g {
        Some(g) => g,
        None => rank_certificate(m, &SearchBudget::default())?.lower,
    };
    let d = m.h().ngens();
    let vanishing_degree = (g as i64 - 4 - d as i64).div_euclid(2);
    let degree = vanishing_degree.clamp(0, max_degree as i64) as usize;
    let fc = form_complex(m, bound, degree + 1)?;
    let homology = fc.complex.homology(degree)?;
    let nonempty = fc.complex.n > 0;
    let nonempty_expected = g >= 2 + d;
    let connected_expected = g >= 4 + d;
    let consistent = (!nonempty_expected || nonempty)
        && (!connected_expected || homology.betti[0] == 1)
        && (vanishing_degree < 0 || homology.reduced_vanishes(degree));
    Ok(ConnectivityReport {
        bound,
        g,
        d,
        vertices: fc.complex.n,
        edges: fc.complex.edges().len(),
        nonempty,
        homology,
        nonempty_expected,
        connected_expected,
        vanishing_degree,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FgAbGroup;
    use crate::wall::FormParameter;

    fn square() -> CliqueComplex {
        CliqueComplex::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 2)
    }

    #[test]
    fn small_homology() {
        let c = square();
        assert_eq!(c.homology(1).unwrap().betti, vec![1, 1]);
        let full = CliqueComplex::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4);
        assert_eq!(full.homology(3).unwrap().betti, vec![1, 0, 0, 0]);
        let two = CliqueComplex::from_edges(2, &[], 1);
        assert_eq!(two.homology(0).unwrap().betti, vec![2]);
    }

    #[test]
    fn links() {
        let full = CliqueComplex::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 3);
        let (lk, verts) = full.link(&[0]).unwrap();
        assert_eq!(verts, vec![1, 2, 3]);
        assert_eq!(lk.simplices(2).len(), 1);
        let (lk, _) = square().link(&[0]).unwrap();
        assert_eq!((lk.num_vertices(), lk.edges().len()), (2, 0));
        assert!(matches!(square().link(&[0, 2]), Err(Error::SimplexNotFound)));
    }

    #[test]
    fn w1_vertices() {
        let p = FormParameter::trivial(&FgAbGroup::trivial(), -1);
        let w1 = Arc::new(WallForm::standard(1, &p).unwrap());
        let v = enumerate_vertices(&w1, 1).unwrap();
        assert_eq!(v.len(), 2);
        let c = build_complex(&v, &w1, 1);
        assert!(c.edges().is_empty());
        let z = Arc::new(WallForm::zero(&p));
        assert!(enumerate_vertices(&z, 2).unwrap().is_empty());
    }

    #[test]
    fn lcm_examples() {
        let full5: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        let c = CliqueComplex::from_edges(5, &full5, 2);
        assert!(lcm_report(&c, 2).unwrap().pass);
        let two_edges = CliqueComplex::from_edges(4, &[(0, 1), (2, 3)], 1);
        let r = lcm_report(&two_edges, 1).unwrap();
        assert!(!r.pass);
        assert!(!r.entries[0].pass && r.entries[0].simplex.is_empty());
    }

    #[test]
    fn torsion_detected() {
        let m = vec![vec![(0, BigInt::from(2))]];
        assert_eq!(reduce(m, 1), (1, vec![BigInt::from(2)]));
    }
}
