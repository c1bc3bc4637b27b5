//! Certified lower bounds for the rank and stable rank of a Wall form.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::wall::{perp_sum, SubWallForm, WallForm, WallMorphism};

/// Search limits: coefficients in `[-bound, bound]`, at most `max_nodes`
/// candidate elements tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub bound: u32,
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            bound: 1,
            max_nodes: 2_000_000,
        }
    }
}

/// A morphism `W^lower → W` together with the trivial upper bound.
#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub lower: usize,
    pub upper: usize,
    pub witness: WallMorphism,
    pub budget_exhausted: bool,
    pub nodes: u64,
}

impl RankCertificate {
    pub fn exact(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Clone, Debug)]
pub struct StableRankCertificate {
    /// Best value of `k - j` found.
    pub lower: i64,
    /// The `j` used for `lower`.
    pub j: usize,
    /// Rank certificate for `W ⊥ W^j`.
    pub certificate: RankCertificate,
    pub upper: usize,
    pub budget_exhausted: bool,
}

enum Outcome {
    Found(Vec<BigInt>, Vec<BigInt>),
    NotFound,
    Exhausted,
}

/// Calls `f` on every vector in `[-b, b]^n` of L1 norm `t`, in lexicographic order.
fn for_each_of_norm(n: usize, b: i64, t: i64, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    fn go(pos: usize, n: usize, b: i64, rest: i64, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if pos == n {
            return if rest == 0 { f(cur) } else { true };
        }
        let m = b.min(rest);
        for v in -m..=m {
            cur[pos] = v;
            if !go(pos + 1, n, b, rest - v.abs(), cur, f) {
                return false;
            }
        }
        cur[pos] = 0;
        true
    }
    let mut cur = vec![0; n];
    go(0, n, b, t, &mut cur, f)
}

/// Calls `f` on nonzero vectors of `[-b, b]^n` ordered by L1 norm, then
/// lexicographically. Stops when `f` returns `false`.
fn for_each_nonzero(n: usize, b: i64, f: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    for t in 1..=(n as i64) * b {
        if !for_each_of_norm(n, b, t, f) {
            return false;
        }
    }
    true
}

fn combine(gens: &[Vec<BigInt>], c: &[i64], dim: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); dim];
    for (g, &ci) in gens.iter().zip(c) {
        if ci == 0 {
            continue;
        }
        let ci = BigInt::from(ci);
        for (o, x) in out.iter_mut().zip(g) {
            *o += &ci * x;
        }
    }
    out
}

fn search_pair(w: &WallForm, comp: &SubWallForm, bound: i64, nodes: &mut u64, max_nodes: u64) -> Outcome {
    let (nm, np) = (w.minus().ngens(), w.plus().ngens());
    let xg = comp.minus_gens();
    let yg = comp.plus_gens();
    if xg.is_empty() || yg.is_empty() {
        return Outcome::NotFound;
    }
    let one = BigInt::one();
    let mut result = Outcome::NotFound;
    for_each_nonzero(yg.len(), bound, &mut |cy| {
        if *nodes >= max_nodes {
            result = Outcome::Exhausted;
            return false;
        }
        *nodes += 1;
        let y = w.plus().canonicalize(&combine(yg, cy, np));
        if !w.h().is_zero_elem(&w.mu(&y, &y)) || !w.param().g().plus().is_zero_elem(&w.alpha_plus(&y)) {
            return true;
        }
        let ell: Vec<BigInt> = xg.iter().map(|x| w.lambda(x, &y)).collect();
        if ell.iter().all(|l| l.is_zero()) {
            return true;
        }
        let mut found = None;
        let mut exhausted = false;
        for_each_nonzero(xg.len(), bound, &mut |cx| {
            if *nodes >= max_nodes {
                exhausted = true;
                return false;
            }
            *nodes += 1;
            let s: BigInt = cx.iter().zip(&ell).map(|(&c, l)| BigInt::from(c) * l).sum();
            if s != one {
                return true;
            }
            let x = w.minus().canonicalize(&combine(xg, cx, nm));
            if w.param().g().minus().is_zero_elem(&w.alpha_minus(&x)) {
                found = Some(x);
                return false;
            }
            true
        });
        if let Some(x) = found {
            result = Outcome::Found(x, y.clone());
            return false;
        }
        if exhausted {
            result = Outcome::Exhausted;
            return false;
        }
        true
    });
    result
}

/// Greedily splits off hyperbolic blocks `(x, y)` with `λ(x, y) = 1`,
/// `μ(y, y) = 0`, `α±` zero, each found in the orthogonal complement of the
/// blocks already chosen. The upper bound is the free rank of `M-`.
pub fn rank_certificate(w: &Arc<WallForm>, budget: &SearchBudget) -> Result<RankCertificate> {
    let upper = w.minus().free_rank();
    let mut xs: Vec<Vec<BigInt>> = Vec::new();
    let mut ys: Vec<Vec<BigInt>> = Vec::new();
    let mut nodes = 0u64;
    let mut exhausted = false;
    let bound = budget.bound.max(1) as i64;
    while xs.len() < upper {
        let chosen = WallMorphism::from_standard(w.clone(), &xs, &ys)?;
        let comp = chosen.image().orthogonal_complement();
        match search_pair(w, &comp, bound, &mut nodes, budget.max_nodes) {
            Outcome::Found(x, y) => {
                xs.push(x);
                ys.push(y);
            }
            Outcome::NotFound => break,
            Outcome::Exhausted => {
                exhausted = true;
                break;
            }
        }
    }
    let witness = WallMorphism::from_standard(w.clone(), &xs, &ys)?;
    Ok(RankCertificate {
        lower: xs.len(),
        upper,
        witness,
        budget_exhausted: exhausted,
        nodes,
    })
}

/// Runs [`rank_certificate`] on `W ⊥ W^j` for `j = 0..=j_max` and keeps the
/// best `k - j`.
pub fn stable_rank_certificate(w: &Arc<WallForm>, j_max: usize, budget: &SearchBudget) -> Result<StableRankCertificate> {
    let upper = w.minus().free_rank();
    let mut best: Option<StableRankCertificate> = None;
    let mut exhausted = false;
    for j in 0..=j_max {
        let wj = Arc::new(WallForm::standard(j, w.param())?);
        let sum = perp_sum(w, &wj)?;
        let cert = rank_certificate(&sum.form, budget)?;
        exhausted |= cert.budget_exhausted;
        let value = cert.lower as i64 - j as i64;
        if best.as_ref().is_none_or(|b| value > b.lower) {
            best = Some(StableRankCertificate {
                lower: value,
                j,
                certificate: cert,
                upper,
                budget_exhausted: false,
            });
        }
        if value == upper as i64 {
            break;
        }
    }
    let mut best = best.expect("j = 0 is always tried");
    best.budget_exhausted = exhausted;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FgAbGroup;
    use crate::linalg::IntMatrix;
    use crate::wall::FormParameter;

    #[test]
    fn norm_order() {
        let mut seen = Vec::new();
        for_each_nonzero(2, 1, &mut |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![
                vec![-1, 0],
                vec![0, -1],
                vec![0, 1],
                vec![1, 0],
                vec![-1, -1],
                vec![-1, 1],
                vec![1, -1],
                vec![1, 1]
            ]
        );
    }

    #[test]
    fn standard_rank_is_exact() {
        for h in [&[][..], &[2]] {
            let p = FormParameter::trivial(&FgAbGroup::from_i64(h).unwrap(), -1);
            for g in 0..4 {
                let w = Arc::new(WallForm::standard(g, &p).unwrap());
                let c = rank_certificate(&w, &SearchBudget::default()).unwrap();
                assert_eq!((c.lower, c.upper), (g, g));
                assert!(c.exact() && !c.budget_exhausted);
            }
        }
    }

    #[test]
    fn lambda_two_has_rank_zero() {
        let p = FormParameter::trivial(&FgAbGroup::trivial(), -1);
        let w1 = WallForm::standard(1, &p).unwrap();
        let m = Arc::new(
            WallForm::new(
                w1.pair().clone(),
                IntMatrix::from_i64_rows(&[&[2]]),
                w1.mu_table().to_vec(),
                w1.alpha_minus_values().to_vec(),
                w1.alpha_plus_values().to_vec(),
                p,
            )
            .unwrap(),
        );
        let c = rank_certificate(&m, &SearchBudget { bound: 3, max_nodes: 10_000 }).unwrap();
        assert_eq!((c.lower, c.upper), (0, 1));
        let s = stable_rank_certificate(&m, 2, &SearchBudget::default()).unwrap();
        assert_eq!(s.lower, 0);
    }

    #[test]
    fn budget_is_reported() {
        let p = FormParameter::trivial(&FgAbGroup::trivial(), -1);
        let w = Arc::new(WallForm::standard(3, &p).unwrap());
        let c = rank_certificate(&w, &SearchBudget { bound: 1, max_nodes: 2 }).unwrap();
        assert!(c.budget_exhausted);
        assert!(c.lower < 3);
    }
}
