//! H-pairs `(M-, M+, τ)` and the H-maps between them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{FgAbGroup, GroupHom, Subquotient};
use crate::linalg::{self, IntMatrix};

/// A pair of groups with a bilinear `τ: M- ⊗ H → M+`, stored by its values
/// on generator pairs: `tau[i][k] = τ(x_i, h_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPair {
    h: FgAbGroup,
    minus: FgAbGroup,
    plus: FgAbGroup,
    tau: Vec<Vec<Vec<BigInt>>>,
}

impl HPair {
    pub fn new(
        h: FgAbGroup,
        minus: FgAbGroup,
        plus: FgAbGroup,
        tau: Vec<Vec<Vec<BigInt>>>,
    ) -> Result<Self> {
        if tau.len() != minus.ngens() {
            return Err(Error::Dimension(format!(
                "tau has {} rows, M- has {} generators",
                tau.len(),
                minus.ngens()
            )));
        }
        for row in &tau {
            if row.len() != h.ngens() || row.iter().any(|e| e.len() != plus.ngens()) {
                return Err(Error::Dimension("tau entries do not match H and M+".into()));
            }
        }
        for (i, row) in tau.iter().enumerate() {
            for (k, val) in row.iter().enumerate() {
                let dm = &minus.factors()[i];
                if !dm.is_zero() && !plus.is_zero_elem(&scaled(dm, val)) {
                    return Err(Error::BilinearityViolation(format!(
                        "{dm}·x{i} = 0 but {dm}·τ(x{i}, h{k}) ≠ 0"
                    )));
                }
                let dh = &h.factors()[k];
                if !dh.is_zero() && !plus.is_zero_elem(&scaled(dh, val)) {
                    return Err(Error::BilinearityViolation(format!(
                        "{dh}·h{k} = 0 but {dh}·τ(x{i}, h{k}) ≠ 0"
                    )));
                }
            }
        }
        let tau = tau
            .into_iter()
            .map(|row| row.into_iter().map(|e| plus.canonicalize(&e)).collect())
            .collect();
        Ok(HPair { h, minus, plus, tau })
    }

    pub fn zero(h: &FgAbGroup) -> Self {
        HPair {
            h: h.clone(),
            minus: FgAbGroup::trivial(),
            plus: FgAbGroup::trivial(),
            tau: vec![],
        }
    }

    /// `P(0) = (0, Z, 0)` and `P(1) = (Z, H, t·h)`.
    pub fn probe(nu: u8, h: &FgAbGroup) -> Self {
        match nu {
            0 => HPair {
                h: h.clone(),
                minus: FgAbGroup::trivial(),
                plus: FgAbGroup::integers(),
                tau: vec![],
            },
            1 => {
                let row = (0..h.ngens()).map(|k| h.generator(k)).collect();
                HPair {
                    h: h.clone(),
                    minus: FgAbGroup::integers(),
                    plus: h.clone(),
                    tau: vec![row],
                }
            }
            _ => panic!("probe index must be 0 or 1"),
        }
    }

    pub fn h(&self) -> &FgAbGroup {
        &self.h
    }

    pub fn minus(&self) -> &FgAbGroup {
        &self.minus
    }

    pub fn plus(&self) -> &FgAbGroup {
        &self.plus
    }

    pub fn tau_table(&self) -> &[Vec<Vec<BigInt>>] {
        &self.tau
    }

    pub fn is_zero(&self) -> bool {
        self.minus.is_trivial() && self.plus.is_trivial()
    }

    /// `τ(x, h)` for arbitrary elements.
    pub fn tau(&self, x: &[BigInt], hh: &[BigInt]) -> Vec<BigInt> {
        let mut acc = self.plus.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, hk) in hh.iter().enumerate() {
                let c = xi * hk;
                if c.is_zero() {
                    continue;
                }
                for (l, v) in self.tau[i][k].iter().enumerate() {
                    acc[l] += &c * v;
                }
            }
        }
        self.plus.canonicalize(&acc)
    }

    /// `τ(x, h_k)` as a matrix acting on `x` (columns indexed by M- generators).
    pub fn tau_matrix(&self, k: usize) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = (0..self.minus.ngens()).map(|i| self.tau[i][k].clone()).collect();
        IntMatrix::from_columns(self.plus.ngens(), &cols)
    }

    /// Componentwise direct sum with block-diagonal τ.
    pub fn direct_sum(a: &HPair, b: &HPair) -> Result<HPairSum> {
        if a.h != b.h {
            return Err(Error::HMismatch);
        }
        let sm = FgAbGroup::direct_sum(&a.minus, &b.minus);
        let sp = FgAbGroup::direct_sum(&a.plus, &b.plus);
        let h = a.h.clone();
        let mut tau = Vec::with_capacity(sm.group.ngens());
        for g in 0..sm.group.ngens() {
            let ga = sm.proj_a.column(g);
            let gb = sm.proj_b.column(g);
            let row: Vec<Vec<BigInt>> = (0..h.ngens())
                .map(|k| {
                    let hk = h.generator(k);
                    let ta = sp.inc_a.mul_vec(&a.tau(&ga, &hk));
                    let tb = sp.inc_b.mul_vec(&b.tau(&gb, &hk));
                    sp.group.add(&ta, &tb)
                })
                .collect();
            tau.push(row);
        }
        let pair = HPair::new(h, sm.group.clone(), sp.group.clone(), tau)?;
        let mk = |src: &HPair, dst: &HPair, m: &IntMatrix, p: &IntMatrix| -> HMap {
            HMap::new(
                src,
                dst,
                GroupHom::new(src.minus.clone(), dst.minus.clone(), m.clone()).expect("inclusion"),
                GroupHom::new(src.plus.clone(), dst.plus.clone(), p.clone()).expect("inclusion"),
            )
            .expect("structure maps of a direct sum commute with tau")
        };
        Ok(HPairSum {
            inc_a: mk(a, &pair, &sm.inc_a, &sp.inc_a),
            inc_b: mk(b, &pair, &sm.inc_b, &sp.inc_b),
            proj_a: mk(&pair, a, &sm.proj_a, &sp.proj_a),
            proj_b: mk(&pair, b, &sm.proj_b, &sp.proj_b),
            pair,
        })
    }

    /// The group `Hom(M, P(ν))` of H-maps into a probe.
    pub fn hom_to_probe(&self, nu: u8) -> ProbeHoms {
        ProbeHoms::new(self, nu)
    }
}

fn scaled(c: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| c * x).collect()
}

/// `A ⊕ B` with its structure maps.
#[derive(Clone, Debug)]
pub struct HPairSum {
    pub pair: HPair,
    pub inc_a: HMap,
    pub inc_b: HMap,
    pub proj_a: HMap,
    pub proj_b: HMap,
}

/// A morphism of H-pairs: homomorphisms on both components commuting with τ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HMap {
    minus: GroupHom,
    plus: GroupHom,
}

impl HMap {
    pub fn new(src: &HPair, dst: &HPair, minus: GroupHom, plus: GroupHom) -> Result<Self> {
        if src.h != dst.h {
            return Err(Error::HMismatch);
        }
        if minus.domain() != &src.minus
            || minus.codomain() != &dst.minus
            || plus.domain() != &src.plus
            || plus.codomain() != &dst.plus
        {
            return Err(Error::Dimension("H-map components do not match the pairs".into()));
        }
        for i in 0..src.minus.ngens() {
            let fx = minus.image_of_generator(i);
            for k in 0..src.h.ngens() {
                let hk = src.h.generator(k);
                let lhs = plus.apply(&src.tau[i][k]);
                let rhs = dst.tau(&fx, &hk);
                if lhs != rhs {
                    return Err(Error::SquareViolation(format!("generator pair (x{i}, h{k})")));
                }
            }
        }
        Ok(HMap { minus, plus })
    }

    pub fn from_matrices(src: &HPair, dst: &HPair, minus: IntMatrix, plus: IntMatrix) -> Result<Self> {
        let m = GroupHom::new(src.minus.clone(), dst.minus.clone(), minus)?;
        let p = GroupHom::new(src.plus.clone(), dst.plus.clone(), plus)?;
        Self::new(src, dst, m, p)
    }

    pub fn identity(p: &HPair) -> Self {
        HMap {
            minus: GroupHom::identity(&p.minus),
            plus: GroupHom::identity(&p.plus),
        }
    }

    pub fn zero(src: &HPair, dst: &HPair) -> Self {
        HMap {
            minus: GroupHom::zero(&src.minus, &dst.minus),
            plus: GroupHom::zero(&src.plus, &dst.plus),
        }
    }

    pub fn minus(&self) -> &GroupHom {
        &self.minus
    }

    pub fn plus(&self) -> &GroupHom {
        &self.plus
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HMap) -> Result<HMap> {
        Ok(HMap {
            minus: self.minus.compose(&inner.minus)?,
            plus: self.plus.compose(&inner.plus)?,
        })
    }

    /// Componentwise kernel as a sub-pair of the source.
    pub fn kernel(&self, src: &HPair) -> SubHPair {
        let sub = SubHPair {
            minus_gens: self.minus.kernel_generators(),
            plus_gens: self.plus.kernel_generators(),
        };
        debug_assert!(sub.is_tau_closed(src));
        sub
    }

    pub fn is_isomorphism(&self) -> bool {
        self.minus.is_isomorphism() && self.plus.is_isomorphism()
    }

    pub fn inverse(&self, src: &HPair, dst: &HPair) -> Result<HMap> {
        HMap::new(dst, src, self.minus.inverse()?, self.plus.inverse()?)
    }
}

/// A sub-pair given by generators in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SubHPair {
    pub minus_gens: Vec<Vec<BigInt>>,
    pub plus_gens: Vec<Vec<BigInt>>,
}

impl SubHPair {
    pub fn new(ambient: &HPair, minus_gens: Vec<Vec<BigInt>>, plus_gens: Vec<Vec<BigInt>>) -> Result<Self> {
        let minus_gens: Vec<_> = minus_gens.iter().map(|g| ambient.minus.canonicalize(g)).collect();
        let plus_gens: Vec<_> = plus_gens.iter().map(|g| ambient.plus.canonicalize(g)).collect();
        let s = SubHPair { minus_gens, plus_gens };
        if !s.is_tau_closed(ambient) {
            return Err(Error::InvalidInput("generators are not closed under tau".into()));
        }
        Ok(s)
    }

    pub fn full(ambient: &HPair) -> Self {
        SubHPair {
            minus_gens: (0..ambient.minus.ngens()).map(|i| ambient.minus.generator(i)).collect(),
            plus_gens: (0..ambient.plus.ngens()).map(|i| ambient.plus.generator(i)).collect(),
        }
    }

    pub fn is_tau_closed(&self, ambient: &HPair) -> bool {
        self.minus_gens.iter().all(|x| {
            (0..ambient.h.ngens()).all(|k| {
                let t = ambient.tau(x, &ambient.h.generator(k));
                ambient.plus.in_span(&self.plus_gens, &t)
            })
        })
    }

    pub fn contains_minus(&self, ambient: &HPair, x: &[BigInt]) -> bool {
        ambient.minus.in_span(&self.minus_gens, x)
    }

    pub fn contains_plus(&self, ambient: &HPair, y: &[BigInt]) -> bool {
        ambient.plus.in_span(&self.plus_gens, y)
    }

    /// Whether `self ≤ other`.
    pub fn is_contained_in(&self, ambient: &HPair, other: &SubHPair) -> bool {
        self.minus_gens.iter().all(|x| other.contains_minus(ambient, x))
            && self.plus_gens.iter().all(|y| other.contains_plus(ambient, y))
    }

    pub fn is_zero(&self, ambient: &HPair) -> bool {
        self.minus_gens.iter().all(|x| ambient.minus.is_zero_elem(x))
            && self.plus_gens.iter().all(|y| ambient.plus.is_zero_elem(y))
    }

    pub fn intersect(&self, ambient: &HPair, other: &SubHPair) -> SubHPair {
        SubHPair {
            minus_gens: ambient.minus.intersect_spans(&self.minus_gens, &other.minus_gens),
            plus_gens: ambient.plus.intersect_spans(&self.plus_gens, &other.plus_gens),
        }
    }
}

/// `Hom(M, P(ν))`: the solution group of the commuting-square equations.
///
/// A hom is encoded by the vector of its values on generators: for `ν = 0`
/// the integers `φ+(y_j)`; for `ν = 1` the integers `φ-(x_i)` followed by the
/// H-coordinates of each `φ+(y_j)`.
#[derive(Clone, Debug)]
pub struct ProbeHoms {
    pub nu: u8,
    pub group: FgAbGroup,
    source: HPair,
    solutions: Subquotient,
}

impl ProbeHoms {
    fn new(m: &HPair, nu: u8) -> Self {
        let (nm, np, dh) = (m.minus.ngens(), m.plus.ngens(), m.h.ngens());
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut moduli: Vec<BigInt> = Vec::new();
        let (n_unknowns, relations) = match nu {
            0 => {
                let n = np;
                for (j, d) in m.plus.factors().iter().enumerate() {
                    if !d.is_zero() {
                        let mut r = vec![BigInt::zero(); n];
                        r[j] = BigInt::one();
                        rows.push(r);
                        moduli.push(BigInt::zero());
                    }
                }
                for i in 0..nm {
                    for k in 0..dh {
                        rows.push(m.tau[i][k].clone());
                        moduli.push(BigInt::zero());
                    }
                }
                (n, IntMatrix::zeros(n, 0))
            }
            1 => {
                let n = nm + np * dh;
                let hf = m.h.factors();
                for (i, d) in m.minus.factors().iter().enumerate() {
                    if !d.is_zero() {
                        let mut r = vec![BigInt::zero(); n];
                        r[i] = BigInt::one();
                        rows.push(r);
                        moduli.push(BigInt::zero());
                    }
                }
                for (j, d) in m.plus.factors().iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    for (l, e) in hf.iter().enumerate() {
                        let mut r = vec![BigInt::zero(); n];
                        r[nm + j * dh + l] = d.clone();
                        rows.push(r);
                        moduli.push(e.clone());
                    }
                }
                for i in 0..nm {
                    for k in 0..dh {
                        for (l, e) in hf.iter().enumerate() {
                            let mut r = vec![BigInt::zero(); n];
                            for j in 0..np {
                                r[nm + j * dh + l] = m.tau[i][k][j].clone();
                            }
                            if k == l {
                                r[i] -= BigInt::one();
                            }
                            rows.push(r);
                            moduli.push(e.clone());
                        }
                    }
                }
                let mut rel = Vec::new();
                for j in 0..np {
                    for (l, e) in hf.iter().enumerate() {
                        if !e.is_zero() {
                            let mut c = vec![BigInt::zero(); n];
                            c[nm + j * dh + l] = e.clone();
                            rel.push(c);
                        }
                    }
                }
                (n, IntMatrix::from_columns(n, &rel))
            }
            _ => panic!("probe index must be 0 or 1"),
        };
        let basis = if rows.is_empty() {
            IntMatrix::identity(n_unknowns)
        } else {
            linalg::congruence_kernel(&IntMatrix::from_rows(n_unknowns, &rows), &moduli)
        };
        let solutions = Subquotient::new(basis, relations);
        ProbeHoms {
            nu,
            group: solutions.group.clone(),
            source: m.clone(),
            solutions,
        }
    }

    pub fn probe(&self) -> HPair {
        HPair::probe(self.nu, &self.source.h)
    }

    /// Encodes an H-map `M → P(ν)` as a group element.
    pub fn coordinates(&self, f: &HMap) -> Result<Vec<BigInt>> {
        let u = self.encode(f);
        self.solutions
            .to_group(&u)
            .ok_or_else(|| Error::InvalidInput("map is not an H-map into the probe".into()))
    }

    /// Group element of the hom with the given raw generator values.
    pub fn element_from_values(&self, u: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solutions.to_group(u)
    }

    fn encode(&self, f: &HMap) -> Vec<BigInt> {
        let m = &self.source;
        match self.nu {
            0 => (0..m.plus.ngens()).map(|j| f.plus.image_of_generator(j)[0].clone()).collect(),
            _ => {
                let mut u: Vec<BigInt> = (0..m.minus.ngens())
                    .map(|i| f.minus.image_of_generator(i)[0].clone())
                    .collect();
                for j in 0..m.plus.ngens() {
                    u.extend(f.plus.image_of_generator(j));
                }
                u
            }
        }
    }

    /// Decodes a group element into the H-map it represents.
    pub fn hmap(&self, e: &[BigInt]) -> HMap {
        let u = self.solutions.from_group(e);
        self.hmap_from_values(&u).expect("solutions of the square equations are H-maps")
    }

    /// Builds the H-map from raw generator values (see the type docs).
    pub fn hmap_from_values(&self, u: &[BigInt]) -> Result<HMap> {
        let m = &self.source;
        let probe = self.probe();
        let (nm, np, dh) = (m.minus.ngens(), m.plus.ngens(), m.h.ngens());
        let (minus, plus) = match self.nu {
            0 => (
                IntMatrix::zeros(0, nm),
                IntMatrix::from_vec(1, np, u.to_vec()),
            ),
            _ => {
                let minus = IntMatrix::from_vec(1, nm, u[..nm].to_vec());
                let cols: Vec<Vec<BigInt>> = (0..np).map(|j| u[nm + j * dh..nm + (j + 1) * dh].to_vec()).collect();
                (minus, IntMatrix::from_columns(dh, &cols))
            }
        };
        HMap::from_matrices(m, &probe, minus, plus)
    }

    /// Evaluates the hom `e` on an element of `M-` (ν = 1 only; zero for ν = 0).
    pub fn eval_minus(&self, e: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        self.hmap(e).minus.apply(x)
    }

    pub fn eval_plus(&self, e: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.hmap(e).plus.apply(y)
    }
}
