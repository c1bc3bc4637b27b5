//! Constructive splitting results for standard forms: complements of
//! embedded standard forms, focusing automorphisms, kernel-rank witnesses,
//! transitivity and cancelation.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{FgAbGroup, GroupHom};
use crate::hpair::{HMap, SubHPair};
use crate::linalg::{self, IntMatrix};
use crate::wall::{unit, PerpSum, StandardLayout, SubWallForm, WallForm, WallMorphism};

fn require_standard(w: &WallForm, what: &str) -> Result<usize> {
    w.standard_rank()
        .ok_or_else(|| Error::InvalidInput(format!("{what} must be a standard form")))
}

/// The decomposition `W^g = W_(0) ⊕ W_(1)`, with `W_(0) = (0, ⟨b_i⟩)` and
/// `W_(1) = (W^g_-, τ(W^g_- ⊗ H))`.
#[derive(Clone, Debug)]
pub struct IsotropicSplit {
    pub layout: StandardLayout,
    pub part0: SubHPair,
    pub part1: SubHPair,
    /// `W^g_- ⊗ H`; generator `k*g + i` is `a_i ⊗ h_k`.
    pub tensor: FgAbGroup,
    /// `τ(1)`: the tensor product onto `(W_(1))_+`.
    pub tau1: GroupHom,
}

impl IsotropicSplit {
    pub fn new(w: &WallForm) -> Result<Self> {
        let g = require_standard(w, "the form")?;
        let lay = StandardLayout::new(g, w.h());
        let np = lay.plus_dim();
        let part0 = SubHPair::new(w.pair(), vec![], (0..g).map(|i| lay.b(i)).collect())?;
        let mut tau_gens = Vec::new();
        for k in 0..lay.dh {
            for i in 0..g {
                tau_gens.push(unit(np, lay.tau_coord(i, k)));
            }
        }
        let part1 = SubHPair::new(w.pair(), (0..g).map(|i| lay.a(i)).collect(), tau_gens.clone())?;
        let mut factors = Vec::new();
        for d in w.h().factors() {
            factors.extend(std::iter::repeat_n(d.clone(), g));
        }
        let tensor = FgAbGroup::new(factors)?;
        let tau1 = GroupHom::from_columns(tensor.clone(), w.plus().clone(), &tau_gens)?;
        Ok(IsotropicSplit {
            layout: lay,
            part0,
            part1,
            tensor,
            tau1,
        })
    }

    /// `x ⊗ h` in [`IsotropicSplit::tensor`].
    pub fn tensor_element(&self, x: &[BigInt], h: &[BigInt]) -> Vec<BigInt> {
        let g = self.layout.g;
        let mut v = vec![BigInt::zero(); g * self.layout.dh];
        for (k, hk) in h.iter().enumerate() {
            for (i, xi) in x.iter().enumerate() {
                v[k * g + i] = xi * hk;
            }
        }
        self.tensor.canonicalize(&v)
    }

    /// `y = y_(0) + y_(1)` as two plus elements.
    pub fn split(&self, y: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let cut = self.layout.dh * self.layout.g;
        let mut y0 = y.to_vec();
        let mut y1 = y.to_vec();
        for (i, c) in y0.iter_mut().enumerate() {
            if i < cut {
                *c = BigInt::zero();
            }
        }
        for (i, c) in y1.iter_mut().enumerate() {
            if i >= cut {
                *c = BigInt::zero();
            }
        }
        (y0, y1)
    }
}

/// Columns 2.. of the dual basis to `[v | ker(w0ᵀ)]`, given `v·w0 = 1`.
fn dual_system(v: &[BigInt], w0: &[BigInt]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = v.len();
    let k = linalg::kernel_basis(&IntMatrix::from_rows(m, &[w0.to_vec()]));
    let mut cols = vec![v.to_vec()];
    cols.extend(k.columns());
    let x = IntMatrix::from_columns(m, &cols);
    let y = linalg::unimodular_inverse(&x).expect("v is primitive and dual to w0").transpose();
    (cols[1..].to_vec(), y.columns()[1..].to_vec())
}

fn plus_from_part0(lay: &StandardLayout, b: &[BigInt]) -> Vec<BigInt> {
    let mut y = vec![BigInt::zero(); lay.plus_dim()];
    for (i, c) in b.iter().enumerate() {
        y[lay.b_coord(i)] = c.clone();
    }
    y
}

/// For `(v, w)` spanning a copy of `W¹` in the standard form `w_form`,
/// an isomorphism from `W^{m-1}` onto its orthogonal complement.
fn block_complement(w_form: &Arc<WallForm>, v: &[BigInt], w: &[BigInt]) -> Result<WallMorphism> {
    let m = w_form.minus().ngens();
    let lay = StandardLayout::new(m, w_form.h());
    let w0 = lay.part0(w);
    let pairing: BigInt = v.iter().zip(&w0).map(|(a, b)| a * b).sum();
    if !pairing.is_one() {
        return Err(Error::InvalidInput("block does not satisfy lambda(v, w) = 1".into()));
    }
    let (xs, ys0) = dual_system(v, &w0);
    let ys: Vec<Vec<BigInt>> = ys0
        .iter()
        .map(|y0| {
            let y = plus_from_part0(&lay, y0);
            let h = w_form.mu(&y, w);
            w_form.plus().sub(&y, &w_form.tau(v, &h))
        })
        .collect();
    WallMorphism::from_standard(w_form.clone(), &xs, &ys)
}

/// For `f: W^k → W^{g+k}`, an isomorphism `c: W^g → f(W^k)⊥`.
pub fn complement_standardize(f: &WallMorphism) -> Result<WallMorphism> {
    let k = require_standard(f.source(), "source")?;
    require_standard(f.target(), "target")?;
    let (fx, fy) = f.standard_images();
    let mut psi = WallMorphism::identity(f.target());
    for t in 0..k {
        let v = psi
            .hmap()
            .minus()
            .preimage(&fx[t])
            .ok_or_else(|| Error::InvalidInput("image is not orthogonal to earlier blocks".into()))?;
        let w = psi
            .hmap()
            .plus()
            .preimage(&fy[t])
            .ok_or_else(|| Error::InvalidInput("image is not orthogonal to earlier blocks".into()))?;
        let c = block_complement(psi.source(), &v, &w)?;
        psi = psi.compose(&c)?;
    }
    Ok(psi)
}

/// `f ⊥ c` as a morphism out of `W^{k+g}`.
fn assemble(target: &Arc<WallForm>, parts: &[&WallMorphism]) -> Result<WallMorphism> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for p in parts {
        let (x, y) = p.standard_images();
        xs.extend(x);
        ys.extend(y);
    }
    let m = WallMorphism::from_standard(target.clone(), &xs, &ys)?;
    if m.source().as_ref() == target.as_ref() {
        WallMorphism::new(target.clone(), target.clone(), m.hmap().clone())
    } else {
        Ok(m)
    }
}

fn primitive_part(v: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let t = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    (t.clone(), v.iter().map(|x| x / &t).collect())
}

/// Some `u` with `u · v = 1` for primitive `v`.
fn dual_vector(v: &[BigInt]) -> Vec<BigInt> {
    linalg::solve(&IntMatrix::from_rows(v.len(), &[v.to_vec()]), &[BigInt::one()]).expect("v is primitive")
}

/// Blocks chosen so far in a standard form, with an isomorphism from a
/// standard form onto their orthogonal complement.
struct Splitting {
    target: Arc<WallForm>,
    xs: Vec<Vec<BigInt>>,
    ys: Vec<Vec<BigInt>>,
    psi: WallMorphism,
}

impl Splitting {
    fn new(target: &Arc<WallForm>) -> Self {
        Splitting {
            target: target.clone(),
            xs: vec![],
            ys: vec![],
            psi: WallMorphism::identity(target),
        }
    }

    fn local_rank(&self) -> usize {
        self.psi.source().minus().ngens()
    }

    fn push_local(&mut self, v: &[BigInt], w: &[BigInt]) -> Result<()> {
        let c = block_complement(self.psi.source(), v, w)?;
        self.xs.push(self.psi.apply_minus(v));
        self.ys.push(self.psi.apply_plus(w));
        self.psi = self.psi.compose(&c)?;
        Ok(())
    }

    fn push_any(&mut self) -> Result<()> {
        let m = self.local_rank();
        if m == 0 {
            return Err(Error::RankTooSmall { needed: self.xs.len() + 1, have: self.xs.len() });
        }
        let lay = StandardLayout::new(m, self.target.h());
        self.push_local(&lay.a(0), &lay.b(0))
    }

    /// Adds a block whose span, together with the earlier ones, contains `x`.
    fn absorb_minus(&mut self, x: &[BigInt]) -> Result<()> {
        let mut rest = x.to_vec();
        for (p, q) in self.xs.iter().zip(&self.ys) {
            let c = self.target.lambda(x, q);
            for (r, pi) in rest.iter_mut().zip(p) {
                *r -= &c * pi;
            }
        }
        let local = self
            .psi
            .hmap()
            .minus()
            .preimage(&rest)
            .expect("the complement of the chosen blocks is the image of psi");
        if local.iter().all(|c| c.is_zero()) {
            return self.push_any();
        }
        let m = self.local_rank();
        let lay = StandardLayout::new(m, self.target.h());
        let (_, xbar) = primitive_part(&local);
        let w = plus_from_part0(&lay, &dual_vector(&xbar));
        self.push_local(&xbar, &w)
    }

    /// Adds a block whose plus part contains the `(0)`-part element `y`.
    fn absorb_plus0(&mut self, y: &[BigInt]) -> Result<()> {
        let local = self
            .psi
            .hmap()
            .plus()
            .preimage(y)
            .expect("the complement of the chosen blocks is the image of psi");
        let lay = StandardLayout::new(self.local_rank(), self.target.h());
        let (_, ybar) = primitive_part(&lay.part0(&local));
        let v = dual_vector(&ybar);
        self.push_local(&v, &plus_from_part0(&lay, &ybar))
    }

    fn morphism(&self) -> Result<WallMorphism> {
        WallMorphism::from_standard(self.target.clone(), &self.xs, &self.ys)
    }
}

/// A morphism `W^{k+1} → W^g` whose image contains `y` (an element of the
/// `(0)`-part) and each of the `k` elements `xs`.
pub fn envelope_morphism(w: &Arc<WallForm>, y: &[BigInt], xs: &[Vec<BigInt>]) -> Result<WallMorphism> {
    let g = require_standard(w, "the form")?;
    let k = xs.len();
    if k + 1 > g {
        return Err(Error::RankTooSmall { needed: k + 1, have: g });
    }
    let lay = StandardLayout::new(g, w.h());
    if !lay.plus_supported_in(y, g) || y[..lay.dh * g].iter().any(|c| !c.is_zero()) {
        return Err(Error::InvalidInput("y must lie in the span of the b_i".into()));
    }
    let mut s = Splitting::new(w);
    let y_zero = y.iter().all(|c| c.is_zero());
    if !y_zero {
        s.absorb_plus0(y)?;
    }
    for x in xs {
        s.absorb_minus(x)?;
    }
    if y_zero {
        s.push_any()?;
    }
    let f = s.morphism()?;
    let img = f.image();
    assert!(img.contains_plus(y) && xs.iter().all(|x| img.contains_minus(x)));
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// An automorphism `Φ` of `W^g` with `Φ⁻¹(target)` in the first `d + 1`
/// blocks (plus side, `d` = number of generators of `H`) or in `Z·a_1`
/// (minus side).
pub fn focus_automorphism(w: &Arc<WallForm>, side: Side, target: &[BigInt]) -> Result<WallMorphism> {
    let g = require_standard(w, "the form")?;
    let lay = StandardLayout::new(g, w.h());
    let f = match side {
        Side::Plus => {
            if lay.dh + 1 > g {
                return Err(Error::RankTooSmall { needed: lay.dh + 1, have: g });
            }
            let y = w.plus().canonicalize(target);
            let y0 = plus_from_part0(&lay, &lay.part0(&y));
            envelope_morphism(w, &y0, &lay.part1(&y))?
        }
        Side::Minus => {
            if g == 0 {
                return Err(Error::RankTooSmall { needed: 1, have: 0 });
            }
            let mut s = Splitting::new(w);
            s.absorb_minus(target)?;
            s.morphism()?
        }
    };
    let c = complement_standardize(&f)?;
    let phi = assemble(w, &[&f, &c])?;
    assert!(phi.is_isomorphism());
    let inv = phi.inverse()?;
    match side {
        Side::Plus => assert!(lay.plus_supported_in(&inv.apply_plus(target), lay.dh + 1)),
        Side::Minus => assert!(inv.apply_minus(target)[1..].iter().all(|c| c.is_zero())),
    }
    Ok(phi)
}

fn hmap_is_zero(f: &HMap) -> bool {
    f.minus().matrix().is_zero() && f.plus().matrix().is_zero()
}

/// Given `f: W^g → M` and an H-map `φ: M → P(ν)`, a morphism into `M` of
/// rank `g - 1` (ν = 0) or `g - d - 1` (ν = 1) whose image lies in `ker φ`.
pub fn kernel_rank_witness(f: &WallMorphism, phi: &HMap, nu: u8) -> Result<WallMorphism> {
    let g = require_standard(f.source(), "the witness source")?;
    let w = f.source();
    let phibar = phi.compose(f.hmap())?;
    if hmap_is_zero(&phibar) {
        return Ok(f.clone());
    }
    let dh = w.h().ngens();
    let (side, lead) = match nu {
        0 => (Side::Minus, 1),
        1 => (Side::Plus, dh + 1),
        _ => return Err(Error::InvalidInput("probe index must be 0 or 1".into())),
    };
    if g < lead {
        return Err(Error::RankTooSmall { needed: lead, have: g });
    }
    let dual = w.duality_map(nu);
    let coords = dual.homs.coordinates(&phibar)?;
    let x = dual
        .map
        .preimage(&coords)
        .ok_or_else(|| Error::InvalidInput("duality map is not surjective".into()))?;
    let focus = focus_automorphism(w, side, &x)?;
    let moved = f.compose(&focus)?;
    let (xs, ys) = moved.standard_images();
    let witness = WallMorphism::from_standard(f.target().clone(), &xs[lead..], &ys[lead..])?;
    assert!(hmap_is_zero(&phi.compose(witness.hmap())?));
    Ok(witness)
}

/// Given a witness `W^g → M` with image in `N` and `f: W¹ → M`, a morphism
/// of rank at least `g - 2 - d` into `N ∩ f(W¹)⊥`.
pub fn slice_rank_witness(n: &SubWallForm, n_witness: &WallMorphism, f: &WallMorphism) -> Result<WallMorphism> {
    let m = n.ambient();
    if n_witness.target().as_ref() != m.as_ref() || f.target().as_ref() != m.as_ref() {
        return Err(Error::InvalidInput("morphisms must land in the ambient form".into()));
    }
    if !n_witness.image().is_contained_in(n) {
        return Err(Error::InvalidInput("witness image is not contained in N".into()));
    }
    if f.source().standard_rank() != Some(1) {
        return Err(Error::InvalidInput("f must be a morphism out of W^1".into()));
    }
    let g = require_standard(n_witness.source(), "the witness source")?;
    let (v, w) = f.standard_images();
    let phi0 = m.t0(&v[0]);
    let phi1 = m.t1(&w[0]);
    let orth = hmap_is_zero(&phi0.compose(n_witness.hmap())?) && hmap_is_zero(&phi1.compose(n_witness.hmap())?);
    if orth {
        return Ok(n_witness.clone());
    }
    let d = m.h().ngens();
    if g < 2 + d {
        return Err(Error::RankTooSmall { needed: 2 + d, have: g });
    }
    let w1 = kernel_rank_witness(n_witness, &phi0, 0)?;
    let w2 = kernel_rank_witness(&w1, &phi1, 1)?;
    let target = n.intersect(&f.image().orthogonal_complement());
    assert!(w2.image().is_contained_in(&target));
    Ok(w2)
}

/// An automorphism `Φ` of the standard target with `Φ ∘ f2 = f1`.
pub fn transitivity_witness(f1: &WallMorphism, f2: &WallMorphism) -> Result<WallMorphism> {
    if f1.target().as_ref() != f2.target().as_ref() {
        return Err(Error::InvalidInput("morphisms have different targets".into()));
    }
    let target = f1.target();
    require_standard(target, "target")?;
    if f1.source().standard_rank() != Some(1) || f2.source().standard_rank() != Some(1) {
        return Err(Error::InvalidInput("morphisms must be out of W^1".into()));
    }
    let a1 = assemble(target, &[f1, &complement_standardize(f1)?])?;
    let a2 = assemble(target, &[f2, &complement_standardize(f2)?])?;
    let phi = a1.compose(&a2.inverse()?)?;
    let phi = WallMorphism::new(target.clone(), target.clone(), phi.hmap().clone())?;
    let (x1, y1) = f1.standard_images();
    let (x2, y2) = f2.standard_images();
    assert!(phi.apply_minus(&x2[0]) == x1[0] && target.plus().eq_elem(&phi.apply_plus(&y2[0]), &y1[0]));
    assert!(phi.is_isomorphism());
    Ok(phi)
}

/// Given `iso: M ⊥ W¹ → N ⊥ W¹` (the `W¹` being the second summand of each
/// sum), an isomorphism `M → N`. The target sum must be standard, or `N`
/// must be standard.
pub fn cancel_standard(m_sum: &PerpSum, n_sum: &PerpSum, iso: &WallMorphism) -> Result<WallMorphism> {
    let (x, y) = (&m_sum.form, &n_sum.form);
    if iso.source().as_ref() != x.as_ref() || iso.target().as_ref() != y.as_ref() {
        return Err(Error::InvalidInput("iso does not map between the given sums".into()));
    }
    if !iso.is_isomorphism() {
        return Err(Error::InvalidInput("map is not an isomorphism".into()));
    }
    if m_sum.inc_b.source().standard_rank() != Some(1) || n_sum.inc_b.source().standard_rank() != Some(1) {
        return Err(Error::InvalidInput("second summands must be W^1".into()));
    }
    let chart = if y.standard_rank().is_some() {
        WallMorphism::identity(y)
    } else if n_sum.inc_a.source().standard_rank().is_some() {
        let sigma = assemble(y, &[&n_sum.inc_a, &n_sum.inc_b])?;
        if !sigma.is_isomorphism() {
            return Err(Error::NotSupported("cancelation needs a standard target".into()));
        }
        sigma
    } else {
        return Err(Error::NotSupported("cancelation needs a standard target".into()));
    };
    let chart_inv = chart.inverse()?;
    let f1 = chart_inv.compose(&n_sum.inc_b)?;
    let f2 = chart_inv.compose(&iso.compose(&m_sum.inc_b)?)?;
    let local = transitivity_witness(&f1, &f2)?;
    let phi = chart.compose(&local)?.compose(&chart_inv)?;
    let aligned = phi.compose(iso)?;
    let hmap = n_sum.proj_a.compose(&aligned.hmap().compose(m_sum.inc_a.hmap())?)?;
    let out = WallMorphism::new(m_sum.inc_a.source().clone(), n_sum.inc_a.source().clone(), hmap)?;
    if !out.is_isomorphism() {
        return Err(Error::InvalidInput("restriction to the complements is not bijective".into()));
    }
    Ok(out)
}

/// A random automorphism of a standard form, composed of `steps` elementary
/// moves: block swaps, block negation, `a_i ↦ a_i + t a_j` with
/// `b_j ↦ b_j - t b_i`, and τ-shears of the `b_i`. Moves that fail
/// validation are skipped.
pub fn random_automorphism<R: Rng>(w: &Arc<WallForm>, rng: &mut R, steps: usize) -> Result<WallMorphism> {
    let g = require_standard(w, "the form")?;
    let lay = StandardLayout::new(g, w.h());
    let h = w.h();
    let eps = BigInt::from(w.param().epsilon());
    let mut theta = WallMorphism::identity(w);
    if g == 0 {
        return Ok(theta);
    }
    for _ in 0..steps {
        let mut xs: Vec<Vec<BigInt>> = (0..g).map(|i| lay.a(i)).collect();
        let mut ys: Vec<Vec<BigInt>> = (0..g).map(|i| lay.b(i)).collect();
        let i = rng.gen_range(0..g);
        let j = rng.gen_range(0..g);
        match rng.gen_range(0..5) {
            0 => {
                xs.swap(i, j);
                ys.swap(i, j);
            }
            1 => {
                xs[i] = w.minus().scale(&BigInt::from(-1), &xs[i]);
                ys[i] = w.plus().scale(&BigInt::from(-1), &ys[i]);
            }
            2 if i != j => {
                let t = BigInt::from([-2i64, -1, 1, 2][rng.gen_range(0..4)]);
                xs[i] = w.minus().add(&xs[i], &w.minus().scale(&t, &lay.a(j)));
                ys[j] = w.plus().sub(&ys[j], &w.plus().scale(&t, &lay.b(i)));
            }
            3 if i != j && !h.is_trivial() => {
                let hh = random_nonzero(rng, h);
                ys[i] = w.plus().add(&ys[i], &w.tau(&lay.a(j), &hh));
                let back = w.tau(&lay.a(i), &h.scale(&eps, &hh));
                ys[j] = w.plus().sub(&ys[j], &back);
            }
            4 if !h.is_trivial() => {
                let hh = random_nonzero(rng, h);
                ys[i] = w.plus().add(&ys[i], &w.tau(&lay.a(i), &hh));
            }
            _ => continue,
        }
        if let Ok(e) = WallMorphism::from_standard(w.clone(), &xs, &ys) {
            let e = WallMorphism::new(w.clone(), w.clone(), e.hmap().clone())?;
            if e.is_isomorphism() {
                theta = e.compose(&theta)?;
            }
        }
    }
    Ok(theta)
}

fn random_nonzero<R: Rng>(rng: &mut R, h: &FgAbGroup) -> Vec<BigInt> {
    loop {
        let v: Vec<BigInt> = h
            .factors()
            .iter()
            .map(|d| {
                let top = if d.is_zero() { 3 } else { d.clone().try_into().unwrap_or(3i64) };
                BigInt::from(rng.gen_range(0..top.abs().max(1)))
            })
            .collect();
        if !h.is_zero_elem(&v) {
            return v;
        }
    }
}

/// The standard inclusion `W^k → W^g` onto the first `k` blocks.
pub fn standard_inclusion(w: &Arc<WallForm>, k: usize) -> Result<WallMorphism> {
    let g = require_standard(w, "the form")?;
    if k > g {
        return Err(Error::RankTooSmall { needed: k, have: g });
    }
    let lay = StandardLayout::new(g, w.h());
    let xs: Vec<Vec<BigInt>> = (0..k).map(|i| lay.a(i)).collect();
    let ys: Vec<Vec<BigInt>> = (0..k).map(|i| lay.b(i)).collect();
    WallMorphism::from_standard(w.clone(), &xs, &ys)
}
