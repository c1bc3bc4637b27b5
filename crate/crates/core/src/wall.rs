//! Form parameters, Wall forms, morphisms between them, and sub-forms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Axiom, AxiomViolation, Error, Preserved, Result};
use crate::group::{FgAbGroup, GroupHom, Subgroup};
use crate::hpair::{HMap, HPair, ProbeHoms, SubHPair};
use crate::linalg::{self, IntMatrix};

/// The data `(G, ∂, π, ε)` fixing where the α-invariants take values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormParameter {
    g: HPair,
    partial: GroupHom,
    pi: GroupHom,
    epsilon: i8,
}

impl FormParameter {
    pub fn new(g: HPair, partial: GroupHom, pi: GroupHom, epsilon: i8) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::InvalidInput(format!("epsilon must be 1 or -1, got {epsilon}")));
        }
        if partial.domain() != g.h() || partial.codomain() != g.plus() {
            return Err(Error::Dimension("partial must map H to G+".into()));
        }
        if pi.domain() != g.plus() || pi.codomain() != g.h() {
            return Err(Error::Dimension("pi must map G+ to H".into()));
        }
        Ok(FormParameter { g, partial, pi, epsilon })
    }

    /// `G = 0`, `∂ = π = 0`.
    pub fn trivial(h: &FgAbGroup, epsilon: i8) -> Self {
        let g = HPair::zero(h);
        let partial = GroupHom::zero(h, g.plus());
        let pi = GroupHom::zero(g.plus(), h);
        FormParameter::new(g, partial, pi, epsilon).expect("trivial parameter")
    }

    /// `H = G+ = Z/2`, `G- = 0`, `∂ = id`, `π = 0`, `ε = -1`.
    pub fn z2() -> Self {
        let h = FgAbGroup::from_i64(&[2]).expect("Z/2");
        let g = HPair::new(h.clone(), FgAbGroup::trivial(), h.clone(), vec![]).expect("G pair");
        FormParameter::new(g, GroupHom::identity(&h), GroupHom::zero(&h, &h), -1).expect("z2 parameter")
    }

    pub fn h(&self) -> &FgAbGroup {
        self.g.h()
    }

    pub fn g(&self) -> &HPair {
        &self.g
    }

    pub fn partial(&self) -> &GroupHom {
        &self.partial
    }

    pub fn pi(&self) -> &GroupHom {
        &self.pi
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    fn eps(&self) -> BigInt {
        BigInt::from(self.epsilon)
    }
}

/// Coordinates of the standard form `W^g`.
///
/// `W^g_-` is `Z^g` with `a_i = e_i`. In `W^g_+` the coordinate `k*g + i`
/// holds `τ(a_i, h_k)` and the coordinate `d*g + i` holds `b_i`, where
/// `h_1..h_d` are the normal-form generators of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardLayout {
    pub g: usize,
    pub dh: usize,
}

impl StandardLayout {
    pub fn new(g: usize, h: &FgAbGroup) -> Self {
        StandardLayout { g, dh: h.ngens() }
    }

    pub fn plus_dim(&self) -> usize {
        self.g * (self.dh + 1)
    }

    pub fn tau_coord(&self, i: usize, k: usize) -> usize {
        k * self.g + i
    }

    pub fn b_coord(&self, i: usize) -> usize {
        self.dh * self.g + i
    }

    pub fn a(&self, i: usize) -> Vec<BigInt> {
        unit(self.g, i)
    }

    pub fn b(&self, i: usize) -> Vec<BigInt> {
        unit(self.plus_dim(), self.b_coord(i))
    }

    /// The `b`-coefficients of a plus element (its `(0)`-part).
    pub fn part0(&self, y: &[BigInt]) -> Vec<BigInt> {
        y[self.dh * self.g..].to_vec()
    }

    /// `x_k` with `y_(1) = Σ_k τ(x_k, h_k)`.
    pub fn part1(&self, y: &[BigInt]) -> Vec<Vec<BigInt>> {
        (0..self.dh).map(|k| y[k * self.g..(k + 1) * self.g].to_vec()).collect()
    }

    /// Whether a plus element only involves blocks `0..r`.
    pub fn plus_supported_in(&self, y: &[BigInt], r: usize) -> bool {
        (0..self.g).filter(|&i| i >= r).all(|i| {
            y[self.b_coord(i)].is_zero() && (0..self.dh).all(|k| y[self.tau_coord(i, k)].is_zero())
        })
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); n];
    e[i] = BigInt::one();
    e
}

fn show(v: &[BigInt]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", s.join(","))
}

fn fail(axiom: Axiom, witness: String) -> std::result::Result<(), AxiomViolation> {
    Err(AxiomViolation { axiom, witness })
}

fn binom2(n: &BigInt) -> BigInt {
    n * (n - BigInt::one()) / BigInt::from(2)
}

/// An H-pair with the pairings `λ`, `μ` and the functions `α±`.
///
/// Everything is stored on generators: `lambda[(i, j)] = λ(x_i, y_j)`,
/// `mu[i][j] = μ(y_i, y_j)`, `alpha_minus[i] = α-(x_i)`,
/// `alpha_plus[j] = α+(y_j)`. `α+` on other elements follows from axiom iv.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallForm {
    pair: HPair,
    lambda: IntMatrix,
    mu: Vec<Vec<Vec<BigInt>>>,
    alpha_minus: Vec<Vec<BigInt>>,
    alpha_plus: Vec<Vec<BigInt>>,
    param: FormParameter,
    dmu: Vec<Vec<Vec<BigInt>>>,
}

impl WallForm {
    /// Builds and validates a Wall form.
    pub fn new(
        pair: HPair,
        lambda: IntMatrix,
        mu: Vec<Vec<Vec<BigInt>>>,
        alpha_minus: Vec<Vec<BigInt>>,
        alpha_plus: Vec<Vec<BigInt>>,
        param: FormParameter,
    ) -> Result<Self> {
        let w = Self::unchecked(pair, lambda, mu, alpha_minus, alpha_plus, param)?;
        w.validate()?;
        Ok(w)
    }

    /// Checks shapes and canonicalizes values without testing the axioms.
    pub fn unchecked(
        pair: HPair,
        lambda: IntMatrix,
        mu: Vec<Vec<Vec<BigInt>>>,
        alpha_minus: Vec<Vec<BigInt>>,
        alpha_plus: Vec<Vec<BigInt>>,
        param: FormParameter,
    ) -> Result<Self> {
        if pair.h() != param.h() {
            return Err(Error::HMismatch);
        }
        let (nm, np) = (pair.minus().ngens(), pair.plus().ngens());
        let h = pair.h();
        let (gm, gp) = (param.g.minus(), param.g.plus());
        if lambda.rows() != nm || lambda.cols() != np {
            return Err(Error::Dimension(format!(
                "lambda is {}x{}, expected {nm}x{np}",
                lambda.rows(),
                lambda.cols()
            )));
        }
        if mu.len() != np || mu.iter().any(|r| r.len() != np || r.iter().any(|e| e.len() != h.ngens())) {
            return Err(Error::Dimension(format!("mu must be {np}x{np} elements of H")));
        }
        if alpha_minus.len() != nm || alpha_minus.iter().any(|e| e.len() != gm.ngens()) {
            return Err(Error::Dimension(format!("alpha_minus must list {nm} elements of G-")));
        }
        if alpha_plus.len() != np || alpha_plus.iter().any(|e| e.len() != gp.ngens()) {
            return Err(Error::Dimension(format!("alpha_plus must list {np} elements of G+")));
        }
        let mu: Vec<Vec<Vec<BigInt>>> = mu
            .into_iter()
            .map(|r| r.into_iter().map(|e| h.canonicalize(&e)).collect())
            .collect();
        let alpha_minus = alpha_minus.into_iter().map(|e| gm.canonicalize(&e)).collect();
        let alpha_plus = alpha_plus.into_iter().map(|e| gp.canonicalize(&e)).collect();
        let dmu = mu
            .iter()
            .map(|r| r.iter().map(|e| param.partial.apply(e)).collect())
            .collect();
        Ok(WallForm {
            pair,
            lambda,
            mu,
            alpha_minus,
            alpha_plus,
            param,
            dmu,
        })
    }

    /// The standard form `W^g` (see [`StandardLayout`]).
    pub fn standard(g: usize, param: &FormParameter) -> Result<Self> {
        let h = param.h().clone();
        let lay = StandardLayout::new(g, &h);
        let dh = lay.dh;
        let np = lay.plus_dim();
        let mut factors = Vec::with_capacity(np);
        for d in h.factors() {
            factors.extend(std::iter::repeat_n(d.clone(), g));
        }
        factors.extend(std::iter::repeat_n(BigInt::zero(), g));
        let plus = FgAbGroup::new(factors)?;
        let tau = (0..g)
            .map(|i| (0..dh).map(|k| unit(np, lay.tau_coord(i, k))).collect())
            .collect();
        let pair = HPair::new(h.clone(), FgAbGroup::free(g), plus, tau)?;
        let mut lambda = IntMatrix::zeros(g, np);
        let mut mu = vec![vec![h.zero(); np]; np];
        let eps = param.eps();
        for i in 0..g {
            lambda[(i, lay.b_coord(i))] = BigInt::one();
            for k in 0..dh {
                let hk = h.generator(k);
                mu[lay.tau_coord(i, k)][lay.b_coord(i)] = hk.clone();
                mu[lay.b_coord(i)][lay.tau_coord(i, k)] = h.scale(&eps, &hk);
            }
        }
        let am = vec![param.g.minus().zero(); g];
        let ap = vec![param.g.plus().zero(); np];
        WallForm::new(pair, lambda, mu, am, ap, param.clone())
    }

    /// The zero form.
    pub fn zero(param: &FormParameter) -> Self {
        Self::standard(0, param).expect("the zero form is valid")
    }

    /// `Some(g)` when this is literally the standard form of rank `g`.
    pub fn standard_rank(&self) -> Option<usize> {
        let g = self.pair.minus().ngens();
        match Self::standard(g, &self.param) {
            Ok(s) if &s == self => Some(g),
            _ => None,
        }
    }

    pub fn pair(&self) -> &HPair {
        &self.pair
    }

    pub fn param(&self) -> &FormParameter {
        &self.param
    }

    pub fn h(&self) -> &FgAbGroup {
        self.pair.h()
    }

    pub fn minus(&self) -> &FgAbGroup {
        self.pair.minus()
    }

    pub fn plus(&self) -> &FgAbGroup {
        self.pair.plus()
    }

    pub fn lambda_matrix(&self) -> &IntMatrix {
        &self.lambda
    }

    pub fn mu_table(&self) -> &[Vec<Vec<BigInt>>] {
        &self.mu
    }

    pub fn alpha_minus_values(&self) -> &[Vec<BigInt>] {
        &self.alpha_minus
    }

    pub fn alpha_plus_values(&self) -> &[Vec<BigInt>] {
        &self.alpha_plus
    }

    pub fn is_zero(&self) -> bool {
        self.pair.is_zero()
    }

    pub fn tau(&self, x: &[BigInt], h: &[BigInt]) -> Vec<BigInt> {
        self.pair.tau(x, h)
    }

    pub fn lambda(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let l = &self.lambda[(i, j)];
                if !l.is_zero() && !yj.is_zero() {
                    acc += xi * l * yj;
                }
            }
        }
        acc
    }

    pub fn mu(&self, y: &[BigInt], y2: &[BigInt]) -> Vec<BigInt> {
        let h = self.h();
        let mut acc = h.zero();
        for (i, a) in y.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y2.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = a * b;
                for (l, v) in self.mu[i][j].iter().enumerate() {
                    acc[l] += &c * v;
                }
            }
        }
        h.canonicalize(&acc)
    }

    pub fn alpha_minus(&self, x: &[BigInt]) -> Vec<BigInt> {
        let gm = self.param.g.minus();
        let mut acc = gm.zero();
        for (i, c) in x.iter().enumerate() {
            for (l, v) in self.alpha_minus[i].iter().enumerate() {
                acc[l] += c * v;
            }
        }
        gm.canonicalize(&acc)
    }

    /// `α+(Σ n_i y_i) = Σ (n_i α+(y_i) + C(n_i, 2) ∂μ(y_i, y_i)) + Σ_{i<j} n_i n_j ∂μ(y_i, y_j)`.
    pub fn alpha_plus(&self, y: &[BigInt]) -> Vec<BigInt> {
        let gp = self.param.g.plus();
        let mut acc = gp.zero();
        for (i, ni) in y.iter().enumerate() {
            if ni.is_zero() {
                continue;
            }
            let c2 = binom2(ni);
            for l in 0..acc.len() {
                acc[l] += ni * &self.alpha_plus[i][l] + &c2 * &self.dmu[i][i][l];
            }
            for (j, nj) in y.iter().enumerate().skip(i + 1) {
                if nj.is_zero() {
                    continue;
                }
                let c = ni * nj;
                for l in 0..acc.len() {
                    acc[l] += &c * &self.dmu[i][j][l];
                }
            }
        }
        gp.canonicalize(&acc)
    }

    fn x_gen(&self, i: usize) -> Vec<BigInt> {
        unit(self.minus().ngens(), i)
    }

    fn y_gen(&self, j: usize) -> Vec<BigInt> {
        unit(self.plus().ngens(), j)
    }

    /// Checks every axiom on generators, in the order: well-definedness,
    /// symmetry, i, ii, iii, iv, v, vi, polarization.
    pub fn validate(&self) -> std::result::Result<(), AxiomViolation> {
        let (nm, np) = (self.minus().ngens(), self.plus().ngens());
        let h = self.h().clone();
        let (gm, gp) = (self.param.g.minus(), self.param.g.plus());
        let eps = self.param.eps();

        for (i, d) in self.minus().factors().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            if let Some(j) = (0..np).find(|&j| !self.lambda[(i, j)].is_zero()) {
                return fail(Axiom::WellDefinedness, format!("lambda(x{i}, y{j}) with {d}*x{i} = 0"));
            }
        }
        for (j, d) in self.plus().factors().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            if let Some(i) = (0..nm).find(|&i| !self.lambda[(i, j)].is_zero()) {
                return fail(Axiom::WellDefinedness, format!("lambda(x{i}, y{j}) with {d}*y{j} = 0"));
            }
            for i in 0..np {
                if !h.is_zero_elem(&scaled(d, &self.mu[i][j])) || !h.is_zero_elem(&scaled(d, &self.mu[j][i])) {
                    return fail(Axiom::WellDefinedness, format!("mu(y{i}, y{j}) with {d}*y{j} = 0"));
                }
            }
            let mut v = scaled(d, &self.alpha_plus[j]);
            let c2 = binom2(d);
            for (l, x) in self.dmu[j][j].iter().enumerate() {
                v[l] += &c2 * x;
            }
            if !gp.is_zero_elem(&v) {
                return fail(Axiom::WellDefinedness, format!("alpha+ on {d}*y{j} = 0"));
            }
        }

        for i in 0..np {
            for j in i..np {
                if h.scale(&eps, &self.mu[i][j]) != self.mu[j][i] {
                    return fail(Axiom::Symmetry, format!("mu(y{i}, y{j}) vs mu(y{j}, y{i})"));
                }
            }
        }

        let dh = h.ngens();
        for i in 0..nm {
            let xi = self.x_gen(i);
            for i2 in 0..nm {
                for k in 0..dh {
                    let t = &self.pair.tau_table()[i2][k];
                    if !self.lambda(&xi, t).is_zero() {
                        return fail(Axiom::I, format!("lambda(x{i}, tau(x{i2}, h{k}))"));
                    }
                }
            }
        }

        for i in 0..nm {
            let xi = self.x_gen(i);
            for k in 0..dh {
                let t = &self.pair.tau_table()[i][k];
                let hk = h.generator(k);
                for j in 0..np {
                    let yj = self.y_gen(j);
                    let lhs = self.mu(t, &yj);
                    let rhs = h.scale(&self.lambda(&xi, &yj), &hk);
                    if lhs != rhs {
                        return fail(Axiom::Ii, format!("(x{i}, h{k}, y{j})"));
                    }
                }
            }
        }

        for (i, d) in self.minus().factors().iter().enumerate() {
            if !d.is_zero() && !gm.is_zero_elem(&scaled(d, &self.alpha_minus[i])) {
                return fail(Axiom::Iii, format!("alpha- on {d}*x{i} = 0"));
            }
        }

        for i in 0..np {
            for j in i + 1..np {
                if self.dmu[i][j] != self.dmu[j][i] {
                    return fail(Axiom::Iv, format!("d(mu(y{i}, y{j})) differs from d(mu(y{j}, y{i}))"));
                }
            }
        }

        for j in 0..np {
            if self.mu[j][j] != self.param.pi.apply(&self.alpha_plus[j]) {
                return fail(Axiom::V, format!("y{j}"));
            }
        }

        for i in 0..nm {
            for k in 0..dh {
                let lhs = self.alpha_plus(&self.pair.tau_table()[i][k]);
                let rhs = self.param.g.tau(&self.alpha_minus[i], &h.generator(k));
                if lhs != rhs {
                    return fail(Axiom::Vi, format!("(x{i}, h{k})"));
                }
            }
        }

        let one_eps = BigInt::one() + &eps;
        for i in 0..np {
            for j in i..np {
                let lhs = self.param.pi.apply(&self.dmu[i][j]);
                let rhs = h.scale(&one_eps, &self.mu[i][j]);
                if lhs != rhs {
                    return fail(Axiom::Polarization, format!("(y{i}, y{j})"));
                }
            }
        }
        Ok(())
    }

    /// Tests the axioms as identities on `samples` random tuples
    /// `(x, x', y, y', h)` with coefficients in `[-3, 3]`.
    pub fn check_sampled(&self, samples: usize, seed: u64) -> std::result::Result<(), AxiomViolation> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = self.h();
        let (gm, gp) = (self.param.g.minus(), self.param.g.plus());
        let (minus, plus) = (self.minus(), self.plus());
        let eps = self.param.eps();
        for _ in 0..samples {
            let x = random_element(&mut rng, minus);
            let x2 = random_element(&mut rng, minus);
            let y = random_element(&mut rng, plus);
            let y2 = random_element(&mut rng, plus);
            let hh = random_element(&mut rng, h);
            let at = || format!("x={} x'={} y={} y'={} h={}", show(&x), show(&x2), show(&y), show(&y2), show(&hh));

            if self.mu(&y, &y2) != h.scale(&eps, &self.mu(&y2, &y)) {
                return fail(Axiom::Symmetry, at());
            }
            if !self.lambda(&x, &self.tau(&x2, &hh)).is_zero() {
                return fail(Axiom::I, at());
            }
            if self.mu(&self.tau(&x, &hh), &y) != h.scale(&self.lambda(&x, &y), &hh) {
                return fail(Axiom::Ii, at());
            }
            let xs = minus.add(&x, &x2);
            if self.alpha_minus(&xs) != gm.add(&self.alpha_minus(&x), &self.alpha_minus(&x2)) {
                return fail(Axiom::Iii, at());
            }
            let ys = plus.add(&y, &y2);
            let rhs = gp.add(
                &gp.add(&self.alpha_plus(&y), &self.alpha_plus(&y2)),
                &self.param.partial.apply(&self.mu(&y, &y2)),
            );
            if self.alpha_plus(&ys) != rhs {
                return fail(Axiom::Iv, at());
            }
            if self.mu(&y, &y) != self.param.pi.apply(&self.alpha_plus(&y)) {
                return fail(Axiom::V, at());
            }
            if self.alpha_plus(&self.tau(&x, &hh)) != self.param.g.tau(&self.alpha_minus(&x), &hh) {
                return fail(Axiom::Vi, at());
            }
        }
        Ok(())
    }

    /// The hom `T(0)(v) = (0, λ(v, ·))` into `P(0)`.
    pub fn t0(&self, v: &[BigInt]) -> HMap {
        let np = self.plus().ngens();
        let row: Vec<BigInt> = (0..np).map(|j| self.lambda(v, &self.y_gen(j))).collect();
        let probe = HPair::probe(0, self.h());
        HMap::from_matrices(
            &self.pair,
            &probe,
            IntMatrix::zeros(0, self.minus().ngens()),
            IntMatrix::from_vec(1, np, row),
        )
        .expect("T(0)(v) is an H-map")
    }

    /// The hom `T(1)(w) = (λ(·, w), μ(·, w))` into `P(1)`.
    pub fn t1(&self, w: &[BigInt]) -> HMap {
        let (nm, np) = (self.minus().ngens(), self.plus().ngens());
        let row: Vec<BigInt> = (0..nm).map(|i| self.lambda(&self.x_gen(i), w)).collect();
        let cols: Vec<Vec<BigInt>> = (0..np).map(|j| self.mu(&self.y_gen(j), w)).collect();
        let probe = HPair::probe(1, self.h());
        HMap::from_matrices(
            &self.pair,
            &probe,
            IntMatrix::from_vec(1, nm, row),
            IntMatrix::from_columns(self.h().ngens(), &cols),
        )
        .expect("T(1)(w) is an H-map")
    }

    /// The duality map `T(ν)` as a homomorphism into `Hom(M, P(ν))`.
    pub fn duality_map(&self, nu: u8) -> Duality {
        let homs = self.pair.hom_to_probe(nu);
        let (nm, np) = (self.minus().ngens(), self.plus().ngens());
        let (domain, cols): (FgAbGroup, Vec<Vec<BigInt>>) = match nu {
            0 => {
                let cols = (0..nm)
                    .map(|i| {
                        let xi = self.x_gen(i);
                        let u: Vec<BigInt> = (0..np).map(|j| self.lambda(&xi, &self.y_gen(j))).collect();
                        homs.element_from_values(&u).expect("λ(v, ·) is an H-map")
                    })
                    .collect();
                (self.minus().clone(), cols)
            }
            1 => {
                let cols = (0..np)
                    .map(|j| {
                        let yj = self.y_gen(j);
                        let mut u: Vec<BigInt> = (0..nm).map(|i| self.lambda(&self.x_gen(i), &yj)).collect();
                        for l in 0..np {
                            u.extend(self.mu(&self.y_gen(l), &yj));
                        }
                        homs.element_from_values(&u).expect("(λ(·, w), μ(·, w)) is an H-map")
                    })
                    .collect();
                (self.plus().clone(), cols)
            }
            _ => panic!("probe index must be 0 or 1"),
        };
        let map = GroupHom::from_columns(domain, homs.group.clone(), &cols).expect("duality map is well defined");
        Duality { homs, map }
    }

    /// Whether both duality maps are bijective, with their kernels and cokernels.
    pub fn nonsingularity(&self) -> NonsingularityCertificate {
        let report = |nu: u8| {
            let d = self.duality_map(nu);
            DualityReport {
                hom_group: d.homs.group.clone(),
                kernel: d.map.kernel().group,
                cokernel: d.map.cokernel().group,
                invariant_factors: linalg::invariant_factors(d.map.matrix()),
            }
        };
        let t0 = report(0);
        let t1 = report(1);
        NonsingularityCertificate {
            nonsingular: t0.is_bijective() && t1.is_bijective(),
            t0,
            t1,
        }
    }

    pub fn is_nonsingular(&self) -> bool {
        self.nonsingularity().nonsingular
    }
}

fn scaled(c: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| c * x).collect()
}

pub(crate) fn random_element<R: Rng>(rng: &mut R, g: &FgAbGroup) -> Vec<BigInt> {
    let v: Vec<BigInt> = (0..g.ngens()).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
    g.canonicalize(&v)
}

/// `T(ν)` together with the group it maps into.
#[derive(Clone, Debug)]
pub struct Duality {
    pub homs: ProbeHoms,
    pub map: GroupHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub hom_group: FgAbGroup,
    pub kernel: FgAbGroup,
    pub cokernel: FgAbGroup,
    pub invariant_factors: Vec<BigInt>,
}

impl DualityReport {
    pub fn is_bijective(&self) -> bool {
        self.kernel.is_trivial() && self.cokernel.is_trivial()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonsingularityCertificate {
    pub nonsingular: bool,
    pub t0: DualityReport,
    pub t1: DualityReport,
}

/// An H-map between Wall forms with the same parameter preserving `λ`, `μ`, `α±`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallMorphism {
    source: Arc<WallForm>,
    target: Arc<WallForm>,
    hmap: HMap,
}

impl WallMorphism {
    pub fn new(source: Arc<WallForm>, target: Arc<WallForm>, hmap: HMap) -> Result<Self> {
        if source.param != target.param {
            return Err(Error::ParameterMismatch);
        }
        let f = WallMorphism { source, target, hmap };
        f.check_preservation()?;
        Ok(f)
    }

    /// Builds the morphism from the images of the source generators.
    pub fn from_images(
        source: Arc<WallForm>,
        target: Arc<WallForm>,
        minus_images: &[Vec<BigInt>],
        plus_images: &[Vec<BigInt>],
    ) -> Result<Self> {
        if source.param != target.param {
            return Err(Error::ParameterMismatch);
        }
        if minus_images.len() != source.minus().ngens()
            || plus_images.len() != source.plus().ngens()
            || minus_images.iter().any(|v| v.len() != target.minus().ngens())
            || plus_images.iter().any(|v| v.len() != target.plus().ngens())
        {
            return Err(Error::Dimension("image lists do not match the forms".into()));
        }
        let m = GroupHom::from_columns(source.minus().clone(), target.minus().clone(), minus_images)?;
        let p = GroupHom::from_columns(source.plus().clone(), target.plus().clone(), plus_images)?;
        let hmap = match HMap::new(source.pair(), target.pair(), m, p) {
            Ok(h) => h,
            Err(Error::SquareViolation(w)) => {
                return Err(Error::PreservationViolation {
                    which: Preserved::Tau,
                    witness: w,
                })
            }
            Err(e) => return Err(e),
        };
        Self::new(source, target, hmap)
    }

    /// The morphism `W^k → target` with `a_i ↦ xs[i]`, `b_i ↦ ys[i]`.
    pub fn from_standard(target: Arc<WallForm>, xs: &[Vec<BigInt>], ys: &[Vec<BigInt>]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Dimension("need as many a-images as b-images".into()));
        }
        let k = xs.len();
        let source = Arc::new(WallForm::standard(k, target.param())?);
        let lay = StandardLayout::new(k, target.h());
        let h = target.h();
        let mut plus_images = vec![Vec::new(); lay.plus_dim()];
        for i in 0..k {
            for kk in 0..lay.dh {
                plus_images[lay.tau_coord(i, kk)] = target.tau(&xs[i], &h.generator(kk));
            }
            plus_images[lay.b_coord(i)] = ys[i].clone();
        }
        Self::from_images(source, target, xs, &plus_images)
    }

    pub fn identity(w: &Arc<WallForm>) -> Self {
        WallMorphism {
            source: w.clone(),
            target: w.clone(),
            hmap: HMap::identity(w.pair()),
        }
    }

    fn check_preservation(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        let (nm, np) = (s.minus().ngens(), s.plus().ngens());
        let fx: Vec<Vec<BigInt>> = (0..nm).map(|i| self.hmap.minus().image_of_generator(i)).collect();
        let fy: Vec<Vec<BigInt>> = (0..np).map(|j| self.hmap.plus().image_of_generator(j)).collect();
        let violation = |which, witness: String| Err(Error::PreservationViolation { which, witness });
        for i in 0..nm {
            for j in 0..np {
                if t.lambda(&fx[i], &fy[j]) != s.lambda[(i, j)] {
                    return violation(Preserved::Lambda, format!("(x{i}, y{j})"));
                }
            }
        }
        for i in 0..np {
            for j in i..np {
                if t.mu(&fy[i], &fy[j]) != s.mu[i][j] {
                    return violation(Preserved::Mu, format!("(y{i}, y{j})"));
                }
            }
        }
        for (i, x) in fx.iter().enumerate() {
            if t.alpha_minus(x) != s.alpha_minus[i] {
                return violation(Preserved::AlphaMinus, format!("x{i}"));
            }
        }
        for (j, y) in fy.iter().enumerate() {
            if t.alpha_plus(y) != s.alpha_plus[j] {
                return violation(Preserved::AlphaPlus, format!("y{j}"));
            }
        }
        Ok(())
    }

    /// Cross-checks preservation on random elements.
    pub fn check_sampled(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, t) = (&*self.source, &*self.target);
        for _ in 0..samples {
            let x = random_element(&mut rng, s.minus());
            let y = random_element(&mut rng, s.plus());
            let y2 = random_element(&mut rng, s.plus());
            let (fx, fy, fy2) = (self.apply_minus(&x), self.apply_plus(&y), self.apply_plus(&y2));
            let w = format!("x={} y={} y'={}", show(&x), show(&y), show(&y2));
            let checks = [
                (Preserved::Lambda, t.lambda(&fx, &fy) == s.lambda(&x, &y)),
                (Preserved::Mu, t.mu(&fy, &fy2) == s.mu(&y, &y2)),
                (Preserved::AlphaMinus, t.alpha_minus(&fx) == s.alpha_minus(&x)),
                (Preserved::AlphaPlus, t.alpha_plus(&fy) == s.alpha_plus(&y)),
            ];
            if let Some((which, _)) = checks.iter().find(|(_, ok)| !ok) {
                return Err(Error::PreservationViolation {
                    which: *which,
                    witness: w,
                });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<WallForm> {
        &self.source
    }

    pub fn target(&self) -> &Arc<WallForm> {
        &self.target
    }

    pub fn hmap(&self) -> &HMap {
        &self.hmap
    }

    pub fn apply_minus(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.hmap.minus().apply(x)
    }

    pub fn apply_plus(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.hmap.plus().apply(y)
    }

    /// For a morphism out of a standard form: the images of `a_i` and `b_i`.
    pub fn standard_images(&self) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
        let k = self.source.minus().ngens();
        let lay = StandardLayout::new(k, self.source.h());
        let xs = (0..k).map(|i| self.apply_minus(&lay.a(i))).collect();
        let ys = (0..k).map(|i| self.apply_plus(&lay.b(i))).collect();
        (xs, ys)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &WallMorphism) -> Result<WallMorphism> {
        if !Arc::ptr_eq(&inner.target, &self.source) && *inner.target != *self.source {
            return Err(Error::Dimension("composition of morphisms with mismatched forms".into()));
        }
        WallMorphism::new(inner.source.clone(), self.target.clone(), self.hmap.compose(&inner.hmap)?)
    }

    pub fn is_injective(&self) -> bool {
        self.hmap.minus().is_injective() && self.hmap.plus().is_injective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.hmap.is_isomorphism()
    }

    pub fn inverse(&self) -> Result<WallMorphism> {
        let inv = self.hmap.inverse(self.source.pair(), self.target.pair())?;
        WallMorphism::new(self.target.clone(), self.source.clone(), inv)
    }

    /// The image as a sub-form of the target.
    pub fn image(&self) -> SubWallForm {
        let (s, _) = (&self.source, &self.target);
        let minus = (0..s.minus().ngens()).map(|i| self.hmap.minus().image_of_generator(i)).collect();
        let plus = (0..s.plus().ngens()).map(|j| self.hmap.plus().image_of_generator(j)).collect();
        SubWallForm::new(self.target.clone(), minus, plus).expect("images of H-maps are sub-pairs")
    }
}

/// A sub-pair of a Wall form with the restricted structure.
#[derive(Clone, Debug)]
pub struct SubWallForm {
    ambient: Arc<WallForm>,
    sub: SubHPair,
}

impl SubWallForm {
    pub fn new(ambient: Arc<WallForm>, minus_gens: Vec<Vec<BigInt>>, plus_gens: Vec<Vec<BigInt>>) -> Result<Self> {
        let minus_gens = nonzero(ambient.minus(), minus_gens);
        let plus_gens = nonzero(ambient.plus(), plus_gens);
        let sub = SubHPair::new(ambient.pair(), minus_gens, plus_gens)?;
        Ok(SubWallForm { ambient, sub })
    }

    pub fn full(ambient: &Arc<WallForm>) -> Self {
        SubWallForm {
            sub: SubHPair::full(ambient.pair()),
            ambient: ambient.clone(),
        }
    }

    pub fn zero(ambient: &Arc<WallForm>) -> Self {
        SubWallForm {
            sub: SubHPair::default(),
            ambient: ambient.clone(),
        }
    }

    pub fn ambient(&self) -> &Arc<WallForm> {
        &self.ambient
    }

    pub fn sub(&self) -> &SubHPair {
        &self.sub
    }

    pub fn minus_gens(&self) -> &[Vec<BigInt>] {
        &self.sub.minus_gens
    }

    pub fn plus_gens(&self) -> &[Vec<BigInt>] {
        &self.sub.plus_gens
    }

    pub fn contains_minus(&self, x: &[BigInt]) -> bool {
        self.sub.contains_minus(self.ambient.pair(), x)
    }

    pub fn contains_plus(&self, y: &[BigInt]) -> bool {
        self.sub.contains_plus(self.ambient.pair(), y)
    }

    pub fn is_contained_in(&self, other: &SubWallForm) -> bool {
        self.sub.is_contained_in(self.ambient.pair(), &other.sub)
    }

    pub fn same_as(&self, other: &SubWallForm) -> bool {
        self.is_contained_in(other) && other.is_contained_in(self)
    }

    pub fn is_zero(&self) -> bool {
        self.sub.is_zero(self.ambient.pair())
    }

    pub fn intersect(&self, other: &SubWallForm) -> SubWallForm {
        let s = self.sub.intersect(self.ambient.pair(), &other.sub);
        SubWallForm::new(self.ambient.clone(), s.minus_gens, s.plus_gens).expect("intersections of sub-pairs are sub-pairs")
    }

    /// Internal sum `self + other` (a sub-pair; orthogonality is not checked).
    pub fn sum(&self, other: &SubWallForm) -> SubWallForm {
        let mut m = self.sub.minus_gens.clone();
        m.extend(other.sub.minus_gens.iter().cloned());
        let mut p = self.sub.plus_gens.clone();
        p.extend(other.sub.plus_gens.iter().cloned());
        SubWallForm::new(self.ambient.clone(), m, p).expect("sums of sub-pairs are sub-pairs")
    }

    /// `N⊥`: `x` with `λ(x, N+) = 0`, and `y` with `λ(N-, y) = 0`, `μ(y, N+) = 0`.
    pub fn orthogonal_complement(&self) -> SubWallForm {
        let w = &*self.ambient;
        let (nm, np) = (w.minus().ngens(), w.plus().ngens());
        let h = w.h();

        let minus_rows: Vec<Vec<BigInt>> = self
            .sub
            .plus_gens
            .iter()
            .map(|y| (0..nm).map(|i| w.lambda(&unit(nm, i), y)).collect())
            .collect();
        let minus_gens = if minus_rows.is_empty() || nm == 0 {
            (0..nm).map(|i| unit(nm, i)).collect()
        } else {
            linalg::kernel_basis(&IntMatrix::from_rows(nm, &minus_rows)).columns()
        };

        let mut rows = Vec::new();
        let mut moduli = Vec::new();
        for x in &self.sub.minus_gens {
            rows.push((0..np).map(|j| w.lambda(x, &unit(np, j))).collect::<Vec<_>>());
            moduli.push(BigInt::zero());
        }
        for y in &self.sub.plus_gens {
            let vals: Vec<Vec<BigInt>> = (0..np).map(|j| w.mu(&unit(np, j), y)).collect();
            for (l, e) in h.factors().iter().enumerate() {
                rows.push(vals.iter().map(|v| v[l].clone()).collect());
                moduli.push(e.clone());
            }
        }
        let plus_gens = if rows.is_empty() || np == 0 {
            (0..np).map(|j| unit(np, j)).collect()
        } else {
            linalg::congruence_kernel(&IntMatrix::from_rows(np, &rows), &moduli).columns()
        };
        SubWallForm::new(self.ambient.clone(), minus_gens, plus_gens).expect("orthogonal complements are closed under tau")
    }

    /// Whether the two sub-forms meet in zero and are mutually orthogonal.
    pub fn is_orthogonal_to(&self, other: &SubWallForm) -> bool {
        let w = &*self.ambient;
        let orth = |a: &SubWallForm, b: &SubWallForm| {
            a.sub.minus_gens.iter().all(|x| b.sub.plus_gens.iter().all(|y| w.lambda(x, y).is_zero()))
                && a.sub.plus_gens.iter().all(|y| b.sub.plus_gens.iter().all(|y2| w.h().is_zero_elem(&w.mu(y, y2))))
        };
        orth(self, other) && orth(other, self) && self.intersect(other).is_zero()
    }

    /// The sub-form as a standalone Wall form, with its inclusion morphism.
    pub fn to_wall_form(&self) -> Result<(Arc<WallForm>, WallMorphism)> {
        let w = &*self.ambient;
        let sm = Subgroup::new(w.minus(), &self.sub.minus_gens);
        let sp = Subgroup::new(w.plus(), &self.sub.plus_gens);
        let h = w.h();
        let xs: Vec<Vec<BigInt>> = (0..sm.group.ngens()).map(|i| sm.inclusion.image_of_generator(i)).collect();
        let ys: Vec<Vec<BigInt>> = (0..sp.group.ngens()).map(|j| sp.inclusion.image_of_generator(j)).collect();
        let tau = xs
            .iter()
            .map(|x| {
                (0..h.ngens())
                    .map(|k| {
                        sp.coordinates(w.plus(), &w.tau(x, &h.generator(k)))
                            .expect("sub-pair is closed under tau")
                    })
                    .collect()
            })
            .collect();
        let pair = HPair::new(h.clone(), sm.group.clone(), sp.group.clone(), tau)?;
        let lambda_rows: Vec<Vec<BigInt>> = xs.iter().map(|x| ys.iter().map(|y| w.lambda(x, y)).collect()).collect();
        let lambda = IntMatrix::from_rows(ys.len(), &lambda_rows);
        let mu = ys.iter().map(|y| ys.iter().map(|y2| w.mu(y, y2)).collect()).collect();
        let am = xs.iter().map(|x| w.alpha_minus(x)).collect();
        let ap = ys.iter().map(|y| w.alpha_plus(y)).collect();
        let form = Arc::new(WallForm::new(pair, lambda, mu, am, ap, w.param.clone())?);
        let hmap = HMap::new(form.pair(), w.pair(), sm.inclusion, sp.inclusion)?;
        let inc = WallMorphism::new(form.clone(), self.ambient.clone(), hmap)?;
        Ok((form, inc))
    }
}

fn nonzero(g: &FgAbGroup, gens: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for v in gens {
        let c = g.canonicalize(&v);
        if !g.is_zero_elem(&c) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// `A ⊥ B` with its inclusions and projections.
#[derive(Clone, Debug)]
pub struct PerpSum {
    pub form: Arc<WallForm>,
    pub inc_a: WallMorphism,
    pub inc_b: WallMorphism,
    pub proj_a: HMap,
    pub proj_b: HMap,
}

/// The orthogonal sum of two forms with the same parameter.
pub fn perp_sum(a: &Arc<WallForm>, b: &Arc<WallForm>) -> Result<PerpSum> {
    if a.param != b.param {
        return Err(Error::ParameterMismatch);
    }
    if let (Some(ka), Some(kb)) = (a.standard_rank(), b.standard_rank()) {
        return standard_perp_sum(a, b, ka, kb);
    }
    let s = HPair::direct_sum(a.pair(), b.pair())?;
    let (nm, np) = (s.pair.minus().ngens(), s.pair.plus().ngens());
    let h = a.h();
    let (gm, gp) = (a.param.g.minus(), a.param.g.plus());
    let pm = |e: &[BigInt]| (s.proj_a.minus().apply(e), s.proj_b.minus().apply(e));
    let pp = |e: &[BigInt]| (s.proj_a.plus().apply(e), s.proj_b.plus().apply(e));
    let xs: Vec<_> = (0..nm).map(|i| pm(&unit(nm, i))).collect();
    let ys: Vec<_> = (0..np).map(|j| pp(&unit(np, j))).collect();
    let lambda_rows: Vec<Vec<BigInt>> = xs
        .iter()
        .map(|(xa, xb)| ys.iter().map(|(ya, yb)| a.lambda(xa, ya) + b.lambda(xb, yb)).collect())
        .collect();
    let lambda = IntMatrix::from_rows(np, &lambda_rows);
    let mu = ys
        .iter()
        .map(|(ya, yb)| ys.iter().map(|(ya2, yb2)| h.add(&a.mu(ya, ya2), &b.mu(yb, yb2))).collect())
        .collect();
    let am = xs.iter().map(|(xa, xb)| gm.add(&a.alpha_minus(xa), &b.alpha_minus(xb))).collect();
    let ap = ys.iter().map(|(ya, yb)| gp.add(&a.alpha_plus(ya), &b.alpha_plus(yb))).collect();
    let form = Arc::new(WallForm::new(s.pair.clone(), lambda, mu, am, ap, a.param.clone())?);
    let inc_a = WallMorphism::new(a.clone(), form.clone(), s.inc_a)?;
    let inc_b = WallMorphism::new(b.clone(), form.clone(), s.inc_b)?;
    assert!(inc_a.image().is_orthogonal_to(&inc_b.image()), "summands of a perp sum are orthogonal");
    Ok(PerpSum {
        form,
        inc_a,
        inc_b,
        proj_a: s.proj_a,
        proj_b: s.proj_b,
    })
}

/// `W^ka ⊥ W^kb` laid out literally as `W^(ka+kb)`, with `A` on the first blocks.
fn standard_perp_sum(a: &Arc<WallForm>, b: &Arc<WallForm>, ka: usize, kb: usize) -> Result<PerpSum> {
    let g = ka + kb;
    let form = Arc::new(WallForm::standard(g, &a.param)?);
    let h = a.h();
    let lay = StandardLayout::new(g, h);
    let part = |k: usize, offset: usize| {
        let sub = StandardLayout::new(k, h);
        let mut inc_m = IntMatrix::zeros(g, k);
        let mut inc_p = IntMatrix::zeros(lay.plus_dim(), sub.plus_dim());
        for i in 0..k {
            inc_m[(offset + i, i)] = BigInt::one();
            inc_p[(lay.b_coord(offset + i), sub.b_coord(i))] = BigInt::one();
            for l in 0..lay.dh {
                inc_p[(lay.tau_coord(offset + i, l), sub.tau_coord(i, l))] = BigInt::one();
            }
        }
        (inc_m, inc_p)
    };
    let (am, ap) = part(ka, 0);
    let (bm, bp) = part(kb, ka);
    let inc_a = WallMorphism::new(a.clone(), form.clone(), HMap::from_matrices(a.pair(), form.pair(), am.clone(), ap.clone())?)?;
    let inc_b = WallMorphism::new(b.clone(), form.clone(), HMap::from_matrices(b.pair(), form.pair(), bm.clone(), bp.clone())?)?;
    let proj_a = HMap::from_matrices(form.pair(), a.pair(), am.transpose(), ap.transpose())?;
    let proj_b = HMap::from_matrices(form.pair(), b.pair(), bm.transpose(), bp.transpose())?;
    Ok(PerpSum {
        form,
        inc_a,
        inc_b,
        proj_a,
        proj_b,
    })
}

/// The morphism `A ⊥ B → M` restricting to `f` on `A` and `g` on `B`.
pub fn join(sum: &PerpSum, f: &WallMorphism, g: &WallMorphism) -> Result<WallMorphism> {
    let src = &sum.form;
    let (nm, np) = (src.minus().ngens(), src.plus().ngens());
    let tm = f.target().minus();
    let tp = f.target().plus();
    let minus: Vec<Vec<BigInt>> = (0..nm)
        .map(|i| {
            let e = unit(nm, i);
            tm.add(
                &f.apply_minus(&sum.proj_a.minus().apply(&e)),
                &g.apply_minus(&sum.proj_b.minus().apply(&e)),
            )
        })
        .collect();
    let plus: Vec<Vec<BigInt>> = (0..np)
        .map(|j| {
            let e = unit(np, j);
            tp.add(
                &f.apply_plus(&sum.proj_a.plus().apply(&e)),
                &g.apply_plus(&sum.proj_b.plus().apply(&e)),
            )
        })
        .collect();
    WallMorphism::from_images(src.clone(), f.target().clone(), &minus, &plus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[i64]) -> FgAbGroup {
        FgAbGroup::from_i64(f).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn standard_forms_validate() {
        for h in [&[][..], &[2], &[6], &[2, 4]] {
            let p = FormParameter::trivial(&g(h), -1);
            for rank in 0..4 {
                let w = WallForm::standard(rank, &p).unwrap();
                w.check_sampled(50, 7).unwrap();
                assert_eq!(w.standard_rank(), Some(rank));
            }
        }
        let w = WallForm::standard(2, &FormParameter::z2()).unwrap();
        assert_eq!(w.plus(), &g(&[2, 2, 0, 0]));
        w.check_sampled(50, 1).unwrap();
    }

    #[test]
    fn standard_form_needs_polarization() {
        // μ(τ(a, h), b) = h but π∂(h) = 0 ≠ 2h in Z/6 when ε = 1
        let r = WallForm::standard(1, &FormParameter::trivial(&g(&[6]), 1));
        assert!(matches!(r, Err(Error::Axiom(AxiomViolation { axiom: Axiom::Polarization, .. }))));
        assert!(WallForm::standard(1, &FormParameter::trivial(&g(&[2]), 1)).is_ok());
    }

    #[test]
    fn alpha_plus_extension() {
        let w = WallForm::standard(2, &FormParameter::z2()).unwrap();
        let lay = StandardLayout::new(2, w.h());
        let y = w.plus().add(&lay.b(0), &lay.b(1));
        assert!(w.param().g().plus().is_zero_elem(&w.alpha_plus(&y)));
        // α+(b + τ(a, h)) = ∂μ(τ(a, h), b) = h in G+ for the z2 parameter
        let y = w.plus().add(&lay.b(0), &unit(lay.plus_dim(), lay.tau_coord(0, 0)));
        assert_eq!(w.alpha_plus(&y), bi(&[1]));
    }

    #[test]
    fn duality_on_w1() {
        let h = g(&[2]);
        let w = WallForm::standard(1, &FormParameter::trivial(&h, -1)).unwrap();
        let lay = StandardLayout::new(1, &h);
        let d1 = w.duality_map(1);
        let tb = d1.map.apply(&lay.b(0));
        assert_eq!(d1.homs.eval_minus(&tb, &lay.a(0)), bi(&[1]));
        assert_eq!(d1.homs.eval_plus(&tb, &lay.b(0)), bi(&[0]));
        let t = unit(lay.plus_dim(), lay.tau_coord(0, 0));
        let tt = d1.map.apply(&t);
        assert_eq!(d1.homs.eval_plus(&tt, &lay.b(0)), bi(&[1]));
        let d0 = w.duality_map(0);
        assert!(d0.homs.group.is_zero_elem(&d0.map.apply(&bi(&[0]))));
        assert!(w.is_nonsingular());
    }

    #[test]
    fn lambda_two_is_singular() {
        let p = FormParameter::trivial(&FgAbGroup::trivial(), -1);
        let w1 = WallForm::standard(1, &p).unwrap();
        let m = WallForm::new(
            w1.pair().clone(),
            IntMatrix::from_i64_rows(&[&[2]]),
            w1.mu_table().to_vec(),
            w1.alpha_minus_values().to_vec(),
            w1.alpha_plus_values().to_vec(),
            p,
        )
        .unwrap();
        let c = m.nonsingularity();
        assert!(!c.nonsingular);
        assert_eq!(c.t0.cokernel, g(&[2]));
        assert!(!WallForm::zero(&FormParameter::z2()).is_nonsingular() || WallForm::zero(&FormParameter::z2()).is_zero());
    }

    #[test]
    fn morphisms_between_standard_forms() {
        let h = g(&[2]);
        let p = FormParameter::trivial(&h, -1);
        let w2 = Arc::new(WallForm::standard(2, &p).unwrap());
        let lay = StandardLayout::new(2, &h);
        let f = WallMorphism::from_standard(w2.clone(), &[lay.a(0)], &[lay.b(0)]).unwrap();
        f.check_sampled(30, 3).unwrap();
        let x = w2.minus().add(&lay.a(0), &lay.a(1));
        WallMorphism::from_standard(w2.clone(), &[x], &[lay.b(0)]).unwrap();
        let r = WallMorphism::from_standard(w2.clone(), &[lay.a(0)], &[w2.plus().scale(&BigInt::from(2), &lay.b(0))]);
        assert!(matches!(
            r,
            Err(Error::PreservationViolation {
                which: Preserved::Lambda,
                ..
            })
        ));
    }

    #[test]
    fn complement_of_standard_inclusion() {
        let h = g(&[2]);
        let p = FormParameter::trivial(&h, -1);
        let w2 = Arc::new(WallForm::standard(2, &p).unwrap());
        let lay = StandardLayout::new(2, &h);
        let f = WallMorphism::from_standard(w2.clone(), &[lay.a(0)], &[lay.b(0)]).unwrap();
        let c = f.image().orthogonal_complement();
        let expect = SubWallForm::new(
            w2.clone(),
            vec![lay.a(1)],
            vec![lay.b(1), unit(lay.plus_dim(), lay.tau_coord(1, 0))],
        )
        .unwrap();
        assert!(c.same_as(&expect));
        assert!(SubWallForm::zero(&w2).orthogonal_complement().same_as(&SubWallForm::full(&w2)));
        assert!(c.is_orthogonal_to(&f.image()));
    }

    #[test]
    fn perp_sum_of_w1s() {
        let h = g(&[2]);
        let p = FormParameter::trivial(&h, -1);
        let w1 = Arc::new(WallForm::standard(1, &p).unwrap());
        let s = perp_sum(&w1, &w1).unwrap();
        assert_eq!(s.form.standard_rank(), Some(2));
        let z = Arc::new(WallForm::zero(&p));
        let s = perp_sum(&w1, &z).unwrap();
        assert_eq!(*s.form, *w1);
        let q = Arc::new(WallForm::standard(1, &FormParameter::trivial(&h, 1)).unwrap());
        assert!(matches!(perp_sum(&w1, &q), Err(Error::ParameterMismatch)));
    }

    #[test]
    fn sub_form_round_trip() {
        let h = g(&[2]);
        let p = FormParameter::trivial(&h, -1);
        let w2 = Arc::new(WallForm::standard(2, &p).unwrap());
        let lay = StandardLayout::new(2, &h);
        let f = WallMorphism::from_standard(w2.clone(), &[lay.a(0)], &[lay.b(0)]).unwrap();
        let (img, inc_i) = f.image().to_wall_form().unwrap();
        let (comp, inc_c) = f.image().orthogonal_complement().to_wall_form().unwrap();
        let s = perp_sum(&img, &comp).unwrap();
        let total = join(&s, &inc_i, &inc_c).unwrap();
        assert!(total.is_isomorphism());
    }
}
