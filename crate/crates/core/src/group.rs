//! Finitely generated abelian groups in invariant-factor normal form.
//!
//! A group is stored as its factor list `(d_1, ..., d_k)`: finite factors
//! first in a divisibility chain, free factors (`0`) last, and no factor equal
//! to `1`. Elements are coordinate vectors, canonical when coordinate `i` lies
//! in `[0, d_i)` for every finite factor.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    factors: Vec<BigInt>,
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn is_normal_chain(factors: &[BigInt]) -> bool {
    let mut seen_free = false;
    let mut prev: Option<&BigInt> = None;
    for d in factors {
        if d.is_negative() || d.is_one() {
            return false;
        }
        if d.is_zero() {
            seen_free = true;
            continue;
        }
        if seen_free {
            return false;
        }
        if let Some(p) = prev {
            if !d.is_multiple_of(p) {
                return false;
            }
        }
        prev = Some(d);
    }
    true
}

impl FgAbGroup {
    /// Wraps a factor list that is already in normal form.
    pub fn new(factors: Vec<BigInt>) -> Result<Self> {
        if !is_normal_chain(&factors) {
            let shown: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
            return Err(Error::NotNormalForm(format!("[{}]", shown.join(", "))));
        }
        Ok(FgAbGroup { factors })
    }

    pub fn from_i64(factors: &[i64]) -> Result<Self> {
        Self::new(factors.iter().map(|&d| BigInt::from(d)).collect())
    }

    /// The group `⊕ Z/d_i` for an arbitrary list of non-negative moduli, in normal form.
    pub fn from_cyclic_factors(moduli: &[BigInt]) -> Presentation {
        let n = moduli.len();
        let rels: Vec<Vec<BigInt>> = moduli
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); n];
                c[i] = d.clone();
                c
            })
            .collect();
        group_from_presentation(&IntMatrix::from_columns(n, &rels), n)
    }

    pub fn trivial() -> Self {
        FgAbGroup { factors: vec![] }
    }

    pub fn free(n: usize) -> Self {
        FgAbGroup {
            factors: vec![BigInt::zero(); n],
        }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Number of normal-form generators.
    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.factors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens()]
    }

    /// The `i`-th normal-form generator.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut e = self.zero();
        e[i] = BigInt::one();
        self.canonicalize(&e)
    }

    pub fn canonicalize(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ngens(), "element length {} in {}", x.len(), self);
        x.iter()
            .zip(&self.factors)
            .map(|(c, d)| if d.is_zero() { c.clone() } else { c.mod_floor(d) })
            .collect()
    }

    pub fn is_zero_elem(&self, x: &[BigInt]) -> bool {
        x.iter()
            .zip(&self.factors)
            .all(|(c, d)| if d.is_zero() { c.is_zero() } else { c.is_multiple_of(d) })
    }

    pub fn eq_elem(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.canonicalize(x) == self.canonicalize(y)
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.canonicalize(&s)
    }

    pub fn sub(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.canonicalize(&s)
    }

    pub fn scale(&self, c: &BigInt, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| c * a).collect();
        self.canonicalize(&s)
    }

    /// Relation moduli per coordinate (0 for free coordinates).
    pub fn moduli(&self) -> &[BigInt] {
        &self.factors
    }

    /// Columns `d_i e_i` for the finite factors.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let cols: Vec<Vec<BigInt>> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); n];
                c[i] = d.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(n, &cols)
    }

    /// Whether `y` lies in the subgroup generated by `gens`; returns coefficients.
    pub fn span_coefficients(&self, gens: &[Vec<BigInt>], y: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.ngens();
        if n == 0 {
            return Some(vec![BigInt::zero(); gens.len()]);
        }
        let g = IntMatrix::from_columns(n, gens);
        let a = g.hcat(&self.relation_matrix());
        let x = linalg::solve(&a, y)?;
        Some(x[..gens.len()].to_vec())
    }

    pub fn in_span(&self, gens: &[Vec<BigInt>], y: &[BigInt]) -> bool {
        self.span_coefficients(gens, y).is_some()
    }

    /// Generators of the intersection of the subgroups spanned by `g1` and `g2`.
    pub fn intersect_spans(&self, g1: &[Vec<BigInt>], g2: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = self.ngens();
        if n == 0 || g1.is_empty() || g2.is_empty() {
            return vec![];
        }
        let a = IntMatrix::from_columns(n, g1);
        let neg: Vec<Vec<BigInt>> = g2.iter().map(|c| c.iter().map(|v| -v).collect()).collect();
        let b = IntMatrix::from_columns(n, &neg);
        let sys = a.hcat(&b).hcat(&self.relation_matrix());
        let k = linalg::kernel_basis(&sys);
        let mut out = Vec::new();
        for col in k.columns() {
            let x = a.mul_vec(&col[..g1.len()]);
            let x = self.canonicalize(&x);
            if !self.is_zero_elem(&x) {
                out.push(x);
            }
        }
        out
    }

    /// Minimal number of generators (equal to the factor count in normal form).
    pub fn generating_set_length(&self) -> usize {
        self.ngens()
    }

    /// Direct sum with explicit inclusions and projections.
    pub fn direct_sum(a: &FgAbGroup, b: &FgAbGroup) -> DirectSum {
        let concat: Vec<BigInt> = a.factors.iter().chain(&b.factors).cloned().collect();
        let n = concat.len();
        // a stable sort into normal order is enough whenever the combined list
        // is already a chain up to permutation
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            let (x, y) = (&concat[i], &concat[j]);
            match (x.is_zero(), y.is_zero()) {
                (true, false) => std::cmp::Ordering::Greater,
                (false, true) => std::cmp::Ordering::Less,
                _ => x.cmp(y),
            }
        });
        let sorted: Vec<BigInt> = order.iter().map(|&i| concat[i].clone()).collect();
        let (group, to_sum, from_sum) = if is_normal_chain(&sorted) {
            let mut to = IntMatrix::zeros(n, n);
            for (new, &old) in order.iter().enumerate() {
                to[(new, old)] = BigInt::one();
            }
            let from = to.transpose();
            (FgAbGroup { factors: sorted }, to, from)
        } else {
            let p = FgAbGroup::from_cyclic_factors(&concat);
            (p.group, p.quotient, p.section)
        };
        let na = a.ngens();
        let idx_a: Vec<usize> = (0..na).collect();
        let idx_b: Vec<usize> = (na..n).collect();
        DirectSum {
            inc_a: to_sum.select_columns(&idx_a),
            inc_b: to_sum.select_columns(&idx_b),
            proj_a: from_sum.select_rows(&idx_a),
            proj_b: from_sum.select_rows(&idx_b),
            group,
        }
    }
}

/// `A ⊕ B` in normal form; `inc_*` map component coordinates into the sum and
/// `proj_*` map sum coordinates back to each component.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub inc_a: IntMatrix,
    pub inc_b: IntMatrix,
    pub proj_a: IntMatrix,
    pub proj_b: IntMatrix,
}

/// A homomorphism between normal-form groups. Column `j` of `matrix` is the
/// image of the `j`-th domain generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.ngens() || matrix.cols() != domain.ngens() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.ngens(),
                domain.ngens()
            )));
        }
        for (j, d) in domain.factors().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let img: Vec<BigInt> = matrix.column(j).iter().map(|v| v * d).collect();
            if !codomain.is_zero_elem(&img) {
                return Err(Error::IllDefinedHom(format!(
                    "{d} times the image of generator {j} is nonzero in {codomain}"
                )));
            }
        }
        let mut m = matrix;
        for j in 0..m.cols() {
            let col = codomain.canonicalize(&m.column(j));
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix: m,
        })
    }

    pub fn from_columns(domain: FgAbGroup, codomain: FgAbGroup, cols: &[Vec<BigInt>]) -> Result<Self> {
        let m = IntMatrix::from_columns(codomain.ngens(), cols);
        Self::new(domain, codomain, m)
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(domain: &FgAbGroup, codomain: &FgAbGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.ngens(), domain.ngens()),
        }
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn image_of_generator(&self, j: usize) -> Vec<BigInt> {
        self.matrix.column(j)
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.codomain.canonicalize(&self.matrix.mul_vec(x))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.codomain != self.domain {
            return Err(Error::Dimension("composition of incompatible homomorphisms".into()));
        }
        GroupHom::new(
            inner.domain.clone(),
            self.codomain.clone(),
            &self.matrix * &inner.matrix,
        )
    }

    /// Lattice basis of `{x : f(x) = 0}` in domain coordinates (contains the
    /// domain relations).
    fn kernel_lattice(&self) -> IntMatrix {
        if self.codomain.ngens() == 0 {
            return IntMatrix::identity(self.domain.ngens());
        }
        linalg::congruence_kernel(&self.matrix, self.codomain.moduli())
    }

    /// Nonzero canonical generators of the kernel.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        self.kernel_lattice()
            .columns()
            .into_iter()
            .map(|c| self.domain.canonicalize(&sign_normalized(c)))
            .filter(|c| !self.domain.is_zero_elem(c))
            .collect()
    }

    /// The kernel as an abstract group.
    pub fn kernel(&self) -> Subquotient {
        Subquotient::new(self.kernel_lattice(), self.domain.relation_matrix())
    }

    /// The cokernel with its quotient map from the codomain.
    pub fn cokernel(&self) -> Presentation {
        let rels = self.matrix.hcat(&self.codomain.relation_matrix());
        group_from_presentation(&rels, self.codomain.ngens())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `f(x) = y`.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.codomain.ngens() == 0 {
            return Some(self.domain.zero());
        }
        let x = linalg::solve_congruence(&self.matrix, y, self.codomain.moduli())?;
        Some(self.domain.canonicalize(&x))
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_isomorphism() {
            return Err(Error::InvalidInput("homomorphism is not invertible".into()));
        }
        let cols: Vec<Vec<BigInt>> = (0..self.codomain.ngens())
            .map(|i| {
                self.preimage(&self.codomain.generator(i))
                    .expect("surjective map has preimages")
            })
            .collect();
        GroupHom::from_columns(self.codomain.clone(), self.domain.clone(), &cols)
    }
}

/// A normal-form group presented as a quotient of `Z^n`.
///
/// `quotient` maps `Z^n` onto the group; `section` sends each group generator
/// to a lift in `Z^n`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FgAbGroup,
    pub quotient: IntMatrix,
    pub section: IntMatrix,
}

impl Presentation {
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.group.canonicalize(&self.quotient.mul_vec(x))
    }

    pub fn lift(&self, e: &[BigInt]) -> Vec<BigInt> {
        self.section.mul_vec(e)
    }

    pub fn quotient_map(&self) -> GroupHom {
        let n = self.quotient.cols();
        GroupHom::new(FgAbGroup::free(n), self.group.clone(), self.quotient.clone())
            .expect("quotient from a free group is well defined")
    }
}

/// Cokernel of `relations` (columns are relations among `num_generators`
/// generators), in normal form, with the quotient map.
pub fn group_from_presentation(relations: &IntMatrix, num_generators: usize) -> Presentation {
    assert_eq!(relations.rows(), num_generators, "relations need one row per generator");
    let snf = linalg::smith_normal_form(relations);
    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for i in 0..num_generators {
        if i < snf.rank {
            let d = &snf.d[(i, i)];
            if d.is_one() {
                continue;
            }
            factors.push(d.clone());
        } else {
            factors.push(BigInt::zero());
        }
        kept.push(i);
    }
    Presentation {
        group: FgAbGroup { factors },
        quotient: snf.u.select_rows(&kept),
        section: snf.u_inv.select_columns(&kept),
    }
}

/// A lattice `S ⊆ Z^N` (basis columns) modulo a sublattice `R ⊆ S`
/// (generating columns), as an abstract group.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAbGroup,
    basis: IntMatrix,
    basis_snf: linalg::Snf,
    pres: Presentation,
}

impl Subquotient {
    pub fn new(basis: IntMatrix, relations: IntMatrix) -> Self {
        let basis_snf = linalg::smith_normal_form(&basis);
        let s = basis.cols();
        let rel_cols: Vec<Vec<BigInt>> = relations
            .columns()
            .iter()
            .map(|r| linalg::solve_with(&basis_snf, r).expect("relation lattice lies in the basis lattice"))
            .collect();
        let pres = group_from_presentation(&IntMatrix::from_columns(s, &rel_cols), s);
        Subquotient {
            group: pres.group.clone(),
            basis,
            basis_snf,
            pres,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Group coordinates of an ambient vector lying in the lattice.
    pub fn to_group(&self, u: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = linalg::solve_with(&self.basis_snf, u)?;
        Some(self.pres.project(&c))
    }

    /// An ambient representative of a group element.
    pub fn from_group(&self, e: &[BigInt]) -> Vec<BigInt> {
        self.basis.mul_vec(&self.pres.lift(e))
    }
}

/// The subgroup of an ambient group generated by a list of elements, as a
/// normal-form group with its inclusion.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgAbGroup,
    pub inclusion: GroupHom,
    gens: Vec<Vec<BigInt>>,
    pres: Presentation,
}

impl Subgroup {
    pub fn new(ambient: &FgAbGroup, gens: &[Vec<BigInt>]) -> Self {
        let k = gens.len();
        let n = ambient.ngens();
        let rels = if n == 0 {
            IntMatrix::identity(k)
        } else {
            let a = IntMatrix::from_columns(n, gens).hcat(&ambient.relation_matrix());
            let kb = linalg::kernel_basis(&a);
            kb.row_block(0, k)
        };
        let pres = group_from_presentation(&rels, k);
        let g = IntMatrix::from_columns(n, gens);
        let inc = &g * &pres.section;
        let inclusion = GroupHom::new(pres.group.clone(), ambient.clone(), inc)
            .expect("relations of the subgroup hold in the ambient group");
        Subgroup {
            group: pres.group.clone(),
            inclusion,
            gens: gens.to_vec(),
            pres,
        }
    }

    /// Coordinates in the subgroup of an ambient element, if it lies there.
    pub fn coordinates(&self, ambient: &FgAbGroup, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = ambient.span_coefficients(&self.gens, x)?;
        Some(self.pres.project(&c))
    }
}

/// Negates `v` if its first nonzero entry is negative.
pub fn sign_normalized(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

/// `A ⊗ B` in normal form together with the images of generator pairs:
/// `pairs[i][j]` is `e_i ⊗ f_j` in the coordinates of the product.
pub fn tensor_product(a: &FgAbGroup, b: &FgAbGroup) -> (FgAbGroup, Vec<Vec<Vec<BigInt>>>) {
    let (na, nb) = (a.ngens(), b.ngens());
    let n = na * nb;
    let mut rels = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            let g = a.factors[i].gcd(&b.factors[j]);
            if !g.is_zero() {
                let mut c = vec![BigInt::zero(); n];
                c[i * nb + j] = g;
                rels.push(c);
            }
        }
    }
    let p = group_from_presentation(&IntMatrix::from_columns(n, &rels), n);
    let pairs = (0..na)
        .map(|i| {
            (0..nb)
                .map(|j| {
                    let mut e = vec![BigInt::zero(); n];
                    e[i * nb + j] = BigInt::one();
                    p.project(&e)
                })
                .collect()
        })
        .collect();
    (p.group, pairs)
}

/// Bilinear map `(x, y) ↦ x ⊗ y` given the generator-pair table of [`tensor_product`].
pub fn tensor_elements(
    product: &FgAbGroup,
    pairs: &[Vec<Vec<BigInt>>],
    x: &[BigInt],
    y: &[BigInt],
) -> Vec<BigInt> {
    let mut acc = product.zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            let c = xi * yj;
            if c.is_zero() {
                continue;
            }
            for (k, v) in pairs[i][j].iter().enumerate() {
                acc[k] += &c * v;
            }
        }
    }
    product.canonicalize(&acc)
}
