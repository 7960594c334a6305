//! Finite-dimensional right modules, module maps and bimodules.
//!
//! Module elements are row vectors; `m · b_i = m * action[i]`. Maps are
//! stored as `source.dim x target.dim` matrices acting on the right, so the
//! intertwining condition reads `A_i F = F B_i`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Element, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{all_subspaces, subspace_count, Fp, Matrix, Subspace};

/// Budget for exhaustive searches (subspace scans, isomorphism searches).
pub const SEARCH_BUDGET: u128 = 1 << 16;

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.action == other.action && self.dim == other.dim
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {}, action {:?})", self.dim, self.action)
    }
}

impl Module {
    /// Validated constructor: checks the representation law and unit action.
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module> {
        let m = Module::from_raw_parts(algebra, dim, action)?;
        m.check_representation_law()?;
        Ok(m)
    }

    /// Constructor that only checks shapes. Used internally where the law
    /// holds by construction, and by fixtures that need an invalid module.
    pub fn from_raw_parts(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module> {
        if action.len() != algebra.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} action matrices of size {dim}x{dim}",
                algebra.dim()
            )));
        }
        Ok(Module { algebra, dim, action })
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let f = algebra.field();
        Module {
            algebra: algebra.clone(),
            dim: 0,
            action: (0..algebra.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect(),
        }
    }

    /// A as a right module over itself.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        Module {
            algebra: algebra.clone(),
            dim: algebra.dim(),
            action: (0..algebra.dim()).map(|i| algebra.right_mult(i).clone()).collect(),
        }
    }

    /// A^n.
    pub fn free(algebra: &Arc<Algebra>, n: usize) -> Module {
        let r = Module::regular(algebra);
        (0..n).fold(Module::zero(algebra), |acc, _| acc.direct_sum(&r))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Fp {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `m -> m x`.
    pub fn action_of(&self, x: &Element) -> Matrix {
        Matrix::combination(self.field(), self.dim, self.dim, &x.0, &self.action)
    }

    /// Checks `A_i A_j = sum_k c_ijk A_k` for all i, j and that 1 acts as identity.
    pub fn check_representation_law(&self) -> Result<()> {
        let a = &self.algebra;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.action_of(&Element(a.basis_product(i, j)));
                if lhs != rhs {
                    return Err(Error::RepresentationLaw { i, j });
                }
            }
        }
        if !self.action_of(a.unit()).is_identity() {
            return Err(Error::UnitAction);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        assert!(same_algebra(&self.algebra, &other.algebra));
        Module {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            action: self.action.iter().zip(&other.action).map(|(a, b)| Matrix::block_diag(a, b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn is_stable(&self, s: &Subspace) -> bool {
        let rows = s.basis_vecs();
        self.action.iter().all(|a| rows.iter().all(|v| s.contains(&a.apply(v))))
    }

    /// Smallest submodule containing `s`.
    pub fn stable_closure(&self, s: &Subspace) -> Subspace {
        let f = self.field();
        let mut rows = s.basis_vecs();
        let mut space = s.clone();
        let mut frontier = rows.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for a in &self.action {
                    let w = a.apply(v);
                    if !space.contains(&w) {
                        rows.push(w.clone());
                        space = Subspace::span(f, self.dim, &rows);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        space
    }

    pub fn identity(&self) -> ModuleMap {
        ModuleMap::from_parts(self.clone(), self.clone(), Matrix::identity(self.field(), self.dim))
    }

    pub fn zero_map_to(&self, target: &Module) -> ModuleMap {
        ModuleMap::from_parts(self.clone(), target.clone(), Matrix::zeros(self.field(), self.dim, target.dim))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    /// `source.dim x target.dim`; `f(m) = m * matrix`.
    pub matrix: Matrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {}, {:?})", self.source.dim, self.target.dim, self.matrix)
    }
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleMap> {
        let f = ModuleMap::from_parts(source, target, matrix);
        if !f.is_intertwiner() {
            return Err(Error::InternalInconsistency("matrix does not intertwine the actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: Module, target: Module, matrix: Matrix) -> ModuleMap {
        assert_eq!((matrix.rows(), matrix.cols()), (source.dim, target.dim), "map shape");
        ModuleMap { source, target, matrix }
    }

    pub fn is_intertwiner(&self) -> bool {
        same_algebra(&self.source.algebra, &self.target.algebra)
            && self
                .source
                .action
                .iter()
                .zip(&self.target.action)
                .all(|(a, b)| a.mul(&self.matrix) == self.matrix.mul(b))
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.apply(v)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap::from_parts(self.source.clone(), g.target.clone(), self.matrix.mul(&g.matrix))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.matrix.rank() == self.source.dim
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// The space Hom_A(M, N), with an RREF basis of flattened matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        let f = self.source.field();
        self.space
            .basis_vecs()
            .into_iter()
            .map(|v| Matrix::from_data(f, self.source.dim, self.target.dim, v))
            .collect()
    }

    pub fn maps(&self) -> Vec<ModuleMap> {
        self.matrices()
            .into_iter()
            .map(|m| ModuleMap::from_parts(self.source.clone(), self.target.clone(), m))
            .collect()
    }

    /// Coordinates of a map in the basis; `None` if it is not a module map.
    pub fn coords(&self, m: &Matrix) -> Option<Vec<u32>> {
        self.space.coords(m.data())
    }

    pub fn combination(&self, coeffs: &[u32]) -> Matrix {
        let f = self.source.field();
        Matrix::from_data(f, self.source.dim, self.target.dim, self.space.basis().apply(coeffs))
    }
}

/// Solution space of `A_i F = F B_i` for all i, F of shape rows x cols.
fn intertwiner_space(f: Fp, left: &[Matrix], right: &[Matrix], rows: usize, cols: usize) -> Subspace {
    let unknowns = rows * cols;
    if unknowns == 0 {
        return Subspace::zero(f, 0);
    }
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    for (a, b) in left.iter().zip(right) {
        for r in 0..rows {
            for c in 0..cols {
                let mut eq = vec![0u32; unknowns];
                // (A F)[r][c] = sum_k A[r][k] F[k][c]
                for k in 0..rows {
                    let v = a[(r, k)];
                    if v != 0 {
                        eq[k * cols + c] = f.add(eq[k * cols + c], v);
                    }
                }
                // (F B)[r][c] = sum_k F[r][k] B[k][c]
                for k in 0..cols {
                    let v = b[(k, c)];
                    if v != 0 {
                        eq[r * cols + k] = f.sub(eq[r * cols + k], v);
                    }
                }
                if eq.iter().any(|&x| x != 0) {
                    eqs.push(eq);
                }
            }
        }
    }
    if eqs.is_empty() {
        return Subspace::full(f, unknowns);
    }
    Subspace::span_matrix(&Matrix::from_rows(f, unknowns, &eqs).nullspace())
}

pub fn hom_space(m: &Module, n: &Module) -> Result<HomSpace> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let space = intertwiner_space(m.field(), &m.action, &n.action, m.dim, n.dim);
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        space,
    })
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(m, n)?.dim())
}

/// An action-stable subspace of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleBasis {
    pub ambient: Module,
    pub space: Subspace,
}

impl SubmoduleBasis {
    pub fn new(ambient: &Module, space: Subspace) -> Result<SubmoduleBasis> {
        if space.ambient() != ambient.dim {
            return Err(Error::DimensionMismatch("subspace ambient".into()));
        }
        if !ambient.is_stable(&space) {
            return Err(Error::NotStable);
        }
        Ok(SubmoduleBasis {
            ambient: ambient.clone(),
            space,
        })
    }

    pub fn zero(ambient: &Module) -> SubmoduleBasis {
        SubmoduleBasis {
            ambient: ambient.clone(),
            space: Subspace::zero(ambient.field(), ambient.dim),
        }
    }

    pub fn whole(ambient: &Module) -> SubmoduleBasis {
        SubmoduleBasis {
            ambient: ambient.clone(),
            space: Subspace::full(ambient.field(), ambient.dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The submodule as a module in its own right (coordinates w.r.t. the RREF basis).
    pub fn to_module(&self) -> Module {
        let basis = self.space.basis();
        let action = self
            .ambient
            .action
            .iter()
            .map(|a| {
                let img = basis.mul(a);
                let rows: Vec<Vec<u32>> = img.row_vecs().iter().map(|v| self.space.coords(v).expect("stable subspace")).collect();
                Matrix::from_rows(self.ambient.field(), self.space.dim(), &rows)
            })
            .collect();
        Module {
            algebra: self.ambient.algebra.clone(),
            dim: self.space.dim(),
            action,
        }
    }

    pub fn inclusion(&self) -> ModuleMap {
        ModuleMap::from_parts(self.to_module(), self.ambient.clone(), self.space.basis().clone())
    }

    pub fn quotient(&self) -> (Module, ModuleMap) {
        quotient(&self.ambient, self)
    }
}

pub fn submodule_generated(m: &Module, vectors: &[Vec<u32>]) -> Result<SubmoduleBasis> {
    if vectors.iter().any(|v| v.len() != m.dim) {
        return Err(Error::DimensionMismatch("generator length".into()));
    }
    let s = Subspace::span(m.field(), m.dim, vectors);
    Ok(SubmoduleBasis {
        ambient: m.clone(),
        space: m.stable_closure(&s),
    })
}

/// M / S with the projection; quotient coordinates are the non-pivot
/// coordinates of S.
pub fn quotient(m: &Module, s: &SubmoduleBasis) -> (Module, ModuleMap) {
    let f = m.field();
    let reps = s.space.complement_indices();
    let q = reps.len();
    let mut proj = Matrix::zeros(f, m.dim, q);
    for i in 0..m.dim {
        let mut e = vec![0; m.dim];
        e[i] = 1;
        for (j, c) in s.space.quotient_coords(&e).into_iter().enumerate() {
            proj[(i, j)] = c;
        }
    }
    let action = m
        .action
        .iter()
        .map(|a| {
            let rows: Vec<Vec<u32>> = reps.iter().map(|&r| proj.apply(a.row(r))).collect();
            Matrix::from_rows(f, q, &rows)
        })
        .collect();
    let qm = Module {
        algebra: m.algebra.clone(),
        dim: q,
        action,
    };
    let pi = ModuleMap::from_parts(m.clone(), qm.clone(), proj);
    (qm, pi)
}

pub fn kernel(f: &ModuleMap) -> SubmoduleBasis {
    SubmoduleBasis {
        ambient: f.source.clone(),
        space: Subspace::span_matrix(&f.matrix.left_nullspace()),
    }
}

pub fn image(f: &ModuleMap) -> SubmoduleBasis {
    SubmoduleBasis {
        ambient: f.target.clone(),
        space: Subspace::span_matrix(&f.matrix),
    }
}

pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    quotient(&f.target, &image(f))
}

/// f restricted to S -> T, for submodules with f(S) ⊆ T.
pub fn restrict_map(f: &ModuleMap, s: &SubmoduleBasis, t: &SubmoduleBasis) -> Result<ModuleMap> {
    let rows: Vec<Vec<u32>> = s
        .space
        .basis_vecs()
        .iter()
        .map(|v| {
            t.space
                .coords(&f.apply(v))
                .ok_or_else(|| Error::InternalInconsistency("map does not send the submodule into the target submodule".into()))
        })
        .collect::<Result<_>>()?;
    Ok(ModuleMap::from_parts(
        s.to_module(),
        t.to_module(),
        Matrix::from_rows(f.source.field(), t.dim(), &rows),
    ))
}

/// The map M/S -> N/T induced by f, for submodules with f(S) ⊆ T.
pub fn quotient_map(f: &ModuleMap, s: &SubmoduleBasis, t: &SubmoduleBasis) -> Result<ModuleMap> {
    if !t.space.contains_subspace(&s.space.image(&f.matrix)) {
        return Err(Error::InternalInconsistency("map does not send the submodule into the target submodule".into()));
    }
    let (qs, _) = quotient(&f.source, s);
    let (qt, _) = quotient(&f.target, t);
    let rows: Vec<Vec<u32>> = s
        .space
        .complement_indices()
        .into_iter()
        .map(|r| t.space.quotient_coords(f.matrix.row(r)))
        .collect();
    Ok(ModuleMap::from_parts(qs, qt.clone(), Matrix::from_rows(f.source.field(), qt.dim(), &rows)))
}

/// All submodules, by scanning every subspace (budgeted).
pub fn all_submodules(m: &Module) -> Result<Vec<SubmoduleBasis>> {
    let needed = subspace_count(m.field(), m.dim);
    if needed > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "submodule enumeration".into(),
            needed,
            budget: SEARCH_BUDGET,
        });
    }
    Ok(all_subspaces(m.field(), m.dim)
        .into_iter()
        .filter(|s| m.is_stable(s))
        .map(|space| SubmoduleBasis {
            ambient: m.clone(),
            space,
        })
        .collect())
}

pub fn is_simple(m: &Module) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    Ok(all_submodules(m)?.len() == 2)
}

/// Searches Hom(M, N) exhaustively for an invertible map.
pub fn find_isomorphism(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(ModuleMap::from_parts(m.clone(), n.clone(), Matrix::zeros(m.field(), 0, 0))));
    }
    let h = hom_space(m, n)?;
    let needed = m.field().count(h.dim());
    if needed > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "isomorphism search".into(),
            needed,
            budget: SEARCH_BUDGET,
        });
    }
    for coeffs in m.field().all_vectors(h.dim()) {
        let mat = h.combination(&coeffs);
        if mat.rank() == m.dim {
            return Ok(Some(ModuleMap::from_parts(m.clone(), n.clone(), mat)));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}

/// A module with a left action of one algebra and a commuting right action
/// of another. Left actions are stored so that `b · y = y * left[b]`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    pub dim: usize,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(left_algebra: Arc<Algebra>, right_algebra: Arc<Algebra>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let b = Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left,
            right,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.left_algebra.field();
        let (la, ra) = (&self.left_algebra, &self.right_algebra);
        if self.left.len() != la.dim() || self.right.len() != ra.dim() {
            return Err(Error::DimensionMismatch("bimodule action count".into()));
        }
        let left_of = |x: &Element| Matrix::combination(f, self.dim, self.dim, &x.0, &self.left);
        for i in 0..la.dim() {
            for j in 0..la.dim() {
                if self.left[j].mul(&self.left[i]) != left_of(&Element(la.basis_product(i, j))) {
                    return Err(Error::RepresentationLaw { i, j });
                }
            }
        }
        let right_mod = self.as_right_module()?;
        right_mod.check_representation_law()?;
        if !left_of(la.unit()).is_identity() {
            return Err(Error::UnitAction);
        }
        for l in &self.left {
            for r in &self.right {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::InternalInconsistency("left and right actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    /// A as an A-A bimodule.
    pub fn regular(a: &Arc<Algebra>) -> Bimodule {
        Bimodule {
            left_algebra: a.clone(),
            right_algebra: a.clone(),
            dim: a.dim(),
            left: (0..a.dim()).map(|i| a.left_mult(i).clone()).collect(),
            right: (0..a.dim()).map(|i| a.right_mult(i).clone()).collect(),
        }
    }

    pub fn as_right_module(&self) -> Result<Module> {
        Module::from_raw_parts(self.right_algebra.clone(), self.dim, self.right.clone())
    }

    pub fn left_action_of(&self, x: &Element) -> Matrix {
        Matrix::combination(self.left_algebra.field(), self.dim, self.dim, &x.0, &self.left)
    }
}

/// X ⊗_B N as a quotient of the field tensor product, with enough data to
/// name elementary tensors and induce maps.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: Module,
    pub relations: Subspace,
    pub x_dim: usize,
    pub n_dim: usize,
}

impl TensorProduct {
    /// Class of x ⊗ y in quotient coordinates.
    pub fn class_of(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.relations.field();
        let xm = Matrix::from_data(f, 1, self.x_dim, x.to_vec());
        let ym = Matrix::from_data(f, 1, self.n_dim, y.to_vec());
        self.relations.quotient_coords(xm.kron(&ym).data())
    }

    /// Lift of each quotient basis vector to the field tensor product.
    pub fn representatives(&self) -> Vec<usize> {
        self.relations.complement_indices()
    }

    /// Map induced on quotients by a linear map `V -> V'` of field tensor
    /// products, given as a matrix on the big spaces.
    pub fn induced(&self, big: &Matrix, target: &TensorProduct) -> Matrix {
        let f = self.relations.field();
        let rows: Vec<Vec<u32>> = self
            .representatives()
            .iter()
            .map(|&r| target.relations.quotient_coords(big.row(r)))
            .collect();
        Matrix::from_rows(f, target.module.dim(), &rows)
    }
}

pub fn tensor_over(x: &Module, n: &Bimodule) -> Result<TensorProduct> {
    if !same_algebra(&x.algebra, &n.left_algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field();
    let big = x.dim * n.dim;
    let ix = Matrix::identity(f, x.dim);
    let in_ = Matrix::identity(f, n.dim);
    let mut blocks = Vec::new();
    for i in 0..n.left_algebra.dim() {
        // (x b) ⊗ y - x ⊗ (b y)
        blocks.push(x.action[i].kron(&in_).sub(&ix.kron(&n.left[i])));
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let relations = Subspace::span_matrix(&Matrix::vstack(f, big, &refs));
    let reps = relations.complement_indices();
    let action = n
        .right
        .iter()
        .map(|r| {
            let act = ix.kron(r);
            let rows: Vec<Vec<u32>> = reps.iter().map(|&c| relations.quotient_coords(act.row(c))).collect();
            Matrix::from_rows(f, reps.len(), &rows)
        })
        .collect();
    let module = Module {
        algebra: n.right_algebra.clone(),
        dim: reps.len(),
        action,
    };
    Ok(TensorProduct {
        module,
        relations,
        x_dim: x.dim,
        n_dim: n.dim,
    })
}

/// Hom_B(N, X) for an A-B bimodule N, as a right A-module via (f·a)(y) = f(a·y).
#[derive(Clone, Debug)]
pub struct HomOver {
    pub module: Module,
    /// Flattened `n_dim x x_dim` matrices, RREF basis.
    pub space: Subspace,
    pub n_dim: usize,
    pub x_dim: usize,
}

impl HomOver {
    pub fn basis_matrices(&self) -> Vec<Matrix> {
        let f = self.space.field();
        self.space
            .basis_vecs()
            .into_iter()
            .map(|v| Matrix::from_data(f, self.n_dim, self.x_dim, v))
            .collect()
    }

    pub fn coords(&self, m: &Matrix) -> Option<Vec<u32>> {
        self.space.coords(m.data())
    }

    pub fn matrix_of(&self, coeffs: &[u32]) -> Matrix {
        Matrix::from_data(self.space.field(), self.n_dim, self.x_dim, self.space.basis().apply(coeffs))
    }
}

pub fn hom_over(n: &Bimodule, x: &Module) -> Result<HomOver> {
    if !same_algebra(&x.algebra, &n.right_algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field();
    let space = intertwiner_space(f, &n.right, &x.action, n.dim, x.dim);
    let basis: Vec<Matrix> = space
        .basis_vecs()
        .into_iter()
        .map(|v| Matrix::from_data(f, n.dim, x.dim, v))
        .collect();
    let k = basis.len();
    let mut action = Vec::with_capacity(n.left.len());
    for l in &n.left {
        let rows: Vec<Vec<u32>> = basis
            .iter()
            .map(|b| {
                space
                    .coords(l.mul(b).data())
                    .ok_or_else(|| Error::InternalInconsistency("Hom over bimodule not closed under action".into()))
            })
            .collect::<Result<_>>()?;
        action.push(Matrix::from_rows(f, k, &rows));
    }
    let module = Module {
        algebra: n.left_algebra.clone(),
        dim: k,
        action,
    };
    Ok(HomOver {
        module,
        space,
        n_dim: n.dim,
        x_dim: x.dim,
    })
}

/// 0 -> K -> A^g -> M -> 0 on a greedy set of generators.
#[derive(Clone, Debug)]
pub struct FreePresentation {
    pub generators: Vec<Vec<u32>>,
    pub free: Module,
    pub projection: ModuleMap,
    pub kernel: SubmoduleBasis,
}

pub fn free_presentation(m: &Module) -> FreePresentation {
    let f = m.field();
    let a = m.algebra.clone();
    let mut generators = Vec::new();
    let mut generated = Subspace::zero(f, m.dim);
    for i in 0..m.dim {
        let mut e = vec![0; m.dim];
        e[i] = 1;
        if !generated.contains(&e) {
            generators.push(e);
            generated = m.stable_closure(&Subspace::span(f, m.dim, &generators));
        }
    }
    let free = Module::free(&a, generators.len());
    let mut proj = Matrix::zeros(f, free.dim, m.dim);
    for (s, g) in generators.iter().enumerate() {
        for k in 0..a.dim() {
            let img = m.action[k].apply(g);
            for (c, v) in img.into_iter().enumerate() {
                proj[(s * a.dim() + k, c)] = v;
            }
        }
    }
    let projection = ModuleMap::from_parts(free.clone(), m.clone(), proj);
    let kernel = kernel(&projection);
    FreePresentation {
        generators,
        free,
        projection,
        kernel,
    }
}

/// dim coker(Hom(F, N) -> Hom(K, N)) for a free presentation of M.
pub fn ext1(m: &Module, n: &Module) -> Result<usize> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let pres = free_presentation(m);
    let incl = pres.kernel.inclusion();
    let hom_k = hom_space(&incl.source, n)?;
    let hom_f = hom_space(&pres.free, n)?;
    let restricted: Vec<Vec<u32>> = hom_f
        .matrices()
        .iter()
        .map(|phi| {
            hom_k
                .coords(&incl.matrix.mul(phi))
                .ok_or_else(|| Error::InternalInconsistency("restriction is not a module map".into()))
        })
        .collect::<Result<_>>()?;
    let rank = if restricted.is_empty() {
        0
    } else {
        Matrix::from_rows(m.field(), hom_k.dim(), &restricted).rank()
    };
    Ok(hom_k.dim() - rank)
}

/// dim Tor_1^A(M, L) for a right A-module M and an A-C bimodule L, computed
/// as ker(K ⊗_A L -> F ⊗_A L) on a free presentation of M.
pub fn tor1(m: &Module, l: &Bimodule) -> Result<usize> {
    let pres = free_presentation(m);
    let incl = pres.kernel.inclusion();
    let tk = tensor_over(&incl.source, l)?;
    let tf = tensor_over(&pres.free, l)?;
    let big = incl.matrix.kron(&Matrix::identity(m.field(), l.dim));
    let induced = tk.induced(&big, &tf);
    Ok(tk.module.dim() - induced.rank())
}

/// Restriction along A -> A/I.
pub fn restrict_to(q: &QuotientAlgebra, base: &Arc<Algebra>, y: &Module) -> Result<Module> {
    if !same_algebra(y.algebra(), &q.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let action = (0..base.dim())
        .map(|i| y.action_of(&Element(q.projection.row(i).to_vec())))
        .collect();
    Ok(Module {
        algebra: base.clone(),
        dim: y.dim(),
        action,
    })
}

/// The A/I-module structure on an A-module killed by I.
pub fn descend_to(q: &QuotientAlgebra, m: &Module) -> Result<Module> {
    for v in q.ideal.basis_vecs() {
        if !m.action_of(&Element(v)).is_zero() {
            return Err(Error::WrongCategory {
                functor: "descent",
                expected: "A-modules annihilated by the ideal",
            });
        }
    }
    let action = (0..q.algebra.dim())
        .map(|j| m.action_of(&Element(q.lift.row(j).to_vec())))
        .collect();
    Ok(Module {
        algebra: q.algebra.clone(),
        dim: m.dim(),
        action,
    })
}

/// A/I as an A-F_p bimodule (a left A-module).
pub fn left_quotient_bimodule(a: &Arc<Algebra>, q: &QuotientAlgebra) -> Bimodule {
    let f = a.field();
    let k = Arc::new(Algebra::ground_field(f));
    let qd = q.algebra.dim();
    let left = (0..a.dim())
        .map(|i| {
            // b_i · (y + I) = b_i lift(y) + I
            let rows: Vec<Vec<u32>> = (0..qd)
                .map(|r| q.projection.apply(&a.left_mult(i).apply(q.lift.row(r))))
                .collect();
            Matrix::from_rows(f, qd, &rows)
        })
        .collect();
    Bimodule {
        left_algebra: a.clone(),
        right_algebra: k,
        dim: qd,
        left,
        right: vec![Matrix::identity(f, qd)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quotient_algebra;
    use crate::builtins;

    struct T2 {
        a: Arc<Algebra>,
        p1: Module,
        s1: Module,
        s2: Module,
    }

    fn t2() -> T2 {
        let a = Arc::new(builtins::load("T2_F2").unwrap());
        let reg = Module::regular(&a);
        let el = |s: &str| a.parse_element(s).unwrap().0;
        let p1 = submodule_generated(&reg, &[el("e11")]).unwrap().to_module();
        let s2 = submodule_generated(&reg, &[el("e12")]).unwrap().to_module();
        let top = submodule_generated(&reg, &[el("e12"), el("e22")]).unwrap();
        let (s1, _) = quotient(&reg, &top);
        T2 { a, p1, s1, s2 }
    }

    #[test]
    fn regular_module_dims() {
        let f2 = Arc::new(builtins::load("F2").unwrap());
        assert_eq!(Module::regular(&f2).dim(), 1);
        assert!(Module::regular(&f2).action()[0].is_identity());
        let t = t2();
        assert_eq!(t.p1.dim(), 2);
        assert_eq!(t.s1.dim(), 1);
        assert_eq!(t.s2.dim(), 1);
        let z = Arc::new(Algebra::zero(Fp::new(2).unwrap()));
        assert_eq!(Module::regular(&z).dim(), 0);
    }

    #[test]
    fn hom_dimensions_over_t2() {
        let t = t2();
        assert_eq!(hom_dim(&t.s1, &t.s2).unwrap(), 0);
        assert_eq!(hom_dim(&t.s1, &t.s1).unwrap(), 1);
        assert_eq!(hom_dim(&t.p1, &t.s1).unwrap(), 1);
        assert_eq!(hom_dim(&t.s2, &t.p1).unwrap(), 1);
    }

    #[test]
    fn ext_over_t2() {
        let t = t2();
        assert_eq!(ext1(&t.s1, &t.s2).unwrap(), 1);
        assert_eq!(ext1(&t.s2, &t.s1).unwrap(), 0);
        let free = Module::free(&t.a, 2);
        assert_eq!(ext1(&free, &t.s2).unwrap(), 0);
        assert_eq!(ext1(&t.p1, &t.s2).unwrap(), 0);
    }

    #[test]
    fn sub_quotient_kernel() {
        let t = t2();
        let e12 = t.a.parse_element("e12").unwrap();
        let reg = Module::regular(&t.a);
        let s = submodule_generated(&reg, &[e12.0]).unwrap();
        assert_eq!(s.dim(), 1);
        let (q, _) = quotient(&t.p1, &SubmoduleBasis::zero(&t.p1));
        assert_eq!(q, t.p1);
        assert_eq!(kernel(&t.p1.identity()).dim(), 0);
        let (ck, _) = cokernel(&t.p1.identity());
        assert_eq!(ck.dim(), 0);
    }

    #[test]
    fn tensor_with_regular_bimodule_is_identity_up_to_dim() {
        let t = t2();
        let reg = Bimodule::regular(&t.a);
        let tp = tensor_over(&t.p1, &reg).unwrap();
        assert!(is_isomorphic(&tp.module, &t.p1).unwrap());
        let z = Module::zero(&t.a);
        assert_eq!(tensor_over(&z, &reg).unwrap().module.dim(), 0);
        let h = hom_over(&reg, &t.p1).unwrap();
        assert!(is_isomorphic(&h.module, &t.p1).unwrap());
        assert_eq!(hom_over(&reg, &z).unwrap().module.dim(), 0);
    }

    #[test]
    fn tor_of_radical_quotient() {
        let t = t2();
        let rad = t.a.radical_subspace().unwrap();
        let q = quotient_algebra(&t.a, &rad).unwrap();
        let aq = restrict_to(&q, &t.a, &Module::regular(&q.algebra)).unwrap();
        let l = left_quotient_bimodule(&t.a, &q);
        assert_eq!(tor1(&aq, &l).unwrap(), 1);
    }

    #[test]
    fn corrupted_action_fails_law() {
        let t = t2();
        let mut action = t.p1.action().to_vec();
        action[2] = Matrix::identity(t.a.field(), 2);
        let bad = Module::from_raw_parts(t.a.clone(), 2, action).unwrap();
        assert!(bad.check_representation_law().is_err());
    }
}
