//! Finite-dimensional associative unital algebras given by structure constants.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix, Subspace};

/// Element-count budget for brute-force searches over the whole algebra.
pub const DEFAULT_ELEMENT_BUDGET: u128 = 1 << 16;

/// Coordinates of an algebra element in the basis of its owning algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Extra structure known about an algebra that is not recoverable cheaply
/// from the structure constants alone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    /// Names of the block idempotents (vertices), parallel to `blocks`.
    pub vertex_names: Vec<String>,
    /// Complete set of orthogonal idempotents (for path algebras: trivial paths).
    pub blocks: Option<Vec<Element>>,
    /// Known Jacobson radical (for path algebras: the arrow ideal).
    pub radical: Option<Subspace>,
}

#[derive(Clone)]
pub struct Algebra {
    field: Fp,
    labels: Vec<String>,
    /// `table[(i * dim + j) * dim + k]` is the coefficient of b_k in b_i b_j.
    table: Vec<u32>,
    unit: Element,
    right_mult: Vec<Matrix>,
    left_mult: Vec<Matrix>,
    presentation: Presentation,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.labels == other.labels
            && self.table == other.table
            && self.unit == other.unit
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(F_{}, dim {}, basis {:?})", self.field.p(), self.dim(), self.labels)
    }
}

impl Algebra {
    /// Builds and validates an algebra. `table[i][j]` is the coordinate
    /// vector of b_i b_j.
    pub fn from_structure_constants(
        p: u32,
        labels: Vec<String>,
        table: Vec<Vec<Vec<u32>>>,
        unit: Vec<u32>,
    ) -> Result<Algebra> {
        let field = Fp::new(p)?;
        let dim = labels.len();
        if table.len() != dim || table.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimensionMismatch(format!("structure table must be {dim}x{dim} vectors of length {dim}")));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!("unit has length {}, expected {dim}", unit.len())));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Invalid(format!("duplicate basis label {l:?}")));
            }
        }
        let flat: Vec<u32> = table.into_iter().flatten().flatten().map(|c| c % p).collect();
        let unit = Element(unit.into_iter().map(|c| c % p).collect());
        let a = Algebra::assemble(field, labels, flat, unit, Presentation::default());
        a.validate()?;
        Ok(a)
    }

    /// Assembles without validation. Callers must guarantee associativity and
    /// the unit law (or call [`Algebra::validate`]).
    pub(crate) fn assemble(field: Fp, labels: Vec<String>, table: Vec<u32>, unit: Element, presentation: Presentation) -> Algebra {
        let dim = labels.len();
        let mut right_mult = Vec::with_capacity(dim);
        let mut left_mult = Vec::with_capacity(dim);
        for i in 0..dim {
            // right: x -> x b_i, row j = b_j b_i
            let mut r = Matrix::zeros(field, dim, dim);
            let mut l = Matrix::zeros(field, dim, dim);
            for j in 0..dim {
                for k in 0..dim {
                    r[(j, k)] = table[(j * dim + i) * dim + k];
                    l[(j, k)] = table[(i * dim + j) * dim + k];
                }
            }
            right_mult.push(r);
            left_mult.push(l);
        }
        Algebra {
            field,
            labels,
            table,
            unit,
            right_mult,
            left_mult,
            presentation,
        }
    }

    /// The zero algebra over F_p (1 = 0).
    pub fn zero(field: Fp) -> Algebra {
        Algebra::assemble(field, vec![], vec![], Element(vec![]), Presentation {
            vertex_names: vec![],
            blocks: Some(vec![]),
            radical: Some(Subspace::zero(field, 0)),
        })
    }

    /// F_p as a one-dimensional algebra.
    pub fn ground_field(field: Fp) -> Algebra {
        Algebra::assemble(field, vec!["1".into()], vec![1], Element(vec![1]), Presentation {
            vertex_names: vec!["1".into()],
            blocks: Some(vec![Element(vec![1])]),
            radical: Some(Subspace::zero(field, 1)),
        })
    }

    /// Checks associativity on all basis triples and the two-sided unit law.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let bij = self.basis_product(i, j);
                for k in 0..dim {
                    let left = self.right_mult[k].apply(&bij);
                    let bjk = self.basis_product(j, k);
                    let right = self.left_mult[i].apply(&bjk);
                    if left != right {
                        return Err(Error::NonAssociative {
                            indices: (i, j, k),
                            labels: (self.labels[i].clone(), self.labels[j].clone(), self.labels[k].clone()),
                        });
                    }
                }
            }
        }
        for i in 0..dim {
            let b = self.basis_element(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::BadUnit {
                    label: self.labels[i].clone(),
                });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Renames basis elements; used for built-in algebras.
    pub fn relabel(mut self, labels: Vec<String>) -> Algebra {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let d = self.dim();
        self.table[(i * d + j) * d + k]
    }

    /// Structure constants as nested vectors (`[i][j]` = coordinates of b_i b_j).
    pub fn table(&self) -> Vec<Vec<Vec<u32>>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.basis_product(i, j)).collect()).collect()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<u32> {
        let d = self.dim();
        self.table[(i * d + j) * d..(i * d + j + 1) * d].to_vec()
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        Element(v)
    }

    pub fn zero_element(&self) -> Element {
        Element(vec![0; self.dim()])
    }

    /// Matrix of `x -> x b_i` on row vectors.
    pub fn right_mult(&self, i: usize) -> &Matrix {
        &self.right_mult[i]
    }

    /// Matrix of `x -> b_i x` on row vectors.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left_mult[i]
    }

    /// Matrix of `y -> y x`.
    pub fn right_mult_by(&self, x: &Element) -> Matrix {
        Matrix::combination(self.field, self.dim(), self.dim(), &x.0, &self.right_mult)
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult_by(&self, x: &Element) -> Matrix {
        Matrix::combination(self.field, self.dim(), self.dim(), &x.0, &self.left_mult)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let d = self.dim();
        let f = self.field;
        let mut out = vec![0; d];
        for (i, &xi) in x.0.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.0.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                f.axpy(&mut out, c, &self.table[(i * d + j) * d..(i * d + j + 1) * d]);
            }
        }
        Element(out)
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        Element(self.field.add_vec(&x.0, &y.0))
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        Element(self.field.sub_vec(&x.0, &y.0))
    }

    pub fn scale(&self, c: u32, x: &Element) -> Element {
        Element(self.field.scale_vec(c % self.p(), &x.0))
    }

    pub fn is_idempotent(&self, e: &Element) -> bool {
        e.0.len() == self.dim() && self.mul(e, e) == *e
    }

    /// `1 - e`
    pub fn complement(&self, e: &Element) -> Element {
        self.sub(&self.unit, e)
    }

    /// Human-readable form such as `e11+e12` or `2*a`.
    pub fn format(&self, x: &Element) -> String {
        format_vector(&self.labels, &x.0)
    }

    /// Parses a sum of `[coef*]label` terms (`-` allowed). The term `1`
    /// denotes the unit unless `1` is a basis label.
    pub fn parse_element(&self, expr: &str) -> Result<Element> {
        let resolve = |name: &str| {
            if let Some(idx) = self.labels.iter().position(|l| l == name) {
                Some(self.basis_element(idx).0)
            } else if name == "1" {
                Some(self.unit.0.clone())
            } else if name == "0" {
                Some(vec![0; self.dim()])
            } else {
                None
            }
        };
        parse_linear_combination(self.field, self.dim(), expr, &resolve).map(Element)
    }

    /// Two-sided ideal generated by a subspace (closure to a fixpoint).
    pub fn ideal_closure(&self, s: &Subspace) -> Subspace {
        let d = self.dim();
        let f = self.field;
        let mut rows = s.basis_vecs();
        let mut space = s.clone();
        let mut frontier = rows.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for i in 0..d {
                    for w in [self.right_mult[i].apply(v), self.left_mult[i].apply(v)] {
                        if !space.contains(&w) {
                            rows.push(w.clone());
                            space = Subspace::span(f, d, &rows);
                            next.push(w);
                        }
                    }
                }
            }
            frontier = next;
        }
        space
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let rows = s.basis_vecs();
        (0..self.dim()).all(|i| {
            rows.iter()
                .all(|v| s.contains(&self.right_mult[i].apply(v)) && s.contains(&self.left_mult[i].apply(v)))
        })
    }

    /// Span of all products `x y` with x in `u`, y in `v`.
    pub fn product_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut prods = Vec::new();
        for x in u.basis_vecs() {
            for y in v.basis_vecs() {
                prods.push(self.mul(&Element(x.clone()), &Element(y)).0);
            }
        }
        Subspace::span(self.field, self.dim(), &prods)
    }

    /// Smallest k with S^k = 0, if S is nilpotent.
    pub fn nilpotency_index(&self, s: &Subspace) -> Option<usize> {
        if s.is_zero() {
            return Some(1);
        }
        let mut power = s.clone();
        let mut k = 1;
        while !power.is_zero() {
            let next = self.product_space(&power, s);
            if next == power {
                return None;
            }
            power = next;
            k += 1;
        }
        Some(k)
    }

    /// The Jacobson radical as a subspace of the algebra.
    ///
    /// Uses the presentation when it carries the radical (path algebras and
    /// their quotients/corners), the trace-form kernel when p > dim, and a
    /// principal-ideal scan (J = span{x : AxA nilpotent}) when p^dim is within
    /// the element budget.
    pub fn radical_subspace(&self) -> Result<Subspace> {
        if let Some(r) = &self.presentation.radical {
            return Ok(r.clone());
        }
        if self.p() as usize > self.dim() {
            return Ok(self.trace_form_kernel());
        }
        if self.field.count(self.dim()) <= DEFAULT_ELEMENT_BUDGET {
            return Ok(self.radical_by_principal_ideals());
        }
        Err(Error::CharacteristicTooSmall {
            p: self.p(),
            dim: self.dim(),
        })
    }

    /// `{x : Tr(R_{xy}) = 0 for all y}`. Equals the radical when p > dim.
    pub fn trace_form_kernel(&self) -> Subspace {
        let d = self.dim();
        let f = self.field;
        let traces: Vec<u32> = (0..d)
            .map(|k| (0..d).fold(0, |acc, r| f.add(acc, self.right_mult[k][(r, r)])))
            .collect();
        let mut gram = Matrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                gram[(i, j)] = f.dot(&self.basis_product(i, j), &traces);
            }
        }
        Subspace::span_matrix(&gram.left_nullspace())
    }

    pub(crate) fn radical_by_principal_ideals(&self) -> Subspace {
        let d = self.dim();
        let mut j = Subspace::zero(self.field, d);
        for x in self.field.all_vectors(d) {
            if j.contains(&x) {
                continue;
            }
            let principal = self.ideal_closure(&Subspace::span(self.field, d, &[x]));
            if self.nilpotency_index(&principal).is_some() {
                j = j.sum(&principal);
            }
        }
        j
    }

    /// Exhaustive list of idempotents, in lexicographic coordinate order.
    pub fn enumerate_idempotents(&self, budget: u128) -> Result<Vec<Element>> {
        let needed = self.field.count(self.dim());
        if needed > budget {
            return Err(Error::BudgetExceeded {
                what: "exhaustive idempotent search (use restricted mode)".into(),
                needed,
                budget,
            });
        }
        Ok(self
            .field
            .all_vectors(self.dim())
            .map(Element)
            .filter(|e| self.is_idempotent(e))
            .collect())
    }

    /// Restricted mode: sums of subsets of the block idempotents (vertices).
    /// Subsets are ordered by bitmask, vertex 0 being the lowest bit.
    pub fn vertex_subset_idempotents(&self) -> Option<Vec<Element>> {
        let blocks = self.presentation.blocks.as_ref()?;
        let n = blocks.len();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u64..(1u64 << n) {
            let mut e = self.zero_element();
            for (v, b) in blocks.iter().enumerate() {
                if mask >> v & 1 == 1 {
                    e = self.add(&e, b);
                }
            }
            out.push(e);
        }
        Some(out)
    }

    /// A complete set of orthogonal idempotents whose corners have no
    /// nontrivial idempotents. Uses the presentation when available,
    /// otherwise splits idempotents by exhaustive search in corners.
    pub fn primitive_idempotents(&self, budget: u128) -> Result<Vec<Element>> {
        if let Some(b) = &self.presentation.blocks {
            return Ok(b.clone());
        }
        if self.dim() == 0 {
            return Ok(vec![]);
        }
        let mut done = Vec::new();
        let mut work = vec![self.unit.clone()];
        while let Some(eps) = work.pop() {
            let corner = self.corner_subspace(&eps);
            let needed = self.field.count(corner.dim());
            if needed > budget {
                return Err(Error::BudgetExceeded {
                    what: "idempotent splitting".into(),
                    needed,
                    budget,
                });
            }
            let split = self.field.all_vectors(corner.dim()).find_map(|c| {
                let f = Element(corner.basis().apply(&c));
                (self.is_idempotent(&f) && !f.is_zero() && f != eps).then_some(f)
            });
            match split {
                Some(f) => {
                    let rest = self.sub(&eps, &f);
                    work.push(rest);
                    work.push(f);
                }
                None => done.push(eps),
            }
        }
        done.sort();
        Ok(done)
    }

    /// The subspace eAe.
    pub fn corner_subspace(&self, e: &Element) -> Subspace {
        let d = self.dim();
        let vecs: Vec<Vec<u32>> = (0..d)
            .map(|i| self.mul(&self.mul(e, &self.basis_element(i)), e).0)
            .collect();
        Subspace::span(self.field, d, &vecs)
    }
}

pub(crate) fn format_vector(labels: &[String], v: &[u32]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { labels[i].clone() } else { format!("{c}*{}", labels[i]) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// The corner algebra eAe with its embedding into A.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Arc<Algebra>,
    pub idempotent: Element,
    /// Rows are the corner's basis elements written in A's basis.
    pub embedding: Matrix,
    space: Subspace,
}

impl Corner {
    /// Coordinates in the corner basis of an element of A lying in eAe.
    pub fn coords(&self, x: &Element) -> Option<Element> {
        self.space.coords(&x.0).map(Element)
    }

    pub fn embed(&self, c: &Element) -> Element {
        Element(self.embedding.apply(&c.0))
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }
}

/// The quotient algebra A/I with projection and lift data.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: Arc<Algebra>,
    /// `dim A x dim A/I`, maps coordinates in A to coordinates in A/I.
    pub projection: Matrix,
    /// `dim A/I x dim A`, coset representatives.
    pub lift: Matrix,
    pub ideal: Subspace,
}

impl QuotientAlgebra {
    pub fn project(&self, x: &Element) -> Element {
        Element(self.projection.apply(&x.0))
    }

    pub fn lift(&self, y: &Element) -> Element {
        Element(self.lift.apply(&y.0))
    }
}

/// eAe with unit e. Fails with `NotIdempotent` if e^2 != e.
pub fn peirce_corner(a: &Algebra, e: &Element) -> Result<Corner> {
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let f = a.field();
    let space = a.corner_subspace(e);
    let basis = space.basis_vecs();
    let k = basis.len();
    let labels: Vec<String> = basis
        .iter()
        .map(|v| {
            let s = a.format(&Element(v.clone()));
            if v.iter().filter(|&&c| c != 0).count() > 1 || v.iter().any(|&c| c > 1) {
                format!("({s})")
            } else {
                s
            }
        })
        .collect();
    let mut table = Vec::with_capacity(k * k * k);
    for x in &basis {
        for y in &basis {
            let prod = a.mul(&Element(x.clone()), &Element(y.clone()));
            let c = space
                .coords(&prod.0)
                .ok_or_else(|| Error::InternalInconsistency("eAe not closed under products".into()))?;
            table.extend(c);
        }
    }
    let unit = Element(space.coords(&e.0).ok_or_else(|| Error::InternalInconsistency("e not in eAe".into()))?);

    let mut presentation = Presentation::default();
    if let Some(blocks) = &a.presentation.blocks {
        let inside: Vec<(usize, &Element)> = blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| a.mul(e, b) == **b && a.mul(b, e) == **b)
            .collect();
        let sum = inside.iter().fold(a.zero_element(), |acc, (_, b)| a.add(&acc, b));
        if sum == *e {
            presentation.blocks = Some(inside.iter().map(|(_, b)| Element(space.coords(&b.0).unwrap())).collect());
            presentation.vertex_names = inside
                .iter()
                .map(|(i, _)| a.presentation.vertex_names.get(*i).cloned().unwrap_or_else(|| i.to_string()))
                .collect();
        }
    }
    if let Some(rad) = &a.presentation.radical {
        let ejes: Vec<Vec<u32>> = rad
            .basis_vecs()
            .into_iter()
            .map(|j| space.coords(&a.mul(&a.mul(e, &Element(j)), e).0).unwrap())
            .collect();
        presentation.radical = Some(Subspace::span(f, k, &ejes));
    }
    let corner = Algebra::assemble(f, labels, table, unit, presentation);
    Ok(Corner {
        algebra: Arc::new(corner),
        idempotent: e.clone(),
        embedding: space.basis().clone(),
        space,
    })
}

/// A/I. Fails with `NotAnIdeal` if the subspace is not a two-sided ideal.
pub fn quotient_algebra(a: &Algebra, ideal: &Subspace) -> Result<QuotientAlgebra> {
    if ideal.ambient() != a.dim() {
        return Err(Error::DimensionMismatch("ideal ambient dimension".into()));
    }
    if !a.is_ideal(ideal) {
        return Err(Error::NotAnIdeal);
    }
    let f = a.field();
    let d = a.dim();
    let reps = ideal.complement_indices();
    let q = reps.len();
    let mut projection = Matrix::zeros(f, d, q);
    for i in 0..d {
        let c = ideal.quotient_coords(&a.basis_element(i).0);
        for (j, v) in c.into_iter().enumerate() {
            projection[(i, j)] = v;
        }
    }
    let mut lift = Matrix::zeros(f, q, d);
    for (j, &r) in reps.iter().enumerate() {
        lift[(j, r)] = 1;
    }
    let labels: Vec<String> = reps.iter().map(|&r| a.labels()[r].clone()).collect();
    let mut table = Vec::with_capacity(q * q * q);
    for &x in &reps {
        for &y in &reps {
            table.extend(projection.apply(&a.basis_product(x, y)));
        }
    }
    let unit = Element(projection.apply(&a.unit().0));

    let mut presentation = Presentation::default();
    if let Some(blocks) = &a.presentation.blocks {
        let mut names = Vec::new();
        let mut imgs = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            let img = projection.apply(&b.0);
            if img.iter().any(|&c| c != 0) {
                imgs.push(Element(img));
                names.push(a.presentation.vertex_names.get(i).cloned().unwrap_or_else(|| i.to_string()));
            }
        }
        presentation.blocks = Some(imgs);
        presentation.vertex_names = names;
    }
    if let Some(rad) = &a.presentation.radical {
        presentation.radical = Some(Subspace::span_matrix(&rad.basis().mul(&projection)));
    }
    let b = Algebra::assemble(f, labels, table, unit, presentation);
    Ok(QuotientAlgebra {
        algebra: Arc::new(b),
        projection,
        lift,
        ideal: ideal.clone(),
    })
}

/// Semiprimary witness: the radical is nilpotent of the given index and the
/// quotient by it has zero radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiprimaryWitness {
    pub semiprimary: bool,
    pub nilpotency_index: usize,
    pub radical_dim: usize,
}

pub fn is_semiprimary(a: &Algebra) -> Result<SemiprimaryWitness> {
    let j = a.radical_subspace()?;
    let index = a
        .nilpotency_index(&j)
        .ok_or_else(|| Error::InternalInconsistency("radical is not nilpotent".into()))?;
    Ok(SemiprimaryWitness {
        semiprimary: true,
        nilpotency_index: index,
        radical_dim: j.dim(),
    })
}

/// Parses `[coef*]name` terms joined by `+`/`-`, looking names up with `resolve`.
pub fn parse_linear_combination(
    f: Fp,
    dim: usize,
    expr: &str,
    resolve: &dyn Fn(&str) -> Option<Vec<u32>>,
) -> Result<Vec<u32>> {
    let mut acc = vec![0u32; dim];
    let s = expr.trim();
    if s.is_empty() {
        return Err(Error::Invalid("empty element expression".into()));
    }
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            terms.push((sign, cur.trim().to_string()));
            cur.clear();
            sign = if ch == '-' { -1 } else { 1 };
        } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                sign = -sign;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Invalid(format!("dangling operator in {expr:?}")));
    }
    terms.push((sign, cur.trim().to_string()));
    for (sign, term) in terms {
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => {
                let c: i64 = c.trim().parse().map_err(|_| Error::Invalid(format!("bad coefficient in {term:?}")))?;
                (c, n.trim().to_string())
            }
            None => (1, term.clone()),
        };
        let vec = resolve(&name).ok_or(Error::UnknownLabel(name))?;
        f.axpy(&mut acc, f.reduce(sign * coef), &vec);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn t2() -> Algebra {
        // basis e11, e12, e22
        let z = vec![0, 0, 0];
        let e11 = vec![1, 0, 0];
        let e12 = vec![0, 1, 0];
        let e22 = vec![0, 0, 1];
        let table = vec![
            vec![e11.clone(), e12.clone(), z.clone()],
            vec![z.clone(), z.clone(), e12.clone()],
            vec![z.clone(), z.clone(), e22.clone()],
        ];
        Algebra::from_structure_constants(2, vec!["e11".into(), "e12".into(), "e22".into()], table, vec![1, 0, 1]).unwrap()
    }

    #[test]
    fn field_as_algebra() {
        let a = Algebra::from_structure_constants(2, vec!["1".into()], vec![vec![vec![1]]], vec![1]).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.enumerate_idempotents(16).unwrap().len(), 2);
    }

    #[test]
    fn t2_builds_and_has_six_idempotents() {
        let a = t2();
        assert_eq!(a.dim(), 3);
        let idem = a.enumerate_idempotents(DEFAULT_ELEMENT_BUDGET).unwrap();
        let names: Vec<String> = idem.iter().map(|e| a.format(e)).collect();
        assert_eq!(names, vec!["0", "e22", "e12+e22", "e11", "e11+e22", "e11+e12"]);
    }

    #[test]
    fn non_associative_rejected() {
        // b1 b1 = b2, b1 b2 = 0, b2 b1 = b1 ... with unit u = b0
        // (b1 b1) b2 = b2 b2 = b2 but b1 (b1 b2) = b1 * 0 = 0
        let table = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]],
            vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 1]],
        ];
        let err = Algebra::from_structure_constants(2, vec!["u".into(), "b1".into(), "b2".into()], table, vec![1, 0, 0]).unwrap_err();
        assert!(matches!(err, Error::NonAssociative { .. }), "{err:?}");
    }

    #[test]
    fn bad_unit_and_prime() {
        let err = Algebra::from_structure_constants(2, vec!["1".into()], vec![vec![vec![1]]], vec![0]).unwrap_err();
        assert!(matches!(err, Error::BadUnit { .. }));
        let err = Algebra::from_structure_constants(4, vec!["1".into()], vec![vec![vec![1]]], vec![1]).unwrap_err();
        assert_eq!(err, Error::NotPrime(4));
    }

    #[test]
    fn t2_radical_and_semiprimary() {
        let a = t2();
        let j = a.radical_subspace().unwrap();
        assert_eq!(j, Subspace::span(a.field(), 3, &[vec![0, 1, 0]]));
        let w = is_semiprimary(&a).unwrap();
        assert_eq!(w.nilpotency_index, 2);
    }

    #[test]
    fn corner_and_quotient_of_t2() {
        let a = t2();
        let e11 = a.basis_element(0);
        let c = peirce_corner(&a, &e11).unwrap();
        assert_eq!(c.algebra.dim(), 1);
        assert_eq!(c.algebra.unit(), &Element(vec![1]));
        let full = peirce_corner(&a, a.unit()).unwrap();
        assert_eq!(full.algebra.table(), a.table());
        let zero = peirce_corner(&a, &a.zero_element()).unwrap();
        assert_eq!(zero.algebra.dim(), 0);
        assert_eq!(peirce_corner(&a, &a.basis_element(1)).unwrap_err(), Error::NotIdempotent);

        let ideal = a.ideal_closure(&Subspace::span(a.field(), 3, std::slice::from_ref(&e11.0)));
        assert_eq!(ideal.dim(), 2);
        let q = quotient_algebra(&a, &ideal).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        let q0 = quotient_algebra(&a, &Subspace::zero(a.field(), 3)).unwrap();
        assert_eq!(q0.algebra.table(), a.table());
        let qa = quotient_algebra(&a, &Subspace::full(a.field(), 3)).unwrap();
        assert_eq!(qa.algebra.dim(), 0);
        let not_ideal = Subspace::span(a.field(), 3, &[vec![1, 0, 0]]);
        assert_eq!(quotient_algebra(&a, &not_ideal).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let a = t2();
        let x = a.parse_element("e11 + e12").unwrap();
        assert_eq!(x, Element(vec![1, 1, 0]));
        assert_eq!(a.format(&x), "e11+e12");
        assert_eq!(a.parse_element("1").unwrap(), a.unit().clone());
        assert_eq!(a.parse_element("e11 - e11").unwrap(), a.zero_element());
        assert!(matches!(a.parse_element("q"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn m2_radical_is_zero_by_principal_scan() {
        let m2 = builtins::load("M2_F2").unwrap();
        assert!(m2.radical_subspace().unwrap().is_zero());
        assert_eq!(m2.primitive_idempotents(DEFAULT_ELEMENT_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn trace_form_on_upper_triangular_mod_5() {
        let a = Algebra::from_structure_constants(
            5,
            vec!["e11".into(), "e12".into(), "e22".into()],
            t2().table(),
            vec![1, 0, 1],
        )
        .unwrap();
        assert_eq!(a.trace_form_kernel(), Subspace::span(a.field(), 3, &[vec![0, 1, 0]]));
    }
}
