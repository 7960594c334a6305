//! Two-sided ideals, idempotent ideals and the Tor criterion.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{quotient_algebra, Algebra, Element, QuotientAlgebra};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::linalg::{all_subspaces, subspace_count, Matrix, Subspace};
use crate::module::{
    cokernel, hom_space, kernel, left_quotient_bimodule, restrict_to, same_algebra, tensor_over, tor1, Bimodule, Module,
    ModuleMap, SEARCH_BUDGET,
};
use crate::report::{module_json, subspace_json, Check};

#[derive(Clone)]
pub struct Ideal {
    algebra: Arc<Algebra>,
    space: Subspace,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.space == other.space
    }
}

impl Eq for Ideal {}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.space.cmp(&other.space)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self.describe())
    }
}

impl Ideal {
    pub fn new(algebra: &Arc<Algebra>, space: Subspace) -> Result<Ideal> {
        if space.ambient() != algebra.dim() {
            return Err(Error::DimensionMismatch("ideal ambient dimension".into()));
        }
        if !algebra.is_ideal(&space) {
            return Err(Error::NotAnIdeal);
        }
        Ok(Ideal {
            algebra: algebra.clone(),
            space,
        })
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Ideal {
        Ideal {
            algebra: algebra.clone(),
            space: Subspace::zero(algebra.field(), algebra.dim()),
        }
    }

    pub fn whole(algebra: &Arc<Algebra>) -> Ideal {
        Ideal {
            algebra: algebra.clone(),
            space: Subspace::full(algebra.field(), algebra.dim()),
        }
    }

    pub fn radical(algebra: &Arc<Algebra>) -> Result<Ideal> {
        Ok(Ideal {
            algebra: algebra.clone(),
            space: algebra.radical_subspace()?,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Element> {
        self.space.basis_vecs().into_iter().map(Element).collect()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains(&x.0)
    }

    /// Basis elements written in the algebra's labels, e.g. `{e11, e12}`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.basis().iter().map(|x| self.algebra.format(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn quotient(&self) -> Result<QuotientAlgebra> {
        quotient_algebra(&self.algebra, &self.space)
    }
}

pub fn ideal_generated(a: &Arc<Algebra>, elements: &[Element]) -> Ideal {
    let vecs: Vec<Vec<u32>> = elements.iter().map(|e| e.0.clone()).collect();
    Ideal {
        algebra: a.clone(),
        space: a.ideal_closure(&Subspace::span(a.field(), a.dim(), &vecs)),
    }
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if !same_algebra(&i.algebra, &j.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let a = &i.algebra;
    Ok(Ideal {
        algebra: a.clone(),
        space: a.ideal_closure(&a.product_space(&i.space, &j.space)),
    })
}

pub fn is_idempotent_ideal(i: &Ideal) -> bool {
    ideal_product(i, i).map(|sq| sq == *i).unwrap_or(false)
}

/// AeA.
pub fn idempotent_to_ideal(a: &Arc<Algebra>, e: &Element) -> Result<Ideal> {
    if !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    Ok(ideal_generated(a, std::slice::from_ref(e)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Scan every subspace of the algebra.
    Brute,
    /// AeA over sums of vertex idempotents.
    Vertex,
}

fn brute_ideals(a: &Arc<Algebra>) -> Result<Vec<Ideal>> {
    let needed = subspace_count(a.field(), a.dim());
    if needed > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "brute ideal scan (use vertex mode)".into(),
            needed,
            budget: SEARCH_BUDGET,
        });
    }
    Ok(all_subspaces(a.field(), a.dim())
        .into_iter()
        .filter(|s| a.is_ideal(s))
        .map(|space| Ideal {
            algebra: a.clone(),
            space,
        })
        .collect())
}

/// Every two-sided ideal, sorted.
pub fn enumerate_ideals(a: &Arc<Algebra>) -> Result<Vec<Ideal>> {
    let mut out = brute_ideals(a)?;
    out.sort();
    Ok(out)
}

pub fn enumerate_idempotent_ideals(a: &Arc<Algebra>, mode: EnumerationMode) -> Result<Vec<Ideal>> {
    let mut out: Vec<Ideal> = match mode {
        EnumerationMode::Brute => brute_ideals(a)?.into_iter().filter(is_idempotent_ideal).collect(),
        EnumerationMode::Vertex => {
            let idem = a.vertex_subset_idempotents().ok_or_else(|| {
                Error::Invalid("vertex mode needs an algebra with vertex idempotents (quiver input)".into())
            })?;
            idem.iter()
                .map(|e| idempotent_to_ideal(a, e))
                .collect::<Result<Vec<_>>>()?
        }
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// dim I/I^2 and, independently, dim Tor_1^A(A/I, A/I).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorPair {
    pub quotient_dim: usize,
    pub tor_dim: usize,
}

pub fn tor1_self_quotient(i: &Ideal) -> Result<TorPair> {
    let sq = ideal_product(i, i)?;
    let quotient_dim = i.dim() - sq.dim();
    let q = i.quotient()?;
    let a = &i.algebra;
    let right = restrict_to(&q, a, &Module::regular(&q.algebra))?;
    let left = left_quotient_bimodule(a, &q);
    let tor_dim = tor1(&right, &left)?;
    Ok(TorPair { quotient_dim, tor_dim })
}

/// The homological and the ring-theoretic dimension agree on every ideal.
pub fn check_tor_criterion(a: &Arc<Algebra>) -> Result<Check> {
    let mut c = Check::new(
        "dim Tor_1(A/I, A/I) = dim I/I^2 for every ideal",
        "Tor_1^A(A/I, A/I) is I/I^2, so I is idempotent iff it vanishes",
    );
    for i in enumerate_ideals(a)? {
        let t = tor1_self_quotient(&i)?;
        c.record(t.quotient_dim == t.tor_dim, || {
            serde_json::json!({"ideal": i.describe(), "quotient_dim": t.quotient_dim, "tor_dim": t.tor_dim})
        });
    }
    Ok(c)
}

/// A/I as an A-(A/I) bimodule.
pub fn quotient_bimodule(a: &Arc<Algebra>, q: &QuotientAlgebra) -> Bimodule {
    let mut b = left_quotient_bimodule(a, q);
    b.right_algebra = q.algebra.clone();
    b.right = (0..q.algebra.dim()).map(|j| q.algebra.right_mult(j).clone()).collect();
    b
}

pub fn killed_by(m: &Module, i: &Ideal) -> bool {
    i.basis().iter().all(|x| m.action_of(x).is_zero())
}

/// The unit M -> M ⊗_A A/I, as a map of A-modules.
pub fn reflection_unit(m: &Module, i: &Ideal) -> Result<ModuleMap> {
    let a = &i.algebra;
    let q = i.quotient()?;
    let b = quotient_bimodule(a, &q);
    let t = tensor_over(m, &b)?;
    let target = restrict_to(&q, a, &t.module)?;
    let one = q.project(a.unit()).0;
    let rows: Vec<Vec<u32>> = (0..m.dim())
        .map(|r| {
            let mut x = vec![0; m.dim()];
            x[r] = 1;
            t.class_of(&x, &one)
        })
        .collect();
    ModuleMap::new(m.clone(), target.clone(), Matrix::from_rows(a.field(), target.dim(), &rows))
}

/// Catalog-relative checks that the modules killed by I form a bireflective
/// subcategory reflected by M -> M ⊗_A A/I.
pub fn check_bireflective_image(i: &Ideal, catalog: &Catalog) -> Result<Vec<Check>> {
    let f = i.algebra.field();
    let members: Vec<&Module> = catalog.modules().iter().filter(|m| killed_by(m, i)).collect();

    let mut closure = Check::new(
        "bireflective: kernels, cokernels and sums of A/I-modules are A/I-modules",
        "modules over a ring epimorphism's target form a subcategory closed under kernels, cokernels, products and coproducts",
    );
    for m in &members {
        for n in &members {
            let sum = m.direct_sum(n);
            closure.record(killed_by(&sum, i), || {
                serde_json::json!({"kind": "direct sum", "left": module_json(m), "right": module_json(n)})
            });
            for g in hom_space(m, n)?.maps() {
                let k = kernel(&g).to_module();
                let (c, _) = cokernel(&g);
                closure.record(killed_by(&k, i) && killed_by(&c, i), || {
                    serde_json::json!({"kind": "kernel/cokernel", "map": crate::report::matrix_json(&g.matrix),
                        "source": module_json(m), "target": module_json(n)})
                });
            }
        }
    }

    let mut reflection = Check::new(
        "bireflective: M -> M ⊗ A/I is the reflection",
        "the reflection of a module into the subcategory is tensoring with the quotient ring, with kernel M·I",
    );
    for m in catalog.modules() {
        let unit = reflection_unit(m, i)?;
        let target_ok = killed_by(&unit.target, i);
        let surjective = unit.is_surjective();
        let mi = crate::ttf::trace_ideal_part(m, i)?;
        let kernel_ok = kernel(&unit).space == mi.space;
        let mut universal = true;
        for y in &members {
            let h_t = hom_space(&unit.target, y)?;
            let h_m = hom_space(m, y)?;
            // Precomposition with the unit is a bijection Hom(M⊗A/I, Y) -> Hom(M, Y).
            let images: Vec<Vec<u32>> = h_t
                .matrices()
                .iter()
                .map(|g| h_m.coords(&unit.matrix.mul(g)).expect("composite of module maps"))
                .collect();
            let rank = if images.is_empty() {
                0
            } else {
                Matrix::from_rows(f, h_m.dim(), &images).rank()
            };
            universal &= rank == h_t.dim() && rank == h_m.dim();
        }
        reflection.record(target_ok && surjective && kernel_ok && universal, || {
            serde_json::json!({"module": module_json(m), "ideal": subspace_json(i.space()),
                "target_killed": target_ok, "surjective": surjective, "kernel_is_MI": kernel_ok, "universal": universal})
        });
    }
    Ok(vec![closure, reflection])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn alg(name: &str) -> Arc<Algebra> {
        Arc::new(builtins::load(name).unwrap())
    }

    fn el(a: &Algebra, s: &str) -> Element {
        a.parse_element(s).unwrap()
    }

    #[test]
    fn generation_and_products() {
        let a = alg("T2_F2");
        let rad = ideal_generated(&a, &[el(&a, "e12")]);
        assert_eq!(rad.describe(), "{e12}");
        assert_eq!(ideal_generated(&a, &[a.unit().clone()]), Ideal::whole(&a));
        assert_eq!(ideal_generated(&a, &[]), Ideal::zero(&a));
        assert_eq!(ideal_product(&rad, &rad).unwrap(), Ideal::zero(&a));
        let i = idempotent_to_ideal(&a, &el(&a, "e11")).unwrap();
        assert_eq!(i.dim(), 2);
        assert!(i.contains(&el(&a, "e12")));
        assert_eq!(ideal_product(&i, &Ideal::whole(&a)).unwrap(), i);
        assert!(is_idempotent_ideal(&i));
        assert!(!is_idempotent_ideal(&rad));
        assert!(is_idempotent_ideal(&Ideal::zero(&a)));
        assert_eq!(idempotent_to_ideal(&a, &el(&a, "e12")), Err(Error::NotIdempotent));
    }

    #[test]
    fn idempotent_ideal_counts() {
        let count = |n: &str| enumerate_idempotent_ideals(&alg(n), EnumerationMode::Brute).unwrap().len();
        assert_eq!(count("T2_F2"), 4);
        assert_eq!(count("F2[x]/x2"), 2);
        assert_eq!(count("F2xF2"), 4);
        assert_eq!(count("M2_F2"), 2);
        assert_eq!(count("F2"), 2);
    }

    #[test]
    fn brute_and_vertex_modes_agree() {
        for n in ["T2_F2", "T3_F2", "A3_quiver_with_zero_relation", "F2xF2"] {
            let a = alg(n);
            assert_eq!(
                enumerate_idempotent_ideals(&a, EnumerationMode::Brute).unwrap(),
                enumerate_idempotent_ideals(&a, EnumerationMode::Vertex).unwrap(),
                "{n}"
            );
        }
    }

    #[test]
    fn tor_against_i_mod_i_squared() {
        let a = alg("T2_F2");
        let i = idempotent_to_ideal(&a, &el(&a, "e11")).unwrap();
        assert_eq!(tor1_self_quotient(&i).unwrap(), TorPair { quotient_dim: 0, tor_dim: 0 });
        let rad = Ideal::radical(&a).unwrap();
        assert_eq!(tor1_self_quotient(&rad).unwrap(), TorPair { quotient_dim: 1, tor_dim: 1 });
        assert_eq!(tor1_self_quotient(&Ideal::zero(&a)).unwrap().tor_dim, 0);
    }

    #[test]
    fn bireflective_on_t2() {
        let a = alg("T2_F2");
        let cat = crate::catalog::module_catalog(&a, 2).unwrap();
        for i in [idempotent_to_ideal(&a, &el(&a, "e11")).unwrap(), Ideal::whole(&a), Ideal::zero(&a)] {
            for c in check_bireflective_image(&i, &cat).unwrap() {
                assert!(c.passed, "{}: {:?}", c.name, c.counterexample);
            }
        }
    }
}
