//! Enumeration of all modules of bounded dimension up to isomorphism.
//!
//! A module is determined by the action of a complete set of orthogonal
//! idempotents e_1..e_r and of Peirce-homogeneous algebra generators. In a
//! basis adapted to M = ⊕ M e_i the idempotents act by coordinate
//! projections and a generator x ∈ e_i A e_j only has an (i, j) block, so
//! enumerating dimension vectors and those blocks reaches every isomorphism
//! class. Each candidate is then checked against the full representation law.

use std::sync::Arc;

use crate::algebra::{Algebra, Element, DEFAULT_ELEMENT_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::module::{find_isomorphism, hom_dim, is_simple, Module};

/// Upper bound on the number of candidate representations examined.
pub const CATALOG_BUDGET: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Idem(usize),
    Gen(usize),
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub element: Element,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct BlockPresentation {
    pub idempotents: Vec<Element>,
    pub generators: Vec<Generator>,
    words: Vec<Vec<Letter>>,
    /// Row k: coordinates of basis element b_k in terms of `words`.
    basis_in_words: Matrix,
}

fn word_value(a: &Algebra, bp_idem: &[Element], gens: &[Generator], w: &[Letter]) -> Element {
    let mut x = a.unit().clone();
    for l in w {
        let y = match l {
            Letter::Idem(i) => &bp_idem[*i],
            Letter::Gen(g) => &gens[*g].element,
        };
        x = a.mul(&x, y);
    }
    x
}

/// Words in idempotents and generators whose values form a basis of A, or
/// `None` if the letters do not generate A.
fn spanning_words(a: &Algebra, idem: &[Element], gens: &[Generator]) -> (Subspace, Vec<Vec<Letter>>) {
    let f = a.field();
    let d = a.dim();
    let letters: Vec<Letter> = (0..idem.len())
        .map(Letter::Idem)
        .chain((0..gens.len()).map(Letter::Gen))
        .collect();
    let mut words: Vec<Vec<Letter>> = Vec::new();
    let mut vecs: Vec<Vec<u32>> = Vec::new();
    let mut span = Subspace::zero(f, d);
    for &l in &letters {
        let v = word_value(a, idem, gens, &[l]).0;
        if !span.contains(&v) {
            vecs.push(v);
            span = Subspace::span(f, d, &vecs);
            words.push(vec![l]);
        }
    }
    let mut i = 0;
    while i < words.len() && span.dim() < d {
        for &l in &letters {
            let mut w = words[i].clone();
            w.push(l);
            let v = word_value(a, idem, gens, &w).0;
            if !span.contains(&v) {
                vecs.push(v);
                span = Subspace::span(f, d, &vecs);
                words.push(w);
            }
        }
        i += 1;
    }
    (span, words)
}

impl BlockPresentation {
    pub fn new(a: &Algebra) -> Result<BlockPresentation> {
        let f = a.field();
        let d = a.dim();
        let idempotents = a.primitive_idempotents(DEFAULT_ELEMENT_BUDGET)?;
        let mut candidates = Vec::new();
        for (i, ei) in idempotents.iter().enumerate() {
            for (j, ej) in idempotents.iter().enumerate() {
                let vecs: Vec<Vec<u32>> = (0..d)
                    .map(|k| a.mul(&a.mul(ei, &a.basis_element(k)), ej).0)
                    .collect();
                for v in Subspace::span(f, d, &vecs).basis_vecs() {
                    candidates.push(Generator {
                        element: Element(v),
                        from: i,
                        to: j,
                    });
                }
            }
        }
        let mut generators: Vec<Generator> = Vec::new();
        let (mut span, mut words) = spanning_words(a, &idempotents, &generators);
        for c in candidates {
            if span.dim() == d {
                break;
            }
            if !span.contains(&c.element.0) {
                generators.push(c);
                (span, words) = spanning_words(a, &idempotents, &generators);
            }
        }
        if span.dim() != d {
            return Err(Error::InternalInconsistency("Peirce pieces do not generate the algebra".into()));
        }
        let rows: Vec<Vec<u32>> = words
            .iter()
            .map(|w| word_value(a, &idempotents, &generators, w).0)
            .collect();
        let basis_in_words = Matrix::from_rows(f, d, &rows)
            .inverse()
            .ok_or_else(|| Error::InternalInconsistency("word values are not a basis".into()))?;
        Ok(BlockPresentation {
            idempotents,
            generators,
            words,
            basis_in_words,
        })
    }

    /// Number of free block entries for a dimension vector.
    fn free_entries(&self, dims: &[usize]) -> usize {
        self.generators.iter().map(|g| dims[g.from] * dims[g.to]).sum()
    }

    /// The action matrices determined by projector and generator matrices.
    fn assemble(&self, a: &Arc<Algebra>, dims: &[usize], entries: &[u32]) -> Result<Module> {
        let f = a.field();
        let n: usize = dims.iter().sum();
        let offsets: Vec<usize> = dims
            .iter()
            .scan(0, |acc, &x| {
                let o = *acc;
                *acc += x;
                Some(o)
            })
            .collect();
        let projectors: Vec<Matrix> = (0..dims.len())
            .map(|i| {
                let mut m = Matrix::zeros(f, n, n);
                for r in offsets[i]..offsets[i] + dims[i] {
                    m[(r, r)] = 1;
                }
                m
            })
            .collect();
        let mut pos = 0;
        let gens: Vec<Matrix> = self
            .generators
            .iter()
            .map(|g| {
                let (r, c) = (dims[g.from], dims[g.to]);
                let mut m = Matrix::zeros(f, n, n);
                for i in 0..r {
                    for j in 0..c {
                        m[(offsets[g.from] + i, offsets[g.to] + j)] = entries[pos];
                        pos += 1;
                    }
                }
                m
            })
            .collect();
        let word_mats: Vec<Matrix> = self
            .words
            .iter()
            .map(|w| {
                w.iter().fold(Matrix::identity(f, n), |acc, l| match l {
                    Letter::Idem(i) => acc.mul(&projectors[*i]),
                    Letter::Gen(g) => acc.mul(&gens[*g]),
                })
            })
            .collect();
        let action = (0..a.dim())
            .map(|k| Matrix::combination(f, n, n, self.basis_in_words.row(k), &word_mats))
            .collect();
        Module::from_raw_parts(a.clone(), n, action)
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Fingerprint {
    dim: usize,
    idempotent_ranks: Vec<usize>,
    action_ranks: Vec<usize>,
    end_dim: usize,
}

fn fingerprint(m: &Module, idempotents: &[Element]) -> Result<Fingerprint> {
    Ok(Fingerprint {
        dim: m.dim(),
        idempotent_ranks: idempotents.iter().map(|e| m.action_of(e).rank()).collect(),
        action_ranks: m.action().iter().map(|x| x.rank()).collect(),
        end_dim: hom_dim(m, m)?,
    })
}

/// One representative per isomorphism class of modules of dimension at
/// most `bound`, in order of dimension then discovery.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub algebra: Arc<Algebra>,
    pub bound: usize,
    modules: Vec<Module>,
    keys: Vec<Fingerprint>,
    idempotents: Vec<Element>,
}

impl Catalog {
    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn get(&self, i: usize) -> &Module {
        &self.modules[i]
    }

    /// Index of the catalog module isomorphic to `m`, if any.
    pub fn identify(&self, m: &Module) -> Result<Option<usize>> {
        if m.dim() > self.bound {
            return Ok(None);
        }
        let key = fingerprint(m, &self.idempotents)?;
        for (i, k) in self.keys.iter().enumerate() {
            if *k == key && find_isomorphism(&self.modules[i], m)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Indices of the simple modules.
    pub fn simples(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            if is_simple(m)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    fn insert(&mut self, m: Module) -> Result<bool> {
        let key = fingerprint(&m, &self.idempotents)?;
        for (i, k) in self.keys.iter().enumerate() {
            if *k == key && find_isomorphism(&self.modules[i], &m)?.is_some() {
                return Ok(false);
            }
        }
        self.modules.push(m);
        self.keys.push(key);
        Ok(true)
    }
}

pub fn module_catalog(a: &Arc<Algebra>, bound: usize) -> Result<Catalog> {
    if a.dim() == 0 {
        let z = Module::zero(a);
        let key = fingerprint(&z, &[])?;
        return Ok(Catalog {
            algebra: a.clone(),
            bound,
            modules: vec![z],
            keys: vec![key],
            idempotents: vec![],
        });
    }
    let bp = BlockPresentation::new(a)?;
    let r = bp.idempotents.len();
    let mut plan = Vec::new();
    let mut needed: u128 = 0;
    for n in 0..=bound {
        for dims in compositions(n, r) {
            let free = bp.free_entries(&dims);
            needed = needed.saturating_add(a.field().count(free));
            plan.push((dims, free));
        }
    }
    if needed > CATALOG_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "module catalog".into(),
            needed,
            budget: CATALOG_BUDGET,
        });
    }
    let mut cat = Catalog {
        algebra: a.clone(),
        bound,
        modules: Vec::new(),
        keys: Vec::new(),
        idempotents: bp.idempotents.clone(),
    };
    for (dims, free) in plan {
        for entries in a.field().all_vectors(free) {
            let m = bp.assemble(a, &dims, &entries)?;
            if m.check_representation_law().is_ok() {
                cat.insert(m)?;
            }
        }
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn cat(name: &str, bound: usize) -> Catalog {
        module_catalog(&Arc::new(builtins::load(name).unwrap()), bound).unwrap()
    }

    #[test]
    fn t2_catalog_sizes() {
        assert_eq!(cat("T2_F2", 0).len(), 1);
        assert_eq!(cat("T2_F2", 1).len(), 3);
        let c = cat("T2_F2", 2);
        assert_eq!(c.len(), 7);
        let dims: Vec<usize> = c.modules().iter().map(|m| m.dim()).collect();
        assert_eq!(dims, vec![0, 1, 1, 2, 2, 2, 2]);
        assert_eq!(c.simples().unwrap().len(), 2);
    }

    #[test]
    fn semisimple_and_local_catalogs() {
        // F2: one module per dimension.
        assert_eq!(cat("F2", 3).len(), 4);
        // F2[x]/x^2: partitions of n with parts at most 2.
        assert_eq!(cat("F2[x]/x2", 3).len(), 1 + 1 + 2 + 2);
        // M2(F2): only multiples of the 2-dimensional simple.
        assert_eq!(cat("M2_F2", 3).len(), 2);
    }

    #[test]
    fn every_catalog_module_obeys_the_law() {
        for name in ["T3_F2", "A3_quiver_with_zero_relation"] {
            let c = cat(name, 2);
            for m in c.modules() {
                m.check_representation_law().unwrap();
            }
            assert_eq!(c.identify(&c.modules()[3]).unwrap(), Some(3));
        }
    }
}
