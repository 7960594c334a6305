//! A recollement with a projective generator on the right realized, up to
//! Morita equivalence, by an idempotent of S = End_A(A^n).

use std::sync::Arc;

use serde_json::json;

use crate::algebra::{peirce_corner, Algebra, Corner, Element, DEFAULT_ELEMENT_BUDGET};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::ideal::{idempotent_to_ideal, ideal_product, is_idempotent_ideal, Ideal};
use crate::linalg::{Matrix, Subspace};
use crate::module::{hom_space, HomSpace, Module, ModuleMap, SEARCH_BUDGET};
use crate::recollement::{recollement_from_idempotent, restricted_action, Recollement};
use crate::report::{matrix_json, module_json, Check};

/// Largest n tried for a split surjection A^n → j_!(P).
pub const MAX_COPIES: usize = 6;

/// Selects the projective generator P = (eAe)^copies of Mod eAe, and
/// optionally the idempotent e with AeA = I.
#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub idempotent: Option<Element>,
    pub copies: usize,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            idempotent: None,
            copies: 1,
        }
    }
}

/// Θ(j^*M) → j'^*(ΦM) for one module M over A.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub module: Module,
    /// Hom_{eAe}(P, j^*M) as a module over e'Se'.
    pub source: Module,
    /// Hom_A(A^n, M)·e' as a module over e'Se'.
    pub target: Module,
    pub iso: Matrix,
}

#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub recollement: Recollement,
    pub generator: Module,
    /// j_!(P).
    pub image: Module,
    pub n: usize,
    /// p: A^n → j_!(P).
    pub surjection: Matrix,
    /// h: j_!(P) → A^n with h then p the identity.
    pub section: Matrix,
    /// S = End_A(A^n); basis element i is `endomorphisms[i]`, and s_i s_j is
    /// "s_j then s_i".
    pub endomorphism_ring: Arc<Algebra>,
    pub endomorphisms: Vec<Matrix>,
    /// e' = p then h.
    pub e_prime: Element,
    pub corner: Corner,
    /// Basis of End_{eAe}(P).
    pub generator_endomorphisms: Vec<Matrix>,
    /// Row t: coordinates of the image of the t-th basis element of e'Se'
    /// in End_{eAe}(P).
    pub ring_iso: Matrix,
    pub certificates: Vec<Certificate>,
}

fn basis_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Ring of endomorphisms of a module with product s_i s_j = "s_j then s_i".
fn endomorphism_algebra(h: &HomSpace) -> Result<(Arc<Algebra>, Vec<Matrix>)> {
    let f = h.source.field();
    let mats = h.matrices();
    let k = mats.len();
    let coords = |m: &Matrix| {
        h.coords(m)
            .ok_or_else(|| Error::InternalInconsistency("endomorphisms are not closed under composition".into()))
    };
    let mut table = vec![vec![Vec::new(); k]; k];
    for (i, si) in mats.iter().enumerate() {
        for (j, sj) in mats.iter().enumerate() {
            table[i][j] = coords(&sj.mul(si))?;
        }
    }
    let unit = coords(&Matrix::identity(f, h.source.dim()))?;
    let labels = (0..k).map(|i| format!("s{i}")).collect();
    Ok((Arc::new(Algebra::from_structure_constants(f.p(), labels, table, unit)?), mats))
}

fn find_split_surjection(a: &Arc<Algebra>, q: &Module) -> Result<(usize, Matrix, Matrix)> {
    let f = a.field();
    let d = a.dim();
    let dq = q.dim();
    for n in 1..=MAX_COPIES {
        let count = f.count(n * dq);
        if count > SEARCH_BUDGET {
            return Err(Error::NoSplitSurjection { budget: n - 1 });
        }
        let free = Module::free(a, n);
        let back = hom_space(q, &free)?;
        let back_mats = back.matrices();
        for tuple in f.all_vectors(n * dq) {
            let mut rows = Vec::with_capacity(n * d);
            for s in 0..n {
                let qs = &tuple[s * dq..(s + 1) * dq];
                for k in 0..d {
                    rows.push(q.action()[k].apply(qs));
                }
            }
            let p = Matrix::from_rows(f, dq, &rows);
            if p.rank() < dq {
                continue;
            }
            // Solve Σ c_j H_j p = I for a section.
            let lhs: Vec<Vec<u32>> = back_mats.iter().map(|h| h.mul(&p).data().to_vec()).collect();
            let target = Matrix::identity(f, dq);
            let sol = if lhs.is_empty() {
                if dq == 0 { Some(Vec::new()) } else { None }
            } else {
                Matrix::from_rows(f, dq * dq, &lhs).solve_left(target.data())
            };
            if let Some(c) = sol {
                let h = if back_mats.is_empty() {
                    Matrix::zeros(f, dq, n * d)
                } else {
                    back.combination(&c)
                };
                return Ok((n, p, h));
            }
        }
    }
    Err(Error::NoSplitSurjection { budget: MAX_COPIES })
}

/// The construction on an idempotent ideal I = AeA with P = (eAe)^copies.
/// Certificates are produced for every module of `catalog`.
pub fn kuhn_construction(a: &Arc<Algebra>, i: &Ideal, spec: &GeneratorSpec, catalog: &Catalog) -> Result<EquivalenceWitness> {
    if !is_idempotent_ideal(i) {
        let sq = ideal_product(i, i)?;
        return Err(Error::NotIdempotentIdeal {
            quotient_dim: i.dim() - sq.dim(),
        });
    }
    let e = match &spec.idempotent {
        Some(e) => e.clone(),
        None => idempotent_generation_check(a, i)?
            .ok_or_else(|| Error::Invalid(format!("ideal {} is not generated by an idempotent", i.describe())))?,
    };
    if idempotent_to_ideal(a, &e)? != *i {
        return Err(Error::Invalid(format!("AeA differs from {}", i.describe())));
    }
    if spec.copies == 0 {
        return Err(Error::Invalid("the generator needs at least one copy of eAe".into()));
    }
    let f = a.field();
    let r = recollement_from_idempotent(a, &e)?;
    let c = r.corner_algebra().clone();
    let generator = Module::free(&c, spec.copies);
    let image = r.j_shriek(&generator)?;
    let (n, p, h) = find_split_surjection(a, &image)?;
    let free = Module::free(a, n);

    let s_hom = hom_space(&free, &free)?;
    let (s_alg, s_mats) = endomorphism_algebra(&s_hom)?;
    let e_mat = p.mul(&h);
    let e_prime = Element(
        s_hom
            .coords(&e_mat)
            .ok_or_else(|| Error::InternalInconsistency("p then h is not an endomorphism".into()))?,
    );
    let corner = peirce_corner(&s_alg, &e_prime)?;
    let corner_mats: Vec<Matrix> = corner
        .embedding
        .row_vecs()
        .iter()
        .map(|v| Matrix::combination(f, n * a.dim(), n * a.dim(), v, &s_mats))
        .collect();

    // x ↦ "h then x then p" in End_A(j_!P), pulled back along j_! to End(P).
    let end_p = hom_space(&generator, &generator)?;
    let end_p_mats = end_p.matrices();
    let jt = r.j_shriek_data(&generator)?;
    let lifted: Vec<Vec<u32>> = end_p
        .maps()
        .iter()
        .map(|g| r.j_shriek_map(g).map(|m| m.matrix.data().to_vec()))
        .collect::<Result<_>>()?;
    let lifted = Matrix::from_rows(f, jt.module.dim() * jt.module.dim(), &lifted);
    let ring_rows: Vec<Vec<u32>> = corner_mats
        .iter()
        .map(|x| {
            let target = h.mul(x).mul(&p);
            lifted
                .solve_left(target.data())
                .ok_or_else(|| Error::InternalInconsistency("corner element outside the image of j_!".into()))
        })
        .collect::<Result<_>>()?;
    let ring_iso = Matrix::from_rows(f, end_p.dim(), &ring_rows);
    let beta: Vec<Matrix> = ring_rows
        .iter()
        .map(|row| Matrix::combination(f, generator.dim(), generator.dim(), row, &end_p_mats))
        .collect();

    let certificates = catalog
        .modules()
        .iter()
        .map(|m| certificate(&r, m, &generator, &free, &s_alg, &s_mats, &e_prime, &corner, &beta, &p))
        .collect::<Result<_>>()?;

    Ok(EquivalenceWitness {
        recollement: r,
        generator,
        image,
        n,
        surjection: p,
        section: h,
        endomorphism_ring: s_alg,
        endomorphisms: s_mats,
        e_prime,
        corner,
        generator_endomorphisms: end_p_mats,
        ring_iso,
        certificates,
    })
}

/// Hom_A(A^n, M) as a right S-module: g·s = "s then g".
pub fn morita_image(free: &Module, s_alg: &Arc<Algebra>, s_mats: &[Matrix], m: &Module) -> Result<(HomSpace, Module)> {
    let hs = hom_space(free, m)?;
    let basis = hs.matrices();
    let action = s_mats
        .iter()
        .map(|s| {
            let rows: Vec<Vec<u32>> = basis
                .iter()
                .map(|g| hs.coords(&s.mul(g)).ok_or_else(|| Error::InternalInconsistency("S-action on Hom".into())))
                .collect::<Result<_>>()?;
            Ok(Matrix::from_rows(m.field(), hs.dim(), &rows))
        })
        .collect::<Result<_>>()?;
    let module = Module::from_raw_parts(s_alg.clone(), hs.dim(), action)?;
    Ok((hs, module))
}

#[allow(clippy::too_many_arguments)]
fn certificate(
    r: &Recollement,
    m: &Module,
    generator: &Module,
    free: &Module,
    s_alg: &Arc<Algebra>,
    s_mats: &[Matrix],
    e_prime: &Element,
    corner: &Corner,
    beta: &[Matrix],
    p: &Matrix,
) -> Result<Certificate> {
    let f = m.field();
    let jm = r.j_star(m)?;
    let eps = r.counit_shriek(m)?;

    let src_hom = hom_space(generator, &jm)?;
    let src_basis = src_hom.matrices();
    let src_action = beta
        .iter()
        .map(|b| {
            let rows: Vec<Vec<u32>> = src_basis
                .iter()
                .map(|g| src_hom.coords(&b.mul(g)).ok_or_else(|| Error::InternalInconsistency("End(P)-action".into())))
                .collect::<Result<_>>()?;
            Ok(Matrix::from_rows(f, src_hom.dim(), &rows))
        })
        .collect::<Result<_>>()?;
    let source = Module::from_raw_parts(corner.algebra.clone(), src_hom.dim(), src_action)?;

    let (phi_hom, phi) = morita_image(free, s_alg, s_mats, m)?;
    let space = Subspace::span_matrix(&phi.action_of(e_prime));
    let corner_actions: Vec<Matrix> = corner
        .embedding
        .row_vecs()
        .into_iter()
        .map(|v| phi.action_of(&Element(v)))
        .collect();
    let target = Module::from_raw_parts(corner.algebra.clone(), space.dim(), restricted_action(&space, &corner_actions)?)?;

    let rows: Vec<Vec<u32>> = src_hom
        .maps()
        .iter()
        .map(|g| {
            let j = r.j_shriek_map(g)?;
            let composite = p.mul(&j.matrix).mul(&eps.matrix);
            let c = phi_hom
                .coords(&composite)
                .ok_or_else(|| Error::InternalInconsistency("p j_!(f) ε is not A-linear".into()))?;
            space
                .coords(&c)
                .ok_or_else(|| Error::InternalInconsistency("certificate leaves Hom(A^n, M)e'".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Certificate {
        module: m.clone(),
        source,
        target,
        iso: Matrix::from_rows(f, space.dim(), &rows),
    })
}

/// Checks the stored witness data; nothing is reconstructed except the
/// module e'S used to test the left-multiplication map.
pub fn verify_equivalence_witness(w: &EquivalenceWitness) -> Result<Vec<Check>> {
    let anchor = "Mod A is Morita equivalent to Mod S and the recollement is induced by e' in S";
    let s = &w.endomorphism_ring;
    let f = s.field();
    let c = &w.corner.algebra;

    let split = w.surjection.rank() == w.image.dim() && w.section.mul(&w.surjection).is_identity();
    let mut split_check = Check::single("p: A^n → j_!(P) is a split surjection", anchor, split, || {
        json!({"n": w.n, "surjection": matrix_json(&w.surjection), "section": matrix_json(&w.section)})
    });
    let free = Module::free(&w.recollement.base, w.n);
    split_check.record(
        ModuleMap::new(free.clone(), w.image.clone(), w.surjection.clone()).is_ok()
            && ModuleMap::new(w.image.clone(), free.clone(), w.section.clone()).is_ok(),
        || json!({"reason": "p or h is not A-linear"}),
    );

    let idem = Check::single("e' is idempotent", anchor, s.is_idempotent(&w.e_prime), || {
        json!({"e_prime": w.e_prime.0})
    });

    // β: e'Se' → End(P).
    let dc = c.dim();
    let de = w.generator_endomorphisms.len();
    let beta = |x: &[u32]| -> Matrix {
        let coeffs = w.ring_iso.apply(x);
        Matrix::combination(f, w.generator.dim(), w.generator.dim(), &coeffs, &w.generator_endomorphisms)
    };
    let bij = Check::single("e'Se' → End(P) is bijective", anchor, w.ring_iso.rank() == dc && dc == de, || {
        json!({"rank": w.ring_iso.rank(), "dim_corner": dc, "dim_end_p": de})
    });
    let mut mult = Check::new("e'Se' → End(P) is multiplicative and unital", anchor);
    let exhaustive = f.count(2 * dc) <= SEARCH_BUDGET;
    let elements: Vec<Vec<u32>> = if exhaustive {
        f.all_vectors(dc).collect()
    } else {
        (0..dc).map(|t| basis_vec(dc, t)).collect()
    };
    for x in &elements {
        let bx = beta(x);
        for y in &elements {
            let xy = c.mul(&Element(x.clone()), &Element(y.clone()));
            let ok = beta(&xy.0) == beta(y).mul(&bx);
            mult.record(ok, || json!({"x": x, "y": y}));
        }
    }
    mult.record(beta(&c.unit().0).is_identity(), || json!({"reason": "unit is not sent to the identity"}));

    // Left multiplication e'Se' → End_S(e'S).
    let d = s.dim();
    let es_space = Subspace::span(f, d, &(0..d).map(|k| s.mul(&w.e_prime, &s.basis_element(k)).0).collect::<Vec<_>>());
    let right: Vec<Matrix> = (0..d).map(|k| s.right_mult(k).clone()).collect();
    let es = Module::new(s.clone(), es_space.dim(), restricted_action(&es_space, &right)?)?;
    let end_es = hom_space(&es, &es)?;
    let mut left_ok = true;
    let mut rows = Vec::new();
    for v in w.corner.embedding.row_vecs() {
        let lm = restricted_action(&es_space, &[s.left_mult_by(&Element(v))])?.remove(0);
        match end_es.coords(&lm) {
            Some(cv) => rows.push(cv),
            None => left_ok = false,
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(f, end_es.dim(), &rows).rank() };
    let alpha = Check::single(
        "left multiplication e'Se' → End_S(e'S) is bijective",
        anchor,
        left_ok && rank == dc && dc == end_es.dim(),
        || json!({"rank": rank, "dim_corner": dc, "dim_end": end_es.dim()}),
    );

    let mut certs = Check::new("Θ(j^*M) ≅ j'^*(ΦM) by an invertible intertwiner", anchor);
    for cert in &w.certificates {
        let laws = cert.source.check_representation_law().is_ok() && cert.target.check_representation_law().is_ok();
        let iso = laws
            && ModuleMap::new(cert.source.clone(), cert.target.clone(), cert.iso.clone())
                .map(|g| g.is_isomorphism())
                .unwrap_or(false);
        certs.record(iso, || json!({"module": module_json(&cert.module), "iso": matrix_json(&cert.iso)}));
    }
    Ok(vec![split_check, idem, bij, mult, alpha, certs])
}

/// An idempotent e with AeA = I. Vertex idempotents are tried first, then
/// every idempotent if the algebra is small enough. `Ok(None)` means the
/// exhaustive search found none.
pub fn idempotent_generation_check(a: &Arc<Algebra>, i: &Ideal) -> Result<Option<Element>> {
    if !is_idempotent_ideal(i) {
        let sq = ideal_product(i, i)?;
        return Err(Error::NotIdempotentIdeal {
            quotient_dim: i.dim() - sq.dim(),
        });
    }
    if let Some(vs) = a.vertex_subset_idempotents() {
        for e in vs {
            if idempotent_to_ideal(a, &e)? == *i {
                return Ok(Some(e));
            }
        }
    }
    for e in a.enumerate_idempotents(DEFAULT_ELEMENT_BUDGET)? {
        if idempotent_to_ideal(a, &e)? == *i {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::catalog::module_catalog;

    fn run(name: &str, e: &str, copies: usize) -> EquivalenceWitness {
        let a = Arc::new(builtins::load(name).unwrap());
        let e = a.parse_element(e).unwrap();
        let i = idempotent_to_ideal(&a, &e).unwrap();
        let cat = module_catalog(&a, 2).unwrap();
        let w = kuhn_construction(&a, &i, &GeneratorSpec { idempotent: None, copies }, &cat).unwrap();
        for c in verify_equivalence_witness(&w).unwrap() {
            assert!(c.passed, "{}: {:?}", c.name, c.counterexample);
        }
        w
    }

    #[test]
    fn t2_e11() {
        let w = run("T2_F2", "e11", 1);
        assert_eq!(w.n, 1);
        assert_eq!(w.corner.algebra.dim(), 1);
        assert_eq!(w.certificates.len(), 7);
    }

    #[test]
    fn two_copies_give_matrix_ring() {
        let w = run("T2_F2", "e11", 2);
        assert_eq!(w.n, 2);
        assert_eq!(w.corner.algebra.dim(), 4);
    }

    #[test]
    fn whole_ideal() {
        let w = run("T2_F2", "1", 1);
        assert_eq!(w.n, 1);
        assert_eq!(w.corner.algebra.dim(), 3);
    }

    #[test]
    fn generation() {
        let a = Arc::new(builtins::load("T2_F2").unwrap());
        let e11 = a.parse_element("e11").unwrap();
        let i = idempotent_to_ideal(&a, &e11).unwrap();
        let g = idempotent_generation_check(&a, &i).unwrap().unwrap();
        assert_eq!(idempotent_to_ideal(&a, &g).unwrap(), i);
        assert!(idempotent_generation_check(&a, &Ideal::zero(&a)).unwrap().unwrap().is_zero());
        assert_eq!(idempotent_generation_check(&a, &Ideal::whole(&a)).unwrap().unwrap(), *a.unit());
        let rad = Ideal::radical(&a).unwrap();
        assert!(matches!(idempotent_generation_check(&a, &rad), Err(Error::NotIdempotentIdeal { .. })));
    }

    #[test]
    fn tampered_witness_fails() {
        let mut w = run("T2_F2", "e11", 1);
        let k = w.certificates.iter().position(|c| c.iso.rows() > 0).unwrap();
        let c = &mut w.certificates[k];
        c.iso = Matrix::zeros(c.iso.field(), c.iso.rows(), c.iso.cols());
        let checks = verify_equivalence_witness(&w).unwrap();
        assert!(!checks.iter().find(|c| c.name.starts_with("Θ")).unwrap().passed);

        let mut w = run("T2_F2", "1", 1);
        w.ring_iso = Matrix::zeros(w.ring_iso.field(), w.ring_iso.rows(), w.ring_iso.cols());
        let checks = verify_equivalence_witness(&w).unwrap();
        assert!(checks.iter().filter(|c| !c.passed).count() >= 2);
    }
}
