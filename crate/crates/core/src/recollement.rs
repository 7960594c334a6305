//! The recollement of module categories induced by an idempotent e:
//! Mod A/AeA --i--> Mod A --j--> Mod eAe.

use std::sync::Arc;

use serde_json::json;

use crate::algebra::{peirce_corner, Algebra, Corner, Element, QuotientAlgebra};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::ideal::{idempotent_to_ideal, is_idempotent_ideal, killed_by, Ideal};
use crate::linalg::{Matrix, Subspace};
use crate::module::{
    all_submodules, descend_to, ext1, hom_dim, hom_over, hom_space, is_simple, kernel, quotient, quotient_map,
    restrict_map, restrict_to, same_algebra, tensor_over, Bimodule, HomOver, HomSpace, Module, ModuleMap,
    SubmoduleBasis, TensorProduct,
};
use crate::report::{matrix_json, module_json, Check};
use crate::ttf::{annihilated_part, trace_ideal_part};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctorTag {
    /// i^* = − ⊗_A A/AeA, i.e. M ↦ M/M·AeA.
    IUpperStar,
    /// i_*: restriction along A → A/AeA.
    ILowerStar,
    /// i^! = Hom_A(A/AeA, −), i.e. M ↦ M[AeA].
    IShriek,
    /// j_! = − ⊗_{eAe} eA.
    JShriek,
    /// j^* = Hom_A(eA, −), i.e. M ↦ M·e.
    JStar,
    /// j_* = Hom_{eAe}(Ae, −).
    JLowerStar,
}

impl FunctorTag {
    pub const ALL: [FunctorTag; 6] = [
        FunctorTag::IUpperStar,
        FunctorTag::ILowerStar,
        FunctorTag::IShriek,
        FunctorTag::JShriek,
        FunctorTag::JStar,
        FunctorTag::JLowerStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctorTag::IUpperStar => "i_upper_star",
            FunctorTag::ILowerStar => "i_lower_star",
            FunctorTag::IShriek => "i_shriek",
            FunctorTag::JShriek => "j_shriek",
            FunctorTag::JStar => "j_star",
            FunctorTag::JLowerStar => "j_lower_star",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Recollement {
    pub base: Arc<Algebra>,
    pub e: Element,
    pub corner: Corner,
    pub quotient: QuotientAlgebra,
    pub ideal: Ideal,
    /// eA as an eAe-A bimodule.
    pub ea: Bimodule,
    /// Ae as an A-eAe bimodule.
    pub ae: Bimodule,
    ea_space: Subspace,
    ae_space: Subspace,
}

fn coords_or_bug(s: &Subspace, v: &[u32], what: &str) -> Result<Vec<u32>> {
    s.coords(v).ok_or_else(|| Error::InternalInconsistency(format!("{what}: vector outside its subspace")))
}

/// Action matrices of `elements` on a subspace stable under them.
pub(crate) fn restricted_action(space: &Subspace, mats: &[Matrix]) -> Result<Vec<Matrix>> {
    let f = space.field();
    mats.iter()
        .map(|m| {
            let rows: Vec<Vec<u32>> = space
                .basis_vecs()
                .iter()
                .map(|v| coords_or_bug(space, &m.apply(v), "restricted action"))
                .collect::<Result<_>>()?;
            Ok(Matrix::from_rows(f, space.dim(), &rows))
        })
        .collect()
}

pub fn recollement_from_idempotent(a: &Arc<Algebra>, e: &Element) -> Result<Recollement> {
    let corner = peirce_corner(a, e)?;
    let ideal = idempotent_to_ideal(a, e)?;
    let quotient = ideal.quotient()?;
    let f = a.field();
    let d = a.dim();
    let cemb: Vec<Element> = corner.embedding.row_vecs().into_iter().map(Element).collect();

    let ea_space = Subspace::span(f, d, &(0..d).map(|k| a.mul(e, &a.basis_element(k)).0).collect::<Vec<_>>());
    let ae_space = Subspace::span(f, d, &(0..d).map(|k| a.mul(&a.basis_element(k), e).0).collect::<Vec<_>>());

    let right_on = |space: &Subspace, by: &[Element]| -> Result<Vec<Matrix>> {
        restricted_action(space, &by.iter().map(|x| a.right_mult_by(x)).collect::<Vec<_>>())
    };
    let left_on = |space: &Subspace, by: &[Element]| -> Result<Vec<Matrix>> {
        restricted_action(space, &by.iter().map(|x| a.left_mult_by(x)).collect::<Vec<_>>())
    };
    let abasis: Vec<Element> = (0..d).map(|k| a.basis_element(k)).collect();
    let ea = Bimodule::new(
        corner.algebra.clone(),
        a.clone(),
        ea_space.dim(),
        left_on(&ea_space, &cemb)?,
        right_on(&ea_space, &abasis)?,
    )?;
    let ae = Bimodule::new(
        a.clone(),
        corner.algebra.clone(),
        ae_space.dim(),
        left_on(&ae_space, &abasis)?,
        right_on(&ae_space, &cemb)?,
    )?;
    Ok(Recollement {
        base: a.clone(),
        e: e.clone(),
        corner,
        quotient,
        ideal,
        ea,
        ae,
        ea_space,
        ae_space,
    })
}

impl Recollement {
    pub fn corner_algebra(&self) -> &Arc<Algebra> {
        &self.corner.algebra
    }

    pub fn quotient_algebra(&self) -> &Arc<Algebra> {
        &self.quotient.algebra
    }

    fn expect(&self, m: &Module, alg: &Arc<Algebra>, functor: &'static str, expected: &'static str) -> Result<()> {
        if same_algebra(m.algebra(), alg) {
            Ok(())
        } else {
            Err(Error::WrongCategory { functor, expected })
        }
    }

    /// M·e as a subspace of M.
    pub fn j_star_space(&self, m: &Module) -> Subspace {
        Subspace::span_matrix(&m.action_of(&self.e))
    }

    pub fn j_star(&self, m: &Module) -> Result<Module> {
        self.expect(m, &self.base, "j_star", "modules over A")?;
        let space = self.j_star_space(m);
        let mats: Vec<Matrix> = self
            .corner
            .embedding
            .row_vecs()
            .into_iter()
            .map(|c| m.action_of(&Element(c)))
            .collect();
        Module::from_raw_parts(self.corner.algebra.clone(), space.dim(), restricted_action(&space, &mats)?)
    }

    pub fn j_star_map(&self, g: &ModuleMap) -> Result<ModuleMap> {
        let (s, t) = (self.j_star_space(&g.source), self.j_star_space(&g.target));
        let rows: Vec<Vec<u32>> = s
            .basis_vecs()
            .iter()
            .map(|v| coords_or_bug(&t, &g.apply(v), "j_star on maps"))
            .collect::<Result<_>>()?;
        Ok(ModuleMap::from_parts(
            self.j_star(&g.source)?,
            self.j_star(&g.target)?,
            Matrix::from_rows(self.base.field(), t.dim(), &rows),
        ))
    }

    pub fn j_shriek_data(&self, x: &Module) -> Result<TensorProduct> {
        self.expect(x, &self.corner.algebra, "j_shriek", "modules over eAe")?;
        tensor_over(x, &self.ea)
    }

    pub fn j_shriek(&self, x: &Module) -> Result<Module> {
        Ok(self.j_shriek_data(x)?.module)
    }

    fn j_shriek_map_with(&self, g: &ModuleMap, ts: &TensorProduct, tt: &TensorProduct) -> ModuleMap {
        let big = g.matrix.kron(&Matrix::identity(self.base.field(), self.ea.dim));
        ModuleMap::from_parts(ts.module.clone(), tt.module.clone(), ts.induced(&big, tt))
    }

    pub fn j_shriek_map(&self, g: &ModuleMap) -> Result<ModuleMap> {
        let ts = self.j_shriek_data(&g.source)?;
        let tt = self.j_shriek_data(&g.target)?;
        Ok(self.j_shriek_map_with(g, &ts, &tt))
    }

    pub fn j_lower_star_data(&self, x: &Module) -> Result<HomOver> {
        self.expect(x, &self.corner.algebra, "j_lower_star", "modules over eAe")?;
        hom_over(&self.ae, x)
    }

    pub fn j_lower_star(&self, x: &Module) -> Result<Module> {
        Ok(self.j_lower_star_data(x)?.module)
    }

    fn j_lower_star_map_with(&self, g: &ModuleMap, hs: &HomOver, ht: &HomOver) -> Result<ModuleMap> {
        let rows: Vec<Vec<u32>> = hs
            .basis_matrices()
            .iter()
            .map(|m| {
                ht.coords(&m.mul(&g.matrix))
                    .ok_or_else(|| Error::InternalInconsistency("j_lower_star on maps".into()))
            })
            .collect::<Result<_>>()?;
        Ok(ModuleMap::from_parts(
            hs.module.clone(),
            ht.module.clone(),
            Matrix::from_rows(self.base.field(), ht.module.dim(), &rows),
        ))
    }

    pub fn j_lower_star_map(&self, g: &ModuleMap) -> Result<ModuleMap> {
        let hs = self.j_lower_star_data(&g.source)?;
        let ht = self.j_lower_star_data(&g.target)?;
        self.j_lower_star_map_with(g, &hs, &ht)
    }

    pub fn i_upper_star(&self, m: &Module) -> Result<Module> {
        self.expect(m, &self.base, "i_upper_star", "modules over A")?;
        let mi = trace_ideal_part(m, &self.ideal)?;
        descend_to(&self.quotient, &quotient(m, &mi).0)
    }

    pub fn i_upper_star_map(&self, g: &ModuleMap) -> Result<ModuleMap> {
        let s = trace_ideal_part(&g.source, &self.ideal)?;
        let t = trace_ideal_part(&g.target, &self.ideal)?;
        let q = quotient_map(g, &s, &t)?;
        Ok(ModuleMap::from_parts(
            descend_to(&self.quotient, &q.source)?,
            descend_to(&self.quotient, &q.target)?,
            q.matrix,
        ))
    }

    pub fn i_shriek(&self, m: &Module) -> Result<Module> {
        self.expect(m, &self.base, "i_shriek", "modules over A")?;
        descend_to(&self.quotient, &annihilated_part(m, &self.ideal)?.to_module())
    }

    pub fn i_shriek_map(&self, g: &ModuleMap) -> Result<ModuleMap> {
        let s = annihilated_part(&g.source, &self.ideal)?;
        let t = annihilated_part(&g.target, &self.ideal)?;
        let r = restrict_map(g, &s, &t)?;
        Ok(ModuleMap::from_parts(
            descend_to(&self.quotient, &r.source)?,
            descend_to(&self.quotient, &r.target)?,
            r.matrix,
        ))
    }

    pub fn i_lower_star(&self, n: &Module) -> Result<Module> {
        self.expect(n, &self.quotient.algebra, "i_lower_star", "modules over A/AeA")?;
        restrict_to(&self.quotient, &self.base, n)
    }

    pub fn i_lower_star_map(&self, g: &ModuleMap) -> Result<ModuleMap> {
        Ok(ModuleMap::from_parts(
            self.i_lower_star(&g.source)?,
            self.i_lower_star(&g.target)?,
            g.matrix.clone(),
        ))
    }

    pub fn apply(&self, tag: FunctorTag, m: &Module) -> Result<Module> {
        match tag {
            FunctorTag::IUpperStar => self.i_upper_star(m),
            FunctorTag::ILowerStar => self.i_lower_star(m),
            FunctorTag::IShriek => self.i_shriek(m),
            FunctorTag::JShriek => self.j_shriek(m),
            FunctorTag::JStar => self.j_star(m),
            FunctorTag::JLowerStar => self.j_lower_star(m),
        }
    }

    pub fn apply_map(&self, tag: FunctorTag, g: &ModuleMap) -> Result<ModuleMap> {
        match tag {
            FunctorTag::IUpperStar => self.i_upper_star_map(g),
            FunctorTag::ILowerStar => self.i_lower_star_map(g),
            FunctorTag::IShriek => self.i_shriek_map(g),
            FunctorTag::JShriek => self.j_shriek_map(g),
            FunctorTag::JStar => self.j_star_map(g),
            FunctorTag::JLowerStar => self.j_lower_star_map(g),
        }
    }

    /// ε_M: j_! j^* M → M, x ⊗ y ↦ x·y.
    pub fn counit_shriek(&self, m: &Module) -> Result<ModuleMap> {
        let jm = self.j_star(m)?;
        let t = self.j_shriek_data(&jm)?;
        let me = self.j_star_space(m);
        let ys: Vec<Element> = self.ea_space.basis_vecs().into_iter().map(Element).collect();
        let xs = me.basis_vecs();
        let rows: Vec<Vec<u32>> = t
            .representatives()
            .iter()
            .map(|&r| {
                let (s, k) = (r / self.ea.dim, r % self.ea.dim);
                m.action_of(&ys[k]).apply(&xs[s])
            })
            .collect();
        ModuleMap::new(t.module.clone(), m.clone(), Matrix::from_rows(self.base.field(), m.dim(), &rows))
    }

    /// η_X: X → j^* j_! X, x ↦ x ⊗ e.
    pub fn unit_shriek(&self, x: &Module) -> Result<ModuleMap> {
        let t = self.j_shriek_data(x)?;
        let target_space = self.j_star_space(&t.module);
        let e_coords = coords_or_bug(&self.ea_space, &self.e.0, "e in eA")?;
        let rows: Vec<Vec<u32>> = (0..x.dim())
            .map(|r| {
                let mut v = vec![0; x.dim()];
                v[r] = 1;
                coords_or_bug(&target_space, &t.class_of(&v, &e_coords), "x ⊗ e in (X ⊗ eA)e")
            })
            .collect::<Result<_>>()?;
        let target = self.j_star(&t.module)?;
        ModuleMap::new(x.clone(), target, Matrix::from_rows(self.base.field(), target_space.dim(), &rows))
    }

    /// ν_M: M → j_* j^* M, m ↦ (y ↦ m·y).
    pub fn unit_lower(&self, m: &Module) -> Result<ModuleMap> {
        let f = self.base.field();
        let jm = self.j_star(m)?;
        let h = self.j_lower_star_data(&jm)?;
        let me = self.j_star_space(m);
        let ys: Vec<Matrix> = self.ae_space.basis_vecs().into_iter().map(|y| m.action_of(&Element(y))).collect();
        let rows: Vec<Vec<u32>> = (0..m.dim())
            .map(|r| {
                let mut v = vec![0; m.dim()];
                v[r] = 1;
                let frows: Vec<Vec<u32>> = ys
                    .iter()
                    .map(|y| coords_or_bug(&me, &y.apply(&v), "m·y in Me"))
                    .collect::<Result<_>>()?;
                let fm = Matrix::from_rows(f, me.dim(), &frows);
                h.coords(&fm).ok_or_else(|| Error::InternalInconsistency("m·− is not eAe-linear".into()))
            })
            .collect::<Result<_>>()?;
        ModuleMap::new(m.clone(), h.module.clone(), Matrix::from_rows(f, h.module.dim(), &rows))
    }

    /// κ_X: j^* j_* X → X, φ ↦ φ(e).
    pub fn counit_lower(&self, x: &Module) -> Result<ModuleMap> {
        let h = self.j_lower_star_data(x)?;
        let source_space = self.j_star_space(&h.module);
        let e_coords = coords_or_bug(&self.ae_space, &self.e.0, "e in Ae")?;
        let rows: Vec<Vec<u32>> = source_space
            .basis_vecs()
            .iter()
            .map(|v| h.matrix_of(v).apply(&e_coords))
            .collect();
        let source = self.j_star(&h.module)?;
        ModuleMap::new(source, x.clone(), Matrix::from_rows(self.base.field(), x.dim(), &rows))
    }

    /// M → i_* i^* M.
    pub fn unit_upper(&self, m: &Module) -> Result<ModuleMap> {
        let mi = trace_ideal_part(m, &self.ideal)?;
        let (_, pi) = quotient(m, &mi);
        let target = self.i_lower_star(&self.i_upper_star(m)?)?;
        ModuleMap::new(m.clone(), target, pi.matrix)
    }

    /// i_* i^! M → M.
    pub fn counit_shriek_i(&self, m: &Module) -> Result<ModuleMap> {
        let ann = annihilated_part(m, &self.ideal)?;
        let source = self.i_lower_star(&self.i_shriek(m)?)?;
        ModuleMap::new(source, m.clone(), ann.inclusion().matrix)
    }
}

/// Linear map between Hom spaces, in their bases; returns (rank, dim source, dim target).
fn transfer_rank(src: &HomSpace, dst: &HomSpace, image: impl Fn(&Matrix) -> Result<Matrix>) -> Result<(usize, usize, usize)> {
    let f = src.source.field();
    let rows: Vec<Vec<u32>> = src
        .matrices()
        .iter()
        .map(|m| {
            let img = image(m)?;
            dst.coords(&img)
                .ok_or_else(|| Error::InternalInconsistency("transferred map is not a module map".into()))
        })
        .collect::<Result<_>>()?;
    let rank = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(f, dst.dim(), &rows).rank()
    };
    Ok((rank, src.dim(), dst.dim()))
}

struct AData {
    m: Module,
    jm: Module,
    eps: ModuleMap,
    jshriek_jm: TensorProduct,
    nu: ModuleMap,
    jlower_jm: HomOver,
    pi: ModuleMap,
    iota: ModuleMap,
    i_upper: Module,
    i_shriek: Module,
}

struct CData {
    x: Module,
    jshriek: TensorProduct,
    jlower: HomOver,
    eta: ModuleMap,
    kappa: ModuleMap,
}

fn a_data(r: &Recollement, m: &Module) -> Result<AData> {
    let jm = r.j_star(m)?;
    Ok(AData {
        m: m.clone(),
        eps: r.counit_shriek(m)?,
        jshriek_jm: r.j_shriek_data(&jm)?,
        nu: r.unit_lower(m)?,
        jlower_jm: r.j_lower_star_data(&jm)?,
        pi: r.unit_upper(m)?,
        iota: r.counit_shriek_i(m)?,
        i_upper: r.i_upper_star(m)?,
        i_shriek: r.i_shriek(m)?,
        jm,
    })
}

fn c_data(r: &Recollement, x: &Module) -> Result<CData> {
    Ok(CData {
        x: x.clone(),
        jshriek: r.j_shriek_data(x)?,
        jlower: r.j_lower_star_data(x)?,
        eta: r.unit_shriek(x)?,
        kappa: r.counit_lower(x)?,
    })
}

/// The axioms of a recollement checked on catalogs over A, eAe and A/AeA.
pub fn verify_recollement(r: &Recollement, cat_a: &Catalog, cat_c: &Catalog, cat_b: &Catalog) -> Result<Vec<Check>> {
    let ad: Vec<AData> = cat_a.modules().iter().map(|m| a_data(r, m)).collect::<Result<_>>()?;
    let cd: Vec<CData> = cat_c.modules().iter().map(|x| c_data(r, x)).collect::<Result<_>>()?;
    let bmods = cat_b.modules();

    let adj_anchor = "(j_!, j^*, j_*) and (i^*, i_*, i^!) are adjoint triples";
    let mut adj_js = Check::new("adjunction j_! ⊣ j^*: Hom(X, j^*M) → Hom(j_!X, M) is bijective", adj_anchor);
    let mut adj_jl = Check::new("adjunction j^* ⊣ j_*: Hom(j^*M, X) → Hom(M, j_*X) is bijective", adj_anchor);
    let mut adj_iu = Check::new("adjunction i^* ⊣ i_*: Hom(i^*M, N) → Hom(M, i_*N) is bijective", adj_anchor);
    let mut adj_is = Check::new("adjunction i_* ⊣ i^!: Hom(N, i^!M) → Hom(i_*N, M) is bijective", adj_anchor);
    let mut maps_ok = Check::new("units and counits are module maps", "units and counits of the adjunctions are morphisms");

    for a in &ad {
        for mp in [&a.eps, &a.nu, &a.pi, &a.iota] {
            maps_ok.record(mp.is_intertwiner(), || json!({"module": module_json(&a.m), "map": matrix_json(&mp.matrix)}));
        }
        for c in &cd {
            // φ ↦ ε_M ∘ j_!(φ)
            let src = hom_space(&c.x, &a.jm)?;
            let dst = hom_space(&c.jshriek.module, &a.m)?;
            let res = transfer_rank(&src, &dst, |phi| {
                let g = ModuleMap::from_parts(c.x.clone(), a.jm.clone(), phi.clone());
                Ok(r.j_shriek_map_with(&g, &c.jshriek, &a.jshriek_jm).matrix.mul(&a.eps.matrix))
            })?;
            adj_js.record(res.0 == res.1 && res.0 == res.2, || adj_ce(&a.m, &c.x, res));
            // ψ ↦ j_*(ψ) ∘ ν_M
            let src = hom_space(&a.jm, &c.x)?;
            let dst = hom_space(&a.m, &c.jlower.module)?;
            let res = transfer_rank(&src, &dst, |psi| {
                let g = ModuleMap::from_parts(a.jm.clone(), c.x.clone(), psi.clone());
                Ok(a.nu.matrix.mul(&r.j_lower_star_map_with(&g, &a.jlower_jm, &c.jlower)?.matrix))
            })?;
            adj_jl.record(res.0 == res.1 && res.0 == res.2, || adj_ce(&a.m, &c.x, res));
        }
        for n in bmods {
            let in_ = r.i_lower_star(n)?;
            let src = hom_space(&a.i_upper, n)?;
            let dst = hom_space(&a.m, &in_)?;
            let res = transfer_rank(&src, &dst, |psi| Ok(a.pi.matrix.mul(psi)))?;
            adj_iu.record(res.0 == res.1 && res.0 == res.2, || adj_ce(&a.m, n, res));
            let src = hom_space(n, &a.i_shriek)?;
            let dst = hom_space(&in_, &a.m)?;
            let res = transfer_rank(&src, &dst, |psi| Ok(psi.mul(&a.iota.matrix)))?;
            adj_is.record(res.0 == res.1 && res.0 == res.2, || adj_ce(&a.m, n, res));
        }
    }
    for c in &cd {
        for mp in [&c.eta, &c.kappa] {
            maps_ok.record(mp.is_intertwiner(), || json!({"module": module_json(&c.x), "map": matrix_json(&mp.matrix)}));
        }
    }

    // Naturality on a basis of each Hom space (the squares are linear in the map).
    let nat_anchor = "the adjunction bijections are natural";
    let mut nat_eps = Check::new("naturality of ε: j_!j^* → id", nat_anchor);
    let mut nat_nu = Check::new("naturality of ν: id → j_*j^*", nat_anchor);
    let mut nat_pi = Check::new("naturality of id → i_*i^*", nat_anchor);
    let mut nat_iota = Check::new("naturality of i_*i^! → id", nat_anchor);
    for a in &ad {
        for b in &ad {
            for g in maps_or_zero(&hom_space(&a.m, &b.m)?) {
                let jg = r.j_star_map(&g)?;
                let lhs = r.j_shriek_map_with(&jg, &a.jshriek_jm, &b.jshriek_jm).matrix.mul(&b.eps.matrix);
                nat_eps.record(lhs == a.eps.matrix.mul(&g.matrix), || nat_ce(&a.m, &b.m, &g));
                let lhs = a.nu.matrix.mul(&r.j_lower_star_map_with(&jg, &a.jlower_jm, &b.jlower_jm)?.matrix);
                nat_nu.record(lhs == g.matrix.mul(&b.nu.matrix), || nat_ce(&a.m, &b.m, &g));
                let lhs = a.pi.matrix.mul(&r.i_upper_star_map(&g)?.matrix);
                nat_pi.record(lhs == g.matrix.mul(&b.pi.matrix), || nat_ce(&a.m, &b.m, &g));
                let lhs = r.i_shriek_map(&g)?.matrix.mul(&b.iota.matrix);
                nat_iota.record(lhs == a.iota.matrix.mul(&g.matrix), || nat_ce(&a.m, &b.m, &g));
            }
        }
    }
    let mut nat_eta = Check::new("naturality of η: id → j^*j_!", nat_anchor);
    let mut nat_kappa = Check::new("naturality of j^*j_* → id", nat_anchor);
    let ff_anchor = "i_*, j_! and j_* are fully faithful";
    let mut ff_js = Check::new("j_! is fully faithful", ff_anchor);
    let mut ff_jl = Check::new("j_* is fully faithful", ff_anchor);
    for c in &cd {
        for d in &cd {
            let hs = hom_space(&c.x, &d.x)?;
            for g in maps_or_zero(&hs) {
                let jg = r.j_shriek_map_with(&g, &c.jshriek, &d.jshriek);
                let lhs = c.eta.matrix.mul(&r.j_star_map(&jg)?.matrix);
                nat_eta.record(lhs == g.matrix.mul(&d.eta.matrix), || nat_ce(&c.x, &d.x, &g));
                let lg = r.j_lower_star_map_with(&g, &c.jlower, &d.jlower)?;
                let lhs = r.j_star_map(&lg)?.matrix.mul(&d.kappa.matrix);
                nat_kappa.record(lhs == c.kappa.matrix.mul(&g.matrix), || nat_ce(&c.x, &d.x, &g));
            }
            let dst = hom_space(&c.jshriek.module, &d.jshriek.module)?;
            let res = transfer_rank(&hs, &dst, |g| {
                let g = ModuleMap::from_parts(c.x.clone(), d.x.clone(), g.clone());
                Ok(r.j_shriek_map_with(&g, &c.jshriek, &d.jshriek).matrix)
            })?;
            ff_js.record(res.0 == res.1 && res.0 == res.2, || adj_ce(&c.x, &d.x, res));
            let dst = hom_space(&c.jlower.module, &d.jlower.module)?;
            let res = transfer_rank(&hs, &dst, |g| {
                let g = ModuleMap::from_parts(c.x.clone(), d.x.clone(), g.clone());
                Ok(r.j_lower_star_map_with(&g, &c.jlower, &d.jlower)?.matrix)
            })?;
            ff_jl.record(res.0 == res.1 && res.0 == res.2, || adj_ce(&c.x, &d.x, res));
        }
    }
    let mut ff_i = Check::new("i_* is fully faithful", ff_anchor);
    for n in bmods {
        for n2 in bmods {
            let (h1, h2) = (hom_dim(n, n2)?, hom_dim(&r.i_lower_star(n)?, &r.i_lower_star(n2)?)?);
            ff_i.record(h1 == h2, || json!({"source": module_json(n), "target": module_json(n2), "hom_b": h1, "hom_a": h2}));
        }
    }

    let mut im_ker = Check::new(
        "Im i_* = Ker j^*",
        "the essential image of i_* is the kernel of j^*",
    );
    for n in bmods {
        let jn = r.j_star(&r.i_lower_star(n)?)?;
        im_ker.record(jn.dim() == 0, || json!({"direction": "j^* i_* N = 0", "module": module_json(n)}));
    }
    for a in &ad {
        let killed = killed_by(&a.m, &r.ideal);
        let in_kernel = a.jm.dim() == 0;
        let mut ok = killed == in_kernel;
        if in_kernel && killed {
            let n = descend_to(&r.quotient, &a.m)?;
            ok &= r.i_lower_star(&n)? == a.m && cat_b.identify(&n)?.is_some();
        }
        im_ker.record(ok, || json!({"direction": "j^* M = 0 iff M = i_* N", "module": module_json(&a.m)}));
    }

    let comp_anchor = "j^*j_! ≅ id ≅ j^*j_*, i^*i_* ≅ id ≅ i^!i_*, and i^*j_! = 0 = i^!j_*";
    let mut comp_jj = Check::new("j^*j_! ≅ id and j^*j_* ≅ id via unit and counit", comp_anchor);
    let mut comp_ii = Check::new("i^*i_* ≅ id and i^!i_* ≅ id", comp_anchor);
    let mut comp_zero = Check::new("i^*j_! = 0 and i^!j_* = 0", comp_anchor);
    for c in &cd {
        comp_jj.record(c.eta.is_isomorphism() && c.kappa.is_isomorphism(), || json!({"module": module_json(&c.x)}));
        let z1 = r.i_upper_star(&c.jshriek.module)?.dim();
        let z2 = r.i_shriek(&c.jlower.module)?.dim();
        comp_zero.record(z1 == 0 && z2 == 0, || json!({"module": module_json(&c.x), "i_upper_j_shriek": z1, "i_shriek_j_lower": z2}));
    }
    for n in bmods {
        let inn = r.i_lower_star(n)?;
        let ok = r.i_upper_star(&inn)? == *n && r.i_shriek(&inn)? == *n && r.unit_upper(&inn)?.is_isomorphism() && r.counit_shriek_i(&inn)?.is_isomorphism();
        comp_ii.record(ok, || json!({"module": module_json(n)}));
    }

    let seq_anchor = "the counit of j_! ⊣ j^* and the unit of j^* ⊣ j_* fit in four-term exact sequences whose outer terms lie in the image of i_*";
    let mut seq_eps = Check::new("0 → i_*(K) → j_!j^*M → M → i_*i^*M → 0 is exact", seq_anchor);
    let mut seq_nu = Check::new("0 → i_*i^!M → M → j_*j^*M → i_*(C) → 0 is exact", seq_anchor);
    for a in &ad {
        let mi = trace_ideal_part(&a.m, &r.ideal)?;
        let ker = kernel(&a.eps).to_module();
        let img = Subspace::span_matrix(&a.eps.matrix);
        let ok = img == mi.space && killed_by(&ker, &r.ideal) && a.pi.is_surjective() && kernel(&a.pi).space == img;
        seq_eps.record(ok, || json!({"module": module_json(&a.m), "counit": matrix_json(&a.eps.matrix)}));
        let ann = annihilated_part(&a.m, &r.ideal)?;
        let (coker, _) = quotient(&a.nu.target, &SubmoduleBasis { ambient: a.nu.target.clone(), space: Subspace::span_matrix(&a.nu.matrix) });
        let ok = kernel(&a.nu).space == ann.space
            && Subspace::span_matrix(&a.iota.matrix) == ann.space
            && a.iota.is_injective()
            && killed_by(&coker, &r.ideal);
        seq_nu.record(ok, || json!({"module": module_json(&a.m), "unit": matrix_json(&a.nu.matrix)}));
    }

    Ok(vec![
        adj_js, adj_jl, adj_iu, adj_is, maps_ok, nat_eps, nat_nu, nat_pi, nat_iota, nat_eta, nat_kappa, ff_js, ff_jl, ff_i,
        im_ker, comp_jj, comp_ii, comp_zero, seq_eps, seq_nu,
    ])
}

/// Naturality of ε, ν and the i-side unit and counit on random linear
/// combinations of maps between random catalog modules.
pub fn naturality_spot_checks<R: rand::Rng>(r: &Recollement, cat_a: &Catalog, rng: &mut R, samples: usize) -> Result<Check> {
    let mut c = Check::new(
        "naturality squares on sampled maps",
        "the adjunction bijections are natural",
    );
    let mods = cat_a.modules();
    if mods.is_empty() {
        return Ok(c);
    }
    let p = r.base.p();
    for _ in 0..samples {
        let (i, j) = (rng.random_range(0..mods.len()), rng.random_range(0..mods.len()));
        let (a, b) = (a_data(r, &mods[i])?, a_data(r, &mods[j])?);
        let hs = hom_space(&a.m, &b.m)?;
        let coeffs: Vec<u32> = (0..hs.dim()).map(|_| rng.random_range(0..p)).collect();
        let g = ModuleMap::from_parts(a.m.clone(), b.m.clone(), if hs.dim() == 0 {
            a.m.zero_map_to(&b.m).matrix
        } else {
            hs.combination(&coeffs)
        });
        let jg = r.j_star_map(&g)?;
        let ok = r.j_shriek_map_with(&jg, &a.jshriek_jm, &b.jshriek_jm).matrix.mul(&b.eps.matrix)
            == a.eps.matrix.mul(&g.matrix)
            && a.nu.matrix.mul(&r.j_lower_star_map_with(&jg, &a.jlower_jm, &b.jlower_jm)?.matrix)
                == g.matrix.mul(&b.nu.matrix)
            && a.pi.matrix.mul(&r.i_upper_star_map(&g)?.matrix) == g.matrix.mul(&b.pi.matrix)
            && r.i_shriek_map(&g)?.matrix.mul(&b.iota.matrix) == a.iota.matrix.mul(&g.matrix);
        c.record(ok, || nat_ce(&a.m, &b.m, &g));
    }
    Ok(c)
}

/// A basis of the Hom space, or the zero map when the space is zero.
fn maps_or_zero(h: &HomSpace) -> Vec<ModuleMap> {
    if h.dim() == 0 {
        vec![h.source.zero_map_to(&h.target)]
    } else {
        h.maps()
    }
}

fn adj_ce(m: &Module, x: &Module, res: (usize, usize, usize)) -> serde_json::Value {
    json!({"first": module_json(m), "second": module_json(x), "rank": res.0, "dim_source": res.1, "dim_target": res.2})
}

fn nat_ce(m: &Module, n: &Module, g: &ModuleMap) -> serde_json::Value {
    json!({"source": module_json(m), "target": module_json(n), "map": matrix_json(&g.matrix)})
}

/// dim Hom_A(M·I, N/N[I]): the Hom space of the quotient category by the
/// modules killed by I, evaluated at the terminal stage of the colimit.
pub fn gabriel_hom_dim(m: &Module, n: &Module, i: &Ideal) -> Result<usize> {
    let (mi, nn) = gabriel_terminal(m, n, i)?;
    hom_dim(&mi.to_module(), &nn)
}

fn gabriel_terminal(m: &Module, n: &Module, i: &Ideal) -> Result<(SubmoduleBasis, Module)> {
    if !is_idempotent_ideal(i) {
        let sq = crate::ideal::ideal_product(i, i)?;
        return Err(Error::NotIdempotentIdeal {
            quotient_dim: i.dim() - sq.dim(),
        });
    }
    let mi = trace_ideal_part(m, i)?;
    let ni = annihilated_part(n, i)?;
    Ok((mi, quotient(n, &ni).0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabrielDebug {
    pub terminal_dim: usize,
    /// Number of immediate predecessor stages examined.
    pub predecessors: usize,
    /// Every immediate predecessor stage maps injectively to the terminal stage.
    pub predecessors_injective: bool,
    /// The next iterate of the stage operators maps isomorphically.
    pub next_iterate_isomorphic: bool,
}

/// Examines the stages adjacent to the terminal stage (M·I, N[I]) of the
/// directed system (M', N') ↦ Hom(M', N/N').
pub fn gabriel_debug_check(m: &Module, n: &Module, i: &Ideal) -> Result<GabrielDebug> {
    let f = m.field();
    let (mi, nq) = gabriel_terminal(m, n, i)?;
    let ni = annihilated_part(n, i)?;
    let terminal = hom_space(&mi.to_module(), &nq)?;

    // Transition Hom(M', N/N') → Hom(M·I, N/N[I]): restrict along M·I ⊆ M', project N/N' → N/N[I].
    let transition = |mp: &SubmoduleBasis, np: &SubmoduleBasis| -> Result<bool> {
        let (nq_p, _) = quotient(n, np);
        let src = hom_space(&mp.to_module(), &nq_p)?;
        let incl: Vec<Vec<u32>> = mi
            .space
            .basis_vecs()
            .iter()
            .map(|v| coords_or_bug(&mp.space, v, "M·I inside M'"))
            .collect::<Result<_>>()?;
        let incl = Matrix::from_rows(f, mp.dim(), &incl);
        let proj = quotient_map(&n.identity(), np, &ni)?.matrix;
        let (rank, ds, _) = transfer_rank(&src, &terminal, |g| Ok(incl.mul(g).mul(&proj)))?;
        Ok(rank == ds)
    };

    let mut predecessors = 0;
    let mut injective = true;
    for s in all_submodules(m)? {
        if s.dim() == mi.dim() + 1 && s.space.contains_subspace(&mi.space) {
            predecessors += 1;
            injective &= transition(&s, &ni)?;
        }
    }
    let ni_mod = ni.to_module();
    for s in all_submodules(&ni_mod)? {
        if s.dim() + 1 == ni.dim() {
            let lifted = SubmoduleBasis {
                ambient: n.clone(),
                space: Subspace::span_matrix(&s.space.basis().mul(ni.space.basis())),
            };
            predecessors += 1;
            injective &= transition(&mi, &lifted)?;
        }
    }

    // Next iterate: (M·I)·I and the preimage of (N/N[I])[I] in N.
    let mii = trace_ideal_part(&mi.to_module(), i)?;
    let mii_space = Subspace::span_matrix(&mii.space.basis().mul(mi.space.basis()));
    let (nq_mod, proj) = quotient(n, &ni);
    let inner = annihilated_part(&nq_mod, i)?;
    let pre = {
        let lifted: Vec<Vec<u32>> = inner
            .space
            .basis_vecs()
            .iter()
            .map(|v| {
                // any preimage of v under the projection
                proj.matrix.solve_left(v).expect("projection is surjective")
            })
            .collect();
        Subspace::span(f, n.dim(), &lifted).sum(&ni.space)
    };
    let next_m = SubmoduleBasis {
        ambient: m.clone(),
        space: mii_space,
    };
    let next_n = SubmoduleBasis {
        ambient: n.clone(),
        space: pre,
    };
    let next_iso = if next_m.space == mi.space && next_n.space == ni.space {
        true
    } else {
        // The iterate differs: compare by the transition map in the other direction.
        let (nn, _) = quotient(n, &next_n);
        hom_dim(&next_m.to_module(), &nn)? == terminal.dim()
    };
    Ok(GabrielDebug {
        terminal_dim: terminal.dim(),
        predecessors,
        predecessors_injective: injective,
        next_iterate_isomorphic: next_iso,
    })
}

/// Quotient-category Hom dimensions against Hom over the corner, plus the
/// stage diagnostics.
pub fn check_quotient_equivalence(r: &Recollement, cat_a: &Catalog) -> Result<Vec<Check>> {
    let mut eq = Check::new(
        "Hom in A/Y equals Hom over eAe",
        "the quotient category by the modules killed by AeA is equivalent to Mod eAe",
    );
    let mut dbg = Check::new(
        "colimit stages adjacent to the terminal stage",
        "the Hom colimit over stages (M', N') stabilizes at (M·I, N[I])",
    );
    let jms: Vec<Module> = cat_a.modules().iter().map(|m| r.j_star(m)).collect::<Result<_>>()?;
    for (m, jm) in cat_a.modules().iter().zip(&jms) {
        for (n, jn) in cat_a.modules().iter().zip(&jms) {
            let g = gabriel_hom_dim(m, n, &r.ideal)?;
            let c = hom_dim(jm, jn)?;
            eq.record(g == c, || json!({"first": module_json(m), "second": module_json(n), "gabriel": g, "corner": c}));
            let d = gabriel_debug_check(m, n, &r.ideal)?;
            dbg.record(d.predecessors_injective && d.next_iterate_isomorphic && d.terminal_dim == g, || {
                json!({"first": module_json(m), "second": module_json(n), "predecessors": d.predecessors,
                    "predecessors_injective": d.predecessors_injective, "next_iterate_isomorphic": d.next_iterate_isomorphic})
            });
        }
    }
    Ok(vec![eq, dbg])
}

/// Images of j_* and j_! and the intersection of the kernels of i^* and i^!,
/// with Ext-orthogonality to Y reduced to the simple modules killed by I.
pub fn image_identification_checks(r: &Recollement, cat_a: &Catalog) -> Result<Vec<Check>> {
    let i = &r.ideal;
    let mut simples = Vec::new();
    for m in cat_a.modules() {
        if killed_by(m, i) && is_simple(m)? {
            simples.push(m.clone());
        }
    }
    let mut giraud = Check::new(
        "M ≅ j_*j^*M iff M[I] = 0 and Ext¹(S, M) = 0 for simple S in Y",
        "the image of j_* is the Hom- and Ext-perpendicular category of Y",
    );
    let mut cogiraud = Check::new(
        "M ≅ j_!j^*M iff M·I = M and Ext¹(M, S) = 0 for simple S in Y",
        "the image of j_! is the left Hom- and Ext-perpendicular category of Y",
    );
    let mut middle = Check::new(
        "Ker i^* ∩ Ker i^! is equivalent to its image under j^*",
        "j^* is fully faithful on modules with M·I = M and M[I] = 0",
    );
    let mut both = Vec::new();
    for m in cat_a.modules() {
        let mi = trace_ideal_part(m, i)?;
        let ann = annihilated_part(m, i)?;
        let mut ext_into = true;
        let mut ext_from = true;
        for s in &simples {
            ext_into &= ext1(s, m)? == 0;
            ext_from &= ext1(m, s)? == 0;
        }
        let in_giraud = ann.dim() == 0 && ext_into;
        let is_unit_iso = r.unit_lower(m)?.is_isomorphism();
        giraud.record(in_giraud == is_unit_iso, || json!({"module": module_json(m), "predicted": in_giraud, "unit_iso": is_unit_iso}));
        let in_cogiraud = mi.dim() == m.dim() && ext_from;
        let is_counit_iso = r.counit_shriek(m)?.is_isomorphism();
        cogiraud.record(in_cogiraud == is_counit_iso, || {
            json!({"module": module_json(m), "predicted": in_cogiraud, "counit_iso": is_counit_iso})
        });
        if mi.dim() == m.dim() && ann.dim() == 0 {
            both.push((m.clone(), r.j_star(m)?));
        }
    }
    for (m, jm) in &both {
        for (n, jn) in &both {
            let (ha, hc) = (hom_dim(m, n)?, hom_dim(jm, jn)?);
            middle.record(ha == hc, || json!({"first": module_json(m), "second": module_json(n), "hom_a": ha, "hom_corner": hc}));
        }
    }
    Ok(vec![giraud, cogiraud, middle])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::catalog::module_catalog;

    fn t2(e: &str) -> Recollement {
        let a = Arc::new(builtins::load("T2_F2").unwrap());
        let e = a.parse_element(e).unwrap();
        recollement_from_idempotent(&a, &e).unwrap()
    }

    #[test]
    fn t2_e11_shapes() {
        let r = t2("e11");
        assert_eq!(r.corner_algebra().dim(), 1);
        assert_eq!(r.quotient_algebra().dim(), 1);
        assert_eq!(r.ideal.dim(), 2);
        let reg_c = Module::regular(r.corner_algebra());
        assert_eq!(r.j_shriek(&reg_c).unwrap().dim(), 2);
        assert_eq!(r.j_lower_star(&reg_c).unwrap().dim(), 1);
        let a = r.base.clone();
        let p1 = crate::module::submodule_generated(&Module::regular(&a), &[a.parse_element("e11").unwrap().0]).unwrap().to_module();
        assert_eq!(r.j_star(&p1).unwrap().dim(), 1);
        assert_eq!(r.i_shriek(&p1).unwrap().dim(), 1);
        assert_eq!(r.i_upper_star(&p1).unwrap().dim(), 0);
        assert!(matches!(r.j_shriek(&p1), Err(Error::WrongCategory { .. })));
    }

    #[test]
    fn degenerate_idempotents() {
        let r = t2("1");
        assert_eq!(r.quotient_algebra().dim(), 0);
        let r = t2("0");
        assert_eq!(r.corner_algebra().dim(), 0);
    }

    #[test]
    fn t2_axioms_hold() {
        for e in ["e11", "e22", "0", "1", "e11+e12"] {
            let r = t2(e);
            let ca = module_catalog(&r.base, 2).unwrap();
            let cc = module_catalog(r.corner_algebra(), 2).unwrap();
            let cb = module_catalog(r.quotient_algebra(), 2).unwrap();
            let mut checks = verify_recollement(&r, &ca, &cc, &cb).unwrap();
            checks.extend(check_quotient_equivalence(&r, &ca).unwrap());
            checks.extend(image_identification_checks(&r, &ca).unwrap());
            for c in checks {
                assert!(c.passed, "e={e}: {} {:?}", c.name, c.counterexample);
            }
        }
    }

    #[test]
    fn gabriel_p1_p1() {
        let r = t2("e11");
        let a = r.base.clone();
        let p1 = crate::module::submodule_generated(&Module::regular(&a), &[a.parse_element("e11").unwrap().0]).unwrap().to_module();
        assert_eq!(gabriel_hom_dim(&p1, &p1, &r.ideal).unwrap(), 1);
        assert_eq!(gabriel_hom_dim(&p1, &p1, &Ideal::whole(&a)).unwrap(), hom_dim(&p1, &p1).unwrap());
        let rad = Ideal::radical(&a).unwrap();
        assert!(matches!(gabriel_hom_dim(&p1, &p1, &rad), Err(Error::NotIdempotentIdeal { quotient_dim: 1 })));
    }
}
