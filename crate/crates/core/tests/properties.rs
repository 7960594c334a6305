use std::sync::Arc;

use proptest::prelude::*;
use recollement::builtins;
use recollement::catalog::module_catalog;
use recollement::ideal::{enumerate_ideals, ideal_product};
use recollement::module::{ext1, hom_dim, tensor_over};
use recollement::ttf::extension_space;
use recollement::{recollement_from_idempotent, Algebra, Element, Fp, Subspace};

fn algebra(k: usize) -> Arc<Algebra> {
    Arc::new(builtins::load(builtins::NAMES[k % builtins::NAMES.len()]).unwrap())
}

fn element(a: &Algebra, seed: &[u32]) -> Element {
    Element((0..a.dim()).map(|i| seed[i % seed.len()] % a.p()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative_and_unital(k in 0usize..7, x in prop::collection::vec(0u32..2, 1..7),
        y in prop::collection::vec(0u32..2, 1..7), z in prop::collection::vec(0u32..2, 1..7)) {
        let a = algebra(k);
        let (x, y, z) = (element(&a, &x), element(&a, &y), element(&a, &z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(a.unit(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, a.unit()), x);
    }

    #[test]
    fn subspace_dimensions(n in 1usize..6, vs in prop::collection::vec(prop::collection::vec(0u32..3, 6), 0..5),
        ws in prop::collection::vec(prop::collection::vec(0u32..3, 6), 0..5)) {
        let f = Fp::new(3).unwrap();
        let cut = |v: &Vec<Vec<u32>>| v.iter().map(|x| x[..n].to_vec()).collect::<Vec<_>>();
        let u = Subspace::span(f, n, &cut(&vs));
        let w = Subspace::span(f, n, &cut(&ws));
        prop_assert_eq!(u.sum(&w).dim() + u.intersection(&w).dim(), u.dim() + w.dim());
        prop_assert!(u.sum(&w).contains_subspace(&u));
        prop_assert!(u.contains_subspace(&u.intersection(&w)));
        // RREF storage makes spans canonical.
        let mut rev = cut(&vs);
        rev.reverse();
        prop_assert_eq!(Subspace::span(f, n, &rev), u);
    }

    #[test]
    fn ideal_product_is_associative(k in 0usize..7, i in 0usize..64, j in 0usize..64, l in 0usize..64) {
        let a = algebra(k);
        let ideals = enumerate_ideals(&a).unwrap();
        let (i, j, l) = (&ideals[i % ideals.len()], &ideals[j % ideals.len()], &ideals[l % ideals.len()]);
        let left = ideal_product(&ideal_product(i, j).unwrap(), l).unwrap();
        let right = ideal_product(i, &ideal_product(j, l).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_is_additive(k in 3usize..6, m in 0usize..64, n in 0usize..64, l in 0usize..64) {
        let a = algebra(k);
        let cat = module_catalog(&a, 2).unwrap();
        let (m, n, l) = (cat.get(m % cat.len()), cat.get(n % cat.len()), cat.get(l % cat.len()));
        let s = m.direct_sum(n);
        prop_assert_eq!(hom_dim(&s, l).unwrap(), hom_dim(m, l).unwrap() + hom_dim(n, l).unwrap());
        prop_assert_eq!(hom_dim(l, &s).unwrap(), hom_dim(l, m).unwrap() + hom_dim(l, n).unwrap());
        prop_assert_eq!(ext1(&s, l).unwrap(), ext1(m, l).unwrap() + ext1(n, l).unwrap());
    }

    #[test]
    fn adjunction_dimension_identities(k in 3usize..6, v in 0usize..8, m in 0usize..64, x in 0usize..64) {
        let a = algebra(k);
        let idems = a.vertex_subset_idempotents().unwrap();
        let r = recollement_from_idempotent(&a, &idems[v % idems.len()]).unwrap();
        let ca = module_catalog(&a, 2).unwrap();
        let cc = module_catalog(r.corner_algebra(), 2).unwrap();
        let (m, x) = (ca.get(m % ca.len()), cc.get(x % cc.len()));
        let jm = r.j_star(m).unwrap();
        prop_assert_eq!(hom_dim(&r.j_shriek(x).unwrap(), m).unwrap(), hom_dim(x, &jm).unwrap());
        prop_assert_eq!(hom_dim(m, &r.j_lower_star(x).unwrap()).unwrap(), hom_dim(&jm, x).unwrap());
        let im = r.i_upper_star(m).unwrap();
        let is = r.i_shriek(m).unwrap();
        let cb = module_catalog(r.quotient_algebra(), 2).unwrap();
        for n in cb.modules() {
            let inn = r.i_lower_star(n).unwrap();
            prop_assert_eq!(hom_dim(&im, n).unwrap(), hom_dim(m, &inn).unwrap());
            prop_assert_eq!(hom_dim(n, &is).unwrap(), hom_dim(&inn, m).unwrap());
        }
    }

    #[test]
    fn extensions_are_modules(k in 3usize..6, m in 0usize..64, n in 0usize..64, c in prop::collection::vec(0u32..2, 0..16)) {
        let a = algebra(k);
        let cat = module_catalog(&a, 2).unwrap();
        let (u, w) = (cat.get(m % cat.len()), cat.get(n % cat.len()));
        let ext = extension_space(u, w).unwrap();
        prop_assert_eq!(ext.ext_dim(), ext1(w, u).unwrap());
        let z = ext.cocycles.dim();
        let coeffs: Vec<u32> = (0..z).map(|i| c.get(i).copied().unwrap_or(0)).collect();
        let mid = ext.realize(&ext.cocycles.basis().apply(&coeffs));
        prop_assert!(mid.check_representation_law().is_ok());
        prop_assert_eq!(mid.dim(), u.dim() + w.dim());
        // Coboundaries give split extensions.
        let b = ext.coboundaries.dim();
        let coeffs: Vec<u32> = (0..b).map(|i| c.get(i).copied().unwrap_or(0)).collect();
        let split = ext.realize(&ext.coboundaries.basis().apply(&coeffs));
        prop_assert!(recollement::module::is_isomorphic(&split, &u.direct_sum(w)).unwrap());
    }

    #[test]
    fn regular_bimodule_is_tensor_unit(k in 0usize..7, m in 0usize..64) {
        let a = algebra(k);
        let cat = module_catalog(&a, 2).unwrap();
        let m = cat.get(m % cat.len());
        let t = tensor_over(m, &recollement::Bimodule::regular(&a)).unwrap();
        prop_assert_eq!(t.module.dim(), m.dim());
        prop_assert!(recollement::module::is_isomorphic(&t.module, m).unwrap());
    }
}
