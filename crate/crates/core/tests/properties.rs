use pauli_core::gf2::{extend_to_symplectic_basis, symplectic_product};
use pauli_core::lattice::phase_w;
use pauli_core::{GF2Vector, IsotropicSubspace, Outcome, Subspace};
use proptest::prelude::*;

const N: usize = 3;

fn vector() -> impl Strategy<Value = GF2Vector> {
    (0u64..1 << (2 * N)).prop_map(|b| GF2Vector::new(N, b).unwrap())
}

fn subspace() -> impl Strategy<Value = Subspace> {
    prop::collection::vec(vector(), 0..5).prop_map(|vs| Subspace::span(N, vs).unwrap())
}

/// Greedy isotropic span of the given vectors.
fn isotropic(vs: Vec<GF2Vector>) -> IsotropicSubspace {
    let mut keep: Vec<GF2Vector> = Vec::new();
    for v in vs {
        if keep.iter().all(|k| !symplectic_product(k, &v).unwrap()) {
            keep.push(v);
        }
    }
    IsotropicSubspace::span(N, keep).unwrap()
}

proptest! {
    #[test]
    fn form_is_alternating_and_bilinear(a in vector(), b in vector(), c in vector()) {
        prop_assert!(!symplectic_product(&a, &a).unwrap());
        prop_assert_eq!(symplectic_product(&a, &b).unwrap(), symplectic_product(&b, &a).unwrap());
        let ab = a.checked_add(&b).unwrap();
        prop_assert_eq!(symplectic_product(&ab, &c).unwrap(), symplectic_product(&a, &c).unwrap() ^ symplectic_product(&b, &c).unwrap());
    }

    #[test]
    fn dimension_formula(a in subspace(), b in subspace()) {
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert_eq!(a.perp().dim(), 2 * N - a.dim());
        prop_assert_eq!(a.perp().perp(), a);
    }

    #[test]
    fn isotropic_spans_sit_in_their_perp(vs in prop::collection::vec(vector(), 0..6)) {
        let s = isotropic(vs);
        prop_assert!(s.dim() <= N);
        prop_assert!(s.is_subspace_of(&s.perp()));
        let basis = extend_to_symplectic_basis(&s);
        prop_assert!(basis.validate().is_ok() && basis.is_complete());
    }

    #[test]
    fn phase_bit_is_symmetric(vs in prop::collection::vec(vector(), 1..4)) {
        let s = isotropic(vs);
        let elems: Vec<GF2Vector> = s.vectors().unwrap().collect();
        for x in &elems {
            for y in &elems {
                prop_assert_eq!(phase_w(x, y).unwrap(), phase_w(y, x).unwrap());
            }
        }
    }

    #[test]
    fn outcomes_obey_the_phase_rule(vs in prop::collection::vec(vector(), 1..4), values in 0u32..8) {
        let s = isotropic(vs);
        let o = Outcome::new(s.clone(), values & ((1 << s.dim()) - 1)).unwrap();
        let elems: Vec<GF2Vector> = s.vectors().unwrap().collect();
        for x in &elems {
            for y in &elems {
                let lhs = o.eval(&x.checked_add(y).unwrap()).unwrap();
                let rhs = phase_w(x, y).unwrap() ^ o.eval(x).unwrap() ^ o.eval(y).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn restrictions_are_consistent(vs in prop::collection::vec(vector(), 1..4), keep in 0usize..3, values in 0u32..8) {
        let s = isotropic(vs);
        let o = Outcome::new(s.clone(), values & ((1 << s.dim()) - 1)).unwrap();
        let t = IsotropicSubspace::span(N, s.basis().take(keep.min(s.dim()))).unwrap();
        let r = o.restrict(&t).unwrap();
        prop_assert!(o.consistent(&r).unwrap());
        for v in t.vectors().unwrap() {
            prop_assert_eq!(r.eval(&v).unwrap(), o.eval(&v).unwrap());
        }
    }
}
