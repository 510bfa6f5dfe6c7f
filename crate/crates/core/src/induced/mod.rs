//! The graded objects built from the quotients `V / O'_{n,m}(V)`: their dual
//! description, the degree-shifting operators `v[p]`, the induced module of an
//! `A_m(V)`-module and the maps into a weak module it is universal for.

pub mod diamond;
pub mod family;
pub mod module;
pub mod universal;

pub use diamond::{pieces_are_independent, vacuum_diamond, DiamondSpace};
pub use family::{single, FamilyElem, Graded, GradedQuotientFamily, YDiamond};
pub use module::{identity, induce, mat_mul, FiniteAmModule, InducedModule, Matrix, TensorAmbient};
pub use universal::{f_nm, UniversalMap};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GradedVector;
    use crate::voa::{weak_module_axiom_check, AxiomVerdict, Voa, ZeroTest};
    use crate::zhu::{dot_action, span_generators, SpanKind};

    #[test]
    fn vacuum_shifts_act_trivially() {
        let voa = Voa::free_boson(12);
        let fam = GradedQuotientFamily::new(&voa, 0, 2, 5, 5).unwrap();
        let one = voa.vacuum();
        for w in voa.keys_up_to(3) {
            let x = Graded {
                degree: 1,
                rep: GradedVector::basis(w),
            };
            assert_eq!(fam.vp_action(&one, 0, &x).unwrap().unwrap(), x);
            for p in [-1, 1] {
                let y = fam.vp_action(&one, p, &x).unwrap().unwrap();
                assert!(y.rep.is_zero());
            }
            assert!(fam.vp_action(&one, -2, &x).unwrap().is_none());
        }
    }

    #[test]
    fn vacuum_class_generates() {
        let voa = Voa::free_boson(12);
        let fam = GradedQuotientFamily::new(&voa, 0, 2, 6, 6).unwrap();
        let h = voa.h().unwrap();
        let start = Graded {
            degree: 0,
            rep: voa.vacuum(),
        };
        for n in 0..=2 {
            let img = fam.vp_action(&h, n, &start).unwrap().unwrap();
            assert_eq!(img.degree, n);
            assert_eq!(fam.zero_test(n, &(&img.rep - &h)).unwrap(), ZeroTest::Zero, "n={n}");
        }
    }

    #[test]
    fn commutator_for_omega() {
        let voa = Voa::free_boson(14);
        let fam = GradedQuotientFamily::new(&voa, 0, 3, 8, 6).unwrap();
        let yd = YDiamond { family: &fam };
        let om = voa.omega();
        for n in 0..=3 {
            for w in voa.keys_up_to(1) {
                let x = single(n, GradedVector::basis(w));
                for su in -2..=2i64 {
                    for sv in -2..=2i64 {
                        if n + su.max(sv).max(su + sv) > 3 {
                            continue;
                        }
                        let (p, q) = (1 - su, 1 - sv);
                        let r = weak_module_axiom_check(&yd, &voa, &om, &om, &x, p..=p, q..=q);
                        assert_eq!(r.verdict, AxiomVerdict::Pass, "{r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn diamond_computations_agree() {
        let voa = Voa::free_boson(14);
        for m in 0..=1 {
            let pieces: Vec<DiamondSpace> = (0..=2).map(|n| vacuum_diamond(&voa, m, n, 5, 6).unwrap()).collect();
            for p in &pieces {
                assert!(p.agree().unwrap(), "m={} n={}", p.m, p.n);
            }
            assert!(pieces_are_independent(&pieces).unwrap());
            // the weight n - m functionals survive
            assert!(pieces[1].dim() > 0);
        }
    }

    #[test]
    fn trivial_module_induces_a_line() {
        let voa = Voa::free_boson(14);
        let u = FiniteAmModule::trivial(&voa, 4);
        let (checked, bad) = u.check_relations(&voa).unwrap();
        assert!(bad.is_none() && checked > 0, "{bad:?}");
        let fam = GradedQuotientFamily::new(&voa, 0, 1, 5, 6).unwrap();
        let ind = induce(&fam, &u).unwrap();
        assert_eq!(ind.dim_upper_bound(0).unwrap(), 1);
        assert_eq!(ind.check_degree_m().unwrap(), None);
        assert!(ind.dim_upper_bound(1).unwrap() >= 1);
    }

    #[test]
    fn omega_one_module() {
        let voa = Voa::free_boson(14);
        let u = FiniteAmModule::from_omega(&voa, 1, 5, 5, 3).unwrap();
        assert_eq!(u.dim, 2);
        let (_, bad) = u.check_relations(&voa).unwrap();
        assert!(bad.is_none(), "{bad:?}");
        let a = u.action(&voa.omega()).unwrap();
        let b = mat_mul(&a, &identity(2));
        assert_eq!(a, b);
        let fam = GradedQuotientFamily::new(&voa, 1, 1, 5, 6).unwrap();
        let ind = induce(&fam, &u).unwrap();
        assert_eq!(ind.check_degree_m().unwrap(), None);
        assert_eq!(ind.dim_upper_bound(1).unwrap(), 2);
    }

    #[test]
    fn universal_map_identities() {
        let voa = Voa::free_boson(14);
        let one = voa.vacuum();
        let psi = UniversalMap::new(&voa, 0, vec![one.clone()], 6, 6).unwrap();
        assert!(UniversalMap::new(&voa, 0, vec![voa.h().unwrap()], 6, 6).is_err());
        for v in voa.keys_up_to(3) {
            let v = GradedVector::basis(v);
            assert_eq!(psi.f(&v, 0, 0).unwrap(), dot_action(&voa, &v, &one).unwrap());
            for n in 0..=3 {
                for u in voa.keys_up_to(2) {
                    let u = GradedVector::basis(u);
                    assert!(psi.left_defect(&u, &v, 0, n).unwrap().is_zero());
                    assert!(psi.balance_defect(&u, &v, 0, n).unwrap().is_zero());
                }
            }
        }
        for n in 0..=3 {
            let expected = if n == 0 { one.clone() } else { GradedVector::zero() };
            assert_eq!(psi.f(&one, 0, n).unwrap(), expected);
            for g in span_generators(&voa, SpanKind::OPrime { n, m: 0 }, 6).unwrap() {
                assert!(psi.f(&g.vector, 0, n).unwrap().is_zero(), "{}", g.label);
            }
        }
        let h = voa.h().unwrap();
        for k in -2..=2 {
            for n in 0..=2 {
                assert!(psi.intertwining_defect(&h, k, &one, 0, n).unwrap().is_zero());
            }
        }
    }
}
