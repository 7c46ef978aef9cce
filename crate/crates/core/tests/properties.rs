use proptest::prelude::*;

use octoma::herm2::{HermMatrix2, HermQ, OctVector2};
use octoma::octonion::{parse_octonion, OctQ, Octonion};
use octoma::poly::{parse_poly, Mono, Poly16, NVARS};
use octoma::polycalc::{closed_current_residual, format_herm_poly, hess_oct, herm_det, ma_det, parse_herm_poly};
use octoma::scalar::{rat, Rational};
use octoma::syzygy::{format_modvecs, parse_modvecs, ModVec};
use octoma::trig::TrigPoly;

fn rational() -> impl Strategy<Value = Rational> {
    (-100i64..=100, 1i64..=100).prop_map(|(n, d)| rat(n, d))
}

fn oct() -> impl Strategy<Value = OctQ> {
    prop::array::uniform8(rational()).prop_map(Octonion::new)
}

fn herm() -> impl Strategy<Value = HermQ> {
    (rational(), rational(), oct()).prop_map(|(a, b, q)| HermMatrix2::new(a, b, q))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly16> {
    prop::collection::vec((prop::collection::vec(0..NVARS, 0..=max_deg), -20i64..=20, 1i64..=6), 0..6).prop_map(|terms| {
        let mut p = Poly16::zero();
        for (vars, n, d) in terms {
            let mut m = Mono::one();
            for v in vars {
                m.0[v] += 1;
            }
            p.add_term(m, rat(n, d));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_is_multiplicative(a in oct(), b in oct()) {
        prop_assert_eq!(a.mul(&b).norm_sq(), a.norm_sq() * b.norm_sq());
    }

    #[test]
    fn algebra_is_alternative(a in oct(), b in oct()) {
        prop_assert!(Octonion::associator(&a, &a, &b).is_zero());
        prop_assert!(Octonion::associator(&a, &b, &b).is_zero());
        prop_assert!(Octonion::associator(&a, &b, &a).is_zero());
    }

    #[test]
    fn octonion_text_round_trip(a in oct()) {
        prop_assert_eq!(parse_octonion(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn det_is_the_diagonal_of_the_mixed_det(a in herm(), b in herm()) {
        prop_assert_eq!(a.mixed_det(&a), a.det());
        prop_assert_eq!(a.mixed_det(&b), b.mixed_det(&a));
        let sum = a.add(&b);
        prop_assert_eq!(sum.det(), a.det() + b.det() + rat(2, 1) * a.mixed_det(&b));
    }

    #[test]
    fn rank_one_is_degenerate(z in (oct(), oct())) {
        let z = OctVector2::new(z.0, z.1);
        let r = HermMatrix2::rank_one(&z);
        prop_assert!(r.det() == rat(0, 1));
        let n = z.norm_sq();
        prop_assert_eq!(r.quad(&z), &n * &n);
    }

    #[test]
    fn poly_text_round_trip(p in poly(3)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn herm_poly_text_round_trip(p in poly(3)) {
        let h = hess_oct(&p);
        prop_assert_eq!(parse_herm_poly(&format_herm_poly(&h)).unwrap(), h);
    }

    #[test]
    fn hessians_are_closed_currents(p in poly(4)) {
        let (r1, r2) = closed_current_residual(&hess_oct(&p));
        prop_assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn ma_det_is_det_of_hessian(p in poly(3)) {
        prop_assert_eq!(ma_det(&p), herm_det(&hess_oct(&p)));
    }

    #[test]
    fn modvec_text_round_trip(v in prop::collection::vec(prop::collection::vec(poly(2), 3), 1..4)) {
        let vs: Vec<ModVec> = v.into_iter().map(ModVec).collect();
        prop_assert_eq!(parse_modvecs(&format_modvecs(&vs)).unwrap(), vs);
    }

    #[test]
    fn trig_poly_json_round_trip(modes in prop::collection::vec((prop::array::uniform16(-3i32..=3), -1.0f64..1.0, -1.0f64..1.0), 0..6)) {
        let mut t = TrigPoly::zero();
        for (k, c, s) in modes {
            if k.iter().any(|&x| x != 0) {
                t.add_mode(&k, c, s);
            }
        }
        let back: TrigPoly = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert!(back.max_coeff_diff(&t) == 0.0);
    }
}
