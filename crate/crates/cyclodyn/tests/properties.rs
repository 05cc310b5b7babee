use cyclodyn::dto::{self, Certificate};
use cyclodyn::verify::check;
use cyclodyn_core::dynamics::{detect_pi, PolySystem};
use cyclodyn_core::{CycloNum, Poly};
use proptest::prelude::*;

fn int_system() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, 3..6), 1..4)
}

fn roundtrip(c: &Certificate) -> Certificate {
    serde_json::from_str(&serde_json::to_string(c).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn system_json_round_trips(cs in int_system()) {
        let polys: Vec<Poly> = cs.iter().map(|c| Poly::from_ints(c)).collect();
        let Ok(sys) = PolySystem::new(polys) else { return Ok(()) };
        let back = dto::system_from_strings(&dto::system(&sys), "system").unwrap();
        prop_assert_eq!(back.generators(), sys.generators());
    }

    #[test]
    fn loxton_certificates_check(exps in prop::collection::vec(0u64..30, 1..4), shift in 1i64..3) {
        let target = exps.iter().fold(CycloNum::zero(), |acc, &e| &acc + &CycloNum::zeta(30, e as i64));
        let cert = Certificate::Loxton {
            target: dto::elem(&target),
            order_bound: 30,
            exponents: exps.clone(),
            coefficients: vec!["1".into(); exps.len()],
        };
        prop_assert!(check(&roundtrip(&cert)).unwrap());
        let wrong = Certificate::Loxton {
            target: dto::elem(&(&target + &CycloNum::from_int(shift))),
            order_bound: 30,
            exponents: exps.clone(),
            coefficients: vec!["1".into(); exps.len()],
        };
        prop_assert!(!check(&wrong).unwrap());
    }

    #[test]
    fn squaring_collisions_check(n in 1u64..=24, k in 0i64..24) {
        let sys = PolySystem::new(vec![Poly::from_ints(&[0, 0, 1])]).unwrap();
        let z = CycloNum::zeta(n, k);
        let c = detect_pi(&sys, &z, 5, 24).expect("roots of unity are preperiodic under squaring");
        prop_assert!(check(&roundtrip(&Certificate::collision(&sys, &z, &c))).unwrap());
    }
}
