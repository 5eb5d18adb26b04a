use proptest::prelude::*;

use simplicial_core::cheeger::{
    cheeger_estimate_check, cheeger_h1, cheeger_h2, cheeger_h3, cheeger_h4, derived_identity_violations,
    is_disorientable, CheegerOptions,
};
use simplicial_core::flows::{cancel_pair, floer_boundary, franks_replacement, ObjectKind};
use simplicial_core::generate::{random_complex, random_floer_complex, random_graph, random_signed_graph};
use simplicial_core::morse::{forman_boundary, morse_inequalities, random_morse_function, validate_morse};
use simplicial_core::plmorse::compare_discrete_pl;
use simplicial_core::sampling::{graph_cheeger, sweep_cut, WeightedGraph};
use simplicial_core::signed::signed_spectrum;
use simplicial_core::spectral::{laplacian_spectrum, InnerProduct, Variant};
use simplicial_core::SimplicialComplex;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>()) {
        let c = random_complex(7, 3, seed);
        for k in 0..c.dim().saturating_sub(1) {
            prop_assert!(c.coboundary_matrix(k + 1).mul(&c.coboundary_matrix(k)).is_zero());
        }
    }

    #[test]
    fn harmonic_dimension_is_betti(seed in any::<u64>()) {
        let c = random_complex(7, 3, seed);
        let betti = c.betti_numbers();
        let ips = InnerProduct::stored_all(&c);
        for k in 0..=c.dim() {
            let spec = laplacian_spectrum(&c, k, Variant::Full, &ips).unwrap();
            prop_assert_eq!(spec.zero_multiplicity, betti[k]);
        }
    }

    #[test]
    fn switching_preserves_spectrum(seed in any::<u64>(), set in proptest::collection::vec(0usize..6, 0..6)) {
        let g = random_signed_graph(6, 0.6, true, seed);
        prop_assume!(g.degrees().iter().all(|d| *d > 0.into()));
        let a = signed_spectrum(&g).unwrap().eigenvalues;
        let b = signed_spectrum(&g.switch(&set)).unwrap().eigenvalues;
        prop_assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
    }

    #[test]
    fn derived_graph_identity(seed in any::<u64>()) {
        let c = random_complex(6, 3, seed);
        for k in 0..c.dim() {
            prop_assert!(derived_identity_violations(&c, k).unwrap().is_empty());
        }
    }

    #[test]
    fn forman_complex(seed in any::<u64>()) {
        let c = random_complex(7, 3, seed);
        let data = validate_morse(&c, random_morse_function(&c, seed)).unwrap();
        let mc = forman_boundary(&data);
        prop_assert_eq!(mc.squares_to_zero(), (true, true));
        prop_assert_eq!(mc.homology(), c.betti_numbers());
        prop_assert!(morse_inequalities(&data).holds());
    }

    #[test]
    fn floer_homology_invariance(seed in any::<u64>()) {
        let c = random_floer_complex(seed);
        let h = floer_boundary(&c).unwrap().homology();
        let trim = |v: Vec<usize>| { let mut v = v; while v.last() == Some(&0) { v.pop(); } v };
        for o in c.objects().iter().filter(|o| o.kind != ObjectKind::Point) {
            if let Ok(r) = franks_replacement(&c, &o.name, "new_upper", "new_lower") {
                prop_assert_eq!(trim(floer_boundary(&r).unwrap().homology()), trim(h.clone()));
            }
        }
        let pairs: Vec<(String, String)> = c.connections().filter(|(_, _, n)| *n == 1).map(|(a, b, _)| (a.to_string(), b.to_string())).collect();
        for (a, b) in pairs {
            let kinds = |x: &str| c.objects().iter().find(|o| o.name == x).unwrap().kind;
            if kinds(&a) != ObjectKind::Point || kinds(&b) != ObjectKind::Point { continue; }
            let r = cancel_pair(&c, &a, &b).unwrap();
            prop_assert_eq!(trim(floer_boundary(&r).unwrap().homology()), trim(h.clone()));
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn pl_and_discrete_agree(seed in any::<u64>()) {
        let c = random_complex(5, 2, seed);
        let data = validate_morse(&c, random_morse_function(&c, seed)).unwrap();
        prop_assert!(compare_discrete_pl(&data).unwrap().agree());
    }

    #[test]
    fn disorientability_verdicts_agree(seed in any::<u64>()) {
        let c = random_complex(5, 2, seed);
        let d = is_disorientable(&c).unwrap();
        if d.pure {
            prop_assert_eq!(d.disorientable, d.spectral_verdict);
        }
    }

    #[test]
    fn sweep_bounds_exhaustive(seed in any::<u64>()) {
        let g = WeightedGraph::from_skeleton(&random_graph(8, 0.5, true, seed));
        let (h, _) = graph_cheeger(&g).unwrap();
        let f: Vec<f64> = (0..8).map(|i| ((seed >> i) & 7) as f64).collect();
        prop_assert!(sweep_cut(&g, &f).0 >= h - 1e-12);
    }
}

fn acyclic_level(c: &SimplicialComplex, k: usize) -> bool {
    c.reduced_betti(k) == 0 && c.degrees(k).iter().all(|d| *d > 0) && c.count(k) <= 8
}

#[test]
fn cheeger_constants_coincide() {
    let opts = CheegerOptions::default();
    let mut checked = 0;
    for seed in 0..200 {
        let c = random_complex(5, 2, seed);
        for k in 0..c.dim() {
            if !acyclic_level(&c, k) {
                continue;
            }
            let h1 = cheeger_h1(&c, k, &opts).unwrap().value;
            assert_eq!(h1, cheeger_h2(&c, k, &opts).unwrap().value, "seed {seed} k {k}");
            assert_eq!(h1, cheeger_h4(&c, k, &opts).unwrap().value, "seed {seed} k {k}");
            let h3 = cheeger_h3(&c, k).unwrap().value;
            assert!((h3 - *h1.numer() as f64 / *h1.denom() as f64).abs() <= 1e-6, "seed {seed} k {k}");
            assert!(cheeger_estimate_check(&c, k, &opts).unwrap().holds);
            checked += 1;
        }
    }
    assert!(checked >= 20);
}
