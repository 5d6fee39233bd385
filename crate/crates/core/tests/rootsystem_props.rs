use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use qweyl::rootsystem::{classical_positive_root_count, Kind, RootSystem, Weight};
use qweyl::sweep::bounded_dominant_weights;

fn systems(max_rank: usize) -> Vec<Arc<RootSystem>> {
    RootSystem::all_types(max_rank)
        .into_iter()
        .map(|(k, n)| RootSystem::get(k, n).unwrap())
        .collect()
}

fn expected_coxeter(kind: Kind, n: i64) -> i64 {
    match (kind, n) {
        (Kind::A, _) => n + 1,
        (Kind::B | Kind::C, _) => 2 * n,
        (Kind::D, _) => 2 * n - 2,
        (Kind::E, 6) | (Kind::F, _) => 12,
        (Kind::E, 7) => 18,
        (Kind::E, _) => 30,
        (Kind::G, _) => 6,
    }
}

#[test]
fn root_counts_and_coxeter_numbers() {
    for rs in systems(12) {
        let n = rs.rank();
        assert_eq!(rs.positive_roots().len(), classical_positive_root_count(rs.kind(), n), "{}", rs.name());
        assert_eq!(rs.coxeter_number(), expected_coxeter(rs.kind(), n as i64), "{}", rs.name());
        // h = |Φ| / rank
        assert_eq!(rs.coxeter_number() as usize * n, 2 * rs.positive_roots().len(), "{}", rs.name());
    }
}

#[test]
fn symmetrized_cartan_is_symmetric() {
    for rs in systems(12) {
        let (a, d) = (rs.cartan(), rs.symmetrizers());
        for i in 0..rs.rank() {
            assert_eq!(a[i][i], 2);
            for j in 0..rs.rank() {
                assert!([0, -1, -2, -3, 2].contains(&a[i][j]));
                assert_eq!(d[i] * a[i][j], d[j] * a[j][i], "{} ({i},{j})", rs.name());
            }
        }
    }
}

#[test]
fn highest_short_root_dominates_short_roots() {
    for rs in systems(10) {
        let top = rs.highest_short_root().clone();
        assert!(top.is_dominant());
        for beta in rs.short_positive_roots() {
            assert!(rs.dominance_leq(&rs.root_to_weight(beta), &top), "{}", rs.name());
        }
    }
}

#[test]
fn minuscule_weights_are_minimal() {
    for rs in systems(6) {
        let box_weights = bounded_dominant_weights(rs.rank(), 2);
        for mu in rs.minuscule_weights() {
            for nu in &box_weights {
                if nu != mu {
                    assert!(!rs.dominance_leq(nu, mu), "{}: {nu} <= {mu}", rs.name());
                }
            }
        }
        // one minuscule weight per coset of the root lattice
        let minuscule = rs.minuscule_weights();
        for (k, a) in minuscule.iter().enumerate() {
            for b in &minuscule[k + 1..] {
                let diff = a - b;
                let integral = rs.weight_to_simple_coords(&diff).iter().all(|c| c.is_integer());
                assert!(!integral, "{}: {a} and {b} share a coset", rs.name());
            }
        }
        // and every non-minuscule dominant weight in the box has something dominant below it
        for lam in &box_weights {
            if !rs.is_minuscule(lam) {
                assert!(
                    box_weights.iter().any(|nu| nu != lam && rs.dominance_leq(nu, lam)),
                    "{}: {lam}",
                    rs.name()
                );
            }
        }
    }
}

#[test]
fn levi_cartan_matches_relabeling() {
    for rs in systems(8) {
        let n = rs.rank();
        for mask in 1u32..(1 << n) {
            let nodes: BTreeSet<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let levi = rs.levi_subsystem(&nodes).unwrap();
            let covered: BTreeSet<usize> = levi.components.iter().flat_map(|c| c.nodes.clone()).collect();
            assert_eq!(covered, nodes);
            for comp in &levi.components {
                let sub = comp.system.cartan();
                for (a, &i) in comp.nodes.iter().enumerate() {
                    for (b, &j) in comp.nodes.iter().enumerate() {
                        assert_eq!(sub[a][b], rs.cartan()[i][j], "{} {nodes:?}", rs.name());
                    }
                }
            }
        }
    }
}

#[test]
fn adjoint_dimension_counts_the_basis() {
    for rs in systems(12) {
        let dim = rs.weyl_dimension(rs.highest_short_root()).unwrap();
        let expected = 2 * rs.short_positive_roots().count() + rs.short_simple_nodes().len();
        assert_eq!(dim, expected.into(), "{}", rs.name());
    }
}

fn system_and_weight() -> impl Strategy<Value = (Arc<RootSystem>, Weight)> {
    let all = systems(8);
    (0..all.len()).prop_flat_map(move |k| {
        let rs = all[k].clone();
        prop::collection::vec(-6i64..=12, rs.rank()).prop_map(move |c| (rs.clone(), Weight::new(c)))
    })
}

proptest! {
    #[test]
    fn dot_reflection_is_an_involution((rs, lam) in system_and_weight(), ell in 1i64..=80) {
        let once = rs.dot_reflect_alpha0(ell, &lam);
        prop_assert_eq!(rs.dot_reflect_alpha0(ell, &once), lam);
    }

    #[test]
    fn dot_reflection_moves_along_alpha0((rs, lam) in system_and_weight(), ell in 1i64..=80) {
        let moved = &rs.dot_reflect_alpha0(ell, &lam) - &lam;
        let coords = rs.weight_to_simple_coords(&moved);
        let alpha0 = rs.highest_short_root_as_root().coords();
        // moved is an integer multiple of α₀
        let k = coords.iter().zip(alpha0).find(|(_, &a)| a != 0).map(|(c, &a)| *c / a).unwrap();
        prop_assert!(k.is_integer());
        for (c, &a) in coords.iter().zip(alpha0) {
            prop_assert_eq!(*c, k * a);
        }
    }

    #[test]
    fn dominance_is_reflexive_and_transitive((rs, lam) in system_and_weight(), pick in 0usize..120) {
        prop_assert!(rs.dominance_leq(&lam, &lam));
        let beta = &rs.positive_roots()[pick % rs.positive_roots().len()];
        let lower = &lam - &rs.root_to_weight(beta);
        let lowest = &lower - &rs.root_to_weight(&rs.positive_roots()[0]);
        prop_assert!(rs.dominance_leq(&lower, &lam));
        prop_assert!(rs.dominance_leq(&lowest, &lam));
        prop_assert!(!rs.dominance_leq(&lam, &lower));
    }
}
