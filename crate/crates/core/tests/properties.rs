use proptest::prelude::*;
use sensilab_core::measures::{
    degree, from_mobius, mobius, s, s0, s1, spectral_sensitivity, SensitivityGraph, SpectralOptions,
};
use sensilab_core::verify::{verify_edge_bound, verify_lemma_chain};
use sensilab_core::{SpectralMethod, TruthTable};

fn table(n: usize) -> impl Strategy<Value = TruthTable> {
    prop::collection::vec(any::<u64>(), (1usize << n).div_ceil(64))
        .prop_map(move |words| TruthTable::from_words(n, words).unwrap())
}

fn any_table() -> impl Strategy<Value = TruthTable> {
    (1usize..=9).prop_flat_map(table)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_methods_agree(t in any_table()) {
        let opts = SpectralOptions::default();
        let dense = spectral_sensitivity(&t, SpectralMethod::Dense, &opts).unwrap().value;
        let comp = spectral_sensitivity(&t, SpectralMethod::ComponentWise, &opts).unwrap().value;
        let free = spectral_sensitivity(&t, SpectralMethod::MatrixFree, &opts).unwrap().value;
        prop_assert!((dense - comp).abs() < 1e-6, "dense {dense} components {comp}");
        prop_assert!((dense - free).abs() < 1e-6, "dense {dense} matrix-free {free}");
    }

    #[test]
    fn lemma_chain_holds(t in any_table()) {
        let claims = verify_lemma_chain(&t, 1e-6, SpectralMethod::Dense, &SpectralOptions::default()).unwrap();
        prop_assert!(claims.iter().all(|c| c.passed()), "{:?}", claims);
        prop_assert!(verify_edge_bound(&t).passed());
    }

    #[test]
    fn edges_are_sensitive_pairs(t in any_table()) {
        let g = SensitivityGraph::new(t.clone());
        let total: u64 = (0..t.len()).map(|x| u64::from(t.sensitivity_at(x))).sum();
        prop_assert_eq!(g.edge_count() * 2, total);
        let in_components: usize = g.components().iter().map(<[u64]>::len).sum();
        prop_assert_eq!(in_components as u64, (0..t.len()).filter(|&x| t.sensitivity_at(x) > 0).count() as u64);
    }

    #[test]
    fn mobius_reconstructs(t in any_table()) {
        let c = mobius(&t).unwrap();
        prop_assert_eq!(from_mobius(t.arity(), &c).unwrap(), t.clone());
        let d = degree(&t).unwrap();
        prop_assert!(d <= t.arity());
    }

    #[test]
    fn sensitivity_is_max_of_sides(t in any_table()) {
        prop_assert_eq!(s(&t).value, s0(&t).value.max(s1(&t).value));
        prop_assert_eq!(s0(&t), s1(&t.complement()));
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let tables: Vec<TruthTable> = sensilab_core::verify::random_functions(11, 4, 3).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                tables
                    .iter()
                    .map(|t| {
                        let r = spectral_sensitivity(t, SpectralMethod::MatrixFree, &SpectralOptions::default()).unwrap();
                        (r.value.to_bits(), r.iterations, s(t))
                    })
                    .collect::<Vec<_>>()
            })
    };
    assert_eq!(run(1), run(3));
}
