//! Structural invariants checked exhaustively at small sizes and by
//! property-based search at moderate sizes.

use proptest::prelude::*;

use sccount::asym;
use sccount::exact;
use sccount::graph::{self, Digraph};
use sccount::mc::{self, Event};
use sccount::series::TruncSeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Every loopless digraph on [n] with all in- and out-degrees positive.
fn for_each_min_degree_digraph(n: usize, mut f: impl FnMut(&Digraph)) {
    let universe: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let k = universe.len();
    for mask in 0u64..(1u64 << k) {
        let arcs: Vec<(usize, usize)> = (0..k)
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| universe[b])
            .collect();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for &(i, j) in &arcs {
            outdeg[i] += 1;
            indeg[j] += 1;
        }
        if indeg.iter().all(|&d| d > 0) && outdeg.iter().all(|&d| d > 0) {
            f(&Digraph::new(n, arcs).unwrap());
        }
    }
}

#[test]
fn complement_of_a_proper_sink_set_is_a_proper_source_set() {
    for n in 2..=4usize {
        let full = (1u32 << n) - 1;
        for_each_min_degree_digraph(n, |g| {
            let sources = graph::find_source_sets(g, true).unwrap();
            for s in graph::find_sink_sets(g, true).unwrap() {
                assert!(sources.contains(&(full & !s)), "digraph {:?}", g.arcs());
            }
        });
    }
}

#[test]
fn strong_connectivity_equals_absence_of_proper_sink_and_source_sets() {
    for n in 2..=4usize {
        for_each_min_degree_digraph(n, |g| {
            let no_sink = graph::find_sink_sets(g, true).unwrap().is_empty();
            let no_source = graph::find_source_sets(g, true).unwrap().is_empty();
            let sc = graph::is_strongly_connected(g);
            assert_eq!(sc, no_sink, "digraph {:?}", g.arcs());
            assert_eq!(sc, no_source, "digraph {:?}", g.arcs());
        });
    }
}

/// Subset-definition reference for the linear simple-sink-set detector:
/// some sink-set all of whose vertices have out-degree exactly 1.
fn has_simple_sink_set_by_subsets(g: &Digraph) -> bool {
    let mut outdeg = vec![0usize; g.n()];
    for &(i, _) in g.arcs() {
        outdeg[i] += 1;
    }
    graph::find_sink_sets(g, false)
        .unwrap()
        .iter()
        .any(|&mask| graph::mask_vertices(mask).iter().all(|&v| outdeg[v] == 1))
}

fn arbitrary_digraph() -> impl Strategy<Value = Digraph> {
    (2usize..=10).prop_flat_map(|n| {
        let universe: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let k = universe.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |include| {
            let arcs = universe
                .iter()
                .zip(&include)
                .filter(|(_, &inc)| inc)
                .map(|(&a, _)| a)
                .collect();
            Digraph::new(n, arcs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn linear_simple_sink_detector_matches_subset_definition(g in arbitrary_digraph()) {
        let linear = !g.simple_sink_sets().is_empty();
        prop_assert_eq!(linear, has_simple_sink_set_by_subsets(&g));
    }

    #[test]
    fn simple_source_sets_are_simple_sink_sets_of_the_reversal(g in arbitrary_digraph()) {
        prop_assert_eq!(g.simple_source_sets(), g.reversed().simple_sink_sets());
    }

    #[test]
    fn text_format_round_trips(g in arbitrary_digraph()) {
        prop_assert_eq!(&Digraph::from_text(&g.to_text()).unwrap(), &g);
    }
}

fn small_series() -> impl Strategy<Value = TruncSeries> {
    proptest::collection::vec((-4i64..=4, 1i64..=4), 6).prop_map(|cs| {
        let orders = [5usize, 5];
        let x = TruncSeries::monomial(&orders, 0, BigRational::one()).unwrap();
        let y = TruncSeries::monomial(&orders, 1, BigRational::one()).unwrap();
        let mut f = TruncSeries::new(&orders).unwrap();
        let expos: [[usize; 2]; 6] = [[1, 0], [0, 1], [2, 0], [1, 1], [0, 2], [2, 1]];
        for (e, (p, q)) in expos.iter().zip(cs) {
            let c = BigRational::new(BigInt::from(p), BigInt::from(q));
            f = f.add(&x.pow(e[0]).mul(&y.pow(e[1])).scale(&c));
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_undoes_log_on_one_plus_f(f in small_series()) {
        let one = TruncSeries::one(&[5, 5]).unwrap();
        let one_plus = one.add(&f);
        prop_assert_eq!(one_plus.log().exp(), one_plus);
    }

    #[test]
    fn recip_is_a_true_inverse(f in small_series()) {
        let one = TruncSeries::one(&[5, 5]).unwrap();
        let one_plus = one.add(&f);
        prop_assert_eq!(one_plus.recip().mul(&one_plus), one);
    }
}

/// The mean pairing simplicity at (100,120): Monte Carlo against the
/// exact average fudge factor, and the exact value against e^{-eta}.
#[test]
fn mean_simplicity_matches_exact_average_and_its_exponential_prediction() {
    let exact_mean = exact::mean_fudge_exact(100, 120).unwrap();
    let want = asym::ln_big_rational(&exact_mean).exp();
    let est = mc::estimate(Event::SimplePairing, 100, 120, 20_000, 42, 2).unwrap();
    assert!(
        (est.mean - want).abs() <= 4.0 * est.stderr,
        "mc {} vs exact {}",
        est.mean,
        want
    );
    let eta = asym::ModelParams::square(100, 120).unwrap().eta;
    let ratio = want / (-eta).exp();
    assert!((ratio - 1.0).abs() < 0.10, "exact/e^-eta = {ratio}");
}

/// n * P(complex sink-set of at most m/2 arcs) stays bounded along
/// m = n + 4.
#[test]
fn event_a_probability_decays_like_one_over_n() {
    for n in [8usize, 10, 12, 14] {
        let est = mc::estimate(Event::EventA, n, n + 4, 10_000, 7, 2).unwrap();
        let scaled = n as f64 * est.mean;
        assert!(scaled <= 5.0, "n = {n}: n*p = {scaled}");
    }
}
