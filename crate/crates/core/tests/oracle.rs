mod support;

use specfilt::ensembles::Ensemble;
use specfilt::filtration::{build_filtration, stream_prefixes};
use specfilt::spectra::laplacian_spectrum;
use specfilt::{Kind, Seed};
use support::charpoly;

#[test]
fn oracle_sanity() {
    charpoly::self_check();
}

#[test]
fn complete_bipartite_matches_closed_form() {
    let edges: Vec<_> = (0..3).flat_map(|i| (3..8).map(move |j| (i, j))).collect();
    let want = [0.0, 3.0, 3.0, 3.0, 3.0, 5.0, 5.0, 8.0];
    let got = charpoly::raw_spectrum(8, &edges);
    for (a, b) in got.iter().zip(want) {
        assert!((a - b).abs() < 1e-9, "{got:?}");
    }
}

#[test]
fn solver_matches_oracle_on_every_snapshot() {
    let ensembles = [
        Ensemble::Gaussian,
        Ensemble::PositiveRankOne,
        Ensemble::WishartRankOne,
        Ensemble::circle(),
    ];
    for (trial, ensemble) in ensembles.iter().cycle().take(12).enumerate() {
        let n = 5 + trial % 4;
        let m = ensemble.sample(n, Seed(1000 + trial as u64)).unwrap();
        let f = build_filtration(&m).unwrap();
        let all: Vec<usize> = (0..=f.pair_count()).collect();
        for g in stream_prefixes(&f, &all).unwrap() {
            let raw = laplacian_spectrum(&g, Kind::Raw).unwrap();
            let norm = laplacian_spectrum(&g, Kind::Normalized).unwrap();
            let raw_want = charpoly::raw_spectrum(n, g.edges());
            let norm_want = charpoly::normalized_spectrum(n, g.edges());
            for (got, want) in [(raw.values(), &raw_want), (norm.values(), &norm_want)] {
                assert_eq!(got.len(), want.len());
                for (a, b) in got.iter().zip(want.iter()) {
                    assert!((a - b).abs() <= 1e-6, "{got:?} vs {want:?}");
                }
            }
        }
    }
}
