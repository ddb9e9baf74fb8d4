//! Fixtures shared by the benchmarks.

use swf_core::catalog::supported_brieskorn;
use swf_core::zlinalg::IntegerMatrix;
use swf_core::{swf_brieskorn, BrieskornParams, Orientation, SpectrumPresentation};

/// `-Σ(2, 3, r)` and its dual for each supported `r <= max`.
pub fn brieskorn_spectra(max: i64) -> Vec<(i64, SpectrumPresentation, SpectrumPresentation)> {
    supported_brieskorn(max)
        .into_iter()
        .map(|r| {
            let neg =
                swf_brieskorn(BrieskornParams::new(r, Orientation::Negative).expect("supported r"))
                    .expect("catalog");
            let pos = neg.dualize().expect("catalog spectra dualize");
            (r, neg, pos)
        })
        .collect()
}

/// Deterministic dense `n × n` test matrix with entries in `[-9, 9]`.
pub fn test_matrix(n: usize, seed: u64) -> IntegerMatrix {
    let mut x = seed | 1;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    (x % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    IntegerMatrix::from_rows(&rows)
}
