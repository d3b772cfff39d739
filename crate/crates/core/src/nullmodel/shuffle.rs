use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::RandomSeed;
use crate::timeseries::ReturnMatrix;

/// Permutes every row in time independently, destroying cross-correlations
/// while keeping each row's values (and so its mean and variance) intact.
pub fn shuffle_returns(returns: &ReturnMatrix, seed: RandomSeed) -> ReturnMatrix {
    let t = returns.len();
    let (raw, values): (Vec<Vec<f64>>, Vec<Vec<f64>>) = (0..returns.n_rows())
        .into_par_iter()
        .map(|i| {
            let mut order: Vec<usize> = (0..t).collect();
            order.shuffle(&mut seed.stream(i as u64));
            let raw = order.iter().map(|&k| returns.raw_row(i)[k]).collect();
            let values = order.iter().map(|&k| returns.row(i)[k]).collect();
            (raw, values)
        })
        .unzip();
    ReturnMatrix::from_parts(
        returns.base(),
        returns.currencies().to_vec(),
        returns.tau(),
        raw,
        values,
        returns.degenerate_flags().to_vec(),
    )
}
