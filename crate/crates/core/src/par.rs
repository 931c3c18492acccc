//! Dispatch for embarrassingly parallel cell maps (spectrum states, mixing
//! scans, quadrature widths, matrix eigenvalue indices).
//!
//! With the `parallel` feature (default) cells run on the rayon pool; without
//! it the same API runs sequentially. Output order is the input order either
//! way, so results are deterministic and feature-independent.

#[cfg(feature = "parallel")]
pub fn map_cells<U, F>(count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_cells<U, F>(count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_input_order() {
        let out = map_cells(100, |i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }
}
