//! Binomial random graphs G(n, p).

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::seed::Seed;

/// Below this many vertices every pair gets its own uniform draw.
pub const SKIP_THRESHOLD: usize = 4096;

/// Geometric skipping is used at or above [`SKIP_THRESHOLD`] only when
/// `p` is at most this.
pub const SKIP_MAX_P: f64 = 0.25;

/// Samples G(n, p). Pairs `u < v` are visited in row-major order; the same
/// `(n, p, seed)` always yields the same graph.
pub fn sample_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }
    if p == 1.0 {
        return Graph::complete(n);
    }
    let mut g = Graph::empty(n)?;
    if p == 0.0 || n < 2 {
        return Ok(g);
    }
    let mut rng = seed.rng();
    if n >= SKIP_THRESHOLD && p <= SKIP_MAX_P {
        sample_skipping(&mut g, p, &mut rng);
    } else {
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    g.set_edge_unchecked(u, v);
                }
            }
        }
    }
    Ok(g)
}

/// Jumps between present pairs with geometric gaps, so the work is
/// proportional to the number of edges rather than pairs.
fn sample_skipping<R: Rng>(g: &mut Graph, p: f64, rng: &mut R) {
    let n = g.n();
    let log_q = (-p).ln_1p();
    let (mut u, mut v) = (0usize, 0usize);
    loop {
        // 1 - U lies in (0, 1], so the log is finite.
        let draw: f64 = 1.0 - rng.random::<f64>();
        let gap = (draw.ln() / log_q).floor();
        // Advance past `gap` absent pairs to the next present one.
        let mut skip = if gap >= u64::MAX as f64 {
            u64::MAX
        } else {
            gap as u64 + 1
        };
        while skip > 0 {
            let left_in_row = (n - 1 - v) as u64;
            if skip <= left_in_row {
                v += skip as usize;
                skip = 0;
            } else {
                skip -= left_in_row;
                u += 1;
                if u + 1 >= n {
                    return;
                }
                v = u;
            }
        }
        g.set_edge_unchecked(u, v);
    }
}
