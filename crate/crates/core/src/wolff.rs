//! Single-cluster Wolff updates.
//!
//! Draw order per update, which fixes every chain bit-for-bit:
//!
//! 1. one draw through [`RandomStream::next_site_index`] picks the seed site;
//! 2. the cluster grows breadth-first from a FIFO frontier; each dequeued
//!    site looks at its neighbors in (right, left, down, up) order, and every
//!    neighbor that is aligned with the seed spin and not yet in the cluster
//!    costs exactly one [`RandomStream::next_unit_real`] draw, joining iff
//!    the draw is below `p = 1 - exp(-2 beta J)`.
//!
//! Anti-aligned neighbors and sites already in the cluster consume no draws.

use crate::error::{Error, Result};
use crate::lattice::SpinConfig;
use crate::rng::RandomStream;

/// Bond activation probability `1 - exp(-2 beta J)`.
pub fn add_probability(beta: f64, coupling: f64) -> Result<f64> {
    if !(beta >= 0.0) || beta.is_infinite() {
        return Err(Error::InvalidArgument(format!(
            "inverse temperature must be finite and non-negative, got {beta}"
        )));
    }
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "coupling J must be positive and finite, got {coupling}"
        )));
    }
    Ok(-(-2.0 * beta * coupling).exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpdateResult {
    pub cluster_size: usize,
    pub seed_site: usize,
}

/// Scratch space for repeated updates on lattices of one size.
///
/// Cluster membership is a generation stamp per site, so nothing is cleared
/// between updates and each update costs O(cluster size).
#[derive(Debug, Clone)]
pub struct WolffUpdater {
    stamp: Vec<u32>,
    generation: u32,
    /// Members in join order; the unprocessed tail doubles as the FIFO
    /// frontier.
    cluster: Vec<u32>,
}

impl WolffUpdater {
    pub fn new(sites: usize) -> Self {
        WolffUpdater {
            stamp: vec![0; sites],
            generation: 0,
            cluster: Vec::with_capacity(sites),
        }
    }

    /// Sites flipped by the most recent update, in the order they joined.
    pub fn last_cluster(&self) -> impl Iterator<Item = usize> + '_ {
        self.cluster.iter().map(|&s| s as usize)
    }

    fn next_generation(&mut self) -> u32 {
        if self.generation == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 0;
        }
        self.generation += 1;
        self.generation
    }

    /// Grows one cluster with precomputed probability `p` and flips it.
    pub fn update_with_probability(
        &mut self,
        config: &mut SpinConfig,
        p: f64,
        rng: &mut RandomStream,
    ) -> UpdateResult {
        if self.stamp.len() != config.sites() {
            *self = WolffUpdater::new(config.sites());
        }
        let gen = self.next_generation();
        let seed = rng
            .next_site_index(config.sites())
            .expect("lattice has at least four sites");
        let aligned = config.spin(seed);

        // `draw < p` with `draw = u / 2^32` is exactly `u < p * 2^32`.
        let threshold = (p * 4_294_967_296.0).ceil() as u64;

        self.cluster.clear();
        self.stamp[seed] = gen;
        self.cluster.push(seed as u32);

        let mut head = 0;
        while head < self.cluster.len() {
            let site = self.cluster[head] as usize;
            head += 1;
            for &nb in config.neighbor_table_row(site) {
                let n = nb as usize;
                if self.stamp[n] == gen || config.spin(n) != aligned {
                    continue;
                }
                if u64::from(rng.next_u32()) < threshold {
                    self.stamp[n] = gen;
                    self.cluster.push(nb);
                }
            }
        }

        // Only bonds crossing the cluster boundary change sign.
        let mut boundary = 0i64;
        for &site in &self.cluster {
            for &nb in config.neighbor_table_row(site as usize) {
                if self.stamp[nb as usize] != gen {
                    boundary += i64::from(aligned * config.spin(nb as usize));
                }
            }
        }
        for &site in &self.cluster {
            config.flip_in_place(site as usize);
        }
        let size = self.cluster.len();
        config.apply_deltas(-2 * i64::from(aligned) * size as i64, -2 * boundary);

        UpdateResult {
            cluster_size: size,
            seed_site: seed,
        }
    }

    pub fn update(
        &mut self,
        config: &mut SpinConfig,
        beta: f64,
        rng: &mut RandomStream,
    ) -> Result<UpdateResult> {
        let p = add_probability(beta, config.coupling())?;
        Ok(self.update_with_probability(config, p, rng))
    }
}

/// One Wolff update with freshly allocated scratch space.
///
/// Chains should keep a [`WolffUpdater`] instead; this form exists for
/// one-off use.
pub fn wolff_update(
    config: &mut SpinConfig,
    beta: f64,
    rng: &mut RandomStream,
) -> Result<UpdateResult> {
    WolffUpdater::new(config.sites()).update(config, beta, rng)
}
