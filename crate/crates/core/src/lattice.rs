//! Spin configurations on an `L x L` periodic square lattice.
//!
//! Sites are numbered row-major, `i = row * L + col`. Each bond term is
//! counted once through the (right, down) offsets, so every lattice has
//! exactly `2 L^2` bond terms. On `L = 2` the right and left neighbor of a
//! site coincide and that pair is therefore coupled by two bond terms; the
//! neighbor table repeats the index so cluster growth sees both.

use crate::error::{Error, Result};

/// Position of each neighbor in the table returned by [`SpinConfig::neighbors`].
pub const RIGHT: usize = 0;
pub const LEFT: usize = 1;
pub const DOWN: usize = 2;
pub const UP: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinConfig {
    size: usize,
    coupling: f64,
    spins: Vec<i8>,
    neighbors: Vec<[u32; 4]>,
    total_spin: i64,
    /// `sum_i s_i (s_right(i) + s_down(i))`, so `H = -J * bond_sum`.
    bond_sum: i64,
}

fn validate_size(size: usize) -> Result<()> {
    if size < 2 || !size.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "lattice size must be even and at least 2, got {size}"
        )));
    }
    if size > 1 << 15 {
        return Err(Error::InvalidArgument(format!(
            "lattice size {size} is too large"
        )));
    }
    Ok(())
}

fn neighbor_table(size: usize) -> Vec<[u32; 4]> {
    let mut table = Vec::with_capacity(size * size);
    for row in 0..size {
        for col in 0..size {
            let at = |r: usize, c: usize| (r * size + c) as u32;
            table.push([
                at(row, (col + 1) % size),
                at(row, (col + size - 1) % size),
                at((row + 1) % size, col),
                at((row + size - 1) % size, col),
            ]);
        }
    }
    table
}

impl SpinConfig {
    /// Uniformly polarized configuration: all spins `+1` if `up`, else `-1`.
    pub fn new_uniform(size: usize, coupling: f64, up: bool) -> Result<Self> {
        let spin = if up { 1 } else { -1 };
        Self::from_spins(size, coupling, vec![spin; size * size])
    }

    /// Builds a configuration from an explicit row-major spin array.
    pub fn from_spins(size: usize, coupling: f64, spins: Vec<i8>) -> Result<Self> {
        validate_size(size)?;
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "coupling J must be positive and finite, got {coupling}"
            )));
        }
        if spins.len() != size * size {
            return Err(Error::InvalidArgument(format!(
                "expected {} spins, got {}",
                size * size,
                spins.len()
            )));
        }
        if let Some(bad) = spins.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument(format!(
                "spin value {bad} is not +1 or -1"
            )));
        }
        let mut config = SpinConfig {
            size,
            coupling,
            spins,
            neighbors: neighbor_table(size),
            total_spin: 0,
            bond_sum: 0,
        };
        config.total_spin = config.recompute_total_spin();
        config.bond_sum = config.recompute_bond_sum();
        Ok(config)
    }

    /// Checkerboard (Neel) configuration, `+1` on the site 0 sublattice.
    pub fn checkerboard(size: usize, coupling: f64) -> Result<Self> {
        let spins = (0..size * size)
            .map(|i| {
                if (i / size + i % size).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .collect();
        Self::from_spins(size, coupling, spins)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn sites(&self) -> usize {
        self.spins.len()
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    #[inline]
    pub fn spin(&self, site: usize) -> i8 {
        self.spins[site]
    }

    /// Cached `S = sum_i s_i`.
    pub fn total_spin(&self) -> i64 {
        self.total_spin
    }

    /// Energy in units of `J`, `H / J`. Always an even integer.
    pub fn energy_units(&self) -> i64 {
        -self.bond_sum
    }

    /// `H = -J sum_<ij> s_i s_j`.
    pub fn energy(&self) -> f64 {
        self.coupling * self.energy_units() as f64
    }

    /// `m = S / L^2`.
    pub fn magnetization(&self) -> f64 {
        self.total_spin as f64 / self.sites() as f64
    }

    /// Right, left, down and up neighbors of `site`.
    pub fn neighbors(&self, site: usize) -> Result<[usize; 4]> {
        let n = self
            .neighbors
            .get(site)
            .ok_or_else(|| Error::InvalidArgument(format!("site {site} out of range")))?;
        Ok(n.map(|x| x as usize))
    }

    #[inline]
    pub(crate) fn neighbor_table_row(&self, site: usize) -> &[u32; 4] {
        &self.neighbors[site]
    }

    pub fn recompute_total_spin(&self) -> i64 {
        self.spins.iter().map(|&s| i64::from(s)).sum()
    }

    fn recompute_bond_sum(&self) -> i64 {
        self.spins
            .iter()
            .zip(&self.neighbors)
            .map(|(&s, nb)| {
                let right = self.spins[nb[RIGHT] as usize];
                let down = self.spins[nb[DOWN] as usize];
                i64::from(s) * i64::from(right + down)
            })
            .sum()
    }

    /// `H / J` evaluated from scratch over all `2 L^2` bond terms.
    pub fn recompute_energy_units(&self) -> i64 {
        -self.recompute_bond_sum()
    }

    /// Negates every listed spin, updating the cached spin sum and energy.
    pub fn flip_sites(&mut self, sites: &[usize]) -> Result<()> {
        let mut member = vec![false; self.sites()];
        for &site in sites {
            if site >= self.sites() {
                return Err(Error::InvalidArgument(format!("site {site} out of range")));
            }
            if std::mem::replace(&mut member[site], true) {
                return Err(Error::InvalidArgument(format!("site {site} listed twice")));
            }
        }
        let mut boundary = 0i64;
        let mut spin_delta = 0i64;
        for &site in sites {
            let s = i64::from(self.spins[site]);
            spin_delta -= 2 * s;
            for &nb in &self.neighbors[site] {
                if !member[nb as usize] {
                    boundary += s * i64::from(self.spins[nb as usize]);
                }
            }
        }
        for &site in sites {
            self.spins[site] = -self.spins[site];
        }
        self.total_spin += spin_delta;
        self.bond_sum -= 2 * boundary;
        Ok(())
    }

    /// Flips a cluster whose spins were already negated in place by the
    /// caller, applying precomputed changes to the cached sums.
    #[inline]
    pub(crate) fn flip_in_place(&mut self, site: usize) {
        self.spins[site] = -self.spins[site];
    }

    #[inline]
    pub(crate) fn apply_deltas(&mut self, spin_delta: i64, bond_delta: i64) {
        self.total_spin += spin_delta;
        self.bond_sum += bond_delta;
    }
}
