#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

/// Thermal averages of an `L x L` periodic lattice, summed over all
/// `2^(L^2)` states.
#[derive(Debug, Clone, Copy)]
pub struct ExactAverages {
    pub abs_m: f64,
    pub m2: f64,
    pub m4: f64,
}

impl ExactAverages {
    pub fn binder(&self) -> f64 {
        self.m2 / (self.abs_m * self.abs_m)
    }

    pub fn susceptibility(&self, beta: f64, size: usize) -> f64 {
        beta * (size * size) as f64 * (self.m2 - self.abs_m * self.abs_m)
    }
}

/// Brute-force enumeration with `H = -J sum_i s_i (s_right(i) + s_down(i))`,
/// the bond sum running over every site's right and lower neighbour.
pub fn exact_averages(size: usize, beta: f64, coupling: f64) -> ExactAverages {
    let n = size * size;
    assert!(n <= 20, "enumeration over 2^{n} states is too large");
    let spin = |state: u32, row: usize, col: usize| -> i32 {
        if state >> ((row % size) * size + col % size) & 1 == 1 {
            1
        } else {
            -1
        }
    };
    // Shift energies by the ground state so the weights stay bounded.
    let ground = -coupling * 2.0 * n as f64;
    let (mut z, mut abs_m, mut m2, mut m4) = (0.0, 0.0, 0.0, 0.0);
    for state in 0..(1u32 << n) {
        let mut bonds = 0i32;
        let mut total = 0i32;
        for r in 0..size {
            for c in 0..size {
                let s = spin(state, r, c);
                total += s;
                bonds += s * (spin(state, r, c + 1) + spin(state, r + 1, c));
            }
        }
        let energy = -coupling * f64::from(bonds);
        let w = (-beta * (energy - ground)).exp();
        let m = f64::from(total) / n as f64;
        z += w;
        abs_m += w * m.abs();
        m2 += w * m * m;
        m4 += w * m.powi(4);
    }
    ExactAverages {
        abs_m: abs_m / z,
        m2: m2 / z,
        m4: m4 / z,
    }
}

pub fn ising_binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_ising"))
}

pub fn ising(args: &[&str]) -> Output {
    Command::new(ising_binary())
        .args(args)
        .output()
        .expect("ising binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// Sorted names of the `ising_*.dat` files in `dir`.
pub fn run_file_names(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.starts_with("ising_") && n.ends_with(".dat"))
        .collect();
    names.sort();
    names
}

/// Record lines of a run file, without its header.
pub fn record_section(path: &Path) -> String {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}
