//! Independent dense-vector simulator in double precision. Shares only the
//! `Gate` data type with the crate; every semantic rule is recoded here.

use std::f64::consts::SQRT_2;

use qnet_core::{Gate, QExt, QState};

use super::to_f64;

#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub amps: Vec<(f64, f64)>,
}

fn qext_f64(x: &QExt) -> f64 {
    to_f64(&x.a) + to_f64(&x.b) * SQRT_2
}

impl Dense {
    pub fn from_exact(s: &QState<QExt>) -> Dense {
        let scale = qext_f64(s.scale_sq()).sqrt();
        let amps = s
            .amplitudes()
            .iter()
            .map(|c| (qext_f64(&c.re) / scale, qext_f64(&c.im) / scale))
            .collect();
        Dense {
            n: s.nqubits(),
            amps,
        }
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    fn norm2(&self) -> f64 {
        self.amps.iter().map(|(r, i)| r * r + i * i).sum()
    }

    pub fn normalize(&mut self) {
        let k = self.norm2().sqrt();
        for a in &mut self.amps {
            a.0 /= k;
            a.1 /= k;
        }
    }

    /// Applies one gate then renormalizes, the way the circuit loop does.
    pub fn step(&mut self, gate: &Gate, draw: Option<f64>) {
        let len = self.amps.len();
        match *gate {
            Gate::X(q) => {
                let m = self.bit(q);
                for i in 0..len {
                    if i & m == 0 {
                        self.amps.swap(i, i | m);
                    }
                }
            }
            Gate::Z(q) => {
                let m = self.bit(q);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & m != 0 {
                        *a = (-a.0, -a.1);
                    }
                }
            }
            Gate::H(q) => {
                let m = self.bit(q);
                for i in 0..len {
                    if i & m == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | m]);
                        self.amps[i] = ((a.0 + b.0) / SQRT_2, (a.1 + b.1) / SQRT_2);
                        self.amps[i | m] = ((a.0 - b.0) / SQRT_2, (a.1 - b.1) / SQRT_2);
                    }
                }
            }
            Gate::I(_) => {}
            Gate::CN { control, target } => {
                let (c, t) = (self.bit(control), self.bit(target));
                for i in 0..len {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            Gate::M(q) => {
                let m = self.bit(q);
                let r = draw.expect("measurement needs a draw");
                let total = self.norm2();
                let p0: f64 = self
                    .amps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i & m == 0)
                    .map(|(_, (re, im))| re * re + im * im)
                    .sum::<f64>()
                    / total;
                let one = r >= p0;
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if (i & m != 0) != one {
                        *a = (0.0, 0.0);
                    }
                }
            }
        }
        self.normalize();
    }

    pub fn run(&mut self, gates: &[Gate], draws: &[f64]) {
        self.normalize();
        let mut next = draws.iter();
        for g in gates {
            let d = if g.is_measurement() {
                next.next().copied()
            } else {
                None
            };
            self.step(g, d);
        }
    }

    pub fn max_diff(&self, other: &[(f64, f64)]) -> f64 {
        self.amps
            .iter()
            .zip(other)
            .map(|(a, b)| (a.0 - b.0).abs().max((a.1 - b.1).abs()))
            .fold(0.0, f64::max)
    }
}

/// Exact-state amplitudes rendered through a high-precision sqrt(2).
pub fn exact_as_f64(s: &QState<QExt>) -> Vec<(f64, f64)> {
    let tol = qnet_core::Tolerance::pow10(15);
    qnet_core::render::approx_amplitudes(s, &qnet_core::Exact, &tol)
        .unwrap()
        .iter()
        .map(|c| (to_f64(&c.re), to_f64(&c.im)))
        .collect()
}
