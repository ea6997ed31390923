//! Single-qubit spin projections in the x–z plane.
//!
//! `σ(θ) = cos θ·σz + sin θ·σx` has the analytic eigenvectors
//! `φ₊(θ) = (cos θ/2, sin θ/2)` and `φ₋(θ) = (−sin θ/2, cos θ/2)`; those
//! exact real vectors are the canonical phase used everywhere, including
//! as the post-measurement state returned by [`collapse`].

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::Sign;

/// Tolerance for normalization checks and float comparisons in this module.
pub const QUBIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct QubitState {
    amps: [Complex64; 2],
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    re: [f64; 2],
    im: [f64; 2],
}

impl TryFrom<StateRepr> for QubitState {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<QubitState> {
        QubitState::new(
            Complex64::new(r.re[0], r.im[0]),
            Complex64::new(r.re[1], r.im[1]),
        )
    }
}

impl From<QubitState> for StateRepr {
    fn from(s: QubitState) -> StateRepr {
        StateRepr {
            re: [s.amps[0].re, s.amps[1].re],
            im: [s.amps[0].im, s.amps[1].im],
        }
    }
}

impl QubitState {
    /// Amplitudes in the σz basis; `|a0|² + |a1|²` must be 1 within [`QUBIT_TOL`].
    pub fn new(a0: Complex64, a1: Complex64) -> Result<QubitState> {
        if !(a0.is_finite() && a1.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        let state = QubitState { amps: [a0, a1] };
        check_normalized(&state)?;
        Ok(state)
    }

    pub fn real(x0: f64, x1: f64) -> Result<QubitState> {
        QubitState::new(Complex64::new(x0, 0.0), Complex64::new(x1, 0.0))
    }

    /// `|0⟩ = (1, 0)`.
    pub fn zero() -> QubitState {
        QubitState {
            amps: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps[0].norm_sqr() + self.amps[1].norm_sqr()
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &QubitState) -> Complex64 {
        self.amps[0].conj() * other.amps[0] + self.amps[1].conj() * other.amps[1]
    }

    pub fn approx_eq(&self, other: &QubitState, tol: f64) -> bool {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .all(|(a, b)| (a - b).norm() <= tol)
    }
}

/// The observable `σ(θ)` with `θ` reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinObservable {
    theta: f64,
}

impl SpinObservable {
    pub fn new(theta: f64) -> Result<SpinObservable> {
        if !theta.is_finite() {
            return Err(Error::NonFiniteAngle(theta));
        }
        let mut t = theta.rem_euclid(TAU);
        // rem_euclid rounds up to exactly TAU for tiny negative inputs
        if t >= TAU {
            t = 0.0;
        }
        Ok(SpinObservable { theta: t })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Real symmetric matrix `[[cos θ, sin θ], [sin θ, −cos θ]]`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        [[c, s], [s, -c]]
    }

    pub fn apply(&self, state: &QubitState) -> [Complex64; 2] {
        let m = self.matrix();
        let [a0, a1] = state.amps;
        [a0 * m[0][0] + a1 * m[0][1], a0 * m[1][0] + a1 * m[1][1]]
    }

    pub fn eigenvector(&self, outcome: Sign) -> QubitState {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let (x0, x1) = match outcome {
            Sign::Plus => (c, s),
            Sign::Minus => (-s, c),
        };
        QubitState {
            amps: [Complex64::new(x0, 0.0), Complex64::new(x1, 0.0)],
        }
    }

    /// Analytic eigenpairs `(+1, φ₊)` and `(−1, φ₋)`.
    pub fn eigenpairs(&self) -> (EigenPair, EigenPair) {
        (
            EigenPair {
                eigenvalue: Sign::Plus,
                eigenvector: self.eigenvector(Sign::Plus),
            },
            EigenPair {
                eigenvalue: Sign::Minus,
                eigenvector: self.eigenvector(Sign::Minus),
            },
        )
    }
}

pub fn spin_observable(theta: f64) -> Result<SpinObservable> {
    SpinObservable::new(theta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub eigenvalue: Sign,
    pub eigenvector: QubitState,
}

/// `entries[i][j] = P(a = αᵢ | b = βⱼ)` with index 0 for `+1` and 1 for `−1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionalMatrix {
    pub entries: [[f64; 2]; 2],
}

impl ConditionalMatrix {
    pub fn get(&self, a: Sign, b: Sign) -> f64 {
        self.entries[a.index()][b.index()]
    }

    /// Largest deviation of any row or column sum from 1.
    pub fn stochasticity_defect(&self) -> f64 {
        let e = &self.entries;
        [
            e[0][0] + e[0][1],
            e[1][0] + e[1][1],
            e[0][0] + e[1][0],
            e[0][1] + e[1][1],
        ]
        .iter()
        .map(|s| (s - 1.0).abs())
        .fold(0.0, f64::max)
    }
}

fn check_normalized(s: &QubitState) -> Result<()> {
    let norm_sqr = s.norm_sqr();
    if (norm_sqr - 1.0).abs() > QUBIT_TOL {
        return Err(Error::StateNotNormalized { norm_sqr });
    }
    Ok(())
}

/// `|⟨e, f⟩|²`.
pub fn transition_probability(e: &QubitState, f: &QubitState) -> Result<f64> {
    check_normalized(e)?;
    check_normalized(f)?;
    Ok(e.inner(f).norm_sqr())
}

/// Closed-form conditional probabilities between outcomes of `a` and `b`:
/// `cos²((θa − θb)/2)` on the diagonal, `sin²((θa − θb)/2)` off it.
pub fn quantum_conditional(a: &SpinObservable, b: &SpinObservable) -> ConditionalMatrix {
    let (s, c) = ((a.theta - b.theta) / 2.0).sin_cos();
    let (same, diff) = (c * c, s * s);
    ConditionalMatrix {
        entries: [[same, diff], [diff, same]],
    }
}

/// Born weight `|⟨φ_outcome(θ), state⟩|²`.
pub fn born_probability(state: &QubitState, obs: &SpinObservable, outcome: Sign) -> Result<f64> {
    transition_probability(&obs.eigenvector(outcome), state)
}

/// Projection postulate: the post-measurement state is the canonical
/// eigenvector for `outcome`, provided that outcome has nonzero probability.
pub fn collapse(state: &QubitState, obs: &SpinObservable, outcome: Sign) -> Result<QubitState> {
    let probability = born_probability(state, obs, outcome)?;
    if probability <= QUBIT_TOL {
        return Err(Error::ZeroAmplitudeOutcome { probability });
    }
    Ok(obs.eigenvector(outcome))
}
