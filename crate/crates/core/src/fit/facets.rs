//! The symmetrized Wigner facet family over the 8-atom joint space.
//!
//! Atoms are sign patterns of `(a, b, c)` in the fixed lexicographic order
//! `(+,+,+), (+,+,−), (+,−,+), …, (−,−,−)`: atom `i` has `a = +1` iff bit 2
//! of `i` is clear, `b` bit 1, `c` bit 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::PairwiseTargets;
use crate::rational::Rational;
use crate::sign::Sign;

pub const ATOMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    A,
    B,
    C,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::A, Var::B, Var::C];

    fn bit(self) -> usize {
        match self {
            Var::A => 2,
            Var::B => 1,
            Var::C => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
        }
    }
}

/// Value of `var` on atom `atom`.
pub fn atom_sign(atom: usize, var: Var) -> Sign {
    Sign::from_index((atom >> var.bit()) & 1)
}

/// The event `{x = xs, y = ys}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairEvent {
    pub x: Var,
    pub xs: Sign,
    pub y: Var,
    pub ys: Sign,
}

impl PairEvent {
    pub fn contains(&self, atom: usize) -> bool {
        atom_sign(atom, self.x) == self.xs && atom_sign(atom, self.y) == self.ys
    }

    /// Probability under unbiased marginals: `p_xy` when the signs agree,
    /// `1/2 − p_xy` otherwise.
    pub fn probability(&self, targets: &PairwiseTargets) -> Rational {
        let p = targets.pair(self.x, self.y);
        if self.xs == self.ys {
            p
        } else {
            Rational::HALF - p
        }
    }
}

impl fmt::Display for PairEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({}={},{}={})", self.x.name(), self.xs, self.y.name(), self.ys)
    }
}

/// One relabeling of `P(x=+1,y=+1) + P(y=−1,z=+1) ≥ P(x=+1,z=+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WignerFacet {
    pub index: usize,
    pub label: String,
    pub plus: [PairEvent; 2],
    pub minus: PairEvent,
    /// Coefficients of the functional over the 8 atom masses.
    pub coefficients: [i64; ATOMS],
}

impl WignerFacet {
    fn new(index: usize, plus: [PairEvent; 2], minus: PairEvent) -> WignerFacet {
        let mut coefficients = [0i64; ATOMS];
        for (atom, c) in coefficients.iter_mut().enumerate() {
            *c = plus.iter().filter(|e| e.contains(atom)).count() as i64
                - i64::from(minus.contains(atom));
        }
        let label = format!("{} + {} >= {}", plus[0], plus[1], minus);
        WignerFacet {
            index,
            label,
            plus,
            minus,
            coefficients,
        }
    }

    pub fn evaluate_masses(&self, masses: &[Rational; ATOMS]) -> Rational {
        self.coefficients
            .iter()
            .zip(masses)
            .map(|(&c, &m)| Rational::from(c) * m)
            .sum()
    }

    /// Value of the functional on any distribution with these targets and
    /// unbiased marginals; negative means no such distribution exists.
    pub fn evaluate_targets(&self, targets: &PairwiseTargets) -> Rational {
        self.plus[0].probability(targets) + self.plus[1].probability(targets)
            - self.minus.probability(targets)
    }
}

fn permutations() -> [[Var; 3]; 6] {
    use Var::*;
    [[A, B, C], [A, C, B], [B, A, C], [B, C, A], [C, A, B], [C, B, A]]
}

/// All images of the generator under permutations of `(a, b, c)` and sign
/// flips of each variable, deduplicated by their atom coefficients.
///
/// The identity relabeling comes first, so index 0 is the generator itself.
pub fn enumerate_wigner_facets() -> Vec<WignerFacet> {
    let mut out: Vec<WignerFacet> = Vec::new();
    for [x, y, z] in permutations() {
        for flips in 0..8usize {
            let fx = Sign::from_index((flips >> 2) & 1);
            let fy = Sign::from_index((flips >> 1) & 1);
            let fz = Sign::from_index(flips & 1);
            let ev = |x, xs, y, ys| PairEvent { x, xs, y, ys };
            let plus = [ev(x, fx, y, fy), ev(y, -fy, z, fz)];
            let minus = ev(x, fx, z, fz);
            let facet = WignerFacet::new(out.len(), plus, minus);
            if !out.iter().any(|f| f.coefficients == facet.coefficients) {
                out.push(facet);
            }
        }
    }
    out
}
