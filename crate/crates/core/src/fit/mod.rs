//! Does a Kolmogorov model reproduce given pairwise statistics?
//!
//! Three unbiased `±1` observables `a`, `b`, `c` are described by their
//! `(+1,+1)` joint masses `p_ab`, `p_bc`, `p_ac`. A classical model is a
//! distribution over the 8 sign patterns matching those masses and the
//! marginals `1/2`. [`decide_feasibility`] settles existence by exact
//! simplex and backs an infeasible verdict with a violated Wigner facet.

mod facets;
pub mod simplex;

use serde::{Deserialize, Serialize};

pub use facets::{atom_sign, enumerate_wigner_facets, PairEvent, Var, WignerFacet, ATOMS};

use crate::error::{Error, Result};
use crate::inequality::classical_wigner_conditional;
use crate::prob::{DichotomicVariable, FiniteProbabilitySpace};
use crate::qubit::{quantum_conditional, SpinObservable};
use crate::rational::Rational;
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TargetsRepr", into = "TargetsRepr")]
pub struct PairwiseTargets {
    p_ab: Rational,
    p_bc: Rational,
    p_ac: Rational,
    rounding_bound: Option<Rational>,
}

#[derive(Serialize, Deserialize)]
struct TargetsRepr {
    p_ab: Rational,
    p_bc: Rational,
    p_ac: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rounding_bound: Option<Rational>,
}

impl TryFrom<TargetsRepr> for PairwiseTargets {
    type Error = Error;

    fn try_from(r: TargetsRepr) -> Result<PairwiseTargets> {
        let mut t = PairwiseTargets::new(r.p_ab, r.p_bc, r.p_ac)?;
        t.rounding_bound = r.rounding_bound;
        Ok(t)
    }
}

impl From<PairwiseTargets> for TargetsRepr {
    fn from(t: PairwiseTargets) -> TargetsRepr {
        TargetsRepr {
            p_ab: t.p_ab,
            p_bc: t.p_bc,
            p_ac: t.p_ac,
            rounding_bound: t.rounding_bound,
        }
    }
}

impl PairwiseTargets {
    /// Exact targets; each must lie in `[0, 1/2]`.
    pub fn new(p_ab: Rational, p_bc: Rational, p_ac: Rational) -> Result<PairwiseTargets> {
        for (pair, value) in [("ab", p_ab), ("bc", p_bc), ("ac", p_ac)] {
            if value.is_negative() || value > Rational::HALF {
                return Err(Error::OutOfRangeTarget { pair, value });
            }
        }
        Ok(PairwiseTargets {
            p_ab,
            p_bc,
            p_ac,
            rounding_bound: None,
        })
    }

    pub fn p_ab(&self) -> Rational {
        self.p_ab
    }

    pub fn p_bc(&self) -> Rational {
        self.p_bc
    }

    pub fn p_ac(&self) -> Rational {
        self.p_ac
    }

    /// Maximum per-target rounding error when the targets were rationalized.
    pub fn rounding_bound(&self) -> Option<Rational> {
        self.rounding_bound
    }

    /// `P(x=+1, y=+1)` for an unordered pair of distinct variables.
    pub fn pair(&self, x: Var, y: Var) -> Rational {
        match (x.min(y), x.max(y)) {
            (Var::A, Var::B) => self.p_ab,
            (Var::B, Var::C) => self.p_bc,
            (Var::A, Var::C) => self.p_ac,
            _ => panic!("pair of identical variables"),
        }
    }

    /// Targets seen after renaming variable `v` to `map(v)`.
    pub fn relabeled(&self, map: impl Fn(Var) -> Var) -> PairwiseTargets {
        let mut out = self.clone();
        for (x, y) in [(Var::A, Var::B), (Var::B, Var::C), (Var::A, Var::C)] {
            let p = self.pair(x, y);
            match (map(x).min(map(y)), map(x).max(map(y))) {
                (Var::A, Var::B) => out.p_ab = p,
                (Var::B, Var::C) => out.p_bc = p,
                _ => out.p_ac = p,
            }
        }
        out
    }
}

/// Quantum `(+1,+1)` joint masses `p_xy = ½·cos²((θx − θy)/2)` under unbiased
/// marginals, rounded to the nearest multiple of `1/denom`.
///
/// The Wigner term `P(c=+1, b=−1)` then reads `1/2 − p_bc`, which is
/// `½·sin²((θ₃ − θ₂)/2)`.
pub fn targets_from_quantum(theta1: f64, theta2: f64, theta3: f64, denom: u64) -> Result<PairwiseTargets> {
    if denom < 2 {
        return Err(Error::BadDenominator(denom));
    }
    let obs = [
        SpinObservable::new(theta1)?,
        SpinObservable::new(theta2)?,
        SpinObservable::new(theta3)?,
    ];
    let joint = |i: usize, j: usize| {
        let p = 0.5 * quantum_conditional(&obs[i], &obs[j]).get(Sign::Plus, Sign::Plus);
        Rational::nearest(p, denom).map(|r| r.min(Rational::HALF).max(Rational::ZERO))
    };
    let mut t = PairwiseTargets::new(joint(0, 1)?, joint(1, 2)?, joint(0, 2)?)?;
    t.rounding_bound = Some(Rational::new(1, 2 * denom as i128)?);
    Ok(t)
}

/// Masses over the 8 sign patterns of `(a, b, c)`, in atom order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointDistribution8 {
    pub masses: [Rational; ATOMS],
}

impl JointDistribution8 {
    pub fn uniform() -> JointDistribution8 {
        JointDistribution8 {
            masses: [Rational::new(1, 8).expect("nonzero"); ATOMS],
        }
    }

    pub fn marginal(&self, x: Var) -> Rational {
        (0..ATOMS)
            .filter(|&i| atom_sign(i, x) == Sign::Plus)
            .map(|i| self.masses[i])
            .sum()
    }

    pub fn pair(&self, x: Var, y: Var) -> Rational {
        (0..ATOMS)
            .filter(|&i| atom_sign(i, x) == Sign::Plus && atom_sign(i, y) == Sign::Plus)
            .map(|i| self.masses[i])
            .sum()
    }

    /// The distribution as a finite probability space with `a`, `b`, `c`.
    pub fn to_space(&self) -> Result<(FiniteProbabilitySpace, [DichotomicVariable; 3])> {
        let space = FiniteProbabilitySpace::new(self.masses.to_vec())?;
        let vars = Var::ALL.map(|v| DichotomicVariable::new((0..ATOMS).map(|i| atom_sign(i, v)).collect()));
        Ok((space, vars))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub facet: WignerFacet,
    /// Value of the facet functional on the targets; strictly negative.
    pub deficit: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum FeasibilityResult {
    Feasible { witness: JointDistribution8 },
    Infeasible { certificate: Certificate },
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible { .. })
    }
}

fn constraint_system(t: &PairwiseTargets) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let indicator = |pred: &dyn Fn(usize) -> bool| -> Vec<Rational> {
        (0..ATOMS)
            .map(|i| if pred(i) { Rational::ONE } else { Rational::ZERO })
            .collect()
    };
    let plus = |i: usize, v: Var| atom_sign(i, v) == Sign::Plus;
    let mut a = vec![indicator(&|_| true)];
    let mut b = vec![Rational::ONE];
    for v in Var::ALL {
        a.push(indicator(&|i| plus(i, v)));
        b.push(Rational::HALF);
    }
    for (x, y) in [(Var::A, Var::B), (Var::B, Var::C), (Var::A, Var::C)] {
        a.push(indicator(&|i| plus(i, x) && plus(i, y)));
        b.push(t.pair(x, y));
    }
    (a, b)
}

/// The facet with the most negative value on `targets` (lowest index on
/// ties), if any facet is violated.
pub fn most_violated_facet(targets: &PairwiseTargets) -> Option<Certificate> {
    enumerate_wigner_facets()
        .into_iter()
        .map(|facet| {
            let deficit = facet.evaluate_targets(targets);
            Certificate { facet, deficit }
        })
        .filter(|c| c.deficit.is_negative())
        .reduce(|best, c| if c.deficit < best.deficit { c } else { best })
}

/// Exact feasibility of the 8-mass system: normalization, three marginals
/// equal to `1/2`, three pairwise `(+1,+1)` targets.
pub fn decide_feasibility(targets: &PairwiseTargets) -> Result<FeasibilityResult> {
    let (a, b) = constraint_system(targets);
    match simplex::find_feasible_point(&a, &b) {
        Some(x) => {
            let masses: [Rational; ATOMS] = x.try_into().expect("8 columns");
            Ok(FeasibilityResult::Feasible {
                witness: JointDistribution8 { masses },
            })
        }
        None => most_violated_facet(targets)
            .map(|certificate| FeasibilityResult::Infeasible { certificate })
            .ok_or(Error::MissingCertificate),
    }
}

/// Recomputes every constraint from the witness; also confirms that its
/// Bayes conditionals satisfy the conditional Wigner inequality.
pub fn verify_witness(witness: &JointDistribution8, targets: &PairwiseTargets) -> bool {
    if witness.masses.iter().any(Rational::is_negative) {
        return false;
    }
    let total: Rational = witness.masses.iter().sum();
    if total != Rational::ONE {
        return false;
    }
    if Var::ALL.iter().any(|&v| witness.marginal(v) != Rational::HALF) {
        return false;
    }
    let pairs = [(Var::A, Var::B), (Var::B, Var::C), (Var::A, Var::C)];
    if pairs.iter().any(|&(x, y)| witness.pair(x, y) != targets.pair(x, y)) {
        return false;
    }
    let Ok((space, [a, b, c])) = witness.to_space() else {
        return false;
    };
    matches!(classical_wigner_conditional(&space, &a, &b, &c), Ok(rep) if rep.holds())
}
