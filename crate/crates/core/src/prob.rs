//! Finite Kolmogorov probability spaces with exact rational weights.
//!
//! The event algebra is the full power set of the atom list. Random
//! variables are `±1`-valued functions on atoms; every quantity computed
//! here (expectations, joint and conditional probabilities) is an exact
//! [`Rational`].

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct FiniteProbabilitySpace {
    weights: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    weights: Vec<Rational>,
}

impl TryFrom<SpaceRepr> for FiniteProbabilitySpace {
    type Error = Error;

    fn try_from(r: SpaceRepr) -> Result<Self> {
        FiniteProbabilitySpace::new(r.weights)
    }
}

impl From<FiniteProbabilitySpace> for SpaceRepr {
    fn from(s: FiniteProbabilitySpace) -> SpaceRepr {
        SpaceRepr { weights: s.weights }
    }
}

/// A `±1`-valued random variable, one entry per atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DichotomicVariable {
    values: Vec<Sign>,
}

/// Probability of an event; always in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventProbability(Rational);

impl EventProbability {
    pub fn value(self) -> Rational {
        self.0
    }
}

impl From<EventProbability> for Rational {
    fn from(p: EventProbability) -> Rational {
        p.0
    }
}

impl DichotomicVariable {
    pub fn new(values: Vec<Sign>) -> DichotomicVariable {
        DichotomicVariable { values }
    }

    /// Builds a variable from integer entries, each of which must be `±1`.
    pub fn from_values(values: &[i64]) -> Result<DichotomicVariable> {
        values
            .iter()
            .map(|&v| Sign::try_from(v))
            .collect::<Result<Vec<_>>>()
            .map(DichotomicVariable::new)
    }

    pub fn constant(sign: Sign, atoms: usize) -> DichotomicVariable {
        DichotomicVariable::new(vec![sign; atoms])
    }

    pub fn values(&self) -> &[Sign] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> DichotomicVariable {
        DichotomicVariable::new(self.values.iter().map(|&s| -s).collect())
    }
}

impl FiniteProbabilitySpace {
    /// Validates and stores the weights.
    pub fn new(weights: Vec<Rational>) -> Result<FiniteProbabilitySpace> {
        if weights.is_empty() {
            return Err(Error::EmptySpace);
        }
        if let Some((index, &value)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::NegativeWeight { index, value });
        }
        let sum: Rational = weights.iter().sum();
        if sum != Rational::ONE {
            return Err(Error::NotNormalized { sum });
        }
        Ok(FiniteProbabilitySpace { weights })
    }

    /// Equal weight on `n` atoms.
    pub fn uniform(n: usize) -> Result<FiniteProbabilitySpace> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let w = Rational::new(1, n as i128)?;
        FiniteProbabilitySpace::new(vec![w; n])
    }

    pub fn atom_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    fn check(&self, x: &DichotomicVariable) -> Result<()> {
        if x.len() != self.atom_count() {
            return Err(Error::DimensionMismatch {
                expected: self.atom_count(),
                found: x.len(),
            });
        }
        Ok(())
    }

    fn mass_where(&self, pred: impl Fn(usize) -> bool) -> Rational {
        self.weights
            .iter()
            .enumerate()
            .filter(|&(i, _)| pred(i))
            .map(|(_, w)| *w)
            .sum()
    }

    pub fn expectation(&self, x: &DichotomicVariable) -> Result<Rational> {
        self.check(x)?;
        Ok(self
            .weights
            .iter()
            .zip(x.values())
            .map(|(w, s)| match s {
                Sign::Plus => *w,
                Sign::Minus => -*w,
            })
            .sum())
    }

    /// `⟨x, y⟩ = E[xy]`.
    pub fn covariation(&self, x: &DichotomicVariable, y: &DichotomicVariable) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        let product = DichotomicVariable::new(x.values().iter().zip(y.values()).map(|(&a, &b)| a * b).collect());
        self.expectation(&product)
    }

    /// `P(x = alpha)`.
    pub fn marginal(&self, x: &DichotomicVariable, alpha: Sign) -> Result<EventProbability> {
        self.check(x)?;
        Ok(EventProbability(self.mass_where(|i| x.values[i] == alpha)))
    }

    /// `P(x = alpha, y = beta)`.
    pub fn joint_prob(
        &self,
        x: &DichotomicVariable,
        alpha: Sign,
        y: &DichotomicVariable,
        beta: Sign,
    ) -> Result<EventProbability> {
        self.check(x)?;
        self.check(y)?;
        Ok(EventProbability(
            self.mass_where(|i| x.values[i] == alpha && y.values[i] == beta),
        ))
    }

    /// `P(x = alpha | y = beta) = P(x = alpha, y = beta) / P(y = beta)`.
    ///
    /// Fails with [`Error::ZeroConditioningEvent`] when `P(y = beta) = 0`.
    pub fn bayes_conditional(
        &self,
        x: &DichotomicVariable,
        alpha: Sign,
        y: &DichotomicVariable,
        beta: Sign,
    ) -> Result<EventProbability> {
        let joint = self.joint_prob(x, alpha, y, beta)?.value();
        let cond = self.marginal(y, beta)?.value();
        if cond.is_zero() {
            return Err(Error::ZeroConditioningEvent);
        }
        Ok(EventProbability(joint / cond))
    }

    /// True iff `P(x = +1) = 1/2` exactly.
    pub fn is_symmetric(&self, x: &DichotomicVariable) -> Result<bool> {
        Ok(self.marginal(x, Sign::Plus)?.value() == Rational::HALF)
    }
}

/// A space together with three variables `a`, `b`, `c` on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomTriple {
    pub space: FiniteProbabilitySpace,
    pub a: DichotomicVariable,
    pub b: DichotomicVariable,
    pub c: DichotomicVariable,
}

/// Deterministic generator of spaces and variable triples for property tests.
///
/// Uses ChaCha8 seeded with `seed_from_u64(seed)`. Each weight is the top 16
/// bits of `next_u32` normalized by the total (redrawn if every weight is 0);
/// then `a`, `b`, `c` are filled atom by atom from the low bit of `next_u32`.
///
/// # Panics
///
/// If `atom_count == 0`.
pub fn random_space_and_variables(seed: u64, atom_count: usize) -> RandomTriple {
    assert!(atom_count >= 1, "atom_count must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = loop {
        let raw: Vec<i128> = (0..atom_count).map(|_| i128::from(rng.next_u32() >> 16)).collect();
        if raw.iter().any(|&w| w > 0) {
            break raw;
        }
    };
    let total: i128 = raw.iter().sum();
    let weights = raw
        .into_iter()
        .map(|w| Rational::new(w, total).expect("total is positive"))
        .collect();
    let space = FiniteProbabilitySpace::new(weights).expect("normalized by construction");
    let mut var = || {
        DichotomicVariable::new(
            (0..atom_count)
                .map(|_| if rng.next_u32() & 1 == 0 { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    };
    let (a, b, c) = (var(), var(), var());
    RandomTriple { space, a, b, c }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn v(xs: &[i64]) -> DichotomicVariable {
        DichotomicVariable::from_values(xs).unwrap()
    }

    fn space(ws: &[&str]) -> FiniteProbabilitySpace {
        FiniteProbabilitySpace::new(ws.iter().map(|w| r(w)).collect()).unwrap()
    }

    #[test]
    fn make_space_cases() {
        assert_eq!(space(&["1"]).atom_count(), 1);
        assert_eq!(space(&["1/2", "1/2"]).atom_count(), 2);
        assert_eq!(
            FiniteProbabilitySpace::new(vec![r("1/2"), r("2/3")]),
            Err(Error::NotNormalized { sum: r("7/6") })
        );
        assert!(matches!(
            FiniteProbabilitySpace::new(vec![r("-1/2"), r("3/2")]),
            Err(Error::NegativeWeight { index: 0, .. })
        ));
        assert_eq!(FiniteProbabilitySpace::new(vec![]), Err(Error::EmptySpace));
    }

    #[test]
    fn rejects_non_dichotomic_values() {
        assert_eq!(DichotomicVariable::from_values(&[1, 0]), Err(Error::InvalidSign(0)));
    }

    #[test]
    fn expectation_cases() {
        let u2 = FiniteProbabilitySpace::uniform(2).unwrap();
        assert_eq!(u2.expectation(&v(&[1, -1])).unwrap(), Rational::ZERO);
        let s = space(&["1/4", "3/4"]);
        assert_eq!(s.expectation(&v(&[1, 1])).unwrap(), Rational::ONE);
        assert_eq!(s.expectation(&v(&[1, -1])).unwrap(), r("-1/2"));
        assert_eq!(
            s.expectation(&v(&[1])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn covariation_cases() {
        let s = space(&["1/8", "3/8", "1/2"]);
        let x = v(&[1, -1, 1]);
        assert_eq!(s.covariation(&x, &x).unwrap(), Rational::ONE);
        assert_eq!(s.covariation(&x, &x.negated()).unwrap(), -Rational::ONE);
        let u4 = FiniteProbabilitySpace::uniform(4).unwrap();
        assert_eq!(
            u4.covariation(&v(&[1, 1, -1, -1]), &v(&[1, -1, 1, -1])).unwrap(),
            Rational::ZERO
        );
    }

    #[test]
    fn joint_prob_cases() {
        let u4 = FiniteProbabilitySpace::uniform(4).unwrap();
        let x = v(&[1, 1, -1, -1]);
        let y = v(&[1, -1, 1, -1]);
        assert_eq!(u4.joint_prob(&x, Sign::Plus, &x, Sign::Minus).unwrap().value(), Rational::ZERO);
        assert_eq!(u4.joint_prob(&x, Sign::Plus, &y, Sign::Plus).unwrap().value(), r("1/4"));
        let one = DichotomicVariable::constant(Sign::Plus, 4);
        assert_eq!(u4.joint_prob(&one, Sign::Plus, &one, Sign::Plus).unwrap().value(), Rational::ONE);
    }

    #[test]
    fn bayes_conditional_cases() {
        let u4 = FiniteProbabilitySpace::uniform(4).unwrap();
        let x = v(&[1, 1, -1, -1]);
        let y = v(&[1, -1, 1, -1]);
        assert_eq!(u4.bayes_conditional(&x, Sign::Plus, &x, Sign::Plus).unwrap().value(), Rational::ONE);
        assert_eq!(u4.bayes_conditional(&x, Sign::Plus, &y, Sign::Plus).unwrap().value(), r("1/2"));
        let one = DichotomicVariable::constant(Sign::Plus, 4);
        assert_eq!(
            u4.bayes_conditional(&x, Sign::Plus, &one, Sign::Minus),
            Err(Error::ZeroConditioningEvent)
        );
    }

    #[test]
    fn symmetry_cases() {
        let u2 = FiniteProbabilitySpace::uniform(2).unwrap();
        assert!(u2.is_symmetric(&v(&[1, -1])).unwrap());
        assert!(!space(&["1/3", "2/3"]).is_symmetric(&v(&[1, -1])).unwrap());
        let u4 = FiniteProbabilitySpace::uniform(4).unwrap();
        assert!(u4.is_symmetric(&v(&[1, 1, -1, -1])).unwrap());
    }

    #[test]
    fn generator_is_deterministic() {
        assert_eq!(random_space_and_variables(0, 8), random_space_and_variables(0, 8));
        assert_ne!(
            random_space_and_variables(0, 8).space,
            random_space_and_variables(1, 8).space
        );
        let point = random_space_and_variables(1, 1);
        assert_eq!(point.space.weights(), &[Rational::ONE]);
        assert_eq!(point.a.len(), 1);
    }

    #[test]
    fn space_json() {
        let s = space(&["1/4", "3/4"]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"weights":["1/4","3/4"]}"#);
        assert_eq!(serde_json::from_str::<FiniteProbabilitySpace>(&json).unwrap(), s);
        assert!(serde_json::from_str::<FiniteProbabilitySpace>(r#"{"weights":["1/4","1/4"]}"#).is_err());
    }

    proptest! {
        #[test]
        fn probability_laws(seed in any::<u64>(), atoms in 1usize..=16) {
            let RandomTriple { space, a: x, b: y, .. } = random_space_and_variables(seed, atoms);
            let cov = space.covariation(&x, &y).unwrap();
            prop_assert!((Rational::from(-1)..=Rational::ONE).contains(&cov), "covariation {} out of range", cov);
            prop_assert_eq!(space.covariation(&x, &x).unwrap(), Rational::ONE);
            for alpha in Sign::BOTH {
                let total = space.joint_prob(&x, alpha, &y, Sign::Plus).unwrap().value()
                    + space.joint_prob(&x, alpha, &y, Sign::Minus).unwrap().value();
                prop_assert_eq!(total, space.marginal(&x, alpha).unwrap().value());
                for beta in Sign::BOTH {
                    let joint = space.joint_prob(&x, alpha, &y, beta).unwrap().value();
                    let py = space.marginal(&y, beta).unwrap().value();
                    match space.bayes_conditional(&x, alpha, &y, beta) {
                        Ok(c) => prop_assert_eq!(c.value() * py, joint),
                        Err(e) => {
                            prop_assert_eq!(e, Error::ZeroConditioningEvent);
                            prop_assert!(py.is_zero());
                        }
                    }
                }
            }
        }
    }
}
