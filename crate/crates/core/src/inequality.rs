//! Bell and Wigner inequality checks, classical and quantum.
//!
//! Reports carry a `slack` oriented so that `slack >= 0` means the
//! inequality holds. Exact reports (built from a finite probability space)
//! are violated iff `slack < 0`; float reports iff `slack < -FLOAT_TOL`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prob::{DichotomicVariable, EventProbability, FiniteProbabilitySpace};
use crate::qubit::{quantum_conditional, transition_probability, SpinObservable};
use crate::rational::Rational;
use crate::sign::Sign;

/// Violation threshold for float-valued reports.
pub const FLOAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InequalityKind {
    /// `|⟨a,b⟩ − ⟨c,b⟩| ≤ 1 − ⟨a,c⟩`
    BellCovariation,
    /// `P(a=+1, b=+1) + P(b=−1, c=+1) ≥ P(a=+1, c=+1)`
    WignerJoint,
    /// `P(a=+1|b=+1) + P(c=+1|b=−1) ≥ P(a=+1|c=+1)`
    WignerConditional,
    /// `cos²3θ + sin²2θ ≥ cos²θ`
    TrigSpecial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64(),
            Value::Float(x) => x,
        }
    }

    pub fn exact(self) -> Option<Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ReportInputs {
    Variables {
        space: FiniteProbabilitySpace,
        a: DichotomicVariable,
        b: DichotomicVariable,
        c: DichotomicVariable,
    },
    Conditionals {
        pab: Value,
        pcb: Value,
        pac: Value,
    },
    Angles {
        theta1: f64,
        theta2: f64,
        theta3: f64,
    },
    Theta {
        theta: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub kind: InequalityKind,
    pub lhs: Value,
    pub rhs: Value,
    pub slack: Value,
    pub violated: bool,
    pub inputs: ReportInputs,
}

impl InequalityReport {
    fn exact(kind: InequalityKind, lhs: Rational, rhs: Rational, slack: Rational, inputs: ReportInputs) -> Self {
        InequalityReport {
            kind,
            lhs: Value::Exact(lhs),
            rhs: Value::Exact(rhs),
            slack: Value::Exact(slack),
            violated: slack.is_negative(),
            inputs,
        }
    }

    fn float(kind: InequalityKind, lhs: f64, rhs: f64, slack: f64, inputs: ReportInputs) -> Self {
        InequalityReport {
            kind,
            lhs: Value::Float(lhs),
            rhs: Value::Float(rhs),
            slack: Value::Float(slack),
            violated: slack < -FLOAT_TOL,
            inputs,
        }
    }

    pub fn holds(&self) -> bool {
        !self.violated
    }
}

fn variables(space: &FiniteProbabilitySpace, a: &DichotomicVariable, b: &DichotomicVariable, c: &DichotomicVariable) -> ReportInputs {
    ReportInputs::Variables {
        space: space.clone(),
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    }
}

/// Bell's inequality for covariations, in exact arithmetic.
pub fn bell_covariation_check(
    space: &FiniteProbabilitySpace,
    a: &DichotomicVariable,
    b: &DichotomicVariable,
    c: &DichotomicVariable,
) -> Result<InequalityReport> {
    let ab = space.covariation(a, b)?;
    let cb = space.covariation(c, b)?;
    let ac = space.covariation(a, c)?;
    let lhs = (ab - cb).abs();
    let rhs = Rational::ONE - ac;
    Ok(InequalityReport::exact(
        InequalityKind::BellCovariation,
        lhs,
        rhs,
        rhs - lhs,
        variables(space, a, b, c),
    ))
}

/// Wigner's inequality on joint probabilities, in exact arithmetic.
pub fn wigner_joint_check(
    space: &FiniteProbabilitySpace,
    a: &DichotomicVariable,
    b: &DichotomicVariable,
    c: &DichotomicVariable,
) -> Result<InequalityReport> {
    let lhs = space.joint_prob(a, Sign::Plus, b, Sign::Plus)?.value()
        + space.joint_prob(b, Sign::Minus, c, Sign::Plus)?.value();
    let rhs = space.joint_prob(a, Sign::Plus, c, Sign::Plus)?.value();
    Ok(InequalityReport::exact(
        InequalityKind::WignerJoint,
        lhs,
        rhs,
        lhs - rhs,
        variables(space, a, b, c),
    ))
}

/// Conditional Wigner inequality for float conditionals from any source.
pub fn wigner_conditional_check(pab: f64, pcb: f64, pac: f64) -> Result<InequalityReport> {
    for p in [pab, pcb, pac] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange(p));
        }
    }
    let (lhs, rhs) = (pab + pcb, pac);
    Ok(InequalityReport::float(
        InequalityKind::WignerConditional,
        lhs,
        rhs,
        lhs - rhs,
        ReportInputs::Conditionals {
            pab: Value::Float(pab),
            pcb: Value::Float(pcb),
            pac: Value::Float(pac),
        },
    ))
}

/// Conditional Wigner inequality for exact conditionals; zero tolerance.
pub fn wigner_conditional_check_exact(
    pab: EventProbability,
    pcb: EventProbability,
    pac: EventProbability,
) -> InequalityReport {
    let lhs = pab.value() + pcb.value();
    let rhs = pac.value();
    InequalityReport::exact(
        InequalityKind::WignerConditional,
        lhs,
        rhs,
        lhs - rhs,
        ReportInputs::Conditionals {
            pab: Value::Exact(pab.value()),
            pcb: Value::Exact(pcb.value()),
            pac: Value::Exact(pac.value()),
        },
    )
}

/// Bayes conditionals `P(a=+1|b=+1)`, `P(c=+1|b=−1)`, `P(a=+1|c=+1)` of a
/// classical space fed to [`wigner_conditional_check_exact`].
pub fn classical_wigner_conditional(
    space: &FiniteProbabilitySpace,
    a: &DichotomicVariable,
    b: &DichotomicVariable,
    c: &DichotomicVariable,
) -> Result<InequalityReport> {
    let pab = space.bayes_conditional(a, Sign::Plus, b, Sign::Plus)?;
    let pcb = space.bayes_conditional(c, Sign::Plus, b, Sign::Minus)?;
    let pac = space.bayes_conditional(a, Sign::Plus, c, Sign::Plus)?;
    Ok(wigner_conditional_check_exact(pab, pcb, pac))
}

/// Conditional Wigner inequality evaluated on three spin projections.
///
/// Uses the closed-form conditional matrices and cross-checks every term
/// against the inner products of the analytic eigenvectors.
pub fn quantum_wigner_conditional(theta1: f64, theta2: f64, theta3: f64) -> Result<InequalityReport> {
    let s1 = SpinObservable::new(theta1)?;
    let s2 = SpinObservable::new(theta2)?;
    let s3 = SpinObservable::new(theta3)?;
    let pab = quantum_conditional(&s1, &s2).get(Sign::Plus, Sign::Plus);
    let pcb = quantum_conditional(&s3, &s2).get(Sign::Plus, Sign::Minus);
    let pac = quantum_conditional(&s1, &s3).get(Sign::Plus, Sign::Plus);

    let routes = [
        (pab, &s1, Sign::Plus, &s2, Sign::Plus),
        (pcb, &s3, Sign::Plus, &s2, Sign::Minus),
        (pac, &s1, Sign::Plus, &s3, Sign::Plus),
    ];
    for (closed, x, xs, y, ys) in routes {
        let inner = transition_probability(&x.eigenvector(xs), &y.eigenvector(ys))?;
        let gap = (closed - inner).abs();
        if gap > FLOAT_TOL {
            return Err(Error::CrossCheckFailed(gap));
        }
    }

    let mut report = wigner_conditional_check(pab, pcb, pac)?;
    report.inputs = ReportInputs::Angles { theta1, theta2, theta3 };
    Ok(report)
}

fn trig_terms(theta: f64) -> Result<(f64, f64)> {
    if !theta.is_finite() {
        return Err(Error::NonFiniteAngle(theta));
    }
    let c3 = (3.0 * theta).cos();
    let s2 = (2.0 * theta).sin();
    let c1 = theta.cos();
    Ok((c3 * c3 + s2 * s2, c1 * c1))
}

/// `f(θ) = cos²3θ + sin²2θ − cos²θ`; negative means violation.
pub fn trig_specialization(theta: f64) -> Result<f64> {
    let (lhs, rhs) = trig_terms(theta)?;
    Ok(lhs - rhs)
}

/// Report form of [`trig_specialization`].
pub fn trig_report(theta: f64) -> Result<InequalityReport> {
    let (lhs, rhs) = trig_terms(theta)?;
    Ok(InequalityReport::float(
        InequalityKind::TrigSpecial,
        lhs,
        rhs,
        lhs - rhs,
        ReportInputs::Theta { theta },
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationScanResult {
    pub grid: Vec<f64>,
    pub reports: Vec<InequalityReport>,
    /// Index into `grid`/`reports` of the minimal slack.
    pub worst: usize,
}

impl ViolationScanResult {
    pub fn worst_report(&self) -> &InequalityReport {
        &self.reports[self.worst]
    }

    pub fn violation_count(&self) -> usize {
        self.reports.iter().filter(|r| r.violated).count()
    }

    /// Smallest and largest grid angle flagged as violating, if any.
    pub fn violation_extent(&self) -> Option<(f64, f64)> {
        let mut it = self
            .grid
            .iter()
            .zip(&self.reports)
            .filter(|(_, r)| r.violated)
            .map(|(t, _)| *t);
        let first = it.next()?;
        let last = it.next_back().unwrap_or(first);
        Some((first, last))
    }

    /// CSV with header `theta,f,violated`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,f,violated\n");
        for (t, r) in self.grid.iter().zip(&self.reports) {
            out.push_str(&format!("{},{},{}\n", t, r.slack.to_f64(), r.violated));
        }
        out
    }
}

fn check_range(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::BadRange(format!("bounds must be finite, got [{lo}, {hi}]")));
    }
    if lo >= hi {
        return Err(Error::BadRange(format!("lower bound {lo} is not below upper bound {hi}")));
    }
    Ok(())
}

fn uniform_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == last {
                hi
            } else {
                lo + (hi - lo) * (i as f64) / (last as f64)
            }
        })
        .collect()
}

/// First index of the minimum, so ties resolve to the lowest grid index.
fn argmin(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = (0, f64::INFINITY);
    for (i, v) in values.into_iter().enumerate() {
        if v < best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Evaluates the trigonometric specialization on `steps` evenly spaced
/// angles covering `[theta_min, theta_max]` inclusive.
pub fn scan_violations(theta_min: f64, theta_max: f64, steps: usize) -> Result<ViolationScanResult> {
    check_range(theta_min, theta_max)?;
    if steps < 2 {
        return Err(Error::BadRange(format!("need at least 2 steps, got {steps}")));
    }
    let grid = uniform_grid(theta_min, theta_max, steps);
    let reports = grid
        .par_iter()
        .map(|&t| trig_report(t))
        .collect::<Result<Vec<_>>>()?;
    let worst = argmin(reports.iter().map(|r| r.slack.to_f64()));
    Ok(ViolationScanResult { grid, reports, worst })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimizer {
    pub theta: f64,
    pub value: f64,
}

const BRACKET_INTERVALS: usize = 64;

/// Minimizes `f` on `[theta_lo, theta_hi]`: a 65-point grid picks the
/// bracketing cell pair, then golden-section search narrows it to `tol`.
pub fn maximize_violation(theta_lo: f64, theta_hi: f64, tol: f64) -> Result<Minimizer> {
    check_range(theta_lo, theta_hi)?;
    // Written this way so NaN is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(tol > 0.0) {
        return Err(Error::NonPositiveTolerance(tol));
    }
    let f = |t: f64| trig_specialization(t).expect("finite by construction");

    let grid = uniform_grid(theta_lo, theta_hi, BRACKET_INTERVALS + 1);
    let i = argmin(grid.iter().map(|&t| f(t)));
    let mut a = grid[i.saturating_sub(1)];
    let mut b = grid[(i + 1).min(BRACKET_INTERVALS)];

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    let candidates = [(mid, f(mid)), (grid[i], f(grid[i]))];
    let (theta, value) = candidates
        .into_iter()
        .fold((f64::NAN, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best });
    Ok(Minimizer { theta, value })
}
