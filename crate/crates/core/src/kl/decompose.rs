//! The canonical transfinite alternating decomposition and generalized
//! alternating sums.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kl::function::{CombineOp, FinitaryFunction};
use crate::ordinal::{Ordinal, Parity};

/// Successor steps tried before the stage-ω check, and again after it.
pub const DEFAULT_BUDGET: usize = 64;

/// Stage index: `n` below ω or `ω + n`.
fn stage_ordinal(limit_at: Option<usize>, i: usize) -> Ordinal {
    match limit_at {
        Some(l) if i >= l => Ordinal::omega().add_finite((i - l) as u64),
        _ => Ordinal::from(i as u64),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool, detail: Option<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    /// `f_0, …, f_ξ`.
    pub stages: Vec<FinitaryFunction>,
    /// `g_0, …, g_ξ`.
    pub trace: Vec<FinitaryFunction>,
    /// Ordinal index of every stage.
    pub indices: Vec<Ordinal>,
    pub rank: Ordinal,
}

impl Decomposition {
    pub fn stage(&self, i: &Ordinal) -> Option<&FinitaryFunction> {
        self.indices.iter().position(|x| x == i).map(|p| &self.stages[p])
    }

    /// Stages as an ordinal-indexed list for [`star_sum`].
    pub fn stage_list(&self) -> StageList {
        StageList {
            entries: self.indices.iter().cloned().zip(self.stages.iter().cloned()).collect(),
        }
    }
}

/// Runs the decomposition with the default budget.
pub fn decompose(f: &FinitaryFunction) -> Result<Decomposition> {
    decompose_with_budget(f, DEFAULT_BUDGET)
}

pub fn decompose_with_budget(f: &FinitaryFunction, budget: usize) -> Result<Decomposition> {
    if f.min() < num_traits::Zero::zero() {
        return Err(Error::Validation("decompose needs a nonnegative function".into()));
    }
    let mut gs = vec![f.clone()];
    let mut fs = vec![f.envelope()];
    let mut limit_at: Option<usize> = None;
    loop {
        let i = fs.len() - 1;
        let g_next = fs[i].sub_nonneg(&gs[i])?;
        let f_next = g_next.envelope();
        if f_next.equals(&fs[i]) {
            let rank = stage_ordinal(limit_at, i);
            let indices = (0..=i).map(|j| stage_ordinal(limit_at, j)).collect();
            return Ok(Decomposition {
                stages: fs,
                trace: gs,
                indices,
                rank,
            });
        }
        gs.push(g_next);
        fs.push(f_next);
        let steps = fs.len() - 1 - limit_at.unwrap_or(0);
        if steps >= budget {
            if limit_at.is_some() {
                return Err(Error::BudgetExceeded { steps: fs.len(), trace: gs });
            }
            // Stage ω: the even g's must have settled.
            let n = gs.len();
            let last_even = if (n - 1) % 2 == 0 { n - 1 } else { n - 2 };
            if last_even < 2 || !gs[last_even].equals(&gs[last_even - 2]) {
                return Err(Error::BudgetExceeded { steps: fs.len(), trace: gs });
            }
            let g_omega = gs[last_even].clone();
            let f_omega = g_omega.envelope();
            // Drop the unsettled tail beyond the stable point; it is not part
            // of the ω-indexed sequence.
            gs.push(g_omega);
            fs.push(f_omega);
            limit_at = Some(fs.len() - 1);
        }
    }
}

/// A stage sequence with ordinal indices `0, 1, …` possibly followed by `ω, ω+1, …`.
#[derive(Clone, Debug, PartialEq)]
pub struct StageList {
    pub entries: Vec<(Ordinal, FinitaryFunction)>,
}

impl StageList {
    pub fn finite(stages: &[FinitaryFunction]) -> StageList {
        StageList {
            entries: stages
                .iter()
                .enumerate()
                .map(|(i, f)| (Ordinal::from(i as u64), f.clone()))
                .collect(),
        }
    }
}

fn signed_add(acc: &FinitaryFunction, f: &FinitaryFunction, at: &Ordinal) -> Result<FinitaryFunction> {
    match at.parity() {
        Parity::Even => acc.combine(f, CombineOp::Add),
        Parity::Odd => acc.combine(f, CombineOp::Sub),
    }
}

/// `Σ*_{β<upto} (−1)^β f_β`.
pub fn star_sum(stages: &StageList, upto: &Ordinal) -> Result<FinitaryFunction> {
    let k = match stages.entries.first() {
        Some((_, f)) => f.k(),
        None if upto.is_zero() => {
            return Err(Error::Precondition("an empty stage list has no space".into()));
        }
        None => return Err(Error::Precondition("upto exceeds the stage list".into())),
    };
    let mut acc = FinitaryFunction::constant(k, num_traits::Zero::zero());
    let Some((omegas, m)) = upto.as_omega_linear() else {
        return Err(Error::NotStabilized);
    };
    if omegas > 1 {
        return Err(Error::NotStabilized);
    }
    let finite: Vec<&FinitaryFunction> = stages
        .entries
        .iter()
        .take_while(|(i, _)| i.as_finite().is_some())
        .map(|(_, f)| f)
        .collect();
    if omegas == 0 {
        if m as usize > finite.len() {
            return Err(Error::Precondition(format!(
                "upto {m} exceeds {} stages",
                finite.len()
            )));
        }
        for (i, f) in finite.iter().take(m as usize).enumerate() {
            acc = signed_add(&acc, f, &Ordinal::from(i as u64))?;
        }
        return Ok(acc);
    }
    // Sup over even partial sums, required to have settled.
    let mut partial = vec![acc.clone()];
    for (i, f) in finite.iter().enumerate() {
        acc = signed_add(&acc, f, &Ordinal::from(i as u64))?;
        partial.push(acc.clone());
    }
    let n = partial.len() - 1;
    let last_even = n - n % 2;
    if last_even < 2 || !partial[last_even].equals(&partial[last_even - 2]) {
        return Err(Error::NotStabilized);
    }
    let mut acc = partial[last_even].clone();
    let beyond: Vec<_> = stages.entries.iter().filter(|(i, _)| i.as_finite().is_none()).collect();
    if m as usize > beyond.len() {
        return Err(Error::Precondition(format!("upto {upto} exceeds the stage list")));
    }
    for (i, f) in beyond.iter().take(m as usize) {
        acc = signed_add(&acc, f, i)?;
    }
    Ok(acc)
}

/// Checks the decomposition invariants and reconstruction identities.
pub fn verify(f: &FinitaryFunction, d: &Decomposition) -> Result<Verification> {
    let mut checks = Vec::new();
    let bound = f.sup();
    let non_usc: Vec<String> = d
        .stages
        .iter()
        .zip(&d.indices)
        .filter(|(s, _)| !s.is_usc())
        .map(|(_, i)| i.to_string())
        .collect();
    checks.push(Check::new(
        "stages_usc",
        non_usc.is_empty(),
        (!non_usc.is_empty()).then(|| format!("not USC at {}", non_usc.join(", "))),
    ));
    let mut decreasing = true;
    for w in d.stages.windows(2) {
        decreasing &= w[1].le(&w[0])?;
    }
    checks.push(Check::new("stages_decreasing", decreasing, None));
    let last = d.stages.last().expect("nonempty");
    checks.push(Check::new("final_stage_zero", last.is_zero(), None));
    let neg = d.trace.iter().any(|g| g.min() < num_traits::Zero::zero());
    checks.push(Check::new("trace_nonnegative", !neg, None));
    let bounded = d.stages.iter().all(|s| s.sup() <= bound);
    checks.push(Check::new("stages_bounded", bounded, None));
    let list = d.stage_list();
    let mut failed_at = Vec::new();
    for (i, idx) in d.indices.iter().enumerate() {
        let partial = star_sum(&list, idx)?;
        let rebuilt = signed_add(&partial, &d.trace[i], idx)?;
        if !rebuilt.equals(f) {
            failed_at.push(idx.to_string());
        }
    }
    checks.push(Check::new(
        "partial_identity",
        failed_at.is_empty(),
        (!failed_at.is_empty()).then(|| format!("fails at {}", failed_at.join(", "))),
    ));
    let full = star_sum(&list, &d.rank)?;
    checks.push(Check::new("reconstruction", full.equals(f), None));
    Ok(Verification { checks })
}

/// Result of comparing the decompositions of `f0 <_p f1`.
#[derive(Clone, Debug, PartialEq)]
pub struct StageComparison {
    pub delta: Ordinal,
    pub parity: Parity,
    /// `(f⁰_δ, f¹_δ)`.
    pub pair: (FinitaryFunction, FinitaryFunction),
    pub d0: Decomposition,
    pub d1: Decomposition,
}

/// Least stage index where the two stage sequences differ. A sequence that
/// has ended reads as 0 beyond its rank.
pub fn first_differing_stage(d0: &Decomposition, d1: &Decomposition) -> Option<(Ordinal, FinitaryFunction, FinitaryFunction)> {
    let n = d0.stages.len().max(d1.stages.len());
    for i in 0..n {
        let (idx, a, b) = match (d0.stages.get(i), d1.stages.get(i)) {
            (Some(a), Some(b)) => (d0.indices[i].clone(), a.clone(), b.clone()),
            (Some(a), None) => (d0.indices[i].clone(), a.clone(), FinitaryFunction::constant(a.k(), num_traits::Zero::zero())),
            (None, Some(b)) => (d1.indices[i].clone(), FinitaryFunction::constant(b.k(), num_traits::Zero::zero()), b.clone()),
            (None, None) => unreachable!(),
        };
        if i < d0.indices.len() && i < d1.indices.len() && d0.indices[i] != d1.indices[i] {
            return Some((idx, a, b));
        }
        if !a.equals(&b) {
            return Some((idx, a, b));
        }
    }
    None
}

pub fn compare_decompositions(f0: &FinitaryFunction, f1: &FinitaryFunction) -> Result<StageComparison> {
    compare_decompositions_with(f0, f1, Ordinal::parity)
}

/// [`compare_decompositions`] with a substitutable parity function.
pub fn compare_decompositions_with(
    f0: &FinitaryFunction,
    f1: &FinitaryFunction,
    parity: fn(&Ordinal) -> Parity,
) -> Result<StageComparison> {
    if !f0.lt(f1)? {
        return Err(Error::NotComparable);
    }
    let d0 = decompose(f0)?;
    let d1 = decompose(f1)?;
    let (delta, a, b) = first_differing_stage(&d0, &d1).ok_or_else(|| Error::ParityViolation {
        delta: Ordinal::zero(),
        detail: "strictly ordered functions with identical decompositions".into(),
    })?;
    let p = parity(&delta);
    let ok = match p {
        Parity::Even => a.lt(&b)?,
        Parity::Odd => b.lt(&a)?,
    };
    if !ok {
        return Err(Error::ParityViolation {
            delta: delta.clone(),
            detail: format!(
                "stage pair not ordered as {} index requires: f0_δ = {}, f1_δ = {}",
                p.as_str(),
                a.to_json(),
                b.to_json()
            ),
        });
    }
    Ok(StageComparison {
        delta,
        parity: p,
        pair: (a, b),
        d0,
        d1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kl::function::tests::{chi_below_omega, chi_omega};
    use crate::rational::qi;

    #[test]
    fn zero_function() {
        let z = FinitaryFunction::constant(1, qi(0));
        let d = decompose(&z).unwrap();
        assert_eq!(d.rank, Ordinal::zero());
        assert_eq!(d.stages.len(), 1);
        assert!(verify(&z, &d).unwrap().all_passed());
    }

    #[test]
    fn closed_singleton() {
        let f = chi_omega();
        let d = decompose(&f).unwrap();
        assert_eq!(d.rank, Ordinal::one());
        assert!(d.stages[0].equals(&f));
        assert!(d.stages[1].is_zero());
        assert!(verify(&f, &d).unwrap().all_passed());
    }

    #[test]
    fn open_initial_segment() {
        let f = chi_below_omega();
        let d = decompose(&f).unwrap();
        assert_eq!(d.rank, Ordinal::from(2));
        assert!(d.stages[0].equals(&FinitaryFunction::constant(1, qi(1))));
        assert!(d.stages[1].equals(&chi_omega()));
        assert!(d.stages[2].is_zero());
        let rebuilt = d.stages[0].combine(&d.stages[1], CombineOp::Sub).unwrap();
        assert!(rebuilt.equals(&f));
        let v = verify(&f, &d).unwrap();
        assert!(v.all_passed(), "{v:?}");
    }

    #[test]
    fn star_sum_examples() {
        let stages = StageList::finite(&[
            FinitaryFunction::constant(1, qi(1)),
            chi_omega(),
            FinitaryFunction::constant(1, qi(0)),
        ]);
        assert!(star_sum(&stages, &Ordinal::from(2)).unwrap().equals(&chi_below_omega()));
        assert!(star_sum(&stages, &Ordinal::zero()).unwrap().is_zero());
        let single = StageList::finite(&[chi_omega()]);
        assert!(star_sum(&single, &Ordinal::one()).unwrap().equals(&chi_omega()));
        assert!(matches!(
            star_sum(&single, &Ordinal::omega()),
            Err(Error::NotStabilized)
        ));
    }

    #[test]
    fn compare_examples() {
        let one = FinitaryFunction::constant(1, qi(1));
        let c = compare_decompositions(&chi_omega(), &one).unwrap();
        assert_eq!(c.delta, Ordinal::zero());
        assert!(c.pair.0.lt(&c.pair.1).unwrap());
        let c = compare_decompositions(&chi_below_omega(), &one).unwrap();
        assert_eq!(c.delta, Ordinal::one());
        assert_eq!(c.parity, Parity::Odd);
        assert!(c.pair.0.equals(&chi_omega()));
        assert!(c.pair.1.is_zero());
        assert!(matches!(compare_decompositions(&one, &one), Err(Error::NotComparable)));
    }

    #[test]
    fn flipped_parity_is_caught() {
        let one = FinitaryFunction::constant(1, qi(1));
        let r = compare_decompositions_with(&chi_below_omega(), &one, |o| o.parity().flip());
        assert!(matches!(r, Err(Error::ParityViolation { .. })));
    }

    #[test]
    fn tiny_budget_reports_trace() {
        let r = decompose_with_budget(&chi_below_omega(), 1);
        match r {
            Err(Error::BudgetExceeded { trace, .. }) => assert!(!trace.is_empty()),
            other => panic!("{other:?}"),
        }
    }
}
