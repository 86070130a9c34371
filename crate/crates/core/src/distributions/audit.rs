//! Exhaustive correlation-gap audit.
//!
//! For every conjunction of at most `w` literals with non-zero probability
//! and every variable outside it, the conditional `q = Pr[x=1 | cond]` is
//! computed exactly. Its margin `min(q, 1-q)` classifies the variable as
//! balanced (margin above the cutoff) or implied (margin at or below it,
//! the implied literal being the likelier value).

use serde::{Deserialize, Serialize};

use super::{DistError, ExactProbability};
use crate::exec::Execution;
use crate::logic::{clause_count, enumerate_clauses, Literal, Var};

/// Upper bound on `conditions × variables` evaluated by one audit.
pub const AUDIT_LIMIT: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Implication {
    pub condition: Vec<Literal>,
    pub implied: Literal,
    /// `Pr[implied | condition]`.
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub width: usize,
    pub conditions_checked: usize,
    pub zero_probability_skipped: usize,
    /// Margin separating balanced from implied.
    pub cutoff: f64,
    /// Smallest margin among balanced pairs.
    pub beta_found: Option<f64>,
    /// Largest margin among implied pairs.
    pub gamma_found: Option<f64>,
    /// Every distinct conditional `Pr[x=1 | cond]` seen, ascending.
    pub distinct_conditionals: Vec<f64>,
    pub implied: Vec<Implication>,
}

type ConditionRow = Option<Vec<(Var, f64)>>;

/// Audit the width-`w` correlation gap of `source`.
///
/// With `cutoff = None` the split is placed at the midpoint of the widest
/// gap between consecutive distinct margins; a single distinct margin is
/// balanced when positive.
pub fn audit_correlation_gap(
    source: &dyn ExactProbability,
    w: usize,
    cutoff: Option<f64>,
    exec: Execution,
) -> Result<GapReport, DistError> {
    let n = source.num_vars();
    let w = w.min(n);
    let required = (clause_count(n, w) + 1).saturating_mul(n as u128);
    if required > AUDIT_LIMIT {
        return Err(DistError::TooLarge { required, limit: AUDIT_LIMIT });
    }
    let mut conditions: Vec<Vec<Literal>> = vec![Vec::new()];
    conditions.extend(enumerate_clauses(n, w).expect("w <= n").map(|c| c.literals().to_vec()));

    // (variable, q) for every satisfiable condition; None when it has probability zero
    let per_condition: Vec<Result<ConditionRow, DistError>> = exec.map(&conditions, |cond| {
        let p_cond = source.conjunction_probability(cond)?;
        if p_cond <= 0.0 {
            return Ok(None);
        }
        let mut out = Vec::new();
        for v in 0..n {
            let var = Var(v as u32);
            if cond.iter().any(|l| l.var() == var) {
                continue;
            }
            let mut joint = cond.clone();
            joint.push(var.positive());
            out.push((var, source.conjunction_probability(&joint)? / p_cond));
        }
        Ok(Some(out))
    });

    let mut rows = Vec::new();
    let mut skipped = 0;
    for (ci, r) in per_condition.into_iter().enumerate() {
        match r? {
            None => skipped += 1,
            Some(vals) => rows.extend(vals.into_iter().map(|(v, q)| (ci, v, q))),
        }
    }

    let margin = |q: f64| q.min(1.0 - q);
    let cutoff = cutoff.unwrap_or_else(|| widest_gap_cutoff(rows.iter().map(|r| margin(r.2)).collect()));

    let mut distinct: Vec<f64> = rows.iter().map(|r| r.2).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();

    let mut beta_found: Option<f64> = None;
    let mut gamma_found: Option<f64> = None;
    let mut implied = Vec::new();
    for &(ci, var, q) in &rows {
        let m = margin(q);
        if m > cutoff {
            beta_found = Some(beta_found.map_or(m, |b| b.min(m)));
        } else {
            gamma_found = Some(gamma_found.map_or(m, |g| g.max(m)));
            let (lit, p) = if q >= 0.5 { (var.positive(), q) } else { (var.negative(), 1.0 - q) };
            implied.push(Implication { condition: conditions[ci].clone(), implied: lit, probability: p });
        }
    }

    Ok(GapReport {
        width: w,
        conditions_checked: conditions.len() - skipped,
        zero_probability_skipped: skipped,
        cutoff,
        beta_found,
        gamma_found,
        distinct_conditionals: distinct,
        implied,
    })
}

fn widest_gap_cutoff(mut margins: Vec<f64>) -> f64 {
    margins.sort_by(f64::total_cmp);
    margins.dedup();
    match margins.len() {
        0 => 0.0,
        // a lone positive margin is balanced; a lone zero is implied
        1 => margins[0] / 2.0,
        _ => {
            let (i, _) = margins
                .windows(2)
                .enumerate()
                .map(|(i, p)| (i, p[1] - p[0]))
                .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
            (margins[i] + margins[i + 1]) / 2.0
        }
    }
}
