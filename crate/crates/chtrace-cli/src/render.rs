//! Text rendering of tables and verdicts; the prediction-table format is
//! golden-tested, so changes here are format changes.

use chtrace::decompose::{TrialOutcome, VerdictReport};
use chtrace::root_data::PredictionTable;

pub fn prediction_table(t: &PredictionTable) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "prediction table: {}{}  ell = {}\n",
        t.type_letter, t.rank, t.ell
    ));
    out.push_str(&format!(
        "  N = {} positive roots, rank n = {}, s = {} (-w0 orbits)\n",
        t.n_pos, t.rank, t.s_orbits
    ));
    for (name, exp, value) in t.rows() {
        out.push_str(&format!("  {name:<24} = {}^{exp} = {value}\n", t.ell));
    }
    out
}

pub fn verdict(v: &VerdictReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} at ell = {}: {} pass, {} inconclusive, {} fail of {} trial(s)\n",
        v.kind,
        v.ell,
        v.pass_count,
        v.inconclusive_count,
        v.fail_count,
        v.trials.len()
    ));
    let (count, dim, mult) = if v.kind == "branching" {
        (
            v.expected.branch_count,
            v.expected.branch_dim,
            v.expected.branch_mult,
        )
    } else if let Some(r) = v.rescale_r {
        (1, v.expected.irrep_dim, r)
    } else {
        (
            v.expected.tensor_summands,
            v.expected.irrep_dim,
            v.expected.tensor_mult,
        )
    };
    out.push_str(&format!(
        "  expected per trial: {count} summand(s) of dim {dim} with multiplicity {mult}\n",
    ));
    for t in &v.trials {
        match &t.outcome {
            TrialOutcome::Pass => {
                out.push_str(&format!(
                    "  trial {:>3} seed {:>20}: pass ({} summands)\n",
                    t.index,
                    t.seed,
                    t.summand_count.unwrap_or(0)
                ));
            }
            TrialOutcome::Inconclusive(msg) => {
                out.push_str(&format!(
                    "  trial {:>3} seed {:>20}: inconclusive ({msg})\n",
                    t.index, t.seed
                ));
            }
            TrialOutcome::Fail(msg) => {
                out.push_str(&format!(
                    "  trial {:>3} seed {:>20}: FAIL ({msg})\n",
                    t.index, t.seed
                ));
            }
        }
    }
    out
}
