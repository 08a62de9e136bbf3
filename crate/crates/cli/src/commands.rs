use antisym_core::bounds::{
    ec_lower, er_lower, er_ppt_contrast, key_upper, purity_seesaw, squashed_upper, BoundReport, SeesawConfig,
};
use antisym_core::lp::{analytic_dual, build_zeta_with, solve_sym, verify_certificate, LpForm, Parity};
use antisym_core::rational::{int, pow, ratio, to_decimal, to_f64};
use antisym_core::werner::{verify_rep, OverlapRow};
use antisym_core::{Dimension, Error, TdVariant, ZetaMode};
use serde_json::json;

use crate::args::{BoundsArgs, DualArgs, PurityArgs, RepArgs, SquashedArgs, ZetaArgs};
use crate::report::{Outcome, Report, Row, Value};

/// Slack allowed between a see-saw estimate and the exact LP value.
const SANDWICH_TOL: f64 = 1e-6;

fn bound_row(b: &BoundReport) -> Row {
    let mut row = Row::new(b.name.clone(), Value::Real(b.value)).basis(b.provenance.clone());
    if let Some(n) = b.params.n {
        row = row.n(n);
    }
    if let Some(d) = b.params.d {
        row = row.d(d);
    }
    row
}

pub fn squashed(args: &SquashedArgs) -> Result<Report, Error> {
    let d = args.d as usize;
    let s = squashed_upper(d)?;
    let dim = Dimension::Finite(d);
    let mut r = Report::new("squashed");
    r.push(bound_row(&s.report));
    r.push(
        Row::new("argmin k", Value::Exact(int(s.argmin as i64)))
            .d(dim)
            .basis("smallest minimizing k"),
    );
    r.detail("argmin", json!(s.argmin));
    r.detail(
        "core_ratio",
        json!({
            "num": s.table[s.argmin - 2].ratio.numer().to_string(),
            "den": s.table[s.argmin - 2].ratio.denom().to_string(),
        }),
    );
    if args.all_k {
        for c in &s.table {
            r.push(
                Row::new(format!("cmi ratio k={}", c.k), Value::Exact(c.ratio.clone()))
                    .d(dim)
                    .basis("cmi = log2(ratio)"),
            );
            r.push(Row::new(format!("cmi bits k={}", c.k), Value::Real(c.bits)).d(dim));
        }
        r.detail("table", serde_json::to_value(&s.table).expect("serializable"));
    }
    Ok(r)
}

pub fn zeta(args: &ZetaArgs) -> Result<Report, Error> {
    let n = args.n as usize;
    let d = match args.d {
        Some(d) => Dimension::Finite(d as usize),
        None => Dimension::Infinite,
    };
    let form = args.form.map(LpForm::from).unwrap_or(if d == Dimension::Infinite {
        LpForm::Truncated2
    } else {
        LpForm::Full3
    });
    let parity = Parity::from(args.parity);
    let variant = TdVariant::from(args.variant);
    let sym = build_zeta_with(n, d, parity, form, variant)?;
    let lp = sym.to_lp()?;
    let (value, sol) = solve_sym(&sym)?;
    verify_certificate(&lp, &sol).map_err(|e| Error::Solver(format!("certificate check failed: {e}")))?;
    if value <= int(0) {
        return Err(Error::Solver(format!("optimum {value} is not positive")));
    }

    let mut r = Report::new("lp zeta");
    r.push(Row::new("zeta", Value::Exact(value.clone())).n(n).d(d).basis("exact simplex optimum"));
    r.push(
        Row::new("dual objective", Value::Exact(sol.dual_value(&lp)))
            .n(n)
            .d(d)
            .basis("certificate"),
    );
    let ln = antisym_core::rational::log2(&value);
    r.push(Row::new("E_C lower", Value::Real(-ln / n as f64)).n(n).d(d).basis("-(1/n) log2 zeta"));
    r.push(Row::new("E_R lower", Value::Real(-ln / (2 * n) as f64)).n(n).d(d).basis("-(1/2n) log2 zeta"));
    r.detail(
        "lp",
        json!({
            "form": form,
            "parity": parity,
            "variant": variant,
            "variables": lp.num_vars(),
            "constraints": lp.constraints.len(),
            "pivots": sol.pivots,
        }),
    );
    r.detail(
        "primal",
        json!(sym
            .types
            .iter()
            .zip(&sol.x)
            .filter(|(_, q)| **q != int(0))
            .map(|(t, q)| json!({"type": t, "mass": q.to_string()}))
            .collect::<Vec<_>>()),
    );
    r.notes.push(format!(
        "{} variables, {} constraints, {} pivots; certificate verified",
        lp.num_vars(),
        lp.constraints.len(),
        sol.pivots
    ));
    Ok(r)
}

pub fn dual(args: &DualArgs) -> Result<Report, Error> {
    let n = args.n as usize;
    let beta = args.beta.clone().unwrap_or_else(|| ratio(1, 2));
    let gamma = args.gamma.clone().unwrap_or_else(|| pow(&int(2), -(n as i32)));
    let point = analytic_dual(n, &beta, &gamma)?;
    let mut r = Report::new("lp dual");
    r.push(Row::new("z", Value::Exact(point.z.clone())).n(n).basis("max right-hand side"));
    for (k, delta) in point.delta.iter().enumerate() {
        r.push(Row::new(format!("delta_{k}"), Value::Exact(delta.clone())).n(n));
    }
    r.push(Row::new("feasible", Value::Verdict(point.feasible)).n(n));
    r.push(Row::new("binomial identity", Value::Verdict(point.identity_holds)).n(n));
    r.detail("beta", json!(point.beta.to_string()));
    r.detail("gamma", json!(point.gamma.to_string()));
    r.detail("feasible", json!(point.feasible));
    r.detail(
        "rhs",
        json!(point.rhs.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    );
    r.notes.push(format!("feasible={}", point.feasible));
    if !point.feasible {
        r.outcome = Outcome::VerificationFailed(format!("dual point infeasible at n={n}"));
    }
    Ok(r)
}

pub fn verify(args: &RepArgs) -> Result<Report, Error> {
    let d = args.d as usize;
    let report = verify_rep(d, args.level.into())?;
    let dim = Dimension::Finite(d);
    let mut r = Report::new("verify rep");
    for c in &report.checks {
        r.push(Row::new(c.name.clone(), Value::Verdict(c.passed)).d(dim).basis(c.detail.clone()));
    }
    if let Some(table) = &report.overlap_table {
        for row in OverlapRow::ALL {
            for y in &table.columns {
                let v = table.get(row, *y).expect("present column").clone();
                r.push(
                    Row::new(format!("overlap {}/{y}", row.name()), Value::Exact(v))
                        .d(dim)
                        .basis("explicit matrices"),
                );
            }
        }
    }
    r.detail("level", json!(report.level));
    r.detail("checks", json!(report.checks.len()));
    r.detail("passed", json!(report.passed()));
    r.notes.push(format!(
        "{} of {} checks passed",
        report.checks.iter().filter(|c| c.passed).count(),
        report.checks.len()
    ));
    if let Some(c) = report.first_failure() {
        r.outcome = Outcome::VerificationFailed(format!("{} ({})", c.name, c.detail));
    }
    Ok(r)
}

pub fn bounds(args: &BoundsArgs) -> Result<Report, Error> {
    let (d, n) = (args.d as usize, args.n as usize);
    let dim = Dimension::Finite(d);
    let mut r = Report::new("bounds");
    r.push(bound_row(&key_upper(d)?));
    r.push(bound_row(&squashed_upper(d)?.report));
    for (dd, mode) in [
        (Dimension::Infinite, ZetaMode::Analytic),
        (Dimension::Infinite, ZetaMode::Lp),
        (dim, ZetaMode::Lp),
    ] {
        r.push(bound_row(&ec_lower(n, dd, mode)?));
    }
    for (dd, mode) in [(Dimension::Infinite, ZetaMode::Analytic), (Dimension::Infinite, ZetaMode::Lp)] {
        r.push(bound_row(&er_lower(n, dd, mode)?));
    }
    r.push(bound_row(&er_ppt_contrast(dim)?));
    r.notes.push("lower bounds computed at d=inf hold for every d".into());
    Ok(r)
}

pub fn purity(args: &PurityArgs) -> Result<Report, Error> {
    let (d, n) = (args.d as usize, args.n as usize);
    let config = SeesawConfig {
        n,
        d,
        restarts: args.restarts as usize,
        iterations: args.iters as usize,
        seed: args.seed,
    };
    let result = purity_seesaw(config)?;
    let dim = Dimension::Finite(d);
    let zeta = antisym_core::bounds::zeta_value(n, dim, ZetaMode::Lp)?;
    let holds = result.value <= to_f64(&zeta) + SANDWICH_TOL;
    let mut r = Report::new("purity");
    r.push(Row::new("purity", Value::Real(result.value)).n(n).d(dim).basis("see-saw"));
    r.push(Row::new("zeta", Value::Exact(zeta.clone())).n(n).d(dim).basis("exact simplex optimum"));
    r.push(Row::new("purity <= zeta", Value::Verdict(holds)).n(n).d(dim));
    r.detail("best_restart", json!(result.best_restart));
    r.detail("history", json!(result.history));
    r.detail("config", json!(config));
    r.notes.push(format!(
        "best restart {} of {}, {} accepted steps",
        result.best_restart,
        result.restarts,
        result.history.len() - 1
    ));
    if !holds {
        r.outcome = Outcome::VerificationFailed(format!(
            "see-saw purity {} exceeds zeta = {}",
            result.value,
            to_decimal(&zeta, 12)
        ));
    }
    Ok(r)
}
