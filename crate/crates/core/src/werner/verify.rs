use serde::Serialize;

use super::operators::{
    alt2_alt2_element, psi_from_phi, psi_q_pp, young_element, young_projector, OverlapRow, YoungLabel,
};
use super::overlaps::{
    f_symmetry_sign, overlap_table_symbolic, overlap_table_with, t_vector, t_vector_symbolic, OverlapTable,
};
use crate::error::{ensure, Result};
use crate::linalg::SparseRMatrix;
use crate::rational::{int, ratio, Rational};
use crate::young::{rep_dims, plethysm_check, ssyt_count, weyl_dimension, Partition, Plethysm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyLevel {
    /// Group-algebra identities and cycle-count traces only.
    Fast,
    /// Adds the explicit `d^4 × d^4` matrix checks.
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub d: usize,
    pub level: VerifyLevel,
    pub checks: Vec<Check>,
    /// Explicit overlap table (full level only).
    pub overlap_table: Option<OverlapTable>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Compact rendering for check details: `p/q` fractions, `[..]` lists.
trait Show {
    fn show(&self) -> String;
}

impl Show for Rational {
    fn show(&self) -> String {
        self.to_string()
    }
}

impl Show for num::BigInt {
    fn show(&self) -> String {
        self.to_string()
    }
}

impl<T: Show> Show for Vec<T> {
    fn show(&self) -> String {
        format!("[{}]", self.iter().map(Show::show).collect::<Vec<_>>().join(", "))
    }
}

struct Recorder(Vec<Check>);

impl Recorder {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn eq<T: PartialEq + Show>(&mut self, name: impl Into<String>, got: T, want: T) {
        let passed = got == want;
        let detail = if passed {
            got.show()
        } else {
            format!("got {}, expected {}", got.show(), want.show())
        };
        self.check(name, passed, detail);
    }
}

fn eval_points(d: usize) -> Vec<Vec<Rational>> {
    let ones = vec![int(1); d];
    let ramp: Vec<Rational> = (0..d).map(|i| int(i as i64 + 1)).collect();
    let mixed: Vec<Rational> = (0..d)
        .map(|i| ratio(if i % 2 == 0 { 1 } else { -1 } * (2 * i as i64 + 1), i as i64 + 3))
        .collect();
    vec![ones, ramp, mixed]
}

/// Runs every exact identity about `∧² ⊗ ∧²` at dimension `d ∈ 3..=7`.
pub fn verify_rep(d: usize, level: VerifyLevel) -> Result<VerifyReport> {
    ensure!((3..=7).contains(&d), Domain, "verification supports 3 <= d <= 7, got {d}");
    let mut rec = Recorder(Vec::new());

    // Representation dimensions and characters.
    match rep_dims(d) {
        Ok(dims) => rec.check("rep dimensions (closed form = Weyl)", true, format!("{:?}", dims.as_tuple())),
        Err(e) => rec.check("rep dimensions (closed form = Weyl)", false, e.to_string()),
    }
    if d == 3 {
        rec.eq(
            "dim (1,1,1,1) vanishes at d=3",
            weyl_dimension(&Partition::of(&[1, 1, 1, 1]), 3),
            0.into(),
        );
    }
    for y in YoungLabel::ALL {
        let lambda = y.partition();
        rec.eq(
            format!("ssyt count {y} = Weyl dimension"),
            ssyt_count(&lambda, d),
            weyl_dimension(&lambda, d),
        );
    }
    for (i, x) in eval_points(d).iter().enumerate() {
        for kind in [Plethysm::Sym2, Plethysm::Alt2] {
            let c = plethysm_check(kind, d, x)?;
            rec.check(
                format!("plethysm {kind:?} character at point {i}"),
                c.equal,
                format!("lhs {} rhs {}", c.lhs, c.rhs),
            );
        }
    }

    // Group algebra.
    let elems: Vec<_> = YoungLabel::ALL.iter().map(|&y| (y, young_element(y))).collect();
    for (y, e) in &elems {
        rec.check(format!("P_{y} idempotent in C[S4]"), e.mul(e) == *e, "");
        rec.check(format!("P_{y} self-adjoint in C[S4]"), e.adjoint() == *e, "");
        rec.eq(
            format!("tr P_{y} (cycle count)"),
            e.trace(d),
            int(y.dimension(d)? as i64),
        );
    }
    for (i, (y1, e1)) in elems.iter().enumerate() {
        for (y2, e2) in &elems[i + 1..] {
            rec.check(format!("P_{y1} P_{y2} = 0 in C[S4]"), e1.mul(e2).is_zero(), "");
        }
    }
    let sum = elems.iter().fold(super::GroupAlgebraElement::zero(), |acc, (_, e)| acc.add(e));
    rec.check("sum of P_y = (e-(12))(e-(34))/4", sum == alt2_alt2_element(), "");

    let ts = t_vector_symbolic(d)?;
    for (y, want) in [(YoungLabel::Alt4, int(-1)), (YoungLabel::Box22, ratio(1, 2)), (YoungLabel::Box211, int(0))] {
        if let Some(got) = ts.get(y) {
            rec.eq(format!("t_{y} (cycle count)"), got.clone(), want);
        }
    }
    for y in YoungLabel::present(d) {
        let want = if y == YoungLabel::Box211 { int(-1) } else { int(1) };
        rec.eq(format!("tr rho_{y} (F_AA' x F_BB')"), f_symmetry_sign(y, d)?, want);
    }
    let closed = OverlapTable::closed_form(d);
    let symbolic = overlap_table_symbolic(d)?;
    rec.eq("overlap table (cycle count) = closed forms", symbolic.entries.clone(), closed.entries.clone());
    rec.check(
        "overlap columns sum to 1 (cycle count)",
        symbolic.column_sums().iter().all(|s| *s == int(1)),
        symbolic.column_sums().show(),
    );

    let mut overlap_table = None;
    if level == VerifyLevel::Full {
        verify_explicit(d, &mut rec, &closed, &mut overlap_table)?;
    }

    Ok(VerifyReport {
        d,
        level,
        checks: rec.0,
        overlap_table,
    })
}

fn projector_checks(rec: &mut Recorder, name: &str, p: &SparseRMatrix, trace: Rational) -> Result<()> {
    rec.check(format!("{name} idempotent (matrix)"), p.mul(p)? == *p, format!("nnz {}", p.nnz()));
    rec.check(format!("{name} self-adjoint (matrix)"), p.is_symmetric(), "");
    rec.eq(format!("tr {name} (matrix)"), p.trace()?, trace);
    Ok(())
}

fn verify_explicit(
    d: usize,
    rec: &mut Recorder,
    closed: &OverlapTable,
    table_out: &mut Option<OverlapTable>,
) -> Result<()> {
    let di = d as i64;
    let projectors: Vec<_> = YoungLabel::ALL
        .iter()
        .map(|&y| Ok((y, young_projector(y, d)?)))
        .collect::<Result<_>>()?;
    for (y, p) in &projectors {
        projector_checks(rec, &format!("P_{y}"), p, int(y.dimension(d)? as i64))?;
    }
    for (i, (y1, p1)) in projectors.iter().enumerate() {
        for (y2, p2) in &projectors[i + 1..] {
            rec.check(format!("P_{y1} P_{y2} = 0 (matrix)"), p1.mul(p2)?.is_zero(), "");
        }
    }

    let tv = t_vector(d)?;
    for (y, t) in &tv.entries {
        let want = match y {
            YoungLabel::Alt4 => int(-1),
            YoungLabel::Box22 => ratio(1, 2),
            YoungLabel::Box211 => int(0),
        };
        rec.eq(format!("t_{y} (matrix)"), t.clone(), want);
    }

    let ops = psi_q_pp(d)?;
    let pp_dim = di * (di - 1) / 2;
    projector_checks(rec, "Psi", &ops.psi, int(1))?;
    projector_checks(rec, "Q", &ops.q, int(di * di - 1))?;
    projector_checks(rec, "P~", &ops.p_tilde, int(pp_dim * pp_dim - di * di))?;
    rec.check("Psi Q = 0", ops.psi.mul(&ops.q)?.is_zero(), "");
    rec.check("Psi P~ = 0", ops.psi.mul(&ops.p_tilde)?.is_zero(), "");
    rec.check("Q P~ = 0", ops.q.mul(&ops.p_tilde)?.is_zero(), "");
    rec.check("Psi from |Psi><Psi| = Psi from Phi x Phi", ops.psi == psi_from_phi(d)?, "");
    let pp = alt2_alt2_element().operator(d);
    rec.check(
        "Psi + Q + P~ = P x P",
        ops.psi.add(&ops.q)?.add(&ops.p_tilde)? == pp,
        "",
    );

    let table = overlap_table_with(&ops)?;
    for (r, row) in OverlapRow::ALL.iter().enumerate() {
        for (c, y) in table.columns.iter().enumerate() {
            rec.eq(
                format!("tr rho_{y}^G {} (matrix)", row.name()),
                table.entries[r][c].clone(),
                closed.entries[r][c].clone(),
            );
        }
    }
    rec.eq(
        "overlap table (matrix) = cycle-count table",
        table.entries.clone(),
        overlap_table_symbolic(d)?.entries,
    );
    rec.check(
        "overlap columns sum to 1 (matrix)",
        table.column_sums().iter().all(|s| *s == int(1)),
        table.column_sums().show(),
    );
    *table_out = Some(table);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_level_passes() {
        for d in 3..=7 {
            let report = verify_rep(d, VerifyLevel::Fast).unwrap();
            assert!(report.passed(), "d={d}: {:?}", report.first_failure());
        }
    }

    #[test]
    fn full_level_passes_at_d3_and_d4() {
        for d in [3, 4] {
            let report = verify_rep(d, VerifyLevel::Full).unwrap();
            assert!(report.passed(), "d={d}: {:?}", report.first_failure());
            assert!(report.overlap_table.is_some());
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(verify_rep(2, VerifyLevel::Fast).is_err());
        assert!(verify_rep(8, VerifyLevel::Fast).is_err());
    }
}
