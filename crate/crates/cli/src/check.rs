use std::fmt::Write as _;

use ktwist_core::detect::detection_matrix;
use ktwist_core::fusion::{coform, fusion_ring, FusionRing};
use ktwist_core::{Coweight, FiniteGroupF, KClass, LevelForm, Weight};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::{Format, Suite};

/// Bases larger than this skip the cross-check by direct linear solve.
const LINEAR_SOLVE_LIMIT: usize = 12;
const RANDOM_SAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    /// A diagnostic that does not fail the report.
    Warn,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub status: Status,
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub level: i64,
    pub seed: u64,
    pub checks: Vec<CheckLine>,
    pub passed: bool,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string(self).expect("serializable report");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("status,check,detail\n");
                for c in &self.checks {
                    let _ = writeln!(s, "{},{},\"{}\"", c.status.label(), c.name, c.detail.replace('"', "\"\""));
                }
                s
            }
            Format::Pretty => {
                let mut s = format!("checks for {} at level {} (seed {})\n", self.lie_type, self.level, self.seed);
                for c in &self.checks {
                    let _ = writeln!(s, "{} {}: {}", c.status.label(), c.name, c.detail);
                }
                let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
                let _ = writeln!(s, "{} checks, {failed} failed", self.checks.len());
                s
            }
        }
    }
}

struct Recorder(Vec<CheckLine>);

impl Recorder {
    fn push(&mut self, status: Status, name: &str, detail: impl Into<String>) {
        self.0.push(CheckLine {
            status,
            name: name.to_string(),
            detail: detail.into(),
        });
    }

    fn check(&mut self, ok: bool, name: &str, detail: impl Into<String>) {
        self.push(Status::from_bool(ok), name, detail);
    }
}

pub(crate) fn run_checks(lf: &LevelForm, suite: Suite, seed: u64) -> CheckReport {
    let mut rec = Recorder(Vec::new());
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let basis = lf.enumerate_regular_orbits();

    let group = match FiniteGroupF::new(lf) {
        Ok(g) => Some(g),
        Err(e) => {
            rec.push(Status::Fail, "finite group", e.to_string());
            None
        }
    };

    if let Some(group) = &group {
        let regular = group.regular_orbits().len();
        if wants(Suite::Duality) {
            let det = lf.determinant().abs();
            rec.check(
                group.order() as i128 == det,
                "order",
                format!(
                    "|F| = {}, elementary divisors {:?}, |det gram| = {det}, |F^reg/W| = {regular}",
                    group.order(),
                    group.elementary_divisors()
                ),
            );
            rec.check(group.verify_duality(), "duality", "pairing of F with X / gram X is perfect");
        }
        if wants(Suite::Counting) {
            rec.check(
                basis.len() == regular,
                "counting",
                format!("{} regular affine orbits, {regular} regular W-orbits in F", basis.len()),
            );
        }
        if wants(Suite::Detection) {
            match detection_matrix(group) {
                Ok(m) if m.rows.is_empty() => rec.check(m.columns.is_empty(), "detection", "empty matrix"),
                Ok(m) => rec.check(
                    m.is_square() && m.is_nonsingular(),
                    "detection",
                    format!("{}x{} matrix over Z[zeta_{}], determinant nonzero", m.rows.len(), m.columns.len(), m.order),
                ),
                Err(e) => rec.push(Status::Fail, "detection", e.to_string()),
            }
        }
        if wants(Suite::Ring) || wants(Suite::Oracle) {
            match fusion_ring(group) {
                Ok(ring) => ring_checks(&mut rec, lf, &ring, suite, seed),
                Err(e) => rec.push(Status::Fail, "integrality", format!("{}: {e}", e.kind())),
            }
        }
    }

    if wants(Suite::Coform) {
        coform_checks(&mut rec, lf, seed);
    }

    let checks = rec.0;
    let mut report = CheckReport {
        lie_type: lf.datum().lie_type().to_string(),
        level: lf.level(),
        seed,
        checks,
        passed: false,
    };
    report.passed = report.passed();
    report
}

fn random_class(rng: &mut StdRng, n: usize) -> KClass {
    KClass((0..n).map(|_| rng.random_range(-3..=3)).collect())
}

fn ring_checks(rec: &mut Recorder, lf: &LevelForm, ring: &FusionRing, suite: Suite, seed: u64) {
    let table = ring.table();
    let n = ring.dimension();
    if matches!(suite, Suite::All | Suite::Ring) {
        rec.check(true, "integrality", format!("{n}^3 structure constants, all exact integers"));
        rec.check(table.is_commutative(), "commutativity", "N[a][b] = N[b][a]");
        rec.check(table.is_associative(), "associativity", "sum_s N[a][b][s] N[s][c][t] = sum_s N[b][c][s] N[a][s][t]");
        let detail = match ring.identity_index() {
            Some(e) => format!("E = E{} acts as identity", table.basis[e]),
            None => "no regular orbits, empty ring".into(),
        };
        rec.check(table.identity_axiom_holds(), "identity", detail);
        rec.check(
            ring.diagonalization_holds(),
            "diagonalization",
            format!("x_a x_b = sum_c N[a][b][c] x_c at {} points", ring.support().len()),
        );
        let negative = table.negative_entries();
        if negative.is_empty() {
            rec.push(Status::Pass, "nonnegativity", "all structure constants >= 0");
        } else {
            rec.push(Status::Warn, "nonnegativity", format!("{} negative structure constants", negative.len()));
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let mut ok = true;
        for _ in 0..RANDOM_SAMPLES {
            let (x, y, z) = (random_class(&mut rng, n), random_class(&mut rng, n), random_class(&mut rng, n));
            let xy = ring.multiply(&x, &y).expect("matching dimensions");
            ok &= xy == ring.multiply(&y, &x).expect("matching dimensions");
            let left = ring.multiply(&xy, &z).expect("matching dimensions");
            let yz = ring.multiply(&y, &z).expect("matching dimensions");
            ok &= left == ring.multiply(&x, &yz).expect("matching dimensions");
            if let Ok(e) = ring.identity() {
                ok &= ring.multiply(&e, &x).expect("matching dimensions") == x;
            }
        }
        rec.check(ok, "random products", format!("{RANDOM_SAMPLES} random triples"));
    }
    if matches!(suite, Suite::All | Suite::Oracle) {
        if lf.datum().lie_type().to_string() == "A1" {
            let k = lf.level();
            let mut mismatches = 0;
            for (x, a) in table.basis.iter().enumerate() {
                for (y, b) in table.basis.iter().enumerate() {
                    for (z, c) in table.basis.iter().enumerate() {
                        if table.n[x][y][z] != su2_rule(k, a.0[0], b.0[0], c.0[0]) {
                            mismatches += 1;
                        }
                    }
                }
            }
            rec.check(mismatches == 0, "su(2) oracle", format!("{mismatches} mismatches against the closed-form rule"));
        }
        if n <= LINEAR_SOLVE_LIMIT {
            match ring.solve_structure_constants() {
                Ok(solved) => rec.check(solved == table.n, "linear solve", "elimination over the cyclotomic field agrees"),
                Err(e) => rec.push(Status::Fail, "linear solve", e.to_string()),
            }
        } else {
            rec.push(Status::Pass, "linear solve", format!("skipped, basis larger than {LINEAR_SOLVE_LIMIT}"));
        }
    }
}

/// su(2) fusion with labels shifted by one, at twist level `k`.
fn su2_rule(k: i64, a: i64, b: i64, c: i64) -> i64 {
    let lower = (a - b).abs() + 1;
    let upper = (a + b - 1).min(2 * k - 1 - a - b);
    i64::from(lower <= c && c <= upper && (a + b + c) % 2 == 1)
}

fn coform_checks(rec: &mut Recorder, lf: &LevelForm, seed: u64) {
    let r = lf.datum().rank();
    let zero = match coform(lf, &Weight::zero(r)) {
        Ok(c) => c,
        Err(e) => {
            rec.push(Status::Fail, "coform", e.to_string());
            return;
        }
    };
    let sign = zero.is_signed_identity();
    rec.check(
        sign.is_some(),
        "coform",
        match sign {
            Some(s) => format!("omega = 0 gives {s:+} times the identity"),
            None => "omega = 0 is not a signed identity".into(),
        },
    );
    let mut rng = StdRng::seed_from_u64(seed ^ 0x636f_666f_726d);
    let shift = Coweight((0..r).map(|_| rng.random_range(-4..=4)).collect());
    let omega = lf.translate(&shift);
    let same = coform(lf, &omega).map(|c| c.matrix == zero.matrix).unwrap_or(false);
    rec.check(same, "coform translation", format!("omega = {omega} gives the same matrix"));
}
