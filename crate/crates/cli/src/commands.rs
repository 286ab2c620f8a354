use std::fmt::Write as _;

use ktwist_core::cyclotomic::CycInt;
use ktwist_core::detect::{detection_matrix, theta_of_weight};
use ktwist_core::fusion::{coform, fusion_ring, identity_class};
use ktwist_core::{Canonical, FCharacter, FiniteGroupF, LevelForm, Result, Weight};
use serde::Serialize;

use crate::{Command, Format, JobSpec};

/// `1;2` for use inside CSV cells.
fn csv_weight(w: &Weight) -> String {
    w.coords().iter().map(i64::to_string).collect::<Vec<_>>().join(";")
}

fn csv_coeffs(c: &[i64]) -> String {
    c.iter().map(i64::to_string).collect::<Vec<_>>().join(";")
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable document");
    s.push('\n');
    s
}

/// Polynomial notation in `z`, the primitive root of unity.
pub(crate) fn format_cyclotomic(c: &CycInt) -> String {
    let mut out = String::new();
    for (e, &a) in c.0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let sign = if a < 0 { "-" } else { "+" };
        if out.is_empty() {
            if a < 0 {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let mag = a.abs();
        match (e, mag) {
            (0, m) => {
                let _ = write!(out, "{m}");
            }
            (1, 1) => out.push('z'),
            (1, m) => {
                let _ = write!(out, "{m}z");
            }
            (e, 1) => {
                let _ = write!(out, "z^{e}");
            }
            (e, m) => {
                let _ = write!(out, "{m}z^{e}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn class_name(w: &Weight) -> String {
    format!("E{w}")
}

pub(crate) fn render(lf: &LevelForm, command: &Command, spec: &JobSpec) -> Result<String> {
    match command {
        Command::Basis => Ok(basis(lf, spec.format)),
        Command::Identity => identity(lf, spec.format),
        Command::Theta { chi: Some(chi), matrix: false } => theta(lf, chi, spec.format),
        Command::Theta { .. } => matrix(lf, spec.format),
        Command::FusionTable => fusion_table(lf, spec.format),
        Command::Coform => coform_doc(lf, spec.omega.as_ref(), spec.format),
        Command::Check(_) => unreachable!("checks are rendered by the check module"),
    }
}

#[derive(Serialize)]
struct BasisDoc<'a> {
    #[serde(rename = "type")]
    lie_type: String,
    level: i64,
    basis: Vec<&'a Weight>,
}

fn basis(lf: &LevelForm, format: Format) -> String {
    let reps = lf.enumerate_regular_orbits();
    let weights: Vec<&Weight> = reps.iter().map(|r| &r.weight).collect();
    match format {
        Format::Json => json(&BasisDoc {
            lie_type: lf.datum().lie_type().to_string(),
            level: lf.level(),
            basis: weights,
        }),
        Format::Csv => {
            let mut s = String::from("index,weight\n");
            for (i, w) in weights.iter().enumerate() {
                let _ = writeln!(s, "{i},{}", csv_weight(w));
            }
            s
        }
        Format::Pretty => {
            let mut s = format!(
                "{} at level {}: {} basis classes\n",
                lf.datum().lie_type(),
                lf.level(),
                weights.len()
            );
            for w in weights {
                let _ = writeln!(s, "  {}", class_name(w));
            }
            s
        }
    }
}

#[derive(Serialize)]
struct IdentityDoc<'a> {
    #[serde(rename = "type")]
    lie_type: String,
    level: i64,
    weight: &'a Weight,
    identity: Vec<i64>,
}

fn identity(lf: &LevelForm, format: Format) -> Result<String> {
    let e = identity_class(lf)?;
    let reps = lf.enumerate_regular_orbits();
    let at = e.0.iter().position(|&c| c == 1).expect("identity is a basis class");
    let weight = &reps[at].weight;
    Ok(match format {
        Format::Json => json(&IdentityDoc {
            lie_type: lf.datum().lie_type().to_string(),
            level: lf.level(),
            weight,
            identity: e.0,
        }),
        Format::Csv => {
            let mut s = String::from("index,weight,coefficient\n");
            for (i, (r, c)) in reps.iter().zip(&e.0).enumerate() {
                let _ = writeln!(s, "{i},{},{c}", csv_weight(&r.weight));
            }
            s
        }
        Format::Pretty => format!("E = {} (basis index {at})\n", class_name(weight)),
    })
}

#[derive(Serialize)]
struct ThetaTerm {
    sign: i64,
    weight: Weight,
    character: FCharacter,
}

#[derive(Serialize)]
struct ThetaDoc {
    #[serde(rename = "type")]
    lie_type: String,
    level: i64,
    chi: Weight,
    canonical: Weight,
    orbit_sign: i64,
    elementary_divisors: Vec<i64>,
    terms: Vec<ThetaTerm>,
}

fn theta(lf: &LevelForm, chi: &Weight, format: Format) -> Result<String> {
    let group = FiniteGroupF::new(lf)?;
    // validates regularity
    let th = theta_of_weight(&group, chi)?;
    let Canonical::Regular { rep, sign } = lf.canonicalize(chi) else {
        unreachable!("theta accepted a singular weight");
    };
    let terms: Vec<ThetaTerm> = lf
        .datum()
        .weyl_group()
        .iter()
        .map(|w| {
            let image = w.act(chi);
            ThetaTerm {
                sign: w.sign(),
                character: group.restrict_character(&image),
                weight: image,
            }
        })
        .collect();
    debug_assert_eq!(terms.len(), th.element().len());
    let doc = ThetaDoc {
        lie_type: lf.datum().lie_type().to_string(),
        level: lf.level(),
        chi: chi.clone(),
        canonical: rep.weight,
        orbit_sign: sign,
        elementary_divisors: group.elementary_divisors(),
        terms,
    };
    Ok(match format {
        Format::Json => json(&doc),
        Format::Csv => {
            let mut s = String::from("sign,weight,character\n");
            for t in &doc.terms {
                let _ = writeln!(s, "{},{},{}", t.sign, csv_weight(&t.weight), csv_coeffs(&t.character.0));
            }
            s
        }
        Format::Pretty => {
            let mut s = format!(
                "Theta(E{}) = {} Theta(E{}) on F = {}\n",
                doc.chi,
                if doc.orbit_sign > 0 { "+" } else { "-" },
                doc.canonical,
                doc.elementary_divisors
                    .iter()
                    .map(|d| format!("Z/{d}"))
                    .collect::<Vec<_>>()
                    .join(" + "),
            );
            for t in &doc.terms {
                let sign = if t.sign > 0 { '+' } else { '-' };
                let _ = writeln!(s, "  {sign} s*{}  character {}", t.weight, csv_coeffs(&t.character.0));
            }
            s
        }
    })
}

fn matrix(lf: &LevelForm, format: Format) -> Result<String> {
    let m = detection_matrix(&FiniteGroupF::new(lf)?)?;
    Ok(match format {
        Format::Json => json(&m),
        Format::Csv => {
            let mut s = String::from("row,column,entry\n");
            for (i, row) in m.entries.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let _ = writeln!(s, "{},{},{}", csv_weight(&m.rows[i]), csv_coeffs(&m.columns[j].coords), csv_coeffs(&x.0));
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = format!(
                "detection matrix, {}x{}, entries in Z[z], z = exp(2 pi i / {})\n",
                m.rows.len(),
                m.columns.len(),
                m.order
            );
            let columns: Vec<String> = m.columns.iter().map(|f| format!("({})/{}", csv_coeffs(&f.coords).replace(';', ","), m.order)).collect();
            let _ = writeln!(s, "columns: {}", columns.join("  "));
            for (w, row) in m.rows.iter().zip(&m.entries) {
                let cells: Vec<String> = row.iter().map(format_cyclotomic).collect();
                let _ = writeln!(s, "{}: {}", class_name(w), cells.join(" | "));
            }
            let _ = writeln!(s, "nonsingular: {}", m.is_nonsingular());
            s
        }
    })
}

fn fusion_table(lf: &LevelForm, format: Format) -> Result<String> {
    let ring = fusion_ring(&FiniteGroupF::new(lf)?)?;
    let table = ring.table();
    Ok(match format {
        Format::Json => json(table),
        Format::Csv => {
            let mut s = String::from("lambda,mu,nu,N\n");
            let n = table.dimension();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            csv_weight(&table.basis[a]),
                            csv_weight(&table.basis[b]),
                            csv_weight(&table.basis[c]),
                            table.n[a][b][c]
                        );
                    }
                }
            }
            s
        }
        Format::Pretty => {
            let n = table.dimension();
            let mut s = format!("{} at level {}: {n} basis classes", table.lie_type, table.level);
            if let Some(e) = ring.identity_index() {
                let _ = write!(s, ", identity {}", class_name(&table.basis[e]));
            }
            s.push('\n');
            for a in 0..n {
                for b in a..n {
                    let terms: Vec<String> = (0..n)
                        .filter(|&c| table.n[a][b][c] != 0)
                        .map(|c| match table.n[a][b][c] {
                            1 => class_name(&table.basis[c]),
                            k => format!("{k} {}", class_name(&table.basis[c])),
                        })
                        .collect();
                    let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                    let _ = writeln!(s, "{} * {} = {rhs}", class_name(&table.basis[a]), class_name(&table.basis[b]));
                }
            }
            s
        }
    })
}

#[derive(Serialize)]
struct CoformDoc<'a> {
    #[serde(rename = "type")]
    lie_type: String,
    level: i64,
    omega: &'a Weight,
    basis: Vec<Weight>,
    matrix: Vec<Vec<i64>>,
    signed_identity: Option<i64>,
}

fn coform_doc(lf: &LevelForm, omega: Option<&Weight>, format: Format) -> Result<String> {
    let zero = Weight::zero(lf.datum().rank());
    let omega = omega.unwrap_or(&zero);
    let c = coform(lf, omega)?;
    let doc = CoformDoc {
        lie_type: lf.datum().lie_type().to_string(),
        level: lf.level(),
        omega,
        basis: lf.enumerate_regular_orbits().into_iter().map(|r| r.weight).collect(),
        matrix: c.matrix.to_rows(),
        signed_identity: c.is_signed_identity(),
    };
    Ok(match format {
        Format::Json => json(&doc),
        Format::Csv => {
            let mut s = String::from("row,column,value\n");
            for (i, row) in doc.matrix.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(s, "{},{},{v}", csv_weight(&doc.basis[i]), csv_weight(&doc.basis[j]));
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("coform at omega = {}: ", doc.omega);
            match doc.signed_identity {
                Some(1) => s.push_str("+identity\n"),
                Some(_) => s.push_str("-identity\n"),
                None => s.push_str("signed permutation\n"),
            }
            for (w, row) in doc.basis.iter().zip(&doc.matrix) {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
                let _ = writeln!(s, "{:>12}  {}", class_name(w), cells.join(" "));
            }
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_notation() {
        assert_eq!(format_cyclotomic(&CycInt(vec![0, 0])), "0");
        assert_eq!(format_cyclotomic(&CycInt(vec![-1, 2])), "-1 + 2z");
        assert_eq!(format_cyclotomic(&CycInt(vec![0, -1, 0, 3])), "-z + 3z^3");
        assert_eq!(format_cyclotomic(&CycInt(vec![4, 1, -1])), "4 + z - z^2");
    }

    #[test]
    fn csv_cells() {
        assert_eq!(csv_weight(&Weight(vec![1, -2])), "1;-2");
        assert_eq!(csv_coeffs(&[]), "");
    }
}
