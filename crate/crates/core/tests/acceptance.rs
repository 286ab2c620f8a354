//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ktwist_core::detect::detection_matrix;
use ktwist_core::fusion::{coform, fusion_ring, identity_class};
use ktwist_core::repth::{dominant_weights_up_to_dimension, level_of, trace_form, weight_multiplicities};
use ktwist_core::{Canonical, Coweight, FiniteGroupF, HighestWeight, KClass, RootDatum, Weight};
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::SeedableRng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cartan_of(d: &RootDatum) -> Mat {
    d.cartan().to_rows()
}

/// Basis sizes against closed forms and brute-force orbit counting.
fn basis_counting() -> Outcome {
    let mut checked = 0;
    for (t, range, expected) in [
        ("A1", 1..=10, Box::new(|k: i64| k - 1) as Box<dyn Fn(i64) -> i64>),
        ("A2", 2..=8, Box::new(|k: i64| (k - 1) * (k - 2) / 2)),
    ] {
        for k in range {
            let lf = level_form(t, k);
            let basis = lf.enumerate_regular_orbits();
            let brute = affine_regular_orbits(&cartan_of(lf.datum()), &lf.gram().to_rows());
            ensure(basis.len() as i64 == expected(k), || format!("{t} k={k}: {} != {}", basis.len(), expected(k)))?;
            ensure(brute.regular_orbits == basis.len(), || {
                format!("{t} k={k}: brute force found {} orbits", brute.regular_orbits)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} grid points"))
}

fn detection_counting() -> Outcome {
    for (t, k) in grid() {
        let lf = level_form(t, k);
        let gram = lf.gram().to_rows();
        let det = determinant(&gram).abs();
        let f = FiniteGroupF::new(&lf).map_err(|e| e.to_string())?;
        ensure(f.order() as i64 == det, || format!("{t} k={k}: |F| = {} but det = {det}", f.order()))?;
        ensure(f.verify_duality(), || format!("{t} k={k}: pairing not perfect"))?;
        let cartan = cartan_of(lf.datum());
        let affine = affine_regular_orbits(&cartan, &gram);
        let torus = f_regular_orbits(&cartan, &gram);
        ensure(torus.classes as i64 == det, || format!("{t} k={k}: oracle |F| = {}", torus.classes))?;
        ensure(affine.classes as i64 == det, || format!("{t} k={k}: |X/gram| = {}", affine.classes))?;
        let basis = lf.enumerate_regular_orbits().len();
        let freg = f.regular_orbits().len();
        ensure(basis == freg && freg == torus.regular_orbits && basis == affine.regular_orbits, || {
            format!(
                "{t} k={k}: basis {basis}, F^reg/W {freg}, oracles {} / {}",
                affine.regular_orbits, torus.regular_orbits
            )
        })?;
    }
    Ok(format!("{} grid points", grid().len()))
}

fn theta_injectivity() -> Outcome {
    let mut checked = 0;
    for (t, k) in grid() {
        let f = FiniteGroupF::new(&level_form(t, k)).map_err(|e| e.to_string())?;
        let m = detection_matrix(&f).map_err(|e| e.to_string())?;
        if m.rows.is_empty() {
            continue;
        }
        ensure(m.is_square(), || format!("{t} k={k}: {}x{}", m.rows.len(), m.columns.len()))?;
        ensure(m.is_nonsingular(), || format!("{t} k={k}: singular"))?;
        checked += 1;
    }
    Ok(format!("{checked} nonsingular detection matrices"))
}

fn identity() -> Outcome {
    let mut checked = 0;
    for (t, k) in grid() {
        if k < dual_coxeter(t) {
            continue;
        }
        let lf = level_form(t, k);
        let e = identity_class(&lf).map_err(|e| e.to_string())?;
        let basis = lf.enumerate_regular_orbits();
        let idx = e.0.iter().position(|&c| c == 1).unwrap();
        let rho = lf.datum().rho();
        match lf.canonicalize(rho) {
            Canonical::Regular { rep, sign } => {
                ensure(rep == basis[idx] && sign == 1 && &rep.weight == rho, || {
                    format!("{t} k={k}: identity at {}", basis[idx].weight)
                })?;
            }
            Canonical::Singular { .. } => return Err(format!("{t} k={k}: rho singular")),
        }
        let ring = fusion_ring(&FiniteGroupF::new(&lf).unwrap()).map_err(|e| e.to_string())?;
        for l in 0..basis.len() {
            let x = KClass::basis_vector(basis.len(), l);
            ensure(ring.multiply(&e, &x).unwrap() == x, || format!("{t} k={k}: E * E_{l} != E_{l}"))?;
        }
        checked += 1;
    }
    for (t, k) in grid() {
        if k < dual_coxeter(t) {
            ensure(identity_class(&level_form(t, k)).is_err(), || format!("{t} k={k}: unexpected identity"))?;
        }
    }
    Ok(format!("{checked} grid points with k >= h"))
}

fn su2_oracle() -> Outcome {
    let mut entries = 0;
    for k in 2..=10 {
        let lf = level_form("A1", k);
        let ring = fusion_ring(&FiniteGroupF::new(&lf).unwrap()).map_err(|e| e.to_string())?;
        let basis = lf.enumerate_regular_orbits();
        for (x, a) in basis.iter().enumerate() {
            for (y, b) in basis.iter().enumerate() {
                for (z, c) in basis.iter().enumerate() {
                    let (a, b, c) = (a.weight.0[0], b.weight.0[0], c.weight.0[0]);
                    let expected = su2_fusion(k, a, b, c);
                    let got = ring.structure_constant(x, y, z);
                    ensure(got == expected, || format!("k={k}: N[{a}][{b}][{c}] = {got}, oracle {expected}"))?;
                    entries += 1;
                }
            }
        }
    }
    Ok(format!("{entries} structure constants"))
}

fn ring_axioms() -> Outcome {
    let mut checked = 0;
    for (t, k) in grid() {
        let ring = fusion_ring(&FiniteGroupF::new(&level_form(t, k)).unwrap()).map_err(|e| e.to_string())?;
        let table = ring.table();
        ensure(table.is_commutative(), || format!("{t} k={k}: not commutative"))?;
        ensure(table.is_associative(), || format!("{t} k={k}: not associative"))?;
        ensure(table.identity_axiom_holds(), || format!("{t} k={k}: identity axiom"))?;
        ensure(ring.diagonalization_holds(), || format!("{t} k={k}: diagonalization"))?;
        checked += 1;
    }
    Ok(format!("{checked} rings"))
}

fn trace_forms() -> Outcome {
    for (t, n) in [("A1", 2), ("A2", 3), ("A3", 4)] {
        let d = RootDatum::new(t.parse().unwrap()).unwrap();
        let mut hw = vec![0; n - 1];
        hw[0] = 1;
        let hw = HighestWeight::new(&d, Weight(hw)).unwrap();
        let form = trace_form(&d, &hw).map_err(|e| e.to_string())?;
        ensure(&form == d.basic_gram(), || format!("{t}: trace form {form}"))?;
        ensure(level_of(&d, &hw) == Ok(1), || format!("{t}: standard rep level"))?;
    }
    let d = RootDatum::new("A1".parse().unwrap()).unwrap();
    let adjoint = HighestWeight::new(&d, Weight(vec![2])).unwrap();
    let level = level_of(&d, &adjoint).map_err(|e| e.to_string())?;
    ensure(level == 4, || format!("A1 adjoint level {level}"))?;
    Ok("A1, A2, A3 standard; A1 adjoint level 4".into())
}

fn coforms() -> Outcome {
    let mut checked = 0;
    for (t, k) in grid() {
        let lf = level_form(t, k);
        let r = lf.datum().rank();
        let zero = coform(&lf, &Weight::zero(r)).map_err(|e| e.to_string())?;
        ensure(zero.is_signed_identity().is_some(), || format!("{t} k={k}: not a signed identity"))?;
        for shift in [vec![1; r], (0..r as i64).map(|i| 2 - 3 * i).collect()] {
            let omega = lf.translate(&Coweight(shift));
            let shifted = coform(&lf, &omega).map_err(|e| e.to_string())?;
            ensure(shifted.matrix == zero.matrix, || format!("{t} k={k}: shift by {omega} changes the coform"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} grid points"))
}

fn freudenthal() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let types = ["A1", "A2", "B2", "G2"];
    let mut checked = 0;
    for i in 0..20 {
        let d = RootDatum::new(types[i % types.len()].parse().unwrap()).unwrap();
        let candidates = dominant_weights_up_to_dimension(&d, 500);
        let hw = candidates.choose(&mut rng).unwrap();
        let expected = weyl_dimension(&d, hw.weight().coords());
        ensure(expected <= 500, || format!("{hw:?} has dimension {expected}"))?;
        let system = weight_multiplicities(&d, hw).map_err(|e| e.to_string())?;
        ensure(system.dimension() as u128 == expected, || {
            format!("{} {}: {} != {expected}", d.lie_type(), hw.weight(), system.dimension())
        })?;
        checked += 1;
    }
    Ok(format!("{checked} random highest weights"))
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "basis counting", Duration::from_secs(1), basis_counting),
        (2, "detection counting", Duration::from_secs(5), detection_counting),
        (3, "theta injectivity", Duration::from_secs(30), theta_injectivity),
        (4, "identity", Duration::from_secs(10), identity),
        (5, "su(2) fusion oracle", Duration::from_secs(10), su2_oracle),
        (6, "ring axioms", Duration::from_secs(60), ring_axioms),
        (7, "trace form", Duration::from_secs(1), trace_forms),
        (8, "coform", Duration::from_secs(5), coforms),
        (9, "Freudenthal/Weyl consistency", Duration::from_secs(10), freudenthal),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {id} ({name}): {detail} [{elapsed:.2?} / {limit:?}]");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
