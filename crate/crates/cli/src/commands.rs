//! Command implementations. Each returns the `result` object of a report.

use std::fmt::Write as _;
use std::path::Path;

use pqclab_core::matrix::{self, max_abs_diff};
use pqclab_core::{
    algebra, bloch, condexp, AlgebraSpec, AxiomReport, CMatrix, CVector, Channel, DensityOperator,
    Error, PQCInstance, PrivateStateSet, Tolerance,
};
use serde_json::{json, Value};

use crate::formats::{matrix_to_json, vector_to_json};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Kraus,
    Choi,
    Transfer,
}

pub const SAMPLE_HEADER: &str = "theta,phi,rx,ry,rz,re0,im0,re1,im1";

fn mat(m: &CMatrix) -> Value {
    json!(matrix_to_json(m))
}

fn vector(v: &CVector) -> Value {
    json!(vector_to_json(v))
}

fn vec3(v: &nalgebra::Vector3<f64>) -> Value {
    json!([v[0], v[1], v[2]])
}

fn transfer_json(pt: &pqclab_core::PauliTransfer) -> Value {
    let rows: Vec<[f64; 3]> = (0..3)
        .map(|i| [pt.matrix[(i, 0)], pt.matrix[(i, 1)], pt.matrix[(i, 2)]])
        .collect();
    json!({ "matrix": rows, "translation": vec3(&pt.translation) })
}

fn axioms_json(r: &AxiomReport) -> Value {
    json!({
        "fixes_subalgebra": r.fixes_subalgebra,
        "into_subalgebra": r.into_subalgebra,
        "bimodule": r.bimodule,
        "positive": r.positive,
        "min_choi_eigenvalue": r.min_choi_eigenvalue,
        "trace_preserving": r.trace_preserving,
        "passed": r.passed,
    })
}

/// Polar and azimuthal angle of a Bloch vector.
fn angles(r: &nalgebra::Vector3<f64>) -> (f64, f64) {
    (r[2].clamp(-1.0, 1.0).acos(), r[1].atan2(r[0]))
}

fn sample_json(v: &CVector) -> Value {
    let r = bloch::bloch_of_state(v);
    let (theta, phi) = angles(&r);
    json!({ "theta": theta, "phi": phi, "bloch": vec3(&r), "amplitudes": vector(v) })
}

/// CSV table of sampled states, one row per state, 17 significant digits.
pub fn sample_table(states: &[CVector]) -> String {
    let mut out = String::from(SAMPLE_HEADER);
    out.push('\n');
    for v in states {
        let r = bloch::bloch_of_state(v);
        let (theta, phi) = angles(&r);
        let cells = [
            theta, phi, r[0], r[1], r[2], v[0].re, v[0].im, v[1].re, v[1].im,
        ];
        let row: Vec<String> = cells.iter().map(|x| format!("{:.16e}", x + 0.0)).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

pub fn classify(
    ch: &Channel,
    samples: Option<usize>,
    out: Option<&Path>,
    tol: Tolerance,
) -> Result<Value, CliError> {
    let pt = bloch::transfer(ch)?;
    let set = bloch::classify(ch, tol)?;
    let mut result = json!({
        "tag": set.tag(),
        "nullity": set.nullity(),
        "transfer": transfer_json(&pt),
    });
    match &set {
        PrivateStateSet::GreatCircle { normal } => result["normal"] = vec3(normal),
        PrivateStateSet::AntipodalPair(pair) => {
            result["states"] = pair.iter().map(sample_json).collect();
        }
        PrivateStateSet::Empty | PrivateStateSet::AllStates => {}
    }
    if let Some(n) = samples {
        let states = bloch::sample_private_states(&set, n);
        result["samples"] = match out {
            Some(path) => {
                std::fs::write(path, sample_table(&states))
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                json!({ "count": states.len(), "file": path.display().to_string() })
            }
            None => json!({
                "count": states.len(),
                "states": states.iter().map(sample_json).collect::<Vec<_>>(),
            }),
        };
    }
    Ok(result)
}

pub fn check_pqc(
    ch: Channel,
    states: Vec<CVector>,
    rho0: DensityOperator,
    tol: Tolerance,
) -> Result<Value, CliError> {
    let inst = PQCInstance::new(states, ch, rho0, tol).map_err(|e| match e {
        Error::NotUnitVector(_) => CliError::Parse(e.to_string()),
        other => CliError::Core(other),
    })?;
    let verdict = condexp::is_pqc(&inst, tol);
    let worst = verdict.residuals.iter().copied().fold(0.0, f64::max);
    Ok(json!({
        "private": verdict.private,
        "residuals": verdict.residuals,
        "max_residual": worst,
    }))
}

fn onb_result(alg: &AlgebraSpec, tol: Tolerance) -> Result<Value, CliError> {
    let vectors = match algebra::trace_vector_onb(alg) {
        Ok(v) => v,
        Err(Error::NoTraceVectors { m, n }) => {
            return Ok(json!({
                "mode": "onb",
                "status": "NoTraceVectors",
                "deficient_block": { "multiplicity": m, "size": n },
            }))
        }
        Err(e) => return Err(e.into()),
    };
    let mut basis = CMatrix::zeros(alg.dim(), vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        basis.set_column(k, v);
    }
    let gram_deviation = max_abs_diff(
        &(basis.adjoint() * &basis),
        &matrix::identity(vectors.len()),
    );
    let rho0 = algebra::normalized_trace_state(alg);
    let mut all_trace = true;
    let mut all_separating = true;
    for v in &vectors {
        all_trace &= algebra::is_trace_vector(v, alg, &rho0, tol)?.passed;
        all_separating &= algebra::is_separating(v, alg, tol)?;
    }
    Ok(json!({
        "mode": "onb",
        "status": "Ok",
        "count": vectors.len(),
        "vectors": vectors.iter().map(vector).collect::<Vec<_>>(),
        "gram_deviation": gram_deviation,
        "all_trace_vectors": all_trace,
        "all_separating": all_separating,
    }))
}

pub fn trace_vectors(
    alg: &AlgebraSpec,
    rho0: Option<DensityOperator>,
    onb: bool,
    check: Option<CVector>,
    tol: Tolerance,
) -> Result<Value, CliError> {
    if !alg.is_unital() {
        return Err(Error::NotUnitalAlgebra(alg.zero_dim()).into());
    }
    if onb {
        return onb_result(alg, tol);
    }
    let rho0 = rho0.unwrap_or_else(|| algebra::normalized_trace_state(alg));
    if let Some(v) = check {
        let report = algebra::is_trace_vector(&v, alg, &rho0, tol).map_err(|e| match e {
            Error::NotUnitVector(_) => CliError::Parse(e.to_string()),
            other => CliError::Core(other),
        })?;
        return Ok(json!({
            "mode": "check",
            "passed": report.passed,
            "max_violation": report.max_violation,
            "separating": algebra::is_separating(&v, alg, tol)?,
        }));
    }
    match algebra::trace_vector_wrt(alg, &rho0, tol) {
        Ok(v) => {
            let report = algebra::is_trace_vector(&v, alg, &rho0, tol)?;
            Ok(json!({
                "mode": "wrt",
                "status": "Ok",
                "vector": vector(&v),
                "max_violation": report.max_violation,
                "passed": report.passed,
            }))
        }
        Err(Error::Infeasible {
            block,
            rank,
            multiplicity,
        }) => Ok(json!({
            "mode": "wrt",
            "status": "Infeasible",
            "block": block,
            "rank": rank,
            "multiplicity": multiplicity,
        })),
        Err(e) => Err(e.into()),
    }
}

pub fn condexp(
    alg: &AlgebraSpec,
    emit: Emit,
    verify: bool,
    tol: Tolerance,
) -> Result<Value, CliError> {
    let ch = condexp::condexp_channel(alg)?;
    let mut result = match emit {
        Emit::Kraus => json!({
            "emit": "kraus",
            "kraus": ch.kraus().iter().map(mat).collect::<Vec<_>>(),
        }),
        Emit::Choi => json!({ "emit": "choi", "choi": mat(&ch.choi()) }),
        Emit::Transfer => {
            json!({ "emit": "transfer", "transfer": transfer_json(&bloch::transfer(&ch)?) })
        }
    };
    if verify {
        result["axioms"] = axioms_json(&condexp::verify_condexp_axioms(&ch, alg, tol)?);
    }
    Ok(result)
}

pub fn demo_frame(tol: Tolerance) -> Result<Value, CliError> {
    let (ch, alg) = condexp::collective_noise_channel_n2();
    let axioms = condexp::verify_condexp_axioms(&ch, &alg, tol)?;
    let rho0 = DensityOperator::maximally_mixed(4);
    let v = algebra::trace_vector_wrt(&alg, &rho0, tol)?;
    let triplet_weight = v.dotc(&(condexp::triplet_projector() * &v)).re;
    let singlet_weight = v.dotc(&(condexp::singlet_projector() * &v)).re;
    let check = algebra::is_trace_vector(&v, &alg, &rho0, tol)?;
    let inst = PQCInstance::new(vec![v.clone(), condexp::singlet()], ch, rho0, tol)?;
    let verdict = condexp::is_pqc(&inst, tol);
    Ok(json!({
        "algebra": { "blocks": [[3, 1], [1, 1]], "zero_dim": 0 },
        "axioms": axioms_json(&axioms),
        "rho0": { "kind": "maximally_mixed", "dim": 4 },
        "trace_vector": vector(&v),
        "triplet_weight": triplet_weight,
        "singlet_weight": singlet_weight,
        "trace_vector_check": { "passed": check.passed, "max_violation": check.max_violation },
        "pqc": { "private": verdict.residuals[0] <= tol.atol(), "residual": verdict.residuals[0] },
        "singlet": { "private": verdict.residuals[1] <= tol.atol(), "residual": verdict.residuals[1] },
    }))
}
