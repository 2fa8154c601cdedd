//! One-shot analysis of a single curve, in the shape the CLI prints.

use serde::{Deserialize, Serialize};

use crate::derham::{build_module, c_coeffs, hasse_witt, CurveSpec};
use crate::dieudonne::{classify, eo_type, p_rank, Classification};
use crate::error::{Axiom, Error, Result};
use crate::linalg::Mat;

/// Row-major matrix with explicit dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
}

impl From<&Mat> for MatrixJson {
    fn from(m: &Mat) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_u64(),
        }
    }
}

impl MatrixJson {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeResult {
    pub p: u64,
    pub d: usize,
    pub g: usize,
    /// `a_0, ..., a_d`.
    pub coeffs: Vec<u64>,
    /// Coefficients of `f^((p-1)/2)`, ascending.
    pub c_coeffs: Vec<u64>,
    pub hasse_witt: MatrixJson,
    pub mat_f: MatrixJson,
    pub mat_v: MatrixJson,
    pub p_rank: usize,
    pub a_number: usize,
    pub eo_type: Vec<usize>,
    pub flags: Classification,
}

pub fn analyze(curve: &CurveSpec) -> Result<AnalyzeResult> {
    let module = build_module(curve)?;
    let eo = eo_type(&module)?;
    let f = p_rank(curve)?;
    if f != eo.p_rank {
        return Err(Error::AxiomViolation(Axiom::PRankRoutes {
            psi: eo.p_rank,
            stable_rank: f,
        }));
    }
    Ok(AnalyzeResult {
        p: curve.p(),
        d: curve.degree(),
        g: curve.genus(),
        coeffs: curve.coeffs(),
        c_coeffs: c_coeffs(curve).values(),
        hasse_witt: (&hasse_witt(curve)).into(),
        mat_f: module.frobenius().into(),
        mat_v: module.verschiebung().into(),
        p_rank: eo.p_rank,
        a_number: eo.a_number,
        flags: classify(&module, curve)?,
        eo_type: eo.psi,
    })
}
