//! Dense matrix exponential.
//!
//! Symmetric input goes through an orthogonal eigendecomposition
//! (`V exp(Λ) V^T`); anything else through scaling and squaring with the
//! degree-13 Padé approximant (Higham 2005).

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// 1-norm bound under which the [13/13] Padé approximant reaches double
/// precision without scaling.
const THETA_13: f64 = 5.371_920_351_148_152;

const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpmMethod {
    /// Eigendecomposition when the input is exactly symmetric, Padé otherwise.
    Auto,
    Spectral,
    Pade,
}

pub fn expm(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    expm_with(m, ExpmMethod::Auto)
}

pub fn expm_with(m: &DMatrix<f64>, method: ExpmMethod) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidArgument(format!(
            "matrix exponential of a non-square {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "matrix exponential input has a non-finite entry".into(),
        ));
    }
    if m.nrows() == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let out = match method {
        ExpmMethod::Spectral => {
            if m != &m.transpose() {
                return Err(Error::Contract(
                    "spectral matrix exponential needs a symmetric matrix".into(),
                ));
            }
            expm_symmetric(m)
        }
        ExpmMethod::Pade => expm_pade(m)?,
        ExpmMethod::Auto => {
            if m == &m.transpose() {
                expm_symmetric(m)
            } else {
                expm_pade(m)?
            }
        }
    };
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(
            "matrix exponential overflows double precision".into(),
        ));
    }
    Ok(out)
}

fn expm_symmetric(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let mut scaled = eig.eigenvectors.clone();
    for (j, lambda) in eig.eigenvalues.iter().enumerate() {
        let e = lambda.exp();
        scaled.column_mut(j).scale_mut(e);
    }
    let g = &scaled * eig.eigenvectors.transpose();
    // exact symmetry; the product is symmetric only up to rounding
    let n = g.nrows();
    DMatrix::from_fn(n, n, |i, j| (g[(i, j)] + g[(j, i)]) / 2.0)
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn expm_pade(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let norm = one_norm(m);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = m * 2f64.powi(-squarings);
    let b = &PADE_13;
    let ident = DMatrix::<f64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let inner_u = &a6 * b[13] + &a4 * b[11] + &a2 * b[9];
    let u = &a * (&a6 * inner_u + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &ident * b[1]);
    let inner_v = &a6 * b[12] + &a4 * b[10] + &a2 * b[8];
    let v = &a6 * inner_v + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &ident * b[0];

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).ok_or_else(|| {
        Error::NonFinite("Padé denominator is singular".into())
    })?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}
