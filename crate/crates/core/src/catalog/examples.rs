//! Individual models: tori, the Iwasawa manifold, the Bigalke–Rollenske
//! series, a 3-step example of complex dimension 6, and a 3-dimensional
//! example with negative `c1`.

use crate::exterior::Form;
use crate::linalg::GaussianRational as G;
use crate::model::ComplexModel;

use super::CatalogError;

fn w(n: usize, idx: &[i64]) -> Form {
    Form::from_indices(n, idx, G::from_int(1)).expect("indices are in range")
}

fn build(name: &str, n: usize, d: Vec<Form>) -> ComplexModel {
    ComplexModel::new(name, n, d).expect("catalog models satisfy the structure checks")
}

pub fn torus(n: usize) -> Result<ComplexModel, CatalogError> {
    ComplexModel::new(format!("torus-{n}"), n, vec![Form::zero(n); n]).map_err(CatalogError::from)
}

/// `dω³ = ω^{12}`.
pub fn iwasawa() -> ComplexModel {
    build("iwasawa", 3, vec![Form::zero(3), Form::zero(3), w(3, &[1, 2])])
}

/// A Bigalke–Rollenske model with its distinguished `(0, n-1)`-form `β`
/// and the expected image of `d_n [β]`.
#[derive(Clone, Debug)]
pub struct BigalkeRollenske {
    pub n: usize,
    pub model: ComplexModel,
    pub beta: Form,
    pub expected_image: Form,
}

/// Complex dimension `4n-2`:
///
/// ```text
/// dτ^k = 0                                    1 ≤ k ≤ 3n-2
/// dτ^{3n-1+j} = τ^{1+j}∧τ^{n+1+j} + τ^{n+j}∧τ̄^{2n+j}   0 ≤ j ≤ n-2
/// dτ^{4n-2} = τ^{2n}∧τ̄^n
/// ```
pub fn bigalke_rollenske(n: usize) -> Result<BigalkeRollenske, CatalogError> {
    if n < 2 {
        return Err(CatalogError::InvalidTuple(format!("the series starts at n = 2, got {n}")));
    }
    let dim = 4 * n - 2;
    let ni = n as i64;
    let mut d = vec![Form::zero(dim); dim];
    for j in 0..ni - 1 {
        let k = (3 * ni - 1 + j) as usize;
        d[k - 1] = w(dim, &[1 + j, ni + 1 + j]).add(&w(dim, &[ni + j, -(2 * ni + j)]));
    }
    d[dim - 1] = w(dim, &[2 * ni, -ni]);
    let model = ComplexModel::new(format!("bigalke-rollenske-{n}"), dim, d)?;
    let mut beta_idx: Vec<i64> = (2 * ni + 1..=3 * ni - 2).map(|k| -k).collect();
    beta_idx.push(-(4 * ni - 2));
    let mut image_idx: Vec<i64> = (1..ni).collect();
    image_idx.push(2 * ni - 1);
    Ok(BigalkeRollenske { n, model, beta: w(dim, &beta_idx), expected_image: w(dim, &image_idx) })
}

/// A 3-step example of complex dimension 6 with `E_3 ≠ E_4`.
pub fn cfg_example() -> ComplexModel {
    let n = 6;
    let z = Form::zero(n);
    build(
        "cfg-6",
        n,
        vec![
            z.clone(),
            z.clone(),
            z,
            w(n, &[1, 2]).add(&w(n, &[1, -2])),
            w(n, &[2, -1]).scale(&G::from_int(-1)),
            w(n, &[1, 4]).add(&w(n, &[1, -3])),
        ],
    )
}

/// `dω³ = ω^{11̄} + (1+i) ω^{22̄}`.
pub fn dim3_c1neg_example() -> ComplexModel {
    let n = 3;
    build("dim3-c1neg", n, vec![Form::zero(n), Form::zero(n), w(n, &[1, -1]).add(&w(n, &[2, -2]).scale(&G::from_ratios(1, 1, 1, 1)))])
}
