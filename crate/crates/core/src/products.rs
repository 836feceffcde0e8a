//! Direct products of models, Künneth convolution of pages, and the `c1`
//! of a product metric.

use thiserror::Error;

use crate::fss::PageTable;
use crate::hermitian::{HermitianError, HermitianMetric};
use crate::linalg::{GaussianRational as G, Rational};
use crate::model::{ComplexModel, ModelError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("page {r} is missing (tables reach page {have})")]
    MissingPage { r: usize, have: usize },
    #[error("page index must be at least 1")]
    BadPage,
    #[error("product dimensions must be at least 1")]
    BadDimension,
}

/// The model on the direct sum: left generators first, then right ones.
pub fn product_model(m1: &ComplexModel, m2: &ComplexModel) -> Result<ComplexModel, ModelError> {
    let (n1, n2) = (m1.dim(), m2.dim());
    let n = n1 + n2;
    let d = m1.differentials().iter().map(|f| f.embed(n, 0)).chain(m2.differentials().iter().map(|f| f.embed(n, n1))).collect();
    ComplexModel::new(format!("{}x{}", m1.name(), m2.name()), n, d)
}

/// `e_r^{p,q}` of the product as the convolution of the two page-`r`
/// grids, indexed `[p][q]`.
pub fn kunneth_page(t1: &PageTable, t2: &PageTable, r: usize) -> Result<Vec<Vec<usize>>, ProductError> {
    if r == 0 {
        return Err(ProductError::BadPage);
    }
    for t in [t1, t2] {
        if r > t.r_max {
            return Err(ProductError::MissingPage { r, have: t.r_max });
        }
    }
    let n = t1.n + t2.n;
    let mut out = vec![vec![0usize; n + 1]; n + 1];
    for p1 in 0..=t1.n {
        for q1 in 0..=t1.n {
            let a = t1.get(r, p1, q1);
            if a == 0 {
                continue;
            }
            for p2 in 0..=t2.n {
                for q2 in 0..=t2.n {
                    out[p1 + p2][q1 + q2] += a * t2.get(r, p2, q2);
                }
            }
        }
    }
    Ok(out)
}

/// `c1(F + F')` from `c1(F)`, `c1(F')` and the dimensions.
pub fn product_c1(c1: &Rational, n1: usize, c1p: &Rational, n2: usize) -> Result<Rational, ProductError> {
    if n1 == 0 || n2 == 0 {
        return Err(ProductError::BadDimension);
    }
    let n = n1 + n2;
    let den = Rational::from_integer((n * (n - 1)).into());
    let w = |k: usize| Rational::from_integer((k * (k - 1)).into()) / &den;
    Ok(w(n1) * c1 + w(n2) * c1p)
}

/// Block-diagonal metric `F + F'` on the product.
pub fn product_metric(g1: &HermitianMetric, g2: &HermitianMetric) -> Result<HermitianMetric, HermitianError> {
    let (n1, n2) = (g1.dim(), g2.dim());
    let n = n1 + n2;
    let mut h = vec![vec![G::from_int(0); n]; n];
    for (k, row) in g1.matrix().iter().enumerate() {
        h[k][..n1].clone_from_slice(row);
    }
    for (k, row) in g2.matrix().iter().enumerate() {
        h[n1 + k][n1..].clone_from_slice(row);
    }
    Ok(HermitianMetric::from_h(h)?.with_name(format!("{}+{}", g1.name(), g2.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::torus;
    use crate::exec::Exec;
    use crate::fss::page_dims;
    use crate::linalg::rat;

    #[test]
    fn torus_products() {
        let t1 = torus(1).unwrap();
        let p = product_model(&t1, &t1).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.differentials().iter().all(|f| f.is_zero()));
        let a = page_dims(&t1, 2, Exec::Sequential).unwrap();
        let point = page_dims(&torus(2).unwrap(), 2, Exec::Sequential).unwrap();
        let conv = kunneth_page(&a, &a, 1).unwrap();
        assert_eq!(conv, point.page(1));
        assert!(matches!(kunneth_page(&a, &a, 3), Err(ProductError::MissingPage { .. })));
    }

    #[test]
    fn c1_weights() {
        let (a, b) = (rat(1, 3), rat(-2, 7));
        assert_eq!(product_c1(&a, 3, &b, 3).unwrap(), (&a + &b) / rat(5, 1));
        assert_eq!(product_c1(&rat(1, 1), 2, &rat(-1, 3), 3).unwrap(), rat(0, 1));
    }
}
