//! Differential resultant of two polynomials linear in the derivatives of
//! one indeterminate.

use crate::diffpoly::{DiffPoly, Indet};
use crate::error::{Error, Result};

/// Coefficient matrix of the prolongations
/// `f1^(m2), ..., f1, f2^(m1), ..., f2` with respect to
/// `v^(m1+m2), ..., v, 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantMatrix {
    pub entries: Vec<Vec<DiffPoly>>,
    /// The prolongation list, one polynomial per row.
    pub rows: Vec<DiffPoly>,
    /// `Some(k)` labels the column of `v^(k)`, `None` the constant column.
    pub columns: Vec<Option<usize>>,
    pub var: Indet,
}

impl ResultantMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

pub fn build_resultant_matrix(f1: &DiffPoly, f2: &DiffPoly) -> Result<ResultantMatrix> {
    build_resultant_matrix_in(f1, f2, Indet::U)
}

/// As [`build_resultant_matrix`], eliminating `var` instead of `u`.
pub fn build_resultant_matrix_in(
    f1: &DiffPoly,
    f2: &DiffPoly,
    var: Indet,
) -> Result<ResultantMatrix> {
    let mut orders = [0usize; 2];
    for (slot, f) in orders.iter_mut().zip([f1, f2]) {
        if f.degree_in_indet(var) > 1 {
            return Err(Error::NotLinear(var.name().into()));
        }
        *slot = f
            .order_in(var)
            .ok_or_else(|| Error::VariableAbsent(var.name().into()))?;
    }
    let [m1, m2] = orders;
    let top = m1 + m2;

    let mut rows = Vec::with_capacity(top + 2);
    for (f, prolong) in [(f1, m2), (f2, m1)] {
        let mut derivs = vec![f.clone()];
        for _ in 0..prolong {
            let next = derivs.last().unwrap().derive();
            derivs.push(next);
        }
        rows.extend(derivs.into_iter().rev());
    }

    let mut columns: Vec<Option<usize>> = (0..=top).rev().map(Some).collect();
    columns.push(None);

    let entries = rows
        .iter()
        .map(|row| {
            let (coeffs, free) = row.linear_coefficients(var)?;
            Ok(columns
                .iter()
                .map(|col| match col {
                    Some(k) => coeffs.get(k).cloned().unwrap_or_default(),
                    None => free.clone(),
                })
                .collect())
        })
        .collect::<Result<Vec<Vec<DiffPoly>>>>()?;

    Ok(ResultantMatrix {
        entries,
        rows,
        columns,
        var,
    })
}

/// Determinant by fraction-free (Bareiss) elimination. When the pivot
/// vanishes, the first row below it with a nonzero entry in the pivot
/// column is swapped in and the sign flipped, so the value equals the
/// cofactor expansion of the matrix as given.
pub fn det_fraction_free(matrix: &[Vec<DiffPoly>]) -> DiffPoly {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return DiffPoly::one();
    }
    let mut m = matrix.to_vec();
    let mut negate = false;
    let mut prev = DiffPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return DiffPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = cross
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

pub fn diff_resultant(f1: &DiffPoly, f2: &DiffPoly) -> Result<DiffPoly> {
    Ok(det_fraction_free(&build_resultant_matrix(f1, f2)?.entries))
}

pub fn diff_resultant_in(f1: &DiffPoly, f2: &DiffPoly, var: Indet) -> Result<DiffPoly> {
    Ok(det_fraction_free(
        &build_resultant_matrix_in(f1, f2, var)?.entries,
    ))
}
