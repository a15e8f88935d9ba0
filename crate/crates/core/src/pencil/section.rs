//! Linear sections: substitute independent linear forms into a matrix of
//! linear forms and drop the eliminated variables.

use super::{LinearForm, LinearFormMatrix};
use crate::matrix::QMatrix;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SectionError {
    #[error("the given linear forms are linearly dependent")]
    DependentForms,
    #[error("a section form has the wrong coefficient length")]
    BadFormLength,
}

/// Cuts `x` by the given linear forms. The forms are triangularized to rows
/// `x_i - sum_{j>i} a_j x_j` (each pivot is the smallest-index variable of its
/// row), then each pivot variable is substituted by its tail and removed from
/// the variable list.
pub fn section(x: &LinearFormMatrix, forms: &[LinearForm]) -> Result<LinearFormMatrix, SectionError> {
    if forms.is_empty() {
        return Ok(x.clone());
    }
    let n = x.num_vars();
    for f in forms {
        if f.coeffs.len() != n {
            return Err(SectionError::BadFormLength);
        }
    }
    let mat = QMatrix::from_rows(forms.iter().map(|f| f.coeffs.clone()).collect());
    let red = mat.rref();
    if red.rank < forms.len() {
        return Err(SectionError::DependentForms);
    }
    // Substitution for pivot variable i: x_i := -(tail over non-pivot vars).
    let pivots = &red.pivot_cols;
    let is_pivot = |j: usize| pivots.contains(&j);
    let keep: Vec<usize> = (0..n).filter(|j| !is_pivot(*j)).collect();
    let new_n = keep.len();

    let substitute = |f: &LinearForm| -> LinearForm {
        let mut out = vec![Rational::zero(); new_n];
        for (new_j, &old_j) in keep.iter().enumerate() {
            out[new_j] = f.coeffs[old_j].clone();
        }
        for (r, &pc) in pivots.iter().enumerate() {
            let c = &f.coeffs[pc];
            if c.is_zero() {
                continue;
            }
            for (new_j, &old_j) in keep.iter().enumerate() {
                let coeff = &red.matrix[(r, old_j)];
                if !coeff.is_zero() {
                    let delta = c * coeff;
                    out[new_j] -= &delta;
                }
            }
        }
        LinearForm { coeffs: out }
    };

    let rows = [
        x.rows[0].iter().map(substitute).collect(),
        x.rows[1].iter().map(substitute).collect(),
    ];
    let variables = keep.iter().map(|&j| x.variables[j].clone()).collect();
    Ok(LinearFormMatrix::new(variables, rows))
}
