//! The Farkas alternative for `(W, b)`, with a certificate for either side.
//!
//! Either `b = W y` for some `y >= 0`, or some `v` has `v^t W <= 0` and
//! `v^t b > 0`. The decision goes through an H-description `C(W) = P(A)`:
//! `b` is in the cone iff `A b <= 0`, and otherwise any row of `A` with a
//! positive product against `b` is a separator.

use num_traits::{One, Signed, Zero};

use crate::conversion::weyl_v_to_h;
use crate::error::{Error, Result};
use crate::exactlin::{dot_slices, mat_vec, Matrix, Rational, Vector};
use crate::fourier_motzkin::witness;
use crate::geometry::{HPolyhedron, HalfSpace, VCone};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomeKind {
    Solution,
    Separator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FarkasOutcome {
    /// `y >= 0` with `W y = b`.
    Solution(Vector),
    /// `v` with `v^t W <= 0` and `v^t b > 0`.
    Separator(Vector),
}

impl FarkasOutcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            FarkasOutcome::Solution(_) => OutcomeKind::Solution,
            FarkasOutcome::Separator(_) => OutcomeKind::Separator,
        }
    }

    pub fn y(&self) -> Option<&Vector> {
        match self {
            FarkasOutcome::Solution(y) => Some(y),
            FarkasOutcome::Separator(_) => None,
        }
    }

    pub fn v(&self) -> Option<&Vector> {
        match self {
            FarkasOutcome::Separator(v) => Some(v),
            FarkasOutcome::Solution(_) => None,
        }
    }
}

/// Decides which alternative holds for the `n x p` matrix `W` and `b` in R^n.
pub fn decide(w: &Matrix, b: &Vector) -> Result<FarkasOutcome> {
    if b.dim() != w.rows() {
        return Err(Error::mismatch("Farkas right-hand side", w.rows(), b.dim()));
    }
    let a = weyl_v_to_h(&VCone::from_columns(w));
    for row in a.rows() {
        if dot_slices(row.normal.entries(), b.entries()).is_positive() {
            return Ok(FarkasOutcome::Separator(row.normal.clone()));
        }
    }
    let y = witness(&nonnegative_solution_system(w, b))
        .expect("b satisfies every row of an H-description of C(W)");
    Ok(FarkasOutcome::Solution(y))
}

/// `{y in R^p : W y <= b, -W y <= -b, -y <= 0}`.
fn nonnegative_solution_system(w: &Matrix, b: &Vector) -> HPolyhedron {
    let p = w.cols();
    let mut rows = Vec::with_capacity(2 * w.rows() + p);
    for i in 0..w.rows() {
        rows.push(HalfSpace::le(w.row_vector(i), b[i].clone()));
    }
    for i in 0..w.rows() {
        rows.push(HalfSpace::le(w.row_vector(i).neg(), -b[i].clone()));
    }
    for j in 0..p {
        rows.push(HalfSpace::le(
            Vector::unit(p, j).scale(&-Rational::one()),
            Rational::zero(),
        ));
    }
    HPolyhedron::from_rows(p, rows).expect("rows are built with p columns")
}

/// Re-checks a certificate exactly. Malformed certificates are rejected, not errors.
pub fn verify(w: &Matrix, b: &Vector, outcome: &FarkasOutcome) -> bool {
    if b.dim() != w.rows() {
        return false;
    }
    match outcome {
        FarkasOutcome::Solution(y) => {
            y.dim() == w.cols()
                && y.is_nonnegative()
                && mat_vec(w, y).map(|wy| &wy == b).unwrap_or(false)
        }
        FarkasOutcome::Separator(v) => {
            v.dim() == w.rows()
                && mat_vec(&w.transpose(), v)
                    .map(|vw| vw.is_nonpositive())
                    .unwrap_or(false)
                && dot_slices(v.entries(), b.entries()).is_positive()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1_t() -> Matrix {
        Matrix::from_i64_rows(3, &[&[-1, 0, -1], &[0, -1, 1]])
    }

    #[test]
    fn identity_solution() {
        let w = Matrix::identity(2);
        let b = Vector::from_i64(&[2, 3]);
        let out = decide(&w, &b).unwrap();
        assert_eq!(out, FarkasOutcome::Solution(Vector::from_i64(&[2, 3])));
        assert!(verify(&w, &b, &out));
    }

    #[test]
    fn identity_separator() {
        let w = Matrix::identity(2);
        let b = Vector::from_i64(&[-1, 0]);
        let out = decide(&w, &b).unwrap();
        assert_eq!(out.kind(), OutcomeKind::Separator);
        assert!(verify(&w, &b, &out));
        let v = out.v().unwrap();
        assert!(v[0].is_negative());
    }

    #[test]
    fn transposed_cone_example() {
        let w = a1_t();
        let b = Vector::from_i64(&[-2, -1]);
        let out = decide(&w, &b).unwrap();
        assert_eq!(out.kind(), OutcomeKind::Solution);
        assert!(verify(&w, &b, &out));
        let y = out.y().unwrap();
        assert_eq!(mat_vec(&w, y).unwrap(), b);
    }

    #[test]
    fn verify_rejects_bad_certificates() {
        let w = Matrix::identity(2);
        let b = Vector::from_i64(&[2, 3]);
        assert!(verify(
            &w,
            &b,
            &FarkasOutcome::Solution(Vector::from_i64(&[2, 3]))
        ));
        assert!(!verify(
            &w,
            &b,
            &FarkasOutcome::Separator(Vector::from_i64(&[1, 0]))
        ));
        assert!(!verify(
            &w,
            &b,
            &FarkasOutcome::Solution(Vector::from_i64(&[2]))
        ));
        assert!(!verify(
            &w,
            &b,
            &FarkasOutcome::Solution(Vector::from_i64(&[3, 2]))
        ));
        let neg = Vector::from_i64(&[-1, 0]);
        assert!(!verify(&w, &neg, &FarkasOutcome::Solution(neg.clone())));
        assert!(!verify(&w, &Vector::zeros(3), &FarkasOutcome::Solution(b)));
    }

    #[test]
    fn empty_generator_list() {
        let w = Matrix::zeros(2, 0);
        let out = decide(&w, &Vector::zeros(2)).unwrap();
        assert_eq!(out, FarkasOutcome::Solution(Vector::zeros(0)));
        let b = Vector::from_i64(&[0, 5]);
        let out = decide(&w, &b).unwrap();
        assert_eq!(out.kind(), OutcomeKind::Separator);
        assert!(verify(&w, &b, &out));
    }

    #[test]
    fn decide_rejects_mismatch() {
        assert!(decide(&Matrix::identity(2), &Vector::zeros(3)).is_err());
    }
}
