//! Conversions between constraint and generator descriptions.
//!
//! * [`weyl_v_to_h`]: a cone given by rays becomes `{x : A x <= 0}` by
//!   projecting the lifted cone `{(y, x) : y >= 0, x = W y}` onto `x`.
//! * [`minkowski_h_to_v`]: `P(A)` becomes rays by running the previous
//!   conversion on `C(A^t)`; its rows are the rays of `P(A)`.
//! * [`decompose`] / [`compose`]: a polyhedron `{x : A x <= b}` and a sum
//!   `conv(Q) + cone(C)`, passing through the homogenized cone in R^{n+1}.
//!
//! None of the outputs are minimal. Comparisons go through [`h_equal`] and
//! [`v_equal`], which test set equality.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational, Vector};
use crate::fourier_motzkin::{feasible, implies, project, reduce};
use crate::geometry::{HPolyhedron, HalfSpace, Polytope, VCone, VPolyhedron};

/// The `(p + 2n) x (p + n)` matrix `[[-I_p, 0], [W, -I_n], [-W, I_n]]`.
///
/// Its cone is `{(y, x) : y >= 0, x = W y}`, whose projection onto `x` is `C(W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCone {
    pub matrix: Matrix,
    pub generators: usize,
    pub ambient_dim: usize,
}

impl LiftedCone {
    pub fn new(cone: &VCone) -> Self {
        let (p, n) = (cone.rays().len(), cone.dim());
        let w = cone.ray_matrix();
        let mut data: Vec<Rational> = Vec::with_capacity((p + 2 * n) * (p + n));
        for i in 0..p {
            for j in 0..p + n {
                data.push(if j == i {
                    -Rational::one()
                } else {
                    Rational::zero()
                });
            }
        }
        for sign in [Rational::one(), -Rational::one()] {
            for i in 0..n {
                for j in 0..p {
                    data.push(&sign * w.get(i, j));
                }
                for j in 0..n {
                    data.push(if j == i { -&sign } else { Rational::zero() });
                }
            }
        }
        LiftedCone {
            matrix: Matrix::new(p + 2 * n, p + n, data).expect("block sizes add up"),
            generators: p,
            ambient_dim: n,
        }
    }
}

/// The `(m + 1) x (n + 1)` matrix `[[A, -b], [0, -1]]` with
/// `x in P` iff `(x, 1)` satisfies `Â (x, t) <= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogenization {
    pub matrix: Matrix,
}

impl Homogenization {
    pub fn new(p: &HPolyhedron) -> Self {
        let n = p.dim();
        let mut rows: Vec<Vector> = p
            .rows()
            .iter()
            .map(|r| r.normal.extended(-r.offset.clone()))
            .collect();
        rows.push(Vector::zeros(n).extended(-Rational::one()));
        Homogenization {
            matrix: Matrix::from_rows(n + 1, &rows).expect("every row has n + 1 entries"),
        }
    }

    pub fn cone(&self) -> HPolyhedron {
        HPolyhedron::cone(&self.matrix)
    }
}

/// An H-description `{x : A x <= 0}` of the cone spanned by `cone`'s rays.
///
/// The multiplier coordinates of the lifted cone are eliminated in ascending
/// order; the empty ray list yields the rows `x_i <= 0, -x_i <= 0`.
pub fn weyl_v_to_h(cone: &VCone) -> HPolyhedron {
    let lifted = LiftedCone::new(cone);
    let system = HPolyhedron::cone(&lifted.matrix);
    let (projected, _) =
        project(&system, lifted.ambient_dim).expect("ambient dimension is within range");
    reduce(&projected)
}

/// Rays generating the polyhedral cone `P(A)`.
pub fn minkowski_h_to_v(p: &HPolyhedron) -> Result<VCone> {
    p.ensure_non_strict()?;
    if let Some(row) = p.rows().iter().position(|r| !r.offset.is_zero()) {
        return Err(Error::NotACone { row });
    }
    let dual = VCone::new(p.dim(), p.rows().iter().map(|r| r.normal.clone()).collect())?;
    let bt = weyl_v_to_h(&dual);
    VCone::new(
        p.dim(),
        bt.into_rows().into_iter().map(|r| r.normal).collect(),
    )
}

/// Checks that `P(A) = C(B)` implies `P(B^t) = C(A^t)` for this pair.
///
/// Vacuously true when the hypothesis fails.
pub fn duality_transfer(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.cols() != b.rows() {
        return Err(Error::mismatch("duality pair", a.cols(), b.rows()));
    }
    let hypothesis = h_equal(&HPolyhedron::cone(a), &weyl_v_to_h(&VCone::from_columns(b)))?;
    if !hypothesis {
        return Ok(true);
    }
    h_equal(
        &HPolyhedron::cone(&b.transpose()),
        &weyl_v_to_h(&VCone::from_columns(&a.transpose())),
    )
}

/// Splits a polyhedron into a polytope plus a finitely generated cone.
///
/// Generators `(w, t)` of the homogenized cone have `t >= 0`; those with
/// `t > 0` are scaled to `(w / t, 1)` and become vertices, the rest become
/// rays. An empty polyhedron has no `t > 0` generator and comes back tagged
/// empty.
pub fn decompose(p: &HPolyhedron) -> Result<VPolyhedron> {
    p.ensure_non_strict()?;
    let n = p.dim();
    let generators = minkowski_h_to_v(&Homogenization::new(p).cone())?;
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for g in generators.rays() {
        let t = &g[n];
        debug_assert!(!t.is_negative(), "homogenized cone forces t >= 0");
        let w: Vector = g.entries()[..n].iter().cloned().collect();
        if t.is_positive() {
            vertices.push(w.scale(&t.recip()));
        } else {
            rays.push(w);
        }
    }
    if vertices.is_empty() {
        return Ok(VPolyhedron::empty(n));
    }
    VPolyhedron::new(Polytope::new(n, vertices)?, VCone::new(n, rays)?)
}

/// An H-description of `Q + C`.
///
/// Vertices lift to `(v, 1)` and rays to `(r, 0)`; each row `(a, beta)` of the
/// lifted cone's H-description gives `a^t x <= -beta`. The empty tag yields
/// the single row `0 <= -1`.
pub fn compose(v: &VPolyhedron) -> HPolyhedron {
    let n = v.dim();
    if v.is_empty() {
        return HPolyhedron::from_rows(n, vec![HalfSpace::le(Vector::zeros(n), -Rational::one())])
            .expect("row has n entries");
    }
    let mut lifted: Vec<Vector> = v
        .polytope()
        .effective_vertices()
        .iter()
        .map(|q| q.extended(Rational::one()))
        .collect();
    lifted.extend(v.cone().rays().iter().map(|r| r.extended(Rational::zero())));
    let cone = VCone::new(n + 1, lifted).expect("lifted generators live in R^{n+1}");
    let rows = weyl_v_to_h(&cone)
        .into_rows()
        .into_iter()
        .map(|r| {
            let normal: Vector = r.normal.entries()[..n].iter().cloned().collect();
            HalfSpace::le(normal, -r.normal[n].clone())
        })
        .collect();
    reduce(&HPolyhedron::from_rows(n, rows).expect("rows have n entries"))
}

/// Set equality of two non-strict systems by mutual implication.
pub fn h_equal(p: &HPolyhedron, r: &HPolyhedron) -> Result<bool> {
    if p.dim() != r.dim() {
        return Err(Error::mismatch("polyhedron comparison", p.dim(), r.dim()));
    }
    p.ensure_non_strict()?;
    r.ensure_non_strict()?;
    match (feasible(p), feasible(r)) {
        (false, false) => return Ok(true),
        (true, true) => {}
        _ => return Ok(false),
    }
    for row in r.rows() {
        if !implies(p, row)? {
            return Ok(false);
        }
    }
    for row in p.rows() {
        if !implies(r, row)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Set equality of two generator descriptions, compared through [`compose`].
pub fn v_equal(v: &VPolyhedron, w: &VPolyhedron) -> Result<bool> {
    if v.dim() != w.dim() {
        return Err(Error::mismatch("generator comparison", v.dim(), w.dim()));
    }
    h_equal(&compose(v), &compose(w))
}
