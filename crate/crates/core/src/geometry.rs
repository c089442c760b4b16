//! Half-spaces, H-polyhedra, generator sets, and exact membership tests.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{dot_slices, Matrix, Rational, Vector};
use crate::farkas::{self, FarkasOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `a^t x <= b`
    Le,
    /// `a^t x < b`. Only produced internally, when a containment query negates a row.
    Lt,
}

impl Relation {
    /// Relation of a nonnegative combination of rows: strict if any parent is.
    pub fn combine(self, other: Relation) -> Relation {
        if self == Relation::Lt || other == Relation::Lt {
            Relation::Lt
        } else {
            Relation::Le
        }
    }

    /// Does `lhs (rel) rhs` hold?
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
        }
    }
}

/// The half-space `{x : normal^t x (rel) offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: Vector,
    pub offset: Rational,
    pub relation: Relation,
}

impl HalfSpace {
    pub fn le(normal: Vector, offset: Rational) -> Self {
        HalfSpace {
            normal,
            offset,
            relation: Relation::Le,
        }
    }

    pub fn lt(normal: Vector, offset: Rational) -> Self {
        HalfSpace {
            normal,
            offset,
            relation: Relation::Lt,
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        if x.dim() != self.dim() {
            return Err(Error::mismatch(
                "half-space membership",
                self.dim(),
                x.dim(),
            ));
        }
        Ok(self.contains_unchecked(x.entries()))
    }

    pub(crate) fn contains_unchecked(&self, x: &[Rational]) -> bool {
        let lhs = dot_slices(self.normal.entries(), x);
        self.relation.holds(&lhs, &self.offset)
    }

    /// A row whose normal is zero: `0 (rel) offset`.
    pub fn is_degenerate(&self) -> bool {
        self.normal.is_zero()
    }

    /// For a zero-normal row, whether it excludes every point.
    pub fn is_contradiction(&self) -> bool {
        self.is_degenerate() && !self.relation.holds(&Rational::zero(), &self.offset)
    }

    /// `sum_i weights[i] * rows[i]`, with the combined relation of the rows that carry weight.
    pub fn combination(dim: usize, rows: &[HalfSpace], weights: &[Rational]) -> HalfSpace {
        let mut normal = vec![Rational::zero(); dim];
        let mut offset = Rational::zero();
        let mut relation = Relation::Le;
        for (row, w) in rows.iter().zip(weights) {
            if w.is_zero() {
                continue;
            }
            for (acc, a) in normal.iter_mut().zip(row.normal.iter()) {
                *acc += w * a;
            }
            offset += w * &row.offset;
            relation = relation.combine(row.relation);
        }
        HalfSpace {
            normal: Vector::new(normal),
            offset,
            relation,
        }
    }
}

/// `{x in R^n : A x <= b}`, one relation per row. Rows keep their input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolyhedron {
    dim: usize,
    rows: Vec<HalfSpace>,
}

impl HPolyhedron {
    /// All of R^dim (no rows).
    pub fn universe(dim: usize) -> Self {
        HPolyhedron {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(dim: usize, rows: Vec<HalfSpace>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != dim) {
            return Err(Error::mismatch("constraint row", dim, bad.dim()));
        }
        Ok(HPolyhedron { dim, rows })
    }

    pub fn new(a: &Matrix, b: &Vector, relations: &[Relation]) -> Result<Self> {
        if a.rows() != b.dim() {
            return Err(Error::mismatch("right-hand side", a.rows(), b.dim()));
        }
        if a.rows() != relations.len() {
            return Err(Error::mismatch("relation list", a.rows(), relations.len()));
        }
        let rows = (0..a.rows())
            .map(|i| HalfSpace {
                normal: a.row_vector(i),
                offset: b[i].clone(),
                relation: relations[i],
            })
            .collect();
        Ok(HPolyhedron {
            dim: a.cols(),
            rows,
        })
    }

    /// `{x : A x <= b}`.
    pub fn from_le(a: &Matrix, b: &Vector) -> Result<Self> {
        HPolyhedron::new(a, b, &vec![Relation::Le; a.rows()])
    }

    /// The polyhedral cone `P(A) = {x : A x <= 0}`.
    pub fn cone(a: &Matrix) -> Self {
        HPolyhedron::from_le(a, &Vector::zeros(a.rows())).expect("shapes agree by construction")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[HalfSpace] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<HalfSpace> {
        self.rows
    }

    pub fn matrix(&self) -> Matrix {
        let normals: Vec<Vector> = self.rows.iter().map(|r| r.normal.clone()).collect();
        Matrix::from_rows(self.dim, &normals).expect("rows share the ambient dimension")
    }

    pub fn rhs(&self) -> Vector {
        self.rows.iter().map(|r| r.offset.clone()).collect()
    }

    pub fn relations(&self) -> Vec<Relation> {
        self.rows.iter().map(|r| r.relation).collect()
    }

    pub fn has_strict_rows(&self) -> bool {
        self.rows.iter().any(|r| r.relation == Relation::Lt)
    }

    /// True when every offset is zero and every row is non-strict.
    pub fn is_cone(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.offset.is_zero() && r.relation == Relation::Le)
    }

    /// Appends a row, returning the enlarged system.
    pub fn with_row(&self, row: HalfSpace) -> Result<Self> {
        if row.dim() != self.dim {
            return Err(Error::mismatch("constraint row", self.dim, row.dim()));
        }
        let mut rows = self.rows.clone();
        rows.push(row);
        Ok(HPolyhedron {
            dim: self.dim,
            rows,
        })
    }

    pub(crate) fn ensure_non_strict(&self) -> Result<()> {
        match self.rows.iter().position(|r| r.relation == Relation::Lt) {
            Some(row) => Err(Error::StrictRelation { row }),
            None => Ok(()),
        }
    }
}

/// The cone generated by a finite list of rays. No rays means `{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VCone {
    dim: usize,
    rays: Vec<Vector>,
}

impl VCone {
    pub fn new(dim: usize, rays: Vec<Vector>) -> Result<Self> {
        if let Some(bad) = rays.iter().find(|r| r.dim() != dim) {
            return Err(Error::mismatch("ray", dim, bad.dim()));
        }
        Ok(VCone { dim, rays })
    }

    pub fn zero(dim: usize) -> Self {
        VCone {
            dim,
            rays: Vec::new(),
        }
    }

    /// The cone `C(W)` generated by the columns of `W`.
    pub fn from_columns(w: &Matrix) -> Self {
        VCone {
            dim: w.rows(),
            rays: w.columns(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    /// The `n x p` matrix whose columns are the rays.
    pub fn ray_matrix(&self) -> Matrix {
        Matrix::from_columns(self.dim, &self.rays).expect("rays share the ambient dimension")
    }
}

/// Convex hull of a finite vertex list. No vertices means `{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
}

impl Polytope {
    pub fn new(dim: usize, vertices: Vec<Vector>) -> Result<Self> {
        if let Some(bad) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::mismatch("vertex", dim, bad.dim()));
        }
        Ok(Polytope { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// The vertex list with `conv(∅) = {0}` made explicit.
    pub fn effective_vertices(&self) -> Vec<Vector> {
        if self.vertices.is_empty() {
            vec![Vector::zeros(self.dim)]
        } else {
            self.vertices.clone()
        }
    }
}

/// The Minkowski sum `Q + C` of a polytope and a finitely generated cone.
///
/// `empty` marks the empty polyhedron. It is kept apart from an empty vertex
/// list, which denotes `{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPolyhedron {
    polytope: Polytope,
    cone: VCone,
    empty: bool,
}

impl VPolyhedron {
    pub fn new(polytope: Polytope, cone: VCone) -> Result<Self> {
        if polytope.dim() != cone.dim() {
            return Err(Error::mismatch("cone part", polytope.dim(), cone.dim()));
        }
        Ok(VPolyhedron {
            polytope,
            cone,
            empty: false,
        })
    }

    pub fn from_generators(dim: usize, vertices: Vec<Vector>, rays: Vec<Vector>) -> Result<Self> {
        VPolyhedron::new(Polytope::new(dim, vertices)?, VCone::new(dim, rays)?)
    }

    pub fn empty(dim: usize) -> Self {
        VPolyhedron {
            polytope: Polytope::new(dim, Vec::new()).expect("no vertices"),
            cone: VCone::zero(dim),
            empty: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn cone(&self) -> &VCone {
        &self.cone
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }
}

pub fn h_contains(p: &HPolyhedron, x: &Vector) -> Result<bool> {
    if x.dim() != p.dim() {
        return Err(Error::mismatch("polyhedron membership", p.dim(), x.dim()));
    }
    Ok(p.rows().iter().all(|r| r.contains_unchecked(x.entries())))
}

/// Is `x` a conic combination of the rays? Decided through the Farkas alternative.
pub fn vcone_contains(c: &VCone, x: &Vector) -> Result<bool> {
    if x.dim() != c.dim() {
        return Err(Error::mismatch("cone membership", c.dim(), x.dim()));
    }
    let outcome = farkas::decide(&c.ray_matrix(), x)?;
    Ok(matches!(outcome, FarkasOutcome::Solution(_)))
}

/// Is `x` a convex combination of the vertices? Lifts every vertex to
/// `(v, 1)` and asks whether `(x, 1)` lies in their cone.
pub fn polytope_contains(q: &Polytope, x: &Vector) -> Result<bool> {
    if x.dim() != q.dim() {
        return Err(Error::mismatch("polytope membership", q.dim(), x.dim()));
    }
    let lifted: Vec<Vector> = q
        .effective_vertices()
        .iter()
        .map(|v| v.extended(Rational::one()))
        .collect();
    let w = Matrix::from_columns(q.dim() + 1, &lifted)?;
    let outcome = farkas::decide(&w, &x.extended(Rational::one()))?;
    Ok(matches!(outcome, FarkasOutcome::Solution(_)))
}

/// Is `x` in `Q + C`? Same lift: vertices become `(v, 1)`, rays `(r, 0)`.
pub fn vpoly_contains(v: &VPolyhedron, x: &Vector) -> Result<bool> {
    if x.dim() != v.dim() {
        return Err(Error::mismatch("generator membership", v.dim(), x.dim()));
    }
    if v.is_empty() {
        return Ok(false);
    }
    let lifted: Vec<Vector> = v
        .polytope()
        .effective_vertices()
        .iter()
        .map(|q| q.extended(Rational::one()))
        .chain(v.cone().rays().iter().map(|r| r.extended(Rational::zero())))
        .collect();
    let w = Matrix::from_columns(v.dim() + 1, &lifted)?;
    let outcome = farkas::decide(&w, &x.extended(Rational::one()))?;
    Ok(matches!(outcome, FarkasOutcome::Solution(_)))
}

/// The single-row system for a half-space. Zero normals are kept as written.
pub fn halfspace_to_h(h: &HalfSpace) -> HPolyhedron {
    HPolyhedron {
        dim: h.dim(),
        rows: vec![h.clone()],
    }
}

/// Whether a zero-normal row `0 (rel) b` is satisfied by every point.
pub(crate) fn is_trivially_true(h: &HalfSpace) -> bool {
    h.is_degenerate() && h.relation.holds(&Rational::zero(), &h.offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, ratio};

    fn p_a1() -> HPolyhedron {
        HPolyhedron::cone(&Matrix::from_i64_rows(2, &[&[-1, 0], &[0, -1], &[-1, 1]]))
    }

    #[test]
    fn h_contains_examples() {
        let p = p_a1();
        assert!(h_contains(&p, &Vector::from_i64(&[2, 1])).unwrap());
        assert!(!h_contains(&p, &Vector::from_i64(&[1, 2])).unwrap());
        let all = HPolyhedron::universe(3);
        assert!(h_contains(&all, &Vector::from_i64(&[-7, 0, 9])).unwrap());
        assert!(h_contains(&p, &Vector::zeros(3)).is_err());
    }

    #[test]
    fn h_contains_respects_strict_rows() {
        let p =
            HPolyhedron::from_rows(1, vec![HalfSpace::lt(Vector::from_i64(&[1]), int(1))]).unwrap();
        assert!(!h_contains(&p, &Vector::from_i64(&[1])).unwrap());
        assert!(h_contains(&p, &Vector::new(vec![ratio(1, 2)])).unwrap());
    }

    #[test]
    fn vcone_contains_examples() {
        let c = VCone::new(
            2,
            vec![Vector::from_i64(&[1, 0]), Vector::from_i64(&[1, 1])],
        )
        .unwrap();
        assert!(vcone_contains(&c, &Vector::from_i64(&[3, 1])).unwrap());

        let zero = VCone::zero(2);
        assert!(vcone_contains(&zero, &Vector::zeros(2)).unwrap());
        assert!(!vcone_contains(&zero, &Vector::from_i64(&[1, 0])).unwrap());

        let line = VCone::new(2, vec![Vector::from_i64(&[1, 1])]).unwrap();
        assert!(!vcone_contains(&line, &Vector::from_i64(&[2, 3])).unwrap());
        assert!(vcone_contains(&line, &Vector::from_i64(&[2, 2])).unwrap());
    }

    #[test]
    fn polytope_contains_examples() {
        let simplex = Polytope::new(
            2,
            vec![Vector::from_i64(&[1, 0]), Vector::from_i64(&[0, 1])],
        )
        .unwrap();
        let mid = Vector::new(vec![ratio(1, 2), ratio(1, 2)]);
        assert!(polytope_contains(&simplex, &mid).unwrap());
        assert!(!polytope_contains(&simplex, &Vector::zeros(2)).unwrap());

        let empty = Polytope::new(2, vec![]).unwrap();
        assert!(polytope_contains(&empty, &Vector::zeros(2)).unwrap());
        assert!(!polytope_contains(&empty, &Vector::from_i64(&[0, 1])).unwrap());

        let triangle = Polytope::new(
            2,
            vec![
                Vector::from_i64(&[0, 0]),
                Vector::from_i64(&[2, 0]),
                Vector::from_i64(&[0, 2]),
            ],
        )
        .unwrap();
        assert!(polytope_contains(&triangle, &Vector::from_i64(&[1, 1])).unwrap());
        assert!(!polytope_contains(&triangle, &Vector::new(vec![ratio(3, 2), int(1)])).unwrap());
    }

    #[test]
    fn halfspace_to_h_keeps_degenerate_rows() {
        let h = halfspace_to_h(&HalfSpace::le(Vector::from_i64(&[1, 1]), int(1)));
        assert_eq!(h.num_rows(), 1);
        assert!(h_contains(&h, &Vector::new(vec![ratio(1, 2), ratio(1, 2)])).unwrap());

        let empty = halfspace_to_h(&HalfSpace::le(Vector::zeros(2), int(-1)));
        assert_eq!(empty.num_rows(), 1);
        assert!(empty.rows()[0].is_contradiction());
        assert!(!h_contains(&empty, &Vector::zeros(2)).unwrap());

        let all = halfspace_to_h(&HalfSpace::le(Vector::zeros(2), int(5)));
        assert_eq!(all.num_rows(), 1);
        assert!(is_trivially_true(&all.rows()[0]));
        assert!(h_contains(&all, &Vector::from_i64(&[100, -100])).unwrap());
    }

    #[test]
    fn combination_is_strict_when_a_parent_is() {
        let rows = vec![
            HalfSpace::le(Vector::from_i64(&[1, 0]), int(1)),
            HalfSpace::lt(Vector::from_i64(&[-1, 1]), int(0)),
        ];
        let c = HalfSpace::combination(2, &rows, &[int(1), int(1)]);
        assert_eq!(c.normal, Vector::from_i64(&[0, 1]));
        assert_eq!(c.offset, int(1));
        assert_eq!(c.relation, Relation::Lt);
        let c = HalfSpace::combination(2, &rows, &[int(2), int(0)]);
        assert_eq!(c.relation, Relation::Le);
    }

    #[test]
    fn constructors_reject_ragged_input() {
        assert!(VCone::new(2, vec![Vector::zeros(3)]).is_err());
        assert!(Polytope::new(1, vec![Vector::zeros(2)]).is_err());
        assert!(HPolyhedron::from_rows(2, vec![HalfSpace::le(Vector::zeros(1), int(0))]).is_err());
    }
}
