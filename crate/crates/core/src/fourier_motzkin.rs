//! Fourier-Motzkin elimination with exact multiplier provenance.
//!
//! Eliminating `x_k` from `A x <= b` partitions the rows by the sign of
//! their `k`-th coefficient. Every (positive, negative) pair yields one row
//! with `x_k` cancelled, and every zero-coefficient row is carried over, so
//! a step produces exactly `|S+| * |S-| + |S0|` rows before reduction.
//! Each derived row remembers the nonnegative multipliers that build it from
//! the rows of the step's input, which makes every projection and every
//! infeasibility verdict checkable after the fact.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{dot_slices, normalize_row, Rational, Vector};
use crate::geometry::{is_trivially_true, HPolyhedron, HalfSpace, Relation};

/// Row indices of a step's input, split by the sign of the eliminated coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub zero: Vec<usize>,
}

impl Partition {
    /// `|S+| * |S-| + |S0|`.
    pub fn derived_count(&self) -> usize {
        self.positive.len() * self.negative.len() + self.zero.len()
    }
}

/// A row of a step's output with its multipliers over the step's input rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedRow {
    pub row: HalfSpace,
    pub multipliers: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStep {
    /// Position of the eliminated variable in `input`.
    pub eliminated_index: usize,
    pub partition: Partition,
    /// The system this step was applied to.
    pub input: HPolyhedron,
    /// The step's output rows. Inside a [`project`] trace these are the rows
    /// left after [`reduce`], with multipliers rescaled to match.
    pub derived_rows: Vec<DerivedRow>,
    /// Row count straight out of the elimination, before any reduction.
    pub pre_reduce_count: usize,
}

impl EliminationStep {
    pub fn output(&self) -> HPolyhedron {
        let rows = self.derived_rows.iter().map(|d| d.row.clone()).collect();
        HPolyhedron::from_rows(self.input.dim() - 1, rows).expect("derived rows drop one variable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTrace {
    pub original: HPolyhedron,
    pub steps: Vec<EliminationStep>,
    pub final_system: HPolyhedron,
}

impl EliminationTrace {
    /// Multipliers expressing each final row over the original rows.
    pub fn final_multipliers(&self) -> Vec<Vector> {
        let m = self.original.num_rows();
        let mut current: Vec<Vector> = (0..m).map(|i| Vector::unit(m, i)).collect();
        for step in &self.steps {
            current = step
                .derived_rows
                .iter()
                .map(|d| {
                    let mut acc = vec![Rational::zero(); m];
                    for (w, prev) in d.multipliers.iter().zip(&current) {
                        if w.is_zero() {
                            continue;
                        }
                        for (a, p) in acc.iter_mut().zip(prev.iter()) {
                            *a += w * p;
                        }
                    }
                    Vector::new(acc)
                })
                .collect();
        }
        current
    }

    /// Extends a point of the final system back to a point of the original.
    ///
    /// Each eliminated variable is chosen inside its feasible interval: the
    /// largest lower bound if any, else the smallest upper bound, else zero.
    /// Returns `None` when `point` violates the final system.
    pub fn lift(&self, point: &Vector) -> Option<Vector> {
        if point.dim() != self.final_system.dim() {
            return None;
        }
        if !self
            .final_system
            .rows()
            .iter()
            .all(|r| r.contains_unchecked(point.entries()))
        {
            return None;
        }
        let mut values = point.entries().to_vec();
        for step in self.steps.iter().rev() {
            let k = step.eliminated_index;
            let value = choose_in_interval(step.input.rows(), k, &values)?;
            values.insert(k, value);
        }
        Some(Vector::new(values))
    }
}

struct Bound {
    value: Rational,
    strict: bool,
}

/// Picks `x_k` for a row set given the other coordinates (`rest` omits `k`).
fn choose_in_interval(rows: &[HalfSpace], k: usize, rest: &[Rational]) -> Option<Rational> {
    let mut lower: Option<Bound> = None;
    let mut upper: Option<Bound> = None;
    for row in rows {
        let coef = &row.normal[k];
        if coef.is_zero() {
            continue;
        }
        let mut residual = row.offset.clone();
        for (j, a) in row.normal.iter().enumerate() {
            if j == k || a.is_zero() {
                continue;
            }
            let r = if j < k { &rest[j] } else { &rest[j - 1] };
            residual -= a * r;
        }
        let value = residual / coef;
        let strict = row.relation == Relation::Lt;
        if coef.is_positive() {
            let tighter = match &upper {
                None => true,
                Some(u) => value < u.value || (value == u.value && strict),
            };
            if tighter {
                upper = Some(Bound { value, strict });
            }
        } else {
            let tighter = match &lower {
                None => true,
                Some(l) => value > l.value || (value == l.value && strict),
            };
            if tighter {
                lower = Some(Bound { value, strict });
            }
        }
    }
    let one = Rational::one();
    match (lower, upper) {
        (None, None) => Some(Rational::zero()),
        (Some(l), None) => Some(if l.strict { l.value + one } else { l.value }),
        (None, Some(u)) => Some(if u.strict { u.value - one } else { u.value }),
        (Some(l), Some(u)) => {
            let open = l.strict || u.strict;
            if l.value > u.value || (l.value == u.value && open) {
                None
            } else if !l.strict {
                Some(l.value)
            } else if !u.strict {
                Some(u.value)
            } else {
                Some((l.value + u.value) / Rational::from_integer(2.into()))
            }
        }
    }
}

/// Eliminates variable `k`, returning the projected system and the step record.
///
/// Output rows are all (positive, negative) pair rows in row order, followed
/// by the zero-coefficient rows. No reduction is applied.
pub fn eliminate_one(p: &HPolyhedron, k: usize) -> Result<(HPolyhedron, EliminationStep)> {
    let n = p.dim();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, dim: n });
    }
    let rows = p.rows();
    let mut partition = Partition::default();
    for (i, row) in rows.iter().enumerate() {
        let c = &row.normal[k];
        if c.is_positive() {
            partition.positive.push(i);
        } else if c.is_negative() {
            partition.negative.push(i);
        } else {
            partition.zero.push(i);
        }
    }

    let m = rows.len();
    let drop_k = |v: &Vector| -> Vector {
        v.iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, e)| e.clone())
            .collect()
    };

    let mut derived = Vec::with_capacity(partition.derived_count());
    for &pi in &partition.positive {
        let wp = rows[pi].normal[k].recip();
        for &qi in &partition.negative {
            let wq = -rows[qi].normal[k].recip();
            let mut weights = vec![Rational::zero(); m];
            weights[pi] = wp.clone();
            weights[qi] = wq;
            let combined = HalfSpace::combination(n, rows, &weights);
            derived.push(DerivedRow {
                row: HalfSpace {
                    normal: drop_k(&combined.normal),
                    offset: combined.offset,
                    relation: combined.relation,
                },
                multipliers: Vector::new(weights),
            });
        }
    }
    for &ri in &partition.zero {
        let row = &rows[ri];
        derived.push(DerivedRow {
            row: HalfSpace {
                normal: drop_k(&row.normal),
                offset: row.offset.clone(),
                relation: row.relation,
            },
            multipliers: Vector::unit(m, ri),
        });
    }

    let step = EliminationStep {
        eliminated_index: k,
        partition,
        input: p.clone(),
        pre_reduce_count: derived.len(),
        derived_rows: derived,
    };
    Ok((step.output(), step))
}

/// Projects onto the last `keep_last` coordinates by eliminating the leading
/// variables in index order.
///
/// After the `s`-th elimination, a row built from more than `s + 1` original
/// rows is dropped: it is a nonnegative combination of rows with smaller
/// support that the elimination also produces (Chernikov's criterion). The
/// survivors are then reduced, except that before the last step a duplicate
/// is only absorbed by a row whose support lies inside its own.
pub fn project(p: &HPolyhedron, keep_last: usize) -> Result<(HPolyhedron, EliminationTrace)> {
    let n = p.dim();
    if keep_last > n {
        return Err(Error::IndexOutOfRange {
            index: keep_last,
            dim: n,
        });
    }
    let m = p.num_rows();
    let mut supports: Vec<Support> = (0..m).map(|i| Support::single(m, i)).collect();
    let mut current = p.clone();
    let mut steps = Vec::with_capacity(n - keep_last);
    for eliminated in 1..=(n - keep_last) {
        let (_, mut step) = eliminate_one(&current, 0)?;
        let derived = std::mem::take(&mut step.derived_rows);
        let mut survivors = Vec::with_capacity(derived.len());
        let mut survivor_supports = Vec::with_capacity(derived.len());
        for d in derived {
            let support = Support::union_over(m, &supports, &d.multipliers);
            if support.len() <= eliminated + 1 {
                survivors.push(d);
                survivor_supports.push(support);
            }
        }
        let rows: Vec<HalfSpace> = survivors.iter().map(|d| d.row.clone()).collect();
        let filtered = HPolyhedron::from_rows(current.dim() - 1, rows)?;
        // the last step has no descendants, so plain reduction is safe there
        let kept = if eliminated == n - keep_last {
            reduce_tracked(&filtered)
        } else {
            reduce_with_supports(&filtered, Some(&survivor_supports))
        };
        supports = kept
            .iter()
            .map(|(src, _, _)| survivor_supports[*src].clone())
            .collect();
        step.derived_rows = kept
            .into_iter()
            .map(|(src, scale, row)| DerivedRow {
                row,
                multipliers: survivors[src].multipliers.scale(&scale),
            })
            .collect();
        current = step.output();
        steps.push(step);
    }
    let trace = EliminationTrace {
        original: p.clone(),
        steps,
        final_system: current.clone(),
    };
    Ok((current, trace))
}

/// Set of original row indices a derived row depends on.
#[derive(Clone, Debug)]
struct Support {
    words: Vec<u64>,
}

impl Support {
    fn empty(m: usize) -> Self {
        Support {
            words: vec![0; m.div_ceil(64)],
        }
    }

    fn single(m: usize, i: usize) -> Self {
        let mut s = Support::empty(m);
        s.words[i / 64] |= 1 << (i % 64);
        s
    }

    /// Union of the supports of the rows carrying nonzero weight.
    fn union_over(m: usize, parents: &[Support], weights: &Vector) -> Self {
        let mut s = Support::empty(m);
        for (parent, w) in parents.iter().zip(weights.iter()) {
            if w.is_zero() {
                continue;
            }
            for (a, b) in s.words.iter_mut().zip(&parent.words) {
                *a |= b;
            }
        }
        s
    }

    fn is_subset(&self, other: &Support) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Syntactic cleanup that preserves the solution set.
///
/// Rows are normalized, rows with the same normalized normal collapse onto
/// the tightest one (smaller offset, then strict over non-strict), and
/// zero-normal rows that hold everywhere are dropped. A group keeps the
/// position of its first occurrence.
pub fn reduce(p: &HPolyhedron) -> HPolyhedron {
    let rows = reduce_tracked(p)
        .into_iter()
        .map(|(_, _, row)| row)
        .collect();
    HPolyhedron::from_rows(p.dim(), rows).expect("reduction keeps the dimension")
}

/// Like [`reduce`], also reporting for each kept row its source index and the
/// positive scale with `kept = scale * source`.
fn reduce_tracked(p: &HPolyhedron) -> Vec<(usize, Rational, HalfSpace)> {
    reduce_with_supports(p, None)
}

/// With supports, a row only absorbs another when it is at least as tight and
/// its support is a subset of the other's; otherwise both stay. Pruning by
/// support size relies on that: a surviving row must never stand in for a
/// row built from fewer original rows.
fn reduce_with_supports(
    p: &HPolyhedron,
    supports: Option<&[Support]>,
) -> Vec<(usize, Rational, HalfSpace)> {
    let mut kept: Vec<Option<(usize, Rational, HalfSpace)>> = Vec::new();
    let mut groups: HashMap<Vector, Vec<usize>> = HashMap::new();
    let covers = |a: usize, b: usize| supports.is_none_or(|s| s[a].is_subset(&s[b]));
    for (i, row) in p.rows().iter().enumerate() {
        if is_trivially_true(row) {
            continue;
        }
        let scale = match row.normal.iter().find(|e| !e.is_zero()) {
            Some(lead) => lead.abs().recip(),
            None if !row.offset.is_zero() => row.offset.abs().recip(),
            None => Rational::one(),
        };
        let (normal, offset) = normalize_row(&row.normal, &row.offset);
        let candidate = HalfSpace {
            normal,
            offset,
            relation: row.relation,
        };
        let members = groups.entry(candidate.normal.clone()).or_default();
        let dominated = members.iter().any(|&at| {
            let (src, _, existing) = kept[at].as_ref().expect("group members are live");
            at_least_as_tight(existing, &candidate) && covers(*src, i)
        });
        if dominated {
            continue;
        }
        let mut slot = None;
        members.retain(|&at| {
            let (src, _, existing) = kept[at].as_ref().expect("group members are live");
            if at_least_as_tight(&candidate, existing) && covers(i, *src) {
                kept[at] = None;
                slot.get_or_insert(at);
                false
            } else {
                true
            }
        });
        let at = match slot {
            Some(at) => at,
            None => {
                kept.push(None);
                kept.len() - 1
            }
        };
        kept[at] = Some((i, scale, candidate));
        members.push(at);
    }
    kept.into_iter().flatten().collect()
}

/// Same normal: `a` implies `b`.
fn at_least_as_tight(a: &HalfSpace, b: &HalfSpace) -> bool {
    a.offset < b.offset
        || (a.offset == b.offset && (a.relation == Relation::Lt || b.relation == Relation::Le))
}

/// Whether the system has a solution. Strict rows are honored.
pub fn feasible(p: &HPolyhedron) -> bool {
    let (last, _) = project(p, 0).expect("keep_last = 0 is always in range");
    !last.rows().iter().any(HalfSpace::is_contradiction)
}

/// A point of the system obtained by back-substitution, or `None` if empty.
pub fn witness(p: &HPolyhedron) -> Option<Vector> {
    let (last, trace) = project(p, 0).expect("keep_last = 0 is always in range");
    if last.rows().iter().any(HalfSpace::is_contradiction) {
        return None;
    }
    trace.lift(&Vector::zeros(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumStatus {
    Infeasible,
    Unbounded,
    Finite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremumResult {
    pub status: ExtremumStatus,
    pub value: Option<Rational>,
    pub witness: Option<Vector>,
}

impl ExtremumResult {
    fn without_value(status: ExtremumStatus) -> Self {
        ExtremumResult {
            status,
            value: None,
            witness: None,
        }
    }
}

/// Optimizes `c^t x` over a non-strict system.
///
/// A fresh last coordinate `t` is tied to the objective by `t - c^t x <= 0`
/// and `c^t x - t <= 0`; eliminating every original variable leaves bounds
/// on `t` alone.
pub fn extremum(p: &HPolyhedron, c: &Vector, sense: Sense) -> Result<ExtremumResult> {
    let n = p.dim();
    if c.dim() != n {
        return Err(Error::mismatch("objective", n, c.dim()));
    }
    p.ensure_non_strict()?;
    if !feasible(p) {
        return Ok(ExtremumResult::without_value(ExtremumStatus::Infeasible));
    }

    let mut rows: Vec<HalfSpace> = p
        .rows()
        .iter()
        .map(|r| HalfSpace {
            normal: r.normal.extended(Rational::zero()),
            offset: r.offset.clone(),
            relation: r.relation,
        })
        .collect();
    rows.push(HalfSpace::le(
        c.neg().extended(Rational::one()),
        Rational::zero(),
    ));
    rows.push(HalfSpace::le(
        c.extended(-Rational::one()),
        Rational::zero(),
    ));
    let lifted = HPolyhedron::from_rows(n + 1, rows)?;
    let (bounds, trace) = project(&lifted, 1)?;

    let mut best: Option<Rational> = None;
    for row in bounds.rows() {
        let alpha = &row.normal[0];
        let wanted = match sense {
            Sense::Max => alpha.is_positive(),
            Sense::Min => alpha.is_negative(),
        };
        if !wanted {
            continue;
        }
        let bound = &row.offset / alpha;
        best = Some(match (best, sense) {
            (None, _) => bound,
            (Some(b), Sense::Max) => b.min(bound),
            (Some(b), Sense::Min) => b.max(bound),
        });
    }
    let Some(value) = best else {
        return Ok(ExtremumResult::without_value(ExtremumStatus::Unbounded));
    };
    let full = trace
        .lift(&Vector::new(vec![value.clone()]))
        .expect("the optimum lies in the projected interval");
    let witness: Vector = full.entries()[..n].iter().cloned().collect();
    debug_assert_eq!(dot_slices(c.entries(), witness.entries()), value);
    Ok(ExtremumResult {
        status: ExtremumStatus::Finite,
        value: Some(value),
        witness: Some(witness),
    })
}

/// Whether every point of `p` satisfies `h`.
///
/// Appends the strict negation `-a^t x < -b` and checks that the result is empty.
pub fn implies(p: &HPolyhedron, h: &HalfSpace) -> Result<bool> {
    if h.dim() != p.dim() {
        return Err(Error::mismatch("implied half-space", p.dim(), h.dim()));
    }
    if h.relation != Relation::Le {
        return Err(Error::StrictRelation { row: 0 });
    }
    let negated = HalfSpace::lt(h.normal.neg(), -h.offset.clone());
    Ok(!feasible(&p.with_row(negated)?))
}
