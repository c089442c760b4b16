//! Shared generators, fixtures and independent oracles for the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use polyfm::exactlin::{solve_full_rank, Matrix, Rational, Vector};
use polyfm::fourier_motzkin::feasible;
use polyfm::{HPolyhedron, HalfSpace, VCone};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn system(cols: usize, a: &[&[i64]], b: &[i64]) -> HPolyhedron {
    HPolyhedron::from_le(&Matrix::from_i64_rows(cols, a), &Vector::from_i64(b)).unwrap()
}

pub fn vectors(rows: &[&[i64]]) -> Vec<Vector> {
    rows.iter().map(|r| Vector::from_i64(r)).collect()
}

pub fn a1() -> Matrix {
    Matrix::from_i64_rows(2, &[&[-1, 0], &[0, -1], &[-1, 1]])
}

pub fn b1() -> Matrix {
    Matrix::from_i64_rows(2, &[&[1, 0], &[1, 1]])
}

pub fn p1() -> HPolyhedron {
    system(2, &[&[-1, 0], &[0, -1], &[-1, -1]], &[0, 0, -1])
}

pub fn p2() -> HPolyhedron {
    system(
        2,
        &[&[-1, 1], &[1, -1], &[-1, -1], &[-2, -1], &[-1, -2]],
        &[4, 4, -3, -4, -4],
    )
}

pub fn random_entries(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = random_entries(rng, rows * cols, bound)
        .into_iter()
        .map(q)
        .collect();
    Matrix::new(rows, cols, data).unwrap()
}

/// Integer data of a random system, kept for the direct-evaluation oracle.
#[derive(Clone, Debug)]
pub struct IntSystem {
    pub n: usize,
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

impl IntSystem {
    pub fn random(rng: &mut ChaCha8Rng, n: usize, m: usize, bound: i64) -> Self {
        let a = (0..m).map(|_| random_entries(rng, n, bound)).collect();
        let b = random_entries(rng, m, bound);
        IntSystem { n, a, b }
    }

    pub fn to_h(&self) -> HPolyhedron {
        let rows = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| HalfSpace::le(Vector::from_i64(a), q(*b)))
            .collect();
        HPolyhedron::from_rows(self.n, rows).unwrap()
    }

    /// Row-by-row evaluation, written independently of the library: clears
    /// the denominators of `x` and compares integers.
    pub fn contains(&self, x: &[Rational]) -> bool {
        let den = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scaled: Vec<BigInt> = x.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        if let (Some(den), Some(xs)) = (
            i128::try_from(&den).ok(),
            scaled
                .iter()
                .map(|v| i128::try_from(v).ok())
                .collect::<Option<Vec<_>>>(),
        ) {
            if den < 1 << 40 && xs.iter().all(|v| v.abs() < 1 << 40) {
                return self.a.iter().zip(&self.b).all(|(row, b)| {
                    let lhs: i128 = row.iter().zip(&xs).map(|(&a, &v)| a as i128 * v).sum();
                    lhs <= *b as i128 * den
                });
            }
        }
        self.a.iter().zip(&self.b).all(|(row, b)| {
            let lhs: BigInt = row
                .iter()
                .zip(&scaled)
                .map(|(&a, v)| BigInt::from(a) * v)
                .sum();
            lhs <= BigInt::from(*b) * &den
        })
    }
}

/// The 300-instance suite: `n <= 4`, `m <= 6`, entries in `[-3, 3]`.
pub fn fm_suite(count: usize, seed: u64) -> Vec<IntSystem> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(1..=6);
            IntSystem::random(&mut rng, n, m, 3)
        })
        .collect()
}

/// Random nonempty systems with `n <= max_n`, `m <= max_m`, entries in `[-3, 3]`.
pub fn feasible_suite(count: usize, seed: u64, max_n: usize, max_m: usize) -> Vec<HPolyhedron> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(1..=max_m);
        let p = IntSystem::random(&mut rng, n, m, 3).to_h();
        if feasible(&p) {
            out.push(p);
        }
    }
    out
}

fn subsets(p: usize, max_size: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(
        start: usize,
        p: usize,
        max_size: usize,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if f(chosen) {
            return true;
        }
        if chosen.len() == max_size {
            return false;
        }
        for j in start..p {
            chosen.push(j);
            if go(j + 1, p, max_size, chosen, f) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(0, p, max_size, &mut Vec::new(), f)
}

/// Carathéodory oracle: `x` is a conic combination of `gens` iff it is a
/// nonnegative combination of some linearly independent subset. Enumerates
/// subsets of size at most `dim` and solves each exactly.
pub fn cone_oracle(dim: usize, gens: &[Vector], x: &Vector) -> bool {
    if x.is_zero() {
        return true;
    }
    subsets(gens.len(), dim, &mut |s| {
        if s.is_empty() {
            return false;
        }
        let cols: Vec<Vector> = s.iter().map(|&j| gens[j].clone()).collect();
        let w = Matrix::from_columns(dim, &cols).unwrap();
        match solve_full_rank(&w, x).unwrap() {
            Some(lambda) => lambda.iter().all(|l| !l.is_negative()),
            None => false,
        }
    })
}

/// Convex-hull oracle through the `(v, 1)` lift; no vertices means `{0}`.
pub fn hull_oracle(dim: usize, vertices: &[Vector], x: &Vector) -> bool {
    if vertices.is_empty() {
        return x.is_zero();
    }
    let lifted: Vec<Vector> = vertices
        .iter()
        .map(|v| v.extended(Rational::one()))
        .collect();
    cone_oracle(dim + 1, &lifted, &x.extended(Rational::one()))
}

/// `Q + C` membership via the joint lift `(v, 1)`, `(r, 0)`.
pub fn sum_oracle(dim: usize, vertices: &[Vector], rays: &[Vector], x: &Vector) -> bool {
    let origin = [Vector::zeros(dim)];
    let vertices = if vertices.is_empty() {
        &origin[..]
    } else {
        vertices
    };
    let lifted: Vec<Vector> = vertices
        .iter()
        .map(|v| v.extended(Rational::one()))
        .chain(rays.iter().map(|r| r.extended(Rational::zero())))
        .collect();
    cone_oracle(dim + 1, &lifted, &x.extended(Rational::one()))
}

pub fn cone_oracle_for(c: &VCone, x: &Vector) -> bool {
    cone_oracle(c.dim(), c.rays(), x)
}

/// Quarter-integer grid on `[-4, 4]^d`, as numerators over 4.
pub const GRID_MIN: i64 = -16;
pub const GRID_MAX: i64 = 16;
pub const GRID_SIDE: usize = (GRID_MAX - GRID_MIN + 1) as usize;

pub fn grid_size(d: usize) -> usize {
    GRID_SIDE.pow(d as u32)
}

/// Writes the `index`-th grid point's numerators into `out` (last coordinate fastest).
pub fn grid_point(index: usize, out: &mut [i64]) {
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = GRID_MIN + (rest % GRID_SIDE) as i64;
        rest /= GRID_SIDE;
    }
}

pub fn grid_rational(numerators: &[i64]) -> Vector {
    numerators.iter().map(|&k| qr(k, 4)).collect()
}

/// A non-strict system scaled to integers, evaluated on grid numerators:
/// `a^t (k / 4) <= b` iff `a'^t k <= 4 b'` with `a', b'` integral.
pub struct ScaledSystem {
    rows: Vec<(Vec<i128>, i128)>,
}

fn to_i128(r: &BigInt) -> i128 {
    i128::try_from(r).expect("coefficients fit in i128")
}

impl ScaledSystem {
    pub fn new(p: &HPolyhedron) -> Self {
        let rows = p
            .rows()
            .iter()
            .map(|h| {
                let lcm = h
                    .normal
                    .iter()
                    .chain(std::iter::once(&h.offset))
                    .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                let scale = Rational::from_integer(lcm);
                let coeffs = h
                    .normal
                    .iter()
                    .map(|a| to_i128((a * &scale).numer()))
                    .collect();
                let rhs = to_i128((&h.offset * &scale).numer()) * 4;
                (coeffs, rhs)
            })
            .collect();
        ScaledSystem { rows }
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        self.rows.iter().all(|(a, b)| {
            let lhs: i128 = a.iter().zip(k).map(|(a, &k)| a * k as i128).sum();
            lhs <= *b
        })
    }
}

/// Is any grid point inside the system?
pub fn grid_has_point(p: &HPolyhedron) -> bool {
    let s = ScaledSystem::new(p);
    let mut k = vec![0; p.dim()];
    (0..grid_size(p.dim())).any(|i| {
        grid_point(i, &mut k);
        s.contains(&k)
    })
}
