//! Exact linear algebra: fraction-free rank, rational kernels, modular rank, Smith normal form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            if m[r][col].is_zero() {
                // Still has to be rescaled so later divisions stay exact.
                for c in col + 1..ncols {
                    let v = &m[r][c] * &m[rank][col];
                    m[r][c] = v / &prev;
                }
                continue;
            }
            for c in col + 1..ncols {
                let v = &m[r][c] * &m[rank][col] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a matrix over `Z/p` for a prime `p < 2^63`.
#[allow(clippy::needless_range_loop)]
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p);
        for r in rank + 1..nrows {
            if m[r][col] == 0 {
                continue;
            }
            let factor = mul_mod(m[r][col], inv, p);
            for c in col..ncols {
                let sub = mul_mod(factor, m[rank][c], p);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
#[allow(clippy::needless_range_loop)]
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..ncols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..nrows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..ncols {
                let sub = &f * &m[row][c];
                m[r][c] -= sub;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the right kernel of an integer matrix with `ncols` columns.
///
/// One vector per free column, in increasing order of that column; each vector has a 1 in
/// its own free column and 0 in every other free column, then is scaled to a primitive
/// integer vector.
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols);
            r.iter().map(|x| BigRational::from_integer(x.clone())).collect()
        })
        .collect();
    let pivots = rref(&mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        basis.push(primitive_integer_vector(&v));
    }
    basis
}

/// Scales a nonzero rational vector to a primitive integer vector, keeping its direction.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Whether `v` lies in the row span of `rows` (all integer, same width).
pub fn in_row_span(rows: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let base = bareiss_rank(rows);
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    bareiss_rank(&extended) == base
}

/// Integer matrix stored as rows.
pub type IntMatrix = Vec<Vec<i64>>;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`, `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn ck_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("smith normal form"))
}

fn ck_sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("smith normal form"))
}

struct SmithState {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    nrows: usize,
    ncols: usize,
}

impl SmithState {
    /// row_i -= k * row_j (on A and U).
    fn row_axpy(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        for c in 0..self.ncols {
            self.a[i][c] = ck_sub(self.a[i][c], ck_mul(k, self.a[j][c])?)?;
        }
        for c in 0..self.nrows {
            self.u[i][c] = ck_sub(self.u[i][c], ck_mul(k, self.u[j][c])?)?;
        }
        Ok(())
    }

    /// col_i -= k * col_j (on A and V); V^{-1} gets row_j += k * row_i.
    fn col_axpy(&mut self, i: usize, j: usize, k: i64) -> Result<()> {
        for r in 0..self.nrows {
            self.a[r][i] = ck_sub(self.a[r][i], ck_mul(k, self.a[r][j])?)?;
        }
        for r in 0..self.ncols {
            self.v[r][i] = ck_sub(self.v[r][i], ck_mul(k, self.v[r][j])?)?;
        }
        for c in 0..self.ncols {
            self.v_inv[j][c] = self.v_inv[j][c]
                .checked_add(ck_mul(k, self.v_inv[i][c])?)
                .ok_or(Error::Overflow("smith normal form"))?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
        for r in &mut self.v {
            r.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -*x;
        }
        for x in &mut self.u[i] {
            *x = -*x;
        }
    }
}

/// Smith normal form with transformation matrices, using checked `i64` arithmetic.
///
/// Pivoting rule: at each step the entry of smallest absolute value in the remaining
/// submatrix (first in row-major order) is moved to the diagonal.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithForm> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidInput("ragged matrix".into()));
    }
    let mut s = SmithState {
        a: a.clone(),
        u: identity(nrows),
        v: identity(ncols),
        v_inv: identity(ncols),
        nrows,
        ncols,
    };
    let mut rank = 0;
    for t in 0..nrows.min(ncols) {
        let Some((pr, pc)) = smallest_entry(&s.a, t) else {
            break;
        };
        s.swap_rows(t, pr);
        s.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..nrows {
                let q = s.a[r][t].div_euclid(s.a[t][t]);
                if q != 0 {
                    s.row_axpy(r, t, q)?;
                }
                if s.a[r][t] != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..ncols {
                let q = s.a[t][c].div_euclid(s.a[t][t]);
                if q != 0 {
                    s.col_axpy(c, t, q)?;
                }
                if s.a[t][c] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility of the remaining block by the pivot.
                let p = s.a[t][t];
                let bad = (t + 1..nrows)
                    .flat_map(|r| (t + 1..ncols).map(move |c| (r, c)))
                    .find(|&(r, c)| s.a[r][c] % p != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        // row_t += row_r, then keep reducing.
                        s.row_axpy(t, r, -1)?;
                        continue;
                    }
                }
            }
            // Move a smaller remainder onto the diagonal.
            let (mut br, mut bc) = (t, t);
            for r in t..nrows {
                if s.a[r][t] != 0 && s.a[r][t].abs() < s.a[br][bc].abs() {
                    (br, bc) = (r, t);
                }
            }
            for c in t..ncols {
                if s.a[t][c] != 0 && s.a[t][c].abs() < s.a[br][bc].abs() {
                    (br, bc) = (t, c);
                }
            }
            s.swap_rows(t, br);
            s.swap_cols(t, bc);
        }
        if s.a[t][t] < 0 {
            s.negate_row(t);
        }
        rank += 1;
    }
    let diagonal = (0..nrows.min(ncols)).map(|i| s.a[i][i]).collect();
    Ok(SmithForm {
        diagonal,
        u: s.u,
        v: s.v,
        v_inv: s.v_inv,
        rank,
    })
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(br, bc)| x.abs() < a[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        if a[i].len() != k {
            return Err(Error::InvalidInput("matrix dimensions do not match".into()));
        }
        for j in 0..m {
            let mut acc: i64 = 0;
            for l in 0..k {
                acc = acc
                    .checked_add(ck_mul(a[i][l], b[l][j])?)
                    .ok_or(Error::Overflow("matrix product"))?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub fn determinant_2x2(m: &IntMatrix) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Converts a small integer matrix to `BigInt` rows.
pub fn to_big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Absolute value of a determinant-like quantity; helper for unimodularity tests.
pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
