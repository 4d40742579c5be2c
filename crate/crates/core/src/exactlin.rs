//! Exact integer linear algebra: Smith normal form, linear solving over `Z_n`,
//! and homology of a segment `C_{k+1} -> C_k -> C_{k-1}` of presented groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, k: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::from(k);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = q * s;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = q * s;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.row_axpy(dst, src, q);
        self.u.row_axpy(dst, src, q);
        self.u_inv.col_axpy(src, dst, &-q);
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.col_axpy(dst, src, q);
        self.v.col_axpy(dst, src, q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero magnitude in the trailing block, first in row-major order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let m = x.abs();
                if best.as_ref().is_none_or(|b| m < b.2) {
                    best = Some((i, j, m));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
    };
    let mut t = 0;
    'outer: while t < r.min(c) {
        loop {
            let Some((pi, pj)) = w.pivot(t) else { break 'outer };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &w.a[(i, t)] / &p;
                w.row_axpy(i, t, &-q);
                clean &= w.a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &w.a[(t, j)] / &p;
                w.col_axpy(j, t, &-q);
                clean &= w.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !w.a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => w.row_axpy(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    Snf { d: w.a, u: w.u, u_inv: w.u_inv, v: w.v, rank: t }
}

/// Some `x` with `M x = b (mod n)`; `n = 0` solves over the integers.
/// Free parameters of the Smith form are set to zero.
pub fn solve_linear(m: &IntMatrix, b: &[BigInt], n: u64) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows, b.len(), "dimension mismatch");
    let a = if n == 0 { m.clone() } else { m.hcat(&IntMatrix::scalar(m.rows, n as i64)) };
    let snf = smith_normal_form(&a);
    let c = snf.u.mul_vec(b);
    let mut z = vec![BigInt::zero(); a.cols];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let (q, rem) = ci.div_rem(&snf.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    let y = snf.v.mul_vec(&z);
    let nb = BigInt::from(n);
    Some(
        y.into_iter()
            .take(m.cols)
            .map(|x| if n == 0 { x } else { x.mod_floor(&nb) })
            .collect(),
    )
}

/// A finitely generated abelian group with a `T`-action, as computed homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleInfo {
    /// `d_1 | d_2 | ...`; `0` marks a free summand.
    pub invariant_factors: Vec<BigInt>,
    /// One chain vector lifting each summand.
    pub generators: Vec<Vec<BigInt>>,
    /// Column `j` holds the coordinates of `T g_j`, reduced by the invariant factors.
    pub t_action: Vec<Vec<BigInt>>,
}

impl ModuleInfo {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        self.invariant_factors.iter().map(|f| u64::try_from(f).unwrap_or(u64::MAX)).collect()
    }

    /// Order of the group, `None` if it has a free part.
    pub fn order(&self) -> Option<BigInt> {
        if self.invariant_factors.iter().any(Zero::is_zero) {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }
}

/// `ker(d_out) / im(d_in)` where the middle group is `Z^r / <relations>` and the
/// target of `d_out` is `Z^r' / <out_relations>`.
#[derive(Clone, Debug)]
pub struct Segment {
    pub d_in: IntMatrix,
    pub d_out: IntMatrix,
    pub relations: IntMatrix,
    pub out_relations: IntMatrix,
    pub t_mat: IntMatrix,
}

/// Column basis of the lattice spanned by the columns of `g`.
fn lattice_basis(g: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(g);
    let gv = g.mul(&snf.v);
    let cols: Vec<Vec<BigInt>> = (0..snf.rank).map(|j| gv.column(j)).collect();
    IntMatrix::from_columns(g.rows, &cols)
}

/// Coordinates of `w` in the full-column-rank basis factored as `snf`.
fn coordinates(snf: &Snf, w: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(w);
    let k = snf.v.rows;
    let mut z = vec![BigInt::zero(); k];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let (q, rem) = ci.div_rem(&snf.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// Column basis of `{x : d_out x in <out_relations>}`.
pub fn cycle_lattice(d_out: &IntMatrix, out_relations: &IntMatrix) -> IntMatrix {
    let r = d_out.cols;
    let gen = if d_out.rows == 0 {
        IntMatrix::identity(r)
    } else {
        let a = d_out.hcat(out_relations);
        let snf = smith_normal_form(&a);
        let cols: Vec<Vec<BigInt>> =
            (snf.rank..a.cols).map(|j| snf.v.column(j).into_iter().take(r).collect()).collect();
        IntMatrix::from_columns(r, &cols)
    };
    lattice_basis(&gen)
}

pub fn homology_segment(seg: &Segment) -> Result<ModuleInfo> {
    let r = seg.d_out.cols;
    assert_eq!(seg.d_in.rows, r, "d_in target must match d_out source");
    assert_eq!(seg.relations.rows, r, "relations live in the middle group");

    let composite = seg.d_out.mul(&seg.d_in);
    if !composite.is_zero() {
        let rel = smith_normal_form(&seg.out_relations);
        for j in 0..composite.cols {
            let col = composite.column(j);
            if col.iter().any(|x| !x.is_zero()) && coordinates(&rel, &col).is_none() {
                return Err(Error::NotComplex);
            }
        }
    }

    let kb = cycle_lattice(&seg.d_out, &seg.out_relations);
    let k = kb.cols;
    let kb_snf = smith_normal_form(&kb);

    let boundaries = seg.d_in.hcat(&seg.relations);
    let mut y_cols = Vec::with_capacity(boundaries.cols);
    for j in 0..boundaries.cols {
        let y = coordinates(&kb_snf, &boundaries.column(j)).ok_or(Error::NotComplex)?;
        y_cols.push(y);
    }
    let y = IntMatrix::from_columns(k, &y_cols);
    let ysnf = smith_normal_form(&y);

    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for i in 0..k {
        let f = if i < ysnf.rank { ysnf.d[(i, i)].clone() } else { BigInt::zero() };
        if !f.is_one() {
            kept.push(i);
            factors.push(f);
        }
    }
    let generators: Vec<Vec<BigInt>> =
        kept.iter().map(|&i| kb.mul_vec(&ysnf.u_inv.column(i))).collect();

    let mut t_action = vec![vec![BigInt::zero(); kept.len()]; kept.len()];
    for (col, g) in generators.iter().enumerate() {
        let tg = seg.t_mat.mul_vec(g);
        let yk = coordinates(&kb_snf, &tg).ok_or(Error::NotComplex)?;
        let new = ysnf.u.mul_vec(&yk);
        for (row, &i) in kept.iter().enumerate() {
            let f = &factors[row];
            t_action[row][col] = if f.is_zero() { new[i].clone() } else { new[i].mod_floor(f) };
        }
    }
    Ok(ModuleInfo { invariant_factors: factors, generators, t_action })
}
