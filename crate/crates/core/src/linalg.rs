//! Exact linear algebra over the rationals: dense matrices, fraction-free
//! rank, incremental echelon bases with coordinate tracking, inverses and
//! Sylvester inertia.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::Rational;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows: rows.len(), cols, data: rows.concat() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn mat_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Product skipping structural zeros; the tangent matrices are sparse.
    pub fn matmul(&self, other: &Self) -> Self {
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
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + a * b;
                }
            }
        }
        out
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn rank(&self) -> usize {
        rank(&self.row_vecs())
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &pivot;
                for c in col..n {
                    let v = &m[(col, c)] * &f;
                    m[(r, c)] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot = a[(col, col)].recip();
            for c in 0..n {
                a[(col, c)] *= &pivot;
                inv[(col, c)] *= &pivot;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let (va, vi) = (&a[(col, c)] * &f, &inv[(col, c)] * &f);
                    a[(r, c)] -= va;
                    inv[(r, c)] -= vi;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// `V M Vᵀ` for the rows `V` of `basis`.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> Self {
        let v = Self::from_rows(basis);
        v.matmul(self).matmul(&v.transpose())
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: Self) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: Self) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(&-Rational::one())
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: Self) -> QMatrix {
        self.matmul(rhs)
    }
}

/// Linear combination `Σ cᵢ vᵢ` of equal-length vectors.
pub fn combine(terms: &[(Rational, &[Rational])]) -> Vec<Rational> {
    let n = terms.first().map_or(0, |t| t.1.len());
    let mut out = vec![Rational::zero(); n];
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v.iter()) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// Scales a rational row by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank by Bareiss fraction-free elimination on denominator-cleared rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            let factor = m[r][col].clone();
            for c in col..cols {
                let v = (&pivot * &m[r][c] - &factor * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            // entries left of the pivot column are already zero in both rows
        }
        prev = pivot;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Incrementally built reduced row-echelon basis of a rational subspace.
///
/// Each stored row remembers its expression in terms of the vectors that
/// were inserted, so membership tests can also return coordinates.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    /// `combos[r]` expresses `rows[r]` in the inserted generators.
    combos: Vec<Vec<Rational>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, ..Default::default() }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vec<Rational>>) -> Self {
        let mut e = Self::new(dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Column of the leading one of each basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduced basis rows (pivot entries equal one).
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Reduces `v` against the basis, returning the residual and the
    /// combination of basis rows that was subtracted.
    fn reduce_tracked(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        let mut r = v.to_vec();
        let mut used = vec![Rational::zero(); self.rows.len()];
        for (n, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            used[n] = f;
        }
        (r, used)
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the inserted generators (only meaningful when
    /// every inserted vector was independent), or `None` if `v` is outside
    /// the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (residual, used) = self.reduce_tracked(v);
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut coords = vec![Rational::zero(); self.inserted];
        for (f, combo) in used.iter().zip(&self.combos) {
            if f.is_zero() {
                continue;
            }
            for (c, x) in coords.iter_mut().zip(combo) {
                if !x.is_zero() {
                    *c += f * x;
                }
            }
        }
        Some(coords)
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        for combo in &mut self.combos {
            combo.push(Rational::zero());
        }
        let (mut r, used) = self.reduce_tracked(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let mut combo = vec![Rational::zero(); self.inserted];
        combo[index] = Rational::one();
        for (f, c) in used.iter().zip(&self.combos) {
            if f.is_zero() {
                continue;
            }
            for (x, y) in combo.iter_mut().zip(c) {
                if !y.is_zero() {
                    *x -= f * y;
                }
            }
        }
        let inv = r[p].recip();
        r.iter_mut().for_each(|x| *x *= &inv);
        combo.iter_mut().for_each(|x| *x *= &inv);
        // keep the basis fully reduced
        for (row, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in c.iter_mut().zip(&combo) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.combos.push(combo);
        true
    }
}

/// Numbers of negative, positive and zero eigenvalues of a symmetric
/// rational matrix, computed by exact symmetric elimination (congruence).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub negative: usize,
    pub positive: usize,
    pub zero: usize,
}

pub fn inertia(m: &QMatrix) -> Inertia {
    assert!(m.is_symmetric(), "inertia needs a symmetric matrix");
    let mut a = m.clone();
    let n = a.rows;
    let (mut negative, mut positive) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // zero diagonal: find an off-diagonal entry and fold row j into row i
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                let Some((i, j)) = pair else { break };
                for &c in &active {
                    let v = a[(j, c)].clone();
                    a[(i, c)] += v;
                }
                for &r in &active {
                    let v = a[(r, j)].clone();
                    a[(r, i)] += v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        active.retain(|&i| i != p);
        for &r in &active {
            if a[(r, p)].is_zero() {
                continue;
            }
            let f = &a[(r, p)] / &d;
            for &c in &active {
                let v = &a[(p, c)] * &f;
                a[(r, c)] -= v;
            }
        }
        for &r in &active {
            a[(r, p)] = Rational::zero();
            a[(p, r)] = Rational::zero();
        }
    }
    Inertia { negative, positive, zero: n - negative - positive }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    }

    /// Rank by brute force: the largest k with a non-zero k×k minor.
    fn rank_by_minors(m: &QMatrix) -> usize {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let minor = QMatrix::from_rows(
                        &rs.iter().map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect()).collect::<Vec<_>>(),
                    );
                    if !minor.determinant().is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_examples() {
        assert_eq!(q(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(q(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(QMatrix::identity(5).rank(), 5);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant(), int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), QMatrix::identity(3));
        assert!(matches!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular)));
    }

    #[test]
    fn echelon_coordinates() {
        let vs = vec![
            vec![int(1), int(1), int(0)],
            vec![int(0), int(1), int(1)],
        ];
        let e = Echelon::from_vectors(3, &vs);
        assert_eq!(e.rank(), 2);
        let target = vec![int(2), int(5), int(3)];
        assert_eq!(e.coordinates(&target), Some(vec![int(2), int(3)]));
        assert_eq!(e.coordinates(&[int(0), int(0), int(1)]), None);
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia(&q(&[&[0, 1], &[1, 0]])), Inertia { negative: 1, positive: 1, zero: 0 });
        assert_eq!(inertia(&q(&[&[-2, 0, 0], &[0, 0, 0], &[0, 0, 5]])), Inertia { negative: 1, positive: 1, zero: 1 });
        assert_eq!(inertia(&q(&[&[0, 0], &[0, 0]])), Inertia { negative: 0, positive: 0, zero: 2 });
        assert_eq!(
            inertia(&q(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 9]])),
            Inertia { negative: 0, positive: 1, zero: 2 }
        );
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
        prop::collection::vec((-3i64..4, 1i64..3), rows * cols).prop_map(move |v| {
            let data: Vec<Vec<Rational>> =
                v.chunks(cols).map(|c| c.iter().map(|&(n, d)| rat(n, d)).collect()).collect();
            QMatrix::from_rows(&data)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_rank_matches_minors(m in small_matrix(3, 4)) {
            prop_assert_eq!(m.rank(), rank_by_minors(&m));
            prop_assert_eq!(Echelon::from_vectors(4, &m.row_vecs()).rank(), rank_by_minors(&m));
        }

        #[test]
        fn inertia_is_congruence_invariant(m in small_matrix(4, 4), p in small_matrix(4, 4)) {
            let s = &m + &m.transpose();
            let i1 = inertia(&s);
            prop_assert_eq!(i1.negative + i1.positive, s.rank());
            if !p.determinant().is_zero() {
                let c = p.matmul(&s).matmul(&p.transpose());
                prop_assert_eq!(inertia(&c), i1);
            }
        }

        #[test]
        fn echelon_coordinates_reconstruct(m in small_matrix(3, 5), c in prop::collection::vec(-4i64..5, 3)) {
            let rows = m.row_vecs();
            let e = Echelon::from_vectors(5, &rows);
            let target = combine(&[(int(c[0]), &rows[0]), (int(c[1]), &rows[1]), (int(c[2]), &rows[2])]);
            let coords = e.coordinates(&target).expect("target is in the span");
            let rebuilt = combine(&coords.iter().zip(&rows).map(|(x, r)| (x.clone(), r.as_slice())).collect::<Vec<_>>());
            prop_assert_eq!(rebuilt, target);
        }
    }
}
