//! Exact dense linear algebra: row reduction, kernels, linear solves and
//! subspaces in canonical (reduced row-echelon) form.
//!
//! Pivoting always takes the first nonzero entry in column order. There is no
//! tolerance anywhere; zero means exactly zero.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{axpy, vec_is_zero, FieldSpec, Scalar};

/// Row-major dense matrix over a single field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors, each of length `cols`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            Error::check_len("matrix row", cols, row.len())?;
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, rows).expect("ragged integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        Error::check_len("matrix-vector product", self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        Error::check_len("matrix product", self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        Error::check_len("matrix sum", self.rows * self.cols, other.rows * other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        Error::check_len("matrix difference", self.rows * self.cols, other.rows * other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        Error::check_len("vertical stack", self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            data,
            ..self.clone()
        })
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {} [", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. Zero rows are kept at the bottom so the result
/// has the shape of the input.
pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a[(r, c)].inv();
        for j in c..a.cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = -&a[(i, c)];
            let cols = a.cols;
            axpy(&mut a.data[i * cols..(i + 1) * cols], &factor, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: r,
        pivots,
    }
}

pub fn rank(m: &Matrix) -> usize {
    let mut e = Echelon::new(m.field(), m.cols());
    for i in 0..m.rows() {
        e.insert(m.row(i).to_vec());
    }
    e.rank()
}

/// Incrementally maintained reduced row-echelon basis.
///
/// Rows are inserted one at a time and reduced against the current basis, so
/// redundant constraints cost one reduction and are then dropped. This is how
/// the large constraint systems of the map solvers are assembled.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place against the basis; the result is zero iff `v`
    /// lies in the row space.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = -&v[p];
                axpy(v, &factor, row);
            }
        }
    }

    /// Adds `v` to the spanned space. Returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols, "echelon row length");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let factor = -&row[p];
                axpy(row, &factor, &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Canonical subspace spanned by the inserted rows.
    pub fn row_space(&self) -> Subspace {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        Subspace {
            basis: Matrix::from_rows(self.field, self.cols, rows).expect("echelon rows"),
            pivots: order.iter().map(|&i| self.pivots[i]).collect(),
        }
    }

    /// Kernel of the matrix whose rows were inserted.
    pub fn kernel(&self) -> Subspace {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Echelon::new(self.field, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = self.field.unit_vector(self.cols, free);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -&row[free];
            }
            out.insert(v);
        }
        out.row_space()
    }
}

/// Subspace of `F^n` stored as its reduced row-echelon basis, so two subspaces
/// are equal exactly when their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            Error::check_len("spanning vector", ambient, v.len())?;
            e.insert(v);
        }
        Ok(e.row_space())
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn to_echelon(&self) -> Echelon {
        Echelon {
            field: self.field(),
            cols: self.ambient_dim(),
            rows: self.basis.row_vectors(),
            pivots: self.pivots.clone(),
        }
    }

    /// `v` minus its projection along the pivot columns; zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        Error::check_len("subspace membership", self.ambient_dim(), v.len())?;
        let mut w = v.to_vec();
        self.to_echelon().reduce(&mut w);
        Ok(w)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(vec_is_zero(&self.reduce(v)?))
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        Error::check_len("subspace coordinates", self.dim(), coords.len())?;
        let mut out = self.field().vector_zero(self.ambient_dim());
        for (c, i) in coords.iter().zip(0..) {
            axpy(&mut out, c, self.basis.row(i));
        }
        Ok(out)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Error::check_len("subspace sum", self.ambient_dim(), other.ambient_dim())?;
        let mut e = self.to_echelon();
        for v in other.basis_vectors() {
            e.insert(v);
        }
        Ok(e.row_space())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        Error::check_len("subspace intersection", self.ambient_dim(), other.ambient_dim())?;
        // equations cutting out `other`: its annihilator under the dot product
        let equations = nullspace(other.basis());
        // find coefficients a with (sum a_i u_i) . y_j = 0 for every equation y_j
        let field = self.field();
        let mut system = Echelon::new(field, self.dim());
        for y in equations.basis_vectors() {
            let row = self
                .basis_vectors()
                .iter()
                .map(|u| dot(u, &y))
                .collect();
            system.insert(row);
        }
        let coeffs = system.kernel();
        let vectors = coeffs
            .basis_vectors()
            .into_iter()
            .map(|a| self.combine(&a))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(field, self.ambient_dim(), vectors)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) ", self.dim(), self.ambient_dim())?;
        self.basis.fmt(f)
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a.first().map_or_else(|| FieldSpec::rational().zero(), |x| x.field().zero());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// `{ v : m v = 0 }`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let mut e = Echelon::new(m.field(), m.cols());
    for i in 0..m.rows() {
        e.insert(m.row(i).to_vec());
    }
    e.kernel()
}

/// One solution of `a x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    Error::check_len("linear system right-hand side", a.rows(), b.len())?;
    let n = a.cols();
    let rows = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let aug = Matrix::from_rows(a.field(), n + 1, rows)?;
    let reduced = rref(&aug);
    if reduced.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = a.field().vector_zero(n);
    for (r, &p) in reduced.pivots.iter().enumerate() {
        x[p] = reduced.matrix[(r, n)].clone();
    }
    Ok(Some(x))
}

/// Complement data for a quotient `F^n / I`: the non-pivot standard basis
/// vectors of `I` serve as representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    ideal: Subspace,
    representatives: Vec<usize>,
}

impl QuotientBasis {
    pub fn new(ambient: usize, ideal: &Subspace) -> Result<Self> {
        Error::check_len("quotient ambient dimension", ambient, ideal.ambient_dim())?;
        let mut is_pivot = vec![false; ambient];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        Ok(QuotientBasis {
            ideal: ideal.clone(),
            representatives: (0..ambient).filter(|&c| !is_pivot[c]).collect(),
        })
    }

    /// Indices `c` such that the standard vectors `e_c` represent the quotient basis.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Coordinates of `v + I` in the quotient basis.
    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let reduced = self.ideal.reduce(v)?;
        Ok(self.representatives.iter().map(|&c| reduced[c].clone()).collect())
    }

    /// The ambient representative of a quotient coordinate vector.
    pub fn lift(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        Error::check_len("quotient coordinates", self.dim(), coords.len())?;
        let mut v = self.ideal.field().vector_zero(self.ideal.ambient_dim());
        for (c, &idx) in coords.iter().zip(&self.representatives) {
            v[idx] = c.clone();
        }
        Ok(v)
    }
}

/// Convenience wrapper returning representatives and the projection.
pub fn quotient_basis(ambient: usize, ideal: &Subspace) -> Result<QuotientBasis> {
    QuotientBasis::new(ambient, ideal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(q(), 3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let z = Matrix::zeros(q(), 2, 4);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(q(), &[&[2, 4], &[1, 2]]);
        let r = rref(&m);
        assert_eq!(r.matrix, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn nullspace_edge_cases() {
        assert!(nullspace(&Matrix::identity(q(), 3)).is_zero());
        let full = nullspace(&Matrix::zeros(q(), 2, 3));
        assert!(full.is_full());
        assert_eq!(full, Subspace::full(q(), 3));
    }

    #[test]
    fn nullspace_over_gf5() {
        let f = FieldSpec::prime(5).unwrap();
        let m = Matrix::from_i64(f, &[&[1, 1, 0]]);
        let ns = nullspace(&m);
        assert_eq!(ns.dim(), 2);
        for v in ns.basis_vectors() {
            assert!(vec_is_zero(&m.mul_vec(&v).unwrap()));
        }
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(q(), 2);
        let b = vec![q().from_i64(3), q().from_i64(-7)];
        assert_eq!(solve_linear(&id, &b).unwrap(), Some(b.clone()));
        assert_eq!(solve_linear(&Matrix::zeros(q(), 2, 2), &b).unwrap(), None);
        let a = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        let b = vec![q().from_i64(5), q().from_i64(11)];
        assert_eq!(
            solve_linear(&a, &b).unwrap(),
            Some(vec![q().from_i64(1), q().from_i64(2)])
        );
        assert!(solve_linear(&a, &[q().one()]).is_err());
    }

    #[test]
    fn containment() {
        let s = Subspace::span(q(), 3, [vec![q().one(), q().one(), q().zero()]]).unwrap();
        assert!(s.contains(&q().vector_zero(3)).unwrap());
        assert!(s
            .contains(&[q().from_i64(2), q().from_i64(2), q().zero()])
            .unwrap());
        assert!(!Subspace::zero(q(), 3).contains(&q().unit_vector(3, 1)).unwrap());
        assert!(s.contains(&q().vector_zero(2)).is_err());
    }

    #[test]
    fn quotient_basis_cases() {
        let qb = quotient_basis(3, &Subspace::zero(q(), 3)).unwrap();
        assert_eq!(qb.representatives(), &[0, 1, 2]);
        let v = vec![q().from_i64(1), q().from_i64(2), q().from_i64(3)];
        assert_eq!(qb.project(&v).unwrap(), v);

        let qb = quotient_basis(3, &Subspace::full(q(), 3)).unwrap();
        assert!(qb.representatives().is_empty());

        let i = Subspace::span(q(), 3, [q().unit_vector(3, 0)]).unwrap();
        let qb = quotient_basis(3, &i).unwrap();
        assert_eq!(qb.representatives(), &[1, 2]);
        assert_eq!(qb.project(&v).unwrap(), vec![q().from_i64(2), q().from_i64(3)]);
    }

    #[test]
    fn intersection_and_sum() {
        let f = q();
        let xy = Subspace::span(f, 3, [f.unit_vector(3, 0), f.unit_vector(3, 1)]).unwrap();
        let yz = Subspace::span(f, 3, [f.unit_vector(3, 1), f.unit_vector(3, 2)]).unwrap();
        let y = Subspace::span(f, 3, [f.unit_vector(3, 1)]).unwrap();
        assert_eq!(xy.intersection(&yz).unwrap(), y);
        assert!(xy.sum(&yz).unwrap().is_full());
    }
}
