//! Commutative algebras given by structure constants, with the Jordan
//! identity checked as a formal identity, plus spans, quotients and
//! subalgebras.

use crate::error::{Error, Result};
use crate::field::{axpy, vec_is_zero, FieldSpec, Scalar};
use crate::linalg::{nullspace, solve_linear, Matrix, QuotientBasis, Subspace};
use crate::maps::LinearMap;
use crate::module::JModule;

/// An algebra `e_i o e_j = sum_k c[i][j][k] e_k` over an exact field.
///
/// [`JordanAlgebra::new`] enforces commutativity. Tables that are not
/// commutative can still be loaded with [`JordanAlgebra::from_raw`] so the
/// verifier can report on them; no other operation assumes the Jordan
/// identity holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanAlgebra {
    field: FieldSpec,
    labels: Vec<String>,
    // products[i * n + j] = e_i o e_j
    products: Vec<Vec<Scalar>>,
}

impl JordanAlgebra {
    /// `table[i][j]` holds the coordinates of `e_i o e_j`.
    pub fn new(field: FieldSpec, labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let alg = Self::from_raw(field, labels, table)?;
        if let Some((i, j, k)) = alg.commutativity_defect() {
            return Err(Error::NotCommutative { i, j, k });
        }
        Ok(alg)
    }

    /// Like [`JordanAlgebra::new`] but without the commutativity check.
    pub fn from_raw(field: FieldSpec, labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = labels.len();
        Error::check_len("structure table rows", n, table.len())?;
        let mut products = Vec::with_capacity(n * n);
        for row in table {
            Error::check_len("structure table row", n, row.len())?;
            for v in row {
                Error::check_len("structure constant vector", n, v.len())?;
                if let Some(x) = v.iter().find(|x| x.field() != field) {
                    return Err(Error::Field(format!("scalar over {} in table over {field}", x.field())));
                }
                products.push(v);
            }
        }
        Ok(JordanAlgebra {
            field,
            labels,
            products,
        })
    }

    /// Builds a table from a closure producing `e_i o e_j`.
    pub fn from_fn(
        field: FieldSpec,
        labels: Vec<String>,
        mut product: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let n = labels.len();
        let table = (0..n).map(|i| (0..n).map(|j| product(i, j)).collect()).collect();
        Self::new(field, labels, table)
    }

    pub fn zero_algebra(field: FieldSpec) -> Self {
        JordanAlgebra {
            field,
            labels: Vec::new(),
            products: Vec::new(),
        }
    }

    /// The algebra on `F^n` with every product zero.
    pub fn zero_product(field: FieldSpec, n: usize) -> Self {
        Self::from_fn(field, default_labels("e", n), |_, _| field.vector_zero(n)).unwrap()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of `e_i o e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.dim() + j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.product(i, j)[k]
    }

    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.product(i, j).to_vec()).collect()).collect()
    }

    /// Copy with `c[i][j][k]` shifted by `delta` (only that one entry).
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: &Scalar) -> JordanAlgebra {
        let mut out = self.clone();
        let n = self.dim();
        out.products[i * n + j][k] += delta;
        out
    }

    pub fn commutativity_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(k) = (0..n).find(|&k| self.constant(i, j, k) != self.constant(j, i, k)) {
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_defect().is_none()
    }

    /// Bilinear extension of the table.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        Error::check_len("left factor", n, u.len())?;
        Error::check_len("right factor", n, v.len())?;
        Ok(self.mul_unchecked(u, v))
    }

    pub(crate) fn mul_unchecked(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.field.vector_zero(n);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    axpy(&mut out, &(a * b), self.product(i, j));
                }
            }
        }
        out
    }

    /// `u o e_j` without forming the unit vector.
    pub(crate) fn mul_basis_right(&self, u: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = self.field.vector_zero(self.dim());
        for (i, a) in u.iter().enumerate() {
            axpy(&mut out, a, self.product(i, j));
        }
        out
    }

    /// `e_i o u`.
    pub(crate) fn mul_basis_left(&self, i: usize, u: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.vector_zero(self.dim());
        for (j, a) in u.iter().enumerate() {
            axpy(&mut out, a, self.product(i, j));
        }
        out
    }

    /// Matrix of `v -> u o v` acting on column vectors.
    pub fn left_multiplication(&self, u: &[Scalar]) -> Result<Matrix> {
        let n = self.dim();
        Error::check_len("multiplier", n, u.len())?;
        let mut m = Matrix::zeros(self.field, n, n);
        for j in 0..n {
            let col = self.mul_basis_right(u, j);
            for (k, x) in col.into_iter().enumerate() {
                m[(k, j)] = x;
            }
        }
        Ok(m)
    }

    /// Symmetrized check of `(x^2 o y) o x = x^2 o (x o y)` as a polynomial
    /// identity in the coordinates of `x` and `y`.
    pub fn verify_jordan(&self) -> JordanCheck {
        let n = self.dim();
        let commutativity_witness = self.commutativity_defect();
        // lhs[p][q][s][r] = ((e_p e_q) e_s) e_r ; rhs[p][q][s][r] = (e_p e_q)(e_r e_s)
        let idx = |p: usize, q: usize, s: usize, r: usize| ((p * n + q) * n + s) * n + r;
        let mut lhs = Vec::with_capacity(n.pow(4));
        let mut rhs = Vec::with_capacity(n.pow(4));
        for p in 0..n {
            for q in 0..n {
                let pq = self.product(p, q);
                for s in 0..n {
                    let pqs = self.mul_basis_right(pq, s);
                    for r in 0..n {
                        lhs.push(self.mul_basis_right(&pqs, r));
                        rhs.push(self.mul_unchecked(pq, self.product(r, s)));
                    }
                }
            }
        }
        let mut identity_witness = None;
        'outer: for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let perms = [
                        (a, b, c),
                        (a, c, b),
                        (b, a, c),
                        (b, c, a),
                        (c, a, b),
                        (c, b, a),
                    ];
                    for s in 0..n {
                        let mut diff = self.field.vector_zero(n);
                        for &(p, q, r) in &perms {
                            let i = idx(p, q, s, r);
                            for k in 0..n {
                                diff[k] = &(&diff[k] + &lhs[i][k]) - &rhs[i][k];
                            }
                        }
                        if !vec_is_zero(&diff) {
                            identity_witness = Some((a, b, c, s));
                            break 'outer;
                        }
                    }
                }
            }
        }
        JordanCheck {
            commutative: commutativity_witness.is_none(),
            jordan_identity: identity_witness.is_none(),
            commutativity_witness,
            identity_witness,
        }
    }

    /// Span of all `u_a o v_b` over basis vectors of `u` and `v`.
    pub fn product_span(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        let n = self.dim();
        Error::check_len("product span", n, u.ambient_dim())?;
        Error::check_len("product span", n, v.ambient_dim())?;
        let vs = v.basis_vectors();
        let mut products = Vec::new();
        for a in u.basis_vectors() {
            for b in &vs {
                products.push(self.mul_unchecked(&a, b));
            }
        }
        Subspace::span(self.field, n, products)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim())
    }

    /// `J' = J o J`.
    pub fn derived(&self) -> Subspace {
        let full = self.full_space();
        self.product_span(&full, &full).expect("own dimensions")
    }

    /// `J'' = span{(x o y) o z}`.
    pub fn second_derived(&self) -> Subspace {
        self.product_span(&self.derived(), &self.full_space()).expect("own dimensions")
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().is_full()
    }

    /// `Z(J) = { z : J o z = 0 }`.
    pub fn center(&self) -> Subspace {
        JModule::regular(self).annihilator(&self.full_space()).expect("own dimensions")
    }

    /// A two-sided unit, if one exists.
    pub fn unit(&self) -> Option<Vec<Scalar>> {
        let n = self.dim();
        // unknown e: for all x, r: sum_k e_k c[k][x][r] = delta_{xr}
        let mut a = Matrix::zeros(self.field, n * n, n);
        let mut b = self.field.vector_zero(n * n);
        for x in 0..n {
            for r in 0..n {
                let row = x * n + r;
                for k in 0..n {
                    a[(row, k)] = self.constant(k, x, r).clone();
                }
                if x == r {
                    b[row] = self.field.one();
                }
            }
        }
        let e = solve_linear(&a, &b).ok()??;
        // the table may be non-commutative; require e o x = x as well as x o e = x
        (0..n)
            .all(|x| self.mul_basis_right(&e, x) == self.mul_basis_left(x, &e))
            .then_some(e)
    }

    /// Checks `J o I ⊆ I`; returns the first offending (basis, ideal vector) pair.
    pub fn ideal_defect(&self, ideal: &Subspace) -> Result<Option<(usize, usize)>> {
        Error::check_len("ideal", self.dim(), ideal.ambient_dim())?;
        for (t, v) in ideal.basis_vectors().iter().enumerate() {
            for a in 0..self.dim() {
                if !ideal.contains(&self.mul_basis_left(a, v))? {
                    return Ok(Some((a, t)));
                }
            }
        }
        Ok(None)
    }

    /// `J / I` on the non-pivot standard representatives.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if let Some((basis, vector)) = self.ideal_defect(ideal)? {
            return Err(Error::NotIdeal { basis, vector });
        }
        let coords = QuotientBasis::new(self.dim(), ideal)?;
        let reps = coords.representatives().to_vec();
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        let table = reps
            .iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| coords.project(self.product(a, b)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let algebra = JordanAlgebra::from_raw(self.field, labels, table)?;
        Ok(Quotient { algebra, coords })
    }

    /// The subalgebra on a subspace closed under the product, in the
    /// coordinates of the subspace's echelon basis.
    pub fn subalgebra(&self, space: &Subspace) -> Result<SubAlgebra> {
        Error::check_len("subalgebra", self.dim(), space.ambient_dim())?;
        let basis = space.basis_vectors();
        let mut table = Vec::with_capacity(basis.len());
        for (a, u) in basis.iter().enumerate() {
            let mut row = Vec::with_capacity(basis.len());
            for (b, v) in basis.iter().enumerate() {
                let prod = self.mul_unchecked(u, v);
                let coords = space.coordinates(&prod)?.ok_or_else(|| {
                    Error::Input(format!("subspace is not closed: b{} o b{} leaves it", a + 1, b + 1))
                })?;
                row.push(coords);
            }
            table.push(row);
        }
        let algebra = JordanAlgebra::from_raw(self.field, default_labels("b", basis.len()), table)?;
        Ok(SubAlgebra {
            algebra,
            space: space.clone(),
        })
    }

    /// Writes `v` as `sum c_ij e_i o e_j` (coefficients indexed `i * n + j`).
    ///
    /// Returns two solutions: the one found by first-nonzero pivoting, and
    /// that one shifted by a kernel vector of the product map when the
    /// products are linearly dependent (otherwise the two coincide). `None`
    /// when `v` is not in `J'`.
    pub fn product_decompositions(&self, v: &[Scalar]) -> Result<Option<(Vec<Scalar>, Vec<Scalar>)>> {
        let n = self.dim();
        Error::check_len("decomposed vector", n, v.len())?;
        let products = self.products_matrix();
        let Some(first) = solve_linear(&products, v)? else {
            return Ok(None);
        };
        let second = match nullspace(&products).basis_vectors().first() {
            Some(k) => first.iter().zip(k).map(|(a, b)| a + b).collect(),
            None => first.clone(),
        };
        Ok(Some((first, second)))
    }

    /// `n x n^2` matrix whose column `i * n + j` is `e_i o e_j`.
    pub fn products_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n * n);
        for (col, prod) in self.products.iter().enumerate() {
            for (k, x) in prod.iter().enumerate() {
                m[(k, col)] = x.clone();
            }
        }
        m
    }

    pub fn report(&self) -> AlgebraReport {
        let derived = self.derived();
        AlgebraReport {
            center: self.center(),
            perfect: derived.is_full(),
            second_derived: self.second_derived(),
            derived,
            unit: self.unit(),
        }
    }
}

pub fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanCheck {
    pub commutative: bool,
    pub jordan_identity: bool,
    /// `(i, j, k)` with `c[i][j][k] != c[j][i][k]`.
    pub commutativity_witness: Option<(usize, usize, usize)>,
    /// `(a, b, c, s)`: the coefficient of `x_a x_b x_c y_s` differs.
    pub identity_witness: Option<(usize, usize, usize, usize)>,
}

impl JordanCheck {
    pub fn passed(&self) -> bool {
        self.commutative && self.jordan_identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub center: Subspace,
    pub derived: Subspace,
    pub second_derived: Subspace,
    pub perfect: bool,
    pub unit: Option<Vec<Scalar>>,
}

/// A quotient algebra together with its coordinate data.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: JordanAlgebra,
    pub coords: QuotientBasis,
}

impl Quotient {
    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.coords.project(v)
    }

    pub fn projection(&self) -> LinearMap {
        let n = self.coords.ideal().ambient_dim();
        let field = self.algebra.field();
        let images = (0..n)
            .map(|i| self.coords.project(&field.unit_vector(n, i)))
            .collect::<Result<Vec<_>>>()
            .expect("own dimensions");
        LinearMap::from_images(field, n, self.algebra.dim(), images).expect("own dimensions")
    }
}

/// A subalgebra in echelon coordinates of its underlying subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubAlgebra {
    pub algebra: JordanAlgebra,
    pub space: Subspace,
}

impl SubAlgebra {
    pub fn to_ambient(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        self.space.combine(coords)
    }

    pub fn to_local(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        self.space.coordinates(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn multiply_examples() {
        let f = q();
        let a = catalog::dual_number_sum(f);
        let e2 = f.unit_vector(3, 1);
        let e3 = f.unit_vector(3, 2);
        assert_eq!(a.multiply(&e2, &e3).unwrap(), e3);
        assert!(vec_is_zero(&a.multiply(&e2, &f.vector_zero(3)).unwrap()));

        let j = catalog::sum_product(f, catalog::SumProductVariant::OffDiagonal);
        let s = vec![f.one(); 3];
        assert_eq!(j.multiply(&f.unit_vector(3, 1), &f.unit_vector(3, 2)).unwrap(), s);
        assert!(a.multiply(&e2, &f.vector_zero(2)).is_err());
    }

    #[test]
    fn perfectness_and_center() {
        let f = q();
        assert!(JordanAlgebra::zero_algebra(f).is_perfect());
        let a = catalog::dual_number_sum(f);
        assert!(a.is_perfect());
        assert!(a.center().is_zero());
        let j = catalog::sum_product(f, catalog::SumProductVariant::OffDiagonal);
        assert!(!j.is_perfect());
        assert_eq!(j.derived(), Subspace::span(f, 3, [vec![f.one(); 3]]).unwrap());
        assert_eq!(j.center(), Subspace::span(f, 3, [f.unit_vector(3, 0)]).unwrap());
        let lit = catalog::sum_product(f, catalog::SumProductVariant::Literal);
        assert_eq!(lit.center().dim(), 2);
        assert_eq!(lit.derived().dim(), 1);
    }

    #[test]
    fn product_span_of_zero_is_zero() {
        let a = catalog::matrix_jordan(q(), 2).unwrap();
        let zero = Subspace::zero(q(), 4);
        assert!(a.product_span(&zero, &a.full_space()).unwrap().is_zero());
    }

    #[test]
    fn quotient_cases() {
        let f = q();
        let j = catalog::sum_product(f, catalog::SumProductVariant::OffDiagonal);
        let same = j.quotient(&Subspace::zero(f, 3)).unwrap();
        assert_eq!(same.algebra, j);
        assert_eq!(same.projection(), LinearMap::identity(f, 3));

        let q1 = j.quotient(&j.center()).unwrap();
        assert_eq!(q1.algebra.dim(), 2);
        assert_eq!(q1.algebra.product(0, 1), &[f.one(), f.one()][..]);
        assert!(vec_is_zero(q1.algebra.product(0, 0)));
        assert!(vec_is_zero(q1.algebra.product(1, 1)));
        assert!(!q1.algebra.is_perfect());
        assert!(q1.algebra.center().is_zero());

        let all = j.quotient(&j.full_space()).unwrap();
        assert_eq!(all.algebra.dim(), 0);
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let f = q();
        let a = catalog::dual_number_sum(f);
        let not_ideal = Subspace::span(f, 3, [vec![f.one(), f.one(), f.zero()]]).unwrap();
        assert!(matches!(a.quotient(&not_ideal), Err(Error::NotIdeal { .. })));
    }

    #[test]
    fn unit_detection() {
        let f = q();
        let s = catalog::sym_matrix_jordan(f, 2).unwrap();
        assert_eq!(s.dim(), 3);
        let e = s.unit().expect("unital");
        for i in 0..3 {
            let x = f.unit_vector(3, i);
            assert_eq!(s.multiply(&e, &x).unwrap(), x);
        }
        let j = catalog::sum_product(f, catalog::SumProductVariant::OffDiagonal);
        assert!(j.unit().is_none());
    }

    #[test]
    fn rejects_noncommutative_table() {
        let f = q();
        let m = catalog::matrix_jordan(f, 2).unwrap();
        let bad = m.perturbed(0, 1, 2, &f.one());
        let err = JordanAlgebra::new(f, bad.labels().to_vec(), bad.table()).unwrap_err();
        assert_eq!(err, Error::NotCommutative { i: 0, j: 1, k: 2 });
    }
}
