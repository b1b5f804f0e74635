//! Associative algebras and their symmetrized Jordan algebras `A+`.

use crate::algebra::{default_labels, JordanAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::maps::{BilinearMap, LinearMap};

/// An associative algebra given by structure constants, not necessarily
/// commutative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativeAlgebra {
    // the raw table; `JordanAlgebra::from_raw` does not assume commutativity
    table: JordanAlgebra,
}

impl AssociativeAlgebra {
    /// `table[i][j]` = coordinates of `e_i e_j`. Associativity is checked on
    /// all basis triples.
    pub fn new(field: FieldSpec, labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let alg = AssociativeAlgebra {
            table: JordanAlgebra::from_raw(field, labels, table)?,
        };
        if let Some((i, j, k)) = alg.associativity_defect() {
            return Err(Error::NotAssociative { i, j, k });
        }
        Ok(alg)
    }

    /// The full matrix algebra on matrix units `E_ij` (index `i * n + j`).
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> Self {
        let dim = n * n;
        let labels = (0..dim).map(|t| format!("E{}{}", t / n + 1, t % n + 1)).collect();
        let table = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        let (i, j, k, l) = (a / n, a % n, b / n, b % n);
                        if j == k {
                            field.unit_vector(dim, i * n + l)
                        } else {
                            field.vector_zero(dim)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(field, labels, table).expect("matrix units are associative")
    }

    pub fn field(&self) -> FieldSpec {
        self.table.field()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.table.labels()
    }

    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        self.table.product(i, j)
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.table.multiply(u, v)
    }

    pub fn is_commutative(&self) -> bool {
        self.table.is_commutative()
    }

    fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let t = &self.table;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = t.mul_basis_right(t.product(i, j), k);
                    let right = t.mul_basis_left(i, t.product(j, k));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `A+` with `x o y = (xy + yx) / 2`.
    pub fn jordanize(&self) -> JordanAlgebra {
        let field = self.field();
        let half = field.from_ratio(1, 2).expect("char != 2");
        let n = self.dim();
        JordanAlgebra::from_fn(field, self.labels().to_vec(), |i, j| {
            self.product(i, j)
                .iter()
                .zip(self.product(j, i))
                .map(|(a, b)| &half * &(a + b))
                .collect()
        })
        .unwrap_or_else(|_| unreachable!("symmetrized table of dimension {n} is commutative"))
    }

    /// All derivations `D(xy) = D(x) y + x D(y)`.
    pub fn derivation_space(&self) -> crate::bider::SolutionSpace {
        crate::bider::derivation_space(&self.table)
    }

    /// Checks `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)`; returns a failing pair.
    pub fn derivation_defect(&self, d: &LinearMap) -> Result<Option<(usize, usize)>> {
        self.check_map(d)?;
        let t = &self.table;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = d.apply(t.product(i, j))?;
                let a = t.mul_basis_right(d.image(i), j);
                let b = t.mul_basis_left(i, d.image(j));
                let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                if lhs != rhs {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    fn check_map(&self, d: &LinearMap) -> Result<()> {
        Error::check_len("map source", self.dim(), d.source_dim())?;
        Error::check_len("map target", self.dim(), d.target_dim())
    }

    /// `d(x, y) = D(x) D(y)` for a derivation `D` of a commutative
    /// associative algebra.
    pub fn biderivation_from_derivation(&self, d: &LinearMap) -> Result<BilinearMap> {
        if !self.is_commutative() {
            return Err(Error::hypothesis("commutative", "the associative algebra is not commutative"));
        }
        if let Some((i, j)) = self.derivation_defect(d)? {
            return Err(Error::Verification(format!(
                "map is not a derivation: fails on ({}, {})",
                self.labels()[i],
                self.labels()[j]
            )));
        }
        let n = self.dim();
        Ok(BilinearMap::from_fn(self.field(), n, n, |i, j| {
            self.table.mul_unchecked(d.image(i), d.image(j))
        }))
    }

    /// Checks `D(xy) D(z) = z D(x) D(y)` on all basis triples; returns a
    /// failing triple.
    pub fn product_condition_defect(&self, d: &LinearMap) -> Result<Option<(usize, usize, usize)>> {
        self.check_map(d)?;
        let t = &self.table;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let dxy = d.apply(t.product(i, j))?;
                let dxdy = t.mul_unchecked(d.image(i), d.image(j));
                for k in 0..n {
                    let lhs = t.mul_unchecked(&dxy, d.image(k));
                    let rhs = t.mul_basis_left(k, &dxdy);
                    if lhs != rhs {
                        return Ok(Some((i, j, k)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Span of the products, used to check whether `A = AA`.
    pub fn is_perfect(&self) -> bool {
        self.table.is_perfect()
    }
}

/// Symmetrizes an associative table, rejecting it when associativity fails.
pub fn jordanize_associative(
    field: FieldSpec,
    table: Vec<Vec<Vec<Scalar>>>,
) -> Result<JordanAlgebra> {
    let labels = default_labels("e", table.len());
    Ok(AssociativeAlgebra::new(field, labels, table)?.jordanize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn matrix_algebra_symmetrizes_to_catalog_entry() {
        let f = FieldSpec::rational();
        let a = AssociativeAlgebra::matrix_algebra(f, 2);
        assert_eq!(a.jordanize(), catalog::matrix_jordan(f, 2).unwrap());
        assert!(a.jordanize().verify_jordan().passed());
    }

    #[test]
    fn commutative_input_is_unchanged() {
        let f = FieldSpec::rational();
        let a = catalog::dual_number_sum_associative(f);
        assert_eq!(a.jordanize(), catalog::dual_number_sum(f));
    }

    #[test]
    fn rejects_non_associative_table() {
        let f = FieldSpec::rational();
        // e1 e1 = e2, e2 e1 = e1, else 0: (e1 e1) e1 = e1 but e1 (e1 e1) = 0
        let mut t = vec![vec![f.vector_zero(2); 2]; 2];
        t[0][0] = f.unit_vector(2, 1);
        t[1][0] = f.unit_vector(2, 0);
        assert!(matches!(
            jordanize_associative(f, t),
            Err(Error::NotAssociative { .. })
        ));
    }

    #[test]
    fn non_derivation_is_rejected() {
        let f = FieldSpec::rational();
        let a = catalog::dual_number_sum_associative(f);
        let id = LinearMap::identity(f, 3);
        assert!(matches!(
            a.biderivation_from_derivation(&id),
            Err(Error::Verification(_))
        ));
        let zero = LinearMap::zero(f, 3, 3);
        assert!(a.biderivation_from_derivation(&zero).unwrap().is_zero());
    }
}
