//! Jordan modules and representations.
//!
//! A module stores a single action tensor `act[a][x] = e_a . v_x`; the two
//! compositions `a . x` and `x . a` are identified, so the symmetry axiom
//! holds by construction.

use crate::algebra::JordanAlgebra;
use crate::error::{Error, Result};
use crate::field::{axpy, FieldSpec, Scalar};
use crate::linalg::{Echelon, Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JModule {
    field: FieldSpec,
    algebra_dim: usize,
    dim: usize,
    // action[a * dim + x] = e_a . v_x
    action: Vec<Vec<Scalar>>,
}

impl JModule {
    /// `table[a][x]` holds the coordinates of `e_a . v_x`.
    pub fn new(field: FieldSpec, algebra_dim: usize, dim: usize, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        Error::check_len("action table rows", algebra_dim, table.len())?;
        let mut action = Vec::with_capacity(algebra_dim * dim);
        for row in table {
            Error::check_len("action table row", dim, row.len())?;
            for v in row {
                Error::check_len("action vector", dim, v.len())?;
                action.push(v);
            }
        }
        Ok(JModule {
            field,
            algebra_dim,
            dim,
            action,
        })
    }

    /// `J` acting on itself by its product.
    pub fn regular(j: &JordanAlgebra) -> Self {
        JModule::new(j.field(), j.dim(), j.dim(), j.table()).expect("own dimensions")
    }

    pub fn zero(field: FieldSpec, algebra_dim: usize, dim: usize) -> Self {
        JModule {
            field,
            algebra_dim,
            dim,
            action: vec![field.vector_zero(dim); algebra_dim * dim],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.algebra_dim)
            .map(|a| (0..self.dim).map(|x| self.basis_action(a, x).to_vec()).collect())
            .collect()
    }

    /// Coordinates of `e_a . v_x`.
    pub fn basis_action(&self, a: usize, x: usize) -> &[Scalar] {
        &self.action[a * self.dim + x]
    }

    /// `e_a . v`.
    pub fn act_basis(&self, a: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.vector_zero(self.dim);
        for (x, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.basis_action(a, x));
        }
        out
    }

    /// `w . v` for an algebra element `w`.
    pub fn act(&self, w: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        Error::check_len("acting algebra element", self.algebra_dim, w.len())?;
        Error::check_len("module element", self.dim, v.len())?;
        let mut out = self.field.vector_zero(self.dim);
        for (a, c) in w.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.act_basis(a, v));
            }
        }
        Ok(out)
    }

    /// Matrix of `v -> w . v`.
    pub fn action_matrix(&self, w: &[Scalar]) -> Result<Matrix> {
        Error::check_len("acting algebra element", self.algebra_dim, w.len())?;
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for x in 0..self.dim {
            let mut col = self.field.vector_zero(self.dim);
            for (a, c) in w.iter().enumerate() {
                axpy(&mut col, c, self.basis_action(a, x));
            }
            for (k, val) in col.into_iter().enumerate() {
                m[(k, x)] = val;
            }
        }
        Ok(m)
    }

    /// `Z_M(S) = { v in M : S . v = 0 }`.
    pub fn annihilator(&self, s: &Subspace) -> Result<Subspace> {
        Error::check_len("annihilated subspace", self.algebra_dim, s.ambient_dim())?;
        let mut e = Echelon::new(self.field, self.dim);
        for w in s.basis_vectors() {
            let m = self.action_matrix(&w)?;
            for i in 0..m.rows() {
                e.insert(m.row(i).to_vec());
            }
        }
        Ok(e.kernel())
    }

    pub fn to_representation(&self) -> Representation {
        let matrices = (0..self.algebra_dim)
            .map(|a| self.action_matrix(&self.field.unit_vector(self.algebra_dim, a)).unwrap())
            .collect();
        Representation {
            field: self.field,
            dim: self.dim,
            matrices,
        }
    }

    fn check_algebra(&self, j: &JordanAlgebra) -> Result<()> {
        Error::check_len("module over algebra", j.dim(), self.algebra_dim)?;
        if j.field() != self.field {
            return Err(Error::Field(format!("module over {} for algebra over {}", self.field, j.field())));
        }
        Ok(())
    }

    /// Checks the module axioms on all basis tuples `(x, a, b, c)`; both sides
    /// are multilinear, so this is exact.
    pub fn verify(&self, j: &JordanAlgebra) -> Result<ModuleCheck> {
        self.check_algebra(j)?;
        let (n, m) = (j.dim(), self.dim);
        // ops[t] acts by the algebra element product(b, c) flattened as b*n+c
        let prod_ops: Vec<Matrix> = (0..n * n)
            .map(|t| self.action_matrix(j.product(t / n, t % n)).unwrap())
            .collect();
        let op = |b: usize, c: usize| &prod_ops[b * n + c];
        let assoc_ops: Vec<Matrix> = (0..n * n * n)
            .map(|t| {
                let (a, c, b) = (t / (n * n), (t / n) % n, t % n);
                // (a o c) o b
                let ac = j.product(a, c);
                let acb = j.mul_basis_right(ac, b);
                self.action_matrix(&acb).unwrap()
            })
            .collect();
        let mut check = ModuleCheck {
            axiom_i: true,
            axiom_ii: true,
            axiom_iii: true,
            witness_ii: None,
            witness_iii: None,
        };
        for x in 0..m {
            let ex = self.field.unit_vector(m, x);
            let xa: Vec<Vec<Scalar>> = (0..n).map(|a| self.act_basis(a, &ex)).collect();
            for a in 0..n {
                for b in 0..n {
                    let xab = self.act_basis(b, &xa[a]);
                    for c in 0..n {
                        let apply = |mat: &Matrix, v: &[Scalar]| mat.mul_vec(v).unwrap();
                        // (x.a).(b o c) + (x.b).(c o a) + (x.c).(a o b)
                        let mixed = sum3(
                            apply(op(b, c), &xa[a]),
                            apply(op(c, a), &xa[b]),
                            apply(op(a, b), &xa[c]),
                        );
                        if check.axiom_ii {
                            let xbc = apply(op(b, c), &ex);
                            let xca = apply(op(c, a), &ex);
                            let xab_p = apply(op(a, b), &ex);
                            let rhs = sum3(
                                self.act_basis(a, &xbc),
                                self.act_basis(b, &xca),
                                self.act_basis(c, &xab_p),
                            );
                            if mixed != rhs {
                                check.axiom_ii = false;
                                check.witness_ii = Some((x, a, b, c));
                            }
                        }
                        if check.axiom_iii {
                            let xabc = self.act_basis(c, &xab);
                            let xcba = self.act_basis(a, &self.act_basis(b, &xa[c]));
                            let xacb = apply(&assoc_ops[(a * n + c) * n + b], &ex);
                            let lhs = sum3(xabc, xcba, xacb);
                            if lhs != mixed {
                                check.axiom_iii = false;
                                check.witness_iii = Some((x, a, b, c));
                            }
                        }
                        if !check.axiom_ii && !check.axiom_iii {
                            return Ok(check);
                        }
                    }
                }
            }
        }
        Ok(check)
    }
}

fn sum3(a: Vec<Scalar>, b: Vec<Scalar>, c: Vec<Scalar>) -> Vec<Scalar> {
    a.iter().zip(&b).zip(&c).map(|((x, y), z)| &(x + y) + z).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCheck {
    /// `a . x = x . a`; structural for a single action tensor.
    pub axiom_i: bool,
    pub axiom_ii: bool,
    pub axiom_iii: bool,
    /// `(x, a, b, c)` basis indices where the axiom fails.
    pub witness_ii: Option<(usize, usize, usize, usize)>,
    pub witness_iii: Option<(usize, usize, usize, usize)>,
}

impl ModuleCheck {
    pub fn passed(&self) -> bool {
        self.axiom_i && self.axiom_ii && self.axiom_iii
    }
}

/// A representation `a -> S_a` given by one matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    field: FieldSpec,
    dim: usize,
    matrices: Vec<Matrix>,
}

impl Representation {
    pub fn new(field: FieldSpec, dim: usize, matrices: Vec<Matrix>) -> Result<Self> {
        for m in &matrices {
            Error::check_len("representation matrix rows", dim, m.rows())?;
            Error::check_len("representation matrix cols", dim, m.cols())?;
        }
        Ok(Representation { field, dim, matrices })
    }

    /// The left multiplication operators of `j`.
    pub fn regular(j: &JordanAlgebra) -> Self {
        let n = j.dim();
        let matrices = (0..n)
            .map(|a| j.left_multiplication(&j.field().unit_vector(n, a)).unwrap())
            .collect();
        Representation {
            field: j.field(),
            dim: n,
            matrices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `S_w = sum_t w_t S_t`.
    pub fn operator(&self, w: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.dim, self.dim);
        for (c, s) in w.iter().zip(&self.matrices) {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                for k in 0..self.dim {
                    if !s[(i, k)].is_zero() {
                        out[(i, k)] += &(c * &s[(i, k)]);
                    }
                }
            }
        }
        out
    }

    /// Checks both representation conditions on all basis triples.
    pub fn verify(&self, j: &JordanAlgebra) -> Result<RepresentationCheck> {
        Error::check_len("representation of algebra", j.dim(), self.matrices.len())?;
        let n = j.dim();
        let s = &self.matrices;
        let prod = |a: usize, b: usize| self.operator(j.product(a, b));
        let mm = |x: &Matrix, y: &Matrix| x.mul(y).unwrap();
        let mut out = RepresentationCheck {
            condition_i: true,
            condition_ii: true,
            witness_i: None,
            witness_ii: None,
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (s_bc, s_ca, s_ab) = (prod(b, c), prod(c, a), prod(a, b));
                    let lhs_terms = [mm(&s[a], &s_bc), mm(&s[b], &s_ca), mm(&s[c], &s_ab)];
                    if out.condition_i {
                        let rhs_terms = [mm(&s_bc, &s[a]), mm(&s_ca, &s[b]), mm(&s_ab, &s[c])];
                        let mut total = Matrix::zeros(self.field, self.dim, self.dim);
                        for (l, r) in lhs_terms.iter().zip(&rhs_terms) {
                            total = total.add(&l.sub(r).unwrap()).unwrap();
                        }
                        if !total.is_zero() {
                            out.condition_i = false;
                            out.witness_i = Some((a, b, c));
                        }
                    }
                    if out.condition_ii {
                        let acb = j.mul_basis_right(j.product(a, c), b);
                        let left = mm(&mm(&s[a], &s[b]), &s[c])
                            .add(&mm(&mm(&s[c], &s[b]), &s[a]))
                            .unwrap()
                            .add(&self.operator(&acb))
                            .unwrap();
                        let right = lhs_terms[0]
                            .add(&lhs_terms[1])
                            .unwrap()
                            .add(&lhs_terms[2])
                            .unwrap();
                        if left != right {
                            out.condition_ii = false;
                            out.witness_ii = Some((a, b, c));
                        }
                    }
                    if !out.condition_i && !out.condition_ii {
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationCheck {
    pub condition_i: bool,
    pub condition_ii: bool,
    pub witness_i: Option<(usize, usize, usize)>,
    pub witness_ii: Option<(usize, usize, usize)>,
}

impl RepresentationCheck {
    pub fn passed(&self) -> bool {
        self.condition_i && self.condition_ii
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn zero_module_passes() {
        let f = FieldSpec::rational();
        let j = catalog::matrix_jordan(f, 2).unwrap();
        let m = JModule::zero(f, 4, 0);
        assert!(m.verify(&j).unwrap().passed());
        let rep = Representation::new(f, 3, vec![Matrix::zeros(f, 3, 3); 4]).unwrap();
        assert!(rep.verify(&j).unwrap().passed());
    }

    #[test]
    fn regular_module_of_jordan_algebra_passes() {
        let f = FieldSpec::rational();
        let j = catalog::matrix_jordan(f, 2).unwrap();
        let m = JModule::regular(&j);
        assert!(m.verify(&j).unwrap().passed());
        assert!(Representation::regular(&j).verify(&j).unwrap().passed());
        assert_eq!(m.to_representation(), Representation::regular(&j));
    }

    #[test]
    fn regular_module_center_cases() {
        let f = FieldSpec::rational();
        let a = catalog::dual_number_sum(f);
        let m = JModule::regular(&a);
        assert!(m.annihilator(&a.full_space()).unwrap().is_zero());
        assert_eq!(m.annihilator(&Subspace::zero(f, 3)).unwrap(), Subspace::full(f, 3));
        let lit = catalog::sum_product(f, catalog::SumProductVariant::Literal);
        assert_eq!(JModule::regular(&lit).annihilator(&lit.full_space()).unwrap().dim(), 2);
        let empty = JordanAlgebra::zero_algebra(f);
        assert_eq!(JModule::regular(&empty).dim(), 0);
    }

    #[test]
    fn perturbed_regular_module_fails() {
        let f = FieldSpec::rational();
        let j = catalog::matrix_jordan(f, 2).unwrap();
        let bad = j.perturbed(0, 0, 1, &f.one());
        assert!(!bad.verify_jordan().passed());
        let check = JModule::regular(&bad).verify(&bad).unwrap();
        assert!(!check.passed());
        assert!(check.witness_ii.is_some() || check.witness_iii.is_some());
        assert!(!Representation::regular(&bad).verify(&bad).unwrap().passed());
    }
}
