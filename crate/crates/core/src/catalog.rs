//! Named algebras: the simple families `F^{nxn+}`, symmetric and
//! symplectic-type hermitian matrices, spin factors, plus a few small
//! hand-made tables used throughout the tests.

use crate::algebra::{default_labels, JordanAlgebra};
use crate::assoc::AssociativeAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{nullspace, solve_linear, Matrix};
use crate::maps::LinearMap;

/// Names accepted by [`build`].
pub const NAMES: &[&str] = &[
    "matrix_jordan",
    "sym_matrix_jordan",
    "symplectic_jordan",
    "spin_factor",
    "diagonal_spin",
    "dual_number_sum",
    "sum_product_literal",
    "sum_product_offdiag",
    "row_ideal",
];

/// The two readings of the three-dimensional "all products are the sum"
/// table: whether `x_i o x_i` (i = 2, 3) is the sum or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumProductVariant {
    Literal,
    OffDiagonal,
}

fn half(field: FieldSpec) -> Scalar {
    field.from_ratio(1, 2).expect("char != 2")
}

/// `F^{nxn+}` on matrix units `E_ij` (index `i * n + j`).
pub fn matrix_jordan(field: FieldSpec, n: usize) -> Result<JordanAlgebra> {
    if n == 0 {
        return Err(Error::Input("matrix_jordan needs n >= 1".into()));
    }
    Ok(AssociativeAlgebra::matrix_algebra(field, n).jordanize())
}

/// Builds the Jordan algebra spanned by the given square matrices under
/// `(XY + YX) / 2`. Fails if the span is not closed.
pub fn from_matrix_basis(
    field: FieldSpec,
    size: usize,
    labels: Vec<String>,
    basis: &[Matrix],
) -> Result<JordanAlgebra> {
    let d = basis.len();
    let flat: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|m| (0..size * size).map(|t| m[(t / size, t % size)].clone()).collect())
        .collect();
    // columns are the flattened basis matrices
    let coords = Matrix::from_rows(field, size * size, flat)?.transpose();
    let h = half(field);
    let mut table = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in i..d {
            let xy = basis[i].mul(&basis[j])?;
            let yx = basis[j].mul(&basis[i])?;
            let sym: Vec<Scalar> = (0..size * size)
                .map(|t| {
                    let (r, c) = (t / size, t % size);
                    &h * &(&xy[(r, c)] + &yx[(r, c)])
                })
                .collect();
            let c = solve_linear(&coords, &sym)?.ok_or_else(|| {
                Error::Input(format!("span not closed under the product ({}, {})", labels[i], labels[j]))
            })?;
            table[i][j] = c.clone();
            table[j][i] = c;
        }
    }
    JordanAlgebra::new(field, labels, table)
}

fn unit_matrix(field: FieldSpec, size: usize, entries: &[(usize, usize)]) -> Matrix {
    let mut m = Matrix::zeros(field, size, size);
    for &(r, c) in entries {
        m[(r, c)] = field.one();
    }
    m
}

/// Symmetric `n x n` matrices; basis `S_ii = E_ii`, `S_ij = E_ij + E_ji`
/// for `i < j`, ordered lexicographically.
pub fn sym_matrix_jordan(field: FieldSpec, n: usize) -> Result<JordanAlgebra> {
    if n == 0 {
        return Err(Error::Input("sym_matrix_jordan needs n >= 1".into()));
    }
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i..n {
            labels.push(format!("S{}{}", i + 1, j + 1));
            basis.push(unit_matrix(field, n, &[(i, j), (j, i)]));
        }
    }
    from_matrix_basis(field, n, labels, &basis)
}

/// Matrices of size `2n` fixed by `X -> S X^T S` with
/// `S = diag(Q, ..., Q)`, `Q = [[0, 1], [1, 0]]`. The basis is the
/// reduced echelon basis of the fixed space in row-major coordinates.
pub fn symplectic_jordan(field: FieldSpec, n: usize) -> Result<JordanAlgebra> {
    if n == 0 {
        return Err(Error::Input("symplectic_jordan needs n >= 1".into()));
    }
    let size = 2 * n;
    // S is a permutation matrix swapping 2k and 2k+1, so (S X^T S)_{rc} = X_{s(c), s(r)}
    let swap = |k: usize| k ^ 1;
    let cells = size * size;
    let rows: Vec<Vec<Scalar>> = (0..cells)
        .map(|t| {
            let (r, c) = (t / size, t % size);
            let mut row = field.vector_zero(cells);
            row[t] += &field.one();
            row[swap(c) * size + swap(r)] -= &field.one();
            row
        })
        .collect();
    let fixed = nullspace(&Matrix::from_rows(field, cells, rows)?);
    let basis: Vec<Matrix> = fixed
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let rows = v.chunks(size).map(<[Scalar]>::to_vec).collect();
            Matrix::from_rows(field, size, rows)
        })
        .collect::<Result<_>>()?;
    from_matrix_basis(field, size, default_labels("h", basis.len()), &basis)
}

/// `F1 + V` with `1` the unit and `v_i o v_j = B_ij 1` for a symmetric
/// form `B` (which may be degenerate or empty).
pub fn spin_factor(field: FieldSpec, form: &Matrix) -> Result<JordanAlgebra> {
    let k = form.rows();
    Error::check_len("spin form columns", k, form.cols())?;
    if form.field() != field {
        return Err(Error::Field("spin form over a different field".into()));
    }
    if *form != form.transpose() {
        return Err(Error::Input("spin form must be symmetric".into()));
    }
    let n = k + 1;
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=k).map(|i| format!("v{i}")));
    JordanAlgebra::from_fn(field, labels, |i, j| match (i, j) {
        (0, t) | (t, 0) => field.unit_vector(n, t),
        (a, b) => {
            let mut v = field.vector_zero(n);
            v[0] = form[(a - 1, b - 1)].clone();
            v
        }
    })
}

/// Spin factor with a diagonal form: `u_i o u_i = alpha_i 1`, all
/// `alpha_i` nonzero.
pub fn diagonal_spin(field: FieldSpec, alpha: &[Scalar]) -> Result<JordanAlgebra> {
    if let Some(pos) = alpha.iter().position(Scalar::is_zero) {
        return Err(Error::Input(format!("alpha[{pos}] must be nonzero")));
    }
    let k = alpha.len();
    let mut form = Matrix::zeros(field, k, k);
    for (i, a) in alpha.iter().enumerate() {
        if a.field() != field {
            return Err(Error::Field("alpha over a different field".into()));
        }
        form[(i, i)] = a.clone();
    }
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=k).map(|i| format!("u{i}")));
    JordanAlgebra::new(field, labels, spin_factor(field, &form)?.table())
}

/// On a diagonal spin factor: `1 -> -1`, `u_i -> u_i`.
pub fn spin_sign_flip(j: &JordanAlgebra) -> LinearMap {
    let field = j.field();
    let n = j.dim();
    let images = (0..n)
        .map(|i| {
            let mut e = field.unit_vector(n, i);
            if i == 0 {
                e[0] = -field.one();
            }
            e
        })
        .collect();
    LinearMap::from_images(field, n, n, images).expect("square map")
}

fn dual_number_table(field: FieldSpec) -> Vec<Vec<Vec<Scalar>>> {
    let mut t = vec![vec![field.vector_zero(3); 3]; 3];
    t[0][0] = field.unit_vector(3, 0);
    t[1][1] = field.unit_vector(3, 1);
    t[1][2] = field.unit_vector(3, 2);
    t[2][1] = field.unit_vector(3, 2);
    t
}

/// The commutative associative algebra `F x F[e]/(e^2)`:
/// `e1 e1 = e1`, `e2 e2 = e2`, `e2 e3 = e3 e2 = e3`, other products zero.
pub fn dual_number_sum_associative(field: FieldSpec) -> AssociativeAlgebra {
    AssociativeAlgebra::new(field, default_labels("e", 3), dual_number_table(field))
        .expect("dual number table is associative")
}

/// The symmetrization of [`dual_number_sum_associative`], which is the
/// same table.
pub fn dual_number_sum(field: FieldSpec) -> JordanAlgebra {
    dual_number_sum_associative(field).jordanize()
}

/// Basis `x1, x2, x3` with `x1` annihilating everything and
/// `x_i o x_j = x1 + x2 + x3` for `i, j in {2, 3}`; the off-diagonal variant
/// sets `x2 o x2 = x3 o x3 = 0`, which breaks the Jordan identity.
pub fn sum_product(field: FieldSpec, variant: SumProductVariant) -> JordanAlgebra {
    let sum = vec![field.one(); 3];
    JordanAlgebra::from_fn(field, default_labels("x", 3), |i, j| {
        let squares = variant == SumProductVariant::Literal;
        if i == 0 || j == 0 || (i == j && !squares) {
            field.vector_zero(3)
        } else {
            sum.clone()
        }
    })
    .expect("symmetric table")
}

/// `span{E11, E12}` inside `F^{2x2+}`: `e o e = e`, `e o m = m / 2`,
/// `m o m = 0`. Perfect, no unit, zero center.
pub fn row_ideal(field: FieldSpec) -> JordanAlgebra {
    let h = half(field);
    JordanAlgebra::from_fn(field, vec!["e".into(), "m".into()], |i, j| match (i, j) {
        (0, 0) => field.unit_vector(2, 0),
        (1, 1) => field.vector_zero(2),
        _ => vec![field.zero(), h.clone()],
    })
    .expect("symmetric table")
}

fn size_param(name: &str, params: &[String]) -> Result<usize> {
    let bad = || Error::Input(format!("{name} takes one positive integer parameter n"));
    let [p] = params else { return Err(bad()) };
    let n: usize = p.trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok(n)
}

fn no_params(name: &str, params: &[String]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::Input(format!("{name} takes no parameters")))
    }
}

/// Looks up a catalog algebra by name. Parameters are text: `n` for the
/// matrix families, the row-major form entries for `spin_factor` (a
/// perfect square count), and the `alpha` list for `diagonal_spin`.
pub fn build(name: &str, field: FieldSpec, params: &[String]) -> Result<JordanAlgebra> {
    let scalars = || -> Result<Vec<Scalar>> { params.iter().map(|t| field.parse_scalar(t)).collect() };
    match name {
        "matrix_jordan" => matrix_jordan(field, size_param(name, params)?),
        "sym_matrix_jordan" => sym_matrix_jordan(field, size_param(name, params)?),
        "symplectic_jordan" => symplectic_jordan(field, size_param(name, params)?),
        "spin_factor" => {
            let k = (0..=params.len()).find(|k| k * k >= params.len()).unwrap_or(0);
            if k * k != params.len() {
                return Err(Error::Input("spin_factor needs k*k form entries".into()));
            }
            let entries = scalars()?;
            let rows = entries.chunks(k.max(1)).map(<[Scalar]>::to_vec).collect();
            spin_factor(field, &Matrix::from_rows(field, k, rows)?)
        }
        "diagonal_spin" => {
            if params.is_empty() {
                return Err(Error::Input("diagonal_spin needs at least one alpha".into()));
            }
            diagonal_spin(field, &scalars()?)
        }
        "dual_number_sum" => no_params(name, params).map(|_| dual_number_sum(field)),
        "sum_product_literal" => {
            no_params(name, params).map(|_| sum_product(field, SumProductVariant::Literal))
        }
        "sum_product_offdiag" => {
            no_params(name, params).map(|_| sum_product(field, SumProductVariant::OffDiagonal))
        }
        "row_ideal" => no_params(name, params).map(|_| row_ideal(field)),
        _ => Err(Error::Input(format!(
            "unknown catalog name '{name}'; known: {}",
            NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn dimensions() {
        let f = q();
        assert_eq!(matrix_jordan(f, 3).unwrap().dim(), 9);
        assert_eq!(sym_matrix_jordan(f, 3).unwrap().dim(), 6);
        assert_eq!(symplectic_jordan(f, 1).unwrap().dim(), 3);
        assert_eq!(symplectic_jordan(f, 2).unwrap().dim(), 10);
        assert_eq!(diagonal_spin(f, &[f.one(), f.one()]).unwrap().dim(), 3);
    }

    #[test]
    fn empty_spin_factor_is_the_field() {
        let f = q();
        let j = spin_factor(f, &Matrix::zeros(f, 0, 0)).unwrap();
        assert_eq!(j.dim(), 1);
        assert_eq!(j.product(0, 0), &[f.one()][..]);
    }

    #[test]
    fn diagonal_spin_products() {
        let f = q();
        let j = diagonal_spin(f, &[f.one(), f.one()]).unwrap();
        assert_eq!(j.product(1, 1), &f.unit_vector(3, 0)[..]);
        assert_eq!(j.product(1, 2), &f.vector_zero(3)[..]);
        assert!(diagonal_spin(f, &[f.zero()]).is_err());
    }

    #[test]
    fn sym_matrix_unit_is_identity() {
        let f = q();
        let s = sym_matrix_jordan(f, 2).unwrap();
        assert_eq!(s.labels(), ["S11", "S12", "S22"]);
        assert_eq!(s.unit().unwrap(), vec![f.one(), f.zero(), f.one()]);
    }

    #[test]
    fn row_ideal_is_perfect_without_center() {
        let f = q();
        let j = row_ideal(f);
        assert!(j.verify_jordan().passed());
        assert!(j.is_perfect());
        assert!(j.center().is_zero());
        assert!(j.unit().is_none());
    }

    #[test]
    fn only_the_literal_sum_product_is_jordan() {
        let f = q();
        assert!(sum_product(f, SumProductVariant::Literal).verify_jordan().passed());
        let c = sum_product(f, SumProductVariant::OffDiagonal).verify_jordan();
        assert!(c.commutative);
        assert!(!c.jordan_identity);
    }

    #[test]
    fn build_dispatch() {
        let f = FieldSpec::prime(5).unwrap();
        let n2 = ["2".to_string()];
        assert_eq!(build("matrix_jordan", f, &n2).unwrap().dim(), 4);
        assert_eq!(build("matrix_jordan", f, &["6".to_string()]).unwrap().dim(), 36);
        let form: Vec<String> = ["1", "0", "0", "1"].iter().map(|x| x.to_string()).collect();
        assert_eq!(build("spin_factor", f, &form).unwrap().dim(), 3);
        assert_eq!(build("spin_factor", f, &[]).unwrap().dim(), 1);
        assert!(build("spin_factor", f, &form[..3]).is_err());
        assert!(build("nope", f, &[]).is_err());
        assert!(build("dual_number_sum", f, &n2).is_err());
        assert!(build("matrix_jordan", f, &[]).is_err());
    }

    #[test]
    fn sign_flip_shape() {
        let f = q();
        let j = diagonal_spin(f, &[f.one()]).unwrap();
        let m = spin_sign_flip(&j);
        assert_eq!(m.image(0), &[-f.one(), f.zero()][..]);
        assert_eq!(m.image(1), &[f.zero(), f.one()][..]);
    }
}
