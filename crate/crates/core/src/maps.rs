//! Linear and bilinear maps in coordinates.

use crate::error::{Error, Result};
use crate::field::{axpy, vec_is_zero, FieldSpec, Scalar};
use crate::linalg::Matrix;

/// A linear map `F^source -> F^target`, stored by the images of the
/// standard basis vectors: `images[i] = f(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    field: FieldSpec,
    source_dim: usize,
    target_dim: usize,
    images: Vec<Vec<Scalar>>,
}

impl LinearMap {
    pub fn from_images(
        field: FieldSpec,
        source_dim: usize,
        target_dim: usize,
        images: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        Error::check_len("linear map rows", source_dim, images.len())?;
        for row in &images {
            Error::check_len("linear map image", target_dim, row.len())?;
        }
        Ok(LinearMap {
            field,
            source_dim,
            target_dim,
            images,
        })
    }

    pub fn zero(field: FieldSpec, source_dim: usize, target_dim: usize) -> Self {
        LinearMap {
            field,
            source_dim,
            target_dim,
            images: vec![field.vector_zero(target_dim); source_dim],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinearMap {
            field,
            source_dim: n,
            target_dim: n,
            images: (0..n).map(|i| field.unit_vector(n, i)).collect(),
        }
    }

    pub fn from_i64(field: FieldSpec, images: &[&[i64]]) -> Self {
        let target = images.first().map_or(0, |r| r.len());
        let rows = images
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_images(field, images.len(), target, rows).expect("ragged integer map")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn image(&self, i: usize) -> &[Scalar] {
        &self.images[i]
    }

    pub fn images(&self) -> &[Vec<Scalar>] {
        &self.images
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        Error::check_len("linear map argument", self.source_dim, v.len())?;
        let mut out = self.field.vector_zero(self.target_dim);
        for (c, img) in v.iter().zip(&self.images) {
            axpy(&mut out, c, img);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| vec_is_zero(v))
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        Error::check_len("linear map difference", self.source_dim, other.source_dim)?;
        Error::check_len("linear map difference", self.target_dim, other.target_dim)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(LinearMap { images, ..self.clone() })
    }

    /// Row-major flattening `(i, k) -> i * target_dim + k`.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.images.iter().flatten().cloned().collect()
    }

    pub fn from_flat(
        field: FieldSpec,
        source_dim: usize,
        target_dim: usize,
        flat: &[Scalar],
    ) -> Result<Self> {
        Error::check_len("flattened linear map", source_dim * target_dim, flat.len())?;
        let images = flat
            .chunks(target_dim.max(1))
            .take(source_dim)
            .map(<[Scalar]>::to_vec)
            .collect::<Vec<_>>();
        let images = if target_dim == 0 {
            vec![Vec::new(); source_dim]
        } else {
            images
        };
        Self::from_images(field, source_dim, target_dim, images)
    }

    /// The matrix `M` with `M v = f(v)` (columns are images).
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.target_dim, self.source_dim);
        for (i, img) in self.images.iter().enumerate() {
            for (k, x) in img.iter().enumerate() {
                m[(k, i)] = x.clone();
            }
        }
        m
    }
}

/// Which independent coordinates parameterize a bilinear map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    General,
    /// `d(x, y) = d(y, x)`: coordinates `(i <= j, k)`.
    Symmetric,
    /// `d(x, y) = -d(y, x)`: coordinates `(i < j, k)`.
    Skew,
}

impl Symmetry {
    /// Independent `(i, j)` slots, row-major.
    pub fn slots(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let keep = match self {
                    Symmetry::General => true,
                    Symmetry::Symmetric => i <= j,
                    Symmetry::Skew => i < j,
                };
                if keep {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Maps the full slot `(i, j)` to `(slot index, sign)` or `None` when the
    /// entry is forced to zero.
    pub fn slot_of(self, n: usize, i: usize, j: usize) -> Option<(usize, bool)> {
        let tri = |a: usize, b: usize| a * n - a * (a + 1) / 2 + b;
        match self {
            Symmetry::General => Some((i * n + j, true)),
            Symmetry::Symmetric => {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                Some((tri(a, b), true))
            }
            Symmetry::Skew => {
                if i == j {
                    None
                } else if i < j {
                    Some((tri(i, j) - (i + 1), true))
                } else {
                    Some((tri(j, i) - (j + 1), false))
                }
            }
        }
    }
}

/// A bilinear map `F^n x F^n -> F^m`, `values[i * n + j] = d(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearMap {
    field: FieldSpec,
    dim: usize,
    codim: usize,
    values: Vec<Vec<Scalar>>,
}

impl BilinearMap {
    pub fn zero(field: FieldSpec, dim: usize, codim: usize) -> Self {
        BilinearMap {
            field,
            dim,
            codim,
            values: vec![field.vector_zero(codim); dim * dim],
        }
    }

    /// `table[i][j] = d(e_i, e_j)`.
    pub fn from_table(
        field: FieldSpec,
        dim: usize,
        codim: usize,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        Error::check_len("bilinear map rows", dim, table.len())?;
        let mut values = Vec::with_capacity(dim * dim);
        for row in table {
            Error::check_len("bilinear map row", dim, row.len())?;
            for v in row {
                Error::check_len("bilinear map value", codim, v.len())?;
                values.push(v);
            }
        }
        Ok(BilinearMap {
            field,
            dim,
            codim,
            values,
        })
    }

    pub fn from_fn(
        field: FieldSpec,
        dim: usize,
        codim: usize,
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let mut values = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), codim, "bilinear value length");
                values.push(v);
            }
        }
        BilinearMap {
            field,
            dim,
            codim,
            values,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.values[i * self.dim + j]
    }

    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.values.chunks(self.dim.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        Error::check_len("bilinear first argument", self.dim, u.len())?;
        Error::check_len("bilinear second argument", self.dim, v.len())?;
        let mut out = self.field.vector_zero(self.codim);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    axpy(&mut out, &(a * b), self.get(i, j));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| vec_is_zero(v))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..=i).all(|j| {
                self.get(i, j)
                    .iter()
                    .zip(self.get(j, i))
                    .all(|(a, b)| (a + b).is_zero())
            })
        })
    }

    /// Coordinates in the parameterization chosen by `symmetry`. The caller
    /// must ensure the map actually has that symmetry.
    pub fn flatten(&self, symmetry: Symmetry) -> Vec<Scalar> {
        symmetry
            .slots(self.dim)
            .into_iter()
            .flat_map(|(i, j)| self.get(i, j).to_vec())
            .collect()
    }

    pub fn from_flat(
        field: FieldSpec,
        dim: usize,
        codim: usize,
        symmetry: Symmetry,
        flat: &[Scalar],
    ) -> Result<Self> {
        let slots = symmetry.slots(dim).len();
        Error::check_len("flattened bilinear map", slots * codim, flat.len())?;
        Ok(Self::from_fn(field, dim, codim, |i, j| {
            match symmetry.slot_of(dim, i, j) {
                None => field.vector_zero(codim),
                Some((s, positive)) => {
                    let v = &flat[s * codim..(s + 1) * codim];
                    if positive {
                        v.to_vec()
                    } else {
                        v.iter().map(|x| -x).collect()
                    }
                }
            }
        }))
    }

    pub fn sub(&self, other: &BilinearMap) -> Result<BilinearMap> {
        Error::check_len("bilinear difference", self.dim, other.dim)?;
        Error::check_len("bilinear difference", self.codim, other.codim)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(BilinearMap { values, ..self.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_indexing_matches_slot_order() {
        for n in 0..5 {
            for sym in [Symmetry::General, Symmetry::Symmetric, Symmetry::Skew] {
                for (idx, (i, j)) in sym.slots(n).into_iter().enumerate() {
                    assert_eq!(sym.slot_of(n, i, j), Some((idx, true)), "{sym:?} n={n}");
                }
            }
        }
        assert_eq!(Symmetry::Skew.slot_of(3, 2, 0), Some((1, false)));
        assert_eq!(Symmetry::Skew.slot_of(3, 1, 1), None);
    }

    #[test]
    fn flatten_round_trip() {
        let f = FieldSpec::rational();
        let d = BilinearMap::from_fn(f, 3, 2, |i, j| {
            vec![f.from_i64((i + j) as i64), f.from_i64((i * j) as i64)]
        });
        assert!(d.is_symmetric());
        let flat = d.flatten(Symmetry::Symmetric);
        assert_eq!(flat.len(), 6 * 2);
        assert_eq!(BilinearMap::from_flat(f, 3, 2, Symmetry::Symmetric, &flat).unwrap(), d);
    }

    #[test]
    fn linear_map_apply() {
        let f = FieldSpec::rational();
        let m = LinearMap::from_i64(f, &[&[1, 2], &[0, 1], &[3, 0]]);
        let v = vec![f.one(), f.one(), f.one()];
        assert_eq!(m.apply(&v).unwrap(), vec![f.from_i64(4), f.from_i64(3)]);
        assert_eq!(m.to_matrix().mul_vec(&v).unwrap(), m.apply(&v).unwrap());
    }
}
