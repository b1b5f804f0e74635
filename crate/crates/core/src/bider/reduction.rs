//! The reduction loop: divide out the center while it is nonzero, pass to
//! `J'` when the algebra is not perfect, and stop at a perfect algebra with
//! zero center, where condition-(1) biderivations come from condition-(2)
//! centroid maps.
//!
//! Every stage is cross-checked against the direct solver: the induced map
//! on the solved space is computed explicitly, and its kernel and rank are
//! recorded rather than assumed.

use crate::algebra::{JordanAlgebra, Quotient, SubAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{nullspace, rank, Matrix, Subspace};
use crate::maps::{BilinearMap, Symmetry};
use crate::module::JModule;

use super::{
    biderivation_space, centroid_space, special_biderivation_space, trivial_biderivation_space,
    verify_biderivation, BiderChecks, SolutionSpace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StageAction {
    QuotientByCenter,
    RestrictToDerived,
    /// Perfect with zero center: the answer is the condition-(2) centroid.
    TerminateCentroid,
    TerminateZero,
    DepthLimit,
}

impl StageAction {
    pub fn as_str(self) -> &'static str {
        match self {
            StageAction::QuotientByCenter => "quotient_by_center",
            StageAction::RestrictToDerived => "restrict_to_derived",
            StageAction::TerminateCentroid => "terminate_centroid",
            StageAction::TerminateZero => "terminate_zero",
            StageAction::DepthLimit => "depth_limit",
        }
    }
}

/// How the solved space of one stage maps to the next stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck {
    /// Rank of the induced map.
    pub rank: usize,
    pub kernel_dim: usize,
    /// Dimension of the subspace the kernel should equal: trivial
    /// biderivations for a quotient, special ones for a restriction.
    pub expected_kernel_dim: usize,
    pub kernel_matches: bool,
    /// Every image is a symmetric condition-(1) biderivation of the next
    /// algebra.
    pub images_valid: bool,
    /// Dimension of the solved space on the next algebra.
    pub next_space_dim: usize,
}

impl StageCheck {
    pub fn surjective(&self) -> bool {
        self.rank == self.next_space_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub depth: usize,
    pub algebra: JordanAlgebra,
    pub center_dim: usize,
    pub perfect: bool,
    pub action: StageAction,
    /// Symmetric condition-(1) biderivations of this stage's algebra,
    /// solved directly.
    pub space_dim: usize,
    pub check: Option<StageCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub stages: Vec<Stage>,
    /// False when the depth limit stopped the loop.
    pub complete: bool,
    /// The condition-(2) centroid of the last algebra, when the loop ended
    /// on a perfect algebra with zero center.
    pub terminal: Option<SolutionSpace>,
    /// Direct solution dimension on the input algebra.
    pub direct_dim: usize,
    /// Sum of the expected kernels plus the terminal dimension; equals
    /// `direct_dim` when every induced map is onto.
    pub structural_dim: usize,
}

impl ReductionReport {
    pub fn agrees(&self) -> bool {
        self.complete && self.structural_dim == self.direct_dim
    }

    pub fn kernels_match(&self) -> bool {
        self.stages
            .iter()
            .filter_map(|s| s.check.as_ref())
            .all(|c| c.kernel_matches && c.images_valid)
    }

    pub fn lifts_surjective(&self) -> bool {
        self.stages
            .iter()
            .filter_map(|s| s.check.as_ref())
            .all(StageCheck::surjective)
    }
}

fn solved_space(j: &JordanAlgebra) -> Result<SolutionSpace> {
    biderivation_space(j, &JModule::regular(j), Symmetry::Symmetric, true)
}

/// Pushes `d` down to `J / Z(J)`; requires `d(Z(J), J) ⊆ Z(J)`.
pub(crate) fn induce_on_quotient(j: &JordanAlgebra, q: &Quotient, d: &BilinearMap) -> Result<BilinearMap> {
    Error::check_len("biderivation domain", j.dim(), d.dim())?;
    Error::check_len("biderivation codomain", j.dim(), d.codim())?;
    let ideal = q.coords.ideal();
    for z in ideal.basis_vectors() {
        for b in 0..j.dim() {
            let mut v = j.field().vector_zero(j.dim());
            for (a, c) in z.iter().enumerate() {
                crate::field::axpy(&mut v, c, d.get(a, b));
            }
            if !ideal.contains(&v)? {
                return Err(Error::hypothesis(
                    "d(Z(J), J) in Z(J)",
                    format!("d(z, {}) leaves the center", j.labels()[b]),
                ));
            }
        }
    }
    let reps = q.coords.representatives();
    let k = reps.len();
    let table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| q.coords.project(d.get(a, b))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    BilinearMap::from_table(j.field(), k, k, table)
}

/// The symmetric biderivation of `J / Z(J)` given by `d(x, y) + Z(J)`.
pub fn induced_quotient_biderivation(j: &JordanAlgebra, d: &BilinearMap) -> Result<BilinearMap> {
    let q = j.quotient(&j.center())?;
    induce_on_quotient(j, &q, d)
}

/// `d` restricted to `J' x J'`, in the coordinates of the subalgebra basis.
fn restrict(sub: &SubAlgebra, d: &BilinearMap) -> Result<Option<BilinearMap>> {
    let basis = sub.space.basis_vectors();
    let k = basis.len();
    let mut table = Vec::with_capacity(k);
    for u in &basis {
        let mut row = Vec::with_capacity(k);
        for w in &basis {
            let v = d.apply(u, w)?;
            let Some(c) = sub.space.coordinates(&v)? else {
                return Ok(None);
            };
            row.push(c);
        }
        table.push(row);
    }
    Ok(Some(BilinearMap::from_table(d.field(), k, k, table)?))
}

/// Compares the induced map `space -> next` with the expected kernel.
fn check_stage(
    space: &SolutionSpace,
    images: Vec<Option<BilinearMap>>,
    next: &JordanAlgebra,
    next_space: &SolutionSpace,
    expected: &SolutionSpace,
) -> Result<StageCheck> {
    let field = space.field();
    let k = next.dim();
    let width = Symmetry::Symmetric.slots(k).len() * k;
    let regular = JModule::regular(next);
    let mut images_valid = true;
    let mut rows = Vec::with_capacity(images.len());
    for img in images {
        match img {
            Some(d) => {
                images_valid &= verify_biderivation(next, &regular, &d, BiderChecks::SYMMETRIC_CONDITION1)?.passed();
                rows.push(d.flatten(Symmetry::Symmetric));
            }
            None => {
                images_valid = false;
                rows.push(field.vector_zero(width));
            }
        }
    }
    let image_matrix = Matrix::from_rows(field, width, rows)?;
    let induced_rank = rank(&image_matrix);
    // combinations of the basis that map to zero
    let kernel_coords = nullspace(&image_matrix.transpose());
    let basis = space.space().basis_vectors();
    let kernel = Subspace::span(
        field,
        space.space().ambient_dim(),
        kernel_coords.basis_vectors().iter().map(|c| combine(c, &basis, field)),
    )?;
    let expected_space = space.space().intersection(expected.space())?;
    Ok(StageCheck {
        rank: induced_rank,
        kernel_dim: kernel.dim(),
        expected_kernel_dim: expected_space.dim(),
        kernel_matches: kernel == expected_space,
        images_valid,
        next_space_dim: next_space.dim(),
    })
}

fn combine(coeffs: &[Scalar], basis: &[Vec<Scalar>], field: crate::field::FieldSpec) -> Vec<Scalar> {
    let mut out = field.vector_zero(basis.first().map_or(0, Vec::len));
    for (c, v) in coeffs.iter().zip(basis) {
        crate::field::axpy(&mut out, c, v);
    }
    out
}

/// Runs the reduction loop for at most `max_depth` stages.
pub fn reduction_pipeline(j: &JordanAlgebra, max_depth: usize) -> Result<ReductionReport> {
    if max_depth == 0 {
        return Err(Error::Input("max depth must be at least 1".into()));
    }
    let mut stages = Vec::new();
    let mut current = j.clone();
    let mut space = solved_space(&current)?;
    let direct_dim = space.dim();
    let mut structural_dim = 0;
    let mut terminal = None;
    let mut complete = false;
    for depth in 1..=max_depth {
        let center = current.center();
        let perfect = current.is_perfect();
        let mut stage = Stage {
            depth,
            algebra: current.clone(),
            center_dim: center.dim(),
            perfect,
            action: StageAction::DepthLimit,
            space_dim: space.dim(),
            check: None,
        };
        if current.dim() == 0 {
            stage.action = StageAction::TerminateZero;
            stages.push(stage);
            complete = true;
            break;
        }
        if !center.is_zero() || !perfect {
            let (next, images, expected) = if !center.is_zero() {
                stage.action = StageAction::QuotientByCenter;
                let q = current.quotient(&center)?;
                let images = space
                    .bilinear_basis()
                    .iter()
                    .map(|d| induce_on_quotient(&current, &q, d).ok())
                    .collect();
                (q.algebra, images, trivial_biderivation_space(&current))
            } else {
                stage.action = StageAction::RestrictToDerived;
                let sub = current.subalgebra(&current.derived())?;
                let images = space
                    .bilinear_basis()
                    .iter()
                    .map(|d| restrict(&sub, d))
                    .collect::<Result<Vec<_>>>()?;
                (sub.algebra, images, special_biderivation_space(&current))
            };
            let next_space = solved_space(&next)?;
            let check = check_stage(&space, images, &next, &next_space, &expected)?;
            structural_dim += check.expected_kernel_dim;
            let stalled = next.dim() == current.dim();
            stage.check = Some(check);
            stages.push(stage);
            if stalled {
                break;
            }
            current = next;
            space = next_space;
            if depth == max_depth {
                stages.push(Stage {
                    depth: depth + 1,
                    center_dim: current.center().dim(),
                    perfect: current.is_perfect(),
                    algebra: current.clone(),
                    action: StageAction::DepthLimit,
                    space_dim: space.dim(),
                    check: None,
                });
            }
            continue;
        }
        stage.action = StageAction::TerminateCentroid;
        let cent = centroid_space(&current, &JModule::regular(&current), true)?;
        structural_dim += cent.dim();
        terminal = Some(cent);
        stages.push(stage);
        complete = true;
        break;
    }
    Ok(ReductionReport {
        stages,
        complete,
        terminal,
        direct_dim,
        structural_dim,
    })
}
