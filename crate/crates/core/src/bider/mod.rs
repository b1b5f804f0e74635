//! Biderivations, derivations and centroids as solution spaces of exact
//! linear systems, and the correspondence `delta(x, y) = gamma(x o y)`
//! between condition-(1) biderivations and condition-(2) centroid maps.
//!
//! Conventions, with `.` the module action and `o` the algebra product:
//!
//! * biderivation: `d(x o y, z) = x . d(y, z) + y . d(x, z)` and
//!   `d(x, y o z) = y . d(x, z) + z . d(x, y)`;
//! * condition (1): `d(w, u o v) = w . d(u, v)`;
//! * centroid: `g(x o y) = x . g(y)`;
//! * condition (2): `z . g(x o y) = x . g(y o z) + y . g(x o z)`.

mod reduction;

pub use reduction::{
    induced_quotient_biderivation, reduction_pipeline, ReductionReport, Stage, StageAction, StageCheck,
};

use rayon::prelude::*;

use crate::algebra::JordanAlgebra;
use crate::error::{Error, Result};
use crate::field::{axpy, vec_add, vec_is_zero, FieldSpec, Scalar};
use crate::linalg::{nullspace, Echelon, Subspace};
use crate::maps::{BilinearMap, LinearMap, Symmetry};
use crate::module::JModule;

/// Outcome of one identity check, with the first failing basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn record(&mut self, ok: bool, witness: &[usize]) {
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(witness.to_vec());
        }
    }
}

/// Extra properties requested from [`verify_biderivation`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BiderChecks {
    pub symmetric: bool,
    pub skew: bool,
    pub condition1: bool,
}

impl BiderChecks {
    pub const SYMMETRIC_CONDITION1: BiderChecks = BiderChecks {
        symmetric: true,
        skew: false,
        condition1: true,
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiderivationCheck {
    pub axiom_i: Verdict,
    pub axiom_ii: Verdict,
    pub symmetric: Option<Verdict>,
    pub skew: Option<Verdict>,
    pub condition1: Option<Verdict>,
}

impl BiderivationCheck {
    pub fn passed(&self) -> bool {
        self.axiom_i.holds
            && self.axiom_ii.holds
            && [&self.symmetric, &self.skew, &self.condition1]
                .into_iter()
                .flatten()
                .all(|v| v.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidCheck {
    pub centroid: Verdict,
    pub condition2: Option<Verdict>,
}

impl CentroidCheck {
    pub fn passed(&self) -> bool {
        self.centroid.holds && self.condition2.as_ref().is_none_or(|v| v.holds)
    }
}

/// What a [`SolutionSpace`] parameterizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Biderivation { symmetry: Symmetry, condition1: bool },
    Derivation,
    Centroid { condition2: bool },
    /// Symmetric maps into `Z(J)` vanishing on `J x J'`.
    Trivial,
    /// Symmetric biderivations with `d(J', J') = 0` and `d(J, J') ⊆ Z_J(J')`.
    Special,
}

impl SpaceKind {
    /// Coordinate layout of bilinear kinds; `None` for linear maps.
    pub fn symmetry(self) -> Option<Symmetry> {
        match self {
            SpaceKind::Biderivation { symmetry, .. } => Some(symmetry),
            SpaceKind::Trivial | SpaceKind::Special => Some(Symmetry::Symmetric),
            SpaceKind::Derivation | SpaceKind::Centroid { .. } => None,
        }
    }

    pub fn name(self) -> String {
        match self {
            SpaceKind::Biderivation { symmetry, condition1 } => {
                let sym = match symmetry {
                    Symmetry::General => "",
                    Symmetry::Symmetric => "symmetric ",
                    Symmetry::Skew => "skew ",
                };
                let c1 = if condition1 { " with condition (1)" } else { "" };
                format!("{sym}biderivations{c1}")
            }
            SpaceKind::Derivation => "derivations".into(),
            SpaceKind::Centroid { condition2: false } => "centroid".into(),
            SpaceKind::Centroid { condition2: true } => "centroid with condition (2)".into(),
            SpaceKind::Trivial => "trivial biderivations".into(),
            SpaceKind::Special => "special biderivations".into(),
        }
    }
}

/// A linear space of maps, stored as the echelon basis of their flattened
/// coefficient vectors.
///
/// Linear maps flatten row-major as `(i, k) -> i * target + k`; bilinear
/// maps flatten over the independent `(i, j)` slots of their symmetry,
/// then `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub kind: SpaceKind,
    pub source_dim: usize,
    pub target_dim: usize,
    space: Subspace,
}

impl SolutionSpace {
    pub fn new(kind: SpaceKind, source_dim: usize, target_dim: usize, space: Subspace) -> Result<Self> {
        let slots = match kind.symmetry() {
            Some(sym) => sym.slots(source_dim).len(),
            None => source_dim,
        };
        Error::check_len("solution space coordinates", slots * target_dim, space.ambient_dim())?;
        Ok(SolutionSpace {
            kind,
            source_dim,
            target_dim,
            space,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn is_bilinear(&self) -> bool {
        self.kind.symmetry().is_some()
    }

    /// Basis as bilinear maps (empty for linear kinds).
    pub fn bilinear_basis(&self) -> Vec<BilinearMap> {
        let Some(sym) = self.kind.symmetry() else {
            return Vec::new();
        };
        self.space
            .basis_vectors()
            .iter()
            .map(|v| {
                BilinearMap::from_flat(self.field(), self.source_dim, self.target_dim, sym, v)
                    .expect("shape fixed at construction")
            })
            .collect()
    }

    /// Basis as linear maps (empty for bilinear kinds).
    pub fn linear_basis(&self) -> Vec<LinearMap> {
        if self.is_bilinear() {
            return Vec::new();
        }
        self.space
            .basis_vectors()
            .iter()
            .map(|v| {
                LinearMap::from_flat(self.field(), self.source_dim, self.target_dim, v)
                    .expect("shape fixed at construction")
            })
            .collect()
    }

    /// Flattens a bilinear map into this space's coordinates, or `None` if
    /// it lacks the required symmetry.
    pub fn coordinates_of_bilinear(&self, d: &BilinearMap) -> Option<Vec<Scalar>> {
        let sym = self.kind.symmetry()?;
        let fits = match sym {
            Symmetry::General => true,
            Symmetry::Symmetric => d.is_symmetric(),
            Symmetry::Skew => d.is_skew(),
        };
        (fits && d.dim() == self.source_dim && d.codim() == self.target_dim).then(|| d.flatten(sym))
    }

    pub fn contains_bilinear(&self, d: &BilinearMap) -> bool {
        self.coordinates_of_bilinear(d)
            .is_some_and(|v| self.space.contains(&v).unwrap_or(false))
    }

    pub fn contains_linear(&self, g: &LinearMap) -> bool {
        !self.is_bilinear()
            && g.source_dim() == self.source_dim
            && g.target_dim() == self.target_dim
            && self.space.contains(&g.flatten()).unwrap_or(false)
    }
}

// ---------------------------------------------------------------------------
// constraint assembly

/// A sparse constraint row; repeated indices add up.
type Row = Vec<(usize, Scalar)>;

struct System {
    field: FieldSpec,
    echelon: Echelon,
}

impl System {
    fn new(field: FieldSpec, vars: usize) -> Self {
        System {
            field,
            echelon: Echelon::new(field, vars),
        }
    }

    fn full_rank(&self) -> bool {
        self.echelon.rank() == self.echelon.cols()
    }

    fn insert(&mut self, row: Row) {
        if self.full_rank() {
            return;
        }
        let mut dense = self.field.vector_zero(self.echelon.cols());
        for (i, c) in row {
            dense[i] += &c;
        }
        if !vec_is_zero(&dense) {
            self.echelon.insert(dense);
        }
    }

    /// Generates row blocks in parallel and inserts them in index order.
    fn extend_par<F>(&mut self, blocks: usize, gen: F)
    where
        F: Fn(usize) -> Vec<Row> + Sync,
    {
        let chunk = rayon::current_num_threads().max(1) * 2;
        let mut start = 0;
        while start < blocks && !self.full_rank() {
            let end = (start + chunk).min(blocks);
            let rows: Vec<Vec<Row>> = (start..end).into_par_iter().map(&gen).collect();
            for row in rows.into_iter().flatten() {
                self.insert(row);
            }
            start = end;
        }
    }

    fn kernel(&self) -> Subspace {
        self.echelon.kernel()
    }
}

/// Index bookkeeping for an unknown bilinear map `F^n x F^n -> F^m`.
#[derive(Clone, Copy)]
struct BilinearVars {
    n: usize,
    m: usize,
    symmetry: Symmetry,
}

impl BilinearVars {
    fn count(&self) -> usize {
        self.symmetry.slots(self.n).len() * self.m
    }

    /// Adds `c * d(e_i, e_j)_t` to the row.
    fn push(&self, row: &mut Row, i: usize, j: usize, t: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some((slot, positive)) = self.symmetry.slot_of(self.n, i, j) {
            let c = if positive { c.clone() } else { -c };
            row.push((slot * self.m + t, c));
        }
    }
}

fn check_module(j: &JordanAlgebra, m: &JModule) -> Result<()> {
    Error::check_len("module over algebra", j.dim(), m.algebra_dim())?;
    if j.field() != m.field() {
        return Err(Error::Field(format!("module over {} for algebra over {}", m.field(), j.field())));
    }
    Ok(())
}

/// Rows of `d(e_a o e_b, e_c) - e_a . d(e_b, e_c) - e_b . d(e_a, e_c)` for
/// fixed `a`, all `b, c` and output components.
fn leibniz_rows(j: &JordanAlgebra, m: &JModule, vars: BilinearVars, a: usize, b_from: usize) -> Vec<Row> {
    let (n, md) = (vars.n, vars.m);
    let mut rows = Vec::new();
    for b in b_from..n {
        let prod = j.product(a, b);
        for c in 0..n {
            for t in 0..md {
                let mut row = Row::new();
                for (l, coef) in prod.iter().enumerate() {
                    vars.push(&mut row, l, c, t, coef);
                }
                for s in 0..md {
                    let act_a = &m.basis_action(a, s)[t];
                    if !act_a.is_zero() {
                        vars.push(&mut row, b, c, s, &(-act_a));
                    }
                    let act_b = &m.basis_action(b, s)[t];
                    if !act_b.is_zero() {
                        vars.push(&mut row, a, c, s, &(-act_b));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Rows of the second-argument rule
/// `d(e_a, e_b o e_c) - e_b . d(e_a, e_c) - e_c . d(e_a, e_b)`.
fn right_leibniz_rows(j: &JordanAlgebra, m: &JModule, vars: BilinearVars, a: usize) -> Vec<Row> {
    let (n, md) = (vars.n, vars.m);
    let mut rows = Vec::new();
    for b in 0..n {
        for c in b..n {
            let prod = j.product(b, c);
            for t in 0..md {
                let mut row = Row::new();
                for (l, coef) in prod.iter().enumerate() {
                    vars.push(&mut row, a, l, t, coef);
                }
                for s in 0..md {
                    vars.push(&mut row, a, c, s, &(-&m.basis_action(b, s)[t]));
                    vars.push(&mut row, a, b, s, &(-&m.basis_action(c, s)[t]));
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Rows of condition (1): `d(e_w, e_u o e_v) - e_w . d(e_u, e_v)`.
fn condition1_rows(j: &JordanAlgebra, m: &JModule, vars: BilinearVars, w: usize, symmetric: bool) -> Vec<Row> {
    let (n, md) = (vars.n, vars.m);
    let mut rows = Vec::new();
    for u in 0..n {
        for v in (if symmetric { u } else { 0 })..n {
            let prod = j.product(u, v);
            for t in 0..md {
                let mut row = Row::new();
                for (l, coef) in prod.iter().enumerate() {
                    vars.push(&mut row, w, l, t, coef);
                }
                for s in 0..md {
                    vars.push(&mut row, u, v, s, &(-&m.basis_action(w, s)[t]));
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn add_biderivation_rows(sys: &mut System, j: &JordanAlgebra, m: &JModule, vars: BilinearVars) {
    let symmetric = vars.symmetry == Symmetry::Symmetric;
    // for symmetric maps the first rule is symmetric in (a, b) and implies
    // the second one
    sys.extend_par(j.dim(), |a| leibniz_rows(j, m, vars, a, if symmetric { a } else { 0 }));
    if !symmetric {
        sys.extend_par(j.dim(), |a| right_leibniz_rows(j, m, vars, a));
    }
}

/// All bilinear `d: J x J -> M` satisfying the biderivation rules, with the
/// chosen symmetry and optionally condition (1).
pub fn biderivation_space(
    j: &JordanAlgebra,
    m: &JModule,
    symmetry: Symmetry,
    condition1: bool,
) -> Result<SolutionSpace> {
    check_module(j, m)?;
    let vars = BilinearVars {
        n: j.dim(),
        m: m.dim(),
        symmetry,
    };
    let mut sys = System::new(j.field(), vars.count());
    if condition1 {
        // condition (1) is the stronger constraint and usually pins the
        // space down first
        let symmetric = symmetry == Symmetry::Symmetric;
        sys.extend_par(j.dim(), |w| condition1_rows(j, m, vars, w, symmetric));
    }
    add_biderivation_rows(&mut sys, j, m, vars);
    SolutionSpace::new(
        SpaceKind::Biderivation { symmetry, condition1 },
        j.dim(),
        m.dim(),
        sys.kernel(),
    )
}

/// All `D` with `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)`, using the table's
/// product order so non-commutative associative tables are handled too.
pub fn derivation_space(j: &JordanAlgebra) -> SolutionSpace {
    let n = j.dim();
    let mut sys = System::new(j.field(), n * n);
    sys.extend_par(n, |i| {
        let mut rows = Vec::new();
        for jj in 0..n {
            for t in 0..n {
                let mut row = Row::new();
                for (l, c) in j.product(i, jj).iter().enumerate() {
                    if !c.is_zero() {
                        row.push((l * n + t, c.clone()));
                    }
                }
                for s in 0..n {
                    let right = &j.product(s, jj)[t];
                    if !right.is_zero() {
                        row.push((i * n + s, -right));
                    }
                    let left = &j.product(i, s)[t];
                    if !left.is_zero() {
                        row.push((jj * n + s, -left));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        rows
    });
    SolutionSpace::new(SpaceKind::Derivation, n, n, sys.kernel()).expect("n x n unknowns")
}

/// `Cent(M)`: all `g: J -> M` with `g(x o y) = x . g(y)`, optionally also
/// satisfying condition (2).
pub fn centroid_space(j: &JordanAlgebra, m: &JModule, condition2: bool) -> Result<SolutionSpace> {
    check_module(j, m)?;
    let (n, md) = (j.dim(), m.dim());
    let var = |i: usize, k: usize| i * md + k;
    let mut sys = System::new(j.field(), n * md);
    sys.extend_par(n, |a| {
        let mut rows = Vec::new();
        for b in 0..n {
            for t in 0..md {
                let mut row = Row::new();
                for (l, c) in j.product(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        row.push((var(l, t), c.clone()));
                    }
                }
                for s in 0..md {
                    let act = &m.basis_action(a, s)[t];
                    if !act.is_zero() {
                        row.push((var(b, s), -act));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        rows
    });
    if condition2 {
        // e_c . g(e_a o e_b) - e_a . g(e_b o e_c) - e_b . g(e_a o e_c)
        let term = |row: &mut Row, actor: usize, x: usize, y: usize, t: usize, sign: &Scalar| {
            for (l, c) in j.product(x, y).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for s in 0..md {
                    let act = &m.basis_action(actor, s)[t];
                    if !act.is_zero() {
                        row.push((var(l, s), &(sign * c) * act));
                    }
                }
            }
        };
        let one = j.field().one();
        let minus = -&one;
        sys.extend_par(n, |a| {
            let mut rows = Vec::new();
            for b in a..n {
                for c in 0..n {
                    for t in 0..md {
                        let mut row = Row::new();
                        term(&mut row, c, a, b, t, &one);
                        term(&mut row, a, b, c, t, &minus);
                        term(&mut row, b, a, c, t, &minus);
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
            rows
        });
    }
    SolutionSpace::new(SpaceKind::Centroid { condition2 }, n, md, sys.kernel())
}

/// Annihilator of a subspace under the dot product, as row constraints
/// `sum_t a_t v_t = 0` that cut out the subspace.
fn cut_equations(s: &Subspace) -> Vec<Vec<Scalar>> {
    nullspace(s.basis()).basis_vectors()
}

/// Symmetric `d: J x J -> Z(J)` with `d(J, J') = 0`.
pub fn trivial_biderivation_space(j: &JordanAlgebra) -> SolutionSpace {
    let n = j.dim();
    let vars = BilinearVars {
        n,
        m: n,
        symmetry: Symmetry::Symmetric,
    };
    let mut sys = System::new(j.field(), vars.count());
    let center_eqs = cut_equations(&j.center());
    for (a, b) in Symmetry::Symmetric.slots(n) {
        for eq in &center_eqs {
            let mut row = Row::new();
            for (t, c) in eq.iter().enumerate() {
                vars.push(&mut row, a, b, t, c);
            }
            sys.insert(row);
        }
    }
    let derived = j.derived().basis_vectors();
    for a in 0..n {
        for w in &derived {
            for t in 0..n {
                let mut row = Row::new();
                for (l, c) in w.iter().enumerate() {
                    vars.push(&mut row, a, l, t, c);
                }
                sys.insert(row);
            }
        }
    }
    SolutionSpace::new(SpaceKind::Trivial, n, n, sys.kernel()).expect("symmetric unknowns")
}

/// Symmetric biderivations `d: J x J -> J` (regular module) with
/// `d(J', J') = 0` and `d(J, J') ⊆ Z_J(J')`.
pub fn special_biderivation_space(j: &JordanAlgebra) -> SolutionSpace {
    let n = j.dim();
    let m = JModule::regular(j);
    let vars = BilinearVars {
        n,
        m: n,
        symmetry: Symmetry::Symmetric,
    };
    let mut sys = System::new(j.field(), vars.count());
    let derived_space = j.derived();
    let derived = derived_space.basis_vectors();
    // d(u, w) for u = e_a or u in J', w in J': coordinates t
    let pair_row = |row: &mut Row, left: &[Scalar], right: &[Scalar], t: usize, scale: &Scalar| {
        for (p, x) in left.iter().enumerate() {
            for (q, y) in right.iter().enumerate() {
                vars.push(row, p, q, t, &(&(x * y) * scale));
            }
        }
    };
    let one = j.field().one();
    for (i, u) in derived.iter().enumerate() {
        for w in &derived[i..] {
            for t in 0..n {
                let mut row = Row::new();
                pair_row(&mut row, u, w, t, &one);
                sys.insert(row);
            }
        }
    }
    let inner_eqs = cut_equations(&m.annihilator(&derived_space).expect("own dimensions"));
    for a in 0..n {
        let ea = j.field().unit_vector(n, a);
        for w in &derived {
            for eq in &inner_eqs {
                let mut row = Row::new();
                for (t, c) in eq.iter().enumerate() {
                    pair_row(&mut row, &ea, w, t, c);
                }
                sys.insert(row);
            }
        }
    }
    add_biderivation_rows(&mut sys, j, &m, vars);
    SolutionSpace::new(SpaceKind::Special, n, n, sys.kernel()).expect("symmetric unknowns")
}

// ---------------------------------------------------------------------------
// verifiers

fn check_bilinear(j: &JordanAlgebra, m: &JModule, d: &BilinearMap) -> Result<()> {
    check_module(j, m)?;
    Error::check_len("bilinear map domain", j.dim(), d.dim())?;
    Error::check_len("bilinear map codomain", m.dim(), d.codim())
}

/// `d(u, e_k)` for a vector `u`.
fn d_left(d: &BilinearMap, u: &[Scalar], k: usize) -> Vec<Scalar> {
    let mut out = d.field().vector_zero(d.codim());
    for (l, c) in u.iter().enumerate() {
        axpy(&mut out, c, d.get(l, k));
    }
    out
}

/// `d(e_k, u)`.
fn d_right(d: &BilinearMap, k: usize, u: &[Scalar]) -> Vec<Scalar> {
    let mut out = d.field().vector_zero(d.codim());
    for (l, c) in u.iter().enumerate() {
        axpy(&mut out, c, d.get(k, l));
    }
    out
}

/// Checks the biderivation rules and the requested extras on all basis
/// triples; every rule is multilinear, so this is exact.
pub fn verify_biderivation(
    j: &JordanAlgebra,
    m: &JModule,
    d: &BilinearMap,
    checks: BiderChecks,
) -> Result<BiderivationCheck> {
    check_bilinear(j, m, d)?;
    let n = j.dim();
    let mut axiom_i = Verdict::pass();
    let mut axiom_ii = Verdict::pass();
    let mut cond1 = Verdict::pass();
    for a in 0..n {
        for b in 0..n {
            let ab = j.product(a, b);
            for c in 0..n {
                let lhs = d_left(d, ab, c);
                let rhs = vec_add(&m.act_basis(a, d.get(b, c)), &m.act_basis(b, d.get(a, c)));
                axiom_i.record(lhs == rhs, &[a, b, c]);

                let bc = j.product(b, c);
                let lhs = d_right(d, a, bc);
                let rhs = vec_add(&m.act_basis(b, d.get(a, c)), &m.act_basis(c, d.get(a, b)));
                axiom_ii.record(lhs == rhs, &[a, b, c]);

                if checks.condition1 {
                    // d(e_a, e_b o e_c) = e_a . d(e_b, e_c)
                    cond1.record(lhs == m.act_basis(a, d.get(b, c)), &[a, b, c]);
                }
            }
        }
    }
    let mut symmetric = Verdict::pass();
    let mut skew = Verdict::pass();
    for a in 0..n {
        for b in 0..n {
            symmetric.record(d.get(a, b) == d.get(b, a), &[a, b]);
            let sums_zero = d.get(a, b).iter().zip(d.get(b, a)).all(|(x, y)| (x + y).is_zero());
            skew.record(sums_zero, &[a, b]);
        }
    }
    Ok(BiderivationCheck {
        axiom_i,
        axiom_ii,
        symmetric: checks.symmetric.then_some(symmetric),
        skew: checks.skew.then_some(skew),
        condition1: checks.condition1.then_some(cond1),
    })
}

/// `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` on all basis pairs.
pub fn verify_derivation(j: &JordanAlgebra, d: &LinearMap) -> Result<Verdict> {
    let n = j.dim();
    Error::check_len("derivation source", n, d.source_dim())?;
    Error::check_len("derivation target", n, d.target_dim())?;
    let mut v = Verdict::pass();
    for a in 0..n {
        for b in 0..n {
            let lhs = d.apply(j.product(a, b))?;
            let rhs = vec_add(&j.mul_basis_right(d.image(a), b), &j.mul_basis_left(a, d.image(b)));
            v.record(lhs == rhs, &[a, b]);
        }
    }
    Ok(v)
}

/// Centroid rule and optionally condition (2) on all basis tuples.
pub fn verify_centroid(j: &JordanAlgebra, m: &JModule, g: &LinearMap, condition2: bool) -> Result<CentroidCheck> {
    check_module(j, m)?;
    let n = j.dim();
    Error::check_len("centroid map source", n, g.source_dim())?;
    Error::check_len("centroid map target", m.dim(), g.target_dim())?;
    let g_of_products: Vec<Vec<Scalar>> = (0..n * n)
        .map(|t| g.apply(j.product(t / n, t % n)))
        .collect::<Result<_>>()?;
    let gp = |a: usize, b: usize| &g_of_products[a * n + b];
    let mut centroid = Verdict::pass();
    let mut cond2 = Verdict::pass();
    for a in 0..n {
        for b in 0..n {
            centroid.record(*gp(a, b) == m.act_basis(a, g.image(b)), &[a, b]);
            if condition2 {
                for c in 0..n {
                    let lhs = m.act_basis(c, gp(a, b));
                    let rhs = vec_add(&m.act_basis(a, gp(b, c)), &m.act_basis(b, gp(a, c)));
                    cond2.record(lhs == rhs, &[a, b, c]);
                }
            }
        }
    }
    Ok(CentroidCheck {
        centroid,
        condition2: condition2.then_some(cond2),
    })
}

// ---------------------------------------------------------------------------
// the correspondence

/// `d(x, y) = g(x o y)` for a centroid map `g` satisfying condition (2).
pub fn gamma_to_delta(j: &JordanAlgebra, m: &JModule, g: &LinearMap) -> Result<BilinearMap> {
    let check = verify_centroid(j, m, g, true)?;
    if !check.centroid.holds {
        return Err(Error::Verification(format!(
            "map is not in the centroid; fails at {:?}",
            check.centroid.witness.unwrap_or_default()
        )));
    }
    if let Some(c2) = check.condition2.filter(|c| !c.holds) {
        return Err(Error::Verification(format!(
            "map fails condition (2) at {:?}",
            c2.witness.unwrap_or_default()
        )));
    }
    let n = j.dim();
    BilinearMap::from_table(
        j.field(),
        n,
        m.dim(),
        (0..n)
            .map(|a| (0..n).map(|b| g.apply(j.product(a, b))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
    )
}

/// The hypotheses under which `delta -> gamma` is defined: `J` perfect and
/// `Z_M(J) = 0`. Returns the failing one by name.
pub fn correspondence_hypotheses(j: &JordanAlgebra, m: &JModule) -> Result<()> {
    check_module(j, m)?;
    if !j.is_perfect() {
        return Err(Error::hypothesis("perfect", "J' is a proper subspace of J"));
    }
    let z = m.annihilator(&j.full_space())?;
    if !z.is_zero() {
        return Err(Error::hypothesis(
            "zero module annihilator",
            format!("Z_M(J) has dimension {}", z.dim()),
        ));
    }
    Ok(())
}

/// Recovers `g` with `d(x, y) = g(x o y)` from a symmetric condition-(1)
/// biderivation, on a perfect `J` with `Z_M(J) = 0`.
///
/// Each basis vector is written as a combination of products in two ways
/// and both readings of `g` are compared before the result is checked.
pub fn delta_to_gamma(j: &JordanAlgebra, m: &JModule, d: &BilinearMap) -> Result<LinearMap> {
    correspondence_hypotheses(j, m)?;
    check_bilinear(j, m, d)?;
    let check = verify_biderivation(j, m, d, BiderChecks::SYMMETRIC_CONDITION1)?;
    if !check.passed() {
        return Err(Error::Verification(
            "map is not a symmetric biderivation with condition (1)".into(),
        ));
    }
    let n = j.dim();
    let read = |coeffs: &[Scalar]| {
        let mut out = j.field().vector_zero(m.dim());
        for (t, c) in coeffs.iter().enumerate() {
            axpy(&mut out, c, d.get(t / n, t % n));
        }
        out
    };
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let e = j.field().unit_vector(n, i);
        let (first, second) = j
            .product_decompositions(&e)?
            .ok_or_else(|| Error::hypothesis("perfect", format!("{} is not a sum of products", j.labels()[i])))?;
        let g1 = read(&first);
        if g1 != read(&second) {
            return Err(Error::Verification(format!(
                "value at {} depends on the decomposition",
                j.labels()[i]
            )));
        }
        images.push(g1);
    }
    let g = LinearMap::from_images(j.field(), n, m.dim(), images)?;
    if gamma_to_delta(j, m, &g)? != *d {
        return Err(Error::Verification("recovered map does not reproduce the biderivation".into()));
    }
    Ok(g)
}
