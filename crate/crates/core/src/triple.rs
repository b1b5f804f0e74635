//! Triple homomorphisms `f((x o y) o z) = (f(x) o f(y)) o f(z)`: checks,
//! `Ann_f`, the induced map `delta_f(x o y) = f(x) o f(y)`, sign
//! classification of `f(x o x)` against `f(x) o f(x)`, restriction to the
//! span of `(x o y) o z`, and exhaustive enumeration over prime fields.

use rayon::prelude::*;

use crate::algebra::{JordanAlgebra, SubAlgebra};
use crate::bider::Verdict;
use crate::error::{Error, Result};
use crate::field::{axpy, vec_add, vec_is_zero, vec_sub, FieldSpec, Scalar};
use crate::linalg::Subspace;
use crate::maps::LinearMap;
use crate::module::JModule;

/// Default cap on the number of candidate maps an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "JORDAN_ENUM_BUDGET";

pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn check_shapes(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<()> {
    if j1.field() != j2.field() || f.field() != j1.field() {
        return Err(Error::Field(format!(
            "map over {} between algebras over {} and {}",
            f.field(),
            j1.field(),
            j2.field()
        )));
    }
    Error::check_len("map source", j1.dim(), f.source_dim())?;
    Error::check_len("map target", j2.dim(), f.target_dim())
}

fn negate(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| -x).collect()
}

/// `(e_i o e_j) o e_k` for all triples, indexed `(i * n + j) * n + k`.
fn triple_products(j: &JordanAlgebra) -> Vec<Vec<Scalar>> {
    let n = j.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push(j.mul_basis_right(j.product(a, b), c));
            }
        }
    }
    out
}

fn first_triple_failure(
    j2: &JordanAlgebra,
    n: usize,
    triples: &[Vec<Scalar>],
    f: &LinearMap,
) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in a..n {
            let fab = j2.mul_unchecked(f.image(a), f.image(b));
            for c in 0..n {
                let lhs = f.apply(&triples[(a * n + b) * n + c]).expect("shape checked");
                let rhs = j2.mul_unchecked(&fab, f.image(c));
                if lhs != rhs {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Checks the defining identity on all basis triples (it is trilinear, so
/// this is exact). Both sides are symmetric in the first two arguments.
pub fn is_triple_hom(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<Verdict> {
    check_shapes(j1, j2, f)?;
    let witness = first_triple_failure(j2, j1.dim(), &triple_products(j1), f);
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
    })
}

/// `f(e_i o e_j) = f(e_i) o f(e_j)` on all basis pairs.
pub fn is_homomorphism(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<Verdict> {
    check_shapes(j1, j2, f)?;
    let mut v = Verdict {
        holds: true,
        witness: None,
    };
    let n = j1.dim();
    'outer: for a in 0..n {
        for b in a..n {
            if f.apply(j1.product(a, b))? != j2.mul_unchecked(f.image(a), f.image(b)) {
                v = Verdict {
                    holds: false,
                    witness: Some(vec![a, b]),
                };
                break 'outer;
            }
        }
    }
    Ok(v)
}

fn image_span(f: &LinearMap) -> Result<Subspace> {
    Subspace::span(f.field(), f.target_dim(), f.images().iter().cloned())
}

/// `Ann_f(J2) = { a in J2 : a o f(x) = 0 for all x }`.
pub fn ann_f(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<Subspace> {
    check_shapes(j1, j2, f)?;
    JModule::regular(j2).annihilator(&image_span(f)?)
}

/// The map `delta_f` read off from two decompositions of every basis
/// vector as a sum of products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaF {
    pub map: LinearMap,
    /// The same map built from the second decomposition.
    pub alternative: LinearMap,
    /// Whether the two decompositions differed for some basis vector.
    pub decompositions_differ: bool,
}

/// Builds `delta_f(sum x_i o y_i) = sum f(x_i) o f(y_i)`; requires a perfect
/// source and `Ann_f = 0`.
pub fn delta_f(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<DeltaF> {
    check_shapes(j1, j2, f)?;
    if !j1.is_perfect() {
        return Err(Error::hypothesis("perfect source", "J1' is a proper subspace of J1"));
    }
    let ann = ann_f(j1, j2, f)?;
    if !ann.is_zero() {
        return Err(Error::hypothesis(
            "zero Ann_f",
            format!("Ann_f has dimension {}", ann.dim()),
        ));
    }
    let n = j1.dim();
    let pair_products: Vec<Vec<Scalar>> = (0..n * n)
        .map(|t| j2.mul_unchecked(f.image(t / n), f.image(t % n)))
        .collect();
    let read = |coeffs: &[Scalar]| {
        let mut out = j2.field().vector_zero(j2.dim());
        for (c, v) in coeffs.iter().zip(&pair_products) {
            axpy(&mut out, c, v);
        }
        out
    };
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    let mut differ = false;
    for i in 0..n {
        let e = j1.field().unit_vector(n, i);
        let (c1, c2) = j1.product_decompositions(&e)?.ok_or_else(|| {
            Error::hypothesis("perfect source", format!("{} is not a sum of products", j1.labels()[i]))
        })?;
        differ |= c1 != c2;
        first.push(read(&c1));
        second.push(read(&c2));
    }
    let map = LinearMap::from_images(j1.field(), n, j2.dim(), first)?;
    let alternative = LinearMap::from_images(j1.field(), n, j2.dim(), second)?;
    if map != alternative {
        return Err(Error::Verification(
            "delta_f depends on the chosen decomposition".into(),
        ));
    }
    Ok(DeltaF {
        map,
        alternative,
        decompositions_differ: differ,
    })
}

/// Which of `f(x o x) = f(x) o f(x)` (plus) and `f(x o x) = -f(x) o f(x)`
/// (minus) hold identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignClass {
    Plus,
    Minus,
    /// Both: `f(x o x)` and `f(x) o f(x)` vanish identically.
    Zero,
    /// Neither; the witnesses are vectors where each identity fails.
    Mixed {
        plus_violation: Vec<Scalar>,
        minus_violation: Vec<Scalar>,
    },
}

impl SignClass {
    pub fn name(&self) -> &'static str {
        match self {
            SignClass::Plus => "Plus",
            SignClass::Minus => "Minus",
            SignClass::Zero => "Zero",
            SignClass::Mixed { .. } => "Mixed",
        }
    }

    pub fn is_plus_or_zero(&self) -> bool {
        matches!(self, SignClass::Plus | SignClass::Zero)
    }
}

/// Sign relation at a single vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointSign {
    Plus,
    Minus,
    Both,
    Neither,
}

impl PointSign {
    pub fn name(self) -> &'static str {
        match self {
            PointSign::Plus => "Plus",
            PointSign::Minus => "Minus",
            PointSign::Both => "Both",
            PointSign::Neither => "Neither",
        }
    }
}

/// `f(x o x)` and `f(x) o f(x)`.
fn square_pair(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap, x: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let fx = f.apply(x).expect("shape checked");
    let fx2 = f.apply(&j1.mul_unchecked(x, x)).expect("shape checked");
    (fx2, j2.mul_unchecked(&fx, &fx))
}

fn point_sign(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap, x: &[Scalar]) -> PointSign {
    let (a, b) = square_pair(j1, j2, f, x);
    let plus = a == b;
    let minus = a == negate(&b);
    match (plus, minus) {
        (true, true) => PointSign::Both,
        (true, false) => PointSign::Plus,
        (false, true) => PointSign::Minus,
        (false, false) => PointSign::Neither,
    }
}

/// Basis vectors followed by all sums `e_i + e_j`, `i < j`.
fn probe_vectors(field: FieldSpec, n: usize) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = (0..n).map(|i| field.unit_vector(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(vec_add(&out[i], &out[j]));
        }
    }
    out
}

/// Classifies `f` by which quadratic identity vanishes.
///
/// `f(x o x) - s f(x) o f(x)` vanishes identically iff its values at the
/// basis vectors and its polarizations at basis pairs vanish; with
/// `char != 2` that is the same as vanishing at every probe vector
/// `e_i` and `e_i + e_j`, which is also where the witnesses come from.
pub fn sign_classify(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<SignClass> {
    check_shapes(j1, j2, f)?;
    let mut plus_violation = None;
    let mut minus_violation = None;
    for x in probe_vectors(j1.field(), j1.dim()) {
        let s = point_sign(j1, j2, f, &x);
        if plus_violation.is_none() && matches!(s, PointSign::Minus | PointSign::Neither) {
            plus_violation = Some(x.clone());
        }
        if minus_violation.is_none() && matches!(s, PointSign::Plus | PointSign::Neither) {
            minus_violation = Some(x);
        }
    }
    Ok(match (plus_violation, minus_violation) {
        (None, None) => SignClass::Zero,
        (None, Some(_)) => SignClass::Plus,
        (Some(_), None) => SignClass::Minus,
        (Some(plus_violation), Some(minus_violation)) => SignClass::Mixed {
            plus_violation,
            minus_violation,
        },
    })
}

/// Sign relation at each basis vector.
pub fn basis_signs(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<Vec<PointSign>> {
    check_shapes(j1, j2, f)?;
    let n = j1.dim();
    Ok((0..n)
        .map(|i| point_sign(j1, j2, f, &j1.field().unit_vector(n, i)))
        .collect())
}

/// All distinct orderings of a 4-element multiset.
fn distinct_permutations(m: [usize; 4]) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    let mut seen = [false; 4];
                    if idx.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) {
                        let p = [m[a], m[b], m[c], m[d]];
                        if !out.contains(&p) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Checks `f(x o x) o f(x o x) = (f(x) o f(x)) o (f(x) o f(x))` as a formal
/// identity: the coefficient of every degree-4 monomial is compared. The
/// witness is the sorted index multiset of the first failing monomial.
pub fn squared_identity(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<Verdict> {
    check_shapes(j1, j2, f)?;
    let n = j1.dim();
    let fa: Vec<Vec<Scalar>> = (0..n * n).map(|t| f.apply(j1.product(t / n, t % n))).collect::<Result<_>>()?;
    let fb: Vec<Vec<Scalar>> = (0..n * n)
        .map(|t| j2.mul_unchecked(f.image(t / n), f.image(t % n)))
        .collect();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for d in c..n {
                    let mut coeff = j2.field().vector_zero(j2.dim());
                    for [p, q, r, s] in distinct_permutations([a, b, c, d]) {
                        let lhs = j2.mul_unchecked(&fa[p * n + q], &fa[r * n + s]);
                        let rhs = j2.mul_unchecked(&fb[p * n + q], &fb[r * n + s]);
                        coeff = vec_add(&coeff, &vec_sub(&lhs, &rhs));
                    }
                    if !vec_is_zero(&coeff) {
                        return Ok(Verdict {
                            holds: false,
                            witness: Some(vec![a, b, c, d]),
                        });
                    }
                }
            }
        }
    }
    Ok(Verdict {
        holds: true,
        witness: None,
    })
}

fn require_triple(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<()> {
    let v = is_triple_hom(j1, j2, f)?;
    if v.holds {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "map is not a triple homomorphism; fails at {:?}",
            v.witness.unwrap_or_default()
        )))
    }
}

/// `f` restricted to the spans of `(x o y) o z` in source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub source: SubAlgebra,
    pub target: SubAlgebra,
    /// In the echelon coordinates of the two spans.
    pub map: LinearMap,
}

pub fn restrict_second_derived(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<Restriction> {
    require_triple(j1, j2, f)?;
    let source = j1.subalgebra(&j1.second_derived())?;
    let target = j2.subalgebra(&j2.second_derived())?;
    let images = source
        .space
        .basis_vectors()
        .iter()
        .enumerate()
        .map(|(p, b)| {
            target.space.coordinates(&f.apply(b)?)?.ok_or_else(|| {
                Error::Verification(format!(
                    "image of basis vector {} of the source span leaves the target span",
                    p + 1
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = LinearMap::from_images(j1.field(), source.space.dim(), target.space.dim(), images)?;
    Ok(Restriction { source, target, map })
}

/// Whether a triple homomorphism kills the span of `(x o y) o z`.
pub fn is_special_triple_hom(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<bool> {
    require_triple(j1, j2, f)?;
    for b in j1.second_derived().basis_vectors() {
        if !vec_is_zero(&f.apply(&b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every linear map `J1 -> J2` over `GF(p)` that is a triple homomorphism,
/// in lexicographic order of the row-major image coordinates.
pub fn enumerate_triple_homs(j1: &JordanAlgebra, j2: &JordanAlgebra, budget: u64) -> Result<Vec<LinearMap>> {
    let field = j1.field();
    if field != j2.field() {
        return Err(Error::Field(format!("algebras over {} and {}", field, j2.field())));
    }
    let p = field
        .modulus()
        .ok_or_else(|| Error::Input("enumeration needs a prime field".into()))?;
    let (n1, n2) = (j1.dim(), j2.dim());
    let entries = (n1 * n2) as u32;
    let candidates = (p as u128).checked_pow(entries);
    let count = match candidates {
        Some(c) if c <= budget as u128 => c as u64,
        _ => {
            return Err(Error::Budget {
                candidates: format!("{p}^{entries}"),
                budget,
            })
        }
    };
    let triples = triple_products(j1);
    let digits: Vec<Scalar> = (0..p).map(|d| field.from_i64(d as i64)).collect();
    let decode = |mut index: u64| {
        let mut flat = vec![field.zero(); n1 * n2];
        for slot in flat.iter_mut().rev() {
            *slot = digits[(index % p) as usize].clone();
            index /= p;
        }
        LinearMap::from_flat(field, n1, n2, &flat).expect("shape")
    };
    Ok((0..count)
        .into_par_iter()
        .filter_map(|i| {
            let f = decode(i);
            first_triple_failure(j2, n1, &triples, &f).is_none().then_some(f)
        })
        .collect())
}

/// Everything the engine knows about one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleHomReport {
    pub is_triple: Verdict,
    pub ann_f: Subspace,
    pub source_perfect: bool,
    pub sign: SignClass,
    pub basis_signs: Vec<PointSign>,
    pub is_hom: Verdict,
    /// `None` when the map is not a triple homomorphism.
    pub special: Option<bool>,
    pub squared_identity: Verdict,
}

impl TripleHomReport {
    pub fn ann_zero(&self) -> bool {
        self.ann_f.is_zero()
    }

    /// Triple homomorphism from a perfect source with `Ann_f = 0`.
    pub fn hypotheses_hold(&self) -> bool {
        self.is_triple.holds && self.source_perfect && self.ann_zero()
    }

    /// `is_hom` agrees with the sign class being Plus or Zero.
    pub fn sign_consistent(&self) -> bool {
        self.is_hom.holds == self.sign.is_plus_or_zero()
    }
}

pub fn analyze(j1: &JordanAlgebra, j2: &JordanAlgebra, f: &LinearMap) -> Result<TripleHomReport> {
    let is_triple = is_triple_hom(j1, j2, f)?;
    let special = if is_triple.holds {
        Some(is_special_triple_hom(j1, j2, f)?)
    } else {
        None
    };
    Ok(TripleHomReport {
        ann_f: ann_f(j1, j2, f)?,
        source_perfect: j1.is_perfect(),
        sign: sign_classify(j1, j2, f)?,
        basis_signs: basis_signs(j1, j2, f)?,
        is_hom: is_homomorphism(j1, j2, f)?,
        special,
        squared_identity: squared_identity(j1, j2, f)?,
        is_triple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn spin11(f: FieldSpec) -> JordanAlgebra {
        catalog::diagonal_spin(f, &[f.one(), f.one()]).unwrap()
    }

    #[test]
    fn sign_flip_on_spin_factor() {
        let j = spin11(q());
        let f = catalog::spin_sign_flip(&j);
        let r = analyze(&j, &j, &f).unwrap();
        assert!(r.is_triple.holds);
        assert!(r.ann_zero());
        assert_eq!(r.sign, SignClass::Minus);
        assert!(!r.is_hom.holds);
        assert!(r.sign_consistent());
        assert!(r.squared_identity.holds);
        assert_eq!(r.special, Some(false));
        assert_eq!(r.basis_signs, vec![PointSign::Minus; 3]);
    }

    #[test]
    fn identity_and_zero_maps() {
        for j in [spin11(q()), catalog::matrix_jordan(q(), 2).unwrap(), catalog::row_ideal(q())] {
            let n = j.dim();
            let id = LinearMap::identity(q(), n);
            let r = analyze(&j, &j, &id).unwrap();
            assert!(r.is_triple.holds && r.is_hom.holds);
            assert_eq!(r.sign, SignClass::Plus);
            assert_eq!(r.ann_f, j.center());
            let zero = LinearMap::zero(q(), n, n);
            let r = analyze(&j, &j, &zero).unwrap();
            assert!(r.is_triple.holds && r.is_hom.holds);
            assert_eq!(r.sign, SignClass::Zero);
            assert!(r.ann_f.is_full());
            assert_eq!(r.special, Some(true));
        }
    }

    #[test]
    fn delta_f_examples() {
        let j = spin11(q());
        let id = LinearMap::identity(q(), 3);
        assert_eq!(delta_f(&j, &j, &id).unwrap().map, id);
        let flip = catalog::spin_sign_flip(&j);
        let d = delta_f(&j, &j, &flip).unwrap();
        assert!(d.decompositions_differ);
        // 1 = 1 o 1 maps to f(1) o f(1) = 1
        assert_eq!(d.map.image(0), &q().unit_vector(3, 0)[..]);
        for a in 0..3 {
            for b in 0..3 {
                let lhs = d.map.apply(j.product(a, b)).unwrap();
                let rhs = j.mul_unchecked(flip.image(a), flip.image(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn delta_f_hypotheses() {
        let j = catalog::sum_product(q(), catalog::SumProductVariant::OffDiagonal);
        let id = LinearMap::identity(q(), 3);
        assert!(matches!(
            delta_f(&j, &j, &id),
            Err(Error::Hypothesis { name: "perfect source", .. })
        ));
        let s = spin11(q());
        assert!(matches!(
            delta_f(&s, &s, &LinearMap::zero(q(), 3, 3)),
            Err(Error::Hypothesis { name: "zero Ann_f", .. })
        ));
    }

    #[test]
    fn swap_on_two_dim_spin_factor_is_mixed() {
        let f = q();
        let j = catalog::diagonal_spin(f, &[f.one()]).unwrap();
        let swap = LinearMap::from_i64(f, &[&[0, 1], &[1, 0]]);
        let r = analyze(&j, &j, &swap).unwrap();
        assert!(r.hypotheses_hold());
        assert!(r.squared_identity.holds);
        assert!(matches!(r.sign, SignClass::Mixed { .. }));
        assert!(!r.is_hom.holds);
        assert!(r.sign_consistent());
    }

    #[test]
    fn squared_identity_can_fail() {
        let f = q();
        let j = catalog::diagonal_spin(f, &[f.one()]).unwrap();
        // f(1) = 1, f(u) = 0 is not a triple hom and breaks the squared identity at x = 1 + u
        let g = LinearMap::from_i64(f, &[&[1, 1], &[0, 0]]);
        assert!(!is_triple_hom(&j, &j, &g).unwrap().holds);
        assert!(!squared_identity(&j, &j, &g).unwrap().holds);
    }

    #[test]
    fn restriction_cases() {
        let j = spin11(q());
        let flip = catalog::spin_sign_flip(&j);
        let r = restrict_second_derived(&j, &j, &flip).unwrap();
        assert!(r.source.space.is_full());
        assert_eq!(r.map, flip);
        let z = JordanAlgebra::zero_product(q(), 2);
        let id = LinearMap::identity(q(), 2);
        assert!(is_special_triple_hom(&z, &z, &id).unwrap());
        assert_eq!(restrict_second_derived(&z, &z, &id).unwrap().map.source_dim(), 0);
        let bad = LinearMap::from_i64(q(), &[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(restrict_second_derived(&j, &j, &bad).is_err());
    }

    #[test]
    fn enumerate_idempotent_line() {
        let f = FieldSpec::prime(5).unwrap();
        let line = catalog::matrix_jordan(f, 1).unwrap();
        let maps = enumerate_triple_homs(&line, &line, DEFAULT_BUDGET).unwrap();
        let scalars: Vec<Scalar> = maps.iter().map(|m| m.image(0)[0].clone()).collect();
        assert_eq!(scalars, [f.from_i64(0), f.from_i64(1), f.from_i64(4)]);
    }

    #[test]
    fn enumerate_into_zero_algebra() {
        let f = FieldSpec::prime(5).unwrap();
        let line = catalog::matrix_jordan(f, 1).unwrap();
        let zero = JordanAlgebra::zero_algebra(f);
        let maps = enumerate_triple_homs(&line, &zero, DEFAULT_BUDGET).unwrap();
        assert_eq!(maps, vec![LinearMap::zero(f, 1, 0)]);
    }

    #[test]
    fn enumerate_contains_sign_flip() {
        let f = FieldSpec::prime(5).unwrap();
        let j = catalog::diagonal_spin(f, &[f.one()]).unwrap();
        let maps = enumerate_triple_homs(&j, &j, DEFAULT_BUDGET).unwrap();
        assert!(maps.contains(&catalog::spin_sign_flip(&j)));
        let mut sorted = maps.clone();
        sorted.sort_by_key(|m| m.flatten().iter().map(|x| x.to_string().parse::<u64>().unwrap()).collect::<Vec<_>>());
        assert_eq!(sorted, maps);
    }

    #[test]
    fn enumeration_respects_budget_and_field() {
        let f = FieldSpec::prime(5).unwrap();
        let j = catalog::matrix_jordan(f, 2).unwrap();
        assert!(matches!(enumerate_triple_homs(&j, &j, 1000), Err(Error::Budget { .. })));
        let jq = catalog::matrix_jordan(q(), 1).unwrap();
        assert!(enumerate_triple_homs(&jq, &jq, 10).is_err());
    }
}
