//! Minkowski linear functionals on generalized permutahedra.
//!
//! A Minkowski linear functional `φ` is determined by the numbers
//! `φ(Δ_I)` and acts on `Σ y_I Δ_I` as `Σ y_I φ(Δ_I)`. The positive,
//! translation-invariant ones form the cone generated by the ray functionals
//! `v_E^T`; the symmetric ones form the simplicial cone spanned by
//! `f_1, …, f_{d−1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::genperm::{pairs, GenPermRep};
use crate::linalg::{self, binomial, Matrix};
use crate::lp::{self, Feasibility};
use crate::setfun::{check_dimension, harmonic_table, SetFunction, SubsetMask};
use crate::Rational;

/// A Minkowski linear functional stored as its values `φ(Δ_I)` for all
/// nonempty `I` (the value slot at `∅` is always 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional {
    values: SetFunction,
}

impl LinearFunctional {
    pub fn new(values: SetFunction) -> Result<Self> {
        values.require_empty_zero()?;
        Ok(LinearFunctional { values })
    }

    pub fn zero(d: usize) -> Result<Self> {
        Ok(LinearFunctional {
            values: SetFunction::zeros(d)?,
        })
    }

    pub fn d(&self) -> usize {
        self.values.d()
    }

    pub fn values(&self) -> &SetFunction {
        &self.values
    }

    pub fn get(&self, set: SubsetMask) -> &Rational {
        self.values.get(set)
    }

    pub fn is_translation_invariant(&self) -> bool {
        (1..=self.d()).all(|i| self.get(SubsetMask::singleton(i)).is_zero())
    }

    fn require_translation_invariant(&self) -> Result<()> {
        match (1..=self.d()).find(|&i| !self.get(SubsetMask::singleton(i)).is_zero()) {
            Some(i) => Err(Error::NotTranslationInvariant(i)),
            None => Ok(()),
        }
    }
}

impl std::ops::Add for &LinearFunctional {
    type Output = LinearFunctional;
    fn add(self, rhs: &LinearFunctional) -> LinearFunctional {
        LinearFunctional {
            values: &self.values + &rhs.values,
        }
    }
}

/// `φ(Σ_I y_I Δ_I) = Σ_I y_I φ(Δ_I)`.
pub fn eval_functional(phi: &LinearFunctional, rep: &GenPermRep) -> Result<Rational> {
    if phi.d() != rep.d() {
        return Err(Error::DimensionMismatch {
            expected: phi.d(),
            found: rep.d(),
        });
    }
    let mut acc = Rational::zero();
    for (set, y) in rep.y().iter() {
        if !y.is_zero() {
            acc += y * phi.get(set);
        }
    }
    Ok(acc)
}

fn check_ray(d: usize, e: SubsetMask, t: SubsetMask) -> Result<()> {
    check_dimension(d)?;
    if e.len() != 2 {
        return Err(Error::InvalidRay(format!("|E| = {} for E = {e}", e.len())));
    }
    if !t.fits(d) {
        return Err(Error::SubsetOutOfRange { bits: t.bits(), d });
    }
    if !e.is_subset_of(t) {
        return Err(Error::InvalidRay(format!("E = {e} is not contained in T = {t}")));
    }
    Ok(())
}

/// `v_E^T(Δ_I) = 1` if `E ⊆ I ⊆ T`, else 0.
pub fn ray_functional(d: usize, e: SubsetMask, t: SubsetMask) -> Result<LinearFunctional> {
    check_ray(d, e, t)?;
    let values = SetFunction::from_fn(d, |i| {
        if e.is_subset_of(i) && i.is_subset_of(t) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })?;
    Ok(LinearFunctional { values })
}

/// A direction `u` whose maximal face on any generalized permutahedron `P`
/// has normalized length `v_E^T(P)`.
///
/// `u` is 0 on `E`, takes the values `d, d+1, …` (increasing in the element)
/// outside `T`, and `−1, −2, …` on `T ∖ E`, so that
/// `min_{k∉T} u_k > u_i = u_j > max_{k∈T∖E} u_k` and the remaining
/// coordinates are pairwise distinct.
pub fn compatible_direction(d: usize, e: SubsetMask, t: SubsetMask) -> Result<Vec<i64>> {
    check_ray(d, e, t)?;
    if d < 3 {
        return Err(Error::NoCompatibleDirection {
            e: e.elements(),
            t: t.elements(),
            d,
        });
    }
    let mut u = vec![0i64; d];
    let mut above = d as i64;
    let mut below = -1i64;
    for k in 1..=d {
        if e.contains(k) {
            continue;
        }
        if t.contains(k) {
            u[k - 1] = below;
            below -= 1;
        } else {
            u[k - 1] = above;
            above += 1;
        }
    }
    Ok(u)
}

/// All `(E, T)` with `|E| = 2`, `E ⊆ T ⊆ [d]`: `E` in lexicographic order,
/// then `T` in bit order.
pub fn ray_indices(d: usize) -> Vec<(SubsetMask, SubsetMask)> {
    let full = SubsetMask::full(d);
    pairs(d)
        .flat_map(|e| full.difference(e).subsets().map(move |rest| (e, e.union(rest))))
        .collect()
}

/// Largest `d` accepted for symmetric functionals.
pub const MAX_SYMMETRIC_D: usize = 1000;

/// A symmetric, translation-invariant functional, given by
/// `(φ(Δ_2), …, φ(Δ_d))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricFunctional {
    d: usize,
    values: Vec<Rational>,
}

impl SymmetricFunctional {
    pub fn new(d: usize, values: Vec<Rational>) -> Result<Self> {
        check_basis_dimension(d)?;
        if d > MAX_SYMMETRIC_D {
            return Err(Error::DimensionOutOfRange {
                d,
                max: MAX_SYMMETRIC_D,
            });
        }
        if values.len() != d - 1 {
            return Err(Error::Invalid(format!(
                "a symmetric functional on d = {d} has {} values, found {}",
                d - 1,
                values.len()
            )));
        }
        Ok(SymmetricFunctional { d, values })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Entry `i − 1` is `φ(Δ_{i+1})`.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// The functional on all `Δ_I`: `values[|I| − 2]` for `|I| ≥ 2`, zero on
    /// singletons. Needs `d` small enough for a dense set function.
    pub fn to_linear(&self) -> Result<LinearFunctional> {
        let values = SetFunction::from_fn(self.d, |s| {
            if s.len() >= 2 {
                self.values[s.len() - 2].clone()
            } else {
                Rational::zero()
            }
        })?;
        Ok(LinearFunctional { values })
    }
}

fn check_basis_dimension(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::ParameterOutOfRange(format!("need d >= 2, found d = {d}")));
    }
    Ok(())
}

/// `a_{ik} = C(i+1, 2) · C(d−i−1, k−i)` for `1 ≤ i, k ≤ d−1`.
fn basis_entry(d: usize, i: usize, k: usize) -> BigInt {
    let (d, i, k) = (d as i64, i as i64, k as i64);
    binomial(i + 1, 2) * binomial(d - i - 1, k - i)
}

/// `(f_k)(Δ_{i+1}) = C(i+1, 2) · C(d−i−1, k−i)`.
pub fn f_basis(d: usize, k: usize) -> Result<SymmetricFunctional> {
    check_basis_dimension(d)?;
    if !(1..d).contains(&k) {
        return Err(Error::IndexOutOfRange {
            index: k,
            lo: 1,
            hi: d - 1,
        });
    }
    let values = (1..d)
        .map(|i| Rational::from_integer(basis_entry(d, i, k)))
        .collect();
    SymmetricFunctional::new(d, values)
}

/// A `(d−1) × (d−1)` matrix, row-major, rows and columns indexed `1..d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMatrix {
    d: usize,
    entries: Matrix,
}

impl BasisMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row - 1][col - 1]
    }

    pub fn mul(&self, other: &BasisMatrix) -> BasisMatrix {
        assert_eq!(self.d, other.d);
        BasisMatrix {
            d: self.d,
            entries: linalg::mul(&self.entries, &other.entries),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        linalg::mul_vec(&self.entries, v)
    }

    pub fn is_identity(&self) -> bool {
        self.entries == linalg::identity(self.d - 1)
    }
}

/// `A = (a_{ik})`, whose columns are `f_1, …, f_{d−1}`.
pub fn basis_matrix(d: usize) -> Result<BasisMatrix> {
    check_basis_dimension(d)?;
    let entries = (1..d)
        .map(|i| {
            (1..d)
                .map(|k| Rational::from_integer(basis_entry(d, i, k)))
                .collect()
        })
        .collect();
    Ok(BasisMatrix { d, entries })
}

/// `B = A⁻¹` in closed form, `b_{kj} = (−1)^{k+j} / C(j+1, 2) · C(d−k−1, j−k)`.
pub fn inverse_basis_matrix(d: usize) -> Result<BasisMatrix> {
    check_basis_dimension(d)?;
    let pascal = linalg::pascal_rows(d);
    let entries: Matrix = (1..d)
        .map(|k| {
            (1..d)
                .map(|j| match inverse_entry(&pascal, d, k, j) {
                    Some(signed) => Rational::new(signed, pair_count(j)),
                    None => Rational::zero(),
                })
                .collect()
        })
        .collect();
    let b = BasisMatrix { d, entries };
    debug_assert!(d > 12 || basis_matrix(d)?.mul(&b).is_identity());
    Ok(b)
}

/// `C(j+1, 2)`, the denominator of column `j` of `B`.
fn pair_count(j: usize) -> BigInt {
    BigInt::from(j * (j + 1) / 2)
}

/// The signed numerator `(−1)^{k+j} C(d−k−1, j−k)` of `b_{kj}`, if nonzero.
fn inverse_entry(pascal: &[Vec<BigInt>], d: usize, k: usize, j: usize) -> Option<BigInt> {
    let magnitude = pascal[d - k - 1].get(j.checked_sub(k)?)?.clone();
    Some(if (k + j) % 2 == 1 { -magnitude } else { magnitude })
}

/// Coordinates `c` with `φ = Σ_k c_k f_k`, i.e. `c = B · φ`. All `c_k ≥ 0`
/// exactly when `φ` is positive.
pub fn decompose_symmetric(phi: &SymmetricFunctional) -> Result<Vec<Rational>> {
    if phi.d() < 2 {
        return Ok(Vec::new());
    }
    Ok(inverse_times(phi.d(), phi.values()))
}

/// `Σ_k c_k f_k` as a symmetric functional.
pub fn combine_symmetric(d: usize, c: &[Rational]) -> Result<SymmetricFunctional> {
    check_basis_dimension(d)?;
    if c.len() != d - 1 {
        return Err(Error::DimensionMismatch {
            expected: d - 1,
            found: c.len(),
        });
    }
    SymmetricFunctional::new(d, basis_matrix(d)?.mul_vec(c))
}

/// The functional `Δ_{i+1} ↦ h_i`, which agrees with the Ehrhart linear
/// coefficient on lattice generalized permutahedra.
pub fn ehrhart_linear_functional(d: usize) -> Result<SymmetricFunctional> {
    check_basis_dimension(d)?;
    let h = harmonic_table(d - 1);
    SymmetricFunctional::new(d, h[1..].to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub d: usize,
    /// `c = B · h`, the coordinates of the Ehrhart functional in the `f_k`.
    pub c: Vec<Rational>,
    pub all_nonnegative: bool,
    /// `Σ_{j=k}^{d−1} (−1)^{k+j} C(d−k−1, j−k) t^j = t^k (1−t)^{d−k−1}`
    /// coefficientwise, for every `k`.
    pub q_identity_verified: bool,
}

/// Exact nonnegativity certificate for the Ehrhart linear-coefficient
/// functional in dimension `d`.
pub fn positivity_certificate(d: usize) -> Result<PositivityCertificate> {
    check_basis_dimension(d)?;
    let h = ehrhart_linear_functional(d)?;
    let c = inverse_times(d, h.values());
    let all_nonnegative = c.iter().all(|v| !v.is_negative());
    Ok(PositivityCertificate {
        d,
        c,
        all_nonnegative,
        q_identity_verified: q_identity_holds(d),
    })
}

/// `B · v` without materializing `B`: the column factors `v_j / C(j+1, 2)`
/// are brought to a common denominator so each row is an integer sum.
fn inverse_times(d: usize, v: &[Rational]) -> Vec<Rational> {
    let scaled: Vec<Rational> = v
        .iter()
        .enumerate()
        .map(|(idx, x)| x / Rational::from_integer(pair_count(idx + 1)))
        .collect();
    let denom = scaled.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let numerators: Vec<BigInt> = scaled.iter().map(|x| x.numer() * (&denom / x.denom())).collect();
    let pascal = linalg::pascal_rows(d);
    (1..d)
        .map(|k| {
            let mut acc = BigInt::zero();
            for j in k..d {
                if let Some(b) = inverse_entry(&pascal, d, k, j) {
                    acc += b * &numerators[j - 1];
                }
            }
            Rational::new(acc, denom.clone())
        })
        .collect()
}

/// Compares the signed-binomial coefficients of `q_k'` against
/// `t^k (1−t)^{d−k−1}` expanded by repeated multiplication with `(1 − t)`.
fn q_identity_holds(d: usize) -> bool {
    // powers[n] = coefficients of (1 − t)^n, constant term first
    let mut powers: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..d.saturating_sub(1) {
        let prev = &powers[n - 1];
        let mut next = vec![BigInt::zero(); prev.len() + 1];
        for (idx, coef) in prev.iter().enumerate() {
            next[idx] += coef;
            next[idx + 1] -= coef;
        }
        powers.push(next);
    }
    (1..d).all(|k| {
        let n = d - k - 1;
        let expansion = &powers[n];
        // C(n, m) by the multiplicative recurrence, signed by (−1)^{k+j}
        let mut magnitude = BigInt::one();
        (0..d).all(|j| {
            if j < k {
                return true;
            }
            let m = j - k;
            if m > 0 {
                if m > n {
                    magnitude = BigInt::zero();
                } else {
                    magnitude = magnitude.clone() * BigInt::from(n - m + 1) / BigInt::from(m);
                }
            }
            let from_binomials = if (k + j) % 2 == 1 {
                -magnitude.clone()
            } else {
                magnitude.clone()
            };
            let shifted = expansion.get(m).cloned().unwrap_or_default();
            from_binomials == shifted
        })
    })
}

/// Coefficients `c_E^T` of a functional written over ray functionals.
pub type RayCoefficients = BTreeMap<(SubsetMask, SubsetMask), Rational>;

/// `Σ c_E^T v_E^T`.
pub fn combine_rays(d: usize, coefficients: &RayCoefficients) -> Result<LinearFunctional> {
    let mut values = SetFunction::zeros(d)?;
    for (&(e, t), c) in coefficients {
        check_ray(d, e, t)?;
        if c.is_zero() {
            continue;
        }
        for rest in t.difference(e).subsets() {
            let i = e.union(rest);
            let v = values.get(i) + c;
            values.set(i, v);
        }
    }
    Ok(LinearFunctional { values })
}

/// The two smallest elements of `t` (`|t| ≥ 2`).
fn leading_pair(t: SubsetMask) -> SubsetMask {
    let low = t.bits() & t.bits().wrapping_neg();
    let rest = t.bits() & !low;
    SubsetMask::from_bits(low | (rest & rest.wrapping_neg()))
}

/// Unique signed coordinates of a translation-invariant `φ` in the basis
/// `{ v_{E(T)}^T : |T| ≥ 2 }`, where `E(T)` is the pair of the two smallest
/// elements of `T`.
///
/// In that basis `φ(Δ_I) = Σ_{T ⊇ I, E(T) ⊆ I} c^T`, which is unitriangular
/// when `T` is processed by decreasing cardinality.
pub fn decompose_in_ray_basis(phi: &LinearFunctional) -> Result<RayCoefficients> {
    phi.require_translation_invariant()?;
    let d = phi.d();
    let mut by_size: Vec<SubsetMask> = SubsetMask::all(d).filter(|s| s.len() >= 2).collect();
    by_size.sort_by(|a, b| b.len().cmp(&a.len()).then(a.lex_cmp(*b)));

    let mut coeff = SetFunction::zeros(d)?;
    for &t in &by_size {
        let e = leading_pair(t);
        let complement = SubsetMask::full(d).difference(t);
        let mut acc = phi.get(t).clone();
        for extra in complement.subsets().skip(1) {
            let bigger = t.union(extra);
            if leading_pair(bigger) == e {
                acc -= coeff.get(bigger);
            }
        }
        coeff.set(t, acc);
    }
    Ok(by_size
        .into_iter()
        .filter(|t| !coeff.get(*t).is_zero())
        .map(|t| ((leading_pair(t), t), coeff.get(t).clone()))
        .collect())
}

/// Largest `d` accepted by [`decompose_positive`].
pub const MAX_POSITIVE_D: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positivity {
    /// `φ = Σ c_E^T v_E^T` with every listed coefficient positive.
    Positive(RayCoefficients),
    /// A valid generalized permutahedron on which `φ` is negative.
    NotPositive { witness: GenPermRep, value: Rational },
}

impl Positivity {
    pub fn is_positive(&self) -> bool {
        matches!(self, Positivity::Positive(_))
    }
}

/// Decides whether a translation-invariant `φ` lies in the cone spanned by
/// the rays `v_E^T`.
///
/// The rays outnumber the dimension, so the representation is found by an
/// exact feasibility LP. When none exists the Farkas multipliers are
/// coefficients `y` with every interval sum `Σ_{E⊆I⊆T} y_I ≥ 0` and
/// `Σ y_I φ(Δ_I) < 0`: a generalized permutahedron certifying that `φ` is not
/// positive.
pub fn decompose_positive(phi: &LinearFunctional) -> Result<Positivity> {
    phi.require_translation_invariant()?;
    let d = phi.d();
    if d > MAX_POSITIVE_D {
        return Err(Error::TooLarge(format!(
            "ray cone LP for d = {d} (limit {MAX_POSITIVE_D})"
        )));
    }
    let rows: Vec<SubsetMask> = SubsetMask::all(d).filter(|s| s.len() >= 2).collect();
    let rays = ray_indices(d);
    if rows.is_empty() {
        return Ok(Positivity::Positive(RayCoefficients::new()));
    }
    let a: Matrix = rows
        .iter()
        .map(|&i| {
            rays.iter()
                .map(|&(e, t)| {
                    if e.is_subset_of(i) && i.is_subset_of(t) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let b: Vec<Rational> = rows.iter().map(|&i| phi.get(i).clone()).collect();

    match lp::nonnegative_solution(&a, &b) {
        Feasibility::Feasible(x) => Ok(Positivity::Positive(
            rays.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect(),
        )),
        Feasibility::Infeasible(y) => {
            let scale = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let scale = Rational::from_integer(scale);
            let witness = GenPermRep::from_entries(d, rows.into_iter().zip(y.iter().map(|v| v * &scale)))?;
            let value = eval_functional(phi, &witness)?;
            if !value.is_negative() || !crate::genperm::validate_y(&witness).is_valid() {
                return Err(Error::Inconsistent(format!(
                    "Farkas witness {witness:?} does not separate φ (value {value})"
                )));
            }
            Ok(Positivity::NotPositive { witness, value })
        }
    }
}
