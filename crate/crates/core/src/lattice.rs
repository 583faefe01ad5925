//! Lattice points of generalized permutahedra: the signed-coefficient
//! counting formula, Ehrhart polynomials by interpolation, and the linear
//! Ehrhart coefficient `E_1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genperm::{count_lattice_points, dimension, GenPermRep};
use crate::setfun::{harmonic_table, SetFunction, SubsetMask};
use crate::Rational;

/// `C(x, k) = x (x−1) ⋯ (x−k+1) / k!`, for any rational `x`.
pub fn generalized_binomial(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x - Rational::from_integer(i.into());
        acc /= Rational::from_integer((i + 1).into());
    }
    acc
}

/// Nonnegative integer weights on subsets with `Σ a_I = d − 1` and
/// `|⋃_{J∈M} J| ≥ 1 + Σ_{J∈M} a_J` for every family `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AVector {
    d: usize,
    weights: Vec<(SubsetMask, u32)>,
}

impl AVector {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Subsets with positive weight, in the order they were chosen.
    pub fn weights(&self) -> &[(SubsetMask, u32)] {
        &self.weights
    }

    pub fn get(&self, set: SubsetMask) -> u32 {
        self.weights
            .iter()
            .find(|(s, _)| *s == set)
            .map_or(0, |(_, a)| *a)
    }

    pub fn to_set_function(&self) -> SetFunction {
        SetFunction::from_entries(
            self.d,
            self.weights
                .iter()
                .map(|&(s, a)| (s, Rational::from_integer(a.into()))),
        )
        .expect("dimension validated on enumeration")
    }
}

/// Whether every subfamily of `chosen` that contains its last entry
/// satisfies the union condition.
fn union_condition_holds(chosen: &[(SubsetMask, u32)]) -> bool {
    let Some((&(last, last_a), earlier)) = chosen.split_last() else {
        return true;
    };
    let n = earlier.len();
    (0u32..1 << n).all(|pick| {
        let mut union = last;
        let mut weight = last_a as usize;
        for (idx, &(s, a)) in earlier.iter().enumerate() {
            if pick & (1 << idx) != 0 {
                union = union.union(s);
                weight += a as usize;
            }
        }
        union.len() > weight
    })
}

/// Calls `visit` for every a-vector supported on `support`.
///
/// Sets are taken by decreasing cardinality and each receives a block of the
/// `d − 1` units; a partial assignment is abandoned as soon as a family
/// through the newest set fails the union condition (adding units never
/// repairs a failure). Only families inside the support of `a` are checked,
/// since zero-weight sets only enlarge unions.
pub fn for_each_a_vector(d: usize, support: &[SubsetMask], mut visit: impl FnMut(&AVector)) -> Result<()> {
    crate::setfun::check_dimension(d)?;
    let mut sets: Vec<SubsetMask> = support.iter().copied().filter(|s| !s.is_empty()).collect();
    for s in &sets {
        if !s.fits(d) {
            return Err(Error::SubsetOutOfRange { bits: s.bits(), d });
        }
    }
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.lex_cmp(*b)));
    sets.dedup();

    fn walk(
        d: usize,
        sets: &[SubsetMask],
        remaining: u32,
        chosen: &mut Vec<(SubsetMask, u32)>,
        visit: &mut dyn FnMut(&AVector),
    ) {
        if remaining == 0 {
            visit(&AVector {
                d,
                weights: chosen.clone(),
            });
            return;
        }
        let Some((&head, tail)) = sets.split_first() else {
            return;
        };
        for a in (1..=remaining).take_while(|&a| (a as usize) < head.len()) {
            chosen.push((head, a));
            let ok = union_condition_holds(chosen);
            if ok {
                walk(d, tail, remaining - a, chosen, visit);
            }
            chosen.pop();
            if !ok {
                break;
            }
        }
        walk(d, tail, remaining, chosen, visit);
    }

    let mut chosen = Vec::new();
    walk(d, &sets, (d - 1) as u32, &mut chosen, &mut visit);
    Ok(())
}

pub fn enumerate_a_vectors(d: usize, support: &[SubsetMask]) -> Result<Vec<AVector>> {
    let mut out = Vec::new();
    for_each_a_vector(d, support, |a| out.push(a.clone()))?;
    Ok(out)
}

fn formula_over(rep: &GenPermRep, support: &[SubsetMask]) -> Result<BigInt> {
    let y = rep.y();
    let full = y.full();
    let mut total = Rational::zero();
    for_each_a_vector(rep.d(), support, |a| {
        let mut term = Rational::one();
        for &(set, weight) in a.weights() {
            let y_i = y.get(set);
            let factor = if set == full {
                generalized_binomial(&(y_i + Rational::from_integer(weight.into())), weight)
            } else {
                generalized_binomial(
                    &(y_i + Rational::from_integer(weight.into()) - Rational::one()),
                    weight,
                )
            };
            term *= factor;
            if term.is_zero() {
                break;
            }
        }
        total += term;
    })?;
    if !total.is_integer() {
        return Err(Error::Inconsistent(format!(
            "lattice-point formula produced {total}"
        )));
    }
    Ok(total.to_integer())
}

/// `|P ∩ ℤ^d|` for an integral generalized permutahedron, by
///
/// ```text
/// Σ_a C(y_[d] + a_[d], a_[d]) · Π_{I ≠ [d]} C(y_I + a_I − 1, a_I)
/// ```
///
/// over all a-vectors. A set with `y_I = 0` contributes `C(a_I − 1, a_I) = 0`
/// whenever `a_I > 0`, so the sum runs over a-vectors supported on
/// `supp(y) ∪ {[d]}`.
pub fn count_lattice_points_formula(rep: &GenPermRep) -> Result<BigInt> {
    if !rep.is_integral() {
        let bad = rep
            .y()
            .values()
            .iter()
            .find(|v| !v.is_integer())
            .expect("non-integral");
        return Err(Error::NotIntegral(bad.to_string()));
    }
    rep.require_valid()?;
    let full = rep.y().full();
    let mut support: Vec<SubsetMask> = rep.y().support().collect();
    if !support.contains(&full) {
        support.push(full);
    }
    formula_over(rep, &support)
}

/// Coefficients of an Ehrhart polynomial, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub coeffs: Vec<Rational>,
}

impl EhrhartPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, n: i64) -> Rational {
        let x = Rational::from_integer(n.into());
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// `E_k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }
}

/// The polynomial through `(i, values[i])`, `i = 0, …, len − 1`, in
/// coefficient form.
pub fn interpolate(values: &[Rational]) -> Vec<Rational> {
    let n = values.len();
    let mut coeffs = vec![Rational::zero(); n];
    for (i, yi) in values.iter().enumerate() {
        // basis polynomial Π_{j≠i} (x − j) / (i − j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let root = Rational::from_integer(j.into());
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &root;
            }
            basis = next;
            denom *= Rational::from_integer((i as i64 - j as i64).into());
        }
        let scale = yi / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Oracle counts `|nP ∩ ℤ^d|` for `n = 0, …, max_n`, dilating the z-vector.
pub fn dilation_counts(rep: &GenPermRep, max_n: usize) -> Result<Vec<u64>> {
    let z = rep.z();
    (0..=max_n)
        .map(|n| count_lattice_points(&z.scale(&Rational::from_integer(n.into()))))
        .collect()
}

/// Ehrhart polynomial of an integral generalized permutahedron, by exact
/// interpolation of the brute-force counts at `n = 0, …, dim P`.
pub fn ehrhart_polynomial(rep: &GenPermRep) -> Result<EhrhartPolynomial> {
    if !rep.is_integral() {
        let bad = rep
            .y()
            .values()
            .iter()
            .find(|v| !v.is_integer())
            .expect("non-integral");
        return Err(Error::NotIntegral(bad.to_string()));
    }
    rep.require_valid()?;
    let dim = dimension(&rep.z())?;
    let counts = dilation_counts(rep, dim)?;
    let values: Vec<Rational> = counts.iter().map(|&c| Rational::from_integer(c.into())).collect();
    let mut coeffs = interpolate(&values);
    coeffs.resize(dim + 1, Rational::zero());
    Ok(EhrhartPolynomial { coeffs })
}

/// `Σ_{|I|≥2} y_I h_{|I|−1}`: the linear Ehrhart coefficient for lattice
/// generalized permutahedra, and a Minkowski linear functional on all of them.
pub fn e1(rep: &GenPermRep) -> Result<Rational> {
    rep.require_valid()?;
    let h = harmonic_table(rep.d());
    let mut acc = Rational::zero();
    for (set, y) in rep.y().iter() {
        if set.len() >= 2 && !y.is_zero() {
            acc += y * &h[set.len() - 1];
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genperm::enumerate_lattice_points;
    use crate::rat;

    fn set(d: usize, e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(d, e).unwrap()
    }

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p.into(), r.into())
    }

    fn rep(d: usize, entries: &[(&[usize], i64)]) -> GenPermRep {
        GenPermRep::from_entries(d, entries.iter().map(|(s, v)| (set(d, s), rat(*v)))).unwrap()
    }

    fn hypersimplex() -> GenPermRep {
        rep(3, &[(&[1, 2], 1), (&[1, 3], 1), (&[2, 3], 1), (&[1, 2, 3], -1)])
    }

    fn pi3() -> GenPermRep {
        rep(
            3,
            &[
                (&[1], 1),
                (&[2], 1),
                (&[3], 1),
                (&[1, 2], 1),
                (&[1, 3], 1),
                (&[2, 3], 1),
            ],
        )
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(generalized_binomial(&rat(5), 2), rat(10));
        assert_eq!(generalized_binomial(&rat(-1), 3), rat(-1));
        assert_eq!(generalized_binomial(&rat(0), 0), rat(1));
        assert_eq!(generalized_binomial(&rat(2), 3), rat(0));
        assert_eq!(generalized_binomial(&q(1, 2), 2), q(-1, 8));
    }

    #[test]
    fn a_vectors_d2() {
        let full = set(2, &[1, 2]);
        let av = enumerate_a_vectors(2, &[full]).unwrap();
        assert_eq!(av.len(), 1);
        assert_eq!(av[0].get(full), 1);
        let av = enumerate_a_vectors(2, &[set(2, &[1]), full]).unwrap();
        assert_eq!(av.len(), 1);
        assert_eq!(av[0].get(full), 1);
        assert_eq!(av[0].get(set(2, &[1])), 0);
    }

    #[test]
    fn a_vectors_d3_pairs_and_top() {
        let support = [
            set(3, &[1, 2]),
            set(3, &[1, 3]),
            set(3, &[2, 3]),
            SubsetMask::full(3),
        ];
        let av = enumerate_a_vectors(3, &support).unwrap();
        let has = |entries: &[(&[usize], u32)]| {
            av.iter().any(|a| {
                a.weights().len() == entries.len() && entries.iter().all(|(s, w)| a.get(set(3, s)) == *w)
            })
        };
        assert!(has(&[(&[1, 2], 1), (&[1, 3], 1)]));
        assert!(has(&[(&[1, 2, 3], 2)]));
        assert!(has(&[(&[1, 2, 3], 1), (&[2, 3], 1)]));
        assert!(!has(&[(&[1, 2], 2)]));
        // top: 2 units, 1 unit + any pair (3), or two distinct pairs (3)
        assert_eq!(av.len(), 7);
        for a in &av {
            let total: u32 = a.weights().iter().map(|w| w.1).sum();
            assert_eq!(total, 2);
        }
    }

    /// Reference check of the union condition over every family of the
    /// full power set of `[d]`, independent of the pruned search.
    fn union_condition_brute(d: usize, a: &SetFunction) -> bool {
        let sets: Vec<SubsetMask> = SubsetMask::all(d).skip(1).collect();
        (1u64..1 << sets.len()).all(|fam| {
            let mut union = SubsetMask::EMPTY;
            let mut w = rat(0);
            for (idx, s) in sets.iter().enumerate() {
                if fam & (1 << idx) != 0 {
                    union = union.union(*s);
                    w += a.get(*s);
                }
            }
            rat(union.len() as i64) >= w + rat(1)
        })
    }

    #[test]
    fn a_vectors_match_brute_force_d3() {
        let all: Vec<SubsetMask> = SubsetMask::all(3).skip(1).collect();
        let found: Vec<SetFunction> = enumerate_a_vectors(3, &all)
            .unwrap()
            .iter()
            .map(AVector::to_set_function)
            .collect();
        // all compositions of 2 units over the 7 nonempty subsets
        let mut brute = Vec::new();
        for i in 0..all.len() {
            for j in i..all.len() {
                let mut a = SetFunction::zeros(3).unwrap();
                a.set(all[i], a.get(all[i]) + rat(1));
                a.set(all[j], a.get(all[j]) + rat(1));
                if union_condition_brute(3, &a) {
                    brute.push(a);
                }
            }
        }
        assert_eq!(found.len(), brute.len());
        for a in &brute {
            assert!(found.contains(a), "missing {a:?}");
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            count_lattice_points_formula(&rep(2, &[(&[1, 2], 1)])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            count_lattice_points_formula(&rep(3, &[(&[1, 2, 3], 1)])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            count_lattice_points_formula(&hypersimplex()).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(count_lattice_points_formula(&pi3()).unwrap(), BigInt::from(7));
    }

    #[test]
    fn formula_support_restriction_is_exact() {
        let all: Vec<SubsetMask> = SubsetMask::all(3).skip(1).collect();
        for r in [hypersimplex(), pi3(), rep(3, &[(&[1, 2, 3], 2), (&[2, 3], 1)])] {
            assert_eq!(
                formula_over(&r, &all).unwrap(),
                count_lattice_points_formula(&r).unwrap()
            );
        }
    }

    #[test]
    fn formula_rejects_bad_input() {
        let bad = rep(3, &[(&[1, 2], 1), (&[1, 2, 3], -1)]);
        assert!(matches!(
            count_lattice_points_formula(&bad),
            Err(Error::InvalidRep(_))
        ));
        let frac = GenPermRep::from_entries(2, [(set(2, &[1, 2]), q(1, 2))]).unwrap();
        assert!(matches!(
            count_lattice_points_formula(&frac),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn ehrhart_examples() {
        let simplex = ehrhart_polynomial(&rep(3, &[(&[1, 2, 3], 1)])).unwrap();
        assert_eq!(simplex.coeffs, vec![rat(1), q(3, 2), q(1, 2)]);
        let p = ehrhart_polynomial(&pi3()).unwrap();
        assert_eq!(p.coeffs, vec![rat(1), rat(3), rat(3)]);
        assert_eq!(dilation_counts(&pi3(), 2).unwrap(), vec![1, 7, 19]);
        let h = ehrhart_polynomial(&hypersimplex()).unwrap();
        assert_eq!(h.coeffs, vec![rat(1), q(3, 2), q(1, 2)]);
        assert_eq!(dilation_counts(&hypersimplex(), 2).unwrap(), vec![1, 3, 6]);
        let point = ehrhart_polynomial(&rep(3, &[(&[2], 4)])).unwrap();
        assert_eq!(point.coeffs, vec![rat(1)]);
    }

    #[test]
    fn ehrhart_overdetermined() {
        for r in [
            pi3(),
            hypersimplex(),
            rep(4, &[(&[1, 2], 2), (&[1, 2, 3, 4], 1), (&[3, 4], 1)]),
        ] {
            let p = ehrhart_polynomial(&r).unwrap();
            let counts = dilation_counts(&r, p.degree() + 2).unwrap();
            for (n, c) in counts.into_iter().enumerate() {
                assert_eq!(p.eval(n as i64), rat(c as i64));
            }
        }
    }

    #[test]
    fn e1_examples() {
        assert_eq!(e1(&rep(4, &[(&[1, 2, 3, 4], 1)])).unwrap(), q(11, 6));
        assert_eq!(e1(&hypersimplex()).unwrap(), q(3, 2));
        assert_eq!(
            e1(&GenPermRep::new(SetFunction::zeros(3).unwrap()).unwrap()).unwrap(),
            rat(0)
        );
        assert_eq!(e1(&pi3()).unwrap(), ehrhart_polynomial(&pi3()).unwrap().coeff(1));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        // 2 - n + 3n^3 / 4
        let f = |n: i64| rat(2) - rat(n) + q(3 * n * n * n, 4);
        let values: Vec<Rational> = (0..4).map(f).collect();
        assert_eq!(interpolate(&values), vec![rat(2), rat(-1), rat(0), q(3, 4)]);
        assert_eq!(interpolate(&[rat(5)]), vec![rat(5)]);
    }

    #[test]
    fn enumerated_points_match_formula_on_dilates() {
        for n in 1..=3 {
            let r = GenPermRep::new(hypersimplex().y().scale(&rat(n))).unwrap();
            assert_eq!(
                BigInt::from(enumerate_lattice_points(&r.z()).unwrap().len()),
                count_lattice_points_formula(&r).unwrap()
            );
        }
    }
}
