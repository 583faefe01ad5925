//! Subsets of `[d]` as bitmasks, exact rational set functions, and the
//! zeta/Möbius transform pair over the boolean lattice.
//!
//! Elements of the ground set are 1-based everywhere a human sees them
//! (`SubsetMask::from_elements`, `Display`, JSON); bit `i - 1` stores
//! element `i`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Hard cap on the ground-set size; set functions are stored densely.
pub const MAX_D: usize = 20;

/// A subset of `[d]`. The ground-set size is carried by the enclosing
/// [`SetFunction`] or passed explicitly; a mask on its own is just bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// `[d] = {1, …, d}`.
    pub fn full(d: usize) -> Self {
        debug_assert!(d <= 32);
        if d == 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << d) - 1)
        }
    }

    /// The singleton `{element}` (1-based).
    pub fn singleton(element: usize) -> Self {
        debug_assert!((1..=32).contains(&element));
        SubsetMask(1 << (element - 1))
    }

    /// Builds a mask from 1-based elements. Elements outside `1..=d` are an
    /// error; duplicates are ignored.
    pub fn from_elements(d: usize, elements: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > d {
                return Err(Error::IndexOutOfRange {
                    index: e,
                    lo: 1,
                    hi: d,
                });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    /// Sorted 1-based elements.
    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Iterates the 1-based elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let tz = rest.trailing_zeros();
                rest &= rest - 1;
                Some(tz as usize + 1)
            }
        })
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, element: usize) -> bool {
        element >= 1 && element <= 32 && self.0 & (1 << (element - 1)) != 0
    }

    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub const fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub const fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn fits(self, d: usize) -> bool {
        self.is_subset_of(SubsetMask::full(d))
    }

    /// Lexicographic order on the sorted element lists, so `{1,2,3} < {1,3}`.
    pub fn lex_cmp(self, other: SubsetMask) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// All subsets of `self`, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(SubsetMask(cur))
        })
    }

    /// All subsets of `[d]`, in increasing bit order.
    pub fn all(d: usize) -> impl Iterator<Item = SubsetMask> {
        (0..1u32 << d).map(SubsetMask)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, e) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn check_dimension(d: usize) -> Result<()> {
    if d == 0 || d > MAX_D {
        Err(Error::DimensionOutOfRange { d, max: MAX_D })
    } else {
        Ok(())
    }
}

/// A map from all `2^d` subsets of `[d]` to exact rationals, stored densely
/// and indexed by [`SubsetMask`].
///
/// Holds y-vectors (Minkowski coefficients), z-vectors (facet right-hand
/// sides) and a-vectors alike.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFunction {
    d: usize,
    values: Vec<Rational>,
}

impl SetFunction {
    pub fn zeros(d: usize) -> Result<Self> {
        check_dimension(d)?;
        Ok(SetFunction {
            d,
            values: vec![Rational::zero(); 1 << d],
        })
    }

    pub fn from_values(d: usize, values: Vec<Rational>) -> Result<Self> {
        check_dimension(d)?;
        if values.len() != 1 << d {
            return Err(Error::Invalid(format!(
                "expected {} values for d = {d}, found {}",
                1usize << d,
                values.len()
            )));
        }
        Ok(SetFunction { d, values })
    }

    pub fn from_fn(d: usize, mut f: impl FnMut(SubsetMask) -> Rational) -> Result<Self> {
        check_dimension(d)?;
        let values = SubsetMask::all(d).map(&mut f).collect();
        Ok(SetFunction { d, values })
    }

    /// Builds from `(subset, value)` pairs; unlisted subsets are 0.
    pub fn from_entries<I>(d: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, Rational)>,
    {
        let mut f = SetFunction::zeros(d)?;
        for (set, value) in entries {
            if !set.fits(d) {
                return Err(Error::SubsetOutOfRange { bits: set.bits(), d });
            }
            f.values[set.index()] = value;
        }
        Ok(f)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.d)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, set: SubsetMask) -> &Rational {
        &self.values[set.index()]
    }

    pub fn set(&mut self, set: SubsetMask, value: Rational) {
        assert!(set.fits(self.d), "subset {set} outside [{}]", self.d);
        self.values[set.index()] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (SubsetMask::from_bits(i as u32), v))
    }

    /// Subsets with a nonzero value, in increasing bit order.
    pub fn support(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.iter().filter(|(_, v)| !v.is_zero()).map(|(s, _)| s)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    /// Integer values, or the first non-integer value as an error.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.values
            .iter()
            .map(|v| {
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(Error::NotIntegral(v.to_string()))
                }
            })
            .collect()
    }

    pub fn scale(&self, factor: &Rational) -> SetFunction {
        SetFunction {
            d: self.d,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub(crate) fn require_empty_zero(&self) -> Result<()> {
        if self.values[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroAtEmpty)
        }
    }

    fn zip_with(&self, other: &SetFunction, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.d, other.d, "set functions over different ground sets");
        SetFunction {
            d: self.d,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (set, v) in self.iter().filter(|(_, v)| !v.is_zero()) {
            map.entry(&set, &format_args!("{v}"));
        }
        map.finish()
    }
}

impl Add for &SetFunction {
    type Output = SetFunction;
    fn add(self, rhs: &SetFunction) -> SetFunction {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SetFunction {
    type Output = SetFunction;
    fn sub(self, rhs: &SetFunction) -> SetFunction {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &SetFunction {
    type Output = SetFunction;
    fn neg(self) -> SetFunction {
        SetFunction {
            d: self.d,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

/// `z_I = Σ_{J⊆I} y_J`. Requires `y_∅ = 0`.
pub fn zeta_transform(y: &SetFunction) -> Result<SetFunction> {
    y.require_empty_zero()?;
    let mut values = y.values.clone();
    for bit in 0..y.d {
        let step = 1usize << bit;
        for mask in 0..values.len() {
            if mask & step != 0 {
                let (lo, hi) = values.split_at_mut(mask);
                hi[0] += &lo[mask ^ step];
            }
        }
    }
    Ok(SetFunction { d: y.d, values })
}

/// `y_I = Σ_{J⊆I} (-1)^{|I|-|J|} z_J`, the inverse of [`zeta_transform`].
/// Requires `z_∅ = 0`.
pub fn mobius_transform(z: &SetFunction) -> Result<SetFunction> {
    z.require_empty_zero()?;
    let mut values = z.values.clone();
    for bit in 0..z.d {
        let step = 1usize << bit;
        for mask in 0..values.len() {
            if mask & step != 0 {
                let (lo, hi) = values.split_at_mut(mask);
                hi[0] -= &lo[mask ^ step];
            }
        }
    }
    Ok(SetFunction { d: z.d, values })
}

/// The harmonic number `h_i = 1 + 1/2 + ⋯ + 1/i`, with `h_0 = 0`.
pub fn harmonic(i: usize) -> Rational {
    let mut acc = Rational::zero();
    for k in 1..=i {
        acc += Rational::new(BigInt::one(), BigInt::from(k));
    }
    acc
}

/// `h_0, h_1, …, h_n` in one pass.
pub fn harmonic_table(n: usize) -> Vec<Rational> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = Rational::zero();
    table.push(acc.clone());
    for k in 1..=n {
        acc += Rational::new(BigInt::one(), BigInt::from(k));
        table.push(acc.clone());
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn set(d: usize, e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(d, e).unwrap()
    }

    /// y for the permutahedron Π_3: singletons and pairs 1, [3] 0.
    fn pi3_y() -> SetFunction {
        SetFunction::from_fn(3, |s| match s.len() {
            1 | 2 => rat(1),
            _ => rat(0),
        })
        .unwrap()
    }

    /// Support function of a finite point set: z_I = min_v Σ_{i∈I} v_i.
    fn min_over_points(d: usize, points: &[Vec<i64>]) -> SetFunction {
        SetFunction::from_fn(d, |s| {
            let m = points
                .iter()
                .map(|p| s.iter().map(|i| p[i - 1]).sum::<i64>())
                .min()
                .unwrap();
            rat(m)
        })
        .unwrap()
    }

    #[test]
    fn mask_basics() {
        let a = set(4, &[1, 3]);
        let b = set(4, &[3, 4]);
        assert_eq!(a.len(), 2);
        assert_eq!(a.union(b), set(4, &[1, 3, 4]));
        assert_eq!(a.intersection(b), set(4, &[3]));
        assert_eq!(a.difference(b), set(4, &[1]));
        assert!(set(4, &[3]).is_subset_of(a));
        assert!(!a.is_subset_of(b));
        assert_eq!(a.elements(), vec![1, 3]);
        assert_eq!(a.to_string(), "{1,3}");
        assert_eq!(set(3, &[1, 2, 3]).lex_cmp(set(3, &[1, 3])), Ordering::Less);
        assert!(SubsetMask::from_elements(3, &[4]).is_err());
        assert!(SubsetMask::from_elements(3, &[0]).is_err());
        let subs: Vec<_> = a.subsets().collect();
        assert_eq!(subs, vec![SubsetMask::EMPTY, set(4, &[1]), set(4, &[3]), a]);
    }

    #[test]
    fn dimension_cap() {
        assert!(SetFunction::zeros(0).is_err());
        assert!(SetFunction::zeros(MAX_D + 1).is_err());
        assert_eq!(SetFunction::zeros(3).unwrap().values().len(), 8);
    }

    #[test]
    fn zeta_of_zero_is_zero() {
        let y = SetFunction::zeros(4).unwrap();
        assert!(zeta_transform(&y).unwrap().is_zero());
        assert!(mobius_transform(&y).unwrap().is_zero());
    }

    #[test]
    fn zeta_of_top_simplex() {
        let mut y = SetFunction::zeros(3).unwrap();
        y.set(SubsetMask::full(3), rat(1));
        assert_eq!(zeta_transform(&y).unwrap(), y);
    }

    #[test]
    fn zeta_of_permutahedron_matches_support_function() {
        let perms: Vec<Vec<i64>> = vec![
            vec![1, 2, 3],
            vec![1, 3, 2],
            vec![2, 1, 3],
            vec![2, 3, 1],
            vec![3, 1, 2],
            vec![3, 2, 1],
        ];
        let oracle = min_over_points(3, &perms);
        let z = zeta_transform(&pi3_y()).unwrap();
        assert_eq!(z, oracle);
        assert_eq!(*z.get(set(3, &[2])), rat(1));
        assert_eq!(*z.get(set(3, &[1, 3])), rat(3));
        assert_eq!(*z.get(SubsetMask::full(3)), rat(6));
        assert_eq!(mobius_transform(&z).unwrap(), pi3_y());
    }

    #[test]
    fn mobius_of_hypersimplex() {
        let z = min_over_points(3, &[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(*z.get(set(3, &[1])), rat(0));
        assert_eq!(*z.get(set(3, &[1, 2])), rat(1));
        assert_eq!(*z.get(SubsetMask::full(3)), rat(2));
        let y = mobius_transform(&z).unwrap();
        for (s, v) in y.iter() {
            let expected = match s.len() {
                2 => rat(1),
                3 => rat(-1),
                _ => rat(0),
            };
            assert_eq!(*v, expected, "y at {s}");
        }
    }

    #[test]
    fn transforms_reject_nonzero_empty() {
        let mut f = SetFunction::zeros(2).unwrap();
        f.set(SubsetMask::EMPTY, rat(1));
        assert_eq!(zeta_transform(&f), Err(Error::NonzeroAtEmpty));
        assert_eq!(mobius_transform(&f), Err(Error::NonzeroAtEmpty));
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), rat(0));
        assert_eq!(harmonic(3), Rational::new(11.into(), 6.into()));
        assert_eq!(harmonic(5), Rational::new(137.into(), 60.into()));
        let table = harmonic_table(30);
        for i in 1..=30 {
            assert_eq!(&table[i] - &table[i - 1], Rational::new(1.into(), i.into()));
            assert_eq!(table[i], harmonic(i));
        }
    }

    fn arb_setfun(max_d: usize) -> impl Strategy<Value = SetFunction> {
        (1..=max_d).prop_flat_map(|d| {
            proptest::collection::vec((-20i64..=20, 1i64..=6), 1 << d).prop_map(move |raw| {
                let values = raw
                    .into_iter()
                    .enumerate()
                    .map(|(i, (p, q))| {
                        if i == 0 {
                            rat(0)
                        } else {
                            Rational::new(p.into(), q.into())
                        }
                    })
                    .collect();
                SetFunction::from_values(d, values).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn transforms_are_mutually_inverse(f in arb_setfun(6)) {
            prop_assert_eq!(mobius_transform(&zeta_transform(&f).unwrap()).unwrap(), f.clone());
            prop_assert_eq!(zeta_transform(&mobius_transform(&f).unwrap()).unwrap(), f);
        }

        #[test]
        fn transforms_are_linear(
            (f, g) in (1usize..=5).prop_flat_map(|d| (arb_setfun_d(d), arb_setfun_d(d))),
            a in -5i64..=5,
            b in 1i64..=4,
        ) {
            let alpha = rat(a);
            let beta = Rational::new(1.into(), b.into());
            let combo = &f.scale(&alpha) + &g.scale(&beta);
            for t in [zeta_transform, mobius_transform] {
                let lhs = t(&combo).unwrap();
                let rhs = &t(&f).unwrap().scale(&alpha) + &t(&g).unwrap().scale(&beta);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    fn arb_setfun_d(d: usize) -> impl Strategy<Value = SetFunction> {
        proptest::collection::vec(-9i64..=9, 1 << d).prop_map(move |raw| {
            let values = raw
                .into_iter()
                .enumerate()
                .map(|(i, v)| if i == 0 { rat(0) } else { rat(v) })
                .collect();
            SetFunction::from_values(d, values).unwrap()
        })
    }
}
