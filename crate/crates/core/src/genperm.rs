//! Generalized permutahedra given by y-coefficients, their validity
//! conditions, and geometric oracles on the facet description
//!
//! ```text
//! P(z) = { x ∈ ℝ^d : Σ_i x_i = z_[d],  Σ_{i∈I} x_i ≥ z_I  for all I }
//! ```
//!
//! where `z` is the zeta transform of `y`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::setfun::{check_dimension, zeta_transform, SetFunction, SubsetMask};
use crate::Rational;

/// A rational point of `ℝ^d`.
pub type Point = Vec<Rational>;

/// Outcome of a validity check: either valid or a concrete violated
/// inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation<W> {
    Valid,
    Invalid(W),
}

impl<W> Validation<W> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Validation::Valid => None,
            Validation::Invalid(w) => Some(w),
        }
    }
}

/// A pair `(E, T)` with `|E| = 2`, `E ⊆ T`, whose interval sum
/// `Σ_{E⊆I⊆T} y_I` is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationWitness {
    pub e: SubsetMask,
    pub t: SubsetMask,
    pub value: Rational,
}

impl fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E = {}, T = {}, interval sum = {}", self.e, self.t, self.value)
    }
}

/// A violated facet inequality `z_{K∪i} + z_{K∪j} ≤ z_{K∪{i,j}} + z_K`
/// (`i < j`, both 1-based and outside `K`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupermodularWitness {
    pub k: SubsetMask,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for SupermodularWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K = {}, i = {}, j = {}", self.k, self.i, self.j)
    }
}

/// A candidate generalized permutahedron `Σ_{∅≠I⊆[d]} y_I Δ_I`.
///
/// Construction only enforces `y_∅ = 0`; use [`validate_y`] (or
/// [`GenPermRep::validated`]) to check that the signed sum defines a polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPermRep {
    y: SetFunction,
}

impl GenPermRep {
    pub fn new(y: SetFunction) -> Result<Self> {
        y.require_empty_zero()?;
        Ok(GenPermRep { y })
    }

    /// Like [`GenPermRep::new`], but also rejects invalid coefficient vectors.
    pub fn validated(y: SetFunction) -> Result<Self> {
        let rep = GenPermRep::new(y)?;
        match validate_y(&rep) {
            Validation::Valid => Ok(rep),
            Validation::Invalid(w) => Err(Error::InvalidRep(w)),
        }
    }

    pub fn from_entries<I>(d: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, Rational)>,
    {
        GenPermRep::new(SetFunction::from_entries(d, entries)?)
    }

    pub fn d(&self) -> usize {
        self.y.d()
    }

    pub fn y(&self) -> &SetFunction {
        &self.y
    }

    pub fn into_y(self) -> SetFunction {
        self.y
    }

    /// The tight facet right-hand sides `z_I = Σ_{J⊆I} y_J`.
    pub fn z(&self) -> SetFunction {
        zeta_transform(&self.y).expect("y_∅ = 0 is a construction invariant")
    }

    pub fn is_integral(&self) -> bool {
        self.y.is_integral()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match validate_y(self) {
            Validation::Valid => Ok(()),
            Validation::Invalid(w) => Err(Error::InvalidRep(w)),
        }
    }
}

/// All 2-subsets of `[d]` in lexicographic order.
pub fn pairs(d: usize) -> impl Iterator<Item = SubsetMask> {
    (1..=d)
        .tuple_combinations()
        .map(|(i, j)| SubsetMask::singleton(i).union(SubsetMask::singleton(j)))
}

/// Checks `Σ_{E⊆I⊆T} y_I ≥ 0` for every 2-set `E` and every `T ⊇ E`.
///
/// On failure the witness is the lexicographically first violated pair:
/// `E` first, then `T`, each compared as sorted element lists.
pub fn validate_y(rep: &GenPermRep) -> Validation<ViolationWitness> {
    let y = rep.y();
    let d = y.d();
    for e in pairs(d) {
        let sums = interval_sums(y, e);
        let rest = SubsetMask::full(d).difference(e);
        let worst = sums
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_negative())
            .map(|(k, s)| (e.union(deposit(k as u32, rest)), s))
            .min_by(|a, b| a.0.lex_cmp(b.0));
        if let Some((t, value)) = worst {
            return Validation::Invalid(ViolationWitness {
                e,
                t,
                value: value.clone(),
            });
        }
    }
    Validation::Valid
}

/// For a fixed `E`, all interval sums `Σ_{E⊆I⊆T} y_I`, indexed by
/// `T ∖ E` compressed to the bits of `[d] ∖ E`.
fn interval_sums(y: &SetFunction, e: SubsetMask) -> Vec<Rational> {
    let rest = y.full().difference(e);
    let width = rest.len();
    let mut g: Vec<Rational> = (0..1u32 << width)
        .map(|k| y.get(e.union(deposit(k, rest))).clone())
        .collect();
    for bit in 0..width {
        let step = 1usize << bit;
        for mask in 0..g.len() {
            if mask & step != 0 {
                let (lo, hi) = g.split_at_mut(mask);
                hi[0] += &lo[mask ^ step];
            }
        }
    }
    g
}

/// Scatters the low bits of `compact` onto the set bits of `onto`.
fn deposit(compact: u32, onto: SubsetMask) -> SubsetMask {
    let mut out = 0u32;
    let mut src = compact;
    let mut dst = onto.bits();
    while src != 0 && dst != 0 {
        let low = dst & dst.wrapping_neg();
        if src & 1 != 0 {
            out |= low;
        }
        src >>= 1;
        dst &= dst - 1;
    }
    SubsetMask::from_bits(out)
}

/// Checks the local supermodularity inequalities
/// `z_{K∪i} + z_{K∪j} ≤ z_{K∪{i,j}} + z_K` for all `K` and `i < j ∉ K`.
/// Witnesses are reported for the smallest `K` (bit order), then `(i, j)`.
pub fn validate_z_supermodular(z: &SetFunction) -> Validation<SupermodularWitness> {
    let d = z.d();
    for k in SubsetMask::all(d) {
        for i in 1..=d {
            if k.contains(i) {
                continue;
            }
            let ki = k.union(SubsetMask::singleton(i));
            for j in i + 1..=d {
                if k.contains(j) {
                    continue;
                }
                let kj = k.union(SubsetMask::singleton(j));
                let kij = ki.union(kj);
                if z.get(ki) + z.get(kj) > z.get(kij) + z.get(k) {
                    return Validation::Invalid(SupermodularWitness { k, i, j });
                }
            }
        }
    }
    Validation::Valid
}

fn require_supermodular(z: &SetFunction) -> Result<()> {
    match validate_z_supermodular(z) {
        Validation::Valid => Ok(()),
        Validation::Invalid(w) => Err(Error::NotSupermodular {
            k: w.k.elements(),
            i: w.i,
            j: w.j,
        }),
    }
}

/// Runs both validity routes, the interval-sum inequalities on `y` and
/// supermodularity of `zeta(y)`, and insists that they agree.
pub fn equivalence_check(y: &SetFunction) -> Result<bool> {
    let rep = GenPermRep::new(y.clone())?;
    let direct = validate_y(&rep);
    let via_z = validate_z_supermodular(&rep.z());
    if direct.is_valid() != via_z.is_valid() {
        return Err(Error::Inconsistent(format!(
            "interval-sum check says {:?} but supermodularity check says {:?} for y = {y:?}",
            direct.witness().map(ToString::to_string),
            via_z.witness().map(ToString::to_string),
        )));
    }
    Ok(direct.is_valid())
}

/// Largest `d` for which enumerating all `d!` greedy orders is allowed.
pub const MAX_VERTEX_D: usize = 10;

/// The greedy point for the order `sigma` (0-based elements):
/// `v_{σ(k)} = z_{S_k} − z_{S_{k−1}}` with `S_k = {σ(1), …, σ(k)}`.
fn greedy_point(z: &SetFunction, sigma: &[usize]) -> Point {
    let mut point = vec![Rational::zero(); z.d()];
    let mut prefix = SubsetMask::EMPTY;
    for &i in sigma {
        let next = prefix.union(SubsetMask::singleton(i + 1));
        point[i] = z.get(next) - z.get(prefix);
        prefix = next;
    }
    point
}

/// Vertex set of `P(z)`, sorted lexicographically, via the greedy point of
/// every ordering of `[d]`.
pub fn vertices(z: &SetFunction) -> Result<Vec<Point>> {
    require_supermodular(z)?;
    let d = z.d();
    if d > MAX_VERTEX_D {
        return Err(Error::TooLarge(format!("{d}! greedy orders")));
    }
    let set: BTreeSet<Point> = (0..d)
        .permutations(d)
        .par_bridge()
        .map(|sigma| greedy_point(z, &sigma))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(set.into_iter().collect())
}

/// Vertices of the face `P^u` maximizing `⟨u, x⟩`.
///
/// A greedy point maximizes `⟨u, ·⟩` exactly when its order lists the
/// coordinates by nondecreasing `u`, so only orderings inside blocks of equal
/// `u_i` are enumerated.
pub fn face_in_direction(z: &SetFunction, u: &[Rational]) -> Result<Vec<Point>> {
    require_supermodular(z)?;
    let d = z.d();
    if u.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: u.len(),
        });
    }
    if u.iter().all(Zero::is_zero) {
        return Err(Error::ZeroDirection);
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| u[a].cmp(&u[b]));
    let blocks: Vec<Vec<usize>> = order
        .into_iter()
        .chunk_by(|&i| u[i].clone())
        .into_iter()
        .map(|(_, block)| block.collect())
        .collect();
    let largest = blocks.iter().map(Vec::len).max().unwrap_or(0);
    if largest > MAX_VERTEX_D {
        return Err(Error::TooLarge(format!("{largest}! orders in a tie block")));
    }

    let mut out = BTreeSet::new();
    let per_block: Vec<Vec<Vec<usize>>> = blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect())
        .collect();
    for choice in per_block.iter().multi_cartesian_product() {
        let sigma: Vec<usize> = choice.into_iter().flatten().copied().collect();
        out.insert(greedy_point(z, &sigma));
    }
    if per_block.is_empty() {
        out.insert(greedy_point(z, &[]));
    }
    Ok(out.into_iter().collect())
}

/// Normalized length of a face that is a point or a segment parallel to
/// some `e_i − e_j`, with `[e_i, e_j]` having length 1.
pub fn edge_length_normalized(face: &[Point]) -> Result<Rational> {
    let distinct: BTreeSet<&Point> = face.iter().collect();
    let mut it = distinct.into_iter();
    let (Some(a), b, None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::NotAnEdge(format!("{} distinct points", face.len())));
    };
    let Some(b) = b else {
        return Ok(Rational::zero());
    };
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let diff: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let nonzero: Vec<&Rational> = diff.iter().filter(|v| !v.is_zero()).collect();
    match nonzero.as_slice() {
        [p, q] if (*p + *q).is_zero() => Ok(p.abs()),
        _ => Err(Error::NotAnEdge(format!(
            "difference {} is not a multiple of some e_i - e_j",
            diff.iter().join(", ")
        ))),
    }
}

/// A point of `ℤ^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub coords: Vec<BigInt>,
}

/// Integer copy of a z-vector plus the per-coordinate search ranges.
struct LatticeSearch {
    d: usize,
    z: Vec<i64>,
    total: i64,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl LatticeSearch {
    fn new(z: &SetFunction) -> Result<Self> {
        require_supermodular(z)?;
        let d = z.d();
        let ints = z.to_integers()?;
        let z: Vec<i64> = ints
            .iter()
            .map(|v| {
                v.to_i64()
                    .filter(|x| x.unsigned_abs() < 1 << 40)
                    .ok_or_else(|| Error::TooLarge(format!("z value {v}")))
            })
            .collect::<Result<_>>()?;
        let full = (1usize << d) - 1;
        let total = z[full];
        let singles: Vec<i64> = (0..d).map(|i| z[1 << i]).collect();
        let single_sum: i64 = singles.iter().sum();
        let lo = singles.clone();
        let hi: Vec<i64> = singles.iter().map(|s| total - (single_sum - s)).collect();
        Ok(LatticeSearch { d, z, total, lo, hi })
    }

    /// Depth-first over coordinates. `partial[I]` holds `Σ_{i∈I} x_i` for
    /// every `I` inside the assigned prefix; each new coordinate is checked
    /// against `z_I ≤ x(I) ≤ z_[d] − z_{[d]∖I}` for all `I` it completes.
    fn walk(&self, depth: usize, x: &mut Vec<i64>, partial: &mut [i64], visit: &mut dyn FnMut(&[i64])) {
        let d = self.d;
        let full = (1usize << d) - 1;
        let (lo, hi) = if depth == d - 1 {
            let forced = self.total - partial[(1 << depth) - 1];
            (forced, forced)
        } else {
            (self.lo[depth], self.hi[depth])
        };
        'values: for v in lo..=hi {
            let bit = 1usize << depth;
            for prev in 0..bit {
                let s = partial[prev] + v;
                let set = prev | bit;
                if s < self.z[set] || s > self.total - self.z[full ^ set] {
                    continue 'values;
                }
                partial[set] = s;
            }
            x.push(v);
            if depth + 1 == d {
                visit(x);
            } else {
                self.walk(depth + 1, x, partial, visit);
            }
            x.pop();
        }
    }

    fn first_coordinate_range(&self) -> std::ops::RangeInclusive<i64> {
        if self.d == 1 {
            self.total..=self.total
        } else {
            self.lo[0]..=self.hi[0]
        }
    }

    /// Runs the walk with the first coordinate pinned to `first`.
    fn walk_from(&self, first: i64, visit: &mut dyn FnMut(&[i64])) {
        let mut partial = vec![0i64; 1 << self.d];
        let full = (1usize << self.d) - 1;
        if first < self.z[1] || first > self.total - self.z[full ^ 1] {
            return;
        }
        if self.d == 1 {
            if first == self.total {
                visit(&[first]);
            }
            return;
        }
        partial[1] = first;
        let mut x = vec![first];
        self.walk(1, &mut x, &mut partial, visit);
    }
}

/// All integer points of `P(z)` in lexicographic order. Each coordinate
/// ranges over `[z_{i}, z_[d] − Σ_{j≠i} z_{j}]`.
pub fn enumerate_lattice_points(z: &SetFunction) -> Result<Vec<LatticePoint>> {
    let search = LatticeSearch::new(z)?;
    let chunks: Vec<Vec<LatticePoint>> = search
        .first_coordinate_range()
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            search.walk_from(first, &mut |x| {
                found.push(LatticePoint {
                    coords: x.iter().map(|&v| BigInt::from(v)).collect(),
                })
            });
            found
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// `|P(z) ∩ ℤ^d|` by the same search as [`enumerate_lattice_points`],
/// without materializing the points.
pub fn count_lattice_points(z: &SetFunction) -> Result<u64> {
    let search = LatticeSearch::new(z)?;
    Ok(search
        .first_coordinate_range()
        .into_par_iter()
        .map(|first| {
            let mut n = 0u64;
            search.walk_from(first, &mut |_| n += 1);
            n
        })
        .sum())
}

/// Affine dimension of `P(z)`.
pub fn dimension(z: &SetFunction) -> Result<usize> {
    check_dimension(z.d())?;
    let verts = vertices(z)?;
    let Some((base, rest)) = verts.split_first() else {
        return Ok(0);
    };
    let diffs = rest
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    Ok(linalg::rank(diffs))
}
