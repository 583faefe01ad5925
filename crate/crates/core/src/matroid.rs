//! Matroids given by their bases, beta invariants of contractions, and the
//! matroid and independent-set polytopes as signed sums of simplices.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genperm::GenPermRep;
use crate::setfun::{harmonic_table, SetFunction, SubsetMask, MAX_D};
use crate::Rational;

/// A matroid on the ground set `[m]`, described by its bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    m: usize,
    rank: usize,
    bases: Vec<SubsetMask>,
}

/// Equal cardinality and the basis-exchange axiom.
pub fn validate_bases(m: usize, bases: &[SubsetMask]) -> bool {
    check_bases(m, bases).is_ok()
}

fn check_bases(m: usize, bases: &[SubsetMask]) -> Result<()> {
    if m > MAX_D {
        return Err(Error::DimensionOutOfRange { d: m, max: MAX_D });
    }
    let Some(first) = bases.first() else {
        return Err(Error::InvalidMatroid("no bases".into()));
    };
    if let Some(b) = bases.iter().find(|b| !b.fits(m)) {
        return Err(Error::InvalidMatroid(format!("basis {b} outside [{m}]")));
    }
    if let Some(b) = bases.iter().find(|b| b.len() != first.len()) {
        return Err(Error::InvalidMatroid(format!(
            "bases {first} and {b} have different sizes"
        )));
    }
    let lookup: BTreeSet<SubsetMask> = bases.iter().copied().collect();
    for &b1 in &lookup {
        for &b2 in &lookup {
            for x in b1.difference(b2).iter() {
                let without = b1.difference(SubsetMask::singleton(x));
                let ok = b2
                    .difference(b1)
                    .iter()
                    .any(|y| lookup.contains(&without.union(SubsetMask::singleton(y))));
                if !ok {
                    return Err(Error::InvalidMatroid(format!(
                        "basis exchange fails for B1 = {b1}, B2 = {b2}, x = {x}"
                    )));
                }
            }
        }
    }
    Ok(())
}

impl Matroid {
    pub fn new(m: usize, bases: Vec<SubsetMask>) -> Result<Self> {
        let mut bases = bases;
        bases.sort();
        bases.dedup();
        check_bases(m, &bases)?;
        let rank = bases[0].len();
        Ok(Matroid { m, rank, bases })
    }

    /// `U_{r,n}`: every `r`-subset of `[n]` is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidMatroid(format!("U_{{{r},{n}}} needs r <= n")));
        }
        let bases = (1..=n)
            .combinations(r)
            .map(|c| SubsetMask::from_elements(n, &c))
            .collect::<Result<_>>()?;
        Matroid::new(n, bases)
    }

    /// The cycle matroid of a graph; edges (1-based vertex pairs) are the
    /// ground set in the listed order. Bases are the spanning forests.
    pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let m = edges.len();
        if m > MAX_D {
            return Err(Error::DimensionOutOfRange { d: m, max: MAX_D });
        }
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > vertices || v > vertices {
                return Err(Error::InvalidMatroid(format!(
                    "edge ({u}, {v}) has an endpoint outside 1..={vertices}"
                )));
            }
        }
        let forest_rank = |set: SubsetMask| -> usize {
            let mut parent: Vec<usize> = (0..=vertices).collect();
            fn find(parent: &mut [usize], x: usize) -> usize {
                let mut root = x;
                while parent[root] != root {
                    root = parent[root];
                }
                let mut cur = x;
                while parent[cur] != root {
                    let next = parent[cur];
                    parent[cur] = root;
                    cur = next;
                }
                root
            }
            let mut rank = 0;
            for e in set.iter() {
                let (u, v) = edges[e - 1];
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    rank += 1;
                }
            }
            rank
        };
        let r = forest_rank(SubsetMask::full(m));
        let bases = (1..=m)
            .combinations(r)
            .map(|c| SubsetMask::from_elements(m, &c).expect("elements in range"))
            .filter(|&s| forest_rank(s) == r)
            .collect();
        Matroid::new(m, bases)
    }

    /// `M ⊕ N` on `[m + n]`, with `N`'s elements shifted by `m`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Self> {
        let shift = self.m;
        let bases = self
            .bases
            .iter()
            .cartesian_product(&other.bases)
            .map(|(a, b)| SubsetMask::from_bits(a.bits() | (b.bits() << shift)))
            .collect();
        Matroid::new(self.m + other.m, bases)
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    /// `r(E)`.
    pub fn rank_of_matroid(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[SubsetMask] {
        &self.bases
    }

    pub fn ground(&self) -> SubsetMask {
        SubsetMask::full(self.m)
    }

    /// `r(X) = max_B |B ∩ X|`.
    pub fn rank(&self, x: SubsetMask) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(x).len())
            .max()
            .unwrap_or(0)
    }

    /// `r(X)` for every `X ⊆ [m]`, indexed by mask.
    pub fn rank_table(&self) -> Vec<usize> {
        SubsetMask::all(self.m).map(|x| self.rank(x)).collect()
    }

    pub fn is_independent(&self, x: SubsetMask) -> bool {
        self.bases.iter().any(|b| x.is_subset_of(*b))
    }

    pub fn independent_sets(&self) -> Vec<SubsetMask> {
        SubsetMask::all(self.m)
            .filter(|&x| self.is_independent(x))
            .collect()
    }

    /// `M / A` on `E ∖ A`, relabeled to `[m − |A|]` preserving order.
    ///
    /// The second component maps new element `k` (1-based, at index `k − 1`)
    /// to its original label.
    pub fn contraction(&self, a: SubsetMask) -> Result<(Matroid, Vec<usize>)> {
        if !a.fits(self.m) {
            return Err(Error::SubsetOutOfRange {
                bits: a.bits(),
                d: self.m,
            });
        }
        let labels: Vec<usize> = self.ground().difference(a).elements();
        let ra = self.rank(a);
        let relabel = |set: SubsetMask| -> SubsetMask {
            let bits = labels
                .iter()
                .enumerate()
                .filter(|(_, &orig)| set.contains(orig))
                .fold(0u32, |acc, (k, _)| acc | 1 << k);
            SubsetMask::from_bits(bits)
        };
        let bases = self
            .bases
            .iter()
            .filter(|b| b.intersection(a).len() == ra)
            .map(|b| relabel(b.difference(a)))
            .collect();
        Ok((Matroid::new(labels.len(), bases)?, labels))
    }
}

/// `β(M) = (−1)^{r(M)} Σ_{X⊆E} (−1)^{|X|} r(X)`.
pub fn beta(m: &Matroid) -> i64 {
    let sum: i64 = SubsetMask::all(m.ground_size())
        .map(|x| {
            let r = m.rank(x) as i64;
            if x.len() % 2 == 0 {
                r
            } else {
                -r
            }
        })
        .sum();
    if m.rank_of_matroid().is_multiple_of(2) {
        sum
    } else {
        -sum
    }
}

/// `β̃(M) = (−1)^{r(M)+1} β(M)`.
pub fn signed_beta(m: &Matroid) -> i64 {
    if m.rank_of_matroid().is_multiple_of(2) {
        -beta(m)
    } else {
        beta(m)
    }
}

/// Signed beta invariants `β̃(M/A)` of all contractions, indexed by `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaTable {
    m: usize,
    entries: Vec<i64>,
}

impl BetaTable {
    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn get(&self, a: SubsetMask) -> i64 {
        self.entries[a.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, i64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &v)| (SubsetMask::from_bits(i as u32), v))
    }
}

/// All `β̃(M/A)` at once.
///
/// With `r_{M/A}(X) = r(X ∪ A) − r(A)` the signs collapse to
/// `β̃(M/A) = −Σ_{S⊇A} (−1)^{|S∖A|} r(S)` for `A ≠ E`, a superset Möbius
/// transform of the rank table. The empty contraction `M/E` has `β̃ = 0`.
pub fn beta_table(m: &Matroid) -> BetaTable {
    let n = m.ground_size();
    let mut g: Vec<i64> = m.rank_table().into_iter().map(|r| r as i64).collect();
    for bit in 0..n {
        let step = 1usize << bit;
        for mask in 0..g.len() {
            if mask & step == 0 {
                g[mask] -= g[mask | step];
            }
        }
    }
    let full = (1usize << n) - 1;
    let entries = g
        .into_iter()
        .enumerate()
        .map(|(a, v)| if a == full { 0 } else { -v })
        .collect();
    BetaTable { m: n, entries }
}

fn require_nonempty(m: &Matroid, extra: usize) -> Result<()> {
    let d = m.ground_size() + extra;
    if m.ground_size() == 0 || d > MAX_D {
        return Err(Error::DimensionOutOfRange { d, max: MAX_D });
    }
    Ok(())
}

/// `P_M = Σ_{A⊊E} β̃(M/A) Δ_{E∖A}` on `d = m`.
pub fn matroid_polytope_y(m: &Matroid) -> Result<GenPermRep> {
    require_nonempty(m, 0)?;
    let table = beta_table(m);
    let ground = m.ground();
    let entries = table
        .iter()
        .filter(|&(a, b)| a != ground && b != 0)
        .map(|(a, b)| (ground.difference(a), Rational::from_integer(b.into())));
    GenPermRep::from_entries(m.ground_size(), entries.collect::<Vec<_>>())
}

/// The independent-set polytope after the lift `e_i ↦ e_i`, `0 ↦ e_{m+1}`:
/// `y_{(E∖A)∪{m+1}} = β̃(M/A)` on `d = m + 1`. The lift of `D_∅` is a
/// translation and is dropped, so the result agrees with the lifted polytope
/// up to a shift along `e_{m+1}`.
pub fn independent_polytope_y(m: &Matroid) -> Result<GenPermRep> {
    require_nonempty(m, 1)?;
    let table = beta_table(m);
    let ground = m.ground();
    let apex = SubsetMask::singleton(m.ground_size() + 1);
    let entries = table
        .iter()
        .filter(|&(a, b)| a != ground && b != 0)
        .map(|(a, b)| (ground.difference(a).union(apex), Rational::from_integer(b.into())));
    GenPermRep::from_entries(m.ground_size() + 1, entries.collect::<Vec<_>>())
}

/// `Σ_{A⊊E} h_{|E∖A|−1} β̃(M/A)`.
pub fn beta_inequality(m: &Matroid) -> Rational {
    weighted_beta_sum(m, 0)
}

/// `Σ_{A⊆E} h_{|E∖A|} β̃(M/A)`.
pub fn beta_inequality_indep(m: &Matroid) -> Rational {
    weighted_beta_sum(m, 1)
}

fn weighted_beta_sum(m: &Matroid, offset: usize) -> Rational {
    let h = harmonic_table(m.ground_size() + 1);
    let ground = m.ground();
    let mut acc = Rational::zero();
    for (a, b) in beta_table(m).iter() {
        if a == ground || b == 0 {
            continue;
        }
        let size = ground.difference(a).len();
        acc += &h[size - 1 + offset] * Rational::from_integer(b.into());
    }
    acc
}

/// `z_I = r(E) − r(E ∖ I)`, the facet data of the matroid polytope.
pub fn matroid_polytope_z(m: &Matroid) -> Result<SetFunction> {
    require_nonempty(m, 0)?;
    let ground = m.ground();
    let r = m.rank_of_matroid() as i64;
    SetFunction::from_fn(m.ground_size(), |i| {
        Rational::from_integer((r - m.rank(ground.difference(i)) as i64).into())
    })
}
