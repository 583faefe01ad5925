//! Random instances and brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use genperm::setfun::{mobius_transform, SetFunction, SubsetMask};
use genperm::{rat, GenPermRep, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(d: usize, elements: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(d, elements).unwrap()
}

pub fn q(p: i64, r: i64) -> Rational {
    Rational::new(p.into(), r.into())
}

pub fn rep(d: usize, entries: &[(&[usize], i64)]) -> GenPermRep {
    GenPermRep::from_entries(d, entries.iter().map(|(s, v)| (set(d, s), rat(*v)))).unwrap()
}

pub fn simplex(d: usize) -> GenPermRep {
    GenPermRep::from_entries(d, [(SubsetMask::full(d), rat(1))]).unwrap()
}

/// `Π_d = Σ_{|I|=2} Δ_I`.
pub fn permutahedron(d: usize) -> GenPermRep {
    let entries = SubsetMask::all(d).filter(|s| s.len() == 2).map(|s| (s, rat(1)));
    GenPermRep::from_entries(d, entries).unwrap()
}

pub fn hypersimplex_2_3() -> GenPermRep {
    rep(3, &[(&[1, 2], 1), (&[1, 3], 1), (&[2, 3], 1), (&[1, 2, 3], -1)])
}

/// Uniform integer entries on every nonempty set, each nonzero with
/// probability `density`.
pub fn random_integer_y(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64, density: f64) -> SetFunction {
    SetFunction::from_fn(d, |s| {
        if s.is_empty() || !rng.gen_bool(density) {
            rat(0)
        } else {
            rat(rng.gen_range(lo..=hi))
        }
    })
    .unwrap()
}

/// Brute-force validity: every interval sum `Σ_{E⊆I⊆T} y_I` with `|E| = 2`
/// is nonnegative, summed term by term.
pub fn interval_sums_nonnegative(y: &SetFunction) -> bool {
    let d = y.d();
    SubsetMask::all(d).filter(|e| e.len() == 2).all(|e| {
        SubsetMask::all(d).filter(|t| e.is_subset_of(*t)).all(|t| {
            let sum: Rational = SubsetMask::all(d)
                .filter(|i| e.is_subset_of(*i) && i.is_subset_of(t))
                .map(|i| y.get(i).clone())
                .sum();
            sum >= rat(0)
        })
    })
}

/// Brute-force zeta transform `z_I = Σ_{J⊆I} y_J`.
pub fn zeta_oracle(y: &SetFunction) -> SetFunction {
    SetFunction::from_fn(y.d(), |i| {
        SubsetMask::all(y.d())
            .filter(|j| j.is_subset_of(i))
            .map(|j| y.get(j).clone())
            .sum()
    })
    .unwrap()
}

/// Supermodularity over all pairs `I, J`, not just the local inequalities.
pub fn supermodular_oracle(z: &SetFunction) -> bool {
    let d = z.d();
    SubsetMask::all(d).all(|i| {
        SubsetMask::all(d).all(|j| z.get(i) + z.get(j) <= z.get(i.union(j)) + z.get(i.intersection(j)))
    })
}

/// Rejection-sampled valid integer rep.
pub fn random_valid_integer_rep(
    rng: &mut ChaCha8Rng,
    d: usize,
    lo: i64,
    hi: i64,
    density: f64,
) -> GenPermRep {
    loop {
        let y = random_integer_y(rng, d, lo, hi, density);
        if interval_sums_nonnegative(&y) {
            return GenPermRep::new(y).unwrap();
        }
    }
}

/// `z(I) = Σ_k a_k · max(0, w_k(I) − c_k)` with `w_k ≥ 0`, `c_k ≥ 0`, `a_k > 0`
/// is supermodular (convex of modular), so its Möbius transform is a valid
/// rep. Weights come from `weight`; hinge count is `hinges`.
pub fn hinge_rep(
    rng: &mut ChaCha8Rng,
    d: usize,
    hinges: usize,
    mut weight: impl FnMut(&mut ChaCha8Rng) -> Rational,
    mut offset: impl FnMut(&mut ChaCha8Rng) -> Rational,
    mut scale: impl FnMut(&mut ChaCha8Rng) -> Rational,
) -> GenPermRep {
    let mut z = SetFunction::zeros(d).unwrap();
    for _ in 0..hinges {
        let w: Vec<Rational> = (0..d).map(|_| weight(rng)).collect();
        let c = offset(rng);
        let a = scale(rng);
        for s in SubsetMask::all(d) {
            let total: Rational = s.iter().map(|i| w[i - 1].clone()).sum();
            let hinge = if total > c { total - &c } else { rat(0) };
            let v = z.get(s) + &a * hinge;
            z.set(s, v);
        }
    }
    // a random translation keeps singletons honest
    for i in 1..=d {
        let shift = rat(rng.gen_range(-2..=2));
        for s in SubsetMask::all(d).filter(|s| s.contains(i)) {
            let v = z.get(s) + &shift;
            z.set(s, v);
        }
    }
    GenPermRep::new(mobius_transform(&z).unwrap()).unwrap()
}

/// Integral valid rep from a small hinge sum.
pub fn random_hinge_integer_rep(
    rng: &mut ChaCha8Rng,
    d: usize,
    max_weight: i64,
    hinges: usize,
) -> GenPermRep {
    let max_offset = max_weight * d as i64;
    hinge_rep(
        rng,
        d,
        hinges,
        |r| rat(r.gen_range(0..=max_weight)),
        |r| rat(r.gen_range(0..=max_offset)),
        |_| rat(1),
    )
}

/// Rational valid rep from a hinge sum with rational weights.
pub fn random_rational_rep(rng: &mut ChaCha8Rng, d: usize) -> GenPermRep {
    let hinges = rng.gen_range(1..=4);
    hinge_rep(
        rng,
        d,
        hinges,
        |r| q(r.gen_range(0..=6), r.gen_range(1..=4)),
        |r| q(r.gen_range(0..=12), r.gen_range(1..=3)),
        |r| q(r.gen_range(1..=5), r.gen_range(1..=5)),
    )
}

/// `z'_I = z_{σ(I)}` for a permutation `σ` of `[d]` (0-based images).
pub fn relabel(f: &SetFunction, sigma: &[usize]) -> SetFunction {
    SetFunction::from_fn(f.d(), |s| {
        let image = s.iter().fold(SubsetMask::EMPTY, |acc, i| {
            acc.union(SubsetMask::singleton(sigma[i - 1] + 1))
        });
        f.get(image).clone()
    })
    .unwrap()
}

/// Brute-force lattice-point count: scan the bounding box
/// `z_i ≤ x_i ≤ z_[d] − z_{[d]∖i}` and test every inequality.
pub fn count_box_oracle(z: &SetFunction) -> u64 {
    let d = z.d();
    let full = SubsetMask::full(d);
    let to_i64 = |v: &Rational| -> i64 { v.to_integer().try_into().unwrap() };
    let lo: Vec<i64> = (1..=d).map(|i| to_i64(z.get(SubsetMask::singleton(i)))).collect();
    let hi: Vec<i64> = (1..=d)
        .map(|i| to_i64(&(z.get(full) - z.get(full.difference(SubsetMask::singleton(i))))))
        .collect();
    let total = to_i64(z.get(full));
    let mut count = 0;
    let mut x = lo.clone();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return 0;
    }
    loop {
        if x.iter().sum::<i64>() == total
            && SubsetMask::all(d).all(|s| s.iter().map(|i| x[i - 1]).sum::<i64>() >= to_i64(z.get(s)))
        {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == d {
                return count;
            }
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
    }
}
