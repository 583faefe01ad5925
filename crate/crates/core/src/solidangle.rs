//! Solid-angle sums of dilates of the regular tetrahedron `Δ_4` and the
//! linear coefficient `A_1` of 4-dimensional generalized permutahedra.
//!
//! The edge angle is transcendental, so this module works in `f64`.

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::genperm::{validate_y, GenPermRep};
use crate::setfun::SubsetMask;
use crate::Rational;

/// Solid angles of `Δ_4` at a lattice point in its interior, on a facet, on
/// an edge, and at a vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleConstants {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: Option<f64>,
}

impl Default for AngleConstants {
    fn default() -> Self {
        AngleConstants {
            alpha: 1.0,
            beta: 0.5,
            gamma: (1.0f64 / 3.0).acos() / (2.0 * std::f64::consts::PI),
            delta: None,
        }
    }
}

/// `A_1(Δ_4) = 6γ − 7/6 = (3/π) arccos(1/3) − 7/6`.
pub fn tetra_linear_coeff() -> f64 {
    6.0 * AngleConstants::default().gamma - 7.0 / 6.0
}

/// `C(n − 1, k)` as a polynomial in `n`, constant term first.
fn shifted_binomial(k: usize) -> Vec<Rational> {
    let mut poly = vec![Rational::one()];
    let mut fact = Rational::one();
    for i in 0..k {
        // multiply by (n − 1 − i)
        let root = -Rational::from_integer((1 + i as i64).into());
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j] += c * &root;
            next[j + 1] += c;
        }
        poly = next;
        fact *= Rational::from_integer((i as i64 + 1).into());
    }
    poly.into_iter().map(|c| c / &fact).collect()
}

/// Coefficients (constant first) of
/// `A(nΔ_4) = α C(n−1,3) + 4β C(n−1,2) + 6γ (n−1) + 4δ`.
pub fn solid_angle_poly_tetra(delta: f64) -> Result<[f64; 4]> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::ParameterOutOfRange(format!(
            "vertex solid angle must lie in (0, 1), got {delta}"
        )));
    }
    let angles = AngleConstants {
        delta: Some(delta),
        ..AngleConstants::default()
    };
    let terms = [(angles.alpha, 3), (4.0 * angles.beta, 2), (6.0 * angles.gamma, 1)];
    let mut out = [0.0; 4];
    for (weight, k) in terms {
        for (j, c) in shifted_binomial(k).iter().enumerate() {
            out[j] += weight * c.to_f64().expect("small rational");
        }
    }
    out[0] += 4.0 * delta;
    Ok(out)
}

/// `A_1` of a valid integral rep with `d = 4`.
///
/// `A_1` is Minkowski additive and vanishes on simplices of dimension below
/// three, so only the coefficient of `Δ_{[4]}` contributes.
pub fn a1_genperm_d4(rep: &GenPermRep) -> Result<f64> {
    if rep.d() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rep.d(),
        });
    }
    if !rep.is_integral() {
        return Err(Error::NotIntegral(
            "a1_genperm_d4 needs integer coefficients".into(),
        ));
    }
    if let Some(w) = validate_y(rep).witness() {
        return Err(Error::InvalidRep(w.clone()));
    }
    let top = rep.y().get(SubsetMask::full(4));
    Ok(top.to_f64().expect("integer coefficient") * tetra_linear_coeff())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genperm::pairs;
    use crate::rat;

    fn q_rep() -> GenPermRep {
        let mut entries: Vec<_> = pairs(4).map(|p| (p, rat(1))).collect();
        entries.push((SubsetMask::full(4), rat(-1)));
        GenPermRep::from_entries(4, entries).unwrap()
    }

    #[test]
    fn linear_coefficient_value() {
        let v = tetra_linear_coeff();
        assert!((v - 0.00881298).abs() < 1e-6);
        assert!(v > 0.0);
        let gamma = AngleConstants::default().gamma;
        assert!(gamma > 0.0 && gamma < 0.5);
    }

    #[test]
    fn polynomial_expansion() {
        // independent oracle: evaluate the binomials directly and fit
        let delta = 0.25;
        let coeffs = solid_angle_poly_tetra(delta).unwrap();
        let gamma = AngleConstants::default().gamma;
        for n in 0..8i64 {
            let c3 = ((n - 1) * (n - 2) * (n - 3)) as f64 / 6.0;
            let c2 = ((n - 1) * (n - 2)) as f64 / 2.0;
            let direct = c3 + 2.0 * c2 + 6.0 * gamma * (n - 1) as f64 + 4.0 * delta;
            let nf = n as f64;
            let poly = coeffs[0] + coeffs[1] * nf + coeffs[2] * nf * nf + coeffs[3] * nf * nf * nf;
            assert!((direct - poly).abs() < 1e-9, "n = {n}");
        }
        assert!((coeffs[3] - 1.0 / 6.0).abs() < 1e-12);
        assert!((coeffs[1] - tetra_linear_coeff()).abs() < 1e-12);
        assert!((coeffs[0] - (2.0 - 6.0 * gamma)).abs() < 1e-12);
    }

    #[test]
    fn delta_only_moves_the_constant() {
        let a = solid_angle_poly_tetra(0.1).unwrap();
        let b = solid_angle_poly_tetra(0.4).unwrap();
        assert_eq!(a[1..], b[1..]);
        assert!(solid_angle_poly_tetra(0.0).is_err());
        assert!(solid_angle_poly_tetra(1.0).is_err());
        assert!(solid_angle_poly_tetra(f64::NAN).is_err());
    }

    #[test]
    fn q_has_negative_linear_term() {
        let q = a1_genperm_d4(&q_rep()).unwrap();
        assert!((q + 0.00881298).abs() < 1e-6);
        let simplex = GenPermRep::from_entries(4, vec![(SubsetMask::full(4), rat(1))]).unwrap();
        assert!((a1_genperm_d4(&simplex).unwrap() - 0.00881298).abs() < 1e-6);
        let flat = GenPermRep::from_entries(4, pairs(4).map(|p| (p, rat(2))).collect::<Vec<_>>()).unwrap();
        assert_eq!(a1_genperm_d4(&flat).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        let d3 = GenPermRep::from_entries(3, vec![(SubsetMask::full(3), rat(1))]).unwrap();
        assert!(a1_genperm_d4(&d3).is_err());
        let bad = GenPermRep::from_entries(4, vec![(SubsetMask::full(4), rat(-1))]).unwrap();
        assert!(matches!(a1_genperm_d4(&bad), Err(Error::InvalidRep(_))));
        let half =
            GenPermRep::from_entries(4, vec![(SubsetMask::full(4), Rational::new(1.into(), 2.into()))])
                .unwrap();
        assert!(matches!(a1_genperm_d4(&half), Err(Error::NotIntegral(_))));
    }
}
