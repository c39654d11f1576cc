//! Gauss-measure machinery and equidistribution diagnostics.

use crate::census::{Census, Filter};
use crate::error::{Error, Result};

/// `log(1+x)/log 2`, the Gauss-measure CDF on `[0, 1]`.
pub fn gauss_cdf(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(x.ln_1p() / std::f64::consts::LN_2)
}

/// Integral of a polynomial (monomial coefficients, constant first) against
/// the Gauss measure, by the alternating-harmonic reduction of
/// `int_0^1 x^k/(1+x) dx`.
pub fn gauss_integral(coeffs: &[f64]) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let mut ik = ln2; // I_0
    let mut total = coeffs.first().copied().unwrap_or(0.0) * ik;
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        ik = 1.0 / k as f64 - ik;
        total += c * ik;
    }
    total / ln2
}

/// Points in `(0,1)` with optional positive weights.
#[derive(Debug, Clone)]
pub struct EmpiricalSample {
    points: Vec<f64>,
    weights: Option<Vec<f64>>,
}

impl EmpiricalSample {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        Self::validate(&points)?;
        Ok(EmpiricalSample {
            points,
            weights: None,
        })
    }

    pub fn weighted(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        Self::validate(&points)?;
        if weights.len() != points.len() {
            return Err(Error::WeightMismatch {
                points: points.len(),
                weights: weights.len(),
            });
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidParameter("weights must be positive".into()));
        }
        Ok(EmpiricalSample {
            points,
            weights: Some(weights),
        })
    }

    fn validate(points: &[f64]) -> Result<()> {
        if points.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(&bad) = points.iter().find(|&&p| !(p > 0.0 && p < 1.0)) {
            return Err(Error::Domain {
                value: bad,
                domain: "(0, 1)",
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Kolmogorov-Smirnov distance between the empirical CDF and the Gauss CDF.
pub fn ks_distance(sample: &EmpiricalSample) -> Result<f64> {
    let mut idx: Vec<usize> = (0..sample.points.len()).collect();
    idx.sort_by(|&i, &j| sample.points[i].total_cmp(&sample.points[j]));
    let total: f64 = match &sample.weights {
        Some(w) => w.iter().sum(),
        None => sample.points.len() as f64,
    };
    let mut cum = 0.0;
    let mut sup: f64 = 0.0;
    for &i in &idx {
        let f = gauss_cdf(sample.points[i])?;
        let before = cum / total;
        cum += sample.weights.as_ref().map_or(1.0, |w| w[i]);
        let after = cum / total;
        sup = sup.max((f - before).abs()).max((f - after).abs());
    }
    Ok(sup)
}

// ---------------------------------------------------------------------------
// Pair distribution against the extended invariant measure
// ---------------------------------------------------------------------------

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
                + rec(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// Mass of the rectangle `[x1,x2] x [y1,y2]` under
/// `d nu-tilde = dx dy / (log 2 (1+xy)^2)`, by adaptive quadrature of the
/// exact inner integral.
pub fn nu_tilde_rect_mass(x1: f64, x2: f64, y1: f64, y2: f64) -> f64 {
    let g = |x: f64| (y2 - y1) / ((1.0 + x * y1) * (1.0 + x * y2));
    adaptive_simpson(&g, x1, x2, 1e-10) / std::f64::consts::LN_2
}

/// Sup distance between the empirical pair distribution and nu-tilde over
/// anchored rectangles `[0, i/g] x [0, j/g]` on a dyadic grid.
pub fn pair_discrepancy(pairs: &[(f64, f64)]) -> Result<f64> {
    const GRID: usize = 16;
    if pairs.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut cells = [[0u64; GRID]; GRID];
    for &(x, y) in pairs {
        if !(0.0..1.0).contains(&x) || !(0.0..1.0).contains(&y) {
            return Err(Error::Domain {
                value: x,
                domain: "[0, 1)^2",
            });
        }
        let i = ((x * GRID as f64) as usize).min(GRID - 1);
        let j = ((y * GRID as f64) as usize).min(GRID - 1);
        cells[i][j] += 1;
    }
    let total = pairs.len() as f64;
    let mut sup: f64 = 0.0;
    // cumulative counts over anchored rectangles
    let mut cum = [[0u64; GRID + 1]; GRID + 1];
    for i in 1..=GRID {
        for j in 1..=GRID {
            cum[i][j] = cells[i - 1][j - 1] + cum[i - 1][j] + cum[i][j - 1] - cum[i - 1][j - 1];
        }
    }
    for i in 1..=GRID {
        for j in 1..=GRID {
            let a = i as f64 / GRID as f64;
            let b = j as f64 / GRID as f64;
            let emp = cum[i][j] as f64 / total;
            let mass = nu_tilde_rect_mass(0.0, a, 0.0, b);
            sup = sup.max((emp - mass).abs());
        }
    }
    Ok(sup)
}

/// Pair-equidistribution diagnostic over all census points with `ell <= t`.
pub fn pair_distribution_check(census: &Census, t: f64) -> Result<f64> {
    let pairs = census.pairs_sample(Filter::All, t)?;
    pair_discrepancy(&pairs)
}

/// KS diagnostic of the orbit points in the symmetrized class `|lk| = n`.
pub fn ks_of_class(census: &Census, n: i64, t: f64) -> Result<f64> {
    let sample = EmpiricalSample::new(census.points_sample(Filter::LkAbs(n), t)?)?;
    ks_distance(&sample)
}

/// Mean return time `Lambda(T)/|Q(T)|`; converges to `pi^2 / (3 log 2)`.
pub fn mean_return_time(census: &Census, t: f64) -> Result<f64> {
    let (total_length, points) = census.length_point_totals(t)?;
    if points == 0 {
        return Err(Error::EmptySample);
    }
    Ok(total_length / points as f64)
}

/// The limit constant `pi^2 / (3 log 2)` of the mean return time.
pub fn mean_return_constant() -> f64 {
    std::f64::consts::PI.powi(2) / (3.0 * std::f64::consts::LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::EnumerationConfig;

    #[test]
    fn cdf_examples() {
        assert_eq!(gauss_cdf(0.0).unwrap(), 0.0);
        assert!((gauss_cdf(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gauss_cdf(0.5).unwrap() - 0.5849625007211562).abs() < 1e-12);
        assert!(gauss_cdf(-0.1).is_err());
        assert!(gauss_cdf(1.1).is_err());
    }

    #[test]
    fn cdf_monotone() {
        let mut prev = 0.0;
        for i in 1..=100 {
            let v = gauss_cdf(i as f64 / 100.0).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn integral_examples() {
        let ln2 = std::f64::consts::LN_2;
        assert!((gauss_integral(&[1.0]) - 1.0).abs() < 1e-14);
        assert!((gauss_integral(&[0.0, 1.0]) - (1.0 / ln2 - 1.0)).abs() < 1e-14);
        let expect = (ln2 - 0.5) / ln2;
        assert!((gauss_integral(&[0.0, 0.0, 1.0]) - expect).abs() < 1e-14);
        // linearity
        let a = gauss_integral(&[0.5, 2.0, -1.0]);
        let b = 0.5 * gauss_integral(&[1.0]) + 2.0 * gauss_integral(&[0.0, 1.0])
            - gauss_integral(&[0.0, 0.0, 1.0]);
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn ks_quantile_construction() {
        let m = 200;
        let ln2 = std::f64::consts::LN_2;
        // F^{-1}(p) = 2^p - 1
        let points: Vec<f64> = (1..=m)
            .map(|i| ((i as f64 - 0.5) / m as f64 * ln2).exp() - 1.0)
            .collect();
        let d = ks_distance(&EmpiricalSample::new(points).unwrap()).unwrap();
        assert!(d <= 0.5 / m as f64 + 1e-12, "d = {d}");
    }

    #[test]
    fn ks_single_far_point() {
        let d = ks_distance(&EmpiricalSample::new(vec![0.999]).unwrap()).unwrap();
        let expect = gauss_cdf(0.999).unwrap();
        assert!((d - expect).abs() < 1e-12);
    }

    #[test]
    fn ks_permutation_invariant() {
        let a = vec![0.4, 0.1, 0.9, 0.25];
        let mut b = a.clone();
        b.reverse();
        let da = ks_distance(&EmpiricalSample::new(a).unwrap()).unwrap();
        let db = ks_distance(&EmpiricalSample::new(b).unwrap()).unwrap();
        assert_eq!(da, db);
    }

    #[test]
    fn empty_sample_rejected() {
        assert!(matches!(EmpiricalSample::new(vec![]), Err(Error::EmptySample)));
    }

    #[test]
    fn nu_tilde_total_mass_and_marginal() {
        // total mass 1
        assert!((nu_tilde_rect_mass(0.0, 1.0, 0.0, 1.0) - 1.0).abs() < 1e-9);
        // closed form: mass([0,a]x[0,b]) = log(1+ab)/log 2
        for a in [0.25, 0.5, 0.8125] {
            for b in [0.125, 0.5, 1.0] {
                let expect = (1.0 + a * b).ln() / std::f64::consts::LN_2;
                let got = nu_tilde_rect_mass(0.0, a, 0.0, b);
                assert!((got - expect).abs() < 1e-9, "a={a} b={b}");
            }
            // marginal equals the Gauss CDF
            let got = nu_tilde_rect_mass(0.0, a, 0.0, 1.0);
            assert!((got - gauss_cdf(a).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn mean_return_degenerate_census() {
        let census = Census::build(&EnumerationConfig::new(2.0)).unwrap();
        let mean = mean_return_time(&census, 2.0).unwrap();
        assert!((mean - 2.0 * 1.5f64.acosh()).abs() < 1e-12);
    }

    #[test]
    fn ks_decreases_with_census_depth() {
        let census = Census::build(&EnumerationConfig::new(10.0)).unwrap();
        let d8 = ks_of_class(&census, 0, 8.0).unwrap();
        let d10 = ks_of_class(&census, 0, 10.0).unwrap();
        assert!(d10 < d8, "KS {d10} !< {d8}");
    }

    #[test]
    fn pair_discrepancy_decreases() {
        let census = Census::build(&EnumerationConfig::new(10.0)).unwrap();
        let d8 = pair_distribution_check(&census, 8.0).unwrap();
        let d10 = pair_distribution_check(&census, 10.0).unwrap();
        assert!(d10 < d8, "pair discrepancy {d10} !< {d8}");
    }
}
