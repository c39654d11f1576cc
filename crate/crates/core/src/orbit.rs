//! The Gauss map, its natural extension, and geodesic lengths.
//!
//! Lengths are always computed on the minimal even expansion: for a word of
//! odd minimal period the orbit logs are counted twice. The dual route
//! `2 acosh(tr/2)` through the B-product trace is exposed separately so the
//! two can be checked against each other.

use crate::error::{Error, Result};
use crate::sl2;
use crate::surd::QuadraticSurd;
use crate::word::{Parity, PeriodicWord};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// `T(x) = {1/x}` on `(0, 1]`.
pub fn gauss_map_real(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain {
            value: x,
            domain: "(0, 1]",
        });
    }
    let inv = 1.0 / x;
    Ok(inv - inv.floor())
}

/// Exact fixed point of the periodic expansion: the reduced quadratic surd
/// `x = [w repeating]`.
pub fn surd_from_word(w: &PeriodicWord) -> Result<QuadraticSurd> {
    let m = sl2::word_to_matrix(w);
    let tr = m.trace();
    let disc = &tr * &tr - BigInt::from(4) * m.det();
    let x = QuadraticSurd::new(&m.a - &m.d, disc, BigInt::from(2) * &m.c)?;
    debug_assert!(x.is_reduced());
    Ok(x)
}

/// One Gauss-map step on an exact periodic point: shifts the word one place
/// and returns the matching surd. Errors when `x` is not the surd of `w`.
pub fn gauss_map_surd(
    x: &QuadraticSurd,
    w: &PeriodicWord,
) -> Result<(QuadraticSurd, PeriodicWord)> {
    let expected = surd_from_word(w)?;
    if *x != expected {
        return Err(Error::InconsistentPair(format!(
            "{x} is not the periodic point of {w} (expected {expected})"
        )));
    }
    let (digit, next) = x.gauss_step();
    if digit != w.digits()[0] {
        return Err(Error::InconsistentPair(format!(
            "leading digit {digit} does not match word {w}"
        )));
    }
    Ok((next, w.rotate(1)))
}

/// The full T-orbit of the periodic point of a primitive word, starting at
/// `x = [w repeating]`; one surd per rotation.
pub fn orbit_points(w: &PeriodicWord) -> Result<Vec<QuadraticSurd>> {
    if !w.is_primitive() {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    let mut points = Vec::with_capacity(w.len());
    let mut x = surd_from_word(w)?;
    for _ in 0..w.len() {
        points.push(x.clone());
        x = x.gauss_step().1;
    }
    debug_assert_eq!(x, points[0]);
    Ok(points)
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Geodesic length of the primitive word: `-2 sum log(T^j x)` over the
/// minimal even expansion (twice the orbit sum when the period is odd).
pub fn geodesic_length(w: &PeriodicWord) -> Result<f64> {
    let points = orbit_points(w)?;
    let factor = match w.parity() {
        Parity::Even => 2.0,
        Parity::Odd => 4.0,
    };
    Ok(-factor * compensated_sum(points.iter().map(|p| p.to_f64().ln())))
}

/// Dual length formula `2 acosh(tr/2)` from the minimal even expansion trace.
pub fn length_from_trace(trace: &BigInt) -> f64 {
    let t = trace.to_f64().expect("trace representable as f64");
    2.0 * (t / 2.0).acosh()
}

/// `r_0(x, y) = -log(xy)/2`, the half return time of the cross-section.
pub fn return_time_r0(x: &QuadraticSurd, y: &QuadraticSurd) -> Result<f64> {
    for v in [x, y] {
        if !v.in_unit_interval() {
            return Err(Error::Domain {
                value: v.to_f64(),
                domain: "(0, 1)",
            });
        }
    }
    Ok(-0.5 * (x.to_f64() * y.to_f64()).ln())
}

/// One step of the extended map `That(x, y) = ({1/x}, 1/(y + [1/x]))`.
pub fn extended_map(x: &QuadraticSurd, y: &QuadraticSurd) -> (QuadraticSurd, QuadraticSurd) {
    let (digit, nx) = x.gauss_step();
    let ny = y.add_int(&BigInt::from(digit)).recip();
    (nx, ny)
}

/// Return time `r(sigma) = r_0(sigma) + r_0(That(sigma))`.
pub fn return_time(x: &QuadraticSurd, y: &QuadraticSurd) -> Result<f64> {
    let r0 = return_time_r0(x, y)?;
    let (nx, ny) = extended_map(x, y);
    Ok(r0 + return_time_r0(&nx, &ny)?)
}

/// Sums the return time over the full extended orbit of `(x, -1/conj(x))`
/// for the minimal even expansion; telescopes to the geodesic length.
pub fn return_time_orbit_sum(w: &PeriodicWord) -> Result<f64> {
    if !w.is_primitive() {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    let even = w.minimal_even_expansion();
    let mut x = surd_from_word(w)?;
    let mut y = x.neg_recip_conjugate();
    let mut terms = Vec::with_capacity(even.len());
    for _ in 0..even.len() {
        terms.push(return_time(&x, &y)?);
        let (nx, ny) = extended_map(&x, &y);
        x = nx;
        y = ny;
    }
    Ok(compensated_sum(terms))
}

/// Orbit data of one primitive word: points, length, alternating sum, parity.
#[derive(Debug, Clone)]
pub struct OrbitGeometry {
    pub word: PeriodicWord,
    pub orbit_points: Vec<QuadraticSurd>,
    pub length: f64,
    pub alt: i64,
    pub parity: Parity,
}

impl OrbitGeometry {
    pub fn new(word: PeriodicWord) -> Result<Self> {
        let orbit_points = orbit_points(&word)?;
        let length = geodesic_length(&word)?;
        let alt = word.alt_sum()?;
        let parity = word.parity();
        Ok(OrbitGeometry {
            word,
            orbit_points,
            length,
            alt,
            parity,
        })
    }
}
