//! Rational reconstruction of truncated one-variable `q`-series with
//! coefficients in the parameter field.

use serde::{Deserialize, Serialize};

use super::ShiftOperator;
use crate::kernel::{rat, ratio, solve_linear, Coeff, Field, Lattice, Matrix, RatFunc, Rational};

/// `q^floor P(q) / Q(q)` with `Q(0) = 1`, agreeing with the data on every
/// available coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFit {
    pub floor: i64,
    pub numerator: Vec<RatFunc>,
    pub denominator: Vec<RatFunc>,
    /// Coefficients used to solve for the fit.
    pub used: usize,
    /// Coefficients available; those beyond `used` are independent checks.
    pub available: usize,
}

/// Denominator `1 + b_1 q + ... + b_n q^n` of a `[m/n]` Pade fit, if the
/// linear system for it is solvable.
fn pade_denominator<C: Field>(coeffs: &[C], m: usize, n: usize, one: &C) -> Option<Vec<C>> {
    let zero = one.zero_like();
    let c = |k: i64| if k < 0 { zero.clone() } else { coeffs[k as usize].clone() };
    let mut den = vec![one.clone()];
    if n > 0 {
        let rows = (0..n)
            .map(|i| (1..=n).map(|j| c((m + 1 + i) as i64 - j as i64)).collect())
            .collect();
        let rhs: Vec<C> = (0..n).map(|i| c((m + 1 + i) as i64).neg_ref()).collect();
        den.extend(solve_linear(&Matrix::from_rows(rows), &rhs).ok()?);
    }
    Some(den)
}

/// Coefficients of `den * series` through the window.
fn convolve<C: Field>(coeffs: &[C], den: &[C]) -> Vec<C> {
    (0..coeffs.len())
        .map(|k| {
            (0..den.len().min(k + 1)).fold(coeffs[0].zero_like(), |acc, j| acc.add_ref(&den[j].mul_ref(&coeffs[k - j])))
        })
        .collect()
}

fn fits<C: Field>(coeffs: &[C], m: usize, n: usize, one: &C) -> Option<(Vec<C>, Vec<C>)> {
    let den = pade_denominator(coeffs, m, n, one)?;
    let conv = convolve(coeffs, &den);
    conv[m + 1..].iter().all(Coeff::vanishes).then(|| (conv[..=m].to_vec(), den))
}

/// A point where every coefficient is defined, for screening candidate degrees.
fn screening_point(coeffs: &[RatFunc]) -> Option<Vec<Rational>> {
    let nv = coeffs.first()?.nvars();
    (0..8i64).find_map(|k| {
        let point: Vec<Rational> = (0..nv).map(|i| ratio(2 * (i as i64) + 1 + k, 7 + 2 * (i as i64) + 3 * k)).collect();
        coeffs.iter().all(|c| c.eval(&point).is_ok()).then_some(point)
    })
}

/// Smallest Pade fit `[m/n]` (by `m + n`) leaving at least `spare` coefficients
/// as independent checks. Candidate degrees are screened at a rational point
/// of the parameter space before being solved symbolically.
pub fn reconstruct_rational(coeffs: &[RatFunc], floor: i64, spare: usize) -> Option<RationalFit> {
    let len = coeffs.len();
    let nv = coeffs.first()?.nvars();
    let one = RatFunc::one(nv);
    let numeric: Option<Vec<Rational>> =
        screening_point(coeffs).map(|p| coeffs.iter().map(|c| c.eval(&p).expect("screened point")).collect());
    for d in 0..len {
        if d + 1 + spare > len {
            break;
        }
        for n in 0..=d {
            let m = d - n;
            if let Some(v) = &numeric {
                if fits(v, m, n, &rat(1)).is_none() {
                    continue;
                }
            }
            if let Some((numerator, denominator)) = fits(coeffs, m, n, &one) {
                return Some(RationalFit {
                    floor,
                    numerator,
                    denominator,
                    used: d + 1,
                    available: len,
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalEntry {
    pub row: usize,
    pub col: usize,
    /// `q^floor`-shifted numerator and denominator coefficients, low degree first.
    pub floor: i64,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub used: usize,
    pub available: usize,
}

/// Fit every entry of a rank-one shift operator; `None` marks an entry with
/// no fit inside the window.
pub fn reconstruct_entries(op: &ShiftOperator, names: &[&str], spare: usize) -> Vec<(usize, usize, Option<RationalEntry>)> {
    let s = &op.series;
    assert_eq!(s.rank(), 1, "reconstruction is implemented for rank one");
    let (floor, top) = (s.floor(), s.max_height());
    let dim = s.iter().next().map_or(0, |(_, m)| m.rows());
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let coeffs: Vec<RatFunc> = (floor..=top)
                .map(|h| {
                    s.get(&Lattice(vec![h]))
                        .map_or_else(|| RatFunc::zero(names.len()), |m| m[(i, j)].clone())
                })
                .collect();
            let fit = reconstruct_rational(&coeffs, floor, spare).map(|f| RationalEntry {
                row: i,
                col: j,
                floor: f.floor,
                numerator: f.numerator.iter().map(|c| c.fmt_with(names)).collect(),
                denominator: f.denominator.iter().map(|c| c.fmt_with(names)).collect(),
                used: f.used,
                available: f.available,
            });
            out.push((i, j, fit));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    #[test]
    fn geometric_series() {
        // q / (1 - q)^2 = sum k q^k
        let coeffs: Vec<RatFunc> = (0..8).map(|k| RatFunc::constant(1, rat(k))).collect();
        let fit = reconstruct_rational(&coeffs, 0, 2).unwrap();
        assert_eq!(fit.denominator.len(), 3);
        assert_eq!(fit.denominator[1], RatFunc::from_int(1, -2));
        assert_eq!(fit.used, 4);
    }

    #[test]
    fn too_short_window_fails() {
        let coeffs: Vec<RatFunc> = [1, 3, 9, 28].iter().map(|&k| RatFunc::from_int(1, k)).collect();
        assert!(reconstruct_rational(&coeffs, 0, 2).is_none());
    }
}
