//! The `t -> infinity` degenerations: the Toda connection, quantum Chevalley
//! operators for the flag variety, and the Toda and Calogero-Moser
//! Hamiltonians.
//!
//! All limits use the one substitution `q^beta -> t^{-(2 rho, beta)} q^beta`
//! together with the rescaled basis `w~ = t^{-l(w)} w`.

mod chevalley;
mod hamiltonians;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hecke::{monomials_up_to, Flavor, HeckeAlgebra, HeckeElement};
use crate::kernel::{t_limit, GradedSeries, KernelError, Lattice, Poly, TLaurent};
use crate::qconn::{connection_curvature, divisor_operator, unit_weight, QOperator};
use crate::roots::RootSystem;

pub use chevalley::{chevalley_check, ChevalleyReport, QuantumChevalley};
pub use hamiltonians::{
    cm_operator, etingof_limit_check, toda_casimir_check, toda_operator, CasimirReport, DiffOperator,
    EtingofReport, EtingofRow, QuadraticForm,
};

#[derive(Debug, thiserror::Error)]
pub enum LimitsError {
    #[error("quadratic form is not W-invariant")]
    NotInvariant,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// `x_lambda + sum_{alpha in R+'} (lambda, alpha^vee) q^{alpha^vee} sbar_alpha`, so that
/// the Toda connection is `d_lambda` minus this operator.
pub fn toda_connection(alg: &Arc<HeckeAlgebra>, lambda: &[i64], n: i64) -> QOperator {
    let rs = alg.root_system();
    let r = rs.rank();
    let mut op = GradedSeries::zero(r, n);
    op.add_term(Lattice::zero(r), alg.x(Flavor::Nil, lambda));
    for k in rs.r_plus_prime() {
        let a = rs.root(k);
        let cor = Lattice(a.coroot.clone());
        if cor.height() > n {
            continue;
        }
        let p = RootSystem::pair(lambda, &a.coroot);
        let sbar = alg.element(Flavor::Nil, alg.group().reflection(k));
        op.add_term(cor, sbar.scale_int(p));
    }
    op
}

/// Split `f(x, t)` as `sum_j t^j f_j(x)`.
pub fn split_t(alg: &HeckeAlgebra, f: &Poly) -> Vec<(i64, Poly)> {
    let tv = alg.t_var();
    let mut parts: std::collections::BTreeMap<i64, Poly> = Default::default();
    for (m, c) in f.terms() {
        let e = m.exponent(tv) as i64;
        parts
            .entry(e)
            .or_insert_with(|| Poly::zero(alg.nvars()))
            .add_term(m.without(tv), c.clone());
    }
    parts.into_iter().collect()
}

/// `lim_{t -> inf} t^shift f(x, t)`.
fn limit_of(alg: &HeckeAlgebra, f: &Poly, shift: i64) -> Result<Poly, KernelError> {
    let parts = split_t(alg, f);
    let floor = parts.first().map_or(0, |(e, _)| e + shift).min(0);
    let series = TLaurent::from_terms(Poly::zero(alg.nvars()), floor, parts.into_iter().map(|(e, p)| (e + shift, p)));
    t_limit(&series)
}

/// Rescale an `H_t`-valued series by `q^beta -> t^{-(2 rho, beta)} q^beta`,
/// rewrite `w = t^{l(w)} w~` and take `t -> infinity` coefficient-wise.
pub fn limit_operator(alg: &Arc<HeckeAlgebra>, op: &QOperator) -> Result<QOperator, KernelError> {
    let g = alg.group();
    let mut out = GradedSeries::with_window(op.rank(), op.floor(), op.max_height());
    for (beta, h) in op.iter() {
        let two_rho = 2 * beta.height();
        let mut e = alg.zero(Flavor::Nil);
        for (w, f) in h.terms() {
            let shift = g.element(w).length() as i64 - two_rho;
            e.add_term(w, limit_of(alg, f, shift)?);
        }
        out.add_term(beta.clone(), e);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRow {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    /// `(2 rho, alpha^vee)`.
    pub two_rho: i64,
    /// `l(s_alpha)`.
    pub length: usize,
    pub in_r_plus_prime: bool,
    /// `(lambda, alpha^vee)`.
    pub pairing: i64,
    /// The `q^{alpha^vee} sbar_alpha` term is present in the computed limit.
    pub survives: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TodaLimitReport {
    pub lambda: Vec<i64>,
    pub max_height: i64,
    /// The limit equals the Toda connection on the whole window.
    pub matches: bool,
    /// Set when some coefficient grows with `t`.
    pub divergence: Option<String>,
    pub roots: Vec<RootRow>,
}

impl TodaLimitReport {
    /// Limit matches and a root term survives exactly when the root lies in
    /// `R+'` and pairs nontrivially with `lambda`.
    pub fn ok(&self) -> bool {
        self.matches
            && self
                .roots
                .iter()
                .all(|r| r.survives == (r.in_r_plus_prime && r.pairing != 0))
    }
}

pub fn toda_limit_check(alg: &Arc<HeckeAlgebra>, lambda: &[i64], n: i64) -> TodaLimitReport {
    let rs = alg.root_system();
    let g = alg.group();
    let expected = toda_connection(alg, lambda, n);
    let limit = limit_operator(alg, &divisor_operator(alg, lambda, n));
    let (matches, divergence, limit) = match limit {
        Ok(l) => (l.sub(&expected).is_zero(), None, Some(l)),
        Err(e) => (false, Some(e.to_string()), None),
    };
    let prime = rs.r_plus_prime();
    let roots = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let refl = g.reflection(k);
            let survives = limit
                .as_ref()
                .and_then(|l| l.get(&Lattice(a.coroot.clone())))
                .is_some_and(|h| !h.coeff(refl).is_zero());
            RootRow {
                root: a.coords.clone(),
                coroot: a.coroot.clone(),
                two_rho: a.two_rho_pairing(),
                length: g.element(refl).length(),
                in_r_plus_prime: prime.contains(&k),
                pairing: RootSystem::pair(lambda, &a.coroot),
                survives,
            }
        })
        .collect();
    TodaLimitReport {
        lambda: lambda.to_vec(),
        max_height: n,
        matches,
        divergence,
        roots,
    }
}

/// Curvature of the Toda connection for every pair of fundamental weights.
pub fn toda_flatness(alg: &Arc<HeckeAlgebra>, n: i64) -> bool {
    let r = alg.rank();
    (0..r).all(|i| {
        (i + 1..r).all(|j| {
            let (l, m) = (unit_weight(r, i), unit_weight(r, j));
            let a = toda_connection(alg, &l, n);
            let b = toda_connection(alg, &m, n);
            connection_curvature(&a, &b, &l, &m).is_zero()
        })
    })
}

/// `t^{-l(w)} (w-action on M_t)` tends to the `wbar`-action on polynomials of
/// degree at most `max_degree`, for every `w`.
pub fn generator_limit_check(alg: &Arc<HeckeAlgebra>, max_degree: u32) -> Result<bool, KernelError> {
    let g = alg.group();
    let samples = monomials_up_to(alg, max_degree);
    for w in 0..g.len() {
        let word = g.element(w).word();
        for f in &samples {
            let ht = alg.act_word(Flavor::Ht, word, f)?;
            let lim = limit_of(alg, &ht, -(word.len() as i64))?;
            if lim != alg.act_word(Flavor::Nil, word, f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nil element with `HeckeElement` coefficients specialized at `t = 0`
/// (coefficients of Toda operators never involve `t`).
pub fn drop_t(alg: &HeckeAlgebra, h: &HeckeElement) -> HeckeElement {
    let mut pt = vec![None; alg.nvars()];
    pt[alg.t_var()] = Some(crate::kernel::rat(0));
    h.map_coeffs(|f| f.eval_partial(&pt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_limit() {
        let h = alg("A1");
        let rep = toda_limit_check(&h, &[1], 3);
        assert!(rep.matches, "{rep:?}");
        let op = toda_connection(&h, &[1], 3);
        assert_eq!(op.len(), 2);
    }

    #[test]
    fn g2_has_four_corrections() {
        let h = alg("G2");
        let op = toda_connection(&h, &[1, 1], 20);
        assert_eq!(op.len(), 1 + 4);
    }

    #[test]
    fn b2_nonprime_root_vanishes() {
        let h = alg("B2");
        let rep = toda_limit_check(&h, &[1, 1], 3);
        assert!(rep.matches);
        let row = rep.roots.iter().find(|r| r.root == vec![1, 1]).unwrap();
        assert!(!row.in_r_plus_prime && !row.survives);
        assert!(rep.ok());
        let rep = toda_limit_check(&h, &[1, 0], 3);
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn generators_degenerate_to_nil() {
        for t in ["A2", "B2"] {
            assert!(generator_limit_check(&alg(t), 4).unwrap(), "{t}");
        }
    }

    #[test]
    fn toda_is_flat() {
        for t in ["A2", "B2", "G2"] {
            assert!(toda_flatness(&alg(t), 4), "{t}");
        }
    }
}
