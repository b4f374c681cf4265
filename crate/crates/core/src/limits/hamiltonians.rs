//! Second-order Hamiltonians: the trigonometric Calogero-Moser operator, the
//! Toda operator, and the Casimir identity for the Toda connection.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::LimitsError;
use crate::hecke::{Flavor, HeckeAlgebra};
use crate::kernel::{rat, t_limit, GradedSeries, Lattice, Matrix, Poly, Rational, TLaurent};
use crate::qconn::unit_weight;
use crate::roots::RootSystem;

/// A symmetric form on weights, stored as its Gram matrix on fundamental weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    gram: Matrix<Rational>,
    inverse: Matrix<Rational>,
}

impl QuadraticForm {
    /// Invariant form with `(alpha, alpha) = 1` on short roots.
    pub fn killing(rs: &RootSystem) -> Self {
        Self::new(rs, rs.weight_gram()).expect("the normalized form is invariant")
    }

    pub fn new(rs: &RootSystem, gram: Matrix<Rational>) -> Result<Self, LimitsError> {
        let inverse = gram.inverse()?;
        let form = QuadraticForm { gram, inverse };
        if !form.is_invariant(rs) {
            return Err(LimitsError::NotInvariant);
        }
        Ok(form)
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// `C(s_i lambda, s_i mu) = C(lambda, mu)` for every simple reflection.
    pub fn is_invariant(&self, rs: &RootSystem) -> bool {
        let r = rs.rank();
        if self.gram.rows() != r || self.gram.transpose() != self.gram {
            return false;
        }
        (0..r).all(|i| {
            let cols: Vec<Vec<i64>> = (0..r).map(|j| rs.reflect_weight(i, &unit_weight(r, j))).collect();
            let s = Matrix::from_rows((0..r).map(|a| (0..r).map(|b| rat(cols[b][a])).collect()).collect());
            s.transpose().mul(&self.gram).mul(&s) == self.gram
        })
    }

    /// The basis `lambda_i = omega_i`.
    pub fn lambdas(&self) -> Vec<Vec<Rational>> {
        let r = self.rank();
        (0..r).map(|i| unit_weight(r, i).into_iter().map(rat).collect()).collect()
    }

    /// The dual basis `mu_i` with `C(mu_i, lambda_j) = delta_ij`.
    pub fn mus(&self) -> Vec<Vec<Rational>> {
        let r = self.rank();
        (0..r).map(|i| self.inverse.row(i).to_vec()).collect()
    }

    /// `sum_i mu_i lambda_i` as a polynomial in `x_{omega_1}, ..., x_{omega_r}`.
    pub fn casimir(&self, nvars: usize) -> Poly {
        let r = self.rank();
        let mut c = Poly::zero(nvars);
        for i in 0..r {
            for j in 0..r {
                let xij = &Poly::var(nvars, i) * &Poly::var(nvars, j);
                c += &xij.scale(&self.inverse[(i, j)]);
            }
        }
        c
    }

    /// `(beta, beta)` for the induced form on the coroot lattice.
    pub fn coroot_norm(&self, coroot: &[i64]) -> Rational {
        let r = self.rank();
        let mut acc = Rational::zero();
        for i in 0..r {
            for j in 0..r {
                acc += rat(coroot[i] * coroot[j]) * &self.inverse[(i, j)];
            }
        }
        acc
    }
}

/// `Laplacian(C) + potential`, the potential a `q`-series with coefficients in `Q[t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOperator {
    /// Gram matrix of the highest symbol on the dual of the weight lattice.
    pub symbol: Matrix<Rational>,
    pub potential: GradedSeries<Poly>,
}

fn t_poly() -> Poly {
    Poly::var(1, 0)
}

/// `Laplacian - sum_{alpha simple} (alpha^vee, alpha^vee) q^{alpha^vee}`.
pub fn toda_operator(rs: &RootSystem, form: &QuadraticForm, n: i64) -> Result<DiffOperator, LimitsError> {
    if !form.is_invariant(rs) {
        return Err(LimitsError::NotInvariant);
    }
    let r = rs.rank();
    let mut potential = GradedSeries::zero(r, n);
    for i in 0..r {
        let a = rs.root(rs.simple_root_index(i));
        potential.add_term(Lattice(a.coroot.clone()), Poly::constant(1, -form.coroot_norm(&a.coroot)));
    }
    Ok(DiffOperator {
        symbol: form.inverse.clone(),
        potential,
    })
}

/// Contribution of one positive root to the Calogero-Moser potential:
/// `-t(t-1)(alpha^vee, alpha^vee) q^{alpha^vee}/(1 - q^{alpha^vee})^2`, expanded through height `n`.
fn cm_root_potential(rs: &RootSystem, form: &QuadraticForm, k: usize, n: i64) -> GradedSeries<Poly> {
    let r = rs.rank();
    let t = t_poly();
    let a = rs.root(k);
    let factor = (&t * &(&t - &Poly::one(1))).scale(&-form.coroot_norm(&a.coroot));
    let cor = Lattice(a.coroot.clone());
    let mut out = GradedSeries::zero(r, n);
    let mut d = 1;
    while d * cor.height() <= n {
        out.add_term(cor.scale(d), factor.scale(&rat(d)));
        d += 1;
    }
    out
}

/// `Laplacian - t(t-1) sum_{alpha > 0} (alpha^vee, alpha^vee) / (q^{alpha^vee/2} - q^{-alpha^vee/2})^2`.
pub fn cm_operator(rs: &RootSystem, form: &QuadraticForm, n: i64) -> DiffOperator {
    let mut potential = GradedSeries::zero(rs.rank(), n);
    for k in 0..rs.positive_roots().len() {
        potential = potential.add(&cm_root_potential(rs, form, k, n));
    }
    DiffOperator {
        symbol: form.inverse.clone(),
        potential,
    }
}

/// `lim_{t -> inf}` of a series after `q^beta -> t^{-(2 rho, beta)} q^beta`.
fn rescaled_limit(series: &GradedSeries<Poly>) -> Result<GradedSeries<Poly>, LimitsError> {
    let mut out = GradedSeries::with_window(series.rank(), series.floor(), series.max_height());
    for (beta, p) in series.iter() {
        let shift = -2 * beta.height();
        let coeffs = p.coefficients_in(0);
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(e, c)| (e as i64 + shift, c.constant_term()));
        let floor = shift.min(0);
        let lim = t_limit(&TLaurent::from_terms(Rational::zero(), floor, terms))?;
        out.add_term(beta.clone(), Poly::constant(1, lim));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtingofRow {
    pub root: Vec<i64>,
    pub two_rho: i64,
    pub is_simple: bool,
    /// Limit of the `q^{alpha^vee}` coefficient of this root's potential.
    pub limit: String,
    pub survives: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtingofReport {
    pub max_height: i64,
    pub matches_toda: bool,
    pub symbol_unchanged: bool,
    pub divergence: Option<String>,
    pub roots: Vec<EtingofRow>,
}

impl EtingofReport {
    pub fn ok(&self) -> bool {
        self.matches_toda
            && self.symbol_unchanged
            && self.divergence.is_none()
            && self.roots.iter().all(|r| r.survives == r.is_simple)
    }
}

pub fn etingof_limit_check(rs: &RootSystem, form: &QuadraticForm, n: i64) -> Result<EtingofReport, LimitsError> {
    let toda = toda_operator(rs, form, n)?;
    let cm = cm_operator(rs, form, n);
    let mut roots = Vec::new();
    let mut divergence = None;
    let mut total = GradedSeries::zero(rs.rank(), n);
    for (k, a) in rs.positive_roots().iter().enumerate() {
        match rescaled_limit(&cm_root_potential(rs, form, k, n)) {
            Ok(lim) => {
                let c = lim.get(&Lattice(a.coroot.clone())).map(|p| p.constant_term()).unwrap_or_default();
                roots.push(EtingofRow {
                    root: a.coords.clone(),
                    two_rho: a.two_rho_pairing(),
                    is_simple: a.is_simple(),
                    limit: c.to_string(),
                    survives: !c.is_zero(),
                });
                total = total.add(&lim);
            }
            Err(e) => divergence = Some(e.to_string()),
        }
    }
    let whole = rescaled_limit(&cm.potential).ok();
    let matches_toda = divergence.is_none() && whole.as_ref() == Some(&toda.potential) && total == toda.potential;
    Ok(EtingofReport {
        max_height: n,
        matches_toda,
        symbol_unchanged: cm.symbol == toda.symbol,
        divergence,
        roots,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirReport {
    pub max_height: i64,
    /// `nabla_lambda (1 (x) 1) = -1 (x) lambda` for every basis weight.
    pub first_derivative: bool,
    pub matches: bool,
    /// Nonzero grades of `Delta(1 (x) 1)`, rendered.
    pub computed: Vec<(Vec<i64>, String)>,
}

impl CasimirReport {
    pub fn ok(&self) -> bool {
        self.first_derivative && self.matches
    }
}

/// Sections of the trivial bundle with fiber the nil module, `q`-graded.
type Section = GradedSeries<Poly>;

/// `d_lambda F - x_lambda F - sum_{alpha in R+'} (lambda, alpha^vee) q^{alpha^vee} sbar_alpha F`
/// for a weight with rational coordinates.
fn toda_derivative(alg: &Arc<HeckeAlgebra>, lambda: &[Rational], f: &Section) -> Section {
    let rs = alg.root_system();
    let g = alg.group();
    let nv = alg.nvars();
    let x = Poly::linear(nv, &[lambda, &[Rational::zero()]].concat());
    let mut out = GradedSeries::with_window(f.rank(), f.floor(), f.max_height());
    for (beta, c) in f.iter() {
        let d: Rational = beta.0.iter().zip(lambda).map(|(b, l)| rat(*b) * l).sum();
        out.add_term(beta.clone(), c.scale(&d) - &x * c);
        for k in rs.r_plus_prime() {
            let a = rs.root(k);
            let p: Rational = a.coroot.iter().zip(lambda).map(|(b, l)| rat(*b) * l).sum();
            if p.is_zero() {
                continue;
            }
            let img = alg
                .element(Flavor::Nil, g.reflection(k))
                .act(c)
                .expect("nil action on polynomials is exact");
            out.add_term(beta.add(&Lattice(a.coroot.clone())), img.scale(&-p));
        }
    }
    out
}

/// `Delta(1 (x) 1) = sum_i nabla_{mu_i} nabla_{lambda_i} (1 (x) 1)` against
/// `1 (x) C + sum_{alpha simple} (alpha^vee, alpha^vee) q^{alpha^vee}`.
pub fn toda_casimir_check(alg: &Arc<HeckeAlgebra>, form: &QuadraticForm, n: i64) -> CasimirReport {
    let rs = alg.root_system();
    let r = rs.rank();
    let nv = alg.nvars();
    let one = GradedSeries::constant(r, n, Poly::one(nv));
    let mut first_derivative = true;
    let mut delta = GradedSeries::zero(r, n);
    for (lam, mu) in form.lambdas().iter().zip(form.mus()) {
        let once = toda_derivative(alg, lam, &one);
        let expect = GradedSeries::constant(r, n, -Poly::linear(nv, &[lam.as_slice(), &[Rational::zero()]].concat()));
        first_derivative &= once == expect;
        delta = delta.add(&toda_derivative(alg, &mu, &once));
    }
    let mut expected = GradedSeries::constant(r, n, form.casimir(nv));
    for i in 0..r {
        let a = rs.root(rs.simple_root_index(i));
        expected.add_term(Lattice(a.coroot.clone()), Poly::constant(nv, form.coroot_norm(&a.coroot)));
    }
    let names = alg.var_names();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    CasimirReport {
        max_height: n,
        first_derivative,
        matches: delta == expected,
        computed: delta.iter().map(|(b, p)| (b.0.clone(), p.fmt_with(&names))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CartanType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse::<CartanType>().unwrap()).unwrap()
    }

    #[test]
    fn killing_form_matches_root_data() {
        for t in ["A1", "A2", "B2", "C3", "G2"] {
            let rs = rs(t);
            let form = QuadraticForm::killing(&rs);
            for a in rs.positive_roots() {
                assert_eq!(form.coroot_norm(&a.coroot), rs.coroot_norm(&a.coroot), "{t}");
            }
        }
    }

    #[test]
    fn non_invariant_form_is_rejected() {
        let rs = rs("A2");
        let g = Matrix::identity(2, &rat(1));
        assert!(matches!(QuadraticForm::new(&rs, g), Err(LimitsError::NotInvariant)));
    }

    #[test]
    fn a1_operators() {
        let rs = rs("A1");
        let form = QuadraticForm::killing(&rs);
        let c = form.coroot_norm(&[1]);
        let toda = toda_operator(&rs, &form, 3).unwrap();
        assert_eq!(toda.potential.len(), 1);
        assert_eq!(toda.potential.get(&Lattice(vec![1])).unwrap(), &Poly::constant(1, -c.clone()));
        let cm = cm_operator(&rs, &form, 3);
        assert_eq!(cm.potential.len(), 3);
        let at = |p: &Poly, t: i64| p.eval(&[rat(t)]);
        for (_, p) in cm.potential.iter() {
            assert!(at(p, 0).is_zero() && at(p, 1).is_zero());
        }
    }

    #[test]
    fn a2_toda_potential_is_symmetric() {
        let rs = rs("A2");
        let toda = toda_operator(&rs, &QuadraticForm::killing(&rs), 4).unwrap();
        let v: Vec<_> = toda.potential.iter().map(|(_, p)| p.clone()).collect();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], v[1]);
    }

    #[test]
    fn etingof_survivors_are_simple() {
        for t in ["A1", "A2", "B2", "G2"] {
            let rs = rs(t);
            let rep = etingof_limit_check(&rs, &QuadraticForm::killing(&rs), 6).unwrap();
            assert!(rep.ok(), "{t}: {rep:?}");
        }
    }

    #[test]
    fn casimir_identity() {
        for t in ["A1", "A2", "B2", "G2"] {
            let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
            let form = QuadraticForm::killing(alg.root_system());
            let rep = toda_casimir_check(&alg, &form, 4);
            assert!(rep.ok(), "{t}: {rep:?}");
        }
    }
}
