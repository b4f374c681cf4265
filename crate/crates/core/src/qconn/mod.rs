//! Quantum multiplication by divisors on `T^*B` and the quantum connection
//! `nabla_lambda = d_lambda - D_lambda`.
//!
//! Series are graded by the coroot lattice: `q^beta` with `beta` in
//! simple-coroot coordinates, `q^{alpha^vee} / (1 - q^{alpha^vee})` expanded as
//! `sum_{d >= 1} q^{d alpha^vee}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hecke::{principal_series, Flavor, HeckeAlgebra, HeckeElement};
use crate::kernel::{rat, ratio, GradedSeries, KernelError, Lattice, Matrix, Poly, RatFunc};
use crate::roots::RootSystem;

/// A truncated series of Hecke-algebra elements.
pub type QOperator = GradedSeries<HeckeElement>;

pub fn unit_weight(rank: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    v[k] = 1;
    v
}

/// `t (lambda, alpha^vee) (s_alpha - 1)` for the positive root with index `k`.
pub fn root_correction(alg: &Arc<HeckeAlgebra>, lambda: &[i64], k: usize) -> HeckeElement {
    let a = alg.root_system().root(k);
    let p = RootSystem::pair(lambda, &a.coroot);
    let s = alg.element(Flavor::Ht, alg.group().reflection(k));
    s.sub(&alg.one(Flavor::Ht)).scale(&alg.t()).scale_int(p)
}

/// `D_lambda = x_lambda + t sum_{alpha > 0} (lambda, alpha^vee) sum_d q^{d alpha^vee} (s_alpha - 1)`
/// through height `n`.
pub fn divisor_operator(alg: &Arc<HeckeAlgebra>, lambda: &[i64], n: i64) -> QOperator {
    let rs = alg.root_system();
    let r = rs.rank();
    let mut op = GradedSeries::zero(r, n);
    op.add_term(Lattice::zero(r), alg.x(Flavor::Ht, lambda));
    for (k, a) in rs.positive_roots().iter().enumerate() {
        let term = root_correction(alg, lambda, k);
        if term.is_zero() {
            continue;
        }
        let cor = Lattice(a.coroot.clone());
        let mut d = 1;
        while d * cor.height() <= n {
            op.add_term(cor.scale(d), term.clone());
            d += 1;
        }
    }
    op
}

/// `[d_lambda - A, d_mu - B] = -d_lambda(B) + d_mu(A) + [A, B]` for
/// operator-valued series `A` (direction `lambda`) and `B` (direction `mu`).
pub fn connection_curvature(a: &QOperator, b: &QOperator, lambda: &[i64], mu: &[i64]) -> QOperator {
    let scale = |c: &HeckeElement, k: i64| c.scale_int(k);
    let comm = a.mul(b).sub(&b.mul(a));
    b.derive(lambda, scale).neg().add(&a.derive(mu, scale)).add(&comm)
}

/// `[nabla_lambda, nabla_mu]` through height `n`.
pub fn curvature(alg: &Arc<HeckeAlgebra>, lambda: &[i64], mu: &[i64], n: i64) -> QOperator {
    let dl = divisor_operator(alg, lambda, n);
    let dm = divisor_operator(alg, mu, n);
    connection_curvature(&dl, &dm, lambda, mu)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub max_height: i64,
    /// Grades where the curvature has a nonzero coefficient.
    pub nonzero_grades: Vec<Vec<i64>>,
}

impl FlatnessReport {
    pub fn flat(&self) -> bool {
        self.nonzero_grades.is_empty()
    }
}

/// Curvature for every pair of fundamental weights (the single pair `(omega, omega)` in rank one).
pub fn flatness_check(alg: &Arc<HeckeAlgebra>, n: i64) -> Vec<FlatnessReport> {
    let r = alg.rank();
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            pairs.push((i, j));
        }
    }
    if r == 1 {
        pairs.push((0, 0));
    }
    pairs
        .into_iter()
        .map(|(i, j)| {
            let (l, m) = (unit_weight(r, i), unit_weight(r, j));
            let c = curvature(alg, &l, &m, n);
            FlatnessReport {
                nonzero_grades: c.iter().filter(|(_, h)| !h.is_zero()).map(|(b, _)| b.0.clone()).collect(),
                lambda: l,
                mu: m,
                max_height: n,
            }
        })
        .collect()
}

/// `D_lambda` in closed form: `constant + sum_k phi_k * coeffs[k]` with
/// `phi_k = q^{alpha_k^vee} / (1 - q^{alpha_k^vee})` kept as independent
/// symbols. Negative coroots are rewritten with `phi_{-gamma} = -1 - phi_gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedDivisor {
    pub constant: HeckeElement,
    pub coeffs: Vec<HeckeElement>,
}

impl ClosedDivisor {
    pub fn new(alg: &Arc<HeckeAlgebra>, lambda: &[i64]) -> Self {
        let np = alg.root_system().positive_roots().len();
        ClosedDivisor {
            constant: alg.x(Flavor::Ht, lambda),
            coeffs: (0..np).map(|k| root_correction(alg, lambda, k)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ClosedDivisor {
            constant: self.constant.sub(&o.constant),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn shift_constant(&self, c: &HeckeElement) -> Self {
        ClosedDivisor {
            constant: self.constant.add(c),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `w D(w^{-1} q) w^{-1}`: conjugate the fiber, move `q^beta` to `q^{w beta}`.
    pub fn conjugate(&self, alg: &Arc<HeckeAlgebra>, w: usize) -> Self {
        let g = alg.group();
        let rs = alg.root_system();
        let we = alg.element(Flavor::Ht, w);
        let wi = alg.element(Flavor::Ht, g.inverse(w));
        let conj = |h: &HeckeElement| we.mul(h).mul(&wi);
        let mut constant = conj(&self.constant);
        let mut coeffs = vec![alg.zero(Flavor::Ht); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = conj(c);
            let image = g.act_root(w, &rs.root(k).coords);
            if let Some(j) = rs.root_index(&image) {
                coeffs[j] = coeffs[j].add(&c);
            } else {
                let neg: Vec<i64> = image.iter().map(|x| -x).collect();
                let j = rs.root_index(&neg).expect("image of a root is a root");
                coeffs[j] = coeffs[j].sub(&c);
                constant = constant.sub(&c);
            }
        }
        ClosedDivisor { constant, coeffs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub element: Vec<u8>,
    pub lambda: Vec<i64>,
    /// `w nabla_lambda w^{-1} = nabla_{w lambda}` as printed.
    pub literal: bool,
    /// The literal defect is the scalar `t c`; this is `c`, or `None` if the
    /// defect is not a scalar.
    pub scalar_defect: Option<i64>,
    /// `sum_{alpha > 0, w alpha < 0} (lambda, alpha^vee)`.
    pub predicted_defect: i64,
    /// Same identity for the shifted operators `D_lambda - t (lambda, rho^vee)`.
    pub gauged: bool,
}

/// Closed-form check of `w nabla_lambda w^{-1} = nabla_{w(lambda)}`, exact in
/// `q` (all heights at once).
pub fn w_equivariance_check(alg: &Arc<HeckeAlgebra>, w: usize, lambda: &[i64]) -> EquivarianceReport {
    let g = alg.group();
    let rs = alg.root_system();
    let wl = g.act_weight(w, lambda);
    let lhs = ClosedDivisor::new(alg, lambda).conjugate(alg, w);
    let rhs = ClosedDivisor::new(alg, &wl);
    let diff = lhs.sub(&rhs);
    let literal = diff.is_zero();
    let t = alg.t();
    let scalar_defect = if diff.coeffs.iter().all(|c| c.is_zero())
        && diff.constant.support().iter().all(|&y| y == g.identity())
    {
        let c = diff.constant.coeff(g.identity());
        (0..=64i64)
            .flat_map(|k| [k, -k])
            .find(|&k| c == t.scale(&rat(k)))
    } else {
        None
    };
    let predicted_defect = rs
        .positive_roots()
        .iter()
        .filter(|a| g.act_root(w, &a.coords).iter().any(|&c| c < 0))
        .map(|a| RootSystem::pair(lambda, &a.coroot))
        .sum();
    // 2 (lambda, rho^vee), which may be odd
    let two_rho_vee = |l: &[i64]| -> i64 { rs.positive_roots().iter().map(|a| RootSystem::pair(l, &a.coroot)).sum() };
    let gauge = |l: &[i64]| alg.one(Flavor::Ht).scale(&t.scale(&ratio(-two_rho_vee(l), 2)));
    let glhs = ClosedDivisor::new(alg, lambda).shift_constant(&gauge(lambda)).conjugate(alg, w);
    let grhs = ClosedDivisor::new(alg, &wl).shift_constant(&gauge(&wl));
    EquivarianceReport {
        element: g.element(w).word().to_vec(),
        lambda: lambda.to_vec(),
        literal,
        scalar_defect,
        predicted_defect,
        gauged: glhs.sub(&grhs).is_zero(),
    }
}

/// Matrix series of an operator on the principal series module `M_{a,t}`.
pub fn module_series(alg: &Arc<HeckeAlgebra>, op: &QOperator) -> GradedSeries<Matrix<Poly>> {
    let m = principal_series(alg, Flavor::Ht);
    op.map(|_, h| m.element_matrix(alg, h))
}

/// Structure constants of `D_lambda` on `M_{a,t}` in the basis `w (x) 1`:
/// entries `(row, col, beta, coefficient)` in deterministic order.
pub fn quantum_product(alg: &Arc<HeckeAlgebra>, lambda: &[i64], n: i64) -> Vec<(usize, usize, Vec<i64>, Poly)> {
    let series = module_series(alg, &divisor_operator(alg, lambda, n));
    let mut out = Vec::new();
    for (beta, m) in series.iter() {
        for (i, j, c) in m.entries() {
            if !c.is_zero() {
                out.push((i, j, beta.0.clone(), c.clone()));
            }
        }
    }
    out.sort_by_key(|a| (a.0, a.1, Lattice(a.2.clone())));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmSpectralReport {
    pub trace: String,
    pub determinant: String,
    pub char_poly: String,
    pub trace_ok: bool,
    pub determinant_ok: bool,
    /// `char_poly(z) = (z + tQ)^2 - t^2 q/(1-q)^2 - A^2`.
    pub level_set_ok: bool,
    /// At `t = 0` the eigenvalues are `+-A`.
    pub classical_ok: bool,
}

impl CmSpectralReport {
    pub fn ok(&self) -> bool {
        self.trace_ok && self.determinant_ok && self.level_set_ok && self.classical_ok
    }
}

/// Rank-one spectral identity with the geometric series summed exactly.
/// Variables: `A = <a, omega>`, `t`, `q`, `z`.
pub fn cm_spectral_check_rank1() -> Result<CmSpectralReport, KernelError> {
    let alg = HeckeAlgebra::new("A1".parse().expect("valid type")).expect("A1 builds");
    let m = principal_series(&alg, Flavor::Ht);
    let nv = 4;
    let lift = |p: &Poly| RatFunc::from_poly(p.remap(nv, &[0, 1]));
    let (a, t, q, z) = (RatFunc::var(nv, 0), RatFunc::var(nv, 1), RatFunc::var(nv, 2), RatFunc::var(nv, 3));
    let one = RatFunc::one(nv);
    let big_q = q.checked_div(&(&one - &q))?;
    let x = m.x[0].map(lift);
    let s = m.s[0].map(lift);
    let id = Matrix::identity(2, &one);
    let d = x.add(&s.sub(&id).scale(&(&t * &big_q)));
    let trace = d.trace();
    let det = d.determinant();
    let char_poly = id.scale(&z).sub(&d).determinant();
    let tq = &t * &big_q;
    let expect_trace = -&(&tq + &tq);
    let expect_det = -&(&(&a * &a) + &(&(&t * &t) * &big_q));
    let shifted = &z + &tq;
    let geom = (&(&t * &t) * &q).checked_div(&(&(&one - &q) * &(&one - &q)))?;
    let level = &(&(&shifted * &shifted) - &geom) - &(&a * &a);
    let mut at_zero = vec![None; nv];
    at_zero[1] = Some(rat(0));
    let classical = char_poly.eval_partial(&at_zero)?;
    let classical_expect = &(&z * &z) - &(&a * &a);
    let names = ["A", "t", "q", "z"];
    Ok(CmSpectralReport {
        trace: trace.fmt_with(&names),
        determinant: det.fmt_with(&names),
        char_poly: char_poly.fmt_with(&names),
        trace_ok: trace == expect_trace,
        determinant_ok: det == expect_det,
        level_set_ok: char_poly == level,
        classical_ok: classical == classical_expect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn order_zero_is_classical() {
        let h = alg("A2");
        let d = divisor_operator(&h, &[1, 0], 0);
        assert_eq!(d.len(), 1);
        assert_eq!(d.get(&Lattice::zero(2)), Some(&h.x(Flavor::Ht, &[1, 0])));
    }

    #[test]
    fn a2_support_at_height_two() {
        let h = alg("A2");
        let d = divisor_operator(&h, &[1, 0], 2);
        let support: Vec<Vec<i64>> = d.support().into_iter().map(|b| b.0).collect();
        // (omega_1, alpha_2^vee) = 0 removes alpha_2^vee and 2 alpha_2^vee
        assert_eq!(support, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn sl2_matrix() {
        let h = alg("A1");
        let series = module_series(&h, &divisor_operator(&h, &[1], 3));
        let (a, t) = (Poly::var(2, 0), Poly::var(2, 1));
        let m0 = series.get(&Lattice(vec![0])).unwrap();
        assert_eq!(m0[(0, 0)], a);
        for d in 1..=3 {
            let m = series.get(&Lattice(vec![d])).unwrap();
            assert_eq!(m[(0, 0)], -&t);
            assert_eq!(m[(0, 1)], t);
            assert_eq!(m[(1, 0)], t);
            assert_eq!(m[(1, 1)], -&t);
        }
    }

    #[test]
    fn setting_t_to_zero_kills_corrections() {
        let h = alg("B2");
        let d = divisor_operator(&h, &[0, 1], 3);
        let mut pt = vec![None; h.nvars()];
        pt[h.t_var()] = Some(rat(0));
        for (b, c) in d.iter() {
            if !b.is_zero() {
                assert!(c.map_coeffs(|f| f.eval_partial(&pt)).is_zero());
            }
        }
    }

    #[test]
    fn rank_one_is_flat() {
        let h = alg("A1");
        assert!(flatness_check(&h, 4).iter().all(|r| r.flat()));
    }

    #[test]
    fn sl2_equivariance_defect() {
        let h = alg("A1");
        let rep = w_equivariance_check(&h, 1, &[1]);
        assert!(!rep.literal);
        assert_eq!(rep.scalar_defect, Some(1));
        assert_eq!(rep.predicted_defect, 1);
        assert!(rep.gauged);
        assert!(w_equivariance_check(&h, 0, &[1]).literal);
    }

    #[test]
    fn cm_rank_one() {
        let rep = cm_spectral_check_rank1().unwrap();
        assert!(rep.ok(), "{rep:?}");
    }
}
