//! Shift operators `S(s) = Psi(q, a) Delta(s) Psi(q, a + s)^{-1}` for the
//! quantum connection on the principal series, computed from the Frobenius
//! fundamental solution `Psi = H q^{A_0}`.
//!
//! Matrices act on `M_{a,t}` in the basis `w (x) 1`. Entries are rational
//! functions of `(a_1, ..., a_r, t)`; `a_k` is the variable `X_k`.

mod reconstruct;
mod suite;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hecke::HeckeAlgebra;
use crate::kernel::{rat, GradedSeries, KernelError, Lattice, Matrix, Poly, RatFunc, Rational};
use crate::qconn::{divisor_operator, module_series, unit_weight};

pub use reconstruct::{reconstruct_entries, reconstruct_rational, RationalEntry, RationalFit};
pub use suite::{
    basic_cocharacters, rationality_check, shift_suite, ConventionReport, RationalityReport, ShiftSuiteReport,
};

/// Matrix-valued `q`-series over the parameter field.
pub type MatrixSeries = GradedSeries<Matrix<RatFunc>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShiftError {
    #[error("resonant Sylvester equation at grade {grade:?}")]
    Resonant { grade: Vec<i64> },
    #[error("the constant term is not diagonalizable over the parameter field")]
    NotDiagonalizable,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// `s = (s_Lambda, s_t)` with `s_Lambda` in simple-coroot coordinates, so that
/// `lambda[k] = <s_Lambda, omega_k>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cocharacter {
    pub lambda: Vec<i64>,
    pub t: i64,
}

impl Cocharacter {
    pub fn new(lambda: Vec<i64>, t: i64) -> Self {
        Cocharacter { lambda, t }
    }

    pub fn zero(rank: usize) -> Self {
        Cocharacter::new(vec![0; rank], 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        Cocharacter::new(self.lambda.iter().zip(&o.lambda).map(|(a, b)| a + b).collect(), self.t + o.t)
    }

    /// Pairing with a linear form in `(a, t)`.
    pub fn pair(&self, chi: &Poly) -> i64 {
        let point: Vec<Rational> = self.lambda.iter().chain([&self.t]).map(|&c| rat(c)).collect();
        let v = chi.eval(&point) - chi.constant_term();
        assert!(v.is_integer(), "integral weights pair integrally");
        v.numer().try_into().expect("pairing fits in i64")
    }

    /// Images of the variables under `(a, t) -> (a + s_Lambda, t + s_t)`.
    pub fn translation(&self, nvars: usize) -> Vec<Poly> {
        (0..nvars)
            .map(|v| {
                let c = if v + 1 == nvars { self.t } else { self.lambda[v] };
                &Poly::var(nvars, v) + &Poly::from_int(nvars, c)
            })
            .collect()
    }
}

impl std::fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l: Vec<String> = self.lambda.iter().map(i64::to_string).collect();
        write!(f, "({};{})", l.join(","), self.t)
    }
}

/// Which Pochhammer ratio `Delta(s)` uses on a tangent weight `chi` with `n = s(chi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaConvention {
    /// `Gamma(chi + n) / Gamma(chi + 1)`.
    Printed,
    /// `Gamma(chi + n + 1) / Gamma(chi + 1)`, so that `Delta(0) = Id`.
    Shifted,
    /// `Gamma(chi + 1) / Gamma(chi + n + 1)`, the inverse of `Shifted`.
    Reciprocal,
}

impl DeltaConvention {
    pub const ALL: [DeltaConvention; 3] = [Self::Printed, Self::Shifted, Self::Reciprocal];
}

/// Tangent data of `T^*B` at the fixed point `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointData {
    pub element: usize,
    /// `<a, w omega_k>` for each fundamental weight.
    pub eigenvalues: Vec<Poly>,
    /// `-w(alpha)` for `alpha > 0`.
    pub base: Vec<Poly>,
    /// `t + w(alpha)` for `alpha > 0`.
    pub fiber: Vec<Poly>,
}

impl FixedPointData {
    pub fn weights(&self) -> impl Iterator<Item = &Poly> {
        self.base.iter().chain(&self.fiber)
    }
}

pub fn fixed_points(alg: &HeckeAlgebra) -> Vec<FixedPointData> {
    let g = alg.group();
    let rs = alg.root_system();
    let r = rs.rank();
    (0..g.len())
        .map(|w| {
            let eigenvalues = (0..r).map(|k| alg.act_on_poly(w, &alg.x_poly(&unit_weight(r, k)))).collect();
            let walpha: Vec<Poly> = (0..rs.positive_roots().len())
                .map(|k| alg.act_on_poly(w, &alg.root_poly(k)))
                .collect();
            FixedPointData {
                element: w,
                eigenvalues,
                base: walpha.iter().map(|p| -p.clone()).collect(),
                fiber: walpha.iter().map(|p| &alg.t() + p).collect(),
            }
        })
        .collect()
}

fn rf(p: &Poly) -> RatFunc {
    RatFunc::from_poly(p.clone())
}

/// `Gamma(chi + n) / Gamma(chi + 1)` as a rational function.
pub fn pochhammer_ratio(chi: &Poly, n: i64) -> Result<RatFunc, KernelError> {
    let nv = chi.nvars();
    let shifted = |k: i64| rf(&(chi + &Poly::from_int(nv, k)));
    let mut acc = RatFunc::one(nv);
    if n >= 1 {
        for k in 1..n {
            acc = &acc * &shifted(k);
        }
    } else {
        for k in n..=0 {
            acc = acc.checked_div(&shifted(k))?;
        }
    }
    Ok(acc)
}

/// Diagonal entries of `Delta(s)` in the fixed-point basis.
pub fn delta_operator(
    fixed: &[FixedPointData],
    s: &Cocharacter,
    convention: DeltaConvention,
) -> Result<Vec<RatFunc>, KernelError> {
    let extra = match convention {
        DeltaConvention::Printed => 0,
        DeltaConvention::Shifted | DeltaConvention::Reciprocal => 1,
    };
    fixed
        .iter()
        .map(|fp| {
            let nv = fp.eigenvalues[0].nvars();
            let d = fp.weights().try_fold(RatFunc::one(nv), |acc, chi| {
                Ok::<_, KernelError>(&acc * &pochhammer_ratio(chi, s.pair(chi) + extra)?)
            })?;
            match convention {
                DeltaConvention::Reciprocal => d.inv(),
                _ => Ok(d),
            }
        })
        .collect()
}

/// Substitute `(a, t) -> (a + s_Lambda, t + s_t)` in every entry.
pub fn translate_series(series: &MatrixSeries, s: &Cocharacter) -> Result<MatrixSeries, KernelError> {
    series.try_map(|_, m| translate_matrix(m, s))
}

pub fn translate_matrix(m: &Matrix<RatFunc>, s: &Cocharacter) -> Result<Matrix<RatFunc>, KernelError> {
    let nv = m[(0, 0)].nvars();
    let images = s.translation(nv);
    m.try_map(|f| f.compose_poly(&images))
}

/// Normalized fundamental solution `H = Id + O(q)` with eigenbasis data.
#[derive(Debug, Clone)]
pub struct FundamentalSolution {
    pub alg: Arc<HeckeAlgebra>,
    pub max_height: i64,
    pub fixed: Vec<FixedPointData>,
    /// Columns are simultaneous eigenvectors of the `x_{omega_k}`, normalized
    /// to have entry 1 at their own fixed point.
    pub eigenbasis: Matrix<RatFunc>,
    pub eigenbasis_inv: Matrix<RatFunc>,
    /// Column rescaling taking `eigenbasis` to the fixed-point basis, whose
    /// vectors have coordinates summing to 1 in the `w (x) 1` basis.
    pub scale: Vec<RatFunc>,
    /// `A(lambda)` for each fundamental weight.
    pub connection: Vec<MatrixSeries>,
    pub h: MatrixSeries,
}

fn nonnegative_lattice(rank: usize, height: i64) -> Vec<Lattice> {
    if rank == 0 {
        return if height == 0 { vec![Lattice(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=height {
        for mut rest in nonnegative_lattice(rank - 1, height - first) {
            rest.0.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn componentwise_le(a: &Lattice, b: &Lattice) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

/// `sum_k c_k M_k` over the fundamental weights.
fn combine(series: &[MatrixSeries], weight: &[i64]) -> MatrixSeries {
    let mut acc: Option<MatrixSeries> = None;
    for (k, &c) in weight.iter().enumerate() {
        let nv = series[k].iter().next().map_or(1, |(_, m)| m[(0, 0)].nvars());
        let term = series[k].map(|_, m| m.scale(&RatFunc::from_int(nv, c)));
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.expect("rank is positive")
}

fn grade0(series: &MatrixSeries) -> Matrix<RatFunc> {
    series.get(&Lattice::zero(series.rank())).expect("constant term present").clone()
}

pub fn fundamental_solution(alg: &Arc<HeckeAlgebra>, n: i64) -> Result<FundamentalSolution, ShiftError> {
    let r = alg.rank();
    let nv = alg.nvars();
    let dim = alg.group().len();
    let connection: Vec<MatrixSeries> = (0..r)
        .map(|k| {
            let op = divisor_operator(alg, &unit_weight(r, k), n);
            module_series(alg, &op).map(|_, m| m.map(rf))
        })
        .collect();
    let fixed = fixed_points(alg);
    let rho = vec![1i64; r];
    let a_rho = combine(&connection, &rho);
    let x_rho = grade0(&a_rho);
    let eig_rho: Vec<RatFunc> = fixed
        .iter()
        .map(|fp| rf(&fp.eigenvalues.iter().fold(Poly::zero(nv), |acc, e| &acc + e)))
        .collect();

    let zero = RatFunc::zero(nv);
    let mut p = Matrix::filled(dim, dim, &zero);
    for (w, ev) in eig_rho.iter().enumerate() {
        let shifted = x_rho.sub(&Matrix::identity(dim, &zero).scale(ev));
        let ns = shifted.nullspace();
        if ns.len() != 1 {
            return Err(ShiftError::NotDiagonalizable);
        }
        let v = &ns[0];
        let pivot = if v[w].is_zero() {
            v.iter().find(|c| !c.is_zero()).unwrap().clone()
        } else {
            v[w].clone()
        };
        for (i, c) in v.iter().enumerate() {
            p[(i, w)] = c.checked_div(&pivot)?;
        }
    }
    let p_inv = p.inverse()?;
    let scale = (0..dim)
        .map(|w| {
            let sum = (0..dim).fold(zero.clone(), |acc, i| &acc + &p[(i, w)]);
            if sum.is_zero() {
                Ok(RatFunc::one(nv))
            } else {
                sum.inv()
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (k, a) in connection.iter().enumerate() {
        let d = p_inv.mul(&grade0(a)).mul(&p);
        let expect = Matrix::diagonal(fixed.iter().map(|fp| rf(&fp.eigenvalues[k])).collect());
        if d != expect {
            return Err(ShiftError::NotDiagonalizable);
        }
    }

    let mut h = GradedSeries::zero(r, n);
    h.add_term(Lattice::zero(r), Matrix::identity(dim, &RatFunc::one(nv)));
    for height in 1..=n {
        for beta in nonnegative_lattice(r, height) {
            let mut rhs = Matrix::filled(dim, dim, &zero);
            for (gamma, ag) in a_rho.iter() {
                if gamma.is_zero() || !componentwise_le(gamma, &beta) {
                    continue;
                }
                if let Some(hb) = h.get(&beta.sub(gamma)) {
                    rhs = rhs.add(&ag.mul(hb));
                }
            }
            if rhs.is_zero() {
                continue;
            }
            // (rho, beta) H - [A_0, H] = rhs, diagonal in the eigenbasis
            let rhat = p_inv.mul(&rhs).mul(&p);
            let mut hhat = Matrix::filled(dim, dim, &zero);
            let hb = RatFunc::from_int(nv, beta.height());
            for i in 0..dim {
                for j in 0..dim {
                    if rhat[(i, j)].is_zero() {
                        continue;
                    }
                    let denom = &(&hb - &eig_rho[i]) + &eig_rho[j];
                    hhat[(i, j)] = rhat[(i, j)]
                        .checked_div(&denom)
                        .map_err(|_| ShiftError::Resonant { grade: beta.0.clone() })?;
                }
            }
            h.add_term(beta, p.mul(&hhat).mul(&p_inv));
        }
    }
    Ok(FundamentalSolution {
        alg: alg.clone(),
        max_height: n,
        fixed,
        eigenbasis: p,
        eigenbasis_inv: p_inv,
        scale,
        connection,
        h,
    })
}

/// `[d_lambda - A(a), X] `-style residual `d_lambda X - A(a) X + X B` for a
/// series `X` intertwining connections with coefficients `A` and `B`.
fn intertwining_residual(x: &MatrixSeries, a: &MatrixSeries, b: &MatrixSeries, weight: &[i64]) -> MatrixSeries {
    let dx = x.derive(weight, |m, k| {
        let nv = m[(0, 0)].nvars();
        m.scale(&RatFunc::from_int(nv, k))
    });
    dx.sub(&a.mul(x)).add(&x.mul(b))
}

impl FundamentalSolution {
    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    pub fn nvars(&self) -> usize {
        self.alg.nvars()
    }

    /// Nonzero grades of `d_lambda H - A(lambda) H + H A_0(lambda)` for each
    /// fundamental weight.
    pub fn residual_grades(&self) -> Vec<Vec<Vec<i64>>> {
        let r = self.rank();
        (0..r)
            .map(|k| {
                let a = &self.connection[k];
                let a0 = GradedSeries::constant(r, self.max_height, grade0(a));
                intertwining_residual(&self.h, a, &a0, &unit_weight(r, k))
                    .support()
                    .into_iter()
                    .map(|b| b.0)
                    .collect()
            })
            .collect()
    }

    /// `H^{-1}` by the recursion `G_beta = -sum_{0 < gamma <= beta} H_gamma G_{beta - gamma}`.
    pub fn h_inverse(&self) -> MatrixSeries {
        let r = self.rank();
        let dim = self.fixed.len();
        let nv = self.nvars();
        let zero = RatFunc::zero(nv);
        let mut g = GradedSeries::constant(r, self.max_height, Matrix::identity(dim, &RatFunc::one(nv)));
        for height in 1..=self.max_height {
            for beta in nonnegative_lattice(r, height) {
                let mut acc = Matrix::filled(dim, dim, &zero);
                for (gamma, hg) in self.h.iter() {
                    if gamma.is_zero() || !componentwise_le(gamma, &beta) {
                        continue;
                    }
                    if let Some(rest) = g.get(&beta.sub(gamma)) {
                        acc = acc.sub(&hg.mul(rest));
                    }
                }
                g.add_term(beta, acc);
            }
        }
        g
    }

    /// `q`-exponent `beta_w` of `q^{M(a)} q^{-M(a+s)} = q^{-beta_w}` at each fixed point.
    pub fn exponent_shift(&self, s: &Cocharacter) -> Vec<Lattice> {
        self.fixed
            .iter()
            .map(|fp| Lattice(fp.eigenvalues.iter().map(|e| s.pair(e)).collect()))
            .collect()
    }

    /// `S(s) = H(a) P(a) E Delta(s) P(a+s)^{-1} H(a+s)^{-1}`, valid on heights
    /// `[-h, max_height - h]` with `h` the largest height of an exponent shift.
    ///
    /// The series is stored as `c S(s)` with `c` the product of the
    /// denominators of `Delta(s)`, which keeps every coefficient's denominator
    /// free of `t`.
    pub fn shift_operator(&self, s: &Cocharacter, convention: DeltaConvention) -> Result<ShiftOperator, ShiftError> {
        let delta = delta_operator(&self.fixed, s, convention)?;
        self.shift_with_delta(s, convention, &delta)
    }

    /// The fixed-point basis `P diag(scale)`.
    pub fn fixed_point_basis(&self) -> Matrix<RatFunc> {
        self.eigenbasis.mul(&Matrix::diagonal(self.scale.clone()))
    }

    /// The factorization with an explicit diagonal, taken in the fixed-point
    /// basis, in place of `Delta(s)`.
    pub fn shift_with_delta(
        &self,
        s: &Cocharacter,
        convention: DeltaConvention,
        delta: &[RatFunc],
    ) -> Result<ShiftOperator, ShiftError> {
        let r = self.rank();
        let nv = self.nvars();
        let dim = self.fixed.len();
        // move the diagonal to the eigenbasis, whose entries stay simpler
        let delta = delta
            .iter()
            .zip(&self.scale)
            .map(|(d, c)| Ok(&(d * c) / &c.compose_poly(&s.translation(nv))?))
            .collect::<Result<Vec<_>, KernelError>>()?;
        let exps = self.exponent_shift(s);
        let reach = exps.iter().map(|b| b.height().abs()).max().unwrap_or(0);
        let normalization = delta.iter().fold(Poly::one(nv), |acc, d| &acc * d.den());
        let cleared: Vec<RatFunc> = delta.iter().map(|d| d * &RatFunc::from_poly(normalization.clone())).collect();
        let p_shift_inv = translate_matrix(&self.eigenbasis_inv, s)?;
        let mut middle = GradedSeries::with_window(r, -reach, self.max_height + reach);
        let zero = RatFunc::zero(nv);
        for (w, (beta, d)) in exps.iter().zip(&cleared).enumerate() {
            let mut e = Matrix::filled(dim, dim, &zero);
            e[(w, w)] = d.clone();
            middle.add_term(beta.scale(-1), self.eigenbasis.mul(&e).mul(&p_shift_inv));
        }
        let hinv = translate_series(&self.h_inverse(), s)?;
        let series = self.h.mul(&middle).mul(&hinv);
        Ok(ShiftOperator {
            cocharacter: s.clone(),
            convention,
            reach,
            normalization,
            series,
        })
    }

    /// Connection coefficients at the translated parameters.
    pub fn translated_connection(&self, s: &Cocharacter) -> Result<Vec<MatrixSeries>, KernelError> {
        self.connection.iter().map(|a| translate_series(a, s)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ShiftOperator {
    pub cocharacter: Cocharacter,
    pub convention: DeltaConvention,
    pub reach: i64,
    /// `c` with `series = c S(s)`.
    pub normalization: Poly,
    pub series: MatrixSeries,
}

impl ShiftOperator {
    /// `S(s)` itself, dividing out the normalization.
    pub fn actual(&self) -> MatrixSeries {
        let c = RatFunc::from_poly(self.normalization.clone()).inv().expect("normalization is nonzero");
        self.series.map(|_, m| m.scale(&c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerReport {
    pub cocharacter: String,
    pub convention: DeltaConvention,
    /// Heights checked: `[-reach, max_height]`.
    pub floor: i64,
    pub max_height: i64,
    /// Nonzero grades of `d_lambda S - A(a) S + S A(a+s)`, per fundamental weight.
    pub residual: Vec<Vec<Vec<i64>>>,
}

impl IntertwinerReport {
    pub fn ok(&self) -> bool {
        self.residual.iter().all(Vec::is_empty)
    }
}

/// `nabla(a) S(s) = S(s) nabla(a + s)`. The identity is linear in `S`, so it is
/// insensitive to the global normalization.
pub fn intertwiner_check(
    fs: &FundamentalSolution,
    s: &Cocharacter,
    convention: DeltaConvention,
) -> Result<IntertwinerReport, ShiftError> {
    let op = fs.shift_operator(s, convention)?;
    let shifted = fs.translated_connection(s)?;
    let r = fs.rank();
    let residual = (0..r)
        .map(|k| {
            intertwining_residual(&op.series, &fs.connection[k], &shifted[k], &unit_weight(r, k))
                .support()
                .into_iter()
                .map(|b| b.0)
                .collect()
        })
        .collect();
    Ok(IntertwinerReport {
        cocharacter: s.to_string(),
        convention,
        floor: -op.reach,
        max_height: op.series.max_height(),
        residual,
    })
}

/// `x = c y` for one `c` in the parameter field; `c` is read off the first
/// nonzero entry of `y`.
pub fn proportional(x: &MatrixSeries, y: &MatrixSeries) -> Option<RatFunc> {
    let (beta, m) = y.iter().next()?;
    let (i, j, yij) = m.entries().find(|(_, _, c)| !c.is_zero())?;
    let xij = x.get(beta).map(|mx| mx[(i, j)].clone())?;
    let c = xij.checked_div(yij).ok()?;
    let scaled = y.map(|_, m| m.scale(&c));
    (scaled == *x).then_some(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub first: String,
    pub second: String,
    pub convention: DeltaConvention,
    pub floor: i64,
    pub max_height: i64,
    pub holds: bool,
    /// The global constant `c` with `S(s1 + s2) = c S(s1) S(s2)|_{a + s1}`.
    pub scalar: Option<String>,
}

/// `S(s1 + s2) = S(s1) S(s2)|_{a -> a + s1}` up to one global scalar, on the
/// heights common to both sides.
pub fn composition_check(
    fs: &FundamentalSolution,
    s1: &Cocharacter,
    s2: &Cocharacter,
    convention: DeltaConvention,
) -> Result<CompositionReport, ShiftError> {
    let total = fs.shift_operator(&s1.add(s2), convention)?;
    let a = fs.shift_operator(s1, convention)?;
    let b = fs.shift_operator(s2, convention)?;
    let b_shift = translate_series(&b.series, s1)?;
    let rhs = a.series.mul(&b_shift);
    let floor = total.series.floor().max(rhs.floor());
    let top = total.series.max_height().min(rhs.max_height());
    let lhs = total.series.restrict(floor, top);
    let rhs = rhs.restrict(floor, top);
    let names = fs.alg.var_names();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    // S(s1+s2) = kappa c1 c2' / c12 S(s1) S(s2)'
    let scalar = proportional(&lhs, &rhs).map(|kappa| {
        let c2 = RatFunc::from_poly(b.normalization.clone())
            .compose_poly(&s1.translation(fs.nvars()))
            .expect("polynomial substitution");
        let c = &(&kappa * &RatFunc::from_poly(a.normalization.clone())) * &c2;
        c.checked_div(&RatFunc::from_poly(total.normalization.clone())).expect("normalization is nonzero")
    });
    Ok(CompositionReport {
        first: s1.to_string(),
        second: s2.to_string(),
        convention,
        floor,
        max_height: top,
        holds: scalar.is_some(),
        scalar: scalar.map(|c| c.fmt_with(&names)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new("A1".parse().unwrap()).unwrap()
    }

    #[test]
    fn tangent_weights_pair_to_t() {
        let alg = HeckeAlgebra::new("A2".parse().unwrap()).unwrap();
        for fp in fixed_points(&alg) {
            for (b, f) in fp.base.iter().zip(&fp.fiber) {
                assert_eq!(b + f, alg.t());
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        let chi = Poly::var(2, 0);
        assert!(pochhammer_ratio(&chi, 1).unwrap().is_one());
        let inv = pochhammer_ratio(&chi, 0).unwrap();
        assert_eq!(inv, RatFunc::from_poly(chi.clone()).inv().unwrap());
        let two = pochhammer_ratio(&chi, 3).unwrap();
        let expect = &(&chi + &Poly::from_int(2, 1)) * &(&chi + &Poly::from_int(2, 2));
        assert_eq!(two, RatFunc::from_poly(expect));
    }

    #[test]
    fn a1_delta_for_coroot_shift() {
        // at w = e: 1/((-a)(-a-1)(-a-2)) (t + a + 1) with alpha(a) = 2 X
        let alg = a1();
        let fixed = fixed_points(&alg);
        let d = delta_operator(&fixed, &Cocharacter::new(vec![1], 0), DeltaConvention::Printed).unwrap();
        let al = Poly::linear_int(2, &[2, 0]);
        let one = Poly::from_int(2, 1);
        let den = &(&(-al.clone()) * &(&(-al.clone()) - &one)) * &(&(-al.clone()) - &(&one + &one));
        let num = &(&alg.t() + &al) + &one;
        assert_eq!(d[0], RatFunc::new(num, den).unwrap());
    }

    #[test]
    fn a1_frobenius_and_exponents() {
        let alg = a1();
        let fs = fundamental_solution(&alg, 3).unwrap();
        assert!(fs.residual_grades().iter().all(Vec::is_empty));
        let e = fs.exponent_shift(&Cocharacter::new(vec![1], 0));
        assert_eq!(e, vec![Lattice(vec![1]), Lattice(vec![-1])]);
    }

    #[test]
    fn zero_shift_is_identity_only_when_shifted() {
        let alg = a1();
        let fs = fundamental_solution(&alg, 2).unwrap();
        let zero = Cocharacter::zero(1);
        let s = fs.shift_operator(&zero, DeltaConvention::Shifted).unwrap();
        let id = GradedSeries::constant(1, 2, Matrix::identity(2, &RatFunc::one(2)));
        assert_eq!(s.series, id);
        let p = fs.shift_operator(&zero, DeltaConvention::Printed).unwrap();
        assert!(proportional(&p.series, &id).is_none());
    }
}
