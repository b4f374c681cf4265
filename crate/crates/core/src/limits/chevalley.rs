//! Quantum Chevalley operators on the coinvariant algebra of the flag variety.
//!
//! Operators are matrices on the Schubert basis with entries in
//! `Q[q_1, ..., q_r]`, `q^beta` written in simple-coroot coordinates.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hecke::{Flavor, HeckeAlgebra, SchubertBasis};
use crate::kernel::{rat, KernelError, Matrix, Monomial, Poly};
use crate::qconn::unit_weight;
use crate::roots::RootSystem;

fn q_monomial(coroot: &[i64]) -> Monomial {
    let e: Vec<u32> = coroot.iter().map(|&c| c as u32).collect();
    Monomial::from_exponents(&e)
}

fn constant_of(p: &Poly) -> crate::kernel::Rational {
    p.as_constant().expect("Schubert coordinates of a nil-Hecke image are constants")
}

pub struct QuantumChevalley {
    alg: Arc<HeckeAlgebra>,
    basis: SchubertBasis,
    divisors: Vec<Matrix<Poly>>,
    /// `L_u` with `L_u e_id = e_u`; each is a polynomial in the divisors.
    products: Vec<Matrix<Poly>>,
}

impl QuantumChevalley {
    pub fn new(alg: &Arc<HeckeAlgebra>) -> Result<Self, KernelError> {
        let basis = SchubertBasis::new(alg)?;
        let r = alg.rank();
        let divisors = (0..r)
            .map(|i| divisor_matrix(alg, &basis, &unit_weight(r, i)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut qc = QuantumChevalley {
            alg: alg.clone(),
            basis,
            divisors,
            products: Vec::new(),
        };
        qc.products = qc.build_products();
        Ok(qc)
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn basis(&self) -> &SchubertBasis {
        &self.basis
    }

    /// Quantum multiplication by `x_{omega_i}` on the Schubert basis.
    pub fn divisor(&self, i: usize) -> &Matrix<Poly> {
        &self.divisors[i]
    }

    fn zero(&self) -> Poly {
        Poly::zero(self.alg.rank())
    }

    /// `f(M_1, ..., M_r)` for a polynomial in the `x`-variables.
    fn evaluate(&self, f: &Poly) -> Matrix<Poly> {
        let n = self.basis.len();
        let r = self.alg.rank();
        let zero = self.zero();
        let id = Matrix::identity(n, &Poly::one(r));
        let mut acc = Matrix::filled(n, n, &zero);
        for (m, c) in f.terms() {
            debug_assert_eq!(m.exponent(self.alg.t_var()), 0);
            let mut term = id.clone();
            for (i, d) in self.divisors.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    term = term.mul(d);
                }
            }
            acc = acc.add(&term.scale(&Poly::constant(r, c.clone())));
        }
        acc
    }

    fn build_products(&self) -> Vec<Matrix<Poly>> {
        let g = self.alg.group();
        let mut order: Vec<usize> = (0..g.len()).collect();
        order.sort_by_key(|&w| (g.element(w).length(), w));
        let mut out: Vec<Option<Matrix<Poly>>> = vec![None; g.len()];
        for u in order {
            let mut l = self.evaluate(self.basis.class(u));
            // column id of l is e_u plus q-corrections on shorter classes
            for y in 0..g.len() {
                if y == u {
                    continue;
                }
                let dev = l[(y, 0)].clone();
                if dev.is_zero() {
                    continue;
                }
                let ly = out[y].as_ref().expect("corrections only involve shorter classes");
                l = l.sub(&ly.scale(&dev));
            }
            out[u] = Some(l);
        }
        out.into_iter().map(|m| m.unwrap()).collect()
    }

    /// Coordinates of `sigma_u * sigma_v`.
    pub fn product(&self, u: usize, v: usize) -> Vec<Poly> {
        let l = &self.products[u];
        (0..l.rows()).map(|k| l[(k, v)].clone()).collect()
    }

    fn multiply_vec(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let n = a.len();
        let mut out = vec![self.zero(); n];
        for (u, cu) in a.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (v, cv) in b.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let c = cu * cv;
                for (k, p) in self.product(u, v).into_iter().enumerate() {
                    out[k] += &(&c * &p);
                }
            }
        }
        out
    }

    fn basis_vec(&self, u: usize) -> Vec<Poly> {
        let mut v = vec![self.zero(); self.basis.len()];
        v[u] = Poly::one(self.alg.rank());
        v
    }

    /// Drop all `q`-monomials of total degree above `n`.
    fn truncate(v: Vec<Poly>, n: u32) -> Vec<Poly> {
        v.into_iter()
            .map(|p| {
                let nv = p.nvars();
                Poly::from_terms(nv, p.terms().filter(|(m, _)| m.degree() <= n).map(|(m, c)| (*m, c.clone())))
            })
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.basis.len();
        let divisors = (0..self.divisors.len())
            .all(|i| (0..self.divisors.len()).all(|j| self.divisors[i].commutator(&self.divisors[j]).is_zero()));
        divisors && (0..n).all(|u| (u..n).all(|v| self.product(u, v) == self.product(v, u)))
    }

    /// `(a * b) * c = a * (b * c)` on basis triples, compared through `q`-degree `n`.
    pub fn is_associative(&self, n: u32) -> bool {
        let len = self.basis.len();
        for a in 0..len {
            for b in 0..len {
                let ab = self.product(a, b);
                for c in 0..len {
                    let left = self.multiply_vec(&ab, &self.basis_vec(c));
                    let bc = self.product(b, c);
                    let right = self.multiply_vec(&self.basis_vec(a), &bc);
                    if Self::truncate(left, n) != Self::truncate(right, n) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Quantum Chevalley rule:
    /// `sigma_{s_i} * sigma_w = sum (omega_i, beta^vee) sigma_{w s_beta}` over
    /// `l(w s_beta) = l(w) + 1`, plus `q^{beta^vee}` terms over
    /// `l(w s_beta) = l(w) + 1 - (2 rho, beta^vee)`.
    pub fn predicted_divisor(&self, i: usize, quantum: bool) -> Matrix<Poly> {
        let g = self.alg.group();
        let rs = self.alg.root_system();
        let r = rs.rank();
        let n = g.len();
        let mut m = Matrix::filled(n, n, &self.zero());
        let omega = unit_weight(r, i);
        let mut rows: Vec<Vec<Poly>> = (0..n).map(|k| m.row(k).to_vec()).collect();
        for w in 0..n {
            let lw = g.element(w).length() as i64;
            for (k, a) in rs.positive_roots().iter().enumerate() {
                let p = RootSystem::pair(&omega, &a.coroot);
                if p == 0 {
                    continue;
                }
                let v = g.multiply(w, g.reflection(k));
                let lv = g.element(v).length() as i64;
                if lv == lw + 1 {
                    rows[v][w] += &Poly::from_int(r, p);
                } else if quantum && lv == lw + 1 - a.two_rho_pairing() {
                    rows[v][w] += &Poly::monomial(r, q_monomial(&a.coroot), rat(p));
                }
            }
        }
        m = Matrix::from_rows(rows);
        m
    }

    /// Set all `q` to zero.
    pub fn classical_part(m: &Matrix<Poly>) -> Matrix<Poly> {
        m.map(|p| Poly::constant(p.nvars(), p.constant_term()))
    }
}

/// `x_lambda + sum_{alpha in R+'} (lambda, alpha^vee) q^{alpha^vee} sbar_alpha` on the
/// Schubert basis: column `w` holds the coordinates of the image of `sigma_w`.
pub fn divisor_matrix(alg: &Arc<HeckeAlgebra>, basis: &SchubertBasis, lambda: &[i64]) -> Result<Matrix<Poly>, KernelError> {
    let g = alg.group();
    let rs = alg.root_system();
    let r = rs.rank();
    let n = g.len();
    let x = alg.x_poly(lambda);
    let mut rows = vec![vec![Poly::zero(r); n]; n];
    for w in 0..n {
        let sigma = basis.class(w);
        for (v, c) in basis.expand(&(&x * sigma))?.iter().enumerate() {
            rows[v][w] += &Poly::constant(r, constant_of(c));
        }
        for k in rs.r_plus_prime() {
            let a = rs.root(k);
            let p = RootSystem::pair(lambda, &a.coroot);
            if p == 0 {
                continue;
            }
            let img = alg.element(Flavor::Nil, g.reflection(k)).act(sigma)?;
            for (v, c) in basis.expand(&img)?.iter().enumerate() {
                let c = constant_of(c);
                if !num_traits::Zero::is_zero(&c) {
                    rows[v][w] += &Poly::monomial(r, q_monomial(&a.coroot), c * rat(p));
                }
            }
        }
    }
    Ok(Matrix::from_rows(rows))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChevalleyReport {
    pub cartan_type: String,
    pub q_degree: u32,
    pub commutative: bool,
    pub associative: bool,
    /// Classical part agrees with the combinatorial Chevalley-Monk rule.
    pub monk: bool,
    /// Full operator agrees with the quantum Chevalley rule.
    pub quantum_rule: bool,
    /// `sigma_{s_i} * sigma_{s_i}` for each `i`, as `(class label, coefficient)` pairs.
    pub squares: Vec<Vec<(String, String)>>,
}

impl ChevalleyReport {
    pub fn ok(&self) -> bool {
        self.commutative && self.associative && self.monk && self.quantum_rule
    }
}

pub fn word_label(word: &[u8]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("")
    }
}

pub fn chevalley_check(alg: &Arc<HeckeAlgebra>, q_degree: u32) -> Result<ChevalleyReport, KernelError> {
    let qc = QuantumChevalley::new(alg)?;
    let g = alg.group();
    let r = alg.rank();
    let names: Vec<String> = (1..=r).map(|i| format!("q{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let monk = (0..r).all(|i| QuantumChevalley::classical_part(qc.divisor(i)) == qc.predicted_divisor(i, false));
    let quantum_rule = (0..r).all(|i| *qc.divisor(i) == qc.predicted_divisor(i, true));
    let squares = (0..r)
        .map(|i| {
            let s = g.simple(i);
            qc.product(s, s)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(v, c)| (word_label(g.element(v).word()), c.fmt_with(&names)))
                .collect()
        })
        .collect();
    Ok(ChevalleyReport {
        cartan_type: alg.root_system().kind().to_string(),
        q_degree,
        commutative: qc.is_commutative(),
        associative: qc.is_associative(q_degree),
        monk,
        quantum_rule,
        squares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_square_is_q() {
        let alg = HeckeAlgebra::new("A1".parse().unwrap()).unwrap();
        let rep = chevalley_check(&alg, 3).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert_eq!(rep.squares, vec![vec![("e".to_string(), "q1".to_string())]]);
    }

    #[test]
    fn a2_and_b2() {
        for t in ["A2", "B2"] {
            let alg = HeckeAlgebra::new(t.parse().unwrap()).unwrap();
            let rep = chevalley_check(&alg, 3).unwrap();
            assert!(rep.ok(), "{rep:?}");
        }
    }
}
