use serde::{Deserialize, Serialize};

use super::{Flavor, HeckeAlgebra, HeckeElement};
use crate::kernel::{rat, KernelError, Monomial, Poly};

/// Outcome of one defining relation, checked in the algebra and on the
/// polynomial module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub algebra: bool,
    pub module: bool,
    pub samples: usize,
}

impl RelationCheck {
    pub fn ok(&self) -> bool {
        self.algebra && self.module
    }
}

/// Monomials in `X_1..X_r` of total degree at most `d`.
pub fn monomials_up_to(alg: &HeckeAlgebra, d: u32) -> Vec<Poly> {
    let r = alg.rank();
    let mut out = Vec::new();
    let mut exps = vec![0u32; alg.nvars()];
    fn rec(k: usize, r: usize, left: u32, exps: &mut Vec<u32>, nv: usize, out: &mut Vec<Poly>) {
        if k == r {
            out.push(Poly::monomial(nv, Monomial::from_exponents(exps), rat(1)));
            return;
        }
        for e in 0..=left {
            exps[k] = e;
            rec(k + 1, r, left - e, exps, nv, out);
        }
        exps[k] = 0;
    }
    rec(0, r, d, &mut exps, alg.nvars(), &mut out);
    out
}

/// Braid exponent `m_ij` from the Cartan matrix.
pub fn braid_order(alg: &HeckeAlgebra, i: usize, j: usize) -> usize {
    let c = alg.root_system().cartan();
    match c[i][j] * c[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        p => panic!("not a finite Cartan matrix entry product {p}"),
    }
}

fn alternating(i: usize, j: usize, m: usize) -> Vec<u8> {
    (0..m).map(|k| if k % 2 == 0 { i as u8 } else { j as u8 }).collect()
}

fn word_element(alg: &std::sync::Arc<HeckeAlgebra>, flavor: Flavor, word: &[u8]) -> HeckeElement {
    let mut e = alg.one(flavor);
    for &i in word {
        e = e.mul(&alg.simple(flavor, i as usize));
    }
    e
}

/// Every defining relation of the flavor, as normal-ordered identities and as
/// operator identities on polynomials of degree at most `max_degree`.
pub fn check_relations(
    alg: &std::sync::Arc<HeckeAlgebra>,
    flavor: Flavor,
    max_degree: u32,
) -> Result<Vec<RelationCheck>, KernelError> {
    let r = alg.rank();
    let samples = monomials_up_to(alg, max_degree);
    let n = samples.len();
    let mut out = Vec::new();
    let unit = |k: usize| {
        let mut v = vec![0i64; r];
        v[k] = 1;
        v
    };

    // (a) commutativity of the x's
    for i in 0..r {
        for j in i + 1..r {
            let (xi, xj) = (alg.x(flavor, &unit(i)), alg.x(flavor, &unit(j)));
            let algebra = xi.commutator(&xj).is_zero();
            let mut module = true;
            for f in &samples {
                module &= xi.act(&xj.act(f)?)? == xj.act(&xi.act(f)?)?;
            }
            out.push(RelationCheck {
                relation: format!("x{}x{} = x{}x{}", i + 1, j + 1, j + 1, i + 1),
                algebra,
                module,
                samples: n,
            });
        }
    }

    // (b) involution / nilpotency of generators
    for i in 0..r {
        let s = alg.simple(flavor, i);
        let sq = s.mul(&s);
        let (algebra, name) = match flavor {
            Flavor::Ht => (sq == alg.one(flavor), format!("s{}^2 = 1", i + 1)),
            Flavor::Nil => (sq.is_zero(), format!("sbar{}^2 = 0", i + 1)),
        };
        let mut module = true;
        for f in &samples {
            let g = alg.act_word(flavor, &[i as u8, i as u8], f)?;
            module &= match flavor {
                Flavor::Ht => &g == f,
                Flavor::Nil => g.is_zero(),
            };
        }
        out.push(RelationCheck {
            relation: name,
            algebra,
            module,
            samples: n,
        });
    }

    // (c) braid relations
    for i in 0..r {
        for j in i + 1..r {
            let m = braid_order(alg, i, j);
            let (w1, w2) = (alternating(i, j, m), alternating(j, i, m));
            let algebra = word_element(alg, flavor, &w1) == word_element(alg, flavor, &w2);
            let mut module = true;
            for f in &samples {
                module &= alg.act_word(flavor, &w1, f)? == alg.act_word(flavor, &w2, f)?;
            }
            out.push(RelationCheck {
                relation: format!("braid s{} s{} (m = {m})", i + 1, j + 1),
                algebra,
                module,
                samples: n,
            });
        }
    }

    // (d) cross relation s_i x_lambda - x_{s_i lambda} s_i = c (alpha_i^vee, lambda)
    for i in 0..r {
        for k in 0..r {
            let lam = unit(k);
            let slam = alg.root_system().reflect_weight(i, &lam);
            let c = lam[i];
            let rhs = match flavor {
                Flavor::Ht => alg.t().scale(&rat(c)),
                Flavor::Nil => Poly::from_int(alg.nvars(), c),
            };
            let s = alg.simple(flavor, i);
            let lhs = s.mul(&alg.x(flavor, &lam)).sub(&alg.x(flavor, &slam).mul(&s));
            let algebra = lhs == alg.poly(flavor, rhs.clone());
            let (xl, xsl) = (alg.x_poly(&lam), alg.x_poly(&slam));
            let mut module = true;
            for f in &samples {
                let a = alg.act_simple(flavor, i, &(&xl * f))?;
                let b = &xsl * &alg.act_simple(flavor, i, f)?;
                module &= &a - &b == &rhs * f;
            }
            out.push(RelationCheck {
                relation: format!("cross s{} x{}", i + 1, k + 1),
                algebra,
                module,
                samples: n,
            });
        }
    }
    Ok(out)
}

/// Reduced-word independence of one nil-Hecke operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilWordCheck {
    pub element: Vec<u8>,
    pub reduced_words: usize,
    /// All reduced words and the normal-ordered element act identically.
    pub agree: bool,
    /// Every non-reduced extension `s_i w` with `l(s_i w) < l(w)` acts by zero.
    pub annihilated: bool,
}

impl NilWordCheck {
    pub fn ok(&self) -> bool {
        self.agree && self.annihilated
    }
}

/// Nil-Hecke word checks for every `w`, on monomials of degree at most `max_degree`.
pub fn nil_word_consistency(
    alg: &std::sync::Arc<HeckeAlgebra>,
    max_degree: u32,
) -> Result<Vec<NilWordCheck>, KernelError> {
    let g = alg.group();
    let samples = monomials_up_to(alg, max_degree);
    let mut out = Vec::with_capacity(g.len());
    for w in 0..g.len() {
        let words = g.reduced_words(w);
        let elem = alg.element(Flavor::Nil, w);
        let mut agree = true;
        let mut annihilated = true;
        for f in &samples {
            let reference = elem.act(f)?;
            for word in &words {
                agree &= alg.act_word(Flavor::Nil, word, f)? == reference;
            }
            for i in 0..alg.rank() {
                if g.lengths_add(g.simple(i), w) {
                    continue;
                }
                let mut longer = vec![i as u8];
                longer.extend_from_slice(&words[0]);
                annihilated &= alg.act_word(Flavor::Nil, &longer, f)?.is_zero();
            }
        }
        out.push(NilWordCheck {
            element: g.element(w).word().to_vec(),
            reduced_words: words.len(),
            agree,
            annihilated,
        });
    }
    Ok(out)
}
