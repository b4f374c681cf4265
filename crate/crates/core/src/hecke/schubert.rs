use std::sync::Arc;

use num_traits::Zero;

use super::HeckeAlgebra;
use crate::kernel::{rat, KernelError, Poly, Rational};

/// Schubert polynomials `sigma_w = d_{w^{-1} w_0} (prod_{alpha > 0} alpha / |W|)`.
#[derive(Debug, Clone)]
pub struct SchubertBasis {
    alg: Arc<HeckeAlgebra>,
    classes: Vec<Poly>,
}

impl SchubertBasis {
    pub fn new(alg: &Arc<HeckeAlgebra>) -> Result<Self, KernelError> {
        let g = alg.group();
        let rs = alg.root_system();
        let mut top = Poly::one(alg.nvars());
        for k in 0..rs.positive_roots().len() {
            top = &top * &alg.root_poly(k);
        }
        let top = top.scale(&(rat(1) / rat(g.len() as i64)));
        let w0 = g.longest();
        let classes = (0..g.len())
            .map(|w| {
                let v = g.multiply(g.inverse(w), w0);
                alg.demazure_word(g.element(v).word(), &top)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SchubertBasis {
            alg: alg.clone(),
            classes,
        })
    }

    pub fn class(&self, w: usize) -> &Poly {
        &self.classes[w]
    }

    pub fn classes(&self) -> &[Poly] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `(d_w f)(0)` for every `w`: the coordinates of the class of `f` in the
    /// coinvariant algebra. Only the `x`-variables are set to zero.
    pub fn expand(&self, f: &Poly) -> Result<Vec<Poly>, KernelError> {
        let g = self.alg.group();
        let r = self.alg.rank();
        let mut point: Vec<Option<Rational>> = vec![Some(Rational::zero()); r];
        point.push(None);
        (0..g.len())
            .map(|w| {
                let d = self.alg.demazure_word(g.element(w).word(), f)?;
                Ok(d.eval_partial(&point))
            })
            .collect()
    }

    /// Matrix `(d_v sigma_w)(0)`; the identity for a correct basis.
    pub fn duality_matrix(&self) -> Result<Vec<Vec<Poly>>, KernelError> {
        let n = self.classes.len();
        let mut m = vec![Vec::with_capacity(n); n];
        for w in 0..n {
            let col = self.expand(&self.classes[w])?;
            for (v, c) in col.into_iter().enumerate() {
                m[v].push(c);
            }
        }
        Ok(m)
    }

    pub fn is_dual(&self) -> Result<bool, KernelError> {
        let m = self.duality_matrix()?;
        Ok(m.iter().enumerate().all(|(v, row)| {
            row.iter().enumerate().all(|(w, c)| {
                if v == w {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            })
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn sl2_classes() {
        let h = alg("A1");
        let b = SchubertBasis::new(&h).unwrap();
        assert!(b.class(0).is_one());
        assert_eq!(b.class(1), &h.x_poly(&[1]));
        let omega_sq = h.x_poly(&[1]).pow(2);
        assert!(b.expand(&omega_sq).unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn duality_in_rank_two() {
        for t in ["A2", "B2", "G2"] {
            let h = alg(t);
            let b = SchubertBasis::new(&h).unwrap();
            assert!(b.is_dual().unwrap(), "{t}");
            let degrees: Vec<u32> = b.classes().iter().map(|c| c.degree().unwrap()).collect();
            let lens: Vec<u32> = h.group().elements().iter().map(|w| w.length() as u32).collect();
            assert_eq!(degrees, lens);
        }
    }
}
