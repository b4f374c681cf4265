//! Canonical JSON form of polynomials: terms in ascending monomial order,
//! each as `[exponents, numerator, denominator]` with decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{KernelError, Monomial, Poly, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            nvars: p.nvars(),
            terms: p
                .terms()
                .map(|(m, c)| {
                    (
                        m.exponents(p.nvars()),
                        c.numer().to_string(),
                        c.denom().to_string(),
                    )
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for Poly {
    type Error = KernelError;
    fn try_from(j: &PolyJson) -> Result<Self, KernelError> {
        let bad = |s: &str| KernelError::Dimension(format!("malformed integer {s:?}"));
        let mut terms = Vec::with_capacity(j.terms.len());
        for (e, n, d) in &j.terms {
            if e.len() != j.nvars {
                return Err(KernelError::Dimension(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    j.nvars
                )));
            }
            let n: BigInt = n.parse().map_err(|_| bad(n))?;
            let d: BigInt = d.parse().map_err(|_| bad(d))?;
            if d == BigInt::from(0) {
                return Err(KernelError::DivisionByZero);
            }
            terms.push((Monomial::from_exponents(e), Rational::new(n, d)));
        }
        Ok(Poly::from_terms(j.nvars, terms))
    }
}

impl From<&RatFunc> for RatFuncJson {
    fn from(r: &RatFunc) -> Self {
        RatFuncJson {
            num: r.num().into(),
            den: r.den().into(),
        }
    }
}

impl TryFrom<&RatFuncJson> for RatFunc {
    type Error = KernelError;
    fn try_from(j: &RatFuncJson) -> Result<Self, KernelError> {
        RatFunc::new(Poly::try_from(&j.num)?, Poly::try_from(&j.den)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ratio;

    #[test]
    fn roundtrip() {
        let x = Poly::var(2, 0);
        let t = Poly::var(2, 1);
        let p = &(&x * &t).scale(&ratio(3, 4)) - &Poly::one(2);
        let r = RatFunc::new(p.clone(), &x + &t).unwrap();
        let j = RatFuncJson::from(&r);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(
            s,
            r#"{"num":{"nvars":2,"terms":[[[0,0],"-1","1"],[[1,1],"3","4"]]},"den":{"nvars":2,"terms":[[[0,1],"1","1"],[[1,0],"1","1"]]}}"#
        );
        let back: RatFuncJson = serde_json::from_str(&s).unwrap();
        assert_eq!(RatFunc::try_from(&back).unwrap(), r);
    }
}
