use std::collections::BTreeMap;
use std::fmt;

use super::{Coeff, KernelError};

/// Number of `1/t` orders kept below the leading term unless stated otherwise.
pub const DEFAULT_CUTOFF: usize = 6;

/// Expansion `sum_{k >= floor} c_k t^k` in decreasing powers of `t`.
///
/// Coefficients below `floor` are unknown, not zero. A series built from a
/// finite Laurent polynomial can use any floor below its lowest term.
#[derive(Clone, PartialEq)]
pub struct TLaurent<C> {
    zero: C,
    floor: i64,
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> TLaurent<C> {
    pub fn zero(zero: C, floor: i64) -> Self {
        TLaurent {
            zero: zero.zero_like(),
            floor,
            terms: BTreeMap::new(),
        }
    }

    /// `c t^e`, known exactly down to `floor`.
    pub fn monomial(c: C, e: i64, floor: i64) -> Self {
        let mut s = Self::zero(c.zero_like(), floor);
        s.add_term(e, c);
        s
    }

    /// `c t^e` with [`DEFAULT_CUTOFF`] orders of slack.
    pub fn leading(c: C, e: i64) -> Self {
        Self::monomial(c, e, e + 1 - DEFAULT_CUTOFF as i64)
    }

    pub fn from_terms(zero: C, floor: i64, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut s = Self::zero(zero, floor);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn add_term(&mut self, e: i64, c: C) {
        if e < self.floor || c.vanishes() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if !sum.vanishes() {
            self.terms.insert(e, sum);
        }
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    /// Keep `cutoff` orders counted from the leading exponent.
    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        match self.leading_exponent() {
            None => self.clone(),
            Some(e) => {
                let floor = (e + 1 - cutoff as i64).max(self.floor);
                Self::from_terms(
                    self.zero.clone(),
                    floor,
                    self.terms.iter().map(|(k, c)| (*k, c.clone())),
                )
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.zero.clone(), self.floor.max(o.floor));
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(
            self.zero.clone(),
            self.floor,
            self.terms.iter().map(|(e, c)| (*e, c.neg_ref())),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product, exact down to `max(lead1 + floor2, lead2 + floor1)`.
    pub fn mul(&self, o: &Self) -> Self {
        let (Some(l1), Some(l2)) = (self.leading_exponent(), o.leading_exponent()) else {
            let floor = match (self.leading_exponent(), o.leading_exponent()) {
                (Some(l), None) => l + o.floor,
                (None, Some(l)) => l + self.floor,
                _ => self.floor + o.floor,
            };
            return Self::zero(self.zero.clone(), floor);
        };
        let floor = (l1 + o.floor).max(l2 + self.floor);
        let mut out = Self::zero(self.zero.clone(), floor);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn map<D: Coeff>(&self, zero: D, f: impl Fn(&C) -> D) -> TLaurent<D> {
        TLaurent::from_terms(zero, self.floor, self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_terms(
            self.zero.clone(),
            self.floor + k,
            self.terms.iter().map(|(e, c)| (e + k, c.clone())),
        )
    }
}

/// Value at `t = infinity`: the `t^0` coefficient when no positive power
/// survives.
pub fn t_limit<C: Coeff>(x: &TLaurent<C>) -> Result<C, KernelError> {
    match x.leading_exponent() {
        Some(e) if e > 0 => Err(KernelError::Diverges { exponent: e }),
        _ if x.floor > 0 => Err(KernelError::Dimension(format!(
            "t-expansion known only down to t^{}",
            x.floor
        ))),
        _ => Ok(x.coeff(0)),
    }
}

impl<C: Coeff> fmt::Debug for TLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?}) t^{e}")?;
        }
        write!(f, " + O(t^{})", self.floor - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, Rational};

    fn z() -> Rational {
        rat(0)
    }

    #[test]
    fn vanishing_limit() {
        let x = TLaurent::leading(rat(5), -1);
        assert_eq!(t_limit(&x).unwrap(), rat(0));
    }

    #[test]
    fn constant_term_limit() {
        let x = TLaurent::from_terms(z(), -6, [(0, rat(3)), (-2, rat(7))]);
        assert_eq!(t_limit(&x).unwrap(), rat(3));
    }

    #[test]
    fn divergent_limit() {
        let x = TLaurent::from_terms(z(), -6, [(1, rat(1)), (0, rat(7))]);
        assert_eq!(t_limit(&x).unwrap_err(), KernelError::Diverges { exponent: 1 });
    }

    #[test]
    fn product_floor() {
        // (t + 1 + O(t^-2)) * (1 + O(t^-2)) is known down to t^0
        let a = TLaurent::from_terms(z(), -1, [(1, rat(1)), (0, rat(1))]);
        let b = TLaurent::from_terms(z(), -1, [(0, rat(1))]);
        let p = a.mul(&b);
        assert_eq!(p.floor(), 0);
        assert_eq!(p.coeff(1), rat(1));
        assert_eq!(p.coeff(0), rat(1));
    }
}
