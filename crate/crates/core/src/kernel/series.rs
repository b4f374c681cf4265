use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Ring-element operations for coefficient types that may carry context
/// (a Hecke element needs its root system to multiply, so there is no
/// context-free `zero()`).
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn vanishes(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

/// A point of the coroot lattice in simple-coroot coordinates.
///
/// Ordered by height (sum of coordinates) first, then lexicographically, so
/// series iterate from low to high degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice(pub Vec<i64>);

impl Lattice {
    pub fn zero(rank: usize) -> Self {
        Lattice(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Lattice(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &Lattice) -> Lattice {
        Lattice(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Lattice) -> Lattice {
        Lattice(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Lattice {
        Lattice(self.0.iter().map(|a| a * k).collect())
    }

    /// Pairing with a weight given in fundamental-weight coordinates.
    pub fn pair(&self, weight: &[i64]) -> i64 {
        self.0.iter().zip(weight).map(|(a, b)| a * b).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

impl Ord for Lattice {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Lattice {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{:?}", self.0)
    }
}

/// Truncated series `sum_beta c_beta q^beta` over the coroot lattice.
///
/// Only grades with `floor <= height(beta) <= max_height` are stored. The
/// window of a product shrinks so that every stored coefficient is exact:
/// multiplying windows `[f1, n1]` and `[f2, n2]` is reliable up to height
/// `min(n1 + f2, n2 + f1)`.
#[derive(Clone, PartialEq)]
pub struct GradedSeries<C> {
    rank: usize,
    floor: i64,
    max_height: i64,
    terms: BTreeMap<Lattice, C>,
}

impl<C: Coeff> GradedSeries<C> {
    pub fn zero(rank: usize, max_height: i64) -> Self {
        Self::with_window(rank, 0, max_height)
    }

    pub fn with_window(rank: usize, floor: i64, max_height: i64) -> Self {
        assert!(floor <= 0, "floor must be non-positive");
        GradedSeries {
            rank,
            floor,
            max_height,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, max_height: i64, c: C) -> Self {
        let mut s = Self::zero(rank, max_height);
        s.add_term(Lattice::zero(rank), c);
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn max_height(&self) -> i64 {
        self.max_height
    }

    pub fn in_window(&self, beta: &Lattice) -> bool {
        let h = beta.height();
        h >= self.floor && h <= self.max_height
    }

    pub fn add_term(&mut self, beta: Lattice, c: C) {
        assert_eq!(beta.rank(), self.rank);
        if !self.in_window(&beta) || c.vanishes() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(beta) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.vanishes() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn get(&self, beta: &Lattice) -> Option<&C> {
        self.terms.get(beta)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Lattice, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Lattice> {
        self.terms.keys().cloned().collect()
    }

    /// Drop everything above `max_height`.
    pub fn truncate(&self, max_height: i64) -> Self {
        let max_height = max_height.min(self.max_height);
        GradedSeries {
            rank: self.rank,
            floor: self.floor,
            max_height,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.height() <= max_height)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Restrict to the common window of `self` and `[floor, max_height]`.
    pub fn restrict(&self, floor: i64, max_height: i64) -> Self {
        let floor = floor.max(self.floor);
        let max_height = max_height.min(self.max_height);
        GradedSeries {
            rank: self.rank,
            floor,
            max_height,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.height() >= floor && b.height() <= max_height)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&Lattice, &C) -> D) -> GradedSeries<D> {
        let mut out = GradedSeries::with_window(self.rank, self.floor, self.max_height);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(b, c));
        }
        out
    }

    pub fn try_map<D: Coeff, E>(
        &self,
        f: impl Fn(&Lattice, &C) -> Result<D, E>,
    ) -> Result<GradedSeries<D>, E> {
        let mut out = GradedSeries::with_window(self.rank, self.floor, self.max_height);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(b, c)?);
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = GradedSeries {
            rank: self.rank,
            floor: self.floor.min(o.floor),
            max_height: self.max_height.min(o.max_height),
            terms: BTreeMap::new(),
        };
        for (b, c) in self.terms.iter().chain(o.terms.iter()) {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|_, c| c.neg_ref())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Truncated product with a caller-supplied coefficient product, for
    /// mixed products such as matrix times vector.
    pub fn mul_with<D: Coeff, E: Coeff>(
        &self,
        o: &GradedSeries<D>,
        f: impl Fn(&C, &D) -> E,
    ) -> GradedSeries<E> {
        assert_eq!(self.rank, o.rank);
        let max_height = (self.max_height + o.floor).min(o.max_height + self.floor);
        let mut out = GradedSeries::with_window(self.rank, self.floor + o.floor, max_height);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &o.terms {
                let b = b1.add(b2);
                if b.height() > max_height {
                    continue;
                }
                out.add_term(b, f(c1, c2));
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_with(o, |a, b| a.mul_ref(b))
    }

    /// The derivation `d_lambda q^beta = (lambda, beta) q^beta`.
    pub fn derive(&self, weight: &[i64], scale: impl Fn(&C, i64) -> C) -> Self {
        self.map(|b, c| scale(c, b.pair(weight)))
    }

    /// Relabel grades by a lattice map (e.g. a Weyl group element). The
    /// window is widened to the given bounds.
    pub fn regrade(&self, floor: i64, max_height: i64, f: impl Fn(&Lattice) -> Lattice) -> Self {
        let mut out = GradedSeries::with_window(self.rank, floor, max_height);
        for (b, c) in &self.terms {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Multiply by `q^shift`; the window moves with the shift.
    pub fn shift(&self, by: &Lattice) -> Self {
        let h = by.height();
        let mut out = GradedSeries::with_window(
            self.rank,
            (self.floor + h).min(0),
            self.max_height + h,
        );
        for (b, c) in &self.terms {
            out.add_term(b.add(by), c.clone());
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for GradedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}] ", self.floor, self.max_height)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<C: Coeff> Coeff for GradedSeries<C> {
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn zero_like(&self) -> Self {
        GradedSeries::with_window(self.rank, self.floor, self.max_height)
    }
    fn one_like(&self) -> Self {
        let one = self
            .terms
            .values()
            .next()
            .map(|c| c.one_like())
            .expect("one_like on an empty series needs a coefficient template");
        GradedSeries::constant(self.rank, self.max_height, one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, Rational};

    fn geometric(n: i64) -> GradedSeries<Rational> {
        let mut s = GradedSeries::zero(1, n);
        for d in 0..=n {
            s.add_term(Lattice(vec![d]), rat(1));
        }
        s
    }

    #[test]
    fn truncated_geometric_square() {
        // (sum q^d)^2 = sum (d+1) q^d
        let s = geometric(4);
        let sq = s.mul(&s);
        for d in 0..=4 {
            assert_eq!(sq.get(&Lattice(vec![d])), Some(&rat(d + 1)));
        }
        assert_eq!(sq.max_height(), 4);
    }

    #[test]
    fn laurent_window_shrinks() {
        let mut a = GradedSeries::with_window(1, -1, 3);
        a.add_term(Lattice(vec![-1]), rat(1));
        let b = geometric(3);
        let p = a.mul(&b);
        assert_eq!(p.floor(), -1);
        assert_eq!(p.max_height(), 2);
    }

    #[test]
    fn derivation_pairs_with_weight() {
        let mut s = GradedSeries::zero(2, 3);
        s.add_term(Lattice(vec![1, 2]), rat(1));
        let d = s.derive(&[1, 0], |c, k| c * rat(k));
        assert_eq!(d.get(&Lattice(vec![1, 2])), Some(&rat(1)));
        let d = s.derive(&[0, 1], |c, k| c * rat(k));
        assert_eq!(d.get(&Lattice(vec![1, 2])), Some(&rat(2)));
    }
}
