use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat, Coeff, KernelError, Rational};

/// Up to seven variables are packed into one machine word.
pub const MAX_VARS: usize = 7;
/// Total degree bound imposed by the packed layout.
pub const MAX_DEGREE: u32 = 255;

/// A monomial in at most [`MAX_VARS`] variables.
///
/// Layout: the top byte holds the total degree, the following seven bytes
/// hold the exponents of variables `0..7` from most to least significant.
/// Plain integer comparison is therefore graded lexicographic order with
/// variable 0 as the highest variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(var: usize) -> u32 {
        (48 - 8 * var) as u32
    }

    pub fn var(var: usize) -> Self {
        Self::from_exponents(&{
            let mut e = [0u32; MAX_VARS];
            e[var] = 1;
            e
        })
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut total = 0u32;
        let mut word = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_DEGREE, "exponent overflow");
            total += e;
            word |= (e as u64) << Self::shift(i);
        }
        assert!(total <= MAX_DEGREE, "total degree overflow");
        Monomial(word | ((total as u64) << 56))
    }

    pub fn exponent(self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|v| self.exponent(v)).collect()
    }

    pub fn degree(self) -> u32 {
        (self.0 >> 56) as u32
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        assert!(
            self.degree() + other.degree() <= MAX_DEGREE,
            "total degree overflow"
        );
        // byte-wise addition cannot carry: each exponent is bounded by the total
        Monomial(self.0 + other.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|v| self.exponent(v) <= other.exponent(v))
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0 - self.0)
    }

    /// The monomial with the exponent of `var` set to zero.
    pub fn without(self, var: usize) -> Monomial {
        let e = self.exponent(var) as u64;
        Monomial(self.0 - (e << Self::shift(var)) - (e << 56))
    }

    pub fn with_power(self, var: usize, e: u32) -> Monomial {
        self.mul(Monomial::var(var).pow(e))
    }

    pub fn pow(self, e: u32) -> Monomial {
        let mut out = Monomial::ONE;
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration is in
/// increasing graded-lex order and the leading term is the last entry.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars);
        Self::monomial(nvars, Monomial::var(v), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(nvars: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(i), c.clone());
            }
        }
        p
    }

    pub fn linear_int(nvars: usize, coeffs: &[i64]) -> Self {
        let c: Vec<Rational> = coeffs.iter().map(|&x| rat(x)).collect();
        Self::linear(nvars, &c)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::ONE)
                .is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::ONE)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Substitute every variable by a polynomial (all images share one ring).
    ///
    /// Images that are single terms are applied by monomial arithmetic; the
    /// remaining variables are expanded once per distinct exponent pattern.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        let simple: Vec<Option<(Monomial, Rational)>> = images
            .iter()
            .map(|p| {
                if p.terms.len() == 1 {
                    p.terms.iter().next().map(|(m, c)| (*m, c.clone()))
                } else {
                    None
                }
            })
            .collect();
        let general: Vec<usize> = (0..self.nvars)
            .filter(|&v| simple[v].is_none() && !images[v].is_zero())
            .collect();
        let zero_image: Vec<bool> = images.iter().map(|p| p.is_zero()).collect();
        let mut groups: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        'terms: for (m, c) in &self.terms {
            let mut mono = Monomial::ONE;
            let mut coeff = c.clone();
            for v in 0..self.nvars {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                if zero_image[v] {
                    continue 'terms;
                }
                if let Some((im, ic)) = &simple[v] {
                    mono = mono.mul(im.pow(e));
                    if !ic.is_one() {
                        coeff *= ic.pow(e);
                    }
                }
            }
            let key: Vec<u32> = general.iter().map(|&v| m.exponent(v)).collect();
            groups
                .entry(key)
                .or_insert_with(|| Poly::zero(target))
                .add_term(mono, coeff);
        }
        if general.len() == 1 {
            // Horner in the single expanded variable
            let img = &images[general[0]];
            let mut out = Poly::zero(target);
            let mut prev: Option<u32> = None;
            for (key, part) in groups.into_iter().rev() {
                if let Some(p) = prev {
                    for _ in key[0]..p {
                        out = &out * img;
                    }
                }
                out += &part;
                prev = Some(key[0]);
            }
            for _ in 0..prev.unwrap_or(0) {
                out = &out * img;
            }
            return out;
        }
        let mut powers: Vec<Vec<Poly>> = general
            .iter()
            .map(|&v| vec![Poly::one(target), images[v].clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (key, part) in groups {
            if part.is_zero() {
                continue;
            }
            let mut term = part;
            for (g, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = general[g];
                while powers[g].len() <= e as usize {
                    let next = &powers[g][powers[g].len() - 1] * &images[v];
                    powers[g].push(next);
                }
                term = &term * &powers[g][e as usize];
            }
            out += &term;
        }
        out
    }

    /// Substitute a single variable by a polynomial.
    pub fn substitute(&self, var: usize, image: &Poly) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|v| {
                if v == var {
                    image.clone()
                } else {
                    Poly::var(self.nvars, v)
                }
            })
            .collect();
        self.compose(&images)
    }

    /// Evaluate at a rational point (one value per variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, x) in point.iter().enumerate() {
                let e = m.exponent(v);
                if e > 0 {
                    term *= x.pow(e);
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluate only some variables; `None` keeps the variable symbolic.
    pub fn eval_partial(&self, point: &[Option<Rational>]) -> Poly {
        assert_eq!(point.len(), self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Monomial::ONE;
            for v in 0..self.nvars {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                match &point[v] {
                    Some(x) => coeff *= x.pow(e),
                    None => mono = mono.with_power(v, e),
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Re-embed into a ring with `nvars` variables; `map[v]` is the new index
    /// of old variable `v`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = [0u32; MAX_VARS];
            for (v, &nv) in map.iter().enumerate() {
                e[nv] += m.exponent(v);
            }
            out.add_term(Monomial::from_exponents(&e[..nvars]), c.clone());
        }
        out
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].add_term(m.without(var), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                out.add_term(m.with_power(var, k as u32), c.clone());
            }
        }
        out
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Make the leading coefficient positive; returns the sign applied.
    pub fn normalize_sign(&self) -> Poly {
        if self.leading_coeff().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn monic(&self) -> Poly {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&v| m.exponent(v) > 0)
                .map(|v| {
                    let name = names.get(v).copied().unwrap_or("?");
                    match m.exponent(v) {
                        1 => name.to_string(),
                        e => format!("{name}^{e}"),
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    fn default_names(&self) -> Vec<String> {
        (0..self.nvars).map(|v| format!("x{v}")).collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.default_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.fmt_with(&refs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl std::ops::SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Coeff for Poly {
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars)
    }
}

/// Exact quotient `f / g`.
///
/// Fails with [`KernelError::NotDivisible`] if `g` does not divide `f`.
pub fn exact_divide(f: &Poly, g: &Poly) -> Result<Poly, KernelError> {
    if g.is_zero() {
        return Err(KernelError::DivisionByZero);
    }
    let nvars = f.nvars;
    let (lm, lc) = g.leading().map(|(m, c)| (m, c.clone())).unwrap();
    let lc_inv = lc.recip();
    let mut rem = f.clone();
    let mut quot = Poly::zero(nvars);
    while let Some((m, c)) = rem.leading().map(|(m, c)| (m, c.clone())) {
        if !lm.divides(m) {
            return Err(KernelError::NotDivisible {
                remainder: format!("{:?}", Poly::monomial(nvars, m, c)),
            });
        }
        let qm = lm.quotient_of(m);
        let qc = &c * &lc_inv;
        quot.add_term(qm, qc.clone());
        let sub = g.mul_monomial(qm, &qc);
        rem -= &sub;
    }
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Poly {
        Poly::var(3, v)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(&[1, 0, 0]);
        let b = Monomial::from_exponents(&[0, 2, 0]);
        let c = Monomial::from_exponents(&[0, 1, 0]);
        assert!(b > a, "higher total degree wins");
        assert!(a > c, "lex on x0 breaks ties");
    }

    #[test]
    fn divide_zero_and_monomial() {
        let alpha = &x(0) + &x(1);
        assert!(exact_divide(&Poly::zero(3), &alpha).unwrap().is_zero());
        let sq = &alpha * &alpha;
        assert_eq!(exact_divide(&sq, &alpha).unwrap(), alpha);
    }

    #[test]
    fn divide_reports_remainder() {
        let err = exact_divide(&(&x(0) + &Poly::one(3)), &x(1)).unwrap_err();
        assert!(matches!(err, KernelError::NotDivisible { .. }));
    }

    #[test]
    fn compose_linear() {
        // x0 -> -x0 + x1 applied to x0^2
        let img = vec![&x(1) - &x(0), x(1), x(2)];
        let f = x(0).pow(2);
        let expected = (&x(1) - &x(0)).pow(2);
        assert_eq!(f.compose(&img), expected);
    }

    #[test]
    fn coefficients_roundtrip() {
        let f = &(&x(0).pow(3) * &x(1)) + &(&x(2) * &x(0));
        let cs = f.coefficients_in(0);
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coefficients_in(3, 0, &cs), f);
    }
}
