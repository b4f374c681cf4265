//! Graded affine Hecke algebra `H_t` and nil-Hecke algebra, stored in normal
//! order `sum_w f_w(x, t) w` with polynomial coefficients on the left.
//!
//! Polynomials use variables `X_1..X_r` (the classes `x_{omega_i}`) and `t`
//! at index `r`.

mod module;
mod principal;
mod schubert;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::kernel::{exact_divide, rat, Coeff, KernelError, Poly, Rational};
use crate::roots::{CartanType, RootSystem, RootsError, WeylGroup};

pub use module::{braid_order, check_relations, monomials_up_to, nil_word_consistency, NilWordCheck, RelationCheck};
pub use principal::{
    find_intertwiner, generated_algebra_dim, principal_series, spectrum_matches, FiniteModule,
    FiniteModuleJson,
};
pub use schubert::SchubertBasis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    /// `s_i x_lambda - x_{s_i lambda} s_i = t (alpha_i^vee, lambda)`.
    Ht,
    /// `sbar_i x_lambda - x_{s_i lambda} sbar_i = (alpha_i^vee, lambda)`, `sbar_i^2 = 0`.
    Nil,
}

#[derive(Debug, thiserror::Error)]
pub enum HeckeError {
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Shared context: the Weyl group and its action on `Sym(t^*)[t]`.
#[derive(Debug)]
pub struct HeckeAlgebra {
    group: WeylGroup,
    nvars: usize,
    /// For each `w`, the images `w . X_k` (and `t`) as substitution data.
    images: Vec<Vec<Poly>>,
    alphas: Vec<Poly>,
}

impl HeckeAlgebra {
    pub fn new(kind: CartanType) -> Result<Arc<Self>, HeckeError> {
        let rs = RootSystem::build(kind)?;
        let group = WeylGroup::new(&rs)?;
        Ok(Self::from_group(group))
    }

    pub fn from_group(group: WeylGroup) -> Arc<Self> {
        let rs = group.root_system();
        let r = rs.rank();
        let nvars = r + 1;
        let images = group
            .elements()
            .iter()
            .map(|w| {
                let mut im: Vec<Poly> = (0..r)
                    .map(|k| {
                        let mut e = vec![0; r];
                        e[k] = 1;
                        weight_poly(nvars, &w.act_weight(&e))
                    })
                    .collect();
                im.push(Poly::var(nvars, r));
                im
            })
            .collect();
        let alphas = (0..r).map(|i| weight_poly(nvars, &rs.cartan()[i])).collect();
        Arc::new(HeckeAlgebra {
            group,
            nvars,
            images,
            alphas,
        })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn rank(&self) -> usize {
        self.nvars - 1
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Index of the variable `t`.
    pub fn t_var(&self) -> usize {
        self.nvars - 1
    }

    pub fn t(&self) -> Poly {
        Poly::var(self.nvars, self.t_var())
    }

    /// `x_lambda` for a weight in fundamental-weight coordinates.
    pub fn x_poly(&self, weight: &[i64]) -> Poly {
        weight_poly(self.nvars, weight)
    }

    /// Simple root `alpha_i` as a linear polynomial.
    pub fn alpha(&self, i: usize) -> &Poly {
        &self.alphas[i]
    }

    /// The positive root with index `k` as a linear polynomial.
    pub fn root_poly(&self, k: usize) -> Poly {
        let rs = self.root_system();
        self.x_poly(&rs.root_to_weight(&rs.root(k).coords))
    }

    /// `w . f`.
    pub fn act_on_poly(&self, w: usize, f: &Poly) -> Poly {
        if w == 0 {
            return f.clone();
        }
        f.compose(&self.images[w])
    }

    /// Demazure operator `(f - s_i f) / alpha_i`.
    pub fn demazure(&self, i: usize, f: &Poly) -> Result<Poly, KernelError> {
        let w = self.group.simple(i);
        exact_divide(&(f - &self.act_on_poly(w, f)), &self.alphas[i])
    }

    /// Demazure operator along a word, rightmost letter first.
    pub fn demazure_word(&self, word: &[u8], f: &Poly) -> Result<Poly, KernelError> {
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = self.demazure(i as usize, &g)?;
        }
        Ok(g)
    }

    pub fn zero(self: &Arc<Self>, flavor: Flavor) -> HeckeElement {
        HeckeElement {
            alg: self.clone(),
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn poly(self: &Arc<Self>, flavor: Flavor, f: Poly) -> HeckeElement {
        self.term(flavor, 0, f)
    }

    pub fn one(self: &Arc<Self>, flavor: Flavor) -> HeckeElement {
        self.poly(flavor, Poly::one(self.nvars))
    }

    pub fn scalar(self: &Arc<Self>, flavor: Flavor, c: i64) -> HeckeElement {
        self.poly(flavor, Poly::from_int(self.nvars, c))
    }

    pub fn x(self: &Arc<Self>, flavor: Flavor, weight: &[i64]) -> HeckeElement {
        self.poly(flavor, self.x_poly(weight))
    }

    /// The group element `w` (or `wbar` in the nil flavor).
    pub fn element(self: &Arc<Self>, flavor: Flavor, w: usize) -> HeckeElement {
        self.term(flavor, w, Poly::one(self.nvars))
    }

    pub fn simple(self: &Arc<Self>, flavor: Flavor, i: usize) -> HeckeElement {
        self.element(flavor, self.group.simple(i))
    }

    pub fn term(self: &Arc<Self>, flavor: Flavor, w: usize, f: Poly) -> HeckeElement {
        let mut e = self.zero(flavor);
        e.add_term(w, f);
        e
    }

    /// Product of basis elements `u * v` (`ubar * vbar` for the nil flavor).
    fn group_product(&self, flavor: Flavor, u: usize, v: usize) -> Option<usize> {
        match flavor {
            Flavor::Ht => Some(self.group.multiply(u, v)),
            Flavor::Nil => self
                .group
                .lengths_add(u, v)
                .then(|| self.group.multiply(u, v)),
        }
    }

    /// Rewrite `u * g` in normal order `sum_y h_y y`.
    fn move_left(&self, flavor: Flavor, u: usize, g: &Poly) -> Vec<(usize, Poly)> {
        let mut state: BTreeMap<usize, Poly> = BTreeMap::new();
        state.insert(0, g.clone());
        let t = self.t();
        for &i in self.group.element(u).word().iter().rev() {
            let i = i as usize;
            let si = self.group.simple(i);
            let mut next: BTreeMap<usize, Poly> = BTreeMap::new();
            for (y, h) in state {
                // s_i h y = (s_i . h) s_i y + c * d_i(h) y
                if let Some(sy) = self.group_product(flavor, si, y) {
                    let hs = self.act_on_poly(si, &h);
                    accumulate(&mut next, sy, hs);
                }
                let dh = self.demazure(i, &h).expect("Demazure numerator divisible by root");
                let dh = match flavor {
                    Flavor::Ht => &t * &dh,
                    Flavor::Nil => dh,
                };
                accumulate(&mut next, y, dh);
            }
            state = next;
        }
        state.into_iter().collect()
    }

    /// Rewrite `f * u` as `sum_y y g_y` (group elements on the left).
    pub fn move_right(&self, flavor: Flavor, f: &Poly, u: usize) -> Vec<(usize, Poly)> {
        self.move_right_word(flavor, f, self.group.element(u).word())
    }

    fn move_right_word(&self, flavor: Flavor, f: &Poly, word: &[u8]) -> Vec<(usize, Poly)> {
        let mut state: BTreeMap<usize, Poly> = BTreeMap::new();
        state.insert(0, f.clone());
        let t = self.t();
        for &i in word {
            let i = i as usize;
            let si = self.group.simple(i);
            let mut next: BTreeMap<usize, Poly> = BTreeMap::new();
            for (y, g) in state {
                // y g s_i = (y s_i)(s_i . g) + c * y d_i(g)
                if let Some(ys) = self.group_product(flavor, y, si) {
                    accumulate(&mut next, ys, self.act_on_poly(si, &g));
                }
                let dg = self.demazure(i, &g).expect("Demazure numerator divisible by root");
                let dg = match flavor {
                    Flavor::Ht => &t * &dg,
                    Flavor::Nil => dg,
                };
                accumulate(&mut next, y, dg);
            }
            state = next;
        }
        state.into_iter().collect()
    }

    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        assert_eq!(a.flavor, b.flavor, "flavor mismatch");
        let flavor = a.flavor;
        let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
        for (u, f) in &a.terms {
            for (v, g) in &b.terms {
                for (y, h) in self.move_left(flavor, *u, g) {
                    if let Some(yv) = self.group_product(flavor, y, *v) {
                        accumulate(&mut out, yv, f * &h);
                    }
                }
            }
        }
        HeckeElement {
            alg: a.alg.clone(),
            flavor,
            terms: out,
        }
    }

    /// Action of `s_i` (`Ht`) or `sbar_i` (`Nil`) on the polynomial module.
    pub fn act_simple(&self, flavor: Flavor, i: usize, f: &Poly) -> Result<Poly, KernelError> {
        match flavor {
            Flavor::Ht => self.act_simple_t(i, f),
            Flavor::Nil => self.demazure(i, f),
        }
    }

    /// `s_i(f) = f - (f - f^{s_i})(1 - t/alpha_i)`.
    pub fn act_simple_t(&self, i: usize, f: &Poly) -> Result<Poly, KernelError> {
        let fs = self.act_on_poly(self.group.simple(i), f);
        let d = exact_divide(&(f - &fs), &self.alphas[i])?;
        Ok(&fs + &(&self.t() * &d))
    }

    /// Composite action along a word, rightmost letter first.
    pub fn act_word(&self, flavor: Flavor, word: &[u8], f: &Poly) -> Result<Poly, KernelError> {
        let mut g = f.clone();
        for &i in word.iter().rev() {
            if g.is_zero() {
                break;
            }
            g = self.act_simple(flavor, i as usize, &g)?;
        }
        Ok(g)
    }

    /// Action of an algebra element on the polynomial module.
    pub fn act(&self, h: &HeckeElement, f: &Poly) -> Result<Poly, KernelError> {
        let mut acc = Poly::zero(self.nvars);
        for (w, c) in &h.terms {
            let g = self.act_word(h.flavor, self.group.element(*w).word(), f)?;
            acc += &(c * &g);
        }
        Ok(acc)
    }
}

fn accumulate(map: &mut BTreeMap<usize, Poly>, k: usize, v: Poly) {
    if v.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Linear polynomial `sum_k weight_k X_k`.
pub fn weight_poly(nvars: usize, weight: &[i64]) -> Poly {
    let mut coeffs: Vec<Rational> = weight.iter().map(|&c| rat(c)).collect();
    coeffs.resize(nvars, rat(0));
    Poly::linear(nvars, &coeffs)
}

/// Normal-ordered element `sum_w f_w w`.
#[derive(Clone)]
pub struct HeckeElement {
    alg: Arc<HeckeAlgebra>,
    flavor: Flavor,
    terms: BTreeMap<usize, Poly>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, o: &Self) -> bool {
        self.flavor == o.flavor && self.terms == o.terms
    }
}

impl HeckeElement {
    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(w, f)| (*w, f))
    }

    pub fn coeff(&self, w: usize) -> Poly {
        self.terms
            .get(&w)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.alg.nvars))
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: usize, f: Poly) {
        accumulate(&mut self.terms, w, f);
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, f) in &o.terms {
            out.add_term(*w, f.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|f| -f)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.alg.multiply(self, o)
    }

    /// Left multiplication by a polynomial.
    pub fn scale(&self, f: &Poly) -> Self {
        self.map_coeffs(|c| f * c)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = rat(k);
        self.map_coeffs(|c| c.scale(&k))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = self.alg.zero(self.flavor);
        for (w, c) in &self.terms {
            out.add_term(*w, f(c));
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn act(&self, f: &Poly) -> Result<Poly, KernelError> {
        self.alg.act(self, f)
    }

    pub fn fmt_terms(&self) -> String {
        let names = self.alg.var_names();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, f) in &self.terms {
            let word = self.alg.group.element(*w).word();
            let g = if word.is_empty() {
                "e".to_string()
            } else {
                let bar = if self.flavor == Flavor::Nil { "~" } else { "" };
                word.iter().map(|i| format!("s{}{bar}", i + 1)).collect::<Vec<_>>().join("")
            };
            parts.push(format!("({}) {}", f.fmt_with(&names), g));
        }
        parts.join(" + ")
    }
}

impl HeckeAlgebra {
    pub fn var_names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.rank()).map(|i| format!("x{i}")).collect();
        v.push("t".into());
        v
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_terms())
    }
}

impl Coeff for HeckeElement {
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
        self.alg.zero(self.flavor)
    }
    fn one_like(&self) -> Self {
        self.alg.one(self.flavor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn sl2_simple_action() {
        let h = alg("A1");
        let a = h.alpha(0).clone();
        let got = h.act_simple_t(0, &a).unwrap();
        let expect = &(-&a) + &h.t().scale(&rat(2));
        assert_eq!(got, expect);
        assert_eq!(h.act_simple_t(0, &Poly::one(2)).unwrap(), Poly::one(2));
    }

    #[test]
    fn demazure_linear() {
        let h = alg("A2");
        assert_eq!(h.demazure(0, h.alpha(0)).unwrap(), Poly::from_int(3, 2));
        let w1 = h.x_poly(&[1, 0]);
        assert_eq!(h.demazure(0, &w1).unwrap(), Poly::from_int(3, 1));
        assert!(h.demazure(1, &w1).unwrap().is_zero());
    }

    #[test]
    fn cross_relation_normal_ordering() {
        for flavor in [Flavor::Ht, Flavor::Nil] {
            let h = alg("B2");
            for i in 0..2 {
                for lam in [[1, 0], [0, 1], [2, -1]] {
                    let s = h.simple(flavor, i);
                    let x = h.x(flavor, &lam);
                    let slam = h.root_system().reflect_weight(i, &lam);
                    let lhs = s.mul(&x).sub(&h.x(flavor, &slam).mul(&s));
                    let c = lam[i];
                    let expect = match flavor {
                        Flavor::Ht => h.poly(flavor, h.t().scale(&rat(c))),
                        Flavor::Nil => h.scalar(flavor, c),
                    };
                    assert_eq!(lhs, expect);
                }
            }
        }
    }

    #[test]
    fn nil_square_vanishes() {
        let h = alg("A2");
        let s = h.simple(Flavor::Nil, 0);
        assert!(s.mul(&s).is_zero());
        let s = h.simple(Flavor::Ht, 0);
        assert_eq!(s.mul(&s), h.one(Flavor::Ht));
    }

    #[test]
    fn action_is_compatible_with_product() {
        let h = alg("A2");
        let f = &h.x_poly(&[2, 1]).pow(2) * &h.x_poly(&[0, 1]);
        for flavor in [Flavor::Ht, Flavor::Nil] {
            let a = h.simple(flavor, 0).add(&h.x(flavor, &[1, 1]));
            let b = h.x(flavor, &[0, 1]).mul(&h.simple(flavor, 1));
            let lhs = a.mul(&b).act(&f).unwrap();
            let rhs = a.act(&b.act(&f).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
