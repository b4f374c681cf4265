use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::poly::{exact_divide, Poly};
use super::{Coeff, KernelError, Rational};

/// Quotient of polynomials, reduced by the full multivariate gcd.
///
/// Canonical form: `gcd(num, den) = 1` and the leading coefficient of `den`
/// is 1, so structural equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(n),
            };
        }
        if let Some(c) = den.as_constant() {
            let inv = c.recip();
            return RatFunc {
                num: num.scale(&inv),
                den: Poly::one(n),
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                exact_divide(&num, &g).expect("gcd divides numerator"),
                exact_divide(&den, &g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// `num / den` already coprime; only normalizes the leading coefficient.
    fn lowest(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(n),
            };
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_poly(Poly::from_int(nvars, c))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::from_poly(Poly::var(nvars, v))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, KernelError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self, KernelError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(RatFunc {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, KernelError> {
        if o.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &o.den, &self.den * &o.num))
    }

    /// Substitute every variable by a rational function.
    pub fn compose(&self, images: &[RatFunc]) -> Result<Self, KernelError> {
        let eval = |p: &Poly| -> RatFunc {
            let target = images.first().map_or(p.nvars(), |r| r.nvars());
            let mut acc = RatFunc::zero(target);
            for (m, c) in p.terms() {
                let mut term = RatFunc::constant(target, c.clone());
                for (v, img) in images.iter().enumerate() {
                    let e = m.exponent(v);
                    if e > 0 {
                        term = &term * &img.pow(e as i32).expect("non-negative power");
                    }
                }
                acc = &acc + &term;
            }
            acc
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    /// Substitute variables by polynomials.
    pub fn compose_poly(&self, images: &[Poly]) -> Result<Self, KernelError> {
        RatFunc::new(self.num.compose(images), self.den.compose(images))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, KernelError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_partial(&self, point: &[Option<Rational>]) -> Result<Self, KernelError> {
        RatFunc::new(self.num.eval_partial(point), self.den.eval_partial(point))
    }

    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        RatFunc {
            num: self.num.remap(nvars, map),
            den: self.den.remap(nvars, map),
        }
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.den.is_one() {
            self.num.fmt_with(names)
        } else {
            format!("({})/({})", self.num.fmt_with(names), self.den.fmt_with(names))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `(p / g, q / g)` for `g = gcd(p, q)`.
fn cancel(p: &Poly, q: &Poly) -> (Poly, Poly) {
    if q.is_one() || p.is_constant() {
        return (p.clone(), q.clone());
    }
    let g = poly_gcd(p, q);
    if g.is_one() {
        (p.clone(), q.clone())
    } else {
        (
            exact_divide(p, &g).expect("gcd divides"),
            exact_divide(q, &g).expect("gcd divides"),
        )
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::reduce(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::lowest(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        if o.den.is_one() {
            return RatFunc::lowest(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        // a/b + c/d over lcm(b, d); only the gcd part of the denominator can cancel
        let g = poly_gcd(&self.den, &o.den);
        if g.is_one() {
            return RatFunc::lowest(
                &(&self.num * &o.den) + &(&o.num * &self.den),
                &self.den * &o.den,
            );
        }
        let b = exact_divide(&self.den, &g).expect("gcd divides");
        let d = exact_divide(&o.den, &g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&o.num * &b);
        let den = &(&b * &d) * &g;
        RatFunc::reduce(num, den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        // cross-cancel so that only coprime pieces are multiplied
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        RatFunc::lowest(&a * &c, &b * &d)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Coeff for RatFunc {
    fn vanishes(&self) -> bool {
        self.num.is_zero()
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
        RatFunc::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.nvars())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn reduces_common_factor() {
        let f = &v(0) + &v(1);
        let r = RatFunc::new(&f * &v(0), &f * &v(1)).unwrap();
        assert_eq!(r.num(), &v(0));
        assert_eq!(r.den(), &v(1));
    }

    #[test]
    fn difference_is_literal_zero() {
        // 1/(1-x) - x/(1-x) == 1
        let one = Poly::one(2);
        let d = &one - &v(0);
        let a = RatFunc::new(one.clone(), d.clone()).unwrap();
        let b = RatFunc::new(v(0), d).unwrap();
        assert!((&a - &b).is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(v(0), Poly::zero(2)).unwrap_err(),
            KernelError::DivisionByZero
        );
    }
}
