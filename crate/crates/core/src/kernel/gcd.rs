//! Multivariate gcd over the rationals by recursive primitive remainder
//! sequences. Adequate for the low-degree, few-variable polynomials that
//! appear in connection coefficients.

use super::poly::{exact_divide, Poly};

/// Monic gcd (leading coefficient 1 in graded-lex order). `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Poly {
    let n = f.nvars();
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one(n);
    }
    if f == g {
        return f.monic();
    }
    // cheap divisibility probe before the full remainder sequence
    let (small, big) = if f.num_terms() <= g.num_terms() {
        (f, g)
    } else {
        (g, f)
    };
    if small.degree() <= big.degree() && exact_divide(big, small).is_ok() {
        return small.monic();
    }

    // a variable used by only one side can be eliminated through contents
    for v in 0..n {
        match (f.uses_var(v), g.uses_var(v)) {
            (true, false) => return poly_gcd(&poly_content(f, v), g),
            (false, true) => return poly_gcd(f, &poly_content(g, v)),
            _ => {}
        }
    }
    let var = (0..n)
        .filter(|&v| f.uses_var(v))
        .min_by_key(|&v| (f.degree_in(v).max(g.degree_in(v)), v))
        .expect("non-constant polynomial uses a variable");

    let cf = poly_content(f, var);
    let cg = poly_content(g, var);
    let content = poly_gcd(&cf, &cg);
    let mut a = exact_divide(f, &cf).expect("content divides");
    let mut b = exact_divide(g, &cg).expect("content divides");
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == Some(0) {
            b = Poly::one(n);
            break;
        }
        a = b;
        b = primitive_part(&r, var);
    }
    let b = primitive_part(&b, var);
    (&content * &b).monic()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `var`.
pub fn poly_content(f: &Poly, var: usize) -> Poly {
    let mut acc = Poly::zero(f.nvars());
    for c in f.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, &c);
        if acc.is_constant() {
            return Poly::one(f.nvars());
        }
    }
    acc
}

fn primitive_part(f: &Poly, var: usize) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    let c = poly_content(f, var);
    exact_divide(f, &c).expect("content divides").monic()
}

fn pseudo_remainder(a: &Poly, b: &Poly, var: usize) -> Poly {
    let n = a.nvars();
    let bc = b.coefficients_in(var);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let mut r = a.coefficients_in(var);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in bc.iter().enumerate() {
            let t = &lr * bk;
            r[k + shift] -= &t;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    Poly::from_coefficients_in(n, var, &r).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Poly {
        Poly::var(3, v)
    }

    #[test]
    fn gcd_of_products() {
        let common = &(&x(0) + &x(1)) * &(&x(2) - &Poly::from_int(3, 2));
        let f = &common * &(&x(0) - &x(2));
        let g = &common * &(&x(1).pow(2) + &Poly::one(3));
        assert_eq!(poly_gcd(&f, &g), common.monic());
    }

    #[test]
    fn coprime() {
        let f = &x(0) + &Poly::one(3);
        let g = &x(1) + &x(0);
        assert!(poly_gcd(&f, &g).is_one());
    }

    #[test]
    fn content_in_variable() {
        // (x1 + 1) * (x0^2 + x2)
        let f = &(&x(1) + &Poly::one(3)) * &(&x(0).pow(2) + &x(2));
        assert_eq!(poly_content(&f, 0), (&x(1) + &Poly::one(3)).monic());
    }
}
