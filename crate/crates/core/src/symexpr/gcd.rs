//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive scheme: strip monomial content, reduce through variables that
//! occur in only one argument (the gcd must then divide that argument's
//! content in the variable), and otherwise run Brown's subresultant PRS in
//! a main variable with coefficients in the remaining variables.

use super::poly::Polynomial;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(&vars);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.meet(&mb);
    let g = gcd_primitive_monomial(&a.div_monomial(&ma), &b.div_monomial(&mb));
    g.mul_monomial(&m, &num_traits::One::one()).monic()
}

/// Both arguments are nonzero and free of monomial content.
fn gcd_primitive_monomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(&vars);
    }
    let am = a.monic();
    let bm = b.monic();
    if am == bm {
        return am;
    }

    let sa = a.support();
    let sb = b.support();
    if let Some(x) = (0..sa.len()).find(|&i| sa[i] && !sb[i]) {
        return gcd_with_coefficients(b, a, x);
    }
    if let Some(x) = (0..sb.len()).find(|&i| sb[i] && !sa[i]) {
        return gcd_with_coefficients(a, b, x);
    }

    // Cheap trial division catches the common case where one argument is
    // a factor of the other (e.g. powers of a shared denominator).
    let (small, large) = if a.num_terms() <= b.num_terms() {
        (&am, &bm)
    } else {
        (&bm, &am)
    };
    if small.total_degree() <= large.total_degree() && small.divides(large) {
        return small.clone();
    }

    let x = (0..sa.len())
        .filter(|&i| sa[i])
        .min_by_key(|&i| (a.degree_in(i).max(b.degree_in(i)), i))
        .expect("non-constant polynomial has a variable");
    subresultant_gcd(a, b, x)
}

/// gcd(keep, other) where `x` occurs in `other` but not in `keep`.
fn gcd_with_coefficients(keep: &Polynomial, other: &Polynomial, x: usize) -> Polynomial {
    let mut g = keep.monic();
    for c in other.coefficients_in(x) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

type UPoly = Vec<Polynomial>;

fn trim(p: &mut UPoly) {
    while p.len() > 1 && p.last().is_some_and(Polynomial::is_zero) {
        p.pop();
    }
}

fn is_zero(p: &UPoly) -> bool {
    p.iter().all(Polynomial::is_zero)
}

fn deg(p: &UPoly) -> usize {
    p.len() - 1
}

fn content(p: &UPoly) -> Polynomial {
    let mut g = Polynomial::zero(p[0].vars());
    for c in p {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_coeffs(p: &UPoly, d: &Polynomial) -> UPoly {
    p.iter()
        .map(|c| c.exact_div(d).expect("exact coefficient division"))
        .collect()
}

fn primitive_part(p: &UPoly) -> UPoly {
    let c = content(p);
    div_coeffs(p, &c)
}

fn pseudo_remainder(a: &UPoly, b: &UPoly) -> UPoly {
    let db = deg(b);
    let lcb = &b[db];
    let mut r = a.clone();
    let mut remaining = deg(a) + 1 - db;
    while !is_zero(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(bc * &lr);
        }
        trim(&mut r);
        remaining -= 1;
    }
    if remaining > 0 {
        let f = lcb.pow(remaining as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd(a: &Polynomial, b: &Polynomial, x: usize) -> Polynomial {
    let vars = a.vars().clone();
    let mut ua = a.coefficients_in(x);
    let mut ub = b.coefficients_in(x);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd(&ca, &cb);
    ua = div_coeffs(&ua, &ca);
    ub = div_coeffs(&ub, &cb);
    if deg(&ua) < deg(&ub) {
        std::mem::swap(&mut ua, &mut ub);
    }

    let mut g = Polynomial::one(&vars);
    let mut h = Polynomial::one(&vars);
    let result = loop {
        let delta = deg(&ua) - deg(&ub);
        let r = pseudo_remainder(&ua, &ub);
        if is_zero(&r) {
            break ub;
        }
        if deg(&r) == 0 {
            break vec![Polynomial::one(&vars)];
        }
        ua = ub;
        let divisor = &g * &h.pow(delta as u32);
        ub = div_coeffs(&r, &divisor);
        g = ua[deg(&ua)].clone();
        if delta > 0 {
            let num = g.pow(delta as u32);
            let den = h.pow(delta as u32 - 1);
            h = num.exact_div(&den).expect("subresultant h update is exact");
        }
    };
    let pp = primitive_part(&result);
    (&Polynomial::from_coefficients_in(&vars, x, &pp) * &c).monic()
}
