use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::Polynomial;
use super::vars::{VarSet, Variable};
use super::SymError;

/// Quotient of two polynomials kept in canonical form: numerator and
/// denominator coprime, denominator with leading coefficient 1, and the
/// zero function stored as `0/1`. Canonical form makes structural equality
/// coincide with equality of functions.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        if num.vars() != den.vars() {
            return Err(SymError::VarSetMismatch);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Assumes `gcd(num, den) = 1`; only fixes the denominator scaling.
    fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            let one = Polynomial::one(den.vars());
            return RationalFunction { num, den: one };
        }
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let one = Polynomial::one(p.vars());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Self::from_polynomial(Polynomial::zero(vars))
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::from_polynomial(Polynomial::one(vars))
    }

    pub fn constant(vars: &VarSet, c: BigRational) -> Self {
        Self::from_polynomial(Polynomial::constant(vars, c))
    }

    pub fn from_int(vars: &VarSet, c: i64) -> Self {
        Self::from_polynomial(Polynomial::from_int(vars, c))
    }

    pub fn var(vars: &VarSet, index: usize) -> Self {
        Self::from_polynomial(Polynomial::var(vars, index))
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Re-runs the gcd reduction. The result is always equal to `self`
    /// since values are kept canonical; exposed for testing.
    pub fn normalize(&self) -> Self {
        Self::new(self.num.clone(), self.den.clone()).expect("denominator nonzero")
    }

    /// Equality decided by cross-multiplication, independent of canonical form.
    pub fn equals_by_cross_multiplication(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn recip(&self) -> Result<Self, SymError> {
        if self.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, SymError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Partial derivative by the quotient rule.
    pub fn derivative(&self, var: usize) -> Self {
        let dn = self.num.derivative(var);
        if self.den.is_constant() {
            return RationalFunction {
                num: dn,
                den: self.den.clone(),
            };
        }
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::new(num, self.den.pow(2)).expect("nonzero denominator")
    }

    pub fn derivative_by(&self, v: &Variable) -> Result<Self, SymError> {
        if !self.vars().contains(v) {
            return Err(SymError::UnknownVariable {
                name: v.name.clone(),
                pos: 0,
            });
        }
        Ok(self.derivative(v.index))
    }

    pub fn eval_at(&self, point: &[BigRational]) -> Result<BigRational, SymError> {
        if point.len() != self.vars().len() {
            return Err(SymError::VarSetMismatch);
        }
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(SymError::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitutes `images[i]` (functions over `target`) for variable `i`.
    pub fn compose(&self, target: &VarSet, images: &[RationalFunction]) -> Result<Self, SymError> {
        if images.len() != self.vars().len() || images.iter().any(|f| f.vars() != target) {
            return Err(SymError::VarSetMismatch);
        }
        let num = compose_poly(&self.num, target, images);
        let den = compose_poly(&self.den, target, images);
        num.checked_div(&den).map_err(|_| SymError::Pole)
    }

    /// Replaces the bound variables and leaves every other variable in place.
    pub fn substitute(&self, bindings: &[(Variable, RationalFunction)]) -> Result<Self, SymError> {
        let vars = self.vars().clone();
        let mut images: Vec<RationalFunction> = (0..vars.len()).map(|i| Self::var(&vars, i)).collect();
        for (v, f) in bindings {
            if !vars.contains(v) {
                return Err(SymError::UnknownVariable {
                    name: v.name.clone(),
                    pos: 0,
                });
            }
            images[v.index] = f.clone();
        }
        self.compose(&vars, &images)
    }

    /// Re-expresses the function over `target`, matching variables by name.
    pub fn embed(&self, target: &VarSet) -> Option<Self> {
        Some(RationalFunction {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
        .map(|f| f.normalize())
    }

    /// Swaps variables pairwise; with real coefficients this is complex
    /// conjugation when the pairs are `(z, z̄)`.
    pub fn conjugate(&self, pairs: &[(usize, usize)]) -> Self {
        let vars = self.vars().clone();
        let mut images: Vec<Polynomial> = (0..vars.len()).map(|i| Polynomial::var(&vars, i)).collect();
        for &(a, b) in pairs {
            images.swap(a, b);
        }
        let num = self.num.compose(&vars, &images);
        let den = self.den.compose(&vars, &images);
        Self::new(num, den).expect("permutation keeps denominator nonzero")
    }
}

fn compose_poly(p: &Polynomial, target: &VarSet, images: &[RationalFunction]) -> RationalFunction {
    if images.iter().all(RationalFunction::is_polynomial) {
        let polys: Vec<Polynomial> = images.iter().map(|f| f.num.clone()).collect();
        return RationalFunction::from_polynomial(p.compose(target, &polys));
    }
    let mut powers: Vec<Vec<RationalFunction>> = images
        .iter()
        .map(|f| vec![RationalFunction::one(target), f.clone()])
        .collect();
    let mut acc = RationalFunction::zero(target);
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(target, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let cache = &mut powers[i];
            while cache.len() <= e as usize {
                let next = &cache[cache.len() - 1] * &cache[1];
                cache.push(next);
            }
            t = &t * &cache[e as usize];
        }
        acc = &acc + &t;
    }
    acc
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

fn needs_parens(p: &Polynomial) -> bool {
    p.num_terms() > 1 || p.to_string().starts_with('-')
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        // a single-term denominator like 2*x must still be grouped
        let den_single_factor = self.den.num_terms() == 1
            && self.den.leading_coefficient().is_one()
            && self
                .den
                .leading_term()
                .is_some_and(|(m, _)| m.exponents().iter().filter(|&&e| e > 0).count() == 1);
        if needs_parens(&self.den) || !den_single_factor {
            write!(f, "{num}/({})", self.den)
        } else {
            write!(f, "{num}/{}", self.den)
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction::from_polynomial(num);
            }
            return RationalFunction::new(num, self.den.clone()).unwrap();
        }
        // Henrici: only the shared part of the denominators can cancel.
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RationalFunction::from_coprime(num, den);
        }
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = rhs.den.exact_div(&g).unwrap();
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        let g2 = gcd(&num, &g);
        let (num, g) = if g2.is_one() {
            (num, g)
        } else {
            (num.exact_div(&g2).unwrap(), g.exact_div(&g2).unwrap())
        };
        RationalFunction::from_coprime(num, &(&d1 * &d2) * &g)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.vars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_polynomial(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RationalFunction::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of empty iterator has no variable set");
        iter.fold(first, |acc, f| &acc + &f)
    }
}
