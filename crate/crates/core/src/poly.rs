//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomials, so
//! two equal polynomials always iterate (and serialize) identically. No zero
//! coefficient is ever stored. Operations never round; coefficient growth is
//! unbounded by design.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::monomial::Monomial;
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    VarCountMismatch { left: usize, right: usize },
    ZeroDivisor,
    ZeroInput,
    ArityMismatch { expected: usize, got: usize },
    BudgetExhausted { needed: u64, limit: u64 },
    DegreeMismatch,
}

impl std::fmt::Display for PolyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolyError::VarCountMismatch { left, right } => {
                write!(f, "variable-count mismatch: {left} vs {right}")
            }
            PolyError::ZeroDivisor => write!(f, "division by the zero polynomial"),
            PolyError::ZeroInput => write!(f, "zero polynomial not allowed here"),
            PolyError::ArityMismatch { expected, got } => {
                write!(f, "expected {expected} substitution images, got {got}")
            }
            PolyError::BudgetExhausted { needed, limit } => {
                write!(f, "term budget exhausted: needed {needed}, limit {limit}")
            }
            PolyError::DegreeMismatch => write!(f, "homogeneous degrees do not match"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Cap on the work a single multiplication may do, measured in term-pair
/// products. Substitution and iteration route every product through this.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermBudget {
    pub max_term_products: u64,
}

impl Default for TermBudget {
    fn default() -> Self {
        TermBudget {
            max_term_products: 10_000_000,
        }
    }
}

impl TermBudget {
    pub const UNLIMITED: TermBudget = TermBudget {
        max_term_products: u64::MAX,
    };
}

/// Sparse polynomial in `nvars` variables over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, idx), Rat::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in iter {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Largest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
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

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.try_mul_budgeted(other, TermBudget::UNLIMITED)
    }

    pub fn try_mul_budgeted(&self, other: &Poly, budget: TermBudget) -> Result<Poly, PolyError> {
        self.check_nvars(other)?;
        let needed = self.nterms() as u64 * other.nterms() as u64;
        if needed > budget.max_term_products {
            return Err(PolyError::BudgetExhausted {
                needed,
                limit: budget.max_term_products,
            });
        }
        // Iterate the smaller factor on the outside.
        let (small, big) = if self.nterms() <= other.nterms() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// The spec-level arithmetic entry point.
    pub fn poly_arith(&self, other: &Poly, op: ArithOp) -> Result<Poly, PolyError> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow_budgeted(&self, n: u32, budget: TermBudget) -> Result<Poly, PolyError> {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.try_mul_budgeted(&base, budget)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul_budgeted(&base, budget)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, n: u32) -> Poly {
        self.pow_budgeted(n, TermBudget::UNLIMITED).unwrap()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images must share a
    /// common variable count, which becomes the result's.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        self.substitute_budgeted(images, TermBudget::UNLIMITED)
    }

    pub fn substitute_budgeted(
        &self,
        images: &[Poly],
        budget: TermBudget,
    ) -> Result<Poly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let out_nvars = match images.first() {
            Some(p) => p.nvars,
            None => return Ok(Poly::constant(0, self.coeff(&Monomial::unit(0)))),
        };
        for img in images {
            if img.nvars != out_nvars {
                return Err(PolyError::VarCountMismatch {
                    left: out_nvars,
                    right: img.nvars,
                });
            }
        }
        // Power cache per variable, filled on demand.
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(out_nvars), p.clone()])
            .collect();
        let mut acc = Poly::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i]
                        .last()
                        .unwrap()
                        .try_mul_budgeted(&images[i], budget)?;
                    powers[i].push(next);
                }
                term = term.try_mul_budgeted(&powers[i][e as usize], budget)?;
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Replaces one variable by a constant, keeping the ambient variable set.
    pub fn substitute_var_constant(&self, var: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            out.add_term(m2, coeff);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly {
        assert!(var < self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            out.add_term(m2, c * Rat::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Exact division: `Some(r)` with `q * r == self`, or `None` when no such
    /// polynomial exists. Errors only on a zero divisor.
    pub fn divide_exact(&self, q: &Poly) -> Result<Option<Poly>, PolyError> {
        self.check_nvars(q)?;
        if q.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        let (qm, qc) = q.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            match rm.checked_div(&qm) {
                None => return Ok(None),
                Some(t) => {
                    let tc = rc / &qc;
                    quot.add_term(t.clone(), tc.clone());
                    rem = rem.try_sub(&q.mul_monomial(&t, &tc))?;
                }
            }
        }
        Ok(Some(quot))
    }

    /// Splits `p = content * primitive` with an integer-coprime primitive part
    /// whose leading (graded-lex) coefficient is positive.
    pub fn content_and_primitive(&self) -> Result<(Rat, Poly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        let primitive = self.scale(&content.recip());
        Ok((content, primitive))
    }

    /// Per-variable minimum exponent over all terms — the largest monomial
    /// dividing the polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut mins: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            match &mut mins {
                None => mins = Some(m.0.clone()),
                Some(v) => {
                    for (a, b) in v.iter_mut().zip(&m.0) {
                        *a = (*a).min(*b);
                    }
                }
            }
        }
        Monomial(mins.unwrap_or_else(|| vec![0; self.nvars]))
    }

    pub fn div_monomial_exact(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.checked_div(m).expect("monomial divides"), v.clone()))
                .collect(),
        }
    }

    /// Max absolute numerator over the coefficients; the coefficient height
    /// used by the heuristic gcd. Assumes an integer polynomial.
    pub fn int_height(&self) -> BigInt {
        let mut h = BigInt::zero();
        for c in self.terms.values() {
            debug_assert!(c.denom().is_one());
            let a = c.numer().abs();
            if a > h {
                h = a;
            }
        }
        h
    }

    fn check_nvars(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("variable counts must match")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("variable counts must match")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("variable counts must match")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_frac, rat_i64};

    fn xy() -> (Poly, Poly) {
        (Poly::var(2, 0), Poly::var(2, 1))
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = xy();
        let prod = &(&x + &y) * &(&x - &y);
        let expect = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expect);
    }

    #[test]
    fn add_zero_is_identity() {
        let (x, y) = xy();
        let p = &(&x * &x) + &y.scale(&rat_i64(5));
        assert_eq!(p.try_add(&Poly::zero(2)).unwrap(), p);
    }

    #[test]
    fn mul_of_homogeneous_adds_degrees() {
        let (x, y) = xy();
        let a = &(&x * &x) + &(&x * &y); // degree 2
        let b = &x - &y; // degree 1
        let p = &a * &b;
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(3));
    }

    #[test]
    fn var_count_mismatch_rejected() {
        let p = Poly::var(2, 0);
        let q = Poly::var(3, 0);
        assert!(matches!(
            p.poly_arith(&q, ArithOp::Add),
            Err(PolyError::VarCountMismatch { .. })
        ));
    }

    #[test]
    fn divide_exact_basics() {
        let (x, y) = xy();
        let num = &(&x * &x) - &(&y * &y);
        let den = &x - &y;
        let quot = num.divide_exact(&den).unwrap().unwrap();
        assert_eq!(quot, &x + &y);

        let bad = &(&x * &x) + &(&y * &y);
        assert_eq!(bad.divide_exact(&den).unwrap(), None);

        assert!(matches!(
            num.divide_exact(&Poly::zero(2)),
            Err(PolyError::ZeroDivisor)
        ));
    }

    #[test]
    fn content_primitive_examples() {
        let (x, y) = xy();
        // (2x + 2y)/3
        let p = (&x + &y).scale(&rat_frac(2, 3));
        let (c, prim) = p.content_and_primitive().unwrap();
        assert_eq!(c, rat_frac(2, 3));
        assert_eq!(prim, &x + &y);

        let (c, prim) = x.neg().content_and_primitive().unwrap();
        assert_eq!(c, rat_i64(-1));
        assert_eq!(prim, x);

        // 6x^2 - 4xy
        let p = &(&x * &x).scale(&rat_i64(6)) - &(&x * &y).scale(&rat_i64(4));
        let (c, prim) = p.content_and_primitive().unwrap();
        assert_eq!(c, rat_i64(2));
        let expect = &(&x * &x).scale(&rat_i64(3)) - &(&x * &y).scale(&rat_i64(2));
        assert_eq!(prim, expect);
    }

    #[test]
    fn substitution_identity_and_monomial() {
        let vars4: Vec<Poly> = (0..4).map(|i| Poly::var(4, i)).collect();
        let p = &Poly::var(4, 0) * &Poly::var(4, 1); // x1 x2
        assert_eq!(p.substitute(&vars4).unwrap(), p);

        let squares: Vec<Poly> = (0..4).map(|i| Poly::var(4, i).pow(2)).collect();
        let image = p.substitute(&squares).unwrap();
        let expect = &Poly::var(4, 0).pow(2) * &Poly::var(4, 1).pow(2);
        assert_eq!(image, expect);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let (x, y) = xy();
        let p = &x + &(&y * &y);
        let q = &(&x * &y) - &Poly::one(2);
        let imgs = vec![&(&x * &x) + &y, &x - &(&y * &y.scale(&rat_i64(3)))];
        let lhs = (&p * &q).substitute(&imgs).unwrap();
        let rhs = &p.substitute(&imgs).unwrap() * &q.substitute(&imgs).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let (x, y) = xy();
        let p = &(&x + &y) * &(&x - &y); // 2 terms
        let tight = TermBudget {
            max_term_products: 3,
        };
        let err = p.try_mul_budgeted(&p, tight).unwrap_err();
        assert!(matches!(err, PolyError::BudgetExhausted { needed: 4, limit: 3 }));
    }

    #[test]
    fn eval_and_derivative() {
        let (x, y) = xy();
        let p = &(&x * &x).scale(&rat_i64(3)) + &(&x * &y) ; // 3x^2 + xy
        assert_eq!(p.eval(&[rat_i64(2), rat_i64(-1)]), rat_i64(10));
        let dx = p.derivative(0); // 6x + y
        assert_eq!(dx, &x.scale(&rat_i64(6)) + &y);
    }
}
