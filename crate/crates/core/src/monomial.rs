//! Exponent vectors with the graded lexicographic order.
//!
//! The variable order is the order of declaration, fixed for the lifetime of
//! a polynomial; every determinism claim in the crate rests on this order.

use std::cmp::Ordering;

/// Exponent vector of a single monomial. The owning polynomial fixes the
/// variable count; every monomial stored in it has the same length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, or `None` when some exponent would go negative.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

/// Graded lexicographic: compare total degree first, then exponents left to
/// right. `x0 > x1 > ...` within a degree.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let x2 = Monomial(vec![2, 0]); // x^2
        let xy = Monomial(vec![1, 1]); // xy
        let y = Monomial(vec![0, 1]);
        assert!(x2 > xy);
        assert!(xy > y);
        assert!(x2 > y);
    }

    #[test]
    fn div_and_gcd() {
        let a = Monomial(vec![2, 1]);
        let b = Monomial(vec![1, 1]);
        assert_eq!(a.checked_div(&b), Some(Monomial(vec![1, 0])));
        assert_eq!(b.checked_div(&a), None);
        assert_eq!(a.gcd(&Monomial(vec![1, 2])), Monomial(vec![1, 1]));
    }
}
