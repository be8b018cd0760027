//! Fraction-free determinants of polynomial matrices, Jacobians, and the
//! Sylvester resultant used by the fiber probe.

use crate::gcd::coeff_of_power;
use crate::monomial::Monomial;
use crate::poly::{Poly, PolyError};
use crate::rational::Rat;

/// Bareiss determinant. All divisions are exact by the algorithm's theory.
pub fn det_poly_matrix(mut m: Vec<Vec<Poly>>, nvars: usize) -> Result<Poly, PolyError> {
    let n = m.len();
    for row in &m {
        assert_eq!(row.len(), n);
    }
    if n == 0 {
        return Ok(Poly::one(nvars));
    }
    let mut sign = false;
    let mut prev = Poly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match pivot {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(Poly::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k]
                    .try_mul(&m[i][j])?
                    .try_sub(&m[i][k].try_mul(&m[k][j])?)?;
                m[i][j] = num
                    .divide_exact(&prev)?
                    .expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Determinant of the matrix of partial derivatives of `coords`. Requires all
/// coordinates homogeneous of one common degree, and as many coordinates as
/// variables.
pub fn jacobian_det(coords: &[Poly]) -> Result<Poly, PolyError> {
    let n = coords.len();
    assert!(n > 0);
    let nvars = coords[0].nvars();
    if nvars != n {
        return Err(PolyError::ArityMismatch {
            expected: nvars,
            got: n,
        });
    }
    let mut deg: Option<u32> = None;
    for c in coords {
        if !c.is_homogeneous() {
            return Err(PolyError::DegreeMismatch);
        }
        if let Some(d) = c.total_degree() {
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return Err(PolyError::DegreeMismatch),
            }
        }
    }
    let rows: Vec<Vec<Poly>> = coords
        .iter()
        .map(|c| (0..nvars).map(|v| c.derivative(v)).collect())
        .collect();
    det_poly_matrix(rows, nvars)
}

/// Sylvester resultant of `a` and `b` with respect to variable `v`. The
/// result is a polynomial in the remaining variables; its zeros are the
/// projections of common zeros (plus the locus where both leading
/// coefficients vanish).
pub fn resultant_in_var(a: &Poly, b: &Poly, v: usize) -> Result<Poly, PolyError> {
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let nvars = a.nvars();
    let da = a.degree_in(v).unwrap_or(0) as usize;
    let db = b.degree_in(v).unwrap_or(0) as usize;
    if da == 0 && db == 0 {
        return Ok(Poly::one(nvars));
    }
    if da == 0 {
        return a.pow_budgeted(db as u32, crate::poly::TermBudget::UNLIMITED);
    }
    if db == 0 {
        return b.pow_budgeted(da as u32, crate::poly::TermBudget::UNLIMITED);
    }
    let coeffs = |p: &Poly, d: usize| -> Vec<Poly> {
        (0..=d).rev().map(|e| coeff_of_power(p, v, e as u32)).collect()
    };
    let ca = coeffs(a, da);
    let cb = coeffs(b, db);
    let n = da + db;
    let mut m = vec![vec![Poly::zero(nvars); n]; n];
    for i in 0..db {
        for (j, c) in ca.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in cb.iter().enumerate() {
            m[db + i][i + j] = c.clone();
        }
    }
    det_poly_matrix(m, nvars)
}

/// Linear-form coefficients of a polynomial, or `None` when it is not a
/// (homogeneous) linear form.
pub fn linear_form_coeffs(h: &Poly) -> Option<Vec<Rat>> {
    if h.is_zero() || h.total_degree() != Some(1) || !h.is_homogeneous() {
        return None;
    }
    let mut out = vec![Rat::from_integer(0.into()); h.nvars()];
    for (m, c) in h.terms() {
        let var = m.0.iter().position(|&e| e == 1)?;
        out[var] = c.clone();
    }
    Some(out)
}

/// Convenience: the monomial `x_v^e` as a polynomial.
pub fn var_power(nvars: usize, v: usize, e: u32) -> Poly {
    let mut m = Monomial::unit(nvars);
    m.0[v] = e;
    Poly::from_terms(nvars, [(m, Rat::from_integer(1.into()))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;

    #[test]
    fn det_of_constant_matrix() {
        let c = |n: i64| Poly::constant(1, rat_i64(n));
        let m = vec![vec![c(2), c(1)], vec![c(1), c(1)]];
        assert_eq!(det_poly_matrix(m, 1).unwrap(), c(1));
    }

    #[test]
    fn det_with_zero_pivot_swaps_rows() {
        let c = |n: i64| Poly::constant(1, rat_i64(n));
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(det_poly_matrix(m, 1).unwrap(), c(-1));
    }

    #[test]
    fn jacobian_of_linear_map_is_det() {
        // [2x + y, x + y] on 2 vars: Jacobian det = 1.
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let coords = vec![&x.scale(&rat_i64(2)) + &y, &x + &y];
        let j = jacobian_det(&coords).unwrap();
        assert_eq!(j, Poly::one(2));
    }

    #[test]
    fn jacobian_rejects_degree_mismatch() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let coords = vec![x.pow(2), y];
        assert!(matches!(
            jacobian_det(&coords),
            Err(PolyError::DegreeMismatch)
        ));
    }

    #[test]
    fn resultant_detects_common_root() {
        // res_x(x^2 - y, x - y) = y^2 - y, vanishing at y in {0, 1}.
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let a = &x.pow(2) - &y;
        let b = &x - &y;
        let r = resultant_in_var(&a, &b, 0).unwrap();
        let expect = &y.pow(2) - &y;
        assert_eq!(r, expect);
    }

    #[test]
    fn linear_form_extraction() {
        let x = Poly::var(3, 0);
        let z = Poly::var(3, 2);
        let h = &x - &z;
        assert_eq!(
            linear_form_coeffs(&h),
            Some(vec![rat_i64(1), rat_i64(0), rat_i64(-1)])
        );
        assert_eq!(linear_form_coeffs(&x.pow(2)), None);
    }
}
