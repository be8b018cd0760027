//! Multivariate polynomial gcd.
//!
//! Two engines share the work. The primary one is the heuristic
//! evaluation/reconstruction gcd (Char–Geddes–Gonnet): evaluate both inputs
//! at a large integer, take the gcd one level down, lift the result back via
//! balanced base-ξ digits, and accept only after exact trial division of
//! both inputs. The fallback is the classical recursive-content subresultant
//! remainder sequence, which is unconditionally correct but can swell on the
//! large homogeneous inputs produced by map composition. Homogeneous inputs
//! are first dehomogenized in the last variable, which removes one level of
//! recursion; the gcd of homogeneous polynomials is recovered by
//! rehomogenizing.
//!
//! Results are normalized: primitive integer coefficients with a positive
//! leading coefficient in the graded-lex order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::monomial::Monomial;
use crate::poly::{Poly, PolyError};
use crate::rational::Rat;

/// Greatest common divisor, normalized (primitive, positive leading
/// coefficient). Errors when both inputs are zero.
pub fn gcd_multivariate(p: &Poly, q: &Poly) -> Result<Poly, PolyError> {
    if p.nvars() != q.nvars() {
        return Err(PolyError::VarCountMismatch {
            left: p.nvars(),
            right: q.nvars(),
        });
    }
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(PolyError::ZeroInput),
        (true, false) => Ok(normalize(q)),
        (false, true) => Ok(normalize(p)),
        (false, false) => {
            let p = normalize(p);
            let q = normalize(q);
            let mp = p.monomial_content();
            let mq = q.monomial_content();
            let common = mp.gcd(&mq);
            let p = p.div_monomial_exact(&mp);
            let q = q.div_monomial_exact(&mq);
            let core = gcd_inner(&p, &q)?;
            Ok(normalize(&core.mul_monomial(&common, &Rat::one())))
        }
    }
}

/// Folds `gcd_multivariate` over a list, skipping zeros, with an early exit
/// once the running gcd is constant.
pub fn gcd_many(polys: &[Poly]) -> Result<Poly, PolyError> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => normalize(p),
            Some(g) => gcd_multivariate(&g, p)?,
        });
        if let Some(g) = &acc {
            if g.is_constant() {
                break;
            }
        }
    }
    acc.ok_or(PolyError::ZeroInput)
}

/// Primitive part with positive graded-lex leading coefficient.
pub fn normalize(p: &Poly) -> Poly {
    match p.content_and_primitive() {
        Ok((_, prim)) => prim,
        Err(_) => p.clone(),
    }
}

fn active_vars(p: &Poly, q: &Poly) -> Vec<usize> {
    (0..p.nvars())
        .filter(|&v| p.degree_in(v).unwrap_or(0) > 0 || q.degree_in(v).unwrap_or(0) > 0)
        .collect()
}

fn gcd_inner(p: &Poly, q: &Poly) -> Result<Poly, PolyError> {
    if p.is_constant() || q.is_constant() {
        return Ok(Poly::one(p.nvars()));
    }
    let vars = active_vars(p, q);
    debug_assert!(!vars.is_empty());

    // Homogeneous inputs: work one variable down and rehomogenize. Valid
    // because neither input is divisible by any variable here (monomial
    // content was stripped by the caller).
    if vars.len() >= 2 && p.is_homogeneous() && q.is_homogeneous() {
        let v = *vars.last().unwrap();
        let pd = p.substitute_var_constant(v, &Rat::one());
        let qd = q.substitute_var_constant(v, &Rat::one());
        if pd.is_zero() || qd.is_zero() {
            // Cannot happen for nonzero homogeneous input, but stay safe.
            return gcd_inner_engines(p, q, &vars);
        }
        let g = gcd_multivariate(&pd, &qd)?;
        return Ok(homogenize(&g, v));
    }

    gcd_inner_engines(p, q, &vars)
}

fn gcd_inner_engines(p: &Poly, q: &Poly, vars: &[usize]) -> Result<Poly, PolyError> {
    if vars.len() == 1 {
        return prs_gcd(p, q, vars[0]);
    }
    let p_int = normalize(p);
    let q_int = normalize(q);
    if let Some(g) = gcd_heu(&p_int, &q_int, 0) {
        return Ok(normalize(&g));
    }
    // Main variable for the remainder sequence: prefer one active in both.
    let v = vars
        .iter()
        .rev()
        .find(|&&v| p.degree_in(v).unwrap_or(0) > 0 && q.degree_in(v).unwrap_or(0) > 0)
        .or_else(|| vars.last())
        .copied()
        .unwrap();
    prs_gcd(&p_int, &q_int, v)
}

/// Homogenizes by padding each term's exponent in `v` up to the total degree.
fn homogenize(p: &Poly, v: usize) -> Poly {
    let d = p.total_degree().unwrap_or(0);
    Poly::from_terms(
        p.nvars(),
        p.terms().map(|(m, c)| {
            let mut e = m.clone();
            e.0[v] += d - m.total_degree();
            (e, c.clone())
        }),
    )
}

// ---------------------------------------------------------------------------
// Heuristic gcd
// ---------------------------------------------------------------------------

const HEU_ATTEMPTS: usize = 6;
const HEU_MAX_XI_BITS: u64 = 200_000;

fn gcd_heu(p: &Poly, q: &Poly, depth: usize) -> Option<Poly> {
    if depth > 16 {
        return None;
    }
    let vars = active_vars(p, q);
    if vars.is_empty() {
        let a = p.leading_coeff();
        let b = q.leading_coeff();
        debug_assert!(a.denom().is_one() && b.denom().is_one());
        let g = a.numer().gcd(b.numer());
        return Some(Poly::constant(p.nvars(), Rat::from_integer(g)));
    }
    let v = *vars
        .iter()
        .rev()
        .find(|&&v| p.degree_in(v).unwrap_or(0) > 0 && q.degree_in(v).unwrap_or(0) > 0)
        .unwrap_or_else(|| vars.last().unwrap());
    let deg_bound = p
        .degree_in(v)
        .unwrap_or(0)
        .min(q.degree_in(v).unwrap_or(0))
        .max(1);

    let hp = p.int_height();
    let hq = q.int_height();
    let mut xi: BigInt = BigInt::from(2) * hp.min(hq) + BigInt::from(29);
    for _ in 0..HEU_ATTEMPTS {
        if xi.bits() * deg_bound as u64 > HEU_MAX_XI_BITS {
            return None;
        }
        let pe = p.substitute_var_constant(v, &Rat::from_integer(xi.clone()));
        let qe = q.substitute_var_constant(v, &Rat::from_integer(xi.clone()));
        if !pe.is_zero() && !qe.is_zero() {
            if let Some(ge) = gcd_heu(&pe, &qe, depth + 1) {
                if let Some(cand) = lift_from_evaluation(&ge, v, &xi, deg_bound) {
                    let cand = normalize(&cand);
                    if divides(&cand, p) && divides(&cand, q) {
                        return Some(cand);
                    }
                }
            } else {
                return None;
            }
        }
        xi = xi * BigInt::from(73794u32) / BigInt::from(27011u32) + BigInt::from(37u32);
    }
    None
}

fn divides(d: &Poly, p: &Poly) -> bool {
    matches!(p.divide_exact(d), Ok(Some(_)))
}

/// Reads off balanced base-ξ digits, each a polynomial in the remaining
/// variables, producing the candidate gcd as a polynomial in `v`.
fn lift_from_evaluation(ge: &Poly, v: usize, xi: &BigInt, deg_bound: u32) -> Option<Poly> {
    let nvars = ge.nvars();
    let mut out = Poly::zero(nvars);
    let mut cur = ge.clone();
    let mut power = 0u32;
    while !cur.is_zero() {
        if power > deg_bound {
            return None;
        }
        let digit = map_int_coeffs(&cur, |c| smod(c, xi));
        if !digit.is_zero() {
            let mut m = Monomial::unit(nvars);
            m.0[v] = power;
            out = out.try_add(&digit.mul_monomial(&m, &Rat::one())).ok()?;
        }
        let shifted = cur.try_sub(&digit).ok()?;
        cur = map_int_coeffs(&shifted, |c| c / xi);
        power += 1;
    }
    Some(out)
}

fn map_int_coeffs(p: &Poly, f: impl Fn(&BigInt) -> BigInt) -> Poly {
    Poly::from_terms(
        p.nvars(),
        p.terms().filter_map(|(m, c)| {
            debug_assert!(c.denom().is_one());
            let v = f(c.numer());
            if v.is_zero() {
                None
            } else {
                Some((m.clone(), Rat::from_integer(v)))
            }
        }),
    )
}

/// Symmetric remainder in (-m/2, m/2].
fn smod(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c.mod_floor(m);
    if &r * BigInt::from(2) > *m {
        r -= m;
    }
    r
}

// ---------------------------------------------------------------------------
// Subresultant remainder sequence
// ---------------------------------------------------------------------------

/// Recursive-content gcd with the subresultant PRS in variable `v`.
fn prs_gcd(p: &Poly, q: &Poly, v: usize) -> Result<Poly, PolyError> {
    let cont_p = content_in_var(p, v)?;
    let cont_q = content_in_var(q, v)?;
    let pp_p = p
        .divide_exact(&cont_p)?
        .expect("content divides");
    let pp_q = q
        .divide_exact(&cont_q)?
        .expect("content divides");
    let cont_gcd = gcd_multivariate(&cont_p, &cont_q)?;

    let dp = pp_p.degree_in(v).unwrap_or(0);
    let dq = pp_q.degree_in(v).unwrap_or(0);
    if dp == 0 || dq == 0 {
        return Ok(cont_gcd);
    }
    let (mut a, mut b) = if dp >= dq {
        (pp_p, pp_q)
    } else {
        (pp_q, pp_p)
    };

    let mut g = Poly::one(p.nvars());
    let mut h = Poly::one(p.nvars());
    loop {
        let da = a.degree_in(v).unwrap_or(0);
        let db = b.degree_in(v).unwrap_or(0);
        let delta = da - db;
        let r = pseudo_rem(&a, &b, v)?;
        if r.is_zero() {
            let pp_b = primitive_in_var(&b, v)?;
            return Ok(normalize(&cont_gcd.try_mul(&pp_b)?));
        }
        if r.degree_in(v).unwrap_or(0) == 0 {
            return Ok(cont_gcd);
        }
        a = b;
        // b = r / (g * h^delta), exact by subresultant theory.
        let divisor = g.try_mul(&h.pow(delta))?;
        b = r
            .divide_exact(&divisor)?
            .expect("subresultant division is exact");
        g = lc_in_var(&a, v);
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            g.pow(delta)
                .divide_exact(&h.pow(delta - 1))?
                .expect("subresultant h-update is exact")
        };
    }
}

/// Pseudo-remainder: `lc(b)^(da-db+1) * a = q*b + r` with `deg_v r < deg_v b`.
pub fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Result<Poly, PolyError> {
    let db = b.degree_in(v).unwrap_or(0);
    let da = a.degree_in(v).unwrap_or(0);
    if b.is_zero() {
        return Err(PolyError::ZeroDivisor);
    }
    if da < db {
        return Ok(a.clone());
    }
    let lcb = lc_in_var(b, v);
    let mut r = a.clone();
    let mut e = da - db + 1;
    while !r.is_zero() && r.degree_in(v).unwrap_or(0) >= db {
        let dr = r.degree_in(v).unwrap_or(0);
        let lcr = lc_in_var(&r, v);
        let mut shift = Monomial::unit(a.nvars());
        shift.0[v] = dr - db;
        let s = b.mul_monomial(&shift, &Rat::one()).try_mul(&lcr)?;
        r = r.try_mul(&lcb)?.try_sub(&s)?;
        e -= 1;
    }
    if e > 0 {
        r = r.try_mul(&lcb.pow(e))?;
    }
    Ok(r)
}

/// Coefficient of the highest power of `v`, as a polynomial in the other
/// variables (same ambient variable count).
pub fn lc_in_var(p: &Poly, v: usize) -> Poly {
    let d = p.degree_in(v).unwrap_or(0);
    coeff_of_power(p, v, d)
}

pub fn coeff_of_power(p: &Poly, v: usize, e: u32) -> Poly {
    Poly::from_terms(
        p.nvars(),
        p.terms().filter_map(|(m, c)| {
            if m.0[v] == e {
                let mut m2 = m.clone();
                m2.0[v] = 0;
                Some((m2, c.clone()))
            } else {
                None
            }
        }),
    )
}

/// Gcd of the `v`-coefficients.
fn content_in_var(p: &Poly, v: usize) -> Result<Poly, PolyError> {
    let d = p.degree_in(v).unwrap_or(0);
    let coeffs: Vec<Poly> = (0..=d)
        .map(|e| coeff_of_power(p, v, e))
        .filter(|c| !c.is_zero())
        .collect();
    gcd_many(&coeffs)
}

fn primitive_in_var(p: &Poly, v: usize) -> Result<Poly, PolyError> {
    let c = content_in_var(p, v)?;
    Ok(p.divide_exact(&c)?.expect("content divides"))
}
