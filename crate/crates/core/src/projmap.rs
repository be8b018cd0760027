//! Dominant rational self-maps of projective k-space.
//!
//! A map is stored as a reduced representative: k+1 homogeneous coordinates
//! of one common degree whose gcd is constant, scaled so the coefficient
//! tuple is primitive-integer with the first nonzero coordinate's leading
//! coefficient positive. Composition substitutes one representative into the
//! other and extracts the coordinate gcd exactly; a nonconstant gcd is the
//! degree-drop witness, and its factors are the hypersurfaces the first map
//! collapses into the second map's indeterminacy set.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::gcd::gcd_many;
use crate::poly::{Poly, PolyError, TermBudget};
use crate::rational::Rat;

/// Composition order: `compose(f, g)` applies `f` first and returns `g ∘ f`.
pub const COMPOSE_CONVENTION: &str = "apply-first-argument-first";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    DimensionMismatch { left: usize, right: usize },
    DegreeMismatch,
    AllZero,
    ZeroPoint,
    DegenerateMap,
    ConstantHypersurface,
    NonlinearHypersurface,
    BudgetExhausted { at_iterate: u32, detail: String },
    Poly(PolyError),
}

impl std::fmt::Display for MapError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapError::DimensionMismatch { left, right } => {
                write!(f, "projective dimensions differ: {left} vs {right}")
            }
            MapError::DegreeMismatch => {
                write!(f, "coordinates must be homogeneous of one common degree")
            }
            MapError::AllZero => write!(f, "all coordinates are zero"),
            MapError::ZeroPoint => write!(f, "projective points need a nonzero coordinate"),
            MapError::DegenerateMap => write!(f, "coordinates reduce to a constant tuple"),
            MapError::ConstantHypersurface => {
                write!(f, "hypersurface form must be nonconstant")
            }
            MapError::NonlinearHypersurface => {
                write!(f, "only linear forms are supported here")
            }
            MapError::BudgetExhausted { at_iterate, detail } => {
                write!(f, "budget exhausted at iterate {at_iterate}: {detail}")
            }
            MapError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MapError {}

impl From<PolyError> for MapError {
    fn from(e: PolyError) -> Self {
        MapError::Poly(e)
    }
}

/// A point of P^k with coordinates scaled so the first nonzero entry is 1,
/// making equality coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, MapError> {
        let pivot = coords.iter().position(|c| !c.is_zero());
        match pivot {
            None => Err(MapError::ZeroPoint),
            Some(i) => {
                let scale = coords[i].recip();
                Ok(ProjPoint {
                    coords: coords.iter().map(|c| c * &scale).collect(),
                })
            }
        }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        ProjPoint::new(coords.iter().map(|&c| Rat::from_integer(c.into())).collect())
            .expect("nonzero integer point")
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

/// The result of evaluating a rational map at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapValue {
    Point(ProjPoint),
    IndeterminateAt(ProjPoint),
}

/// Reduced representative of a dominant rational self-map of P^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMapPk {
    dim: usize,
    vars: Vec<String>,
    coords: Vec<Poly>,
    degree: u32,
}

/// Raw composition bookkeeping: the degree before reduction, the extracted
/// common factor, and the reduced map.
#[derive(Clone, Debug)]
pub struct CompositionReport {
    pub raw_degree: u32,
    pub dropped_factor: Poly,
    pub reduced: RationalMapPk,
    pub convention: &'static str,
}

impl CompositionReport {
    pub fn dropped_degree(&self) -> u32 {
        self.dropped_factor.total_degree().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequenceEntry {
    pub n: u32,
    pub degree: u64,
    /// Degree lost when this iterate was produced from the previous one:
    /// `deg(f^{n-1})·deg(f) - deg(f^n)`; zero for n = 1.
    pub dropped_at_step: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExhaustion {
    pub at_iterate: u32,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub entries: Vec<DegreeSequenceEntry>,
    /// Set when the sequence is a partial result.
    pub exhausted: Option<BudgetExhaustion>,
}

/// Term and wall-clock limits for iteration.
#[derive(Clone, Copy, Debug)]
pub struct IterationBudget {
    pub term_budget: TermBudget,
    pub max_millis: Option<u64>,
}

impl Default for IterationBudget {
    fn default() -> Self {
        IterationBudget {
            term_budget: TermBudget::default(),
            max_millis: None,
        }
    }
}

/// Outcome of restricting a map to a hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperplaneImage {
    CollapsedTo(ProjPoint),
    NotCollapsed,
}

impl RationalMapPk {
    /// Builds the reduced representative: checks homogeneity and the common
    /// degree, divides out the coordinate gcd, and applies the canonical
    /// content scaling. Idempotent.
    pub fn new(vars: Vec<String>, coords: Vec<Poly>) -> Result<Self, MapError> {
        let n = coords.len();
        if n < 2 || vars.len() != n {
            return Err(MapError::DegreeMismatch);
        }
        let mut degree: Option<u32> = None;
        for c in &coords {
            if c.nvars() != n {
                return Err(MapError::Poly(PolyError::VarCountMismatch {
                    left: n,
                    right: c.nvars(),
                }));
            }
            if !c.is_homogeneous() {
                return Err(MapError::DegreeMismatch);
            }
            if let Some(d) = c.total_degree() {
                match degree {
                    None => degree = Some(d),
                    Some(e) if e == d => {}
                    Some(_) => return Err(MapError::DegreeMismatch),
                }
            }
        }
        if degree.is_none() {
            return Err(MapError::AllZero);
        }
        let g = gcd_many(&coords).map_err(MapError::Poly)?;
        let mut reduced: Vec<Poly> = coords
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Ok(Poly::zero(n))
                } else {
                    Ok(c.divide_exact(&g)?.expect("gcd divides"))
                }
            })
            .collect::<Result<_, PolyError>>()?;
        canonical_tuple_scaling(&mut reduced);
        let degree = reduced
            .iter()
            .filter_map(|c| c.total_degree())
            .next()
            .unwrap_or(0);
        if degree == 0 {
            return Err(MapError::DegenerateMap);
        }
        Ok(RationalMapPk {
            dim: n - 1,
            vars,
            coords: reduced,
            degree,
        })
    }

    pub fn identity(k: usize) -> Self {
        let vars = crate::parser::default_var_names(k + 1);
        let coords = (0..=k).map(|i| Poly::var(k + 1, i)).collect();
        RationalMapPk::new(vars, coords).expect("identity is a valid map")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords
            .iter()
            .enumerate()
            .all(|(i, c)| *c == Poly::var(self.dim + 1, i))
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Result<MapValue, MapError> {
        if p.dim() != self.dim {
            return Err(MapError::DimensionMismatch {
                left: self.dim,
                right: p.dim(),
            });
        }
        let values: Vec<Rat> = self.coords.iter().map(|c| c.eval(p.coords())).collect();
        if values.iter().all(|v| v.is_zero()) {
            Ok(MapValue::IndeterminateAt(p.clone()))
        } else {
            Ok(MapValue::Point(ProjPoint::new(values)?))
        }
    }

    pub fn is_indeterminate(&self, p: &ProjPoint) -> Result<bool, MapError> {
        Ok(matches!(self.evaluate(p)?, MapValue::IndeterminateAt(_)))
    }

    /// Raw composed coordinates `g_i(f(x))`, before any reduction.
    pub fn raw_composition(
        &self,
        g: &RationalMapPk,
        budget: TermBudget,
    ) -> Result<Vec<Poly>, MapError> {
        if self.dim != g.dim {
            return Err(MapError::DimensionMismatch {
                left: self.dim,
                right: g.dim,
            });
        }
        g.coords
            .iter()
            .map(|c| {
                c.substitute_budgeted(&self.coords, budget)
                    .map_err(MapError::Poly)
            })
            .collect()
    }

    /// `compose(f, g)` applies `f` first: the report describes `g ∘ f`.
    pub fn compose(&self, g: &RationalMapPk) -> Result<CompositionReport, MapError> {
        self.compose_budgeted(g, TermBudget::UNLIMITED)
    }

    pub fn compose_budgeted(
        &self,
        g: &RationalMapPk,
        budget: TermBudget,
    ) -> Result<CompositionReport, MapError> {
        let raw = self.raw_composition(g, budget)?;
        let dropped = gcd_many(&raw).map_err(MapError::Poly)?;
        let reduced: Vec<Poly> = raw
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Ok(Poly::zero(c.nvars()))
                } else {
                    Ok(c.divide_exact(&dropped)?.expect("gcd divides"))
                }
            })
            .collect::<Result<_, PolyError>>()?;
        let reduced = RationalMapPk::new(self.vars.clone(), reduced)?;
        Ok(CompositionReport {
            raw_degree: self.degree * g.degree,
            dropped_factor: dropped,
            reduced,
            convention: COMPOSE_CONVENTION,
        })
    }

    /// Degrees of the reduced iterates f, f², …, f^N. Reduction happens at
    /// every step, so entry n is the degree of the reduced n-th iterate.
    /// Budget exhaustion flags a partial result instead of truncating
    /// silently.
    pub fn iterate_degrees(&self, n_max: u32, budget: IterationBudget) -> DegreeSequence {
        let start = Instant::now();
        let mut entries = vec![DegreeSequenceEntry {
            n: 1,
            degree: self.degree as u64,
            dropped_at_step: 0,
        }];
        let mut current = self.clone();
        for n in 2..=n_max {
            if let Some(ms) = budget.max_millis {
                if start.elapsed().as_millis() as u64 > ms {
                    return DegreeSequence {
                        entries,
                        exhausted: Some(BudgetExhaustion {
                            at_iterate: n,
                            detail: format!("wall-clock limit of {ms} ms reached"),
                        }),
                    };
                }
            }
            match current.compose_budgeted(self, budget.term_budget) {
                Ok(report) => {
                    let prev = current.degree as u64;
                    let next = report.reduced.degree as u64;
                    entries.push(DegreeSequenceEntry {
                        n,
                        degree: next,
                        dropped_at_step: prev * self.degree as u64 - next,
                    });
                    current = report.reduced;
                }
                Err(MapError::Poly(PolyError::BudgetExhausted { needed, limit })) => {
                    return DegreeSequence {
                        entries,
                        exhausted: Some(BudgetExhaustion {
                            at_iterate: n,
                            detail: format!(
                                "term budget exhausted: needed {needed}, limit {limit}"
                            ),
                        }),
                    };
                }
                Err(e) => {
                    return DegreeSequence {
                        entries,
                        exhausted: Some(BudgetExhaustion {
                            at_iterate: n,
                            detail: e.to_string(),
                        }),
                    };
                }
            }
        }
        DegreeSequence {
            entries,
            exhausted: None,
        }
    }

    /// True iff `deg(f^n) = deg(f)^n` for all n ≤ N, else the first n with a
    /// drop. Errors if the budget runs out before the question is settled.
    pub fn is_one_stable_upto(
        &self,
        n_max: u32,
        budget: IterationBudget,
    ) -> Result<(bool, Option<u32>), MapError> {
        let seq = self.iterate_degrees(n_max, budget);
        let base = BigInt::from(self.degree);
        for entry in &seq.entries {
            let expected = base.pow(entry.n);
            if BigInt::from(entry.degree) != expected {
                return Ok((false, Some(entry.n)));
            }
        }
        if let Some(ex) = seq.exhausted {
            return Err(MapError::BudgetExhausted {
                at_iterate: ex.at_iterate,
                detail: ex.detail,
            });
        }
        Ok((true, None))
    }

    /// The nonconstant common factor of the raw composition, if any. Its
    /// irreducible factors are the hypersurfaces H with f(H∖I_f) ⊂ I_g.
    pub fn degree_drop_witness(&self, g: &RationalMapPk) -> Result<Option<Poly>, MapError> {
        let report = self.compose(g)?;
        if report.dropped_factor.is_constant() {
            Ok(None)
        } else {
            Ok(Some(report.dropped_factor))
        }
    }

    /// Whether the hypersurface {H = 0} divides every raw coordinate of
    /// `g ∘ f`; for irreducible H this says exactly f(H∖I_f) ⊂ I_g.
    pub fn collapses_into_indeterminacy(
        &self,
        g: &RationalMapPk,
        h: &Poly,
    ) -> Result<bool, MapError> {
        if h.is_constant() {
            return Err(MapError::ConstantHypersurface);
        }
        let raw = self.raw_composition(g, TermBudget::UNLIMITED)?;
        for c in &raw {
            if c.is_zero() {
                continue;
            }
            if c.divide_exact(h)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Restricts the map to a hyperplane {H = 0} via an exact rational linear
    /// parametrization from P^{k-1} and reduces; degree 0 after reduction
    /// means the hyperplane is collapsed to the returned point.
    pub fn image_of_hyperplane(&self, h: &Poly) -> Result<HyperplaneImage, MapError> {
        let coeffs =
            crate::det::linear_form_coeffs(h).ok_or(MapError::NonlinearHypersurface)?;
        if coeffs.len() != self.dim + 1 {
            return Err(MapError::Poly(PolyError::VarCountMismatch {
                left: self.dim + 1,
                right: coeffs.len(),
            }));
        }
        let k = self.dim;
        let pivot = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(MapError::ConstantHypersurface)?;
        // Kernel basis v_i = e_i - (c_i/c_pivot) e_pivot for i ≠ pivot gives a
        // linear isomorphism P^{k-1} → H.
        let mut phi: Vec<Poly> = vec![Poly::zero(k); k + 1];
        let mut t_index = 0;
        for i in 0..=k {
            if i == pivot {
                continue;
            }
            let t = Poly::var(k, t_index);
            t_index += 1;
            phi[i] = phi[i].try_add(&t)?;
            let ratio = -(&coeffs[i] / &coeffs[pivot]);
            phi[pivot] = phi[pivot].try_add(&t.scale(&ratio))?;
        }
        let restricted: Vec<Poly> = self
            .coords
            .iter()
            .map(|c| c.substitute(&phi))
            .collect::<Result<_, PolyError>>()?;
        if restricted.iter().all(|c| c.is_zero()) {
            // The whole hyperplane lies in the indeterminacy locus; it is not
            // collapsed to any single point.
            return Ok(HyperplaneImage::NotCollapsed);
        }
        let g = gcd_many(&restricted).map_err(MapError::Poly)?;
        let reduced: Vec<Poly> = restricted
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Ok(Poly::zero(k))
                } else {
                    Ok(c.divide_exact(&g)?.expect("gcd divides"))
                }
            })
            .collect::<Result<_, PolyError>>()?;
        if reduced.iter().all(|c| c.is_constant()) {
            let point = ProjPoint::new(
                reduced
                    .iter()
                    .map(|c| c.leading_coeff())
                    .collect::<Vec<Rat>>(),
            )?;
            Ok(HyperplaneImage::CollapsedTo(point))
        } else {
            Ok(HyperplaneImage::NotCollapsed)
        }
    }
}

/// Scales the coordinate tuple by one rational so all coefficients are
/// coprime integers and the first nonzero coordinate has a positive leading
/// coefficient.
fn canonical_tuple_scaling(coords: &mut [Poly]) {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in coords.iter() {
        for (_, coeff) in c.terms() {
            num_gcd = num_gcd.gcd(coeff.numer());
            den_lcm = den_lcm.lcm(coeff.denom());
        }
    }
    if num_gcd.is_zero() {
        return;
    }
    let mut scale = Rat::new(den_lcm, num_gcd);
    if let Some(first) = coords.iter().find(|c| !c.is_zero()) {
        if (first.leading_coeff() * &scale).is_negative() {
            scale = -scale;
        }
    }
    for c in coords.iter_mut() {
        *c = c.scale(&scale);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{default_var_names, parse_poly};

    fn map_from_strs(k: usize, coords: &[&str]) -> RationalMapPk {
        let vars = default_var_names(k + 1);
        let polys: Vec<Poly> = coords
            .iter()
            .map(|s| parse_poly(s, &vars).unwrap())
            .collect();
        RationalMapPk::new(vars, polys).unwrap()
    }

    #[test]
    fn normalize_divides_out_common_factor() {
        // [xz, yz, z^2] reduces to the identity of P^2.
        let f = map_from_strs(2, &["x1 x3", "x2 x3", "x3^2"]);
        assert!(f.is_identity());
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn normalize_is_idempotent_on_reduced_maps() {
        let h = map_from_strs(2, &["x1^2 - 3 x2 x3", "x1 x3", "x3^2"]);
        let again = RationalMapPk::new(h.vars().to_vec(), h.coords().to_vec()).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn normalize_rejects_degree_mismatch_and_zero() {
        let vars = default_var_names(3);
        let bad = vec![
            parse_poly("x1^2", &vars).unwrap(),
            parse_poly("x2", &vars).unwrap(),
            parse_poly("x3", &vars).unwrap(),
        ];
        assert!(matches!(
            RationalMapPk::new(vars.clone(), bad),
            Err(MapError::DegreeMismatch)
        ));
        let zeros = vec![Poly::zero(3), Poly::zero(3), Poly::zero(3)];
        assert!(matches!(
            RationalMapPk::new(vars, zeros),
            Err(MapError::AllZero)
        ));
    }

    #[test]
    fn evaluate_identity_returns_point() {
        let id = RationalMapPk::identity(2);
        let p = ProjPoint::from_ints(&[2, 3, 1]);
        assert_eq!(id.evaluate(&p).unwrap(), MapValue::Point(p));
    }

    #[test]
    fn cremona_p2_composition_drops_xyz() {
        let sigma = map_from_strs(2, &["x2 x3", "x1 x3", "x1 x2"]);
        let report = sigma.compose(&sigma).unwrap();
        assert_eq!(report.raw_degree, 4);
        assert_eq!(report.dropped_degree(), 3);
        assert!(report.reduced.is_identity());

        let vars = default_var_names(3);
        let xyz = parse_poly("x1 x2 x3", &vars).unwrap();
        assert_eq!(report.dropped_factor, xyz);
    }

    #[test]
    fn compose_with_identity_is_noop() {
        let sigma = map_from_strs(2, &["x2 x3", "x1 x3", "x1 x2"]);
        let id = RationalMapPk::identity(2);
        let report = id.compose(&sigma).unwrap();
        assert_eq!(report.raw_degree, sigma.degree());
        assert!(report.dropped_factor.is_constant());
        assert_eq!(report.reduced, sigma);
    }

    #[test]
    fn degree_sequence_of_p2_cremona_oscillates() {
        let sigma = map_from_strs(2, &["x2 x3", "x1 x3", "x1 x2"]);
        let seq = sigma.iterate_degrees(4, IterationBudget::default());
        assert!(seq.exhausted.is_none());
        let degs: Vec<u64> = seq.entries.iter().map(|e| e.degree).collect();
        assert_eq!(degs, vec![2, 1, 2, 1]);
        let drops: Vec<u64> = seq.entries.iter().map(|e| e.dropped_at_step).collect();
        assert_eq!(drops, vec![0, 3, 0, 3]);

        let (stable, first) = sigma
            .is_one_stable_upto(2, IterationBudget::default())
            .unwrap();
        assert!(!stable);
        assert_eq!(first, Some(2));
    }

    #[test]
    fn linear_map_is_stable() {
        let lin = map_from_strs(2, &["x1 + x2", "x2 + x3", "x3"]);
        let (stable, first) = lin
            .is_one_stable_upto(6, IterationBudget::default())
            .unwrap();
        assert!(stable);
        assert_eq!(first, None);
    }

    #[test]
    fn budget_exhaustion_is_flagged_not_silent() {
        let h = map_from_strs(2, &["x1^2 - x2 x3", "x1 x3", "x3^2"]);
        let tiny = IterationBudget {
            term_budget: TermBudget {
                max_term_products: 1,
            },
            max_millis: None,
        };
        let seq = h.iterate_degrees(3, tiny);
        assert_eq!(seq.entries.len(), 1);
        let ex = seq.exhausted.expect("must be flagged");
        assert_eq!(ex.at_iterate, 2);
    }

    #[test]
    fn identity_collapse_check_is_false() {
        let id = RationalMapPk::identity(2);
        let vars = default_var_names(3);
        let h = parse_poly("x3", &vars).unwrap();
        assert!(!id.collapses_into_indeterminacy(&id, &h).unwrap());
        assert!(matches!(
            id.collapses_into_indeterminacy(&id, &Poly::one(3)),
            Err(MapError::ConstantHypersurface)
        ));
    }

    #[test]
    fn composition_reduction_soundness() {
        // dropped * reduced == raw coordinatewise up to one global scalar.
        let sigma = map_from_strs(2, &["x2 x3", "x1 x3", "x1 x2"]);
        let report = sigma.compose(&sigma).unwrap();
        let raw = sigma
            .raw_composition(&sigma, TermBudget::UNLIMITED)
            .unwrap();
        let mut scalar: Option<Rat> = None;
        for (r, red) in raw.iter().zip(report.reduced.coords()) {
            let back = report.dropped_factor.try_mul(red).unwrap();
            if r.is_zero() {
                assert!(back.is_zero());
                continue;
            }
            let ratio = r.leading_coeff() / back.leading_coeff();
            assert_eq!(back.scale(&ratio), *r);
            match &scalar {
                None => scalar = Some(ratio),
                Some(s) => assert_eq!(*s, ratio),
            }
        }
    }
}
