//! Cohomology of products of projective spaces, and the correspondence
//! calculus on it.
//!
//! The ring model: for factors P^{k_1} × … × P^{k_m}, classes are truncated
//! polynomials in the hyperplane classes h_j with h_j^{k_j+1} = 0. Every
//! factor has even real dimension, so pushforward carries no signs: a term
//! survives projection exactly when each dropped factor carries its top
//! class. A dominant map of P^k enters through its degree vector
//! (d_0, …, d_k): the graph class Σ_p d_p·h_1^p h_2^{k-p} is the unique
//! H^{2k} class acting on H^{p,p} by d_p.
//!
//! Correspondence composition is evaluated literally in the triple product:
//! pull the two graph classes to factors (1,2) and (2,3), cup, push to
//! (1,3). The difference from the graph class of the true composition is the
//! excess class; a witness basis class detects it through the same pullback
//! action used everywhere else.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomError {
    RingMismatch,
    FactorMismatch { expected: usize, got: usize },
    ExponentOutOfRange { factor: usize, exponent: u32, bound: usize },
    GradingViolation { expected: u32, got: u32 },
    BadEmbedding,
    BadDegreeVector,
}

impl std::fmt::Display for CohomError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CohomError::RingMismatch => write!(f, "classes live in different rings"),
            CohomError::FactorMismatch { expected, got } => {
                write!(f, "factor count mismatch: expected {expected}, got {got}")
            }
            CohomError::ExponentOutOfRange { factor, exponent, bound } => write!(
                f,
                "exponent {exponent} exceeds bound {bound} on factor {factor}"
            ),
            CohomError::GradingViolation { expected, got } => {
                write!(f, "class must be homogeneous of degree {expected}, got {got}")
            }
            CohomError::BadEmbedding => write!(f, "embedding must match factor dimensions"),
            CohomError::BadDegreeVector => write!(f, "degree vector needs k+1 entries"),
        }
    }
}

impl std::error::Error for CohomError {}

/// The product ring P^{k_1} × … × P^{k_m}, identified by its factor
/// dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRing {
    factors: Vec<usize>,
}

impl ProductRing {
    pub fn new(factors: Vec<usize>) -> Self {
        assert!(!factors.is_empty() && factors.iter().all(|&k| k >= 1));
        ProductRing { factors }
    }

    pub fn single(k: usize) -> Self {
        ProductRing::new(vec![k])
    }

    pub fn square(k: usize) -> Self {
        ProductRing::new(vec![k, k])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Complex dimension of the full product — the top exponent sum.
    pub fn top_degree(&self) -> u32 {
        self.factors.iter().map(|&k| k as u32).sum()
    }

    /// All exponent vectors within bounds, in lexicographic order.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &k in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (k + 1));
            for prefix in &out {
                for e in 0..=k as u32 {
                    let mut v = prefix.clone();
                    v.push(e);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

/// An element of the truncated Kunneth ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomClass {
    ring: ProductRing,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl CohomClass {
    pub fn zero(ring: ProductRing) -> Self {
        CohomClass {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(ring: ProductRing) -> Self {
        let exps = vec![0; ring.num_factors()];
        CohomClass::monomial(ring, exps, Rat::one()).expect("unit is in range")
    }

    /// `c · h_1^{e_1} ⋯ h_m^{e_m}`.
    pub fn monomial(ring: ProductRing, exps: Vec<u32>, coeff: Rat) -> Result<Self, CohomError> {
        let mut class = CohomClass::zero(ring);
        class.add_term(exps, coeff)?;
        Ok(class)
    }

    /// The hyperplane-power basis class h^i of a single factor P^k.
    pub fn h_power(k: usize, i: u32) -> Result<Self, CohomError> {
        CohomClass::monomial(ProductRing::single(k), vec![i], Rat::one())
    }

    pub fn ring(&self) -> &ProductRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rat) -> Result<(), CohomError> {
        if exps.len() != self.ring.num_factors() {
            return Err(CohomError::FactorMismatch {
                expected: self.ring.num_factors(),
                got: exps.len(),
            });
        }
        for (j, (&e, &k)) in exps.iter().zip(self.ring.factors()).enumerate() {
            if e as usize > k {
                return Err(CohomError::ExponentOutOfRange {
                    factor: j,
                    exponent: e,
                    bound: k,
                });
            }
        }
        if coeff.is_zero() {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(en) => {
                en.insert(coeff);
            }
            Entry::Occupied(mut en) => {
                *en.get_mut() += coeff;
                if en.get().is_zero() {
                    en.remove();
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &CohomClass) -> Result<CohomClass, CohomError> {
        if self.ring != other.ring {
            return Err(CohomError::RingMismatch);
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CohomClass) -> Result<CohomClass, CohomError> {
        if self.ring != other.ring {
            return Err(CohomError::RingMismatch);
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> CohomClass {
        if c.is_zero() {
            return CohomClass::zero(self.ring.clone());
        }
        CohomClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Truncated product: terms pushed past any factor's top power vanish.
    pub fn cup(&self, other: &CohomClass) -> Result<CohomClass, CohomError> {
        if self.ring != other.ring {
            return Err(CohomError::RingMismatch);
        }
        let bounds = self.ring.factors().to_vec();
        let mut out = CohomClass::zero(self.ring.clone());
        for (e1, c1) in &self.terms {
            'terms: for (e2, c2) in &other.terms {
                let mut e = Vec::with_capacity(e1.len());
                for ((a, b), &k) in e1.iter().zip(e2).zip(&bounds) {
                    let s = a + b;
                    if s as usize > k {
                        continue 'terms;
                    }
                    e.push(s);
                }
                out.add_term(e, c1 * c2)?;
            }
        }
        Ok(out)
    }

    /// Complex degree when homogeneous (all exponent sums equal); `None` for
    /// zero or mixed classes.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut sums = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = sums.next()?;
        if sums.all(|s| s == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Relabels the class into a larger product; `embedding[i]` is the target
    /// factor carrying this class's factor `i`. Unused target factors get
    /// exponent zero.
    pub fn proj_pullback(
        &self,
        target: &ProductRing,
        embedding: &[usize],
    ) -> Result<CohomClass, CohomError> {
        if embedding.len() != self.ring.num_factors() {
            return Err(CohomError::FactorMismatch {
                expected: self.ring.num_factors(),
                got: embedding.len(),
            });
        }
        let mut seen = vec![false; target.num_factors()];
        for (i, &t) in embedding.iter().enumerate() {
            if t >= target.num_factors() || seen[t] {
                return Err(CohomError::BadEmbedding);
            }
            seen[t] = true;
            if target.factors()[t] != self.ring.factors()[i] {
                return Err(CohomError::BadEmbedding);
            }
        }
        let mut out = CohomClass::zero(target.clone());
        for (e, c) in &self.terms {
            let mut exps = vec![0u32; target.num_factors()];
            for (i, &t) in embedding.iter().enumerate() {
                exps[t] = e[i];
            }
            out.add_term(exps, c.clone())?;
        }
        Ok(out)
    }

    /// Pushes forward along the projection keeping `kept` (sorted, distinct,
    /// nonempty): a term survives exactly when every dropped factor carries
    /// its top class. Signs vanish because all factors have even real
    /// dimension.
    pub fn proj_pushforward(&self, kept: &[usize]) -> Result<CohomClass, CohomError> {
        let m = self.ring.num_factors();
        if kept.is_empty() || kept.windows(2).any(|w| w[0] >= w[1]) || kept.iter().any(|&i| i >= m)
        {
            return Err(CohomError::BadEmbedding);
        }
        let target = ProductRing::new(kept.iter().map(|&i| self.ring.factors()[i]).collect());
        let dropped: Vec<usize> = (0..m).filter(|i| !kept.contains(i)).collect();
        let mut out = CohomClass::zero(target);
        for (e, c) in &self.terms {
            if dropped
                .iter()
                .all(|&j| e[j] as usize == self.ring.factors()[j])
            {
                let exps: Vec<u32> = kept.iter().map(|&i| e[i]).collect();
                out.add_term(exps, c.clone())?;
            }
        }
        Ok(out)
    }
}

/// The scalars by which a dominant map acts on each H^{p,p}(P^k): d_0 = 1,
/// d_1 the algebraic degree, d_k the topological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVector {
    pub k: usize,
    pub d: Vec<u64>,
}

impl DegreeVector {
    pub fn new(k: usize, d: Vec<u64>) -> Result<Self, CohomError> {
        if d.len() != k + 1 {
            return Err(CohomError::BadDegreeVector);
        }
        Ok(DegreeVector { k, d })
    }

    pub fn is_dominant(&self) -> bool {
        self.d[0] == 1
    }

    pub fn pointwise_product(&self, other: &DegreeVector) -> Result<DegreeVector, CohomError> {
        if self.k != other.k {
            return Err(CohomError::BadDegreeVector);
        }
        Ok(DegreeVector {
            k: self.k,
            d: self.d.iter().zip(&other.d).map(|(a, b)| a * b).collect(),
        })
    }
}

/// `Σ_p d_p · h_1^p h_2^{k-p}` in P^k × P^k — the class through which the
/// pullback action is evaluated.
pub fn graph_class(dv: &DegreeVector) -> CohomClass {
    let k = dv.k;
    let mut out = CohomClass::zero(ProductRing::square(k));
    for (p, &d) in dv.d.iter().enumerate() {
        out.add_term(
            vec![p as u32, (k - p) as u32],
            Rat::from_integer(d.into()),
        )
        .expect("graph exponents in range");
    }
    out
}

/// `π_{1*}(graph ⌣ π_2^* α)`: the pullback action of a correspondence class
/// on a class of the second factor. Requires the graph homogeneous of full
/// degree k (real degree 2k).
pub fn pullback_action(graph: &CohomClass, alpha: &CohomClass) -> Result<CohomClass, CohomError> {
    let factors = graph.ring().factors();
    if factors.len() != 2 || factors[0] != factors[1] {
        return Err(CohomError::RingMismatch);
    }
    let k = factors[0];
    if !graph.is_zero() {
        match graph.homogeneous_degree() {
            Some(d) if d == k as u32 => {}
            other => {
                return Err(CohomError::GradingViolation {
                    expected: k as u32,
                    got: other.unwrap_or(0),
                })
            }
        }
    }
    if alpha.ring().factors() != [k] {
        return Err(CohomError::RingMismatch);
    }
    let pulled = alpha.proj_pullback(graph.ring(), &[1])?;
    graph.cup(&pulled)?.proj_pushforward(&[0])
}

/// Composition of correspondences at class level, computed in the triple
/// product: pull to factors (1,2) and (2,3), cup, push to (1,3).
pub fn composed_correspondence_class(
    gf: &CohomClass,
    gg: &CohomClass,
    k: usize,
) -> Result<CohomClass, CohomError> {
    let square = ProductRing::square(k);
    if gf.ring() != &square || gg.ring() != &square {
        return Err(CohomError::RingMismatch);
    }
    for g in [gf, gg] {
        if !g.is_zero() {
            match g.homogeneous_degree() {
                Some(d) if d == k as u32 => {}
                other => {
                    return Err(CohomError::GradingViolation {
                        expected: k as u32,
                        got: other.unwrap_or(0),
                    })
                }
            }
        }
    }
    let triple = ProductRing::new(vec![k, k, k]);
    let a = gf.proj_pullback(&triple, &[0, 1])?;
    let b = gg.proj_pullback(&triple, &[1, 2])?;
    a.cup(&b)?.proj_pushforward(&[0, 2])
}

/// The excess class: composed correspondence minus the graph class of the
/// true composition. Zero exactly when pullback is functorial for the pair
/// on all cohomology of the spaces involved.
pub fn excess_class(
    gf: &CohomClass,
    gg: &CohomClass,
    true_dv: &DegreeVector,
) -> Result<CohomClass, CohomError> {
    let composed = composed_correspondence_class(gf, gg, true_dv.k)?;
    composed.sub(&graph_class(true_dv))
}

/// Scans the basis classes h^i of the second factor and returns the first
/// whose pullback action under `e` is nonzero; `None` when `e` acts by zero
/// (equivalently, when `e` itself vanishes).
pub fn nonfunctoriality_witness(e: &CohomClass) -> Result<Option<CohomClass>, CohomError> {
    let factors = e.ring().factors();
    if factors.len() != 2 || factors[0] != factors[1] {
        return Err(CohomError::RingMismatch);
    }
    let k = factors[0];
    for i in 0..=k as u32 {
        let alpha = CohomClass::h_power(k, i)?;
        if !pullback_action(e, &alpha)?.is_zero() {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// Which projection of P^k × P^k a dimension bound refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjBound {
    Pr1,
    Pr2,
}

/// Support-side encoding of the dimension hypotheses: an image of projection
/// one of dimension ≤ k−p means every term has h_1-exponent ≥ p; an image of
/// projection two of dimension ≤ p means every term has h_2-exponent ≥ k−p.
pub fn support_hypothesis_holds(w: &CohomClass, p: usize, bound: ProjBound) -> bool {
    let factors = w.ring().factors();
    if factors.len() != 2 || factors[0] != factors[1] {
        return false;
    }
    let k = factors[0];
    w.terms().all(|(e, _)| match bound {
        ProjBound::Pr1 => e[0] as usize >= p,
        ProjBound::Pr2 => e[1] as usize >= k.saturating_sub(p),
    })
}

/// Directly computes whether `pr_{1*}(W ⌣ pr_2^* α) = 0` for every basis α
/// of real degree `alpha_real_degree`. The dimension lemma predicts `true`
/// when the support hypothesis holds and the degree is on the proper side of
/// 2p; this check always reports the computed truth.
pub fn vanishing_check(
    w: &CohomClass,
    alpha_real_degree: u32,
    _p: usize,
    _bound: ProjBound,
) -> Result<bool, CohomError> {
    let factors = w.ring().factors();
    if factors.len() != 2 || factors[0] != factors[1] {
        return Err(CohomError::RingMismatch);
    }
    let k = factors[0];
    if !w.is_zero() {
        match w.homogeneous_degree() {
            Some(d) if d == k as u32 => {}
            other => {
                return Err(CohomError::GradingViolation {
                    expected: k as u32,
                    got: other.unwrap_or(0),
                })
            }
        }
    }
    if alpha_real_degree % 2 != 0 || alpha_real_degree / 2 > k as u32 {
        // Odd cohomology of P^k vanishes and powers past h^k are zero.
        return Ok(true);
    }
    let alpha = CohomClass::h_power(k, alpha_real_degree / 2)?;
    Ok(pullback_action(w, &alpha)?.is_zero())
}

/// Verifies `π_*(π^*(α) ⌣ β) = α ⌣ π_*(β)` for the projections of the
/// product onto every nonempty proper subset of factors, over basis pairs.
/// With `exhaustive` set, all pairs are checked; otherwise a deterministic
/// stride sample.
pub fn pushpull_check(ring: &ProductRing, exhaustive: bool) -> Result<bool, CohomError> {
    let m = ring.num_factors();
    if m < 2 {
        return Ok(true);
    }
    let full_basis = ring.basis();
    // Every nonempty proper subset of factor indices.
    for mask in 1..(1u32 << m) - 1 {
        let kept: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let sub = ProductRing::new(kept.iter().map(|&i| ring.factors()[i]).collect());
        let sub_basis = sub.basis();
        let stride = if exhaustive { 1 } else { 7 };
        for (ai, a_exps) in sub_basis.iter().enumerate() {
            for (bi, b_exps) in full_basis.iter().enumerate() {
                if !exhaustive && (ai * full_basis.len() + bi) % stride != 0 {
                    continue;
                }
                let alpha = CohomClass::monomial(sub.clone(), a_exps.clone(), Rat::one())?;
                let beta = CohomClass::monomial(ring.clone(), b_exps.clone(), Rat::one())?;
                let pulled = alpha.proj_pullback(ring, &kept)?;
                let lhs = pulled.cup(&beta)?.proj_pushforward(&kept)?;
                let rhs = alpha.cup(&beta.proj_pushforward(&kept)?)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;

    fn dv(k: usize, d: &[u64]) -> DegreeVector {
        DegreeVector::new(k, d.to_vec()).unwrap()
    }

    fn diagonal(k: usize) -> CohomClass {
        graph_class(&dv(k, &vec![1; k + 1]))
    }

    #[test]
    fn cup_truncates_past_top_power() {
        // h ⌣ h^k = 0 on P^2.
        let h = CohomClass::h_power(2, 1).unwrap();
        let hk = CohomClass::h_power(2, 2).unwrap();
        assert!(h.cup(&hk).unwrap().is_zero());
    }

    #[test]
    fn square_on_p1_times_p1() {
        // (h1 + h2)^2 = 2 h1 h2 since h_j^2 = 0.
        let ring = ProductRing::square(1);
        let h1 = CohomClass::monomial(ring.clone(), vec![1, 0], Rat::one()).unwrap();
        let h2 = CohomClass::monomial(ring.clone(), vec![0, 1], Rat::one()).unwrap();
        let s = h1.add(&h2).unwrap();
        let sq = s.cup(&s).unwrap();
        let expect = CohomClass::monomial(ring, vec![1, 1], rat_i64(2)).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn diagonal_self_intersection_is_euler_characteristic() {
        // [Δ] ⌣ [Δ] on P^2 × P^2 has coefficient 3 on h1^2 h2^2.
        let d = diagonal(2);
        let sq = d.cup(&d).unwrap();
        assert_eq!(sq.coeff(&[2, 2]), rat_i64(3));
        assert_eq!(sq.terms().count(), 1);
    }

    #[test]
    fn pullback_relabels_and_preserves_unit() {
        let square = ProductRing::square(2);
        let triple = ProductRing::new(vec![2, 2, 2]);
        let c = CohomClass::monomial(square.clone(), vec![1, 2], rat_i64(5)).unwrap();
        let up = c.proj_pullback(&triple, &[0, 1]).unwrap();
        assert_eq!(up.coeff(&[1, 2, 0]), rat_i64(5));

        let unit = CohomClass::unit(square.clone());
        let up = unit.proj_pullback(&triple, &[1, 2]).unwrap();
        assert_eq!(up, CohomClass::unit(triple));
    }

    #[test]
    fn pushforward_needs_top_class_on_dropped_factors() {
        let ring = ProductRing::new(vec![3, 2]);
        let keep = CohomClass::monomial(ring.clone(), vec![1, 2], Rat::one()).unwrap();
        let kept = keep.proj_pushforward(&[0]).unwrap();
        assert_eq!(kept.coeff(&[1]), Rat::one());

        let lose = CohomClass::monomial(ring, vec![1, 1], Rat::one()).unwrap();
        assert!(lose.proj_pushforward(&[0]).unwrap().is_zero());
    }

    #[test]
    fn diagonal_pushes_to_unit() {
        let d = diagonal(2);
        let pushed = d.proj_pushforward(&[0]).unwrap();
        assert_eq!(pushed, CohomClass::unit(ProductRing::single(2)));
    }

    #[test]
    fn pushforward_after_pullback_kills_everything() {
        // No dropped factor can carry a top class after a pullback.
        for factors in [vec![2, 2], vec![1, 3], vec![2, 1, 2]] {
            let ring = ProductRing::new(factors.clone());
            let first = ProductRing::single(factors[0]);
            for exps in first.basis() {
                let alpha = CohomClass::monomial(first.clone(), exps, Rat::one()).unwrap();
                let pulled = alpha.proj_pullback(&ring, &[0]).unwrap();
                assert!(pulled.proj_pushforward(&[0]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn graph_class_examples() {
        // Degree vector (1,2,1): h2^2 + 2 h1 h2 + h1^2.
        let g = graph_class(&dv(2, &[1, 2, 1]));
        assert_eq!(g.coeff(&[0, 2]), rat_i64(1));
        assert_eq!(g.coeff(&[1, 1]), rat_i64(2));
        assert_eq!(g.coeff(&[2, 0]), rat_i64(1));
        assert_eq!(diagonal(2), graph_class(&dv(2, &[1, 1, 1])));
    }

    #[test]
    fn pullback_action_reads_off_degree_vector() {
        let g = graph_class(&dv(2, &[1, 2, 1]));
        let point = CohomClass::h_power(2, 2).unwrap();
        assert_eq!(pullback_action(&g, &point).unwrap(), point);

        let unit = CohomClass::h_power(2, 0).unwrap();
        assert_eq!(pullback_action(&g, &unit).unwrap(), unit);

        let cubic = graph_class(&dv(3, &[1, 3, 3, 1]));
        let h = CohomClass::h_power(3, 1).unwrap();
        assert_eq!(pullback_action(&cubic, &h).unwrap(), h.scale(&rat_i64(3)));
    }

    #[test]
    fn pullback_action_rejects_bad_grading() {
        let ring = ProductRing::square(2);
        let mixed = CohomClass::monomial(ring, vec![1, 0], Rat::one()).unwrap();
        let h = CohomClass::h_power(2, 1).unwrap();
        assert!(matches!(
            pullback_action(&mixed, &h),
            Err(CohomError::GradingViolation { .. })
        ));
    }

    #[test]
    fn composition_multiplies_degree_vectors() {
        let u = dv(3, &[1, 3, 3, 1]);
        let v = dv(3, &[1, 2, 4, 8]);
        let composed =
            composed_correspondence_class(&graph_class(&u), &graph_class(&v), 3).unwrap();
        assert_eq!(composed, graph_class(&u.pointwise_product(&v).unwrap()));
    }

    #[test]
    fn composing_with_diagonal_is_identity() {
        let g = graph_class(&dv(2, &[1, 5, 7]));
        let d = diagonal(2);
        assert_eq!(composed_correspondence_class(&g, &d, 2).unwrap(), g);
        assert_eq!(composed_correspondence_class(&d, &g, 2).unwrap(), g);
    }

    #[test]
    fn involution_excess_has_middle_components() {
        // Cubic involution of P^3 composed with itself: correspondence level
        // gives (1,9,9,1), the true composition is the identity (1,1,1,1),
        // so the excess is (0,8,8,0).
        let sigma = dv(3, &[1, 3, 3, 1]);
        let e = excess_class(
            &graph_class(&sigma),
            &graph_class(&sigma),
            &dv(3, &[1, 1, 1, 1]),
        )
        .unwrap();
        assert_eq!(e.coeff(&[0, 3]), rat_i64(0));
        assert_eq!(e.coeff(&[1, 2]), rat_i64(8));
        assert_eq!(e.coeff(&[2, 1]), rat_i64(8));
        assert_eq!(e.coeff(&[3, 0]), rat_i64(0));

        let witness = nonfunctoriality_witness(&e).unwrap();
        assert_eq!(witness, Some(CohomClass::h_power(3, 1).unwrap()));
    }

    #[test]
    fn excess_vanishes_for_identity_compositions() {
        let g = dv(2, &[1, 4, 16]);
        let e = excess_class(&graph_class(&g), &diagonal(2), &g).unwrap();
        assert!(e.is_zero());
        assert_eq!(nonfunctoriality_witness(&e).unwrap(), None);
    }

    #[test]
    fn witness_extracts_first_nonzero_component() {
        let ring = ProductRing::square(3);
        let e = CohomClass::monomial(ring, vec![2, 1], rat_i64(-4)).unwrap();
        let w = nonfunctoriality_witness(&e).unwrap();
        assert_eq!(w, Some(CohomClass::h_power(3, 2).unwrap()));
    }

    #[test]
    fn vanishing_check_support_and_truth() {
        // W = h1^2 (a point times the plane) on P^2 × P^2: pr1 image has
        // dimension 0, so α of real degree 2 < 2p = 4 must die.
        let ring = ProductRing::square(2);
        let w = CohomClass::monomial(ring.clone(), vec![2, 0], Rat::one()).unwrap();
        assert!(support_hypothesis_holds(&w, 2, ProjBound::Pr1));
        assert!(vanishing_check(&w, 2, 2, ProjBound::Pr1).unwrap());

        // The diagonal fails the hypothesis and the conclusion: the check
        // reports the computed truth.
        let d = diagonal(2);
        assert!(!support_hypothesis_holds(&d, 2, ProjBound::Pr1));
        assert!(!vanishing_check(&d, 2, 2, ProjBound::Pr1).unwrap());
    }

    #[test]
    fn pushpull_holds_on_small_products() {
        assert!(pushpull_check(&ProductRing::square(1), true).unwrap());
        assert!(pushpull_check(&ProductRing::square(2), true).unwrap());
        assert!(pushpull_check(&ProductRing::new(vec![1, 2]), true).unwrap());
    }
}
