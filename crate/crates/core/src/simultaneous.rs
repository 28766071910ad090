//! Simultaneous digit systems: one digit stream expanding every component of
//! a product of quotient rings at once.
//!
//! The digit at each step is selected by the Chinese Remainder Theorem on the
//! constant coefficients, so the same digit representative drives the
//! backward division in every component. Verification reduces to pairwise
//! unit ideals plus the finite expansion property of the product-modulus
//! system; the classical case (bases `N_i`, digits `0..|N_1...N_k|-1`) is the
//! special case of linear moduli `x - N_i`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cns::{self, FepVerdict, Limits, StartSet};
use crate::error::{Error, Result};
use crate::gb_ideal::strong_gb;
use crate::intpoly::IntPoly;
use crate::quotient::{DigitSystem, Element, QuotientRing};

/// A list of pairwise coprime monic moduli with pairwise coprime constant
/// terms, plus digit representatives whose constants form a complete residue
/// system modulo the product of the constant terms.
#[derive(Clone, Debug)]
pub struct SimSystem {
    rings: Vec<QuotientRing>,
    digit_reps: Vec<IntPoly>,
    consts_abs: Vec<BigInt>,
    product_const_abs: BigInt,
    lookup: HashMap<BigInt, usize>,
}

impl SimSystem {
    pub fn new(moduli: Vec<IntPoly>, digit_reps: Vec<IntPoly>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidSimSystem("at least one modulus required".into()));
        }
        let rings = moduli
            .iter()
            .map(|f| QuotientRing::new(f.clone()))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..moduli.len() {
            for j in i + 1..moduli.len() {
                if !moduli[i].coprime_over_q(&moduli[j])? {
                    return Err(Error::InvalidSimSystem(format!(
                        "moduli {} and {} are not coprime",
                        moduli[i], moduli[j]
                    )));
                }
                let gi = moduli[i].constant_term().abs();
                let gj = moduli[j].constant_term().abs();
                if !gi.gcd(&gj).is_one() {
                    return Err(Error::InvalidSimSystem(format!(
                        "constant terms of {} and {} are not coprime",
                        moduli[i], moduli[j]
                    )));
                }
            }
        }
        let consts_abs: Vec<BigInt> = moduli.iter().map(|f| f.constant_term().abs()).collect();
        let product_const_abs: BigInt = consts_abs.iter().product();
        let mut lookup = HashMap::new();
        for (idx, d) in digit_reps.iter().enumerate() {
            let r = d.constant_term().mod_floor(&product_const_abs);
            if lookup.insert(r, idx).is_some() {
                return Err(Error::InvalidSimSystem(
                    "digit constants are not pairwise incongruent".into(),
                ));
            }
        }
        if BigInt::from(lookup.len()) != product_const_abs {
            return Err(Error::InvalidSimSystem(format!(
                "digit constants must form a complete residue system modulo {product_const_abs}"
            )));
        }
        Ok(SimSystem {
            rings,
            digit_reps,
            consts_abs,
            product_const_abs,
            lookup,
        })
    }

    /// The classical simultaneous system of the integer bases: moduli
    /// `x - N_i` and digits `0, ..., |N_1...N_k| - 1`.
    pub fn classical(bases: &[i64]) -> Result<Self> {
        if bases.is_empty() || bases.contains(&0) {
            return Err(Error::InvalidSimSystem("bases must be nonzero".into()));
        }
        let moduli: Vec<IntPoly> = bases
            .iter()
            .map(|&n| IntPoly::from_coeffs(vec![BigInt::from(-n), BigInt::one()]))
            .collect();
        let m: i128 = bases.iter().map(|&n| (n as i128).abs()).product();
        let m = u64::try_from(m)
            .ok()
            .filter(|&m| m <= 10_000_000)
            .ok_or_else(|| Error::InvalidSimSystem("digit set too large".into()))?;
        let digits = (0..m).map(IntPoly::constant).collect();
        SimSystem::new(moduli, digits)
    }

    pub fn moduli(&self) -> Vec<&IntPoly> {
        self.rings.iter().map(QuotientRing::modulus).collect()
    }

    pub fn rings(&self) -> &[QuotientRing] {
        &self.rings
    }

    pub fn digit_reps(&self) -> &[IntPoly] {
        &self.digit_reps
    }

    pub fn arity(&self) -> usize {
        self.rings.len()
    }

    /// Modulus of the digit constants: the product of the `|f_i(0)|`.
    pub fn digit_modulus(&self) -> &BigInt {
        &self.product_const_abs
    }

    /// The diagonal embedding of an integer.
    pub fn diagonal(&self, a: &BigInt) -> SimState {
        SimState {
            components: self
                .rings
                .iter()
                .map(|r| r.from_int(a.clone()))
                .collect(),
        }
    }

    pub fn state(&self, components: Vec<Element>) -> Result<SimState> {
        if components.len() != self.rings.len() {
            return Err(Error::InvalidInput("component count mismatch".into()));
        }
        Ok(SimState { components })
    }

    pub fn state_from_ints(&self, values: &[i64]) -> Result<SimState> {
        if values.len() != self.rings.len() {
            return Err(Error::InvalidInput("component count mismatch".into()));
        }
        Ok(SimState {
            components: self
                .rings
                .iter()
                .zip(values)
                .map(|(r, &v)| r.from_int(v))
                .collect(),
        })
    }

    /// The unique digit representative matching every component's constant
    /// coefficient, found by the Chinese Remainder Theorem.
    pub fn digit_for(&self, s: &SimState) -> usize {
        let mut r = BigInt::zero();
        let mut m = BigInt::one();
        for (comp, modulus) in s.components.iter().zip(&self.consts_abs) {
            let ri = comp.constant_term().mod_floor(modulus);
            if m.is_one() {
                r = ri;
                m = modulus.clone();
                continue;
            }
            let eg = m.extended_gcd(modulus);
            debug_assert!(eg.gcd.is_one());
            // r + m*x*(ri - r) solves both congruences
            let combined = &m * modulus;
            r = (&r + &m * &eg.x * (&ri - &r)).mod_floor(&combined);
            m = combined;
        }
        self.lookup[&r]
    }

    /// One simultaneous backward-division step: the shared digit and the
    /// componentwise state `(a_i - d) / x` modulo `f_i`.
    pub fn step(&self, s: &SimState) -> (usize, SimState) {
        let idx = self.digit_for(s);
        let d = &self.digit_reps[idx];
        let components = self
            .rings
            .iter()
            .zip(&s.components)
            .map(|(ring, a)| component_backstep(ring, a, d))
            .collect();
        (idx, SimState { components })
    }

    /// Iterates to the all-zero state, a repeated state, or the budget.
    pub fn expand(&self, start: &SimState, budget: u64) -> SimExpansion {
        let mut digits = Vec::new();
        let mut state = start.clone();
        let mut seen: HashMap<SimState, usize> = HashMap::new();
        let mut states: Vec<SimState> = Vec::new();
        for _ in 0..budget {
            if state.is_zero() {
                return SimExpansion::Finite { digits };
            }
            if let Some(&j) = seen.get(&state) {
                return SimExpansion::Periodic {
                    digits,
                    preperiod: states[..j].to_vec(),
                    cycle: states[j..].to_vec(),
                };
            }
            seen.insert(state.clone(), states.len());
            states.push(state.clone());
            let (idx, next) = self.step(&state);
            digits.push(idx);
            state = next;
        }
        if state.is_zero() {
            return SimExpansion::Finite { digits };
        }
        SimExpansion::Budget { digits }
    }

    /// The digit system on the product modulus driven by the same digit
    /// representatives.
    pub fn product_system(&self) -> Result<DigitSystem> {
        let mut product = IntPoly::one();
        for ring in &self.rings {
            product = &product * ring.modulus();
        }
        DigitSystem::from_polys(product, &self.digit_reps)
    }

    /// Whether the digit representatives are exactly the classical digits
    /// `0, ..., M-1`.
    pub fn has_classical_digits(&self) -> bool {
        self.digit_reps.iter().enumerate().all(|(i, d)| {
            d.degree().map_or(i == 0 && d.is_zero(), |deg| deg == 0)
                && d.constant_term() == BigInt::from(i)
        })
    }
}

fn component_backstep(ring: &QuotientRing, a: &Element, d: &IntPoly) -> Element {
    let u = ring.reduce(&(&a.to_poly() - d));
    let f = ring.modulus();
    let n = ring.degree();
    let q = u.constant_term() / f.constant_term();
    let mut coeffs = Vec::with_capacity(n);
    for i in 1..n {
        coeffs.push(&u.coeffs()[i] - &q * f.coeff(i));
    }
    coeffs.push(-&q * f.coeff(n));
    ring.element(coeffs).expect("length matches ring degree")
}

/// A tuple of canonical residues, one per modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimState {
    components: Vec<Element>,
}

impl SimState {
    pub fn components(&self) -> &[Element] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Element::is_zero)
    }
}

impl fmt::Display for SimState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for SimState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimState{self}")
    }
}

#[derive(Clone, Debug)]
pub enum SimExpansion {
    Finite {
        digits: Vec<usize>,
    },
    Periodic {
        digits: Vec<usize>,
        preperiod: Vec<SimState>,
        cycle: Vec<SimState>,
    },
    Budget {
        digits: Vec<usize>,
    },
}

impl SimExpansion {
    pub fn digits(&self) -> &[usize] {
        match self {
            SimExpansion::Finite { digits }
            | SimExpansion::Periodic { digits, .. }
            | SimExpansion::Budget { digits } => digits,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SimExpansion::Finite { .. })
    }
}

/// Pairwise-ideal verdict for one modulus pair.
#[derive(Clone, Debug)]
pub struct PairIdeal {
    pub i: usize,
    pub j: usize,
    pub resultant: BigInt,
    pub unit_ideal: bool,
}

/// Full verification of a simultaneous digit system.
#[derive(Clone, Debug)]
pub struct SimVerifyReport {
    pub pairwise: Vec<PairIdeal>,
    pub pairwise_ok: bool,
    pub product_modulus: IntPoly,
    /// Finite expansion property of the product-modulus digit system.
    pub product_fep: FepVerdict,
    /// The whole product ring expands iff the pairwise ideals are trivial and
    /// the product system has finite expansions.
    pub full_fep: bool,
    /// Whether every integer expands (the diagonal-only variant), certified
    /// by a units-only witness run on the product system.
    pub integers_expand: FepVerdict,
}

/// Verifies a simultaneous digit system: pairwise unit ideals and the finite
/// expansion property of the product system, plus the integers-only variant.
pub fn verify_sim(sys: &SimSystem, limits: &Limits) -> Result<SimVerifyReport> {
    let moduli = sys.moduli();
    let mut pairwise = Vec::new();
    let mut pairwise_ok = true;
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            let gb = strong_gb(moduli[i], moduli[j])?;
            let unit = gb.is_unit_ideal();
            pairwise_ok &= unit;
            pairwise.push(PairIdeal {
                i,
                j,
                resultant: moduli[i].resultant(moduli[j])?,
                unit_ideal: unit,
            });
        }
    }
    let product = sys.product_system()?;
    let product_modulus = product.ring().modulus().clone();
    let product_fep = if sys.has_classical_digits() {
        match cns::is_cns_with(&product_modulus, limits) {
            Ok(true) => FepVerdict::Fep,
            Ok(false) => FepVerdict::NotFep,
            Err(Error::Inconclusive(_)) => FepVerdict::Inconclusive,
            Err(e) => return Err(e),
        }
    } else {
        cns::decide_fep(&product, StartSet::Generators, limits)?.verdict
    };
    let integers_expand = match product_fep {
        FepVerdict::Fep => FepVerdict::Fep,
        _ => cns::decide_fep(&product, StartSet::UnitsOnly, limits)?.verdict,
    };
    Ok(SimVerifyReport {
        pairwise,
        pairwise_ok,
        product_modulus,
        product_fep,
        full_fep: pairwise_ok && product_fep == FepVerdict::Fep,
        integers_expand,
    })
}

/// Classification of classical bases by the characterization of simultaneous
/// number systems in the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorsimVerdict {
    /// The bases define a simultaneous number system.
    NumberSystem,
    /// A digit system, but without full finite expansions.
    NotNumberSystem(String),
    /// The definition does not apply (zero, repeated, or non-coprime bases).
    NotADigitSystem(String),
}

impl CorsimVerdict {
    pub fn is_number_system(&self) -> bool {
        matches!(self, CorsimVerdict::NumberSystem)
    }
}

/// Applies the characterization: all `N_i <= -2` and either a single base, or
/// exactly two bases at distance one.
pub fn corsim_classify(bases: &[i64]) -> CorsimVerdict {
    if bases.is_empty() {
        return CorsimVerdict::NotADigitSystem("no bases given".into());
    }
    if bases.contains(&0) {
        return CorsimVerdict::NotADigitSystem("bases must be nonzero".into());
    }
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            if bases[i] == bases[j] {
                return CorsimVerdict::NotADigitSystem(format!("repeated base {}", bases[i]));
            }
            if bases[i].gcd(&bases[j]) != 1 {
                return CorsimVerdict::NotADigitSystem(format!(
                    "bases {} and {} are not coprime",
                    bases[i], bases[j]
                ));
            }
        }
    }
    if bases.iter().any(|&n| n > -2) {
        return CorsimVerdict::NotNumberSystem("every base must be at most -2".into());
    }
    match bases.len() {
        1 => CorsimVerdict::NumberSystem,
        2 if (bases[0] - bases[1]).abs() == 1 => CorsimVerdict::NumberSystem,
        2 => CorsimVerdict::NotNumberSystem(
            "two bases must differ by exactly one".into(),
        ),
        k => CorsimVerdict::NotNumberSystem(format!(
            "{k} bases never form a simultaneous number system"
        )),
    }
}

/// The quadratic triple of a parameter `a <= -3`:
/// `f = (x-a)(x-a-1) - 1`, `g = f + x - a - 1`, `h = f + x - a - 2`.
#[derive(Clone, Debug)]
pub struct QuadTriple {
    pub a: i64,
    pub f: IntPoly,
    pub g: IntPoly,
    pub h: IntPoly,
    pub res_fg: BigInt,
    pub res_fh: BigInt,
    pub res_gh: BigInt,
    pub product: IntPoly,
    pub product_cns: bool,
    /// `a <= -7`: the simultaneous number system property is guaranteed.
    pub guaranteed: bool,
}

pub fn quad_triple_polys(a: i64) -> Result<(IntPoly, IntPoly, IntPoly)> {
    if a > -3 {
        return Err(Error::InvalidInput("parameter must be at most -3".into()));
    }
    let x_minus = |v: i64| IntPoly::from_coeffs(vec![BigInt::from(-v), BigInt::one()]);
    let f = &(&x_minus(a) * &x_minus(a + 1)) - &IntPoly::one();
    let g = &f + &x_minus(a + 1);
    let h = &f + &x_minus(a + 2);
    Ok((f, g, h))
}

/// Builds the triple, checks the pairwise unit resultants, and decides the
/// CNS property of the product.
pub fn quad_triple(a: i64, limits: &Limits) -> Result<QuadTriple> {
    let (f, g, h) = quad_triple_polys(a)?;
    let res_fg = f.resultant(&g)?;
    let res_fh = f.resultant(&h)?;
    let res_gh = g.resultant(&h)?;
    for r in [&res_fg, &res_fh, &res_gh] {
        if !r.abs().is_one() {
            return Err(Error::Internal(format!(
                "pairwise resultant {r} of the quadratic triple is not a unit"
            )));
        }
    }
    let product = &(&f * &g) * &h;
    let product_cns = cns::is_cns_with(&product, limits)?;
    Ok(QuadTriple {
        a,
        f,
        g,
        h,
        res_fg,
        res_fh,
        res_gh,
        product,
        product_cns,
        guaranteed: a <= -7,
    })
}

/// Result of a maximum-clique search over the unit-resultant graph.
#[derive(Clone, Debug)]
pub struct CliqueReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub max_size: usize,
    pub max_clique: Vec<IntPoly>,
    pub target: Option<usize>,
    pub target_found: Option<bool>,
}

/// Enumerates all monic polynomials of the given degree with non-leading
/// coefficients in `[-box_bound, box_bound]`, joins two when the absolute
/// value of their resultant is one, and finds a maximum clique by branch and
/// bound. Deterministic: vertices in lexicographic coefficient order,
/// candidates scanned ascending.
pub fn clique_search(
    degree: usize,
    box_bound: i64,
    target: Option<usize>,
    cap: u64,
) -> Result<CliqueReport> {
    if degree == 0 || box_bound < 0 {
        return Err(Error::InvalidInput(
            "degree must be positive and the box nonnegative".into(),
        ));
    }
    let width = 2 * box_bound as u64 + 1;
    let total = width
        .checked_pow(degree as u32)
        .filter(|&t| t <= cap)
        .ok_or(Error::SearchSpaceExceeded(
            width.saturating_pow(degree as u32),
            cap,
        ))?;

    let mut vertices = Vec::with_capacity(total as usize);
    let mut counter = vec![-box_bound; degree];
    loop {
        let mut coeffs: Vec<BigInt> = counter.iter().map(|&c| BigInt::from(c)).collect();
        coeffs.push(BigInt::one());
        vertices.push(IntPoly::from_coeffs(coeffs));
        let mut pos = degree;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] <= box_bound {
                break;
            }
            counter[pos] = -box_bound;
        }
        if counter.iter().all(|&c| c == -box_bound) {
            break;
        }
    }
    debug_assert_eq!(vertices.len(), total as usize);

    let n = vertices.len();
    let words = n.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; n];
    let mut edge_count = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if vertices[i].resultant(&vertices[j])?.abs().is_one() {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
                edge_count += 1;
            }
        }
    }

    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let full: Vec<u64> = (0..words)
        .map(|w| {
            if w == words - 1 && n % 64 != 0 {
                (1u64 << (n % 64)) - 1
            } else {
                u64::MAX
            }
        })
        .collect();
    extend(&adj, full, &mut current, &mut best);

    let max_size = best.len();
    Ok(CliqueReport {
        vertex_count: n,
        edge_count,
        max_size,
        max_clique: best.into_iter().map(|i| vertices[i].clone()).collect(),
        target,
        target_found: target.map(|t| max_size >= t),
    })
}

fn popcount(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn extend(adj: &[Vec<u64>], mut cand: Vec<u64>, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    loop {
        if current.len() + popcount(&cand) <= best.len() {
            return;
        }
        // lowest candidate vertex
        let Some(v) = cand
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
        else {
            return;
        };
        cand[v / 64] &= !(1 << (v % 64));
        current.push(v);
        let next: Vec<u64> = cand
            .iter()
            .zip(adj[v].iter())
            .map(|(a, b)| a & b)
            .collect();
        extend(adj, next, current, best);
        current.pop();
    }
}

/// The full matrix of pairwise resultants, `m[i][j] = resultant(p_i, p_j)`.
pub fn pairwise_resultants(polys: &[IntPoly]) -> Result<Vec<Vec<BigInt>>> {
    let n = polys.len();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[i][j] = polys[i].resultant(&polys[j])?;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn step_follows_worked_double_expansion() {
        let sys = SimSystem::classical(&[-3, -4]).unwrap();
        let s = sys.state_from_ints(&[100, 100]).unwrap();
        let (d, next) = sys.step(&s);
        assert_eq!(d, 4);
        assert_eq!(next, sys.state_from_ints(&[-32, -24]).unwrap());
        let expected = [(4usize, [12i64, 7]), (3, [-3, -1]), (3, [2, 1]), (5, [1, 1]), (1, [0, 0])];
        let mut cur = next;
        for (digit, state) in expected {
            let (d, n) = sys.step(&cur);
            assert_eq!(d, digit);
            assert_eq!(n, sys.state_from_ints(&state).unwrap());
            cur = n;
        }
    }

    #[test]
    fn step_follows_worked_triple_expansion() {
        let sys = SimSystem::classical(&[-2, -3, -5]).unwrap();
        let s = sys.state_from_ints(&[1, 1, 7]).unwrap();
        let (d, next) = sys.step(&s);
        assert_eq!(d, 7);
        assert_eq!(next, sys.state_from_ints(&[3, 2, 0]).unwrap());
        let zero = sys.state_from_ints(&[0, 0, 0]).unwrap();
        let (d0, z) = sys.step(&zero);
        assert_eq!(d0, 0);
        assert!(z.is_zero());
    }

    #[test]
    fn expansion_of_100_in_bases_minus3_minus4() {
        let sys = SimSystem::classical(&[-3, -4]).unwrap();
        let exp = sys.expand(&sys.diagonal(&BigInt::from(100)), 1000);
        let SimExpansion::Finite { digits } = exp else {
            panic!("expected finite expansion");
        };
        let msb: Vec<usize> = digits.iter().rev().copied().collect();
        assert_eq!(msb, vec![1, 5, 3, 3, 4, 4]);
    }

    #[test]
    fn triple_system_cycle_and_finite_cases() {
        let sys = SimSystem::classical(&[-2, -3, -5]).unwrap();
        let bad = sys.state_from_ints(&[1, 1, 6]).unwrap();
        match sys.expand(&bad, 1000) {
            SimExpansion::Periodic { cycle, .. } => {
                let want: HashSet<SimState> = [
                    sys.state_from_ints(&[12, 8, 5]).unwrap(),
                    sys.state_from_ints(&[4, 4, 3]).unwrap(),
                ]
                .into_iter()
                .collect();
                let got: HashSet<SimState> = cycle.into_iter().collect();
                assert_eq!(got, want);
            }
            other => panic!("expected periodic, got {other:?}"),
        }
        let good = sys.state_from_ints(&[1, 1, 7]).unwrap();
        match sys.expand(&good, 1000) {
            SimExpansion::Finite { digits } => assert_eq!(digits, vec![7, 5, 1]),
            other => panic!("expected finite, got {other:?}"),
        }
    }

    #[test]
    fn shared_digit_soundness() {
        // after any step, x*a_i' + d = a_i (mod f_i) with the same digit d
        let sys = SimSystem::classical(&[-3, -4]).unwrap();
        for a in -25i64..=25 {
            for b in -25i64..=25 {
                let s = sys.state_from_ints(&[a, b]).unwrap();
                let (idx, next) = sys.step(&s);
                let d = &sys.digit_reps()[idx];
                for (i, ring) in sys.rings().iter().enumerate() {
                    let lhs = ring.reduce(
                        &(&next.components()[i].to_poly().shift_up(1) + d),
                    );
                    assert_eq!(lhs, s.components()[i]);
                }
            }
        }
    }

    #[test]
    fn finite_trajectories_stay_in_fibred_product() {
        use crate::crt_merge::in_w;
        let sys = SimSystem::classical(&[-2, -3, -5]).unwrap();
        let moduli: Vec<IntPoly> = sys.moduli().into_iter().cloned().collect();
        let start = sys.state_from_ints(&[1, 1, 7]).unwrap();
        let mut cur = start;
        loop {
            let tuple: Vec<IntPoly> =
                cur.components().iter().map(Element::to_poly).collect();
            assert!(in_w(&tuple, &moduli).unwrap());
            if cur.is_zero() {
                break;
            }
            cur = sys.step(&cur).1;
        }
        // a state outside W never reaches zero
        let outside = sys.state_from_ints(&[1, 1, 6]).unwrap();
        let tuple: Vec<IntPoly> = outside.components().iter().map(Element::to_poly).collect();
        assert!(!in_w(&tuple, &moduli).unwrap());
        assert!(!sys.expand(&outside, 10_000).is_finite());
    }

    #[test]
    fn verify_adjacent_pair() {
        let sys = SimSystem::classical(&[-3, -4]).unwrap();
        let rep = verify_sim(&sys, &Limits::default()).unwrap();
        assert!(rep.pairwise_ok);
        assert_eq!(rep.product_fep, FepVerdict::Fep);
        assert!(rep.full_fep);
        assert_eq!(rep.product_modulus, p("x^2+7x+12"));
    }

    #[test]
    fn verify_triple_fails_pairwise_but_integers_expand() {
        let sys = SimSystem::classical(&[-2, -3, -5]).unwrap();
        let rep = verify_sim(&sys, &Limits::default()).unwrap();
        assert!(!rep.pairwise_ok);
        let bad: Vec<_> = rep.pairwise.iter().filter(|pr| !pr.unit_ideal).collect();
        assert_eq!(bad.len(), 2);
        assert!(bad
            .iter()
            .any(|pr| pr.resultant.abs() == BigInt::from(3)));
        assert!(bad
            .iter()
            .any(|pr| pr.resultant.abs() == BigInt::from(2)));
        assert!(!rep.full_fep);
        assert_eq!(rep.product_fep, FepVerdict::Fep); // the product itself is CNS
        assert_eq!(rep.integers_expand, FepVerdict::Fep);
    }

    #[test]
    fn verify_pair_with_distance_one_at_larger_bases() {
        let sys = SimSystem::classical(&[-4, -5]).unwrap();
        let rep = verify_sim(&sys, &Limits::default()).unwrap();
        assert!(rep.full_fep);
    }

    #[test]
    fn corsim_examples() {
        assert!(corsim_classify(&[-3, -4]).is_number_system());
        assert!(!corsim_classify(&[-4, -7]).is_number_system());
        assert!(corsim_classify(&[-5]).is_number_system());
        assert!(matches!(
            corsim_classify(&[-2, -4]),
            CorsimVerdict::NotADigitSystem(_)
        ));
        assert!(matches!(
            corsim_classify(&[5]),
            CorsimVerdict::NotNumberSystem(_)
        ));
    }

    #[test]
    fn corsim_positive_implies_verified() {
        for n1 in -12i64..=-2 {
            let pair = [n1, n1 - 1];
            assert!(corsim_classify(&pair).is_number_system());
            let sys = SimSystem::classical(&pair).unwrap();
            assert!(verify_sim(&sys, &Limits::default()).unwrap().full_fep);
        }
    }

    #[test]
    fn quad_triple_polynomials() {
        let (f, g, h) = quad_triple_polys(-3).unwrap();
        assert_eq!(f, p("x^2+5x+5"));
        assert_eq!(g, p("x^2+6x+7"));
        assert_eq!(h, p("x^2+6x+6"));
        assert!(quad_triple_polys(-2).is_err());
    }

    #[test]
    fn quad_triple_minus_four_is_cns() {
        let t = quad_triple(-4, &Limits::default()).unwrap();
        assert_eq!(t.f, p("x^2+7x+11"));
        assert_eq!(t.g, p("x^2+8x+14"));
        assert_eq!(t.h, p("x^2+8x+13"));
        assert!(t.res_fg.abs().is_one());
        assert!(t.res_fh.abs().is_one());
        assert!(t.res_gh.abs().is_one());
        assert!(t.product_cns);
        assert!(!t.guaranteed);
    }

    #[test]
    fn clique_on_linear_polynomials() {
        // edges join consecutive constants only, so the maximum clique is a
        // pair
        let rep = clique_search(1, 3, Some(3), 100_000).unwrap();
        assert_eq!(rep.vertex_count, 7);
        assert_eq!(rep.max_size, 2);
        assert_eq!(rep.target_found, Some(false));
    }

    #[test]
    fn clique_quadratics_contain_the_known_triple() {
        let rep = clique_search(2, 6, Some(3), 100_000).unwrap();
        assert!(rep.max_size >= 3);
        // the smallest expanding triple appears as a mutual clique
        let triple = [p("x^2+5x+5"), p("x^2+6x+6"), p("x^2+6x+7")];
        for a in &triple {
            for b in &triple {
                if a != b {
                    assert!(a.resultant(b).unwrap().abs().is_one());
                }
            }
        }
    }

    #[test]
    fn pairwise_resultants_examples() {
        let m = pairwise_resultants(&[p("x"), p("x")]).unwrap();
        assert_eq!(m[0][1], BigInt::zero());
        let m = pairwise_resultants(&[p("x+2"), p("x+3"), p("x+5")]).unwrap();
        assert_eq!(m[0][1].abs(), BigInt::one());
        assert_eq!(m[0][2].abs(), BigInt::from(3));
        assert_eq!(m[1][2].abs(), BigInt::from(2));
    }

    #[test]
    fn unit_resultant_set_of_six() {
        let set = [
            p("x-1"),
            p("x"),
            p("x^2-x+1"),
            p("x^3-x+1"),
            p("x^4-x^3+x^2-x+1"),
            p("x^5-2x^3+3x^2-2x+1"),
        ];
        let m = pairwise_resultants(&set).unwrap();
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                assert_eq!(m[i][j], BigInt::one(), "resultant of {} and {}", set[i], set[j]);
            }
        }
        // shift invariance of the pairwise resultants
        for t in [1i64, 5, 20] {
            let shifted: Vec<IntPoly> = set
                .iter()
                .map(|q| q.compose_x_plus(&BigInt::from(-t)))
                .collect();
            let ms = pairwise_resultants(&shifted).unwrap();
            assert_eq!(m, ms, "shift by {t} changed a resultant");
        }
    }

    #[test]
    fn invalid_systems_are_rejected() {
        assert!(SimSystem::classical(&[-2, -4]).is_err());
        assert!(SimSystem::classical(&[0, -3]).is_err());
        // digits must be complete and incongruent
        assert!(SimSystem::new(
            vec![p("x+2"), p("x+3")],
            (0..5).map(IntPoly::constant).collect()
        )
        .is_err());
        assert!(SimSystem::new(
            vec![p("x+2"), p("x+3")],
            [0i64, 1, 2, 3, 4, 10].iter().map(|&v| IntPoly::constant(v)).collect()
        )
        .is_err());
    }
}
