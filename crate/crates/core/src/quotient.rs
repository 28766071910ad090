//! The quotient ring `Z[x]/(f)` for monic `f`, digit systems on it, and the
//! backward-division expansion dynamics.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

/// `Z[x]/(f)` with `f` monic of degree `n >= 1` and `f(0) != 0`; elements are
/// represented canonically by their degree-below-`n` coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    modulus: IntPoly,
    degree: usize,
}

impl QuotientRing {
    pub fn new(modulus: IntPoly) -> Result<Self> {
        let degree = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::BadModulus),
        };
        if !modulus.is_monic() || modulus.constant_term().is_zero() {
            return Err(Error::BadModulus);
        }
        Ok(QuotientRing { modulus, degree })
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Canonical representative of `p` modulo the monic modulus.
    pub fn reduce(&self, p: &IntPoly) -> Element {
        let (_, r) = p
            .div_rem_monic(&self.modulus)
            .expect("modulus is monic by construction");
        self.element_from_poly_unchecked(r)
    }

    fn element_from_poly_unchecked(&self, p: IntPoly) -> Element {
        let mut coeffs = p.coeffs().to_vec();
        coeffs.resize(self.degree, BigInt::zero());
        Element { coeffs }
    }

    pub fn zero(&self) -> Element {
        Element {
            coeffs: vec![BigInt::zero(); self.degree],
        }
    }

    /// The base element: the residue class of `x`.
    pub fn base(&self) -> Element {
        self.reduce(&IntPoly::x())
    }

    pub fn from_int(&self, v: impl Into<BigInt>) -> Element {
        self.reduce(&IntPoly::constant(v))
    }

    pub fn element(&self, coeffs: Vec<BigInt>) -> Result<Element> {
        if coeffs.len() != self.degree {
            return Err(Error::InvalidInput(format!(
                "element needs exactly {} coefficients, got {}",
                self.degree,
                coeffs.len()
            )));
        }
        Ok(Element { coeffs })
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.reduce(&(&a.to_poly() * &b.to_poly()))
    }
}

/// A canonical residue: exactly `n` arbitrary-precision coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coeffs: Vec<BigInt>,
}

impl Element {
    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<BigInt>) -> Element {
        Element { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.clone())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.to_poly())
    }
}

/// Classification of a digit set by the multiset of its constant coefficients
/// modulo `|f(0)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DigitCheck {
    /// Exactly one digit per residue class.
    Irredundant,
    /// Every class covered, some more than once.
    Redundant,
    /// Some class missed.
    Incomplete,
}

impl fmt::Display for DigitCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitCheck::Irredundant => write!(f, "irredundant"),
            DigitCheck::Redundant => write!(f, "redundant"),
            DigitCheck::Incomplete => write!(f, "incomplete"),
        }
    }
}

/// Outcome of iterated backward division.
///
/// Digit indices are stored least significant first; indices rather than
/// values, so that redundant digit sets (as produced by projection) stay
/// representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Finite {
        digits: Vec<usize>,
    },
    Periodic {
        digits: Vec<usize>,
        preperiod: Vec<Element>,
        cycle: Vec<Element>,
    },
    Budget {
        digits: Vec<usize>,
    },
}

impl Expansion {
    pub fn digits(&self) -> &[usize] {
        match self {
            Expansion::Finite { digits }
            | Expansion::Periodic { digits, .. }
            | Expansion::Budget { digits } => digits,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Expansion::Finite { .. })
    }
}

/// A modulus together with an ordered digit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSystem {
    ring: QuotientRing,
    digits: Vec<Element>,
}

impl DigitSystem {
    pub fn new(ring: QuotientRing, digits: Vec<Element>) -> Self {
        DigitSystem { ring, digits }
    }

    pub fn from_polys(modulus: IntPoly, digit_polys: &[IntPoly]) -> Result<Self> {
        let ring = QuotientRing::new(modulus)?;
        let digits = digit_polys.iter().map(|p| ring.reduce(p)).collect();
        Ok(DigitSystem { ring, digits })
    }

    /// The classical digit system of `f`: digits `0, 1, ..., |f(0)| - 1`.
    pub fn classical(modulus: IntPoly) -> Result<Self> {
        let ring = QuotientRing::new(modulus)?;
        let m = ring.modulus().constant_term().abs();
        let m: u64 = (&m).try_into().map_err(|_| {
            Error::InvalidInput("constant term too large for a classical digit set".into())
        })?;
        let digits = (0..m).map(|v| ring.from_int(v)).collect();
        Ok(DigitSystem { ring, digits })
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn digits(&self) -> &[Element] {
        &self.digits
    }

    pub fn digit_check(&self) -> DigitCheck {
        let m = self.ring.modulus().constant_term().abs();
        let mut seen: HashMap<BigInt, usize> = HashMap::new();
        for d in &self.digits {
            let r = d.constant_term().mod_floor(&m);
            *seen.entry(r).or_insert(0) += 1;
        }
        if BigInt::from(seen.len()) < m {
            DigitCheck::Incomplete
        } else if seen.values().any(|&c| c > 1) {
            DigitCheck::Redundant
        } else {
            DigitCheck::Irredundant
        }
    }

    /// Precomputes the residue-to-digit lookup used by the dynamics.
    pub fn stepper(&self) -> Result<Stepper<'_>> {
        let check = self.digit_check();
        if check != DigitCheck::Irredundant {
            return Err(Error::NotIrredundant(check.to_string()));
        }
        let m = self.ring.modulus().constant_term().abs();
        let mut lookup = HashMap::new();
        for (i, d) in self.digits.iter().enumerate() {
            lookup.insert(d.constant_term().mod_floor(&m), i);
        }
        Ok(Stepper {
            ds: self,
            modulus_abs: m,
            lookup,
        })
    }

    /// One backward-division step. Needs an irredundant digit set.
    pub fn backstep(&self, e: &Element) -> Result<(usize, Element)> {
        Ok(self.stepper()?.step(e))
    }

    /// Iterates backward division from `e`, stopping at the zero state
    /// (`Finite`), at the first repeated state (`Periodic`, with the minimal
    /// cycle extracted), or after `budget` steps (`Budget`).
    pub fn expand(&self, e: &Element, budget: u64) -> Result<Expansion> {
        let stepper = self.stepper()?;
        let mut digits = Vec::new();
        let mut state = e.clone();
        let mut seen: HashMap<Element, usize> = HashMap::new();
        let mut states: Vec<Element> = Vec::new();
        for _ in 0..budget {
            if state.is_zero() {
                return Ok(Expansion::Finite { digits });
            }
            if let Some(&j) = seen.get(&state) {
                return Ok(Expansion::Periodic {
                    digits,
                    preperiod: states[..j].to_vec(),
                    cycle: states[j..].to_vec(),
                });
            }
            seen.insert(state.clone(), states.len());
            states.push(state.clone());
            let (idx, next) = stepper.step(&state);
            digits.push(idx);
            state = next;
        }
        if state.is_zero() {
            return Ok(Expansion::Finite { digits });
        }
        Ok(Expansion::Budget { digits })
    }

    /// Evaluates a digit-index string: the sum of `digit[i] * X^i` reduced
    /// modulo the modulus.
    pub fn evaluate(&self, indices: &[usize]) -> Result<Element> {
        let mut acc = IntPoly::zero();
        for (i, &idx) in indices.iter().enumerate() {
            let d = self
                .digits
                .get(idx)
                .ok_or(Error::DigitIndexOutOfRange(idx))?;
            acc = &acc + &d.to_poly().shift_up(i);
        }
        Ok(self.ring.reduce(&acc))
    }

    /// Length of the shortest zero expansion: 1 when 0 is a digit, otherwise
    /// the length of the backward orbit of 0 back to itself, or `None` when
    /// that orbit falls into a cycle avoiding 0.
    pub fn zero_expansion_length(&self, budget: u64) -> Result<Option<u64>> {
        if self.digits.iter().any(Element::is_zero) {
            return Ok(Some(1));
        }
        let stepper = self.stepper()?;
        let zero = self.ring.zero();
        let mut state = {
            let (_, next) = stepper.step(&zero);
            next
        };
        let mut seen = HashMap::new();
        for step in 1..=budget {
            if state == zero {
                return Ok(Some(step));
            }
            if seen.contains_key(&state) {
                return Ok(None);
            }
            seen.insert(state.clone(), step);
            let (_, next) = stepper.step(&state);
            state = next;
        }
        Err(Error::BudgetExhausted(budget))
    }

    /// Reduces every digit modulo a monic factor of the modulus, preserving
    /// list order and duplicates. The result is typically redundant.
    pub fn project(&self, factor: &IntPoly) -> Result<DigitSystem> {
        let (_, r) = self
            .ring
            .modulus()
            .div_rem_monic(factor)
            .map_err(|_| Error::FactorDoesNotDivide)?;
        if !r.is_zero() {
            return Err(Error::FactorDoesNotDivide);
        }
        let ring = QuotientRing::new(factor.clone())?;
        let digits = self.digits.iter().map(|d| ring.reduce(&d.to_poly())).collect();
        Ok(DigitSystem { ring, digits })
    }

    pub fn to_file(&self) -> DigitSystemFile {
        DigitSystemFile {
            modulus: self.ring.modulus().to_string(),
            digits: self.digits.iter().map(|d| d.to_string()).collect(),
        }
    }

    pub fn from_file(file: &DigitSystemFile) -> Result<Self> {
        let modulus = IntPoly::parse(&file.modulus)?;
        let digits = file
            .digits
            .iter()
            .map(|s| IntPoly::parse(s))
            .collect::<Result<Vec<_>>>()?;
        DigitSystem::from_polys(modulus, &digits)
    }
}

/// On-disk digit system: `{ "modulus": "<poly>", "digits": ["<poly>", ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DigitSystemFile {
    pub modulus: String,
    pub digits: Vec<String>,
}

/// Backward-division step machine for an irredundant digit system.
pub struct Stepper<'a> {
    ds: &'a DigitSystem,
    modulus_abs: BigInt,
    lookup: HashMap<BigInt, usize>,
}

impl Stepper<'_> {
    pub fn digit_index_for(&self, e: &Element) -> usize {
        self.lookup[&e.constant_term().mod_floor(&self.modulus_abs)]
    }

    /// Returns the matching digit index and the state `(e - d) / x` with the
    /// exact identity `x * e' + d = e (mod f)`.
    pub fn step(&self, e: &Element) -> (usize, Element) {
        let idx = self.digit_index_for(e);
        let d = &self.ds.digits[idx];
        let f = self.ds.ring.modulus();
        let n = self.ds.ring.degree();
        let q = (e.constant_term() - d.constant_term()) / f.constant_term();
        // e - d - q*f is divisible by x; shifting down gives the next state
        let mut coeffs = Vec::with_capacity(n);
        for i in 1..n {
            coeffs.push(&e.coeffs[i] - &d.coeffs[i] - &q * f.coeff(i));
        }
        coeffs.push(-&q * f.coeff(n));
        (idx, Element { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn ds(modulus: &str, digits: &[&str]) -> DigitSystem {
        let polys: Vec<IntPoly> = digits.iter().map(|s| p(s)).collect();
        DigitSystem::from_polys(p(modulus), &polys).unwrap()
    }

    #[test]
    fn digit_check_examples() {
        let six = ["0", "1", "2", "3", "4", "5"];
        assert_eq!(ds("x^2+5x+6", &six).digit_check(), DigitCheck::Irredundant);
        assert_eq!(ds("x+2", &six).digit_check(), DigitCheck::Redundant);
        assert_eq!(ds("x+3", &["0", "1"]).digit_check(), DigitCheck::Incomplete);
    }

    #[test]
    fn backstep_examples() {
        let sys = ds("x+2", &["0", "1"]);
        let (i, e) = sys.backstep(&sys.ring().from_int(3)).unwrap();
        assert_eq!(i, 1);
        assert_eq!(e, sys.ring().from_int(-1));

        let (i, e) = sys.backstep(&sys.ring().zero()).unwrap();
        assert_eq!(i, 0);
        assert!(e.is_zero());

        let sys = ds("x+3", &["-3", "1", "-1"]);
        let (i, e) = sys.backstep(&sys.ring().zero()).unwrap();
        assert_eq!(i, 0); // the digit -3
        assert_eq!(e, sys.ring().from_int(-1));
    }

    #[test]
    fn backstep_soundness() {
        // x * e' + d = e (mod f) for a spread of states and systems
        for sys in [
            ds("x^2+5x+6", &["0", "1", "2", "3", "4", "5"]),
            ds("x+3", &["-3", "1", "-1"]),
            ds("x^2+8x+15", &["0", "1", "2", "-12", "4", "5", "-9", "7", "-7", "-6", "10", "-4", "-3", "-2", "-1"]),
        ] {
            let n = sys.ring().degree();
            for a in -7i64..=7 {
                for b in -7i64..=7 {
                    let coeffs: Vec<BigInt> = if n == 1 {
                        vec![BigInt::from(a)]
                    } else {
                        vec![BigInt::from(a), BigInt::from(b)]
                    };
                    let e = sys.ring().element(coeffs).unwrap();
                    let (idx, next) = sys.backstep(&e).unwrap();
                    let lhs = sys
                        .ring()
                        .reduce(&(&next.to_poly().shift_up(1) + &sys.digits()[idx].to_poly()));
                    assert_eq!(lhs, e);
                    if n == 1 {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn expand_examples() {
        let sys = ds("x+2", &["0", "1"]);
        let e = sys.ring().from_int(3);
        match sys.expand(&e, 100).unwrap() {
            Expansion::Finite { digits } => assert_eq!(digits, vec![1, 1, 1]),
            other => panic!("expected finite, got {other:?}"),
        }
        match sys.expand(&sys.ring().zero(), 100).unwrap() {
            Expansion::Finite { digits } => assert!(digits.is_empty()),
            other => panic!("expected finite, got {other:?}"),
        }
    }

    #[test]
    fn expand_matches_worked_two_digit_example() {
        // expansion of 37X - 55 modulo x^2+8x+15 over the merged digit set
        let sys = ds(
            "x^2+8x+15",
            &["x", "1", "x+2", "-3x-12", "x+4", "2x+5", "-2x-9", "2x+7", "-2x-7", "-x-6",
              "3x+10", "-x-4", "-3", "-x-2", "-1"],
        );
        let e = sys
            .ring()
            .element(vec![BigInt::from(-55), BigInt::from(37)])
            .unwrap();
        let exp = sys.expand(&e, 1000).unwrap();
        let Expansion::Finite { digits } = &exp else {
            panic!("expected finite, got {exp:?}");
        };
        let values: Vec<String> = digits
            .iter()
            .map(|&i| sys.digits()[i].to_string())
            .collect();
        assert_eq!(values, vec!["2x+5", "2x+7", "x", "-x-4", "3x+10", "x+4"]);
        assert_eq!(sys.evaluate(digits).unwrap(), e);
    }

    #[test]
    fn evaluate_examples() {
        let sys = ds("x+3", &["0", "1", "2"]);
        assert_eq!(sys.evaluate(&[]).unwrap(), sys.ring().zero());
        assert_eq!(sys.evaluate(&[1, 2]).unwrap(), sys.ring().from_int(-5));
        assert!(sys.evaluate(&[7]).is_err());
    }

    #[test]
    fn zero_expansion_lengths() {
        assert_eq!(
            ds("x+3", &["-3", "1", "-1"]).zero_expansion_length(100).unwrap(),
            Some(2)
        );
        assert_eq!(
            ds("x+2", &["0", "1"]).zero_expansion_length(100).unwrap(),
            Some(1)
        );
        assert_eq!(
            ds("x+5", &["-5", "1", "-3", "3", "-1"])
                .zero_expansion_length(100)
                .unwrap(),
            Some(2)
        );
        // base 3 with digits {0,1,2}: the orbit of 0 stays put only with the
        // zero digit; a zero-free variant cycles without returning
        assert_eq!(
            ds("x-3", &["3", "1", "2"]).zero_expansion_length(100).unwrap(),
            None
        );
    }

    #[test]
    fn zero_orbit_purity() {
        // applying backstep L times to 0 returns exactly to 0 and the digits
        // evaluate to 0
        for sys in [
            ds("x+3", &["-3", "1", "-1"]),
            ds("x+5", &["-5", "1", "-3", "3", "-1"]),
        ] {
            let l = sys.zero_expansion_length(100).unwrap().unwrap();
            let stepper = sys.stepper().unwrap();
            let mut state = sys.ring().zero();
            let mut digits = Vec::new();
            for _ in 0..l {
                let (i, next) = stepper.step(&state);
                digits.push(i);
                state = next;
            }
            assert!(state.is_zero());
            assert!(sys.evaluate(&digits).unwrap().is_zero());
        }
    }

    #[test]
    fn projection_examples() {
        let six = ["0", "1", "2", "3", "4", "5"];
        let sys = ds("x^2+5x+6", &six);
        let proj = sys.project(&p("x+2")).unwrap();
        assert_eq!(proj.ring().modulus(), &p("x+2"));
        let consts: Vec<BigInt> = proj.digits().iter().map(|d| d.constant_term().clone()).collect();
        assert_eq!(consts, (0..6).map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(proj.digit_check(), DigitCheck::Redundant);

        let same = sys.project(&p("x^2+5x+6")).unwrap();
        assert_eq!(same, sys);

        let merged = ds("x^2+5x+6", &["0", "x+3", "-x-2", "1", "-2x-4", "-x-1"]);
        let proj = merged.project(&p("x+2")).unwrap();
        let consts: Vec<i64> = proj
            .digits()
            .iter()
            .map(|d| i64::try_from(d.constant_term()).unwrap())
            .collect();
        assert_eq!(consts, vec![0, 1, 0, 1, 0, 1]);

        assert!(sys.project(&p("x+7")).is_err());
    }

    #[test]
    fn expand_round_trip_exhaustive_box() {
        let sys = ds("x^2+5x+6", &["0", "1", "2", "3", "4", "5"]);
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let e = sys
                    .ring()
                    .element(vec![BigInt::from(a), BigInt::from(b)])
                    .unwrap();
                match sys.expand(&e, 10_000).unwrap() {
                    Expansion::Finite { digits } => {
                        assert_eq!(sys.evaluate(&digits).unwrap(), e);
                    }
                    other => panic!("({a},{b}) did not expand: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn unique_evaluation_of_short_strings() {
        // distinct digit strings (trailing zero digits stripped) evaluate to
        // distinct elements in an irredundant system
        let sys = ds("x+2", &["0", "1"]);
        let mut seen: HashMap<Element, Vec<usize>> = HashMap::new();
        for len in 0..=6usize {
            for mask in 0..(1u32 << len) {
                let mut digits: Vec<usize> =
                    (0..len).map(|i| ((mask >> i) & 1) as usize).collect();
                while digits.last() == Some(&0) {
                    digits.pop();
                }
                let v = sys.evaluate(&digits).unwrap();
                if let Some(prev) = seen.get(&v) {
                    assert_eq!(prev, &digits, "collision at value {v}");
                } else {
                    seen.insert(v, digits);
                }
            }
        }
    }

    #[test]
    fn periodic_expansion_detects_minimal_cycle() {
        // base 3 (positive): -1 -> -1 immediately, a fixed point
        let sys = ds("x-3", &["0", "1", "2"]);
        let e = sys.ring().from_int(-1);
        match sys.expand(&e, 100).unwrap() {
            Expansion::Periodic { preperiod, cycle, .. } => {
                assert!(preperiod.is_empty());
                assert_eq!(cycle.len(), 1);
                assert_eq!(cycle[0], e);
            }
            other => panic!("expected periodic, got {other:?}"),
        }
    }

    #[test]
    fn budget_is_reported() {
        let sys = ds("x-3", &["0", "1", "2"]);
        let e = sys.ring().from_int(-5);
        assert!(matches!(
            sys.expand(&e, 1).unwrap(),
            Expansion::Budget { .. }
        ));
    }

    #[test]
    fn file_round_trip() {
        let sys = ds("x^2+8x+15", &["x", "1", "-3"]);
        let file = sys.to_file();
        let json = serde_json::to_string(&file).unwrap();
        let back: DigitSystemFile = serde_json::from_str(&json).unwrap();
        assert_eq!(DigitSystem::from_file(&back).unwrap(), sys);
    }
}
