//! Deciding the Finite Expansion Property.
//!
//! The decision procedure is a witness-set closure: the smallest set `E`
//! containing the start states and closed under `e -> T(e + d)` for every
//! digit `d`, where `T` is the backward-division state map. This closure rule
//! is exactly what makes "`a` expands implies `a + e` expands" inductive, so
//! once every witness element expands to zero, every element of the ring does
//! (with the `UnitsOnly` start, every integer does). The modulus must be
//! expanding, which is checked exactly up front; a configurable state cap
//! guards the closure against a non-expanding modulus slipping through and
//! aborts with an inconclusive verdict rather than looping.
//!
//! Closure and orbit runs prefer an `i64` engine and fall back to
//! arbitrary-precision arithmetic on any overflow, so verdicts never depend
//! on machine word size.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::quotient::{DigitCheck, DigitSystem, Element};

/// Start set for the witness closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartSet {
    /// `0` and `±X^i` for `0 <= i < n`: certifies the whole ring.
    Generators,
    /// `0` and `±1`: certifies only that every integer expands.
    UnitsOnly,
}

/// Caps for the closure and orbit phases.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum number of witness states before aborting as inconclusive.
    pub max_states: usize,
    /// Total backward-division steps allowed across all orbit checks.
    pub orbit_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 2_000_000,
            orbit_budget: 50_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FepVerdict {
    Fep,
    NotFep,
    Inconclusive,
}

/// A nonzero periodic orbit: states with the digit chosen at each state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub states: Vec<Element>,
    pub digits: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub witness_size: usize,
    pub verdict: FepVerdict,
    /// All distinct nonzero cycles reached from witness elements.
    pub cycles: Vec<Cycle>,
    /// Shortest zero expansion length, present when the verdict is `Fep`.
    pub zero_expansion_length: Option<u64>,
    pub inconclusive_reason: Option<String>,
}

/// Computes the witness closure, sorted lexicographically by coefficients.
pub fn witness_closure(
    ds: &DigitSystem,
    start: StartSet,
    limits: &Limits,
) -> Result<Vec<Element>> {
    require_irredundant(ds)?;
    if !ds.ring().modulus().is_expanding()? {
        return Err(Error::Inconclusive("modulus is not expanding".into()));
    }
    if let Some(fast) = FastEngine::try_new(ds) {
        match closure(&fast, start, limits) {
            Ok(mut states) => {
                states.sort();
                return Ok(states.iter().map(|s| fast.to_element(s)).collect());
            }
            Err(RunErr::Overflow) => {}
            Err(RunErr::Cap(n)) => return Err(Error::Inconclusive(cap_msg(n))),
            Err(RunErr::Budget(b)) => return Err(Error::BudgetExhausted(b)),
        }
    }
    let big = BigEngine::new(ds)?;
    match closure(&big, start, limits) {
        Ok(mut states) => {
            states.sort();
            Ok(states)
        }
        Err(RunErr::Cap(n)) => Err(Error::Inconclusive(cap_msg(n))),
        Err(RunErr::Budget(b)) => Err(Error::BudgetExhausted(b)),
        Err(RunErr::Overflow) => unreachable!("big engine does not overflow"),
    }
}

/// Runs the witness-set criterion: closure, then the backward orbit of every
/// witness element. `Fep` when all orbits reach zero; otherwise all distinct
/// nonzero cycles are collected.
pub fn decide_fep(ds: &DigitSystem, start: StartSet, limits: &Limits) -> Result<WitnessReport> {
    require_irredundant(ds)?;
    if !ds.ring().modulus().is_expanding()? {
        return Ok(WitnessReport {
            witness_size: 0,
            verdict: FepVerdict::Inconclusive,
            cycles: Vec::new(),
            zero_expansion_length: None,
            inconclusive_reason: Some("modulus is not expanding".into()),
        });
    }
    if let Some(fast) = FastEngine::try_new(ds) {
        match pipeline(&fast, start, limits) {
            Ok(out) => return finish(ds, out, limits),
            Err(RunErr::Overflow) => {}
            Err(RunErr::Cap(n)) => return Ok(inconclusive(n)),
            Err(RunErr::Budget(b)) => return Err(Error::BudgetExhausted(b)),
        }
    }
    let big = BigEngine::new(ds)?;
    match pipeline(&big, start, limits) {
        Ok(out) => finish(ds, out, limits),
        Err(RunErr::Cap(n)) => Ok(inconclusive(n)),
        Err(RunErr::Budget(b)) => Err(Error::BudgetExhausted(b)),
        Err(RunErr::Overflow) => unreachable!("big engine does not overflow"),
    }
}

/// Classical CNS predicate: the digit system of `f` with digits
/// `0, ..., |f(0)| - 1` has the finite expansion property.
///
/// Rejects immediately when `f` is not expanding or provably has a positive
/// real root; otherwise the witness criterion decides.
pub fn is_cns(f: &IntPoly) -> Result<bool> {
    is_cns_with(f, &Limits::default())
}

pub fn is_cns_with(f: &IntPoly, limits: &Limits) -> Result<bool> {
    let ds = DigitSystem::classical(f.clone())?;
    if !f.is_expanding()? {
        return Ok(false);
    }
    if has_positive_real_root_definite(f) {
        return Ok(false);
    }
    match decide_fep(&ds, StartSet::Generators, limits)? {
        r if r.verdict == FepVerdict::Fep => Ok(true),
        r if r.verdict == FepVerdict::NotFep => Ok(false),
        r => Err(Error::Inconclusive(
            r.inconclusive_reason.unwrap_or_else(|| "witness run aborted".into()),
        )),
    }
}

/// Definite positive-real-root tests: zero sign variations proves absence,
/// an odd variation count or a nonpositive integer sample proves presence.
/// An even positive count without an integer witness stays undecided and the
/// caller falls through to the full witness decision, which subsumes it.
fn has_positive_real_root_definite(f: &IntPoly) -> bool {
    let vars = f.sign_variations();
    if vars == 0 {
        return false;
    }
    if vars % 2 == 1 {
        return true;
    }
    let bound: BigInt = f
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(BigInt::zero)
        + 1;
    let mut t = BigInt::one();
    while t <= bound {
        if f.eval(&t).sign() != num_bigint::Sign::Plus {
            return true;
        }
        t += 1;
    }
    false
}

/// Monotone-coefficient sufficient condition for the CNS property: a strict
/// chain `c_0 > c_1 > ... > c_(n-1) > c_n = 1` with `c_0 >= 2` for monic
/// `f = x^n + c_(n-1) x^(n-1) + ... + c_0`. Sufficient, never necessary.
///
/// Strictness matters: with weak inequalities the condition admits reducible
/// polynomials with a root on the unit circle, such as
/// `(x+1)(x^2+2) = x^3+x^2+2x+2`, which are not CNS. The strict chain keeps
/// every root strictly outside the unit disk (Enestroem-Kakeya) and is the
/// form the monotone criterion is calibrated to.
pub fn kovacs_sufficient(f: &IntPoly) -> Result<bool> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::ConstantPolynomial),
    };
    if !f.is_monic() {
        return Err(Error::InvalidInput("polynomial must be monic".into()));
    }
    if f.coeff(0) < BigInt::from(2) {
        return Ok(false);
    }
    for k in 0..n {
        if f.coeff(k) <= f.coeff(k + 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_irredundant(ds: &DigitSystem) -> Result<()> {
    let check = ds.digit_check();
    if check != DigitCheck::Irredundant {
        return Err(Error::NotIrredundant(check.to_string()));
    }
    Ok(())
}

fn cap_msg(n: usize) -> String {
    format!("witness state cap of {n} exceeded")
}

fn inconclusive(n: usize) -> WitnessReport {
    WitnessReport {
        witness_size: n,
        verdict: FepVerdict::Inconclusive,
        cycles: Vec::new(),
        zero_expansion_length: None,
        inconclusive_reason: Some(cap_msg(n)),
    }
}

fn finish(ds: &DigitSystem, out: PipelineOut, limits: &Limits) -> Result<WitnessReport> {
    let verdict = if out.all_expand {
        FepVerdict::Fep
    } else {
        FepVerdict::NotFep
    };
    let zero_expansion_length = if out.all_expand {
        ds.zero_expansion_length(limits.orbit_budget)?
    } else {
        None
    };
    Ok(WitnessReport {
        witness_size: out.witness_size,
        verdict,
        cycles: out.cycles,
        zero_expansion_length,
        inconclusive_reason: None,
    })
}

enum RunErr {
    Overflow,
    Cap(usize),
    Budget(u64),
}

struct PipelineOut {
    witness_size: usize,
    all_expand: bool,
    cycles: Vec<Cycle>,
}

/// Backward-division dynamics on coefficient vectors, abstracted over the
/// coefficient representation.
trait Engine {
    type State: Clone + Eq + Hash + Ord;
    fn digit_count(&self) -> usize;
    fn start_states(&self, start: StartSet) -> Vec<Self::State>;
    fn is_zero(&self, s: &Self::State) -> bool;
    /// `T(s + d_j)`; `None` signals arithmetic overflow.
    fn closure_step(&self, s: &Self::State, j: usize) -> Option<Self::State>;
    /// One backstep of `s`: the digit index and the next state.
    fn orbit_step(&self, s: &Self::State) -> Option<(usize, Self::State)>;
    fn to_element(&self, s: &Self::State) -> Element;
}

fn closure<E: Engine>(
    engine: &E,
    start: StartSet,
    limits: &Limits,
) -> std::result::Result<Vec<E::State>, RunErr> {
    let mut set: HashSet<E::State> = HashSet::new();
    let mut work: Vec<E::State> = Vec::new();
    for s in engine.start_states(start) {
        if set.insert(s.clone()) {
            work.push(s);
        }
    }
    while let Some(e) = work.pop() {
        for j in 0..engine.digit_count() {
            let next = engine.closure_step(&e, j).ok_or(RunErr::Overflow)?;
            if set.insert(next.clone()) {
                if set.len() > limits.max_states {
                    return Err(RunErr::Cap(limits.max_states));
                }
                work.push(next);
            }
        }
    }
    Ok(set.into_iter().collect())
}

fn pipeline<E: Engine>(
    engine: &E,
    start: StartSet,
    limits: &Limits,
) -> std::result::Result<PipelineOut, RunErr> {
    let mut witnesses = closure(engine, start, limits)?;
    witnesses.sort();
    let mut status: HashMap<E::State, bool> = HashMap::new();
    let mut cycles: Vec<Cycle> = Vec::new();
    let mut cycle_keys: HashSet<Vec<E::State>> = HashSet::new();
    let mut steps = 0u64;
    let mut all_expand = true;

    for w in &witnesses {
        let mut path: Vec<(E::State, usize)> = Vec::new();
        let mut pos: HashMap<E::State, usize> = HashMap::new();
        let mut cur = w.clone();
        let expands = loop {
            if engine.is_zero(&cur) {
                break true;
            }
            if let Some(&known) = status.get(&cur) {
                break known;
            }
            if let Some(&i) = pos.get(&cur) {
                record_cycle(engine, &path[i..], &mut cycles, &mut cycle_keys);
                break false;
            }
            steps += 1;
            if steps > limits.orbit_budget {
                return Err(RunErr::Budget(limits.orbit_budget));
            }
            let (digit, next) = engine.orbit_step(&cur).ok_or(RunErr::Overflow)?;
            pos.insert(cur.clone(), path.len());
            path.push((cur, digit));
            cur = next;
        };
        all_expand &= expands;
        for (s, _) in path {
            status.insert(s, expands);
        }
    }

    Ok(PipelineOut {
        witness_size: witnesses.len(),
        all_expand,
        cycles,
    })
}

/// Canonicalizes a cycle by rotating its minimal state to the front, and
/// records it if new.
fn record_cycle<E: Engine>(
    engine: &E,
    raw: &[(E::State, usize)],
    cycles: &mut Vec<Cycle>,
    keys: &mut HashSet<Vec<E::State>>,
) {
    let min_idx = raw
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.0.cmp(&b.0))
        .map(|(i, _)| i)
        .expect("cycle is nonempty");
    let rotated: Vec<(E::State, usize)> = raw[min_idx..]
        .iter()
        .chain(raw[..min_idx].iter())
        .cloned()
        .collect();
    let key: Vec<E::State> = rotated.iter().map(|(s, _)| s.clone()).collect();
    if keys.insert(key) {
        cycles.push(Cycle {
            states: rotated.iter().map(|(s, _)| engine.to_element(s)).collect(),
            digits: rotated.iter().map(|(_, d)| *d).collect(),
        });
    }
}

/// Machine-word engine; any overflow aborts the run so the caller can retry
/// with big integers.
struct FastEngine {
    n: usize,
    f: Vec<i64>,
    f0_abs: i64,
    digits: Vec<Vec<i64>>,
    lookup: Vec<usize>,
}

impl FastEngine {
    fn try_new(ds: &DigitSystem) -> Option<FastEngine> {
        let n = ds.ring().degree();
        let f: Vec<i64> = ds
            .ring()
            .modulus()
            .coeffs()
            .iter()
            .map(i64::try_from)
            .collect::<std::result::Result<_, _>>()
            .ok()?;
        let f0_abs = f[0].checked_abs()?;
        if f0_abs == 0 || f0_abs > 100_000_000 {
            return None;
        }
        let mut digits = Vec::with_capacity(ds.digits().len());
        for d in ds.digits() {
            let row: Vec<i64> = d
                .coeffs()
                .iter()
                .map(i64::try_from)
                .collect::<std::result::Result<_, _>>()
                .ok()?;
            digits.push(row);
        }
        let mut lookup = vec![usize::MAX; f0_abs as usize];
        for (i, d) in digits.iter().enumerate() {
            lookup[d[0].rem_euclid(f0_abs) as usize] = i;
        }
        if lookup.contains(&usize::MAX) {
            return None;
        }
        Some(FastEngine {
            n,
            f,
            f0_abs,
            digits,
            lookup,
        })
    }

    fn backstep(&self, v: &[i128]) -> Option<(usize, Vec<i64>)> {
        let idx = self.lookup[v[0].rem_euclid(self.f0_abs as i128) as usize];
        let d = &self.digits[idx];
        let q = (v[0] - d[0] as i128) / self.f[0] as i128;
        let mut out = Vec::with_capacity(self.n);
        for i in 1..self.n {
            let w = v[i] - d[i] as i128 - q * self.f[i] as i128;
            out.push(i64::try_from(w).ok()?);
        }
        out.push(i64::try_from(-q).ok()?);
        Some((idx, out))
    }
}

impl Engine for FastEngine {
    type State = Vec<i64>;

    fn digit_count(&self) -> usize {
        self.digits.len()
    }

    fn start_states(&self, start: StartSet) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.n]];
        let top = match start {
            StartSet::Generators => self.n,
            StartSet::UnitsOnly => 1,
        };
        for i in 0..top {
            for sign in [1i64, -1] {
                let mut s = vec![0; self.n];
                s[i] = sign;
                out.push(s);
            }
        }
        out
    }

    fn is_zero(&self, s: &Vec<i64>) -> bool {
        s.iter().all(|&c| c == 0)
    }

    fn closure_step(&self, s: &Vec<i64>, j: usize) -> Option<Vec<i64>> {
        let d = &self.digits[j];
        let v: Vec<i128> = s
            .iter()
            .zip(d.iter())
            .map(|(&a, &b)| a as i128 + b as i128)
            .collect();
        self.backstep(&v).map(|(_, next)| next)
    }

    fn orbit_step(&self, s: &Vec<i64>) -> Option<(usize, Vec<i64>)> {
        let v: Vec<i128> = s.iter().map(|&a| a as i128).collect();
        self.backstep(&v)
    }

    fn to_element(&self, s: &Vec<i64>) -> Element {
        Element::from_coeffs_unchecked(s.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Arbitrary-precision engine used as the overflow fallback.
struct BigEngine<'a> {
    ds: &'a DigitSystem,
    stepper: crate::quotient::Stepper<'a>,
}

impl<'a> BigEngine<'a> {
    fn new(ds: &'a DigitSystem) -> Result<BigEngine<'a>> {
        Ok(BigEngine {
            ds,
            stepper: ds.stepper()?,
        })
    }
}

impl Engine for BigEngine<'_> {
    type State = Element;

    fn digit_count(&self) -> usize {
        self.ds.digits().len()
    }

    fn start_states(&self, start: StartSet) -> Vec<Element> {
        let ring = self.ds.ring();
        let n = ring.degree();
        let mut out = vec![ring.zero()];
        let top = match start {
            StartSet::Generators => n,
            StartSet::UnitsOnly => 1,
        };
        for i in 0..top {
            for sign in [1i64, -1] {
                let mut coeffs = vec![BigInt::zero(); n];
                coeffs[i] = BigInt::from(sign);
                out.push(ring.element(coeffs).expect("length matches"));
            }
        }
        out
    }

    fn is_zero(&self, s: &Element) -> bool {
        s.is_zero()
    }

    fn closure_step(&self, s: &Element, j: usize) -> Option<Element> {
        let sum = self.ds.ring().add(s, &self.ds.digits()[j]);
        Some(self.stepper.step(&sum).1)
    }

    fn orbit_step(&self, s: &Element) -> Option<(usize, Element)> {
        Some(self.stepper.step(s))
    }

    fn to_element(&self, s: &Element) -> Element {
        s.clone()
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
    fn closure_of_binary_system_is_tiny() {
        let sys = ds("x+2", &["0", "1"]);
        let e = witness_closure(&sys, StartSet::Generators, &Limits::default()).unwrap();
        let consts: Vec<i64> = e
            .iter()
            .map(|x| i64::try_from(x.constant_term()).unwrap())
            .collect();
        assert_eq!(consts, vec![-1, 0, 1]);
    }

    #[test]
    fn closure_contains_start_states_and_is_stable() {
        let sys = DigitSystem::classical(p("x^2+5x+6")).unwrap();
        let e = witness_closure(&sys, StartSet::Generators, &Limits::default()).unwrap();
        let ring = sys.ring();
        for s in [
            ring.from_int(1),
            ring.from_int(-1),
            ring.base(),
            ring.reduce(&-&IntPoly::x()),
        ] {
            assert!(e.contains(&s));
        }
        // re-applying the closure step yields nothing new
        let stepper = sys.stepper().unwrap();
        let set: std::collections::HashSet<_> = e.iter().cloned().collect();
        for s in &e {
            for d in sys.digits() {
                let next = stepper.step(&ring.add(s, d)).1;
                assert!(set.contains(&next));
            }
        }
    }

    #[test]
    fn fep_verdicts_on_small_systems() {
        let sys = DigitSystem::classical(p("x^2+5x+6")).unwrap();
        let rep = decide_fep(&sys, StartSet::Generators, &Limits::default()).unwrap();
        assert_eq!(rep.verdict, FepVerdict::Fep);
        assert_eq!(rep.zero_expansion_length, Some(1));
        assert!(rep.cycles.is_empty());

        // merged digits for x^2+8x+15
        let sys = ds(
            "x^2+8x+15",
            &["x", "1", "x+2", "-3x-12", "x+4", "2x+5", "-2x-9", "2x+7", "-2x-7", "-x-6",
              "3x+10", "-x-4", "-3", "-x-2", "-1"],
        );
        let rep = decide_fep(&sys, StartSet::Generators, &Limits::default()).unwrap();
        assert_eq!(rep.verdict, FepVerdict::Fep);
        assert_eq!(rep.zero_expansion_length, Some(2));
    }

    #[test]
    fn not_fep_reports_verified_cycles() {
        // base 2 with digits {0,1}: negative integers cannot expand
        let sys = DigitSystem::classical(p("x-2")).unwrap();
        let rep = decide_fep(&sys, StartSet::Generators, &Limits::default()).unwrap();
        assert_eq!(rep.verdict, FepVerdict::NotFep);
        assert!(!rep.cycles.is_empty());
        // every reported cycle is closed under backstep with nonzero states
        let stepper = sys.stepper().unwrap();
        for cycle in &rep.cycles {
            for (i, s) in cycle.states.iter().enumerate() {
                assert!(!s.is_zero());
                let (d, next) = stepper.step(s);
                assert_eq!(d, cycle.digits[i]);
                assert_eq!(&next, &cycle.states[(i + 1) % cycle.states.len()]);
            }
        }
    }

    #[test]
    fn non_expanding_modulus_is_inconclusive() {
        let sys = DigitSystem::classical(p("x^2+3x+1")).unwrap();
        assert!(!p("x^2+3x+1").is_expanding().unwrap());
        let rep = decide_fep(&sys, StartSet::Generators, &Limits::default()).unwrap();
        assert_eq!(rep.verdict, FepVerdict::Inconclusive);
    }

    #[test]
    fn is_cns_examples() {
        let cubic = &(&p("x+2") * &p("x+3")) * &p("x+5");
        assert_eq!(cubic, p("x^3+10x^2+31x+30"));
        assert!(is_cns(&cubic).unwrap());
        assert!(is_cns(&p("x^2+5x+6")).unwrap());
        assert!(!is_cns(&p("x-2")).unwrap());
    }

    #[test]
    fn units_only_verdict_follows_generators_verdict() {
        for f in ["x^2+5x+6", "x^2+8x+15", "x^3+10x^2+31x+30"] {
            let sys = DigitSystem::classical(p(f)).unwrap();
            let gens = decide_fep(&sys, StartSet::Generators, &Limits::default()).unwrap();
            if gens.verdict == FepVerdict::Fep {
                let units = decide_fep(&sys, StartSet::UnitsOnly, &Limits::default()).unwrap();
                assert_eq!(units.verdict, FepVerdict::Fep);
                assert!(units.witness_size <= gens.witness_size);
            }
        }
    }

    #[test]
    fn kovacs_examples() {
        assert!(kovacs_sufficient(&p("x^2+5x+6")).unwrap());
        assert!(!kovacs_sufficient(&p("x^2+2x+1")).unwrap());
        assert!(!kovacs_sufficient(&p("x^2+5x+4")).unwrap());
        // strictness: a weak chain admits (x+1)(x^2+2), which is not CNS
        assert!(!kovacs_sufficient(&p("x^3+x^2+2x+2")).unwrap());
        assert!(!kovacs_sufficient(&p("x^2+2x+2")).unwrap());
        assert!(kovacs_sufficient(&p("x^2+3x+4")).unwrap());
        assert!(kovacs_sufficient(&p("x+2")).unwrap());
        assert!(kovacs_sufficient(&IntPoly::constant(7)).is_err());
    }

    #[test]
    fn kovacs_implies_cns_on_small_monic_polynomials() {
        // quadratics and a slice of cubics with coefficients in [1, 12]
        for c0 in 1i64..=12 {
            for c1 in 1i64..=12 {
                let f = IntPoly::from_coeffs(vec![c0, c1, 1]);
                if kovacs_sufficient(&f).unwrap() {
                    assert!(is_cns(&f).unwrap(), "kovacs held but CNS failed for {f}");
                }
                for c2 in 1i64..=6 {
                    let f = IntPoly::from_coeffs(vec![c0, c1, c2, 1]);
                    if kovacs_sufficient(&f).unwrap() {
                        assert!(is_cns(&f).unwrap(), "kovacs held but CNS failed for {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn fast_and_big_engines_agree() {
        let sys = ds("x^2+8x+15", &["x", "1", "x+2", "-3x-12", "x+4", "2x+5", "-2x-9",
            "2x+7", "-2x-7", "-x-6", "3x+10", "-x-4", "-3", "-x-2", "-1"]);
        let limits = Limits::default();
        let fast = FastEngine::try_new(&sys).unwrap();
        let big = BigEngine::new(&sys).unwrap();
        let a = pipeline(&fast, StartSet::Generators, &limits)
            .unwrap_or_else(|_| panic!("fast engine failed"));
        let b = pipeline(&big, StartSet::Generators, &limits)
            .unwrap_or_else(|_| panic!("big engine failed"));
        assert_eq!(a.witness_size, b.witness_size);
        assert_eq!(a.all_expand, b.all_expand);
    }
}
