//! The Chinese-Remainder map between `Z[x]/(f1 f2)` and the product of the
//! factor rings, its integral inverse, fibred-product membership, and the
//! merging of two digit systems into one modulo `f1 f2`.
//!
//! The merge succeeds as an irredundant digit system iff (i) both inputs are
//! irredundant digit systems and (ii) all digits of both systems share one
//! residue class modulo `(f1, f2)`. Given finiteness of `Z[x]/(f1, f2)`, the
//! merged system has the finite expansion property iff additionally (iii)
//! both factors have it, with zero expansion lengths `L1`, `L2`, and (iv)
//! `gcd(L1, L2)` equals the period `S(d~)` of the common digit residue.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cns::{self, FepVerdict, Limits, StartSet};
use crate::error::{Error, Result};
use crate::gb_ideal::{strong_gb, FiniteQuotient};
use crate::hnf::solve_left;
use crate::intpoly::IntPoly;
use crate::quotient::{DigitCheck, DigitSystem, Element, QuotientRing};

/// Componentwise reduction of `a` modulo two monic coprime polynomials.
pub fn psi(a: &IntPoly, f1: &IntPoly, f2: &IntPoly) -> Result<(Element, Element)> {
    let (r1, r2) = rings(f1, f2)?;
    Ok((r1.reduce(a), r2.reduce(a)))
}

/// Result of the inverse Chinese-Remainder solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrtSolution {
    /// The unique representative of degree below `deg f1 + deg f2` with
    /// integer coefficients.
    Integral(IntPoly),
    /// The rational solution has nonintegral coefficients; equivalently the
    /// residues disagree modulo `(f1, f2)`.
    NotIntegral,
}

impl CrtSolution {
    pub fn is_integral(&self) -> bool {
        matches!(self, CrtSolution::Integral(_))
    }
}

/// Finds `a` with `a = a1 (mod f1)`, `a = a2 (mod f2)` and integer
/// coefficients, by solving `f1*t + f2*u = a2 - a1` over the integer lattice
/// of shift rows (Hermite normal form with transform).
pub fn psi_inverse(a1: &IntPoly, a2: &IntPoly, f1: &IntPoly, f2: &IntPoly) -> Result<CrtSolution> {
    let (r1, r2) = rings(f1, f2)?;
    let n1 = r1.degree();
    let n2 = r2.degree();
    let a1 = r1.reduce(a1).to_poly();
    let a2 = r2.reduce(a2).to_poly();
    let c = &a2 - &a1;
    let cols = n1 + n2;
    let mut rows = Vec::with_capacity(cols);
    let mut push_shifts = |f: &IntPoly, count: usize| {
        for i in 0..count {
            let mut row = vec![BigInt::zero(); cols];
            for (j, coeff) in f.coeffs().iter().enumerate() {
                row[i + j] = coeff.clone();
            }
            rows.push(row);
        }
    };
    push_shifts(f1, n2);
    push_shifts(f2, n1);
    let mut target = vec![BigInt::zero(); cols];
    for (j, coeff) in c.coeffs().iter().enumerate() {
        target[j] = coeff.clone();
    }
    let Some(y) = solve_left(rows, &target) else {
        return Ok(CrtSolution::NotIntegral);
    };
    let t = IntPoly::from_coeffs(y[..n2].to_vec());
    let a = &a1 + &(f1 * &t);
    debug_assert_eq!(r1.reduce(&a).to_poly(), a1);
    debug_assert_eq!(r2.reduce(&a).to_poly(), a2);
    Ok(CrtSolution::Integral(a))
}

/// Membership in the fibred product `W`: all pairwise congruences
/// `a_i = a_j (mod (f_i, f_j))` hold.
pub fn in_w(tuple: &[IntPoly], moduli: &[IntPoly]) -> Result<bool> {
    if tuple.len() != moduli.len() {
        return Err(Error::InvalidInput(
            "tuple and moduli must have equal length".into(),
        ));
    }
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            let fq = strong_gb(&moduli[i], &moduli[j])?.finite_quotient();
            if !fq.reduce(&(&tuple[i] - &tuple[j])).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verdict on one merge condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Pass(String),
    Fail(String),
    NotEvaluated,
}

impl Cond {
    pub fn passed(&self) -> bool {
        matches!(self, Cond::Pass(_))
    }
}

/// Outcome of merging two digit systems into one modulo `f1 f2`.
#[derive(Clone, Debug)]
pub struct MergeReport {
    pub cond_i: Cond,
    pub cond_ii: Cond,
    pub cond_iii: Cond,
    pub cond_iv: Cond,
    /// Common residue of all digits modulo `(f1, f2)`, when condition (ii)
    /// holds.
    pub d_tilde: Option<IntPoly>,
    /// Period `S(d~)`.
    pub s_period: Option<u64>,
    pub l1: Option<u64>,
    pub l2: Option<u64>,
    pub l_merged: Option<u64>,
    /// The merged digit system modulo `f1 f2`, present when (i) and (ii)
    /// hold.
    pub merged: Option<DigitSystem>,
    /// Finite expansion property of the merged system; `Some(true)` exactly
    /// when all four conditions hold.
    pub fep: Option<bool>,
}

impl MergeReport {
    pub fn all_conditions_hold(&self) -> bool {
        self.cond_i.passed()
            && self.cond_ii.passed()
            && self.cond_iii.passed()
            && self.cond_iv.passed()
    }
}

/// Merges two irredundant digit systems over coprime monic moduli.
pub fn merge_digit_systems(ds1: &DigitSystem, ds2: &DigitSystem) -> Result<MergeReport> {
    merge_digit_systems_with(ds1, ds2, &Limits::default())
}

pub fn merge_digit_systems_with(
    ds1: &DigitSystem,
    ds2: &DigitSystem,
    limits: &Limits,
) -> Result<MergeReport> {
    let f1 = ds1.ring().modulus().clone();
    let f2 = ds2.ring().modulus().clone();
    if !f1.coprime_over_q(&f2)? {
        return Err(Error::NotCoprime);
    }
    let fq = strong_gb(&f1, &f2)?.finite_quotient();

    // (i) both factor systems are irredundant digit systems
    let check1 = ds1.digit_check();
    let check2 = ds2.digit_check();
    let cond_i = if check1 == DigitCheck::Irredundant && check2 == DigitCheck::Irredundant {
        Cond::Pass("both digit sets are irredundant".into())
    } else {
        Cond::Fail(format!(
            "digit sets are {check1} and {check2}; both must be irredundant"
        ))
    };

    // (ii) all digits of both systems share one residue modulo (f1, f2)
    let mut residues: Vec<IntPoly> = Vec::new();
    for d in ds1.digits().iter().chain(ds2.digits()) {
        let r = fq.reduce(&d.to_poly());
        if !residues.contains(&r) {
            residues.push(r);
        }
    }
    let (cond_ii, d_tilde) = if residues.len() == 1 {
        let d = residues[0].clone();
        (Cond::Pass(format!("all digits reduce to {d}")), Some(d))
    } else {
        let list: Vec<String> = residues.iter().map(ToString::to_string).collect();
        (
            Cond::Fail(format!(
                "digits fall into {} residue classes: {}",
                residues.len(),
                list.join(", ")
            )),
            None,
        )
    };

    // (iii) both factor systems have the finite expansion property
    let (cond_iii, l1, l2) = if cond_i.passed() {
        let rep1 = cns::decide_fep(ds1, StartSet::Generators, limits)?;
        let rep2 = cns::decide_fep(ds2, StartSet::Generators, limits)?;
        match (rep1.verdict, rep2.verdict) {
            (FepVerdict::Fep, FepVerdict::Fep) => (
                Cond::Pass(format!(
                    "both factors have finite expansions, L1={} L2={}",
                    rep1.zero_expansion_length.unwrap_or(0),
                    rep2.zero_expansion_length.unwrap_or(0)
                )),
                rep1.zero_expansion_length,
                rep2.zero_expansion_length,
            ),
            (v1, v2) => (
                Cond::Fail(format!(
                    "finite expansion property: first factor {v1:?}, second factor {v2:?}"
                )),
                rep1.zero_expansion_length,
                rep2.zero_expansion_length,
            ),
        }
    } else {
        (Cond::NotEvaluated, None, None)
    };

    // (iv) gcd(L1, L2) = S(d~)
    let s_period = d_tilde.as_ref().map(|d| fq.period_s(d));
    let cond_iv = match (l1, l2, s_period) {
        (Some(l1), Some(l2), Some(s)) => {
            let g = l1.gcd(&l2);
            if g == s {
                Cond::Pass(format!("gcd(L1, L2) = {g} = S(d~)"))
            } else {
                Cond::Fail(format!("gcd(L1, L2) = {g} but S(d~) = {s}"))
            }
        }
        _ => Cond::NotEvaluated,
    };

    // merged digit set, when it exists as a digit system
    let merged = if cond_i.passed() && cond_ii.passed() {
        let product = &f1 * &f2;
        let ring = QuotientRing::new(product)?;
        let mut digits = Vec::with_capacity(ds1.digits().len() * ds2.digits().len());
        for d1 in ds1.digits() {
            for d2 in ds2.digits() {
                match psi_inverse(&d1.to_poly(), &d2.to_poly(), &f1, &f2)? {
                    CrtSolution::Integral(a) => digits.push(ring.reduce(&a)),
                    CrtSolution::NotIntegral => {
                        // contradicts condition (ii); a digit pair without an
                        // integral interpolant means the congruence check was
                        // wrong, which is a bug, not a data condition
                        panic!(
                            "digit pair ({}, {}) has no integral interpolant although all \
                             digits are congruent modulo ({f1}, {f2})",
                            d1.to_poly(),
                            d2.to_poly()
                        );
                    }
                }
            }
        }
        Some(DigitSystem::new(ring, digits))
    } else {
        None
    };

    let fep = merged
        .as_ref()
        .map(|_| cond_iii.passed() && cond_iv.passed());
    let l_merged = match (fep, l1, l2) {
        (Some(true), Some(l1), Some(l2)) => Some(l1.gcd(&l2)),
        _ => None,
    };

    Ok(MergeReport {
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        d_tilde,
        s_period,
        l1,
        l2,
        l_merged,
        merged,
        fep,
    })
}

/// Knuth-style report for linear `f1 = x - a`: maximality of the linear
/// congruential period requires `a = 1 (mod p)` for every prime `p` dividing
/// `m`, and `a = 1 (mod 4)` when `4 | m`.
#[derive(Clone, Debug)]
pub struct KnuthReport {
    pub a: BigInt,
    pub m: BigInt,
    /// `(p, a mod p, satisfied)` for each prime divisor `p` of `m`.
    pub prime_conditions: Vec<(BigInt, BigInt, bool)>,
    /// `Some(satisfied)` when `4 | m`.
    pub four_condition: Option<bool>,
    pub passes: bool,
}

/// Whether any unit residue can reach the maximal period `S = |R12|`, which
/// conditions (i)-(iv) force on the common digit residue.
#[derive(Clone, Debug)]
pub struct NecessaryReport {
    pub cardinality: BigInt,
    pub s_one: u64,
    /// `S(1) = |R12|`: some (equivalently every) unit attains the maximal
    /// period, so digit sets satisfying the merge conditions may exist.
    pub possible: bool,
    pub knuth: Option<KnuthReport>,
}

/// Evaluates the necessary conditions on the moduli alone.
pub fn necessary_conditions(
    f1: &IntPoly,
    f2: &IntPoly,
    fq: &FiniteQuotient,
) -> Result<NecessaryReport> {
    let cardinality = fq.cardinality();
    let s_one = fq.period_s(&IntPoly::one());
    let possible = BigInt::from(s_one) == cardinality;

    let knuth = linear_root(f1).map(|a| {
        let m = f2.eval(&a).abs();
        let mut prime_conditions = Vec::new();
        let mut passes = true;
        for p in trial_division(&m) {
            let residue = a.mod_floor(&p);
            let ok = residue.is_one() || p.is_one();
            passes &= ok;
            prime_conditions.push((p, residue, ok));
        }
        let four = BigInt::from(4);
        let four_condition = if (&m % &four).is_zero() {
            let ok = a.mod_floor(&four).is_one();
            passes &= ok;
            Some(ok)
        } else {
            None
        };
        KnuthReport {
            a,
            m,
            prime_conditions,
            four_condition,
            passes,
        }
    });

    Ok(NecessaryReport {
        cardinality,
        s_one,
        possible,
        knuth,
    })
}

/// Whether the abstract direct product of two number systems is a number
/// system: exactly when `gcd(L1, L2) = 1`.
pub fn product_fep_check(ds1: &DigitSystem, ds2: &DigitSystem) -> Result<bool> {
    product_fep_check_with(ds1, ds2, &Limits::default())
}

pub fn product_fep_check_with(
    ds1: &DigitSystem,
    ds2: &DigitSystem,
    limits: &Limits,
) -> Result<bool> {
    let mut lengths = [0u64; 2];
    for (slot, ds) in lengths.iter_mut().zip([ds1, ds2]) {
        let rep = cns::decide_fep(ds, StartSet::Generators, limits)?;
        if rep.verdict != FepVerdict::Fep {
            return Err(Error::InvalidInput(
                "factor lacks the finite expansion property, zero expansion length unknown".into(),
            ));
        }
        *slot = rep
            .zero_expansion_length
            .ok_or_else(|| Error::Internal("finite system without zero expansion".into()))?;
    }
    Ok(lengths[0].gcd(&lengths[1]) == 1)
}

fn rings(f1: &IntPoly, f2: &IntPoly) -> Result<(QuotientRing, QuotientRing)> {
    if !f1.coprime_over_q(f2)? {
        return Err(Error::NotCoprime);
    }
    Ok((QuotientRing::new(f1.clone())?, QuotientRing::new(f2.clone())?))
}

fn linear_root(f: &IntPoly) -> Option<BigInt> {
    if f.degree() == Some(1) && f.is_monic() {
        Some(-f.constant_term())
    } else {
        None
    }
}

/// Prime divisors by trial division; `m` is tiny at desk scale.
fn trial_division(m: &BigInt) -> Vec<BigInt> {
    let mut rest = m.abs();
    let mut primes = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            primes.push(p.clone());
            while (&rest % &p).is_zero() {
                rest /= &p;
            }
        }
        p += 1;
    }
    if rest > BigInt::one() {
        primes.push(rest);
    }
    primes
}
