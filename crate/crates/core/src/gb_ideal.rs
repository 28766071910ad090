//! Strong Groebner bases of ideals `(f1, f2)` in `Z[x]`, canonical residues,
//! and the finite quotient ring `Z[x]/(f1, f2)`.
//!
//! The basis is degreewise: one generator `h_k` per degree `0 <= k <= m`, with
//! positive leading coefficient `l_k`, `l_k | l_(k-1)`, and `h_m` monic. It is
//! computed as the row Hermite normal form of the stacked coefficient rows of
//! `x^i f1` and `x^j f2` up to a degree bound, starting from the Sylvester
//! bound and escalating until a closure certificate holds: both inputs and
//! every `x * h_(k-1)` reduce to zero under the normal form. The certificate
//! is what makes the truncated-lattice shortcut sound; the Sylvester bound
//! alone is insufficient when the leading coefficients share a factor (pairs
//! like `2x+1, 2x+9` need cofactors of higher degree).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hnf::row_hnf;
use crate::intpoly::IntPoly;

/// Degreewise strong Groebner basis of `(f1, f2)` with its multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongGb {
    gens: Vec<IntPoly>,
    ells: Vec<BigInt>,
    multipliers: Vec<BigInt>,
    minimal: Vec<usize>,
    f1: IntPoly,
    f2: IntPoly,
    bound_used: usize,
}

impl StrongGb {
    /// Generators `h_0, ..., h_m`, ascending by degree.
    pub fn gens(&self) -> &[IntPoly] {
        &self.gens
    }

    /// Leading coefficients `l_0, ..., l_m` (the last one is 1).
    pub fn leading_coefficients(&self) -> &[BigInt] {
        &self.ells
    }

    /// Multipliers `a_1, ..., a_m` with `a_k = l_(k-1) / l_k`.
    pub fn multipliers(&self) -> &[BigInt] {
        &self.multipliers
    }

    /// Indices of the minimal basis: generators whose multiplier is a unit
    /// are dropped.
    pub fn minimal_indices(&self) -> &[usize] {
        &self.minimal
    }

    pub fn minimal_basis(&self) -> Vec<IntPoly> {
        self.minimal.iter().map(|&i| self.gens[i].clone()).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.gens.len() - 1
    }

    pub fn inputs(&self) -> (&IntPoly, &IntPoly) {
        (&self.f1, &self.f2)
    }

    /// Degree bound at which the closure certificate first held.
    pub fn bound_used(&self) -> usize {
        self.bound_used
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.top_degree() == 0
    }

    /// Radices of the finite quotient: `l_0, ..., l_(m-1)`.
    pub fn radices(&self) -> &[BigInt] {
        &self.ells[..self.ells.len() - 1]
    }

    pub fn cardinality(&self) -> BigInt {
        self.radices().iter().product()
    }

    /// Canonical residue of `p`: degrees at or above `m` are removed with the
    /// monic top generator, then each coefficient of `x^k` (for `k < m`) is
    /// reduced into `[0, l_k)` with `h_k`. `p - normal_form(p)` lies in the
    /// ideal, and the normal form is zero exactly for ideal members.
    pub fn normal_form(&self, p: &IntPoly) -> IntPoly {
        let m = self.top_degree();
        let mut r = p.clone();
        while let Some(d) = r.degree() {
            if d < m {
                break;
            }
            let top = r.coeff(d);
            r = &r - &self.gens[m].scalar_mul(&top).shift_up(d - m);
        }
        for k in (0..m).rev() {
            let c = r.coeff(k);
            let rem = c.mod_floor(&self.ells[k]);
            let q = (&c - &rem) / &self.ells[k];
            if !q.is_zero() {
                r = &r - &self.gens[k].scalar_mul(&q);
            }
        }
        r
    }

    /// The Lazard/Myerson identity: the resultant equals the product of
    /// `a_k^k`. Valid only when the leading coefficients of the inputs are
    /// coprime.
    pub fn resultant_from_multipliers(&self) -> Result<BigInt> {
        let lc1 = self.f1.leading().expect("nonzero input");
        let lc2 = self.f2.leading().expect("nonzero input");
        if !lc1.gcd(lc2).is_one() {
            return Err(Error::LeadingCoefficientsNotCoprime);
        }
        let mut acc = BigInt::one();
        for (k, a) in self.multipliers.iter().enumerate() {
            acc *= a.pow((k + 1) as u32);
        }
        Ok(acc)
    }

    pub fn finite_quotient(self) -> FiniteQuotient {
        FiniteQuotient { gb: self }
    }
}

/// Computes the strong Groebner basis of `(f1, f2)` for nonzero inputs that
/// are coprime over the rationals.
pub fn strong_gb(f1: &IntPoly, f2: &IntPoly) -> Result<StrongGb> {
    let n1 = f1.degree().ok_or(Error::ZeroPolynomial)?;
    let n2 = f2.degree().ok_or(Error::ZeroPolynomial)?;
    if !f1.coprime_over_q(f2)? {
        return Err(Error::NotCoprime);
    }
    // coprimality in Z[x] also needs coprime contents; a shared content
    // divides every coefficient of every ideal member
    if !f1.content().gcd(&f2.content()).is_one() {
        return Err(Error::SharedContent);
    }
    let cap = 4 * (n1 + n2) + 64;
    let mut bound = (n1 + n2).max(1) - 1;
    bound = bound.max(n1).max(n2);
    loop {
        if let Some(gb) = attempt(f1, f2, n1, n2, bound) {
            return Ok(gb);
        }
        bound += 1;
        if bound > cap {
            return Err(Error::DegreeBoundExceeded(cap));
        }
    }
}

/// One escalation step: HNF of the shift rows up to `bound`, candidate basis
/// extraction, and the closure certificate.
fn attempt(f1: &IntPoly, f2: &IntPoly, n1: usize, n2: usize, bound: usize) -> Option<StrongGb> {
    let cols = bound + 1;
    let mut rows = Vec::new();
    // columns ordered descending by degree so HNF pivots align with leading
    // coefficients
    let mut push_shifts = |f: &IntPoly, n: usize| {
        for i in 0..=bound - n {
            let mut row = vec![BigInt::zero(); cols];
            for (j, c) in f.coeffs().iter().enumerate() {
                row[bound - (i + j)] = c.clone();
            }
            rows.push(row);
        }
    };
    push_shifts(f1, n1);
    push_shifts(f2, n2);

    let h = row_hnf(rows, false);
    let mut by_degree: HashMap<usize, IntPoly> = HashMap::new();
    for &(r, col) in &h.pivots {
        let deg = bound - col;
        let coeffs: Vec<BigInt> = (0..=deg).map(|d| h.rows[r][bound - d].clone()).collect();
        by_degree.insert(deg, IntPoly::from_coeffs(coeffs));
    }
    // top generator: the lowest degree with leading coefficient 1
    let m = (0..=bound).find(|k| {
        by_degree
            .get(k)
            .and_then(IntPoly::leading)
            .map_or(false, One::is_one)
    })?;
    let mut gens = Vec::with_capacity(m + 1);
    let mut ells = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let g = by_degree.remove(&k)?;
        ells.push(g.leading().expect("pivot row is nonzero").clone());
        gens.push(g);
    }
    // degreewise divisibility of the leading coefficients
    let mut multipliers = Vec::with_capacity(m);
    for k in 1..=m {
        let (q, r) = ells[k - 1].div_rem(&ells[k]);
        if !r.is_zero() {
            return None;
        }
        multipliers.push(q);
    }
    let mut minimal = vec![0];
    for k in 1..=m {
        if !multipliers[k - 1].is_one() {
            minimal.push(k);
        }
    }
    let gb = StrongGb {
        gens,
        ells,
        multipliers,
        minimal,
        f1: f1.clone(),
        f2: f2.clone(),
        bound_used: bound,
    };
    // closure certificate: both inputs and every x*h_(k-1) reduce to zero
    if !gb.normal_form(f1).is_zero() || !gb.normal_form(f2).is_zero() {
        return None;
    }
    for k in 1..=m {
        if !gb.normal_form(&gb.gens[k - 1].shift_up(1)).is_zero() {
            return None;
        }
    }
    Some(gb)
}

/// The finite ring `Z[x]/(f1, f2)` presented by a strong Groebner basis:
/// canonical residues are the polynomials of degree below `m` whose `x^k`
/// coefficient lies in `[0, l_k)`.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    gb: StrongGb,
}

/// Residues are enumerable only at desk scale.
const ENUMERATION_CAP: u64 = 1 << 20;

impl FiniteQuotient {
    pub fn gb(&self) -> &StrongGb {
        &self.gb
    }

    pub fn cardinality(&self) -> BigInt {
        self.gb.cardinality()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gb.is_unit_ideal()
    }

    pub fn reduce(&self, p: &IntPoly) -> IntPoly {
        self.gb.normal_form(p)
    }

    pub fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        self.reduce(&(a + b))
    }

    pub fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        self.reduce(&(a * b))
    }

    /// Multiplication by the class of `x`.
    pub fn mul_x(&self, a: &IntPoly) -> IntPoly {
        self.reduce(&a.shift_up(1))
    }

    /// All canonical residues in mixed-radix order.
    pub fn residues(&self) -> Result<Vec<IntPoly>> {
        let card = self.cardinality();
        let n: u64 = (&card)
            .try_into()
            .ok()
            .filter(|&n| n <= ENUMERATION_CAP)
            .ok_or(Error::EnumerationTooLarge(card.clone()))?;
        let radices = self.gb.radices();
        let mut out = Vec::with_capacity(n as usize);
        let mut counter = vec![BigInt::zero(); radices.len()];
        loop {
            out.push(IntPoly::from_coeffs(counter.clone()));
            let mut pos = 0;
            loop {
                if pos == radices.len() {
                    return Ok(out);
                }
                counter[pos] += 1;
                if counter[pos] < radices[pos] {
                    break;
                }
                counter[pos] = BigInt::zero();
                pos += 1;
            }
        }
    }

    /// Whether multiplication by the residue of `p` is a bijection, checked
    /// by enumeration.
    pub fn is_invertible(&self, p: &IntPoly) -> Result<bool> {
        let residues = self.residues()?;
        let r = self.reduce(p);
        let mut seen = std::collections::HashSet::new();
        for s in &residues {
            if !seen.insert(self.mul(&r, s)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Period of the partial digit-sum sequence `s_0 = d`,
    /// `s_(i+1) = X * s_i + d`: the length of its eventual cycle.
    pub fn period_s(&self, d: &IntPoly) -> u64 {
        let d = self.reduce(d);
        let mut seen: HashMap<IntPoly, u64> = HashMap::new();
        let mut s = d.clone();
        let mut i = 0u64;
        loop {
            if let Some(&j) = seen.get(&s) {
                return i - j;
            }
            seen.insert(s.clone(), i);
            s = self.reduce(&(&s.shift_up(1) + &d));
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn groebner_worked_example() {
        let gb = strong_gb(&p("x^2+3x+4"), &p("4x^2+3x+1")).unwrap();
        assert_eq!(gb.top_degree(), 2);
        assert_eq!(
            gb.leading_coefficients(),
            &[BigInt::from(48), BigInt::from(3), BigInt::from(1)]
        );
        assert_eq!(gb.multipliers(), &[BigInt::from(16), BigInt::from(3)]);
        assert_eq!(gb.minimal_indices(), &[0, 1, 2]);
        // all generators lie in the ideal of the published basis and
        // conversely: same canonical forms
        for g in ["48", "3x+69", "x^2+3x+4"] {
            assert!(gb.normal_form(&p(g)).is_zero(), "{g} not in the ideal");
        }
        assert_eq!(gb.resultant_from_multipliers().unwrap(), BigInt::from(144));
    }

    #[test]
    fn unit_ideal_from_consecutive_linears() {
        let gb = strong_gb(&p("x+2"), &p("x+3")).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.gens(), &[IntPoly::one()]);
        assert_eq!(gb.cardinality(), BigInt::one());
        assert!(gb.normal_form(&IntPoly::one()).is_zero());
    }

    #[test]
    fn myerson_pair_needs_escalation() {
        let gb = strong_gb(&p("2x+1"), &p("2x+9")).unwrap();
        assert!(gb.is_unit_ideal());
        assert!(gb.bound_used() > 1, "bound {} should exceed Sylvester", gb.bound_used());
        assert!(matches!(
            gb.resultant_from_multipliers(),
            Err(Error::LeadingCoefficientsNotCoprime)
        ));
        assert_eq!(
            p("2x+1").resultant(&p("2x+9")).unwrap().abs(),
            BigInt::from(16)
        );
    }

    #[test]
    fn rejects_non_coprime_inputs() {
        let f = p("x+2");
        let g = &f * &p("x+3");
        assert!(matches!(strong_gb(&f, &g), Err(Error::NotCoprime)));
        // coprime over Q but sharing content 2: no monic ideal member exists
        assert!(matches!(
            strong_gb(&p("2x-2"), &p("2x")),
            Err(Error::SharedContent)
        ));
    }

    #[test]
    fn normal_form_examples() {
        let gb = strong_gb(&p("x^2+3x+4"), &p("4x^2+3x+1")).unwrap();
        for g in gb.gens() {
            assert!(gb.normal_form(g).is_zero());
        }
        assert!(gb.normal_form(&p("48")).is_zero());
        assert_eq!(gb.normal_form(&p("47")), p("47"));
        // 3x+117 = (3x+69) + 48 is a sum of ideal members
        assert!(gb.normal_form(&p("3x+69+48")).is_zero());
        assert!(!gb.normal_form(&IntPoly::one()).is_zero());

        let gb = strong_gb(&p("x+3"), &p("x+5")).unwrap();
        assert_eq!(gb.normal_form(&p("x")), p("1"));
    }

    #[test]
    fn normal_form_idempotent_and_congruence_sound() {
        let gb = strong_gb(&p("x^2+3x+4"), &p("4x^2+3x+1")).unwrap();
        for a in [-17i64, 0, 3, 95, 144] {
            for b in [-5i64, 0, 2, 7] {
                let q = IntPoly::from_coeffs(vec![
                    BigInt::from(a),
                    BigInt::from(b),
                    BigInt::from(a + b),
                ]);
                let nf = gb.normal_form(&q);
                assert_eq!(gb.normal_form(&nf), nf);
                assert!(gb.normal_form(&(&q - &nf)).is_zero());
            }
        }
    }

    #[test]
    fn szekeres_lazard_closure_relation() {
        // x*h_(k-1) = a_k*h_k - (integer combination of h_0..h_(k-1))
        let gb = strong_gb(&p("x^2+3x+4"), &p("4x^2+3x+1")).unwrap();
        for k in 1..=gb.top_degree() {
            let lhs = gb.gens()[k - 1].shift_up(1);
            let mut r = &lhs - &gb.gens()[k].scalar_mul(&gb.multipliers()[k - 1]);
            // remaining part has degree < k and must reduce to zero using
            // only the lower generators
            assert!(r.degree().map_or(true, |d| d < k));
            for j in (0..k).rev() {
                let c = r.coeff(j);
                let ell = &gb.leading_coefficients()[j];
                let (q, rem) = c.div_rem(ell);
                assert!(rem.is_zero());
                r = &r - &gb.gens()[j].scalar_mul(&q);
            }
            assert!(r.is_zero());
        }
    }

    #[test]
    fn quotient_worked_examples() {
        let fq = strong_gb(&p("x+3"), &p("x+5")).unwrap().finite_quotient();
        assert_eq!(fq.cardinality(), BigInt::from(2));
        assert_eq!(fq.reduce(&p("x")), p("1"));
        assert_eq!(fq.period_s(&p("1")), 2);

        let fq = strong_gb(&p("x+2"), &p("x+3")).unwrap().finite_quotient();
        assert_eq!(fq.cardinality(), BigInt::one());
        assert!(fq.is_zero_ring());
        assert_eq!(fq.period_s(&p("0")), 1);

        let fq = strong_gb(&p("x+2"), &p("x-2")).unwrap().finite_quotient();
        assert_eq!(fq.cardinality(), BigInt::from(4));
        assert_eq!(fq.reduce(&p("x")), p("2"));

        let fq = strong_gb(&p("x+4"), &p("x+7")).unwrap().finite_quotient();
        assert_eq!(fq.cardinality(), BigInt::from(3));
        assert_eq!(fq.reduce(&p("x")), p("2"));
        assert_eq!(fq.period_s(&p("1")), 2);
    }

    #[test]
    fn invertibility_by_enumeration() {
        let fq = strong_gb(&p("x+2"), &p("x-2")).unwrap().finite_quotient();
        // Z/4: 1 and 3 are units, 2 is not
        assert!(fq.is_invertible(&p("1")).unwrap());
        assert!(fq.is_invertible(&p("3")).unwrap());
        assert!(!fq.is_invertible(&p("2")).unwrap());
        assert_eq!(fq.residues().unwrap().len(), 4);
    }

    #[test]
    fn unit_ideal_iff_normal_form_of_one_vanishes() {
        let pairs = [
            ("x+2", "x+3", true),
            ("x+3", "x+5", false),
            ("2x+1", "2x+9", true),
            ("x^2+3x+4", "4x^2+3x+1", false),
        ];
        for (a, b, unit) in pairs {
            let gb = strong_gb(&p(a), &p(b)).unwrap();
            assert_eq!(gb.is_unit_ideal(), unit);
            assert_eq!(gb.normal_form(&IntPoly::one()).is_zero(), unit);
        }
    }

    #[test]
    fn minimal_basis_drops_unit_multipliers() {
        // (x^2+5x+6, x^2+5x+8): ideal (2, x^2+x), with l = (2, 2, 1) and
        // a_1 = 1
        let gb = strong_gb(&p("x^2+5x+6"), &p("x^2+5x+8")).unwrap();
        assert_eq!(gb.multipliers()[0], BigInt::one());
        assert!(!gb.minimal_indices().contains(&1));
        assert!(gb.minimal_indices().contains(&0));
        assert!(gb.minimal_indices().contains(&2));
    }
}
