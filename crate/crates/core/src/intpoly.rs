//! Dense univariate polynomials over the integers.
//!
//! `IntPoly` is the universal carrier for moduli, digits, and residues in the
//! rest of the crate. All arithmetic is exact; there is no floating point
//! anywhere in this module. The resultant follows a fixed sign convention
//! (Sylvester matrix with rows of the first argument's shifts on top), and the
//! expanding-polynomial test is an integer Schur-Cohn recursion.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A dense polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored ascending by degree (`coeffs[i]` is the coefficient
/// of `x^i`). The zero polynomial is the empty sequence, and the
/// representation is normalized: the last stored coefficient, if any, is
/// nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::from_coeffs(vec![c.into()])
    }

    /// `c * x^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, or `None` for the zero polynomial (the
    /// "negative infinity" sentinel).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero when `i` exceeds the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn scalar_mul(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Evaluates at an integer point by Horner's rule.
    pub fn eval(&self, a: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    /// Substitutes `x + c` for `x`.
    pub fn compose_x_plus(&self, c: &BigInt) -> IntPoly {
        let shift = IntPoly::from_coeffs(vec![c.clone(), BigInt::one()]);
        let mut acc = IntPoly::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &IntPoly::constant(coeff.clone());
        }
        acc
    }

    /// Quotient and remainder by a monic divisor; exact over the integers.
    pub fn div_rem_monic(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !d.is_monic() {
            return Err(Error::BadModulus);
        }
        let dd = d.degree().expect("monic implies nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.last().expect("nonempty").clone();
            let pos = rem.len() - 1 - dd;
            if !top.is_zero() {
                quot[pos] = top.clone();
                for (i, c) in d.coeffs.iter().enumerate() {
                    rem[pos + i] -= &top * c;
                }
            }
            rem.pop();
        }
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Content of the polynomial: the positive gcd of its coefficients, or
    /// zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Pseudo-remainder: the remainder of `lc(d)^(deg self - deg d + 1) * self`
    /// under division by `d`. Requires `deg self >= deg d` and `d` nonzero.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let lc = d.leading().expect("divisor nonzero").clone();
        let dd = d.degree().unwrap();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            rem = &rem.scalar_mul(&lc) - &d.scalar_mul(&top).shift_up(rd - dd);
        }
        rem
    }

    /// True iff `gcd(self, other)` is constant in `Q[x]`, computed by a
    /// primitive-part Euclidean remainder sequence in exact integers.
    pub fn coprime_over_q(&self, other: &IntPoly) -> Result<bool> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        Ok(a.degree() == Some(0))
    }

    /// Resultant of `(self, other)`: the determinant of the Sylvester matrix
    /// with the rows of `self`-shifts first, computed by fraction-free
    /// (Bareiss) elimination.
    ///
    /// With this convention `resultant(x - a, q) = q(a)` and
    /// `resultant(p, q) = (-1)^(deg p * deg q) * resultant(q, p)`.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt> {
        let dp = self.degree().ok_or(Error::ZeroPolynomial)?;
        let dq = other.degree().ok_or(Error::ZeroPolynomial)?;
        let size = dp + dq;
        if size == 0 {
            return Ok(BigInt::one());
        }
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        // dq rows of self-shifts, then dp rows of other-shifts, descending
        // coefficient order.
        for r in 0..dq {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                mat[r][r + j] = c.clone();
            }
        }
        for r in 0..dp {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                mat[dq + r][r + j] = c.clone();
            }
        }
        Ok(bareiss_det(mat))
    }

    /// True iff every complex root has modulus strictly greater than one.
    ///
    /// Decided exactly by the Schur-Cohn recursion `g -> g(0)*g - lc(g)*rev(g)`
    /// on formal-degree coefficient vectors: all roots lie outside the closed
    /// unit disk iff the constant term of every iterate is positive. A zero
    /// constant term signals a root on the unit circle or a reciprocal root
    /// pair, both of which already refute the expanding property, so the
    /// recursion never needs a perturbation step.
    pub fn is_expanding(&self) -> Result<bool> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::ConstantPolynomial),
        };
        let mut g: Vec<BigInt> = self.coeffs.clone();
        for _ in 0..n {
            let len = g.len();
            let c0 = g[0].clone();
            let top = g[len - 1].clone();
            let gamma = &c0 * &c0 - &top * &top;
            if gamma.sign() != num_bigint::Sign::Plus {
                return Ok(false);
            }
            let mut h: Vec<BigInt> = (0..len - 1)
                .map(|j| &c0 * &g[j] - &top * &g[len - 1 - j])
                .collect();
            // keep the coefficients small; a positive scalar does not change
            // any sign in later steps
            let mut content = BigInt::zero();
            for c in &h {
                content = content.gcd(c);
            }
            if content > BigInt::one() {
                for c in &mut h {
                    *c /= &content;
                }
            }
            g = h;
        }
        Ok(true)
    }

    /// Number of sign changes in the coefficient sequence (Descartes bound on
    /// the count of positive real roots).
    pub fn sign_variations(&self) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for c in &self.coeffs {
            let s = match c.sign() {
                num_bigint::Sign::Plus => 1,
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Parses either an ascending coefficient list `[6,5,1]` or a symbolic
    /// expression `x^2+5x+6` (variable `x` or `X`, integer coefficients).
    pub fn parse(input: &str) -> Result<IntPoly> {
        parse::poly(input)
    }
}

/// Determinant by fraction-free Bareiss elimination; exact over the integers.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPoly::from_coeffs::<BigInt>(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPoly::from_coeffs::<BigInt>(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let a = c.abs();
            if i == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            if i >= 1 {
                write!(f, "x")?;
                if i >= 2 {
                    write!(f, "^{i}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

mod parse {
    use super::IntPoly;
    use crate::error::{Error, Result};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    struct Cursor<'a> {
        bytes: &'a [u8],
        pos: usize,
    }

    impl<'a> Cursor<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.bytes.get(self.pos).copied()
        }

        fn bump(&mut self) -> Option<u8> {
            let b = self.peek()?;
            self.pos += 1;
            Some(b)
        }

        fn err<T>(&self, msg: &str) -> Result<T> {
            Err(Error::Parse {
                pos: self.pos,
                msg: msg.to_string(),
            })
        }

        fn uint(&mut self) -> Result<BigInt> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == start {
                return self.err("expected an integer");
            }
            let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
            Ok(s.parse().expect("digits parse as BigInt"))
        }

        fn int(&mut self) -> Result<BigInt> {
            let neg = match self.peek() {
                Some(b'-') => {
                    self.bump();
                    true
                }
                Some(b'+') => {
                    self.bump();
                    false
                }
                _ => false,
            };
            let v = self.uint()?;
            Ok(if neg { -v } else { v })
        }
    }

    pub(super) fn poly(input: &str) -> Result<IntPoly> {
        let mut cur = Cursor {
            bytes: input.as_bytes(),
            pos: 0,
        };
        let p = match cur.peek() {
            Some(b'[') => coeff_list(&mut cur)?,
            Some(_) => symbolic(&mut cur)?,
            None => return cur.err("empty input"),
        };
        cur.skip_ws();
        if cur.pos != cur.bytes.len() {
            return cur.err("unexpected trailing input");
        }
        Ok(p)
    }

    fn coeff_list(cur: &mut Cursor) -> Result<IntPoly> {
        cur.bump(); // '['
        let mut coeffs = Vec::new();
        if cur.peek() == Some(b']') {
            cur.bump();
            return Ok(IntPoly::zero());
        }
        loop {
            coeffs.push(cur.int()?);
            match cur.peek() {
                Some(b',') => {
                    cur.bump();
                }
                Some(b']') => {
                    cur.bump();
                    return Ok(IntPoly::from_coeffs(coeffs));
                }
                _ => return cur.err("expected ',' or ']'"),
            }
        }
    }

    fn symbolic(cur: &mut Cursor) -> Result<IntPoly> {
        let mut acc: Vec<BigInt> = Vec::new();
        let mut sign = BigInt::one();
        match cur.peek() {
            Some(b'-') => {
                cur.bump();
                sign = -sign;
            }
            Some(b'+') => {
                cur.bump();
            }
            _ => {}
        }
        loop {
            let (coeff, deg) = term(cur)?;
            let deg = usize::try_from(deg).map_err(|_| Error::Parse {
                pos: cur.pos,
                msg: "exponent too large".to_string(),
            })?;
            if acc.len() <= deg {
                acc.resize(deg + 1, BigInt::zero());
            }
            acc[deg] += &sign * coeff;
            match cur.peek() {
                Some(b'+') => {
                    cur.bump();
                    sign = BigInt::one();
                }
                Some(b'-') => {
                    cur.bump();
                    sign = -BigInt::one();
                }
                _ => return Ok(IntPoly::from_coeffs(acc)),
            }
        }
    }

    /// One term: `3x^2`, `x`, `4`, `2*x`, ...
    fn term(cur: &mut Cursor) -> Result<(BigInt, u64)> {
        let coeff = match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = cur.uint()?;
                if cur.peek() == Some(b'*') {
                    cur.bump();
                }
                Some(c)
            }
            _ => None,
        };
        let has_var = matches!(cur.peek(), Some(b'x') | Some(b'X'));
        if !has_var {
            return match coeff {
                Some(c) => Ok((c, 0)),
                None => cur.err("expected a coefficient or 'x'"),
            };
        }
        cur.bump();
        let deg = if cur.peek() == Some(b'^') {
            cur.bump();
            let d = cur.uint()?;
            u64::try_from(d).map_err(|_| Error::Parse {
                pos: cur.pos,
                msg: "exponent too large".to_string(),
            })?
        } else {
            1
        };
        Ok((coeff.unwrap_or_else(BigInt::one), deg))
    }
}
