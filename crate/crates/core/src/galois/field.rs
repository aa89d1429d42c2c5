// SPDX-License-Identifier: Apache-2.0

//! Prime-power fields GF(p^T) in a polynomial basis over the prime field.
//!
//! An element is a digit vector `(d_0, .., d_{T-1})` with `d_k` in `[0, p)`,
//! standing for `d_0 + d_1 x + .. + d_{T-1} x^{T-1}` modulo a fixed monic
//! irreducible polynomial. Internally the vector is packed into the integer
//! `sum d_k p^k`; multiplication goes through log/antilog tables built once
//! from schoolbook polynomial arithmetic at construction time.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// A field element, packed as the base-p integer of its digit vector.
///
/// The prime-field element `c` is `Elem(c)`; in particular zero is `Elem(0)`
/// and one is `Elem(1)`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem({})", self.0)
    }
}

/// Operations accepted by [`Field::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    /// Inverse of the first operand; the second is ignored.
    Inv,
    /// First operand raised to the packed value of the second.
    Pow,
    /// `a^p`; the second operand is ignored.
    Frobenius,
}

#[derive(Clone)]
pub struct Field {
    p: u32,
    degree: usize,
    order: u32,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// GF(p^degree) with the default modulus: the monic irreducible polynomial
    /// whose lower coefficients have the smallest base-p encoding.
    pub fn new(p: u32, degree: usize) -> Result<Self> {
        check_size(p, degree)?;
        let modulus = default_modulus(p, degree);
        Self::build(p, modulus)
    }

    /// GF(p^T) for an explicit monic modulus given as `T + 1` coefficients,
    /// constant term first.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::UnsupportedField("modulus must have degree at least 1".into()));
        }
        let degree = modulus.len() - 1;
        check_size(p, degree)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::UnsupportedField("modulus coefficient out of range".into()));
        }
        if modulus[degree] != 1 {
            return Err(Error::UnsupportedField("modulus must be monic".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::UnsupportedField(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Self::build(p, modulus)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let degree = modulus.len() - 1;
        let order = p.pow(degree as u32);
        let n = (order - 1) as usize;
        for candidate in 1..order {
            let g = unpack(candidate, p, degree);
            let mut powers = Vec::with_capacity(n);
            let mut cur = unpack(1, p, degree);
            loop {
                powers.push(pack(&cur, p));
                cur = poly_mulmod(&cur, &g, &modulus, p);
                if pack(&cur, p) == 1 || powers.len() > n {
                    break;
                }
            }
            if powers.len() != n {
                continue;
            }
            let mut exp = vec![0u32; 2 * n];
            let mut log = vec![0u32; order as usize];
            for (k, &v) in powers.iter().enumerate() {
                exp[k] = v;
                exp[k + n] = v;
                log[v as usize] = k as u32;
            }
            return Ok(Field {
                p,
                degree,
                order,
                modulus,
                generator: Elem(candidate),
                exp,
                log,
            });
        }
        Err(Error::UnsupportedField("no primitive element found".into()))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A fixed primitive element.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// The class of `x` in the polynomial basis (the generator of the basis,
    /// not necessarily primitive). Equals the prime-field element `0` when
    /// the degree is one.
    pub fn basis_root(&self) -> Elem {
        if self.degree == 1 {
            // x == -modulus[0] in GF(p)[x]/(x + m0)
            self.neg(Elem(self.modulus[0]))
        } else {
            Elem(self.p)
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.order
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ForeignElement { value: a.0, order: self.order })
        }
    }

    pub fn elem(&self, value: u32) -> Result<Elem> {
        self.check(Elem(value))
    }

    pub fn from_prime(&self, c: u32) -> Elem {
        Elem(c % self.p)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() != self.degree {
            return Err(Error::InvalidDigits(format!(
                "expected {} digits, got {}",
                self.degree,
                digits.len()
            )));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= self.p) {
            return Err(Error::InvalidDigits(format!("digit {d} is not below {}", self.p)));
        }
        Ok(Elem(pack(digits, self.p)))
    }

    /// Digit vector of `a`, least-significant first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        unpack(a.0, self.p, self.degree)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            place *= p;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        Ok(Elem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.order - 1) as u64;
        let k = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        Elem(self.exp[k as usize])
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    pub fn sum(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// `acc + a * b`.
    #[inline]
    pub fn mul_add(&self, acc: Elem, a: Elem, b: Elem) -> Elem {
        self.add(acc, self.mul(a, b))
    }

    /// Checked dispatch used at API boundaries: both operands must belong to
    /// this field.
    pub fn apply(&self, op: FieldOp, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Inv => self.inv(a)?,
            FieldOp::Pow => self.pow(a, b.0 as u64),
            FieldOp::Frobenius => self.frobenius(a),
        })
    }
}

fn check_size(p: u32, degree: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::UnsupportedField(format!("{p} is not prime")));
    }
    if degree == 0 {
        return Err(Error::UnsupportedField("degree must be at least 1".into()));
    }
    let mut order: u64 = 1;
    for _ in 0..degree {
        order *= p as u64;
        if order > MAX_ORDER as u64 {
            return Err(Error::UnsupportedField(format!(
                "{p}^{degree} exceeds the supported order {MAX_ORDER}"
            )));
        }
    }
    Ok(())
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Splits `q = p^k` into `(p, k)`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn unpack(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (k, &c) in m.iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + p * p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Trial division by every monic polynomial of degree at most half.
pub(crate) fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut divisor = unpack(code, p, d);
            divisor.push(1);
            if poly_rem(m, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, degree: usize) -> Vec<u32> {
    (0..p.pow(degree as u32))
        .map(|code| {
            let mut m = unpack(code, p, degree);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(p, m))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook multiplication straight from the modulus, independent of
    /// the log tables.
    fn slow_mul(f: &Field, a: Elem, b: Elem) -> Elem {
        let r = poly_mulmod(&f.digits(a), &f.digits(b), f.modulus(), f.characteristic());
        f.from_digits(&r).unwrap()
    }

    #[test]
    fn gf4_table() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = Elem(2);
        let g1 = Elem(3);
        assert_eq!(f.mul(g, g), g1);
        assert_eq!(f.frobenius(g), g1);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), slow_mul(&f, a, b));
            }
        }
    }

    #[test]
    fn default_moduli() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::new(2, 6).unwrap().modulus(), &[1, 1, 0, 0, 0, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn tables_match_schoolbook() {
        for (p, t) in [(2, 3), (3, 2), (5, 2), (2, 5), (7, 1), (3, 3)] {
            let f = Field::new(p, t).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), slow_mul(&f, a, b), "GF({p}^{t})");
                }
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Field::new(4, 2).is_err());
        assert!(Field::new(2, 17).is_err());
        assert!(Field::with_modulus(2, vec![1, 0, 1]).is_err());
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.inv(Elem::ZERO), Err(Error::DivisionByZero));
        assert!(f.apply(FieldOp::Mul, Elem(4), Elem(1)).is_err());
        assert!(f.from_digits(&[2, 0]).is_err());
        assert!(f.from_digits(&[1]).is_err());
    }

    #[test]
    fn digits_round_trip() {
        let f = Field::new(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_digits(&f.digits(a)).unwrap(), a);
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
