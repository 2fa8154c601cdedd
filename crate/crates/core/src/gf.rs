//! Prime fields `F_p` (p odd) and the small extensions `F_{p^k}` used by the
//! point-counting oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::upoly::Poly;

/// Largest accepted modulus. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// Canonical residue in `[0, p)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elt(u64);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_p` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn elt(&self, x: u64) -> Elt {
        Elt(x % self.p)
    }

    #[inline]
    pub fn from_i64(&self, x: i64) -> Elt {
        Elt(x.rem_euclid(self.p as i64) as u64)
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let s = a.0 + b.0;
        Elt(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        Elt(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        if a.0 == 0 {
            a
        } else {
            Elt(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        Elt(a.0 * b.0 % self.p)
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut base = a;
        let mut acc = Elt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Dispatches one of the four field operations.
    pub fn apply(&self, op: FieldOp, a: Elt, b: Elt) -> Result<Elt> {
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Inv => self.inv(a)?,
        })
    }

    /// `x ↦ x^p`. The identity on the prime field, kept explicit so semilinear
    /// code reads the same over any perfect base.
    #[inline]
    pub fn frobenius(&self, a: Elt) -> Elt {
        a
    }

    /// Inverse of [`PrimeField::frobenius`]; the identity on `F_p` by Fermat.
    #[inline]
    pub fn pth_root(&self, a: Elt) -> Elt {
        a
    }

    /// Quadratic character: 0, +1 or −1.
    pub fn quadratic_character(&self, a: Elt) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.pow(a, (self.p - 1) / 2) == Elt::ONE {
            1
        } else {
            -1
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.p).map(Elt)
    }
}

/// `F_{p^k} = F_p[t]/(m(t))` with an explicitly recorded irreducible modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: Poly,
}

/// Element of an [`ExtField`]: `k` coefficients in ascending powers of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElt(Vec<Elt>);

impl ExtElt {
    pub fn coeffs(&self) -> &[Elt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl ExtField {
    /// Builds the extension, rejecting a modulus that is not monic irreducible.
    pub fn new(modulus: Poly) -> Result<Self> {
        let deg = modulus.degree().ok_or(Error::NotIrreducible)?;
        if deg == 0 || modulus.leading() != Elt::ONE || !modulus.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        Ok(ExtField {
            base: *modulus.field(),
            modulus,
        })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.coeffs().len() - 1
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn order(&self) -> Option<u64> {
        self.base.p.checked_pow(self.degree() as u32)
    }

    pub fn zero(&self) -> ExtElt {
        ExtElt(vec![Elt::ZERO; self.degree()])
    }

    pub fn one(&self) -> ExtElt {
        self.embed(Elt::ONE)
    }

    pub fn embed(&self, a: Elt) -> ExtElt {
        let mut v = vec![Elt::ZERO; self.degree()];
        v[0] = a;
        ExtElt(v)
    }

    /// The class of `t`. For `k = 1` this is the root of the linear modulus.
    pub fn generator(&self) -> ExtElt {
        if self.degree() == 1 {
            return self.embed(self.base.neg(self.modulus.coeffs()[0]));
        }
        let mut v = vec![Elt::ZERO; self.degree()];
        v[1] = Elt::ONE;
        ExtElt(v)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> ExtElt {
        let mut v = vec![Elt::ZERO; self.degree()];
        for (slot, &c) in v.iter_mut().zip(coeffs) {
            *slot = self.base.elt(c);
        }
        ExtElt(v)
    }

    /// Element number `index` in base-`p` digit order.
    pub fn element(&self, mut index: u64) -> ExtElt {
        let p = self.base.p;
        let v = (0..self.degree())
            .map(|_| {
                let d = index % p;
                index /= p;
                Elt(d)
            })
            .collect();
        ExtElt(v)
    }

    pub fn add(&self, a: &ExtElt, b: &ExtElt) -> ExtElt {
        ExtElt(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| self.base.add(x, y))
                .collect(),
        )
    }

    pub fn sub(&self, a: &ExtElt, b: &ExtElt) -> ExtElt {
        ExtElt(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| self.base.sub(x, y))
                .collect(),
        )
    }

    pub fn mul(&self, a: &ExtElt, b: &ExtElt) -> ExtElt {
        let k = self.degree();
        let f = &self.base;
        let mut prod = vec![Elt::ZERO; 2 * k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        // modulus is monic: t^k = -(m_0 + ... + m_{k-1} t^{k-1})
        let m = self.modulus.coeffs();
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c.is_zero() {
                continue;
            }
            for (i, &mi) in m[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = f.sub(prod[idx], f.mul(c, mi));
            }
            prod[top] = Elt::ZERO;
        }
        prod.truncate(k);
        ExtElt(prod)
    }

    pub fn pow(&self, a: &ExtElt, mut e: u64) -> ExtElt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtElt) -> Result<ExtElt> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.order().ok_or(Error::TooLarge(u64::MAX))?;
        Ok(self.pow(a, q - 2))
    }

    pub fn frobenius(&self, a: &ExtElt) -> ExtElt {
        self.pow(a, self.base.p)
    }

    /// `b` with `b^p = a`: apply the Frobenius `k − 1` times.
    pub fn pth_root(&self, a: &ExtElt) -> ExtElt {
        let mut r = a.clone();
        for _ in 1..self.degree() {
            r = self.frobenius(&r);
        }
        r
    }

    pub fn quadratic_character(&self, a: &ExtElt) -> i8 {
        if a.is_zero() {
            return 0;
        }
        let q = self.order().expect("field order overflows u64");
        if self.pow(a, (q - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }
}
