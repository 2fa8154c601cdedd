//! Dense univariate polynomials over `F_p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elt, ExtElt, ExtField, PrimeField};

/// Coefficients in ascending degree with no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<Elt>,
}

/// The coefficients `c_0..c_N` of `f^((p-1)/2)`, read as zero outside `[0, N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    coeffs: Vec<Elt>,
}

impl CoeffVector {
    #[inline]
    pub fn get(&self, k: i64) -> Elt {
        if k < 0 {
            return Elt::ZERO;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(Elt::ZERO)
    }

    /// Top index `N`.
    pub fn top(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn as_slice(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn values(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }
}

fn trim(v: &mut Vec<Elt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<Elt>) -> Self {
        trim(&mut coeffs);
        Poly { field, coeffs }
    }

    pub fn from_u64(field: PrimeField, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elt(c)).collect())
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: Elt) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, Elt::ONE)
    }

    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![Elt::ZERO, Elt::ONE])
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Elt {
        self.coeffs.get(k).copied().unwrap_or(Elt::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Elt {
        self.coeffs.last().copied().unwrap_or(Elt::ZERO)
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedField)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.mul_raw(other))
    }

    fn add_raw(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(self.field, v)
    }

    fn sub_raw(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| self.field.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(self.field, v)
    }

    fn mul_raw(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let p = self.field.p();
        // Accumulate unreduced while it is safe to do so: each product is
        // below p^2, and p^2 * len must stay inside u64.
        let len = self.coeffs.len().min(other.coeffs.len()) as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        if (p - 1).saturating_mul(p - 1).checked_mul(len).is_some() {
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += a.value() * b.value();
                }
            }
            let v = acc.into_iter().map(|x| self.field.elt(x)).collect();
            Poly::new(self.field, v)
        } else {
            let mut v = vec![Elt::ZERO; acc.len()];
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (j, &b) in other.coeffs.iter().enumerate() {
                    v[i + j] = self.field.add(v[i + j], self.field.mul(a, b));
                }
            }
            Poly::new(self.field, v)
        }
    }

    pub fn scale(&self, c: Elt) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    pub fn derivative(&self) -> Poly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| self.field.mul(self.field.elt(k as u64), a))
            .collect();
        Poly::new(self.field, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base);
            }
        }
        acc
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let k = self.field;
        let lead_inv = k.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(k), self.clone()));
        }
        let mut quot = vec![Elt::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = k.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[top - dd] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = k.sub(rem[idx], k.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(k, quot), Poly::new(k, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b)?.monic();
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Coefficients of `f^((p-1)/2)` by binary exponentiation.
    pub fn half_power(&self) -> CoeffVector {
        let e = (self.field.p() - 1) / 2;
        CoeffVector {
            coeffs: self.pow(e).coeffs,
        }
    }

    /// `gcd(f, f')` is a nonzero constant. A vanishing derivative means `f` is
    /// a p-th power, hence not squarefree unless `f` is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.degree() == Some(0);
        }
        self.gcd(&d).map(|g| g.degree() == Some(0)).unwrap_or(false)
    }

    /// `γ^{-2} f(αx + β)`: the model of the same curve after `x ↦ αx+β, y ↦ γy`.
    pub fn affine_substitute(&self, alpha: Elt, beta: Elt, gamma: Elt) -> Result<Poly> {
        if alpha.is_zero() || gamma.is_zero() {
            return Err(Error::BadTransform);
        }
        let k = self.field;
        let lin = Poly::new(k, vec![beta, alpha]);
        // Horner in the substituted variable
        let mut acc = Poly::zero(k);
        for &a in self.coeffs.iter().rev() {
            acc = acc.mul_raw(&lin).add_raw(&Poly::constant(k, a));
        }
        let g2 = k.inv(k.mul(gamma, gamma))?;
        Ok(acc.scale(g2))
    }

    pub fn eval(&self, x: Elt) -> Elt {
        self.coeffs.iter().rev().fold(Elt::ZERO, |acc, &a| {
            self.field.add(self.field.mul(acc, x), a)
        })
    }

    pub fn eval_ext(&self, ext: &ExtField, x: &ExtElt) -> ExtElt {
        let mut acc = ext.zero();
        for &a in self.coeffs.iter().rev() {
            acc = ext.add(&ext.mul(&acc, x), &ext.embed(a));
        }
        acc
    }

    /// Rabin's test: `x^{p^k} ≡ x (mod f)` and `gcd(x^{p^{k/r}} - x, f) = 1`
    /// for every prime `r | k`.
    pub fn is_irreducible(&self) -> bool {
        let Some(k) = self.degree() else {
            return false;
        };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let p = self.field.p();
        let x = Poly::x(self.field);
        // powers[j] = x^{p^j} mod f
        let mut powers = Vec::with_capacity(k + 1);
        let mut cur = match x.rem(self) {
            Ok(r) => r,
            Err(_) => return false,
        };
        powers.push(cur.clone());
        for _ in 0..k {
            cur = match cur.pow_mod(p, self) {
                Ok(r) => r,
                Err(_) => return false,
            };
            powers.push(cur.clone());
        }
        if powers[k] != powers[0] {
            return false;
        }
        prime_divisors(k).into_iter().all(|r| {
            let h = powers[k / r].sub_raw(&x);
            self.gcd(&h).map(|g| g.degree() == Some(0)).unwrap_or(false)
        })
    }

    pub fn to_u64(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let v = c.value();
            match (k, v) {
                (0, _) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{v}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{v}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> Poly {
        Poly::from_u64(k(p), c)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(
            poly(3, &[1, 1]).mul(&poly(3, &[1, 1])).unwrap(),
            poly(3, &[1, 2, 1])
        );
        assert_eq!(
            poly(5, &[1, 0, 0, 1]).mul(&poly(5, &[1, 0, 0, 1])).unwrap(),
            poly(5, &[1, 0, 0, 2, 0, 0, 1])
        );
        let f = poly(7, &[3, 0, 5, 1]);
        assert_eq!(f.mul(&Poly::one(k(7))).unwrap(), f);
        assert_eq!(f.mul(&poly(7, &[2, 1])).unwrap().degree(), Some(4));
    }

    #[test]
    fn mixed_fields_rejected() {
        assert!(matches!(
            poly(3, &[1, 1]).mul(&poly(5, &[1, 1])),
            Err(Error::MixedField)
        ));
    }

    #[test]
    fn half_power_examples() {
        assert_eq!(
            poly(3, &[0, 1, 0, 1]).half_power().values(),
            vec![0, 1, 0, 1]
        );
        assert_eq!(
            poly(5, &[1, 0, 0, 1]).half_power().values(),
            vec![1, 0, 0, 2, 0, 0, 1]
        );
        let c = poly(7, &[1, 0, 0, 1]).half_power();
        assert_eq!(c.values(), vec![1, 0, 0, 3, 0, 0, 3, 0, 0, 1]);
        assert_eq!(c.get(6).value(), 3);
        assert_eq!(c.get(-1), Elt::ZERO);
        assert_eq!(c.get(10), Elt::ZERO);
    }

    #[test]
    fn squarefree_examples() {
        assert!(poly(3, &[0, 1, 0, 1]).is_squarefree());
        assert!(!poly(5, &[0, 0, 1]).is_squarefree());
        assert!(!poly(5, &[0, 0, 1, 1]).is_squarefree());
        // x^3 + 1 = (x + 1)^3 over F_3: derivative vanishes
        assert!(!poly(3, &[1, 0, 0, 1]).is_squarefree());
        assert!(poly(7, &[1, 0, 0, 1]).is_squarefree());
    }

    #[test]
    fn affine_substitution_examples() {
        let f = poly(7, &[3, 1, 0, 1]);
        assert_eq!(
            f.affine_substitute(Elt::ONE, Elt::ZERO, Elt::ONE).unwrap(),
            f
        );
        let kk = k(3);
        assert_eq!(
            poly(3, &[0, 0, 1])
                .affine_substitute(Elt::ONE, kk.elt(1), Elt::ONE)
                .unwrap(),
            poly(3, &[1, 2, 1])
        );
        let k5 = k(5);
        assert_eq!(
            poly(5, &[0, 1, 0, 1])
                .affine_substitute(Elt::ONE, Elt::ZERO, k5.elt(2))
                .unwrap(),
            poly(5, &[0, 4, 0, 4])
        );
        assert!(matches!(
            f.affine_substitute(Elt::ZERO, Elt::ONE, Elt::ONE),
            Err(Error::BadTransform)
        ));
        assert!(matches!(
            f.affine_substitute(Elt::ONE, Elt::ONE, Elt::ZERO),
            Err(Error::BadTransform)
        ));
    }

    #[test]
    fn division_with_remainder() {
        let a = poly(5, &[1, 2, 3, 4, 1]);
        let b = poly(5, &[2, 0, 3]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
        assert!(r.degree().is_none_or(|d| d < 2));
        assert!(matches!(
            a.div_rem(&Poly::zero(k(5))),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn irreducibility() {
        assert!(poly(3, &[1, 0, 1]).is_irreducible());
        assert!(!poly(3, &[2, 0, 1]).is_irreducible());
        assert_eq!(
            poly(3, &[1, 2, 0, 1]).is_irreducible(),
            no_roots(3, &[1, 2, 0, 1])
        );
        // (x^2+1)^2 has no roots but is reducible
        assert!(!poly(3, &[1, 0, 2, 0, 1]).is_irreducible());
        // count monic irreducible quartics over F_3: (3^4 - 3^2)/4 = 18
        let count = (0..81u64)
            .filter(|i| poly(3, &[i % 3, (i / 3) % 3, (i / 9) % 3, i / 27, 1]).is_irreducible())
            .count();
        assert_eq!(count, 18);
    }

    fn no_roots(p: u64, c: &[u64]) -> bool {
        let f = poly(p, c);
        k(p).elements().all(|x| !f.eval(x).is_zero())
    }

    fn naive_power(f: &Poly, e: u64) -> Poly {
        (0..e).fold(Poly::one(*f.field()), |acc, _| acc.mul(f).unwrap())
    }

    fn random_poly(p: u64, raw: &[u64], lead: u64) -> Poly {
        let mut c: Vec<u64> = raw.iter().map(|x| x % p).collect();
        c.push(1 + lead % (p - 1));
        poly(p, &c)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn half_power_matches_repeated_multiplication(
            p in prop::sample::select(vec![3u64, 5, 7, 11, 13]),
            raw in prop::collection::vec(0u64..100, 3..12),
            lead in 0u64..100,
        ) {
            let f = random_poly(p, &raw, lead);
            let c = f.half_power();
            let naive = naive_power(&f, (p - 1) / 2);
            prop_assert_eq!(c.as_slice(), naive.coeffs());
            let d = f.degree().unwrap();
            prop_assert_eq!(c.top(), d * (p as usize - 1) / 2);
        }

        #[test]
        fn squarefree_invariant_under_affine_maps(
            p in prop::sample::select(vec![3u64, 5, 7, 11, 13]),
            raw in prop::collection::vec(0u64..100, 2..10),
            lead in 0u64..100,
            a in 1u64..1000, b in 0u64..1000, g in 1u64..1000,
        ) {
            let kk = k(p);
            prop_assume!(a % p != 0 && g % p != 0);
            let f = random_poly(p, &raw, lead);
            let h = f.affine_substitute(kk.elt(a), kk.elt(b), kk.elt(g)).unwrap();
            prop_assert_eq!(f.is_squarefree(), h.is_squarefree());
            prop_assert_eq!(f.degree(), h.degree());
        }
    }
}
