//! Brute-force point counting and the L-polynomial, used as an independent
//! check on p-ranks computed from the Hasse–Witt matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::derham::CurveSpec;
use crate::error::{Error, Result};
use crate::gf::{ExtField, PrimeField};
use crate::upoly::Poly;

pub const DEFAULT_SEED: u64 = 0x5eed_d1e0_d0e7;

/// Fields larger than this are not enumerated.
pub const MAX_ENUMERATION: u64 = 1 << 20;

/// Seeded random search for a monic irreducible polynomial of degree `k`.
pub fn find_irreducible(field: PrimeField, k: usize, seed: u64) -> Result<Poly> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 32) ^ field.p());
    loop {
        let mut c: Vec<u64> = (0..k).map(|_| rng.gen_range(0..field.p())).collect();
        c.push(1);
        let m = Poly::from_u64(field, &c);
        if m.is_irreducible() {
            return Ok(m);
        }
    }
}

/// `#C(F_q)` for the field `ext`: affine points plus the points over infinity.
pub fn count_points_in(curve: &CurveSpec, ext: &ExtField) -> Result<u64> {
    let q = ext
        .order()
        .filter(|&q| q <= MAX_ENUMERATION)
        .ok_or(Error::TooLarge(ext.order().unwrap_or(u64::MAX)))?;
    let f = curve.poly();
    let affine: i64 = if ext.degree() == 1 {
        let k = curve.field();
        k.elements()
            .map(|x| 1 + k.quadratic_character(f.eval(x)) as i64)
            .sum()
    } else {
        (0..q)
            .map(|i| {
                let x = ext.element(i);
                1 + ext.quadratic_character(&f.eval_ext(ext, &x)) as i64
            })
            .sum()
    };
    let at_infinity = if curve.degree() % 2 == 1 {
        1
    } else {
        // two points iff a_d is a square in F_q
        let k = curve.field();
        let lead = curve.poly().leading();
        if k.pow(lead, (q - 1) / 2) == crate::gf::Elt::ONE {
            2
        } else {
            0
        }
    };
    Ok(affine as u64 + at_infinity)
}

/// `#C(F_{p^k})`, with the extension modulus found from `seed`.
pub fn count_points(curve: &CurveSpec, k: usize, seed: u64) -> Result<u64> {
    let ext = ExtField::new(find_irreducible(*curve.field(), k, seed)?)?;
    count_points_in(curve, &ext)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPoly {
    pub p: u64,
    pub genus: usize,
    /// `l_0..l_{2g}`.
    pub coeffs: Vec<i64>,
    /// `N_1..N_g`.
    pub counts: Vec<u64>,
    /// Moduli of `F_{p^k}`, `k = 1..g`, ascending coefficients.
    pub moduli: Vec<Vec<u64>>,
    pub seed: u64,
}

fn within_weil_bound(count: u64, q: u64, g: usize) -> bool {
    let dev = count as i128 - q as i128 - 1;
    dev * dev <= 4 * (g as i128) * (g as i128) * q as i128
}

/// Builds `L(T)` from `N_1..N_g` via `k l_k = Σ_{i=1}^k s_i l_{k-i}`,
/// `s_i = N_i - (p^i + 1)`, then the functional equation.
pub fn l_polynomial(curve: &CurveSpec, seed: u64) -> Result<LPoly> {
    let g = curve.genus();
    let p = curve.p();
    let mut counts = Vec::with_capacity(g);
    let mut moduli = Vec::with_capacity(g);
    for k in 1..=g {
        let m = find_irreducible(*curve.field(), k, seed)?;
        let ext = ExtField::new(m.clone())?;
        let n = count_points_in(curve, &ext)?;
        let q = ext.order().expect("enumerated field has a finite order");
        if !within_weil_bound(n, q, g) {
            return Err(Error::WeilBound { q, count: n });
        }
        counts.push(n);
        moduli.push(m.to_u64());
    }
    let coeffs = l_from_counts(p, g, &counts)?;
    Ok(LPoly {
        p,
        genus: g,
        coeffs,
        counts,
        moduli,
        seed,
    })
}

/// The integer recurrence on its own, for counts obtained elsewhere.
pub fn l_from_counts(p: u64, g: usize, counts: &[u64]) -> Result<Vec<i64>> {
    if counts.len() < g {
        return Err(Error::InvalidArgument(format!(
            "need {g} point counts, got {}",
            counts.len()
        )));
    }
    let p = p as i64;
    let s: Vec<i64> = (1..=g)
        .map(|k| counts[k - 1] as i64 - (p.pow(k as u32) + 1))
        .collect();
    let mut l = vec![0i64; 2 * g + 1];
    l[0] = 1;
    for k in 1..=g {
        let acc: i64 = (1..=k).map(|i| s[i - 1] * l[k - i]).sum();
        if acc % k as i64 != 0 {
            return Err(Error::InexactDivision(k));
        }
        l[k] = acc / k as i64;
    }
    for k in 0..g {
        l[2 * g - k] = p.pow((g - k) as u32) * l[k];
    }
    Ok(l)
}

/// Degree of `L(T) mod p`.
pub fn p_rank_from_l(l: &LPoly) -> usize {
    let p = l.p as i64;
    l.coeffs
        .iter()
        .rposition(|&c| c.rem_euclid(p) != 0)
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn curve(p: u64, c: &[u64]) -> CurveSpec {
        CurveSpec::new(p, c).unwrap()
    }

    fn lpoly(p: u64, coeffs: Vec<i64>) -> LPoly {
        LPoly {
            p,
            genus: coeffs.len() / 2,
            coeffs,
            counts: vec![],
            moduli: vec![],
            seed: 0,
        }
    }

    #[test]
    fn irreducible_search() {
        let m = find_irreducible(k(5), 1, DEFAULT_SEED).unwrap();
        assert_eq!(m.degree(), Some(1));
        for (p, deg) in [(3, 2), (3, 3), (5, 2), (7, 3), (11, 4)] {
            let m = find_irreducible(k(p), deg, DEFAULT_SEED).unwrap();
            assert_eq!(m.degree(), Some(deg));
            assert_eq!(m.leading().value(), 1);
            // x^{p^k} ≡ x (mod m)
            let mut x = Poly::x(k(p));
            for _ in 0..deg {
                x = x.pow_mod(p, &m).unwrap();
            }
            assert_eq!(x, Poly::x(k(p)));
            assert!(ExtField::new(m.clone()).is_ok());
            assert_eq!(find_irreducible(k(p), deg, DEFAULT_SEED).unwrap(), m);
        }
        // x^2 + 1 has no roots over F_3
        assert!(Poly::from_u64(k(3), &[1, 0, 1]).is_irreducible());
    }

    #[test]
    fn point_counts() {
        assert_eq!(
            count_points(&curve(3, &[0, 1, 0, 1]), 1, DEFAULT_SEED).unwrap(),
            4
        );
        assert_eq!(
            count_points(&curve(7, &[1, 0, 0, 1]), 1, DEFAULT_SEED).unwrap(),
            12
        );
        assert_eq!(
            count_points(&curve(5, &[1, 0, 0, 1]), 1, DEFAULT_SEED).unwrap(),
            6
        );
    }

    #[test]
    fn point_counts_match_naive_enumeration_in_f9() {
        // y^2 = x^5 + 1 over F_9 = F_3[t]/(t^2+1): count (x, y) pairs directly
        let c = curve(3, &[1, 0, 0, 0, 0, 1]);
        let ext = ExtField::new(Poly::from_u64(k(3), &[1, 0, 1])).unwrap();
        let mut affine = 0;
        for i in 0..9 {
            let x = ext.element(i);
            let fx = c.poly().eval_ext(&ext, &x);
            for j in 0..9 {
                let y = ext.element(j);
                if ext.mul(&y, &y) == fx {
                    affine += 1;
                }
            }
        }
        assert_eq!(count_points_in(&c, &ext).unwrap(), affine + 1);
    }

    #[test]
    fn even_degree_points_at_infinity() {
        // a_d = 2 is a non-square mod 3 but a square in F_9
        let c = curve(3, &[1, 1, 0, 0, 2]);
        let n1 = count_points(&c, 1, DEFAULT_SEED).unwrap();
        let affine: u64 = k(3)
            .elements()
            .map(|x| (1 + k(3).quadratic_character(c.poly().eval(x))) as u64)
            .sum();
        assert_eq!(n1, affine);
        let ext = ExtField::new(Poly::from_u64(k(3), &[1, 0, 1])).unwrap();
        let affine9: u64 = (0..9)
            .map(|i| {
                (1 + ext.quadratic_character(&c.poly().eval_ext(&ext, &ext.element(i)))) as u64
            })
            .sum();
        assert_eq!(count_points_in(&c, &ext).unwrap(), affine9 + 2);
    }

    #[test]
    fn too_large_fields_rejected() {
        let c = curve(1009, &[1, 0, 0, 1]);
        let err = count_points(&c, 3, DEFAULT_SEED).unwrap_err();
        assert!(matches!(err, Error::TooLarge(_)));
    }

    #[test]
    fn l_polynomial_examples() {
        let l = l_polynomial(&curve(3, &[0, 1, 0, 1]), DEFAULT_SEED).unwrap();
        assert_eq!(l.coeffs, vec![1, 0, 3]);
        assert_eq!(l.counts, vec![4]);
        let l = l_polynomial(&curve(7, &[1, 0, 0, 1]), DEFAULT_SEED).unwrap();
        assert_eq!(l.coeffs, vec![1, 4, 7]);
        for c in [
            curve(5, &[1, 2, 0, 3, 1, 1]),
            curve(3, &[1, 0, 1, 0, 0, 0, 1]),
        ] {
            let l = l_polynomial(&c, DEFAULT_SEED).unwrap();
            let g = c.genus();
            assert_eq!(l.coeffs[0], 1);
            assert_eq!(l.coeffs[2 * g], (c.p() as i64).pow(g as u32));
            assert_eq!(l.moduli.len(), g);
        }
    }

    #[test]
    fn inexact_division_detected() {
        // s_1 = 1, s_2 = 0 gives 2 l_2 = 1
        assert!(matches!(
            l_from_counts(3, 2, &[5, 10]),
            Err(Error::InexactDivision(2))
        ));
    }

    #[test]
    fn p_rank_from_l_examples() {
        assert_eq!(p_rank_from_l(&lpoly(3, vec![1, 0, 3])), 0);
        assert_eq!(p_rank_from_l(&lpoly(7, vec![1, 4, 7])), 1);
        assert_eq!(p_rank_from_l(&lpoly(5, vec![1])), 0);
        assert_eq!(p_rank_from_l(&lpoly(5, vec![1, -5, 10, -5, 25])), 0);
        assert_eq!(p_rank_from_l(&lpoly(5, vec![1, -5, 11, -25, 25])), 2);
    }
}
