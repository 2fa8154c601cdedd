//! Frobenius and Verschiebung on `H^1_dR` of `y^2 = f(x)`.
//!
//! Basis order is `(η̃_1..η̃_g, τ̃_1..τ̃_g)`: `η̃_j` is the class whose Čech
//! component is `y/x^j`, and `τ̃_j` is the holomorphic form `x^{j-1} dx/y`.
//! Matrices act on column vectors, so column `j` holds the image of basis
//! vector `j`.
//!
//! With `c_k` the coefficients of `f^((p-1)/2)` (zero outside `[0, N]`):
//!
//! * `F(η̃_j) = Σ_i c_{pj-i} η̃_i + Σ_i ½ Σ_{k=g+1}^{d-i} (k-i) c_{pj-k} a_{k+i} τ̃_i`
//! * `F(τ̃_j) = 0`
//! * `V(η̃_j) = Σ_i (Σ_{k=0}^{j} ½ (k-2j) a_k c_{ip-k+j})^{1/p} τ̃_i`
//! * `V(τ̃_j) = Σ_i c_{ip-j}^{1/p} τ̃_i`
//!
//! The factor ½ in both mixed blocks comes from writing `d(y/x^j)` against
//! `dx/2y`; it has to appear in both or in neither for `VF = 0` to hold.

use crate::error::{Axiom, Error, Result};
use crate::gf::{Elt, PrimeField};
use crate::linalg::{Mat, Subspace};
use crate::upoly::{CoeffVector, Poly};

/// A smooth hyperelliptic curve `y^2 = f(x)` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    poly: Poly,
    genus: usize,
}

impl CurveSpec {
    /// `coeffs` are `a_0, a_1, ..., a_d` in ascending order.
    pub fn new(p: u64, coeffs: &[u64]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Self::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: PrimeField, coeffs: &[u64]) -> Result<Self> {
        if coeffs.last().is_none_or(|&a| field.elt(a).is_zero()) {
            return Err(Error::InvalidCurve(
                "leading coefficient a_d is zero".into(),
            ));
        }
        Self::from_poly(Poly::from_u64(field, coeffs))
    }

    pub fn from_poly(poly: Poly) -> Result<Self> {
        let d = poly.degree().unwrap_or(0);
        if d < 3 {
            return Err(Error::InvalidCurve(format!("degree {d} < 3")));
        }
        if !poly.is_squarefree() {
            return Err(Error::InvalidCurve("f is not squarefree".into()));
        }
        Ok(CurveSpec {
            poly,
            genus: (d - 1) / 2,
        })
    }

    pub fn field(&self) -> &PrimeField {
        self.poly.field()
    }

    pub fn p(&self) -> u64 {
        self.field().p()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.coeffs().len() - 1
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `a_k`, zero outside `[0, d]`.
    pub fn a(&self, k: i64) -> Elt {
        if k < 0 {
            Elt::ZERO
        } else {
            self.poly.coeff(k as usize)
        }
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.poly.to_u64()
    }
}

impl std::fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^2 = {} over F_{}", self.poly, self.p())
    }
}

pub fn c_coeffs(curve: &CurveSpec) -> CoeffVector {
    curve.poly.half_power()
}

/// `A_{i,j} = c_{ip-j}` for `i, j = 1..g`.
pub fn hasse_witt(curve: &CurveSpec) -> Mat {
    hasse_witt_from(curve, &c_coeffs(curve))
}

fn hasse_witt_from(curve: &CurveSpec, c: &CoeffVector) -> Mat {
    let g = curve.genus;
    let p = curve.p() as i64;
    let mut a = Mat::zeros(*curve.field(), g, g);
    for i in 1..=g {
        for j in 1..=g {
            a.set(i - 1, j - 1, c.get(i as i64 * p - j as i64));
        }
    }
    a
}

pub fn verschiebung_matrix(curve: &CurveSpec) -> Mat {
    verschiebung_from(curve, &c_coeffs(curve))
}

fn verschiebung_from(curve: &CurveSpec, c: &CoeffVector) -> Mat {
    let k = *curve.field();
    let g = curve.genus;
    let p = curve.p() as i64;
    let half = k.inv(k.elt(2)).expect("p is odd");
    let mut v = Mat::zeros(k, 2 * g, 2 * g);
    for i in 1..=g as i64 {
        for j in 1..=g as i64 {
            let mut s = Elt::ZERO;
            for kk in 0..=j {
                let term = k.mul(
                    k.mul(k.from_i64(kk - 2 * j), half),
                    k.mul(curve.a(kk), c.get(i * p - kk + j)),
                );
                s = k.add(s, term);
            }
            let row = g + i as usize - 1;
            v.set(row, j as usize - 1, k.pth_root(s));
            v.set(row, g + j as usize - 1, k.pth_root(c.get(i * p - j)));
        }
    }
    v
}

pub fn frobenius_matrix(curve: &CurveSpec) -> Mat {
    frobenius_from(curve, &c_coeffs(curve))
}

fn frobenius_from(curve: &CurveSpec, c: &CoeffVector) -> Mat {
    let k = *curve.field();
    let g = curve.genus;
    let d = curve.degree() as i64;
    let p = curve.p() as i64;
    let half = k.inv(k.elt(2)).expect("p is odd");
    let mut f = Mat::zeros(k, 2 * g, 2 * g);
    for j in 1..=g as i64 {
        let col = j as usize - 1;
        for i in 1..=g as i64 {
            f.set(i as usize - 1, col, c.get(p * j - i));
            let mut s = Elt::ZERO;
            for kk in (g as i64 + 1)..=(d - i) {
                let term = k.mul(
                    k.from_i64(kk - i),
                    k.mul(c.get(p * j - kk), curve.a(kk + i)),
                );
                s = k.add(s, term);
            }
            f.set(g + i as usize - 1, col, k.mul(half, s));
        }
    }
    f
}

/// `F` and `V` on `H^1_dR`, checked against the Dieudonné module axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeRhamFV {
    genus: usize,
    mat_f: Mat,
    mat_v: Mat,
}

impl DeRhamFV {
    /// Wraps a pair of `2g × 2g` matrices after checking every axiom.
    pub fn from_matrices(genus: usize, mat_f: Mat, mat_v: Mat) -> Result<Self> {
        let m = DeRhamFV {
            genus,
            mat_f,
            mat_v,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn field(&self) -> &PrimeField {
        self.mat_f.field()
    }

    pub fn frobenius(&self) -> &Mat {
        &self.mat_f
    }

    pub fn verschiebung(&self) -> &Mat {
        &self.mat_v
    }

    /// The `η̃ → η̃` block of `F`.
    pub fn eta_block(&self) -> Mat {
        self.mat_f.block(0, self.genus, 0, self.genus)
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.genus;
        let n = 2 * g;
        let (f, v) = (&self.mat_f, &self.mat_v);
        let violation = |a| Err(Error::AxiomViolation(a));
        if f.rows() != n
            || f.cols() != n
            || v.rows() != n
            || v.cols() != n
            || f.field() != v.field()
        {
            return violation(Axiom::Shape);
        }
        for i in 0..n {
            for j in g..n {
                if !f.get(i, j).is_zero() {
                    return violation(Axiom::FrobeniusKillsTau);
                }
            }
        }
        for i in 0..g {
            for j in 0..n {
                if !v.get(i, j).is_zero() {
                    return violation(Axiom::VerschiebungEtaRowsZero);
                }
            }
        }
        if !f.mul(v)?.is_zero() {
            return violation(Axiom::FrobeniusAfterVerschiebung);
        }
        if !v.mul(f)?.is_zero() {
            return violation(Axiom::VerschiebungAfterFrobenius);
        }
        let (rf, rv) = (f.rank(), v.rank());
        if rf != g {
            return violation(Axiom::FrobeniusRank {
                expected: g,
                found: rf,
            });
        }
        if rv != g {
            return violation(Axiom::VerschiebungRank {
                expected: g,
                found: rv,
            });
        }
        if f.column_space() != v.kernel() {
            return violation(Axiom::ImageFrobeniusIsKernelVerschiebung);
        }
        if v.column_space() != f.kernel() {
            return violation(Axiom::ImageVerschiebungIsKernelFrobenius);
        }
        Ok(())
    }

    pub fn kernel_f(&self) -> Subspace {
        self.mat_f.kernel()
    }

    pub fn kernel_v(&self) -> Subspace {
        self.mat_v.kernel()
    }
}

/// Assembles `F` and `V` for the curve and verifies the module structure,
/// including agreement of both operators with the Hasse–Witt matrix.
pub fn build_module(curve: &CurveSpec) -> Result<DeRhamFV> {
    let c = c_coeffs(curve);
    let g = curve.genus;
    let k = *curve.field();
    let mat_f = frobenius_from(curve, &c);
    let mat_v = verschiebung_from(curve, &c);
    let hw = hasse_witt_from(curve, &c);
    if mat_f.block(0, g, 0, g) != hw.transpose()
        || mat_v.block(g, 2 * g, g, 2 * g) != hw.map(|x| k.pth_root(x))
    {
        return Err(Error::AxiomViolation(Axiom::HasseWittBlock));
    }
    DeRhamFV::from_matrices(g, mat_f, mat_v)
}
