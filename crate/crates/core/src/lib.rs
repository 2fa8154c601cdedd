//! Frobenius and Verschiebung on the de Rham cohomology of hyperelliptic
//! curves `y^2 = f(x)` over `F_p`, and the p-torsion invariants they determine.

pub mod analysis;
pub mod census;
pub mod derham;
pub mod dieudonne;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod upoly;
pub mod zeta;

pub use derham::{build_module, CurveSpec, DeRhamFV};
pub use dieudonne::{eo_type, EoType};
pub use error::{Axiom, Error, Result};
pub use gf::{Elt, ExtElt, ExtField, PrimeField};
pub use linalg::{Mat, Subspace};
pub use upoly::Poly;
