//! p-torsion invariants read off a [`DeRhamFV`]: p-rank, a-number, the
//! canonical filtration and the Ekedahl–Oort elementary sequence.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::derham::{hasse_witt, CurveSpec, DeRhamFV};
use crate::error::{Axiom, Error, Result};
use crate::linalg::{Subspace, Twist};

/// One step `N` of the canonical filtration with cached `dim F(N)`, `dim V(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub space: Subspace,
    pub dim_f_image: usize,
    pub dim_v_image: usize,
}

/// The coarsest flag containing `0` and the whole module that is stable under
/// `N ↦ V(N)` and `N ↦ F^{-1}(N)`, ordered by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<FiltrationStep>,
    rounds: usize,
}

impl Filtration {
    pub fn steps(&self) -> &[FiltrationStep] {
        &self.steps
    }

    /// Fixpoint rounds until no new subspace appeared.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.space.dim()).collect()
    }
}

/// Elementary sequence `ψ(1..g)` with the p-rank and a-number it determines.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EoType {
    pub psi: Vec<usize>,
    pub p_rank: usize,
    pub a_number: usize,
}

impl EoType {
    pub fn genus(&self) -> usize {
        self.psi.len()
    }
}

/// Checks `ψ(1) ∈ {0,1}` and `ψ(i+1) - ψ(i) ∈ {0,1}`.
pub fn is_elementary_sequence(psi: &[usize]) -> bool {
    let mut prev = 0usize;
    for &x in psi {
        if x != prev && x != prev + 1 {
            return false;
        }
        prev = x;
    }
    true
}

/// `max{i : ψ(i) = i}` with `ψ(0) = 0`.
pub fn p_rank_of_sequence(psi: &[usize]) -> usize {
    psi.iter()
        .enumerate()
        .filter(|&(i, &x)| x == i + 1)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0)
}

/// Stable rank of the Hasse–Witt matrix.
pub fn p_rank(curve: &CurveSpec) -> Result<usize> {
    hasse_witt(curve).stable_rank(Twist::PthPower)
}

/// `dim(ker F ∩ ker V)`, cross-checked against `g - rank(HW)`.
pub fn a_number(module: &DeRhamFV) -> Result<usize> {
    let kernels = module.kernel_f().intersect(&module.kernel_v())?.dim();
    let hasse_witt = module.genus() - module.eta_block().rank();
    if kernels != hasse_witt {
        return Err(Error::AxiomViolation(Axiom::ANumberRoutes {
            kernels,
            hasse_witt,
        }));
    }
    Ok(kernels)
}

pub fn canonical_filtration(module: &DeRhamFV) -> Result<Filtration> {
    let k = *module.field();
    let n = 2 * module.genus();
    let (f, v) = (module.frobenius(), module.verschiebung());
    let cap = 16 * module.genus().max(1);

    let mut found: Vec<Subspace> = vec![Subspace::zero(k, n), Subspace::full(k, n)];
    let mut seen: HashSet<Subspace> = found.iter().cloned().collect();
    let mut frontier = found.clone();
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        if rounds > cap {
            return Err(Error::FiltrationDiverged(cap));
        }
        let mut next = Vec::new();
        for s in &frontier {
            for t in [s.image(v)?, s.preimage(f)?] {
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        found.extend(next.iter().cloned());
        frontier = next;
    }

    found.sort_by_key(|s| s.dim());
    for w in found.windows(2) {
        if w[0].dim() == w[1].dim() || !w[0].is_subspace_of(&w[1]) {
            return Err(Error::NotAChain);
        }
    }
    let steps = found
        .into_iter()
        .map(|space| {
            let dim_f_image = space.image(f).map(|s| s.dim())?;
            let dim_v_image = space.image(v).map(|s| s.dim())?;
            Ok(FiltrationStep {
                space,
                dim_f_image,
                dim_v_image,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Filtration { steps, rounds })
}

/// `ψ(i) = dim V(N_i)`, interpolated between canonical steps where `dim V(N)`
/// grows with slope 0 or 1.
pub fn eo_type(module: &DeRhamFV) -> Result<EoType> {
    let g = module.genus();
    let filt = canonical_filtration(module)?;
    let mut psi = vec![0usize; g + 1];
    for w in filt.steps.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let (d0, d1) = (lo.space.dim(), hi.space.dim());
        let rise = hi.dim_v_image.checked_sub(lo.dim_v_image);
        let slope = match rise {
            Some(0) => 0,
            Some(r) if r == d1 - d0 => 1,
            _ => {
                return Err(Error::AxiomViolation(Axiom::ElementarySlope {
                    from_dim: d0,
                    to_dim: d1,
                }))
            }
        };
        for (i, x) in psi.iter_mut().enumerate().take(d1.min(g) + 1).skip(d0) {
            *x = lo.dim_v_image + slope * (i - d0);
        }
    }
    let psi = psi.split_off(1);
    if !is_elementary_sequence(&psi) {
        return Err(Error::AxiomViolation(Axiom::ElementarySequence));
    }

    let a = a_number(module)?;
    let f = p_rank_of_sequence(&psi);
    let stable = module.frobenius().stable_rank(Twist::PthPower)?;
    if f != stable || module.eta_block().stable_rank(Twist::PthPower)? != stable {
        return Err(Error::AxiomViolation(Axiom::PRankRoutes {
            psi: f,
            stable_rank: stable,
        }));
    }
    let last = psi.last().copied().unwrap_or(0);
    if g - last != a || f + a > g {
        return Err(Error::AxiomViolation(Axiom::ANumberRoutes {
            kernels: a,
            hasse_witt: g - last,
        }));
    }
    Ok(EoType {
        psi,
        p_rank: f,
        a_number: a,
    })
}

pub const GLASS_PRIES_G4: [usize; 4] = [1, 1, 2, 3];
pub const GLASS_PRIES_G5: [usize; 5] = [1, 2, 2, 3, 4];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub ordinary: bool,
    pub p_rank_zero: bool,
    /// Hasse–Witt matrix is zero, so the Jacobian is supersingular.
    pub supersingular_by_yui: bool,
    pub glass_pries_g4: bool,
    pub glass_pries_g5: bool,
}

pub fn classify(module: &DeRhamFV, curve: &CurveSpec) -> Result<Classification> {
    let eo = eo_type(module)?;
    let g = curve.genus();
    Ok(Classification {
        ordinary: eo.p_rank == g,
        p_rank_zero: eo.p_rank == 0,
        supersingular_by_yui: hasse_witt(curve).is_zero(),
        glass_pries_g4: g == 4 && eo.psi == GLASS_PRIES_G4,
        glass_pries_g5: g == 5 && eo.psi == GLASS_PRIES_G5,
    })
}
