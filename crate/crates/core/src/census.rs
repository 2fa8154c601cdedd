//! Exhaustive enumeration of smooth curves `y^2 = f(x)` over `F_p`, with
//! EO-type tallies, witness search and the Fermat-curve scan.
//!
//! Curves are visited in a fixed canonical order: degree ascending, then the
//! coefficient vector `(a_d, ..., a_0)` lexicographically. Work is split into
//! blocks sharing `(d, a_d, a_{d-1})`; block results are merged in canonical
//! order, so reports do not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derham::{build_module, CurveSpec};
use crate::dieudonne::{eo_type, is_elementary_sequence, p_rank, EoType};
use crate::error::{Error, Result};
use crate::gf::{is_prime, PrimeField};
use crate::upoly::Poly;
use crate::zeta::{l_polynomial, p_rank_from_l};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Mode {
    /// Degrees `2g+1` and `2g+2`, every nonzero leading coefficient.
    Full,
    /// Degrees `2g+1` and `2g+2`, `a_d = 1`.
    Monic,
    /// Degree `2g+1`, `a_d = 1`.
    MonicOdd,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Monic => "monic",
            Mode::MonicOdd => "monicOdd",
        }
    }

    fn degrees(self, g: usize) -> Vec<usize> {
        match self {
            Mode::MonicOdd => vec![2 * g + 1],
            _ => vec![2 * g + 1, 2 * g + 2],
        }
    }

    fn leads(self, p: u64) -> Range<u64> {
        match self {
            Mode::Full => 1..p,
            _ => 1..2,
        }
    }

    fn admits(self, g: usize, coeffs: &[u64]) -> bool {
        let d = coeffs.len() - 1;
        self.degrees(g).contains(&d) && (self == Mode::Full || coeffs[d] == 1)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "monic" => Ok(Mode::Monic),
            "monicOdd" | "monic-odd" => Ok(Mode::MonicOdd),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?} (expected full, monic or monicOdd)"
            ))),
        }
    }
}

/// All curves with fixed `(d, a_d, a_{d-1})`; the remaining coefficients
/// are the base-`p` digits of an index, `a_0` least significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Block {
    degree: usize,
    lead: u64,
    next: u64,
}

impl Block {
    fn len(&self, p: u64) -> u64 {
        p.pow(self.degree as u32 - 1)
    }

    fn coeffs(&self, p: u64, mut index: u64) -> Vec<u64> {
        let d = self.degree;
        let mut c = vec![0u64; d + 1];
        for a in c.iter_mut().take(d - 1) {
            *a = index % p;
            index /= p;
        }
        c[d - 1] = self.next;
        c[d] = self.lead;
        c
    }
}

fn check_params(p: u64, g: usize) -> Result<PrimeField> {
    if g == 0 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    let field = PrimeField::new(p)?;
    let exponent = 2 * g + 1;
    if (p as f64).powi(exponent as i32) > 1e15 {
        return Err(Error::TooLarge(p));
    }
    Ok(field)
}

fn blocks(p: u64, g: usize, mode: Mode) -> Vec<Block> {
    let mut out = Vec::new();
    for degree in mode.degrees(g) {
        for lead in mode.leads(p) {
            for next in 0..p {
                out.push(Block { degree, lead, next });
            }
        }
    }
    out
}

fn pool(shards: usize) -> Result<rayon::ThreadPool> {
    if shards == 0 {
        return Err(Error::InvalidArgument("shards must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(shards)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))
}

/// The curve for `coeffs`, or `None` when `f` is not squarefree.
fn smooth_curve(field: PrimeField, coeffs: &[u64]) -> Option<CurveSpec> {
    let poly = Poly::from_u64(field, coeffs);
    if !poly.is_squarefree() {
        return None;
    }
    CurveSpec::from_poly(poly).ok()
}

fn at_curve(curve: &CurveSpec, source: Error) -> Error {
    Error::AtCurve {
        p: curve.p(),
        coeffs: curve.coeffs(),
        source: Box::new(source),
    }
}

fn curve_type(curve: &CurveSpec) -> Result<EoType> {
    build_module(curve)
        .and_then(|m| eo_type(&m))
        .map_err(|e| at_curve(curve, e))
}

/// Every smooth curve of genus `g` for `mode`, in canonical order.
pub fn enumerate_curves(p: u64, g: usize, mode: Mode) -> Result<impl Iterator<Item = CurveSpec>> {
    let field = check_params(p, g)?;
    Ok(blocks(p, g, mode)
        .into_iter()
        .flat_map(move |b| (0..b.len(p)).filter_map(move |i| smooth_curve(field, &b.coeffs(p, i)))))
}

/// Uniformly random smooth curve of genus `g` and degree `2g+1` or `2g+2`.
pub fn random_curve<R: Rng + ?Sized>(
    field: PrimeField,
    g: usize,
    even_degree: bool,
    rng: &mut R,
) -> CurveSpec {
    let d = 2 * g + 1 + even_degree as usize;
    let p = field.p();
    loop {
        let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        c.push(rng.gen_range(1..p));
        if let Some(curve) = smooth_curve(field, &c) {
            return curve;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TallyEntry {
    pub psi: Vec<usize>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub psi: Vec<usize>,
    /// `a_0, ..., a_d`.
    pub coeffs: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub p: u64,
    pub g: usize,
    pub mode: Mode,
    pub total: u64,
    /// Sorted by `psi`.
    pub tally: Vec<TallyEntry>,
    pub p_rank_counts: BTreeMap<usize, u64>,
    pub a_number_counts: BTreeMap<usize, u64>,
    /// First curve of each type in canonical order, sorted by `psi`.
    pub witnesses: Vec<Witness>,
    /// Counts of curves up to `x -> αx + β`, `y -> γy`, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso_classes: Option<Vec<TallyEntry>>,
}

impl SearchReport {
    /// `psi;count` rows sorted by `psi`, under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("psi;count\n");
        for e in &self.tally {
            out.push_str(&format!("{};{}\n", format_psi(&e.psi), e.count));
        }
        out
    }

    pub fn count(&self, psi: &[usize]) -> u64 {
        self.tally
            .iter()
            .find(|e| e.psi == psi)
            .map_or(0, |e| e.count)
    }
}

/// `[1,1,2,3]`.
pub fn format_psi(psi: &[usize]) -> String {
    let parts: Vec<String> = psi.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[derive(Default)]
struct Partial {
    total: u64,
    types: BTreeMap<Vec<usize>, (u64, Vec<u64>)>,
    p_rank: BTreeMap<usize, u64>,
    a_number: BTreeMap<usize, u64>,
    iso: BTreeMap<Vec<usize>, u64>,
}

impl Partial {
    /// Folds `later` in; witnesses already present win.
    fn absorb(&mut self, later: Partial) {
        self.total += later.total;
        for (psi, (n, coeffs)) in later.types {
            self.types.entry(psi).or_insert((0, coeffs)).0 += n;
        }
        for (k, n) in later.p_rank {
            *self.p_rank.entry(k).or_default() += n;
        }
        for (k, n) in later.a_number {
            *self.a_number.entry(k).or_default() += n;
        }
        for (k, n) in later.iso {
            *self.iso.entry(k).or_default() += n;
        }
    }
}

fn canonical_key(coeffs: &[u64]) -> (usize, Vec<u64>) {
    (coeffs.len(), coeffs.iter().rev().copied().collect())
}

/// True when `curve` is the canonically smallest member of its affine orbit
/// that the enumeration for `mode` also visits.
fn is_orbit_minimum(curve: &CurveSpec, g: usize, mode: Mode) -> bool {
    let k = *curve.field();
    let own = canonical_key(&curve.coeffs());
    let mut squares = BTreeSet::new();
    for x in 1..k.p() {
        squares.insert(k.mul(k.elt(x), k.elt(x)).value());
    }
    for alpha in 1..k.p() {
        for beta in 0..k.p() {
            for &gamma_sq in &squares {
                // γ⁻²f(αx+β) only depends on γ²; feed a square root of γ²
                let gamma = (1..k.p())
                    .find(|&y| k.mul(k.elt(y), k.elt(y)).value() == gamma_sq)
                    .expect("gamma_sq is a square");
                let image = curve
                    .poly()
                    .affine_substitute(k.elt(alpha), k.elt(beta), k.elt(gamma))
                    .expect("alpha and gamma are nonzero")
                    .to_u64();
                if mode.admits(g, &image) && canonical_key(&image) < own {
                    return false;
                }
            }
        }
    }
    true
}

fn tally_block(field: PrimeField, g: usize, mode: Mode, b: Block, iso: bool) -> Result<Partial> {
    let p = field.p();
    let mut part = Partial::default();
    for i in 0..b.len(p) {
        let coeffs = b.coeffs(p, i);
        let Some(curve) = smooth_curve(field, &coeffs) else {
            continue;
        };
        let eo = curve_type(&curve)?;
        part.total += 1;
        *part.p_rank.entry(eo.p_rank).or_default() += 1;
        *part.a_number.entry(eo.a_number).or_default() += 1;
        if iso && is_orbit_minimum(&curve, g, mode) {
            *part.iso.entry(eo.psi.clone()).or_default() += 1;
        }
        part.types.entry(eo.psi).or_insert((0, coeffs)).0 += 1;
    }
    Ok(part)
}

/// Tallies EO types over the whole enumeration using `shards` workers.
pub fn run_tally(p: u64, g: usize, mode: Mode, shards: usize) -> Result<SearchReport> {
    run_tally_with(p, g, mode, shards, false)
}

/// As [`run_tally`]; with `iso` set also counts affine isomorphism classes.
pub fn run_tally_with(
    p: u64,
    g: usize,
    mode: Mode,
    shards: usize,
    iso: bool,
) -> Result<SearchReport> {
    let field = check_params(p, g)?;
    let blocks = blocks(p, g, mode);
    let parts: Vec<Result<Partial>> = pool(shards)?.install(|| {
        blocks
            .par_iter()
            .map(|&b| tally_block(field, g, mode, b, iso))
            .collect()
    });
    let mut merged = Partial::default();
    for part in parts {
        merged.absorb(part?);
    }
    let tally = merged
        .types
        .iter()
        .map(|(psi, (count, _))| TallyEntry {
            psi: psi.clone(),
            count: *count,
        })
        .collect();
    let witnesses = merged
        .types
        .into_iter()
        .map(|(psi, (_, coeffs))| Witness { psi, coeffs })
        .collect();
    let iso_classes = iso.then(|| {
        merged
            .iso
            .into_iter()
            .map(|(psi, count)| TallyEntry { psi, count })
            .collect()
    });
    Ok(SearchReport {
        p,
        g,
        mode,
        total: merged.total,
        tally,
        p_rank_counts: merged.p_rank,
        a_number_counts: merged.a_number,
        witnesses,
        iso_classes,
    })
}

const CHUNK: u64 = 1 << 12;

/// First curve in canonical order whose type is `target`.
pub fn find_witness(
    p: u64,
    g: usize,
    target: &[usize],
    mode: Mode,
    shards: usize,
) -> Result<CurveSpec> {
    if target.len() != g {
        return Err(Error::InvalidTarget(format!(
            "{} has length {}, expected {g}",
            format_psi(target),
            target.len()
        )));
    }
    if !is_elementary_sequence(target) {
        return Err(Error::InvalidTarget(format!(
            "{} is not an elementary sequence",
            format_psi(target)
        )));
    }
    let field = check_params(p, g)?;
    let pool = pool(shards)?;
    let chunks: Vec<(Block, Range<u64>)> = blocks(p, g, mode)
        .into_iter()
        .flat_map(|b| {
            let n = b.len(p);
            (0..n.div_ceil(CHUNK)).map(move |j| (b, j * CHUNK..((j + 1) * CHUNK).min(n)))
        })
        .collect();

    let scan = |(b, range): &(Block, Range<u64>)| -> Option<Result<CurveSpec>> {
        for i in range.clone() {
            let Some(curve) = smooth_curve(field, &b.coeffs(p, i)) else {
                continue;
            };
            match curve_type(&curve) {
                Ok(eo) if eo.psi == target => return Some(Ok(curve)),
                Ok(_) => {}
                Err(e) => return Some(Err(e)),
            }
        }
        None
    };
    for batch in chunks.chunks(4 * shards) {
        let hits: Vec<Option<Result<CurveSpec>>> =
            pool.install(|| batch.par_iter().map(scan).collect());
        if let Some(hit) = hits.into_iter().flatten().next() {
            return hit;
        }
    }
    Err(Error::NotFound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatRow {
    pub p: u64,
    pub p_mod_d: u64,
    pub g: usize,
    pub p_rank: usize,
    pub ordinary: bool,
}

/// p-rank of `y^2 = x^d + 1` for each prime in `primes`.
pub fn fermat_scan(d: u64, primes: &[u64]) -> Result<Vec<FermatRow>> {
    if d < 3 || !is_prime(d) {
        return Err(Error::InvalidArgument(format!(
            "d = {d} is not an odd prime"
        )));
    }
    primes
        .iter()
        .map(|&p| {
            if p == d {
                return Err(Error::InvalidArgument(format!("p = d = {d} is excluded")));
            }
            let field = PrimeField::new(p)?;
            let mut coeffs = vec![0u64; d as usize + 1];
            coeffs[0] = 1;
            coeffs[d as usize] = 1;
            let curve = CurveSpec::from_coeffs(field, &coeffs)?;
            let f = p_rank(&curve)?;
            Ok(FermatRow {
                p,
                p_mod_d: p % d,
                g: curve.genus(),
                p_rank: f,
                ordinary: f == curve.genus(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleMismatch {
    pub coeffs: Vec<u64>,
    pub hasse_witt: usize,
    pub zeta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub p: u64,
    pub g: usize,
    pub mode: Mode,
    pub seed: u64,
    pub curves: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<OracleMismatch>,
}

/// Compares the Hasse–Witt stable rank with `deg(L mod p)` on one curve.
pub fn oracle_compare(curve: &CurveSpec, seed: u64) -> Result<Option<OracleMismatch>> {
    let hasse_witt = p_rank(curve).map_err(|e| at_curve(curve, e))?;
    let l = l_polynomial(curve, seed).map_err(|e| at_curve(curve, e))?;
    let zeta = p_rank_from_l(&l);
    Ok((hasse_witt != zeta).then(|| OracleMismatch {
        coeffs: curve.coeffs(),
        hasse_witt,
        zeta,
    }))
}

/// Runs both p-rank routes over the whole enumeration.
pub fn oracle_check(
    p: u64,
    g: usize,
    mode: Mode,
    seed: u64,
    shards: usize,
) -> Result<OracleReport> {
    let field = check_params(p, g)?;
    let blocks = blocks(p, g, mode);
    let parts: Vec<Result<(u64, Vec<OracleMismatch>)>> = pool(shards)?.install(|| {
        blocks
            .par_iter()
            .map(|b| {
                let mut seen = 0;
                let mut bad = Vec::new();
                for i in 0..b.len(p) {
                    if let Some(curve) = smooth_curve(field, &b.coeffs(p, i)) {
                        seen += 1;
                        bad.extend(oracle_compare(&curve, seed)?);
                    }
                }
                Ok((seen, bad))
            })
            .collect()
    });
    let mut report = OracleReport {
        p,
        g,
        mode,
        seed,
        curves: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    for part in parts {
        let (seen, bad) = part?;
        report.curves += seen;
        report.mismatches += bad.len() as u64;
        if report.first_mismatch.is_none() {
            report.first_mismatch = bad.into_iter().next();
        }
    }
    Ok(report)
}
