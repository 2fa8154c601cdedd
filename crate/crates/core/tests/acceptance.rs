//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperjac::census::{
    enumerate_curves, fermat_scan, oracle_check, oracle_compare, random_curve, run_tally, Mode,
};
use hyperjac::derham::hasse_witt;
use hyperjac::dieudonne::{a_number, canonical_filtration, p_rank, p_rank_of_sequence};
use hyperjac::gf::is_prime;
use hyperjac::zeta::{l_polynomial, p_rank_from_l, DEFAULT_SEED};
use hyperjac::{build_module, eo_type, CurveSpec, PrimeField};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn witnesses(
    cases: &[(u64, &[u64])],
    psi: &[usize],
    p_rank: Option<usize>,
    a: Option<usize>,
) -> Check {
    let mut worst = Duration::ZERO;
    for &(p, coeffs) in cases {
        let start = Instant::now();
        let curve = CurveSpec::new(p, coeffs).map_err(|e| e.to_string())?;
        let module = build_module(&curve).map_err(|e| format!("{curve}: {e}"))?;
        let eo = eo_type(&module).map_err(|e| format!("{curve}: {e}"))?;
        worst = worst.max(within(Duration::from_secs(1), start)?);
        ensure(eo.psi == psi, || format!("{curve}: psi {:?}", eo.psi))?;
        if let Some(f) = p_rank {
            ensure(eo.p_rank == f, || format!("{curve}: p-rank {}", eo.p_rank))?;
        }
        if let Some(a) = a {
            ensure(eo.a_number == a, || {
                format!("{curve}: a-number {}", eo.a_number)
            })?;
        }
    }
    Ok(format!("{} curves, slowest {worst:.2?}", cases.len()))
}

fn genus_four_witnesses() -> Check {
    witnesses(
        &[
            (3, &[0, 1, 0, 0, 0, 0, 0, 0, 1, 2]),
            (5, &[0, 1, 0, 0, 0, 0, 0, 0, 1, 1]),
            (7, &[0, 1, 0, 0, 0, 0, 1, 3, 0, 5]),
        ],
        &[1, 1, 2, 3],
        Some(1),
        Some(1),
    )
}

fn genus_five_witnesses() -> Check {
    witnesses(
        &[
            (3, &[0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 2]),
            (5, &[0, 1, 0, 0, 0, 0, 0, 1, 2, 4, 2, 3]),
        ],
        &[1, 2, 2, 3, 4],
        None,
        None,
    )
}

fn odd_primes_up_to(n: u64) -> impl Iterator<Item = u64> {
    (3..=n).filter(|&p| is_prime(p))
}

fn fermat_dichotomy() -> Check {
    let start = Instant::now();
    let mut rows = 0;
    for (d, bound) in [(7u64, 50u64), (11, 30), (5, 30)] {
        let primes: Vec<u64> = odd_primes_up_to(bound).filter(|&p| p != d).collect();
        for row in fermat_scan(d, &primes).map_err(|e| e.to_string())? {
            let expect_ordinary = row.p % d == 1;
            ensure(row.ordinary == expect_ordinary, || {
                format!("d={d}, p={}: ordinary={}", row.p, row.ordinary)
            })?;
            if !expect_ordinary {
                ensure(row.p_rank == 0, || {
                    format!("d={d}, p={}: p-rank {}", row.p, row.p_rank)
                })?;
            }
            rows += 1;
        }
    }
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!("{rows} (d, p) pairs in {t:.2?}"))
}

fn axiom_suite() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let primes = [3u64, 5, 7, 11, 13];
    let mut n = 0;
    for round in 0..41 {
        for &p in &primes {
            for g in 1..=5 {
                let even = (round + g) % 2 == 0;
                let field = PrimeField::new(p).unwrap();
                let curve = random_curve(field, g, even, &mut rng);
                let ctx = |msg: String| format!("{curve}: {msg}");
                let module = build_module(&curve).map_err(|e| ctx(e.to_string()))?;
                module.validate().map_err(|e| ctx(e.to_string()))?;
                let (f_mat, v_mat) = (module.frobenius(), module.verschiebung());
                ensure(
                    f_mat.mul(v_mat).unwrap().is_zero(),
                    || ctx("FV != 0".into()),
                )?;
                ensure(
                    v_mat.mul(f_mat).unwrap().is_zero(),
                    || ctx("VF != 0".into()),
                )?;
                ensure(
                    f_mat.rank() == g && v_mat.rank() == g,
                    || ctx("rank".into()),
                )?;
                ensure(f_mat.column_space() == module.kernel_v(), || {
                    ctx("im F != ker V".into())
                })?;
                ensure(v_mat.column_space() == module.kernel_f(), || {
                    ctx("im V != ker F".into())
                })?;

                let a = a_number(&module).map_err(|e| ctx(e.to_string()))?;
                let kernels = module
                    .kernel_f()
                    .intersect(&module.kernel_v())
                    .unwrap()
                    .dim();
                ensure(a == g - hasse_witt(&curve).rank() && a == kernels, || {
                    ctx("a-number".into())
                })?;

                let eo = eo_type(&module).map_err(|e| ctx(e.to_string()))?;
                let f = p_rank(&curve).map_err(|e| ctx(e.to_string()))?;
                ensure(eo.p_rank == f && eo.a_number == a, || {
                    ctx("cached invariants".into())
                })?;
                ensure(f + a <= g, || ctx("f + a > g".into()))?;
                ensure(f == p_rank_of_sequence(&eo.psi), || {
                    ctx("f != max{i : psi(i) = i}".into())
                })?;
                ensure(a == g - eo.psi[g - 1], || ctx("a != g - psi(g)".into()))?;

                let filt = canonical_filtration(&module).map_err(|e| ctx(e.to_string()))?;
                ensure(filt.rounds() <= 4 * g, || {
                    ctx(format!("{} filtration rounds", filt.rounds()))
                })?;
                n += 1;
            }
        }
    }
    ensure(n >= 1000, || format!("only {n} curves"))?;
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!("{n} curves in {t:.2?}"))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for g in [1, 2] {
        let r = oracle_check(3, g, Mode::Monic, DEFAULT_SEED, 4).map_err(|e| e.to_string())?;
        ensure(r.mismatches == 0, || {
            format!("F_3 g={g}: {:?}", r.first_mismatch)
        })?;
        total += r.curves;
    }
    ensure(total == 18 + 54 + 162 + 486, || {
        format!("{total} exhaustive curves")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [5u64, 7] {
        let field = PrimeField::new(p).unwrap();
        for _ in 0..200 {
            let curve = random_curve(field, 2, rng.gen(), &mut rng);
            let bad = oracle_compare(&curve, DEFAULT_SEED).map_err(|e| e.to_string())?;
            ensure(bad.is_none(), || format!("{curve}: {bad:?}"))?;
            total += 1;
        }
    }
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!("{total} curves, 0 mismatches, {t:.2?}"))
}

fn isomorphism_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let primes = [3u64, 5, 7, 11, 13];
    for i in 0..500 {
        let p = primes[i % primes.len()];
        let field = PrimeField::new(p).unwrap();
        let g = rng.gen_range(1..=5);
        let curve = random_curve(field, g, rng.gen(), &mut rng);
        let alpha = field.elt(rng.gen_range(1..p));
        let beta = field.elt(rng.gen_range(0..p));
        let gamma = field.elt(rng.gen_range(1..p));
        let image = curve
            .poly()
            .affine_substitute(alpha, beta, gamma)
            .and_then(CurveSpec::from_poly)
            .map_err(|e| format!("{curve}: {e}"))?;
        let before = eo_type(&build_module(&curve).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let after = eo_type(&build_module(&image).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(before == after, || {
            format!("{curve} -> {image}: {before:?} vs {after:?}")
        })?;
    }
    Ok("500 substitutions".into())
}

fn census_determinism() -> Check {
    let csv = |shards| {
        run_tally(3, 3, Mode::MonicOdd, shards)
            .map(|r| r.to_csv())
            .map_err(|e| e.to_string())
    };
    let base = csv(1)?;
    for shards in [2, 8] {
        ensure(csv(shards)? == base, || format!("shards={shards} differs"))?;
    }

    let r = run_tally(3, 1, Mode::MonicOdd, 2).map_err(|e| e.to_string())?;
    ensure(r.total == 18 && r.tally.len() == 2, || format!("{r:?}"))?;
    ensure(r.count(&[0]) + r.count(&[1]) == 18, || format!("{r:?}"))?;
    let mut labels = [0u64; 2];
    for curve in enumerate_curves(3, 1, Mode::MonicOdd).map_err(|e| e.to_string())? {
        let psi = eo_type(&build_module(&curve).unwrap()).unwrap().psi;
        let l = l_polynomial(&curve, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(psi == [p_rank_from_l(&l)], || {
            format!("{curve}: psi {psi:?}, L {:?}", l.coeffs)
        })?;
        labels[psi[0]] += 1;
    }
    ensure(labels == [r.count(&[0]), r.count(&[1])], || {
        format!("labels {labels:?}")
    })?;
    Ok(format!(
        "g=3 CSV stable over shards 1/2/8; g=1 split {}+{}",
        labels[1], labels[0]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "genus-4 witnesses have type [1,1,2,3]",
            genus_four_witnesses,
        ),
        (
            "genus-5 witnesses have type [1,2,2,3,4]",
            genus_five_witnesses,
        ),
        ("y^2 = x^d + 1 ordinary iff p = 1 mod d", fermat_dichotomy),
        ("Dieudonne axioms on random curves", axiom_suite),
        (
            "Hasse-Witt p-rank agrees with L-polynomial",
            oracle_equivalence,
        ),
        (
            "EO type invariant under affine substitution",
            isomorphism_invariance,
        ),
        ("census determinism and genus-1 split", census_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
