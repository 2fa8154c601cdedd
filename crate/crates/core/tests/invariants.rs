use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperjac::census::random_curve;
use hyperjac::derham::{frobenius_matrix, hasse_witt, verschiebung_matrix};
use hyperjac::dieudonne::{a_number, canonical_filtration, classify, p_rank};
use hyperjac::linalg::Twist;
use hyperjac::{build_module, eo_type, CurveSpec, PrimeField};

fn curve_strategy() -> impl Strategy<Value = CurveSpec> {
    (
        prop::sample::select(vec![3u64, 5, 7, 11, 13]),
        1usize..=5,
        any::<bool>(),
        any::<u64>(),
    )
        .prop_map(|(p, g, even, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_curve(PrimeField::new(p).unwrap(), g, even, &mut rng)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn a_number_routes_agree(curve in curve_strategy()) {
        let m = build_module(&curve).unwrap();
        let g = curve.genus();
        let a = a_number(&m).unwrap();
        prop_assert_eq!(a, g - hasse_witt(&curve).rank());
        prop_assert_eq!(a, m.kernel_f().intersect(&m.kernel_v()).unwrap().dim());
    }

    #[test]
    fn p_rank_routes_agree(curve in curve_strategy()) {
        let m = build_module(&curve).unwrap();
        let hw = hasse_witt(&curve).stable_rank(Twist::PthPower).unwrap();
        prop_assert_eq!(hw, m.eta_block().stable_rank(Twist::PthPower).unwrap());
        prop_assert_eq!(hw, p_rank(&curve).unwrap());
        prop_assert_eq!(hw, eo_type(&m).unwrap().p_rank);
    }

    #[test]
    fn ordinary_iff_identity_sequence(curve in curve_strategy()) {
        let m = build_module(&curve).unwrap();
        let g = curve.genus();
        let eo = eo_type(&m).unwrap();
        let identity: Vec<usize> = (1..=g).collect();
        prop_assert_eq!(eo.p_rank == g, eo.psi == identity);
        prop_assert_eq!(classify(&m, &curve).unwrap().ordinary, eo.psi == identity);
        if hasse_witt(&curve).is_zero() {
            prop_assert_eq!(eo.psi[0], 0);
        }
    }

    #[test]
    fn matrices_have_the_documented_zero_blocks(curve in curve_strategy()) {
        let g = curve.genus();
        let f = frobenius_matrix(&curve);
        let v = verschiebung_matrix(&curve);
        prop_assert!(f.block(0, 2 * g, g, 2 * g).is_zero());
        prop_assert!(v.block(0, g, 0, 2 * g).is_zero());
        prop_assert_eq!(f.block(0, g, 0, g), hasse_witt(&curve).transpose());
    }

    #[test]
    fn filtration_is_a_closed_chain(curve in curve_strategy()) {
        let m = build_module(&curve).unwrap();
        let filt = canonical_filtration(&m).unwrap();
        let steps = filt.steps();
        prop_assert_eq!(steps.first().unwrap().space.dim(), 0);
        prop_assert_eq!(steps.last().unwrap().space.dim(), 2 * curve.genus());
        prop_assert!(filt.rounds() <= 4 * curve.genus());
        for s in steps {
            let v_image = s.space.image(m.verschiebung()).unwrap();
            let f_preimage = s.space.preimage(m.frobenius()).unwrap();
            prop_assert!(steps.iter().any(|t| t.space == v_image));
            prop_assert!(steps.iter().any(|t| t.space == f_preimage));
        }
    }
}

#[test]
fn supersingular_elliptic_curve_has_f_equal_minus_v() {
    let curve = CurveSpec::new(3, &[0, 1, 0, 1]).unwrap();
    let m = build_module(&curve).unwrap();
    let k = *curve.field();
    assert_eq!(*m.frobenius(), m.verschiebung().map(|x| k.neg(x)));
}
