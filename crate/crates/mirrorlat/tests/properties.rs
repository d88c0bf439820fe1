use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mirrorlat::connection::{a_form, random_regular_point, Christoffel, FlatnessChecker, Kappa};
use mirrorlat::hermitian::{
    det_closed_form, gram, in_hyperbolic_region, random_hyperbolic_kappa, random_restricted_kappa, reflection_matrices,
    relation_checks, signature, Signature,
};
use mirrorlat::linalg::Mat;
use mirrorlat::rational::{fmt_q, parse_q, q, Q};
use mirrorlat::residues::{boundary_residue_matrix, boundary_spectrum, eval_poly, spectrum_at};
use mirrorlat::rootsystem::{Family, RootSystem};
use mirrorlat::schwarz::schwarz_satisfied;

fn types() -> Vec<(Family, usize)> {
    Family::ALL.into_iter().flat_map(|f| f.supported_ranks().map(move |n| (f, n))).collect()
}

fn any_type() -> impl Strategy<Value = RootSystem> {
    (0..types().len()).prop_map(|i| {
        let (f, n) = types()[i];
        RootSystem::build(f, n).unwrap()
    })
}

/// Types of rank at most 5, for the more expensive exact checks.
fn small_type() -> impl Strategy<Value = RootSystem> {
    let small: Vec<(Family, usize)> = types().into_iter().filter(|&(_, n)| n <= 5).collect();
    (0..small.len()).prop_map(move |i| RootSystem::build(small[i].0, small[i].1).unwrap())
}

fn rational() -> impl Strategy<Value = Q> {
    (-90i64..=90, 1i64..=30).prop_map(|(a, b)| q(a, b))
}

fn kappa_for(rs: &RootSystem, k: Q, kp: Q) -> Kappa {
    Kappa::new(k, if rs.family().uses_kprime() { kp } else { Q::zero() })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reflections_permute_roots(rs in any_type(), i in 0usize..120, j in 0usize..120) {
        let roots = rs.positive_roots();
        let alpha = &roots[i % roots.len()];
        let beta = &roots[j % roots.len()];
        let image = rs.reflect(alpha, &beta.coeffs);
        let neg: Vec<i64> = image.iter().map(|c| -c).collect();
        prop_assert!(rs.find_root(&image).is_some() || rs.find_root(&neg).is_some());
    }

    #[test]
    fn positive_root_sum_on_coweights(rs in any_type()) {
        for m in 1..=rs.rank() {
            let p = rs.coweight(m).unwrap();
            let s: Q = rs.positive_roots().iter().map(|r| r.eval(p)).sum();
            prop_assert!(s.is_integer() && s.is_positive());
        }
    }

    #[test]
    fn flatness_holds_and_rescaling_breaks_it(rs in any_type(), k in rational(), kp in rational(), c in rational()) {
        let kappa = kappa_for(&rs, k, kp);
        let checker = FlatnessChecker::new(&rs);
        prop_assert!(checker.check(&kappa).all_hold());
        let a = a_form(&rs, &kappa);
        prop_assume!(!a.is_zero() && !c.is_one());
        let scaled = checker.check_with(&kappa, &(a * c));
        prop_assert!(!scaled.get("5b").unwrap().holds);
    }

    #[test]
    fn connection_coefficients_are_symmetric(rs in small_type(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kappa = random_restricted_kappa(&rs, &mut rng);
        let point = random_regular_point(&rs, &mut rng);
        let g = Christoffel::new(&rs, &kappa, &a_form(&rs, &kappa), &point, 1.0);
        prop_assert!(g.symmetry_defect() < 1e-10, "{}", g.symmetry_defect());
    }

    #[test]
    fn spectra_are_affine_in_kappa(rs in small_type(), k in rational(), kp in rational(), node in 0usize..8) {
        let m = node % rs.rank() + 1;
        let kappa = kappa_for(&rs, k, kp);
        let spectrum = boundary_spectrum(&rs, m).unwrap();
        let mut predicted: BTreeMap<Q, usize> = BTreeMap::new();
        for e in &spectrum.eigenvalues {
            *predicted.entry(e.value.eval(&kappa.k, &kappa.kp)).or_default() += e.multiplicity;
        }
        let exact = spectrum_at(&boundary_residue_matrix(&rs, m, &kappa).unwrap()).unwrap();
        prop_assert_eq!(exact.into_iter().collect::<BTreeMap<_, _>>(), predicted);
    }

    #[test]
    fn quadratic_relation_at_rational_kappa(rs in small_type(), k in rational(), kp in rational(), node in 0usize..8) {
        let m = node % rs.rank() + 1;
        let kappa = kappa_for(&rs, k, kp);
        let spectrum = boundary_spectrum(&rs, m).unwrap();
        let phi = spectrum.phi.unwrap().eval(&kappa.k, &kappa.kp);
        let app: Q = eval_poly(&spectrum.app.unwrap(), &kappa.k, &kappa.kp);
        let s: Mat<Q> = boundary_residue_matrix(&rs, m, &kappa).unwrap();
        let defect = s.matmul(&s) - s.scale(&phi) + Mat::identity(s.rows).scale(&app);
        prop_assert!(defect.is_zero());
    }

    #[test]
    fn hermitian_relations_and_determinant(rs in any_type(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kappa = random_restricted_kappa(&rs, &mut rng);
        let g = gram(&rs, &kappa).unwrap();
        prop_assert!(g.hermitian_defect() < 1e-12);
        prop_assert!((g.det() - det_closed_form(&rs, &kappa)).abs() < 1e-9);
        prop_assert!(relation_checks(&reflection_matrices(&g)).passes(1e-9));
    }

    #[test]
    fn hyperbolic_region_is_lorentzian(rs in any_type(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kappa = random_hyperbolic_kappa(&rs, &mut rng);
        let g = gram(&rs, &kappa).unwrap();
        prop_assert!(g.det() < 0.0);
        prop_assert_eq!(signature(&g), Signature { pos: rs.rank(), neg: 1, zero: 0 });
    }

    #[test]
    fn a_type_schwarz_is_symmetric_in_kprime(n in 2usize..=9, k in rational(), kp in rational()) {
        let rs = RootSystem::build(Family::A, n).unwrap();
        let plus = Kappa::new(k.clone(), kp.clone());
        let minus = Kappa::new(k, -kp);
        prop_assert_eq!(schwarz_satisfied(&rs, &plus).satisfied, schwarz_satisfied(&rs, &minus).satisfied);
        prop_assert_eq!(in_hyperbolic_region(&rs, &plus), in_hyperbolic_region(&rs, &minus));
    }

    #[test]
    fn rationals_round_trip(a in -100_000i64..100_000, b in 1i64..10_000) {
        let x = q(a, b);
        prop_assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x.clone());
        prop_assert_eq!(parse_q(&format!("{a}/{b}")).unwrap(), x);
    }

    #[test]
    fn malformed_rationals_are_rejected(s in "[-0-9/a-z ]{0,6}") {
        let well_formed = regex_like(&s);
        prop_assert_eq!(parse_q(&s).is_ok(), well_formed);
    }
}

/// `-?[0-9]+(/[1-9][0-9]*)?`
fn regex_like(s: &str) -> bool {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    let num_ok = !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit());
    let den_ok = den.is_none_or(|d| {
        d.bytes().next().is_some_and(|b| (b'1'..=b'9').contains(&b)) && d.bytes().all(|b| b.is_ascii_digit())
    });
    num_ok && den_ok
}

#[test]
fn cli_output_is_deterministic() {
    use clap::Parser;
    use mirrorlat::cli::{run, Cli};
    for seed in [0u64, 7, 123456789] {
        let seed = seed.to_string();
        let args = ["mirrorlat", "wronskian", "--family", "B", "--rank", "2", "--k", "1/5", "--kp", "-1/9", "--seed", &seed];
        let a = run(&Cli::parse_from(args).command).unwrap().document;
        let b = run(&Cli::parse_from(args).command).unwrap().document;
        assert_eq!(a, b);
    }
}
