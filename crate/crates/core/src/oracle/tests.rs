use super::*;
use crate::exactnum::rational::{int, rat};
use proptest::prelude::*;

fn xyz() -> Vec<HomogPoly> {
    HomogPoly::power_generators(3, 1).unwrap()
}

fn quadric_cone() -> HomogPoly {
    HomogPoly::new(3, &[(1, &[1, 1, 0]), (-1, &[0, 0, 2])]).unwrap()
}

fn all_monomials(n: usize, m: u64) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![m as u32]];
    }
    let mut out = Vec::new();
    for v in 0..=m {
        for mut rest in all_monomials(n - 1, m - v) {
            rest.insert(0, v as u32);
            out.push(rest);
        }
    }
    out
}

// Independent reference: dense rank over F_p of every multiple u*g in S_m,
// with no monomial-ideal shortcut.
fn dense_length(p: u64, n: usize, h: Option<&HomogPoly>, gens: &[HomogPoly], q: u64, m: u64) -> u64 {
    let basis = all_monomials(n, m);
    let pos: HashMap<Vec<u32>, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut polys: Vec<HomogPoly> = gens.iter().map(|g| g.bracket(q).unwrap()).collect();
    polys.extend(h.cloned());
    let mut matrix: Vec<Vec<u64>> = Vec::new();
    for g in &polys {
        if g.degree() > m {
            continue;
        }
        for u in all_monomials(n, m - g.degree()) {
            let mut col = vec![0u64; basis.len()];
            for (c, e) in g.terms() {
                let key: Vec<u32> = u.iter().zip(e).map(|(a, b)| a + b).collect();
                col[pos[&key]] = (col[pos[&key]] + c.rem_euclid(p as i64) as u64) % p;
            }
            matrix.push(col);
        }
    }
    let mut rank = 0;
    let width = basis.len();
    for c in 0..width {
        let Some(r) = (rank..matrix.len()).find(|&r| matrix[r][c] != 0) else { continue };
        matrix.swap(rank, r);
        let inv = field::inv(matrix[rank][c] as u32, p as u32) as u64;
        for v in matrix[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r2 in 0..matrix.len() {
            if r2 != rank && matrix[r2][c] != 0 {
                let f = matrix[r2][c];
                let pivot = matrix[rank].clone();
                for (v, pv) in matrix[r2].iter_mut().zip(&pivot) {
                    *v = (*v + p * p - f * pv) % p;
                }
            }
        }
        rank += 1;
    }
    basis.len() as u64 - rank as u64
}

#[test]
fn plane_box_pieces() {
    let gens = HomogPoly::power_generators(2, 1).unwrap();
    let q = |m| GradedQuotientQuery { p: 2, num_vars: 2, hypersurface: None, generators: gens.clone(), q: 2, degree: m };
    assert_eq!(graded_piece_length(&q(1)).unwrap(), 2);
    assert_eq!(graded_piece_length(&q(3)).unwrap(), 0);
}

#[test]
fn quadric_cone_piece_matches_dense_rank() {
    let h = quadric_cone();
    let ring = FrobeniusQuotient::new(3, 3, Some(&h), &xyz(), 3).unwrap();
    for m in 0..=9 {
        assert_eq!(ring.piece_length(m), dense_length(3, 3, Some(&h), &xyz(), 3, m), "degree {m}");
    }
}

#[test]
fn box_profile() {
    let gens = HomogPoly::power_generators(2, 1).unwrap();
    let prof = colength_profile(5, None, &gens, 5).unwrap();
    let expected: Vec<u64> = (0..=8).map(|m: u64| (m + 1).min(9 - m)).collect();
    assert_eq!(prof.lengths, expected);
    assert_eq!(prof.top_nonzero, Some(8));
    assert_eq!(ehk_estimate(5, None, &gens, 5).unwrap(), int(1));
    assert_eq!(fn_sample(5, None, &gens, 5, &int(1)).unwrap(), rat(4, 5));
    assert_eq!(fn_sample(5, None, &gens, 5, &int(7)).unwrap(), int(0));
}

#[test]
fn three_variable_box_matches_binomial_counts() {
    let prof = colength_profile(3, None, &xyz(), 3).unwrap();
    // coefficients of (1 + t + t^2)^3
    assert_eq!(prof.lengths, vec![1, 3, 6, 7, 6, 3, 1]);
}

#[test]
fn quadric_cone_threshold_and_profile() {
    let h = quadric_cone();
    let prof = colength_profile(3, Some(&h), &xyz(), 3).unwrap();
    // x^2y^2 = z^4, x^2yz = xz^3 and xy^2z = yz^3 all lie in I^[3]
    assert_eq!(prof.top_nonzero, Some(3));
    for (m, &len) in prof.lengths.iter().enumerate() {
        assert_eq!(len, dense_length(3, 3, Some(&h), &xyz(), 3, m as u64));
    }
    assert_eq!(fthreshold_estimate(3, &h, 1, 3).unwrap(), int(1));
}

#[test]
fn unit_ideal_and_errors() {
    assert!(matches!(FrobeniusQuotient::new(4, 2, None, &[], 4), Err(OracleError::NotPrime(4))));
    assert!(matches!(
        FrobeniusQuotient::new(3, 2, None, &[], 6),
        Err(OracleError::NotPowerOfP { .. })
    ));
    let y_only = vec![HomogPoly::pure_power(2, 1, 1).unwrap()];
    assert!(matches!(colength_profile(3, None, &y_only, 3), Err(OracleError::NotFiniteColength { .. })));
    let vanishing = vec![HomogPoly::new(2, &[(3, &[1, 0])]).unwrap()];
    assert!(matches!(colength_profile(3, None, &vanishing, 3), Err(OracleError::VanishesModP(_))));
}

#[test]
fn monomial_alpha_examples() {
    assert_eq!(monomial_alpha(2, &[vec![2, 0], vec![1, 1], vec![0, 3]]).unwrap(), int(4));
    assert_eq!(monomial_alpha(2, &[vec![1, 0], vec![0, 1]]).unwrap(), int(2));
    assert_eq!(monomial_alpha(3, &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]).unwrap(), int(6));
    assert!(matches!(monomial_alpha(2, &[vec![1, 1], vec![2, 0]]), Err(OracleError::InfiniteColength(1))));
}

#[test]
fn frobenius_scaling() {
    let h = quadric_cone();
    assert!(scaling_check(3, Some(&h), &xyz(), 3, 3).unwrap());
    let bracketed: Vec<_> = xyz().iter().map(|g| g.bracket(3).unwrap()).collect();
    assert!(bracket_profiles_agree(3, Some(&h), &bracketed, 3, &xyz(), 9).unwrap());
    // negative control: drop one generator from the bracketed side
    let mut corrupted = bracketed.clone();
    corrupted[2] = HomogPoly::pure_power(3, 2, 4).unwrap();
    assert!(!bracket_profiles_agree(3, Some(&h), &corrupted, 3, &xyz(), 9).unwrap());
}

#[test]
fn profiles_independent_of_thread_count() {
    let h = HomogPoly::new(3, &[(1, &[4, 0, 0]), (1, &[0, 4, 0]), (1, &[0, 0, 4])]).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| colength_profile(5, Some(&h), &xyz(), 25).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn display() {
    assert_eq!(quadric_cone().to_string(), "x*y - z^2");
}

fn monomial_strategy(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..4, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_trinomial_pieces_match_dense(
        e in prop::collection::vec(0u32..4, 9),
        coeffs in prop::collection::vec(1i64..3, 3),
        p in prop::sample::select(vec![2u64, 3]),
        m in 0u64..10,
    ) {
        // three monomials of degree 3 in x, y, z
        let mono = |i: usize| {
            let (a, b) = (e[3 * i] % 4, e[3 * i + 1] % (4 - e[3 * i] % 4));
            vec![a, b, 3 - a - b]
        };
        let (m0, m1, m2) = (mono(0), mono(1), mono(2));
        let h = HomogPoly::new(3, &[(coeffs[0], &m0), (coeffs[1], &m1), (coeffs[2], &m2)]);
        prop_assume!(h.is_ok());
        let h = h.unwrap();
        prop_assume!(h.terms().any(|(c, _)| c % p as i64 != 0));
        let ring = FrobeniusQuotient::new(p, 3, Some(&h), &xyz(), p).unwrap();
        prop_assert_eq!(ring.piece_length(m), dense_length(p, 3, Some(&h), &xyz(), p, m));
    }

    #[test]
    fn adding_generators_never_raises_length(
        extra in prop::collection::vec(monomial_strategy(2), 0..4),
        q in prop::sample::select(vec![2u64, 4]),
    ) {
        // monomial ideals: colength equals the count of surviving monomials
        let base = HomogPoly::power_generators(2, 2).unwrap();
        let extra: Vec<HomogPoly> = extra
            .iter()
            .filter(|e| e.iter().sum::<u32>() > 0)
            .map(|e| HomogPoly::monomial(e).unwrap())
            .collect();
        let mut all = base.clone();
        all.extend(extra.iter().cloned());
        let before = colength_profile(2, None, &base, q).unwrap();
        let after = colength_profile(2, None, &all, q).unwrap();
        let bracketed: Vec<Vec<u32>> = all
            .iter()
            .map(|g| g.bracket(q).unwrap().terms().next().unwrap().1.to_vec())
            .collect();
        for m in 0..=(4 * q) {
            prop_assert!(after.length(m) <= before.length(m));
            let survivors = all_monomials(2, m)
                .into_iter()
                .filter(|u| !bracketed.iter().any(|g| g.iter().zip(u).all(|(a, b)| a <= b)))
                .count() as u64;
            prop_assert_eq!(after.length(m), survivors);
        }
    }
}

#[test]
fn parse_round_trips_display() {
    for h in [quadric_cone(), HomogPoly::new(3, &[(2, &[3, 0, 0]), (-5, &[0, 1, 2])]).unwrap()] {
        assert_eq!(HomogPoly::parse(3, &h.to_string()).unwrap(), h);
    }
    assert_eq!(HomogPoly::parse(4, "x*y-z*w").unwrap().to_string(), "x*y - z*w");
    assert_eq!(HomogPoly::parse(2, " -x^2 + 3*x*y ").unwrap().to_string(), "-x^2 + 3*x*y");
    assert_eq!(HomogPoly::parse(2, "x*x").unwrap(), HomogPoly::monomial(&[2, 0]).unwrap());
    assert!(matches!(HomogPoly::parse(2, "x + z"), Err(OracleError::Parse { .. })));
    assert!(matches!(HomogPoly::parse(2, "x^2 + y"), Err(OracleError::NotHomogeneous)));
    assert!(matches!(HomogPoly::parse(2, "x -"), Err(OracleError::Parse { .. })));
    assert!(matches!(HomogPoly::parse(2, "x - x"), Err(OracleError::Empty)));
}
