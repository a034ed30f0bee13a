//! Acceptance suite: end-to-end reproduction of the perturbation theorem and
//! every supporting identity, exact to the bit, at desk scale.
//!
//! Each test prints one pass line; a failed assertion is the fail line.

use std::time::Instant;

use tdpair::{
    build_seed, check_ccond_identity, check_polysum, drinfeld_poly, find_isomorphism,
    from_parameter_array_thin, generated_algebra_dim, geometric_eigenvalues,
    invariant_subspace_witness, ladder_eigenvalue, maps_into, perturb, scan, seed_parameter_array,
    split_decomposition, theorem_verdict, trace_identities, verify_k_relations,
    verify_ladder_inclusions, verify_split, FailingAxiom, Matrix, ParameterArray, ParallelSystem,
    QContext, Rational, Subspace,
};

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn rv(strs: &[&str]) -> Vec<Rational> {
    strs.iter().map(|s| s.parse().unwrap()).collect()
}

/// Deterministic xorshift generator so every run tests the same values.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn rational(&mut self, num_bound: i64, den_bound: i64) -> Rational {
        let n = (self.next() % (2 * num_bound as u64 + 1)) as i64 - num_bound;
        let d = (self.next() % (den_bound as u64)) as i64 + 1;
        Rational::new(n, d).unwrap()
    }

    fn nonzero_rational(&mut self, num_bound: i64, den_bound: i64) -> Rational {
        loop {
            let v = self.rational(num_bound, den_bound);
            if !v.is_zero() {
                return v;
            }
        }
    }

    fn matrix(&mut self, n: usize, bound: i64) -> Matrix {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        Rational::from_int((self.next() % (2 * bound as u64 + 1)) as i64 - bound)
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows).unwrap()
    }
}

fn fixtures() -> Vec<ParallelSystem> {
    ["d1", "d1-phi5", "d2"]
        .iter()
        .map(|name| build_seed(name).unwrap())
        .collect()
}

/// 20 deterministic thin d = 1 systems with random nonzero zeta_1, skipping
/// the single excluded value (q - q^-1)^2 at which the thin candidate is
/// reducible.
fn random_thin_d1_systems(rng: &mut Rng) -> Vec<ParallelSystem> {
    let ctx = QContext::new(r("2"), 1).unwrap();
    let (theta, theta_star) = geometric_eigenvalues(&ctx);
    let excluded = r("9/4");
    let mut out = Vec::new();
    while out.len() < 20 {
        let zeta1 = rng.nonzero_rational(9, 5);
        if zeta1 == excluded {
            continue;
        }
        let pa = ParameterArray::new(
            theta.clone(),
            theta_star.clone(),
            vec![Rational::one(), zeta1],
        )
        .unwrap();
        let ps = from_parameter_array_thin(&pa, &ctx).unwrap();
        assert!(ps.verify().is_td_system, "random thin system failed to verify");
        out.push(ps);
    }
    out
}

/// The t grid used by the perturbation suites: small fixed values, zero,
/// every rational bad t of the system, and 20 seeded random rationals.
fn t_grid(ps: &ParallelSystem, rng: &mut Rng) -> Vec<Rational> {
    let mut grid = rv(&["1", "-1", "2", "-2", "1/2", "-1/2", "0"]);
    let p = drinfeld_poly(&ps.split_sequence().unwrap(), ps.ctx()).unwrap();
    grid.extend(p.rational_bad_t());
    for _ in 0..20 {
        grid.push(rng.rational(6, 4));
    }
    grid.sort();
    grid.dedup();
    grid
}

#[test]
fn criterion_1_d1_end_to_end_theorem_scan() {
    let started = Instant::now();
    let ps = build_seed("d1").unwrap();
    assert_eq!(ps.theta(), rv(&["1/2", "2"]).as_slice());
    assert_eq!(ps.theta_star(), rv(&["2", "1/2"]).as_slice());
    assert_eq!(ps.split_sequence().unwrap(), rv(&["1", "1"]));

    let ts = rv(&["1", "2", "-1", "1/2", "0", "9/4"]);
    let rows = scan(&ps, &ts).unwrap();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        assert_eq!(row.predicted, row.actual, "mismatch at t = {}", row.t);
        let expect_false = row.t.is_zero() || row.t == r("9/4");
        assert_eq!(row.actual, !expect_false, "wrong verdict at t = {}", row.t);
    }

    let bad = rows.iter().find(|row| row.t == r("9/4")).unwrap();
    assert_eq!(bad.failing_axiom, Some(FailingAxiom::Irreducibility));
    let witness = bad.witness.clone().expect("witness at the bad parameter");
    let expected = Subspace::from_vectors(2, &[rv(&["3", "-2"])]).unwrap();
    assert_eq!(witness, expected);
    let pert = perturb(&ps, &r("9/4")).unwrap();
    assert!(maps_into(pert.b(), &witness, &witness).unwrap());
    assert!(maps_into(pert.b_star(), &witness, &witness).unwrap());
    // hand-checked matrix: B* = [[2, t], [0, 1/2]]
    assert_eq!(
        pert.b_star(),
        &Matrix::from_str_rows(&[&["2", "9/4"], &["0", "1/2"]]).unwrap()
    );

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("acceptance criterion 1: PASS (d1 end-to-end scan, {elapsed:?})");
}

#[test]
fn criterion_2_identity_suite() {
    let started = Instant::now();
    let mut rng = Rng::new(0x5eed_0002);
    let mut systems = fixtures();
    systems.extend(random_thin_d1_systems(&mut rng));

    for ps in &systems {
        let pa = ps.parameter_array().unwrap();

        // polynomial expansion identities
        assert!(check_polysum(&pa));

        // trace identities and the four nonvanishing facts
        assert!(trace_identities(ps).unwrap().all_hold());

        // rank-1 compression: E*_0 F E*_0 = tr(F E*_0) E*_0 for random F
        let e_star0 = &ps.dual_idempotents()[0];
        for _ in 0..5 {
            let f = rng.matrix(ps.dim(), 5);
            let lhs = e_star0.mul(&f).unwrap().mul(e_star0).unwrap();
            let c = f.mul(e_star0).unwrap().trace().unwrap();
            assert_eq!(lhs, e_star0.scale(&c));
        }

        // both K relations
        let u = split_decomposition(ps).unwrap();
        let k = tdpair::k_map(ps, &u).unwrap();
        assert!(verify_k_relations(&k, ps.a(), ps.a_star(), ps.ctx()).unwrap());

        // q-Serre residuals of the pair itself
        let (r1, r2) = tdpair::qserre_residuals(ps.a(), ps.a_star(), ps.ctx()).unwrap();
        assert!(r1.is_zero() && r2.is_zero());

        // and of every perturbed pair at 20 random t
        for _ in 0..20 {
            let t = rng.rational(6, 4);
            let pert = perturb(ps, &t).unwrap();
            let (r1, r2) =
                tdpair::qserre_residuals(pert.b(), pert.b_star(), ps.ctx()).unwrap();
            assert!(r1.is_zero() && r2.is_zero(), "q-Serre residual at t = {t}");
        }

        // the polynomial form of the weighted-sum identity, both sides
        // computed through independent code paths
        assert!(check_ccond_identity(&pa, ps.ctx()).unwrap());

        // scaling law of the Drinfel'd polynomial at random (t, x)
        let p = drinfeld_poly(pa.zeta(), ps.ctx()).unwrap();
        for _ in 0..5 {
            let t = rng.rational(5, 3);
            let x = rng.rational(5, 3);
            let scaled: Vec<Rational> = pa
                .zeta()
                .iter()
                .enumerate()
                .map(|(i, z)| &t.pow(i as i64).unwrap() * z)
                .collect();
            let p_scaled = drinfeld_poly(&scaled, ps.ctx()).unwrap();
            assert_eq!(p_scaled.eval(&x), p.eval(&(&t * &x)));
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!(
        "acceptance criterion 2: PASS (identity suite on {} systems, {elapsed:?})",
        systems.len()
    );
}

#[test]
fn criterion_3_perturbation_structure_suite() {
    let started = Instant::now();
    let mut rng = Rng::new(0x5eed_0003);
    for ps in &fixtures() {
        let zeta = ps.split_sequence().unwrap();
        for t in t_grid(ps, &mut rng) {
            let pert = perturb(ps, &t).unwrap();
            let report = pert.verify_lemmas().unwrap();
            assert!(
                report.all_hold(),
                "structural lemma failed at t = {t}: {report:?}"
            );

            // the perturbed split sequence, recomputed from scratch through
            // traces, equals t^i zeta_i
            let zeta_prime = pert.split_sequence().unwrap();
            for (i, z) in zeta_prime.iter().enumerate() {
                assert_eq!(z, &(&t.pow(i as i64).unwrap() * &zeta[i]));
            }

            // conditions (i)-(iii) hold for every t; only irreducibility may
            // fail, exactly when the polynomial predicts it
            let axioms = pert.system().unwrap().verify();
            assert!(axioms.is_parallel, "diagonalizability failed at t = {t}");
            assert!(axioms.td_band_ok, "band conditions failed at t = {t}");
            let verdict = theorem_verdict(ps, &t).unwrap();
            assert_eq!(verdict.actual, axioms.irreducible);
            if !verdict.actual {
                assert_eq!(verdict.failing_axiom, Some(FailingAxiom::Irreducibility));
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("acceptance criterion 3: PASS (perturbation structure suite, {elapsed:?})");
}

#[test]
fn criterion_4_dual_perturbation_round_trip() {
    let started = Instant::now();
    let mut rng = Rng::new(0x5eed_0004);
    for ps in &fixtures() {
        let pa = ps.parameter_array().unwrap();
        let p = drinfeld_poly(pa.zeta(), ps.ctx()).unwrap();
        for t in t_grid(ps, &mut rng) {
            if !p.predict_td(&t) {
                continue;
            }
            let forward = perturb(ps, &t).unwrap().system().unwrap();
            assert!(forward.verify().is_td_system);
            let back = perturb(&forward, &t.recip().unwrap())
                .unwrap()
                .system()
                .unwrap();
            assert!(back.verify().is_td_system);
            assert_eq!(back.parameter_array().unwrap(), pa);

            let s = find_isomorphism(&back, ps)
                .unwrap()
                .expect("systems with equal parameter arrays are isomorphic");
            assert!(s.inverse().is_ok());
            assert_eq!(s.mul(back.a()).unwrap(), ps.a().mul(&s).unwrap());
            assert_eq!(
                s.mul(back.a_star()).unwrap(),
                ps.a_star().mul(&s).unwrap()
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!("acceptance criterion 4: PASS (dual perturbation round trip, {elapsed:?})");
}

#[test]
fn criterion_5_drinfeld_invariants_and_double_bookkeeping() {
    let started = Instant::now();
    for ps in &fixtures() {
        let zeta = ps.split_sequence().unwrap();
        let p = drinfeld_poly(&zeta, ps.ctx()).unwrap();
        assert_eq!(p.poly().degree(), ps.diameter());
        assert!(p.eval(&Rational::zero()).is_one());
        assert!(p.predict_td(&Rational::one()));

        // ladder and trace compute the same split sequence
        let u = split_decomposition(ps).unwrap();
        assert!(verify_split(ps, &u).unwrap());
        assert!(verify_ladder_inclusions(ps, &u).unwrap());
        for (i, z) in zeta.iter().enumerate() {
            assert_eq!(&ladder_eigenvalue(ps, &u, i).unwrap(), z);
        }
    }
    let elapsed = started.elapsed();
    println!("acceptance criterion 5: PASS (Drinfel'd invariants, {elapsed:?})");
}

#[test]
fn criterion_6_irreducibility_oracle_consistency() {
    let started = Instant::now();
    let mut rng = Rng::new(0x5eed_0006);
    let mut checked = 0;
    for n in [2usize, 3] {
        for _ in 0..25 {
            let a = rng.matrix(n, 3);
            let b = rng.matrix(n, 3);
            let dim = generated_algebra_dim(&[a.clone(), b.clone()]).unwrap();
            assert!(dim <= n * n);
            match invariant_subspace_witness(&a, &b).unwrap() {
                Some(w) => {
                    assert!(dim < n * n, "witness found but algebra is full");
                    assert!(w.dim() > 0 && w.dim() < n);
                    assert!(maps_into(&a, &w, &w).unwrap());
                    assert!(maps_into(&b, &w, &w).unwrap());
                }
                None => {
                    // inconclusive unless the algebra test proves fullness
                }
            }
            if dim == n * n {
                assert!(
                    invariant_subspace_witness(&a, &b).unwrap().is_none(),
                    "witness returned for an irreducible pair"
                );
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 50);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!("acceptance criterion 6: PASS (oracle consistency on {checked} pairs, {elapsed:?})");
}

/// Candidate superdiagonal entries for the d = 2 sweep: every reduced p/q
/// with |p| <= 12 and q <= 12, in a deterministic complexity order
/// (max(|p|, q) ascending, positives before negatives).
fn sweep_candidates() -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for size in 1i64..=12 {
        for den in 1i64..=12 {
            for num_abs in 1i64..=12 {
                if num_abs.max(den) != size {
                    continue;
                }
                for num in [num_abs, -num_abs] {
                    let cand = Rational::new(num, den).unwrap();
                    if !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_7_d2_fixture_derivation_by_sweep() {
    let started = Instant::now();
    let ctx = QContext::new(r("2"), 2).unwrap();
    let (theta, theta_star) = geometric_eigenvalues(&ctx);

    let candidates = sweep_candidates();
    assert!(candidates.contains(&r("1")) && candidates.contains(&r("-12")));

    let mut found: Option<(Rational, Rational, ParallelSystem)> = None;
    'sweep: for pair_size in 0..(2 * candidates.len() - 1) {
        for i in 0..=pair_size {
            let j = pair_size - i;
            if i >= candidates.len() || j >= candidates.len() {
                continue;
            }
            let phi1 = &candidates[i];
            let phi2 = &candidates[j];
            let zeta = vec![Rational::one(), phi1.clone(), phi1 * phi2];
            let Ok(pa) = ParameterArray::new(theta.clone(), theta_star.clone(), zeta) else {
                continue;
            };
            let Ok(ps) = from_parameter_array_thin(&pa, &ctx) else {
                continue;
            };
            let report = ps.verify();
            if report.is_td_system {
                assert!(report.qserre_ok, "geometric spectra force the q-Serre relations");
                found = Some((phi1.clone(), phi2.clone(), ps));
                break 'sweep;
            }
        }
    }

    let (phi1, phi2, swept) =
        found.expect("sweep exhausted its budget without finding a d = 2 system");
    // the first passing candidate is the recorded seed: both entries 1
    assert_eq!((phi1, phi2), (r("1"), r("1")));
    let (_, seed_pa) = seed_parameter_array("d2").unwrap();
    assert_eq!(swept.parameter_array().unwrap(), seed_pa);

    // the swept fixture runs the full identity battery
    assert!(check_polysum(&seed_pa));
    assert!(trace_identities(&swept).unwrap().all_hold());
    assert!(check_ccond_identity(&seed_pa, swept.ctx()).unwrap());

    // its polynomial has rational roots, so the scan pattern includes the
    // corresponding bad t values
    let p = drinfeld_poly(seed_pa.zeta(), swept.ctx()).unwrap();
    let bad = p.rational_bad_t();
    assert_eq!(bad, rv(&["45/16", "45/4"]));
    let mut ts = rv(&["1", "2", "-1", "1/2", "0"]);
    ts.extend(bad.clone());
    let rows = scan(&swept, &ts).unwrap();
    for row in &rows {
        assert_eq!(row.predicted, row.actual);
        let expect_false = row.t.is_zero() || bad.contains(&row.t);
        assert_eq!(row.actual, !expect_false, "wrong verdict at t = {}", row.t);
    }

    let elapsed = started.elapsed();
    println!("acceptance criterion 7: PASS (d2 sweep found phi = (1, 1), {elapsed:?})");
}
