//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test -p conekit-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::{Duration, Instant};

use conekit::catalog;
use conekit::lattice::{block_diag, hyperbolic_block, minus_e8_block};
use conekit::sample::{random_class, random_unimodular, SplitMix64};
use conekit::verify::{run_suite, Suite};
use conekit::{
    build_sum, recheck_certificate, CohomClass, FiberSumSpec, IntersectionLattice, Rational,
    Signature,
};

fn within(elapsed: Duration, bound_ms: u64, what: &str) {
    assert!(
        elapsed <= Duration::from_millis(bound_ms),
        "{what} took {elapsed:?}, budget {bound_ms} ms"
    );
}

#[test]
fn criterion_1_table_reproduction() {
    let t0 = Instant::now();
    let report = run_suite(Suite::Table, 50, 17).expect("table suite runs");
    let elapsed = t0.elapsed();
    assert!(
        report.all_pass(),
        "table rows disagree: {:?}",
        report.first_counterexample
    );
    // all five rows and the explicit empty-row check are present
    for name in ["T4", "PrimaryKodaira", "Hyperelliptic", "TypeD", "TypeEH"] {
        assert!(
            report.checks.iter().any(|c| c.name.contains(name)),
            "row {name} missing from the battery"
        );
    }
    assert!(report.checks.iter().any(|c| c.name == "row-TypeD-empty-cone"));
    within(elapsed, 1000, "criterion 1");
    println!(
        "[PASS] criterion 1: five-row table reproduced ({} checks, {} probes, {elapsed:?})",
        report.checks.len(),
        report.total_passes
    );
}

#[test]
fn criterion_2_t4_sum_is_the_genus2_product() {
    let t0 = Instant::now();
    let t4 = catalog::get_model("T4").unwrap();
    let f = t4.fiber_class().cloned().unwrap();
    let spec = FiberSumSpec::new(t4.clone(), t4, f.clone(), f, 1, true, 0, 0).unwrap();
    let (model, _) = build_sum(&spec).unwrap();

    assert_eq!(model.lattice().rank(), 10);
    assert_eq!(
        model.signature(),
        Signature { b_plus: 5, b_minus: 5, b_zero: 0 }
    );
    let fiber = CohomClass::basis(model.lattice(), 0).unwrap();
    assert_eq!(model.k_class(), &fiber.scale(&Rational::from_int(2)), "K != 2 F");

    let pinned = catalog::get_model("T2xSigma(2)").unwrap();
    assert!(
        model.math_eq(&pinned),
        "glued model differs from the pinned product (fields compared: gram, K, exceptional, \
         b+, b1, minimal, fiber, tag, cone flag)"
    );
    let elapsed = t0.elapsed();
    within(elapsed, 1000, "criterion 2");
    println!("[PASS] criterion 2: T4 #_V T4 = T2 x Sigma_2 field-by-field ({elapsed:?})");
}

#[test]
fn criterion_3_rim_tori_bookkeeping_reaches_the_k3_form() {
    let t0 = Instant::now();
    let e1 = catalog::get_model("E1").unwrap();
    let f = e1.fiber_class().cloned().unwrap();
    let spec = FiberSumSpec::new(e1.clone(), e1, f.clone(), f, 1, false, 2, 2).unwrap();
    let (model, basis) = build_sum(&spec).unwrap();

    assert_eq!(model.lattice().rank(), 22);
    assert_eq!(
        model.signature(),
        Signature { b_plus: 3, b_minus: 19, b_zero: 0 }
    );
    // exactly two extra hyperbolic summands, orthogonal to everything else
    let n = model.lattice().rank();
    let gram = model.lattice().gram();
    let rim_indices: Vec<usize> = basis
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!(e.role, conekit::BasisRole::Rim | conekit::BasisRole::Tau))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(rim_indices.len(), 4, "expected two rim/tau pairs");
    let (zero, one) = (num_bigint::BigInt::from(0), num_bigint::BigInt::from(1));
    for pair in rim_indices.chunks(2) {
        let (r, t) = (pair[0], pair[1]);
        assert!(gram[r][r] == zero && gram[t][t] == zero);
        assert!(gram[r][t] == one);
        for j in (0..n).filter(|&j| j != r && j != t) {
            assert!(gram[r][j] == zero && gram[t][j] == zero);
        }
    }
    let elapsed = t0.elapsed();
    within(elapsed, 1000, "criterion 3");
    println!(
        "[PASS] criterion 3: E1 #_V E1 with rim rank 2 has the K3 form, two new hyperbolic \
         summands ({elapsed:?})"
    );
}

#[test]
fn criterion_4_split_push_property_suite() {
    let t0 = Instant::now();
    let report = run_suite(Suite::T2, 1000, 7).expect("t2 suite runs");
    let elapsed = t0.elapsed();
    assert_eq!(
        report.total_failures, 0,
        "t2 suite failed: {:?}",
        report.first_counterexample
    );
    // volume, round-trip and witness-cone checks on both sums, 1000 each
    assert_eq!(report.checks.len(), 6);
    for c in &report.checks {
        assert_eq!(c.passes, 1000, "{} ran {} samples", c.name, c.passes);
    }
    within(elapsed, 5000, "criterion 4");
    println!(
        "[PASS] criterion 4: split/push suite on T4#T4 and (T2xSigma2)#T4, 6 x 1000 checks \
         ({elapsed:?})"
    );
}

#[test]
fn criterion_5_snt4_three_way_agreement() {
    let t0 = Instant::now();
    let report = run_suite(Suite::Snt4, 500, 1).expect("snt4 suite runs");
    let elapsed = t0.elapsed();
    assert_eq!(
        report.total_failures, 0,
        "snt4 suite failed: {:?}",
        report.first_counterexample
    );
    for k in 2..=5 {
        let name = format!("k={k}-threeway-agreement");
        let check = report
            .checks
            .iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("{name} missing"));
        assert_eq!(check.passes, 500);
        let both = format!("k={k}-members-and-nonmembers-exercised");
        assert!(report.checks.iter().any(|c| c.name == both && c.failures == 0));
    }
    within(elapsed, 5000, "criterion 5");
    println!(
        "[PASS] criterion 5: sum cone, half-space and minimal-Kaehler predicates agree on the \
         k=2..5 towers, 500 samples each ({elapsed:?})"
    );
}

#[test]
fn criterion_6_b1_li1_consistency_on_e1() {
    let t0 = Instant::now();
    let e1 = catalog::get_model("E1").unwrap();
    let l = e1.lattice();
    let f = e1.fiber_class().cloned().unwrap();
    let mut rng = SplitMix64::new(123);
    let mut false_count = 0u32;
    for i in 0..1000 {
        let a = random_class(&mut rng, l);
        let sym = e1.symplectic_cone_b1_contains(&a).unwrap();
        let pv = l.pair(&a, &f).unwrap();
        let rel = e1.relative_cone_contains(&f, &a).unwrap();
        assert_eq!(
            sym.member && pv.is_positive(),
            rel.member,
            "predicates disagree at sample {i} on {}",
            l.render_class(&a)
        );
        for v in [&sym, &rel] {
            if !v.member {
                false_count += 1;
                assert!(
                    recheck_certificate(&e1, &a, v).unwrap(),
                    "certificate failed recheck at sample {i}"
                );
            }
        }
    }
    assert!(false_count > 0, "battery never exercised a false verdict");
    let elapsed = t0.elapsed();
    within(elapsed, 2000, "criterion 6");
    println!(
        "[PASS] criterion 6: b+=1 symplectic cone and relative cone agree on E(1), 1000 samples, \
         {false_count} false verdicts re-checked ({elapsed:?})"
    );
}

#[test]
fn criterion_7_lattice_layer() {
    let t0 = Instant::now();
    // the K3 form
    let k3 = IntersectionLattice::new(
        (0..22).map(|i| format!("v{i}")).collect(),
        block_diag(&[
            hyperbolic_block(),
            hyperbolic_block(),
            hyperbolic_block(),
            minus_e8_block(),
            minus_e8_block(),
        ]),
    )
    .unwrap();
    assert_eq!(
        k3.signature(),
        Signature { b_plus: 3, b_minus: 19, b_zero: 0 }
    );

    // 100 unimodular basis changes across ranks <= 10 preserve the signature
    let mut rng = SplitMix64::new(55);
    let subjects = [
        IntersectionLattice::new(
            (0..2).map(|i| format!("h{i}")).collect(),
            hyperbolic_block(),
        )
        .unwrap(),
        IntersectionLattice::new(
            (0..6).map(|i| format!("t{i}")).collect(),
            block_diag(&[hyperbolic_block(), hyperbolic_block(), hyperbolic_block()]),
        )
        .unwrap(),
        catalog::get_model("E1").unwrap().lattice().clone(),
        IntersectionLattice::new(
            (0..8).map(|i| format!("e{i}")).collect(),
            minus_e8_block(),
        )
        .unwrap(),
    ];
    let mut transforms = 0;
    while transforms < 100 {
        for l in &subjects {
            let u = random_unimodular(&mut rng, l.rank(), 12);
            let changed = l.change_basis(&u).unwrap();
            assert_eq!(changed.signature(), l.signature(), "rank {}", l.rank());
            transforms += 1;
        }
    }

    // pairing symmetry and bilinearity, exact
    for l in &subjects {
        for _ in 0..50 {
            let a = random_class(&mut rng, l);
            let b = random_class(&mut rng, l);
            let c = random_class(&mut rng, l);
            let lam = Rational::new(rng.next_in(-5, 5), rng.next_in(1, 4)).unwrap();
            assert_eq!(l.pair(&a, &b).unwrap(), l.pair(&b, &a).unwrap());
            let lhs = l.pair(&a.add(&b.scale(&lam)).unwrap(), &c).unwrap();
            let rhs = &l.pair(&a, &c).unwrap() + &(&lam * &l.pair(&b, &c).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
    let elapsed = t0.elapsed();
    within(elapsed, 2000, "criterion 7");
    println!(
        "[PASS] criterion 7: K3-form signature (3,19,0), {transforms} unimodular invariance \
         checks, symmetry/bilinearity suites ({elapsed:?})"
    );
}

#[test]
fn criterion_8_verify_determinism() {
    let run = |suite: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_conekit"))
            .args(["verify", suite, "--samples", "100", "--seed", "42"])
            .env_remove("CONEKIT_CATALOG")
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "suite {suite} failed");
        out.stdout
    };
    for suite in ["table", "t2", "snt4"] {
        let first = run(suite);
        let second = run(suite);
        assert_eq!(first, second, "suite {suite} reports differ between runs");
    }
    println!("[PASS] criterion 8: verify reports byte-identical across runs for all suites");
}
