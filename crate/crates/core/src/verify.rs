//! Seeded verification suites behind the CLI `verify` command.
//!
//! Each suite runs a deterministic battery: identical (suite, samples, seed)
//! inputs produce identical reports, so two runs can be compared byte for
//! byte once serialized.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog;
use crate::cones::FourManifoldModel;
use crate::error::{Error, Result};
use crate::fibersum::{
    build_sum, iterate_sum, push_sum_class, split_class, sum_cone_contains, FiberSumSpec,
    GluedBasis, SumStage,
};
use crate::lattice::CohomClass;
use crate::rational::Rational;
use crate::sample::{random_class, random_class_where, random_unit_fraction, SplitMix64};

/// Available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Torus-bundle relative-cone table reproduction.
    Table,
    /// Split/push volume preservation, round trips and witness cones on
    /// T4 # T4 and (T2 x Sigma_2) # T4.
    T2,
    /// Three-way predicate agreement on the iterated T4 tower, k = 2..5.
    Snt4,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Suite::Table),
            "t2" => Ok(Suite::T2),
            "snt4" => Ok(Suite::Snt4),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite `{other}` (expected table, t2 or snt4)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Table => "table",
            Suite::T2 => "t2",
            Suite::Snt4 => "snt4",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passes: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub sample_index: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub samples: u64,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub total_passes: u64,
    pub total_failures: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.total_failures == 0
    }
}

struct Recorder {
    checks: Vec<CheckReport>,
    first: Option<Counterexample>,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            checks: Vec::new(),
            first: None,
        }
    }

    fn check(&mut self, name: &str) -> usize {
        self.checks.push(CheckReport {
            name: name.to_string(),
            passes: 0,
            failures: 0,
        });
        self.checks.len() - 1
    }

    fn record(&mut self, idx: usize, pass: bool, sample: u64, detail: impl FnOnce() -> String) {
        if pass {
            self.checks[idx].passes += 1;
        } else {
            self.checks[idx].failures += 1;
            if self.first.is_none() {
                self.first = Some(Counterexample {
                    check: self.checks[idx].name.clone(),
                    sample_index: sample,
                    detail: detail(),
                });
            }
        }
    }

    fn finish(self, suite: Suite, samples: u64, seed: u64) -> SuiteReport {
        let total_passes = self.checks.iter().map(|c| c.passes).sum();
        let total_failures = self.checks.iter().map(|c| c.failures).sum();
        SuiteReport {
            suite: suite.to_string(),
            samples,
            seed,
            checks: self.checks,
            total_passes,
            total_failures,
            first_counterexample: self.first,
        }
    }
}

/// Runs a suite with the seeded generator.
pub fn run_suite(suite: Suite, samples: u64, seed: u64) -> Result<SuiteReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    match suite {
        Suite::Table => run_table(samples, seed),
        Suite::T2 => run_t2(samples, seed),
        Suite::Snt4 => run_snt4(samples, seed),
    }
}

/// Expected relative-cone answer of a table row, restated independently of
/// the dispatch code: the frozen row semantics.
fn expected_row(model: &FourManifoldModel, alpha: &CohomClass) -> Result<bool> {
    let l = model.lattice();
    let sq = l.square(alpha)?;
    let fiber = model
        .fiber_class()
        .ok_or_else(|| Error::Internal("table model without fiber".into()))?;
    let pf = l.pair(alpha, fiber)?;
    use crate::cones::ConeTableTag::*;
    Ok(match model.cone_table_tag().expect("table model") {
        T4 | PrimaryKodaira => sq.is_positive() && pf.is_positive(),
        Hyperelliptic | TypeEH => sq.is_positive(),
        TypeD => false,
    })
}

fn run_table(samples: u64, seed: u64) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let mut rng = SplitMix64::new(seed);
    let names = ["T4", "PrimaryKodaira", "Hyperelliptic", "TypeD", "TypeEH"];
    for name in names {
        let model = catalog::get_model(name)?;
        let l = model.lattice();
        let fiber = model.fiber_class().cloned().expect("table fiber");

        let rel_idx = rec.check(&format!("row-{name}-relative-cone"));
        let pos_idx = rec.check(&format!("row-{name}-positive-cone"));
        let conj_idx = rec.check(&format!("row-{name}-conjecture-cone"));

        // fixed probes over the first basis vectors, then seeded random ones
        let b0 = CohomClass::basis(l, 0)?;
        let b1 = CohomClass::basis(l, 1)?;
        let mut probes = vec![
            b0.add(&b1)?,                            // square 2, fiber-pairing 1
            b0.add(&b1)?.neg(),                      // square 2, fiber-pairing -1
            b0.clone(),                              // isotropic
            b1.sub(&b0)?,                            // square -2
            b0.scale(&Rational::from_int(3))
                .add(&b1.scale(&Rational::from_int(2)))?, // square 12, pairing 2
        ];
        if l.rank() >= 4 {
            let b2 = CohomClass::basis(l, 2)?;
            let b3 = CohomClass::basis(l, 3)?;
            probes.push(b0.add(&b1)?.add(&b2.sub(&b3)?)?); // square 0 boundary
        }
        for _ in 0..samples {
            probes.push(random_class(&mut rng, l));
        }

        for (i, alpha) in probes.iter().enumerate() {
            let expected = expected_row(&model, alpha)?;
            let got = model.relative_cone_contains(&fiber, alpha)?.member;
            rec.record(rel_idx, got == expected, i as u64, || {
                format!(
                    "{name}: relative verdict {got}, table row expects {expected} on {}",
                    l.render_class(alpha)
                )
            });

            let sq_pos = l.square(alpha)?.is_positive();
            let pos = model.positive_cone_contains(alpha)?.member;
            rec.record(pos_idx, pos == sq_pos, i as u64, || {
                format!("{name}: positive-cone verdict {pos} but square-positivity is {sq_pos}")
            });

            // every row has torsion K, so the minimal-Kaehler cone is P
            let conj = model.conjecture_cone_contains(alpha)?.member;
            rec.record(conj_idx, conj == sq_pos, i as u64, || {
                format!("{name}: conjecture-cone verdict {conj} but P-membership is {sq_pos}")
            });
        }
    }

    // the empty-row check: a class passing every open condition is still out
    let d = catalog::get_model("TypeD")?;
    let ld = d.lattice();
    let fd = d.fiber_class().cloned().expect("fiber");
    let idx = rec.check("row-TypeD-empty-cone");
    let probe = CohomClass::basis(ld, 0)?.add(&CohomClass::basis(ld, 1)?)?;
    let sq = ld.square(&probe)?;
    let pf = ld.pair(&probe, &fd)?;
    let verdict = d.relative_cone_contains(&fd, &probe)?;
    rec.record(
        idx,
        sq.is_positive() && pf.is_positive() && !verdict.member,
        0,
        || "TypeD admitted a class into its empty relative cone".to_string(),
    );

    Ok(rec.finish(Suite::Table, samples, seed))
}

fn t2_sums() -> Result<Vec<(&'static str, FiberSumSpec)>> {
    let t4 = catalog::get_model("T4")?;
    let f4 = t4.fiber_class().cloned().expect("fiber");
    let t4t4 = FiberSumSpec::new(
        t4.clone(),
        t4.clone(),
        f4.clone(),
        f4.clone(),
        1,
        true,
        0,
        0,
    )?;
    let t2s2 = catalog::get_model("T2xSigma(2)")?;
    let fs = t2s2.fiber_class().cloned().expect("fiber");
    let mixed = FiberSumSpec::new(t2s2, t4, fs, f4, 1, true, 0, 0)?;
    Ok(vec![("t4t4", t4t4), ("t2s2-t4", mixed)])
}

fn run_t2(samples: u64, seed: u64) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let mut rng = SplitMix64::new(seed);
    for (tag, spec) in t2_sums()? {
        let (_, basis) = build_sum(&spec)?;
        let l = basis.glued_lattice();
        let vol_idx = rec.check(&format!("{tag}-volume-preservation"));
        let rt_idx = rec.check(&format!("{tag}-push-split-round-trip"));
        let wc_idx = rec.check(&format!("{tag}-witness-summand-cones"));
        for i in 0..samples {
            let alpha = random_class_where(&mut rng, l, |a| {
                a.coeff(1).is_positive() && l.square(a).unwrap().is_positive()
            });
            let sq = l.square(&alpha)?;
            let rho = &sq * &random_unit_fraction(&mut rng);
            let (ax, ay) = split_class(&spec, &basis, &alpha, &rho)?;
            let sx = spec.x_model().lattice().square(&ax)?;
            let sy = spec.y_model().lattice().square(&ay)?;
            rec.record(vol_idx, &sx + &sy == sq && sx == rho, i, || {
                format!(
                    "alpha = {}, rho = {rho}: squares {sx} + {sy} != {sq}",
                    l.render_class(&alpha)
                )
            });
            let back = push_sum_class(&spec, &basis, &ax, &ay)?;
            rec.record(rt_idx, back == alpha, i, || {
                format!(
                    "push(split(alpha)) = {} differs from alpha = {}",
                    l.render_class(&back),
                    l.render_class(&alpha)
                )
            });
            let okx = spec
                .x_model()
                .relative_cone_contains(spec.v_in_x(), &ax)?
                .member;
            let oky = spec
                .y_model()
                .relative_cone_contains(spec.v_in_y(), &ay)?
                .member;
            rec.record(wc_idx, okx && oky, i, || {
                format!(
                    "witness ({}, {}) rejected by a summand cone (X: {okx}, Y: {oky})",
                    spec.x_model().lattice().render_class(&ax),
                    spec.y_model().lattice().render_class(&ay)
                )
            });
        }
    }
    Ok(rec.finish(Suite::T2, samples, seed))
}

fn tower(k: u32) -> Result<(FourManifoldModel, GluedBasis, FiberSumSpec)> {
    let t4 = catalog::get_model("T4")?;
    let f = t4.fiber_class().cloned().expect("fiber");
    let first = FiberSumSpec::new(t4.clone(), t4.clone(), f.clone(), f.clone(), 1, true, 0, 0)?;
    let stage = SumStage {
        y_model: t4,
        v_in_y: f,
        v_genus: 1,
        h1_injects_into_y: true,
        rim_rank: 0,
        tau_rank: 0,
    };
    let stages = vec![stage; (k - 2) as usize];
    let folded = iterate_sum(first, &stages)?;
    Ok((folded.model, folded.basis, folded.final_spec))
}

fn run_snt4(samples: u64, seed: u64) -> Result<SuiteReport> {
    let mut rec = Recorder::new();
    let mut rng = SplitMix64::new(seed);
    for k in 2..=5u32 {
        let (model, basis, spec) = tower(k)?;
        let l = basis.glued_lattice();
        let fiber = model.fiber_class().cloned().expect("fiber");
        let agree_idx = rec.check(&format!("k={k}-threeway-agreement"));
        let both_idx = rec.check(&format!("k={k}-members-and-nonmembers-exercised"));
        let mut members = 0u64;
        let mut nonmembers = 0u64;
        for i in 0..samples {
            // orientation-normalize: the sum cone is one-sided in F while
            // the minimal-Kaehler cone is the two-sided union, so compare on
            // the F >= 0 half where all three predicates coincide
            let mut alpha = random_class(&mut rng, l);
            if l.pair(&alpha, &fiber)?.is_negative() {
                alpha = alpha.neg();
            }
            let sum_member = sum_cone_contains(&spec, &basis, &alpha)?.member;
            let sq = l.square(&alpha)?;
            let pf = l.pair(&alpha, &fiber)?;
            let direct = sq.is_positive() && pf.is_positive();
            let conj = model.conjecture_cone_contains(&alpha)?.member;
            rec.record(
                agree_idx,
                sum_member == direct && direct == conj,
                i,
                || {
                    format!(
                        "k={k}, alpha = {}: sum {sum_member}, half-space {direct}, conjecture {conj}",
                        l.render_class(&alpha)
                    )
                },
            );
            if direct {
                members += 1;
            } else {
                nonmembers += 1;
            }
        }
        rec.record(both_idx, members > 0 && nonmembers > 0, 0, || {
            format!("k={k}: members {members}, nonmembers {nonmembers}")
        });
    }
    Ok(rec.finish(Suite::Snt4, samples, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_smoke() {
        for suite in [Suite::Table, Suite::T2, Suite::Snt4] {
            let r = run_suite(suite, 25, 7).unwrap();
            assert!(r.all_pass(), "suite {suite} failed: {:?}", r.first_counterexample);
            assert!(r.total_passes > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        for suite in [Suite::Table, Suite::T2, Suite::Snt4] {
            let a = serde_json::to_string(&run_suite(suite, 10, 99).unwrap()).unwrap();
            let b = serde_json::to_string(&run_suite(suite, 10, 99).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(run_suite(Suite::Table, 0, 1).is_err());
    }

    #[test]
    fn recorder_captures_first_counterexample() {
        let mut rec = Recorder::new();
        let a = rec.check("alpha");
        let b = rec.check("beta");
        rec.record(a, true, 0, || unreachable!("pass records no detail"));
        rec.record(b, false, 3, || "first".to_string());
        rec.record(b, false, 4, || "second".to_string());
        let report = rec.finish(Suite::Table, 1, 0);
        assert_eq!(report.total_passes, 1);
        assert_eq!(report.total_failures, 2);
        assert!(!report.all_pass());
        let cx = report.first_counterexample.unwrap();
        assert_eq!(cx.check, "beta");
        assert_eq!(cx.sample_index, 3);
        assert_eq!(cx.detail, "first");
    }

    #[test]
    fn suite_parsing() {
        assert_eq!("table".parse::<Suite>().unwrap(), Suite::Table);
        assert_eq!("t2".parse::<Suite>().unwrap(), Suite::T2);
        assert_eq!("snt4".parse::<Suite>().unwrap(), Suite::Snt4);
        assert!("bogus".parse::<Suite>().is_err());
    }
}
