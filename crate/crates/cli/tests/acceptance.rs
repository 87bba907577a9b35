//! Acceptance gate.
//!
//! Eleven criteria, each printed as one PASS/FAIL line. All of them run before the
//! test asserts, so a failing criterion does not hide the others.

use std::time::Instant;

use hocat::doldkan::enumerate_surjections;
use hocat::exactlin::{IntMatrix, Integer};
use hocat::excat::{cokernel, InstanceId, Mor, Obj};
use hocat::model::ModelFlavor;
use hocat::resolve::ext_group;
use hocat_cli::suites::{box_pair_count, property, run_property, RunConfig};

const SEED: u64 = 20_240_601;

const ABELIAN: [InstanceId; 2] = [InstanceId::VectQ, InstanceId::FgAb];

#[derive(Default)]
struct Tally {
    cases: usize,
    passed: usize,
    vacuous: usize,
    failed: usize,
    notes: Vec<String>,
}

impl Tally {
    fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    fn summary(&self) -> String {
        format!(
            "{} cases, {} passed, {} vacuous, {} failed",
            self.cases, self.passed, self.vacuous, self.failed
        )
    }

    /// Runs `name` for `cases` cases on each instance.
    fn run(&mut self, name: &str, instances: &[InstanceId], cases: usize) {
        let p = property(name).unwrap_or_else(|| panic!("unknown property {name}"));
        let cfg = RunConfig {
            cases,
            seed: SEED,
            ..RunConfig::default()
        };
        for &inst in instances {
            let (s, failures) = run_property(&p, inst, &cfg);
            self.cases += s.cases;
            self.passed += s.passed;
            self.vacuous += s.vacuous;
            self.failed += s.failed;
            for f in failures {
                self.notes.push(format!(
                    "{} on {} (case {}, seed {}): {} {}",
                    f.property, f.instance, f.case, f.seed, f.invariant, f.detail
                ));
            }
        }
    }

    /// Records one exact check.
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.notes.push(what());
        }
    }

    /// Vacuous cases are not allowed for this property.
    fn forbid_vacuous(&mut self, what: &str) {
        if self.vacuous > 0 {
            self.failed += self.vacuous;
            self.notes
                .push(format!("{what}: {} vacuous cases", self.vacuous));
            self.vacuous = 0;
        }
    }
}

fn all() -> Vec<InstanceId> {
    InstanceId::ALL.to_vec()
}

fn admissibility() -> Tally {
    let mut t = Tally::default();
    t.run("excat.admissible_factorization", &all(), 1000);
    t.run("excat.invertible_bimorphism", &all(), 1000);
    t.run("excat.filtered_strictness", &[InstanceId::FiltQ], 1000);
    t
}

fn acyclicity() -> Tally {
    let mut t = Tally::default();
    t.run("chain.acyclicity_oracles", &all(), 1000);
    t
}

fn homotopy() -> Tally {
    let mut t = Tally::default();
    t.run("chain.null_homotopy", &all(), 500);
    t
}

fn quasi_isos() -> Tally {
    let mut t = Tally::default();
    t.run("chain.homotopy_equivalence", &all(), 200);
    t.forbid_vacuous("homotopy equivalences");
    t.run("model.two_out_of_three", &all(), 500);
    t.run("resolve.acyclic_kernel", &all(), 300);
    t
}

fn factorizations() -> Tally {
    let mut t = Tally::default();
    t.run("model.factorizations.geq0", &all(), 300);
    t.run("model.factorizations.plus", &all(), 300);
    t.forbid_vacuous("factorizations");
    t
}

fn lifting() -> Tally {
    let mut t = Tally::default();
    t.run("model.lifting.geq0", &all(), 200);
    t.run("model.lifting.plus", &all(), 200);
    t.forbid_vacuous("lifting squares");
    t.run("model.retract_argument.geq0", &all(), 300);
    t.run("model.retract_argument.plus", &all(), 300);
    t
}

/// `Ext¹(Z/m, B) ≅ B/mB`, read off `0 → Z → Z → Z/m → 0`.
fn ext1_cyclic_oracle(m: i64, b: &Obj) -> Obj {
    let n = b.gens();
    let scalar = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Integer::new(m)
        } else {
            Integer::new(0)
        }
    });
    let times_m = Mor::from_int(b, b, scalar).expect("multiplication is a homomorphism");
    cokernel(&times_m).0
}

fn ext_values() -> Tally {
    let mut t = Tally::default();
    let z = Obj::z();
    let z2 = Obj::z_mod(2);
    let z4 = Obj::z_mod(4);
    let z6 = Obj::z_mod(6);
    let cases: [(&Obj, &Obj, Obj); 2] = [(&z2, &z, Obj::z_mod(2)), (&z4, &z6, Obj::z_mod(2))];
    for (a, b, want) in cases {
        let got = ext_group(1, a, b).expect("Ext computes");
        t.check(got == want, || {
            format!("Ext¹({a}, {b}) = {got}, expected {want}")
        });
    }
    let targets = [
        Obj::z(),
        Obj::z_mod(2),
        Obj::z_mod(6),
        Obj::ab(1, &[4]).unwrap(),
        Obj::ab(2, &[2, 6]).unwrap(),
    ];
    for m in [2, 3, 4, 6] {
        for b in &targets {
            let got = ext_group(1, &Obj::z_mod(m), b).expect("Ext computes");
            let want = ext1_cyclic_oracle(m, b);
            t.check(got == want, || {
                format!("Ext¹(Z/{m}, {b}) = {got}, oracle {want}")
            });
            let higher = ext_group(2, &Obj::z_mod(m), b).expect("Ext computes");
            t.check(higher.is_zero(), || format!("Ext²(Z/{m}, {b}) = {higher}"));
        }
    }
    let projectives: Vec<Obj> = vec![
        Obj::z(),
        Obj::ab(3, &[]).unwrap(),
        Obj::vect(1),
        Obj::vect(3),
        Obj::p0(),
        Obj::p1(),
        Obj::filt_std(3, 1),
    ];
    let probes = |inst: InstanceId| -> Vec<Obj> {
        match inst {
            InstanceId::FgAb => targets.to_vec(),
            InstanceId::VectQ => vec![Obj::vect(1), Obj::vect(2)],
            InstanceId::FiltQ => vec![Obj::p0(), Obj::p1(), Obj::filt_std(2, 1)],
        }
    };
    for p in &projectives {
        for b in probes(p.instance()) {
            for n in 1..=2 {
                let got = ext_group(n, p, &b).expect("Ext computes");
                t.check(got.is_zero(), || format!("Ext^{n}({p}, {b}) = {got}"));
            }
        }
    }
    t
}

fn monoidality() -> Tally {
    let mut t = Tally::default();
    for flavor in ModelFlavor::ALL {
        let name = match flavor {
            ModelFlavor::ChGeq0 => "monoidal.generating_boxes.geq0",
            ModelFlavor::ChPlus => "monoidal.generating_boxes.plus",
        };
        for inst in ABELIAN {
            t.run(name, &[inst], box_pair_count(inst, flavor));
        }
    }
    t.run("monoidal.disk_tensor_acyclic", &ABELIAN, 100);
    t.forbid_vacuous("pushout-products and disk tensors");
    t
}

fn pascal(n: usize) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let row = (0..=k)
            .map(|j| {
                let left = if j > 0 { prev[j - 1] } else { 0 };
                let right = if j < k { prev[j] } else { 0 };
                left + right
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn dold_kan() -> Tally {
    let mut t = Tally::default();
    t.run("doldkan.n_gamma_identity", &all(), 200);
    t.run("doldkan.simplicial_identities", &all(), 200);
    t.forbid_vacuous("Dold-Kan cases");
    let c = pascal(8);
    for n in 0..=8 {
        for p in 0..=n {
            let got = enumerate_surjections(n, p).expect("p ≤ n").len();
            t.check(got == c[n][p], || {
                format!("{got} surjections [{n}] → [{p}], expected {}", c[n][p])
            });
        }
    }
    t
}

fn free_algebras() -> Tally {
    let mut t = Tally::default();
    for name in [
        "freealg.symmetric_section",
        "freealg.lie_section",
        "freealg.pbw",
        "freealg.dimensions",
    ] {
        t.run(name, &[InstanceId::VectQ], 3);
    }
    t.forbid_vacuous("free algebra checks");
    t
}

fn properness() -> Tally {
    let mut t = Tally::default();
    t.run("model.properness", &all(), 200);
    t.forbid_vacuous("properness squares");
    t
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Tally); 11] = [
        ("1  admissibility calculus", admissibility),
        ("2  acyclicity oracles", acyclicity),
        ("3  homotopy oracles", homotopy),
        ("4  quasi-isomorphism calculus", quasi_isos),
        ("5  model factorizations", factorizations),
        ("6  lifting and retract argument", lifting),
        ("7  Ext values", ext_values),
        ("8  monoidality", monoidality),
        ("9  Dold-Kan", dold_kan),
        ("10 free algebras", free_algebras),
        ("11 left and right properness", properness),
    ];
    let mut failed = vec![];
    for (name, criterion) in criteria {
        let start = Instant::now();
        let t = criterion();
        let status = if t.ok() { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {name}: {} ({:.1} s)",
            t.summary(),
            start.elapsed().as_secs_f64()
        );
        for note in t.notes.iter().take(5) {
            println!("     {note}");
        }
        if !t.ok() {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
