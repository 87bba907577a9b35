//! Property suites over random and enumerated inputs.
//!
//! Every property draws its inputs from a [`Gen`] seeded per case, so a failing
//! case replays from its seed alone. On failure the case is re-run with smaller size
//! budgets and the smallest failing reproduction is kept.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use hocat::chain::{
    acyclic_by_generators, cokernel_complex, cone, cone_with, cycles, direct_sum_complexes, disk,
    homology_vanishes, homotopy_between, homotopy_class_vanishes, is_acyclic, is_quasi_iso,
    is_split_exact, null_homotopy_witness, sphere, ChainMap, Complex, ConeSign,
};
use hocat::doldkan::{
    check_counit, check_equivalence, check_n_preserves_structure, enumerate_surjections, gamma,
    gamma_map,
};
use hocat::exactlin::{Integer, Scalar};
use hocat::excat::{
    admissible_by_definition, classify, cokernel, detect_epi_via_generators,
    epi_mono_factorization, filt_strict_criterion, is_admissible_epi, is_admissible_mono, is_iso,
    is_projective, is_projective_structural, is_short_exact, kernel, projective_cover,
    pushout_along_mono, two_sided_inverse_by_system, InstanceId, Mor, Obj,
};
use hocat::freealg::{
    free_lie_trunc, pbw_dimension_check, symmetric_trunc, tensor_algebra_trunc, tensor_power_map,
    SymmetricTrunc,
};
use hocat::model::{
    classify_map_model, factor_cof_triv_fib, factor_triv_cof_fib, generating_cofibrations,
    pullback_complexes, pushout_complexes, retract_argument_check, solve_lifting, LiftingProblem,
    ModelFlavor,
};
use hocat::monoidal::{
    default_flat_probes, is_flat_probe, pushout_product, tensor_chain_maps, tensor_complexes,
};
use hocat::resolve::{
    comparison_lift_complex, cover_splits, ext_group, homology_les, resolve_complex,
};

use crate::format::Workspace;
use crate::random::{case_seed, Gen, Window};
use crate::report::{Failure, PropertySummary, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Excat,
    Chain,
    Resolve,
    Model,
    Monoidal,
    Doldkan,
    Freealg,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Excat,
        Suite::Chain,
        Suite::Resolve,
        Suite::Model,
        Suite::Monoidal,
        Suite::Doldkan,
        Suite::Freealg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Excat => "excat",
            Suite::Chain => "chain",
            Suite::Resolve => "resolve",
            Suite::Model => "model",
            Suite::Monoidal => "monoidal",
            Suite::Doldkan => "doldkan",
            Suite::Freealg => "freealg",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.to_ascii_lowercase())
    }
}

/// Settings for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub cases: usize,
    pub seed: u64,
    pub cell_budget: Option<usize>,
    /// Size budget (generators per random complex) for the first attempt of a case.
    pub size: usize,
    /// Cone convention used where the harness builds cones itself.
    pub cone_sign: ConeSign,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            cases: 50,
            seed: 0,
            cell_budget: None,
            size: 6,
            cone_sign: ConeSign::Standard,
        }
    }
}

/// What a property sees besides its generator.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub instance: InstanceId,
    pub flavor: ModelFlavor,
    pub size: usize,
    /// Index of the case within the run; enumerated properties use it directly.
    pub case: usize,
    pub cell_budget: Option<usize>,
    pub cone_sign: ConeSign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The hypothesis of the property did not hold for this input.
    Vacuous,
}

#[derive(Clone, Debug)]
pub struct Fail {
    pub invariant: String,
    pub detail: String,
    pub reproduction: Workspace,
}

pub type Case = Result<Outcome, Fail>;

pub struct Property {
    pub name: &'static str,
    pub suite: Suite,
    pub flavor: ModelFlavor,
    pub instances: &'static [InstanceId],
    pub run: fn(&mut Gen, &Ctx) -> Case,
}

impl Property {
    pub fn applies_to(&self, instance: InstanceId) -> bool {
        self.instances.contains(&instance)
    }
}

const ALL: &[InstanceId] = &InstanceId::ALL;
const ABELIAN: &[InstanceId] = &[InstanceId::VectQ, InstanceId::FgAb];
const FILT: &[InstanceId] = &[InstanceId::FiltQ];
const VECT: &[InstanceId] = &[InstanceId::VectQ];

macro_rules! ensure {
    ($cond:expr, $inv:expr, $repro:expr) => {
        if !$cond {
            return Err(Fail { invariant: $inv.to_string(), detail: String::new(), reproduction: $repro });
        }
    };
    ($cond:expr, $inv:expr, $repro:expr, $($detail:tt)+) => {
        if !$cond {
            return Err(Fail { invariant: $inv.to_string(), detail: format!($($detail)+), reproduction: $repro });
        }
    };
}

macro_rules! attempt {
    ($e:expr, $inv:expr, $repro:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                return Err(Fail {
                    invariant: $inv.to_string(),
                    detail: err.to_string(),
                    reproduction: $repro,
                });
            }
        }
    };
}

fn ws_maps(inst: InstanceId, maps: &[(&str, &ChainMap)]) -> Workspace {
    let mut ws = Workspace::new(inst);
    for (k, f) in maps {
        ws.add_chain_map(k, f);
    }
    ws
}

fn ws_complexes(inst: InstanceId, xs: &[(&str, &Complex)]) -> Workspace {
    let mut ws = Workspace::new(inst);
    for (k, x) in xs {
        ws.complexes.insert(k.to_string(), (*x).clone());
    }
    ws
}

fn ws_mors(inst: InstanceId, ms: &[(&str, &Mor)]) -> Workspace {
    let mut ws = Workspace::new(inst);
    for (k, m) in ms {
        ws.add_mor(k, m);
    }
    ws
}

fn ws_objs(inst: InstanceId, os: &[(&str, &Obj)]) -> Workspace {
    let mut ws = Workspace::new(inst);
    for (k, o) in os {
        ws.objects.insert(k.to_string(), (*o).clone());
    }
    ws
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn mobius(n: usize) -> i64 {
    let (mut m, mut k, mut p) = (n, 1i64, 2);
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            k = -k;
        }
        p += 1;
    }
    if m > 1 {
        k = -k;
    }
    k
}

/// Dimension of the degree-`n` part of the free Lie algebra on `q` generators.
pub fn necklace_dimension(q: usize, n: usize) -> usize {
    let s: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * (q as i64).pow((n / d) as u32))
        .sum();
    (s / n as i64) as usize
}

// ---------------------------------------------------------------- excat

fn varied_mor(g: &mut Gen, inst: InstanceId) -> Mor {
    let s = g.object(inst, 3);
    let t = if g.coin(0.3) {
        s.clone()
    } else {
        g.object(inst, 3)
    };
    match g.below(6) {
        0 => g.automorphism(&s).0,
        1 => {
            let (p, c) = projective_cover(&t);
            c.after(&g.automorphism(&p).0)
        }
        2 => kernel(&g.mor(&s, &t)).1,
        3 => cokernel(&g.mor(&s, &t)).1,
        _ => g.mor(&s, &t),
    }
}

fn excat_admissible_factorization(g: &mut Gen, ctx: &Ctx) -> Case {
    let f = varied_mor(g, ctx.instance);
    let c = classify(&f);
    let rebuilt = match epi_mono_factorization(&f) {
        Some((e, m)) => is_admissible_epi(&e) && is_admissible_mono(&m) && m.after(&e) == f,
        None => false,
    };
    let repro = || ws_mors(ctx.instance, &[("f", &f)]);
    ensure!(
        c.is_admissible == rebuilt,
        "admissible iff the epi-mono factorization rebuilds f",
        repro()
    );
    ensure!(
        c.is_admissible == admissible_by_definition(&f),
        "classification agrees with the definition",
        repro()
    );
    Ok(Outcome::Pass)
}

fn excat_bimorphism(g: &mut Gen, ctx: &Ctx) -> Case {
    let f = varied_mor(g, ctx.instance);
    let c = classify(&f);
    let inv = two_sided_inverse_by_system(&f)
        .filter(|h| h.after(&f).is_identity() && f.after(h).is_identity())
        .is_some();
    ensure!(
        (c.is_admissible_mono && c.is_admissible_epi) == inv,
        "admissible monic and epic iff invertible",
        ws_mors(ctx.instance, &[("f", &f)])
    );
    Ok(Outcome::Pass)
}

fn excat_strictness(g: &mut Gen, ctx: &Ctx) -> Case {
    let f = varied_mor(g, ctx.instance);
    let c = classify(&f);
    let subspace_test = filt_strict_criterion(&f);
    let repro = || ws_mors(ctx.instance, &[("f", &f)]);
    ensure!(
        subspace_test == is_iso(&c.induced),
        "f(W) = W' ∩ f(V) iff coimage to image is an iso",
        repro()
    );
    ensure!(
        subspace_test == c.is_admissible,
        "strict iff admissible",
        repro()
    );
    Ok(Outcome::Pass)
}

fn excat_epi_generators(g: &mut Gen, ctx: &Ctx) -> Case {
    let f = varied_mor(g, ctx.instance);
    ensure!(
        detect_epi_via_generators(&f) == is_admissible_epi(&f),
        "generator detection of admissible epics",
        ws_mors(ctx.instance, &[("f", &f)])
    );
    Ok(Outcome::Pass)
}

fn excat_obscure(g: &mut Gen, ctx: &Ctx) -> Case {
    let i = varied_mor(g, ctx.instance);
    let c = g.object(ctx.instance, 3);
    let j = match g.below(3) {
        0 => g.automorphism(i.dst()).0,
        1 => {
            let sum = hocat::excat::direct_sum(i.dst(), &c).expect("same instance");
            sum.inj[0].clone()
        }
        _ => g.mor(i.dst(), &c),
    };
    let ji = j.after(&i);
    if !classify(&ji).is_admissible_mono {
        return Ok(Outcome::Vacuous);
    }
    ensure!(
        is_admissible_mono(&i),
        "j∘i admissible monic forces i admissible monic",
        ws_mors(ctx.instance, &[("i", &i), ("j", &j)])
    );
    Ok(Outcome::Pass)
}

fn excat_pushout(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let b = g.object(inst, 3);
    let d = g.object(inst, 3);
    let (a, i) = kernel(&g.mor(&b, &d));
    let a2 = g.object(inst, 3);
    let f = g.mor(&a, &a2);
    let repro = || ws_mors(inst, &[("i", &i), ("f", &f)]);
    let po = attempt!(
        pushout_along_mono(&i, &f),
        "pushout along an admissible monic exists",
        repro()
    );
    ensure!(
        is_short_exact(&po.ses.left, &po.ses.right),
        "A → B ⊕ A' → B' is short exact",
        repro()
    );
    ensure!(
        po.along.after(&f) == po.other.after(&i),
        "pushout square commutes",
        repro()
    );
    ensure!(
        is_admissible_mono(&po.along),
        "pushed-out map is an admissible monic",
        repro()
    );
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------- chain

const CHAIN_WINDOW: Window = Window { lo: -1, hi: 2 };

fn some_complex(g: &mut Gen, inst: InstanceId, budget: usize, w: Window) -> Complex {
    match g.below(10) {
        0..=1 => g.acyclic(inst, budget, w),
        2 => g.contractible(inst, budget, w),
        _ => g.complex(inst, budget, w),
    }
}

fn chain_acyclicity(g: &mut Gen, ctx: &Ctx) -> Case {
    let x = some_complex(g, ctx.instance, ctx.size, CHAIN_WINDOW);
    let a = is_acyclic(&x);
    let repro = || ws_complexes(ctx.instance, &[("x", &x)]);
    ensure!(
        a == acyclic_by_generators(&x),
        "acyclic iff Hom(G, x) acyclic for every generator",
        repro()
    );
    if ctx.instance.is_abelian() {
        let h = attempt!(homology_vanishes(&x), "homology is defined", repro());
        ensure!(a == h, "acyclic iff homology vanishes", repro());
    }
    Ok(Outcome::Pass)
}

fn map_or_quasi_iso(g: &mut Gen, x: &Complex, ctx: &Ctx, w: Window) -> ChainMap {
    if g.coin(0.4) {
        g.quasi_iso(x, w, false)
    } else {
        let y = some_complex(g, ctx.instance, ctx.size, w);
        g.chain_map(x, &y)
    }
}

fn chain_quasi_iso_cone(g: &mut Gen, ctx: &Ctx) -> Case {
    let x = g.complex(ctx.instance, ctx.size, CHAIN_WINDOW);
    let f = map_or_quasi_iso(g, &x, ctx, CHAIN_WINDOW);
    let repro = || ws_maps(ctx.instance, &[("f", &f)]);
    let c = attempt!(
        cone_with(&f, ctx.cone_sign),
        "cone differential squares to zero",
        repro()
    );
    ensure!(
        is_quasi_iso(&f) == is_acyclic(&c.complex),
        "quasi-iso iff the recomputed cone is acyclic",
        repro()
    );
    Ok(Outcome::Pass)
}

fn chain_cone_sequence(g: &mut Gen, ctx: &Ctx) -> Case {
    let x = g.complex(ctx.instance, ctx.size, CHAIN_WINDOW);
    let y = g.complex(ctx.instance, ctx.size, CHAIN_WINDOW);
    let f = g.chain_map(&x, &y);
    let repro = || ws_maps(ctx.instance, &[("f", &f)]);
    let c = attempt!(
        cone_with(&f, ctx.cone_sign),
        "cone differential squares to zero",
        repro()
    );
    ensure!(c.pi.after(&c.tau).is_zero(), "π∘τ = 0", repro());
    for (_, b) in &c.sums {
        let ok = b.proj[0].after(&b.inj[0]).is_identity()
            && b.proj[1].after(&b.inj[1]).is_identity()
            && b.proj[0].after(&b.inj[1]).is_zero()
            && b.inj[0]
                .after(&b.proj[0])
                .add(&b.inj[1].after(&b.proj[1]))
                .is_identity();
        ensure!(ok, "degreewise splittings compose to identities", repro());
    }
    // Lifting a cycle z of X_{n−1} to (z, 0) and applying d lands on −f(z).
    for (n, b) in &c.sums {
        let Some((_, below)) = c.sums.iter().find(|(k, _)| *k == n - 1) else {
            continue;
        };
        let (_, z) = cycles(&x, n - 1);
        let lhs = below.proj[1]
            .after(&c.complex.d(*n))
            .after(&b.inj[0])
            .after(&z);
        let rhs = f.comp(n - 1).after(&z).neg();
        ensure!(
            lhs == rhs,
            "connecting map of the cone sequence is −H(f)",
            repro(),
            "degree {n}"
        );
    }
    Ok(Outcome::Pass)
}

fn chain_null_homotopy(g: &mut Gen, ctx: &Ctx) -> Case {
    let x = g.complex(ctx.instance, ctx.size, CHAIN_WINDOW);
    let y = some_complex(g, ctx.instance, ctx.size, CHAIN_WINDOW);
    let f = match g.below(3) {
        0 => g.chain_map(&x, &y),
        1 => g.null_homotopic_map(&x, &y),
        _ => {
            let a = g.chain_map(&x, &y);
            a.add(&g.null_homotopic_map(&x, &y))
        }
    };
    let repro = || ws_maps(ctx.instance, &[("f", &f)]);
    let w = null_homotopy_witness(&f);
    if let Some(h) = &w {
        ensure!(
            h.verify(),
            "null-homotopy witness satisfies f = dD + Dd",
            repro()
        );
    }
    ensure!(
        w.is_some() == homotopy_class_vanishes(&f),
        "witness exists iff the homotopy class vanishes",
        repro()
    );
    Ok(Outcome::Pass)
}

fn chain_homotopy_equivalence(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let x = g.complex(inst, ctx.size, CHAIN_WINDOW);
    let c = g.contractible(inst, ctx.size, CHAIN_WINDOW);
    let s = direct_sum_complexes(inst, &[x.clone(), c]);
    let f = s.inj[0].add(&g.null_homotopic_map(&x, &s.complex));
    let r = s.proj[0].add(&g.null_homotopic_map(&s.complex, &x));
    let repro = || ws_maps(inst, &[("f", &f), ("g", &r)]);
    let back = homotopy_between(&r.after(&f), &ChainMap::identity(&x), false).is_some();
    let forth = homotopy_between(&f.after(&r), &ChainMap::identity(&s.complex), false).is_some();
    ensure!(
        back && forth,
        "constructed maps are homotopy inverse",
        repro()
    );
    ensure!(
        is_quasi_iso(&f) && is_quasi_iso(&r),
        "homotopy equivalences are quasi-isomorphisms",
        repro()
    );
    Ok(Outcome::Pass)
}

fn chain_split_exact(g: &mut Gen, ctx: &Ctx) -> Case {
    let x = some_complex(g, ctx.instance, ctx.size, CHAIN_WINDOW);
    let repro = || ws_complexes(ctx.instance, &[("x", &x)]);
    let split = is_split_exact(&x);
    let contraction = null_homotopy_witness(&ChainMap::identity(&x)).is_some();
    ensure!(
        split == contraction,
        "split exact iff the identity is null-homotopic",
        repro()
    );
    if split {
        ensure!(is_acyclic(&x), "split exact complexes are acyclic", repro());
    }
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------- resolve

fn resolve_postconditions(g: &mut Gen, ctx: &Ctx) -> Case {
    let x = g.complex(ctx.instance, ctx.size, CHAIN_WINDOW);
    let repro = || ws_complexes(ctx.instance, &[("x", &x)]);
    let r = attempt!(resolve_complex(&x), "resolutions exist", repro());
    ensure!(
        r.verify(),
        "resolution verifies its own postconditions",
        repro()
    );
    ensure!(r.map.dst() == &x, "resolution targets the input", repro());
    ensure!(
        r.resolvent.objects().iter().all(is_projective),
        "resolvent is degreewise projective",
        repro()
    );
    ensure!(
        r.map.degrees().all(|n| is_admissible_epi(&r.map.comp(n))),
        "augmentation is degreewise an admissible epic",
        repro()
    );
    ensure!(
        is_quasi_iso(&r.map),
        "augmentation is a quasi-isomorphism",
        repro()
    );
    Ok(Outcome::Pass)
}

fn resolve_ext_projectivity(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let a = g.object(inst, 3);
    let mut probes = match inst {
        InstanceId::FgAb => vec![Obj::z(), Obj::z_mod(2), Obj::z_mod(3), Obj::z_mod(4)],
        _ => vec![Obj::unit(inst)],
    };
    probes.push(a.clone());
    let repro = || ws_objs(inst, &[("a", &a)]);
    let mut vanish = true;
    for b in &probes {
        let e = attempt!(ext_group(1, &a, b), "Ext is computable", repro());
        vanish &= e.is_zero();
    }
    let split = cover_splits(&a);
    ensure!(
        vanish == split,
        "Ext¹(a, −) vanishes on probes iff the projective cover splits",
        repro()
    );
    ensure!(
        split == is_projective_structural(&a),
        "the cover splits iff a is projective",
        repro()
    );
    Ok(Outcome::Pass)
}

fn resolve_acyclic_kernel(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let b = if g.coin(0.5) {
        g.acyclic(inst, ctx.size, CHAIN_WINDOW)
    } else {
        g.complex(inst, ctx.size, CHAIN_WINDOW)
    };
    let wx = if g.coin(0.3) {
        g.acyclic(inst, ctx.size.min(4), CHAIN_WINDOW.down())
    } else {
        g.complex(inst, ctx.size.min(4), CHAIN_WINDOW.down())
    };
    let (tau, pi) = g.split_ses(&b, &wx);
    let repro = || ws_maps(inst, &[("i", &tau), ("p", &pi)]);
    let exact = tau
        .degrees()
        .chain(pi.degrees())
        .all(|n| is_short_exact(&tau.comp(n), &pi.comp(n)));
    ensure!(exact, "sequence is degreewise short exact", repro());
    ensure!(
        is_acyclic(&b) == is_quasi_iso(&pi),
        "kernel acyclic iff the epic is a quasi-iso",
        repro()
    );
    ensure!(
        is_acyclic(pi.dst()) == is_quasi_iso(&tau),
        "cokernel acyclic iff the monic is a quasi-iso",
        repro()
    );
    Ok(Outcome::Pass)
}

fn resolve_comparison(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let budget = ctx.size.min(5);
    let x = g.complex(inst, budget, CHAIN_WINDOW);
    let y = g.complex(inst, budget, CHAIN_WINDOW);
    let f = g.chain_map(&x, &y);
    let repro = || ws_maps(inst, &[("f", &f)]);
    let p = attempt!(resolve_complex(&x), "resolutions exist", repro());
    let q = attempt!(resolve_complex(&y), "resolutions exist", repro());
    let l1 = attempt!(
        comparison_lift_complex(&f, &p, &q, false),
        "comparison map exists",
        repro()
    );
    let l2 = attempt!(
        comparison_lift_complex(&f, &p, &q, true),
        "comparison map exists",
        repro()
    );
    let over = f.after(&p.map);
    ensure!(
        q.map.after(&l1) == over && q.map.after(&l2) == over,
        "comparison maps lie over f",
        repro()
    );
    ensure!(
        homotopy_between(&l1, &l2, false).is_some(),
        "comparison maps are unique up to homotopy",
        repro()
    );
    Ok(Outcome::Pass)
}

fn resolve_les(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let b = g.complex(inst, ctx.size, CHAIN_WINDOW);
    let wx = g.complex(inst, ctx.size.min(4), CHAIN_WINDOW.down());
    let (tau, pi) = g.split_ses(&b, &wx);
    let repro = || ws_maps(inst, &[("i", &tau), ("p", &pi)]);
    let les = attempt!(
        homology_les(&tau, &pi),
        "long exact sequence is computable",
        repro()
    );
    ensure!(
        les.is_exact(),
        "homology long exact sequence is exact",
        repro()
    );
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------- model

fn weak_equivalence(f: &ChainMap) -> hocat::Result<bool> {
    if f.instance().is_abelian() {
        homology_vanishes(&cone(f).complex)
    } else {
        Ok(is_quasi_iso(f))
    }
}

fn model_two_out_of_three(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let w = Window::for_flavor(ModelFlavor::ChPlus);
    let budget = ctx.size.min(5);
    let x = g.complex(inst, budget, w);
    let f = if g.coin(0.6) {
        g.quasi_iso(&x, w, false)
    } else {
        let y = g.complex(inst, budget, w);
        g.chain_map(&x, &y)
    };
    let y = f.dst().clone();
    let h = if g.coin(0.6) {
        g.quasi_iso(&y, w, false)
    } else {
        let z = g.complex(inst, budget, w);
        g.chain_map(&y, &z)
    };
    let hf = h.after(&f);
    let repro = || ws_maps(inst, &[("f", &f), ("g", &h)]);
    let mut count = 0;
    for m in [&f, &h, &hf] {
        if attempt!(weak_equivalence(m), "homology is defined", repro()) {
            count += 1;
        }
    }
    if count < 2 {
        return Ok(Outcome::Vacuous);
    }
    ensure!(
        count == 3,
        "two of f, g, g∘f quasi-isos force the third",
        repro()
    );
    Ok(Outcome::Pass)
}

fn model_input_map(g: &mut Gen, ctx: &Ctx) -> ChainMap {
    let inst = ctx.instance;
    let w = Window::for_flavor(ctx.flavor);
    let budget = ctx.size.min(5);
    let x = g.complex(inst, budget, w);
    match g.below(5) {
        0 => g.quasi_iso(&x, w, false),
        1 => g.cofibration(&x, 3, w),
        2 => {
            let y = g.acyclic(inst, budget, w);
            g.chain_map(&x, &y)
        }
        _ => {
            let y = g.complex(inst, budget, w);
            g.chain_map(&x, &y)
        }
    }
}

fn model_factorizations(g: &mut Gen, ctx: &Ctx) -> Case {
    let f = model_input_map(g, ctx);
    let flavor = ctx.flavor;
    let repro = || ws_maps(ctx.instance, &[("f", &f)]);

    let w = attempt!(
        factor_triv_cof_fib(&f, flavor),
        "trivial cofibration / fibration factorization exists",
        repro()
    );
    ensure!(
        w.right.after(&w.left) == f,
        "right∘left = f (trivial cofibration, fibration)",
        repro()
    );
    let l = attempt!(
        classify_map_model(&w.left, flavor),
        "left factor classifies",
        repro()
    );
    let r = attempt!(
        classify_map_model(&w.right, flavor),
        "right factor classifies",
        repro()
    );
    ensure!(
        l.is_cofibration && l.is_weak_equivalence && l.is_trivial_cofibration,
        "left factor is a trivial cofibration",
        repro()
    );
    ensure!(r.is_fibration, "right factor is a fibration", repro());
    let (k, _) = cokernel_complex(&w.left);
    ensure!(
        k.objects().iter().all(is_projective) && is_split_exact(&k),
        "trivial cofibration cokernel is split exact with projective entries",
        repro()
    );

    let w = attempt!(
        factor_cof_triv_fib(&f, flavor, ctx.cell_budget),
        "cofibration / trivial fibration factorization exists",
        repro()
    );
    ensure!(
        w.right.after(&w.left) == f,
        "right∘left = f (cofibration, trivial fibration)",
        repro()
    );
    let l = attempt!(
        classify_map_model(&w.left, flavor),
        "left factor classifies",
        repro()
    );
    let r = attempt!(
        classify_map_model(&w.right, flavor),
        "right factor classifies",
        repro()
    );
    ensure!(l.is_cofibration, "left factor is a cofibration", repro());
    ensure!(
        r.is_fibration && r.is_weak_equivalence && r.is_trivial_fibration,
        "right factor is a trivial fibration",
        repro()
    );
    ensure!(
        is_quasi_iso(&w.right),
        "trivial fibration is a quasi-isomorphism",
        repro()
    );
    Ok(Outcome::Pass)
}

fn model_lifting(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let flavor = ctx.flavor;
    let win = Window::for_flavor(flavor);
    let f1 = model_input_map(g, ctx);
    let f2 = model_input_map(g, ctx);
    let repro0 = || ws_maps(inst, &[("f1", &f1), ("f2", &f2)]);
    let (i, p) = if g.coin(0.5) {
        let i = if g.coin(0.5) {
            attempt!(
                factor_cof_triv_fib(&f1, flavor, ctx.cell_budget),
                "factorization exists",
                repro0()
            )
            .left
        } else {
            let a = g.complex(inst, ctx.size.min(4), win);
            g.cofibration(&a, 3, win)
        };
        let p = attempt!(
            factor_cof_triv_fib(&f2, flavor, ctx.cell_budget),
            "factorization exists",
            repro0()
        )
        .right;
        (i, p)
    } else {
        let i = attempt!(
            factor_triv_cof_fib(&f1, flavor),
            "factorization exists",
            repro0()
        )
        .left;
        let p = match g.below(3) {
            0 => {
                let wx = g.complex(inst, ctx.size.min(4), win.down());
                let b = g.complex(inst, ctx.size.min(4), win);
                g.fibration_onto(&wx, &b)
            }
            1 => {
                attempt!(
                    factor_triv_cof_fib(&f2, flavor),
                    "factorization exists",
                    repro0()
                )
                .right
            }
            _ => {
                attempt!(
                    factor_cof_triv_fib(&f2, flavor, ctx.cell_budget),
                    "factorization exists",
                    repro0()
                )
                .right
            }
        };
        (i, p)
    };
    let h = g.chain_map(i.dst(), p.src());
    let top = h.after(&i);
    let (k, q) = cokernel_complex(&i);
    let r = g.chain_map(&k, p.dst());
    let bottom = p.after(&h).add(&r.after(&q));
    let repro = || {
        ws_maps(
            inst,
            &[
                ("top", &top),
                ("bottom", &bottom),
                ("left", &i),
                ("right", &p),
            ],
        )
    };
    let problem = attempt!(
        LiftingProblem::new(top.clone(), bottom.clone(), i.clone(), p.clone()),
        "square is well posed",
        repro()
    );
    let lift = attempt!(
        solve_lifting(&problem, flavor),
        "well-posed squares have lifts",
        repro()
    );
    ensure!(
        lift.verify(&problem),
        "diagonal makes both triangles commute",
        repro()
    );
    Ok(Outcome::Pass)
}

fn model_retract(g: &mut Gen, ctx: &Ctx) -> Case {
    let f = if g.coin(0.3) {
        let w = Window::for_flavor(ctx.flavor);
        let x = g.complex(ctx.instance, ctx.size.min(4), w);
        let p = g.complex_with(ctx.instance, 3, w, true, 1);
        let s = direct_sum_complexes(ctx.instance, &[x.clone(), p]);
        let (_, iso) = g.conjugate_with_iso(&s.complex);
        iso.after(&s.inj[0])
    } else {
        model_input_map(g, ctx)
    };
    let repro = || ws_maps(ctx.instance, &[("f", &f)]);
    let c = attempt!(
        classify_map_model(&f, ctx.flavor),
        "map classifies",
        repro()
    );
    let r = attempt!(
        retract_argument_check(&f, ctx.flavor),
        "retract argument runs",
        repro()
    );
    ensure!(
        c.is_cofibration == r,
        "cofibration iff retract of its cell factor",
        repro()
    );
    Ok(Outcome::Pass)
}

fn model_properness(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let w = Window::for_flavor(ModelFlavor::ChPlus);
    let budget = ctx.size.min(5);
    let a = g.complex(inst, budget, w);
    let f = g.quasi_iso(&a, w, false);
    let i = g.cofibration(&a, 3, w);
    let repro = || ws_maps(inst, &[("f", &f), ("i", &i)]);
    let po = attempt!(
        pushout_complexes(&i, &f),
        "pushout along a cofibration exists",
        repro()
    );
    ensure!(
        po.other.after(&i) == po.along.after(&f),
        "pushout square commutes",
        repro()
    );
    ensure!(
        is_quasi_iso(&po.other),
        "pushout of a quasi-iso along a cofibration is a quasi-iso",
        repro()
    );

    let wx = g.complex(inst, budget.min(4), w.down());
    let b = g.complex(inst, budget, w);
    let p = g.fibration_onto(&wx, &b);
    let f = g.quasi_iso(p.dst(), w, true);
    let repro = || ws_maps(inst, &[("p", &p), ("f", &f)]);
    let pb = attempt!(
        pullback_complexes(&p, &f),
        "pullback along a fibration exists",
        repro()
    );
    ensure!(
        p.after(&pb.other) == f.after(&pb.along),
        "pullback square commutes",
        repro()
    );
    ensure!(
        is_quasi_iso(&pb.other),
        "pullback of a quasi-iso along a fibration is a quasi-iso",
        repro()
    );
    Ok(Outcome::Pass)
}

fn model_split_to_acyclic(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let l = g.contractible_with(inst, ctx.size, CHAIN_WINDOW, true);
    let r = g.acyclic(inst, ctx.size, CHAIN_WINDOW);
    let f = g.chain_map(&l, &r);
    ensure!(
        null_homotopy_witness(&f).is_some(),
        "maps from split exact projective complexes to acyclic complexes are null-homotopic",
        ws_maps(inst, &[("f", &f)])
    );
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------- monoidal

/// Truncation bound of the generating cofibrations used by the box property.
pub const BOX_BOUND: i64 = 3;

/// Number of ordered pairs of generating cofibrations checked by the box property.
pub fn box_pair_count(instance: InstanceId, flavor: ModelFlavor) -> usize {
    generating_cofibrations(instance, flavor, BOX_BOUND)
        .len()
        .pow(2)
}

fn monoidal_boxes(_: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let gens = generating_cofibrations(inst, ctx.flavor, BOX_BOUND);
    if ctx.case >= gens.len() * gens.len() {
        return Ok(Outcome::Vacuous);
    }
    let (i, j) = (&gens[ctx.case / gens.len()], &gens[ctx.case % gens.len()]);
    let repro = || ws_maps(inst, &[("i", i), ("j", j)]);
    let ci = attempt!(
        classify_map_model(i, ctx.flavor),
        "generator classifies",
        repro()
    );
    let cj = attempt!(
        classify_map_model(j, ctx.flavor),
        "generator classifies",
        repro()
    );
    let pp = attempt!(pushout_product(i, j), "pushout-product exists", repro());
    let c = attempt!(
        classify_map_model(&pp.map, ctx.flavor),
        "box classifies",
        repro()
    );
    ensure!(
        c.is_cofibration,
        "pushout-product of cofibrations is a cofibration",
        repro()
    );
    let trivial = ci.is_trivial_cofibration || cj.is_trivial_cofibration;
    ensure!(
        c.is_trivial_cofibration == trivial,
        "box is trivial exactly when a side is trivial",
        repro()
    );
    Ok(Outcome::Pass)
}

fn monoidal_disk_tensor(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let f = g.nonzero_object(inst, 2, true);
    let repro0 = || ws_objs(inst, &[("F", &f)]);
    let flat = attempt!(
        is_flat_probe(&f, &default_flat_probes(inst)),
        "flatness probe runs",
        repro0()
    );
    ensure!(flat, "projective objects are flat", repro0());
    let n = g.range(0, 2);
    let d = disk(n, &f);
    let x = some_complex(g, inst, ctx.size, CHAIN_WINDOW);
    let repro = || ws_complexes(inst, &[("D", &d), ("x", &x)]);
    let t = attempt!(tensor_complexes(&d, &x), "tensor product exists", repro());
    ensure!(
        is_acyclic(&t.product),
        "D^n(F) ⊗ x is acyclic for flat F",
        repro()
    );
    Ok(Outcome::Pass)
}

fn monoidal_unit(_: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let s = sphere(0, &Obj::unit(inst));
    let f = ChainMap::zero(&Complex::zero(inst), &s);
    let c = attempt!(
        classify_map_model(&f, ctx.flavor),
        "unit map classifies",
        ws_maps(inst, &[("f", &f)])
    );
    ensure!(
        c.is_cofibration,
        "the unit is cofibrant",
        ws_maps(inst, &[("f", &f)])
    );
    Ok(Outcome::Pass)
}

fn monoidal_flat_complex(g: &mut Gen, ctx: &Ctx) -> Case {
    let inst = ctx.instance;
    let x = g.complex(inst, ctx.size.min(5), CHAIN_WINDOW);
    let probes = default_flat_probes(inst);
    let repro = || ws_complexes(inst, &[("x", &x)]);
    let mut degreewise = true;
    for o in x.objects() {
        degreewise &= attempt!(is_flat_probe(o, &probes), "flatness probe runs", repro());
    }
    let mut preserves = true;
    for s in &probes {
        let (a, b, c) = (
            sphere(0, s.left.src()),
            sphere(0, s.left.dst()),
            sphere(0, s.right.dst()),
        );
        let at0 = |m: &Mor, p: &Complex, q: &Complex| {
            ChainMap::from_fn(p, q, |n| {
                if n == 0 {
                    m.clone()
                } else {
                    Mor::zero(p.obj(n), q.obj(n))
                }
            })
            .expect("maps of spheres")
        };
        let (i, p) = (at0(&s.left, &a, &b), at0(&s.right, &b, &c));
        let id = ChainMap::identity(&x);
        let ta = attempt!(tensor_complexes(&x, &a), "tensor product exists", repro());
        let tb = attempt!(tensor_complexes(&x, &b), "tensor product exists", repro());
        let tc = attempt!(tensor_complexes(&x, &c), "tensor product exists", repro());
        let xi = attempt!(
            tensor_chain_maps(&id, &i, &ta, &tb),
            "tensor of maps exists",
            repro()
        );
        let xp = attempt!(
            tensor_chain_maps(&id, &p, &tb, &tc),
            "tensor of maps exists",
            repro()
        );
        preserves &= xi
            .degrees()
            .all(|n| is_short_exact(&xi.comp(n), &xp.comp(n)));
    }
    ensure!(
        degreewise == preserves,
        "degreewise flat iff tensoring preserves the probe sequences",
        repro()
    );
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------- doldkan

fn dk_input(g: &mut Gen, ctx: &Ctx) -> (Complex, usize) {
    let level = 1 + ctx.case % 5;
    let w = Window {
        lo: 0,
        hi: level.min(3) as i64,
    };
    (g.complex(ctx.instance, ctx.size.min(5), w), level)
}

fn dk_n_gamma(g: &mut Gen, ctx: &Ctx) -> Case {
    let (c, level) = dk_input(g, ctx);
    let repro = || ws_complexes(ctx.instance, &[("c", &c)]);
    let ok = attempt!(
        check_equivalence(&c, level),
        "N and Γ are computable",
        repro()
    );
    ensure!(ok, "NΓ(C) ≅ C degreewise", repro(), "level {level}");
    Ok(Outcome::Pass)
}

fn free_rank_and_torsion(o: &Obj) -> (usize, Integer) {
    let ord = o.orders();
    let free = ord.iter().filter(|d| d.is_zero()).count();
    let tors = ord
        .iter()
        .filter(|d| !d.is_zero())
        .fold(Integer::new(1), |a, d| a * d.clone());
    (free, tors)
}

fn dk_simplicial(g: &mut Gen, ctx: &Ctx) -> Case {
    let (c, level) = dk_input(g, ctx);
    let repro = || ws_complexes(ctx.instance, &[("c", &c)]);
    let gm = attempt!(gamma(&c, level), "Γ is computable", repro());
    let violation = gm.object.identity_violation();
    ensure!(
        violation.is_none(),
        "Γ output satisfies the simplicial identities",
        repro(),
        "{}",
        violation.unwrap_or_default()
    );
    for n in 0..=level {
        let got = &gm.object.objects[n];
        let parts: Vec<(usize, &Obj)> =
            (0..=n).map(|p| (binomial(n, p), c.obj(p as i64))).collect();
        match ctx.instance {
            InstanceId::FgAb => {
                let (f, t) = free_rank_and_torsion(got);
                let ef: usize = parts
                    .iter()
                    .map(|(k, o)| k * free_rank_and_torsion(o).0)
                    .sum();
                let et = parts.iter().fold(Integer::new(1), |acc, (k, o)| {
                    let t = free_rank_and_torsion(o).1;
                    (0..*k).fold(acc, |a, _| a * t.clone())
                });
                ensure!(
                    f == ef && t == et,
                    "|Γ(C)_n| = Σ C(n,p)|C_p|",
                    repro(),
                    "level {n}"
                );
            }
            _ => {
                let e: usize = parts.iter().map(|(k, o)| k * o.gens()).sum();
                ensure!(
                    got.gens() == e,
                    "|Γ(C)_n| = Σ C(n,p)|C_p|",
                    repro(),
                    "level {n}"
                );
            }
        }
    }
    Ok(Outcome::Pass)
}

fn dk_surjections(_: &mut Gen, ctx: &Ctx) -> Case {
    let n = ctx.case % 8;
    let p = (ctx.case / 8) % (n + 1);
    let empty = || Workspace::new(ctx.instance);
    let s = attempt!(
        enumerate_surjections(n, p),
        "surjections enumerate",
        empty()
    );
    ensure!(
        s.len() == binomial(n, p),
        "number of surjections [n] ↠ [p] is C(n,p)",
        empty(),
        "n = {n}, p = {p}"
    );
    ensure!(
        s.iter()
            .all(|m| m.is_surjective() && m.source() == n && m.target == p)
            && s.windows(2).all(|w| w[0] < w[1]),
        "surjections are distinct monotone surjections",
        empty()
    );
    Ok(Outcome::Pass)
}

fn dk_counit(g: &mut Gen, ctx: &Ctx) -> Case {
    let (c, level) = dk_input(g, ctx);
    let repro = || ws_complexes(ctx.instance, &[("c", &c)]);
    let gm = attempt!(gamma(&c, level), "Γ is computable", repro());
    let isos: Vec<Mor> = gm
        .object
        .objects
        .iter()
        .map(|o| g.sparse_automorphism(o, 2 * o.gens()).0)
        .collect();
    let a = attempt!(gm.object.twist(&isos), "twisting by isomorphisms", repro());
    let ok = attempt!(check_counit(&a), "counit is computable", repro());
    ensure!(ok, "ΓN(A) ≅ A through the counit", repro());
    Ok(Outcome::Pass)
}

fn dk_n_structure(g: &mut Gen, ctx: &Ctx) -> Case {
    let (c, level) = dk_input(g, ctx);
    let w = Window {
        lo: 0,
        hi: level.min(3) as i64,
    };
    let d = g.complex(ctx.instance, ctx.size.min(4), w);
    let f = g.chain_map(&c, &d);
    let repro = || ws_maps(ctx.instance, &[("f", &f)]);
    let (gc, gd) = (
        attempt!(gamma(&c, level), "Γ", repro()),
        attempt!(gamma(&d, level), "Γ", repro()),
    );
    let sf = attempt!(gamma_map(&f, &gc, &gd), "Γ on maps", repro());
    let rep = attempt!(check_n_preserves_structure(&sf), "N on maps", repro());
    ensure!(
        rep.consistent(),
        "N of a simplicial map is a chain map, a fibration when onto on generators",
        repro()
    );
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------- freealg

/// Degree bound used by the free algebra properties.
pub const FREE_DEGREE: usize = 5;

fn fa_q(ctx: &Ctx) -> usize {
    1 + ctx.case % 3
}

fn fa_section(_: &mut Gen, ctx: &Ctx) -> Case {
    let q = fa_q(ctx);
    let empty = || Workspace::new(InstanceId::VectQ);
    let s = attempt!(
        symmetric_trunc(q, FREE_DEGREE),
        "symmetric algebra",
        empty()
    );
    ensure!(s.section_identity_holds(), "π∘ρ_S = id", empty(), "q = {q}");
    ensure!(
        s.is_coinvariant_quotient(),
        "π coequalizes the symmetric group action",
        empty(),
        "q = {q}"
    );
    Ok(Outcome::Pass)
}

fn fa_lie(_: &mut Gen, ctx: &Ctx) -> Case {
    let q = fa_q(ctx);
    let empty = || Workspace::new(InstanceId::VectQ);
    let l = attempt!(free_lie_trunc(q, FREE_DEGREE), "free Lie algebra", empty());
    ensure!(
        l.normalized_section_holds(),
        "(1/n)[−,−]_n restricts to the identity on L_n",
        empty(),
        "q = {q}"
    );
    Ok(Outcome::Pass)
}

fn fa_pbw(_: &mut Gen, ctx: &Ctx) -> Case {
    let q = fa_q(ctx);
    let empty = || Workspace::new(InstanceId::VectQ);
    let ok = attempt!(
        pbw_dimension_check(q, FREE_DEGREE),
        "free Lie algebra",
        empty()
    );
    ensure!(ok, "Π(1 − t^n)^(−dim L_n) = Σ q^n t^n", empty(), "q = {q}");
    Ok(Outcome::Pass)
}

fn fa_dims(_: &mut Gen, ctx: &Ctx) -> Case {
    let q = fa_q(ctx);
    let empty = || Workspace::new(InstanceId::VectQ);
    let t = tensor_algebra_trunc(q, FREE_DEGREE).dims();
    let s = attempt!(
        symmetric_trunc(q, FREE_DEGREE),
        "symmetric algebra",
        empty()
    )
    .graded
    .dims();
    let l = attempt!(free_lie_trunc(q, FREE_DEGREE), "free Lie algebra", empty())
        .graded
        .dims();
    for n in 0..=FREE_DEGREE {
        ensure!(
            t[n] == q.pow(n as u32),
            "dim T_n = q^n",
            empty(),
            "q = {q}, n = {n}"
        );
        ensure!(
            s[n] == binomial(q + n - 1, n),
            "dim S_n = C(q+n−1, n)",
            empty(),
            "q = {q}, n = {n}"
        );
        if n >= 1 {
            ensure!(
                l[n] == necklace_dimension(q, n),
                "dim L_n is the necklace number",
                empty(),
                "q = {q}, n = {n}"
            );
        }
    }
    Ok(Outcome::Pass)
}

fn fa_naturality(g: &mut Gen, ctx: &Ctx) -> Case {
    let q = fa_q(ctx);
    let r = 1 + g.below(3);
    let a = g.mor(&Obj::vect(q), &Obj::vect(r));
    let repro = || ws_mors(InstanceId::VectQ, &[("A", &a)]);
    let d = 4;
    let sv = attempt!(symmetric_trunc(q, d), "symmetric algebra", repro());
    let sw = attempt!(symmetric_trunc(r, d), "symmetric algebra", repro());
    let m = a.rat();
    for n in 0..=d {
        let lhs = sw.projections[n].mul(&tensor_power_map(&m, n));
        let rhs = SymmetricTrunc::induced_map(&m, n, &sv, &sw).mul(&sv.projections[n]);
        ensure!(lhs == rhs, "S(A)∘π = π∘T(A)", repro(), "degree {n}");
        for k in 0..=n {
            let split = tensor_power_map(&m, k).kron(&tensor_power_map(&m, n - k));
            ensure!(
                split == tensor_power_map(&m, n),
                "T(A) respects the product",
                repro(),
                "degrees {k} + {}",
                n - k
            );
        }
    }
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------- registry

macro_rules! prop {
    ($name:expr, $suite:ident, $flavor:ident, $inst:expr, $f:expr) => {
        Property {
            name: $name,
            suite: Suite::$suite,
            flavor: ModelFlavor::$flavor,
            instances: $inst,
            run: $f,
        }
    };
}

pub fn properties() -> Vec<Property> {
    vec![
        prop!(
            "excat.admissible_factorization",
            Excat,
            ChPlus,
            ALL,
            excat_admissible_factorization
        ),
        prop!(
            "excat.invertible_bimorphism",
            Excat,
            ChPlus,
            ALL,
            excat_bimorphism
        ),
        prop!(
            "excat.filtered_strictness",
            Excat,
            ChPlus,
            FILT,
            excat_strictness
        ),
        prop!(
            "excat.epi_via_generators",
            Excat,
            ChPlus,
            ALL,
            excat_epi_generators
        ),
        prop!(
            "excat.monic_cancellation",
            Excat,
            ChPlus,
            ALL,
            excat_obscure
        ),
        prop!("excat.pushout_sequence", Excat, ChPlus, ALL, excat_pushout),
        prop!(
            "chain.acyclicity_oracles",
            Chain,
            ChPlus,
            ALL,
            chain_acyclicity
        ),
        prop!(
            "chain.quasi_iso_cone",
            Chain,
            ChPlus,
            ALL,
            chain_quasi_iso_cone
        ),
        prop!(
            "chain.cone_sequence",
            Chain,
            ChPlus,
            ALL,
            chain_cone_sequence
        ),
        prop!(
            "chain.null_homotopy",
            Chain,
            ChPlus,
            ALL,
            chain_null_homotopy
        ),
        prop!(
            "chain.homotopy_equivalence",
            Chain,
            ChPlus,
            ALL,
            chain_homotopy_equivalence
        ),
        prop!(
            "chain.split_exact_acyclic",
            Chain,
            ChPlus,
            ALL,
            chain_split_exact
        ),
        prop!(
            "resolve.postconditions",
            Resolve,
            ChPlus,
            ALL,
            resolve_postconditions
        ),
        prop!(
            "resolve.ext_projectivity",
            Resolve,
            ChPlus,
            ABELIAN,
            resolve_ext_projectivity
        ),
        prop!(
            "resolve.acyclic_kernel",
            Resolve,
            ChPlus,
            ALL,
            resolve_acyclic_kernel
        ),
        prop!(
            "resolve.comparison_uniqueness",
            Resolve,
            ChPlus,
            ALL,
            resolve_comparison
        ),
        prop!(
            "resolve.long_exact_sequence",
            Resolve,
            ChPlus,
            ABELIAN,
            resolve_les
        ),
        prop!(
            "model.two_out_of_three",
            Model,
            ChPlus,
            ALL,
            model_two_out_of_three
        ),
        prop!(
            "model.factorizations.geq0",
            Model,
            ChGeq0,
            ALL,
            model_factorizations
        ),
        prop!(
            "model.factorizations.plus",
            Model,
            ChPlus,
            ALL,
            model_factorizations
        ),
        prop!("model.lifting.geq0", Model, ChGeq0, ALL, model_lifting),
        prop!("model.lifting.plus", Model, ChPlus, ALL, model_lifting),
        prop!(
            "model.retract_argument.geq0",
            Model,
            ChGeq0,
            ALL,
            model_retract
        ),
        prop!(
            "model.retract_argument.plus",
            Model,
            ChPlus,
            ALL,
            model_retract
        ),
        prop!("model.properness", Model, ChPlus, ALL, model_properness),
        prop!(
            "model.split_to_acyclic",
            Model,
            ChPlus,
            ALL,
            model_split_to_acyclic
        ),
        prop!(
            "monoidal.generating_boxes.geq0",
            Monoidal,
            ChGeq0,
            ABELIAN,
            monoidal_boxes
        ),
        prop!(
            "monoidal.generating_boxes.plus",
            Monoidal,
            ChPlus,
            ABELIAN,
            monoidal_boxes
        ),
        prop!(
            "monoidal.disk_tensor_acyclic",
            Monoidal,
            ChPlus,
            ABELIAN,
            monoidal_disk_tensor
        ),
        prop!(
            "monoidal.unit_cofibrant",
            Monoidal,
            ChGeq0,
            ABELIAN,
            monoidal_unit
        ),
        prop!(
            "monoidal.flat_complex",
            Monoidal,
            ChPlus,
            ABELIAN,
            monoidal_flat_complex
        ),
        prop!("doldkan.n_gamma_identity", Doldkan, ChGeq0, ALL, dk_n_gamma),
        prop!(
            "doldkan.simplicial_identities",
            Doldkan,
            ChGeq0,
            ALL,
            dk_simplicial
        ),
        prop!(
            "doldkan.surjection_counts",
            Doldkan,
            ChGeq0,
            ALL,
            dk_surjections
        ),
        prop!("doldkan.gamma_n_counit", Doldkan, ChGeq0, ALL, dk_counit),
        prop!("doldkan.n_on_maps", Doldkan, ChGeq0, ALL, dk_n_structure),
        prop!(
            "freealg.symmetric_section",
            Freealg,
            ChPlus,
            VECT,
            fa_section
        ),
        prop!("freealg.lie_section", Freealg, ChPlus, VECT, fa_lie),
        prop!("freealg.pbw", Freealg, ChPlus, VECT, fa_pbw),
        prop!("freealg.dimensions", Freealg, ChPlus, VECT, fa_dims),
        prop!("freealg.naturality", Freealg, ChPlus, VECT, fa_naturality),
    ]
}

pub fn property(name: &str) -> Option<Property> {
    properties().into_iter().find(|p| p.name == name)
}

fn ctx_for(p: &Property, instance: InstanceId, cfg: &RunConfig, case: usize, size: usize) -> Ctx {
    Ctx {
        instance,
        flavor: p.flavor,
        size,
        case,
        cell_budget: cfg.cell_budget,
        cone_sign: cfg.cone_sign,
    }
}

fn run_guarded(p: &Property, ctx: &Ctx, seed: u64) -> Case {
    let run = p.run;
    let result = catch_unwind(AssertUnwindSafe(|| run(&mut Gen::new(seed), ctx)));
    result.unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(Fail {
            invariant: "no panic".into(),
            detail: msg,
            reproduction: Workspace::new(ctx.instance),
        })
    })
}

/// Replays one case from its case seed.
pub fn replay(p: &Property, instance: InstanceId, cfg: &RunConfig, case: usize, seed: u64) -> Case {
    run_guarded(p, &ctx_for(p, instance, cfg, case, cfg.size), seed)
}

fn note(property: &str) -> Option<&'static str> {
    match property {
        "doldkan.gamma_n_counit" | "doldkan.n_on_maps" => Some(
            "simplicial inputs are built from Γ, so this is a consistency check of the \
             combinatorics and not an independent sample of simplicial objects",
        ),
        _ => None,
    }
}

/// At most this many failures are kept per property.
const KEPT_FAILURES: usize = 5;

pub fn run_property(
    p: &Property,
    instance: InstanceId,
    cfg: &RunConfig,
) -> (PropertySummary, Vec<Failure>) {
    let mut summary = PropertySummary {
        property: p.name.to_string(),
        instance: instance.name().to_string(),
        cases: cfg.cases,
        passed: 0,
        vacuous: 0,
        failed: 0,
        note: note(p.name).map(str::to_string),
    };
    let mut failures = Vec::new();
    for case in 0..cfg.cases {
        let seed = case_seed(cfg.seed, case as u64);
        match replay(p, instance, cfg, case, seed) {
            Ok(Outcome::Pass) => summary.passed += 1,
            Ok(Outcome::Vacuous) => summary.vacuous += 1,
            Err(mut fail) => {
                summary.failed += 1;
                if failures.len() < KEPT_FAILURES {
                    for size in (1..cfg.size).rev() {
                        match run_guarded(p, &ctx_for(p, instance, cfg, case, size), seed) {
                            Err(smaller) => fail = smaller,
                            Ok(_) => break,
                        }
                    }
                    failures.push(Failure {
                        property: p.name.to_string(),
                        instance: instance.name().to_string(),
                        case,
                        seed,
                        invariant: fail.invariant,
                        detail: fail.detail,
                        reproduction: serde_json::to_value(fail.reproduction.to_doc())
                            .expect("documents serialize"),
                    });
                }
            }
        }
    }
    (summary, failures)
}

/// Runs a suite, a single property by name, or `all` on one instance.
pub fn run(suite: &str, instance: InstanceId, cfg: &RunConfig) -> Result<Report, String> {
    let single = property(suite);
    let suites: Vec<Suite> = if suite.eq_ignore_ascii_case("all") {
        Suite::ALL.to_vec()
    } else if let Some(p) = &single {
        vec![p.suite]
    } else {
        vec![Suite::parse(suite).ok_or_else(|| format!("unknown suite or property {suite:?}"))?]
    };
    let start = Instant::now();
    let mut report = Report {
        suite: suite.to_ascii_lowercase(),
        instance: instance.name().to_string(),
        seed: cfg.seed,
        cases: cfg.cases,
        properties: vec![],
        failures: vec![],
        timing_ms: 0,
    };
    for p in properties() {
        let selected = single
            .as_ref()
            .map_or(suites.contains(&p.suite), |q| q.name == p.name);
        if selected && p.applies_to(instance) {
            let (s, f) = run_property(&p, instance, cfg);
            report.properties.push(s);
            report.failures.extend(f);
        }
    }
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklace_numbers() {
        let got: Vec<usize> = (1..=6).map(|n| necklace_dimension(2, n)).collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(binomial(6, 3), 20);
    }

    #[test]
    fn names_are_unique() {
        let ps = properties();
        for (k, p) in ps.iter().enumerate() {
            assert!(ps[k + 1..].iter().all(|q| q.name != p.name), "{}", p.name);
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run("nope", InstanceId::VectQ, &RunConfig::default()).is_err());
    }
}
