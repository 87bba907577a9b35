//! The `hocat` subcommands.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hocat::chain::{cone, ChainMap, ConeSign};
use hocat::doldkan::{gamma, normalize};
use hocat::excat::{classify, InstanceId};
use hocat::freealg::{free_lie_trunc, pbw_dimension_check, symmetric_trunc, tensor_algebra_trunc};
use hocat::model::{
    classify_map_model, factor_cof_triv_fib, factor_triv_cof_fib, solve_lifting, LiftingProblem,
    ModelFlavor,
};
use hocat::resolve::{ext_group, resolve_complex, resolve_object};
use serde_json::{json, Value};

use crate::format::{load, obj_doc, FormatError, Workspace};
use crate::random::{Gen, Window};
use crate::suites::{run, RunConfig};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code when a checked invariant fails.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hocat",
    version,
    about = "Exact categories, chain complexes and their model structures"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Flavor {
    Plus,
    Geq0,
}

impl From<Flavor> for ModelFlavor {
    fn from(f: Flavor) -> ModelFlavor {
        match f {
            Flavor::Plus => ModelFlavor::ChPlus,
            Flavor::Geq0 => ModelFlavor::ChGeq0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Trivial cofibration followed by a fibration.
    TrivcofFib,
    /// Cofibration followed by a trivial fibration.
    CofTrivfib,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Workspace file.
    pub file: PathBuf,
    /// Name of the entry to operate on.
    #[arg(long)]
    pub name: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run property suites.
    Check {
        /// excat, chain, resolve, model, monoidal, doldkan, freealg, all, or one property name.
        #[arg(long, default_value = "all")]
        suite: String,
        /// VECTQ, FILTQ, FGAB or all.
        #[arg(long, default_value = "all")]
        instance: String,
        #[arg(long, env = "HOCAT_SEED", default_value_t = 0)]
        seed: u64,
        /// Cases per property.
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Generator budget for cell attachment.
        #[arg(long)]
        cell_budget: Option<usize>,
        /// Build cones with the lower block negated, to check that the suites catch it.
        #[arg(long, hide = true)]
        flip_cone_sign: bool,
    },
    /// Classify a morphism, or a chain map under both model structures.
    Classify(Input),
    /// Mapping cone of a chain map.
    Cone(Input),
    /// Factor a chain map.
    Factorize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Kind::CofTrivfib)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Flavor::Plus)]
        flavor: Flavor,
        #[arg(long)]
        cell_budget: Option<usize>,
    },
    /// Solve a lifting problem given by four chain maps.
    Lift {
        file: PathBuf,
        #[arg(long)]
        top: String,
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = Flavor::Plus)]
        flavor: Flavor,
    },
    /// Projective resolution of a complex or an object.
    Resolve(Input),
    /// Ext^n(a, b).
    Ext {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Normalized complex of a simplicial object.
    DkN(Input),
    /// Simplicial object of a complex in non-negative degrees.
    DkGamma {
        #[command(flatten)]
        input: Input,
        /// Highest simplicial level to build.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Truncated tensor, symmetric and free Lie algebras on q generators.
    Freealg {
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 5)]
        d: usize,
    },
    /// Random workspace.
    Random {
        #[arg(long, default_value = "VECTQ")]
        instance: String,
        #[arg(long, env = "HOCAT_SEED", default_value_t = 0)]
        seed: u64,
    },
}

/// What a command prints and how it exits.
#[derive(Debug)]
pub struct Response {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

impl Response {
    fn ok(json: Value, text: String) -> Response {
        Response {
            code: EXIT_OK,
            json,
            text,
        }
    }

    pub fn input_error(message: impl std::fmt::Display) -> Response {
        Response {
            code: EXIT_INPUT,
            json: json!({ "error": message.to_string() }),
            text: format!("error: {message}"),
        }
    }

    pub fn render(&self, output: Output) -> String {
        match output {
            Output::Json => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            Output::Text => self.text.trim_end().to_string(),
        }
    }
}

fn with_workspace(facts: Value, ws: &Workspace) -> Value {
    json!({ "result": facts, "workspace": ws.to_doc() })
}

fn facts_text(facts: &Value) -> String {
    match facts {
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        v => format!("{v}\n"),
    }
}

fn parse_instance(s: &str) -> Result<InstanceId, Response> {
    InstanceId::parse(s).ok_or_else(|| Response::input_error(format!("unknown instance {s:?}")))
}

fn open(path: &Path) -> Result<Workspace, Response> {
    load(path).map_err(Response::input_error)
}

fn get<T>(r: Result<T, FormatError>) -> Result<T, Response> {
    r.map_err(Response::input_error)
}

fn core<T>(r: hocat::Result<T>) -> Result<T, Response> {
    r.map_err(Response::input_error)
}

pub fn execute(cli: &Cli) -> Response {
    match dispatch(&cli.command) {
        Ok(r) | Err(r) => r,
    }
}

fn dispatch(cmd: &Command) -> Result<Response, Response> {
    match cmd {
        Command::Check {
            suite,
            instance,
            seed,
            cases,
            cell_budget,
            flip_cone_sign,
        } => {
            let instances = if instance.eq_ignore_ascii_case("all") {
                InstanceId::ALL.to_vec()
            } else {
                vec![parse_instance(instance)?]
            };
            let cfg = RunConfig {
                cases: *cases,
                seed: *seed,
                cell_budget: *cell_budget,
                cone_sign: if *flip_cone_sign {
                    ConeSign::Flipped
                } else {
                    ConeSign::Standard
                },
                ..RunConfig::default()
            };
            let mut reports = vec![];
            for inst in instances {
                reports.push(run(suite, inst, &cfg).map_err(Response::input_error)?);
            }
            let passed = reports.iter().all(|r| r.passed());
            let text = reports.iter().map(|r| format!("{r}\n")).collect();
            let json = serde_json::to_value(&reports).expect("reports serialize");
            Ok(Response {
                code: if passed { EXIT_OK } else { EXIT_FAILURE },
                json,
                text,
            })
        }
        Command::Classify(input) => {
            let ws = open(&input.file)?;
            if let Ok(m) = ws.morphism(&input.name) {
                let c = classify(m);
                let facts = json!({
                    "mono": c.is_mono,
                    "epi": c.is_epi,
                    "admissible_mono": c.is_admissible_mono,
                    "admissible_epi": c.is_admissible_epi,
                    "admissible": c.is_admissible,
                    "kernel": obj_doc(&c.kernel.0),
                    "cokernel": obj_doc(&c.cokernel.0),
                    "image": obj_doc(&c.image.0),
                });
                return Ok(Response::ok(json!({ "result": facts }), facts_text(&facts)));
            }
            let f = get(ws.chain_map(&input.name))?;
            let mut facts = serde_json::Map::new();
            for flavor in ModelFlavor::ALL {
                if !(flavor.admits(f.src()) && flavor.admits(f.dst())) {
                    facts.insert(flavor.name().to_string(), Value::Null);
                    continue;
                }
                let c = core(classify_map_model(f, flavor))?;
                facts.insert(
                    flavor.name().to_string(),
                    json!({
                        "weak_equivalence": c.is_weak_equivalence,
                        "cofibration": c.is_cofibration,
                        "fibration": c.is_fibration,
                        "trivial_cofibration": c.is_trivial_cofibration,
                        "trivial_fibration": c.is_trivial_fibration,
                    }),
                );
            }
            let facts = Value::Object(facts);
            Ok(Response::ok(json!({ "result": facts }), facts_text(&facts)))
        }
        Command::Cone(input) => {
            let ws = open(&input.file)?;
            let f = get(ws.chain_map(&input.name))?;
            let c = cone(f);
            let mut out = Workspace::new(ws.instance);
            out.complexes.insert("cone".into(), c.complex.clone());
            out.add_chain_map("tau", &c.tau);
            out.add_chain_map("pi", &c.pi);
            let facts = json!({ "acyclic": hocat::chain::is_acyclic(&c.complex) });
            Ok(Response::ok(
                with_workspace(facts.clone(), &out),
                format!("{}{}", facts_text(&facts), c.complex),
            ))
        }
        Command::Factorize {
            input,
            kind,
            flavor,
            cell_budget,
        } => {
            let ws = open(&input.file)?;
            let f = get(ws.chain_map(&input.name))?;
            let flavor = ModelFlavor::from(*flavor);
            let w = match kind {
                Kind::TrivcofFib => core(factor_triv_cof_fib(f, flavor))?,
                Kind::CofTrivfib => core(factor_cof_triv_fib(f, flavor, *cell_budget))?,
            };
            let verified = core(w.verify(f, flavor))?;
            let mut out = Workspace::new(ws.instance);
            out.add_chain_map("left", &w.left);
            out.add_chain_map("right", &w.right);
            let facts = json!({ "verified": verified, "cells": w.cells });
            let text = format!("{}middle:\n{}", facts_text(&facts), w.middle);
            let code = if verified { EXIT_OK } else { EXIT_FAILURE };
            Ok(Response {
                code,
                json: with_workspace(facts, &out),
                text,
            })
        }
        Command::Lift {
            file,
            top,
            bottom,
            left,
            right,
            flavor,
        } => {
            let ws = open(file)?;
            let m = |k: &str| get(ws.chain_map(k)).cloned();
            let p = core(LiftingProblem::new(
                m(top)?,
                m(bottom)?,
                m(left)?,
                m(right)?,
            ))?;
            let lift = core(solve_lifting(&p, (*flavor).into()))?;
            let verified = lift.verify(&p);
            let mut out = Workspace::new(ws.instance);
            out.add_chain_map("diagonal", &lift.diagonal);
            let facts = json!({ "verified": verified });
            let code = if verified { EXIT_OK } else { EXIT_FAILURE };
            Ok(Response {
                code,
                json: with_workspace(facts.clone(), &out),
                text: facts_text(&facts),
            })
        }
        Command::Resolve(input) => {
            let ws = open(&input.file)?;
            let r = match ws.complex(&input.name) {
                Ok(x) => core(resolve_complex(x))?,
                Err(_) => core(resolve_object(get(ws.object(&input.name))?))?,
            };
            let verified = r.verify();
            let mut out = Workspace::new(ws.instance);
            out.add_chain_map("augmentation", &r.map);
            let facts = json!({ "verified": verified });
            let text = format!("{}resolvent:\n{}", facts_text(&facts), r.resolvent);
            let code = if verified { EXIT_OK } else { EXIT_FAILURE };
            Ok(Response {
                code,
                json: with_workspace(facts, &out),
                text,
            })
        }
        Command::Ext { file, n, a, b } => {
            let ws = open(file)?;
            let e = core(ext_group(*n, get(ws.object(a))?, get(ws.object(b))?))?;
            let facts = json!({ "ext": obj_doc(&e) });
            Ok(Response::ok(
                json!({ "result": facts }),
                format!("Ext^{n}({a}, {b}) = {e}\n"),
            ))
        }
        Command::DkN(input) => {
            let ws = open(&input.file)?;
            let a = get(ws.simplicial_object(&input.name))?;
            let n = core(normalize(a))?;
            let mut out = Workspace::new(ws.instance);
            out.complexes.insert("N".into(), n.complex.clone());
            Ok(Response::ok(
                with_workspace(json!({}), &out),
                format!("{}", n.complex),
            ))
        }
        Command::DkGamma { input, level } => {
            let ws = open(&input.file)?;
            let c = get(ws.complex(&input.name))?;
            let level = level.unwrap_or(c.hi().max(0) as usize);
            let g = core(gamma(c, level))?;
            let mut out = Workspace::new(ws.instance);
            out.simplicial.insert("Gamma".into(), g.object.clone());
            let sizes: Vec<String> = g.object.objects.iter().map(|o| o.to_string()).collect();
            let facts = json!({ "levels": sizes });
            Ok(Response::ok(
                with_workspace(facts.clone(), &out),
                facts_text(&facts),
            ))
        }
        Command::Freealg { q, d } => {
            let t = tensor_algebra_trunc(*q, *d).dims();
            let s = core(symmetric_trunc(*q, *d))?;
            let l = core(free_lie_trunc(*q, *d))?;
            let pbw = core(pbw_dimension_check(*q, *d))?;
            let facts = json!({
                "tensor": t,
                "symmetric": s.graded.dims(),
                "lie": l.graded.dims(),
                "symmetric_section": s.section_identity_holds(),
                "lie_section": l.normalized_section_holds(),
                "pbw": pbw,
            });
            let ok = pbw && s.section_identity_holds() && l.normalized_section_holds();
            let code = if ok { EXIT_OK } else { EXIT_FAILURE };
            Ok(Response {
                code,
                json: json!({ "result": facts }),
                text: facts_text(&facts),
            })
        }
        Command::Random { instance, seed } => {
            let ws = random_workspace(parse_instance(instance)?, *seed);
            Ok(Response::ok(
                serde_json::to_value(ws.to_doc()).expect("documents serialize"),
                ws.to_json(),
            ))
        }
    }
}

/// A workspace with a few random objects, morphisms, complexes and chain maps.
pub fn random_workspace(instance: InstanceId, seed: u64) -> Workspace {
    let mut g = Gen::new(seed);
    let mut ws = Workspace::new(instance);
    let w = Window::for_flavor(ModelFlavor::ChPlus);
    let a = g.object(instance, 3);
    let b = g.object(instance, 3);
    let f = g.mor(&a, &b);
    ws.add_mor("f", &f);
    ws.objects.insert("C".into(), g.object(instance, 2));
    let x = g.complex(instance, 5, w);
    let y = g.acyclic(instance, 4, w);
    let h: ChainMap = g.chain_map(&x, &y);
    ws.add_chain_map("h", &h);
    ws.complexes
        .insert("Z".into(), g.complex(instance, 4, Window { lo: 0, hi: 2 }));
    if let Ok(gm) = gamma(&g.complex(instance, 3, Window { lo: 0, hi: 1 }), 2) {
        ws.simplicial.insert("S".into(), gm.object);
    }
    ws
}
