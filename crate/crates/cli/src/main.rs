//! conekit command-line interface.
//!
//! Every invocation writes exactly one JSON value to stdout, newline
//! terminated; diagnostics go to stderr. Exit codes: 0 for membership /
//! success, 1 for a negative verdict or a failed verify run (the JSON is
//! still printed), 2 for usage and validation errors (as {"error": ...}).

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use conekit::catalog::{self, Catalog};
use conekit::expr::parse_class;
use conekit::verify::{run_suite, Suite};
use conekit::{
    build_sum, check_good, split_class, BasisRole, Error as CoreError, FourManifoldModel,
    GluedBasis, IntersectionLattice, Rational,
};

#[derive(Parser)]
#[command(
    name = "conekit",
    version,
    about = "Exact symplectic-cone membership and fiber-sum lattice bookkeeping",
    disable_help_subcommand = true
)]
struct Cli {
    /// Directory whose `<name>.json` files override the built-in catalog
    #[arg(long, global = true, env = "CONEKIT_CATALOG", value_name = "PATH")]
    catalog_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in catalog
    CatalogList,
    /// Show one model as JSON
    CatalogShow {
        /// Catalog name or path to a model JSON file
        #[arg(long, value_name = "NAME|PATH")]
        model: String,
    },
    /// Signature (b+, b-, b0) of a model's intersection form
    LatticeSig {
        /// Catalog name, model JSON file, or bare lattice JSON file
        #[arg(long, value_name = "NAME|PATH")]
        model: String,
    },
    /// Cone-membership check with certificate
    ConeCheck {
        /// Catalog name or path to a model JSON file
        #[arg(long, value_name = "NAME|PATH")]
        model: String,
        /// Class expression over the model's basis labels, e.g. "f+G"
        #[arg(long, value_name = "EXPR")]
        class: String,
        /// Which cone to test; defaults to `relative` when --relative is
        /// given and `positive` otherwise
        #[arg(long, value_name = "PRED")]
        predicate: Option<Predicate>,
        /// Dual class of the submanifold V for the relative cone
        #[arg(long, value_name = "EXPR")]
        relative: Option<String>,
    },
    /// Build the glued lattice of a fiber sum
    SumBuild {
        /// Path to a fiber-sum spec JSON file
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
    },
    /// Split a class of a good sum into summand classes
    SumSplit {
        /// Path to a fiber-sum spec JSON file
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        /// Class expression over the glued basis (F, G, x1.., y1..)
        #[arg(long, value_name = "EXPR")]
        class: String,
        /// Prescribed square of the X-side class, e.g. "2" or "5/2"
        #[arg(long, value_name = "RAT")]
        rho: String,
    },
    /// Run a seeded verification suite
    Verify {
        /// Suite name: table, t2 or snt4
        suite: String,
        /// Number of seeded samples per check
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Seed of the SplitMix64 stream
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Predicate {
    Positive,
    Symplectic,
    Relative,
    Conjecture,
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            return emit_error(&e.to_string());
        }
    };
    let catalog = Catalog::with_override_dir(cli.catalog_dir.clone());
    match run(cli.command, &catalog) {
        Ok(code) => code,
        Err(e) => emit_error(&e.to_string()),
    }
}

fn emit_error(message: &str) -> i32 {
    #[derive(Serialize)]
    struct ErrorJson<'a> {
        error: &'a str,
    }
    emit(&ErrorJson { error: message });
    2
}

fn emit<T: Serialize>(value: &T) {
    use std::io::Write;
    let line = serde_json::to_string(value).expect("JSON output");
    // a closed pipe downstream is not an error worth reporting
    if writeln!(std::io::stdout().lock(), "{line}").is_err() {
        std::process::exit(0);
    }
}

fn resolve_model(catalog: &Catalog, name_or_path: &str) -> Result<FourManifoldModel, CoreError> {
    let p = Path::new(name_or_path);
    if p.is_file() {
        catalog::load_model_file(p)
    } else {
        catalog.get(name_or_path)
    }
}

fn run(command: Command, catalog: &Catalog) -> Result<i32, CoreError> {
    match command {
        Command::CatalogList => {
            #[derive(Serialize)]
            struct Family {
                pattern: &'static str,
                constraint: &'static str,
            }
            #[derive(Serialize)]
            struct Listing {
                builtin: Vec<&'static str>,
                families: Vec<Family>,
            }
            emit(&Listing {
                builtin: catalog::builtin_names().to_vec(),
                families: vec![Family {
                    pattern: "T2xSigma(g)",
                    constraint: "g >= 2",
                }],
            });
            Ok(0)
        }
        Command::CatalogShow { model } => {
            let p = Path::new(&model);
            let (m, notes) = if p.is_file() {
                (catalog::load_model_file(p)?, None)
            } else {
                let m = catalog.get(&model)?;
                // provenance notes describe the pinned entry; drop them when
                // an override directory supplied a different model
                let notes = catalog::get_entry(&model)
                    .ok()
                    .filter(|e| e.model == m)
                    .map(|e| e.provenance_notes);
                (m, notes)
            };
            #[derive(Serialize)]
            struct Show {
                model: FourManifoldModel,
                provenance_notes: Option<String>,
            }
            emit(&Show {
                model: m,
                provenance_notes: notes,
            });
            Ok(0)
        }
        Command::LatticeSig { model } => {
            let (name, lattice) = resolve_lattice(catalog, &model)?;
            let sig = lattice.signature();
            #[derive(Serialize)]
            struct Sig {
                name: Option<String>,
                rank: usize,
                b_plus: usize,
                b_minus: usize,
                b_zero: usize,
            }
            emit(&Sig {
                name,
                rank: lattice.rank(),
                b_plus: sig.b_plus,
                b_minus: sig.b_minus,
                b_zero: sig.b_zero,
            });
            Ok(0)
        }
        Command::ConeCheck {
            model,
            class,
            predicate,
            relative,
        } => {
            let m = resolve_model(catalog, &model)?;
            let alpha = parse_class(m.lattice(), &class)?;
            let predicate = predicate.unwrap_or(if relative.is_some() {
                Predicate::Relative
            } else {
                Predicate::Positive
            });
            let verdict = match predicate {
                Predicate::Positive => m.positive_cone_contains(&alpha)?,
                Predicate::Symplectic => m.symplectic_cone_b1_contains(&alpha)?,
                Predicate::Conjecture => m.conjecture_cone_contains(&alpha)?,
                Predicate::Relative => {
                    let v_expr = relative.ok_or_else(|| {
                        CoreError::InvalidParameter(
                            "--predicate relative requires --relative EXPR".into(),
                        )
                    })?;
                    let v = parse_class(m.lattice(), &v_expr)?;
                    m.relative_cone_contains(&v, &alpha)?
                }
            };
            emit(&verdict);
            Ok(if verdict.member { 0 } else { 1 })
        }
        Command::SumBuild { spec } => {
            let spec = load_spec_file(catalog, &spec)?;
            let (model, basis) = build_sum(&spec)?;
            emit(&sum_build_output(&spec, &model, &basis));
            Ok(0)
        }
        Command::SumSplit { spec, class, rho } => {
            let spec = load_spec_file(catalog, &spec)?;
            let (model, basis) = build_sum(&spec)?;
            let alpha = parse_class(model.lattice(), &class)?;
            let rho: Rational = rho.parse()?;
            let (ax, ay) = split_class(&spec, &basis, &alpha, &rho)?;
            #[derive(Serialize)]
            struct Side {
                coeffs: Vec<Rational>,
                expr: String,
                square: Rational,
            }
            #[derive(Serialize)]
            struct SplitOut {
                alpha_x: Side,
                alpha_y: Side,
                rho: Rational,
                fiber_pairing: Rational,
            }
            let xl = spec.x_model().lattice();
            let yl = spec.y_model().lattice();
            emit(&SplitOut {
                alpha_x: Side {
                    coeffs: ax.coeffs().to_vec(),
                    expr: xl.render_class(&ax),
                    square: xl.square(&ax)?,
                },
                alpha_y: Side {
                    coeffs: ay.coeffs().to_vec(),
                    expr: yl.render_class(&ay),
                    square: yl.square(&ay)?,
                },
                rho,
                fiber_pairing: alpha.coeff(1).clone(),
            });
            Ok(0)
        }
        Command::Verify {
            suite,
            samples,
            seed,
        } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, samples, seed)?;
            emit(&report);
            Ok(if report.all_pass() { 0 } else { 1 })
        }
    }
}

/// `lattice-sig` accepts a catalog name, a model file, or a bare lattice
/// file ({"rank", "labels", "gram"}).
fn resolve_lattice(
    catalog: &Catalog,
    name_or_path: &str,
) -> Result<(Option<String>, IntersectionLattice), CoreError> {
    let p = Path::new(name_or_path);
    if p.is_file() {
        let text = std::fs::read_to_string(p)
            .map_err(|e| CoreError::SchemaError(format!("cannot read {}: {e}", p.display())))?;
        if let Ok(model) = catalog::load_model(&text) {
            return Ok((Some(model.name().to_string()), model.lattice().clone()));
        }
        let lattice: IntersectionLattice = serde_json::from_str(&text)
            .map_err(|e| CoreError::SchemaError(format!("not a model or lattice file: {e}")))?;
        Ok((None, lattice))
    } else {
        let m = catalog.get(name_or_path)?;
        Ok((Some(m.name().to_string()), m.lattice().clone()))
    }
}

fn load_spec_file(
    catalog: &Catalog,
    path: &Path,
) -> Result<conekit::FiberSumSpec, CoreError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::SchemaError(format!("cannot read {}: {e}", path.display())))?;
    conekit::fibersum::load_spec(&text, catalog)
}

#[derive(Serialize)]
struct BasisRoleOut {
    index: usize,
    role: BasisRole,
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    in_x: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    in_y: Option<Vec<Rational>>,
}

#[derive(Serialize)]
struct SumBuildOut {
    model: FourManifoldModel,
    goodness: conekit::GoodnessReport,
    half_space_certified: bool,
    basis_roles: Vec<BasisRoleOut>,
}

fn sum_build_output(
    spec: &conekit::FiberSumSpec,
    model: &FourManifoldModel,
    basis: &GluedBasis,
) -> SumBuildOut {
    SumBuildOut {
        model: model.clone(),
        goodness: check_good(spec),
        half_space_certified: model.fiber_cone_half_space(),
        basis_roles: basis
            .elements()
            .iter()
            .enumerate()
            .map(|(index, e)| BasisRoleOut {
                index,
                role: e.role,
                label: e.label.clone(),
                in_x: e.in_x.as_ref().map(|c| c.coeffs().to_vec()),
                in_y: e.in_y.as_ref().map(|c| c.coeffs().to_vec()),
            })
            .collect(),
    }
}

