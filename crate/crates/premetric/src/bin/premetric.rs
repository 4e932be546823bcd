//! Thin command-line front end over the library: constructions, checks and
//! verifications over the JSON formats, with optional DOT output.
//!
//! Exit codes: 0 success or verification pass, 1 verification failure (a
//! counterexample is emitted), 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use premetric::colimits::{
    coequaliser, coproduct, final_lift, DEFAULT_MAX_FUNCTIONS,
};
use premetric::dot::{lattice_hasse_dot, topology_specialization_dot};
use premetric::json::{
    cocone_from_json, cone_from_json, lattice_from_json, map_from_json,
    relation_from_json, space_from_json, space_to_json, to_canonical_string, topology_from_json,
    topology_to_json,
};
use premetric::lattice::Lattice;
use premetric::limits::{equaliser, initial_lift, product, DEFAULT_MAX_GROUND};
use premetric::space::{enumerate_topologies, flagg, premetrize, SpaceMap};
use premetric::verify::{
    check_adjunction, check_colimit, check_limit, check_o_preservation, continuity_gap_search,
    default_probes, round_trip_suite, ColimitDiagram, LimitDiagram, OPreservationInstance,
    VerificationReport,
};

#[derive(Parser)]
#[command(name = "premetric", version, about = "Finite continuity spaces over value distributive lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SizeCaps {
    /// Cap on constructed omega ground sizes.
    #[arg(long, default_value_t = DEFAULT_MAX_GROUND)]
    max_ground: usize,
    /// Cap on constructed function ground sizes.
    #[arg(long, default_value_t = DEFAULT_MAX_FUNCTIONS)]
    max_functions: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice validation and value-distributivity checking.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Continuity-space constructions.
    Space {
        #[command(subcommand)]
        command: SpaceCommand,
    },
    /// Map continuity checking.
    Map {
        #[command(subcommand)]
        command: MapCommand,
    },
    /// Limit constructions.
    Limit {
        #[command(subcommand)]
        command: LimitCommand,
    },
    /// Colimit constructions.
    Colimit {
        #[command(subcommand)]
        command: ColimitCommand,
    },
    /// Brute-force verification of the categorical claims.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Enumeration utilities.
    Enum {
        #[command(subcommand)]
        command: EnumCommand,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Validates a lattice and reports value distributivity.
    Check {
        file: PathBuf,
        /// Emit the Hasse diagram as DOT instead of the report.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum SpaceCommand {
    /// Generated topology of a space.
    Topology {
        file: PathBuf,
        /// Emit the specialization order as DOT instead of the topology.
        #[arg(long)]
        dot: bool,
    },
    /// Omega-valued space regenerating a topology.
    Flagg { file: PathBuf },
    /// Rational-valued 0/1 space regenerating a topology.
    Premetrize { file: PathBuf },
}

#[derive(Subcommand)]
enum MapCommand {
    /// Epsilon-delta and topological continuity of a map.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum LimitCommand {
    /// Product of spaces.
    Product {
        files: Vec<PathBuf>,
        #[command(flatten)]
        caps: SizeCaps,
    },
    /// Equaliser of a parallel pair of maps.
    Equalise { f: PathBuf, g: PathBuf },
    /// Initial lift of a cone.
    Initial {
        file: PathBuf,
        #[command(flatten)]
        caps: SizeCaps,
    },
}

#[derive(Subcommand)]
enum ColimitCommand {
    /// Coproduct of spaces.
    Coproduct {
        files: Vec<PathBuf>,
        #[command(flatten)]
        caps: SizeCaps,
    },
    /// Coequaliser of a space by an equivalence relation.
    Coequalise {
        space: PathBuf,
        relation: PathBuf,
        #[command(flatten)]
        caps: SizeCaps,
    },
    /// Final lift of a cocone.
    Final {
        file: PathBuf,
        #[command(flatten)]
        caps: SizeCaps,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Round-trips every topology on n points through both inverse
    /// constructions.
    RoundTrip {
        #[arg(short)]
        n: usize,
    },
    /// Hom-set agreement between topological and epsilon-delta continuity.
    Adjunction { topology: PathBuf },
    /// Universal property of a limit instance.
    Limit {
        instance: PathBuf,
        #[command(flatten)]
        caps: SizeCaps,
    },
    /// Universal property of a colimit instance.
    Colimit {
        instance: PathBuf,
        #[command(flatten)]
        caps: SizeCaps,
    },
    /// Topology-preservation of a constructed (co)limit.
    Preservation {
        instance: PathBuf,
        #[command(flatten)]
        caps: SizeCaps,
    },
    /// Maps that are topologically but not epsilon-delta continuous.
    Gap { source: PathBuf, target: PathBuf },
}

#[derive(Subcommand)]
enum EnumCommand {
    /// All labeled topologies on n points.
    Topologies {
        #[arg(short)]
        n: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
}

fn read_json(path: &PathBuf) -> premetric::Result<Json> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| premetric::Error::BadInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| premetric::Error::BadInput(format!("{}: {e}", path.display())))
}

fn emit(v: &Json) {
    print!("{}", to_canonical_string(v));
}

fn legs_json(legs: &[SpaceMap]) -> Json {
    let rendered: Vec<Json> = legs
        .iter()
        .map(|leg| {
            let map: serde_json::Map<String, Json> = leg
                .source()
                .points()
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), json!(leg.target().point(leg.apply(i)))))
                .collect();
            Json::Object(map)
        })
        .collect();
    json!(rendered)
}

fn emit_report(report: &VerificationReport) -> ExitCode {
    emit(&serde_json::to_value(report).expect("serializable report"));
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> premetric::Result<ExitCode> {
    match cli.command {
        Command::Lattice {
            command: LatticeCommand::Check { file, dot },
        } => {
            let lattice = lattice_from_json(&read_json(&file)?)?;
            if dot {
                match &lattice {
                    Lattice::Finite(l) => print!("{}", lattice_hasse_dot(l)),
                    _ => {
                        return Err(premetric::Error::BadInput(
                            "Hasse output requires a finite lattice".into(),
                        ))
                    }
                }
                return Ok(ExitCode::SUCCESS);
            }
            let vd = lattice.is_value_distributive_kind();
            let witness = match &lattice {
                Lattice::Finite(l) => l
                    .filter_violation()
                    .map(|(a, b)| json!([l.id(a), l.id(b)])),
                _ => None,
            };
            let mut report = json!({ "valid": true, "value_distributive": vd });
            if let Some(w) = witness {
                report["filter_violation"] = w;
            }
            emit(&report);
            Ok(if vd { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Space { command } => {
            match command {
                SpaceCommand::Topology { file, dot } => {
                    let space = space_from_json(&read_json(&file)?)?;
                    let topology = space.generate_topology()?;
                    if dot {
                        print!("{}", topology_specialization_dot(&topology));
                    } else {
                        emit(&topology_to_json(&topology));
                    }
                }
                SpaceCommand::Flagg { file } => {
                    let topology = topology_from_json(&read_json(&file)?)?;
                    emit(&space_to_json(&flagg(&topology)?));
                }
                SpaceCommand::Premetrize { file } => {
                    let topology = topology_from_json(&read_json(&file)?)?;
                    emit(&space_to_json(&premetrize(&topology)?));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Map {
            command: MapCommand::Check { file },
        } => {
            let map = map_from_json(&read_json(&file)?)?;
            let witness = map.eps_delta_witness()?;
            let topological = map.is_top_continuous()?;
            let mut report = json!({
                "eps_delta_continuous": witness.is_none(),
                "topologically_continuous": topological,
            });
            if let Some((point, eps)) = &witness {
                report["witness"] = json!({
                    "point": point,
                    "eps": premetric::json::value_to_json(eps),
                });
            }
            emit(&report);
            Ok(if witness.is_none() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Limit { command } => {
            let (space, legs) = match command {
                LimitCommand::Product { files, caps } => {
                    let spaces = files
                        .iter()
                        .map(|f| space_from_json(&read_json(f)?))
                        .collect::<premetric::Result<Vec<_>>>()?;
                    product(&spaces, caps.max_ground)?
                }
                LimitCommand::Equalise { f, g } => {
                    let f = map_from_json(&read_json(&f)?)?;
                    let g = map_from_json(&read_json(&g)?)?;
                    let (space, incl) = equaliser(&f, &g)?;
                    (space, vec![incl])
                }
                LimitCommand::Initial { file, caps } => {
                    let cone = cone_from_json(&read_json(&file)?)?;
                    initial_lift(&cone, caps.max_ground)?
                }
            };
            emit(&json!({ "space": space_to_json(&space), "legs": legs_json(&legs) }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Colimit { command } => {
            let (space, legs) = match command {
                ColimitCommand::Coproduct { files, caps } => {
                    let spaces = files
                        .iter()
                        .map(|f| space_from_json(&read_json(f)?))
                        .collect::<premetric::Result<Vec<_>>>()?;
                    coproduct(&spaces, caps.max_ground)?
                }
                ColimitCommand::Coequalise {
                    space,
                    relation,
                    caps,
                } => {
                    let space = space_from_json(&read_json(&space)?)?;
                    let blocks = relation_from_json(&read_json(&relation)?)?;
                    let (quotient, qmap) = coequaliser(&space, &blocks, caps.max_functions)?;
                    (quotient, vec![qmap])
                }
                ColimitCommand::Final { file, caps } => {
                    let (legs, points) = cocone_from_json(&read_json(&file)?)?;
                    final_lift(&legs, &points, caps.max_ground, caps.max_functions)?
                }
            };
            emit(&json!({ "space": space_to_json(&space), "legs": legs_json(&legs) }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { command } => {
            let report = match command {
                VerifyCommand::RoundTrip { n } => round_trip_suite(n)?,
                VerifyCommand::Adjunction { topology } => {
                    let t = topology_from_json(&read_json(&topology)?)?;
                    check_adjunction(&t, &default_probes())?
                }
                VerifyCommand::Limit { instance, caps } => {
                    let v = read_json(&instance)?;
                    let obj = v
                        .as_object()
                        .ok_or_else(|| premetric::Error::BadInput("instance must be an object".into()))?;
                    match obj.get("kind").and_then(|k| k.as_str()) {
                        Some("product") => {
                            let spaces = obj
                                .get("spaces")
                                .and_then(|s| s.as_array())
                                .ok_or_else(|| premetric::Error::BadInput("missing spaces".into()))?
                                .iter()
                                .map(space_from_json)
                                .collect::<premetric::Result<Vec<_>>>()?;
                            let (apex, legs) = product(&spaces, caps.max_ground)?;
                            check_limit(&apex, &legs, &LimitDiagram::Product(spaces), &default_probes())?
                        }
                        Some("equalise") => {
                            let f = map_from_json(obj.get("f").ok_or_else(|| {
                                premetric::Error::BadInput("missing f".into())
                            })?)?;
                            let g = map_from_json(obj.get("g").ok_or_else(|| {
                                premetric::Error::BadInput("missing g".into())
                            })?)?;
                            let (sub, incl) = equaliser(&f, &g)?;
                            check_limit(
                                &sub,
                                std::slice::from_ref(&incl),
                                &LimitDiagram::Equaliser(f, g),
                                &default_probes(),
                            )?
                        }
                        other => {
                            return Err(premetric::Error::BadInput(format!(
                                "unknown limit kind {other:?}"
                            )))
                        }
                    }
                }
                VerifyCommand::Colimit { instance, caps } => {
                    let v = read_json(&instance)?;
                    let obj = v
                        .as_object()
                        .ok_or_else(|| premetric::Error::BadInput("instance must be an object".into()))?;
                    match obj.get("kind").and_then(|k| k.as_str()) {
                        Some("coproduct") => {
                            let spaces = obj
                                .get("spaces")
                                .and_then(|s| s.as_array())
                                .ok_or_else(|| premetric::Error::BadInput("missing spaces".into()))?
                                .iter()
                                .map(space_from_json)
                                .collect::<premetric::Result<Vec<_>>>()?;
                            let (sum, legs) = coproduct(&spaces, caps.max_ground)?;
                            check_colimit(
                                &sum,
                                &legs,
                                &ColimitDiagram::Coproduct(spaces),
                                &default_probes(),
                            )?
                        }
                        Some("coequalise") => {
                            let space = space_from_json(obj.get("space").ok_or_else(|| {
                                premetric::Error::BadInput("missing space".into())
                            })?)?;
                            let blocks = relation_from_json(obj.get("relation").ok_or_else(
                                || premetric::Error::BadInput("missing relation".into()),
                            )?)?;
                            let (quotient, qmap) =
                                coequaliser(&space, &blocks, caps.max_functions)?;
                            check_colimit(
                                &quotient,
                                std::slice::from_ref(&qmap),
                                &ColimitDiagram::Coequaliser(space, blocks),
                                &default_probes(),
                            )?
                        }
                        other => {
                            return Err(premetric::Error::BadInput(format!(
                                "unknown colimit kind {other:?}"
                            )))
                        }
                    }
                }
                VerifyCommand::Preservation { instance, caps } => {
                    let v = read_json(&instance)?;
                    let obj = v
                        .as_object()
                        .ok_or_else(|| premetric::Error::BadInput("instance must be an object".into()))?;
                    let spaces = |key: &str| -> premetric::Result<Vec<_>> {
                        obj.get(key)
                            .and_then(|s| s.as_array())
                            .ok_or_else(|| premetric::Error::BadInput(format!("missing {key}")))?
                            .iter()
                            .map(space_from_json)
                            .collect()
                    };
                    let inst = match obj.get("kind").and_then(|k| k.as_str()) {
                        Some("product") => OPreservationInstance::Product(spaces("spaces")?),
                        Some("coproduct") => OPreservationInstance::Coproduct(spaces("spaces")?),
                        Some("coequalise") => OPreservationInstance::Coequaliser(
                            space_from_json(obj.get("space").ok_or_else(|| {
                                premetric::Error::BadInput("missing space".into())
                            })?)?,
                            relation_from_json(obj.get("relation").ok_or_else(|| {
                                premetric::Error::BadInput("missing relation".into())
                            })?)?,
                        ),
                        other => {
                            return Err(premetric::Error::BadInput(format!(
                                "unknown preservation kind {other:?}"
                            )))
                        }
                    };
                    check_o_preservation(&inst, caps.max_ground, caps.max_functions)?
                }
                VerifyCommand::Gap { source, target } => {
                    let source = space_from_json(&read_json(&source)?)?;
                    let target = space_from_json(&read_json(&target)?)?;
                    continuity_gap_search(&source, &target)?
                }
            };
            Ok(emit_report(&report))
        }
        Command::Enum {
            command: EnumCommand::Topologies { n, count },
        } => {
            let topologies = enumerate_topologies(n)?;
            if count {
                println!("{}", topologies.len());
            } else {
                let rendered: Vec<Json> = topologies.iter().map(topology_to_json).collect();
                emit(&json!(rendered));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
