use std::fs;
use std::process::ExitCode;

use num_bigint::BigInt;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxfold::chebring::{reg_rep_elem, ChebElem};
use coxfold::clustercat::{exchange_graph_dot, tilting_json, tilting_report, ClusterCategory};
use coxfold::exchange::ExchangeMatrix;
use coxfold::repcat::{check_a4_figure, FoldedModules};
use coxfold::rootsys::generate_roots;
use coxfold::scalar::{matrix_to_json, Matrix, Scalar};
use coxfold::tropical::{enumerate_seeds, verify_walks, Seed};
use coxfold::unfolding::{standard_folding, verify_unfolding, FoldingKind, FoldingSpec};
use coxfold::{chebring::AlgReal, Error};

#[derive(Parser)]
#[command(name = "coxfold", version, about = "Folding, mutation and tilting for H3, H4 and I2(m)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    H3,
    H4,
    I2,
    F4e6,
}

#[derive(Args, Clone)]
struct KindOpts {
    /// Folding family.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// For I2: the dihedral order is 2n+1.
    #[arg(long)]
    n: Option<u32>,
    /// For I2: the dihedral order itself (overrides --n).
    #[arg(long)]
    m: Option<u32>,
}

impl KindOpts {
    fn kind(&self) -> Result<FoldingKind, Error> {
        Ok(match self.kind {
            KindArg::H3 => FoldingKind::H3,
            KindArg::H4 => FoldingKind::H4,
            KindArg::F4e6 => FoldingKind::F4E6,
            KindArg::I2 => match (self.m, self.n) {
                (Some(m), _) => FoldingKind::I2(m),
                (None, Some(n)) => FoldingKind::I2(2 * n + 1),
                (None, None) => return Err(Error::InvalidParameter("I2 needs --n or --m".into())),
            },
        })
    }

    fn spec(&self) -> Result<FoldingSpec, Error> {
        standard_folding(self.kind()?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Chebyshev ring: product table, or product, ρ and σ of two elements.
    Ring {
        #[arg(long)]
        n: usize,
        /// Two coefficient lists such as "[0,1,0]".
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        mul: Option<Vec<String>>,
    },
    /// Mutate an exchange matrix read from JSON.
    Mutate {
        #[arg(long)]
        matrix: String,
        /// Mutation indices, applied in order.
        #[arg(long = "at", required = true, num_args = 1..)]
        at: Vec<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print a standard folding or verify its unfolding conditions along mutation words.
    Unfold {
        #[command(flatten)]
        kind: KindOpts,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 200)]
        random: usize,
        #[arg(long, default_value_t = 20)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Only print the folding data.
        #[arg(long)]
        spec_only: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Auslander–Reiten quiver of the unfolded quiver.
    Ar {
        #[command(subcommand)]
        action: ArAction,
    },
    /// Check the folding theorem on projected dimension vectors.
    Fold {
        #[command(flatten)]
        kind: KindOpts,
    },
    /// Tropical seed patterns.
    Tropical {
        #[command(subcommand)]
        action: TropicalAction,
    },
    /// Enumerate basic tilting objects and walk the exchange graph.
    Tilting {
        #[command(flatten)]
        kind: KindOpts,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include every tilting object with its G-matrices.
        #[arg(long)]
        objects: bool,
    },
    /// Run the verification suite for one folding.
    Verify {
        #[command(subcommand)]
        action: VerifyAction,
    },
}

#[derive(Subcommand)]
enum ArAction {
    Build {
        #[command(flatten)]
        kind: KindOpts,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Column generators with valued arrows.
    Reduced {
        #[command(flatten)]
        kind: KindOpts,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum TropicalAction {
    Walk {
        #[command(flatten)]
        kind: KindOpts,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 30)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Which checks decide the exit status.
        #[arg(long, value_delimiter = ',', default_value = "cube,blocks,roots,dets")]
        verify: Vec<String>,
    },
    Enumerate {
        #[command(flatten)]
        kind: KindOpts,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum VerifyAction {
    All {
        #[command(flatten)]
        kind: KindOpts,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Depth of exhaustive mutation words.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

enum Outcome {
    Pass(String),
    Fail(String),
}

fn emit(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_coeffs(s: &str, n: usize) -> Result<ChebElem, Error> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let cs: Vec<i64> = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a list of integers".into()))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("not an integer: {x}"))))
        .collect::<Result<_, _>>()?;
    ChebElem::from_i64(n, &cs)
}

fn ring(n: usize, mul: Option<Vec<String>>) -> Result<Outcome, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    let out = match mul {
        Some(v) => {
            let a = parse_coeffs(&v[0], n)?;
            let b = parse_coeffs(&v[1], n)?;
            let p = a.mul(&b)?;
            json!({
                "product": p.to_json(),
                "display": p.to_string(),
                "rho": reg_rep_elem(&p).iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "sigma": p.sigma().to_json(),
                "semiring": p.is_semiring(),
            })
        }
        None => {
            let mut table = Vec::new();
            for k in 0..n {
                let row: Vec<String> =
                    (0..n).map(|l| ChebElem::theta(n, k).and_then(|a| a.mul(&ChebElem::theta(n, l)?)).map(|p| p.to_string())).collect::<Result<_, _>>()?;
                table.push(row);
            }
            json!({"rank": n, "products": table})
        }
    };
    Ok(Outcome::Pass(emit(&out)))
}

fn mutate_any<R: Scalar>(v: &Value, at: &[usize], format: Format) -> Result<String, Error> {
    let b = ExchangeMatrix::<R>::from_json(v)?.mutate_word(at)?;
    Ok(match format {
        Format::Dot => b.to_dot(),
        Format::Csv => b.entries().iter().map(|r| r.iter().map(Scalar::display).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("\n") + "\n",
        Format::Json => emit(&b.to_json()),
    })
}

fn mutate(path: &str, at: &[usize], format: Format) -> Result<Outcome, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let out = match v.get("ring").and_then(Value::as_str).unwrap_or("Z") {
        "Z" => mutate_any::<BigInt>(&v, at, format)?,
        "AlgReal" => mutate_any::<AlgReal>(&v, at, format)?,
        "ChebElem" => mutate_any::<ChebElem>(&v, at, format)?,
        other => return Err(Error::Parse(format!("unknown ring {other}"))),
    };
    Ok(Outcome::Pass(out))
}

fn unfold(o: &KindOpts, depth: usize, random: usize, length: usize, seed: u64, spec_only: bool, format: Format) -> Result<Outcome, Error> {
    let spec = o.spec()?;
    if format == Format::Dot {
        return Ok(Outcome::Pass(format!("{}{}", spec.unfolded.to_dot(), spec.folded.to_dot())));
    }
    if spec_only {
        return Ok(Outcome::Pass(emit(&spec.to_json())));
    }
    let r = verify_unfolding(&spec, depth, random, length, seed)?;
    let v = serde_json::to_value(&r).map_err(|e| Error::Parse(e.to_string()))?;
    let v = json!({"report": v, "passed": r.passed()});
    Ok(if r.passed() { Outcome::Pass(emit(&v)) } else { Outcome::Fail(emit(&v)) })
}

fn ar(action: &ArAction) -> Result<Outcome, Error> {
    match action {
        ArAction::Build { kind, format } => {
            let fm = FoldedModules::new(&kind.spec()?)?;
            Ok(Outcome::Pass(match format {
                Format::Dot => fm.ar.to_dot(|i| fm.label(i)),
                Format::Csv => {
                    let mut s = String::from("index,level,orbit,dim,projected\n");
                    for (i, x) in fm.ar.indecs.iter().enumerate() {
                        let dim: Vec<String> = x.dim.iter().map(|d| d.to_string()).collect();
                        s.push_str(&format!("{i},{},{},{},\"{}\"\n", x.level, fm.ar.quiver.labels[x.vertex], dim.join(" "), fm.label(i)));
                    }
                    s
                }
                Format::Json => {
                    let mut v = fm.ar.to_json();
                    v["projected"] = fm.projected.iter().map(|p| p.iter().map(AlgReal::to_json).collect::<Vec<_>>()).collect::<Vec<_>>().into();
                    emit(&v)
                }
            }))
        }
        ArAction::Reduced { kind, format } => {
            let fm = FoldedModules::new(&kind.spec()?)?;
            let arrows = fm.reduced_ar_quiver()?;
            Ok(Outcome::Pass(if *format == Format::Dot {
                let mut s = String::from("digraph reduced {\n  rankdir=LR;\n");
                for g in fm.generators() {
                    s.push_str(&format!("  v{g} [label=\"{}\"];\n", fm.label(g)));
                }
                for a in &arrows {
                    s.push_str(&format!("  v{} -> v{} [label=\"({}, {})\"];\n", a.from, a.to, a.left, a.right));
                }
                for g in fm.generators() {
                    if let Some(t) = fm.ar.tau[g] {
                        s.push_str(&format!("  v{g} -> v{t} [style=dashed, constraint=false];\n"));
                    }
                }
                s + "}\n"
            } else {
                emit(&json!({
                    "generators": fm.generators().iter().map(|&g| fm.label(g)).collect::<Vec<_>>(),
                    "arrows": arrows.iter().map(|a| json!({"from": fm.label(a.from), "to": fm.label(a.to), "valuation": [a.left.to_string(), a.right.to_string()]})).collect::<Vec<_>>(),
                }))
            }))
        }
    }
}

fn fold(o: &KindOpts) -> Result<Outcome, Error> {
    let fm = FoldedModules::new(&o.spec()?)?;
    let rep = fm.folding_report()?;
    let v = emit(&rep.to_json());
    Ok(if rep.passed() { Outcome::Pass(v) } else { Outcome::Fail(v) })
}

fn tropical(action: &TropicalAction) -> Result<Outcome, Error> {
    match action {
        TropicalAction::Walk { kind, depth, random, length, seed, verify } => {
            let rep = verify_walks(&kind.spec()?, *depth, *random, *length, *seed)?;
            let mut ok = true;
            for v in verify {
                ok &= match v.as_str() {
                    "cube" => rep.cube_passed(),
                    "roots" => rep.roots_passed(),
                    "blocks" => rep.block_failures == 0,
                    "dets" => rep.det_failures == 0,
                    other => return Err(Error::InvalidParameter(format!("unknown check {other}"))),
                };
            }
            let out = emit(&rep.to_json());
            Ok(if ok { Outcome::Pass(out) } else { Outcome::Fail(out) })
        }
        TropicalAction::Enumerate { kind, cap, format } => {
            let spec = kind.spec()?;
            let e = enumerate_seeds(spec.folded.entries(), *cap)?;
            let g: Vec<Matrix<AlgReal>> = e.seeds.iter().map(Seed::g_matrix).collect::<Result<_, _>>()?;
            let out = if *format == Format::Csv {
                let mut s = String::from("seed,word,kind,index,vector\n");
                for (i, (seed, g)) in e.seeds.iter().zip(&g).enumerate() {
                    let word: Vec<String> = seed.word.iter().map(|k| k.to_string()).collect();
                    for k in 0..seed.n() {
                        let c: Vec<String> = seed.c_vector(k).iter().map(|x| x.to_string()).collect();
                        let gv: Vec<String> = g.iter().map(|r| r[k].to_string()).collect();
                        s.push_str(&format!("{i},{},c,{k},\"{}\"\n", word.join(" "), c.join("; ")));
                        s.push_str(&format!("{i},{},g,{k},\"{}\"\n", word.join(" "), gv.join("; ")));
                    }
                }
                s
            } else {
                emit(&json!({
                    "labeled_seeds": e.labeled,
                    "clusters": e.unlabeled.len(),
                    "cap_reached": e.cap_reached,
                    "seeds": e.seeds.iter().zip(&g).map(|(s, g)| {
                        let mut v = s.to_json();
                        v["g"] = matrix_to_json(g);
                        v
                    }).collect::<Vec<_>>(),
                }))
            };
            Ok(Outcome::Pass(out))
        }
    }
}

fn tilting(o: &KindOpts, format: Format, objects: bool) -> Result<Outcome, Error> {
    let cat = ClusterCategory::new(&o.spec()?)?;
    let (rep, nodes) = tilting_report(&cat, true)?;
    let ok = rep.structure_passed() && rep.g_passed();
    let out = if format == Format::Dot {
        exchange_graph_dot(&cat, &nodes)
    } else {
        let mut v = json!({"report": rep.to_json()});
        if objects {
            v["objects"] = tilting_json(&cat, &nodes)?;
        }
        emit(&v)
    };
    Ok(if ok { Outcome::Pass(out) } else { Outcome::Fail(out) })
}

fn verify_all(o: &KindOpts, seed: u64, depth: usize) -> Result<Outcome, Error> {
    let spec = o.spec()?;
    let mut sections: Vec<(&str, bool, Value)> = Vec::new();
    let unf = verify_unfolding(&spec, depth, 200, 20, seed)?;
    sections.push(("unfolding", unf.passed(), json!({"words": unf.words_checked})));
    if spec.cheb_rank.is_some() {
        let fm = FoldedModules::new(&spec)?;
        let rep = fm.folding_report()?;
        sections.push(("folding", rep.passed(), rep.to_json()));
        let walk = verify_walks(&spec, depth, 100, 30, seed)?;
        sections.push(("cube", walk.cube_passed(), json!({"edges": walk.edges, "faces": walk.face_checks})));
        sections.push(("roots", walk.roots_passed(), json!({"c_vectors": walk.c_vectors})));
        sections.push(("blocks", walk.blocks_passed(), json!({"seeds": walk.block_checks})));
        let cat = ClusterCategory::new(&spec)?;
        let (t, _) = tilting_report(&cat, true)?;
        sections.push(("complements", t.structure_passed(), json!({"tilting_objects": t.tilting_objects, "almost_complete": t.almost_complete})));
        sections.push(("g_matrices", t.g_passed(), json!({"d_f_matches": t.d_f_matches, "tropical_set_equal": t.tropical_set_equal})));
        let roots = generate_roots(coxfold::repcat::coxeter_type(spec.kind)?)?;
        sections.push(("root_system", roots.roots.len() == roots.ty.expected_root_count(), json!({"roots": roots.roots.len()})));
    }
    if spec.kind == FoldingKind::I2(5) {
        let (matched, bad) = check_a4_figure()?;
        sections.push(("a4_figure", bad.is_empty(), json!({"matched": matched})));
    }
    let ok = sections.iter().all(|s| s.1);
    let v = json!({
        "kind": spec.kind.name(),
        "seed": seed,
        "sections": sections.iter().map(|(n, p, d)| json!({"name": n, "passed": p, "details": d})).collect::<Vec<_>>(),
        "passed": ok,
    });
    Ok(if ok { Outcome::Pass(emit(&v)) } else { Outcome::Fail(emit(&v)) })
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Ring { n, mul } => ring(n, mul),
        Command::Mutate { matrix, at, format } => mutate(&matrix, &at, format),
        Command::Unfold { kind, depth, random, length, seed, spec_only, format } => unfold(&kind, depth, random, length, seed, spec_only, format),
        Command::Ar { action } => ar(&action),
        Command::Fold { kind } => fold(&kind),
        Command::Tropical { action } => tropical(&action),
        Command::Tilting { kind, format, objects } => tilting(&kind, format, objects),
        Command::Verify { action: VerifyAction::All { kind, seed, depth } } => verify_all(&kind, seed, depth),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(s)) => {
            print!("{s}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
