//! Command-line front end. Each `cmd_*` returns the text to print and the
//! exit status, so the binary is a thin wrapper.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coeffring::{HalfLaurent, RationalS, TwoVarLaurent};
use crate::corpus;
use crate::cover::{edge_pairing, genus, radical_and_symplectic, LatticeVector};
use crate::error::Error;
use crate::graphmap::{parse_map, BaseChoice, CombinatorialMap};
use crate::operators::{
    face_operator_a, face_relation_r, specialize_to_r, vertex_change_table, vertex_change_unit_a, FaceOperator,
    UnitMonomial,
};
use crate::qtorus::{ChargeSign, QuotientSpec, TorusElement};
use crate::spin::{
    all_lie_untwisted_exists, best_twisted_refinement, count_untwisted_by_enumeration, loop_signs, Obstruction,
};
use crate::waverep::{
    auto_choice, default_operators, solve_wavefunction, verify_annihilation, BasisFile, RepresentationChoice,
    SolveStatus,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Largest genus for which `spin` enumerates all refinements.
pub const ENUMERATION_MAX_GENUS: usize = 6;

const CONVENTION: &str = "[αa+βb]·x^m = q^{-(α·β)/2 - β·m} x^(m+α), framing (-q^{1/2})^(f_a·α + f_b·β)";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "facerel", version, about = "Face relations, spin refinements and wave functions of cubic planar graphs")]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Print the parsed command and timing to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts, genus, pairing matrix, radical and symplectic basis.
    Inspect {
        /// Graph file, or `corpus:<name>`.
        #[arg(long)]
        graph: String,
    },
    /// Face relations and signed face operators.
    Operators {
        #[arg(long)]
        graph: String,
        /// One block per face slot, plus vertex-change units.
        #[arg(long)]
        all_vertices: bool,
        /// Also search vertex-change units for the signed operators.
        #[arg(long)]
        experimental_a_form: bool,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        charge_sign: ChargeSign,
    },
    /// Untwisted and twisted spin report.
    Spin {
        #[arg(long)]
        graph: String,
    },
    /// Order-by-order wave function.
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// `auto`, `standard`, or a JSON basis file.
        #[arg(long, default_value = "auto")]
        basis: String,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        charge_sign: ChargeSign,
        /// Framing override `f_a,..;f_b,..` applied on top of the basis.
        #[arg(long)]
        framing: Option<String>,
        /// Write the JSON report here as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List bundled graphs, or print one.
    Corpus { name: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg),
            code: EXIT_INPUT,
        }
    }

    fn math_error(msg: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg),
            code: EXIT_MATH,
        }
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    let start = std::time::Instant::now();
    let mut outcome = dispatch(config);
    if config.verbose > 0 {
        writeln!(outcome.stderr, "[{:?}] exit {} after {:.3?}", config.command, outcome.code, start.elapsed()).unwrap();
    }
    outcome
}

fn dispatch(config: &RunConfig) -> Outcome {
    match &config.command {
        Command::Inspect { graph } => cmd_inspect(graph, config.format),
        Command::Operators {
            graph,
            all_vertices,
            experimental_a_form,
            charge_sign,
        } => cmd_operators(graph, config.format, *all_vertices, *experimental_a_form, *charge_sign),
        Command::Spin { graph } => cmd_spin(graph, config.format),
        Command::Solve {
            graph,
            max_degree,
            basis,
            charge_sign,
            framing,
            out,
        } => cmd_solve(
            &SolveArgs {
                graph: graph.clone(),
                max_degree: *max_degree,
                basis: basis.clone(),
                charge_sign: *charge_sign,
                framing: framing.clone(),
                out: out.clone(),
            },
            config.format,
        ),
        Command::Corpus { name } => cmd_corpus(name.as_deref(), config.format),
    }
}

/// Reads `path` or `corpus:<name>`.
pub fn load_graph(spec: &str) -> Result<CombinatorialMap, String> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        return match corpus::load(name) {
            Some(r) => r.map_err(|e| format!("corpus graph {}: {}", name, e)),
            None => Err(format!(
                "unknown corpus graph {:?}; available: {}",
                name,
                corpus::names().collect::<Vec<_>>().join(", ")
            )),
        };
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {}: {}", spec, e))?;
    parse_map(&text).map_err(|e| format!("{}: {}", spec, e))
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn vec_json(v: &LatticeVector) -> Value {
    json!(v.coords())
}

fn half_json(h: &HalfLaurent) -> Value {
    json!({ "text": h.to_string(), "s_terms": h.to_json_map() })
}

fn twovar_json(h: &TwoVarLaurent) -> Value {
    json!({ "text": h.to_string(), "a_s_terms": h.to_json_map() })
}

fn rational_json(r: &RationalS) -> Value {
    json!({
        "text": r.to_string(),
        "numerator": r.numerator().to_json_map(),
        "denominator": r.denominator().to_json_map(),
    })
}

fn base_json(map: &CombinatorialMap, b: &BaseChoice) -> Value {
    let _ = map;
    json!({ "vertex": b.vertex, "dart": b.dart })
}

fn base_text(b: &BaseChoice) -> String {
    match b.dart {
        Some(d) => format!("vertex {} via dart {}", b.vertex, d),
        None => format!("vertex {}", b.vertex),
    }
}

fn edge_symbol(i: usize) -> String {
    format!("E{}", i)
}

fn element_text<C: crate::coeffring::Coefficient>(x: &TorusElement<C>) -> String {
    x.display_with(edge_symbol)
}

fn element_json<C: crate::coeffring::Coefficient>(x: &TorusElement<C>, coeff: impl Fn(&C) -> Value) -> Value {
    Value::Array(
        x.terms()
            .map(|(n, c)| json!({ "vector": vec_json(n), "coeff": coeff(c) }))
            .collect(),
    )
}

fn signs_text(signs: &[i8]) -> String {
    if signs.is_empty() {
        return "(none)".into();
    }
    signs.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect::<Vec<_>>().join(" ")
}

pub fn cmd_inspect(graph: &str, format: Format) -> Outcome {
    match load_graph(graph) {
        Ok(map) => inspect_map(&map, format),
        Err(e) => Outcome::input_error(e),
    }
}

pub fn inspect_map(map: &CombinatorialMap, format: Format) -> Outcome {
    let form = edge_pairing(map);
    let sb = radical_and_symplectic(&form);
    let (v, e, f) = (map.num_vertices(), map.num_edges(), map.num_faces());
    let g = genus(map);
    let rank = form.rank();
    match format {
        Format::Json => {
            let faces: Vec<Value> = map
                .faces()
                .iter()
                .map(|face| {
                    json!({
                        "index": face.index,
                        "darts": face.darts.iter().map(|&d| map.dart_id(d)).collect::<Vec<_>>(),
                        "vertices": face.vertices.iter().map(|&x| map.vertex_id(x)).collect::<Vec<_>>(),
                        "edges": face.edges,
                    })
                })
                .collect();
            let edges: Vec<Value> = (0..e)
                .map(|i| {
                    let [a, b] = map.edge_darts(i);
                    json!({ "index": i, "darts": [map.dart_id(a), map.dart_id(b)] })
                })
                .collect();
            let out = json!({
                "counts": { "V": v, "E": e, "F": f },
                "genus": g,
                "rank": rank,
                "edges": edges,
                "faces": faces,
                "pairing": form.matrix(),
                "radical": sb.radical.iter().map(vec_json).collect::<Vec<_>>(),
                "symplectic": {
                    "a": sb.a.iter().map(vec_json).collect::<Vec<_>>(),
                    "b": sb.b.iter().map(vec_json).collect::<Vec<_>>(),
                    "divisors": sb.divisors,
                    "unimodular": sb.is_unimodular(),
                },
            });
            Outcome::ok(render_json(&out))
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "V={} E={} F={} genus={} rank={}", v, e, f, g, rank).unwrap();
            writeln!(s, "edges:").unwrap();
            for i in 0..e {
                let [a, b] = map.edge_darts(i);
                writeln!(s, "  {}: darts {} {}", edge_symbol(i), map.dart_id(a), map.dart_id(b)).unwrap();
            }
            writeln!(s, "faces:").unwrap();
            for face in map.faces() {
                let vs: Vec<String> = face.vertices.iter().map(|&x| map.vertex_id(x).to_string()).collect();
                let es: Vec<String> = face.edges.iter().map(|&x| edge_symbol(x)).collect();
                writeln!(s, "  F{}: vertices {} edges {}", face.index, vs.join(" "), es.join(" ")).unwrap();
            }
            writeln!(s, "pairing:").unwrap();
            for row in form.matrix() {
                let r: Vec<String> = row.iter().map(|x| format!("{:>2}", x)).collect();
                writeln!(s, "  {}", r.join(" ")).unwrap();
            }
            writeln!(s, "radical:").unwrap();
            for r in &sb.radical {
                writeln!(s, "  {}", r).unwrap();
            }
            writeln!(s, "symplectic basis (divisors {:?}):", sb.divisors).unwrap();
            for i in 0..sb.genus() {
                writeln!(s, "  a{} = {}  b{} = {}", i + 1, sb.a[i], i + 1, sb.b[i]).unwrap();
            }
            Outcome::ok(s)
        }
    }
}

struct OperatorBlock {
    r: FaceOperator<HalfLaurent>,
    a: FaceOperator<TwoVarLaurent>,
}

fn unit_text(u: &Option<UnitMonomial>) -> String {
    match u {
        None => "none".into(),
        Some(u) => format!("({}){}", u.coefficient(), if u.vector.is_zero() { "[0]".to_string() } else {
            element_text(&TorusElement::<HalfLaurent>::generator(u.vector.clone())).to_string()
        }),
    }
}

fn unit_json(u: &Option<UnitMonomial>) -> Value {
    match u {
        None => Value::Null,
        Some(u) => json!({
            "sign": u.sign,
            "a_exp": u.a_exp,
            "s_exp": u.s_exp,
            "vector": vec_json(&u.vector),
            "text": unit_text(&Some(u.clone())),
        }),
    }
}

pub fn cmd_operators(graph: &str, format: Format, all_vertices: bool, experimental_a_form: bool, sign: ChargeSign) -> Outcome {
    match load_graph(graph) {
        Ok(map) => operators_map(&map, format, all_vertices, experimental_a_form, sign),
        Err(e) => Outcome::input_error(e),
    }
}

pub fn operators_map(
    map: &CombinatorialMap,
    format: Format,
    all_vertices: bool,
    experimental_a_form: bool,
    sign: ChargeSign,
) -> Outcome {
    match operators_report(map, format, all_vertices, experimental_a_form, sign) {
        Ok(out) => out,
        Err(e) => Outcome::math_error(e),
    }
}

fn operators_report(
    map: &CombinatorialMap,
    format: Format,
    all_vertices: bool,
    experimental_a_form: bool,
    sign: ChargeSign,
) -> Result<Outcome, Error> {
    let twisted = best_twisted_refinement(map)?;
    let sigma = &twisted.refinement;
    let form = edge_pairing(map);
    let quotient = QuotientSpec::standard(map, &form, sign)?;
    let mut blocks = Vec::new();
    let mut warnings = Vec::new();
    for face in map.faces() {
        let bases = if all_vertices {
            map.base_choices(face.index)?
        } else {
            vec![map.default_base(face.index)?]
        };
        for b in bases {
            let r = face_relation_r(map, face.index, b)?;
            let a = face_operator_a(map, face.index, b, sigma)?;
            specialize_to_r(map, &a)?;
            if let Some(w) = &r.warning {
                warnings.push(w.clone());
            }
            blocks.push(OperatorBlock { r, a });
        }
    }
    let mut tables = Vec::new();
    let mut missing = 0;
    if all_vertices {
        for face in map.faces() {
            let rows = vertex_change_table(map, face.index, &form, &quotient)?;
            let mut a_units = Vec::new();
            for row in &rows {
                missing += usize::from(row.unit.is_none());
                if experimental_a_form {
                    a_units.push(vertex_change_unit_a(map, face.index, row.from, row.to, sigma, &form, &quotient)?);
                }
            }
            tables.push((face.index, rows, a_units));
        }
    }
    let code = if missing > 0 { EXIT_MATH } else { EXIT_OK };
    let mut stderr = String::new();
    for w in &warnings {
        writeln!(stderr, "warning: {}", w).unwrap();
    }
    if missing > 0 {
        writeln!(
            stderr,
            "error: {} base-vertex pairs have no vertex-change unit under charge sign {}",
            missing, sign
        )
        .unwrap();
    }
    let stdout = match format {
        Format::Json => {
            let ops: Vec<Value> = blocks
                .iter()
                .map(|b| {
                    json!({
                        "face": b.r.face,
                        "base": base_json(map, &b.r.base),
                        "length": b.r.face_len(),
                        "loops": b.r.loops.iter().map(vec_json).collect::<Vec<_>>(),
                        "signs": b.a.signs,
                        "R": element_json(&b.r.element, half_json),
                        "A": element_json(&b.a.element, twovar_json),
                        "R_text": element_text(&b.r.element),
                        "A_text": element_text(&b.a.element),
                    })
                })
                .collect();
            let mut out = json!({
                "spin_profile": "best twisted (value 1 on every edge and face class)",
                "charge_sign": sign.to_string(),
                "operators": ops,
            });
            if all_vertices {
                let t: Vec<Value> = tables
                    .iter()
                    .map(|(face, rows, a_units)| {
                        let entries: Vec<Value> = rows
                            .iter()
                            .enumerate()
                            .map(|(i, row)| {
                                let mut e = json!({
                                    "from": base_json(map, &row.from),
                                    "to": base_json(map, &row.to),
                                    "unit": unit_json(&row.unit),
                                });
                                if experimental_a_form {
                                    e["unit_a_form"] = unit_json(&a_units[i]);
                                }
                                e
                            })
                            .collect();
                        json!({ "face": face, "entries": entries })
                    })
                    .collect();
                out["vertex_change"] = Value::Array(t);
            }
            render_json(&out)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "spin profile: best twisted; charge sign {}", sign).unwrap();
            for b in &blocks {
                writeln!(s, "face F{} (n={}) base {}", b.r.face, b.r.face_len(), base_text(&b.r.base)).unwrap();
                writeln!(s, "  R = {}", element_text(&b.r.element)).unwrap();
                writeln!(s, "  A = {}", element_text(&b.a.element)).unwrap();
                writeln!(s, "  signs: {}", signs_text(&b.a.signs)).unwrap();
            }
            for (face, rows, a_units) in &tables {
                writeln!(s, "vertex change on F{}:", face).unwrap();
                for (i, row) in rows.iter().enumerate() {
                    write!(s, "  {} -> {}: {}", base_text(&row.from), base_text(&row.to), unit_text(&row.unit)).unwrap();
                    if experimental_a_form {
                        write!(s, "  (A-form: {})", unit_text(&a_units[i])).unwrap();
                    }
                    writeln!(s).unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome { stdout, stderr, code })
}

pub fn cmd_spin(graph: &str, format: Format) -> Outcome {
    match load_graph(graph) {
        Ok(map) => spin_map(&map, format),
        Err(e) => Outcome::input_error(e),
    }
}

pub fn spin_map(map: &CombinatorialMap, format: Format) -> Outcome {
    match spin_report(map, format) {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::math_error(e),
    }
}

fn spin_report(map: &CombinatorialMap, format: Format) -> Result<String, Error> {
    let untwisted = all_lie_untwisted_exists(map);
    let twisted = best_twisted_refinement(map)?;
    let enumeration = if untwisted.genus <= ENUMERATION_MAX_GENUS {
        Some(count_untwisted_by_enumeration(map)?)
    } else {
        None
    };
    let mut face_signs = Vec::new();
    for face in map.faces() {
        let base = map.default_base(face.index)?;
        let fl = crate::cover::loop_vectors(map, face.index, base)?;
        let vals = vec![true; fl.face.len()];
        face_signs.push((face.index, loop_signs(&twisted.refinement, &fl.loops, &vals, face.index)?));
    }
    let obstruction = match untwisted.obstruction {
        None => None,
        Some(Obstruction::Total) => Some("total class".to_string()),
        Some(Obstruction::Face(f)) => Some(format!("face F{}", f)),
    };
    let untwisted_phrase = match (&obstruction, untwisted.unique) {
        (None, true) => "exists (unique)".to_string(),
        (None, false) => "exists".to_string(),
        (Some(o), _) => format!("none (obstruction at {})", o),
    };
    Ok(match format {
        Format::Json => render_json(&json!({
            "genus": untwisted.genus,
            "untwisted": {
                "exists": untwisted.exists,
                "unique": untwisted.unique,
                "face_values": untwisted.face_values.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
                "total_value": u8::from(untwisted.total_value),
                "predicted_total": u8::from(untwisted.predicted_total),
                "obstruction": obstruction,
                "witness": untwisted.witness.as_ref().map(|w| w.basis_values().iter().map(|&b| u8::from(b)).collect::<Vec<_>>()),
                "enumerated_count": enumeration,
            },
            "twisted": {
                "exists": true,
                "edges": twisted.edges,
                "vertices": twisted.vertices,
                "faces": twisted.faces,
                "euler_congruence": twisted.euler_congruence_holds(),
                "minus_face_values": twisted.minus_face_values.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
            },
            "loop_signs": face_signs.iter().map(|(f, s)| json!({ "face": f, "signs": s })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "genus={}", untwisted.genus).unwrap();
            writeln!(s, "untwisted all-Lie: {}; twisted: exists", untwisted_phrase).unwrap();
            let fv: Vec<String> = untwisted.face_values.iter().map(|&b| u8::from(b).to_string()).collect();
            writeln!(
                s,
                "untwisted values: faces [{}], total {} (expected (1+genus) mod 2 = {})",
                fv.join(" "),
                u8::from(untwisted.total_value),
                u8::from(untwisted.predicted_total)
            )
            .unwrap();
            match enumeration {
                Some(c) => writeln!(s, "enumeration: {} of {} refinements are 1 on every edge", c, 1u64 << (2 * untwisted.genus)).unwrap(),
                None => writeln!(s, "enumeration: skipped (genus above {})", ENUMERATION_MAX_GENUS).unwrap(),
            }
            writeln!(
                s,
                "twisted descent: E + 3V = {}, F = {} ({})",
                twisted.edges + 3 * twisted.vertices,
                twisted.faces,
                if twisted.euler_congruence_holds() { "congruent mod 2" } else { "not congruent" }
            )
            .unwrap();
            for (f, signs) in &face_signs {
                writeln!(s, "F{} loop signs: {}", f, signs_text(signs)).unwrap();
            }
            s
        }
    })
}

pub struct SolveArgs {
    pub graph: String,
    pub max_degree: usize,
    pub basis: String,
    pub charge_sign: ChargeSign,
    pub framing: Option<String>,
    pub out: Option<PathBuf>,
}

fn parse_framing(spec: &str, g: usize) -> Result<(Vec<i64>, Vec<i64>), String> {
    let parse = |part: &str| -> Result<Vec<i64>, String> {
        if part.trim().is_empty() {
            return Ok(Vec::new());
        }
        part.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad framing entry {:?}", x)))
            .collect()
    };
    let (fa, fb) = spec
        .split_once(';')
        .ok_or_else(|| format!("framing must look like `f_a,..;f_b,..`, got {:?}", spec))?;
    let (fa, fb) = (parse(fa)?, parse(fb)?);
    if fa.len() != g || fb.len() != g {
        return Err(format!("framing needs {} entries on each side", g));
    }
    Ok((fa, fb))
}

enum ChoiceSource {
    Auto { examined: usize, found: bool },
    Standard,
    File(String),
}

pub fn cmd_solve(args: &SolveArgs, format: Format) -> Outcome {
    match load_graph(&args.graph) {
        Ok(map) => solve_map(&map, args, format),
        Err(e) => Outcome::input_error(e),
    }
}

/// `args.graph` is only used as a label in the report.
pub fn solve_map(map: &CombinatorialMap, args: &SolveArgs, format: Format) -> Outcome {
    let g = genus(map);
    let framing = match args.framing.as_deref().map(|f| parse_framing(f, g)).transpose() {
        Ok(f) => f,
        Err(e) => return Outcome::input_error(e),
    };
    let chosen = match args.basis.as_str() {
        "auto" => auto_choice(map, args.charge_sign).map(|a| {
            (a.choice, ChoiceSource::Auto {
                examined: a.examined,
                found: a.found,
            })
        }),
        "standard" => RepresentationChoice::standard(map, args.charge_sign).map(|c| (c, ChoiceSource::Standard)),
        path => {
            let file: BasisFile = match std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {}", path, e))
                .and_then(|t| serde_json::from_str(&t).map_err(|e| format!("{}: {}", path, e)))
            {
                Ok(f) => f,
                Err(e) => return Outcome::input_error(e),
            };
            match RepresentationChoice::from_file(map, &file, args.charge_sign) {
                Ok(c) => Ok((c, ChoiceSource::File(path.to_string()))),
                Err(e) => return Outcome::input_error(e),
            }
        }
    };
    let (mut choice, source) = match chosen {
        Ok(c) => c,
        Err(e) => return Outcome::math_error(e),
    };
    if let Some((fa, fb)) = framing {
        choice = choice.with_framing(fa, fb);
    }
    match solve_report(map, &choice, &source, args, format) {
        Ok(out) => out,
        Err(e) => Outcome::math_error(e),
    }
}

fn solve_report(
    map: &CombinatorialMap,
    choice: &RepresentationChoice,
    source: &ChoiceSource,
    args: &SolveArgs,
    format: Format,
) -> Result<Outcome, Error> {
    let ops = default_operators(map)?;
    let wf = solve_wavefunction(&ops, choice, args.max_degree)?;
    let solved_through = match &wf.status {
        SolveStatus::Inconsistent { degree, .. } => degree.checked_sub(1),
        _ => Some(args.max_degree),
    };
    let residual = match solved_through {
        Some(d) => Some(verify_annihilation(&ops, choice, &wf, d)?),
        None => None,
    };
    let inconsistent = matches!(wf.status, SolveStatus::Inconsistent { .. });
    let nonzero_residual = residual.as_ref().is_some_and(|r| !r.is_zero());
    let code = if inconsistent || nonzero_residual { EXIT_MATH } else { EXIT_OK };

    let source_json = match source {
        ChoiceSource::Auto { examined, found } => json!({ "kind": "auto", "examined": examined, "found": found }),
        ChoiceSource::Standard => json!({ "kind": "standard" }),
        ChoiceSource::File(p) => json!({ "kind": "file", "path": p }),
    };
    let status_json = match &wf.status {
        SolveStatus::Unique => json!({ "kind": "unique" }),
        SolveStatus::Underdetermined { degree, kernel_dim } => {
            json!({ "kind": "underdetermined", "degree": degree, "kernel_dim": kernel_dim })
        }
        SolveStatus::Inconsistent { degree, equations } => {
            json!({ "kind": "inconsistent", "degree": degree, "equations": equations })
        }
    };
    let mut reduced_ops = Vec::new();
    for op in &ops {
        let terms = choice.reduced_terms(&op.element)?;
        reduced_ops.push((op, terms));
    }
    let json_report = json!({
        "graph": args.graph,
        "genus": wf.genus,
        "max_degree": wf.max_degree,
        "convention": CONVENTION,
        "choice": {
            "source": source_json,
            "a": choice.a.iter().map(vec_json).collect::<Vec<_>>(),
            "b": choice.b.iter().map(vec_json).collect::<Vec<_>>(),
            "swaps": choice.swaps,
            "framing_a": choice.framing_a,
            "framing_b": choice.framing_b,
            "charge_sign": choice.charge_sign.to_string(),
        },
        "operators": reduced_ops.iter().map(|(op, terms)| json!({
            "face": op.face,
            "base": base_json(map, &op.base),
            "R": element_json(&op.element, half_json),
            "reduced": terms.iter().map(|t| json!({
                "coeff": half_json(&t.coeff),
                "alpha": t.alpha,
                "beta": t.beta,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "status": status_json,
        "degrees": wf.degrees.iter().map(|d| json!({
            "degree": d.degree,
            "unknowns": d.unknowns,
            "equations": d.equations,
            "rank": d.rank,
            "kernel_dim": d.kernel_dim,
            "consistent": d.consistent,
        })).collect::<Vec<_>>(),
        "coefficients": wf.coefficients.iter().map(|(m, c)| json!({
            "exponent": m,
            "value": rational_json(c),
        })).collect::<Vec<_>>(),
        "denominators_clear": wf.denominators_clear,
        "residual": residual.as_ref().map(|r| json!({
            "degree": r.degree,
            "checked": r.checked,
            "zero": r.is_zero(),
            "nonzero": r.residuals.iter().map(|x| json!({
                "face": x.face,
                "output": x.output,
                "degree": x.degree,
                "value": rational_json(&x.value),
            })).collect::<Vec<_>>(),
        })),
    });
    let json_text = render_json(&json_report);
    let mut stderr = String::new();
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, &json_text) {
            return Ok(Outcome::input_error(format!("cannot write {}: {}", path.display(), e)));
        }
    }
    if let SolveStatus::Inconsistent { degree, .. } = &wf.status {
        writeln!(stderr, "inconsistent system at degree {} (charge sign {})", degree, choice.charge_sign).unwrap();
    }
    let stdout = match format {
        Format::Json => json_text,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "# convention: {}", CONVENTION).unwrap();
            let src = match source {
                ChoiceSource::Auto { examined, found } => {
                    format!("auto ({} candidates examined, {})", examined, if *found { "found" } else { "fallback to standard" })
                }
                ChoiceSource::Standard => "standard".into(),
                ChoiceSource::File(p) => format!("file {}", p),
            };
            writeln!(s, "basis: {}; charge sign {}; framing a={:?} b={:?}; swaps {:?}", src, choice.charge_sign, choice.framing_a, choice.framing_b, choice.swaps).unwrap();
            for i in 0..choice.genus() {
                writeln!(s, "  a{} = {}  b{} = {}", i + 1, choice.a[i], i + 1, choice.b[i]).unwrap();
            }
            let status = match &wf.status {
                SolveStatus::Unique => "unique".to_string(),
                SolveStatus::Underdetermined { degree, kernel_dim } => {
                    format!("underdetermined at degree {} (kernel dimension {})", degree, kernel_dim)
                }
                SolveStatus::Inconsistent { degree, equations } => {
                    format!("inconsistent at degree {}: {}", degree, equations.join("; "))
                }
            };
            writeln!(s, "status: {}", status).unwrap();
            for (m, c) in &wf.coefficients {
                writeln!(s, "  c{:?} = {}", m, c).unwrap();
            }
            writeln!(s, "denominators clear: {}", wf.denominators_clear).unwrap();
            match &residual {
                Some(r) if r.is_zero() => writeln!(s, "residual: zero through degree {} ({} outputs checked)", r.degree, r.checked).unwrap(),
                Some(r) => writeln!(s, "residual: {} nonzero outputs through degree {}", r.residuals.len(), r.degree).unwrap(),
                None => writeln!(s, "residual: not checked").unwrap(),
            }
            s
        }
    };
    Ok(Outcome { stdout, stderr, code })
}

pub fn cmd_corpus(name: Option<&str>, format: Format) -> Outcome {
    match name {
        Some(n) => match corpus::entry(n) {
            Some(e) => match format {
                Format::Text => Outcome::ok(e.text.to_string()),
                Format::Json => Outcome::ok(render_json(&json!({ "name": e.name, "description": e.description, "text": e.text }))),
            },
            None => Outcome::input_error(format!("unknown corpus graph {:?}", n)),
        },
        None => match format {
            Format::Text => {
                let mut s = String::new();
                for e in corpus::CORPUS {
                    writeln!(s, "{:<12} {}", e.name, e.description).unwrap();
                }
                Outcome::ok(s)
            }
            Format::Json => Outcome::ok(render_json(&Value::Array(
                corpus::CORPUS
                    .iter()
                    .map(|e| json!({ "name": e.name, "description": e.description }))
                    .collect(),
            ))),
        },
    }
}
