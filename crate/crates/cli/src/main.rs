mod input;
mod report;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loopforge::constructions::cocycle::{is_2cocycle, odd_invertible_conditions, odd_invertible_loop, CocycleMap};
use loopforge::constructions::lambda::{lambda_example, ChiReading, LambdaInput};
use loopforge::constructions::matched::{matched_pair_loop, ActionPair};
use loopforge::constructions::products::direct_product_loops;
use loopforge::diagnostics::{Check, Diagnostics};
use loopforge::factorization::{
    exact_factorization, verify_moufang_decomposition, DecompositionMaps, DecompositionVariant,
};
use loopforge::hopf::{
    group_algebra, linearize_matched_pair_capped, tensor_product_capped, verify_hopf_quasigroup, HopfQuasigroupData,
    HOPF_DIM_CAP,
};
use loopforge::inverse::{aut_power_order, classify, is_ci, is_wip, m_inverse_witness, DEFAULT_WINDOW};
use loopforge::io::{emit_loop, parse_action_pair, parse_action_table, LoopSpec, Manifest, MANIFEST_KIND};
use loopforge::perm::Permutation;
use loopforge::quasigroup::{Loop, Pique};
use loopforge::search::{
    count_cocycles, for_each_normalized_loop, is_central_pique, sample_loops, search_cocycles, search_matched_actions,
    CocycleConstraint,
};
use loopforge::{Error, Result};
use serde_json::{json, Value};

use input::{load_loop, read_text};
use report::Report;

/// Finite m-inverse property loops, their products, and their Hopf
/// quasigroup linearizations.
///
/// Loop arguments are Cayley files, `-` for stdin, or preset names
/// (z1..z8, klein, s3, d4, q8, odd-loop).
#[derive(Parser, Debug)]
#[command(name = "loopforge", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Global {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on candidates examined, results materialized, or Hopf dimension.
    #[arg(long, global = true, env = "LOOPFORGE_BUDGET")]
    budget: Option<u64>,
    /// Use the literal printed forms of ambiguous conditions.
    #[arg(long, global = true)]
    strict_paper_conditions: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Inverse properties of a loop over a window of m.
    Classify {
        /// Inclusive range `a..b`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: Option<Window>,
        #[arg(value_name = "LOOP")]
        loop_: String,
    },
    /// Build a product and emit it as a bundle manifest (or Cayley table).
    #[command(subcommand)]
    Construct(Construct),
    /// Check a property and report each named condition.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Factor a loop through two subloops as a matched pair.
    Factorize(FactorizeArgs),
    /// Hopf quasigroups over the rationals.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Exhaustive desk-scale searches.
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Args, Debug, Clone, Copy)]
struct MArg {
    #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
    m: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Manifest,
    Cayley,
}

#[derive(Args, Debug)]
struct MatchedInputs {
    r: String,
    s: String,
    /// Action table of φ, rows indexed by S.
    phi: String,
    /// Action table of ψ, rows indexed by S.
    psi: String,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// `A × B` as a matched pair with trivial actions, at the least valid m.
    Direct {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Emit::Manifest)]
        emit: Emit,
    },
    /// `R ⋈ S` from action tables.
    MatchedPair {
        #[command(flatten)]
        m: MArg,
        #[command(flatten)]
        inputs: MatchedInputs,
        #[arg(long, value_enum, default_value_t = Emit::Manifest)]
        emit: Emit,
    },
    /// The Λ-example `(G ⋈ H) ×_Λ (V × W)` with its factorization.
    LambdaExample {
        #[arg(long, default_value = "s3-z2z2")]
        preset: String,
        #[command(flatten)]
        m: MArg,
        #[arg(long, value_enum, default_value_t = Emit::Manifest)]
        emit: Emit,
    },
    /// `G ×_φ V` with `J(x,v) = (x⁻¹, −v)`; the cocycle file is a
    /// `|G| × |G|` table of V-indices.
    OddInvertible {
        g: String,
        v: String,
        #[arg(long)]
        cocycle: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// The defining identity `J^m(xy) J^{m+1}(x) = J^m(y)`.
    MInverse {
        #[command(flatten)]
        m: MArg,
        #[arg(value_name = "LOOP")]
        loop_: String,
    },
    /// The matched-pair hypotheses and the m-inverse scan of `R ⋈ S`.
    MatchedPair {
        #[command(flatten)]
        m: MArg,
        #[command(flatten)]
        inputs: MatchedInputs,
    },
    /// The m-inverse Hopf quasigroup axioms of a JSON structure file.
    Hopf {
        #[command(flatten)]
        m: MArg,
        file: String,
    },
    /// The quasi-0, quasi-I, quasi-II constraints of a cocycle table.
    Cocycle { g: String, v: String, cocycle: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Semidirect,
    Matched,
}

#[derive(Args, Debug)]
struct FactorizeArgs {
    #[command(flatten)]
    m: MArg,
    #[arg(value_name = "LOOP")]
    q: String,
    /// Elements of R in Q, comma separated, in the order of R's indices.
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<usize>,
    /// Also check the Moufang-type decomposition maps induced by `Θ`.
    #[arg(long, value_enum)]
    moufang: Option<Variant>,
}

#[derive(Subcommand, Debug)]
enum HopfCmd {
    /// Linearize a matched-pair manifest and compare `k(R ⋈ S)` with `kR ⋈ kS`.
    Lift {
        /// Defaults to the manifest's m.
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        /// Manifest file, or `-` for stdin.
        #[arg(default_value = "-")]
        manifest: String,
    },
    /// The loop algebra `kQ` with `S = J`.
    GroupAlgebra {
        #[command(flatten)]
        m: MArg,
        #[arg(value_name = "LOOP")]
        loop_: String,
        /// Write the structure constants as JSON.
        #[arg(long)]
        output: Option<String>,
    },
    /// `H₁ ⊗ H₂` of two JSON structure files.
    Tensor {
        #[command(flatten)]
        m: MArg,
        a: String,
        b: String,
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Predicate {
    All,
    Group,
    MInverse,
    TwoSided,
    Wip,
    Ci,
    Central,
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Maps `φ: G × G → V` satisfying the selected constraints.
    Cocycles {
        g: String,
        v: String,
        #[arg(long = "constraint", value_parser = parse_constraint)]
        constraints: Vec<CocycleConstraint>,
    },
    /// Action pairs making `R ⋈ S` an m-inverse loop.
    Actions {
        #[command(flatten)]
        m: MArg,
        r: String,
        s: String,
    },
    /// Normalized loops of a given order, exhaustively or by sampling.
    Loops {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Predicate::All)]
        predicate: Predicate,
        #[command(flatten)]
        m: MArg,
        /// Draw this many random loops instead of enumerating.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Debug)]
struct Window(i64, i64);

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, found {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad window end {b:?}"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok(Window(a, b))
}

fn parse_constraint(s: &str) -> std::result::Result<CocycleConstraint, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Ctx {
    budget: Option<u64>,
    strict: bool,
    emit_json: bool,
}

impl Ctx {
    fn cap(&self, default: u64) -> u64 {
        self.budget.unwrap_or(default)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() && wants_json() => {
            Report::usage_error(e.render().to_string()).emit(true);
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let ctx = Ctx {
        budget: cli.global.budget,
        strict: cli.global.strict_paper_conditions,
        emit_json: cli.global.format == Format::Json,
    };
    let (name, outcome) = run(&cli.verb, &ctx);
    let report = outcome.unwrap_or_else(|e| Report::from_error(name, e));
    report.emit(ctx.emit_json);
    ExitCode::from(report.exit_code)
}

/// Whether `--format json` appears in raw arguments that failed to parse.
fn wants_json() -> bool {
    let args: Vec<String> = std::env::args().collect();
    args.iter().any(|a| a == "--format=json") || args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
}

fn run(verb: &Verb, ctx: &Ctx) -> (&'static str, Result<Report>) {
    match verb {
        Verb::Classify { window, loop_ } => ("classify", cmd_classify(loop_, window.as_ref())),
        Verb::Construct(c) => match c {
            Construct::Direct { a, b, emit } => ("construct direct", cmd_construct_direct(a, b, *emit)),
            Construct::MatchedPair { m, inputs, emit } => {
                ("construct matched-pair", cmd_construct_matched(inputs, m.m, *emit))
            }
            Construct::LambdaExample { preset, m, emit } => {
                ("construct lambda-example", cmd_construct_lambda(preset, m.m, *emit, ctx))
            }
            Construct::OddInvertible { g, v, cocycle } => {
                ("construct odd-invertible", cmd_construct_odd(g, v, cocycle))
            }
        },
        Verb::Verify(v) => match v {
            VerifyCmd::MInverse { m, loop_ } => ("verify m-inverse", cmd_verify_m_inverse(loop_, m.m)),
            VerifyCmd::MatchedPair { m, inputs } => ("verify matched-pair", cmd_verify_matched(inputs, m.m, ctx)),
            VerifyCmd::Hopf { m, file } => ("verify hopf", cmd_verify_hopf(file, m.m)),
            VerifyCmd::Cocycle { g, v, cocycle } => ("verify cocycle", cmd_verify_cocycle(g, v, cocycle)),
        },
        Verb::Factorize(args) => ("factorize", cmd_factorize(args)),
        Verb::Hopf(h) => match h {
            HopfCmd::Lift { m, manifest } => ("hopf lift", cmd_hopf_lift(manifest, *m, ctx)),
            HopfCmd::GroupAlgebra { m, loop_, output } => {
                ("hopf group-algebra", cmd_hopf_group_algebra(loop_, m.m, output.as_deref(), ctx))
            }
            HopfCmd::Tensor { m, a, b, output } => ("hopf tensor", cmd_hopf_tensor(a, b, m.m, output.as_deref(), ctx)),
        },
        Verb::Search(s) => match s {
            SearchCmd::Cocycles { g, v, constraints } => {
                ("search cocycles", cmd_search_cocycles(g, v, constraints, ctx))
            }
            SearchCmd::Actions { m, r, s } => ("search actions", cmd_search_actions(r, s, m.m, ctx)),
            SearchCmd::Loops { order, predicate, m, sample, seed } => {
                ("search loops", cmd_search_loops(*order, *predicate, m.m, *sample, *seed, ctx))
            }
        },
    }
}

fn cmd_classify(arg: &str, window: Option<&Window>) -> Result<Report> {
    let (l, j) = load_loop(arg)?;
    let range = window.map_or(DEFAULT_WINDOW, |w| w.0..=w.1);
    let rep = classify(&l, &j, range.clone())?;
    let mut checks = Diagnostics::new();
    for m in range {
        checks.record(&format!("m-inv[m={m}]"), m_inverse_witness(&l, &j, m).map(|w| w.to_vec()));
    }
    let ok = !rep.valid_m.is_empty();
    Ok(Report::new("classify", ok, json!(rep), checks))
}

fn loop_spec(l: &Loop, j: &Permutation) -> LoopSpec {
    LoopSpec::new(l, j)
}

fn emit_artifact(manifest: &Manifest, product: &Loop, j: &Permutation, emit: Emit) -> String {
    match emit {
        Emit::Manifest => serde_json::to_string_pretty(manifest).expect("manifests serialize") + "\n",
        Emit::Cayley => emit_loop(product, j),
    }
}

fn construct_report(
    command: &str,
    manifest: Manifest,
    product: &Loop,
    j: &Permutation,
    checks: Diagnostics,
    emit: Emit,
) -> Report {
    let artifact = emit_artifact(&manifest, product, j, emit);
    let result = json!({ "order": product.order(), "m": manifest.m, "h": manifest.h, "manifest": manifest });
    Report::new(command, checks.all_ok(), result, checks).with_artifact(artifact)
}

fn cmd_construct_direct(a: &str, b: &str, emit: Emit) -> Result<Report> {
    let (l1, j1) = load_loop(a)?;
    let (l2, j2) = load_loop(b)?;
    let (product, dp) = direct_product_loops(&l1, &j1, &l2, &j2)?;
    let m = dp.valid_m.ok_or_else(|| Error::Congruence {
        m: 0,
        detail: format!(
            "no m satisfies both factors (residues {:?} mod {} and {:?} mod {})",
            dp.left.residues, dp.left.h, dp.right.residues, dp.right.h
        ),
    })?;
    let mut checks = Diagnostics::new();
    checks.record("m-inv", m_inverse_witness(&product, &dp.j, m).map(|w| w.to_vec()));
    let manifest = Manifest {
        kind: MANIFEST_KIND.into(),
        name: Some(format!("{a} x {b}")),
        m,
        h: Some(dp.modulus),
        r: loop_spec(&l1, &j1),
        s: loop_spec(&l2, &j2),
        actions: ActionPair::trivial(l1.order(), l2.order()),
        product: Some(loop_spec(&product, &dp.j)),
        theta: None,
    };
    Ok(construct_report("construct direct", manifest, &product, &dp.j, checks, emit))
}

fn load_matched(inputs: &MatchedInputs) -> Result<(Loop, Permutation, Loop, Permutation, ActionPair)> {
    let (r, jr) = load_loop(&inputs.r)?;
    let (s, js) = load_loop(&inputs.s)?;
    let a = parse_action_pair(&read_text(&inputs.phi)?, &read_text(&inputs.psi)?, r.order(), s.order())?;
    Ok((r, jr, s, js, a))
}

fn cmd_construct_matched(inputs: &MatchedInputs, m: i64, emit: Emit) -> Result<Report> {
    let (r, jr, s, js, a) = load_matched(inputs)?;
    let p = matched_pair_loop(&r, &jr, &s, &js, &a, m)?;
    let manifest = Manifest {
        kind: MANIFEST_KIND.into(),
        name: None,
        m,
        h: Some(aut_power_order(&p.loop_, &p.j)),
        r: loop_spec(&r, &jr),
        s: loop_spec(&s, &js),
        actions: a,
        product: Some(loop_spec(&p.loop_, &p.j)),
        theta: None,
    };
    Ok(construct_report("construct matched-pair", manifest, &p.loop_, &p.j, p.diagnostics, emit))
}

fn cmd_construct_lambda(preset: &str, m: i64, emit: Emit, ctx: &Ctx) -> Result<Report> {
    let input = match preset {
        "s3-z2z2" => LambdaInput::s3_z2z2(),
        other => {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("unknown Λ-example preset {other:?} (available: s3-z2z2)"),
            )))
        }
    };
    let reading = if ctx.strict { ChiReading::Literal } else { ChiReading::Intended };
    let ex = lambda_example(&input, m, reading)?;
    let mut checks = ex.diagnostics.clone();
    checks.extend(ex.matched.diagnostics.clone());
    let manifest = Manifest {
        kind: MANIFEST_KIND.into(),
        name: Some(preset.into()),
        m,
        h: Some(aut_power_order(&ex.q, &ex.j_q)),
        r: loop_spec(&ex.r, &ex.j_r),
        s: loop_spec(&ex.s, &ex.j_s),
        actions: ex.actions.clone(),
        product: Some(loop_spec(&ex.q, &ex.j_q)),
        theta: Some(ex.theta.image().to_vec()),
    };
    Ok(construct_report("construct lambda-example", manifest, &ex.q, &ex.j_q, checks, emit))
}

fn load_cocycle(g: &Loop, v: &Loop, path: &str) -> Result<CocycleMap> {
    let (rows, cols, values) = parse_action_table(&read_text(path)?)?;
    if (rows, cols) != (g.order(), g.order()) {
        return Err(Error::SizeMismatch(format!("cocycle table must be {0}×{0}, found {rows}×{cols}", g.order())));
    }
    CocycleMap::new(g.order(), v.order(), values)
}

fn cmd_construct_odd(g: &str, v: &str, cocycle: &str) -> Result<Report> {
    let (g, _) = load_loop(g)?;
    let (v, _) = load_loop(v)?;
    let c = load_cocycle(&g, &v, cocycle)?;
    let (l, j) = odd_invertible_loop(&g, &v, &c)?;
    let checks = odd_invertible_conditions(&g, &v, &c);
    let result = json!({ "order": l.order(), "h": aut_power_order(&l, &j), "group": l.is_group() });
    Ok(Report::new("construct odd-invertible", true, result, checks).with_artifact(emit_loop(&l, &j)))
}

fn cmd_verify_m_inverse(arg: &str, m: i64) -> Result<Report> {
    let (l, j) = load_loop(arg)?;
    let mut checks = Diagnostics::new();
    let ok = checks.record("m-inv", m_inverse_witness(&l, &j, m).map(|w| w.to_vec()));
    Ok(Report::new("verify m-inverse", ok, json!({ "order": l.order(), "m": m }), checks))
}

fn cmd_verify_matched(inputs: &MatchedInputs, m: i64, ctx: &Ctx) -> Result<Report> {
    let (r, jr, s, js, a) = load_matched(inputs)?;
    let p = matched_pair_loop(&r, &jr, &s, &js, &a, m)?;
    let displayed_ok = p.diagnostics.get("m-inverse-cond-matched").is_none_or(|c| c.ok);
    let ok = p.diagnostics.get("m-inv").is_some_and(|c| c.ok) && (!ctx.strict || displayed_ok);
    let result = json!({ "order": p.loop_.order(), "m": m, "h": aut_power_order(&p.loop_, &p.j) });
    Ok(Report::new("verify matched-pair", ok, result, p.diagnostics))
}

fn load_hopf(path: &str) -> Result<HopfQuasigroupData> {
    let h: HopfQuasigroupData = serde_json::from_str(&read_text(path)?)?;
    Ok(h)
}

fn cmd_verify_hopf(path: &str, m: i64) -> Result<Report> {
    let h = load_hopf(path)?;
    let rep = verify_hopf_quasigroup(&h, m)?;
    Ok(Report::new("verify hopf", rep.holds, json!({ "dim": h.dim, "m": m }), rep.diagnostics))
}

fn cmd_verify_cocycle(g: &str, v: &str, cocycle: &str) -> Result<Report> {
    let (g, _) = load_loop(g)?;
    let (v, _) = load_loop(v)?;
    let c = load_cocycle(&g, &v, cocycle)?;
    let checks = odd_invertible_conditions(&g, &v, &c);
    let result = json!({ "two_cocycle": is_2cocycle(&g, &v, &c)? });
    Ok(Report::new("verify cocycle", checks.all_ok(), result, checks))
}

fn cmd_factorize(args: &FactorizeArgs) -> Result<Report> {
    let (q, j) = load_loop(&args.q)?;
    let w = exact_factorization(&q, &j, &args.r, &args.s, args.m.m)?;
    let mut checks = w.laws.clone();
    let mut result = json!({ "m": args.m.m, "factorization": w });
    if let Some(v) = args.moufang {
        let variant = match v {
            Variant::Semidirect => DecompositionVariant::Semidirect,
            Variant::Matched => DecompositionVariant::Matched,
        };
        let maps = DecompositionMaps::from_theta(&w.theta, &w.r.loop_, &w.s.loop_);
        let d = verify_moufang_decomposition(&q, &w.r.loop_, &w.s.loop_, &maps, variant)?;
        result["decomposition"] = json!(d);
        checks.extend(d.diagnostics);
    }
    Ok(Report::new("factorize", checks.all_ok(), result, checks))
}

/// Accepts a bare manifest or a JSON report whose result carries one.
fn read_manifest(path: &str) -> Result<Manifest> {
    let v: Value = serde_json::from_str(&read_text(path)?)?;
    let inner = match v.get("result").and_then(|r| r.get("manifest")) {
        Some(m) => m.clone(),
        None => v,
    };
    Manifest::from_json(&inner.to_string())
}

fn cmd_hopf_lift(path: &str, m: Option<i64>, ctx: &Ctx) -> Result<Report> {
    let manifest = read_manifest(path)?;
    let m = m.unwrap_or(manifest.m);
    let (r, jr) = manifest.r.to_loop()?;
    let (s, js) = manifest.s.to_loop()?;
    let cap = ctx.cap(HOPF_DIM_CAP as u64) as usize;
    let lifted = linearize_matched_pair_capped(&r, &jr, &s, &js, &manifest.actions, m, cap)?;
    let mut checks = Diagnostics::new();
    checks.push(Check::pass("structure-constants-match"));
    if let Some(spec) = &manifest.product {
        checks.push(product_agreement(spec, manifest.theta.as_deref(), &r, &s, &lifted.data)?);
    }
    checks.extend(lifted.diagnostics);
    let ok = checks.all_ok();
    Ok(Report::new("hopf lift", ok, json!({ "dim": lifted.data.dim, "m": m }), checks))
}

/// `kQ` of the manifest's product, relabelled through `Θ`, against the lift.
fn product_agreement(
    spec: &LoopSpec,
    theta: Option<&[usize]>,
    r: &Loop,
    s: &Loop,
    lifted: &HopfQuasigroupData,
) -> Result<Check> {
    let (q, jq) = spec.to_loop()?;
    if q.order() != r.order() * s.order() {
        return Err(Error::SizeMismatch("product order is not |R|·|S|".into()));
    }
    let theta = match theta {
        Some(t) => Permutation::new(t.to_vec())?,
        None => Permutation::identity(q.order()),
    };
    let inv = theta.inverse();
    let relabelled = q.table().relabel(&inv);
    let lq = Loop::with_identity(relabelled, inv.apply(q.identity()))?;
    let jl = Permutation::new((0..q.order()).map(|x| inv.apply(jq.apply(theta.apply(x)))).collect())?;
    let kq = group_algebra(&lq, &jl)?;
    Ok(match loopforge::hopf::matched::first_difference(&kq, lifted) {
        None => Check::pass("manifest-product-matches"),
        Some(what) => Check { name: "manifest-product-matches".into(), ok: false, witness: None, note: Some(what) },
    })
}

fn cmd_hopf_group_algebra(arg: &str, m: i64, output: Option<&str>, ctx: &Ctx) -> Result<Report> {
    let (l, j) = load_loop(arg)?;
    let cap = ctx.cap(HOPF_DIM_CAP as u64) as usize;
    if l.order() > cap {
        return Err(Error::ResourceCap { what: "Hopf dimension", reached: l.order(), cap });
    }
    let h = group_algebra(&l, &j)?;
    let rep = verify_hopf_quasigroup(&h, m)?;
    write_hopf(&h, output)?;
    let result = json!({ "dim": h.dim, "m": m, "set_level_m_inverse": m_inverse_witness(&l, &j, m).is_none() });
    Ok(Report::new("hopf group-algebra", rep.holds, result, rep.diagnostics))
}

fn write_hopf(h: &HopfQuasigroupData, output: Option<&str>) -> Result<()> {
    if let Some(path) = output {
        fs::write(path, serde_json::to_string_pretty(h)? + "\n")?;
    }
    Ok(())
}

fn cmd_hopf_tensor(a: &str, b: &str, m: i64, output: Option<&str>, ctx: &Ctx) -> Result<Report> {
    let (h1, h2) = (load_hopf(a)?, load_hopf(b)?);
    let cap = ctx.cap(HOPF_DIM_CAP as u64) as usize;
    let t = tensor_product_capped(&h1, &h2, cap)?;
    let rep = verify_hopf_quasigroup(&t, m)?;
    write_hopf(&t, output)?;
    Ok(Report::new("hopf tensor", rep.holds, json!({ "dim": t.dim, "m": m }), rep.diagnostics))
}

fn cmd_search_cocycles(g: &str, v: &str, constraints: &[CocycleConstraint], ctx: &Ctx) -> Result<Report> {
    let (g, _) = load_loop(g)?;
    let (v, _) = load_loop(v)?;
    let cap = ctx.cap(10_000) as usize;
    let total = count_cocycles(&g, &v, constraints)?;
    let out = search_cocycles(&g, &v, constraints, cap)?;
    let names: Vec<&str> = constraints.iter().map(|c| c.name()).collect();
    let maps: Vec<&Vec<usize>> = out.results.iter().map(|c| &c.values).collect();
    let result = json!({
        "constraints": names,
        "admissible": total.to_string(),
        "materialized": out.results.len(),
        "complete": out.complete,
        "maps": maps,
    });
    Ok(Report::new("search cocycles", true, result, Diagnostics::new()))
}

fn cmd_search_actions(r: &str, s: &str, m: i64, ctx: &Ctx) -> Result<Report> {
    let (r, jr) = load_loop(r)?;
    let (s, js) = load_loop(s)?;
    let out = search_matched_actions(&r, &jr, &s, &js, m, ctx.cap(10_000_000) as u128)?;
    let trivial_only = out.outcome.results.iter().all(ActionPair::is_trivial);
    let result = json!({
        "m": m,
        "examined": out.outcome.examined.to_string(),
        "found": out.outcome.results.len(),
        "complete": out.outcome.complete,
        "trivial_only": trivial_only,
        "disagreements": out.disagreements.len(),
        "pairs": out.outcome.results,
    });
    let mut checks = Diagnostics::new();
    checks.push(Check {
        name: "m-inverse-cond-agreement".into(),
        ok: out.disagreements.is_empty(),
        witness: None,
        note: None,
    });
    Ok(Report::new("search actions", true, result, checks))
}

fn loop_matches(l: &Loop, predicate: Predicate, m: i64) -> bool {
    let j = || loopforge::inverse::right_inverse_permutation(l);
    match predicate {
        Predicate::All => true,
        Predicate::Group => l.is_group(),
        Predicate::MInverse => m_inverse_witness(l, &j(), m).is_none(),
        Predicate::TwoSided => l.has_two_sided_inverses(),
        Predicate::Wip => is_wip(l, &j()),
        Predicate::Ci => is_ci(l, &j()),
        Predicate::Central => {
            Pique::new(l.table().clone(), l.identity()).map(|p| is_central_pique(&p)).unwrap_or(false)
        }
    }
}

fn cmd_search_loops(
    order: usize,
    predicate: Predicate,
    m: i64,
    sample: Option<usize>,
    seed: u64,
    ctx: &Ctx,
) -> Result<Report> {
    let (mut visited, mut matching) = (0u64, 0u64);
    let mut complete = true;
    let mode = match sample {
        Some(k) => {
            let k = k.min(ctx.cap(u64::MAX) as usize);
            for l in sample_loops(order, k, seed)? {
                visited += 1;
                matching += loop_matches(&l, predicate, m) as u64;
            }
            "sample"
        }
        None => {
            let cap = ctx.budget;
            for_each_normalized_loop(order, |t| {
                if cap.is_some_and(|c| visited >= c) {
                    complete = false;
                    return false;
                }
                visited += 1;
                let l = Loop::with_identity(t.clone(), 0).expect("normalized Latin squares are loops");
                matching += loop_matches(&l, predicate, m) as u64;
                true
            })?;
            "exhaustive"
        }
    };
    let pred = predicate.to_possible_value().expect("no skipped variants").get_name().to_string();
    let result = json!({
        "order": order,
        "mode": mode,
        "predicate": pred,
        "loops": visited,
        "matching": matching,
        "complete": complete,
    });
    Ok(Report::new("search loops", true, result, Diagnostics::new()))
}
