//! Command-line front end for the bordered crate.
//!
//! Exit codes: 0 when a result or verdict was printed, 1 when a validation
//! failed, 2 on usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bordered::contact::{self, ContactClass, SvParam, KNOT_HORIZON};
use bordered::curves::{self, Curve};
use bordered::f2core::ChainComplex;
use bordered::farey::{self, DecoratedPath};
use bordered::models::{self, Model, KNOTS};
use bordered::pairing::{box_a_dd, box_ad, box_graph_d, truncate};
use bordered::structures::{self, GraphTypeA, Structure, TypeA, TypeD};
use bordered::torus_algebra::{Basis, Idem};
use bordered::{verify, Error, Slope};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "bordered",
    version,
    about = "Bordered Floer computations over the torus algebra"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure file or a bundled model.
    Check { target: String },
    /// Print a bundled model (or re-print a file) in the structure text format.
    Show { target: String },
    /// Pair a type-A module with a type-D structure.
    Pair {
        a: String,
        d: String,
        /// Also compute the homology rank.
        #[arg(long)]
        homology: bool,
        /// List generators and differentials.
        #[arg(long)]
        show: bool,
    },
    /// Pair a type-A module with the AZ bimodule.
    DdPair {
        a: String,
        /// Cancel idempotent arrows.
        #[arg(long)]
        reduce: bool,
    },
    /// Farey graph paths and decorated-path classification.
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Contact classes, bypasses and gluings.
    #[command(subcommand)]
    Contact(ContactCmd),
    /// Immersed-curve invariants.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Positive contact surgery verdicts.
    Surgery(SurgeryArgs),
    /// Draw a curve as SVG.
    Render {
        curve: String,
        #[arg(long)]
        out: PathBuf,
        /// Draw the lift to the cylinder instead.
        #[arg(long)]
        lifted: bool,
    },
    /// Run every built-in consistency check.
    VerifyAll {
        /// Run only these check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Include wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum FareyCmd {
    /// Minimal clockwise path from r to s.
    Path {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// Classify a decorated path, e.g. "inf o -1 - -1/2".
    Classify {
        #[arg(allow_hyphen_values = true)]
        path: String,
        /// Treat the path as a slice of T^2 x I (no leading `o` edge).
        #[arg(long)]
        slice: bool,
    },
    /// Apply sign-consistent shortenings until none remain.
    Shorten {
        #[arg(allow_hyphen_values = true)]
        path: String,
    },
    /// Canonical representative under shuffling inside continued-fraction blocks.
    Shuffle {
        #[arg(allow_hyphen_values = true)]
        path: String,
    },
    /// Number of tight structures on the solid torus with boundary slope 1/n.
    Count {
        #[arg(allow_hyphen_values = true)]
        slope: String,
    },
}

#[derive(Subcommand)]
enum ContactCmd {
    /// Slice of T^2 x I named by an algebra element.
    Slice { element: String },
    /// Attach the slices of the given elements, left to right.
    Bypass {
        model: String,
        /// Generator name, or `xi` for the middle generator of a knot.
        class: String,
        elements: Vec<String>,
    },
    /// Image of a Legendrian class under the Stipsicz-Vertesi map.
    Sv {
        /// Knot name (unknot rht lht t34 t34m).
        knot: String,
        #[arg(long, allow_negative_numbers = true)]
        tb: i64,
        /// Use the parametrization with the longitude first.
        #[arg(long)]
        swapped: bool,
        /// Use the conjugate class.
        #[arg(long)]
        conjugate: bool,
    },
    /// Glue a class with a solid-torus class and test the result.
    Pair {
        model: String,
        class: String,
        solid: String,
        label: String,
    },
    /// Move a slice across a gluing and compare the two classes.
    Reattach {
        model1: String,
        class1: String,
        element: String,
        model2: String,
        class2: String,
    },
    /// Legendrian surgery pairings for a knot over a range of framings.
    Verify {
        /// Knot name; the computation uses the complement of its mirror.
        #[arg(long)]
        model: String,
        /// Inclusive range `a..b`.
        #[arg(long, allow_hyphen_values = true, default_value = "-8..-1", value_parser = parse_range)]
        framings: (i64, i64),
    },
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Tau and epsilon from the lifted distinguished component.
    TauEps { model: String },
    /// Minimal intersection and pairing rank of two curves.
    Rank { c1: String, c2: String },
}

#[derive(Args)]
struct SurgeryArgs {
    #[arg(long, allow_negative_numbers = true)]
    tb: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    rot: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<i64>,
    /// Smooth surgery coefficient.
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i64>,
    /// Knot model (name or `knot:<name>:f=<int>`) for the curve rules.
    #[arg(long)]
    model: Option<String>,
    /// Marked generator, or `xi` for the Legendrian class.
    #[arg(long)]
    mark: Option<String>,
    /// Contact surgery coefficient.
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    /// Knot name for the algebraic verdict from `--tb --rot --n`.
    #[arg(long)]
    knot: Option<String>,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("`{s}` is not a range; expected <int>..<int>");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_)
            | Error::Parse { .. }
            | Error::BadMark(_)
            | Error::InvalidFraming(_)
            | Error::UnknownGenerator(_) => Failure::Usage(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Out = Result<Report, Failure>;

/// Same values rendered as text and as JSON.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Report {
            text: text.into(),
            json,
            ok: true,
        }
    }

    fn ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn verdict_word(nonvanishing: bool) -> &'static str {
    if nonvanishing {
        "nonvanishes"
    } else {
        "vanishes"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(cli.cmd);
    match out {
        Ok(r) => {
            match cli.format {
                Format::Text => print!("{}", with_newline(&r.text)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&r.json).expect("json values serialize")
                ),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn with_newline(s: &str) -> String {
    if s.is_empty() || s.ends_with('\n') {
        s.to_string()
    } else {
        format!("{s}\n")
    }
}

fn run(cmd: Command) -> Out {
    match cmd {
        Command::Check { target } => check(&target),
        Command::Show { target } => show(&target),
        Command::Pair {
            a,
            d,
            homology,
            show,
        } => pair(&a, &d, homology, show),
        Command::DdPair { a, reduce } => dd_pair(&a, reduce),
        Command::Farey(c) => farey_cmd(c),
        Command::Contact(c) => contact_cmd(c),
        Command::Curve(c) => curve_cmd(c),
        Command::Surgery(a) => surgery(a),
        Command::Render { curve, out, lifted } => render(&curve, &out, lifted),
        Command::VerifyAll { only, timings } => verify_all(&only, timings),
    }
}

// ---- inputs ----

fn is_file(spec: &str) -> bool {
    Path::new(spec).is_file()
}

fn load_document(path: &str) -> Result<Vec<Structure>, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read `{path}`: {e}")))?;
    Ok(structures::parse_document(&text)?)
}

fn model(spec: &str) -> Result<Model, Failure> {
    Ok(models::model_by_name(spec)?)
}

/// A type-A side given either as an operation table or as a graph.
enum ASide {
    Table(TypeA),
    Graph(GraphTypeA),
}

fn a_side(spec: &str) -> Result<ASide, Failure> {
    if is_file(spec) {
        return load_document(spec)?
            .into_iter()
            .find_map(|s| match s {
                Structure::A(a) => Some(ASide::Table(a)),
                Structure::Graph(g) => Some(ASide::Graph(g)),
                _ => None,
            })
            .ok_or_else(|| usage(format!("`{spec}` holds no type-A structure")));
    }
    match model(spec)? {
        Model::Solid(s) => Ok(ASide::Graph(s.graph)),
        Model::Knot(k) => Ok(ASide::Graph(k.graph)),
        _ => Err(usage(format!(
            "`{spec}` is not a type-A model; expected solid:... or knot:..."
        ))),
    }
}

fn a_table(spec: &str) -> Result<TypeA, Failure> {
    if is_file(spec) {
        return match a_side(spec)? {
            ASide::Table(a) => Ok(a),
            ASide::Graph(g) => Ok(structures::expand_graph_truncated(&g, KNOT_HORIZON)?),
        };
    }
    match model(spec)? {
        Model::Solid(s) => Ok(s.module),
        Model::Knot(k) => Ok(k.module(KNOT_HORIZON)?),
        _ => Err(usage(format!(
            "`{spec}` is not a type-A model; expected solid:... or knot:..."
        ))),
    }
}

fn d_side(spec: &str) -> Result<TypeD, Failure> {
    if is_file(spec) {
        return load_document(spec)?
            .into_iter()
            .find_map(|s| match s {
                Structure::D(d) => Some(d),
                _ => None,
            })
            .ok_or_else(|| usage(format!("`{spec}` holds no type-D structure")));
    }
    match model(spec)? {
        Model::Cap(d) => Ok(d),
        Model::Solid(s) => Ok(s.typed()?),
        Model::Knot(k) => Ok(k.typed),
        Model::DD(_) => Err(usage(format!(
            "`{spec}` is a bimodule; expected cap:..., solid:... or knot:..."
        ))),
    }
}

/// Knot name or full knot model spec (framing 0 by default).
fn knot_model(spec: &str) -> Result<models::KnotModel, Failure> {
    if KNOTS.contains(&spec) {
        return Ok(models::knot(spec, 0)?);
    }
    match model(spec)? {
        Model::Knot(k) => Ok(*k),
        _ => Err(usage(format!(
            "`{spec}` is not a knot; expected one of {} or knot:<name>:f=<int>",
            KNOTS.join(" ")
        ))),
    }
}

/// `line:<slope>`, a bundled model (knots give their type-A avatar) or a curve file.
fn curve_of(spec: &str) -> Result<Curve, Failure> {
    if is_file(spec) {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| usage(format!("cannot read `{spec}`: {e}")))?;
        return Ok(curves::parse_curve(&text)?);
    }
    if let Some(s) = spec.strip_prefix("line:") {
        let s: Slope = s.parse()?;
        return Ok(Curve::single(curves::slope_component(s.p(), s.q())?));
    }
    if KNOTS.contains(&spec) {
        return Ok(models::knot(spec, 0)?.a_curve);
    }
    match model(spec)? {
        Model::Solid(s) => Ok(s.curve),
        Model::Knot(k) => Ok(k.a_curve),
        _ => Err(usage(format!(
            "`{spec}` has no curve; expected line:<p/q>, solid:..., knot:... or a curve file"
        ))),
    }
}

fn basis(tok: &str) -> Result<Basis, Failure> {
    Ok(tok.parse()?)
}

/// A contact class given by a model and a generator (or `xi`).
fn class_of(spec: &str, gen: &str) -> Result<ContactClass, Failure> {
    match model(spec)? {
        Model::Knot(k) => {
            if gen == "xi" {
                return Ok(contact::knot_xi_in(&k)?);
            }
            let m = std::sync::Arc::new(k.module(KNOT_HORIZON)?);
            Ok(ContactClass::generator(m, gen, gen)?.with_graph(std::sync::Arc::new(k.graph)))
        }
        Model::Solid(s) => Ok(contact::solid_torus_class(&s, gen)?),
        _ => Err(usage(format!(
            "`{spec}` carries no contact classes; expected knot:... or solid:..."
        ))),
    }
}

// ---- commands ----

fn kind(s: &Structure) -> &'static str {
    match s {
        Structure::D(_) => "type-d",
        Structure::A(_) => "type-a",
        Structure::Graph(_) => "graph-a",
        Structure::DD(_) => "dd",
    }
}

fn validate(s: &Structure) -> Result<Vec<String>, Failure> {
    Ok(match s {
        Structure::D(d) => structures::validate_typed(d).failures,
        Structure::A(a) => structures::validate_typea(a).failures,
        Structure::Graph(g) => {
            let m = if g.is_acyclic() {
                structures::expand_graph(g)?
            } else {
                structures::expand_graph_truncated(g, KNOT_HORIZON)?
            };
            structures::validate_typea(&m).failures
        }
        Structure::DD(p) => structures::validate_dd(p).failures,
    })
}

/// The structures that make up a bundled model or a document.
fn structures_of(target: &str) -> Result<Vec<Structure>, Failure> {
    if is_file(target) {
        return load_document(target);
    }
    Ok(match model(target)? {
        Model::DD(p) => vec![Structure::DD(p)],
        Model::Cap(d) => vec![Structure::D(d)],
        Model::Solid(s) => {
            let mut a = s.module.clone();
            a.name = s.name();
            let mut d = s.typed()?;
            d.name = s.name();
            vec![Structure::A(a), Structure::D(d)]
        }
        Model::Knot(k) => {
            let mut d = k.typed.clone();
            d.name = k.name();
            vec![Structure::D(d), Structure::Graph(k.graph)]
        }
    })
}

fn check(target: &str) -> Out {
    let items = structures_of(target)?;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for s in &items {
        let failures = validate(s)?;
        for f in &failures {
            lines.push(format!("{} ({}): {f}", s.name(), kind(s)));
        }
        rows.push(json!({ "name": s.name(), "kind": kind(s), "failures": failures }));
    }
    let ok = lines.is_empty();
    let text = if ok {
        "ok".to_string()
    } else {
        lines.join("\n")
    };
    Ok(Report::new(
        text,
        json!({ "target": target, "ok": ok, "structures": rows, "claim": "structure equations of the torus algebra" }),
    )
    .ok(ok))
}

fn show(target: &str) -> Out {
    let items = structures_of(target)?;
    let doc = structures::print_document(&items);
    let names: Vec<&str> = items.iter().map(Structure::name).collect();
    Ok(Report::new(
        doc.clone(),
        json!({ "target": target, "structures": names, "document": doc }),
    ))
}

fn complex_lines(cx: &ChainComplex) -> Vec<String> {
    (0..cx.len())
        .map(|i| {
            let d: Vec<&str> = cx.differential(i).iter().map(|j| cx.name(j)).collect();
            format!(
                "{} -> {}",
                cx.name(i),
                if d.is_empty() {
                    "0".to_string()
                } else {
                    d.join(" + ")
                }
            )
        })
        .collect()
}

fn pair(a: &str, d: &str, homology: bool, show: bool) -> Out {
    let dm = d_side(d)?;
    let cx = match a_side(a)? {
        ASide::Table(m) => box_ad(&m, &dm)?,
        ASide::Graph(g) => box_graph_d(&g, &dm)?,
    };
    let bad = cx.d_squared_violations();
    let mut text = vec![
        format!("generators {}", cx.len()),
        format!("d^2 {}", if bad.is_empty() { "ok" } else { "fails" }),
    ];
    let mut j = json!({
        "a": a, "d": d, "generators": cx.len(), "d_squared_ok": bad.is_empty(),
        "claim": "box tensor product is a chain complex",
    });
    if homology {
        let r = cx.homology_rank()?;
        text.push(format!("homology rank {r}"));
        j["homology_rank"] = json!(r);
    }
    if show {
        let lines = complex_lines(&cx);
        text.extend(lines.iter().cloned());
        j["differential"] = json!(lines);
    }
    Ok(Report::new(text.join("\n"), j).ok(bad.is_empty()))
}

fn dd_pair(a: &str, reduce: bool) -> Out {
    let m = a_table(a)?;
    let mut d = box_a_dd(&m, &models::azdd())?;
    if reduce {
        d = structures::reduce_typed(&d)?;
    }
    let valid = structures::validate_typed(&d);
    let doc = structures::print_document(&[Structure::D(d.clone())]);
    Ok(Report::new(
        doc.clone(),
        json!({ "a": a, "reduced": reduce, "generators": d.len(), "arrows": d.arrow_count(),
                "valid": valid.ok(), "document": doc }),
    )
    .ok(valid.ok()))
}

fn decorated(s: &str) -> Result<DecoratedPath<i64>, Failure> {
    Ok(s.parse()?)
}

fn farey_cmd(c: FareyCmd) -> Out {
    match c {
        FareyCmd::Path { r, s } => {
            let (r, s): (Slope, Slope) = (r.parse()?, s.parse()?);
            let v: Vec<String> = farey::minimal_path(r, s)?
                .iter()
                .map(ToString::to_string)
                .collect();
            Ok(Report::new(
                v.join(" "),
                json!({ "from": r.to_string(), "to": s.to_string(), "vertices": v }),
            ))
        }
        FareyCmd::Classify { path, slice } => {
            let p = decorated(&path)?;
            let t = if slice {
                farey::classify_slice(&p)?
            } else {
                farey::classify(&p)?
            };
            Ok(Report::new(
                t.to_string(),
                json!({ "path": p.to_string(), "slice": slice, "class": t.to_string(),
                        "claim": "tightness of decorated Farey paths" }),
            ))
        }
        FareyCmd::Shorten { path } => {
            let p = farey::shorten(&decorated(&path)?);
            Ok(Report::new(
                p.to_string(),
                json!({ "path": path, "shortened": p.to_string() }),
            ))
        }
        FareyCmd::Shuffle { path } => {
            let p = farey::shuffle_canonical(&decorated(&path)?);
            Ok(Report::new(
                p.to_string(),
                json!({ "path": path, "canonical": p.to_string() }),
            ))
        }
        FareyCmd::Count { slope } => {
            let s: Slope = slope.parse()?;
            let n = farey::count_tight_solid_torus(s)?;
            Ok(Report::new(
                n.to_string(),
                json!({ "slope": s.to_string(), "count": n, "claim": "tight structures on a solid torus" }),
            ))
        }
    }
}

fn class_json(c: &ContactClass) -> Value {
    json!({ "name": c.name, "support": c.support_names(), "idempotent": c.idempotent.to_string() })
}

fn contact_cmd(c: ContactCmd) -> Out {
    match c {
        ContactCmd::Slice { element } => {
            let s = contact::slice_of(basis(&element)?).to_string();
            Ok(Report::new(
                s.clone(),
                json!({ "element": element, "slice": s }),
            ))
        }
        ContactCmd::Bypass {
            model,
            class,
            elements,
        } => {
            let mut c = class_of(&model, &class)?;
            let mut text = vec![c.to_string()];
            let mut steps = vec![class_json(&c)];
            for e in &elements {
                let a = basis(e)?;
                c = contact::bypass(&c, a)?;
                text.push(format!("{c}  via {}", contact::slice_of(a)));
                steps.push(class_json(&c));
            }
            Ok(Report::new(
                text.join("\n"),
                json!({ "model": model, "steps": steps }),
            ))
        }
        ContactCmd::Sv {
            knot,
            tb,
            swapped,
            conjugate,
        } => {
            let km = contact::legendrian_model(&knot, tb)?;
            let Some(mut c) = contact::legendrian_class(&km)? else {
                return Ok(Report::new(
                    "no class",
                    json!({ "knot": knot, "tb": tb, "class": null, "claim": "Stipsicz-Vertesi map" }),
                )
                .ok(false));
            };
            if conjugate {
                c = contact::transformed_class(&km, &c, Curve::point_reflection, "conjugate")?;
            }
            let (param, meridian) = if swapped {
                c = contact::transformed_class(&km, &c, Curve::quarter_turn, "swapped")?;
                (SvParam::LongitudeFirst, Idem::I1)
            } else {
                (SvParam::MeridianFirst, Idem::I0)
            };
            let img = contact::sv_image(&c, param)?;
            let tr = truncate(&c.module, meridian);
            let names = img.support_names();
            let nonzero = !names.is_empty()
                && tr.is_nonvanishing_cycle(
                    &tr.vector(&names.iter().map(String::as_str).collect::<Vec<_>>())?,
                )?;
            Ok(Report::new(
                format!("{}\n{img}\n{}", verdict_word(nonzero), c),
                json!({ "knot": knot, "tb": tb, "swapped": swapped, "conjugate": conjugate,
                        "class": class_json(&c), "image": class_json(&img), "nonvanishing": nonzero,
                        "claim": "Stipsicz-Vertesi map" }),
            ))
        }
        ContactCmd::Pair {
            model,
            class,
            solid,
            label,
        } => {
            let c = class_of(&model, &class)?;
            let s = match self::model(&solid)? {
                Model::Solid(s) => s,
                _ => {
                    return Err(usage(format!(
                        "`{solid}` is not a solid torus; expected solid:n=<int>:param=<a|b|c|d>"
                    )))
                }
            };
            let t = contact::solid_torus_typed_class(&s, &label)?;
            let (cx, z) = contact::pair_contact(&c, &t)?;
            let nv = cx.is_nonvanishing_cycle(&z)?;
            Ok(Report::new(
                verdict_word(nv),
                json!({ "class": class_json(&c), "solid": solid, "label": label, "generators": cx.len(),
                        "nonvanishing": nv, "claim": "gluing contact classes by pairing" }),
            ))
        }
        ContactCmd::Reattach {
            model1,
            class1,
            element,
            model2,
            class2,
        } => {
            let (c1, c2) = (class_of(&model1, &class1)?, class_of(&model2, &class2)?);
            let r = contact::reattach(&c1, basis(&element)?, &c2)?;
            let lit = r.literal.map_or("n/a".to_string(), |b| b.to_string());
            Ok(Report::new(
                format!("homologous {}\nliteral {lit}", r.homologous),
                json!({ "c1": class_json(&c1), "element": element, "c2": class_json(&c2),
                        "homologous": r.homologous, "literal": r.literal, "claim": "reattachment across a gluing" }),
            )
            .ok(r.homologous))
        }
        ContactCmd::Verify { model, framings } => {
            let km = contact::legendrian_model(&model, 0)?;
            let (mut text, mut rows, mut ok) = (Vec::new(), Vec::new(), true);
            for n in framings.0..=framings.1 {
                if n == 1 {
                    return Err(usage(
                        "framing 1 would need a 0-framed solid torus; use framings <= 0",
                    ));
                }
                let x3 = verify::legendrian_pattern(&km, Basis::R3, n)?;
                let x1 = verify::legendrian_pattern(&km, Basis::R1, n)?;
                ok &= x3 && x1;
                text.push(format!(
                    "n={n} xi3 {} xi1 {}",
                    verdict_word(x3),
                    verdict_word(x1)
                ));
                rows.push(json!({ "n": n, "xi3": x3, "xi1": x1 }));
            }
            Ok(Report::new(
                text.join("\n"),
                json!({ "knot": model, "complement": km.name(), "framings": rows, "ok": ok,
                        "claim": "Legendrian surgery keeps the contact class" }),
            )
            .ok(ok))
        }
    }
}

fn curve_cmd(c: CurveCmd) -> Out {
    match c {
        CurveCmd::TauEps { model } => {
            let (t, e) = if KNOTS.contains(&model.as_str()) {
                contact::knot_tau_epsilon(&model)?
            } else {
                curves::tau_epsilon(&curves::distinguished(&curve_of(&model)?)?)?
            };
            Ok(Report::new(
                format!("tau {t}\nepsilon {e}"),
                json!({ "model": model, "tau": t, "epsilon": e }),
            ))
        }
        CurveCmd::Rank { c1, c2 } => {
            let (a, b) = (curve_of(&c1)?, curve_of(&c2)?);
            let k = curves::min_intersections(&a, &b);
            let g = curves::graph_a_from_curve(&a, &c1)?;
            let d = curves::typed_from_curve(&b, &c2)?;
            let rank = box_graph_d(&g, &d)?.homology_rank()?;
            Ok(Report::new(
                format!("intersections {k}\npairing rank {rank}"),
                json!({ "c1": c1, "c2": c2, "intersections": k, "pairing_rank": rank,
                        "claim": "pairing rank equals minimal intersection" }),
            ))
        }
    }
}

fn surgery(a: SurgeryArgs) -> Out {
    if let Some(spec) = &a.model {
        let (Some(mark), Some(n)) = (&a.mark, a.n) else {
            return Err(usage(
                "curve mode needs `--model <knot> --mark <generator|xi> --n <k>`",
            ));
        };
        let km = knot_model(spec)?;
        let gen = if mark == "xi" {
            contact::legendrian_class(&km)?
                .map(|c| c.support_names()[0].clone())
                .ok_or_else(|| Failure::Invalid(format!("{} has no Legendrian class", km.name())))?
        } else {
            mark.clone()
        };
        let rep = curves::surgery_verdict_report(&km.a_curve, &gen, n)?;
        let alg = contact::filling_nonvanishing(&km, &gen, n)?;
        let text = format!(
            "{}\nrules: {}\nalgebra: {}",
            rep.verdict,
            if rep.rules.is_empty() {
                "none".to_string()
            } else {
                rep.rules.join("; ")
            },
            verdict_word(alg)
        );
        return Ok(Report::new(
            text,
            json!({ "model": km.name(), "mark": gen, "n": n, "verdict": rep.verdict.to_string(),
                    "rules": rep.rules, "algebra": verdict_word(alg),
                    "claim": "local curve rules for positive contact surgery" }),
        ));
    }
    if let Some(k) = &a.knot {
        let (Some(tb), Some(rot), Some(n)) = (a.tb, a.rot, a.n) else {
            return Err(usage(
                "algebraic mode needs `--knot <name> --tb <int> --rot <int> --n <k>`",
            ));
        };
        let (tau, eps) = contact::knot_tau_epsilon(k)?;
        let alg = contact::surgery_nonvanishing(k, tb, rot, n)?;
        let f = curves::surgery_verdict_formula(tb, rot, tau, eps, n + tb)?;
        return Ok(Report::new(
            format!("{}\nformula: {f}", verdict_word(alg)),
            json!({ "knot": k, "tb": tb, "rot": rot, "n": n, "tau": tau, "epsilon": eps,
                    "algebra": verdict_word(alg), "formula": f.to_string(),
                    "claim": "positive contact surgery criterion" }),
        ));
    }
    let missing: Vec<&str> = [
        ("--tb", a.tb),
        ("--rot", a.rot),
        ("--tau", a.tau),
        ("--eps", a.eps),
        ("--s", a.s),
    ]
    .iter()
    .filter(|(_, v)| v.is_none())
    .map(|(k, _)| *k)
    .collect();
    if !missing.is_empty() {
        return Err(usage(format!(
            "missing {}; expected `--tb --rot --tau --eps --s`, `--knot --tb --rot --n` or `--model --mark --n`",
            missing.join(" ")
        )));
    }
    let (tb, rot, tau, eps, s) = (
        a.tb.unwrap(),
        a.rot.unwrap(),
        a.tau.unwrap(),
        a.eps.unwrap(),
        a.s.unwrap(),
    );
    let v = curves::surgery_verdict_formula(tb, rot, tau, eps, s)?;
    Ok(Report::new(
        v.to_string(),
        json!({ "tb": tb, "rot": rot, "tau": tau, "epsilon": eps, "s": s, "verdict": v.to_string(),
                "claim": "positive contact surgery criterion" }),
    ))
}

fn render(spec: &str, out: &Path, lifted: bool) -> Out {
    let c = curve_of(spec)?;
    let svg = if lifted {
        curves::render_lifted_svg(&curves::distinguished(&c)?)
    } else {
        curves::render_svg(&c)
    };
    std::fs::write(out, &svg)
        .map_err(|e| Failure::Invalid(format!("cannot write `{}`: {e}", out.display())))?;
    Ok(Report::new(
        format!("wrote {}", out.display()),
        json!({ "curve": spec, "out": out.display().to_string(), "lifted": lifted, "bytes": svg.len() }),
    ))
}

fn verify_all(only: &[u8], timings: bool) -> Out {
    let checks = if only.is_empty() {
        verify::run_all()
    } else {
        only.iter()
            .map(|&id| {
                verify::run(id).ok_or_else(|| {
                    usage(format!(
                        "no check `{id}`; expected 1..={}",
                        verify::CHECKS.len()
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let ok = checks.iter().all(|c| c.passed);
    let text: Vec<String> = checks
        .iter()
        .map(|c| {
            let line = format!(
                "[{:>2}] {} {}: {}",
                c.id,
                if c.passed { "PASS" } else { "FAIL" },
                c.title,
                c.detail
            );
            if timings {
                format!("{line} ({} ms)", c.elapsed.as_millis())
            } else {
                line
            }
        })
        .collect();
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            let mut v =
                json!({ "id": c.id, "title": c.title, "passed": c.passed, "detail": c.detail });
            if timings {
                v["ms"] = json!(c.elapsed.as_millis() as u64);
            }
            v
        })
        .collect();
    Ok(Report::new(text.join("\n"), json!({ "ok": ok, "checks": rows })).ok(ok))
}
