use clap::{ArgAction, Args, Subcommand};
use serde_json::{json, Value};

use t3ech_core::census::OrbitKind;
use t3ech_core::document::SwTable;
use t3ech_core::index::{chamber_side_exact, chamber_side_with_tolerance, check_mv_image, models, WALL_TOLERANCE};
use t3ech_core::surgery::{is_realizable, Mat3};
use t3ech_core::*;

use crate::format::{bit, real, real_value, yes_no, Rendered};
use crate::{CliError, Common, Context};

/// Comma-separated integers, e.g. `2,-1,3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

fn int_list(s: &str) -> Result<IntList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(IntList)
}

fn int_pair(s: &str) -> Result<IntList, String> {
    int_list(s).and_then(|l| if l.0.len() == 2 { Ok(l) } else { Err("expected two integers `m,n`".into()) })
}

fn int_triple(s: &str) -> Result<IntList, String> {
    int_list(s).and_then(|l| if l.0.len() == 3 { Ok(l) } else { Err("expected three integers `a,b,c`".into()) })
}

fn bit_arg(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("`{s}` is not a bit (0 or 1)")),
    }
}

fn ints(v: &[i64]) -> String {
    let items: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", items.join(","))
}

fn matrix(m: &Mat3) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{},{},{}]", r[0], r[1], r[2])).collect();
    format!("[{}]", rows.join(","))
}

fn class_line(c: EchZeroClass) -> String {
    format!("{c}  = {}", c.formal_sum())
}

fn class_value(c: EchZeroClass) -> Value {
    json!({ "class": [bit(c.x), bit(c.y), bit(c.theta_bar)], "formal_sum": c.formal_sum() })
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Contact form: a name in the workspace or the builtin `lambda0`
    #[arg(long)]
    form: String,
    /// Action cutoff L
    #[arg(long)]
    cutoff: f64,
    /// Verification grid size for the positivity certificate
    #[arg(long)]
    grid: Option<usize>,
    #[command(flatten)]
    pub(crate) common: Common,
}

fn lookup_form(ctx: &Context, name: &str) -> Result<ToricContactForm, CliError> {
    if ctx.doc.contact_forms.contains_key(name) {
        return Ok(ctx.doc.contact_form(name)?);
    }
    match name {
        "lambda0" => Ok(ToricContactForm::lambda0()),
        _ => Err(DocumentError::UnknownName { section: "contact form", name: name.to_string() }.into()),
    }
}

pub(crate) fn census(ctx: &Context, args: &CensusArgs) -> Result<Rendered, CliError> {
    let mut form = lookup_form(ctx, &args.form)?;
    if let Some(n) = args.grid {
        form = form.regridded(n)?;
    }
    let census = bourgeois_census(&form, args.cutoff)?;
    let report = form.report();
    let mut t = vec![
        format!("form: {}", args.form),
        format!("a1: {}", form.a1()),
        format!("a2: {}", form.a2()),
        format!("cutoff: {}", real(args.cutoff)),
        format!(
            "contact certificate: grid {}  min a×a' {}  margin {}",
            form.grid_size(),
            real(report.min_cross),
            real(report.margin)
        ),
        format!("families: {}", census.families().len()),
        format!("  {:<10} {:<16} {:<16} {:<16} {}", "class", "theta0", "action", "r(theta0)", "sign"),
    ];
    for f in census.families() {
        t.push(format!(
            "  {:<10} {:<16} {:<16} {:<16} {}",
            f.class.to_string(),
            real(f.theta0),
            real(f.action),
            real(f.rotation_invariant),
            f.rotation_sign
        ));
    }
    t.push(format!("orbits: {}", census.orbits().len()));
    t.push(format!("  {:<12} {:<10} {:<16} {:<10} {}", "kind", "class", "action", "l-positive", "family"));
    for o in census.orbits() {
        let lpos = match o.l_positive {
            Some(b) => yes_no(b),
            None => "-",
        };
        t.push(format!(
            "  {:<12} {:<10} {:<16} {:<10} {}",
            o.kind.to_string(),
            o.class.to_string(),
            real(o.limit_action),
            lpos,
            o.parent
        ));
    }
    t.push(format!("bourgeois admissible: {}", yes_no(census.bourgeois_admissible())));
    t.push("l-flat: asserted".to_string());

    let generators = degree_zero_generators(&census).ok();
    match &generators {
        Some(gens) => {
            t.push(format!("degree-0 generators: {}", gens.len()));
            for g in gens {
                t.push(format!("  {:<10} {}", g.to_string(), real(g.total_action())));
            }
        }
        None => t.push("degree-0 generators: unavailable (census not admissible)".to_string()),
    }

    let families: Vec<Value> = census
        .families()
        .iter()
        .map(|f| {
            json!({
                "class": [f.class.m, f.class.n],
                "theta0": real_value(f.theta0),
                "action": real_value(f.action),
                "rotation_invariant": real_value(f.rotation_invariant),
                "rotation_sign": f.rotation_sign.as_i8(),
            })
        })
        .collect();
    let orbits: Vec<Value> = census
        .orbits()
        .iter()
        .map(|o| {
            json!({
                "kind": match o.kind { OrbitKind::PositiveHyperbolic => "positive_hyperbolic", OrbitKind::Elliptic => "elliptic" },
                "class": [o.class.m, o.class.n],
                "limit_action": real_value(o.limit_action),
                "l_positive": o.l_positive,
                "family": o.parent,
            })
        })
        .collect();
    let gens: Value = match &generators {
        Some(gens) => gens
            .iter()
            .map(|g| match g {
                DegreeZeroGenerator::Empty => json!({ "kind": "empty", "total_action": 0 }),
                DegreeZeroGenerator::HPair { v, total_action, .. } => {
                    json!({ "kind": "h_pair", "v": [v.m, v.n], "total_action": real_value(*total_action) })
                }
            })
            .collect(),
        None => Value::Null,
    };
    let s = json!({
        "form": args.form,
        "cutoff": real_value(args.cutoff),
        "grid_size": form.grid_size(),
        "min_cross": real_value(report.min_cross),
        "certificate_margin": real_value(report.margin),
        "families": families,
        "orbits": orbits,
        "bourgeois_admissible": census.bourgeois_admissible(),
        "l_flat_asserted": census.l_flat_asserted(),
        "generators": gens,
    });
    Ok(Rendered::new(t, s))
}

#[derive(Debug, Subcommand)]
pub enum EchVerb {
    /// The class h(v) of the hyperbolic pair in classes ±v
    #[command(allow_negative_numbers = true)]
    H {
        #[arg(long, value_parser = int_pair, allow_hyphen_values = true)]
        v: IntList,
        #[command(flatten)]
        common: Common,
    },
    /// Image of a class under the Luttinger contactomorphism f_{1,r,s}
    #[command(allow_negative_numbers = true)]
    Act {
        #[arg(long, default_value_t = 1)]
        p: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
        /// Class as bits `x,y,θ̄`
        #[arg(long, value_parser = int_triple)]
        class: IntList,
        #[command(flatten)]
        common: Common,
    },
    /// Gr_L(A) from Gromov invariants of X and two Luttinger surgeries
    FromSurgeries {
        #[arg(long, value_parser = bit_arg, action = ArgAction::Set)]
        grx: bool,
        #[arg(long, value_parser = bit_arg, action = ArgAction::Set)]
        gr110: bool,
        #[arg(long, value_parser = bit_arg, action = ArgAction::Set)]
        gr101: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The contact invariant (class of the empty orbit set)
    Invariant {
        #[command(flatten)]
        common: Common,
    },
}

impl EchVerb {
    pub(crate) fn common(&self) -> &Common {
        match self {
            EchVerb::H { common, .. }
            | EchVerb::Act { common, .. }
            | EchVerb::FromSurgeries { common, .. }
            | EchVerb::Invariant { common } => common,
        }
    }
}

pub(crate) fn ech(ctx: &Context, verb: &EchVerb) -> Result<Rendered, CliError> {
    let class = match verb {
        EchVerb::H { v, .. } => h_class_with(OrbitClass::new(v.0[0], v.0[1]), ctx.conventions.h_identification),
        EchVerb::Act { p, r, s, class, .. } => {
            let f = complete_sl3(*p, *r, *s)?;
            let c = &class.0;
            act_contactomorphism(&f, EchZeroClass::from_ints(c[0], c[1], c[2]))?
        }
        EchVerb::FromSurgeries { grx, gr110, gr101, .. } => gr_from_surgeries(*grx, *gr110, *gr101).as_class(),
        EchVerb::Invariant { .. } => contact_invariant(),
    };
    Ok(Rendered::new(vec![class_line(class)], class_value(class)))
}

#[derive(Debug, Args)]
pub struct SurgeryTriple {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    r: i64,
    #[arg(long)]
    s: i64,
}

#[derive(Debug, Args)]
pub struct LocalSource {
    /// SW_L = (a,b,c) with c = SW_X
    #[arg(long, value_parser = int_triple, allow_hyphen_values = true, required_unless_present = "table")]
    swl: Option<IntList>,
    /// SW table in the workspace supplying (1,0,0), (0,1,0), (0,0,1)
    #[arg(long, conflicts_with = "swl")]
    table: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum SurgeryVerb {
    /// SW of the surgery f_{p,r,s} through the matrix action on SW_L
    #[command(allow_negative_numbers = true)]
    Predict {
        #[command(flatten)]
        source: LocalSource,
        #[command(flatten)]
        triple: SurgeryTriple,
        #[command(flatten)]
        common: Common,
    },
    /// SW_L from SW_X, SW of f_{0,1,0} and SW of f_{0,0,1}
    #[command(allow_negative_numbers = true)]
    Assemble {
        #[arg(long, required_unless_present = "table")]
        swx: Option<i64>,
        #[arg(long, required_unless_present = "table")]
        sw010: Option<i64>,
        #[arg(long, required_unless_present = "table")]
        sw001: Option<i64>,
        #[arg(long, conflicts_with_all = ["swx", "sw010", "sw001"])]
        table: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the mod-2 Gromov equations for (a, b)
    #[command(allow_negative_numbers = true)]
    Solve {
        /// Gr_X(A) mod 2
        #[arg(long, value_parser = bit_arg, action = ArgAction::Set, required_unless_present = "table")]
        base: Option<bool>,
        /// One observation `r,s,value` of Gr for f_{1,r,s}; repeatable
        #[arg(long = "eq", value_parser = int_triple, allow_hyphen_values = true)]
        eqs: Vec<IntList>,
        /// SW table whose p = 1 entries supply the equations
        #[arg(long, conflicts_with_all = ["base", "eqs"])]
        table: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Deterministic SL3(Z) representative of f_{p,r,s}
    #[command(allow_negative_numbers = true)]
    Complete {
        #[command(flatten)]
        triple: SurgeryTriple,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form product formula p·c + r·a + s·b
    #[command(allow_negative_numbers = true)]
    Product {
        #[command(flatten)]
        source: LocalSource,
        #[command(flatten)]
        triple: SurgeryTriple,
        #[command(flatten)]
        common: Common,
    },
}

impl SurgeryVerb {
    pub(crate) fn common(&self) -> &Common {
        match self {
            SurgeryVerb::Predict { common, .. }
            | SurgeryVerb::Assemble { common, .. }
            | SurgeryVerb::Solve { common, .. }
            | SurgeryVerb::Complete { common, .. }
            | SurgeryVerb::Product { common, .. } => common,
        }
    }
}

fn local_invariant(ctx: &Context, source: &LocalSource) -> Result<(LocalTorusInvariant, Vec<String>), CliError> {
    if let Some(swl) = &source.swl {
        return Ok((LocalTorusInvariant { a: swl.0[0], b: swl.0[1], c: swl.0[2] }, Vec::new()));
    }
    let name = source.table.as_deref().expect("clap requires --swl or --table");
    let table = ctx.doc.sw_table(name)?;
    let swl = table.local_invariant().ok_or_else(|| {
        CliError::Invalid(format!("SW table `{name}` needs entries at (1,0,0), (0,1,0) and (0,0,1)"))
    })?;
    Ok((swl, chamber_tags(table)))
}

fn chamber_tags(table: &SwTable) -> Vec<String> {
    table
        .entries
        .iter()
        .filter_map(|e| e.chamber.as_ref().map(|c| format!("chamber ({},{},{}): {c}", e.p, e.r, e.s)))
        .collect()
}

pub(crate) fn surgery(ctx: &Context, verb: &SurgeryVerb) -> Result<Rendered, CliError> {
    match verb {
        SurgeryVerb::Predict { source, triple, .. } => {
            let (swl, tags) = local_invariant(ctx, source)?;
            let f = complete_sl3(triple.p, triple.r, triple.s)?;
            let value = predict_surgery(&swl, &f);
            let mut t = vec![value.to_string()];
            t.extend(tags.iter().cloned());
            Ok(Rendered::new(t, json!({ "swl": [swl.a, swl.b, swl.c], "surgery": [triple.p, triple.r, triple.s], "value": value, "chambers": tags })))
        }
        SurgeryVerb::Product { source, triple, .. } => {
            let (swl, tags) = local_invariant(ctx, source)?;
            let value = product_formula(&swl, triple.p, triple.r, triple.s);
            let realizable = is_realizable(triple.p, triple.r, triple.s);
            let mut t = vec![value.to_string(), format!("realizable: {}", yes_no(realizable))];
            t.extend(tags.iter().cloned());
            Ok(Rendered::new(
                t,
                json!({ "swl": [swl.a, swl.b, swl.c], "surgery": [triple.p, triple.r, triple.s], "value": value, "realizable": realizable, "chambers": tags }),
            ))
        }
        SurgeryVerb::Assemble { swx, sw010, sw001, table, .. } => {
            let swl = match table {
                Some(name) => ctx.doc.sw_table(name)?.local_invariant().ok_or_else(|| {
                    CliError::Invalid(format!("SW table `{name}` needs entries at (1,0,0), (0,1,0) and (0,0,1)"))
                })?,
                None => assemble_swl(swx.unwrap_or_default(), sw010.unwrap_or_default(), sw001.unwrap_or_default()),
            };
            Ok(Rendered::new(vec![swl.to_string()], json!({ "swl": [swl.a, swl.b, swl.c] })))
        }
        SurgeryVerb::Solve { base, eqs, table, .. } => {
            let (base, eqs) = match table {
                Some(name) => ctx
                    .doc
                    .sw_table(name)?
                    .gromov_system()
                    .ok_or_else(|| CliError::Invalid(format!("SW table `{name}` has no (1,0,0) entry")))?,
                None => (
                    base.unwrap_or_default(),
                    eqs.iter()
                        .map(|e| GromovEquation { r: e.0[0], s: e.0[1], gr_value: e.0[2].rem_euclid(2) == 1 })
                        .collect(),
                ),
            };
            match solve_gromov(base, &eqs) {
                Ok(GromovSolution::Unique { a, b }) => Ok(Rendered::new(
                    vec![format!("a = {}, b = {}", bit(a), bit(b))],
                    json!({ "status": "unique", "a": bit(a), "b": bit(b) }),
                )),
                Ok(GromovSolution::Underdetermined { particular, directions }) => {
                    let pair = |(a, b): (bool, bool)| format!("({},{})", bit(a), bit(b));
                    let dirs: Vec<String> = directions.iter().map(|d| pair(*d)).collect();
                    Ok(Rendered::new(
                        vec![format!("underdetermined: (a,b) ∈ {} + span{{{}}}", pair(particular), dirs.join(", "))],
                        json!({
                            "status": "underdetermined",
                            "particular": [bit(particular.0), bit(particular.1)],
                            "directions": directions.iter().map(|d| json!([bit(d.0), bit(d.1)])).collect::<Vec<_>>(),
                        }),
                    ))
                }
                Err(SurgeryError::Inconsistent(idx)) => {
                    let shown: Vec<String> = idx
                        .iter()
                        .map(|&i| format!("#{i} (r,s)=({},{}) → {}", eqs[i].r, eqs[i].s, bit(eqs[i].gr_value)))
                        .collect();
                    Err(CliError::Inconsistent(format!(
                        "Gromov equations cannot hold together with Gr_X = {}: {}",
                        bit(base),
                        shown.join("; ")
                    )))
                }
                Err(e) => Err(e.into()),
            }
        }
        SurgeryVerb::Complete { triple, .. } => {
            let f = complete_sl3(triple.p, triple.r, triple.s)?;
            Ok(Rendered::new(
                vec![
                    format!("h2: {}", matrix(f.h2())),
                    format!("h1: {}", matrix(f.h1())),
                    format!("luttinger: {}", yes_no(is_luttinger(&f))),
                ],
                json!({ "h2": f.h2(), "h1": f.h1(), "luttinger": is_luttinger(&f) }),
            ))
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum IndexVerb {
    /// d(𝔰) = (c1² − 2χ − 3σ)/4
    #[command(allow_negative_numbers = true)]
    D {
        #[arg(long)]
        model: String,
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        c1: IntList,
        #[command(flatten)]
        common: Common,
    },
    /// I(A) = A·A − K·A
    #[command(allow_negative_numbers = true)]
    Ech {
        #[arg(long)]
        model: String,
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        a: IntList,
        #[command(flatten)]
        common: Common,
    },
    /// Residual of a lift difference v (default: the model's lift differences)
    #[command(allow_negative_numbers = true)]
    LiftCheck {
        #[arg(long)]
        model: String,
        #[arg(long, value_parser = int_list, allow_hyphen_values = true, required_unless_present = "c1")]
        a: Option<IntList>,
        #[arg(long, value_parser = int_list, allow_hyphen_values = true, conflicts_with = "a")]
        c1: Option<IntList>,
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        v: Option<IntList>,
        #[command(flatten)]
        common: Common,
    },
    /// Side of the wall 2π[ω]·c1 + ∫ω∧μ = 0; rationals `p/q` are decided exactly
    #[command(allow_negative_numbers = true)]
    Chamber {
        #[arg(long = "omega-c1", allow_hyphen_values = true)]
        omega_c1: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Wall tolerance for real inputs
        #[arg(long)]
        tolerance: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// c1 of 𝔰_ω + A, i.e. 2A − K
    #[command(allow_negative_numbers = true)]
    Bridge {
        #[arg(long)]
        model: String,
        #[arg(long, value_parser = int_list, allow_hyphen_values = true)]
        a: IntList,
        #[command(flatten)]
        common: Common,
    },
}

impl IndexVerb {
    pub(crate) fn common(&self) -> &Common {
        match self {
            IndexVerb::D { common, .. }
            | IndexVerb::Ech { common, .. }
            | IndexVerb::LiftCheck { common, .. }
            | IndexVerb::Chamber { common, .. }
            | IndexVerb::Bridge { common, .. } => common,
        }
    }
}

fn lookup_model(ctx: &Context, name: &str) -> Result<FourManifoldModel, CliError> {
    if ctx.doc.manifolds.contains_key(name) {
        return Ok(ctx.doc.manifold(name)?);
    }
    match name {
        "k3" => Ok(models::k3()),
        "t4" => Ok(models::four_torus()),
        "s2xs2" => Ok(models::s2_times_s2()),
        _ => Err(DocumentError::UnknownName { section: "manifold", name: name.to_string() }.into()),
    }
}

fn warning_lines(model: &FourManifoldModel) -> Vec<String> {
    model.warnings().iter().map(|w| format!("warning: {w}")).collect()
}

fn rational(s: &str) -> Option<BigRational> {
    s.trim().parse::<BigRational>().ok()
}

fn real_arg(name: &str, s: &str) -> Result<f64, CliError> {
    let value = match s.trim().split_once('/') {
        Some((n, d)) => n.trim().parse::<f64>().ok().zip(d.trim().parse::<f64>().ok()).map(|(n, d)| n / d),
        None => s.trim().parse::<f64>().ok(),
    };
    value.filter(|x| x.is_finite()).ok_or_else(|| CliError::Invalid(format!("{name}: `{s}` is not a number")))
}

pub(crate) fn index(ctx: &Context, verb: &IndexVerb) -> Result<Rendered, CliError> {
    match verb {
        IndexVerb::D { model, c1, .. } => {
            let m = lookup_model(ctx, model)?;
            let d = d_invariant(&m, &SpinCClass { c1: c1.0.clone() })?;
            let mut t = vec![format!("d = {d}")];
            t.extend(warning_lines(&m));
            Ok(Rendered::new(t, json!({ "model": model, "c1": c1.0, "d": d, "warnings": m.warnings() })))
        }
        IndexVerb::Ech { model, a, .. } => {
            let m = lookup_model(ctx, model)?;
            let i = ech_index_closed(&m, &a.0)?;
            let mut t = vec![format!("I(A) = {i}")];
            t.extend(warning_lines(&m));
            Ok(Rendered::new(t, json!({ "model": model, "a": a.0, "index": i, "warnings": m.warnings() })))
        }
        IndexVerb::LiftCheck { model, a, c1, v, .. } => {
            let m = lookup_model(ctx, model)?;
            let target = match (a, c1) {
                (Some(a), _) => LiftTarget::Index(a.0.clone()),
                (None, Some(c1)) => LiftTarget::SpinC(c1.0.clone()),
                (None, None) => unreachable!("clap requires --a or --c1"),
            };
            let vs: Vec<Vec<i64>> = match v {
                Some(v) => vec![v.0.clone()],
                None => m.mv_image_basis().to_vec(),
            };
            if vs.is_empty() {
                return Err(CliError::Invalid(format!("model `{model}` has no lift differences; pass --v")));
            }
            let checks = match v {
                Some(_) => vec![lift_invariance_check(&m, &target, &vs[0])?],
                None => check_mv_image(&m, &target)?,
            };
            let mut t = Vec::new();
            let mut rows = Vec::new();
            for (v, c) in vs.iter().zip(&checks) {
                t.push(format!("v = {}  residual = {}  invariant: {}", ints(v), c.residual, yes_no(c.invariant)));
                rows.push(json!({ "v": v, "residual": c.residual, "invariant": c.invariant }));
            }
            let all = checks.iter().all(|c| c.invariant);
            t.push(format!("all invariant: {}", yes_no(all)));
            t.extend(warning_lines(&m));
            Ok(Rendered::new(t, json!({ "model": model, "checks": rows, "all_invariant": all, "warnings": m.warnings() })))
        }
        IndexVerb::Chamber { omega_c1, mu, tolerance, .. } => {
            let (side, mode, value) = match (rational(omega_c1), rational(mu), tolerance) {
                (Some(w), Some(m), None) => {
                    let value = 2.0 * std::f64::consts::PI * real_arg("omega-c1", omega_c1)? + real_arg("mu", mu)?;
                    (chamber_side_exact(&w, &m)?, "exact", value)
                }
                _ => {
                    let data = ChamberData { omega_dot_c1: real_arg("omega-c1", omega_c1)?, mu_term: real_arg("mu", mu)? };
                    let tol = tolerance.unwrap_or(WALL_TOLERANCE);
                    let value = 2.0 * std::f64::consts::PI * data.omega_dot_c1 + data.mu_term;
                    (chamber_side_with_tolerance(&data, tol), "tolerance", value)
                }
            };
            Ok(Rendered::new(
                vec![format!("side: {}", side.label()), format!("2π·ω·c1 + μ ≈ {}", real(value)), format!("decided: {mode}")],
                json!({ "side": side.as_str(), "symplectic_chamber": side == ChamberSide::Negative, "value": real_value(value), "decided": mode }),
            ))
        }
        IndexVerb::Bridge { model, a, .. } => {
            let m = lookup_model(ctx, model)?;
            let s = gr_sw_bridge(&m, &a.0)?;
            let mut t = vec![format!("c1 = {}", ints(&s.c1))];
            let d = d_invariant(&m, &s).ok();
            let i = ech_index_closed(&m, &a.0).ok();
            if let Some(d) = d {
                t.push(format!("d = {d}"));
            }
            if let Some(i) = i {
                t.push(format!("I(A) = {i}"));
            }
            t.extend(warning_lines(&m));
            Ok(Rendered::new(t, json!({ "model": model, "a": a.0, "c1": s.c1, "d": d, "index": i, "warnings": m.warnings() })))
        }
    }
}
