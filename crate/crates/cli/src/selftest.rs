//! Desk-scale invariant suites run by `t3ech selftest`.

use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use t3ech_core::document::{ContactFormSpec, ManifoldSpec, SwEntry, SwTable};
use t3ech_core::index::models;
use t3ech_core::*;

use crate::format::{render, OutMode, Rendered};
use crate::{Outcome, EXIT_INCONSISTENT, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Swap the h identification halfway through the naturality suite
    HSwap,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Grid size for the contact certificates
    #[arg(long, default_value_t = 256)]
    grid: usize,
    #[arg(long, value_enum)]
    inject_fault: Option<Fault>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutMode::Table)]
    out: OutMode,
}

struct Suite {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

pub fn run_selftest(args: &SelftestArgs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let suites = vec![
        contact_suite(args.grid),
        census_suite(args.grid),
        ech_suite(&mut rng, args.inject_fault),
        surgery_suite(&mut rng),
        index_suite(&mut rng),
        document_suite(),
    ];
    let ok = suites.iter().all(|s| s.failures.is_empty());
    let mut table = vec![format!("selftest: grid {}  seed {}", args.grid, args.seed)];
    if let Some(Fault::HSwap) = args.inject_fault {
        table.push("fault injected: h-swap".to_string());
    }
    for s in &suites {
        match s.failures.first() {
            None => table.push(format!("PASS  {} ({} checks)", s.name, s.checks)),
            Some(first) => {
                table.push(format!("FAIL  {} ({} of {} checks): {first}", s.name, s.failures.len(), s.checks))
            }
        }
    }
    table.push(format!("overall: {}", if ok { "PASS" } else { "FAIL" }));
    let structured = json!({
        "grid": args.grid,
        "seed": args.seed,
        "fault": args.inject_fault.map(|_| "h-swap"),
        "suites": suites.iter().map(|s| json!({
            "name": s.name,
            "checks": s.checks,
            "passed": s.failures.is_empty(),
            "failures": s.failures,
        })).collect::<Vec<_>>(),
        "passed": ok,
    });
    let stdout = render(args.out, &Conventions::default(), "selftest", &Rendered::new(table, structured));
    Outcome { code: if ok { EXIT_OK } else { EXIT_INCONSISTENT }, stdout, stderr: String::new() }
}

fn contact_suite(grid: usize) -> Suite {
    let mut s = Suite::new("contact certificates and Reeb samples");
    let forms = [
        ("λ0", Ok(ToricContactForm::lambda0())),
        ("ellipse(2,3)", ToricContactForm::ellipse(rat(2, 1), rat(3, 1))),
    ];
    for (label, form) in forms {
        let form = match form.and_then(|f| f.regridded(grid)) {
            Ok(f) => f,
            Err(e) => {
                s.check(false, || format!("{label}: {e}"));
                continue;
            }
        };
        s.check(form.report().ok, || format!("{label}: certificate failed at grid {grid}"));
        for k in 0..4 {
            let theta = k as f64 * PI / 2.0;
            match (reeb_sample(&form, theta), reeb_sample_exact(&form, k)) {
                (Ok(num), Ok(exact)) => {
                    let (a1, a2) = form.a(theta);
                    let lambda_r = a1 * num.vx + a2 * num.vy;
                    s.check((lambda_r - 1.0).abs() < 1e-12, || format!("{label}: λ(R) = {lambda_r} at θ = {theta}"));
                    let exact_rx = exact.vx.to_f64().unwrap_or(f64::NAN);
                    s.check((exact_rx - num.vx).abs() < 1e-12, || format!("{label}: exact and float Reeb fields differ at θ = {theta}"));
                }
                (a, b) => s.check(false, || format!("{label}: Reeb sample failed: {a:?} {b:?}")),
            }
        }
    }
    let mut bad = ToricContactForm::new(TrigPoly::constant(rat(1, 1)), TrigPoly::constant(rat(1, 1)));
    if let Ok(f) = &bad {
        bad = f.regridded(grid);
    }
    s.check(bad.is_err(), || "constant form accepted as contact".to_string());
    s
}

fn census_suite(grid: usize) -> Suite {
    let mut s = Suite::new("census against the flow oracle");
    let cutoff = 20.0;
    let form = match ToricContactForm::lambda0().regridded(grid) {
        Ok(f) => f,
        Err(e) => {
            s.check(false, || e.to_string());
            return s;
        }
    };
    let census = match bourgeois_census(&form, cutoff) {
        Ok(c) => c,
        Err(e) => {
            s.check(false, || e.to_string());
            return s;
        }
    };
    let mut expected = 0;
    for m in -4i64..=4 {
        for n in -4i64..=4 {
            if complete_sl3(0, m, n).is_ok() && 2.0 * PI * ((m * m + n * n) as f64).sqrt() < cutoff {
                expected += 1;
            }
        }
    }
    s.check(census.families().len() == expected, || {
        format!("{} families at L = {cutoff}, lattice count {expected}", census.families().len())
    });
    s.check(census.orbits().len() == 2 * census.families().len(), || "orbit count is not twice the family count".into());
    for fam in census.families() {
        match numeric_flow_oracle(&form, fam.theta0, cutoff) {
            Ok(closures) => {
                let first = closures.first();
                s.check(
                    first.is_some_and(|c| c.class == fam.class && (c.period - fam.action).abs() < 1e-9),
                    || format!("family {}: oracle gave {first:?}", fam.class),
                );
            }
            Err(e) => s.check(false, || e.to_string()),
        }
        s.check(fam.rotation_sign == Sign::Positive, || format!("family {} has sign {}", fam.class, fam.rotation_sign));
    }
    s
}

fn random_class(rng: &mut ChaCha8Rng) -> EchZeroClass {
    EchZeroClass::new(rng.gen(), rng.gen(), rng.gen())
}

fn ech_suite(rng: &mut ChaCha8Rng, fault: Option<Fault>) -> Suite {
    let mut s = Suite::new("ECH group laws and naturality");
    for _ in 0..200 {
        let v = OrbitClass::new(rng.gen_range(-40..=40), rng.gen_range(-40..=40));
        let w = OrbitClass::new(rng.gen_range(-40..=40), rng.gen_range(-40..=40));
        s.check(h_class(v + w) == h_class(v) + h_class(w), || format!("h not additive at {v}, {w}"));
        s.check(h_class(-v) == h_class(v), || format!("h(−v) ≠ h(v) at {v}"));
        let (r, t) = (rng.gen_range(-30..=30), rng.gen_range(-30..=30));
        let (c, d) = (random_class(rng), random_class(rng));
        match (complete_sl3(1, r, t), complete_sl3(1, -r, -t)) {
            (Ok(f), Ok(inv)) => {
                let act = |g: &TorusDiffeo, x| act_contactomorphism(g, x);
                let lhs = act(&f, c + d);
                let rhs = act(&f, c).and_then(|a| act(&f, d).map(|b| a + b));
                s.check(lhs.is_ok() && lhs == rhs, || format!("f_{{1,{r},{t}}} not linear"));
                let back = act(&f, c).and_then(|a| act(&inv, a));
                s.check(back == Ok(c), || format!("f_{{1,{r},{t}}} not inverted by f_{{1,{},{}}}", -r, -t));
                s.check(act(&f, contact_invariant()) == Ok(contact_invariant()), || "contact invariant moved".into());
            }
            _ => s.check(false, || format!("completion of (1,{r},{t}) failed")),
        }
    }

    // the θ̄ coordinate of f(h(v)) is r·v1 + s·v2 under the recorded identification
    let recorded = Conventions::default().h_identification;
    let samples = 200;
    for i in 0..samples {
        let live = match fault {
            Some(Fault::HSwap) if i >= samples / 2 => recorded.swapped(),
            _ => recorded,
        };
        let v = OrbitClass::new(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
        let (r, t) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
        let (first, second) = match recorded {
            HIdentification::E1ToX => (v.m, v.n),
            HIdentification::E1ToY => (v.n, v.m),
        };
        let expected = (r * first + t * second).rem_euclid(2) == 1;
        let got = complete_sl3(1, r, t)
            .ok()
            .and_then(|f| act_contactomorphism(&f, h_class_with(v, live)).ok())
            .map(|c| c.theta_bar);
        s.check(got == Some(expected), || format!("naturality fails for v = {v}, (r,s) = ({r},{t})"));
    }
    let triple = gr_from_surgeries(true, true, true);
    s.check(triple.as_class() == contact_invariant(), || format!("Gr_L(A) from (1,1,1) is {}", triple.as_class()));
    s
}

fn surgery_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite::new("surgery algebra, Gromov recovery and SL3 completion");
    for p in -4i64..=4 {
        for r in -4i64..=4 {
            for t in -4i64..=4 {
                match complete_sl3(p, r, t) {
                    Ok(f) => {
                        s.check((f.p(), f.r(), f.s()) == (p, r, t), || format!("completion of ({p},{r},{t}) has wrong θ̄ row"));
                        let swl = LocalTorusInvariant {
                            a: rng.gen_range(-20..=20),
                            b: rng.gen_range(-20..=20),
                            c: rng.gen_range(-20..=20),
                        };
                        s.check(predict_surgery(&swl, &f) == product_formula(&swl, p, r, t), || {
                            format!("prediction ≠ product formula at ({p},{r},{t}), SW_L = {swl}")
                        });
                    }
                    Err(SurgeryError::NotPrimitive { .. }) => {}
                    Err(e) => s.check(false, || format!("({p},{r},{t}): {e}")),
                }
            }
        }
    }
    for _ in 0..100 {
        let swl = LocalTorusInvariant { a: rng.gen_range(-9..=9), b: rng.gen_range(-9..=9), c: rng.gen_range(-9..=9) };
        let odd = |x: i64| x.rem_euclid(2) == 1;
        let base = odd(product_formula(&swl, 1, 0, 0));
        let eqs: Vec<GromovEquation> = [(1, 0), (0, 1), (rng.gen_range(-5..=5), rng.gen_range(-5..=5))]
            .iter()
            .map(|&(r, t)| GromovEquation { r, s: t, gr_value: odd(product_formula(&swl, 1, r, t)) })
            .collect();
        let expected = GromovSolution::Unique { a: odd(swl.a), b: odd(swl.b) };
        s.check(solve_gromov(base, &eqs) == Ok(expected.clone()), || format!("Gromov recovery failed for SW_L = {swl}"));
    }
    let conflict = [GromovEquation { r: 2, s: 4, gr_value: true }];
    s.check(matches!(solve_gromov(false, &conflict), Err(SurgeryError::Inconsistent(_))), || {
        "even (r,s) with a flipped value not flagged".into()
    });
    s
}

fn index_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite::new("index arithmetic identities");
    let k3 = models::k3();
    s.check(k3.signature() == -16 && k3.b2plus() == 3, || "K3 inertia".into());
    s.check(d_invariant(&k3, &SpinCClass { c1: vec![0; 22] }) == Ok(0), || "K3 canonical d ≠ 0".into());
    for _ in 0..100 {
        let a: Vec<i64> = (0..22).map(|_| rng.gen_range(-3..=3)).collect();
        let v: Vec<i64> = (0..22).map(|_| rng.gen_range(-3..=3)).collect();
        let av: Vec<i64> = a.iter().zip(&v).map(|(x, y)| x + y).collect();
        let (ia, iav) = (ech_index_closed(&k3, &a), ech_index_closed(&k3, &av));
        let rhs = k3.pair(&v, &v).and_then(|vv| k3.pair(&v, &a).map(|va| vv + 2 * va));
        s.check(iav.clone().and_then(|x| ia.clone().map(|y| x - y)) == rhs, || "lift difference identity".into());
        s.check(ia.as_ref().is_ok_and(|i| i.rem_euclid(2) == 0), || "odd index with characteristic K".into());
        let bridge = gr_sw_bridge(&k3, &a);
        s.check(bridge.and_then(|c1| d_invariant(&k3, &c1)) == ia, || "bridge d ≠ I(A)".into());
    }
    let wall = ChamberData { omega_dot_c1: 1.0, mu_term: -2.0 * PI };
    s.check(chamber_side(&wall) == ChamberSide::Wall, || "wall not detected".into());
    s
}

fn document_suite() -> Suite {
    let mut s = Suite::new("document roundtrip and report determinism");
    let mut doc = WorkspaceDocument::default();
    if let Some(spec) = ContactFormSpec::from_form(&ToricContactForm::lambda0()) {
        doc.contact_forms.insert("round".to_string(), spec);
    }
    doc.manifolds.insert(
        "s2xs2".to_string(),
        ManifoldSpec {
            q: vec![vec![0, 1], vec![1, 0]],
            euler: 4,
            signature: 0,
            b2plus: 1,
            k: Some(vec![-2, -2]),
            mv_image_basis: vec![vec![1, -1]],
        },
    );
    doc.sw_tables.insert(
        "local".to_string(),
        SwTable {
            manifold: Some("s2xs2".to_string()),
            entries: vec![
                SwEntry { p: 1, r: 0, s: 0, value: 3, chamber: Some("negative".to_string()) },
                SwEntry { p: 0, r: 1, s: 0, value: 2, chamber: None },
                SwEntry { p: 0, r: 0, s: 1, value: -1, chamber: None },
            ],
        },
    );
    let text = doc.serialize();
    let back = WorkspaceDocument::parse(&text);
    s.check(back.as_ref() == Ok(&doc), || format!("roundtrip changed the document: {back:?}"));
    s.check(back.map(|d| d.serialize()) == Ok(text.clone()), || "re-serialization differs".into());
    s.check(doc.contact_form("round").is_ok(), || "stored λ0 does not rebuild".into());

    let report = || {
        let argv = ["t3ech", "census", "--form", "lambda0", "--cutoff", "20"];
        crate::run(argv)
    };
    let (first, second) = (report(), report());
    s.check(first.code == EXIT_OK && first == second, || "census report is not reproducible".into());
    s
}
