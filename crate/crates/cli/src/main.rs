//! Command-line front end: parse expressions in the supported algebras and
//! series rings, run classification / centralizer computations / identity
//! verification / embedding checks, and print human-readable or JSON reports.
//!
//! Exit codes: 0 = success or verified; 1 = a verification returned false or
//! its mathematical preconditions failed; 2 = usage or expression errors.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use skewcas::field::rat::parse_rational;
use skewcas::field::ratfunc::RatFunc;
use skewcas::parse::{
    elaborate_series, elaborate_weyl, parse, parse_poly1, parse_with_alphabet, print_series,
    print_weyl, Expr, ExprContext,
};
use skewcas::{
    casimir, centralize_deg0, centralize_posdeg, centre_probe, check_ccc_pair, classify_with,
    dp6_table_check, no_nonzero_eigenvalue_check, verify_commutator_expansion,
    verify_eigenspace_factorization, verify_semisimple_uniqueness_weyl, verify_shared_nil,
    AlgebraPresentation, EmbeddingSpec, Poly1, PosdegOutcome, Rational, RingTag, TruncatedSeries,
    WeylLikeElement, DEFAULT_ANSATZ_DEGREE,
};

#[derive(Parser)]
#[command(
    name = "skewcas",
    about = "Exact computer algebra for Weyl-like algebras and skew series rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ContextOpts {
    /// Presented algebra: weyl | qplane | qweyl
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Series ring: A | B | C | E | R
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Parameter λ (quantum plane / rings B and E), as p/q
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Parameter μ (quantum Weyl), as p/q
    #[arg(long, global = true)]
    mu: Option<String>,
    /// Bernstein degree bound for algebra computations
    #[arg(long, global = true, default_value_t = 6)]
    bound: u32,
    /// Retained-exponent window for series computations
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    window: u32,
    /// Machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a non-central element by its inner derivation at the bound
    Classify {
        #[command(flatten)]
        ctx: ContextOpts,
        /// Expression to classify
        expr: String,
        /// Cap on the nil-space exponent (defaults to 2·bound)
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Solve for centralizer elements in a series ring
    Centralize {
        #[command(flatten)]
        ctx: ContextOpts,
        /// The element whose centralizer is probed
        #[arg(long)]
        elem: String,
        /// Constant term for the degree-0 triangular solve
        #[arg(long)]
        a0: Option<String>,
        /// Prescribed degree for the leading-term search
        #[arg(long, allow_negative_numbers = true)]
        target_deg: Option<i64>,
        /// Polynomial-ansatz degree for coefficient unknowns
        #[arg(long, default_value_t = DEFAULT_ANSATZ_DEGREE)]
        ansatz: u32,
    },
    /// Multiply two expressions in the chosen context
    Mul {
        #[command(flatten)]
        ctx: ContextOpts,
        lhs: String,
        rhs: String,
    },
    /// Commutator [lhs, rhs] in the chosen context
    Commutator {
        #[command(flatten)]
        ctx: ContextOpts,
        lhs: String,
        rhs: String,
    },
    /// Verification checks; exit 1 when a check fails
    Verify {
        #[command(subcommand)]
        verb: VerifyVerb,
    },
    /// Image of a word under one of the catalogued embeddings
    Embed {
        #[command(flatten)]
        ctx: ContextOpts,
        #[command(flatten)]
        emb: EmbeddingOpts,
        /// Word over the source generators, e.g. "Y*X + H^2 + H"
        #[arg(long)]
        expr: String,
    },
}

#[derive(Args, Clone)]
struct EmbeddingOpts {
    /// a1 | kleinian | qplane | qweyl | usl2 | uqsl2
    #[arg(long)]
    embedding: String,
    /// Deformation polynomial a(t) for the Kleinian embedding
    #[arg(long)]
    kleinian_poly: Option<String>,
    /// Parameter q for uqsl2, as p/q
    #[arg(long)]
    q: Option<String>,
}

#[derive(Subcommand)]
enum VerifyVerb {
    /// [f(a),b] = Σ (ad a)^i(b)/i! · f^(i)(a), exactly
    Comfab {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long)]
        elem_a: String,
        #[arg(long)]
        elem_b: String,
        #[arg(long)]
        poly: String,
    },
    /// ad f(a) has no nonzero rational eigenvalue at the bound
    NoEigenvalue {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        poly: String,
    },
    /// Commuting elements share their nil spaces at the bound
    SharedNil {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long)]
        elem_a: String,
        #[arg(long)]
        elem_b: String,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// The class table for a ↦ f(a)
    Dp6Table {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        poly: String,
    },
    /// Equal-or-trivial centralizer dichotomy for a pair
    CccPair {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long)]
        elem_a: String,
        #[arg(long)]
        elem_b: String,
    },
    /// Centre probe of a series ring over a degree range
    Centre {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
        deg_lo: i64,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        deg_hi: i64,
        #[arg(long, default_value_t = DEFAULT_ANSATZ_DEGREE)]
        ansatz: u32,
    },
    /// Defining relations of an embedding map to exact identities
    Relations {
        #[command(flatten)]
        ctx: ContextOpts,
        #[command(flatten)]
        emb: EmbeddingOpts,
    },
    /// D(a,λ) = C(a)p = pC(a) on sampled centralizer elements
    EigenspaceFactorization {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long)]
        elem_a: String,
        #[arg(long)]
        p: String,
        /// Eigenvalue λ as an expression in the coefficient field
        #[arg(long)]
        eig: String,
        /// Centralizer samples (repeatable)
        #[arg(long = "c")]
        samples: Vec<String>,
    },
    /// Common eigenvector forces b ∈ K*a + Z(A)
    SemisimpleUniqueness {
        #[command(flatten)]
        ctx: ContextOpts,
        #[arg(long)]
        elem_a: String,
        #[arg(long)]
        elem_b: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        eig_a: String,
        #[arg(long)]
        eig_b: String,
    },
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Report {
    command: String,
    context: String,
    #[serde(rename = "bound-or-window")]
    bound_or_window: u32,
    verdict: String,
    witnesses: Vec<String>,
    caveats: Vec<String>,
}

impl Report {
    fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).expect("serializable"));
        } else {
            println!("command: {}", self.command);
            println!("context: {}", self.context);
            println!("bound/window: {}", self.bound_or_window);
            println!("verdict: {}", self.verdict);
            for w in &self.witnesses {
                println!("witness: {}", w);
            }
            for c in &self.caveats {
                println!("caveat: {}", c);
            }
        }
    }
}

enum CliErr {
    Usage(String),
    Check(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliErr {
    CliErr::Usage(format!("{}", e))
}

fn check<E: std::fmt::Display>(e: E) -> CliErr {
    CliErr::Check(format!("{}", e))
}

// ---------------------------------------------------------------------------
// Context resolution
// ---------------------------------------------------------------------------

fn parse_param(raw: &Option<String>, what: &str) -> Result<Option<Rational>, CliErr> {
    match raw {
        None => Ok(None),
        Some(s) => parse_rational(s)
            .map(Some)
            .ok_or_else(|| CliErr::Usage(format!("bad rational for {}: '{}'", what, s))),
    }
}

fn algebra_of(ctx: &ContextOpts) -> Result<AlgebraPresentation, CliErr> {
    let name = ctx.algebra.as_deref().unwrap_or("weyl");
    let lambda = parse_param(&ctx.lambda, "--lambda")?;
    let mu = parse_param(&ctx.mu, "--mu")?;
    match name {
        "weyl" => Ok(AlgebraPresentation::Weyl),
        "qplane" => {
            let l = lambda.ok_or_else(|| CliErr::Usage("qplane needs --lambda".into()))?;
            AlgebraPresentation::quantum_plane(l).map_err(usage)
        }
        "qweyl" => {
            let m = mu.ok_or_else(|| CliErr::Usage("qweyl needs --mu".into()))?;
            AlgebraPresentation::quantum_weyl(m).map_err(usage)
        }
        other => Err(CliErr::Usage(format!("unknown algebra '{}'", other))),
    }
}

fn ring_of(ctx: &ContextOpts) -> Result<RingTag, CliErr> {
    let name = ctx
        .ring
        .as_deref()
        .ok_or_else(|| CliErr::Usage("this command needs --ring".into()))?;
    let lambda = parse_param(&ctx.lambda, "--lambda")?;
    match name {
        "A" => Ok(RingTag::skew_a()),
        "B" => {
            let l = lambda.ok_or_else(|| CliErr::Usage("ring B needs --lambda".into()))?;
            RingTag::skew_b(l).map_err(usage)
        }
        "C" => Ok(RingTag::skew_c()),
        "E" => {
            let l = lambda.ok_or_else(|| CliErr::Usage("ring E needs --lambda".into()))?;
            RingTag::skew_e(l).map_err(usage)
        }
        "R" => Ok(RingTag::pdiff_r()),
        other => Err(CliErr::Usage(format!("unknown ring '{}'", other))),
    }
}

fn context_name(ctx: &ContextOpts) -> String {
    if let Some(r) = &ctx.ring {
        match (&ctx.lambda, r.as_str()) {
            (Some(l), "B") | (Some(l), "E") => format!("ring {}[{}]", r, l),
            _ => format!("ring {}", r),
        }
    } else {
        let a = ctx.algebra.as_deref().unwrap_or("weyl");
        match a {
            "qplane" => format!("qplane[{}]", ctx.lambda.as_deref().unwrap_or("?")),
            "qweyl" => format!("qweyl[{}]", ctx.mu.as_deref().unwrap_or("?")),
            _ => a.to_string(),
        }
    }
}

fn weyl_expr(ctx: &ContextOpts, input: &str) -> Result<WeylLikeElement, CliErr> {
    let pres = algebra_of(ctx)?;
    let e = parse(input, &ExprContext::Algebra(pres.clone())).map_err(usage)?;
    elaborate_weyl(&e, &pres).map_err(usage)
}

fn series_expr(ctx: &ContextOpts, input: &str) -> Result<TruncatedSeries, CliErr> {
    let ring = ring_of(ctx)?;
    let e = parse(input, &ExprContext::Ring(ring.clone(), ctx.window)).map_err(usage)?;
    elaborate_series(&e, &ring, ctx.window).map_err(usage)
}

/// Coefficient-field element given as an expression of series degree 0.
fn coeff_expr(ctx: &ContextOpts, input: &str) -> Result<RatFunc, CliErr> {
    let s = series_expr(ctx, input)?;
    for (e, _) in s.terms() {
        if *e != 0 {
            return Err(CliErr::Usage(format!(
                "'{}' is not a coefficient-field element",
                input
            )));
        }
    }
    s.coeff(0)
        .ok_or_else(|| CliErr::Usage("empty coefficient".into()))
}

fn poly_arg(input: &str) -> Result<Poly1, CliErr> {
    parse_poly1(input).map_err(usage)
}

fn embedding_of(opts: &EmbeddingOpts, ctx: &ContextOpts) -> Result<EmbeddingSpec, CliErr> {
    let lambda = parse_param(&ctx.lambda, "--lambda")?;
    let mu = parse_param(&ctx.mu, "--mu")?;
    let q = parse_param(&opts.q, "--q")?;
    match opts.embedding.as_str() {
        "a1" => Ok(EmbeddingSpec::a1_to_a()),
        "kleinian" => {
            let p = opts
                .kleinian_poly
                .as_deref()
                .ok_or_else(|| CliErr::Usage("kleinian needs --kleinian-poly".into()))?;
            Ok(EmbeddingSpec::kleinian_to_a(poly_arg(p)?))
        }
        "qplane" => {
            let l = lambda.ok_or_else(|| CliErr::Usage("qplane needs --lambda".into()))?;
            EmbeddingSpec::qplane_to_b(l).map_err(usage)
        }
        "qweyl" => {
            let m = mu.ok_or_else(|| CliErr::Usage("qweyl needs --mu".into()))?;
            EmbeddingSpec::qweyl_to_b(m).map_err(usage)
        }
        "usl2" => Ok(EmbeddingSpec::usl2_to_c()),
        "uqsl2" => {
            let qq = q.ok_or_else(|| CliErr::Usage("uqsl2 needs --q".into()))?;
            EmbeddingSpec::uqsl2_to_e(qq).map_err(usage)
        }
        other => Err(CliErr::Usage(format!("unknown embedding '{}'", other))),
    }
}

/// Evaluate a parsed word over the embedding's generator images.
fn eval_embed(
    spec: &EmbeddingSpec,
    e: &Expr,
    window: u32,
) -> Result<TruncatedSeries, CliErr> {
    match e {
        Expr::Rational(r) => Ok(TruncatedSeries::scalar(
            spec.ring().clone(),
            RatFunc::constant(r.clone(), spec.ring().vars()),
            window,
        )),
        Expr::Symbol(g) => spec.generator_image(*g, window).map_err(check),
        Expr::Neg(i) => Ok(eval_embed(spec, i, window)?.neg()),
        Expr::Add(a, b) => eval_embed(spec, a, window)?
            .add(&eval_embed(spec, b, window)?)
            .map_err(check),
        Expr::Sub(a, b) => eval_embed(spec, a, window)?
            .sub(&eval_embed(spec, b, window)?)
            .map_err(check),
        Expr::Mul(a, b) => eval_embed(spec, a, window)?
            .mul(&eval_embed(spec, b, window)?)
            .map_err(check),
        Expr::Pow(b, k) => eval_embed(spec, b, window)?.pow(*k).map_err(check),
    }
}

fn series_witness(s: &TruncatedSeries) -> String {
    print_series(s).unwrap_or_else(|| format!("{}", s))
}

// ---------------------------------------------------------------------------
// Command dispatch
// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<(Report, bool, bool), CliErr> {
    // returns (report, json, verified)
    match cli.command {
        Command::Classify { ctx, expr, n_max } => {
            let a = weyl_expr(&ctx, &expr)?;
            let n_max = n_max.unwrap_or(2 * ctx.bound);
            let rep = classify_with(&a, ctx.bound, n_max).map_err(check)?;
            let witnesses: Vec<String> = rep
                .eigen_witnesses
                .iter()
                .map(|(l, b)| {
                    format!(
                        "eigenvalue {} : {}",
                        skewcas::field::rat::format_rational(l),
                        print_weyl(b)
                    )
                })
                .collect();
            let mut caveats = rep.caveats.clone();
            caveats.push(format!(
                "centralizer dim {}, nil profile {:?}",
                rep.centralizer_dim, rep.nil_profile
            ));
            Ok((
                Report {
                    command: "classify".into(),
                    context: context_name(&ctx),
                    bound_or_window: ctx.bound,
                    verdict: rep.class.short_name().to_string(),
                    witnesses,
                    caveats,
                },
                ctx.json,
                true,
            ))
        }
        Command::Centralize {
            ctx,
            elem,
            a0,
            target_deg,
            ansatz,
        } => {
            let u = series_expr(&ctx, &elem)?;
            let (verdict, witnesses, caveats) = match (a0, target_deg) {
                (Some(seed), None) => {
                    let a0 = coeff_expr(&ctx, &seed)?;
                    let wit = centralize_deg0(&u, &a0, ctx.window).map_err(check)?;
                    (
                        if wit.commutes_to_window {
                            "commuting-witness".to_string()
                        } else {
                            "residual-left".to_string()
                        },
                        vec![series_witness(&wit.element)],
                        vec!["unique for the given constant term".to_string()],
                    )
                }
                (None, Some(d)) => match centralize_posdeg(&u, d, ctx.window, ansatz)
                    .map_err(check)?
                {
                    PosdegOutcome::Found(wit) => (
                        if wit.commutes_to_window {
                            "commuting-witness".to_string()
                        } else {
                            "residual-left".to_string()
                        },
                        vec![series_witness(&wit.element)],
                        vec![format!("ansatz degree {}", ansatz)],
                    ),
                    PosdegOutcome::Obstructed { order, residual } => (
                        "obstructed".to_string(),
                        Vec::new(),
                        vec![format!("order {}: {}", order, residual)],
                    ),
                },
                _ => {
                    return Err(CliErr::Usage(
                        "pass exactly one of --a0 (degree-0 solve) or --target-deg".into(),
                    ))
                }
            };
            Ok((
                Report {
                    command: "centralize".into(),
                    context: context_name(&ctx),
                    bound_or_window: ctx.window,
                    verdict,
                    witnesses,
                    caveats,
                },
                ctx.json,
                true,
            ))
        }
        Command::Mul { .. } | Command::Commutator { .. } => {
            unreachable!("products are dispatched in main")
        }
        Command::Verify { verb } => run_verify(verb),
        Command::Embed { ctx, emb, expr } => {
            let spec = embedding_of(&emb, &ctx)?;
            let e = parse_with_alphabet(&expr, &spec.generators()).map_err(usage)?;
            let img = eval_embed(&spec, &e, ctx.window)?;
            Ok((
                Report {
                    command: "embed".into(),
                    context: spec.label(),
                    bound_or_window: ctx.window,
                    verdict: "image".into(),
                    witnesses: vec![format!("{}", img)],
                    caveats: vec![],
                },
                ctx.json,
                true,
            ))
        }
    }
}

fn run_verify(verb: VerifyVerb) -> Result<(Report, bool, bool), CliErr> {
    let (ctx, name, verdict, witnesses, caveats): (ContextOpts, &str, bool, Vec<String>, Vec<String>) =
        match verb {
            VerifyVerb::Comfab {
                ctx,
                elem_a,
                elem_b,
                poly,
            } => {
                let a = weyl_expr(&ctx, &elem_a)?;
                let b = weyl_expr(&ctx, &elem_b)?;
                let f = poly_arg(&poly)?;
                let ok = verify_commutator_expansion(&a, &b, &f).map_err(check)?;
                (ctx, "verify comfab", ok, vec![], vec![])
            }
            VerifyVerb::NoEigenvalue { ctx, elem, poly } => {
                let a = weyl_expr(&ctx, &elem)?;
                let f = poly_arg(&poly)?;
                let ok = no_nonzero_eigenvalue_check(&a, &f, ctx.bound).map_err(check)?;
                (ctx, "verify no-eigenvalue", ok, vec![], vec![])
            }
            VerifyVerb::SharedNil {
                ctx,
                elem_a,
                elem_b,
                n_max,
            } => {
                let a = weyl_expr(&ctx, &elem_a)?;
                let b = weyl_expr(&ctx, &elem_b)?;
                let n_max = n_max.unwrap_or(ctx.bound);
                let ok = verify_shared_nil(&a, &b, ctx.bound, n_max).map_err(check)?;
                (ctx, "verify shared-nil", ok, vec![], vec![])
            }
            VerifyVerb::Dp6Table { ctx, elem, poly } => {
                let a = weyl_expr(&ctx, &elem)?;
                let f = poly_arg(&poly)?;
                let rep = dp6_table_check(&a, &f, ctx.bound).map_err(check)?;
                let ok = rep.table_consistent.unwrap_or(false);
                let wit = vec![format!(
                    "{} -> {}",
                    rep.input_class.short_name(),
                    rep.output_class.short_name()
                )];
                (ctx, "verify dp6-table", ok, wit, rep.caveats)
            }
            VerifyVerb::CccPair { ctx, elem_a, elem_b } => {
                let a = weyl_expr(&ctx, &elem_a)?;
                let b = weyl_expr(&ctx, &elem_b)?;
                let rep = check_ccc_pair(&a, &b, ctx.bound).map_err(check)?;
                let ok = rep.dichotomy_consistent
                    && rep.centralizer_a_commutative
                    && rep.centralizer_b_commutative;
                (ctx, "verify ccc-pair", ok, vec![rep.details.clone()], vec![])
            }
            VerifyVerb::Centre {
                ctx,
                deg_lo,
                deg_hi,
                ansatz,
            } => {
                let ring = ring_of(&ctx)?;
                let rep = centre_probe(&ring, deg_lo, deg_hi, ctx.window, ansatz)
                    .map_err(check)?;
                let expected = match ring.vars() {
                    skewcas::VarSet::HC => rep.is_exactly_kc(),
                    _ => rep.is_exactly_constants(),
                };
                let witnesses = rep
                    .degrees
                    .iter()
                    .filter(|(_, b)| !b.is_empty())
                    .map(|(d, b)| {
                        let names: Vec<String> = b.iter().map(|f| format!("{}", f)).collect();
                        format!("degree {}: span{{ {} }}", d, names.join(", "))
                    })
                    .collect();
                (
                    ctx,
                    "verify centre",
                    expected,
                    witnesses,
                    vec![format!("ansatz degree {}", ansatz)],
                )
            }
            VerifyVerb::Relations { ctx, emb } => {
                let spec = embedding_of(&emb, &ctx)?;
                let mut ok = spec.verify_relations(ctx.window).map_err(check)?;
                let mut witnesses = vec![spec.label()];
                let mut caveats = Vec::new();
                // the Casimir accompanies the enveloping-algebra embeddings
                if matches!(
                    spec.name,
                    skewcas::EmbeddingName::Usl2ToC | skewcas::EmbeddingName::Uqsl2ToE(_)
                ) {
                    let cas = casimir(&spec, ctx.window).map_err(check)?;
                    let mut central = cas.image.coeff(0).is_some_and(|c| {
                        c == RatFunc::var_c()
                    });
                    for g in spec.generators() {
                        let img = spec.generator_image(g, ctx.window).map_err(check)?;
                        central &= cas
                            .image
                            .commutator(&img)
                            .map_err(check)?
                            .is_zero_within_window();
                    }
                    witnesses.push(format!("casimir {} -> C", cas.expression));
                    if !central {
                        caveats.push("casimir image is not central".into());
                    }
                    ok &= central;
                }
                return Ok((
                    Report {
                        command: "verify relations".into(),
                        context: spec.label(),
                        bound_or_window: ctx.window,
                        verdict: verdict_str(ok),
                        witnesses,
                        caveats,
                    },
                    ctx.json,
                    ok,
                ));
            }
            VerifyVerb::EigenspaceFactorization {
                ctx,
                elem_a,
                p,
                eig,
                samples,
            } => {
                let a = series_expr(&ctx, &elem_a)?;
                let pp = series_expr(&ctx, &p)?;
                let lam = coeff_expr(&ctx, &eig)?;
                let cs: Result<Vec<TruncatedSeries>, CliErr> =
                    samples.iter().map(|s| series_expr(&ctx, s)).collect();
                let ok = verify_eigenspace_factorization(&a, &pp, &lam, &cs?).map_err(check)?;
                (ctx, "verify eigenspace-factorization", ok, vec![], vec![])
            }
            VerifyVerb::SemisimpleUniqueness {
                ctx,
                elem_a,
                elem_b,
                p,
                eig_a,
                eig_b,
            } => {
                let la = parse_rational(&eig_a)
                    .ok_or_else(|| CliErr::Usage("bad --eig-a".into()))?;
                let lb = parse_rational(&eig_b)
                    .ok_or_else(|| CliErr::Usage("bad --eig-b".into()))?;
                if ctx.ring.is_some() {
                    let a = series_expr(&ctx, &elem_a)?;
                    let b = series_expr(&ctx, &elem_b)?;
                    let pp = series_expr(&ctx, &p)?;
                    let vars = a.ring().vars();
                    let ok = skewcas::verify_semisimple_uniqueness_series(
                        &a,
                        &b,
                        &pp,
                        &RatFunc::constant(la, vars),
                        &RatFunc::constant(lb, vars),
                    )
                    .map_err(check)?;
                    (ctx, "verify semisimple-uniqueness", ok, vec![], vec![])
                } else {
                    let a = weyl_expr(&ctx, &elem_a)?;
                    let b = weyl_expr(&ctx, &elem_b)?;
                    let pp = weyl_expr(&ctx, &p)?;
                    let ok = verify_semisimple_uniqueness_weyl(&a, &b, &pp, &la, &lb)
                        .map_err(check)?;
                    (ctx, "verify semisimple-uniqueness", ok, vec![], vec![])
                }
            }
        };
    let bw = if ctx.ring.is_some() { ctx.window } else { ctx.bound };
    Ok((
        Report {
            command: name.into(),
            context: context_name(&ctx),
            bound_or_window: bw,
            verdict: verdict_str(verdict),
            witnesses,
            caveats,
        },
        ctx.json,
        verdict,
    ))
}

fn verdict_str(ok: bool) -> String {
    if ok { "verified".into() } else { "failed".into() }
}

fn main() {
    let cli = Cli::parse();
    // mul/commutator share almost everything; handle them before dispatch
    let code = match cli.command {
        Command::Mul { ctx, lhs, rhs } => run_product(ctx, lhs, rhs, false),
        Command::Commutator { ctx, lhs, rhs } => run_product(ctx, lhs, rhs, true),
        other => match run(Cli { command: other }) {
            Ok((report, json, verified)) => {
                report.print(json);
                if verified {
                    0
                } else {
                    1
                }
            }
            Err(CliErr::Usage(msg)) => {
                eprintln!("error: {}", msg);
                2
            }
            Err(CliErr::Check(msg)) => {
                eprintln!("verification error: {}", msg);
                1
            }
        },
    };
    std::process::exit(code);
}

fn run_product(ctx: ContextOpts, lhs: String, rhs: String, comm: bool) -> i32 {
    let name = if comm { "commutator" } else { "mul" };
    let result: Result<(String, u32), CliErr> = if ctx.ring.is_some() {
        (|| {
            let a = series_expr(&ctx, &lhs)?;
            let b = series_expr(&ctx, &rhs)?;
            let r = if comm {
                a.commutator(&b).map_err(check)?
            } else {
                a.mul(&b).map_err(check)?
            };
            Ok((format!("{}", r), ctx.window))
        })()
    } else {
        (|| {
            let a = weyl_expr(&ctx, &lhs)?;
            let b = weyl_expr(&ctx, &rhs)?;
            let r = if comm {
                a.commutator(&b).map_err(check)?
            } else {
                a.mul(&b).map_err(check)?
            };
            Ok((print_weyl(&r), ctx.bound))
        })()
    };
    match result {
        Ok((text, bw)) => {
            let report = Report {
                command: name.into(),
                context: context_name(&ctx),
                bound_or_window: bw,
                verdict: "ok".into(),
                witnesses: vec![text],
                caveats: vec![],
            };
            report.print(ctx.json);
            0
        }
        Err(CliErr::Usage(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
        Err(CliErr::Check(msg)) => {
            eprintln!("verification error: {}", msg);
            1
        }
    }
}
