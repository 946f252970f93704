use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tambara::input::{load_context, load_group, load_gset, load_map, parse_elements};
use tambara::output::{list, Format, Output};
use tambara::{encode, exit, exit_code_for, random};
use tambara_core::exponential::{
    dependent_product_with_cap, is_exponential, pasting_distributive, pasting_functorial, pasting_pullback,
};
use tambara_core::green::{check_distinct, polynomial_top_norms, constant_top_obstruction};
use tambara_core::group::{all_subgroups, conj_classes, GroupRef, Subgroup};
use tambara_core::gset::{make_orbit, pullback, GSet};
use tambara_core::mackey::table_isos;
use tambara_core::tambara::{
    component_label, ft0_iso, ft1_iso, ft_basis, ft_basis_up_to, ft_ranks, restriction_compat, verify_semi_tambara,
    Corrupted, FreeTambara, GradedIso, DEFAULT_MAX_DEGREE,
};
use tambara_core::tnr::{evaluate, parse, typecheck};
use tambara_core::xi::{family_fgn, xi_naturality_all, xi_surjectivity};
use tambara_core::Limits;

/// Exit codes: 0 success, 1 verification failure, 2 input error,
/// 3 resource bound exceeded.
#[derive(Parser, Debug)]
#[command(name = "tambara", version, about = "Free Tambara functors and bispans over finite groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

/// Resource caps; each can also be set through its environment variable.
#[derive(Args, Debug)]
struct Caps {
    #[arg(long, global = true, env = "TAMBARA_SECTION_CAP")]
    section_cap: Option<usize>,
    #[arg(long, global = true, env = "TAMBARA_SYM_DEGREE_CAP")]
    sym_degree_cap: Option<usize>,
    #[arg(long, global = true, env = "TAMBARA_EXPONENTIAL_CAP")]
    exponential_cap: Option<usize>,
    #[arg(long, global = true, env = "TAMBARA_ENUMERATION_CAP")]
    enumeration_cap: Option<usize>,
    #[arg(long, global = true, env = "TAMBARA_COEFFICIENT_CAP")]
    coefficient_cap: Option<usize>,
}

impl Caps {
    fn limits(&self) -> anyhow::Result<Limits> {
        let mut l = Limits::default();
        for (value, slot) in [
            (self.section_cap, &mut l.section_cap),
            (self.sym_degree_cap, &mut l.sym_degree_cap),
            (self.exponential_cap, &mut l.exponential_cap),
            (self.enumeration_cap, &mut l.enumeration_cap),
            (self.coefficient_cap, &mut l.coefficient_cap),
        ] {
            if let Some(v) = value {
                if v == 0 {
                    bail!("resource caps must be positive");
                }
                *slot = v;
            }
        }
        Ok(l)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite groups given by multiplication tables or builtin names.
    #[command(subcommand)]
    Group(GroupCmd),
    /// G-sets, pullbacks and dependent products.
    #[command(subcommand)]
    Gset(GsetCmd),
    /// Free Tambara functors on represented functors.
    #[command(subcommand)]
    Tambara(TambaraCmd),
    /// Comparison maps indexed by graph subgroups of G x S_n.
    #[command(subcommand)]
    Xi(XiCmd),
    /// Truncated polynomial Green functors over C_p.
    #[command(subcommand)]
    Green(GreenCmd),
    /// Transfer/norm/restriction expressions.
    #[command(subcommand)]
    Tnr(TnrCmd),
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Checks the group axioms.
    Validate { group: String },
    /// Lists all subgroups and their conjugacy classes.
    Subgroups { group: String },
}

#[derive(Subcommand, Debug)]
enum GsetCmd {
    /// Validates a G-set and lists its orbits.
    Orbits {
        gset: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// Pullback of two maps with a common target.
    Pullback {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// Dependent product of `i: X -> Y` and `j: Y -> Z`.
    Depprod {
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        j: PathBuf,
        #[arg(long)]
        group: Option<String>,
    },
    /// Checks dependent products and the pasting lemmas on random instances.
    CheckLemmas {
        #[arg(long, default_value = "C2")]
        group: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct TSet {
    /// The generating G-set T.
    #[arg(long)]
    t: PathBuf,
    /// Group for G-set files that do not name one.
    #[arg(long)]
    group: Option<String>,
}

impl TSet {
    fn load(&self) -> anyhow::Result<GSet> {
        let g = self.group.as_deref().map(load_group).transpose()?;
        load_gset(&self.t, g.as_ref())
    }
}

#[derive(Subcommand, Debug)]
enum TambaraCmd {
    /// Basis of F_T(X) in one degree, or up to the degree bound.
    Basis {
        #[command(flatten)]
        t: TSet,
        /// Evaluation G-set; defaults to a point.
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(short = 'n', long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// Ranks of F_T(G/K) per orbit and degree.
    Ranks {
        #[command(flatten)]
        t: TSet,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// Verifies the semi-Tambara axioms on all G-sets of size at most k.
    Verify {
        #[command(flatten)]
        t: TSet,
        #[arg(short = 'k', long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// Verify a deliberately broken structure instead.
        #[arg(long)]
        corrupt: bool,
    },
    /// Burnside functor is isomorphic to the degree-0 part.
    Iso0 {
        #[command(flatten)]
        t: TSet,
    },
    /// Represented functor is isomorphic to the degree-1 part.
    Iso1 {
        #[command(flatten)]
        t: TSet,
    },
    /// Compatibility of F_T with restriction to a subgroup.
    ResCompat {
        #[command(flatten)]
        t: TSet,
        /// Subgroup elements, comma separated.
        #[arg(long)]
        subgroup: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
}

#[derive(Args, Debug)]
struct XiArgs {
    #[arg(short = 'n', long = "n", default_value_t = 2)]
    n: usize,
    #[arg(long, default_value = "C2")]
    group: String,
    /// The G-set T; defaults to the free orbit.
    #[arg(long)]
    t: Option<PathBuf>,
}

impl XiArgs {
    fn load(&self) -> anyhow::Result<(GroupRef, GSet)> {
        let g = load_group(&self.group)?;
        let t = match &self.t {
            Some(p) => load_gset(p, Some(&g))?,
            None => make_orbit(&g, &Subgroup::trivial(&g))?,
        };
        Ok((t.group().clone(), t))
    }
}

#[derive(Subcommand, Debug)]
enum XiCmd {
    /// Lists the graph subgroups of G x S_n.
    Family {
        #[command(flatten)]
        args: XiArgs,
    },
    /// Naturality of the comparison maps along every connecting map.
    Check {
        #[command(flatten)]
        args: XiArgs,
        /// Drop the permutation from the comparison formula.
        #[arg(long)]
        corrupt: bool,
    },
    /// Surjectivity witnesses for the degree-n basis at G/G.
    Surjectivity {
        #[command(flatten)]
        args: XiArgs,
    },
}

#[derive(Subcommand, Debug)]
enum GreenCmd {
    /// Exhaustive search for a norm on the Frobenius-type presentation.
    Obstruct {
        #[arg(short = 'p', long)]
        p: u32,
        /// Degree cap; defaults to p.
        #[arg(short = 'D', long)]
        degree_cap: Option<u32>,
    },
    /// All norm structures on the presentation with s variables.
    Enumerate {
        #[arg(short = 'p', long)]
        p: u32,
        #[arg(short = 's', long, default_value_t = 2)]
        s: usize,
        #[arg(short = 'D', long)]
        degree_cap: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum TnrCmd {
    /// Evaluates an expression; reads stdin when no expression is given.
    Eval {
        #[arg(long)]
        ctx: PathBuf,
        expr: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.caps.limits().and_then(|limits| run(&cli.command, &limits));
    match result.and_then(|out| Ok((out.render(cli.format)?, out.ok))) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(exit::INPUT_ERROR);
            }
            if !ok {
                eprintln!("verification failed");
                return ExitCode::from(exit::VERIFICATION_FAILED);
            }
            ExitCode::from(exit::OK)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e
                .chain()
                .find_map(|c| c.downcast_ref::<tambara_core::Error>())
                .map(exit_code_for)
                .unwrap_or(exit::INPUT_ERROR);
            ExitCode::from(code)
        }
    }
}

fn run(cmd: &Command, limits: &Limits) -> anyhow::Result<Output> {
    match cmd {
        Command::Group(c) => group_cmd(c),
        Command::Gset(c) => gset_cmd(c, limits),
        Command::Tambara(c) => tambara_cmd(c, limits),
        Command::Xi(c) => xi_cmd(c, limits),
        Command::Green(c) => green_cmd(c, limits),
        Command::Tnr(c) => tnr_cmd(c, limits),
    }
}

fn opt_group(g: &Option<String>) -> anyhow::Result<Option<GroupRef>> {
    g.as_deref().map(load_group).transpose()
}

fn group_cmd(cmd: &GroupCmd) -> anyhow::Result<Output> {
    match cmd {
        GroupCmd::Validate { group } => {
            let g = load_group(group)?;
            let abelian = g.elements().all(|a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)));
            Ok(Output::new(json!({ "valid": true, "order": g.order(), "abelian": abelian }), &["valid", "order", "abelian"])
                .row([true.to_string(), g.order().to_string(), abelian.to_string()]))
        }
        GroupCmd::Subgroups { group } => {
            let g = load_group(group)?;
            let subs = all_subgroups(&g);
            let classes = conj_classes(&g);
            let class_of = |s: &Subgroup| classes.iter().position(|c| c.members.contains(s)).unwrap_or(usize::MAX);
            let mut out = Output::new(
                json!({
                    "count": subs.len(),
                    "subgroups": subs.iter().map(|s| s.elements()).collect::<Vec<_>>(),
                    "classes": classes.iter().map(|c| c.members.iter().map(|m| m.elements()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
                &["index", "order", "class", "elements"],
            );
            for (i, s) in subs.iter().enumerate() {
                out.push([i.to_string(), s.order().to_string(), class_of(s).to_string(), list(s.elements())]);
            }
            Ok(out)
        }
    }
}

fn gset_cmd(cmd: &GsetCmd, limits: &Limits) -> anyhow::Result<Output> {
    match cmd {
        GsetCmd::Orbits { gset, group } => {
            let x = load_gset(gset, opt_group(group)?.as_ref())?;
            let orbits = x.orbit_decompose();
            let mut out = Output::new(
                json!({
                    "size": x.size(),
                    "orbits": orbits.iter().map(|o| json!({
                        "points": o.points,
                        "representative": o.representative,
                        "stabilizer": o.stabilizer.elements(),
                    })).collect::<Vec<_>>(),
                }),
                &["representative", "stabilizer", "points"],
            );
            for o in &orbits {
                out.push([o.representative.to_string(), list(o.stabilizer.elements()), list(&o.points)]);
            }
            Ok(out)
        }
        GsetCmd::Pullback { f, g, group } => {
            let grp = opt_group(group)?;
            let (f, g) = (load_map(f, grp.as_ref())?, load_map(g, grp.as_ref())?);
            let pb = pullback(&f, &g)?;
            let mut out = Output::new(
                json!({ "object": encode::gset(&pb.object), "left": pb.left.values(), "right": pb.right.values() }),
                &["point", "left", "right"],
            );
            for p in 0..pb.object.size() {
                out.push([p, pb.left.apply(p), pb.right.apply(p)]);
            }
            Ok(out)
        }
        GsetCmd::Depprod { i, j, group } => {
            let grp = opt_group(group)?;
            let (i, j) = (load_map(i, grp.as_ref())?, load_map(j, grp.as_ref())?);
            let d = dependent_product_with_cap(&i, &j, limits.section_cap)?;
            let mut out = Output::new(encode::diagram(&d), &["point", "z", "section"]);
            for (q, s) in d.sections.iter().enumerate() {
                out.push([q.to_string(), d.p.apply(q).to_string(), list(s)]);
            }
            Ok(out)
        }
        GsetCmd::CheckLemmas { group, count, max_size, seed } => check_lemmas(group, *count, *max_size, *seed, limits),
    }
}

fn check_lemmas(group: &str, count: usize, max_size: usize, seed: u64, limits: &Limits) -> anyhow::Result<Output> {
    let g = load_group(group)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = limits.section_cap;
    let names = ["dependent_product", "pullback", "distributive", "functorial"];
    let mut passed = [0usize; 4];
    let mut failures = Vec::new();
    for n in 0..count {
        let x = random::gset(&g, max_size, &mut rng);
        let i = random::gmap_from(&x, max_size, &mut rng);
        let j = random::gmap_from(i.target(), max_size, &mut rng);
        let k = random::gmap_from(j.target(), max_size, &mut rng);
        let w = random::gset(&g, max_size, &mut rng);
        let kw = random::gmap(&w, j.target(), &mut rng);
        let d = dependent_product_with_cap(&i, &j, cap)?;
        let results = [
            is_exponential(&d.e, &d.a_to_pi, &d.p, &i, &j, cap)?.is_some(),
            match kw {
                Some(kw) => pasting_pullback(&i, &j, &kw, cap)?.is_some(),
                None => pasting_pullback(&i, &j, &pullback(&j, &j)?.left.then(&j)?, cap)?.is_some(),
            },
            pasting_distributive(&i, &j, &k, cap)?.is_some(),
            pasting_functorial(&i, &j, &k, cap)?.is_some(),
        ];
        for (l, ok) in results.iter().enumerate() {
            if *ok {
                passed[l] += 1;
            } else {
                failures.push(format!("{} fails on instance {n}", names[l]));
            }
        }
    }
    let mut out = Output::new(
        json!({
            "seed": seed,
            "instances": count,
            "lemmas": names.iter().zip(passed).map(|(n, p)| json!({ "lemma": n, "passed": p })).collect::<Vec<_>>(),
            "failures": failures,
        }),
        &["lemma", "instances", "passed"],
    );
    for (n, p) in names.iter().zip(passed) {
        out.push([n.to_string(), count.to_string(), p.to_string()]);
    }
    let ok = failures.is_empty();
    Ok(out.with_ok(ok))
}

fn report_output(rep: &tambara_core::mackey::Report) -> Output {
    let mut out = Output::new(encode::report(rep), &["passed", "checks", "failure"]);
    if rep.failures.is_empty() {
        out.push([true.to_string(), rep.checks.to_string(), String::new()]);
    }
    for f in &rep.failures {
        out.push([false.to_string(), rep.checks.to_string(), f.clone()]);
    }
    out.with_ok(rep.passed())
}

fn iso_output(iso: &GradedIso) -> Output {
    let ok = iso.map.commutes(&iso.source, &iso.target);
    let unique = table_isos(&iso.source, &iso.target, 2).len() == 1;
    let mut out = Output::new(
        json!({
            "commutes": ok,
            "unique": unique,
            "source": encode::table(&iso.source),
            "target": encode::table(&iso.target),
            "map": encode::table_map(&iso.map),
        }),
        &["level", "subgroup", "rank", "permutation"],
    );
    let perms = iso.map.permutations().unwrap_or_default();
    for (s, l) in iso.source.levels().iter().enumerate() {
        out.push([s.to_string(), list(l.subgroup.elements()), l.rank().to_string(), perms.get(s).map(|p| list(p)).unwrap_or_default()]);
    }
    out.with_ok(ok)
}

fn tambara_cmd(cmd: &TambaraCmd, limits: &Limits) -> anyhow::Result<Output> {
    match cmd {
        TambaraCmd::Basis { t, x, degree, max_degree } => {
            let t = t.load()?;
            let x = match x {
                Some(p) => load_gset(p, Some(t.group()))?,
                None => GSet::point(t.group()),
            };
            let basis = match degree {
                Some(n) => ft_basis(&t, &x, *n, limits)?,
                None => ft_basis_up_to(&t, &x, *max_degree, limits)?,
            };
            let mut out = Output::new(
                json!({ "size": basis.len(), "basis": basis.iter().map(encode::component).collect::<Vec<_>>() }),
                &["index", "degree", "label"],
            );
            for (i, c) in basis.iter().enumerate() {
                out.push([i.to_string(), c.degree().to_string(), component_label(c)]);
            }
            Ok(out)
        }
        TambaraCmd::Ranks { t, max_degree } => {
            let t = t.load()?;
            let ranks = ft_ranks(&t, *max_degree, limits)?;
            let mut header = vec!["subgroup".to_string()];
            header.extend((0..=*max_degree).map(|n| format!("degree_{n}")));
            let mut out = Output::new(
                json!({ "max_degree": max_degree, "levels": ranks.iter().map(|(k, r)| json!({ "subgroup": k.elements(), "ranks": r })).collect::<Vec<_>>() }),
                &[],
            );
            out.header = header;
            for (k, r) in &ranks {
                let mut row = vec![list(k.elements())];
                row.extend(r.iter().map(|v| v.to_string()));
                out.push(row);
            }
            Ok(out)
        }
        TambaraCmd::Verify { t, k, max_degree, corrupt } => {
            let t = t.load()?;
            let ft = FreeTambara::new(&t, *limits);
            let rep = if *corrupt {
                verify_semi_tambara(&Corrupted(ft), *k, *max_degree, limits)?
            } else {
                verify_semi_tambara(&ft, *k, *max_degree, limits)?
            };
            Ok(report_output(&rep))
        }
        TambaraCmd::Iso0 { t } => Ok(iso_output(&ft0_iso(&t.load()?, limits)?)),
        TambaraCmd::Iso1 { t } => Ok(iso_output(&ft1_iso(&t.load()?, limits)?)),
        TambaraCmd::ResCompat { t, subgroup, max_degree } => {
            let t = t.load()?;
            let h = Subgroup::new(t.group(), &parse_elements(subgroup)?)?;
            Ok(report_output(&restriction_compat(&h, &t, *max_degree, limits)?))
        }
    }
}

fn xi_cmd(cmd: &XiCmd, limits: &Limits) -> anyhow::Result<Output> {
    match cmd {
        XiCmd::Family { args } => {
            let (g, _) = args.load()?;
            let fam = family_fgn(&g, args.n, limits)?;
            let mut out = Output::new(
                json!({ "n": args.n, "count": fam.len(), "family": fam.iter().map(encode::phi).collect::<Vec<_>>() }),
                &["h", "phi"],
            );
            for p in &fam {
                let phi: Vec<Vec<usize>> = p.h().elements().iter().map(|&h| p.perm(h).to_vec()).collect();
                out.push([list(p.h().elements()), list(&phi)]);
            }
            Ok(out)
        }
        XiCmd::Check { args, corrupt } => {
            let (_, t) = args.load()?;
            Ok(report_output(&xi_naturality_all(&t, args.n, !corrupt, limits)?))
        }
        XiCmd::Surjectivity { args } => {
            let (_, t) = args.load()?;
            let ws = xi_surjectivity(&t, args.n, limits)?;
            let ok = ws.iter().all(|w| w.verified);
            let mut out = Output::new(
                json!({ "n": args.n, "count": ws.len(), "all_verified": ok, "witnesses": ws.iter().map(encode::xi_witness).collect::<Vec<_>>() }),
                &["component", "h", "phi", "f_prime", "verified"],
            );
            for w in &ws {
                out.push([component_label(&w.component), list(&w.h), list(&w.phi), list(&w.f_prime), w.verified.to_string()]);
            }
            Ok(out.with_ok(ok))
        }
    }
}

fn green_cmd(cmd: &GreenCmd, limits: &Limits) -> anyhow::Result<Output> {
    match cmd {
        GreenCmd::Obstruct { p, degree_cap } => {
            let cert = constant_top_obstruction(*p, degree_cap.unwrap_or(*p), limits)?;
            let mut out = Output::new(encode::certificate(&cert), &["candidate", "restriction", "passes"]);
            for c in &cert.candidates {
                out.push([c.candidate.render(), c.restriction.render(), c.passes.to_string()]);
            }
            let ok = cert.no_structure;
            Ok(out.with_ok(ok))
        }
        GreenCmd::Enumerate { p, s, degree_cap } => {
            let cands = polynomial_top_norms(*p, *s, degree_cap.unwrap_or(*p), limits)?;
            let rep = check_distinct(&cands, *p, *s);
            let mut out = Output::new(
                json!({
                    "p": p,
                    "s": s,
                    "candidates": cands.iter().map(|c| encode::poly(&c.image)).collect::<Vec<_>>(),
                    "distinct": { "count": rep.count, "required": rep.required, "duplicates": rep.duplicates, "certified": rep.distinct },
                }),
                &["index", "norm_of_x"],
            );
            for (i, c) in cands.iter().enumerate() {
                out.push([i.to_string(), c.image.render()]);
            }
            Ok(out.with_ok(rep.distinct))
        }
    }
}

fn tnr_cmd(cmd: &TnrCmd, limits: &Limits) -> anyhow::Result<Output> {
    match cmd {
        TnrCmd::Eval { ctx, expr } => {
            let ctx = load_context(ctx)?;
            let text = match expr {
                Some(e) => e.clone(),
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s).context("reading expression from stdin")?;
                    s
                }
            };
            let e = parse(text.trim())?;
            let level = typecheck(&e, &ctx)?.level;
            let v = evaluate(&e, &ctx, limits)?;
            let mut json = encode::element(&v);
            let obj = json.as_object_mut().ok_or_else(|| anyhow!("element encoding is not an object"))?;
            obj.insert("expression".into(), Value::String(e.to_string()));
            obj.insert("level".into(), Value::String(level));
            let mut out = Output::new(json, &["coefficient", "degree", "component"]);
            for (c, k) in v.multiplicities() {
                out.push([k.to_string(), c.degree().to_string(), component_label(&c)]);
            }
            Ok(out)
        }
    }
}
