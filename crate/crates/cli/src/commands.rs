use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use softplane::algebra::FiniteField;
use softplane::analysis::{full_axial_elations, ideal_checks, noniso_certificate, proposition_battery, ElationCensus, AXIAL_MAX_ORDER};
use softplane::constructions::{decorated_subgroup_search, extend_by_automorphism, Heisenberg, Likeable};
use softplane::converse::{extract_soft_triple, order_feasibility, search_soft_triples, SearchOptions};
use softplane::io::{
    parse_additive, parse_collineations, parse_group, parse_plane, parse_semifield, parse_triple,
    write_collineations, write_group, write_incidence_matrix, write_plane, write_triple, GroupFile,
    StructuredSpec, TripleFile,
};
use softplane::limits::DENSE_MAX_ORDER;
use softplane::plane::{build_plane, coordinatize_ptr, default_quadrilateral, CollineationGroup};
use softplane::soft::{check_conditions, lemma_checks, quadruple_corollary_checks, super_noncommutativity_check, DEFAULT_PAIR_BUDGET};
use softplane::{Group, SoftTriple};

use crate::manifest::RunManifest;
use crate::{AnalyzeArgs, Base, BuildArgs, Command, Construction, ExportFormat, ExtractArgs, OutputArgs, SearchArgs, SearchSub};

/// A malformed argument caught by the command layer.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Runs one command; `Ok(false)` is a mathematical failure already reported.
pub fn run(cmd: Command, argv: Vec<String>) -> Result<bool> {
    match cmd {
        Command::Build(args) => build(args, argv),
        Command::Verify { triple } => verify(&triple),
        Command::Analyze(args) => analyze(args),
        Command::Extract(args) => extract(args, argv),
        Command::Search(args) => search(args, argv),
        Command::Feasible { n, json } => feasible(n, json),
        Command::Export { plane, format, output } => export(&plane, format, output, argv),
    }
}

fn parse_alpha(alpha: &str) -> Result<u32> {
    let e = alpha
        .strip_prefix("frobenius")
        .ok_or_else(|| usage(format!("automorphism `{alpha}`: expected frobenius^e")))?;
    if e.is_empty() {
        return Ok(1);
    }
    e.strip_prefix('^')
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| usage(format!("automorphism `{alpha}`: expected frobenius^e")))
}

struct Outputs {
    dir: PathBuf,
    stem: String,
    manifest: RunManifest,
}

impl Outputs {
    fn new(args: &OutputArgs, default: String, argv: Vec<String>) -> Result<Self> {
        std::fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
        Ok(Outputs {
            dir: args.out.clone(),
            stem: args.name.clone().unwrap_or(default),
            manifest: RunManifest::new(argv),
        })
    }

    fn file(&self, ext: &str) -> String {
        format!("{}.{ext}", self.stem)
    }

    fn write(&mut self, ext: &str, contents: &str) -> Result<PathBuf> {
        let path = self.dir.join(self.file(ext));
        self.manifest.output(&path, contents)?;
        Ok(path)
    }

    fn finish(self) -> Result<()> {
        let path = self.dir.join(self.file("manifest.json"));
        self.manifest.write(&path)?;
        println!("manifest {}", path.display());
        Ok(())
    }
}

fn group_file_for(t: &SoftTriple, spec: Option<StructuredSpec>) -> Result<GroupFile> {
    let g = t.group();
    if g.order() <= DENSE_MAX_ORDER {
        return Ok(GroupFile::Dense(g.clone()));
    }
    spec.map(GroupFile::Structured).ok_or_else(|| {
        softplane::Error::budget("dense group file", g.order(), DENSE_MAX_ORDER).into()
    })
}

fn write_triple_set(out: &mut Outputs, t: &SoftTriple, spec: Option<StructuredSpec>) -> Result<()> {
    let gf = group_file_for(t, spec)?;
    let gpath = out.write("grp", &write_group(&gf)?)?;
    let tf = TripleFile::from_triple(out.file("grp"), t);
    let tpath = out.write("triple", &write_triple(&tf))?;
    let sp = build_plane(t)?;
    let ppath = out.write("plane", &write_plane(sp.plane()))?;
    let action = sp.right_action()?;
    let apath = out.write("action", &write_collineations(action.generators(), sp.plane().num_points()))?;
    println!(
        "soft triple n = {}, k = {}, |G| = {}, |A| = |B| = |M| = {}",
        t.n(),
        t.k(),
        t.group().order(),
        t.a().order()
    );
    println!(
        "plane of order {} with {} points",
        sp.order(),
        sp.plane().num_points()
    );
    for p in [gpath, tpath, ppath, apath] {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn build(args: BuildArgs, argv: Vec<String>) -> Result<bool> {
    let mut inputs = RunManifest::new(Vec::new());
    let (spec, default) = match &args.construction {
        Construction::Heisenberg { q: Some(q), .. } => (StructuredSpec::Heisenberg { q: *q }, format!("heisenberg-q{q}")),
        Construction::Heisenberg { semifield: Some(path), .. } => {
            let table = parse_semifield(&inputs.input(path)?)?;
            let q = table.order();
            (StructuredSpec::HeisenbergSemifield(table), format!("heisenberg-semifield{q}"))
        }
        Construction::Heisenberg { .. } => return Err(usage("give --q or --semifield")),
        Construction::Likeable { q, l } => {
            let l = match l {
                Some(path) => Some(parse_additive(&inputs.input(path)?, &FiniteField::of_order(*q)?)?),
                None => None,
            };
            (StructuredSpec::Likeable { q: *q, l }, format!("likeable-q{q}"))
        }
        Construction::Decorate { base, q, alpha } => {
            let e = parse_alpha(alpha)?;
            match base {
                Base::Heisenberg => (StructuredSpec::DecoratedHeisenberg { q: *q, e }, format!("heisenberg-q{q}-frob{e}")),
                Base::Likeable => (StructuredSpec::DecoratedLikeable { q: *q, e }, format!("likeable-q{q}-frob{e}")),
            }
        }
    };
    let t = spec.build().map_err(|e| match e {
        e if e.is_budget() => anyhow::Error::from(e),
        e => usage(format!("invalid construction: {e}")),
    })?;
    let mut out = Outputs::new(&args.output, default, argv)?;
    out.manifest.inputs = inputs.inputs;
    write_triple_set(&mut out, &t, Some(spec))?;
    out.finish()?;
    Ok(true)
}

fn load_triple(path: &Path) -> Result<(Group, TripleFile)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let tf = parse_triple(&text).with_context(|| format!("parsing {}", path.display()))?;
    let gpath = path.parent().unwrap_or(Path::new(".")).join(&tf.group_path);
    let gtext = std::fs::read_to_string(&gpath).with_context(|| format!("reading {}", gpath.display()))?;
    let g = parse_group(&gtext)
        .with_context(|| format!("parsing {}", gpath.display()))?
        .group()?;
    Ok((g, tf))
}

fn verified(path: &Path) -> Result<SoftTriple> {
    let (g, tf) = load_triple(path)?;
    let (a, b, m) = tf.subgroups(&g)?;
    Ok(softplane::soft::verify_soft_triple(&g, &a, &b, &m)?)
}

fn verify(path: &Path) -> Result<bool> {
    let (g, tf) = load_triple(path)?;
    let (a, b, m) = tf.subgroups(&g)?;
    let report = check_conditions(&g, &a, &b, &m)?;
    println!("conditions");
    print!("{report}");
    let mut ok = report.passed();
    println!("consequences");
    for c in quadruple_corollary_checks(&g, &a, &b, &m)? {
        println!("{c}");
        ok &= c.passed;
    }
    for s in super_noncommutativity_check(&g, &a, &b, DEFAULT_PAIR_BUDGET)? {
        println!("{s}");
        ok &= s.passed();
    }
    if report.passed() {
        let t = softplane::soft::verify_soft_triple(&g, &a, &b, &m)?;
        for s in lemma_checks(&t, DEFAULT_PAIR_BUDGET)? {
            println!("{s}");
            ok &= s.passed();
        }
        let sp = build_plane(&t)?;
        sp.right_action()?;
        println!(
            "plane: order {}, {} points, axioms PASS, action PASS",
            sp.order(),
            sp.plane().num_points()
        );
    }
    println!("{}", if ok { "VERIFIED" } else { "FAILED" });
    Ok(ok)
}

fn analyze(args: AnalyzeArgs) -> Result<bool> {
    let t = verified(&args.triple)?;
    let sp = build_plane(&t)?;
    let battery = args.battery || !(args.ideals || args.elations);
    let mut ok = true;
    if args.ideals {
        println!("ideal line and point");
        for c in ideal_checks(&sp)? {
            println!("{c}");
            ok &= c.passed;
        }
    }
    if args.elations {
        let census = ElationCensus::new(&sp)?;
        println!("translations in G: {}", census.translations()?.order());
        println!("central elations in G: {}", census.central()?.order());
        println!("homologies in G: {}", census.homologies().len());
        if sp.order() <= AXIAL_MAX_ORDER {
            let full = full_axial_elations(sp.plane(), 0)?;
            println!(
                "all elations with axis L-infinity: {} ({}translation plane)",
                full.order(),
                if full.is_transitive(sp.order()) { "" } else { "not a " }
            );
        }
        let ring = coordinatize_ptr(sp.plane(), default_quadrilateral(sp.plane())?)?;
        println!("flag-aligned ternary ring: {}", ring.class());
    }
    if battery {
        let r = proposition_battery(&sp)?;
        if args.json {
            println!("{}", serde_json::to_string_pretty(&r)?);
        } else {
            print!("{r}");
        }
        ok &= r.contradictions().is_empty();
    }
    Ok(ok)
}

fn extract(args: ExtractArgs, argv: Vec<String>) -> Result<bool> {
    let mut inputs = RunManifest::new(Vec::new());
    let plane = Arc::new(parse_plane(&inputs.input(&args.plane)?)?);
    let gens = parse_collineations(&inputs.input(&args.action)?, &plane)?;
    let h = CollineationGroup::generate(plane.clone(), gens)?;
    let r = extract_soft_triple(&plane, &h)?;
    let t = &r.triple;
    println!("collineation group of order {}", h.order());
    println!("flag ({}, {}), fixed flag ({}, {})", r.flag.0, r.flag.1, r.fixed_flag.0, r.fixed_flag.1);
    println!("ideal point {}, ideal line {}", r.ideal_point, r.ideal_line);
    println!("isomorphism to the rebuilt plane verified");
    let mut out = Outputs::new(&args.output, "extracted".into(), argv)?;
    out.manifest.inputs = inputs.inputs;
    write_triple_set(&mut out, t, None)?;
    let iso = format!(
        "POINTS {}\nLINES {}\n",
        r.isomorphism.points.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
        r.isomorphism.lines.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    );
    out.write("iso", &iso)?;
    out.finish()?;
    Ok(true)
}

fn search(args: SearchArgs, argv: Vec<String>) -> Result<bool> {
    if let Some(SearchSub::Decorated { base, q, alpha }) = args.decorated {
        return search_decorated(base, q, &alpha);
    }
    let path = args.group.ok_or_else(|| usage("give --group or the `decorated` subcommand"))?;
    let mut out = Outputs::new(&args.output, "search".into(), argv)?;
    let g = parse_group(&out.manifest.input(&path)?)?.group()?;
    let opts = SearchOptions {
        n: args.n,
        k: args.k,
        prune: !args.no_prune,
        workers: None,
        progress: args.progress,
        max_order: args.max_order,
    };
    let report = search_soft_triples(&g, &opts)?;
    println!("factorizations (n, k): {:?}", report.factorizations);
    println!(
        "A candidates {}, resumed {}, pairs {}, pruned {}",
        report.a_candidates, report.resumed, report.pairs_tested, report.pruned
    );
    println!("soft triples up to conjugacy: {}", report.triples.len());
    let gname = out.file("grp");
    if !report.triples.is_empty() {
        out.write("grp", &softplane::io::write_dense_group(&g)?)?;
    }
    for (i, t) in report.triples.values().enumerate() {
        let tf = TripleFile::from_triple(gname.clone(), t);
        let p = out.write(&format!("{i}.triple"), &write_triple(&tf))?;
        println!("n = {}, k = {}: {}", t.n(), t.k(), p.display());
    }
    out.finish()?;
    Ok(true)
}

fn search_decorated(base: Base, q: u32, alpha: &str) -> Result<bool> {
    let e = parse_alpha(alpha)?;
    let f = Arc::new(FiniteField::of_order(q)?);
    let frob = softplane::algebra::FieldAutomorphism::frobenius(&f, e);
    let d = match base {
        Base::Heisenberg => extend_by_automorphism(&Heisenberg::new(f.clone())?, &frob)?,
        Base::Likeable => {
            let l = Likeable::new(q, None)?;
            extend_by_automorphism(&l, &softplane::algebra::FieldAutomorphism::frobenius(l.field(), e))?
        }
    };
    let t = d.triple();
    println!("decorated group of order {}, n = {}, k = {}", t.group().order(), t.n(), t.k());
    let cands = decorated_subgroup_search(&d)?;
    let mut hits = 0;
    for (i, c) in cands.iter().enumerate() {
        match &c.soft {
            None => println!("{i}: order {}, flag orbit {}: not soft", c.subgroup.order(), c.flag_orbit),
            Some(h) => {
                hits += 1;
                let cert = noniso_certificate(h.triple.group(), d.base().group())?;
                println!(
                    "{i}: order {}, flag orbit {}: soft; M normal {}, AM normal {}, BM normal {}, |Z| = {}, contains all translations {}; vs base: {}",
                    c.subgroup.order(),
                    c.flag_orbit,
                    h.m_normal,
                    h.am_normal,
                    h.bm_normal,
                    h.center_order,
                    h.contains_translations,
                    cert.map(|c| c.to_string()).unwrap_or_else(|| "no invariant differs".into())
                );
            }
        }
    }
    println!("{} index-{} subgroups, {hits} soft", cands.len(), d.p());
    Ok(true)
}

fn feasible(n: u64, json: bool) -> Result<bool> {
    let f = order_feasibility(n).map_err(|e| usage(e.to_string()))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&f)?);
    } else {
        print!("{f}");
    }
    Ok(f.feasible())
}

fn export(path: &Path, format: ExportFormat, output: Option<PathBuf>, argv: Vec<String>) -> Result<bool> {
    let mut manifest = RunManifest::new(argv);
    let plane = parse_plane(&manifest.input(path)?)?;
    let text = match format {
        ExportFormat::IncidenceMatrix => write_incidence_matrix(&plane),
        ExportFormat::Plane => write_plane(&plane),
        ExportFormat::Json => {
            serde_json::to_string_pretty(&serde_json::json!({
                "order": plane.order(),
                "flag": plane.has_flag(),
                "lines": plane.lines(),
            }))? + "\n"
        }
    };
    match output {
        Some(p) => {
            manifest.output(&p, &text)?;
            let mp = PathBuf::from(format!("{}.manifest.json", p.display()));
            manifest.write(&mp)?;
        }
        None => print!("{text}"),
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_syntax() {
        assert_eq!(parse_alpha("frobenius^2").unwrap(), 2);
        assert_eq!(parse_alpha("frobenius").unwrap(), 1);
        assert!(parse_alpha("sigma").is_err());
        assert!(parse_alpha("frobenius^x").is_err());
    }
}
