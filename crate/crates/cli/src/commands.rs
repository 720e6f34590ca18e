use std::collections::BTreeSet;
use std::fmt::Write as _;

use bifix_core::automata::{coset_automaton, incidence_graph, literal_automaton, minimal_automaton, Dfa};
use bifix_core::codes::{
    analyze, applicable_transformations, code_from_kernel, complete_bifix, count_parses, derived_code,
    enumerate_f_maximal_bifix, internal_transformation, is_f_maximal, parses,
};
use bifix_core::factors::{with_growing_depth, Side};
use bifix_core::freegroup::{bouquet_edge_count, hall_count, is_basis, GroupElement, StallingsGraph};
use bifix_core::io::{parse_code_text, read_code_file, read_word_file};
use bifix_core::measures::{average_length, invariant_distribution, set_probability, uniform_right_distribution};
use bifix_core::periodicity::{
    cft_least_period, forced_periodicity, least_period, repetition, x_stable_degree, FollowerGraph,
};
use bifix_core::syntactic::{
    f_group, green_analysis, realize_syntactic_group, transition_monoid, PermutationGroup,
};
use bifix_core::verify;
use bifix_core::words::Alphabet;
use bifix_core::{CodeSet, Error, FactorSet, Generator, Word};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::config::Config;
use crate::{AutomatonCmd, CodeCmd, CodeInput, Command, GenArg, GroupCmd, PeriodCmd, SyntacticCmd};

pub const SCHEMA_VERSION: u32 = 1;

pub struct Ctx {
    pub json: bool,
    pub dot: bool,
    pub config: Config,
}

pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

pub struct Output {
    pub text: String,
    pub ok: bool,
}

struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
    ok: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, dot: None, ok: true }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

type Res<T> = Result<T, Failure>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable value")
}

fn load_code(input: &CodeInput) -> Res<CodeSet> {
    match (&input.code, &input.words) {
        (Some(path), _) => Ok(read_code_file(path)?),
        (None, Some(list)) => Ok(CodeSet::new(parse_code_text(list)?)?),
        (None, None) => Err(Failure::Usage("one of --code or --words is required".into())),
    }
}

fn lines<'a>(ws: impl IntoIterator<Item = &'a Word>) -> String {
    ws.into_iter().map(|w| format!("{w}\n")).collect()
}

fn code_list(x: &CodeSet) -> Vec<String> {
    x.iter().map(Word::to_string).collect()
}

/// Runs `op` on factor sets of `gen`, growing from `start` until the window suffices.
fn grown<T>(ctx: &Ctx, gen: &GenArg, start: usize, op: impl FnMut(&FactorSet) -> bifix_core::Result<T>) -> Res<T> {
    let depth = gen.depth.or(ctx.config.depth).unwrap_or(start).max(1);
    Ok(with_growing_depth(&gen.generator, depth, ctx.config.max_depth.max(depth), op)?)
}

fn code_depth(x: &CodeSet) -> usize {
    (4 * x.max_len()).max(8)
}

pub fn dispatch(ctx: &Ctx, cmd: Command) -> Res<Output> {
    let (name, report) = match cmd {
        Command::Factors { gen, returns } => ("factors", factors(ctx, &gen, returns)?),
        Command::Measure { gen, code, words } => {
            let input = (code.is_some() || words.is_some()).then_some(CodeInput { code, words });
            ("measure", measure(ctx, &gen, input.as_ref())?)
        }
        Command::Code(c) => (c.name(), code(ctx, c)?),
        Command::Automaton(c) => (c.name(), automaton(c)?),
        Command::Group(c) => (c.name(), group(ctx, c)?),
        Command::Syntactic(c) => (c.name(), syntactic(ctx, c)?),
        Command::Period(c) => (c.name(), period(ctx, c)?),
        Command::Count { hall } => {
            let n = hall_count(hall[0], hall[1]);
            ("count", Report::new(format!("{n}\n"), json!({"degree": hall[0], "rank": hall[1], "count": n.to_string()})))
        }
        Command::Verify { ids } => ("verify", run_verify(&ids)?),
    };
    let text = if ctx.dot {
        report.dot.ok_or_else(|| Failure::Usage(format!("--dot is not available for {name}")))?
    } else if ctx.json {
        let doc = json!({"schema_version": SCHEMA_VERSION, "command": name, "result": report.json});
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("valid JSON"))
    } else {
        report.text
    };
    Ok(Output { text, ok: report.ok })
}

fn factors(ctx: &Ctx, gen: &GenArg, returns: Option<Word>) -> Res<Report> {
    if let Some(u) = returns {
        let r = grown(ctx, gen, code_depth(&CodeSet::empty()).max(4 * u.len()), |f| f.return_words(&u))?;
        let mut text = format!("right returns to {u}:\n{}", lines(&r.right));
        let _ = write!(text, "left returns to {u}:\n{}", lines(&r.left));
        return Ok(Report::new(text, to_value(&r)));
    }
    let depth = gen.depth.or(ctx.config.depth).unwrap_or(8);
    let f = FactorSet::build(&gen.generator, depth + 1)?;
    let mut text = String::new();
    for l in 1..=depth {
        let special = f.special_words(l, Side::Right)?;
        let marks: BTreeSet<&Word> = special.iter().map(|s| &s.word).collect();
        let ws: Vec<String> = f
            .level(l)
            .iter()
            .map(|w| if marks.contains(w) { format!("{w}*") } else { w.to_string() })
            .collect();
        let _ = writeln!(text, "{l:>3} ({:>3}): {}", f.level(l).len(), ws.join(" "));
    }
    Ok(Report::new(text, FactorSet::build(&gen.generator, depth)?.to_json()))
}

fn measure(ctx: &Ctx, gen: &GenArg, input: Option<&CodeInput>) -> Res<Report> {
    let x = input.map(load_code).transpose()?;
    let start = x.as_ref().map_or(6, |x| x.max_len().max(1));
    let depth = gen.depth.or(ctx.config.depth).unwrap_or(start);
    let f = FactorSet::build(&gen.generator, depth)?;
    let pi = match &gen.generator {
        Generator::FixPoint { .. } => invariant_distribution(&f)?,
        _ => uniform_right_distribution(&f)?,
    };
    let Some(x) = x else {
        let text = pi.values().iter().map(|(w, v)| format!("{w}\t{v}\n")).collect();
        return Ok(Report::new(text, to_value(&pi)));
    };
    let p = set_probability(&pi, x.iter())?;
    let lambda = average_length(&pi, x.iter()).ok();
    let mut text = format!("pi(X) = {p}\n");
    if let Some(l) = &lambda {
        let _ = writeln!(text, "lambda(X) = {l}");
    }
    let j = json!({"code": code_list(&x), "flavor": pi.flavor, "probability": p, "average_length": lambda});
    Ok(Report::new(text, j))
}

fn analysis_json(x: &CodeSet, f: &FactorSet) -> bifix_core::Result<(String, Value)> {
    let an = analyze(x, f)?;
    let derived = if an.degree >= 2 { Some(derived_code(x, f)?) } else { None };
    let mut text = format!("degree: {}\nkernel: {}\ncardinality: {}\n", an.degree, an.kernel, an.cardinality);
    if let Some(d) = &derived {
        let _ = writeln!(text, "derived: {d}");
    }
    let j = json!({
        "degree": an.degree,
        "kernel": an.kernel,
        "derived": derived,
        "prefixes": an.prefixes,
        "suffixes": an.suffixes,
        "cardinality": an.cardinality,
        "depth": f.depth(),
    });
    Ok((text, j))
}

fn code(ctx: &Ctx, cmd: CodeCmd) -> Res<Report> {
    match cmd {
        CodeCmd::Analyze { gen, input } => {
            let x = load_code(&input)?;
            let (text, j) = grown(ctx, &gen, code_depth(&x), |f| analysis_json(&x, f))?;
            Ok(Report::new(text, j))
        }
        CodeCmd::Derive { gen, input } => {
            let x = load_code(&input)?;
            let y = grown(ctx, &gen, code_depth(&x), |f| derived_code(&x, f))?;
            Ok(Report::new(lines(y.iter()), to_value(&y)))
        }
        CodeCmd::FromKernel { gen, input, degree } => {
            let y = load_code(&input)?;
            let start = code_depth(&y).max(8 * degree + 8);
            let x = grown(ctx, &gen, start, |f| code_from_kernel(&y, f, degree))?;
            Ok(Report::new(lines(x.iter()), to_value(&x)))
        }
        CodeCmd::Enumerate { gen, degree } => {
            let codes = grown(ctx, &gen, 8 * degree + 8, |f| enumerate_f_maximal_bifix(f, degree))?;
            let text = codes.iter().map(|x| format!("{x}\n")).collect();
            let j = json!({"degree": degree, "count": codes.len(), "codes": codes});
            Ok(Report::new(text, j))
        }
        CodeCmd::Transform { gen, input, word } => {
            let x = load_code(&input)?;
            match word {
                Some(w) => {
                    let y = grown(ctx, &gen, code_depth(&x), |f| internal_transformation(&x, f, &w))?;
                    Ok(Report::new(lines(y.iter()), to_value(&y)))
                }
                None => {
                    let ws = applicable_transformations(&x);
                    Ok(Report::new(lines(&ws), to_value(&ws)))
                }
            }
        }
        CodeCmd::Complete { gen, input, degree } => {
            let x = load_code(&input)?;
            let start = code_depth(&x).max(8 * degree.unwrap_or(1) + 8);
            let c = grown(ctx, &gen, start, |f| complete_bifix(&x, f, degree))?;
            Ok(Report::new(lines(c.code().iter()), to_value(&c)))
        }
        CodeCmd::Maximal { gen, input, kind } => {
            let x = load_code(&input)?;
            let m = grown(ctx, &gen, code_depth(&x), |f| is_f_maximal(&x, f, kind.into()))?;
            let text = match &m.witness {
                Some(w) => format!("not maximal: {w} is incomparable\n"),
                None => "maximal\n".to_string(),
            };
            Ok(Report::new(text, to_value(&m)))
        }
        CodeCmd::Parses { input, word } => {
            let x = load_code(&input)?;
            let ps = parses(&word, &x);
            let mut text = format!("pars({word}) = {}\n", count_parses(&word, &x));
            for p in &ps {
                let xs: Vec<String> = p.x.iter().map(Word::to_string).collect();
                let middle = if xs.is_empty() { "1".to_string() } else { xs.join(".") };
                let _ = writeln!(text, "({}, {middle}, {})", p.v, p.u);
            }
            Ok(Report::new(text, json!({"word": word, "count": ps.len(), "parses": ps})))
        }
    }
}

fn dfa_text(a: &Dfa) -> String {
    let p = a.properties();
    let mut text = format!(
        "states: {}\nterminals: {:?}\ncomplete: {} reversible: {} group: {}\n",
        a.num_states(),
        a.terminals(),
        p.complete,
        p.reversible,
        p.group
    );
    for (s, c, t) in a.transitions() {
        let _ = writeln!(text, "{} --{}--> {}", a.labels()[s], c as char, a.labels()[t]);
    }
    text
}

fn automaton(cmd: AutomatonCmd) -> Res<Report> {
    let dfa = |a: Dfa| Report::new(dfa_text(&a), to_value(&a)).with_dot(a.to_dot());
    match cmd {
        AutomatonCmd::Literal { input } => Ok(dfa(literal_automaton(&load_code(&input)?)?)),
        AutomatonCmd::Minimize { input } => Ok(dfa(minimal_automaton(&load_code(&input)?)?)),
        AutomatonCmd::Coset { input } => Ok(dfa(coset_automaton(&load_code(&input)?)?)),
        AutomatonCmd::Incidence { input } => {
            let g = incidence_graph(&load_code(&input)?);
            let text = format!(
                "vertices: {}\nedges: {}\ncomponents: {}\nacyclic: {}\n",
                g.vertex_count(),
                g.edges.len(),
                g.components,
                g.is_acyclic()
            );
            let mut j = to_value(&g);
            j["acyclic"] = json!(g.is_acyclic());
            Ok(Report::new(text, j).with_dot(g.to_dot()))
        }
    }
}

fn group(ctx: &Ctx, cmd: GroupCmd) -> Res<Report> {
    let gens = |input: &CodeInput| -> Res<Vec<Word>> { Ok(load_code(input)?.iter().cloned().collect()) };
    match cmd {
        GroupCmd::Fold { input, shuffle } => {
            let gens = gens(&input)?;
            let alphabet = Alphabet::new(gens.iter().flat_map(|w| w.as_bytes().to_vec()))?;
            let mut order: Vec<usize> = (0..bouquet_edge_count(&gens)).collect();
            if shuffle {
                order.shuffle(&mut StdRng::seed_from_u64(ctx.config.seed));
            }
            let s = StallingsGraph::fold_with_order(&gens, &alphabet, &order)?;
            let mut text = format!("vertices: {}\n", s.vertex_count());
            for (p, a, q) in s.edges() {
                let _ = writeln!(text, "{p} --{a}--> {q}");
            }
            Ok(Report::new(text, to_value(&s)).with_dot(s.to_dot()))
        }
        GroupCmd::Stats { input } => {
            let gens = gens(&input)?;
            let s = StallingsGraph::fold(&gens)?;
            let st = s.stats()?;
            let basis = is_basis(&gens)?;
            let index = st.index.map_or("infinite".to_string(), |i| i.to_string());
            let text = format!("rank: {}\nindex: {index}\nbasis: {basis}\n", st.rank);
            let mut j = to_value(&st);
            j["basis"] = json!(basis);
            j["free_basis"] = json!(s.basis().iter().map(GroupElement::to_string).collect::<Vec<_>>());
            Ok(Report::new(text, j).with_dot(s.to_dot()))
        }
        GroupCmd::Member { input, element } => {
            let gens = gens(&input)?;
            let g = GroupElement::parse(&element)?;
            let alphabet = Alphabet::new(
                gens.iter()
                    .flat_map(|w| w.as_bytes().to_vec())
                    .chain(g.letters().iter().map(|&(a, _)| a)),
            )?;
            let member = StallingsGraph::fold_over(&gens, &alphabet)?.contains(&g)?;
            Ok(Report::new(format!("{member}\n"), json!({"element": g.to_string(), "member": member})))
        }
        GroupCmd::Hall { degree, rank } => {
            let n = hall_count(degree, rank);
            Ok(Report::new(format!("{n}\n"), json!({"degree": degree, "rank": rank, "count": n.to_string()})))
        }
    }
}

fn parse_perms(s: &str) -> Res<Vec<Vec<usize>>> {
    s.split(';')
        .map(|p| {
            p.split(',')
                .map(|i| i.trim().parse::<usize>().map_err(|e| Failure::Usage(format!("--perms: {e}"))))
                .collect()
        })
        .collect()
}

fn group_text(g: &PermutationGroup) -> bifix_core::Result<String> {
    let mut text = format!("degree: {}\norder: {}\nexponent: {}\n", g.degree(), g.order()?, g.exponent()?);
    for (p, l) in g.generators.iter().zip(&g.labels) {
        let _ = writeln!(text, "{l}: {}", g.cycles(p));
    }
    Ok(text)
}

fn syntactic(ctx: &Ctx, cmd: SyntacticCmd) -> Res<Report> {
    match cmd {
        SyntacticCmd::Monoid { input } => {
            let x = load_code(&input)?;
            let m = transition_monoid(&minimal_automaton(&x)?, ctx.config.monoid_cap)?;
            let elements: Vec<Value> = (0..m.len())
                .map(|i| json!({"witness": m.witness(i), "map": m.element(i)}))
                .collect();
            let text = format!("size: {}\n{}", m.len(), lines((0..m.len()).map(|i| m.witness(i))));
            Ok(Report::new(text, json!({"size": m.len(), "states": m.states(), "elements": elements})))
        }
        SyntacticCmd::Green { input, generator, depth, rank } => {
            let x = load_code(&input)?;
            let m = transition_monoid(&minimal_automaton(&x)?, ctx.config.monoid_cap)?;
            let report = match generator {
                Some(g) => {
                    let gen = GenArg { generator: g, depth };
                    grown(ctx, &gen, code_depth(&x), |f| green_analysis(&m, Some(f), rank))?
                }
                None => green_analysis(&m, None, rank)?,
            };
            let mut text = format!(
                "elements: {}\nD-classes: {}\nidempotents: {}\n",
                m.len(),
                report.d_class_count(),
                report.idempotents.iter().filter(|&&e| e).count()
            );
            if let Some(dc) = &report.dclass {
                let _ = write!(
                    text,
                    "D-class of rank {}: {}x{}, {} group cells\n{}",
                    dc.rank,
                    dc.rows(),
                    dc.columns(),
                    dc.group_cells(),
                    dc.render()
                );
            }
            Ok(Report::new(text, to_value(&report)))
        }
        SyntacticCmd::Fgroup { gen, input } => {
            let x = load_code(&input)?;
            let g = grown(ctx, &gen, code_depth(&x), |f| f_group(&x, f))?;
            Ok(Report::new(group_text(&g)?, to_value(&g)))
        }
        SyntacticCmd::Realize { gen, perms } => {
            let perms = parse_perms(&perms)?;
            let n = perms.first().map_or(0, Vec::len);
            let g = PermutationGroup::on_points(n, perms)?;
            let r = grown(ctx, &gen, 8 * n + 8, |f| realize_syntactic_group(&g, f))?;
            let text = format!(
                "code: {}\ndegree: {}\nequivalent: {}\n{}",
                r.code,
                r.degree,
                r.equivalent,
                group_text(&r.fgroup)?
            );
            Ok(Report::new(text, to_value(&r)))
        }
    }
}

fn period(ctx: &Ctx, cmd: PeriodCmd) -> Res<Report> {
    match cmd {
        PeriodCmd::Least { word } => {
            let p = least_period(&word)?;
            Ok(Report::new(format!("{p}\n"), json!({"word": word, "period": p})))
        }
        PeriodCmd::Rep { prefix, suffix } => {
            let r = repetition(&prefix, &suffix)?;
            Ok(Report::new(format!("{r}\n"), json!({"prefix": prefix, "suffix": suffix, "rep": r})))
        }
        PeriodCmd::Cft { word } => {
            let p = cft_least_period(&word)?;
            Ok(Report::new(format!("{p}\n"), json!({"word": word, "period": p})))
        }
        PeriodCmd::Forced { forbidden, alphabet } => {
            let words: BTreeSet<Word> = read_word_file(&forbidden)?.into_iter().collect();
            let alphabet = match alphabet {
                Some(s) => Alphabet::from_str_symbols(&s)?,
                None => Alphabet::new(words.iter().flat_map(|w| w.as_bytes().to_vec()))?,
            };
            let g = FollowerGraph::build(&alphabet, &words)?;
            let r = forced_periodicity(&alphabet, &words)?;
            let cycles: Vec<String> = r.cycles.iter().map(Word::to_string).collect();
            let text = format!(
                "nonempty: {}\nultimately periodic: {}\ncycles: {}\n",
                r.nonempty,
                r.all_ultimately_periodic,
                cycles.join(" ")
            );
            Ok(Report::new(text, to_value(&r)).with_dot(g.to_dot()))
        }
        PeriodCmd::Stable { gen, input } => {
            let x = load_code(&input)?;
            let depth = gen.depth.or(ctx.config.depth).unwrap_or(code_depth(&x));
            let s = x_stable_degree(&x, &gen.generator, depth)?;
            let mut text = format!("stable: {}\n", s.stable);
            for (o, d) in &s.degrees {
                let _ = writeln!(text, "{o}\t{d}");
            }
            Ok(Report::new(text, to_value(&s)))
        }
    }
}

fn run_verify(ids: &[usize]) -> Res<Report> {
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > verify::CRITERIA) {
        return Err(Failure::Usage(format!("criterion {bad} is out of range 1..={}", verify::CRITERIA)));
    }
    let ids: Vec<usize> = if ids.is_empty() { (1..=verify::CRITERIA).collect() } else { ids.to_vec() };
    let results: Vec<_> = ids.iter().map(|&i| verify::run(i)).collect();
    let text = results.iter().map(|r| format!("{}\n", r.line())).collect();
    let ok = results.iter().all(|r| r.passed || !r.blocking);
    let mut report = Report::new(text, to_value(&results));
    report.ok = ok;
    Ok(report)
}
