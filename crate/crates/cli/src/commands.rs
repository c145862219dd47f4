use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use dirichlet_core::certify::{conclude_sn, frobenius_cycle_type, ClauseResult, Conclusion, CycleTypeSample};
use dirichlet_core::dirichlet::{
    construct_dirichlet, construct_with_cycle_length, is_irreducible_offset, ConstructionParams, DirichletCertificate,
};
use dirichlet_core::embedding::{solve_dep, EmbeddingProblem, Solution};
use dirichlet_core::factor::factor;
use dirichlet_core::field::{Field, PrimeField, Rationals};
use dirichlet_core::group::{FiniteGroup, Hom};
use dirichlet_core::poly::Polynomial;
use dirichlet_core::wreath::{SemidirectProduct, Splitting, TwistedWreath, EXHAUSTIVE_CHECK_LIMIT};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{self, AnyCertificate};
use crate::error::CliError;
use crate::groups::{parse_description, Described};
use crate::problems::{catalog_problem, parse_problem, Problem};

pub const CERTIFICATE_FILE: &str = "certificate.json";
pub const SN_CERTIFICATE_FILE: &str = "sn_certificate.json";

/// Offsets are tested this many per worker between checks of `--limit`.
const OFFSET_CHUNK: u64 = 64;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(CliError::io(path.display().to_string()))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(CliError::io(path.display().to_string()))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Invalid(format!("thread pool: {e}")))
}

/// Field chosen on the command line.
#[derive(Debug, Clone, Copy)]
pub enum FieldChoice {
    Prime(u64),
    Rationals,
}

fn prime_field(p: u64) -> Result<PrimeField, CliError> {
    PrimeField::new(p).map_err(|e| CliError::Parse(format!("--prime: {e}")))
}

fn parse_poly<K: Field>(k: &K, s: &str, name: &str) -> Result<Polynomial<K>, CliError> {
    Polynomial::parse(k.clone(), s).map_err(|e| CliError::Parse(format!("{name}: {e}")))
}

pub struct ConstructArgs<'a> {
    pub field: FieldChoice,
    pub a: &'a str,
    pub b: &'a str,
    pub n: usize,
    pub e: Option<usize>,
    pub budget: u64,
    pub out: &'a Path,
}

fn construct_in<K: Field>(k: K, args: &ConstructArgs) -> Result<String, CliError> {
    let mut params = ConstructionParams::new(parse_poly(&k, args.a, "--a")?, parse_poly(&k, args.b, "--b")?, args.n);
    params.search_budget = args.budget;
    let cert = match args.e {
        Some(e) => construct_with_cycle_length(&params, e)?,
        None => construct_dirichlet(&params)?,
    };
    let sn = conclude_sn(&cert);
    fs::create_dir_all(args.out).map_err(CliError::io(args.out.display().to_string()))?;
    let cert_path = args.out.join(CERTIFICATE_FILE);
    let sn_path = args.out.join(SN_CERTIFICATE_FILE);
    write(&cert_path, &certificate::to_string(&certificate::encode(&cert)))?;
    write(&sn_path, &certificate::to_string(&certificate::encode_sn(&sn)))?;
    if let Conclusion::Rejected(c) = sn.conclusion {
        return Err(CliError::Rejected(format!("constructed certificate fails clause {c}")));
    }
    Ok(format!(
        "n = {}, e = {}, c = {}\n{}\n{}\n{}\n",
        cert.n,
        cert.e,
        cert.c,
        sn.conclusion,
        cert_path.display(),
        sn_path.display()
    ))
}

pub fn construct(args: &ConstructArgs) -> Result<String, CliError> {
    match args.field {
        FieldChoice::Prime(p) => construct_in(prime_field(p)?, args),
        FieldChoice::Rationals => construct_in(Rationals, args),
    }
}

fn clause_report(clauses: &[ClauseResult]) -> String {
    let mut out = String::new();
    for c in clauses {
        let status = match &c.failure {
            None => String::from("pass"),
            Some(why) => format!("FAIL: {why}"),
        };
        let tame = c.tameness.map(|t| format!(" [{}]", t.name())).unwrap_or_default();
        let _ = writeln!(out, "{}: {status}{tame}", c.clause);
    }
    out
}

fn verify_in<K: Field>(cert: &DirichletCertificate<K>, recorded: Option<Conclusion>) -> Result<String, CliError> {
    let sn = conclude_sn(cert);
    let mut out = clause_report(&sn.clauses);
    if let Some(r) = recorded.filter(|r| *r != sn.conclusion) {
        let _ = writeln!(out, "recorded conclusion {r} differs from recomputed");
    }
    match sn.conclusion {
        Conclusion::SymmetricGroupCertified => {
            let _ = writeln!(out, "{}", sn.conclusion);
            Ok(out)
        }
        Conclusion::Rejected(c) => {
            let why = sn.clauses.iter().find(|r| r.clause == c).and_then(|r| r.failure.clone()).unwrap_or_default();
            eprint!("{out}");
            Err(CliError::Rejected(format!("{c}: {why}")))
        }
    }
}

/// Recomputes every clause; the recorded verdict of an SnCertificate is
/// only compared, never trusted.
pub fn verify(text: &str) -> Result<String, CliError> {
    let (cert, recorded) = match certificate::parse_sn_certificate(text) {
        Ok((cert, _, conclusion)) => (cert, Some(conclusion)),
        Err(_) => (certificate::parse_certificate(text)?, None),
    };
    match &cert {
        AnyCertificate::Prime(c) => verify_in(c, recorded),
        AnyCertificate::Rational(c) => verify_in(c, recorded),
    }
}

pub fn factor_command(p: u64, f: &str) -> Result<String, CliError> {
    let k = prime_field(p)?;
    let f = parse_poly(&k, f, "--f")?;
    let fm = factor(&f).map_err(|e| CliError::Invalid(e.to_string()))?;
    let mut out = format!("unit {}\n", k.element_to_string(&fm.unit));
    for (g, m) in &fm.factors {
        let _ = writeln!(out, "{m} {g}");
    }
    Ok(out)
}

fn prime_certificate(text: &str) -> Result<DirichletCertificate<PrimeField>, CliError> {
    match certificate::parse_certificate(text)? {
        AnyCertificate::Prime(c) => Ok(c),
        AnyCertificate::Rational(_) => Err(CliError::Invalid(String::from("this command needs a certificate over F_p"))),
    }
}

pub enum SampleMode {
    Exhaustive,
    Trials { count: u64, seed: u64 },
}

pub fn sample(text: &str, mode: &SampleMode, jobs: usize) -> Result<(String, CycleTypeSample), CliError> {
    let cert = prime_certificate(text)?;
    let p = cert.field().modulus();
    let alphas: Vec<u64> = match *mode {
        SampleMode::Exhaustive => (0..p).collect(),
        SampleMode::Trials { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| rng.gen_range(0..p)).collect()
        }
    };
    let outcomes: Vec<_> = pool(jobs)?.install(|| alphas.par_iter().map(|&al| frobenius_cycle_type(&cert, al)).collect());
    let mut sample = CycleTypeSample::default();
    for o in outcomes {
        sample.record(o);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Invalid(e.to_string());
    w.write_record(["cycle_type", "count"]).map_err(csv_err)?;
    for (ct, count) in &sample.histogram {
        w.write_record([ct.to_string(), count.to_string()]).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok((String::from_utf8(bytes).expect("ascii"), sample))
}

/// The first `limit` offsets in increasing order; the search runs in
/// chunks so the answer does not depend on `jobs`.
pub fn offsets(text: &str, limit: usize, jobs: usize) -> Result<String, CliError> {
    let cert = prime_certificate(text)?;
    let p = cert.field().modulus();
    let pool = pool(jobs)?;
    let step = OFFSET_CHUNK * jobs.max(1) as u64;
    let mut found = Vec::new();
    let mut start = 0u64;
    while start < p && found.len() < limit {
        let end = start.saturating_add(step).min(p);
        let hits: Vec<u64> =
            pool.install(|| (start..end).into_par_iter().filter(|&al| is_irreducible_offset(&cert, al)).collect());
        found.extend(hits);
        start = end;
    }
    found.truncate(limit);
    Ok(found.iter().map(|a| format!("{a}\n")).collect())
}

fn group_summary(out: &mut String, g: &FiniteGroup) {
    let _ = writeln!(out, "order: {}", g.order());
    let _ = writeln!(out, "abelian: {}", g.is_abelian());
    let gens: Vec<&str> = g.generators().iter().map(|&x| g.label(x)).collect();
    let _ = writeln!(out, "generators: {}", gens.join(" "));
}

fn wreath_report(out: &mut String, w: &TwistedWreath) -> Result<(), CliError> {
    let (a, g, grp) = (w.base(), w.top(), w.group());
    let g0 = w.action().acting();
    let k = g.order() / g0.order();
    let expected = a.order().pow(k as u32) * g.order();
    let _ = writeln!(out, "|A| = {}, |G| = {}, |G0| = {}, (G:G0) = {k}", a.order(), g.order(), g0.order());
    let reps: Vec<&str> = w.transversal().iter().map(|&x| g.label(x)).collect();
    let _ = writeln!(out, "transversal: {}", reps.join(" "));
    let _ = writeln!(out, "order formula |A|^(G:G0)|G| = {expected}: {}", grp.order() == expected);
    if grp.order() <= EXHAUSTIVE_CHECK_LIMIT {
        let _ = writeln!(out, "associative (exhaustive): {}", grp.is_associative());
    } else {
        let _ = writeln!(out, "associative: table verified on construction");
    }
    let sd = SemidirectProduct::new(a, g, w.action())?;
    let mut shapiro_ok = true;
    for x in sd.group().elements() {
        shapiro_ok &= w.shapiro(&sd, w.embed_semidirect(&sd, x))? == x;
    }
    let _ = writeln!(out, "shapiro map inverts the embedding of A x| G0: {shapiro_ok}");
    let j = w.lift_splitting(&Splitting::trivial(g0, a), None)?;
    let alpha = w.quotient();
    let lifted = j.is_homomorphism(g, grp) && g.elements().all(|s| alpha.apply(j.apply(s)) == s);
    let _ = writeln!(out, "lift of the trivial splitting is a section of G: {lifted}");
    let _ = writeln!(out, "kernel of the quotient has order {}", alpha.kernel(grp, g).order());
    Ok(())
}

pub fn wreath(spec: &str) -> Result<String, CliError> {
    let described = parse_description(spec)?;
    let mut out = String::new();
    group_summary(&mut out, described.group());
    if let Described::Wreath(w) = &described {
        wreath_report(&mut out, w)?;
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct SolutionJson {
    images: Vec<String>,
    surjective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    transitive: Option<bool>,
}

#[derive(Debug, Serialize)]
struct ProblemReport {
    weak: usize,
    surjective: usize,
    solutions: Vec<SolutionJson>,
}

#[derive(Debug, Serialize)]
struct DepSolutionJson {
    eta: Vec<String>,
    theta: Vec<String>,
}

#[derive(Debug, Serialize)]
struct DepReport {
    solutions: Vec<DepSolutionJson>,
}

/// Image table of `h`, indexed by the elements of its source.
fn labels(target: &FiniteGroup, h: &Hom) -> Vec<String> {
    h.images().iter().map(|&y| target.label(y).to_string()).collect()
}

fn solve_parallel(p: &EmbeddingProblem, budget: u64, jobs: usize) -> Result<Vec<Solution>, CliError> {
    let candidates = p.search_size();
    if candidates > u128::from(budget) {
        return Err(CliError::Budget(format!("{candidates} candidate assignments exceed the budget {budget}")));
    }
    let firsts = p.first_generator_images();
    let parts: Vec<Vec<Solution>> =
        pool(jobs)?.install(|| firsts.par_iter().map(|&x| p.weak_solutions_with_first_image(x)).collect());
    Ok(parts.into_iter().flatten().collect())
}

pub enum ProblemSource<'a> {
    File(&'a str),
    Catalog(&'a str),
}

pub fn dep(source: ProblemSource, budget: u64, jobs: usize) -> Result<String, CliError> {
    let problem = match source {
        ProblemSource::File(text) => parse_problem(text)?,
        ProblemSource::Catalog(name) => catalog_problem(name)?,
    };
    match problem {
        Problem::Single(p) => {
            let sols = solve_parallel(&p, budget, jobs)?;
            let report = ProblemReport {
                weak: sols.len(),
                surjective: sols.iter().filter(|s| s.surjective).count(),
                solutions: sols
                    .iter()
                    .map(|s| SolutionJson { images: labels(&p.g, &s.theta), surjective: s.surjective, transitive: s.transitive })
                    .collect(),
            };
            Ok(certificate::to_string(&report))
        }
        Problem::Double(d) => {
            let sols = solve_dep(&d, budget)?;
            let report = DepReport {
                solutions: sols
                    .iter()
                    .map(|s| DepSolutionJson { eta: labels(&d.lower.g, &s.eta), theta: labels(&d.higher.g, &s.theta) })
                    .collect(),
            };
            Ok(certificate::to_string(&report))
        }
    }
}
