use std::fmt::Write as _;
use std::path::Path;

use logdiff::arrangement::{euler_derivation, saito_check, SaitoFailure};
use logdiff::jacobian::{higher_jacobian, jacobian_power_sides, word_product, OpFamily};
use logdiff::linalg::{check_sym_power_det, enumerate_wp, sym_power_exponent};
use logdiff::parse::{parse_diffop, render_diffop, render_poly, VarStyle};
use logdiff::poly::apply_linear_map;
use logdiff::sample::{
    random_derivation, random_int_matrix, random_invertible_matrix, random_nonzero_poly, random_poly,
    random_word_combination, PolyShape,
};
use logdiff::tangent::{q_partials, tangency_report, DecomposeError, DecomposeOptions, Decomposer};
use logdiff::{Derivation, DiffOp, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::input::{load_arrangement, resolve_basis, Loaded};
use crate::{CliError, Report};

fn poly_text(f: &Poly, style: VarStyle) -> String {
    render_poly(f, style)
}

fn op_text(u: &DiffOp, style: VarStyle) -> String {
    render_diffop(u, style)
}

fn parse_op(text: &str, l: usize) -> Result<DiffOp, CliError> {
    parse_diffop(text, l).map_err(|e| CliError::Usage(format!("--op: {e}")))
}

pub fn check_free(arrangement: &str, basis: Option<&Path>, style: VarStyle) -> Result<Report, CliError> {
    let loaded = load_arrangement(arrangement)?;
    let thetas = resolve_basis(&loaded, basis)?;
    let arr = &loaded.arrangement;
    let mut out = String::new();
    writeln!(out, "arrangement {}: Q = {}", loaded.name, poly_text(arr.defining_poly(), style)).unwrap();
    for (i, t) in thetas.iter().enumerate() {
        writeln!(out, "theta{} = {}", i + 1, op_text(&t.to_diffop(), style)).unwrap();
    }
    match saito_check(arr, &thetas) {
        Ok(b) => {
            writeln!(out, "free, lambda = {}, degrees = {:?}", b.lambda(), b.degrees()).unwrap();
            Ok(Report::pass(out))
        }
        Err(f) => {
            let reason = match &f {
                SaitoFailure::DeterminantMismatch { determinant, q, degrees } => {
                    let degs: Vec<String> = degrees
                        .iter()
                        .map(|d| d.map_or("-".into(), |d| d.to_string()))
                        .collect();
                    format!(
                        "determinant = {}, Q = {}, degrees = [{}]",
                        poly_text(determinant, style),
                        poly_text(q, style),
                        degs.join(", ")
                    )
                }
                SaitoFailure::NotTangent { index } => format!("theta{} is not tangent", index + 1),
                SaitoFailure::NotHomogeneous { index } => format!("theta{} is not homogeneous", index + 1),
                other => other.to_string(),
            };
            writeln!(out, "not free under this candidate: {reason}").unwrap();
            Ok(Report::fail(out))
        }
    }
}

#[derive(Serialize)]
struct WordJson {
    coeff: String,
    word: Vec<usize>,
}

#[derive(Serialize)]
struct DecompositionJson {
    arrangement: String,
    operator: String,
    generators: Vec<String>,
    words: Vec<WordJson>,
}

fn word_text(word: &[usize]) -> String {
    word.iter().map(|i| format!("t{i}")).collect::<Vec<_>>().join("*")
}

pub struct DecomposeArgs<'a> {
    pub arrangement: &'a str,
    pub basis: Option<&'a Path>,
    pub op: &'a str,
    pub json: bool,
    pub t_max: Option<u32>,
    pub no_precheck: bool,
    pub style: VarStyle,
}

pub fn decompose(args: DecomposeArgs<'_>) -> Result<Report, CliError> {
    let style = args.style;
    let loaded = load_arrangement(args.arrangement)?;
    let thetas = resolve_basis(&loaded, args.basis)?;
    let arr = &loaded.arrangement;
    let u = parse_op(args.op, arr.dim())?;
    let basis = saito_check(arr, &thetas)
        .map_err(|f| CliError::Usage(format!("the basis does not pass Saito's criterion: {f}")))?;
    let mut d = Decomposer::new(arr, &basis, &arr.coordinates()).map_err(|e| CliError::Usage(e.to_string()))?;
    let opts = DecomposeOptions {
        skip_precheck: args.no_precheck,
        t_max: args.t_max,
    };
    let repr = match d.decompose(&u, opts) {
        Ok(r) => r,
        Err(e) => return Ok(Report::fail(diagnose(&e, &loaded, style))),
    };
    if repr.reassemble() != u {
        return Err(CliError::Internal("reassembly does not reproduce the operator".into()));
    }
    let gens: Vec<String> = repr.generators().iter().map(|g| op_text(g, style)).collect();
    if args.json {
        let doc = DecompositionJson {
            arrangement: loaded.name.clone(),
            operator: op_text(&u, style),
            generators: gens,
            words: repr
                .records(style)
                .into_iter()
                .map(|r| WordJson { coeff: r.coeff, word: r.word })
                .collect(),
        };
        return Ok(Report::pass(serde_json::to_string_pretty(&doc).unwrap() + "\n"));
    }
    let mut out = String::new();
    writeln!(out, "u = {}", op_text(&u, style)).unwrap();
    for (i, g) in gens.iter().enumerate() {
        writeln!(out, "t{} = {g}", i + 1).unwrap();
    }
    if repr.is_empty() {
        writeln!(out, "u = 0").unwrap();
    }
    for w in repr.words() {
        let c = poly_text(&w.coeff, style);
        let line = match (w.word.is_empty(), w.coeff.num_terms() > 1) {
            (true, _) => c,
            (false, true) => format!("({c}) * {}", word_text(&w.word)),
            (false, false) => format!("{c} * {}", word_text(&w.word)),
        };
        writeln!(out, "  {line}").unwrap();
    }
    writeln!(out, "reassembly verified").unwrap();
    Ok(Report::pass(out))
}

fn diagnose(e: &DecomposeError, loaded: &Loaded, style: VarStyle) -> String {
    match e {
        DecomposeError::NotTangent { form, t } => format!(
            "not tangent: u*a^{t} is not in a^{t}*Diff(S) for form {} (a = {})\n",
            form + 1,
            poly_text(&loaded.arrangement.form_polys()[*form], style)
        ),
        DecomposeError::NotDivisible { level, index } => format!(
            "not in the algebra generated by S and Der(A): at level {level} the Jacobian for index {index} is not divisible\n"
        ),
        other => format!("decomposition failed: {other}\n"),
    }
}

pub fn tangent(arrangement: &str, op: &str, t_max: u32, style: VarStyle) -> Result<Report, CliError> {
    let loaded = load_arrangement(arrangement)?;
    let arr = &loaded.arrangement;
    let u = parse_op(op, arr.dim())?;
    let report = tangency_report(&u, arr, t_max).map_err(|e| CliError::Usage(e.to_string()))?;
    let forms: Vec<String> = arr.form_polys().iter().map(|a| poly_text(a, style)).collect();
    let width = forms.iter().map(String::len).max().unwrap_or(4).max(4);
    let mut out = String::new();
    writeln!(out, "u = {}", op_text(&u, style)).unwrap();
    writeln!(out, "{:<width$}  {:>2}  result", "form", "t").unwrap();
    for c in &report.checks {
        let result = match &c.witness {
            None => "pass".to_string(),
            Some((beta, coeff)) => format!(
                "fail  term {} of u*a^{} not divisible by a^{}",
                op_text(&DiffOp::term(coeff.clone(), beta.clone()), style),
                c.t,
                c.t
            ),
        };
        writeln!(out, "{:<width$}  {:>2}  {result}", forms[c.form], c.t).unwrap();
    }
    match report.first_failure() {
        None => {
            writeln!(out, "tangent up to t = {t_max}").unwrap();
            Ok(Report::pass(out))
        }
        Some(c) => {
            writeln!(out, "not tangent: fails for {} at t = {}", forms[c.form], c.t).unwrap();
            Ok(Report::fail(out))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Lemma {
    SymPower,
    JacobianPower,
    Divisibility,
}

pub struct VerifyArgs<'a> {
    pub lemma: Lemma,
    pub l: Option<usize>,
    pub p: usize,
    pub trials: usize,
    pub seed: u64,
    pub arrangement: Option<&'a str>,
    pub style: VarStyle,
}

fn matrix_text(m: &logdiff::linalg::RingMatrix<logdiff::Rational>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let r: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
            format!("[{}]", r.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn verify(args: VerifyArgs<'_>) -> Result<Report, CliError> {
    let VerifyArgs { lemma, p, trials, seed, style, .. } = args;
    let loaded = args.arrangement.map(load_arrangement).transpose()?;
    let l = match (&loaded, args.l) {
        (Some(a), Some(l)) if a.arrangement.dim() != l => {
            return Err(CliError::Usage(format!(
                "--l {l} does not match the arrangement dimension {}",
                a.arrangement.dim()
            )))
        }
        (Some(a), _) => a.arrangement.dim(),
        (None, l) => l.unwrap_or(2),
    };
    if !(1..=3).contains(&l) || p > 3 {
        return Err(CliError::Usage("sizes are limited to 1 <= l <= 3 and p <= 3".into()));
    }
    if p == 0 && lemma != Lemma::SymPower {
        return Err(CliError::Usage("p must be at least 1 for this check".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let label;
    match lemma {
        Lemma::SymPower => {
            label = format!("sym-power l={l} p={p}");
            for trial in 0..trials {
                let m = random_int_matrix(&mut rng, l, -5, 5);
                if !check_sym_power_det(&m, p).map_err(|e| CliError::Internal(e.to_string()))? {
                    failures.push(format!("trial {trial}: M = {}", matrix_text(&m)));
                }
            }
        }
        Lemma::JacobianPower => {
            let shape = PolyShape { max_degree: 1, max_terms: 2, coeff_bound: 3 };
            let fixture = loaded.as_ref().map(|a| resolve_basis(a, None)).transpose()?;
            label = match &loaded {
                Some(a) => format!("jacobian-power on {} p={p}", a.name),
                None => format!("jacobian-power l={l} p={p}"),
            };
            for trial in 0..trials {
                // fixture: its basis and a random linear change of coordinates;
                // otherwise random operators of order <= 1 and random polynomials
                let (theta, f): (Vec<DiffOp>, Vec<Poly>) = match &fixture {
                    Some(b) => {
                        let a = random_invertible_matrix(&mut rng, l);
                        let xs: Vec<Poly> = (0..l).map(|i| Poly::var(l, i)).collect();
                        (b.iter().map(Derivation::to_diffop).collect(), apply_linear_map(&a, &xs).unwrap())
                    }
                    None => {
                        let theta = (0..l)
                            .map(|_| {
                                random_derivation(&mut rng, l, shape).to_diffop()
                                    + DiffOp::from_poly(random_poly(&mut rng, l, shape))
                            })
                            .collect();
                        let f = (0..l).map(|_| random_nonzero_poly(&mut rng, l, PolyShape::default())).collect();
                        (theta, f)
                    }
                };
                let (lhs, rhs) = jacobian_power_sides(&f, &theta, p).map_err(|e| CliError::Internal(e.to_string()))?;
                if lhs != rhs {
                    let th: Vec<String> = theta.iter().map(|t| op_text(t, style)).collect();
                    let fs: Vec<String> = f.iter().map(|g| poly_text(g, style)).collect();
                    failures.push(format!("trial {trial}: theta = [{}], f = [{}]", th.join("; "), fs.join("; ")));
                }
            }
        }
        Lemma::Divisibility => {
            let loaded = match loaded {
                Some(a) => a,
                None => load_arrangement(&format!("builtin:boolean{l}"))?,
            };
            label = format!("divisibility on {} p={p}", loaded.name);
            let arr = &loaded.arrangement;
            let gens: Vec<DiffOp> = match resolve_basis(&loaded, None) {
                Ok(b) => b.iter().map(Derivation::to_diffop).collect(),
                Err(_) => {
                    let mut g = vec![euler_derivation(l).to_diffop()];
                    g.extend(q_partials(arr));
                    g
                }
            };
            let shape = PolyShape { max_degree: 2, max_terms: 2, coeff_bound: 3 };
            let qe = arr.defining_poly().pow(sym_power_exponent(l, p));
            let coords = arr.coordinates();
            for trial in 0..trials {
                let entries: Vec<DiffOp> = enumerate_wp(l, p)
                    .iter()
                    .map(|i| {
                        let top: Vec<usize> = i.entries().iter().map(|&k| 1 + (k - 1) % gens.len()).collect();
                        let lead = word_product(&gens, &top)
                            .left_mul_poly(&random_nonzero_poly(&mut rng, l, PolyShape::default()));
                        lead + random_word_combination(&mut rng, &gens, p, 2, shape).1
                    })
                    .collect();
                let fam = OpFamily::new(l, p, entries).map_err(|e| CliError::Internal(e.to_string()))?;
                let jac = higher_jacobian(&coords, &fam).map_err(|e| CliError::Internal(e.to_string()))?;
                if jac.exact_divide(&qe).is_err() {
                    let ops: Vec<String> = fam.entries().iter().map(|u| op_text(u, style)).collect();
                    failures.push(format!("trial {trial}: family = [{}]", ops.join("; ")));
                }
            }
        }
    }
    let mut out = String::new();
    writeln!(out, "{label} seed={seed}: {}/{trials} passed", trials - failures.len()).unwrap();
    for f in &failures {
        writeln!(out, "FAIL {f}").unwrap();
    }
    Ok(if failures.is_empty() { Report::pass(out) } else { Report::fail(out) })
}
