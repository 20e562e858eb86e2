//! Command execution and rendering.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Number, Value};

use snakejones::cfrac::{
    even_cf, even_cf_for_link, even_cf_same_link, numerator_rec, positive_cf, sign_sequence,
    type_sequence,
};
use snakejones::enumerate::{even_cfs, positive_cfs};
use snakejones::jones::{
    degree_and_sign, f_recursive, jones_direct, jones_recursive, jones_via_f, mirror,
    specialized_f_even, specialized_f_positive, volume_bounds,
};
use snakejones::laurent::specialize_y;
use snakejones::snake::{count_matchings, f_polynomial, render_ascii, snake_from_even, snake_from_positive};
use snakejones::{Engine, Error, EvenCF, HLPoly, HalfInt, JonesResult, PositiveCF, Rat, Sign, SnakeGraph};

use crate::input::{parse_input, Input};
use crate::{CliError, Command, EngineChoice, Format, Request};

/// Outcome of one command. Serialized fields follow the documented JSON
/// schema; command-specific fields come after it.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_cf: Option<Vec<Number>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_cf: Option<Vec<Number>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_sequence: Option<Vec<i32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leading_sign: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub link: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_sequence: Option<Vec<i32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tiles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matchings: Option<Number>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume_bounds: Option<[f64; 2]>,
    /// Human-readable rendering.
    #[serde(skip)]
    pub text: Vec<String>,
    /// LaTeX rendering of the polynomial, when there is one.
    #[serde(skip)]
    pub latex: Option<String>,
}

/// A reduced fraction.
#[derive(Debug, Clone, Serialize)]
pub struct Fraction {
    pub num: Number,
    pub den: Number,
}

fn number(n: &BigInt) -> Number {
    n.to_string().parse().expect("integers are valid JSON numbers")
}

fn numbers(entries: &[BigInt]) -> Vec<Number> {
    entries.iter().map(number).collect()
}

fn signs(s: &[Sign]) -> Vec<i32> {
    s.iter().map(|s| s.to_i32()).collect()
}

/// `[[exponent, coefficient], ...]` in descending order, exponents as
/// strings `"k"` or `"k/2"`.
pub fn poly_to_json(p: &HLPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e.to_string(), number(c)])).collect())
}

/// Inverse of [`poly_to_json`].
pub fn poly_from_json(v: &Value) -> Result<HLPoly, CliError> {
    let bad = |msg: &str| CliError::Usage(format!("malformed polynomial payload: {msg}"));
    let terms = v.as_array().ok_or_else(|| bad("expected an array"))?;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("expected pairs"))?;
        let exp: HalfInt = pair[0]
            .as_str()
            .ok_or_else(|| bad("exponent must be a string"))?
            .parse()?;
        let coeff: BigInt = match &pair[1] {
            Value::Number(n) => n.to_string().parse().map_err(|_| bad("coefficient must be an integer"))?,
            _ => return Err(bad("coefficient must be a number")),
        };
        out.push((exp, coeff));
    }
    Ok(HLPoly::from_terms(out))
}

fn fraction(r: &Rat) -> Fraction {
    Fraction {
        num: number(r.num()),
        den: number(r.den()),
    }
}

fn is_link_value(r: &Rat) -> bool {
    r.num() > r.den() && r.den().is_positive()
}

fn both_odd(r: &Rat) -> bool {
    (r.num() * r.den()) % 2u8 != BigInt::from(0)
}

/// Even expansion whose Jones polynomial the command reports, and a notice
/// when it is not the expansion of the input value itself.
fn even_for_jones(input: &Input) -> Result<(EvenCF, Option<String>), CliError> {
    let r = match input {
        Input::Even(cf) => return Ok((cf.clone(), None)),
        Input::Positive(cf) => cf.value(),
        Input::Fraction(r) => r.clone(),
    };
    if is_link_value(&r) {
        let cf = even_cf_same_link(&r)?;
        let notice = both_odd(&r).then(|| {
            format!(
                "{r} has odd numerator and denominator; using {cf}, the even expansion of {}, \
                 which describes the same oriented link",
                cf.value()
            )
        });
        return Ok((cf, notice));
    }
    Ok((even_cf(&r)?, None))
}

/// Positive expansion of `|value|` for inputs given as fractions or even
/// expansions; the positive input itself otherwise.
fn positive_for(input: &Input) -> Result<PositiveCF, CliError> {
    match input {
        Input::Positive(cf) => Ok(cf.clone()),
        other => Ok(positive_cf(&other.value().abs())?),
    }
}

fn run_engine(engine: Engine, input: &Input, cf: &EvenCF) -> Result<JonesResult, CliError> {
    Ok(match engine {
        Engine::Recursive => jones_recursive(cf)?,
        Engine::FPoly => jones_via_f(cf)?,
        Engine::Direct => match input {
            Input::Positive(p) => jones_direct(p)?,
            _ => {
                let p = positive_cf(&cf.value().abs())?;
                if cf.signs()[0] == Sign::Plus {
                    jones_direct(&p)?
                } else {
                    // the positive expansion describes the mirror image
                    mirror(&jones_direct(&p)?)
                }
            }
        },
    })
}

fn fill_poly(rep: &mut Report, p: &HLPoly) {
    if let (Ok((deg, lead)), Ok(width)) = (p.leading_term(), p.width()) {
        rep.degree = Some(deg.to_string());
        rep.leading_sign = Some(Sign::of(&lead).to_i32());
        rep.width = Some(width.to_string());
    }
    rep.coefficients = Some(poly_to_json(p));
    rep.latex = Some(p.to_latex());
}

/// Executes a request.
pub fn run(req: &Request) -> Result<Report, CliError> {
    if req.command == Command::Verify {
        return verify(req.max_sum);
    }
    let raw = req
        .input
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs an input".into()))?;
    let input = parse_input(raw, req.hint())?;
    let mut rep = Report {
        input: raw.trim().to_string(),
        value: Some(fraction(&input.value())),
        ..Report::default()
    };
    match req.command {
        Command::Convert => convert(&input, &mut rep)?,
        Command::Snake => snake(&input, &mut rep)?,
        Command::Fpoly => fpoly(&input, req.full, &mut rep)?,
        Command::Jones => jones(&input, req.engine, &mut rep)?,
        Command::Volume => volume(&input, &mut rep)?,
        Command::Verify => unreachable!("handled above"),
    }
    Ok(rep)
}

fn convert(input: &Input, rep: &mut Report) -> Result<(), CliError> {
    let r = input.value();
    rep.text.push(format!("value: {r}"));
    let magnitude = r.abs();
    if magnitude.num() > magnitude.den() || magnitude.den().is_one() {
        let p = positive_cf(&magnitude)?;
        rep.positive_cf = Some(numbers(p.entries()));
        let note = if r.num().is_negative() { " (of |value|)" } else { "" };
        rep.text.push(format!("positive: {p}{note}"));
    }
    let even = if both_odd(&r) && is_link_value(&r) {
        let cf = even_cf_for_link(&r)?;
        let notice = format!(
            "{r} has odd numerator and denominator; {cf} is the even expansion of {}, \
             which gives the same link",
            cf.value()
        );
        rep.text.push(format!("even: {cf} (of {})", cf.value()));
        rep.notice = Some(notice);
        cf
    } else {
        let cf = even_cf(&r)?;
        rep.text.push(format!("even: {cf}"));
        cf
    };
    rep.even_cf = Some(numbers(even.entries()));
    let signs_seq = sign_sequence(&even);
    let types = type_sequence(&even);
    rep.text.push(format!("sign sequence: {signs_seq}"));
    rep.text.push(format!("type sequence: {types}"));
    rep.sign_sequence = Some(signs(signs_seq.signs()));
    rep.type_sequence = Some(signs(types.types()));
    let p = even.value();
    let link = if p.num() % 2u8 == BigInt::from(0) { "2-component link" } else { "knot" };
    rep.text.push(format!("link: {link}"));
    rep.link = Some(link.into());
    if let Some(n) = &rep.notice {
        rep.text.push(format!("note: {n}"));
    }
    Ok(())
}

fn graph_of(input: &Input) -> Result<SnakeGraph, CliError> {
    Ok(match input {
        Input::Even(cf) => snake_from_even(cf)?,
        other => snake_from_positive(&positive_for(other)?)?,
    })
}

fn snake(input: &Input, rep: &mut Report) -> Result<(), CliError> {
    let g = graph_of(input)?;
    let count = count_matchings(&g);
    rep.text.push(render_ascii(&g).trim_end().to_string());
    rep.text.push(format!("tiles: {}", g.tile_count()));
    rep.text.push(format!("perfect matchings: {count}"));
    rep.tiles = Some(g.tile_count());
    rep.matchings = Some(number(&count));
    rep.steps = Some(g.step_word());
    Ok(())
}

fn fpoly(input: &Input, full: bool, rep: &mut Report) -> Result<(), CliError> {
    if full {
        let g = graph_of(input)?;
        let f = f_polynomial(&g)?;
        rep.tiles = Some(g.tile_count());
        rep.f_polynomial = Some(f.to_string());
        rep.text.push(f.to_string());
        let special = specialize_y(&f, g.tile_count())?;
        fill_poly(rep, &special);
        return Ok(());
    }
    let f = match input {
        Input::Even(cf) => specialized_f_even(cf)?,
        other => specialized_f_positive(&positive_for(other)?)?,
    };
    fill_poly(rep, &f);
    rep.text.push(f.to_string());
    Ok(())
}

fn jones(input: &Input, choice: EngineChoice, rep: &mut Report) -> Result<(), CliError> {
    let (cf, notice) = even_for_jones(input)?;
    rep.even_cf = Some(numbers(cf.entries()));
    rep.type_sequence = Some(signs(type_sequence(&cf).types()));
    if let Ok(p) = positive_for(input) {
        rep.positive_cf = Some(numbers(p.entries()));
    }
    let engines: Vec<Engine> = match choice {
        EngineChoice::Recursive => vec![Engine::Recursive],
        EngineChoice::Direct => vec![Engine::Direct],
        EngineChoice::Fpoly => vec![Engine::FPoly],
        EngineChoice::All => Engine::ALL.to_vec(),
    };
    let results = engines
        .iter()
        .map(|&e| run_engine(e, input, &cf))
        .collect::<Result<Vec<_>, _>>()?;
    let first = &results[0];
    if results.len() > 1 {
        let agree: Vec<bool> = results.iter().map(|r| r.same_polynomial(first)).collect();
        rep.checks = Some(
            results
                .iter()
                .zip(&agree)
                .map(|(r, ok)| json!({ "engine": r.engine.name(), "agrees": ok }))
                .collect(),
        );
        if agree.contains(&false) {
            let detail = results
                .iter()
                .map(|r| format!("{} gives {}", r.engine, r.poly))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(CliError::CrossCheckMismatch {
                input: rep.input.clone(),
                detail,
            });
        }
        for r in &results {
            rep.text.push(format!("{}: {}", r.engine, r.poly));
        }
        rep.engine = Some("all".into());
    } else {
        rep.text.push(first.poly.to_string());
        rep.engine = Some(first.engine.name().into());
    }
    fill_poly(rep, &first.poly);
    if let Some(n) = notice {
        rep.text.push(format!("note: {n}"));
        rep.notice = Some(n);
    }
    Ok(())
}

fn volume(input: &Input, rep: &mut Report) -> Result<(), CliError> {
    let p = positive_for(input)?;
    let (lo, hi) = volume_bounds(&p)?;
    rep.positive_cf = Some(numbers(p.entries()));
    rep.volume_bounds = Some([lo, hi]);
    rep.text.push(format!("{lo} < vol < {hi}"));
    Ok(())
}

struct Tally {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, input: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(input());
        }
    }
}

/// Cross-checks every engine and closed form on all expansions with
/// absolute entry sum at most `max_sum`.
fn verify(max_sum: usize) -> Result<Report, CliError> {
    let mut engines = Tally::new("recursive = fpoly");
    let mut recursion = Tally::new("F recursion = specialized F");
    let mut matchings = Tally::new("snake graph F = specialized F");
    let mut direct = Tally::new("direct = recursive");
    let mut degree = Tally::new("degree and leading sign");
    let mut width = Tally::new("width = entry sum");
    let mut alternating = Tally::new("alternating");
    let mut numerators = Tally::new("matchings = numerator");

    let sizes: Vec<usize> = (2..=max_sum).step_by(2).collect();
    for cf in even_cfs(max_sum, &sizes) {
        let name = || cf.to_string();
        let v = jones_recursive(&cf)?;
        engines.record(jones_via_f(&cf)?.poly == v.poly, name);
        let (j, delta) = degree_and_sign(&cf)?;
        degree.record(v.degree == j && v.leading_sign == delta, name);
        let p = positive_cf(&cf.value().abs())?;
        let sum: usize = p.small_entries()?.iter().sum();
        width.record(v.poly.width()? == HalfInt::from_int(sum as i64), name);
        alternating.record(v.poly.is_alternating()?, name);
        let d = run_engine(Engine::Direct, &Input::Even(cf.clone()), &cf)?;
        direct.record(d.poly == v.poly, name);
        if cf.signs()[0] == Sign::Plus {
            let f = specialized_f_even(&cf)?;
            recursion.record(f_recursive(&cf)? == f, name);
            let g = snake_from_even(&cf)?;
            match f_polynomial(&g) {
                Ok(full) => matchings.record(specialize_y(&full, g.tile_count())? == f, name),
                Err(Error::TooManyTiles(_) | Error::BudgetExceeded { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    for cf in positive_cfs(max_sum, max_sum) {
        let count = count_matchings(&snake_from_positive(&cf)?);
        numerators.record(count == numerator_rec(cf.entries()), || cf.to_string());
    }

    let tallies = [engines, recursion, matchings, direct, degree, width, alternating, numerators];
    let mut rep = Report {
        input: format!("all expansions with entry sum <= {max_sum}"),
        ..Report::default()
    };
    let total: usize = tallies.iter().map(|t| t.checked).sum();
    let failed: usize = tallies.iter().map(|t| t.failures.len()).sum();
    rep.checks = Some(
        tallies
            .iter()
            .map(|t| json!({ "check": t.name, "checked": t.checked, "failures": t.failures }))
            .collect(),
    );
    for t in &tallies {
        rep.text.push(format!("{}: {} checked, {} failed", t.name, t.checked, t.failures.len()));
    }
    rep.text.push(format!("total: {total} checked, {failed} failed"));
    if failed > 0 {
        let detail = tallies
            .iter()
            .filter(|t| !t.failures.is_empty())
            .map(|t| format!("{} fails on {}", t.name, t.failures.join(", ")))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(CliError::CrossCheckMismatch {
            input: rep.input,
            detail,
        });
    }
    Ok(rep)
}

/// Renders a report.
pub fn emit(rep: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(rep.text.join("\n")),
        Format::Json => Ok(serde_json::to_string(rep).expect("reports serialize")),
        Format::Latex => rep
            .latex
            .clone()
            .ok_or_else(|| CliError::Usage("LaTeX output is only available for polynomials".into())),
    }
}
