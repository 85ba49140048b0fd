//! Batch job surface: parse an exact job document, run one command,
//! render a deterministic report.
//!
//! Job documents are TOML with every coefficient written as an exact
//! rational string "p/q" (never a float), polynomial coefficients listed
//! low to high, and an optional number field declared once.  Elements of
//! a declared field are comma-joined coordinate strings in the power
//! basis of its generator.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use toml::Value;

use crate::classifier::{
    EllipticCurve, GenusBucket, SignatureClass, elliptic_x_fiber_decision,
    elliptic_y_fiber_decision, genus_bucket, has_infinitely_many_fiber_values, signature_class,
};
use crate::error::Error;
use crate::field::{NFElem, NumberField, Rat, rat_int};
use crate::orbit::fiber_track;
use crate::poly::Poly;
use crate::qfactor::number_field;
use crate::ramification::{orbifold_o2, portrait};
use crate::ratfunc::RatFunc;
use crate::semiconjugacy::{
    SemiconjugacyCertificate, construct_pair_euclid2222, construct_pair_power_dihedral,
    construct_pair_s4, verify_semiconjugacy,
};
use crate::{KRatFunc, classifier, ramification};

/// Job commands accepted by the batch surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Portrait,
    Classify,
    Semiconj,
    Verify,
    Orbit,
    Elliptic,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Portrait => "portrait",
            Command::Classify => "classify",
            Command::Semiconj => "semiconj",
            Command::Verify => "verify",
            Command::Orbit => "orbit",
            Command::Elliptic => "elliptic",
        }
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "portrait" => Ok(Command::Portrait),
            "classify" => Ok(Command::Classify),
            "semiconj" => Ok(Command::Semiconj),
            "verify" => Ok(Command::Verify),
            "orbit" => Ok(Command::Orbit),
            "elliptic" => Ok(Command::Elliptic),
            other => Err(Error::Parse(format!("unknown command {other:?}"))),
        }
    }
}

/// Number-field declaration: minimal polynomial over Q plus a display
/// label for the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub minpoly: Vec<Rat>,
    pub label: String,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<NumberField>, Error> {
        number_field(self.minpoly.clone(), &self.label)
    }
}

/// A fully parsed batch job.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub field: Option<FieldSpec>,
    pub functions: BTreeMap<String, KRatFunc>,
    pub m: Option<usize>,
    pub steps: Option<usize>,
    pub precision: Option<u32>,
    pub seed: Option<Rat>,
    pub a: Option<Rat>,
    pub b: Option<Rat>,
}

/// Rendered report plus the process exit code (0 success, 2 construction
/// not implemented, 1 error).
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let err = || Error::Parse(format!("malformed rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let num = p.trim().parse().map_err(|_| err())?;
        let den: num_bigint::BigInt = q.trim().parse().map_err(|_| err())?;
        if den == 0.into() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rat::new(num, den))
    } else {
        Ok(Rat::from(s.parse::<num_bigint::BigInt>().map_err(|_| err())?))
    }
}

fn parse_elem(s: &str, field: &Option<Arc<NumberField>>) -> Result<NFElem, Error> {
    let parts: Vec<Rat> = s.split(',').map(parse_rat).collect::<Result<_, _>>()?;
    match (parts.len(), field) {
        (1, None) => Ok(NFElem::from_rat(parts.into_iter().next().unwrap())),
        (1, Some(k)) => Ok(NFElem::from_rat_in(k, parts.into_iter().next().unwrap())),
        (_, Some(k)) if parts.len() <= k.degree() => Ok(NFElem::from_coords(k, parts)),
        _ => Err(Error::Parse(format!(
            "coefficient {s:?} has coordinates but no matching field declaration"
        ))),
    }
}

fn render_elem(x: &NFElem) -> String {
    let coords = x.coords();
    let width = coords.iter().rposition(|c| *c != rat_int(0)).map_or(1, |i| i + 1);
    coords[..width].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn value_str<'v>(v: &'v Value, what: &str) -> Result<&'v str, Error> {
    v.as_str().ok_or_else(|| Error::Parse(format!("{what} must be a string")))
}

fn coeff_list(v: &Value, what: &str, field: &Option<Arc<NumberField>>) -> Result<Poly<NFElem>, Error> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be a list")))?;
    let coeffs = arr
        .iter()
        .map(|c| parse_elem(value_str(c, what)?, field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

fn opt_usize(table: &toml::Table, key: &str) -> Result<Option<usize>, Error> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::Integer(n)) if *n >= 0 => Ok(Some(*n as usize)),
        Some(_) => Err(Error::Parse(format!("parameter {key} must be a nonnegative integer"))),
    }
}

fn opt_rat(table: &toml::Table, key: &str) -> Result<Option<Rat>, Error> {
    match table.get(key) {
        None => Ok(None),
        Some(v) => Ok(Some(parse_rat(value_str(v, key)?)?)),
    }
}

/// Parse a job document.  All numbers are exact; a reducible minimal
/// polynomial or a zero denominator is rejected.
pub fn parse_input(text: &str) -> Result<JobSpec, Error> {
    let table: toml::Table =
        text.parse().map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
    let command = value_str(
        table.get("command").ok_or_else(|| Error::Parse("missing command".into()))?,
        "command",
    )?
    .parse()?;

    let field_spec = match table.get("field") {
        None => None,
        Some(Value::Table(t)) => {
            let minpoly = t
                .get("minpoly")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::Parse("field.minpoly must be a list".into()))?
                .iter()
                .map(|c| parse_rat(value_str(c, "field.minpoly")?))
                .collect::<Result<Vec<_>, _>>()?;
            let label = value_str(
                t.get("label").ok_or_else(|| Error::Parse("field.label missing".into()))?,
                "field.label",
            )?
            .to_string();
            Some(FieldSpec { minpoly, label })
        }
        Some(_) => return Err(Error::Parse("field must be a table".into())),
    };
    let field = field_spec.as_ref().map(|f| f.build()).transpose()?;

    let mut functions = BTreeMap::new();
    if let Some(v) = table.get("functions") {
        let t = v.as_table().ok_or_else(|| Error::Parse("functions must be a table".into()))?;
        for (name, body) in t {
            let body =
                body.as_table().ok_or_else(|| Error::Parse(format!("function {name} malformed")))?;
            let num = coeff_list(
                body.get("num").ok_or_else(|| Error::Parse(format!("function {name}: num missing")))?,
                "num",
                &field,
            )?;
            let den = coeff_list(
                body.get("den").ok_or_else(|| Error::Parse(format!("function {name}: den missing")))?,
                "den",
                &field,
            )?;
            functions.insert(name.clone(), RatFunc::new(num, den)?);
        }
    }

    let empty = toml::Table::new();
    let params = match table.get("params") {
        None => &empty,
        Some(Value::Table(t)) => t,
        Some(_) => return Err(Error::Parse("params must be a table".into())),
    };
    Ok(JobSpec {
        command,
        field: field_spec,
        functions,
        m: opt_usize(params, "m")?,
        steps: opt_usize(params, "steps")?,
        precision: opt_usize(params, "precision")?.map(|p| p as u32),
        seed: opt_rat(params, "seed")?,
        a: opt_rat(params, "a")?,
        b: opt_rat(params, "b")?,
    })
}

/// Serialize a job to the canonical document form; `parse_input` is an
/// exact inverse.
pub fn serialize_job(job: &JobSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command = \"{}\"", job.command.as_str());
    if let Some(f) = &job.field {
        let _ = writeln!(out, "\n[field]");
        let coeffs: Vec<String> = f.minpoly.iter().map(|c| format!("\"{c}\"")).collect();
        let _ = writeln!(out, "minpoly = [{}]", coeffs.join(", "));
        let _ = writeln!(out, "label = \"{}\"", f.label);
    }
    for (name, func) in &job.functions {
        let _ = writeln!(out, "\n[functions.{name}]");
        for (key, poly) in [("num", func.num()), ("den", func.den())] {
            let coeffs: Vec<String> =
                poly.coeffs().iter().map(|c| format!("\"{}\"", render_elem(c))).collect();
            let _ = writeln!(out, "{key} = [{}]", coeffs.join(", "));
        }
    }
    let mut params: Vec<String> = vec![];
    if let Some(m) = job.m {
        params.push(format!("m = {m}"));
    }
    if let Some(s) = job.steps {
        params.push(format!("steps = {s}"));
    }
    if let Some(p) = job.precision {
        params.push(format!("precision = {p}"));
    }
    for (key, val) in [("seed", &job.seed), ("a", &job.a), ("b", &job.b)] {
        if let Some(v) = val {
            params.push(format!("{key} = \"{v}\""));
        }
    }
    if !params.is_empty() {
        let _ = writeln!(out, "\n[params]");
        for p in params {
            let _ = writeln!(out, "{p}");
        }
    }
    out
}

fn get_fn<'j>(job: &'j JobSpec, name: &str) -> Result<&'j KRatFunc, Error> {
    job.functions
        .get(name)
        .ok_or_else(|| Error::Validation(format!("job is missing function {name}")))
}

fn signature_text(sig: &[usize]) -> String {
    let inner: Vec<String> = sig.iter().map(|n| n.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn render_function(out: &mut String, name: &str, f: &KRatFunc) {
    let num: Vec<String> = f.num().coeffs().iter().map(|c| format!("\"{}\"", render_elem(c))).collect();
    let den: Vec<String> = f.den().coeffs().iter().map(|c| format!("\"{}\"", render_elem(c))).collect();
    let _ = writeln!(out, "{name}.num = [{}]", num.join(", "));
    let _ = writeln!(out, "{name}.den = [{}]", den.join(", "));
}

fn render_certificate(out: &mut String, cert: &SemiconjugacyCertificate) {
    render_function(out, "A", &cert.a);
    render_function(out, "B", &cert.b);
    let _ = writeln!(out, "identity_checked = {}", cert.identity_checked);
    let _ = writeln!(out, "degrees_coprime = {}", cert.degrees_coprime);
    let injective = cert.spot_checks.iter().filter(|s| s.injective).count();
    let worst = cert.spot_checks.iter().map(|s| s.max_residual_log2).max();
    let worst = match worst {
        None => "n/a".to_string(),
        Some(i64::MIN) => "exact".to_string(),
        Some(w) => w.to_string(),
    };
    let _ = writeln!(
        out,
        "spot_checks = {} samples, {} injective, max residual log2 {}",
        cert.spot_checks.len(),
        injective,
        worst,
    );
}

fn smallest_coprime(n: usize) -> usize {
    (2..).find(|m| m.gcd(&n) == 1).unwrap()
}

fn run_classify(v: &KRatFunc) -> Result<String, Error> {
    let o2 = orbifold_o2(v)?;
    let mut out = String::new();
    let _ = writeln!(out, "signature = {}", signature_text(&o2.signature()));
    let _ = writeln!(out, "chi = {}", classifier::chi_o2(v)?);
    let bucket = match genus_bucket(v)? {
        GenusBucket::Zero => "0",
        GenusBucket::One => "1",
        GenusBucket::AtLeastTwo => ">=2",
    };
    let _ = writeln!(out, "genus_bucket = {bucket}");
    if has_infinitely_many_fiber_values(v)? {
        let _ = writeln!(
            out,
            "decision = yes: some number field contains infinitely many full fibers of V"
        );
    } else {
        let _ = writeln!(
            out,
            "decision = no: every number field contains only finitely many full fibers of V"
        );
    }
    Ok(out)
}

fn run_semiconj(job: &JobSpec) -> Result<Report, Error> {
    let v = get_fn(job, "V")?;
    let o2 = orbifold_o2(v)?;
    let class = signature_class(&o2)?;
    let m = job.m.unwrap_or_else(|| smallest_coprime(v.degree()));
    let mut out = String::new();
    let _ = writeln!(out, "signature = {}", signature_text(&o2.signature()));
    let not_implemented = |mut out: String, what: &str| {
        let _ = writeln!(out, "verdict = construction not implemented: {what}");
        Ok(Report { text: out, exit_code: 2 })
    };
    match class {
        SignatureClass::Unramified | SignatureClass::NN(_) | SignatureClass::TwoTwoN(_) => {
            let _ = writeln!(out, "m = {m}");
            let cert = construct_pair_power_dihedral(v, m)?;
            render_certificate(&mut out, &cert);
            Ok(Report { text: out, exit_code: 0 })
        }
        SignatureClass::Octahedral | SignatureClass::Tetrahedral => {
            match construct_pair_s4(v) {
                Ok(cert) => {
                    render_certificate(&mut out, &cert);
                    Ok(Report { text: out, exit_code: 0 })
                }
                Err(Error::ConstructionNotImplemented(what)) => not_implemented(out, &what),
                Err(e) => Err(e),
            }
        }
        SignatureClass::Euclid2222 => {
            let _ = writeln!(out, "m = {m}");
            let a = construct_pair_euclid2222(v, m)?;
            render_function(&mut out, "A", &a);
            let _ = writeln!(
                out,
                "note = Lattes case: A only; B is covered in the elliptic-commutation special case"
            );
            Ok(Report { text: out, exit_code: 0 })
        }
        SignatureClass::Icosahedral => not_implemented(out, "icosahedral equivariant data"),
        SignatureClass::Euclid333 | SignatureClass::Euclid244 | SignatureClass::Euclid236 => {
            not_implemented(out, "euclidean CM-lattice case")
        }
        SignatureClass::Hyperbolic => not_implemented(out, "hyperbolic signature"),
    }
}

fn run_orbit(job: &JobSpec) -> Result<String, Error> {
    let v = get_fn(job, "V")?;
    let a = get_fn(job, "A")?;
    let b = get_fn(job, "B")?;
    let y0 = NFElem::from_rat(job.seed.clone().unwrap_or_else(|| rat_int(1)));
    let steps = job.steps.unwrap_or(10);
    let prec = job.precision.unwrap_or(256);
    let trace = fiber_track(v, a, b, &y0, steps, prec)?;
    let mut out = String::new();
    let _ = writeln!(out, "precision_bits = {}", trace.precision_bits);
    for (i, y) in trace.y_orbit.iter().enumerate() {
        match y {
            Some(z) => {
                let _ = writeln!(out, "y[{i}] ~ {z}");
            }
            None => {
                let _ = writeln!(out, "y[{i}] = inf");
            }
        }
    }
    let bij = trace.bijective_flags.iter().filter(|&&f| f).count();
    let _ = writeln!(out, "bijective_steps = {bij}/{}", trace.bijective_flags.len());
    let worst = trace.transport_residuals.iter().max();
    let _ = writeln!(
        out,
        "max_residual_log2 = {}",
        worst.map_or("n/a".into(), |w| {
            if *w == i64::MIN { "exact".to_string() } else { w.to_string() }
        })
    );
    Ok(out)
}

fn run_elliptic(job: &JobSpec) -> Result<String, Error> {
    let a = job.a.clone().ok_or_else(|| Error::Validation("elliptic needs parameter a".into()))?;
    let b = job.b.clone().ok_or_else(|| Error::Validation("elliptic needs parameter b".into()))?;
    let e = EllipticCurve::from_rats(a, b)?;
    let (yes, witness) = elliptic_y_fiber_decision(&e)?;
    let mut out = String::new();
    let _ = writeln!(out, "y_fibers = {}", if yes { "yes" } else { "no" });
    let _ = writeln!(out, "y_witness_signature = {}", signature_text(&witness.signature()));
    let _ = writeln!(out, "x_fibers = {}", if elliptic_x_fiber_decision(&e)? { "yes" } else { "no" });
    Ok(out)
}

/// Execute a job and render its deterministic report.
pub fn run(job: &JobSpec) -> Result<Report, Error> {
    let ok = |text: String| Report { text, exit_code: 0 };
    match job.command {
        Command::Portrait => {
            let v = get_fn(job, "V")?;
            let p = portrait(v)?;
            let mut out = String::new();
            let _ = writeln!(out, "map_degree = {}", p.map_degree);
            for class in &p.classes {
                let degs: Vec<String> =
                    class.local_degrees.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "critical_value {} : [{}]", class.point, degs.join(","));
            }
            let o2 = ramification::orbifold_o2(v)?;
            let _ = writeln!(out, "signature = {}", signature_text(&o2.signature()));
            Ok(ok(out))
        }
        Command::Classify => Ok(ok(run_classify(get_fn(job, "V")?)?)),
        Command::Semiconj => run_semiconj(job),
        Command::Verify => {
            let cert = verify_semiconjugacy(get_fn(job, "A")?, get_fn(job, "V")?, get_fn(job, "B")?);
            let mut out = String::new();
            render_certificate(&mut out, &cert);
            Ok(ok(out))
        }
        Command::Orbit => Ok(ok(run_orbit(job)?)),
        Command::Elliptic => Ok(ok(run_elliptic(job)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, rat};

    const CLASSIFY_FLAGSHIP: &str = r#"
command = "classify"

[functions.V]
num = ["0", "0", "0", "-4", "3"]
den = ["1"]
"#;

    #[test]
    fn parse_and_roundtrip() {
        let job = parse_input(CLASSIFY_FLAGSHIP).unwrap();
        assert_eq!(job.command, Command::Classify);
        assert_eq!(job.functions["V"].degree(), 4);
        let text = serialize_job(&job);
        assert_eq!(parse_input(&text).unwrap(), job);
    }

    #[test]
    fn roundtrip_with_field_and_params() {
        let spec = FieldSpec { minpoly: vec![rat_int(1), rat_int(0), rat_int(1)], label: "i".into() };
        let k = spec.build().unwrap();
        let i = NFElem::generator(&k);
        let v = RatFunc::new(
            Poly::new(vec![i.clone(), <NFElem as Field>::one()]),
            Poly::new(vec![<NFElem as Field>::one()]),
        )
        .unwrap();
        let job = JobSpec {
            command: Command::Orbit,
            field: Some(spec),
            functions: [("V".to_string(), v)].into(),
            m: Some(3),
            steps: Some(7),
            precision: Some(192),
            seed: Some(rat(1, 3)),
            a: None,
            b: None,
        };
        let text = serialize_job(&job);
        assert_eq!(parse_input(&text).unwrap(), job);
    }

    #[test]
    fn classify_flagship_report() {
        let job = parse_input(CLASSIFY_FLAGSHIP).unwrap();
        let report = run(&job).unwrap();
        assert_eq!(report.exit_code, 0);
        assert!(report.text.contains("signature = {2,3,4}"));
        assert!(report.text.contains("chi = 1/12"));
        assert!(report.text.contains("genus_bucket = 0"));
        assert!(report.text.contains("decision = yes"));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_input(""), Err(Error::Parse(_))));
        assert!(parse_input("command = \"launch\"").is_err());
        let bad_den = r#"
command = "classify"
[functions.V]
num = ["1"]
den = ["0"]
"#;
        assert!(parse_input(bad_den).is_err());
    }

    #[test]
    fn elliptic_report() {
        let job = JobSpec {
            command: Command::Elliptic,
            field: None,
            functions: BTreeMap::new(),
            m: None,
            steps: None,
            precision: None,
            seed: None,
            a: Some(rat_int(1)),
            b: Some(rat_int(1)),
        };
        let report = run(&job).unwrap();
        assert!(report.text.contains("y_fibers = no"));
        assert!(report.text.contains("x_fibers = yes"));
    }

    #[test]
    fn hyperbolic_semiconj_exits_2() {
        // Generic degree-7 polynomial: hyperbolic signature.
        let job = JobSpec {
            command: Command::Semiconj,
            field: None,
            functions: [(
                "V".to_string(),
                crate::semiconjugacy::q_map(&[0, 1, 0, 0, 0, 0, 0, 1], &[1]),
            )]
            .into(),
            m: None,
            steps: None,
            precision: None,
            seed: None,
            a: None,
            b: None,
        };
        let report = run(&job).unwrap();
        assert_eq!(report.exit_code, 2);
        assert!(report.text.contains("construction not implemented"));
    }
}
