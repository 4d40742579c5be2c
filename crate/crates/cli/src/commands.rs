use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use twistq_core::chain::{Chain, Cochain, Complex, Variant, DEFAULT_MAX_BASIS};
use twistq_core::cocycles::{
    dihedral_integral_cocycle, lift_h1, modular_extension_cocycle, polynomial_extension_cocycle, propagate_seeds,
    ExtensionCocycle,
};
use twistq_core::coeff::{parse_poly, AlexanderRing, GroupRingElem};
use twistq_core::knot::{parse_pd, state_sum, state_sum_surface, FaceRef, SurfacePresentation};
use twistq_core::quandle::{find_isomorphism, FiniteQuandle};
use twistq_core::suite::{self, Catalog};

use crate::{CocycleCmd, Command, Construct, HomologyArgs, InvariantArgs, QuandleCmd, Space, SurfaceArgs};

const MAX_BASIS_VAR: &str = "TWISTQ_MAX_BASIS";

#[derive(Debug)]
pub struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<twistq_core::Error> for CliError {
    fn from(e: twistq_core::Error) -> Self {
        CliError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Output {
    pub inputs: Vec<(String, Vec<u8>)>,
    pub result: Value,
}

#[derive(Default)]
struct Inputs(Vec<(String, Vec<u8>)>);

impl Inputs {
    fn read(&mut self, path: &str) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| CliError(format!("cannot read {path}: {e}")))?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| CliError(format!("{path} is not UTF-8")))?;
        self.0.push((path.to_string(), bytes));
        Ok(text)
    }

    /// A quandle name, or failing that a table file.
    fn quandle(&mut self, spec: &str) -> Result<FiniteQuandle> {
        match spec.parse::<FiniteQuandle>() {
            Ok(q) => Ok(q),
            Err(_) if Path::new(spec).is_file() => Ok(FiniteQuandle::parse_table(&self.read(spec)?)?),
            Err(e) => Err(e.into()),
        }
    }

    fn space(&mut self, s: &Space) -> Result<(FiniteQuandle, AlexanderRing)> {
        Ok((self.quandle(&s.quandle)?, s.coeff.parse()?))
    }
}

fn max_basis() -> Result<usize> {
    match std::env::var(MAX_BASIS_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError(format!("{MAX_BASIS_VAR} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_BASIS),
    }
}

fn complex(x: FiniteQuandle, ring: AlexanderRing, variant: &str) -> Result<Complex> {
    let v: Variant = variant.parse()?;
    Ok(Complex::new(x, ring, v).with_max_basis(max_basis()?))
}

fn big(v: &BigInt) -> Value {
    i64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()))
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn lines(text: &str) -> Value {
    Value::Array(text.lines().map(|l| Value::from(l.to_string())).collect())
}

fn write_out(path: &Option<String>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| CliError(format!("cannot write {p}: {e}")))?;
    }
    Ok(())
}

pub fn run(cmd: &Command) -> Result<Output> {
    let mut inputs = Inputs::default();
    let result = match cmd {
        Command::Homology(a) => homology(&mut inputs, a)?,
        Command::Cohomology(a) => cohomology(&mut inputs, a)?,
        Command::Cocycle(c) => cocycle(&mut inputs, c)?,
        Command::Quandle(q) => quandle(&mut inputs, q)?,
        Command::Invariant(a) => invariant(&mut inputs, a)?,
        Command::InvariantSurface(a) => invariant_surface(&mut inputs, a)?,
        Command::VerifySuite(a) => verify_suite(&mut inputs, a.catalog.as_deref())?,
    };
    Ok(Output { inputs: inputs.0, result })
}

fn homology(inputs: &mut Inputs, a: &HomologyArgs) -> Result<Value> {
    let (x, ring) = inputs.space(&a.space)?;
    let c = complex(x, ring.clone(), &a.variant)?;
    let h = c.homology(a.degree)?;
    let gens: Vec<Value> = h.generators.iter().map(|g| lines(&c.vec_to_chain(a.degree, g).to_text())).collect();
    Ok(json!({
        "coeff": ring.descriptor(),
        "variant": c.variant().to_string(),
        "degree": a.degree,
        "invariant_factors": bigs(&h.invariant_factors),
        "t_action": h.t_action.iter().map(|col| bigs(col)).collect::<Vec<_>>(),
        "generators": gens,
    }))
}

fn cohomology(inputs: &mut Inputs, a: &HomologyArgs) -> Result<Value> {
    let (x, ring) = inputs.space(&a.space)?;
    let c = complex(x, ring.clone(), &a.variant)?;
    let h = c.cohomology(a.degree)?;
    Ok(json!({
        "coeff": ring.descriptor(),
        "variant": c.variant().to_string(),
        "degree": a.degree,
        "invariant_factors": bigs(&h.module.invariant_factors),
        "t_action": h.module.t_action.iter().map(|col| bigs(col)).collect::<Vec<_>>(),
        "generators": h.generators.iter().map(|g| lines(&g.to_text())).collect::<Vec<_>>(),
        "cocycle_basis": h.cocycle_basis.iter().map(|g| lines(&g.to_text())).collect::<Vec<_>>(),
    }))
}

fn h_coeffs(h: &str) -> Result<Vec<i64>> {
    parse_poly(h)?
        .iter()
        .map(|c| i64::try_from(c).map_err(|_| CliError(format!("coefficient {c} of h is too large"))))
        .collect()
}

fn extension_json(e: &ExtensionCocycle) -> Value {
    json!({
        "base": e.base.descriptor(),
        "values": e.values.descriptor(),
        "total": e.total.descriptor(),
        "quandle_size": e.quandle.size(),
        "cocycle": lines(&e.phi.to_text()),
    })
}

fn cocycle(inputs: &mut Inputs, c: &CocycleCmd) -> Result<Value> {
    match c {
        CocycleCmd::Construct(Construct::Modular { p, m, h, out }) => {
            let e = modular_extension_cocycle(*p, *m, &h_coeffs(h)?)?;
            write_out(out, &e.phi.to_text())?;
            Ok(extension_json(&e))
        }
        CocycleCmd::Construct(Construct::Polynomial { p, h, m, out }) => {
            let e = polynomial_extension_cocycle(*p, &h_coeffs(h)?, *m)?;
            write_out(out, &e.phi.to_text())?;
            Ok(extension_json(&e))
        }
        CocycleCmd::Construct(Construct::Dihedral { n, coeff, out }) => {
            let ring: AlexanderRing = coeff.parse()?;
            let phi = dihedral_integral_cocycle(*n, &ring)?;
            write_out(out, &phi.to_text())?;
            Ok(json!({ "coeff": ring.descriptor(), "quandle_size": n, "cocycle": lines(&phi.to_text()) }))
        }
        CocycleCmd::Construct(Construct::Lift { space, degree, seeds, out }) => {
            let (x, ring) = inputs.space(space)?;
            let parsed = seeds.iter().map(|s| parse_seed(s, &ring)).collect::<Result<Vec<_>>>()?;
            let table = propagate_seeds(&x, &ring, *degree, &parsed)?;
            let lift = lift_h1(&x, &ring, *degree, &table)?;
            write_out(out, &lift.psi.to_text())?;
            Ok(json!({
                "coeff": ring.descriptor(),
                "degree": degree + 1,
                "in_tq": lift.in_tq,
                "cocycle": lines(&lift.psi.to_text()),
            }))
        }
        CocycleCmd::Verify { space, cocycle, variant } => {
            let (x, ring) = inputs.space(space)?;
            let f = Cochain::parse(&inputs.read(cocycle)?, &ring)?;
            let c = complex(x, ring, variant)?;
            let (ok, witness) = match c.is_cocycle(&f) {
                Ok(()) => (true, Value::Null),
                Err(t) => (false, json!(t)),
            };
            let primitive = if ok { c.is_coboundary(&f) } else { None };
            Ok(json!({
                "degree": f.degree(),
                "variant": c.variant().to_string(),
                "cocycle": ok,
                "witness": witness,
                "coboundary": primitive.is_some(),
                "primitive": primitive.map(|p| lines(&p.to_text())),
            }))
        }
        CocycleCmd::Pair { space, cocycle, chain, variant } => {
            let (x, ring) = inputs.space(space)?;
            let f = Cochain::parse(&inputs.read(cocycle)?, &ring)?;
            let z = Chain::parse(&inputs.read(chain)?, &ring)?;
            let c = complex(x, ring, variant)?;
            let v = c.pair(&f, &z)?;
            Ok(json!({ "degree": f.degree(), "value": v.to_string() }))
        }
    }
}

/// `0,1@0=1`: the value at `z = 0` of the `H1` coefficient on the tuple `(0,1)`.
fn parse_seed(s: &str, ring: &AlexanderRing) -> Result<(Vec<usize>, usize, twistq_core::coeff::RingElem)> {
    let bad = || CliError(format!("seed `{s}` must read tuple@z=value"));
    let (lhs, value) = s.split_once('=').ok_or_else(bad)?;
    let (tuple, z) = lhs.split_once('@').ok_or_else(bad)?;
    let tuple = tuple
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    let z = z.trim().parse().map_err(|_| bad())?;
    Ok((tuple, z, ring.parse_elem(value)?))
}

fn quandle(inputs: &mut Inputs, q: &QuandleCmd) -> Result<Value> {
    match q {
        QuandleCmd::Info { quandle } => {
            let x = inputs.quandle(quandle)?;
            let involutory = (0..x.size()).all(|a| (0..x.size()).all(|b| x.op(x.op(a, b), b) == a));
            Ok(json!({
                "size": x.size(),
                "trivial": x.is_trivial(),
                "involutory": involutory,
                "table": x.table(),
            }))
        }
        QuandleCmd::Iso { a, b } => {
            let x = inputs.quandle(a)?;
            let y = inputs.quandle(b)?;
            let f = find_isomorphism(&x, &y);
            Ok(json!({ "isomorphic": f.is_some(), "map": f.map(|f| f.values) }))
        }
    }
}

fn rendered(v: &GroupRingElem, ring: &AlexanderRing) -> Value {
    json!({ "value": v.render(ring), "integer": v.as_integer() })
}

fn invariant(inputs: &mut Inputs, a: &InvariantArgs) -> Result<Value> {
    let mut d = parse_pd(&inputs.read(&a.pd)?)?;
    if let Some(b) = &a.base {
        d = d.with_base(FaceRef::parse(b))?;
    }
    if a.list_faces {
        let numbering = d.numbering()?.map(|n| json!({ "faces": n.faces, "crossings": n.crossings }));
        return Ok(json!({
            "crossings": d.crossing_count(),
            "edges": d.edge_count(),
            "loops": d.loops(),
            "faces": d.describe_faces(),
            "numbering": numbering,
        }));
    }
    let (Some(q), Some(coeff), Some(cocycle)) = (&a.quandle, &a.coeff, &a.cocycle) else {
        return Err(CliError("--quandle, --coeff and --cocycle are required".into()));
    };
    let x = inputs.quandle(q)?;
    let ring: AlexanderRing = coeff.parse()?;
    let phi = Cochain::parse(&inputs.read(cocycle)?, &ring)?;
    let s = state_sum(&d, &x, &ring, &phi, a.jobs.max(1))?;
    let mut out = rendered(&s.value, &ring);
    out["colorings"] = json!(s.colorings);
    out["crossings"] = json!(d.crossing_count());
    out["modulus"] = json!(d.modulus());
    Ok(out)
}

fn invariant_surface(inputs: &mut Inputs, a: &SurfaceArgs) -> Result<Value> {
    let p = SurfacePresentation::parse(&inputs.read(&a.surface)?)?;
    let (x, ring) = inputs.space(&a.space)?;
    let theta = Cochain::parse(&inputs.read(&a.cocycle)?, &ring)?;
    let s = state_sum_surface(&p, &x, &ring, &theta)?;
    let mut out = rendered(&s.value, &ring);
    out["colorings"] = json!(s.colorings);
    out["triple_points"] = json!(p.triple_points.len());
    Ok(out)
}

fn verify_suite(inputs: &mut Inputs, path: Option<&str>) -> Result<Value> {
    let text = match path {
        Some(p) => inputs.read(p)?,
        None => suite::DEFAULT_CATALOG.to_string(),
    };
    let catalog = Catalog::parse(&text)?;
    let report = suite::run(&catalog);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let outcomes: Vec<Value> = report
        .outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "title": o.title, "status": o.status.to_string(), "detail": o.detail }))
        .collect();
    Ok(json!({ "passed": report.passed(), "warnings": report.warnings, "outcomes": outcomes }))
}
