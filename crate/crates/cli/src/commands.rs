use std::fmt::{Display, Write as _};
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};

use weylworks::characters::{character_table, kostka};
use weylworks::crossval::{crossval, CrossvalInput, DEFAULT_ROUTES};
use weylworks::glmodules::{irrep_plucker, Chevalley, ExplicitModule};
use weylworks::lattice::{
    fixed_point, jordan_type, mv_cycle_count, random_stable_subspace, stratum_membership, LatticeJson,
    LatticeSubspace,
};
use weylworks::limits::{self, Limits};
use weylworks::linalg::format_rational;
use weylworks::registry::build_module;
use weylworks::skewhowe::{build_bimodule, decompose_howe, induced_gln_module};
use weylworks::springercount::{flag_counters, point_count_table};
use weylworks::wedge::binomial;
use weylworks::weights::{conjugate, emission_order, DominantWeight, Partition, WeightVec};

use crate::config::{Command, Format, GlobalArgs, LatticeCommand, RunConfig, SubspaceArgs};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest integer every JSON reader represents exactly.
const MAX_SAFE_INTEGER: u128 = 1 << 53;

/// A finished command: its JSON document, its TSV rendering, and whether
/// every check it performed passed.
pub struct Outcome {
    pub json: Value,
    pub tsv: String,
    pub ok: bool,
    /// Set by replay: the format recorded in the replayed config.
    pub format: Option<Format>,
}

impl Outcome {
    fn new(command: &str, fields: Value, tsv: String) -> Self {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
        doc.insert("command".into(), json!(command));
        if let Value::Object(f) = fields {
            doc.extend(f);
        }
        Outcome {
            json: Value::Object(doc),
            tsv,
            ok: true,
            format: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match self.format.unwrap_or(format) {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json")),
            Format::Tsv => self.tsv.clone(),
        }
    }
}

/// A count as a JSON number, or as a decimal string above 2^53.
pub fn count_json(x: impl Display) -> Value {
    let s = x.to_string();
    match s.parse::<u128>() {
        Ok(v) if v <= MAX_SAFE_INTEGER => json!(v as u64),
        _ => json!(s),
    }
}

fn joined<T: Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn apply_limits(g: &GlobalArgs) {
    let mut l = Limits::from_env();
    if let Some(d) = g.max_dim {
        l.max_dim = d;
    }
    if let Some(t) = g.max_tableau_size {
        l.max_tableau_size = t;
    }
    if let Some(e) = g.max_echelon_forms {
        l.max_echelon_forms = e as u128;
    }
    limits::set(l);
}

pub fn execute(config: &RunConfig) -> Result<Outcome> {
    apply_limits(&config.global);
    match &config.command {
        Command::Character { lambda, n } => character(lambda, *n),
        Command::Decompose { module, n } => decompose(module, *n),
        Command::Irrep {
            lambda,
            n,
            emit_matrices,
        } => irrep(lambda, *n, emit_matrices.is_some()),
        Command::Skewhowe {
            n,
            m,
            big_n,
            lambda,
            generator,
            from,
        } => match lambda {
            None => howe(*n, *m, *big_n),
            Some(lam) => induced(*n, *m, *big_n, lam, generator.as_deref(), from.as_deref()),
        },
        Command::Lattice { action } => lattice(action),
        Command::Springer {
            nu,
            mu,
            n,
            primes,
            counter,
        } => springer(nu, mu, *n, primes.as_deref(), counter),
        Command::Crossval {
            lambda,
            n,
            m,
            routes,
            counter,
            primes,
        } => crossval_cmd(lambda, *n, *m, routes.as_deref(), counter, primes.as_deref()),
        Command::Replay { path } => replay(path),
    }
}

fn replay(path: &Path) -> Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let config: RunConfig = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if config.schema_version != SCHEMA_VERSION {
        return Err(weylworks::Error::Parse(format!(
            "unsupported schema_version {}",
            config.schema_version
        ))
        .into());
    }
    if matches!(config.command, Command::Replay { .. }) {
        return Err(weylworks::Error::Argument("a replayed config cannot itself be a replay".into()).into());
    }
    let mut outcome = execute(&config)?;
    outcome.format = Some(config.global.format);
    Ok(outcome)
}

fn character_rows(top: &WeightVec, entries: impl IntoIterator<Item = (WeightVec, u64)>) -> (Value, String) {
    let mut rows: Vec<(WeightVec, u64)> = entries.into_iter().collect();
    rows.sort_by(|a, b| emission_order(top, &a.0, &b.0));
    let mut tsv = String::from("mu\tmultiplicity\n");
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|(mu, k)| {
            let _ = writeln!(tsv, "{}\t{k}", joined(mu.entries()));
            json!({"mu": mu, "multiplicity": count_json(k)})
        })
        .collect();
    (Value::Array(json_rows), tsv)
}

fn character(lambda: &[i64], n: usize) -> Result<Outcome> {
    let lam = DominantWeight::new(lambda.to_vec())?;
    let table = character_table(&lam, n)?;
    let (rows, tsv) = character_rows(lam.weight(), table.entries.clone());
    Ok(Outcome::new(
        "character",
        json!({"lambda": lam, "n": n, "dim": count_json(table.dim()), "weights": rows}),
        tsv,
    ))
}

fn components_json(module: &ExplicitModule) -> Result<(Value, String)> {
    module.check_relations()?;
    let dec = module.decompose()?;
    let mut tsv = String::from("lambda\tmultiplicity\n");
    let rows: Vec<Value> = dec
        .components
        .iter()
        .map(|(lam, k)| {
            let _ = writeln!(tsv, "{}\t{k}", joined(lam.entries()));
            json!({"lambda": lam, "multiplicity": k})
        })
        .collect();
    Ok((Value::Array(rows), tsv))
}

fn decompose(module: &str, n: usize) -> Result<Outcome> {
    let m = build_module(module, n)?;
    let (components, tsv) = components_json(&m)?;
    Ok(Outcome::new(
        "decompose",
        json!({"module": module, "n": n, "dim": m.dim(), "components": components}),
        tsv,
    ))
}

fn generator_name(g: Chevalley) -> String {
    match g {
        Chevalley::E(i) => format!("E{}", i + 1),
        Chevalley::F(i) => format!("F{}", i + 1),
    }
}

fn irrep(lambda: &[usize], n: usize, emit_matrices: bool) -> Result<Outcome> {
    let lam = Partition::new(lambda.to_vec())?;
    let module = irrep_plucker(&lam, n)?;
    module.check_relations()?;
    let mut tsv = String::from("index\tweight\n");
    for (i, w) in module.basis_weights().iter().enumerate() {
        let _ = writeln!(tsv, "{i}\t{}", joined(w.entries()));
    }
    let mut fields = json!({
        "lambda": lam.to_weight(n)?,
        "n": n,
        "dim": module.dim(),
        "basis_weights": module.basis_weights(),
    });
    if emit_matrices {
        let mut mats = Map::new();
        for i in 0..n.saturating_sub(1) {
            for g in [Chevalley::E(i), Chevalley::F(i)] {
                mats.insert(generator_name(g), json!(module.generator(g).to_json()));
            }
        }
        fields["matrices"] = Value::Object(mats);
    }
    Ok(Outcome::new("irrep", fields, tsv))
}

fn howe(n: usize, m: usize, big_n: usize) -> Result<Outcome> {
    let pairs = decompose_howe(n, m, big_n)?;
    let mut tsv = String::from("gl_n\tgl_m\tdim_n\tdim_m\n");
    for p in &pairs {
        let _ = writeln!(
            tsv,
            "{}\t{}\t{}\t{}",
            joined(p.gl_n.entries()),
            joined(p.gl_m.entries()),
            p.dim_n,
            p.dim_m
        );
    }
    let rows: Vec<Value> = pairs
        .iter()
        .map(|p| {
            json!({"gl_n": p.gl_n, "gl_m": p.gl_m, "dim_n": count_json(p.dim_n), "dim_m": count_json(p.dim_m)})
        })
        .collect();
    Ok(Outcome::new(
        "skewhowe",
        json!({"n": n, "m": m, "N": big_n, "dim": count_json(binomial(n * m, big_n)), "pairs": rows}),
        tsv,
    ))
}

fn parse_generator(s: &str, n: usize) -> Result<Chevalley> {
    let bad = || weylworks::Error::Argument(format!("generator '{s}' is not E1..E{0} or F1..F{0}", n - 1));
    let (kind, index) = s.split_at(1.min(s.len()));
    let i: usize = index.parse().map_err(|_| bad())?;
    if i == 0 || i >= n {
        return Err(bad().into());
    }
    match kind {
        "E" | "e" => Ok(Chevalley::E(i - 1)),
        "F" | "f" => Ok(Chevalley::F(i - 1)),
        _ => Err(bad().into()),
    }
}

fn induced(
    n: usize,
    m: usize,
    big_n: usize,
    lambda: &[usize],
    generator: Option<&str>,
    from: Option<&[i64]>,
) -> Result<Outcome> {
    let lam = Partition::new(lambda.to_vec())?;
    let b = build_bimodule(n, m, big_n)?;
    let module = induced_gln_module(&b, &lam)?;
    let dual = conjugate(&lam).to_weight(n)?;
    let (rows, mut tsv) = character_rows(&dual, module.character());
    let (components, _) = components_json(&module)?;
    let mut fields = json!({
        "n": n,
        "m": m,
        "N": big_n,
        "lambda": lam.to_weight(m)?,
        "conjugate": dual,
        "dim": module.dim(),
        "weights": rows,
        "decomposition": components,
    });
    if let (Some(g), Some(from)) = (generator, from) {
        let g = parse_generator(g, n)?;
        let source = WeightVec::new(from.to_vec())?;
        if source.len() != n {
            bail!(weylworks::Error::Argument(format!("{source} does not have {n} entries")));
        }
        let block = module.weight_block(g, &source);
        let target = match g {
            Chevalley::E(i) => source.add(&WeightVec::simple_root(n, i)),
            Chevalley::F(i) => source.sub(&WeightVec::simple_root(n, i)),
        };
        let _ = writeln!(
            tsv,
            "# {} from {} to {}: {}x{} block of rank {}",
            generator_name(g),
            joined(source.entries()),
            joined(target.entries()),
            block.rows(),
            block.cols(),
            block.rank()
        );
        fields["block"] = json!({
            "generator": generator_name(g),
            "from": source,
            "to": target,
            "rows": block.rows(),
            "cols": block.cols(),
            "rank": block.rank(),
            "note": "entries depend on the basis; only the rank is meaningful",
        });
    }
    Ok(Outcome::new("skewhowe", fields, tsv))
}

fn load_subspace(args: &SubspaceArgs) -> Result<LatticeSubspace> {
    if let Some(path) = &args.subspace {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let j: LatticeJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(LatticeSubspace::from_json(&j)?);
    }
    match (&args.mu, args.n) {
        (Some(mu), Some(n)) => Ok(fixed_point(&WeightVec::new(mu.clone())?, n)?),
        _ => Err(weylworks::Error::Argument("give --mu and -n, or --subspace".into()).into()),
    }
}

fn lattice(action: &LatticeCommand) -> Result<Outcome> {
    match action {
        LatticeCommand::Jordan { subspace } => {
            let l = load_subspace(subspace)?;
            let jt = jordan_type(&l)?;
            Ok(Outcome::new(
                "lattice jordan",
                json!({"n": l.n(), "D": l.degree_bound(), "dim": l.dim(), "jordan_type": jt}),
                format!("jordan_type\t{}\n", joined(jt.parts())),
            ))
        }
        LatticeCommand::Stratum { lambda, subspace } => {
            let lam = Partition::new(lambda.clone())?;
            let l = load_subspace(subspace)?;
            let membership = stratum_membership(&l, &lam);
            let jt = jordan_type(&l).ok();
            let label = serde_json::to_value(membership)?;
            Ok(Outcome::new(
                "lattice stratum",
                json!({"lambda": lam, "dim": l.dim(), "jordan_type": jt, "membership": label}),
                format!("membership\t{}\n", label.as_str().unwrap_or_default()),
            ))
        }
        LatticeCommand::Random {
            n,
            d,
            generators,
            seed,
        } => {
            let l = random_stable_subspace(*n, *d, *generators, *seed)?;
            let jt = jordan_type(&l)?;
            Ok(Outcome::new(
                "lattice random",
                json!({"seed": seed, "jordan_type": jt, "subspace": l.to_json()}),
                format!("dim\t{}\njordan_type\t{}\n", l.dim(), joined(jt.parts())),
            ))
        }
        LatticeCommand::Mv { lambda, mu, n } => {
            let lam = Partition::new(lambda.clone())?;
            let mu = WeightVec::new(mu.clone())?;
            let count = mv_cycle_count(&lam, &mu, *n)?;
            Ok(Outcome::new(
                "lattice mv",
                json!({
                    "lambda": lam,
                    "mu": mu,
                    "n": n,
                    "mv_cycles": count_json(count),
                    "source": "character value dim V(lambda)_mu; not computed geometrically",
                }),
                format!("mv_cycles\t{count}\n"),
            ))
        }
    }
}

fn springer(nu: &[usize], mu: &[i64], n: usize, primes: Option<&[u64]>, counter: &str) -> Result<Outcome> {
    let nu = Partition::new(nu.to_vec())?;
    let mu = WeightVec::new(mu.to_vec())?;
    let counters = flag_counters();
    let table = point_count_table(counters.get(counter)?, &nu, &mu, n, primes)?;
    let leading = table.leading()?;
    let expected = kostka(&table.lam, &mu)?;
    let agree = leading == expected;
    let counts: Map<String, Value> = table
        .counts
        .iter()
        .map(|(q, c)| (q.to_string(), count_json(c)))
        .collect();
    let poly: Vec<String> = table.poly.coefficients().iter().map(format_rational).collect();
    let mut tsv = String::from("q\tcount\n");
    for (q, c) in &table.counts {
        let _ = writeln!(tsv, "{q}\t{c}");
    }
    let _ = writeln!(tsv, "# poly\t{}\n# leading\t{leading}\n# kostka\t{expected}\n# match\t{agree}", table.poly);
    let mut out = Outcome::new(
        "springer",
        json!({
            "nu": nu,
            "mu": mu,
            "n": n,
            "counter": counter,
            "counts": counts,
            "poly": poly,
            "degree": table.degree,
            "leading": count_json(leading),
            "kostka": count_json(expected),
            "match": agree,
        }),
        tsv,
    );
    out.ok = agree;
    Ok(out)
}

fn crossval_cmd(
    lambda: &[usize],
    n: usize,
    m: usize,
    routes: Option<&[String]>,
    counter: &str,
    primes: Option<&[u64]>,
) -> Result<Outcome> {
    let mut input = CrossvalInput::new(Partition::new(lambda.to_vec())?, n, m)?;
    input.counter = counter.to_string();
    input.primes = primes.map(|p| p.to_vec());
    let names: Vec<&str> = match routes {
        Some(r) => r.iter().map(String::as_str).collect(),
        None => DEFAULT_ROUTES.to_vec(),
    };
    let report = crossval(&input, &names)?;
    let mut tsv = format!("mu\t{}\tmatch\n", names.join("\t"));
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            let _ = writeln!(tsv, "{}\t{}\t{}", joined(row.mu.entries()), joined(&row.counts).replace(',', "\t"), row.agree);
            let counts: Map<String, Value> = names
                .iter()
                .zip(&row.counts)
                .map(|(name, c)| (name.to_string(), count_json(c)))
                .collect();
            json!({"mu": row.mu, "counts": counts, "match": row.agree})
        })
        .collect();
    let mut out = Outcome::new(
        "crossval",
        json!({
            "lambda": report.lam,
            "conjugate": report.dual,
            "n": n,
            "m": m,
            "routes": names,
            "counter": counter,
            "rows": rows,
            "match": report.all_agree,
        }),
        tsv,
    );
    out.ok = report.all_agree;
    Ok(out)
}
