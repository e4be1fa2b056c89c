use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use anyhow::anyhow;
use log::info;
use orbit_codes::abelian_unipotent::{
    build_rank_metric_code, cardinality_comparison, construct_code, distance_bound, gabidulin_code,
    stabilizer_dimension_in, stabilizer_solution_space, BlockSubspaceLayout,
};
use orbit_codes::finite_field::{parse_descriptor, BaseField, FieldSpec, SUPPORTED_PRIMES};
use orbit_codes::group_action::{scalar_series, Ambient, FiniteGroup, DEFAULT_GROUP_CAP};
use orbit_codes::gu_partition::{fast_min_distance, intradistance, partition};
use orbit_codes::matrix_fq::MatrixFq;
use orbit_codes::multishot::{assemble, build_alphabet_partition, validate_component_codes, ComponentCode};
use orbit_codes::orbit_code::{generate_orbit, spread_code, DistanceMultiset, OrbitCode, VoronoiMode};
use orbit_codes::reproduce;
use orbit_codes::subspace::{enumerate_grassmannian, gaussian_binomial, Subspace};
use serde_json::{json, Map, Value};

use crate::config::{AlphabetKind, CommandName, Format, Mode, RunConfig};

/// Input problems that stop a run before a report exists.
#[derive(Debug)]
pub enum Failure {
    Config(anyhow::Error),
}

impl<E: std::error::Error + Send + Sync + 'static> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Config(e.into())
    }
}

fn config_err(msg: impl Into<String>) -> Failure {
    Failure::Config(anyhow!(msg.into()))
}

pub enum Report {
    Json(Value),
    Csv(String),
    Text(String),
}

impl Report {
    pub fn render(&self) -> String {
        match self {
            Report::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("values serialize");
                s.push('\n');
                s
            }
            Report::Csv(s) | Report::Text(s) => s.clone(),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    /// Set when a verification step disagreed; the report is still emitted.
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self { report, failure: None }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let cmd = cfg.validate().map_err(config_err)?;
    info!("running {}", cmd.as_str());
    match cmd {
        CommandName::Field => field(cfg),
        CommandName::Grassmannian => grassmannian(cfg),
        CommandName::Orbit => orbit(cfg),
        CommandName::Spread => spread(cfg),
        CommandName::AbelianConstruct => abelian(cfg),
        CommandName::Partition => partition_cmd(cfg),
        CommandName::FastMindist => fast_mindist(cfg),
        CommandName::Voronoi => voronoi(cfg),
        CommandName::Multishot => multishot(cfg),
        CommandName::ReproducePaper => reproduce_cmd(cfg),
    }
}

struct Space {
    ambient: Ambient,
    field: Option<Arc<FieldSpec>>,
}

fn base_field(q: u32) -> Result<Arc<BaseField>, Failure> {
    for p in SUPPORTED_PRIMES {
        let mut t = 0;
        let mut x = 1u64;
        while x < q as u64 {
            x *= p as u64;
            t += 1;
        }
        if x == q as u64 && t > 0 {
            return Ok(BaseField::new(p, t)?);
        }
    }
    Err(config_err(format!("q = {q} is not a supported prime power")))
}

fn extension(cfg: &RunConfig) -> Result<Arc<FieldSpec>, Failure> {
    let d = cfg.field.as_deref().ok_or_else(|| config_err("--field is required"))?;
    Ok(parse_descriptor(d)?)
}

fn space(cfg: &RunConfig) -> Result<Space, Failure> {
    if cfg.field.is_some() {
        let fs = extension(cfg)?;
        return Ok(Space {
            ambient: Ambient::field(fs.clone()),
            field: Some(fs),
        });
    }
    let (q, n) = cfg.q.zip(cfg.n).ok_or_else(|| config_err("--q and --n are required"))?;
    Ok(Space {
        ambient: Ambient::vector(base_field(q)?, n),
        field: None,
    })
}

fn parse_list(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| config_err(format!("bad integer {t:?} in {s:?}"))))
        .collect()
}

fn parse_subspace(spec: &str, sp: &Space) -> Result<Subspace, Failure> {
    if let Some(rest) = spec.strip_prefix("exp:") {
        let fs = sp.field.as_ref().ok_or_else(|| config_err("exp: subspaces need --field"))?;
        return Ok(Subspace::from_field_elements(fs, &parse_list(rest)?)?);
    }
    if let Some(rest) = spec.strip_prefix("rows:") {
        let m = MatrixFq::parse(sp.ambient.base().clone(), rest)?;
        if m.cols() != sp.ambient.n() {
            return Err(config_err(format!("subspace has {} columns, ambient dimension is {}", m.cols(), sp.ambient.n())));
        }
        return Ok(Subspace::from_matrix(&m)?);
    }
    Err(config_err(format!("subspace {spec:?} must start with exp: or rows:")))
}

fn generator_specs(cfg: &RunConfig, sp: &Space) -> Result<Vec<String>, Failure> {
    if !cfg.group.is_empty() {
        Ok(cfg.group.clone())
    } else if sp.field.is_some() {
        Ok(vec!["scalar:1".into()])
    } else {
        Err(config_err("--group is required without --field"))
    }
}

fn build_group(sp: &Space, specs: &[String]) -> Result<FiniteGroup, Failure> {
    let gens = specs.iter().map(|s| sp.ambient.parse_generator(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteGroup::generate(sp.ambient.clone(), &gens, DEFAULT_GROUP_CAP)?)
}

fn word_json(s: &Subspace, field: Option<&FieldSpec>) -> Value {
    let mut m = Map::new();
    m.insert("rows".into(), json!(s.basis().row_vecs()));
    if let Some(fs) = field {
        m.insert("exponents".into(), json!(s.field_exponents(fs)));
    }
    Value::Object(m)
}

fn ambient_json(sp: &Space) -> Value {
    json!({
        "field": sp.field.as_ref().map(|f| f.descriptor()),
        "q": sp.ambient.base().order(),
        "n": sp.ambient.n(),
    })
}

fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn profile_csv(header: &str, rows: impl IntoIterator<Item = (String, DistanceMultiset)>) -> String {
    let mut out = format!("{header}distance,count\n");
    for (prefix, m) in rows {
        for (d, c) in m.iter() {
            out.push_str(&format!("{prefix}{d},{c}\n"));
        }
    }
    out
}

/// Compares the orbit's structured minimum distance against all pairs.
fn verify_code(code: &OrbitCode, threads: usize) -> Result<Option<String>, Failure> {
    let structured = code.parameters().d;
    let exhaustive = if code.len() < 2 { None } else { Some(code.min_distance_exhaustive_par(threads)?) };
    Ok((structured != exhaustive).then(|| format!("minimum distance {structured:?} differs from exhaustive {exhaustive:?}")))
}

fn code_report(cfg: &RunConfig, sp: &Space, code: &OrbitCode, generators: &[String]) -> Result<Outcome, Failure> {
    let fs = sp.field.as_deref();
    let profile = code.distance_profile(code.initial())?;
    if cfg.format() == Format::Csv {
        return Ok(Outcome::ok(Report::Csv(profile_csv("", [(String::new(), profile)]))));
    }
    let mut report = json!({
        "ambient": ambient_json(sp),
        "group": { "generators": generators, "order": code.group().order() },
        "initial": word_json(code.initial(), fs),
        "parameters": code.parameters(),
        "stabilizer_order": code.stabilizer().order(),
        "distance_profile": profile,
    });
    if cfg.list {
        report["codewords"] = code.codewords().iter().map(|c| word_json(c, fs)).collect();
    }
    let mut failure = None;
    if cfg.verify {
        failure = verify_code(code, cfg.threads())?;
        report["verified"] = json!(failure.is_none());
    }
    Ok(Outcome {
        report: Report::Json(report),
        failure,
    })
}

fn field(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let fs = extension(cfg)?;
    let base = fs.base();
    let powers: Vec<Vec<u16>> = (0..fs.multiplicative_order()).map(|e| fs.coords_of_index(fs.exp_index(e))).collect();
    Ok(Outcome::ok(Report::Json(json!({
        "descriptor": fs.descriptor(),
        "p": base.characteristic(),
        "t": base.degree(),
        "q": base.order(),
        "n": fs.degree(),
        "order": fs.order(),
        "multiplicative_order": fs.multiplicative_order(),
        "modulus": fs.modulus(),
        "powers": powers,
    }))))
}

fn grassmannian(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let fs = cfg.field.as_ref().map(|_| extension(cfg)).transpose()?;
    let (base, n) = match &fs {
        Some(f) => (f.base().clone(), f.degree()),
        None => (base_field(cfg.q.expect("validated"))?, cfg.n.expect("validated")),
    };
    let k = cfg.k.expect("validated");
    let mut report = json!({
        "q": base.order(),
        "n": n,
        "k": k,
        "count": big(gaussian_binomial(n, k, base.order())?),
    });
    if cfg.list {
        let words: Vec<Value> = enumerate_grassmannian(base, n, k)?.map(|s| word_json(&s, fs.as_deref())).collect();
        report["subspaces"] = Value::Array(words);
    }
    Ok(Outcome::ok(Report::Json(report)))
}

fn orbit_code(cfg: &RunConfig) -> Result<(Space, OrbitCode, Vec<String>), Failure> {
    let sp = space(cfg)?;
    let specs = generator_specs(cfg, &sp)?;
    let group = Arc::new(build_group(&sp, &specs)?);
    let v = parse_subspace(cfg.subspace.as_deref().expect("validated"), &sp)?;
    let code = generate_orbit(&group, &v)?;
    info!("orbit of size {} under a group of order {}", code.len(), group.order());
    Ok((sp, code, specs))
}

fn orbit(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let (sp, code, specs) = orbit_code(cfg)?;
    code_report(cfg, &sp, &code, &specs)
}

fn spread(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let fs = extension(cfg)?;
    let code = spread_code(fs.clone(), cfg.r.expect("validated"))?;
    let sp = Space {
        ambient: Ambient::field(fs.clone()),
        field: Some(fs),
    };
    code_report(cfg, &sp, &code, &["scalar:1".to_string()])
}

fn abelian(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let base = base_field(cfg.q.expect("validated"))?;
    let r = cfg.r.expect("validated");
    let rm = match cfg.gabidulin {
        Some(d) => gabidulin_code(base.clone(), r, d)?,
        None => {
            let gens = cfg.matrix.iter().map(|m| MatrixFq::parse(base.clone(), m)).collect::<Result<Vec<_>, _>>()?;
            build_rank_metric_code(base.clone(), r, &gens)?
        }
    };
    let lit = MatrixFq::parse(base.clone(), cfg.layout.as_deref().expect("validated"))?;
    let layout = match (cfg.special, cfg.layout_split) {
        (true, None) => BlockSubspaceLayout::special(&lit)?,
        (true, Some(_)) => return Err(config_err("--layout-split does not apply to --special")),
        (false, Some(l)) => BlockSubspaceLayout::new(lit, l)?,
        (false, None) => BlockSubspaceLayout::from_matrix(lit)?,
    };
    let code = construct_code(&layout, &rm)?;
    let bound = rm
        .codewords()
        .iter()
        .filter(|h| h.rank() > 0)
        .map(|h| distance_bound(&layout, h))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .min();
    let exact = (layout.is_special()).then(|| rm.min_rank_distance().map(|d| 2 * d as u32)).flatten();
    let stab_dim = stabilizer_dimension_in(&layout, &rm)?;
    let q = base.order() as u64;
    let params = code.parameters();
    let mut report = json!({
        "rank_code": {
            "r": rm.r(),
            "dimension": rm.dimension(),
            "size": rm.len(),
            "min_rank_distance": rm.min_rank_distance(),
            "singleton_bound_met": rm.singleton_bound_met(),
        },
        "layout": {
            "k": layout.k(),
            "r": layout.r(),
            "l": layout.l(),
            "special": layout.is_special(),
            "rows": layout.matrix().row_vecs(),
        },
        "parameters": params,
        "group_order": code.group().order(),
        "stabilizer": {
            "order": code.stabilizer().order(),
            "dimension": stab_dim,
            "solution_space_dimension": stabilizer_solution_space(&layout).len(),
        },
        "distance_upper_bound": bound,
        "distance_exact_special": exact,
        "cardinality": cardinality_comparison(q, 2 * r as u32)?,
    });
    if cfg.list {
        report["codewords"] = code.codewords().iter().map(|c| word_json(c, None)).collect();
    }
    let mut failure = None;
    if cfg.verify {
        let mut problems = Vec::new();
        if let Some(f) = verify_code(&code, cfg.threads())? {
            problems.push(f);
        }
        if let (Some(d), Some(b)) = (params.d, bound) {
            if d > b {
                problems.push(format!("distance {d} exceeds the bound {b}"));
            }
        }
        if exact.is_some() && exact != params.d {
            problems.push(format!("special layout distance {exact:?} differs from {:?}", params.d));
        }
        if q.pow(stab_dim as u32) != code.stabilizer().order() as u64 {
            problems.push("stabilizer order does not match its dimension".into());
        }
        report["verified"] = json!(problems.is_empty());
        failure = (!problems.is_empty()).then(|| problems.join("; "));
    }
    Ok(Outcome {
        report: Report::Json(report),
        failure,
    })
}

fn subgroup(cfg: &RunConfig, sp: &Space) -> Result<FiniteGroup, Failure> {
    match cfg.subgroup_order {
        Some(o) => Ok(FiniteGroup::scalar_subgroup(sp.ambient.clone(), o)?),
        None => build_group(sp, &cfg.subgroup),
    }
}

fn partition_cmd(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let (sp, code, _) = orbit_code(cfg)?;
    let h = subgroup(cfg, &sp)?;
    let p = partition(&code, &h)?;
    let profiles = p
        .subcodes()
        .iter()
        .map(|s| Ok((s.representative.to_string(), p.profile_polynomial(&s.representative, 0)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    if cfg.format() == Format::Csv {
        let rows = profiles.into_iter().map(|(g, m)| (format!("{g},"), m));
        return Ok(Outcome::ok(Report::Csv(profile_csv("representative,", rows))));
    }
    let fs = sp.field.as_deref();
    let subcodes: Vec<Value> = p
        .subcodes()
        .iter()
        .map(|s| {
            let mut v = json!({
                "representative": s.representative.to_string(),
                "size": s.codewords.len(),
                "intradistance": intradistance(&s.codewords),
            });
            if cfg.list {
                v["codewords"] = s.codewords.iter().map(|c| word_json(c, fs)).collect();
            }
            v
        })
        .collect();
    let profiles: Vec<Value> = profiles
        .into_iter()
        .map(|(g, m)| json!({ "representative": g, "distances": m }))
        .collect();
    Ok(Outcome::ok(Report::Json(json!({
        "parameters": code.parameters(),
        "group_order": code.group().order(),
        "subgroup_order": h.order(),
        "index": p.index(),
        "t": p.t(),
        "fair": p.is_fair(),
        "strongly_homogeneous": p.is_strongly_homogeneous()?,
        "subcodes": subcodes,
        "profiles": profiles,
    }))))
}

fn fast_mindist(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let (_, code, _) = orbit_code(cfg)?;
    let h = subgroup(cfg, &space(cfg)?)?;
    let f = fast_min_distance(&code, &h)?;
    let mut report = json!({
        "parameters": code.parameters(),
        "subgroup_order": h.order(),
        "result": f,
    });
    let mut failure = None;
    if cfg.verify {
        let exhaustive = code.min_distance_exhaustive_par(cfg.threads())?;
        report["exhaustive"] = json!(exhaustive);
        report["verified"] = json!(exhaustive == f.min_distance);
        if exhaustive != f.min_distance {
            failure = Some(format!("reduced search gave {} but the exhaustive minimum is {exhaustive}", f.min_distance));
        }
    }
    Ok(Outcome {
        report: Report::Json(report),
        failure,
    })
}

fn voronoi(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let (sp, code, _) = orbit_code(cfg)?;
    let c = match &cfg.codeword {
        Some(s) => parse_subspace(s, &sp)?,
        None => code.initial().clone(),
    };
    let all: Vec<Subspace> = enumerate_grassmannian(sp.ambient.base().clone(), sp.ambient.n(), code.dim())?.collect();
    let mode = match cfg.mode.unwrap_or_default() {
        Mode::Literal => VoronoiMode::Literal,
        Mode::ExcludeSelf => VoronoiMode::ExcludeSelf,
    };
    let region = code.voronoi_region(&all, &c, mode)?;
    let fs = sp.field.as_deref();
    Ok(Outcome::ok(Report::Json(json!({
        "parameters": code.parameters(),
        "codeword": word_json(&c, fs),
        "mode": mode,
        "ambient_size": all.len(),
        "region_size": region.len(),
        "region": region.iter().map(|s| word_json(s, fs)).collect::<Vec<_>>(),
    }))))
}

fn component(spec: &str, alphabet: usize, m: usize) -> Result<ComponentCode, Failure> {
    let code = match spec {
        "full" => ComponentCode::full(alphabet, m)?,
        "repetition" => ComponentCode::repetition(alphabet, m)?,
        "parity" => ComponentCode::single_parity(alphabet, m)?,
        _ => match spec.strip_prefix("file:") {
            Some(path) => {
                let text = std::fs::read_to_string(Path::new(path)).map_err(|e| config_err(format!("{path}: {e}")))?;
                ComponentCode::parse(alphabet, &text)?
            }
            None => return Err(config_err(format!("unknown component code {spec:?}"))),
        },
    };
    if code.length != m {
        return Err(config_err(format!("component {spec:?} has length {}, expected {m}", code.length)));
    }
    Ok(code)
}

fn multishot(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let fs = extension(cfg)?;
    let ambient = Ambient::field(fs.clone());
    let orders: Vec<u64> = cfg.series.iter().map(|&o| o as u64).collect();
    let series = scalar_series(&ambient, &orders)?;
    let alphabet: Vec<Subspace> = match cfg.alphabet.expect("validated") {
        AlphabetKind::Grassmannian => enumerate_grassmannian(fs.base().clone(), fs.degree(), cfg.k.expect("validated"))?.collect(),
        AlphabetKind::SpreadComplement => {
            let k = cfg.k.expect("validated");
            let spread: BTreeSet<Subspace> = spread_code(fs.clone(), k)?.codewords().iter().cloned().collect();
            enumerate_grassmannian(fs.base().clone(), fs.degree(), k)?.filter(|s| !spread.contains(s)).collect()
        }
        AlphabetKind::Orbit => {
            let sp = Space {
                ambient,
                field: Some(fs.clone()),
            };
            let v = parse_subspace(cfg.subspace.as_deref().expect("validated"), &sp)?;
            generate_orbit(&Arc::new(series[0].clone()), &v)?.codewords().to_vec()
        }
    };
    info!("alphabet of {} subspaces", alphabet.len());
    let tree = build_alphabet_partition(&alphabet, &series)?;
    let distances: Vec<_> = (0..tree.levels().len()).map(|l| tree.intrasubset_distance(l).ok()).collect();
    if cfg.format() == Format::Csv {
        let mut out = String::from("level,subsets,distance,fast_computations,naive_computations\n");
        for d in distances.iter().flatten() {
            out.push_str(&format!("{},{},{},{},{}\n", d.level, d.subsets, d.distance, d.fast_computations, d.naive_computations));
        }
        return Ok(Outcome::ok(Report::Csv(out)));
    }
    let levels: Vec<Value> = tree
        .levels()
        .iter()
        .zip(&distances)
        .enumerate()
        .map(|(l, (lv, d))| {
            let sizes: BTreeSet<usize> = lv.nodes.iter().map(|n| n.members.len()).collect();
            json!({
                "level": l,
                "group_order": lv.group_order,
                "nodes": lv.nodes.len(),
                "subset_sizes": sizes,
                "branching": lv.branching,
                "nested": lv.nested,
                "intrasubset": d,
            })
        })
        .collect();
    let mut report = json!({
        "field": fs.descriptor(),
        "alphabet_size": alphabet.len(),
        "series": cfg.series,
        "levels": levels,
    });
    let mut failure = None;
    if let Some(d) = cfg.distance {
        report["first_level_reaching"] = json!(tree.first_level_reaching(d)?);
        if !cfg.components.is_empty() {
            let m = cfg.m.expect("validated");
            let comps = cfg
                .components
                .iter()
                .enumerate()
                .map(|(i, spec)| {
                    let p = tree.branching(i + 1).ok_or_else(|| config_err(format!("level {} has no constant branching", i + 1)))?;
                    component(spec, p, m)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let validation = validate_component_codes(&tree, &comps, d)?;
            report["validation"] = json!(validation);
            if !validation.valid {
                failure = Some(format!("component codes do not reach the design distance {d}"));
            } else {
                let code = assemble(&tree, &comps, d)?;
                let mut summary = json!({ "m": code.m, "levels": code.levels, "size": code.len() });
                if cfg.list {
                    summary["codewords"] = code
                        .codewords
                        .iter()
                        .map(|w| json!({ "array": w.array, "shots": w.shots.iter().map(|s| s.field_exponents(&fs)).collect::<Vec<_>>() }))
                        .collect();
                }
                if cfg.verify {
                    let min = code.min_extended_distance()?;
                    summary["min_extended_distance"] = json!(min);
                    if min.is_some_and(|x| x < d) {
                        failure = Some(format!("minimum extended distance {min:?} is below {d}"));
                    }
                }
                report["code"] = summary;
            }
        }
    }
    Ok(Outcome {
        report: Report::Json(report),
        failure,
    })
}

fn reproduce_cmd(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let ids: Vec<u32> = if cfg.criteria.is_empty() {
        reproduce::CRITERIA.iter().map(|(id, _)| *id).collect()
    } else {
        cfg.criteria.clone()
    };
    let results = ids
        .iter()
        .map(|&id| reproduce::run(id).ok_or_else(|| config_err(format!("unknown criterion {id}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = results.iter().filter(|r| r.passed).count();
    let failure = (passed < results.len()).then(|| format!("{} of {} criteria failed", results.len() - passed, results.len()));
    let report = match cfg.format() {
        Format::Json => Report::Json(json!({ "criteria": results, "passed": passed, "total": results.len() })),
        _ => {
            let mut out = String::new();
            for r in &results {
                out.push_str(&format!("{r}\n"));
            }
            out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
            Report::Text(out)
        }
    };
    Ok(Outcome { report, failure })
}
