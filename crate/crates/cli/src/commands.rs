use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};
use topoham_core::conditions::{self, evaluate_condition, GraphFacts, GraphRef};
use topoham_core::graph6::encode;
use topoham_core::hamiltonicity::Witness;
use topoham_core::harness::{
    bound_csv, coverage_csv, enumerate_bipartite_graphs, enumerate_labeled_graphs, ingest_graph6,
    sample_random_bipartite, sample_random_graphs, two_coloring, verify_closed_forms,
    verify_corpus_with, CorpusGraph, EnumFilter, JsonlWriter, Malformed, RecordPolicy, SampleModel,
    VerificationReport, VerifyOptions,
};
use topoham_core::metrics::{indices, is_connected, vertex_connectivity};
use topoham_core::{
    complement, generate_family, quasi_complement, Engine, FamilyKind, FamilyParams, Oracle,
    OracleConfig, Property,
};

use crate::input::{bipartition, parse_graphs, parse_vertex_list, read_source, single_graph};
use crate::{Cli, Command, EngineArg, Format, RecordsArg, VerifyArgs};

const EXIT_FINDINGS: u8 = 3;

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Index(src) => index(cli, &read_source(src.input.as_deref())?),
        Command::Family {
            family,
            n,
            k,
            complement,
            quasi_complement,
        } => family_cmd(cli, family, *n, *k, *complement, *quasi_complement),
        Command::Complement { source, quasi, x } => complement_cmd(
            cli,
            &read_source(source.input.as_deref())?,
            *quasi,
            x.as_deref(),
        ),
        Command::Oracle {
            source,
            traceable,
            hamiltonian,
            hamilton_connected,
            traceable_from_every_vertex,
            engine,
        } => {
            let mut props: Vec<Property> = [
                (*traceable, Property::Traceable),
                (*hamiltonian, Property::Hamiltonian),
                (*hamilton_connected, Property::HamiltonConnected),
                (
                    *traceable_from_every_vertex,
                    Property::TraceableFromEveryVertex,
                ),
            ]
            .into_iter()
            .filter_map(|(on, p)| on.then_some(p))
            .collect();
            if props.is_empty() {
                props = Property::ALL.to_vec();
            }
            oracle_cmd(cli, &read_source(source.input.as_deref())?, &props, *engine)
        }
        Command::Check {
            entry,
            source,
            k,
            x,
        } => check(
            cli,
            entry,
            &read_source(source.input.as_deref())?,
            *k,
            x.as_deref(),
        ),
        Command::Verify(args) => verify(cli, args),
        Command::ClosedForms {
            n_min,
            n_max,
            k_min,
            k_max,
        } => {
            let checks = verify_closed_forms(*n_min..=*n_max, *k_min..=*k_max);
            let values = checks.iter().map(to_value).collect::<Result<Vec<_>>>()?;
            render(&values, cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog => catalog(cli),
    }
}

fn to_value(v: &impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn merged(mut head: Value, tail: Value) -> Value {
    if let (Some(h), Value::Object(t)) = (head.as_object_mut(), tail) {
        h.extend(t);
    }
    head
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

/// Nested objects become dotted keys.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

/// JSON: one object per line. CSV: flattened columns of the first object.
/// Plain: `key: value` lines, a blank line between objects.
fn render(values: &[Value], format: Format) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            for v in values {
                serde_json::to_writer(&mut out, v)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for (i, v) in values.iter().enumerate() {
                let mut cols = Vec::new();
                flatten("", v, &mut cols);
                if i == 0 {
                    w.write_record(cols.iter().map(|(k, _)| k))?;
                }
                w.write_record(cols.iter().map(|(_, v)| v))?;
            }
            w.flush()?;
        }
        Format::Plain => {
            for (i, v) in values.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let mut cols = Vec::new();
                flatten("", v, &mut cols);
                for (k, v) in cols {
                    writeln!(out, "{k}: {v}")?;
                }
            }
        }
    }
    Ok(())
}

fn index(cli: &Cli, text: &str) -> Result<ExitCode> {
    let gs = parse_graphs(text)?;
    let mut values = Vec::with_capacity(gs.len());
    for (i, g) in gs.iter().enumerate() {
        let report = indices(g).map_err(|e| anyhow!("graph {}: {e}", i + 1))?;
        let head = json!({ "graph6": encode(g), "order": g.order(), "edges": g.edge_count() });
        values.push(merged(head, to_value(&report)?));
    }
    render(&values, cli.format)?;
    Ok(ExitCode::SUCCESS)
}

fn family_cmd(
    cli: &Cli,
    family: &str,
    n: usize,
    k: usize,
    comp: bool,
    quasi: bool,
) -> Result<ExitCode> {
    let kind: FamilyKind = family.parse()?;
    let p = FamilyParams::new(kind, n, k)?;
    let fg = generate_family(p)?;
    let (target, g, x) = if comp {
        ("complement", complement(fg.graph()), None)
    } else if quasi {
        let b = fg
            .as_bipartite()
            .ok_or_else(|| anyhow!("{kind} is not a bipartite family"))?;
        let q = quasi_complement(b);
        let x = q.x().to_vec();
        ("quasi-complement", q.into_graph(), Some(x))
    } else {
        let x = fg.as_bipartite().map(|b| b.x().to_vec());
        ("family", fg.into_graph(), x)
    };
    let g6 = encode(&g);
    if cli.format == Format::Plain {
        println!("{g6}");
        return Ok(ExitCode::SUCCESS);
    }
    let v = json!({
        "family": kind.name(),
        "n": n,
        "k": k,
        "target": target,
        "order": g.order(),
        "edges": g.edge_count(),
        "graph6": g6,
        "X": x,
    });
    render(&[v], cli.format)?;
    Ok(ExitCode::SUCCESS)
}

fn complement_cmd(cli: &Cli, text: &str, quasi: bool, x: Option<&str>) -> Result<ExitCode> {
    let x = x.map(parse_vertex_list).transpose()?;
    let mut values = Vec::new();
    for g in parse_graphs(text)? {
        let input = encode(&g);
        let v = if quasi {
            let q = quasi_complement(&bipartition(g, x.as_deref())?);
            json!({ "graph6": input, "complement": encode(q.graph()), "X": q.x() })
        } else {
            json!({ "graph6": input, "complement": encode(&complement(&g)) })
        };
        values.push(v);
    }
    if cli.format == Format::Plain {
        for v in values {
            println!("{}", v["complement"].as_str().unwrap());
        }
        return Ok(ExitCode::SUCCESS);
    }
    render(&values, cli.format)?;
    Ok(ExitCode::SUCCESS)
}

fn oracle_cmd(cli: &Cli, text: &str, props: &[Property], engine: EngineArg) -> Result<ExitCode> {
    let oracle = Oracle::new(OracleConfig {
        engine: match engine {
            EngineArg::Auto => Engine::Auto,
            EngineArg::Backtracking => Engine::Backtracking,
            EngineArg::HeldKarp => Engine::HeldKarp,
        },
        cap: cli.cap,
        ..OracleConfig::default()
    });
    let mut values = Vec::new();
    for g in parse_graphs(text)? {
        let mut m = Map::new();
        m.insert("graph6".into(), json!(encode(&g)));
        m.insert("order".into(), json!(g.order()));
        let mut witness = None;
        for &p in props {
            let holds = match p {
                Property::Hamiltonian => {
                    let c = oracle.hamiltonian_cycle(&g)?;
                    let holds = c.is_some();
                    witness = c.map(Witness::Cycle).or(witness);
                    holds
                }
                Property::Traceable => {
                    let path = oracle.hamiltonian_path(&g)?;
                    let holds = path.is_some();
                    if witness.is_none() {
                        witness = path.map(Witness::Path);
                    }
                    holds
                }
                _ => oracle.decide(&g, p)?,
            };
            m.insert(p.name().into(), json!(holds));
        }
        m.insert("witness".into(), to_value(&witness)?);
        values.push(Value::Object(m));
    }
    render(&values, cli.format)?;
    Ok(ExitCode::SUCCESS)
}

fn check(cli: &Cli, id: &str, text: &str, k: Option<u32>, x: Option<&str>) -> Result<ExitCode> {
    let entry = conditions::entry(id).ok_or_else(|| anyhow!("unknown catalog entry {id:?}"))?;
    let g = single_graph(text)?;
    let k = k.unwrap_or(entry.requirements.k_min);
    let g6 = encode(&g);
    let (verdict, part) = if entry.setting.is_bipartite() {
        let x = x.map(parse_vertex_list).transpose()?;
        let b = bipartition(g, x.as_deref())?;
        let v = evaluate_condition(entry, &GraphFacts::new(GraphRef::from(&b)), k)?;
        (v, Some(b.x().to_vec()))
    } else {
        (
            evaluate_condition(entry, &GraphFacts::new(GraphRef::from(&g)), k)?,
            None,
        )
    };
    let head = json!({ "graph6": g6, "X": part, "statement": entry.statement });
    render(&[merged(head, to_value(&verdict)?)], cli.format)?;
    Ok(ExitCode::SUCCESS)
}

fn catalog(cli: &Cli) -> Result<ExitCode> {
    let entries = conditions::catalog();
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(entries)?),
        _ => {
            let values: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "id": e.id,
                        "kind": e.kind,
                        "setting": e.setting,
                        "measure": e.measure,
                        "comparator": e.comparator.symbol(),
                        "threshold": e.threshold.to_string(),
                        "conclusion": e.conclusion,
                        "statement": e.statement,
                    })
                })
                .collect();
            render(&values, cli.format)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn pair(v: &Option<Vec<usize>>) -> Option<(usize, usize)> {
    v.as_ref().map(|v| (v[0], v[1]))
}

fn model(args: &VerifyArgs) -> SampleModel {
    if args.min_degree > 0 {
        SampleModel::FixedMinDegree {
            p: args.p,
            min_degree: args.min_degree,
        }
    } else {
        SampleModel::UniformEdge { p: args.p }
    }
}

/// Filters for corpora that are not enumerated; enumeration applies them itself.
fn admits(args: &VerifyArgs, g: &CorpusGraph) -> bool {
    let graph = g.graph();
    (!args.connected || is_connected(graph))
        && (!args.connected_complement
            || match g {
                CorpusGraph::General(g) => is_connected(&complement(g)),
                CorpusGraph::Bipartite(b) => is_connected(quasi_complement(b).graph()),
            })
        && (args.min_connectivity == 0
            || (graph.order() > args.min_connectivity
                && vertex_connectivity(graph) >= args.min_connectivity))
}

type Corpus = Box<dyn Iterator<Item = CorpusGraph> + Send>;

fn corpus(cli: &Cli, args: &VerifyArgs) -> Result<(Corpus, String)> {
    let filter = EnumFilter {
        min_degree: args.min_degree,
        connected: args.connected,
        connected_complement: args.connected_complement,
        min_connectivity: args.min_connectivity,
    };
    if let Some(n) = args.enumerate {
        let it = enumerate_labeled_graphs(n, filter)?.map(CorpusGraph::General);
        return Ok((Box::new(it), format!("enumerate {n}")));
    }
    if let Some((a, b)) = pair(&args.enumerate_bipartite) {
        let it = enumerate_bipartite_graphs(a, b, filter)?.map(CorpusGraph::Bipartite);
        return Ok((Box::new(it), format!("enumerate-bipartite {a} {b}")));
    }
    let sampled: Vec<CorpusGraph>;
    let desc;
    if let Some(n) = args.sample {
        sampled = sample_random_graphs(n, args.count, model(args), cli.seed)?
            .into_iter()
            .map(CorpusGraph::General)
            .collect();
        desc = format!("sample {n}");
    } else if let Some((a, b)) = pair(&args.sample_bipartite) {
        sampled = sample_random_bipartite(a, b, args.count, model(args), cli.seed)?
            .into_iter()
            .map(CorpusGraph::Bipartite)
            .collect();
        desc = format!("sample-bipartite {a} {b}");
    } else if let Some(path) = &args.input {
        let ingested = ingest_graph6(&read_source(Some(path))?, Malformed::Skip)?;
        for w in &ingested.warnings {
            eprintln!("warning: {w}");
        }
        let mut gs = Vec::with_capacity(ingested.graphs.len());
        for (line, g) in ingested.graphs {
            if !args.bipartite {
                gs.push(CorpusGraph::General(g));
            } else if let Some(b) = two_coloring(&g) {
                gs.push(CorpusGraph::Bipartite(b));
            } else {
                eprintln!("warning: line {line}: not bipartite, skipped");
            }
        }
        sampled = gs;
        desc = format!("input {}", path.display());
    } else {
        bail!("choose a corpus: --enumerate, --enumerate-bipartite, --sample, --sample-bipartite or --input");
    }
    let kept: Vec<CorpusGraph> = sampled.into_iter().filter(|g| admits(args, g)).collect();
    Ok((Box::new(kept.into_iter()), desc))
}

fn summary_text(report: &VerificationReport) -> String {
    let mut s = format!(
        "graphs: {}\nfindings: {} ({} refuted conclusions, {} bound violations)\n",
        report.graphs,
        report.findings.len(),
        report.conclusion_findings(),
        report.bound_violations()
    );
    for c in &report.coverage {
        s += &format!(
            "entry {}: evaluated {}, applicable {}, hypothesis held {} on {} graphs, consistent {}, explained {}, undecided {}, findings {}\n",
            c.id, c.evaluated, c.applicable, c.hypothesis_holds, c.graphs_fired, c.consistent,
            c.explained, c.undecided, c.findings
        );
    }
    for b in report
        .bound_coverage
        .iter()
        .filter(|b| b.evaluated + b.skipped > 0)
    {
        s += &format!(
            "bound {}: evaluated {}, violated {}, skipped {}\n",
            b.id, b.evaluated, b.violated, b.skipped
        );
    }
    s += &format!("vacuous entries: {}\n", report.vacuous_entries().join(" "));
    s
}

fn summary_value(report: &VerificationReport) -> Value {
    json!({
        "graphs": report.graphs,
        "findings": report.findings,
        "coverage": report.coverage,
        "bound_coverage": report.bound_coverage,
        "vacuous_entries": report.vacuous_entries(),
    })
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode> {
    let mut opts = VerifyOptions::default();
    if let Some(list) = &args.entries {
        let ids: Vec<&str> = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        opts = opts
            .with_entries(&ids)
            .map_err(|id| anyhow!("unknown catalog entry {id:?}"))?;
    }
    opts.k_min = args.k.or(args.k_min);
    opts.k_max = args.k.or(args.k_max);
    opts.bounds = !args.no_bounds;
    opts.oracle.cap = cli.cap;
    opts.records = match args.records {
        RecordsArg::All => RecordPolicy::All,
        RecordsArg::Interesting => RecordPolicy::Interesting,
        RecordsArg::Findings => RecordPolicy::Findings,
        RecordsArg::None => RecordPolicy::None,
    };
    let streams_records = args.out.is_some() || cli.format == Format::Json;
    if !streams_records {
        opts.records = RecordPolicy::None;
    }
    let (corpus, desc) = corpus(cli, args)?;
    let meta = json!({
        "tool": "topoham",
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp": chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        "seed": cli.seed,
        "corpus": desc,
        "filter": {
            "min_degree": args.min_degree,
            "connected": args.connected,
            "connected_complement": args.connected_complement,
            "min_connectivity": args.min_connectivity,
        },
        "entries": opts.entries.iter().map(|e| e.id.as_str()).collect::<Vec<_>>(),
        "k_min": opts.k_min,
        "k_max": opts.k_max,
        "bounds": opts.bounds,
        "cap": cli.cap,
    });

    let sink: Box<dyn Write> = match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join("records.jsonl");
            Box::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?)
        }
        None if cli.format == Format::Json => Box::new(io::stdout().lock()),
        None => Box::new(io::sink()),
    };
    let mut writer = JsonlWriter::new(BufWriter::new(sink));
    writer.meta(&meta)?;
    let mut write_error = None;
    let report = verify_corpus_with(corpus, &opts, |r| {
        if write_error.is_none() {
            write_error = writer.record(&r).err();
        }
    });
    if let Some(e) = write_error {
        return Err(e.into());
    }
    writer.summary(&report)?;
    writer.into_inner().flush()?;

    if let Some(dir) = &args.out {
        std::fs::write(dir.join("coverage.csv"), coverage_csv(&report))?;
        std::fs::write(dir.join("bounds.csv"), bound_csv(&report))?;
        match cli.format {
            Format::Json => println!("{}", summary_value(&report)),
            Format::Csv => print!("{}", coverage_csv(&report)),
            Format::Plain => print!("{}", summary_text(&report)),
        }
    } else {
        match cli.format {
            Format::Json => {}
            Format::Csv => print!("{}", coverage_csv(&report)),
            Format::Plain => print!("{}", summary_text(&report)),
        }
    }
    Ok(if report.findings.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FINDINGS)
    })
}
