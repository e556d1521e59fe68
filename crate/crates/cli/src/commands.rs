use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::Instant;

use seqctl::oracle::{self, Oracle, Schedule, StepKind, ORACLE_MAX_NODES};
use seqctl::sequential::{default_budget, sequential_paths};
use seqctl::{
    parse_network, Analysis, BooleanNetwork, Control, ControlPath, ControlQuery, NodeId,
    SequentialMode, SequentialQuery, SourcePolicy, State,
};
use serde::Serialize;

use crate::report::{render_table, BENCH_GROUPS};
use crate::select::{parse_labels, resolve_attractor};
use crate::{
    AttractorEntry, AttractorRow, AttractorsReport, BasinsReport, BenchArgs, BenchRow, Cli,
    Command, Constraints, ControlArgs, ControlEntry, Format, NodeSets, PathEntry, PathVerdict,
    PathsArgs, PathsReport, SimulationReport, VerifyReport,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

impl From<seqctl::Error> for CliError {
    fn from(e: seqctl::Error) -> CliError {
        match e {
            seqctl::Error::TooManyNodes { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Outcome {
        Outcome { output, code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Attractors { model } => attractors(cli, model),
        Command::Basins { model, attractor } => basins(cli, model, attractor),
        Command::Control(args) => control(cli, args),
        Command::Paths(args) => paths(cli, args),
        Command::Verify {
            model,
            paths,
            strict,
        } => verify(cli, model, paths, *strict),
        Command::Bench(args) => Ok(bench(cli, args)),
        Command::Simulate { model, from, steps } => simulate(cli, model, from, *steps),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn network_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_network(path: &Path) -> Result<BooleanNetwork, CliError> {
    parse_network(&read(path)?).map_err(|e| CliError::Input(format!("{}:{e}", path.display())))
}

fn load(cli: &Cli, path: &Path) -> Result<Analysis, CliError> {
    let mut analysis = Analysis::new(load_network(path)?, cli.max_n)?;
    if let Some(labels) = &cli.labels {
        for (name, selector) in parse_labels(&read(labels)?)? {
            let id = resolve_attractor(&analysis, &selector)?;
            analysis.set_name(id, name)?;
        }
    }
    Ok(analysis)
}

fn render<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

fn node_names(g: &BooleanNetwork, nodes: impl IntoIterator<Item = NodeId>) -> Vec<String> {
    nodes.into_iter().map(|x| g.name(x).to_string()).collect()
}

fn forbidden(g: &BooleanNetwork, names: &[String]) -> Result<BTreeSet<NodeId>, CliError> {
    names
        .iter()
        .map(|name| {
            g.node(name)
                .ok_or_else(|| CliError::Input(format!("unknown node `{name}`")))
        })
        .collect()
}

fn policy(c: &Constraints) -> SourcePolicy {
    if c.strict {
        SourcePolicy::AllStates
    } else {
        SourcePolicy::Designated
    }
}

fn policy_name(p: SourcePolicy) -> &'static str {
    match p {
        SourcePolicy::Designated => "designated",
        SourcePolicy::AllStates => "all-states",
    }
}

fn attractor_entries(analysis: &Analysis) -> Vec<AttractorEntry> {
    analysis
        .attractors()
        .iter()
        .map(|a| AttractorEntry {
            id: a.id,
            name: a.name.clone(),
            states: a.members().iter().map(|s| s.to_string()).collect(),
        })
        .collect()
}

fn attractor_table(rows: &[AttractorRow]) -> String {
    let headers = ["id", "name", "size", "states"].map(String::from);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.id.to_string(),
                r.name.clone().unwrap_or_default(),
                r.size.to_string(),
                r.states.join(" "),
            ]
        })
        .collect();
    render_table(&[], &headers, &cells)
}

fn attractors(cli: &Cli, model: &Path) -> Result<Outcome, CliError> {
    let analysis = load(cli, model)?;
    let report = AttractorsReport {
        network: network_name(model),
        attractors: attractor_entries(&analysis)
            .into_iter()
            .map(|e| AttractorRow {
                id: e.id,
                name: e.name,
                size: e.states.len(),
                states: e.states,
            })
            .collect(),
    };
    Ok(Outcome::ok(match cli.format {
        Format::Json => render(&report),
        Format::Table => format!(
            "network: {}\n{}",
            report.network,
            attractor_table(&report.attractors)
        ),
    }))
}

fn basins(cli: &Cli, model: &Path, selector: &str) -> Result<Outcome, CliError> {
    let analysis = load(cli, model)?;
    let id = resolve_attractor(&analysis, selector)?;
    let report = BasinsReport {
        network: network_name(model),
        attractor: id,
        weak: analysis.weak_basin(id).to_bitstrings(),
        strong: analysis.strong_basin(id).to_bitstrings(),
    };
    Ok(Outcome::ok(match cli.format {
        Format::Json => render(&report),
        Format::Table => {
            let headers = ["basin", "size", "states"].map(String::from);
            let rows = [("weak", &report.weak), ("strong", &report.strong)]
                .map(|(kind, set)| vec![kind.to_string(), set.len().to_string(), set.join(" ")]);
            format!(
                "network: {}\nattractor: {}\n{}",
                report.network,
                report.attractor,
                render_table(&[], &headers, &rows)
            )
        }
    }))
}

fn control(cli: &Cli, args: &ControlArgs) -> Result<Outcome, CliError> {
    let mode = args
        .mode
        .one_step()
        .ok_or_else(|| CliError::Input("control expects --mode OI, OT or OP".into()))?;
    let analysis = load(cli, &args.model)?;
    let g = analysis.network();
    let source = resolve_attractor(&analysis, &args.source)?;
    let target = resolve_attractor(&analysis, &args.target)?;
    let budget = args.constraints.max_perturbations.unwrap_or(g.len());
    let query = ControlQuery::new(source, target, mode, budget)
        .forbid(forbidden(g, &args.constraints.forbid_node)?)
        .policy(policy(&args.constraints));
    let entries: Vec<ControlEntry> = analysis
        .minimal_controls(&query)?
        .into_iter()
        .map(|sol| {
            let assignments = sol.control.assignments();
            ControlEntry {
                nodes: node_names(g, assignments.iter().map(|&(x, _)| x)),
                values: assignments.iter().map(|&(_, v)| u8::from(v)).collect(),
                size: sol.size,
            }
        })
        .collect();
    Ok(Outcome::ok(match cli.format {
        Format::Json => render(&entries),
        Format::Table => {
            let headers = ["size", "nodes", "values"].map(String::from);
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    let values: Vec<String> = e.values.iter().map(u8::to_string).collect();
                    vec![e.size.to_string(), e.nodes.join(" "), values.join(" ")]
                })
                .collect();
            render_table(&[], &headers, &rows)
        }
    }))
}

fn path_entry(g: &BooleanNetwork, p: &ControlPath) -> PathEntry {
    PathEntry {
        mode: p.mode.abbreviation().to_string(),
        intermediates: p.intermediates.clone(),
        controls: p
            .controls
            .iter()
            .map(|c| NodeSets {
                zero: node_names(g, c.zero_set().iter().copied()),
                one: node_names(g, c.one_set().iter().copied()),
            })
            .collect(),
        total: p.total,
    }
}

fn format_sets(c: &NodeSets) -> String {
    let zero = c.zero.iter().map(|x| format!("{x}=0"));
    let one = c.one.iter().map(|x| format!("{x}=1"));
    format!("{{{}}}", zero.chain(one).collect::<Vec<_>>().join(", "))
}

fn paths_table(report: &PathsReport) -> String {
    let rows: Vec<AttractorRow> = report
        .attractors
        .iter()
        .map(|a| AttractorRow {
            id: a.id,
            name: a.name.clone(),
            size: a.states.len(),
            states: a.states.clone(),
        })
        .collect();
    let headers = ["mode", "total", "intermediates", "controls"].map(String::from);
    let cells: Vec<Vec<String>> = report
        .paths
        .iter()
        .map(|p| {
            let ids: Vec<String> = p.intermediates.iter().map(usize::to_string).collect();
            let controls: Vec<String> = p.controls.iter().map(format_sets).collect();
            vec![
                p.mode.clone(),
                p.total.to_string(),
                ids.join(" > "),
                controls.join(" ; "),
            ]
        })
        .collect();
    format!(
        "network: {}\nsource: {}\ntarget: {}\nsource policy: {}\n\n{}\n{}",
        report.network,
        report.source,
        report.target,
        report.source_policy,
        attractor_table(&rows),
        render_table(&[], &headers, &cells)
    )
}

fn paths(cli: &Cli, args: &PathsArgs) -> Result<Outcome, CliError> {
    let mode = args
        .mode
        .sequential()
        .ok_or_else(|| CliError::Input("paths expects --mode ASI, AST or ASP".into()))?;
    let analysis = load(cli, &args.model)?;
    let g = analysis.network();
    let source = resolve_attractor(&analysis, &args.source)?;
    let target = resolve_attractor(&analysis, &args.target)?;
    let excluded = args
        .forbid_intermediate
        .iter()
        .map(|s| resolve_attractor(&analysis, s))
        .collect::<Result<BTreeSet<usize>, _>>()?;
    let mut query = SequentialQuery::new(source, target, mode, 0)
        .forbid(forbidden(g, &args.constraints.forbid_node)?)
        .exclude_intermediates(excluded, analysis.attractors().len())
        .include_one_step(args.include_one_step)
        .policy(policy(&args.constraints));
    query.budget = match args.constraints.max_perturbations {
        Some(k) => k,
        None => default_budget(&analysis, &query)?,
    };
    let found = sequential_paths(&analysis, &query)?;
    let report = PathsReport {
        network: network_name(&args.model),
        source,
        target,
        source_policy: policy_name(query.policy).to_string(),
        attractors: attractor_entries(&analysis),
        paths: found.iter().map(|p| path_entry(g, p)).collect(),
    };
    Ok(Outcome::ok(match cli.format {
        Format::Json => render(&report),
        Format::Table => paths_table(&report),
    }))
}

fn step_kind(mode: &str) -> Result<StepKind, CliError> {
    match mode {
        "ASI" => Ok(StepKind::Instantaneous),
        "AST" => Ok(StepKind::Temporary),
        "ASP" => Ok(StepKind::Permanent),
        other => Err(CliError::Input(format!("unknown path mode `{other}`"))),
    }
}

fn verify(cli: &Cli, model: &Path, file: &Path, strict: bool) -> Result<Outcome, CliError> {
    let report: PathsReport = serde_json::from_str(&read(file)?)
        .map_err(|e| CliError::Input(format!("{}: malformed path file: {e}", file.display())))?;
    let g = load_network(model)?;
    if g.len() > cli.max_n.min(ORACLE_MAX_NODES) {
        return Err(CliError::Bound(format!(
            "network has {} nodes; verification is limited to {}",
            g.len(),
            cli.max_n.min(ORACLE_MAX_NODES)
        )));
    }
    let oracle = Oracle::new(&g)?;
    let expected: Vec<Vec<String>> = oracle
        .attractors()
        .iter()
        .map(|a| a.iter().map(State::to_string).collect())
        .collect();
    let listed: Vec<Vec<String>> = report.attractors.iter().map(|a| a.states.clone()).collect();
    let ids_in_order = report.attractors.iter().enumerate().all(|(i, a)| a.id == i);
    if listed != expected || !ids_in_order {
        return Err(CliError::Input(
            "path file attractors do not match the model".into(),
        ));
    }
    let all_states = strict || report.source_policy == policy_name(SourcePolicy::AllStates);
    let mut verdicts = Vec::new();
    for (index, path) in report.paths.iter().enumerate() {
        let kind = step_kind(&path.mode)?;
        let steps = path
            .controls
            .iter()
            .map(|sets| {
                let control = Control::new(forbidden(&g, &sets.zero)?, forbidden(&g, &sets.one)?)?;
                Ok((control, kind))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let schedule = Schedule {
            steps,
            intermediates: path.intermediates.clone(),
        };
        let verdict = oracle.verify_path(report.source, report.target, &schedule, all_states)?;
        verdicts.push(PathVerdict {
            index,
            ok: verdict.ok,
            failing_step: verdict.failing_step,
            witness: verdict.witness.map(|s| s.to_string()),
        });
    }
    let summary = VerifyReport {
        ok: verdicts.iter().all(|v| v.ok),
        paths: verdicts,
    };
    let output = match cli.format {
        Format::Json => render(&summary),
        Format::Table => {
            let headers = ["path", "ok", "failing step", "witness"].map(String::from);
            let rows: Vec<Vec<String>> = summary
                .paths
                .iter()
                .map(|v| {
                    vec![
                        v.index.to_string(),
                        v.ok.to_string(),
                        v.failing_step.map(|i| i.to_string()).unwrap_or_default(),
                        v.witness.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            format!("ok: {}\n{}", summary.ok, render_table(&[], &headers, &rows))
        }
    };
    Ok(Outcome {
        output,
        code: if summary.ok { 0 } else { 1 },
    })
}

fn fill_bench_row(
    cli: &Cli,
    args: &BenchArgs,
    model: &Path,
    row: &mut BenchRow,
) -> Result<(), CliError> {
    let analysis = load(cli, model)?;
    let g = analysis.network();
    row.nodes = g.len();
    row.edges = g.edge_count();
    row.attractors = analysis.attractors().len();
    let pick = |selector: &Option<String>, default: usize| match selector {
        Some(s) => resolve_attractor(&analysis, s),
        None => Ok(default),
    };
    let source = pick(&args.source, 0)?;
    let target = pick(&args.target, row.attractors - 1)?;
    row.source = Some(source);
    row.target = Some(target);
    let banned = forbidden(g, &args.constraints.forbid_node)?;
    for mode in SequentialMode::ALL {
        let start = Instant::now();
        let timed = Analysis::new(g.clone(), cli.max_n)?;
        let mut query = SequentialQuery::new(source, target, mode, 0)
            .forbid(banned.iter().copied())
            .include_one_step(args.include_one_step)
            .policy(policy(&args.constraints));
        query.budget = match args.constraints.max_perturbations {
            Some(k) => k,
            None => default_budget(&timed, &query)?,
        };
        let found = sequential_paths(&timed, &query)?;
        let seconds = start.elapsed().as_secs_f64();
        let best = found.iter().map(|p| p.total).min();
        let (slot_min, slot_count, slot_time) = match mode {
            SequentialMode::Instantaneous => (
                &mut row.perturbations.asi,
                &mut row.paths.asi,
                &mut row.time_seconds.asi,
            ),
            SequentialMode::Temporary => (
                &mut row.perturbations.ast,
                &mut row.paths.ast,
                &mut row.time_seconds.ast,
            ),
            SequentialMode::Permanent => (
                &mut row.perturbations.asp,
                &mut row.paths.asp,
                &mut row.time_seconds.asp,
            ),
        };
        *slot_min = best;
        *slot_count = found.len();
        *slot_time = seconds;
    }
    Ok(())
}

fn bench_table(rows: &[BenchRow]) -> String {
    let mut headers: Vec<String> = ["network", "|V|", "|E|", "|A|"].map(String::from).to_vec();
    for _ in BENCH_GROUPS {
        headers.extend(["ASI", "AST", "ASP"].map(String::from));
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut line = vec![
                r.network.clone(),
                r.nodes.to_string(),
                r.edges.to_string(),
                r.attractors.to_string(),
            ];
            if r.error.is_some() {
                line.extend(std::iter::repeat_n("-".to_string(), 9));
                return line;
            }
            line.extend(
                r.perturbations
                    .iter()
                    .map(|m| m.map_or_else(|| "-".to_string(), |v| v.to_string())),
            );
            line.extend(r.paths.iter().map(usize::to_string));
            line.extend(r.time_seconds.iter().map(|t| format!("{t:.3}")));
            line
        })
        .collect();
    let groups = [
        ("", 4),
        (BENCH_GROUPS[0], 3),
        (BENCH_GROUPS[1], 3),
        (BENCH_GROUPS[2], 3),
    ];
    let mut out = render_table(&groups, &headers, &cells);
    for r in rows {
        if let Some(e) = &r.error {
            out.push_str(&format!("{}: {e}\n", r.network));
        }
    }
    out
}

fn bench(cli: &Cli, args: &BenchArgs) -> Outcome {
    let rows: Vec<BenchRow> = args
        .models
        .iter()
        .map(|model| {
            let mut row = BenchRow {
                network: network_name(model),
                ..BenchRow::default()
            };
            if let Err(e) = fill_bench_row(cli, args, model, &mut row) {
                row.error = Some(e.to_string());
            }
            row
        })
        .collect();
    let failed = rows.iter().any(|r| r.error.is_some());
    Outcome {
        output: match cli.format {
            Format::Json => render(&rows),
            Format::Table => bench_table(&rows),
        },
        code: if failed { 2 } else { 0 },
    }
}

fn simulate(cli: &Cli, model: &Path, from: &str, steps: usize) -> Result<Outcome, CliError> {
    let g = load_network(model)?;
    let s0 = State::parse(from)
        .filter(|s| s.width() == g.len())
        .ok_or_else(|| {
            CliError::Input(format!(
                "`{from}` is not a state of a {}-node network",
                g.len()
            ))
        })?;
    let report = SimulationReport {
        network: network_name(model),
        seed: cli.seed,
        trajectory: oracle::simulate(&g, s0, steps, cli.seed)
            .iter()
            .map(State::to_string)
            .collect(),
    };
    Ok(Outcome::ok(match cli.format {
        Format::Json => render(&report),
        Format::Table => {
            let headers = ["step", "state"].map(String::from);
            let rows: Vec<Vec<String>> = report
                .trajectory
                .iter()
                .enumerate()
                .map(|(i, s)| vec![i.to_string(), s.clone()])
                .collect();
            render_table(&[], &headers, &rows)
        }
    }))
}

#[cfg(test)]
mod tests {
    use clap::Parser;
    use tempfile::TempDir;

    use super::*;

    const EXAMPLE: &str = "x1 = x2\nx2 = x1\nx3 = x2 & x3\n";

    fn setup() -> (TempDir, String) {
        let dir = tempfile::tempdir().unwrap();
        let model = dir.path().join("example.bn");
        fs::write(&model, EXAMPLE).unwrap();
        let model = model.to_str().unwrap().to_string();
        (dir, model)
    }

    fn call(args: &[&str]) -> Result<Outcome, CliError> {
        run(&Cli::try_parse_from(std::iter::once("seqctl").chain(args.iter().copied())).unwrap())
    }

    fn json(args: &[&str]) -> serde_json::Value {
        let out = call(args).unwrap();
        assert_eq!(out.code, 0);
        serde_json::from_str(&out.output).unwrap()
    }

    #[test]
    fn attractors_of_the_example() {
        let (_dir, model) = setup();
        let report: AttractorsReport =
            serde_json::from_value(json(&["attractors", &model])).unwrap();
        let states: Vec<Vec<String>> = report.attractors.iter().map(|a| a.states.clone()).collect();
        assert_eq!(states, [["000"], ["110"], ["111"]]);
        assert_eq!(report.network, "example");
    }

    #[test]
    fn constant_network_has_one_attractor() {
        let dir = tempfile::tempdir().unwrap();
        let model = dir.path().join("const.bn");
        fs::write(&model, "a = 1\nb = 0\n").unwrap();
        let report: AttractorsReport =
            serde_json::from_value(json(&["attractors", model.to_str().unwrap()])).unwrap();
        assert_eq!(report.attractors.len(), 1);
        let basin: BasinsReport =
            serde_json::from_value(json(&["basins", model.to_str().unwrap(), "0"])).unwrap();
        assert_eq!(basin.weak, ["00", "01", "10", "11"]);
    }

    #[test]
    fn size_bound_is_exit_three() {
        let dir = tempfile::tempdir().unwrap();
        let model = dir.path().join("big.bn");
        let text: String = (0..30).map(|i| format!("v{i} = !v{i}\n")).collect();
        fs::write(&model, text).unwrap();
        let err = call(&["attractors", model.to_str().unwrap()]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn input_errors_are_exit_two() {
        let (dir, model) = setup();
        let bad = dir.path().join("bad.bn");
        fs::write(&bad, "a = b\n").unwrap();
        let cases: [Vec<&str>; 5] = [
            vec!["attractors", bad.to_str().unwrap()],
            vec!["basins", &model, "7"],
            vec!["control", &model, "0", "0"],
            vec!["control", &model, "0", "2", "--mode", "AST"],
            vec!["paths", &model, "0", "2", "--forbid-node", "x9"],
        ];
        for args in cases {
            assert_eq!(call(&args).unwrap_err().exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn basins_of_the_example() {
        let (_dir, model) = setup();
        let mid: BasinsReport = serde_json::from_value(json(&["basins", &model, "1"])).unwrap();
        assert_eq!(mid.weak, ["010", "100", "101", "110"]);
        assert_eq!(mid.strong, ["110"]);
        let high: BasinsReport = serde_json::from_value(json(&["basins", &model, "111"])).unwrap();
        assert_eq!(high.weak, ["011", "101", "111"]);
    }

    #[test]
    fn control_examples() {
        let (_dir, model) = setup();
        let ot: Vec<ControlEntry> =
            serde_json::from_value(json(&["control", &model, "0", "1", "--mode", "OT"])).unwrap();
        assert_eq!(ot.len(), 2);
        assert!(ot.iter().all(|c| c.size == 1 && c.values == [1]));
        let oi: Vec<ControlEntry> =
            serde_json::from_value(json(&["control", &model, "0", "2", "--mode", "OI"])).unwrap();
        assert_eq!(oi.len(), 1);
        assert_eq!(oi[0].nodes, ["x1", "x2", "x3"]);
        let capped = json(&["control", &model, "0", "2", "--mode", "OT", "-k", "1"]);
        assert_eq!(capped, serde_json::json!([]));
    }

    #[test]
    fn path_examples() {
        let (_dir, model) = setup();
        let ast: PathsReport = serde_json::from_value(json(&["paths", &model, "0", "2"])).unwrap();
        assert_eq!(ast.paths.len(), 2);
        assert!(ast
            .paths
            .iter()
            .all(|p| p.total == 2 && p.intermediates == [1, 2]));
        let asi: PathsReport =
            serde_json::from_value(json(&["paths", &model, "0", "2", "--mode", "ASI"])).unwrap();
        assert_eq!(asi.paths.len(), 1);
        assert_eq!(asi.paths[0].total, 3);
        let blocked: PathsReport = serde_json::from_value(json(&[
            "paths",
            &model,
            "0",
            "2",
            "--forbid-intermediate",
            "110",
        ]))
        .unwrap();
        assert!(blocked.paths.is_empty());
        let direct: PathsReport =
            serde_json::from_value(json(&["paths", &model, "0", "2", "--include-one-step"]))
                .unwrap();
        assert_eq!(direct.paths.len(), 4);
    }

    #[test]
    fn labels_name_attractors() {
        let (dir, model) = setup();
        let labels = dir.path().join("labels");
        fs::write(&labels, "rest = 000\nprimed = 110\nactive = 111\n").unwrap();
        let labels = labels.to_str().unwrap();
        let report: PathsReport = serde_json::from_value(json(&[
            "paths",
            &model,
            "rest",
            "active",
            "--labels",
            labels,
            "--forbid-intermediate",
            "primed",
        ]))
        .unwrap();
        assert!(report.paths.is_empty());
        assert_eq!(report.attractors[1].name.as_deref(), Some("primed"));
    }

    fn write_paths(dir: &TempDir, report: &PathsReport) -> String {
        let file = dir.path().join("paths.json");
        fs::write(&file, serde_json::to_string(report).unwrap()).unwrap();
        file.to_str().unwrap().to_string()
    }

    #[test]
    fn verify_accepts_what_paths_emits() {
        let (dir, model) = setup();
        for mode in ["ASI", "AST", "ASP"] {
            let report: PathsReport = serde_json::from_value(json(&[
                "paths", &model, "0", "2", "--mode", mode, "--strict",
            ]))
            .unwrap();
            assert_eq!(report.source_policy, "all-states");
            let file = write_paths(&dir, &report);
            let out = call(&["verify", &model, &file]).unwrap();
            assert_eq!(out.code, 0, "{}", out.output);
        }
    }

    #[test]
    fn verify_rejects_broken_paths() {
        let (dir, model) = setup();
        let mut report: PathsReport =
            serde_json::from_value(json(&["paths", &model, "0", "2", "--mode", "ASI"])).unwrap();

        report.paths[0].controls[0].one = vec!["x1".into()];
        let file = write_paths(&dir, &report);
        let out = call(&["verify", &model, &file]).unwrap();
        assert_eq!(out.code, 1);
        let verdict: VerifyReport = serde_json::from_str(&out.output).unwrap();
        assert_eq!(verdict.paths[0].failing_step, Some(0));
        assert_eq!(verdict.paths[0].witness.as_deref(), Some("100"));

        report.paths[0].controls.pop();
        let file = write_paths(&dir, &report);
        let err = call(&["verify", &model, &file]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("schedule has 1 controls but 2"));

        let garbage = dir.path().join("garbage.json");
        fs::write(&garbage, "{\"paths\": 3}").unwrap();
        let err = call(&["verify", &model, garbage.to_str().unwrap()]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    fn cells(table: &str) -> Vec<Vec<String>> {
        table
            .lines()
            .map(|l| {
                l.split("  ")
                    .map(str::trim)
                    .filter(|c| !c.is_empty())
                    .map(String::from)
                    .collect()
            })
            .collect()
    }

    #[test]
    fn table_and_json_carry_the_same_data() {
        let (_dir, model) = setup();
        let report: PathsReport =
            serde_json::from_value(json(&["paths", &model, "0", "2"])).unwrap();
        let table = cells(
            &call(&["paths", &model, "0", "2", "--format", "table"])
                .unwrap()
                .output,
        );
        assert!(table.contains(&vec!["source policy: designated".to_string()]));
        for a in &report.attractors {
            let row = vec![
                a.id.to_string(),
                a.states.len().to_string(),
                a.states.join(" "),
            ];
            assert!(table.contains(&row), "{row:?}");
        }
        for p in &report.paths {
            let ids: Vec<String> = p.intermediates.iter().map(usize::to_string).collect();
            let controls: Vec<String> = p.controls.iter().map(format_sets).collect();
            let row = vec![
                p.mode.clone(),
                p.total.to_string(),
                ids.join(" > "),
                controls.join(" ; "),
            ];
            assert!(table.contains(&row), "{row:?}");
        }
        let entries: Vec<ControlEntry> =
            serde_json::from_value(json(&["control", &model, "0", "1"])).unwrap();
        let table = cells(
            &call(&["control", &model, "0", "1", "--format", "table"])
                .unwrap()
                .output,
        );
        assert_eq!(table.len(), entries.len() + 1);
        for (e, row) in entries.iter().zip(&table[1..]) {
            let values: Vec<String> = e.values.iter().map(u8::to_string).collect();
            assert_eq!(
                row,
                &vec![e.size.to_string(), e.nodes.join(" "), values.join(" ")]
            );
        }
    }

    #[test]
    fn bench_rows() {
        let (dir, model) = setup();
        let lonely = dir.path().join("lonely.bn");
        fs::write(&lonely, "a = a | !a\n").unwrap();
        let out = call(&["bench", &model, lonely.to_str().unwrap()]).unwrap();
        assert_eq!(out.code, 2);
        let rows: Vec<BenchRow> = serde_json::from_str(&out.output).unwrap();
        assert_eq!(rows[0].perturbations.asi, Some(3));
        assert_eq!(rows[0].paths.asi, 1);
        assert_eq!(rows[0].perturbations.ast, Some(2));
        assert_eq!(rows[0].paths.ast, 2);
        assert!(rows[0].error.is_none());
        assert!(rows[1].error.is_some());
        let empty = call(&["bench"]).unwrap();
        assert_eq!((empty.code, empty.output.trim()), (0, "[]"));
    }

    #[test]
    fn simulation_is_seeded() {
        let (_dir, model) = setup();
        let a = json(&["simulate", &model, "--from", "101", "--seed", "9"]);
        let b = json(&["simulate", &model, "--from", "101", "--seed", "9"]);
        assert_eq!(a, b);
        let fixed = json(&["simulate", &model, "--from", "110"]);
        assert_eq!(fixed["trajectory"], serde_json::json!(["110"]));
    }
}
