use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn spanner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spanner"))
        .args(args)
        .output()
        .expect("run spanner")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

#[test]
fn bounds_prints_published_values() {
    let o = spanner(&["bounds", "--kind", "theta-theta", "--k", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "16.76");
    let o = spanner(&["bounds", "--kind", "theta", "--k", "6"]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = spanner(&["bounds", "--kind", "yao-yao", "--k", "6"]);
    assert_eq!(stdout(&o).trim(), "infinite");
}

#[test]
fn circle_star_center_collects_every_edge() {
    let dir = tempfile::tempdir().unwrap();
    let points = path(dir.path(), "p.csv");
    let graph = path(dir.path(), "g.json");
    let o = spanner(&["gen", "--dist", "circle-star", "--n", "9", "--seed", "1", "--out", &points]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = spanner(&["build", "--kind", "theta", "--k", "6", "--in", &points, "--out", &graph]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("max in-degree: 8 (point 0)"), "{}", stdout(&o));
}

#[test]
fn pipeline_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let points = path(dir.path(), &format!("p{run}.csv"));
        let graph = path(dir.path(), &format!("g{run}.json"));
        let report = path(dir.path(), &format!("r{run}.csv"));
        assert!(spanner(&["gen", "--dist", "uniform", "--n", "60", "--seed", "4", "--out", &points]).status.success());
        assert!(spanner(&["build", "--kind", "theta-theta", "--k", "30", "--in", &points, "--out", &graph]).status.success());
        assert!(spanner(&["stretch", "--graph", &graph, "--report", &report]).status.success());
        outputs.push([points, graph, report].map(|p| fs::read(p).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn stretch_reports_ratio_and_per_edge_stretch() {
    let dir = tempfile::tempdir().unwrap();
    let points = path(dir.path(), "p.json");
    let graph = path(dir.path(), "g.json");
    let report = path(dir.path(), "e.csv");
    assert!(spanner(&["gen", "--dist", "clustered", "--n", "80", "--seed", "2", "--out", &points]).status.success());
    assert!(spanner(&["build", "--kind", "theta-theta", "--k", "36", "--in", &points, "--out", &graph]).status.success());
    let o = spanner(&["stretch", "--graph", &graph]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("spanning ratio:"));
    assert!(stdout(&o).contains("witness:"));
    let o = spanner(&["stretch", "--graph", &graph, "--against-theta6", "--report", &report]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("per-edge stretch:"));
    assert!(stdout(&o).contains("published per-edge bound: 3.91"));
    let csv = fs::read_to_string(&report).unwrap();
    assert!(csv.starts_with("source,target,length,path,ratio\n"));
}

#[test]
fn violated_bound_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // no edges: the pairs are disconnected, so no finite bound holds
    let broken = r#"{"scheme":{"k":6},"kind":"theta","points":[{"id":0,"x":0.0,"y":0.0},{"id":1,"x":1.0,"y":0.5},{"id":2,"x":-1.0,"y":2.0}],"edges":[]}"#;
    let graph = path(dir.path(), "broken.json");
    fs::write(&graph, broken).unwrap();
    let o = spanner(&["stretch", "--graph", &graph]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("exceeds"));

    let broken = broken.replace("\"theta\"", "\"theta-theta\"").replace("\"k\":6", "\"k\":30");
    fs::write(&graph, broken).unwrap();
    let o = spanner(&["stretch", "--graph", &graph, "--against-theta6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = path(dir.path(), "missing.csv");
    assert_eq!(spanner(&["build", "--kind", "bogus", "--in", &missing]).status.code(), Some(2));
    let o = spanner(&["build", "--kind", "theta", "--in", &missing]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error"));
    assert!(stdout(&o).is_empty());
    assert_eq!(spanner(&["verify", "--lemma", "9"]).status.code(), Some(2));
    assert_eq!(spanner(&["verify", "--theta", "pi/7"]).status.code(), Some(2));
    assert_eq!(spanner(&["gen", "--dist", "uniform", "--n", "0", "--out", &missing]).status.code(), Some(2));
    assert_eq!(spanner(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(spanner(&["--help"]).status.code(), Some(0));

    let bad = path(dir.path(), "bad.csv");
    fs::write(&bad, "id,x,y\n0,0,0\n1,oops,1\n").unwrap();
    let o = spanner(&["build", "--kind", "yao", "--in", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn verify_tables_match() {
    let o = spanner(&["verify", "--tables"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("16/16 entries matched within 0.5%"), "{out}");
    assert_eq!(out.matches(" ok").count(), 16);
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = path(dir.path(), "lemmas.csv");
    let o = spanner(&[
        "verify", "--lemma", "3", "--theta", "pi/18", "--trials", "200", "--seed", "5", "--report", &report,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(&report).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("check,theta,case,trials,failures,worst_slack"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[0], "lemma3");
        assert_eq!(cols[1], "pi/18");
        assert_eq!(cols[4], "0");
    }
}

#[test]
fn export_dot_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let points = path(dir.path(), "p.csv");
    assert!(spanner(&["gen", "--dist", "grid", "--n", "16", "--out", &points]).status.success());
    let mut graphs = Vec::new();
    for kind in ["yao", "theta", "yao-yao", "theta-theta"] {
        let g = path(dir.path(), &format!("{kind}.json"));
        assert!(spanner(&["build", "--kind", kind, "--k", "6", "--in", &points, "--out", &g]).status.success());
        graphs.push(g);
    }
    let dot = path(dir.path(), "g.dot");
    let o = spanner(&["export", "--graph", &graphs[1], "--format", "dot", "--out", &dot]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("pos=").count(), 16);

    let svg = path(dir.path(), "g.svg");
    let mut args = vec!["export", "--format", "svg", "--out", &svg, "--cone-fan", "5"];
    for g in &graphs {
        args.extend(["--graph", g.as_str()]);
    }
    let o = spanner(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&svg).unwrap().matches("<g class=\"panel\"").count(), 4);
}
