use std::process::{Command, Output};

use modlearn_cli::{emit_table, run_cli, ComplexityRow, Direction, Format};

fn modlearn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlearn"))
        .args(args)
        .env_remove("MODLEARN_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn learn_sup_on_rectangles() {
    let o = modlearn(&[
        "learn",
        "--class",
        "prod(intervals(16),intervals(16))",
        "--target",
        "prod([3,5],[2,8])",
        "--mode",
        "sup",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hypothesis"], "prod([3,5],[2,8])");
    assert_eq!(v["exact"], true);
    assert!(v["stats"]["counts"]["Sup"].as_u64().unwrap() > 0);
}

#[test]
fn learn_every_product_mode() {
    for mode in ["sup", "mem", "mem+pos", "sub+mem+pos", "eq+mem+pos"] {
        let o = modlearn(&[
            "learn",
            "--class",
            "prod(intervals(8),singletons(3))",
            "--target",
            "prod([2,6],{1})",
            "--mode",
            mode,
            "--format",
            "csv",
        ]);
        assert_eq!(o.status.code(), Some(0), "{mode}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        assert!(text.lines().nth(1).unwrap().contains(",true,"), "{mode}: {text}");
    }
}

#[test]
fn learn_atomic_union_and_prefix() {
    let cases = [
        ("intervals(16)", "[3,5]", "eq"),
        ("finsets(6)", "{1,4}", "pos"),
        ("union(intervals(8),singletons(4))", "union([1,2],{3})", "sub"),
        ("prefix(8,4)", "c(\"123\")", "eq"),
    ];
    for (class, target, mode) in cases {
        let o = modlearn(&["learn", "--class", class, "--target", target, "--mode", mode]);
        assert_eq!(o.status.code(), Some(0), "{class}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(modlearn(&["learn", "--class", "nonsense(3)", "--target", "[1,2]", "--mode", "eq"]).status.code(), Some(2));
    assert_eq!(modlearn(&["learn", "--class", "intervals(4)", "--target", "[1,9]", "--mode", "eq"]).status.code(), Some(2));
    assert_eq!(modlearn(&["learn", "--class", "intervals(4)", "--target", "[1,2]", "--mode", "warp"]).status.code(), Some(2));
    assert_eq!(modlearn(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(modlearn(&["lowerbound"]).status.code(), Some(2));
    assert_eq!(run_cli(["modlearn", "pac", "--epsilon", "1.5"]), 2);
}

#[test]
fn budget_exhaustion_is_a_failure() {
    let o = modlearn(&[
        "learn", "--class", "intervals(16)", "--target", "[3,5]", "--mode", "mem", "--budget", "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_passes_and_is_deterministic() {
    let a = modlearn(&["table", "--k", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,setting,direction,measured_q,bound_q,measured_mem,bound_mem,pass,note"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.contains(",true,")));
    assert!(rows[0].starts_with("Pos,any,impossible,not possible"));
    for q in ["Sup", "Mem", "Sub", "EQ"] {
        assert!(rows.iter().any(|r| r.starts_with(&format!("{q},"))));
    }
    assert_eq!(stdout(&modlearn(&["table", "--k", "2", "--seed", "7"])), text);
    assert_eq!(modlearn(&["table", "--k", "3", "--seed", "1", "--trials", "5"]).status.code(), Some(0));
}

#[test]
fn env_seed_overrides_flag() {
    let run = |env: Option<&str>, seed: &str| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_modlearn"));
        c.args(["pac", "--trials", "3", "--seed", seed]).env_remove("MODLEARN_SEED");
        if let Some(e) = env {
            c.env("MODLEARN_SEED", e);
        }
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(Some("5"), "1"), run(None, "5"));
    assert_ne!(run(None, "1"), run(None, "5"));
}

#[test]
fn lowerbound_constructions() {
    let o = modlearn(&["lowerbound", "--construction", "prefix", "--k", "2", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["justifiable_at_level_r"], 4);
    assert_eq!(v["queries"], 3);

    let o = modlearn(&["lowerbound", "--construction", "singleton", "--m", "2", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bound"], 8);
    for l in v["learners"].as_array().unwrap() {
        assert!(l["queries"].as_u64().unwrap() >= 8);
    }

    let o = modlearn(&["lowerbound", "--construction", "positive", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "answers,consistent,pass\n20,2,true\n");
}

#[test]
fn pac_reports_and_out_file() {
    let dir = std::env::temp_dir().join(format!("modlearn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pac.csv");
    let p = path.to_str().unwrap();
    let o = modlearn(&["pac", "--mode", "mem", "--trials", "20", "--seed", "3", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("seed,m,epsilon,delta,error,nodes,mem\n"));
    assert_eq!(text.lines().count(), 21);
    std::fs::remove_dir_all(&dir).unwrap();

    let o = modlearn(&["pac", "--trials", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trials"].as_array().unwrap().len(), 10);
}

fn row(pass: bool) -> ComplexityRow {
    ComplexityRow {
        q: "Sup".into(),
        setting: "only".into(),
        direction: Direction::Upper,
        measured_q: Some(3),
        bound_q: Some(4),
        measured_mem: Some(0),
        bound_mem: Some(0),
        pass,
        note: "n".into(),
    }
}

#[test]
fn emit_table_forms() {
    let csv = emit_table(&[row(true)], Format::Csv);
    assert_eq!(csv.lines().count(), 2);
    assert_eq!(csv.lines().nth(1).unwrap(), "Sup,only,upper,3,4,0,0,true,n");
    let json: serde_json::Value = serde_json::from_str(&emit_table(&[row(true), row(false)], Format::Json)).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 2);
    assert_eq!(json[1]["pass"], false);
    let pos = ComplexityRow {
        q: "Pos".into(),
        direction: Direction::Impossible,
        measured_q: None,
        bound_q: None,
        measured_mem: None,
        bound_mem: None,
        note: "not possible; 2 consistent concepts".into(),
        ..row(true)
    };
    assert!(emit_table(&[pos], Format::Csv).contains("Pos,only,impossible,not possible"));
}
