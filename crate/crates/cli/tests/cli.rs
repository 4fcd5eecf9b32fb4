use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ree-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ree-kit"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn order_q27() {
    let o = run(&["order", "--q", "27"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "10073444472");
}

#[test]
fn rejects_non_powers_of_three() {
    for q in ["25", "9", "81", "0", "abc", "-27", "3.0"] {
        let o = run(&["order", &format!("--q={q}")]);
        assert_eq!(o.status.code(), Some(2), "q={q}");
        assert!(
            String::from_utf8_lossy(&o.stderr).contains("q must be an odd power of 3"),
            "q={q}"
        );
    }
}

#[test]
fn q3_needs_allow_small() {
    assert_eq!(run(&["order", "--q", "3"]).status.code(), Some(2));
    let o = run(&["order", "--q", "3", "--allow-small"]);
    assert_eq!(stdout(&o).trim(), "1512");
}

#[test]
fn exit_code_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let tiny = dir.path().join("tiny_bound.json");
    let mut input = json_out(&["generator", "--q", "3", "--allow-small", "--group-input"]);
    input["bound"] = json!(100);
    std::fs::write(&tiny, input.to_string()).unwrap();
    let tiny = tiny.to_str().unwrap();
    let missing = dir.path().join("missing.json");
    let missing = missing.to_str().unwrap();

    let cases: &[(&[&str], i32)] = &[
        (&["order", "--q", "243"], 0),
        (&["verify", "--q", "27"], 0),
        (&["verify", "--q", "243", "--samples", "8"], 0),
        (&["spectrum", "--q", "27"], 0),
        (&["order", "--q", "25"], 2),
        (&["frobnicate"], 2),
        (&["nse"], 2),
        (&["order-type", "--q", "27", "--n", "0"], 2),
        (&["census", "--file", missing], 2),
        (&["generator", "--q", "27", "--t", "0,0,0,1"], 2),
        // closure exceeds the requested bound: a computation failure
        (&["census", "--file", tiny], 1),
    ];
    for (args, code) in cases {
        assert_eq!(run(args).status.code(), Some(*code), "{args:?}");
    }
}

#[test]
fn verify_lists_checks() {
    let v = json_out(&["verify", "--q", "27", "--json"]);
    assert_eq!(v["passed"], json!(true));
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    for expected in [
        "sum of m_i = |G|",
        "prime graph isolation",
        "q^3 | m_i on the tori",
        "sigma fixes tau",
    ] {
        assert!(names.contains(&expected), "missing {expected}");
    }
}

#[test]
fn nse_json_and_tsv_agree() {
    let v = json_out(&["nse", "--q", "243", "--json", "--families"]);
    let tsv = stdout(&run(&["nse", "--q", "243", "--tsv", "--families"]));
    let mut lines = tsv.lines();
    assert_eq!(lines.next(), Some("order\tcount\tfamily"));
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split('\t').map(String::from).collect())
        .collect();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(rows.len(), entries.len());
    for (row, e) in rows.iter().zip(entries) {
        assert_eq!(row[0], e["order"].as_str().unwrap());
        assert_eq!(row[1], e["count"].as_str().unwrap());
        assert_eq!(row[2], e["family"].as_str().unwrap());
    }
}

#[test]
fn nse_set_reports_coincidences() {
    let v = json_out(&["nse", "--q", "27", "--set"]);
    let orders: Vec<Vec<&str>> = v["coincidences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["orders"]
                .as_array()
                .unwrap()
                .iter()
                .map(|o| o.as_str().unwrap())
                .collect()
        })
        .collect();
    assert!(orders.contains(&vec!["6", "9"]));
    assert!(orders.contains(&vec!["13", "26"]));
}

#[test]
fn counts_are_decimal_strings_beyond_u64() {
    let v = json_out(&["nse", "--q", "2187", "--json"]);
    let big = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["count"].as_str().unwrap().to_string())
        .find(|c| c.parse::<u64>().is_err());
    assert!(big.is_some(), "expected a count above 2^64 at q = 2187");
    assert_eq!(v["group_order"], json!("239189910264352349332632"));
}

#[test]
fn order_type_and_f() {
    let v = json_out(&["order-type", "--q", "27", "--n", "2", "--families"]);
    assert_eq!(v["order_type"], json!("512488"));
    let f_t = v["f_families"].as_object().unwrap();
    let total: u128 = f_t
        .values()
        .map(|x| x.as_str().unwrap().parse::<u128>().unwrap())
        .sum();
    assert_eq!(total.to_string(), v["f"].as_str().unwrap());
}

#[test]
fn spectrum_and_prime_graph() {
    let o = run(&["spectrum", "--q", "27"]);
    assert_eq!(stdout(&o).trim(), "1 2 3 6 7 9 13 14 19 26 37");
    let g = json_out(&["prime-graph", "--q", "243"]);
    let comps: Vec<Vec<&str>> = g["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["primes"]
                .as_array()
                .unwrap()
                .iter()
                .map(|p| p.as_str().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(
        comps,
        vec![vec!["2", "3", "11", "61"], vec!["7", "31"], vec!["271"]]
    );
    assert_eq!(g["isolated"], json!(true));
    let dot = stdout(&run(&["prime-graph", "--q", "27", "--dot"]));
    assert!(dot.contains("label = \"19\""));
}

#[test]
fn unipotent_modes_agree() {
    let expect = json!({"1": "1", "3": "728", "9": "18954"});
    for mode in ["closed-form", "exhaustive", "matrix"] {
        assert_eq!(
            json_out(&["unipotent", "--q", "27", "--mode", mode]),
            expect,
            "{mode}"
        );
    }
    assert_eq!(
        run(&["unipotent", "--q", "243", "--mode", "exhaustive"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn generator_round_trips_through_census() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.json");
    let out = dir.path().join("census.json");
    let input = stdout(&run(&[
        "generator",
        "--q",
        "3",
        "--allow-small",
        "--group-input",
    ]));
    std::fs::write(&gens, input).unwrap();
    let o = run(&[
        "census",
        "--file",
        gens.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--validate",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c["order"], json!("1512"));
    assert_eq!(c["spectrum"], json!(["1", "2", "3", "6", "7", "9"]));
    assert_eq!(c["generators_sha"].as_str().unwrap().len(), 64);

    let v = json_out(&[
        "compare",
        "--a",
        out.to_str().unwrap(),
        "--b",
        out.to_str().unwrap(),
    ]);
    assert_eq!(v["verdict"], json!("SAME"));
    assert_eq!(v["order_type_equal"], json!(true));
}

#[test]
fn compare_nse_against_census() {
    let dir = tempfile::tempdir().unwrap();
    let nse = dir.path().join("nse27.json");
    let sl = dir.path().join("sl2_8.json");
    std::fs::write(&nse, stdout(&run(&["nse", "--q", "27", "--json"]))).unwrap();
    run(&["census", "--preset", "sl2-8", "--out", sl.to_str().unwrap()]);
    let v = json_out(&[
        "compare",
        "--a",
        nse.to_str().unwrap(),
        "--b",
        sl.to_str().unwrap(),
    ]);
    assert_eq!(v["verdict"], json!("DIFFERENT"));
    assert_eq!(v["witness"], json!("order 10073444472 != 504"));
}

#[test]
fn q3_census_matches_q3_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let nse = dir.path().join("nse3.json");
    let ree = dir.path().join("ree3.json");
    std::fs::write(
        &nse,
        stdout(&run(&["nse", "--q", "3", "--allow-small", "--json"])),
    )
    .unwrap();
    run(&["census", "--preset", "ree3", "--out", ree.to_str().unwrap()]);
    let v = json_out(&[
        "compare",
        "--a",
        nse.to_str().unwrap(),
        "--b",
        ree.to_str().unwrap(),
    ]);
    assert_eq!(v["verdict"], json!("SAME"));
    assert_eq!(v["order_type_equal"], json!(true));
}

#[test]
fn sequential_and_threads_give_identical_output() {
    let par = stdout(&run(&["census", "--preset", "sl2-8"]));
    let seq = stdout(&run(&["--sequential", "census", "--preset", "sl2-8"]));
    let one = stdout(&run_env(
        &["census", "--preset", "sl2-8"],
        "REE_KIT_THREADS",
        "1",
    ));
    assert_eq!(par, seq);
    assert_eq!(par, one);
    let bad = run_env(&["order", "--q", "27"], "REE_KIT_THREADS", "zero");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn generator_matrix_output() {
    let tau = stdout(&run(&["generator", "--q", "27", "--name", "tau"]));
    let rows: Vec<&str> = tau.lines().collect();
    assert_eq!(rows.len(), 7);
    // τ is the negated antidiagonal
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split('\t').collect();
        for (j, c) in cells.iter().enumerate() {
            assert_eq!(*c, if i + j == 6 { "2" } else { "0" });
        }
    }
    let m = json_out(&[
        "generator",
        "--q",
        "27",
        "--name",
        "beta",
        "--t",
        "0,1",
        "--json",
    ]);
    assert_eq!(m["rows"].as_array().unwrap().len(), 7);
    assert_eq!(m["field"]["modulus"], json!([1, 2, 0, 1]));
}
