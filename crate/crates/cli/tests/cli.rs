use std::process::{Command, Output};

fn multisum(args: &[&str]) -> Output {
    multisum_env(args, &[])
}

fn multisum_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_multisum"));
    cmd.args(args)
        .env_remove("MULTISUM_ENUM_BUDGET")
        .env_remove("MULTISUM_DEBUG_CORRUPT_MOBIUS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn count(args: &[&str]) -> String {
    let mut full = vec!["count"];
    full.extend_from_slice(args);
    let o = multisum(&full);
    assert!(o.status.success(), "{full:?}: {}", stderr(&o));
    stdout(&o).trim().to_string()
}

/// Parses text-format table output into (size, target, count) triples.
fn table_rows(args: &[&str]) -> Vec<(u64, String, String)> {
    let mut full = vec!["table"];
    full.extend_from_slice(args);
    let o = multisum(&full);
    assert!(o.status.success(), "{full:?}: {}", stderr(&o));
    stdout(&o)
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split(' ').collect();
            assert_eq!(f.len(), 3, "line {l:?}");
            (f[0].parse().unwrap(), f[1].to_string(), f[2].to_string())
        })
        .collect()
}

fn row(rows: &[(u64, String, String)], i: u64, g: &str) -> String {
    rows.iter()
        .find(|(s, t, _)| *s == i && t == g)
        .unwrap_or_else(|| panic!("no row ({i},{g})"))
        .2
        .clone()
}

#[test]
fn count_examples() {
    assert_eq!(
        count(&[
            "--group",
            "Z4",
            "--quantity",
            "M",
            "--size",
            "3",
            "--target",
            "1"
        ]),
        "5"
    );
    assert_eq!(
        count(&[
            "--group",
            "Z4",
            "--quantity",
            "M",
            "--size",
            "3",
            "--target",
            "1",
            "--exclude",
            "0;1"
        ]),
        "1"
    );
    assert_eq!(
        count(&[
            "--group",
            "Z4",
            "--quantity",
            "N",
            "--size",
            "2",
            "--target",
            "0",
            "--exclude",
            "0"
        ]),
        "1"
    );
}

#[test]
fn count_with_oracle_agrees() {
    for q in ["M", "N", "P"] {
        let out = count(&[
            "--group",
            "Z2xZ4",
            "--quantity",
            q,
            "--size",
            "4",
            "--target",
            "1,2",
            "--oracle",
        ]);
        let plain = count(&[
            "--group",
            "Z2xZ4",
            "--quantity",
            q,
            "--size",
            "4",
            "--target",
            "1,2",
        ]);
        assert_eq!(out, plain);
    }
    count(&[
        "--group",
        "Z6",
        "--quantity",
        "N",
        "--size",
        "3",
        "--target",
        "3",
        "--exclude",
        "1;2",
        "--oracle",
    ]);
}

#[test]
fn table_examples() {
    let z2 = table_rows(&["--group", "Z2", "--quantity", "M", "--max-size", "2"]);
    assert_eq!(row(&z2, 2, "0"), "2");

    let z1 = table_rows(&["--group", "Z1", "--quantity", "N", "--max-size", "1"]);
    assert_eq!(
        z1,
        vec![(0, "0".into(), "1".into()), (1, "0".into(), "1".into())]
    );

    let z4 = table_rows(&["--group", "Z4", "--quantity", "P", "--max-size", "2"]);
    assert_eq!(row(&z4, 2, "0"), "2");
}

#[test]
fn series_table_matches_closed_form() {
    for q in ["M", "N", "P"] {
        let args = ["--group", "Z2xZ6", "--quantity", q, "--max-size", "7"];
        let closed = table_rows(&args);
        let mut with_series = args.to_vec();
        with_series.push("--series");
        assert_eq!(closed, table_rows(&with_series), "quantity {q}");
    }
}

#[test]
fn printed_targets_reparse() {
    let rows = table_rows(&["--group", "Z2xZ3", "--quantity", "M", "--max-size", "3"]);
    for (i, g, c) in rows {
        let again = count(&[
            "--group",
            "Z2xZ3",
            "--quantity",
            "M",
            "--size",
            &i.to_string(),
            "--target",
            &g,
        ]);
        assert_eq!(again, c, "({i},{g})");
    }
}

#[test]
fn csv_table_quotes_multi_factor_targets() {
    let o = multisum(&[
        "table",
        "--group",
        "Z2xZ2",
        "--quantity",
        "N",
        "--max-size",
        "1",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("size,target,count"));
    assert_eq!(lines.next(), Some("0,\"0,0\",1"));
    assert_eq!(text.lines().count(), 1 + 2 * 4);
}

#[test]
fn json_count_schema() {
    let o = multisum(&[
        "count",
        "--group",
        "Z4xZ6",
        "--quantity",
        "M",
        "--size",
        "3",
        "--target",
        "1,3",
        "--exclude",
        "0,0;1,1",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["group"], serde_json::json!([4, 6]));
    assert_eq!(v["quantity"], "M");
    assert_eq!(v["size"], 3);
    assert_eq!(v["target"], serde_json::json!([1, 3]));
    assert_eq!(v["exclude"], serde_json::json!([[0, 0], [1, 1]]));
    assert!(v["count"].is_string());
    v["count"].as_str().unwrap().parse::<u128>().unwrap();
}

#[test]
fn json_table_has_string_counts() {
    let o = multisum(&[
        "table",
        "--group",
        "Z3",
        "--quantity",
        "N",
        "--max-size",
        "3",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4 * 3);
    assert!(rows.iter().all(|r| r["count"].is_string()));
}

#[test]
fn large_counts_are_exact() {
    // Coprime size: the count is C(n+i-1, i)/n regardless of target.
    let c = count(&[
        "--group",
        "Z2",
        "--quantity",
        "M",
        "--size",
        "49",
        "--target",
        "1",
    ]);
    assert_eq!(c, "25");
    let big = count(&[
        "--group",
        "Z7",
        "--quantity",
        "M",
        "--size",
        "500",
        "--target",
        "3",
    ]);
    assert_eq!(big, "3232595194818");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "table",
        "--group",
        "Z2xZ4",
        "--quantity",
        "P",
        "--max-size",
        "6",
        "--format",
        "json",
    ];
    assert_eq!(multisum(&args).stdout, multisum(&args).stdout);
    let v = [
        "verify",
        "--max-order",
        "4",
        "--max-size",
        "3",
        "--max-excluded",
        "1",
    ];
    assert_eq!(multisum(&v).stdout, multisum(&v).stdout);
}

#[test]
fn parse_errors_name_the_token() {
    let cases: &[(&[&str], &str)] = &[
        (
            &[
                "count",
                "--group",
                "Z4xQ",
                "--quantity",
                "M",
                "--size",
                "1",
                "--target",
                "0",
            ],
            "Q",
        ),
        (
            &[
                "count",
                "--group",
                "Z4",
                "--quantity",
                "M",
                "--size",
                "1",
                "--target",
                "x",
            ],
            "x",
        ),
        (
            &[
                "count",
                "--group",
                "Z4",
                "--quantity",
                "M",
                "--size",
                "1",
                "--target",
                "1,2",
            ],
            "1,2",
        ),
        (
            &[
                "count",
                "--group",
                "Z4",
                "--quantity",
                "M",
                "--size",
                "1",
                "--target",
                "0",
                "--exclude",
                "0;z",
            ],
            "z",
        ),
    ];
    for (args, token) in cases {
        let o = multisum(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert!(err.contains(token), "{args:?}: {err}");
        assert_eq!(err.trim().lines().count(), 1, "{err}");
    }
}

#[test]
fn p_rejects_exclude_set() {
    let o = multisum(&[
        "count",
        "--group",
        "Z4",
        "--quantity",
        "P",
        "--size",
        "2",
        "--target",
        "0",
        "--exclude",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--exclude"));
}

#[test]
fn budget_refusal_has_its_own_status() {
    let args = [
        "count",
        "--group",
        "Z4",
        "--quantity",
        "M",
        "--size",
        "3",
        "--target",
        "1",
        "--oracle",
    ];
    let o = multisum_env(&args, &[("MULTISUM_ENUM_BUDGET", "5")]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = multisum(&[
        "verify",
        "--max-order",
        "4",
        "--max-size",
        "4",
        "--budget",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_examples() {
    let o = multisum(&[
        "verify",
        "--max-order",
        "6",
        "--max-size",
        "5",
        "--max-excluded",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("all checks passed"));

    let o = multisum(&[
        "verify",
        "--max-order",
        "1",
        "--max-size",
        "0",
        "--max-excluded",
        "0",
    ]);
    assert!(o.status.success());
    let first = stdout(&o);
    let n: u64 = first.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(n >= 1, "{first}");

    let o = multisum(&["verify", "--max-order", "0", "--max-size", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[cfg(debug_assertions)]
#[test]
fn corrupted_mobius_fails_verify() {
    let o = multisum_env(
        &["verify", "--max-order", "4", "--max-size", "3"],
        &[("MULTISUM_DEBUG_CORRUPT_MOBIUS", "2:1")],
    );
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("MISMATCH"));
    assert!(
        out.contains("group=Z2") && out.contains("size=") && out.contains("target="),
        "{out}"
    );
}
