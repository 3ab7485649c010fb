use serde_json::Value;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_dppcount");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(BIN).args(args).output().expect("spawn dppcount");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn ok(args: &[&str]) -> String {
    let r = run(args);
    assert_eq!(r.code, 0, "dppcount {args:?} failed: {}", r.stderr);
    r.stdout
}

/// CSV body as header plus rows of strings.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (header, rows) = csv_rows(text);
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

/// Entries printed to a given number of decimals agree within one unit of
/// the last printed place.
fn assert_printed(actual: f64, printed: f64, unit: f64) {
    assert!(
        (actual - printed).abs() <= unit,
        "{actual} does not match printed {printed} (unit {unit})"
    );
}

#[test]
fn eigs_sine_trace() {
    let out = ok(&["eigs", "--kernel", "sine", "--interval", "0:10", "--order", "60"]);
    assert!(out.starts_with("l,lambda,mu_l,zero\n"));
    assert!(!out.contains('\r'));
    let lambdas = column(&out, "lambda");
    assert_eq!(lambdas.len(), 60);
    assert!((lambdas.iter().sum::<f64>() - 10.0).abs() < 1e-9);
}

#[test]
fn eigs_ginibre_leading_eigenvalue() {
    let out = ok(&["eigs", "--kernel", "ginibre-disk", "--radius", "2"]);
    let lambdas = column(&out, "lambda");
    assert!((lambdas[0] - (1.0 - (-4.0f64).exp())).abs() < 1e-11);
    assert!((lambdas[0] - 0.9816843611).abs() < 1e-10);
}

#[test]
fn eigs_airy_is_contractive_and_zeros_negative() {
    let v = json(&["eigs", "--kernel", "airy", "--interval", "-5:12"]);
    let lambdas: Vec<f64> = v["lambdas"].as_array().unwrap().iter().map(f).collect();
    assert!(lambdas.iter().all(|l| (0.0..=1.0).contains(l)));
    for (z, l) in v["zeros"].as_array().unwrap().iter().zip(&lambdas) {
        if *l > 0.0 {
            assert!(f(z) < 0.0);
        } else {
            assert!(z.is_null());
        }
    }
}

#[test]
fn eigs_conditioned_kernel_ids() {
    let out = ok(&["eigs", "--kernel", "sine-conditioned:0.5", "--interval", "0:3"]);
    let with_point: f64 = column(&out, "lambda").iter().sum();
    let out = ok(&["eigs", "--kernel", "sine", "--interval", "0:3"]);
    let plain: f64 = column(&out, "lambda").iter().sum();
    assert!(with_point < plain - 0.5);
}

#[test]
fn count_gue_bulk_matches_table() {
    let out = ok(&["count", "--ensemble", "gue-bulk", "--s", "10"]);
    let e = column(&out, "E");
    let printed = [
        (7, 1.49e-4, 1e-6),
        (8, 0.0161, 1e-4),
        (9, 0.2238, 1e-4),
        (10, 0.5202, 1e-4),
        (11, 0.2234, 1e-4),
        (12, 0.0163, 1e-4),
        (13, 1.61e-4, 1e-6),
    ];
    for (k, p, unit) in printed {
        assert_printed(e[k], p, unit);
    }
    assert_eq!(column(&out, "mu")[0], 10.0);
    assert!((column(&out, "sigma2")[0].sqrt() - 0.761).abs() < 1e-3);
}

#[test]
fn count_gse_bulk_matches_table() {
    let out = ok(&["count", "--ensemble", "gse-bulk", "--s", "10"]);
    let e = column(&out, "E");
    for (k, p) in [(8, 0.0028), (9, 0.1819), (10, 0.6307), (11, 0.1818), (12, 0.0028)] {
        assert_printed(e[k], p, 1e-4);
    }
}

#[test]
fn count_soft_edge() {
    let s = format!("{}", (15.0 * std::f64::consts::PI).powf(2.0 / 3.0));
    let v = json(&["count", "--ensemble", "gue-soft", "--s", &s]);
    assert!((f(&v["E"][10]) - 0.6405).abs() <= 5e-4);
    assert_eq!(f(&v["metadata"]["truncation"]), 12.0);
    assert_eq!(f(&v["region"]["b"]), 12.0);
}

#[test]
fn count_ginibre_accepts_radius() {
    let v = json(&["count", "--ensemble", "ginibre-disk", "--radius", "1.5"]);
    assert!((f(&v["mu"]) - 2.25).abs() < 1e-10);
    assert_eq!(v["order"], 0);
}

#[test]
fn json_has_schema_fields() {
    let v = json(&["count", "--ensemble", "gue-bulk", "--s", "10"]);
    for key in [
        "command", "kernel", "region", "order", "lambdas", "mu", "sigma2", "E", "lclt_sup",
        "clt_sup", "log_concave", "metadata",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "count");
    assert_eq!(v["kernel"], "gue-bulk");
    assert_eq!(f(&v["region"]["a"]), 0.0);
    assert_eq!(f(&v["region"]["b"]), 10.0);
    assert_eq!(v["order"], 60);
    assert_eq!(v["log_concave"], true);
    for key in ["truncation", "clamped", "version"] {
        assert!(v["metadata"].get(key).is_some(), "missing metadata.{key}");
    }
    let total: f64 = v["E"].as_array().unwrap().iter().map(f).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn csv_round_trips_through_json() {
    let csv_out = ok(&["count", "--ensemble", "gse-bulk", "--s", "10"]);
    let v = json(&["count", "--ensemble", "gse-bulk", "--s", "10"]);
    let from_csv = column(&csv_out, "E");
    let from_json: Vec<f64> = v["E"].as_array().unwrap().iter().map(f).collect();
    assert_eq!(from_csv.len(), from_json.len());
    for (c, j) in from_csv.iter().zip(&from_json) {
        assert!((c - j).abs() <= 5e-6 * j.abs());
    }
    assert!((column(&csv_out, "sigma2")[0] - f(&v["sigma2"])).abs() < 1e-11);
    assert!((column(&csv_out, "lclt_sup")[0] - f(&v["lclt_sup"])).abs() < 1e-8);
}

#[test]
fn reproduce_table1_both_rows() {
    let (_, rows) = csv_rows(&ok(&["reproduce", "table1"]));
    assert_eq!(rows.len(), 7);
    let exact = [1.49e-4, 0.0161, 0.2238, 0.5202, 0.2234, 0.0163, 1.61e-4];
    let gaussian = [2.2e-4, 0.0166, 0.221, 0.524, 0.221, 0.0166, 2.2e-4];
    let exact_unit = [1e-6, 1e-4, 1e-4, 1e-4, 1e-4, 1e-4, 1e-6];
    let gaussian_unit = [1e-5, 1e-4, 1e-3, 1e-3, 1e-3, 1e-4, 1e-5];
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0], "gue-bulk");
        assert_eq!(row[1], (7 + i).to_string());
        assert_printed(row[2].parse().unwrap(), exact[i], exact_unit[i]);
        assert_printed(row[3].parse().unwrap(), gaussian[i], gaussian_unit[i]);
    }
}

#[test]
fn reproduce_table2_exact_rows() {
    let (_, rows) = csv_rows(&ok(&["reproduce", "table2"]));
    assert_eq!(rows.len(), 14);
    let goe = [0.0027, 0.0464, 0.2427, 0.4169, 0.2416, 0.0467, 0.0029];
    let gse = [8.65e-7, 0.0028, 0.1819, 0.6307, 0.1818, 0.0028, 9.7e-7];
    let gse_unit = [1e-9, 1e-4, 1e-4, 1e-4, 1e-4, 1e-4, 1e-8];
    for (i, row) in rows[..7].iter().enumerate() {
        assert_eq!(row[0], "goe-bulk");
        assert_printed(row[2].parse().unwrap(), goe[i], 1e-4);
    }
    for (i, row) in rows[7..].iter().enumerate() {
        assert_eq!(row[0], "gse-bulk");
        assert_printed(row[2].parse().unwrap(), gse[i], gse_unit[i]);
    }
}

#[test]
fn reproduce_softedge() {
    let (_, rows) = csv_rows(&ok(&["reproduce", "softedge"]));
    let row = rows.iter().find(|r| r[1] == "10").unwrap();
    let exact: f64 = row[2].parse().unwrap();
    let gaussian: f64 = row[3].parse().unwrap();
    assert!((exact - 0.6405).abs() <= 5e-4);
    assert!((gaussian - 0.649).abs() <= 1e-3);
    assert!((row[4].parse::<f64>().unwrap() - 9.99).abs() <= 1e-2);
    assert!((row[5].parse::<f64>().unwrap() - 0.377).abs() <= 2e-3);
}

#[test]
fn lclt_sweep_decreases() {
    let out = ok(&["lclt", "--ensemble", "gue-bulk", "--s", "10,40,160"]);
    assert_eq!(column(&out, "s"), vec![10.0, 40.0, 160.0]);
    let sup = column(&out, "lclt_sup");
    assert!(sup[0] > sup[1] && sup[1] > sup[2], "{sup:?}");

    let out = ok(&["lclt", "--ensemble", "gse-bulk", "--s", "10,40"]);
    let sup = column(&out, "lclt_sup");
    assert!(sup[0] > sup[1], "{sup:?}");
}

#[test]
fn lclt_rows_follow_input_order() {
    let out = ok(&["lclt", "--ensemble", "gue-bulk", "--s", "40,10,20"]);
    assert_eq!(column(&out, "s"), vec![40.0, 10.0, 20.0]);
}

#[test]
fn lclt_empty_list_is_usage_error() {
    let r = run(&["lclt", "--ensemble", "gue-bulk", "--s", ""]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert_eq!(run(&["lclt", "--ensemble", "gue-bulk"]).code, 2);
}

#[test]
fn spacing_bulk_normalized() {
    let v = json(&["spacing", "--ensemble", "spacing-bulk", "--k", "0", "--smax", "6", "--step", "0.02"]);
    assert_eq!(v["density"].as_array().unwrap().len(), 301);
    assert!((f(&v["integral"]) - 1.0).abs() <= 2e-3);
}

#[test]
fn spacing_soft_unimodal_positive() {
    let out = ok(&["spacing", "--ensemble", "kth-largest-soft", "--k", "0", "--srange", "-6:6"]);
    let p = column(&out, "density");
    assert!(p.iter().all(|&x| x > 0.0));
    let peak = p
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert!(p[..=peak].windows(2).all(|w| w[0] <= w[1]));
    assert!(p[peak..].windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn spacing_negative_k_is_usage_error() {
    let r = run(&["spacing", "--ensemble", "spacing-bulk", "--k", "-1", "--smax", "2"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("--k"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["count", "--ensemble", "gue", "--s", "10"]).code, 2);
    assert_eq!(run(&["eigs", "--kernel", "sine"]).code, 2);
    assert_eq!(run(&["eigs", "--kernel", "sine", "--interval", "0-10"]).code, 2);
    assert_eq!(run(&["eigs", "--kernel", "sine", "--radius", "2"]).code, 2);
    assert_eq!(run(&["eigs", "--kernel", "bessel", "--interval", "0:1"]).code, 2);
    assert_eq!(run(&["count", "--ensemble", "gue-bulk", "--s", "10", "--format", "xml"]).code, 2);
    assert_eq!(run(&["reproduce", "table3"]).code, 2);
    assert_eq!(run(&[]).code, 2);
}

#[test]
fn numerical_failures_exit_1() {
    let r = run(&["count", "--ensemble", "gue-soft", "--s", "1e9"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.is_empty());
    assert!(!r.stderr.is_empty());
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("count", vec!["count", "--ensemble", "goe-bulk", "--s", "10"]),
        ("lclt", vec!["lclt", "--ensemble", "gue-bulk", "--s", "10,20,30", "--format", "json"]),
        ("eigs", vec!["eigs", "--kernel", "airy", "--interval", "-4:8", "--format", "json"]),
    ] {
        let a = dir.path().join(format!("{name}-a"));
        let b = dir.path().join(format!("{name}-b"));
        for path in [&a, &b] {
            let mut all = args.clone();
            all.extend(["--out", path.to_str().unwrap()]);
            assert_eq!(ok(&all), "");
        }
        let first = std::fs::read(&a).unwrap();
        assert!(!first.is_empty());
        assert_eq!(first, std::fs::read(&b).unwrap(), "{name} output differs between runs");
    }
}

#[test]
fn order_and_truncation_are_echoed() {
    let v = json(&["count", "--ensemble", "gue-soft", "--s", "4", "--order", "90", "--truncation", "10"]);
    assert_eq!(v["order"], 90);
    assert_eq!(f(&v["metadata"]["truncation"]), 10.0);
    assert_eq!(f(&v["region"]["a"]), -4.0);
    assert_eq!(f(&v["region"]["b"]), 10.0);
}
