use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tlss::data::parse_observations;
use tlss::simstudy::COLUMNS;

fn tlss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlss"))
        .args(args)
        .env_remove("TLSS_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = tlss(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn eval_grid_integrates_to_one() {
    let (header, rows) = csv_rows(&ok(&[
        "eval", "--lambda", "2", "--from", "-4", "--to", "4", "--grid", "161",
    ]));
    assert_eq!(header, ["y", "pdf", "logpdf", "cdf"]);
    assert_eq!(rows.len(), 161);
    let mass: f64 = rows
        .windows(2)
        .map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1] + w[1][1]))
        .sum();
    assert!((mass - 1.0).abs() < 1e-3, "{mass}");
    assert!(rows.iter().all(|r| r[1].is_finite() && r[2].is_finite()));
}

#[test]
fn eval_is_even_in_lambda() {
    let a = csv_rows(&ok(&["eval", "--lambda", "1.5", "--model", "tlslg"])).1;
    let b = csv_rows(&ok(&["eval", "--lambda", "-1.5", "--model", "tlslg"])).1;
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x[1], y[1]);
    }
}

#[test]
fn eval_quantiles_increase() {
    let (header, rows) = csv_rows(&ok(&["eval", "--u", "0.25,0.5,0.75", "--lambda", "3"]));
    assert_eq!(header, ["u", "quantile"]);
    assert_eq!(rows.len(), 3);
    assert!(rows[0][1] < rows[1][1] && rows[1][1] < rows[2][1]);
}

#[test]
fn eval_json_envelope() {
    let v: Value = serde_json::from_str(&ok(&["eval", "--grid", "5", "--format", "json"])).unwrap();
    for key in ["command", "inputs", "results", "diagnostics"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["command"], "eval");
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 5);
    assert_eq!(v["inputs"]["dist"]["model"], "tlsn");
}

#[test]
fn sample_is_seeded_and_reparses() {
    let args = [
        "sample", "--n", "5", "--seed", "1", "--lambda", "-2", "--model", "tlsc",
    ];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let rows = parse_observations(&a).unwrap();
    assert_eq!(rows.len(), 5);
    let other = ok(&[
        "sample", "--n", "5", "--seed", "1", "--stream", "1", "--lambda", "-2", "--model", "tlsc",
    ]);
    assert_ne!(a, other);
    // every emitted number re-parses to the same double
    let json: Value =
        serde_json::from_str(&ok(&[&args[..], &["--format", "json"]].concat())).unwrap();
    let values = json["results"]["values"].as_array().unwrap();
    for (o, v) in rows.iter().zip(values) {
        assert_eq!(o.value, v.as_f64().unwrap());
    }
}

#[test]
fn rejection_sampling_flag() {
    let a = ok(&["sample", "--n", "50", "--method", "reject", "--lambda", "4"]);
    assert_eq!(a.lines().count(), 51);
    assert_ne!(a, ok(&["sample", "--n", "50", "--lambda", "4"]));
}

#[test]
fn modes_of_tlsn() {
    let (header, _) = csv_rows("location,kind,residual,kink\n");
    assert_eq!(header.len(), 4);
    let text = ok(&["modes", "--lambda", "1"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "{text}");
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells[1], "maximum");
    assert!(cells[0].parse::<f64>().unwrap() < 0.0);
}

#[test]
fn simulate_table_shape() {
    let text = ok(&[
        "simulate", "--reps", "100", "--n", "50,100", "--lambda", "1", "--seed", "3",
    ]);
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, COLUMNS);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][1], 50.0);
    assert_eq!(rows[1][1], 100.0);
    assert_eq!(
        text,
        ok(&["simulate", "--reps", "100", "--n", "50,100", "--lambda", "1", "--seed", "3"])
    );
}

#[test]
fn fit_fixture_with_censoring() {
    let dir = tempfile::tempdir().unwrap();
    let csv = ok(&[
        "fixture",
        "--n",
        "400",
        "--mu",
        "2",
        "--lambda",
        "1.5",
        "--censor-quantile",
        "0.3",
        "--seed",
        "1",
    ]);
    let rows = parse_observations(&csv).unwrap();
    assert!(rows.iter().any(|o| o.censored) && rows.iter().any(|o| !o.censored));
    let path = write(dir.path(), "fixture.csv", &csv);

    let v: Value = serde_json::from_str(&ok(&["fit", &path, "--model", "tlsn"])).unwrap();
    assert_eq!(v["command"], "fit");
    let m = &v["results"]["models"][0];
    assert_eq!(m["model"], "tlss-normal");
    assert_eq!(m["converged"], true);
    let params = m["parameters"].as_array().unwrap();
    assert_eq!(params.len(), 3);
    let mu = &params[0];
    assert!(mu["lower"].as_f64().unwrap() < 2.0 && 2.0 < mu["upper"].as_f64().unwrap());
    assert_eq!(v["results"]["ranking"][0]["model"], "tlss-normal");
}

#[test]
fn compare_ranks_by_aic_and_reports_support_errors() {
    let dir = tempfile::tempdir().unwrap();
    let csv = ok(&[
        "fixture", "--n", "300", "--mu", "0.5", "--lambda", "2", "--seed", "2",
    ]);
    let path = write(dir.path(), "mixed.csv", &csv);
    let out = tlss(&["compare", &path]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let models = v["results"]["models"].as_array().unwrap();
    assert_eq!(models.len(), 4);
    // negative draws rule out the positive-support competitors
    let errors: Vec<&str> = models
        .iter()
        .filter(|m| m.get("error").is_some())
        .map(|m| m["model"].as_str().unwrap())
        .collect();
    assert_eq!(errors, ["weibull", "lognormal"]);
    let ranking: Vec<f64> = v["results"]["ranking"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["aic"].as_f64().unwrap())
        .collect();
    assert_eq!(ranking.len(), 2);
    assert!(ranking[0] <= ranking[1]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside the support"));
}

#[test]
fn fit_csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "pos.csv",
        "value\n1.2\n0.4\n2.2\n3.1\n0.9\n1.7\n2.5\n0.6\n",
    );
    let text = ok(&[
        "fit",
        &path,
        "--model",
        "lognormal,weibull",
        "--format",
        "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "model,parameter,estimate,lower,upper,log_likelihood,aic,converged"
    );
    assert_eq!(lines.count(), 4);
}

#[test]
fn data_dir_lookup() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "pos.csv",
        "value,censored\n1.2,0\n0.4,1\n2.2,0\n3.1,0\n0.9,0\n",
    );
    let out = Command::new(env!("CARGO_BIN_EXE_tlss"))
        .args(["fit", "pos.csv", "--model", "lognormal"])
        .env("TLSS_DATA_DIR", dir.path())
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inputs"]["censored"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(tlss(&["sample", "--n", "x"]).status.code(), Some(2));
    assert_eq!(
        tlss(&["sample", "--method", "gibbs"]).status.code(),
        Some(2)
    );
    assert_eq!(tlss(&["sample", "--sigma", "-1"]).status.code(), Some(2));
    assert_eq!(tlss(&["eval", "--model", "weibull"]).status.code(), Some(2));
    assert_eq!(tlss(&["modes", "--grid", "3"]).status.code(), Some(2));
    assert_eq!(tlss(&["fit", "/no/such/file.csv"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.csv", "value,censored\nabc,0\n");
    let out = tlss(&["fit", &bad]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let flag = write(dir.path(), "flag.csv", "value,censored\n1.0,2\n");
    assert_eq!(tlss(&["fit", &flag]).status.code(), Some(3));

    let negative = write(dir.path(), "neg.csv", "value\n-1.0\n2.0\n");
    assert_eq!(
        tlss(&["fit", &negative, "--model", "weibull"])
            .status
            .code(),
        Some(3)
    );
}
