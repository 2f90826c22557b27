use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CLIMATE_ONE: &str = "hs,tp,probability\n3.0,8,1.0\n";
const CLIMATE_TWO: &str = "hs,tp,probability\n1.5,7,0.4\n3.0,9,0.6\n";

fn wecopt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wecopt"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn workspace(climate: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("climate.csv"), climate).unwrap();
    dir
}

#[test]
fn evaluate_report_is_golden() {
    let dir = workspace(CLIMATE_ONE);
    fs::write(dir.path().join("reference.txt"), "5.5 1.0 45 45\n2e5\n1.5e5\n").unwrap();
    let out = wecopt(
        dir.path(),
        &["evaluate", "reference.txt", "--climate", "climate.csv"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let expected = "\
design: a = 5.5 m, H/a = 1, alpha_t = 45 deg, alpha_ap = 45 deg
climate: climate (1 states, total probability 1)
hydro: analytic
P_AAP  = 62538.047 W
LCoE   = 28.565484487
m_b    = 267874.770 kg
m_as   = 179150.021 kg
F_peak = 1544671.291 N
converged: all states
state,hs,tp,probability,k_pto,b_pto,power_w,peak_force_n,iterations,converged
0,3,8,1,200000,150000,62538.047,1544671.291,5,true
";
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);

    let line = fs::read_to_string(dir.path().join("wecopt-out/evaluations/reference.jsonl")).unwrap();
    assert_eq!(line.lines().count(), 1);
    let record: Value = serde_json::from_str(&line).unwrap();
    assert!((record["p_aap"].as_f64().unwrap() - 62538.047).abs() < 1e-3);
    assert_eq!(record["states"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    let dir = workspace(CLIMATE_ONE);
    let p = dir.path();
    fs::write(p.join("short.txt"), "5.5 1.0 45\n").unwrap();
    fs::write(p.join("bad.toml"), "budget = 10\ncolour = \"red\"\n").unwrap();

    assert_eq!(code(&wecopt(p, &["--help"])), 0);
    assert_eq!(code(&wecopt(p, &["--version"])), 0);
    assert_eq!(code(&wecopt(p, &["frobnicate"])), 2);
    assert_eq!(
        code(&wecopt(p, &["evaluate", "short.txt", "--climate", "climate.csv"])),
        2
    );
    assert_eq!(
        code(&wecopt(
            p,
            &["evaluate", "missing.txt", "--climate", "climate.csv"]
        )),
        2
    );
    assert_eq!(
        code(&wecopt(
            p,
            &["optimise", "--climate", "nope.csv", "--budget", "5"]
        )),
        2
    );
    assert_eq!(
        code(&wecopt(
            p,
            &["optimise", "--climate", "climate.csv", "--algo", "hybrid"]
        )),
        2
    );
    assert_eq!(
        code(&wecopt(
            p,
            &["optimise", "--climate", "climate.csv", "--algo", "gradient"]
        )),
        2
    );
    assert_eq!(
        code(&wecopt(
            p,
            &["optimise", "--climate", "climate.csv", "--budget", "0"]
        )),
        2
    );
    let unknown = wecopt(
        p,
        &["optimise", "--config", "bad.toml", "--climate", "climate.csv"],
    );
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("colour"));

    // one sweep node outside the radius bounds fails, the other completes
    let partial = wecopt(
        p,
        &[
            "sweep",
            "--climate",
            "climate.csv",
            "--radii",
            "10,25",
            "--aspects",
            "1",
            "--budget",
            "30",
        ],
    );
    assert_eq!(code(&partial), 1);
    let surface = fs::read_to_string(p.join("wecopt-out/surfaces/power_surface.csv")).unwrap();
    let rows: Vec<&str> = surface.lines().collect();
    assert_eq!(rows[0], "a,aspect,objective_value,converged");
    assert!(rows[1].starts_with("10,1,") && rows[1].ends_with(",true"));
    assert_eq!(rows[2], "25,1,NaN,false");
}

fn trace_values(path: &Path) -> Vec<f64> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("evaluation_index,best_value"));
    lines
        .enumerate()
        .map(|(i, l)| {
            let (idx, v) = l.split_once(',').unwrap();
            assert_eq!(idx.parse::<usize>().unwrap(), i + 1);
            v.parse().unwrap()
        })
        .collect()
}

#[test]
fn optimise_writes_traces_and_summaries() {
    let dir = workspace(CLIMATE_TWO);
    let p = dir.path();
    let out = wecopt(
        p,
        &[
            "optimise",
            "--climate",
            "climate.csv",
            "--objective",
            "lcoe",
            "--algo",
            "ea,de",
            "--repeats",
            "3",
            "--budget",
            "40",
            "--seed",
            "100",
            "--out",
            "run",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("ea "), "{stdout}");
    for tag in ["ea", "de"] {
        let mut finals = Vec::new();
        for seed in 100..103 {
            let values = trace_values(&p.join(format!("run/traces/lcoe_{tag}_seed{seed}.csv")));
            assert_eq!(values.len(), 40);
            assert!(values.windows(2).all(|w| w[1] <= w[0]));
            let run: Value = serde_json::from_str(
                &fs::read_to_string(p.join(format!("run/summaries/lcoe_{tag}_seed{seed}.json"))).unwrap(),
            )
            .unwrap();
            assert_eq!(run["best_value"].as_f64(), values.last().copied());
            // the stored record re-scores the best design
            assert_eq!(run["record"]["lcoe"].as_f64(), values.last().copied());
            assert_eq!(run["search_vector"].as_array().unwrap().len(), 8);
            finals.push(*values.last().unwrap());
        }
        let summary: Value = serde_json::from_str(
            &fs::read_to_string(p.join(format!("run/summaries/lcoe_{tag}_summary.json"))).unwrap(),
        )
        .unwrap();
        assert_eq!(summary["budget"].as_u64(), Some(40));
        let listed: Vec<f64> = summary["best_values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_f64().unwrap())
            .collect();
        assert_eq!(listed, finals);
        let mut sorted = finals.clone();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(summary["stats"]["min"].as_f64(), Some(sorted[0]));
        assert_eq!(summary["stats"]["median"].as_f64(), Some(sorted[1]));
        assert_eq!(summary["stats"]["max"].as_f64(), Some(sorted[2]));
        assert_eq!(
            summary["stats"]["q1"].as_f64(),
            Some(sorted[0] + 0.5 * (sorted[1] - sorted[0]))
        );
        assert!(summary["failed"].as_array().unwrap().is_empty());
    }
}

#[test]
fn reruns_are_byte_identical_for_any_thread_count() {
    let dir = workspace(CLIMATE_TWO);
    let p = dir.path();
    let mut outputs = Vec::new();
    for jobs in ["1", "2"] {
        let name = format!("jobs{jobs}");
        let run = |args: &[&str]| {
            let mut full = args.to_vec();
            full.extend_from_slice(&["--climate", "climate.csv", "--jobs", jobs, "--out", &name]);
            assert_eq!(code(&wecopt(p, &full)), 0);
        };
        run(&[
            "optimise",
            "--algo",
            "nm,pso,cmaes,sade",
            "--repeats",
            "2",
            "--budget",
            "60",
            "--seed",
            "9",
        ]);
        run(&[
            "sweep",
            "--radii",
            "8,14",
            "--aspects",
            "0.5,1.2",
            "--budget",
            "40",
            "--seed",
            "2",
        ]);
        let mut files = Vec::new();
        for sub in ["traces", "surfaces"] {
            let mut entries: Vec<_> = fs::read_dir(p.join(&name).join(sub))
                .unwrap()
                .map(|e| e.unwrap().path())
                .collect();
            entries.sort();
            for path in entries {
                files.push((path.file_name().unwrap().to_owned(), fs::read(&path).unwrap()));
            }
        }
        outputs.push(files);
    }
    assert_eq!(outputs[0].len(), 9);
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn sweep_surface_covers_the_grid() {
    let dir = workspace(CLIMATE_ONE);
    let p = dir.path();
    let out = wecopt(
        p,
        &[
            "sweep",
            "--climate",
            "climate.csv",
            "--radii",
            "8,12",
            "--aspects",
            "0.4,1.5",
            "--budget",
            "50",
        ],
    );
    assert_eq!(code(&out), 0);
    let surface = fs::read_to_string(p.join("wecopt-out/surfaces/power_surface.csv")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), surface);
    let nodes: Vec<(String, String)> = surface
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert!(f[2].parse::<f64>().unwrap() > 0.0);
            (f[0].to_string(), f[1].to_string())
        })
        .collect();
    let expected: Vec<(String, String)> = [("8", "0.4"), ("8", "1.5"), ("12", "0.4"), ("12", "1.5")]
        .iter()
        .map(|(a, r)| (a.to_string(), r.to_string()))
        .collect();
    assert_eq!(nodes, expected);
}

#[test]
fn flags_override_the_config_file() {
    let dir = workspace(CLIMATE_ONE);
    let p = dir.path();
    fs::create_dir(p.join("conf")).unwrap();
    fs::rename(p.join("climate.csv"), p.join("conf/climate.csv")).unwrap();
    fs::write(
        p.join("conf/campaign.toml"),
        "objective = \"lcoe\"\nalgorithms = [\"nm\"]\nbudget = 25\nrepeats = 1\nseed = 4\n\
         climate = \"climate.csv\"\nout = \"results\"\n\n[grid]\nmin = 0.2\nmax = 2.5\npoints = 30\n",
    )
    .unwrap();

    let out = wecopt(p, &["optimise", "--config", "conf/campaign.toml"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        trace_values(&p.join("conf/results/traces/lcoe_nm_seed4.csv")).len(),
        25
    );

    let out = wecopt(
        p,
        &[
            "optimise",
            "--config",
            "conf/campaign.toml",
            "--budget",
            "12",
            "--seed",
            "7",
            "--objective",
            "power",
            "--out",
            "cli",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let values = trace_values(&p.join("cli/traces/power_nm_seed7.csv"));
    assert_eq!(values.len(), 12);
    assert!(values.windows(2).all(|w| w[1] >= w[0]));
}
