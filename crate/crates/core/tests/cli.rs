use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_potalg");

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("POTALG_DEFAULT_FORMAT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Self {
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        let header = lines.next().expect("header").split(',').map(str::to_owned).collect();
        let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
        Self { header, rows }
    }

    fn col(&self, name: &str) -> usize {
        self.header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("no column {name}"))
    }

    fn f(&self, row: usize, name: &str) -> f64 {
        self.rows[row][self.col(name)].parse().unwrap()
    }

    fn s(&self, row: usize, name: &str) -> &str {
        &self.rows[row][self.col(name)]
    }
}

#[test]
fn potential_closed_form_matches_assembly() {
    let o = run(&["potential", "--family", "gpt", "--B", "5", "--k", "3.5", "--m", "1"]);
    assert_eq!(code(&o), 0);
    let t = Csv::parse(&stdout(&o));
    assert_eq!(t.rows.len(), 200);
    for i in 0..t.rows.len() {
        assert!(t.f(i, "gap") <= 1e-9, "row {i}: {}", t.f(i, "gap"));
        assert_eq!(t.f(i, "im_v_total"), 0.0);
    }
}

#[test]
fn unextended_potential_has_no_rational_part() {
    let o = run(&["potential", "--m", "0", "--n", "50"]);
    assert_eq!(code(&o), 0);
    let t = Csv::parse(&stdout(&o));
    for i in 0..t.rows.len() {
        assert_eq!(t.f(i, "re_v_rational"), 0.0);
        assert_eq!(t.f(i, "im_v_rational"), 0.0);
    }
}

#[test]
fn scarf_profile_is_mirror_conjugate() {
    let o = run(&[
        "potential",
        "--family",
        "scarf2",
        "--B",
        "2",
        "--k",
        "2.5",
        "--m",
        "2",
        "--x-min",
        "-10",
        "--x-max",
        "10",
        "--n",
        "201",
    ]);
    assert_eq!(code(&o), 0);
    let t = Csv::parse(&stdout(&o));
    let n = t.rows.len();
    for i in 0..n {
        let j = n - 1 - i;
        assert!((t.f(i, "x") + t.f(j, "x")).abs() < 1e-12);
        let (re, im) = (t.f(i, "re_v_total"), t.f(i, "im_v_total"));
        let scale = re.hypot(im).max(1.0);
        assert!((re - t.f(j, "re_v_total")).abs() <= 1e-10 * scale);
        assert!((im + t.f(j, "im_v_total")).abs() <= 1e-10 * scale);
    }
}

#[test]
fn gpt_spectrum_reproduces_ladder() {
    let o = run(&["spectrum", "--family", "gpt", "--B", "5", "--k", "3.5", "--m", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = Csv::parse(&stdout(&o));
    let ladder: Vec<usize> = (0..t.rows.len()).filter(|&i| t.s(i, "kind") == "ladder").collect();
    let closed: Vec<f64> = ladder.iter().map(|&i| t.f(i, "e_closed")).collect();
    assert_eq!(closed, vec![0.0, 5.0, 8.0]);
    for &i in &ladder {
        assert!(t.f(i, "abs_delta") <= 1e-4);
        assert_eq!(t.s(i, "pass"), "true");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "spectrum", "--family", "scarf2", "--B", "2", "--k", "2.5", "--m", "1", "--n", "400",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), code(&b));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_parameters_exit_with_usage_code() {
    let o = run(&["spectrum", "--B", "3", "--k", "3.5"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(code(&run(&["potential", "--k", "nan"])), 2);
    assert_eq!(code(&run(&["potential", "--B-range", "1:2:1"])), 2);
    assert_eq!(code(&run(&["potential", "--bogus"])), 2);
    assert_eq!(code(&run(&["potential", "--n", "5"])), 2);
}

#[test]
fn injected_fault_fails_verification() {
    let o = run(&["verify-algebra", "--fault", "tanh2x"]);
    assert_eq!(code(&o), 1);
    let t = Csv::parse(&stdout(&o));
    let i = (0..t.rows.len()).find(|&i| t.s(i, "check") == "rest1_f").unwrap();
    assert_eq!(t.s(i, "pass"), "false");
    assert!(t.f(i, "at_x").is_finite());
}

#[test]
fn clean_verification_passes() {
    for m in ["0", "1", "2"] {
        let o = run(&["verify-algebra", "--B", "7", "--k", "3.5", "--m", m]);
        assert_eq!(code(&o), 0, "m = {m}: {}", stdout(&o));
    }
    let o = run(&["verify-susy", "--B", "6", "--k", "3.5", "--m", "1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn singular_shifted_extension_is_flagged() {
    let o = run(&["verify-algebra", "--B", "5", "--k", "3.5", "--m", "2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("k+1/2"));
}

#[test]
fn sweep_covers_every_tuple() {
    let o = run(&["sweep", "--B", "7", "--k", "3.5", "--m-range", "0:2:1", "--n", "400"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = Csv::parse(&stdout(&o));
    // Three ladder levels for each of three m values.
    assert_eq!(t.rows.len(), 9);
    for i in 0..t.rows.len() {
        assert_eq!(t.s(i, "pass"), "true");
        assert!(t.f(i, "iso_deviation") <= 5e-5);
    }
}

#[test]
fn sweep_reports_invalid_tuples_as_rows() {
    let o = run(&["sweep", "--B-range", "3:7:4", "--k", "3.5", "--m", "1", "--n", "400"]);
    assert_eq!(code(&o), 0);
    assert!(!o.stderr.is_empty());
    let t = Csv::parse(&stdout(&o));
    let errors = (0..t.rows.len()).filter(|&i| !t.s(i, "error").is_empty()).count();
    assert!(errors >= 1);
    assert!(t.rows.len() > errors);
}

#[test]
fn empty_sweep_prints_header_only() {
    let o = run(&["sweep", "--m-range", "3:2:1"]);
    assert_eq!(code(&o), 0);
    assert!(Csv::parse(&stdout(&o)).rows.is_empty());
}

#[test]
fn oversized_sweep_is_refused() {
    let o = run(&["sweep", "--B-range", "6:106:0.001"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn json_output_is_versioned() {
    let o = run(&["potential", "--n", "16", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "potential");
    assert_eq!(v["rows"].as_array().unwrap().len(), 16);
}

#[test]
fn format_falls_back_to_environment() {
    let o = run_env(&["potential", "--n", "16"], &[("POTALG_DEFAULT_FORMAT", "json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with('{'));
    let o = run_env(&["potential", "--n", "16"], &[("POTALG_DEFAULT_FORMAT", "xml")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.csv");
    let args = ["potential", "--m", "2", "--n", "40"];
    let direct = run(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = run(&with_out);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
