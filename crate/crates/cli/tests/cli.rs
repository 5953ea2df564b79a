use std::process::Command;

use projatlas_cli::run;

const CUBIC_FOCUS: &str = "x' = -y + x^3; y' = x + x^2*y";
const CENTER: &str = "x' = -y; y' = x";

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("projatlas").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn classify_golden() {
    let (code, out, _) = call(&["classify", "-s", CUBIC_FOCUS]);
    assert_eq!(code, 0);
    assert_eq!(out, "P-singular; W_3 = 0\n");
    let (_, out, _) = call(&["classify", "-s", "x' = x^2 + y^2 - 1; y' = 5*x*y - 5"]);
    assert_eq!(out, "P-nonsingular; W_2 = 4*x^2*y - y^3\n");
}

#[test]
fn reduce_golden() {
    let (code, out, _) = call(&["reduce", "--chart", "1", "-s", CUBIC_FOCUS]);
    assert_eq!(code, 0);
    assert_eq!(out, "xi' = theta + xi^2*theta; theta' = -1 + xi*theta^2; m = 1\n");
    let (_, out, _) = call(&["reduce", "--chart", "2", "-s", CUBIC_FOCUS]);
    assert_eq!(out, "eta' = -zeta^2 - eta^2*zeta; zeta' = -eta - eta*zeta^2; m = 1\n");
    let (_, both, _) = call(&["reduce", "-s", CUBIC_FOCUS]);
    assert_eq!(both.lines().count(), 2);
}

#[test]
fn reduced_systems_are_accepted_as_input() {
    let (code, out, _) = call(&["classify", "-s", "xi' = theta + xi^2*theta; theta' = -1 + xi*theta^2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("P-"), "{out}");
    let (_, out, _) = call(&["reduce", "--chart", "1", "-s", "eta' = -zeta^2 - eta^2*zeta; zeta' = -eta - eta*zeta^2"]);
    assert!(out.starts_with("x' = "), "{out}");
}

#[test]
fn input_errors_exit_1() {
    let (code, out, err) = call(&["classify", "-s", "x' = 0; y' = 0"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("|X_n| + |Y_n|"), "{err}");

    let (code, _, err) = call(&["classify", "-s", "x' = x + q; y' = y"]);
    assert_eq!(code, 1);
    assert!(err.contains("'q'"), "{err}");

    let (code, _, err) = call(&["classify", "-s", "x' = x +* y; y' = y"]);
    assert_eq!(code, 1);
    assert!(err.contains("'*'"), "{err}");

    let (code, _, _) = call(&["classify", "--frobnicate", "-s", CENTER]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["classify"]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["classify", "-s", CENTER, "-f", "sys.txt"]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["reduce", "--chart", "3", "-s", CENTER]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["atlas", "-s", CENTER]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["classify", "-f", "/nonexistent/system.txt"]);
    assert_eq!(code, 1);
}

#[test]
fn analysis_errors_exit_2() {
    let (code, out, err) = call(&["verify-curve", "-s", CENTER, "--curve", "x + y"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("not invariant"), "{err}");
}

#[test]
fn help_documents_every_flag() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["classify", "reduce", "equilibria", "contacts", "symmetry", "lines", "verify-curve", "atlas", "report"] {
        assert!(out.contains(sub), "{sub}");
        let (code, help, _) = call(&[sub, "--help"]);
        assert_eq!(code, 0, "{sub}");
        assert!(help.contains("--system") && help.contains("--file"), "{sub}");
    }
    let flag = |sub: &str, f: &str| {
        let (_, help, _) = call(&[sub, "--help"]);
        assert!(help.contains(f), "{sub} {f}");
    };
    flag("reduce", "--chart");
    flag("equilibria", "--tol");
    flag("verify-curve", "--curve");
    flag("atlas", "--out");
    flag("atlas", "--density");
    flag("atlas", "--tol");
    flag("report", "--out");
}

#[test]
fn analysis_subcommands() {
    let (_, out, _) = call(&["equilibria", "-s", CUBIC_FOCUS]);
    assert_eq!(
        out,
        "finite (0, 0): CenterOrFocus; trace = 0; det = 1\n\
         infinite x = 0 at (eta, zeta) = (0, 0): DegenerateLinearPart (up to time reversal); trace = 0; det = 0; multiplicity 2\n"
    );

    let (_, out, _) = call(&["contacts", "-s", "x' = 2*x*y - 2*y; y' = x^2 - 2*y - y^2 + 1"]);
    assert!(out.contains("Oy (0, 0): side x <= 0"), "{out}");
    let (_, out, _) = call(&["contacts", "-s", CUBIC_FOCUS]);
    assert_eq!(out, "Ox: none\nOy: none\nequatorial: none\n");

    let (_, out, _) = call(&["symmetry", "-s", CUBIC_FOCUS]);
    assert!(out.contains("origin: yes\n"));
    assert!(out.ends_with("divergence = 4*x^2\n"), "{out}");

    let (_, out, _) = call(&["lines", "-s", "x' = x; y' = y + 1"]);
    assert!(out.lines().any(|l| l.starts_with("1 + y = 0")), "{out}");
    let (_, out, _) = call(&["lines", "-s", "x' = -y + x*(1 - x^2 - y^2); y' = x + y*(1 - x^2 - y^2)"]);
    assert_eq!(out, "none\n");

    let (code, out, _) = call(&[
        "verify-curve",
        "-s",
        "x' = -y + x*(1 - x^2 - y^2); y' = x + y*(1 - x^2 - y^2)",
        "--curve",
        "x^2 + y^2 - 1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "invariant; cofactor K = -2*x^2 - 2*y^2; PlaneCycle\n");
}

#[test]
fn system_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("focus.txt");
    std::fs::write(&p, "# cubic focus\nx' = -y + x^3\ny' = x + x^2*y  # second equation\n").unwrap();
    let (code, out, _) = call(&["classify", "-f", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "P-singular; W_3 = 0\n");
}

#[test]
fn report_is_json_with_fixed_keys() {
    let (code, out, _) = call(&["report", "-s", CUBIC_FOCUS]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["projective_type"], "P-singular");
    assert_eq!(v["divergence"], "4*x^2");
    assert!(out.find("\"system\"").unwrap() < out.find("\"cycles\"").unwrap());

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let (code, printed, _) = call(&["report", "-s", CUBIC_FOCUS, "-o", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(printed.is_empty());
    assert_eq!(std::fs::read_to_string(&p).unwrap(), out);
}

#[test]
fn atlas_writes_svg_and_report_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("center.svg");
    let args = ["atlas", "-s", CENTER, "--density", "3", "-o", svg.to_str().unwrap()];
    let (code, out, err) = call(&args);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("wrote "));
    let first = std::fs::read(&svg).unwrap();
    let json = std::fs::read_to_string(dir.path().join("center.json")).unwrap();
    assert!(String::from_utf8_lossy(&first).contains("<svg"));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["system"]["X"], "-y");

    let (code, out2, _) = call(&args);
    assert_eq!(code, 0);
    assert_eq!(out, out2);
    assert_eq!(std::fs::read(&svg).unwrap(), first);
}

#[test]
fn every_subcommand_is_deterministic() {
    for sub in ["classify", "reduce", "equilibria", "contacts", "symmetry", "lines", "report"] {
        let a = call(&[sub, "-s", "x' = x^2 - 2*x*y - 8 + y^2; y' = x*y + 2"]);
        let b = call(&[sub, "-s", "x' = x^2 - 2*x*y - 8 + y^2; y' = x*y + 2"]);
        assert_eq!(a, b, "{sub}");
        assert_eq!(a.0, 0, "{sub} {}", a.2);
    }
}

#[test]
fn config_file_from_environment() {
    let exe = env!("CARGO_BIN_EXE_projatlas");
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("a.svg");
    let good = dir.path().join("good.cfg");
    std::fs::write(&good, "# short runs\nmax_arc_length = 2\nmax_step = 0.05\n").unwrap();
    let status = Command::new(exe)
        .args(["atlas", "-s", CENTER, "--density", "2", "-o", svg.to_str().unwrap()])
        .env("PROJATLAS_CONFIG", &good)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(svg.exists());

    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "max_arc_lenght = 2\n").unwrap();
    let status = Command::new(exe)
        .args(["atlas", "-s", CENTER, "-o", svg.to_str().unwrap()])
        .env("PROJATLAS_CONFIG", &bad)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&status.stderr).contains("max_arc_lenght"));
}
