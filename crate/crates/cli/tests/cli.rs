use std::process::{Command, Output};

fn cgsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgsig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cgsig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn cf_sig_figure_eight() {
    for (n1, n2, want) in [("1", "2", "1/5"), ("2", "4", "-1/5"), ("3", "1", "-1/5"), ("4", "3", "1/5")] {
        let o = cgsig(&["cf-sig", "-a", "-2", "-b", "2", "-q", "5", "--n1", n1, "--n2", n2]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), format!("{want}\n"));
    }
}

#[test]
fn cf_sig_zero_meridian_is_precondition() {
    let o = cgsig(&["cf-sig", "-a", "-2", "-b", "2", "-q", "5", "--n1", "0", "--n2", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tl_sig_presets() {
    let o = cgsig(&["tl-sig", "--preset", "torus-2-5", "--q", "5", "--k", "1"]);
    assert_eq!(stdout(&o), "-2\n");
    let o = cgsig(&["tl-sig", "--preset", "torus-2-5", "--q", "5", "--k", "0"]);
    assert_eq!(stdout(&o), "0\n");
    let o = cgsig(&["tl-sig", "--preset", "figure-eight", "--q", "2", "--k", "1"]);
    assert_eq!(stdout(&o), "0\n");
    let o = cgsig(&["tl-sig", "--preset", "torus-2-5", "--q", "5", "--k", "2", "--multiplicity", "32"]);
    assert_eq!(stdout(&o), "-128\n");
    let o = cgsig(&["tl-sig", "--knot", "[[-1,0],[1,-1]]", "--q", "2", "--k", "1"]);
    assert_eq!(stdout(&o), "-2\n");
}

#[test]
fn tl_sig_errors() {
    assert_eq!(cgsig(&["tl-sig", "--preset", "torus-2-5", "--q", "6", "--k", "1"]).status.code(), Some(3));
    assert_eq!(cgsig(&["tl-sig", "--preset", "nope", "--q", "5", "--k", "1"]).status.code(), Some(2));
    assert_eq!(cgsig(&["tl-sig", "--knot", "[[1,2", "--q", "5", "--k", "1"]).status.code(), Some(2));
    // det(V - Vᵀ) = 0
    assert_eq!(cgsig(&["tl-sig", "--knot", "[[1,0],[0,1]]", "--q", "5", "--k", "1"]).status.code(), Some(3));
}

#[test]
fn cover_homology_reports() {
    let o = cgsig(&["cover-homology", "--matrix", "[[-2,1],[1,2]]"]);
    let s = stdout(&o);
    assert!(s.contains("group: Z/5\n"));
    assert!(s.contains("[e2] = 2[e1]\n"));
    for a in 1..=5i64 {
        let m = format!("[[{},1],[1,{}]]", 2 * a, -2 * a);
        let o = cgsig(&["cover-homology", "--matrix", &m, "--json"]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["invariant_factors"], serde_json::json!([(4 * a * a + 1).to_string()]));
    }
    assert_eq!(cgsig(&["cover-homology", "--matrix", "[[2,0],[0,0]]"]).status.code(), Some(3));
}

#[test]
fn gilmer_family_round_trip() {
    let cert = tmp("family.json");
    let o = cgsig(&["gilmer-check", "--family-g", "1", "--family-k", "0", "--emit-cert", cert.to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("PROVED g4 > 1\n962 subspaces"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 962);

    let o = cgsig(&["check-cert", cert.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "VALID g4 > 1\n");

    // a knot file built from the certificate's own knot gives the same result
    let knot = tmp("knot.json");
    std::fs::write(&knot, v["knot"].to_string()).unwrap();
    let o2 = cgsig(&["gilmer-check", "--knot", knot.to_str().unwrap(), "--genus", "1"]);
    assert_eq!(stdout(&o2), s);

    // lowering a bound to the threshold invalidates the certificate
    let mut bad = v.clone();
    bad["records"][0]["bound"] = serde_json::json!("4");
    let badp = tmp("bad.json");
    std::fs::write(&badp, bad.to_string()).unwrap();
    let o = cgsig(&["check-cert", badp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INVALID"));

    assert_eq!(cgsig(&["check-cert", "{\"genus\": 1}"]).status.code(), Some(2));
}

#[test]
fn gilmer_negative_control_and_errors() {
    let o = cgsig(&["gilmer-check", "--family-g", "1", "--unknot-companions"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INCONCLUSIVE at subspace"));

    assert_eq!(cgsig(&["gilmer-check", "--knot", "{bad", "--genus", "1"]).status.code(), Some(2));

    let z17 = r#"{"base":{"seifert":[[2,1],[0,-2]],"surgery":{"a":-4,"b":4}},"infections":[]}"#;
    assert_eq!(cgsig(&["gilmer-check", "--knot", z17, "--genus", "1"]).status.code(), Some(4));
}

#[test]
fn cg_table_for_figure_eight_base() {
    let k = r#"{"base":{"seifert":[[1,1],[0,-1]],"surgery":{"a":-2,"b":2}},"infections":[]}"#;
    let o = cgsig(&["cg-table", "--knot", k]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let centers: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["center"].as_str().unwrap()).collect();
    assert_eq!(centers, ["0", "1/5", "-1/5", "-1/5", "1/5"]);
}

#[test]
fn reproduce_figure_eight() {
    let o = cgsig(&["paper-verify", "--section", "example2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("7/7 assertions pass"));

    let o = cgsig(&["reproduce", "--section", "figure-eight", "-b", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] H1 = Z/5"));

    let o = cgsig(&["reproduce", "--section", "figure-eight", "-q", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reproduce_family_with_json() {
    let out = tmp("report.json");
    let o = cgsig(&["reproduce", "--section", "family", "--g", "1", "--k", "0", "--json", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("TOTAL 7/7 assertions pass"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["analytic"][0]["star"], serde_json::json!(5462));
}

#[test]
fn output_is_byte_identical() {
    let args = ["gilmer-check", "--family-g", "1", "--family-k", "1"];
    let a = cgsig(&args);
    let b = cgsig(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let c1 = tmp("c1.json");
    let c2 = tmp("c2.json");
    cgsig(&["gilmer-check", "--family-g", "1", "--jobs", "3", "--emit-cert", c1.to_str().unwrap()]);
    cgsig(&["gilmer-check", "--family-g", "1", "--jobs", "1", "--emit-cert", c2.to_str().unwrap()]);
    assert_eq!(std::fs::read(c1).unwrap(), std::fs::read(c2).unwrap());
}
