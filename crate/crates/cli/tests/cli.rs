use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-hg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CORNER: [&str; 10] = ["--p", "5", "--prec", "6", "--a", "-5", "--b", "5/2", "--c", "8/3"];

fn eval(z: &str) -> Output {
    let mut args = vec!["--records", "eval"];
    args.extend(CORNER);
    args.extend(["--z", z]);
    run(&args)
}

#[test]
fn eval_routes_by_disk() {
    let o = eval("1/5");
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("kind=eval p=5 prec=6 branch=0 a=-5 b=5/2 c=8/3 z=1/5 disk=infinity "), "{s}");
    assert!(s.contains("hyp.params_in_pZ=true"));
    assert!(s.contains("basis1=") && s.contains("basis2="));

    let s = stdout(&eval("6/1"));
    assert!(s.contains("disk=one") && s.contains("addend2="), "{s}");
    let s = stdout(&eval("10"));
    assert!(s.contains("disk=zero") && s.contains(" value="), "{s}");
}

#[test]
fn records_are_deterministic() {
    assert_eq!(stdout(&eval("6")), stdout(&eval("6")));
}

#[test]
fn exit_codes() {
    let o = eval("2");
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("root of unity"));

    let o = run(&["gauss-rhs", "--p", "5", "--a", "1/2", "--b", "5", "--c", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("params_in_pZ"));

    let o = run(&["eval", "--p", "4", "--a", "1", "--b", "1", "--c", "2", "--z", "1"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["eval", "--p", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_checks_pass() {
    for check in ["oi", "kz-ode", "euler", "kummer01", "kummer-inf1", "mpl-ode"] {
        let o = run(&["--records", "verify", "--check", check, "--wmax", "3", "--order", "6"]);
        assert!(o.status.success(), "{check}");
        assert!(stdout(&o).contains("status=ok"));
    }
    let o = run(&["verify", "--check", "oi", "--wmax", "4", "--order", "8"]);
    assert!(o.status.success());
}

#[test]
fn gamma_values() {
    let s = stdout(&run(&["--records", "gamma", "--p", "5", "--prec", "3", "--x", "6"]));
    assert_eq!(s.trim(), "kind=gamma p=5 prec=3 branch=0 x=6 precision=3 value=\"4 + 4*5 + O(5^3)\"");
}

#[test]
fn radius_csv() {
    let mut args = vec!["--records", "radius"];
    args.extend(CORNER);
    args.extend(["--nmax", "30"]);
    let o = run(&args);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert!(lines[0].contains("closed_form_matches=true"));
    assert_eq!(lines[1], "n,ord_term,l_n,big_l_n,m_n,ord_gamma_direct,ord_gamma_closed,partial_s");
    assert_eq!(lines.len(), 32);
    for row in &lines[2..] {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f.len(), 8);
        assert_eq!(f[5], f[6]);
    }
}

#[test]
fn fit_constants_reports_both_constants() {
    let mut args = vec!["--records", "fit-constants"];
    args.extend(CORNER.map(|a| if a == "6" { "8" } else { a }));
    args.extend(["--z", "6,11,16"]);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    for key in ["c1=", "c2=", "residual_valuation=", "r1=", "r2="] {
        assert!(s.contains(key), "{key} in {s}");
    }
}
