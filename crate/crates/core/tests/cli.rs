use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use planar_srt::moment_data::MomentGrid;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planar-srt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn coeffs_exports_tables_and_polynomials() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let o = run(&["coeffs", "--max-n", "2", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let coeffs = fs::read_to_string(&out).unwrap();
    assert!(coeffs.starts_with("parity,k,two_i,m,value\n"));
    let poly = fs::read_to_string(dir.path().join("c.polynomials.csv")).unwrap();
    assert!(poly.starts_with("parity,n,two_i,m,value\n"));
    let rows = data_rows(&poly);
    assert!(rows.contains(&"odd,2,0,1,105/2"));
    assert!(rows.contains(&"odd,2,0,2,-231/2"));
    assert!(rows.contains(&"odd,2,2,3,231/8"));

    let o = run(&["coeffs", "--max-n", "0", "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    let poly = fs::read_to_string(dir.path().join("c.polynomials.csv")).unwrap();
    assert!(data_rows(&poly).is_empty());
}

#[test]
fn forward_grids() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("g.csv");
    let base = ["--origin", "-0.5,-0.5", "--h", "0.5", "--np", "3", "--nq", "3", "--umax", "2", "--nu", "4"];
    let forward = |phantom: &str, analytic: bool| {
        let mut args = vec!["forward", "--phantom", phantom, "--out", s(&grid)];
        args.extend_from_slice(&base);
        if analytic {
            args.push("--analytic");
        }
        let o = run(&args);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        MomentGrid::read(&grid).unwrap()
    };
    let g = forward("rho2z3", true);
    assert!(g.values(planar_srt::moment_data::MomentField::Mf).iter().all(|&v| v == 0.0));
    let g = forward("const:3", false);
    assert!(g.values(planar_srt::moment_data::MomentField::Mf).iter().all(|&v| (v - 3.0).abs() < 1e-13));
    assert!(g.values(planar_srt::moment_data::MomentField::A01).iter().all(|&v| v.abs() < 1e-13));
    let g = forward("zsq", false);
    let spec = *g.spec();
    for ip in 0..spec.np {
        for iq in 0..spec.nq {
            for iu in 0..spec.nu {
                let u = spec.u(iu);
                let mf = g.get(planar_srt::moment_data::MomentField::Mf, ip, iq, iu);
                assert!((mf - u * u / 3.0).abs() <= 1e-12);
            }
        }
    }
    let text = fs::read_to_string(&grid).unwrap();
    assert!(text.starts_with("# h="));
    assert!(text.lines().any(|l| l == "p,q,u,Mf,a01"));
}

#[test]
fn forward_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = dir.path().join(name);
        let o = run(&[
            "forward", "--phantom", "gauss", "--origin", "0,0", "--h", "0.25", "--np", "4", "--nq", "4",
            "--umax", "1", "--nu", "5", "--out", s(&out),
        ]);
        assert_eq!(code(&o), 0);
        bytes.push(fs::read(&out).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}

fn slice_errors(csv: &str, exact: impl Fn(f64, f64, f64) -> f64) -> (usize, f64) {
    let mut n = 0;
    let mut worst = 0.0f64;
    for line in data_rows(csv) {
        let v: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
        if v[3].is_nan() {
            continue;
        }
        n += 1;
        worst = worst.max((v[3] - exact(v[0], v[1], v[2])).abs());
    }
    (n, worst)
}

#[test]
fn reconstruct_from_phantom_and_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let pgm = dir.path().join("s.pgm");
    let o = run(&[
        "reconstruct", "--phantom", "rho2z3", "--order", "2", "--slice", "y=3", "--xrange", "-3,3",
        "--zrange", "-2,2", "--step", "0.1", "--min-abs-z", "0.25", "--out", s(&out), "--pgm", s(&pgm),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("# order=2 mode=two-data\nx,y,z,f_rec\n"));
    let (n, worst) = slice_errors(&csv, |x, y, z| (x * x + y * y) * z.powi(3));
    assert_eq!(n, 61 * 36);
    assert!(worst <= 1e-8, "{worst}");
    assert!(fs::read(&pgm).unwrap().starts_with(b"P5"));

    let o = run(&[
        "reconstruct", "--phantom", "zero", "--order", "3", "--slice", "z=0.5", "--xrange", "-1,1",
        "--yrange", "-1,1", "--step", "0.5", "--out", s(&out),
    ]);
    assert_eq!(code(&o), 0);
    let (n, worst) = slice_errors(&fs::read_to_string(&out).unwrap(), |_, _, _| 0.0);
    assert_eq!((n, worst), (25, 0.0));

    let grid = dir.path().join("g.csv");
    let o = run(&[
        "forward", "--phantom", "zsq", "--origin", "-0.5,-0.5", "--h", "0.1", "--np", "11", "--nq", "11",
        "--umax", "1", "--nu", "20", "--out", s(&grid),
    ]);
    assert_eq!(code(&o), 0);
    let o = run(&[
        "reconstruct", "--grid", s(&grid), "--order", "1", "--mode", "even-mirror", "--slice", "y=0",
        "--xrange", "-0.1,0.1", "--zrange", "0.5,1", "--step", "0.1", "--out", s(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (n, worst) = slice_errors(&fs::read_to_string(&out).unwrap(), |_, _, z| z * z);
    assert_eq!(n, 18);
    assert!(worst < 1e-2, "{worst}");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = run(&["verify", "--checks", "", "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    let report = fs::read_to_string(&out).unwrap();
    assert_eq!(report.lines().count(), 1);
    assert!(report.starts_with("identity,p,q,t,n,left,right,abs_residual,rel_residual,pass"));

    let quick = ["--checks", "representation_even,representation_odd", "--phantoms", "rho2z3,poly", "--random-polys", "1"];
    let mut args = vec!["verify", "--out", s(&out)];
    args.extend_from_slice(&quick);
    assert_eq!(code(&run(&args)), 0);
    args.extend_from_slice(&["--perturb-coefficient", "4,2,2,1000001/1000000"]);
    let o = run(&args);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL") || String::from_utf8_lossy(&o.stderr).contains("FAIL"));
    let report = fs::read_to_string(&out).unwrap();
    assert!(report.lines().any(|l| l.ends_with(",false")));
}

#[test]
fn usage_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["coeffs", "--out", s(&out)])), 1);
    let bad_h = run(&[
        "forward", "--phantom", "zsq", "--origin", "0,0", "--h", "-1", "--np", "2", "--nq", "2", "--umax", "1",
        "--nu", "2", "--out", s(&out),
    ]);
    assert_eq!(code(&bad_h), 1);
    assert_eq!(code(&run(&["forward", "--phantom", "nope", "--origin", "0,0", "--h", "1", "--np", "2", "--nq", "2", "--umax", "1", "--nu", "2", "--out", s(&out)])), 1);
    assert_eq!(code(&run(&["verify", "--fd-step", "0", "--out", s(&out)])), 1);
    assert!(!out.exists());
    let missing = dir.path().join("no/such/dir/c.csv");
    assert_eq!(code(&run(&["coeffs", "--max-n", "1", "--out", s(&missing)])), 3);
    assert_eq!(code(&run(&["reconstruct", "--grid", s(&missing), "--order", "1", "--slice", "y=0", "--xrange", "0,1", "--zrange", "0.5,1", "--step", "0.5", "--out", s(&out)])), 3);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}
