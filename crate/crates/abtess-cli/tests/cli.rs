//! End-to-end tests of the `abtess` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use abtess::{Params, TMat, Tessarine};
use abtess_cli::matfile;
use image::{Rgb, RgbImage};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abtess"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn write_identity(dir: &Path, n: usize, alpha: f64, beta: f64) -> PathBuf {
    let p = Params::new(alpha, beta).unwrap();
    let path = dir.join("identity.json");
    matfile::save_matrix(&TMat::identity(p, n), &path).unwrap();
    path
}

#[test]
fn det_of_identity_prints_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_identity(dir.path(), 3, -1.0, 1.0);
    let out = run(&["det", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1+0i+0j+0k");
}

#[test]
fn missing_plane_reports_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"alpha":-1,"beta":1,"rows":1,"cols":1,"a":[[1]],"b":[[0]],"c":[[0]]}"#,
    )
    .unwrap();
    let out = run(&["det", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains('d'), "stderr: {}", stderr(&out));
}

#[test]
fn zero_alpha_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"alpha":0,"beta":1,"rows":1,"cols":1,"a":[[1]],"b":[[0]],"c":[[0]],"d":[[0]]}"#,
    )
    .unwrap();
    let out = run(&["det", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("alpha"), "stderr: {}", stderr(&out));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inverse_of_zero_divisor_names_the_channel() {
    let dir = tempfile::tempdir().unwrap();
    let p = Params::new(-1.0, 1.0).unwrap();
    let (w1, _) = abtess::special_units(p);
    let x = TMat::identity(p, 2).scale_tess(&w1);
    let path = dir.path().join("w1.json");
    matfile::save_matrix(&x, &path).unwrap();
    let out = run(&["inv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("channel d"), "stderr: {msg}");
}

fn case1_file(dir: &Path, alpha: f64, beta: f64) -> PathBuf {
    let p = Params::new(alpha, beta).unwrap();
    let t = Tessarine::new;
    let x1 = t(17.0, 1.5, 1.2, 0.5);
    let x2 = t(-0.1, 0.2, 0.03, -0.04);
    let x3 = t(0.05, 0.0, 0.07, -0.1);
    let x4 = t(0.05, 0.0, 0.1, -0.2);
    let rows = [[x1, x2, x3], [x2, x1, x4], [x3, x4, x1]];
    let x = TMat::from_fn(p, 3, 3, |i, j| rows[i][j]);
    let path = dir.join("case1.json");
    matfile::save_matrix(&x, &path).unwrap();
    path
}

#[test]
fn power_reproduces_the_golden_value() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = case1_file(dir.path(), 14.0, 2.0);
    // golden seed vector y₂
    let p = Params::new(14.0, 2.0).unwrap();
    let t = Tessarine::new;
    let y2 = TMat::column_vector(
        p,
        &[
            t(0.3252, -1.7115, 0.3192, -0.0301),
            t(-0.7549, -0.1022, 0.3129, -0.1649),
            t(1.3703, -0.2414, -0.8649, 0.6277),
        ],
    );
    let seed_path = dir.path().join("x02.json");
    matfile::save_matrix(&y2, &seed_path).unwrap();

    let out = run(&[
        "power",
        matrix.to_str().unwrap(),
        "--x0",
        seed_path.to_str().unwrap(),
        "--iters",
        "100",
        "--tol",
        "0",
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let line = text.lines().nth(1).expect("value row");
    let fields: Vec<f64> = line
        .split(',')
        .skip(1)
        .map(|v| v.parse().unwrap())
        .collect();
    let expect = [18.3227, 1.5082, 1.1252, 0.4873];
    for (got, want) in fields.iter().zip(expect) {
        assert!((got - want).abs() < 1e-3, "got {got}, want {want}");
    }
}

#[test]
fn cli_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = case1_file(dir.path(), 14.0, 2.0);
    let a = run(&["eig", matrix.to_str().unwrap(), "--format", "csv"]);
    let b = run(&["eig", matrix.to_str().unwrap(), "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn inverse_round_trips_through_out_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = Params::new(-2.0, 3.0).unwrap();
    let x = TMat::from_fn(p, 2, 2, |i, j| {
        Tessarine::new(
            1.0 + (i * 2 + j) as f64,
            0.25,
            -0.5,
            (i as f64) - (j as f64),
        )
    });
    let input = dir.path().join("x.json");
    matfile::save_matrix(&x, &input).unwrap();
    let out_path = dir.path().join("inv.json");
    let out = run(&[
        "inv",
        input.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let inv = matfile::load_matrix(&out_path)
        .unwrap()
        .expect_plain()
        .unwrap();
    let prod = x.mul(&inv).unwrap();
    let eye = TMat::identity(p, 2);
    assert!(prod.sub(&eye).unwrap().max_abs() < 1e-10);
}

#[test]
fn psnr_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let a = RgbImage::from_pixel(16, 16, Rgb([10, 200, 30]));
    let pa = dir.path().join("a.png");
    a.save(&pa).unwrap();
    let out = run(&["psnr", pa.to_str().unwrap(), pa.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "inf");

    // one channel off by 255 on every pixel: 10·log10(3) ≈ 4.7712 dB
    let b = RgbImage::from_pixel(16, 16, Rgb([255, 200, 30]));
    let c = RgbImage::from_pixel(16, 16, Rgb([0, 200, 30]));
    let pb = dir.path().join("b.png");
    let pc = dir.path().join("c.png");
    b.save(&pb).unwrap();
    c.save(&pc).unwrap();
    let out = run(&["psnr", pb.to_str().unwrap(), pc.to_str().unwrap()]);
    assert!(out.status.success());
    let val: f64 = stdout(&out).trim().parse().unwrap();
    assert!((val - 4.7712).abs() < 1e-3);

    // dimension mismatch
    let d = RgbImage::new(8, 8);
    let pd = dir.path().join("d.png");
    d.save(&pd).unwrap();
    let out = run(&["psnr", pa.to_str().unwrap(), pd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn watermark_embed_extract_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let mut host = RgbImage::new(48, 48);
    let mut mark = RgbImage::new(48, 48);
    // structured patterns plus hash noise keep the encoding full rank
    let hash = |i: usize, salt: usize| -> u8 {
        let mut v = (i as u64).wrapping_mul(0x9e3779b97f4a7c15) ^ (salt as u64);
        v ^= v >> 29;
        v = v.wrapping_mul(0xbf58476d1ce4e5b9);
        (v >> 56) as u8
    };
    for (i, px) in host.pixels_mut().enumerate() {
        px.0 = [
            ((i * 7 % 200) as u8).wrapping_add(hash(i, 1) / 4),
            ((i * 3 % 200) as u8).wrapping_add(hash(i, 2) / 4),
            ((i % 200) as u8).wrapping_add(hash(i, 3) / 4),
        ];
    }
    for (i, px) in mark.pixels_mut().enumerate() {
        px.0 = [
            ((255 - i % 200) as u8).wrapping_sub(hash(i, 4) / 4),
            ((i * 5 % 200) as u8).wrapping_add(hash(i, 5) / 4),
            128u8.wrapping_add(hash(i, 6) / 8),
        ];
    }
    let hp = dir.path().join("host.png");
    let mp = dir.path().join("mark.png");
    host.save(&hp).unwrap();
    mark.save(&mp).unwrap();

    let wm = dir.path().join("wm.png");
    let out = run(&[
        "wm-embed",
        "--host",
        hp.to_str().unwrap(),
        "--mark",
        mp.to_str().unwrap(),
        "--mu",
        "0.1",
        "--out",
        wm.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(wm.exists());

    let hout = dir.path().join("host_hat.png");
    let mout = dir.path().join("mark_hat.png");
    let out = run(&[
        "wm-extract",
        "--watermarked",
        wm.to_str().unwrap(),
        "--mu",
        "0.1",
        "--k",
        "16",
        "--k",
        "40",
        "--host",
        hp.to_str().unwrap(),
        "--mark",
        mp.to_str().unwrap(),
        "--host-out",
        hout.to_str().unwrap(),
        "--mark-out",
        mout.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("k,psnr_host,psnr_mark"));
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    // more singular values → better host reconstruction
    let psnr_at = |row: &str| -> f64 { row.split(',').nth(1).unwrap().parse().unwrap() };
    assert!(psnr_at(rows[1]) > psnr_at(rows[0]));
    assert!(hout.exists() && mout.exists());
}

#[test]
fn levinson_bench_csv_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    for path in [&csv_a, &csv_b] {
        let out = run(&[
            "levinson-bench",
            "--p-max",
            "40",
            "--step",
            "10",
            "--repeats",
            "1",
            "--seed",
            "99",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
    }
    let a = std::fs::read_to_string(&csv_a).unwrap();
    let b = std::fs::read_to_string(&csv_b).unwrap();
    let parse = |text: &str| -> Vec<Vec<String>> {
        text.lines()
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect()
    };
    let (ra, rb) = (parse(&a), parse(&b));
    assert_eq!(ra[0], vec!["i", "t_inverse", "t_pinv", "t_sequential"]);
    assert_eq!(ra.len(), 5); // header + 4 sizes
    assert_eq!(ra.len(), rb.len());
    // the sampled sizes (everything except wall times) are identical
    for (rowa, rowb) in ra.iter().zip(&rb).skip(1) {
        assert_eq!(rowa[0], rowb[0]);
    }

    // guard: oversized runs are rejected
    let out = run(&["levinson-bench", "--p-max", "600", "--step", "100"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seed_env_fallback_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = case1_file(dir.path(), 14.0, 2.0);
    // random seed vector: same env seed → same reported eigenvalue
    let run_with_env = || {
        let out = bin()
            .args([
                "power",
                matrix.to_str().unwrap(),
                "--iters",
                "40",
                "--format",
                "csv",
            ])
            .env("ABTESS_SEED", "1234")
            .output()
            .unwrap();
        assert!(out.status.success());
        stdout(&out)
    };
    assert_eq!(run_with_env(), run_with_env());
}
