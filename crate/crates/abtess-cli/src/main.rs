use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abtess::factor::{det_lu, g_matrix_inverse, inverse, lu_pp, sqrt};
use abtess::leastsq::{lstsq_normal, lstsq_pinv};
use abtess::spectral::{eig, power_method, pseudoinverse, rank, svd};
use abtess::{Params, TMat, Tessarine};
use abtess_cli::bench::{self, BenchConfig};
use abtess_cli::imaging::{self, format_db, psnr_images, WatermarkConfig};
use abtess_cli::matfile::{self, LoadedMatrix};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "abtess",
    about = "Matrix calculus over (αβ)-tessarines: factorizations, solvers, and an image watermarking demo",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Override the algebra parameter alpha from the input file
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Override the algebra parameter beta from the input file
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Machine-readable output format (default: human-readable)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output path for matrix-valued results
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized inputs (benchmark instance, default power seed)
    #[arg(long, global = true, env = "ABTESS_SEED")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix inverse
    Inv {
        matrix: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Principal matrix square root (generalized output)
    Sqrt {
        matrix: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// LU factorization with partial pivoting
    Lu {
        matrix: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Determinant via the pivoted LU route
    Det {
        matrix: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Eigendecomposition (canonical channel pairing)
    Eig {
        matrix: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Power method for the dominant eigenvalue
    Power {
        matrix: PathBuf,
        /// Seed vector file (column matrix); random unit seed if absent
        #[arg(long)]
        x0: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Singular value decomposition
    Svd {
        matrix: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Rank (positive singular values per channel)
    Rank {
        matrix: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Moore-Penrose pseudoinverse
    Pinv {
        matrix: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Least squares projection of y onto the column space of X
    Lstsq {
        design: PathBuf,
        target: PathBuf,
        /// Use the pseudoinverse route (works for rank-deficient designs)
        #[arg(long)]
        via_pinv: bool,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Benchmark the three fixed-point Toeplitz solvers
    LevinsonBench {
        #[arg(long, default_value_t = 120)]
        p_max: usize,
        #[arg(long, default_value_t = 30)]
        step: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Embed a watermark: write the watermarked host A + μ·B
    WmEmbed {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        mark: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        mu: f64,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Extract from a watermarked host: rank-k host estimate and residual
    /// watermark, with PSNR report against originals when provided
    WmExtract {
        #[arg(long)]
        watermarked: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        mu: f64,
        /// Truncation ranks (repeatable)
        #[arg(long = "k", required = true)]
        k_values: Vec<usize>,
        /// Original host for PSNR reporting
        #[arg(long)]
        host: Option<PathBuf>,
        /// Original mark for PSNR reporting
        #[arg(long)]
        mark: Option<PathBuf>,
        /// Output path for the host estimate (first k)
        #[arg(long)]
        host_out: Option<PathBuf>,
        /// Output path for the extracted watermark (first k)
        #[arg(long)]
        mark_out: Option<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Peak signal-to-noise ratio between two images
    Psnr { a: PathBuf, b: PathBuf },
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe (head, less) closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_plain(path: &Path, opts: &CommonOpts) -> Result<TMat> {
    let loaded = matfile::load_matrix(path)?;
    let x = loaded.expect_plain()?;
    apply_overrides(x, opts)
}

fn apply_overrides(x: TMat, opts: &CommonOpts) -> Result<TMat> {
    if opts.alpha.is_none() && opts.beta.is_none() {
        return Ok(x);
    }
    let params = Params::new(
        opts.alpha.unwrap_or_else(|| x.params().alpha()),
        opts.beta.unwrap_or_else(|| x.params().beta()),
    )?;
    let (rows, cols) = (x.rows(), x.cols());
    Ok(TMat::from_fn(params, rows, cols, |i, j| x.entry(i, j)))
}

fn print_scalar(label: &str, value: &Tessarine, fmt: Option<Format>) {
    match fmt {
        None => println!("{value}"),
        Some(Format::Csv) => {
            println!("quantity,a,b,c,d");
            println!("{label},{},{},{},{}", value.a, value.b, value.c, value.d);
        }
        Some(Format::Json) => {
            println!(
                "{}",
                serde_json::json!({label: {"a": value.a, "b": value.b, "c": value.c, "d": value.d}})
            );
        }
    }
}

fn emit_matrix(x: &TMat, opts: &CommonOpts, what: &str) -> Result<()> {
    if let Some(out) = &opts.out {
        matfile::save_matrix(x, out)?;
        println!("{what} written to {}", out.display());
    } else {
        match opts.format {
            Some(Format::Csv) => {
                println!("i,j,a,b,c,d");
                for i in 0..x.rows() {
                    for j in 0..x.cols() {
                        let t = x.entry(i, j);
                        println!("{i},{j},{},{},{},{}", t.a, t.b, t.c, t.d);
                    }
                }
            }
            _ => println!("{}", matfile::matrix_to_json(x)),
        }
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Inv { matrix, opts } => match matfile::load_matrix(&matrix)? {
            LoadedMatrix::Plain(x) => {
                let x = apply_overrides(x, &opts)?;
                let inv = inverse(&x)?;
                emit_matrix(&inv, &opts, "inverse")
            }
            LoadedMatrix::Generalized(g) => {
                let inv = g_matrix_inverse(&g)?;
                if let Some(out) = &opts.out {
                    matfile::save_gmatrix(&inv, out)?;
                    println!("inverse written to {}", out.display());
                } else {
                    println!("{}", matfile::gmatrix_to_json(&inv));
                }
                Ok(())
            }
        },
        Command::Sqrt { matrix, opts } => {
            let x = load_plain(&matrix, &opts)?;
            let root = sqrt(&x)?;
            if let Some(out) = &opts.out {
                if root.max_eps_abs() == 0.0 {
                    matfile::save_matrix(&root.x1, out)?;
                } else {
                    matfile::save_gmatrix(&root, out)?;
                }
                println!("square root written to {}", out.display());
            } else {
                println!("{}", matfile::gmatrix_to_json(&root));
            }
            Ok(())
        }
        Command::Lu { matrix, opts } => {
            let x = load_plain(&matrix, &opts)?;
            let f = lu_pp(&x);
            let gammas: Vec<String> = f.gamma.iter().map(|g| g.to_string()).collect();
            println!("gamma,{}", gammas.join(","));
            if let Some(out) = &opts.out {
                let stem = out.display().to_string();
                matfile::save_matrix(&f.p, Path::new(&format!("{stem}.p.json")))?;
                matfile::save_matrix(&f.l, Path::new(&format!("{stem}.l.json")))?;
                matfile::save_matrix(&f.u, Path::new(&format!("{stem}.u.json")))?;
                println!("factors written to {stem}.{{p,l,u}}.json");
            }
            Ok(())
        }
        Command::Det { matrix, opts } => {
            let x = load_plain(&matrix, &opts)?;
            let det = det_lu(&x);
            print_scalar("det", &det, opts.format);
            Ok(())
        }
        Command::Eig { matrix, opts } => {
            let x = load_plain(&matrix, &opts)?;
            let dec = eig(&x)?;
            match opts.format {
                Some(Format::Json) => {
                    let vals: Vec<_> = dec
                        .lambdas
                        .iter()
                        .map(|l| {
                            serde_json::json!({
                                "a": l.x1.a, "b": l.x1.b, "c": l.x1.c, "d": l.x1.d,
                                "eps_a": l.x2.a, "eps_b": l.x2.b, "eps_c": l.x2.c, "eps_d": l.x2.d,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::json!({"eigenvalues": vals}));
                }
                _ => {
                    println!("index,a,b,c,d,eps_a,eps_b,eps_c,eps_d");
                    for (idx, l) in dec.lambdas.iter().enumerate() {
                        println!(
                            "{idx},{},{},{},{},{},{},{},{}",
                            l.x1.a, l.x1.b, l.x1.c, l.x1.d, l.x2.a, l.x2.b, l.x2.c, l.x2.d
                        );
                    }
                }
            }
            if let Some(out) = &opts.out {
                matfile::save_gmatrix(&dec.u, out)?;
                println!("eigenvector matrix written to {}", out.display());
            }
            Ok(())
        }
        Command::Power {
            matrix,
            x0,
            iters,
            tol,
            opts,
        } => {
            let x = load_plain(&matrix, &opts)?;
            let seed_vec = match x0 {
                Some(path) => {
                    let v = matfile::load_matrix(&path)?.expect_plain()?;
                    apply_overrides(v, &opts)?
                }
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(0));
                    TMat::from_fn(x.params(), x.rows(), 1, |_, _| {
                        Tessarine::new(
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                        )
                    })
                }
            };
            let out = power_method(&x, &seed_vec, iters, tol)?;
            print_scalar("lambda", &out.lambda, opts.format);
            if out.near_degenerate {
                eprintln!("warning: two leading channel eigenvalues are nearly equal; convergence may pair channels arbitrarily");
            }
            eprintln!("iterations: {}", out.iters);
            Ok(())
        }
        Command::Svd { matrix, opts } => {
            let x = load_plain(&matrix, &opts)?;
            let dec = svd(&x, None)?;
            println!("index,a,b,c,d");
            for (idx, s) in dec.sigmas.iter().enumerate() {
                println!("{idx},{},{},{},{}", s.a, s.b, s.c, s.d);
            }
            if let Some(out) = &opts.out {
                let stem = out.display().to_string();
                matfile::save_matrix(&dec.u, Path::new(&format!("{stem}.u.json")))?;
                matfile::save_matrix(&dec.v, Path::new(&format!("{stem}.v.json")))?;
                println!("factors written to {stem}.{{u,v}}.json");
            }
            Ok(())
        }
        Command::Rank { matrix, opts } => {
            let x = load_plain(&matrix, &opts)?;
            println!("{}", rank(&x));
            Ok(())
        }
        Command::Pinv { matrix, opts } => {
            let x = load_plain(&matrix, &opts)?;
            let p = pseudoinverse(&x);
            emit_matrix(&p, &opts, "pseudoinverse")
        }
        Command::Lstsq {
            design,
            target,
            via_pinv,
            opts,
        } => {
            let x = load_plain(&design, &opts)?;
            let y = load_plain(&target, &opts)?;
            let sol = if via_pinv {
                lstsq_pinv(&x, &y)?
            } else {
                lstsq_normal(&x, &y)?
            };
            println!("index,a,b,c,d");
            for i in 0..sol.h.rows() {
                let t = sol.h.entry(i, 0);
                println!("{i},{},{},{},{}", t.a, t.b, t.c, t.d);
            }
            println!("eps,{}", sol.eps);
            if let Some(out) = &opts.out {
                matfile::save_matrix(&sol.y_hat, out)?;
                println!("projection written to {}", out.display());
            }
            Ok(())
        }
        Command::LevinsonBench {
            p_max,
            step,
            repeats,
            opts,
        } => {
            let params = Params::new(opts.alpha.unwrap_or(-2.0), opts.beta.unwrap_or(3.0))?;
            let cfg = BenchConfig {
                p_max,
                step,
                repeats,
                seed: opts.seed.unwrap_or(20260810),
                params,
            };
            let report = bench::run(&cfg)?;
            let worst = report.rows.iter().map(|r| r.max_dev).fold(0.0, f64::max);
            if worst > 1e-7 {
                bail!("cross-method coefficient deviation {worst:.3e} exceeds 1e-7");
            }
            let csv = report.to_csv();
            match &opts.out {
                Some(out) => {
                    std::fs::write(out, &csv).context("writing benchmark CSV")?;
                    println!("benchmark written to {}", out.display());
                }
                None => print!("{csv}"),
            }
            eprintln!("max cross-method coefficient deviation: {worst:.3e}");
            Ok(())
        }
        Command::WmEmbed {
            host,
            mark,
            mu,
            opts,
        } => {
            let host_img = image::open(&host).context("opening host")?.to_rgb8();
            let mark_img = image::open(&mark).context("opening mark")?.to_rgb8();
            let hp = imaging::Planes::from_image(&host_img);
            let mp = imaging::Planes::from_image(&mark_img);
            let ab = imaging::embed(&hp, &mp, mu)?;
            let out = opts
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from("watermarked.png"));
            imaging::planes_to_image(&ab)
                .save(&out)
                .context("writing PNG")?;
            println!("watermarked host written to {}", out.display());
            Ok(())
        }
        Command::WmExtract {
            watermarked,
            mu,
            k_values,
            host,
            mark,
            host_out,
            mark_out,
            opts,
        } => {
            let params = Params::new(opts.alpha.unwrap_or(3.0), opts.beta.unwrap_or(1.0))?;
            let wm_img = image::open(&watermarked)
                .context("opening watermarked")?
                .to_rgb8();
            let wp = imaging::Planes::from_image(&wm_img);
            let cfg = WatermarkConfig {
                mu,
                k_values: k_values.clone(),
            };
            cfg.validate(wp.height as usize, wp.width as usize)?;

            let host_planes = match &host {
                Some(p) => Some(imaging::Planes::from_image(
                    &image::open(p).context("opening host")?.to_rgb8(),
                )),
                None => None,
            };
            let mark_planes = match &mark {
                Some(p) => Some(imaging::Planes::from_image(
                    &image::open(p).context("opening mark")?.to_rgb8(),
                )),
                None => None,
            };

            println!("k,psnr_host,psnr_mark");
            for (idx, &k) in k_values.iter().enumerate() {
                let (ahat, bhat) = imaging::extract(&wp, mu, k, params)?;
                let ph = match &host_planes {
                    Some(hp) => format_db(imaging::psnr_planes(hp, &ahat)?),
                    None => "-".to_string(),
                };
                let pm = match &mark_planes {
                    Some(mp) => format_db(imaging::psnr_planes(mp, &bhat)?),
                    None => "-".to_string(),
                };
                println!("{k},{ph},{pm}");
                if idx == 0 {
                    if let Some(out) = &host_out {
                        imaging::planes_to_image(&ahat)
                            .save(out)
                            .context("writing host estimate")?;
                    }
                    if let Some(out) = &mark_out {
                        imaging::planes_to_image(&bhat)
                            .save(out)
                            .context("writing extracted mark")?;
                    }
                }
            }
            Ok(())
        }
        Command::Psnr { a, b } => {
            let ia = image::open(&a).context("opening first image")?.to_rgb8();
            let ib = image::open(&b).context("opening second image")?.to_rgb8();
            println!("{}", format_db(psnr_images(&ia, &ib)?));
            Ok(())
        }
    }
}
