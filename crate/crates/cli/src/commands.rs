//! Subcommand definitions and dispatch for the `superfiltr` binary.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use superfiltr::characters::{decompose_good, CharacterRecord};
use superfiltr::gl_modules::{check_good_filtration, check_weyl_filtration, exterior_power, symmetric_power};
use superfiltr::supermatrix::SuperMatrixRecord;
use superfiltr::weights::{is_steinberg_weight, marko_irreducible, steinberg_weight};
use superfiltr::{BlockShape, CharacterError, FiltrationBasis, SuperMatrix};

use crate::acceptance::{self, Options};
use crate::config::ScanConfig;
use crate::{scan, thread_pool};

#[derive(Parser)]
#[command(
    name = "superfiltr",
    version,
    about = "Good and Weyl filtrations for GL(m|n) supermodules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum KindArg {
    Exterior,
    Symmetric,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum BasisArg {
    Induced,
    Even,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check Λ^k(W) or S^k(W) for a good (default) or Weyl filtration; prints JSON.
    Check {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        weyl: bool,
    },
    /// Evaluate a TOML grid and print one TSV row per point.
    Scan {
        #[arg(long)]
        grid: PathBuf,
    },
    /// Compare the divisibility criterion with the root pairings over an (s, t) box.
    Steinberg {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        smin: i64,
        #[arg(long, allow_hyphen_values = true)]
        smax: i64,
        #[arg(long, allow_hyphen_values = true)]
        tmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        tmax: i64,
    },
    /// Berezinian of a supermatrix given as JSON.
    Ber {
        #[arg(long)]
        file: PathBuf,
    },
    /// Decompose a character (JSON) into induced or even characters; prints TSV.
    Decompose {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "induced")]
        basis: BasisArg,
    },
    /// Run the acceptance suite.
    Acceptance {
        /// Criterion number or name; repeatable.
        #[arg(long)]
        only: Vec<String>,
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
        /// Negate one odd operator before the structural check.
        #[arg(long)]
        mutate: bool,
        #[arg(long)]
        json: bool,
    },
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Execute one subcommand, writing reports to `out` and diagnostics to `err`.
/// `Ok(false)` means a rigorous negative answer or disagreement.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<bool> {
    match cli.command {
        Command::Check { kind, m, n, p, k, weyl } => {
            let shape = BlockShape::new(m, n, p)?;
            let module = match kind {
                KindArg::Exterior => exterior_power(shape, k)?,
                KindArg::Symmetric => symmetric_power(shape, k)?,
            };
            let verdict = if weyl {
                check_weyl_filtration(&module)?
            } else {
                check_good_filtration(&module)?
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&verdict)?)?;
            Ok(verdict.answer.is_yes())
        }
        Command::Scan { grid } => {
            let cfg = ScanConfig::parse(&read(&grid)?)?;
            let report = thread_pool()?.install(|| scan::run_scan(&cfg))?;
            write!(out, "{}", report.to_tsv())?;
            Ok(report.disagreements() == 0)
        }
        Command::Steinberg {
            m,
            n,
            p,
            r,
            smin,
            smax,
            tmin,
            tmax,
        } => {
            if smin > smax || tmin > tmax {
                bail!("empty (s, t) range");
            }
            let shape = BlockShape::new(m, n, p)?;
            writeln!(out, "s\tt\tweight\tcriterion\tpairings\tstatus")?;
            let mut all_agree = true;
            for s in smin..=smax {
                for t in tmin..=tmax {
                    let pi = steinberg_weight(shape, r, s, t)?;
                    let a = is_steinberg_weight(shape, r, s, t)?;
                    let b = marko_irreducible(&pi)?;
                    all_agree &= a == b;
                    writeln!(
                        out,
                        "{s}\t{t}\t{pi}\t{a}\t{b}\t{}",
                        if a == b { "AGREE" } else { "DISAGREE" }
                    )?;
                }
            }
            Ok(all_agree)
        }
        Command::Ber { file } => {
            let record: SuperMatrixRecord = serde_json::from_str(&read(&file)?)?;
            let mat = SuperMatrix::try_from(record)?;
            let ber = mat.berezinian()?;
            writeln!(
                out,
                "{}",
                serde_json::json!({ "berezinian": ber.record(), "display": ber.to_string() })
            )?;
            Ok(true)
        }
        Command::Decompose { file, p, basis } => {
            let record: CharacterRecord = serde_json::from_str(&read(&file)?)?;
            let ch = record.into_character(p)?;
            let basis = match basis {
                BasisArg::Induced => FiltrationBasis::Induced,
                BasisArg::Even => FiltrationBasis::Even,
            };
            match decompose_good(&ch, basis) {
                Ok(d) => {
                    write!(out, "{}", d.to_tsv())?;
                    Ok(!d.has_negative())
                }
                Err(CharacterError::NotFiltrationCharacter(w)) => {
                    writeln!(err, "not a filtration character: leading weight {w} is not dominant")?;
                    Ok(false)
                }
                Err(CharacterError::IterationCapExceeded { cap, partial }) => {
                    writeln!(err, "no decomposition after {cap} steps; partial table follows")?;
                    write!(out, "{}", partial.to_tsv())?;
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Acceptance {
            only,
            seed,
            mutate,
            json,
        } => {
            let mut ids = Vec::new();
            for query in &only {
                match acceptance::select(query) {
                    Some(id) => ids.push(id),
                    None => bail!("unknown or ambiguous criterion {query:?}"),
                }
            }
            if ids.is_empty() {
                ids = (1..=acceptance::NAMES.len()).collect();
            }
            let opts = Options {
                seed,
                mutate_odd_sign: mutate,
            };
            let pool = thread_pool()?;
            let mut results = Vec::new();
            for id in ids {
                let r = pool.install(|| acceptance::run_criterion(id, &opts));
                if !json {
                    writeln!(out, "{}", r.line())?;
                }
                results.push(r);
            }
            let passed = results.iter().filter(|r| r.passed).count();
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&results)?)?;
            } else {
                writeln!(out, "{passed}/{} criteria passed (seed {seed})", results.len())?;
            }
            Ok(passed == results.len())
        }
    }
}

/// 0 for a clean run, 2 for a rigorous negative answer, 1 for operational errors.
pub fn exit_code(result: &anyhow::Result<bool>) -> u8 {
    match result {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(_) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    fn exec(args: &[&str]) -> (u8, String, String) {
        let mut argv = vec!["superfiltr"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(argv).expect("arguments parse");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let result = run(cli, &mut out, &mut err);
        (
            exit_code(&result),
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_tmp(name: &str, contents: &str) -> String {
        let dir = std::env::temp_dir().join(format!("superfiltr-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_str().unwrap().to_string()
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn check_exit_codes() {
        let (code, out, _) = exec(&[
            "check", "--kind", "exterior", "--m", "1", "--n", "1", "--p", "3", "--k", "2",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["answer"], "Yes_CharacterLevel");
        assert_eq!(v["filtration"], "good");

        let (code, out, _) = exec(&[
            "check", "--kind", "exterior", "--m", "1", "--n", "2", "--p", "3", "--k", "2",
        ]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["answer"], "No_NotInjectiveOverU");

        let (code, _, _) = exec(&[
            "check",
            "--kind",
            "symmetric",
            "--m",
            "1",
            "--n",
            "1",
            "--p",
            "3",
            "--k",
            "2",
            "--weyl",
        ]);
        assert_eq!(code, 0);

        let (code, _, _) = exec(&[
            "check", "--kind", "exterior", "--m", "1", "--n", "1", "--p", "2", "--k", "1",
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn scan_exit_codes_and_rows() {
        let ext = write_tmp(
            "scan_ext.toml",
            "shapes = [[1, 1]]\nprimes = [3]\nk_range = [0, 8]\nkinds = [\"exterior\"]\nmode = \"good\"\n",
        );
        let (code, out, _) = exec(&["scan", "--grid", &ext]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 10);
        assert!(out.lines().skip(1).all(|l| l.ends_with("\tAGREE")));

        let sym = write_tmp(
            "scan_sym.toml",
            "shapes = [[1, 1]]\nprimes = [3]\nk_range = [0, 8]\nkinds = [\"symmetric\"]\nmode = \"good\"\n",
        );
        let (code, out, _) = exec(&["scan", "--grid", &sym]);
        assert_eq!(code, 2);
        assert_eq!(out.matches("DISAGREE").count(), 6);

        let empty = write_tmp(
            "scan_empty.toml",
            "shapes = [[1, 1]]\nprimes = [3]\nk_range = [4, 1]\nkinds = [\"symmetric\"]\n",
        );
        let (code, _, _) = exec(&["scan", "--grid", &empty]);
        assert_eq!(code, 1);

        let (code, _, _) = exec(&["scan", "--grid", "/nonexistent/grid.toml"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn steinberg_table() {
        let (code, out, _) = exec(&[
            "steinberg",
            "--m",
            "2",
            "--n",
            "1",
            "--p",
            "3",
            "--r",
            "1",
            "--smin",
            "-1",
            "--smax",
            "1",
            "--tmin",
            "0",
            "--tmax",
            "0",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
        // (p+1)/2·2 + (p-1)/2 + s + t = 5 + s: divisible by 3 only at s = 1
        assert!(out.lines().nth(3).unwrap().contains("\tfalse\tfalse\tAGREE"));
        assert!(out.lines().nth(1).unwrap().contains("\ttrue\ttrue\tAGREE"));

        let (code, _, _) = exec(&[
            "steinberg",
            "--m",
            "1",
            "--n",
            "1",
            "--p",
            "3",
            "--r",
            "1",
            "--smin",
            "2",
            "--smax",
            "1",
            "--tmin",
            "0",
            "--tmax",
            "0",
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn berezinian_of_small_matrix() {
        let file = write_tmp(
            "ber.json",
            r#"{"m":1,"n":1,"symbols":2,
                "c00":[[[[[],"2"]]]],
                "c01":[[[[[1],"1"]]]],
                "c10":[[[[[2],"1"]]]],
                "c11":[[[[[],"3"]]]]}"#,
        );
        let (code, out, _) = exec(&["ber", "--file", &file]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        // (2 - θ1 θ2 / 3) / 3
        assert_eq!(v["berezinian"], serde_json::json!([[[], "2/3"], [[1, 2], "-1/9"]]));
    }

    #[test]
    fn decompose_exit_codes() {
        let induced = r#"{"shape":[1,1],"terms":[{"exp":[0,0],"coef":1},{"exp":[-1,1],"coef":1}]}"#;
        let good = write_tmp("ch_good.json", induced);
        let (code, out, _) = exec(&["decompose", "--file", &good, "--p", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "weight\tmultiplicity\n(0|0)\t1\n");

        let (code, out, _) = exec(&["decompose", "--file", &good, "--p", "3", "--basis", "even"]);
        assert_eq!(code, 0);
        assert!(out.contains("(-1|1)\t1"));

        let not_dominant = write_tmp("ch_nd.json", r#"{"shape":[2,1],"terms":[{"exp":[0,1,0],"coef":1}]}"#);
        let (code, _, err) = exec(&["decompose", "--file", &not_dominant, "--p", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("not dominant"));

        // ch H^0(1|0) - ch H^0(0|1) = x1 - x1^{-1} x2^2
        let negative = write_tmp(
            "ch_neg.json",
            r#"{"shape":[1,1],"terms":[{"exp":[1,0],"coef":1},{"exp":[-1,2],"coef":-1}]}"#,
        );
        let (code, out, _) = exec(&["decompose", "--file", &negative, "--p", "3"]);
        assert_eq!(code, 2);
        assert!(out.contains("(0|1)\t-1"));

        let malformed = write_tmp("ch_bad.json", r#"{"shape":[1,1],"terms":[{"exp":[0],"coef":1}]}"#);
        let (code, _, _) = exec(&["decompose", "--file", &malformed, "--p", "3"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn acceptance_filtering_and_mutation() {
        let (code, out, _) = exec(&["acceptance", "--only", "steinberg"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS  9 steinberg_consistency"));
        assert_eq!(out.lines().count(), 2);

        let (code, out, _) = exec(&["acceptance", "--only", "13", "--mutate"]);
        assert_eq!(code, 2);
        assert!(out.starts_with("FAIL 13 structural_soundness"));
        assert!(out.contains("bracket relation fails"));

        let (code, _, _) = exec(&["acceptance", "--only", "no_such_item"]);
        assert_eq!(code, 1);

        let (code, out, _) = exec(&["acceptance", "--only", "8", "--seed", "5", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["seed"], 13);
        assert_eq!(v[0]["passed"], true);
    }
}
