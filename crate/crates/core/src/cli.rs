//! The `signed-sts` command line. `run` is kept free of process state so tests can
//! drive it with in-memory streams.
//!
//! Exit codes: 0 on success, 1 when a check or construction answers "no" (a
//! `reason=...` line on stdout says why), 2 on usage, parse and I/O errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::balance::{verify, VerifyKind};
use crate::builders::generate_seeded;
use crate::error::Error;
use crate::format::{parse, serialize, to_json, Document};
use crate::search::{exhaustive_st, trade_search, SearchBudget, SearchStatus};
use crate::spectrum::{admissibility, admissible_spectrum, s_max};
use crate::trades::{
    appendix_table, appendix_trade8, pair_trade_seeded, remain_trade, triple_trade_seeded, PairTradeMode,
    PartitionIntoQuads, APPENDIX_VOLUMES,
};

pub const SEED_ENV: &str = "SIGNED_STS_SEED";

#[derive(Parser, Debug)]
#[command(name = "signed-sts", version, about = "Signed Steiner triple systems: build, verify, search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a verified ST(V, S).
    Gen {
        v: usize,
        s: usize,
        /// Defaults to $SIGNED_STS_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
        /// Write here instead of stdout; the file appears only if everything succeeded.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a design, trade, large set or factorization file.
    Verify { file: PathBuf },
    /// Print the admissible values of s for order V.
    Spectrum { v: usize },
    /// Build a trade of the given volume.
    Trade {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        vol: usize,
        /// Avoid the triples inside the consecutive quads {1..4}, {5..8}, ...
        #[arg(long)]
        avoid_parts: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exhaustive search oracles.
    Search {
        #[command(subcommand)]
        target: SearchTarget,
    },
    /// The stored T(2,3,8) trades: the whole table, or one column as a trade file.
    Appendix {
        #[arg(long)]
        vol: Option<usize>,
    },
    /// Run built-in consistency checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Subcommand, Debug)]
enum SearchTarget {
    /// Decide whether an ST(V, S) exists.
    St {
        v: usize,
        s: usize,
        /// Node limit.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => fail(&e, out, err),
    }
}

fn reason_name(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn fail(e: &Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let code = match e {
        Error::Io { .. } | Error::Parse { .. } => 2,
        _ => 1,
    };
    let _ = writeln!(out, "reason={} {e}", reason_name(e));
    let _ = writeln!(err, "error: {e}");
    code
}

fn env_seed(seed: Option<u64>) -> u64 {
    seed.or_else(|| std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok())).unwrap_or(0)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Gen { v, s, seed, json, out: path } => gen(v, s, env_seed(seed), json, path.as_deref(), out, err),
        Command::Verify { file } => verify_file(&file, out),
        Command::Spectrum { v } => {
            let _ = writeln!(out, "{}", admissible_spectrum(v));
            Ok(0)
        }
        Command::Trade { t, k, v, vol, avoid_parts, seed } => trade(t, k, v, vol, avoid_parts, env_seed(seed), out),
        Command::Search { target: SearchTarget::St { v, s, budget, time, seed } } => {
            let mut b = SearchBudget::nodes(budget).with_seed(env_seed(seed));
            if let Some(secs) = time {
                b = b.with_time(Duration::from_secs(secs));
            }
            let outcome = exhaustive_st(v, s, b);
            let _ = writeln!(out, "{outcome}");
            match &outcome.status {
                SearchStatus::Found(d) => {
                    let _ = write!(out, "{}", serialize(&Document::Design(d.clone())));
                    Ok(0)
                }
                other => {
                    let _ = writeln!(out, "reason={}", other.name());
                    Ok(1)
                }
            }
        }
        Command::Appendix { vol } => appendix(vol, out),
        Command::Selftest { level } => Ok(selftest(level, out)),
    }
}

fn gen(
    v: usize,
    s: usize,
    seed: u64,
    json: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Error> {
    let (design, cert) = generate_seeded(v, s, seed)?;
    let text = serialize(&Document::Design(design.clone()));
    // Check the bytes about to be written, not just the in-memory design.
    let Document::Design(reread) = parse(&text)? else { unreachable!("design text parses as a design") };
    let report = verify(&reread, VerifyKind::Design { expected_s: Some(s) });
    if !report.ok || reread != design {
        return Err(Error::VerificationFailed { v, s, detail: report.to_string() });
    }
    let body = if json {
        let mut doc = to_json(&Document::Design(design));
        doc["certificate"] = serde_json::to_value(&cert).expect("certificate serializes");
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
    } else {
        text
    };
    let _ = writeln!(err, "route={:?} seed={seed} {}", cert.route, cert.report);
    emit(&body, path, out)?;
    Ok(0)
}

/// Writes to `path` through a temporary file in the same directory, or to `out`.
fn emit(body: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Error> {
    let Some(path) = path else {
        let _ = out.write_all(body.as_bytes());
        return Ok(());
    };
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| io(std::io::Error::other("not a file path")))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, body).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

fn verify_file(file: &Path, out: &mut dyn Write) -> Result<i32, Error> {
    let text = std::fs::read_to_string(file).map_err(|source| Error::Io { path: file.to_path_buf(), source })?;
    let report = match parse(&text)? {
        Document::Design(set) => verify(&set, VerifyKind::Design { expected_s: None }),
        Document::Trade { t, set } => verify(&set, VerifyKind::Trade { t }),
        Document::LargeSet(ls) => {
            let _ = writeln!(out, "ok large set n={} classes={}", ls.order(), ls.classes().len());
            return Ok(0);
        }
        Document::Factorization(f) => {
            let _ = writeln!(out, "ok factorization v={} factors={}", f.ground().order(), f.len());
            return Ok(0);
        }
    };
    let _ = writeln!(out, "{report}");
    if report.ok {
        Ok(0)
    } else {
        let _ = writeln!(out, "reason=VerificationFailed");
        Ok(1)
    }
}

fn trade(t: usize, k: usize, v: usize, vol: usize, avoid_parts: bool, seed: u64, out: &mut dyn Write) -> Result<i32, Error> {
    if t != 2 || !(2..=3).contains(&k) {
        return Err(Error::Unsupported(format!("trades with t={t}, k={k}; only t=2 with k=2 or k=3")));
    }
    let set = match (k, v % 4) {
        (2, _) if !avoid_parts => pair_trade_seeded(v, vol, &PairTradeMode::Any, seed)?,
        (3, 0) => remain_trade(&PartitionIntoQuads::consecutive(v)?, vol)?,
        (3, 2) if !avoid_parts => triple_trade_seeded(v, vol, seed)?,
        (3, _) if !avoid_parts && v <= 9 => {
            let outcome = trade_search(v, 2, 3, vol, &[], SearchBudget::default().with_seed(seed));
            match outcome.found() {
                Some(found) => found.clone(),
                None => {
                    let _ = writeln!(out, "{outcome}\nreason={}", outcome.status.name());
                    return Ok(1);
                }
            }
        }
        _ => return Err(Error::Unsupported(format!("k={k} v={v} avoid_parts={avoid_parts}"))),
    };
    let report = verify(&set, VerifyKind::Trade { t: 2 });
    if !report.ok {
        return Err(Error::VerificationFailed { v, s: vol, detail: report.to_string() });
    }
    let _ = write!(out, "{}", serialize(&Document::Trade { t, set }));
    Ok(0)
}

fn appendix(vol: Option<usize>, out: &mut dyn Write) -> Result<i32, Error> {
    if let Some(vol) = vol {
        let set = appendix_trade8(vol)?;
        let _ = write!(out, "{}", serialize(&Document::Trade { t: 2, set }));
        return Ok(0);
    }
    let head: Vec<String> = APPENDIX_VOLUMES.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "block,{}", head.join(","));
    for (block, signs) in appendix_table() {
        let cells: Vec<String> = signs.iter().map(|s| s.map(|s| s.symbol().to_string()).unwrap_or_default()).collect();
        let _ = writeln!(out, "{block},{}", cells.join(","));
    }
    Ok(0)
}

fn selftest(level: Level, out: &mut dyn Write) -> i32 {
    let mut failed = 0;
    let mut check = |name: &str, result: Result<(), String>| {
        match result {
            Ok(()) => {
                let _ = writeln!(out, "PASS {name}");
            }
            Err(detail) => {
                failed += 1;
                let _ = writeln!(out, "FAIL {name}: {detail}");
            }
        }
    };
    let orders: &[usize] = match level {
        Level::Quick => &[7, 9, 13],
        Level::Full => &[1, 3, 7, 9, 13, 15, 19],
    };
    for &v in orders {
        check(&format!("every admissible s builds for v={v}"), sweep(v));
    }
    check("spectrum 9 reads 0..30,32,36", {
        let text = admissible_spectrum(9).to_string();
        if text == "0..30,32,36" { Ok(()) } else { Err(text) }
    });
    check("appendix columns are trades of their labeled volumes", appendix_check());
    check("design text round trips", round_trip());
    if level == Level::Full {
        check("gen refuses exactly the inadmissible s for v <= 19", refusals());
        for s in [1, 4, 7, 9, 10, 11, 12, 13] {
            check(&format!("search st 7 {s} is exhausted"), {
                let o = exhaustive_st(7, s, SearchBudget::unlimited());
                if o.is_exhausted() { Ok(()) } else { Err(o.to_string()) }
            });
        }
    } else {
        check("search st 7 4 is exhausted", {
            let o = exhaustive_st(7, 4, SearchBudget::unlimited());
            if o.is_exhausted() { Ok(()) } else { Err(o.to_string()) }
        });
    }
    i32::from(failed > 0)
}

fn sweep(v: usize) -> Result<(), String> {
    for s in admissible_spectrum(v).iter() {
        let (d, _) = generate_seeded(v, s, 0).map_err(|e| format!("s={s}: {e}"))?;
        if d.s() != s {
            return Err(format!("s={s}: built s={}", d.s()));
        }
    }
    Ok(())
}

fn refusals() -> Result<(), String> {
    for v in 0..=19 {
        let top = s_max(v).unwrap_or(0) + 2;
        for s in 0..=top {
            let admissible = admissibility(v, s).is_ok();
            let built = generate_seeded(v, s, 0).is_ok();
            if admissible != built {
                return Err(format!("v={v} s={s}: admissible={admissible} built={built}"));
            }
        }
    }
    Ok(())
}

fn appendix_check() -> Result<(), String> {
    for &vol in &APPENDIX_VOLUMES {
        let set = appendix_trade8(vol).map_err(|e| e.to_string())?;
        let r = verify(&set, VerifyKind::Trade { t: 2 });
        if !r.ok || r.volume() != vol {
            return Err(format!("column {vol}: {r}"));
        }
    }
    Ok(())
}

fn round_trip() -> Result<(), String> {
    let (d, _) = generate_seeded(13, 50, 0).map_err(|e| e.to_string())?;
    let doc = Document::Design(d);
    let back = parse(&serialize(&doc)).map_err(|e| e.to_string())?;
    if back == doc { Ok(()) } else { Err("parsed design differs".into()) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("signed-sts").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn gen_and_spectrum() {
        let (code, text) = call(&["gen", "7", "2"]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), 12);
        assert_eq!(text.lines().filter(|l| l.starts_with('-')).count(), 2);
        assert_eq!(call(&["spectrum", "9"]), (0, "0..30,32,36\n".into()));
        assert_eq!(call(&["gen", "3", "0"]), (0, "SSTS v=3 s=0\n+ 1 2 3\n".into()));
    }

    #[test]
    fn refusals_carry_a_reason() {
        let (code, text) = call(&["gen", "7", "1"]);
        assert_eq!(code, 1);
        assert!(text.starts_with("reason=NotAdmissible"), "{text}");
        let (code, text) = call(&["search", "st", "7", "4"]);
        assert_eq!(code, 1);
        assert!(text.contains("reason=Exhausted"), "{text}");
        assert_eq!(call(&["gen", "x"]).0, 2);
    }

    #[test]
    fn verify_round_trip_and_atomic_out() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.txt");
        let p = path.to_str().unwrap();
        assert_eq!(call(&["gen", "13", "20", "--out", p]).0, 0);
        let (code, text) = call(&["verify", p]);
        assert_eq!(code, 0, "{text}");
        assert!(text.starts_with("ok design v=13 s=20"));

        let bad = dir.path().join("never.txt");
        assert_eq!(call(&["gen", "13", "127", "--out", bad.to_str().unwrap()]).0, 1);
        assert!(!bad.exists());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);

        std::fs::write(&path, "SSTS v=3 s=0\n+ 1 2 4\n").unwrap();
        assert_eq!(call(&["verify", p]).0, 2);
        std::fs::write(&path, "SSTS v=4 s=0\n+ 1 2 4\n").unwrap();
        let (code, text) = call(&["verify", p]);
        assert_eq!(code, 1);
        assert!(text.contains("reason=VerificationFailed"));
        assert_eq!(call(&["verify", dir.path().join("missing").to_str().unwrap()]).0, 2);
    }

    #[test]
    fn trades_and_appendix() {
        let (code, text) = call(&["appendix", "--vol", "4"]);
        assert_eq!(code, 0);
        assert!(text.starts_with("TRADE t=2 k=3 v=8 vol=4\n+ 2 4 8\n"), "{text}");
        assert!(text.ends_with("- 3 6 7\n"));
        assert_eq!(text.lines().count(), 9);
        let (code, table) = call(&["appendix"]);
        assert_eq!(code, 0);
        assert_eq!(table.lines().count(), 57);
        assert_eq!(call(&["trade", "--t", "2", "--k", "3", "--v", "12", "--vol", "50", "--avoid-parts"]).0, 0);
        assert_eq!(call(&["trade", "--t", "2", "--k", "2", "--v", "9", "--vol", "17"]).0, 1);
        assert_eq!(call(&["trade", "--t", "2", "--k", "3", "--v", "7", "--vol", "4"]).0, 0);
    }
}
