use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use qlp_core::cyclotomic::{Sign, norm_order, norm_product_complement, norm_product_psd, norm_to_u128, orbit_frequencies};
use qlp_core::feasibility::{
    eligible_half_pairs, eligible_quarter_pairs, enumerate_subsums, psd_total, FeasiblePsdPair,
};
use qlp_core::numtheory::{admissible_residues, check_norm_condition, factorize, is_sum_of_two_squares, squarefree_part};
use qlp_core::pairs::parse_pairs;
use qlp_core::quat::{dft_exact_quarter, parse_seq, QuatSeq};
use qlp_core::search::{
    brute_force_search, format_output, jp30_pair, output_header, run_search, t3_classes, verify_pair,
    FilterReport, SearchConfig,
};
use qlp_core::Error;

use crate::{Command, SearchArgs, EXIT_FAIL, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE};

pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// A command failure with its exit code and message.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidSymbol { .. }
            | Error::EmptySequence
            | Error::BadPairLine { .. }
            | Error::OddLength(_)
            | Error::NotMultipleOfFour(_)
            | Error::UnsupportedLength { .. }
            | Error::LengthMismatch(..)
            | Error::SubsumOutOfRange { .. } => EXIT_USAGE,
            Error::Infeasible { .. } | Error::EmptyFeasibleSet { .. } => EXIT_FAIL,
            _ => EXIT_RUNTIME,
        };
        Failure(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_RUNTIME, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

pub fn dispatch(command: Command, io: &mut Io) -> u8 {
    let result = match command {
        Command::Search(args) => cmd_search(&args, io),
        Command::Verify { file } => cmd_verify(file.as_deref(), io),
        Command::Feasible { length } => cmd_feasible(length, io),
        Command::Norms { length, seq } => cmd_norms(length, &seq, io),
        Command::Brute { length } => cmd_brute(length, io),
        Command::Jp30 => cmd_jp30(io),
        Command::Stats { report } => cmd_stats(&report, io),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            code
        }
    }
}

fn require_even(len: usize) -> Result<(), Failure> {
    if len == 0 || len % 2 != 0 {
        return Err(Failure(EXIT_USAGE, format!("length {len} must be even and positive")));
    }
    Ok(())
}

fn pair_list(pairs: &[FeasiblePsdPair]) -> String {
    pairs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// The first condition an ineligible half-point value violates.
fn infeasible_reason(len: usize, value_a: u64) -> String {
    let total = psd_total(len);
    if value_a > total {
        return format!("{value_a} exceeds 2l+2 = {total}");
    }
    let residue = (2 * len as u64) % 8;
    if value_a % 8 != residue {
        return format!("{value_a} is not {residue} mod 8");
    }
    if len % 4 == 0 && value_a % 16 != 0 {
        return format!("{value_a} is not 0 mod 16");
    }
    for v in [value_a, total - value_a] {
        if !is_sum_of_two_squares(v as u128) {
            return format!("{v} is not the sum of two squares");
        }
    }
    "no reason found".to_string()
}

fn cmd_search(args: &SearchArgs, io: &mut Io) -> Outcome {
    let len = args.length;
    require_even(len)?;
    let eligible = eligible_half_pairs(len)?;
    let selected: Vec<FeasiblePsdPair> = match args.psd_half {
        Some(a) => match eligible.iter().find(|p| p.value_a == a) {
            Some(p) => vec![*p],
            None => {
                writeln!(io.stderr, "({a},{}) is not eligible for length {len}: {}", psd_total(len).saturating_sub(a), infeasible_reason(len, a))?;
                writeln!(io.stderr, "eligible half-point pairs: {}", pair_list(&eligible))?;
                return Ok(EXIT_FAIL);
            }
        },
        None => eligible.clone(),
    };
    let mut text = String::new();
    let mut found = 0usize;
    for half in &selected {
        if args.limit > 0 && found >= args.limit {
            break;
        }
        let mut config = SearchConfig::new(len, half.value_a)?;
        config.subsum = args.subsum;
        config.limit = if args.limit > 0 { args.limit - found } else { 0 };
        config.threads = args.threads;
        config.toggles.t2 = !args.no_t2;
        config.toggles.t3 = !args.no_t3;
        config.checkpoint = args.checkpoint.as_ref().map(|p| {
            if args.psd_half.is_some() {
                p.clone()
            } else {
                suffixed(p, half.value_a)
            }
        });
        let outcome = match run_search(&config) {
            Ok(o) => o,
            Err(Error::EmptyFeasibleSet { .. }) if args.psd_half.is_none() => {
                writeln!(io.stderr, "# skipping {half}: no achievable subsums")?;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        found += outcome.pairs.len();
        text.push_str(&format_output(len, half, &outcome.pairs));
        io.stderr.write_all(outcome.report.to_text().as_bytes())?;
        if let Some(path) = &args.report {
            let path = if selected.len() > 1 { suffixed(path, half.value_a) } else { path.clone() };
            fs::write(path, outcome.report.to_text())?;
        }
    }
    match &args.out {
        Some(path) => fs::write(path, &text)?,
        None => io.stdout.write_all(text.as_bytes())?,
    }
    writeln!(io.stderr, "# {found} pair(s)")?;
    Ok(EXIT_OK)
}

fn suffixed(path: &Path, value_a: u64) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(format!(".{value_a}"));
    PathBuf::from(name)
}

/// Own and complement norm products of `seq` for every T3 class.
fn norm_lines(seq: &QuatSeq, label: &str) -> Result<(Vec<String>, bool), Failure> {
    let len = seq.len();
    let total = psd_total(len) as i64;
    let mut lines = Vec::new();
    let mut all_ok = true;
    for (d, s) in t3_classes(len) {
        let n = norm_order(len, d)?;
        let freqs = orbit_frequencies(len, d, s)?;
        let freq_text = freqs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let products = [
            ("own", norm_product_psd(seq, d, s)?),
            ("complement", norm_product_complement(seq, d, s, total)?),
        ];
        for (kind, value) in products {
            let prefix = format!("{label}d={d} s={s} n={n} {kind} freqs={freq_text} value={value}");
            let line = match norm_to_u128(&value) {
                Some(0) => format!("{prefix} verdict=ok (zero)"),
                Some(m) => {
                    let verdict = check_norm_condition(m, n as u64)?;
                    all_ok &= verdict.holds;
                    let tail = if verdict.holds {
                        "ok".to_string()
                    } else {
                        let v: Vec<String> = verdict.violations.iter().map(ToString::to_string).collect();
                        format!("FAIL violating={}", v.join(","))
                    };
                    format!("{prefix} = {} squarefree={} verdict={tail}", factorize(m), squarefree_part(m))
                }
                None if value.sign() == Sign::Minus => {
                    all_ok = false;
                    format!("{prefix} verdict=FAIL (negative)")
                }
                None => format!("{prefix} verdict=untested (exceeds 128 bits)"),
            };
            lines.push(line);
        }
    }
    Ok((lines, all_ok))
}

fn cmd_norms(len: usize, text: &str, io: &mut Io) -> Outcome {
    require_even(len)?;
    let seq = parse_seq(text)?;
    if seq.len() != len {
        return Err(Failure(EXIT_USAGE, format!("sequence has length {}, expected {len}", seq.len())));
    }
    let (lines, ok) = norm_lines(&seq, "")?;
    for line in lines {
        writeln!(io.stdout, "{line}")?;
    }
    let mut orders: Vec<usize> = t3_classes(len).iter().map(|&(d, _)| norm_order(len, d)).collect::<Result<_, _>>()?;
    orders.dedup();
    orders.sort();
    orders.dedup();
    for n in orders {
        writeln!(io.stdout, "admissible n={n}: {}", admissible_residues(n as u64, 10_000)?)?;
    }
    writeln!(io.stdout, "all verdicts {}", if ok { "ok" } else { "FAIL" })?;
    Ok(EXIT_OK)
}

fn cmd_verify(file: Option<&Path>, io: &mut Io) -> Outcome {
    let text = match file {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            io.stdin.read_to_string(&mut s)?;
            s
        }
    };
    let pairs = parse_pairs(&text)?;
    let mut all = true;
    for (idx, (a, b)) in pairs.iter().enumerate() {
        let len = a.len();
        let diag = match verify_pair(a, b) {
            Ok(d) => d,
            Err(e) => return Err(Failure(EXIT_USAGE, format!("pair {}: {e}", idx + 1))),
        };
        all &= diag.holds;
        writeln!(io.stdout, "pair {} length {len}: {diag}", idx + 1)?;
        for j in 1..=3 {
            if (j * len) % 4 == 0 {
                let s = j * len / 4;
                let pa = dft_exact_quarter(a, s)?.norm();
                let pb = dft_exact_quarter(b, s)?.norm();
                writeln!(io.stdout, "  psd s={s}: A={pa} B={pb} sum={}", pa + pb)?;
            }
        }
        for (seq, label) in [(a, "A "), (b, "B ")] {
            for line in norm_lines(seq, label)?.0 {
                writeln!(io.stdout, "  {line}")?;
            }
        }
    }
    writeln!(io.stdout, "{} of {} pair(s) verified", pairs.iter().filter(|(a, b)| verify_pair(a, b).is_ok_and(|d| d.holds)).count(), pairs.len())?;
    Ok(if all { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_feasible(len: usize, io: &mut Io) -> Outcome {
    require_even(len)?;
    let halves = eligible_half_pairs(len)?;
    writeln!(io.stdout, "half: {}", pair_list(&halves))?;
    if len % 4 == 0 {
        writeln!(io.stdout, "quarter: {}", pair_list(&eligible_quarter_pairs(len)?))?;
    }
    for half in &halves {
        writeln!(io.stdout, "subsums {half}:")?;
        for (idx, s) in enumerate_subsums(len, half).iter().enumerate() {
            writeln!(io.stdout, "  {idx} {s}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_brute(len: usize, io: &mut Io) -> Outcome {
    let pairs = brute_force_search(len)?;
    let mut blocks: BTreeMap<u64, Vec<(QuatSeq, QuatSeq)>> = BTreeMap::new();
    for (a, b) in pairs {
        let pa = dft_exact_quarter(&a, len / 2)?.norm() as u64;
        blocks.entry(pa).or_default().push((a, b));
    }
    let mut total = 0;
    for half in eligible_half_pairs(len)? {
        let block = blocks.remove(&half.value_a).unwrap_or_default();
        total += block.len();
        io.stdout.write_all(format_output(len, &half, &block).as_bytes())?;
    }
    writeln!(io.stderr, "# {total} pair(s)")?;
    Ok(EXIT_OK)
}

fn cmd_jp30(io: &mut Io) -> Outcome {
    let (a, b) = jp30_pair();
    let pa = dft_exact_quarter(&a, 15)?.norm() as u64;
    let half = FeasiblePsdPair { point: qlp_core::feasibility::Point::Half, value_a: pa, value_b: psd_total(30) - pa };
    writeln!(io.stdout, "{}", output_header(30, &half))?;
    writeln!(io.stdout, "{a} {b}")?;
    Ok(EXIT_OK)
}

fn cmd_stats(path: &Path, io: &mut Io) -> Outcome {
    let report = FilterReport::parse(&fs::read_to_string(path)?)?;
    io.stdout.write_all(report.render().as_bytes())?;
    if !report.is_monotone() {
        writeln!(io.stderr, "warning: counters are not monotone")?;
    }
    Ok(EXIT_OK)
}
