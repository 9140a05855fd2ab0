use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use refined_ck::analysis::{plot_data, survey, to_csv, SurveyRecord};
use refined_ck::cache::{DiskCache, EntryKind};
use refined_ck::loci::{check_primes, depth2_locus, depth4_locus, verify_kim, CKLocus, Verdict};
use refined_ck::padic::primes_in;
use refined_ck::series::install_store;
use refined_ck::steinberg::{depth2_constant, dcw_special_case, steinberg_decompose};
use refined_ck::{Error, Padic, PrecisionPolicy};

const EXIT_INCONCLUSIVE: u8 = 1;
const EXIT_PRECISION: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_OTHER: u8 = 4;

#[derive(Parser)]
#[command(name = "refined-ck", version, about = "Refined Chabauty-Kim loci for the thrice-punctured line over Z[1/2q]")]
struct Cli {
    /// Skip the on-disk table cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory (defaults to $REFINED_CK_CACHE_DIR or a per-user data directory).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth-2 (1,0) locus.
    Depth2(Depth2Args),
    /// Depth-4 (1,0) locus for q = 3.
    Depth4(Depth4Args),
    /// Check that the refined locus equals the integral points for S = {2, 3}.
    VerifyKim(VerifyArgs),
    /// Depth-2 locus sizes for a fixed q over a range of p.
    Survey(SurveyArgs),
    /// The constant a_{τ_q τ_2} in Q_p.
    Dcw(DcwArgs),
    /// Remove stale or corrupt cache entries.
    CacheGc(GcArgs),
}

#[derive(Args)]
struct Depth2Args {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 10)]
    prec: i64,
    /// `auto`, or a p-adic number such as `2*5 + 3*5^2 + O(5^10)`.
    #[arg(long = "a-q2", default_value = "auto")]
    a_q2: String,
    /// Support bound for the Steinberg search behind `auto`.
    #[arg(long, default_value_t = 20)]
    bound: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Depth4Args {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 3)]
    q: u64,
    #[arg(long, default_value_t = 10)]
    prec: i64,
    #[arg(long, default_value_t = 40)]
    prec_max: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    p_min: u64,
    #[arg(long, default_value_t = 100)]
    p_max: u64,
    #[arg(long, default_value_t = 12)]
    prec: i64,
    #[arg(long, default_value_t = 40)]
    prec_max: i64,
    /// Exit 0 even if some prime is INCONCLUSIVE.
    #[arg(long)]
    allow_inconclusive: bool,
}

#[derive(Args)]
struct SurveyArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 5)]
    p_min: u64,
    #[arg(long)]
    p_max: u64,
    #[arg(long, default_value_t = 10)]
    prec: i64,
    #[arg(long, default_value_t = 30)]
    prec_max: i64,
    #[arg(long, default_value_t = 20)]
    bound: u64,
    #[arg(long, conflicts_with_all = ["json", "plot"])]
    csv: bool,
    #[arg(long, conflicts_with = "plot")]
    json: bool,
    /// `p size` pairs for a scatter plot.
    #[arg(long)]
    plot: bool,
}

#[derive(Args)]
struct DcwArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 10)]
    prec: i64,
    #[arg(long, default_value_t = 20)]
    bound: u64,
    /// Also print the Steinberg decomposition of [q]⊗[2] as JSON.
    #[arg(long)]
    decomposition: bool,
}

#[derive(Args)]
struct GcArgs {
    /// Also drop entries older than this many days.
    #[arg(long)]
    max_age_days: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let cache = if cli.no_cache {
        None
    } else {
        let opened = match &cli.cache_dir {
            Some(d) => DiskCache::open(d),
            None => DiskCache::open_default(),
        };
        match opened {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cache disabled: {e}");
                None
            }
        }
    };
    if let (Some(c), false) = (&cache, matches!(cli.cmd, Command::CacheGc(_))) {
        install_store(Some(Arc::new(c.clone())));
    }
    let result = match cli.cmd {
        Command::Depth2(a) => depth2(a, cache.as_ref()),
        Command::Depth4(a) => depth4(a),
        Command::VerifyKim(a) => verify(a),
        Command::Survey(a) => run_survey(a),
        Command::Dcw(a) => dcw(a, cache.as_ref()),
        Command::CacheGc(a) => gc(a, cache.as_ref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Precision { .. } => EXIT_PRECISION,
                Error::Invalid(_) | Error::Domain(_) | Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_OTHER,
            })
        }
    }
}

fn policy(prec: i64, max: i64) -> Result<PrecisionPolicy, Error> {
    PrecisionPolicy::new(prec, max.max(prec))
}

/// `a_{τ_q τ_2}`, read from the cache when available.
fn constant(p: u64, q: u64, prec: i64, bound: u64, cache: Option<&DiskCache>) -> Result<Padic, Error> {
    let params = format!("q={q};order={prec};bound={bound}");
    if let Some(a) = cache.and_then(|c| c.get::<Padic>(EntryKind::Dcw, p, &params)) {
        return Ok(a);
    }
    let a = depth2_constant(p, q, prec, bound)?;
    if let Some(c) = cache {
        let _ = c.put(EntryKind::Dcw, p, &params, &a);
    }
    Ok(a)
}

fn print_locus(l: &CKLocus, json: bool) {
    if json {
        println!("{}", l.to_json());
    } else {
        print!("{}", l.to_text());
    }
}

fn depth2(a: Depth2Args, cache: Option<&DiskCache>) -> Result<ExitCode, Error> {
    check_primes(a.p, a.q)?;
    let c = if a.a_q2 == "auto" {
        constant(a.p, a.q, a.prec, a.bound, cache)?
    } else {
        let c: Padic = a.a_q2.parse()?;
        if c.prime() != a.p {
            return Err(Error::Invalid(format!("--a-q2 is {}-adic, expected {}-adic", c.prime(), a.p)));
        }
        c
    };
    print_locus(&depth2_locus(a.p, a.q, a.prec, &c)?, a.json);
    Ok(ExitCode::SUCCESS)
}

fn depth4(a: Depth4Args) -> Result<ExitCode, Error> {
    let l = depth4_locus(a.p, a.q, policy(a.prec, a.prec_max)?, None)?;
    print_locus(&l, a.json);
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode, Error> {
    let pol = policy(a.prec, a.prec_max)?;
    let (mut pass, mut inconclusive) = (0usize, 0usize);
    for p in primes_in(a.p_min.max(5), a.p_max) {
        match verify_kim(p, pol) {
            Ok(r) => {
                println!("{r}");
                match r.verdict {
                    Verdict::Pass => pass += 1,
                    Verdict::Inconclusive => inconclusive += 1,
                }
            }
            Err(e) if e.is_precision() => {
                println!("p={p:<5} INCONCLUSIVE {e}");
                inconclusive += 1;
            }
            Err(e) => return Err(e),
        }
    }
    println!("summary: {pass} PASS, {inconclusive} INCONCLUSIVE");
    Ok(if inconclusive > 0 && !a.allow_inconclusive {
        ExitCode::from(EXIT_INCONCLUSIVE)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_survey(a: SurveyArgs) -> Result<ExitCode, Error> {
    let primes = primes_in(a.p_min, a.p_max);
    let recs = survey(a.q, &primes, policy(a.prec, a.prec_max)?, a.bound)?;
    if a.csv {
        print!("{}", to_csv(&recs));
    } else if a.json {
        println!("{}", serde_json::to_string(&recs).map_err(|e| Error::Invalid(e.to_string()))?);
    } else if a.plot {
        print!("{}", plot_data(&recs));
    } else {
        for r in &recs {
            println!("{}", survey_line(r));
        }
    }
    Ok(if recs.iter().any(|r| r.error.is_some()) {
        ExitCode::from(EXIT_PRECISION)
    } else {
        ExitCode::SUCCESS
    })
}

fn survey_line(r: &SurveyRecord) -> String {
    if let Some(e) = &r.error {
        return format!("p={:<5} q={} ERROR {e}", r.p, r.q);
    }
    let nu = r.nu.map_or_else(|| "-".to_string(), |v| v.to_string());
    format!(
        "p={:<5} q={} size={:<5} nu={:<3} wieferich2={} wieferichq={} regime={} observed={}",
        r.p, r.q, r.size, nu, r.wieferich2, r.wieferichq, r.regime, r.observed
    )
}

fn dcw(a: DcwArgs, cache: Option<&DiskCache>) -> Result<ExitCode, Error> {
    check_primes(a.p, a.q)?;
    let value = constant(a.p, a.q, a.prec, a.bound, cache)?;
    println!("{value}");
    if a.decomposition {
        if dcw_special_case(a.q).is_some() {
            eprintln!("note: q = {} has a closed form; the decomposition is shown for reference", a.q);
        }
        println!("{}", steinberg_decompose(a.q, 2, a.bound.max(a.q), a.p)?.to_json());
    }
    Ok(ExitCode::SUCCESS)
}

fn gc(a: GcArgs, cache: Option<&DiskCache>) -> Result<ExitCode, Error> {
    let Some(c) = cache else {
        return Err(Error::Invalid("cache-gc with --no-cache has nothing to do".into()));
    };
    let removed = c.gc(a.max_age_days.map(|d| d * 86_400))?;
    println!("removed {removed} entries from {} ({} remain)", c.dir().display(), c.len());
    Ok(ExitCode::SUCCESS)
}
