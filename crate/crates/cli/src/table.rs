use std::path::Path;

use cabcoh::exactalg::is_prime;
use cabcoh::valuation::{nu_brute, probe_with, ProbeConfig, ProbeResult, DEFAULT_CROSSCHECK_CAP, DEFAULT_EXACT_CAP};
use cabcoh::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::failure::{emit, read_input, Failure};
use crate::Format;

pub const TABLE_VERSION: u32 = 1;
pub const COLUMNS: [&str; 15] = [
    "p", "a", "b", "alpha", "j", "r", "c", "d", "M", "N_digits", "nu", "bound_ok", "C_d_exact", "crosscheck", "note",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub primes: Vec<u64>,
    pub pairs: Vec<(u32, u32)>,
    pub alphas: Vec<BigInt>,
    pub d_max: u32,
    pub exact_cap: u64,
    pub crosscheck_cap: u64,
    /// Also run the enumerating oracle when `N` is at most this.
    pub brute_cap: Option<u64>,
    pub seed: u64,
    pub format: Format,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    primes: Vec<u64>,
    pairs: Vec<(u32, u32)>,
    #[serde(default = "default_alphas")]
    alphas: Vec<i64>,
    #[serde(default = "default_d_max")]
    d_max: u32,
    #[serde(default = "default_exact_cap")]
    exact_cap: u64,
    #[serde(default = "default_crosscheck_cap")]
    crosscheck_cap: u64,
    #[serde(default)]
    brute_cap: Option<u64>,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_format")]
    format: Format,
}

fn default_alphas() -> Vec<i64> {
    vec![1]
}
fn default_d_max() -> u32 {
    1
}
fn default_exact_cap() -> u64 {
    DEFAULT_EXACT_CAP
}
fn default_crosscheck_cap() -> u64 {
    DEFAULT_CROSSCHECK_CAP
}
fn default_format() -> Format {
    Format::Csv
}

impl SweepConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let file: SweepFile = serde_json::from_str(&read_input(path)?)
            .map_err(|e| Failure::validation(format!("malformed sweep config: {e}")))?;
        if file.d_max == 0 {
            return Err(Failure::validation("d_max must be at least 1"));
        }
        Ok(SweepConfig {
            primes: file.primes,
            pairs: file.pairs,
            alphas: file.alphas.into_iter().map(BigInt::from).collect(),
            d_max: file.d_max,
            exact_cap: file.exact_cap,
            crosscheck_cap: file.crosscheck_cap,
            brute_cap: file.brute_cap,
            seed: file.seed,
            format: file.format,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Row {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub alpha: String,
    pub j: Option<u32>,
    pub r: Option<u32>,
    pub c: Option<u64>,
    pub d: Option<u32>,
    #[serde(rename = "M")]
    pub m: Option<u32>,
    #[serde(rename = "N_digits")]
    pub n_digits: Option<usize>,
    pub nu: Option<i64>,
    pub bound_ok: Option<bool>,
    #[serde(rename = "C_d_exact")]
    pub c_exact: Option<String>,
    pub crosscheck: Option<bool>,
    pub note: Option<String>,
}

impl Row {
    fn skipped(p: u64, a: u32, b: u32, alpha: &BigInt, note: &str) -> Self {
        Row { p, a, b, alpha: alpha.to_string(), note: Some(note.to_string()), ..Row::default() }
    }

    fn from_probe(r: &ProbeResult) -> Self {
        Row {
            p: r.p,
            a: r.a,
            b: r.b,
            alpha: r.alpha.to_string(),
            j: Some(r.rc.j),
            r: Some(r.rc.r),
            c: Some(r.rc.c),
            d: Some(r.d),
            m: Some(r.m),
            n_digits: Some(r.n_digits()),
            nu: Some(r.nu),
            bound_ok: Some(r.bound_ok),
            c_exact: r.c_exact.as_ref().map(|c| c.to_string()),
            crosscheck: r.crosscheck,
            note: None,
        }
    }

    fn fields(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        vec![
            self.p.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.alpha.clone(),
            opt(&self.j),
            opt(&self.r),
            opt(&self.c),
            opt(&self.d),
            opt(&self.m),
            opt(&self.n_digits),
            opt(&self.nu),
            opt(&self.bound_ok),
            opt(&self.c_exact),
            opt(&self.crosscheck),
            opt(&self.note),
        ]
    }
}

/// Reason a grid entry is skipped, if any.
fn invalid_reason(p: u64, a: u32, b: u32, alpha: &BigInt) -> Option<&'static str> {
    if !is_prime(p) {
        Some("p is not prime")
    } else if a < 2 || b < 2 {
        Some("a and b must be at least 2")
    } else if a.gcd(&b) != 1 {
        Some("gcd(a, b) is not 1")
    } else if (a as u64 * b as u64).is_multiple_of(p) {
        Some("p divides ab")
    } else if (alpha % BigInt::from(p)).is_zero() {
        Some("alpha vanishes mod p")
    } else {
        None
    }
}

fn rows_for(cfg: &SweepConfig, p: u64, a: u32, b: u32, alpha: &BigInt) -> Result<Vec<Row>, Failure> {
    if let Some(reason) = invalid_reason(p, a, b, alpha) {
        return Ok(vec![Row::skipped(p, a, b, alpha, reason)]);
    }
    let pc = ProbeConfig { d_max: cfg.d_max, exact_cap: cfg.exact_cap, crosscheck_cap: Some(cfg.crosscheck_cap) };
    let results = probe_with(p, a, b, alpha.clone(), &pc)?;
    if let Some(cap) = cfg.brute_cap {
        for r in &results {
            if r.n.to_u64().is_some_and(|n| n <= cap) {
                let brute = nu_brute(p, a, b, &r.rc, r.m, cap)?;
                if brute != r.nu {
                    return Err(Failure::Assertion(format!(
                        "counting gives nu = {} but enumeration gives {brute} at (p, a, b, d) = ({p}, {a}, {b}, {})",
                        r.nu, r.d
                    )));
                }
            }
        }
    }
    Ok(results.iter().map(Row::from_probe).collect())
}

/// All rows of the grid in sorted parameter order.
pub fn compute(cfg: &SweepConfig) -> Result<Vec<Row>, Failure> {
    let mut tuples: Vec<(u64, u32, u32, BigInt)> = cfg
        .primes
        .iter()
        .flat_map(|&p| {
            cfg.pairs
                .iter()
                .flat_map(move |&(a, b)| cfg.alphas.iter().map(move |alpha| (p, a, b, alpha.clone())))
        })
        .collect();
    tuples.sort();
    tuples.dedup();
    let chunks: Vec<Vec<Row>> =
        tuples.par_iter().map(|(p, a, b, alpha)| rows_for(cfg, *p, *a, *b, alpha)).collect::<Result<_, _>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

pub fn render(cfg: &SweepConfig, rows: &[Row]) -> String {
    match cfg.format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(COLUMNS).expect("in-memory write");
            for row in rows {
                w.write_record(row.fields()).expect("in-memory write");
            }
            let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
            format!("# cabcoh-table v{TABLE_VERSION} seed={}\n{body}", cfg.seed)
        }
        Format::Json => {
            let doc = serde_json::json!({ "version": TABLE_VERSION, "seed": cfg.seed, "rows": rows });
            serde_json::to_string_pretty(&doc).expect("rows serialize") + "\n"
        }
    }
}

pub fn run(cfg: &SweepConfig, out: Option<&Path>) -> Result<(), Failure> {
    let rows = compute(cfg)?;
    emit(out, &render(cfg, &rows))?;
    if let Some(bad) = rows.iter().find(|r| r.bound_ok == Some(false)) {
        return Err(Failure::Assertion(format!(
            "bound violated at (p, a, b, alpha, d) = ({}, {}, {}, {}, {})",
            bad.p,
            bad.a,
            bad.b,
            bad.alpha,
            bad.d.unwrap_or(0)
        )));
    }
    if let Some(bad) = rows.iter().find(|r| r.crosscheck == Some(false)) {
        return Err(Failure::Assertion(format!(
            "reduction chain disagrees with the product at (p, a, b, alpha, d) = ({}, {}, {}, {}, {})",
            bad.p,
            bad.a,
            bad.b,
            bad.alpha,
            bad.d.unwrap_or(0)
        )));
    }
    Ok(())
}
