//! Text codecs for scan output: CSV tables, resumable checkpoint files,
//! and crash-safe writes.
//!
//! Every value serialized here is an integer, a kebab-case identifier,
//! or a decimal rendering — never free text — so the CSV needs no
//! quoting or escaping. Encoders are deterministic: the same data
//! always produces the same bytes, which the scan commands rely on for
//! byte-identical reruns.
//!
//! The checkpoint format is line-oriented and *prefix-tolerant*: each
//! line carries one fully-processed prime and validates on its own, so
//! a reader confronted with a torn tail (the writer died mid-line)
//! silently keeps the valid prefix and resumes from there. A final
//! `#count=N` line marks a checkpoint that was written out completely.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::congruence::{CheckResult, Claim, Polarity};
use crate::search::{DistributionReport, KurepaPair, PrimeIndexRecord};
use crate::stabilize::StabilizationCertificate;
use crate::{Error, Result};

/// One row of a sequence listing; values may exceed u64 (exact mode),
/// so they travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqEntry {
    pub n: u64,
    pub value: String,
}

/// Full result of a range scan, as written to `--out` in JSON mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPayload {
    pub records: Vec<PrimeIndexRecord>,
    pub distribution: DistributionReport,
}

/// Write `bytes` to `path` atomically: a temporary sibling file is
/// written, synced to disk, then renamed over the target, so readers
/// never observe a half-written file.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let mut tmp_name = path.as_os_str().to_owned();
    tmp_name.push(".tmp");
    let tmp = PathBuf::from(tmp_name);
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Conventional checkpoint location next to an `--out` target.
pub fn checkpoint_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".checkpoint");
    PathBuf::from(name)
}

/// Encode records as checkpoint lines `p<TAB>index<TAB>n:order,...`
/// (third field empty at index 0) plus the `#count=` trailer.
pub fn checkpoint_to_string(records: &[PrimeIndexRecord]) -> String {
    let mut out = String::new();
    for record in records {
        let pairs = record
            .pairs
            .iter()
            .map(|pair| format!("{}:{}", pair.n, pair.order))
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!("{}\t{}\t{}\n", record.p, record.index, pairs));
    }
    out.push_str(&format!("#count={}\n", records.len()));
    out
}

fn parse_checkpoint_line(line: &str) -> Option<PrimeIndexRecord> {
    let mut fields = line.split('\t');
    let p = fields.next()?.parse::<u64>().ok()?;
    let index = fields.next()?.parse::<u64>().ok()?;
    let pair_field = fields.next()?;
    if fields.next().is_some() {
        return None;
    }
    let mut pairs: Vec<KurepaPair> = Vec::new();
    if !pair_field.is_empty() {
        for part in pair_field.split(',') {
            let (n, order) = part.split_once(':')?;
            let n = n.parse::<u64>().ok()?;
            let order = order.parse::<u32>().ok()?;
            if pairs.last().is_some_and(|prev| prev.n >= n) {
                return None;
            }
            pairs.push(KurepaPair { p, n, order });
        }
    }
    if pairs.len() as u64 != index {
        return None;
    }
    Some(PrimeIndexRecord { p, index, pairs })
}

/// Decode a checkpoint, keeping the longest valid prefix: parsing stops
/// at the first malformed or out-of-order line (a torn write) and at
/// the `#count=` trailer. Never fails — an unreadable checkpoint is
/// just an empty one.
pub fn checkpoint_from_str(s: &str) -> Vec<PrimeIndexRecord> {
    let mut out: Vec<PrimeIndexRecord> = Vec::new();
    for line in s.lines() {
        if line.starts_with("#count=") {
            break;
        }
        match parse_checkpoint_line(line) {
            Some(record) if out.last().is_none_or(|prev| prev.p < record.p) => out.push(record),
            _ => break,
        }
    }
    out
}

pub fn write_checkpoint(path: &Path, records: &[PrimeIndexRecord]) -> io::Result<()> {
    atomic_write(path, checkpoint_to_string(records).as_bytes())
}

/// Read a checkpoint; a missing file means no progress yet.
pub fn read_checkpoint(path: &Path) -> io::Result<Vec<PrimeIndexRecord>> {
    match fs::read_to_string(path) {
        Ok(s) => Ok(checkpoint_from_str(&s)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(e),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Records as CSV rows `prime,n,order`, one row per pair; a prime with
/// index 0 still appears, as a single row with empty `n` and `order`.
pub fn records_to_csv(records: &[PrimeIndexRecord]) -> String {
    let mut out = String::from("prime,n,order\n");
    for record in records {
        if record.pairs.is_empty() {
            out.push_str(&format!("{},,\n", record.p));
        }
        for pair in &record.pairs {
            out.push_str(&format!("{},{},{}\n", pair.p, pair.n, pair.order));
        }
    }
    out
}

/// Inverse of [`records_to_csv`]; rows of one prime must be contiguous.
pub fn records_from_csv(s: &str) -> Result<Vec<PrimeIndexRecord>> {
    let mut lines = s.lines().enumerate();
    match lines.next() {
        Some((_, "prime,n,order")) => {}
        _ => return Err(parse_err(1, "expected header prime,n,order")),
    }
    let mut grouped: Vec<(u64, Vec<KurepaPair>)> = Vec::new();
    for (i, line) in lines {
        let row = i + 1;
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        let [p, n, order] = parts[..] else {
            return Err(parse_err(row, "expected three fields"));
        };
        let p = p
            .parse::<u64>()
            .map_err(|_| parse_err(row, "bad prime field"))?;
        match (n.is_empty(), order.is_empty()) {
            (true, true) => {
                if grouped.last().is_some_and(|(q, _)| *q == p) {
                    return Err(parse_err(row, "empty marker after pair rows"));
                }
                grouped.push((p, Vec::new()));
            }
            (false, false) => {
                let n = n.parse::<u64>().map_err(|_| parse_err(row, "bad n field"))?;
                let order = order
                    .parse::<u32>()
                    .map_err(|_| parse_err(row, "bad order field"))?;
                let pair = KurepaPair { p, n, order };
                match grouped.last_mut() {
                    Some((q, pairs)) if *q == p => {
                        if pairs.is_empty() {
                            return Err(parse_err(row, "pair row after empty marker"));
                        }
                        pairs.push(pair);
                    }
                    _ => grouped.push((p, vec![pair])),
                }
            }
            _ => return Err(parse_err(row, "half-empty pair fields")),
        }
    }
    Ok(grouped
        .into_iter()
        .map(|(p, pairs)| PrimeIndexRecord::new(p, pairs))
        .collect())
}

/// Bare pair list as CSV (`prime,n,order`, no empty-marker rows).
pub fn pairs_to_csv(pairs: &[KurepaPair]) -> String {
    let mut out = String::from("prime,n,order\n");
    for pair in pairs {
        out.push_str(&format!("{},{},{}\n", pair.p, pair.n, pair.order));
    }
    out
}

fn polarity_name(p: Polarity) -> &'static str {
    match p {
        Polarity::MustHold => "must-hold",
        Polarity::MustFail => "must-fail",
    }
}

/// Check results as CSV. Congruence rows fill `lhs,rhs,modulus` and
/// leave `holds` empty; predicate rows do the opposite.
pub fn results_to_csv(results: &[CheckResult]) -> String {
    let mut out = String::from("name,subject,aux,kind,lhs,rhs,modulus,holds,polarity,passed\n");
    for r in results {
        let aux = r.aux.map(|a| a.to_string()).unwrap_or_default();
        let polarity = polarity_name(r.polarity);
        match r.claim {
            Claim::Congruence { lhs, rhs, modulus } => {
                out.push_str(&format!(
                    "{},{},{},congruence,{},{},{},,{},{}\n",
                    r.name, r.subject, aux, lhs, rhs, modulus, polarity, r.passed
                ));
            }
            Claim::Predicate { holds } => {
                out.push_str(&format!(
                    "{},{},{},predicate,,,,{},{},{}\n",
                    r.name, r.subject, aux, holds, polarity, r.passed
                ));
            }
        }
    }
    out
}

/// Inverse of [`results_to_csv`]. The `passed` column is recomputed
/// from the claim and polarity and must agree with the stored value.
pub fn results_from_csv(s: &str) -> Result<Vec<CheckResult>> {
    let mut lines = s.lines().enumerate();
    let header = "name,subject,aux,kind,lhs,rhs,modulus,holds,polarity,passed";
    match lines.next() {
        Some((_, h)) if h == header => {}
        _ => return Err(parse_err(1, "bad results header")),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let row = i + 1;
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        let [name, subject, aux, kind, lhs, rhs, modulus, holds, polarity, passed] = parts[..]
        else {
            return Err(parse_err(row, "expected ten fields"));
        };
        let subject = subject
            .parse::<u64>()
            .map_err(|_| parse_err(row, "bad subject"))?;
        let aux = if aux.is_empty() {
            None
        } else {
            Some(aux.parse::<u64>().map_err(|_| parse_err(row, "bad aux"))?)
        };
        let polarity = match polarity {
            "must-hold" => Polarity::MustHold,
            "must-fail" => Polarity::MustFail,
            _ => return Err(parse_err(row, "bad polarity")),
        };
        let claim = match kind {
            "congruence" => Claim::Congruence {
                lhs: lhs.parse().map_err(|_| parse_err(row, "bad lhs"))?,
                rhs: rhs.parse().map_err(|_| parse_err(row, "bad rhs"))?,
                modulus: modulus.parse().map_err(|_| parse_err(row, "bad modulus"))?,
            },
            "predicate" => Claim::Predicate {
                holds: holds.parse().map_err(|_| parse_err(row, "bad holds"))?,
            },
            _ => return Err(parse_err(row, "bad kind")),
        };
        let agrees = match claim {
            Claim::Congruence { lhs, rhs, .. } => lhs == rhs,
            Claim::Predicate { holds } => holds,
        };
        let expect_passed = match polarity {
            Polarity::MustHold => agrees,
            Polarity::MustFail => !agrees,
        };
        let passed = passed
            .parse::<bool>()
            .map_err(|_| parse_err(row, "bad passed"))?;
        if passed != expect_passed {
            return Err(parse_err(row, "passed column contradicts the claim"));
        }
        out.push(CheckResult {
            name: std::borrow::Cow::Owned(name.to_string()),
            subject,
            aux,
            claim,
            polarity,
            passed,
        });
    }
    Ok(out)
}

/// Sequence rows as CSV `n,value`.
pub fn seq_to_csv(entries: &[SeqEntry]) -> String {
    let mut out = String::from("n,value\n");
    for e in entries {
        out.push_str(&format!("{},{}\n", e.n, e.value));
    }
    out
}

/// Inverse of [`seq_to_csv`].
pub fn seq_from_csv(s: &str) -> Result<Vec<SeqEntry>> {
    let mut lines = s.lines().enumerate();
    match lines.next() {
        Some((_, "n,value")) => {}
        _ => return Err(parse_err(1, "expected header n,value")),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let row = i + 1;
        if line.is_empty() {
            continue;
        }
        let Some((n, value)) = line.split_once(',') else {
            return Err(parse_err(row, "expected two fields"));
        };
        let n = n.parse::<u64>().map_err(|_| parse_err(row, "bad n"))?;
        if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(row, "bad value"));
        }
        out.push(SeqEntry {
            n,
            value: value.to_string(),
        });
    }
    Ok(out)
}

const CERT_HEADER: &str =
    "p,r,l_r,threshold,modulus,stable_value,window,observed_first_stable,valuation_at_threshold";

/// A stabilization certificate as a one-row CSV table.
pub fn certificate_to_csv(cert: &StabilizationCertificate) -> String {
    format!(
        "{CERT_HEADER}\n{},{},{},{},{},{},{},{},{}\n",
        cert.p,
        cert.r,
        cert.l_r,
        cert.threshold,
        cert.modulus,
        cert.stable_value,
        cert.window,
        cert.observed_first_stable,
        cert.valuation_at_threshold
    )
}

/// Inverse of [`certificate_to_csv`].
pub fn certificate_from_csv(s: &str) -> Result<StabilizationCertificate> {
    let mut lines = s.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CERT_HEADER => {}
        _ => return Err(parse_err(1, "bad certificate header")),
    }
    let Some((i, line)) = lines.next() else {
        return Err(parse_err(2, "missing certificate row"));
    };
    let row = i + 1;
    let parts: Vec<&str> = line.split(',').collect();
    let [p, r, l_r, threshold, modulus, stable_value, window, observed, valuation] = parts[..]
    else {
        return Err(parse_err(row, "expected nine fields"));
    };
    let field = |s: &str, what: &'static str| -> Result<u64> {
        s.parse::<u64>().map_err(|_| parse_err(row, what))
    };
    Ok(StabilizationCertificate {
        p: field(p, "bad p")?,
        r: r.parse::<u32>().map_err(|_| parse_err(row, "bad r"))?,
        l_r: field(l_r, "bad l_r")?,
        threshold: field(threshold, "bad threshold")?,
        modulus: field(modulus, "bad modulus")?,
        stable_value: field(stable_value, "bad stable_value")?,
        window: field(window, "bad window")?,
        observed_first_stable: field(observed, "bad observed_first_stable")?,
        valuation_at_threshold: field(valuation, "bad valuation_at_threshold")?,
    })
}
