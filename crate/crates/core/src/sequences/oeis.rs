//! Cross-checks against the On-Line Encyclopedia of Integer Sequences.
//!
//! Tests run against bundled fixture files; the HTTP client is optional and falls
//! back to the fixtures whenever the network is unavailable.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::time::Duration;

use num_bigint::BigInt;
use serde::Serialize;

use super::SequenceRecord;
use crate::error::{Error, Result};
use crate::exactalg::count_terms;
use crate::opgraph::{build_space, Family};

/// Environment variable naming a directory of fixture files to use instead of the
/// bundled ones.
pub const FIXTURE_DIR_ENV: &str = "DIFFOPS_FIXTURE_DIR";

const MAX_SHIFT: i64 = 3;
const MIN_OVERLAP: usize = 10;
const BFILE_TERMS: usize = 200;

const BUNDLED: [(&str, &str); 12] = [
    ("A000079", include_str!("../../fixtures/oeis/A000079.txt")),
    ("A007283", include_str!("../../fixtures/oeis/A007283.txt")),
    ("A020701", include_str!("../../fixtures/oeis/A020701.txt")),
    ("A020714", include_str!("../../fixtures/oeis/A020714.txt")),
    ("A090989", include_str!("../../fixtures/oeis/A090989.txt")),
    ("A090990", include_str!("../../fixtures/oeis/A090990.txt")),
    ("A090991", include_str!("../../fixtures/oeis/A090991.txt")),
    ("A090992", include_str!("../../fixtures/oeis/A090992.txt")),
    ("A090993", include_str!("../../fixtures/oeis/A090993.txt")),
    ("A090994", include_str!("../../fixtures/oeis/A090994.txt")),
    ("A090995", include_str!("../../fixtures/oeis/A090995.txt")),
    ("A129638", include_str!("../../fixtures/oeis/A129638.txt")),
];

/// Sequence id for the counts of each family in dimensions 3 through 10.
pub fn expected_sequence_id(family: Family, n: usize) -> Option<&'static str> {
    let id = match (family, n) {
        (Family::A, 3) => "A020701",
        (Family::A, 4) => "A090989",
        (Family::A, 5) => "A090990",
        (Family::A, 6) => "A090991",
        (Family::A, 7) => "A090992",
        (Family::A, 8) => "A090993",
        (Family::A, 9) => "A090994",
        (Family::A, 10) => "A090995",
        (Family::B, 3) => "A000079",
        (Family::B, 4) => "A090990",
        (Family::B, 5) => "A007283",
        (Family::B, 6) => "A090992",
        (Family::B, 7) => "A000079",
        (Family::B, 8) => "A090994",
        (Family::B, 9) => "A020714",
        (Family::B, 10) => "A129638",
        _ => return None,
    };
    Some(id)
}

/// All twelve ids, sorted.
pub fn sequence_ids() -> Vec<&'static str> {
    BUNDLED.iter().map(|(id, _)| *id).collect()
}

/// `(family, n)` pairs whose counts are expected to appear under `id`.
pub fn sources(id: &str) -> Vec<(Family, usize)> {
    [Family::A, Family::B]
        .into_iter()
        .flat_map(|f| (3..=10).map(move |n| (f, n)))
        .filter(|&(f, n)| expected_sequence_id(f, n) == Some(id))
        .collect()
}

/// Terms the database lists before the `k = 1` count, for sequences whose
/// index starts earlier.
fn leading_terms(id: &str) -> &'static [u64] {
    match id {
        "A000079" => &[1, 2],
        "A007283" => &[3],
        "A020714" => &[5],
        _ => &[],
    }
}

/// Produces fixture file contents for `id` from the computed counts.
pub fn generate_fixture(id: &str, terms_from_k1: usize) -> Result<String> {
    let &(family, n) = sources(id)
        .first()
        .ok_or_else(|| Error::UnknownSequence(id.to_owned()))?;
    let space = build_space(n, family)?;
    let mut terms: Vec<String> = leading_terms(id).iter().map(ToString::to_string).collect();
    terms.extend(
        count_terms(&space, terms_from_k1)
            .iter()
            .map(ToString::to_string),
    );
    Ok(format!("{id}\n{}\n", terms.join(",")))
}

/// Parses a fixture: the id on the first line, comma-separated terms on the second.
pub fn parse_fixture(text: &str) -> Result<(String, Vec<BigInt>)> {
    let mut lines = text.split('\n');
    let id = lines
        .next()
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .ok_or_else(|| Error::MalformedSequence("missing id line".into()))?;
    let data = lines
        .next()
        .ok_or_else(|| Error::MalformedSequence(format!("{id}: missing terms line")))?;
    let terms = data
        .trim_end()
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::MalformedSequence(format!("{id}: bad term {t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((id.to_owned(), terms))
}

/// Parses a b-file (`index value` per line, `#` comments) into its values.
pub fn parse_bfile(text: &str) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut expected_index: Option<i64> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(val)) = (parts.next(), parts.next()) else {
            return Err(Error::MalformedSequence(format!("b-file line {line:?}")));
        };
        let idx: i64 = idx
            .parse()
            .map_err(|_| Error::MalformedSequence(format!("b-file index {idx:?}")))?;
        if let Some(e) = expected_index {
            if idx != e {
                return Err(Error::MalformedSequence(format!(
                    "b-file indices not consecutive at {idx}"
                )));
            }
        }
        expected_index = Some(idx + 1);
        out.push(
            val.parse()
                .map_err(|_| Error::MalformedSequence(format!("b-file value {val:?}")))?,
        );
    }
    if out.is_empty() {
        return Err(Error::MalformedSequence("empty b-file".into()));
    }
    Ok(out)
}

/// Id → terms, loaded once.
#[derive(Debug, Clone, Default)]
pub struct FixtureSet {
    sequences: BTreeMap<String, Vec<BigInt>>,
}

impl FixtureSet {
    pub fn bundled() -> Result<Self> {
        let mut sequences = BTreeMap::new();
        for (name, text) in BUNDLED {
            let (id, terms) = parse_fixture(text)?;
            if id != name {
                return Err(Error::MalformedSequence(format!(
                    "fixture {name} declares id {id}"
                )));
            }
            sequences.insert(id, terms);
        }
        Ok(Self { sequences })
    }

    /// Reads every `*.txt` fixture in `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut sequences = BTreeMap::new();
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("txt") {
                continue;
            }
            let (id, terms) = parse_fixture(&std::fs::read_to_string(&path)?)?;
            sequences.insert(id, terms);
        }
        Ok(Self { sequences })
    }

    /// The directory named by [`FIXTURE_DIR_ENV`] if set, the bundled set otherwise.
    pub fn load() -> Result<Self> {
        match std::env::var_os(FIXTURE_DIR_ENV) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Self::bundled(),
        }
    }

    pub fn get(&self, id: &str) -> Option<&[BigInt]> {
        self.sequences.get(id).map(Vec::as_slice)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.sequences.keys().map(String::as_str)
    }
}

/// Blocking client for the database's b-file endpoint.
#[derive(Debug, Clone)]
pub struct OeisClient {
    pub base_url: String,
    pub timeout: Duration,
}

impl Default for OeisClient {
    fn default() -> Self {
        Self {
            base_url: "https://oeis.org".into(),
            timeout: Duration::from_secs(5),
        }
    }
}

impl OeisClient {
    pub fn new(base_url: impl Into<String>) -> Self {
        Self {
            base_url: base_url.into(),
            ..Self::default()
        }
    }

    pub fn bfile_url(&self, id: &str) -> String {
        let digits = id.trim_start_matches('A');
        format!("{}/{id}/b{digits}.txt", self.base_url.trim_end_matches('/'))
    }

    /// First terms of the sequence; any transport error or non-200 status is an `Err`.
    pub fn fetch(&self, id: &str) -> std::result::Result<Vec<BigInt>, String> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        let response = agent
            .get(&self.bfile_url(id))
            .call()
            .map_err(|e| e.to_string())?;
        if response.status() != 200 {
            return Err(format!("HTTP status {}", response.status()));
        }
        let reader = BufReader::new(response.into_body().into_reader());
        let mut text = String::new();
        let mut data_lines = 0;
        for line in reader.lines() {
            let line = line.map_err(|e| e.to_string())?;
            if !line.trim_start().starts_with('#') && !line.trim().is_empty() {
                data_lines += 1;
            }
            text.push_str(&line);
            text.push('\n');
            if data_lines >= BFILE_TERMS {
                break;
            }
        }
        parse_bfile(&text).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceMode {
    Offline,
    Online,
}

/// Where the reference terms came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportSource {
    Fixture,
    Online,
    OfflineFallback,
}

impl ReportSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportSource::Fixture => "fixture",
            ReportSource::Online => "online",
            ReportSource::OfflineFallback => "offline-fallback",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OeisReport {
    pub id: String,
    pub family: Family,
    pub n: usize,
    /// Equal terms over the overlap at the chosen offset.
    pub matched_terms: usize,
    /// Reference index of the `k = 1` term.
    pub offset: i64,
    pub passed: bool,
    pub source: ReportSource,
    /// Why the online fetch failed, when it did.
    pub fallback_reason: Option<String>,
}

/// Best alignment of `computed` (from `k = 1`) against `reference`.
///
/// Returns `(offset, matched, all_equal)`; a passing alignment needs every overlapping
/// term to agree over at least [`MIN_OVERLAP`] terms.
fn align(computed: &[BigInt], reference: &[BigInt]) -> (i64, usize, bool) {
    let mut best: Option<(i64, usize, bool)> = None;
    for shift in -MAX_SHIFT..=MAX_SHIFT {
        let pairs = computed.iter().enumerate().filter_map(|(i, c)| {
            let j = i as i64 + shift;
            (j >= 0)
                .then(|| reference.get(j as usize).map(|r| (c, r)))
                .flatten()
        });
        let (mut overlap, mut matched) = (0, 0);
        for (c, r) in pairs {
            overlap += 1;
            if c == r {
                matched += 1;
            }
        }
        let ok = overlap >= MIN_OVERLAP && matched == overlap;
        let better = match best {
            None => true,
            Some((bs, bm, bok)) => (ok, matched, -(shift.abs())) > (bok, bm, -(bs.abs())),
        };
        if better {
            best = Some((shift, matched, ok));
        }
    }
    best.expect("shift window is nonempty")
}

/// Compares a record with its database entry using the bundled fixtures and the
/// default client.
pub fn oeis_compare(record: &SequenceRecord, mode: SequenceMode) -> Result<OeisReport> {
    oeis_compare_with(record, mode, &FixtureSet::load()?, &OeisClient::default())
}

pub fn oeis_compare_with(
    record: &SequenceRecord,
    mode: SequenceMode,
    fixtures: &FixtureSet,
    client: &OeisClient,
) -> Result<OeisReport> {
    let id = record.oeis_id.clone().ok_or_else(|| {
        Error::UnknownSequence(format!("<none for {} n={}>", record.family, record.n))
    })?;
    let fixture = fixtures
        .get(&id)
        .ok_or_else(|| Error::UnknownSequence(id.clone()))?;
    if record.terms.len() < MIN_OVERLAP {
        return Err(Error::InsufficientTerms {
            have: record.terms.len(),
            need: MIN_OVERLAP,
        });
    }

    let (reference, source, fallback_reason) = match mode {
        SequenceMode::Offline => (fixture.to_vec(), ReportSource::Fixture, None),
        SequenceMode::Online => match client.fetch(&id) {
            Ok(terms) => (terms, ReportSource::Online, None),
            Err(reason) => (
                fixture.to_vec(),
                ReportSource::OfflineFallback,
                Some(reason),
            ),
        },
    };
    let (offset, matched_terms, passed) = align(&record.terms, &reference);
    Ok(OeisReport {
        id,
        family: record.family,
        n: record.n,
        matched_terms,
        offset,
        passed,
        source,
        fallback_reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn fixture_parsing() {
        let (id, terms) = parse_fixture("A000001\n1,2,3\n").unwrap();
        assert_eq!(id, "A000001");
        assert_eq!(terms, big(&[1, 2, 3]));
        assert!(parse_fixture("").is_err());
        assert!(parse_fixture("A1\n").is_err());
        assert!(parse_fixture("A1\n1,x\n").is_err());
    }

    #[test]
    fn bfile_parsing() {
        let text = "# comment\n0 1\n1 2\n\n2 4\n";
        assert_eq!(parse_bfile(text).unwrap(), big(&[1, 2, 4]));
        assert!(parse_bfile("0 1\n2 4\n").is_err());
        assert!(parse_bfile("# only comments\n").is_err());
        assert!(parse_bfile("0\n").is_err());
    }

    #[test]
    fn alignment_finds_shift() {
        let reference: Vec<BigInt> = (0..30).map(|i| BigInt::from(1) << i).collect();
        let computed: Vec<BigInt> = (1..=20).map(|k| BigInt::from(1) << (k + 1)).collect();
        assert_eq!(align(&computed, &reference), (2, 20, true));
        let mut broken = computed.clone();
        broken[5] += 1;
        let (_, matched, ok) = align(&broken, &reference);
        assert!(!ok);
        assert_eq!(matched, 19);
    }

    #[test]
    fn bundled_fixtures_agree_with_counts() {
        let fixtures = FixtureSet::bundled().unwrap();
        assert_eq!(fixtures.ids().count(), 12);
        for id in sequence_ids() {
            assert!(!sources(id).is_empty(), "{id}");
            for (family, n) in sources(id) {
                let rec = SequenceRecord::build(family, n, 25).unwrap();
                let report = oeis_compare_with(
                    &rec,
                    SequenceMode::Offline,
                    &fixtures,
                    &OeisClient::default(),
                )
                .unwrap();
                assert!(report.passed, "{id} vs {family} n={n}: {report:?}");
                assert!(report.matched_terms >= 20);
            }
        }
    }

    #[test]
    fn bundled_fixtures_are_current() {
        for (id, text) in BUNDLED {
            assert_eq!(generate_fixture(id, 30).unwrap(), text, "{id} is stale");
        }
    }

    #[test]
    fn unknown_ids() {
        let fixtures = FixtureSet::bundled().unwrap();
        let mut rec = SequenceRecord::build(Family::A, 11, 20).unwrap();
        assert!(rec.oeis_id.is_none());
        assert!(matches!(
            oeis_compare_with(
                &rec,
                SequenceMode::Offline,
                &fixtures,
                &OeisClient::default()
            ),
            Err(Error::UnknownSequence(_))
        ));
        rec.oeis_id = Some("A999999".into());
        assert!(matches!(
            oeis_compare_with(&rec, SequenceMode::Offline, &fixtures, &OeisClient::default()),
            Err(Error::UnknownSequence(id)) if id == "A999999"
        ));
        assert!(generate_fixture("A999999", 5).is_err());
    }

    #[test]
    fn too_few_terms() {
        let fixtures = FixtureSet::bundled().unwrap();
        let rec = SequenceRecord::build(Family::A, 3, 5).unwrap();
        assert!(matches!(
            oeis_compare_with(
                &rec,
                SequenceMode::Offline,
                &fixtures,
                &OeisClient::default()
            ),
            Err(Error::InsufficientTerms { have: 5, need: 10 })
        ));
    }

    #[test]
    fn bfile_url() {
        let c = OeisClient::new("http://localhost:1/");
        assert_eq!(
            c.bfile_url("A000079"),
            "http://localhost:1/A000079/b000079.txt"
        );
    }
}
