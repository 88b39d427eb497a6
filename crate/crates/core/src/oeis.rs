//! Sequence lookups against the OEIS, with a disk cache and a bundled
//! offline snapshot.
//!
//! Cache files hold the raw response body and are replayed as-is, so a
//! cached answer is byte-identical to the live one that produced it.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};
use std::thread;
use std::time::Duration;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DEFAULT_BASE_URL: &str = "https://oeis.org";
pub const MIN_QUERY_TERMS: usize = 4;
const SNAPSHOT_JSON: &str = include_str!("../../../data/oeis_snapshot.json");

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("malformed OEIS id {0:?} (expected A followed by six digits)")]
    MalformedId(String),
    #[error("at least {MIN_QUERY_TERMS} terms are needed, got {0}")]
    TooFewTerms(usize),
    #[error("{0} not found")]
    NotFound(String),
    #[error("request to {url} failed: {message}; retry later or use --offline")]
    Network { url: String, message: String },
    #[error("unexpected response: {0}")]
    Parse(String),
    #[error("cache error at {path}: {source}")]
    Cache {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisEntry {
    pub id: String,
    pub name: String,
    #[serde(with = "big_terms")]
    pub terms: Vec<BigInt>,
}

impl OeisEntry {
    /// Whether `run` occurs as a contiguous block of the stored terms.
    pub fn contains_run(&self, run: &[BigInt]) -> bool {
        !run.is_empty() && self.terms.windows(run.len()).any(|w| w == run)
    }
}

/// Terms serialize as JSON numbers when they fit in an `i64` and as decimal
/// strings otherwise; both forms are accepted when reading.
mod big_terms {
    use super::*;
    use num_traits::ToPrimitive;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: serde::Serializer>(terms: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for t in terms {
            match t.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&t.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let values = Vec::<Value>::deserialize(d)?;
        values
            .iter()
            .map(|v| match v {
                Value::Number(n) => n.to_string().parse().map_err(D::Error::custom),
                Value::String(s) => s.trim().parse().map_err(D::Error::custom),
                other => Err(D::Error::custom(format!("bad term {other}"))),
            })
            .collect()
    }
}

pub fn validate_id(id: &str) -> Result<(), OeisError> {
    let b = id.as_bytes();
    if b.len() == 7 && b[0] == b'A' && b[1..].iter().all(u8::is_ascii_digit) {
        Ok(())
    } else {
        Err(OeisError::MalformedId(id.to_string()))
    }
}

/// The bundled snapshot, parsed once.
pub fn snapshot() -> &'static [OeisEntry] {
    static SNAP: OnceLock<Vec<OeisEntry>> = OnceLock::new();
    SNAP.get_or_init(|| serde_json::from_str(SNAPSHOT_JSON).expect("bundled snapshot is valid"))
}

/// Ids of snapshot entries containing `terms` as a contiguous run. Fewer
/// than four terms never match.
pub fn snapshot_matches(terms: &[u64]) -> Vec<String> {
    if terms.len() < MIN_QUERY_TERMS {
        return Vec::new();
    }
    let run: Vec<BigInt> = terms.iter().map(|&t| BigInt::from(t)).collect();
    snapshot()
        .iter()
        .filter(|e| e.contains_run(&run))
        .map(|e| e.id.clone())
        .collect()
}

/// Known citation conflicts, reported next to lookups of the ids involved.
pub fn citation_note(id: &str) -> Option<&'static str> {
    match id {
        "A000744" | "A000774" => Some(
            "the class of (123,{0},{1}) is cited both as A000744 and as A000774; its counts match A000774",
        ),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LookupMode {
    /// Always ask the server; the answer is written to the cache if one is
    /// configured.
    Live,
    /// Replay a cached answer when present, otherwise ask the server.
    Cached,
    /// Only the bundled snapshot.
    Offline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Snapshot,
    Cache,
    Network,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Snapshot => "snapshot",
            Source::Cache => "cache",
            Source::Network => "network",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookupResult {
    pub entries: Vec<OeisEntry>,
    pub source: Source,
    /// Set when an offline lookup found nothing.
    pub snapshot_miss: bool,
    /// Response body as received or replayed; `None` for snapshot answers.
    pub raw: Option<String>,
}

#[derive(Debug, Clone)]
pub struct OeisConfig {
    pub base_url: String,
    pub cache_dir: Option<PathBuf>,
    pub attempts: u32,
    pub timeout: Duration,
}

impl Default for OeisConfig {
    fn default() -> Self {
        OeisConfig {
            base_url: DEFAULT_BASE_URL.to_string(),
            cache_dir: None,
            attempts: 3,
            timeout: Duration::from_secs(20),
        }
    }
}

impl OeisConfig {
    /// Reads `BIVINC_OEIS_URL` and `BIVINC_CACHE_DIR`.
    pub fn from_env() -> Self {
        let mut cfg = OeisConfig::default();
        if let Ok(url) = std::env::var("BIVINC_OEIS_URL") {
            if !url.is_empty() {
                cfg.base_url = url;
            }
        }
        if let Ok(dir) = std::env::var("BIVINC_CACHE_DIR") {
            if !dir.is_empty() {
                cfg.cache_dir = Some(PathBuf::from(dir));
            }
        }
        cfg
    }
}

pub struct OeisClient {
    config: OeisConfig,
}

static CACHE_WRITER: Mutex<()> = Mutex::new(());

impl OeisClient {
    pub fn new(config: OeisConfig) -> Self {
        OeisClient { config }
    }

    pub fn config(&self) -> &OeisConfig {
        &self.config
    }

    pub fn lookup_by_terms(&self, terms: &[BigInt], mode: LookupMode) -> Result<LookupResult, OeisError> {
        if terms.len() < MIN_QUERY_TERMS {
            return Err(OeisError::TooFewTerms(terms.len()));
        }
        if mode == LookupMode::Offline {
            let entries: Vec<_> = snapshot().iter().filter(|e| e.contains_run(terms)).cloned().collect();
            return Ok(offline(entries));
        }
        let q = terms.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",");
        let (raw, source) = self.fetch(&format!("terms:{q}"), &q, mode)?;
        let entries = parse_response(&raw)?.into_iter().filter(|e| e.contains_run(terms)).collect();
        Ok(LookupResult {
            entries,
            source,
            snapshot_miss: false,
            raw: Some(raw),
        })
    }

    pub fn lookup_by_id(&self, id: &str, mode: LookupMode) -> Result<OeisEntry, OeisError> {
        validate_id(id)?;
        if mode == LookupMode::Offline {
            return snapshot()
                .iter()
                .find(|e| e.id == id)
                .cloned()
                .ok_or_else(|| OeisError::NotFound(id.to_string()));
        }
        let (raw, _) = self.fetch(&format!("id:{id}"), &format!("id:{id}"), mode)?;
        parse_response(&raw)?
            .into_iter()
            .find(|e| e.id == id)
            .ok_or_else(|| OeisError::NotFound(id.to_string()))
    }

    fn fetch(&self, key: &str, query: &str, mode: LookupMode) -> Result<(String, Source), OeisError> {
        let path = self.config.cache_dir.as_ref().map(|d| cache_path(d, key));
        if mode == LookupMode::Cached {
            if let Some(p) = &path {
                if p.exists() {
                    let raw = fs::read_to_string(p).map_err(|source| OeisError::Cache { path: p.clone(), source })?;
                    return Ok((raw, Source::Cache));
                }
            }
        }
        let url = format!("{}/search?q={}&fmt=json", self.config.base_url.trim_end_matches('/'), query);
        let raw = self.get_with_retry(&url)?;
        if let Some(p) = &path {
            write_atomically(p, &raw)?;
        }
        Ok((raw, Source::Network))
    }

    fn get_with_retry(&self, url: &str) -> Result<String, OeisError> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.config.timeout))
            .build()
            .into();
        let attempts = self.config.attempts.max(1);
        let mut last = String::new();
        for attempt in 0..attempts {
            if attempt > 0 {
                thread::sleep(Duration::from_millis(200 << attempt));
            }
            match agent.get(url).call() {
                Ok(mut resp) => match resp.body_mut().read_to_string() {
                    Ok(body) => return Ok(body),
                    Err(e) => last = e.to_string(),
                },
                Err(ureq::Error::StatusCode(code)) if code != 429 && code < 500 => {
                    return Err(OeisError::Network {
                        url: url.to_string(),
                        message: format!("HTTP status {code}"),
                    });
                }
                Err(e) => last = e.to_string(),
            }
        }
        Err(OeisError::Network {
            url: url.to_string(),
            message: format!("{last} (after {attempts} attempts)"),
        })
    }
}

fn offline(entries: Vec<OeisEntry>) -> LookupResult {
    LookupResult {
        snapshot_miss: entries.is_empty(),
        entries,
        source: Source::Snapshot,
        raw: None,
    }
}

/// Cache file for a normalized query: the hex SHA-256 of the key.
pub fn cache_path(dir: &Path, key: &str) -> PathBuf {
    let digest = Sha256::digest(key.as_bytes());
    dir.join(format!("{}.json", hex::encode(digest)))
}

fn write_atomically(path: &Path, body: &str) -> Result<(), OeisError> {
    let err = |source| OeisError::Cache { path: path.to_path_buf(), source };
    let _guard = CACHE_WRITER.lock().unwrap_or_else(|e| e.into_inner());
    let dir = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(dir).map_err(err)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(err)?;
    f.write_all(body.as_bytes()).map_err(err)?;
    f.sync_all().map_err(err)?;
    fs::rename(&tmp, path).map_err(err)
}

/// Accepts both a bare array of results and an object with a `results`
/// field; `null` means no results.
pub fn parse_response(raw: &str) -> Result<Vec<OeisEntry>, OeisError> {
    let v: Value = serde_json::from_str(raw).map_err(|e| OeisError::Parse(e.to_string()))?;
    let results = match &v {
        Value::Null => return Ok(Vec::new()),
        Value::Array(a) => a.as_slice(),
        Value::Object(o) => match o.get("results") {
            Some(Value::Array(a)) => a.as_slice(),
            Some(Value::Null) | None => return Ok(Vec::new()),
            Some(other) => return Err(OeisError::Parse(format!("results is {other}"))),
        },
        other => return Err(OeisError::Parse(format!("unexpected top level {other}"))),
    };
    results.iter().map(parse_result).collect()
}

fn parse_result(v: &Value) -> Result<OeisEntry, OeisError> {
    let number = v
        .get("number")
        .and_then(Value::as_u64)
        .ok_or_else(|| OeisError::Parse("result without a number".into()))?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or_default().to_string();
    let data = v.get("data").and_then(Value::as_str).unwrap_or_default();
    let terms = data
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| OeisError::Parse(format!("bad term {t:?}"))))
        .collect::<Result<_, _>>()?;
    Ok(OeisEntry {
        id: format!("A{number:06}"),
        name,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{BufRead, BufReader};
    use std::net::TcpListener;
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Arc;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&t| BigInt::from(t)).collect()
    }

    const CITED: [&str; 20] = [
        "A000012", "A000142", "A000255", "A001710", "A094258", "A000108", "A000110", "A022493", "A138265", "A111004",
        "A003149", "A000522", "A000774", "A052169", "A002628", "A001286", "A033312", "A001715", "A001563", "A018927",
    ];

    #[test]
    fn snapshot_covers_cited_ids() {
        let client = OeisClient::new(OeisConfig::default());
        for id in CITED {
            let e = client.lookup_by_id(id, LookupMode::Offline).unwrap();
            assert_eq!(e.terms.len(), 12, "{id}");
        }
        assert_eq!(snapshot().len(), CITED.len());
    }

    #[test]
    fn id_validation() {
        let client = OeisClient::new(OeisConfig::default());
        assert!(matches!(client.lookup_by_id("A00014", LookupMode::Offline), Err(OeisError::MalformedId(_))));
        assert!(matches!(client.lookup_by_id("a000142", LookupMode::Offline), Err(OeisError::MalformedId(_))));
        assert!(matches!(client.lookup_by_id("A999999", LookupMode::Offline), Err(OeisError::NotFound(_))));
        let e = client.lookup_by_id("A000142", LookupMode::Offline).unwrap();
        assert_eq!(&e.terms[..5], big(&[1, 1, 2, 6, 24]).as_slice());
        let e = client.lookup_by_id("A000255", LookupMode::Offline).unwrap();
        assert_eq!(&e.terms[..5], big(&[1, 1, 3, 11, 53]).as_slice());
    }

    #[test]
    fn offline_term_lookup() {
        let client = OeisClient::new(OeisConfig::default());
        let ids = |t: &[i64]| -> Vec<String> {
            client
                .lookup_by_terms(&big(t), LookupMode::Offline)
                .unwrap()
                .entries
                .into_iter()
                .map(|e| e.id)
                .collect()
        };
        assert!(ids(&[1, 2, 5, 15, 52, 203]).contains(&"A000110".to_string()));
        assert!(ids(&[1, 2, 5, 15, 53, 217, 1014]).contains(&"A022493".to_string()));
        let miss = client.lookup_by_terms(&big(&[9, 9, 9, 9]), LookupMode::Offline).unwrap();
        assert!(miss.entries.is_empty() && miss.snapshot_miss);
        assert!(matches!(client.lookup_by_terms(&big(&[1, 2, 5]), LookupMode::Offline), Err(OeisError::TooFewTerms(3))));
    }

    #[test]
    fn snapshot_matches_requires_four_terms() {
        assert!(snapshot_matches(&[1, 1, 1]).is_empty());
        assert_eq!(snapshot_matches(&[1, 1, 1, 1]), ["A000012"]);
        assert_eq!(snapshot_matches(&[1, 2, 5, 17, 74]), ["A000774"]);
    }

    #[test]
    fn entry_json_round_trip_with_large_terms() {
        let e = OeisEntry {
            id: "A000142".into(),
            name: "n!".into(),
            terms: vec![BigInt::from(1), "121645100408832000000".parse().unwrap()],
        };
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("\"121645100408832000000\""));
        assert_eq!(serde_json::from_str::<OeisEntry>(&s).unwrap(), e);
    }

    #[test]
    fn parse_both_response_shapes() {
        let arr = r#"[{"number":110,"name":"Bell","data":"1,1,2,5,15,52"}]"#;
        let obj = r#"{"count":1,"results":[{"number":110,"name":"Bell","data":"1,1,2,5,15,52"}]}"#;
        assert_eq!(parse_response(arr).unwrap(), parse_response(obj).unwrap());
        assert_eq!(parse_response(arr).unwrap()[0].id, "A000110");
        assert!(parse_response("null").unwrap().is_empty());
        assert!(parse_response(r#"{"results":null}"#).unwrap().is_empty());
        assert!(parse_response("<html>").is_err());
    }

    /// Serves `body` to every request and counts the requests.
    fn serve(body: &'static str) -> (String, Arc<AtomicUsize>) {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        let hits = Arc::new(AtomicUsize::new(0));
        let counter = hits.clone();
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(mut stream) = stream else { break };
                counter.fetch_add(1, Ordering::SeqCst);
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut line = String::new();
                while reader.read_line(&mut line).is_ok_and(|n| n > 0) && line != "\r\n" {
                    line.clear();
                }
                let resp = format!(
                    "HTTP/1.1 200 OK\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{}",
                    body.len(),
                    body
                );
                let _ = stream.write_all(resp.as_bytes());
            }
        });
        (format!("http://{addr}"), hits)
    }

    /// An address with nothing listening.
    fn dead_url() -> String {
        let l = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = l.local_addr().unwrap();
        drop(l);
        format!("http://{addr}")
    }

    const BODY: &str = r#"[{"number":22493,"name":"Fishburn numbers","data":"1,1,2,5,15,53,217,1014,5335"}]"#;

    #[test]
    fn live_then_cached_replay_is_byte_identical() {
        let (url, hits) = serve(BODY);
        let dir = tempfile::tempdir().unwrap();
        let cfg = OeisConfig {
            base_url: url,
            cache_dir: Some(dir.path().to_path_buf()),
            attempts: 1,
            ..OeisConfig::default()
        };
        let terms = big(&[1, 2, 5, 15, 53]);
        let live = OeisClient::new(cfg.clone()).lookup_by_terms(&terms, LookupMode::Live).unwrap();
        assert_eq!(live.source, Source::Network);
        assert_eq!(live.entries[0].id, "A022493");
        assert_eq!(hits.load(Ordering::SeqCst), 1);

        let offline_cfg = OeisConfig { base_url: dead_url(), ..cfg };
        let replay = OeisClient::new(offline_cfg.clone()).lookup_by_terms(&terms, LookupMode::Cached).unwrap();
        assert_eq!(replay.source, Source::Cache);
        assert_eq!(replay.raw, live.raw);
        assert_eq!(replay.entries, live.entries);
        let file = cache_path(dir.path(), "terms:1,2,5,15,53");
        assert_eq!(fs::read(file).unwrap(), BODY.as_bytes());

        let err = OeisClient::new(offline_cfg).lookup_by_terms(&terms, LookupMode::Live).unwrap_err();
        assert!(matches!(err, OeisError::Network { .. }));
        assert!(err.to_string().contains("retry"));
    }

    #[test]
    fn live_lookup_by_id() {
        let (url, _) = serve(BODY);
        let cfg = OeisConfig {
            base_url: url,
            attempts: 1,
            ..OeisConfig::default()
        };
        let client = OeisClient::new(cfg);
        assert_eq!(client.lookup_by_id("A022493", LookupMode::Live).unwrap().terms.len(), 9);
        assert!(matches!(client.lookup_by_id("A000001", LookupMode::Live), Err(OeisError::NotFound(_))));
    }

    #[test]
    fn cache_keys_are_stable() {
        let d = Path::new("/c");
        assert_eq!(cache_path(d, "id:A000142"), cache_path(d, "id:A000142"));
        assert_ne!(cache_path(d, "id:A000142"), cache_path(d, "id:A000143"));
    }

    #[test]
    fn citation_conflict_is_noted() {
        assert!(citation_note("A000744").unwrap().contains("A000774"));
        assert!(citation_note("A000108").is_none());
    }
}
