//! Checksummed, cached dataset downloads.
//!
//! Cache layout: `<cache_dir>/<name>/<sha256 prefix>/<file>`, with a
//! `<file>.sha256` sidecar in `sha256sum` format. Entries without a pinned
//! digest live under `unpinned/`.

use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::ingest::manifest::{DatasetEntry, DatasetManifest};

pub const CACHE_ENV: &str = "TEMPOGRAPH_CACHE";

/// Source of dataset bytes.
pub trait Transport: Send + Sync {
    /// Streams the resource at `url` into `out`, returning the byte count.
    fn download(&self, url: &str, out: &mut dyn Write) -> Result<u64>;
}

/// `http(s)://` through ureq and `file://` from the local filesystem.
#[derive(Debug, Default, Clone, Copy)]
pub struct DefaultTransport;

impl Transport for DefaultTransport {
    fn download(&self, url: &str, out: &mut dyn Write) -> Result<u64> {
        let net_err = |reason: String| Error::Network {
            url: url.to_string(),
            reason,
        };
        if let Some(path) = url.strip_prefix("file://") {
            let mut f = File::open(path).map_err(|e| net_err(e.to_string()))?;
            return io::copy(&mut f, out).map_err(|e| net_err(e.to_string()));
        }
        let resp = ureq::get(url).call().map_err(|e| net_err(e.to_string()))?;
        let mut body = resp.into_body().into_reader();
        io::copy(&mut body, out).map_err(|e| net_err(e.to_string()))
    }
}

/// Default cache root: `$TEMPOGRAPH_CACHE`, else the platform cache dir.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(dir);
    }
    dirs::cache_dir()
        .map(|d| d.join("tempograph"))
        .unwrap_or_else(|| PathBuf::from(".tempograph-cache"))
}

pub struct Fetcher<T = DefaultTransport> {
    cache_dir: PathBuf,
    transport: T,
}

impl Fetcher<DefaultTransport> {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        Fetcher {
            cache_dir: cache_dir.into(),
            transport: DefaultTransport,
        }
    }
}

impl<T: Transport> Fetcher<T> {
    pub fn with_transport(cache_dir: impl Into<PathBuf>, transport: T) -> Self {
        Fetcher {
            cache_dir: cache_dir.into(),
            transport,
        }
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    /// Where `entry` is (or will be) stored.
    pub fn cached_path(&self, entry: &DatasetEntry) -> PathBuf {
        let prefix = entry.sha256.as_deref().map_or("unpinned", |s| &s[..16]);
        let file = match &entry.archive_member {
            Some(member) => file_name(member),
            None => file_name(&entry.url),
        };
        self.cache_dir.join(&entry.name).join(prefix).join(file)
    }

    /// Returns a verified local copy, downloading only when the cache is
    /// missing or fails verification.
    pub fn fetch(&self, entry: &DatasetEntry) -> Result<PathBuf> {
        let target = self.cached_path(entry);
        let dir = target.parent().expect("cache path has a parent");
        fs::create_dir_all(dir)?;

        let lock = File::create(self.cache_dir.join(&entry.name).join(".lock"))?;
        lock.lock()?;

        if self.verify_cached(entry, &target)? {
            return Ok(target);
        }
        let _ = fs::remove_file(&target);
        let _ = fs::remove_file(sidecar(&target));

        let mut tmp = NamedTempFile::new_in(dir)?;
        let digest = {
            let mut w = HashingWriter::new(io::BufWriter::new(tmp.as_file_mut()));
            self.transport.download(&entry.url, &mut w)?;
            w.finish()?
        };
        if let Some(expected) = &entry.sha256 {
            if !digest.eq_ignore_ascii_case(expected) {
                // dropping `tmp` deletes the bad download
                return Err(Error::ChecksumMismatch {
                    path: target,
                    expected: expected.clone(),
                    actual: digest,
                });
            }
        }

        let final_digest = match &entry.archive_member {
            Some(member) => {
                let mut out = NamedTempFile::new_in(dir)?;
                let d = extract_member(tmp.reopen()?, member, out.as_file_mut())?;
                out.persist(&target).map_err(|e| e.error)?;
                d
            }
            None => {
                tmp.persist(&target).map_err(|e| e.error)?;
                digest
            }
        };
        write_sidecar(&target, &final_digest)?;
        Ok(target)
    }

    fn verify_cached(&self, entry: &DatasetEntry, target: &Path) -> Result<bool> {
        if !target.is_file() {
            return Ok(false);
        }
        let recorded = match fs::read_to_string(sidecar(target)) {
            Ok(s) => s.split_whitespace().next().unwrap_or_default().to_string(),
            Err(_) => return Ok(false),
        };
        let actual = sha256_file(target)?;
        let pinned_ok = match (&entry.sha256, &entry.archive_member) {
            (Some(pin), None) => pin.eq_ignore_ascii_case(&actual),
            _ => true,
        };
        Ok(pinned_ok && recorded.eq_ignore_ascii_case(&actual))
    }
}

/// Fetches `name` from the embedded manifest over the default transport.
pub fn fetch_dataset(name: &str, cache_dir: impl Into<PathBuf>) -> Result<PathBuf> {
    let manifest = DatasetManifest::builtin();
    Fetcher::new(cache_dir).fetch(manifest.get(name)?)
}

fn file_name(url_or_path: &str) -> String {
    let no_query = url_or_path.split(['?', '#']).next().unwrap_or_default();
    match no_query.rsplit('/').next() {
        Some(name) if !name.is_empty() => name.to_string(),
        _ => "download".to_string(),
    }
}

fn sidecar(target: &Path) -> PathBuf {
    let mut name = target.file_name().unwrap_or_default().to_os_string();
    name.push(".sha256");
    target.with_file_name(name)
}

fn write_sidecar(target: &Path, digest: &str) -> Result<()> {
    let name = target.file_name().unwrap_or_default().to_string_lossy();
    let mut tmp = NamedTempFile::new_in(target.parent().expect("parent"))?;
    writeln!(tmp, "{digest}  {name}")?;
    tmp.persist(sidecar(target)).map_err(|e| e.error)?;
    Ok(())
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let mut r = BufReader::with_capacity(1 << 20, File::open(path)?);
    let mut w = HashingWriter::new(io::sink());
    io::copy(&mut r, &mut w)?;
    w.finish()
}

fn extract_member(archive: File, member: &str, out: &mut File) -> Result<String> {
    let bad = |reason: String| Error::Manifest(format!("archive member '{member}': {reason}"));
    let mut zip = zip::ZipArchive::new(BufReader::new(archive)).map_err(|e| bad(e.to_string()))?;
    let index = (0..zip.len())
        .find(|&i| {
            match zip.name_for_index(i) {
                Some(Ok(n)) => n == member || file_name(&n) == file_name(member),
                _ => false,
            }
        })
        .ok_or_else(|| bad("not found in archive".into()))?;
    let mut entry = zip.by_index(index).map_err(|e| bad(e.to_string()))?;
    let mut w = HashingWriter::new(io::BufWriter::new(out));
    io::copy(&mut entry, &mut w)?;
    w.finish()
}

struct HashingWriter<W: Write> {
    inner: W,
    hasher: Sha256,
}

impl<W: Write> HashingWriter<W> {
    fn new(inner: W) -> Self {
        HashingWriter {
            inner,
            hasher: Sha256::new(),
        }
    }

    fn finish(mut self) -> Result<String> {
        self.inner.flush()?;
        Ok(hex::encode(self.hasher.finalize()))
    }
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Hex SHA-256 of an in-memory buffer.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
