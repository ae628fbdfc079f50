use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Saved progress of a segmented `robin scan`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResumeToken {
    pub version: u32,
    /// Hash of the command and every setting that affects its result.
    pub fingerprint: String,
    pub lo: u64,
    pub hi: u64,
    pub total_segments: u64,
    pub next_segment: u64,
    pub rigorous: u64,
    pub violators: Vec<u64>,
    pub undecidable: Vec<u64>,
    /// Hash over all of the fields above.
    pub digest: String,
}

fn sha_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

pub fn fingerprint(parts: &[(&str, String)]) -> String {
    let canon: Vec<String> = parts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    sha_hex(canon.join("\n").as_bytes())
}

impl ResumeToken {
    pub fn new(fingerprint: String, lo: u64, hi: u64, total_segments: u64) -> Self {
        let mut t = ResumeToken {
            version: 1,
            fingerprint,
            lo,
            hi,
            total_segments,
            next_segment: 0,
            rigorous: 0,
            violators: Vec::new(),
            undecidable: Vec::new(),
            digest: String::new(),
        };
        t.seal();
        t
    }

    fn compute_digest(&self) -> String {
        let body = format!(
            "{}|{}|{}|{}|{}|{}|{}|{:?}|{:?}",
            self.version,
            self.fingerprint,
            self.lo,
            self.hi,
            self.total_segments,
            self.next_segment,
            self.rigorous,
            self.violators,
            self.undecidable
        );
        sha_hex(body.as_bytes())
    }

    pub fn seal(&mut self) {
        self.digest = self.compute_digest();
    }

    pub fn is_complete(&self) -> bool {
        self.next_segment >= self.total_segments
    }

    /// Reads a token and checks its digest and fingerprint.
    pub fn load(path: &Path, expected_fingerprint: &str) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
        let t: ResumeToken =
            serde_json::from_str(&text).map_err(|e| format!("parsing {}: {e}", path.display()))?;
        if t.digest != t.compute_digest() {
            return Err(format!("{}: digest mismatch, token is corrupt", path.display()));
        }
        if t.fingerprint != expected_fingerprint {
            return Err(format!(
                "{}: token belongs to a different command or configuration",
                path.display()
            ));
        }
        Ok(t)
    }

    /// Writes to a sibling temporary file, then renames it over `path`.
    pub fn store(&self, path: &Path) -> Result<(), String> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let tmp = tempfile_in(dir, path)?;
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            serde_json::to_writer_pretty(&mut f, self)?;
            f.write_all(b"\n")?;
            f.sync_all()?;
            fs::rename(&tmp, path)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            format!("writing {}: {e}", path.display())
        })
    }
}

fn tempfile_in(dir: &Path, path: &Path) -> Result<std::path::PathBuf, String> {
    let name = path
        .file_name()
        .ok_or_else(|| format!("{} is not a file path", path.display()))?
        .to_string_lossy();
    Ok(dir.join(format!(".{name}.{}.tmp", std::process::id())))
}
