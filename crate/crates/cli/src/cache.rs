//! Append-only JSON-lines log of computed counts.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use frozen_asm::ExactInteger;
use serde::{Deserialize, Serialize};

pub const CACHE_DIR_ENV: &str = "FROZEN_ASM_CACHE_DIR";
const FILE_NAME: &str = "results.jsonl";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub method: String,
    pub n: u32,
    pub s: u32,
    /// Decimal digits; integers never go through floats.
    pub value: String,
    pub wall_time: f64,
    pub tool_version: String,
}

impl ResultRecord {
    pub fn new(method: &str, n: u32, s: u32, value: &ExactInteger, wall_time: f64) -> Self {
        ResultRecord {
            method: method.to_string(),
            n,
            s,
            value: value.to_string(),
            wall_time,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn integer(&self) -> Result<ExactInteger, String> {
        ExactInteger::from_str_radix(&self.value, 10)
            .map_err(|e| format!("bad value {:?} in cached record: {e}", self.value))
    }
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$FROZEN_ASM_CACHE_DIR`, else the platform cache directory.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .or_else(|| dirs::cache_dir().map(|d| d.join("frozen-asm")))
            .unwrap_or_else(|| PathBuf::from(".frozen-asm-cache"));
        Cache::new(dir)
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(FILE_NAME)
    }

    /// One line per record, written under an exclusive lock.
    pub fn append(&self, rec: &ResultRecord) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut line = serde_json::to_string(rec).map_err(std::io::Error::other)?;
        line.push('\n');
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.path())?;
        f.lock()?;
        let res = f.write_all(line.as_bytes()).and_then(|_| f.flush());
        f.unlock()?;
        res
    }

    /// Every record in file order; a missing file is an empty cache.
    pub fn load(&self) -> Result<Vec<ResultRecord>, String> {
        read_records(&self.path())
    }
}

fn read_records(path: &Path) -> Result<Vec<ResultRecord>, String> {
    let f = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(format!("{}: {e}", path.display())),
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| format!("{}: {e}", path.display()))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ResultRecord = serde_json::from_str(&line)
            .map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?;
        out.push(rec);
    }
    Ok(out)
}
