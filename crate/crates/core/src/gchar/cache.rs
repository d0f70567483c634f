use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::gchar::Character;
use crate::rootsys::{LieType, Weight};

pub const CACHE_ENV: &str = "LOOPMULT_CACHE";

/// On-disk table of simple characters keyed by (type, characteristic, λ).
///
/// Files hold the character JSON format. A corrupt or mismatched file is
/// ignored and overwritten.
#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    write_lock: Mutex<()>,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache {
            dir: dir.into(),
            write_lock: Mutex::new(()),
        }
    }

    /// Cache rooted at `$LOOPMULT_CACHE`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(DiskCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, t: LieType, characteristic: u64, lambda: &Weight) -> PathBuf {
        let coords: Vec<String> = lambda.coords().iter().map(|c| c.to_string()).collect();
        self.dir
            .join(format!("{t}_{characteristic}_{}.json", coords.join("_")))
    }

    pub fn load(&self, t: LieType, characteristic: u64, lambda: &Weight) -> Option<Character> {
        let text = fs::read_to_string(self.path(t, characteristic, lambda)).ok()?;
        let ch: Character = serde_json::from_str(&text).ok()?;
        (ch.lie_type() == t && ch.get(lambda) == 1).then_some(ch)
    }

    pub fn store(&self, characteristic: u64, lambda: &Weight, ch: &Character) {
        let _guard = self.write_lock.lock().expect("cache lock poisoned");
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let path = self.path(ch.lie_type(), characteristic, lambda);
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        let Ok(text) = serde_json::to_string(ch) else {
            return;
        };
        // A failed write only costs a recomputation later.
        if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}
