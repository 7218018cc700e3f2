//! Optional on-disk cache of the reduced universal polynomials, enabled by
//! setting `SWANLAB_CACHE_DIR`. Unreadable or stale files are ignored.

use std::path::PathBuf;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{WittContext, WittPoly};

const SCHEMA: &str = "swanlab-witt-cache/1";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: String,
    p: u64,
    m: usize,
    sum: Vec<WittPoly>,
    neg: Vec<WittPoly>,
    q: Vec<WittPoly>,
}

fn path(p: u64, m: usize) -> Option<PathBuf> {
    let dir = std::env::var_os("SWANLAB_CACHE_DIR")?;
    Some(PathBuf::from(dir).join(format!("witt-p{p}-m{m}.json")))
}

pub(super) fn load(p: u64, m: usize) -> Option<WittContext> {
    let text = std::fs::read_to_string(path(p, m)?).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.schema != SCHEMA || file.p != p || file.m != m {
        return None;
    }
    let len = m + 1;
    if file.sum.len() != len || file.neg.len() != len || file.q.len() != len {
        return None;
    }
    Some(WittContext {
        p,
        m,
        sum: file.sum,
        neg: file.neg,
        q: file.q,
        product: OnceLock::new(),
        frobenius: OnceLock::new(),
    })
}

pub(super) fn store(ctx: &WittContext) {
    let Some(path) = path(ctx.p, ctx.m) else {
        return;
    };
    let file = CacheFile {
        schema: SCHEMA.to_string(),
        p: ctx.p,
        m: ctx.m,
        sum: ctx.sum.clone(),
        neg: ctx.neg.clone(),
        q: ctx.q.clone(),
    };
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    if let Ok(text) = serde_json::to_string(&file) {
        let tmp = path.with_extension("json.tmp");
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}
