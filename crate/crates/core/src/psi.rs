//! Exact `Ψ(x, y)` counting with a shared memo.
//!
//! The count follows the Buchstab-type recurrence
//!
//! ```text
//! Ψ(x, p_k) = Ψ(x, p_{k-1}) + Ψ(x / p_k, p_k)
//! ```
//!
//! over the prime index `k`, with `Ψ(x, p_0) = 1` (only `n = 1`), the
//! `p_1 = 2` column computed by integer doubling, and `Ψ(x, p_k) = ⌊x⌋`
//! once `⌊x⌋ ≤ p_k`. Since `⌊⌊x⌋/p⌋ = ⌊x/p⌋`, every key is an integer pair
//! `(⌊x⌋, k)`, which is what [`PsiMemo`] stores.

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::exact;
use crate::smooth::{primes_upto, PrimeBasis, SmoothParams};
use crate::Natural;

/// Cache of exact counts keyed by `(⌊x⌋, π(y))`.
///
/// Safe to share between threads. Concurrent inserts of the same key always
/// carry the same value, so last-write-wins is harmless.
#[derive(Debug, Default)]
pub struct PsiMemo {
    entries: RwLock<HashMap<(Natural, u32), Natural>>,
}

impl PsiMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, floor_x: Natural, prime_index: u32) -> Option<Natural> {
        self.entries
            .read()
            .unwrap()
            .get(&(floor_x, prime_index))
            .copied()
    }

    pub fn insert(&self, floor_x: Natural, prime_index: u32, value: Natural) {
        self.entries
            .write()
            .unwrap()
            .insert((floor_x, prime_index), value);
    }

    /// Loads a memo from a tab-separated file. A missing file is a cold cache.
    pub fn load(path: &Path) -> Result<Self> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Self::new()),
            Err(source) => {
                return Err(Error::Io {
                    path: path.to_path_buf(),
                    source,
                })
            }
        };
        Self::parse(&text, path)
    }

    fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut map = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                path: PathBuf::from(path),
                line: i + 1,
                msg: format!("{msg}: {line:?}"),
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(bad("expected 3 tab-separated fields"));
            }
            let floor_x: Natural = fields[0].parse().map_err(|_| bad("bad floor_x"))?;
            let k: u32 = fields[1].parse().map_err(|_| bad("bad prime_index"))?;
            let v: Natural = fields[2].parse().map_err(|_| bad("bad psi_value"))?;
            map.insert((floor_x, k), v);
        }
        Ok(PsiMemo {
            entries: RwLock::new(map),
        })
    }

    /// Writes every entry, sorted by key, as `floor_x<TAB>prime_index<TAB>psi_value`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let io_err = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut rows: Vec<_> = self
            .entries
            .read()
            .unwrap()
            .iter()
            .map(|(&(x, k), &v)| (x, k, v))
            .collect();
        rows.sort_unstable();
        let file = fs::File::create(path).map_err(io_err)?;
        let mut w = BufWriter::new(file);
        for (x, k, v) in rows {
            writeln!(w, "{x}\t{k}\t{v}").map_err(io_err)?;
        }
        w.flush().map_err(io_err)
    }
}

/// `Ψ(x, y)` for validated parameters.
pub fn psi_exact(params: SmoothParams, memo: &PsiMemo) -> Result<Natural> {
    let limit = params.floor_x()?;
    let basis = primes_upto(params.y())?;
    Ok(psi_count(limit, &basis, memo))
}

/// `Ψ(x, y)` for an arbitrary real `x ≥ 0` and real `y`. `y < 2` counts only `n = 1`.
pub fn psi_real(x: f64, y: f64, memo: &PsiMemo) -> Result<Natural> {
    let limit = exact::floor_u128(x)?;
    if y < 2.0 {
        return Ok(limit.min(1));
    }
    Ok(psi_count(limit, &primes_upto(y)?, memo))
}

/// `Ψ` at an integer limit over the full basis.
pub fn psi_count(limit: Natural, basis: &PrimeBasis, memo: &PsiMemo) -> Natural {
    count(limit, basis.primes(), memo)
}

fn count(limit: Natural, primes: &[u64], memo: &PsiMemo) -> Natural {
    let k = primes.len();
    if limit == 0 {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    if limit <= primes[k - 1] as Natural {
        return limit;
    }
    if k == 1 {
        return powers_of_two_upto(limit);
    }
    if let Some(v) = memo.get(limit, k as u32) {
        return v;
    }
    let p = primes[k - 1] as Natural;
    let v = count(limit, &primes[..k - 1], memo) + count(limit / p, primes, memo);
    memo.insert(limit, k as u32, v);
    v
}

/// `Ψ(x, 2) = 1 + ⌊log₂ x⌋`, counted by doubling.
pub fn powers_of_two_upto(limit: Natural) -> Natural {
    if limit == 0 {
        return 0;
    }
    let mut n = 0;
    let mut power: Natural = 1;
    while power <= limit {
        n += 1;
        match power.checked_mul(2) {
            Some(next) => power = next,
            None => break,
        }
    }
    n
}
