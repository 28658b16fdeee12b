use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{f_coefficient, weight_table, ChordMap};
use crate::diagrams::{enumerate_matchings, Matching, SymTLDiagram, DEFAULT_MATCHING_BOUND};
use crate::error::{Error, Result};

/// On-disk record of `f_D(π)` for one matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FTableFile {
    pub n: usize,
    pub pi: Vec<[usize; 2]>,
    pub seed: u64,
    pub f: BTreeMap<String, i64>,
}

impl FTableFile {
    pub fn new(pi: &Matching, seed: u64, f: &BTreeMap<SymTLDiagram, i64>) -> FTableFile {
        FTableFile {
            n: pi.n(),
            pi: pi.edges().iter().map(|&(i, j)| [i, j]).collect(),
            seed,
            f: f.iter().map(|(d, &w)| (d.key(), w)).collect(),
        }
    }

    pub fn file_name(pi: &Matching, seed: u64) -> String {
        let body: Vec<String> = pi.edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
        format!("f-n{}-{}-s{}.json", pi.n(), body.join("_"), seed)
    }

    pub fn decode(&self) -> Result<(Matching, BTreeMap<SymTLDiagram, i64>)> {
        let pi = Matching::new(self.n, self.pi.iter().map(|p| (p[0], p[1])).collect())?;
        let f = self
            .f
            .iter()
            .map(|(k, &w)| Ok((SymTLDiagram::parse_key(self.n, k)?, w)))
            .collect::<Result<_>>()?;
        Ok((pi, f))
    }
}

/// `f_D(π)` for all matchings `π` of `[2n]`.
#[derive(Clone, Debug)]
pub struct FTable {
    pub n: usize,
    pub seed: u64,
    pub rows: Vec<(Matching, BTreeMap<SymTLDiagram, i64>)>,
}

fn memo() -> &'static Mutex<HashMap<(usize, u64), Arc<FTable>>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, u64), Arc<FTable>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FTable {
    pub fn compute(n: usize, seed: u64, class_bound: usize) -> Result<FTable> {
        let rows = enumerate_matchings(n, DEFAULT_MATCHING_BOUND)?
            .into_iter()
            .map(|pi| {
                let f = weight_table(&ChordMap::embed_nu_pi(&pi, seed), class_bound)?;
                Ok((pi, f))
            })
            .collect::<Result<_>>()?;
        Ok(FTable { n, seed, rows })
    }

    /// Process-wide memoized table; reads and writes per-matching files in
    /// `dir` when one is given.
    pub fn cached(n: usize, seed: u64, dir: Option<&Path>) -> Result<Arc<FTable>> {
        if let Some(t) = memo().lock().unwrap().get(&(n, seed)) {
            return Ok(t.clone());
        }
        let table = match dir {
            Some(dir) => {
                let rows = enumerate_matchings(n, DEFAULT_MATCHING_BOUND)?
                    .into_iter()
                    .map(|pi| {
                        let f = load_or_compute(dir, &pi, seed, false)?;
                        Ok((pi, f))
                    })
                    .collect::<Result<_>>()?;
                FTable { n, seed, rows }
            }
            None => FTable::compute(n, seed, super::DEFAULT_CLASS_BOUND)?,
        };
        let table = Arc::new(table);
        memo().lock().unwrap().insert((n, seed), table.clone());
        Ok(table)
    }

    pub fn get(&self, pi: &Matching) -> Option<&BTreeMap<SymTLDiagram, i64>> {
        self.rows.iter().find(|(p, _)| p == pi).map(|(_, f)| f)
    }
}

pub fn cache_path(dir: &Path, pi: &Matching, seed: u64) -> PathBuf {
    dir.join(FTableFile::file_name(pi, seed))
}

/// Reads the cached row for `π`, or computes and writes it. With `verify`,
/// a cached row is recomputed and a mismatch is an error.
pub fn load_or_compute(
    dir: &Path,
    pi: &Matching,
    seed: u64,
    verify: bool,
) -> Result<BTreeMap<SymTLDiagram, i64>> {
    let path = cache_path(dir, pi, seed);
    if path.exists() {
        let file: FTableFile = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
        let (stored_pi, f) = file.decode()?;
        if &stored_pi != pi || file.seed != seed {
            return Err(Error::Parse(format!("{} holds another table", path.display())));
        }
        if verify && f_coefficient(pi, seed)? != f {
            return Err(Error::IdentityFailure(format!("{} disagrees with recomputation", path.display())));
        }
        return Ok(f);
    }
    let f = f_coefficient(pi, seed)?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, serde_json::to_string_pretty(&FTableFile::new(pi, seed, &f))?)?;
    Ok(f)
}
