use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::markowitz::ReturnsDataset;
use super::matcomp::{Partition, Rating, RatingsDataset};
use crate::error::{Error, Result};

/// Fraction of rows assigned to training; the training count is rounded up.
pub const TRAIN_FRACTION: f64 = 0.9;

fn train_count(total: usize) -> usize {
    ((TRAIN_FRACTION * total as f64).ceil() as usize).min(total)
}

/// Shuffled row indices split into (train, test), each kept in file order.
fn split_indices(total: usize, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..total).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut train = idx[..train_count(total)].to_vec();
    let mut test = idx[train_count(total)..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

/// Comma-separated returns, one row per day and one column per asset. A
/// first row that does not parse as numbers is treated as a header.
pub fn load_returns_csv(path: impl AsRef<Path>, seed: u64) -> Result<ReturnsDataset> {
    let text =
        fs::read_to_string(path.as_ref()).map_err(|e| Error::Dataset(format!("{}: {e}", path.as_ref().display())))?;
    parse_returns_csv(&text, seed)
}

pub fn parse_returns_csv(text: &str, seed: u64) -> Result<ReturnsDataset> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 1;
        let record = record.map_err(|e| Error::Dataset(format!("line {line}: {e}")))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(values) => {
                if let Some(first) = rows.first() {
                    if first.len() != values.len() {
                        return Err(Error::Dataset(format!(
                            "line {line}: expected {} columns, found {}",
                            first.len(),
                            values.len()
                        )));
                    }
                }
                if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
                    return Err(Error::Dataset(format!("line {line}: non-finite value {bad}")));
                }
                rows.push(values);
            }
            Err(_) if line == 1 => continue,
            Err(e) => return Err(Error::Dataset(format!("line {line}: {e}"))),
        }
    }
    if rows.is_empty() {
        return Err(Error::Dataset("no data rows".into()));
    }
    let cols = rows[0].len();
    let (train, test) = split_indices(rows.len(), seed);
    let gather = |idx: &[usize]| DMatrix::from_fn(idx.len(), cols, |r, c| rows[idx[r]][c]);
    ReturnsDataset::new(gather(&train), gather(&test))
}

struct RawRating {
    user: u64,
    item: u64,
    rating: f64,
}

fn parse_ratings(path: &Path) -> Result<Vec<RawRating>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Dataset(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 3 {
            return Err(Error::Dataset(format!("line {line_no}: expected user<TAB>item<TAB>rating[<TAB>timestamp]")));
        }
        let int = |s: &str, what: &str| {
            s.trim().parse::<u64>().map_err(|_| Error::Dataset(format!("line {line_no}: malformed {what} '{s}'")))
        };
        let user = int(fields[0], "user id")?;
        let item = int(fields[1], "item id")?;
        let rating = int(fields[2], "rating")?;
        if !(1..=5).contains(&rating) {
            return Err(Error::Dataset(format!("line {line_no}: rating {rating} outside 1..5")));
        }
        out.push(RawRating { user, item, rating: rating as f64 });
    }
    Ok(out)
}

/// Dense 0-based ids for users and items that have a training rating.
/// Test entries for users or items without training ratings are dropped.
fn assemble(train: Vec<RawRating>, test: Vec<RawRating>) -> Result<RatingsDataset> {
    let mut users = BTreeMap::new();
    let mut items = BTreeMap::new();
    for r in &train {
        users.entry(r.user).or_insert(0usize);
        items.entry(r.item).or_insert(0usize);
    }
    for (k, v) in users.values_mut().enumerate() {
        *v = k;
    }
    for (k, v) in items.values_mut().enumerate() {
        *v = k;
    }
    let mut observed = Vec::with_capacity(train.len() + test.len());
    for (raws, partition) in [(train, Partition::Train), (test, Partition::Test)] {
        for r in raws {
            if let (Some(&row), Some(&col)) = (users.get(&r.user), items.get(&r.item)) {
                observed.push(Rating { row, col, value: r.rating, partition });
            }
        }
    }
    RatingsDataset::new(observed, users.len(), items.len())
}

/// Tab-separated ratings split 90/10 at random with `seed`.
pub fn load_movielens(path: impl AsRef<Path>, seed: u64) -> Result<RatingsDataset> {
    let all = parse_ratings(path.as_ref())?;
    let (train_idx, test_idx) = split_indices(all.len(), seed);
    let mut slots: Vec<Option<RawRating>> = all.into_iter().map(Some).collect();
    let mut take = |idx: &[usize]| idx.iter().map(|&i| slots[i].take().expect("index used once")).collect::<Vec<_>>();
    let train = take(&train_idx);
    let test = take(&test_idx);
    assemble(train, test)
}

/// Tab-separated ratings with a predefined partition (e.g. `ub.base` / `ub.test`).
pub fn load_movielens_split(train_path: impl AsRef<Path>, test_path: impl AsRef<Path>) -> Result<RatingsDataset> {
    assemble(parse_ratings(train_path.as_ref())?, parse_ratings(test_path.as_ref())?)
}
