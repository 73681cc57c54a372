//! Fillings of skew shapes, truncated semi-standard tableaux and
//! semi-standard decompositions.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::compositions_min;
use crate::error::{Error, Result};
use crate::shapes::{Cell, SkewShape};
use crate::words::shape_levels;

/// A filling of a skew shape; `entries` follow the row-major order of `shape.cells()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    shape: SkewShape,
    entries: Vec<u32>,
}

impl Tableau {
    pub fn new(shape: SkewShape, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != shape.size() {
            return Err(Error::BadFilling(format!("{} entries for {} cells", entries.len(), shape.size())));
        }
        if entries.contains(&0) {
            return Err(Error::BadFilling("entries must be positive".into()));
        }
        Ok(Tableau { shape, entries })
    }

    /// Parses a row-major filling "1,2;3" aligned to the rows of `shape`.
    pub fn parse(shape: &SkewShape, text: &str) -> Result<Self> {
        let rows: Vec<&str> = if text.trim().is_empty() { Vec::new() } else { text.split(';').collect() };
        let h = shape.lambda().len();
        if rows.len() != h {
            return Err(Error::Parse(format!("{} rows given, shape has {h}", rows.len())));
        }
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let vals = row
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let width = (shape.lambda().get(i + 1) - shape.mu().get(i + 1)) as usize;
            if vals.len() != width {
                return Err(Error::Parse(format!("row {} has {} entries, expected {width}", i + 1, vals.len())));
            }
            entries.extend(vals);
        }
        Tableau::new(shape.clone(), entries).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry_map(&self) -> HashMap<Cell, u32> {
        self.shape.cells().into_iter().zip(self.entries.iter().copied()).collect()
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        let map = self.entry_map();
        self.shape.corners().iter().all(|c| map[c] >= 2)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<Vec<String>> = vec![Vec::new(); self.shape.lambda().len()];
        for ((i, _), v) in self.shape.cells().into_iter().zip(&self.entries) {
            rows[i - 1].push(v.to_string());
        }
        let rows: Vec<String> = rows.into_iter().map(|r| r.join(",")).collect();
        write!(f, "{}", rows.join(";"))
    }
}

pub fn is_admissible(t: &Tableau) -> bool {
    t.is_admissible()
}

/// Strict down columns, weak along rows.
pub fn is_semistandard(shape: &SkewShape, values: &[u32]) -> bool {
    let cells = shape.cells();
    let map: HashMap<Cell, u32> = cells.iter().copied().zip(values.iter().copied()).collect();
    cells.iter().all(|&(i, j)| {
        let v = map[&(i, j)];
        map.get(&(i, j + 1)).is_none_or(|&r| v <= r) && map.get(&(i + 1, j)).is_none_or(|&d| v < d)
    })
}

/// Semi-standard fillings with entries in [1, M−1], lexicographic on row-major vectors.
pub struct SsytIter {
    left: Vec<Option<usize>>,
    up: Vec<Option<usize>>,
    vals: Vec<i64>,
    hi: i64,
    started: bool,
    done: bool,
}

impl SsytIter {
    fn lo(&self, p: usize) -> i64 {
        let mut lo = 1;
        if let Some(l) = self.left[p] {
            lo = lo.max(self.vals[l]);
        }
        if let Some(u) = self.up[p] {
            lo = lo.max(self.vals[u] + 1);
        }
        lo
    }
}

impl Iterator for SsytIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let n = self.vals.len();
        if n == 0 {
            self.done = true;
            return if self.hi >= 0 { Some(Vec::new()) } else { None };
        }
        let mut i = if self.started { n - 1 } else { 0 };
        if !self.started {
            self.vals[0] = self.lo(0) - 1;
            self.started = true;
        }
        loop {
            let v = self.vals[i] + 1;
            if v > self.hi {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                continue;
            }
            self.vals[i] = v;
            if i == n - 1 {
                return Some(self.vals.iter().map(|&x| x as u32).collect());
            }
            i += 1;
            self.vals[i] = self.lo(i) - 1;
        }
    }
}

pub fn enumerate_ssyt(shape: &SkewShape, m: u32) -> SsytIter {
    let cells = shape.cells();
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let left = cells.iter().map(|&(i, j)| if j > 1 { index.get(&(i, j - 1)).copied() } else { None }).collect();
    let up = cells.iter().map(|&(i, j)| if i > 1 { index.get(&(i - 1, j)).copied() } else { None }).collect();
    SsytIter {
        left,
        up,
        vals: vec![0; cells.len()],
        // an empty shape has one (empty) tableau for every M ≥ 1
        hi: m as i64 - 1,
        started: false,
        done: m == 0,
    }
}

fn corner_minimums(shape: &SkewShape) -> Vec<i64> {
    let corners = shape.corners();
    shape.cells().iter().map(|c| if corners.contains(c) { 2 } else { 1 }).collect()
}

/// Admissible fillings of weight `w`, lexicographic on row-major vectors.
pub fn enumerate_admissible_fillings(shape: &SkewShape, w: u32) -> impl Iterator<Item = Tableau> + '_ {
    let mins = corner_minimums(shape);
    compositions_min(w as i64, &mins)
        .into_iter()
        .map(move |c| Tableau { shape: shape.clone(), entries: c.into_iter().map(|x| x as u32).collect() })
}

/// Every filling (admissible or not) of weight `w`.
pub fn enumerate_fillings(shape: &SkewShape, w: u32) -> impl Iterator<Item = Tableau> + '_ {
    compositions_min(w as i64, &vec![1; shape.size()])
        .into_iter()
        .map(move |c| Tableau { shape: shape.clone(), entries: c.into_iter().map(|x| x as u32).collect() })
}

/// An ordered decomposition (D_1, …, D_r) of the cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ssd {
    pub blocks: Vec<Vec<Cell>>,
}

impl Ssd {
    pub fn block_sizes(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b.len() as u32).collect()
    }

    /// t_{ij} = a for (i,j) in D_a, in row-major cell order.
    pub fn level_filling(&self, shape: &SkewShape) -> Vec<u32> {
        let mut level: HashMap<Cell, u32> = HashMap::new();
        for (a, b) in self.blocks.iter().enumerate() {
            for &c in b {
                level.insert(c, a as u32 + 1);
            }
        }
        shape.cells().iter().map(|c| level[c]).collect()
    }
}

pub struct SsdIter {
    cells: Vec<Cell>,
    parts: crate::levels::LevelPartitions,
}

impl Iterator for SsdIter {
    type Item = Ssd;

    fn next(&mut self) -> Option<Ssd> {
        let masks = self.parts.next()?;
        let blocks = masks
            .into_iter()
            .map(|m| (0..self.cells.len()).filter(|&x| m >> x & 1 == 1).map(|x| self.cells[x]).collect())
            .collect();
        Some(Ssd { blocks })
    }
}

/// All semi-standard decompositions, via surjective semi-standard level fillings.
pub fn enumerate_ssd(shape: &SkewShape) -> SsdIter {
    let sys = shape_levels(shape, vec![1; shape.size()]);
    SsdIter { cells: shape.cells(), parts: sys.into_partitions() }
}
