//! Partitions, skew diagrams, corners and ribbons.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidShape(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (1-based), zero beyond the length.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        let parts = (1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect();
        Partition(parts)
    }
}

pub fn conjugate(p: &Partition) -> Partition {
    p.conjugate()
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A skew diagram λ/μ, stored with empty rows and leading empty columns stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShape {
    lambda: Partition,
    mu: Partition,
}

impl SkewShape {
    pub fn new(lambda: Partition, mu: Partition) -> Result<Self> {
        if mu.len() > lambda.len() {
            return Err(Error::InvalidShape("mu longer than lambda".into()));
        }
        for i in 1..=mu.len() {
            if mu.get(i) > lambda.get(i) {
                return Err(Error::InvalidShape(format!("mu_{i} > lambda_{i}")));
            }
        }
        let raw = SkewShape { lambda, mu };
        let cells = raw.raw_cells();
        Self::from_cells(&cells)
    }

    pub fn from_parts(lambda: &[u32], mu: &[u32]) -> Result<Self> {
        Self::new(Partition::new(lambda.to_vec())?, Partition::new(mu.to_vec())?)
    }

    pub fn straight(lambda: &[u32]) -> Result<Self> {
        Self::from_parts(lambda, &[])
    }

    pub fn empty() -> Self {
        SkewShape { lambda: Partition::empty(), mu: Partition::empty() }
    }

    pub fn single_box() -> Self {
        SkewShape { lambda: Partition(vec![1]), mu: Partition::empty() }
    }

    pub fn row(n: u32) -> Self {
        SkewShape::straight(&[n]).expect("row")
    }

    pub fn column(n: u32) -> Self {
        SkewShape::straight(&vec![1; n as usize]).expect("column")
    }

    /// Builds the skew shape occupying the given cells, translated so the
    /// minimal row and column are 1. Fails if the cells do not form a skew diagram.
    pub fn from_cells(cells: &[Cell]) -> Result<Self> {
        if cells.is_empty() {
            return Ok(Self::empty());
        }
        let set: BTreeSet<Cell> = cells.iter().copied().collect();
        let rows: BTreeSet<usize> = set.iter().map(|c| c.0).collect();
        let mut intervals = Vec::new();
        for &r in &rows {
            let cols: Vec<usize> = set.iter().filter(|c| c.0 == r).map(|c| c.1).collect();
            let (a, b) = (cols[0], *cols.last().unwrap());
            if b - a + 1 != cols.len() {
                return Err(Error::InvalidShape(format!("row {r} is not an interval")));
            }
            intervals.push((a, b));
        }
        let min_col = intervals.iter().map(|x| x.0).min().unwrap();
        let mut lambda = Vec::new();
        let mut mu = Vec::new();
        for (a, b) in intervals {
            lambda.push((b - min_col + 1) as u32);
            mu.push((a - min_col) as u32);
        }
        let bad = lambda.windows(2).any(|w| w[0] < w[1]) || mu.windows(2).any(|w| w[0] < w[1]);
        if bad {
            return Err(Error::InvalidShape("cells do not form a skew diagram".into()));
        }
        Ok(SkewShape { lambda: Partition::new(lambda)?, mu: Partition::new(mu)? })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    fn raw_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 1..=self.lambda.len() {
            for j in (self.mu.get(i) + 1)..=self.lambda.get(i) {
                out.push((i, j as usize));
            }
        }
        out
    }

    /// Cells in row-major order, 1-based.
    pub fn cells(&self) -> Vec<Cell> {
        self.raw_cells()
    }

    pub fn size(&self) -> usize {
        (self.lambda.size() - self.mu.size()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn contains(&self, (i, j): Cell) -> bool {
        i >= 1 && j >= 1 && (j as u32) > self.mu.get(i) && (j as u32) <= self.lambda.get(i)
    }

    pub fn corners(&self) -> Vec<Cell> {
        self.cells().into_iter().filter(|&(i, j)| !self.contains((i, j + 1)) && !self.contains((i + 1, j))).collect()
    }

    /// Edge-connected components, each as a normalized shape, in order of first cell.
    pub fn components(&self) -> Vec<SkewShape> {
        let cells = self.cells();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &c in &cells {
            if seen.contains(&c) {
                continue;
            }
            let mut comp = vec![c];
            let mut stack = vec![c];
            seen.insert(c);
            while let Some((i, j)) = stack.pop() {
                let mut nb = vec![(i + 1, j), (i, j + 1)];
                if i > 1 {
                    nb.push((i - 1, j));
                }
                if j > 1 {
                    nb.push((i, j - 1));
                }
                for n in nb {
                    if self.contains(n) && seen.insert(n) {
                        comp.push(n);
                        stack.push(n);
                    }
                }
            }
            out.push(SkewShape::from_cells(&comp).expect("component of a skew shape"));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_ribbon(&self) -> bool {
        if self.is_empty() || !self.is_connected() {
            return false;
        }
        !self
            .cells()
            .into_iter()
            .any(|(i, j)| self.contains((i, j + 1)) && self.contains((i + 1, j)) && self.contains((i + 1, j + 1)))
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &Partition| p.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}", join(&self.lambda))?;
        if !self.mu.is_empty() {
            write!(f, "/{}", join(&self.mu))?;
        }
        Ok(())
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{x:?}: {e}")))).collect()
}

impl FromStr for SkewShape {
    type Err = Error;

    /// Parses "3,3/1" (λ=(3,3), μ=(1)) or "3,3".
    fn from_str(s: &str) -> Result<Self> {
        let (l, m) = match s.split_once('/') {
            Some((l, m)) => (l, m),
            None => (s, ""),
        };
        let lambda = Partition::new(parse_parts(l)?).map_err(|e| Error::Parse(e.to_string()))?;
        let mu = Partition::new(parse_parts(m)?).map_err(|e| Error::Parse(e.to_string()))?;
        SkewShape::new(lambda, mu).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Horizontal runs `s` and vertical runs `r` of a ribbon, read bottom-left to top-right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RibbonSpec {
    pub s: Vec<u32>,
    pub r: Vec<u32>,
}

impl RibbonSpec {
    pub fn new(s: Vec<u32>, r: Vec<u32>) -> Result<Self> {
        if s.is_empty() || s.len() != r.len() {
            return Err(Error::Domain("ribbon spec needs equal non-empty s and r".into()));
        }
        if r.contains(&0) {
            return Err(Error::Domain("all r_i must be positive".into()));
        }
        Ok(RibbonSpec { s, r })
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn boxes(&self) -> u32 {
        self.s.iter().sum::<u32>() + self.r.iter().sum::<u32>()
    }

    /// True when the spec is realized by a diagram (s_i > 0 for i ≥ 2).
    pub fn is_geometric(&self) -> bool {
        self.s.iter().skip(1).all(|&x| x > 0)
    }
}

pub fn ribbon_to_spec(shape: &SkewShape) -> Result<RibbonSpec> {
    if !shape.is_ribbon() {
        return Err(Error::NotARibbon);
    }
    let h = shape.lambda().len();
    let mut row = h;
    let mut start = shape.mu().get(h) as usize + 1;
    let mut s = Vec::new();
    let mut r = Vec::new();
    let mut used = 0usize;
    loop {
        let end = shape.lambda().get(row) as usize;
        s.push((end - start) as u32);
        used += end - start;
        // climb the column above the corner until a cell with a right neighbour
        let mut x = row;
        let mut height = 0;
        loop {
            height += 1;
            used += 1;
            if x == 1 || !shape.contains((x - 1, end)) {
                x = 0;
                break;
            }
            x -= 1;
            if shape.contains((x, end + 1)) {
                break;
            }
        }
        r.push(height);
        if x == 0 {
            break;
        }
        row = x;
        start = end;
    }
    if used != shape.size() {
        return Err(Error::NotARibbon);
    }
    RibbonSpec::new(s, r)
}

pub fn spec_to_shape(spec: &RibbonSpec) -> SkewShape {
    // rows grow downward; start far enough down to stay positive
    let total = spec.boxes() as usize + 2;
    let mut cells = Vec::new();
    let mut row = total;
    let mut col = 1usize;
    for (i, (&s, &r)) in spec.s.iter().zip(&spec.r).enumerate() {
        if i > 0 {
            row -= 1;
        }
        for c in col..col + s as usize {
            cells.push((row, c));
        }
        col += s as usize;
        for k in 0..r as usize {
            cells.push((row - k, col));
        }
        row -= r as usize - 1;
    }
    SkewShape::from_cells(&cells).expect("ribbon spec yields a skew shape")
}

/// Embeds a one-corner shape as (n^m)/μ with μ_1 = n and μ_m > 0.
pub fn one_corner_canonical(shape: &SkewShape) -> Result<(u32, u32, Partition)> {
    let corners = shape.corners();
    if corners.len() != 1 {
        return Err(Error::NotOneCorner(corners.len()));
    }
    let h = shape.lambda().len() as u32;
    let c = shape.lambda().get(1);
    let (n, m) = (c + 1, h + 1);
    let mut mu = vec![n];
    for i in 1..=h as usize {
        mu.push(shape.mu().get(i) + 1);
    }
    Ok((n, m, Partition::new(mu)?))
}

/// The valid i with μ[i] non-increasing, the decremented μ and the coefficient (i−μ_i)−(m−n).
pub fn mu_decrement_set(n: u32, m: u32, mu: &Partition) -> Vec<(usize, Partition, i64)> {
    let mut out = Vec::new();
    let padded: Vec<u32> = (1..=m as usize).map(|i| mu.get(i)).collect();
    for i in 1..=m as usize {
        let mi = padded[i - 1];
        if mi == 0 {
            continue;
        }
        if i < m as usize && mi - 1 < padded[i] {
            continue;
        }
        let mut v = padded.clone();
        v[i - 1] -= 1;
        let coeff = (i as i64 - mi as i64) - (m as i64 - n as i64);
        out.push((i, Partition::new(v).expect("non-increasing"), coeff));
    }
    out
}

/// The skew shape (n^m)/μ.
pub fn rectangle_minus(n: u32, m: u32, mu: &Partition) -> Result<SkewShape> {
    SkewShape::new(Partition::new(vec![n; m as usize])?, mu.clone())
}

/// Every skew shape with `1..=max_cells` cells, up to translation and removal of
/// empty columns between disconnected pieces.
pub fn all_skew_shapes(max_cells: usize) -> Vec<SkewShape> {
    // rows listed bottom to top as intervals [a, b]; going up a and b weakly increase
    fn rec(rows: &mut Vec<(usize, usize)>, left: usize, out: &mut Vec<SkewShape>) {
        if !rows.is_empty() {
            let cells: Vec<Cell> =
                rows.iter().rev().enumerate().flat_map(|(i, &(a, b))| (a..=b).map(move |j| (i + 1, j))).collect();
            out.push(SkewShape::from_cells(&cells).expect("valid rows"));
        }
        if left == 0 {
            return;
        }
        let (pa, pb) = rows.last().copied().unwrap_or((1, 1));
        let a_range: Vec<usize> = if rows.is_empty() { vec![1] } else { (pa..=pb + 1).collect() };
        for a in a_range {
            let b_lo = if rows.is_empty() { a } else { a.max(pb) };
            for b in b_lo..a + left {
                rows.push((a, b));
                rec(rows, left - (b - a + 1), out);
                rows.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_cells, &mut out);
    out.sort();
    out.dedup();
    out
}
