//! Ordered set partitions of a finite set of variables compatible with weak and
//! strict order constraints. This is the engine behind semi-standard
//! decompositions and the expansion of nested inequality series into words.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// Variables `0..n` with weights; `weak[x]` / `strict[x]` are bitmasks of the
/// variables that must be at a level `≤` / `<` the level of `x`.
#[derive(Debug, Clone)]
pub struct LevelSystem {
    weights: Vec<u32>,
    weak: Vec<u64>,
    strict: Vec<u64>,
}

pub type CountMap = HashMap<Vec<u32>, u128>;

impl LevelSystem {
    pub fn new(weights: Vec<u32>) -> Self {
        let n = weights.len();
        assert!(n <= 64, "at most 64 variables");
        LevelSystem { weights, weak: vec![0; n], strict: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn set_weights(&mut self, weights: Vec<u32>) {
        assert_eq!(weights.len(), self.len());
        self.weights = weights;
    }

    /// Requires level(a) ≤ level(b).
    pub fn weak(&mut self, a: usize, b: usize) {
        self.weak[b] |= 1 << a;
    }

    /// Requires level(a) < level(b).
    pub fn strict(&mut self, a: usize, b: usize) {
        self.strict[b] |= 1 << a;
    }

    fn full(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Blocks that may come next once `placed` is fixed.
    pub fn next_blocks(&self, placed: u64) -> Vec<u64> {
        let rest = self.full() & !placed;
        let mut cand = 0u64;
        for x in 0..self.len() {
            if rest >> x & 1 == 1 && self.strict[x] & !placed == 0 {
                cand |= 1 << x;
            }
        }
        let mut out = Vec::new();
        let mut sub = cand;
        while sub != 0 {
            let ok = (0..self.len()).filter(|&x| sub >> x & 1 == 1).all(|x| self.weak[x] & !(placed | sub) == 0);
            if ok {
                out.push(sub);
            }
            sub = (sub - 1) & cand;
        }
        out.sort_unstable();
        out
    }

    fn block_weight(&self, b: u64) -> u32 {
        (0..self.len()).filter(|&x| b >> x & 1 == 1).map(|x| self.weights[x]).sum()
    }

    /// Σ over all admissible ordered partitions of the word of block weights,
    /// with multiplicities.
    pub fn expand(&self) -> CountMap {
        let memo: RefCell<HashMap<u64, Rc<CountMap>>> = RefCell::new(HashMap::new());
        let res = self.expand_from(0, &memo);
        Rc::try_unwrap(res).unwrap_or_else(|rc| (*rc).clone())
    }

    fn expand_from(&self, placed: u64, memo: &RefCell<HashMap<u64, Rc<CountMap>>>) -> Rc<CountMap> {
        if let Some(r) = memo.borrow().get(&placed) {
            return r.clone();
        }
        let mut acc = CountMap::new();
        if placed == self.full() {
            acc.insert(Vec::new(), 1);
        } else {
            for b in self.next_blocks(placed) {
                let letter = self.block_weight(b);
                let tail = self.expand_from(placed | b, memo);
                for (w, c) in tail.iter() {
                    let mut word = Vec::with_capacity(w.len() + 1);
                    word.push(letter);
                    word.extend_from_slice(w);
                    *acc.entry(word).or_insert(0) += c;
                }
            }
        }
        let rc = Rc::new(acc);
        memo.borrow_mut().insert(placed, rc.clone());
        rc
    }

    /// Lazily enumerates the ordered partitions as sequences of block bitmasks.
    pub fn partitions(&self) -> LevelPartitions {
        self.clone().into_partitions()
    }

    pub fn into_partitions(self) -> LevelPartitions {
        let first = self.next_blocks(0);
        let done = self.is_empty();
        LevelPartitions { sys: self, stack: vec![(0, first, 0)], path: Vec::new(), done }
    }
}

pub struct LevelPartitions {
    sys: LevelSystem,
    stack: Vec<(u64, Vec<u64>, usize)>,
    path: Vec<u64>,
    done: bool,
}

impl Iterator for LevelPartitions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let full = self.sys.full();
        while let Some((placed, blocks, idx)) = self.stack.last_mut() {
            if *idx >= blocks.len() {
                self.stack.pop();
                self.path.pop();
                continue;
            }
            let b = blocks[*idx];
            *idx += 1;
            let now = *placed | b;
            self.path.push(b);
            if now == full {
                let out = self.path.clone();
                self.path.pop();
                return Some(out);
            }
            let next = self.sys.next_blocks(now);
            self.stack.push((now, next, 0));
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fubini_numbers() {
        let sys = LevelSystem::new(vec![1; 4]);
        assert_eq!(sys.partitions().count(), 75);
        let total: u128 = sys.expand().values().sum();
        assert_eq!(total, 75);
    }

    #[test]
    fn chain_is_single() {
        let mut sys = LevelSystem::new(vec![1, 2, 3]);
        sys.strict(0, 1);
        sys.strict(1, 2);
        let e = sys.expand();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&vec![1, 2, 3]], 1);
    }

    #[test]
    fn weak_pair() {
        let mut sys = LevelSystem::new(vec![2, 3]);
        sys.weak(0, 1);
        let e = sys.expand();
        assert_eq!(e[&vec![5]], 1);
        assert_eq!(e[&vec![2, 3]], 1);
        assert_eq!(e.len(), 2);
    }
}
