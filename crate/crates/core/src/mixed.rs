//! Formal sums of products of MZV combinations and anti-hook Schur MZVs.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::numerics::{eval_combo, EvalResult};
use crate::schur::{multicorner_to_combo, MultiCornerIndex};
use crate::words::WordCombo;

#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    Combo(WordCombo),
    AntiHook(MultiCornerIndex),
}

impl Atom {
    pub fn to_combo(&self) -> WordCombo {
        thread_local! {
            static MEMO: RefCell<HashMap<MultiCornerIndex, WordCombo>> = RefCell::new(HashMap::new());
        }
        match self {
            Atom::Combo(c) => c.clone(),
            Atom::AntiHook(mc) => {
                if let Some(c) = MEMO.with(|m| m.borrow().get(mc).cloned()) {
                    return c;
                }
                let c = multicorner_to_combo(mc);
                MEMO.with(|m| m.borrow_mut().insert(mc.clone(), c.clone()));
                c
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MixedCombo {
    pub terms: Vec<(BigRational, Vec<Atom>)>,
}

impl MixedCombo {
    pub fn zero() -> Self {
        MixedCombo::default()
    }

    pub fn from_combo(c: WordCombo) -> Self {
        let mut m = MixedCombo::zero();
        m.push(BigRational::one(), vec![Atom::Combo(c)]);
        m
    }

    pub fn push(&mut self, coeff: BigRational, atoms: Vec<Atom>) {
        if !coeff.is_zero() {
            self.terms.push((coeff, atoms));
        }
    }

    pub fn push_int(&mut self, coeff: impl Into<num_bigint::BigInt>, atoms: Vec<Atom>) {
        self.push(BigRational::from_integer(coeff.into()), atoms);
    }

    pub fn extend(&mut self, other: MixedCombo) {
        self.terms.extend(other.terms);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expands anti-hooks into words, then resolves products by the stuffle.
    pub fn flatten(&self) -> WordCombo {
        let mut out = WordCombo::zero();
        for (q, atoms) in &self.terms {
            let mut prod = WordCombo::unit();
            for a in atoms {
                prod = &prod * &a.to_combo();
                if prod.is_zero() {
                    break;
                }
            }
            out += prod.scale(q);
        }
        out
    }

    pub fn eval(&self, tol: f64) -> Result<EvalResult> {
        eval_combo(&self.flatten(), tol)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Combo(c) => write!(f, "({c})"),
            Atom::AntiHook(mc) => {
                let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                write!(f, "ζ[{} \\\\ {}]", join(&mc.ll[0]), join(&mc.kk[0]))
            }
        }
    }
}

impl fmt::Display for MixedCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(q, atoms)| {
                let a: Vec<String> = atoms.iter().map(|x| x.to_string()).collect();
                format!("{q}·{}", if a.is_empty() { "1".to_string() } else { a.join("·") })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
