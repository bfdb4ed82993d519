//! Succession rules, generating trees and arrays generated by production
//! matrices.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{is_nonnegative, Rational};

/// A succession rule on integer labels `0..window`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RuleJson", into = "RuleJson")]
pub struct SuccessionRule {
    pub axiom: usize,
    pub productions: BTreeMap<usize, Vec<usize>>,
    pub window: usize,
}

impl SuccessionRule {
    pub fn new(
        axiom: usize,
        productions: BTreeMap<usize, Vec<usize>>,
        window: usize,
    ) -> Result<SuccessionRule> {
        if axiom >= window {
            return Err(Error::WindowOverflow {
                label: axiom,
                window,
            });
        }
        Ok(SuccessionRule {
            axiom,
            productions,
            window,
        })
    }

    /// Builds a rule from a production function on the labels of the window.
    pub fn from_fn(
        axiom: usize,
        window: usize,
        f: impl Fn(usize) -> Vec<usize>,
    ) -> Result<SuccessionRule> {
        SuccessionRule::new(axiom, (0..window).map(|k| (k, f(k))).collect(), window)
    }

    fn children(&self, label: usize) -> Result<&[usize]> {
        let kids = self
            .productions
            .get(&label)
            .ok_or(Error::UndefinedLabel(label))?;
        if let Some(&bad) = kids.iter().find(|&&c| c >= self.window) {
            return Err(Error::WindowOverflow {
                label: bad,
                window: self.window,
            });
        }
        Ok(kids)
    }
}

/// Label census of one level of a generating tree.
pub type Level = BTreeMap<usize, BigUint>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Levels {
    pub counts: Vec<BigUint>,
    pub labels: Vec<Level>,
}

/// Expands the generating tree breadth first through level `depth`.
pub fn rule_levels(rule: &SuccessionRule, depth: usize) -> Result<Levels> {
    let mut level: Level = BTreeMap::from([(rule.axiom, BigUint::one())]);
    let mut labels = vec![level.clone()];
    for _ in 0..depth {
        let mut next = Level::new();
        for (label, mult) in &level {
            for &child in rule.children(*label)? {
                *next.entry(child).or_insert_with(BigUint::zero) += mult;
            }
        }
        labels.push(next.clone());
        level = next;
    }
    let counts = labels.iter().map(|l| l.values().sum()).collect();
    Ok(Levels { counts, labels })
}

/// `P[i][j]` is the number of times label `j` occurs among the children of
/// label `i`, for labels below `size`. Labels without a production give
/// zero rows.
pub fn rule_production(rule: &SuccessionRule, size: usize) -> Result<Matrix> {
    if size > rule.window {
        return Err(Error::WindowOverflow {
            label: size - 1,
            window: rule.window,
        });
    }
    let mut p = Matrix::zeros(size, size);
    for i in 0..size {
        let kids = match rule.children(i) {
            Ok(k) => k,
            Err(Error::UndefinedLabel(_)) => continue,
            Err(e) => return Err(e),
        };
        for &j in kids.iter().filter(|&&j| j < size) {
            let v = p.get(i, j) + Rational::one();
            p.set(i, j, v);
        }
    }
    Ok(p)
}

/// Rows `seed, seed P, seed P^2, ...`.
pub fn generate_from_production(p: &Matrix, rows: usize, seed: &[Rational]) -> Result<Matrix> {
    if !p.is_square() {
        return Err(Error::Shape(format!(
            "production matrix is {}x{}",
            p.rows(),
            p.cols()
        )));
    }
    if seed.len() != p.rows() {
        return Err(Error::Shape(format!(
            "seed has length {} but the production matrix has {} rows",
            seed.len(),
            p.rows()
        )));
    }
    let mut out = Vec::with_capacity(rows);
    let mut row = seed.to_vec();
    for _ in 0..rows {
        let next = p.left_mul_vec(&row)?;
        out.push(std::mem::replace(&mut row, next));
    }
    Ok(Matrix::from_rows(out))
}

/// Unit row `e_k` of length `len`.
pub fn unit_seed(len: usize, k: usize) -> Vec<Rational> {
    (0..len)
        .map(|i| {
            if i == k {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductionVerdict {
    /// Column 0 arbitrary, columns from 1 on Toeplitz with one superdiagonal.
    pub shape: bool,
    pub nonnegative: bool,
}

pub fn is_riordan_production(p: &Matrix) -> ProductionVerdict {
    let (rows, cols) = (p.rows(), p.cols());
    let mut shape = true;
    for i in 0..rows {
        for k in 1..cols {
            if i + 1 < k && !p.get(i, k).is_zero() {
                shape = false;
            }
            if i + 1 < rows && k + 1 < cols && p.get(i, k) != p.get(i + 1, k + 1) {
                shape = false;
            }
        }
    }
    let nonnegative = (0..rows).all(|i| (0..cols).all(|k| is_nonnegative(p.get(i, k))));
    ProductionVerdict { shape, nonnegative }
}

#[derive(Serialize, Deserialize)]
struct RuleJson {
    axiom: usize,
    productions: BTreeMap<String, Vec<usize>>,
    window: usize,
}

impl From<SuccessionRule> for RuleJson {
    fn from(r: SuccessionRule) -> Self {
        RuleJson {
            axiom: r.axiom,
            productions: r
                .productions
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            window: r.window,
        }
    }
}

impl TryFrom<RuleJson> for SuccessionRule {
    type Error = Error;

    fn try_from(j: RuleJson) -> Result<SuccessionRule> {
        let productions = j
            .productions
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|k| (k, v))
                    .map_err(|_| Error::Format(format!("label {k:?} is not a nonnegative integer")))
            })
            .collect::<Result<_>>()?;
        SuccessionRule::new(j.axiom, productions, j.window)
    }
}
