//! Brandt semigroup codes: one-sided ideals of `ℂB(G,n)` viewed as codes in
//! the coordinates given by the basis triples.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::brandt::{AlgebraElement, AlgebraError, BrandtContext, Triple};
use crate::cyclotomic::CycloNum;
use crate::exactla::{subspace_equal, Matrix};
use crate::groups::GroupKind;
use crate::idempotents::IdempotentSet;

pub const DEFAULT_WEIGHT_CAP: usize = 24;
pub const DEFAULT_GENERATOR_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code has {coords} support coordinates, above the cap of {cap}; raise it with --cap")]
    WeightCap { coords: usize, cap: usize },
    #[error("{count} idempotents give 2^{count} masks, above the cap of {cap} generators")]
    GeneratorCap { count: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Code {
    side: Side,
    generator: AlgebraElement,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Code {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn generator(&self) -> &AlgebraElement {
        &self.generator
    }

    pub fn context(&self) -> &Arc<BrandtContext> {
        self.generator.context()
    }

    /// RREF basis; columns are the basis triples in algebra order.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dimension(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis_elements(&self) -> Vec<AlgebraElement> {
        self.basis
            .rows()
            .map(|r| AlgebraElement::from_vector(self.context(), r))
            .collect()
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        crate::exactla::member(&x.to_vector(), &self.basis).expect("same width")
    }
}

fn ideal(x: &AlgebraElement, side: Side) -> Code {
    let rows = match side {
        Side::Left => x.left_multiples(),
        Side::Right => x.right_multiples(),
    };
    let (mut basis, pivots) = rows.row_reduce();
    basis = basis.nonzero_rows();
    Code {
        side,
        generator: x.clone(),
        basis,
        pivots,
    }
}

/// `ℂS·x`.
pub fn left_ideal(x: &AlgebraElement) -> Code {
    ideal(x, Side::Left)
}

/// `x·ℂS`.
pub fn right_ideal(x: &AlgebraElement) -> Code {
    ideal(x, Side::Right)
}

pub fn ideal_on(x: &AlgebraElement, side: Side) -> Code {
    ideal(x, side)
}

/// Every basis row, multiplied on the code's side by every basis triple,
/// stays in the code.
pub fn is_closed(c: &Code) -> bool {
    let ctx = c.context();
    let elems = c.basis_elements();
    ctx.basis().all(|t| {
        let b = AlgebraElement::basis(ctx, t);
        elems.iter().all(|v| {
            let p = match c.side {
                Side::Left => b.mul(v),
                Side::Right => v.mul(&b),
            }
            .expect("same context");
            c.contains(&p)
        })
    })
}

/// Union of the supports of the basis rows.
pub fn code_support(c: &Code) -> Vec<Triple> {
    support_columns(c)
        .into_iter()
        .map(|k| c.context().triple(k))
        .collect()
}

fn support_columns(c: &Code) -> Vec<usize> {
    (0..c.basis.ncols())
        .filter(|&k| c.basis.rows().any(|r| !r[k].is_zero()))
        .collect()
}

pub fn mutual_distance(x: &AlgebraElement, y: &AlgebraElement) -> Result<usize, AlgebraError> {
    x.hamming(y)
}

#[derive(Debug, Clone)]
pub struct MinWeight {
    pub weight: usize,
    /// Coordinates the witness codeword is supported on.
    pub subset: Vec<Triple>,
    pub codeword: AlgebraElement,
}

const CHUNK: usize = 2048;

/// Exact minimum weight. A coordinate set `S` carries a nonzero codeword iff
/// the basis restricted to the complement of `S` loses rank; sizes are tried
/// in ascending order and subsets lexicographically, first hit wins.
pub fn min_weight(c: &Code, cap: usize) -> Result<MinWeight, CodeError> {
    let ctx = c.context();
    let d = c.dimension();
    if d == 0 {
        return Ok(MinWeight {
            weight: 0,
            subset: Vec::new(),
            codeword: AlgebraElement::zero(ctx),
        });
    }
    let support = support_columns(c);
    let m = support.len();
    if m > cap {
        return Err(CodeError::WeightCap { coords: m, cap });
    }
    let restricted = c.basis.select_columns(&support);
    // Singleton bound: some codeword has weight <= m - d + 1.
    for w in 1..=m - d + 1 {
        let mut combos = Combinations::new(m, w);
        loop {
            let chunk: Vec<Vec<usize>> = combos.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let hit = chunk.par_iter().find_first(|s| {
                let comp = complement(m, s);
                restricted.select_columns(&comp).rank() < d
            });
            if let Some(s) = hit {
                let comp = complement(m, s);
                let lambda = c
                    .basis
                    .select_columns(&comp.iter().map(|&k| support[k]).collect::<Vec<_>>())
                    .left_kernel_vector()
                    .expect("rank dropped");
                let word = AlgebraElement::from_vector(ctx, &c.basis.combine_rows(&lambda));
                return Ok(MinWeight {
                    weight: w,
                    subset: s.iter().map(|&k| ctx.triple(support[k])).collect(),
                    codeword: word,
                });
            }
        }
    }
    unreachable!("the Singleton bound guarantees a witness")
}

fn complement(m: usize, s: &[usize]) -> Vec<usize> {
    (0..m).filter(|k| !s.contains(k)).collect()
}

/// `w`-subsets of `0..m` in lexicographic order.
struct Combinations {
    m: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    fn new(m: usize, w: usize) -> Self {
        Combinations {
            m,
            cur: (w <= m).then(|| (0..w).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let w = out.len();
        let mut next = out.clone();
        let mut i = w;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.m - w + i {
                next[i] += 1;
                for j in i + 1..w {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Mask strings read left to right over the idempotent set; entry 0 is the
/// leftmost character and the most significant bit.
pub fn mask_string(mask: u64, len: usize) -> String {
    (0..len)
        .map(|k| {
            if mask >> (len - 1 - k) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn mask_members(mask: u64, len: usize) -> Vec<usize> {
    (0..len)
        .filter(|&k| mask >> (len - 1 - k) & 1 == 1)
        .collect()
}

/// `Σ e` over the entries selected by `mask`.
pub fn mask_generator(s: &IdempotentSet, mask: u64) -> AlgebraElement {
    let mut g = AlgebraElement::zero(s.context());
    for k in mask_members(mask, s.len()) {
        g = g.add(&s.entries()[k].element).expect("same context");
    }
    g
}

/// Printed dimension and minimum weight of the `ℂB(C4,1)` table, keyed by
/// mask string.
pub fn printed_table(mask: &str) -> Option<(usize, usize)> {
    Some(match mask {
        "0000" => (0, 0),
        "1000" | "0100" => (3, 4),
        "0010" | "0001" | "1100" | "0011" => (2, 4),
        "1010" | "1001" | "0110" | "0101" | "1110" | "1101" | "1011" | "0111" | "1111" => (4, 4),
        _ => return None,
    })
}

fn is_printed_instance(s: &IdempotentSet, side: Side) -> bool {
    side == Side::Left
        && s.context().n() == 1
        && matches!(s.context().group().kind(), GroupKind::Cyclic(4))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub mask: String,
    pub side: Side,
    pub generator: String,
    pub dimension: usize,
    pub support_size: usize,
    pub min_weight: usize,
    pub is_minimal: bool,
    /// Σ of the simple dimensions of the selected entries.
    pub mask_sum_dimension: usize,
    pub additive: bool,
    pub paper_value_dimension: Option<usize>,
    pub paper_value_weight: Option<usize>,
    pub dimension_discrepancy: bool,
    pub weight_discrepancy: bool,
}

impl CodeReport {
    pub fn has_discrepancy(&self) -> bool {
        self.dimension_discrepancy || self.weight_discrepancy || !self.additive
    }
}

/// One report per subset of the idempotent set, in mask order.
pub fn enumerate_idempotent_codes(
    s: &IdempotentSet,
    side: Side,
    generator_cap: usize,
    weight_cap: usize,
) -> Result<Vec<CodeReport>, CodeError> {
    let t = s.len();
    if t > generator_cap {
        return Err(CodeError::GeneratorCap {
            count: t,
            cap: generator_cap,
        });
    }
    let printed = is_printed_instance(s, side);
    (0..1u64 << t)
        .into_par_iter()
        .map(|mask| {
            let g = mask_generator(s, mask);
            let c = ideal(&g, side);
            let mw = min_weight(&c, weight_cap)?;
            let label = mask_string(mask, t);
            let members = mask_members(mask, t);
            let sum: usize = members.iter().map(|&k| s.simple_dimension(k)).sum();
            let (pd, pw) = match printed.then(|| printed_table(&label)).flatten() {
                Some((d, w)) => (Some(d), Some(w)),
                None => (None, None),
            };
            Ok(CodeReport {
                side,
                generator: g.to_string(),
                dimension: c.dimension(),
                support_size: support_columns(&c).len(),
                min_weight: mw.weight,
                is_minimal: members.len() <= 1,
                mask_sum_dimension: sum,
                additive: sum == c.dimension(),
                dimension_discrepancy: pd.is_some_and(|d| d != c.dimension()),
                weight_discrepancy: pw.is_some_and(|w| w != mw.weight),
                paper_value_dimension: pd,
                paper_value_weight: pw,
                mask: label,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSum {
    pub mask: String,
    /// Positions in the idempotent set.
    pub members: Vec<usize>,
}

/// First subset `T` (in mask order) with `c = ⊕_{e ∈ T} ℂS·e` (or `e·ℂS` for
/// right codes); the dimensions must add up, so the sum is direct.
pub fn is_direct_sum_of_minimal(c: &Code, s: &IdempotentSet) -> Option<DirectSum> {
    let t = s.len();
    let parts: Vec<Code> = s
        .entries()
        .iter()
        .map(|e| ideal(&e.element, c.side))
        .collect();
    let ctx = c.context();
    (0..1u64 << t).find_map(|mask| {
        let members = mask_members(mask, t);
        let dims: usize = members.iter().map(|&k| parts[k].dimension()).sum();
        if dims != c.dimension() {
            return None;
        }
        let mut span = Matrix::zeros(ctx.field(), 0, ctx.dim());
        for &k in &members {
            span = span.vstack(parts[k].basis()).expect("same width");
        }
        let equal = subspace_equal(&span, &c.basis).expect("same width");
        (equal && span.rank() == dims).then(|| DirectSum {
            mask: mask_string(mask, t),
            members,
        })
    })
}

/// Sum of scalar multiples of basis rows, for sampling codewords.
pub fn codeword(c: &Code, coeffs: &[CycloNum]) -> AlgebraElement {
    AlgebraElement::from_vector(c.context(), &c.basis.combine_rows(coeffs))
}
