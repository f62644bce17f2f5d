//! Cartan matrices `c(u,v) = dim e_u·A·e_v`, computed as exact span ranks.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::brandt::AlgebraElement;
use crate::exactla::Matrix;
use crate::groups::GroupKind;
use crate::idempotents::IdempotentSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("block size {block} does not divide matrix size {size}")]
    NotDivisor { block: usize, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    /// Row/column labels `e_{i,j}` in idempotent-set order.
    pub labels: Vec<String>,
    pub entries: Vec<Vec<usize>>,
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|u| (0..n).all(|v| self.entries[u][v] == self.entries[v][u]))
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str(&self.labels.join(","));
            out.push('\n');
        }
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `e_u·b·e_v` for every basis triple `b`, as rows.
fn corner_span(u: &AlgebraElement, left: &[AlgebraElement], v: &AlgebraElement) -> Matrix {
    let ctx = u.context();
    let rows = left
        .iter()
        .map(|ub| ub.mul(v).expect("same context").to_vector())
        .collect();
    Matrix::from_rows(ctx.field(), ctx.dim(), rows)
}

pub fn cartan_matrix(s: &IdempotentSet) -> CartanMatrix {
    let ctx = s.context();
    let elems: Vec<&AlgebraElement> = s.entries().iter().map(|e| &e.element).collect();
    let basis: Vec<AlgebraElement> = ctx.basis().map(|t| AlgebraElement::basis(ctx, t)).collect();
    let size = elems.len();
    let entries = (0..size)
        .into_par_iter()
        .map(|u| {
            let left: Vec<AlgebraElement> = basis
                .iter()
                .map(|b| elems[u].mul(b).expect("same context"))
                .collect();
            (0..size)
                .map(|v| corner_span(elems[u], &left, elems[v]).rank())
                .collect()
        })
        .collect();
    let labels = s
        .entries()
        .iter()
        .map(|e| format!("e_{{{},{}}}", e.character + 1, e.slot))
        .collect();
    CartanMatrix { labels, entries }
}

/// Splits the matrix into a grid of `block × block` blocks.
pub fn block_view(
    m: &CartanMatrix,
    block: usize,
) -> Result<Vec<Vec<Vec<Vec<usize>>>>, CartanError> {
    let size = m.size();
    if block == 0 || !size.is_multiple_of(block) {
        return Err(CartanError::NotDivisor { block, size });
    }
    let grid = size / block;
    Ok((0..grid)
        .map(|bi| {
            (0..grid)
                .map(|bj| {
                    (0..block)
                        .map(|r| m.entries[bi * block + r][bj * block..(bj + 1) * block].to_vec())
                        .collect()
                })
                .collect()
        })
        .collect())
}

/// The printed claim for cyclic `G` of order `k >= 3`: every block is
/// `k·E`, `E` the `k × k` identity.
pub fn cyclic_block_claim(k: usize, n: usize) -> Vec<Vec<usize>> {
    let size = k * n;
    (0..size)
        .map(|u| {
            (0..size)
                .map(|v| if u % k == v % k { k } else { 0 })
                .collect()
        })
        .collect()
}

/// A note comparing the computed matrix with the `kE` block claim when `G`
/// is cyclic of order `k >= 3`; `None` for every other group.
pub fn discrepancy_note(s: &IdempotentSet, m: &CartanMatrix) -> Option<String> {
    let GroupKind::Cyclic(k) = *s.context().group().kind() else {
        return None;
    };
    if k < 3 {
        return None;
    }
    let claim = cyclic_block_claim(k, s.context().n());
    let differing = m
        .entries
        .iter()
        .flatten()
        .zip(claim.iter().flatten())
        .filter(|(a, b)| a != b)
        .count();
    Some(if differing == 0 {
        format!("computed matrix agrees with the printed kE block form (k = {k})")
    } else {
        format!(
            "computed matrix differs from the printed kE block form (k = {k}) in {differing} entries: \
             computed diagonal entries are {} where kE predicts {k}; \
             entries lie in {{0..{}}}, as expected for primitive idempotents of a semisimple algebra",
            m.entries[0][0],
            m.max_entry()
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brandt::BrandtContext;
    use crate::groups::{character_table, cyclic, Group};
    use crate::idempotents::primitive_idempotents;

    fn cartan_of(g: Group, n: usize) -> (IdempotentSet, CartanMatrix) {
        let t = character_table(&g).unwrap();
        let ctx = BrandtContext::new(g, n, t.field().clone());
        let s = primitive_idempotents(&ctx, &t).unwrap();
        let m = cartan_matrix(&s);
        (s, m)
    }

    #[test]
    fn trivial_group_gives_all_ones() {
        let (_, m) = cartan_of(cyclic(1), 3);
        assert_eq!(m.entries, vec![vec![1; 3]; 3]);
        assert_eq!(m.to_csv(false), "1,1,1\n1,1,1\n1,1,1\n");
    }

    #[test]
    fn c2_gives_identity_blocks() {
        let (_, m) = cartan_of(cyclic(2), 2);
        let blocks = block_view(&m, 2).unwrap();
        assert_eq!(blocks.len(), 2);
        for row in &blocks {
            for b in row {
                assert_eq!(b, &vec![vec![1, 0], vec![0, 1]]);
            }
        }
    }

    #[test]
    fn c3_has_identity_blocks_and_a_note() {
        let (s, m) = cartan_of(cyclic(3), 2);
        let blocks = block_view(&m, 3).unwrap();
        let e3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(blocks.iter().flatten().all(|b| *b == e3));
        assert!(m.is_symmetric());
        assert_eq!(m.row_sums(), vec![2; 6]);
        let note = discrepancy_note(&s, &m).unwrap();
        assert!(note.contains("differs"), "{note}");
    }

    #[test]
    fn block_view_rejects_non_divisors() {
        let (_, m) = cartan_of(cyclic(3), 2);
        assert_eq!(
            block_view(&m, 5),
            Err(CartanError::NotDivisor { block: 5, size: 6 })
        );
        assert_eq!(block_view(&m, 2).unwrap().len(), 3);
    }

    #[test]
    fn claim_shape() {
        let c = cyclic_block_claim(3, 2);
        assert_eq!(c[0], vec![3, 0, 0, 3, 0, 0]);
        assert_eq!(c[4], vec![0, 3, 0, 0, 3, 0]);
    }
}
