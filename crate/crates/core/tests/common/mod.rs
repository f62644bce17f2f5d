#![allow(dead_code)]

use std::sync::Arc;

use brandt_core::brandt::{AlgebraElement, BrandtContext, Triple};
use brandt_core::cyclotomic::CycloNum;
use brandt_core::groups::{character_table, CharacterTable, Group};
use brandt_core::idempotents::{primitive_idempotents, IdempotentSet};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;

pub struct Instance {
    pub ctx: Arc<BrandtContext>,
    pub table: CharacterTable,
    pub set: IdempotentSet,
}

pub fn instance(g: Group, n: usize) -> Instance {
    let table = character_table(&g).unwrap();
    let ctx = BrandtContext::new(g, n, table.field().clone());
    let set = primitive_idempotents(&ctx, &table).unwrap();
    Instance { ctx, table, set }
}

/// Builds an element from `(coefficient literal, i, group label, j)` terms.
pub fn elem(ctx: &Arc<BrandtContext>, terms: &[(&str, usize, &str, usize)]) -> AlgebraElement {
    AlgebraElement::from_terms(
        ctx,
        terms.iter().map(|&(c, i, g, j)| {
            let g = ctx
                .group()
                .index_of(g)
                .unwrap_or_else(|| panic!("no element {g}"));
            (
                Triple::new(i, g, j),
                CycloNum::parse(ctx.field(), c).unwrap(),
            )
        }),
    )
}

/// Every expected element occurs in the set, and the sizes agree.
pub fn same_set(set: &IdempotentSet, expected: &[AlgebraElement]) -> Result<(), String> {
    let got: Vec<&AlgebraElement> = set.entries().iter().map(|e| &e.element).collect();
    if got.len() != expected.len() {
        return Err(format!(
            "{} elements, expected {}",
            got.len(),
            expected.len()
        ));
    }
    for x in expected {
        if !got.contains(&x) {
            return Err(format!("missing {x}"));
        }
    }
    Ok(())
}

pub fn sum_all(xs: &[AlgebraElement]) -> AlgebraElement {
    let mut s = AlgebraElement::zero(xs[0].context());
    for x in xs {
        s = s.add(x).unwrap();
    }
    s
}

// ---- floating-point oracle -------------------------------------------------

/// Image of a cyclotomic number under `ζ ↦ exp(2πi t / N)`.
pub fn embed(x: &CycloNum, t: usize) -> Complex64 {
    let n = x.context().order() as f64;
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / n);
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.to_f64().unwrap() * w.powu(k as u32))
        .sum()
}

pub fn embed_element(x: &AlgebraElement, t: usize) -> Vec<Complex64> {
    x.to_vector().iter().map(|c| embed(c, t)).collect()
}

/// Product in `ℂB(G,n)` computed directly from the group table, in floats.
pub fn float_mul(ctx: &BrandtContext, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    let n = ctx.n();
    let k = ctx.group().order();
    let unpack = |idx: usize| {
        let j = idx % n;
        let rest = idx / n;
        (rest / k, rest % k, j)
    };
    let mut out = vec![Complex64::new(0.0, 0.0); ctx.dim()];
    for (a, xa) in x.iter().enumerate() {
        if xa.norm() == 0.0 {
            continue;
        }
        let (i, g, j) = unpack(a);
        for (b, yb) in y.iter().enumerate() {
            if yb.norm() == 0.0 {
                continue;
            }
            let (i2, h, l) = unpack(b);
            if j != i2 {
                continue;
            }
            let gh = ctx.group().mul(g, h);
            out[(i * k + gh) * n + l] += xa * yb;
        }
    }
    out
}

/// Numerical rank with partial pivoting; pivots below `tol` count as zero.
pub fn float_rank(rows: &[Vec<Complex64>], tol: f64) -> usize {
    let mut m: Vec<Vec<Complex64>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some((p, best)) = (rank..m.len())
            .map(|r| (r, m[r][c].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            break;
        };
        if best <= tol {
            continue;
        }
        m.swap(rank, p);
        let pivot = m[rank][c];
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let f = row[c] / pivot;
            if f.norm() != 0.0 {
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn random_unit_exponent<R: Rng>(rng: &mut R, n: usize) -> usize {
    loop {
        let t = rng.gen_range(1..=n.max(1));
        if num_integer::gcd(t, n) == 1 || n == 1 {
            return t % n.max(1);
        }
    }
}
