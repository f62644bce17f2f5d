//! The contracted semigroup algebra `ℂB(G,n)`.
//!
//! Basis elements are triples `(i,g,j)` with `1 <= i,j <= n` and `g ∈ G`;
//! the semigroup zero is identified with the algebra zero, so
//! `(i,a,λ)(j,b,μ)` is `(i,ab,μ)` when `λ = j` and `0` otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{CycloNum, FieldContext, FieldError};
use crate::exactla::Matrix;
use crate::groups::{label_index, Group};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different Brandt algebras")]
    ContextMismatch,
    #[error("element literal parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A basis triple `(i,g,j)`; `i` and `j` are 1-based, `g` is an element index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub i: usize,
    pub g: usize,
    pub j: usize,
}

impl Triple {
    pub fn new(i: usize, g: usize, j: usize) -> Self {
        Triple { i, g, j }
    }
}

/// `B(G,n)` with its coefficient field `Q(ζ_N)`.
#[derive(Debug)]
pub struct BrandtContext {
    group: Group,
    n: usize,
    field: Arc<FieldContext>,
}

impl BrandtContext {
    /// Panics if `n == 0` or the field cannot hold `G`'s character values.
    pub fn new(group: Group, n: usize, field: Arc<FieldContext>) -> Arc<Self> {
        assert!(n >= 1, "index count must be positive");
        assert_eq!(
            field.order() % group.exponent(),
            0,
            "field order must be a multiple of the group exponent"
        );
        Arc::new(BrandtContext { group, n, field })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    /// `n²·|G|`.
    pub fn dim(&self) -> usize {
        self.n * self.n * self.group.order()
    }

    /// Position of a triple in lexicographic `(i, g, j)` order.
    pub fn index(&self, t: Triple) -> usize {
        ((t.i - 1) * self.group.order() + t.g) * self.n + (t.j - 1)
    }

    pub fn triple(&self, idx: usize) -> Triple {
        let j = idx % self.n + 1;
        let rest = idx / self.n;
        let g = rest % self.group.order();
        let i = rest / self.group.order() + 1;
        Triple { i, g, j }
    }

    pub fn basis(&self) -> impl Iterator<Item = Triple> + '_ {
        (0..self.dim()).map(|k| self.triple(k))
    }

    /// Product of two basis triples; `None` is the algebra zero.
    pub fn mul_basis(&self, a: Triple, b: Triple) -> Option<Triple> {
        (a.j == b.i).then(|| Triple::new(a.i, self.group.mul(a.g, b.g), b.j))
    }

    pub fn format_triple(&self, t: Triple) -> String {
        format!("({},{},{})", t.i, self.group.label(t.g), t.j)
    }
}

/// Sparse element of `ℂB(G,n)`; zero coefficients are never stored and
/// iteration follows basis order.
#[derive(Clone)]
pub struct AlgebraElement {
    ctx: Arc<BrandtContext>,
    coeffs: BTreeMap<usize, CycloNum>,
}

fn same_ctx(a: &Arc<BrandtContext>, b: &Arc<BrandtContext>) -> bool {
    Arc::ptr_eq(a, b) || (a.n == b.n && a.group == b.group && a.field.order() == b.field.order())
}

impl AlgebraElement {
    pub fn zero(ctx: &Arc<BrandtContext>) -> Self {
        AlgebraElement {
            ctx: ctx.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(ctx: &Arc<BrandtContext>, t: Triple) -> Self {
        let mut x = Self::zero(ctx);
        x.coeffs.insert(ctx.index(t), CycloNum::one(&ctx.field));
        x
    }

    /// `Σ_i (i,e,i)`.
    pub fn identity(ctx: &Arc<BrandtContext>) -> Self {
        let e = ctx.group.identity();
        let mut x = Self::zero(ctx);
        for i in 1..=ctx.n {
            x.coeffs
                .insert(ctx.index(Triple::new(i, e, i)), CycloNum::one(&ctx.field));
        }
        x
    }

    pub fn from_terms(
        ctx: &Arc<BrandtContext>,
        terms: impl IntoIterator<Item = (Triple, CycloNum)>,
    ) -> Self {
        let mut x = Self::zero(ctx);
        for (t, c) in terms {
            x.add_term(ctx.index(t), c);
        }
        x
    }

    /// Dense coordinates in basis order.
    pub fn from_vector(ctx: &Arc<BrandtContext>, v: &[CycloNum]) -> Self {
        assert_eq!(v.len(), ctx.dim());
        AlgebraElement {
            ctx: ctx.clone(),
            coeffs: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect(),
        }
    }

    pub fn to_vector(&self) -> Vec<CycloNum> {
        let mut v = vec![CycloNum::zero(&self.ctx.field); self.ctx.dim()];
        for (&k, c) in &self.coeffs {
            v[k] = c.clone();
        }
        v
    }

    fn add_term(&mut self, k: usize, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> &Arc<BrandtContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t: Triple) -> CycloNum {
        self.coeffs
            .get(&self.ctx.index(t))
            .cloned()
            .unwrap_or_else(|| CycloNum::zero(&self.ctx.field))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Triple, &CycloNum)> {
        self.coeffs.iter().map(|(&k, c)| (self.ctx.triple(k), c))
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ctx);
        }
        AlgebraElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    /// Bilinear extension of `mul_basis`.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let ctx = &self.ctx;
        // right factor grouped by its first index
        let mut by_row: Vec<Vec<(Triple, &CycloNum)>> = vec![Vec::new(); ctx.n];
        for (t, c) in other.terms() {
            by_row[t.i - 1].push((t, c));
        }
        let mut out = Self::zero(ctx);
        for (a, ca) in self.terms() {
            for &(b, cb) in &by_row[a.j - 1] {
                let t = Triple::new(a.i, ctx.group.mul(a.g, b.g), b.j);
                out.add_term(ctx.index(t), ca * cb);
            }
        }
        Ok(out)
    }

    /// Rows `b·x` for every basis triple `b`, in basis order; their span is
    /// the left ideal `ℂS·x`.
    pub fn left_multiples(&self) -> Matrix {
        self.multiples(true)
    }

    /// Rows `x·b`; their span is the right ideal `x·ℂS`.
    pub fn right_multiples(&self) -> Matrix {
        self.multiples(false)
    }

    fn multiples(&self, left: bool) -> Matrix {
        let ctx = &self.ctx;
        let rows = ctx
            .basis()
            .map(|b| {
                let b = AlgebraElement::basis(ctx, b);
                let p = if left { b.mul(self) } else { self.mul(&b) };
                p.expect("same context").to_vector()
            })
            .collect();
        Matrix::from_rows(&ctx.field, ctx.dim(), rows)
    }

    pub fn support(&self) -> Vec<Triple> {
        self.coeffs.keys().map(|&k| self.ctx.triple(k)).collect()
    }

    pub fn weight(&self) -> usize {
        self.coeffs.len()
    }

    /// Number of basis coordinates where the coefficients differ.
    pub fn hamming(&self, other: &Self) -> Result<usize, AlgebraError> {
        self.check(other)?;
        let mut d = 0;
        for (k, c) in &self.coeffs {
            if other.coeffs.get(k) != Some(c) {
                d += 1;
            }
        }
        d += other
            .coeffs
            .keys()
            .filter(|k| !self.coeffs.contains_key(k))
            .count();
        Ok(d)
    }

    /// Parses the canonical element syntax, e.g.
    /// `1/2*(1,e,1) - 1/2*(1,a,1)` or `(1/3 - 1/6*z)*(2,a^2,1)`.
    pub fn parse(ctx: &Arc<BrandtContext>, s: &str) -> Result<Self, AlgebraError> {
        ElementParser {
            ctx,
            labels: label_index(&ctx.group),
            src: s,
            pos: 0,
        }
        .parse()
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (t, c)) in self.terms().enumerate() {
            let triple = self.ctx.format_triple(t);
            if c.is_monomial() {
                let neg = c.leading_negative();
                let abs = if neg { -c } else { c.clone() };
                match (n, neg) {
                    (0, true) => f.write_str("-")?,
                    (0, false) => {}
                    (_, true) => f.write_str(" - ")?,
                    (_, false) => f.write_str(" + ")?,
                }
                write!(f, "{abs}*{triple}")?;
            } else {
                if n > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "({c})*{triple}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

struct ElementParser<'a> {
    ctx: &'a Arc<BrandtContext>,
    labels: std::collections::HashMap<&'a str, usize>,
    src: &'a str,
    pos: usize,
}

impl ElementParser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    /// Byte offset (relative to `pos`) of the `)` closing the `(` at `pos`.
    fn matching_paren(&self) -> Option<usize> {
        let mut depth = 0usize;
        for (k, ch) in self.rest().char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(k);
                    }
                }
                _ => {}
            }
        }
        None
    }

    fn parse(mut self) -> Result<AlgebraElement, AlgebraError> {
        let field = self.ctx.field.clone();
        let mut out = AlgebraElement::zero(self.ctx);
        self.skip_ws();
        if self.rest().is_empty() {
            return self.err("empty element literal");
        }
        if self.rest().trim_end() == "0" {
            return Ok(out);
        }
        let mut first = true;
        loop {
            self.skip_ws();
            if self.rest().is_empty() {
                break;
            }
            let mut negative = false;
            if self.rest().starts_with('-') {
                negative = true;
                self.pos += 1;
            } else if self.rest().starts_with('+') && !first {
                self.pos += 1;
            } else if !first {
                return self.err("expected '+' or '-'");
            }
            self.skip_ws();
            let mut coeff = CycloNum::one(&field);
            if self.rest().starts_with('(') {
                let close = self
                    .matching_paren()
                    .map_or_else(|| self.err("unbalanced '('"), Ok)?;
                let after = self.rest()[close + 1..].trim_start();
                if after.starts_with('*') {
                    let inner = &self.rest()[1..close];
                    let inner_pos = self.pos + 1;
                    coeff = CycloNum::parse(&field, inner).map_err(|e| shift(e, inner_pos))?;
                    let star = self.rest()[close + 1..].find('*').unwrap();
                    self.pos += close + 1 + star + 1;
                    self.skip_ws();
                }
            } else {
                let Some(open) = self.rest().find('(') else {
                    return self.err("expected a basis triple");
                };
                let head = self.rest()[..open].trim_end();
                let Some(lit) = head.strip_suffix('*') else {
                    return self.err("expected '*' before the basis triple");
                };
                let lit_pos = self.pos;
                coeff = CycloNum::parse(&field, lit).map_err(|e| shift(e, lit_pos))?;
                self.pos += open;
            }
            let t = self.triple()?;
            if negative {
                coeff = -coeff;
            }
            out.add_term(self.ctx.index(t), coeff);
            first = false;
        }
        Ok(out)
    }

    fn triple(&mut self) -> Result<Triple, AlgebraError> {
        if !self.rest().starts_with('(') {
            return self.err("expected '('");
        }
        let close = self
            .matching_paren()
            .map_or_else(|| self.err("unbalanced '('"), Ok)?;
        let body = &self.rest()[1..close];
        let (Some(c1), Some(c2)) = (body.find(','), body.rfind(',')) else {
            return self.err("triple needs the form (i,g,j)");
        };
        if c1 == c2 {
            return self.err("triple needs the form (i,g,j)");
        }
        let n = self.ctx.n;
        let index = |s: &str| s.trim().parse::<usize>().ok().filter(|&k| k >= 1 && k <= n);
        let (Some(i), Some(j)) = (index(&body[..c1]), index(&body[c2 + 1..])) else {
            return self.err(format!("triple indices must lie in 1..={n}"));
        };
        let label = body[c1 + 1..c2].trim();
        let Some(&g) = self.labels.get(label) else {
            return self.err(format!("unknown group element '{label}'"));
        };
        self.pos += close + 1;
        Ok(Triple::new(i, g, j))
    }
}

fn shift(e: FieldError, offset: usize) -> AlgebraError {
    match e {
        FieldError::Parse { pos, msg } => AlgebraError::Parse {
            pos: pos + offset,
            msg,
        },
        other => AlgebraError::Field(other),
    }
}
