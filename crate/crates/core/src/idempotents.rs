//! The complete set `{e_ij}` of primitive orthogonal idempotents of
//! `ℂB(G,n)`, its exact verification, and the primitive central idempotents.
//!
//! For a character `χ_i` and slot `j`,
//! `e_ij = (χ_i(e)/|G|) Σ_g χ_i(g⁻¹)·(j,g,j)`.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::brandt::{AlgebraElement, BrandtContext, Triple};
use crate::cyclotomic::{CycloNum, Rational};
use crate::groups::{CharacterTable, GroupKind, TableError};

#[derive(Debug, Error)]
pub enum IdempotentError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("character table lives in Q(zeta_{table}) but the algebra uses Q(zeta_{algebra})")]
    FieldMismatch { table: usize, algebra: usize },
    #[error("character index {0} out of range (table has {1} characters)")]
    NoSuchCharacter(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentEntry {
    /// 0-based row of the character table.
    pub character: usize,
    /// 1-based slot `j`.
    pub slot: usize,
    pub element: AlgebraElement,
}

/// `{e_ij}` in canonical order: slot outer, character inner.
#[derive(Debug, Clone)]
pub struct IdempotentSet {
    ctx: Arc<BrandtContext>,
    degrees: Vec<usize>,
    entries: Vec<IdempotentEntry>,
}

impl IdempotentSet {
    pub fn context(&self) -> &Arc<BrandtContext> {
        &self.ctx
    }

    pub fn entries(&self) -> &[IdempotentEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of characters `r`.
    pub fn characters(&self) -> usize {
        self.degrees.len()
    }

    /// `χ_i(e)` for each character.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Position of `e_ij` (0-based character, 1-based slot).
    pub fn position(&self, character: usize, slot: usize) -> usize {
        (slot - 1) * self.degrees.len() + character
    }

    pub fn get(&self, character: usize, slot: usize) -> &AlgebraElement {
        &self.entries[self.position(character, slot)].element
    }

    /// Dimension of the simple module `ℂS·e_ij`, i.e. `n·χ_i(e)`.
    pub fn simple_dimension(&self, position: usize) -> usize {
        self.ctx.n() * self.degrees[self.entries[position].character]
    }

    /// Closed-form label `p + q·k·(n+1)` for cyclic `G` of order `k`
    /// (`p` the 1-based character, `q = j − 1`); `None` otherwise.
    pub fn cyclic_label(&self, position: usize) -> Option<usize> {
        let GroupKind::Cyclic(k) = *self.ctx.group().kind() else {
            return None;
        };
        let e = &self.entries[position];
        Some(e.character + 1 + (e.slot - 1) * k * (self.ctx.n() + 1))
    }

    /// Consecutive label `1, 2, …` in canonical order.
    pub fn sequential_label(&self, position: usize) -> usize {
        position + 1
    }

    /// Swaps in a different element, for checking the verifier on broken sets.
    pub fn replace_element(&mut self, position: usize, element: AlgebraElement) {
        self.entries[position].element = element;
    }
}

/// Builds every `e_ij` exactly, reading `χ_i(g⁻¹)` off the class of `g⁻¹`.
pub fn primitive_idempotents(
    ctx: &Arc<BrandtContext>,
    table: &CharacterTable,
) -> Result<IdempotentSet, IdempotentError> {
    if table.field().order() != ctx.field().order() {
        return Err(IdempotentError::FieldMismatch {
            table: table.field().order(),
            algebra: ctx.field().order(),
        });
    }
    let group = ctx.group();
    let columns = table.element_columns(group)?;
    let order = Rational::from_integer(group.order().into());
    let degrees = table.degrees();
    let mut entries = Vec::with_capacity(degrees.len() * ctx.n());
    for slot in 1..=ctx.n() {
        for (character, &deg) in degrees.iter().enumerate() {
            let scale = Rational::from_integer(deg.into()) / &order;
            let terms = (0..group.order()).map(|g| {
                let value = table.value(character, columns[group.inverse(g)]);
                (Triple::new(slot, g, slot), value.scale(&scale))
            });
            entries.push(IdempotentEntry {
                character,
                slot,
                element: AlgebraElement::from_terms(ctx, terms),
            });
        }
    }
    Ok(IdempotentSet {
        ctx: ctx.clone(),
        degrees,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitivityCheck {
    pub claimed: usize,
    pub measured: usize,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct VerificationCertificate {
    pub nonzero: Vec<bool>,
    pub idempotency: Vec<bool>,
    /// `((u, v), e_u·e_v = 0 and e_v·e_u = 0)` for `u < v`.
    pub orthogonality: Vec<((usize, usize), bool)>,
    pub completeness: bool,
    pub primitivity: Vec<PrimitivityCheck>,
}

impl VerificationCertificate {
    pub fn passed(&self) -> bool {
        self.nonzero.iter().all(|&b| b)
            && self.idempotency.iter().all(|&b| b)
            && self.orthogonality.iter().all(|(_, b)| *b)
            && self.completeness
            && self.primitivity.iter().all(|p| p.pass)
    }
}

pub fn is_idempotent(x: &AlgebraElement) -> bool {
    x.mul(x).is_ok_and(|sq| sq == *x)
}

pub fn are_orthogonal(x: &AlgebraElement, y: &AlgebraElement) -> bool {
    x.mul(y).is_ok_and(|p| p.is_zero()) && y.mul(x).is_ok_and(|p| p.is_zero())
}

/// `x·b = b·x` for every basis triple `b`.
pub fn is_central(x: &AlgebraElement) -> bool {
    let ctx = x.context();
    ctx.basis().all(|t| {
        let b = AlgebraElement::basis(ctx, t);
        x.mul(&b).ok() == b.mul(x).ok()
    })
}

/// `dim ℂS·x`.
pub fn left_ideal_dimension(x: &AlgebraElement) -> usize {
    x.left_multiples().rank()
}

/// Checks idempotency, pairwise orthogonality, `Σ e_ij = 1`, and
/// primitivity through `dim ℂS·e_ij = n·χ_i(e)`; the algebra is semisimple,
/// so a left ideal of simple-module dimension cannot split further.
pub fn verify_complete_set(s: &IdempotentSet) -> VerificationCertificate {
    let elems: Vec<&AlgebraElement> = s.entries.iter().map(|e| &e.element).collect();
    let nonzero = elems.iter().map(|e| !e.is_zero()).collect();
    let idempotency = elems.par_iter().map(|e| is_idempotent(e)).collect();
    let pairs: Vec<(usize, usize)> = (0..elems.len())
        .flat_map(|u| (u + 1..elems.len()).map(move |v| (u, v)))
        .collect();
    let orthogonality = pairs
        .par_iter()
        .map(|&(u, v)| ((u, v), are_orthogonal(elems[u], elems[v])))
        .collect();
    let mut sum = AlgebraElement::zero(&s.ctx);
    for e in &elems {
        sum = sum.add(e).expect("same context");
    }
    let completeness = sum == AlgebraElement::identity(&s.ctx);
    let primitivity = (0..elems.len())
        .into_par_iter()
        .map(|u| {
            let claimed = s.simple_dimension(u);
            let measured = left_ideal_dimension(elems[u]);
            PrimitivityCheck {
                claimed,
                measured,
                pass: claimed == measured,
            }
        })
        .collect();
    VerificationCertificate {
        nonzero,
        idempotency,
        orthogonality,
        completeness,
        primitivity,
    }
}

/// Primitive central idempotent of `χ_i`.
///
/// In the contracted algebra of a Brandt semigroup the natural partial
/// order on nonzero elements is trivial, so the Möbius-corrected basis
/// element attached to `s` is `s` itself and the central idempotent is the
/// group-algebra idempotent `(χ(e)/|G|) Σ_g χ(g⁻¹) g` placed on every
/// diagonal block `(j,·,j)`.
pub fn central_idempotent(
    ctx: &Arc<BrandtContext>,
    table: &CharacterTable,
    character: usize,
) -> Result<AlgebraElement, IdempotentError> {
    if character >= table.len() {
        return Err(IdempotentError::NoSuchCharacter(character, table.len()));
    }
    let group = ctx.group();
    let columns = table.element_columns(group)?;
    let group_coeffs: Vec<CycloNum> = (0..group.order())
        .map(|g| {
            let chi_e = table.value(character, 0);
            let chi_inv = table.value(character, columns[group.inverse(g)]);
            (chi_e * chi_inv).scale(&Rational::new(1.into(), group.order().into()))
        })
        .collect();
    let terms = (1..=ctx.n()).flat_map(|j| {
        group_coeffs
            .iter()
            .enumerate()
            .map(move |(g, c)| (Triple::new(j, g, j), c.clone()))
    });
    Ok(AlgebraElement::from_terms(ctx, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{character_table, cyclic, s3, Group};

    fn setup(g: Group, n: usize) -> (Arc<BrandtContext>, CharacterTable) {
        let t = character_table(&g).unwrap();
        let ctx = BrandtContext::new(g, n, t.field().clone());
        (ctx, t)
    }

    #[test]
    fn trivial_group_two_slots() {
        let (ctx, t) = setup(cyclic(1), 2);
        let s = primitive_idempotents(&ctx, &t).unwrap();
        let shown: Vec<String> = s.entries().iter().map(|e| e.element.to_string()).collect();
        assert_eq!(shown, vec!["1*(1,e,1)", "1*(2,e,2)"]);
        assert_eq!(s.cyclic_label(0), Some(1));
        assert_eq!(s.cyclic_label(1), Some(4));
    }

    #[test]
    fn cyclic_three_second_entry() {
        let (ctx, t) = setup(cyclic(3), 2);
        let s = primitive_idempotents(&ctx, &t).unwrap();
        let f = ctx.field();
        let c = s.entries()[1].element.coeff(Triple::new(1, 1, 1));
        let third_zeta = CycloNum::root_of_unity(f, 1).scale(&Rational::new(1.into(), 3.into()));
        assert_eq!(c, third_zeta);
    }

    #[test]
    fn cyclic_four_e31() {
        let (ctx, t) = setup(cyclic(4), 1);
        let s = primitive_idempotents(&ctx, &t).unwrap();
        let c = s.get(2, 1).coeff(Triple::new(1, 1, 1));
        let quarter_i =
            CycloNum::root_of_unity(ctx.field(), 1).scale(&Rational::new(1.into(), 4.into()));
        assert_eq!(c, quarter_i);
    }

    #[test]
    fn s3_set_is_complete_but_degree_two_entries_split() {
        let (ctx, t) = setup(s3(), 2);
        let s = primitive_idempotents(&ctx, &t).unwrap();
        assert_eq!(s.len(), 6);
        let cert = verify_complete_set(&s);
        assert!(cert.idempotency.iter().all(|&b| b));
        assert!(cert.orthogonality.iter().all(|(_, b)| *b));
        assert!(cert.completeness);
        // linear characters give simple ideals of dimension n
        for u in [0, 1, 3, 4] {
            assert!(cert.primitivity[u].pass);
            assert_eq!(cert.primitivity[u].measured, 2);
        }
        // the degree-2 character gives n·χ(e)² = 8, twice the simple dimension
        for u in [2, 5] {
            assert_eq!(cert.primitivity[u].claimed, 4);
            assert_eq!(cert.primitivity[u].measured, 8);
            assert!(!cert.primitivity[u].pass);
        }
        assert!(!cert.passed());
    }

    #[test]
    fn doubled_entry_fails_idempotency() {
        let (ctx, t) = setup(cyclic(3), 2);
        let mut s = primitive_idempotents(&ctx, &t).unwrap();
        let two = CycloNum::from_int(ctx.field(), 2);
        let doubled = s.entries()[0].element.scale(&two);
        s.replace_element(0, doubled);
        let cert = verify_complete_set(&s);
        assert!(!cert.idempotency[0]);
        assert!(cert.idempotency[1..].iter().all(|&b| b));
        assert!(!cert.completeness);
        assert!(!cert.passed());
    }

    #[test]
    fn simple_dimension_for_c2() {
        let (ctx, t) = setup(cyclic(2), 2);
        let s = primitive_idempotents(&ctx, &t).unwrap();
        let m = s.entries()[0].element.left_multiples();
        assert_eq!(m.nrows(), 8);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn centrality() {
        let (ctx, t) = setup(cyclic(1), 2);
        let e1 = AlgebraElement::basis(&ctx, Triple::new(1, 0, 1));
        assert!(is_idempotent(&e1));
        assert!(!is_central(&e1));
        assert!(is_central(&AlgebraElement::identity(&ctx)));
        let c = central_idempotent(&ctx, &t, 0).unwrap();
        assert_eq!(c, AlgebraElement::identity(&ctx));
    }

    #[test]
    fn c4_orthogonal_pair() {
        let (ctx, t) = setup(cyclic(4), 1);
        let s = primitive_idempotents(&ctx, &t).unwrap();
        // trivial and sign characters
        assert!(are_orthogonal(s.get(3, 1), s.get(1, 1)));
    }

    #[test]
    fn c2_central_idempotent_of_second_character() {
        let (ctx, t) = setup(cyclic(2), 1);
        let c = central_idempotent(&ctx, &t, 1).unwrap();
        assert_eq!(c.to_string(), "1/2*(1,e,1) + 1/2*(1,a,1)");
        assert!(central_idempotent(&ctx, &t, 2).is_err());
    }

    #[test]
    fn mismatched_field_is_rejected() {
        let t = character_table(&cyclic(3)).unwrap();
        let ctx = BrandtContext::new(cyclic(3), 1, crate::cyclotomic::FieldContext::new(6));
        assert!(matches!(
            primitive_idempotents(&ctx, &t),
            Err(IdempotentError::FieldMismatch { .. })
        ));
    }
}
