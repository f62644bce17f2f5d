//! Finite groups given by multiplication tables, their conjugacy classes,
//! and exact character tables checked against both orthogonality relations.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycloNum, FieldContext, FieldError, Rational};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("no built-in character table for {0}; supply one with a table file (load_table)")]
    Unsupported(String),
    #[error("built-in character table for {0} failed validation: {1}")]
    BrokenBuiltin(String, String),
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("table parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("table value at character {row}, class {col}: {source}")]
    Literal {
        row: usize,
        col: usize,
        source: FieldError,
    },
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("table validation failed: {0}")]
    Validation(String),
    #[error("table does not match group {group}: {msg}")]
    Mismatch { group: String, msg: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// How a group was built; drives the built-in character tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    Symmetric3,
    Product(Box<Group>, Box<Group>),
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    letters: Vec<char>,
    kind: GroupKind,
}

impl Group {
    /// Validates a multiplication table (`table[a][b]` is the index of `ab`).
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Group, GroupError> {
        Self::build(name.into(), labels, table, Vec::new(), GroupKind::Custom)
    }

    fn build(
        name: String,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        letters: Vec<char>,
        kind: GroupKind,
    ) -> Result<Group, GroupError> {
        let m = table.len();
        let bad = |msg: String| Err(GroupError::InvalidTable(msg));
        if m == 0 {
            return bad("empty group".into());
        }
        if labels.len() != m {
            return bad(format!("{} labels for {m} elements", labels.len()));
        }
        if labels.iter().collect::<BTreeSet<_>>().len() != m {
            return bad("element labels are not distinct".into());
        }
        if table
            .iter()
            .any(|r| r.len() != m || r.iter().any(|&x| x >= m))
        {
            return bad("table is not a square table of element indices".into());
        }
        let Some(identity) = (0..m).find(|&e| (0..m).all(|x| table[e][x] == x && table[x][e] == x))
        else {
            return bad("no identity element".into());
        };
        let mut inverses = Vec::with_capacity(m);
        for a in 0..m {
            match (0..m).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses.push(b),
                None => return bad(format!("{} has no inverse", labels[a])),
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a][b];
                for c in 0..m {
                    if table[ab][c] != table[a][table[b][c]] {
                        return bad(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        Ok(Group {
            name,
            labels,
            table,
            identity,
            inverses,
            letters,
            kind,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Smallest `N` with `g^N = e` for every `g`.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (0..m).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn power_label(letter: char, j: usize) -> String {
    match j {
        0 => "e".to_string(),
        1 => letter.to_string(),
        _ => format!("{letter}^{j}"),
    }
}

/// `⟨a | a^k = e⟩` with elements `e, a, a^2, …`.
pub fn cyclic(k: usize) -> Group {
    cyclic_named(k, 'a')
}

/// Cyclic group whose generator prints as `letter`.
pub fn cyclic_named(k: usize, letter: char) -> Group {
    assert!(k >= 1, "cyclic group order must be positive");
    let labels = (0..k).map(|j| power_label(letter, j)).collect();
    let table = (0..k)
        .map(|i| (0..k).map(|j| (i + j) % k).collect())
        .collect();
    Group::build(
        format!("C{k}"),
        labels,
        table,
        vec![letter],
        GroupKind::Cyclic(k),
    )
    .expect("cyclic table is a group")
}

/// The symmetric group on three points, elements ordered
/// `e, (12), (13), (23), (123), (132)`.
pub fn s3() -> Group {
    // images of (1, 2, 3), zero-based
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let compose = |s: &[usize; 3], t: &[usize; 3]| [s[t[0]], s[t[1]], s[t[2]]];
    let table = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| {
                    let st = compose(s, t);
                    perms.iter().position(|p| *p == st).unwrap()
                })
                .collect()
        })
        .collect();
    Group::build(
        "S3".into(),
        labels,
        table,
        Vec::new(),
        GroupKind::Symmetric3,
    )
    .expect("S3 table is a group")
}

/// `G × H` with element index `g + |G|·h` (first factor varies fastest).
pub fn direct_product(g: &Group, h: &Group) -> Group {
    let mut h = h.clone();
    if let GroupKind::Cyclic(k) = h.kind {
        if h.letters.iter().any(|c| g.letters.contains(c)) {
            let fresh = ('a'..='z')
                .find(|c| !g.letters.contains(c))
                .expect("ran out of generator letters");
            h = cyclic_named(k, fresh);
        }
    }
    let (m, n) = (g.order(), h.order());
    let idx = |a: usize, b: usize| a + m * b;
    let mut labels = Vec::with_capacity(m * n);
    for b in 0..n {
        for a in 0..m {
            labels.push(match (a == g.identity, b == h.identity) {
                (true, true) => "e".to_string(),
                (false, true) => g.labels[a].clone(),
                (true, false) => h.labels[b].clone(),
                (false, false) => format!("{}{}", g.labels[a], h.labels[b]),
            });
        }
    }
    if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
        labels = (0..n)
            .flat_map(|b| (0..m).map(move |a| (a, b)))
            .map(|(a, b)| format!("({},{})", g.labels[a], h.labels[b]))
            .collect();
    }
    let mut table = vec![vec![0; m * n]; m * n];
    for b1 in 0..n {
        for a1 in 0..m {
            for b2 in 0..n {
                for a2 in 0..m {
                    table[idx(a1, b1)][idx(a2, b2)] = idx(g.mul(a1, a2), h.mul(b1, b2));
                }
            }
        }
    }
    let mut letters = g.letters.clone();
    letters.extend(h.letters.iter().copied());
    Group::build(
        format!("{}x{}", g.name, h.name),
        labels,
        table,
        letters,
        GroupKind::Product(Box::new(g.clone()), Box::new(h)),
    )
    .expect("direct product of groups is a group")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub rep: usize,
    pub members: Vec<usize>,
    pub centralizer_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Classes ordered identity first, then by ascending representative
/// (the least element index in the class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn conjugacy_classes(g: &Group) -> ConjugacyClasses {
    let m = g.order();
    let mut class_of = vec![usize::MAX; m];
    let mut classes = Vec::new();
    let order = std::iter::once(g.identity()).chain((0..m).filter(|&x| x != g.identity()));
    for x in order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..m).map(|y| g.mul(g.mul(y, x), g.inverse(y))).collect();
        let id = classes.len();
        for &y in &orbit {
            class_of[y] = id;
        }
        let members: Vec<usize> = orbit.into_iter().collect();
        classes.push(ConjugacyClass {
            rep: x,
            centralizer_order: m / members.len(),
            members,
        });
    }
    ConjugacyClasses { classes, class_of }
}

/// Per-class data as it appears in a table file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub rep: String,
    pub size: usize,
    pub centralizer: usize,
}

/// Irreducible characters as rows of exact values, one column per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    name: String,
    group_order: usize,
    field: Arc<FieldContext>,
    classes: Vec<ClassInfo>,
    rows: Vec<Vec<CycloNum>>,
}

impl CharacterTable {
    pub fn new(
        name: impl Into<String>,
        group_order: usize,
        field: Arc<FieldContext>,
        classes: Vec<ClassInfo>,
        rows: Vec<Vec<CycloNum>>,
    ) -> Self {
        CharacterTable {
            name: name.into(),
            group_order,
            field,
            classes,
            rows,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn rows(&self) -> &[Vec<CycloNum>] {
        &self.rows
    }

    /// Number of irreducible characters, `r`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn value(&self, character: usize, class: usize) -> &CycloNum {
        &self.rows[character][class]
    }

    /// `χ_i(e)` as a positive integer; the identity class is column 0.
    pub fn degree(&self, character: usize) -> usize {
        let v = self.rows[character][0]
            .as_rational()
            .expect("degree is rational");
        v.to_integer().try_into().expect("degree fits usize")
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.degree(i)).collect()
    }

    /// For each element of `g`, the table column holding its class.
    /// Class representatives are matched to element labels.
    pub fn element_columns(&self, g: &Group) -> Result<Vec<usize>, TableError> {
        let mismatch = |msg: String| TableError::Mismatch {
            group: g.name().to_string(),
            msg,
        };
        if self.group_order != g.order() {
            return Err(mismatch(format!(
                "table is for a group of order {}, group has order {}",
                self.group_order,
                g.order()
            )));
        }
        let cc = conjugacy_classes(g);
        if cc.len() != self.classes.len() {
            return Err(mismatch(format!(
                "{} table classes, group has {}",
                self.classes.len(),
                cc.len()
            )));
        }
        let mut col_of_class = vec![usize::MAX; cc.len()];
        for (col, info) in self.classes.iter().enumerate() {
            let x = g
                .index_of(&info.rep)
                .ok_or_else(|| mismatch(format!("no element labelled {}", info.rep)))?;
            let c = cc.class_of[x];
            if col_of_class[c] != usize::MAX {
                return Err(mismatch(format!(
                    "two columns name the class of {}",
                    info.rep
                )));
            }
            if cc.classes[c].size() != info.size {
                return Err(mismatch(format!(
                    "class of {} has size {}, table says {}",
                    info.rep,
                    cc.classes[c].size(),
                    info.size
                )));
            }
            col_of_class[c] = col;
        }
        Ok(cc.class_of.iter().map(|&c| col_of_class[c]).collect())
    }

    /// Canonical JSON text of the table file format.
    pub fn to_json(&self) -> String {
        let file = TableFile {
            name: self.name.clone(),
            group_order: self.group_order,
            root_order: self.field.order(),
            classes: self.classes.clone(),
            characters: self
                .rows
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("table serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    name: String,
    group_order: usize,
    root_order: usize,
    classes: Vec<ClassInfo>,
    characters: Vec<Vec<String>>,
}

/// Parses and validates a table file held in memory.
pub fn parse_table(text: &str) -> Result<CharacterTable, TableError> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| TableError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    if file.root_order == 0 {
        return Err(TableError::Shape("root_order must be positive".into()));
    }
    if file.classes.is_empty() {
        return Err(TableError::Shape("no classes".into()));
    }
    if file.characters.len() != file.classes.len() {
        return Err(TableError::Shape(format!(
            "{} characters for {} classes",
            file.characters.len(),
            file.classes.len()
        )));
    }
    let field = FieldContext::new(file.root_order);
    let mut rows = Vec::with_capacity(file.characters.len());
    for (i, row) in file.characters.iter().enumerate() {
        if row.len() != file.classes.len() {
            return Err(TableError::Shape(format!(
                "character {} has {} values for {} classes",
                i + 1,
                row.len(),
                file.classes.len()
            )));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                CycloNum::parse(&field, s).map_err(|source| TableError::Literal {
                    row: i + 1,
                    col: j + 1,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(parsed);
    }
    let table = CharacterTable::new(file.name, file.group_order, field, file.classes, rows);
    let report = validate_orthogonality(&table);
    if !report.passed() {
        let failed: Vec<String> = report.failures().map(ToString::to_string).collect();
        return Err(TableError::Validation(failed.join("; ")));
    }
    Ok(table)
}

pub fn load_table(path: impl AsRef<Path>) -> Result<CharacterTable, TableError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// `Σ |C|·(class size) = |G|` and `size·centralizer = |G|`.
    ClassEquation { class: usize },
    /// `⟨χ_i, χ_j⟩ = δ_ij`.
    Row { i: usize, j: usize },
    /// `Σ_i χ_i(g_a)·conj(χ_i(g_b)) = δ_ab·|C_G(g_a)|`.
    Column { a: usize, b: usize },
    /// `Σ_i χ_i(e)^2 = |G|`.
    DegreeSum,
    /// Column 0 is the identity class and every `χ_i(e)` is a positive integer.
    Degrees,
}

#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub relation: Relation,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    label: String,
}

impl fmt::Display for RelationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} relation {}: expected {}, got {}",
            match self.relation {
                Relation::ClassEquation { .. } => "class-size",
                Relation::Row { .. } => "row",
                Relation::Column { .. } => "column",
                Relation::DegreeSum => "degree-sum",
                Relation::Degrees => "degree",
            },
            self.label,
            self.expected,
            self.actual
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct OrthogonalityReport {
    pub checks: Vec<RelationCheck>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Checks both Schur orthogonality relations and the degree sum exactly.
pub fn validate_orthogonality(t: &CharacterTable) -> OrthogonalityReport {
    let f = &t.field;
    let order = t.group_order;
    let r = t.rows.len();
    let k = t.classes.len();
    let mut checks = Vec::new();
    let mut push = |relation, label: String, expected: String, actual: String, pass| {
        checks.push(RelationCheck {
            relation,
            expected,
            actual,
            pass,
            label,
        })
    };

    let size_sum: usize = t.classes.iter().map(|c| c.size).sum();
    for (a, c) in t.classes.iter().enumerate() {
        let pass = c.size * c.centralizer == order && size_sum == order;
        push(
            Relation::ClassEquation { class: a },
            c.rep.clone(),
            format!("size*centralizer = {order}, sizes sum to {order}"),
            format!("{}*{}, sizes sum to {size_sum}", c.size, c.centralizer),
            pass,
        );
    }

    let degrees_ok = t.classes.first().is_some_and(|c| c.size == 1)
        && t.rows.iter().all(|row| {
            row[0]
                .as_rational()
                .is_some_and(|q| q.is_integer() && *q > Rational::from_integer(0.into()))
        });
    push(
        Relation::Degrees,
        "chi(e)".into(),
        "identity class first, positive integer degrees".into(),
        if degrees_ok {
            "ok".into()
        } else {
            "violated".into()
        },
        degrees_ok,
    );

    let inv_order = Rational::new(1.into(), order.into());
    for i in 0..r {
        for j in i..r {
            let mut s = CycloNum::zero(f);
            for (a, c) in t.classes.iter().enumerate() {
                let term = &t.rows[i][a] * &t.rows[j][a].conjugate();
                s = &s + &term.scale(&Rational::from_integer(c.size.into()));
            }
            let s = s.scale(&inv_order);
            let want = if i == j { 1 } else { 0 };
            let expected = CycloNum::from_int(f, want);
            push(
                Relation::Row { i, j },
                format!("<chi_{}, chi_{}>", i + 1, j + 1),
                expected.to_string(),
                s.to_string(),
                s == expected,
            );
        }
    }

    for a in 0..k {
        for b in a..k {
            let mut s = CycloNum::zero(f);
            for row in &t.rows {
                s = &s + &(&row[a] * &row[b].conjugate());
            }
            let want = if a == b {
                t.classes[a].centralizer as i64
            } else {
                0
            };
            let expected = CycloNum::from_int(f, want);
            push(
                Relation::Column { a, b },
                format!("{}/{}", t.classes[a].rep, t.classes[b].rep),
                expected.to_string(),
                s.to_string(),
                s == expected,
            );
        }
    }

    let mut deg_sum = CycloNum::zero(f);
    for row in &t.rows {
        deg_sum = &deg_sum + &(&row[0] * &row[0]);
    }
    let expected = CycloNum::from_int(f, order as i64);
    push(
        Relation::DegreeSum,
        "sum chi(e)^2".into(),
        expected.to_string(),
        deg_sum.to_string(),
        deg_sum == expected,
    );

    OrthogonalityReport { checks }
}

/// Rows for `g` over the classes of `conjugacy_classes(g)`, trivial
/// character first.
fn trivial_first_rows(
    g: &Group,
    cc: &ConjugacyClasses,
    f: &Arc<FieldContext>,
) -> Result<Vec<Vec<CycloNum>>, GroupError> {
    match g.kind() {
        GroupKind::Cyclic(k) => Ok((0..*k).map(|p| cyclic_row(*k, p, cc, f)).collect()),
        GroupKind::Symmetric3 => {
            let by_order = |class: &ConjugacyClass, vals: [i64; 3]| -> CycloNum {
                let v = match g.element_order(class.rep) {
                    1 => vals[0],
                    2 => vals[1],
                    _ => vals[2],
                };
                CycloNum::from_int(f, v)
            };
            Ok([[1, 1, 1], [1, -1, 1], [2, 0, -1]]
                .iter()
                .map(|vals| cc.classes.iter().map(|c| by_order(c, *vals)).collect())
                .collect())
        }
        GroupKind::Product(a, b) => {
            let (cca, ccb) = (conjugacy_classes(a), conjugacy_classes(b));
            let rows_a = trivial_first_rows(a, &cca, f)?;
            let rows_b = trivial_first_rows(b, &ccb, f)?;
            let m = a.order();
            let mut rows = Vec::with_capacity(rows_a.len() * rows_b.len());
            for rb in &rows_b {
                for ra in &rows_a {
                    rows.push(
                        cc.classes
                            .iter()
                            .map(|c| {
                                let (x, y) = (c.rep % m, c.rep / m);
                                &ra[cca.class_of[x]] * &rb[ccb.class_of[y]]
                            })
                            .collect(),
                    );
                }
            }
            Ok(rows)
        }
        GroupKind::Custom => Err(GroupError::Unsupported(g.name().to_string())),
    }
}

/// `χ_p(a^j) = ζ_N^{(N/k)·p·j}` on the singleton classes of `C_k`.
fn cyclic_row(k: usize, p: usize, cc: &ConjugacyClasses, f: &Arc<FieldContext>) -> Vec<CycloNum> {
    let step = (f.order() / k) as i64;
    cc.classes
        .iter()
        .map(|c| CycloNum::root_of_unity(f, step * ((p * c.rep) % k) as i64))
        .collect()
}

/// Built-in character table in the field `Q(ζ_N)`, `N` the exponent of `g`.
///
/// Cyclic groups list `χ_1, …, χ_k` with `χ_p(a) = ω^p`, so the trivial
/// character comes last; products and `S3` list the trivial character first.
/// Products are tensor products of their factors with the first factor
/// varying fastest.
pub fn character_table(g: &Group) -> Result<CharacterTable, GroupError> {
    let f = FieldContext::new(g.exponent());
    let cc = conjugacy_classes(g);
    let rows = match g.kind() {
        GroupKind::Cyclic(k) => (1..=*k).map(|p| cyclic_row(*k, p % k, &cc, &f)).collect(),
        _ => trivial_first_rows(g, &cc, &f)?,
    };
    let classes = cc
        .classes
        .iter()
        .map(|c| ClassInfo {
            rep: g.label(c.rep).to_string(),
            size: c.size(),
            centralizer: c.centralizer_order,
        })
        .collect();
    let table = CharacterTable::new(g.name(), g.order(), f, classes, rows);
    let report = validate_orthogonality(&table);
    if let Some(fail) = report.first_failure() {
        return Err(GroupError::BrokenBuiltin(
            g.name().to_string(),
            fail.to_string(),
        ));
    }
    Ok(table)
}

/// Parses a group spec: `cyclic:k`, `s3`, or `product:A,B[,C…]` where each
/// factor is `cyclic:k` or `s3`. Factors get generator letters `a, b, c, …`.
pub fn parse_group_spec(spec: &str) -> Result<Group, String> {
    fn factor(s: &str) -> Result<Group, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("s3") {
            return Ok(s3());
        }
        if let Some(k) = s.strip_prefix("cyclic:") {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| format!("bad cyclic order in '{s}'"))?;
            if k == 0 {
                return Err("cyclic order must be at least 1".into());
            }
            return Ok(cyclic(k));
        }
        Err(format!(
            "unknown group spec '{s}' (expected cyclic:k, s3, product:A,B or file:path)"
        ))
    }
    if let Some(rest) = spec.strip_prefix("product:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() < 2 {
            return Err(format!("product needs at least two factors in '{spec}'"));
        }
        let mut g = factor(parts[0])?;
        for p in &parts[1..] {
            g = direct_product(&g, &factor(p)?);
        }
        return Ok(g);
    }
    factor(spec)
}

/// Group elements keyed by label, for parsing element literals.
pub(crate) fn label_index(g: &Group) -> HashMap<&str, usize> {
    g.labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect()
}
