//! Images, preimages, intersections, closure and directional limits of convex
//! semilinear sets, plus pipelines of these operations with a class-monotonicity check.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::affine::AffineMap;
use crate::cell::Cell;
use crate::cellset::CellSet;
use crate::classify::{classify, ClassTag};
use crate::constraint::{LinConstraint, Rel};
use crate::error::{check_dim, Error, Result};
use crate::fm::project;
use crate::linalg::{dot, is_zero_vec, Vector};
use crate::rational::Rational;

fn image_cells<'a>(cells: impl Iterator<Item = &'a Cell>, f: &AffineMap) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    for c in cells {
        // f(relint K) = relint f(K) for convex K.
        let img = project(&c.closure(), f)?;
        out.extend(Cell::relint_of(&img));
    }
    Ok(dedup(out))
}

fn preimage_cells<'a>(cells: impl Iterator<Item = &'a Cell>, f: &AffineMap) -> Vec<Cell> {
    let n = f.input_dim();
    let out = cells
        .filter_map(|c| {
            let pulled: Vec<LinConstraint> = c.constraints().map(|k| f.pull_back(k)).collect();
            Cell::from_constraints(n, &pulled)
        })
        .collect();
    dedup(out)
}

fn meet_cells(a: &[Cell], b: &[Cell]) -> Vec<Cell> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.extend(x.intersect(y));
        }
    }
    dedup(out)
}

fn dedup(mut cells: Vec<Cell>) -> Vec<Cell> {
    cells.sort();
    cells.dedup();
    cells
}

fn from_cells(dim: usize, cells: Vec<Cell>) -> Result<CellSet> {
    CellSet::from_convex_pieces(dim, cells.iter().map(Cell::constraint_list).collect())
}

/// `{f(x) : x in S}`.
pub fn affine_image(s: &CellSet, f: &AffineMap) -> Result<CellSet> {
    check_dim(s.dim(), f.input_dim())?;
    from_cells(f.output_dim(), image_cells(s.included_cells(), f)?)
}

/// `{x : f(x) in S}`.
pub fn affine_preimage(s: &CellSet, f: &AffineMap) -> Result<CellSet> {
    check_dim(s.dim(), f.output_dim())?;
    from_cells(f.input_dim(), preimage_cells(s.included_cells(), f))
}

pub fn intersect(sets: &[&CellSet]) -> Result<CellSet> {
    let Some((first, rest)) = sets.split_first() else {
        return Err(Error::InvalidArgument("intersection of no sets".into()));
    };
    let mut acc = (*first).clone();
    for t in rest {
        check_dim(acc.dim(), t.dim())?;
        let a: Vec<Cell> = acc.included_cells().cloned().collect();
        let b: Vec<Cell> = t.included_cells().cloned().collect();
        acc = from_cells(acc.dim(), meet_cells(&a, &b))?;
    }
    Ok(acc)
}

pub fn closure(s: &CellSet) -> CellSet {
    s.closure()
}

/// `S` together with every `x` such that `x - delta d` lies in `S` for all small `delta > 0`,
/// which is the limit of the decreasing sets `S + [0, 1/n] d`.
pub fn directional_limit(s: &CellSet, d: &[Rational]) -> Result<CellSet> {
    check_dim(s.dim(), d.len())?;
    if is_zero_vec(d) {
        return Err(Error::InvalidArgument("direction must be nonzero".into()));
    }
    let mut pieces: Vec<Vec<LinConstraint>> = s.included_cells().map(|c| c.constraint_list()).collect();
    for c in s.included_cells() {
        if c.equalities().iter().any(|e| !dot(&e.coeffs, d).is_zero()) {
            continue;
        }
        let mut piece = c.equalities().to_vec();
        for k in c.stricts() {
            // a.(x - delta d) < b for small delta: a.x < b, or a.x = b with a.d > 0.
            let rel = if dot(&k.coeffs, d).is_positive() { Rel::Le } else { Rel::Lt };
            piece.push(k.with_rel(rel));
        }
        pieces.push(piece);
    }
    CellSet::from_convex_pieces(s.dim(), pieces)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpKind {
    Source(CellSet),
    Image(AffineMap),
    Preimage(AffineMap),
    Intersect,
    Closure,
    DirectionalLimit(Vector),
}

/// Nodes above this dimension keep their value as an unmerged union of cells;
/// canonical forms are only built on demand.
pub const LAZY_DIM: usize = 3;

#[derive(Debug, Clone)]
enum Value {
    Set(CellSet),
    Cells(Vec<Cell>),
}

impl Value {
    fn cells(&self) -> Vec<Cell> {
        match self {
            Value::Set(s) => s.included_cells().cloned().collect(),
            Value::Cells(c) => c.clone(),
        }
    }
}

#[derive(Debug)]
pub struct OpNode {
    kind: OpKind,
    children: Vec<Arc<OpNode>>,
    dim: usize,
    value: OnceLock<Value>,
    canonical: OnceLock<CellSet>,
}

impl OpNode {
    fn make(kind: OpKind, children: Vec<Arc<OpNode>>, dim: usize) -> Arc<OpNode> {
        Arc::new(OpNode { kind, children, dim, value: OnceLock::new(), canonical: OnceLock::new() })
    }

    pub fn source(s: CellSet) -> Arc<OpNode> {
        let dim = s.dim();
        Self::make(OpKind::Source(s), vec![], dim)
    }

    pub fn image(child: Arc<OpNode>, f: AffineMap) -> Result<Arc<OpNode>> {
        check_dim(child.dim, f.input_dim())?;
        let dim = f.output_dim();
        Ok(Self::make(OpKind::Image(f), vec![child], dim))
    }

    pub fn preimage(child: Arc<OpNode>, f: AffineMap) -> Result<Arc<OpNode>> {
        check_dim(child.dim, f.output_dim())?;
        let dim = f.input_dim();
        Ok(Self::make(OpKind::Preimage(f), vec![child], dim))
    }

    pub fn intersect(children: Vec<Arc<OpNode>>) -> Result<Arc<OpNode>> {
        if children.len() < 2 {
            return Err(Error::InvalidArgument("intersection needs at least two operands".into()));
        }
        let dim = children[0].dim;
        for c in &children[1..] {
            check_dim(dim, c.dim)?;
        }
        Ok(Self::make(OpKind::Intersect, children, dim))
    }

    pub fn closure(child: Arc<OpNode>) -> Arc<OpNode> {
        let dim = child.dim;
        Self::make(OpKind::Closure, vec![child], dim)
    }

    pub fn directional_limit(child: Arc<OpNode>, d: Vector) -> Result<Arc<OpNode>> {
        check_dim(child.dim, d.len())?;
        if is_zero_vec(&d) {
            return Err(Error::InvalidArgument("direction must be nonzero".into()));
        }
        let dim = child.dim;
        Ok(Self::make(OpKind::DirectionalLimit(d), vec![child], dim))
    }

    pub fn kind(&self) -> &OpKind {
        &self.kind
    }

    pub fn children(&self) -> &[Arc<OpNode>] {
        &self.children
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self) -> Result<Value> {
        if let Some(v) = self.value.get() {
            return Ok(v.clone());
        }
        let cells = match &self.kind {
            OpKind::Source(s) => Err(Value::Set(s.clone())),
            OpKind::Image(f) => Ok(image_cells(self.children[0].value()?.cells().iter(), f)?),
            OpKind::Preimage(f) => Ok(preimage_cells(self.children[0].value()?.cells().iter(), f)),
            OpKind::Intersect => {
                let mut acc = self.children[0].value()?.cells();
                for c in &self.children[1..] {
                    acc = meet_cells(&acc, &c.value()?.cells());
                }
                Ok(acc)
            }
            OpKind::Closure => Err(Value::Set(self.children[0].evaluate()?.closure())),
            OpKind::DirectionalLimit(d) => Err(Value::Set(directional_limit(&self.children[0].evaluate()?, d)?)),
        };
        let v = match cells {
            Err(v) => v,
            Ok(cells) if self.dim <= LAZY_DIM => Value::Set(from_cells(self.dim, cells)?),
            Ok(cells) => Value::Cells(cells),
        };
        Ok(self.value.get_or_init(|| v).clone())
    }

    pub fn evaluate(&self) -> Result<CellSet> {
        if let Some(s) = self.canonical.get() {
            return Ok(s.clone());
        }
        let s = match self.value()? {
            Value::Set(s) => s,
            Value::Cells(cells) => from_cells(self.dim, cells)?,
        };
        Ok(self.canonical.get_or_init(|| s).clone())
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn label(&self) -> String {
        match &self.kind {
            OpKind::Source(s) => format!("source(dim {})", s.dim()),
            OpKind::Image(f) => format!("image({f})"),
            OpKind::Preimage(f) => format!("preimage({f})"),
            OpKind::Intersect => format!("intersect({})", self.children.len()),
            OpKind::Closure => "closure".into(),
            OpKind::DirectionalLimit(d) => {
                let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                format!("dlimit({})", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeReport {
    pub label: String,
    pub depth: usize,
    pub class: ClassTag,
    /// Largest class among the source leaves below this node.
    pub source_bound: ClassTag,
    pub flagged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    /// Nodes in post-order; the root is last.
    pub nodes: Vec<NodeReport>,
}

impl MonotonicityReport {
    pub fn flags(&self) -> usize {
        self.nodes.iter().filter(|n| n.flagged).count()
    }

    pub fn root_class(&self) -> ClassTag {
        self.nodes.last().expect("nonempty report").class
    }
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    root: Arc<OpNode>,
}

impl Pipeline {
    pub fn new(root: Arc<OpNode>) -> Self {
        Pipeline { root }
    }

    pub fn root(&self) -> &Arc<OpNode> {
        &self.root
    }

    pub fn evaluate(&self) -> Result<CellSet> {
        self.root.evaluate()
    }

    /// Node labels in post-order, indented by depth below the root.
    pub fn trace(&self) -> Vec<String> {
        fn walk(n: &OpNode, level: usize, out: &mut Vec<String>) {
            for c in &n.children {
                walk(c, level + 1, out);
            }
            out.push(format!("{}{}", "  ".repeat(level), n.label()));
        }
        let mut out = Vec::new();
        walk(&self.root, 0, &mut out);
        out
    }

    pub fn check_monotonicity(&self) -> Result<MonotonicityReport> {
        fn walk(n: &OpNode, level: usize, out: &mut Vec<NodeReport>) -> Result<ClassTag> {
            let mut bound: Option<ClassTag> = None;
            for c in &n.children {
                let b = walk(c, level + 1, out)?;
                bound = Some(bound.map_or(b, |x| x.max(b)));
            }
            let class = classify(&n.evaluate()?)?.tag;
            let source_bound = bound.unwrap_or(class);
            out.push(NodeReport {
                label: n.label(),
                depth: level,
                class,
                source_bound,
                flagged: class > source_bound,
            });
            Ok(source_bound)
        }
        let mut nodes = Vec::new();
        walk(&self.root, 0, &mut nodes)?;
        Ok(MonotonicityReport { nodes })
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.trace().join("\n"))
    }
}
