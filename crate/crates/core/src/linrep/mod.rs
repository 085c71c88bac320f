//! Quiver representations over exact fields.
//!
//! A representation assigns a dimension to each vertex and an exact matrix
//! to each arrow. Paths evaluate to matrix products, linear combinations of
//! parallel paths to sums, and the whole structure induces an action of the
//! path algebra on the total space; the exactness test asks whether that
//! action is injective.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::path::{all_paths, Path};
use crate::quiver::{ArrowId, Quiver, VertexId};

pub mod matrix;
pub mod scalar;

pub use matrix::{nullspace, rref, Matrix};
pub use scalar::{FieldSpec, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("entry count does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize },
    #[error("invalid scalar literal `{0}`")]
    BadScalar(String),
    #[error("path does not live in the representation's quiver")]
    PathQuiverMismatch,
    #[error("linear combination mixes endpoints: {0}")]
    MixedEndpoints(String),
    #[error("representation does not match the quiver: {0}")]
    QuiverMismatch(String),
    #[error("quiver has an oriented cycle; its path algebra is infinite-dimensional")]
    CyclicQuiver,
    #[error("unknown field tag `{0}`")]
    UnknownField(String),
}

/// A representation M = ((M(i)), M(a)): a dimension per vertex and a matrix
/// per arrow. For an arrow a: i -> j the matrix has shape dims[j] x dims[i].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub field: FieldSpec,
    pub dims: BTreeMap<VertexId, usize>,
    pub mats: BTreeMap<ArrowId, Matrix>,
}

impl Representation {
    /// Builds from integer matrix literals; shapes are taken on faith and
    /// verified by [`validate_representation`].
    pub fn build(
        field: FieldSpec,
        dims: &[(&str, usize)],
        mats: &[(&str, Vec<Vec<i64>>)],
    ) -> Self {
        Representation {
            field,
            dims: dims.iter().map(|(v, d)| (VertexId::new(*v), *d)).collect(),
            mats: mats
                .iter()
                .map(|(a, rows)| {
                    let slices: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                    (ArrowId::new(*a), Matrix::from_i64(field, &slices))
                })
                .collect(),
        }
    }

    /// The zero representation of a quiver: every dimension 0.
    pub fn zero(field: FieldSpec, q: &Quiver) -> Self {
        Representation {
            field,
            dims: q.vertices().iter().map(|v| (v.id.clone(), 0)).collect(),
            mats: q
                .arrows()
                .iter()
                .map(|a| (a.id.clone(), Matrix::zero(field, 0, 0)))
                .collect(),
        }
    }

    pub fn dim(&self, v: &VertexId) -> Option<usize> {
        self.dims.get(v).copied()
    }

    /// Total dimension of the representation space.
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

/// True iff coverage is total and exact (dims for every vertex, a matrix of
/// shape dims[target] x dims[source] for every arrow, no stray entries, one
/// field throughout).
pub fn validate_representation(q: &Quiver, m: &Representation) -> bool {
    if m.dims.len() != q.vertices().len() || m.mats.len() != q.arrows().len() {
        return false;
    }
    for v in q.vertices() {
        if !m.dims.contains_key(&v.id) {
            return false;
        }
    }
    for a in q.arrows() {
        let Some(mat) = m.mats.get(&a.id) else {
            return false;
        };
        if mat.field() != m.field
            || mat.rows() != m.dims[&a.target]
            || mat.cols() != m.dims[&a.source]
        {
            return false;
        }
    }
    true
}

fn require_valid(q: &Quiver, m: &Representation, which: &str) -> Result<(), LinAlgError> {
    if validate_representation(q, m) {
        Ok(())
    } else {
        Err(LinAlgError::QuiverMismatch(which.to_string()))
    }
}

/// Evaluates a path: the identity matrix for identity paths, otherwise the
/// product M(a_n) ... M(a_1) of the arrow matrices in path order.
pub fn eval_path(q: &Quiver, m: &Representation, p: &Path) -> Result<Matrix, LinAlgError> {
    require_valid(q, m, "representation")?;
    if !p.is_valid_in(q) {
        return Err(LinAlgError::PathQuiverMismatch);
    }
    let mut acc = Matrix::identity(m.field, m.dims[p.source()]);
    for a in p.arrows() {
        acc = m.mats[a].mul(&acc)?;
    }
    Ok(acc)
}

/// A formal linear combination of parallel paths: a morphism of the
/// linearized path category. The zero-term combination is the zero morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb {
    source: VertexId,
    target: VertexId,
    terms: Vec<(Scalar, Path)>,
}

impl LinComb {
    pub fn new(
        source: VertexId,
        target: VertexId,
        terms: Vec<(Scalar, Path)>,
    ) -> Result<Self, LinAlgError> {
        for (_, p) in &terms {
            if p.source() != &source || p.target() != &target {
                return Err(LinAlgError::MixedEndpoints(format!(
                    "path {} is not {} -> {}",
                    p.encode(),
                    source,
                    target
                )));
            }
        }
        Ok(LinComb {
            source,
            target,
            terms,
        })
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn target(&self) -> &VertexId {
        &self.target
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }
}

/// Evaluates a linear combination: the coefficient-weighted sum of the path
/// evaluations; the zero matrix for the empty combination.
pub fn eval_lincomb(q: &Quiver, m: &Representation, lc: &LinComb) -> Result<Matrix, LinAlgError> {
    require_valid(q, m, "representation")?;
    for v in [lc.source(), lc.target()] {
        if !q.has_vertex(v) {
            return Err(LinAlgError::PathQuiverMismatch);
        }
    }
    let mut acc = Matrix::zero(m.field, m.dims[lc.target()], m.dims[lc.source()]);
    for (c, p) in lc.terms() {
        if c.field() != m.field {
            return Err(LinAlgError::FieldMismatch);
        }
        acc = acc.add(&eval_path(q, m, p)?.scale(c)?)?;
    }
    Ok(acc)
}

/// A morphism of representations: one matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism {
    pub maps: BTreeMap<VertexId, Matrix>,
}

impl RepMorphism {
    pub fn identity(m: &Representation) -> Self {
        RepMorphism {
            maps: m
                .dims
                .iter()
                .map(|(v, d)| (v.clone(), Matrix::identity(m.field, *d)))
                .collect(),
        }
    }
}

/// True iff every square commutes exactly: f_j M1(a) = M2(a) f_i for every
/// arrow a: i -> j.
pub fn check_rep_morphism(
    q: &Quiver,
    f: &RepMorphism,
    m1: &Representation,
    m2: &Representation,
) -> Result<bool, LinAlgError> {
    require_valid(q, m1, "first representation")?;
    require_valid(q, m2, "second representation")?;
    if m1.field != m2.field {
        return Err(LinAlgError::FieldMismatch);
    }
    for v in q.vertices() {
        let Some(map) = f.maps.get(&v.id) else {
            return Err(LinAlgError::ShapeMismatch(format!("no map at vertex {}", v.id)));
        };
        if map.rows() != m2.dims[&v.id] || map.cols() != m1.dims[&v.id] {
            return Err(LinAlgError::ShapeMismatch(format!(
                "map at vertex {} is {}x{}, expected {}x{}",
                v.id,
                map.rows(),
                map.cols(),
                m2.dims[&v.id],
                m1.dims[&v.id]
            )));
        }
    }
    for a in q.arrows() {
        let lhs = f.maps[&a.target].mul(&m1.mats[&a.id])?;
        let rhs = m2.mats[&a.id].mul(&f.maps[&a.source])?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The space of representation morphisms m1 -> m2.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub dimension: usize,
    pub basis: Vec<RepMorphism>,
}

/// Solves the commuting-square system {f_j M1(a) - M2(a) f_i = 0} by exact
/// Gaussian elimination and returns a basis of the solution space.
pub fn hom_space(
    q: &Quiver,
    m1: &Representation,
    m2: &Representation,
) -> Result<HomSpace, LinAlgError> {
    require_valid(q, m1, "first representation")?;
    require_valid(q, m2, "second representation")?;
    if m1.field != m2.field {
        return Err(LinAlgError::FieldMismatch);
    }
    let field = m1.field;

    // Unknowns: entries of each f_i, row-major, in sorted vertex order.
    let mut offset = BTreeMap::new();
    let mut total = 0usize;
    for v in q.vertices() {
        offset.insert(&v.id, total);
        total += m1.dims[&v.id] * m2.dims[&v.id];
    }
    // One equation per arrow and per entry of the dims2[j] x dims1[i] square.
    let mut rows: Vec<Scalar> = Vec::new();
    let mut n_rows = 0usize;
    for a in q.arrows() {
        let (i, j) = (&a.source, &a.target);
        let (d1i, d2j) = (m1.dims[i], m2.dims[j]);
        let mat1 = &m1.mats[&a.id]; // dims1[j] x dims1[i]
        let mat2 = &m2.mats[&a.id]; // dims2[j] x dims2[i]
        for r in 0..d2j {
            for c in 0..d1i {
                let mut row = vec![field.zero(); total];
                // (f_j M1(a))[r,c] = sum_k f_j[r,k] M1(a)[k,c]
                for k in 0..m1.dims[j] {
                    let idx = offset[j] + r * m1.dims[j] + k;
                    row[idx] = &row[idx] + mat1.get(k, c);
                }
                // (M2(a) f_i)[r,c] = sum_k M2(a)[r,k] f_i[k,c]
                for k in 0..m2.dims[i] {
                    let idx = offset[i] + k * m1.dims[i] + c;
                    row[idx] = &row[idx] - mat2.get(r, k);
                }
                rows.extend(row);
                n_rows += 1;
            }
        }
    }
    let system = Matrix::new(field, n_rows, total, rows)?;
    let kernel = nullspace(&system);

    let basis = kernel
        .into_iter()
        .map(|v| {
            let maps = q
                .vertices()
                .iter()
                .map(|vertex| {
                    let (rows_d, cols_d) = (m2.dims[&vertex.id], m1.dims[&vertex.id]);
                    let start = offset[&vertex.id];
                    let entries = v[start..start + rows_d * cols_d].to_vec();
                    (
                        vertex.id.clone(),
                        Matrix::new(field, rows_d, cols_d, entries)
                            .expect("slice length matches shape"),
                    )
                })
                .collect();
            RepMorphism { maps }
        })
        .collect::<Vec<_>>();
    Ok(HomSpace {
        dimension: basis.len(),
        basis,
    })
}

/// A direct sum together with its canonical injections and projections.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub rep: Representation,
    pub inj_left: RepMorphism,
    pub inj_right: RepMorphism,
    pub proj_left: RepMorphism,
    pub proj_right: RepMorphism,
}

/// Blockwise direct sum: dimensions add per vertex, matrices are
/// block-diagonal.
pub fn direct_sum(
    q: &Quiver,
    m1: &Representation,
    m2: &Representation,
) -> Result<Representation, LinAlgError> {
    Ok(direct_sum_with_maps(q, m1, m2)?.rep)
}

pub fn direct_sum_with_maps(
    q: &Quiver,
    m1: &Representation,
    m2: &Representation,
) -> Result<DirectSum, LinAlgError> {
    require_valid(q, m1, "first representation")?;
    require_valid(q, m2, "second representation")?;
    if m1.field != m2.field {
        return Err(LinAlgError::FieldMismatch);
    }
    let field = m1.field;

    let dims: BTreeMap<VertexId, usize> = q
        .vertices()
        .iter()
        .map(|v| (v.id.clone(), m1.dims[&v.id] + m2.dims[&v.id]))
        .collect();
    let mats: BTreeMap<ArrowId, Matrix> = q
        .arrows()
        .iter()
        .map(|a| {
            let (b1, b2) = (&m1.mats[&a.id], &m2.mats[&a.id]);
            let mut block = Matrix::zero(field, dims[&a.target], dims[&a.source]);
            for r in 0..b1.rows() {
                for c in 0..b1.cols() {
                    block.set(r, c, b1.get(r, c).clone());
                }
            }
            for r in 0..b2.rows() {
                for c in 0..b2.cols() {
                    block.set(b1.rows() + r, b1.cols() + c, b2.get(r, c).clone());
                }
            }
            (a.id.clone(), block)
        })
        .collect();
    let rep = Representation { field, dims, mats };

    let mut inj_left = BTreeMap::new();
    let mut inj_right = BTreeMap::new();
    let mut proj_left = BTreeMap::new();
    let mut proj_right = BTreeMap::new();
    for v in q.vertices() {
        let (d1, d2) = (m1.dims[&v.id], m2.dims[&v.id]);
        let mut i1 = Matrix::zero(field, d1 + d2, d1);
        let mut i2 = Matrix::zero(field, d1 + d2, d2);
        let mut p1 = Matrix::zero(field, d1, d1 + d2);
        let mut p2 = Matrix::zero(field, d2, d1 + d2);
        for k in 0..d1 {
            i1.set(k, k, field.one());
            p1.set(k, k, field.one());
        }
        for k in 0..d2 {
            i2.set(d1 + k, k, field.one());
            p2.set(k, d1 + k, field.one());
        }
        inj_left.insert(v.id.clone(), i1);
        inj_right.insert(v.id.clone(), i2);
        proj_left.insert(v.id.clone(), p1);
        proj_right.insert(v.id.clone(), p2);
    }
    Ok(DirectSum {
        rep,
        inj_left: RepMorphism { maps: inj_left },
        inj_right: RepMorphism { maps: inj_right },
        proj_left: RepMorphism { maps: proj_left },
        proj_right: RepMorphism { maps: proj_right },
    })
}

/// The basis of the path algebra kQ of an acyclic quiver: all paths,
/// identities included, in a deterministic order. Its size is dim_k(kQ).
pub fn path_algebra_basis(q: &Quiver) -> Result<Vec<Path>, LinAlgError> {
    all_paths(q).map_err(|_| LinAlgError::CyclicQuiver)
}

/// The action of the path algebra on the total space of a representation:
/// each basis path p: i -> j becomes a D x D matrix (D = sum of dims) acting
/// as eval_path from the i-block to the j-block and zero elsewhere.
#[derive(Debug, Clone)]
pub struct AlgebraAction {
    pub total_dim: usize,
    pub offsets: BTreeMap<VertexId, usize>,
    pub entries: Vec<(Path, Matrix)>,
}

impl AlgebraAction {
    pub fn get(&self, p: &Path) -> Option<&Matrix> {
        self.entries
            .iter()
            .find(|(basis, _)| basis == p)
            .map(|(_, m)| m)
    }
}

/// Computes the algebra action. Blocks follow the quiver's sorted
/// vertex-id order.
pub fn algebra_action(q: &Quiver, m: &Representation) -> Result<AlgebraAction, LinAlgError> {
    require_valid(q, m, "representation")?;
    let basis = path_algebra_basis(q)?;
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    for v in q.vertices() {
        offsets.insert(v.id.clone(), total);
        total += m.dims[&v.id];
    }
    let entries = basis
        .into_iter()
        .map(|p| {
            let block = eval_path(q, m, &p)?;
            let mut big = Matrix::zero(m.field, total, total);
            let (row0, col0) = (offsets[p.target()], offsets[p.source()]);
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    big.set(row0 + r, col0 + c, block.get(r, c).clone());
                }
            }
            Ok((p, big))
        })
        .collect::<Result<Vec<_>, LinAlgError>>()?;
    Ok(AlgebraAction {
        total_dim: total,
        offsets,
        entries,
    })
}

/// True iff the algebra map kQ -> End(total space) is injective: the
/// flattened action matrices over the path basis are linearly independent.
pub fn is_exact_representation(q: &Quiver, m: &Representation) -> Result<bool, LinAlgError> {
    let action = algebra_action(q, m)?;
    let n = action.entries.len();
    let width = action.total_dim * action.total_dim;
    let mut flat = Vec::with_capacity(n * width);
    for (_, mat) in &action.entries {
        flat.extend(mat.entries().iter().cloned());
    }
    let stacked = Matrix::new(m.field, n, width, flat)?;
    Ok(stacked.rank() == n)
}

/// On-disk form of a representation. Binding against a quiver recovers the
/// degenerate (zero-dimensional) matrix shapes that bare JSON cannot carry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationDoc {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub dims: BTreeMap<String, usize>,
    pub mats: BTreeMap<String, Vec<Vec<serde_json::Value>>>,
}

impl Representation {
    pub fn to_doc(&self) -> RepresentationDoc {
        let (field, p) = match self.field {
            FieldSpec::Q => ("Q".to_string(), None),
            FieldSpec::Fp(p) => ("Fp".to_string(), Some(p)),
        };
        RepresentationDoc {
            field,
            p,
            dims: self.dims.iter().map(|(v, d)| (v.to_string(), *d)).collect(),
            mats: self
                .mats
                .iter()
                .map(|(a, m)| {
                    let rows = (0..m.rows())
                        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_json_value()).collect())
                        .collect();
                    (a.to_string(), rows)
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &RepresentationDoc, q: &Quiver) -> Result<Self, LinAlgError> {
        let field = match (doc.field.as_str(), doc.p) {
            ("Q", _) => FieldSpec::Q,
            ("Fp", Some(p)) => FieldSpec::prime(p)?,
            ("Fp", None) => return Err(LinAlgError::UnknownField("Fp without p".into())),
            (other, _) => return Err(LinAlgError::UnknownField(other.to_string())),
        };
        let dims: BTreeMap<VertexId, usize> = doc
            .dims
            .iter()
            .map(|(v, d)| (VertexId::new(v.clone()), *d))
            .collect();
        let mut mats = BTreeMap::new();
        for a in q.arrows() {
            let rows_data = doc
                .mats
                .get(a.id.as_str())
                .ok_or_else(|| LinAlgError::QuiverMismatch(format!("no matrix for arrow {}", a.id)))?;
            let (rows_n, cols_n) = (
                *dims.get(&a.target).ok_or_else(|| {
                    LinAlgError::QuiverMismatch(format!("no dimension for vertex {}", a.target))
                })?,
                *dims.get(&a.source).ok_or_else(|| {
                    LinAlgError::QuiverMismatch(format!("no dimension for vertex {}", a.source))
                })?,
            );
            if rows_data.len() != rows_n || rows_data.iter().any(|r| r.len() != cols_n) {
                return Err(LinAlgError::ShapeMismatch(format!(
                    "matrix for arrow {} is not {}x{}",
                    a.id, rows_n, cols_n
                )));
            }
            let mut entries = Vec::with_capacity(rows_n * cols_n);
            for row in rows_data {
                for v in row {
                    entries.push(Scalar::from_json_value(field, v)?);
                }
            }
            mats.insert(a.id.clone(), Matrix::new(field, rows_n, cols_n, entries)?);
        }
        Ok(Representation { field, dims, mats })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("representation serialization")
    }

    pub fn from_json(text: &str, q: &Quiver) -> Result<Self, LinAlgError> {
        let doc: RepresentationDoc = serde_json::from_str(text)
            .map_err(|e| LinAlgError::QuiverMismatch(format!("bad representation JSON: {e}")))?;
        Representation::from_doc(&doc, q)
    }
}
