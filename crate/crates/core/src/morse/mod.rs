//! Morse germs along a sphere: labelled critical points, the graded integer
//! boundary operator, and the algebra acting on it.

mod gauge;
mod property;

pub use gauge::GaugeElement;
pub use property::{
    check_property_p, check_property_p_minus, check_property_p_with_limit, two_index_check,
    two_index_degree, verify_property_p, verify_property_p_minus, CandidateFailure, DecisionRoute,
    PropertyObstruction, PropertyPVerdict, PropertyStatus, SEARCH_NODE_LIMIT,
};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::homology::{self, ChainError, HomologyGroup};
use crate::intmat::{IntMatrix, MatrixError};
use crate::omega::OmegaError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Plus,
    Minus,
}

impl Label {
    pub fn flipped(self) -> Label {
        match self {
            Label::Plus => Label::Minus,
            Label::Minus => Label::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Label::Plus => "+",
            Label::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "+" | "plus" => Some(Label::Plus),
            "-" | "minus" => Some(Label::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoint {
    pub id: String,
    pub index: usize,
    pub label: Label,
    pub value: BigRational,
}

impl CriticalPoint {
    pub fn new(id: impl Into<String>, index: usize, label: Label, value: i64) -> Self {
        CriticalPoint {
            id: id.into(),
            index,
            label,
            value: BigRational::from_integer(value.into()),
        }
    }
}

/// One nonzero coefficient of the boundary: `from` has index `k`, `to` has
/// index `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryEntry {
    pub from: String,
    pub to: String,
    pub coeff: BigInt,
}

impl BoundaryEntry {
    pub fn new(from: impl Into<String>, to: impl Into<String>, coeff: i64) -> Self {
        BoundaryEntry {
            from: from.into(),
            to: to.into(),
            coeff: coeff.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("germ dimension must be at least 1")]
    DimensionZero,
    #[error("point {id} has index {index} outside [0, {n}]")]
    IndexOutOfRange { id: String, index: usize, n: usize },
    #[error("duplicate point id {0}")]
    DuplicateId(String),
    #[error("unknown point id {0}")]
    UnknownId(String),
    #[error("duplicate boundary entry {from} -> {to}")]
    DuplicateEntry { from: String, to: String },
    #[error("boundary entry {from} -> {to} does not lower the index by one")]
    DegreeMismatch { from: String, to: String },
    #[error("expected {expected} boundary matrices, got {found}")]
    BoundaryCount { expected: usize, found: usize },
    #[error("boundary in degree {degree} has shape {found:?}, expected {expected:?}")]
    BoundaryShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("invalid germ: {0}")]
    Invalid(ValidationReport),
    #[error("position {position} out of range in degree {degree} ({count} generators)")]
    PositionOutOfRange {
        degree: usize,
        position: usize,
        count: usize,
    },
    #[error(
        "handle slide of generator {source_pos} over {target} in degree {degree} is unavailable"
    )]
    SlideUnavailable {
        degree: usize,
        target: usize,
        source_pos: usize,
    },
    #[error("slide sign must be +1 or -1, got {0}")]
    BadSlideSign(i64),
    #[error("gauge block in degree {degree} has shape {found:?}, expected {expected:?}")]
    GaugeShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("gauge block in degree {degree} has a forbidden entry at ({row}, {col})")]
    NotInGauge {
        degree: usize,
        row: usize,
        col: usize,
    },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal verification failed: {0}")]
    Fault(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    EqualValues {
        first: String,
        second: String,
    },
    BoundaryShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    ChainCondition {
        degree: usize,
    },
    NotSphere {
        degree: usize,
        group: HomologyGroup,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::EqualValues { first, second } => {
                write!(f, "excellence: {first} and {second} share a critical value")
            }
            ValidationIssue::BoundaryShape {
                degree,
                expected,
                found,
            } => write!(
                f,
                "shape: boundary in degree {degree} is {found:?}, expected {expected:?}"
            ),
            ValidationIssue::ChainCondition { degree } => {
                write!(f, "chain condition: d_{} d_{degree} != 0", degree - 1)
            }
            ValidationIssue::NotSphere { degree, group } => {
                write!(f, "homology: H_{degree} = {group}, not that of a sphere")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.issues.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// The four blocks of one boundary map under the plus/minus split. The first
/// letter names the target side, the second the source side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub pp: IntMatrix,
    pub pm: IntMatrix,
    pub mp: IntMatrix,
    pub mm: IntMatrix,
}

impl Blocks {
    pub fn assemble(&self) -> IntMatrix {
        IntMatrix::from_blocks(&self.pp, &self.pm, &self.mp, &self.mm)
            .expect("blocks come from a consistent split")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurleyVertex {
    pub id: String,
    pub index: usize,
    pub label: Label,
}

/// A germ together with its Morse complex.
///
/// Generators of each degree are kept in the natural order (plus points by
/// descending value, then minus points by descending value), and every
/// boundary matrix is expressed in those bases. `boundary[k]` is
/// `d_k : C_k -> C_{k-1}` for `k = 0..=n+1`; the two outer maps are empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermComplex {
    n: usize,
    points: Vec<CriticalPoint>,
    order: Vec<Vec<usize>>,
    plus: Vec<usize>,
    boundary: Vec<IntMatrix>,
}

impl GermComplex {
    /// Builds the complex from a sparse list of boundary coefficients.
    pub fn new(
        n: usize,
        points: Vec<CriticalPoint>,
        entries: &[BoundaryEntry],
    ) -> Result<Self, GermError> {
        let mut germ = Self::skeleton(n, points)?;
        let mut position = HashMap::new();
        for (k, ids) in germ.order.iter().enumerate() {
            for (pos, &p) in ids.iter().enumerate() {
                position.insert(germ.points[p].id.as_str(), (k, pos));
            }
        }
        let mut seen = HashSet::new();
        let mut boundary = germ.boundary.clone();
        for e in entries {
            let &(kf, col) = position
                .get(e.from.as_str())
                .ok_or_else(|| GermError::UnknownId(e.from.clone()))?;
            let &(kt, row) = position
                .get(e.to.as_str())
                .ok_or_else(|| GermError::UnknownId(e.to.clone()))?;
            if kf != kt + 1 {
                return Err(GermError::DegreeMismatch {
                    from: e.from.clone(),
                    to: e.to.clone(),
                });
            }
            if !seen.insert((e.from.as_str(), e.to.as_str())) {
                return Err(GermError::DuplicateEntry {
                    from: e.from.clone(),
                    to: e.to.clone(),
                });
            }
            boundary[kf][(row, col)] = e.coeff.clone();
        }
        germ.boundary = boundary;
        Ok(germ)
    }

    /// Builds the complex from dense boundary matrices written in the
    /// natural order, one per degree `0..=n+1`.
    pub fn from_matrices(
        n: usize,
        points: Vec<CriticalPoint>,
        boundary: Vec<IntMatrix>,
    ) -> Result<Self, GermError> {
        let germ = Self::skeleton(n, points)?;
        germ.with_boundary(boundary)
    }

    /// Same points and order, new boundary matrices.
    pub fn with_boundary(&self, boundary: Vec<IntMatrix>) -> Result<Self, GermError> {
        if boundary.len() != self.n + 2 {
            return Err(GermError::BoundaryCount {
                expected: self.n + 2,
                found: boundary.len(),
            });
        }
        for (k, d) in boundary.iter().enumerate() {
            let expected = self.boundary[k].shape();
            if d.shape() != expected {
                return Err(GermError::BoundaryShape {
                    degree: k,
                    expected,
                    found: d.shape(),
                });
            }
        }
        Ok(GermComplex {
            boundary,
            ..self.clone()
        })
    }

    /// Replaces the matrix in one degree.
    pub fn with_boundary_in(&self, degree: usize, d: IntMatrix) -> Result<Self, GermError> {
        let mut boundary = self.boundary.clone();
        if degree >= boundary.len() {
            return Err(GermError::BoundaryCount {
                expected: self.n + 2,
                found: degree + 1,
            });
        }
        boundary[degree] = d;
        self.with_boundary(boundary)
    }

    fn skeleton(n: usize, points: Vec<CriticalPoint>) -> Result<Self, GermError> {
        if n == 0 {
            return Err(GermError::DimensionZero);
        }
        let mut ids = HashSet::new();
        for p in &points {
            if p.index > n {
                return Err(GermError::IndexOutOfRange {
                    id: p.id.clone(),
                    index: p.index,
                    n,
                });
            }
            if !ids.insert(p.id.as_str()) {
                return Err(GermError::DuplicateId(p.id.clone()));
            }
        }
        let mut order: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (i, p) in points.iter().enumerate() {
            order[p.index].push(i);
        }
        for ids in &mut order {
            ids.sort_by(|&a, &b| {
                let (pa, pb) = (&points[a], &points[b]);
                pa.label
                    .cmp(&pb.label)
                    .then_with(|| pb.value.cmp(&pa.value))
                    .then_with(|| pa.id.cmp(&pb.id))
            });
        }
        let plus = order
            .iter()
            .map(|ids| {
                ids.iter()
                    .filter(|&&i| points[i].label == Label::Plus)
                    .count()
            })
            .collect();
        let count = |k: isize| -> usize {
            if k < 0 || k as usize > n {
                0
            } else {
                order[k as usize].len()
            }
        };
        let boundary = (0..=n + 1)
            .map(|k| IntMatrix::zeros(count(k as isize - 1), count(k as isize)))
            .collect();
        Ok(GermComplex {
            n,
            points,
            order,
            plus,
            boundary,
        })
    }

    /// Two points: a plus maximum at value 1 and a minus minimum at value -1.
    pub fn trivial(n: usize) -> Result<Self, GermError> {
        Self::new(
            n,
            vec![
                CriticalPoint::new("max", n, Label::Plus, 1),
                CriticalPoint::new("min", 0, Label::Minus, -1),
            ],
            &[],
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[CriticalPoint] {
        &self.points
    }

    pub fn point(&self, id: &str) -> Option<&CriticalPoint> {
        self.points.iter().find(|p| p.id == id)
    }

    /// Generators of degree `k` in the natural order.
    pub fn natural_order(&self, k: usize) -> Vec<&CriticalPoint> {
        self.order
            .get(k)
            .map(|ids| ids.iter().map(|&i| &self.points[i]).collect())
            .unwrap_or_default()
    }

    pub fn generator(&self, k: usize, position: usize) -> Option<&CriticalPoint> {
        self.order
            .get(k)
            .and_then(|ids| ids.get(position))
            .map(|&i| &self.points[i])
    }

    pub fn count(&self, k: usize) -> usize {
        self.order.get(k).map_or(0, Vec::len)
    }

    /// `p_k`, the number of plus points of index `k`.
    pub fn plus_count(&self, k: usize) -> usize {
        self.plus.get(k).copied().unwrap_or(0)
    }

    /// `q_k`, the number of minus points of index `k`.
    pub fn minus_count(&self, k: usize) -> usize {
        self.count(k) - self.plus_count(k)
    }

    /// `d_k` for `k = 0..=n+1`.
    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundary[k]
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundary
    }

    /// Nonzero boundary coefficients, degree by degree in natural order.
    pub fn entries(&self) -> Vec<BoundaryEntry> {
        let mut out = Vec::new();
        for k in 1..=self.n {
            let d = &self.boundary[k];
            for col in 0..d.cols() {
                for row in 0..d.rows() {
                    let c = &d[(row, col)];
                    if !c.is_zero() {
                        out.push(BoundaryEntry {
                            from: self.points[self.order[k][col]].id.clone(),
                            to: self.points[self.order[k - 1][row]].id.clone(),
                            coeff: c.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Splits `d_k` into its four plus/minus blocks (`k = 0..=n+1`).
    pub fn blocks(&self, k: usize) -> Blocks {
        let d = &self.boundary[k];
        let rp = if k == 0 { 0 } else { self.plus_count(k - 1) };
        let cp = self.plus_count(k);
        let (r, c) = d.shape();
        Blocks {
            pp: d.submatrix(0..rp, 0..cp),
            pm: d.submatrix(0..rp, cp..c),
            mp: d.submatrix(rp..r, 0..cp),
            mm: d.submatrix(rp..r, cp..c),
        }
    }

    /// One index-`n` point and one index-`0` point: the level sets are then
    /// connected and the Reeb graph is a labelled chain.
    pub fn has_connected_level_sets(&self) -> bool {
        self.count(self.n) == 1 && self.count(0) == 1
    }

    pub fn homology(&self) -> Result<Vec<HomologyGroup>, ChainError> {
        let dims: Vec<usize> = (0..=self.n).map(|k| self.count(k)).collect();
        homology::chain_homology(&dims, &self.boundary)
    }

    /// Excellence, shape bookkeeping, `d^2 = 0` and sphere homology, with
    /// every violation listed.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let mut by_value: BTreeMap<&BigRational, &str> = BTreeMap::new();
        for p in &self.points {
            if let Some(first) = by_value.insert(&p.value, &p.id) {
                issues.push(ValidationIssue::EqualValues {
                    first: first.to_string(),
                    second: p.id.clone(),
                });
            }
        }
        let mut shapes_ok = true;
        for (k, d) in self.boundary.iter().enumerate() {
            let rows = if k == 0 { 0 } else { self.count(k - 1) };
            let expected = (rows, self.count(k));
            if d.shape() != expected {
                shapes_ok = false;
                issues.push(ValidationIssue::BoundaryShape {
                    degree: k,
                    expected,
                    found: d.shape(),
                });
            }
        }
        if !shapes_ok {
            return ValidationReport { issues };
        }
        let mut chain_ok = true;
        for k in 2..=self.n {
            let sq = self.boundary[k - 1]
                .mul(&self.boundary[k])
                .expect("shapes checked");
            if !sq.is_zero() {
                chain_ok = false;
                issues.push(ValidationIssue::ChainCondition { degree: k });
            }
        }
        if chain_ok {
            let groups = self.homology().expect("complex checked");
            for (k, h) in groups.into_iter().enumerate() {
                let expected_z = k == 0 || k == self.n;
                let ok = if expected_z {
                    h.is_integers()
                } else {
                    h.is_zero()
                };
                if !ok {
                    issues.push(ValidationIssue::NotSphere {
                        degree: k,
                        group: h,
                    });
                }
            }
        }
        ValidationReport { issues }
    }

    pub fn ensure_valid(&self) -> Result<(), GermError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(GermError::Invalid(report))
        }
    }

    fn check_position(&self, k: usize, position: usize) -> Result<(), GermError> {
        let count = self.count(k);
        if position >= count {
            return Err(GermError::PositionOutOfRange {
                degree: k,
                position,
                count,
            });
        }
        Ok(())
    }

    /// Whether the generator at `source` may slide over the one at `target`
    /// in degree `k`: distinct, and the source lies higher.
    pub fn slide_available(&self, k: usize, target: usize, source: usize) -> bool {
        match (self.generator(k, target), self.generator(k, source)) {
            (Some(t), Some(s)) => target != source && s.value > t.value,
            _ => false,
        }
    }

    /// Handle slide in degree `k` (positions in the natural order):
    /// `d_{k+1} <- (I + s E_{target,source}) d_{k+1}` and
    /// `d_k <- d_k (I - s E_{target,source})`.
    pub fn handle_slide(
        &self,
        k: usize,
        target: usize,
        source: usize,
        s: i64,
    ) -> Result<GermComplex, GermError> {
        if s != 1 && s != -1 {
            return Err(GermError::BadSlideSign(s));
        }
        if k > self.n {
            return Err(GermError::PositionOutOfRange {
                degree: k,
                position: target,
                count: 0,
            });
        }
        self.check_position(k, target)?;
        self.check_position(k, source)?;
        if !self.slide_available(k, target, source) {
            return Err(GermError::SlideUnavailable {
                degree: k,
                target,
                source_pos: source,
            });
        }
        let s = BigInt::from(s);
        let mut boundary = self.boundary.clone();
        boundary[k + 1].add_row_multiple(target, source, &s);
        boundary[k].add_col_multiple(source, target, &-s);
        self.with_boundary(boundary)
    }

    /// The germ of `-f`: index `k -> n - k`, labels flipped, values negated,
    /// and each boundary coefficient `x -> y` becomes `y -> x`.
    pub fn opposite(&self) -> Result<GermComplex, GermError> {
        self.ensure_valid()?;
        let points = self
            .points
            .iter()
            .map(|p| CriticalPoint {
                id: p.id.clone(),
                index: self.n - p.index,
                label: p.label.flipped(),
                value: -p.value.clone(),
            })
            .collect();
        let entries: Vec<BoundaryEntry> = self
            .entries()
            .into_iter()
            .map(|e| BoundaryEntry {
                from: e.to,
                to: e.from,
                coeff: e.coeff,
            })
            .collect();
        GermComplex::new(self.n, points, &entries)
    }

    /// The linear labelled chain of all critical points by descending value.
    pub fn curley_graph(&self) -> Result<Vec<CurleyVertex>, GermError> {
        if !self.has_connected_level_sets() {
            return Err(GermError::NotApplicable(
                "level sets are connected only with one maximum and one minimum".into(),
            ));
        }
        let mut pts: Vec<&CriticalPoint> = self.points.iter().collect();
        pts.sort_by(|a, b| b.value.cmp(&a.value).then_with(|| a.id.cmp(&b.id)));
        Ok(pts
            .into_iter()
            .map(|p| CurleyVertex {
                id: p.id.clone(),
                index: p.index,
                label: p.label,
            })
            .collect())
    }

    /// Positions `(row, col)` of `N_k` that the value order leaves free:
    /// the plus point `a_col` lies strictly above the minus point `b_row`.
    pub fn gauge_free_positions(&self, k: usize) -> Vec<(usize, usize)> {
        let gens = self.natural_order(k);
        let p = self.plus_count(k);
        let (plus, minus) = gens.split_at(p);
        let mut out = Vec::new();
        for (i, b) in minus.iter().enumerate() {
            for (j, a) in plus.iter().enumerate() {
                if a.value > b.value {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether `g` respects the nullity pattern (errors on shape mismatch).
    pub fn gauge_membership(&self, g: &GaugeElement) -> Result<bool, GermError> {
        match g.check_against(self) {
            Ok(()) => Ok(true),
            Err(GermError::NotInGauge { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// `M d M^{-1}` for the unipotent `M = [[I, 0], [N, I]]` in every degree.
    pub fn conjugate(&self, g: &GaugeElement) -> Result<GermComplex, GermError> {
        g.check_against(self)?;
        let mut boundary = self.boundary.clone();
        for k in 1..=self.n {
            let b = self.blocks(k);
            let lower = g.block(k - 1);
            let upper = g.block(k);
            boundary[k] = conjugated_blocks(&b, lower, upper)?.assemble();
        }
        self.with_boundary(boundary)
    }
}

/// Conjugated blocks of `d_k` given `N_{k-1}` (acting on the target) and
/// `N_k` (acting on the source).
pub(crate) fn conjugated_blocks(
    b: &Blocks,
    lower: &IntMatrix,
    upper: &IntMatrix,
) -> Result<Blocks, MatrixError> {
    let pm_upper = b.pm.mul(upper)?;
    let pp = b.pp.sub(&pm_upper)?;
    let mm = b.mm.add(&lower.mul(&b.pm)?)?;
    let mp =
        b.mp.sub(&lower.mul(&pm_upper)?)?
            .sub(&b.mm.mul(upper)?)?
            .add(&lower.mul(&b.pp)?)?;
    Ok(Blocks {
        pp,
        pm: b.pm.clone(),
        mp,
        mm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn f0(n: usize, k: usize) -> GermComplex {
        GermComplex::new(
            n,
            vec![
                CriticalPoint::new("max", n, Label::Plus, 100),
                CriticalPoint::new("a", k + 1, Label::Plus, 40),
                CriticalPoint::new("b", k + 1, Label::Minus, 30),
                CriticalPoint::new("c", k, Label::Plus, 20),
                CriticalPoint::new("d", k, Label::Minus, 10),
                CriticalPoint::new("min", 0, Label::Minus, -100),
            ],
            &[
                BoundaryEntry::new("a", "c", 7),
                BoundaryEntry::new("b", "c", 5),
                BoundaryEntry::new("a", "d", -3),
                BoundaryEntry::new("b", "d", -2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn f0_blocks_and_order() {
        let g = f0(6, 2);
        let ids: Vec<&str> = g.natural_order(3).iter().map(|p| p.id.as_str()).collect();
        assert_eq!(ids, ["a", "b"]);
        let b = g.blocks(3);
        assert_eq!(b.pp, IntMatrix::from_rows(&[vec![7]]));
        assert_eq!(b.pm, IntMatrix::from_rows(&[vec![5]]));
        assert_eq!(b.mp, IntMatrix::from_rows(&[vec![-3]]));
        assert_eq!(b.mm, IntMatrix::from_rows(&[vec![-2]]));
        assert!(g.validate().is_valid());
        assert!(crate::homology::is_sphere_homology(&g.homology().unwrap()));
    }

    #[test]
    fn natural_order_puts_plus_first_and_sorts_down() {
        let g = GermComplex::new(
            2,
            vec![
                CriticalPoint::new("low", 1, Label::Plus, 1),
                CriticalPoint::new("m", 1, Label::Minus, 5),
                CriticalPoint::new("high", 1, Label::Plus, 3),
            ],
            &[],
        )
        .unwrap();
        let ids: Vec<&str> = g.natural_order(1).iter().map(|p| p.id.as_str()).collect();
        assert_eq!(ids, ["high", "low", "m"]);
    }

    #[test]
    fn all_plus_degree_has_empty_mixed_blocks() {
        let g = GermComplex::trivial(3).unwrap();
        let b = g.blocks(3);
        assert_eq!(b.pm.shape(), (0, 0));
        assert_eq!(b.mp.shape(), (0, 1));
        assert_eq!(b.mm.shape(), (0, 0));
    }

    #[test]
    fn validation_reports() {
        assert!(GermComplex::trivial(4).unwrap().validate().is_valid());
        let tie = GermComplex::new(
            2,
            vec![
                CriticalPoint::new("max", 2, Label::Plus, 1),
                CriticalPoint::new("min", 0, Label::Minus, 1),
            ],
            &[],
        )
        .unwrap();
        assert!(matches!(
            tie.validate().issues[0],
            ValidationIssue::EqualValues { .. }
        ));

        // d_1 d_2 = [[2]]
        let bad = GermComplex::new(
            3,
            vec![
                CriticalPoint::new("x", 2, Label::Plus, 3),
                CriticalPoint::new("y", 1, Label::Plus, 2),
                CriticalPoint::new("z", 0, Label::Minus, 1),
            ],
            &[
                BoundaryEntry::new("x", "y", 1),
                BoundaryEntry::new("y", "z", 2),
            ],
        )
        .unwrap();
        assert!(bad
            .validate()
            .issues
            .contains(&ValidationIssue::ChainCondition { degree: 2 }));

        let single =
            GermComplex::new(2, vec![CriticalPoint::new("max", 2, Label::Plus, 1)], &[]).unwrap();
        assert!(!single.validate().is_valid());
    }

    #[test]
    fn construction_errors() {
        let pts = || {
            vec![
                CriticalPoint::new("max", 2, Label::Plus, 1),
                CriticalPoint::new("min", 0, Label::Minus, -1),
            ]
        };
        assert_eq!(
            GermComplex::new(2, pts(), &[BoundaryEntry::new("max", "min", 1)]),
            Err(GermError::DegreeMismatch {
                from: "max".into(),
                to: "min".into()
            })
        );
        assert_eq!(
            GermComplex::new(2, pts(), &[BoundaryEntry::new("max", "q", 1)]),
            Err(GermError::UnknownId("q".into()))
        );
        let mut dup = pts();
        dup[1].id = "max".into();
        assert_eq!(
            GermComplex::new(2, dup, &[]),
            Err(GermError::DuplicateId("max".into()))
        );
        assert_eq!(
            GermComplex::new(0, pts(), &[]),
            Err(GermError::DimensionZero)
        );
        let g = f0(6, 2);
        let twice = [
            BoundaryEntry::new("a", "c", 1),
            BoundaryEntry::new("a", "c", 2),
        ];
        assert!(matches!(
            GermComplex::new(6, g.points().to_vec(), &twice),
            Err(GermError::DuplicateEntry { .. })
        ));
    }

    #[test]
    fn slide_examples() {
        let g = f0(6, 2);
        // sliding c over d acts on the rows of d_{k+1}
        let s = g.handle_slide(2, 1, 0, 1).unwrap();
        assert_eq!(
            s.boundary(3),
            &IntMatrix::from_rows(&[vec![7, 5], vec![4, 3]])
        );
        let back = s.handle_slide(2, 1, 0, -1).unwrap();
        assert_eq!(back, g);
        assert!(matches!(
            g.handle_slide(2, 0, 1, 1),
            Err(GermError::SlideUnavailable { .. })
        ));
        // a degree with one generator has no slide
        assert!(g.handle_slide(6, 0, 0, 1).is_err());
        assert_eq!(s.homology().unwrap(), g.homology().unwrap());
    }

    #[test]
    fn opposite_of_f0() {
        let g = f0(6, 2);
        let o = g.opposite().unwrap();
        assert!(o.validate().is_valid());
        // degree n-k = 4 carries the transpose of d_3, generators reversed
        let b = o.blocks(4);
        assert_eq!(b.pp, IntMatrix::from_rows(&[vec![-2]]));
        assert_eq!(o.boundary(4), &g.boundary(3).transpose().reversed());
        assert_eq!(o.opposite().unwrap(), g);
        let t = GermComplex::trivial(3).unwrap().opposite().unwrap();
        assert_eq!(t.point("max").unwrap().index, 0);
        assert_eq!(t.point("max").unwrap().label, Label::Minus);
        assert_eq!(t.point("min").unwrap().label, Label::Plus);
    }

    #[test]
    fn curley_graph_chain() {
        let t = GermComplex::trivial(4).unwrap();
        let chain = t.curley_graph().unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!((chain[0].index, chain[0].label), (4, Label::Plus));
        assert_eq!((chain[1].index, chain[1].label), (0, Label::Minus));
        let ids: Vec<String> = f0(6, 2)
            .curley_graph()
            .unwrap()
            .into_iter()
            .map(|v| v.id)
            .collect();
        assert_eq!(ids, ["max", "a", "b", "c", "d", "min"]);
    }

    #[test]
    fn conjugation_examples() {
        let g = f0(6, 2);
        let id = GaugeElement::identity(&g);
        assert_eq!(g.conjugate(&id).unwrap(), g);

        let mut n = GaugeElement::identity(&g);
        n.set_block(3, IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert!(g.gauge_membership(&n).unwrap());
        let h = g.conjugate(&n).unwrap();
        let b = h.blocks(3);
        assert_eq!(b.pp, IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(b.pm, IntMatrix::from_rows(&[vec![5]]));
        assert!(h.validate().is_valid());
        assert_eq!(h.conjugate(&n.inverse()).unwrap(), g);
    }

    #[test]
    fn membership_respects_values() {
        let g = GermComplex::new(
            4,
            vec![
                CriticalPoint::new("max", 4, Label::Plus, 10),
                CriticalPoint::new("a", 2, Label::Plus, 1),
                CriticalPoint::new("b", 2, Label::Minus, 2),
                CriticalPoint::new("c", 1, Label::Minus, 0),
                CriticalPoint::new("min", 0, Label::Minus, -10),
            ],
            &[],
        )
        .unwrap();
        assert!(g.gauge_free_positions(2).is_empty());
        let mut n = GaugeElement::identity(&g);
        n.set_block(2, IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert!(!g.gauge_membership(&n).unwrap());
        assert!(g.gauge_membership(&GaugeElement::identity(&g)).unwrap());
        let wrong = GaugeElement::from_blocks(vec![IntMatrix::zeros(2, 2)]);
        assert!(g.gauge_membership(&wrong).is_err());
    }
}
