//! Quivers, their Euler and Tits forms, and the finite-type classification.

pub mod dynkin;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use dynkin::{DynkinType, Orientation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph. Vertices are addressed by their dense index
/// in declaration order; labels are only for display and file formats.
/// Loops and parallel arrows are representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(labels: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidQuiver(
                "a quiver needs at least one vertex".into(),
            ));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{l}`")));
            }
        }
        let mut ids = HashSet::new();
        for a in &arrows {
            if !ids.insert(a.id.as_str()) {
                return Err(Error::InvalidQuiver(format!(
                    "duplicate arrow id `{}`",
                    a.id
                )));
            }
            if a.source >= labels.len() || a.target >= labels.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow `{}` references a missing vertex",
                    a.id
                )));
            }
        }
        Ok(Self { labels, arrows })
    }

    /// Vertices labelled `1..=n`, arrows `a1, a2, ...` for the given (source, target) pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| Arrow {
                id: format!("a{}", k + 1),
                source: s,
                target: t,
            })
            .collect();
        Self::new(labels, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Indices of arrows ending at `i`, in declaration order.
    pub fn incoming(&self, i: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&k| self.arrows[k].target == i)
            .collect()
    }

    /// Indices of arrows starting at `i`, in declaration order.
    pub fn outgoing(&self, i: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&k| self.arrows[k].source == i)
            .collect()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.source != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.target != i)
    }

    pub fn has_loop_at(&self, i: usize) -> bool {
        self.arrows.iter().any(|a| a.source == i && a.target == i)
    }

    /// The same quiver with every arrow incident to `i` reversed.
    pub fn reflect_at(&self, i: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.source == i || a.target == i {
                    Arrow {
                        id: a.id.clone(),
                        source: a.target,
                        target: a.source,
                    }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver {
            labels: self.labels.clone(),
            arrows,
        }
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The full subquiver on `vertices` (which must be sorted), reindexed densely.
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let pos: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| {
                Some(Arrow {
                    id: a.id.clone(),
                    source: *pos.get(&a.source)?,
                    target: *pos.get(&a.target)?,
                })
            })
            .collect();
        Quiver {
            labels: vertices.iter().map(|&v| self.labels[v].clone()).collect(),
            arrows,
        }
    }
}

/// A vector of non-negative integers indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    pub fn new(coords: Vec<usize>) -> Self {
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    /// `None` when some coordinate is negative.
    pub fn from_signed(coords: &[i64]) -> Option<Self> {
        coords
            .iter()
            .map(|&x| usize::try_from(x).ok())
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Some(i)` if this is the unit vector `e_i`.
    pub fn as_unit(&self) -> Option<usize> {
        if self.total() != 1 {
            return None;
        }
        self.0.iter().position(|&x| x == 1)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Comma-separated coordinates, as accepted by `--dim`.
    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl Serialize for DimVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

fn check_len(q: &Quiver, v: &[i64]) -> Result<()> {
    if v.len() != q.vertex_count() {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} for a quiver with {} vertices",
            v.len(),
            q.vertex_count()
        )));
    }
    Ok(())
}

/// `<m, n> = sum_i m_i n_i - sum_a m_{s(a)} n_{t(a)}` on integer vectors.
pub fn euler_form_signed(q: &Quiver, m: &[i64], n: &[i64]) -> Result<i64> {
    check_len(q, m)?;
    check_len(q, n)?;
    let diag: i64 = m.iter().zip(n).map(|(a, b)| a * b).sum();
    let off: i64 = q.arrows.iter().map(|a| m[a.source] * n[a.target]).sum();
    Ok(diag - off)
}

pub fn euler_form(q: &Quiver, m: &DimVector, n: &DimVector) -> Result<i64> {
    euler_form_signed(q, &m.to_signed(), &n.to_signed())
}

/// `q(n) = sum_i n_i^2 - sum_a n_{s(a)} n_{t(a)}`.
pub fn tits_form_signed(q: &Quiver, n: &[i64]) -> Result<i64> {
    check_len(q, n)?;
    let sq: i64 = n.iter().map(|x| x * x).sum();
    let off: i64 = q.arrows.iter().map(|a| n[a.source] * n[a.target]).sum();
    Ok(sq - off)
}

pub fn tits_form(q: &Quiver, n: &DimVector) -> Result<i64> {
    tits_form_signed(q, &n.to_signed())
}

/// `B = C + C^T` for the Euler matrix `C`, so that `2 q(n) = n^T B n`.
pub fn symmetrized_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.vertex_count();
    let mut b = vec![vec![0i64; n]; n];
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = 2;
    }
    for a in &q.arrows {
        b[a.source][a.target] -= 1;
        b[a.target][a.source] -= 1;
    }
    b
}

/// Exact determinant of an integer matrix (Bareiss with row pivoting).
pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_floor(&prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// The leading principal minors of the symmetrized matrix, in order.
pub fn leading_minors(q: &Quiver) -> Vec<BigInt> {
    let b = symmetrized_matrix(q);
    (1..=b.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = b[..k].iter().map(|r| r[..k].to_vec()).collect();
            integer_determinant(&sub)
        })
        .collect()
}

/// Sylvester's criterion on the symmetrized Tits matrix.
pub fn is_positive_definite(q: &Quiver) -> bool {
    leading_minors(q).iter().all(|m| m.is_positive())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinComponent {
    #[serde(rename = "type")]
    pub dynkin: DynkinType,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    FiniteType(Vec<DynkinComponent>),
    InfiniteType(String),
}

impl Classification {
    pub fn is_finite(&self) -> bool {
        matches!(self, Classification::FiniteType(_))
    }
}

/// Recognises the Dynkin type of a connected quiver from the shape of its
/// underlying graph, or explains why it is not Dynkin.
fn recognize_component(q: &Quiver) -> std::result::Result<DynkinType, String> {
    let n = q.vertex_count();
    let name = |i: usize| q.label(i).to_string();
    if let Some(a) = q.arrows.iter().find(|a| a.source == a.target) {
        return Err(format!("loop at vertex {}", name(a.source)));
    }
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in &q.arrows {
        *pairs
            .entry((a.source.min(a.target), a.source.max(a.target)))
            .or_default() += 1;
    }
    if let Some((&(u, v), _)) = pairs.iter().find(|(_, &c)| c > 1) {
        return Err(format!(
            "parallel edges between {} and {}",
            name(u),
            name(v)
        ));
    }
    if q.arrows.len() >= n {
        return Err("underlying graph contains a cycle".into());
    }
    let mut adj = vec![Vec::new(); n];
    for a in &q.arrows {
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    if let Some(v) = (0..n).find(|&v| adj[v].len() > 3) {
        return Err(format!("vertex {} has degree {}", name(v), adj[v].len()));
    }
    let branches: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 3).collect();
    match branches.as_slice() {
        [] => Ok(DynkinType::A(n)),
        [center] => {
            let mut arms: Vec<usize> = adj[*center]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*center, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(DynkinType::D(n)),
                [1, 2, 2] => Ok(DynkinType::E6),
                [1, 2, 3] => Ok(DynkinType::E7),
                [1, 2, 4] => Ok(DynkinType::E8),
                _ => Err(format!(
                    "branch vertex {} has arms of lengths {:?}",
                    name(*center),
                    arms
                )),
            }
        }
        _ => Err(format!("{} branch vertices", branches.len())),
    }
}

/// Finite or infinite representation type, by graph-shape recognition of each
/// connected component, cross-checked against positive definiteness of the
/// Tits form. Disagreement between the two is reported as an internal error.
pub fn classify(q: &Quiver) -> Result<Classification> {
    let mut components = Vec::new();
    let mut failure = None;
    for comp in q.components() {
        let sub = q.induced(&comp);
        let shape = recognize_component(&sub);
        let definite = is_positive_definite(&sub);
        if shape.is_ok() != definite {
            return Err(Error::Internal(format!(
                "shape recognition ({shape:?}) disagrees with Sylvester's criterion ({definite}) on component {:?}",
                sub.labels()
            )));
        }
        match shape {
            Ok(dynkin) => components.push(DynkinComponent {
                dynkin,
                vertices: comp,
            }),
            Err(reason) if failure.is_none() => {
                failure = Some(format!(
                    "component {{{}}}: {reason}",
                    sub.labels().join(", ")
                ));
            }
            Err(_) => {}
        }
    }
    let verdict = match failure {
        Some(w) => Classification::InfiniteType(w),
        None => Classification::FiniteType(components),
    };
    if verdict.is_finite() != is_positive_definite(q) {
        return Err(Error::Internal(
            "component-wise verdict disagrees with the whole-quiver Tits form".into(),
        ));
    }
    Ok(verdict)
}

/// Fails with [`Error::InfiniteType`] unless `q` is of finite type.
pub fn require_finite_type(q: &Quiver) -> Result<Vec<DynkinComponent>> {
    match classify(q)? {
        Classification::FiniteType(c) => Ok(c),
        Classification::InfiniteType(w) => Err(Error::InfiniteType(format!(
            "the Tits form is not positive definite ({w})"
        ))),
    }
}
